//! Descriptors and file formats.

pub mod descriptor;
pub mod files;

pub use descriptor::{parse_descriptor, parse_group};
pub use files::{
    load_file, load_json_str, parse_quantity, parse_quantity_str, read_json, write_counterexample, BuildMetadata,
    GraphFile, InstanceFile, Loaded, MeasureFile, SignatureFile,
};
