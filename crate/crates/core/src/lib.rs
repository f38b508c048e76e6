pub mod bits;
pub mod cayley;
pub mod config;
pub mod connection;
pub mod error;
pub mod graph;
pub mod group;
pub mod io;
pub mod iso;
pub mod lambda_inf;
pub mod linalg;
pub mod signed;
pub mod spectra;
pub mod value;
pub mod verify;

pub use error::{Error, Result};
