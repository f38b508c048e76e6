use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use cheegerkit::config::{Format, RunConfig};
use cheegerkit::connection::{Connection, ConnectionJson};
use cheegerkit::io::{
    parse_descriptor, parse_quantity_str, read_json, write_counterexample, GraphFile, Loaded, MeasureFile,
    SignatureFile,
};
use cheegerkit::signed::Signature;
use cheegerkit::verify::{
    compute_constant, reports_to_csv, run_suite_with, scan_family, IdFilter, Overrides, ScanOptions, KNOWN_CONSTANTS,
};
use cheegerkit::{Error, Result};

#[derive(Parser)]
#[command(
    name = "cheegerkit",
    version,
    about = "Isoperimetric constants, spectra and Cheeger-type inequality checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a graph from a descriptor and emit its JSON.
    Build {
        descriptor: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compute named constants.
    Constants {
        /// Descriptor or path to a graph/instance JSON file.
        graph: String,
        /// Comma-separated constant names; all of them by default.
        #[arg(long, value_delimiter = ',')]
        which: Vec<String>,
        #[command(flatten)]
        inputs: Inputs,
        #[command(flatten)]
        common: Common,
    },
    /// Evaluate registry inequalities; exit 1 if any fails.
    Verify {
        graph: String,
        /// Comma-separated ids, or "all".
        #[arg(long)]
        ids: Option<String>,
        #[command(flatten)]
        inputs: Inputs,
        /// Replace a computed constant, NAME=VALUE (repeatable).
        #[arg(long = "override", value_name = "NAME=VALUE")]
        overrides: Vec<String>,
        /// Where counterexample files go; defaults to the directory of --out, else ".".
        #[arg(long)]
        counterexample_dir: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Evaluate every member of a family descriptor (with an n placeholder) over a range.
    Scan {
        family: String,
        #[arg(long)]
        from: usize,
        #[arg(long)]
        to: usize,
        #[arg(long, default_value_t = 1)]
        step: usize,
        #[arg(long)]
        ids: Option<String>,
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        #[arg(long)]
        counterexample_dir: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args)]
struct Inputs {
    /// "all-minus", "all-plus", "random:SEED" or a signature file.
    #[arg(long)]
    sigma: Option<String>,
    /// Vertex measure file.
    #[arg(long)]
    pi: Option<PathBuf>,
    /// Connection file.
    #[arg(long)]
    connection: Option<PathBuf>,
}

#[derive(Args)]
struct Common {
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    subset_cap: Option<usize>,
    #[arg(long)]
    tripartition_cap: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_parser = parse_format)]
    format: Option<Format>,
}

fn parse_format(s: &str) -> std::result::Result<Format, String> {
    match s {
        "json" => Ok(Format::Json),
        "csv" => Ok(Format::Csv),
        _ => Err(format!("unknown format {s:?}; expected json or csv")),
    }
}

impl Common {
    fn config(&self, base: Option<RunConfig>) -> Result<RunConfig> {
        let mut cfg = base.unwrap_or_default();
        if let Some(s) = self.seed {
            cfg.seed = s;
        }
        if let Some(t) = self.tol {
            cfg.tol = t;
        }
        if let Some(c) = self.subset_cap {
            cfg.caps.subset_cap = c;
        }
        if let Some(c) = self.tripartition_cap {
            cfg.caps.tripartition_cap = c;
        }
        if let Some(f) = self.format {
            cfg.format = f;
        }
        cfg.out = self.out.as_ref().map(|p| p.display().to_string());
        cfg.validate()?;
        Ok(cfg)
    }
}

/// A bare existing path is read as a file; anything else is a descriptor.
fn load(source: &str) -> Result<Loaded> {
    if !source.contains(':') && Path::new(source).is_file() {
        return parse_descriptor(&format!("file:{source}"));
    }
    parse_descriptor(source)
}

fn apply_inputs(mut loaded: Loaded, inputs: &Inputs) -> Result<Loaded> {
    let g = loaded.instance.graph.clone();
    let mut inst = loaded.instance;
    if let Some(s) = &inputs.sigma {
        inst = match s.as_str() {
            "all-minus" => inst.with_signature(Signature::all_minus(&g), "all-minus"),
            "all-plus" => inst.with_signature(Signature::all_plus(&g), "all-plus"),
            other => match other.strip_prefix("random:") {
                Some(seed) => {
                    let seed: u64 = seed
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad signature seed {seed:?}")))?;
                    inst.with_signature(Signature::random(&g, seed), other)
                }
                None => {
                    let f: SignatureFile = read_json(Path::new(other))?;
                    inst.with_signature(f.to_signature(&g)?, other)
                }
            },
        };
    }
    if let Some(p) = &inputs.pi {
        let m: MeasureFile = read_json(p)?;
        inst = inst.with_measure(m.into_measure()?)?;
    }
    if let Some(p) = &inputs.connection {
        let j: ConnectionJson = read_json(p)?;
        inst = inst.with_connection(Connection::from_json(&g, &j)?);
    }
    loaded.instance = inst;
    Ok(loaded)
}

fn id_filter(ids: Option<&str>, fallback: Option<Vec<String>>) -> IdFilter {
    match ids {
        None => match fallback {
            Some(list) => IdFilter::Only(list),
            None => IdFilter::All,
        },
        Some(s) if s.trim().eq_ignore_ascii_case("all") => IdFilter::All,
        Some(s) => IdFilter::Only(
            s.split(',')
                .map(|t| t.trim().to_string())
                .filter(|t| !t.is_empty())
                .collect(),
        ),
    }
}

fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| Error::Io(format!("{}: {e}", p.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            match writeln!(stdout, "{text}") {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
                _ => Ok(()),
            }
        }
    }
}

fn csv_rows(header: &[&str], rows: Vec<Vec<String>>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let err = |e: csv::Error| Error::Io(e.to_string());
    w.write_record(header).map_err(err)?;
    for r in rows {
        w.write_record(r).map_err(err)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))
}

fn cmd_build(descriptor: &str, out: Option<&Path>) -> Result<ExitCode> {
    let loaded = parse_descriptor(descriptor)?;
    let file = GraphFile::from_graph(&loaded.instance.graph, Some(loaded.metadata));
    emit(&serde_json::to_string_pretty(&file)?, out)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_constants(graph: &str, which: &[String], inputs: &Inputs, common: &Common) -> Result<ExitCode> {
    let loaded = apply_inputs(load(graph)?, inputs)?;
    let cfg = common.config(None)?;
    let names: Vec<String> = if which.is_empty() {
        KNOWN_CONSTANTS.iter().map(|s| s.to_string()).collect()
    } else {
        which.to_vec()
    };
    if let Some(bad) = names.iter().find(|n| !KNOWN_CONSTANTS.contains(&n.as_str())) {
        return Err(Error::Config(format!(
            "unknown constant {bad:?}; known: {}",
            KNOWN_CONSTANTS.join(", ")
        )));
    }
    let mut entries = Vec::new();
    let mut rows = Vec::new();
    for name in &names {
        let (entry, row) = match compute_constant(&loaded.instance, &cfg, name) {
            Ok(c) => {
                let mut v = serde_json::to_value(&c)?;
                v["status"] = "ok".into();
                let set = c
                    .witness
                    .set
                    .iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(" ");
                let method = v["method"].as_str().unwrap_or_default().to_string();
                (
                    v,
                    vec![
                        name.clone(),
                        "ok".into(),
                        c.value.to_string(),
                        method,
                        set,
                        c.notes.join("; "),
                    ],
                )
            }
            Err(e) => {
                let status = if e.is_cap_exceeded() {
                    "cap-exceeded"
                } else {
                    "unavailable"
                };
                let v = serde_json::json!({"name": name, "status": status, "error": e.to_string()});
                (
                    v,
                    vec![
                        name.clone(),
                        status.into(),
                        String::new(),
                        String::new(),
                        String::new(),
                        e.to_string(),
                    ],
                )
            }
        };
        entries.push(entry);
        rows.push(row);
    }
    let text = match cfg.format {
        Format::Json => serde_json::to_string_pretty(&serde_json::json!({
            "instance": loaded.instance.name,
            "config": cfg,
            "constants": entries,
        }))?,
        Format::Csv => csv_rows(&["name", "status", "value", "method", "witness_set", "notes"], rows)?,
    };
    emit(&text, common.out.as_deref())?;
    Ok(ExitCode::SUCCESS)
}

fn parse_overrides(list: &[String]) -> Result<Overrides> {
    list.iter()
        .map(|s| {
            let (k, v) = s
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("override {s:?} is not NAME=VALUE")))?;
            Ok((k.trim().to_string(), parse_quantity_str(v)?))
        })
        .collect()
}

fn cex_dir(explicit: Option<&Path>, out: Option<&Path>) -> PathBuf {
    explicit
        .map(Path::to_path_buf)
        .or_else(|| out.and_then(Path::parent).map(Path::to_path_buf))
        .filter(|p| !p.as_os_str().is_empty())
        .unwrap_or_else(|| PathBuf::from("."))
}

fn cmd_verify(
    graph: &str,
    ids: Option<&str>,
    inputs: &Inputs,
    override_args: &[String],
    cex: Option<&Path>,
    common: &Common,
) -> Result<ExitCode> {
    let loaded = apply_inputs(load(graph)?, inputs)?;
    let cfg = common.config(loaded.config.clone())?;
    let filter = id_filter(ids, loaded.ids.clone());
    let mut overrides = loaded.overrides.clone();
    overrides.extend(parse_overrides(override_args)?);
    let report = run_suite_with(&loaded.instance, &filter, &cfg, &overrides)?;
    let text = match cfg.format {
        Format::Json => report.to_json()?,
        Format::Csv => reports_to_csv([&report])?,
    };
    emit(&text, common.out.as_deref())?;
    if !report.has_fail() {
        return Ok(ExitCode::SUCCESS);
    }
    let ids = match &filter {
        IdFilter::All => None,
        IdFilter::Only(list) => Some(list.clone()),
    };
    let dir = cex_dir(cex, common.out.as_deref());
    if let Some(p) = write_counterexample(
        &dir,
        &loaded.instance,
        Some(loaded.metadata),
        &overrides,
        ids,
        &cfg,
        &report,
    )? {
        eprintln!("counterexample written to {}", p.display());
    }
    Ok(ExitCode::from(1))
}

#[allow(clippy::too_many_arguments)]
fn cmd_scan(
    family: &str,
    from: usize,
    to: usize,
    step: usize,
    ids: Option<&str>,
    checkpoint: Option<&Path>,
    cex: Option<&Path>,
    common: &Common,
) -> Result<ExitCode> {
    if from > to {
        return Err(Error::Config(format!("empty range {from}..{to}")));
    }
    let cfg = common.config(None)?;
    let opts = ScanOptions {
        family: family.to_string(),
        start: from,
        end: to,
        step,
        ids: id_filter(ids, None),
        checkpoint: checkpoint.map(Path::to_path_buf),
    };
    let report = scan_family(&opts, &cfg, |d| parse_descriptor(d).map(|l| l.instance))?;
    let text = match cfg.format {
        Format::Json => serde_json::to_string_pretty(&report)?,
        Format::Csv => {
            let mut rows = Vec::new();
            for (id, stat) in &report.per_id {
                for (inst, m) in &stat.margins {
                    rows.push(vec![id.clone(), inst.clone(), m.to_string()]);
                }
            }
            csv_rows(&["id", "instance", "margin"], rows)?
        }
    };
    emit(&text, common.out.as_deref())?;
    match (&report.failed, &report.failed_descriptor) {
        (Some(failed), Some(d)) => {
            let loaded = parse_descriptor(d)?;
            let ids = match &opts.ids {
                IdFilter::All => None,
                IdFilter::Only(list) => Some(list.clone()),
            };
            let dir = cex_dir(cex, common.out.as_deref());
            if let Some(p) = write_counterexample(
                &dir,
                &loaded.instance,
                Some(loaded.metadata),
                &Overrides::new(),
                ids,
                &cfg,
                failed,
            )? {
                eprintln!("counterexample written to {}", p.display());
            }
            Ok(ExitCode::from(1))
        }
        _ => Ok(ExitCode::SUCCESS),
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Build { descriptor, out } => cmd_build(&descriptor, out.as_deref()),
        Command::Constants {
            graph,
            which,
            inputs,
            common,
        } => cmd_constants(&graph, &which, &inputs, &common),
        Command::Verify {
            graph,
            ids,
            inputs,
            overrides,
            counterexample_dir,
            common,
        } => cmd_verify(
            &graph,
            ids.as_deref(),
            &inputs,
            &overrides,
            counterexample_dir.as_deref(),
            &common,
        ),
        Command::Scan {
            family,
            from,
            to,
            step,
            ids,
            checkpoint,
            counterexample_dir,
            common,
        } => cmd_scan(
            &family,
            from,
            to,
            step,
            ids.as_deref(),
            checkpoint.as_deref(),
            counterexample_dir.as_deref(),
            &common,
        ),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
