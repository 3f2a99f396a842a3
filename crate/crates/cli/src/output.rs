//! File formats: CSV with a header row and shortest round-trip decimals,
//! or pretty JSON. Files are replaced atomically.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::ValueEnum;
use rabiwave_core::rabi_dynamics::InversionTrace;
use serde::Serialize;

use crate::error::CliError;
use crate::peaks::{Peak, PeakList};
use crate::spectrum::Spectrum;

pub const OUTPUT_DIR_VAR: &str = "RABIWAVE_OUTPUT_DIR";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// Relative paths are placed under `$RABIWAVE_OUTPUT_DIR` when it is set.
pub fn resolve_output(path: &Path) -> PathBuf {
    match std::env::var_os(OUTPUT_DIR_VAR) {
        Some(dir) if path.is_relative() && !dir.is_empty() => Path::new(&dir).join(path),
        _ => path.to_path_buf(),
    }
}

/// Writes through a temporary file in the target directory, then renames.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
        _ => PathBuf::from("."),
    };
    std::fs::create_dir_all(&dir).map_err(|e| CliError::io(&dir, e))?;
    let mut tmp = tempfile::NamedTempFile::new_in(&dir).map_err(|e| CliError::io(&dir, e))?;
    tmp.write_all(bytes).map_err(|e| CliError::io(path, e))?;
    tmp.as_file().sync_all().map_err(|e| CliError::io(path, e))?;
    tmp.persist(path).map_err(|e| CliError::io(path, e.error))?;
    Ok(())
}

/// Sends `bytes` to `path` (after [`resolve_output`]) or to stdout.
pub fn emit(path: Option<&Path>, bytes: &[u8]) -> Result<(), CliError> {
    match path {
        Some(p) => write_atomic(&resolve_output(p), bytes),
        None => std::io::stdout().write_all(bytes).map_err(|e| CliError::io("<stdout>", e)),
    }
}

/// Shortest decimal that parses back to the same `f64`.
pub fn num(v: f64) -> String {
    format!("{v:?}")
}

pub struct Table {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Self { header: header.into_iter().map(Into::into).collect(), rows: Vec::new() }
    }

    pub fn row(&mut self, values: impl IntoIterator<Item = String>) {
        let r: Vec<String> = values.into_iter().collect();
        debug_assert_eq!(r.len(), self.header.len());
        self.rows.push(r);
    }

    pub fn push_f64(&mut self, values: &[f64]) {
        self.row(values.iter().map(|v| num(*v)));
    }

    pub fn to_csv(&self) -> Vec<u8> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header).expect("in-memory write");
        for r in &self.rows {
            w.write_record(r).expect("in-memory write");
        }
        w.into_inner().expect("in-memory flush")
    }
}

pub fn to_json<T: Serialize>(value: &T) -> Vec<u8> {
    let mut out = serde_json::to_vec_pretty(value).expect("serializable report");
    out.push(b'\n');
    out
}

pub fn trace_table(trace: &InversionTrace) -> Table {
    let n = trace.n_chains();
    let mut header = vec!["t".to_string(), "W_total".to_string()];
    header.extend((0..n).map(|j| format!("W_{j}")));
    header.push("norm".into());
    let mut t = Table::new(header);
    for i in 0..trace.len() {
        let mut row = vec![trace.times[i], trace.w_total[i]];
        row.extend(trace.w_per_chain.iter().map(|w| w[i]));
        row.push(trace.norm[i]);
        t.push_f64(&row);
    }
    t
}

#[derive(Serialize)]
struct TraceJson<'a> {
    t: &'a [f64],
    w_total: &'a [f64],
    w_per_chain: &'a [Vec<f64>],
    norm: &'a [f64],
}

pub fn trace_bytes(trace: &InversionTrace, format: Format) -> Vec<u8> {
    match format {
        Format::Csv => trace_table(trace).to_csv(),
        Format::Json => to_json(&TraceJson {
            t: &trace.times,
            w_total: &trace.w_total,
            w_per_chain: &trace.w_per_chain,
            norm: &trace.norm,
        }),
    }
}

pub fn snapshot_bytes(trace: &InversionTrace, n_chains: usize, format: Format) -> Vec<u8> {
    match format {
        Format::Csv => {
            let mut t = Table::new(["t", "site", "chain", "excited", "ground"]);
            for s in &trace.snapshots {
                for (i, (e, g)) in s.excited.iter().zip(&s.ground).enumerate() {
                    t.row([num(s.t), (i / n_chains).to_string(), (i % n_chains).to_string(), num(*e), num(*g)]);
                }
            }
            t.to_csv()
        }
        Format::Json => to_json(
            &trace
                .snapshots
                .iter()
                .map(|s| serde_json::json!({ "t": s.t, "excited": s.excited, "ground": s.ground }))
                .collect::<Vec<_>>(),
        ),
    }
}

pub fn spectrum_bytes(s: &Spectrum, format: Format) -> Vec<u8> {
    match format {
        Format::Csv => {
            let mut t = Table::new(["frequency", "amplitude"]);
            for (f, a) in s.frequencies.iter().zip(&s.amplitudes) {
                t.push_f64(&[*f, *a]);
            }
            t.to_csv()
        }
        Format::Json => to_json(s),
    }
}

pub fn peaks_bytes(p: &PeakList, format: Format) -> Vec<u8> {
    match format {
        Format::Csv => {
            let mut t = Table::new(["center", "height", "width", "prominence"]);
            for pk in &p.peaks {
                t.push_f64(&[pk.center, pk.height, pk.width, pk.prominence]);
            }
            t.to_csv()
        }
        Format::Json => to_json(p),
    }
}

fn read_text(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

fn parse_err(path: &Path, message: impl Into<String>) -> CliError {
    CliError::Parse { path: path.into(), message: message.into() }
}

fn is_json(text: &str) -> bool {
    text.trim_start().starts_with(['{', '['])
}

/// Numeric CSV body with the expected leading columns.
fn read_numeric_csv(path: &Path, text: &str) -> Result<(csv::StringRecord, Vec<Vec<f64>>), CliError> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let header = r.headers().map_err(|e| parse_err(path, e.to_string()))?.clone();
    let mut rows = Vec::new();
    for (line, rec) in r.records().enumerate() {
        let rec = rec.map_err(|e| parse_err(path, e.to_string()))?;
        let row = rec
            .iter()
            .map(|f| f.trim().parse::<f64>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| parse_err(path, format!("row {}: {e}", line + 2)))?;
        rows.push(row);
    }
    Ok((header, rows))
}

/// Reads a trace written by [`trace_bytes`] in either format.
pub fn read_trace(path: &Path) -> Result<InversionTrace, CliError> {
    let text = read_text(path)?;
    if is_json(&text) {
        #[derive(serde::Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Owned {
            t: Vec<f64>,
            w_total: Vec<f64>,
            w_per_chain: Vec<Vec<f64>>,
            norm: Vec<f64>,
        }
        let o: Owned = serde_json::from_str(&text).map_err(|e| parse_err(path, e.to_string()))?;
        let n = o.t.len();
        if o.w_total.len() != n || o.norm.len() != n || o.w_per_chain.iter().any(|w| w.len() != n) {
            return Err(parse_err(path, "trace columns differ in length"));
        }
        return Ok(InversionTrace {
            times: o.t,
            w_total: o.w_total,
            w_per_chain: o.w_per_chain,
            norm: o.norm,
            snapshots: Vec::new(),
        });
    }
    let (header, rows) = read_numeric_csv(path, &text)?;
    let cols: Vec<&str> = header.iter().collect();
    let n = cols.len();
    let chains_ok = n >= 4
        && cols[0] == "t"
        && cols[1] == "W_total"
        && cols[n - 1] == "norm"
        && (2..n - 1).all(|i| cols[i] == format!("W_{}", i - 2));
    if !chains_ok {
        return Err(parse_err(path, "expected header t,W_total,W_0,...,norm"));
    }
    let mut trace = InversionTrace::new(n - 3);
    for row in rows {
        trace.times.push(row[0]);
        trace.w_total.push(row[1]);
        for (j, series) in trace.w_per_chain.iter_mut().enumerate() {
            series.push(row[2 + j]);
        }
        trace.norm.push(row[n - 1]);
    }
    Ok(trace)
}

/// Reads a peak list written by [`peaks_bytes`] in either format.
pub fn read_peaks(path: &Path) -> Result<PeakList, CliError> {
    let text = read_text(path)?;
    if is_json(&text) {
        let p: PeakList = serde_json::from_str(&text).map_err(|e| parse_err(path, e.to_string()))?;
        return Ok(PeakList::new(p.peaks));
    }
    let (header, rows) = read_numeric_csv(path, &text)?;
    if header.iter().collect::<Vec<_>>() != ["center", "height", "width", "prominence"] {
        return Err(parse_err(path, "expected header center,height,width,prominence"));
    }
    Ok(PeakList::new(
        rows.into_iter().map(|r| Peak { center: r[0], height: r[1], width: r[2], prominence: r[3] }).collect(),
    ))
}

/// `dir/stem.<tag>.<ext>` next to `path`.
pub fn sibling(path: &Path, tag: &str) -> PathBuf {
    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let name = match path.extension() {
        Some(ext) => format!("{stem}.{tag}.{}", ext.to_string_lossy()),
        None => format!("{stem}.{tag}"),
    };
    path.with_file_name(name)
}
