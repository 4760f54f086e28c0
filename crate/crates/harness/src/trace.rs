//! Trace and plot files.

use std::io::Write;
use std::path::Path;

use gcg_core::IterateRecord;

pub const TRACE_HEADER: [&str; 8] = ["k", "f_x", "f_ref", "gap", "step", "backtracks", "l_k", "elapsed_ns"];
pub const PLOT_HEADER: [&str; 3] = ["k", "min_gap", "f_minus_fstar"];

#[derive(Debug, thiserror::Error)]
pub enum TraceError {
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Csv(#[from] csv::Error),
    #[error("header is {found:?}, expected {expected:?}")]
    Header { found: Vec<String>, expected: Vec<String> },
    #[error("row {row}, column `{column}`: cannot parse `{value}`")]
    Field { row: usize, column: &'static str, value: String },
}

/// 17 significant digits: round-trips every finite `f64`.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// Writes the trace. `elapsed_ns` is written as 0 unless `timing` is set,
/// so that identical runs produce identical files.
pub fn write_trace<W: Write>(out: W, trace: &[IterateRecord], timing: bool) -> Result<(), TraceError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(TRACE_HEADER)?;
    for r in trace {
        w.write_record([
            r.k.to_string(),
            fmt_f64(r.f_x),
            fmt_f64(r.f_ref),
            fmt_f64(r.gap),
            fmt_f64(r.step),
            r.backtracks.to_string(),
            r.l_k.map(fmt_f64).unwrap_or_default(),
            if timing { r.elapsed_ns } else { 0 }.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_trace_file(path: &Path, trace: &[IterateRecord], timing: bool) -> Result<(), TraceError> {
    write_trace(std::io::BufWriter::new(std::fs::File::create(path)?), trace, timing)
}

pub fn read_trace<R: std::io::Read>(input: R) -> Result<Vec<IterateRecord>, TraceError> {
    let mut rd = csv::ReaderBuilder::new().has_headers(true).from_reader(input);
    let header = rd.headers()?;
    if header.iter().ne(TRACE_HEADER) {
        return Err(TraceError::Header {
            found: header.iter().map(String::from).collect(),
            expected: TRACE_HEADER.map(String::from).to_vec(),
        });
    }
    let mut rows = Vec::new();
    for (row, rec) in rd.records().enumerate() {
        let rec = rec?;
        let get = |i: usize| rec.get(i).unwrap_or("");
        let bad = |i: usize| TraceError::Field { row, column: TRACE_HEADER[i], value: get(i).to_string() };
        let float = |i: usize| get(i).parse::<f64>().map_err(|_| bad(i));
        let int = |i: usize| get(i).parse::<u64>().map_err(|_| bad(i));
        rows.push(IterateRecord {
            k: int(0)? as usize,
            f_x: float(1)?,
            f_ref: float(2)?,
            gap: float(3)?,
            step: float(4)?,
            backtracks: int(5)? as usize,
            l_k: if get(6).is_empty() { None } else { Some(float(6)?) },
            elapsed_ns: int(7)?,
            dir_norm_sq: None,
        });
    }
    Ok(rows)
}

pub fn read_trace_file(path: &Path) -> Result<Vec<IterateRecord>, TraceError> {
    read_trace(std::fs::File::open(path)?)
}

/// Running minimum of the gap, indexed like the trace.
pub fn running_min_gap(trace: &[IterateRecord]) -> Vec<f64> {
    trace
        .iter()
        .scan(f64::INFINITY, |m, r| {
            *m = m.min(r.gap);
            Some(*m)
        })
        .collect()
}

/// Writes `(k, min_{l≤k} gap, F(x^k) − f_star)`. Without a known optimum the
/// smallest objective value in the trace stands in for `f_star`.
pub fn write_plot<W: Write>(out: W, trace: &[IterateRecord], f_star: Option<f64>) -> Result<(), TraceError> {
    let best = f_star.unwrap_or_else(|| trace.iter().map(|r| r.f_x).fold(f64::INFINITY, f64::min));
    let mut w = csv::Writer::from_writer(out);
    w.write_record(PLOT_HEADER)?;
    for (r, m) in trace.iter().zip(running_min_gap(trace)) {
        w.write_record([r.k.to_string(), fmt_f64(m), fmt_f64(r.f_x - best)])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_plot_file(path: &Path, trace: &[IterateRecord], f_star: Option<f64>) -> Result<(), TraceError> {
    write_plot(std::io::BufWriter::new(std::fs::File::create(path)?), trace, f_star)
}
