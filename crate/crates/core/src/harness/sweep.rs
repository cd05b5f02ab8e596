//! Grid sweeps serialized as CSV.

use std::io::Write;
use std::path::Path;

use crate::analysis::{efficiency_report, EfficiencyRecord};
use crate::quantum::StateVector;
use crate::{Error, Result};

use super::config::RunConfig;

pub const CSV_HEADER: [&str; 14] = [
    "theta",
    "r",
    "s",
    "hbar",
    "status",
    "t_flip",
    "omega_H",
    "gamma",
    "alpha2",
    "omega_U",
    "tau_hermitian",
    "bound_rhs_eq4",
    "bound_rhs_full",
    "bound_ok",
];

/// 17 significant digits.
pub fn fmt_num(x: f64) -> String {
    format!("{x:.16e}")
}

fn csv_row(rec: &EfficiencyRecord) -> Vec<String> {
    let p = &rec.params;
    let mut row = vec![
        fmt_num(p.theta),
        fmt_num(p.r),
        fmt_num(p.s),
        fmt_num(p.hbar),
        rec.status.as_str().to_string(),
    ];
    if rec.is_skip() {
        row.extend(std::iter::repeat_n(String::new(), 9));
        return row;
    }
    row.extend(
        [
            rec.t_flip,
            rec.omega_h,
            rec.gamma,
            rec.alpha2,
            rec.omega_u,
            rec.hermitian_tau_same_omega,
            rec.bound_element.map_or(f64::NAN, |b| b.rhs),
            rec.bound_full.map_or(f64::NAN, |b| b.rhs),
        ]
        .into_iter()
        .map(fmt_num),
    );
    row.push(rec.bound_ok.to_string());
    row
}

/// Serializes records, header first.
pub fn write_csv<W: Write>(w: W, records: &[EfficiencyRecord]) -> Result<()> {
    let mut wr = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(w);
    let to_err = |e: csv::Error| Error::Io(e.into());
    wr.write_record(CSV_HEADER).map_err(to_err)?;
    for rec in records {
        wr.write_record(csv_row(rec)).map_err(to_err)?;
    }
    wr.flush()?;
    Ok(())
}

pub fn csv_string(records: &[EfficiencyRecord]) -> Result<String> {
    let mut buf = Vec::new();
    write_csv(&mut buf, records)?;
    Ok(String::from_utf8(buf).expect("csv output is ASCII"))
}

/// Writes `bytes` to a temporary file beside `path`, then renames it into
/// place. Nothing is left behind on failure.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| Error::Io(e.error))?;
    Ok(())
}

/// Evaluates the configured grid for the configured basis transition.
pub fn run_sweep(cfg: &RunConfig) -> Result<Vec<EfficiencyRecord>> {
    cfg.validate()?;
    let grid = cfg.grid()?;
    let psi_i = StateVector::basis(2, cfg.initial);
    let psi_f = StateVector::basis(2, cfg.target);
    efficiency_report(&grid, &psi_i, &psi_f, cfg.variant)
}
