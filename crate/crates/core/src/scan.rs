//! Error scans of a table against the high-precision oracles, and Stirling
//! truncation scans. Both emit CSV.

use std::io::Write;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gammafam::{FunctionKind, FunctionTable};
use crate::mp::{self, Real};
use crate::reference;
use crate::stirling::{lngamma_oracle, optimal_truncation, TruncationReport};

/// Linear points added on `[1, 3]`, where the sup error of every table sits.
pub const DENSE_POINTS: usize = 200;

/// Extra digits the oracle carries beyond the table's target.
pub const ORACLE_EXTRA_DIGITS: usize = 5;

fn check_range(zmin: f64, zmax: f64, points: usize) -> Result<()> {
    if points < 2 {
        return Err(Error::invalid("a scan needs at least 2 points"));
    }
    if zmin.is_nan() || zmin <= 0.0 || !zmax.is_finite() || zmax <= zmin {
        return Err(Error::invalid(format!(
            "scan range needs 0 < zmin < zmax, got [{zmin}, {zmax}]"
        )));
    }
    Ok(())
}

/// `points` logarithmically spaced values on `[zmin, zmax]` merged with
/// [`DENSE_POINTS`] linear ones on `[zmin, 3] ∩ [zmin, zmax]`; strictly increasing.
pub fn error_grid(zmin: f64, zmax: f64, points: usize) -> Result<Vec<f64>> {
    check_range(zmin, zmax, points)?;
    let (la, lb) = (zmin.ln(), zmax.ln());
    let mut grid: Vec<f64> = (0..points)
        .map(|i| (la + (lb - la) * i as f64 / (points - 1) as f64).exp())
        .collect();
    grid[0] = zmin;
    grid[points - 1] = zmax;
    let hi = zmax.min(3.0);
    if zmin < hi {
        grid.extend((0..DENSE_POINTS).map(|i| zmin + (hi - zmin) * i as f64 / (DENSE_POINTS - 1) as f64));
    }
    grid.sort_by(f64::total_cmp);
    grid.dedup();
    Ok(grid)
}

/// `points` evenly spaced values on `[zmin, zmax]`.
pub fn linear_grid(zmin: f64, zmax: f64, points: usize) -> Result<Vec<f64>> {
    check_range(zmin, zmax, points)?;
    Ok((0..points)
        .map(|i| {
            if i == points - 1 {
                zmax
            } else {
                zmin + (zmax - zmin) * i as f64 / (points - 1) as f64
            }
        })
        .collect())
}

/// The oracle value of `kind` at `z`.
pub fn reference_value(kind: FunctionKind, z: &Real, digits: usize) -> Result<Real> {
    Ok(match kind {
        FunctionKind::Gamma => lngamma_oracle(z, digits)?.exp(),
        FunctionKind::InvGamma => (-lngamma_oracle(z, digits)?).exp(),
        FunctionKind::LnGamma => lngamma_oracle(z, digits)?,
        FunctionKind::Psi(m) => reference::polygamma(m, z, digits)?,
    })
}

#[derive(Debug, Clone)]
pub struct ErrorScanRow {
    pub z: f64,
    pub approx: Real,
    pub reference: Real,
    /// `|approx - reference| / max(|reference|, 10^{-(digits+2)})`.
    pub rel_error: f64,
    pub abs_error: Real,
    /// `|reference|` fell below the floor; only the absolute error is meaningful.
    pub below_floor: bool,
}

#[derive(Debug, Clone)]
pub struct ScanSummary {
    pub max_rel_error: f64,
    pub argmax_rel: f64,
    pub max_abs_error: Real,
    pub argmax_abs: f64,
}

#[derive(Debug, Clone)]
pub struct ErrorScan {
    pub kind: FunctionKind,
    pub digits: usize,
    pub rows: Vec<ErrorScanRow>,
    pub summary: ScanSummary,
}

/// Evaluates `table` and the oracle on `grid`; rows are computed in parallel
/// and returned in grid order.
pub fn error_scan(table: &FunctionTable, grid: &[f64]) -> Result<ErrorScan> {
    if grid.is_empty() {
        return Err(Error::invalid("empty scan grid"));
    }
    let digits = table.target_digits();
    let oracle_digits = digits + ORACLE_EXTRA_DIGITS;
    let bits = mp::bits_for_digits(oracle_digits + 10);
    let floor = mp::one(bits) / mp::uint(10, bits).powi((digits + 2).into());
    let rows: Vec<ErrorScanRow> = grid
        .par_iter()
        .map(|&z| {
            let zr = mp::from_f64(z, bits);
            let approx = table.eval(&zr)?;
            let reference = reference_value(table.kind(), &zr, oracle_digits)?;
            let abs_error = mp::abs(&(&approx - &reference));
            let mag = mp::abs(&reference);
            let below_floor = mag < floor;
            let denom = if below_floor { floor.clone() } else { mag };
            let rel_error = mp::to_f64(&(&abs_error / denom));
            Ok(ErrorScanRow {
                z,
                approx,
                reference,
                rel_error,
                abs_error,
                below_floor,
            })
        })
        .collect::<Result<_>>()?;

    let mut summary = ScanSummary {
        max_rel_error: 0.0,
        argmax_rel: rows[0].z,
        max_abs_error: mp::zero(bits),
        argmax_abs: rows[0].z,
    };
    for r in &rows {
        if !r.below_floor && r.rel_error > summary.max_rel_error {
            summary.max_rel_error = r.rel_error;
            summary.argmax_rel = r.z;
        }
        if r.abs_error > summary.max_abs_error {
            summary.max_abs_error = r.abs_error.clone();
            summary.argmax_abs = r.z;
        }
    }
    Ok(ErrorScan {
        kind: table.kind(),
        digits,
        rows,
        summary,
    })
}

/// `z` as a 17-significant-digit decimal; parses back to the same `f64`.
pub fn format_z(z: f64) -> String {
    mp::format_decimal(&mp::from_f64(z, 64), 17)
}

pub fn write_error_csv<W: Write>(scan: &ErrorScan, mut w: W) -> Result<()> {
    let sig = scan.digits + 2;
    writeln!(w, "z,approx,reference,rel_error,abs_error")?;
    for r in &scan.rows {
        writeln!(
            w,
            "{},{},{},{},{}",
            format_z(r.z),
            mp::format_sci(&r.approx, sig),
            mp::format_sci(&r.reference, sig),
            format_rel(r.rel_error),
            mp::format_sci(&r.abs_error, 6),
        )?;
    }
    Ok(())
}

fn format_rel(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.6e}")
    } else {
        "inf".into()
    }
}

/// One row of a Stirling truncation scan; `report` is `None` when the scan
/// ran out of terms before finding a minimum.
#[derive(Debug, Clone, Copy)]
pub struct StirlingRow {
    pub z: f64,
    pub report: Option<TruncationReport>,
}

pub fn stirling_scan(grid: &[f64], n_scan: usize) -> Result<Vec<StirlingRow>> {
    if let Some(&z) = grid.iter().find(|&&z| z.is_nan() || z < 1.0) {
        return Err(Error::domain(format!("Stirling scans need z ≥ 1, got {z}")));
    }
    grid.par_iter()
        .map(|&z| match optimal_truncation(z, n_scan) {
            Ok(r) => Ok(StirlingRow { z, report: Some(r) }),
            Err(Error::ScanExhausted { .. }) => Ok(StirlingRow { z, report: None }),
            Err(e) => Err(e),
        })
        .collect()
}

pub fn write_stirling_csv<W: Write>(rows: &[StirlingRow], mut w: W) -> Result<()> {
    writeln!(w, "z,n_opt,est_digits")?;
    for r in rows {
        match r.report {
            Some(t) => writeln!(w, "{},{},{:.10}", format_z(r.z), t.n_opt, t.est_digits)?,
            None => writeln!(w, "{},NA,NA", format_z(r.z))?,
        }
    }
    Ok(())
}
