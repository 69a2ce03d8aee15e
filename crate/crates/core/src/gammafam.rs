//! Coefficient tables for Γ, 1/Γ, lnΓ, ψ and ψ⁽ᵐ⁾ on `z ≥ 1`.
//!
//! Every table holds an inverse-z Chebyshev series for the part of the
//! function left over after a closed-form prefactor:
//!
//! | kind        | value                                          |
//! |-------------|------------------------------------------------|
//! | `Gamma`     | `√(2π)·z^{z-½}·e^{-z} · S(1/z)`                |
//! | `InvGamma`  | `S(1/z) / (√(2π)·z^{z-½}·e^{-z})`              |
//! | `LnGamma`   | `ln√(2π) + (z-½)·ln z - z + S(1/z)`            |
//! | `Psi(0)`    | `ln z + S(1/z)`                                |
//! | `Psi(m≥1)`  | `S(1/z)`                                       |
//!
//! Arguments in `(0, 1)` are moved up by one step of the functional recurrence.

use std::fmt;
use std::str::FromStr;

use dashu_int::IBig;

use crate::chebcore::{self, ArgMap, ChebSeries, PrecisionContext, DEFAULT_EXTRA_DIGITS};
use crate::error::{Error, Result};
use crate::mp::{self, Real};
use crate::stirling::{lngamma_correction, stirling_prefix};

/// Which function a table approximates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FunctionKind {
    Gamma,
    InvGamma,
    LnGamma,
    /// `ψ⁽ᵐ⁾`; `Psi(0)` is the digamma function.
    Psi(u32),
}

impl FunctionKind {
    /// True for the kinds fitted directly from the lnΓ oracle.
    pub fn is_primary(self) -> bool {
        matches!(self, FunctionKind::Gamma | FunctionKind::InvGamma | FunctionKind::LnGamma)
    }
}

impl fmt::Display for FunctionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FunctionKind::Gamma => f.write_str("gamma"),
            FunctionKind::InvGamma => f.write_str("invgamma"),
            FunctionKind::LnGamma => f.write_str("lngamma"),
            FunctionKind::Psi(m) => write!(f, "psi{m}"),
        }
    }
}

impl FromStr for FunctionKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gamma" => Ok(FunctionKind::Gamma),
            "invgamma" => Ok(FunctionKind::InvGamma),
            "lngamma" => Ok(FunctionKind::LnGamma),
            _ => s
                .strip_prefix("psi")
                .filter(|d| !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit()))
                .and_then(|d| d.parse().ok())
                .map(FunctionKind::Psi)
                .ok_or_else(|| {
                    Error::invalid(format!(
                        "unknown function '{s}' (expected gamma, invgamma, lngamma, psi0, psi<m>)"
                    ))
                }),
        }
    }
}

/// How a table was produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Provenance {
    pub node_count_m: usize,
    pub work_digits: usize,
    pub oracle_digits: usize,
    /// `stirling-oracle`, or the chain of derivations, e.g. `lngamma>psi0>psi1`.
    pub source: String,
}

/// An immutable Chebyshev table for one member of the Γ family.
#[derive(Debug, Clone)]
pub struct FunctionTable {
    kind: FunctionKind,
    series: ChebSeries,
    target_digits: usize,
    provenance: Provenance,
    /// Fitted coefficients beyond the kept ones, when known.
    dropped: Vec<Real>,
    tail_bound: Option<f64>,
}

impl FunctionTable {
    /// Assembles a table from stored parts, e.g. a parsed table file.
    pub fn from_parts(
        kind: FunctionKind,
        series: ChebSeries,
        target_digits: usize,
        provenance: Provenance,
        tail_bound: Option<f64>,
    ) -> Result<Self> {
        if series.arg_map() != ArgMap::InverseZ {
            return Err(Error::invalid("Γ-family tables use the inverse-z argument map"));
        }
        if target_digits == 0 {
            return Err(Error::invalid("target digits must be positive"));
        }
        Ok(FunctionTable {
            kind,
            series,
            target_digits,
            provenance,
            dropped: Vec::new(),
            tail_bound,
        })
    }

    fn with_dropped(
        kind: FunctionKind,
        full: ChebSeries,
        keep: usize,
        target_digits: usize,
        provenance: Provenance,
    ) -> Self {
        let keep = keep.clamp(1, full.len());
        let dropped = full.coeffs()[keep..].to_vec();
        let tail = dropped.iter().fold(mp::zero(full.bits()), |acc, c| acc + mp::abs(c));
        FunctionTable {
            kind,
            series: full.leading(keep),
            target_digits,
            provenance,
            dropped,
            tail_bound: Some(mp::to_f64(&tail)),
        }
    }

    pub fn kind(&self) -> FunctionKind {
        self.kind
    }

    pub fn series(&self) -> &ChebSeries {
        &self.series
    }

    pub fn target_digits(&self) -> usize {
        self.target_digits
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn len(&self) -> usize {
        self.series.len()
    }

    pub fn is_empty(&self) -> bool {
        self.series.is_empty()
    }

    /// `Σ|a*_r|` over the coefficients fitted but not kept; bounds the
    /// truncation error of the series on `[0, 1]`.
    pub fn tail_bound(&self) -> Option<f64> {
        self.tail_bound
    }

    /// Kept coefficients followed by any known dropped ones.
    pub fn full_series(&self) -> ChebSeries {
        if self.dropped.is_empty() {
            return self.series.clone();
        }
        let mut all = self.series.coeffs().to_vec();
        all.extend(self.dropped.iter().cloned());
        ChebSeries::new(all, ArgMap::InverseZ, self.series.precision_digits())
            .expect("coefficients already validated")
    }

    /// The same table keeping only the first `n` coefficients.
    pub fn truncated(&self, n: usize) -> Result<FunctionTable> {
        if n == 0 {
            return Err(Error::invalid("a table needs at least one coefficient"));
        }
        if n >= self.series.len() {
            return Ok(self.clone());
        }
        let bits = self.series.bits();
        let newly: Real = self.series.coeffs()[n..]
            .iter()
            .fold(mp::zero(bits), |acc, c| acc + mp::abs(c));
        let mut dropped = self.series.coeffs()[n..].to_vec();
        dropped.extend(self.dropped.iter().cloned());
        Ok(FunctionTable {
            kind: self.kind,
            series: self.series.leading(n),
            target_digits: self.target_digits,
            provenance: self.provenance.clone(),
            dropped,
            tail_bound: self.tail_bound.map(|t| t + mp::to_f64(&newly)),
        })
    }

    /// Smallest leading part whose dropped tail sums below `10^{-digits}`.
    pub fn economized(&self, digits: usize) -> FunctionTable {
        let full = self.full_series();
        let n = resolved_length(&full, digits).unwrap_or(full.len());
        let mut t = FunctionTable::with_dropped(
            self.kind,
            full,
            n,
            self.target_digits,
            self.provenance.clone(),
        );
        if self.dropped.is_empty() && n == self.series.len() {
            t.tail_bound = self.tail_bound;
        }
        t
    }

    /// Evaluates the table's function at `z > 0`.
    pub fn eval(&self, z: &Real) -> Result<Real> {
        if !mp::is_finite(z) || mp::is_zero(z) || mp::is_negative(z) {
            return Err(Error::domain(format!(
                "{} is evaluated for z > 0 only, got {}",
                self.kind,
                mp::format_sci(z, 10)
            )));
        }
        let bits = self.eval_bits(z);
        let z = mp::at(z, bits);
        let one = mp::one(bits);
        if z < one {
            let up = self.eval_direct(&(&z + &one), bits)?;
            return Ok(match self.kind {
                FunctionKind::Gamma => up / &z,
                FunctionKind::InvGamma => up * &z,
                FunctionKind::LnGamma => up - z.ln(),
                FunctionKind::Psi(m) => {
                    let fact = factorial(m, bits);
                    let step = fact / z.powi(IBig::from(m + 1));
                    if m % 2 == 0 {
                        up - step
                    } else {
                        up + step
                    }
                }
            });
        }
        self.eval_direct(&z, bits)
    }

    /// [`eval`](Self::eval) through `f64` on both sides.
    pub fn eval_f64(&self, z: f64) -> Result<f64> {
        if !z.is_finite() {
            return Err(Error::domain("z must be finite"));
        }
        let bits = mp::bits_for_digits(self.target_digits + DEFAULT_EXTRA_DIGITS);
        Ok(mp::to_f64(&self.eval(&mp::from_f64(z, bits))?))
    }

    fn eval_bits(&self, z: &Real) -> usize {
        let zf = mp::to_f64(z).abs().max(2.0);
        let magnitude = (zf * zf.ln()).log2().max(0.0).ceil() as usize;
        self.series.bits().max(z.precision()) + magnitude + 8
    }

    fn eval_direct(&self, z: &Real, bits: usize) -> Result<Real> {
        let x = mp::one(bits) / z;
        let s = chebcore::clenshaw_eval(&self.series, &x)?;
        Ok(match self.kind {
            FunctionKind::Gamma => stirling_prefix(z, bits).exp() * s,
            FunctionKind::InvGamma => s / stirling_prefix(z, bits).exp(),
            FunctionKind::LnGamma => stirling_prefix(z, bits) + s,
            FunctionKind::Psi(0) => z.ln() + s,
            FunctionKind::Psi(_) => s,
        })
    }
}

fn factorial(m: u32, bits: usize) -> Real {
    (1..=m as u64).fold(mp::one(bits), |acc, k| acc * mp::uint(k, bits))
}

/// First `n` with `Σ_{r≥n}|a*_r| < 10^{-digits}`, if the series resolves it.
fn resolved_length(s: &ChebSeries, digits: usize) -> Option<usize> {
    let bits = s.bits();
    let tol = mp::one(bits) / mp::uint(10, bits).powi(IBig::from(digits));
    let mut tail = mp::zero(bits);
    let mut keep = None;
    for r in (1..s.len()).rev() {
        tail += mp::abs(&s.coeffs()[r]);
        if tail < tol {
            keep = Some(r);
        } else {
            break;
        }
    }
    keep
}

/// Residual sampled at the node `x = 1/z`; `x = 0` takes its limit.
fn residual(kind: FunctionKind, x: &Real, digits: usize) -> Result<Real> {
    let bits = x.precision();
    if mp::is_zero(x) {
        return Ok(match kind {
            FunctionKind::LnGamma => mp::zero(bits),
            _ => mp::one(bits),
        });
    }
    let z = mp::one(bits) / x;
    let c = lngamma_correction(&z, digits)?;
    Ok(match kind {
        FunctionKind::Gamma => c.exp(),
        FunctionKind::InvGamma => (-c).exp(),
        _ => c,
    })
}

/// Largest fit length `generate_auto` will attempt.
pub const MAX_FIT_LENGTH: usize = 4096;

/// Number of coefficients fitted by default for a `target`-digit table.
pub fn default_fit_length(target_digits: usize, n_coeffs: usize) -> usize {
    (n_coeffs + 16).max(2 * target_digits + 16)
}

/// Context that fits [`default_fit_length`] coefficients so that the tail
/// beyond `n_coeffs` is measured, not assumed.
pub fn default_context(target_digits: usize, n_coeffs: usize) -> Result<PrecisionContext> {
    if n_coeffs == 0 {
        return Err(Error::invalid("ncoeffs must be positive"));
    }
    PrecisionContext::new(
        target_digits + DEFAULT_EXTRA_DIGITS,
        target_digits,
        2 * default_fit_length(target_digits, n_coeffs),
    )
}

/// Fits `m/2` coefficients of the Γ, 1/Γ or lnΓ residual and keeps `n_coeffs`.
pub fn generate_table(
    kind: FunctionKind,
    n_coeffs: usize,
    ctx: &PrecisionContext,
) -> Result<FunctionTable> {
    if !kind.is_primary() {
        return Err(Error::invalid(format!(
            "{kind} tables are derived from lngamma, not generated directly"
        )));
    }
    if n_coeffs == 0 {
        return Err(Error::invalid("ncoeffs must be positive"));
    }
    ctx.check_coefficients(n_coeffs)?;
    let n_fit = (ctx.node_count_m / 2).max(n_coeffs);
    let digits = ctx.work_digits;
    let full = chebcore::fit(
        |x| residual(kind, x, digits),
        ctx.node_count_m,
        n_fit,
        ArgMap::InverseZ,
        ctx,
    )?;
    let provenance = Provenance {
        node_count_m: ctx.node_count_m,
        work_digits: ctx.work_digits,
        oracle_digits: digits,
        source: "stirling-oracle".into(),
    };
    Ok(FunctionTable::with_dropped(kind, full, n_coeffs, ctx.target_digits, provenance))
}

/// Generates a table whose kept length is the smallest with tail `< 10^{-target}`,
/// refitting with more nodes until the tail is resolved.
pub fn generate_auto(kind: FunctionKind, target_digits: usize) -> Result<FunctionTable> {
    let capacity = || Error::Capacity {
        what: format!("{kind} tail did not fall below 10^-{target_digits}"),
        max_digits: (MAX_FIT_LENGTH - 16) / 2,
    };
    let mut n_fit = default_fit_length(target_digits, 1);
    if n_fit > MAX_FIT_LENGTH {
        return Err(capacity());
    }
    loop {
        let ctx = PrecisionContext::new(
            target_digits + DEFAULT_EXTRA_DIGITS,
            target_digits,
            2 * n_fit,
        )?;
        let table = generate_table(kind, n_fit, &ctx)?;
        if let Some(n) = resolved_length(table.series(), target_digits) {
            if n + 4 <= n_fit {
                return table.truncated(n);
            }
        }
        if 2 * n_fit > MAX_FIT_LENGTH {
            return Err(capacity());
        }
        n_fit *= 2;
    }
}

/// Derived length: the derivative of an `n`-term series has `n + 1` terms.
fn derive(
    parent: &FunctionTable,
    kind: FunctionKind,
    fix: impl Fn(&mut ChebSeries, usize),
) -> Result<FunctionTable> {
    let full = parent.full_series();
    let mut d = chebcore::differentiate_inverse_arg(&full)?;
    let bits = d.bits();
    fix(&mut d, bits);
    let keep = parent.series.len() + 1;
    let provenance = Provenance {
        source: format!("{}>{}", parent.provenance.source, kind)
            .replace("stirling-oracle>", "lngamma>"),
        ..parent.provenance.clone()
    };
    let target = parent.target_digits.saturating_sub(2).max(1);
    let mut t = FunctionTable::with_dropped(kind, d, keep, target, provenance);
    if parent.dropped.is_empty() {
        t.tail_bound = None;
    }
    Ok(t)
}

/// ψ from lnΓ: differentiate the series, then fold `-1/(2z) = -¼(T*_0 + T*_1)`
/// into it.
pub fn derive_psi_table(lngamma: &FunctionTable) -> Result<FunctionTable> {
    if lngamma.kind != FunctionKind::LnGamma {
        return Err(Error::invalid(format!(
            "digamma is derived from a lngamma table, got {}",
            lngamma.kind
        )));
    }
    derive(lngamma, FunctionKind::Psi(0), |s, bits| {
        s.adjust(0, &(mp::int(-1, bits) / mp::int(2, bits)));
        s.adjust(1, &(mp::int(-1, bits) / mp::int(4, bits)));
    })
}

/// ψ⁽ᵐ⁾ from ψ⁽ᵐ⁻¹⁾. The first step also absorbs `d/dz ln z = 1/z = ½(T*_0 + T*_1)`.
pub fn derive_polygamma_table(prev: &FunctionTable, target_order: u32) -> Result<FunctionTable> {
    if target_order == 0 {
        return Err(Error::invalid("polygamma order must be at least 1"));
    }
    if prev.kind != FunctionKind::Psi(target_order - 1) {
        return Err(Error::invalid(format!(
            "psi{target_order} is derived from psi{}, got {}",
            target_order - 1,
            prev.kind
        )));
    }
    derive(prev, FunctionKind::Psi(target_order), |s, bits| {
        if target_order == 1 {
            s.adjust(0, &mp::one(bits));
            s.adjust(1, &(mp::one(bits) / mp::int(2, bits)));
        }
    })
}

/// ψ⁽ᵐ⁾ good to `target_digits`, derived from a lnΓ table carrying two extra
/// digits per differentiation.
pub fn generate_polygamma(order: u32, target_digits: usize) -> Result<FunctionTable> {
    let base = target_digits + 2 * (order as usize + 1);
    let lngamma = generate_auto(FunctionKind::LnGamma, base)?;
    let mut t = derive_psi_table(&lngamma)?;
    for k in 1..=order {
        t = derive_polygamma_table(&t, k)?;
    }
    Ok(t.economized(target_digits))
}

/// Any kind at `target_digits`, with the automatic coefficient count.
pub fn generate_kind(kind: FunctionKind, target_digits: usize) -> Result<FunctionTable> {
    match kind {
        FunctionKind::Psi(m) => generate_polygamma(m, target_digits),
        _ => generate_auto(kind, target_digits),
    }
}

/// A harmonic or generalized harmonic number.
#[derive(Debug, Clone, PartialEq)]
pub struct HarmonicResult {
    pub order_m: u32,
    pub n: u64,
    pub value: Real,
}

/// `H_n = ψ(n+1) - ψ(1)`, rounded to the table's target digits.
pub fn harmonic(n: u64, psi: &FunctionTable) -> Result<HarmonicResult> {
    if psi.kind != FunctionKind::Psi(0) {
        return Err(Error::invalid(format!("harmonic numbers need a psi0 table, got {}", psi.kind)));
    }
    if n == 0 {
        return Err(Error::invalid("harmonic numbers start at n = 1"));
    }
    let bits = psi.series.bits();
    let euler = -psi.eval(&mp::one(bits))?;
    let value = psi.eval(&mp::uint(n + 1, bits))? + euler;
    Ok(HarmonicResult {
        order_m: 0,
        n,
        value: mp::round_sig(&value, psi.target_digits),
    })
}

/// `Σ_{k=1}^{n-1} k^{-(m+1)} = ((-1)^{m+1}/m!)·[ψ⁽ᵐ⁾(1) - ψ⁽ᵐ⁾(n)]`.
pub fn generalized_harmonic(m: u32, n: u64, table: &FunctionTable) -> Result<HarmonicResult> {
    if m == 0 {
        return Err(Error::invalid("generalized harmonic sums need m ≥ 1; use harmonic"));
    }
    if table.kind != FunctionKind::Psi(m) {
        return Err(Error::invalid(format!("order {m} needs a psi{m} table, got {}", table.kind)));
    }
    if n < 2 {
        return Err(Error::invalid("generalized harmonic sums need n ≥ 2"));
    }
    let bits = table.series.bits();
    let diff = table.eval(&mp::one(bits))? - table.eval(&mp::uint(n, bits))?;
    let mut value = diff / factorial(m, bits);
    if m.is_multiple_of(2) {
        value = -value;
    }
    Ok(HarmonicResult {
        order_m: m,
        n,
        value: mp::round_sig(&value, table.target_digits),
    })
}
