//! Bernoulli numbers, the Stirling series for lnΓ, and its optimal truncation.
//!
//! `lnΓ(z) ~ ½ln(2π) + (z - ½)ln z - z + Σ_{n≥1} B_{2n} / (2n(2n-1) z^{2n-1})`
//!
//! The series diverges for every fixed `z`; its terms shrink until roughly
//! `n ≈ πz` and grow without bound afterwards. [`lngamma_oracle`] shifts the
//! argument upward until the smallest term is below the requested accuracy and
//! walks back down with `lnΓ(z) = lnΓ(z + k) - ln(z(z+1)…(z+k-1))`.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock, RwLock};

use dashu_int::IBig;
use dashu_ratio::RBig;

use crate::error::{Error, Result};
use crate::mp::{self, Real};

/// Decimal digits gained per Stirling term near the optimal truncation point
/// (`2π/ln 10` digits per unit of `z`, `π` terms per unit of `z`).
const DIGITS_PER_TERM: f64 = 2.0 / std::f64::consts::LN_10;

/// Grow-only table of exact Bernoulli numbers `B_2, B_4, …, B_{2·n_max}`.
///
/// Entries are produced by the defining recurrence
/// `Σ_{k=0}^{n} C(n+1, k)·B_k = 0` in exact rational arithmetic.
pub struct BernoulliTable {
    n_max: usize,
    inner: RwLock<Entries>,
}

#[derive(Default)]
struct Entries {
    /// `values[i]` is `B_{2(i+1)}`.
    values: Vec<RBig>,
    /// `log10 |B_{2n} / (2n(2n-1))|`, same indexing.
    log10_coeffs: Vec<f64>,
}

impl BernoulliTable {
    pub const DEFAULT_N_MAX: usize = 1024;

    pub fn new(n_max: usize) -> Self {
        BernoulliTable {
            n_max,
            inner: RwLock::new(Entries::default()),
        }
    }

    /// Process-wide table shared by the oracle and the diagnostics.
    pub fn global() -> &'static BernoulliTable {
        static TABLE: OnceLock<BernoulliTable> = OnceLock::new();
        TABLE.get_or_init(|| BernoulliTable::new(Self::DEFAULT_N_MAX))
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// Number of entries computed so far.
    pub fn len(&self) -> usize {
        self.inner.read().unwrap().values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Highest accuracy (decimal digits) the Stirling oracle can reach with this table.
    pub fn max_digits(&self) -> usize {
        ((self.n_max as f64 * DIGITS_PER_TERM).floor() as usize).saturating_sub(2)
    }

    /// Extends the table through `B_{2n}`.
    pub fn ensure(&self, n: usize) -> Result<()> {
        if n > self.n_max {
            return Err(Error::Capacity {
                what: format!("B_{} requested, table holds up to B_{}", 2 * n, 2 * self.n_max),
                max_digits: self.max_digits(),
            });
        }
        if self.inner.read().unwrap().values.len() >= n {
            return Ok(());
        }
        let mut inner = self.inner.write().unwrap();
        while inner.values.len() < n {
            let j = inner.values.len() + 1;
            let b = next_even_bernoulli(j, &inner.values);
            let coeff = stirling_coeff_from(&b, j);
            inner.log10_coeffs.push(log10_ratio(&coeff));
            inner.values.push(b);
        }
        Ok(())
    }

    /// Exact `B_{two_n}` for even `two_n ≥ 2`.
    pub fn get(&self, two_n: usize) -> Result<RBig> {
        if two_n == 0 || two_n % 2 == 1 {
            return Err(Error::invalid(format!(
                "Bernoulli index must be even and positive, got {two_n}"
            )));
        }
        let n = two_n / 2;
        self.ensure(n)?;
        Ok(self.inner.read().unwrap().values[n - 1].clone())
    }

    /// `B_2 … B_{2n}`.
    pub fn values(&self, n: usize) -> Result<Vec<RBig>> {
        self.ensure(n)?;
        Ok(self.inner.read().unwrap().values[..n].to_vec())
    }

    fn log10_coeffs(&self, n: usize) -> Result<Vec<f64>> {
        self.ensure(n)?;
        Ok(self.inner.read().unwrap().log10_coeffs[..n].to_vec())
    }
}

/// `B_{2j}` from `B_2 … B_{2j-2}`:
/// `B_{2j} = -1/(2j+1)·[B_0 + (2j+1)·B_1 + Σ_{i=1}^{j-1} C(2j+1, 2i)·B_{2i}]`.
fn next_even_bernoulli(j: usize, previous: &[RBig]) -> RBig {
    let n1 = 2 * j + 1;
    // B_0 + C(n1,1)·B_1 = 1 - n1/2
    let mut sum = RBig::ONE - RBig::from_parts(IBig::from(n1), 2u8.into());
    let mut binom = IBig::from(n1); // C(n1, 1)
    for k in 1..2 * j {
        // C(n1, k+1) = C(n1, k)·(n1-k)/(k+1)
        binom = binom * IBig::from(n1 - k) / IBig::from(k + 1);
        let idx = k + 1;
        if idx % 2 == 0 && idx < 2 * j {
            sum += RBig::from(binom.clone()) * &previous[idx / 2 - 1];
        }
    }
    -sum / RBig::from(IBig::from(n1))
}

fn stirling_coeff_from(b: &RBig, n: usize) -> RBig {
    let d = (2 * n) * (2 * n - 1);
    b / RBig::from(IBig::from(d))
}

fn log10_ratio(r: &RBig) -> f64 {
    mp::log10_ibig(r.numerator()) - mp::log10_ibig(&IBig::from(r.denominator().clone()))
}

/// Exact `B_{two_n}` from the shared table.
pub fn bernoulli(two_n: usize) -> Result<RBig> {
    BernoulliTable::global().get(two_n)
}

/// Exact coefficient `B_{2n} / (2n(2n-1))` of `z^{-(2n-1)}`.
pub fn stirling_coefficient(n: usize) -> Result<RBig> {
    if n == 0 {
        return Err(Error::invalid("Stirling term index starts at 1"));
    }
    Ok(stirling_coeff_from(&bernoulli(2 * n)?, n))
}

static COEFF_CACHE: OnceLock<Mutex<HashMap<usize, Vec<Real>>>> = OnceLock::new();

/// The first `n` Stirling coefficients as reals of `bits` precision.
fn coefficient_reals(n: usize, bits: usize) -> Result<Vec<Real>> {
    let cache = COEFF_CACHE.get_or_init(Default::default);
    if let Some(v) = cache.lock().unwrap().get(&bits) {
        if v.len() >= n {
            return Ok(v[..n].to_vec());
        }
    }
    let values = BernoulliTable::global().values(n)?;
    let reals: Vec<Real> = values
        .iter()
        .enumerate()
        .map(|(i, b)| mp::from_ratio(&stirling_coeff_from(b, i + 1), bits))
        .collect();
    let mut guard = cache.lock().unwrap();
    let entry = guard.entry(bits).or_default();
    if entry.len() < reals.len() {
        *entry = reals.clone();
    }
    Ok(reals)
}

/// `B_{2n} / (2n(2n-1) z^{2n-1})` at the precision of `z` (at least 64 bits).
pub fn stirling_term(n: usize, z: &Real) -> Result<Real> {
    if n == 0 {
        return Err(Error::invalid("Stirling term index starts at 1"));
    }
    let bits = z.precision().max(64);
    if *z < mp::one(bits) {
        return Err(Error::domain("Stirling terms are tabulated for z ≥ 1"));
    }
    let c = mp::from_ratio(&stirling_coefficient(n)?, bits);
    let p = mp::at(z, bits).powi(IBig::from(2 * n - 1));
    Ok(c / p)
}

/// Where the Stirling series for a given `z` should stop.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationReport {
    pub z: f64,
    /// Index of the smallest-magnitude term.
    pub n_opt: usize,
    /// `|term(n_opt, z)|`; underflows to zero for large `z`.
    pub min_term: f64,
    /// `-log10(min_term)`, the achievable decimal accuracy.
    pub est_digits: f64,
}

/// `log10 |term(n, z)|` for `n = 1..=count`.
fn term_magnitudes(z: f64, count: usize) -> Result<Vec<f64>> {
    let lz = z.log10();
    Ok(BernoulliTable::global()
        .log10_coeffs(count)?
        .into_iter()
        .enumerate()
        .map(|(i, lc)| lc - (2 * i + 1) as f64 * lz)
        .collect())
}

/// Scans `|term(n, z)|` for `n = 1..=n_scan` and reports the first local minimum.
pub fn optimal_truncation(z: f64, n_scan: usize) -> Result<TruncationReport> {
    if !z.is_finite() || z < 1.0 {
        return Err(Error::domain(format!("optimal truncation needs z ≥ 1, got {z}")));
    }
    let mags = term_magnitudes(z, n_scan)?;
    let n_opt = mags
        .windows(2)
        .position(|w| w[1] >= w[0])
        .map(|i| i + 1)
        .ok_or(Error::ScanExhausted { z, n_scan })?;
    let l = mags[n_opt - 1];
    Ok(TruncationReport {
        z,
        n_opt,
        min_term: 10f64.powf(l),
        est_digits: -l,
    })
}

/// How to evaluate lnΓ at `z` to `digits`: shift by `shift`, then sum the
/// first `terms` Stirling terms (the next one is below `10^-(digits+2)`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OraclePlan {
    pub shift: usize,
    pub terms: usize,
}

/// Chooses the smallest integer shift for which the Stirling terms at `z + shift`
/// drop below `10^-(digits+2)` before they start growing.
pub fn oracle_plan(z: f64, digits: usize) -> Result<OraclePlan> {
    let table = BernoulliTable::global();
    if digits > table.max_digits() {
        return Err(Error::Capacity {
            what: format!("{digits} digits requested from the Stirling oracle"),
            max_digits: table.max_digits(),
        });
    }
    let threshold = -((digits + 2) as f64);
    // shift that brings the optimal-truncation accuracy near the target
    let z_needed = (digits + 2) as f64 / (std::f64::consts::PI * DIGITS_PER_TERM);
    let mut shift = if z < 1.0 { (1.0 - z).ceil() as usize } else { 0 };
    if z + (shift as f64) < z_needed - 2.0 {
        shift = (z_needed - 2.0 - z).floor().max(shift as f64) as usize;
    }
    // at most ~πz terms are useful; keep requests inside the table
    loop {
        let a = z + shift as f64;
        let count = ((std::f64::consts::PI * a).ceil() as usize + 4).min(table.n_max());
        let mags = term_magnitudes(a, count)?;
        let mut prev = f64::INFINITY;
        for (i, &l) in mags.iter().enumerate() {
            if l < threshold {
                return Ok(OraclePlan {
                    shift,
                    terms: i,
                });
            }
            if l >= prev {
                break;
            }
            prev = l;
        }
        shift += 1;
    }
}

fn half(bits: usize) -> Real {
    mp::one(bits) / mp::int(2, bits)
}

/// `(z - ½)·ln z - z`, the non-constant part of the Stirling prefix.
fn prefix_variable(z: &Real, bits: usize) -> Real {
    let z = mp::at(z, bits);
    (&z - half(bits)) * z.ln() - z
}

/// `½·ln(2π)`.
pub fn ln_sqrt_2pi(bits: usize) -> Real {
    (mp::pi(bits) * mp::int(2, bits)).ln() * half(bits)
}

/// `½·ln(2π) + (z - ½)·ln z - z`.
pub fn stirling_prefix(z: &Real, bits: usize) -> Real {
    ln_sqrt_2pi(bits) + prefix_variable(z, bits)
}

fn oracle_bits(z: &Real, digits: usize) -> Result<usize> {
    if digits == 0 {
        return Err(Error::invalid("oracle digits must be positive"));
    }
    if !mp::is_finite(z) || mp::is_zero(z) || mp::is_negative(z) {
        return Err(Error::domain(format!(
            "lnΓ oracle needs z > 0, got {}",
            mp::format_sci(z, 10)
        )));
    }
    let zf = mp::to_f64(z).max(1.0);
    let magnitude = (zf * zf.ln().max(1.0)).log10().max(0.0).ceil() as usize;
    Ok(mp::bits_for_digits(digits + 12 + magnitude).max(z.precision()))
}

fn stirling_sum(a: &Real, terms: usize, bits: usize) -> Result<Real> {
    let coeffs = coefficient_reals(terms, bits)?;
    let inv = mp::one(bits) / a;
    let inv2 = &inv * &inv;
    let mut pow = inv;
    let mut sum = mp::zero(bits);
    for c in &coeffs {
        sum += c * &pow;
        pow = &pow * &inv2;
    }
    Ok(sum)
}

/// `lnΓ(z) - stirling_prefix(z)` to `digits` decimal digits, for `z > 0`.
///
/// For large `z` this is the Stirling sum itself and keeps full relative
/// accuracy even where `lnΓ(z)` is huge.
pub fn lngamma_correction(z: &Real, digits: usize) -> Result<Real> {
    let bits = oracle_bits(z, digits)?;
    let z = mp::at(z, bits);
    let plan = oracle_plan(mp::to_f64(&z), digits)?;
    if plan.shift == 0 {
        return stirling_sum(&z, plan.terms, bits);
    }
    let a = &z + mp::uint(plan.shift as u64, bits);
    let mut product = z.clone();
    for i in 1..plan.shift {
        product *= &z + mp::uint(i as u64, bits);
    }
    Ok(stirling_sum(&a, plan.terms, bits)? + prefix_variable(&a, bits)
        - prefix_variable(&z, bits)
        - product.ln())
}

/// `lnΓ(z)` to `digits` decimal digits for real `z > 0`.
pub fn lngamma_oracle(z: &Real, digits: usize) -> Result<Real> {
    let bits = oracle_bits(z, digits)?;
    let corr = lngamma_correction(z, digits)?;
    Ok(stirling_prefix(z, bits) + corr)
}
