//! Shifted-Chebyshev series algebra on `[0, 1]`.
//!
//! A series stores coefficients `a*_0 .. a*_n` and represents
//! `½a*_0 + Σ_{r≥1} a*_r T*_r(x)` with `T*_r(x) = T_r(2x - 1)`.
//! Series over `z ∈ [1, ∞)` use the [`ArgMap::InverseZ`] mapping `x = 1/z`.

use dashu_int::IBig;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::mp::{self, Real};

/// How the series argument `x ∈ [0, 1]` relates to the user variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ArgMap {
    /// `x` is the variable itself.
    Direct,
    /// `x = 1/z` for `z ∈ [1, ∞)`; `x = 0` is the point at infinity.
    InverseZ,
}

/// Precision settings for coefficient generation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrecisionContext {
    /// Decimal digits carried by all internal arithmetic.
    pub work_digits: usize,
    /// Digits the emitted table must be good to.
    pub target_digits: usize,
    /// Number of node intervals `m`; the fit samples `m + 1` nodes.
    pub node_count_m: usize,
}

/// Minimum number of guard digits between working and target precision.
pub const GUARD_DIGITS: usize = 8;

/// Default guard used when a context is derived from a target.
pub const DEFAULT_EXTRA_DIGITS: usize = 10;

impl PrecisionContext {
    pub fn new(work_digits: usize, target_digits: usize, node_count_m: usize) -> Result<Self> {
        if target_digits == 0 || node_count_m == 0 {
            return Err(Error::invalid("target digits and node count must be positive"));
        }
        if work_digits < target_digits + GUARD_DIGITS {
            return Err(Error::invalid(format!(
                "work digits {work_digits} must exceed target digits {target_digits} by at least {GUARD_DIGITS}"
            )));
        }
        Ok(PrecisionContext {
            work_digits,
            target_digits,
            node_count_m,
        })
    }

    /// Context for fitting `n_coeffs` coefficients to `target_digits`:
    /// `target + 10` working digits and `m = 2·n_coeffs` node intervals.
    pub fn for_coefficients(target_digits: usize, n_coeffs: usize) -> Result<Self> {
        Self::new(
            target_digits + DEFAULT_EXTRA_DIGITS,
            target_digits,
            2 * n_coeffs.max(1),
        )
    }

    /// Working precision in bits.
    pub fn bits(&self) -> usize {
        mp::bits_for_digits(self.work_digits)
    }

    /// Checks `node_count_m ≥ 2·n_coeffs`.
    pub fn check_coefficients(&self, n_coeffs: usize) -> Result<()> {
        if self.node_count_m < 2 * n_coeffs {
            return Err(Error::invalid(format!(
                "node count m = {} is less than twice the {} requested coefficients",
                self.node_count_m, n_coeffs
            )));
        }
        Ok(())
    }
}

/// A shifted-Chebyshev series in the half-`a*_0` convention.
#[derive(Debug, Clone, PartialEq)]
pub struct ChebSeries {
    coeffs: Vec<Real>,
    arg_map: ArgMap,
    precision_digits: usize,
}

impl ChebSeries {
    pub fn new(coeffs: Vec<Real>, arg_map: ArgMap, precision_digits: usize) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::invalid("a series needs at least one coefficient"));
        }
        if precision_digits == 0 {
            return Err(Error::invalid("precision must be positive"));
        }
        if let Some(r) = coeffs.iter().position(|c| !mp::is_finite(c)) {
            return Err(Error::invalid(format!("coefficient {r} is not finite")));
        }
        let bits = mp::bits_for_digits(precision_digits);
        let coeffs = coeffs.iter().map(|c| mp::at(c, bits)).collect();
        Ok(ChebSeries {
            coeffs,
            arg_map,
            precision_digits,
        })
    }

    pub fn from_f64s(coeffs: &[f64], arg_map: ArgMap, precision_digits: usize) -> Result<Self> {
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::invalid("coefficients must be finite"));
        }
        let bits = mp::bits_for_digits(precision_digits);
        let coeffs = coeffs.iter().map(|&c| mp::from_f64(c, bits)).collect();
        Self::new(coeffs, arg_map, precision_digits)
    }

    /// The series for a single basis polynomial `T*_r`.
    pub fn unit(r: usize, arg_map: ArgMap, precision_digits: usize) -> Self {
        let bits = mp::bits_for_digits(precision_digits);
        let mut coeffs = vec![mp::zero(bits); r + 1];
        // ½a*_0 convention: the constant T*_0 needs a*_0 = 2
        coeffs[r] = if r == 0 { mp::int(2, bits) } else { mp::one(bits) };
        ChebSeries {
            coeffs,
            arg_map,
            precision_digits,
        }
    }

    pub fn coeffs(&self) -> &[Real] {
        &self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn arg_map(&self) -> ArgMap {
        self.arg_map
    }

    pub fn precision_digits(&self) -> usize {
        self.precision_digits
    }

    pub fn bits(&self) -> usize {
        mp::bits_for_digits(self.precision_digits)
    }

    /// The first `n` coefficients (at least one).
    pub fn leading(&self, n: usize) -> ChebSeries {
        let n = n.clamp(1, self.coeffs.len());
        ChebSeries {
            coeffs: self.coeffs[..n].to_vec(),
            ..self.clone()
        }
    }

    /// `Σ_{r≥n} |a*_r|`, the sup-norm bound on what dropping those terms changes.
    pub fn tail_sum(&self, n: usize) -> Real {
        let bits = self.bits();
        self.coeffs
            .iter()
            .skip(n)
            .fold(mp::zero(bits), |acc, c| acc + mp::abs(c))
    }

    pub fn with_arg_map(mut self, arg_map: ArgMap) -> Self {
        self.arg_map = arg_map;
        self
    }

    /// Coefficient-wise sum; the shorter series is zero-padded.
    pub fn add(&self, other: &ChebSeries) -> Result<ChebSeries> {
        check_compatible(self, other)?;
        let bits = self.bits().max(other.bits());
        let n = self.len().max(other.len());
        let coeffs = (0..n)
            .map(|r| {
                let a = self.coeffs.get(r).cloned().unwrap_or_else(|| mp::zero(bits));
                let b = other.coeffs.get(r).cloned().unwrap_or_else(|| mp::zero(bits));
                a + b
            })
            .collect();
        ChebSeries::new(
            coeffs,
            self.arg_map,
            self.precision_digits.max(other.precision_digits),
        )
    }

    pub fn scale(&self, factor: &Real) -> ChebSeries {
        ChebSeries {
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
            ..self.clone()
        }
    }

    /// Adds `delta` to coefficient `r`, growing the series if needed.
    pub fn adjust(&mut self, r: usize, delta: &Real) {
        let bits = self.bits();
        while self.coeffs.len() <= r {
            self.coeffs.push(mp::zero(bits));
        }
        self.coeffs[r] = &self.coeffs[r] + delta;
    }

    pub fn to_f64_coeffs(&self) -> Vec<f64> {
        self.coeffs.iter().map(mp::to_f64).collect()
    }

    /// Evaluates at `x ∈ [0, 1]`.
    pub fn eval(&self, x: &Real) -> Result<Real> {
        clenshaw_eval(self, x)
    }

    /// Evaluates at the user variable: `x = z` for direct series, `x = 1/z` otherwise.
    pub fn eval_at(&self, z: &Real) -> Result<Real> {
        match self.arg_map {
            ArgMap::Direct => clenshaw_eval(self, z),
            ArgMap::InverseZ => {
                if mp::is_negative(z) || mp::is_zero(z) {
                    return Err(Error::domain("inverse-z series need z ≥ 1"));
                }
                let bits = self.bits().max(z.precision());
                clenshaw_eval(self, &(mp::one(bits) / z))
            }
        }
    }
}

fn check_compatible(a: &ChebSeries, b: &ChebSeries) -> Result<()> {
    if a.arg_map != b.arg_map {
        return Err(Error::invalid(format!(
            "argument maps differ: {:?} vs {:?}",
            a.arg_map, b.arg_map
        )));
    }
    Ok(())
}

/// Abscissae `x_j = cos²(jπ/2m)`, `j = 0..=m`, from `1` down to `0`.
pub fn nodes(m: usize, ctx: &PrecisionContext) -> Result<Vec<Real>> {
    if m == 0 {
        return Err(Error::invalid("node count m must be at least 1"));
    }
    let bits = ctx.bits();
    Ok(node_values(m, bits))
}

fn node_values(m: usize, bits: usize) -> Vec<Real> {
    let half = mp::one(bits) / mp::int(2, bits);
    (0..=m)
        .map(|j| {
            if j == 0 {
                mp::one(bits)
            } else if j == m {
                mp::zero(bits)
            } else {
                // cos²(θ/2) = (1 + cos θ)/2
                (mp::one(bits) + mp::cos_pi_ratio(j, m, bits)) * &half
            }
        })
        .collect()
}

/// Fits `n_coeffs` coefficients from samples at the `m + 1` nodes:
/// `a*_r = (2/m) Σ''_{j} f(x_j) cos(rjπ/m)`, end terms halved.
pub fn fit<F>(
    f: F,
    m: usize,
    n_coeffs: usize,
    arg_map: ArgMap,
    ctx: &PrecisionContext,
) -> Result<ChebSeries>
where
    F: Fn(&Real) -> Result<Real> + Sync,
{
    if m == 0 || n_coeffs == 0 {
        return Err(Error::invalid("m and n_coeffs must be positive"));
    }
    if n_coeffs > m {
        return Err(Error::invalid(format!(
            "cannot fit {n_coeffs} coefficients from m = {m}"
        )));
    }
    let bits = ctx.bits();
    let xs = node_values(m, bits);
    let samples: Vec<Real> = xs
        .par_iter()
        .enumerate()
        .map(|(j, x)| {
            let v = f(x).map_err(|e| Error::FitFailure {
                node: j,
                x: mp::format_sci(x, 12),
                reason: e.to_string(),
            })?;
            if !mp::is_finite(&v) {
                return Err(Error::FitFailure {
                    node: j,
                    x: mp::format_sci(x, 12),
                    reason: "sample is not finite".into(),
                });
            }
            Ok(mp::at(&v, bits))
        })
        .collect::<Result<_>>()?;

    let cosines: Vec<Real> = (0..=m).map(|k| mp::cos_pi_ratio(k, m, bits)).collect();
    let half = mp::one(bits) / mp::int(2, bits);
    let weighted: Vec<Real> = samples
        .iter()
        .enumerate()
        .map(|(j, v)| if j == 0 || j == m { v * &half } else { v.clone() })
        .collect();
    let scale = mp::int(2, bits) / mp::uint(m as u64, bits);
    let period = 2 * m;
    let coeffs: Vec<Real> = (0..n_coeffs)
        .into_par_iter()
        .map(|r| {
            let mut acc = mp::zero(bits);
            for (j, w) in weighted.iter().enumerate() {
                let mut k = (r * j) % period;
                if k > m {
                    k = period - k;
                }
                acc += w * &cosines[k];
            }
            acc * &scale
        })
        .collect();
    ChebSeries::new(coeffs, arg_map, ctx.work_digits)
}

/// Clenshaw evaluation: `b_r = 2(2x-1)·b_{r+1} - b_{r+2} + a*_r`, result `½(b_0 - b_2)`.
pub fn clenshaw_eval(s: &ChebSeries, x: &Real) -> Result<Real> {
    let bits = s.bits().max(x.precision());
    let zero = mp::zero(bits);
    if mp::is_negative(x) || *x > mp::one(bits) {
        return Err(Error::domain(format!(
            "x = {} is outside [0, 1]",
            mp::format_sci(x, 10)
        )));
    }
    let x = mp::at(x, bits);
    let y2 = (mp::int(4, bits) * &x) - mp::int(2, bits);
    let (mut b1, mut b2) = (zero.clone(), zero.clone());
    let mut last_b2 = zero;
    for (r, a) in s.coeffs.iter().enumerate().rev() {
        let b0 = &y2 * &b1 - &b2 + a;
        if r == 0 {
            last_b2 = b2.clone();
        }
        b2 = b1;
        b1 = b0;
    }
    Ok((b1 - last_b2) / mp::int(2, bits))
}

/// Hardware-float Clenshaw evaluation of half-`a*_0` coefficients at `x ∈ [0, 1]`.
pub fn clenshaw_eval_f64(coeffs: &[f64], x: f64) -> f64 {
    let y2 = 4.0 * x - 2.0;
    let (mut b1, mut b2) = (0.0_f64, 0.0_f64);
    let mut last_b2 = 0.0;
    for (r, &a) in coeffs.iter().enumerate().rev() {
        let b0 = y2 * b1 - b2 + a;
        if r == 0 {
            last_b2 = b2;
        }
        b2 = b1;
        b1 = b0;
    }
    0.5 * (b1 - last_b2)
}

fn derivative_coeffs(a: &[Real], bits: usize) -> Vec<Real> {
    let n = a.len() - 1;
    if n == 0 {
        return vec![mp::zero(bits)];
    }
    let mut d = vec![mp::zero(bits); n + 2];
    for r in (1..=n).rev() {
        d[r - 1] = &d[r + 1] + mp::uint(4 * r as u64, bits) * &a[r];
    }
    d.truncate(n);
    d
}

/// Derivative in `x` of a direct series: `a*'_{r-1} = a*'_{r+1} + 4r·a*_r`.
pub fn differentiate(s: &ChebSeries) -> Result<ChebSeries> {
    if s.arg_map != ArgMap::Direct {
        return Err(Error::invalid(
            "differentiate expects a direct series; use differentiate_inverse_arg",
        ));
    }
    let coeffs = derivative_coeffs(&s.coeffs, s.bits());
    ChebSeries::new(coeffs, ArgMap::Direct, s.precision_digits)
}

/// The series `-x² = -(⅜T*_0 + ½T*_1 + ⅛T*_2)` in half-`a*_0` form.
pub fn minus_x_squared(arg_map: ArgMap, precision_digits: usize) -> ChebSeries {
    let bits = mp::bits_for_digits(precision_digits);
    let eighth = |k: i64| mp::int(k, bits) / mp::int(8, bits);
    ChebSeries {
        coeffs: vec![eighth(-6), eighth(-4), eighth(-1)],
        arg_map,
        precision_digits,
    }
}

/// For `g(z) = f(1/z)` returns the inverse-z series of `g'(z) = -x²·f'(x)`.
pub fn differentiate_inverse_arg(s: &ChebSeries) -> Result<ChebSeries> {
    if s.arg_map != ArgMap::InverseZ {
        return Err(Error::invalid("differentiate_inverse_arg expects an inverse-z series"));
    }
    let d = ChebSeries::new(
        derivative_coeffs(&s.coeffs, s.bits()),
        ArgMap::InverseZ,
        s.precision_digits,
    )?;
    multiply(&d, &minus_x_squared(ArgMap::InverseZ, s.precision_digits))
}

/// Product via `T*_m·T*_n = ½(T*_{m+n} + T*_{|m-n|})`.
pub fn multiply(s1: &ChebSeries, s2: &ChebSeries) -> Result<ChebSeries> {
    check_compatible(s1, s2)?;
    let digits = s1.precision_digits.min(s2.precision_digits);
    let bits = mp::bits_for_digits(digits).max(s1.bits()).max(s2.bits());
    let half = mp::one(bits) / mp::int(2, bits);
    let full = |s: &ChebSeries| -> Vec<Real> {
        let mut v: Vec<Real> = s.coeffs.iter().map(|c| mp::at(c, bits)).collect();
        v[0] = &v[0] * &half;
        v
    };
    let (a, b) = (full(s1), full(s2));
    let mut c = vec![mp::zero(bits); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if mp::is_zero(ai) {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            let p = ai * bj * &half;
            c[i + j] += &p;
            c[i.abs_diff(j)] += p;
        }
    }
    c[0] = &c[0] * mp::int(2, bits);
    ChebSeries::new(c, s1.arg_map, digits)
}

/// Integer power-basis coefficients of `T*_0 .. T*_n`.
pub fn shifted_chebyshev_polynomials(n: usize) -> Vec<Vec<IBig>> {
    let mut t: Vec<Vec<IBig>> = vec![vec![IBig::ONE]];
    if n >= 1 {
        t.push(vec![IBig::from(-1), IBig::from(2)]);
    }
    for r in 1..n {
        // T*_{r+1} = (4x - 2)·T*_r - T*_{r-1}
        let mut next = vec![IBig::ZERO; r + 2];
        for (i, c) in t[r].iter().enumerate() {
            next[i + 1] += c * 4;
            next[i] -= c * 2;
        }
        for (i, c) in t[r - 1].iter().enumerate() {
            next[i] -= c;
        }
        t.push(next);
    }
    t
}

/// Power coefficients `c_0..c_n` with `Σ c_i xⁱ` equal to the series.
pub fn to_power_basis(s: &ChebSeries) -> Vec<Real> {
    let bits = s.bits();
    let polys = shifted_chebyshev_polynomials(s.degree());
    let mut out = vec![mp::zero(bits); s.len()];
    for (r, (a, poly)) in s.coeffs.iter().zip(&polys).enumerate() {
        let w = if r == 0 { a / mp::int(2, bits) } else { a.clone() };
        for (i, t) in poly.iter().enumerate() {
            out[i] += &w * mp::from_ibig(t.clone(), bits);
        }
    }
    out
}

/// Drops the longest trailing run whose absolute sum is strictly below `tol`.
pub fn truncate(s: &ChebSeries, tol: f64) -> Result<ChebSeries> {
    if !tol.is_finite() || tol <= 0.0 {
        return Err(Error::invalid("truncation tolerance must be positive"));
    }
    let bits = s.bits();
    let tol = mp::from_f64(tol, bits);
    let mut tail = mp::zero(bits);
    let mut keep = s.len();
    for r in (1..s.len()).rev() {
        tail += mp::abs(&s.coeffs[r]);
        if tail < tol {
            keep = r;
        } else {
            break;
        }
    }
    Ok(s.leading(keep))
}

#[cfg(test)]
mod tests {
    use super::*;

    const DIGITS: usize = 40;

    fn ctx() -> PrecisionContext {
        PrecisionContext::new(DIGITS, 30, 16).unwrap()
    }

    fn real(v: f64) -> Real {
        mp::from_f64(v, mp::bits_for_digits(DIGITS))
    }

    fn f(v: &Real) -> f64 {
        mp::to_f64(v)
    }

    fn series(c: &[f64]) -> ChebSeries {
        ChebSeries::from_f64s(c, ArgMap::Direct, DIGITS).unwrap()
    }

    fn assert_coeffs(s: &ChebSeries, want: &[f64], tol: f64) {
        for (r, c) in s.coeffs().iter().enumerate() {
            let w = want.get(r).copied().unwrap_or(0.0);
            assert!((f(c) - w).abs() <= tol, "coeff {r}: {} vs {w}", f(c));
        }
    }

    #[test]
    fn precision_context_invariants() {
        assert!(PrecisionContext::new(37, 30, 10).is_err());
        assert!(PrecisionContext::new(38, 30, 10).is_ok());
        let c = PrecisionContext::for_coefficients(30, 53).unwrap();
        assert_eq!((c.work_digits, c.node_count_m), (40, 106));
        assert!(c.check_coefficients(53).is_ok());
        assert!(c.check_coefficients(54).is_err());
    }

    #[test]
    fn node_examples() {
        let c = ctx();
        let n1: Vec<f64> = nodes(1, &c).unwrap().iter().map(f).collect();
        assert_eq!(n1, vec![1.0, 0.0]);
        let n2: Vec<f64> = nodes(2, &c).unwrap().iter().map(f).collect();
        assert_eq!(n2, vec![1.0, 0.5, 0.0]);
        let n4 = nodes(4, &c).unwrap();
        let expected = (1.0 + (std::f64::consts::PI / 4.0).cos()) / 2.0;
        assert!((f(&n4[1]) - expected).abs() < 1e-15);
        assert!((f(&n4[1]) - 0.8535533906).abs() < 1e-10);
        assert!(matches!(nodes(0, &c), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn nodes_decrease_strictly() {
        let xs = nodes(37, &ctx()).unwrap();
        assert_eq!(xs.len(), 38);
        for w in xs.windows(2) {
            assert!(w[0] > w[1]);
        }
    }

    #[test]
    fn fit_examples() {
        let c = ctx();
        let bits = c.bits();
        let tol = 1e-35;
        let s = fit(|_| Ok(mp::one(bits)), 8, 8, ArgMap::Direct, &c).unwrap();
        assert_coeffs(&s, &[2.0], tol);
        let s = fit(|x| Ok(x * mp::int(2, bits) - mp::one(bits)), 8, 8, ArgMap::Direct, &c)
            .unwrap();
        assert_coeffs(&s, &[0.0, 1.0], tol);
        let s = fit(|x| Ok(x.clone()), 8, 8, ArgMap::Direct, &c).unwrap();
        assert_coeffs(&s, &[1.0, 0.5], tol);
    }

    #[test]
    fn fit_errors() {
        let c = ctx();
        assert!(matches!(
            fit(|x| Ok(x.clone()), 4, 5, ArgMap::Direct, &c),
            Err(Error::InvalidArgument(_))
        ));
        let err = fit(
            |x| {
                if mp::is_zero(x) {
                    Err(Error::domain("pole"))
                } else {
                    Ok(x.clone())
                }
            },
            6,
            3,
            ArgMap::Direct,
            &c,
        )
        .unwrap_err();
        assert!(matches!(err, Error::FitFailure { node: 6, .. }), "{err}");
    }

    #[test]
    fn clenshaw_examples() {
        let s = series(&[2.0]);
        assert_eq!(f(&clenshaw_eval(&s, &real(0.37)).unwrap()), 1.0);
        let s = series(&[0.0, 1.0]);
        assert!((f(&clenshaw_eval(&s, &real(0.3)).unwrap()) + 0.4).abs() < 1e-30);
        assert!(matches!(
            clenshaw_eval(&s, &real(1.5)),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            clenshaw_eval(&s, &real(-0.1)),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn t2_identity_holds() {
        // T*_2(x) = 8x² - 8x + 1
        let s = ChebSeries::unit(2, ArgMap::Direct, DIGITS);
        for &x in &[0.0, 0.1, 0.25, 0.5, 0.9, 1.0] {
            let want = 8.0 * x * x - 8.0 * x + 1.0;
            assert!((f(&clenshaw_eval(&s, &real(x)).unwrap()) - want).abs() < 1e-14);
            assert!((clenshaw_eval_f64(s.to_f64_coeffs().as_slice(), x) - want).abs() < 1e-14);
        }
    }

    #[test]
    fn differentiate_examples() {
        let d = differentiate(&ChebSeries::unit(1, ArgMap::Direct, DIGITS)).unwrap();
        assert_coeffs(&d, &[4.0], 0.0);
        let d = differentiate(&ChebSeries::unit(2, ArgMap::Direct, DIGITS)).unwrap();
        assert_coeffs(&d, &[0.0, 8.0], 0.0);
        let d = differentiate(&series(&[3.0])).unwrap();
        assert_coeffs(&d, &[0.0], 0.0);
        let inv = series(&[1.0, 0.5]).with_arg_map(ArgMap::InverseZ);
        assert!(differentiate(&inv).is_err());
    }

    #[test]
    fn differentiate_inverse_arg_examples() {
        // 1/z → -1/z²
        let s = series(&[1.0, 0.5]).with_arg_map(ArgMap::InverseZ);
        let d = differentiate_inverse_arg(&s).unwrap();
        assert_eq!(d.arg_map(), ArgMap::InverseZ);
        assert_coeffs(&d, &[-0.75, -0.5, -0.125], 0.0);
        let c = series(&[5.0]).with_arg_map(ArgMap::InverseZ);
        let d = differentiate_inverse_arg(&c).unwrap();
        assert!(d.coeffs().iter().all(mp::is_zero));
    }

    #[test]
    fn multiply_examples() {
        let t1 = ChebSeries::unit(1, ArgMap::Direct, DIGITS);
        let p = multiply(&t1, &t1).unwrap();
        assert_coeffs(&p, &[1.0, 0.0, 0.5], 0.0);
        let s = series(&[0.3, -1.25, 0.5, 2.0]);
        let p = multiply(&s, &series(&[2.0])).unwrap();
        assert_eq!(p.len(), 4);
        assert_coeffs(&p, &[0.3, -1.25, 0.5, 2.0], 1e-40);
        let inv = s.clone().with_arg_map(ArgMap::InverseZ);
        assert!(matches!(multiply(&s, &inv), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn power_basis_examples() {
        let p: Vec<f64> = to_power_basis(&ChebSeries::unit(2, ArgMap::Direct, DIGITS))
            .iter()
            .map(f)
            .collect();
        assert_eq!(p, vec![1.0, -8.0, 8.0]);
        let p: Vec<f64> = to_power_basis(&ChebSeries::unit(3, ArgMap::Direct, DIGITS))
            .iter()
            .map(f)
            .collect();
        assert_eq!(p, vec![-1.0, 18.0, -48.0, 32.0]);
        // x = ½T*_0 + ½T*_1 in the half-a0 convention: a*_0 = 1
        let p: Vec<f64> = to_power_basis(&series(&[1.0, 0.5])).iter().map(f).collect();
        assert_eq!(p, vec![0.0, 1.0]);
    }

    #[test]
    fn inversion_table_reproduces_monomials() {
        // 8x² = 3T*_0 + 4T*_1 + T*_2 ; 32x³ = 10T*_0 + 15T*_1 + 6T*_2 + T*_3
        let p: Vec<f64> = to_power_basis(&series(&[6.0, 4.0, 1.0])).iter().map(f).collect();
        assert_eq!(p, vec![0.0, 0.0, 8.0]);
        let p: Vec<f64> = to_power_basis(&series(&[20.0, 15.0, 6.0, 1.0]))
            .iter()
            .map(f)
            .collect();
        assert_eq!(p, vec![0.0, 0.0, 0.0, 32.0]);
    }

    #[test]
    fn truncate_examples() {
        let s = series(&[2.0, 1.0, 1e-20]);
        assert_eq!(truncate(&s, 1e-15).unwrap().len(), 2);
        let s = series(&[2.0, 1.0, 0.5]);
        assert_eq!(truncate(&s, 1e-3).unwrap().len(), 3);
        // tail sum equal to tol keeps the coefficient
        let s = series(&[2.0, 1.0, 0.25]);
        assert_eq!(truncate(&s, 0.25).unwrap().len(), 3);
        assert!(truncate(&s, 0.0).is_err());
        // never empties the series
        assert_eq!(truncate(&series(&[1e-30, 1e-30]), 1.0).unwrap().len(), 1);
    }

    #[test]
    fn series_rejects_bad_input() {
        assert!(ChebSeries::new(vec![], ArgMap::Direct, 10).is_err());
        assert!(ChebSeries::from_f64s(&[f64::NAN], ArgMap::Direct, 10).is_err());
    }

    #[test]
    fn eval_at_inverse_z() {
        // f(x) = x represents 1/z
        let s = series(&[1.0, 0.5]).with_arg_map(ArgMap::InverseZ);
        let v = s.eval_at(&real(4.0)).unwrap();
        assert!((f(&v) - 0.25).abs() < 1e-35);
        assert!(s.eval_at(&real(0.5)).is_err());
        assert!(s.eval_at(&real(0.0)).is_err());
    }
}
