//! Reference values for ψ and the polygamma functions, independent of the
//! Chebyshev tables.
//!
//! `ψ⁽ᵐ⁾(z) = (-1)^{m+1} m! Σ_{k≥0} (z+k)^{-(m+1)}` for `m ≥ 1` is summed
//! directly for the first `K` terms and the remainder is closed with the
//! Euler–Maclaurin formula. `ψ(z)` uses the same shift with its asymptotic
//! expansion `ln a - 1/(2a) - Σ B_{2j}/(2j·a^{2j})`.

use dashu_int::IBig;

use crate::error::{Error, Result};
use crate::mp::{self, Real};
use crate::stirling::bernoulli;

fn check_arg(z: &Real) -> Result<()> {
    if !mp::is_finite(z) || mp::is_zero(z) || mp::is_negative(z) {
        return Err(Error::domain("polygamma reference needs z > 0"));
    }
    Ok(())
}

/// Shift so that the asymptotic tail at `z + K` converges to `digits`.
fn shift_for(z: f64, digits: usize, order: u32) -> usize {
    let want = digits as f64 * 0.5 + order as f64 + 4.0;
    if z >= want {
        0
    } else {
        (want - z).ceil() as usize
    }
}

/// `Σ_{k≥0} (z+k)^{-(m+1)}` for `m ≥ 1`.
pub fn hurwitz_sum(m: u32, z: &Real, digits: usize) -> Result<Real> {
    if m == 0 {
        return Err(Error::invalid("hurwitz_sum needs m ≥ 1"));
    }
    check_arg(z)?;
    let bits = mp::bits_for_digits(digits + 10).max(z.precision());
    let z = mp::at(z, bits);
    let shift = shift_for(mp::to_f64(&z), digits, m);
    let power = IBig::from(m + 1);
    let mut sum = mp::zero(bits);
    for k in 0..shift {
        let t = &z + mp::uint(k as u64, bits);
        sum += mp::one(bits) / t.powi(power.clone());
    }
    let a = &z + mp::uint(shift as u64, bits);
    let inv = mp::one(bits) / &a;
    let inv_pow_m = inv.powi(IBig::from(m));
    // ∫ + ½f(a)
    sum += &inv_pow_m / mp::uint(m as u64, bits);
    sum += &inv_pow_m * &inv / mp::int(2, bits);
    // Σ_j B_{2j}/(2j)! · (m+1)(m+2)…(m+2j-1) · a^{-(m+2j)}
    let threshold = mp::one(bits) / mp::uint(10, bits).powi(IBig::from(digits + 4));
    let inv2 = &inv * &inv;
    let mut pow = &inv_pow_m * &inv2;
    let mut rising = mp::uint(m as u64 + 1, bits); // (m+1)_{2j-1} for j = 1
    let mut fact = mp::int(2, bits); // (2j)!
    for j in 1..=400usize {
        let b = mp::from_ratio(&bernoulli(2 * j)?, bits);
        let term = b * &rising / &fact * &pow;
        let small = mp::abs(&term) < threshold;
        sum += term;
        if small {
            return Ok(sum);
        }
        let (p, q) = (m as u64 + 2 * j as u64, m as u64 + 2 * j as u64 + 1);
        rising = rising * mp::uint(p, bits) * mp::uint(q, bits);
        fact = fact * mp::uint((2 * j + 1) as u64, bits) * mp::uint((2 * j + 2) as u64, bits);
        pow = &pow * &inv2;
    }
    Err(Error::Capacity {
        what: "Euler–Maclaurin tail did not converge".into(),
        max_digits: digits.saturating_sub(1),
    })
}

/// `ψ(z)` for `z > 0`.
pub fn digamma(z: &Real, digits: usize) -> Result<Real> {
    check_arg(z)?;
    let bits = mp::bits_for_digits(digits + 10).max(z.precision());
    let z = mp::at(z, bits);
    let shift = shift_for(mp::to_f64(&z), digits, 0);
    let mut sum = mp::zero(bits);
    for k in 0..shift {
        sum += mp::one(bits) / (&z + mp::uint(k as u64, bits));
    }
    let a = &z + mp::uint(shift as u64, bits);
    let inv = mp::one(bits) / &a;
    let inv2 = &inv * &inv;
    let mut value = a.ln() - &inv / mp::int(2, bits);
    let threshold = mp::one(bits) / mp::uint(10, bits).powi(IBig::from(digits + 4));
    let mut pow = inv2.clone();
    for j in 1..=400usize {
        let b = mp::from_ratio(&bernoulli(2 * j)?, bits);
        let term = b / mp::uint(2 * j as u64, bits) * &pow;
        let small = mp::abs(&term) < threshold;
        value -= term;
        if small {
            return Ok(value - sum);
        }
        pow = &pow * &inv2;
    }
    Err(Error::Capacity {
        what: "digamma asymptotic series did not converge".into(),
        max_digits: digits.saturating_sub(1),
    })
}

/// `ψ⁽ᵐ⁾(z)`; `m = 0` is the digamma function.
pub fn polygamma(m: u32, z: &Real, digits: usize) -> Result<Real> {
    if m == 0 {
        return digamma(z, digits);
    }
    let s = hurwitz_sum(m, z, digits)?;
    let bits = s.precision();
    let fact = (1..=m as u64).fold(mp::one(bits), |acc, k| acc * mp::uint(k, bits));
    let v = s * fact;
    Ok(if m % 2 == 1 { v } else { -v })
}
