//! Multiprecision helpers over a binary big float.
//!
//! Every value carries its own precision in bits. Callers think in decimal
//! digits; [`bits_for_digits`] converts between the two with a few guard bits.
//! Decimal text is the only serialized form.

use std::str::FromStr;
use std::sync::RwLock;

use dashu_base::{Abs, BitTest, Sign, UnsignedAbs};
use dashu_float::round::mode::HalfEven;
use dashu_float::FBig;
use dashu_int::{IBig, UBig};
use dashu_ratio::RBig;

/// Working real type: binary significand, round-half-even.
pub type Real = FBig<HalfEven, 2>;

type Decimal = FBig<HalfEven, 10>;

const LOG2_10: f64 = std::f64::consts::LOG2_10;

/// Number of significand bits needed to carry `digits` decimal digits.
pub fn bits_for_digits(digits: usize) -> usize {
    (digits as f64 * LOG2_10).ceil() as usize + 8
}

/// Decimal digits represented by a precision of `bits`.
pub fn digits_for_bits(bits: usize) -> usize {
    (bits.saturating_sub(8) as f64 / LOG2_10).floor() as usize
}

pub fn int(v: i64, bits: usize) -> Real {
    Real::from(v).with_precision(bits).value()
}

pub fn uint(v: u64, bits: usize) -> Real {
    Real::from(v).with_precision(bits).value()
}

pub fn zero(bits: usize) -> Real {
    int(0, bits)
}

pub fn one(bits: usize) -> Real {
    int(1, bits)
}

/// Exact conversion of an `f64`, then widened to `bits`.
pub fn from_f64(v: f64, bits: usize) -> Real {
    let exact = Real::try_from(v).unwrap_or_else(|_| panic!("non-finite f64 {v}"));
    exact.with_precision(bits.max(53)).value()
}

pub fn from_ibig(v: IBig, bits: usize) -> Real {
    Real::from(v).with_precision(bits).value()
}

pub fn from_ratio(r: &RBig, bits: usize) -> Real {
    let num = Real::from(r.numerator().clone()).with_precision(bits).value();
    let den = Real::from(UBig::clone(r.denominator()))
        .with_precision(bits)
        .value();
    num / den
}

pub fn to_f64(x: &Real) -> f64 {
    x.to_f64().value()
}

pub fn is_zero(x: &Real) -> bool {
    x.repr().significand() == &IBig::ZERO
}

pub fn is_finite(x: &Real) -> bool {
    x.repr().is_finite()
}

pub fn is_negative(x: &Real) -> bool {
    !is_zero(x) && x.sign() == Sign::Negative
}

pub fn abs(x: &Real) -> Real {
    x.clone().abs()
}

/// `x` rounded (or widened) to `bits` of precision.
pub fn at(x: &Real, bits: usize) -> Real {
    x.clone().with_precision(bits).value()
}

/// Base-10 logarithm of `|x|` as an `f64`, valid far outside the `f64` range.
pub fn log10_abs(x: &Real) -> f64 {
    if is_zero(x) {
        return f64::NEG_INFINITY;
    }
    let (sig, exp) = (x.repr().significand(), x.repr().exponent());
    log10_ibig(sig) + exp as f64 * std::f64::consts::LOG10_2
}

/// Base-10 logarithm of `|v|` for an arbitrary-size integer.
pub fn log10_ibig(v: &IBig) -> f64 {
    let mag = v.unsigned_abs();
    let bits = mag.bit_len();
    if bits <= 64 {
        return (u64::try_from(&mag).unwrap_or(u64::MAX) as f64).log10();
    }
    let shift = bits - 64;
    let top = u64::try_from(&(mag >> shift)).unwrap_or(u64::MAX) as f64;
    top.log10() + shift as f64 * std::f64::consts::LOG10_2
}

static PI_CACHE: RwLock<Option<Real>> = RwLock::new(None);

/// π to `bits` of precision.
pub fn pi(bits: usize) -> Real {
    if let Some(p) = PI_CACHE.read().unwrap().as_ref() {
        if p.precision() >= bits {
            return at(p, bits);
        }
    }
    let p = one(bits + 32).context().pi::<2>(None).value();
    let out = at(&p, bits);
    *PI_CACHE.write().unwrap() = Some(p);
    out
}

/// `cos(kπ/m)`; exact at multiples of π/2.
pub fn cos_pi_ratio(k: usize, m: usize, bits: usize) -> Real {
    assert!(m > 0);
    let period = 2 * m;
    let mut k = k % period;
    if k > m {
        k = period - k;
    }
    // k in [0, m] now; cos(kπ/m) = -cos((m-k)π/m)
    if k == 0 {
        return one(bits);
    }
    if k == m {
        return int(-1, bits);
    }
    if 2 * k == m {
        return zero(bits);
    }
    if 2 * k > m {
        return -cos_pi_ratio(m - k, m, bits);
    }
    let arg = uint(k as u64, bits + 16) / uint(m as u64, bits + 16);
    at(&arg.cos_pi(), bits)
}

/// Parses a decimal numeral (`-1.25`, `+4.5e-31`) into a binary value of `bits` precision.
pub fn parse_decimal(s: &str, bits: usize) -> Option<Real> {
    let s = s.trim();
    let body = s.strip_prefix('+').unwrap_or(s);
    if body.is_empty() || body.starts_with('+') || body.starts_with("--") {
        return None;
    }
    if !body
        .chars()
        .all(|c| c.is_ascii_digit() || matches!(c, '.' | '-' | '+' | 'e' | 'E'))
    {
        return None;
    }
    let d = Decimal::from_str(body).ok()?;
    if is_dec_zero(&d) {
        return Some(zero(bits));
    }
    Some(d.with_base_and_precision::<2>(bits).value())
}

fn is_dec_zero(d: &Decimal) -> bool {
    d.repr().significand() == &IBig::ZERO
}

/// Decimal digits of `|x|` rounded to `sig` significant digits, and the
/// decimal exponent of the leading digit.
fn decimal_digits(x: &Real, sig: usize) -> (bool, String, isize) {
    let sig = sig.max(1);
    let neg = is_negative(x);
    if is_zero(x) {
        return (false, "0".repeat(sig), 0);
    }
    let d: Decimal = x.clone().abs().with_base_and_precision::<10>(sig).value();
    let (mant, exp) = (d.repr().significand().clone(), d.repr().exponent());
    let mut digits = mant.unsigned_abs().to_string();
    let len = digits.len() as isize;
    let lead_exp = exp + len - 1;
    if digits.len() < sig {
        digits.push_str(&"0".repeat(sig - digits.len()));
    }
    (neg, digits, lead_exp)
}

/// Scientific notation with an explicit sign and exactly `sig` significant digits,
/// e.g. `+4.5478000e-31`.
pub fn format_sci(x: &Real, sig: usize) -> String {
    let (neg, digits, exp) = decimal_digits(x, sig);
    let sign = if neg { '-' } else { '+' };
    let (head, tail) = digits.split_at(1);
    if tail.is_empty() {
        format!("{sign}{head}e{exp}")
    } else {
        format!("{sign}{head}.{tail}e{exp}")
    }
}

/// Positional notation with `sig` significant digits when the exponent is
/// moderate, falling back to scientific otherwise. Negative values carry `-`.
pub fn format_decimal(x: &Real, sig: usize) -> String {
    let (neg, digits, exp) = decimal_digits(x, sig);
    if !(-8..=40).contains(&exp) {
        let s = format_sci(x, sig);
        return s.strip_prefix('+').map(str::to_string).unwrap_or(s);
    }
    let sign = if neg { "-" } else { "" };
    if exp < 0 {
        let zeros = "0".repeat((-exp - 1) as usize);
        return format!("{sign}0.{zeros}{digits}");
    }
    let int_len = exp as usize + 1;
    if digits.len() <= int_len {
        let pad = "0".repeat(int_len - digits.len());
        format!("{sign}{digits}{pad}")
    } else {
        let (i, f) = digits.split_at(int_len);
        format!("{sign}{i}.{f}")
    }
}

/// `x` rounded to `sig` significant decimal digits.
pub fn round_sig(x: &Real, sig: usize) -> Real {
    if is_zero(x) {
        return x.clone();
    }
    let d: Decimal = x.clone().with_base_and_precision::<10>(sig.max(1)).value();
    d.with_base_and_precision::<2>(x.precision().max(bits_for_digits(sig)))
        .value()
}

/// Short scientific form for error magnitudes in reports.
pub fn format_short(x: f64) -> String {
    format!("{x:.6e}")
}
