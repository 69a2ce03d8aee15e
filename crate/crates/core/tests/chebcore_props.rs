use chebgamma::chebcore::{
    clenshaw_eval, clenshaw_eval_f64, differentiate, differentiate_inverse_arg, fit, multiply,
    to_power_basis, truncate, ArgMap, ChebSeries, PrecisionContext,
};
use chebgamma::mp::{self, Real};
use proptest::prelude::*;

const DIGITS: usize = 30;

fn bits() -> usize {
    mp::bits_for_digits(DIGITS)
}

fn series(c: &[f64], map: ArgMap) -> ChebSeries {
    ChebSeries::from_f64s(c, map, DIGITS).unwrap()
}

fn coeffs(max_len: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-1.0f64..1.0, 1..=max_len)
}

fn horner(p: &[Real], x: &Real) -> Real {
    p.iter().rev().fold(mp::zero(x.precision()), |acc, c| acc * x + c)
}

fn close(a: &Real, b: &Real, rel: f64) -> bool {
    let d = mp::to_f64(&mp::abs(&(a - b)));
    d <= rel * mp::to_f64(&mp::abs(b)).max(1e-20)
}

/// Plain recursive shifted Chebyshev value, `T*_r(x) = T_r(2x - 1)`.
fn basis_value(r: usize, x: f64) -> f64 {
    let t = 2.0 * x - 1.0;
    let (mut a, mut b) = (1.0, t);
    if r == 0 {
        return 1.0;
    }
    for _ in 1..r {
        (a, b) = (b, 2.0 * t * b - a);
    }
    b
}

#[test]
fn basis_polynomials_are_bounded_by_one() {
    for r in 0..=50 {
        let s = ChebSeries::unit(r, ArgMap::Direct, DIGITS);
        for i in 0..1000 {
            let x = i as f64 / 999.0;
            let v = mp::to_f64(&clenshaw_eval(&s, &mp::from_f64(x, bits())).unwrap());
            assert!(v.abs() <= 1.0 + 1e-12, "T*_{r}({x}) = {v}");
            assert!((v - basis_value(r, x)).abs() < 1e-10);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn fit_recovers_polynomials(c in coeffs(14), extra in 0usize..6) {
        let s = series(&c, ArgMap::Direct);
        let m = 2 * c.len() + extra;
        let ctx = PrecisionContext::new(DIGITS + 10, DIGITS, m).unwrap();
        let f = fit(|x| s.eval(x), m, c.len(), ArgMap::Direct, &ctx).unwrap();
        for (a, b) in f.coeffs().iter().zip(s.coeffs()) {
            prop_assert!(mp::to_f64(&mp::abs(&(a - b))) < 1e-25);
        }
    }

    #[test]
    fn clenshaw_matches_horner(c in coeffs(21), x in 0.0f64..=1.0) {
        let s = series(&c, ArgMap::Direct);
        let xr = mp::from_f64(x, bits());
        let a = clenshaw_eval(&s, &xr).unwrap();
        let b = horner(&to_power_basis(&s), &xr);
        prop_assert!(close(&a, &b, 1e-13));
        let fast = clenshaw_eval_f64(&c, x);
        let scale: f64 = c.iter().map(|v| v.abs()).sum();
        prop_assert!((fast - mp::to_f64(&b)).abs() <= 1e-13 * scale.max(1.0));
    }

    #[test]
    fn derivative_matches_central_difference(c in coeffs(16), x in 0.02f64..0.98) {
        let s = series(&c, ArgMap::Direct);
        let d = differentiate(&s).unwrap();
        let b = bits();
        let (xr, h) = (mp::from_f64(x, b), mp::from_f64(1e-8, b));
        let fd = (s.eval(&(&xr + &h)).unwrap() - s.eval(&(&xr - &h)).unwrap()) / (mp::int(2, b) * &h);
        let dv = d.eval(&xr).unwrap();
        let diff = mp::to_f64(&mp::abs(&(&dv - fd)));
        prop_assert!(diff <= 1e-6 * mp::to_f64(&mp::abs(&dv)).max(1.0));
    }

    #[test]
    fn inverse_arg_derivative_is_d_by_dz(c in coeffs(10), z in 1.05f64..40.0) {
        let s = series(&c, ArgMap::InverseZ);
        let d = differentiate_inverse_arg(&s).unwrap();
        let b = bits();
        let (zr, h) = (mp::from_f64(z, b), mp::from_f64(1e-9, b));
        let fd = (s.eval_at(&(&zr + &h)).unwrap() - s.eval_at(&(&zr - &h)).unwrap()) / (mp::int(2, b) * &h);
        let dv = d.eval_at(&zr).unwrap();
        prop_assert!(mp::to_f64(&mp::abs(&(&dv - fd))) <= 1e-6 * mp::to_f64(&mp::abs(&dv)).max(1.0));
    }

    #[test]
    fn evaluation_is_linear(a in coeffs(12), b in coeffs(12), k in -3.0f64..3.0, x in 0.0f64..=1.0) {
        let (sa, sb) = (series(&a, ArgMap::Direct), series(&b, ArgMap::Direct));
        let kr = mp::from_f64(k, bits());
        let xr = mp::from_f64(x, bits());
        let lhs = sa.scale(&kr).add(&sb).unwrap().eval(&xr).unwrap();
        let rhs = kr * sa.eval(&xr).unwrap() + sb.eval(&xr).unwrap();
        prop_assert!(mp::to_f64(&mp::abs(&(lhs - rhs))) < 1e-25);
    }

    #[test]
    fn product_is_a_homomorphism(a in coeffs(12), b in coeffs(12), x in 0.0f64..=1.0) {
        let (sa, sb) = (series(&a, ArgMap::Direct), series(&b, ArgMap::Direct));
        let xr = mp::from_f64(x, bits());
        let ab = multiply(&sa, &sb).unwrap();
        let lhs = ab.eval(&xr).unwrap();
        let rhs = sa.eval(&xr).unwrap() * sb.eval(&xr).unwrap();
        prop_assert!(close(&lhs, &rhs, 1e-13));
        let ba = multiply(&sb, &sa).unwrap();
        for (p, q) in ab.coeffs().iter().zip(ba.coeffs()) {
            prop_assert!(mp::to_f64(&mp::abs(&(p - q))) < 1e-27);
        }
    }

    #[test]
    fn truncation_error_is_bounded_by_dropped_sum(c in coeffs(20), tol in 1e-3f64..0.5, x in 0.0f64..=1.0) {
        let s = series(&c, ArgMap::Direct);
        let t = truncate(&s, tol).unwrap();
        prop_assert!(!t.is_empty() && t.len() <= s.len());
        let xr = mp::from_f64(x, bits());
        let err = mp::to_f64(&mp::abs(&(s.eval(&xr).unwrap() - t.eval(&xr).unwrap())));
        prop_assert!(err <= mp::to_f64(&s.tail_sum(t.len())) + 1e-25);
        prop_assert!(mp::to_f64(&s.tail_sum(t.len())) < tol);
    }
}
