use kcsc_core::balancing::{
    b_constant, c_constant, gluing_scales, leading_a_with, leading_coefficients, sphere_volume, AFormula, LeadingKind,
    PiRational,
};
use kcsc_core::linalg::{rat, ratio};
use kcsc_core::Rational;
use proptest::prelude::*;

#[test]
fn ricci_flat_leading_value() {
    let b = leading_coefficients(LeadingKind::RicciFlat, 3, 3, &rat(1), None).unwrap();
    assert_eq!(b, PiRational::rational(ratio(3, 4)));
    assert_eq!(b.to_string(), "3/4");
}

#[test]
fn scalar_flat_surface_value_is_pi_tagged() {
    let a = leading_coefficients(LeadingKind::ScalarFlat, 2, 2, &rat(1), Some(&rat(1))).unwrap();
    assert_eq!(a, PiRational::new(ratio(1, 4), -2));
    let json = serde_json::to_string(&a).unwrap();
    assert_eq!(json, r#"{"coeff":"1/4","pi_power":-2}"#);
}

#[test]
fn formula_mismatch_is_an_error() {
    assert!(leading_a_with(AFormula::Surface, 3, 2, &rat(1), &rat(1)).is_err());
    assert!(leading_a_with(AFormula::Higher, 2, 2, &rat(1), &rat(1)).is_err());
    assert!(c_constant(2, &rat(1), 2, &rat(1), &rat(1)).is_err());
}

#[test]
fn gluing_exponents() {
    for m in 2..=4i64 {
        let g = gluing_scales(&ratio(1, 3), m as u32).unwrap();
        assert_eq!(g.r_exponent, ratio(2 * m - 1, 2 * m + 1));
        assert_eq!(g.big_r_exponent, ratio(-2, 2 * m + 1));
    }
    assert!(gluing_scales(&rat(1), 3).is_err());
    assert!(gluing_scales(&rat(0), 3).is_err());
}

#[test]
fn sphere_volume_recursion() {
    // |S^{n+1}| = 2π/n · |S^{n−1}| with n = 2m.
    for m in 1..=6u32 {
        let next = sphere_volume(m + 1).unwrap();
        let here = sphere_volume(m).unwrap();
        assert_eq!(next, here.mul(&PiRational::new(ratio(2, 2 * i64::from(m)), 1)));
    }
}

fn positive() -> impl Strategy<Value = Rational> {
    (1i64..=30, 1i64..=9).prop_map(|(n, d)| ratio(n, d))
}

proptest! {
    #[test]
    fn radicand_is_linear_in_b(m in 2u32..=5, order in 1u64..=12, b in positive(), lambda in positive(), c in positive()) {
        let base = b_constant(m, &b, order, &c).unwrap();
        let scaled = b_constant(m, &(&b * &lambda), order, &c).unwrap();
        prop_assert_eq!(scaled.radicand, base.radicand.scale(&lambda));
        prop_assert_eq!(base.exponent, ratio(1, 2 * i64::from(m)));
    }

    #[test]
    fn leading_values_are_linear_in_weights(m in 2u32..=5, order in 1u64..=12, w in positive(), lambda in positive(), e in positive()) {
        for kind in [LeadingKind::RicciFlat, LeadingKind::ScalarFlat] {
            let base = leading_coefficients(kind, m, order, &w, Some(&e)).unwrap();
            let scaled = leading_coefficients(kind, m, order, &(&w * &lambda), Some(&e)).unwrap();
            prop_assert_eq!(scaled, base.scale(&lambda));
        }
    }

    #[test]
    fn tuned_c_constant_is_linear_in_b(m in 3u32..=5, order in 1u64..=12, b in positive(), s in positive(), lambda in positive()) {
        let c1 = c_constant(m, &b, order, &s, &(&b * &s)).unwrap();
        let bl = &b * &lambda;
        let c2 = c_constant(m, &bl, order, &s, &(&bl * &s)).unwrap();
        prop_assert_eq!(c2, c1 * lambda);
    }
}
