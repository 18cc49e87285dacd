use kcsc_core::biharmonic::{
    derivative, dtn_inverse, dtn_mode_matrix, evaluate, inner_extension, outer_extension, radial_bilaplacian,
    radial_laplacian, ModeOptions, RadialTerm,
};
use kcsc_core::linalg::{rat, ratio};
use kcsc_core::{Rational, RationalMatrix};
use num_traits::{One, Zero};
use proptest::prelude::*;

const MODES: [u32; 6] = [0, 2, 3, 4, 5, 6];

fn opts(m: u32, gamma: u32) -> ModeOptions {
    ModeOptions { nontrivial_group: true, log_mode: m == 2 && gamma == 0 }
}

/// Jump matrix from the extensions written out by hand:
/// both diagonal entries are `2 − 2m − 2γ`, and the coupling is
/// `−1/(2(m+γ−2)) − 1/(2(m+γ))`, or `1/4` for the logarithmic surface mode.
fn dtn_closed_form(m: u32, gamma: u32) -> RationalMatrix {
    let (m, g) = (i64::from(m), i64::from(gamma));
    let diag = rat(2 - 2 * m - 2 * g);
    let coupling = if m == 2 && g == 0 { ratio(1, 4) } else { -ratio(1, 2 * (m + g - 2)) - ratio(1, 2 * (m + g)) };
    RationalMatrix::new(2, 2, vec![diag.clone(), coupling, Rational::zero(), diag]).unwrap()
}

fn boundary_data(terms: &[RadialTerm], m: u32) -> (Rational, Rational) {
    let one = Rational::one();
    (evaluate(terms, &one).unwrap(), evaluate(&radial_laplacian(terms, m).unwrap(), &one).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn extensions_are_biharmonic_with_given_data(
        hn in -20i64..=20, hd in 1i64..=7, kn in -20i64..=20, kd in 1i64..=7,
    ) {
        let (h, k) = (ratio(hn, hd), ratio(kn, kd));
        for m in 2..=4u32 {
            for gamma in MODES {
                let o = opts(m, gamma);
                let outer = outer_extension(m, gamma, &h, &k, o).unwrap();
                let inner = inner_extension(m, gamma, &h, &k, o).unwrap();
                prop_assert_eq!(boundary_data(&outer, m), (h.clone(), k.clone()));
                prop_assert_eq!(boundary_data(&inner, m), (h.clone(), k.clone()));
                prop_assert!(radial_bilaplacian(&outer, m).unwrap().is_empty());
                prop_assert!(radial_bilaplacian(&inner, m).unwrap().is_empty());
                prop_assert!(inner.iter().all(|t| t.exponent >= 0 && !t.log));
                prop_assert!(outer.iter().all(|t| t.exponent < 0 || t.log));
                let p = dtn_mode_matrix(m, gamma, o).unwrap();
                let (dh, dk) = p.apply(&h, &k).unwrap();
                let one = Rational::one();
                let jump = |f: &dyn Fn(&[RadialTerm]) -> Vec<RadialTerm>| {
                    evaluate(&f(&outer), &one).unwrap() - evaluate(&f(&inner), &one).unwrap()
                };
                prop_assert_eq!(dh, jump(&|t| derivative(t)));
                prop_assert_eq!(dk, jump(&|t| derivative(&radial_laplacian(t, m).unwrap())));
            }
        }
    }
}

#[test]
fn dtn_matches_closed_form_and_inverts() {
    for m in 2..=4u32 {
        for gamma in 0..=6u32 {
            if gamma == 1 {
                continue;
            }
            let o = opts(m, gamma);
            let p = dtn_mode_matrix(m, gamma, o).unwrap();
            let q = dtn_inverse(m, gamma, o).unwrap();
            assert_eq!(p.entries, dtn_closed_form(m, gamma), "m = {m}, γ = {gamma}");
            assert!(!p.determinant.is_zero());
            assert_eq!(p.entries.mul(&q.entries).unwrap(), RationalMatrix::identity(2));
            assert_eq!(q.entries.mul(&p.entries).unwrap(), RationalMatrix::identity(2));
        }
    }
}

#[test]
fn linear_mode_exists_only_for_trivial_groups() {
    let free = ModeOptions { nontrivial_group: false, log_mode: false };
    assert!(dtn_mode_matrix(3, 1, free).is_ok());
    assert!(dtn_mode_matrix(3, 1, opts(3, 1)).is_err());
    assert!(outer_extension(3, 1, &rat(1), &rat(1), opts(3, 1)).is_err());
}

#[test]
fn surface_zero_mode_needs_logs() {
    let plain = ModeOptions { nontrivial_group: true, log_mode: false };
    assert!(outer_extension(2, 0, &rat(1), &rat(1), plain).is_err());
    let p = dtn_mode_matrix(2, 0, opts(2, 0)).unwrap();
    assert_eq!(p.determinant, rat(4));
}

#[test]
fn log_terms_outside_the_surface_zero_mode_are_rejected() {
    let t = [RadialTerm::log_power(rat(1), 0, 0)];
    assert!(radial_laplacian(&t, 3).is_err());
    assert!(radial_laplacian(&t, 2).is_ok());
}
