mod support;

use kcsc_core::format::parse_fan_str;
use kcsc_core::toric::{
    classify, classify_fan, cone_index, is_gorenstein, is_isolated, quotient_action, validate_fan, Classification,
    Cone,
};
use num_integer::Integer;
use proptest::prelude::*;
use support::{elements_as_fractions, group_acts_freely, group_in_su, mat_vec_i64, quotient_group_brute};

fn primitive(v: Vec<i64>) -> Vec<i64> {
    let g = v.iter().fold(0i64, |acc, &x| acc.gcd(&x));
    if g <= 1 {
        v
    } else {
        v.into_iter().map(|x| x / g).collect()
    }
}

/// Full-dimensional simplicial cones in `Z^2` or `Z^3` with `1 ≤ |det| ≤ 30`.
fn cone() -> impl Strategy<Value = Cone> {
    (2usize..=3)
        .prop_flat_map(|m| prop::collection::vec(prop::collection::vec(-3i64..=3, m), m))
        .prop_map(|gens| gens.into_iter().map(primitive).collect::<Vec<_>>())
        .prop_filter_map("degenerate or too large", |gens| {
            let c = Cone::new(gens).ok()?;
            let d = c.generator_matrix().determinant().ok()?;
            let d: i64 = d.try_into().ok()?;
            (d != 0 && d.abs() <= 30).then_some(c)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn quotient_matches_group_closure(c in cone()) {
        let q = quotient_action(&c).unwrap();
        let brute = quotient_group_brute(c.generators());
        let m = c.ambient_dim();
        prop_assert_eq!(q.order as usize, brute.len());
        prop_assert_eq!(cone_index(&c).unwrap(), q.order);
        prop_assert_eq!(q.cyclic_factors.iter().map(|f| f.order).product::<u64>(), q.order);
        prop_assert_eq!(elements_as_fractions(&q.elements(m), q.exponent()), brute.clone());
        let expected = if q.order == 1 {
            Classification::Smooth
        } else if group_in_su(&brute) {
            Classification::Su
        } else {
            Classification::UNonSu
        };
        prop_assert_eq!(q.classification, expected);
        prop_assert_eq!(q.isolated, group_acts_freely(&brute));
    }

    #[test]
    fn gorenstein_agrees_with_weight_sums(c in cone()) {
        let class = classify(&c).unwrap();
        let q = quotient_action(&c).unwrap();
        let sums_vanish = q.cyclic_factors.iter().all(|f| f.weights.iter().sum::<u64>() % f.order == 0);
        prop_assert_eq!(is_gorenstein(&c).unwrap(), sums_vanish);
        prop_assert_eq!(class == Classification::Su, q.order > 1 && sums_vanish);
        prop_assert_eq!(class == Classification::Smooth, q.order == 1);
    }

    #[test]
    fn isolated_agrees_with_faces(c in cone()) {
        is_isolated(&c).unwrap();
    }

    #[test]
    fn group_is_invariant_under_lattice_change(c in cone(), seed in any::<u64>()) {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let u = support::random_unimodular(&mut rng, c.ambient_dim());
        let moved = Cone::new(c.generators().iter().map(|g| mat_vec_i64(&u, g)).collect()).unwrap();
        prop_assert_eq!(quotient_group_brute(moved.generators()), quotient_group_brute(c.generators()));
        let (a, b) = (quotient_action(&c).unwrap(), quotient_action(&moved).unwrap());
        prop_assert_eq!(a.classification, b.classification);
        prop_assert_eq!(a.isolated, b.isolated);
        let m = c.ambient_dim();
        prop_assert_eq!(
            elements_as_fractions(&a.elements(m), a.exponent()),
            elements_as_fractions(&b.elements(m), b.exponent())
        );
    }
}

#[test]
fn a1_surface_singularity() {
    let c = Cone::new(vec![vec![1, 0], vec![1, 2]]).unwrap();
    let q = quotient_action(&c).unwrap();
    assert_eq!(q.order, 2);
    assert_eq!(q.cyclic_factors[0].weights, vec![1, 1]);
    assert_eq!(q.classification, Classification::Su);
    assert!(q.isolated);
}

#[test]
fn non_isolated_threefold_cone() {
    // Z_2 acting by (1,1,0) fixes a coordinate line.
    let c = Cone::new(vec![vec![1, 0, 0], vec![1, 2, 0], vec![0, 0, 1]]).unwrap();
    assert!(!is_isolated(&c).unwrap());
}

/// Cone labels come from the bundled fans; the expected SU lists are the
/// printed ones.
#[test]
fn bundled_fans_classify_as_printed() {
    for (text, su) in [
        (include_str!("../data/x1.fan"), support::printed::X1_SU.to_vec()),
        (include_str!("../data/x4.fan"), support::printed::X4_SU.to_vec()),
    ] {
        let file = parse_fan_str(text).unwrap();
        let fan = file.fan();
        assert!(validate_fan(&fan).is_valid());
        let rows = classify_fan(&fan);
        let got: Vec<&str> = rows
            .iter()
            .filter(|r| r.classification == Classification::Su)
            .map(|r| file.cone_labels[r.index].as_str())
            .collect();
        assert_eq!(got, su);
        assert!(rows.iter().all(|r| r.isolated == Some(true)));
        assert!(rows.iter().all(|r| r.classification != Classification::Smooth));
    }
}
