use std::collections::BTreeSet;

use num_bigint::BigInt;
use proptest::prelude::*;

use epair_core::character::{half_denominator, weyl_denominator_full};
use epair_core::kostant::{freudenthal_character, weyl_character};
use epair_core::pairing::{elliptic_pairing, multiplicity_pairing};
use epair_core::weyl::DEFAULT_WEYL_CAP;
use epair_core::zoo::{compact_irreducible, HomologySource};
use epair_core::{
    CharElement, PairContext, PairingKind, PairingValue, RootSystem, Series, VirtualModule, Weight, WeylSubgroup,
};

fn small_types() -> Vec<RootSystem> {
    [(Series::A, 1), (Series::A, 2), (Series::A, 3), (Series::B, 2), (Series::B, 3), (Series::C, 3), (Series::G, 2)]
        .into_iter()
        .map(|(s, r)| RootSystem::new(s, r).unwrap())
        .collect()
}

/// Roots by brute force: close the simple roots under the reflections
/// `μ ↦ μ − μ_i α_i`, written out here from the Cartan matrix.
fn roots_by_closure(rs: &RootSystem) -> BTreeSet<Vec<i64>> {
    let a = rs.cartan_matrix();
    let n = rs.rank();
    let simple: Vec<Vec<i64>> = (0..n).map(|j| (0..n).map(|i| a[i][j]).collect()).collect();
    let mut seen: BTreeSet<Vec<i64>> = simple.iter().cloned().collect();
    let mut frontier: Vec<Vec<i64>> = simple.clone();
    while let Some(mu) = frontier.pop() {
        for (i, alpha) in simple.iter().enumerate() {
            let nu: Vec<i64> = mu.iter().zip(alpha).map(|(m, a)| m - mu[i] * a).collect();
            if seen.insert(nu.clone()) {
                frontier.push(nu);
            }
        }
    }
    seen
}

#[test]
fn roots_match_reflection_closure() {
    for rs in small_types() {
        let expected = roots_by_closure(&rs);
        let got: BTreeSet<Vec<i64>> = rs.full_roots().iter().map(|r| r.coords().to_vec()).collect();
        assert_eq!(got, expected, "{}", rs.label());
        assert_eq!(rs.full_roots().len(), 2 * rs.num_positive_roots());
    }
}

#[test]
fn weyl_elements_permute_roots() {
    for rs in small_types() {
        let w = WeylSubgroup::full(&rs, DEFAULT_WEYL_CAP).unwrap();
        assert_eq!(w.order() as u128, rs.classical_weyl_order());
        let roots: BTreeSet<&Weight> = rs.full_roots().iter().collect();
        for g in w.elements() {
            assert_eq!(g.sign(), if g.length() % 2 == 0 { 1 } else { -1 });
            let image: BTreeSet<Weight> = rs.full_roots().iter().map(|r| g.act(r).unwrap()).collect();
            assert_eq!(image.iter().collect::<BTreeSet<_>>(), roots);
            let negated = rs.positive_roots().iter().filter(|r| !rs.is_positive_root(&g.act(r).unwrap())).count();
            assert_eq!(negated, g.length());
        }
    }
}

/// `dim V_λ` for `gl_{n+1}` from the partition of `λ`.
fn gl_dimension(lambda: &[i64]) -> BigInt {
    let n = lambda.len() + 1;
    let mut parts = vec![0i64; n];
    for i in (0..n - 1).rev() {
        parts[i] = parts[i + 1] + lambda[i];
    }
    let mut num = BigInt::from(1);
    let mut den = BigInt::from(1);
    for i in 0..n {
        for j in i + 1..n {
            num *= parts[i] - parts[j] + (j - i) as i64;
            den *= (j - i) as i64;
        }
    }
    num / den
}

#[test]
fn type_a_dimensions() {
    for n in 1..=3 {
        let rs = RootSystem::new(Series::A, n).unwrap();
        let w = WeylSubgroup::full(&rs, DEFAULT_WEYL_CAP).unwrap();
        for idx in 0..3i64.pow(n as u32) {
            let coords: Vec<i64> = (0..n).map(|k| (idx / 3i64.pow(k as u32)) % 3).collect();
            let chi = weyl_character(&Weight::new(coords.clone()), &rs, &w).unwrap();
            assert_eq!(chi.degree(), gl_dimension(&coords), "A{n} {coords:?}");
        }
    }
}

/// `SU(2)` character of `V_m` in the fundamental-weight coordinate.
fn su2(m: i64) -> CharElement {
    CharElement::from_terms(1, (0..=m).map(|k| (Weight::new(vec![m - 2 * k]), 1))).unwrap()
}

#[test]
fn clebsch_gordan_multiplicities() {
    let ctx = PairContext::compact(RootSystem::new(Series::A, 1).unwrap(), DEFAULT_WEYL_CAP).unwrap();
    for m in 0..5 {
        for n in 0..5 {
            let product = &su2(m) * &su2(n);
            for k in 0..10 {
                let expect = i64::from(k >= (m - n).abs() && k <= m + n && (m + n - k) % 2 == 0);
                let got = multiplicity_pairing(&product, &su2(k), &ctx).unwrap();
                assert_eq!(got, PairingValue::from_integer(expect), "V{m} x V{n} -> V{k}");
            }
        }
    }
}

#[test]
fn denominator_factorises() {
    for rs in small_types() {
        let half = half_denominator(&rs);
        assert_eq!(&half * &half.conjugate(), weyl_denominator_full(&rs), "{}", rs.label());
    }
}

#[test]
fn weyl_matches_freudenthal_on_rank_three() {
    for rs in small_types().into_iter().filter(|r| r.rank() == 3) {
        let w = WeylSubgroup::full(&rs, DEFAULT_WEYL_CAP).unwrap();
        for lam in [vec![1, 0, 1], vec![0, 2, 0], vec![1, 1, 1]] {
            let lam = Weight::new(lam);
            assert_eq!(weyl_character(&lam, &rs, &w).unwrap(), freudenthal_character(&lam, &rs).unwrap());
        }
    }
}

fn char_strategy(rank: usize) -> impl Strategy<Value = CharElement> {
    prop::collection::vec((prop::collection::vec(-3i64..=3, rank), -4i64..=4), 0..6)
        .prop_map(move |ts| CharElement::from_terms(rank, ts.into_iter().map(|(w, c)| (Weight::new(w), c))).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in char_strategy(2), b in char_strategy(2), c in char_strategy(2)) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!((&a * &b).conjugate(), &a.conjugate() * &b.conjugate());
        prop_assert_eq!(a.conjugate().conjugate(), a.clone());
        prop_assert_eq!(a.torus_pairing(&b).unwrap(), b.torus_pairing(&a).unwrap());
    }

    #[test]
    fn weyl_action_is_a_ring_map(a in char_strategy(2), b in char_strategy(2), word in prop::collection::vec(0usize..2, 0..6)) {
        let rs = RootSystem::new(Series::G, 2).unwrap();
        let w = epair_core::WeylElement::from_word(&rs, &word).unwrap();
        let wa = a.weyl_act(&w).unwrap();
        prop_assert_eq!((&a * &b).weyl_act(&w).unwrap(), &wa * &b.weyl_act(&w).unwrap());
        prop_assert_eq!(wa.torus_integral(), a.torus_integral());
    }

    #[test]
    fn elliptic_pairing_is_bilinear(a in char_strategy(2), b in char_strategy(2), c in char_strategy(2), s in -3i64..=3, t in -3i64..=3) {
        let ctx = PairContext::compact(RootSystem::new(Series::B, 2).unwrap(), DEFAULT_WEYL_CAP).unwrap();
        let lhs = elliptic_pairing(&(&a.scale_i64(s) + &b.scale_i64(t)), &c, &ctx).unwrap();
        let x = elliptic_pairing(&a, &c, &ctx).unwrap();
        let y = elliptic_pairing(&b, &c, &ctx).unwrap();
        let rhs = PairingValue::new(x.value() * num_rational::BigRational::from_integer(s.into()) + y.value() * num_rational::BigRational::from_integer(t.into()));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn paths_agree_on_combinations(coeffs in prop::collection::vec(-3i64..=3, 4), other in prop::collection::vec(-3i64..=3, 4)) {
        let ctx = PairContext::compact(RootSystem::new(Series::A, 2).unwrap(), DEFAULT_WEYL_CAP).unwrap();
        let basis: Vec<VirtualModule> = [[0, 0], [1, 0], [0, 1], [1, 1]]
            .iter()
            .map(|l| compact_irreducible(&Weight::new(l.to_vec()), &ctx, HomologySource::Koszul).unwrap())
            .collect();
        let combine = |cs: &[i64]| {
            let terms: Vec<(i64, &VirtualModule)> = cs.iter().copied().zip(&basis).collect();
            VirtualModule::combination("x", &terms, 2).unwrap()
        };
        let (x, y) = (combine(&coeffs), combine(&other));
        let e = x.pairing(&y, PairingKind::Elliptic, &ctx).unwrap();
        prop_assert_eq!(&e, &x.pairing(&y, PairingKind::Homological, &ctx).unwrap());
        let dot: i64 = coeffs.iter().zip(&other).map(|(a, b)| a * b).sum();
        prop_assert_eq!(e, PairingValue::from_integer(dot));
    }
}
