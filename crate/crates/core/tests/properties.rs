//! Property tests for the exact arithmetic layers and the root
//! combinatorics.

use proptest::prelude::*;

use supq_core::cyclotomic::Cyclo;
use supq_core::field::FieldSpec;
use supq_core::rational::Rational;
use supq_core::roots::{
    self, d_window, enumerate_basic_sets, is_basic, regular_entries, Family, GroupKind,
};

fn rational_strategy() -> impl Strategy<Value = Rational> {
    (-200i128..200, 1i128..40).prop_map(|(n, d)| Rational::new(n, d))
}

fn cyclo_strategy(p: u32) -> impl Strategy<Value = Cyclo> {
    proptest::collection::vec(-30i128..30, (p - 1) as usize).prop_map(move |coeffs| {
        let mut acc = Cyclo::zero(p);
        for (k, c) in coeffs.into_iter().enumerate() {
            acc = acc.add(&Cyclo::zeta_pow(p, k as u32).scale(Rational::from_int(c)));
        }
        acc
    })
}

proptest! {
    #[test]
    fn rational_field_laws(a in rational_strategy(), b in rational_strategy(), c in rational_strategy()) {
        prop_assert_eq!(a + b, b + a);
        prop_assert_eq!((a + b) + c, a + (b + c));
        prop_assert_eq!(a * b, b * a);
        prop_assert_eq!((a * b) * c, a * (b * c));
        prop_assert_eq!(a * (b + c), a * b + a * c);
        prop_assert_eq!(a - a, Rational::ZERO);
        if !b.is_zero() {
            prop_assert_eq!(b * b.recip(), Rational::ONE);
        }
    }

    #[test]
    fn cyclo_ring_laws_p5(a in cyclo_strategy(5), b in cyclo_strategy(5), c in cyclo_strategy(5)) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.sub(&a), Cyclo::zero(5));
        prop_assert_eq!(a.mul(&Cyclo::one(5)), a);
    }

    #[test]
    fn cyclo_conjugation_involution(a in cyclo_strategy(7)) {
        prop_assert_eq!(a.conjugate().conjugate(), a.clone());
        // |a|^2 is fixed by conjugation (real)
        let norm = a.mul(&a.conjugate());
        prop_assert_eq!(norm.conjugate(), norm);
    }

    #[test]
    fn cyclo_galois_rationality(a in cyclo_strategy(5)) {
        // an element is rational exactly when fixed by the whole Galois group
        let fixed = (2..5).all(|k| a.galois(k) == a);
        prop_assert_eq!(a.as_rational().is_ok(), fixed);
    }

    #[test]
    fn galois_is_multiplicative(a in cyclo_strategy(5), b in cyclo_strategy(5), k in 1u32..5) {
        prop_assert_eq!(a.mul(&b).galois(k), a.galois(k).mul(&b.galois(k)));
    }

    #[test]
    fn theta_scaling_q9(ai in 0u32..9, bi in 0u32..9) {
        let fs = FieldSpec::new(3, 2, None).unwrap();
        let a = fs.elt(ai);
        let b = fs.elt(bi);
        prop_assert_eq!(fs.theta(fs.add(a, b)), fs.theta(a).mul(&fs.theta(b)));
        prop_assert_eq!(fs.theta(a).mul(&fs.theta(fs.neg(a))), Cyclo::one(3));
    }

    #[test]
    fn field_arith_matches_integers_f7(x in 0i128..7, y in 0i128..7) {
        let fs = FieldSpec::new(7, 1, None).unwrap();
        let a = fs.from_int(x);
        let b = fs.from_int(y);
        prop_assert_eq!(fs.add(a, b), fs.from_int(x + y));
        prop_assert_eq!(fs.mul(a, b), fs.from_int(x * y));
        prop_assert_eq!(fs.sub(a, b), fs.from_int(x - y));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn basic_sets_stay_basic_under_subsets(seed in 0usize..1000) {
        // subsets of a basic set are basic, for C_3 and B_3
        for kind in [
            GroupKind::new(Family::Symplectic, 3).unwrap(),
            GroupKind::new(Family::OddOrthogonal, 3).unwrap(),
        ] {
            let sets = enumerate_basic_sets(kind);
            let d = &sets[seed % sets.len()];
            for skip in 0..d.len() {
                let sub: Vec<_> = d
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| *k != skip)
                    .map(|(_, r)| *r)
                    .collect();
                prop_assert!(is_basic(kind, &sub));
            }
        }
    }

    #[test]
    fn regular_entries_contain_basic_entries(seed in 0usize..1000) {
        for kind in [
            GroupKind::new(Family::Symplectic, 3).unwrap(),
            GroupKind::new(Family::EvenOrthogonal, 3).unwrap(),
        ] {
            let sets = enumerate_basic_sets(kind);
            let d = &sets[seed % sets.len()];
            let reg = regular_entries(kind, d);
            for e in d.iter().flat_map(|r| r.entries(kind)) {
                prop_assert!(reg.contains(&e));
            }
        }
    }

    #[test]
    fn windows_are_basic_and_ordered(seed in 0usize..1000) {
        let kind = GroupKind::new(Family::Symplectic, 3).unwrap();
        let m = kind.m();
        let sets = enumerate_basic_sets(kind);
        let d = &sets[seed % sets.len()];
        let entries: Vec<_> = d.iter().flat_map(|r| r.entries(kind)).collect();
        for at in roots::all_entries(kind) {
            let w = d_window(&entries, at, m);
            // columns ascend, sigma sorts the rows ascending
            for pair in w.cols_sorted.windows(2) {
                prop_assert!(pair[0].pos(m) < pair[1].pos(m));
            }
            for pair in w.rows_sorted.windows(2) {
                prop_assert!(pair[0].pos(m) < pair[1].pos(m));
            }
            prop_assert!(is_basic(kind, &[]) || w.by_col.len() <= d.len() * 2);
        }
    }
}
