//! Property tests for the algebraic core: exactness of arithmetic, interval
//! soundness, rank invariances, and lattice membership reconstruction.

use num_bigint::BigInt;
use proptest::collection::vec;
use proptest::prelude::*;

use barkit::exactnum::rational::parse_decimal;
use barkit::exactnum::{QNum, Rational, SymPoly, Symbol, SymbolSpace};
use barkit::qlinalg::{lattice_membership, rank_over_q};

fn space3() -> SymbolSpace {
    SymbolSpace::new(vec![
        Symbol::new("s1", parse_decimal("1.41421356237309").unwrap(), parse_decimal("1e-11").unwrap()),
        Symbol::new("s2", parse_decimal("1.73205080756887").unwrap(), parse_decimal("1e-11").unwrap()),
        Symbol::new("s3", parse_decimal("2.23606797749978").unwrap(), parse_decimal("1e-11").unwrap()),
    ])
    .unwrap()
}

fn rational() -> impl Strategy<Value = Rational> {
    (-200i64..200, 1i64..40).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

fn positive_rational() -> impl Strategy<Value = Rational> {
    (1i64..200, 1i64..40).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

fn qnum() -> impl Strategy<Value = QNum> {
    vec(rational(), 4).prop_map(|coords| QNum::new(space3(), coords))
}

proptest! {
    #[test]
    fn addition_round_trips_exactly(a in qnum(), b in qnum()) {
        let sum = &a + &b;
        prop_assert_eq!(&sum - &b, a);
    }

    #[test]
    fn scaling_distributes_over_addition(a in qnum(), b in qnum(), c in rational()) {
        let left = (&a + &b).scale(&c);
        let right = &a.scale(&c) + &b.scale(&c);
        prop_assert_eq!(left, right);
    }

    #[test]
    fn equality_is_coordinatewise(a in qnum(), b in qnum()) {
        let equal_values = a.compare(&b).ok() == Some(std::cmp::Ordering::Equal);
        prop_assert_eq!(equal_values, a.coords() == b.coords());
    }

    #[test]
    fn interval_contains_exact_rational_evaluation(
        coeffs in vec((rational(), vec(0u32..3, 3)), 1..6),
        points in vec(rational(), 3),
    ) {
        // declare symbols AT the rational points (tiny eps); the interval of
        // any polynomial must contain its exact evaluation there
        let symbols: Vec<Symbol> = points
            .iter()
            .enumerate()
            .map(|(i, p)| Symbol::new(format!("t{i}"), p.clone(), parse_decimal("1e-30").unwrap()))
            .collect();
        let space = SymbolSpace::new(symbols).unwrap();
        let mut poly = SymPoly::zero(&space);
        for (c, mono) in &coeffs {
            let mut term = SymPoly::constant(&space, c.clone());
            for (i, &e) in mono.iter().enumerate() {
                let s = SymPoly::from_qnum(&QNum::symbol(&space, i));
                term = term.mul(&s.pow(e));
            }
            poly = poly.add(&term);
        }
        let exact = poly.eval_at_rationals(&points);
        prop_assert!(poly.eval_interval().contains(&exact));
    }

    #[test]
    fn rank_is_invariant_under_permutation_and_positive_scaling(
        values in vec(qnum(), 1..6),
        scales in vec(positive_rational(), 6),
        rotate in 0usize..6,
    ) {
        let baseline = rank_over_q(&values);
        let mut permuted = values.clone();
        permuted.rotate_left(rotate % values.len());
        prop_assert_eq!(rank_over_q(&permuted), baseline);
        let scaled: Vec<QNum> = values
            .iter()
            .zip(scales.iter().cycle())
            .map(|(v, s)| v.scale(s))
            .collect();
        prop_assert_eq!(rank_over_q(&scaled), baseline);
    }

    #[test]
    fn integer_combinations_are_always_members(
        gens in vec(qnum(), 1..4),
        zs in vec(-6i64..6, 4),
    ) {
        prop_assume!(gens.iter().any(|g| !g.is_zero()));
        let mut x = QNum::zero(&space3());
        for (g, z) in gens.iter().zip(&zs) {
            x = &x + &g.scale(&Rational::from_integer((*z).into()));
        }
        let combo = lattice_membership(&x, &gens);
        prop_assert!(combo.is_some(), "constructed member must be found");
        let z = combo.unwrap();
        let mut recon = QNum::zero(&space3());
        for (g, zi) in gens.iter().zip(&z) {
            recon = &recon + &g.scale(&Rational::from_integer(zi.clone()));
        }
        prop_assert_eq!(recon, x);
    }

    #[test]
    fn membership_multiples_scale(g in qnum(), m in -20i64..20) {
        prop_assume!(!g.is_zero());
        let x = g.scale(&Rational::from_integer(m.into()));
        let z = lattice_membership(&x, std::slice::from_ref(&g)).expect("multiple is a member");
        prop_assert_eq!(z, vec![BigInt::from(m)]);
    }
}
