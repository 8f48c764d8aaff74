//! Property tests for the exact arithmetic layer: ring axioms at a fixed
//! truncation, valuation laws, unit inversion, and label bijections.

use novflow::novikov::{NovikovElement, Truncation};
use novflow::scalar::rat;
use novflow::strata::{h_of_s, s_of_h, StratumLabel};
use num_traits::Zero;
use proptest::prelude::*;

type E = NovikovElement<i64>;

fn trunc() -> Truncation<i64> {
    Truncation::Finite(rat(3, 1))
}

/// Elements with up to four terms, exponents in ¼Z ∩ [0, 3), small
/// coefficients.
fn element() -> impl Strategy<Value = E> {
    proptest::collection::vec((-9i64..=9, 0i64..12), 0..4).prop_map(|terms| {
        E::new(
            terms.into_iter().filter(|(c, _)| *c != 0).map(|(c, e)| (c, rat(e, 4))).collect(),
            trunc(),
        )
    })
}

/// Units: leading coefficient ±1 at exponent 0 plus a small tail.
fn unit() -> impl Strategy<Value = E> {
    (proptest::bool::ANY, proptest::collection::vec((-9i64..=9, 1i64..12), 0..3)).prop_map(
        |(neg, tail)| {
            let mut terms = vec![(if neg { -1 } else { 1 }, rat(0, 1))];
            terms.extend(tail.into_iter().filter(|(c, _)| *c != 0).map(|(c, e)| (c, rat(e, 4))));
            E::new(terms, trunc())
        },
    )
}

proptest! {
    #[test]
    fn addition_is_associative_and_commutative(a in element(), b in element(), c in element()) {
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.add(&b), b.add(&a));
    }

    #[test]
    fn multiplication_distributes_and_commutes(a in element(), b in element(), c in element()) {
        let left = a.mul(&b.add(&c)).unwrap();
        let right = a.mul(&b).unwrap().add(&a.mul(&c).unwrap());
        prop_assert_eq!(left, right);
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        let assoc_l = a.mul(&b).unwrap().mul(&c).unwrap();
        let assoc_r = a.mul(&b.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(assoc_l, assoc_r);
    }

    #[test]
    fn valuation_is_a_valuation(a in element(), b in element()) {
        // val(a·b) = val(a) + val(b): integer leading coefficients cannot
        // cancel in the product's lowest term.
        let prod = a.mul(&b).unwrap();
        match (a.valuation(), b.valuation()) {
            (Some(va), Some(vb)) => {
                let sum = va + vb;
                if trunc().admits(&sum) {
                    prop_assert_eq!(prod.valuation(), Some(sum));
                } else {
                    prop_assert!(prod.is_zero());
                }
            }
            _ => prop_assert!(prod.is_zero()),
        }
        // val(a+b) ≥ min(val a, val b).
        let s = a.add(&b);
        if let Some(vs) = s.valuation() {
            let min = match (a.valuation(), b.valuation()) {
                (Some(va), Some(vb)) => va.min(vb),
                (Some(va), None) => va,
                (None, Some(vb)) => vb,
                (None, None) => unreachable!("sum of zeros is zero"),
            };
            prop_assert!(vs >= min);
        }
    }

    #[test]
    fn units_invert_exactly(u in unit()) {
        let inv = u.invert().unwrap();
        prop_assert_eq!(u.mul(&inv).unwrap(), E::one(trunc()));
    }

    #[test]
    fn label_roundtrip_random(k in 0usize..=12, bits in 0u32..4096) {
        let bits = bits & if k == 0 { 0 } else { (1u32 << k) - 1 };
        let s = StratumLabel::from_bits(k, bits);
        prop_assert_eq!(s_of_h(&h_of_s(&s)), s);
    }

    #[test]
    fn zero_is_additive_identity(a in element()) {
        prop_assert_eq!(a.add(&E::zero(trunc())), a.clone());
        prop_assert!(a.sub(&a).is_zero());
        prop_assert_eq!(a.mul(&E::one(trunc())).unwrap(), a.clone());
        let z = a.mul(&E::zero(trunc())).unwrap();
        prop_assert!(z.is_zero());
        let _ = Zero::is_zero(&0i64);
    }
}
