//! Λ₀ descent and the bifurcation basis-change moves on Novikov complexes.

#[allow(unused_imports)]
use num_traits::{Signed as _, Zero as _};
use std::collections::HashMap;

use crate::error::FlowError;
use crate::novikov::{NovikovComplex, NovikovElement};
use crate::scalar::{IntScalar, Rational};

/// Rebase generators by `x ↦ T^{−E(x)}·x`. The entry between `x` (degree
/// k+1) and `y` (degree k) picks up `T^{E(x) − E(y)}`; E-positivity of the
/// source category makes every rebased entry have valuation ≥ 0, and the
/// output is flagged Λ₀. A negative-valuation entry names its witness —
/// that signals E-violating input data.
pub fn descend_to_lambda0<I: IntScalar>(
    c: &NovikovComplex<I>,
    energy: &HashMap<String, Rational<I>>,
) -> Result<NovikovComplex<I>, FlowError> {
    let mut out = c.clone();
    let degrees: Vec<i64> = c.degrees().collect();
    for &k in &degrees {
        let d = c.differential(k);
        if d.is_zero() {
            continue;
        }
        let next = c.next_degree(k);
        let rows: Vec<String> = c.generators(next).to_vec();
        let cols: Vec<String> = c.generators(k).to_vec();
        let mut m = d.clone();
        for (i, x) in rows.iter().enumerate() {
            for (j, y) in cols.iter().enumerate() {
                let entry = d.get(i, j);
                if entry.is_zero() {
                    continue;
                }
                let ex = energy.get(x).cloned().unwrap_or_else(Rational::zero);
                let ey = energy.get(y).cloned().unwrap_or_else(Rational::zero);
                let shift = ex - ey;
                let rebased = entry.lift().mul_monomial(&I::one(), &shift).truncated(c.truncation.clone());
                if let Some(v) = rebased.valuation() {
                    if v < Rational::zero() {
                        return Err(FlowError::NegativeValuationEntry {
                            from: x.clone(),
                            to: y.clone(),
                            entry: rebased.to_text(),
                        });
                    }
                }
                m.set(i, j, rebased);
            }
        }
        out.set_differential(k, m).map_err(FlowError::Novikov)?;
    }
    out.set_lambda0(true);
    Ok(out)
}

/// Move (c): the basis change `p ↦ p + sign·weight·q` on two generators of
/// the same degree. Homology invariant factors are unchanged.
pub fn bifurcation_move_c<I: IntScalar>(
    c: &NovikovComplex<I>,
    p: &str,
    q: &str,
    sign: i8,
    weight: &NovikovElement<I>,
) -> Result<NovikovComplex<I>, FlowError> {
    if p == q {
        return Err(FlowError::DegreeMismatch { detail: "p and q must be distinct generators".into() });
    }
    let deg_p = find_degree(c, p)?;
    let deg_q = find_degree(c, q)?;
    if deg_p != deg_q {
        return Err(FlowError::DegreeMismatch {
            detail: format!("{} has degree {}, {} has degree {}", p, deg_p, q, deg_q),
        });
    }
    if let Some(v) = weight.valuation() {
        if v < Rational::zero() {
            return Err(FlowError::ValuationNotPositive {
                detail: format!("move (c) weight must have valuation ≥ 0, got {}", v),
            });
        }
    }
    let mut out = c.clone();
    let k = deg_p;
    let ip = position(c, k, p);
    let iq = position(c, k, q);
    let s = NovikovElement::from_integer(sign as i64, c.truncation.clone());
    let sw = s.lift().mul_unchecked(&weight.lift(), crate::novikov::Truncation::Exact);
    // Outgoing differential: d(p') = d(p) + s·w·d(q).
    out.materialize_differential(k).col_axpy(ip, iq, &sw);
    // Incoming differential: outputs rewritten in the new basis,
    // row_q −= s·w·row_p.
    let prev = c.prev_degree(k);
    out.materialize_differential(prev).row_axpy(iq, ip, &sw.neg());
    Ok(out)
}

/// Move (d): `p ↦ (1+u)·p` for `val(u) > 0`. Homology invariant factors
/// are unchanged at the truncation.
pub fn bifurcation_move_d<I: IntScalar>(
    c: &NovikovComplex<I>,
    p: &str,
    u: &NovikovElement<I>,
) -> Result<NovikovComplex<I>, FlowError> {
    match u.valuation() {
        None => {} // u = 0: the identity move
        Some(v) if v > Rational::zero() => {}
        Some(v) => {
            return Err(FlowError::ValuationNotPositive {
                detail: format!("move (d) needs val(u) > 0, got {}", v),
            })
        }
    }
    let k = find_degree(c, p)?;
    let ip = position(c, k, p);
    let one = NovikovElement::one(c.truncation.clone());
    let unit = one.add(u);
    let inv = unit.invert().map_err(FlowError::Novikov)?;
    let mut out = c.clone();
    out.materialize_differential(k).scale_col(ip, &unit);
    let prev = c.prev_degree(k);
    out.materialize_differential(prev).scale_row(ip, &inv);
    Ok(out)
}

fn find_degree<I: IntScalar>(c: &NovikovComplex<I>, name: &str) -> Result<i64, FlowError> {
    let degrees: Vec<i64> = c.degrees().collect();
    for k in degrees {
        if c.generators(k).iter().any(|g| g == name) {
            return Ok(k);
        }
    }
    Err(FlowError::UnknownGenerator(name.to_string()))
}

fn position<I: IntScalar>(c: &NovikovComplex<I>, k: i64, name: &str) -> usize {
    c.generators(k).iter().position(|g| g == name).expect("generator present")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::novikov::{nov_homology, NovikovGroupDesc, NovikovMatrix, Truncation};
    use crate::scalar::rat;

    type E = NovikovElement<i64>;

    fn two_gen_complex(entries: &[Vec<i64>]) -> NovikovComplex<i64> {
        let t = Truncation::Finite(rat::<i64>(5, 1));
        let mut c = NovikovComplex::new(NovikovGroupDesc::trivial(), t.clone());
        for i in 0..entries[0].len() {
            c.add_generator(0, format!("p{}", i));
        }
        for i in 0..entries.len() {
            c.add_generator(1, format!("y{}", i));
        }
        c.set_differential(0, NovikovMatrix::from_integers(entries, t)).unwrap();
        c
    }

    #[test]
    fn move_c_on_zero_complex_keeps_zero() {
        let t = Truncation::Finite(rat::<i64>(5, 1));
        let mut c: NovikovComplex<i64> = NovikovComplex::new(NovikovGroupDesc::trivial(), t.clone());
        c.add_generator(0, "p");
        c.add_generator(0, "q");
        let moved = bifurcation_move_c(&c, "p", "q", 1, &E::one(t)).unwrap();
        assert!(moved.differential(0).is_zero());
    }

    #[test]
    fn move_c_preserves_invariant_factors() {
        let c = two_gen_complex(&[vec![2, 0], vec![0, 3]]);
        let before = nov_homology(&c).unwrap();
        let moved = bifurcation_move_c(&c, "p0", "p1", 1, &E::one(c.truncation.clone())).unwrap();
        let after = nov_homology(&moved).unwrap();
        assert_eq!(before.normalized(), after.normalized());
    }

    #[test]
    fn move_c_inverse_recovers_complex() {
        let c = two_gen_complex(&[vec![2, 5], vec![-1, 3]]);
        let w = E::new(vec![(1, rat(0, 1)), (2, rat(1, 1))], c.truncation.clone());
        let there = bifurcation_move_c(&c, "p0", "p1", 1, &w).unwrap();
        let back = bifurcation_move_c(&there, "p0", "p1", -1, &w).unwrap();
        assert_eq!(back.differential(0), c.differential(0));
        assert_eq!(back.differential(-1), c.differential(-1));
    }

    #[test]
    fn move_c_rejects_degree_mismatch() {
        let t = Truncation::Finite(rat::<i64>(5, 1));
        let mut c: NovikovComplex<i64> = NovikovComplex::new(NovikovGroupDesc::trivial(), t.clone());
        c.add_generator(0, "p");
        c.add_generator(1, "q");
        assert!(matches!(
            bifurcation_move_c(&c, "p", "q", 1, &E::one(t)),
            Err(FlowError::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn move_d_identity_on_zero_complex() {
        let t = Truncation::Finite(rat::<i64>(5, 1));
        let mut c: NovikovComplex<i64> = NovikovComplex::new(NovikovGroupDesc::trivial(), t.clone());
        c.add_generator(0, "p");
        let u = E::monomial(1, rat(1, 1), t.clone());
        let moved = bifurcation_move_d(&c, "p", &u).unwrap();
        assert_eq!(nov_homology(&moved).unwrap().group(0).free_rank, 1);
    }

    #[test]
    fn move_d_preserves_invariants_on_one_minus_t() {
        let t = Truncation::Finite(rat::<i64>(5, 1));
        let mut c: NovikovComplex<i64> = NovikovComplex::new(NovikovGroupDesc::trivial(), t.clone());
        c.add_generator(0, "p");
        c.add_generator(1, "y");
        let d = NovikovMatrix::from_entries(
            1,
            1,
            vec![E::new(vec![(1, rat(0, 1)), (-1, rat(1, 1))], t.clone())],
            t.clone(),
        )
        .unwrap();
        c.set_differential(0, d).unwrap();
        let before = nov_homology(&c).unwrap();
        let u = E::monomial(1, rat(1, 1), t.clone());
        let moved = bifurcation_move_d(&c, "p", &u).unwrap();
        let after = nov_homology(&moved).unwrap();
        assert_eq!(before.normalized(), after.normalized());
    }

    #[test]
    fn move_d_composes_multiplicatively() {
        // move_d(p, u) then move_d(p, u') = move_d(p, u + u' + u·u').
        let c = two_gen_complex(&[vec![2, 0], vec![0, 3]]);
        let t = c.truncation.clone();
        let u = E::monomial(1, rat(1, 1), t.clone());
        let u2 = E::monomial(2, rat(1, 2), t.clone());
        let seq = bifurcation_move_d(&bifurcation_move_d(&c, "p0", &u).unwrap(), "p0", &u2).unwrap();
        let combined = u.add(&u2).add(&u.mul(&u2).unwrap());
        let direct = bifurcation_move_d(&c, "p0", &combined).unwrap();
        assert_eq!(seq.differential(0), direct.differential(0));
        assert_eq!(seq.differential(-1), direct.differential(-1));
    }

    #[test]
    fn move_d_rejects_nonpositive_valuation() {
        let c = two_gen_complex(&[vec![2]]);
        let u = E::one(c.truncation.clone());
        assert!(matches!(
            bifurcation_move_d(&c, "p0", &u),
            Err(FlowError::ValuationNotPositive { .. })
        ));
    }

    #[test]
    fn descend_rejects_negative_valuation_with_witness() {
        let c = two_gen_complex(&[vec![2]]);
        let mut energy = HashMap::new();
        // E(y0) > E(p0): the entry T^{E(x)-E(y)} = T^{-1} dips below 0.
        energy.insert("y0".to_string(), rat::<i64>(0, 1));
        energy.insert("p0".to_string(), rat::<i64>(1, 1));
        // x = y0 (degree 1, source of the differential entry), y = p0.
        let err = descend_to_lambda0(&c, &energy).unwrap_err();
        assert!(matches!(err, FlowError::NegativeValuationEntry { .. }));
    }

    #[test]
    fn descend_zero_differential_unchanged() {
        let t = Truncation::Finite(rat::<i64>(5, 1));
        let mut c: NovikovComplex<i64> = NovikovComplex::new(NovikovGroupDesc::trivial(), t);
        c.add_generator(0, "a");
        let out = descend_to_lambda0(&c, &HashMap::new()).unwrap();
        assert!(out.is_lambda0());
        assert!(out.differential(0).is_zero());
    }
}
