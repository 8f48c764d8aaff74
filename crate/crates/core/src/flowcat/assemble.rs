//! Assembling the Novikov cochain complex of a flow category.

#[allow(unused_imports)]
use num_traits::{Signed as _, Zero as _};

use crate::error::FlowError;
use crate::flowcat::desc::{FlowCategoryDesc, LabelSize};
use crate::novikov::{NovikovComplex, NovikovElement, Truncation};
use crate::scalar::IntScalar;

/// `d ỹ = Σ #C(g·x̃, ỹ) · T^{E(g)} · x̃` over records of label size 0,
/// stored per residue degree. The complex must square to zero at the
/// truncation or the witnessing pair is reported.
pub fn assemble_complex<I: IntScalar>(
    f: &FlowCategoryDesc<I>,
    truncation: Truncation<I>,
) -> Result<NovikovComplex<I>, FlowError> {
    let mut complex = assemble_unchecked(f, truncation)?;
    if let Some((_, x, y)) = complex.d_squared_witness() {
        return Err(FlowError::DSquaredNonzero { from: x, to: y });
    }
    let entries_nonneg = all_entry_valuations_nonnegative(&complex);
    complex.set_lambda0(entries_nonneg);
    Ok(complex)
}

/// Assembly without the d² gate; used by the d² checker itself.
pub fn assemble_unchecked<I: IntScalar>(
    f: &FlowCategoryDesc<I>,
    truncation: Truncation<I>,
) -> Result<NovikovComplex<I>, FlowError> {
    if f.object_index().len() != f.objects.len() {
        return Err(FlowError::InvalidCategory { detail: "duplicate object ids".into() });
    }
    let mut complex = NovikovComplex::new(f.group.clone(), truncation.clone());
    for o in &f.objects {
        complex.add_generator(o.mu, o.id.clone());
    }
    for r in &f.morphisms {
        let label = match r.label {
            LabelSize::Bullet => continue,
            LabelSize::Size(s) => s,
        };
        if label != 0 {
            continue;
        }
        let src = f.object(&r.source).ok_or(FlowError::UnknownGenerator(r.source.clone()))?;
        let tgt = f.object(&r.target).ok_or(FlowError::UnknownGenerator(r.target.clone()))?;
        let count = r.count.clone().ok_or(FlowError::MissingCount {
            from: r.source.clone(),
            to: r.target.clone(),
        })?;
        if count.is_zero() {
            continue;
        }
        let mu_shift = f.group.grading_of(&r.g);
        if mu_shift + src.mu - tgt.mu - 1 != 0 {
            return Err(FlowError::DegreeMismatch {
                detail: format!(
                    "record ({} → {}) has μ-difference {} ≠ 1",
                    r.source,
                    r.target,
                    mu_shift + src.mu - tgt.mu
                ),
            });
        }
        if let Some(period) = f.group.period() {
            if mu_shift.rem_euclid(period) != 0 {
                return Err(FlowError::DegreeMismatch {
                    detail: format!(
                        "record ({} → {}) shifts the grading by {}, not a multiple of 2N = {}",
                        r.source, r.target, mu_shift, period
                    ),
                });
            }
        }
        let deg = f.group.reduce_degree(tgt.mu);
        let row_deg = f.group.reduce_degree(tgt.mu + 1);
        let row = complex
            .generators(row_deg)
            .iter()
            .position(|g| *g == r.source)
            .ok_or(FlowError::UnknownGenerator(r.source.clone()))?;
        let col = complex
            .generators(deg)
            .iter()
            .position(|g| *g == r.target)
            .ok_or(FlowError::UnknownGenerator(r.target.clone()))?;
        let weight = NovikovElement::monomial(count, f.group.energy_of(&r.g), truncation.clone());
        let m = complex.materialize_differential(deg);
        let updated = m.get(row, col).add(&weight);
        m.set(row, col, updated);
    }
    Ok(complex)
}

fn all_entry_valuations_nonnegative<I: IntScalar>(c: &NovikovComplex<I>) -> bool {
    use num_traits::Zero;
    let degrees: Vec<i64> = c.degrees().collect();
    degrees.iter().all(|&k| {
        let d = c.differential(k);
        (0..d.rows()).all(|i| {
            (0..d.cols()).all(|j| {
                d.get(i, j)
                    .valuation()
                    .map(|v| v >= crate::scalar::Rational::zero())
                    .unwrap_or(true)
            })
        })
    })
}

/// Per-pair rigid-count consistency: for every composable pair of
/// zero-label records, the Novikov-weighted sum over middle objects must
/// vanish. Equivalent to `d² = 0` of the assembled complex; witnesses are
/// the generator pairs whose triple sum fails.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct D2Report {
    pub ok: bool,
    pub witnesses: Vec<(String, String)>,
}

pub fn check_d_squared<I: IntScalar>(f: &FlowCategoryDesc<I>) -> Result<D2Report, FlowError> {
    let complex = assemble_unchecked(f, Truncation::Exact)?;
    let mut witnesses = Vec::new();
    let degrees: Vec<i64> = complex.degrees().collect();
    for &k in &degrees {
        let d1 = complex.differential(k);
        let d2 = complex.differential(complex.next_degree(k));
        if d1.is_zero() || d2.is_zero() {
            continue;
        }
        let prod = d2.mul_exact(&d1, Truncation::Exact);
        for i in 0..prod.rows() {
            for j in 0..prod.cols() {
                if !prod.get(i, j).is_zero() {
                    let from = complex.generators(complex.next_degree(complex.next_degree(k)))[i].clone();
                    let to = complex.generators(k)[j].clone();
                    witnesses.push((from, to));
                }
            }
        }
    }
    witnesses.sort();
    witnesses.dedup();
    Ok(D2Report { ok: witnesses.is_empty(), witnesses })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flowcat::desc::{FlowObject, MorphismRecord};
    use crate::novikov::NovikovGroupDesc;
    use crate::scalar::Rational;

    fn obj(id: &str, mu: i64, e: i64) -> FlowObject<i64> {
        FlowObject { id: id.into(), mu, energy: Rational::from_integer(e) }
    }

    fn rec(source: &str, target: &str, count: i64) -> MorphismRecord<i64> {
        MorphismRecord {
            source: source.into(),
            target: target.into(),
            g: vec![],
            label: LabelSize::Size(0),
            count: Some(count),
        }
    }

    #[test]
    fn single_pair_assembles() {
        let mut f = FlowCategoryDesc::new(NovikovGroupDesc::trivial());
        f.objects.push(obj("x", 1, 1));
        f.objects.push(obj("y", 0, 0));
        f.morphisms.push(rec("x", "y", 3));
        let c = assemble_complex(&f, Truncation::Exact).unwrap();
        let d = c.differential(0);
        assert_eq!(d.get(0, 0), &NovikovElement::from_integer(3, Truncation::Exact));
    }

    #[test]
    fn crafted_d_squared_failure() {
        let mut f = FlowCategoryDesc::new(NovikovGroupDesc::trivial());
        f.objects.push(obj("x", 2, 2));
        f.objects.push(obj("z", 1, 1));
        f.objects.push(obj("y", 0, 0));
        f.morphisms.push(rec("x", "z", 1));
        f.morphisms.push(rec("z", "y", 1));
        let err = assemble_complex(&f, Truncation::Exact).unwrap_err();
        assert!(matches!(err, FlowError::DSquaredNonzero { ref from, ref to } if from == "x" && to == "y"));
        let rep = check_d_squared(&f).unwrap();
        assert!(!rep.ok);
        assert_eq!(rep.witnesses, vec![("x".to_string(), "y".to_string())]);
    }

    #[test]
    fn zero_category_passes_d_squared() {
        let f: FlowCategoryDesc<i64> = FlowCategoryDesc::new(NovikovGroupDesc::trivial());
        assert!(check_d_squared(&f).unwrap().ok);
    }

    #[test]
    fn missing_count_reported() {
        let mut f = FlowCategoryDesc::new(NovikovGroupDesc::trivial());
        f.objects.push(obj("x", 1, 1));
        f.objects.push(obj("y", 0, 0));
        f.morphisms.push(MorphismRecord {
            source: "x".into(),
            target: "y".into(),
            g: vec![],
            label: LabelSize::Size(0),
            count: None,
        });
        assert!(matches!(
            assemble_complex(&f, Truncation::Exact),
            Err(FlowError::MissingCount { .. })
        ));
    }

    #[test]
    fn group_weight_lands_in_entry() {
        // Π = Z with E(gen) = 1/2, μ(gen) = 0; a record with g = (2) puts
        // T^1 on the entry.
        let group: NovikovGroupDesc<i64> = NovikovGroupDesc::new(vec![crate::scalar::rat(1, 2)], vec![0]);
        let mut f = FlowCategoryDesc::new(group);
        f.objects.push(obj("x", 1, 5));
        f.objects.push(obj("y", 0, 0));
        f.morphisms.push(MorphismRecord {
            source: "x".into(),
            target: "y".into(),
            g: vec![2],
            label: LabelSize::Size(0),
            count: Some(-1),
        });
        let c = assemble_complex(&f, Truncation::Exact).unwrap();
        let d = c.differential(0);
        let expected = NovikovElement::monomial(-1i64, crate::scalar::rat(1, 1), Truncation::Exact);
        assert_eq!(d.get(0, 0), &expected);
    }
}
