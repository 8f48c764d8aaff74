//! Flow-category descriptions: graded, energy-decorated objects with a
//! free Π-action, morphism records keyed on orbit representatives, and the
//! label-set composition of broken trajectories.

#[allow(unused_imports)]
use num_traits::{Signed as _, Zero as _};
use std::collections::HashMap;

use crate::novikov::NovikovGroupDesc;
use crate::scalar::{IntScalar, Rational};

/// One Π-orbit representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlowObject<I: IntScalar> {
    pub id: String,
    pub mu: i64,
    pub energy: Rational<I>,
}

/// Size of the label set `S_{C(x,y)}`; `Bullet` is the empty morphism
/// object.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LabelSize {
    Bullet,
    Size(usize),
}

/// Morphism data for the pair `(g·source, target)` of actual objects:
/// the record describes `C(g·x̃, ỹ)` where `x̃, ỹ` are the representatives
/// named by `source` and `target`. Equivariance makes this determine the
/// whole orbit of the pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismRecord<I: IntScalar> {
    pub source: String,
    pub target: String,
    /// Element of Π in the group basis.
    pub g: Vec<I>,
    pub label: LabelSize,
    /// Signed rigid count; meaningful exactly when the μ-difference is 1.
    pub count: Option<I>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CategoryFlags {
    pub proper: bool,
    pub e_proper: bool,
    pub e_positive: bool,
    pub gapped: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FlowCategoryDesc<I: IntScalar> {
    pub group: NovikovGroupDesc<I>,
    pub objects: Vec<FlowObject<I>>,
    pub morphisms: Vec<MorphismRecord<I>>,
    pub flags: CategoryFlags,
}

impl<I: IntScalar> FlowCategoryDesc<I> {
    pub fn new(group: NovikovGroupDesc<I>) -> Self {
        FlowCategoryDesc {
            group,
            objects: Vec::new(),
            morphisms: Vec::new(),
            flags: CategoryFlags { proper: true, e_proper: true, e_positive: true, gapped: true },
        }
    }

    pub fn object(&self, id: &str) -> Option<&FlowObject<I>> {
        self.objects.iter().find(|o| o.id == id)
    }

    pub fn object_index(&self) -> HashMap<&str, &FlowObject<I>> {
        self.objects.iter().map(|o| (o.id.as_str(), o)).collect()
    }

    /// Grading of the actual source object `g·x̃` (the chosen convention
    /// `μ(g·x) = μ(g) + μ(x)`).
    pub fn source_mu(&self, r: &MorphismRecord<I>) -> Option<i64> {
        Some(self.group.grading_of(&r.g) + self.object(&r.source)?.mu)
    }

    /// Energy of the actual source object `g·x̃`.
    pub fn source_energy(&self, r: &MorphismRecord<I>) -> Option<Rational<I>> {
        Some(self.group.energy_of(&r.g) + self.object(&r.source)?.energy.clone())
    }

    /// Full subcategory on the given object ids (records among them kept).
    pub fn restrict(&self, ids: &[String]) -> FlowCategoryDesc<I> {
        let keep: std::collections::HashSet<&str> = ids.iter().map(|s| s.as_str()).collect();
        FlowCategoryDesc {
            group: self.group.clone(),
            objects: self.objects.iter().filter(|o| keep.contains(o.id.as_str())).cloned().collect(),
            morphisms: self
                .morphisms
                .iter()
                .filter(|m| keep.contains(m.source.as_str()) && keep.contains(m.target.as_str()))
                .cloned()
                .collect(),
            flags: self.flags,
        }
    }
}

/// Composition `S_{xy} ⊔ S_{yz} ↪ S_{xz}` of label sets: the target has
/// size `r1 + r2 + 1` and the image misses exactly the breaking label
/// `r1 + 1`, matching the separator of the stratum composition
/// `S(S_1, S_2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelComposition {
    pub target_size: usize,
    /// `injection[i]` is the image of label `i+1` of the concatenated
    /// source `[r1] ⊔ [r2]`.
    pub injection: Vec<usize>,
    pub missing: usize,
}

pub fn compose_label_sets(r1: usize, r2: usize) -> LabelComposition {
    let target_size = r1 + r2 + 1;
    let mut injection = Vec::with_capacity(r1 + r2);
    for i in 1..=r1 {
        injection.push(i);
    }
    for j in 1..=r2 {
        injection.push(r1 + 1 + j);
    }
    LabelComposition { target_size, injection, missing: r1 + 1 }
}

/// A single validation finding.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    UnknownObject { id: String },
    DuplicateObject { id: String },
    GroupRankMismatch { source: String, target: String },
    IdentityRecord { id: String },
    DuplicateRecord { source: String, target: String },
    LabelSizeMismatch { source: String, target: String, expected: i64, got: LabelSize },
    BulletWithCount { source: String, target: String },
    MissingCount { source: String, target: String },
    EPositivityViolated { source: String, target: String },
    GradingSkew { source: String, target: String },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Structural checks: identity-object convention, label sizes against
/// gradings, counts where the μ-difference is one, E-positivity when
/// flagged. Records are stored per orbit pair, so Π-equivariance is
/// structural; duplicates would make the counts orbit-ambiguous and are
/// reported.
pub fn validate_category<I: IntScalar>(f: &FlowCategoryDesc<I>) -> ValidationReport {
    let mut report = ValidationReport::default();
    let mut ids = std::collections::HashSet::new();
    for o in &f.objects {
        if !ids.insert(o.id.as_str()) {
            report.violations.push(Violation::DuplicateObject { id: o.id.clone() });
        }
    }
    let mut seen = std::collections::HashSet::new();
    for r in &f.morphisms {
        let src = f.object(&r.source);
        let tgt = f.object(&r.target);
        if src.is_none() {
            report.violations.push(Violation::UnknownObject { id: r.source.clone() });
        }
        if tgt.is_none() {
            report.violations.push(Violation::UnknownObject { id: r.target.clone() });
        }
        let (src, tgt) = match (src, tgt) {
            (Some(s), Some(t)) => (s, t),
            _ => continue,
        };
        if r.g.len() != f.group.rank() {
            report.violations.push(Violation::GroupRankMismatch {
                source: r.source.clone(),
                target: r.target.clone(),
            });
            continue;
        }
        let g_is_zero = r.g.iter().all(|c| c.is_zero());
        if r.source == r.target && g_is_zero {
            // Morphisms from x̃ to x̃ are the unit object; they are never
            // recorded explicitly.
            report.violations.push(Violation::IdentityRecord { id: r.source.clone() });
            continue;
        }
        let key = (r.source.clone(), r.target.clone(), format!("{:?}", r.g));
        if !seen.insert(key) {
            report.violations.push(Violation::DuplicateRecord {
                source: r.source.clone(),
                target: r.target.clone(),
            });
        }
        let expected = f.group.grading_of(&r.g) + src.mu - tgt.mu - 1;
        match r.label {
            LabelSize::Bullet => {
                if r.count.is_some() {
                    report.violations.push(Violation::BulletWithCount {
                        source: r.source.clone(),
                        target: r.target.clone(),
                    });
                }
            }
            LabelSize::Size(s) => {
                if expected < 0 || s as i64 != expected {
                    report.violations.push(Violation::LabelSizeMismatch {
                        source: r.source.clone(),
                        target: r.target.clone(),
                        expected,
                        got: r.label,
                    });
                }
                if expected == 0 && r.count.is_none() {
                    report.violations.push(Violation::MissingCount {
                        source: r.source.clone(),
                        target: r.target.clone(),
                    });
                }
                if f.flags.e_positive {
                    let e_src = f.group.energy_of(&r.g) + src.energy.clone();
                    if e_src <= tgt.energy {
                        report.violations.push(Violation::EPositivityViolated {
                            source: r.source.clone(),
                            target: r.target.clone(),
                        });
                    }
                }
                // The single-variable model stores one generator per orbit
                // in one residue degree; a record whose group part shifts
                // the grading by something not divisible by 2N cannot land
                // in a stored block.
                if let Some(period) = f.group.period() {
                    if f.group.grading_of(&r.g).rem_euclid(period) != 0 {
                        report.violations.push(Violation::GradingSkew {
                            source: r.source.clone(),
                            target: r.target.clone(),
                        });
                    }
                }
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn simple_category() -> FlowCategoryDesc<i64> {
        let mut f = FlowCategoryDesc::new(NovikovGroupDesc::trivial());
        f.objects.push(FlowObject { id: "x".into(), mu: 1, energy: Rational::from_integer(1) });
        f.objects.push(FlowObject { id: "y".into(), mu: 0, energy: Rational::from_integer(0) });
        f.morphisms.push(MorphismRecord {
            source: "x".into(),
            target: "y".into(),
            g: vec![],
            label: LabelSize::Size(0),
            count: Some(3),
        });
        f
    }

    #[test]
    fn compose_label_sets_examples() {
        let c = compose_label_sets(0, 0);
        assert_eq!((c.target_size, c.missing), (1, 1));
        assert!(c.injection.is_empty());

        let c = compose_label_sets(1, 0);
        assert_eq!((c.target_size, c.missing), (2, 2));
        assert_eq!(c.injection, vec![1]);

        let c = compose_label_sets(2, 3);
        assert_eq!((c.target_size, c.missing), (6, 3));
        assert_eq!(c.injection, vec![1, 2, 4, 5, 6]);
    }

    #[test]
    fn compose_label_sets_injective_missing_one() {
        for r1 in 0..=5 {
            for r2 in 0..=5 {
                let c = compose_label_sets(r1, r2);
                let mut seen = std::collections::HashSet::new();
                for &v in &c.injection {
                    assert!(v >= 1 && v <= c.target_size);
                    assert!(seen.insert(v));
                }
                assert_eq!(c.injection.len(), c.target_size - 1);
                assert!(!seen.contains(&c.missing));
            }
        }
    }

    #[test]
    fn compose_label_sets_associative() {
        // Composing (r1, r2) then with r3 matches composing r1 with (r2, r3):
        // both miss {r1+1, r1+r2+2} inside [r1+r2+r3+2].
        for r1 in 0..=5 {
            for r2 in 0..=5 {
                for r3 in 0..=5 {
                    let left = {
                        let first = compose_label_sets(r1, r2);
                        compose_label_sets(first.target_size, r3)
                    };
                    let right = {
                        let second = compose_label_sets(r2, r3);
                        compose_label_sets(r1, second.target_size)
                    };
                    assert_eq!(left.target_size, right.target_size);
                    // Missing labels of the flattened composition:
                    let miss_left = {
                        let first = compose_label_sets(r1, r2);
                        let outer = compose_label_sets(first.target_size, r3);
                        let mut m = vec![outer.missing];
                        // first.missing sits inside the first block, mapped
                        // identically by the outer injection.
                        m.push(first.missing);
                        m.sort();
                        m
                    };
                    let miss_right = {
                        let second = compose_label_sets(r2, r3);
                        let outer = compose_label_sets(r1, second.target_size);
                        let mut m = vec![outer.missing];
                        // second's missing label shifts by r1 + 1.
                        m.push(second.missing + r1 + 1);
                        m.sort();
                        m
                    };
                    assert_eq!(miss_left, miss_right, "r = ({}, {}, {})", r1, r2, r3);
                }
            }
        }
    }

    #[test]
    fn validate_accepts_simple_category() {
        assert!(validate_category(&simple_category()).is_valid());
    }

    #[test]
    fn validate_rejects_label_size_mismatch() {
        let mut f = simple_category();
        f.morphisms[0].label = LabelSize::Size(2);
        let rep = validate_category(&f);
        assert!(rep.violations.iter().any(|v| matches!(v, Violation::LabelSizeMismatch { .. })));
    }

    #[test]
    fn validate_rejects_identity_record() {
        let mut f = simple_category();
        f.morphisms.push(MorphismRecord {
            source: "x".into(),
            target: "x".into(),
            g: vec![],
            label: LabelSize::Size(0),
            count: Some(1),
        });
        let rep = validate_category(&f);
        assert!(rep.violations.iter().any(|v| matches!(v, Violation::IdentityRecord { .. })));
    }

    #[test]
    fn validate_flags_e_positivity() {
        let mut f = simple_category();
        f.objects[0].energy = Rational::from_integer(0); // E(x) = E(y) = 0
        let rep = validate_category(&f);
        assert!(rep.violations.iter().any(|v| matches!(v, Violation::EPositivityViolated { .. })));
    }
}
