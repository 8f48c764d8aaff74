//! The Arnold lower bound check: objects per Π-orbit against the minimal
//! rank of the assembled complex's cohomology.

use crate::error::FlowError;
use crate::flowcat::assemble::assemble_complex;
use crate::flowcat::desc::{validate_category, FlowCategoryDesc};
use crate::novikov::{min_rank, nov_homology, GradedCohomology, Truncation};
use crate::scalar::IntScalar;

#[derive(Clone, Debug)]
pub struct ArnoldReport<I: IntScalar> {
    /// Generator count per Π-orbit (the fixed-point count analog).
    pub generator_count: usize,
    pub homology: GradedCohomology<I>,
    /// The constructive per-degree minimal rank.
    pub min_rank: usize,
    /// The coarser `Σ (k_f + k_t)` count.
    pub weak_min_rank: usize,
    /// `generator_count ≥ min_rank`; a violation signals inconsistent
    /// input data.
    pub satisfied: bool,
    /// Whether the realizing complex reproduced the cohomology.
    pub realizing_verified: bool,
}

pub fn arnold_check<I: IntScalar>(
    f: &FlowCategoryDesc<I>,
    truncation: Truncation<I>,
) -> Result<ArnoldReport<I>, FlowError> {
    let validation = validate_category(f);
    if !validation.is_valid() {
        return Err(FlowError::InvalidCategory {
            detail: format!("{} violations, first: {:?}", validation.violations.len(), validation.violations[0]),
        });
    }
    let complex = assemble_complex(f, truncation)?;
    let homology = nov_homology(&complex).map_err(FlowError::Novikov)?;
    let mr = min_rank(&homology).map_err(FlowError::Novikov)?;
    let generator_count = f.objects.len();
    Ok(ArnoldReport {
        generator_count,
        homology,
        min_rank: mr.bound,
        weak_min_rank: mr.weak_bound,
        satisfied: generator_count >= mr.bound,
        realizing_verified: mr.verified,
    })
}
