//! Graded cochain complexes of free modules over the truncated Novikov
//! ring, their cohomology, and the minimal-rank bound.

use std::collections::BTreeMap;

use crate::error::NovikovError;
use crate::novikov::diag::diagonalize;
use crate::novikov::element::{NovikovElement, Truncation};
use crate::novikov::matrix::NovikovMatrix;
#[allow(unused_imports)]
use num_integer::Integer as _;
#[allow(unused_imports)]
use num_traits::{One as _, Signed as _, Zero as _};
use crate::scalar::{IntScalar, Rational};

/// A Novikov group `(Π, E, μ)` on a fixed basis of `Π ≅ ℤ^rank`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NovikovGroupDesc<I: IntScalar> {
    rank: usize,
    energy: Vec<Rational<I>>,
    grading: Vec<i64>,
    n: u32,
}

impl<I: IntScalar> NovikovGroupDesc<I> {
    /// `N` is derived: the positive generator of `μ(Π)`, or 0 when `μ ≡ 0`.
    pub fn new(energy: Vec<Rational<I>>, grading: Vec<i64>) -> Self {
        assert_eq!(energy.len(), grading.len(), "energy and grading must have equal length");
        let mut n: i64 = 0;
        for &g in &grading {
            n = num_integer::gcd(n, g.abs());
        }
        NovikovGroupDesc { rank: energy.len(), energy, grading, n: n as u32 }
    }

    /// Trivial group (rank 0, Z-graded).
    pub fn trivial() -> Self {
        Self::new(Vec::new(), Vec::new())
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn energy_gens(&self) -> &[Rational<I>] {
        &self.energy
    }

    pub fn grading_gens(&self) -> &[i64] {
        &self.grading
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Grading period `2N`, `None` when Z-graded.
    pub fn period(&self) -> Option<i64> {
        if self.n == 0 {
            None
        } else {
            Some(2 * self.n as i64)
        }
    }

    pub fn reduce_degree(&self, k: i64) -> i64 {
        match self.period() {
            Some(p) => k.rem_euclid(p),
            None => k,
        }
    }

    pub fn energy_of(&self, g: &[I]) -> Rational<I> {
        assert_eq!(g.len(), self.rank, "group element has wrong rank");
        let mut acc = Rational::zero();
        for (c, e) in g.iter().zip(&self.energy) {
            acc = acc + Rational::from_integer(c.clone()) * e.clone();
        }
        acc
    }

    pub fn grading_of(&self, g: &[I]) -> i64 {
        assert_eq!(g.len(), self.rank, "group element has wrong rank");
        let mut acc: i64 = 0;
        for (c, m) in g.iter().zip(&self.grading) {
            acc += c.to_i64().expect("grading coefficient fits in i64") * m;
        }
        acc
    }
}

/// Cochain complex of free modules over the truncated Novikov ring.
///
/// Degrees live in `Z` (N = 0) or in `Z/2N`; `differentials[k]` is the map
/// `C^k → C^{k+1 (mod 2N)}` with rows indexed by the target generators.
#[derive(Clone, Debug, PartialEq)]
pub struct NovikovComplex<I: IntScalar> {
    pub group: NovikovGroupDesc<I>,
    pub truncation: Truncation<I>,
    degrees: BTreeMap<i64, Vec<String>>,
    differentials: BTreeMap<i64, NovikovMatrix<I>>,
    lambda0: bool,
}

impl<I: IntScalar> NovikovComplex<I> {
    pub fn new(group: NovikovGroupDesc<I>, truncation: Truncation<I>) -> Self {
        NovikovComplex { group, truncation, degrees: BTreeMap::new(), differentials: BTreeMap::new(), lambda0: false }
    }

    pub fn add_generator(&mut self, degree: i64, name: impl Into<String>) {
        let degree = self.group.reduce_degree(degree);
        self.degrees.entry(degree).or_default().push(name.into());
        // Stored differentials touching this degree gain a column (the
        // outgoing map) or a row (the incoming one).
        let out_rows = self.rank_at(self.next_degree(degree));
        let out_cols = self.rank_at(degree);
        if let Some(m) = self.differentials.get_mut(&degree) {
            *m = m.resized(out_rows, out_cols);
        }
        let prev = self.prev_degree(degree);
        if prev != degree {
            let in_rows = self.rank_at(degree);
            let in_cols = self.rank_at(prev);
            if let Some(m) = self.differentials.get_mut(&prev) {
                *m = m.resized(in_rows, in_cols);
            }
        }
    }

    pub fn generators(&self, degree: i64) -> &[String] {
        static EMPTY: Vec<String> = Vec::new();
        self.degrees.get(&self.group.reduce_degree(degree)).map(|v| v.as_slice()).unwrap_or(&EMPTY)
    }

    pub fn degrees(&self) -> impl Iterator<Item = i64> + '_ {
        self.degrees.keys().copied()
    }

    pub fn rank_at(&self, degree: i64) -> usize {
        self.generators(degree).len()
    }

    pub fn total_rank(&self) -> usize {
        self.degrees.values().map(|v| v.len()).sum()
    }

    pub fn next_degree(&self, k: i64) -> i64 {
        self.group.reduce_degree(k + 1)
    }

    pub fn prev_degree(&self, k: i64) -> i64 {
        self.group.reduce_degree(k - 1)
    }

    pub fn is_lambda0(&self) -> bool {
        self.lambda0
    }

    pub fn set_lambda0(&mut self, flag: bool) {
        self.lambda0 = flag;
    }

    /// Install `d^k: C^k → C^{k+1}`; shape must match the generator lists.
    pub fn set_differential(&mut self, k: i64, m: NovikovMatrix<I>) -> Result<(), NovikovError> {
        let k = self.group.reduce_degree(k);
        let rows = self.rank_at(self.next_degree(k));
        let cols = self.rank_at(k);
        if m.rows() != rows || m.cols() != cols {
            return Err(NovikovError::ShapeMismatch {
                detail: format!("d^{} must be {}×{}, got {}×{}", k, rows, cols, m.rows(), m.cols()),
            });
        }
        self.differentials.insert(k, m.truncated(self.truncation.clone()));
        Ok(())
    }

    /// The differential out of degree `k` (zero matrix when unset).
    pub fn differential(&self, k: i64) -> NovikovMatrix<I> {
        let k = self.group.reduce_degree(k);
        match self.differentials.get(&k) {
            Some(m) => m.clone(),
            None => NovikovMatrix::zero(self.rank_at(self.next_degree(k)), self.rank_at(k), self.truncation.clone()),
        }
    }

    pub fn differential_mut(&mut self, k: i64) -> Option<&mut NovikovMatrix<I>> {
        let k = self.group.reduce_degree(k);
        self.differentials.get_mut(&k)
    }

    /// Force a (possibly zero) stored matrix at degree `k` so it can be
    /// edited in place.
    pub fn materialize_differential(&mut self, k: i64) -> &mut NovikovMatrix<I> {
        let k = self.group.reduce_degree(k);
        let m = self.differential(k);
        self.differentials.entry(k).or_insert(m)
    }

    /// Degrees whose outgoing differential must be checked: all stored
    /// generator degrees (wrap-around included for `N > 0`).
    fn active_degrees(&self) -> Vec<i64> {
        self.degrees.keys().copied().collect()
    }

    /// First witness of `d∘d ≠ 0` at the truncation, as
    /// `(degree, generator hit, generator applied)`.
    pub fn d_squared_witness(&self) -> Option<(i64, String, String)> {
        for &k in self.degrees.keys() {
            let d1 = self.differential(k);
            let d2 = self.differential(self.next_degree(k));
            if d1.is_zero() || d2.is_zero() {
                continue;
            }
            let prod = d2.mul_exact(&d1, self.truncation.clone());
            for i in 0..prod.rows() {
                for j in 0..prod.cols() {
                    if !prod.get(i, j).is_zero() {
                        let target_deg = self.next_degree(self.next_degree(k));
                        let x = self.generators(target_deg)[i].clone();
                        let y = self.generators(k)[j].clone();
                        return Some((k, x, y));
                    }
                }
            }
        }
        None
    }

    /// `d∘d = 0` at the truncation; on failure names a witness pair.
    pub fn check_d_squared(&self) -> Result<(), NovikovError> {
        match self.d_squared_witness() {
            None => Ok(()),
            Some((k, x, y)) => Err(NovikovError::NotAComplex {
                degree: k,
                detail: format!("d²({}) has nonzero coefficient on {}", y, x),
            }),
        }
    }
}

/// Per-degree cohomology: free rank and torsion divisors `d_i ≥ 2` with
/// `d_i | d_{i+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyGroup<I: IntScalar> {
    pub free_rank: usize,
    pub torsion: Vec<I>,
}

impl<I: IntScalar> CohomologyGroup<I> {
    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

/// Graded cohomology `H^k ≃ Λ^{k_f} ⊕ ⊕_i Λ/(d^{k,i})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedCohomology<I: IntScalar> {
    /// `N`: 0 means Z-graded, otherwise degrees are modulo `2N`.
    pub n: u32,
    pub groups: BTreeMap<i64, CohomologyGroup<I>>,
}

impl<I: IntScalar> GradedCohomology<I> {
    pub fn new(n: u32) -> Self {
        GradedCohomology { n, groups: BTreeMap::new() }
    }

    pub fn set(&mut self, degree: i64, free_rank: usize, torsion: Vec<i64>) {
        self.groups.insert(
            degree,
            CohomologyGroup { free_rank, torsion: torsion.into_iter().map(crate::scalar::int).collect() },
        );
    }

    pub fn group(&self, degree: i64) -> CohomologyGroup<I> {
        self.groups.get(&degree).cloned().unwrap_or(CohomologyGroup { free_rank: 0, torsion: Vec::new() })
    }

    /// Drop trivial degrees (for equality tests).
    pub fn normalized(&self) -> Self {
        let groups = self.groups.iter().filter(|(_, g)| !g.is_trivial()).map(|(k, g)| (*k, g.clone())).collect();
        GradedCohomology { n: self.n, groups }
    }

    /// The divisibility invariant `d_i | d_{i+1}`, all `≥ 2`.
    pub fn divisibility_ok(&self) -> bool {
        self.groups.values().all(|g| {
            g.torsion.iter().all(|d| *d >= crate::scalar::int(2))
                && g.torsion.windows(2).all(|w| (w[1].clone() % w[0].clone()).is_zero())
        })
    }
}

/// Cohomology of a Novikov complex by diagonalizing consecutive
/// differentials. `H^k` has free rank `n_k − rank d^k − rank d^{k−1}` and
/// torsion the invariant factors of `d^{k−1}` exceeding 1.
pub fn nov_homology<I: IntScalar>(c: &NovikovComplex<I>) -> Result<GradedCohomology<I>, NovikovError> {
    c.check_d_squared()?;
    let mut ranks: BTreeMap<i64, (usize, Vec<I>)> = BTreeMap::new();
    for k in c.active_degrees() {
        let d = c.differential(k);
        if d.is_zero() {
            ranks.insert(k, (0, Vec::new()));
            continue;
        }
        let dg = diagonalize(&d)?;
        ranks.insert(k, (dg.rank(), dg.torsion()));
    }
    let mut h = GradedCohomology::new(c.group.n());
    for k in c.active_degrees() {
        let n_k = c.rank_at(k);
        let out_rank = ranks.get(&k).map(|(r, _)| *r).unwrap_or(0);
        let prev = c.prev_degree(k);
        let (in_rank, torsion) = ranks.get(&prev).cloned().unwrap_or((0, Vec::new()));
        let free_rank = n_k
            .checked_sub(out_rank + in_rank)
            .ok_or_else(|| NovikovError::ShapeMismatch {
                detail: format!("rank bookkeeping failed at degree {}", k),
            })?;
        h.groups.insert(k, CohomologyGroup { free_rank, torsion });
    }
    Ok(h)
}

/// Result of the minimal-rank computation.
#[derive(Clone, Debug)]
pub struct MinRankReport<I: IntScalar> {
    /// The constructive per-degree bound `Σ_k (k_f + t_k + t_{k−1})`.
    pub bound: usize,
    /// The coarser count `Σ_k (k_f + k_t)`.
    pub weak_bound: usize,
    /// A free complex over Z realizing the cohomology with `bound`
    /// generators.
    pub realizing: NovikovComplex<I>,
    /// Whether the realizing complex was re-checked to have cohomology
    /// equal to the input.
    pub verified: bool,
}

/// Least generator count of a free cochain complex with the prescribed
/// cohomology, together with a realizing complex: one generator per free
/// class, one two-generator pair (degrees `k−1 → k`, differential `d`) per
/// torsion class `Λ/(d)` of `H^k`. Degree arithmetic wraps mod `2N`.
pub fn min_rank<I: IntScalar>(h: &GradedCohomology<I>) -> Result<MinRankReport<I>, NovikovError> {
    let grading = if h.n == 0 { Vec::new() } else { vec![h.n as i64] };
    let energy = if h.n == 0 { Vec::new() } else { vec![Rational::zero()] };
    let group = NovikovGroupDesc::new(energy, grading);

    let mut realizing = NovikovComplex::new(group.clone(), Truncation::Exact);
    // Per-degree generators: free classes and torsion targets at k, the
    // matching torsion sources at k−1.
    let mut weak_bound = 0usize;
    for (&k, g) in &h.groups {
        weak_bound += g.free_rank + g.torsion.len();
        for i in 0..g.free_rank {
            realizing.add_generator(k, format!("f{}_{}", k, i));
        }
        for i in 0..g.torsion.len() {
            realizing.add_generator(k, format!("t{}_{}", k, i));
            realizing.add_generator(group.reduce_degree(k - 1), format!("s{}_{}", k, i));
        }
    }
    let bound = realizing.total_rank();

    fill_torsion_differentials(&mut realizing, &h.groups)?;

    let computed = nov_homology(&realizing)?;
    let verified = computed.normalized() == h.normalized();

    Ok(MinRankReport { bound, weak_bound, realizing, verified })
}

fn fill_torsion_differentials<I: IntScalar>(
    realizing: &mut NovikovComplex<I>,
    groups: &BTreeMap<i64, CohomologyGroup<I>>,
) -> Result<(), NovikovError> {
    let degrees: Vec<i64> = realizing.degrees().collect();
    for &k in &degrees {
        let tgt = realizing.next_degree(k);
        let rows = realizing.rank_at(tgt);
        let cols = realizing.rank_at(k);
        if rows == 0 || cols == 0 {
            continue;
        }
        let mut m = NovikovMatrix::zero(rows, cols, Truncation::Exact);
        let mut any = false;
        if let Some(g) = groups.get(&tgt) {
            for (i, d) in g.torsion.iter().enumerate() {
                let src_name = format!("s{}_{}", tgt, i);
                let tgt_name = format!("t{}_{}", tgt, i);
                let col = realizing.generators(k).iter().position(|nm| *nm == src_name);
                let row = realizing.generators(tgt).iter().position(|nm| *nm == tgt_name);
                if let (Some(col), Some(row)) = (col, row) {
                    m.set(row, col, NovikovElement::monomial(d.clone(), Rational::zero(), Truncation::Exact));
                    any = true;
                }
            }
        }
        if any {
            realizing.set_differential(k, m)?;
        }
    }
    Ok(())
}
