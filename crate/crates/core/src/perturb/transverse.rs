//! Stratumwise transversality checking, signed zero counts, and the
//! boundary-consistency check for one-dimensional zero sets.
//!
//! Zeros are isolated by dyadic subdivision with an interval exclusion
//! test and polished by Newton iteration to residual < 1e−12; duplicates
//! merge within 1e−8. Rank decisions use singular values against the
//! caller's tolerance. Polynomial data stays exact rational throughout;
//! floats only enter here.

#[allow(unused_imports)]
use num_traits::Zero as _;

use crate::error::PerturbError;
use crate::perturb::extend::SectionOnBox;
use crate::perturb::numeric;
use crate::perturb::poly::Poly;
use crate::scalar::{IntScalar, Rational};

const NEWTON_RESIDUAL: f64 = 1e-12;
const MERGE_TOL: f64 = 1e-8;
const DOMAIN_SLACK: f64 = 1e-9;
const MAX_BOXES: usize = 200_000;
const MIN_BOX_WIDTH: f64 = 1e-6;

/// Report for one stratum `T ⊆ [ℓ]`.
#[derive(Clone, Debug)]
pub struct StratumReport {
    pub stratum: u32,
    pub dim: usize,
    /// Isolated zeros (ambient coordinates), populated when the zero set
    /// is zero-dimensional.
    pub zeros: Vec<Vec<f64>>,
    pub transverse: bool,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct TransversalityReport {
    pub strata: Vec<StratumReport>,
    pub all_transverse: bool,
}

/// A restricted section: some ambient variables pinned to exact values,
/// the rest active over their box ranges.
struct Face<I: IntScalar> {
    ambient_dim: usize,
    corner_dim: usize,
    active: Vec<usize>,
    pinned: Vec<(usize, f64)>,
    components: Vec<Poly<I>>,
    partials: Vec<Vec<Poly<I>>>,
}

impl<I: IntScalar> Face<I> {
    /// The closed stratum `U(T)` of the box.
    fn stratum(section: &SectionOnBox<I>, mask: u32) -> Self {
        let mut components = section.map.components.clone();
        let mut active = Vec::new();
        let mut pinned = Vec::new();
        for j in 0..section.corner_dim {
            if (mask >> j) & 1 == 1 {
                active.push(j);
            } else {
                components = components.iter().map(|p| p.set_var_zero(j)).collect();
                pinned.push((j, 0.0));
            }
        }
        for j in 0..section.free_dim {
            active.push(section.corner_dim + j);
        }
        Face::finish(section, components, active, pinned)
    }

    /// A wall of this face: one more variable pinned to an endpoint value
    /// (exact integer: 0 or ±1).
    fn pin_wall(&self, _section: &SectionOnBox<I>, var: usize, value: i64) -> Self {
        let r = Rational::from_integer(crate::scalar::int::<I>(value));
        let components: Vec<Poly<I>> =
            self.components.iter().map(|p| p.set_var_const(var, &r)).collect();
        let active = self.active.iter().copied().filter(|&v| v != var).collect();
        let mut pinned = self.pinned.clone();
        pinned.push((var, value as f64));
        Face {
            ambient_dim: self.ambient_dim,
            corner_dim: self.corner_dim,
            active,
            pinned,
            components: components.clone(),
            partials: Face::<I>::partials_of(&components, &self.active.iter().copied().filter(|&v| v != var).collect::<Vec<_>>()),
        }
    }

    fn finish(
        section: &SectionOnBox<I>,
        components: Vec<Poly<I>>,
        active: Vec<usize>,
        pinned: Vec<(usize, f64)>,
    ) -> Self {
        let partials = Face::<I>::partials_of(&components, &active);
        Face {
            ambient_dim: section.dim(),
            corner_dim: section.corner_dim,
            active,
            pinned,
            components,
            partials,
        }
    }

    fn partials_of(components: &[Poly<I>], active: &[usize]) -> Vec<Vec<Poly<I>>> {
        components.iter().map(|p| active.iter().map(|&v| p.partial(v)).collect()).collect()
    }

    fn dim(&self) -> usize {
        self.active.len()
    }

    fn out_dim(&self) -> usize {
        self.components.len()
    }

    /// Domain interval of an ambient variable.
    fn var_range(&self, v: usize) -> (f64, f64) {
        if v < self.corner_dim {
            (0.0, 1.0)
        } else {
            (-1.0, 1.0)
        }
    }

    fn full_domain(&self) -> Vec<(f64, f64)> {
        let mut box_ = vec![(0.0, 0.0); self.ambient_dim];
        for &(v, value) in &self.pinned {
            box_[v] = (value, value);
        }
        for &v in &self.active {
            box_[v] = self.var_range(v);
        }
        box_
    }

    fn point_from_active(&self, x: &[f64]) -> Vec<f64> {
        let mut p = vec![0.0; self.ambient_dim];
        for &(v, value) in &self.pinned {
            p[v] = value;
        }
        for (k, &v) in self.active.iter().enumerate() {
            p[v] = x[k];
        }
        p
    }

    fn eval(&self, ambient: &[f64]) -> Vec<f64> {
        self.components.iter().map(|p| p.eval_f64(ambient)).collect()
    }

    fn jacobian(&self, ambient: &[f64]) -> Vec<Vec<f64>> {
        self.partials.iter().map(|row| row.iter().map(|p| p.eval_f64(ambient)).collect()).collect()
    }

    fn in_domain(&self, ambient: &[f64]) -> bool {
        self.active.iter().all(|&v| {
            let (lo, hi) = self.var_range(v);
            ambient[v] >= lo - DOMAIN_SLACK && ambient[v] <= hi + DOMAIN_SLACK
        })
    }

    /// Newton polishing from a start point (active coordinates); for
    /// underdetermined systems takes Gauss–Newton steps.
    fn newton(&self, start: &[f64]) -> Option<Vec<f64>> {
        let n = self.dim();
        let c = self.out_dim();
        let mut x = start.to_vec();
        for _ in 0..60 {
            let ambient = self.point_from_active(&x);
            let f = self.eval(&ambient);
            let res: f64 = f.iter().map(|v| v * v).sum::<f64>().sqrt();
            if res < NEWTON_RESIDUAL {
                return Some(x);
            }
            let j = self.jacobian(&ambient);
            let step = if c == n {
                numeric::solve(&j, &f.iter().map(|v| -v).collect::<Vec<_>>())?
            } else {
                let mut jtj = vec![vec![0.0; n]; n];
                let mut jtf = vec![0.0; n];
                for a in 0..n {
                    for b in 0..n {
                        jtj[a][b] = (0..c).map(|r| j[r][a] * j[r][b]).sum();
                    }
                    jtf[a] = -(0..c).map(|r| j[r][a] * f[r]).sum::<f64>();
                }
                numeric::solve(&jtj, &jtf)?
            };
            for (xi, di) in x.iter_mut().zip(&step) {
                *xi += di;
            }
            if step.iter().map(|v| v * v).sum::<f64>().sqrt() > 1e6 {
                return None;
            }
        }
        None
    }

    /// Isolate all zeros on the closed face when they are isolated points.
    fn isolated_zeros(&self) -> Result<Vec<Vec<f64>>, PerturbError> {
        if self.dim() == 0 {
            // A single point: evaluate exactly.
            let point: Vec<Rational<I>> = {
                let mut p = vec![Rational::zero(); self.ambient_dim];
                for &(v, value) in &self.pinned {
                    p[v] = Rational::from_integer(crate::scalar::int(value as i64));
                }
                p
            };
            let all_zero = self.components.iter().all(|c| c.eval_exact(&point).is_zero());
            return Ok(if all_zero { vec![self.point_from_active(&[])] } else { Vec::new() });
        }
        let mut zeros: Vec<Vec<f64>> = Vec::new();
        let mut stack = vec![self.full_domain()];
        let mut processed = 0usize;
        while let Some(box_) = stack.pop() {
            processed += 1;
            if processed > MAX_BOXES {
                return Err(PerturbError::BudgetExceeded {
                    detail: "subdivision box budget exhausted while isolating zeros".into(),
                });
            }
            if self.components.iter().any(|p| {
                let (lo, hi) = p.eval_interval(&box_);
                lo > 0.0 || hi < 0.0
            }) {
                continue;
            }
            let (v, w) = self
                .active
                .iter()
                .map(|&v| (v, box_[v].1 - box_[v].0))
                .max_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
                .expect("active variables exist");
            if w < MIN_BOX_WIDTH {
                let center: Vec<f64> =
                    self.active.iter().map(|&v| 0.5 * (box_[v].0 + box_[v].1)).collect();
                if let Some(z) = self.newton(&center) {
                    let ambient = self.point_from_active(&z);
                    if self.in_domain(&ambient) {
                        let already = zeros.iter().any(|seen| {
                            seen.iter().zip(&ambient).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
                                < MERGE_TOL
                        });
                        if !already {
                            zeros.push(ambient);
                        }
                        continue;
                    }
                }
                return Err(PerturbError::BudgetExceeded {
                    detail: format!("cannot isolate a zero near box {:?}", box_),
                });
            }
            let mid = box_[v].0 + 0.5 * w;
            let mut lo_box = box_.clone();
            lo_box[v] = (box_[v].0, mid);
            let mut hi_box = box_;
            hi_box[v] = (mid, mid + 0.5 * w);
            stack.push(lo_box);
            stack.push(hi_box);
        }
        zeros.sort_by(|a, b| a.partial_cmp(b).unwrap());
        Ok(zeros)
    }

    /// Prove full rank of the Jacobian along the zero set by interval
    /// minors on every box the exclusion test cannot discard.
    fn rank_certified_on_zero_set(&self, tol: f64) -> Result<bool, PerturbError> {
        let c = self.out_dim();
        let mut stack = vec![(self.full_domain(), 0usize)];
        let mut processed = 0usize;
        while let Some((box_, depth)) = stack.pop() {
            processed += 1;
            if processed > MAX_BOXES {
                return Err(PerturbError::BudgetExceeded {
                    detail: "box budget exhausted while certifying rank along the zero set".into(),
                });
            }
            if self.components.iter().any(|p| {
                let (lo, hi) = p.eval_interval(&box_);
                lo > 0.0 || hi < 0.0
            }) {
                continue;
            }
            if self.some_minor_excludes_zero(&box_) {
                continue;
            }
            if depth > 40 {
                let center: Vec<f64> =
                    self.active.iter().map(|&v| 0.5 * (box_[v].0 + box_[v].1)).collect();
                if let Some(z) = self.newton(&center) {
                    let ambient = self.point_from_active(&z);
                    if self.in_domain(&ambient) {
                        let j = self.jacobian(&ambient);
                        if numeric::rank_with_tol(&j, tol) < c {
                            return Ok(false);
                        }
                    }
                }
                return Err(PerturbError::BudgetExceeded {
                    detail: "rank certification inconclusive at the subdivision floor".into(),
                });
            }
            let (v, w) = self
                .active
                .iter()
                .map(|&v| (v, box_[v].1 - box_[v].0))
                .max_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
                .expect("active variables exist");
            let mid = box_[v].0 + 0.5 * w;
            let mut lo_box = box_.clone();
            lo_box[v] = (box_[v].0, mid);
            let mut hi_box = box_;
            hi_box[v] = (mid, mid + 0.5 * w);
            stack.push((lo_box, depth + 1));
            stack.push((hi_box, depth + 1));
        }
        Ok(true)
    }

    fn some_minor_excludes_zero(&self, box_: &[(f64, f64)]) -> bool {
        let c = self.out_dim();
        let n = self.dim();
        if n < c {
            return false;
        }
        let entries: Vec<Vec<(f64, f64)>> = self
            .partials
            .iter()
            .map(|row| row.iter().map(|p| p.eval_interval(box_)).collect())
            .collect();
        for cols in combinations(n, c) {
            let (lo, hi) = interval_det(&entries, &cols);
            if lo > 0.0 || hi < 0.0 {
                return true;
            }
        }
        false
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn iv_add(a: (f64, f64), b: (f64, f64)) -> (f64, f64) {
    (a.0 + b.0, a.1 + b.1)
}

fn iv_mul(a: (f64, f64), b: (f64, f64)) -> (f64, f64) {
    let c = [a.0 * b.0, a.0 * b.1, a.1 * b.0, a.1 * b.1];
    (c.iter().cloned().fold(f64::INFINITY, f64::min), c.iter().cloned().fold(f64::NEG_INFINITY, f64::max))
}

fn iv_neg(a: (f64, f64)) -> (f64, f64) {
    (-a.1, -a.0)
}

fn interval_det(entries: &[Vec<(f64, f64)>], cols: &[usize]) -> (f64, f64) {
    if cols.is_empty() {
        return (1.0, 1.0);
    }
    let row = entries.len() - cols.len();
    let mut acc = (0.0, 0.0);
    for (pos, &j) in cols.iter().enumerate() {
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != j).collect();
        let minor = interval_det(entries, &rest);
        let term = iv_mul(entries[row][j], minor);
        acc = iv_add(acc, if pos % 2 == 0 { term } else { iv_neg(term) });
    }
    acc
}

/// Per-stratum strong transversality: locate the zeros of every restricted
/// section and require a full-rank Jacobian (numerical rank against `tol`)
/// at each; on strata with positive-dimensional zero sets, certify full
/// rank along the zero set by interval minors.
pub fn check_strong_transversality<I: IntScalar>(
    s: &SectionOnBox<I>,
    tol: f64,
) -> Result<TransversalityReport, PerturbError> {
    let c = s.out_dim();
    let mut strata = Vec::new();
    let full = if s.corner_dim == 0 { 0 } else { (1u32 << s.corner_dim) - 1 };
    for t in 0..=full {
        let face = Face::stratum(s, t);
        let n = face.dim();
        let (transverse, zeros, detail) = if n < c {
            let zeros = face.isolated_zeros()?;
            if zeros.is_empty() {
                (true, zeros, "no zeros on an underdimensioned stratum".to_string())
            } else {
                (false, zeros, format!("zero on a {}-dimensional stratum with codomain {}", n, c))
            }
        } else if n == c {
            let zeros = face.isolated_zeros()?;
            let mut ok = true;
            for z in &zeros {
                let j = face.jacobian(z);
                if numeric::rank_with_tol(&j, tol) < c {
                    ok = false;
                }
            }
            (ok, zeros, "isolated zeros, rank checked pointwise".to_string())
        } else {
            let ok = face.rank_certified_on_zero_set(tol)?;
            (ok, Vec::new(), "rank certified along the zero set by interval minors".to_string())
        };
        strata.push(StratumReport { stratum: t, dim: n, zeros, transverse, detail });
    }
    let all_transverse = strata.iter().all(|r| r.transverse);
    Ok(TransversalityReport { strata, all_transverse })
}

/// Σ over zeros of `sign(det J)` on a stratum whose dimension equals the
/// codomain dimension.
pub fn count_signed_zeros<I: IntScalar>(
    s: &SectionOnBox<I>,
    stratum: u32,
    tol: f64,
) -> Result<i64, PerturbError> {
    let face = Face::stratum(s, stratum);
    if face.dim() != face.out_dim() {
        return Err(PerturbError::NotTransverse {
            detail: format!(
                "stratum dimension {} differs from codomain dimension {}",
                face.dim(),
                face.out_dim()
            ),
        });
    }
    Ok(signed_zeros_on_face(&face, tol)?.into_iter().map(|(_, s)| s).sum())
}

fn signed_zeros_on_face<I: IntScalar>(
    face: &Face<I>,
    tol: f64,
) -> Result<Vec<(Vec<f64>, i64)>, PerturbError> {
    let mut out = Vec::new();
    for z in face.isolated_zeros()? {
        if face.dim() == 0 {
            return Err(PerturbError::NotTransverse {
                detail: "zero on a point stratum has no Jacobian sign".into(),
            });
        }
        let d = numeric::det(&face.jacobian(&z));
        if d.abs() <= tol {
            return Err(PerturbError::NotTransverse {
                detail: format!("Jacobian determinant {:.3e} below tolerance at {:?}", d, z),
            });
        }
        out.push((z, if d > 0.0 { 1 } else { -1 }));
    }
    Ok(out)
}

/// A wall of the top-stratum box: `(ambient variable, side)`; side −1 is
/// the lower endpoint (0 for corner coordinates, −1 for free ones).
pub type Wall = (usize, i8);

#[derive(Clone, Debug)]
pub struct WallZeroRecord {
    pub wall: Wall,
    pub point: Vec<f64>,
    pub sign: i64,
}

#[derive(Clone, Debug)]
pub struct TracedArc {
    /// Indices into the wall-zero list.
    pub start: usize,
    pub end: usize,
    /// `+1` when the canonical tangent exits through the wall at that
    /// endpoint, `−1` when it enters.
    pub exit_start: i8,
    pub exit_end: i8,
}

#[derive(Clone, Debug)]
pub struct ConsistencyReport {
    pub wall_zeros: Vec<WallZeroRecord>,
    pub arcs: Vec<TracedArc>,
    pub consistent: bool,
    pub detail: String,
}

/// Trace the one-dimensional zero set of the top stratum and verify that
/// its endpoints reproduce the per-wall signed zeros: every wall zero is a
/// traced endpoint, the canonical-tangent crossing signs cancel pairwise
/// along each arc, and the wall count's sign at each endpoint matches the
/// cofactor-minor sign of the ambient Jacobian.
pub fn boundary_consistency<I: IntScalar>(
    s: &SectionOnBox<I>,
    tol: f64,
) -> Result<ConsistencyReport, PerturbError> {
    let c = s.out_dim();
    let n = s.dim();
    if n != c + 1 {
        return Err(PerturbError::NotTransverse {
            detail: format!("boundary consistency needs vdim 1 (dim {} vs codomain {})", n, c),
        });
    }
    let transversality = check_strong_transversality(s, tol)?;
    if !transversality.all_transverse {
        return Err(PerturbError::NotTransverse { detail: "section is not strongly transverse".into() });
    }

    let top_mask = if s.corner_dim == 0 { 0 } else { (1u32 << s.corner_dim) - 1 };
    let top = Face::stratum(s, top_mask);

    // Wall zeros with signs from the wall-restricted sections.
    let mut wall_zeros: Vec<WallZeroRecord> = Vec::new();
    for (pos, &v) in top.active.iter().enumerate() {
        let (lo, hi) = top.var_range(v);
        for (side, value) in [(-1i8, lo as i64), (1i8, hi as i64)] {
            let wall = top.pin_wall(s, v, value);
            for (point, sign) in signed_zeros_on_face(&wall, tol)? {
                wall_zeros.push(WallZeroRecord { wall: (pos, side), point, sign });
            }
        }
    }

    let mut arcs: Vec<TracedArc> = Vec::new();
    let mut consistent = true;
    let mut detail = String::new();
    let mut seen_pairs: Vec<(usize, usize)> = Vec::new();
    for (start_idx, wz) in wall_zeros.iter().enumerate() {
        let endpoint = trace_curve(&top, &wz.point)?;
        let end_idx = match wall_zeros.iter().position(|other| {
            other.point.iter().zip(&endpoint).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max) < 1e-6
        }) {
            Some(i) => i,
            None => {
                consistent = false;
                detail = format!("curve endpoint {:?} matches no wall zero", endpoint);
                continue;
            }
        };
        let pair = (start_idx.min(end_idx), start_idx.max(end_idx));
        if seen_pairs.contains(&pair) {
            continue;
        }
        seen_pairs.push(pair);
        let exit_start = crossing_sign(&top, &wall_zeros[start_idx]);
        let exit_end = crossing_sign(&top, &wall_zeros[end_idx]);
        if exit_start + exit_end != 0 {
            consistent = false;
            detail = format!(
                "arc {}–{} does not cancel: crossing signs {} and {}",
                start_idx, end_idx, exit_start, exit_end
            );
        }
        arcs.push(TracedArc { start: start_idx, end: end_idx, exit_start, exit_end });
    }

    for (i, _) in wall_zeros.iter().enumerate() {
        if !arcs.iter().any(|a| a.start == i || a.end == i) {
            consistent = false;
            detail = format!("wall zero {} is not an endpoint of any traced arc", i);
        }
    }
    for wz in &wall_zeros {
        let expected = minor_sign(&top, wz);
        if expected != 0 && expected != wz.sign {
            consistent = false;
            detail =
                format!("wall zero at {:?}: count sign {} vs minor sign {}", wz.point, wz.sign, expected);
        }
    }

    Ok(ConsistencyReport { wall_zeros, arcs, consistent, detail })
}

/// Canonical tangent of the zero curve: the cofactor vector
/// `τ_i = (−1)^{c+1+i}·det(J without column i)` (1-based `i` over the
/// active variables), which satisfies `det [J; τ] > 0`.
fn canonical_tangent<I: IntScalar>(face: &Face<I>, ambient: &[f64]) -> Vec<f64> {
    let j = face.jacobian(ambient);
    let n = face.dim();
    let c = face.out_dim();
    let mut tau = vec![0.0; n];
    for i in 0..n {
        let cols: Vec<usize> = (0..n).filter(|&x| x != i).collect();
        let minor: Vec<Vec<f64>> = j.iter().map(|row| cols.iter().map(|&x| row[x]).collect()).collect();
        let m = numeric::det(&minor);
        let sign = if (c + 1 + (i + 1)) % 2 == 0 { 1.0 } else { -1.0 };
        tau[i] = sign * m;
    }
    tau
}

fn crossing_sign<I: IntScalar>(top: &Face<I>, wz: &WallZeroRecord) -> i8 {
    let tau = canonical_tangent(top, &wz.point);
    let (pos, side) = wz.wall;
    if tau[pos] * (side as f64) > 0.0 {
        1
    } else {
        -1
    }
}

fn minor_sign<I: IntScalar>(top: &Face<I>, wz: &WallZeroRecord) -> i64 {
    let tau = canonical_tangent(top, &wz.point);
    let (pos, _) = wz.wall;
    let sign = if (top.out_dim() + 1 + (pos + 1)) % 2 == 0 { 1.0 } else { -1.0 };
    let v = sign * tau[pos];
    if v > 1e-12 {
        1
    } else if v < -1e-12 {
        -1
    } else {
        0
    }
}

/// Predictor–corrector tracing along the kernel direction from a wall zero
/// until the curve leaves the box; returns the exit point.
fn trace_curve<I: IntScalar>(top: &Face<I>, start: &[f64]) -> Result<Vec<f64>, PerturbError> {
    let h = 5e-3;
    let mut p = start.to_vec();
    let mut dir = normalized(&canonical_tangent(top, &p));
    let probe: Vec<f64> = p.iter().zip(&dir).map(|(a, b)| a + 1e-6 * b).collect();
    if !top.in_domain(&probe) {
        for d in dir.iter_mut() {
            *d = -*d;
        }
    }
    for _ in 0..200_000 {
        let predictor: Vec<f64> = p.iter().zip(&dir).map(|(a, b)| a + h * b).collect();
        let corrected = correct_onto_curve(top, &predictor, &dir)?;
        if !top.in_domain(&corrected) {
            let mut inside = p.clone();
            let mut outside = corrected.clone();
            for _ in 0..80 {
                let mid: Vec<f64> = inside.iter().zip(&outside).map(|(a, b)| 0.5 * (a + b)).collect();
                let mid = correct_onto_curve(top, &mid, &dir)?;
                if top.in_domain(&mid) {
                    inside = mid;
                } else {
                    outside = mid;
                }
            }
            let mut exitp = inside;
            for &v in &top.active {
                let (lo, hi) = top.var_range(v);
                if (exitp[v] - lo).abs() < 1e-6 {
                    exitp[v] = lo;
                }
                if (exitp[v] - hi).abs() < 1e-6 {
                    exitp[v] = hi;
                }
            }
            return Ok(exitp);
        }
        if corrected.iter().zip(&p).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max) < 1e-12 {
            return Err(PerturbError::CurveTrackingFailure {
                detail: format!("tracer stalled near {:?}", p),
            });
        }
        let t = normalized(&canonical_tangent(top, &corrected));
        dir = if dot(&t, &dir) >= 0.0 { t } else { t.iter().map(|x| -x).collect() };
        p = corrected;
    }
    Err(PerturbError::CurveTrackingFailure { detail: "tracer exceeded its step budget".into() })
}

fn correct_onto_curve<I: IntScalar>(
    top: &Face<I>,
    guess: &[f64],
    dir: &[f64],
) -> Result<Vec<f64>, PerturbError> {
    let n = top.dim();
    let mut x: Vec<f64> = top.active.iter().map(|&v| guess[v]).collect();
    for _ in 0..50 {
        let ambient = top.point_from_active(&x);
        let f = top.eval(&ambient);
        let res: f64 = f.iter().map(|v| v * v).sum::<f64>().sqrt();
        if res < NEWTON_RESIDUAL {
            return Ok(ambient);
        }
        let j = top.jacobian(&ambient);
        let mut aug = j.clone();
        let dir_active: Vec<f64> = (0..n).map(|k| dir[top.active[k]]).collect();
        aug.push(dir_active);
        let mut rhs: Vec<f64> = f.iter().map(|v| -v).collect();
        rhs.push(0.0);
        let delta = numeric::solve(&aug, &rhs).ok_or(PerturbError::CurveTrackingFailure {
            detail: "singular corrector system".into(),
        })?;
        for (xi, di) in x.iter_mut().zip(&delta) {
            *xi += di;
        }
    }
    Err(PerturbError::CurveTrackingFailure { detail: "corrector failed to converge".into() })
}

fn normalized(v: &[f64]) -> Vec<f64> {
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm == 0.0 {
        v.to_vec()
    } else {
        v.iter().map(|x| x / norm).collect()
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}
