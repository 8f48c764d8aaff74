//! Diagonalization of matrices over the truncated Novikov ring.
//!
//! The reduction brings a matrix `M` to `U·M·V = D` with `U, V` products of
//! elementary operations (the determinants are tracked and stay units) and
//! `D` diagonal whose nonzero entries are *nonnegative integers* forming a
//! divisibility chain — the normal form used to read off free ranks and
//! invariant factors of Novikov cochain complexes.
//!
//! Internally the reduction runs on exact lifts at a widened window `2τ`:
//! geometric-series inverses introduce garbage only at exponents `≥ 2τ`, so
//! even after a pivot is rescaled by `T^{-v}` (with `v < τ`) the identity
//! `U·M·V ≡ D` still holds modulo `T^τ`.
//!
//! Not every matrix admits such a form: the leading coefficient of a unit
//! multiple of an element never changes up to sign, so e.g. `[[2 + 3T]]`
//! cannot be scaled to an integer at any window. Those inputs fail with
//! `TruncationTooCoarse` naming the stuck entry.

use crate::error::NovikovError;
use crate::novikov::element::{geometric_inverse, NovikovElement, Truncation};
use crate::novikov::matrix::NovikovMatrix;
#[allow(unused_imports)]
use num_integer::Integer as _;
#[allow(unused_imports)]
use num_traits::{One as _, Signed as _, Zero as _};
use crate::scalar::{IntScalar, Rational};

/// Result of [`diagonalize`].
#[derive(Clone, Debug)]
pub struct Diagonalization<I: IntScalar> {
    pub u: NovikovMatrix<I>,
    pub d: NovikovMatrix<I>,
    pub v: NovikovMatrix<I>,
    /// Nonzero diagonal entries, nonnegative integers in divisibility order.
    pub factors: Vec<I>,
    /// Determinant of `U` (tracked through the elementary operations).
    pub u_det: NovikovElement<I>,
    /// Determinant of `V`.
    pub v_det: NovikovElement<I>,
}

impl<I: IntScalar> Diagonalization<I> {
    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    /// Invariant factors strictly greater than 1 (the torsion divisors).
    pub fn torsion(&self) -> Vec<I> {
        self.factors.iter().filter(|f| **f > I::one()).cloned().collect()
    }

    /// Check `U·M·V ≡ D` modulo the target window by exact multiplication
    /// of canonical lifts.
    pub fn verify(&self, m: &NovikovMatrix<I>) -> bool {
        let tau = m.truncation().clone();
        let um = self.u.mul_exact(m, Truncation::Exact);
        let umv = um.mul_exact(&self.v, tau.clone());
        umv == self.d.truncated(tau)
    }
}

struct Workspace<I: IntScalar> {
    m: Vec<Vec<NovikovElement<I>>>,
    u: Vec<Vec<NovikovElement<I>>>,
    v: Vec<Vec<NovikovElement<I>>>,
    u_det: NovikovElement<I>,
    v_det: NovikovElement<I>,
    rows: usize,
    cols: usize,
    /// Working window (a multiple of τ), or Exact.
    window: Truncation<I>,
    /// Target window (τ).
    target: Truncation<I>,
}

const EXACT_DIVISION_LIMIT: usize = 4096;

impl<I: IntScalar> Workspace<I> {
    fn new(m: &NovikovMatrix<I>, window_factor: i64) -> Self {
        let target = m.truncation().clone();
        let window = match &target {
            Truncation::Finite(t) => {
                let f = Rational::from_integer(crate::scalar::int(window_factor));
                Truncation::Finite(t.clone() * f)
            }
            Truncation::Exact => Truncation::Exact,
        };
        let rows = m.rows();
        let cols = m.cols();
        let lift = |e: &NovikovElement<I>| e.lift().truncated(window.clone());
        let mut grid = vec![vec![NovikovElement::zero(window.clone()); cols]; rows];
        for (i, row) in grid.iter_mut().enumerate() {
            for (j, slot) in row.iter_mut().enumerate() {
                *slot = lift(m.get(i, j));
            }
        }
        let ident = |n: usize| -> Vec<Vec<NovikovElement<I>>> {
            (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            if i == j {
                                NovikovElement::one(window.clone())
                            } else {
                                NovikovElement::zero(window.clone())
                            }
                        })
                        .collect()
                })
                .collect()
        };
        Workspace {
            m: grid,
            u: ident(rows),
            v: ident(cols),
            u_det: NovikovElement::one(Truncation::Exact),
            v_det: NovikovElement::one(Truncation::Exact),
            rows,
            cols,
            window,
            target,
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        self.m.swap(a, b);
        self.u.swap(a, b);
        self.u_det = self.u_det.neg();
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for row in &mut self.m {
            row.swap(a, b);
        }
        for row in &mut self.v {
            row.swap(a, b);
        }
        self.v_det = self.v_det.neg();
    }

    /// row_i -= f · row_p
    fn row_sub(&mut self, i: usize, p: usize, f: &NovikovElement<I>) {
        for j in 0..self.cols {
            let delta = self.m[p][j].mul_unchecked(f, self.window.clone());
            self.m[i][j] = self.m[i][j].sub(&delta);
        }
        for j in 0..self.rows {
            let delta = self.u[p][j].mul_unchecked(f, self.window.clone());
            self.u[i][j] = self.u[i][j].sub(&delta);
        }
    }

    /// col_j -= f · col_p
    fn col_sub(&mut self, j: usize, p: usize, f: &NovikovElement<I>) {
        for i in 0..self.rows {
            let delta = self.m[i][p].mul_unchecked(f, self.window.clone());
            self.m[i][j] = self.m[i][j].sub(&delta);
        }
        for i in 0..self.cols {
            let delta = self.v[i][p].mul_unchecked(f, self.window.clone());
            self.v[i][j] = self.v[i][j].sub(&delta);
        }
    }

    /// col_j += col_p (used by the divisibility dance).
    fn col_add(&mut self, j: usize, p: usize) {
        let minus_one = NovikovElement::from_integer(-1, self.window.clone());
        self.col_sub(j, p, &minus_one);
    }

    /// Scale row `i` by an exact unit, tracking the determinant.
    fn scale_row(&mut self, i: usize, f: &NovikovElement<I>) {
        for j in 0..self.cols {
            self.m[i][j] = self.m[i][j].mul_unchecked(f, self.window.clone());
        }
        for j in 0..self.rows {
            self.u[i][j] = self.u[i][j].mul_unchecked(f, self.window.clone());
        }
        self.u_det = self.u_det.mul_unchecked(f, Truncation::Exact);
    }

    /// Entry is zero for the purposes of the target window.
    fn is_target_zero(&self, e: &NovikovElement<I>) -> bool {
        e.truncated(self.target.clone()).is_zero()
    }

    /// gcd of the coefficients visible in the target window (the pivot
    /// selection key of the design decisions).
    fn content(&self, e: &NovikovElement<I>) -> Option<I> {
        let visible = e.truncated(self.target.clone());
        let mut g = I::zero();
        for (c, _) in visible.terms() {
            g = g.gcd(c);
        }
        if g.is_zero() {
            None
        } else {
            Some(g)
        }
    }

    fn select_pivot(&self, from: usize) -> Option<(usize, usize)> {
        let mut best: Option<((I, Rational<I>), (usize, usize))> = None;
        for i in from..self.rows {
            for j in from..self.cols {
                let e = &self.m[i][j];
                let content = match self.content(e) {
                    Some(c) => c,
                    None => continue,
                };
                let val = e.valuation().expect("nonzero entry has a valuation");
                let key = (content, val);
                match &best {
                    Some((k, _)) if *k <= key => {}
                    _ => best = Some((key, (i, j))),
                }
            }
        }
        best.map(|(_, pos)| pos)
    }

    /// Make the pivot's leading coefficient positive.
    fn orient_pivot(&mut self, p: usize) {
        if let Some(c) = self.m[p][p].leading_coeff() {
            if c.is_negative() {
                let minus_one = NovikovElement::from_integer(-1, self.window.clone());
                self.scale_row(p, &minus_one);
            }
        }
    }

    /// One long-division pass of `target_entry` against the pivot at `(p,p)`.
    ///
    /// `Left` = row operation on row `i` (clearing column `p`), `Right` =
    /// column operation on column `j` (clearing row `p`). Returns `true`
    /// when the roles were exchanged (the remainder became the new pivot).
    fn divide_step(&mut self, p: usize, other: usize, left: bool) -> Result<bool, NovikovError> {
        let pivot = self.m[p][p].clone();
        let entry = if left { self.m[other][p].clone() } else { self.m[p][other].clone() };
        let (c, r) = match (pivot.leading_coeff().cloned(), pivot.valuation()) {
            (Some(c), Some(r)) => (c, r),
            _ => unreachable!("pivot must be nonzero"),
        };
        debug_assert!(c.is_positive());
        let (a, s) = match (entry.leading_coeff().cloned(), entry.valuation()) {
            (Some(a), Some(s)) => (a, s),
            _ => return Ok(false),
        };
        let (q, rho) = a.div_mod_floor(&c);
        let shift = s - r;
        if !q.is_zero() {
            let f = NovikovElement::monomial(q, shift, self.window.clone());
            if left {
                self.row_sub(other, p, &f);
            } else {
                self.col_sub(other, p, &f);
            }
        }
        if !rho.is_zero() {
            // Strictly smaller positive leading coefficient: exchange roles.
            if left {
                self.swap_rows(p, other);
            } else {
                self.swap_cols(p, other);
            }
            self.orient_pivot(p);
            return Ok(true);
        }
        Ok(false)
    }

    /// Clear the target-visible part of row `p` and column `p`. Entries
    /// that are already `≡ 0` modulo `T^τ` are left alone here; the part of
    /// them that matters for pivot rescaling is handled by
    /// [`Workspace::clear_high_entries`].
    fn clear_pivot(&mut self, p: usize) -> Result<(), NovikovError> {
        let mut guard = 0usize;
        'restart: loop {
            guard += 1;
            if guard > EXACT_DIVISION_LIMIT {
                return Err(NovikovError::TruncationTooCoarse {
                    detail: format!(
                        "clearing against the pivot at position {} does not terminate; a finite truncation is required",
                        p
                    ),
                });
            }
            self.orient_pivot(p);
            for i in (p + 1)..self.rows {
                if !self.is_target_zero(&self.m[i][p]) {
                    self.divide_step(p, i, true)?;
                    continue 'restart;
                }
            }
            for j in (p + 1)..self.cols {
                if !self.is_target_zero(&self.m[p][j]) {
                    self.divide_step(p, j, false)?;
                    continue 'restart;
                }
            }
            return Ok(());
        }
    }

    /// Push every leftover entry of row/column `p` above the exponent
    /// `level` by exact division against the pivot. These entries are all
    /// `≡ 0 mod T^τ`; they must sit above `τ + v` before the pivot row is
    /// rescaled by `T^{-v}`, or the rescaling would drag them into the
    /// visible window.
    fn clear_high_entries(&mut self, p: usize, level: &Rational<I>) -> Result<(), NovikovError> {
        let mut guard = 0usize;
        'restart: loop {
            guard += 1;
            if guard > EXACT_DIVISION_LIMIT {
                return Err(NovikovError::TruncationTooCoarse {
                    detail: "high-valuation residue clearing does not terminate".into(),
                });
            }
            let (c, r) = match (self.m[p][p].leading_coeff().cloned(), self.m[p][p].valuation()) {
                (Some(c), Some(r)) => (c, r),
                _ => return Ok(()),
            };
            let step = |val: Option<Rational<I>>,
                            lead: Option<I>|
             -> Result<Option<NovikovElement<I>>, NovikovError> {
                let (s, a) = match (val, lead) {
                    (Some(s), Some(a)) => (s, a),
                    _ => return Ok(None),
                };
                if s >= *level {
                    return Ok(None);
                }
                let (q, rho) = a.div_mod_floor(&c);
                if !rho.is_zero() {
                    return Err(NovikovError::TruncationTooCoarse {
                        detail: format!(
                            "residue of valuation {} is not divisible by the pivot's leading coefficient {}",
                            s, c
                        ),
                    });
                }
                Ok(Some(NovikovElement::monomial(q, s - r.clone(), self.window.clone())))
            };
            for i in (p + 1)..self.rows {
                let e = &self.m[i][p];
                if let Some(f) = step(e.valuation(), e.leading_coeff().cloned())? {
                    self.row_sub(i, p, &f);
                    continue 'restart;
                }
            }
            for j in (p + 1)..self.cols {
                let e = &self.m[p][j];
                if let Some(f) = step(e.valuation(), e.leading_coeff().cloned())? {
                    self.col_sub(j, p, &f);
                    continue 'restart;
                }
            }
            return Ok(());
        }
    }

    /// Normalize the cleared pivot at `(p,p)` to a nonnegative integer.
    ///
    /// Writes `δ = c·T^v·(1 + u)` using the coefficients visible below
    /// `v + τ`; `c` must divide them all, otherwise no unit multiple of `δ`
    /// is an integer and the reduction is stuck.
    fn normalize_pivot(&mut self, p: usize) -> Result<Option<I>, NovikovError> {
        let delta = self.m[p][p].clone();
        if self.is_target_zero(&delta) {
            return Ok(None);
        }
        self.orient_pivot(p);
        let delta = self.m[p][p].clone();
        let c = delta.leading_coeff().cloned().expect("nonzero pivot");
        let v = delta.valuation().expect("nonzero pivot");
        if v > Rational::zero() {
            if let Truncation::Finite(t) = self.target.clone() {
                let level = t + v.clone();
                self.clear_high_entries(p, &level)?;
            }
        }
        // ζ = δ·T^{-v}: leading coefficient c at exponent 0.
        let zeta = delta.mul_monomial(&I::one(), &(-v.clone()));
        // Divisibility of the tail below τ decides normalizability.
        let tail_window = match &self.target {
            Truncation::Finite(t) => Truncation::Finite(t.clone()),
            Truncation::Exact => Truncation::Exact,
        };
        let visible = zeta.truncated(tail_window);
        let unit_low = match visible.div_integer(&c) {
            Some(w) => w, // = 1 + u with integer coefficients
            None => {
                return Err(NovikovError::TruncationTooCoarse {
                    detail: format!(
                        "pivot {} has leading coefficient {} that does not divide its tail; no unit multiple is an integer",
                        delta.to_text(),
                        c
                    ),
                })
            }
        };
        let scale = match (&self.target, unit_low.terms().len()) {
            (_, 1) => {
                // δ = c·T^v exactly below τ: scale by T^{-v} only.
                NovikovElement::monomial(I::one(), -v.clone(), self.window.clone())
            }
            (Truncation::Exact, _) => {
                return Err(NovikovError::TruncationTooCoarse {
                    detail: format!(
                        "pivot {} needs a geometric-series inverse; supply a finite truncation",
                        delta.to_text()
                    ),
                })
            }
            (Truncation::Finite(_), _) => {
                let one = NovikovElement::one(self.window.clone());
                let u = unit_low.truncated(self.window.clone()).sub(&one);
                let width = match &self.window {
                    Truncation::Finite(w) => w.clone(),
                    Truncation::Exact => unreachable!(),
                };
                let inv = geometric_inverse(&u, &width);
                inv.mul_monomial(&I::one(), &(-v.clone()))
            }
        };
        self.scale_row(p, &scale);
        // Record the exact integer value; the residual garbage sits above τ.
        self.m[p][p] = NovikovElement::monomial(c.clone(), Rational::zero(), self.window.clone());
        Ok(Some(c))
    }

    /// Classical 2×2 dance making `d_p | d_q` (both entries are integers).
    fn divisibility_dance(&mut self, p: usize, q: usize) -> Result<(), NovikovError> {
        self.col_add(p, q); // puts d_q at (q, p)
        self.clear_pivot(p)?;
        self.normalize_pivot(p)?;
        self.clear_pivot(q)?;
        self.normalize_pivot(q)?;
        Ok(())
    }
}

/// Bring `m` to the normal form `U·M·V = D` described in the module docs.
///
/// The reduction runs at a widened working window and the result is
/// verified by exact multiplication; if rescalings by `T^{-v}` consumed
/// more precision than the window provided, the window doubles and the
/// run repeats (the pivot choices depend only on the target-visible data,
/// so the operation sequence is stable across windows).
pub fn diagonalize<I: IntScalar>(
    m: &NovikovMatrix<I>,
) -> Result<Diagonalization<I>, NovikovError> {
    let factors = if m.truncation().is_exact() { vec![1] } else { vec![2, 4, 8, 16] };
    let mut last_err = None;
    for f in factors {
        match diagonalize_with_window(m, f) {
            Ok(dg) => {
                if dg.verify(m) {
                    return Ok(dg);
                }
                last_err = Some(NovikovError::TruncationTooCoarse {
                    detail: format!("reduction did not verify at window factor {}", f),
                });
            }
            Err(e) => return Err(e),
        }
    }
    Err(last_err.unwrap_or(NovikovError::TruncationTooCoarse {
        detail: "reduction did not verify at any working window".into(),
    }))
}

fn diagonalize_with_window<I: IntScalar>(
    m: &NovikovMatrix<I>,
    window_factor: i64,
) -> Result<Diagonalization<I>, NovikovError> {
    let mut ws = Workspace::new(m, window_factor);
    let npiv = ws.rows.min(ws.cols);

    let mut processed = 0usize;
    for p in 0..npiv {
        let (i, j) = match ws.select_pivot(p) {
            Some(pos) => pos,
            None => break,
        };
        ws.swap_rows(p, i);
        ws.swap_cols(p, j);
        ws.clear_pivot(p)?;
        processed = p + 1;
    }

    // Normalize pivots to nonnegative integers. `norm[p]` records the
    // integer value of a real pivot; target-zero slots stay `None` (their
    // working entries may carry garbage above τ, which reduction drops).
    let mut norm: Vec<Option<I>> = vec![None; npiv];
    for (p, slot) in norm.iter_mut().enumerate().take(processed) {
        *slot = ws.normalize_pivot(p)?;
    }

    // Divisibility chain among the nonzero integer entries.
    loop {
        let mut fixed = true;
        for a in 0..npiv {
            for b in (a + 1)..npiv {
                let (da, db) = match (&norm[a], &norm[b]) {
                    (Some(da), Some(db)) => (da.clone(), db.clone()),
                    _ => continue,
                };
                if !(db % da).is_zero() {
                    ws.divisibility_dance(a, b)?;
                    norm[a] = Some(ws.m[a][a].leading_coeff().cloned().expect("dance keeps pivots"));
                    norm[b] = Some(ws.m[b][b].leading_coeff().cloned().expect("dance keeps pivots"));
                    fixed = false;
                }
            }
        }
        if fixed {
            break;
        }
    }

    // Compact the nonzero entries into the leading diagonal slots in
    // ascending order (simultaneous row/column swaps keep D diagonal).
    for slot in 0..npiv {
        let best = (slot..npiv)
            .filter(|&p| norm[p].is_some())
            .min_by(|&a, &b| norm[a].cmp(&norm[b]));
        let src = match best {
            Some(src) => src,
            None => break,
        };
        if norm[slot].is_none() || norm[src] < norm[slot] {
            ws.swap_rows(slot, src);
            ws.swap_cols(slot, src);
            norm.swap(slot, src);
        }
    }

    let tau = m.truncation().clone();
    // U and V keep the full working window: their entries can carry
    // negative valuations, so reducing them to τ would lose exactly the
    // terms that the product against the lift of M needs.
    let window = ws.window.clone();
    let to_matrix = |grid: &Vec<Vec<NovikovElement<I>>>, rows: usize, cols: usize| {
        let mut out = NovikovMatrix::zero(rows, cols, window.clone());
        for i in 0..rows {
            for j in 0..cols {
                out.set(i, j, grid[i][j].clone());
            }
        }
        out
    };

    let u = to_matrix(&ws.u, ws.rows, ws.rows);
    let v = to_matrix(&ws.v, ws.cols, ws.cols);
    let mut d = NovikovMatrix::zero(ws.rows, ws.cols, tau.clone());
    let mut factors = Vec::new();
    for p in 0..npiv {
        match &norm[p] {
            Some(c) => {
                factors.push(c.clone());
                d.set(p, p, NovikovElement::monomial(c.clone(), Rational::zero(), tau.clone()));
            }
            None => d.set(p, p, NovikovElement::zero(tau.clone())),
        }
    }

    Ok(Diagonalization { u, d, v, factors, u_det: ws.u_det, v_det: ws.v_det })
}

/// Solve `A·x = b` at the shared truncation via the diagonal form;
/// `None` when the diagonalized system is inconsistent.
pub fn linear_solve<I: IntScalar>(
    a: &NovikovMatrix<I>,
    b: &[NovikovElement<I>],
) -> Result<Option<Vec<NovikovElement<I>>>, NovikovError> {
    if b.len() != a.rows() {
        return Err(NovikovError::ShapeMismatch {
            detail: format!("solve: {} rows vs {} rhs entries", a.rows(), b.len()),
        });
    }
    let tau = a.truncation().clone();
    let dg = diagonalize(a)?;
    // y = U·b (exact lifts, reduced to τ).
    let mut y: Vec<NovikovElement<I>> = Vec::with_capacity(a.rows());
    for i in 0..a.rows() {
        let mut acc = NovikovElement::zero(Truncation::Exact);
        for k in 0..a.rows() {
            acc = acc.add(&dg.u.get(i, k).lift().mul_unchecked(&b[k].lift(), Truncation::Exact));
        }
        y.push(acc.truncated(tau.clone()));
    }
    // z_i = y_i / d_i on the pivot block, zero elsewhere; inconsistent rows kill it.
    let npiv = a.rows().min(a.cols());
    let mut z = vec![NovikovElement::zero(tau.clone()); a.cols()];
    for i in 0..a.rows() {
        let d_i = if i < npiv { dg.d.get(i, i).clone() } else { NovikovElement::zero(tau.clone()) };
        if d_i.is_zero() {
            if !y[i].is_zero() {
                return Ok(None);
            }
            continue;
        }
        let c = d_i.leading_coeff().expect("nonzero diagonal").clone();
        match y[i].div_integer(&c) {
            Some(q) => z[i] = q,
            None => return Ok(None),
        }
    }
    // x = V·z.
    let mut x = Vec::with_capacity(a.cols());
    for i in 0..a.cols() {
        let mut acc = NovikovElement::zero(Truncation::Exact);
        for k in 0..a.cols() {
            acc = acc.add(&dg.v.get(i, k).lift().mul_unchecked(&z[k].lift(), Truncation::Exact));
        }
        x.push(acc.truncated(tau.clone()));
    }
    Ok(Some(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    type E = NovikovElement<i64>;
    type M = NovikovMatrix<i64>;
    type T = Truncation<i64>;

    fn fin(n: i64, d: i64) -> T {
        Truncation::Finite(rat(n, d))
    }

    fn el(terms: &[(i64, (i64, i64))], t: T) -> E {
        E::new(terms.iter().map(|&(c, (p, q))| (c, rat(p, q))).collect(), t)
    }

    #[test]
    fn already_diagonal_integer() {
        let m = M::from_integers(&[vec![2]], fin(5, 1));
        let dg = diagonalize(&m).unwrap();
        assert_eq!(dg.factors, vec![2]);
        assert!(dg.verify(&m));
    }

    #[test]
    fn monomial_is_a_unit() {
        // [[T]] → D = [[1]], normalized by T^{-1}.
        let m = M::from_entries(1, 1, vec![el(&[(1, (1, 1))], fin(5, 1))], fin(5, 1)).unwrap();
        let dg = diagonalize(&m).unwrap();
        assert_eq!(dg.factors, vec![1]);
        assert!(dg.verify(&m));
    }

    #[test]
    fn unit_residue_pivot() {
        // [[1,1],[1,1+T]] → diag(1,1): the (2,2) residue T is a unit.
        let t = fin(5, 1);
        let one = E::one(t.clone());
        let one_plus_t = el(&[(1, (0, 1)), (1, (1, 1))], t.clone());
        let m = M::from_entries(2, 2, vec![one.clone(), one.clone(), one.clone(), one_plus_t], t.clone()).unwrap();
        let dg = diagonalize(&m).unwrap();
        assert_eq!(dg.factors, vec![1, 1]);
        assert!(dg.verify(&m));
    }

    #[test]
    fn integer_smith_normal_form() {
        // [[2,0],[0,3]] → diag(1,6).
        let m = M::from_integers(&[vec![2, 0], vec![0, 3]], fin(5, 1));
        let dg = diagonalize(&m).unwrap();
        assert_eq!(dg.factors, vec![1, 6]);
        assert!(dg.verify(&m));
    }

    #[test]
    fn integer_snf_works_exactly() {
        let m = M::from_integers(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, 4, 16]], Truncation::Exact);
        let dg = diagonalize(&m).unwrap();
        assert_eq!(dg.factors, vec![2, 2, 156]);
        assert!(dg.verify(&m));
    }

    #[test]
    fn stuck_entry_reports_truncation_too_coarse() {
        // 2 + 3T is not a unit multiple of any integer.
        let t = fin(5, 1);
        let m = M::from_entries(1, 1, vec![el(&[(2, (0, 1)), (3, (1, 1))], t.clone())], t).unwrap();
        assert!(matches!(diagonalize(&m), Err(NovikovError::TruncationTooCoarse { .. })));
    }

    #[test]
    fn fractional_exponents_reduce() {
        // [[2, T^{1/4}],[0, 3T^{1/2}]]: det = 6T^{1/2} = unit·6.
        let t = fin(5, 1);
        let m = M::from_entries(
            2,
            2,
            vec![
                E::from_integer(2, t.clone()),
                el(&[(1, (1, 4))], t.clone()),
                E::zero(t.clone()),
                el(&[(3, (1, 2))], t.clone()),
            ],
            t.clone(),
        )
        .unwrap();
        let dg = diagonalize(&m).unwrap();
        assert!(dg.verify(&m));
        assert_eq!(dg.factors, vec![1, 6]);
    }

    #[test]
    fn solve_trivial() {
        let t = fin(5, 1);
        let a = M::from_integers(&[vec![1]], t.clone());
        let b = vec![el(&[(1, (1, 1))], t.clone())];
        let x = linear_solve(&a, &b).unwrap().unwrap();
        assert_eq!(x[0], b[0]);
    }

    #[test]
    fn solve_detects_inconsistency() {
        // 1 ∉ (2).
        let t = fin(5, 1);
        let a = M::from_integers(&[vec![2]], t.clone());
        let b = vec![E::one(t.clone())];
        assert_eq!(linear_solve(&a, &b).unwrap(), None);
    }

    #[test]
    fn solve_back_substitution() {
        // A = [[1,0],[1,1]], b = [1, 1+T] → x = [1, T].
        let t = fin(5, 1);
        let a = M::from_integers(&[vec![1, 0], vec![1, 1]], t.clone());
        let b = vec![E::one(t.clone()), el(&[(1, (0, 1)), (1, (1, 1))], t.clone())];
        let x = linear_solve(&a, &b).unwrap().unwrap();
        assert_eq!(x, vec![E::one(t.clone()), el(&[(1, (1, 1))], t.clone())]);
    }
}
