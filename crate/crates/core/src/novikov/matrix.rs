//! Dense matrices over the truncated Novikov ring.

use crate::error::NovikovError;
use crate::novikov::element::{NovikovElement, Truncation};
#[allow(unused_imports)]
use num_integer::Integer as _;
#[allow(unused_imports)]
use num_traits::{One as _, Signed as _, Zero as _};
use crate::scalar::{IntScalar, Rational};

/// Dense matrix whose entries all share one truncation window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NovikovMatrix<I: IntScalar> {
    rows: usize,
    cols: usize,
    entries: Vec<NovikovElement<I>>,
    truncation: Truncation<I>,
}

impl<I: IntScalar> NovikovMatrix<I> {
    pub fn zero(rows: usize, cols: usize, truncation: Truncation<I>) -> Self {
        let entries = vec![NovikovElement::zero(truncation.clone()); rows * cols];
        NovikovMatrix { rows, cols, entries, truncation }
    }

    pub fn identity(n: usize, truncation: Truncation<I>) -> Self {
        let mut m = Self::zero(n, n, truncation.clone());
        for i in 0..n {
            m.set(i, i, NovikovElement::one(truncation.clone()));
        }
        m
    }

    /// Build from entries in row-major order; each entry is re-truncated to
    /// the matrix window.
    pub fn from_entries(
        rows: usize,
        cols: usize,
        entries: Vec<NovikovElement<I>>,
        truncation: Truncation<I>,
    ) -> Result<Self, NovikovError> {
        if entries.len() != rows * cols {
            return Err(NovikovError::ShapeMismatch {
                detail: format!("{}×{} matrix needs {} entries, got {}", rows, cols, rows * cols, entries.len()),
            });
        }
        let entries = entries.into_iter().map(|e| e.truncated(truncation.clone())).collect();
        Ok(NovikovMatrix { rows, cols, entries, truncation })
    }

    /// Integer matrix at the given truncation.
    pub fn from_integers(rows: &[Vec<i64>], truncation: Truncation<I>) -> Self {
        let r = rows.len();
        let c = rows.first().map(|v| v.len()).unwrap_or(0);
        let mut m = Self::zero(r, c, truncation.clone());
        for (i, row) in rows.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                m.set(i, j, NovikovElement::from_integer(x, truncation.clone()));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn truncation(&self) -> &Truncation<I> {
        &self.truncation
    }

    pub fn get(&self, i: usize, j: usize) -> &NovikovElement<I> {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, e: NovikovElement<I>) {
        self.entries[i * self.cols + j] = e.truncated(self.truncation.clone());
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn neg(&self) -> Self {
        let entries = self.entries.iter().map(|e| e.neg()).collect();
        NovikovMatrix { rows: self.rows, cols: self.cols, entries, truncation: self.truncation.clone() }
    }

    pub fn add(&self, other: &Self) -> Result<Self, NovikovError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(NovikovError::ShapeMismatch {
                detail: format!("add {}×{} with {}×{}", self.rows, self.cols, other.rows, other.cols),
            });
        }
        let truncation = self.truncation.meet(&other.truncation);
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.add(b).truncated(truncation.clone()))
            .collect();
        Ok(NovikovMatrix { rows: self.rows, cols: self.cols, entries, truncation })
    }

    /// Residue-level product (entries must obey the valuation rule of
    /// [`NovikovElement::mul`] at finite truncation).
    pub fn mul(&self, other: &Self) -> Result<Self, NovikovError> {
        if self.cols != other.rows {
            return Err(NovikovError::ShapeMismatch {
                detail: format!("mul {}×{} with {}×{}", self.rows, self.cols, other.rows, other.cols),
            });
        }
        let truncation = self.truncation.meet(&other.truncation);
        let mut out = Self::zero(self.rows, other.cols, truncation);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = NovikovElement::zero(out.truncation.clone());
                for k in 0..self.cols {
                    acc = acc.add(&self.get(i, k).mul(other.get(k, j))?);
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    /// Exact product of the canonical lifts, reduced to the given window.
    /// This is what verification uses: factors may contain negative
    /// exponents and the result is still well defined modulo `T^τ` as long
    /// as the inputs are exact finite sums.
    pub fn mul_exact(&self, other: &Self, out_truncation: Truncation<I>) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch in exact product");
        let mut out = Self::zero(self.rows, other.cols, out_truncation.clone());
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = NovikovElement::zero(Truncation::Exact);
                for k in 0..self.cols {
                    acc = acc.add(&self.get(i, k).lift().mul_unchecked(&other.get(k, j).lift(), Truncation::Exact));
                }
                out.set(i, j, acc.truncated(out_truncation.clone()));
            }
        }
        out
    }

    pub fn scale(&self, e: &NovikovElement<I>) -> Result<Self, NovikovError> {
        let truncation = self.truncation.meet(e.truncation());
        let mut out = Self::zero(self.rows, self.cols, truncation);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).mul(e)?);
            }
        }
        Ok(out)
    }

    /// `col_dst += f · col_src` (exact lifts, re-truncated).
    pub fn col_axpy(&mut self, dst: usize, src: usize, f: &NovikovElement<I>) {
        for i in 0..self.rows {
            let delta = self.get(i, src).lift().mul_unchecked(&f.lift(), Truncation::Exact);
            let updated = self.get(i, dst).add(&delta).truncated(self.truncation.clone());
            self.entries[i * self.cols + dst] = updated;
        }
    }

    /// `row_dst += f · row_src`.
    pub fn row_axpy(&mut self, dst: usize, src: usize, f: &NovikovElement<I>) {
        for j in 0..self.cols {
            let delta = self.get(src, j).lift().mul_unchecked(&f.lift(), Truncation::Exact);
            let updated = self.get(dst, j).add(&delta).truncated(self.truncation.clone());
            self.entries[dst * self.cols + j] = updated;
        }
    }

    pub fn scale_col(&mut self, j: usize, f: &NovikovElement<I>) {
        for i in 0..self.rows {
            let updated =
                self.get(i, j).lift().mul_unchecked(&f.lift(), Truncation::Exact).truncated(self.truncation.clone());
            self.entries[i * self.cols + j] = updated;
        }
    }

    pub fn scale_row(&mut self, i: usize, f: &NovikovElement<I>) {
        for j in 0..self.cols {
            let updated =
                self.get(i, j).lift().mul_unchecked(&f.lift(), Truncation::Exact).truncated(self.truncation.clone());
            self.entries[i * self.cols + j] = updated;
        }
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zero(self.cols, self.rows, self.truncation.clone());
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    /// Grow to a larger shape, padding with zeros (entries keep their
    /// positions).
    pub fn resized(&self, rows: usize, cols: usize) -> Self {
        assert!(rows >= self.rows && cols >= self.cols, "resized only grows");
        let mut out = Self::zero(rows, cols, self.truncation.clone());
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
        }
        out
    }

    /// Re-truncate every entry to a new shared window.
    pub fn truncated(&self, truncation: Truncation<I>) -> Self {
        let entries = self.entries.iter().map(|e| e.truncated(truncation.clone())).collect();
        NovikovMatrix { rows: self.rows, cols: self.cols, entries, truncation }
    }

    /// Determinant by Laplace expansion on exact lifts. Intended for the
    /// small matrices of the test suites.
    pub fn det_exact(&self) -> NovikovElement<I> {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let lifted: Vec<NovikovElement<I>> = self.entries.iter().map(|e| e.lift()).collect();
        det_rec(&lifted, self.cols, &(0..self.cols).collect::<Vec<_>>(), 0)
    }

    /// Largest valuation appearing among nonzero entries, if any.
    pub fn max_valuation(&self) -> Option<Rational<I>> {
        self.entries.iter().filter_map(|e| e.valuation()).max()
    }
}

fn det_rec<I: IntScalar>(
    entries: &[NovikovElement<I>],
    n: usize,
    cols: &[usize],
    row: usize,
) -> NovikovElement<I> {
    if cols.is_empty() {
        return NovikovElement::one(Truncation::Exact);
    }
    let mut acc = NovikovElement::zero(Truncation::Exact);
    for (pos, &j) in cols.iter().enumerate() {
        let a = &entries[row * n + j];
        if a.is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&c| c != j).collect();
        let minor = det_rec(entries, n, &rest, row + 1);
        let term = a.mul_unchecked(&minor, Truncation::Exact);
        acc = if pos % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    type M = NovikovMatrix<i64>;

    #[test]
    fn identity_multiplies_trivially() {
        let t = Truncation::Finite(rat::<i64>(3, 1));
        let m = M::from_integers(&[vec![1, 2], vec![3, 4]], t.clone());
        let id = M::identity(2, t.clone());
        assert_eq!(id.mul(&m).unwrap(), m);
        assert_eq!(m.mul(&id).unwrap(), m);
    }

    #[test]
    fn det_of_integer_matrix() {
        let m = M::from_integers(&[vec![2, 0], vec![0, 3]], Truncation::Exact);
        assert_eq!(m.det_exact(), NovikovElement::from_integer(6, Truncation::Exact));
        let m2 = M::from_integers(&[vec![1, 2], vec![3, 4]], Truncation::Exact);
        assert_eq!(m2.det_exact(), NovikovElement::from_integer(-2, Truncation::Exact));
    }
}
