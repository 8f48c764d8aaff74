//! Multivariate polynomials with exact rational coefficients, polynomial
//! maps, and small rational matrices.

#[allow(unused_imports)]
use num_traits::{One as _, Signed as _, ToPrimitive as _, Zero as _};
use std::collections::BTreeMap;

use crate::scalar::{IntScalar, Rational};

/// Polynomial in `nvars` variables; exponent vectors are keys.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly<I: IntScalar> {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Rational<I>>,
}

impl<I: IntScalar> Poly<I> {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Rational<I>) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars);
        let mut e = vec![0u32; nvars];
        e[i] = 1;
        let mut p = Self::zero(nvars);
        p.terms.insert(e, Rational::one());
        p
    }

    pub fn monomial(nvars: usize, exps: &[u32], c: Rational<I>) -> Self {
        assert_eq!(exps.len(), nvars);
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(exps.to_vec(), c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational<I>)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            let slot = terms.entry(e.clone()).or_insert_with(Rational::zero);
            *slot = slot.clone() + c.clone();
            if slot.is_zero() {
                terms.remove(e);
            }
        }
        Poly { nvars: self.nvars, terms }
    }

    pub fn neg(&self) -> Self {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rational<I>) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v.clone() * c.clone())).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = Self::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                let c = ca.clone() * cb.clone();
                let slot = out.terms.entry(e).or_insert_with(Rational::zero);
                *slot = slot.clone() + c;
            }
        }
        out.terms.retain(|_, c| !c.is_zero());
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::constant(self.nvars, Rational::one());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Substitute variable `i := 0`.
    pub fn set_var_zero(&self, i: usize) -> Self {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().filter(|(e, _)| e[i] == 0).map(|(e, c)| (e.clone(), c.clone())).collect(),
        }
    }

    /// Substitute variable `i := r` (a constant).
    pub fn set_var_const(&self, i: usize, r: &Rational<I>) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            let k = e2[i];
            e2[i] = 0;
            let mut coeff = c.clone();
            for _ in 0..k {
                coeff = coeff * r.clone();
            }
            if coeff.is_zero() {
                continue;
            }
            let slot = out.terms.entry(e2).or_insert_with(Rational::zero);
            *slot = slot.clone() + coeff;
        }
        out.terms.retain(|_, c| !c.is_zero());
        out
    }

    /// Does the polynomial involve variable `i`?
    pub fn uses_var(&self, i: usize) -> bool {
        self.terms.keys().any(|e| e[i] > 0)
    }

    pub fn partial(&self, i: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            let coeff = c.clone() * Rational::from_integer(crate::scalar::int(e[i] as i64));
            let slot = out.terms.entry(e2).or_insert_with(Rational::zero);
            *slot = slot.clone() + coeff;
        }
        out
    }

    /// Substitute each variable by a polynomial (e.g. a linear form).
    pub fn substitute(&self, images: &[Poly<I>]) -> Self {
        assert_eq!(images.len(), self.nvars);
        let out_vars = images.first().map(|p| p.nvars).unwrap_or(0);
        let mut out = Poly::zero(out_vars);
        for (e, c) in &self.terms {
            let mut term = Poly::constant(out_vars, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    term = term.mul(&images[i].pow(k));
                }
            }
            out = out.add(&term);
        }
        out
    }

    pub fn eval_exact(&self, point: &[Rational<I>]) -> Rational<I> {
        assert_eq!(point.len(), self.nvars);
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    t = t * point[i].clone();
                }
            }
            acc = acc + t;
        }
        acc
    }

    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        let mut acc = 0.0;
        for (e, c) in &self.terms {
            let mut t = c.to_f64().unwrap_or(f64::NAN);
            for (i, &k) in e.iter().enumerate() {
                t *= point[i].powi(k as i32);
            }
            acc += t;
        }
        acc
    }

    /// Interval bound over a box (entrywise interval arithmetic on terms).
    pub fn eval_interval(&self, box_: &[(f64, f64)]) -> (f64, f64) {
        let mut lo = 0.0f64;
        let mut hi = 0.0f64;
        for (e, c) in &self.terms {
            let cf = c.to_f64().unwrap_or(f64::NAN);
            let (mut tlo, mut thi) = (cf, cf);
            for (i, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    let (a, b) = box_[i];
                    let cands = [tlo * a, tlo * b, thi * a, thi * b];
                    tlo = cands.iter().cloned().fold(f64::INFINITY, f64::min);
                    thi = cands.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
                }
            }
            lo += tlo;
            hi += thi;
        }
        // Small outward pad against rounding.
        let pad = 1e-12 * (1.0 + lo.abs().max(hi.abs()));
        (lo - pad, hi + pad)
    }
}

/// A polynomial map `ℚ^nvars → ℚ^len(components)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMap<I: IntScalar> {
    pub components: Vec<Poly<I>>,
}

impl<I: IntScalar> PolyMap<I> {
    pub fn zero(nvars: usize, out_dim: usize) -> Self {
        PolyMap { components: vec![Poly::zero(nvars); out_dim] }
    }

    pub fn nvars(&self) -> usize {
        self.components.first().map(|p| p.nvars()).unwrap_or(0)
    }

    pub fn out_dim(&self) -> usize {
        self.components.len()
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|p| p.is_zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        PolyMap {
            components: self.components.iter().zip(&other.components).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        PolyMap {
            components: self.components.iter().zip(&other.components).map(|(a, b)| a.sub(b)).collect(),
        }
    }

    pub fn scale(&self, c: &Rational<I>) -> Self {
        PolyMap { components: self.components.iter().map(|p| p.scale(c)).collect() }
    }

    pub fn total_degree(&self) -> u32 {
        self.components.iter().map(|p| p.total_degree()).max().unwrap_or(0)
    }

    pub fn set_var_zero(&self, i: usize) -> Self {
        PolyMap { components: self.components.iter().map(|p| p.set_var_zero(i)).collect() }
    }

    pub fn eval_exact(&self, point: &[Rational<I>]) -> Vec<Rational<I>> {
        self.components.iter().map(|p| p.eval_exact(point)).collect()
    }

    pub fn eval_f64(&self, point: &[f64]) -> Vec<f64> {
        self.components.iter().map(|p| p.eval_f64(point)).collect()
    }

    /// Precompose with the linear map given by `m` (old var `i` becomes the
    /// linear form `Σ_j m[i][j]·y_j`).
    pub fn precompose_linear(&self, m: &RatMat<I>) -> Self {
        let new_vars = m.cols();
        let images: Vec<Poly<I>> = (0..m.rows())
            .map(|i| {
                let mut p = Poly::zero(new_vars);
                for j in 0..new_vars {
                    p = p.add(&Poly::var(new_vars, j).scale(&m.get(i, j)));
                }
                p
            })
            .collect();
        PolyMap { components: self.components.iter().map(|p| p.substitute(&images)).collect() }
    }

    /// Postcompose with the linear map `m` (new output `i` = Σ_j m[i][j]·old_j).
    pub fn postcompose_linear(&self, m: &RatMat<I>) -> Self {
        assert_eq!(m.cols(), self.out_dim());
        let components = (0..m.rows())
            .map(|i| {
                let mut p = Poly::zero(self.nvars());
                for (j, c) in self.components.iter().enumerate() {
                    p = p.add(&c.scale(&m.get(i, j)));
                }
                p
            })
            .collect();
        PolyMap { components }
    }
}

/// Small dense matrix over the rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMat<I: IntScalar> {
    rows: usize,
    cols: usize,
    data: Vec<Rational<I>>,
}

impl<I: IntScalar> RatMat<I> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        RatMat { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows_in: &[Vec<Rational<I>>]) -> Self {
        let rows = rows_in.len();
        let cols = rows_in.first().map(|r| r.len()).unwrap_or(0);
        let mut m = Self::zero(rows, cols);
        for (i, r) in rows_in.iter().enumerate() {
            for (j, v) in r.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn from_i64(rows_in: &[Vec<i64>]) -> Self {
        Self::from_rows(
            &rows_in
                .iter()
                .map(|r| r.iter().map(|&x| Rational::from_integer(crate::scalar::int(x))).collect())
                .collect::<Vec<_>>(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Rational<I> {
        self.data[i * self.cols + j].clone()
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational<I>) {
        self.data[i * self.cols + j] = v;
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Rational::zero();
                for k in 0..self.cols {
                    acc = acc + self.get(i, k) * other.get(k, j);
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let v = self.get(i, j);
                    if i == j {
                        v.is_one()
                    } else {
                        v.is_zero()
                    }
                })
            })
    }

    /// Orthogonality `MᵀM = I`, exactly.
    pub fn is_orthogonal(&self) -> bool {
        self.rows == self.cols && self.transpose().mul(self).is_identity()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    type P = Poly<i64>;

    #[test]
    fn arithmetic_and_eval() {
        // (x + y)² = x² + 2xy + y²
        let x = P::var(2, 0);
        let y = P::var(2, 1);
        let sq = x.add(&y).pow(2);
        assert_eq!(sq.eval_exact(&[rat(1, 2), rat(1, 3)]), rat(25, 36));
        assert_eq!(sq.total_degree(), 2);
        assert_eq!(sq.partial(0), x.add(&y).scale(&rat(2, 1)));
    }

    #[test]
    fn substitution_is_composition() {
        // p(x) = x² − 1, x ↦ 2u + v: p = (2u+v)² − 1
        let p = P::var(1, 0).pow(2).sub(&P::constant(1, rat(1, 1)));
        let image = P::var(2, 0).scale(&rat(2, 1)).add(&P::var(2, 1));
        let q = p.substitute(&[image.clone()]);
        let direct = image.pow(2).sub(&P::constant(2, rat(1, 1)));
        assert_eq!(q, direct);
    }

    #[test]
    fn interval_bound_contains_range() {
        let p = P::var(1, 0).pow(2).sub(&P::var(1, 0)); // x² − x on [0,1]: range [−1/4, 0]
        let (lo, hi) = p.eval_interval(&[(0.0, 1.0)]);
        assert!(lo <= -0.25 && hi >= 0.0);
    }

    #[test]
    fn orthogonality_check() {
        let swap = RatMat::<i64>::from_i64(&[vec![0, 1], vec![1, 0]]);
        assert!(swap.is_orthogonal());
        let shear = RatMat::<i64>::from_i64(&[vec![1, 1], vec![0, 1]]);
        assert!(!shear.is_orthogonal());
    }

    #[test]
    fn pre_and_post_composition() {
        // p(x, y) = (x·y); precompose with the swap: (y·x) = same; post with
        // negation flips the sign.
        let p = PolyMap { components: vec![P::var(2, 0).mul(&P::var(2, 1))] };
        let swap = RatMat::<i64>::from_i64(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(p.precompose_linear(&swap), p);
        let neg = RatMat::<i64>::from_i64(&[vec![-1]]);
        assert_eq!(p.postcompose_linear(&neg), p.scale(&rat(-1, 1)));
    }
}
