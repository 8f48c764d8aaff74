//! Finite orthogonal group representations, Reynolds averaging, and
//! equivariant polynomial bases.

#[allow(unused_imports)]
use num_traits::{One as _, Zero as _};

use crate::error::PerturbError;
use crate::perturb::poly::{Poly, PolyMap, RatMat};
use crate::scalar::{IntScalar, Rational};

/// Cap on the generated group order; the whole module is desk scale.
const MAX_GROUP_ORDER: usize = 64;

/// A finite group acting by exact orthogonal rational matrices on
/// `V ≅ ℚ^{v_dim}` and `W ≅ ℚ^{w_dim}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroupRep<I: IntScalar> {
    pub v_dim: usize,
    pub w_dim: usize,
    /// All group elements, identity first.
    pub elements: Vec<(RatMat<I>, RatMat<I>)>,
    /// Indices of the generators inside `elements`.
    pub generators: Vec<usize>,
}

impl<I: IntScalar> FiniteGroupRep<I> {
    /// Close the generators under multiplication; every matrix must be
    /// orthogonal (so inverses are transposes and the action preserves the
    /// corner structure when a trivial factor is appended).
    pub fn from_generators(
        v_dim: usize,
        w_dim: usize,
        gens: Vec<(RatMat<I>, RatMat<I>)>,
    ) -> Result<Self, PerturbError> {
        for (gv, gw) in &gens {
            if gv.rows() != v_dim || gv.cols() != v_dim || gw.rows() != w_dim || gw.cols() != w_dim {
                return Err(PerturbError::BadRepresentation {
                    detail: "generator matrix dimensions do not match V, W".into(),
                });
            }
            if !gv.is_orthogonal() || !gw.is_orthogonal() {
                return Err(PerturbError::BadRepresentation {
                    detail: "generator matrices must be orthogonal".into(),
                });
            }
        }
        let id = (RatMat::identity(v_dim), RatMat::identity(w_dim));
        let mut elements = vec![id];
        let mut frontier = vec![0usize];
        while let Some(idx) = frontier.pop() {
            let current = elements[idx].clone();
            for (gv, gw) in &gens {
                let next = (gv.mul(&current.0), gw.mul(&current.1));
                if !elements.contains(&next) {
                    if elements.len() >= MAX_GROUP_ORDER {
                        return Err(PerturbError::BadRepresentation {
                            detail: format!("group order exceeds the desk cap {}", MAX_GROUP_ORDER),
                        });
                    }
                    elements.push(next);
                    frontier.push(elements.len() - 1);
                }
            }
        }
        let generators = gens
            .iter()
            .map(|g| elements.iter().position(|e| e == g).expect("generators are elements"))
            .collect();
        Ok(FiniteGroupRep { v_dim, w_dim, elements, generators })
    }

    pub fn trivial(v_dim: usize, w_dim: usize) -> Self {
        FiniteGroupRep {
            v_dim,
            w_dim,
            elements: vec![(RatMat::identity(v_dim), RatMat::identity(w_dim))],
            generators: Vec::new(),
        }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Is `p` equivariant: `g_W ∘ p = p ∘ g_V` for the generators?
    pub fn is_equivariant(&self, p: &PolyMap<I>) -> bool {
        self.generators.iter().all(|&gi| {
            let (gv, gw) = &self.elements[gi];
            p.precompose_linear(gv) == p.postcompose_linear(gw)
        })
    }
}

/// Reynolds averaging `(1/|Γ|) Σ_g g_W^{-1} ∘ p ∘ g_V`; the image is
/// equivariant and the operator is idempotent.
pub fn reynolds_project<I: IntScalar>(p: &PolyMap<I>, rep: &FiniteGroupRep<I>) -> PolyMap<I> {
    assert_eq!(p.nvars(), rep.v_dim, "polynomial domain must be V");
    assert_eq!(p.out_dim(), rep.w_dim, "polynomial codomain must be W");
    let mut acc = PolyMap::zero(rep.v_dim, rep.w_dim);
    for (gv, gw) in &rep.elements {
        // Orthogonal matrices invert by transposition.
        let term = p.precompose_linear(gv).postcompose_linear(&gw.transpose());
        acc = acc.add(&term);
    }
    let inv_order = Rational::one()
        / Rational::from_integer(crate::scalar::int::<I>(rep.order() as i64));
    acc.scale(&inv_order)
}

/// Basis of `Poly_d^Γ(V, W)`: Γ-equivariant polynomial maps of degree ≤ d.
#[derive(Clone, Debug)]
pub struct EquivariantPolySpace<I: IntScalar> {
    pub v_dim: usize,
    pub w_dim: usize,
    pub degree: u32,
    pub basis: Vec<PolyMap<I>>,
}

impl<I: IntScalar> EquivariantPolySpace<I> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Enumerate the image of the Reynolds operator on the monomial basis of
/// maps of degree ≤ d, keeping a linearly independent spanning set
/// (deterministic: monomials in lexicographic order, first-pivot kept).
pub fn enumerate_equivariant_basis<I: IntScalar>(
    v_dim: usize,
    w_dim: usize,
    degree: u32,
    rep: &FiniteGroupRep<I>,
) -> EquivariantPolySpace<I> {
    assert_eq!(rep.v_dim, v_dim);
    assert_eq!(rep.w_dim, w_dim);
    // All exponent vectors with |α| ≤ degree.
    let mut exps: Vec<Vec<u32>> = vec![vec![]];
    for _ in 0..v_dim {
        let mut next = Vec::new();
        for e in &exps {
            let used: u32 = e.iter().sum();
            for k in 0..=(degree - used) {
                let mut e2 = e.clone();
                e2.push(k);
                next.push(e2);
            }
        }
        exps = next;
    }
    exps.sort();

    // Coordinates of a PolyMap: (output slot, exponent vector) → coeff.
    let coord_index: std::collections::HashMap<(usize, Vec<u32>), usize> = exps
        .iter()
        .enumerate()
        .flat_map(|(ei, e)| (0..w_dim).map(move |j| ((j, e.clone()), ei * w_dim + j)))
        .collect();
    let ncoords = exps.len() * w_dim;

    let mut basis: Vec<PolyMap<I>> = Vec::new();
    let mut echelon: Vec<(usize, Vec<Rational<I>>)> = Vec::new(); // (pivot, reduced row)

    for e in &exps {
        for j in 0..w_dim {
            let mut q = PolyMap::zero(v_dim, w_dim);
            q.components[j] = Poly::monomial(v_dim, e, Rational::one());
            let projected = reynolds_project(&q, rep);
            if projected.is_zero() {
                continue;
            }
            // Vectorize and reduce against the echelon rows.
            let mut vec = vec![Rational::zero(); ncoords];
            for (slot, comp) in projected.components.iter().enumerate() {
                for (exp, c) in comp.terms() {
                    vec[coord_index[&(slot, exp.clone())]] = c.clone();
                }
            }
            for (pivot, row) in &echelon {
                if !vec[*pivot].is_zero() {
                    let factor = vec[*pivot].clone() / row[*pivot].clone();
                    for (v, r) in vec.iter_mut().zip(row) {
                        *v = v.clone() - factor.clone() * r.clone();
                    }
                }
            }
            if let Some(pivot) = vec.iter().position(|v| !v.is_zero()) {
                echelon.push((pivot, vec));
                basis.push(projected);
            }
        }
    }

    EquivariantPolySpace { v_dim, w_dim, degree, basis }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn z2_sign_on_v(trivial_w: bool) -> FiniteGroupRep<i64> {
        let gv = RatMat::from_i64(&[vec![-1]]);
        let gw = if trivial_w { RatMat::from_i64(&[vec![1]]) } else { RatMat::from_i64(&[vec![-1]]) };
        FiniteGroupRep::from_generators(1, 1, vec![(gv, gw)]).unwrap()
    }

    #[test]
    fn closure_and_order() {
        let rep = z2_sign_on_v(true);
        assert_eq!(rep.order(), 2);
        let swap = RatMat::from_i64(&[vec![0, 1], vec![1, 0]]);
        let rep2 =
            FiniteGroupRep::<i64>::from_generators(2, 1, vec![(swap, RatMat::identity(1))]).unwrap();
        assert_eq!(rep2.order(), 2);
    }

    #[test]
    fn reynolds_kills_odd_keeps_even() {
        // Z/2 by −1 on V, trivially on W: x ↦ 0, x² ↦ x².
        let rep = z2_sign_on_v(true);
        let x = PolyMap { components: vec![Poly::var(1, 0)] };
        assert!(reynolds_project(&x, &rep).is_zero());
        let x2 = PolyMap { components: vec![Poly::var(1, 0).pow(2)] };
        assert_eq!(reynolds_project(&x2, &rep), x2);
    }

    #[test]
    fn reynolds_trivial_group_is_identity() {
        let rep = FiniteGroupRep::<i64>::trivial(2, 1);
        let p = PolyMap { components: vec![Poly::var(2, 0).mul(&Poly::var(2, 1))] };
        assert_eq!(reynolds_project(&p, &rep), p);
    }

    #[test]
    fn reynolds_symmetrizes_swap() {
        // Z/2 swapping coordinates on ℚ², trivial on W: x ↦ (x+y)/2.
        let swap = RatMat::from_i64(&[vec![0, 1], vec![1, 0]]);
        let rep =
            FiniteGroupRep::<i64>::from_generators(2, 1, vec![(swap, RatMat::identity(1))]).unwrap();
        let x = PolyMap { components: vec![Poly::var(2, 0)] };
        let projected = reynolds_project(&x, &rep);
        let expected = PolyMap {
            components: vec![Poly::var(2, 0).add(&Poly::var(2, 1)).scale(&rat(1, 2))],
        };
        assert_eq!(projected, expected);
    }

    #[test]
    fn reynolds_idempotent_and_equivariant() {
        let rep = z2_sign_on_v(false);
        let p = PolyMap {
            components: vec![Poly::var(1, 0).pow(3).add(&Poly::var(1, 0).pow(2)).add(&Poly::var(1, 0))],
        };
        let once = reynolds_project(&p, &rep);
        let twice = reynolds_project(&once, &rep);
        assert_eq!(once, twice);
        assert!(rep.is_equivariant(&once));
    }

    #[test]
    fn equivariant_basis_dimensions() {
        // Trivial group, V = W = ℚ, d = 1: {1, x}.
        let rep = FiniteGroupRep::<i64>::trivial(1, 1);
        let s = enumerate_equivariant_basis(1, 1, 1, &rep);
        assert_eq!(s.dim(), 2);

        // Z/2 by −1 on both: odd maps only up to degree 2: {x}.
        let rep = z2_sign_on_v(false);
        let s = enumerate_equivariant_basis(1, 1, 2, &rep);
        assert_eq!(s.dim(), 1);
        assert!(s.basis.iter().all(|b| rep.is_equivariant(b)));

        // Z/2 by −1 on V, trivial on W: even maps {1, x²}.
        let rep = z2_sign_on_v(true);
        let s = enumerate_equivariant_basis(1, 1, 2, &rep);
        assert_eq!(s.dim(), 2);
        assert!(s.basis.iter().all(|b| rep.is_equivariant(b)));
    }
}
