//! The canonical boundary-extension algorithm on corner domains.

use std::collections::BTreeMap;

use crate::error::PerturbError;
use crate::perturb::poly::PolyMap;
use crate::scalar::IntScalar;

/// Polynomial section over the box `[0,1]^ℓ × [−1,1]^m`. Variables
/// `0..corner_dim` are the corner coordinates, the rest are free.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionOnBox<I: IntScalar> {
    pub corner_dim: usize,
    pub free_dim: usize,
    pub map: PolyMap<I>,
}

impl<I: IntScalar> SectionOnBox<I> {
    pub fn new(corner_dim: usize, free_dim: usize, map: PolyMap<I>) -> Self {
        assert_eq!(map.nvars(), corner_dim + free_dim);
        SectionOnBox { corner_dim, free_dim, map }
    }

    pub fn out_dim(&self) -> usize {
        self.map.out_dim()
    }

    pub fn dim(&self) -> usize {
        self.corner_dim + self.free_dim
    }

    /// Restriction to the closed face `U(T)`: corner coordinates outside
    /// the bitmask `t` set to zero.
    pub fn restrict_to_face(&self, t: u32) -> PolyMap<I> {
        restrict_map(&self.map, self.corner_dim, t)
    }
}

fn restrict_map<I: IntScalar>(map: &PolyMap<I>, corner_dim: usize, t: u32) -> PolyMap<I> {
    let mut out = map.clone();
    for j in 0..corner_dim {
        if (t >> j) & 1 == 0 {
            out = out.set_var_zero(j);
        }
    }
    out
}

/// Per-stratum boundary data: a polynomial map `s^T` for every proper
/// subset `T ⊊ [ℓ]` (bitmask keys). Each `s^T` is written in the full
/// variable set but may involve only the corner coordinates of `T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryData<I: IntScalar> {
    pub corner_dim: usize,
    pub free_dim: usize,
    pub out_dim: usize,
    pub faces: BTreeMap<u32, PolyMap<I>>,
}

impl<I: IntScalar> BoundaryData<I> {
    pub fn new(corner_dim: usize, free_dim: usize, out_dim: usize) -> Self {
        BoundaryData { corner_dim, free_dim, out_dim, faces: BTreeMap::new() }
    }

    pub fn set_face(&mut self, t: u32, map: PolyMap<I>) {
        assert!(t < full_mask(self.corner_dim), "face key must be a proper subset of [ℓ]");
        assert_eq!(map.nvars(), self.corner_dim + self.free_dim);
        assert_eq!(map.out_dim(), self.out_dim);
        self.faces.insert(t, map);
    }

    /// Every face must (a) only use its own corner coordinates and
    /// (b) restrict to the smaller faces' data: `s^T|_{U(T′)} = s^{T′}`
    /// for `T′ ⊆ T`.
    pub fn check_compatibility(&self) -> Result<(), PerturbError> {
        let full = full_mask(self.corner_dim);
        for t in 0..full {
            if !self.faces.contains_key(&t) {
                return Err(PerturbError::IncompatibleBoundary {
                    detail: format!("missing face data for stratum mask {:#b}", t),
                });
            }
        }
        for (&t, map) in &self.faces {
            for j in 0..self.corner_dim {
                if (t >> j) & 1 == 0 && map.components.iter().any(|p| p.uses_var(j)) {
                    return Err(PerturbError::IncompatibleBoundary {
                        detail: format!("face {:#b} uses corner coordinate {} outside its stratum", t, j + 1),
                    });
                }
            }
        }
        for (&t, map) in &self.faces {
            let mut sub = t;
            loop {
                sub = (sub.wrapping_sub(1)) & t;
                if sub == t {
                    break;
                }
                let restricted = restrict_map(map, self.corner_dim, sub);
                if &restricted != &self.faces[&sub] {
                    return Err(PerturbError::IncompatibleBoundary {
                        detail: format!("face {:#b} restricted to {:#b} disagrees with the given data", t, sub),
                    });
                }
                if sub == 0 {
                    break;
                }
            }
        }
        Ok(())
    }
}

fn full_mask(ell: usize) -> u32 {
    if ell == 0 {
        0
    } else {
        (1u32 << ell) - 1
    }
}

/// The canonical smooth extension of compatible boundary data: peel strata
/// by cardinality, subtracting each stratum's residual pulled back along
/// the projection `π_T` (which here is the identity on the polynomial
/// data, since `s^T` only involves `T`-coordinates). After step `j` the
/// residual vanishes identically on all strata with `|T| ≤ j`.
pub fn extend_from_boundary<I: IntScalar>(
    bd: &BoundaryData<I>,
) -> Result<SectionOnBox<I>, PerturbError> {
    bd.check_compatibility()?;
    let ell = bd.corner_dim;
    let nvars = bd.corner_dim + bd.free_dim;
    let mut residual = bd.faces.clone();
    let mut ext = PolyMap::zero(nvars, bd.out_dim);
    let full = full_mask(ell);
    for size in 0..ell {
        for t in 0..full {
            if (t.count_ones() as usize) != size {
                continue;
            }
            let term = residual[&t].clone(); // already a T-coordinate polynomial
            if term.is_zero() {
                continue;
            }
            ext = ext.add(&term);
            for (&t2, r) in residual.iter_mut() {
                if t2 != t && t2 & t == t {
                    *r = r.sub(&restrict_map(&term, ell, t2));
                }
            }
        }
        // Mark processed strata as consumed.
        for t in 0..full {
            if (t.count_ones() as usize) == size {
                residual.insert(t, PolyMap::zero(nvars, bd.out_dim));
            }
        }
    }
    let section = SectionOnBox::new(bd.corner_dim, bd.free_dim, ext);
    // Restriction to every face must reproduce the data exactly.
    for (&t, map) in &bd.faces {
        if &section.restrict_to_face(t) != map {
            return Err(PerturbError::IncompatibleBoundary {
                detail: format!("extension fails to restrict to face {:#b}", t),
            });
        }
    }
    Ok(section)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perturb::poly::Poly;
    use crate::scalar::rat;

    type P = Poly<i64>;

    fn constant_map(nvars: usize, c: (i64, i64)) -> PolyMap<i64> {
        PolyMap { components: vec![P::constant(nvars, rat(c.0, c.1))] }
    }

    #[test]
    fn ell_one_constant_extends_constantly() {
        let mut bd = BoundaryData::new(1, 0, 1);
        bd.set_face(0, constant_map(1, (7, 2)));
        let s = extend_from_boundary(&bd).unwrap();
        assert_eq!(s.map, constant_map(1, (7, 2)));
    }

    #[test]
    fn ell_two_walls_extend_to_f_plus_g_minus_c() {
        // Walls f(x) at y=0 and g(y) at x=0 with f(0) = g(0) = c:
        // the canonical extension is f(x) + g(y) − c.
        let x = P::var(2, 0);
        let y = P::var(2, 1);
        let c = rat::<i64>(3, 1);
        // f(x) = x² + 2x + 3, g(y) = 5y + 3.
        let f = x.pow(2).add(&x.scale(&rat(2, 1))).add(&P::constant(2, c.clone()));
        let g = y.scale(&rat(5, 1)).add(&P::constant(2, c.clone()));
        let mut bd = BoundaryData::new(2, 0, 1);
        bd.set_face(0b00, PolyMap { components: vec![P::constant(2, c.clone())] });
        bd.set_face(0b01, PolyMap { components: vec![f.clone()] }); // T = {1}: x free
        bd.set_face(0b10, PolyMap { components: vec![g.clone()] }); // T = {2}: y free
        let s = extend_from_boundary(&bd).unwrap();
        let expected = f.add(&g).sub(&P::constant(2, c));
        assert_eq!(s.map.components[0], expected);
    }

    #[test]
    fn zero_boundary_extends_to_zero() {
        let mut bd: BoundaryData<i64> = BoundaryData::new(2, 1, 2);
        for t in 0..3u32 {
            bd.set_face(t, PolyMap::zero(3, 2));
        }
        let s = extend_from_boundary(&bd).unwrap();
        assert!(s.map.is_zero());
    }

    #[test]
    fn incompatible_corner_values_rejected() {
        let mut bd = BoundaryData::new(2, 0, 1);
        bd.set_face(0b00, constant_map(2, (1, 1)));
        bd.set_face(0b01, constant_map(2, (2, 1))); // restricts to 2 ≠ 1 at the corner
        bd.set_face(0b10, constant_map(2, (1, 1)));
        assert!(matches!(
            extend_from_boundary(&bd),
            Err(PerturbError::IncompatibleBoundary { .. })
        ));
    }

    #[test]
    fn face_using_foreign_coordinate_rejected() {
        let mut bd = BoundaryData::new(2, 0, 1);
        bd.set_face(0b00, PolyMap::zero(2, 1));
        bd.set_face(0b01, PolyMap { components: vec![P::var(2, 1)] }); // uses y on the y=0 wall
        bd.set_face(0b10, PolyMap::zero(2, 1));
        assert!(matches!(
            extend_from_boundary(&bd),
            Err(PerturbError::IncompatibleBoundary { .. })
        ));
    }

    #[test]
    fn restrictions_of_global_sections_reextend_compatibly() {
        // Extension idempotence on faces: boundary data from a global
        // section re-extends with identical face restrictions.
        let x = P::var(3, 0);
        let y = P::var(3, 1);
        let u = P::var(3, 2);
        let global = PolyMap {
            components: vec![
                x.mul(&y).add(&u.pow(2)).add(&x.scale(&rat(3, 4))),
                y.pow(3).sub(&x).add(&P::constant(3, rat(1, 2))),
            ],
        };
        let section = SectionOnBox::new(2, 1, global);
        let mut bd: BoundaryData<i64> = BoundaryData::new(2, 1, 2);
        for t in 0..3u32 {
            bd.set_face(t, section.restrict_to_face(t));
        }
        let ext = extend_from_boundary(&bd).unwrap();
        for t in 0..3u32 {
            assert_eq!(ext.restrict_to_face(t), section.restrict_to_face(t));
        }
    }
}
