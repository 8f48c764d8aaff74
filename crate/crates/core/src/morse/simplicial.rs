//! Small triangulated manifolds and their integer simplicial homology.

#[allow(unused_imports)]
use num_traits::{One as _, Signed as _, Zero as _};
use std::collections::BTreeSet;

use crate::morse::snf::smith_normal_form;
use crate::novikov::GradedCohomology;
use crate::scalar::IntScalar;

/// Finite simplicial complex, stored per dimension with sorted vertex
/// lists; the downward closure is generated on construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    pub vertex_count: usize,
    /// `simplices[d]` lists the d-simplices in lexicographic order.
    pub simplices: Vec<Vec<Vec<usize>>>,
}

impl SimplicialComplex {
    /// Build from maximal simplices (faces are generated).
    pub fn from_maximal(vertex_count: usize, maximal: &[Vec<usize>]) -> Self {
        let mut by_dim: Vec<BTreeSet<Vec<usize>>> = Vec::new();
        for s in maximal {
            let mut s = s.clone();
            s.sort_unstable();
            s.dedup();
            assert!(!s.is_empty(), "empty simplex");
            assert!(*s.last().unwrap() < vertex_count, "vertex out of range");
            for mask in 1u32..(1 << s.len()) {
                let face: Vec<usize> =
                    s.iter().enumerate().filter(|(i, _)| (mask >> i) & 1 == 1).map(|(_, &v)| v).collect();
                let d = face.len() - 1;
                while by_dim.len() <= d {
                    by_dim.push(BTreeSet::new());
                }
                by_dim[d].insert(face);
            }
        }
        let simplices = by_dim.into_iter().map(|set| set.into_iter().collect()).collect();
        SimplicialComplex { vertex_count, simplices }
    }

    pub fn dim(&self) -> usize {
        self.simplices.len().saturating_sub(1)
    }

    pub fn count(&self, d: usize) -> usize {
        self.simplices.get(d).map(|v| v.len()).unwrap_or(0)
    }

    pub fn euler_char(&self) -> i64 {
        (0..=self.dim()).map(|d| if d % 2 == 0 { self.count(d) as i64 } else { -(self.count(d) as i64) }).sum()
    }

    pub fn index_of(&self, d: usize, simplex: &[usize]) -> Option<usize> {
        self.simplices.get(d)?.binary_search_by(|s| s.as_slice().cmp(simplex)).ok()
    }

    /// Facets of a d-simplex with the alternating-sign incidence
    /// `∂[v_0..v_d] = Σ (−1)^i [v_0.. v̂_i ..v_d]`.
    pub fn facets(&self, d: usize, idx: usize) -> Vec<(usize, i64)> {
        if d == 0 {
            return Vec::new();
        }
        let s = &self.simplices[d][idx];
        let mut out = Vec::with_capacity(s.len());
        for i in 0..s.len() {
            let face: Vec<usize> = s.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, &v)| v).collect();
            let fi = self.index_of(d - 1, &face).expect("closed complex");
            out.push((fi, if i % 2 == 0 { 1 } else { -1 }));
        }
        out
    }

    /// Cofacets of a d-simplex with matching incidences.
    pub fn cofacets(&self, d: usize, idx: usize) -> Vec<(usize, i64)> {
        let mut out = Vec::new();
        if d + 1 > self.dim() {
            return out;
        }
        for (ci, _) in self.simplices[d + 1].iter().enumerate() {
            for (fi, inc) in self.facets(d + 1, ci) {
                if fi == idx {
                    out.push((ci, inc));
                }
            }
        }
        out
    }

    /// Integer boundary matrix `∂_d: C_d → C_{d−1}` (rows = (d−1)-simplices).
    pub fn boundary_matrix<I: IntScalar>(&self, d: usize) -> Vec<Vec<I>> {
        let rows = self.count(d.saturating_sub(1));
        let cols = self.count(d);
        if d == 0 || rows == 0 || cols == 0 {
            return vec![vec![I::zero(); cols]; if d == 0 { 0 } else { rows }];
        }
        let mut m = vec![vec![I::zero(); cols]; rows];
        for j in 0..cols {
            for (i, inc) in self.facets(d, j) {
                m[i][j] = crate::scalar::int(inc);
            }
        }
        m
    }

    /// For closed-surface sanity: every edge lies in exactly two triangles.
    pub fn is_closed_surface(&self) -> bool {
        if self.dim() != 2 {
            return false;
        }
        (0..self.count(1)).all(|e| self.cofacets(1, e).len() == 2)
    }
}

/// The bundled example spaces.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Space {
    Point,
    Interval,
    Circle,
    Sphere2,
    Torus,
    Rp2,
    Klein,
}

impl Space {
    pub const ALL: [Space; 7] =
        [Space::Point, Space::Interval, Space::Circle, Space::Sphere2, Space::Torus, Space::Rp2, Space::Klein];

    pub fn name(&self) -> &'static str {
        match self {
            Space::Point => "point",
            Space::Interval => "interval",
            Space::Circle => "circle",
            Space::Sphere2 => "sphere2",
            Space::Torus => "torus",
            Space::Rp2 => "rp2",
            Space::Klein => "klein",
        }
    }

    pub fn parse(name: &str) -> Option<Space> {
        Space::ALL.into_iter().find(|s| s.name() == name)
    }
}

/// Standard minimal or near-minimal triangulations with fixed vertex
/// orderings.
pub fn build_simplicial(space: Space) -> SimplicialComplex {
    match space {
        Space::Point => SimplicialComplex::from_maximal(1, &[vec![0]]),
        Space::Interval => SimplicialComplex::from_maximal(2, &[vec![0, 1]]),
        Space::Circle => SimplicialComplex::from_maximal(3, &[vec![0, 1], vec![1, 2], vec![0, 2]]),
        // Boundary of the 3-simplex.
        Space::Sphere2 => SimplicialComplex::from_maximal(
            4,
            &[vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]],
        ),
        // 7-vertex Möbius torus: {i, i+1, i+3} and {i, i+2, i+3} mod 7.
        Space::Torus => {
            let mut tris = Vec::new();
            for i in 0..7usize {
                tris.push(vec![i, (i + 1) % 7, (i + 3) % 7]);
                tris.push(vec![i, (i + 2) % 7, (i + 3) % 7]);
            }
            SimplicialComplex::from_maximal(7, &tris)
        }
        // 6-vertex real projective plane (antipodal icosahedron quotient).
        Space::Rp2 => SimplicialComplex::from_maximal(
            6,
            &[
                vec![0, 1, 4],
                vec![0, 1, 5],
                vec![0, 2, 3],
                vec![0, 2, 5],
                vec![0, 3, 4],
                vec![1, 2, 3],
                vec![1, 2, 4],
                vec![1, 3, 5],
                vec![2, 4, 5],
                vec![3, 4, 5],
            ],
        ),
        // 3×3 grid quotient with an orientation-reversing wrap in the
        // first coordinate.
        Space::Klein => {
            let vertex = |i: i64, j: i64| -> usize {
                let wraps = i.div_euclid(3);
                let iw = i.rem_euclid(3) as usize;
                let jw = if wraps % 2 == 0 { j.rem_euclid(3) } else { (-j).rem_euclid(3) } as usize;
                3 * iw + jw
            };
            let mut tris = Vec::new();
            for i in 0..3i64 {
                for j in 0..3i64 {
                    let a = vertex(i, j);
                    let b = vertex(i + 1, j);
                    let c = vertex(i, j + 1);
                    let d = vertex(i + 1, j + 1);
                    tris.push(vec![a, b, c]);
                    tris.push(vec![b, d, c]);
                }
            }
            SimplicialComplex::from_maximal(9, &tris)
        }
    }
}

/// Integer simplicial homology via the Smith oracle: Betti numbers and
/// torsion divisors per degree (homology convention on [`GradedCohomology`]).
pub fn simplicial_homology<I: IntScalar>(x: &SimplicialComplex) -> GradedCohomology<I> {
    let top = x.dim();
    let mut rank = vec![0usize; top + 2];
    let mut torsion: Vec<Vec<I>> = vec![Vec::new(); top + 2];
    for d in 1..=top {
        let snf = smith_normal_form(x.boundary_matrix::<I>(d));
        rank[d] = snf.rank;
        torsion[d] = snf.torsion();
    }
    let mut h = GradedCohomology::new(0);
    for d in 0..=top {
        let n_d = x.count(d);
        let free = n_d - rank[d] - rank[d + 1];
        h.groups.insert(
            d as i64,
            crate::novikov::CohomologyGroup { free_rank: free, torsion: torsion[d + 1].clone() },
        );
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;

    fn homology(space: Space) -> GradedCohomology<i64> {
        simplicial_homology(&build_simplicial(space))
    }

    #[test]
    fn complexes_are_what_they_claim() {
        let s2 = build_simplicial(Space::Sphere2);
        assert_eq!((s2.count(0), s2.count(1), s2.count(2)), (4, 6, 4));
        assert_eq!(s2.euler_char(), 2);
        assert!(s2.is_closed_surface());

        let rp2 = build_simplicial(Space::Rp2);
        assert_eq!((rp2.count(0), rp2.count(1), rp2.count(2)), (6, 15, 10));
        assert_eq!(rp2.euler_char(), 1);
        assert!(rp2.is_closed_surface());

        let t2 = build_simplicial(Space::Torus);
        assert_eq!((t2.count(0), t2.count(1), t2.count(2)), (7, 21, 14));
        assert_eq!(t2.euler_char(), 0);
        assert!(t2.is_closed_surface());

        let kb = build_simplicial(Space::Klein);
        assert_eq!(kb.euler_char(), 0);
        assert!(kb.is_closed_surface(), "klein grid triangulation must be a closed surface");
    }

    #[test]
    fn homology_of_point_and_circle() {
        let h = homology(Space::Point);
        assert_eq!(h.group(0).free_rank, 1);
        let h = homology(Space::Circle);
        assert_eq!(h.group(0).free_rank, 1);
        assert_eq!(h.group(1).free_rank, 1);
        assert!(h.group(1).torsion.is_empty());
    }

    #[test]
    fn homology_of_sphere_and_torus() {
        let h = homology(Space::Sphere2);
        assert_eq!((h.group(0).free_rank, h.group(1).free_rank, h.group(2).free_rank), (1, 0, 1));
        let h = homology(Space::Torus);
        assert_eq!((h.group(0).free_rank, h.group(1).free_rank, h.group(2).free_rank), (1, 2, 1));
        assert!(h.group(1).torsion.is_empty());
    }

    #[test]
    fn homology_of_rp2_and_klein() {
        let h = homology(Space::Rp2);
        assert_eq!(h.group(0).free_rank, 1);
        assert_eq!(h.group(1).free_rank, 0);
        assert_eq!(h.group(1).torsion, vec![2]);
        assert_eq!(h.group(2).free_rank, 0);
        assert!(h.group(2).torsion.is_empty());

        let h = homology(Space::Klein);
        assert_eq!(h.group(0).free_rank, 1);
        assert_eq!(h.group(1).free_rank, 1);
        assert_eq!(h.group(1).torsion, vec![2]);
        assert_eq!(h.group(2).free_rank, 0);
    }
}
