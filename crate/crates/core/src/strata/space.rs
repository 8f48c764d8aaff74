//! Combinatorial stratified spaces: finite cell complexes whose cells
//! carry ⟨k⟩-stratum labels. The stand-in for a topological ⟨k⟩-manifold
//! that supports the doubling/collaring/product calculus.

use crate::error::StrataError;
use crate::strata::label::StratumLabel;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub id: usize,
    pub dim: usize,
    pub label: StratumLabel,
}

/// `cell` has `face` as a codimension-≥1 face with the given incidence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub cell: usize,
    pub face: usize,
    pub incidence: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CombStratSpace {
    pub k: usize,
    pub cells: Vec<Cell>,
    pub faces: Vec<Face>,
}

impl CombStratSpace {
    pub fn new(k: usize) -> Self {
        CombStratSpace { k, cells: Vec::new(), faces: Vec::new() }
    }

    pub fn add_cell(&mut self, dim: usize, label: StratumLabel) -> usize {
        assert_eq!(label.k(), self.k, "label over wrong k");
        let id = self.cells.len();
        self.cells.push(Cell { id, dim, label });
        id
    }

    pub fn add_face(&mut self, cell: usize, face: usize, incidence: i64) {
        self.faces.push(Face { cell, face, incidence });
    }

    /// Closure and nonemptiness invariants:
    /// faces have smaller dimension and smaller-or-equal labels, labels live
    /// over the right `k`, and some cell carries the full label.
    pub fn validate(&self) -> Result<(), StrataError> {
        for (i, c) in self.cells.iter().enumerate() {
            if c.id != i {
                return Err(StrataError::InvariantViolation { detail: format!("cell id {} at index {}", c.id, i) });
            }
            if c.label.k() != self.k {
                return Err(StrataError::InvariantViolation {
                    detail: format!("cell {} label over k={} in a ⟨{}⟩-space", i, c.label.k(), self.k),
                });
            }
        }
        for f in &self.faces {
            let (cell, face) = match (self.cells.get(f.cell), self.cells.get(f.face)) {
                (Some(c), Some(d)) => (c, d),
                _ => {
                    return Err(StrataError::InvariantViolation {
                        detail: format!("face relation ({}, {}) out of range", f.cell, f.face),
                    })
                }
            };
            if face.dim >= cell.dim {
                return Err(StrataError::InvariantViolation {
                    detail: format!("face {} of {} does not drop dimension", f.face, f.cell),
                });
            }
            if !face.label.is_subset_of(&cell.label) {
                return Err(StrataError::InvariantViolation {
                    detail: format!(
                        "face {} (label {}) not inside the stratum closure of cell {} (label {})",
                        f.face, face.label, f.cell, cell.label
                    ),
                });
            }
        }
        if !self.cells.iter().any(|c| c.label.is_full()) {
            return Err(StrataError::InvariantViolation { detail: "top open stratum is empty".into() });
        }
        Ok(())
    }

    /// `Σ_cells (−1)^dim`.
    pub fn euler_char(&self) -> i64 {
        self.cells.iter().map(|c| if c.dim % 2 == 0 { 1 } else { -1 }).sum()
    }

    /// Cells whose label is exactly `s`.
    pub fn open_stratum_cells(&self, s: &StratumLabel) -> Vec<usize> {
        self.cells.iter().filter(|c| c.label == *s).map(|c| c.id).collect()
    }

    /// Cells of the closed stratum `X(s)`: label ⊆ s.
    pub fn closed_stratum_cells(&self, s: &StratumLabel) -> Vec<usize> {
        self.cells.iter().filter(|c| c.label.is_subset_of(s)).map(|c| c.id).collect()
    }
}

/// Standard examples used by tests and the CLI.
pub mod examples {
    use super::*;

    /// A single point as a ⟨0⟩-space.
    pub fn point() -> CombStratSpace {
        let mut x = CombStratSpace::new(0);
        x.add_cell(0, StratumLabel::full(0));
        x
    }

    /// The interval as a ⟨1⟩-space: one 1-cell labeled {1}, endpoints ∅.
    pub fn interval() -> CombStratSpace {
        let mut x = CombStratSpace::new(1);
        let v0 = x.add_cell(0, StratumLabel::empty(1));
        let v1 = x.add_cell(0, StratumLabel::empty(1));
        let e = x.add_cell(1, StratumLabel::full(1));
        x.add_face(e, v0, -1);
        x.add_face(e, v1, 1);
        x
    }

    /// The square as a ⟨2⟩-space: one 2-cell {1,2}, four 1-cells of
    /// single-element label, four corner 0-cells labeled ∅.
    pub fn square() -> CombStratSpace {
        let mut x = CombStratSpace::new(2);
        let corners: Vec<usize> = (0..4).map(|_| x.add_cell(0, StratumLabel::empty(2))).collect();
        // Edges: x-direction pair carries {1}, y-direction pair carries {2}.
        let e_bottom = x.add_cell(1, StratumLabel::new(2, &[1]));
        let e_top = x.add_cell(1, StratumLabel::new(2, &[1]));
        let e_left = x.add_cell(1, StratumLabel::new(2, &[2]));
        let e_right = x.add_cell(1, StratumLabel::new(2, &[2]));
        let f = x.add_cell(2, StratumLabel::full(2));
        // corners: 0 = (0,0), 1 = (1,0), 2 = (0,1), 3 = (1,1)
        x.add_face(e_bottom, corners[0], -1);
        x.add_face(e_bottom, corners[1], 1);
        x.add_face(e_top, corners[2], -1);
        x.add_face(e_top, corners[3], 1);
        x.add_face(e_left, corners[0], -1);
        x.add_face(e_left, corners[2], 1);
        x.add_face(e_right, corners[1], -1);
        x.add_face(e_right, corners[3], 1);
        x.add_face(f, e_bottom, 1);
        x.add_face(f, e_top, -1);
        x.add_face(f, e_right, 1);
        x.add_face(f, e_left, -1);
        x
    }
}
