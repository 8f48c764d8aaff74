//! Doubling, collaring, and products of combinatorial stratified spaces.

use std::collections::HashMap;

use crate::error::StrataError;
use crate::strata::label::StratumLabel;
use crate::strata::space::{CombStratSpace, Face};

/// The double of a ⟨k⟩-space together with its `(Z/2)^k`-action.
///
/// Cells of the double are pairs `(c, a)` where `a ⊆ S(c)` indexes the
/// coset of `(Z/2)^k_{S(c)}` (sign flips supported on `[k]\S(c)` act
/// trivially near the stratum, so cosets are sign patterns on `S(c)`).
#[derive(Clone, Debug)]
pub struct DoubleResult {
    /// The underlying space; a ⟨0⟩-space (a closed object).
    pub space: CombStratSpace,
    /// Rank of the acting group `(Z/2)^k`.
    pub group_rank: usize,
    /// Original cell behind each double cell.
    pub origin: Vec<usize>,
    /// Coset mask (subset of the original cell's label bits).
    pub mask: Vec<u32>,
    /// Label bits of each original cell.
    orig_labels: Vec<u32>,
    lookup: HashMap<(usize, u32), usize>,
}

impl DoubleResult {
    /// Left translation of a group element (bitmask over `[k]`) on cells.
    pub fn act(&self, g: u32, cell: usize) -> usize {
        let orig = self.origin[cell];
        let label_bits = self.orig_labels[orig];
        let new_mask = (self.mask[cell] ^ g) & label_bits;
        self.lookup[&(orig, new_mask)]
    }

    /// Cells fixed by the single reflection flipping coordinate `j`
    /// (1-based); by the coset arithmetic these are exactly the doubles of
    /// cells whose label omits `j`.
    pub fn fixed_cells_of_flip(&self, j: usize) -> Vec<usize> {
        let g = 1u32 << (j - 1);
        (0..self.space.cells.len()).filter(|&c| self.act(g, c) == c).collect()
    }
}

/// Eq. (double): one copy of each cell per coset `2^{|S(c)|}`, glued along
/// smaller strata, with the `(Z/2)^k` action by left translation.
pub fn double(x: &CombStratSpace) -> Result<DoubleResult, StrataError> {
    x.validate()?;
    let k = x.k;
    let mut space = CombStratSpace::new(0);
    let mut origin = Vec::new();
    let mut mask = Vec::new();
    let mut lookup = HashMap::new();
    let mut orig_labels = Vec::with_capacity(x.cells.len());
    for c in &x.cells {
        orig_labels.push(c.label.bits());
        let bits = c.label.bits();
        let mut sub = bits;
        loop {
            // iterate subsets of `bits` (including 0)
            let id = space.add_cell(c.dim, StratumLabel::full(0));
            origin.push(c.id);
            mask.push(sub);
            lookup.insert((c.id, sub), id);
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & bits;
        }
    }
    for f in &x.faces {
        let face_bits = x.cells[f.face].label.bits();
        let cell_bits = x.cells[f.cell].label.bits();
        debug_assert_eq!(face_bits & !cell_bits, 0);
        let mut sub = cell_bits;
        loop {
            let from = lookup[&(f.cell, sub)];
            let to = lookup[&(f.face, sub & face_bits)];
            space.faces.push(Face { cell: from, face: to, incidence: f.incidence });
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & cell_bits;
        }
    }
    Ok(DoubleResult { space, group_rank: k, origin, mask, lookup, orig_labels })
}

/// The collar of a ⟨k⟩-space. Canonical cells are triples
/// `(c, S, A)` with `label(c) ⊆ S ⊆ [k]` and `A ⊆ [k]\S`: the cell
/// `c × (0,1)^A × {0}^{[k]\S\A}` of the piece `M(S) × [0,1]^{[k]\S}`,
/// the `t = 1` faces being glued to the piece at the larger stratum.
#[derive(Clone, Debug)]
pub struct CollarResult {
    pub space: CombStratSpace,
    /// `(original cell, piece stratum S, free coordinate set A)` per cell.
    pub provenance: Vec<(usize, StratumLabel, StratumLabel)>,
}

impl CollarResult {
    /// Cells of the `t = 0` boundary slice having stratum label exactly `s`.
    pub fn t0_cells_at(&self, s: &StratumLabel) -> Vec<usize> {
        self.provenance
            .iter()
            .enumerate()
            .filter(|(_, (_, piece, free))| piece == s && free.is_empty())
            .map(|(i, _)| i)
            .collect()
    }
}

pub fn collar(x: &CombStratSpace) -> Result<CollarResult, StrataError> {
    x.validate()?;
    let k = x.k;
    let mut space = CombStratSpace::new(k);
    let mut provenance = Vec::new();
    let mut lookup: HashMap<(usize, u32, u32), usize> = HashMap::new();

    for c in &x.cells {
        for s in StratumLabel::all(k) {
            if !c.label.is_subset_of(&s) {
                continue;
            }
            let comp_bits = StratumLabel::full(k).bits() & !s.bits();
            let mut a = comp_bits;
            loop {
                let free = StratumLabel::from_bits(k, a);
                let dim = c.dim + free.len();
                let label = s.union(&free);
                let id = space.add_cell(dim, label);
                provenance.push((c.id, s, free));
                lookup.insert((c.id, s.bits(), a), id);
                if a == 0 {
                    break;
                }
                a = (a - 1) & comp_bits;
            }
        }
    }

    // Faces: underlying faces of c, and cube faces of the free directions
    // (t=0 stays in the piece, t=1 glues to the piece at S ∪ {j}).
    for (id, (cid, s, free)) in provenance.iter().enumerate() {
        let c = &x.cells[*cid];
        for f in x.faces.iter().filter(|f| f.cell == *cid) {
            if let Some(&fid) = lookup.get(&(f.face, s.bits(), free.bits())) {
                space.faces.push(Face { cell: id, face: fid, incidence: f.incidence });
            }
        }
        let sign_c = if c.dim % 2 == 0 { 1 } else { -1 };
        for (pos, j) in free.elements().into_iter().enumerate() {
            let rest = free.bits() & !(1u32 << (j - 1));
            let koszul = sign_c * if pos % 2 == 0 { 1 } else { -1 };
            // t_j = 1: glued to the piece at S ∪ {j}.
            let at1 = lookup[&(*cid, s.with(j).bits(), rest)];
            space.faces.push(Face { cell: id, face: at1, incidence: koszul });
            // t_j = 0: boundary face inside the same piece.
            let at0 = lookup[&(*cid, s.bits(), rest)];
            space.faces.push(Face { cell: id, face: at0, incidence: -koszul });
        }
    }

    Ok(CollarResult { space, provenance })
}

/// Product of a ⟨k₁⟩- and a ⟨k₂⟩-space: cells are pairs, dimensions add,
/// labels concatenate with the second factor shifted by `k₁`.
pub fn product(x: &CombStratSpace, y: &CombStratSpace) -> CombStratSpace {
    let k = x.k + y.k;
    let mut out = CombStratSpace::new(k);
    let mut index = HashMap::new();
    for cx in &x.cells {
        for cy in &y.cells {
            let mut label = StratumLabel::empty(k);
            for e in cx.label.elements() {
                label = label.with(e);
            }
            for e in cy.label.elements() {
                label = label.with(e + x.k);
            }
            let id = out.add_cell(cx.dim + cy.dim, label);
            index.insert((cx.id, cy.id), id);
        }
    }
    for fx in &x.faces {
        for cy in &y.cells {
            let from = index[&(fx.cell, cy.id)];
            let to = index[&(fx.face, cy.id)];
            out.faces.push(Face { cell: from, face: to, incidence: fx.incidence });
        }
    }
    for cx in &x.cells {
        let sign = if cx.dim % 2 == 0 { 1 } else { -1 };
        for fy in &y.faces {
            let from = index[&(cx.id, fy.cell)];
            let to = index[&(cx.id, fy.face)];
            out.faces.push(Face { cell: from, face: to, incidence: sign * fy.incidence });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strata::space::examples::{interval, point, square};

    #[test]
    fn double_point_is_point() {
        let d = double(&point()).unwrap();
        assert_eq!(d.space.cells.len(), 1);
        assert_eq!(d.space.euler_char(), 1);
        assert_eq!(d.act(0, 0), 0);
    }

    #[test]
    fn double_interval_is_circle() {
        let d = double(&interval()).unwrap();
        // 2 one-cells + 2 zero-cells, χ = 0.
        assert_eq!(d.space.cells.iter().filter(|c| c.dim == 1).count(), 2);
        assert_eq!(d.space.cells.iter().filter(|c| c.dim == 0).count(), 2);
        assert_eq!(d.space.euler_char(), 0);
    }

    #[test]
    fn double_square_is_torus() {
        let d = double(&square()).unwrap();
        let count = |dim| d.space.cells.iter().filter(|c| c.dim == dim).count();
        assert_eq!((count(2), count(1), count(0)), (4, 8, 4));
        assert_eq!(d.space.euler_char(), 0);
    }

    #[test]
    fn double_copy_counts_are_two_to_label_size() {
        let x = square();
        let d = double(&x).unwrap();
        for c in &x.cells {
            let copies = d.origin.iter().filter(|&&o| o == c.id).count();
            assert_eq!(copies, 1 << c.label.len());
        }
    }

    #[test]
    fn double_action_is_free_on_top_stratum_and_fixes_walls() {
        let x = square();
        let d = double(&x).unwrap();
        // Free on copies of the open top stratum.
        for cell in 0..d.space.cells.len() {
            if x.cells[d.origin[cell]].label.is_full() {
                for g in 1u32..4 {
                    assert_ne!(d.act(g, cell), cell);
                }
            }
        }
        // Fixed locus of the flip of coordinate j = doubles of cells whose
        // label omits j.
        for j in 1..=2usize {
            let fixed = d.fixed_cells_of_flip(j);
            for cell in 0..d.space.cells.len() {
                let omits_j = !x.cells[d.origin[cell]].label.contains(j);
                assert_eq!(fixed.contains(&cell), omits_j);
            }
        }
    }

    #[test]
    fn group_action_permutes_and_preserves_dim() {
        let d = double(&square()).unwrap();
        for g in 0u32..4 {
            let mut seen = std::collections::HashSet::new();
            for cell in 0..d.space.cells.len() {
                let img = d.act(g, cell);
                assert_eq!(d.space.cells[img].dim, d.space.cells[cell].dim);
                assert!(seen.insert(img));
                // involution
                assert_eq!(d.act(g, img), cell);
            }
        }
    }

    #[test]
    fn collar_point_is_point() {
        let c = collar(&point()).unwrap();
        assert_eq!(c.space.cells.len(), 1);
        assert_eq!(c.space.euler_char(), 1);
    }

    #[test]
    fn collar_interval() {
        let x = interval();
        let c = collar(&x).unwrap();
        assert_eq!(c.space.euler_char(), 1);
        // two boundary 0-cells at t=0 in the corner stratum
        assert_eq!(c.t0_cells_at(&StratumLabel::empty(1)).len(), 2);
        c.space.validate().unwrap();
    }

    #[test]
    fn collar_square() {
        let x = square();
        let c = collar(&x).unwrap();
        assert_eq!(c.space.euler_char(), 1);
        assert_eq!(c.t0_cells_at(&StratumLabel::empty(2)).len(), 4);
        c.space.validate().unwrap();
    }

    #[test]
    fn collar_t0_counts_match_closed_strata() {
        for x in [interval(), square()] {
            let c = collar(&x).unwrap();
            for s in StratumLabel::all(x.k) {
                assert_eq!(c.t0_cells_at(&s).len(), x.closed_stratum_cells(&s).len(), "stratum {}", s);
            }
        }
    }

    #[test]
    fn product_unit_and_euler() {
        let p = point();
        let x = square();
        let px = product(&p, &x);
        assert_eq!(px.cells.len(), x.cells.len());
        assert_eq!(px.euler_char(), x.euler_char());
        px.validate().unwrap();

        let ii = product(&interval(), &interval());
        assert_eq!(ii.cells.len(), 9);
        assert_eq!(ii.k, 2);
        assert_eq!(ii.euler_char(), 1);
        ii.validate().unwrap();

        let is_ = product(&interval(), &square());
        assert_eq!(is_.euler_char(), interval().euler_char() * square().euler_char());
        is_.validate().unwrap();
    }

    #[test]
    fn product_interval_interval_matches_square_profile() {
        let ii = product(&interval(), &interval());
        let count = |dim| ii.cells.iter().filter(|c| c.dim == dim).count();
        assert_eq!((count(2), count(1), count(0)), (1, 4, 4));
        // 1-cells: two labeled {1}, two labeled {2}
        let ones = ii.cells.iter().filter(|c| c.dim == 1 && c.label == StratumLabel::new(2, &[1])).count();
        let twos = ii.cells.iter().filter(|c| c.dim == 1 && c.label == StratumLabel::new(2, &[2])).count();
        assert_eq!((ones, twos), (2, 2));
    }
}
