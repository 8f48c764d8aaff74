//! Discrete gradients: acyclic partial matchings on the Hasse diagram.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::morse::simplicial::SimplicialComplex;

/// Cell reference: (dimension, index within that dimension).
pub type CellRef = (usize, usize);

/// A partial matching pairing each cell with a cofacet; the induced
/// V-paths are acyclic.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DiscreteGradient {
    /// Pairs `(σ, τ)` with `τ` a cofacet of `σ`.
    pub pairs: Vec<(CellRef, CellRef)>,
}

impl DiscreteGradient {
    pub fn match_of(&self) -> HashMap<CellRef, CellRef> {
        let mut m = HashMap::new();
        for &(a, b) in &self.pairs {
            m.insert(a, b);
            m.insert(b, a);
        }
        m
    }

    pub fn is_matched(&self, c: CellRef) -> bool {
        self.pairs.iter().any(|&(a, b)| a == c || b == c)
    }

    /// Unmatched cells, in (dim, index) order.
    pub fn critical_cells(&self, x: &SimplicialComplex) -> Vec<CellRef> {
        let matched: HashSet<CellRef> = self.pairs.iter().flat_map(|&(a, b)| [a, b]).collect();
        let mut out = Vec::new();
        for d in 0..=x.dim() {
            for i in 0..x.count(d) {
                if !matched.contains(&(d, i)) {
                    out.push((d, i));
                }
            }
        }
        out
    }

    /// Acyclicity of the induced V-path digraph, by Kahn's algorithm on the
    /// graph whose nodes are the matched pairs: `(σ,τ) → (σ',τ')` when
    /// `σ' ≠ σ` is a facet of `τ`.
    pub fn is_acyclic(&self, x: &SimplicialComplex) -> bool {
        let up: HashMap<CellRef, usize> =
            self.pairs.iter().enumerate().map(|(idx, &(a, _))| (a, idx)).collect();
        let mut succ: Vec<Vec<usize>> = vec![Vec::new(); self.pairs.len()];
        let mut indeg = vec![0usize; self.pairs.len()];
        for (idx, &((sd, _si), tau)) in self.pairs.iter().enumerate() {
            for (f, _) in x.facets(tau.0, tau.1) {
                let fref = (sd, f);
                if fref == self.pairs[idx].0 {
                    continue;
                }
                if let Some(&j) = up.get(&fref) {
                    succ[idx].push(j);
                    indeg[j] += 1;
                }
            }
        }
        let mut queue: VecDeque<usize> = (0..self.pairs.len()).filter(|&i| indeg[i] == 0).collect();
        let mut seen = 0usize;
        while let Some(i) = queue.pop_front() {
            seen += 1;
            for &j in &succ[i] {
                indeg[j] -= 1;
                if indeg[j] == 0 {
                    queue.push_back(j);
                }
            }
        }
        seen == self.pairs.len()
    }
}

/// Matching strategy; `GreedyLex` is the deterministic coreduction pass.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    GreedyLex,
}

/// Build an acyclic matching by iterated coreduction with lexicographic
/// tie-breaking: repeatedly pair a cell having exactly one live facet with
/// that facet; when no such pair exists, retire the lexicographically
/// smallest live cell of minimal dimension as critical. Coreduction
/// matchings are acyclic; the result is verified anyway.
pub fn discrete_gradient(x: &SimplicialComplex, _strategy: Strategy) -> DiscreteGradient {
    let mut alive: Vec<HashSet<usize>> = (0..=x.dim()).map(|d| (0..x.count(d)).collect()).collect();
    let mut pairs = Vec::new();

    let live_facets = |alive: &Vec<HashSet<usize>>, d: usize, i: usize| -> Vec<usize> {
        if d == 0 {
            return Vec::new();
        }
        x.facets(d, i).into_iter().filter(|(f, _)| alive[d - 1].contains(f)).map(|(f, _)| f).collect()
    };

    let total: usize = (0..=x.dim()).map(|d| x.count(d)).sum();
    let mut removed = 0usize;
    while removed < total {
        // Coreduction pass: smallest (d, i) whose live facet count is 1.
        let mut found = None;
        'outer: for d in 1..=x.dim() {
            let mut live: Vec<usize> = alive[d].iter().copied().collect();
            live.sort_unstable();
            for i in live {
                let f = live_facets(&alive, d, i);
                if f.len() == 1 {
                    found = Some(((d - 1, f[0]), (d, i)));
                    break 'outer;
                }
            }
        }
        match found {
            Some((sigma, tau)) => {
                alive[sigma.0].remove(&sigma.1);
                alive[tau.0].remove(&tau.1);
                pairs.push((sigma, tau));
                removed += 2;
            }
            None => {
                // Retire the smallest live cell of minimal dimension.
                let mut retired = false;
                for d in 0..=x.dim() {
                    if let Some(&i) = alive[d].iter().min() {
                        alive[d].remove(&i);
                        removed += 1;
                        retired = true;
                        break;
                    }
                }
                if !retired {
                    break;
                }
            }
        }
    }

    let g = DiscreteGradient { pairs };
    debug_assert!(g.is_acyclic(x), "coreduction produced a cyclic matching");
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::morse::simplicial::{build_simplicial, Space};

    #[test]
    fn point_has_one_critical_cell() {
        let x = build_simplicial(Space::Point);
        let g = discrete_gradient(&x, Strategy::GreedyLex);
        assert!(g.pairs.is_empty());
        assert_eq!(g.critical_cells(&x).len(), 1);
    }

    #[test]
    fn interval_matches_once() {
        let x = build_simplicial(Space::Interval);
        let g = discrete_gradient(&x, Strategy::GreedyLex);
        assert_eq!(g.pairs.len(), 1);
        assert_eq!(g.critical_cells(&x).len(), 1);
        assert!(g.is_acyclic(&x));
    }

    #[test]
    fn sphere_is_perfect_and_morse_equation_holds() {
        let x = build_simplicial(Space::Sphere2);
        let g = discrete_gradient(&x, Strategy::GreedyLex);
        assert!(g.is_acyclic(&x));
        let crit = g.critical_cells(&x);
        assert!(crit.len() >= 2);
        let alt: i64 = crit.iter().map(|&(d, _)| if d % 2 == 0 { 1 } else { -1 }).sum();
        assert_eq!(alt, x.euler_char());
        assert_eq!(crit.len(), 2, "coreduction should be perfect on the 2-sphere");
    }

    #[test]
    fn morse_equation_on_all_examples() {
        for space in Space::ALL {
            let x = build_simplicial(space);
            let g = discrete_gradient(&x, Strategy::GreedyLex);
            assert!(g.is_acyclic(&x), "{}", space.name());
            let crit = g.critical_cells(&x);
            let alt: i64 = crit.iter().map(|&(d, _)| if d % 2 == 0 { 1 } else { -1 }).sum();
            assert_eq!(alt, x.euler_char(), "{}", space.name());
        }
    }
}
