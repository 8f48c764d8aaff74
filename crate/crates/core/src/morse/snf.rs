//! Plain integer Smith normal form over `Z`.
//!
//! This is the homology oracle: it shares no code with the Novikov-ring
//! reduction in `novikov::diag`, so the two can legitimately check each
//! other on integral inputs.

#[allow(unused_imports)]
use num_integer::Integer as _;
#[allow(unused_imports)]
use num_traits::{One as _, Signed as _, Zero as _};

use crate::scalar::IntScalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithResult<I: IntScalar> {
    pub rank: usize,
    /// Nonzero diagonal entries, positive, `d_i | d_{i+1}`.
    pub factors: Vec<I>,
}

impl<I: IntScalar> SmithResult<I> {
    pub fn torsion(&self) -> Vec<I> {
        self.factors.iter().filter(|f| **f > I::one()).cloned().collect()
    }
}

/// Smith normal form of a dense integer matrix (values only).
pub fn smith_normal_form<I: IntScalar>(mut m: Vec<Vec<I>>) -> SmithResult<I> {
    let rows = m.len();
    let cols = m.first().map(|r| r.len()).unwrap_or(0);
    let npiv = rows.min(cols);
    let mut factors: Vec<I> = Vec::new();

    for p in 0..npiv {
        let pivot_pos = {
            let mut best: Option<(I, (usize, usize))> = None;
            for i in p..rows {
                for j in p..cols {
                    let a = m[i][j].abs();
                    if a.is_zero() {
                        continue;
                    }
                    match &best {
                        Some((b, _)) if *b <= a => {}
                        _ => best = Some((a, (i, j))),
                    }
                }
            }
            match best {
                Some((_, pos)) => pos,
                None => break,
            }
        };
        m.swap(p, pivot_pos.0);
        for row in m.iter_mut() {
            row.swap(p, pivot_pos.1);
        }

        loop {
            // Clear row p and column p by nearest-quotient reduction,
            // swapping whenever a smaller remainder appears.
            loop {
                let mut clean = true;
                for i in (p + 1)..rows {
                    if m[i][p].is_zero() {
                        continue;
                    }
                    let q = div_nearest(&m[i][p], &m[p][p]);
                    if !q.is_zero() {
                        for j in p..cols {
                            let delta = q.clone() * m[p][j].clone();
                            m[i][j] -= delta;
                        }
                    }
                    if !m[i][p].is_zero() {
                        m.swap(p, i);
                        clean = false;
                    }
                }
                for j in (p + 1)..cols {
                    if m[p][j].is_zero() {
                        continue;
                    }
                    let q = div_nearest(&m[p][j], &m[p][p]);
                    if !q.is_zero() {
                        for i in p..rows {
                            let delta = q.clone() * m[i][p].clone();
                            m[i][j] -= delta;
                        }
                    }
                    if !m[p][j].is_zero() {
                        for row in m.iter_mut() {
                            row.swap(p, j);
                        }
                        clean = false;
                    }
                }
                if clean {
                    break;
                }
            }

            // Divisibility: fold an offending row into row p and retry
            // this pivot; the pivot strictly shrinks, so this terminates.
            let pivot = m[p][p].clone();
            let mut offender = None;
            'scan: for i in (p + 1)..rows {
                for j in (p + 1)..cols {
                    if !(m[i][j].clone() % pivot.clone()).is_zero() {
                        offender = Some(i);
                        break 'scan;
                    }
                }
            }
            match offender {
                Some(i) => {
                    for j in p..cols {
                        let add = m[i][j].clone();
                        m[p][j] += add;
                    }
                }
                None => break,
            }
        }

        factors.push(m[p][p].abs());
    }

    SmithResult { rank: factors.len(), factors }
}

/// Quotient minimizing |remainder| (ties toward floor).
fn div_nearest<I: IntScalar>(a: &I, b: &I) -> I {
    let (q, r) = a.div_mod_floor(b);
    let two_r = r.clone() + r;
    if two_r.abs() > b.abs() {
        q + I::one()
    } else {
        q
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn snf(m: &[&[i64]]) -> Vec<i64> {
        smith_normal_form(m.iter().map(|r| r.to_vec()).collect()).factors
    }

    #[test]
    fn small_cases() {
        assert_eq!(snf(&[&[2, 0], &[0, 3]]), vec![1, 6]);
        assert_eq!(snf(&[&[1, 0], &[0, 0]]), vec![1]);
        assert_eq!(snf(&[&[0]]), Vec::<i64>::new());
        assert_eq!(snf(&[&[2, 4, 4], &[-6, 6, 12], &[10, 4, 16]]), vec![2, 2, 156]);
        assert_eq!(snf(&[&[6, 4], &[4, 6]]), vec![2, 10]);
    }

    #[test]
    fn divisibility_chain_holds_on_randomish_inputs() {
        let mut seed = 0x9e3779b97f4a7c15u64;
        let mut next = || {
            seed ^= seed << 13;
            seed ^= seed >> 7;
            seed ^= seed << 17;
            ((seed % 13) as i64) - 6
        };
        for _ in 0..50 {
            let m: Vec<Vec<i64>> = (0..4).map(|_| (0..4).map(|_| next()).collect()).collect();
            let r = smith_normal_form(m.clone());
            for w in r.factors.windows(2) {
                assert_eq!(w[1] % w[0], 0, "{:?} from {:?}", r.factors, m);
            }
            assert!(r.factors.iter().all(|&f| f > 0));
        }
    }

    #[test]
    fn agrees_with_bigint_scalar() {
        use num_bigint::BigInt;
        let m: Vec<Vec<BigInt>> =
            vec![vec![2.into(), 4.into()], vec![6.into(), 8.into()]];
        let r = smith_normal_form(m);
        assert_eq!(r.factors, vec![BigInt::from(2), BigInt::from(4)]);
    }
}
