//! Small dense f64 linear algebra for the transversality checker.

/// Solve `A x = b` by Gaussian elimination with partial pivoting;
/// `None` when the pivot collapses.
pub fn solve(a: &[Vec<f64>], b: &[f64]) -> Option<Vec<f64>> {
    let n = a.len();
    if n == 0 {
        return Some(Vec::new());
    }
    let mut m: Vec<Vec<f64>> = a.iter().cloned().collect();
    let mut rhs = b.to_vec();
    for col in 0..n {
        let (pivot, pv) = (col..n)
            .map(|r| (r, m[r][col].abs()))
            .max_by(|x, y| x.1.partial_cmp(&y.1).unwrap())
            .unwrap();
        if pv < 1e-14 {
            return None;
        }
        m.swap(col, pivot);
        rhs.swap(col, pivot);
        for r in (col + 1)..n {
            let f = m[r][col] / m[col][col];
            for c in col..n {
                m[r][c] -= f * m[col][c];
            }
            rhs[r] -= f * rhs[col];
        }
    }
    let mut x = vec![0.0; n];
    for r in (0..n).rev() {
        let mut acc = rhs[r];
        for c in (r + 1)..n {
            acc -= m[r][c] * x[c];
        }
        x[r] = acc / m[r][r];
    }
    Some(x)
}

pub fn det(a: &[Vec<f64>]) -> f64 {
    let n = a.len();
    let mut m: Vec<Vec<f64>> = a.to_vec();
    let mut sign = 1.0;
    let mut acc = 1.0;
    for col in 0..n {
        let (pivot, pv) = (col..n)
            .map(|r| (r, m[r][col].abs()))
            .max_by(|x, y| x.1.partial_cmp(&y.1).unwrap())
            .unwrap();
        if pv == 0.0 {
            return 0.0;
        }
        if pivot != col {
            m.swap(col, pivot);
            sign = -sign;
        }
        acc *= m[col][col];
        for r in (col + 1)..n {
            let f = m[r][col] / m[col][col];
            for c in col..n {
                m[r][c] -= f * m[col][c];
            }
        }
    }
    sign * acc
}

/// Singular values via Jacobi eigenvalues of `A Aᵀ` (rows ≤ cols expected
/// small); descending order.
pub fn singular_values(a: &[Vec<f64>]) -> Vec<f64> {
    let r = a.len();
    if r == 0 {
        return Vec::new();
    }
    let c = a[0].len();
    let mut g = vec![vec![0.0; r]; r];
    for i in 0..r {
        for j in 0..r {
            g[i][j] = (0..c).map(|k| a[i][k] * a[j][k]).sum();
        }
    }
    let mut eig = symmetric_eigenvalues(&mut g);
    eig.sort_by(|x, y| y.partial_cmp(x).unwrap());
    eig.into_iter().map(|l| l.max(0.0).sqrt()).collect()
}

/// Numerical rank: singular values above `tol`.
pub fn rank_with_tol(a: &[Vec<f64>], tol: f64) -> usize {
    singular_values(a).into_iter().filter(|s| *s > tol).count()
}

/// Cyclic Jacobi iteration for a small symmetric matrix.
fn symmetric_eigenvalues(m: &mut [Vec<f64>]) -> Vec<f64> {
    let n = m.len();
    for _ in 0..64 {
        let mut off = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                off += m[i][j] * m[i][j];
            }
        }
        if off < 1e-28 {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                if m[p][q].abs() < 1e-18 {
                    continue;
                }
                let theta = 0.5 * (m[q][q] - m[p][p]) / m[p][q];
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (mpk, mqk) = (m[p][k], m[q][k]);
                    m[p][k] = c * mpk - s * mqk;
                    m[q][k] = s * mpk + c * mqk;
                }
                for k in 0..n {
                    let (mkp, mkq) = (m[k][p], m[k][q]);
                    m[k][p] = c * mkp - s * mkq;
                    m[k][q] = s * mkp + c * mkq;
                }
            }
        }
    }
    (0..n).map(|i| m[i][i]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solve_and_det() {
        let a = vec![vec![2.0, 1.0], vec![1.0, 3.0]];
        let x = solve(&a, &[5.0, 10.0]).unwrap();
        assert!((x[0] - 1.0).abs() < 1e-12 && (x[1] - 3.0).abs() < 1e-12);
        assert!((det(&a) - 5.0).abs() < 1e-12);
    }

    #[test]
    fn singular_values_of_diagonal() {
        let a = vec![vec![3.0, 0.0], vec![0.0, -4.0]];
        let s = singular_values(&a);
        assert!((s[0] - 4.0).abs() < 1e-9 && (s[1] - 3.0).abs() < 1e-9);
        assert_eq!(rank_with_tol(&a, 1e-8), 2);
        let b = vec![vec![1.0, 2.0], vec![2.0, 4.0]];
        assert_eq!(rank_with_tol(&b, 1e-8), 1);
    }
}
