//! Exact linear systems over ℚ(√5).

use super::matrix::ScalarMatrix;
use super::scalar::ExactScalar;

/// Outcome of solving `A x = b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinSolution {
    /// Exactly one solution.
    Unique(Vec<ExactScalar>),
    /// Solutions exist; `particular` sets every free variable to zero and
    /// `null_space` spans the homogeneous solutions.
    Underdetermined { particular: Vec<ExactScalar>, free: Vec<usize>, null_space: Vec<Vec<ExactScalar>> },
    /// No solution. `certificate` is a vector `y` with `yᵀA = 0` and `yᵀb ≠ 0`.
    Inconsistent { certificate: Vec<ExactScalar> },
}

impl LinSolution {
    /// Some solution when one exists.
    pub fn solution(&self) -> Option<&[ExactScalar]> {
        match self {
            LinSolution::Unique(x) => Some(x),
            LinSolution::Underdetermined { particular, .. } => Some(particular),
            LinSolution::Inconsistent { .. } => None,
        }
    }
}

/// Reduced row echelon form and pivot columns.
pub fn row_echelon(a: &ScalarMatrix) -> (ScalarMatrix, Vec<usize>) {
    let (r, _, piv) = rref_tracked(a);
    (r, piv)
}

/// RREF of `a` together with the transform `T` such that `T a = rref`.
fn rref_tracked(a: &ScalarMatrix) -> (ScalarMatrix, ScalarMatrix, Vec<usize>) {
    let (m, n) = (a.rows(), a.cols());
    let mut r: Vec<Vec<ExactScalar>> = (0..m).map(|i| a.row(i).to_vec()).collect();
    let mut t: Vec<Vec<ExactScalar>> = (0..m).map(|i| ScalarMatrix::identity(m).row(i).to_vec()).collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..n {
        if row == m {
            break;
        }
        let Some(p) = (row..m).find(|&i| !r[i][col].is_zero()) else {
            continue;
        };
        r.swap(row, p);
        t.swap(row, p);
        let inv = r[row][col].inverse().expect("nonzero pivot");
        for x in r[row].iter_mut() {
            *x = &*x * &inv;
        }
        for x in t[row].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..m {
            if i == row || r[i][col].is_zero() {
                continue;
            }
            let f = r[i][col].clone();
            let (lo, hi) = r.split_at_mut(i.max(row));
            let (dst, src) = if i > row { (&mut hi[0], &lo[row]) } else { (&mut lo[i], &hi[0]) };
            for (x, y) in dst.iter_mut().zip(src) {
                *x -= &(&f * y);
            }
            let (lo, hi) = t.split_at_mut(i.max(row));
            let (dst, src) = if i > row { (&mut hi[0], &lo[row]) } else { (&mut lo[i], &hi[0]) };
            for (x, y) in dst.iter_mut().zip(src) {
                *x -= &(&f * y);
            }
        }
        pivots.push(col);
        row += 1;
    }
    (ScalarMatrix::from_rows_sized(m, n, r), ScalarMatrix::from_rows_sized(m, m, t), pivots)
}

/// Solve `A x = b` exactly.
pub fn solve(a: &ScalarMatrix, b: &[ExactScalar]) -> LinSolution {
    assert_eq!(a.rows(), b.len(), "right-hand side length mismatch");
    let n = a.cols();
    let (r, t, pivots) = rref_tracked(a);
    let tb = t.apply(b);
    let rank = pivots.len();
    if let Some(i) = (rank..a.rows()).find(|&i| !tb[i].is_zero()) {
        return LinSolution::Inconsistent { certificate: t.row(i).to_vec() };
    }
    let mut x = vec![ExactScalar::zero(); n];
    for (k, &c) in pivots.iter().enumerate() {
        x[c] = tb[k].clone();
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    if free.is_empty() {
        return LinSolution::Unique(x);
    }
    let null_space = free
        .iter()
        .map(|&f| {
            let mut v = vec![ExactScalar::zero(); n];
            v[f] = ExactScalar::one();
            for (k, &c) in pivots.iter().enumerate() {
                v[c] = -r.get(k, f);
            }
            v
        })
        .collect();
    LinSolution::Underdetermined { particular: x, free, null_space }
}

impl ScalarMatrix {
    pub(crate) fn from_rows_sized(rows: usize, cols: usize, data: Vec<Vec<ExactScalar>>) -> Self {
        if rows == 0 || cols == 0 {
            return ScalarMatrix::zeros(rows, cols);
        }
        ScalarMatrix::from_rows(data)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<ExactScalar> {
        v.iter().map(|&x| ExactScalar::from_int(x)).collect()
    }

    #[test]
    fn unique() {
        let a = ScalarMatrix::from_int_rows(&[&[1, 1], &[1, -1]]);
        assert_eq!(solve(&a, &ints(&[3, 1])), LinSolution::Unique(ints(&[2, 1])));
    }

    #[test]
    fn underdetermined() {
        let a = ScalarMatrix::from_int_rows(&[&[1, 2, 3]]);
        match solve(&a, &ints(&[6])) {
            LinSolution::Underdetermined { particular, free, null_space } => {
                assert_eq!(particular, ints(&[6, 0, 0]));
                assert_eq!(free, vec![1, 2]);
                for v in null_space {
                    assert!(a.apply(&v)[0].is_zero());
                }
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn inconsistent_certificate() {
        let a = ScalarMatrix::from_int_rows(&[&[1, 1], &[2, 2]]);
        let b = ints(&[1, 3]);
        let LinSolution::Inconsistent { certificate } = solve(&a, &b) else { panic!() };
        let ya = a.transpose().apply(&certificate);
        assert!(ya.iter().all(|x| x.is_zero()));
        let yb = certificate.iter().zip(&b).fold(ExactScalar::zero(), |s, (p, q)| &s + &(p * q));
        assert!(!yb.is_zero());
    }
}
