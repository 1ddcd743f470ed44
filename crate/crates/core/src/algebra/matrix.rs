//! Dense matrices over ℚ(√5) and square matrices of polynomials.

use super::poly::MultiPoly;
use super::scalar::ExactScalar;
use super::unipoly::UniPoly;
use std::collections::HashMap;
use std::fmt;
use std::ops::Mul;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ScalarMatrix {
    rows: usize,
    cols: usize,
    data: Vec<ExactScalar>,
}

impl ScalarMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ScalarMatrix { rows, cols, data: vec![ExactScalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, ExactScalar::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<ExactScalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        ScalarMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&v| ExactScalar::from_int(v)).collect()).collect())
    }

    /// Outer product `u vᵀ`.
    pub fn outer(u: &[ExactScalar], v: &[ExactScalar]) -> Self {
        let mut m = Self::zeros(u.len(), v.len());
        for (i, a) in u.iter().enumerate() {
            for (j, b) in v.iter().enumerate() {
                m.set(i, j, a * b);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &ExactScalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: ExactScalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[ExactScalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(j, i, self.get(i, j).clone());
            }
        }
        m
    }

    pub fn scale(&self, c: &ExactScalar) -> Self {
        ScalarMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * c).collect() }
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        ScalarMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&ExactScalar::from_int(-1)))
    }

    pub fn apply(&self, v: &[ExactScalar]) -> Vec<ExactScalar> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).fold(ExactScalar::zero(), |acc, (a, b)| &acc + &(a * b)))
            .collect()
    }

    pub fn trace(&self) -> ExactScalar {
        (0..self.rows.min(self.cols)).fold(ExactScalar::zero(), |acc, i| &acc + self.get(i, i))
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Self::identity(self.rows)
    }

    pub fn is_orthogonal(&self) -> bool {
        (&self.transpose() * self).is_identity()
    }

    /// Determinant by Gaussian elimination over the field.
    pub fn det(&self) -> ExactScalar {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut det = ExactScalar::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !a.get(i, k).is_zero()) else {
                return ExactScalar::zero();
            };
            if p != k {
                for j in 0..n {
                    let t = a.get(p, j).clone();
                    a.set(p, j, a.get(k, j).clone());
                    a.set(k, j, t);
                }
                det = -det;
            }
            let piv = a.get(k, k).clone();
            det = &det * &piv;
            let inv = piv.inverse().expect("nonzero pivot");
            for i in k + 1..n {
                let f = a.get(i, k) * &inv;
                if f.is_zero() {
                    continue;
                }
                for j in k..n {
                    let v = a.get(i, j) - &(&f * a.get(k, j));
                    a.set(i, j, v);
                }
            }
        }
        det
    }

    pub fn rank(&self) -> usize {
        super::linsolve::row_echelon(self).1.len()
    }

    /// Characteristic polynomial `det(tI − A)` by Faddeev–LeVerrier.
    pub fn charpoly(&self) -> UniPoly {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut coeffs = vec![ExactScalar::zero(); n + 1];
        coeffs[n] = ExactScalar::one();
        let mut m = Self::zeros(n, n);
        let mut c = ExactScalar::one();
        for k in 1..=n {
            m = &(self * &m).clone() + &Self::identity(n).scale(&c);
            let am = self * &m;
            c = am.trace().scale_int_inv(-(k as i64));
            coeffs[n - k] = c.clone();
        }
        UniPoly::new(coeffs)
    }

    pub fn to_f64(&self) -> Vec<Vec<f64>> {
        (0..self.rows).map(|i| self.row(i).iter().map(|x| x.to_f64()).collect()).collect()
    }
}

trait ScaleIntInv {
    fn scale_int_inv(&self, k: i64) -> ExactScalar;
}

impl ScaleIntInv for ExactScalar {
    fn scale_int_inv(&self, k: i64) -> ExactScalar {
        self * &ExactScalar::from_frac(1, k)
    }
}

impl<'a> Mul<&'a ScalarMatrix> for &'a ScalarMatrix {
    type Output = ScalarMatrix;
    fn mul(self, o: &'a ScalarMatrix) -> ScalarMatrix {
        assert_eq!(self.cols, o.rows, "dimension mismatch");
        let mut m = ScalarMatrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        let v = m.get(i, j) + &(a * b);
                        m.set(i, j, v);
                    }
                }
            }
        }
        m
    }
}

impl<'a> std::ops::Add<&'a ScalarMatrix> for &'a ScalarMatrix {
    type Output = ScalarMatrix;
    fn add(self, o: &'a ScalarMatrix) -> ScalarMatrix {
        ScalarMatrix::add(self, o)
    }
}

impl fmt::Debug for ScalarMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.rows {
            let r: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", r.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Square matrix of polynomials, row major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyMatrix {
    n: usize,
    data: Vec<MultiPoly>,
}

impl PolyMatrix {
    pub fn zeros(n: usize) -> Self {
        PolyMatrix { n, data: vec![MultiPoly::zero(); n * n] }
    }

    pub fn from_rows(rows: Vec<Vec<MultiPoly>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        PolyMatrix { n, data: rows.into_iter().flatten().collect() }
    }

    /// Symmetric matrix from its upper triangle given row by row.
    pub fn symmetric_from_upper(n: usize, upper: Vec<MultiPoly>) -> Self {
        assert_eq!(upper.len(), n * (n + 1) / 2);
        let mut m = Self::zeros(n);
        let mut it = upper.into_iter();
        for i in 0..n {
            for j in i..n {
                let v = it.next().expect("length checked");
                m.set(j, i, v.clone());
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &MultiPoly {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: MultiPoly) {
        self.data[i * self.n + j] = v;
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (i + 1..self.n).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn map(&self, f: impl Fn(&MultiPoly) -> MultiPoly) -> Self {
        PolyMatrix { n: self.n, data: self.data.iter().map(f).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.n, o.n);
        let mut m = Self::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                let mut acc = MultiPoly::zero();
                for k in 0..self.n {
                    acc = &acc + &(self.get(i, k) * o.get(k, j));
                }
                m.set(i, j, acc);
            }
        }
        m
    }

    /// Determinant by Laplace expansion along rows with memoised minors.
    pub fn det(&self) -> MultiPoly {
        let mut memo: HashMap<u64, MultiPoly> = HashMap::new();
        assert!(self.n < 64);
        self.minor(0, (1u64 << self.n) - 1, &mut memo)
    }

    fn minor(&self, row: usize, cols: u64, memo: &mut HashMap<u64, MultiPoly>) -> MultiPoly {
        if cols == 0 {
            return MultiPoly::one();
        }
        if let Some(v) = memo.get(&cols) {
            return v.clone();
        }
        let mut acc = MultiPoly::zero();
        let mut sign_neg = false;
        for j in 0..self.n {
            if cols & (1 << j) == 0 {
                continue;
            }
            let e = self.get(row, j);
            if !e.is_zero() {
                let sub = self.minor(row + 1, cols & !(1 << j), memo);
                let t = e * &sub;
                acc = if sign_neg { &acc - &t } else { &acc + &t };
            }
            sign_neg = !sign_neg;
        }
        memo.insert(cols, acc.clone());
        acc
    }

    /// Evaluate every entry at a point.
    pub fn eval_f64(&self, value: impl Fn(&str) -> f64 + Copy) -> Vec<Vec<f64>> {
        (0..self.n).map(|i| (0..self.n).map(|j| self.get(i, j).eval_f64(value)).collect()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse::poly;

    #[test]
    fn scalar_det_and_charpoly() {
        let m = ScalarMatrix::from_int_rows(&[&[2, 1], &[1, 3]]);
        assert_eq!(m.det(), ExactScalar::from_int(5));
        assert_eq!(m.charpoly(), UniPoly::from_ints(&[5, -5, 1]));
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn poly_det() {
        let m = PolyMatrix::symmetric_from_upper(2, vec![poly("1-x^2"), poly("-x*y"), poly("1-y^2")]);
        assert_eq!(m.det(), poly("1-x^2-y^2"));
        let id3 = PolyMatrix::from_rows(vec![
            vec![poly("a"), poly("0"), poly("0")],
            vec![poly("0"), poly("b"), poly("0")],
            vec![poly("0"), poly("0"), poly("c")],
        ]);
        assert_eq!(id3.det(), poly("a b c"));
    }
}
