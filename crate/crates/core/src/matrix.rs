//! Dense matrices over [`ExactScalar`].

use std::ops::Mul;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::ser::{Serialize, SerializeSeq, Serializer};

use crate::exact::ExactScalar;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<ExactScalar>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix { rows, cols, data: vec![ExactScalar::ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, ExactScalar::ONE);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<ExactScalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        ExactMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn diag(entries: &[ExactScalar]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, &v) in entries.iter().enumerate() {
            m.set(i, i, v);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> ExactScalar {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: ExactScalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn adjoint(&self) -> Self {
        let mut m = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(c, r, self.get(r, c).conj());
            }
        }
        m
    }

    pub fn scale(&self, s: ExactScalar) -> Self {
        ExactMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&x| x * s).collect() }
    }

    pub fn is_unitary(&self) -> bool {
        self.is_square() && self * &self.adjoint() == Self::identity(self.rows)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::identity(self.rows);
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// Adjugate by cofactor expansion, skipping zeros (the braid generators
    /// are sparse, so this stays cheap at 8×8).
    pub fn adjugate(&self) -> Self {
        assert!(self.is_square());
        let n = self.rows;
        let mut adj = Self::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                let rows: Vec<usize> = (0..n).filter(|&x| x != r).collect();
                let cols: Vec<usize> = (0..n).filter(|&x| x != c).collect();
                let mut minor = self.det_sub(&rows, &cols);
                if (r + c) % 2 == 1 {
                    minor = -minor;
                }
                adj.set(c, r, minor);
            }
        }
        adj
    }

    pub fn determinant(&self) -> ExactScalar {
        assert!(self.is_square());
        let idx: Vec<usize> = (0..self.rows).collect();
        self.det_sub(&idx, &idx)
    }

    fn det_sub(&self, rows: &[usize], cols: &[usize]) -> ExactScalar {
        if rows.is_empty() {
            return ExactScalar::ONE;
        }
        let r = rows[0];
        let rest = &rows[1..];
        let mut acc = ExactScalar::ZERO;
        for (j, &c) in cols.iter().enumerate() {
            let v = self.get(r, c);
            if v.is_zero() {
                continue;
            }
            let sub_cols: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let term = v * self.det_sub(rest, &sub_cols);
            if j % 2 == 0 {
                acc += term;
            } else {
                acc = acc - term;
            }
        }
        acc
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut m = Self::zeros(rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                m.set(i, j, self.get(r, c));
            }
        }
        m
    }

    /// If `self = λ·target` for some nonzero λ, return λ when it is exactly
    /// representable, or `Some(None)` when only proportionality is certified.
    pub fn proportionality(&self, target: &Self) -> Option<Option<ExactScalar>> {
        if self.rows != target.rows || self.cols != target.cols {
            return None;
        }
        let anchor = target.data.iter().position(|x| !x.is_zero())?;
        let t0 = target.data[anchor];
        let m0 = self.data[anchor];
        if m0.is_zero() {
            return None;
        }
        for (m, t) in self.data.iter().zip(&target.data) {
            if *m * t0 != *t * m0 {
                return None;
            }
        }
        Some(m0.checked_div(&t0))
    }

    pub fn to_complex(&self) -> DMatrix<Complex64> {
        DMatrix::from_fn(self.rows, self.cols, |r, c| self.get(r, c).to_complex())
    }

    pub fn iter(&self) -> impl Iterator<Item = &ExactScalar> {
        self.data.iter()
    }

    pub fn row(&self, r: usize) -> &[ExactScalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }
}

// A list of rows.
impl Serialize for ExactMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.rows))?;
        for r in 0..self.rows {
            seq.serialize_element(self.row(r))?;
        }
        seq.end()
    }
}

impl Mul for &ExactMatrix {
    type Output = ExactMatrix;
    fn mul(self, rhs: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = ExactMatrix::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = rhs.get(k, c);
                    if !b.is_zero() {
                        let i = r * rhs.cols + c;
                        out.data[i] += a * b;
                    }
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(m: i64) -> ExactScalar {
        ExactScalar::zeta(m)
    }

    #[test]
    fn adjugate_inverts_up_to_determinant() {
        let m = ExactMatrix::from_rows(vec![
            vec![z(1), ExactScalar::int(2), ExactScalar::ZERO],
            vec![ExactScalar::ZERO, z(3), ExactScalar::ONE],
            vec![ExactScalar::int(-1), ExactScalar::ZERO, z(2)],
        ]);
        let det = m.determinant();
        assert_eq!(&m * &m.adjugate(), ExactMatrix::identity(3).scale(det));
    }

    #[test]
    fn proportional_detects_phase() {
        let t = ExactMatrix::diag(&[ExactScalar::ONE, ExactScalar::I]);
        let m = t.scale(z(3));
        assert_eq!(m.proportionality(&t), Some(Some(z(3))));
        let other = ExactMatrix::diag(&[ExactScalar::ONE, -ExactScalar::I]);
        assert_eq!(other.proportionality(&t), None);
    }
}
