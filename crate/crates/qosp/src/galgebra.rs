//! Graded linear algebra over [`QScalar`]: dense matrices with a Z_2
//! basis grading, the graded tensor product, graded commutators and
//! supertraces.
//!
//! All sign bookkeeping of the tensor product lives in one place:
//! the composite of `A` and `B` carries entries
//! `(A ox B)^{(a,c)}_{(b,d)} = (-1)^{[c]([a]+[b])} A^a_b B^c_d`,
//! so products of assembled matrices are ordinary matrix products.

use crate::scalar::QScalar;
use num::rational::Rational64;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GAlgebraError {
    #[error("index out of range: ({row},{col}) for dimension {dim}")]
    OutOfRange { row: usize, col: usize, dim: usize },
}

/// A square matrix of exact scalars with a Z_2 grading per basis index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedMatrix {
    dim: usize,
    grading: Vec<u8>,
    entries: Vec<QScalar>,
}

impl GradedMatrix {
    pub fn zero(grading: Vec<u8>) -> Self {
        let dim = grading.len();
        GradedMatrix {
            dim,
            grading,
            entries: vec![QScalar::zero(); dim * dim],
        }
    }

    pub fn identity(grading: Vec<u8>) -> Self {
        let mut m = Self::zero(grading);
        for i in 0..m.dim {
            m.entries[i * m.dim + i] = QScalar::one();
        }
        m
    }

    /// Elementary matrix E^row_col (1-based) with a single unit entry.
    pub fn elementary(
        row: usize,
        col: usize,
        grading: Vec<u8>,
    ) -> Result<Self, GAlgebraError> {
        let dim = grading.len();
        if row < 1 || col < 1 || row > dim || col > dim {
            return Err(GAlgebraError::OutOfRange { row, col, dim });
        }
        let mut m = Self::zero(grading);
        m.entries[(row - 1) * dim + (col - 1)] = QScalar::one();
        Ok(m)
    }

    pub fn diagonal(grading: Vec<u8>, diag: Vec<QScalar>) -> Self {
        assert_eq!(grading.len(), diag.len());
        let mut m = Self::zero(grading);
        for (i, v) in diag.into_iter().enumerate() {
            m.entries[i * m.dim + i] = v;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn grading(&self) -> &[u8] {
        &self.grading
    }

    /// 0-based access.
    pub fn get(&self, row: usize, col: usize) -> &QScalar {
        &self.entries[row * self.dim + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: QScalar) {
        self.entries[row * self.dim + col] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    /// First (row, col) where the two matrices differ, if any.
    pub fn first_difference(&self, other: &GradedMatrix) -> Option<(usize, usize)> {
        assert_eq!(self.dim, other.dim);
        for r in 0..self.dim {
            for c in 0..self.dim {
                if self.get(r, c) != other.get(r, c) {
                    return Some((r, c));
                }
            }
        }
        None
    }

    pub fn add(&self, other: &GradedMatrix) -> GradedMatrix {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        GradedMatrix {
            dim: self.dim,
            grading: self.grading.clone(),
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &GradedMatrix) -> GradedMatrix {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        GradedMatrix {
            dim: self.dim,
            grading: self.grading.clone(),
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn neg(&self) -> GradedMatrix {
        GradedMatrix {
            dim: self.dim,
            grading: self.grading.clone(),
            entries: self.entries.iter().map(|a| -a).collect(),
        }
    }

    pub fn scale(&self, c: &QScalar) -> GradedMatrix {
        GradedMatrix {
            dim: self.dim,
            grading: self.grading.clone(),
            entries: self.entries.iter().map(|a| a * c).collect(),
        }
    }

    /// Ordinary matrix product, skipping zero entries (the assembled
    /// operators are sparse).
    pub fn mul(&self, other: &GradedMatrix) -> GradedMatrix {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let dim = self.dim;
        // Nonzero columns per row of `other`, computed once.
        let mut rhs_rows: Vec<Vec<usize>> = Vec::with_capacity(dim);
        for k in 0..dim {
            rhs_rows.push(
                (0..dim)
                    .filter(|&j| !other.get(k, j).is_zero())
                    .collect(),
            );
        }
        let mut out = Self::zero(self.grading.clone());
        for i in 0..dim {
            for k in 0..dim {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for &j in &rhs_rows[k] {
                    let t = a * other.get(k, j);
                    let cur = out.get(i, j) + &t;
                    out.set(i, j, cur);
                }
            }
        }
        out
    }

    pub fn pow(&self, exp: usize) -> GradedMatrix {
        let mut acc = GradedMatrix::identity(self.grading.clone());
        for _ in 0..exp {
            acc = acc.mul(self);
        }
        acc
    }

    /// Supertrace: sum_a (-1)^{[a]} A^a_a.
    pub fn supertrace(&self) -> QScalar {
        let mut acc = QScalar::zero();
        for a in 0..self.dim {
            let t = self.get(a, a);
            if self.grading[a] == 1 {
                acc = &acc - t;
            } else {
                acc = &acc + t;
            }
        }
        acc
    }

    /// Evaluate every entry at `q = q0`.
    pub fn eval_f64(&self, q0: f64) -> Result<NumMatrix, crate::scalar::ScalarError> {
        let mut data = Vec::with_capacity(self.entries.len());
        for e in &self.entries {
            data.push(if e.is_zero() { 0.0 } else { e.eval_f64(q0)? });
        }
        Ok(NumMatrix {
            dim: self.dim,
            data,
        })
    }
}

/// Graded tensor product with the sign folded into the entries, so that
/// products of outputs follow `(A ox B)(C ox D) = (-1)^{[B][C]} (AC ox BD)`.
pub fn graded_tensor(a: &GradedMatrix, b: &GradedMatrix) -> GradedMatrix {
    let (da, db) = (a.dim, b.dim);
    let mut grading = Vec::with_capacity(da * db);
    for ga in &a.grading {
        for gb in &b.grading {
            grading.push((ga + gb) % 2);
        }
    }
    let mut out = GradedMatrix::zero(grading);
    for ar in 0..da {
        for ac in 0..da {
            let av = a.get(ar, ac);
            if av.is_zero() {
                continue;
            }
            let op_grade = (a.grading[ar] + a.grading[ac]) % 2;
            for br in 0..db {
                let bv_row = br;
                let sign_neg = op_grade == 1 && b.grading[bv_row] == 1;
                for bc in 0..db {
                    let bv = b.get(br, bc);
                    if bv.is_zero() {
                        continue;
                    }
                    let mut v = av * bv;
                    if sign_neg {
                        v = -v;
                    }
                    out.set(ar * db + br, ac * db + bc, v);
                }
            }
        }
    }
    out
}

/// Graded commutator `AB - (-1)^{gA gB} BA` of homogeneous operators.
pub fn graded_commutator(
    a: &GradedMatrix,
    b: &GradedMatrix,
    grade_a: u8,
    grade_b: u8,
) -> GradedMatrix {
    let ab = a.mul(b);
    let ba = b.mul(a);
    if grade_a == 1 && grade_b == 1 {
        ab.add(&ba)
    } else {
        ab.sub(&ba)
    }
}

/// Partial supertrace over the first tensor factor:
/// `out[c][d] = sum_a (-1)^{[a]} M[(a,c),(a,d)]`.
///
/// `M` must act on a graded tensor product with factor gradings `g1`, `g2`.
pub fn supertrace_first(m: &GradedMatrix, g1: &[u8], g2: &[u8]) -> GradedMatrix {
    let (d1, d2) = (g1.len(), g2.len());
    assert_eq!(m.dim, d1 * d2, "dimension mismatch");
    let mut out = GradedMatrix::zero(g2.to_vec());
    for c in 0..d2 {
        for d in 0..d2 {
            let mut acc = QScalar::zero();
            for a in 0..d1 {
                let v = m.get(a * d2 + c, a * d2 + d);
                if v.is_zero() {
                    continue;
                }
                if g1[a] == 1 {
                    acc = &acc - v;
                } else {
                    acc = &acc + v;
                }
            }
            out.set(c, d, acc);
        }
    }
    out
}

/// Extract the second-factor block `Op^{row_a, col_b}` of a matrix
/// assembled as `sum E^a_b (x) Op_ab`, undoing the tensor signs.
/// Positions `row_a`, `col_b` are 0-based in the first factor.
pub fn tensor_block(
    m: &GradedMatrix,
    g1: &[u8],
    g2: &[u8],
    row_a: usize,
    col_b: usize,
) -> GradedMatrix {
    let (d1, d2) = (g1.len(), g2.len());
    assert_eq!(m.dim, d1 * d2, "dimension mismatch");
    let op_grade = (g1[row_a] + g1[col_b]) % 2;
    let mut out = GradedMatrix::zero(g2.to_vec());
    for r in 0..d2 {
        let flip = op_grade == 1 && g2[r] == 1;
        for c in 0..d2 {
            let v = m.get(row_a * d2 + r, col_b * d2 + c);
            if v.is_zero() {
                continue;
            }
            out.set(r, c, if flip { -v } else { v.clone() });
        }
    }
    out
}

/// Dense floating-point matrix used by the numeric spot checks.
#[derive(Debug, Clone)]
pub struct NumMatrix {
    pub dim: usize,
    pub data: Vec<f64>,
}

impl NumMatrix {
    pub fn get(&self, r: usize, c: usize) -> f64 {
        self.data[r * self.dim + c]
    }

    pub fn mul(&self, other: &NumMatrix) -> NumMatrix {
        assert_eq!(self.dim, other.dim);
        let dim = self.dim;
        let mut data = vec![0.0; dim * dim];
        for i in 0..dim {
            for k in 0..dim {
                let a = self.get(i, k);
                if a == 0.0 {
                    continue;
                }
                for j in 0..dim {
                    data[i * dim + j] += a * other.get(k, j);
                }
            }
        }
        NumMatrix { dim, data }
    }

    pub fn max_abs_diff(&self, other: &NumMatrix) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// Convenience: integer-valued scalar.
pub fn scalar_int(n: i64) -> QScalar {
    QScalar::from_int(n)
}

/// Convenience: `q^{x}` with a rational exponent.
pub fn scalar_q_pow(x: Rational64) -> QScalar {
    QScalar::q_pow(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::rational::Rational64;
    use num::{One, Zero};

    fn even(dim: usize) -> Vec<u8> {
        vec![0; dim]
    }

    #[test]
    fn elementary_products() {
        let e12 = GradedMatrix::elementary(1, 2, even(2)).unwrap();
        let e21 = GradedMatrix::elementary(2, 1, even(2)).unwrap();
        let e11 = GradedMatrix::elementary(1, 1, even(2)).unwrap();
        assert_eq!(e12.mul(&e21), e11);
        assert!(e12.mul(&e12).is_zero());
        assert!(GradedMatrix::elementary(3, 1, even(2)).is_err());
    }

    #[test]
    fn tensor_reduces_to_kronecker_for_even_gradings() {
        let a = GradedMatrix::elementary(1, 2, even(2)).unwrap();
        let b = GradedMatrix::elementary(2, 1, even(2)).unwrap();
        let t = graded_tensor(&a, &b);
        // Plain Kronecker: entry ((1,2),(2,1)) -> rows 0*2+1=1, cols 1*2+0=2
        assert!(t.get(1, 2).is_one());
        let lhs = graded_tensor(&a, &GradedMatrix::identity(even(2)))
            .mul(&graded_tensor(&GradedMatrix::identity(even(2)), &b));
        assert_eq!(lhs, t);
    }

    #[test]
    fn supertrace_weighted_by_grading() {
        // osp(3|2) vector space gradings [1,0,0,0,1]: str(I) = 3 - 2 = 1.
        let g = vec![1, 0, 0, 0, 1];
        let id = GradedMatrix::identity(g);
        assert_eq!(id.supertrace(), QScalar::from_int(1));
        let e12 = GradedMatrix::elementary(1, 2, vec![0, 0]).unwrap();
        assert!(e12.supertrace().is_zero());
    }

    #[test]
    fn supertrace_multiplicative_over_tensor() {
        let g1 = vec![0, 1];
        let g2 = vec![1, 0, 1];
        let mut a = GradedMatrix::identity(g1);
        a.set(0, 0, QScalar::q_pow(Rational64::one()));
        let mut b = GradedMatrix::identity(g2);
        b.set(2, 2, QScalar::from_int(5));
        let t = graded_tensor(&a, &b);
        assert_eq!(t.supertrace(), &a.supertrace() * &b.supertrace());
    }

    #[test]
    fn graded_commutator_cases() {
        let a = GradedMatrix::elementary(1, 2, vec![0, 1]).unwrap();
        // gA = gB = 1 and A = B: anticommutator doubles A^2.
        let c = graded_commutator(&a, &a, 1, 1);
        assert_eq!(c, a.mul(&a).scale(&QScalar::from_int(2)));
        // gA = gB = 0: ordinary commutator of A with itself vanishes.
        assert!(graded_commutator(&a, &a, 0, 0).is_zero());
    }

    #[test]
    fn partial_supertrace_of_pure_tensor() {
        let g1 = vec![0, 1];
        let g2 = vec![1, 0];
        let a = GradedMatrix::diagonal(
            g1.clone(),
            vec![QScalar::from_int(2), QScalar::from_int(3)],
        );
        let b = GradedMatrix::elementary(1, 2, g2.clone()).unwrap();
        let t = graded_tensor(&a, &b);
        let tr = supertrace_first(&t, &g1, &g2);
        // str(a) = 2 - 3 = -1, so result = -b.
        assert_eq!(tr, b.neg());
    }

    #[test]
    fn tensor_block_round_trip() {
        let g1 = vec![0, 1];
        let g2 = vec![1, 0];
        let op = GradedMatrix::elementary(2, 1, g2.clone()).unwrap();
        let e = GradedMatrix::elementary(2, 1, g1.clone()).unwrap();
        let asm = graded_tensor(&e, &op);
        let back = tensor_block(&asm, &g1, &g2, 1, 0);
        assert_eq!(back, op);
        // Other blocks are zero.
        assert!(tensor_block(&asm, &g1, &g2, 0, 0).is_zero());
    }

    #[test]
    fn zero_exponent_scalar_helpers() {
        assert!(scalar_q_pow(Rational64::zero()).is_one());
        assert_eq!(scalar_int(0), QScalar::zero());
    }
}
