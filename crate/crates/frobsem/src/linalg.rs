//! Dense real vector/matrix/order-3-tensor algebra over a fixed basis,
//! together with the concrete Frobenius operators Δ (copy), μ (uncopy)
//! and ι (delete) that the composition models are built from.
//!
//! Everything is row-major `f64`, immutable after construction, and pure:
//! values can be shared freely across threads.

use crate::error::{Error, Result};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// A dense real vector with a fixed basis.
#[derive(Debug, Clone, PartialEq)]
pub struct Vector {
    entries: Vec<f64>,
}

impl Vector {
    pub fn new(entries: Vec<f64>) -> Result<Self> {
        check_finite(&entries)?;
        Ok(Self { entries })
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            entries: vec![0.0; dim],
        }
    }

    /// Basis vector e_i (0-based).
    pub fn basis(dim: usize, i: usize) -> Self {
        let mut entries = vec![0.0; dim];
        entries[i] = 1.0;
        Self { entries }
    }

    pub fn ones(dim: usize) -> Self {
        Self {
            entries: vec![1.0; dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn get(&self, i: usize) -> f64 {
        self.entries[i]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&x| x == 0.0)
    }

    pub fn dot(&self, other: &Vector) -> Result<f64> {
        same_dim(self.dim(), other.dim(), "dot")?;
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a * b)
            .sum())
    }

    pub fn norm(&self) -> f64 {
        self.entries.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    /// Unit vector in the same direction; `None` for the zero vector.
    pub fn normalized(&self) -> Option<Vector> {
        let n = self.norm();
        if n == 0.0 {
            None
        } else {
            Some(self.scale(1.0 / n))
        }
    }

    pub fn scale(&self, alpha: f64) -> Vector {
        Vector {
            entries: self.entries.iter().map(|x| x * alpha).collect(),
        }
    }

    pub fn add(&self, other: &Vector) -> Result<Vector> {
        same_dim(self.dim(), other.dim(), "add")?;
        Ok(Vector {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sum(&self) -> f64 {
        self.entries.iter().sum()
    }
}

/// A dense real matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<f64>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<f64>) -> Result<Self> {
        assert_eq!(entries.len(), rows * cols, "entry count must be rows*cols");
        check_finite(&entries)?;
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    /// Build from nested rows; handy in tests and demos.
    pub fn from_rows(rows: &[&[f64]]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            entries.extend_from_slice(row);
        }
        Self::new(r, c, entries)
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![0.0; rows * cols],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim, dim);
        for i in 0..dim {
            m.entries[i * dim + i] = 1.0;
        }
        m
    }

    pub fn ones(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![1.0; rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&x| x == 0.0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.entries[j * self.rows + i] = self.get(i, j);
            }
        }
        out
    }

    pub fn scale(&self, alpha: f64) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|x| x * alpha).collect(),
        }
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        same_shape(self, other, "add")?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        same_shape(self, other, "sub")?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn matmul(&self, other: &Matrix) -> Result<Matrix> {
        same_dim(self.cols, other.rows, "matmul")?;
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    out.entries[i * other.cols + j] += a * other.get(k, j);
                }
            }
        }
        Ok(out)
    }

    pub fn trace(&self) -> Result<f64> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok((0..self.rows).map(|i| self.get(i, i)).sum())
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|x| x * x).sum::<f64>().sqrt()
    }
}

/// A dense order-3 real tensor, entries in lexicographic index order.
#[derive(Debug, Clone, PartialEq)]
pub struct Tensor3 {
    d1: usize,
    d2: usize,
    d3: usize,
    entries: Vec<f64>,
}

impl Tensor3 {
    pub fn new(d1: usize, d2: usize, d3: usize, entries: Vec<f64>) -> Result<Self> {
        assert_eq!(entries.len(), d1 * d2 * d3, "entry count must be d1*d2*d3");
        check_finite(&entries)?;
        Ok(Self { d1, d2, d3, entries })
    }

    pub fn zeros(d1: usize, d2: usize, d3: usize) -> Self {
        Self {
            d1,
            d2,
            d3,
            entries: vec![0.0; d1 * d2 * d3],
        }
    }

    pub fn dims(&self) -> (usize, usize, usize) {
        (self.d1, self.d2, self.d3)
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> f64 {
        self.entries[(i * self.d2 + j) * self.d3 + k]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, v: f64) {
        self.entries[(i * self.d2 + j) * self.d3 + k] = v;
    }

    pub fn add(&self, other: &Tensor3) -> Result<Tensor3> {
        if self.dims() != other.dims() {
            return Err(Error::DimensionMismatch {
                context: "tensor3 add",
                left: self.entries.len(),
                right: other.entries.len(),
            });
        }
        Ok(Tensor3 {
            d1: self.d1,
            d2: self.d2,
            d3: self.d3,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    /// Contract the middle axis against `v`, leaving a (d1 x d3) matrix.
    pub fn contract_axis2(&self, v: &Vector) -> Result<Matrix> {
        same_dim(self.d2, v.dim(), "tensor3 axis-2 contraction")?;
        let mut out = Matrix::zeros(self.d1, self.d3);
        for i in 0..self.d1 {
            for j in 0..self.d2 {
                let w = v.get(j);
                if w == 0.0 {
                    continue;
                }
                for k in 0..self.d3 {
                    let cur = out.get(i, k);
                    out.set(i, k, cur + w * self.get(i, j, k));
                }
            }
        }
        Ok(out)
    }

    /// Contract the last axis against `v`, leaving a (d1 x d2) matrix.
    pub fn contract_axis3(&self, v: &Vector) -> Result<Matrix> {
        same_dim(self.d3, v.dim(), "tensor3 axis-3 contraction")?;
        let mut out = Matrix::zeros(self.d1, self.d2);
        for i in 0..self.d1 {
            for j in 0..self.d2 {
                let mut acc = 0.0;
                for k in 0..self.d3 {
                    acc += self.get(i, j, k) * v.get(k);
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    /// Contract the first axis against `v`, leaving a (d2 x d3) matrix.
    pub fn contract_axis1(&self, v: &Vector) -> Result<Matrix> {
        same_dim(self.d1, v.dim(), "tensor3 axis-1 contraction")?;
        let mut out = Matrix::zeros(self.d2, self.d3);
        for i in 0..self.d1 {
            let w = v.get(i);
            if w == 0.0 {
                continue;
            }
            for j in 0..self.d2 {
                for k in 0..self.d3 {
                    let cur = out.get(j, k);
                    out.set(j, k, cur + w * self.get(i, j, k));
                }
            }
        }
        Ok(out)
    }
}

/// Outer product a ⊗ b.
pub fn tensor_product(a: &Vector, b: &Vector) -> Matrix {
    let mut out = Matrix::zeros(a.dim(), b.dim());
    for i in 0..a.dim() {
        let ai = a.get(i);
        for j in 0..b.dim() {
            out.set(i, j, ai * b.get(j));
        }
    }
    out
}

/// Order-3 outer product a ⊗ b ⊗ c.
pub fn tensor_product3(a: &Vector, b: &Vector, c: &Vector) -> Tensor3 {
    let mut out = Tensor3::zeros(a.dim(), b.dim(), c.dim());
    for i in 0..a.dim() {
        for j in 0..b.dim() {
            let ab = a.get(i) * b.get(j);
            for k in 0..c.dim() {
                out.set(i, j, k, ab * c.get(k));
            }
        }
    }
    out
}

/// Tensor contraction m × v.
pub fn matvec(m: &Matrix, v: &Vector) -> Result<Vector> {
    same_dim(m.cols(), v.dim(), "matvec")?;
    let mut out = vec![0.0; m.rows()];
    for (i, slot) in out.iter_mut().enumerate() {
        let mut acc = 0.0;
        for j in 0..m.cols() {
            acc += m.get(i, j) * v.get(j);
        }
        *slot = acc;
    }
    Ok(Vector { entries: out })
}

/// Tensor contraction vᵀ × m, i.e. matvec(mᵀ, v).
pub fn vecmat(v: &Vector, m: &Matrix) -> Result<Vector> {
    same_dim(v.dim(), m.rows(), "vecmat")?;
    let mut out = vec![0.0; m.cols()];
    for i in 0..m.rows() {
        let vi = v.get(i);
        if vi == 0.0 {
            continue;
        }
        for (j, slot) in out.iter_mut().enumerate() {
            *slot += vi * m.get(i, j);
        }
    }
    Ok(Vector { entries: out })
}

/// Elementwise product of two vectors.
pub fn pointwise(a: &Vector, b: &Vector) -> Result<Vector> {
    same_dim(a.dim(), b.dim(), "pointwise")?;
    Ok(Vector {
        entries: a
            .entries
            .iter()
            .zip(&b.entries)
            .map(|(x, y)| x * y)
            .collect(),
    })
}

/// Elementwise product of two same-shape matrices.
pub fn pointwise_matrix(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    same_shape(a, b, "pointwise")?;
    Ok(Matrix {
        rows: a.rows,
        cols: a.cols,
        entries: a
            .entries
            .iter()
            .zip(&b.entries)
            .map(|(x, y)| x * y)
            .collect(),
    })
}

/// Cosine similarity. Defined as 0 when either vector is zero, so empty
/// contexts cannot poison a ranking with NaNs.
pub fn cosine(a: &Vector, b: &Vector) -> Result<f64> {
    same_dim(a.dim(), b.dim(), "cosine")?;
    let na = a.norm();
    let nb = b.norm();
    if na == 0.0 || nb == 0.0 {
        return Ok(0.0);
    }
    Ok(a.dot(b)? / (na * nb))
}

/// Frobenius Δ: encode a vector into V ⊗ V as a diagonal matrix.
pub fn frobenius_copy(v: &Vector) -> Matrix {
    let mut out = Matrix::zeros(v.dim(), v.dim());
    for i in 0..v.dim() {
        out.set(i, i, v.get(i));
    }
    out
}

/// Frobenius μ: uncopy, keeping only the diagonal of a square matrix.
pub fn frobenius_mu(m: &Matrix) -> Result<Vector> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    Ok(Vector {
        entries: (0..m.rows()).map(|i| m.get(i, i)).collect(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    Rows,
    Cols,
}

/// Frobenius ι applied to one leg of a matrix: summing out the named axis.
/// `Rows` deletes the row index (column sums), `Cols` the column index.
pub fn iota_delete(m: &Matrix, axis: Axis) -> Vector {
    match axis {
        Axis::Rows => {
            let mut out = vec![0.0; m.cols()];
            for i in 0..m.rows() {
                for (j, slot) in out.iter_mut().enumerate() {
                    *slot += m.get(i, j);
                }
            }
            Vector { entries: out }
        }
        Axis::Cols => {
            let mut out = vec![0.0; m.rows()];
            for (i, slot) in out.iter_mut().enumerate() {
                for j in 0..m.cols() {
                    *slot += m.get(i, j);
                }
            }
            Vector { entries: out }
        }
    }
}

/// Rank-1 approximation σ·u⊗v from the dominant singular triple, found by
/// power iteration with a seeded random start. Convergence is declared when
/// the approximation stops moving: relative change below 1e-9 between
/// sweeps.
pub fn rank1_approx(m: &Matrix, iterations: usize, seed: u64) -> Result<Matrix> {
    const TOLERANCE: f64 = 1e-9;
    if m.is_zero() {
        return Err(Error::ZeroMatrix);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut v = Vector {
        entries: (0..m.cols()).map(|_| rng.random_range(-1.0..1.0)).collect(),
    };
    // A degenerate start is astronomically unlikely but cheap to fix.
    if v.norm() == 0.0 {
        v = Vector::basis(m.cols(), 0);
    }
    v = v.normalized().expect("nonzero start");

    let mut prev: Option<Matrix> = None;
    for _ in 0..iterations {
        let mv = matvec(m, &v)?;
        let u = match mv.normalized() {
            Some(un) => un,
            // v landed exactly in the null space; restart deterministically.
            None => {
                v = Vector {
                    entries: (0..m.cols()).map(|_| rng.random_range(-1.0..1.0)).collect(),
                };
                v = v.normalized().expect("nonzero restart");
                continue;
            }
        };
        let utm = vecmat(&u, m)?;
        let sigma = utm.norm();
        v = match utm.normalized() {
            Some(vn) => vn,
            None => continue,
        };
        let approx = tensor_product(&u, &v).scale(sigma);
        if let Some(last) = prev {
            let change = approx.sub(&last)?.frobenius_norm();
            if change <= TOLERANCE * m.frobenius_norm().max(1.0) {
                return Ok(approx);
            }
        }
        prev = Some(approx);
    }
    Err(Error::DidNotConverge { iterations })
}

fn check_finite(entries: &[f64]) -> Result<()> {
    match entries.iter().position(|x| !x.is_finite()) {
        Some(index) => Err(Error::NotFinite { index }),
        None => Ok(()),
    }
}

fn same_dim(left: usize, right: usize, context: &'static str) -> Result<()> {
    if left != right {
        Err(Error::DimensionMismatch { context, left, right })
    } else {
        Ok(())
    }
}

fn same_shape(a: &Matrix, b: &Matrix, context: &'static str) -> Result<()> {
    if a.rows != b.rows || a.cols != b.cols {
        Err(Error::DimensionMismatch {
            context,
            left: a.rows * a.cols,
            right: b.rows * b.cols,
        })
    } else {
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vec2(a: f64, b: f64) -> Vector {
        Vector::new(vec![a, b]).unwrap()
    }

    #[test]
    fn tensor_product_basis_vectors() {
        let m = tensor_product(&vec2(1.0, 0.0), &vec2(0.0, 1.0));
        assert_eq!(m.entries(), &[0.0, 1.0, 0.0, 0.0]);
    }

    #[test]
    fn tensor_product_direct_evaluation() {
        let m = tensor_product(&vec2(1.0, 2.0), &vec2(3.0, 4.0));
        assert_eq!(m.entries(), &[3.0, 4.0, 6.0, 8.0]);
    }

    #[test]
    fn tensor_product_zero_annihilates() {
        let m = tensor_product(&vec2(0.0, 0.0), &vec2(3.0, 4.0));
        assert!(m.is_zero());
    }

    #[test]
    fn matvec_identity() {
        let v = matvec(&Matrix::identity(2), &vec2(5.0, 7.0)).unwrap();
        assert_eq!(v.entries(), &[5.0, 7.0]);
    }

    #[test]
    fn matvec_direct_evaluation() {
        let m = Matrix::from_rows(&[&[1.0, 0.0], &[1.0, 1.0]]).unwrap();
        let v = matvec(&m, &vec2(1.0, 1.0)).unwrap();
        assert_eq!(v.entries(), &[1.0, 2.0]);
    }

    #[test]
    fn vecmat_direct_evaluation() {
        let m = Matrix::from_rows(&[&[1.0, 0.0], &[1.0, 1.0]]).unwrap();
        let v = vecmat(&vec2(1.0, 2.0), &m).unwrap();
        assert_eq!(v.entries(), &[3.0, 2.0]);
    }

    #[test]
    fn vecmat_is_transpose_matvec() {
        let m = Matrix::from_rows(&[&[1.0, 2.0], &[3.0, 4.0]]).unwrap();
        let v = vec2(5.0, -1.0);
        assert_eq!(
            vecmat(&v, &m).unwrap(),
            matvec(&m.transpose(), &v).unwrap()
        );
    }

    #[test]
    fn matvec_dimension_mismatch() {
        let m = Matrix::from_rows(&[&[1.0, 2.0, 3.0]]).unwrap();
        assert!(matches!(
            matvec(&m, &vec2(1.0, 2.0)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn pointwise_set_membership() {
        let a = Vector::new(vec![0.0, 1.0, 0.0, 0.0]).unwrap();
        let b = Vector::new(vec![1.0, 1.0, 0.0, 1.0]).unwrap();
        assert_eq!(pointwise(&a, &b).unwrap().entries(), &[0.0, 1.0, 0.0, 0.0]);
    }

    #[test]
    fn pointwise_direct_and_identity() {
        assert_eq!(
            pointwise(&vec2(1.0, 2.0), &vec2(3.0, 4.0)).unwrap().entries(),
            &[3.0, 8.0]
        );
        let v = vec2(0.3, -2.5);
        assert_eq!(pointwise(&v, &Vector::ones(2)).unwrap(), v);
    }

    #[test]
    fn cosine_demo_values() {
        let comp = vec2(70.0, 10.0);
        let fish = vec2(5.0, 2.0);
        let money = vec2(2.0, 7.0);
        assert!((cosine(&comp, &fish).unwrap() - 0.97).abs() < 0.01);
        assert!((cosine(&comp, &money).unwrap() - 0.41).abs() < 0.01);
    }

    #[test]
    fn cosine_self_similarity_and_zero() {
        let v = vec2(3.0, -4.0);
        assert!((cosine(&v, &v).unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(cosine(&Vector::zeros(2), &v).unwrap(), 0.0);
    }

    #[test]
    fn frobenius_copy_diagonal() {
        let m = frobenius_copy(&vec2(3.0, 7.0));
        assert_eq!(m.entries(), &[3.0, 0.0, 0.0, 7.0]);
        assert!(frobenius_copy(&Vector::zeros(2)).is_zero());
        assert_eq!(frobenius_copy(&Vector::ones(2)), Matrix::identity(2));
    }

    #[test]
    fn frobenius_mu_diagonal() {
        let m = Matrix::from_rows(&[&[1.0, 2.0], &[3.0, 4.0]]).unwrap();
        assert_eq!(frobenius_mu(&m).unwrap().entries(), &[1.0, 4.0]);
        assert_eq!(
            frobenius_mu(&Matrix::identity(3)).unwrap().entries(),
            &[1.0, 1.0, 1.0]
        );
    }

    #[test]
    fn speciality_mu_after_copy_is_identity() {
        let v = Vector::new(vec![0.25, -3.0, 42.0]).unwrap();
        assert_eq!(frobenius_mu(&frobenius_copy(&v)).unwrap(), v);
    }

    #[test]
    fn frobenius_mu_rejects_non_square() {
        let m = Matrix::from_rows(&[&[1.0, 2.0, 3.0]]).unwrap();
        assert!(matches!(frobenius_mu(&m), Err(Error::NotSquare { .. })));
    }

    #[test]
    fn iota_delete_sums_named_axis() {
        let m = Matrix::from_rows(&[&[1.0, 2.0], &[3.0, 4.0]]).unwrap();
        assert_eq!(iota_delete(&m, Axis::Rows).entries(), &[4.0, 6.0]);
        assert_eq!(iota_delete(&m, Axis::Cols).entries(), &[3.0, 7.0]);
        assert!(iota_delete(&Matrix::zeros(2, 2), Axis::Rows).is_zero());
    }

    #[test]
    fn rank1_of_rank1_is_itself() {
        let a = vec2(1.0, 2.0);
        let b = vec2(-0.5, 3.0);
        let m = tensor_product(&a, &b);
        let approx = rank1_approx(&m, 1000, 7).unwrap();
        assert!(m.sub(&approx).unwrap().frobenius_norm() < 1e-8);
    }

    #[test]
    fn rank1_of_identity_is_unit_projector() {
        let approx = rank1_approx(&Matrix::identity(2), 1000, 3).unwrap();
        // sigma = 1, so the approximation has unit Frobenius norm and is
        // idempotent up to that scale.
        assert!((approx.frobenius_norm() - 1.0).abs() < 1e-8);
        let twice = approx.matmul(&approx).unwrap();
        assert!(twice.sub(&approx).unwrap().frobenius_norm() < 1e-8);
    }

    #[test]
    fn rank1_dominant_triple_by_hand() {
        let m = Matrix::from_rows(&[&[2.0, 0.0], &[0.0, 1.0]]).unwrap();
        let approx = rank1_approx(&m, 1000, 11).unwrap();
        let expected = Matrix::from_rows(&[&[2.0, 0.0], &[0.0, 0.0]]).unwrap();
        assert!(approx.sub(&expected).unwrap().frobenius_norm() < 1e-6);
    }

    #[test]
    fn rank1_rejects_zero_matrix() {
        assert!(matches!(
            rank1_approx(&Matrix::zeros(3, 3), 100, 0),
            Err(Error::ZeroMatrix)
        ));
    }

    #[test]
    fn tensor3_contractions_agree_with_loops() {
        let t = tensor_product3(&vec2(1.0, 2.0), &vec2(0.5, -1.0), &vec2(3.0, 4.0));
        let v = vec2(2.0, 1.0);
        let m2 = t.contract_axis2(&v).unwrap();
        for i in 0..2 {
            for k in 0..2 {
                let expect: f64 = (0..2).map(|j| t.get(i, j, k) * v.get(j)).sum();
                assert!((m2.get(i, k) - expect).abs() < 1e-12);
            }
        }
        let m3 = t.contract_axis3(&v).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let expect: f64 = (0..2).map(|k| t.get(i, j, k) * v.get(k)).sum();
                assert!((m3.get(i, j) - expect).abs() < 1e-12);
            }
        }
        let m1 = t.contract_axis1(&v).unwrap();
        for j in 0..2 {
            for k in 0..2 {
                let expect: f64 = (0..2).map(|i| t.get(i, j, k) * v.get(i)).sum();
                assert!((m1.get(j, k) - expect).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn rejects_non_finite_entries() {
        assert!(matches!(
            Vector::new(vec![1.0, f64::NAN]),
            Err(Error::NotFinite { index: 1 })
        ));
        assert!(Matrix::new(1, 2, vec![1.0, f64::INFINITY]).is_err());
    }
}
