//! Dense third-order tensors, the block-circulant view and fold/unfold.

use nalgebra::DMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Result, TensorError};

/// A dense real `m × n × p` tensor.
///
/// Entries are stored slice-major: frontal slice `k` occupies a contiguous
/// run of `m * n` values in row-major order. That makes [`unfold`] a plain
/// copy.
#[derive(Debug, Clone, PartialEq)]
pub struct Tensor3 {
    m: usize,
    n: usize,
    p: usize,
    data: Vec<f64>,
}

fn check_shape(m: usize, n: usize, p: usize) -> Result<()> {
    if m == 0 || n == 0 || p < 2 {
        return Err(TensorError::InvalidShape { m, n, p });
    }
    Ok(())
}

impl Tensor3 {
    /// Builds a tensor from slice-major, row-major data.
    pub fn new(m: usize, n: usize, p: usize, data: Vec<f64>) -> Result<Self> {
        check_shape(m, n, p)?;
        if data.len() != m * n * p {
            return Err(TensorError::ShapeMismatch(format!(
                "expected {} entries for {m}x{n}x{p}, got {}",
                m * n * p,
                data.len()
            )));
        }
        if let Some(index) = data.iter().position(|v| !v.is_finite()) {
            return Err(TensorError::NonFinite { index });
        }
        Ok(Self { m, n, p, data })
    }

    pub fn zeros(m: usize, n: usize, p: usize) -> Result<Self> {
        check_shape(m, n, p)?;
        Ok(Self {
            m,
            n,
            p,
            data: vec![0.0; m * n * p],
        })
    }

    /// Builds a tensor entrywise from `f(i, j, k)`.
    pub fn from_fn(
        m: usize,
        n: usize,
        p: usize,
        mut f: impl FnMut(usize, usize, usize) -> f64,
    ) -> Result<Self> {
        check_shape(m, n, p)?;
        let mut data = Vec::with_capacity(m * n * p);
        for k in 0..p {
            for i in 0..m {
                for j in 0..n {
                    data.push(f(i, j, k));
                }
            }
        }
        Self::new(m, n, p, data)
    }

    /// Builds a tensor from its frontal slices `A^(1), ..., A^(p)`.
    pub fn from_slices(slices: &[DMatrix<f64>]) -> Result<Self> {
        let p = slices.len();
        let (m, n) = slices.first().map(|s| s.shape()).unwrap_or((0, 0));
        check_shape(m, n, p)?;
        if slices.iter().any(|s| s.shape() != (m, n)) {
            return Err(TensorError::ShapeMismatch(
                "frontal slices differ in shape".into(),
            ));
        }
        Self::from_fn(m, n, p, |i, j, k| slices[k][(i, j)])
    }

    /// Seeded standard-normal tensor. Identical seeds give bitwise-identical
    /// tensors.
    pub fn random_normal(m: usize, n: usize, p: usize, seed: u64) -> Result<Self> {
        check_shape(m, n, p)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let data = (0..m * n * p)
            .map(|_| StandardNormal.sample(&mut rng))
            .collect();
        Self::new(m, n, p, data)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn dims(&self) -> (usize, usize, usize) {
        (self.m, self.n, self.p)
    }

    pub fn min_dim(&self) -> usize {
        self.m.min(self.n)
    }

    #[inline]
    fn offset(&self, i: usize, j: usize, k: usize) -> usize {
        debug_assert!(i < self.m && j < self.n && k < self.p);
        (k * self.m + i) * self.n + j
    }

    /// Entry `A(i, j, k)`, 0-based.
    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize) -> f64 {
        self.data[self.offset(i, j, k)]
    }

    /// Raw storage in slice-major, row-major order.
    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    /// Frontal slice `A^(k+1)` as an `m × n` matrix.
    pub fn slice(&self, k: usize) -> DMatrix<f64> {
        let start = k * self.m * self.n;
        DMatrix::from_row_slice(self.m, self.n, &self.data[start..start + self.m * self.n])
    }

    /// The tube `A(i, j, :)`.
    pub fn tube(&self, i: usize, j: usize) -> Vec<f64> {
        (0..self.p).map(|k| self.get(i, j, k)).collect()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0_f64, |acc, v| acc.max(v.abs()))
    }

    pub fn scale(&self, factor: f64) -> Tensor3 {
        Tensor3 {
            data: self.data.iter().map(|v| v * factor).collect(),
            ..*self
        }
    }

    fn zip_with(&self, other: &Tensor3, op: impl Fn(f64, f64) -> f64) -> Result<Tensor3> {
        if self.dims() != other.dims() {
            return Err(TensorError::ShapeMismatch(format!(
                "{:?} vs {:?}",
                self.dims(),
                other.dims()
            )));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| op(*a, *b))
            .collect();
        Ok(Tensor3 { data, ..*self })
    }

    pub fn add(&self, other: &Tensor3) -> Result<Tensor3> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Tensor3) -> Result<Tensor3> {
        self.zip_with(other, |a, b| a - b)
    }

    /// Tensor transpose: slice 1 transposed, slices 2..p transposed and
    /// reversed in the third index. Equals `bcirc_inv(bcirc(self)ᵀ)`.
    pub fn transpose(&self) -> Tensor3 {
        let (m, n, p) = self.dims();
        let mut data = Vec::with_capacity(self.data.len());
        for k in 0..p {
            let src = (p - k) % p;
            for j in 0..n {
                for i in 0..m {
                    data.push(self.get(i, j, src));
                }
            }
        }
        Tensor3 {
            m: n,
            n: m,
            p,
            data,
        }
    }

    /// True when every frontal slice is diagonal up to `tol`.
    pub fn is_f_diagonal(&self, tol: f64) -> bool {
        FDiagonal3::try_from_tensor(self, tol).is_ok()
    }
}

/// The identity tensor `I_{nnp}`: slice 1 is `Iₙ`, the remaining slices are zero.
pub fn identity_tensor(n: usize, p: usize) -> Result<Tensor3> {
    Tensor3::from_fn(n, n, p, |i, j, k| if k == 0 && i == j { 1.0 } else { 0.0 })
}

/// Stacks the frontal slices vertically into an `mp × n` matrix.
pub fn unfold(t: &Tensor3) -> DMatrix<f64> {
    DMatrix::from_row_slice(t.m * t.p, t.n, &t.data)
}

/// Inverse of [`unfold`].
pub fn fold(mat: &DMatrix<f64>, m: usize, n: usize, p: usize) -> Result<Tensor3> {
    check_shape(m, n, p)?;
    if mat.shape() != (m * p, n) {
        return Err(TensorError::ShapeMismatch(format!(
            "fold expects a {}x{n} matrix, got {}x{}",
            m * p,
            mat.nrows(),
            mat.ncols()
        )));
    }
    Tensor3::from_fn(m, n, p, |i, j, k| mat[(k * m + i, j)])
}

/// The `mp × np` block-circulant matrix of a tensor.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockCirculant(DMatrix<f64>);

impl BlockCirculant {
    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.0
    }

    pub fn into_inner(self) -> DMatrix<f64> {
        self.0
    }
}

/// Block `(r, c)` of the result is `A^(1 + ((r - c) mod p))`.
pub fn bcirc(t: &Tensor3) -> BlockCirculant {
    let (m, n, p) = t.dims();
    let mut mat = DMatrix::zeros(m * p, n * p);
    for r in 0..p {
        for c in 0..p {
            let k = (r + p - c) % p;
            for i in 0..m {
                for j in 0..n {
                    mat[(r * m + i, c * n + j)] = t.get(i, j, k);
                }
            }
        }
    }
    BlockCirculant(mat)
}

/// Recovers a tensor from a block-circulant matrix by reading its first
/// block column, after checking that every block agrees with the circulant
/// pattern to within `1e-12 · max(1, max|M|)`.
pub fn bcirc_inv(mat: &DMatrix<f64>, m: usize, n: usize, p: usize) -> Result<Tensor3> {
    check_shape(m, n, p)?;
    if mat.shape() != (m * p, n * p) {
        return Err(TensorError::ShapeMismatch(format!(
            "bcirc_inv expects a {}x{} matrix, got {}x{}",
            m * p,
            n * p,
            mat.nrows(),
            mat.ncols()
        )));
    }
    let t = Tensor3::from_fn(m, n, p, |i, j, k| mat[(k * m + i, j)])?;
    let max_abs = mat.iter().fold(0.0_f64, |acc, v| acc.max(v.abs()));
    let tol = 1e-12 * max_abs.max(1.0);
    let mut residual = 0.0_f64;
    for r in 0..p {
        for c in 1..p {
            let k = (r + p - c) % p;
            for i in 0..m {
                for j in 0..n {
                    let d = (mat[(r * m + i, c * n + j)] - t.get(i, j, k)).abs();
                    residual = residual.max(d);
                }
            }
        }
    }
    if residual > tol || residual.is_nan() {
        return Err(TensorError::NotCirculant { residual, tol });
    }
    Ok(t)
}

impl From<&Tensor3> for BlockCirculant {
    fn from(t: &Tensor3) -> Self {
        bcirc(t)
    }
}

/// An f-diagonal tensor: every frontal slice is diagonal.
///
/// Only the `min(m, n) × p` diagonal entries are stored, tube by tube, so
/// `tube(i)` is the contiguous vector `S(i, i, :)`.
#[derive(Debug, Clone, PartialEq)]
pub struct FDiagonal3 {
    m: usize,
    n: usize,
    p: usize,
    diag: Vec<f64>,
}

impl FDiagonal3 {
    /// `diag[i * p + k]` holds `S(i, i, k)`.
    pub fn new(m: usize, n: usize, p: usize, diag: Vec<f64>) -> Result<Self> {
        check_shape(m, n, p)?;
        let r = m.min(n);
        if diag.len() != r * p {
            return Err(TensorError::ShapeMismatch(format!(
                "expected {} diagonal entries, got {}",
                r * p,
                diag.len()
            )));
        }
        if let Some(index) = diag.iter().position(|v| !v.is_finite()) {
            return Err(TensorError::NonFinite { index });
        }
        Ok(Self { m, n, p, diag })
    }

    pub fn zeros(m: usize, n: usize, p: usize) -> Result<Self> {
        Self::new(m, n, p, vec![0.0; m.min(n) * p])
    }

    /// Builds an f-diagonal tensor from its diagonal tubes; `tubes.len()`
    /// must equal `min(m, n)`.
    pub fn from_tubes(m: usize, n: usize, tubes: &[Vec<f64>]) -> Result<Self> {
        let p = tubes.first().map(Vec::len).unwrap_or(0);
        if tubes.iter().any(|t| t.len() != p) {
            return Err(TensorError::ShapeMismatch("tubes differ in length".into()));
        }
        Self::new(m, n, p, tubes.concat())
    }

    /// Extracts the diagonal, failing if any off-diagonal entry exceeds `tol`
    /// in magnitude.
    pub fn try_from_tensor(t: &Tensor3, tol: f64) -> Result<Self> {
        let (m, n, p) = t.dims();
        for k in 0..p {
            for i in 0..m {
                for j in 0..n {
                    let v = t.get(i, j, k);
                    if i != j && v.abs() > tol {
                        return Err(TensorError::NotFDiagonal { value: v, i, j, k });
                    }
                }
            }
        }
        let r = m.min(n);
        let mut diag = Vec::with_capacity(r * p);
        for i in 0..r {
            diag.extend((0..p).map(|k| t.get(i, i, k)));
        }
        Self::new(m, n, p, diag)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn dims(&self) -> (usize, usize, usize) {
        (self.m, self.n, self.p)
    }

    pub fn min_dim(&self) -> usize {
        self.m.min(self.n)
    }

    /// `S(i, i, k)`, 0-based.
    #[inline]
    pub fn get(&self, i: usize, k: usize) -> f64 {
        self.diag[i * self.p + k]
    }

    pub fn tube(&self, i: usize) -> &[f64] {
        &self.diag[i * self.p..(i + 1) * self.p]
    }

    pub fn tubes(&self) -> impl Iterator<Item = &[f64]> {
        self.diag.chunks_exact(self.p)
    }

    pub fn diagonal(&self) -> &[f64] {
        &self.diag
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.diag.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    /// Default classifier slack: `1e-10 · max(1, ‖S‖_F)`.
    pub fn default_tol(&self) -> f64 {
        1e-10 * self.frobenius_norm().max(1.0)
    }

    pub fn to_tensor(&self) -> Tensor3 {
        Tensor3::from_fn(self.m, self.n, self.p, |i, j, k| {
            if i == j {
                self.get(i, k)
            } else {
                0.0
            }
        })
        .expect("shape validated at construction")
    }

    /// Keeps tubes `0..r` and zeroes the rest.
    pub fn truncated(&self, r: usize) -> FDiagonal3 {
        let mut diag = self.diag.clone();
        let keep = r.min(self.min_dim()) * self.p;
        diag[keep..].iter_mut().for_each(|v| *v = 0.0);
        FDiagonal3 { diag, ..*self }
    }
}

impl From<&FDiagonal3> for Tensor3 {
    fn from(s: &FDiagonal3) -> Self {
        s.to_tensor()
    }
}
