//! The t-product and orthogonal tensors.

use nalgebra::DMatrix;

use crate::dft::{dft_mode3, idft_real_unchecked, SpectralBlocks, C64};
use crate::error::{Result, TensorError};
use crate::kilmer_martin::st_svd;
use crate::tensor::{bcirc, fold, identity_tensor, unfold, Tensor3};

/// How [`tprod_with`] evaluates the product.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TprodPath {
    /// Blockwise products in the Fourier domain.
    #[default]
    Spectral,
    /// `fold(bcirc(a) · unfold(b))` with dense matrices.
    Oracle,
}

/// `a * b` for `a: m×s×p`, `b: s×n×p`.
pub fn tprod(a: &Tensor3, b: &Tensor3) -> Result<Tensor3> {
    tprod_with(a, b, TprodPath::Spectral)
}

pub fn tprod_with(a: &Tensor3, b: &Tensor3, path: TprodPath) -> Result<Tensor3> {
    let (m, s, p) = a.dims();
    let (s2, n, p2) = b.dims();
    if s != s2 || p != p2 {
        return Err(TensorError::ShapeMismatch(format!(
            "t-product of {m}x{s}x{p} and {s2}x{n}x{p2}"
        )));
    }
    match path {
        TprodPath::Oracle => fold(&(bcirc(a).into_inner() * unfold(b)), m, n, p),
        TprodPath::Spectral => {
            let da = dft_mode3(a);
            let db = dft_mode3(b);
            let half = p / 2 + 1;
            let mut blocks: Vec<DMatrix<C64>> =
                (0..half).map(|k| da.block(k) * db.block(k)).collect();
            for k in half..p {
                let mirror = blocks[p - k].map(|z| z.conj());
                blocks.push(mirror);
            }
            Ok(idft_real_unchecked(&SpectralBlocks::new(blocks)?))
        }
    }
}

/// `max(‖u * uᵀ - I‖_F, ‖uᵀ * u - I‖_F)`.
pub fn orthogonality_residual(u: &Tensor3) -> Result<f64> {
    let (m, n, p) = u.dims();
    if m != n {
        return Err(TensorError::ShapeMismatch(format!(
            "orthogonality needs square slices, got {m}x{n}x{p}"
        )));
    }
    let id = identity_tensor(m, p)?;
    let ut = u.transpose();
    let left = tprod(u, &ut)?.sub(&id)?.frobenius_norm();
    let right = tprod(&ut, u)?.sub(&id)?.frobenius_norm();
    Ok(left.max(right))
}

/// `1e-9 · √(mp) · max(1, ‖u‖_F)`.
pub fn default_orthogonality_tol(u: &Tensor3) -> f64 {
    1e-9 * ((u.m() * u.p()) as f64).sqrt() * u.frobenius_norm().max(1.0)
}

/// True iff both Gram residuals are at most `tol`.
pub fn is_orthogonal(u: &Tensor3, tol: f64) -> Result<bool> {
    Ok(orthogonality_residual(u)? <= tol)
}

/// `u * a * vᵀ`, after checking that `u` and `v` are orthogonal at the
/// default tolerance.
pub fn orthogonal_conjugate(a: &Tensor3, u: &Tensor3, v: &Tensor3) -> Result<Tensor3> {
    let (m, n, p) = a.dims();
    if u.dims() != (m, m, p) || v.dims() != (n, n, p) {
        return Err(TensorError::ShapeMismatch(format!(
            "conjugating {m}x{n}x{p} by {:?} and {:?}",
            u.dims(),
            v.dims()
        )));
    }
    for factor in [u, v] {
        let residual = orthogonality_residual(factor)?;
        let tol = default_orthogonality_tol(factor);
        if residual > tol {
            return Err(TensorError::NotOrthogonal { residual, tol });
        }
    }
    tprod(&tprod(u, a)?, &v.transpose())
}

/// A seeded orthogonal `m × m × p` tensor: the left factor of the ST-SVD of
/// a seeded standard-normal tensor.
pub fn random_orthogonal(m: usize, p: usize, seed: u64) -> Result<Tensor3> {
    Ok(st_svd(&Tensor3::random_normal(m, m, p, seed)?).u)
}
