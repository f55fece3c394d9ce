//! The Kilmer-Martin mapping and the ST-SVD built on it.
//!
//! `gmap(A)` takes the mode-3 DFT of `A`, replaces each block `Δ^(k)` by the
//! diagonal matrix `D^(k)` of its singular values in nonincreasing order,
//! and transforms back:
//!
//! ```text
//! S(i, i, k) = (1/p) Σ_l conj(ω)^{(k-1)(l-1)} D(i, i, l)
//! ```
//!
//! Keeping the unitary factors of the per-slice SVDs as well gives
//! orthogonal tensors `U`, `V` with `A = U * S * Vᵀ`.

use std::collections::HashSet;

use nalgebra::DMatrix;

use crate::dft::{dft_mode3, idft_real_unchecked, transform_tubes, SpectralBlocks, C64};
use crate::error::{Result, TensorError};
use crate::slice_svd::{spectral_svd, SliceSvd};
use crate::tensor::{FDiagonal3, Tensor3};
use crate::tprod::tprod;

/// `A = U * S * Vᵀ` with `U`, `V` orthogonal and `S` s-diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct StSvdFactors {
    pub u: Tensor3,
    pub s: FDiagonal3,
    pub v: Tensor3,
}

impl StSvdFactors {
    /// `U * S * Vᵀ`.
    pub fn reconstruct(&self) -> Tensor3 {
        let us = tprod(&self.u, &self.s.to_tensor()).expect("factor shapes agree");
        tprod(&us, &self.v.transpose()).expect("factor shapes agree")
    }
}

/// T-singular values and the tubal rank.
#[derive(Debug, Clone, PartialEq)]
pub struct TubalSpectrum {
    /// `σ_1 ≥ … ≥ σ_min(m,n) ≥ 0`.
    pub sigmas: Vec<f64>,
    /// Number of `σ_i > 1e-10 · σ_1`.
    pub tubal_rank: usize,
}

impl TubalSpectrum {
    pub fn rank_threshold(&self) -> f64 {
        1e-10 * self.sigmas.first().copied().unwrap_or(0.0)
    }

    /// `Σ_{i > r} σ_i²`, the squared error of the rank-`r` truncation.
    pub fn tail_energy(&self, r: usize) -> f64 {
        self.sigmas.iter().skip(r).fold(0.0, |acc, s| acc + s * s)
    }
}

/// Inverse-transforms the diagonal tubes `D(i, i, :)`. The input tubes are
/// conjugate symmetric by construction, so the imaginary residue is pure
/// roundoff and is dropped.
fn assemble_s(m: usize, n: usize, p: usize, slices: &[SliceSvd]) -> FDiagonal3 {
    let r = m.min(n);
    let mut tubes: Vec<Vec<C64>> = (0..r)
        .map(|i| slices.iter().map(|s| C64::new(s.sigma[i], 0.0)).collect())
        .collect();
    transform_tubes(&mut tubes, true);
    let scale = 1.0 / p as f64;
    debug_assert!(tubes
        .iter()
        .flatten()
        .all(|z| z.im.abs() * scale <= 1e-10 * (1.0 + z.re.abs())));
    let diag = tubes.iter().flatten().map(|z| z.re * scale).collect();
    FDiagonal3::new(m, n, p, diag).expect("shape inherited from a valid tensor")
}

/// The Kilmer-Martin mapping `G(A)`.
pub fn gmap(a: &Tensor3) -> FDiagonal3 {
    let (m, n, p) = a.dims();
    let slices = spectral_svd(&dft_mode3(a), false);
    assemble_s(m, n, p, &slices)
}

/// ST-SVD `A = U * G(A) * Vᵀ`. `U` and `V` are not unique; only `S` is.
pub fn st_svd(a: &Tensor3) -> StSvdFactors {
    let (m, n, p) = a.dims();
    let slices = spectral_svd(&dft_mode3(a), true);
    let s = assemble_s(m, n, p, &slices);
    let (phis, psis): (Vec<DMatrix<C64>>, Vec<DMatrix<C64>>) = slices
        .into_iter()
        .map(|sl| sl.factors.expect("factors requested"))
        .unzip();
    let u = idft_real_unchecked(&SpectralBlocks::new(phis).expect("p >= 2 blocks"));
    let v = idft_real_unchecked(&SpectralBlocks::new(psis).expect("p >= 2 blocks"));
    StSvdFactors { u, s, v }
}

/// T-singular values `σ_i = ‖G(A)(i, i, :)‖₂` and the tubal rank.
///
/// Evaluated in the Fourier domain as `σ_i² = (1/p) Σ_k D(i, i, k)²`. Each
/// `D^(k)` is sorted, so this sum is nonincreasing in `i` even in floating
/// point.
pub fn t_singular_values(a: &Tensor3) -> TubalSpectrum {
    let p = a.p();
    let slices = spectral_svd(&dft_mode3(a), false);
    let sigmas: Vec<f64> = (0..a.min_dim())
        .map(|i| (slices.iter().map(|s| s.sigma[i] * s.sigma[i]).sum::<f64>() / p as f64).sqrt())
        .collect();
    let threshold = 1e-10 * sigmas[0];
    let tubal_rank = sigmas.iter().filter(|&&s| s > threshold).count();
    TubalSpectrum { sigmas, tubal_rank }
}

/// Rank-`r` truncation `U * S_r * Vᵀ`, where `S_r` keeps the first `r`
/// diagonal tubes of `S`.
pub fn truncate(a: &Tensor3, r: usize) -> Result<Tensor3> {
    let max = a.min_dim();
    if r > max {
        return Err(TensorError::RankOutOfRange { r, max });
    }
    let f = st_svd(a);
    let s_r = f.s.truncated(r).to_tensor();
    tprod(&tprod(&f.u, &s_r)?, &f.v.transpose())
}

/// Both sides of the extremal inequality `Σ_{l≤s} σ_l² ≥ Σ_l ‖A(i_l, j_l, :)‖²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtremalBound {
    pub leading_energy: f64,
    pub pair_energy: f64,
    pub slack: f64,
    pub holds: bool,
}

/// Checks that the `s` leading squared T-singular values dominate the
/// energy of any `s` distinct tubes `A(i, j, :)`, with slack
/// `1e-10 · ‖A‖_F²`. Pairs are 0-based `(i, j)`.
pub fn extremal_bound_check(a: &Tensor3, pairs: &[(usize, usize)]) -> Result<ExtremalBound> {
    let (m, n, _) = a.dims();
    if pairs.len() > a.min_dim() {
        return Err(TensorError::TooManyPairs {
            given: pairs.len(),
            max: a.min_dim(),
        });
    }
    let mut seen = HashSet::new();
    for &(i, j) in pairs {
        if i >= m || j >= n {
            return Err(TensorError::IndexOutOfRange { i, j, m, n });
        }
        if !seen.insert((i, j)) {
            return Err(TensorError::DuplicatePair { i, j });
        }
    }
    let spectrum = t_singular_values(a);
    let leading_energy: f64 = spectrum
        .sigmas
        .iter()
        .take(pairs.len())
        .map(|s| s * s)
        .sum();
    let pair_energy: f64 = pairs
        .iter()
        .map(|&(i, j)| a.tube(i, j).iter().map(|v| v * v).sum::<f64>())
        .sum();
    let slack = 1e-10 * a.frobenius_norm().powi(2);
    Ok(ExtremalBound {
        leading_energy,
        pair_energy,
        slack,
        holds: leading_energy >= pair_energy - slack,
    })
}
