//! Per-slice SVDs of the spectral blocks.
//!
//! Only blocks `k = 1..=p/2+1` are factorized. The remaining blocks are the
//! conjugates of their mirrors `p - k + 2`, so their singular values are
//! copied and their unitary factors conjugated. Blocks that are their own
//! mirror (`k = 1`, and `k = p/2 + 1` for even `p`) are real and are
//! factorized in real arithmetic, which keeps the assembled tensors exactly
//! real.

use nalgebra::{ComplexField, DMatrix, DVector, SVD};
use rayon::prelude::*;

use crate::dft::{SpectralBlocks, C64};

pub(crate) struct SliceSvd {
    /// Singular values, nonincreasing, length `min(m, n)`.
    pub sigma: Vec<f64>,
    /// Full unitary factors `(Φ, Ψ)` with `Δ = Φ D Ψ*`.
    pub factors: Option<(DMatrix<C64>, DMatrix<C64>)>,
}

fn is_self_conjugate(k: usize, p: usize) -> bool {
    k == 0 || 2 * k == p
}

pub(crate) fn spectral_svd(spec: &SpectralBlocks, vectors: bool) -> Vec<SliceSvd> {
    let p = spec.p();
    let half = p / 2 + 1;
    let mut out: Vec<SliceSvd> = (0..half)
        .into_par_iter()
        .map(|k| {
            let block = spec.block(k);
            if is_self_conjugate(k, p) {
                let (sigma, factors) = svd_full(block.map(|z| z.re), vectors);
                let lift = |m: DMatrix<f64>| m.map(|x| C64::new(x, 0.0));
                SliceSvd {
                    sigma,
                    factors: factors.map(|(u, v)| (lift(u), lift(v))),
                }
            } else {
                let (sigma, factors) = svd_full(block.clone(), vectors);
                SliceSvd { sigma, factors }
            }
        })
        .collect();
    for k in half..p {
        let mirror = &out[p - k];
        let mirrored = SliceSvd {
            sigma: mirror.sigma.clone(),
            factors: mirror
                .factors
                .as_ref()
                .map(|(u, v)| (u.map(|z| z.conj()), v.map(|z| z.conj()))),
        };
        out.push(mirrored);
    }
    out
}

type Factors<T> = (DMatrix<T>, DMatrix<T>);

/// SVD with singular values sorted nonincreasing (stable, so ties keep the
/// order the decomposition returned) and the unitary factors completed to
/// square matrices. Singular vectors are always computed so that the
/// singular values do not depend on `vectors`.
fn svd_full<T>(a: DMatrix<T>, vectors: bool) -> (Vec<f64>, Option<Factors<T>>)
where
    T: ComplexField<RealField = f64>,
{
    let svd = SVD::new_unordered(a, true, true);
    let sv = &svd.singular_values;
    let mut order: Vec<usize> = (0..sv.len()).collect();
    order.sort_by(|&x, &y| sv[y].total_cmp(&sv[x]));
    let sigma = order.iter().map(|&i| sv[i]).collect();
    if !vectors {
        return (sigma, None);
    }
    let u = svd.u.as_ref().expect("left vectors requested");
    let v = svd.v_t.as_ref().expect("right vectors requested").adjoint();
    let u_cols: Vec<DVector<T>> = order.iter().map(|&i| u.column(i).into_owned()).collect();
    let v_cols: Vec<DVector<T>> = order.iter().map(|&i| v.column(i).into_owned()).collect();
    (
        sigma,
        Some((
            complete_unitary(u_cols, u.nrows()),
            complete_unitary(v_cols, v.nrows()),
        )),
    )
}

/// Extends orthonormal columns to a basis of the whole space. Each new
/// column is the standard basis vector with the largest component outside
/// the current span, orthogonalized twice.
fn complete_unitary<T>(mut cols: Vec<DVector<T>>, dim: usize) -> DMatrix<T>
where
    T: ComplexField<RealField = f64>,
{
    while cols.len() < dim {
        let mut best: Option<(f64, DVector<T>)> = None;
        for j in 0..dim {
            let mut v = DVector::<T>::zeros(dim);
            v[j] = T::one();
            for _ in 0..2 {
                for c in &cols {
                    let proj = c.dotc(&v);
                    v.axpy(-proj, c, T::one());
                }
            }
            let norm = v.norm();
            if best.as_ref().is_none_or(|(b, _)| norm > *b) {
                best = Some((norm, v));
            }
        }
        let (norm, v) = best.expect("dim > 0");
        cols.push(v.unscale(norm));
    }
    DMatrix::from_columns(&cols)
}
