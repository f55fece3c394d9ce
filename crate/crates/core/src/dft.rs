//! Mode-3 discrete Fourier transform.
//!
//! The forward transform maps the frontal slices of a real tensor to the
//! complex blocks `Δ^(k) = Σ_l ω^{(l-1)(k-1)} A^(l)` with `ω = e^{2πi/p}`.
//! These are exactly the diagonal blocks of `(F_p ⊗ I_m) bcirc(A) (F_p⁻¹ ⊗ I_n)`.

use std::f64::consts::PI;

use nalgebra::{Complex, DMatrix};
use rustfft::{FftDirection, FftPlanner};

use crate::error::{Result, TensorError};
use crate::tensor::Tensor3;

pub type C64 = Complex<f64>;

/// Tubes longer than this go through an FFT instead of direct summation.
pub const DIRECT_SUM_MAX_P: usize = 8;

/// The primitive root `ω = e^{2πi/p}` and its powers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RootOfUnity {
    p: usize,
}

impl RootOfUnity {
    pub fn new(p: usize) -> Self {
        assert!(p > 0, "root of unity needs p > 0");
        Self { p }
    }

    pub fn order(&self) -> usize {
        self.p
    }

    pub fn value(&self) -> C64 {
        self.pow(1)
    }

    /// `ω^q`, evaluated as `exp(2πi (q mod p) / p)` so large exponents do
    /// not accumulate error.
    pub fn pow(&self, q: i64) -> C64 {
        let r = q.rem_euclid(self.p as i64) as f64;
        C64::from_polar(1.0, 2.0 * PI * r / self.p as f64)
    }

    /// `conj(ω)^q`.
    pub fn conj_pow(&self, q: i64) -> C64 {
        self.pow(q).conj()
    }
}

/// The DFT-domain image of an `m × n × p` tensor: `p` complex `m × n` blocks.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralBlocks {
    m: usize,
    n: usize,
    blocks: Vec<DMatrix<C64>>,
}

impl SpectralBlocks {
    pub fn new(blocks: Vec<DMatrix<C64>>) -> Result<Self> {
        let (m, n) = blocks.first().map(|b| b.shape()).unwrap_or((0, 0));
        if m == 0 || n == 0 || blocks.len() < 2 {
            return Err(TensorError::InvalidShape {
                m,
                n,
                p: blocks.len(),
            });
        }
        if blocks.iter().any(|b| b.shape() != (m, n)) {
            return Err(TensorError::ShapeMismatch(
                "spectral blocks differ in shape".into(),
            ));
        }
        Ok(Self { m, n, blocks })
    }

    pub fn dims(&self) -> (usize, usize, usize) {
        (self.m, self.n, self.blocks.len())
    }

    pub fn p(&self) -> usize {
        self.blocks.len()
    }

    /// Block `Δ^(k+1)`.
    pub fn block(&self, k: usize) -> &DMatrix<C64> {
        &self.blocks[k]
    }

    pub fn blocks(&self) -> &[DMatrix<C64>] {
        &self.blocks
    }

    pub fn into_blocks(self) -> Vec<DMatrix<C64>> {
        self.blocks
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.blocks
            .iter()
            .flat_map(|b| b.iter())
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// `1e-10 · max(1, ‖Δ‖_F)`, the tolerance used by [`idft_mode3`] and
    /// [`check_real_spectrum`].
    pub fn default_tol(&self) -> f64 {
        1e-10 * self.frobenius_norm().max(1.0)
    }

    /// `max |Δ^(k) - conj(Δ^(p-k+2))|` over all blocks and entries.
    pub fn conjugate_symmetry_residual(&self) -> f64 {
        let p = self.p();
        let mut worst = 0.0_f64;
        for k in 0..p {
            let mirror = &self.blocks[(p - k) % p];
            for (a, b) in self.blocks[k].iter().zip(mirror.iter()) {
                worst = worst.max((a - b.conj()).norm());
            }
        }
        worst
    }
}

fn dft_direct(x: &[C64], root: &RootOfUnity, inverse: bool) -> Vec<C64> {
    let p = x.len() as i64;
    (0..p)
        .map(|k| {
            x.iter()
                .enumerate()
                .fold(C64::new(0.0, 0.0), |acc, (l, v)| {
                    let q = (l as i64 * k) % p;
                    let w = if inverse {
                        root.conj_pow(q)
                    } else {
                        root.pow(q)
                    };
                    acc + w * v
                })
        })
        .collect()
}

/// Applies the unnormalized transform `y_k = Σ_l ω^{±lk} x_l` to a batch of
/// tubes of equal length. `inverse` selects `conj(ω)`.
pub(crate) fn transform_tubes(tubes: &mut [Vec<C64>], inverse: bool) {
    let p = match tubes.first() {
        Some(t) => t.len(),
        None => return,
    };
    if p <= DIRECT_SUM_MAX_P {
        let root = RootOfUnity::new(p);
        for tube in tubes.iter_mut() {
            *tube = dft_direct(tube, &root, inverse);
        }
    } else {
        // rustfft's forward direction uses e^{-2πi/p}, i.e. conj(ω)
        let direction = if inverse {
            FftDirection::Forward
        } else {
            FftDirection::Inverse
        };
        let fft = FftPlanner::new().plan_fft(p, direction);
        for tube in tubes.iter_mut() {
            fft.process(tube);
        }
    }
}

/// Computes `Δ^(k)` for `k = 1..p`.
pub fn dft_mode3(t: &Tensor3) -> SpectralBlocks {
    let (m, n, p) = t.dims();
    let mut tubes: Vec<Vec<C64>> = (0..m * n)
        .map(|ij| {
            (0..p)
                .map(|k| C64::new(t.get(ij / n, ij % n, k), 0.0))
                .collect()
        })
        .collect();
    transform_tubes(&mut tubes, false);
    let blocks = (0..p)
        .map(|k| DMatrix::from_fn(m, n, |i, j| tubes[i * n + j][k]))
        .collect();
    SpectralBlocks { m, n, blocks }
}

/// Inverse transform that keeps the real part without any symmetry check.
/// Callers must guarantee conjugate symmetry by construction.
pub(crate) fn idft_real_unchecked(s: &SpectralBlocks) -> Tensor3 {
    let (m, n, p) = s.dims();
    let mut tubes: Vec<Vec<C64>> = (0..m * n)
        .map(|ij| (0..p).map(|k| s.blocks[k][(ij / n, ij % n)]).collect())
        .collect();
    transform_tubes(&mut tubes, true);
    let scale = 1.0 / p as f64;
    Tensor3::from_fn(m, n, p, |i, j, k| tubes[i * n + j][k].re * scale)
        .expect("spectral blocks have a valid shape")
}

/// `A^(k) = (1/p) Σ_l conj(ω)^{(k-1)(l-1)} Δ^(l)`, rejecting input whose
/// conjugate-symmetry residual exceeds `1e-10 · max(1, ‖Δ‖_F)`.
pub fn idft_mode3(s: &SpectralBlocks) -> Result<Tensor3> {
    let tol = s.default_tol();
    let residual = s.conjugate_symmetry_residual();
    if residual > tol || residual.is_nan() {
        return Err(TensorError::NotConjugateSymmetric { residual, tol });
    }
    Ok(idft_real_unchecked(s))
}

/// Outcome of [`check_real_spectrum`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RealSpectrumCheck {
    pub real_diagonal: bool,
    pub max_imag: f64,
    pub max_off_diagonal: f64,
    pub tol: f64,
}

impl RealSpectrumCheck {
    pub fn max_residual(&self) -> f64 {
        self.max_imag.max(self.max_off_diagonal)
    }
}

/// Whether every block is real and diagonal to within
/// `1e-10 · max(1, ‖Δ‖_F)`.
pub fn check_real_spectrum(s: &SpectralBlocks) -> RealSpectrumCheck {
    let tol = s.default_tol();
    let mut max_imag = 0.0_f64;
    let mut max_off_diagonal = 0.0_f64;
    for block in &s.blocks {
        for j in 0..block.ncols() {
            for i in 0..block.nrows() {
                let z = block[(i, j)];
                max_imag = max_imag.max(z.im.abs());
                if i != j {
                    max_off_diagonal = max_off_diagonal.max(z.norm());
                }
            }
        }
    }
    RealSpectrumCheck {
        real_diagonal: max_imag <= tol && max_off_diagonal <= tol,
        max_imag,
        max_off_diagonal,
        tol,
    }
}
