//! Independent oracles shared by the integration tests.
//!
//! Everything here works on dense matrices: the Fourier matrices `F_p ⊗ I`
//! are formed explicitly, singular values come from a one-sided Jacobi
//! iteration, and nothing calls into the crate's transform or SVD code.

#![allow(dead_code)]

use std::f64::consts::PI;

use nalgebra::{Complex, DMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tsvd::{
    bcirc, check_direct_p2, check_direct_p3, check_direct_p4, check_fixed_point, check_general,
    FDiagonal3, Tensor3, Verdict,
};

pub type C64 = Complex<f64>;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `F_p ⊗ I_dim` (or its inverse `(1/p) F_p* ⊗ I_dim`), entry by entry.
pub fn fourier_kron(p: usize, dim: usize, inverse: bool) -> DMatrix<C64> {
    let mut f = DMatrix::from_element(p * dim, p * dim, C64::new(0.0, 0.0));
    for k in 0..p {
        for l in 0..p {
            let angle = 2.0 * PI * ((k * l) % p) as f64 / p as f64;
            let w = if inverse {
                C64::from_polar(1.0 / p as f64, -angle)
            } else {
                C64::from_polar(1.0, angle)
            };
            for i in 0..dim {
                f[(k * dim + i, l * dim + i)] = w;
            }
        }
    }
    f
}

fn complexify(m: &DMatrix<f64>) -> DMatrix<C64> {
    m.map(|v| C64::new(v, 0.0))
}

/// `(F_p ⊗ I_m) bcirc(t) (F_p⁻¹ ⊗ I_n)`.
pub fn dense_block_diagonalization(t: &Tensor3) -> DMatrix<C64> {
    let (m, n, p) = t.dims();
    fourier_kron(p, m, false) * complexify(bcirc(t).matrix()) * fourier_kron(p, n, true)
}

/// Diagonal blocks of the dense block diagonalization, plus the largest
/// modulus found outside them.
pub fn dense_spectral_blocks(t: &Tensor3) -> (Vec<DMatrix<C64>>, f64) {
    let (m, n, p) = t.dims();
    let big = dense_block_diagonalization(t);
    let mut off = 0.0_f64;
    for r in 0..m * p {
        for c in 0..n * p {
            if r / m != c / n {
                off = off.max(big[(r, c)].norm());
            }
        }
    }
    let blocks = (0..p)
        .map(|k| big.view((k * m, k * n), (m, n)).into_owned())
        .collect();
    (blocks, off)
}

/// Singular values of a real matrix by one-sided Jacobi rotations,
/// nonincreasing.
pub fn jacobi_singular_values_real(a: &DMatrix<f64>) -> Vec<f64> {
    let mut a = if a.ncols() > a.nrows() {
        a.transpose()
    } else {
        a.clone()
    };
    let cols = a.ncols();
    for _sweep in 0..100 {
        let mut rotated = false;
        for i in 0..cols {
            for j in i + 1..cols {
                let alpha = a.column(i).norm_squared();
                let beta = a.column(j).norm_squared();
                let gamma = a.column(i).dot(&a.column(j));
                if gamma.abs() <= 1e-15 * (alpha * beta).sqrt() || gamma == 0.0 {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                for r in 0..a.nrows() {
                    let (x, y) = (a[(r, i)], a[(r, j)]);
                    a[(r, i)] = c * x - s * y;
                    a[(r, j)] = s * x + c * y;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let mut sv: Vec<f64> = (0..cols).map(|c| a.column(c).norm()).collect();
    sv.sort_by(|x, y| y.total_cmp(x));
    sv
}

/// Singular values of a complex `m × n` matrix through its real embedding
/// `[[Re, -Im], [Im, Re]]`, whose spectrum repeats each value twice.
pub fn jacobi_singular_values(a: &DMatrix<C64>) -> Vec<f64> {
    let (m, n) = a.shape();
    let mut e = DMatrix::zeros(2 * m, 2 * n);
    for i in 0..m {
        for j in 0..n {
            let z = a[(i, j)];
            e[(i, j)] = z.re;
            e[(i, n + j)] = -z.im;
            e[(m + i, j)] = z.im;
            e[(m + i, n + j)] = z.re;
        }
    }
    let doubled = jacobi_singular_values_real(&e);
    doubled.into_iter().step_by(2).take(m.min(n)).collect()
}

/// `G(t)` evaluated with dense Kronecker products and Jacobi singular values.
pub fn gmap_oracle(t: &Tensor3) -> FDiagonal3 {
    let (m, n, p) = t.dims();
    let (blocks, _) = dense_spectral_blocks(t);
    let mut d = DMatrix::from_element(m * p, n * p, C64::new(0.0, 0.0));
    for (k, block) in blocks.iter().enumerate() {
        for (i, sv) in jacobi_singular_values(block).into_iter().enumerate() {
            d[(k * m + i, k * n + i)] = C64::new(sv, 0.0);
        }
    }
    let circ = fourier_kron(p, m, true) * d * fourier_kron(p, n, false);
    let r = m.min(n);
    let tubes: Vec<Vec<f64>> = (0..r)
        .map(|i| (0..p).map(|k| circ[(k * m + i, i)].re).collect())
        .collect();
    FDiagonal3::from_tubes(m, n, &tubes).unwrap()
}

/// `fold(bcirc(a) · unfold(b))` written out as a triple loop over slices.
pub fn tprod_loop_oracle(a: &Tensor3, b: &Tensor3) -> Tensor3 {
    let (m, s, p) = a.dims();
    let n = b.n();
    Tensor3::from_fn(m, n, p, |i, j, k| {
        let mut acc = 0.0;
        for l in 0..p {
            let src = (k + p - l) % p;
            for q in 0..s {
                acc += a.get(i, q, src) * b.get(q, j, l);
            }
        }
        acc
    })
    .unwrap()
}

pub fn rel_diff(a: &Tensor3, b: &Tensor3) -> f64 {
    a.sub(b).unwrap().frobenius_norm() / b.frobenius_norm().max(1.0)
}

pub fn fdiag_diff(a: &FDiagonal3, b: &FDiagonal3) -> f64 {
    a.to_tensor().sub(&b.to_tensor()).unwrap().frobenius_norm()
}

pub fn random_shape(rng: &mut ChaCha8Rng, max_mn: usize, max_p: usize) -> (usize, usize, usize) {
    (
        rng.random_range(1..=max_mn),
        rng.random_range(1..=max_mn),
        rng.random_range(2..=max_p),
    )
}

/// Uniform `[-1, 1]` diagonal entries; optionally symmetrized in the third
/// mode (`S(i,i,k) = S(i,i,p-k+2)`).
pub fn random_f_diagonal(
    rng: &mut ChaCha8Rng,
    m: usize,
    n: usize,
    p: usize,
    symmetric: bool,
) -> FDiagonal3 {
    let tubes: Vec<Vec<f64>> = (0..m.min(n))
        .map(|_| {
            let mut t: Vec<f64> = (0..p).map(|_| rng.random_range(-1.0..=1.0)).collect();
            if symmetric {
                for k in 1..p {
                    if p - k < k {
                        t[k] = t[p - k];
                    }
                }
            }
            t
        })
        .collect();
    FDiagonal3::from_tubes(m, n, &tubes).unwrap()
}

/// The 3×3×3 f-diagonal tensor with tubes (12,5,5), (8,0,0), (5,0,0): it
/// passes all four necessary conditions but is not s-diagonal.
pub fn counterexample() -> FDiagonal3 {
    FDiagonal3::from_tubes(
        3,
        3,
        &[
            vec![12.0, 5.0, 5.0],
            vec![8.0, 0.0, 0.0],
            vec![5.0, 0.0, 0.0],
        ],
    )
    .unwrap()
}

/// Verdicts of the fixed-point, general and (for `p ≤ 4`) direct checkers,
/// and whether any of them sat inside its margin band.
pub fn characterization_verdicts(s: &FDiagonal3, tol: f64) -> (Vec<Verdict>, bool) {
    let mut reports = vec![check_fixed_point(s, tol), check_general(s, tol)];
    match s.p() {
        2 => reports.push(check_direct_p2(s, tol).unwrap()),
        3 => reports.push(check_direct_p3(s, tol).unwrap()),
        4 => reports.push(check_direct_p4(s, tol).unwrap()),
        _ => {}
    }
    let ambiguous = reports.iter().any(|r| r.is_ambiguous());
    (reports.into_iter().map(|r| r.verdict).collect(), ambiguous)
}
pub mod cli;
