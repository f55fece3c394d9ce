//! Third-order tensor algebra under the t-product.
//!
//! The crate covers dense `m × n × p` real tensors ([`Tensor3`]), the
//! block-circulant view and fold/unfold reshapes, the mode-3 discrete
//! Fourier transform, the t-product, the Kilmer-Martin mapping with its
//! ST-SVD factorization, and a classifier that decides whether an
//! f-diagonal tensor is s-diagonal (a fixed point of the mapping).
//!
//! Indices in the API are 0-based. Printed reports and the T3 text format
//! use 1-based indices.
//!
//! ```
//! use tsvd::{gmap, Tensor3};
//!
//! let a = Tensor3::random_normal(3, 2, 4, 7).unwrap();
//! let s = gmap(&a);
//! // the mapping is idempotent
//! let again = gmap(&s.to_tensor());
//! assert!(s.to_tensor().sub(&again.to_tensor()).unwrap().frobenius_norm() < 1e-10);
//! ```

pub mod cli;
pub mod dft;
mod error;
pub mod io;
pub mod kilmer_martin;
pub mod sdiag;
mod slice_svd;
pub mod tensor;
pub mod tprod;

pub use dft::{check_real_spectrum, dft_mode3, idft_mode3, RootOfUnity, SpectralBlocks};
pub use error::{Result, TensorError};
pub use kilmer_martin::{
    extremal_bound_check, gmap, st_svd, t_singular_values, truncate, StSvdFactors, TubalSpectrum,
};
pub use sdiag::{
    check_direct_p2, check_direct_p3, check_direct_p4, check_fixed_point, check_general,
    check_necessary, classify, cone_combination, ConditionResult, Method, SDiagReport, Verdict,
};
pub use tensor::{
    bcirc, bcirc_inv, fold, identity_tensor, unfold, BlockCirculant, FDiagonal3, Tensor3,
};
pub use tprod::{
    is_orthogonal, orthogonal_conjugate, random_orthogonal, tprod, tprod_with, TprodPath,
};
