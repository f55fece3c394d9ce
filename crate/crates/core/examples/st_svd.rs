//! ST-SVD: factors, reconstruction, T-singular values and orthogonal
//! invariance of the canonical f-diagonal core.

use tsvd::{gmap, orthogonal_conjugate, random_orthogonal, st_svd, t_singular_values, Tensor3};

pub fn run() -> tsvd::Result<()> {
    let a = Tensor3::random_normal(4, 3, 6, 11)?;
    let f = st_svd(&a);
    println!("U {:?}, S {:?}, V {:?}", f.u.dims(), f.s.dims(), f.v.dims());
    println!(
        "|U * S * Vᵀ - A| = {:.2e}",
        f.reconstruct().sub(&a)?.frobenius_norm()
    );

    let spectrum = t_singular_values(&a);
    for (i, sigma) in spectrum.sigmas.iter().enumerate() {
        println!("sigma_{} = {sigma:.6}", i + 1);
    }
    println!("tubal rank {}", spectrum.tubal_rank);

    // S is a fixed point, and conjugating A by orthogonal tensors leaves it alone
    let s = f.s.to_tensor();
    println!(
        "|gmap(S) - S| = {:.2e}",
        gmap(&s).to_tensor().sub(&s)?.frobenius_norm()
    );
    let u = random_orthogonal(4, 6, 1)?;
    let v = random_orthogonal(3, 6, 2)?;
    let b = orthogonal_conjugate(&a, &u, &v)?;
    println!(
        "|gmap(U A Vᵀ) - gmap(A)| = {:.2e}",
        gmap(&b).to_tensor().sub(&s)?.frobenius_norm()
    );
    Ok(())
}

fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
