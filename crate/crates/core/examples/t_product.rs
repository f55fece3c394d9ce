//! The t-product, orthogonal tensors and the transpose.
//!
//! ```text
//! cargo run --example t_product
//! ```

use tsvd::{
    identity_tensor, is_orthogonal, random_orthogonal, tprod, tprod_with, Tensor3, TprodPath,
};

pub fn run() -> tsvd::Result<()> {
    let a = Tensor3::random_normal(3, 2, 4, 1)?;
    let b = Tensor3::random_normal(2, 5, 4, 2)?;

    let fast = tprod(&a, &b)?;
    let slow = tprod_with(&a, &b, TprodPath::Oracle)?;
    println!("A * B has shape {:?}", fast.dims());
    println!(
        "spectral vs block-circulant path: {:.2e}",
        fast.sub(&slow)?.frobenius_norm()
    );

    // (A * B)ᵀ = Bᵀ * Aᵀ
    let lhs = fast.transpose();
    let rhs = tprod(&b.transpose(), &a.transpose())?;
    println!(
        "transpose reverses the order: {:.2e}",
        lhs.sub(&rhs)?.frobenius_norm()
    );

    let u = random_orthogonal(3, 4, 7)?;
    let tol = 1e-9 * (12.0_f64).sqrt();
    println!("random U is orthogonal: {}", is_orthogonal(&u, tol)?);
    let uut = tprod(&u, &u.transpose())?;
    println!(
        "|U * Uᵀ - I| = {:.2e}",
        uut.sub(&identity_tensor(3, 4)?)?.frobenius_norm()
    );
    println!(
        "|U * A| = {:.6}, |A| = {:.6}",
        tprod(&u, &a)?.frobenius_norm(),
        a.frobenius_norm()
    );
    Ok(())
}

fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
