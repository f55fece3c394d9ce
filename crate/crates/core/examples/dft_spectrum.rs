//! Mode-3 DFT: conjugate symmetry of real spectra and the round trip.

use tsvd::{check_real_spectrum, dft_mode3, idft_mode3, FDiagonal3, Tensor3};

pub fn run() -> tsvd::Result<()> {
    let a = Tensor3::random_normal(2, 3, 5, 3)?;
    let spec = dft_mode3(&a);
    println!("{} blocks of shape {:?}", spec.p(), spec.block(0).shape());
    println!(
        "conjugate symmetry residual: {:.2e}",
        spec.conjugate_symmetry_residual()
    );
    println!(
        "block 1 (k = 0) is real: {}",
        spec.block(0).iter().all(|z| z.im == 0.0)
    );

    let back = idft_mode3(&spec)?;
    println!("round trip error: {:.2e}", back.sub(&a)?.frobenius_norm());

    // Parseval: the blocks carry p times the energy
    let ratio = spec.frobenius_norm().powi(2) / a.frobenius_norm().powi(2);
    println!("energy ratio: {ratio:.12} (p = {})", a.p());

    // a tube symmetric in the third mode has a real spectrum
    let s = FDiagonal3::from_tubes(
        2,
        2,
        &[vec![4.0, 1.0, 0.5, 0.5, 1.0], vec![2.0, 0.0, 0.3, 0.3, 0.0]],
    )?;
    let check = check_real_spectrum(&dft_mode3(&s.to_tensor()));
    println!(
        "symmetric tubes: real diagonal = {}, max imag = {:.1e}",
        check.real_diagonal, check.max_imag
    );
    let skew = FDiagonal3::from_tubes(1, 1, &[vec![1.0, 1.0, 0.0]])?;
    let check = check_real_spectrum(&dft_mode3(&skew.to_tensor()));
    println!(
        "asymmetric tube: real diagonal = {}, max imag = {:.6}",
        check.real_diagonal, check.max_imag
    );
    Ok(())
}

fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
