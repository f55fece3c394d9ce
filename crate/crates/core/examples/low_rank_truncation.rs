//! Rank-r truncation and the tail-energy error identity.

use tsvd::{extremal_bound_check, t_singular_values, tprod, truncate, Tensor3};

pub fn run() -> tsvd::Result<()> {
    // a tubal-rank-2 signal plus a little noise
    let left = Tensor3::random_normal(6, 2, 8, 5)?;
    let right = Tensor3::random_normal(2, 5, 8, 6)?;
    let a = tprod(&left, &right)?.add(&Tensor3::random_normal(6, 5, 8, 7)?.scale(1e-3))?;

    let spectrum = t_singular_values(&a);
    println!("{:>4} {:>14} {:>14}", "r", "error^2", "tail energy");
    for r in 0..=a.min_dim() {
        let err = a.sub(&truncate(&a, r)?)?.frobenius_norm();
        println!(
            "{r:>4} {:>14.6e} {:>14.6e}",
            err * err,
            spectrum.tail_energy(r)
        );
    }

    // no set of s tubes holds more energy than the s leading T-singular values
    let bound = extremal_bound_check(&a, &[(0, 0), (3, 1)])?;
    println!(
        "leading energy {:.4} >= tube energy {:.4}: {}",
        bound.leading_energy, bound.pair_energy, bound.holds
    );
    Ok(())
}

fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
