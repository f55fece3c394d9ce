//! Nonnegative combinations of s-diagonal tensors stay s-diagonal.

use tsvd::{check_general, cone_combination, gmap, Tensor3, Verdict};

pub fn run() -> tsvd::Result<()> {
    let members: Vec<_> = (0..3)
        .map(|seed| Tensor3::random_normal(4, 4, 6, seed).map(|a| gmap(&a)))
        .collect::<tsvd::Result<_>>()?;
    for weights in [[1.0, 0.0, 0.0], [0.5, 2.0, 0.1], [3.0, 3.0, 3.0]] {
        let c = cone_combination(&members, &weights)?;
        let tol: f64 = members
            .iter()
            .zip(&weights)
            .map(|(s, w)| w * s.default_tol())
            .sum();
        let verdict = check_general(&c, tol).verdict;
        println!("{weights:?}: {}", verdict.as_str());
        assert_eq!(verdict, Verdict::SDiagonal);
    }
    match cone_combination(&members, &[1.0, -1.0, 0.0]) {
        Err(e) => println!("negative weight rejected: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}

fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
