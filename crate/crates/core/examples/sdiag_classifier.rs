//! Classifying f-diagonal tensors: the necessary tier, the fixed-point
//! test, the spectral test, and the closed forms for p = 2, 3, 4.

use tsvd::{
    check_direct_p3, check_fixed_point, check_general, check_necessary, classify, gmap, FDiagonal3,
    Tensor3,
};

pub fn run() -> tsvd::Result<()> {
    // 3×3×3 tubes (12,5,5), (8,0,0), (5,0,0): every necessary condition holds
    let s = FDiagonal3::from_tubes(
        3,
        3,
        &[
            vec![12.0, 5.0, 5.0],
            vec![8.0, 0.0, 0.0],
            vec![5.0, 0.0, 0.0],
        ],
    )?;
    let tol = s.default_tol();
    println!("{}\n", check_necessary(&s, tol));
    println!("{}\n", check_direct_p3(&s, tol)?);
    println!(
        "fixed point: {}",
        check_fixed_point(&s, tol).verdict.as_str()
    );
    println!("general:     {}", check_general(&s, tol).verdict.as_str());

    // its image under gmap is the s-diagonal member of the same class
    let g = gmap(&s.to_tensor());
    println!("\ngmap(S) tube 1: {:?}", g.tube(0));
    println!("{}", classify(&g, g.default_tol()));

    let big = gmap(&Tensor3::random_normal(3, 4, 9, 1)?);
    let report = classify(&big, big.default_tol());
    println!(
        "\np = 9 via {}: {}",
        report.method.as_str(),
        report.verdict.as_str()
    );
    Ok(())
}

fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
