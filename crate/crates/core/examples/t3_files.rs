//! Writing and reading the T3 text format.

use tsvd::io::{parse_t3, write_t3};
use tsvd::{gmap, identity_tensor, Tensor3};

pub fn run() -> tsvd::Result<()> {
    print!("{}", write_t3(&identity_tensor(2, 2)?));

    let a = Tensor3::random_normal(2, 3, 3, 4)?;
    let text = write_t3(&a);
    let back = parse_t3(&text)?;
    println!("\nround trip exact: {}", back == a);
    println!("re-emit byte-identical: {}", write_t3(&back) == text);

    println!("\n{}", write_t3(&gmap(&a).to_tensor()));
    match parse_t3("T3 1 1 2\nNaN\n1\n") {
        Err(e) => println!("rejected: {e}"),
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
