//! Root multiplicities of the monster Lie algebra for class 2B, computed
//! from the denominator product and from the free Lie algebra on V+.
//!
//!     cargo run --example root_multiplicities

use monstrous::eta::MoonshineClass;
use monstrous::roots::{compare, mults_from_product, mults_from_structure};

fn main() -> monstrous::Result<()> {
    let class = MoonshineClass::builtin("2B", 8)?;
    let product = mults_from_product(&class, 6, 6)?;
    let structure = mults_from_structure(&class, 6, 6)?;
    let diff = compare(&product, &structure)?;
    println!("{} nonzero points, {} disagreements", product.iter().count(), diff.len());
    print!("{}", product.restrict(4, 3).to_tsv());
    Ok(())
}
