//! Writes the positive-root lattice of class 4D as an SVG file.
//!
//!     cargo run --example lattice_plot [out.svg]

use monstrous::eta::MoonshineClass;
use monstrous::plot::lattice_svg;
use monstrous::roots::mults_from_product;

fn main() -> monstrous::Result<()> {
    let out = std::env::args().nth(1).unwrap_or_else(|| "roots-4D.svg".into());
    let class = MoonshineClass::builtin("4D", 8)?;
    let svg = lattice_svg(&mults_from_product(&class, 7, 4)?);
    std::fs::write(&out, svg).map_err(|source| monstrous::Error::Io { path: out.clone().into(), source })?;
    println!("wrote {out}");
    Ok(())
}
