//! Loads user-defined classes from a TOML file and verifies each one by
//! comparing the two multiplicity routes. The perturbed entry fails.
//!
//!     cargo run --example class_file [path]

use monstrous::eta::parse_class_file;
use monstrous::roots::{compare, mults_from_product, mults_from_structure};

fn main() -> monstrous::Result<()> {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data/classes.toml").into());
    let text = std::fs::read_to_string(&path).map_err(|source| monstrous::Error::Io { path: path.clone().into(), source })?;
    for def in parse_class_file(&text)? {
        let class = def.build(10)?;
        let p = mults_from_product(&class, 5, 5)?;
        let s = mults_from_structure(&class, 5, 5)?;
        match compare(&p, &s)?.first() {
            None => println!("{:<14} N = {}  agree", class.label(), class.n()),
            Some(d) => println!("{:<14} N = {}  first disagreement {d:?}", class.label(), class.n()),
        }
    }
    Ok(())
}
