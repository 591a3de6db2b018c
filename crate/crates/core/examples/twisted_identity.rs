//! Checks the twisted denominator identity, first with the identity
//! element acting (where it recovers the root multiplicities), then with a
//! hand-written Adams family read from TOML.
//!
//!     cargo run --example twisted_identity

use monstrous::eta::MoonshineClass;
use monstrous::lambda::{level_one_exponents, twisted_identity_check, AdamsFamily};

fn main() -> monstrous::Result<()> {
    let class = MoonshineClass::builtin("2B", 8)?;
    let fam = AdamsFamily::identity(&class, 5)?;
    let check = twisted_identity_check(&fam, 5, 5)?;
    println!("identity element: sides equal {}", check.equal);
    let exps = level_one_exponents(&fam, &check, 5)?;
    for ((m, n), v) in exps.iter().take(6) {
        println!("  exponent at ({m}, {n}/2) = {v}");
    }

    let text = include_str!("data/adams.toml");
    let fam = AdamsFamily::parse(text)?;
    let check = twisted_identity_check(&fam, 4, 4)?;
    println!("custom family (kmax {}): sides equal {}", fam.kmax(), check.equal);
    Ok(())
}
