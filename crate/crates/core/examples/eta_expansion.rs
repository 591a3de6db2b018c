//! Expands the eta quotients of classes 2B and 4D and peels the product
//! exponents c(m,0) off the q-expansion.
//!
//!     cargo run --example eta_expansion

use monstrous::eta::{self, EtaQuotient};

fn main() -> monstrous::Result<()> {
    for eq in [EtaQuotient::class_2b(), EtaQuotient::class_4d()] {
        let t = eta::expand_eta_quotient(&eq, 12);
        let cm0 = eta::extract_cm0(&t, 12)?;
        println!("{eq}");
        println!("  weight {}, leading exponent {}", eq.weight(), eq.leading_exponent());
        println!("  T = {t}");
        println!("  c(m,0), m = 1..12: {cm0:?}");
        let rebuilt = eta::product_from_cm0(&cm0, 11)?;
        println!("  product rebuilds T through q^11: {}", rebuilt == t.truncate(11));
    }
    Ok(())
}
