//! Computes the Fricke transform twice, once from the eta product at
//! tau/a and once from the exponents c(m,0), then compares.
//!
//!     cargo run --example fricke_dual_route

use monstrous::eta::{self, EtaQuotient};

fn main() -> monstrous::Result<()> {
    let order = 16;
    for eq in [EtaQuotient::class_2b(), EtaQuotient::class_4d()] {
        let direct = eta::fricke_direct(&eq, order)?;
        let cm0 = eta::extract_cm0(&eta::expand_eta_quotient(&eq, order), order)?;
        let via_product = eta::fricke_from_product(direct.n, &direct.prefactor, &cm0, order)?;
        println!("{eq}: N = {}, prefactor {}", direct.n, direct.prefactor);
        for (num, c) in direct.series.terms().take(6) {
            println!("  q^({num}/{})  {c}", direct.n);
        }
        println!("  routes agree: {}\n", direct.series == via_product);
    }
    Ok(())
}
