//! Builds the Cartan matrix of the simple roots for class 4D in a small
//! window and checks the axioms and the row relations.
//!
//!     cargo run --example cartan_matrix

use monstrous::cartan::CartanView;
use monstrous::eta::MoonshineClass;

fn main() -> monstrous::Result<()> {
    let class = MoonshineClass::builtin("4D", 12)?;
    let view = CartanView::new(&class, 6, 3)?;
    for (side, level, mult) in view.blocks() {
        println!("{side:?} level {level}: {mult} copies");
    }
    let (labels, a) = view.representative_matrix();
    print!("{:>8}", "");
    for l in &labels {
        print!("{:>8}", l.to_string());
    }
    println!();
    for (l, row) in labels.iter().zip(&a) {
        print!("{:>8}", l.to_string());
        for v in row {
            print!("{v:>8}");
        }
        println!();
    }
    let axioms = view.validate_axioms();
    let rows = view.row_relations();
    println!("axioms hold: {}", axioms.passed());
    println!("row relations (ell = {}): rank {}, ok {}", rows.ell, rows.rank, rows.passed());
    Ok(())
}
