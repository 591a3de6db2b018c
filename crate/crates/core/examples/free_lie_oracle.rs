//! Lyndon words, standard bracketing and the elimination check on a
//! quotient of a free Lie algebra with isotropic generators.
//!
//!     cargo run --example free_lie_oracle

use monstrous::freelie::{
    elimination_check, lyndon_words, standard_bracket, DegreeBound, GeneratorAlphabet,
};

fn main() -> monstrous::Result<()> {
    let alpha = GeneratorAlphabet::new(2);
    for w in lyndon_words(2, 4) {
        let name: String = w.iter().map(|&i| alpha.name(i as usize)).collect();
        let terms = standard_bracket(&w).terms().count();
        println!("{name:<6} degree {:?}, {terms} tensor terms", alpha.degree_of(&w));
    }

    let a = vec![vec![0, -1, 0], vec![-1, -2, -3], vec![0, -3, 0]];
    let report = elimination_check(&a, &[0, 2], &DegreeBound::Total(5))?;
    println!("\nisotropic: {:?}", report.isotropic);
    for (d, v) in report.quotient.iter() {
        println!("  {d:?}  quotient {v}  predicted {}", report.predicted.get(d));
    }
    println!("elimination check passed: {}", report.passed());
    Ok(())
}
