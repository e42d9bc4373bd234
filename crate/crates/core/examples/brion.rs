//! Divided differences on GL₂ as a sum over the Weyl group.

use anc::algebra::{FactoredTerm, LinearForm, Symbol};
use anc::git::linalg::identity;
use anc::localization::{brion_pushforward, sum_to_polynomial};

fn main() -> anc::Result<()> {
    let basis = [Symbol::chern(0, 0), Symbol::chern(0, 1)];
    let x1 = LinearForm::symbol(basis[0]);
    let root = x1.sub(&LinearForm::symbol(basis[1]));
    let reps = [identity(2), vec![vec![0, 1], vec![1, 0]]];
    for p in 0..=4 {
        let f = if p == 0 {
            FactoredTerm::one()
        } else {
            FactoredTerm::power(x1.clone(), p)?
        };
        let terms = brion_pushforward(&f, std::slice::from_ref(&root), &reps, &basis)?;
        let poly = sum_to_polynomial(&terms, 10_000)?.expect("symmetric sums are polynomial");
        println!("x1^{p} -> {poly}");
    }
    Ok(())
}
