//! Cycle diagrams behind the ordered-simplex sum rules.
//!
//! The n-th sum rule is an n-fold integral of a cyclic product
//!
//!   𝒢(x₁,…,xₙ) = G(x₁,x₂) G(x₂,x₃) ⋯ G(xₙ,x₁),
//!
//! and restricting to the ordered simplex x₁ ≤ x₂ ≤ … ≤ xₙ turns the n!
//! orderings into a finite set of inequivalent cycles: two vertex orderings
//! give the same integrand when they differ by a rotation or reflection of
//! the cycle, so for n ≥ 3 there are (n−1)!/2 diagrams, each carrying the
//! prefactor 2n (n = 1 and n = 2 are the degenerate self-loop and doubled
//! edge with prefactors 1 and 2).  The bookkeeping identity
//!
//!   prefactor(n) · #diagrams(n) = n!
//!
//! says the diagrams exhaust all orderings exactly once.  At n = 9 there
//! are 8!/2 = 20160 diagrams — the practical ceiling of the diagram route;
//! beyond it the kernel-trace route takes over.

use std::time::Instant;

use stringzeta::diagrams::{diagram_count, enumerate, prefactor};

fn main() {
    println!("{:>3}  {:>10}  {:>9}  {:>12}", "n", "#diagrams", "prefactor", "weighted");
    for n in 1..=9usize {
        let count = diagram_count(n);
        let w = prefactor(n) * count as f64;
        println!("{n:>3}  {count:>10}  {:>9}  {w:>12}", prefactor(n));
    }

    println!("\nall diagrams for n = 4 (vertex cycles):");
    for d in enumerate(4).expect("n = 4 is enumerable") {
        let cycle: Vec<String> = d.cycle().iter().map(|v| v.to_string()).collect();
        println!("  {}-{}", cycle.join("-"), d.cycle()[0]);
    }

    println!("\nand the first few of the 20160 diagrams at n = 9:");
    let t0 = Instant::now();
    let nine = enumerate(9).expect("n = 9 is enumerable");
    let dt = t0.elapsed().as_secs_f64();
    for d in nine.iter().take(5) {
        let cycle: Vec<String> = d.cycle().iter().map(|v| v.to_string()).collect();
        println!("  {}-{}", cycle.join("-"), d.cycle()[0]);
    }
    println!("  … {} total, enumerated in {dt:.3}s", nine.len());
}
