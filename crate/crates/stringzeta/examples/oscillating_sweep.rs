//! Rapidly oscillating density: homogenization in action.
//!
//! Σ(x) = 1 + sin(2πx/ε)/2 oscillates 1/ε times across the unit string.
//! As ε → 0 the spectrum approaches that of the homogenized (uniform-mean)
//! string, with corrections organized in powers of ε.  Under Dirichlet
//! ends the ground state follows
//!
//!   E₁(ε) = π²/2 − (π²/64) ε² + (π/4) sin²(π/ε) ε³ + O(ε⁴),
//!
//! an expansion reproduced here three independent ways: the sum-rule
//! pipeline (kernel table → tail-corrected Berry estimates → repeated
//! Shanks), the finite-difference oracle, and the expansion itself.
//!
//! Under Neumann ends the story changes qualitatively: the first
//! correction is linear in ε with coefficient (π/4)(cos(2π/ε) − 1).  On
//! grids where 1/ε is an integer that coefficient vanishes identically —
//! sampling only there would suggest E₁ − π²/2 = O(ε²).  The half-integer
//! grid shows the true O(ε) behaviour.

use stringzeta::asymptotics::bc_corrected_coeffs;
use stringzeta::density::DensityProfile;
use stringzeta::extrapolate::{berry_sequence, shanks_table};
use stringzeta::fixtures;
use stringzeta::greens::BoundaryCondition;
use stringzeta::oracle::{solve_spectrum, OracleConfig};
use stringzeta::sumrules::{zeta_kernel_trace, QuadratureConfig};

fn dirichlet_estimate(eps: f64) -> f64 {
    let profile = DensityProfile::oscillating(eps).expect("eps > 0");
    let table = zeta_kernel_trace(&profile, BoundaryCondition::DD, 6, &QuadratureConfig::default())
        .expect("kernel route");
    let coeffs = bc_corrected_coeffs(&profile, BoundaryCondition::DD).expect("smooth density");
    let berry = berry_sequence(&table, &coeffs, BoundaryCondition::DD).expect("tail fits");
    shanks_table(&berry.values, 4).expect("6 entries").deepest().0
}

fn oracle_e1(eps: f64, bc: BoundaryCondition, grid: usize) -> f64 {
    let profile = DensityProfile::oscillating(eps).expect("eps > 0");
    solve_spectrum(
        &profile,
        bc,
        &OracleConfig {
            num_modes: 1,
            grid_size: grid,
            ..OracleConfig::default()
        },
    )
    .expect("oracle")
    .eigenvalues[0]
}

fn main() {
    println!("Dirichlet ground state vs ε   (π²/2 = {:.9})\n", std::f64::consts::PI.powi(2) / 2.0);
    println!(
        "{:>6}  {:>14}  {:>14}  {:>14}",
        "ε", "sum rules", "oracle", "ε-expansion"
    );
    for &eps in &[0.5, 0.2, 0.1] {
        let est = dirichlet_estimate(eps);
        let orc = oracle_e1(eps, BoundaryCondition::DD, 2400);
        let wkb = fixtures::oscillating_dirichlet_wkb(eps);
        println!("{eps:>6}  {est:>14.9}  {orc:>14.9}  {wkb:>14.9}");
    }

    println!("\nNeumann: the O(ε) term lives off the integer-1/ε grid\n");
    let konst = std::f64::consts::PI.powi(2) / 2.0;
    println!("  integer 1/ε (linear coefficient vanishes):");
    println!("{:>10}  {:>14}  {:>12}", "ε", "E₁", "E₁ − π²/2");
    for &eps in &[0.05, 0.02, 0.01] {
        let e1 = oracle_e1(eps, BoundaryCondition::NN, 4800);
        println!("{eps:>10.6}  {e1:>14.9}  {:>12.3e}", e1 - konst);
    }
    println!("\n  half-integer 1/ε (linear coefficient extremal):");
    println!("{:>10}  {:>14}  {:>12}", "ε", "E₁", "E₁ − π²/2");
    let mut pts = Vec::new();
    for &eps in &[2.0 / 41.0, 2.0 / 99.0, 2.0 / 199.0] {
        let e1 = oracle_e1(eps, BoundaryCondition::NN, 4800);
        pts.push((eps.ln(), (e1 - konst).abs().ln()));
        println!("{eps:>10.6}  {e1:>14.9}  {:>12.3e}", e1 - konst);
    }
    let slope = (pts[2].1 - pts[0].1) / (pts[2].0 - pts[0].0);
    println!("\n  log-log slope on the half-integer grid: {slope:.3}  (linear ⇒ 1)");
    println!("  expected |E₁ − π²/2| ≈ (π/2)ε there: at ε = 2/41 that is {:.6}",
        std::f64::consts::PI / 2.0 * 2.0 / 41.0);
}
