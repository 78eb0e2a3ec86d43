//! Two-sided ground-state bounds from moments.
//!
//! Because Z(s) = Σₙ Eₙ⁻ˢ is dominated by E₁, consecutive sum rules pin it
//! from both sides:
//!
//!   Z(s+1)^(−1/(s+1))  ≤  E₁  ≤  Z(s)/Z(s+1).
//!
//! The lower bound is the power mean of the spectrum; the upper bound is a
//! ratio whose excited-state contamination enters at order (E₁/E₂)ˢ but
//! with a larger constant, so in practice the lower bound converges faster
//! — visible in the gap columns below.  Both sides tighten geometrically
//! in s at rate E₁/E₂.
//!
//! The one systematic exception is a degenerate ground state: for the
//! uniform periodic string E₁ = E₂, the power mean loses a factor 2^(1/s)
//! while the ratio's degeneracy factor cancels, and the upper bound wins.

use stringzeta::density::DensityProfile;
use stringzeta::extrapolate::euler_bounds;
use stringzeta::greens::BoundaryCondition;
use stringzeta::oracle::{solve_spectrum, OracleConfig};
use stringzeta::sumrules::{zeta_kernel_trace, QuadratureConfig};

fn report(label: &str, profile: &DensityProfile, bc: BoundaryCondition) {
    let table = zeta_kernel_trace(profile, bc, 6, &QuadratureConfig::default())
        .expect("kernel route");
    let bounds = euler_bounds(&table).expect("at least one consecutive pair");
    let oracle = solve_spectrum(
        profile,
        bc,
        &OracleConfig {
            num_modes: 2,
            ..OracleConfig::default()
        },
    )
    .expect("oracle");
    let e1 = oracle.eigenvalues[0];
    println!("{label}, {}:  oracle E₁ = {e1:.9}\n", bc.name());
    println!(
        "{:>3}  {:>14}  {:>14}  {:>10}  {:>10}",
        "s", "lower", "upper", "E₁−lower", "upper−E₁"
    );
    for b in &bounds {
        println!(
            "{:>3}  {:>14.9}  {:>14.9}  {:>10.2e}  {:>10.2e}",
            b.s,
            b.lower,
            b.upper,
            e1 - b.lower,
            b.upper - e1
        );
    }
    println!();
}

fn main() {
    let hc = DensityProfile::horgan_chan();
    report("horgan-chan", &hc, BoundaryCondition::DD);

    let osc = DensityProfile::oscillating(0.5).expect("eps > 0");
    report("oscillating ε = 0.5", &osc, BoundaryCondition::DD);

    // The degenerate case: uniform + periodic, E₁ = E₂ = 4π².
    let uniform = DensityProfile::uniform();
    report("uniform (degenerate E₁ = E₂)", &uniform, BoundaryCondition::PP);
}
