//! Asymptotic tails Z̃_n⁺(s) = Σ_{j>n} (α ε_j + β)^{−s}, two independent ways.
//!
//! High modes of any smooth string follow the two-term law E_j ≈ α ε_j + β,
//! where ε_j is the matching homogeneous spectrum.  α is fixed by the total
//! optical length σ(a/2) = ∫√Σ; the constant β is the mean of the Liouville
//! potential (4ΣΣ″ − 5Σ′²)/16Σ^{5/2} — plus, at every free end, a Robin
//! correction ∓2h/σ(a/2) with h = Σ′/4Σ^{3/2} evaluated at that end.  So β
//! depends on the boundary condition even though α never does.
//!
//! The tail sum itself is computed along two fully independent routes:
//!
//!   * a closed-form power series in w = σ(a/2)²·β with even-ζ coefficients,
//!     run in double-double precision (valid for |w| inside the series
//!     radius — π² for DD/NN, π²/4 for DN/ND, 4π² for PP);
//!   * direct term-by-term summation closed with an Euler–Maclaurin
//!     remainder, valid for any β at ~1e−14 relative accuracy.
//!
//! `tail_sum` cross-checks the two whenever both apply, so a defect in either
//! derivation surfaces as an error instead of a silently wrong tail.

use stringzeta::asymptotics::{
    bc_corrected_coeffs, tail_sum, tail_sum_dd, tail_sum_direct, AsymptoticCoefficients,
};
use stringzeta::dd::dd;
use stringzeta::density::DensityProfile;
use stringzeta::greens::{BoundaryCondition, ALL_BOUNDARY_CONDITIONS};

fn main() {
    // --- β depends on the boundary condition -----------------------------
    let profiles = [
        ("uniform", DensityProfile::uniform()),
        ("horgan-chan", DensityProfile::horgan_chan()),
        ("borg:alpha=2", DensityProfile::borg(2.0).expect("alpha > -1")),
    ];

    println!("boundary-corrected asymptotic law E_n ≈ α ε_n + β:\n");
    println!(
        "{:>14}  {:>8}  {}",
        "density",
        "α",
        ALL_BOUNDARY_CONDITIONS
            .iter()
            .map(|bc| format!("{:>10}", format!("β_{bc}")))
            .collect::<String>()
    );
    for (name, profile) in &profiles {
        let alpha = bc_corrected_coeffs(profile, BoundaryCondition::DD)
            .expect("smooth density")
            .alpha;
        let betas: String = ALL_BOUNDARY_CONDITIONS
            .iter()
            .map(|&bc| {
                let c = bc_corrected_coeffs(profile, bc).expect("smooth density");
                format!("{:>10.6}", c.beta)
            })
            .collect();
        println!("{name:>14}  {alpha:>8.5}  {betas}");
    }
    println!(
        "\nΣ = 9/(12x+10) carries the classic ladder 3/8, −1/8, 7/8, −5/8, 3/8;\n\
         the borg family has a vanishing Liouville potential, so only its free\n\
         ends contribute (β_NN = 2α²/(1+α) at α = 2 is 8/3).\n"
    );

    // --- two routes to the same tail --------------------------------------
    let hc = DensityProfile::horgan_chan();
    println!("horgan-chan tails, series route vs direct Euler–Maclaurin:\n");
    println!(
        "{:>4} {:>3} {:>3}  {:>22}  {:>22}  {:>9}",
        "bc", "n", "s", "series (dd)", "direct (f64)", "rel diff"
    );
    for &bc in &ALL_BOUNDARY_CONDITIONS {
        let coeffs = bc_corrected_coeffs(&hc, bc).expect("smooth density");
        for (n, s) in [(1usize, 1u32), (1, 3), (4, 2)] {
            let series = tail_sum_dd(dd(coeffs.alpha), dd(coeffs.beta), dd(coeffs.a), bc, n, s)
                .expect("inside series radius")
                .hi();
            let direct = tail_sum_direct(&coeffs, bc, n, s).expect("positive tail");
            let rel = ((series - direct) / series).abs();
            let name = bc.name();
            println!("{name:>4} {n:>3} {s:>3}  {series:>22.16}  {direct:>22.16}  {rel:>9.1e}");
        }
    }

    // --- outside the series radius the direct route carries on ------------
    let far = AsymptoticCoefficients::new(1.0, 30.0).expect("finite coefficients");
    let t = tail_sum(&far, BoundaryCondition::DD, 0, 2).expect("direct route");
    println!(
        "\nβ = 30 puts w = {} outside the DD series radius π² ≈ {:.4};",
        far.w(),
        std::f64::consts::PI.powi(2)
    );
    println!(
        "tail_sum falls back to the direct route alone: Z̃_0⁺(2) = {:.15}",
        t.value
    );
}
