//! Families of strings that share a spectrum.
//!
//! Two constructions produce nonuniform densities whose Dirichlet spectrum
//! equals the uniform string's:
//!
//! 1. the borg family Σ(x) = (1+α)²/(1+α(x+1/2))⁴ on a = 1 — for every
//!    admissible α the DD sum rules equal the uniform values
//!    Z(1..4) = {1/6, 1/90, 1/945, 1/9450};
//!
//! 2. the Möbius ("gottlieb") reparametrization of any base density — it
//!    preserves the optical length ∫√Σ and the DD spectrum while visibly
//!    reshaping Σ.
//!
//! Both are detected here purely through sum rules: no eigenvalue is ever
//! computed.  A sharper fingerprint of the borg family is its reversal
//! symmetry: reading Σ right-to-left maps α ↦ −α/(1+α), so e.g. α = 1 and
//! α = −1/2 are literally the same string reflected — every boundary-
//! symmetric quantity (NN, PP traces) must coincide on that orbit.

use stringzeta::density::DensityProfile;
use stringzeta::greens::BoundaryCondition;
use stringzeta::sumrules::{zeta_kernel_trace, zeta_one, QuadratureConfig};

fn main() {
    let cfg = QuadratureConfig::default();
    let uniform = [1.0 / 6.0, 1.0 / 90.0, 1.0 / 945.0, 1.0 / 9450.0];

    println!("borg family: DD sum rules are α-independent\n");
    println!("{:>6}  {:>14}  {:>14}  {:>14}  {:>14}", "alpha", "Z(1)", "Z(2)", "Z(3)", "Z(4)");
    print!("{:>6}", "exact");
    for u in uniform {
        print!("  {u:>14.12}");
    }
    println!();
    for &alpha in &[-0.5, 0.5, 2.0, 5.0] {
        let profile = DensityProfile::borg(alpha).expect("alpha > -1");
        let table = zeta_kernel_trace(&profile, BoundaryCondition::DD, 4, &cfg).expect("kernel");
        print!("{alpha:>6}");
        for s in 1..=4u32 {
            print!("  {:>14.12}", table.value(s).expect("order present"));
        }
        println!();
    }

    println!("\ngottlieb transform of horgan-chan: Z^DD(1) across the Möbius parameter\n");
    let hc = DensityProfile::horgan_chan();
    let base = zeta_one(&hc, BoundaryCondition::DD).expect("quadrature");
    println!("{:>6}  {:>18}  {:>9}  (base {base:.15})", "alpha", "Z(1)", "|diff|");
    for &alpha in &[-0.5, 0.0, 1.0, 3.0] {
        let transformed =
            DensityProfile::gottlieb(DensityProfile::horgan_chan(), alpha).expect("admissible");
        let v = zeta_one(&transformed, BoundaryCondition::DD).expect("quadrature");
        println!("{alpha:>6}  {v:>18.15}  {:>9.1e}", (v - base).abs());
    }

    println!("\nreversal orbit α ↔ −α/(1+α): boundary-symmetric traces coincide\n");
    for &(a1, a2) in &[(1.0, -0.5), (2.0, -2.0 / 3.0)] {
        let p1 = DensityProfile::borg(a1).expect("alpha > -1");
        let p2 = DensityProfile::borg(a2).expect("alpha > -1");
        for bc in [BoundaryCondition::NN, BoundaryCondition::PP] {
            let v1 = zeta_one(&p1, bc).expect("quadrature");
            let v2 = zeta_one(&p2, bc).expect("quadrature");
            println!(
                "  α = {a1:>5}, {b}: {v1:.15}    α = {a2:>8.5}, {b}: {v2:.15}    |diff| {d:.1e}",
                b = bc.name(),
                d = (v1 - v2).abs()
            );
        }
    }
    println!("\n(DN and ND swap under reversal instead of matching — the ends trade places)");
}
