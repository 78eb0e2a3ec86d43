//! Exact first sum rules against quadrature.
//!
//! For a string −ψ″ = E Σ(x) ψ on [−a/2, a/2], the first spectral sum rule
//!
//!   Z(1) = Σₙ 1/Eₙ = ∫ Σ(x) G(x, x) dx
//!
//! is a single integral over the Green's-function diagonal, and for the
//! rational densities Σ(x) = (1+α)²/(1+α(x+1/2))⁴ ("borg" family, a = 1)
//! every boundary condition has an elementary closed form:
//!
//!   DD:  1/6                          NN:  (α(2α+3)+3)/(18(α+1))
//!   DN:  (α+3)/(6(α+1))               ND:  (2α+3)/6
//!   PP:  (α(α+3)+3)/(36(α+1))
//!
//! The DD value is α-independent — these strings are all isospectral to the
//! uniform one under Dirichlet ends.  For NN and PP the closed forms are
//! regularized-kernel traces: the zero mode is projected out of the Green's
//! function, but the flat direction it leaves behind is weighted by √Σ, so
//! the trace exceeds the true spectral sum Σ_{Eₖ≠0} 1/Eₖ by a computable
//! defect (see the `spectrum_oracle` example).
//!
//! This example evaluates the quadrature route and the closed forms side by
//! side, then prints the log-polynomial sum rules of the "horgan-chan"
//! density Σ = 9/(12x+10), whose Z(s) are polynomials in ln 2 with rational
//! coefficients — e.g. Z(1) = 5 ln 2 / 8 − 2/3.

use stringzeta::density::DensityProfile;
use stringzeta::fixtures;
use stringzeta::greens::ALL_BOUNDARY_CONDITIONS;
use stringzeta::sumrules::zeta_one;

fn main() {
    println!("Z(1) for the borg family: quadrature vs closed form\n");
    println!("{:>6}  {:>4}  {:>18}  {:>18}  {:>9}", "alpha", "bc", "quadrature", "closed form", "|diff|");
    for &alpha in &[-0.5, 0.5, 2.0, 10.0] {
        let profile = DensityProfile::borg(alpha).expect("alpha > -1");
        for bc in ALL_BOUNDARY_CONDITIONS {
            let q = zeta_one(&profile, bc).expect("quadrature");
            let c = fixtures::borg_zeta_one(alpha, bc).expect("closed form");
            println!(
                "{alpha:>6}  {:>4}  {q:>18.15}  {c:>18.15}  {:>9.1e}",
                bc.name(),
                (q - c).abs()
            );
        }
        println!();
    }

    println!("horgan-chan DD sum rules: Z(s) as polynomials in ln 2\n");
    println!("{:>3}  {:>22}  {:>22}  {:>9}", "s", "quadrature Z(1) route", "log-polynomial", "|diff|");
    let hc = DensityProfile::horgan_chan();
    let q1 = zeta_one(&hc, stringzeta::greens::BoundaryCondition::DD).expect("quadrature");
    let c1 = fixtures::horgan_chan_zeta(1).expect("fixture");
    println!("{:>3}  {q1:>22.16}  {c1:>22.16}  {:>9.1e}", 1, (q1 - c1).abs());
    for s in 2..=9u32 {
        let c = fixtures::horgan_chan_zeta(s).expect("fixture");
        println!("{s:>3}  {:>22}  {c:>22.16}", "");
    }
    println!("\n(orders 2..9 come from the diagram and kernel routes; see");
    println!(" the simplex_sum_rules and kernel_sum_rules examples)");
}
