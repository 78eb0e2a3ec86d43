//! Exact spectral sum rules for inhomogeneous strings.
//!
//! A string with density Σ(x) > 0 on [-a/2, a/2] vibrates according to the
//! generalized eigenproblem -ψ″(x) = E Σ(x) ψ(x) under Dirichlet, Neumann,
//! mixed, or periodic boundary conditions.  The spectral zeta function
//!
//! ```text
//! Z(s) = Σ_n E_n^{-s}
//! ```
//!
//! admits *exact* integral representations at positive integer s: writing
//! the inverse operator through the Green's function G of -d²/dx², the sum
//! rule Z(n) = Tr[(√Σ G √Σ)ⁿ] becomes an n-fold integral of a cyclic
//! product of Green's functions, which collapses onto the ordered simplex
//! x₁ > x₂ > ⋯ > xₙ as a finite sum of diagram integrals.  From a handful
//! of Z(n) values one extracts rigorous bounds and rapidly converging
//! estimates for the lowest eigenvalues — no discretization of the
//! differential operator is involved.
//!
//! Module map:
//!
//! * [`density`] — density profiles Σ(x), built-in families, σ(x), ⟨Σ⟩.
//! * [`greens`] — closed-form Green's functions for the five boundary
//!   conditions (regularized for the zero-mode cases NN and PP).
//! * [`diagrams`] — cycle diagrams of the trace expansion and prefactors.
//! * [`sumrules`] — Z(n) by three routes: diagonal closed form at n = 1,
//!   simplex-ordered diagram quadrature, and discretized-kernel traces.
//! * [`asymptotics`] — large-n eigenvalue law E_n ≈ α εₙ + β and
//!   semiclassical tail sums.
//! * [`extrapolate`] — Waring/Euler bounds, tail-corrected estimates,
//!   excited states, repeated Shanks acceleration.
//! * [`oracle`] — independent finite-difference eigensolver used for
//!   validation.
//! * [`fixtures`] — frozen exact values (closed-form sum rules, reference
//!   table digits, expansion coefficients).
//! * [`dd`] — double-double helpers for extrapolation beyond f64 roundoff.
//! * [`quadrature`] — Gauss–Legendre rules and composite panels.
//! * [`cli`] — the command-line front end.

pub mod asymptotics;
pub mod cli;
pub mod dd;
pub mod density;
pub mod diagrams;
pub mod error;
pub mod extrapolate;
pub mod fixtures;
pub mod greens;
pub mod oracle;
pub mod quadrature;
pub mod sumrules;

pub use density::DensityProfile;
pub use error::{Error, Result};
pub use greens::BoundaryCondition;
