//! Large-order eigenvalue asymptotics and exact spectral tails.
//!
//! For a string with smooth density Σ(x) on [-a/2, a/2], the high modes obey
//! a two-term law
//!
//! ```text
//!     E_n  ≈  α ε_n + β,
//! ```
//!
//! where ε_n is the eigenvalue of the *homogeneous* string with the same
//! length and boundary conditions, and
//!
//! ```text
//!     α = a² / σ(a/2)²,        β = (1/σ(a/2)) ∫ (4 Σ Σ″ − 5 Σ′²) / (16 Σ^{5/2}) dx,
//! ```
//!
//! with σ(x) = ∫_{-a/2}^x √Σ the optical length.  The leading term is the
//! classical Weyl/WKB rescaling by total optical length; β is the constant
//! next-order shift produced by the Liouville transform to a Schrödinger
//! problem (the n→∞ limit of the first-order perturbation shift, see
//! [`first_order_shift`]'s test).
//!
//! # Tails
//!
//! Sum-rule pipelines need the *tail* of a zeta sum under the asymptotic law:
//!
//! ```text
//!     Z̃_n⁺(s) = Σ_{j > n} (α ε_j + β)^{-s}.
//! ```
//!
//! Because ε_j is an explicit quadratic in j, these tails have closed forms.
//! With w = a²β/α = σ(a/2)²·β and the building blocks
//!
//! ```text
//!     C(w) = coth(√w)/√w − 1/w = Σ_{j≥1} 2 (−1)^{j−1} ζ(2j) π^{−2j} w^{j−1}
//!     T(w) = tanh(√w)/√w       = Σ_{j≥1} 2 (−1)^{j−1} (4/π²)^j λ(2j) w^{j−1}
//! ```
//!
//! (λ(2j) = (1 − 4^{-j}) ζ(2j) is the even Dirichlet lambda), repeated
//! differentiation in w gives, for m = s−1,
//!
//! ```text
//!     Σ_{k≥1} (k²π² + w)^{-(m+1)}          = C_m(w)/2
//!     Σ_{k≥1} ((2k−1)²π²/4 + w)^{-(m+1)}   = T_m(w)/2
//!     C_m(w) = Σ_{j≥m+1} 2 (−1)^{j−1−m} ζ(2j) π^{−2j}       C(j−1,m) w^{j−1−m}
//!     T_m(w) = Σ_{j≥m+1} 2 (−1)^{j−1−m} (4/π²)^j λ(2j) C(j−1,m) w^{j−1−m}
//! ```
//!
//! so the full tails (n = 0) are
//!
//! ```text
//!     DD, NN:  (a²/α)^s · C_{s−1}(w)/2
//!     DN, ND:  (a²/α)^s · T_{s−1}(w)/2
//!     PP:      (a²/4α)^s · C_{s−1}(w/4)          (each level doubly degenerate)
//! ```
//!
//! and Z̃_n⁺(s) subtracts the first n explicit terms.  The series converge for
//! |w| < π² (C) and |w| < π²/4 (T); they are evaluated in double-double
//! precision because deep extrapolation tables consume tails far below 1e-16.
//!
//! A second, independent route sums the tail directly term by term and closes
//! the remainder with an Euler–Maclaurin expansion.  [`tail_sum`] cross-checks
//! the two and reports [`Error::TailInconsistency`] if they disagree, so a
//! defect in either derivation cannot slip through silently.

use serde::Serialize;
use twofloat::TwoFloat;

use crate::dd::{self, dd, dd_div, dd_recip};
use crate::density::DensityProfile;
use crate::error::{Error, Result};
use crate::greens::BoundaryCondition;
use crate::quadrature;

/// Coefficients of the two-term asymptotic law `E_n ≈ α ε_n + β`.
///
/// `a` is the string length the law refers to (the homogeneous comparison
/// eigenvalues ε_n live on [-a/2, a/2]).  Everything downstream depends on a
/// and α only through the combination a²/α = σ(a/2)², so for hand-built
/// coefficients `a = 1` is the natural choice.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct AsymptoticCoefficients {
    pub alpha: f64,
    pub beta: f64,
    pub a: f64,
}

impl AsymptoticCoefficients {
    /// Coefficients for a unit-length string.
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        Self::with_length(alpha, beta, 1.0)
    }

    /// Coefficients for a string of length `a`.
    pub fn with_length(alpha: f64, beta: f64, a: f64) -> Result<Self> {
        if !(alpha > 0.0) || !alpha.is_finite() {
            return Err(Error::Parameter(format!(
                "asymptotic coefficient alpha must be positive and finite, got {alpha}"
            )));
        }
        if !beta.is_finite() {
            return Err(Error::Parameter(format!(
                "asymptotic coefficient beta must be finite, got {beta}"
            )));
        }
        if !(a > 0.0) || !a.is_finite() {
            return Err(Error::Parameter(format!(
                "string length must be positive and finite, got {a}"
            )));
        }
        Ok(Self { alpha, beta, a })
    }

    /// σ(a/2)² = a²/α, the squared total optical length.
    pub fn sigma_total_sq(&self) -> f64 {
        self.a * self.a / self.alpha
    }

    /// w = σ(a/2)²·β, the natural argument of the tail series.
    pub fn w(&self) -> f64 {
        self.sigma_total_sq() * self.beta
    }
}

/// Compute the asymptotic coefficients (α, β) of a density profile.
///
/// α comes from the total optical length; β integrates the Liouville
/// potential (4ΣΣ″ − 5Σ′²)/(16Σ^{5/2}) over the string, with quadrature
/// panels aligned to the profile's breakpoints.
pub fn asym_coeffs(profile: &DensityProfile) -> Result<AsymptoticCoefficients> {
    let a = profile.length();
    let half = profile.half();
    let sigma_tot = profile.total_sigma();
    if !(sigma_tot > 0.0) || !sigma_tot.is_finite() {
        return Err(Error::Numerical(format!(
            "total optical length must be positive, got {sigma_tot}"
        )));
    }
    let alpha = a * a / (sigma_tot * sigma_tot);

    let edges = profile.panel_edges(-half, half, 64);
    let integral = quadrature::integrate_edges(
        |x| {
            let s = profile.eval_raw(x);
            let s1 = profile.d1_raw(x);
            let s2 = profile.d2_raw(x);
            (4.0 * s * s2 - 5.0 * s1 * s1) / (16.0 * s.powf(2.5))
        },
        &edges,
        12,
    );
    let beta = integral / sigma_tot;
    if !beta.is_finite() {
        return Err(Error::Numerical(
            "asymptotic beta integral did not evaluate to a finite value".into(),
        ));
    }
    AsymptoticCoefficients::with_length(alpha, beta, a)
}

/// Eigenvalue ε_n of the homogeneous string (Σ ≡ 1) of length `a`, counted
/// from n = 1 in increasing order with multiplicity.
///
/// * DD, NN:  n²π²/a²      (NN counts the nonzero spectrum)
/// * DN, ND:  (2n−1)²π²/(4a²)
/// * PP:      4⌈n/2⌉²π²/a²  (each level appears twice)
pub fn homogeneous_eigenvalue(bc: BoundaryCondition, a: f64, n: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::Parameter(
            "homogeneous eigenvalues are indexed from n = 1".into(),
        ));
    }
    if !(a > 0.0) || !a.is_finite() {
        return Err(Error::Parameter(format!(
            "string length must be positive and finite, got {a}"
        )));
    }
    let pi = std::f64::consts::PI;
    let val = match bc {
        BoundaryCondition::DD | BoundaryCondition::NN => {
            let k = n as f64;
            (k * pi / a).powi(2)
        }
        BoundaryCondition::DN | BoundaryCondition::ND => {
            let k = (2 * n - 1) as f64;
            (k * pi / (2.0 * a)).powi(2)
        }
        BoundaryCondition::PP => {
            let k = n.div_ceil(2) as f64;
            (2.0 * k * pi / a).powi(2)
        }
    };
    Ok(val)
}

/// Double-double version of [`homogeneous_eigenvalue`] (no validation; the
/// caller has already checked `n >= 1`).
fn homogeneous_eigenvalue_dd(bc: BoundaryCondition, a: TwoFloat, n: usize) -> TwoFloat {
    let pi = dd::pi();
    match bc {
        BoundaryCondition::DD | BoundaryCondition::NN => {
            let num = dd(n as f64) * pi;
            dd_div(num * num, a * a)
        }
        BoundaryCondition::DN | BoundaryCondition::ND => {
            let num = dd((2 * n - 1) as f64) * pi;
            dd_div(num * num, a * a * 4.0)
        }
        BoundaryCondition::PP => {
            let num = dd((2 * n.div_ceil(2)) as f64) * pi;
            dd_div(num * num, a * a)
        }
    }
}

/// A computed tail `Z̃_n⁺(s) = Σ_{j>n} (α ε_j + β)^{-s}`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct TailSum {
    pub bc: BoundaryCondition,
    pub n_excluded: usize,
    pub s: u32,
    pub value: f64,
}

// Relative tolerance demanded of the double-double tail series before the
// table of ζ(2j) values runs out.
const SERIES_TOL_DD: f64 = 1e-33;

/// C_m(w) as a power series in w, in double-double arithmetic.
///
/// C_m(w) = Σ_{j≥m+1} 2 (−1)^{j−1−m} ζ(2j) π^{−2j} binom(j−1,m) w^{j−1−m},
/// so that Σ_{k≥1} (k²π² + w)^{-(m+1)} = C_m(w)/2.  Converges for |w| < π².
fn c_series_dd(m: usize, w: TwoFloat, tol: f64) -> Result<TwoFloat> {
    series_dd(m, w, tol, false)
}

/// T_m(w), the odd-index analogue built from λ(2j) = (1−4^{-j})ζ(2j):
/// Σ_{k≥1} ((2k−1)²π²/4 + w)^{-(m+1)} = T_m(w)/2.  Converges for |w| < π²/4.
fn t_series_dd(m: usize, w: TwoFloat, tol: f64) -> Result<TwoFloat> {
    series_dd(m, w, tol, true)
}

fn series_dd(m: usize, w: TwoFloat, tol: f64, odd: bool) -> Result<TwoFloat> {
    let inv_pi2 = dd_recip(dd::pi() * dd::pi());
    // Base of the j-th coefficient: π^{−2j} for C, (4/π²)^j = 4^j π^{−2j} for T.
    let step = if odd { inv_pi2 * 4.0 } else { inv_pi2 };
    let mut base = step.powi((m + 1) as i32);
    let mut wp = dd(1.0); // w^{j−1−m}
    let mut binom = 1.0f64; // binom(j−1, m), exact small integer
    let mut sign = 1.0f64; // (−1)^{j−1−m}
    let mut sum = dd(0.0);
    for j in (m + 1)..=dd::ZETA_EVEN_MAX {
        let zl = if odd { dd::lambda_even(j) } else { dd::zeta_even(j) };
        let term = zl * base * wp * (2.0 * sign * binom);
        sum += term;
        if term.abs().hi() <= tol * sum.abs().hi().max(f64::MIN_POSITIVE) {
            return Ok(sum);
        }
        base *= step;
        wp *= w;
        sign = -sign;
        // binom(j, m) = binom(j−1, m) · j / (j − m): exact integer steps.
        binom = binom * j as f64 / (j - m) as f64;
    }
    Err(Error::Numerical(format!(
        "tail series for m = {m} did not converge at w = {}; |w| too close to the \
         radius of convergence",
        w.hi()
    )))
}

/// Full tail Z̃_0⁺(s) in double-double arithmetic.
fn full_tail_dd(
    bc: BoundaryCondition,
    s: u32,
    alpha: TwoFloat,
    beta: TwoFloat,
    a: TwoFloat,
) -> Result<TwoFloat> {
    let sig2 = dd_div(a * a, alpha); // σ(a/2)²
    let w = sig2 * beta;
    let m = (s - 1) as usize;
    let val = match bc {
        BoundaryCondition::DD | BoundaryCondition::NN => {
            sig2.powi(s as i32) * c_series_dd(m, w, SERIES_TOL_DD)? * 0.5
        }
        BoundaryCondition::DN | BoundaryCondition::ND => {
            sig2.powi(s as i32) * t_series_dd(m, w, SERIES_TOL_DD)? * 0.5
        }
        BoundaryCondition::PP => {
            // Levels 4k²π²/a² each counted twice; the degeneracy cancels the 1/2.
            (sig2 * 0.25).powi(s as i32) * c_series_dd(m, w * 0.25, SERIES_TOL_DD)?
        }
    };
    Ok(val)
}

fn check_order(s: u32) -> Result<()> {
    if s == 0 {
        return Err(Error::Parameter(
            "tail order s must be a positive integer (s = 1 is the first convergent sum)".into(),
        ));
    }
    Ok(())
}

/// Tail `Z̃_n⁺(s)` in double-double arithmetic via the closed-form series.
///
/// Errors with [`Error::Parameter`] if the asymptotic law predicts a
/// non-positive eigenvalue anywhere in the tail (α ε_{n+1} + β ≤ 0), and with
/// [`Error::Numerical`] if |w| sits outside the series' radius of
/// convergence — callers in that regime should use the direct
/// Euler–Maclaurin route instead.
pub fn tail_sum_dd(
    alpha: TwoFloat,
    beta: TwoFloat,
    a: TwoFloat,
    bc: BoundaryCondition,
    n_excluded: usize,
    s: u32,
) -> Result<TwoFloat> {
    check_order(s)?;
    if alpha.hi() <= 0.0 {
        return Err(Error::Parameter("asymptotic alpha must be positive".into()));
    }
    // Smallest eigenvalue actually present in the tail must be positive.
    let first = alpha * homogeneous_eigenvalue_dd(bc, a, n_excluded + 1) + beta;
    if first.hi() <= 0.0 {
        return Err(Error::Parameter(format!(
            "asymptotic law gives a non-positive eigenvalue α ε_{} + β = {} in the tail",
            n_excluded + 1,
            first.hi()
        )));
    }
    let mut value = full_tail_dd(bc, s, alpha, beta, a)?;
    for j in 1..=n_excluded {
        let e = alpha * homogeneous_eigenvalue_dd(bc, a, j) + beta;
        if e.hi() <= 0.0 {
            return Err(Error::Parameter(format!(
                "asymptotic law gives a non-positive eigenvalue α ε_{j} + β = {} among the \
                 excluded terms",
                e.hi()
            )));
        }
        value -= dd_recip(e.powi(s as i32));
    }
    Ok(value)
}

/// Direct evaluation of `Z̃_n⁺(s)`: explicit term-by-term summation closed
/// with a fifth-order Euler–Maclaurin remainder.  Works for any β for which
/// the tail eigenvalues are positive — including far outside the closed-form
/// series' radius — at ordinary `f64` accuracy (~1e-14 relative).
pub fn tail_sum_direct(
    coeffs: &AsymptoticCoefficients,
    bc: BoundaryCondition,
    n_excluded: usize,
    s: u32,
) -> Result<f64> {
    check_order(s)?;
    let first = coeffs.alpha * homogeneous_eigenvalue(bc, coeffs.a, n_excluded + 1)? + coeffs.beta;
    if first <= 0.0 {
        return Err(Error::Parameter(format!(
            "asymptotic law gives a non-positive eigenvalue α ε_{} + β = {first} in the tail",
            n_excluded + 1
        )));
    }
    let pi = std::f64::consts::PI;
    let a = coeffs.a;
    let alpha = coeffs.alpha;
    let beta = coeffs.beta;
    let n = n_excluded;
    let value = match bc {
        BoundaryCondition::DD | BoundaryCondition::NN => {
            // αε_j + β = c j² + β over j > n.
            let c = alpha * (pi / a).powi(2);
            em_sum(c, beta, s, (n + 1) as f64, 1.0)?
        }
        BoundaryCondition::DN | BoundaryCondition::ND => {
            // αε_j + β = c u² + β with u = 2j−1 odd: step 2 from u = 2n+1.
            let c = alpha * (pi / (2.0 * a)).powi(2);
            em_sum(c, beta, s, (2 * (n + 1) - 1) as f64, 2.0)?
        }
        BoundaryCondition::PP => {
            // Levels are pairs at c k², k = 1, 2, …  n excluded levels cover
            // n/2 whole pairs plus, for odd n, one member of the next pair.
            let c = alpha * (2.0 * pi / a).powi(2);
            if n % 2 == 0 {
                2.0 * em_sum(c, beta, s, (n / 2 + 1) as f64, 1.0)?
            } else {
                let k0 = (n + 1) / 2;
                let single = (c * (k0 * k0) as f64 + beta).powi(-(s as i32));
                single + 2.0 * em_sum(c, beta, s, (k0 + 1) as f64, 1.0)?
            }
        }
    };
    if !value.is_finite() {
        return Err(Error::Numerical(
            "direct tail summation produced a non-finite value".into(),
        ));
    }
    Ok(value)
}

/// Σ_{l≥0} f(u₀ + δl) with f(u) = (c u² + β)^{−s}, by explicit summation of
/// the first terms and an Euler–Maclaurin closure
///
/// ```text
///   Σ_{l≥0} f(U+δl) = (1/δ)∫_U^∞ f + f(U)/2 − δf′(U)/12 + δ³f‴(U)/720 − δ⁵f⁽⁵⁾(U)/30240 + …
/// ```
///
/// truncated where shown; U is pushed far enough out that the first omitted
/// term is negligible at f64 accuracy.
fn em_sum(c: f64, beta: f64, s: u32, u0: f64, delta: f64) -> Result<f64> {
    if !(c > 0.0) {
        return Err(Error::Parameter(format!(
            "quadratic growth coefficient must be positive, got {c}"
        )));
    }
    // Explicit terms until the E-M correction series is safely asymptotic:
    // both the curvature scale s·δ/U and the integral's expansion parameter
    // |β|/(cU²) must be small.
    let mut explicit = 64usize;
    while {
        let u_tail = u0 + delta * explicit as f64;
        (beta.abs() / (c * u_tail * u_tail) > 0.2 || s as f64 * delta / u_tail > 0.3)
            && explicit < 4_000_000
    } {
        explicit *= 2;
    }
    let f = |u: f64| (c * u * u + beta).powi(-(s as i32));
    let mut head = 0.0f64;
    // Sum smallest-first so the partial sums accumulate without cancellation.
    for l in (0..explicit).rev() {
        head += f(u0 + delta * l as f64);
    }
    let u = u0 + delta * explicit as f64;

    // ∫_U^∞ (cu²+β)^{-s} du = c^{-s} Σ_i binom(−s,i) (β/c)^i U^{1−2s−2i}/(2s+2i−1).
    let sf = s as f64;
    let ratio = beta / (c * u * u);
    let mut bin = 1.0f64; // binom(−s, i)
    let mut rat_pow = 1.0f64; // ratio^i, folded with U^{1−2s} below
    let lead = c.powi(-(s as i32)) * u.powi(1 - 2 * s as i32);
    let mut integral = 0.0f64;
    let mut converged = false;
    for i in 0..500 {
        let term = bin * rat_pow * lead / (2.0 * sf + 2.0 * i as f64 - 1.0);
        integral += term;
        if term.abs() <= 1e-18 * integral.abs().max(f64::MIN_POSITIVE) {
            converged = true;
            break;
        }
        bin *= (-sf - i as f64) / (i as f64 + 1.0);
        rat_pow *= ratio;
    }
    if !converged {
        return Err(Error::Numerical(
            "tail integral expansion did not converge".into(),
        ));
    }

    // Odd derivatives of f at U (P = cU² + β):
    //   f′   = −2scU P^{−s−1}
    //   f‴   = 12c²s(s+1)U P^{−s−2} − 8c³s(s+1)(s+2)U³ P^{−s−3}
    //   f⁽⁵⁾ = −120c³s(s+1)(s+2)U P^{−s−3} + 160c⁴s(s+1)(s+2)(s+3)U³ P^{−s−4}
    //          − 32c⁵s(s+1)(s+2)(s+3)(s+4)U⁵ P^{−s−5}
    let p = c * u * u + beta;
    let pk = |k: i32| p.powi(-(s as i32) - k);
    let s1 = sf * (sf + 1.0);
    let s2 = s1 * (sf + 2.0);
    let s3 = s2 * (sf + 3.0);
    let s4 = s3 * (sf + 4.0);
    let f1 = -2.0 * sf * c * u * pk(1);
    let f3 = 12.0 * c * c * s1 * u * pk(2) - 8.0 * c.powi(3) * s2 * u.powi(3) * pk(3);
    let f5 = -120.0 * c.powi(3) * s2 * u * pk(3) + 160.0 * c.powi(4) * s3 * u.powi(3) * pk(4)
        - 32.0 * c.powi(5) * s4 * u.powi(5) * pk(5);

    let em = integral / delta + f(u) / 2.0 - delta * f1 / 12.0 + delta.powi(3) * f3 / 720.0
        - delta.powi(5) * f5 / 30240.0;
    Ok(head + em)
}

// Fraction of the series' radius of convergence within which the
// double-double route is trusted to converge well before the ζ table ends.
const SERIES_SAFE_FRACTION: f64 = 0.45;

fn series_radius(bc: BoundaryCondition) -> f64 {
    let pi2 = std::f64::consts::PI * std::f64::consts::PI;
    match bc {
        BoundaryCondition::DD | BoundaryCondition::NN => pi2,
        BoundaryCondition::DN | BoundaryCondition::ND => pi2 / 4.0,
        // The PP series runs in w/4, so the radius in w is 4π².
        BoundaryCondition::PP => 4.0 * pi2,
    }
}

/// Tail `Z̃_n⁺(s) = Σ_{j>n} (α ε_j + β)^{-s}` of the asymptotic spectrum.
///
/// Uses the closed-form series route (in double-double precision) whenever w
/// is comfortably inside its radius of convergence, cross-checked against the
/// direct Euler–Maclaurin summation; outside the radius it falls back to the
/// direct route alone.  A disagreement between the two independent routes is
/// reported as [`Error::TailInconsistency`].
pub fn tail_sum(
    coeffs: &AsymptoticCoefficients,
    bc: BoundaryCondition,
    n_excluded: usize,
    s: u32,
) -> Result<TailSum> {
    check_order(s)?;
    let w = coeffs.w();
    let direct = tail_sum_direct(coeffs, bc, n_excluded, s)?;
    let value = if w.abs() < SERIES_SAFE_FRACTION * series_radius(bc) {
        let series = tail_sum_dd(
            dd(coeffs.alpha),
            dd(coeffs.beta),
            dd(coeffs.a),
            bc,
            n_excluded,
            s,
        )?
        .hi();
        let scale = series.abs().max(direct.abs()).max(f64::MIN_POSITIVE);
        if (series - direct).abs() > 1e-8 * scale {
            return Err(Error::TailInconsistency(format!(
                "closed-form and direct tail sums disagree for {bc} n={n_excluded} s={s}: \
                 series {series:.16e} vs direct {direct:.16e}"
            )));
        }
        series
    } else {
        direct
    };
    Ok(TailSum {
        bc,
        n_excluded,
        s,
        value,
    })
}

/// First-order perturbation shift E⁽¹⁾_n of the n-th Dirichlet mode under the
/// Liouville transform:
///
/// ```text
///   E⁽¹⁾_n = (2/σ(a/2)) ∫ sin²(nπ σ(x)/σ(a/2)) · (4ΣΣ″ − 5Σ′²)/(16Σ^{5/2}) dx.
/// ```
///
/// As n → ∞ the sin² averages to 1/2 and the shift tends to β; the inline
/// tests pin that approach.  Exposed for diagnostics only.
pub fn first_order_shift(profile: &DensityProfile, n: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::Parameter("mode index must be at least 1".into()));
    }
    let half = profile.half();
    let sigma_tot = profile.total_sigma();
    let min_panels = 32.max(8 * n);
    let edges = profile.panel_edges(-half, half, min_panels);
    let integral = quadrature::integrate_edges(
        |x| {
            let s = profile.eval_raw(x);
            let s1 = profile.d1_raw(x);
            let s2 = profile.d2_raw(x);
            let q = (4.0 * s * s2 - 5.0 * s1 * s1) / (16.0 * s.powf(2.5));
            let phase = n as f64 * std::f64::consts::PI * profile.sigma(x).unwrap_or(0.0)
                / sigma_tot;
            q * phase.sin().powi(2)
        },
        &edges,
        12,
    );
    Ok(2.0 * integral / sigma_tot)
}

/// Asymptotic coefficients with the boundary phase corrections for the given
/// boundary condition folded into β.
///
/// The bulk coefficient β produced by [`asym_coeffs`] is the mean of the
/// Liouville potential, which is the complete second term only when both ends
/// are clamped.  A free (Neumann) end turns into a Robin condition
/// φ′ = h φ in Liouville coordinates, with
///
/// ```text
///   h = Σ′/(4 Σ^{3/2})            (evaluated at that end),
/// ```
///
/// and each such end shifts every eigenvalue by an extra ∓2h/σ(a/2)
/// (− at the right end, + at the left).  Concretely,
///
/// ```text
///   β_DD = β,                      β_NN = β + 2(h_L − h_R)/σ_tot,
///   β_DN = β − 2 h_R/σ_tot,        β_ND = β + 2 h_L/σ_tot,
/// ```
///
/// and β_PP = β, which for the periodic chain is only meaningful when the
/// density closes smoothly across the seam (Σ and Σ′ matching at ±a/2);
/// a seam jump scatters the travelling waves and splits the pairs by O(1),
/// which no two-term law captures.
pub fn bc_corrected_coeffs(
    profile: &DensityProfile,
    bc: BoundaryCondition,
) -> Result<AsymptoticCoefficients> {
    let base = asym_coeffs(profile)?;
    let half = profile.half();
    let sigma_tot = profile.total_sigma();
    let h_at = |x: f64| -> f64 {
        let s = profile.eval_raw(x);
        profile.d1_raw(x) / (4.0 * s.powf(1.5))
    };
    let (h_l, h_r) = (h_at(-half), h_at(half));
    let shift = match bc {
        BoundaryCondition::DD | BoundaryCondition::PP => 0.0,
        BoundaryCondition::NN => 2.0 * (h_l - h_r) / sigma_tot,
        BoundaryCondition::DN => -2.0 * h_r / sigma_tot,
        BoundaryCondition::ND => 2.0 * h_l / sigma_tot,
    };
    AsymptoticCoefficients::with_length(base.alpha, base.beta + shift, base.a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::greens::ALL_BOUNDARY_CONDITIONS;

    fn hc() -> DensityProfile {
        DensityProfile::horgan_chan()
    }

    #[test]
    fn coefficients_of_reference_profiles() {
        // Homogeneous string: α = 1, β = 0 exactly.
        let u = asym_coeffs(&DensityProfile::uniform()).unwrap();
        assert!((u.alpha - 1.0).abs() < 1e-14);
        assert!(u.beta.abs() < 1e-14);

        // The Borg family has β ≡ 0 pointwise: 4ΣΣ″ = 5Σ′² identically.
        for &al in &[-0.5, 1.0, 5.0] {
            let b = asym_coeffs(&DensityProfile::borg(al).unwrap()).unwrap();
            assert!((b.alpha - 1.0).abs() < 1e-12, "borg alpha at {al}");
            assert!(b.beta.abs() < 1e-11, "borg beta at {al}: {}", b.beta);
        }

        // Σ = 9/(12x+10): σ(1/2) = 1 and the Liouville integrand reduces to
        // 9(12x+10)^{-3/2}, integrating to exactly 3/8.
        let c = asym_coeffs(&hc()).unwrap();
        assert!((c.alpha - 1.0).abs() < 1e-13, "alpha = {}", c.alpha);
        assert!((c.beta - 0.375).abs() < 1e-13, "beta = {}", c.beta);
    }

    #[test]
    fn homogeneous_spectra() {
        let pi2 = std::f64::consts::PI.powi(2);
        assert!((homogeneous_eigenvalue(BoundaryCondition::DD, 1.0, 1).unwrap() - pi2).abs() < 1e-12);
        assert!((homogeneous_eigenvalue(BoundaryCondition::NN, 2.0, 3).unwrap() - 2.25 * pi2).abs() < 1e-12);
        assert!(
            (homogeneous_eigenvalue(BoundaryCondition::DN, 1.0, 2).unwrap() - 2.25 * pi2).abs() < 1e-12
        );
        assert!(
            (homogeneous_eigenvalue(BoundaryCondition::ND, 1.0, 1).unwrap() - 0.25 * pi2).abs() < 1e-12
        );
        // Periodic levels come in degenerate pairs 4k²π²/a².
        let p1 = homogeneous_eigenvalue(BoundaryCondition::PP, 1.0, 1).unwrap();
        let p2 = homogeneous_eigenvalue(BoundaryCondition::PP, 1.0, 2).unwrap();
        let p3 = homogeneous_eigenvalue(BoundaryCondition::PP, 1.0, 3).unwrap();
        assert!((p1 - 4.0 * pi2).abs() < 1e-12);
        assert_eq!(p1, p2);
        assert!((p3 - 16.0 * pi2).abs() < 1e-12);

        assert!(homogeneous_eigenvalue(BoundaryCondition::DD, 1.0, 0).is_err());
        assert!(homogeneous_eigenvalue(BoundaryCondition::DD, -1.0, 1).is_err());
    }

    #[test]
    fn uniform_tail_is_exact_zeta_remainder() {
        // α = 1, β = 0, a = 1: the DD tail with one mode removed is
        // ζ(2)/π² − 1/π² = 1/6 − 1/π².
        let coeffs = AsymptoticCoefficients::new(1.0, 0.0).unwrap();
        let t = tail_sum(&coeffs, BoundaryCondition::DD, 1, 1).unwrap();
        let exact = 1.0 / 6.0 - 1.0 / std::f64::consts::PI.powi(2);
        assert!((t.value - exact).abs() < 1e-15, "tail {} vs {exact}", t.value);

        // s = 2, no exclusions: ζ(4)/π⁴ = 1/90.
        let t2 = tail_sum(&coeffs, BoundaryCondition::DD, 0, 2).unwrap();
        assert!((t2.value - 1.0 / 90.0).abs() < 1e-16);

        // Periodic, s = 1: Σ 2/(4k²π²) = 1/12.
        let tp = tail_sum(&coeffs, BoundaryCondition::PP, 0, 1).unwrap();
        assert!((tp.value - 1.0 / 12.0).abs() < 1e-15);

        // Mixed, s = 1: Σ 4/((2k−1)²π²) = 1/2 (since λ(2) = π²/8).
        let tm = tail_sum(&coeffs, BoundaryCondition::DN, 0, 1).unwrap();
        assert!((tm.value - 0.5).abs() < 1e-15);
    }

    #[test]
    fn closed_form_matches_printed_coth_expression() {
        // Full DD tail at s = 1 equals a·coth(a√(β/α))/(2√(αβ)) − 1/(2β).
        for &(alpha, beta) in &[(1.0, 0.375), (2.0, 1.0), (1.0, 0.04)] {
            let coeffs = AsymptoticCoefficients::new(alpha, beta).unwrap();
            let t = tail_sum(&coeffs, BoundaryCondition::DD, 0, 1).unwrap();
            let closed = (beta / alpha).sqrt().recip() * ((beta / alpha).sqrt()).tanh().recip()
                / (2.0 * alpha)
                - 1.0 / (2.0 * beta);
            assert!(
                (t.value - closed).abs() < 1e-13 * closed.abs(),
                "α={alpha} β={beta}: {} vs {closed}",
                t.value
            );
        }
    }

    #[test]
    fn series_and_direct_routes_agree() {
        // The two independent evaluations must agree to better than 1e-12
        // relative across boundary conditions, orders, and exclusions.
        for &(alpha, beta) in &[(1.0, 0.375), (2.0, 1.0), (1.0, 1e-6)] {
            let coeffs = AsymptoticCoefficients::new(alpha, beta).unwrap();
            for bc in ALL_BOUNDARY_CONDITIONS {
                for s in 1..=6u32 {
                    for &n in &[0usize, 1, 3, 8] {
                        let series = tail_sum_dd(dd(alpha), dd(beta), dd(1.0), bc, n, s)
                            .unwrap()
                            .hi();
                        let direct = tail_sum_direct(&coeffs, bc, n, s).unwrap();
                        let scale = series.abs().max(1e-300);
                        assert!(
                            ((series - direct) / scale).abs() < 1e-12,
                            "{bc} s={s} n={n} α={alpha} β={beta}: series {series:.17e} \
                             direct {direct:.17e}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn negative_beta_within_reach_of_series() {
        // β < 0 is fine as long as every tail eigenvalue stays positive.
        let coeffs = AsymptoticCoefficients::new(1.0, -0.8).unwrap();
        for bc in ALL_BOUNDARY_CONDITIONS {
            let series = tail_sum_dd(dd(1.0), dd(-0.8), dd(1.0), bc, 0, 2)
                .unwrap()
                .hi();
            let direct = tail_sum_direct(&coeffs, bc, 0, 2).unwrap();
            assert!(
                ((series - direct) / series).abs() < 1e-12,
                "{bc}: {series} vs {direct}"
            );
        }
        // ND ground state sits at π²/4 ≈ 2.47, so β = −3 pushes α ε₁ + β
        // negative and the tail must refuse.
        let bad = AsymptoticCoefficients::new(1.0, -3.0).unwrap();
        assert!(matches!(
            tail_sum(&bad, BoundaryCondition::ND, 0, 1),
            Err(Error::Parameter(_))
        ));
    }

    #[test]
    fn large_w_falls_back_to_direct_route() {
        // w = 80 is far outside every series radius; tail_sum must still
        // deliver via Euler–Maclaurin.  Check s = 1 against the coth closed
        // form, which is valid for all w > 0.
        let coeffs = AsymptoticCoefficients::new(1.0, 80.0).unwrap();
        let t = tail_sum(&coeffs, BoundaryCondition::DD, 0, 1).unwrap();
        let r = 80.0f64.sqrt();
        let closed = (r.tanh().recip() / r - 1.0 / 80.0) / 2.0;
        assert!(
            ((t.value - closed) / closed).abs() < 1e-13,
            "{} vs {closed}",
            t.value
        );
        // And a large *negative* β, where only the direct route applies.
        let neg = AsymptoticCoefficients::new(1.0, -60.0).unwrap();
        let tn = tail_sum(&neg, BoundaryCondition::DD, 2, 3).unwrap();
        let mut brute = 0.0;
        for j in (3..200_000u64).rev() {
            let jf = j as f64;
            brute += (jf * jf * std::f64::consts::PI.powi(2) - 60.0).powi(-3);
        }
        assert!(
            ((tn.value - brute) / brute).abs() < 1e-10,
            "{} vs {brute}",
            tn.value
        );
    }

    #[test]
    fn tails_shrink_as_modes_are_removed() {
        let coeffs = AsymptoticCoefficients::new(1.0, 0.375).unwrap();
        for bc in ALL_BOUNDARY_CONDITIONS {
            let mut prev = f64::INFINITY;
            for n in 0..6 {
                let t = tail_sum(&coeffs, bc, n, 2).unwrap().value;
                assert!(t > 0.0 && t < prev, "{bc} n={n}: {t} !< {prev}");
                prev = t;
            }
        }
    }

    #[test]
    fn first_order_shift_approaches_beta() {
        let profile = hc();
        let beta = asym_coeffs(&profile).unwrap().beta;
        let d5 = (first_order_shift(&profile, 5).unwrap() - beta).abs();
        let d20 = (first_order_shift(&profile, 20).unwrap() - beta).abs();
        let d80 = (first_order_shift(&profile, 80).unwrap() - beta).abs();
        assert!(d5 > d20 && d20 > d80, "{d5} {d20} {d80}");
        assert!(d80 < 1e-3, "shift at n=80 still {d80} from beta");
        assert!(matches!(
            first_order_shift(&profile, 0),
            Err(Error::Parameter(_))
        ));
    }

    #[test]
    fn order_zero_rejected() {
        let coeffs = AsymptoticCoefficients::new(1.0, 0.375).unwrap();
        assert!(matches!(
            tail_sum(&coeffs, BoundaryCondition::DD, 0, 0),
            Err(Error::Parameter(_))
        ));
        assert!(AsymptoticCoefficients::new(0.0, 0.1).is_err());
        assert!(AsymptoticCoefficients::new(1.0, f64::NAN).is_err());
    }

    #[test]
    fn boundary_phase_corrections() {
        // Uniform: h vanishes at both ends, every β coincides.
        let u = DensityProfile::uniform();
        for bc in ALL_BOUNDARY_CONDITIONS {
            let c = bc_corrected_coeffs(&u, bc).unwrap();
            assert!(c.beta.abs() < 1e-14, "{bc}: {}", c.beta);
        }

        // Borg(α): β = 0 in the bulk, h_L = −α/(1+α), h_R = −α, so the NN
        // correction is exactly 2α²/(1+α).  At α = 2 that is 8/3, which the
        // transformed Robin eigencondition tan k = 4k/(3k²+4) confirms:
        // E_n → n²π² + 8/3.
        for &al in &[0.5, 2.0, 4.0] {
            let b = DensityProfile::borg(al).unwrap();
            let c = bc_corrected_coeffs(&b, BoundaryCondition::NN).unwrap();
            let exact = 2.0 * al * al / (1.0 + al);
            assert!((c.beta - exact).abs() < 1e-11, "borg({al}) NN: {}", c.beta);
        }

        // Σ = 9/(12x+10): h(x) = −(12x+10)^{-1/2}, so h_L = −1/2, h_R = −1/4.
        // A tridiagonal eigensolve pins the resulting spectra:
        //   E_n^NN − n²π² → 3/8 − 1/2 = −1/8,
        //   E_n^DN − (2n−1)²π²/4 → 3/8 + 1/2 = 7/8,
        //   E_n^ND − (2n−1)²π²/4 → 3/8 − 1 = −5/8.
        let p = hc();
        let nn = bc_corrected_coeffs(&p, BoundaryCondition::NN).unwrap();
        let dn = bc_corrected_coeffs(&p, BoundaryCondition::DN).unwrap();
        let nd = bc_corrected_coeffs(&p, BoundaryCondition::ND).unwrap();
        let dd = bc_corrected_coeffs(&p, BoundaryCondition::DD).unwrap();
        assert!((nn.beta + 0.125).abs() < 1e-12, "NN: {}", nn.beta);
        assert!((dn.beta - 0.875).abs() < 1e-12, "DN: {}", dn.beta);
        assert!((nd.beta + 0.625).abs() < 1e-12, "ND: {}", nd.beta);
        assert!((dd.beta - 0.375).abs() < 1e-13, "DD: {}", dd.beta);
        assert_eq!(nn.alpha, dd.alpha);
    }
}
