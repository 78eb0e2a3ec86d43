//! Closed-form Green's functions of -d²/dx² on [-a/2, a/2].
//!
//! For each boundary condition the Green's function solves
//! -G''(x, y) = δ(x - y) with the appropriate end conditions.  Neumann and
//! periodic problems have a zero mode (the constant eigenfunction), so no
//! true inverse exists; there the *regularized* kernel Ḡ is used, which
//! inverts the operator on the orthogonal complement of the constant and
//! satisfies -Ḡ'' = δ(x-y) - 1/a.  All spectral sums in this crate exclude
//! the zero mode by that convention.
//!
//! Closed forms (Ḡ for NN/PP):
//!
//! | bc | G(x, y)                                   | diagonal G(x, x)  |
//! |----|-------------------------------------------|-------------------|
//! | DD | (a - 2·max)(a + 2·min)/(4a)               | a/4 - x²/a        |
//! | NN | (a² - 6a|x-y| + 6(x² + y²))/(12a)         | a/12 + x²/a       |
//! | DN | min(x, y) + a/2                           | x + a/2           |
//! | ND | -max(x, y) + a/2                          | -x + a/2          |
//! | PP | (a² - 6a|x-y| + 6(x-y)²)/(12a)            | a/12              |
//!
//! DN is Dirichlet at x = -a/2 and Neumann at x = +a/2; ND is the mirror
//! image.  The split form G(x,y) = G₋(x,y)θ(y-x) + G₊(x,y)θ(x-y) defines the
//! ordered branch G₊ used by the x-ordered simplex integrals, with
//! G₊(x, y) = G₋(y, x).

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Boundary conditions at the two ends of the string.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum BoundaryCondition {
    /// Dirichlet at both ends.
    DD,
    /// Neumann at both ends (zero mode regularized away).
    NN,
    /// Dirichlet at -a/2, Neumann at +a/2.
    DN,
    /// Neumann at -a/2, Dirichlet at +a/2.
    ND,
    /// Periodic (zero mode regularized away; all levels doubly degenerate).
    PP,
}

pub const ALL_BOUNDARY_CONDITIONS: [BoundaryCondition; 5] = [
    BoundaryCondition::DD,
    BoundaryCondition::NN,
    BoundaryCondition::DN,
    BoundaryCondition::ND,
    BoundaryCondition::PP,
];

impl BoundaryCondition {
    /// Whether the Laplacian has a zero mode under this boundary condition,
    /// i.e. whether the regularized kernel Ḡ is in play.
    pub fn has_zero_mode(self) -> bool {
        matches!(self, BoundaryCondition::NN | BoundaryCondition::PP)
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "dd" => Ok(BoundaryCondition::DD),
            "nn" => Ok(BoundaryCondition::NN),
            "dn" => Ok(BoundaryCondition::DN),
            "nd" => Ok(BoundaryCondition::ND),
            "pp" => Ok(BoundaryCondition::PP),
            other => Err(Error::Usage(format!(
                "unknown boundary condition '{other}' (expected dd, nn, dn, nd or pp)"
            ))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            BoundaryCondition::DD => "DD",
            BoundaryCondition::NN => "NN",
            BoundaryCondition::DN => "DN",
            BoundaryCondition::ND => "ND",
            BoundaryCondition::PP => "PP",
        }
    }
}

impl std::fmt::Display for BoundaryCondition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

fn check_domain(a: f64, v: f64) -> Result<()> {
    // allow exact endpoints plus a grain of roundoff slack
    if v.abs() <= 0.5 * a * (1.0 + 1e-12) && v.is_finite() {
        Ok(())
    } else {
        Err(Error::OutOfDomain { x: v, half: 0.5 * a })
    }
}

/// G(x, y) (the regularized Ḡ for NN and PP), symmetric in its arguments.
pub fn green(bc: BoundaryCondition, a: f64, x: f64, y: f64) -> Result<f64> {
    check_domain(a, x)?;
    check_domain(a, y)?;
    Ok(green_unchecked(bc, a, x, y))
}

/// Same closed forms without the domain guard, for quadrature inner loops
/// whose nodes are interior by construction.
#[inline]
pub fn green_unchecked(bc: BoundaryCondition, a: f64, x: f64, y: f64) -> f64 {
    match bc {
        BoundaryCondition::DD => a / 4.0 - x * y / a - (x - y).abs() / 2.0,
        BoundaryCondition::NN => {
            (a * a - 6.0 * a * (x - y).abs() + 6.0 * (x * x + y * y)) / (12.0 * a)
        }
        BoundaryCondition::DN => x.min(y) + a / 2.0,
        BoundaryCondition::ND => -x.max(y) + a / 2.0,
        BoundaryCondition::PP => {
            let d = (x - y).abs();
            (a * a - 6.0 * a * d + 6.0 * d * d) / (12.0 * a)
        }
    }
}

/// The ordered branch G₊(x, y), defined for x >= y.
pub fn green_plus(bc: BoundaryCondition, a: f64, x: f64, y: f64) -> Result<f64> {
    check_domain(a, x)?;
    check_domain(a, y)?;
    if x < y {
        return Err(Error::Ordering { x, y });
    }
    Ok(green_plus_unchecked(bc, a, x, y))
}

/// G₊ without guards; callers must ensure x >= y and domain membership.
#[inline]
pub fn green_plus_unchecked(bc: BoundaryCondition, a: f64, x: f64, y: f64) -> f64 {
    match bc {
        BoundaryCondition::DD => (a - 2.0 * x) * (a + 2.0 * y) / (4.0 * a),
        BoundaryCondition::NN => {
            (a * a - 6.0 * a * (x - y) + 6.0 * (x * x + y * y)) / (12.0 * a)
        }
        BoundaryCondition::DN => y + a / 2.0,
        BoundaryCondition::ND => a / 2.0 - x,
        BoundaryCondition::PP => {
            let d = x - y;
            (a * a - 6.0 * a * d + 6.0 * d * d) / (12.0 * a)
        }
    }
}

/// Diagonal value G(x, x).
pub fn green_diagonal(bc: BoundaryCondition, a: f64, x: f64) -> Result<f64> {
    check_domain(a, x)?;
    Ok(green_diagonal_unchecked(bc, a, x))
}

#[inline]
pub fn green_diagonal_unchecked(bc: BoundaryCondition, a: f64, x: f64) -> f64 {
    match bc {
        BoundaryCondition::DD => a / 4.0 - x * x / a,
        BoundaryCondition::NN => a / 12.0 + x * x / a,
        BoundaryCondition::DN => x + a / 2.0,
        BoundaryCondition::ND => -x + a / 2.0,
        BoundaryCondition::PP => a / 12.0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use BoundaryCondition::*;

    #[test]
    fn pinned_values() {
        // diagonal formulas at simple points
        assert_eq!(green(DD, 1.0, 0.0, 0.0).unwrap(), 0.25);
        assert_eq!(green_diagonal(DD, 1.0, 0.0).unwrap(), 0.25);
        assert_eq!(green_diagonal(DN, 1.0, 0.0).unwrap(), 0.5);
        // Dirichlet boundary values vanish
        for y in [-0.3, 0.0, 0.41] {
            assert!(green(DD, 1.0, 0.5, y).unwrap().abs() < 1e-15);
            assert!(green(ND, 1.0, 0.5, y).unwrap().abs() < 1e-15);
        }
        // NN off-diagonal closed form: Ḡ(1/4, -1/4) = -5/48
        let g = green(NN, 1.0, 0.25, -0.25).unwrap();
        assert!((g - (-5.0 / 48.0)).abs() < 1e-15);
        // NN diagonal at the end: 1/12 + 1/4 = 1/3
        assert!((green_diagonal(NN, 1.0, 0.5).unwrap() - 1.0 / 3.0).abs() < 1e-15);
        // PP diagonal is constant a/12
        for x in [-0.5, -0.12, 0.0, 0.37] {
            assert!((green(PP, 1.0, x, x).unwrap() - 1.0 / 12.0).abs() < 1e-15);
        }
    }

    #[test]
    fn ordered_branch() {
        // DD: G₊(1/4, -1/4) = (1 - 1/2)(1 - 1/2)/4 = 1/16
        let g = green_plus(DD, 1.0, 0.25, -0.25).unwrap();
        assert!((g - 0.0625).abs() < 1e-15);
        // DN min-branch: x >= y gives y + 1/2
        assert!((green_plus(DN, 1.0, 0.3, -0.2).unwrap() - 0.3).abs() < 1e-15);
        // ND at x = 1/2 vanishes for any y <= x
        assert!(green_plus(ND, 1.0, 0.5, -0.1).unwrap().abs() < 1e-15);
        // calling with x < y is an ordering error
        assert!(matches!(
            green_plus(DD, 1.0, -0.3, 0.3),
            Err(Error::Ordering { .. })
        ));
    }

    #[test]
    fn symmetry_and_branch_consistency() {
        let pts = [-0.5, -0.31, -0.07, 0.0, 0.22, 0.5];
        for &bc in &ALL_BOUNDARY_CONDITIONS {
            for &x in &pts {
                for &y in &pts {
                    let g = green(bc, 1.0, x, y).unwrap();
                    let gt = green(bc, 1.0, y, x).unwrap();
                    assert_eq!(g, gt, "{bc} symmetry at ({x},{y})");
                    let (hi, lo) = if x >= y { (x, y) } else { (y, x) };
                    let gp = green_plus(bc, 1.0, hi, lo).unwrap();
                    assert!((g - gp).abs() < 1e-15, "{bc} branch at ({x},{y})");
                }
            }
        }
    }

    #[test]
    fn out_of_domain_rejected() {
        assert!(green(DD, 1.0, 0.51, 0.0).is_err());
        assert!(green_diagonal(PP, 2.0, 1.01).is_err());
        assert!(green(NN, 1.0, 0.0, f64::NAN).is_err());
    }

    #[test]
    fn second_difference_and_jump() {
        // off-diagonal: -G'' = 0 (DD/DN/ND) or -1/a (NN/PP regularized)
        let a = 1.0;
        let h = 1e-4;
        let y = 0.13;
        for &bc in &ALL_BOUNDARY_CONDITIONS {
            let x = -0.29; // away from y and from the ends
            let gpp = (green(bc, a, x + h, y).unwrap() - 2.0 * green(bc, a, x, y).unwrap()
                + green(bc, a, x - h, y).unwrap())
                / (h * h);
            // -G'' = δ(x-y) for DD/DN/ND; the regularized kernels instead
            // satisfy -Ḡ'' = δ(x-y) - 1/a, so off-diagonal -Ḡ'' = -1/a
            let expect = if bc.has_zero_mode() { -1.0 / a } else { 0.0 };
            assert!(
                (-gpp - expect).abs() < 1e-5,
                "{bc}: -G'' = {:-.6} expected {expect}",
                -gpp
            );
            // slope drop across x = y equals 1; every closed form is exactly
            // quadratic off the diagonal, so the one-sided secants carry an
            // exact (h/2)·G'' bias that can be removed rather than tolerated
            let d_right = (green(bc, a, y + h, y).unwrap() - green(bc, a, y, y).unwrap()) / h;
            let d_left = (green(bc, a, y, y).unwrap() - green(bc, a, y - h, y).unwrap()) / h;
            let curvature = if bc.has_zero_mode() { 1.0 / a } else { 0.0 };
            let jump = d_left - d_right + h * curvature;
            assert!((jump - 1.0).abs() < 1e-9, "{bc}: jump {jump}");
        }
    }

    #[test]
    fn dd_positivity() {
        for i in 0..=50 {
            for j in 0..=50 {
                let x = -0.5 + i as f64 / 50.0;
                let y = -0.5 + j as f64 / 50.0;
                assert!(green(DD, 1.0, x, y).unwrap() >= -1e-15);
            }
        }
    }
}
