//! Sum rules: exact integral representations of Z(n) = Σ_k E_k^{-n}.
//!
//! Writing the string problem −ψ″ = EΣψ through the Green's function G of
//! −d²/dx², the positive spectrum becomes that of the symmetric kernel
//! K(x,y) = √Σ(x) G(x,y) √Σ(y), and
//!
//! ```text
//!     Z(n) = Tr Kⁿ = ∫…∫ Σ(x₁)…Σ(xₙ) G(x₁,x₂) G(x₂,x₃) … G(xₙ,x₁) dx₁…dxₙ.
//! ```
//!
//! The integrand is symmetric under relabeling, so the integral collapses
//! onto the ordered simplex x₁ > x₂ > ⋯ > xₙ: each distinct cyclic visiting
//! order (a *diagram*, see [`crate::diagrams`]) contributes once, with the
//! common prefactor 2n for n ≥ 3.  On the simplex every Green's function
//! argument pair is ordered, so the |x−y| kinks disappear and the integrand
//! is as smooth as Σ itself — nested Gauss–Legendre quadrature converges
//! spectrally.  This is the route of [`zeta_diagram`]; its cost grows like
//! (nodes)ⁿ × (n−1)!/2, so it is capped at n = 5.
//!
//! [`zeta_one`] is the n = 1 special case, a single smooth integral
//! ∫ Σ(x) G(x,x) dx.  [`zeta_kernel_trace`] discretizes K once with a
//! composite quadrature (Nyström method), diagonalizes, and reads off all
//! orders at once from the eigenvalues μ ≈ 1/E_k, refining over three grids
//! with Richardson extrapolation.
//!
//! # Zero modes (NN and PP)
//!
//! Neumann and periodic strings have E₀ = 0; Green's functions exist only in
//! the regularized sense Ḡ (see [`crate::greens`]).  Traces of Ḡ-kernels are
//! what the closed-form sum rules of this module compute, and at n = 1 they
//! satisfy exact identities ([`verify_sum_identities`]):
//!
//! ```text
//!     Z_DD(1) + Z_NN(1) = a²⟨Σ⟩/3,   Z_DN(1) + Z_ND(1) = a²⟨Σ⟩,   Z_PP(1) = a²⟨Σ⟩/12.
//! ```
//!
//! For *non-uniform* densities these traces are **not** the spectral sums
//! Σ_{k>0} E_k^{-n}: the kernel K̄ built from Ḡ couples to the direction
//! v ∝ √Σ, and only the compression (I − vvᵀ) K̄ (I − vvᵀ) has spectrum
//! exactly {1/E_k}.  At n = 1 the difference is the computable shift
//! vᵀK̄v = ∫∫ Σ Ḡ Σ / ∫Σ.  [`zeta_kernel_trace`] therefore offers both
//! semantics: with [`QuadratureConfig::spectral_projection`] set (the
//! default) it projects v out and returns true spectral sums; without it,
//! it returns the raw traces consistent with [`zeta_one`]/[`zeta_diagram`].
//! For uniform densities the two coincide (Ḡ has zero mean in each
//! variable); for eigenvalue work (bounds, estimates) use the projected
//! values.

use nalgebra::DMatrix;
use rayon::prelude::*;
use serde::Serialize;

use crate::density::DensityProfile;
use crate::diagrams;
use crate::error::{Error, Result};
use crate::greens::{self, BoundaryCondition};
use crate::quadrature;

/// Knobs for the quadrature-based sum-rule routes.
#[derive(Debug, Clone)]
pub struct QuadratureConfig {
    /// Gauss–Legendre nodes per panel and per simplex dimension in
    /// [`zeta_diagram`].
    pub diagram_nodes: usize,
    /// Minimum panels per simplex dimension (profile breakpoints always get
    /// their own panel boundaries on top of this).
    pub diagram_min_panels: usize,
    /// Composite-grid panel counts for the three Nyström refinement stages
    /// of [`zeta_kernel_trace`].
    pub kernel_panels: [usize; 3],
    /// Gauss–Legendre nodes per panel in the Nyström grids.
    pub kernel_per_panel: usize,
    /// Project out the √Σ direction for NN/PP so the kernel spectrum is the
    /// true string spectrum (see module docs).  Ignored for DD/DN/ND.
    pub spectral_projection: bool,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            diagram_nodes: 24,
            diagram_min_panels: 1,
            kernel_panels: [30, 60, 120],
            kernel_per_panel: 4,
            spectral_projection: true,
        }
    }
}

/// A table of sum-rule values Z(s) for s = orders[i], with one error
/// estimate per entry.
#[derive(Debug, Clone, Serialize)]
pub struct SumRuleTable {
    pub bc: BoundaryCondition,
    pub orders: Vec<u32>,
    pub values: Vec<f64>,
    pub method: String,
    pub err_est: Vec<f64>,
}

impl SumRuleTable {
    pub fn new(
        bc: BoundaryCondition,
        orders: Vec<u32>,
        values: Vec<f64>,
        method: impl Into<String>,
        err_est: Vec<f64>,
    ) -> Result<Self> {
        if orders.is_empty() || orders.len() != values.len() || orders.len() != err_est.len() {
            return Err(Error::Parameter(format!(
                "sum-rule table needs matching non-empty orders/values/err_est, got {}/{}/{}",
                orders.len(),
                values.len(),
                err_est.len()
            )));
        }
        Ok(SumRuleTable {
            bc,
            orders,
            values,
            method: method.into(),
            err_est,
        })
    }

    /// Table of exactly-known values (error estimates at the f64 roundoff
    /// floor).
    pub fn exact(
        bc: BoundaryCondition,
        orders: Vec<u32>,
        values: Vec<f64>,
        method: impl Into<String>,
    ) -> Result<Self> {
        let err = values.iter().map(|v| 2.0 * f64::EPSILON * v.abs()).collect();
        SumRuleTable::new(bc, orders, values, method, err)
    }

    /// Z(s), if the table holds that order.
    pub fn value(&self, s: u32) -> Option<f64> {
        self.orders
            .iter()
            .position(|&o| o == s)
            .map(|i| self.values[i])
    }

    /// Error estimate for Z(s), if present.
    pub fn err(&self, s: u32) -> Option<f64> {
        self.orders
            .iter()
            .position(|&o| o == s)
            .map(|i| self.err_est[i])
    }
}

/// Z(1) = ∫ Σ(x) G(x,x) dx, the first sum rule, by composite quadrature of
/// a smooth one-dimensional integrand.
///
/// For NN/PP this is the trace of the regularized kernel (see module docs).
pub fn zeta_one(profile: &DensityProfile, bc: BoundaryCondition) -> Result<f64> {
    let a = profile.length();
    let half = profile.half();
    let edges = profile.panel_edges(-half, half, 32);
    let val = quadrature::integrate_edges(
        |x| profile.eval_raw(x) * greens::green_diagonal_unchecked(bc, a, x),
        &edges,
        16,
    );
    if !val.is_finite() {
        return Err(Error::Numerical(format!(
            "Z(1) quadrature for {bc} did not produce a finite value"
        )));
    }
    Ok(val)
}

/// Z(n) by exact diagram expansion over the ordered simplex.
///
/// Sums prefactor(n) × Σ_diagrams ∫_{x₁>⋯>xₙ} Π Σ(x_i) Π G₊(x_u, x_v) with
/// nested Gauss–Legendre quadrature, panels aligned to the profile's
/// breakpoints at every nesting level.  Supported for n ≤ 5 (the diagram
/// count and the nested grid both explode combinatorially beyond that —
/// use [`zeta_kernel_trace`] for higher orders).
///
/// For NN/PP this is the trace of the regularized kernel (see module docs).
pub fn zeta_diagram(
    profile: &DensityProfile,
    bc: BoundaryCondition,
    n: u32,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    if n == 0 {
        return Err(Error::Parameter("sum-rule order must be at least 1".into()));
    }
    if n > 5 {
        return Err(Error::Capability(format!(
            "diagram quadrature is supported up to order 5; order {n} needs the \
             kernel-trace route"
        )));
    }
    if cfg.diagram_nodes < 2 {
        return Err(Error::Parameter(
            "diagram quadrature needs at least 2 nodes per dimension".into(),
        ));
    }
    let n = n as usize;
    if n == 1 {
        return zeta_one(profile, bc);
    }

    // Edge lists of all diagrams, 0-based: product over (u,v) of G₊(x_u,x_v),
    // where u < v so x_u ≥ x_v on the simplex.
    let edge_lists: Vec<Vec<(usize, usize)>> = diagrams::enumerate(n)?
        .iter()
        .map(|d| {
            d.edges()
                .into_iter()
                .map(|(u, v)| (u - 1, v - 1))
                .collect()
        })
        .collect();

    let a = profile.length();
    let half = profile.half();
    let (outer_x, outer_w) = level_rule(profile, half, cfg);

    // Parallel over the outermost node, sequential (deterministic) reduction.
    let partials: Vec<f64> = outer_x
        .par_iter()
        .zip(outer_w.par_iter())
        .map(|(&x0, &w0)| {
            let mut scratch = Scratch::new(n);
            scratch.push_level(profile, bc, a, 0, x0);
            let inner = simplex_descend(profile, bc, a, cfg, &edge_lists, &mut scratch, 1, x0);
            w0 * profile.eval_raw(x0) * inner
        })
        .collect();
    let total: f64 = partials.iter().sum();

    let val = diagrams::prefactor(n) * total;
    if !val.is_finite() {
        return Err(Error::Numerical(format!(
            "Z({n}) diagram quadrature for {bc} did not produce a finite value"
        )));
    }
    Ok(val)
}

/// Per-task scratch: the current simplex prefix x₀ ≥ x₁ ≥ … and the
/// triangular table of Green's factors between prefix points.
struct Scratch {
    n: usize,
    xs: Vec<f64>,
    // g[i*n + k] = G₊(x_i, x_k) for i <= k (x_i ≥ x_k).
    g: Vec<f64>,
}

impl Scratch {
    fn new(n: usize) -> Self {
        Scratch {
            n,
            xs: vec![0.0; n],
            g: vec![0.0; n * n],
        }
    }

    /// Record level-k coordinate and its Green's factors against the prefix.
    fn push_level(
        &mut self,
        _profile: &DensityProfile,
        bc: BoundaryCondition,
        a: f64,
        k: usize,
        x: f64,
    ) {
        self.xs[k] = x;
        for i in 0..k {
            self.g[i * self.n + k] = greens::green_plus_unchecked(bc, a, self.xs[i], x);
        }
        self.g[k * self.n + k] = greens::green_diagonal_unchecked(bc, a, x);
    }
}

/// Quadrature rule for one simplex level on [-a/2, upper], honoring profile
/// breakpoints.
fn level_rule(profile: &DensityProfile, upper: f64, cfg: &QuadratureConfig) -> (Vec<f64>, Vec<f64>) {
    let edges = profile.panel_edges(-profile.half(), upper, cfg.diagram_min_panels);
    quadrature::composite_edges(&edges, cfg.diagram_nodes)
}

/// Integrate levels k..n of the simplex given the prefix in `scratch`;
/// returns the inner integral *without* the Σ factors and weights of the
/// prefix (the caller owns those).
fn simplex_descend(
    profile: &DensityProfile,
    bc: BoundaryCondition,
    a: f64,
    cfg: &QuadratureConfig,
    edge_lists: &[Vec<(usize, usize)>],
    scratch: &mut Scratch,
    k: usize,
    upper: f64,
) -> f64 {
    let n = scratch.n;
    let (xs, ws) = level_rule(profile, upper, cfg);
    let mut acc = 0.0;
    for (&x, &w) in xs.iter().zip(ws.iter()) {
        scratch.push_level(profile, bc, a, k, x);
        let contrib = if k + 1 == n {
            // Leaf: evaluate every diagram off the pair table.
            let mut sum = 0.0;
            for edges in edge_lists {
                let mut prod = 1.0;
                for &(u, v) in edges {
                    prod *= scratch.g[u * n + v];
                }
                sum += prod;
            }
            sum
        } else {
            simplex_descend(profile, bc, a, cfg, edge_lists, scratch, k + 1, x)
        };
        acc += w * profile.eval_raw(x) * contrib;
    }
    acc
}

/// Convenience: diagram-route table for s = 1..=n_max (n_max ≤ 5), with
/// error estimates from a coarsened second pass.
pub fn zeta_diagram_table(
    profile: &DensityProfile,
    bc: BoundaryCondition,
    n_max: u32,
    cfg: &QuadratureConfig,
) -> Result<SumRuleTable> {
    let orders: Vec<u32> = (1..=n_max).collect();
    let mut values = Vec::with_capacity(orders.len());
    let mut err_est = Vec::with_capacity(orders.len());
    let coarse_cfg = QuadratureConfig {
        diagram_nodes: (2 * cfg.diagram_nodes / 3).max(2),
        ..cfg.clone()
    };
    for &s in &orders {
        let v = zeta_diagram(profile, bc, s, cfg)?;
        let coarse = zeta_diagram(profile, bc, s, &coarse_cfg)?;
        values.push(v);
        err_est.push((v - coarse).abs().max(2.0 * f64::EPSILON * v.abs()));
    }
    SumRuleTable::new(bc, orders, values, "diagram", err_est)
}

/// Z(s) for s = 1..=n_max from a discretized-kernel (Nyström) eigenvalue
/// computation, Richardson-extrapolated over three grids.
///
/// With `cfg.spectral_projection` (default) the NN/PP kernels are compressed
/// onto the complement of the √Σ direction, so the returned values are true
/// spectral sums Σ_{k>0} E_k^{-s}; without it they are raw regularized-kernel
/// traces matching [`zeta_diagram`].  See the module docs for why these
/// differ.
pub fn zeta_kernel_trace(
    profile: &DensityProfile,
    bc: BoundaryCondition,
    n_max: u32,
    cfg: &QuadratureConfig,
) -> Result<SumRuleTable> {
    if n_max == 0 {
        return Err(Error::Parameter("sum-rule order must be at least 1".into()));
    }
    if cfg.kernel_per_panel < 2 {
        return Err(Error::Parameter(
            "kernel grids need at least 2 nodes per panel".into(),
        ));
    }
    let a = profile.length();
    let half = profile.half();
    let project = cfg.spectral_projection && bc.has_zero_mode();

    // Z(s) per refinement stage.
    let mut stage_values: Vec<Vec<f64>> = Vec::with_capacity(3);
    for &panels in &cfg.kernel_panels {
        let edges = profile.panel_edges(-half, half, panels);
        let (xs, ws) = quadrature::composite_edges(&edges, cfg.kernel_per_panel);
        let m = xs.len();
        // u_i = √(Σ(x_i) w_i); M_ij = u_i G(x_i,x_j) u_j is the symmetric
        // Nyström discretization of √Σ G √Σ.
        let u: Vec<f64> = xs
            .iter()
            .zip(ws.iter())
            .map(|(&x, &w)| (profile.eval_raw(x) * w).sqrt())
            .collect();
        if u.iter().any(|v| !v.is_finite()) {
            return Err(Error::Numerical(
                "kernel grid hit a non-finite density value".into(),
            ));
        }
        let mut mat = DMatrix::from_fn(m, m, |i, j| {
            u[i] * u[j] * greens::green_unchecked(bc, a, xs[i], xs[j])
        });
        if project {
            // Compress onto the complement of v = u/‖u‖:  M ← (I−vvᵀ)M(I−vvᵀ).
            let norm = u.iter().map(|x| x * x).sum::<f64>().sqrt();
            let v = nalgebra::DVector::from_iterator(m, u.iter().map(|x| x / norm));
            let t = &mat * &v;
            let c = v.dot(&t);
            mat -= &v * t.transpose();
            mat -= &t * v.transpose();
            mat += (&v * v.transpose()) * c;
            // Re-symmetrize against roundoff drift.
            let mt = mat.transpose();
            mat = (mat + mt) * 0.5;
        }
        let eig = mat.symmetric_eigen();
        let mut mus: Vec<f64> = eig.eigenvalues.iter().copied().collect();
        if project {
            let mu_max = mus.iter().cloned().fold(0.0f64, |a, b| a.max(b.abs()));
            if mus.iter().any(|&mu| mu < -1e-6 * mu_max) {
                return Err(Error::Numerical(format!(
                    "projected kernel for {bc} has a significantly negative eigenvalue"
                )));
            }
            // Drop the projected-out near-zero direction (and roundoff dust).
            mus.retain(|&mu| mu.abs() > 1e-10 * mu_max);
        }
        // Σ μ^s, accumulated smallest-magnitude first for determinism.
        mus.sort_by(|p, q| p.abs().partial_cmp(&q.abs()).unwrap());
        let zs: Vec<f64> = (1..=n_max)
            .map(|s| mus.iter().map(|&mu| mu.powi(s as i32)).sum())
            .collect();
        stage_values.push(zs);
    }

    let orders: Vec<u32> = (1..=n_max).collect();
    let mut values = Vec::with_capacity(orders.len());
    let mut err_est = Vec::with_capacity(orders.len());
    for idx in 0..orders.len() {
        let (t1, t2, t3) = (
            stage_values[0][idx],
            stage_values[1][idx],
            stage_values[2][idx],
        );
        let scale = t3.abs().max(f64::MIN_POSITIVE);
        if (t3 - t2).abs() <= 1e-13 * scale {
            // Already at roundoff (s = 1 traces converge spectrally);
            // extrapolating would only amplify noise.
            values.push(t3);
            err_est.push((t3 - t2).abs().max(f64::EPSILON * scale));
        } else {
            let r1 = (4.0 * t2 - t1) / 3.0;
            let r2 = (4.0 * t3 - t2) / 3.0;
            let r = (16.0 * r2 - r1) / 15.0;
            let err = (r - r2)
                .abs()
                .max((r2 - r1).abs() / 15.0)
                .max(f64::EPSILON * scale);
            values.push(r);
            err_est.push(err);
        }
    }
    let method = if project {
        "kernel-projected"
    } else {
        "kernel-trace"
    };
    SumRuleTable::new(bc, orders, values, method, err_est)
}

/// One verified s = 1 identity.
#[derive(Debug, Clone, Serialize)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
}

/// Verify the exact s = 1 trace identities
///
/// ```text
///     Z_DD(1) + Z_NN(1) = a²⟨Σ⟩/3
///     Z_DN(1) + Z_ND(1) = a²⟨Σ⟩
///     Z_PP(1)           = a²⟨Σ⟩/12
/// ```
///
/// (absolute residuals against `tol`).  These hold for *any* positive
/// density: the relevant Green diagonals sum to constants.  Returns the
/// three checks, or [`Error::Accuracy`] naming the worst violator.
pub fn verify_sum_identities(profile: &DensityProfile, tol: f64) -> Result<Vec<IdentityCheck>> {
    if !(tol > 0.0) {
        return Err(Error::Parameter(format!(
            "identity tolerance must be positive, got {tol}"
        )));
    }
    let z = |bc| zeta_one(profile, bc);
    let zdd = z(BoundaryCondition::DD)?;
    let znn = z(BoundaryCondition::NN)?;
    let zdn = z(BoundaryCondition::DN)?;
    let znd = z(BoundaryCondition::ND)?;
    let zpp = z(BoundaryCondition::PP)?;
    let a = profile.length();
    let base = a * a * profile.mean_density();

    let mk = |name, lhs: f64, rhs: f64| IdentityCheck {
        name,
        lhs,
        rhs,
        residual: (lhs - rhs).abs(),
    };
    let checks = vec![
        mk("Z_DD(1) + Z_NN(1) = a^2<S>/3", zdd + znn, base / 3.0),
        mk("Z_DN(1) + Z_ND(1) = a^2<S>", zdn + znd, base),
        mk("Z_PP(1) = a^2<S>/12", zpp, base / 12.0),
    ];
    if let Some(worst) = checks
        .iter()
        .max_by(|p, q| p.residual.partial_cmp(&q.residual).unwrap())
    {
        if !(worst.residual <= tol) {
            return Err(Error::Accuracy(format!(
                "sum-rule identity '{}' violated: |{} - {}| = {:.3e} > {tol:.3e}",
                worst.name, worst.lhs, worst.rhs, worst.residual
            )));
        }
    }
    Ok(checks)
}
