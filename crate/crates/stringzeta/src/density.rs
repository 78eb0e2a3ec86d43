//! String density profiles Σ(x) on the interval [-a/2, a/2].
//!
//! A profile owns its density Σ(x) > 0, analytic first and second
//! derivatives where the family provides them, the optical length
//! σ(x) = ∫_{-a/2}^x √Σ(y) dy, and the mean density ⟨Σ⟩ = (1/a)∫Σ dx.
//!
//! Built-in families (all on a = 1):
//!
//! * `uniform` — Σ ≡ 1.
//! * `borg:alpha=<f>` — Σ(x) = (1+α)²/(1+α(x+1/2))⁴, the classical family
//!   sharing the Dirichlet spectrum of the uniform string for every α > −1.
//! * `horgan-chan` — Σ(x) = 9/(12x+10), with σ(x) = (√(12x+10) − 2)/2 and
//!   ⟨Σ⟩ = (3/2) log 2.
//! * `oscillating:eps=<f>` — Σ(x) = 2 + sin(2π(x+1/2)/ε), rapidly
//!   oscillating as ε → 0.
//! * `gottlieb:base=<spec>,alpha=<f>` — the Möbius change of variables
//!   ξ(x) = ((2aα+4)x + a²α)/(4αx + 2aα+4), Σ̃(x) = ξ′(x)² Σ(ξ(x)),
//!   which maps the interval onto itself and preserves the Dirichlet
//!   spectrum of the base string; with a uniform base it reproduces the
//!   Borg family.
//! * `table:path=<csv>` — knots (x, Σ) interpolated by a clamped C² cubic
//!   spline (end slopes from one-sided three-point fits of the data).
//!
//! σ preservation under the Möbius transform follows from the change of
//! variables √Σ̃ = ξ′ √Σ(ξ): σ̃(x) = σ(ξ(x)), so σ̃(a/2) = σ(a/2).

use crate::error::{Error, Result};
use crate::quadrature;

/// Clamped C² cubic spline through strictly increasing knots.
#[derive(Debug, Clone)]
struct CubicSpline {
    xs: Vec<f64>,
    ys: Vec<f64>,
    /// second derivatives at the knots (moment form)
    m: Vec<f64>,
}

/// Derivative at x[0] of the quadratic through three points.
fn three_point_slope(x: [f64; 3], y: [f64; 3]) -> f64 {
    y[0] * (1.0 / (x[0] - x[1]) + 1.0 / (x[0] - x[2]))
        + y[1] * (x[0] - x[2]) / ((x[1] - x[0]) * (x[1] - x[2]))
        + y[2] * (x[0] - x[1]) / ((x[2] - x[0]) * (x[2] - x[1]))
}

impl CubicSpline {
    fn new(xs: Vec<f64>, ys: Vec<f64>) -> Result<Self> {
        let n = xs.len();
        if n < 4 {
            return Err(Error::Profile(format!(
                "table profile needs at least 4 knots, got {n}"
            )));
        }
        for (&x, &y) in xs.iter().zip(&ys) {
            if !x.is_finite() || !y.is_finite() {
                return Err(Error::Profile("non-finite knot".into()));
            }
        }
        if !xs.windows(2).all(|w| w[1] > w[0]) {
            return Err(Error::Profile("knots must be strictly increasing".into()));
        }

        let slope_left = three_point_slope([xs[0], xs[1], xs[2]], [ys[0], ys[1], ys[2]]);
        let last = n - 1;
        let slope_right = three_point_slope(
            [xs[last], xs[last - 1], xs[last - 2]],
            [ys[last], ys[last - 1], ys[last - 2]],
        );

        // Tridiagonal moment system for the clamped spline.
        let h: Vec<f64> = xs.windows(2).map(|w| w[1] - w[0]).collect();
        let mut diag = vec![0.0; n];
        let mut sub = vec![0.0; n]; // sub[i] multiplies M_{i-1} in row i
        let mut sup = vec![0.0; n]; // sup[i] multiplies M_{i+1} in row i
        let mut rhs = vec![0.0; n];
        diag[0] = 2.0 * h[0];
        sup[0] = h[0];
        rhs[0] = 6.0 * ((ys[1] - ys[0]) / h[0] - slope_left);
        for i in 1..n - 1 {
            sub[i] = h[i - 1];
            diag[i] = 2.0 * (h[i - 1] + h[i]);
            sup[i] = h[i];
            rhs[i] = 6.0 * ((ys[i + 1] - ys[i]) / h[i] - (ys[i] - ys[i - 1]) / h[i - 1]);
        }
        sub[n - 1] = h[n - 2];
        diag[n - 1] = 2.0 * h[n - 2];
        rhs[n - 1] = 6.0 * (slope_right - (ys[n - 1] - ys[n - 2]) / h[n - 2]);

        // Thomas elimination (the system is strictly diagonally dominant).
        for i in 1..n {
            let w = sub[i] / diag[i - 1];
            diag[i] -= w * sup[i - 1];
            rhs[i] -= w * rhs[i - 1];
        }
        let mut m = vec![0.0; n];
        m[n - 1] = rhs[n - 1] / diag[n - 1];
        for i in (0..n - 1).rev() {
            m[i] = (rhs[i] - sup[i] * m[i + 1]) / diag[i];
        }
        Ok(CubicSpline { xs, ys, m })
    }

    fn locate(&self, x: f64) -> usize {
        let n = self.xs.len();
        match self.xs.partition_point(|&k| k <= x) {
            0 => 0,
            p if p >= n => n - 2,
            p => p - 1,
        }
    }

    fn eval(&self, x: f64) -> f64 {
        let i = self.locate(x);
        let h = self.xs[i + 1] - self.xs[i];
        let t = x - self.xs[i];
        let u = self.xs[i + 1] - x;
        self.m[i] * u * u * u / (6.0 * h)
            + self.m[i + 1] * t * t * t / (6.0 * h)
            + (self.ys[i] / h - self.m[i] * h / 6.0) * u
            + (self.ys[i + 1] / h - self.m[i + 1] * h / 6.0) * t
    }

    fn d1(&self, x: f64) -> f64 {
        let i = self.locate(x);
        let h = self.xs[i + 1] - self.xs[i];
        let t = x - self.xs[i];
        let u = self.xs[i + 1] - x;
        -self.m[i] * u * u / (2.0 * h)
            + self.m[i + 1] * t * t / (2.0 * h)
            + (self.ys[i + 1] - self.ys[i]) / h
            - (self.m[i + 1] - self.m[i]) * h / 6.0
    }

    fn d2(&self, x: f64) -> f64 {
        let i = self.locate(x);
        let h = self.xs[i + 1] - self.xs[i];
        (self.m[i] * (self.xs[i + 1] - x) + self.m[i + 1] * (x - self.xs[i])) / h
    }

    /// Roughness indicator: the largest jump of the (piecewise-constant)
    /// third derivative across a knot, times the local spacing, relative to
    /// the data scale.  Smooth data keeps this far below 1.
    fn roughness(&self) -> f64 {
        let scale = self.ys.iter().fold(0.0f64, |acc, &y| acc.max(y.abs()));
        if scale == 0.0 {
            return f64::INFINITY;
        }
        let mut worst = 0.0f64;
        for i in 0..self.m.len() - 1 {
            let h = self.xs[i + 1] - self.xs[i];
            worst = worst.max((self.m[i + 1] - self.m[i]).abs() * h);
        }
        worst / scale
    }
}

#[derive(Debug, Clone)]
enum Family {
    Uniform,
    Borg { alpha: f64 },
    HorganChan,
    Oscillating { eps: f64 },
    Gottlieb { base: Box<DensityProfile>, alpha: f64 },
    Table { spline: CubicSpline, path: Option<String> },
}

/// Coefficients of the Möbius map ξ(x) = (px + q)/(rx + s) used by the
/// isospectral transform (s = p).
fn moebius_coeffs(a: f64, alpha: f64) -> (f64, f64, f64, f64) {
    let p = 2.0 * a * alpha + 4.0;
    (p, a * a * alpha, 4.0 * alpha, p)
}

/// A string density Σ(x) > 0 on [-a/2, a/2], immutable after construction.
#[derive(Debug, Clone)]
pub struct DensityProfile {
    a: f64,
    family: Family,
    rough: bool,
}

impl DensityProfile {
    pub fn uniform() -> Self {
        DensityProfile {
            a: 1.0,
            family: Family::Uniform,
            rough: false,
        }
    }

    pub fn borg(alpha: f64) -> Result<Self> {
        if !(alpha > -1.0) || !alpha.is_finite() {
            return Err(Error::Parameter(format!(
                "borg profile needs alpha > -1, got {alpha}"
            )));
        }
        Ok(DensityProfile {
            a: 1.0,
            family: Family::Borg { alpha },
            rough: false,
        })
    }

    pub fn horgan_chan() -> Self {
        DensityProfile {
            a: 1.0,
            family: Family::HorganChan,
            rough: false,
        }
    }

    pub fn oscillating(eps: f64) -> Result<Self> {
        if !(eps > 0.0) || !eps.is_finite() {
            return Err(Error::Parameter(format!(
                "oscillating profile needs eps > 0, got {eps}"
            )));
        }
        Ok(DensityProfile {
            a: 1.0,
            family: Family::Oscillating { eps },
            rough: false,
        })
    }

    /// Isospectral Möbius transform of `base`; requires a·α > −1 so that the
    /// map stays regular (denominator positive) on the whole interval.
    pub fn gottlieb(base: DensityProfile, alpha: f64) -> Result<Self> {
        let a = base.a;
        if !alpha.is_finite() || a * alpha <= -1.0 {
            return Err(Error::Parameter(format!(
                "gottlieb transform needs a*alpha > -1, got alpha = {alpha} (a = {a})"
            )));
        }
        let rough = base.rough;
        let profile = DensityProfile {
            a,
            family: Family::Gottlieb {
                base: Box::new(base),
                alpha,
            },
            rough,
        };
        profile.validate_positive()?;
        Ok(profile)
    }

    /// Build a table profile from (x, Σ) knots spanning a symmetric
    /// interval [-a/2, a/2].
    pub fn from_knots(knots: &[(f64, f64)]) -> Result<Self> {
        let xs: Vec<f64> = knots.iter().map(|k| k.0).collect();
        let ys: Vec<f64> = knots.iter().map(|k| k.1).collect();
        let spline = CubicSpline::new(xs, ys)?;
        let (first, last) = (spline.xs[0], *spline.xs.last().unwrap());
        let a = last - first;
        if !(a > 0.0) {
            return Err(Error::Profile("empty knot span".into()));
        }
        if (first + last).abs() > 1e-9 * a {
            return Err(Error::Profile(format!(
                "knots must span a symmetric interval, got [{first}, {last}]"
            )));
        }
        let rough = spline.roughness() > 10.0;
        let profile = DensityProfile {
            a,
            family: Family::Table { spline, path: None },
            rough,
        };
        profile.validate_positive()?;
        Ok(profile)
    }

    /// Read a two-column x,Σ CSV (header optional) into a table profile.
    pub fn from_csv_path(path: &str) -> Result<Self> {
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(false)
            .flexible(false)
            .trim(csv::Trim::All)
            .comment(Some(b'#'))
            .from_path(path)
            .map_err(|e| Error::Profile(format!("cannot read {path}: {e}")))?;
        let mut knots = Vec::new();
        for (i, record) in reader.records().enumerate() {
            let record = record.map_err(|e| Error::Profile(format!("{path}: {e}")))?;
            if record.len() != 2 {
                return Err(Error::Profile(format!(
                    "{path}: row {} has {} fields, expected 2 (x, density)",
                    i + 1,
                    record.len()
                )));
            }
            let x = record[0].parse::<f64>();
            let y = record[1].parse::<f64>();
            match (x, y) {
                (Ok(x), Ok(y)) => knots.push((x, y)),
                _ if i == 0 => continue, // tolerate a header row
                _ => {
                    return Err(Error::Profile(format!(
                        "{path}: row {} is not numeric",
                        i + 1
                    )))
                }
            }
        }
        let mut profile = Self::from_knots(&knots)?;
        if let Family::Table { path: p, .. } = &mut profile.family {
            *p = Some(path.to_string());
        }
        Ok(profile)
    }

    /// Parse the CLI profile grammar: `uniform`, `borg:alpha=<f>`,
    /// `horgan-chan`, `oscillating:eps=<f>`, `gottlieb:base=<spec>,alpha=<f>`,
    /// `table:path=<csv>`.
    pub fn parse(spec: &str) -> Result<Self> {
        let spec = spec.trim();
        let (head, rest) = match spec.find(':') {
            Some(i) => (&spec[..i], &spec[i + 1..]),
            None => (spec, ""),
        };
        match head.to_ascii_lowercase().as_str() {
            "uniform" => {
                expect_no_params(spec, rest)?;
                Ok(Self::uniform())
            }
            "horgan-chan" | "horgan_chan" => {
                expect_no_params(spec, rest)?;
                Ok(Self::horgan_chan())
            }
            "borg" => Self::borg(parse_single_param(rest, "alpha", spec)?),
            "oscillating" => Self::oscillating(parse_single_param(rest, "eps", spec)?),
            "table" => {
                let path = rest.strip_prefix("path=").ok_or_else(|| {
                    Error::Usage(format!("expected table:path=<csv>, got '{spec}'"))
                })?;
                Self::from_csv_path(path)
            }
            "gottlieb" => {
                // alpha is always the trailing parameter so that the base
                // spec may itself contain ':' / ',' (nested transforms).
                let idx = rest.rfind(",alpha=").ok_or_else(|| {
                    Error::Usage(format!(
                        "expected gottlieb:base=<spec>,alpha=<f>, got '{spec}'"
                    ))
                })?;
                let base_spec = rest[..idx].strip_prefix("base=").ok_or_else(|| {
                    Error::Usage(format!(
                        "expected gottlieb:base=<spec>,alpha=<f>, got '{spec}'"
                    ))
                })?;
                let alpha: f64 = rest[idx + ",alpha=".len()..]
                    .parse()
                    .map_err(|_| Error::Usage(format!("bad alpha in '{spec}'")))?;
                Self::gottlieb(Self::parse(base_spec)?, alpha)
            }
            other => Err(Error::Usage(format!(
                "unknown density family '{other}' in '{spec}'"
            ))),
        }
    }

    /// String length a.
    pub fn length(&self) -> f64 {
        self.a
    }

    /// Half-width a/2.
    pub fn half(&self) -> f64 {
        0.5 * self.a
    }

    /// True when a table profile's spline looks too irregular for the
    /// smoothness the asymptotic formulas assume.
    pub fn is_rough(&self) -> bool {
        self.rough
    }

    pub fn family_name(&self) -> &'static str {
        match &self.family {
            Family::Uniform => "uniform",
            Family::Borg { .. } => "borg",
            Family::HorganChan => "horgan-chan",
            Family::Oscillating { .. } => "oscillating",
            Family::Gottlieb { .. } => "gottlieb",
            Family::Table { .. } => "table",
        }
    }

    fn check_domain(&self, x: f64) -> Result<()> {
        if x.is_finite() && x.abs() <= self.half() * (1.0 + 1e-12) {
            Ok(())
        } else {
            Err(Error::OutOfDomain { x, half: self.half() })
        }
    }

    /// Σ(x) with domain checking.
    pub fn evaluate(&self, x: f64) -> Result<f64> {
        self.check_domain(x)?;
        Ok(self.eval_raw(x))
    }

    /// Σ(x) without the domain guard, for quadrature inner loops whose
    /// nodes are interior by construction.
    pub fn eval_raw(&self, x: f64) -> f64 {
        match &self.family {
            Family::Uniform => 1.0,
            Family::Borg { alpha } => {
                let u = 1.0 + alpha * (x + 0.5);
                (1.0 + alpha) * (1.0 + alpha) / (u * u * u * u)
            }
            Family::HorganChan => 9.0 / (12.0 * x + 10.0),
            Family::Oscillating { eps } => {
                2.0 + (2.0 * std::f64::consts::PI * (x + 0.5) / eps).sin()
            }
            Family::Gottlieb { base, alpha } => {
                let (p, q, r, s) = moebius_coeffs(self.a, *alpha);
                let d = r * x + s;
                let j = p * s - q * r;
                let xi = (p * x + q) / d;
                let dxi = j / (d * d);
                dxi * dxi * base.eval_raw(xi)
            }
            Family::Table { spline, .. } => spline.eval(x),
        }
    }

    /// First derivative Σ′(x).
    pub fn d1(&self, x: f64) -> Result<f64> {
        self.check_domain(x)?;
        Ok(self.d1_raw(x))
    }

    pub fn d1_raw(&self, x: f64) -> f64 {
        match &self.family {
            Family::Uniform => 0.0,
            Family::Borg { alpha } => {
                let u = 1.0 + alpha * (x + 0.5);
                -4.0 * alpha * (1.0 + alpha) * (1.0 + alpha) / u.powi(5)
            }
            Family::HorganChan => {
                let u = 12.0 * x + 10.0;
                -108.0 / (u * u)
            }
            Family::Oscillating { eps } => {
                let th = 2.0 * std::f64::consts::PI / eps;
                th * (th * (x + 0.5)).cos()
            }
            Family::Gottlieb { base, alpha } => {
                let (xi, d1, d2, _) = self.moebius_derivatives(*alpha, x);
                2.0 * d1 * d2 * base.eval_raw(xi) + d1 * d1 * d1 * base.d1_raw(xi)
            }
            Family::Table { spline, .. } => spline.d1(x),
        }
    }

    /// Second derivative Σ″(x).
    pub fn d2(&self, x: f64) -> Result<f64> {
        self.check_domain(x)?;
        Ok(self.d2_raw(x))
    }

    pub fn d2_raw(&self, x: f64) -> f64 {
        match &self.family {
            Family::Uniform => 0.0,
            Family::Borg { alpha } => {
                let u = 1.0 + alpha * (x + 0.5);
                20.0 * alpha * alpha * (1.0 + alpha) * (1.0 + alpha) / u.powi(6)
            }
            Family::HorganChan => {
                let u = 12.0 * x + 10.0;
                2592.0 / (u * u * u)
            }
            Family::Oscillating { eps } => {
                let th = 2.0 * std::f64::consts::PI / eps;
                -th * th * (th * (x + 0.5)).sin()
            }
            Family::Gottlieb { base, alpha } => {
                let (xi, d1, d2, d3) = self.moebius_derivatives(*alpha, x);
                2.0 * d2 * d2 * base.eval_raw(xi)
                    + 2.0 * d1 * d3 * base.eval_raw(xi)
                    + 5.0 * d1 * d1 * d2 * base.d1_raw(xi)
                    + d1.powi(4) * base.d2_raw(xi)
            }
            Family::Table { spline, .. } => spline.d2(x),
        }
    }

    /// ξ(x) and its first three derivatives for the Möbius transform.
    fn moebius_derivatives(&self, alpha: f64, x: f64) -> (f64, f64, f64, f64) {
        let (p, q, r, s) = moebius_coeffs(self.a, alpha);
        let j = p * s - q * r;
        let d = r * x + s;
        let xi = (p * x + q) / d;
        let d1 = j / (d * d);
        let d2 = -2.0 * r * j / (d * d * d);
        let d3 = 6.0 * r * r * j / (d * d * d * d);
        (xi, d1, d2, d3)
    }

    /// Optical length σ(x) = ∫_{-a/2}^x √Σ(y) dy (analytic where the family
    /// allows, knot/period-aligned quadrature otherwise).
    pub fn sigma(&self, x: f64) -> Result<f64> {
        self.check_domain(x)?;
        let x = x.clamp(-self.half(), self.half());
        Ok(match &self.family {
            Family::Uniform => x + 0.5 * self.a,
            Family::Borg { alpha } => {
                let t = x + 0.5;
                (1.0 + alpha) * t / (1.0 + alpha * t)
            }
            Family::HorganChan => ((12.0 * x + 10.0).sqrt() - 2.0) / 2.0,
            Family::Gottlieb { base, alpha } => {
                let (p, q, r, s) = moebius_coeffs(self.a, *alpha);
                let xi = (p * x + q) / (r * x + s);
                base.sigma(xi.clamp(-base.half(), base.half()))?
            }
            Family::Oscillating { .. } | Family::Table { .. } => {
                if x <= -self.half() {
                    0.0
                } else {
                    let edges = self.panel_edges(-self.half(), x, 8);
                    quadrature::integrate_edges(|y| self.eval_raw(y).sqrt(), &edges, 16)
                }
            }
        })
    }

    /// Total optical length σ(a/2).
    pub fn total_sigma(&self) -> f64 {
        self.sigma(self.half()).expect("a/2 is in the domain")
    }

    /// Mean density ⟨Σ⟩ = (1/a) ∫ Σ dx.
    pub fn mean_density(&self) -> f64 {
        match &self.family {
            Family::Uniform => 1.0,
            Family::Borg { alpha } => {
                (alpha * alpha + 3.0 * alpha + 3.0) / (3.0 * (alpha + 1.0))
            }
            Family::HorganChan => 1.5 * std::f64::consts::LN_2,
            Family::Oscillating { eps } => {
                let th = 2.0 * std::f64::consts::PI / eps;
                2.0 + (1.0 - (th).cos()) / th
            }
            Family::Gottlieb { .. } | Family::Table { .. } => {
                let edges = self.panel_edges(-self.half(), self.half(), 16);
                quadrature::integrate_edges(|y| self.eval_raw(y), &edges, 16) / self.a
            }
        }
    }

    /// Interior x-values where quadrature panels should break: spline knots
    /// (the interpolant is only C² there) and oscillation half-periods.
    pub fn breakpoints(&self) -> Vec<f64> {
        match &self.family {
            Family::Uniform | Family::Borg { .. } | Family::HorganChan => Vec::new(),
            Family::Oscillating { eps } => {
                let mut pts = Vec::new();
                let mut k = 1usize;
                loop {
                    let x = -0.5 + 0.5 * eps * k as f64;
                    if x >= 0.5 - 1e-12 {
                        break;
                    }
                    pts.push(x);
                    k += 1;
                }
                pts
            }
            Family::Gottlieb { base, alpha } => {
                // pull base breakpoints back through the inverse Möbius map
                let (p, q, r, _s) = moebius_coeffs(self.a, *alpha);
                base.breakpoints()
                    .iter()
                    .map(|&xi| (p * xi - q) / (p - r * xi))
                    .collect()
            }
            Family::Table { spline, .. } => spline.xs[1..spline.xs.len() - 1].to_vec(),
        }
    }

    /// Panel edges over [lo, hi]: family breakpoints plus enough uniform
    /// subdivision to reach at least `min_panels` panels.
    pub fn panel_edges(&self, lo: f64, hi: f64, min_panels: usize) -> Vec<f64> {
        debug_assert!(hi >= lo);
        let span = hi - lo;
        if span <= f64::EPSILON * self.a {
            return vec![lo, hi];
        }
        let mut cuts = vec![lo, hi];
        let slack = 1e-13 * self.a;
        for b in self.breakpoints() {
            if b > lo + slack && b < hi - slack {
                cuts.push(b);
            }
        }
        cuts.sort_by(f64::total_cmp);
        cuts.dedup_by(|u, v| (*u - *v).abs() < slack);
        let target = span / min_panels.max(1) as f64;
        let mut edges = Vec::new();
        for w in cuts.windows(2) {
            let m = ((w[1] - w[0]) / target).ceil().max(1.0) as usize;
            for i in 0..m {
                edges.push(w[0] + (w[1] - w[0]) * i as f64 / m as f64);
            }
        }
        edges.push(hi);
        edges
    }

    /// Construction-time guard: Σ must be positive and finite across the
    /// interval (sampled at 1001 uniform points).
    fn validate_positive(&self) -> Result<()> {
        for i in 0..=1000 {
            let x = -self.half() + self.a * i as f64 / 1000.0;
            let v = self.eval_raw(x);
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::Profile(format!(
                    "density must be positive, got {v} at x = {x}"
                )));
            }
        }
        Ok(())
    }
}

fn expect_no_params(spec: &str, rest: &str) -> Result<()> {
    if rest.is_empty() {
        Ok(())
    } else {
        Err(Error::Usage(format!(
            "density '{spec}' takes no parameters"
        )))
    }
}

fn parse_single_param(rest: &str, key: &str, spec: &str) -> Result<f64> {
    rest.strip_prefix(key)
        .and_then(|r| r.strip_prefix('='))
        .and_then(|v| v.parse::<f64>().ok())
        .ok_or_else(|| Error::Usage(format!("expected {key}=<number> in '{spec}'")))
}

impl std::fmt::Display for DensityProfile {
    /// Renders the profile in the parse grammar (lossless for built-ins and
    /// path-backed tables).
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.family {
            Family::Uniform => write!(f, "uniform"),
            Family::Borg { alpha } => write!(f, "borg:alpha={alpha}"),
            Family::HorganChan => write!(f, "horgan-chan"),
            Family::Oscillating { eps } => write!(f, "oscillating:eps={eps}"),
            Family::Gottlieb { base, alpha } => {
                write!(f, "gottlieb:base={base},alpha={alpha}")
            }
            Family::Table { path: Some(p), .. } => write!(f, "table:path={p}"),
            Family::Table { spline, .. } => {
                write!(f, "table:<{} inline knots>", spline.xs.len())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn family_values() {
        let b0 = DensityProfile::borg(0.0).unwrap();
        assert_eq!(b0.evaluate(0.3).unwrap(), 1.0);
        let hc = DensityProfile::horgan_chan();
        assert_abs_diff_eq!(hc.evaluate(-0.5).unwrap(), 2.25, epsilon = 1e-15);
        let osc = DensityProfile::oscillating(0.3).unwrap();
        assert_abs_diff_eq!(osc.evaluate(-0.5).unwrap(), 2.0, epsilon = 1e-12);
    }

    #[test]
    fn means_and_sigmas() {
        let hc = DensityProfile::horgan_chan();
        assert_abs_diff_eq!(hc.mean_density(), 1.5 * std::f64::consts::LN_2, epsilon = 1e-15);
        assert_abs_diff_eq!(hc.sigma(0.5).unwrap(), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(hc.sigma(-0.5).unwrap(), 0.0, epsilon = 1e-15);
        for alpha in [-0.5, 1.0, 5.0] {
            let b = DensityProfile::borg(alpha).unwrap();
            assert_abs_diff_eq!(b.total_sigma(), 1.0, epsilon = 1e-14);
            let expect = (alpha * alpha + 3.0 * alpha + 3.0) / (3.0 * (alpha + 1.0));
            assert_abs_diff_eq!(b.mean_density(), expect, epsilon = 1e-14);
            // quadrature cross-check of the closed-form sigma
            let numeric = quadrature::integrate(|x| b.eval_raw(x).sqrt(), -0.5, 0.2, 20, 16);
            assert_abs_diff_eq!(b.sigma(0.2).unwrap(), numeric, epsilon = 1e-13);
        }
        // oscillating mean: 2 + (1 - cos(2π/ε))·ε/(2π)
        let eps = 0.37;
        let osc = DensityProfile::oscillating(eps).unwrap();
        let numeric = quadrature::integrate(|x| osc.eval_raw(x), -0.5, 0.5, 64, 16);
        assert_abs_diff_eq!(osc.mean_density(), numeric, epsilon = 1e-13);
    }

    #[test]
    fn gottlieb_transform_matches_borg() {
        // uniform base → Borg density, checked pointwise
        for alpha in [0.5, 2.0] {
            let g = DensityProfile::gottlieb(DensityProfile::uniform(), alpha).unwrap();
            let b = DensityProfile::borg(alpha).unwrap();
            for i in 0..=20 {
                let x = -0.5 + i as f64 / 20.0;
                assert_abs_diff_eq!(
                    g.evaluate(x).unwrap(),
                    b.evaluate(x).unwrap(),
                    epsilon = 1e-12
                );
                assert_abs_diff_eq!(g.d1_raw(x), b.d1_raw(x), epsilon = 1e-10);
                assert_abs_diff_eq!(g.d2_raw(x), b.d2_raw(x), epsilon = 1e-8);
            }
        }
        // α = 0 is the identity transform
        let id = DensityProfile::gottlieb(DensityProfile::horgan_chan(), 0.0).unwrap();
        for x in [-0.4, 0.0, 0.27] {
            assert_abs_diff_eq!(
                id.evaluate(x).unwrap(),
                DensityProfile::horgan_chan().evaluate(x).unwrap(),
                epsilon = 1e-15
            );
        }
        // Möbius pin: a=1, α=1 gives ξ(0) = 1/6, ξ′(0) = 8/9, Σ̃(0) = ξ′(0)²
        let g = DensityProfile::gottlieb(DensityProfile::uniform(), 1.0).unwrap();
        let (xi, d1, _, _) = g.moebius_derivatives(1.0, 0.0);
        assert_abs_diff_eq!(xi, 1.0 / 6.0, epsilon = 1e-15);
        assert_abs_diff_eq!(d1, 8.0 / 9.0, epsilon = 1e-15);
        assert_abs_diff_eq!(g.evaluate(0.0).unwrap(), 64.0 / 81.0, epsilon = 1e-15);
    }

    #[test]
    fn gottlieb_preserves_optical_length() {
        let base = DensityProfile::horgan_chan();
        let total = base.total_sigma();
        for alpha in [-0.4, 0.8, 3.0] {
            let g = DensityProfile::gottlieb(base.clone(), alpha).unwrap();
            assert_abs_diff_eq!(g.total_sigma(), total, epsilon = 1e-12);
            // σ̃ numeric vs the analytic pullback at an interior point
            let numeric = quadrature::integrate(|x| g.eval_raw(x).sqrt(), -0.5, 0.1, 40, 16);
            assert_abs_diff_eq!(g.sigma(0.1).unwrap(), numeric, epsilon = 1e-12);
        }
    }

    #[test]
    fn spline_reproduces_quadratics_and_converges() {
        let f = |x: f64| 2.0 + 0.5 * x + 0.75 * x * x;
        let knots: Vec<(f64, f64)> = (0..=10)
            .map(|i| {
                let x = -0.5 + i as f64 / 10.0;
                (x, f(x))
            })
            .collect();
        let p = DensityProfile::from_knots(&knots).unwrap();
        for i in 0..=50 {
            let x = -0.5 + i as f64 / 50.0;
            assert_abs_diff_eq!(p.evaluate(x).unwrap(), f(x), epsilon = 1e-12);
            assert_abs_diff_eq!(p.d1_raw(x), 0.5 + 1.5 * x, epsilon = 1e-10);
        }
        assert!(!p.is_rough());

        // O(h⁴) convergence on a smooth density
        let g = |x: f64| 2.0 + (3.1 * x).sin();
        let err = |n: usize| -> f64 {
            let knots: Vec<(f64, f64)> = (0..=n)
                .map(|i| {
                    let x = -0.5 + i as f64 / n as f64;
                    (x, g(x))
                })
                .collect();
            let p = DensityProfile::from_knots(&knots).unwrap();
            (0..=400)
                .map(|i| {
                    let x = -0.5 + i as f64 / 400.0;
                    (p.eval_raw(x) - g(x)).abs()
                })
                .fold(0.0, f64::max)
        };
        let (e20, e40) = (err(20), err(40));
        let ratio = e20 / e40;
        assert!(
            (6.0..60.0).contains(&ratio),
            "expected ~16x error drop, got {ratio} ({e20} -> {e40})"
        );
    }

    #[test]
    fn rough_table_flagged() {
        let mut knots = Vec::new();
        for i in 0..=40 {
            let x = -0.5 + i as f64 / 40.0;
            let noise = if i % 2 == 0 { 0.5 } else { -0.5 };
            knots.push((x, 2.0 + noise));
        }
        let p = DensityProfile::from_knots(&knots).unwrap();
        assert!(p.is_rough());
    }

    #[test]
    fn parse_round_trips() {
        for spec in [
            "uniform",
            "horgan-chan",
            "borg:alpha=2.5",
            "oscillating:eps=0.125",
            "gottlieb:base=horgan-chan,alpha=1",
            "gottlieb:base=gottlieb:base=uniform,alpha=0.5,alpha=2",
        ] {
            let p = DensityProfile::parse(spec).unwrap();
            let rendered = p.to_string();
            let q = DensityProfile::parse(&rendered).unwrap();
            for i in 0..=10 {
                let x = -0.5 + i as f64 / 10.0;
                assert_eq!(p.eval_raw(x), q.eval_raw(x), "{spec} vs {rendered}");
            }
        }
        assert!(DensityProfile::parse("borg:alpha=-1").is_err());
        assert!(DensityProfile::parse("borg:beta=1").is_err());
        assert!(DensityProfile::parse("oscillating:eps=0").is_err());
        assert!(DensityProfile::parse("ring").is_err());
        assert!(DensityProfile::parse("uniform:x=1").is_err());
    }

    #[test]
    fn domain_and_positivity_guards() {
        let hc = DensityProfile::horgan_chan();
        assert!(hc.evaluate(0.51).is_err());
        assert!(hc.d1(-0.7).is_err());
        // knots dipping negative between samples are rejected
        let bad: Vec<(f64, f64)> = (0..=8)
            .map(|i| {
                let x = -0.5 + i as f64 / 8.0;
                (x, if i == 4 { -0.1 } else { 1.0 })
            })
            .collect();
        assert!(DensityProfile::from_knots(&bad).is_err());
    }

    #[test]
    fn derivatives_match_finite_differences() {
        let profiles = [
            DensityProfile::borg(1.5).unwrap(),
            DensityProfile::horgan_chan(),
            DensityProfile::oscillating(0.5).unwrap(),
            DensityProfile::gottlieb(DensityProfile::horgan_chan(), 0.7).unwrap(),
        ];
        for p in &profiles {
            for &x in &[-0.31, 0.04, 0.4] {
                let h = 1e-5;
                let fd1 = (p.eval_raw(x + h) - p.eval_raw(x - h)) / (2.0 * h);
                let fd2 = (p.eval_raw(x + h) - 2.0 * p.eval_raw(x) + p.eval_raw(x - h)) / (h * h);
                assert_abs_diff_eq!(p.d1_raw(x), fd1, epsilon = 1e-5 * (1.0 + fd1.abs()));
                assert_abs_diff_eq!(p.d2_raw(x), fd2, epsilon = 1e-3 * (1.0 + fd2.abs()));
            }
        }
    }

    #[test]
    fn oscillating_breakpoints_tile_periods() {
        let p = DensityProfile::oscillating(0.25).unwrap();
        let bps = p.breakpoints();
        assert_eq!(bps.len(), 7); // half-period spacing 0.125 → 7 interior cuts
        let edges = p.panel_edges(-0.5, 0.5, 4);
        assert!(edges.len() >= 8);
        assert!(edges.windows(2).all(|w| w[1] > w[0]));
    }
}
