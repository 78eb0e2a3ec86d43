//! Gauss–Legendre quadrature: single rules, composite panels, and helpers.
//!
//! Nodes are the roots of the Legendre polynomial P_n, found by Newton
//! iteration from the Tricomi cosine initial guess; weights follow from
//! w_i = 2 / ((1 - x_i²) P_n'(x_i)²).  For the orders used in this crate
//! (n <= 64) the nodes converge to machine precision in a handful of steps.
//!
//! Composite rules subdivide an interval into equal panels (or panels with
//! prescribed edges, used to keep spline knots and Green's-function kinks on
//! panel boundaries, where they cannot spoil the spectral convergence of the
//! rule inside each panel).

use std::sync::Mutex;

/// A quadrature rule on [-1, 1].
#[derive(Debug, Clone)]
pub struct Rule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

fn legendre_and_derivative(n: usize, x: f64) -> (f64, f64) {
    // recurrence (k+1) P_{k+1} = (2k+1) x P_k - k P_{k-1}
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 1..n {
        let p2 = ((2 * k + 1) as f64 * x * p1 - k as f64 * p0) / (k + 1) as f64;
        p0 = p1;
        p1 = p2;
    }
    // P_n'(x) = n (x P_n - P_{n-1}) / (x² - 1)
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

fn compute_rule(n: usize) -> Rule {
    assert!(n >= 1, "Gauss-Legendre rule needs at least one node");
    if n == 1 {
        return Rule {
            nodes: vec![0.0],
            weights: vec![2.0],
        };
    }
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // Tricomi initial guess for the i-th root (descending order)
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..50 {
            let (p, dp) = legendre_and_derivative(n, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, dp) = legendre_and_derivative(n, x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
        let (_, dp) = legendre_and_derivative(n, 0.0);
        weights[n / 2] = 2.0 / (dp * dp);
    }
    Rule { nodes, weights }
}

/// Cached Gauss–Legendre rule with `n` nodes on [-1, 1].
pub fn gauss_legendre(n: usize) -> Rule {
    static CACHE: Mutex<Vec<Option<Rule>>> = Mutex::new(Vec::new());
    let mut cache = CACHE.lock().unwrap();
    if cache.len() <= n {
        cache.resize(n + 1, None);
    }
    cache[n].get_or_insert_with(|| compute_rule(n)).clone()
}

/// Composite rule: `panels` equal panels of `per_panel` nodes over [x0, x1].
pub fn composite(x0: f64, x1: f64, panels: usize, per_panel: usize) -> (Vec<f64>, Vec<f64>) {
    let rule = gauss_legendre(per_panel);
    let mut xs = Vec::with_capacity(panels * per_panel);
    let mut ws = Vec::with_capacity(panels * per_panel);
    for p in 0..panels {
        let a = x0 + (x1 - x0) * p as f64 / panels as f64;
        let b = x0 + (x1 - x0) * (p + 1) as f64 / panels as f64;
        let c = 0.5 * (a + b);
        let h = 0.5 * (b - a);
        for (t, w) in rule.nodes.iter().zip(&rule.weights) {
            xs.push(c + h * t);
            ws.push(h * w);
        }
    }
    (xs, ws)
}

/// Composite rule over prescribed panel edges (must be strictly increasing).
pub fn composite_edges(edges: &[f64], per_panel: usize) -> (Vec<f64>, Vec<f64>) {
    let rule = gauss_legendre(per_panel);
    let mut xs = Vec::new();
    let mut ws = Vec::new();
    for win in edges.windows(2) {
        let (a, b) = (win[0], win[1]);
        let c = 0.5 * (a + b);
        let h = 0.5 * (b - a);
        for (t, w) in rule.nodes.iter().zip(&rule.weights) {
            xs.push(c + h * t);
            ws.push(h * w);
        }
    }
    (xs, ws)
}

/// Integrate a function over [x0, x1] with a composite Gauss–Legendre rule.
pub fn integrate<F: Fn(f64) -> f64>(f: F, x0: f64, x1: f64, panels: usize, per_panel: usize) -> f64 {
    let (xs, ws) = composite(x0, x1, panels, per_panel);
    xs.iter().zip(&ws).map(|(&x, &w)| w * f(x)).sum()
}

/// Integrate with panel edges pinned to the given breakpoints.
pub fn integrate_edges<F: Fn(f64) -> f64>(f: F, edges: &[f64], per_panel: usize) -> f64 {
    let (xs, ws) = composite_edges(edges, per_panel);
    xs.iter().zip(&ws).map(|(&x, &w)| w * f(x)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gl_rule_is_exact_for_polynomials() {
        // n-node Gauss-Legendre is exact for degree 2n-1
        for n in [2usize, 5, 8, 24] {
            let rule = gauss_legendre(n);
            for deg in 0..(2 * n) {
                let quad: f64 = rule
                    .nodes
                    .iter()
                    .zip(&rule.weights)
                    .map(|(&x, &w)| w * x.powi(deg as i32))
                    .sum();
                let exact = if deg % 2 == 0 {
                    2.0 / (deg as f64 + 1.0)
                } else {
                    0.0
                };
                assert!(
                    (quad - exact).abs() < 5e-14,
                    "n={n} deg={deg}: {quad} vs {exact}"
                );
            }
        }
    }

    #[test]
    fn gl_weights_sum_to_two() {
        for n in 1..=40 {
            let rule = gauss_legendre(n);
            let s: f64 = rule.weights.iter().sum();
            assert!((s - 2.0).abs() < 1e-13, "n={n}: weight sum {s}");
        }
    }

    #[test]
    fn composite_integrates_smooth_functions() {
        // ∫_0^π sin = 2
        let v = integrate(f64::sin, 0.0, std::f64::consts::PI, 8, 10);
        assert!((v - 2.0).abs() < 1e-14);
        // ∫_{-1/2}^{1/2} 9/(12x+10) dx = (3/4) log 4
        let v = integrate(|x| 9.0 / (12.0 * x + 10.0), -0.5, 0.5, 16, 10);
        assert!((v - 1.5 * std::f64::consts::LN_2).abs() < 1e-14);
    }

    #[test]
    fn composite_edges_matches_uniform() {
        let edges: Vec<f64> = (0..=7).map(|i| i as f64 / 7.0).collect();
        let a = integrate_edges(|x| (3.0 * x).cos(), &edges, 12);
        let b = integrate(|x| (3.0 * x).cos(), 0.0, 1.0, 7, 12);
        assert!((a - b).abs() < 1e-15);
    }
}
