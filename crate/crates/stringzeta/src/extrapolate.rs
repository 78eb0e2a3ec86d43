//! Eigenvalue bounds and estimates from sum-rule tables, plus Shanks
//! acceleration.
//!
//! Every function here consumes spectral sums Z(s) = Σₙ Eₙ⁻ˢ and squeezes
//! eigenvalue information out of them.  Three mechanisms, in increasing
//! sophistication:
//!
//! **Bracketing.**  Since every Eₙ ≥ E₁ > 0,
//!
//! ```text
//!   Z(s+1)^(-1/(s+1))  ≤  E₁  ≤  Z(s)/Z(s+1),
//! ```
//!
//! the left from keeping only the n = 1 term of Z(s+1), the right from
//! Z(s) = Σ Eₙ·Eₙ^{-(s+1)} ≥ E₁ Z(s+1).  Both collapse onto E₁ as s grows,
//! at the geometric rate (E₁/E₂)^s.
//!
//! **Tail subtraction.**  The large-n spectrum follows the two-term law
//! Eₙ ≈ α εₙ + β (εₙ the homogeneous levels), so subtracting the asymptotic
//! tail Z̃₁⁺(s) = Σ_{n≥2} (α εₙ + β)^{-s} from Z(s) leaves almost exactly
//! E₁⁻ˢ:
//!
//! ```text
//!   E₁ ≈ [ Z(s) − Z̃₁⁺(s) ]^(-1/s),
//! ```
//!
//! accurate to the degree the true excited spectrum matches the two-term
//! model.  The same idea marches up the ladder: once E₁…E_{n-1} are known,
//! subtract their exact powers as well and use the tail that excludes the
//! first n modes.
//!
//! **Shanks acceleration.**  The error of either estimate sequence is close
//! to geometric in s, which is precisely the transient the Shanks transform
//!
//! ```text
//!   S(sₖ) = (s_{k+1} s_{k-1} − sₖ²) / (s_{k+1} + s_{k-1} − 2 sₖ)
//! ```
//!
//! annihilates.  Applied repeatedly it gains several digits per pass until
//! round-off in the differences dominates; a double-double variant pushes
//! that wall far enough to resolve ~17 significant digits.

use twofloat::TwoFloat;

use crate::asymptotics::{tail_sum, tail_sum_dd, AsymptoticCoefficients};
use crate::dd::{dd, dd_div, nth_root};
use crate::error::{Error, Result};
use crate::greens::BoundaryCondition;
use crate::sumrules::SumRuleTable;

/// Two-sided bracket for the ground-state eigenvalue derived from the
/// consecutive pair Z(s), Z(s+1).
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct BoundPair {
    /// Order s of the pair (the upper bound uses Z(s)/Z(s+1)).
    pub s: u32,
    pub lower: f64,
    pub upper: f64,
}

/// A labelled sequence of eigenvalue estimates indexed by sum-rule order.
#[derive(Debug, Clone, serde::Serialize)]
pub struct EstimateSequence {
    pub label: &'static str,
    pub orders: Vec<u32>,
    pub values: Vec<f64>,
}

fn positive_value(table: &SumRuleTable, s: u32) -> Result<f64> {
    let z = table
        .value(s)
        .ok_or_else(|| Error::Parameter(format!("sum-rule table has no order s={s}")))?;
    if !(z.is_finite() && z > 0.0) {
        return Err(Error::Numerical(format!(
            "sum rule Z({s}) = {z} is not positive; cannot form eigenvalue estimates"
        )));
    }
    Ok(z)
}

/// Euler-type bracketing bounds from every consecutive pair of orders in the
/// table:  Z(s+1)^(-1/(s+1)) ≤ E₁ ≤ Z(s)/Z(s+1).
///
/// For tables of boundary conditions with a zero mode the values must be the
/// spectral (projected) sums, otherwise the zero-mode residue contaminates
/// both sides.
pub fn euler_bounds(table: &SumRuleTable) -> Result<Vec<BoundPair>> {
    let mut out = Vec::new();
    for &s in &table.orders {
        if !table.orders.contains(&(s + 1)) {
            continue;
        }
        let zs = positive_value(table, s)?;
        let zs1 = positive_value(table, s + 1)?;
        out.push(BoundPair {
            s,
            lower: zs1.powf(-1.0 / f64::from(s + 1)),
            upper: zs / zs1,
        });
    }
    if out.is_empty() {
        return Err(Error::Parameter(
            "bracketing needs at least one consecutive pair of orders in the table".into(),
        ));
    }
    Ok(out)
}

/// The power-mean sequence w_s = Z(s)^{-1/s}, which increases monotonically
/// to E₁ from below.
pub fn waring_sequence(table: &SumRuleTable) -> Result<EstimateSequence> {
    if table.orders.is_empty() {
        return Err(Error::Parameter("sum-rule table is empty".into()));
    }
    let mut values = Vec::with_capacity(table.orders.len());
    for &s in &table.orders {
        let z = positive_value(table, s)?;
        values.push(z.powf(-1.0 / f64::from(s)));
    }
    Ok(EstimateSequence {
        label: "waring",
        orders: table.orders.clone(),
        values,
    })
}

/// Tail-subtracted ground-state estimate [Z(q) − Z̃₁⁺(q)]^{-1/q}.
pub fn berry_estimate(
    table: &SumRuleTable,
    coeffs: &AsymptoticCoefficients,
    bc: BoundaryCondition,
    q: u32,
) -> Result<f64> {
    let z = positive_value(table, q)?;
    let tail = tail_sum(coeffs, bc, 1, q)?.value;
    let head = z - tail;
    if !(head.is_finite() && head > 0.0) {
        return Err(Error::Numerical(format!(
            "asymptotic tail Z̃₁⁺({q}) = {tail} exceeds Z({q}) = {z}; \
             the two-term spectral model does not describe this string"
        )));
    }
    Ok(head.powf(-1.0 / f64::from(q)))
}

/// [`berry_estimate`] at every order the table carries.
pub fn berry_sequence(
    table: &SumRuleTable,
    coeffs: &AsymptoticCoefficients,
    bc: BoundaryCondition,
) -> Result<EstimateSequence> {
    if table.orders.is_empty() {
        return Err(Error::Parameter("sum-rule table is empty".into()));
    }
    let mut values = Vec::with_capacity(table.orders.len());
    for &s in &table.orders {
        values.push(berry_estimate(table, coeffs, bc, s)?);
    }
    Ok(EstimateSequence {
        label: "berry",
        orders: table.orders.clone(),
        values,
    })
}

/// Estimate for the n-th eigenvalue once E₁ … E_{n-1} are known.
///
/// Works at effective order s = q − n + 1: subtracts from Z(s) both the
/// asymptotic tail beyond mode n and the exact powers of the known modes,
///
/// ```text
///   Eₙ ≈ [ Z(s) − Z̃ₙ⁺(s) − Σ_{j<n} Eⱼ^{-s} ]^(-1/s).
/// ```
///
/// `known` must hold at least n−1 leading eigenvalues (extra entries are
/// ignored).
pub fn excited_estimate(
    table: &SumRuleTable,
    coeffs: &AsymptoticCoefficients,
    bc: BoundaryCondition,
    n: usize,
    q: u32,
    known: &[f64],
) -> Result<f64> {
    if n == 0 {
        return Err(Error::Parameter("mode index must be at least 1".into()));
    }
    if known.len() + 1 < n {
        return Err(Error::Parameter(format!(
            "estimating mode {n} needs {} known lower modes, got {}",
            n - 1,
            known.len()
        )));
    }
    let s64 = i64::from(q) - (n as i64) + 1;
    if s64 < 1 {
        return Err(Error::Parameter(format!(
            "effective order q − n + 1 = {s64} must be at least 1 (q = {q}, n = {n})"
        )));
    }
    let s = s64 as u32;
    let z = positive_value(table, s)?;
    let tail = tail_sum(coeffs, bc, n, s)?.value;
    let mut head = z - tail;
    for &e in &known[..n - 1] {
        if !(e.is_finite() && e > 0.0) {
            return Err(Error::Parameter(format!(
                "known eigenvalue {e} is not positive"
            )));
        }
        head -= e.powi(-(s as i32));
    }
    if !(head.is_finite() && head > 0.0) {
        return Err(Error::Numerical(format!(
            "subtracted sum rule at order {s} is {head}; no room left for mode {n}"
        )));
    }
    Ok(head.powf(-1.0 / f64::from(s)))
}

/// Relative threshold below which the Shanks denominator counts as zero.
const SHANKS_STALL_F64: f64 = 1e-14;
const SHANKS_STALL_DD: f64 = 1e-29;

/// One Shanks pass.  Returns the transformed sequence (two entries shorter)
/// and a per-entry stall flag: where the second difference vanished the
/// original middle value is copied through and flagged.
pub fn shanks(seq: &[f64]) -> Result<(Vec<f64>, Vec<bool>)> {
    if seq.len() < 3 {
        return Err(Error::Parameter(format!(
            "Shanks needs at least 3 entries, got {}",
            seq.len()
        )));
    }
    let mut out = Vec::with_capacity(seq.len() - 2);
    let mut stalled = Vec::with_capacity(seq.len() - 2);
    for w in seq.windows(3) {
        let (a, b, c) = (w[0], w[1], w[2]);
        let den = c + a - 2.0 * b;
        let scale = a.abs() + 2.0 * b.abs() + c.abs();
        if den.abs() <= SHANKS_STALL_F64 * scale {
            out.push(b);
            stalled.push(true);
        } else {
            // b + Δ²-free form: (c·a − b²)/den rearranged to avoid the
            // catastrophic cancellation of the naive numerator.
            let d1 = c - b;
            out.push(c - d1 * d1 / den);
            stalled.push(false);
        }
    }
    Ok((out, stalled))
}

/// Triangular table of repeated Shanks passes.
///
/// `columns[0]` is the input; `columns[k]` is the k-th transform, two entries
/// shorter than its parent.  `stalled[k]` marks entries of column k+1 that
/// were copied through a vanishing denominator; once a column stalls anywhere
/// the deeper columns inherit noise, so [`ShanksTable::deepest`] walks back
/// to the last clean column.
#[derive(Debug, Clone, serde::Serialize)]
pub struct ShanksTable {
    pub columns: Vec<Vec<f64>>,
    pub stalled: Vec<Vec<bool>>,
}

impl ShanksTable {
    /// Number of transforms actually applied.
    pub fn depth(&self) -> usize {
        self.columns.len() - 1
    }

    /// Final value of the deepest column that contains no stalled entry,
    /// together with its depth.
    pub fn deepest(&self) -> (f64, usize) {
        let mut best = (self.columns[0][self.columns[0].len() - 1], 0usize);
        for k in 1..self.columns.len() {
            if self.stalled[k - 1].iter().any(|&f| f) {
                break;
            }
            best = (self.columns[k][self.columns[k].len() - 1], k);
        }
        best
    }
}

/// Apply Shanks repeatedly, up to `max_depth` times or until fewer than
/// three entries remain.
pub fn shanks_table(seq: &[f64], max_depth: usize) -> Result<ShanksTable> {
    if seq.len() < 3 {
        return Err(Error::Parameter(format!(
            "Shanks needs at least 3 entries, got {}",
            seq.len()
        )));
    }
    let mut columns = vec![seq.to_vec()];
    let mut stalled = Vec::new();
    while columns.last().unwrap().len() >= 3 && columns.len() <= max_depth {
        let (next, flags) = shanks(columns.last().unwrap())?;
        columns.push(next);
        stalled.push(flags);
    }
    Ok(ShanksTable { columns, stalled })
}

/// Double-double Shanks pass; the quotient uses [`dd_div`] because the
/// library's own double-double division loses half its digits.
pub fn shanks_dd(seq: &[TwoFloat]) -> Result<(Vec<TwoFloat>, Vec<bool>)> {
    if seq.len() < 3 {
        return Err(Error::Parameter(format!(
            "Shanks needs at least 3 entries, got {}",
            seq.len()
        )));
    }
    let mut out = Vec::with_capacity(seq.len() - 2);
    let mut stalled = Vec::with_capacity(seq.len() - 2);
    for w in seq.windows(3) {
        let (a, b, c) = (w[0], w[1], w[2]);
        let den = c + a - b * 2.0;
        let scale = a.abs() + b.abs() * 2.0 + c.abs();
        if den.abs().hi() <= SHANKS_STALL_DD * scale.hi() {
            out.push(b);
            stalled.push(true);
        } else {
            let d1 = c - b;
            out.push(c - dd_div(d1 * d1, den));
            stalled.push(false);
        }
    }
    Ok((out, stalled))
}

/// Double-double analogue of [`shanks_table`].
#[derive(Debug, Clone)]
pub struct ShanksTableDd {
    pub columns: Vec<Vec<TwoFloat>>,
    pub stalled: Vec<Vec<bool>>,
}

impl ShanksTableDd {
    pub fn depth(&self) -> usize {
        self.columns.len() - 1
    }

    pub fn deepest(&self) -> (TwoFloat, usize) {
        let mut best = (self.columns[0][self.columns[0].len() - 1], 0usize);
        for k in 1..self.columns.len() {
            if self.stalled[k - 1].iter().any(|&f| f) {
                break;
            }
            best = (self.columns[k][self.columns[k].len() - 1], k);
        }
        best
    }
}

pub fn shanks_table_dd(seq: &[TwoFloat], max_depth: usize) -> Result<ShanksTableDd> {
    if seq.len() < 3 {
        return Err(Error::Parameter(format!(
            "Shanks needs at least 3 entries, got {}",
            seq.len()
        )));
    }
    let mut columns = vec![seq.to_vec()];
    let mut stalled = Vec::new();
    while columns.last().unwrap().len() >= 3 && columns.len() <= max_depth {
        let (next, flags) = shanks_dd(columns.last().unwrap())?;
        columns.push(next);
        stalled.push(flags);
    }
    Ok(ShanksTableDd { columns, stalled })
}

/// Double-double Berry sequence from double-double sum-rule values: entry q
/// is [Z(q) − Z̃₁⁺(q)]^{-1/q}, everything carried in TwoFloat.
pub fn berry_sequence_dd(
    orders: &[u32],
    zeta_dd: &[TwoFloat],
    coeffs: &AsymptoticCoefficients,
    bc: BoundaryCondition,
) -> Result<Vec<TwoFloat>> {
    if orders.len() != zeta_dd.len() {
        return Err(Error::Parameter(format!(
            "orders ({}) and values ({}) differ in length",
            orders.len(),
            zeta_dd.len()
        )));
    }
    let alpha = dd(coeffs.alpha);
    let beta = dd(coeffs.beta);
    let a = dd(coeffs.a);
    let mut out = Vec::with_capacity(orders.len());
    for (&q, &z) in orders.iter().zip(zeta_dd) {
        if q == 0 {
            return Err(Error::Parameter("order 0 sum rule is divergent".into()));
        }
        let tail = tail_sum_dd(alpha, beta, a, bc, 1, q)?;
        let head = z - tail;
        if head.hi() <= 0.0 {
            return Err(Error::Numerical(format!(
                "double-double tail at order {q} exceeds the sum rule"
            )));
        }
        out.push(dd_div(dd(1.0), nth_root(head, q)));
    }
    Ok(out)
}
