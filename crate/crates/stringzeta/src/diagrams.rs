//! Cycle diagrams for the x-ordered trace expansion.
//!
//! The n-th sum rule is a trace of an n-fold operator power, which unfolds
//! into a cyclic product of Green's-function factors
//! G(x₁,x₂)G(x₂,x₃)⋯G(xₙ,x₁) integrated over the hypercube.  Collapsing the
//! hypercube onto the ordered simplex x₁ > x₂ > ⋯ > xₙ turns each cyclic
//! visiting order of the n slots into a *diagram*: a Hamiltonian cycle on
//! the labels {1, …, n}, counted modulo rotation and reflection.  There are
//! (n−1)!/2 distinct diagrams for n ≥ 3 and exactly one for n = 1 and
//! n = 2; each simplex integral carries an overall prefactor of 1, 2, or 2n
//! (n = 1, 2, ≥ 3) — the number of hypercube sectors identified with it.
//!
//! On the simplex, a cycle edge {u, v} with u < v always has x_u ≥ x_v, so
//! its factor is the ordered branch G₊(x_u, x_v).
//!
//! The canonical form of a cycle starts at label 1 and orients so that the
//! second label is smaller than the last; e.g. `1-2-4-3-1` is canonical
//! while `4-1-2-3-4` and `1-3-4-2-1` are the same diagram.

use crate::error::{Error, Result};
use itertools::Itertools;

/// A Hamiltonian cycle on {1, …, n}, stored in canonical orientation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CycleDiagram {
    cycle: Vec<usize>,
}

impl CycleDiagram {
    /// Build a diagram from any rotation/orientation of a cycle, validating
    /// that `cycle` is a permutation of 1..=n and canonicalizing it.
    pub fn new(cycle: Vec<usize>) -> Result<Self> {
        let n = cycle.len();
        if n == 0 {
            return Err(Error::Parameter("empty cycle".into()));
        }
        let mut seen = vec![false; n + 1];
        for &v in &cycle {
            if v < 1 || v > n || seen[v] {
                return Err(Error::Parameter(format!(
                    "cycle {cycle:?} is not a permutation of 1..={n}"
                )));
            }
            seen[v] = true;
        }
        Ok(CycleDiagram {
            cycle: canonicalize(&cycle),
        })
    }

    /// Number of vertices n.
    pub fn order(&self) -> usize {
        self.cycle.len()
    }

    /// The canonical visiting order, starting at 1 (closing edge implied).
    pub fn cycle(&self) -> &[usize] {
        &self.cycle
    }

    /// Cycle edges as (min, max) label pairs.  A 1-cycle yields the
    /// self-loop (1, 1) — the diagonal factor; a 2-cycle yields (1, 2)
    /// twice, squaring the edge factor.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.cycle.len();
        if n == 1 {
            return vec![(1, 1)];
        }
        (0..n)
            .map(|i| {
                let u = self.cycle[i];
                let v = self.cycle[(i + 1) % n];
                (u.min(v), u.max(v))
            })
            .collect()
    }
}

impl std::fmt::Display for CycleDiagram {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for v in &self.cycle {
            write!(f, "{v}-")?;
        }
        write!(f, "{}", self.cycle[0])
    }
}

/// Rotate so label 1 leads, then pick the orientation whose second label is
/// the smaller of the two neighbours of 1.  Idempotent.
pub fn canonicalize(cycle: &[usize]) -> Vec<usize> {
    let n = cycle.len();
    let start = cycle.iter().position(|&v| v == 1).expect("label 1 present");
    let mut rotated: Vec<usize> = (0..n).map(|i| cycle[(start + i) % n]).collect();
    if n >= 3 && rotated[1] > rotated[n - 1] {
        rotated[1..].reverse();
    }
    rotated
}

/// Overall prefactor multiplying each simplex-ordered diagram integral.
pub fn prefactor(order: usize) -> f64 {
    match order {
        0 => 0.0,
        1 => 1.0,
        2 => 2.0,
        n => 2.0 * n as f64,
    }
}

/// Number of distinct diagrams: 1 for n = 1, 2 and (n−1)!/2 for n ≥ 3.
pub fn diagram_count(order: usize) -> usize {
    match order {
        0 => 0,
        1 | 2 => 1,
        n => (2..n).product::<usize>() / 2,
    }
}

/// Enumerate all distinct diagrams of the given order, canonically oriented,
/// in lexicographic order of their visiting sequence.
pub fn enumerate(order: usize) -> Result<Vec<CycleDiagram>> {
    if order == 0 {
        return Err(Error::Parameter("diagram order must be >= 1".into()));
    }
    if order <= 2 {
        return Ok(vec![CycleDiagram {
            cycle: (1..=order).collect(),
        }]);
    }
    // Fix label 1 first (rotations) and keep tails with first < last
    // (reflections); what survives is exactly the canonical set.
    let diagrams: Vec<CycleDiagram> = (2..=order)
        .permutations(order - 1)
        .filter(|tail| tail[0] < tail[order - 2])
        .map(|tail| {
            let mut cycle = Vec::with_capacity(order);
            cycle.push(1);
            cycle.extend(tail);
            CycleDiagram { cycle }
        })
        .collect();
    debug_assert_eq!(diagrams.len(), diagram_count(order));
    Ok(diagrams)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(diagram_count(1), 1);
        assert_eq!(diagram_count(2), 1);
        assert_eq!(diagram_count(3), 1);
        assert_eq!(diagram_count(4), 3);
        assert_eq!(diagram_count(5), 12);
        assert_eq!(diagram_count(9), 20160);
        for n in 1..=7 {
            assert_eq!(enumerate(n).unwrap().len(), diagram_count(n), "n={n}");
        }
    }

    #[test]
    fn order_four_gallery() {
        // the three distinct 4-cycles
        let found: Vec<String> = enumerate(4)
            .unwrap()
            .iter()
            .map(|d| d.to_string())
            .collect();
        assert_eq!(found, vec!["1-2-3-4-1", "1-2-4-3-1", "1-3-2-4-1"]);
    }

    #[test]
    fn canonical_orientation() {
        // rotations and reflections of 1-2-4-3-1 all canonicalize the same
        let variants: [&[usize]; 4] = [
            &[1, 2, 4, 3],
            &[2, 4, 3, 1],
            &[1, 3, 4, 2],
            &[3, 4, 2, 1],
        ];
        for v in variants {
            assert_eq!(canonicalize(v), vec![1, 2, 4, 3]);
        }
        // idempotent
        let c = canonicalize(&[5, 3, 1, 2, 4]);
        assert_eq!(canonicalize(&c), c);
    }

    #[test]
    fn edges_and_prefactors() {
        assert_eq!(
            CycleDiagram::new(vec![1]).unwrap().edges(),
            vec![(1, 1)]
        );
        assert_eq!(
            CycleDiagram::new(vec![1, 2]).unwrap().edges(),
            vec![(1, 2), (1, 2)]
        );
        // 1-3-2-4 already has second < last, so it is its own canonical form
        let d = CycleDiagram::new(vec![3, 2, 4, 1]).unwrap();
        assert_eq!(d.to_string(), "1-3-2-4-1");
        assert_eq!(d.edges(), vec![(1, 3), (2, 3), (2, 4), (1, 4)]);
        assert_eq!(prefactor(1), 1.0);
        assert_eq!(prefactor(2), 2.0);
        assert_eq!(prefactor(3), 6.0);
        assert_eq!(prefactor(9), 18.0);
    }

    #[test]
    fn rejects_non_permutations() {
        assert!(CycleDiagram::new(vec![]).is_err());
        assert!(CycleDiagram::new(vec![2, 2, 1]).is_err());
        assert!(CycleDiagram::new(vec![1, 2, 5]).is_err());
    }

    #[test]
    fn order_nine_enumeration_count() {
        let t = std::time::Instant::now();
        let all = enumerate(9).unwrap();
        assert_eq!(all.len(), 20160);
        // all distinct and all canonical
        let set: std::collections::HashSet<_> = all.iter().map(|d| d.cycle.clone()).collect();
        assert_eq!(set.len(), 20160);
        assert!(t.elapsed().as_secs_f64() < 10.0);
    }
}
