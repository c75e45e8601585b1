use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::invariants::{
    clique_size, is_perfect_lovasz, stability_size, within_deficiency, PERFECT_SCAN_MAX,
    SUBSET_SCAN_MAX,
};
use crate::recognition::is_threshold;

/// A hereditary graph class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClassPredicate {
    /// `alpha(H) + omega(H) >= |V(H)|` for every induced `H`.
    SumPerfect,
    Threshold,
    /// Lovász form: `alpha(H) * omega(H) >= |V(H)|` for every induced `H`.
    Perfect,
    /// `alpha(H) + omega(H) >= |V(H)| - c` for every induced `H`.
    Deficiency(u32),
}

impl ClassPredicate {
    /// Whole-class membership, checked over every induced subgraph.
    pub fn holds(&self, g: &Graph) -> Result<bool> {
        match *self {
            ClassPredicate::SumPerfect => within_deficiency(g, 0),
            ClassPredicate::Deficiency(c) => within_deficiency(g, c as i64),
            ClassPredicate::Perfect => is_perfect_lovasz(g),
            ClassPredicate::Threshold => Ok(is_threshold(g)),
        }
    }

    /// Condition on `g` alone. When every one-vertex deletion of `g` is in
    /// the class, `g` is in the class exactly when this holds.
    pub fn local(&self, g: &Graph) -> bool {
        let n = g.n();
        match *self {
            ClassPredicate::SumPerfect => stability_size(g) + clique_size(g) >= n,
            ClassPredicate::Deficiency(c) => stability_size(g) + clique_size(g) + c as usize >= n,
            ClassPredicate::Perfect => stability_size(g) * clique_size(g) >= n,
            ClassPredicate::Threshold => {
                n == 0 || (0..n).any(|v| g.degree(v) == 0 || g.degree(v) == n - 1)
            }
        }
    }

    /// Largest order [`ClassPredicate::holds`] accepts.
    pub fn envelope(&self) -> usize {
        match self {
            ClassPredicate::Perfect => PERFECT_SCAN_MAX,
            ClassPredicate::Threshold => crate::graph::MAX_VERTICES,
            _ => SUBSET_SCAN_MAX,
        }
    }
}

impl fmt::Display for ClassPredicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassPredicate::SumPerfect => f.write_str("sum-perfect"),
            ClassPredicate::Threshold => f.write_str("threshold"),
            ClassPredicate::Perfect => f.write_str("perfect"),
            ClassPredicate::Deficiency(c) => write!(f, "deficiency:{c}"),
        }
    }
}

impl FromStr for ClassPredicate {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sum-perfect" => Ok(ClassPredicate::SumPerfect),
            "threshold" => Ok(ClassPredicate::Threshold),
            "perfect" => Ok(ClassPredicate::Perfect),
            _ => s
                .strip_prefix("deficiency:")
                .and_then(|c| c.parse().ok())
                .map(ClassPredicate::Deficiency)
                .ok_or_else(|| Error::UnknownClass(s.to_string())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for p in [
            ClassPredicate::SumPerfect,
            ClassPredicate::Threshold,
            ClassPredicate::Perfect,
            ClassPredicate::Deficiency(3),
        ] {
            assert_eq!(p.to_string().parse::<ClassPredicate>().unwrap(), p);
        }
        assert!("deficiency:x".parse::<ClassPredicate>().is_err());
        assert!("chordal".parse::<ClassPredicate>().is_err());
    }

    #[test]
    fn deficiency_zero_is_sum_perfect() {
        let c5 = Graph::cycle(5).unwrap();
        assert!(!ClassPredicate::Deficiency(0).holds(&c5).unwrap());
        assert!(ClassPredicate::Deficiency(1).holds(&c5).unwrap());
        assert!(!ClassPredicate::SumPerfect.local(&c5));
    }

    #[test]
    fn local_threshold_needs_isolated_or_dominating() {
        assert!(!ClassPredicate::Threshold.local(&Graph::cycle(4).unwrap()));
        assert!(ClassPredicate::Threshold.local(&Graph::complete_bipartite(1, 3).unwrap()));
        assert!(ClassPredicate::Perfect.local(&Graph::cycle(4).unwrap()));
        assert!(!ClassPredicate::Perfect.local(&Graph::cycle(5).unwrap()));
    }
}
