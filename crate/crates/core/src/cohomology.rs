//! Line-bundle cohomology on products of projective lines.

use serde::{Deserialize, Serialize};

/// `O(a_1) ⊠ ... ⊠ O(a_n)` on `(P^1)^n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LineBundleOnP1Product {
    pub factor_degrees: Vec<i64>,
}

impl LineBundleOnP1Product {
    pub fn new(factor_degrees: Vec<i64>) -> Self {
        LineBundleOnP1Product { factor_degrees }
    }

    /// `L^{⊗i}`.
    pub fn power(&self, i: i64) -> Self {
        LineBundleOnP1Product { factor_degrees: self.factor_degrees.iter().map(|a| a * i).collect() }
    }
}

/// `dim H^d(P^1, O(deg))`.
pub fn h_dim_p1(d: u32, deg: i64) -> u64 {
    match d {
        0 => (deg + 1).max(0) as u64,
        1 => (-deg - 1).max(0) as u64,
        _ => 0,
    }
}

/// Künneth: `Σ_{e_1 + ... + e_n = d} Π_j h^{e_j}(P^1, O(a_j))`.
pub fn h_dim_product(d: u32, bundle: &LineBundleOnP1Product) -> u64 {
    // each factor contributes only in degrees 0 and 1
    let mut by_degree = vec![1u64];
    for &a in &bundle.factor_degrees {
        let (h0, h1) = (h_dim_p1(0, a), h_dim_p1(1, a));
        let mut next = vec![0u64; by_degree.len() + 1];
        for (e, c) in by_degree.iter().enumerate() {
            next[e] += c * h0;
            next[e + 1] += c * h1;
        }
        by_degree = next;
    }
    by_degree.get(d as usize).copied().unwrap_or(0)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub factor: usize,
    pub degree: u32,
    pub power: i64,
    pub dimension: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DanilovReport {
    pub holds: bool,
    pub i_max: i64,
    pub violations: Vec<Violation>,
}

/// Checks `H^d(V_j, L_j^{⊗i}) = 0` for `d ∈ {1, 2}`, every factor `j` and
/// `0 <= i <= i_max`. For the closed form the sample is conclusive once all
/// degrees are non-negative: `h^1` and `h^2` then vanish for every `i >= 0`.
pub fn check_danilov_hypothesis(factors: &[LineBundleOnP1Product], i_max: i64) -> DanilovReport {
    let mut violations = Vec::new();
    for (j, bundle) in factors.iter().enumerate() {
        for i in 0..=i_max {
            let power = bundle.power(i);
            for degree in [1, 2] {
                let dimension = h_dim_product(degree, &power);
                if dimension != 0 {
                    violations.push(Violation { factor: j, degree, power: i, dimension });
                }
            }
        }
    }
    DanilovReport { holds: violations.is_empty(), i_max, violations }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn projective_line() {
        assert_eq!(h_dim_p1(1, 0), 0);
        assert_eq!(h_dim_p1(0, 0), 1);
        assert_eq!(h_dim_p1(1, -2), 1);
        assert_eq!(h_dim_p1(2, -5), 0);
    }

    #[test]
    fn products() {
        assert_eq!(h_dim_product(0, &LineBundleOnP1Product::new(vec![2, 1])), 6);
        assert_eq!(h_dim_product(2, &LineBundleOnP1Product::new(vec![-2, -2])), 1);
        assert_eq!(h_dim_product(3, &LineBundleOnP1Product::new(vec![-2, -2])), 0);
        assert_eq!(h_dim_product(0, &LineBundleOnP1Product::new(vec![])), 1);
        for i in 0..=20 {
            assert_eq!(h_dim_product(1, &LineBundleOnP1Product::new(vec![2 * i, i])), 0);
        }
    }

    #[test]
    fn hypothesis() {
        assert!(check_danilov_hypothesis(&[LineBundleOnP1Product::new(vec![2, 1])], 50).holds);
        let r = check_danilov_hypothesis(&[LineBundleOnP1Product::new(vec![-1])], 3);
        assert!(!r.holds);
        assert_eq!(r.violations[0], Violation { factor: 0, degree: 1, power: 2, dimension: 1 });
        assert!(check_danilov_hypothesis(&[], 5).holds);
    }
}
