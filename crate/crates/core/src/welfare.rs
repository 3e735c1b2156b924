//! The objective: the geometric mean of bundle valuations, kept both as an
//! exact big-integer product (when affordable) and as a log-domain value.

use std::cmp::Ordering;

use num::{BigUint, One, Zero};

use crate::allocation::Allocation;
use crate::error::Result;
use crate::instance::Instance;
use crate::numeric::ln_biguint;

/// Exact products are kept while `n * m` stays below this; beyond it only
/// the log-domain value is used for comparisons.
const EXACT_PRODUCT_LIMIT: usize = 1 << 16;

/// Absolute tolerance, in the log domain, for welfare comparisons that
/// cannot use exact products.
pub const LOG_TOLERANCE: f64 = 1e-9;

/// The Nash social welfare of an allocation: `(prod_i v(pi_i))^(1/n)`.
///
/// `log_value` is the natural log of the geometric mean; an empty bundle
/// yields `-inf` (welfare zero). `exact_product` is `prod_i v(pi_i)` when
/// the instance is small enough to keep it.
#[derive(Debug, Clone, PartialEq)]
pub struct WelfareValue {
    pub log_value: f64,
    pub exact_product: Option<BigUint>,
    n: usize,
}

impl WelfareValue {
    pub fn from_valuations(valuations: &[u128]) -> Self {
        Self::from_valuations_with_limit(valuations, EXACT_PRODUCT_LIMIT)
    }

    fn from_valuations_with_limit(valuations: &[u128], limit: usize) -> Self {
        let n = valuations.len();
        if n == 0 {
            // Identity value for the empty instance so that recombination
            // products compose: zero agents contribute factor one.
            return Self {
                log_value: 0.0,
                exact_product: Some(BigUint::one()),
                n: 0,
            };
        }
        let log_value = if valuations.iter().any(|&v| v == 0) {
            f64::NEG_INFINITY
        } else {
            valuations.iter().map(|&v| (v as f64).ln()).sum::<f64>() / n as f64
        };
        let exact_product = if n <= limit {
            let mut p = BigUint::one();
            for &v in valuations {
                p *= BigUint::from(v);
            }
            Some(p)
        } else {
            None
        };
        Self {
            log_value,
            exact_product,
            n,
        }
    }

    pub fn num_agents(&self) -> usize {
        self.n
    }

    /// The welfare as a plain float, `exp(log_value)`.
    pub fn value(&self) -> f64 {
        self.log_value.exp()
    }

    pub fn is_zero(&self) -> bool {
        self.log_value == f64::NEG_INFINITY
    }

    /// Orders two welfare values for the same instance. Uses the exact
    /// products when both are present; otherwise compares log values with
    /// an absolute tolerance of [`LOG_TOLERANCE`] (ties within tolerance
    /// are `Equal`).
    pub fn cmp_welfare(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.n, other.n, "welfare values from different instances");
        if let (Some(a), Some(b)) = (&self.exact_product, &other.exact_product) {
            return a.cmp(b);
        }
        let (a, b) = (self.log_value, other.log_value);
        if a == b {
            return Ordering::Equal;
        }
        if (a - b).abs() <= LOG_TOLERANCE {
            Ordering::Equal
        } else if a < b {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }
}

/// Computes the Nash social welfare of `alloc` for `inst`, validating the
/// partition first.
pub fn nash_welfare(inst: &Instance, alloc: &Allocation) -> Result<WelfareValue> {
    alloc.validate(inst)?;
    Ok(WelfareValue::from_valuations(alloc.valuations()))
}

/// The generalized mean `f_q` of the bundle valuations:
/// `((1/n) sum_i v(pi_i)^q)^(1/q)` for `q != 0`, and the geometric mean at
/// `q = 0`. Computed in the log domain (log-sum-exp) so extreme `q` stays
/// finite; as `q -> -inf` the value approaches the minimum valuation.
///
/// An empty bundle makes `f_q` zero-or-undefined for `q <= 0`; that case is
/// signaled as `-inf`.
pub fn generalized_mean(inst: &Instance, alloc: &Allocation, q: f64) -> Result<f64> {
    alloc.validate(inst)?;
    let vals = alloc.valuations();
    let n = vals.len();
    if n == 0 {
        return Ok(1.0);
    }
    if vals.iter().any(|&v| v == 0) {
        if q <= 0.0 {
            return Ok(f64::NEG_INFINITY);
        }
        // 0^q = 0 contributes nothing for q > 0; fall through with the
        // zero terms excluded from the log-sum-exp.
    }
    if q == 0.0 {
        if vals.iter().any(|&v| v == 0) {
            return Ok(f64::NEG_INFINITY);
        }
        let mean_log = vals.iter().map(|&v| (v as f64).ln()).sum::<f64>() / n as f64;
        return Ok(mean_log.exp());
    }
    // log f_q = (LSE_i(q ln v_i) - ln n) / q over the positive valuations.
    let terms: Vec<f64> = vals
        .iter()
        .filter(|&&v| v > 0)
        .map(|&v| q * (v as f64).ln())
        .collect();
    if terms.is_empty() {
        return Ok(0.0);
    }
    let max = terms.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let lse = max + terms.iter().map(|t| (t - max).exp()).sum::<f64>().ln();
    Ok(((lse - (n as f64).ln()) / q).exp())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn welfare_of(n: usize, utils: Vec<u64>, bundles: Vec<Vec<usize>>) -> WelfareValue {
        let inst = Instance::new(n, utils).unwrap();
        let alloc = Allocation::new(&inst, bundles).unwrap();
        nash_welfare(&inst, &alloc).unwrap()
    }

    #[test]
    fn single_agent_takes_everything() {
        let w = welfare_of(1, vec![5], vec![vec![0]]);
        assert_eq!(w.exact_product, Some(BigUint::from(5u32)));
        assert!((w.value() - 5.0).abs() < 1e-12);
    }

    #[test]
    fn balanced_split_of_3221() {
        // Bundles {1,4} and {2,3}: valuations (4,4), f = sqrt(16) = 4.
        // Brute force over all 2^4 splits (see the oracle tests) confirms
        // this is also the optimum.
        let w = welfare_of(2, vec![3, 2, 2, 1], vec![vec![0, 3], vec![1, 2]]);
        assert_eq!(w.exact_product, Some(BigUint::from(16u32)));
        assert!((w.value() - 4.0).abs() < 1e-12);
    }

    #[test]
    fn lopsided_split_of_3221() {
        let w = welfare_of(2, vec![3, 2, 2, 1], vec![vec![0], vec![1, 2, 3]]);
        assert_eq!(w.exact_product, Some(BigUint::from(15u32)));
        assert!((w.value() - 15f64.sqrt()).abs() < 1e-12);
        assert!((w.value() - 3.8730).abs() < 1e-4);
    }

    #[test]
    fn empty_bundle_is_log_neg_inf() {
        let w = welfare_of(2, vec![1, 1], vec![vec![0, 1], vec![]]);
        assert!(w.is_zero());
        assert_eq!(w.exact_product, Some(BigUint::zero()));
    }

    #[test]
    fn mismatched_allocation_rejected() {
        let inst = Instance::new(2, vec![3, 2, 2, 1]).unwrap();
        let other = Instance::new(2, vec![1, 1]).unwrap();
        let alloc = Allocation::new(&other, vec![vec![0], vec![1]]).unwrap();
        assert!(nash_welfare(&inst, &alloc).is_err());
    }

    #[test]
    fn generalized_mean_matches_power_formulas() {
        let inst = Instance::new(2, vec![4, 4]).unwrap();
        let alloc = Allocation::new(&inst, vec![vec![0], vec![1]]).unwrap();
        assert!((generalized_mean(&inst, &alloc, 1.0).unwrap() - 4.0).abs() < 1e-12);

        let inst = Instance::new(2, vec![2, 8]).unwrap();
        let alloc = Allocation::new(&inst, vec![vec![0], vec![1]]).unwrap();
        // q=1: arithmetic mean 5; q=0: geometric mean 4.
        assert!((generalized_mean(&inst, &alloc, 1.0).unwrap() - 5.0).abs() < 1e-12);
        assert!((generalized_mean(&inst, &alloc, 0.0).unwrap() - 4.0).abs() < 1e-12);
        // q -> -inf approaches the minimum valuation.
        let near_min = generalized_mean(&inst, &alloc, -1000.0).unwrap();
        assert!((near_min - 2.0).abs() < 0.01, "got {near_min}");
    }

    #[test]
    fn generalized_mean_empty_bundle_cases() {
        let inst = Instance::new(2, vec![4]).unwrap();
        let alloc = Allocation::new(&inst, vec![vec![0], vec![]]).unwrap();
        assert_eq!(
            generalized_mean(&inst, &alloc, 0.0).unwrap(),
            f64::NEG_INFINITY
        );
        assert_eq!(
            generalized_mean(&inst, &alloc, -1.0).unwrap(),
            f64::NEG_INFINITY
        );
        // q = 1: mean of (4, 0) is 2.
        assert!((generalized_mean(&inst, &alloc, 1.0).unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn comparator_prefers_positive_over_empty_bundle() {
        let a = welfare_of(2, vec![1, 1], vec![vec![0], vec![1]]);
        let b = welfare_of(2, vec![1, 1], vec![vec![0, 1], vec![]]);
        assert_eq!(a.cmp_welfare(&b), Ordering::Greater);
    }
}
