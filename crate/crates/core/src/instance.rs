//! Problem input: `n` identical agents and `m` indivisible goods with
//! positive integer utilities. Decimal inputs are scaled to integers at
//! ingestion so every threshold comparison downstream is exact.

use num::rational::BigRational;
use num::{BigInt, BigUint, One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{denominator_lcm, parse_decimal};

/// A problem instance: `n` agents and one positive integer utility per good.
///
/// The empty instance (`n = 0`, no goods) is permitted as the residual of a
/// preprocessing run that strips every agent; all other instances have at
/// least one agent.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Instance {
    n: usize,
    utilities: Vec<u64>,
}

impl Instance {
    pub fn new(n: usize, utilities: Vec<u64>) -> Result<Self> {
        if n == 0 && !utilities.is_empty() {
            return Err(Error::InvalidInstance(
                "zero agents with nonzero goods".into(),
            ));
        }
        if let Some(pos) = utilities.iter().position(|&v| v == 0) {
            return Err(Error::InvalidInstance(format!(
                "good {} has zero utility; drop it at ingestion",
                pos + 1
            )));
        }
        Ok(Self { n, utilities })
    }

    /// The empty instance: no agents, no goods.
    pub fn empty() -> Self {
        Self {
            n: 0,
            utilities: Vec::new(),
        }
    }

    pub fn num_agents(&self) -> usize {
        self.n
    }

    pub fn num_goods(&self) -> usize {
        self.utilities.len()
    }

    pub fn utilities(&self) -> &[u64] {
        &self.utilities
    }

    pub fn utility(&self, good: usize) -> u64 {
        self.utilities[good]
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Largest single-good utility (zero for the empty instance).
    pub fn vmax(&self) -> u64 {
        self.utilities.iter().copied().max().unwrap_or(0)
    }

    /// Index of a good attaining `vmax`, smallest index first.
    pub fn argmax_good(&self) -> Option<usize> {
        let vmax = self.vmax();
        self.utilities.iter().position(|&v| v == vmax)
    }

    /// Sum of all utilities.
    pub fn total(&self) -> u128 {
        self.utilities.iter().map(|&v| v as u128).sum()
    }

    /// Mean valuation per agent, exact.
    pub fn mu(&self) -> BigRational {
        assert!(self.n > 0, "mu is undefined for the empty instance");
        BigRational::new(BigInt::from(self.total()), BigInt::from(self.n))
    }

    /// Exact test for `vmax < mu`, the precondition of the grid solver.
    pub fn vmax_below_mu(&self) -> bool {
        if self.n == 0 {
            return false;
        }
        (self.vmax() as u128) * (self.n as u128) < self.total()
    }
}

/// Result of ingesting raw decimal utilities: the integer-scaled instance,
/// the scale factor applied, and the positions (0-based, in the raw list)
/// of zero-utility goods that were dropped.
#[derive(Debug, Clone)]
pub struct Ingested {
    pub instance: Instance,
    pub factor: BigUint,
    pub dropped_goods: Vec<usize>,
}

/// Scales a list of positive finite decimals to integers by their least
/// common denominator. Zero-utility goods are dropped (reported in
/// `dropped_goods`); negative utilities are rejected with their index.
///
/// Welfare on the scaled instance is exactly `factor` times welfare on the
/// raw values, so argmax allocations are unaffected by the scaling.
pub fn ingest_instance(n: usize, raw: &[String]) -> Result<Ingested> {
    if n == 0 {
        return Err(Error::InvalidInstance("need at least one agent".into()));
    }
    let mut kept: Vec<BigRational> = Vec::with_capacity(raw.len());
    let mut dropped = Vec::new();
    for (idx, text) in raw.iter().enumerate() {
        let value = parse_decimal(text)?;
        if value.is_negative() {
            return Err(Error::NegativeUtility {
                index: idx,
                value: text.clone(),
            });
        }
        if value.is_zero() {
            dropped.push(idx);
        } else {
            kept.push(value);
        }
    }
    let factor = denominator_lcm(&kept);
    let factor_int = BigInt::from(factor.clone());
    let mut utilities = Vec::with_capacity(kept.len());
    for (idx, value) in kept.iter().enumerate() {
        let scaled = value * &factor_int;
        debug_assert!(scaled.denom().is_one());
        let as_u64: u64 = scaled
            .numer()
            .try_into()
            .map_err(|_| Error::NumberRange(format!("scaled utility {} too large", idx + 1)))?;
        utilities.push(as_u64);
    }
    Ok(Ingested {
        instance: Instance::new(n, utilities)?,
        factor,
        dropped_goods: dropped,
    })
}
