//! An allocation is a partition of the goods into per-agent bundles, with
//! exact cached bundle valuations.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::Instance;

/// A partition of the goods among the agents. Bundle `i` belongs to agent
/// `i`; empty bundles are allowed. Good indices are 0-based internally
/// (serialized 1-based at the CLI boundary).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Allocation {
    bundles: Vec<Vec<usize>>,
    valuations: Vec<u128>,
}

impl Allocation {
    /// Builds and validates an allocation for `inst`. Every good must occur
    /// exactly once; bundles are stored sorted for a canonical layout.
    pub fn new(inst: &Instance, mut bundles: Vec<Vec<usize>>) -> Result<Self> {
        if bundles.len() != inst.num_agents() {
            return Err(Error::InvalidAllocation(format!(
                "expected {} bundles, got {}",
                inst.num_agents(),
                bundles.len()
            )));
        }
        let m = inst.num_goods();
        let mut seen = vec![false; m];
        for bundle in &mut bundles {
            bundle.sort_unstable();
            for &good in bundle.iter() {
                if good >= m {
                    return Err(Error::InvalidAllocation(format!(
                        "good index {} out of range (m = {m})",
                        good + 1
                    )));
                }
                if seen[good] {
                    return Err(Error::InvalidAllocation(format!(
                        "good {} assigned twice",
                        good + 1
                    )));
                }
                seen[good] = true;
            }
        }
        if let Some(missing) = seen.iter().position(|&s| !s) {
            return Err(Error::InvalidAllocation(format!(
                "good {} is unassigned",
                missing + 1
            )));
        }
        let valuations = bundles
            .iter()
            .map(|b| b.iter().map(|&g| inst.utility(g) as u128).sum())
            .collect();
        Ok(Self {
            bundles,
            valuations,
        })
    }

    /// Builds an allocation from a good-to-agent map.
    pub fn from_assignment(inst: &Instance, agent_of_good: &[usize]) -> Result<Self> {
        if agent_of_good.len() != inst.num_goods() {
            return Err(Error::InvalidAllocation(format!(
                "assignment covers {} goods, instance has {}",
                agent_of_good.len(),
                inst.num_goods()
            )));
        }
        let mut bundles = vec![Vec::new(); inst.num_agents()];
        for (good, &agent) in agent_of_good.iter().enumerate() {
            if agent >= inst.num_agents() {
                return Err(Error::InvalidAllocation(format!(
                    "agent index {agent} out of range"
                )));
            }
            bundles[agent].push(good);
        }
        Self::new(inst, bundles)
    }

    /// The empty allocation for the empty instance.
    pub fn empty() -> Self {
        Self {
            bundles: Vec::new(),
            valuations: Vec::new(),
        }
    }

    pub fn num_agents(&self) -> usize {
        self.bundles.len()
    }

    pub fn bundles(&self) -> &[Vec<usize>] {
        &self.bundles
    }

    pub fn bundle(&self, agent: usize) -> &[usize] {
        &self.bundles[agent]
    }

    /// Exact bundle valuations, in agent order.
    pub fn valuations(&self) -> &[u128] {
        &self.valuations
    }

    pub fn has_empty_bundle(&self) -> bool {
        self.valuations.iter().any(|&v| v == 0)
    }

    /// Checks this allocation is a valid partition for `inst` and that the
    /// cached valuations match a recomputation exactly.
    pub fn validate(&self, inst: &Instance) -> Result<()> {
        let rebuilt = Self::new(inst, self.bundles.clone())?;
        if rebuilt.valuations != self.valuations {
            return Err(Error::InvalidAllocation(
                "cached valuations disagree with recomputed sums".into(),
            ));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inst() -> Instance {
        Instance::new(2, vec![3, 2, 2, 1]).unwrap()
    }

    #[test]
    fn valuations_are_bundle_sums() {
        let alloc = Allocation::new(&inst(), vec![vec![0, 3], vec![1, 2]]).unwrap();
        assert_eq!(alloc.valuations(), &[4, 4]);
        alloc.validate(&inst()).unwrap();
    }

    #[test]
    fn duplicate_good_rejected() {
        let err = Allocation::new(&inst(), vec![vec![0, 1], vec![1, 2, 3]]).unwrap_err();
        assert!(matches!(err, Error::InvalidAllocation(_)));
    }

    #[test]
    fn missing_good_rejected() {
        let err = Allocation::new(&inst(), vec![vec![0], vec![1, 2]]).unwrap_err();
        assert!(matches!(err, Error::InvalidAllocation(_)));
    }

    #[test]
    fn wrong_bundle_count_rejected() {
        let err = Allocation::new(&inst(), vec![vec![0, 1, 2, 3]]).unwrap_err();
        assert!(matches!(err, Error::InvalidAllocation(_)));
    }

    #[test]
    fn empty_bundles_allowed() {
        let alloc = Allocation::new(&inst(), vec![vec![0, 1, 2, 3], vec![]]).unwrap();
        assert!(alloc.has_empty_bundle());
        assert_eq!(alloc.valuations(), &[8, 0]);
    }
}
