//! Preprocessing: repeatedly strip a good whose utility meets the residual
//! mean valuation, pairing it with one agent, until every residual good has
//! utility strictly below the residual mean.
//!
//! An agent who receives such a good receives nothing else in an optimum,
//! so optima of the residual instance recombine into optima of the
//! original.

use num::rational::BigRational;
use num::BigInt;

use crate::allocation::Allocation;
use crate::error::{Error, Result};
use crate::instance::Instance;

/// One removal: which good was stripped and the residual state at the
/// moment of the decision (`mu = total_before / agents_before`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RemovalStep {
    /// 0-based index of the removed good in the original instance.
    pub good: usize,
    pub utility: u64,
    pub agents_before: usize,
    pub total_before: u128,
}

impl RemovalStep {
    pub fn mu_before(&self) -> BigRational {
        BigRational::new(
            BigInt::from(self.total_before),
            BigInt::from(self.agents_before),
        )
    }
}

/// Output of preprocessing: the stripped goods (in removal order), the
/// residual instance, and enough bookkeeping to rebuild full allocations.
///
/// The `t`-th removed good is paired with agent `n - 1 - t`: removed agents
/// are taken from the top of the index range, so residual agents keep their
/// original indices `0..n-k`.
#[derive(Debug, Clone)]
pub struct PreprocessResult {
    original: Instance,
    removed_goods: Vec<usize>,
    residual_goods: Vec<usize>,
    residual: Instance,
    steps: Vec<RemovalStep>,
}

impl PreprocessResult {
    /// Number of removed agents, `k = |A_0|` (equals the removed goods).
    pub fn removed_agents(&self) -> usize {
        self.removed_goods.len()
    }

    /// Removed goods in removal order (0-based original indices).
    pub fn removed_goods(&self) -> &[usize] {
        &self.removed_goods
    }

    /// Original indices of the residual goods, ascending; entry `j` is the
    /// original index of residual good `j`.
    pub fn residual_goods(&self) -> &[usize] {
        &self.residual_goods
    }

    pub fn residual(&self) -> &Instance {
        &self.residual
    }

    pub fn original(&self) -> &Instance {
        &self.original
    }

    pub fn steps(&self) -> &[RemovalStep] {
        &self.steps
    }
}

/// Runs the removal loop. Total on every valid instance; terminates after
/// at most `n` removals. On a nonempty residual, `vmax < mu` holds exactly.
///
/// Tie-breaking: among goods meeting the threshold, the one with the
/// largest utility is removed, ties by smallest index. Since the largest
/// residual good meets the threshold whenever any good does, scanning the
/// maximum suffices.
pub fn preprocess(inst: &Instance) -> PreprocessResult {
    let mut alive = vec![true; inst.num_goods()];
    let mut agents = inst.num_agents();
    let mut total = inst.total();
    let mut removed_goods = Vec::new();
    let mut steps = Vec::new();

    while agents > 0 {
        let mut best: Option<(u64, usize)> = None;
        for (idx, &keep) in alive.iter().enumerate() {
            if keep {
                let v = inst.utility(idx);
                if best.map_or(true, |(bv, _)| v > bv) {
                    best = Some((v, idx));
                }
            }
        }
        let Some((vmax, good)) = best else { break };
        // v >= mu  <=>  v * agents >= total, exactly.
        if (vmax as u128) * (agents as u128) >= total {
            steps.push(RemovalStep {
                good,
                utility: vmax,
                agents_before: agents,
                total_before: total,
            });
            alive[good] = false;
            removed_goods.push(good);
            total -= vmax as u128;
            agents -= 1;
        } else {
            break;
        }
    }

    let residual_goods: Vec<usize> = (0..inst.num_goods()).filter(|&g| alive[g]).collect();
    let residual_utilities: Vec<u64> = residual_goods.iter().map(|&g| inst.utility(g)).collect();
    let residual = Instance::new(agents, residual_utilities)
        .expect("residual built from positive utilities");
    PreprocessResult {
        original: inst.clone(),
        removed_goods,
        residual_goods,
        residual,
        steps,
    }
}

/// Rebuilds a full allocation from an allocation of the residual instance:
/// residual bundles are copied through (good indices translated back), and
/// the `t`-th removed good becomes the singleton bundle of agent
/// `n - 1 - t`.
pub fn recombine(pre: &PreprocessResult, residual_alloc: &Allocation) -> Result<Allocation> {
    let n = pre.original.num_agents();
    let k = pre.removed_agents();
    if residual_alloc.num_agents() != n - k {
        return Err(Error::InvalidInput(format!(
            "residual allocation has {} bundles, expected {}",
            residual_alloc.num_agents(),
            n - k
        )));
    }
    residual_alloc.validate(&pre.residual)?;
    let mut bundles: Vec<Vec<usize>> = Vec::with_capacity(n);
    for bundle in residual_alloc.bundles() {
        bundles.push(bundle.iter().map(|&g| pre.residual_goods[g]).collect());
    }
    // Removed agents occupy indices n-k..n; agent n-1-t holds removal t.
    let mut removed_bundles = vec![Vec::new(); k];
    for (t, &good) in pre.removed_goods.iter().enumerate() {
        removed_bundles[k - 1 - t] = vec![good];
    }
    bundles.extend(removed_bundles);
    Allocation::new(&pre.original, bundles)
}
