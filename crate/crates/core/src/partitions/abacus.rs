//! The ℓ-abacus: β-sets on ℓ runners, ℓ-core / ℓ-quotient / ℓ-weight, and
//! the weight-boosting construction.
//!
//! Convention: the β-set of a partition is its first-column hook lengths,
//! padded with trailing 0, 1, … so that the β-set size is the least multiple
//! of ℓ at least the number of parts. A β-number b sits on runner b mod ℓ at
//! level b div ℓ. Runner i read as a β-set (its levels) gives quotient
//! component i; pushing all beads down as far as possible gives the core.
//! Padding by a further multiple of ℓ changes neither core nor quotient.

use super::{hooks, partition_from_beta_desc, MultiPartition, Partition};
use crate::error::Error;
use crate::Result;

/// A partition displayed on ℓ runners: for each residue class mod ℓ, the
/// sorted set of occupied bead levels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbacusView {
    ell: u32,
    runners: Vec<Vec<u64>>,
}

impl AbacusView {
    /// Abacus of `lambda` on `ell` runners using the β-set convention above.
    pub fn from_partition(lambda: &Partition, ell: u32) -> Self {
        assert!(ell >= 2, "abacus needs at least two runners");
        let k = lambda.num_parts();
        let m = k.div_ceil(ell as usize) * ell as usize;
        let mut runners = vec![Vec::new(); ell as usize];
        for i in 1..=m {
            let beta = lambda.part(i) as u64 + (m - i) as u64;
            runners[(beta % ell as u64) as usize].push(beta / ell as u64);
        }
        for r in &mut runners {
            r.sort_unstable();
        }
        AbacusView { ell, runners }
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }

    /// Sorted bead levels on runner i.
    pub fn runner(&self, i: usize) -> &[u64] {
        &self.runners[i]
    }

    /// Number of beads (the β-set size).
    pub fn bead_count(&self) -> usize {
        self.runners.iter().map(Vec::len).sum()
    }

    /// Read the partition back off the abacus.
    pub fn to_partition(&self) -> Partition {
        let mut beta: Vec<u64> = Vec::with_capacity(self.bead_count());
        for (i, levels) in self.runners.iter().enumerate() {
            for &lv in levels {
                beta.push(lv * self.ell as u64 + i as u64);
            }
        }
        beta.sort_unstable_by(|a, b| b.cmp(a));
        partition_from_beta_desc(&beta)
    }

    /// Push every bead down as far as it goes; the result displays the
    /// ℓ-core.
    pub fn core_view(&self) -> AbacusView {
        let runners = self
            .runners
            .iter()
            .map(|levels| (0..levels.len() as u64).collect())
            .collect();
        AbacusView { ell: self.ell, runners }
    }

    /// Quotient component i is the partition whose β-set is runner i's
    /// levels.
    pub fn quotient(&self) -> MultiPartition {
        let components = self
            .runners
            .iter()
            .map(|levels| {
                let mut beta = levels.clone();
                beta.sort_unstable_by(|a, b| b.cmp(a));
                partition_from_beta_desc(&beta)
            })
            .collect();
        MultiPartition::new(components)
    }
}

/// The ℓ-core / ℓ-quotient / ℓ-weight decomposition of a partition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EllDecomposition {
    pub ell: u32,
    pub core: Partition,
    pub quotient: MultiPartition,
    pub weight: u64,
}

/// Decompose `lambda` into its ℓ-core, ℓ-quotient and ℓ-weight via the
/// abacus.
pub fn ell_decompose(lambda: &Partition, ell: u32) -> EllDecomposition {
    let view = AbacusView::from_partition(lambda, ell);
    let core = view.core_view().to_partition();
    let quotient = view.quotient();
    let weight = quotient.size();
    debug_assert_eq!(lambda.size(), core.size() + ell as u64 * weight);
    EllDecomposition { ell, core, quotient, weight }
}

/// True when `lambda` has no hook of length divisible by `ell`, i.e. every
/// runner of its abacus is pushed fully down.
pub fn is_core(lambda: &Partition, ell: u32) -> bool {
    let view = AbacusView::from_partition(lambda, ell);
    view == view.core_view()
}

/// The multiset of hook lengths of `lambda` divisible by `ell`, descending.
/// Its cardinality is the ℓ-weight.
pub fn hook_lengths_divisible(lambda: &Partition, ell: u32) -> Vec<u64> {
    let mut out: Vec<u64> = hooks(lambda)
        .iter()
        .map(|h| h.len())
        .filter(|&l| l % ell as u64 == 0)
        .collect();
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

/// Rebuild the unique partition with the given ℓ-core and ℓ-quotient; the
/// inverse of [`ell_decompose`] under the fixed runner convention.
pub fn recombine(core: &Partition, quotient: &MultiPartition, ell: u32) -> Result<Partition> {
    if ell < 2 {
        return Err(Error::invalid("recombine requires ell >= 2"));
    }
    if quotient.len() != ell as usize {
        return Err(Error::invalid(format!(
            "quotient must have exactly {ell} components, got {}",
            quotient.len()
        )));
    }
    if !is_core(core, ell) {
        return Err(Error::invalid(format!(
            "{core} has a hook of length divisible by {ell}, so it is not an {ell}-core"
        )));
    }
    let w = quotient.size();
    let mut view = padded_core_view(core, ell, w as usize + 1);
    for (i, q) in quotient.components().iter().enumerate() {
        view.runners[i] = beta_levels(q, view.runners[i].len());
    }
    Ok(view.to_partition())
}

/// Core abacus with every runner holding at least `extra` more beads than
/// the core strictly needs.
fn padded_core_view(core: &Partition, ell: u32, extra: usize) -> AbacusView {
    let k = core.num_parts() + extra * ell as usize;
    let m = k.div_ceil(ell as usize) * ell as usize;
    let mut runners = vec![Vec::new(); ell as usize];
    for i in 1..=m {
        let beta = core.part(i) as u64 + (m - i) as u64;
        runners[(beta % ell as u64) as usize].push(beta / ell as u64);
    }
    for r in &mut runners {
        r.sort_unstable();
    }
    let view = AbacusView { ell, runners };
    debug_assert_eq!(view, view.core_view(), "core abacus must be pushed down");
    view
}

/// Ascending bead levels of the β-set of `p` with `count` beads.
fn beta_levels(p: &Partition, count: usize) -> Vec<u64> {
    assert!(count >= p.num_parts(), "not enough beads for the component");
    let mut levels: Vec<u64> =
        (1..=count).map(|i| p.part(i) as u64 + (count - i) as u64).collect();
    levels.sort_unstable();
    levels
}

/// Raise the ℓ-weight of `lambda` to `target_w` while keeping its ℓ-divisible
/// hook multiset, padded with hooks of length exactly ℓ.
///
/// The result is a partition of |lambda| with ℓ-core `nu`, ℓ-weight
/// `target_w`, and ℓ-divisible hook lengths equal to those of `lambda`
/// together with target_w − v copies of ℓ (v the weight of `lambda`).
/// Deterministic: the quotient components of `lambda` land on the
/// lowest-indexed runners of `nu`'s abacus, then one extra top bead is raised
/// one level on each of the next target_w − v runners.
pub fn boost_weight(
    lambda: &Partition,
    ell: u32,
    target_w: u64,
    nu: &Partition,
) -> Result<Partition> {
    if ell < 2 {
        return Err(Error::invalid("boost_weight requires ell >= 2"));
    }
    let dec = ell_decompose(lambda, ell);
    let v = dec.weight;
    if target_w < v {
        return Err(Error::invalid(format!(
            "target weight {target_w} is below the weight {v} of {lambda}"
        )));
    }
    if target_w >= ell as u64 {
        return Err(Error::invalid(format!(
            "target weight {target_w} must be smaller than ell = {ell}"
        )));
    }
    if lambda.size() != ell as u64 * target_w + nu.size() {
        return Err(Error::invalid(format!(
            "|nu| = {} does not match |lambda| - ell*target_w = {}",
            nu.size(),
            lambda.size() as i64 - (ell as u64 * target_w) as i64
        )));
    }
    if !is_core(nu, ell) {
        return Err(Error::invalid(format!("{nu} is not an {ell}-core")));
    }

    let mut view = padded_core_view(nu, ell, target_w as usize + 1);
    let mut runner = 0usize;
    for q in dec.quotient.components() {
        if q.is_empty() {
            continue;
        }
        view.runners[runner] = beta_levels(q, view.runners[runner].len());
        runner += 1;
    }
    for _ in v..target_w {
        // one hook of length exactly ell: move the top bead up one level
        let levels = &mut view.runners[runner];
        let top = levels.len() - 1;
        levels[top] += 1;
        runner += 1;
    }
    debug_assert!(runner <= ell as usize);
    let mu = view.to_partition();
    debug_assert_eq!(ell_decompose(&mu, ell).weight, target_w);
    debug_assert_eq!(ell_decompose(&mu, ell).core, *nu);
    Ok(mu)
}
