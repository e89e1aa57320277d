//! Theorem-checking sweeps.
//!
//! Every check pairs a definitional computation (exact character tables fed
//! through the block engine) with an independent closed-form or structural
//! statement, and reports pass/fail with concrete witnesses. The two sides
//! stay separated: the "direct" pipeline never consults a closed-form
//! formula, and the "formula" pipeline never touches a contribution matrix.
//!
//! Checks provided:
//! - [`verify_nakayama`]: the block partition of Irr(S_n) over ℓ-regular
//!   classes equals the partition by ℓ-core.
//! - [`verify_hook_defect`]: direct ℓ-defects equal the π-part of the
//!   product of ℓ-divisible hook lengths (1 in weight 0).
//! - [`verify_max_defect_weight`]: maximal-defect characters have maximal
//!   weight, with weight-boost witnesses scaling defects by powers of ℓ.
//! - [`find_sign_isometry`]: a sign vector making the ℓ-quotient matching a
//!   contribution-preserving bijection onto Irr(ℤ_ℓ ≀ S_w).
//! - [`verify_wreath_defects`] / [`verify_congruence`]: the wreath defect
//!   formula and the (−1)^w congruence of normalized inner products.
//! - [`verify_holomorph_blocks`]: block structure of the holomorph.
//! - [`verify_mckay`] / [`verify_per_defect`]: equality of maximal-defect
//!   counts and of per-defect histograms between S_n and the Sylow
//!   normalizer.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::arith::{euler_phi, factorial, pi_part};
use crate::blocks::{
    block_partition, rational_string, validate_closed, validate_power_closed,
    BlockReport, ClosedClassSet, GroupModel,
};
use crate::error::Error;
use crate::normalizer::{holomorph_blocks, normalizer_model};
use crate::partitions::{
    boost_weight, ell_decompose, hook_lengths_divisible, is_core,
    multipartition_count, partition_count, Partition,
};
use crate::symmetric::{character_table, ell_regular_classes, sn_group_model, SnCharacterTable};
use crate::wreath::{reg_defect_formula, wreath_table, BaseTable, WreathTable};
use crate::Result;

/// Outcome of a single verification instance.
#[derive(Clone, Debug, Serialize)]
pub struct VerifyOutcome {
    pub instance: String,
    pub theorem: String,
    pub pass: bool,
    pub witnesses: Vec<Value>,
    pub data: Value,
}

impl VerifyOutcome {
    fn pass(instance: String, theorem: &str, data: Value) -> Self {
        VerifyOutcome { instance, theorem: theorem.to_string(), pass: true, witnesses: Vec::new(), data }
    }

    fn fail(instance: String, theorem: &str, witnesses: Vec<Value>, data: Value) -> Self {
        VerifyOutcome { instance, theorem: theorem.to_string(), pass: false, witnesses, data }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "instance": self.instance,
            "theorem": self.theorem,
            "pass": self.pass,
            "witnesses": self.witnesses,
            "data": self.data,
        })
    }
}

/// S_n block data over the ℓ-regular classes, shared by several checks.
pub struct SnBlockData {
    pub table: SnCharacterTable,
    pub model: GroupModel,
    pub regular: ClosedClassSet,
    pub report: BlockReport,
}

/// Build the S_n model and its block report over ℓ-regular classes.
pub fn sn_block_data(n: u64, ell: u32) -> Result<SnBlockData> {
    if n < 1 {
        return Err(Error::invalid("n must be at least 1"));
    }
    if ell < 2 {
        return Err(Error::invalid("ell must be at least 2"));
    }
    let table = character_table(n);
    let model = sn_group_model(&table);
    let set: BTreeSet<usize> = ell_regular_classes(n, ell).into_iter().collect();
    let regular = validate_closed(&model, &set)?;
    let report = block_partition(&model, &regular)?;
    Ok(SnBlockData { table, model, regular, report })
}

/// Hook-length defect formula: 1 in weight 0, otherwise the π-part of the
/// product of the ℓ-divisible hook lengths.
pub fn formula_defect(lambda: &Partition, ell: u32) -> u128 {
    let divisible = hook_lengths_divisible(lambda, ell);
    if divisible.is_empty() {
        return 1;
    }
    divisible
        .iter()
        .map(|&h| pi_part(h as u128, ell as u64).expect("hook length is positive"))
        .product()
}

// ---------------------------------------------------------------------------
// S_n checks
// ---------------------------------------------------------------------------

/// The block partition of Irr(S_n) over ℓ-regular classes equals the
/// partition of {λ ⊢ n} by ℓ-core.
pub fn verify_nakayama(n: u64, ell: u32) -> Result<VerifyOutcome> {
    let data = sn_block_data(n, ell)?;
    verify_nakayama_with(&data, n, ell)
}

fn verify_nakayama_with(data: &SnBlockData, n: u64, ell: u32) -> Result<VerifyOutcome> {
    let instance = format!("n={n},ell={ell}");
    let theorem = "block-partition-equals-core-partition";
    let chars = data.table.characters();

    let mut by_core: BTreeMap<Partition, Vec<usize>> = BTreeMap::new();
    for (i, lam) in chars.iter().enumerate() {
        by_core.entry(ell_decompose(lam, ell).core).or_default().push(i);
    }
    let core_partition: BTreeSet<Vec<usize>> = by_core.values().cloned().collect();
    let block_sets: BTreeSet<Vec<usize>> = data.report.blocks.iter().cloned().collect();

    let blocks_json = json!({
        "blocks": data.report.blocks.iter().map(|b| {
            b.iter().map(|&i| chars[i].to_string()).collect::<Vec<_>>()
        }).collect::<Vec<_>>(),
        "cores": by_core.iter().map(|(core, members)| json!({
            "core": core.to_string(),
            "characters": members.iter().map(|&i| chars[i].to_string()).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
    });

    if core_partition == block_sets {
        return Ok(VerifyOutcome::pass(instance, theorem, blocks_json));
    }
    // find a witness pair: same block, different core
    let mut witnesses = Vec::new();
    'outer: for b in &data.report.blocks {
        for i in 0..b.len() {
            for j in i + 1..b.len() {
                let (ci, cj) = (
                    ell_decompose(&chars[b[i]], ell).core,
                    ell_decompose(&chars[b[j]], ell).core,
                );
                if ci != cj {
                    witnesses.push(json!({
                        "kind": "same-block-different-core",
                        "lambda": chars[b[i]].to_string(),
                        "mu": chars[b[j]].to_string(),
                    }));
                    break 'outer;
                }
            }
        }
    }
    if witnesses.is_empty() {
        // otherwise: same core, different block
        'outer2: for members in by_core.values() {
            for i in 0..members.len() {
                for j in i + 1..members.len() {
                    if data.report.block_of(members[i]) != data.report.block_of(members[j]) {
                        witnesses.push(json!({
                            "kind": "same-core-different-block",
                            "lambda": chars[members[i]].to_string(),
                            "mu": chars[members[j]].to_string(),
                        }));
                        break 'outer2;
                    }
                }
            }
        }
    }
    Ok(VerifyOutcome::fail(instance, theorem, witnesses, blocks_json))
}

/// Per-character comparison of the direct ℓ-defect with the hook-length
/// formula.
pub fn verify_hook_defect(n: u64, ell: u32) -> Result<VerifyOutcome> {
    let data = sn_block_data(n, ell)?;
    verify_hook_defect_with(&data, n, ell)
}

fn verify_hook_defect_with(data: &SnBlockData, n: u64, ell: u32) -> Result<VerifyOutcome> {
    let instance = format!("n={n},ell={ell}");
    let theorem = "hook-defect-formula";
    let chars = data.table.characters();
    let mut rows = Vec::new();
    let mut witnesses = Vec::new();
    for (i, lam) in chars.iter().enumerate() {
        let dec = ell_decompose(lam, ell);
        let direct = data.report.defects[i];
        let formula = formula_defect(lam, ell);
        if direct != formula {
            witnesses.push(json!({
                "lambda": lam.to_string(),
                "direct": direct.to_string(),
                "formula": formula.to_string(),
            }));
        }
        rows.push(json!({
            "lambda": lam.to_string(),
            "core": dec.core.to_string(),
            "quotient": dec.quotient.to_string(),
            "weight": dec.weight,
            "direct_defect": direct.to_string(),
            "formula_defect": formula.to_string(),
        }));
    }
    let data_json = json!({ "characters": rows });
    if witnesses.is_empty() {
        Ok(VerifyOutcome::pass(instance, theorem, data_json))
    } else {
        Ok(VerifyOutcome::fail(instance, theorem, witnesses, data_json))
    }
}

/// Every character of maximal ℓ-defect has ℓ-weight w = ⌊n/ℓ⌋ (requires
/// n < ℓ²), and weight-boost witnesses scale the defect by ℓ^{w−v}.
pub fn verify_max_defect_weight(n: u64, ell: u32) -> Result<VerifyOutcome> {
    if (ell as u64 * ell as u64) <= n {
        return Err(Error::invalid(format!("requires n < ell^2, got n={n}, ell={ell}")));
    }
    let data = sn_block_data(n, ell)?;
    let instance = format!("n={n},ell={ell}");
    let theorem = "max-defect-has-max-weight";
    let w = n / ell as u64;
    let r = n % ell as u64;
    let chars = data.table.characters();

    let max_defect = *data.report.defects.iter().max().expect("nonempty");
    let mut witnesses = Vec::new();
    for (i, lam) in chars.iter().enumerate() {
        if data.report.defects[i] == max_defect && ell_decompose(lam, ell).weight != w {
            witnesses.push(json!({
                "kind": "max-defect-with-smaller-weight",
                "lambda": lam.to_string(),
                "defect": max_defect.to_string(),
                "weight": ell_decompose(lam, ell).weight,
            }));
        }
    }
    // the trivial character must attain the maximum
    if data.report.max_defect() != max_defect {
        witnesses.push(json!({
            "kind": "trivial-character-not-maximal",
            "trivial_defect": data.report.max_defect().to_string(),
            "max_defect": max_defect.to_string(),
        }));
    }

    // boost a witness of each sub-maximal weight v < w
    let nu = if r == 0 {
        Partition::empty()
    } else {
        Partition::new(vec![r as u32]).expect("single row")
    };
    let mut boosts = Vec::new();
    for v in 0..w {
        let witness = chars
            .iter()
            .enumerate()
            .find(|(_, lam)| ell_decompose(lam, ell).weight == v);
        let Some((i, lam)) = witness else { continue };
        let mu = boost_weight(lam, ell, w, &nu)?;
        let mu_idx = data.table.char_index(&mu).expect("mu is a partition of n");
        let expected = data.report.defects[i]
            .checked_mul((ell as u128).pow((w - v) as u32))
            .expect("defect fits u128");
        let got = data.report.defects[mu_idx];
        if got != expected {
            witnesses.push(json!({
                "kind": "boost-defect-mismatch",
                "lambda": lam.to_string(),
                "mu": mu.to_string(),
                "expected": expected.to_string(),
                "got": got.to_string(),
            }));
        }
        boosts.push(json!({
            "v": v,
            "lambda": lam.to_string(),
            "mu": mu.to_string(),
            "lambda_defect": data.report.defects[i].to_string(),
            "mu_defect": got.to_string(),
        }));
    }
    let data_json = json!({
        "w": w,
        "r": r,
        "max_defect": max_defect.to_string(),
        "boosts": boosts,
    });
    if witnesses.is_empty() {
        Ok(VerifyOutcome::pass(instance, theorem, data_json))
    } else {
        Ok(VerifyOutcome::fail(instance, theorem, witnesses, data_json))
    }
}

// ---------------------------------------------------------------------------
// Sign isometries
// ---------------------------------------------------------------------------

/// Wreath-side data for ℤ_ℓ ≀ S_w over regular classes.
pub struct WreathBlockData {
    pub table: WreathTable,
    pub model: GroupModel,
    pub regular: ClosedClassSet,
    pub report: BlockReport,
}

/// Build ℤ_ℓ ≀ S_w with its regular-class contribution data. The regular
/// classes exclude the identity, so only power-closure is required of them.
pub fn wreath_block_data(ell: u64, w: u64) -> Result<WreathBlockData> {
    if ell < 2 || w < 1 {
        return Err(Error::invalid("wreath data requires ell >= 2 and w >= 1"));
    }
    let base = BaseTable::cyclic(ell);
    let table = wreath_table(&base, w);
    let model = table.to_group_model()?;
    let set: BTreeSet<usize> = table.regular_classes().into_iter().collect();
    let regular = validate_power_closed(&model, &set)?;
    let report = block_partition(&model, &regular)?;
    Ok(WreathBlockData { table, model, regular, report })
}

/// Find a sign vector ε making the ℓ-quotient matching a generalized perfect
/// isometry from the block of S_n with the given core onto
/// Irr(ℤ_ℓ ≀ S_w) with regular classes, and check that defects correspond.
pub fn find_sign_isometry(n: u64, ell: u32, core: &Partition) -> Result<VerifyOutcome> {
    if !is_core(core, ell) {
        return Err(Error::invalid(format!("{core} is not an {ell}-core")));
    }
    if core.size() > n || !(n - core.size()).is_multiple_of(ell as u64) {
        return Err(Error::invalid(format!(
            "no block of S_{n} has {ell}-core {core}"
        )));
    }
    let data = sn_block_data(n, ell)?;
    isometry_with(&data, n, ell, core)
}

fn isometry_with(data: &SnBlockData, n: u64, ell: u32, core: &Partition) -> Result<VerifyOutcome> {
    let w = (n - core.size()) / ell as u64;
    let instance = format!("n={n},ell={ell},core={core}");
    let theorem = "sign-isometry";
    let chars = data.table.characters();
    let members: Vec<usize> = (0..chars.len())
        .filter(|&i| ell_decompose(&chars[i], ell).core == *core)
        .collect();
    if members.is_empty() {
        return Err(Error::invalid(format!("no partition of {n} has {ell}-core {core}")));
    }
    if w == 0 {
        // a weight-0 block is a single character of defect 1 on both sides
        let i = members[0];
        let pass = members.len() == 1 && data.report.defects[i] == 1;
        let data_json = json!({"weight": 0, "block": [chars[i].to_string()]});
        return Ok(if pass {
            VerifyOutcome::pass(instance, theorem, data_json)
        } else {
            VerifyOutcome::fail(instance, theorem, vec![json!({"kind": "weight-zero-block-not-singleton"})], data_json)
        });
    }

    let wreath = wreath_block_data(ell as u64, w)?;
    let m = members.len();
    if wreath.table.labels.len() != m {
        return Err(Error::TheoremViolation(format!(
            "block size {m} differs from the number of {ell}-tuples of partitions of {w}"
        )));
    }
    // match by ell-quotient: component i of the quotient attaches to the
    // (i+1)-st character of the cyclic base
    let mut image = Vec::with_capacity(m);
    for &i in &members {
        let q = ell_decompose(&chars[i], ell).quotient;
        let idx = wreath
            .table
            .label_index(&q)
            .ok_or_else(|| Error::invalid(format!("quotient {q} is not a wreath label")))?;
        image.push(idx);
    }

    // entrywise |contribution| agreement, zero pattern included
    let mut witnesses = Vec::new();
    for a in 0..m {
        for b in 0..m {
            let lhs = data.report.matrix.get(members[a], members[b]);
            let rhs = wreath.report.matrix.get(image[a], image[b]);
            if lhs.clone().abs() != rhs.clone().abs() {
                witnesses.push(json!({
                    "kind": "entry-magnitude-mismatch",
                    "lambda": chars[members[a]].to_string(),
                    "mu": chars[members[b]].to_string(),
                    "sn": rational_string(lhs),
                    "wreath": rational_string(rhs),
                }));
            }
        }
    }

    // solve for signs by spanning-tree propagation from the least label
    let root = (0..m)
        .min_by_key(|&a| &chars[members[a]])
        .expect("nonempty block");
    let mut sign = vec![0i8; m];
    sign[root] = 1;
    let mut queue = std::collections::VecDeque::from([root]);
    while let Some(a) = queue.pop_front() {
        for b in 0..m {
            if sign[b] != 0 || b == a {
                continue;
            }
            let lhs = data.report.matrix.get(members[a], members[b]);
            if lhs.is_zero() {
                continue;
            }
            let rhs = wreath.report.matrix.get(image[a], image[b]);
            let ratio = if lhs == rhs { 1i8 } else { -1i8 };
            sign[b] = sign[a] * ratio;
            queue.push_back(b);
        }
    }
    if sign.contains(&0) {
        witnesses.push(json!({"kind": "block-graph-disconnected"}));
    }

    // verify every pair against the assigned signs
    if witnesses.is_empty() {
        for a in 0..m {
            for b in 0..m {
                let lhs = data.report.matrix.get(members[a], members[b]);
                let rhs = wreath.report.matrix.get(image[a], image[b]);
                let scaled = if sign[a] * sign[b] == 1 { lhs.clone() } else { -lhs.clone() };
                if scaled != *rhs {
                    witnesses.push(json!({
                        "kind": "no-sign-assignment",
                        "lambda": chars[members[a]].to_string(),
                        "mu": chars[members[b]].to_string(),
                        "sn": rational_string(lhs),
                        "wreath": rational_string(rhs),
                        "sign_product": sign[a] * sign[b],
                    }));
                }
            }
        }
    }

    // defects correspond entrywise
    for (a, &i) in members.iter().enumerate() {
        let sn_defect = data.report.defects[i];
        let wreath_defect = wreath.report.defects[image[a]];
        if sn_defect != wreath_defect {
            witnesses.push(json!({
                "kind": "defect-mismatch",
                "lambda": chars[i].to_string(),
                "label": wreath.table.labels[image[a]].to_string(),
                "sn_defect": sn_defect.to_string(),
                "wreath_defect": wreath_defect.to_string(),
            }));
        }
    }

    let data_json = json!({
        "core": core.to_string(),
        "weight": w,
        "pairs": members.iter().zip(&image).zip(&sign).map(|((&i, &l), &s)| json!({
            "lambda": chars[i].to_string(),
            "label": wreath.table.labels[l].to_string(),
            "sign": s,
            "defect": data.report.defects[i].to_string(),
        })).collect::<Vec<_>>(),
    });
    if witnesses.is_empty() {
        Ok(VerifyOutcome::pass(instance, theorem, data_json))
    } else {
        Ok(VerifyOutcome::fail(instance, theorem, witnesses, data_json))
    }
}

/// Run [`find_sign_isometry`] for every block of S_n of weight ≥ 1.
pub fn verify_isometries(n: u64, ell: u32) -> Result<Vec<VerifyOutcome>> {
    let data = sn_block_data(n, ell)?;
    let mut cores = BTreeSet::new();
    for lam in data.table.characters() {
        let dec = ell_decompose(lam, ell);
        if dec.weight >= 1 {
            cores.insert(dec.core);
        }
    }
    cores.into_iter().map(|core| isometry_with(&data, n, ell, &core)).collect()
}

// ---------------------------------------------------------------------------
// Wreath checks
// ---------------------------------------------------------------------------

/// Direct regular defect of every character of ℤ_ℓ ≀ S_w equals
/// ℓ^w (w!)_π / χ(1)_π, and the trivial character's equals ℓ^w (w!)_π.
pub fn verify_wreath_defects(ell: u64, w: u64) -> Result<VerifyOutcome> {
    let data = wreath_block_data(ell, w)?;
    verify_wreath_defects_with_data(&data, ell, w)
}

/// [`verify_wreath_defects`] on prebuilt wreath block data.
pub fn verify_wreath_defects_with_data(
    data: &WreathBlockData,
    ell: u64,
    w: u64,
) -> Result<VerifyOutcome> {
    let instance = format!("ell={ell},w={w}");
    let theorem = "wreath-defect-formula";
    let mut witnesses = Vec::new();
    let mut rows = Vec::new();
    for (i, label) in data.table.labels.iter().enumerate() {
        let direct = data.report.defects[i];
        let formula = reg_defect_formula(ell, w, label)?;
        if direct != formula {
            witnesses.push(json!({
                "label": label.to_string(),
                "direct": direct.to_string(),
                "formula": formula.to_string(),
            }));
        }
        rows.push(json!({
            "label": label.to_string(),
            "direct_defect": direct.to_string(),
            "formula_defect": formula.to_string(),
        }));
    }
    // the trivial character attains ell^w (w!)_pi
    let trivial_expected = (ell as u128).pow(w as u32) * pi_part(factorial(w), ell)?;
    let trivial_defect = data.report.defects[data.model.trivial_char()];
    if trivial_defect != trivial_expected {
        witnesses.push(json!({
            "kind": "trivial-defect-mismatch",
            "direct": trivial_defect.to_string(),
            "expected": trivial_expected.to_string(),
        }));
    }
    let data_json = json!({
        "characters": rows,
        "trivial_defect": trivial_defect.to_string(),
    });
    if witnesses.is_empty() {
        Ok(VerifyOutcome::pass(instance, theorem, data_json))
    } else {
        Ok(VerifyOutcome::fail(instance, theorem, witnesses, data_json))
    }
}

/// For every irreducible χ of ℤ_ℓ ≀ S_w, the normalized regular inner
/// product ℓ^w w! ⟨χ,1⟩_reg / χ(1) is an integer congruent to (−1)^w mod ℓ.
pub fn verify_congruence(ell: u64, w: u64) -> Result<VerifyOutcome> {
    let data = wreath_block_data(ell, w)?;
    verify_congruence_with_data(&data, ell, w)
}

/// [`verify_congruence`] on prebuilt wreath block data.
pub fn verify_congruence_with_data(
    data: &WreathBlockData,
    ell: u64,
    w: u64,
) -> Result<VerifyOutcome> {
    let instance = format!("ell={ell},w={w}");
    let theorem = "wreath-congruence";
    let mut witnesses = Vec::new();
    let mut rows = Vec::new();
    for (i, label) in data.table.labels.iter().enumerate() {
        match crate::wreath::congruence_check(&data.model, &data.regular, i, ell, w) {
            Ok(value) => rows.push(json!({
                "label": label.to_string(),
                "value": value.to_string(),
            })),
            Err(Error::TheoremViolation(msg)) => {
                witnesses.push(json!({"label": label.to_string(), "violation": msg}));
            }
            Err(e) => return Err(e),
        }
    }
    let data_json = json!({"characters": rows});
    if witnesses.is_empty() {
        Ok(VerifyOutcome::pass(instance, theorem, data_json))
    } else {
        Ok(VerifyOutcome::fail(instance, theorem, witnesses, data_json))
    }
}

/// Block structure of the holomorph: one principal block of exactly ℓ
/// characters, all other characters alone in their blocks.
pub fn verify_holomorph_blocks(ell: u64) -> Result<VerifyOutcome> {
    let instance = format!("ell={ell}");
    let theorem = "holomorph-block-structure";
    match holomorph_blocks(ell) {
        Ok(b) => Ok(VerifyOutcome::pass(
            instance,
            theorem,
            json!({
                "principal": b.principal.iter().map(|&i| b.model.char_labels()[i].clone()).collect::<Vec<_>>(),
                "singletons": b.singletons.iter().map(|&i| b.model.char_labels()[i].clone()).collect::<Vec<_>>(),
                "defects": b.report.defects.iter().map(|d| d.to_string()).collect::<Vec<_>>(),
            }),
        )),
        Err(Error::TheoremViolation(msg)) => Ok(VerifyOutcome::fail(
            instance,
            theorem,
            vec![json!({"violation": msg})],
            Value::Null,
        )),
        Err(e) => Err(e),
    }
}

// ---------------------------------------------------------------------------
// McKay-style counting
// ---------------------------------------------------------------------------

struct McKayData {
    n: u64,
    sn: SnBlockData,
    sn_weights: Vec<u64>,
    normalizer: BlockReport,
    formula_max: u128,
}

fn mckay_data(ell: u64, w: u64, r: u64) -> Result<McKayData> {
    if ell < 2 || w < 1 || w >= ell || r >= ell {
        return Err(Error::invalid(format!(
            "mckay instance requires 2 <= ell, 1 <= w < ell, 0 <= r < ell; got ({ell},{w},{r})"
        )));
    }
    let n = ell * w + r;
    let sn = sn_block_data(n, ell as u32)?;
    let sn_weights = sn
        .table
        .characters()
        .iter()
        .map(|lam| ell_decompose(lam, ell as u32).weight)
        .collect();
    // definitional pipeline on the normalizer side: plain block partition,
    // independent of any closed-form or structural statement
    let nm = normalizer_model(ell, w, r)?;
    let normalizer = block_partition(&nm.model, &nm.regular)?;
    let formula_max = (ell as u128).pow(w as u32) * pi_part(factorial(w), ell)?;
    Ok(McKayData { n, sn, sn_weights, normalizer, formula_max })
}

fn defect_histogram(defects: &[u128], keep: impl Fn(usize) -> bool) -> BTreeMap<u128, u64> {
    let mut h = BTreeMap::new();
    for (i, &d) in defects.iter().enumerate() {
        if keep(i) {
            *h.entry(d).or_insert(0) += 1;
        }
    }
    h
}

fn histogram_json(h: &BTreeMap<u128, u64>) -> Value {
    json!(h.iter().map(|(d, c)| json!({"defect": d.to_string(), "count": c})).collect::<Vec<_>>())
}

/// The numbers of irreducible characters of maximal ℓ-defect agree between
/// S_n and the Sylow-normalizer model, and both maxima equal ℓ^w (w!)_π.
pub fn verify_mckay(ell: u64, w: u64, r: u64) -> Result<VerifyOutcome> {
    let data = mckay_data(ell, w, r)?;
    verify_mckay_with(&data, ell, w, r)
}

fn verify_mckay_with(data: &McKayData, ell: u64, w: u64, r: u64) -> Result<VerifyOutcome> {
    let instance = format!("ell={ell},w={w},r={r}");
    let theorem = "mckay-max-defect-count";
    let mut witnesses = Vec::new();

    let sn_max = data.sn.report.max_defect();
    let sn_count =
        data.sn.report.defects.iter().filter(|&&d| d == sn_max).count() as u64;

    let norm_max = data.normalizer.max_defect();
    let norm_count = data.normalizer.defects.iter().filter(|&&d| d == norm_max).count() as u64;
    let norm_hist = histogram_json(&defect_histogram(&data.normalizer.defects, |_| true));

    {
        if sn_max != data.formula_max || norm_max != data.formula_max {
            witnesses.push(json!({
                "kind": "max-defect-value-mismatch",
                "sn_max": sn_max.to_string(),
                "normalizer_max": norm_max.to_string(),
                "formula": data.formula_max.to_string(),
            }));
        }
        if sn_count != norm_count {
            witnesses.push(json!({
                "kind": "count-mismatch",
                "sn_count": sn_count,
                "normalizer_count": norm_count,
            }));
        }
    }

    let data_json = json!({
        "n": data.n,
        "max_defect": data.formula_max.to_string(),
        "sn_count": sn_count,
        "normalizer_count": norm_count,
        "sn_histogram_weight_w": histogram_json(&defect_histogram(
            &data.sn.report.defects,
            |i| data.sn_weights[i] == w,
        )),
        "normalizer_histogram": norm_hist,
    });
    if witnesses.is_empty() {
        Ok(VerifyOutcome::pass(instance, theorem, data_json))
    } else {
        Ok(VerifyOutcome::fail(instance, theorem, witnesses, data_json))
    }
}

/// For every defect δ ≠ 1, the number of weight-w characters of S_n with
/// ℓ-defect δ equals the number of normalizer characters with defect δ.
pub fn verify_per_defect(ell: u64, w: u64, r: u64) -> Result<VerifyOutcome> {
    let data = mckay_data(ell, w, r)?;
    verify_per_defect_with(&data, ell, w, r)
}

fn verify_per_defect_with(data: &McKayData, ell: u64, w: u64, r: u64) -> Result<VerifyOutcome> {
    let instance = format!("ell={ell},w={w},r={r}");
    let theorem = "per-defect-histogram";
    let mut witnesses = Vec::new();

    let sn_hist = defect_histogram(&data.sn.report.defects, |i| data.sn_weights[i] == w);
    let norm_hist = defect_histogram(&data.normalizer.defects, |_| true);

    {
        let deltas: BTreeSet<u128> = sn_hist.keys().chain(norm_hist.keys()).copied().collect();
        for delta in deltas {
            if delta == 1 {
                continue;
            }
            let a = sn_hist.get(&delta).copied().unwrap_or(0);
            let b = norm_hist.get(&delta).copied().unwrap_or(0);
            if a != b {
                witnesses.push(json!({
                    "kind": "histogram-mismatch",
                    "defect": delta.to_string(),
                    "sn_weight_w_count": a,
                    "normalizer_count": b,
                }));
                break;
            }
        }
    }

    let data_json = json!({
        "n": data.n,
        "sn_histogram_weight_w": histogram_json(&sn_hist),
        "normalizer_histogram": histogram_json(&norm_hist),
    });
    if witnesses.is_empty() {
        Ok(VerifyOutcome::pass(instance, theorem, data_json))
    } else {
        Ok(VerifyOutcome::fail(instance, theorem, witnesses, data_json))
    }
}

// ---------------------------------------------------------------------------
// Sweeps
// ---------------------------------------------------------------------------

/// Default bounds for the full verification sweep. All sweeps are exact;
/// the bounds keep runtimes at desk scale.
#[derive(Clone, Debug)]
pub struct SweepBounds {
    /// Block/defect/isometry sweeps cover 2 ≤ ℓ ≤ n ≤ max_n.
    pub max_n: u64,
    /// Wreath sweeps cover ℓ^w · w! ≤ wreath_order_cap.
    pub wreath_order_cap: u128,
    /// Additional cap on ℓ for wreath sweeps (the order cap alone would
    /// admit cyclic bases far beyond full-table scale).
    pub wreath_ell_cap: u64,
    /// Normalizer sweeps cover (ℓφ(ℓ))^w · w! · r! ≤ mckay_order_cap.
    pub mckay_order_cap: u128,
    /// ... and n = ℓw + r ≤ mckay_max_n.
    pub mckay_max_n: u64,
    /// Maximal-weight sweep covers n ≤ max_weight_max_n with n < ℓ².
    pub max_weight_max_n: u64,
    /// Holomorph block-structure sweep covers 2 ≤ ℓ ≤ holomorph_max_ell.
    pub holomorph_max_ell: u64,
}

impl Default for SweepBounds {
    fn default() -> Self {
        SweepBounds {
            max_n: 10,
            wreath_order_cap: 5000,
            wreath_ell_cap: 30,
            mckay_order_cap: 5000,
            mckay_max_n: 12,
            max_weight_max_n: 12,
            holomorph_max_ell: 7,
        }
    }
}

impl SweepBounds {
    /// (n, ℓ) instances for the block and hook-defect sweeps.
    pub fn nakayama_instances(&self) -> Vec<(u64, u32)> {
        let mut out = Vec::new();
        for n in 2..=self.max_n {
            for ell in 2..=n as u32 {
                out.push((n, ell));
            }
        }
        out
    }

    /// (ℓ, w) instances for the wreath sweeps.
    pub fn wreath_instances(&self) -> Vec<(u64, u64)> {
        let mut out = Vec::new();
        for ell in 2..=self.wreath_ell_cap {
            for w in 1.. {
                let order = (ell as u128)
                    .checked_pow(w as u32)
                    .and_then(|p| p.checked_mul(factorial(w)));
                match order {
                    Some(o) if o <= self.wreath_order_cap => out.push((ell, w)),
                    _ => break,
                }
            }
        }
        out
    }

    /// (ℓ, w, r) instances for the normalizer sweeps.
    pub fn mckay_instances(&self) -> Vec<(u64, u64, u64)> {
        let mut out = Vec::new();
        for ell in 2..=self.mckay_max_n {
            let base_order = (ell * euler_phi(ell)) as u128;
            for w in 1..ell {
                for r in 0..ell {
                    if ell * w + r > self.mckay_max_n {
                        continue;
                    }
                    let order = base_order
                        .checked_pow(w as u32)
                        .and_then(|p| p.checked_mul(factorial(w)))
                        .and_then(|p| p.checked_mul(factorial(r)));
                    match order {
                        Some(o) if o <= self.mckay_order_cap => out.push((ell, w, r)),
                        _ => {}
                    }
                }
            }
        }
        out
    }

    /// (n, ℓ) instances with n < ℓ² for the maximal-weight sweep.
    pub fn max_weight_instances(&self) -> Vec<(u64, u32)> {
        let mut out = Vec::new();
        for n in 1..=self.max_weight_max_n {
            for ell in 2..=self.max_weight_max_n.max(2) as u32 {
                if (ell as u64 * ell as u64) > n {
                    out.push((n, ell));
                }
            }
        }
        out
    }
}

/// Aggregated sweep results.
#[derive(Clone, Debug, Serialize)]
pub struct SweepSummary {
    pub outcomes: Vec<VerifyOutcome>,
    pub passed: usize,
    pub failed: usize,
}

impl SweepSummary {
    pub fn to_json(&self) -> Value {
        json!({
            "passed": self.passed,
            "failed": self.failed,
            "reports": self.outcomes.iter().map(VerifyOutcome::to_json).collect::<Vec<_>>(),
        })
    }
}

enum SweepTask {
    SnChecks(u64, u32),
    Wreath(u64, u64),
    MaxWeight(u64, u32),
    Holomorph(u64),
    Normalizer(u64, u64, u64),
}

fn run_task(task: &SweepTask) -> Result<Vec<VerifyOutcome>> {
    match *task {
        SweepTask::SnChecks(n, ell) => {
            let data = sn_block_data(n, ell)?;
            let mut out = vec![
                verify_nakayama_with(&data, n, ell)?,
                verify_hook_defect_with(&data, n, ell)?,
            ];
            let mut cores = BTreeSet::new();
            for lam in data.table.characters() {
                let dec = ell_decompose(lam, ell);
                if dec.weight >= 1 {
                    cores.insert(dec.core);
                }
            }
            for core in cores {
                out.push(isometry_with(&data, n, ell, &core)?);
            }
            Ok(out)
        }
        SweepTask::Wreath(ell, w) => {
            let data = wreath_block_data(ell, w)?;
            Ok(vec![
                verify_wreath_defects_with_data(&data, ell, w)?,
                verify_congruence_with_data(&data, ell, w)?,
            ])
        }
        SweepTask::MaxWeight(n, ell) => Ok(vec![verify_max_defect_weight(n, ell)?]),
        SweepTask::Holomorph(ell) => Ok(vec![verify_holomorph_blocks(ell)?]),
        SweepTask::Normalizer(ell, w, r) => {
            let data = mckay_data(ell, w, r)?;
            Ok(vec![
                verify_mckay_with(&data, ell, w, r)?,
                verify_per_defect_with(&data, ell, w, r)?,
            ])
        }
    }
}

/// Run the full verification sweep over the given bounds; instances run in
/// parallel and the report order is deterministic.
pub fn run_sweep(bounds: &SweepBounds) -> Result<SweepSummary> {
    let mut tasks = Vec::new();
    for (n, ell) in bounds.nakayama_instances() {
        tasks.push(SweepTask::SnChecks(n, ell));
    }
    for (ell, w) in bounds.wreath_instances() {
        tasks.push(SweepTask::Wreath(ell, w));
    }
    for (n, ell) in bounds.max_weight_instances() {
        tasks.push(SweepTask::MaxWeight(n, ell));
    }
    for ell in 2..=bounds.holomorph_max_ell {
        tasks.push(SweepTask::Holomorph(ell));
    }
    for (ell, w, r) in bounds.mckay_instances() {
        tasks.push(SweepTask::Normalizer(ell, w, r));
    }
    let results: Vec<Result<Vec<VerifyOutcome>>> = tasks.par_iter().map(run_task).collect();
    let mut outcomes = Vec::new();
    for r in results {
        outcomes.extend(r?);
    }
    let passed = outcomes.iter().filter(|o| o.pass).count();
    let failed = outcomes.len() - passed;
    Ok(SweepSummary { outcomes, passed, failed })
}

/// Number of irreducible characters of S_n (for table-size checks).
pub fn sn_char_count(n: u64) -> u128 {
    partition_count(n)
}

/// Number of irreducible characters of B ≀ S_w for a base with s classes.
pub fn wreath_char_count(s: usize, w: u64) -> u128 {
    multipartition_count(s, w)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nakayama_small_cases() {
        let out = verify_nakayama(3, 2).unwrap();
        assert!(out.pass, "{:?}", out.witnesses);
        // blocks are {(3),(1,1,1)} and {(2,1)}
        let blocks = out.data["blocks"].as_array().unwrap();
        assert_eq!(blocks.len(), 2);

        for (n, ell) in [(4, 2), (5, 3), (6, 4), (6, 2)] {
            let out = verify_nakayama(n, ell).unwrap();
            assert!(out.pass, "({n},{ell}): {:?}", out.witnesses);
        }
        // ell > n: all blocks singletons, verified trivially
        let out = verify_nakayama(4, 7).unwrap();
        assert!(out.pass);
        assert_eq!(out.data["blocks"].as_array().unwrap().len(), 5);
    }

    #[test]
    fn hook_defect_small_cases() {
        let out = verify_hook_defect(3, 2).unwrap();
        assert!(out.pass, "{:?}", out.witnesses);
        let rows = out.data["characters"].as_array().unwrap();
        let find = |label: &str| {
            rows.iter().find(|r| r["lambda"] == label).unwrap()["direct_defect"]
                .as_str()
                .unwrap()
                .to_string()
        };
        assert_eq!(find("3"), "2");
        assert_eq!(find("2,1"), "1");
        assert_eq!(find("1,1,1"), "2");

        // every character of S_3 at ell=3 has defect 3
        let out33 = verify_hook_defect(3, 3).unwrap();
        assert!(out33.pass);
        for row in out33.data["characters"].as_array().unwrap() {
            assert_eq!(row["direct_defect"], "3");
        }
    }

    #[test]
    fn max_weight_small_cases() {
        for (n, ell) in [(3u64, 2u32), (7, 3), (9, 4), (5, 5), (2, 3)] {
            let out = verify_max_defect_weight(n, ell).unwrap();
            assert!(out.pass, "({n},{ell}): {:?}", out.witnesses);
        }
        // (7,3): max defect 9 attained by weight-2 partitions
        let out = verify_max_defect_weight(7, 3).unwrap();
        assert_eq!(out.data["max_defect"], "9");
        assert!(verify_max_defect_weight(9, 3).is_err()); // 9 = 3^2 violates n < ell^2
    }

    #[test]
    fn isometry_small_cases() {
        // n=3, ell=2, core (1): signs (+,-) up to flip, |entries| = 1/2
        let out = find_sign_isometry(3, 2, &"1".parse().unwrap()).unwrap();
        assert!(out.pass, "{:?}", out.witnesses);
        let pairs = out.data["pairs"].as_array().unwrap();
        assert_eq!(pairs.len(), 2);
        let signs: Vec<i64> = pairs.iter().map(|p| p["sign"].as_i64().unwrap()).collect();
        assert_eq!(signs[0] * signs[1], -1);

        // weight-0 block passes trivially
        let out0 = find_sign_isometry(3, 2, &"2,1".parse().unwrap()).unwrap();
        assert!(out0.pass);

        // n=4, ell=2, empty core: the weight-2 block of 5 characters
        let out2 = find_sign_isometry(4, 2, &Partition::empty()).unwrap();
        assert!(out2.pass, "{:?}", out2.witnesses);
        assert_eq!(out2.data["pairs"].as_array().unwrap().len(), 5);

        assert!(find_sign_isometry(4, 2, &"2".parse().unwrap()).is_err()); // not a core
    }

    #[test]
    fn isometry_sweep_small() {
        for (n, ell) in [(4u64, 2u32), (5, 2), (5, 3), (6, 3), (6, 4)] {
            for out in verify_isometries(n, ell).unwrap() {
                assert!(out.pass, "({n},{ell}) {}: {:?}", out.instance, out.witnesses);
            }
        }
    }

    #[test]
    fn wreath_defect_and_congruence_small() {
        for (ell, w) in [(2u64, 1u64), (2, 2), (2, 3), (3, 1), (3, 2), (4, 2), (5, 1)] {
            let data = wreath_block_data(ell, w).unwrap();
            let d = verify_wreath_defects_with_data(&data, ell, w).unwrap();
            assert!(d.pass, "defects ({ell},{w}): {:?}", d.witnesses);
            let c = verify_congruence_with_data(&data, ell, w).unwrap();
            assert!(c.pass, "congruence ({ell},{w}): {:?}", c.witnesses);
        }
    }

    #[test]
    fn mckay_small_cases() {
        let out = verify_mckay(2, 1, 1).unwrap();
        assert!(out.pass, "{:?}", out.witnesses);
        assert_eq!(out.data["sn_count"], 2);
        assert_eq!(out.data["normalizer_count"], 2);
        assert_eq!(out.data["max_defect"], "2");

        let out310 = verify_mckay(3, 1, 0).unwrap();
        assert!(out310.pass);
        assert_eq!(out310.data["sn_count"], 3);
        assert_eq!(out310.data["normalizer_count"], 3);

        assert!(verify_mckay(3, 0, 1).is_err());
    }

    #[test]
    fn per_defect_small_cases() {
        for (ell, w, r) in [(2u64, 1u64, 0u64), (2, 1, 1), (3, 1, 0), (3, 1, 1), (3, 2, 1)] {
            let out = verify_per_defect(ell, w, r).unwrap();
            assert!(out.pass, "({ell},{w},{r}): {:?}", out.witnesses);
        }
    }

    #[test]
    fn per_defect_reports_counterexample_at_ell4_w2() {
        // the normalizer side has four extra defect-4 characters (mixed
        // wreath labels over Hol(Z_4)); the histogram check must report
        // exactly that, while the max-defect counts still agree
        let counts = verify_mckay(4, 2, 0).unwrap();
        assert!(counts.pass, "{:?}", counts.witnesses);
        let hist = verify_per_defect(4, 2, 0).unwrap();
        assert!(!hist.pass);
        assert_eq!(hist.witnesses[0]["defect"], "4");
        assert_eq!(hist.witnesses[0]["normalizer_count"], 4);
        assert_eq!(hist.witnesses[0]["sn_weight_w_count"], 0);
    }

    #[test]
    fn wreath_formula_matches_hook_product_after_recombining() {
        // l^w (w!)_pi / deg(label)_pi equals the pi-part of the product of
        // the l-divisible hook lengths of any partition with that quotient
        use crate::partitions::{enumerate_partitions, is_core, multipartitions, recombine};
        for ell in 2u32..=4 {
            for w in 1u64..=3 {
                let cores: Vec<Partition> = (0..=4u64)
                    .flat_map(enumerate_partitions)
                    .filter(|c| is_core(c, ell))
                    .collect();
                for label in multipartitions(ell as usize, w) {
                    let lhs = crate::wreath::reg_defect_formula(ell as u64, w, &label).unwrap();
                    for core in &cores {
                        let lam = recombine(core, &label, ell).unwrap();
                        assert_eq!(
                            lhs,
                            formula_defect(&lam, ell),
                            "identity fails at ell={ell}, w={w}, label={label}, core={core}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn sweep_bounds_instance_sets() {
        let b = SweepBounds::default();
        let naka = b.nakayama_instances();
        assert!(naka.contains(&(10, 10)) && naka.contains(&(2, 2)));
        assert_eq!(naka.len(), (2..=10).map(|n| n - 1).sum::<u64>() as usize);

        let wr = b.wreath_instances();
        assert!(wr.contains(&(2, 5))); // 32 * 120 = 3840 <= 5000
        assert!(!wr.contains(&(2, 6))); // 64 * 720 > 5000
        assert!(wr.contains(&(30, 2)));
        assert!(!wr.contains(&(31, 2))); // ell cap

        let mk = b.mckay_instances();
        assert!(mk.contains(&(2, 1, 1)));
        assert!(mk.contains(&(4, 2, 1)));
        assert!(mk.iter().all(|&(ell, w, r)| ell * w + r <= 12 && w < ell && r < ell));
    }
}
