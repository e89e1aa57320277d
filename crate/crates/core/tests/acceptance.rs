//! Acceptance suite: every verification criterion at its stated bound,
//! exact arithmetic throughout, one pass/fail line per criterion.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use std::collections::BTreeSet;

use rayon::prelude::*;

use ellblocks::blocks::{diagnostics_from_report, validate_closed, validate_power_closed};
use ellblocks::partitions::{ell_decompose, enumerate_partitions, hooks, recombine};
use ellblocks::symmetric::{character_table, classes, ell_regular_classes, sn_group_model};
use ellblocks::verify::{
    sn_block_data, verify_holomorph_blocks, verify_max_defect_weight, wreath_block_data,
    SweepBounds, VerifyOutcome,
};
use ellblocks::wreath::{wreath_classes, BaseTable};

fn report(name: &str, detail: &str, failures: &[String]) {
    let verdict = if failures.is_empty() { "PASS" } else { "FAIL" };
    println!("[acceptance] {name}: {verdict} ({detail})");
    assert!(failures.is_empty(), "{name} failed:\n{}", failures.join("\n"));
}

fn collect_failures(outcomes: &[VerifyOutcome]) -> Vec<String> {
    outcomes
        .iter()
        .filter(|o| !o.pass)
        .map(|o| format!("{} [{}]: {:?}", o.theorem, o.instance, o.witnesses))
        .collect()
}

/// Block partition of Irr(S_n) over ℓ-regular classes equals the partition
/// by ℓ-core, for every 2 ≤ ℓ ≤ n ≤ 10. Exact equality.
#[test]
fn block_partition_matches_cores_sweep() {
    let bounds = SweepBounds::default();
    let outcomes: Vec<VerifyOutcome> = bounds
        .nakayama_instances()
        .par_iter()
        .map(|&(n, ell)| ellblocks::verify::verify_nakayama(n, ell).unwrap())
        .collect();
    report(
        "block-partition-equals-core-partition",
        &format!("{} instances, 2<=ell<=n<=10", outcomes.len()),
        &collect_failures(&outcomes),
    );
}

/// Direct ℓ-defect equals the π-part of the product of ℓ-divisible hook
/// lengths (1 in weight 0), same range. Exact.
#[test]
fn hook_defect_formula_sweep() {
    let bounds = SweepBounds::default();
    let outcomes: Vec<VerifyOutcome> = bounds
        .nakayama_instances()
        .par_iter()
        .map(|&(n, ell)| ellblocks::verify::verify_hook_defect(n, ell).unwrap())
        .collect();
    report(
        "hook-defect-formula",
        &format!("{} instances, 2<=ell<=n<=10", outcomes.len()),
        &collect_failures(&outcomes),
    );
}

/// Wreath checks over ℓ^w·w! ≤ 5000 (ℓ ≤ 30): the direct regular defect of
/// every character of ℤ_ℓ ≀ S_w equals ℓ^w (w!)_π / χ(1)_π with the trivial
/// character attaining ℓ^w (w!)_π, and the normalized inner product
/// ℓ^w w! ⟨χ,1⟩_reg / χ(1) is an integer ≡ (−1)^w mod ℓ. Exact.
#[test]
fn wreath_defect_formula_and_congruence_sweep() {
    let bounds = SweepBounds::default();
    let instances = bounds.wreath_instances();
    let results: Vec<(VerifyOutcome, VerifyOutcome)> = instances
        .par_iter()
        .map(|&(ell, w)| {
            let data = wreath_block_data(ell, w).unwrap();
            let defects = ellblocks::verify::verify_wreath_defects_with_data(&data, ell, w).unwrap();
            let congruence =
                ellblocks::verify::verify_congruence_with_data(&data, ell, w).unwrap();
            (defects, congruence)
        })
        .collect();
    let defect_outcomes: Vec<VerifyOutcome> = results.iter().map(|r| r.0.clone()).collect();
    let congruence_outcomes: Vec<VerifyOutcome> = results.iter().map(|r| r.1.clone()).collect();
    report(
        "wreath-defect-formula",
        &format!("{} instances, ell^w*w! <= 5000, ell <= 30", instances.len()),
        &collect_failures(&defect_outcomes),
    );
    report(
        "wreath-congruence",
        &format!("{} instances, same range", instances.len()),
        &collect_failures(&congruence_outcomes),
    );
}

/// For every ℓ-block of S_n with weight ≥ 1 in the criterion-1 range, a sign
/// vector makes the ℓ-quotient matching a contribution-preserving bijection
/// onto Irr(ℤ_ℓ ≀ S_w) over regular classes, with defects corresponding
/// entrywise. Exact.
#[test]
fn sign_isometries_sweep() {
    let bounds = SweepBounds::default();
    let outcomes: Vec<VerifyOutcome> = bounds
        .nakayama_instances()
        .par_iter()
        .flat_map(|&(n, ell)| ellblocks::verify::verify_isometries(n, ell).unwrap())
        .collect();
    report(
        "sign-isometry",
        &format!("{} blocks of weight >= 1, 2<=ell<=n<=10", outcomes.len()),
        &collect_failures(&outcomes),
    );
}

/// For every (ℓ, w, r) with w, r < ℓ and n = ℓw + r ≤ 12: all characters of
/// maximal ℓ-defect have weight w, and boosted witnesses scale defects by
/// ℓ^{w−v}. Exact.
#[test]
fn max_defect_weight_and_boost_sweep() {
    let bounds = SweepBounds::default();
    let outcomes: Vec<VerifyOutcome> = bounds
        .max_weight_instances()
        .par_iter()
        .map(|&(n, ell)| verify_max_defect_weight(n, ell).unwrap())
        .collect();
    report(
        "max-defect-has-max-weight",
        &format!("{} instances, n <= 12, n < ell^2", outcomes.len()),
        &collect_failures(&outcomes),
    );
}

/// For 2 ≤ ℓ ≤ 7, Irr(Hol(ℤ_ℓ)) splits into one principal block of exactly
/// ℓ characters plus singletons. Exact.
#[test]
fn holomorph_block_structure_sweep() {
    let outcomes: Vec<VerifyOutcome> =
        (2..=7u64).map(|ell| verify_holomorph_blocks(ell).unwrap()).collect();
    report(
        "holomorph-block-structure",
        &format!("{} instances, 2 <= ell <= 7", outcomes.len()),
        &collect_failures(&outcomes),
    );
}

/// For every (ℓ, w, r) with w, r < ℓ, n ≤ 12 and (ℓφ(ℓ))^w·w!·r! ≤ 5000:
/// maximal-defect counts agree between S_n and the normalizer model, and
/// both maxima equal ℓ^w (w!)_π. Exact.
#[test]
fn mckay_max_defect_counts_sweep() {
    let bounds = SweepBounds::default();
    let instances = bounds.mckay_instances();
    let outcomes: Vec<VerifyOutcome> = instances
        .par_iter()
        .map(|&(ell, w, r)| ellblocks::verify::verify_mckay(ell, w, r).unwrap())
        .collect();
    report(
        "mckay-max-defect-counts",
        &format!("{} instances, (ell*phi)^w*w!*r! <= 5000, n <= 12", instances.len()),
        &collect_failures(&outcomes),
    );
}

/// Same range: for every defect δ ≠ 1, the number of weight-w characters of
/// S_n with ℓ-defect δ equals the number of normalizer characters with
/// defect δ. Exact.
///
/// This check reports genuine counterexamples at ℓ = 4, w ≥ 2: the
/// normalizer side has extra characters of defect 4 (wreath labels pairing
/// principal base characters with the degree-2 character of Hol(ℤ_4)) with
/// no weight-w partners in S_n. The mismatch is hand-checkable from induced
/// characters of D_8 × D_8 and is reported with full witnesses; see also
/// `normalizer_block_structure_counterexample_ell4_w2` in the unit tests.
#[test]
fn per_defect_histograms_sweep() {
    let bounds = SweepBounds::default();
    let instances = bounds.mckay_instances();
    let outcomes: Vec<VerifyOutcome> = instances
        .par_iter()
        .map(|&(ell, w, r)| ellblocks::verify::verify_per_defect(ell, w, r).unwrap())
        .collect();
    report(
        "per-defect-histograms",
        &format!("{} instances, (ell*phi)^w*w!*r! <= 5000, n <= 12", instances.len()),
        &collect_failures(&outcomes),
    );
}

/// Structural suite: orthogonality of every constructed table (enforced at
/// construction), class equations, core/quotient roundtrips, the weight and
/// hook-multiset identities, closure validation of every used class set, and
/// the three-way defect-one equivalence.
#[test]
fn structural_property_suite() {
    let mut failures: Vec<String> = Vec::new();

    // class equations
    for n in 1..=10u64 {
        let total: u128 = classes(n).iter().map(|c| c.class_size).sum();
        if total != ellblocks::arith::factorial(n) {
            failures.push(format!("class equation fails for S_{n}"));
        }
    }
    for (ell, w) in SweepBounds::default().wreath_instances() {
        let base = BaseTable::cyclic(ell);
        let total: u128 = wreath_classes(&base, w).iter().map(|c| c.class_size).sum();
        if total != (ell as u128).pow(w as u32) * ellblocks::arith::factorial(w) {
            failures.push(format!("class equation fails for Z{ell} wr S{w}"));
        }
    }

    // core/quotient roundtrips and hook identities
    for n in 1..=12u64 {
        for lam in enumerate_partitions(n) {
            for ell in 2..=n.max(2) as u32 {
                let dec = ell_decompose(&lam, ell);
                if lam.size() != dec.core.size() + ell as u64 * dec.weight {
                    failures.push(format!("size law fails for {lam}, ell={ell}"));
                }
                match recombine(&dec.core, &dec.quotient, ell) {
                    Ok(back) if back == lam => {}
                    _ => failures.push(format!("roundtrip fails for {lam}, ell={ell}")),
                }
                let divisible = ellblocks::partitions::hook_lengths_divisible(&lam, ell);
                if divisible.len() as u64 != dec.weight {
                    failures.push(format!("weight/hook-count mismatch for {lam}, ell={ell}"));
                }
                let mut scaled: Vec<u64> = dec
                    .quotient
                    .components()
                    .iter()
                    .flat_map(|c| hooks(c).into_iter().map(|h| ell as u64 * h.len()))
                    .collect();
                scaled.sort_unstable_by(|a, b| b.cmp(a));
                if divisible != scaled {
                    failures.push(format!("hook multiset mismatch for {lam}, ell={ell}"));
                }
            }
        }
    }

    // orthogonality of constructed tables (validated at construction) and
    // closure of every class set the sweeps use
    for n in 1..=10u64 {
        let model = sn_group_model(&character_table(n));
        for ell in 2..=n.max(2) as u32 {
            let set: BTreeSet<usize> = ell_regular_classes(n, ell).into_iter().collect();
            if validate_closed(&model, &set).is_err() {
                failures.push(format!("ell-regular set of S_{n} not closed at ell={ell}"));
            }
        }
    }
    for (ell, w) in [(2u64, 2u64), (2, 3), (2, 4), (3, 2), (3, 3), (4, 2), (5, 2), (6, 2), (7, 1), (8, 1)] {
        match wreath_block_data(ell, w) {
            Ok(data) => {
                let set: BTreeSet<usize> = data.table.regular_classes().into_iter().collect();
                if validate_power_closed(&data.model, &set).is_err() {
                    failures.push(format!("regular set of Z{ell} wr S{w} not power-closed"));
                }
            }
            Err(e) => failures.push(format!("wreath data ({ell},{w}): {e}")),
        }
    }
    for ell in 2..=7u64 {
        if let Err(e) = ellblocks::normalizer::holomorph_blocks(ell) {
            failures.push(format!("holomorph blocks ell={ell}: {e}"));
        }
    }
    for (ell, w, r) in [(2u64, 1u64, 1u64), (3, 1, 1), (3, 2, 0), (4, 1, 2)] {
        match ellblocks::normalizer::normalizer_model(ell, w, r) {
            Ok(nm) => {
                if let Err(e) = ellblocks::normalizer::normalizer_defects(&nm) {
                    failures.push(format!("normalizer defects ({ell},{w},{r}): {e}"));
                }
            }
            Err(e) => failures.push(format!("normalizer model ({ell},{w},{r}): {e}")),
        }
    }

    // three-way defect-one equivalence on swept models
    for n in 2..=8u64 {
        for ell in 2..=n as u32 {
            let data = sn_block_data(n, ell).unwrap();
            for chi in 0..data.model.num_chars() {
                match diagnostics_from_report(&data.model, chi, &data.regular, &data.report) {
                    Ok(d) if d.agree() => {}
                    other => failures.push(format!(
                        "defect-one criteria disagree in S_{n}, ell={ell}, chi={chi}: {other:?}"
                    )),
                }
            }
        }
    }
    for (ell, w) in [(2u64, 2u64), (2, 3), (3, 2), (4, 2), (5, 1), (6, 1)] {
        let data = wreath_block_data(ell, w).unwrap();
        for chi in 0..data.model.num_chars() {
            match diagnostics_from_report(&data.model, chi, &data.regular, &data.report) {
                Ok(d) if d.agree() => {}
                other => failures.push(format!(
                    "defect-one criteria disagree in Z{ell} wr S{w}, chi={chi}: {other:?}"
                )),
            }
        }
    }

    report(
        "structural-property-suite",
        "orthogonality, class equations, roundtrips, hook identities, closure, defect-1 equivalence",
        &failures,
    );
}
