//! Conjugacy classes and exact integer character tables of S_n.
//!
//! Classes and irreducible characters are both indexed by partitions of n in
//! reverse-lexicographic order. Character values are computed by the
//! Murnaghan–Nakayama rule: strip the largest remaining cycle as a rim hook
//! with sign (−1)^leg, summed over all removable hooks of that length.
//! Labeling convention: χ_(n) is the trivial character and χ_(1^n) the sign
//! character.

use std::collections::HashMap;


use crate::arith::factorial;
use crate::blocks::{ClassData, GroupModel};
use crate::error::Error;
use crate::partitions::{enumerate_partitions, hooks, remove_hook, Partition};
use crate::Result;

/// A conjugacy class of S_n: cycle lengths, exact class size, element order.
#[derive(Clone, Debug)]
pub struct CycleType {
    pub partition: Partition,
    pub class_size: u128,
    pub element_order: u64,
}

/// Centralizer order of the class with the given cycle type:
/// ∏ over distinct part values k of k^{m_k} · m_k!.
pub fn centralizer_order(rho: &Partition) -> u128 {
    let mut acc: u128 = 1;
    let parts = rho.parts();
    let mut i = 0;
    while i < parts.len() {
        let k = parts[i];
        let mut mult = 0u64;
        while i < parts.len() && parts[i] == k {
            mult += 1;
            i += 1;
        }
        for _ in 0..mult {
            acc = acc.checked_mul(k as u128).expect("centralizer overflow");
        }
        acc = acc.checked_mul(factorial(mult)).expect("centralizer overflow");
    }
    acc
}

fn lcm_u64(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return a.max(b).max(1);
    }
    a / num_integer::gcd(a, b) * b
}

/// Order of any element with the given cycle type: lcm of the cycle lengths.
pub fn element_order(rho: &Partition) -> u64 {
    rho.parts().iter().fold(1u64, |acc, &k| lcm_u64(acc, k as u64))
}

/// One class per partition of n, in reverse-lexicographic order, with exact
/// sizes. Supports n = 0 (the trivial group, one class).
pub fn classes(n: u64) -> Vec<CycleType> {
    let total = factorial(n);
    enumerate_partitions(n)
        .into_iter()
        .map(|p| {
            let class_size = total / centralizer_order(&p);
            let element_order = element_order(&p);
            CycleType { partition: p, class_size, element_order }
        })
        .collect()
}

/// The classes of S_n with no cycle length divisible by `ell`, as indices
/// into [`classes`]`(n)`. Always contains the identity class.
pub fn ell_regular_classes(n: u64, ell: u32) -> Vec<usize> {
    classes(n)
        .iter()
        .enumerate()
        .filter(|(_, ct)| ct.partition.parts().iter().all(|&k| k % ell != 0))
        .map(|(i, _)| i)
        .collect()
}

/// Degree of χ_λ by the hook-length formula: n! divided by the product of
/// all hook lengths. Panics if the division is inexact (a hooks bug).
pub fn degree_hlf(lambda: &Partition) -> u128 {
    let n = lambda.size();
    let mut num = factorial(n);
    for h in hooks(lambda) {
        let l = h.len() as u128;
        assert!(num.is_multiple_of(l), "hook-length formula division not exact for {lambda}");
        num /= l;
    }
    num
}

type Memo = HashMap<(Box<[u32]>, Box<[u32]>), i64>;

fn mn_rec(lambda: &Partition, cycles: &[u32], memo: &mut Memo) -> i64 {
    if cycles.is_empty() {
        debug_assert!(lambda.is_empty());
        return 1;
    }
    let key = (
        lambda.parts().to_vec().into_boxed_slice(),
        cycles.to_vec().into_boxed_slice(),
    );
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let k = cycles[0] as u64;
    let rest = &cycles[1..];
    let mut sum: i64 = 0;
    for h in hooks(lambda) {
        if h.len() != k {
            continue;
        }
        let (smaller, leg) = remove_hook(lambda, &h).expect("enumerated hook is valid");
        let term = mn_rec(&smaller, rest, memo);
        sum += if leg % 2 == 0 { term } else { -term };
    }
    memo.insert(key, sum);
    sum
}

/// χ_λ evaluated on the class with cycle type ρ, exactly.
pub fn mn_value(lambda: &Partition, rho: &Partition) -> Result<i64> {
    if lambda.size() != rho.size() {
        return Err(Error::invalid(format!(
            "size mismatch: |{lambda}| = {} but |{rho}| = {}",
            lambda.size(),
            rho.size()
        )));
    }
    let mut memo = Memo::new();
    Ok(mn_rec(lambda, rho.parts(), &mut memo))
}

/// The full exact character table of S_n. Rows and columns are partitions of
/// n in reverse-lexicographic order; values are integers.
#[derive(Clone, Debug)]
pub struct SnCharacterTable {
    n: u64,
    chars: Vec<Partition>,
    cols: Vec<CycleType>,
    values: Vec<i64>,
}

impl SnCharacterTable {
    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn characters(&self) -> &[Partition] {
        &self.chars
    }

    pub fn classes(&self) -> &[CycleType] {
        &self.cols
    }

    pub fn value(&self, chi: usize, class: usize) -> i64 {
        self.values[chi * self.cols.len() + class]
    }

    /// Index of the identity class (cycle type (1^n)).
    pub fn identity_class(&self) -> usize {
        self.cols.len() - 1
    }

    pub fn degree(&self, chi: usize) -> i64 {
        self.value(chi, self.identity_class())
    }

    pub fn char_index(&self, lambda: &Partition) -> Option<usize> {
        self.chars.iter().position(|p| p == lambda)
    }

    /// JSON form: labels as partition strings, values as decimal strings.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "group": format!("S{}", self.n),
            "n": self.n,
            "characters": self.chars.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            "classes": self.cols.iter().map(|c| serde_json::json!({
                "label": c.partition.to_string(),
                "size": c.class_size.to_string(),
                "element_order": c.element_order,
            })).collect::<Vec<_>>(),
            "values": (0..self.chars.len()).map(|i| {
                (0..self.cols.len()).map(|j| self.value(i, j).to_string()).collect::<Vec<_>>()
            }).collect::<Vec<_>>(),
        })
    }
}

/// Build and validate the full character table of S_n.
///
/// Row and column orthogonality are checked exactly before the table is
/// returned; a failure is a fatal internal error.
pub fn character_table(n: u64) -> SnCharacterTable {
    let chars = enumerate_partitions(n);
    let cols = classes(n);
    let mut memo = Memo::new();
    let mut values = Vec::with_capacity(chars.len() * cols.len());
    for lam in &chars {
        for ct in &cols {
            values.push(mn_rec(lam, ct.partition.parts(), &mut memo));
        }
    }
    let table = SnCharacterTable { n, chars, cols, values };
    validate_orthogonality(&table);
    table
}

fn validate_orthogonality(t: &SnCharacterTable) {
    let order = factorial(t.n) as i128;
    let nc = t.cols.len();
    // rows: sum_rho K_rho chi_i(rho) chi_j(rho) = n! delta_ij
    for i in 0..t.chars.len() {
        for j in i..t.chars.len() {
            let mut sum: i128 = 0;
            for (c, ct) in t.cols.iter().enumerate() {
                sum += ct.class_size as i128 * t.value(i, c) as i128 * t.value(j, c) as i128;
            }
            let expect = if i == j { order } else { 0 };
            assert!(
                sum == expect,
                "row orthogonality fails for S_{} at ({}, {}): {} != {}",
                t.n,
                t.chars[i],
                t.chars[j],
                sum,
                expect
            );
        }
    }
    // columns: sum_lambda chi(rho) chi(sigma) = delta * centralizer
    for a in 0..nc {
        for b in a..nc {
            let mut sum: i128 = 0;
            for i in 0..t.chars.len() {
                sum += t.value(i, a) as i128 * t.value(i, b) as i128;
            }
            let expect = if a == b {
                centralizer_order(&t.cols[a].partition) as i128
            } else {
                0
            };
            assert!(sum == expect, "column orthogonality fails for S_{} at classes {a},{b}", t.n);
        }
    }
    // identity column carries the hook-length-formula degrees
    for (i, lam) in t.chars.iter().enumerate() {
        assert!(
            t.degree(i) as i128 == degree_hlf(lam) as i128,
            "degree mismatch for {lam}"
        );
    }
}

/// Wrap a character table as a [`GroupModel`] for the block engine.
///
/// In S_n every element is conjugate to its inverse and to all of its powers
/// of coprime exponent, so the inverse map is the identity and every power
/// map is constant.
pub fn sn_group_model(table: &SnCharacterTable) -> GroupModel {
    let classes: Vec<ClassData> = table
        .classes()
        .iter()
        .enumerate()
        .map(|(i, ct)| {
            let order = ct.element_order;
            let power_map = (1..=order)
                .filter(|k| num_integer::gcd(*k, order) == 1)
                .map(|k| (k, i))
                .collect();
            ClassData {
                label: ct.partition.to_string(),
                size: ct.class_size,
                element_order: order,
                inverse: i,
                power_map,
            }
        })
        .collect();
    let values = (0..table.characters().len())
        .flat_map(|i| {
            (0..table.classes().len())
                .map(move |j| crate::arith::CycloValue::integer(1, table.value(i, j) as i128))
        })
        .collect();
    GroupModel::new(
        format!("S{}", table.n()),
        factorial(table.n()),
        classes,
        table.identity_class(),
        table.characters().iter().map(|p| p.to_string()).collect(),
        values,
        1,
    )
    .expect("symmetric group model is valid")
}
