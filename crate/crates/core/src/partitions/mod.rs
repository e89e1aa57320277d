//! Partition combinatorics: Young diagrams, hooks, rim-hook removal,
//! multipartitions, and (in [`abacus`]) the ℓ-abacus with core / quotient /
//! weight decompositions.

mod abacus;

pub use abacus::{
    boost_weight, ell_decompose, hook_lengths_divisible, is_core, recombine, AbacusView,
    EllDecomposition,
};

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::Error;
use crate::Result;

/// An integer partition: weakly decreasing positive parts. The empty
/// sequence is the unique partition of 0.
///
/// The derived ordering is lexicographic on the part vector, so sorting a set
/// of partitions of n in descending order gives the reverse-lexicographic
/// enumeration order used throughout ((n) first, (1^n) last).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::invalid("partition parts must be positive"));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::invalid("partition parts must be weakly decreasing"));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// Construct from parts known to be valid.
    pub(crate) fn from_valid(parts: Vec<u32>) -> Self {
        debug_assert!(Partition::new(parts.clone()).is_ok());
        Partition { parts }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn num_parts(&self) -> usize {
        self.parts.len()
    }

    pub fn size(&self) -> u64 {
        self.parts.iter().map(|&p| p as u64).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Part at 1-based row index, 0 beyond the last row.
    pub fn part(&self, row: usize) -> u32 {
        if row >= 1 && row <= self.parts.len() {
            self.parts[row - 1]
        } else {
            0
        }
    }

    /// The conjugate (transposed) partition.
    pub fn conjugate(&self) -> Partition {
        if self.parts.is_empty() {
            return Partition::empty();
        }
        let cols = self.parts[0] as usize;
        let mut t = Vec::with_capacity(cols);
        for c in 1..=cols as u32 {
            t.push(self.parts.iter().take_while(|&&p| p >= c).count() as u32);
        }
        Partition { parts: t }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "-");
        }
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", s.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "-" {
            return Ok(Partition::empty());
        }
        let parts: std::result::Result<Vec<u32>, _> =
            s.split(',').map(|t| t.trim().parse::<u32>()).collect();
        let parts = parts.map_err(|_| Error::invalid(format!("bad partition string: {s:?}")))?;
        Partition::new(parts)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

/// All partitions of n, in reverse-lexicographic order: (n) first,
/// (1^n) last. For n = 0 the single entry is the empty partition.
pub fn enumerate_partitions(n: u64) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut stack = Vec::new();
    gen_parts(n, n.min(u32::MAX as u64) as u32, &mut stack, &mut out);
    out
}

fn gen_parts(n: u64, max: u32, stack: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if n == 0 {
        out.push(Partition { parts: stack.clone() });
        return;
    }
    let hi = max.min(n as u32);
    for first in (1..=hi).rev() {
        stack.push(first);
        gen_parts(n - first as u64, first, stack, out);
        stack.pop();
    }
}

/// A hook of a partition: the cell (row, col) plus its arm (cells to the
/// right) and leg (cells below). Length = arm + leg + 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Hook {
    /// 1-based row index of the corner cell.
    pub row: u32,
    /// 1-based column index of the corner cell.
    pub col: u32,
    pub arm: u32,
    pub leg: u32,
}

impl Hook {
    /// Hook length arm + leg + 1 (a hook is never empty).
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> u64 {
        self.arm as u64 + self.leg as u64 + 1
    }
}

/// One hook per cell of the Young diagram, in row-major order.
pub fn hooks(lambda: &Partition) -> Vec<Hook> {
    let conj = lambda.conjugate();
    let mut out = Vec::with_capacity(lambda.size() as usize);
    for (r0, &len) in lambda.parts.iter().enumerate() {
        let row = r0 as u32 + 1;
        for col in 1..=len {
            let arm = len - col;
            let leg = conj.part(col as usize) - row;
            out.push(Hook { row, col, arm, leg });
        }
    }
    out
}

/// Remove the rim hook determined by `h` from `lambda`.
///
/// Returns the smaller partition and the hook's leg length (the sign
/// exponent in the Murnaghan–Nakayama rule). Rejects a hook that is not a
/// hook of `lambda`.
pub fn remove_hook(lambda: &Partition, h: &Hook) -> Result<(Partition, u32)> {
    let m = lambda.num_parts();
    let row = h.row as usize;
    if row < 1 || row > m {
        return Err(Error::NoSuchHook { row: h.row, col: h.col });
    }
    let conj = lambda.conjugate();
    if h.col < 1
        || h.col > lambda.parts[row - 1]
        || h.arm != lambda.parts[row - 1] - h.col
        || h.leg != conj.part(h.col as usize) - h.row
    {
        return Err(Error::NoSuchHook { row: h.row, col: h.col });
    }
    // First-column hook lengths form a beta-set; removing a hook of length k
    // moves the bead of its row down by k.
    let mut beta: Vec<u64> = (1..=m)
        .map(|i| lambda.parts[i - 1] as u64 + (m - i) as u64)
        .collect();
    let b = beta[row - 1];
    let target = b - h.len();
    debug_assert!(!beta.contains(&target), "rim hook removal must land in a gap");
    beta[row - 1] = target;
    beta.sort_unstable_by(|a, b| b.cmp(a));
    Ok((partition_from_beta_desc(&beta), h.leg))
}

/// Read a partition off a strictly decreasing beta-set.
pub(crate) fn partition_from_beta_desc(beta: &[u64]) -> Partition {
    let m = beta.len();
    let mut parts = Vec::with_capacity(m);
    for (i, &b) in beta.iter().enumerate() {
        let offset = (m - 1 - i) as u64;
        debug_assert!(b >= offset, "beta-set not strictly decreasing");
        let p = b - offset;
        if p > 0 {
            parts.push(u32::try_from(p).expect("part fits u32"));
        }
    }
    Partition::from_valid(parts)
}

/// A fixed-length tuple of partitions. Labels wreath-product classes and
/// characters, and ℓ-quotients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiPartition {
    components: Vec<Partition>,
}

impl MultiPartition {
    pub fn new(components: Vec<Partition>) -> Self {
        MultiPartition { components }
    }

    pub fn empty(len: usize) -> Self {
        MultiPartition { components: vec![Partition::empty(); len] }
    }

    pub fn components(&self) -> &[Partition] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &Partition {
        &self.components[i]
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// Total size: the sum of the component sizes.
    pub fn size(&self) -> u64 {
        self.components.iter().map(Partition::size).sum()
    }

    pub fn with_component(&self, i: usize, p: Partition) -> MultiPartition {
        let mut c = self.components.clone();
        c[i] = p;
        MultiPartition { components: c }
    }
}

impl fmt::Display for MultiPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.components.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", s.join(";"))
    }
}

impl FromStr for MultiPartition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let components: Result<Vec<Partition>> = s.split(';').map(Partition::from_str).collect();
        Ok(MultiPartition { components: components? })
    }
}

impl Serialize for MultiPartition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

/// All s-tuples of partitions of total size w, ordered component-major:
/// earlier components are more significant, and within a component larger
/// sizes come first with reverse-lexicographic order inside each size.
pub fn multipartitions(s: usize, w: u64) -> Vec<MultiPartition> {
    assert!(s >= 1);
    let mut out = Vec::new();
    let mut acc: Vec<Partition> = Vec::with_capacity(s);
    gen_tuples(s, w, &mut acc, &mut out);
    out
}

fn gen_tuples(s: usize, w: u64, acc: &mut Vec<Partition>, out: &mut Vec<MultiPartition>) {
    if s == 1 {
        for p in enumerate_partitions(w) {
            acc.push(p);
            out.push(MultiPartition { components: acc.clone() });
            acc.pop();
        }
        return;
    }
    for k in (0..=w).rev() {
        for p in enumerate_partitions(k) {
            acc.push(p);
            gen_tuples(s - 1, w - k, acc, out);
            acc.pop();
        }
    }
}

/// Number of partitions of n (Euler pentagonal recurrence), exact.
pub fn partition_count(n: u64) -> u128 {
    let n = n as usize;
    let mut table = vec![0u128; n + 1];
    table[0] = 1;
    for i in 1..=n {
        let mut sum: i128 = 0;
        let mut k: i64 = 1;
        loop {
            let g1 = (k * (3 * k - 1) / 2) as usize;
            if g1 > i {
                break;
            }
            let sign: i128 = if k % 2 == 1 { 1 } else { -1 };
            sum += sign * table[i - g1] as i128;
            let g2 = (k * (3 * k + 1) / 2) as usize;
            if g2 <= i {
                sum += sign * table[i - g2] as i128;
            }
            k += 1;
        }
        table[i] = u128::try_from(sum).expect("partition count is positive");
    }
    table[n]
}

/// Number of s-tuples of partitions of total size w.
pub fn multipartition_count(s: usize, w: u64) -> u128 {
    // convolution power of the partition-count series
    let w = w as usize;
    let mut cur = vec![0u128; w + 1];
    cur[0] = 1;
    let p: Vec<u128> = (0..=w).map(|k| partition_count(k as u64)).collect();
    for _ in 0..s {
        let mut next = vec![0u128; w + 1];
        for i in 0..=w {
            if cur[i] == 0 {
                continue;
            }
            for j in 0..=w - i {
                next[i + j] += cur[i] * p[j];
            }
        }
        cur = next;
    }
    cur[w]
}

#[cfg(test)]
mod tests;
