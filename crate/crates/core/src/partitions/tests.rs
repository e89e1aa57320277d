use super::*;
use std::collections::BTreeSet;

// ---- independent oracles -------------------------------------------------

/// Hooks by brute-force scanning of the boolean Young-diagram grid, with no
/// use of conjugates or β-sets.
fn hooks_grid_oracle(lambda: &Partition) -> Vec<(u32, u32, u32, u32)> {
    let rows = lambda.num_parts();
    let cols = lambda.part(1) as usize;
    let cell = |r: usize, c: usize| r >= 1 && c >= 1 && r <= rows && c <= lambda.part(r) as usize;
    let mut out = Vec::new();
    for r in 1..=rows {
        for c in 1..=cols {
            if !cell(r, c) {
                continue;
            }
            let arm = (c + 1..=cols).filter(|&c2| cell(r, c2)).count() as u32;
            let leg = (r + 1..=rows).filter(|&r2| cell(r2, c)).count() as u32;
            out.push((r as u32, c as u32, arm, leg));
        }
    }
    out
}

/// Rim-hook removal by walking the border of the Young diagram: the rim hook
/// of the cell (r, c) consists of the diagram cells (i, j) with i >= r,
/// j >= c whose lower-right neighbor (i+1, j+1) is outside the diagram.
fn remove_rim_grid_oracle(lambda: &Partition, row: u32, col: u32) -> Option<Vec<u32>> {
    let rows = lambda.num_parts();
    let cell = |r: usize, c: usize| r >= 1 && c >= 1 && r <= rows && c <= lambda.part(r) as usize;
    if !cell(row as usize, col as usize) {
        return None;
    }
    let mut grid: Vec<Vec<bool>> = (1..=rows)
        .map(|r| (1..=lambda.part(r)).map(|_| true).collect())
        .collect();
    for r in row as usize..=rows {
        for c in col as usize..=lambda.part(r) as usize {
            if !cell(r + 1, c + 1) {
                grid[r - 1][c - 1] = false;
            }
        }
    }
    let mut parts: Vec<u32> = grid
        .iter()
        .map(|r| r.iter().take_while(|&&b| b).count() as u32)
        .collect();
    // the removal is valid only if each row is still a prefix of cells
    for (r, rowcells) in grid.iter().enumerate() {
        if rowcells.iter().skip(parts[r] as usize).any(|&b| b) {
            return None;
        }
    }
    while parts.last() == Some(&0) {
        parts.pop();
    }
    if parts.windows(2).any(|w| w[0] < w[1]) {
        return None;
    }
    Some(parts)
}

/// Tiny deterministic xorshift generator for randomized removal orders.
struct XorShift(u64);

impl XorShift {
    fn next(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x
    }

    fn below(&mut self, n: usize) -> usize {
        (self.next() % n as u64) as usize
    }
}

/// Core by repeated removal of ℓ-divisible hooks in a random order;
/// independent of the abacus route.
fn core_by_random_removal(lambda: &Partition, ell: u32, rng: &mut XorShift) -> Partition {
    let mut cur = lambda.clone();
    loop {
        let divisible: Vec<Hook> = hooks(&cur)
            .into_iter()
            .filter(|h| h.len() % ell as u64 == 0)
            .collect();
        if divisible.is_empty() {
            return cur;
        }
        let h = divisible[rng.below(divisible.len())];
        cur = remove_hook(&cur, &h).unwrap().0;
    }
}

// ---- enumeration ----------------------------------------------------------

#[test]
fn enumeration_small_cases() {
    assert_eq!(enumerate_partitions(0), vec![Partition::empty()]);
    let p3: Vec<String> = enumerate_partitions(3).iter().map(|p| p.to_string()).collect();
    assert_eq!(p3, vec!["3", "2,1", "1,1,1"]);
}

#[test]
fn enumeration_counts_match_pentagonal_recurrence() {
    for n in 0..=30 {
        assert_eq!(enumerate_partitions(n).len() as u128, partition_count(n), "p({n})");
    }
    assert_eq!(partition_count(10), 42);
}

#[test]
fn enumeration_is_reverse_lexicographic_and_duplicate_free() {
    for n in 0..=15 {
        let all = enumerate_partitions(n);
        let set: BTreeSet<_> = all.iter().cloned().collect();
        assert_eq!(set.len(), all.len());
        for w in all.windows(2) {
            assert!(w[0] > w[1], "order violated at {} vs {}", w[0], w[1]);
        }
        assert!(all.iter().all(|p| p.size() == n));
    }
}

#[test]
fn multipartition_enumeration_counts() {
    for s in 1..=5 {
        for w in 0..=6 {
            let all = multipartitions(s, w);
            assert_eq!(all.len() as u128, multipartition_count(s, w));
            let set: BTreeSet<_> = all.iter().cloned().collect();
            assert_eq!(set.len(), all.len());
            assert!(all.iter().all(|t| t.size() == w && t.len() == s));
        }
    }
    // Z_2 wr S_2 bookkeeping: five 2-tuples of partitions of 2
    assert_eq!(multipartitions(2, 2).len(), 5);
}

// ---- hooks ----------------------------------------------------------------

#[test]
fn hooks_match_grid_oracle() {
    for n in 0..=12u64 {
        for p in enumerate_partitions(n) {
            let got: Vec<_> = hooks(&p).iter().map(|h| (h.row, h.col, h.arm, h.leg)).collect();
            assert_eq!(got, hooks_grid_oracle(&p), "hooks differ on {p}");
        }
    }
}

#[test]
fn hooks_small_cases() {
    let h1 = hooks(&"1".parse().unwrap());
    assert_eq!(h1.len(), 1);
    assert_eq!(h1[0].len(), 1);

    let row = hooks(&"5".parse().unwrap());
    let lens: Vec<u64> = row.iter().map(|h| h.len()).collect();
    assert_eq!(lens, vec![5, 4, 3, 2, 1]);

    let p21: Partition = "2,1".parse().unwrap();
    let mut lens: Vec<u64> = hooks(&p21).iter().map(|h| h.len()).collect();
    lens.sort_unstable();
    assert_eq!(lens, vec![1, 1, 3]);
    let corner = hooks(&p21).into_iter().find(|h| h.row == 1 && h.col == 1).unwrap();
    assert_eq!(corner.len(), 3);
    assert_eq!(corner.leg, 1);
}

// ---- rim hook removal -----------------------------------------------------

#[test]
fn remove_hook_examples() {
    let p21: Partition = "2,1".parse().unwrap();
    let h = hooks(&p21).into_iter().find(|h| h.len() == 3).unwrap();
    let (rest, leg) = remove_hook(&p21, &h).unwrap();
    assert_eq!(rest, Partition::empty());
    assert_eq!(leg, 1);

    for n in 1..=8u32 {
        let row = Partition::new(vec![n]).unwrap();
        let h = hooks(&row).into_iter().find(|h| h.len() == n as u64).unwrap();
        let (rest, leg) = remove_hook(&row, &h).unwrap();
        assert_eq!(rest, Partition::empty());
        assert_eq!(leg, 0);
    }
}

#[test]
fn remove_hook_rejects_foreign_hook() {
    let p: Partition = "3,1".parse().unwrap();
    let bogus = Hook { row: 1, col: 1, arm: 5, leg: 0 };
    assert!(remove_hook(&p, &bogus).is_err());
    let off = Hook { row: 4, col: 1, arm: 0, leg: 0 };
    assert!(remove_hook(&p, &off).is_err());
}

#[test]
fn remove_hook_matches_grid_walk_oracle() {
    for n in 1..=11u64 {
        for p in enumerate_partitions(n) {
            for h in hooks(&p) {
                let (rest, _) = remove_hook(&p, &h).unwrap();
                let oracle = remove_rim_grid_oracle(&p, h.row, h.col)
                    .unwrap_or_else(|| panic!("grid walk failed on {p} at ({},{})", h.row, h.col));
                assert_eq!(rest.parts().to_vec(), oracle, "rim removal differs on {p}");
            }
        }
    }
}

// ---- core / quotient / weight ----------------------------------------------

#[test]
fn decompose_examples() {
    let p21: Partition = "2,1".parse().unwrap();

    let d3 = ell_decompose(&p21, 3);
    assert_eq!(d3.core, Partition::empty());
    assert_eq!(d3.weight, 1);
    let sizes: Vec<u64> = d3.quotient.components().iter().map(Partition::size).collect();
    assert_eq!(sizes.iter().sum::<u64>(), 1);
    assert_eq!(sizes.iter().filter(|&&s| s == 0).count(), 2);

    let d2 = ell_decompose(&p21, 2);
    assert_eq!(d2.core, p21);
    assert_eq!(d2.weight, 0);
    assert!(d2.quotient.components().iter().all(Partition::is_empty));
}

#[test]
fn core_of_gamma_with_column_of_ell_cycles() {
    // gamma is the ell-core of (gamma, 1^{ell*w}) whenever gamma_k >= 1 rows
    // allow appending; checked for all ell-cores gamma of r <= 6.
    for ell in 2..=5u32 {
        for r in 0..=6u64 {
            for gamma in enumerate_partitions(r).into_iter().filter(|g| is_core(g, ell)) {
                for w in 1..=3u64 {
                    let mut parts = gamma.parts().to_vec();
                    parts.extend(std::iter::repeat_n(1, (ell as u64 * w) as usize));
                    parts.sort_unstable_by(|a, b| b.cmp(a));
                    let lam = Partition::new(parts).unwrap();
                    let dec = ell_decompose(&lam, ell);
                    assert_eq!(dec.core, gamma, "core of ({gamma},1^{}) for ell={ell}", ell as u64 * w);
                    assert_eq!(dec.weight, w);
                }
            }
        }
    }
}

#[test]
fn size_law_and_divisible_hook_count() {
    for n in 1..=12u64 {
        for lam in enumerate_partitions(n) {
            for ell in 2..=n.max(2) as u32 {
                let dec = ell_decompose(&lam, ell);
                assert_eq!(lam.size(), dec.core.size() + ell as u64 * dec.weight);
                // weight equals the number of hooks with ell-divisible length
                assert_eq!(
                    dec.weight,
                    hook_lengths_divisible(&lam, ell).len() as u64,
                    "weight mismatch for {lam}, ell={ell}"
                );
            }
        }
    }
}

#[test]
fn divisible_hooks_are_scaled_quotient_hooks() {
    // multiset identity: lengths of ell-divisible hooks of lambda equal
    // ell times the hook lengths of the quotient
    for n in 1..=12u64 {
        for lam in enumerate_partitions(n) {
            for ell in 2..=n.max(2) as u32 {
                let dec = ell_decompose(&lam, ell);
                let mut scaled: Vec<u64> = dec
                    .quotient
                    .components()
                    .iter()
                    .flat_map(|c| hooks(c).into_iter().map(|h| ell as u64 * h.len()))
                    .collect();
                scaled.sort_unstable_by(|a, b| b.cmp(a));
                assert_eq!(hook_lengths_divisible(&lam, ell), scaled, "{lam}, ell={ell}");
            }
        }
    }
}

#[test]
fn divisible_hook_examples() {
    let p21: Partition = "2,1".parse().unwrap();
    assert_eq!(hook_lengths_divisible(&p21, 3), vec![3]);
    assert!(hook_lengths_divisible(&p21, 2).is_empty());
    let p331: Partition = "3,3,1".parse().unwrap();
    let mut all: Vec<u64> = hooks(&p331).iter().map(|h| h.len()).collect();
    all.sort_unstable_by(|a, b| b.cmp(a));
    assert_eq!(all, vec![5, 4, 3, 2, 2, 1, 1]);
    assert_eq!(hook_lengths_divisible(&p331, 3), vec![3]);
}

#[test]
fn core_is_independent_of_removal_order() {
    let mut rng = XorShift(0x9E3779B97F4A7C15);
    for n in 1..=10u64 {
        for lam in enumerate_partitions(n) {
            for ell in 2..=n.max(2) as u32 {
                let dec = ell_decompose(&lam, ell);
                for _ in 0..20 {
                    assert_eq!(
                        core_by_random_removal(&lam, ell, &mut rng),
                        dec.core,
                        "order-dependent core for {lam}, ell={ell}"
                    );
                }
            }
        }
    }
}

#[test]
fn abacus_roundtrip() {
    for n in (1..=12u64).chain([20, 30]) {
        for (i, lam) in enumerate_partitions(n).iter().enumerate() {
            if n > 12 && i % 7 != 0 {
                continue; // sample the large sizes
            }
            for ell in 2..=8u32 {
                let view = AbacusView::from_partition(lam, ell);
                assert_eq!(&view.to_partition(), lam, "roundtrip fails for {lam}, ell={ell}");
            }
        }
    }
}

#[test]
fn core_commutes_with_conjugation() {
    for n in 1..=10u64 {
        for lam in enumerate_partitions(n) {
            for ell in 2..=n.max(2) as u32 {
                let lhs = ell_decompose(&lam.conjugate(), ell).core;
                let rhs = ell_decompose(&lam, ell).core.conjugate();
                assert_eq!(lhs, rhs, "conjugation mismatch for {lam}, ell={ell}");
            }
        }
    }
}

// ---- recombination ----------------------------------------------------------

#[test]
fn recombine_inverts_decompose() {
    for n in 0..=12u64 {
        for lam in enumerate_partitions(n) {
            for ell in 2..=6u32 {
                let dec = ell_decompose(&lam, ell);
                let back = recombine(&dec.core, &dec.quotient, ell).unwrap();
                assert_eq!(back, lam, "recombine roundtrip fails for {lam}, ell={ell}");
            }
        }
    }
}

#[test]
fn recombine_empty_inputs() {
    let q = MultiPartition::empty(4);
    assert_eq!(recombine(&Partition::empty(), &q, 4).unwrap(), Partition::empty());
}

#[test]
fn recombine_rejects_non_core() {
    let q = MultiPartition::empty(2);
    let not_core: Partition = "2".parse().unwrap(); // has a 2-hook
    assert!(recombine(&not_core, &q, 2).is_err());
    assert!(recombine(&Partition::empty(), &MultiPartition::empty(3), 2).is_err());
}

#[test]
fn weight_one_empty_core_bijection() {
    // The three single-(1) quotients biject with the three partitions of 3
    // of empty 3-core; recombine is the inverse of ell_decompose on them.
    let singles: Vec<MultiPartition> = (0..3)
        .map(|i| MultiPartition::empty(3).with_component(i, "1".parse().unwrap()))
        .collect();
    let mut images = BTreeSet::new();
    for q in &singles {
        let lam = recombine(&Partition::empty(), q, 3).unwrap();
        assert_eq!(lam.size(), 3);
        assert_eq!(ell_decompose(&lam, 3).quotient, *q);
        images.insert(lam);
    }
    let all3: BTreeSet<Partition> = enumerate_partitions(3).into_iter().collect();
    assert_eq!(images, all3);
}

// ---- weight boosting ---------------------------------------------------------

#[test]
fn boost_weight_adds_length_ell_hooks() {
    let lam: Partition = "3,3,1".parse().unwrap();
    let nu: Partition = "1".parse().unwrap();
    let mu = boost_weight(&lam, 3, 2, &nu).unwrap();
    assert_eq!(mu.size(), 7);
    assert_eq!(ell_decompose(&mu, 3).weight, 2);
    assert_eq!(hook_lengths_divisible(&mu, 3), vec![3, 3]);
}

#[test]
fn boost_weight_noop_at_full_weight() {
    // v = target_w: the divisible hook multiset is preserved exactly
    for n in 4..=9u64 {
        for ell in 3..=4u32 {
            let w = n / ell as u64;
            if w == 0 || w >= ell as u64 {
                continue;
            }
            for lam in enumerate_partitions(n) {
                let dec = ell_decompose(&lam, ell);
                if dec.weight != w {
                    continue;
                }
                let mu = boost_weight(&lam, ell, w, &dec.core).unwrap();
                assert_eq!(
                    hook_lengths_divisible(&mu, ell),
                    hook_lengths_divisible(&lam, ell),
                    "multiset changed for {lam} -> {mu}"
                );
            }
        }
    }
}

#[test]
fn boost_weight_from_weight_zero_gives_all_ell_hooks() {
    // A weight-0 partition of n = r + ell*w boosted to weight w acquires
    // exactly w hooks of length ell (quotient padded with w components (1)).
    for ell in [3u32, 4] {
        for w in 1..ell as u64 {
            for r in 0..ell as u64 {
                let n = ell as u64 * w + r;
                let nu = enumerate_partitions(r)
                    .into_iter()
                    .find(|g| is_core(g, ell))
                    .expect("an ell-core of size r < ell always exists");
                for lam in enumerate_partitions(n).into_iter().filter(|p| is_core(p, ell)) {
                    let mu = boost_weight(&lam, ell, w, &nu).unwrap();
                    assert_eq!(mu.size(), n);
                    assert_eq!(ell_decompose(&mu, ell).core, nu);
                    assert_eq!(hook_lengths_divisible(&mu, ell), vec![ell as u64; w as usize]);
                }
            }
        }
    }
}

#[test]
fn boost_weight_rejects_bad_inputs() {
    let lam: Partition = "3,3,1".parse().unwrap(); // weight 1 at ell = 3
    let nu: Partition = "1".parse().unwrap();
    assert!(boost_weight(&lam, 3, 0, &"3,3,1".parse().unwrap()).is_err()); // target < v
    assert!(boost_weight(&lam, 3, 3, &nu).is_err()); // target >= ell
    assert!(boost_weight(&lam, 3, 2, &"2".parse().unwrap()).is_err()); // |nu| mismatch
    let lam9: Partition = "7,2".parse().unwrap(); // size 9, weight 1 at ell=3
    assert_eq!(ell_decompose(&lam9, 3).weight, 1);
    assert!(boost_weight(&lam9, 3, 2, &"3".parse().unwrap()).is_err()); // nu not a 3-core
}

// ---- parsing / display ---------------------------------------------------------

#[test]
fn partition_string_roundtrip() {
    for s in ["-", "1", "3,1", "5,5,2,1,1"] {
        let p: Partition = s.parse().unwrap();
        assert_eq!(p.to_string(), s);
    }
    assert!("3,5".parse::<Partition>().is_err());
    assert!("0".parse::<Partition>().is_err());
    let mp: MultiPartition = "1;-;2".parse().unwrap();
    assert_eq!(mp.len(), 3);
    assert_eq!(mp.size(), 3);
    assert_eq!(mp.to_string(), "1;-;2");
}

#[test]
fn conjugate_is_involution() {
    for n in 0..=12u64 {
        for p in enumerate_partitions(n) {
            assert_eq!(p.conjugate().conjugate(), p);
        }
    }
}

mod properties {
    use super::*;
    use proptest::prelude::*;

    fn arb_partition(max_n: u64) -> impl Strategy<Value = Partition> {
        (0..=max_n).prop_flat_map(|n| {
            let all = enumerate_partitions(n);
            let len = all.len();
            (0..len).prop_map(move |i| all[i].clone())
        })
    }

    proptest! {
        #[test]
        fn abacus_roundtrip_random(p in arb_partition(40), ell in 2u32..=9) {
            prop_assert_eq!(AbacusView::from_partition(&p, ell).to_partition(), p);
        }

        #[test]
        fn decompose_recombine_random(p in arb_partition(25), ell in 2u32..=7) {
            let dec = ell_decompose(&p, ell);
            prop_assert_eq!(recombine(&dec.core, &dec.quotient, ell).unwrap(), p);
        }
    }
}
