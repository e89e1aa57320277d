//! The holomorph N = ℤ_ℓ ⋊ (ℤ/ℓ)^× and the Sylow-normalizer model
//! (N ≀ S_w) × S_r.
//!
//! N is the normalizer in S_ℓ of the cyclic group generated by an ℓ-cycle π;
//! concretely its elements are pairs (a, t) with a mod ℓ and t a unit mod ℓ,
//! multiplying as (a, t)(a′, t′) = (a + t·a′, t·t′). Conjugacy classes are
//! found by brute force; irreducible characters by the little-group method
//! (orbits of the unit group on characters of ℤ_ℓ, extension to the
//! stabilizer, tensoring and induction), all in exact cyclotomic arithmetic.
//!
//! ℓ-singular elements of N are the conjugates of π = (1, 1): exactly the
//! generators of ⟨π⟩. A class of N ≀ S_w is ℓ-regular when its tuple
//! component at the class of π is empty; an element of (N ≀ S_w) × S_r is
//! ℓ-regular when its left part is.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_traits::ToPrimitive;

use crate::arith::{euler_phi, CycloValue};
use crate::blocks::{
    block_partition, validate_closed, BlockReport, ClassData, ClosedClassSet, GroupModel,
};
use crate::error::Error;
use crate::partitions::{MultiPartition, Partition};
use crate::symmetric::{character_table, sn_group_model};
use crate::wreath::{wreath_table, BaseTable, WreathTable};
use crate::Result;

fn mod_pow(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc: u128 = 1;
    let mm = m as u128;
    let mut bb = b as u128 % mm;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * bb % mm;
        }
        bb = bb * bb % mm;
        e >>= 1;
    }
    b = acc as u64;
    b
}

fn mod_inv(a: u64, m: u64) -> u64 {
    (1..m).find(|&x| a as u128 * x as u128 % m as u128 == 1).expect("unit has an inverse")
}

fn multiplicative_order(a: u64, m: u64) -> u64 {
    let mut x = a % m;
    let mut k = 1;
    while x != 1 {
        x = (x as u128 * a as u128 % m as u128) as u64;
        k += 1;
    }
    k
}

/// Generators of an internal direct-product decomposition of (ℤ/ℓ)^×,
/// as (generator, order) pairs. Built from the prime-power factorization of
/// ℓ: a primitive root for each odd prime power, and ⟨−1⟩ × ⟨3⟩ for powers
/// of two.
fn unit_group_generators(ell: u64) -> Vec<(u64, u64)> {
    let mut factors: Vec<(u64, u32)> = Vec::new();
    let mut rest = ell;
    let mut p = 2;
    while p * p <= rest {
        if rest.is_multiple_of(p) {
            let mut a = 0;
            while rest.is_multiple_of(p) {
                rest /= p;
                a += 1;
            }
            factors.push((p, a));
        }
        p += 1;
    }
    if rest > 1 {
        factors.push((rest, 1));
    }

    let mut gens = Vec::new();
    for &(p, a) in &factors {
        let q = p.pow(a);
        let cof = ell / q;
        // CRT lift: x = g mod q, x = 1 mod ell/q
        let lift = |g: u64| -> u64 {
            if cof == 1 {
                return g % ell;
            }
            (0..ell)
                .find(|&x| x % q == g % q && x % cof == 1 % cof)
                .expect("CRT lift exists")
        };
        if p == 2 {
            if a == 2 {
                gens.push((lift(3), 2));
            } else if a >= 3 {
                gens.push((lift(q - 1), 2));
                gens.push((lift(3), 1 << (a - 2)));
            }
        } else {
            let phi = q / p * (p - 1);
            let root = (2..q)
                .find(|&g| g % p != 0 && multiplicative_order(g, q) == phi)
                .expect("primitive root exists");
            gens.push((lift(root), phi));
        }
    }
    gens
}

/// The holomorph of ℤ_ℓ with exact class and character data.
#[derive(Clone, Debug)]
pub struct HolomorphGroup {
    pub ell: u64,
    pub order: u64,
    pub conductor: u32,
    elements: Vec<(u64, u64)>,
    class_of_elem: Vec<usize>,
    class_members: Vec<Vec<usize>>,
    class_reps: Vec<(u64, u64)>,
    element_orders: Vec<u64>,
    /// Index of the class of π = (1, 1).
    pub pi_class: usize,
    char_labels: Vec<String>,
    /// Row-major characters × classes.
    values: Vec<CycloValue>,
}

impl HolomorphGroup {
    fn mul(&self, x: (u64, u64), y: (u64, u64)) -> (u64, u64) {
        holomorph_mul(self.ell, x, y)
    }

    fn inv(&self, x: (u64, u64)) -> (u64, u64) {
        let ti = mod_inv(x.1, self.ell);
        (((self.ell - x.0 % self.ell) % self.ell * ti) % self.ell, ti)
    }

    pub fn num_classes(&self) -> usize {
        self.class_reps.len()
    }

    pub fn class_rep(&self, c: usize) -> (u64, u64) {
        self.class_reps[c]
    }

    pub fn class_size(&self, c: usize) -> u64 {
        self.class_members[c].len() as u64
    }

    pub fn char_labels(&self) -> &[String] {
        &self.char_labels
    }

    pub fn value(&self, chi: usize, class: usize) -> &CycloValue {
        &self.values[chi * self.num_classes() + class]
    }

    pub fn degree(&self, chi: usize) -> u64 {
        self.value(chi, 0)
            .as_rational()
            .expect("degree is rational")
            .to_integer()
            .to_u64()
            .expect("degree fits u64")
    }

    fn class_of(&self, x: (u64, u64)) -> usize {
        let idx = self
            .elements
            .iter()
            .position(|&e| e == x)
            .expect("element of the holomorph");
        self.class_of_elem[idx]
    }

    /// Class data (sizes, orders, inverse and power maps) for the engine.
    fn class_data(&self) -> Vec<ClassData> {
        (0..self.num_classes())
            .map(|c| {
                let rep = self.class_reps[c];
                let ord = self.element_orders[c];
                let inverse = self.class_of(self.inv(rep));
                let mut power_map = BTreeMap::new();
                for k in 1..=ord {
                    if num_integer::gcd(k, ord) != 1 {
                        continue;
                    }
                    let mut p = (0u64, 1u64);
                    for _ in 0..k {
                        p = self.mul(p, rep);
                    }
                    power_map.insert(k, self.class_of(p));
                }
                ClassData {
                    label: format!("({},{})", rep.0, rep.1),
                    size: self.class_size(c) as u128,
                    element_order: ord,
                    inverse,
                    power_map,
                }
            })
            .collect()
    }

    /// Wrap as a [`GroupModel`] (validates orthogonality).
    pub fn to_group_model(&self) -> Result<GroupModel> {
        GroupModel::new(
            format!("Hol(Z{})", self.ell),
            self.order as u128,
            self.class_data(),
            0,
            self.char_labels.clone(),
            self.values.clone(),
            self.conductor,
        )
    }
}

fn holomorph_mul(ell: u64, x: (u64, u64), y: (u64, u64)) -> (u64, u64) {
    (((x.0 as u128 + x.1 as u128 * y.0 as u128) % ell as u128) as u64, (x.1 * y.1) % ell)
}

/// Build the holomorph of ℤ_ℓ: brute-force conjugacy classes and the full
/// exact character table via the little-group construction.
pub fn build_holomorph(ell: u64) -> Result<HolomorphGroup> {
    if ell < 2 {
        return Err(Error::invalid("build_holomorph requires ell >= 2"));
    }
    let units: Vec<u64> = (1..ell).filter(|&t| num_integer::gcd(t, ell) == 1).collect();
    let phi = units.len() as u64;
    debug_assert_eq!(phi, euler_phi(ell));
    let order = ell * phi;

    // elements in a fixed order, identity first
    let mut elements = Vec::with_capacity(order as usize);
    for &t in &units {
        for a in 0..ell {
            elements.push((a, t));
        }
    }
    elements.sort_unstable_by_key(|&(a, t)| (t != 1, t, a));
    debug_assert_eq!(elements[0], (0, 1));
    let elem_index: HashMap<(u64, u64), usize> =
        elements.iter().enumerate().map(|(i, &e)| (e, i)).collect();

    // brute-force conjugacy classes
    let mut class_of_elem = vec![usize::MAX; elements.len()];
    let mut class_members: Vec<Vec<usize>> = Vec::new();
    let mut class_reps = Vec::new();
    #[allow(clippy::needless_range_loop)]
    for i in 0..elements.len() {
        if class_of_elem[i] != usize::MAX {
            continue;
        }
        let c = class_members.len();
        let mut members = BTreeSet::new();
        for &x in &elements {
            let ti = mod_inv(x.1, ell);
            let xinv = (((ell - x.0 % ell) % ell * ti) % ell, ti);
            let conj = holomorph_mul(ell, holomorph_mul(ell, x, elements[i]), xinv);
            members.insert(elem_index[&conj]);
        }
        for &m in &members {
            class_of_elem[m] = c;
        }
        class_reps.push(elements[i]);
        class_members.push(members.into_iter().collect());
    }

    let element_orders: Vec<u64> = class_reps
        .iter()
        .map(|&rep| {
            let mut x = rep;
            let mut k = 1;
            while x != (0, 1) {
                x = holomorph_mul(ell, x, rep);
                k += 1;
            }
            k
        })
        .collect();

    let pi_class = class_of_elem[elem_index[&(1 % ell, 1)]];
    // the class of pi is exactly the units row {(t, 1)}
    debug_assert_eq!(class_members[pi_class].len() as u64, if ell == 2 { 1 } else { phi });

    // unit group structure and its characters
    let gens = unit_group_generators(ell);
    let lambda = gens.iter().fold(1u64, |acc, &(_, d)| acc / num_integer::gcd(acc, d) * d);
    let conductor_u64 = ell / num_integer::gcd(ell, lambda) * lambda;
    let conductor = u32::try_from(conductor_u64).expect("conductor fits u32");

    // discrete logarithms: unit -> exponent vector
    let mut dlog: HashMap<u64, Vec<u64>> = HashMap::new();
    let dims: Vec<u64> = gens.iter().map(|&(_, d)| d).collect();
    let mut vec_iter = vec![0u64; gens.len()];
    loop {
        let mut t: u64 = 1 % ell;
        for (i, &(g, _)) in gens.iter().enumerate() {
            t = t * mod_pow(g, vec_iter[i], ell) % ell;
        }
        dlog.entry(t).or_insert_with(|| vec_iter.clone());
        // increment the mixed-radix counter
        let mut pos = 0;
        loop {
            if pos == gens.len() {
                break;
            }
            vec_iter[pos] += 1;
            if vec_iter[pos] < dims[pos] {
                break;
            }
            vec_iter[pos] = 0;
            pos += 1;
        }
        if pos == gens.len() {
            break;
        }
    }
    debug_assert_eq!(dlog.len() as u64, phi);

    // characters of the unit group: chi_v(t) = w^(sum v_i e_i(t) L/d_i)
    let unit_char_exponent = |v: &[u64], t: u64| -> u64 {
        let e = &dlog[&t];
        let mut acc: u128 = 0;
        for i in 0..v.len() {
            acc += v[i] as u128 * e[i] as u128 * (conductor_u64 / dims[i]) as u128;
        }
        (acc % conductor_u64 as u128) as u64
    };
    let mut unit_char_vectors: Vec<Vec<u64>> = Vec::new();
    let mut v = vec![0u64; gens.len()];
    loop {
        unit_char_vectors.push(v.clone());
        let mut pos = 0;
        loop {
            if pos == gens.len() {
                break;
            }
            v[pos] += 1;
            if v[pos] < dims[pos] {
                break;
            }
            v[pos] = 0;
            pos += 1;
        }
        if pos == gens.len() {
            break;
        }
    }
    debug_assert_eq!(unit_char_vectors.len() as u64, phi);

    // orbits of the unit action j -> j*t on characters of Z_ell
    let mut seen = vec![false; ell as usize];
    let mut orbit_reps = Vec::new();
    for j in 0..ell {
        if seen[j as usize] {
            continue;
        }
        orbit_reps.push(j);
        for &t in &units {
            seen[(j * t % ell) as usize] = true;
        }
    }

    // induced characters: one per (orbit rep j, character of the stabilizer)
    let mut values = Vec::new();
    let mut count = 0usize;
    for &j in &orbit_reps {
        let stab: Vec<u64> = units.iter().copied().filter(|&t| j * t % ell == j).collect();
        let sub_order = (ell * stab.len() as u64) as i128;
        // characters of the stabilizer: restrictions of unit characters,
        // deduplicated by their exponent vectors on the stabilizer
        let mut stab_chars: Vec<Vec<u64>> = Vec::new();
        let mut seen_restrictions: BTreeSet<Vec<u64>> = BTreeSet::new();
        for v in &unit_char_vectors {
            let restriction: Vec<u64> = stab.iter().map(|&t| unit_char_exponent(v, t)).collect();
            if seen_restrictions.insert(restriction.clone()) {
                stab_chars.push(restriction);
            }
        }
        debug_assert_eq!(stab_chars.len(), stab.len());

        let stab_index: HashMap<u64, usize> =
            stab.iter().enumerate().map(|(i, &t)| (t, i)).collect();
        for rho in &stab_chars {
            // theta(a, t) = w_ell^(j a) * rho(t) on S = Z_ell x| stabilizer;
            // induce to the holomorph by summing theta over class ∩ S
            for members in &class_members {
                let mut acc = CycloValue::zero(conductor);
                for &m in members {
                    let (a, t) = elements[m];
                    if let Some(&ti) = stab_index.get(&t) {
                        let exp = (j as u128 * a as u128 % ell as u128) as u64
                            * (conductor_u64 / ell)
                            + rho[ti];
                        acc = acc.add(&CycloValue::root(conductor, exp));
                    }
                }
                let centralizer = (order / members.len() as u64) as i128;
                values.push(acc.scale(centralizer).div_exact(sub_order));
            }
            count += 1;
        }
    }
    assert_eq!(count, class_reps.len(), "character count must equal class count");

    let char_labels = (1..=count).map(|i| format!("psi{i}")).collect();
    Ok(HolomorphGroup {
        ell,
        order,
        conductor,
        elements,
        class_of_elem,
        class_members,
        class_reps,
        element_orders,
        pi_class,
        char_labels,
        values,
    })
}

/// Block data of the holomorph with respect to the ℓ-regular classes (the
/// complement of the class of π).
pub struct HolomorphBlocks {
    pub group: HolomorphGroup,
    pub model: GroupModel,
    pub regular: ClosedClassSet,
    pub report: BlockReport,
    /// Characters of the principal block, trivial first.
    pub principal: Vec<usize>,
    /// The remaining characters, each alone in its block.
    pub singletons: Vec<usize>,
}

/// Compute the ℓ-blocks of N = Hol(ℤ_ℓ) and check their structure: the
/// principal block has exactly ℓ characters and every other character is
/// alone in its block.
pub fn holomorph_blocks(ell: u64) -> Result<HolomorphBlocks> {
    let group = build_holomorph(ell)?;
    let model = group.to_group_model()?;
    let set: BTreeSet<usize> = (0..model.num_classes()).filter(|&c| c != group.pi_class).collect();
    let regular = validate_closed(&model, &set)?;
    let report = block_partition(&model, &regular)?;

    let principal_idx = report.block_of(model.trivial_char());
    let mut principal = report.blocks[principal_idx].clone();
    principal.sort_unstable_by_key(|&i| (i != model.trivial_char(), i));
    if principal.len() != ell as usize {
        return Err(Error::TheoremViolation(format!(
            "principal block of Hol(Z{ell}) has {} characters, expected {ell}",
            principal.len()
        )));
    }
    let mut singletons = Vec::new();
    for (bi, b) in report.blocks.iter().enumerate() {
        if bi == principal_idx {
            continue;
        }
        if b.len() != 1 {
            return Err(Error::TheoremViolation(format!(
                "non-principal block of Hol(Z{ell}) has size {}",
                b.len()
            )));
        }
        singletons.push(b[0]);
    }
    singletons.sort_unstable();
    Ok(HolomorphBlocks { group, model, regular, report, principal, singletons })
}

/// The holomorph as a wreath base table with its characters reordered so
/// that the principal-block characters come first (trivial first of all) and
/// the singular class is the class of π.
pub fn holomorph_base_table(ell: u64) -> Result<(BaseTable, HolomorphBlocks)> {
    let blocks = holomorph_blocks(ell)?;
    let g = &blocks.group;
    let order: Vec<usize> =
        blocks.principal.iter().chain(blocks.singletons.iter()).copied().collect();
    let s = g.num_classes();
    let mut values = Vec::with_capacity(s * s);
    for &chi in &order {
        for c in 0..s {
            values.push(g.value(chi, c).clone());
        }
    }
    let class_data = g.class_data();
    let table = BaseTable {
        name: format!("Hol(Z{ell})"),
        order: g.order,
        conductor: g.conductor,
        class_labels: class_data.iter().map(|c| c.label.clone()).collect(),
        class_sizes: class_data.iter().map(|c| c.size as u64).collect(),
        element_orders: class_data.iter().map(|c| c.element_order).collect(),
        inverse: class_data.iter().map(|c| c.inverse).collect(),
        power_maps: class_data.into_iter().map(|c| c.power_map).collect(),
        identity_class: 0,
        char_labels: (1..=s).map(|i| format!("psi{i}")).collect(),
        values,
        singular_class: Some(g.pi_class),
    };
    Ok((table, blocks))
}

/// Direct product of two group models: classes and characters are pairs
/// (left-major), values multiply in the lcm conductor.
pub fn product_model(left: &GroupModel, right: &GroupModel, name: String) -> Result<GroupModel> {
    let lcm_cond = {
        let (a, b) = (left.conductor(), right.conductor());
        a / num_integer::gcd(a, b) * b
    };
    let mut classes = Vec::with_capacity(left.num_classes() * right.num_classes());
    for (i, ci) in left.classes().iter().enumerate() {
        for (j, cj) in right.classes().iter().enumerate() {
            let ord = ci.element_order / num_integer::gcd(ci.element_order, cj.element_order)
                * cj.element_order;
            let mut power_map = BTreeMap::new();
            for k in 1..=ord {
                if num_integer::gcd(k, ord) != 1 {
                    continue;
                }
                let ka = reduce_exponent(k, ci.element_order);
                let kb = reduce_exponent(k, cj.element_order);
                power_map
                    .insert(k, ci.power_map[&ka] * right.num_classes() + cj.power_map[&kb]);
            }
            classes.push(ClassData {
                label: format!("{}|{}", ci.label, cj.label),
                size: ci.size * cj.size,
                element_order: ord,
                inverse: ci.inverse * right.num_classes() + cj.inverse,
                power_map,
            });
            let _ = (i, j);
        }
    }
    let char_labels: Vec<String> = left
        .char_labels()
        .iter()
        .flat_map(|a| right.char_labels().iter().map(move |b| format!("{a}|{b}")))
        .collect();
    let mut values = Vec::with_capacity(char_labels.len() * classes.len());
    for i in 0..left.num_chars() {
        for j in 0..right.num_chars() {
            for a in 0..left.num_classes() {
                let va = left.value(i, a).embed(lcm_cond);
                for b in 0..right.num_classes() {
                    let vb = right.value(j, b).embed(lcm_cond);
                    values.push(va.mul(&vb));
                }
            }
        }
    }
    GroupModel::new(
        name,
        left.order() * right.order(),
        classes,
        left.identity_class() * right.num_classes() + right.identity_class(),
        char_labels,
        values,
        lcm_cond,
    )
}

fn reduce_exponent(k: u64, order: u64) -> u64 {
    if order == 1 {
        1
    } else {
        k % order
    }
}

/// The Sylow-normalizer model N_G(L) ≅ (N ≀ S_w) × S_r for n = ℓw + r,
/// together with its validated ℓ-regular class set.
pub struct NormalizerModel {
    pub ell: u64,
    pub w: u64,
    pub r: u64,
    pub model: GroupModel,
    pub regular: ClosedClassSet,
    /// Wreath-side labels ordered as in the product (left-major).
    pub left_labels: Vec<MultiPartition>,
    pub right_labels: Vec<Partition>,
    /// Product character index ↦ (left, right) indices.
    pub char_pairs: Vec<(usize, usize)>,
    /// Left labels supported on the first ℓ base characters (the principal
    /// block of N).
    pub left_in_b0: Vec<bool>,
    pub wreath: WreathTable,
}

/// Build the normalizer model for n = ℓw + r < ℓ².
pub fn normalizer_model(ell: u64, w: u64, r: u64) -> Result<NormalizerModel> {
    if ell < 2 {
        return Err(Error::invalid("normalizer_model requires ell >= 2"));
    }
    if w < 1 || w >= ell {
        return Err(Error::invalid(format!("normalizer_model requires 1 <= w < ell, got w={w}")));
    }
    if r >= ell {
        return Err(Error::invalid(format!("normalizer_model requires r < ell, got r={r}")));
    }
    let (base, _blocks) = holomorph_base_table(ell)?;
    let wreath = wreath_table(&base, w);
    let left = wreath.to_group_model()?;
    let right = sn_group_model(&character_table(r));

    let model = product_model(&left, &right, format!("(Hol(Z{ell}) wr S{w}) x S{r}"))?;
    let nrc = right.num_classes();
    let mut set = BTreeSet::new();
    for l in wreath.regular_classes() {
        for j in 0..nrc {
            set.insert(l * nrc + j);
        }
    }
    let regular = validate_closed(&model, &set)?;

    let right_labels: Vec<Partition> = character_table(r).characters().to_vec();
    let char_pairs: Vec<(usize, usize)> = (0..wreath.labels.len())
        .flat_map(|i| (0..right_labels.len()).map(move |j| (i, j)))
        .collect();
    let left_in_b0: Vec<bool> = wreath
        .labels
        .iter()
        .map(|lab| {
            lab.components()
                .iter()
                .enumerate()
                .all(|(k, comp)| k < ell as usize || comp.is_empty())
        })
        .collect();
    Ok(NormalizerModel {
        ell,
        w,
        r,
        model,
        regular,
        left_labels: wreath.labels.clone(),
        right_labels,
        char_pairs,
        left_in_b0,
        wreath,
    })
}

/// Blocks and defects of the normalizer model, with the block-structure
/// check: every ℓ-block is a singleton (a character whose wreath label uses
/// a base character outside the principal block of N) or the full principal
/// set b₀ ⊗ {ψ} for a single ψ ∈ Irr(S_r).
#[derive(Debug)]
pub struct NormalizerDefects {
    pub report: BlockReport,
    /// Count of b₀ ⊗ {ψ} blocks (one per ψ) and of singleton blocks.
    pub principal_type_blocks: usize,
    pub singleton_blocks: usize,
}

pub fn normalizer_defects(nm: &NormalizerModel) -> Result<NormalizerDefects> {
    let report = block_partition(&nm.model, &nm.regular)?;
    let b0_size = nm.left_in_b0.iter().filter(|&&b| b).count();
    let mut principal_type = 0usize;
    let mut singletons = 0usize;
    for block in &report.blocks {
        let pairs: Vec<(usize, usize)> = block.iter().map(|&i| nm.char_pairs[i]).collect();
        let all_b0 = pairs.iter().all(|&(l, _)| nm.left_in_b0[l]);
        let same_right = pairs.iter().all(|&(_, rj)| rj == pairs[0].1);
        if all_b0 && same_right && block.len() == b0_size {
            principal_type += 1;
            continue;
        }
        if block.len() == 1 && !nm.left_in_b0[pairs[0].0] {
            singletons += 1;
            continue;
        }
        return Err(Error::TheoremViolation(format!(
            "block of {} is neither a singleton outside b0 nor b0 x {{psi}}: {:?}",
            nm.model.name(),
            block.iter().map(|&i| nm.model.char_labels()[i].clone()).collect::<Vec<_>>()
        )));
    }
    if principal_type != nm.right_labels.len() {
        return Err(Error::TheoremViolation(format!(
            "expected one principal-type block per Irr(S_{}), found {principal_type}",
            nm.r
        )));
    }
    Ok(NormalizerDefects { report, principal_type_blocks: principal_type, singleton_blocks: singletons })
}
