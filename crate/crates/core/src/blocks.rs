//! The generic block engine.
//!
//! A [`GroupModel`] presents a finite group abstractly: conjugacy-class data
//! (sizes, element orders, inverse classes, power maps) plus an exact
//! character-value matrix. On top of a validated closed class set C the
//! engine computes C-contributions ⟨χ,ψ⟩_C = (1/|G|) Σ_{g∈C} χ(g)ψ(g⁻¹),
//! the C-block partition (connected components of nonzero contributions) and
//! C-defects (least d with d·⟨χ,ψ⟩_C integral for all ψ, i.e. the lcm of the
//! reduced denominators along the χ-row).

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{CycloAccum, CycloValue, Rational};
use crate::error::Error;
use crate::Result;

/// Conjugacy-class data of one class.
#[derive(Clone, Debug)]
pub struct ClassData {
    pub label: String,
    pub size: u128,
    pub element_order: u64,
    /// Index of the class of inverses.
    pub inverse: usize,
    /// For each exponent k in 1..=element_order coprime to element_order,
    /// the index of the class of k-th powers.
    pub power_map: std::collections::BTreeMap<u64, usize>,
}

/// A finite group presented by class data and an exact character table.
///
/// Construction validates the class equation, the inverse-conjugation
/// relation value(χ, c⁻¹) = conj(value(χ, c)), and exact first (row)
/// orthogonality; it also locates the trivial character.
#[derive(Clone, Debug)]
pub struct GroupModel {
    name: String,
    order: u128,
    classes: Vec<ClassData>,
    identity_class: usize,
    trivial_char: usize,
    conductor: u32,
    char_labels: Vec<String>,
    /// Row-major: characters × classes.
    values: Vec<CycloValue>,
}

impl GroupModel {
    pub fn new(
        name: String,
        order: u128,
        classes: Vec<ClassData>,
        identity_class: usize,
        char_labels: Vec<String>,
        values: Vec<CycloValue>,
        conductor: u32,
    ) -> Result<Self> {
        if values.len() != classes.len() * char_labels.len() {
            return Err(Error::invalid("value matrix has wrong shape"));
        }
        let mut model = GroupModel {
            name,
            order,
            classes,
            identity_class,
            trivial_char: usize::MAX,
            conductor,
            char_labels,
            values,
        };
        model.validate()?;
        Ok(model)
    }

    fn validate(&mut self) -> Result<()> {
        let n = self.classes.len();
        let size_sum: u128 = self.classes.iter().map(|c| c.size).sum();
        if size_sum != self.order {
            return Err(Error::invalid(format!(
                "class equation fails for {}: sizes sum to {size_sum}, order is {}",
                self.name, self.order
            )));
        }
        if self.classes[self.identity_class].size != 1
            || self.classes[self.identity_class].element_order != 1
        {
            return Err(Error::invalid("identity class must be a singleton of order 1"));
        }
        for (i, c) in self.classes.iter().enumerate() {
            if c.inverse >= n || self.classes[c.inverse].inverse != i {
                return Err(Error::invalid(format!("inverse map broken at class {i}")));
            }
            for (&k, &img) in &c.power_map {
                if num_integer::gcd(k, c.element_order) != 1 || img >= n {
                    return Err(Error::invalid(format!("power map broken at class {i}, exponent {k}")));
                }
            }
        }
        // conjugation symmetry: value(chi, inverse(c)) = conj(value(chi, c))
        for chi in 0..self.char_labels.len() {
            for c in 0..n {
                let lhs = self.value(chi, self.classes[c].inverse);
                if !lhs.equiv(&self.value(chi, c).conj()) {
                    return Err(Error::invalid(format!(
                        "inverse-class conjugation fails for {} at character {}, class {}",
                        self.name, self.char_labels[chi], self.classes[c].label
                    )));
                }
            }
        }
        // exact row orthogonality, pairs checked in parallel
        let order = i128::try_from(self.order)
            .map_err(|_| Error::invalid("group order exceeds i128"))?;
        let bad_pair = (0..self.char_labels.len())
            .into_par_iter()
            .find_map_any(|i| {
                for j in i..self.char_labels.len() {
                    let mut acc = CycloAccum::new(self.conductor);
                    for (c, cd) in self.classes.iter().enumerate() {
                        acc.add_scaled_product(
                            self.value(i, c),
                            self.value(j, cd.inverse),
                            i128::try_from(cd.size).expect("class size fits i128"),
                        );
                    }
                    let sum = acc.into_value();
                    let expect = if i == j {
                        CycloValue::integer(self.conductor, order)
                    } else {
                        CycloValue::zero(self.conductor)
                    };
                    if !sum.equiv(&expect) {
                        return Some((i, j));
                    }
                }
                None
            });
        if let Some((i, j)) = bad_pair {
            return Err(Error::invalid(format!(
                "row orthogonality fails for {} at ({}, {})",
                self.name, self.char_labels[i], self.char_labels[j]
            )));
        }
        // locate the trivial character (all values 1)
        let one = CycloValue::one(self.conductor);
        let trivial = (0..self.char_labels.len()).find(|&i| {
            (0..n).all(|c| self.value(i, c).equiv(&one))
        });
        self.trivial_char = trivial.ok_or_else(|| Error::invalid("no trivial character found"))?;
        // degrees at the identity must be positive integers
        for i in 0..self.char_labels.len() {
            let d = self
                .value(i, self.identity_class)
                .as_rational()
                .map_err(|_| Error::invalid("character degree is not rational"))?;
            if !d.is_integer() || !d.numer().is_positive() {
                return Err(Error::invalid(format!(
                    "degree of {} is not a positive integer",
                    self.char_labels[i]
                )));
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> u128 {
        self.order
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn num_chars(&self) -> usize {
        self.char_labels.len()
    }

    pub fn classes(&self) -> &[ClassData] {
        &self.classes
    }

    pub fn class(&self, i: usize) -> &ClassData {
        &self.classes[i]
    }

    pub fn identity_class(&self) -> usize {
        self.identity_class
    }

    pub fn trivial_char(&self) -> usize {
        self.trivial_char
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn char_labels(&self) -> &[String] {
        &self.char_labels
    }

    pub fn value(&self, chi: usize, class: usize) -> &CycloValue {
        &self.values[chi * self.classes.len() + class]
    }

    /// Degree of the character as an exact integer.
    pub fn degree(&self, chi: usize) -> u128 {
        let d = self.value(chi, self.identity_class).as_rational().expect("validated");
        d.to_integer().to_u128().expect("degree fits u128")
    }
}

/// A validated closed union of conjugacy classes containing the identity.
#[derive(Clone, Debug)]
pub struct ClosedClassSet {
    indices: Vec<usize>,
    member: Vec<bool>,
}

impl ClosedClassSet {
    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn contains(&self, class: usize) -> bool {
        self.member[class]
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }
}

/// Validate that `set` contains the identity class and is closed under the
/// power maps restricted to exponents coprime to the element order: if x is
/// in the union, so is every generator of ⟨x⟩.
pub fn validate_closed(model: &GroupModel, set: &BTreeSet<usize>) -> Result<ClosedClassSet> {
    if !set.contains(&model.identity_class()) {
        return Err(Error::IdentityMissing);
    }
    validate_power_closed(model, set)
}

/// Validate power-map closure only, without requiring the identity class.
///
/// The regular classes of ℤ_ℓ ≀ S_w need this weaker form: every cycle
/// product of the identity is 1, so the identity is singular there, yet the
/// set is still closed under coprime powers and all its contributions are
/// rational.
pub fn validate_power_closed(model: &GroupModel, set: &BTreeSet<usize>) -> Result<ClosedClassSet> {
    let mut member = vec![false; model.num_classes()];
    for &i in set {
        if i >= model.num_classes() {
            return Err(Error::invalid(format!("class index {i} out of range")));
        }
        member[i] = true;
    }
    for &i in set {
        for (&k, &img) in &model.class(i).power_map {
            if !member[img] {
                return Err(Error::NotClosed { class: i, exponent: k, lands: img });
            }
        }
    }
    Ok(ClosedClassSet { indices: set.iter().copied().collect(), member })
}

/// The C-contribution ⟨χ,ψ⟩_C, an exact rational. Symmetric in (χ, ψ).
pub fn contribution(
    model: &GroupModel,
    chi: usize,
    psi: usize,
    set: &ClosedClassSet,
) -> Result<Rational> {
    let mut acc = CycloAccum::new(model.conductor());
    for &c in set.indices() {
        let inv = model.class(c).inverse;
        acc.add_scaled_product(
            model.value(chi, c),
            model.value(psi, inv),
            i128::try_from(model.class(c).size).expect("class size fits i128"),
        );
    }
    let total = acc.into_value().as_rational()?;
    Ok(total / Rational::from(BigInt::from(model.order())))
}

/// Full symmetric matrix of C-contributions, indexed by character pairs.
#[derive(Clone, Debug)]
pub struct ContributionMatrix {
    n: usize,
    entries: Vec<Rational>,
}

impl ContributionMatrix {
    pub fn n_chars(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.n + j]
    }
}

/// Compute every contribution; entries are independent and computed in
/// parallel, assembled in deterministic index order.
pub fn contribution_matrix(model: &GroupModel, set: &ClosedClassSet) -> Result<ContributionMatrix> {
    let n = model.num_chars();
    let pairs: Vec<(usize, usize)> =
        (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let computed: Vec<Result<Rational>> = pairs
        .par_iter()
        .map(|&(i, j)| contribution(model, i, j, set))
        .collect();
    let mut entries = vec![Rational::zero(); n * n];
    for (&(i, j), v) in pairs.iter().zip(computed) {
        let v = v?;
        entries[i * n + j] = v.clone();
        entries[j * n + i] = v;
    }
    Ok(ContributionMatrix { n, entries })
}

/// C-defect of χ from its row of the contribution matrix: the lcm of the
/// reduced denominators.
pub fn defect_from_matrix(matrix: &ContributionMatrix, chi: usize) -> u128 {
    let mut lcm = BigInt::one();
    for j in 0..matrix.n_chars() {
        lcm = lcm.lcm(matrix.get(chi, j).denom());
    }
    lcm.to_u128().expect("defect fits u128")
}

/// C-defect of χ: the least positive d such that d·⟨χ,ψ⟩_C is an integer for
/// every irreducible ψ.
pub fn defect(model: &GroupModel, chi: usize, set: &ClosedClassSet) -> Result<u128> {
    let mut lcm = BigInt::one();
    for psi in 0..model.num_chars() {
        let v = contribution(model, chi, psi, set)?;
        lcm = lcm.lcm(v.denom());
    }
    Ok(lcm.to_u128().expect("defect fits u128"))
}

/// Block partition plus per-character defects and the full contribution
/// matrix.
#[derive(Clone, Debug)]
pub struct BlockReport {
    pub char_labels: Vec<String>,
    /// Partition of the character index set; blocks sorted by least member,
    /// members ascending.
    pub blocks: Vec<Vec<usize>>,
    pub defects: Vec<u128>,
    pub matrix: ContributionMatrix,
    pub trivial_char: usize,
}

impl BlockReport {
    pub fn block_of(&self, chi: usize) -> usize {
        self.blocks.iter().position(|b| b.contains(&chi)).expect("every character has a block")
    }

    /// Maximal defect: the defect of the trivial character.
    pub fn max_defect(&self) -> u128 {
        self.defects[self.trivial_char]
    }

    /// JSON form: blocks as lists of character labels, defects as integers,
    /// contributions as "num/den" strings.
    pub fn to_json(&self) -> serde_json::Value {
        let n = self.char_labels.len();
        serde_json::json!({
            "characters": self.char_labels,
            "blocks": self.blocks.iter().map(|b| {
                b.iter().map(|&i| self.char_labels[i].clone()).collect::<Vec<_>>()
            }).collect::<Vec<_>>(),
            "defects": self.char_labels.iter().zip(&self.defects).map(|(l, d)| {
                serde_json::json!({"character": l, "defect": d})
            }).collect::<Vec<_>>(),
            "contributions": (0..n).map(|i| {
                (0..n).map(|j| rational_string(self.matrix.get(i, j))).collect::<Vec<_>>()
            }).collect::<Vec<_>>(),
        })
    }
}

/// "num/den" form with "num" alone for integers.
pub fn rational_string(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let root = self.find(self.parent[x]);
            self.parent[x] = root;
        }
        self.parent[x]
    }

    fn unite(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            self.parent[hi] = lo;
        }
    }
}

/// Compute the C-block partition: connected components of the graph on
/// irreducible characters with an edge wherever the contribution is nonzero.
/// Zero tests are exact.
pub fn block_partition(model: &GroupModel, set: &ClosedClassSet) -> Result<BlockReport> {
    let n = model.num_chars();
    let matrix = contribution_matrix(model, set)?;
    let mut uf = UnionFind::new(n);
    for i in 0..n {
        for j in i + 1..n {
            if !matrix.get(i, j).is_zero() {
                uf.unite(i, j);
            }
        }
    }
    let mut by_root: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for i in 0..n {
        let r = uf.find(i);
        by_root.entry(r).or_default().push(i);
    }
    let blocks: Vec<Vec<usize>> = by_root.into_values().collect();
    let defects: Vec<u128> = (0..n).map(|i| defect_from_matrix(&matrix, i)).collect();
    let report = BlockReport {
        char_labels: model.char_labels().to_vec(),
        blocks,
        defects,
        matrix,
        trivial_char: model.trivial_char(),
    };
    // the trivial character has maximal defect: every defect divides it
    let d1 = report.max_defect();
    for (i, &d) in report.defects.iter().enumerate() {
        assert!(
            d1.is_multiple_of(d),
            "defect of {} does not divide the trivial character's defect in {}",
            report.char_labels[i],
            model.name()
        );
    }
    Ok(report)
}

/// The three equivalent characterizations of defect one, reported together.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct DefectOneDiagnostics {
    pub defect_is_one: bool,
    pub vanishes_outside: bool,
    pub singleton_block: bool,
}

impl DefectOneDiagnostics {
    pub fn agree(&self) -> bool {
        self.defect_is_one == self.vanishes_outside && self.defect_is_one == self.singleton_block
    }
}

/// Evaluate the three defect-one criteria for χ: defect(χ) = 1, χ vanishes
/// on every class outside C, and {χ} is a C-block. Fails with a theorem
/// violation if they disagree.
pub fn defect_one_diagnostics(
    model: &GroupModel,
    chi: usize,
    set: &ClosedClassSet,
) -> Result<DefectOneDiagnostics> {
    let report = block_partition(model, set)?;
    diagnostics_from_report(model, chi, set, &report)
}

/// Same as [`defect_one_diagnostics`] but reusing an existing block report.
pub fn diagnostics_from_report(
    model: &GroupModel,
    chi: usize,
    set: &ClosedClassSet,
    report: &BlockReport,
) -> Result<DefectOneDiagnostics> {
    let defect_is_one = report.defects[chi] == 1;
    let vanishes_outside = (0..model.num_classes())
        .filter(|&c| !set.contains(c))
        .all(|c| model.value(chi, c).is_zero_value());
    let singleton_block = report.blocks[report.block_of(chi)].len() == 1;
    let diag = DefectOneDiagnostics { defect_is_one, vanishes_outside, singleton_block };
    if !diag.agree() {
        return Err(Error::TheoremViolation(format!(
            "defect-one criteria disagree for {} in {}: defect_is_one={}, vanishes_outside={}, singleton_block={}",
            model.char_labels()[chi],
            model.name(),
            defect_is_one,
            vanishes_outside,
            singleton_block
        )));
    }
    Ok(diag)
}
