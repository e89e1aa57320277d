//! Wreath products B ≀ S_w over a small base group B given by its character
//! table.
//!
//! Classes and irreducible characters are both indexed by s-tuples of
//! partitions of w, s the number of classes of B: a cycle of length k whose
//! cycle product lies in base class c contributes a part k to tuple
//! component c (classes), and character tuples attach a partition to each
//! base character. Character values are exact cyclotomic integers computed
//! by a hook-stripping recursion generalizing the Murnaghan–Nakayama rule;
//! the resulting tables are validated by exact orthogonality.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::arith::{factorial, pi_part, CycloValue, Rational};
use crate::blocks::{contribution, ClassData, ClosedClassSet, GroupModel};
use crate::error::Error;
use crate::partitions::{hooks, multipartitions, remove_hook, MultiPartition, Partition};
use crate::symmetric::degree_hlf;
use crate::Result;

/// Character-table data of a base group, as needed to build B ≀ S_w:
/// exact values, class sizes, inverse and power maps, and the optional
/// distinguished class whose avoidance defines regular elements.
#[derive(Clone, Debug)]
pub struct BaseTable {
    pub name: String,
    pub order: u64,
    pub conductor: u32,
    pub class_labels: Vec<String>,
    pub class_sizes: Vec<u64>,
    pub element_orders: Vec<u64>,
    pub inverse: Vec<usize>,
    /// Per class: exponent k (coprime to the element order) ↦ class of k-th
    /// powers.
    pub power_maps: Vec<BTreeMap<u64, usize>>,
    pub identity_class: usize,
    pub char_labels: Vec<String>,
    /// Row-major characters × classes.
    pub values: Vec<CycloValue>,
    /// The class whose avoidance defines regularity (identity for ℤ_ℓ, the
    /// class of the ℓ-cycle for the holomorph).
    pub singular_class: Option<usize>,
}

impl BaseTable {
    pub fn num_classes(&self) -> usize {
        self.class_labels.len()
    }

    pub fn value(&self, chi: usize, class: usize) -> &CycloValue {
        &self.values[chi * self.num_classes() + class]
    }

    /// Centralizer order of class c: |B| / K_c.
    pub fn centralizer(&self, class: usize) -> u64 {
        self.order / self.class_sizes[class]
    }

    /// Degree of base character `chi` as an exact integer.
    pub fn degree(&self, chi: usize) -> u128 {
        self.value(chi, self.identity_class)
            .as_rational()
            .expect("degree is rational")
            .to_integer()
            .to_u128()
            .expect("degree fits u128")
    }

    /// The cyclic group ℤ_ℓ: singleton classes g^0..g^{ℓ−1}, characters
    /// α_j(g^c) = ω^{(j−1)c} with α_1 trivial, conductor ℓ. Regularity for
    /// its wreath products avoids the identity class.
    pub fn cyclic(ell: u64) -> BaseTable {
        assert!(ell >= 1);
        let s = ell as usize;
        let mut power_maps = Vec::with_capacity(s);
        let mut element_orders = Vec::with_capacity(s);
        for c in 0..ell {
            let ord = ell / num_integer::gcd(c, ell).max(1);
            let ord = if c == 0 { 1 } else { ord };
            element_orders.push(ord);
            let map: BTreeMap<u64, usize> = (1..=ord)
                .filter(|k| num_integer::gcd(*k, ord) == 1)
                .map(|k| (k, ((c as u128 * k as u128) % ell as u128) as usize))
                .collect();
            power_maps.push(map);
        }
        let values = (0..ell)
            .flat_map(|j| (0..ell).map(move |c| CycloValue::root(ell as u32, j * c)))
            .collect();
        BaseTable {
            name: format!("Z{ell}"),
            order: ell,
            conductor: ell as u32,
            class_labels: (0..ell).map(|c| format!("g^{c}")).collect(),
            class_sizes: vec![1; s],
            element_orders,
            inverse: (0..s).map(|c| (s - c) % s).collect(),
            power_maps,
            identity_class: 0,
            char_labels: (1..=ell).map(|j| format!("a{j}")).collect(),
            values,
            singular_class: Some(0),
        }
    }

    /// The base group itself as a [`GroupModel`] (the w = 1 wreath product).
    pub fn into_group_model(self) -> Result<GroupModel> {
        let classes: Vec<ClassData> = (0..self.num_classes())
            .map(|c| ClassData {
                label: self.class_labels[c].clone(),
                size: self.class_sizes[c] as u128,
                element_order: self.element_orders[c],
                inverse: self.inverse[c],
                power_map: self.power_maps[c].clone(),
            })
            .collect();
        GroupModel::new(
            self.name.clone(),
            self.order as u128,
            classes,
            self.identity_class,
            self.char_labels.clone(),
            self.values.clone(),
            self.conductor,
        )
    }
}

/// A conjugacy class of B ≀ S_w.
#[derive(Clone, Debug)]
pub struct WreathClass {
    /// Component c collects the lengths of cycles whose cycle product lies
    /// in base class c.
    pub shape: MultiPartition,
    pub class_size: u128,
    pub centralizer: u128,
    pub element_order: u64,
}

fn lcm_u64(a: u64, b: u64) -> u64 {
    a / num_integer::gcd(a, b) * b
}

/// One class of B ≀ S_w per s-tuple of partitions of w, with exact sizes.
pub fn wreath_classes(base: &BaseTable, w: u64) -> Vec<WreathClass> {
    let s = base.num_classes();
    let group_order = (base.order as u128)
        .checked_pow(w as u32)
        .and_then(|p| p.checked_mul(factorial(w)))
        .expect("group order fits u128");
    multipartitions(s, w)
        .into_iter()
        .map(|shape| {
            let mut centralizer: u128 = 1;
            let mut element_order: u64 = 1;
            for (c, comp) in shape.components().iter().enumerate() {
                let zc = base.centralizer(c) as u128;
                let parts = comp.parts();
                let mut i = 0;
                while i < parts.len() {
                    let k = parts[i];
                    let mut mult = 0u64;
                    while i < parts.len() && parts[i] == k {
                        mult += 1;
                        i += 1;
                    }
                    let factor = (k as u128) * zc;
                    for _ in 0..mult {
                        centralizer = centralizer.checked_mul(factor).expect("centralizer overflow");
                    }
                    centralizer =
                        centralizer.checked_mul(factorial(mult)).expect("centralizer overflow");
                    element_order =
                        lcm_u64(element_order, k as u64 * base.element_orders[c]);
                }
            }
            debug_assert_eq!(group_order % centralizer, 0);
            WreathClass {
                shape,
                class_size: group_order / centralizer,
                centralizer,
                element_order,
            }
        })
        .collect()
}

/// The classes whose tuple component at `singular` is empty, i.e. the
/// elements with no cycle product in the distinguished singular class.
pub fn regular_class_indices(classes: &[WreathClass], singular: usize) -> Vec<usize> {
    classes
        .iter()
        .enumerate()
        .filter(|(_, cl)| cl.shape.component(singular).is_empty())
        .map(|(i, _)| i)
        .collect()
}

type WreathMemo = HashMap<Box<[u32]>, CycloValue>;

/// Flat memo key: the parts of every label component and every class
/// component, 0-terminated per component. Cheap to hash compared with the
/// nested tuples themselves.
fn memo_key(label: &MultiPartition, cls: &MultiPartition) -> Box<[u32]> {
    let mut out = Vec::with_capacity(2 * label.len() + label.size() as usize + cls.size() as usize + 2 * cls.len());
    for comp in label.components().iter().chain(cls.components()) {
        out.extend_from_slice(comp.parts());
        out.push(0);
    }
    out.into_boxed_slice()
}

fn wreath_mn_rec(
    base: &BaseTable,
    label: &MultiPartition,
    cls: &MultiPartition,
    memo: &mut WreathMemo,
) -> CycloValue {
    if cls.size() == 0 {
        debug_assert_eq!(label.size(), 0);
        return CycloValue::one(base.conductor);
    }
    let key = memo_key(label, cls);
    if let Some(v) = memo.get(&key) {
        return v.clone();
    }
    // strip one cycle: lowest nonempty class component, largest length first
    let c = (0..cls.len()).find(|&i| !cls.component(i).is_empty()).expect("nonempty class");
    let comp = cls.component(c);
    let k = comp.parts()[0] as u64;
    let cls_rest = cls.with_component(c, Partition::from_valid(comp.parts()[1..].to_vec()));

    let mut acc = CycloValue::zero(base.conductor);
    for i in 0..base.num_classes() {
        let coeff = base.value(i, c);
        if coeff.is_structurally_zero() {
            continue;
        }
        let mut inner = CycloValue::zero(base.conductor);
        for h in hooks(label.component(i)) {
            if h.len() != k {
                continue;
            }
            let (smaller, leg) = remove_hook(label.component(i), &h).expect("valid hook");
            let sub = wreath_mn_rec(base, &label.with_component(i, smaller), &cls_rest, memo);
            inner = if leg % 2 == 0 { inner.add(&sub) } else { inner.sub(&sub) };
        }
        if !inner.is_structurally_zero() {
            acc = acc.add(&coeff.mul(&inner));
        }
    }
    memo.insert(key, acc.clone());
    acc
}

/// Exact value of the irreducible character labeled `label` on the class of
/// shape `cls`, by cycle-stripping recursion.
pub fn wreath_mn_value(
    base: &BaseTable,
    label: &MultiPartition,
    cls: &MultiPartition,
) -> Result<CycloValue> {
    if label.len() != base.num_classes() || cls.len() != base.num_classes() {
        return Err(Error::invalid("tuple length must equal the number of base classes"));
    }
    if label.size() != cls.size() {
        return Err(Error::invalid(format!(
            "size mismatch: |{label}| = {} but |{cls}| = {}",
            label.size(),
            cls.size()
        )));
    }
    let mut memo = WreathMemo::new();
    Ok(wreath_mn_rec(base, label, cls, &mut memo))
}

/// The full exact character table of B ≀ S_w.
#[derive(Clone, Debug)]
pub struct WreathTable {
    pub base: BaseTable,
    pub w: u64,
    pub labels: Vec<MultiPartition>,
    pub classes: Vec<WreathClass>,
    /// Row-major labels × classes.
    pub values: Vec<CycloValue>,
}

/// Build the full table of B ≀ S_w with a shared recursion cache.
pub fn wreath_table(base: &BaseTable, w: u64) -> WreathTable {
    let classes = wreath_classes(base, w);
    let labels = multipartitions(base.num_classes(), w);
    let mut memo = WreathMemo::new();
    let mut values = Vec::with_capacity(labels.len() * classes.len());
    for label in &labels {
        for cl in &classes {
            values.push(wreath_mn_rec(base, label, &cl.shape, &mut memo));
        }
    }
    WreathTable { base: base.clone(), w, labels, classes, values }
}

impl WreathTable {
    pub fn value(&self, chi: usize, class: usize) -> &CycloValue {
        &self.values[chi * self.classes.len() + class]
    }

    pub fn label_index(&self, label: &MultiPartition) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Index of the identity class: all 1-cycles with trivial product.
    pub fn identity_class(&self) -> usize {
        let id_shape = MultiPartition::empty(self.base.num_classes()).with_component(
            self.base.identity_class,
            Partition::from_valid(vec![1; self.w as usize]),
        );
        self.classes.iter().position(|c| c.shape == id_shape).expect("identity class exists")
    }

    /// Regular classes with respect to the base's distinguished singular
    /// class.
    pub fn regular_classes(&self) -> Vec<usize> {
        let singular = self.base.singular_class.expect("base has a singular class");
        regular_class_indices(&self.classes, singular)
    }

    /// Wrap as a [`GroupModel`]: inverse classes permute tuple components by
    /// the base inverse map, power maps by the base power maps.
    pub fn to_group_model(&self) -> Result<GroupModel> {
        let s = self.base.num_classes();
        let index: HashMap<MultiPartition, usize> =
            self.classes.iter().enumerate().map(|(i, c)| (c.shape.clone(), i)).collect();
        let mut class_data = Vec::with_capacity(self.classes.len());
        for cl in &self.classes {
            // inverse: component at inv(c) receives the parts of component c
            let mut inv_components: Vec<Vec<u32>> = vec![Vec::new(); s];
            for (c, comp) in cl.shape.components().iter().enumerate() {
                inv_components[self.base.inverse[c]].extend_from_slice(comp.parts());
            }
            let inverse_shape = shape_from_lists(inv_components);
            let inverse = *index.get(&inverse_shape).expect("inverse shape is a class");

            let ord = cl.element_order;
            let mut power_map = BTreeMap::new();
            for k in 1..=ord {
                if num_integer::gcd(k, ord) != 1 {
                    continue;
                }
                let mut comps: Vec<Vec<u32>> = vec![Vec::new(); s];
                for (c, comp) in cl.shape.components().iter().enumerate() {
                    if comp.is_empty() {
                        continue;
                    }
                    let base_ord = self.base.element_orders[c];
                    let kk = if base_ord == 1 { 1 } else { k % base_ord };
                    debug_assert_ne!(kk, 0, "exponent coprime to order");
                    let dest = self.base.power_maps[c][&kk];
                    comps[dest].extend_from_slice(comp.parts());
                }
                let shape = shape_from_lists(comps);
                power_map.insert(k, *index.get(&shape).expect("power shape is a class"));
            }

            class_data.push(ClassData {
                label: cl.shape.to_string(),
                size: cl.class_size,
                element_order: ord,
                inverse,
                power_map,
            });
        }
        let order = (self.base.order as u128).pow(self.w as u32) * factorial(self.w);
        GroupModel::new(
            format!("{} wr S{}", self.base.name, self.w),
            order,
            class_data,
            self.identity_class(),
            self.labels.iter().map(|l| l.to_string()).collect(),
            self.values.clone(),
            self.base.conductor,
        )
    }
}

fn shape_from_lists(mut lists: Vec<Vec<u32>>) -> MultiPartition {
    let components = lists
        .iter_mut()
        .map(|parts| {
            parts.sort_unstable_by(|a, b| b.cmp(a));
            Partition::from_valid(parts.clone())
        })
        .collect();
    MultiPartition::new(components)
}

/// Degree of the wreath character labeled by `label`:
/// (w! / ∏ k_i!) · ∏ deg(α_i)^{k_i} · ∏ deg χ_{λ^(i)}.
pub fn wreath_degree(base_degrees: &[u128], label: &MultiPartition) -> u128 {
    let w = label.size();
    let mut num = factorial(w);
    for comp in label.components() {
        num /= factorial(comp.size());
    }
    for (i, comp) in label.components().iter().enumerate() {
        for _ in 0..comp.size() {
            num = num.checked_mul(base_degrees[i]).expect("degree overflow");
        }
        num = num.checked_mul(degree_hlf(comp)).expect("degree overflow");
    }
    num
}

/// Closed-form regular defect of the character of ℤ_ℓ ≀ S_w labeled by
/// `label`: ℓ^w (w!)_π / deg(label)_π, the division being exact.
pub fn reg_defect_formula(ell: u64, w: u64, label: &MultiPartition) -> Result<u128> {
    if ell < 2 {
        return Err(Error::invalid("reg_defect_formula requires ell >= 2"));
    }
    if label.size() != w {
        return Err(Error::invalid("label size must equal w"));
    }
    let base_degrees = vec![1u128; ell as usize];
    let degree = wreath_degree(&base_degrees, label);
    let num = (ell as u128).checked_pow(w as u32).expect("ell^w fits u128")
        * pi_part(factorial(w).max(1), ell)?;
    let den = pi_part(degree, ell)?;
    assert!(num.is_multiple_of(den), "regular defect division not exact");
    Ok(num / den)
}

/// The normalized regular inner product ℓ^w w! ⟨χ, 1⟩_reg / χ(1).
///
/// Returns it as an exact integer after asserting integrality and the
/// congruence ≡ (−1)^w mod ℓ; a failure is a theorem violation.
pub fn congruence_check(
    model: &GroupModel,
    regular: &ClosedClassSet,
    chi: usize,
    ell: u64,
    w: u64,
) -> Result<BigInt> {
    if w < 1 {
        return Err(Error::invalid("congruence_check requires w >= 1"));
    }
    let inner = contribution(model, chi, model.trivial_char(), regular)?;
    let scale = BigInt::from((ell as u128).pow(w as u32) * factorial(w));
    let degree = BigInt::from(model.degree(chi));
    let value = inner * Rational::new(scale, degree);
    if !value.is_integer() {
        return Err(Error::TheoremViolation(format!(
            "normalized regular inner product is not an integer for {}",
            model.char_labels()[chi]
        )));
    }
    let value = value.to_integer();
    let sign = if w.is_multiple_of(2) { BigInt::from(1) } else { BigInt::from(-1) };
    if (&value - &sign).mod_floor(&BigInt::from(ell)) != BigInt::zero() {
        return Err(Error::TheoremViolation(format!(
            "congruence fails for {}: {} is not {} mod {}",
            model.char_labels()[chi],
            value,
            sign,
            ell
        )));
    }
    Ok(value)
}
