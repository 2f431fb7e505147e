//! Finite groups as explicit multiplication tables.
//!
//! Element ids are dense indices `0..order` with the identity fixed at 0.
//! Every table is validated on construction: identity and inverse laws
//! exhaustively, associativity exhaustively up to [`EXHAUSTIVE_ASSOC_LIMIT`]
//! elements and by seeded random sampling of `10 * N^2` triples above.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::sync::OnceLock;

use fixedbitset::FixedBitSet;
use itertools::Itertools;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::perm::{self, Perm};

pub const EXHAUSTIVE_ASSOC_LIMIT: usize = 512;
pub const NORMAL_LATTICE_LIMIT: usize = 512;

#[derive(Debug)]
pub struct GroupTable {
    order: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    names: Option<Vec<String>>,
    perms: Option<Vec<Perm>>,
    generators: Vec<usize>,
    classes: OnceLock<Vec<u32>>,
}

impl Clone for GroupTable {
    fn clone(&self) -> Self {
        GroupTable {
            order: self.order,
            mul: self.mul.clone(),
            inv: self.inv.clone(),
            names: self.names.clone(),
            perms: self.perms.clone(),
            generators: self.generators.clone(),
            classes: OnceLock::new(),
        }
    }
}

impl GroupTable {
    /// Builds a table from a row-major `order * order` product array.
    /// Element 0 must be the identity.
    pub fn from_mul_table(order: usize, mul: Vec<u32>) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidTable("a group has at least one element".into()));
        }
        if mul.len() != order * order {
            return Err(Error::InvalidTable(format!(
                "expected {} entries, found {}",
                order * order,
                mul.len()
            )));
        }
        if let Some(&bad) = mul.iter().find(|&&x| x as usize >= order) {
            return Err(Error::InvalidTable(format!("entry {bad} out of range")));
        }
        for x in 0..order {
            if mul[x] as usize != x || mul[x * order] as usize != x {
                return Err(Error::InvalidTable(format!("0 is not a two-sided identity at {x}")));
            }
        }
        let mut inv = vec![u32::MAX; order];
        for x in 0..order {
            let row = &mul[x * order..(x + 1) * order];
            let y = row.iter().position(|&v| v == 0).ok_or_else(|| {
                Error::InvalidTable(format!("element {x} has no right inverse"))
            })?;
            if mul[y * order + x] != 0 {
                return Err(Error::InvalidTable(format!("inverse of {x} is not two-sided")));
            }
            inv[x] = y as u32;
        }
        let table = GroupTable {
            order,
            mul,
            inv,
            names: None,
            perms: None,
            generators: Vec::new(),
            classes: OnceLock::new(),
        };
        table.check_associativity()?;
        Ok(table.with_greedy_generators())
    }

    pub fn trivial() -> Self {
        GroupTable::from_mul_table(1, vec![0]).expect("trivial table is valid")
    }

    pub fn with_names(mut self, names: Vec<String>) -> Self {
        assert_eq!(names.len(), self.order);
        self.names = Some(names);
        self
    }

    pub(crate) fn with_perms(mut self, perms: Vec<Perm>) -> Self {
        assert_eq!(perms.len(), self.order);
        self.perms = Some(perms);
        self
    }

    fn with_greedy_generators(mut self) -> Self {
        let mut gens = Vec::new();
        let mut span = subgroup_generated(&self, &[]);
        for x in 0..self.order {
            if !span.contains(x) {
                gens.push(x);
                span = subgroup_generated(&self, &gens);
            }
        }
        self.generators = gens;
        self
    }

    fn check_associativity(&self) -> Result<()> {
        let n = self.order;
        let fail = |x: usize, y: usize, z: usize| {
            Error::InvalidTable(format!("associativity fails at ({x}, {y}, {z})"))
        };
        if n <= EXHAUSTIVE_ASSOC_LIMIT {
            for x in 0..n {
                for y in 0..n {
                    let xy = self.mul(x, y);
                    for z in 0..n {
                        if self.mul(xy, z) != self.mul(x, self.mul(y, z)) {
                            return Err(fail(x, y, z));
                        }
                    }
                }
            }
        } else {
            let mut rng = StdRng::seed_from_u64(0x5eed_ac1a);
            for _ in 0..10 * n * n {
                let (x, y, z) = (
                    rng.random_range(0..n),
                    rng.random_range(0..n),
                    rng.random_range(0..n),
                );
                if self.mul(self.mul(x, y), z) != self.mul(x, self.mul(y, z)) {
                    return Err(fail(x, y, z));
                }
            }
        }
        Ok(())
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.mul[x * self.order + y] as usize
    }

    #[inline]
    pub fn inv(&self, x: usize) -> usize {
        self.inv[x] as usize
    }

    /// `x^g = g^-1 x g`.
    #[inline]
    pub fn conj(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), x), g)
    }

    /// `[x, y] = x^-1 y^-1 x y`.
    #[inline]
    pub fn commutator(&self, x: usize, y: usize) -> usize {
        let xy = self.mul(x, y);
        let yx = self.mul(y, x);
        self.mul(self.inv(yx), xy)
    }

    pub fn pow(&self, x: usize, k: u64) -> usize {
        let mut acc = 0;
        let mut base = x;
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    pub fn element_order(&self, x: usize) -> usize {
        let mut k = 1;
        let mut y = x;
        while y != 0 {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|x| (0..x).all(|y| self.mul(x, y) == self.mul(y, x)))
    }

    /// A deterministic generating set: scan ids in order, keep each element
    /// not in the span of those kept before it.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn name(&self, x: usize) -> String {
        match (&self.names, &self.perms) {
            (Some(names), _) => names[x].clone(),
            (None, Some(perms)) => perm::cycle_string(&perms[x]),
            (None, None) => x.to_string(),
        }
    }

    pub fn permutation(&self, x: usize) -> Option<&Perm> {
        self.perms.as_ref().map(|p| &p[x])
    }

    /// Locates the element whose permutation representation is `p`, padding
    /// `p` with fixed points up to the representation degree.
    pub fn element_of_permutation(&self, p: &Perm) -> Option<usize> {
        let perms = self.perms.as_ref()?;
        let degree = perms[0].len();
        if p.len() > degree {
            return None;
        }
        let mut padded = p.clone();
        padded.extend(p.len() as u32..degree as u32);
        perms.iter().position(|q| *q == padded)
    }

    pub fn check_element(&self, id: usize) -> Result<()> {
        if id < self.order {
            Ok(())
        } else {
            Err(Error::ElementOutOfRange { id, order: self.order })
        }
    }

    /// Conjugacy class index of every element; classes are numbered by their
    /// least element.
    pub fn class_ids(&self) -> &[u32] {
        self.classes.get_or_init(|| {
            let mut ids = vec![u32::MAX; self.order];
            let mut next = 0u32;
            for x in 0..self.order {
                if ids[x] != u32::MAX {
                    continue;
                }
                for g in 0..self.order {
                    ids[self.conj(x, g)] = next;
                }
                next += 1;
            }
            ids
        })
    }

    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let ids = self.class_ids();
        let count = ids.iter().map(|&c| c as usize + 1).max().unwrap_or(0);
        let mut classes = vec![Vec::new(); count];
        for (x, &c) in ids.iter().enumerate() {
            classes[c as usize].push(x);
        }
        classes
    }

    pub fn centralizer(&self, x: usize) -> SubgroupSet {
        let members: Vec<usize> = (0..self.order)
            .filter(|&g| self.mul(g, x) == self.mul(x, g))
            .collect();
        SubgroupSet::from_elements(self.order, members)
    }

    pub fn whole(&self) -> SubgroupSet {
        let mut bits = FixedBitSet::with_capacity(self.order);
        bits.insert_range(..);
        SubgroupSet::from_bits(bits, Some(true))
    }
}

/// A subgroup stored as a membership bitset over the parent's element ids.
#[derive(Debug, Clone)]
pub struct SubgroupSet {
    members: FixedBitSet,
    normal: OnceLock<bool>,
}

impl PartialEq for SubgroupSet {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members
    }
}

impl Eq for SubgroupSet {}

impl SubgroupSet {
    fn from_bits(members: FixedBitSet, normal: Option<bool>) -> Self {
        let cell = OnceLock::new();
        if let Some(flag) = normal {
            let _ = cell.set(flag);
        }
        SubgroupSet { members, normal: cell }
    }

    /// Wraps a set of element ids without checking closure.
    pub fn from_elements(order: usize, elements: impl IntoIterator<Item = usize>) -> Self {
        let mut bits = FixedBitSet::with_capacity(order);
        for x in elements {
            bits.insert(x);
        }
        SubgroupSet::from_bits(bits, None)
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.contains(x)
    }

    pub fn size(&self) -> usize {
        self.members.count_ones(..)
    }

    pub fn parent_order(&self) -> usize {
        self.members.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.size() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.size() == self.members.len()
    }

    pub fn elements(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.ones()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.members.ones().collect()
    }

    pub fn bits(&self) -> &FixedBitSet {
        &self.members
    }

    pub fn is_subset(&self, other: &SubgroupSet) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn intersection(&self, other: &SubgroupSet) -> SubgroupSet {
        let mut bits = self.members.clone();
        bits.intersect_with(&other.members);
        SubgroupSet::from_bits(bits, None)
    }

    /// Normality in `g`, computed on first use and cached.
    pub fn is_normal(&self, g: &GroupTable) -> bool {
        *self.normal.get_or_init(|| {
            self.members
                .ones()
                .all(|m| g.generators().iter().all(|&x| self.contains(g.conj(m, x))))
        })
    }

    pub fn is_closed(&self, g: &GroupTable) -> bool {
        self.contains(0)
            && self.elements().all(|x| {
                self.contains(g.inv(x)) && self.elements().all(|y| self.contains(g.mul(x, y)))
            })
    }
}

/// Closure of `gens` together with the current members, by breadth-first
/// right multiplication.
fn close_from(g: &GroupTable, members: &mut FixedBitSet, gens: &[usize]) {
    let mut queue: VecDeque<usize> = members.ones().collect();
    if !members.contains(0) {
        members.insert(0);
        queue.push_back(0);
    }
    while let Some(x) = queue.pop_front() {
        for &s in gens {
            let y = g.mul(x, s);
            if !members.contains(y) {
                members.insert(y);
                queue.push_back(y);
            }
        }
    }
}

pub fn subgroup_generated(g: &GroupTable, seed: &[usize]) -> SubgroupSet {
    let gens: Vec<usize> = seed.iter().copied().filter(|&x| x != 0).unique().collect();
    let mut members = FixedBitSet::with_capacity(g.order());
    close_from(g, &mut members, &gens);
    let normal = if members.count_ones(..) == g.order() {
        Some(true)
    } else {
        None
    };
    SubgroupSet::from_bits(members, normal)
}

/// Least normal subgroup containing `seed`: close under the seed, then keep
/// adding conjugates of the accumulated generators by the group's generators
/// until none escapes.
pub fn normal_closure(g: &GroupTable, seed: &[usize]) -> SubgroupSet {
    let mut gens: Vec<usize> = seed.iter().copied().filter(|&x| x != 0).unique().collect();
    let mut members = FixedBitSet::with_capacity(g.order());
    close_from(g, &mut members, &gens);
    let mut cursor = 0;
    while cursor < gens.len() {
        let s = gens[cursor];
        cursor += 1;
        for &x in g.generators() {
            let c = g.conj(s, x);
            if !members.contains(c) {
                gens.push(c);
                close_from(g, &mut members, &gens);
            }
        }
    }
    SubgroupSet::from_bits(members, Some(true))
}

#[derive(Debug, Clone)]
pub struct Quotient {
    pub table: GroupTable,
    /// Coset id of every element of the parent group.
    pub projection: Vec<usize>,
}

impl Quotient {
    pub fn project(&self, x: usize) -> usize {
        self.projection[x]
    }

    pub fn project_tuple(&self, t: &[usize]) -> Vec<usize> {
        t.iter().map(|&x| self.projection[x]).collect()
    }
}

/// Coset table of `g / n`. Cosets are numbered by their least element, so the
/// identity coset is 0.
pub fn quotient(g: &GroupTable, n: &SubgroupSet) -> Result<Quotient> {
    if !n.is_normal(g) {
        return Err(Error::NotNormal);
    }
    let mut projection = vec![usize::MAX; g.order()];
    let mut reps = Vec::new();
    let kernel: Vec<usize> = n.to_vec();
    for x in 0..g.order() {
        if projection[x] != usize::MAX {
            continue;
        }
        let id = reps.len();
        reps.push(x);
        for &k in &kernel {
            projection[g.mul(x, k)] = id;
        }
    }
    let q = reps.len();
    let mut mul = Vec::with_capacity(q * q);
    for &a in &reps {
        for &b in &reps {
            mul.push(projection[g.mul(a, b)] as u32);
        }
    }
    let names = reps.iter().map(|&r| format!("[{}]", g.name(r))).collect();
    let table = GroupTable::from_mul_table(q, mul)?.with_names(names);
    Ok(Quotient { table, projection })
}

/// Commutator subgroup of a normal subgroup `h` of `g`. The normal closure of
/// the commutators of a generating set of `h` suffices because `[h, h]` is
/// characteristic in `h`.
pub fn commutator_subgroup(g: &GroupTable, h: &SubgroupSet) -> SubgroupSet {
    let mut gens = Vec::new();
    let mut span = subgroup_generated(g, &[]);
    for x in h.elements() {
        if !span.contains(x) {
            gens.push(x);
            span = subgroup_generated(g, &gens);
        }
    }
    let comms: Vec<usize> = gens
        .iter()
        .tuple_combinations()
        .map(|(&x, &y)| g.commutator(x, y))
        .collect();
    normal_closure(g, &comms)
}

/// `[G, G^(1), G^(2), ...]` up to and including the first repeated term.
pub fn derived_series(g: &GroupTable) -> Vec<SubgroupSet> {
    let mut series = vec![g.whole()];
    loop {
        let next = commutator_subgroup(g, series.last().unwrap());
        if next == *series.last().unwrap() {
            return series;
        }
        series.push(next);
    }
}

pub fn is_soluble(g: &GroupTable) -> bool {
    derived_series(g).last().unwrap().is_trivial()
}

/// Number of strict steps in the derived series; `None` for non-soluble groups.
pub fn solubility_length(g: &GroupTable) -> Option<usize> {
    let series = derived_series(g);
    series.last().unwrap().is_trivial().then(|| series.len() - 1)
}

pub fn abelianization(g: &GroupTable) -> Quotient {
    let derived = commutator_subgroup(g, &g.whole());
    quotient(g, &derived).expect("the derived subgroup is normal")
}

/// Exhaustive search for the least `k` such that some `k`-subset satisfies
/// `accept`; candidates for each slot are drawn from `pool`.
fn least_subset_size(
    g: &GroupTable,
    pool: &[usize],
    bound: usize,
    accept: impl Fn(&[usize]) -> bool,
) -> Result<usize> {
    if g.order() == 1 {
        return Ok(0);
    }
    for k in 1..=bound {
        if pool.iter().copied().combinations(k).any(|c| accept(&c)) {
            return Ok(k);
        }
    }
    Err(Error::SearchBudgetExceeded { bound })
}

/// Minimal number of generators, by exhaustive search over subsets of
/// non-identity elements of increasing size.
pub fn rank(g: &GroupTable, limits: &Limits) -> Result<usize> {
    let pool: Vec<usize> = (1..g.order()).collect();
    least_subset_size(g, &pool, limits.tuple_bound, |c| {
        subgroup_generated(g, c).is_whole()
    })
}

/// Minimal number of normal generators. The normal closure of a set depends
/// only on the conjugacy classes it meets, so subsets range over class
/// representatives.
pub fn weight(g: &GroupTable, limits: &Limits) -> Result<usize> {
    let pool: Vec<usize> = g
        .conjugacy_classes()
        .into_iter()
        .map(|c| c[0])
        .filter(|&x| x != 0)
        .collect();
    least_subset_size(g, &pool, limits.tuple_bound, |c| {
        normal_closure(g, c).is_whole()
    })
}

fn lattice_key(s: &SubgroupSet) -> (usize, Vec<usize>) {
    (s.size(), s.to_vec())
}

/// Every normal subgroup, as the join closure of the normal closures of
/// single elements; sorted by size, then by member list.
pub fn normal_subgroups(g: &GroupTable) -> Result<Vec<SubgroupSet>> {
    if g.order() > NORMAL_LATTICE_LIMIT {
        return Err(Error::OrderCapExceeded { cap: NORMAL_LATTICE_LIMIT });
    }
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut subgroups: Vec<SubgroupSet> = Vec::new();
    let mut push = |s: SubgroupSet, subgroups: &mut Vec<SubgroupSet>| {
        if seen.insert(s.to_vec()) {
            subgroups.push(s);
            true
        } else {
            false
        }
    };
    for rep in g.conjugacy_classes().iter().map(|c| c[0]) {
        push(normal_closure(g, &[rep]), &mut subgroups);
    }
    let mut frontier = 0;
    while frontier < subgroups.len() {
        let end = subgroups.len();
        for i in 0..end {
            for j in frontier.max(i + 1)..end {
                if subgroups[i].is_subset(&subgroups[j]) || subgroups[j].is_subset(&subgroups[i]) {
                    continue;
                }
                let seed: Vec<usize> = subgroups[i].elements().chain(subgroups[j].elements()).collect();
                let join = normal_closure(g, &seed);
                push(join, &mut subgroups);
            }
        }
        frontier = end;
    }
    subgroups.sort_by_key(lattice_key);
    Ok(subgroups)
}

pub fn is_simple(g: &GroupTable) -> Result<bool> {
    Ok(normal_subgroups(g)?.len() == 2)
}

/// Intersection of all maximal normal subgroups, or the whole group when
/// there are none (only the trivial group at finite scale).
pub fn w_subgroup(g: &GroupTable) -> Result<SubgroupSet> {
    let mut w = g.whole();
    for n in normal_subgroups(g)? {
        if n.is_whole() {
            continue;
        }
        let q = quotient(g, &n)?;
        if is_simple(&q.table)? {
            w = w.intersection(&n);
        }
    }
    let _ = w.normal.set(true);
    Ok(w)
}

/// Builds the table of the permutation group generated by `gens` acting on
/// `0..degree`, with `(g h)(x) = h(g(x))`. Ids follow breadth-first discovery
/// from the identity, multiplying on the right by generators in list order.
pub fn group_from_permutations(degree: usize, gens: &[Perm], limits: &Limits) -> Result<GroupTable> {
    for p in gens {
        perm::validate(p, degree)?;
    }
    let identity: Perm = (0..degree as u32).collect();
    let mut index: HashMap<Perm, usize> = HashMap::new();
    let mut elements = vec![identity.clone()];
    index.insert(identity, 0);
    // right[x][s] = id of x * gens[s]
    let mut right: Vec<Vec<u32>> = Vec::new();
    // parent word: element = elements[parent] * gens[via]
    let mut parent: Vec<(usize, usize)> = vec![(0, 0)];
    let mut cursor = 0;
    while cursor < elements.len() {
        let mut row = Vec::with_capacity(gens.len());
        for (s, gen) in gens.iter().enumerate() {
            let y = perm::compose(&elements[cursor], gen);
            let id = match index.get(&y) {
                Some(&id) => id,
                None => {
                    let id = elements.len();
                    if id >= limits.order_cap {
                        return Err(Error::OrderCapExceeded { cap: limits.order_cap });
                    }
                    index.insert(y.clone(), id);
                    elements.push(y);
                    parent.push((cursor, s));
                    id
                }
            };
            row.push(id as u32);
        }
        right.push(row);
        cursor += 1;
    }
    let n = elements.len();
    let mut mul = vec![0u32; n * n];
    for a in 0..n {
        mul[a * n] = a as u32;
        for b in 1..n {
            let (p, s) = parent[b];
            let ap = mul[a * n + p] as usize;
            mul[a * n + b] = right[ap][s];
        }
    }
    Ok(GroupTable::from_mul_table(n, mul)?.with_perms(elements))
}
