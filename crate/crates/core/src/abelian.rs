//! Invariant factor decompositions of finite abelian group tables and the
//! determinant classification of their generating vectors up to Nielsen
//! equivalence.
//!
//! A generating `n`-vector of `Z_{d1} x ... x Z_{dk}` with `n > k` is Nielsen
//! equivalent to every other one. For `n = k` the classes are labelled by
//! `+-det` of the coordinate matrix reduced modulo `d1`; the label used here
//! is the smaller of the two residues `delta` and `d1 - delta`.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use fixedbitset::FixedBitSet;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize, Serializer};

use crate::arith;
use crate::error::{Error, Result};
use crate::group::{subgroup_generated, GroupTable};
use crate::matrix::{smith_normal_form, IntMatrix};

/// Invariant factors `d1 | d2 | ... | dk`; a 0 entry stands for an infinite
/// cyclic factor and must come last.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct AbelianInvariants(Vec<u64>);

impl AbelianInvariants {
    pub fn new(factors: Vec<u64>) -> Result<Self> {
        let invalid = |msg: String| Err(Error::UnknownSpec(msg));
        if factors.first() == Some(&1) {
            return invalid("the first invariant factor must differ from 1".into());
        }
        for w in factors.windows(2) {
            match (w[0], w[1]) {
                (0, 0) | (_, 0) => {}
                (0, _) => return invalid("infinite factors must come last".into()),
                (a, b) if b % a != 0 => return invalid(format!("{a} does not divide {b}")),
                _ => {}
            }
        }
        Ok(AbelianInvariants(factors))
    }

    pub fn factors(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Invariant factors of `Z_{m1} x ... x Z_{mr}` (arbitrary moduli) from the
    /// Smith form of the diagonal relation matrix.
    pub fn from_moduli(moduli: &[u64]) -> Self {
        let rows: Vec<Vec<i64>> = (0..moduli.len())
            .map(|i| {
                (0..moduli.len())
                    .map(|j| if i == j { moduli[i] as i64 } else { 0 })
                    .collect()
            })
            .collect();
        let m = IntMatrix::from_rows(&rows, moduli.len());
        AbelianInvariants::from_relations(&m)
    }

    /// Invariant factors of `Z^cols / rowspace(relations)`.
    pub fn from_relations(relations: &IntMatrix) -> Self {
        let snf = smith_normal_form(relations);
        let mut diag: Vec<u64> = snf
            .diagonal()
            .iter()
            .map(|d| d.to_u64().expect("invariant factor fits in u64"))
            .collect();
        diag.resize(relations.cols(), 0);
        let factors = diag.into_iter().filter(|&d| d != 1).collect();
        AbelianInvariants::new(factors).expect("Smith diagonal is a divisibility chain")
    }
}

impl TryFrom<Vec<u64>> for AbelianInvariants {
    type Error = Error;
    fn try_from(v: Vec<u64>) -> Result<Self> {
        AbelianInvariants::new(v)
    }
}

impl From<AbelianInvariants> for Vec<u64> {
    fn from(v: AbelianInvariants) -> Vec<u64> {
        v.0
    }
}

/// Euler's totient extended by `phi(0) = 2`.
pub fn euler_phi_ext(d: u64) -> u64 {
    if d == 0 {
        2
    } else {
        arith::totient(d)
    }
}

/// Number of Nielsen classes of generating `n`-vectors.
pub fn class_count(inv: &AbelianInvariants, n: usize) -> Result<u64> {
    let k = inv.len();
    if n < k {
        return Err(Error::VectorTooShort { n, k });
    }
    if n > k || k == 0 {
        return Ok(1);
    }
    Ok((euler_phi_ext(inv.factors()[0]) / 2).max(1))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Delta {
    /// Every generating vector of this length is in one class.
    SingleClass,
    /// Canonical `+-det` residue.
    Det(u64),
}

impl fmt::Display for Delta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Delta::SingleClass => write!(f, "single-class"),
            Delta::Det(d) => write!(f, "{d}"),
        }
    }
}

impl Serialize for Delta {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Delta::SingleClass => s.serialize_str("single-class"),
            Delta::Det(d) => s.serialize_u64(*d),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct NielsenClass {
    pub invariants: AbelianInvariants,
    pub n: usize,
    pub delta: Delta,
}

/// Canonical representative of `{delta, -delta}` modulo `d1`: the smaller of
/// the two residues, in `[1, d1 - 1]` for `d1 >= 2`. For `d1 = 0` this is `|delta|`.
pub fn canonical_delta(det: &BigInt, d1: u64) -> u64 {
    if d1 == 0 {
        return det.magnitude().to_u64().expect("determinant fits in u64");
    }
    let m = BigInt::from(d1);
    let r = det.mod_floor(&m).to_u64().unwrap();
    let s = (d1 - r) % d1;
    r.min(s)
}

/// A finite abelian group table together with an invariant factor basis and
/// the coordinates of every element in that basis.
#[derive(Debug, Clone)]
pub struct AbelianStructure {
    invariants: AbelianInvariants,
    basis: Vec<usize>,
    coords: Vec<Vec<u64>>,
    order: usize,
}

impl AbelianStructure {
    pub fn new(a: &GroupTable) -> Result<Self> {
        if !a.is_abelian() {
            return Err(Error::NotAbelian);
        }
        let invariants = AbelianInvariants::from_relations(&relation_matrix(a));
        let orders: Vec<usize> = invariants.factors().iter().map(|&d| d as usize).collect();
        debug_assert_eq!(orders.iter().product::<usize>(), a.order());
        let basis = find_basis(a, &orders).expect("a basis with the invariant orders exists");
        let coords = coordinate_table(a, &basis, &orders)
            .expect("coordinate map of an invariant factor basis is bijective");
        Ok(AbelianStructure { invariants, basis, coords, order: a.order() })
    }

    pub fn invariants(&self) -> &AbelianInvariants {
        &self.invariants
    }

    pub fn basis(&self) -> &[usize] {
        &self.basis
    }

    pub fn coordinates(&self, x: usize) -> &[u64] {
        &self.coords[x]
    }

    /// Element with the given coordinates in the basis.
    pub fn element(&self, a: &GroupTable, coords: &[u64]) -> usize {
        coords
            .iter()
            .zip(&self.basis)
            .fold(0, |acc, (&c, &b)| a.mul(acc, a.pow(b, c)))
    }

    /// Label of the Nielsen class of a generating tuple.
    pub fn class_of(&self, a: &GroupTable, tuple: &[usize]) -> Result<NielsenClass> {
        for &x in tuple {
            if x >= self.order {
                return Err(Error::ElementOutOfRange { id: x, order: self.order });
            }
        }
        let k = self.invariants.len();
        let n = tuple.len();
        if n < k {
            return Err(Error::VectorTooShort { n, k });
        }
        if !subgroup_generated(a, tuple).is_whole() {
            return Err(Error::NotGenerating);
        }
        let delta = if n > k || k == 0 {
            Delta::SingleClass
        } else {
            let d1 = self.invariants.factors()[0];
            let rows: Vec<Vec<i64>> = tuple
                .iter()
                .map(|&x| self.coords[x].iter().map(|&c| (c % d1) as i64).collect())
                .collect();
            let det = IntMatrix::from_rows(&rows, k).det();
            Delta::Det(canonical_delta(&det, d1))
        };
        Ok(NielsenClass { invariants: self.invariants.clone(), n, delta })
    }

    /// One tuple per Nielsen class of generating `n`-vectors:
    /// `(delta e1, e2, ..., ek, 0, ..., 0)`.
    pub fn representatives(&self, a: &GroupTable, n: usize) -> Result<Vec<(Delta, Vec<usize>)>> {
        let k = self.invariants.len();
        if n < k {
            return Err(Error::VectorTooShort { n, k });
        }
        let build = |delta: u64| -> Vec<usize> {
            let mut t: Vec<usize> = self.basis.clone();
            if let Some(first) = t.first_mut() {
                *first = a.pow(*first, delta);
            }
            t.resize(n, 0);
            t
        };
        if n > k || k == 0 {
            return Ok(vec![(Delta::SingleClass, build(1))]);
        }
        let d1 = self.invariants.factors()[0];
        Ok((1..=d1 / 2)
            .filter(|&d| arith::gcd(d, d1) == 1)
            .map(|d| (Delta::Det(d), build(d)))
            .collect())
    }
}

/// Relations among the group's generators from a breadth-first spanning tree:
/// every edge `x -> x g_i` contributes `word(x) + e_i - word(x g_i)`.
fn relation_matrix(a: &GroupTable) -> IntMatrix {
    let gens = a.generators();
    let r = gens.len();
    let mut word: Vec<Option<Vec<i64>>> = vec![None; a.order()];
    word[0] = Some(vec![0; r]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        for (i, &g) in gens.iter().enumerate() {
            let y = a.mul(x, g);
            if word[y].is_none() {
                let mut w = word[x].clone().unwrap();
                w[i] += 1;
                word[y] = Some(w);
                queue.push_back(y);
            }
        }
    }
    let mut rows: Vec<Vec<i64>> = Vec::new();
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    for x in 0..a.order() {
        let wx = word[x].as_ref().unwrap();
        for (i, &g) in gens.iter().enumerate() {
            let wy = word[a.mul(x, g)].as_ref().unwrap();
            let rel: Vec<i64> = (0..r)
                .map(|j| wx[j] + i64::from(i == j) - wy[j])
                .collect();
            if rel.iter().any(|&v| v != 0) && seen.insert(rel.clone()) {
                rows.push(rel);
            }
        }
    }
    IntMatrix::from_rows(&rows, r)
}

fn cyclic_span(a: &GroupTable, x: usize) -> Vec<usize> {
    let mut out = vec![0];
    let mut y = x;
    while y != 0 {
        out.push(y);
        y = a.mul(y, x);
    }
    out
}

/// Depth-first search for `b_k, b_{k-1}, ..., b_1` with `order(b_i) = d_i`,
/// each new cyclic subgroup meeting the span of the previous ones trivially.
/// Candidates are tried in id order, largest order first.
fn find_basis(a: &GroupTable, orders: &[usize]) -> Option<Vec<usize>> {
    let mut span = FixedBitSet::with_capacity(a.order());
    span.insert(0);
    let mut chosen = Vec::new();
    let element_orders: Vec<usize> = (0..a.order()).map(|x| a.element_order(x)).collect();
    if extend_basis(a, orders, &element_orders, &mut span, &mut chosen) {
        chosen.reverse();
        Some(chosen)
    } else {
        None
    }
}

fn extend_basis(
    a: &GroupTable,
    orders: &[usize],
    element_orders: &[usize],
    span: &mut FixedBitSet,
    chosen: &mut Vec<usize>,
) -> bool {
    if chosen.len() == orders.len() {
        return true;
    }
    let target = orders[orders.len() - chosen.len() - 1];
    for x in 0..a.order() {
        if element_orders[x] != target {
            continue;
        }
        let powers = cyclic_span(a, x);
        if powers[1..].iter().any(|&p| span.contains(p)) {
            continue;
        }
        let mut next = span.clone();
        for h in span.ones() {
            for &p in &powers {
                next.insert(a.mul(h, p));
            }
        }
        let saved = std::mem::replace(span, next);
        chosen.push(x);
        if chosen.len() == orders.len() || extend_basis(a, orders, element_orders, span, chosen) {
            return true;
        }
        chosen.pop();
        *span = saved;
    }
    false
}

/// Coordinates of every element; `None` unless the map is a bijection.
fn coordinate_table(a: &GroupTable, basis: &[usize], orders: &[usize]) -> Option<Vec<Vec<u64>>> {
    let mut coords: Vec<Option<Vec<u64>>> = vec![None; a.order()];
    let total: usize = orders.iter().product();
    for mut idx in 0..total {
        let mut c = vec![0u64; orders.len()];
        for i in (0..orders.len()).rev() {
            c[i] = (idx % orders[i]) as u64;
            idx /= orders[i];
        }
        let x = c
            .iter()
            .zip(basis)
            .fold(0, |acc, (&ci, &b)| a.mul(acc, a.pow(b, ci)));
        if coords[x].is_some() {
            return None;
        }
        coords[x] = Some(c);
    }
    coords.into_iter().collect()
}

/// Invariant factors of a finite abelian table and a matching basis.
pub fn invariant_factors(a: &GroupTable) -> Result<(AbelianInvariants, Vec<usize>)> {
    let s = AbelianStructure::new(a)?;
    Ok((s.invariants.clone(), s.basis.clone()))
}

pub fn nielsen_class(a: &GroupTable, tuple: &[usize]) -> Result<NielsenClass> {
    AbelianStructure::new(a)?.class_of(a, tuple)
}

pub fn nielsen_equivalent(a: &GroupTable, u: &[usize], v: &[usize]) -> Result<bool> {
    if u.len() != v.len() {
        return Err(Error::LengthMismatch(u.len(), v.len()));
    }
    let s = AbelianStructure::new(a)?;
    Ok(s.class_of(a, u)? == s.class_of(a, v)?)
}
