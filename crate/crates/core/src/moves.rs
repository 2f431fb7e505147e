//! Elementary transformations of tuples of group elements.
//!
//! - Nielsen: `g_i <- g_j g_i` for `j != i`, or `g_i <- g_i^-1`.
//! - AC: Nielsen moves plus `g_i <- g^-1 g_i g` for any `g`.
//! - M: `s_i <- s_i w` with `w` in the normal closure of the other components.
//!
//! Nielsen and AC neighbor lists are multisets and may contain the input
//! tuple itself; M-neighbor lists never do. Graph code drops self-loops.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::group::{normal_closure, subgroup_generated, GroupTable, SubgroupSet};
use crate::limits::Limits;

pub type ElementTuple = Vec<usize>;

pub fn is_generating(g: &GroupTable, t: &[usize]) -> bool {
    subgroup_generated(g, t).is_whole()
}

pub fn normally_generates(g: &GroupTable, t: &[usize]) -> bool {
    normal_closure(g, t).is_whole()
}

pub fn for_each_inversion(g: &GroupTable, t: &[usize], mut f: impl FnMut(&[usize])) {
    let mut buf = t.to_vec();
    for i in 0..t.len() {
        buf[i] = g.inv(t[i]);
        f(&buf);
        buf[i] = t[i];
    }
}

pub fn for_each_nielsen_neighbor(g: &GroupTable, t: &[usize], mut f: impl FnMut(&[usize])) {
    let mut buf = t.to_vec();
    for i in 0..t.len() {
        buf[i] = g.inv(t[i]);
        f(&buf);
        for j in 0..t.len() {
            if j != i {
                buf[i] = g.mul(t[j], t[i]);
                f(&buf);
            }
        }
        buf[i] = t[i];
    }
}

pub fn for_each_ac_neighbor(g: &GroupTable, t: &[usize], mut f: impl FnMut(&[usize])) {
    for_each_nielsen_neighbor(g, t, &mut f);
    let mut buf = t.to_vec();
    for i in 0..t.len() {
        for x in 0..g.order() {
            buf[i] = g.conj(t[i], x);
            f(&buf);
        }
        buf[i] = t[i];
    }
}

/// Normal closures of the components other than `i`, one per index.
pub fn complement_closures(g: &GroupTable, t: &[usize]) -> Vec<SubgroupSet> {
    (0..t.len())
        .map(|i| {
            let others: Vec<usize> = t
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, &x)| x)
                .collect();
            normal_closure(g, &others)
        })
        .collect()
}

pub fn for_each_m_neighbor(g: &GroupTable, t: &[usize], mut f: impl FnMut(&[usize])) {
    let closures = complement_closures(g, t);
    let mut buf = t.to_vec();
    for (i, k) in closures.iter().enumerate() {
        for w in k.elements().filter(|&w| w != 0) {
            buf[i] = g.mul(t[i], w);
            f(&buf);
        }
        buf[i] = t[i];
    }
}

fn collect(visit: impl FnOnce(&mut dyn FnMut(&[usize]))) -> Vec<ElementTuple> {
    let mut out = Vec::new();
    visit(&mut |t: &[usize]| out.push(t.to_vec()));
    out
}

pub fn nielsen_neighbors(g: &GroupTable, t: &[usize]) -> Vec<ElementTuple> {
    collect(|f| for_each_nielsen_neighbor(g, t, f))
}

pub fn ac_neighbors(g: &GroupTable, t: &[usize]) -> Vec<ElementTuple> {
    collect(|f| for_each_ac_neighbor(g, t, f))
}

pub fn m_neighbors(g: &GroupTable, t: &[usize]) -> Vec<ElementTuple> {
    collect(|f| for_each_m_neighbor(g, t, f))
}

/// The tuple space `G^n` with tuples encoded as base-`|G|` integers, first
/// component most significant, so numeric order is lexicographic order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TupleSpace {
    pub order: usize,
    pub n: usize,
    pub size: u64,
}

impl TupleSpace {
    pub fn new(order: usize, n: usize, limits: &Limits) -> Result<Self> {
        let states = (order as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
        if states > limits.state_cap as u128 {
            return Err(Error::StateCapExceeded { states, cap: limits.state_cap });
        }
        Ok(TupleSpace { order, n, size: states as u64 })
    }

    #[inline]
    pub fn encode(&self, t: &[usize]) -> u64 {
        debug_assert_eq!(t.len(), self.n);
        t.iter().fold(0u64, |acc, &x| acc * self.order as u64 + x as u64)
    }

    #[inline]
    pub fn decode_into(&self, mut code: u64, out: &mut [usize]) {
        for slot in out.iter_mut().rev() {
            *slot = (code % self.order as u64) as usize;
            code /= self.order as u64;
        }
    }

    pub fn decode(&self, code: u64) -> ElementTuple {
        let mut t = vec![0; self.n];
        self.decode_into(code, &mut t);
        t
    }
}

/// Codes of all tuples satisfying `pred`, in increasing (lexicographic) order.
pub fn enumerate_codes(
    space: &TupleSpace,
    pred: impl Fn(&[usize]) -> bool + Sync,
) -> Vec<u64> {
    (0..space.size)
        .into_par_iter()
        .filter(|&code| {
            let t = space.decode(code);
            pred(&t)
        })
        .collect()
}

pub fn enumerate_normally_generating(
    g: &GroupTable,
    n: usize,
    limits: &Limits,
) -> Result<Vec<ElementTuple>> {
    let space = TupleSpace::new(g.order(), n, limits)?;
    Ok(enumerate_codes(&space, |t| normally_generates(g, t))
        .into_iter()
        .map(|c| space.decode(c))
        .collect())
}

pub fn enumerate_generating(g: &GroupTable, n: usize, limits: &Limits) -> Result<Vec<ElementTuple>> {
    let space = TupleSpace::new(g.order(), n, limits)?;
    Ok(enumerate_codes(&space, |t| is_generating(g, t))
        .into_iter()
        .map(|c| space.decode(c))
        .collect())
}
