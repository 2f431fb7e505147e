//! Iterated regular wreath products of cyclic groups,
//! `G_1 = C_1`, `G_i = G_(i-1) wr C_i`.
//!
//! An element of `H wr C_m` is a pair `(f, c)` with `f: Z/m -> H` and `c` in
//! `Z/m`, multiplied as `(f, c)(f', c') = (f * shift_c(f'), c + c')` where
//! `shift_c(f')(y) = f'(y - c)`. Its id is `c + m * sum_y f(y) |H|^y`.

use serde::Serialize;

use crate::abelian::{invariant_factors, AbelianInvariants};
use crate::arith;
use crate::error::{Error, Result};
use crate::group::{abelianization, commutator_subgroup, weight, GroupTable};
use crate::limits::Limits;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WreathSpec {
    pub orders: Vec<u64>,
}

impl WreathSpec {
    pub fn new(orders: Vec<u64>) -> Result<Self> {
        if orders.is_empty() {
            return Err(Error::RangeError("a wreath product needs at least one factor".into()));
        }
        for &o in &orders {
            if o < 2 {
                return Err(Error::RangeError(format!("cyclic factor order {o} is below 2")));
            }
        }
        for (i, &a) in orders.iter().enumerate() {
            for &b in &orders[i + 1..] {
                if arith::gcd(a, b) != 1 {
                    return Err(Error::NotCoprime { value: a as i64, modulus: b as i64 });
                }
            }
        }
        Ok(WreathSpec { orders })
    }

    /// `|G_k|`, or `None` past `u128`.
    pub fn order(&self) -> Option<u128> {
        self.orders.iter().try_fold(1u128, |h, &m| {
            h.checked_pow(m as u32)?.checked_mul(m as u128)
        })
    }
}

/// `H wr C_m` for the regular action of `C_m` on itself.
fn wreath_step(h: &GroupTable, m: usize) -> Result<GroupTable> {
    let ho = h.order();
    let order = ho.pow(m as u32) * m;
    let decode = |id: usize| -> (Vec<usize>, usize) {
        let c = id % m;
        let mut rest = id / m;
        let f = (0..m)
            .map(|_| {
                let v = rest % ho;
                rest /= ho;
                v
            })
            .collect();
        (f, c)
    };
    let elements: Vec<(Vec<usize>, usize)> = (0..order).map(decode).collect();
    let mut mul = Vec::with_capacity(order * order);
    for (f, c) in &elements {
        for (g, d) in &elements {
            let mut code = 0usize;
            for y in (0..m).rev() {
                let shifted = g[(y + m - c) % m];
                code = code * ho + h.mul(f[y], shifted);
            }
            mul.push((code * m + (c + d) % m) as u32);
        }
    }
    GroupTable::from_mul_table(order, mul)
}

pub fn wreath_cyclic(spec: &WreathSpec, limits: &Limits) -> Result<GroupTable> {
    match spec.order() {
        Some(o) if o <= limits.order_cap as u128 => {}
        _ => return Err(Error::OrderCapExceeded { cap: limits.order_cap }),
    }
    let first = spec.orders[0] as usize;
    let cyclic: Vec<u32> = (0..first * first).map(|i| ((i / first + i % first) % first) as u32).collect();
    let mut g = GroupTable::from_mul_table(first, cyclic)?;
    for &m in &spec.orders[1..] {
        g = wreath_step(&g, m as usize)?;
    }
    Ok(g)
}

/// `x_1 = c_1`, `x_i = (f, 1)` with `f(0) = x_(i-1)` and `f(y) = 1` elsewhere.
pub fn distinguished_element(spec: &WreathSpec) -> usize {
    let mut x = 1usize;
    for &m in &spec.orders[1..] {
        x = 1 + m as usize * x;
    }
    x
}

#[derive(Debug, Clone, Serialize)]
pub struct WreathReport {
    pub orders: Vec<u64>,
    pub group_order: usize,
    pub abelianization: AbelianInvariants,
    pub abelianization_cyclic: bool,
    pub element: usize,
    pub element_order: usize,
    pub order_matches: bool,
    pub centralizer_size: usize,
    pub self_centralizing: bool,
    pub coset_size: usize,
    pub coset_conjugate: bool,
    pub class_size: usize,
    pub class_size_matches: bool,
    pub weight: usize,
    pub pass: bool,
}

pub fn wreath_weight_one_verify(spec: &WreathSpec, limits: &Limits) -> Result<WreathReport> {
    let g = wreath_cyclic(spec, limits)?;
    let x = distinguished_element(spec);
    let ab = abelianization(&g);
    let (invariants, _) = invariant_factors(&ab.table)?;
    let ab_order = ab.table.order();
    let product: u64 = spec.orders.iter().product();
    let abelianization_cyclic = invariants.factors() == [product];

    let element_order = g.element_order(x);
    let centralizer = g.centralizer(x);
    let powers: Vec<usize> = (0..element_order).map(|k| g.pow(x, k as u64)).collect();
    let self_centralizing = centralizer.size() == element_order
        && powers.iter().all(|&p| centralizer.contains(p));

    let derived = commutator_subgroup(&g, &g.whole());
    let class = g.class_ids()[x];
    let coset_conjugate = derived.elements().all(|d| g.class_ids()[g.mul(x, d)] == class);
    let class_size = g.class_ids().iter().filter(|&&c| c == class).count();
    let w = weight(&g, limits)?;

    let order_matches = element_order == ab_order;
    let class_size_matches = class_size * ab_order == g.order();
    Ok(WreathReport {
        orders: spec.orders.clone(),
        group_order: g.order(),
        abelianization: invariants,
        abelianization_cyclic,
        element: x,
        element_order,
        order_matches,
        centralizer_size: centralizer.size(),
        self_centralizing,
        coset_size: derived.size(),
        coset_conjugate,
        class_size,
        class_size_matches,
        weight: w,
        pass: abelianization_cyclic && order_matches && self_centralizing && coset_conjugate && class_size_matches && w == 1,
    })
}
