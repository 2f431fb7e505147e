//! Catalog of named groups.
//!
//! Element numbering, identity always 0:
//! - `cyclic(m)`: id `k` is the residue `k`.
//! - `abelian(d1, ..., dk)`: mixed radix over the coordinates, last one
//!   fastest, so `(c1, ..., ck)` has id `sum c_i * d_{i+1} * ... * d_k`.
//!   The factors need not form a divisibility chain.
//! - `dihedral(m)` (order `2m`): `r^a s^b` has id `a + m b`, with
//!   `s r s = r^-1`.
//! - `quaternion8`: ids `0..8` are `1, -1, i, -i, j, -j, k, -k`.
//! - `symmetric(m)`: permutation closure of `(0 1)` and `(0 1 ... m-1)`.
//! - `heisenberg(p)`: upper unitriangular `[[1,a,c],[0,1,b],[0,0,1]]` over
//!   `Z/p`, id `a p^2 + b p + c`.
//! - `affine(q)`: maps `x -> a x + b` over `GF(q)`, composed left to right
//!   (first map applied first); id `(a - 1) q + b` with field elements coded
//!   as base-`p` digit strings of their polynomial coefficients.

use crate::arith;
use crate::error::{Error, Result};
use crate::group::{group_from_permutations, GroupTable};
use crate::limits::Limits;
use crate::perm;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Builtin {
    Cyclic(u64),
    Abelian(Vec<u64>),
    Dihedral(u64),
    Quaternion8,
    Symmetric(u64),
    Heisenberg(u64),
    Affine(u64),
}

impl Builtin {
    pub fn order(&self) -> Option<u128> {
        let o = match self {
            Builtin::Cyclic(m) => *m as u128,
            Builtin::Abelian(ds) => ds.iter().map(|&d| d as u128).product(),
            Builtin::Dihedral(m) => 2 * *m as u128,
            Builtin::Quaternion8 => 8,
            Builtin::Symmetric(m) => (1..=*m as u128).product(),
            Builtin::Heisenberg(p) => (*p as u128).checked_pow(3)?,
            Builtin::Affine(q) => *q as u128 * (*q as u128).saturating_sub(1),
        };
        Some(o)
    }

    pub fn describe(&self) -> String {
        let list = |v: &[u64]| v.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(",");
        match self {
            Builtin::Cyclic(m) => format!("cyclic({m})"),
            Builtin::Abelian(ds) => format!("abelian({})", list(ds)),
            Builtin::Dihedral(m) => format!("dihedral({m})"),
            Builtin::Quaternion8 => "quaternion8".into(),
            Builtin::Symmetric(m) => format!("symmetric({m})"),
            Builtin::Heisenberg(p) => format!("heisenberg({p})"),
            Builtin::Affine(q) => format!("affine({q})"),
        }
    }

    fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::UnknownSpec(format!("{}: {msg}", self.describe())));
        match self {
            Builtin::Cyclic(0) | Builtin::Dihedral(0) => bad("parameter must be positive"),
            Builtin::Abelian(ds) if ds.contains(&0) => {
                bad("infinite factors have no finite table")
            }
            Builtin::Symmetric(m) if *m == 0 || *m > 6 => bad("degree must lie in 1..=6"),
            Builtin::Heisenberg(p) if *p < 2 => bad("modulus must be at least 2"),
            Builtin::Affine(q) if *q < 2 || *q > 32 || arith::prime_power(*q).is_none() => {
                bad("field size must be a prime power in 2..=32")
            }
            _ => Ok(()),
        }
    }
}

fn table_from_fn(
    order: usize,
    product: impl Fn(usize, usize) -> usize,
    name: impl Fn(usize) -> String,
) -> Result<GroupTable> {
    let mut mul = Vec::with_capacity(order * order);
    for x in 0..order {
        for y in 0..order {
            mul.push(product(x, y) as u32);
        }
    }
    Ok(GroupTable::from_mul_table(order, mul)?.with_names((0..order).map(name).collect()))
}

pub fn builtin_group(spec: &Builtin, limits: &Limits) -> Result<GroupTable> {
    spec.validate()?;
    match spec.order() {
        Some(o) if o <= limits.order_cap as u128 => {}
        _ => return Err(Error::OrderCapExceeded { cap: limits.order_cap }),
    }
    match spec {
        Builtin::Cyclic(m) => abelian_table(&[*m]),
        Builtin::Abelian(ds) => abelian_table(ds),
        Builtin::Dihedral(m) => {
            let m = *m as usize;
            table_from_fn(
                2 * m,
                |x, y| {
                    let (a, b) = (x % m, x / m);
                    let (c, d) = (y % m, y / m);
                    let rot = if b == 0 { a + c } else { a + m - c };
                    rot % m + m * (b ^ d)
                },
                |x| match (x % m, x / m) {
                    (0, 0) => "1".into(),
                    (a, 0) => format!("r^{a}"),
                    (0, _) => "s".into(),
                    (a, _) => format!("r^{a} s"),
                },
            )
        }
        Builtin::Quaternion8 => {
            // unit index 0..4 = 1, i, j, k; product as (sign flip, unit)
            const UNIT: [[(usize, usize); 4]; 4] = [
                [(0, 0), (0, 1), (0, 2), (0, 3)],
                [(0, 1), (1, 0), (0, 3), (1, 2)],
                [(0, 2), (1, 3), (1, 0), (0, 1)],
                [(0, 3), (0, 2), (1, 1), (1, 0)],
            ];
            const NAMES: [&str; 8] = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"];
            table_from_fn(
                8,
                |x, y| {
                    let (flip, unit) = UNIT[x / 2][y / 2];
                    2 * unit + ((x % 2) ^ (y % 2) ^ flip)
                },
                |x| NAMES[x].into(),
            )
        }
        Builtin::Symmetric(m) => {
            let m = *m as usize;
            let mut gens = Vec::new();
            if m >= 2 {
                gens.push(perm::parse_cycles("(0 1)", m)?);
            }
            if m >= 3 {
                let cycle: Vec<String> = (0..m).map(|i| i.to_string()).collect();
                gens.push(perm::parse_cycles(&format!("({})", cycle.join(" ")), m)?);
            }
            group_from_permutations(m, &gens, limits)
        }
        Builtin::Heisenberg(p) => {
            let p = *p as usize;
            let split = |x: usize| (x / (p * p), (x / p) % p, x % p);
            table_from_fn(
                p * p * p,
                |x, y| {
                    let (a, b, c) = split(x);
                    let (a2, b2, c2) = split(y);
                    ((a + a2) % p) * p * p + ((b + b2) % p) * p + (c + c2 + a * b2) % p
                },
                |x| {
                    let (a, b, c) = split(x);
                    format!("[{a},{b},{c}]")
                },
            )
        }
        Builtin::Affine(q) => affine_table(*q),
    }
}

fn abelian_table(ds: &[u64]) -> Result<GroupTable> {
    let ds: Vec<usize> = ds.iter().map(|&d| d as usize).collect();
    let order: usize = ds.iter().product();
    let coords = |mut x: usize| -> Vec<usize> {
        let mut c = vec![0; ds.len()];
        for i in (0..ds.len()).rev() {
            c[i] = x % ds[i];
            x /= ds[i];
        }
        c
    };
    let encode = |c: &[usize]| c.iter().zip(&ds).fold(0, |acc, (&ci, &d)| acc * d + ci);
    table_from_fn(
        order,
        |x, y| {
            let (cx, cy) = (coords(x), coords(y));
            let sum: Vec<usize> = cx.iter().zip(&cy).zip(&ds).map(|((a, b), d)| (a + b) % d).collect();
            encode(&sum)
        },
        |x| {
            if ds.len() == 1 {
                x.to_string()
            } else {
                let c: Vec<String> = coords(x).iter().map(|v| v.to_string()).collect();
                format!("({})", c.join(","))
            }
        },
    )
}

/// Addition and multiplication tables of `GF(q)`.
pub struct FiniteField {
    pub q: usize,
    pub add: Vec<usize>,
    pub mul: Vec<usize>,
}

impl FiniteField {
    pub fn new(q: u64) -> Option<FiniteField> {
        let (p, d) = arith::prime_power(q)?;
        let (p, d, q) = (p as usize, d as usize, q as usize);
        let digits = |mut x: usize| -> Vec<usize> {
            let mut v = vec![0; d];
            for slot in v.iter_mut() {
                *slot = x % p;
                x /= p;
            }
            v
        };
        let undigits = |v: &[usize]| v.iter().rev().fold(0, |acc, &c| acc * p + c);
        // least monic irreducible of degree d: no monic factor of degree 1..=d/2
        let modulus = (0..q)
            .map(|low| {
                let mut f = digits(low);
                f.push(1);
                f
            })
            .find(|f| d == 1 || !has_small_factor(f, p))?;
        let reduce = |mut prod: Vec<usize>| -> Vec<usize> {
            for top in (d..prod.len()).rev() {
                let c = prod[top];
                if c != 0 {
                    for (i, &fi) in modulus.iter().enumerate() {
                        let idx = top - d + i;
                        prod[idx] = (prod[idx] + p * p - c * fi % p) % p;
                    }
                }
            }
            prod.truncate(d);
            prod
        };
        let mut add = vec![0; q * q];
        let mut mul = vec![0; q * q];
        for x in 0..q {
            for y in 0..q {
                let (a, b) = (digits(x), digits(y));
                let sum: Vec<usize> = a.iter().zip(&b).map(|(u, v)| (u + v) % p).collect();
                add[x * q + y] = undigits(&sum);
                let mut prod = vec![0; 2 * d - 1];
                for i in 0..d {
                    for j in 0..d {
                        prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
                    }
                }
                mul[x * q + y] = undigits(&reduce(prod));
            }
        }
        Some(FiniteField { q, add, mul })
    }
}

/// Whether the monic polynomial `f` (coefficients low to high) over `F_p`
/// has a monic factor of degree between 1 and `deg f / 2`.
fn has_small_factor(f: &[usize], p: usize) -> bool {
    let deg = f.len() - 1;
    for k in 1..=deg / 2 {
        for low in 0..p.pow(k as u32) {
            let mut g = Vec::with_capacity(k + 1);
            let mut x = low;
            for _ in 0..k {
                g.push(x % p);
                x /= p;
            }
            g.push(1);
            if poly_rem_zero(f, &g, p) {
                return true;
            }
        }
    }
    false
}

fn poly_rem_zero(f: &[usize], g: &[usize], p: usize) -> bool {
    let mut r = f.to_vec();
    let dg = g.len() - 1;
    for top in (dg..r.len()).rev() {
        let c = r[top];
        if c != 0 {
            for (i, &gi) in g.iter().enumerate() {
                let idx = top - dg + i;
                r[idx] = (r[idx] + p * p - c * gi % p) % p;
            }
        }
    }
    r[..dg].iter().all(|&c| c == 0)
}

fn affine_table(q: u64) -> Result<GroupTable> {
    let field = FiniteField::new(q).ok_or(Error::UnknownSpec(format!("affine({q})")))?;
    let q = q as usize;
    let split = |x: usize| (x / q + 1, x % q);
    table_from_fn(
        q * (q - 1),
        |x, y| {
            // x -> a x + b, then x -> c x + d: x -> (c a) x + (c b + d)
            let (a, b) = split(x);
            let (c, d) = split(y);
            let a2 = field.mul[c * q + a];
            let b2 = field.add[field.mul[c * q + b] * q + d];
            (a2 - 1) * q + b2
        },
        |x| {
            let (a, b) = split(x);
            format!("x->{a}x+{b}")
        },
    )
}
