//! Dense integer polynomials, cyclotomic polynomials and resultants.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::arith;
use crate::matrix::IntMatrix;

/// Coefficients from the constant term upwards, with no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly(Vec<BigInt>);

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly(coeffs)
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly(Vec::new())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        IntPoly::new(vec![c.into()])
    }

    /// `x^k`
    pub fn monomial(k: usize) -> Self {
        let mut c = vec![BigInt::zero(); k + 1];
        c[k] = BigInt::one();
        IntPoly(c)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn leading(&self) -> BigInt {
        self.0.last().cloned().unwrap_or_default()
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.0.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let n = self.0.len().max(other.0.len());
        IntPoly::new(
            (0..n)
                .map(|i| {
                    self.0.get(i).cloned().unwrap_or_default() + other.0.get(i).cloned().unwrap_or_default()
                })
                .collect(),
        )
    }

    pub fn sub(&self, other: &IntPoly) -> IntPoly {
        self.add(&other.scale(&BigInt::from(-1)))
    }

    pub fn scale(&self, k: &BigInt) -> IntPoly {
        IntPoly::new(self.0.iter().map(|c| c * k).collect())
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    /// Quotient and remainder by a monic divisor.
    pub fn div_rem_monic(&self, divisor: &IntPoly) -> (IntPoly, IntPoly) {
        assert!(divisor.leading().is_one(), "divisor must be monic");
        let d = divisor.degree().unwrap();
        let mut rem = self.0.clone();
        if rem.len() <= d {
            return (IntPoly::zero(), self.clone());
        }
        let mut quot = vec![BigInt::zero(); rem.len() - d];
        for k in (0..quot.len()).rev() {
            let c = rem[k + d].clone();
            if c.is_zero() {
                continue;
            }
            for (j, b) in divisor.0.iter().enumerate() {
                rem[k + j] -= &c * b;
            }
            quot[k] = c;
        }
        (IntPoly::new(quot), IntPoly::new(rem))
    }

    pub fn rem_monic(&self, divisor: &IntPoly) -> IntPoly {
        self.div_rem_monic(divisor).1
    }

    /// Greatest common divisor of the coefficients, non-negative.
    pub fn content(&self) -> BigInt {
        self.0.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    fn div_exact(&self, k: &BigInt) -> IntPoly {
        IntPoly::new(
            self.0
                .iter()
                .map(|c| {
                    debug_assert!((c % k).is_zero());
                    c / k
                })
                .collect(),
        )
    }

    /// `lc(b)^(deg a - deg b + 1) * a mod b`.
    pub fn pseudo_rem(&self, b: &IntPoly) -> IntPoly {
        let db = b.degree().expect("pseudo-division by zero");
        let lc = b.leading();
        let mut r = self.clone();
        let Some(da) = r.degree() else { return r };
        if da < db {
            return r;
        }
        let mut e = da - db + 1;
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let shift = IntPoly::monomial(dr - db).scale(&r.leading());
            r = r.scale(&lc).sub(&shift.mul(b));
            e -= 1;
        }
        r.scale(&num_traits::pow(lc, e))
    }
}

impl Serialize for IntPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.0.iter().map(|c| c.to_string()))
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match (k, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => f.write_str("x")?,
                (1, false) => write!(f, "{a}x")?,
                (_, true) => write!(f, "x^{k}")?,
                (_, false) => write!(f, "{a}x^{k}")?,
            }
        }
        Ok(())
    }
}

fn cyclotomic_memo(n: u64, memo: &mut HashMap<u64, IntPoly>) -> IntPoly {
    if let Some(p) = memo.get(&n) {
        return p.clone();
    }
    // x^n - 1 = prod over d | n of Phi_d
    let mut p = IntPoly::monomial(n as usize).sub(&IntPoly::constant(1));
    for d in 1..n {
        if n.is_multiple_of(d) {
            let phi_d = cyclotomic_memo(d, memo);
            let (q, r) = p.div_rem_monic(&phi_d);
            debug_assert!(r.is_zero());
            p = q;
        }
    }
    memo.insert(n, p.clone());
    p
}

pub fn cyclotomic_poly(n: u64) -> IntPoly {
    assert!(n >= 1, "cyclotomic index must be positive");
    cyclotomic_memo(n, &mut HashMap::new())
}

/// `Phi_n(1)`: the prime `p` when `n` is a power of `p`, otherwise 1.
pub fn phi_at_1(n: u64) -> u64 {
    assert!(n >= 2, "phi_at_1 needs n >= 2");
    let v = cyclotomic_poly(n).eval(&BigInt::one());
    let expected = arith::prime_power(n).map_or(1, |(p, _)| p);
    assert_eq!(v, BigInt::from(expected), "Phi_{n}(1)");
    expected
}

/// Resultant by the subresultant pseudo-remainder sequence.
pub fn resultant(a: &IntPoly, b: &IntPoly) -> BigInt {
    let (Some(_), Some(_)) = (a.degree(), b.degree()) else {
        return BigInt::zero();
    };
    let (mut a, mut b) = (a.clone(), b.clone());
    let mut sign = BigInt::one();
    if a.degree() < b.degree() {
        if a.degree().unwrap() % 2 == 1 && b.degree().unwrap() % 2 == 1 {
            sign = -sign;
        }
        std::mem::swap(&mut a, &mut b);
    }
    let (ca, cb) = (a.content(), b.content());
    a = a.div_exact(&ca);
    b = b.div_exact(&cb);
    let t = num_traits::pow(ca, b.degree().unwrap()) * num_traits::pow(cb, a.degree().unwrap());
    let mut g = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let (da, db) = (a.degree().unwrap(), b.degree().unwrap());
        if db == 0 {
            // h^(1 - da) * lc(b)^da
            let lb = b.leading();
            let value = if da == 0 {
                BigInt::one()
            } else {
                num_traits::pow(lb, da) / num_traits::pow(h, da - 1)
            };
            return sign * t * value;
        }
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            sign = -sign;
        }
        let r = a.pseudo_rem(&b);
        if r.is_zero() {
            return BigInt::zero();
        }
        a = b;
        b = r.div_exact(&(&g * num_traits::pow(h.clone(), delta)));
        g = a.leading();
        h = if delta == 0 {
            h
        } else {
            num_traits::pow(g.clone(), delta) / num_traits::pow(h, delta - 1)
        };
    }
}

/// Sylvester matrix of `a` and `b`, whose determinant is the resultant.
pub fn sylvester_matrix(a: &IntPoly, b: &IntPoly) -> IntMatrix {
    let (m, n) = (a.degree().unwrap(), b.degree().unwrap());
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for (p, shifts) in [(a, n), (b, m)] {
        for s in 0..shifts {
            let mut row = vec![BigInt::zero(); size];
            for (k, c) in p.coeffs().iter().enumerate() {
                row[s + (p.degree().unwrap() - k)] = c.clone();
            }
            rows.push(row);
        }
    }
    let mut out = IntMatrix::zeros(size, size);
    for (i, row) in rows.into_iter().enumerate() {
        for (j, v) in row.into_iter().enumerate() {
            out[(i, j)] = v;
        }
    }
    out
}
