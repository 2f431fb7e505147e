//! Unit groups of small residue rings and the unit map `R^x -> R_C^x` with
//! `R_C = R / (1 - alpha) R`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::arith;
use crate::error::{Error, Result};
use crate::poly::{cyclotomic_poly, resultant, IntPoly};

/// Largest ring enumerated by [`finite_quotient_surjectivity`].
pub const FINITE_RING_CAP: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UnitSubgroup {
    pub modulus: u64,
    pub generators: Vec<u64>,
    pub members: Vec<u64>,
}

impl UnitSubgroup {
    pub fn size(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, x: u64) -> bool {
        self.members.binary_search(&(x % self.modulus.max(1))).is_ok()
    }
}

fn residue(x: i64, m: u64) -> u64 {
    x.rem_euclid(m as i64) as u64
}

/// Multiplicative closure of `gens` in `(Z/m)^x`. For `m = 1` the group is
/// `{0}`.
pub fn unit_subgroup_mod(m: u64, gens: &[i64]) -> Result<UnitSubgroup> {
    assert!(m >= 1, "modulus must be positive");
    let mut generators = Vec::with_capacity(gens.len());
    for &g in gens {
        let r = residue(g, m);
        if arith::gcd(r, m) != 1 {
            return Err(Error::NotCoprime { value: g, modulus: m as i64 });
        }
        generators.push(r);
    }
    let one = 1 % m;
    let mut seen = vec![false; m as usize];
    seen[one as usize] = true;
    let mut members = vec![one];
    let mut cursor = 0;
    while cursor < members.len() {
        let x = members[cursor];
        cursor += 1;
        for &g in &generators {
            let y = (x as u128 * g as u128 % m as u128) as u64;
            if !seen[y as usize] {
                seen[y as usize] = true;
                members.push(y);
            }
        }
    }
    members.sort_unstable();
    Ok(UnitSubgroup { modulus: m, generators, members })
}

/// True iff `(Z/m)^x = {+-1}`.
pub fn trivial_unit_target(m: u64) -> bool {
    matches!(m, 0 | 1 | 2 | 3 | 4 | 6)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Surjective,
    NotSurjective,
}

#[derive(Debug, Clone, Serialize)]
pub struct CoessentialityCertificate {
    pub n: u64,
    pub modulus: u64,
    pub verdict: Verdict,
    pub surjective: bool,
    /// `(Z/m)^x` is `{+-1}`, so `-1` alone covers it.
    pub trivial_target: bool,
    pub image: UnitSubgroup,
    pub unit_count: u64,
    /// Least unit mod `m` outside the image.
    pub witness: Option<u64>,
    /// A non-surjective unit map means the abelianization is not
    /// coessential, which forces pairs of infinite recalcitrance.
    pub infinite_recalcitrance: bool,
    pub prime_power: Option<(u64, u32)>,
    /// `n = p^d` with `n >= 11`, where non-surjectivity is predicted.
    pub predicted_range: bool,
    /// In that range, but enumeration found the map surjective.
    pub diverges_from_prediction: bool,
}

/// Image of `Z[1/n]^x = <-1, p | n>` in `(Z/(n-1))^x`.
pub fn bs_coessential(n: u64) -> CoessentialityCertificate {
    assert!(n >= 2, "bs_coessential needs n >= 2");
    let m = n - 1;
    let mut gens = vec![-1i64];
    gens.extend(arith::factorize(n).into_iter().map(|(p, _)| p as i64));
    // every prime divisor of n is coprime to n - 1
    let image = unit_subgroup_mod(m, &gens).expect("generators are units mod n - 1");
    let unit_count = arith::totient(m);
    let surjective = image.size() as u64 == unit_count;
    let witness = (!surjective).then(|| {
        (1..m)
            .find(|&u| arith::gcd(u, m) == 1 && !image.contains(u))
            .expect("a unit outside a proper subgroup")
    });
    let trivial_target = trivial_unit_target(m);
    assert!(surjective || !trivial_target);
    let verdict = if surjective {
        Verdict::Surjective
    } else {
        Verdict::NotSurjective
    };
    let prime_power = arith::prime_power(n);
    let predicted_range = prime_power.is_some() && n >= 11;
    CoessentialityCertificate {
        n,
        modulus: m,
        verdict,
        surjective,
        trivial_target,
        image,
        unit_count,
        witness,
        infinite_recalcitrance: !surjective,
        prime_power,
        predicted_range,
        diverges_from_prediction: predicted_range && surjective,
    }
}

pub fn bs_scan(range: std::ops::RangeInclusive<u64>) -> Vec<CoessentialityCertificate> {
    let ns: Vec<u64> = range.filter(|&n| n >= 2).collect();
    ns.into_par_iter().map(bs_coessential).collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct XiReport {
    pub n: u64,
    pub a: i64,
    /// `xi_a` reduced mod `Phi_n`, constant term first.
    pub xi: IntPoly,
    pub resultant: String,
    pub is_unit: bool,
    /// `Phi_n(1)`
    pub modulus: u64,
    /// `xi_a(1) mod Phi_n(1)`
    pub residue: u64,
    pub residue_matches: bool,
}

/// `xi_a = 1 + x + ... + x^(a-1)` in `Z[x]/(Phi_n)`, with `a` taken in `[1, n)`.
pub fn xi_element(n: u64, a: i64) -> IntPoly {
    let a = residue(a, n).max(1) as usize;
    let coeffs = vec![BigInt::one(); a];
    IntPoly::new(coeffs).rem_monic(&cyclotomic_poly(n))
}

pub fn xi_unit_check(n: u64, a: i64) -> Result<XiReport> {
    let (p, _) = arith::prime_power(n).ok_or(Error::NotPrimePower(n))?;
    if arith::gcd(residue(a, n), n) != 1 {
        return Err(Error::NotCoprime { value: a, modulus: n as i64 });
    }
    let phi = cyclotomic_poly(n);
    let xi = xi_element(n, a);
    let res = resultant(&phi, &xi);
    let is_unit = res == BigInt::one() || res == BigInt::from(-1);
    let value = xi.eval(&BigInt::one()).mod_floor(&BigInt::from(p)).to_u64().unwrap();
    Ok(XiReport {
        n,
        a,
        resultant: res.to_string(),
        is_unit,
        modulus: p,
        residue: value,
        residue_matches: value == residue(a, p),
        xi,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LaurentLift {
    pub modulus: u64,
    pub constant: u64,
    pub inverse: u64,
    /// The constant polynomial evaluated at `X = 1`, reduced.
    pub value_at_one: u64,
}

pub fn laurent_unit_lift(m: u64, u: i64) -> Result<LaurentLift> {
    assert!(m >= 2, "laurent_unit_lift needs m >= 2");
    let inverse = arith::mod_inverse(u, m as i64).ok_or(Error::NotCoprime { value: u, modulus: m as i64 })?;
    let constant = residue(u, m);
    let poly = IntPoly::constant(constant);
    let value_at_one = poly.eval(&BigInt::one()).to_u64().unwrap() % m;
    assert_eq!(value_at_one, constant);
    Ok(LaurentLift { modulus: m, constant, inverse: inverse as u64, value_at_one })
}

/// `(Z/m)[x]/(f)` for monic `f` of degree `d >= 1`. Elements are coefficient
/// vectors of length `d`, indexed base `m` with the constant term least
/// significant.
#[derive(Debug, Clone)]
pub struct FiniteRing {
    pub modulus: u64,
    /// Monic modulus polynomial, constant term first, length `d + 1`.
    pub f: Vec<u64>,
    pub size: u64,
    primes: Vec<u64>,
}

impl FiniteRing {
    pub fn new(m: u64, f: &[i64]) -> Result<Self> {
        assert!(m >= 2, "ring modulus must be at least 2");
        let mut f: Vec<u64> = f.iter().map(|&c| residue(c, m)).collect();
        while f.last() == Some(&0) {
            f.pop();
        }
        if f.len() < 2 {
            return Err(Error::RangeError("f must have positive degree mod m".into()));
        }
        let lc = *f.last().unwrap();
        let inv = arith::mod_inverse(lc as i64, m as i64)
            .ok_or_else(|| Error::RangeError(format!("leading coefficient {lc} of f is not a unit mod {m}")))?;
        for c in f.iter_mut() {
            *c = (*c as u128 * inv as u128 % m as u128) as u64;
        }
        let d = f.len() - 1;
        let size = (m as u128).checked_pow(d as u32).unwrap_or(u128::MAX);
        if size > FINITE_RING_CAP as u128 {
            return Err(Error::SizeCapExceeded { size, cap: FINITE_RING_CAP });
        }
        let primes = arith::factorize(m).into_iter().map(|(p, _)| p).collect();
        Ok(FiniteRing { modulus: m, f, size: size as u64, primes })
    }

    pub fn degree(&self) -> usize {
        self.f.len() - 1
    }

    pub fn decode(&self, mut index: u64) -> Vec<u64> {
        (0..self.degree())
            .map(|_| {
                let c = index % self.modulus;
                index /= self.modulus;
                c
            })
            .collect()
    }

    pub fn encode(&self, v: &[u64]) -> u64 {
        v.iter().rev().fold(0, |acc, &c| acc * self.modulus + c)
    }

    /// Reduction of an integer polynomial into the ring.
    pub fn reduce(&self, coeffs: &[i64]) -> Vec<u64> {
        let v: Vec<u64> = coeffs.iter().map(|&c| residue(c, self.modulus)).collect();
        self.reduce_residues(v)
    }

    fn reduce_residues(&self, mut v: Vec<u64>) -> Vec<u64> {
        let (m, d) = (self.modulus as u128, self.degree());
        for k in (d..v.len()).rev() {
            let c = v[k] as u128;
            if c == 0 {
                continue;
            }
            // x^k = x^(k-d) x^d and x^d = -(f_0 + ... + f_(d-1) x^(d-1))
            for j in 0..d {
                let t = c * self.f[j] as u128 % m;
                v[k - d + j] = ((v[k - d + j] as u128 + m - t) % m) as u64;
            }
            v[k] = 0;
        }
        v.resize(d, 0);
        v
    }

    pub fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let m = self.modulus as u128;
        let mut out = vec![0u64; a.len() + b.len()];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = ((out[i + j] as u128 + x as u128 * y as u128) % m) as u64;
            }
        }
        self.reduce_residues(out)
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter().zip(b).map(|(&x, &y)| (x + y) % self.modulus).collect()
    }

    /// Units are exactly the elements coprime to `f` modulo every prime
    /// dividing `m`: the ring splits over the prime powers of `m`, and `p`
    /// is nilpotent in the `p`-part.
    pub fn is_unit(&self, a: &[u64]) -> bool {
        self.is_unit_modulo(a, &self.f)
    }

    /// Unit test in `(Z/m)[x]/(f, g)` for any `g`.
    fn is_unit_modulo(&self, a: &[u64], g: &[u64]) -> bool {
        self.primes.iter().all(|&p| {
            let ideal = fp_gcd(&fp_reduce(&self.f, p), &fp_reduce(g, p), p);
            let common = fp_gcd(&fp_reduce(a, p), &ideal, p);
            common.len() == 1
        })
    }
}

fn fp_reduce(v: &[u64], p: u64) -> Vec<u64> {
    let mut r: Vec<u64> = v.iter().map(|&c| c % p).collect();
    while r.last() == Some(&0) {
        r.pop();
    }
    r
}

/// Remainder over `F_p`; both inputs trimmed, `b` nonzero.
fn fp_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    let inv = arith::mod_pow(*b.last().unwrap(), p - 2, p);
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = *r.last().unwrap() * inv % p;
        for (j, &bj) in b.iter().enumerate() {
            r[shift + j] = (r[shift + j] + p - c * bj % p) % p;
        }
        while r.last() == Some(&0) {
            r.pop();
        }
    }
    r
}

/// Greatest common divisor over `F_p`, up to a scalar; the zero polynomial
/// is the empty vector.
fn fp_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    while !b.is_empty() {
        let r = fp_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

#[derive(Debug, Clone, Serialize)]
pub struct QuotientCertificate {
    pub modulus: u64,
    /// Monic `f`, constant term first.
    pub f: Vec<u64>,
    pub alpha: Vec<u64>,
    pub ring_size: u64,
    pub unit_count: u64,
    pub ideal_size: u64,
    pub quotient_size: u64,
    pub quotient_unit_count: u64,
    pub image_size: u64,
    pub surjective: bool,
    /// Least representatives of the image classes, when not surjective.
    pub image: Option<Vec<Vec<u64>>>,
}

/// Enumerates `R = (Z/m)[x]/(f)`, its units, the ideal `(1 - alpha) R`, the
/// quotient `R_C` and the classes of units of `R` in it.
pub fn finite_quotient_surjectivity(m: u64, f: &[i64], alpha: &[i64]) -> Result<QuotientCertificate> {
    let ring = FiniteRing::new(m, f)?;
    let alpha = ring.reduce(alpha);
    if !ring.is_unit(&alpha) {
        return Err(Error::AlphaNotUnit);
    }
    let d = ring.degree();
    let mut one = vec![0u64; d];
    one[0] = 1 % m;
    let one_minus_alpha: Vec<u64> = one
        .iter()
        .zip(&alpha)
        .map(|(&a, &b)| (a + m - b) % m)
        .collect();
    let size = ring.size;
    let ideal: BTreeSet<u64> = (0..size)
        .into_par_iter()
        .map(|r| ring.encode(&ring.mul(&one_minus_alpha, &ring.decode(r))))
        .collect::<Vec<_>>()
        .into_iter()
        .collect();
    let ideal: Vec<Vec<u64>> = ideal.into_iter().map(|i| ring.decode(i)).collect();

    // classes numbered by least member
    let mut class_of = vec![u32::MAX; size as usize];
    let mut reps: Vec<u64> = Vec::new();
    for r in 0..size {
        if class_of[r as usize] != u32::MAX {
            continue;
        }
        let id = reps.len() as u32;
        reps.push(r);
        let rv = ring.decode(r);
        for i in &ideal {
            class_of[ring.encode(&ring.add(&rv, i)) as usize] = id;
        }
    }
    let units: Vec<u64> = (0..size)
        .into_par_iter()
        .filter(|&r| ring.is_unit(&ring.decode(r)))
        .collect();
    let quotient_units: Vec<u32> = (0..reps.len() as u32)
        .into_par_iter()
        .filter(|&c| ring.is_unit_modulo(&ring.decode(reps[c as usize]), &one_minus_alpha))
        .collect();
    let image: BTreeSet<u32> = units.iter().map(|&u| class_of[u as usize]).collect();
    let target: BTreeSet<u32> = quotient_units.iter().copied().collect();
    assert!(image.is_subset(&target), "units map to units");
    let surjective = image == target;
    Ok(QuotientCertificate {
        modulus: m,
        f: ring.f.clone(),
        alpha,
        ring_size: size,
        unit_count: units.len() as u64,
        ideal_size: ideal.len() as u64,
        quotient_size: reps.len() as u64,
        quotient_unit_count: target.len() as u64,
        image_size: image.len() as u64,
        surjective,
        image: (!surjective).then(|| image.iter().map(|&c| ring.decode(reps[c as usize])).collect()),
    })
}

/// `a * b` for integer polynomials in `Z[x]/(Phi_n)`.
pub fn cyclotomic_mul(n: u64, a: &IntPoly, b: &IntPoly) -> IntPoly {
    a.mul(b).rem_monic(&cyclotomic_poly(n))
}

pub fn is_zero_mod_cyclotomic(n: u64, a: &IntPoly) -> bool {
    a.rem_monic(&cyclotomic_poly(n)).coeffs().iter().all(Zero::is_zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn unit_subgroup_examples() {
        assert_eq!(unit_subgroup_mod(10, &[-1, 11]).unwrap().members, vec![1, 9]);
        assert_eq!(unit_subgroup_mod(7, &[1]).unwrap().members, vec![1]);
        assert_eq!(unit_subgroup_mod(5, &[2]).unwrap().members, vec![1, 2, 3, 4]);
        assert_eq!(unit_subgroup_mod(1, &[-1, 2]).unwrap().members, vec![0]);
        assert!(matches!(unit_subgroup_mod(10, &[4]), Err(Error::NotCoprime { value: 4, modulus: 10 })));
    }

    #[test]
    fn bs_examples() {
        let c = bs_coessential(2);
        assert_eq!(c.verdict, Verdict::Surjective);
        assert!(c.trivial_target);
        let c = bs_coessential(11);
        assert_eq!(c.verdict, Verdict::NotSurjective);
        assert_eq!(c.image.members, vec![1, 9]);
        assert_eq!(c.witness, Some(3));
        assert!(c.infinite_recalcitrance);
        assert_eq!(bs_coessential(6).verdict, Verdict::Surjective);
    }

    #[test]
    fn sixteen_is_surjective_by_enumeration() {
        let c = bs_coessential(16);
        assert!(c.surjective);
        assert!(c.predicted_range);
        assert!(c.diverges_from_prediction);
    }

    #[test]
    fn trivial_targets() {
        assert!(trivial_unit_target(6));
        assert!(!trivial_unit_target(5));
        assert!(trivial_unit_target(0));
        for n in 2..200 {
            if trivial_unit_target(n - 1) {
                assert_eq!(bs_coessential(n).verdict, Verdict::Surjective);
            }
        }
    }

    #[test]
    fn prime_power_image_is_generated_by_minus_one_and_p() {
        for n in 3..=10_000u64 {
            let Some((p, d)) = arith::prime_power(n) else { continue };
            let m = n - 1;
            let c = bs_coessential(n);
            assert_eq!(c.image, unit_subgroup_mod(m, &[-1, p as i64]).unwrap());
            assert_eq!(d as u64 % multiplicative_order(p, m), 0);
        }
    }

    fn multiplicative_order(a: u64, m: u64) -> u64 {
        (1..=m).find(|&k| arith::mod_pow(a, k, m) == 1 % m).unwrap()
    }

    #[test]
    fn xi_examples() {
        let r = xi_unit_check(5, 2).unwrap();
        assert!(r.is_unit);
        assert_eq!(r.residue, 2);
        assert_eq!(r.xi, IntPoly::from_i64(&[1, 1]));
        let r = xi_unit_check(7, 1).unwrap();
        assert_eq!(r.xi, IntPoly::from_i64(&[1]));
        assert!(r.is_unit);
        assert_eq!(r.residue, 1);
        let r = xi_unit_check(9, 2).unwrap();
        assert!(r.is_unit);
        assert_eq!((r.residue, r.modulus), (2, 3));
        assert!(matches!(xi_unit_check(12, 5), Err(Error::NotPrimePower(12))));
        assert!(matches!(xi_unit_check(9, 3), Err(Error::NotCoprime { .. })));
    }

    #[test]
    fn xi_times_one_minus_x_is_one_minus_x_to_the_a() {
        for n in [4u64, 5, 8, 9, 16, 25, 27] {
            for a in (1..n as i64).filter(|&a| arith::gcd(a as u64, n) == 1) {
                let lhs = cyclotomic_mul(n, &xi_element(n, a), &IntPoly::from_i64(&[1, -1]));
                let rhs = IntPoly::constant(1).sub(&IntPoly::monomial(a as usize));
                assert!(is_zero_mod_cyclotomic(n, &lhs.sub(&rhs)), "n = {n}, a = {a}");
            }
        }
    }

    #[test]
    fn xi_resultant_matches_multiplication_determinant() {
        use crate::matrix::IntMatrix;
        for n in [5u64, 7, 8, 9, 16] {
            let phi = cyclotomic_poly(n);
            let deg = phi.degree().unwrap();
            for a in (2..n as i64).filter(|&a| arith::gcd(a as u64, n) == 1) {
                let xi = xi_element(n, a);
                // norm of xi = det of multiplication by xi on the power basis
                let mut m = IntMatrix::zeros(deg, deg);
                for j in 0..deg {
                    let col = xi.mul(&IntPoly::monomial(j)).rem_monic(&phi);
                    for (i, c) in col.coeffs().iter().enumerate() {
                        m[(i, j)] = c.clone();
                    }
                }
                let r = xi_unit_check(n, a).unwrap();
                assert_eq!(r.resultant, m.det().to_string(), "n = {n}, a = {a}");
            }
        }
    }

    #[test]
    fn laurent_examples() {
        assert_eq!(laurent_unit_lift(5, 2).unwrap().inverse, 3);
        assert_eq!(laurent_unit_lift(9, 1).unwrap().constant, 1);
        let l = laurent_unit_lift(10, 7).unwrap();
        assert_eq!((l.constant, l.inverse, l.value_at_one), (7, 3, 7));
        assert!(laurent_unit_lift(10, 4).is_err());
    }

    #[test]
    fn finite_quotient_examples() {
        let c = finite_quotient_surjectivity(5, &[-2, 1], &[0, 1]).unwrap();
        assert!(c.surjective);
        assert_eq!(c.ring_size, 5);
        let c = finite_quotient_surjectivity(2, &[1, 1, 1], &[0, 1]).unwrap();
        assert!(c.surjective);
        assert_eq!(c.unit_count, 3);
        let c = finite_quotient_surjectivity(6, &[-1, 1], &[0, 1]).unwrap();
        assert!(c.surjective);
        assert_eq!(c.quotient_size, 6);
        assert!(matches!(
            finite_quotient_surjectivity(4, &[0, 0, 1], &[0, 1]),
            Err(Error::AlphaNotUnit)
        ));
        assert!(matches!(
            finite_quotient_surjectivity(10, &[1, 0, 0, 0, 0, 0, 0, 1], &[0, 1]),
            Err(Error::SizeCapExceeded { .. })
        ));
    }

    /// Units by searching for inverses.
    fn brute_units(ring: &FiniteRing) -> Vec<u64> {
        let mut one = vec![0u64; ring.degree()];
        one[0] = 1;
        let one = ring.encode(&one);
        (0..ring.size)
            .filter(|&a| (0..ring.size).any(|b| ring.encode(&ring.mul(&ring.decode(a), &ring.decode(b))) == one))
            .collect()
    }

    #[test]
    fn unit_criterion_matches_inverse_search() {
        for (m, f) in [(12u64, vec![1i64, 1]), (4, vec![1, 1, 1]), (6, vec![5, 0, 1]), (8, vec![2, 1, 1]), (9, vec![0, 0, 1])] {
            let ring = FiniteRing::new(m, &f).unwrap();
            let fast: Vec<u64> = (0..ring.size).filter(|&a| ring.is_unit(&ring.decode(a))).collect();
            assert_eq!(fast, brute_units(&ring), "m = {m}, f = {f:?}");
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(256))]
        #[test]
        fn unit_subgroup_order_divides_totient(m in 1u64..=10_000, seeds in proptest::collection::vec(1u64..10_000, 1..4)) {
            let gens: Vec<i64> = seeds
                .iter()
                .map(|&s| (0..m).map(|k| (s + k) % m.max(1)).find(|&r| arith::gcd(r, m) == 1).unwrap_or(0) as i64)
                .collect();
            let h = unit_subgroup_mod(m, &gens).unwrap();
            prop_assert_eq!(arith::totient(m) % h.size() as u64, 0);
            for &x in &h.members {
                prop_assert_eq!(arith::gcd(x, m), 1);
                for &g in &h.generators {
                    prop_assert!(h.contains(x * g % m));
                }
            }
        }

        #[test]
        fn finite_quotients_are_surjective(
            m in 2u64..=12,
            f in proptest::collection::vec(-6i64..=6, 1..=3),
            alpha in proptest::collection::vec(-6i64..=6, 1..=3),
        ) {
            let mut f = f;
            f.push(1);
            match finite_quotient_surjectivity(m, &f, &alpha) {
                Ok(c) => prop_assert!(c.surjective, "{:?}", c),
                Err(Error::AlphaNotUnit) => {}
                Err(e) => prop_assert!(false, "{}", e),
            }
        }
    }
}
