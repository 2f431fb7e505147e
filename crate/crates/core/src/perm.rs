//! Permutations of `0..d` stored as image vectors.

use crate::error::{Error, Result};

pub type Perm = Vec<u32>;

pub fn identity(degree: usize) -> Perm {
    (0..degree as u32).collect()
}

pub fn validate(p: &Perm, degree: usize) -> Result<()> {
    if p.len() != degree {
        return Err(Error::InvalidPermutation(format!(
            "expected {degree} images, found {}",
            p.len()
        )));
    }
    let mut seen = vec![false; degree];
    for &x in p {
        let x = x as usize;
        if x >= degree || seen[x] {
            return Err(Error::InvalidPermutation(format!("{p:?} is not a bijection")));
        }
        seen[x] = true;
    }
    Ok(())
}

/// `a` first, then `b`: `compose(a, b)[x] = b[a[x]]`.
pub fn compose(a: &Perm, b: &Perm) -> Perm {
    a.iter().map(|&x| b[x as usize]).collect()
}

pub fn inverse(p: &Perm) -> Perm {
    let mut inv = vec![0; p.len()];
    for (i, &x) in p.iter().enumerate() {
        inv[x as usize] = i as u32;
    }
    inv
}

/// Parses a product of disjoint or overlapping cycles such as `(0 1)(2 3 4)`.
/// Cycles are applied left to right. `()` or an empty string is the identity.
pub fn parse_cycles(text: &str, degree: usize) -> Result<Perm> {
    let mut result = identity(degree);
    let mut rest = text.trim();
    while !rest.is_empty() {
        let body = rest
            .strip_prefix('(')
            .ok_or_else(|| Error::InvalidPermutation(format!("expected '(' in {text:?}")))?;
        let close = body
            .find(')')
            .ok_or_else(|| Error::InvalidPermutation(format!("unclosed cycle in {text:?}")))?;
        let points = body[..close]
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(|s| {
                s.parse::<usize>()
                    .map_err(|_| Error::InvalidPermutation(format!("bad point {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut cycle = identity(degree);
        for (i, &p) in points.iter().enumerate() {
            if p >= degree {
                return Err(Error::InvalidPermutation(format!(
                    "point {p} outside degree {degree}"
                )));
            }
            if points[..i].contains(&p) {
                return Err(Error::InvalidPermutation(format!("repeated point {p}")));
            }
            cycle[p] = points[(i + 1) % points.len()] as u32;
        }
        result = compose(&result, &cycle);
        rest = body[close + 1..].trim_start();
    }
    Ok(result)
}

pub fn cycle_string(p: &Perm) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] as usize == start {
            continue;
        }
        out.push('(');
        let mut x = start;
        let mut first = true;
        while !seen[x] {
            seen[x] = true;
            if !first {
                out.push(' ');
            }
            out.push_str(&x.to_string());
            first = false;
            x = p[x] as usize;
        }
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}
