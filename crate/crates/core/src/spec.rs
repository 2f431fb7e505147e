//! Text descriptions of groups.
//!
//! ```text
//! perm d=5: (0 1)(2 3), (0 1 2 3 4)
//! builtin: dihedral(6)
//! abelian: 2,4
//! wreath: 2,3
//! ```
//!
//! Cycles inside one generator are applied left to right and `()` is the
//! identity. Whitespace and newlines are free between tokens and `#` starts a
//! comment running to the end of the line. Builtin names are `cyclic(m)`,
//! `abelian(d1,...)`, `dihedral(m)`, `quaternion8`, `symmetric(m)`,
//! `heisenberg(p)` and `affine(q)`.

use std::fmt;

use crate::builtin::{builtin_group, Builtin};
use crate::error::{Error, Result};
use crate::group::{group_from_permutations, GroupTable};
use crate::limits::Limits;
use crate::perm::{self, Perm};
use crate::wreath::{wreath_cyclic, WreathSpec};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    Perm { degree: usize, generators: Vec<Perm> },
    Builtin(Builtin),
    Wreath(WreathSpec),
}

impl GroupSpec {
    pub fn build(&self, limits: &Limits) -> Result<GroupTable> {
        match self {
            GroupSpec::Perm { degree, generators } => group_from_permutations(*degree, generators, limits),
            GroupSpec::Builtin(b) => builtin_group(b, limits),
            GroupSpec::Wreath(w) => wreath_cyclic(w, limits),
        }
    }
}

/// Normalized spelling, equal for specs that differ only in layout.
impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |v: &[u64]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        match self {
            GroupSpec::Perm { degree, generators } => {
                let gens: Vec<String> = generators.iter().map(perm::cycle_string).collect();
                write!(f, "perm d={degree}: {}", gens.join(", "))
            }
            GroupSpec::Builtin(Builtin::Abelian(ds)) => write!(f, "abelian: {}", list(ds)),
            GroupSpec::Builtin(b) => write!(f, "builtin: {}", b.describe()),
            GroupSpec::Wreath(w) => write!(f, "wreath: {}", list(&w.orders)),
        }
    }
}

pub fn parse_group_spec(text: &str, limits: &Limits) -> Result<GroupTable> {
    parse_spec(text)?.build(limits)
}

pub fn parse_spec(text: &str) -> Result<GroupSpec> {
    let mut p = Parser::new(text);
    let spec = p.spec()?;
    p.skip_ws();
    if p.peek().is_some() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(spec)
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn new(text: &str) -> Self {
        Parser { chars: text.chars().collect(), pos: 0 }
    }

    fn location(&self, pos: usize) -> (usize, usize) {
        let mut line = 1;
        let mut column = 1;
        for &c in &self.chars[..pos.min(self.chars.len())] {
            if c == '\n' {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
        }
        (line, column)
    }

    fn error_at(&self, pos: usize, message: impl Into<String>) -> Error {
        let (line, column) = self.location(pos);
        Error::Parse { line, column, message: message.into() }
    }

    fn error(&self, message: impl Into<String>) -> Error {
        self.error_at(self.pos, message)
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c == '#' {
                while self.peek().is_some_and(|c| c != '\n') {
                    self.pos += 1;
                }
            } else if c.is_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn expect(&mut self, want: char) -> Result<()> {
        self.skip_ws();
        match self.peek() {
            Some(c) if c == want => {
                self.pos += 1;
                Ok(())
            }
            Some(c) => Err(self.error(format!("expected `{want}`, found `{c}`"))),
            None => Err(self.error(format!("expected `{want}`, found end of input"))),
        }
    }

    fn eat(&mut self, want: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(want) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn word(&mut self) -> Result<(usize, String)> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_alphanumeric() || c == '_') {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a name"));
        }
        Ok((start, self.chars[start..self.pos].iter().collect()))
    }

    fn number(&mut self) -> Result<(usize, u64)> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse()
            .map(|v| (start, v))
            .map_err(|_| self.error_at(start, format!("number `{s}` is too large")))
    }

    fn number_list(&mut self) -> Result<Vec<u64>> {
        let mut out = vec![self.number()?.1];
        while self.eat(',') {
            out.push(self.number()?.1);
        }
        Ok(out)
    }

    fn spec(&mut self) -> Result<GroupSpec> {
        let (start, kind) = self.word()?;
        match kind.as_str() {
            "perm" => self.perm(),
            "builtin" => {
                self.expect(':')?;
                self.builtin()
            }
            "abelian" => {
                self.expect(':')?;
                let at = self.pos;
                let ds = self.number_list()?;
                if ds.contains(&0) {
                    return Err(self.error_at(at, "abelian factors must be positive"));
                }
                Ok(GroupSpec::Builtin(Builtin::Abelian(ds)))
            }
            "wreath" => {
                self.expect(':')?;
                self.skip_ws();
                let at = self.pos;
                let orders = self.number_list()?;
                WreathSpec::new(orders)
                    .map(GroupSpec::Wreath)
                    .map_err(|e| self.error_at(at, e.to_string()))
            }
            other => Err(self.error_at(
                start,
                format!("unknown spec kind `{other}` (expected perm, builtin, abelian or wreath)"),
            )),
        }
    }

    fn perm(&mut self) -> Result<GroupSpec> {
        let (at, key) = self.word()?;
        if key != "d" {
            return Err(self.error_at(at, "expected `d=<degree>`"));
        }
        self.expect('=')?;
        let (_, degree) = self.number()?;
        let degree = degree as usize;
        self.expect(':')?;
        let mut generators = vec![self.generator(degree)?];
        while self.eat(',') {
            generators.push(self.generator(degree)?);
        }
        Ok(GroupSpec::Perm { degree, generators })
    }

    fn generator(&mut self, degree: usize) -> Result<Perm> {
        self.skip_ws();
        if self.peek() != Some('(') {
            return Err(self.error("expected a cycle `(...)`"));
        }
        let mut acc = perm::identity(degree);
        while self.eat('(') {
            let mut cycle: Vec<u32> = Vec::new();
            loop {
                self.skip_ws();
                if self.peek() == Some(')') {
                    self.pos += 1;
                    break;
                }
                self.eat(',');
                let (at, point) = self.number()?;
                if point as usize >= degree {
                    return Err(self.error_at(at, format!("point {point} is outside 0..{degree}")));
                }
                if cycle.contains(&(point as u32)) {
                    return Err(self.error_at(at, format!("point {point} repeats within a cycle")));
                }
                cycle.push(point as u32);
            }
            let mut c = perm::identity(degree);
            for (i, &x) in cycle.iter().enumerate() {
                c[x as usize] = cycle[(i + 1) % cycle.len()];
            }
            acc = perm::compose(&acc, &c);
            self.skip_ws();
            if self.peek() != Some('(') {
                break;
            }
        }
        Ok(acc)
    }

    fn builtin(&mut self) -> Result<GroupSpec> {
        let (at, name) = self.word()?;
        let mut args = Vec::new();
        if self.eat('(') && !self.eat(')') {
            args = self.number_list()?;
            self.expect(')')?;
        }
        let one = |args: &[u64]| -> Result<u64> {
            match args {
                [x] => Ok(*x),
                _ => Err(self.error_at(at, format!("`{name}` takes exactly one argument"))),
            }
        };
        let b = match name.as_str() {
            "cyclic" => Builtin::Cyclic(one(&args)?),
            "dihedral" => Builtin::Dihedral(one(&args)?),
            "symmetric" => Builtin::Symmetric(one(&args)?),
            "heisenberg" => Builtin::Heisenberg(one(&args)?),
            "affine" => Builtin::Affine(one(&args)?),
            "abelian" if !args.is_empty() => Builtin::Abelian(args),
            "quaternion8" | "q8" if args.is_empty() => Builtin::Quaternion8,
            "abelian" | "quaternion8" | "q8" => {
                return Err(self.error_at(at, format!("wrong arguments for `{name}`")))
            }
            other => return Err(self.error_at(at, format!("unknown builtin group `{other}`"))),
        };
        Ok(GroupSpec::Builtin(b))
    }
}
