use std::fmt;
use std::sync::Arc;

use super::BasePoly;
use crate::error::{Error, Result};
use crate::reps::{parse_representation, Representation};
use crate::root_system::RootSystem;

/// A polynomial over F2[t] in Stiefel–Whitney classes `w_i(ρ)`.
#[derive(Clone, Debug)]
pub enum InvariantExpr {
    Const(BasePoly),
    Sw { rep: Arc<Representation>, index: usize },
    Sum(Vec<InvariantExpr>),
    Product(Vec<InvariantExpr>),
}

impl InvariantExpr {
    pub fn zero() -> InvariantExpr {
        InvariantExpr::Const(BasePoly::zero())
    }

    pub fn one() -> InvariantExpr {
        InvariantExpr::Const(BasePoly::one())
    }

    pub fn t_pow(k: usize) -> InvariantExpr {
        InvariantExpr::Const(BasePoly::t_pow(k))
    }

    /// `w_index(rep)`; rejects indices above the dimension.
    pub fn sw(rep: &Arc<Representation>, index: usize) -> Result<InvariantExpr> {
        if index > rep.dim() {
            return Err(Error::Precondition(format!("w{index}({rep}) exceeds dimension {}", rep.dim())));
        }
        Ok(InvariantExpr::Sw { rep: Arc::clone(rep), index })
    }

    pub fn plus(self, other: InvariantExpr) -> InvariantExpr {
        match self {
            InvariantExpr::Sum(mut v) => {
                v.push(other);
                InvariantExpr::Sum(v)
            }
            e => InvariantExpr::Sum(vec![e, other]),
        }
    }

    pub fn times(self, other: InvariantExpr) -> InvariantExpr {
        match self {
            InvariantExpr::Product(mut v) => {
                v.push(other);
                InvariantExpr::Product(v)
            }
            e => InvariantExpr::Product(vec![e, other]),
        }
    }

    /// Homogeneous degree. `Ok(None)` for a syntactic zero, which is
    /// homogeneous of every degree.
    pub fn degree(&self) -> Result<Option<usize>> {
        match self {
            InvariantExpr::Const(p) if p.is_zero() => Ok(None),
            InvariantExpr::Const(p) => p
                .as_monomial()
                .map(Some)
                .ok_or_else(|| Error::NotHomogeneous(format!("constant {p} is not a power of t"))),
            InvariantExpr::Sw { index, .. } => Ok(Some(*index)),
            InvariantExpr::Sum(terms) => {
                let mut deg = None;
                for term in terms {
                    if let Some(d) = term.degree()? {
                        if *deg.get_or_insert(d) != d {
                            return Err(Error::NotHomogeneous(self.to_string()));
                        }
                    }
                }
                Ok(deg)
            }
            InvariantExpr::Product(factors) => {
                let mut total = 0;
                for f in factors {
                    match f.degree()? {
                        Some(d) => total += d,
                        None => return Ok(None),
                    }
                }
                Ok(Some(total))
            }
        }
    }

    /// Every representation mentioned, in order of appearance.
    pub fn representations(&self) -> Vec<&Arc<Representation>> {
        let mut out = Vec::new();
        self.collect_reps(&mut out);
        out
    }

    fn collect_reps<'a>(&'a self, out: &mut Vec<&'a Arc<Representation>>) {
        match self {
            InvariantExpr::Const(_) => {}
            InvariantExpr::Sw { rep, .. } => out.push(rep),
            InvariantExpr::Sum(v) | InvariantExpr::Product(v) => v.iter().for_each(|e| e.collect_reps(out)),
        }
    }

    /// Parses expressions such as `w2(cox)*w1(cox) + t*w3(roots)` or
    /// `t^2 + w1(ext2)^2`. Representation descriptors inside `w_i(...)`
    /// use the representation grammar.
    pub fn parse(rs: &Arc<RootSystem>, text: &str) -> Result<InvariantExpr> {
        let mut p = ExprParser { rs, src: text, pos: 0 };
        let e = p.sum()?;
        p.skip_ws();
        if p.pos != text.len() {
            return Err(p.error("trailing input"));
        }
        Ok(e)
    }
}

impl fmt::Display for InvariantExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InvariantExpr::Const(p) if p.exponents().len() > 1 => write!(f, "({p})"),
            InvariantExpr::Const(p) => write!(f, "{p}"),
            InvariantExpr::Sw { rep, index } => write!(f, "w{index}({rep})"),
            InvariantExpr::Sum(v) => {
                let parts: Vec<String> = v.iter().map(|e| e.to_string()).collect();
                f.write_str(&parts.join(" + "))
            }
            InvariantExpr::Product(v) => {
                let parts: Vec<String> = v
                    .iter()
                    .map(|e| match e {
                        InvariantExpr::Sum(_) => format!("({e})"),
                        _ => e.to_string(),
                    })
                    .collect();
                f.write_str(&parts.join("*"))
            }
        }
    }
}

struct ExprParser<'a> {
    rs: &'a Arc<RootSystem>,
    src: &'a str,
    pos: usize,
}

impl ExprParser<'_> {
    fn error(&self, what: &str) -> Error {
        Error::Parse(format!("expression `{}`: {what} at offset {}", self.src, self.pos))
    }

    fn rest(&self) -> &str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.rest().starts_with(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn number(&mut self) -> Result<usize> {
        self.skip_ws();
        let len = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        if len == 0 {
            return Err(self.error("expected a number"));
        }
        let n = self.rest()[..len].parse().map_err(|_| self.error("number too large"))?;
        self.pos += len;
        Ok(n)
    }

    fn sum(&mut self) -> Result<InvariantExpr> {
        let mut terms = vec![self.product()?];
        while self.eat('+') {
            terms.push(self.product()?);
        }
        Ok(if terms.len() == 1 { terms.pop().unwrap() } else { InvariantExpr::Sum(terms) })
    }

    fn product(&mut self) -> Result<InvariantExpr> {
        let mut factors = vec![self.power()?];
        while self.eat('*') {
            factors.push(self.power()?);
        }
        Ok(if factors.len() == 1 { factors.pop().unwrap() } else { InvariantExpr::Product(factors) })
    }

    fn power(&mut self) -> Result<InvariantExpr> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let e = self.number()?;
        Ok(match (base, e) {
            (InvariantExpr::Const(p), _) if p == BasePoly::t() => InvariantExpr::t_pow(e),
            (_, 0) => InvariantExpr::one(),
            (b, 1) => b,
            (b, _) => InvariantExpr::Product(vec![b; e]),
        })
    }

    fn atom(&mut self) -> Result<InvariantExpr> {
        self.skip_ws();
        if self.eat('(') {
            let e = self.sum()?;
            if !self.eat(')') {
                return Err(self.error("expected `)`"));
            }
            return Ok(e);
        }
        let rest = self.rest();
        if rest.starts_with('0') || rest.starts_with('1') {
            let c = rest.as_bytes()[0];
            self.pos += 1;
            return Ok(if c == b'0' { InvariantExpr::zero() } else { InvariantExpr::one() });
        }
        if rest.starts_with('t') {
            self.pos += 1;
            return Ok(InvariantExpr::Const(BasePoly::t()));
        }
        if rest.starts_with('w') {
            self.pos += 1;
            let index = self.number()?;
            if !self.eat('(') {
                return Err(self.error("expected `(` after w<i>"));
            }
            let start = self.pos;
            let mut depth = 1usize;
            for (off, ch) in self.rest().char_indices() {
                match ch {
                    '(' => depth += 1,
                    ')' => {
                        depth -= 1;
                        if depth == 0 {
                            let inner = &self.src[start..start + off];
                            let rep = parse_representation(self.rs, inner)?;
                            self.pos = start + off + 1;
                            return InvariantExpr::sw(&Arc::new(rep), index);
                        }
                    }
                    _ => {}
                }
            }
            return Err(self.error("unbalanced parentheses"));
        }
        Err(self.error("expected `w<i>(rep)`, `t`, `0`, `1` or `(`"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_system::build_root_system;

    fn b3() -> Arc<RootSystem> {
        Arc::new(build_root_system(&"B3".parse().unwrap()).unwrap())
    }

    #[test]
    fn parse_and_degree() {
        let rs = b3();
        let e = InvariantExpr::parse(&rs, "w2(cox)*w1(cox) + t*w2(roots)").unwrap();
        assert_eq!(e.degree().unwrap(), Some(3));
        assert_eq!(e.to_string(), "w2(cox)*w1(cox) + t*w2(roots)");
        let sq = InvariantExpr::parse(&rs, "w1(cox+sign)^2").unwrap();
        assert_eq!(sq.degree().unwrap(), Some(2));
        assert_eq!(InvariantExpr::parse(&rs, "t^3").unwrap().degree().unwrap(), Some(3));
        assert_eq!(InvariantExpr::parse(&rs, "0").unwrap().degree().unwrap(), None);
    }

    #[test]
    fn rejects_bad_input() {
        let rs = b3();
        assert!(matches!(
            InvariantExpr::parse(&rs, "w1(cox) + w2(cox)").unwrap().degree(),
            Err(Error::NotHomogeneous(_))
        ));
        assert!(InvariantExpr::parse(&rs, "w4(cox)").is_err());
        assert!(InvariantExpr::parse(&rs, "w1(cox").is_err());
        assert!(InvariantExpr::parse(&rs, "w1(bogus)").is_err());
        assert!(InvariantExpr::parse(&rs, "(1+t)").unwrap().degree().is_err());
    }
}
