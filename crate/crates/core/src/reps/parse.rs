use std::sync::Arc;

use super::Representation;
use crate::error::{Error, Result};
use crate::root_system::{find_subsystem, RootSystem, TypeSpec};

/// Parses a representation descriptor such as `cox`, `ext2+roots`,
/// `sign*(cox+trivial2)` or `cosets(D8)`. `+` is direct sum, `*` is tensor
/// product and binds tighter.
pub fn parse_representation(rs: &Arc<RootSystem>, text: &str) -> Result<Representation> {
    let mut p = Parser { rs, src: text.as_bytes(), pos: 0 };
    let rep = p.sum()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("trailing input"));
    }
    Ok(rep)
}

struct Parser<'a> {
    rs: &'a Arc<RootSystem>,
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, what: &str) -> Error {
        Error::Parse(format!("representation `{}`: {what} at offset {}", String::from_utf8_lossy(self.src), self.pos))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.src.get(self.pos) == Some(&c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn sum(&mut self) -> Result<Representation> {
        let mut acc = self.product()?;
        while self.eat(b'+') {
            let rhs = self.product()?;
            acc = Representation::sum(&acc, &rhs)?;
        }
        Ok(acc)
    }

    fn product(&mut self) -> Result<Representation> {
        let mut acc = self.atom()?;
        while self.eat(b'*') {
            let rhs = self.atom()?;
            acc = Representation::tensor(&acc, &rhs)?;
        }
        Ok(acc)
    }

    fn word(&mut self) -> &str {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).unwrap_or("")
    }

    fn atom(&mut self) -> Result<Representation> {
        if self.eat(b'(') {
            let inner = self.sum()?;
            if !self.eat(b')') {
                return Err(self.error("expected `)`"));
            }
            return Ok(inner);
        }
        self.skip_ws();
        let word = self.word().to_ascii_lowercase();
        let rs = self.rs;
        let number = |prefix: &str| word.strip_prefix(prefix).and_then(|d| d.parse::<usize>().ok());
        match word.as_str() {
            "cox" => Ok(Representation::coxeter(rs)),
            "sign" => Ok(Representation::sign(rs)),
            "roots" => Ok(Representation::root_permutation(rs)),
            "cosets" => {
                if self.eat(b'{') {
                    let mut gens = Vec::new();
                    loop {
                        self.skip_ws();
                        let n = self.word().parse::<usize>().map_err(|_| self.error("expected a root index"))?;
                        gens.push(n);
                        if self.eat(b'}') {
                            break;
                        }
                        if !self.eat(b',') {
                            return Err(self.error("expected `,` or `}`"));
                        }
                    }
                    return Representation::generated_cosets(rs, &gens);
                }
                if !self.eat(b'(') {
                    return Err(self.error("expected `(` after cosets"));
                }
                self.skip_ws();
                let spec: TypeSpec = self.word().parse()?;
                if !self.eat(b')') {
                    return Err(self.error("expected `)`"));
                }
                let sub = find_subsystem(rs, &spec)?
                    .ok_or_else(|| Error::Precondition(format!("{} has no subsystem of type {spec}", rs.spec())))?;
                Ok(Representation::subsystem_cosets(&sub))
            }
            _ => {
                if let Some(k) = number("ext") {
                    Representation::exterior_power(rs, k)
                } else if let Some(d) = number("trivial") {
                    Ok(Representation::trivial(rs, d))
                } else {
                    Err(self.error(&format!("unknown representation `{word}`")))
                }
            }
        }
    }
}
