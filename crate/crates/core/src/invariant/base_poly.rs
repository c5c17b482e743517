use std::fmt;
use std::ops::{Add, AddAssign, Mul};
use std::str::FromStr;

use smallvec::{smallvec, SmallVec};

use crate::error::{Error, Result};

/// A polynomial over F2 in `t`, the degree-one class of -1.
///
/// Bit `k` of the word vector is the coefficient of `t^k`. Trailing zero
/// words are trimmed, so equality is structural.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct BasePoly(SmallVec<[u64; 2]>);

impl BasePoly {
    pub fn zero() -> BasePoly {
        BasePoly(SmallVec::new())
    }

    pub fn one() -> BasePoly {
        BasePoly::t_pow(0)
    }

    pub fn t() -> BasePoly {
        BasePoly::t_pow(1)
    }

    pub fn t_pow(k: usize) -> BasePoly {
        let mut words: SmallVec<[u64; 2]> = smallvec![0; k / 64 + 1];
        words[k / 64] = 1 << (k % 64);
        BasePoly(words)
    }

    fn trim(mut self) -> BasePoly {
        while self.0.last() == Some(&0) {
            self.0.pop();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0.len() == 1 && self.0[0] == 1
    }

    pub fn coeff(&self, k: usize) -> bool {
        self.0.get(k / 64).is_some_and(|w| w >> (k % 64) & 1 == 1)
    }

    pub fn degree(&self) -> Option<usize> {
        let last = *self.0.last()?;
        Some((self.0.len() - 1) * 64 + 63 - last.leading_zeros() as usize)
    }

    /// Exponents with nonzero coefficient, descending.
    pub fn exponents(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (w, &word) in self.0.iter().enumerate().rev() {
            for b in (0..64).rev() {
                if word >> b & 1 == 1 {
                    out.push(w * 64 + b);
                }
            }
        }
        out
    }

    /// `Some(k)` if the polynomial is the monomial `t^k`.
    pub fn as_monomial(&self) -> Option<usize> {
        let e = self.exponents();
        (e.len() == 1).then(|| e[0])
    }

    /// Keeps only the `t^k` term.
    pub fn term(&self, k: usize) -> BasePoly {
        if self.coeff(k) {
            BasePoly::t_pow(k)
        } else {
            BasePoly::zero()
        }
    }

    pub fn shift(&self, k: usize) -> BasePoly {
        if self.is_zero() {
            return BasePoly::zero();
        }
        let (words, bits) = (k / 64, k % 64);
        let mut out: SmallVec<[u64; 2]> = smallvec![0; self.0.len() + words + 1];
        for (i, &w) in self.0.iter().enumerate() {
            out[i + words] |= w << bits;
            if bits > 0 {
                out[i + words + 1] |= w >> (64 - bits);
            }
        }
        BasePoly(out).trim()
    }

    /// Drops every term above `t^max`.
    pub fn truncate(&self, max: usize) -> BasePoly {
        let words = max / 64 + 1;
        if self.0.len() < words {
            return self.clone();
        }
        let mut out: SmallVec<[u64; 2]> = self.0[..words].into();
        let keep = max % 64 + 1;
        if keep < 64 {
            out[words - 1] &= (1u64 << keep) - 1;
        }
        BasePoly(out).trim()
    }

    /// Value at `t = 0`: the specialization to fields in which -1 is a square.
    pub fn at_zero(&self) -> bool {
        self.coeff(0)
    }
}

impl Add for &BasePoly {
    type Output = BasePoly;
    fn add(self, other: &BasePoly) -> BasePoly {
        let (long, short) = if self.0.len() >= other.0.len() { (self, other) } else { (other, self) };
        let mut out = long.0.clone();
        for (o, s) in out.iter_mut().zip(&short.0) {
            *o ^= s;
        }
        BasePoly(out).trim()
    }
}

impl Add for BasePoly {
    type Output = BasePoly;
    fn add(self, other: BasePoly) -> BasePoly {
        &self + &other
    }
}

impl AddAssign<&BasePoly> for BasePoly {
    fn add_assign(&mut self, other: &BasePoly) {
        if other.0.len() > self.0.len() {
            self.0.resize(other.0.len(), 0);
        }
        for (s, o) in self.0.iter_mut().zip(&other.0) {
            *s ^= o;
        }
        while self.0.last() == Some(&0) {
            self.0.pop();
        }
    }
}

fn clmul(a: u64, b: u64) -> (u64, u64) {
    let (mut lo, mut hi) = (0u64, 0u64);
    for i in 0..64 {
        if b >> i & 1 == 1 {
            lo ^= a << i;
            if i > 0 {
                hi ^= a >> (64 - i);
            }
        }
    }
    (lo, hi)
}

impl Mul for &BasePoly {
    type Output = BasePoly;
    fn mul(self, other: &BasePoly) -> BasePoly {
        if self.is_zero() || other.is_zero() {
            return BasePoly::zero();
        }
        if self.is_one() {
            return other.clone();
        }
        if other.is_one() {
            return self.clone();
        }
        let mut out: SmallVec<[u64; 2]> = smallvec![0; self.0.len() + other.0.len()];
        for (i, &a) in self.0.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.0.iter().enumerate() {
                let (lo, hi) = clmul(a, b);
                out[i + j] ^= lo;
                out[i + j + 1] ^= hi;
            }
        }
        BasePoly(out).trim()
    }
}

impl Mul for BasePoly {
    type Output = BasePoly;
    fn mul(self, other: BasePoly) -> BasePoly {
        &self * &other
    }
}

impl fmt::Display for BasePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e = self.exponents();
        if e.is_empty() {
            return f.write_str("0");
        }
        for (i, &k) in e.iter().enumerate() {
            if i > 0 {
                f.write_str("+")?;
            }
            match k {
                0 => f.write_str("1")?,
                1 => f.write_str("t")?,
                _ => write!(f, "t^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for BasePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BasePoly({self})")
    }
}

impl FromStr for BasePoly {
    type Err = Error;
    fn from_str(s: &str) -> Result<BasePoly> {
        let mut out = BasePoly::zero();
        for term in s.split('+') {
            let term = term.trim();
            let k = match term {
                "0" => continue,
                "1" => 0,
                "t" => 1,
                _ => term
                    .strip_prefix("t^")
                    .and_then(|k| k.parse().ok())
                    .ok_or_else(|| Error::Parse(format!("bad polynomial term `{term}`")))?,
            };
            out += &BasePoly::t_pow(k);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn poly() -> impl Strategy<Value = BasePoly> {
        prop::collection::vec(0usize..150, 0..6).prop_map(|ks| {
            let mut p = BasePoly::zero();
            for k in ks {
                p += &BasePoly::t_pow(k);
            }
            p
        })
    }

    #[test]
    fn printing() {
        assert_eq!(BasePoly::zero().to_string(), "0");
        assert_eq!(BasePoly::one().to_string(), "1");
        assert_eq!(BasePoly::t().to_string(), "t");
        assert_eq!((BasePoly::t_pow(2) + BasePoly::one()).to_string(), "t^2+1");
        assert_eq!("t^2+1".parse::<BasePoly>().unwrap(), BasePoly::t_pow(2) + BasePoly::one());
    }

    #[test]
    fn characteristic_two() {
        let p = BasePoly::t() + BasePoly::one();
        assert_eq!(&p * &p, BasePoly::t_pow(2) + BasePoly::one());
        assert!((&p + &p).is_zero());
        assert_eq!(BasePoly::t_pow(70).degree(), Some(70));
        assert_eq!(BasePoly::t_pow(5).shift(64), BasePoly::t_pow(69));
    }

    proptest! {
        #[test]
        fn ring_laws(a in poly(), b in poly(), c in poly()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(a.to_string().parse::<BasePoly>().unwrap(), a.clone());
            let frob = &(&a + &b) * &(&a + &b);
            prop_assert_eq!(frob, &(&a * &a) + &(&b * &b));
        }
    }
}
