//! The invariant algebra of a cube of rank `n` over F2[t], in the basis
//! `α_I = ∏_{i∈I} x_i` indexed by subsets `I ⊆ [1, n]`, with the relation
//! `x_i² = t·x_i`. Hence `α_I·α_J = t^{|I∩J|}·α_{I∪J}`.

use std::fmt;

use super::BasePoly;
use crate::error::{Error, Result};

/// Largest cube rank handled (dense storage of `2^n` coefficients).
pub const MAX_CUBE_RANK: usize = 16;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CubeClassElement {
    rank: usize,
    /// Coefficient of `α_I`, indexed by the bitmask of `I`.
    coeffs: Vec<BasePoly>,
}

impl CubeClassElement {
    pub fn zero(rank: usize) -> CubeClassElement {
        assert!(rank <= MAX_CUBE_RANK, "cube rank {rank} too large");
        CubeClassElement { rank, coeffs: vec![BasePoly::zero(); 1 << rank] }
    }

    pub fn one(rank: usize) -> CubeClassElement {
        CubeClassElement::scalar(rank, BasePoly::one())
    }

    pub fn scalar(rank: usize, p: BasePoly) -> CubeClassElement {
        let mut e = CubeClassElement::zero(rank);
        e.coeffs[0] = p;
        e
    }

    /// The basis element `α_I`.
    pub fn alpha(rank: usize, subset: u32) -> CubeClassElement {
        let mut e = CubeClassElement::zero(rank);
        e.coeffs[subset as usize] = BasePoly::one();
        e
    }

    /// The degree-one generator `x_i` (0-based).
    pub fn x(rank: usize, i: usize) -> CubeClassElement {
        CubeClassElement::alpha(rank, 1 << i)
    }

    /// `Σ_{i∈E} x_i`, the class of the character that is -1 exactly on the reflections in `E`.
    pub fn linear(rank: usize, subset: u32) -> CubeClassElement {
        let mut e = CubeClassElement::zero(rank);
        for i in 0..rank {
            if subset >> i & 1 == 1 {
                e.coeffs[1 << i] = BasePoly::one();
            }
        }
        e
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn coeff(&self, subset: u32) -> &BasePoly {
        &self.coeffs[subset as usize]
    }

    pub fn set_coeff(&mut self, subset: u32, p: BasePoly) {
        self.coeffs[subset as usize] = p;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(BasePoly::is_zero)
    }

    /// Nonzero `(I, coefficient)` pairs in increasing bitmask order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, &BasePoly)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i as u32, c))
    }

    fn check_rank(&self, other: &CubeClassElement) -> Result<()> {
        if self.rank == other.rank {
            Ok(())
        } else {
            Err(Error::RankMismatch(self.rank, other.rank))
        }
    }

    pub fn add(&self, other: &CubeClassElement) -> Result<CubeClassElement> {
        self.check_rank(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(CubeClassElement { rank: self.rank, coeffs })
    }

    pub fn scale(&self, p: &BasePoly) -> CubeClassElement {
        CubeClassElement { rank: self.rank, coeffs: self.coeffs.iter().map(|c| c * p).collect() }
    }

    pub fn mul(&self, other: &CubeClassElement) -> Result<CubeClassElement> {
        self.check_rank(other)?;
        let mut out = CubeClassElement::zero(self.rank);
        let rhs: Vec<(u32, &BasePoly)> = other.terms().collect();
        for (i, a) in self.terms() {
            for &(j, b) in &rhs {
                let overlap = (i & j).count_ones() as usize;
                let prod = (a * b).shift(overlap);
                out.coeffs[(i | j) as usize] += &prod;
            }
        }
        Ok(out)
    }

    pub fn pow(&self, mut e: u64) -> CubeClassElement {
        let mut base = self.clone();
        let mut acc = CubeClassElement::one(self.rank);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same rank");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("same rank");
            }
        }
        acc
    }

    /// Drops every term of degree above `d`.
    pub fn truncate(&self, d: usize) -> CubeClassElement {
        let mut out = self.clone();
        for (i, c) in out.coeffs.iter_mut().enumerate() {
            let size = (i as u32).count_ones() as usize;
            *c = if size > d { BasePoly::zero() } else { c.truncate(d - size) };
        }
        out
    }

    /// Coefficient of `α_{[1,n]}`.
    pub fn top_coefficient(&self) -> &BasePoly {
        &self.coeffs[(1usize << self.rank) - 1]
    }

    /// Degree-`d` part: `t^k α_I` has degree `k + |I|`.
    pub fn homogeneous_component(&self, d: usize) -> CubeClassElement {
        let mut out = CubeClassElement::zero(self.rank);
        for (i, c) in self.terms() {
            let size = i.count_ones() as usize;
            if size <= d {
                out.coeffs[i as usize] = c.term(d - size);
            }
        }
        out
    }

    /// `Some(d)` if every term has degree `d`; `None` for zero or mixed elements.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut deg = None;
        for (i, c) in self.terms() {
            let k = c.as_monomial()?;
            let d = k + i.count_ones() as usize;
            if *deg.get_or_insert(d) != d {
                return None;
            }
        }
        deg
    }
}

/// Coefficient of `α_{[1,n]}` ("top coefficient").
pub fn top_coefficient(a: &CubeClassElement) -> BasePoly {
    a.top_coefficient().clone()
}

pub fn cube_mul(a: &CubeClassElement, b: &CubeClassElement) -> Result<CubeClassElement> {
    a.mul(b)
}

impl fmt::Display for CubeClassElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.terms() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let mono: Vec<String> = (0..self.rank).filter(|b| i >> b & 1 == 1).map(|b| format!("x{}", b + 1)).collect();
            match (c.is_one(), mono.is_empty()) {
                (true, true) => f.write_str("1")?,
                (true, false) => f.write_str(&mono.join(""))?,
                (false, true) => write!(f, "({c})")?,
                (false, false) => write!(f, "({c}){}", mono.join(""))?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CubeClassElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CubeClassElement[{}]({self})", self.rank)
    }
}
