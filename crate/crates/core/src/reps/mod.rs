//! Exact orthogonal representations of Weyl groups, given by trace oracles,
//! and the character-gap search for pairs of involution classes.

mod gap;
mod parse;

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

pub use gap::{builtin_hard_cases, character_gap, default_catalogue, search_gap, Budget, Findings, GapHit};
pub use parse::parse_representation;

use crate::atlas::RootMask;
use crate::error::{Error, Result};
use crate::rational::{q, Q};
use crate::root_system::{root_closure, RootSystem, SubsystemEmbedding};
use crate::weyl::GroupElement;

#[derive(Clone)]
enum Kind {
    Trivial,
    Coxeter,
    Sign,
    RootPermutation,
    /// Permutation action on the Weyl conjugates of a reflection subsystem,
    /// each stored as the mask of its positive roots. `label` is either a
    /// type (`D8`) or a brace list of generating root indices (`{3,17}`).
    SubsystemCosets {
        label: String,
        conjugates: Arc<Vec<RootMask>>,
    },
    /// Exterior power of the Coxeter representation.
    ExteriorPower(usize),
    Sum(Box<Representation>, Box<Representation>),
    Tensor(Box<Representation>, Box<Representation>),
}

/// A representation over the rationals, known through its character.
#[derive(Clone)]
pub struct Representation {
    rs: Arc<RootSystem>,
    kind: Kind,
    dim: usize,
}

impl fmt::Debug for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Representation({self}, dim {})", self.dim)
    }
}

impl fmt::Display for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            Kind::Trivial => write!(f, "trivial{}", self.dim),
            Kind::Coxeter => f.write_str("cox"),
            Kind::Sign => f.write_str("sign"),
            Kind::RootPermutation => f.write_str("roots"),
            Kind::SubsystemCosets { label, .. } if label.starts_with('{') => write!(f, "cosets{label}"),
            Kind::SubsystemCosets { label, .. } => write!(f, "cosets({label})"),
            Kind::ExteriorPower(k) => write!(f, "ext{k}"),
            Kind::Sum(a, b) => write!(f, "{a}+{b}"),
            Kind::Tensor(a, b) => {
                let wrap = |r: &Representation| match r.kind {
                    Kind::Sum(..) => format!("({r})"),
                    _ => r.to_string(),
                };
                write!(f, "{}*{}", wrap(a), wrap(b))
            }
        }
    }
}

impl Representation {
    pub fn trivial(rs: &Arc<RootSystem>, dim: usize) -> Representation {
        Representation { rs: Arc::clone(rs), kind: Kind::Trivial, dim }
    }

    /// The reflection representation on the span of the roots.
    pub fn coxeter(rs: &Arc<RootSystem>) -> Representation {
        Representation { rs: Arc::clone(rs), kind: Kind::Coxeter, dim: rs.rank() }
    }

    pub fn sign(rs: &Arc<RootSystem>) -> Representation {
        Representation { rs: Arc::clone(rs), kind: Kind::Sign, dim: 1 }
    }

    pub fn root_permutation(rs: &Arc<RootSystem>) -> Representation {
        Representation { rs: Arc::clone(rs), kind: Kind::RootPermutation, dim: rs.num_roots() }
    }

    pub fn exterior_power(rs: &Arc<RootSystem>, k: usize) -> Result<Representation> {
        if k > rs.rank() {
            return Err(Error::Precondition(format!("exterior power {k} exceeds rank {}", rs.rank())));
        }
        Ok(Representation { rs: Arc::clone(rs), kind: Kind::ExteriorPower(k), dim: binomial(rs.rank(), k) })
    }

    /// Permutation representation on the conjugates of a subsystem.
    pub fn subsystem_cosets(sub: &SubsystemEmbedding) -> Representation {
        Representation::conjugates_of(&sub.ambient, sub.sub_type.to_string(), &sub.positive_closure())
    }

    /// Permutation representation on the conjugates of the reflection
    /// subsystem generated by the given roots, e.g. a cube.
    pub fn generated_cosets(rs: &Arc<RootSystem>, gens: &[usize]) -> Result<Representation> {
        if let Some(&bad) = gens.iter().find(|&&g| g >= rs.num_roots()) {
            return Err(Error::NotARoot(format!("root index {bad}")));
        }
        let mut pos: Vec<usize> = gens.iter().map(|&g| rs.positive_of(g)).collect();
        pos.sort_unstable();
        pos.dedup();
        let label = format!("{{{}}}", pos.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(","));
        let closure: Vec<usize> = root_closure(rs, &pos).into_iter().filter(|&i| rs.is_positive(i)).collect();
        Ok(Representation::conjugates_of(rs, label, &closure))
    }

    fn conjugates_of(rs: &Arc<RootSystem>, label: String, positive_closure: &[usize]) -> Representation {
        let start = RootMask::from_indices(positive_closure.iter().copied());
        let mut seen = HashSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(m) = queue.pop_front() {
            for &s in rs.simple_roots() {
                let perm = rs.reflection_perm(s);
                let img = RootMask::from_indices(m.iter().map(|r| rs.positive_of(perm[r] as usize)));
                if seen.insert(img) {
                    queue.push_back(img);
                }
            }
        }
        let mut conjugates: Vec<RootMask> = seen.into_iter().collect();
        conjugates.sort_unstable();
        let dim = conjugates.len();
        Representation {
            rs: Arc::clone(rs),
            kind: Kind::SubsystemCosets { label, conjugates: Arc::new(conjugates) },
            dim,
        }
    }

    fn check_same(&self, other: &Representation) -> Result<()> {
        if Arc::ptr_eq(&self.rs, &other.rs) {
            Ok(())
        } else {
            Err(Error::MixedRootSystems)
        }
    }

    pub fn sum(a: &Representation, b: &Representation) -> Result<Representation> {
        a.check_same(b)?;
        Ok(Representation {
            rs: Arc::clone(&a.rs),
            kind: Kind::Sum(Box::new(a.clone()), Box::new(b.clone())),
            dim: a.dim + b.dim,
        })
    }

    pub fn tensor(a: &Representation, b: &Representation) -> Result<Representation> {
        a.check_same(b)?;
        Ok(Representation {
            rs: Arc::clone(&a.rs),
            kind: Kind::Tensor(Box::new(a.clone()), Box::new(b.clone())),
            dim: a.dim * b.dim,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn root_system(&self) -> &Arc<RootSystem> {
        &self.rs
    }

    pub fn descriptor(&self) -> String {
        self.to_string()
    }

    /// Exact character value. Involutions use eigenvalue bookkeeping; other
    /// elements go through the element matrix.
    pub fn character(&self, g: &GroupElement) -> Q {
        match &self.kind {
            Kind::Trivial => q(self.dim as i64),
            Kind::Coxeter => match g.involution_degree() {
                Some(d) => q(self.rs.rank() as i64 - 2 * d as i64),
                None => g.trace(),
            },
            Kind::Sign => match g.involution_degree() {
                Some(d) => q(if d % 2 == 0 { 1 } else { -1 }),
                None => g.det(),
            },
            Kind::RootPermutation => q(g.fixed_roots() as i64),
            Kind::SubsystemCosets { conjugates, .. } => {
                let fixed = conjugates
                    .iter()
                    .filter(|m| {
                        let img = RootMask::from_indices(m.iter().map(|r| self.rs.positive_of(g.apply(r))));
                        img == **m
                    })
                    .count();
                q(fixed as i64)
            }
            Kind::ExteriorPower(k) => match g.involution_degree() {
                Some(d) => q(involution_exterior_trace(self.rs.rank() - d, d, *k)),
                None => g.matrix().exterior_traces()[*k],
            },
            Kind::Sum(a, b) => a.character(g) + b.character(g),
            Kind::Tensor(a, b) => a.character(g) * b.character(g),
        }
    }
}

pub fn character(rho: &Representation, g: &GroupElement) -> Q {
    rho.character(g)
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Coefficient of `x^k` in `(1+x)^plus (1-x)^minus`.
pub fn involution_exterior_trace(plus: usize, minus: usize, k: usize) -> i64 {
    (0..=k.min(minus))
        .filter(|&j| k - j <= plus)
        .map(|j| {
            let term = (binomial(plus, k - j) * binomial(minus, j)) as i64;
            if j % 2 == 0 {
                term
            } else {
                -term
            }
        })
        .sum()
}

/// `det(1 - g)` on the reflection representation.
pub fn det_one_minus(g: &GroupElement) -> Q {
    let m = g.matrix();
    crate::rational::QMatrix::identity(m.rows).sub(&m).det()
}

impl Representation {
    /// `Σ_k (-1)^k tr Λ^k(g)` over the exterior powers of the reflection representation.
    pub fn alternating_exterior_sum(rs: &Arc<RootSystem>, g: &GroupElement) -> Result<Q> {
        let mut acc = Q::zero();
        for k in 0..=rs.rank() {
            let c = Representation::exterior_power(rs, k)?.character(g);
            if k % 2 == 0 {
                acc += c;
            } else {
                acc -= c;
            }
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atlas::{enumerate_cubes, involution_from_cube};
    use crate::root_system::{build_root_system, find_subsystem};
    use rand::{Rng, SeedableRng};

    fn arc(s: &str) -> Arc<RootSystem> {
        Arc::new(build_root_system(&s.parse().unwrap()).unwrap())
    }

    #[test]
    fn character_examples() {
        let e8 = arc("E8");
        let minus: GroupElement = {
            // -1 is the product over any orthogonal frame; w0 of E8
            let atlas = crate::atlas::classify_involutions(&e8).unwrap();
            atlas.last().unwrap().representative.element().clone()
        };
        assert_eq!(Representation::coxeter(&e8).character(&minus), q(-8));

        let b2 = arc("B2");
        let s = GroupElement::reflection(&b2, 0);
        assert_eq!(Representation::exterior_power(&b2, 2).unwrap().character(&s), q(-1));
        for r in 0..b2.num_positive() {
            assert_eq!(Representation::sign(&b2).character(&GroupElement::reflection(&b2, r)), q(-1));
        }
        assert!(Representation::exterior_power(&b2, 3).is_err());
    }

    #[test]
    fn identity_and_parity() {
        let f4 = arc("F4");
        let reps = default_catalogue(&f4, &Budget::default()).unwrap();
        let id = GroupElement::identity(&f4);
        for rho in &reps {
            assert_eq!(rho.character(&id), q(rho.dim() as i64), "{rho}");
            for cube in enumerate_cubes(&f4).into_iter().step_by(7) {
                let g = involution_from_cube(&cube).element().clone();
                let c = rho.character(&g);
                assert!(c.is_integer());
                let c = *c.numer();
                assert!(c.abs() <= rho.dim() as i64);
                assert_eq!((c - rho.dim() as i64).rem_euclid(2), 0);
            }
        }
    }

    #[test]
    fn bookkeeping_matches_matrices() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let rs = arc("D5");
        for cube in enumerate_cubes(&rs).into_iter().step_by(13) {
            let g = involution_from_cube(&cube).element().clone();
            let traces = g.matrix().exterior_traces();
            for (k, &tr) in traces.iter().enumerate().take(6) {
                assert_eq!(Representation::exterior_power(&rs, k).unwrap().character(&g), tr);
            }
            assert_eq!(Representation::sign(&rs).character(&g), g.det());
        }
        // non-involutions go through the matrix path
        for _ in 0..10 {
            let w: Vec<usize> = (0..9).map(|_| rng.gen_range(0..5)).collect();
            let g = GroupElement::from_word(&rs, &w);
            let alt = Representation::alternating_exterior_sum(&rs, &g).unwrap();
            assert_eq!(alt, det_one_minus(&g));
        }
    }

    #[test]
    fn sums_and_tensors() {
        let rs = arc("B3");
        let a = Representation::coxeter(&rs);
        let b = Representation::root_permutation(&rs);
        let s = Representation::sum(&a, &b).unwrap();
        let t = Representation::tensor(&a, &b).unwrap();
        assert_eq!(s.dim(), 3 + 18);
        assert_eq!(t.dim(), 54);
        for cube in enumerate_cubes(&rs) {
            let g = involution_from_cube(&cube).element().clone();
            assert_eq!(s.character(&g), a.character(&g) + b.character(&g));
            assert_eq!(t.character(&g), a.character(&g) * b.character(&g));
        }
        assert_eq!(Representation::sum(&a, &Representation::coxeter(&arc("B3"))).unwrap_err(), Error::MixedRootSystems);
    }

    #[test]
    fn coset_representation_degrees() {
        for (g, h, n) in [("E6", "D5", 27), ("E8", "D8", 135), ("F4", "B4", 3), ("G2", "A1xA1", 3), ("E7", "A1xD6", 63)]
        {
            let rs = arc(g);
            let sub = find_subsystem(&rs, &h.parse().unwrap()).unwrap().unwrap();
            assert_eq!(Representation::subsystem_cosets(&sub).dim(), n, "{g}/{h}");
        }
    }

    #[test]
    fn exterior_trace_bookkeeping() {
        // B2 reflection: (1+x)(1-x) = 1 - x^2
        assert_eq!(involution_exterior_trace(1, 1, 2), -1);
        assert_eq!(involution_exterior_trace(1, 1, 1), 0);
        assert_eq!(involution_exterior_trace(3, 0, 2), 3);
    }
}
