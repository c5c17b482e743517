//! Involutions and cubes of a Weyl group: enumeration, splittings,
//! conjugacy classification and the odd-index reduction check.
//!
//! A cube is a set of pairwise orthogonal positive roots; the product of
//! its reflections is an involution whose (-1)-eigenspace is the span of the
//! cube. Every involution arises this way, so the involutions are found by
//! enumerating cliques of the orthogonality graph and deduplicating.

mod cache;
mod classify;
mod enumerate;
mod mask;
mod reduction;

use std::fmt;
use std::sync::Arc;

use num_traits::Zero;
use smallvec::SmallVec;

pub use cache::{load_or_compute, AtlasJson, CubeClassJson, InvolutionClassJson};
pub use classify::{classify_cubes, classify_involutions, Atlas, CubeClass, CubeClassification, InvolutionClass};
pub use enumerate::{enumerate_cubes, for_each_cube};
pub use mask::{RootMask, MAX_POSITIVE_ROOTS};
pub use reduction::{builtin_reductions, verify_reduction, verify_reduction_with, CubeCoverage, ReductionReport};

use crate::error::{Error, Result};
use crate::rational::{fmt_q, QMatrix, Q};
use crate::root_system::RootSystem;
use crate::weyl::GroupElement;

/// Images of the simple roots under an element; determines the element.
pub type ImageKey = SmallVec<[u16; 8]>;

/// Reduced row echelon basis (ambient coordinates) of a (-1)-eigenspace.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EigenKey(pub Vec<Vec<Q>>);

impl EigenKey {
    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        self.0.iter().map(|row| row.iter().map(fmt_q).collect()).collect()
    }
}

/// A set of pairwise orthogonal positive roots, identified with the
/// elementary abelian 2-group generated by their reflections.
#[derive(Clone)]
pub struct Cube {
    roots: Vec<usize>,
    home: Arc<RootSystem>,
}

impl PartialEq for Cube {
    fn eq(&self, other: &Self) -> bool {
        self.roots == other.roots && Arc::ptr_eq(&self.home, &other.home)
    }
}

impl Eq for Cube {}

impl fmt::Debug for Cube {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cube{:?}", self.roots)
    }
}

impl Cube {
    pub fn new(rs: &Arc<RootSystem>, mut roots: Vec<usize>) -> Result<Cube> {
        roots.sort_unstable();
        roots.dedup();
        for (k, &a) in roots.iter().enumerate() {
            if !rs.is_positive(a) {
                return Err(Error::Precondition(format!("cube root {a} is not a positive root")));
            }
            if let Some(&b) = roots[..k].iter().find(|&&b| !rs.orthogonal(a, b)) {
                return Err(Error::Precondition(format!("cube roots {b} and {a} are not orthogonal")));
            }
        }
        Ok(Cube { roots, home: Arc::clone(rs) })
    }

    pub(crate) fn from_mask(rs: &Arc<RootSystem>, mask: &RootMask) -> Cube {
        Cube { roots: mask.iter().collect(), home: Arc::clone(rs) }
    }

    pub fn roots(&self) -> &[usize] {
        &self.roots
    }

    pub fn rank(&self) -> usize {
        self.roots.len()
    }

    pub fn home(&self) -> &Arc<RootSystem> {
        &self.home
    }

    pub fn mask(&self) -> RootMask {
        RootMask::from_indices(self.roots.iter().copied())
    }

    /// The element `s_{r_1} ... s_{r_n}` indexed by `subset` (bit `i` selects `r_i`).
    pub fn element(&self, subset: u32) -> GroupElement {
        let mut g = GroupElement::identity(&self.home);
        for (i, &r) in self.roots.iter().enumerate() {
            if subset >> i & 1 == 1 {
                g = g.mul(&GroupElement::reflection(&self.home, r));
            }
        }
        g
    }

    /// All `2^n` elements, indexed by subset bitmask.
    pub fn elements(&self) -> Vec<GroupElement> {
        (0..1u32 << self.rank()).map(|s| self.element(s)).collect()
    }

    pub fn top_element(&self) -> GroupElement {
        self.element((1u32 << self.rank()) - 1)
    }

    /// Conjugate cube `g C g^-1`: roots mapped by `g`, made positive.
    pub fn conjugate_by(&self, g: &GroupElement) -> Cube {
        let mut roots: Vec<usize> = self.roots.iter().map(|&r| self.home.positive_of(g.apply(r))).collect();
        roots.sort_unstable();
        Cube { roots, home: Arc::clone(&self.home) }
    }
}

/// An involution together with its canonical eigenspace key.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Involution {
    element: GroupElement,
    eigenspace_key: EigenKey,
}

impl Involution {
    pub fn new(element: GroupElement) -> Result<Involution> {
        if !element.is_involution() {
            return Err(Error::Precondition("element does not square to the identity".into()));
        }
        let eigenspace_key = eigenspace_key(&element);
        Ok(Involution { element, eigenspace_key })
    }

    pub fn element(&self) -> &GroupElement {
        &self.element
    }

    pub fn eigenspace_key(&self) -> &EigenKey {
        &self.eigenspace_key
    }

    pub fn degree(&self) -> usize {
        self.eigenspace_key.dim()
    }

    pub fn image_key(&self) -> ImageKey {
        image_key(&self.element)
    }

    /// Rebuilds the involution whose eigenspace has the given key: -1 on the
    /// space, +1 on its orthogonal complement.
    pub fn from_eigenspace(rs: &Arc<RootSystem>, key: &EigenKey) -> Result<Involution> {
        let dim = rs.ambient_dim();
        let mut images = Vec::with_capacity(rs.num_roots());
        // reflect through the span: v -> v - 2 P v with P the orthogonal projection
        let basis = &key.0;
        let k = basis.len();
        let mut gram = QMatrix::zeros(k, k);
        for i in 0..k {
            for j in 0..k {
                gram[(i, j)] = rs.inner(&basis[i], &basis[j])?;
            }
        }
        if k > 0 && gram.det().is_zero() {
            return Err(Error::Precondition("eigenspace basis is degenerate".into()));
        }
        let gram_inv = invert(&gram);
        for r in rs.roots() {
            let proj_coeffs: Vec<Q> = basis.iter().map(|b| rs.inner(&r.coords, b)).collect::<Result<_>>()?;
            let mut v = r.coords.clone();
            for i in 0..k {
                let c: Q = (0..k).map(|j| gram_inv[(i, j)] * proj_coeffs[j]).sum();
                for t in 0..dim {
                    v[t] -= Q::from_integer(2) * c * basis[i][t];
                }
            }
            let img = rs
                .index_of(&v)
                .ok_or_else(|| Error::Precondition("eigenspace does not define a Weyl group element".into()))?;
            images.push(img as u16);
        }
        let element = GroupElement::from_images(rs, images)?;
        Involution::new(element)
    }
}

fn invert(m: &QMatrix) -> QMatrix {
    let n = m.rows;
    let mut aug = QMatrix::zeros(n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            aug[(i, j)] = m[(i, j)];
        }
        aug[(i, n + i)] = Q::from_integer(1);
    }
    let r = aug.rref();
    let mut inv = QMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            inv[(i, j)] = r[(i, n + j)];
        }
    }
    inv
}

pub fn image_key(g: &GroupElement) -> ImageKey {
    g.home().simple_roots().iter().map(|&s| g.apply(s) as u16).collect()
}

/// Canonical basis of the (-1)-eigenspace of an involution: the span of
/// `a - g(a)` over simple roots `a`, in reduced row echelon form.
pub fn eigenspace_key(g: &GroupElement) -> EigenKey {
    let rs = g.home();
    let rows: Vec<Vec<Q>> = rs
        .simple_roots()
        .iter()
        .map(|&s| {
            let a = &rs.root(s).coords;
            let b = &rs.root(g.apply(s)).coords;
            a.iter().zip(b).map(|(x, y)| x - y).collect()
        })
        .collect();
    eigenspace_key_from_rows(&rows)
}

pub(crate) fn eigenspace_key_from_rows(rows: &[Vec<Q>]) -> EigenKey {
    if rows.is_empty() {
        return EigenKey(Vec::new());
    }
    let r = QMatrix::from_rows(rows).rref();
    EigenKey((0..r.rows).map(|i| r.row(i).to_vec()).collect())
}

/// Rebuilds an element from the images of the simple roots.
pub fn element_from_image_key(rs: &Arc<RootSystem>, key: &[u16]) -> Result<GroupElement> {
    let rank = rs.rank();
    let images = (0..rs.num_roots())
        .map(|b| {
            let mut out = vec![0i32; rank];
            for (j, &c) in rs.simple_coeffs(b).iter().enumerate() {
                if c != 0 {
                    for (o, &x) in out.iter_mut().zip(rs.simple_coeffs(key[j] as usize)) {
                        *o += c * x;
                    }
                }
            }
            rs.root_from_combination(&out)
                .map(|i| i as u16)
                .ok_or_else(|| Error::Internal("image key does not define a root permutation".into()))
        })
        .collect::<Result<Vec<u16>>>()?;
    GroupElement::from_images(rs, images)
}

/// The involution `s_{r_1} ... s_{r_n}` of a cube; its degree is `n`.
pub fn involution_from_cube(c: &Cube) -> Involution {
    let element = c.top_element();
    let rows: Vec<Vec<Q>> = c.roots.iter().map(|&r| c.home.root(r).coords.clone()).collect();
    let eigenspace_key = eigenspace_key_from_rows(&rows);
    Involution { element, eigenspace_key }
}

/// Greedy splitting: scan positive roots in canonical order and keep each
/// root in the (-1)-eigenspace that is orthogonal to those already kept.
pub fn split_involution(inv: &Involution) -> Result<Cube> {
    let g = &inv.element;
    let rs = g.home();
    let mut chosen: Vec<usize> = Vec::with_capacity(inv.degree());
    for b in 0..rs.num_positive() {
        if chosen.len() == inv.degree() {
            break;
        }
        if g.apply(b) == rs.negative(b) && chosen.iter().all(|&c| rs.orthogonal(b, c)) {
            chosen.push(b);
        }
    }
    let cube = Cube { roots: chosen, home: Arc::clone(rs) };
    if cube.rank() != inv.degree() || cube.top_element() != *g {
        return Err(Error::Internal(format!(
            "involution of degree {} in {} admits no greedy splitting",
            inv.degree(),
            rs.spec()
        )));
    }
    Ok(cube)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;
    use crate::root_system::build_root_system;

    fn arc(s: &str) -> Arc<RootSystem> {
        Arc::new(build_root_system(&s.parse().unwrap()).unwrap())
    }

    #[test]
    fn cubes_to_involutions() {
        let b2 = arc("B2");
        let empty = involution_from_cube(&Cube::new(&b2, vec![]).unwrap());
        assert!(empty.element().is_identity());
        assert_eq!(empty.degree(), 0);
        let single = involution_from_cube(&Cube::new(&b2, vec![2]).unwrap());
        assert_eq!(single.degree(), 1);
        assert_eq!(*single.element(), GroupElement::reflection(&b2, 2));

        let e1 = b2.index_of(&[q(1), q(0)]).unwrap();
        let e2 = b2.index_of(&[q(0), q(1)]).unwrap();
        let d1 = b2.index_of(&[q(1), q(-1)]).unwrap();
        let d2 = b2.index_of(&[q(1), q(1)]).unwrap();
        let a = involution_from_cube(&Cube::new(&b2, vec![e1, e2]).unwrap());
        let b = involution_from_cube(&Cube::new(&b2, vec![d1, d2]).unwrap());
        assert_eq!(a, b);
        assert_eq!(a.element().trace(), q(-2));
        assert_eq!(a.eigenspace_key(), &eigenspace_key(a.element()));
        assert!(Cube::new(&b2, vec![e1, d1]).is_err());
    }

    #[test]
    fn greedy_splittings() {
        let b2 = arc("B2");
        let id = Involution::new(GroupElement::identity(&b2)).unwrap();
        assert_eq!(split_involution(&id).unwrap().roots(), &[] as &[usize]);
        let e1 = b2.index_of(&[q(1), q(0)]).unwrap();
        let e2 = b2.index_of(&[q(0), q(1)]).unwrap();
        let minus = Involution::new(Cube::new(&b2, vec![1, 3]).unwrap().top_element()).unwrap();
        let mut expect = vec![e1, e2];
        expect.sort();
        assert_eq!(split_involution(&minus).unwrap().roots(), expect.as_slice());
        for r in 0..b2.num_positive() {
            let s = Involution::new(GroupElement::reflection(&b2, r)).unwrap();
            assert_eq!(split_involution(&s).unwrap().roots(), &[r]);
        }
    }

    #[test]
    fn eigenspace_round_trip() {
        for s in ["B3", "D4", "F4"] {
            let rs = arc(s);
            for cube in enumerate_cubes(&rs) {
                let inv = involution_from_cube(&cube);
                let back = Involution::from_eigenspace(&rs, inv.eigenspace_key()).unwrap();
                assert_eq!(back, inv);
                assert_eq!(element_from_image_key(&rs, &inv.image_key()).unwrap(), *inv.element());
                let split = split_involution(&inv).unwrap();
                assert_eq!(involution_from_cube(&split), inv);
            }
        }
    }

    #[test]
    fn non_involution_rejected() {
        let a2 = arc("A2");
        assert!(Involution::new(GroupElement::from_word(&a2, &[0, 1])).is_err());
    }
}
