//! Weyl group elements as permutations of the root list, group orders via
//! a stabilizer chain, and orbit partitions.

mod orbit;
mod stabchain;

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

pub use orbit::{orbit_partition, Partition};
pub use stabchain::StabChain;

use crate::error::{Error, Result};
use crate::rational::{q, QMatrix, Q};
use crate::root_system::{Root, RootSystem};

pub type Perm = Vec<u16>;

pub fn perm_compose(a: &[u16], b: &[u16]) -> Perm {
    b.iter().map(|&i| a[i as usize]).collect()
}

pub fn perm_inverse(a: &[u16]) -> Perm {
    let mut inv = vec![0u16; a.len()];
    for (i, &j) in a.iter().enumerate() {
        inv[j as usize] = i as u16;
    }
    inv
}

pub fn perm_is_identity(a: &[u16]) -> bool {
    a.iter().enumerate().all(|(i, &j)| i == j as usize)
}

/// An element of the Weyl group of `home`, stored as the permutation it
/// induces on the root list: root `i` maps to root `images[i]`.
#[derive(Clone)]
pub struct GroupElement {
    images: Perm,
    home: Arc<RootSystem>,
}

impl PartialEq for GroupElement {
    fn eq(&self, other: &Self) -> bool {
        self.images == other.images && Arc::ptr_eq(&self.home, &other.home)
    }
}

impl Eq for GroupElement {}

impl Hash for GroupElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.images.hash(state);
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GroupElement")
            .field("home", &self.home.spec().to_string())
            .field("images", &self.images)
            .finish()
    }
}

impl GroupElement {
    pub fn identity(rs: &Arc<RootSystem>) -> GroupElement {
        GroupElement { images: (0..rs.num_roots() as u16).collect(), home: Arc::clone(rs) }
    }

    /// Reflection in root index `i`.
    pub fn reflection(rs: &Arc<RootSystem>, i: usize) -> GroupElement {
        GroupElement { images: rs.reflection_perm(i).to_vec(), home: Arc::clone(rs) }
    }

    /// Product `s_{w[0]} s_{w[1]} ...` of simple reflections (Bourbaki indices from 0).
    pub fn from_word(rs: &Arc<RootSystem>, word: &[usize]) -> GroupElement {
        let mut g = GroupElement::identity(rs);
        for &s in word {
            g = g.mul(&GroupElement::reflection(rs, rs.simple_roots()[s]));
        }
        g
    }

    /// Validates a root permutation: it must be a bijection commuting with
    /// negation whose linear extension is an isometry.
    pub fn from_images(rs: &Arc<RootSystem>, images: Perm) -> Result<GroupElement> {
        let n = rs.num_roots();
        if images.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: images.len() });
        }
        let mut hit = vec![false; n];
        for &i in &images {
            let i = i as usize;
            if i >= n || std::mem::replace(&mut hit[i], true) {
                return Err(Error::Precondition("images are not a permutation of the roots".into()));
            }
        }
        for i in 0..n {
            if images[rs.negative(i)] as usize != rs.negative(images[i] as usize) {
                return Err(Error::Precondition("permutation does not commute with negation".into()));
            }
        }
        let g = GroupElement { images, home: Arc::clone(rs) };
        for i in 0..n {
            if g.apply_linear(rs.simple_coeffs(i)) != Some(g.images[i] as usize) {
                return Err(Error::Precondition("permutation is not induced by a linear map".into()));
            }
        }
        let m = g.matrix();
        let gram = rs.simple_gram();
        if m.transpose().mul(&gram).mul(&m) != gram {
            return Err(Error::Precondition("induced linear map is not orthogonal".into()));
        }
        Ok(g)
    }

    pub fn home(&self) -> &Arc<RootSystem> {
        &self.home
    }

    pub fn images(&self) -> &[u16] {
        &self.images
    }

    pub fn apply(&self, root: usize) -> usize {
        self.images[root] as usize
    }

    /// Image of the vector with simple-root coefficients `c`, if it is a root.
    pub fn apply_linear(&self, c: &[i32]) -> Option<usize> {
        let rs = &self.home;
        let mut out = vec![0i32; rs.rank()];
        for (j, &cj) in c.iter().enumerate() {
            if cj != 0 {
                let img = rs.simple_coeffs(self.apply(rs.simple_roots()[j]));
                for (o, &x) in out.iter_mut().zip(img) {
                    *o += cj * x;
                }
            }
        }
        rs.root_from_combination(&out)
    }

    fn check_home(&self, other: &GroupElement) -> Result<()> {
        if Arc::ptr_eq(&self.home, &other.home) {
            Ok(())
        } else {
            Err(Error::MixedRootSystems)
        }
    }

    /// `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &GroupElement) -> Result<GroupElement> {
        self.check_home(other)?;
        Ok(self.mul(other))
    }

    pub(crate) fn mul(&self, other: &GroupElement) -> GroupElement {
        GroupElement { images: perm_compose(&self.images, &other.images), home: Arc::clone(&self.home) }
    }

    pub fn inverse(&self) -> GroupElement {
        GroupElement { images: perm_inverse(&self.images), home: Arc::clone(&self.home) }
    }

    /// `by ∘ self ∘ by⁻¹`.
    pub fn conjugate_by(&self, by: &GroupElement) -> Result<GroupElement> {
        self.check_home(by)?;
        Ok(by.mul(self).mul(&by.inverse()))
    }

    pub fn is_identity(&self) -> bool {
        perm_is_identity(&self.images)
    }

    pub fn is_involution(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| self.images[j as usize] as usize == i)
    }

    pub fn order(&self) -> u64 {
        let mut x = self.clone();
        let mut k = 1;
        while !x.is_identity() {
            x = x.mul(self);
            k += 1;
        }
        k
    }

    /// Matrix in the simple-root basis; column `j` holds the coefficients of
    /// the image of the `j`-th simple root.
    pub fn matrix(&self) -> QMatrix {
        let rs = &self.home;
        let r = rs.rank();
        let mut m = QMatrix::zeros(r, r);
        for (j, &s) in rs.simple_roots().iter().enumerate() {
            for (i, &c) in rs.simple_coeffs(self.apply(s)).iter().enumerate() {
                m[(i, j)] = q(c as i64);
            }
        }
        m
    }

    pub fn trace(&self) -> Q {
        self.matrix().trace()
    }

    pub fn det(&self) -> Q {
        self.matrix().det()
    }

    /// Number of roots fixed by the element.
    pub fn fixed_roots(&self) -> usize {
        self.images.iter().enumerate().filter(|(i, &j)| *i == j as usize).count()
    }

    /// Multiplicity of the eigenvalue -1, for an involution.
    pub fn involution_degree(&self) -> Option<usize> {
        if !self.is_involution() {
            return None;
        }
        let t = self.trace();
        let d = (q(self.home.rank() as i64) - t) / q(2);
        debug_assert!(d.is_integer());
        Some(*d.numer() as usize)
    }
}

/// The reflection in `alpha`, which must be a root of `rs`.
pub fn reflection_element(rs: &Arc<RootSystem>, alpha: &Root) -> Result<GroupElement> {
    if alpha.coords.len() != rs.ambient_dim() {
        return Err(Error::DimensionMismatch { expected: rs.ambient_dim(), got: alpha.coords.len() });
    }
    let i = rs.index_of(&alpha.coords).ok_or_else(|| Error::NotARoot(rs.spec().to_string()))?;
    Ok(GroupElement::reflection(rs, i))
}

pub fn element_matrix(x: &GroupElement) -> QMatrix {
    x.matrix()
}

/// Order of the Weyl group, from a stabilizer chain on the root action.
pub fn group_order(rs: &Arc<RootSystem>) -> u128 {
    StabChain::for_weyl_group(rs).order()
}

/// Order of the subgroup generated by the reflections in the given roots.
pub fn reflection_subgroup_order(rs: &Arc<RootSystem>, roots: &[usize]) -> u128 {
    let gens: Vec<Perm> = roots.iter().map(|&r| rs.reflection_perm(r).to_vec()).collect();
    StabChain::new(rs.num_roots(), rs.simple_roots().to_vec(), &gens).order()
}

/// All elements by breadth-first search over simple reflections. Only for
/// small groups; used as an enumeration oracle.
pub fn enumerate_elements(rs: &Arc<RootSystem>) -> Vec<GroupElement> {
    use std::collections::HashSet;
    let gens: Vec<GroupElement> = rs.simple_roots().iter().map(|&s| GroupElement::reflection(rs, s)).collect();
    let id = GroupElement::identity(rs);
    let mut seen: HashSet<Perm> = HashSet::from([id.images.clone()]);
    let mut out = vec![id];
    let mut i = 0;
    while i < out.len() {
        for g in &gens {
            let next = out[i].mul(g);
            if seen.insert(next.images.clone()) {
                out.push(next);
            }
        }
        i += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_system::build_root_system;
    use rand::{Rng, SeedableRng};

    fn arc(s: &str) -> Arc<RootSystem> {
        Arc::new(build_root_system(&s.parse().unwrap()).unwrap())
    }

    #[test]
    fn reflections() {
        let a1 = arc("A1");
        let s = reflection_element(&a1, a1.root(0)).unwrap();
        assert_eq!(s.images(), &[1, 0]);

        let b2 = arc("B2");
        let m = b2.index_of(&[q(1), q(-1)]).unwrap();
        let fixed = b2.index_of(&[q(1), q(1)]).unwrap();
        let s = GroupElement::reflection(&b2, m);
        assert_eq!(s.apply(fixed), fixed);
        assert_eq!(s.apply(b2.negative(fixed)), b2.negative(fixed));
        assert!(s.mul(&s).is_identity());

        let a2 = arc("A2");
        assert_eq!(GroupElement::from_word(&a2, &[0, 1]).order(), 3);
        let not_root = Root { coords: vec![q(1), q(1), q(1)] };
        assert!(matches!(reflection_element(&a2, &not_root), Err(Error::NotARoot(_))));
    }

    #[test]
    fn group_axioms_and_orders() {
        let g2 = arc("G2");
        let x = GroupElement::from_word(&g2, &[0, 1, 1, 0, 1]);
        assert!(x.compose(&x.inverse()).unwrap().is_identity());
        assert_eq!(GroupElement::from_word(&g2, &[0, 1]).order(), 6);
        let a1 = arc("A1");
        assert_eq!(GroupElement::from_word(&a1, &[0]).order(), 2);
        let other = arc("G2");
        assert_eq!(x.compose(&GroupElement::identity(&other)), Err(Error::MixedRootSystems));
    }

    #[test]
    fn matrices() {
        let b2 = arc("B2");
        assert_eq!(GroupElement::identity(&b2).matrix(), QMatrix::identity(2));
        // -1 = s_{e1} s_{e2}
        let e1 = b2.index_of(&[q(1), q(0)]).unwrap();
        let e2 = b2.index_of(&[q(0), q(1)]).unwrap();
        let minus = GroupElement::reflection(&b2, e1).mul(&GroupElement::reflection(&b2, e2));
        assert_eq!(minus.matrix(), QMatrix::identity(2).scale(q(-1)));
        assert_eq!(minus.trace(), q(-2));
        for s in ["A4", "D5", "E7"] {
            let rs = arc(s);
            for r in 0..rs.num_positive() {
                assert_eq!(GroupElement::reflection(&rs, r).trace(), q(rs.rank() as i64 - 2));
            }
        }
    }

    #[test]
    fn matrix_is_multiplicative_and_orthogonal() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for s in ["B3", "F4", "E6", "A2xG2"] {
            let rs = arc(s);
            let gram = rs.simple_gram();
            for _ in 0..20 {
                let w1: Vec<usize> = (0..12).map(|_| rng.gen_range(0..rs.rank())).collect();
                let w2: Vec<usize> = (0..12).map(|_| rng.gen_range(0..rs.rank())).collect();
                let x = GroupElement::from_word(&rs, &w1);
                let y = GroupElement::from_word(&rs, &w2);
                assert_eq!(x.compose(&y).unwrap().matrix(), x.matrix().mul(&y.matrix()));
                let m = x.matrix();
                assert_eq!(m.transpose().mul(&gram).mul(&m), gram);
                assert_eq!(GroupElement::from_images(&rs, x.images().to_vec()).unwrap(), x);
            }
        }
    }

    #[test]
    fn from_images_rejects_bad_permutations() {
        let rs = arc("B2");
        let mut p: Perm = (0..8).collect();
        p.swap(0, 1);
        assert!(GroupElement::from_images(&rs, p).is_err());
        // swapping a short root with a long one, consistently with negation
        let mut p: Perm = (0..8).collect();
        p.swap(0, 1);
        p.swap(4, 5);
        assert!(GroupElement::from_images(&rs, p).is_err());
    }

    #[test]
    fn orders_match_enumeration() {
        for s in ["A1", "A2", "A3", "B2", "B3", "C3", "G2", "A1xA2", "A4", "B4", "D4", "F4"] {
            let rs = arc(s);
            assert_eq!(group_order(&rs), enumerate_elements(&rs).len() as u128, "{s}");
        }
        assert_eq!(group_order(&arc("A2")), 6);
        assert_eq!(group_order(&arc("G2")), 12);
    }

    #[test]
    fn exceptional_orders() {
        assert_eq!(group_order(&arc("E6")), 51_840);
        assert_eq!(group_order(&arc("E7")), 2_903_040);
        assert_eq!(group_order(&arc("E8")), 696_729_600);
        assert_eq!(group_order(&arc("D5")), 1_920);
    }
}
