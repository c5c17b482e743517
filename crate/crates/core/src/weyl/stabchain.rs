use std::sync::Arc;

use super::{perm_compose, perm_inverse, perm_is_identity, Perm};
use crate::root_system::RootSystem;

struct Level {
    base: usize,
    gens: Vec<Perm>,
    orbit: Vec<usize>,
    /// `trans[p]` maps the base point to `p`; `trans_inv[p]` is its inverse.
    trans: Vec<Option<Perm>>,
    trans_inv: Vec<Option<Perm>>,
}

/// Stabilizer chain for a permutation group on root indices, built with the
/// deterministic Schreier–Sims algorithm over a fixed base.
///
/// The base must have trivial pointwise stabilizer in the group; for Weyl
/// groups and their reflection subgroups the simple roots qualify.
pub struct StabChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabChain {
    pub fn new(degree: usize, base: Vec<usize>, gens: &[Perm]) -> StabChain {
        let levels = base
            .into_iter()
            .map(|b| {
                let mut trans = vec![None; degree];
                let mut trans_inv = vec![None; degree];
                let id: Perm = (0..degree as u16).collect();
                trans[b] = Some(id.clone());
                trans_inv[b] = Some(id);
                Level { base: b, gens: Vec::new(), orbit: vec![b], trans, trans_inv }
            })
            .collect();
        let mut chain = StabChain { degree, levels };
        for g in gens {
            chain.sift_and_add(0, g.clone());
        }
        chain
    }

    pub fn for_weyl_group(rs: &Arc<RootSystem>) -> StabChain {
        let gens: Vec<Perm> = rs.simple_roots().iter().map(|&s| rs.reflection_perm(s).to_vec()).collect();
        StabChain::new(rs.num_roots(), rs.simple_roots().to_vec(), &gens)
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn transversal_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit.len() as u128).product()
    }

    /// Sifts `g` from `from`; returns the residue and the level at which it
    /// left the chain (`levels.len()` if it passed every level).
    fn sift(&self, mut g: Perm, from: usize) -> (Perm, usize) {
        for (k, level) in self.levels.iter().enumerate().skip(from) {
            let p = g[level.base] as usize;
            match &level.trans_inv[p] {
                Some(u_inv) => g = perm_compose(u_inv, &g),
                None => return (g, k),
            }
        }
        (g, self.levels.len())
    }

    pub fn contains(&self, g: &[u16]) -> bool {
        if g.len() != self.degree {
            return false;
        }
        let (residue, _) = self.sift(g.to_vec(), 0);
        perm_is_identity(&residue)
    }

    fn sift_and_add(&mut self, from: usize, g: Perm) {
        let (h, j) = self.sift(g, from);
        if perm_is_identity(&h) {
            return;
        }
        assert!(j < self.levels.len(), "base has a nontrivial pointwise stabilizer");
        for level in (from..=j).rev() {
            self.add_generator(level, h.clone());
        }
    }

    fn add_generator(&mut self, k: usize, h: Perm) {
        let level = &mut self.levels[k];
        level.gens.push(h);
        let new_gen = level.gens.len() - 1;
        let mut pending: Vec<(usize, usize)> = level.orbit.iter().map(|&p| (p, new_gen)).collect();
        while let Some((p, gi)) = pending.pop() {
            let has_next = k + 1 < self.levels.len();
            let level = &mut self.levels[k];
            let s = &level.gens[gi];
            let img = s[p] as usize;
            let u_p = level.trans[p].as_ref().expect("orbit point without transversal");
            let s_u = perm_compose(s, u_p);
            if level.trans[img].is_none() {
                level.trans_inv[img] = Some(perm_inverse(&s_u));
                level.trans[img] = Some(s_u);
                level.orbit.push(img);
                pending.extend((0..level.gens.len()).map(|g| (img, g)));
            } else if has_next {
                let schreier = perm_compose(level.trans_inv[img].as_ref().unwrap(), &s_u);
                if !perm_is_identity(&schreier) {
                    self.sift_and_add(k + 1, schreier);
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_system::build_root_system;
    use crate::weyl::GroupElement;
    use rand::{Rng, SeedableRng};

    #[test]
    fn membership() {
        let rs = Arc::new(build_root_system(&"F4".parse().unwrap()).unwrap());
        let chain = StabChain::for_weyl_group(&rs);
        assert_eq!(chain.order(), 1152);
        assert_eq!(chain.base(), rs.simple_roots());
        assert_eq!(chain.transversal_sizes().iter().product::<usize>(), 1152);
        let n = rs.num_roots();
        assert!(chain.contains(&(0..n as u16).collect::<Vec<_>>()));
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let word: Vec<usize> = (0..20).map(|_| rng.gen_range(0..4)).collect();
            assert!(chain.contains(GroupElement::from_word(&rs, &word).images()));
        }
        // a transposition of two roots does not preserve the root system structure
        let mut bad: Vec<u16> = (0..n as u16).collect();
        bad.swap(0, 1);
        assert!(!chain.contains(&bad));
    }
}
