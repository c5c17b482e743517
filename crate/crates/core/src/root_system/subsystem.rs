use std::collections::VecDeque;
use std::sync::Arc;

use super::{build_root_system, RootSystem, TypeSpec};
use crate::error::Result;

/// A set of ambient roots realizing the simple roots of a sub-root system.
#[derive(Debug, Clone)]
pub struct SubsystemEmbedding {
    pub ambient: Arc<RootSystem>,
    pub sub_type: TypeSpec,
    /// Ambient root indices, one per simple root of `sub_type` (in its Bourbaki order).
    pub sub_simple_roots: Vec<usize>,
    /// All ambient roots in the reflection closure of `sub_simple_roots`, sorted.
    pub closure: Vec<usize>,
}

impl SubsystemEmbedding {
    /// Sorted positive ambient roots lying in the closure.
    pub fn positive_closure(&self) -> Vec<usize> {
        self.closure.iter().copied().filter(|&i| self.ambient.is_positive(i)).collect()
    }
}

/// Orbit of a set of roots under the group generated by their reflections.
pub fn root_closure(rs: &RootSystem, gens: &[usize]) -> Vec<usize> {
    let mut inside = vec![false; rs.num_roots()];
    let mut queue = VecDeque::new();
    for &g in gens {
        for r in [g, rs.negative(g)] {
            if !inside[r] {
                inside[r] = true;
                queue.push_back(r);
            }
        }
    }
    while let Some(r) = queue.pop_front() {
        for &m in gens {
            let img = rs.reflection_perm(m)[r] as usize;
            if !inside[img] {
                inside[img] = true;
                queue.push_back(img);
            }
        }
    }
    (0..rs.num_roots()).filter(|&i| inside[i]).collect()
}

/// Order in which target simple roots are placed: breadth-first through
/// each Dynkin component, so every placed root after the first of its
/// component is adjacent to an earlier one.
fn placement_order(cartan: &[Vec<i64>]) -> Vec<usize> {
    let k = cartan.len();
    let mut order = Vec::with_capacity(k);
    let mut placed = vec![false; k];
    for start in 0..k {
        if placed[start] {
            continue;
        }
        placed[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            order.push(i);
            for j in 0..k {
                if !placed[j] && cartan[i][j] != 0 {
                    placed[j] = true;
                    queue.push_back(j);
                }
            }
        }
    }
    order
}

/// Representatives of the Weyl group orbits on roots (smallest index per orbit).
fn root_orbit_representatives(rs: &RootSystem) -> Vec<usize> {
    let n = rs.num_roots();
    let mut seen = vec![false; n];
    let mut reps = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        reps.push(start);
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(r) = queue.pop_front() {
            for &s in rs.simple_roots() {
                let img = rs.reflection_perm(s)[r] as usize;
                if !seen[img] {
                    seen[img] = true;
                    queue.push_back(img);
                }
            }
        }
    }
    reps
}

/// Searches for ambient roots with the Cartan matrix of `target`.
///
/// Depth-first over tuples of ambient roots with the partial Cartan matrix
/// checked at every step. The first root is restricted to one representative
/// per Weyl orbit of roots. Returns `Ok(None)` when the exhaustive search fails.
pub fn find_subsystem(rs: &Arc<RootSystem>, target: &TypeSpec) -> Result<Option<SubsystemEmbedding>> {
    let sub = build_root_system(target)?;
    let cartan = sub.cartan_matrix();
    let k = cartan.len();
    let order = placement_order(cartan);
    let first_candidates = root_orbit_representatives(rs);
    let all: Vec<usize> = (0..rs.num_roots()).collect();
    let mut chosen: Vec<usize> = Vec::with_capacity(k);

    fn fits(rs: &RootSystem, cartan: &[Vec<i64>], order: &[usize], chosen: &[usize], r: usize) -> bool {
        let p = order[chosen.len()];
        chosen.iter().enumerate().all(|(slot, &c)| {
            let qi = order[slot];
            r != c
                && 2 * rs.ip2(r, c) == cartan[p][qi] * rs.ip2(c, c)
                && 2 * rs.ip2(c, r) == cartan[qi][p] * rs.ip2(r, r)
        })
    }

    fn search(
        rs: &RootSystem,
        cartan: &[Vec<i64>],
        order: &[usize],
        first: &[usize],
        all: &[usize],
        chosen: &mut Vec<usize>,
    ) -> bool {
        if chosen.len() == order.len() {
            return true;
        }
        let pool = if chosen.is_empty() { first } else { all };
        for &r in pool {
            if fits(rs, cartan, order, chosen, r) {
                chosen.push(r);
                if search(rs, cartan, order, first, all, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }

    if !search(rs, cartan, &order, &first_candidates, &all, &mut chosen) {
        return Ok(None);
    }
    let mut sub_simple = vec![0; k];
    for (slot, &p) in order.iter().enumerate() {
        sub_simple[p] = chosen[slot];
    }
    let closure = root_closure(rs, &sub_simple);
    Ok(Some(SubsystemEmbedding {
        ambient: Arc::clone(rs),
        sub_type: target.clone(),
        sub_simple_roots: sub_simple,
        closure,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arc(s: &str) -> Arc<RootSystem> {
        Arc::new(build_root_system(&s.parse().unwrap()).unwrap())
    }

    fn check_embedding(e: &SubsystemEmbedding) {
        let sub = build_root_system(&e.sub_type).unwrap();
        let rs = &e.ambient;
        for (i, &a) in e.sub_simple_roots.iter().enumerate() {
            for (j, &b) in e.sub_simple_roots.iter().enumerate() {
                assert_eq!(rs.cartan_integer(a, b), sub.cartan_matrix()[i][j]);
            }
        }
        assert_eq!(e.closure.len(), sub.num_roots());
        // stable under its own reflections
        for &m in &e.closure {
            for &r in &e.closure {
                let img = rs.reflection_perm(m)[r] as usize;
                assert!(e.closure.binary_search(&img).is_ok());
            }
        }
    }

    #[test]
    fn exceptional_reductions_exist() {
        for (g, h, n) in
            [("E6", "D5", 40), ("E8", "D8", 112), ("F4", "B4", 32), ("G2", "A1xA1", 4), ("E7", "A1xD6", 62)]
        {
            let e = find_subsystem(&arc(g), &h.parse().unwrap()).unwrap().unwrap_or_else(|| panic!("{g} > {h}"));
            assert_eq!(e.closure.len(), n);
            check_embedding(&e);
        }
    }

    #[test]
    fn missing_subsystems() {
        assert!(find_subsystem(&arc("A2"), &"B2".parse().unwrap()).unwrap().is_none());
        assert!(find_subsystem(&arc("A3"), &"A1xA1xA1".parse().unwrap()).unwrap().is_none());
        assert!(find_subsystem(&arc("G2"), &"A2".parse().unwrap()).unwrap().is_some());
    }
}
