use std::collections::HashMap;
use std::hash::Hash;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::error::{Error, Result};

/// Connected components of a key set under a generator action.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    /// Class index of every item.
    pub class_of: Vec<usize>,
    /// Item indices of each class, ascending.
    pub classes: Vec<Vec<usize>>,
    /// Item index of the minimal key of each class.
    pub representatives: Vec<usize>,
}

impl Partition {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
}

/// Partitions `items` into orbits of the group generated by `generators`
/// actions. `act(g, key)` must return a key that is again in `items`.
///
/// Classes are ordered by their minimal key, which is also the class
/// representative. Images are computed in parallel; the result does not
/// depend on the thread count.
pub fn orbit_partition<K, F>(items: &[K], generators: usize, act: F) -> Result<Partition>
where
    K: Hash + Eq + Ord + Sync,
    F: Fn(usize, &K) -> K + Sync,
{
    let index: HashMap<&K, usize> = items.iter().enumerate().map(|(i, k)| (k, i)).collect();
    if index.len() != items.len() {
        return Err(Error::Precondition("orbit_partition: duplicate keys".into()));
    }
    let image_row = |i: usize| -> Result<Vec<u32>> {
        (0..generators)
            .map(|g| {
                index.get(&act(g, &items[i])).map(|&j| j as u32).ok_or(Error::OrbitEscape { item: i, generator: g })
            })
            .collect()
    };
    #[cfg(feature = "parallel")]
    let images: Vec<Vec<u32>> = (0..items.len()).into_par_iter().map(image_row).collect::<Result<_>>()?;
    #[cfg(not(feature = "parallel"))]
    let images: Vec<Vec<u32>> = (0..items.len()).map(image_row).collect::<Result<_>>()?;

    let mut comp = vec![usize::MAX; items.len()];
    let mut members: Vec<Vec<usize>> = Vec::new();
    for start in 0..items.len() {
        if comp[start] != usize::MAX {
            continue;
        }
        let c = members.len();
        comp[start] = c;
        let mut stack = vec![start];
        let mut list = Vec::new();
        while let Some(i) = stack.pop() {
            list.push(i);
            for &j in &images[i] {
                let j = j as usize;
                if comp[j] == usize::MAX {
                    comp[j] = c;
                    stack.push(j);
                }
            }
        }
        list.sort_unstable();
        members.push(list);
    }
    let mins: Vec<usize> =
        members.iter().map(|m| *m.iter().min_by(|&&a, &&b| items[a].cmp(&items[b])).expect("empty class")).collect();
    let mut order: Vec<usize> = (0..members.len()).collect();
    order.sort_by(|&a, &b| items[mins[a]].cmp(&items[mins[b]]));
    let mut renumber = vec![0; members.len()];
    for (new, &old) in order.iter().enumerate() {
        renumber[old] = new;
    }
    let class_of = comp.iter().map(|&c| renumber[c]).collect();
    let representatives = order.iter().map(|&c| mins[c]).collect();
    let classes = order.into_iter().map(|c| std::mem::take(&mut members[c])).collect();
    Ok(Partition { class_of, classes, representatives })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_system::build_root_system;

    #[test]
    fn singleton() {
        let p = orbit_partition(&[7u32], 2, |_, &k| k).unwrap();
        assert_eq!(p.classes, vec![vec![0]]);
        assert_eq!(p.representatives, vec![0]);
    }

    #[test]
    fn cyclic_action() {
        let items: Vec<u32> = (0..10).rev().collect();
        // +2 mod 10 splits into evens and odds
        let p = orbit_partition(&items, 1, |_, &k| (k + 2) % 10).unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(items[p.representatives[0]], 0);
        assert_eq!(items[p.representatives[1]], 1);
    }

    #[test]
    fn escape_is_an_error() {
        let err = orbit_partition(&[1u32, 2], 1, |_, &k| k + 1).unwrap_err();
        assert_eq!(err, Error::OrbitEscape { item: 1, generator: 0 });
    }

    fn reflection_classes(s: &str) -> usize {
        let rs = build_root_system(&s.parse().unwrap()).unwrap();
        let roots: Vec<usize> = (0..rs.num_positive()).collect();
        let p = orbit_partition(&roots, rs.rank(), |g, &r| {
            rs.positive_of(rs.reflection_perm(rs.simple_roots()[g])[r] as usize)
        })
        .unwrap();
        p.len()
    }

    #[test]
    fn reflection_conjugacy() {
        assert_eq!(reflection_classes("E8"), 1);
        assert_eq!(reflection_classes("G2"), 2);
        assert_eq!(reflection_classes("B3"), 2);
        assert_eq!(reflection_classes("A1xA2"), 2);
    }
}
