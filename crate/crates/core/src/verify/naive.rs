use std::collections::HashSet;
use std::sync::Arc;

use crate::root_system::RootSystem;
use crate::weyl::{enumerate_elements, Perm};

/// A conjugacy class of involutions found by brute force.
#[derive(Debug, Clone)]
pub struct NaiveClass {
    pub degree: usize,
    pub size: u64,
    /// Root permutations of all members, sorted.
    pub members: Vec<Perm>,
}

/// Lists every element, keeps those with `g² = 1` and splits them into
/// classes by conjugating with every element. Only for small groups.
pub fn naive_involution_classes(rs: &Arc<RootSystem>) -> Vec<NaiveClass> {
    let elements = enumerate_elements(rs);
    let involutions: Vec<_> = elements.iter().filter(|g| g.is_involution()).collect();
    let mut assigned: HashSet<Perm> = HashSet::new();
    let mut classes = Vec::new();
    for x in involutions {
        if assigned.contains(x.images()) {
            continue;
        }
        let mut members: Vec<Perm> = elements
            .iter()
            .map(|w| x.conjugate_by(w).expect("same root system").images().to_vec())
            .collect::<HashSet<_>>()
            .into_iter()
            .collect();
        members.sort_unstable();
        assigned.extend(members.iter().cloned());
        let degree = x.involution_degree().expect("involution");
        classes.push(NaiveClass { degree, size: members.len() as u64, members });
    }
    classes.sort_by_key(|c| (c.degree, c.size));
    classes
}
