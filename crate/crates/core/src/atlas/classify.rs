use std::collections::HashMap;
use std::sync::Arc;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use super::enumerate::{for_each_cube_from, orthogonality_masks};
use super::{
    eigenspace_key_from_rows, element_from_image_key, split_involution, Cube, EigenKey, ImageKey, Involution, RootMask,
};
use crate::error::{Error, Result};
use crate::root_system::RootSystem;
use crate::weyl::{group_order, orbit_partition};

/// A conjugacy class of involutions.
#[derive(Debug, Clone)]
pub struct InvolutionClass {
    /// Degree followed by a letter, e.g. `4a`, `4b`.
    pub id: String,
    pub degree: usize,
    pub size: u64,
    /// Member with the smallest eigenspace key.
    pub representative: Involution,
    /// Greedy splitting of the representative.
    pub splitting: Cube,
}

#[derive(Debug, Clone)]
pub struct CubeClass {
    pub id: String,
    /// Number of roots of each member.
    pub rank: usize,
    /// Number of cubes in the class.
    pub size: u64,
    pub representative: Cube,
}

/// Every cube with its class.
#[derive(Debug, Clone)]
pub struct CubeClassification {
    pub cubes: Vec<RootMask>,
    pub class_of: Vec<u32>,
    pub classes: Vec<CubeClass>,
}

/// Everything computed for one root system.
#[derive(Debug, Clone)]
pub struct Atlas {
    pub rs: Arc<RootSystem>,
    pub group_order: u128,
    pub involution_count: u64,
    pub involution_classes: Vec<InvolutionClass>,
    pub cube_classes: Vec<CubeClass>,
}

impl Atlas {
    pub fn compute(rs: &Arc<RootSystem>) -> Result<Atlas> {
        let (involutions, cubes) = collect(rs, true)?;
        let involution_count = involutions.len() as u64;
        let involution_classes = classify_involution_keys(rs, involutions)?;
        let cube_classes = classify_cube_masks(rs, cubes)?.classes;
        Ok(Atlas {
            rs: Arc::clone(rs),
            group_order: group_order(rs),
            involution_count,
            involution_classes,
            cube_classes,
        })
    }

    pub fn class(&self, id: &str) -> Option<&InvolutionClass> {
        self.involution_classes.iter().find(|c| c.id == id)
    }

    /// Class degrees in class order.
    pub fn degrees(&self) -> Vec<usize> {
        self.involution_classes.iter().map(|c| c.degree).collect()
    }
}

type Collected = (Vec<(ImageKey, u8)>, Vec<RootMask>);

/// One pass over all cubes: the distinct involutions (with degrees) and,
/// optionally, every cube as a mask. Both outputs are sorted.
fn collect(rs: &RootSystem, want_cubes: bool) -> Result<Collected> {
    let adj = orthogonality_masks(rs)?;
    let per_root = |first: usize| -> Result<(HashMap<ImageKey, u8>, Vec<RootMask>)> {
        let mut invs: HashMap<ImageKey, u8> = HashMap::new();
        let mut cubes = Vec::new();
        let mut bad = None;
        for_each_cube_from(rs, &adj, first, |c, key| {
            let d = c.len() as u8;
            if let Some(&old) = invs.get(key) {
                if old != d {
                    bad = Some(Error::Internal(format!("cubes of sizes {old} and {d} give the same involution")));
                }
            } else {
                invs.insert(key.clone(), d);
            }
            if want_cubes {
                cubes.push(RootMask::from_indices(c.iter().copied()));
            }
        });
        match bad {
            Some(e) => Err(e),
            None => Ok((invs, cubes)),
        }
    };
    #[cfg(feature = "parallel")]
    let parts: Vec<_> = (0..rs.num_positive()).into_par_iter().map(per_root).collect::<Result<_>>()?;
    #[cfg(not(feature = "parallel"))]
    let parts: Vec<_> = (0..rs.num_positive()).map(per_root).collect::<Result<_>>()?;

    let identity: ImageKey = rs.simple_roots().iter().map(|&s| s as u16).collect();
    let mut merged: HashMap<ImageKey, u8> = HashMap::from([(identity, 0)]);
    let mut cubes = vec![RootMask::EMPTY];
    for (invs, cs) in parts {
        for (k, d) in invs {
            if let Some(&old) = merged.get(&k) {
                if old != d {
                    return Err(Error::Internal("inconsistent involution degrees".into()));
                }
            } else {
                merged.insert(k, d);
            }
        }
        cubes.extend(cs);
    }
    let mut invs: Vec<(ImageKey, u8)> = merged.into_iter().collect();
    invs.sort_unstable();
    cubes.sort_unstable();
    Ok((invs, cubes))
}

/// Conjugation of an involution (as simple-root images) by a simple reflection:
/// `(s g s)(a_k) = s(g(s(a_k)))`, and `g(s_j(a_k)) = s_{g(a_j)}(g(a_k))`.
fn conjugate_key(rs: &RootSystem, j: usize, key: &ImageKey) -> ImageKey {
    let s = rs.reflection_perm(rs.simple_roots()[j]);
    let mirror = rs.reflection_perm(key[j] as usize);
    key.iter().map(|&gk| s[mirror[gk as usize] as usize]).collect()
}

fn eigen_key_of(rs: &RootSystem, key: &ImageKey) -> EigenKey {
    let rows: Vec<Vec<_>> = rs
        .simple_roots()
        .iter()
        .zip(key)
        .map(|(&s, &img)| rs.root(s).coords.iter().zip(&rs.root(img as usize).coords).map(|(a, b)| a - b).collect())
        .collect();
    eigenspace_key_from_rows(&rows)
}

fn letter_ids<T>(items: &[T], degree: impl Fn(&T) -> usize) -> Vec<String> {
    let mut counters: HashMap<usize, usize> = HashMap::new();
    items
        .iter()
        .map(|it| {
            let d = degree(it);
            let c = counters.entry(d).or_insert(0);
            let id = format!("{d}{}", letter(*c));
            *c += 1;
            id
        })
        .collect()
}

fn letter(i: usize) -> String {
    let mut s = String::new();
    let mut i = i;
    loop {
        s.insert(0, (b'a' + (i % 26) as u8) as char);
        if i < 26 {
            break;
        }
        i = i / 26 - 1;
    }
    s
}

fn classify_involution_keys(rs: &Arc<RootSystem>, involutions: Vec<(ImageKey, u8)>) -> Result<Vec<InvolutionClass>> {
    let (keys, degrees): (Vec<ImageKey>, Vec<u8>) = involutions.into_iter().unzip();
    let partition = orbit_partition(&keys, rs.rank(), |j, k| conjugate_key(rs, j, k))?;
    #[cfg(feature = "parallel")]
    let eigen: Vec<EigenKey> = keys.par_iter().map(|k| eigen_key_of(rs, k)).collect();
    #[cfg(not(feature = "parallel"))]
    let eigen: Vec<EigenKey> = keys.iter().map(|k| eigen_key_of(rs, k)).collect();

    let mut classes = Vec::with_capacity(partition.len());
    for members in &partition.classes {
        let degree = degrees[members[0]] as usize;
        if members.iter().any(|&m| degrees[m] as usize != degree || eigen[m].dim() != degree) {
            return Err(Error::Internal("degree is not constant on a conjugacy class".into()));
        }
        let rep = *members.iter().min_by(|&&a, &&b| eigen[a].cmp(&eigen[b])).expect("empty class");
        let element = element_from_image_key(rs, &keys[rep])?;
        let representative = Involution::new(element)?;
        let splitting = split_involution(&representative)?;
        classes.push(InvolutionClass {
            id: String::new(),
            degree,
            size: members.len() as u64,
            representative,
            splitting,
        });
    }
    classes.sort_by(|a, b| {
        (a.degree, a.size, a.representative.eigenspace_key()).cmp(&(
            b.degree,
            b.size,
            b.representative.eigenspace_key(),
        ))
    });
    let ids = letter_ids(&classes, |c| c.degree);
    for (c, id) in classes.iter_mut().zip(ids) {
        c.id = id;
    }
    Ok(classes)
}

fn classify_cube_masks(rs: &Arc<RootSystem>, cubes: Vec<RootMask>) -> Result<CubeClassification> {
    let partition = orbit_partition(&cubes, rs.rank(), |j, m| {
        let s = rs.reflection_perm(rs.simple_roots()[j]);
        RootMask::from_indices(m.iter().map(|r| rs.positive_of(s[r] as usize)))
    })?;
    let mut order: Vec<usize> = (0..partition.len()).collect();
    let rank_of = |c: usize| cubes[partition.representatives[c]].len();
    order.sort_by(|&a, &b| {
        let ka =
            (rank_of(a), partition.classes[a].len(), cubes[partition.representatives[a]].iter().collect::<Vec<_>>());
        let kb =
            (rank_of(b), partition.classes[b].len(), cubes[partition.representatives[b]].iter().collect::<Vec<_>>());
        ka.cmp(&kb)
    });
    let mut renumber = vec![0u32; order.len()];
    let mut classes = Vec::with_capacity(order.len());
    for (new, &old) in order.iter().enumerate() {
        renumber[old] = new as u32;
        let rep = &cubes[partition.representatives[old]];
        classes.push(CubeClass {
            id: String::new(),
            rank: rep.len(),
            size: partition.classes[old].len() as u64,
            representative: Cube::from_mask(rs, rep),
        });
    }
    let ids = letter_ids(&classes, |c| c.rank);
    for (c, id) in classes.iter_mut().zip(ids) {
        c.id = id;
    }
    let class_of = partition.class_of.iter().map(|&c| renumber[c]).collect();
    Ok(CubeClassification { cubes, class_of, classes })
}

/// Conjugacy classes of involutions (the identity included), sorted by
/// degree, size and eigenspace key.
pub fn classify_involutions(rs: &Arc<RootSystem>) -> Result<Vec<InvolutionClass>> {
    let (involutions, _) = collect(rs, false)?;
    classify_involution_keys(rs, involutions)
}

/// Conjugacy classes of cubes under the Weyl group.
pub fn classify_cubes(rs: &Arc<RootSystem>) -> Result<CubeClassification> {
    let (_, cubes) = collect(rs, true)?;
    classify_cube_masks(rs, cubes)
}
