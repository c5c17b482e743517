use std::sync::Arc;

use super::{Cube, ImageKey, RootMask, MAX_POSITIVE_ROOTS};
use crate::error::{Error, Result};
use crate::root_system::RootSystem;

/// Orthogonality graph on positive roots as bitset adjacency.
pub(crate) fn orthogonality_masks(rs: &RootSystem) -> Result<Vec<RootMask>> {
    let n = rs.num_positive();
    if n > MAX_POSITIVE_ROOTS {
        return Err(Error::Unsupported(format!(
            "{} has {n} positive roots; at most {MAX_POSITIVE_ROOTS} are supported",
            rs.spec()
        )));
    }
    Ok((0..n).map(|a| RootMask::from_indices((0..n).filter(|&b| b != a && rs.orthogonal(a, b)))).collect())
}

/// Visits every cube (clique of the orthogonality graph, the empty one
/// included) exactly once, in depth-first order with increasing root
/// indices. The callback also receives the image key of the cube's
/// involution, maintained incrementally: adding root `r` maps every simple
/// root image through `s_r`.
pub fn for_each_cube<F>(rs: &RootSystem, mut visit: F) -> Result<()>
where
    F: FnMut(&[usize], &ImageKey),
{
    let adj = orthogonality_masks(rs)?;
    let all = RootMask::from_indices(0..rs.num_positive());
    let key: ImageKey = rs.simple_roots().iter().map(|&s| s as u16).collect();
    let mut clique = Vec::with_capacity(rs.rank());
    walk(rs, &adj, &mut clique, all, &key, &mut visit);
    Ok(())
}

/// Same walk restricted to cubes whose smallest root is `first`.
pub(crate) fn for_each_cube_from<F>(rs: &RootSystem, adj: &[RootMask], first: usize, mut visit: F)
where
    F: FnMut(&[usize], &ImageKey),
{
    let base: ImageKey = rs.simple_roots().iter().map(|&s| s as u16).collect();
    let perm = rs.reflection_perm(first);
    let key: ImageKey = base.iter().map(|&i| perm[i as usize]).collect();
    let mut clique = vec![first];
    walk(rs, adj, &mut clique, adj[first].above(first), &key, &mut visit);
}

fn walk<F>(rs: &RootSystem, adj: &[RootMask], clique: &mut Vec<usize>, cand: RootMask, key: &ImageKey, visit: &mut F)
where
    F: FnMut(&[usize], &ImageKey),
{
    visit(clique, key);
    for v in cand.iter() {
        let perm = rs.reflection_perm(v);
        let next: ImageKey = key.iter().map(|&i| perm[i as usize]).collect();
        clique.push(v);
        walk(rs, adj, clique, cand.and(&adj[v]).above(v), &next, visit);
        clique.pop();
    }
}

/// All cubes of `rs`, the empty cube first, in depth-first order.
pub fn enumerate_cubes(rs: &Arc<RootSystem>) -> Vec<Cube> {
    let mut out = Vec::new();
    for_each_cube(rs, |c, _| out.push(Cube { roots: c.to_vec(), home: Arc::clone(rs) }))
        .expect("root system too large for cube enumeration");
    out
}
