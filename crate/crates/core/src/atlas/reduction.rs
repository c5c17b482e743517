use std::sync::Arc;

use serde::Serialize;

use super::{classify_cubes, CubeClassification, RootMask};
use crate::error::Result;
use crate::root_system::{RootSystem, SubsystemEmbedding};
use crate::weyl::{group_order, reflection_subgroup_order};

/// The exceptional types with a classical reflection subgroup of odd index.
pub fn builtin_reductions() -> [(&'static str, &'static str); 5] {
    [("E6", "D5"), ("E7", "A1xD6"), ("E8", "D8"), ("F4", "B4"), ("G2", "A1xA1")]
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CubeCoverage {
    pub class_id: String,
    pub rank: usize,
    pub size: u64,
    pub covered: bool,
    /// A member of the class lying inside the subsystem.
    pub witness: Option<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReductionReport {
    pub group: String,
    pub subgroup: String,
    pub sub_simple_roots: Vec<usize>,
    pub group_order: u128,
    pub subgroup_order: u128,
    pub index: u128,
    pub index_odd: bool,
    pub cube_classes: Vec<CubeCoverage>,
    pub covered: usize,
    pub pass: bool,
}

/// Index of the reflection subgroup and cube-class coverage.
pub fn verify_reduction(rs: &Arc<RootSystem>, sub: &SubsystemEmbedding) -> Result<ReductionReport> {
    let cubes = classify_cubes(rs)?;
    Ok(verify_reduction_with(rs, sub, &cubes))
}

pub fn verify_reduction_with(
    rs: &Arc<RootSystem>,
    sub: &SubsystemEmbedding,
    cubes: &CubeClassification,
) -> ReductionReport {
    let order = group_order(rs);
    let sub_order = reflection_subgroup_order(rs, &sub.sub_simple_roots);
    let inside = RootMask::from_indices(sub.positive_closure());
    let mut witness: Vec<Option<Vec<usize>>> = vec![None; cubes.classes.len()];
    for (mask, &c) in cubes.cubes.iter().zip(&cubes.class_of) {
        let slot = &mut witness[c as usize];
        if slot.is_none() && mask.is_subset(&inside) {
            *slot = Some(mask.iter().collect());
        }
    }
    let coverage: Vec<CubeCoverage> = cubes
        .classes
        .iter()
        .zip(witness)
        .map(|(c, w)| CubeCoverage {
            class_id: c.id.clone(),
            rank: c.rank,
            size: c.size,
            covered: w.is_some(),
            witness: w,
        })
        .collect();
    let covered = coverage.iter().filter(|c| c.covered).count();
    let index = order / sub_order;
    let index_odd = order.is_multiple_of(sub_order) && index % 2 == 1;
    ReductionReport {
        group: rs.spec().to_string(),
        subgroup: sub.sub_type.to_string(),
        sub_simple_roots: sub.sub_simple_roots.clone(),
        group_order: order,
        subgroup_order: sub_order,
        index,
        index_odd,
        pass: index_odd && covered == coverage.len(),
        covered,
        cube_classes: coverage,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_system::{build_root_system, find_subsystem};

    fn report(g: &str, h: &str) -> ReductionReport {
        let rs = Arc::new(build_root_system(&g.parse().unwrap()).unwrap());
        let sub = find_subsystem(&rs, &h.parse().unwrap()).unwrap().unwrap();
        verify_reduction(&rs, &sub).unwrap()
    }

    #[test]
    fn small_reductions() {
        let g2 = report("G2", "A1xA1");
        assert_eq!(g2.index, 3);
        assert!(g2.pass);
        let f4 = report("F4", "B4");
        assert_eq!(f4.index, 3);
        assert!(f4.pass);
        let e6 = report("E6", "D5");
        assert_eq!(e6.index, 27);
        assert!(e6.pass);
    }

    #[test]
    fn even_index_fails() {
        // A1 inside A2 has index 3 but misses nothing; A1xA1 inside B2 has index 2.
        let r = report("B2", "A1xA1");
        assert_eq!(r.index, 2);
        assert!(!r.index_odd);
        assert!(!r.pass);
        let r = report("A3", "A1");
        assert_eq!(r.index, 12);
        assert!(r.covered < r.cube_classes.len());
    }
}
