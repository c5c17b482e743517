use std::sync::Arc;

use serde::Serialize;

use super::{parse_representation, Representation};
use crate::atlas::builtin_reductions;
use crate::atlas::InvolutionClass;
use crate::error::{Error, Result};
use crate::rational::Q;
use crate::root_system::{find_subsystem, Family, RootSystem, TypeSpec};
use crate::weyl::GroupElement;

/// Types and degrees where two involution classes of the same degree are
/// hard to separate with Stiefel–Whitney classes.
pub fn builtin_hard_cases() -> [(&'static str, usize); 4] {
    [("D6", 3), ("E7", 3), ("E7", 4), ("E8", 4)]
}

/// Limits for the catalogue scan.
#[derive(Debug, Clone, Serialize)]
pub struct Budget {
    /// Highest exterior power of the reflection representation.
    pub max_exterior: usize,
    /// Also scan pairwise direct sums and tensor products.
    pub combinations: bool,
    /// Stop after this many catalogue entries; the report is then partial.
    pub max_entries: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_exterior: 4, combinations: true, max_entries: 10_000 }
    }
}

/// Subsystem types whose conjugates give the permutation entries of the
/// catalogue. Only irreducible types get any.
fn catalogue_subsystems(spec: &TypeSpec) -> Vec<TypeSpec> {
    let name = spec.to_string();
    let mut out: Vec<String> =
        builtin_reductions().iter().filter(|(g, _)| *g == name).map(|(_, s)| s.to_string()).collect();
    if let [f] = spec.factors.as_slice() {
        let n = f.rank;
        let extra: Vec<String> = match f.family {
            Family::A if n >= 2 => vec![format!("A{}", n - 1)],
            Family::B if n >= 3 => vec![format!("B{}", n - 1)],
            Family::C if n >= 3 => vec![format!("C{}", n - 1)],
            Family::D if n >= 5 => vec![format!("A{}", n - 1), format!("D{}", n - 1)],
            Family::D if n == 4 => vec!["A3".into()],
            Family::E if n == 6 => vec!["A1xA5".into()],
            Family::E if n == 7 => vec!["E6".into(), "A7".into()],
            Family::E if n == 8 => vec!["E7".into(), "A8".into()],
            Family::G => vec!["A2".into()],
            _ => vec![],
        };
        out.extend(extra);
    }
    out.iter().filter_map(|s| s.parse().ok()).collect()
}

/// Base catalogue: reflection, sign, root permutation, exterior powers and
/// permutation representations on subsystem conjugates.
pub fn default_catalogue(rs: &Arc<RootSystem>, budget: &Budget) -> Result<Vec<Representation>> {
    let mut reps = vec![Representation::coxeter(rs), Representation::sign(rs), Representation::root_permutation(rs)];
    for k in 2..=budget.max_exterior.min(rs.rank()) {
        reps.push(Representation::exterior_power(rs, k)?);
    }
    for sub_type in catalogue_subsystems(rs.spec()) {
        if let Some(sub) = find_subsystem(rs, &sub_type)? {
            reps.push(Representation::subsystem_cosets(&sub));
        }
    }
    Ok(reps)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GapHit {
    pub rep: String,
    pub dim: usize,
    pub gap: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Findings {
    pub group: String,
    pub degree: usize,
    pub pair: [String; 2],
    pub target: i64,
    pub hits: Vec<GapHit>,
    pub catalogue_size: usize,
    pub partial: bool,
}

fn integer(x: Q) -> Result<i64> {
    if x.is_integer() {
        Ok(*x.numer())
    } else {
        Err(Error::Internal(format!("non-integral character value {x}")))
    }
}

/// `χ(σ) − χ(σ′)` on the class representatives.
pub fn character_gap(rho: &Representation, a: &InvolutionClass, b: &InvolutionClass) -> Result<i64> {
    Ok(integer(rho.character(a.representative.element()))? - integer(rho.character(b.representative.element()))?)
}

/// Scans the catalogue, extended by the permutation representations on the
/// conjugates of both splitting cubes (and, within budget, pairwise sums and tensor
/// products) for representations whose character gap on the two classes
/// is `±2^n`. Each hit is recomputed from its descriptor on conjugated
/// representatives before it is reported.
pub fn search_gap(rs: &Arc<RootSystem>, a: &InvolutionClass, b: &InvolutionClass, budget: &Budget) -> Result<Findings> {
    if a.degree != b.degree {
        return Err(Error::Precondition(format!("classes {} and {} have different degrees", a.id, b.id)));
    }
    let n = a.degree;
    let target = 1i64 << n;
    let mut base = default_catalogue(rs, budget)?;
    for cls in [a, b] {
        base.push(Representation::generated_cosets(rs, cls.splitting.roots())?);
    }
    let values: Vec<(i64, i64)> = base
        .iter()
        .map(|r| {
            Ok((integer(r.character(a.representative.element()))?, integer(r.character(b.representative.element()))?))
        })
        .collect::<Result<_>>()?;

    // (descriptor, dim, chi(a), chi(b)) in a fixed order
    let mut entries: Vec<(String, usize, i64, i64)> =
        base.iter().zip(&values).map(|(r, &(x, y))| (r.descriptor(), r.dim(), x, y)).collect();
    if budget.combinations {
        let wrap = |r: &Representation| {
            let d = r.descriptor();
            if d.contains('+') {
                format!("({d})")
            } else {
                d
            }
        };
        for i in 0..base.len() {
            for j in i + 1..base.len() {
                entries.push((
                    format!("{}+{}", base[i].descriptor(), base[j].descriptor()),
                    base[i].dim() + base[j].dim(),
                    values[i].0 + values[j].0,
                    values[i].1 + values[j].1,
                ));
            }
        }
        for i in 0..base.len() {
            for j in i..base.len() {
                entries.push((
                    format!("{}*{}", wrap(&base[i]), wrap(&base[j])),
                    base[i].dim() * base[j].dim(),
                    values[i].0 * values[j].0,
                    values[i].1 * values[j].1,
                ));
            }
        }
    }
    let partial = entries.len() > budget.max_entries;
    entries.truncate(budget.max_entries);

    let probes = conjugating_words(rs);
    let mut hits = Vec::new();
    for (desc, dim, x, y) in &entries {
        let gap = x - y;
        if gap.abs() != target {
            continue;
        }
        let rho = parse_representation(rs, desc)?;
        for w in &probes {
            let ga = a.representative.element().conjugate_by(w)?;
            let gb = b.representative.element().conjugate_by(w)?;
            let recomputed = integer(rho.character(&ga))? - integer(rho.character(&gb))?;
            if recomputed != gap || rho.dim() != *dim {
                return Err(Error::Internal(format!("gap of {desc} does not recompute ({recomputed} vs {gap})")));
            }
        }
        hits.push(GapHit { rep: desc.clone(), dim: *dim, gap });
    }
    Ok(Findings {
        group: rs.spec().to_string(),
        degree: n,
        pair: [a.id.clone(), b.id.clone()],
        target,
        hits,
        catalogue_size: entries.len(),
        partial,
    })
}

/// A few fixed conjugating elements for re-evaluating characters away
/// from the stored representatives.
fn conjugating_words(rs: &Arc<RootSystem>) -> Vec<GroupElement> {
    let r = rs.rank();
    let words: [Vec<usize>; 3] = [(0..r).collect(), (0..r).rev().collect(), (0..r).chain(0..r).step_by(2).collect()];
    words.iter().map(|w| GroupElement::from_word(rs, w)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atlas::classify_involutions;
    use crate::root_system::build_root_system;

    fn arc(s: &str) -> Arc<RootSystem> {
        Arc::new(build_root_system(&s.parse().unwrap()).unwrap())
    }

    #[test]
    fn trivial_gaps() {
        let rs = arc("B3");
        let classes = classify_involutions(&rs).unwrap();
        let triv = Representation::trivial(&rs, 4);
        assert_eq!(character_gap(&triv, &classes[1], &classes[2]).unwrap(), 0);
        let cox = Representation::coxeter(&rs);
        for c in &classes {
            assert_eq!(character_gap(&cox, c, c).unwrap(), 0);
        }
    }

    #[test]
    fn mismatched_degrees_rejected() {
        let rs = arc("B3");
        let classes = classify_involutions(&rs).unwrap();
        let (a, b) = (&classes[0], &classes[classes.len() - 1]);
        assert!(matches!(search_gap(&rs, a, b, &Budget::default()), Err(Error::Precondition(_))));
    }

    #[test]
    fn d6_scan_is_deterministic_and_verified() {
        let rs = arc("D6");
        let classes = classify_involutions(&rs).unwrap();
        let deg3: Vec<_> = classes.iter().filter(|c| c.degree == 3).collect();
        let budget = Budget { max_exterior: 3, ..Budget::default() };
        let f1 = search_gap(&rs, deg3[0], deg3[1], &budget).unwrap();
        let f2 = search_gap(&rs, deg3[0], deg3[1], &budget).unwrap();
        assert_eq!(f1, f2);
        assert_eq!(f1.target, 8);
        for h in &f1.hits {
            let rho = parse_representation(&rs, &h.rep).unwrap();
            assert_eq!(character_gap(&rho, deg3[0], deg3[1]).unwrap(), h.gap);
            assert_eq!(h.gap.abs(), 8);
        }
    }

    #[test]
    fn partial_budget_is_flagged() {
        let rs = arc("E6");
        let classes = classify_involutions(&rs).unwrap();
        let budget = Budget { max_entries: 3, ..Budget::default() };
        let f = search_gap(&rs, &classes[1], &classes[1], &budget).unwrap();
        assert!(f.partial);
        assert_eq!(f.catalogue_size, 3);
    }
}
