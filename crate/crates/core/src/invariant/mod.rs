//! Mod-2 cohomological invariants over the universal base F2[t]:
//! restriction of Stiefel–Whitney classes to cubes, the top-coefficient
//! pairing with involution classes, and coordinates in the canonical basis.

mod base_poly;
mod cube_algebra;
mod expr;

use std::collections::HashMap;
use std::sync::Arc;

use num_traits::Zero;
use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Serialize, Serializer};

pub use base_poly::BasePoly;
pub use cube_algebra::{cube_mul, top_coefficient, CubeClassElement, MAX_CUBE_RANK};
pub use expr::InvariantExpr;

use crate::atlas::{Atlas, Cube, InvolutionClass};
use crate::error::{Error, Result};
use crate::rational::Q;
use crate::reps::Representation;

/// Multiplicity of each character of the cube in `rho`, indexed by the
/// bitmask `E` of generators on which the character is -1.
pub fn multiplicities(rho: &Representation, cube: &Cube) -> Result<Vec<u64>> {
    if rho.root_system().spec() != cube.home().spec() {
        return Err(Error::MixedRootSystems);
    }
    let n = cube.rank();
    if n > MAX_CUBE_RANK {
        return Err(Error::Unsupported(format!("cube rank {n} exceeds {MAX_CUBE_RANK}")));
    }
    let mut values: Vec<Q> = (0..1u32 << n).map(|s| rho.character(&cube.element(s))).collect();
    // Walsh–Hadamard transform: values[E] = Σ_S (-1)^{|S∩E|} tr ρ(c_S)
    let mut h = 1;
    while h < values.len() {
        for block in (0..values.len()).step_by(2 * h) {
            for i in block..block + h {
                let (a, b) = (values[i], values[i + h]);
                values[i] = a + b;
                values[i + h] = a - b;
            }
        }
        h *= 2;
    }
    let scale = Q::from_integer(1i64 << n);
    values
        .into_iter()
        .enumerate()
        .map(|(e, v)| {
            let m = v / scale;
            if !m.is_integer() || m < Q::zero() {
                return Err(Error::BadRepresentation(format!(
                    "{rho}: multiplicity {m} of character {e:#b} on cube {:?}",
                    cube.roots()
                )));
            }
            Ok(*m.numer() as u64)
        })
        .collect()
}

/// `(1 + L)^m` up to degree `d`, using `(1+L)^{2^k} = 1 + t^{2^k-1} L`.
fn linear_power(rank: usize, subset: u32, mut m: u64, d: usize) -> CubeClassElement {
    let l = CubeClassElement::linear(rank, subset);
    let mut acc = CubeClassElement::one(rank);
    let mut k = 0usize;
    while m > 0 && k < 63 && (1u64 << k) <= d as u64 {
        if m & 1 == 1 {
            let factor = CubeClassElement::one(rank).add(&l.scale(&BasePoly::t_pow((1 << k) - 1))).expect("same rank");
            acc = acc.mul(&factor).expect("same rank").truncate(d);
        }
        m >>= 1;
        k += 1;
    }
    acc
}

/// Total Stiefel–Whitney class of `rho` restricted to the cube, truncated
/// to degree `d`.
pub fn total_class(rho: &Representation, cube: &Cube, d: usize) -> Result<CubeClassElement> {
    let n = cube.rank();
    let mult = multiplicities(rho, cube)?;
    let mut acc = CubeClassElement::one(n);
    for (e, &m) in mult.iter().enumerate().skip(1) {
        if m > 0 {
            acc = acc.mul(&linear_power(n, e as u32, m, d))?.truncate(d);
        }
    }
    Ok(acc)
}

/// Restriction of `w_i(rho)` to the cube.
pub fn sw_restriction(rho: &Representation, i: usize, cube: &Cube) -> Result<CubeClassElement> {
    Ok(total_class(rho, cube, i)?.homogeneous_component(i))
}

/// Evaluates expressions on one cube, caching total classes per representation.
struct Restrictor<'a> {
    cube: &'a Cube,
    depth: usize,
    totals: HashMap<*const Representation, CubeClassElement>,
}

impl Restrictor<'_> {
    fn eval(&mut self, e: &InvariantExpr) -> Result<CubeClassElement> {
        let n = self.cube.rank();
        Ok(match e {
            InvariantExpr::Const(p) => CubeClassElement::scalar(n, p.clone()),
            InvariantExpr::Sw { rep, index } => {
                let key = Arc::as_ptr(rep);
                if !self.totals.contains_key(&key) {
                    let total = total_class(rep, self.cube, self.depth)?;
                    self.totals.insert(key, total);
                }
                self.totals[&key].homogeneous_component(*index)
            }
            InvariantExpr::Sum(v) => {
                let mut acc = CubeClassElement::zero(n);
                for term in v {
                    acc = acc.add(&self.eval(term)?)?;
                }
                acc
            }
            InvariantExpr::Product(v) => {
                let mut acc = CubeClassElement::one(n);
                for f in v {
                    acc = acc.mul(&self.eval(f)?)?;
                }
                acc
            }
        })
    }
}

fn max_index(e: &InvariantExpr) -> usize {
    match e {
        InvariantExpr::Const(_) => 0,
        InvariantExpr::Sw { index, .. } => *index,
        InvariantExpr::Sum(v) | InvariantExpr::Product(v) => v.iter().map(max_index).max().unwrap_or(0),
    }
}

/// Image of the invariant under restriction to the cube: a ring
/// homomorphism fixing `t`.
pub fn restrict_to_cube(expr: &InvariantExpr, cube: &Cube) -> Result<CubeClassElement> {
    for rep in expr.representations() {
        if rep.root_system().spec() != cube.home().spec() {
            return Err(Error::MixedRootSystems);
        }
    }
    Restrictor { cube, depth: max_index(expr), totals: HashMap::new() }.eval(expr)
}

/// Top coefficient of the restriction to `cube`. The expression must be
/// homogeneous.
pub fn pairing_with_cube(expr: &InvariantExpr, cube: &Cube) -> Result<BasePoly> {
    expr.degree()?;
    Ok(restrict_to_cube(expr, cube)?.top_coefficient().clone())
}

/// Pairs several expressions with one cube, sharing the total classes of
/// common representations.
pub fn pairings_with_cube(exprs: &[InvariantExpr], cube: &Cube) -> Result<Vec<BasePoly>> {
    for e in exprs {
        e.degree()?;
        for rep in e.representations() {
            if rep.root_system().spec() != cube.home().spec() {
                return Err(Error::MixedRootSystems);
            }
        }
    }
    let depth = exprs.iter().map(max_index).max().unwrap_or(0);
    let mut r = Restrictor { cube, depth, totals: HashMap::new() };
    exprs.iter().map(|e| Ok(r.eval(e)?.top_coefficient().clone())).collect()
}

/// `⟨expr, σ⟩` through the stored splitting of the class.
pub fn pairing(expr: &InvariantExpr, cls: &InvolutionClass) -> Result<BasePoly> {
    pairing_with_cube(expr, &cls.splitting)
}

/// Coordinates of a homogeneous invariant in the basis dual to the
/// involution classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantVector {
    /// Degree of the expression; 0 for the zero vector.
    pub degree: usize,
    /// `(class id, coefficient)` in atlas order.
    pub coeffs: Vec<(String, BasePoly)>,
}

impl InvariantVector {
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|(_, c)| c.is_zero())
    }

    pub fn get(&self, id: &str) -> Option<&BasePoly> {
        self.coeffs.iter().find(|(k, _)| k == id).map(|(_, c)| c)
    }
}

struct OrderedCoeffs<'a>(&'a [(String, BasePoly)]);

impl Serialize for OrderedCoeffs<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in self.0 {
            map.serialize_entry(k, &v.to_string())?;
        }
        map.end()
    }
}

impl Serialize for InvariantVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("InvariantVector", 2)?;
        st.serialize_field("degree", &self.degree)?;
        st.serialize_field("coeffs", &OrderedCoeffs(&self.coeffs))?;
        st.end()
    }
}

pub fn expand(expr: &InvariantExpr, atlas: &Atlas) -> Result<InvariantVector> {
    let degree = expr.degree()?.unwrap_or(0);
    let coeffs =
        atlas.involution_classes.iter().map(|cls| Ok((cls.id.clone(), pairing(expr, cls)?))).collect::<Result<_>>()?;
    Ok(InvariantVector { degree, coeffs })
}

/// Shape of the invariant module as a free graded F2[t]-module.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CanonicalBasis {
    #[serde(rename = "type")]
    pub group: String,
    pub rank: usize,
    pub degrees: Vec<usize>,
    pub classes: Vec<String>,
}

pub fn canonical_basis(atlas: &Atlas) -> CanonicalBasis {
    CanonicalBasis {
        group: atlas.rs.spec().to_string(),
        rank: atlas.involution_classes.len(),
        degrees: atlas.degrees(),
        classes: atlas.involution_classes.iter().map(|c| c.id.clone()).collect(),
    }
}

/// `⟨w_i(cox), σ⟩` for `i = 0..=rank` (rows) against every class (columns).
pub fn coxeter_table(atlas: &Atlas) -> Result<Vec<Vec<BasePoly>>> {
    let cox = Arc::new(Representation::coxeter(&atlas.rs));
    (0..=atlas.rs.rank())
        .map(|i| {
            let e = InvariantExpr::sw(&cox, i)?;
            atlas.involution_classes.iter().map(|c| pairing(&e, c)).collect()
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairSeparation {
    pub pair: [String; 2],
    /// A degree-`n` monomial in Stiefel–Whitney classes pairing differently
    /// with the two classes, if the battery contains one.
    pub witness: Option<String>,
}

/// Whether Stiefel–Whitney monomials of the catalogue separate the
/// involution classes of one degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SeparationReport {
    #[serde(rename = "type")]
    pub group: String,
    pub degree: usize,
    pub catalogue: Vec<String>,
    pub battery_size: usize,
    pub pairs: Vec<PairSeparation>,
}

impl SeparationReport {
    pub fn unseparated(&self) -> impl Iterator<Item = &PairSeparation> {
        self.pairs.iter().filter(|p| p.witness.is_none())
    }
}

/// Multisets of `(rep, i)` with `i ≥ 1` and `Σ i = n`, as index lists.
fn monomials(items: &[(usize, usize)], n: usize) -> Vec<Vec<usize>> {
    fn go(items: &[(usize, usize)], from: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for k in from..items.len() {
            if items[k].1 <= left {
                cur.push(k);
                go(items, k, left - items[k].1, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(items, 0, n, &mut Vec::new(), &mut out);
    out
}

/// Pairs every degree-`n` monomial in `w_i(ρ)`, `ρ` in the catalogue, with
/// the degree-`n` classes and reports, for each pair of such classes, a
/// separating monomial or its absence. Lower-degree monomials times powers
/// of `t` pair to zero with degree-`n` classes, so they are not needed.
pub fn separation_report(atlas: &Atlas, catalogue: &[Representation], degree: usize) -> Result<SeparationReport> {
    let classes: Vec<&InvolutionClass> = atlas.involution_classes.iter().filter(|c| c.degree == degree).collect();
    let items: Vec<(usize, usize)> =
        (0..catalogue.len()).flat_map(|r| (1..=degree.min(catalogue[r].dim())).map(move |i| (r, i))).collect();
    let battery = monomials(&items, degree);

    let mut values: Vec<Vec<bool>> = Vec::with_capacity(classes.len());
    for cls in &classes {
        let totals: Vec<CubeClassElement> =
            catalogue.iter().map(|rho| total_class(rho, &cls.splitting, degree)).collect::<Result<_>>()?;
        let row = battery
            .iter()
            .map(|mono| {
                let mut acc = CubeClassElement::one(degree);
                for &k in mono {
                    let (r, i) = items[k];
                    acc = acc.mul(&totals[r].homogeneous_component(i))?;
                }
                Ok(acc.top_coefficient().is_one())
            })
            .collect::<Result<Vec<bool>>>()?;
        values.push(row);
    }

    let describe = |mono: &[usize]| {
        mono.iter().map(|&k| format!("w{}({})", items[k].1, catalogue[items[k].0])).collect::<Vec<_>>().join("*")
    };
    let mut pairs = Vec::new();
    for a in 0..classes.len() {
        for b in a + 1..classes.len() {
            let witness = (0..battery.len()).find(|&m| values[a][m] != values[b][m]).map(|m| describe(&battery[m]));
            pairs.push(PairSeparation { pair: [classes[a].id.clone(), classes[b].id.clone()], witness });
        }
    }
    Ok(SeparationReport {
        group: atlas.rs.spec().to_string(),
        degree,
        catalogue: catalogue.iter().map(|r| r.descriptor()).collect(),
        battery_size: battery.len(),
        pairs,
    })
}

/// Evaluation at `t = 0` of a whole vector, for fields where -1 is a square.
pub fn specialize_at_zero(v: &InvariantVector) -> Vec<(String, bool)> {
    v.coeffs.iter().map(|(k, c)| (k.clone(), c.at_zero())).collect()
}
