//! Root systems of all irreducible crystallographic types and their
//! products, in exact rational coordinates.
//!
//! Simple roots follow the Bourbaki plates. The full root list is obtained
//! by closing the simple roots under simple reflections, working in the
//! (integral) simple-root basis. Roots are indexed as follows: positive roots
//! `0..N` sorted by height and then by ambient coordinates, and root `N + i`
//! is the negative of root `i`.

mod spec;
mod subsystem;

use std::collections::{HashMap, VecDeque};
use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

pub use spec::{Factor, Family, TypeSpec};
pub use subsystem::{find_subsystem, root_closure, SubsystemEmbedding};

use crate::error::{Error, Result};
use crate::rational::{fmt_q, q, QMatrix, Q};

/// A root in ambient coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root {
    pub coords: Vec<Q>,
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str(&fmt_q(c))?;
        }
        f.write_str(")")
    }
}

#[derive(Debug)]
pub struct RootSystem {
    spec: TypeSpec,
    rank: usize,
    /// Diagonal weights of the ambient bilinear form.
    form: Vec<Q>,
    roots: Vec<Root>,
    /// Coefficients of every root in the simple-root basis.
    coeffs: Vec<Vec<i32>>,
    npos: usize,
    simple: Vec<usize>,
    /// Twice the inner product, `ip2[i * n + j] = 2 (root_i, root_j)`; always an integer.
    ip2: Vec<i64>,
    /// `cartan[i][j] = 2 (a_i, a_j) / (a_j, a_j)` for simple roots `a_i`.
    cartan: Vec<Vec<i64>>,
    by_coeffs: HashMap<Vec<i32>, usize>,
    by_coords: HashMap<Vec<Q>, usize>,
    /// Root permutation of the reflection in each positive root.
    reflections: Vec<Vec<u16>>,
    /// Irreducible factor each root belongs to.
    factor_of: Vec<usize>,
}

/// Simple roots of one irreducible factor (Bourbaki), its ambient
/// dimension and the weight of its form.
fn factor_simple_roots(f: Factor) -> (usize, Vec<Vec<Q>>, Q) {
    let n = f.rank;
    let unit = |dim: usize, i: usize| {
        let mut v = vec![Q::zero(); dim];
        v[i] = Q::one();
        v
    };
    let diff = |dim: usize, i: usize, j: usize| {
        let mut v = vec![Q::zero(); dim];
        v[i] = Q::one();
        v[j] = -Q::one();
        v
    };
    let half = Q::new(1, 2);
    match f.family {
        Family::A => (n + 1, (0..n).map(|i| diff(n + 1, i, i + 1)).collect(), Q::one()),
        Family::B => {
            let mut s: Vec<_> = (0..n - 1).map(|i| diff(n, i, i + 1)).collect();
            s.push(unit(n, n - 1));
            (n, s, Q::one())
        }
        Family::C => {
            let mut s: Vec<_> = (0..n - 1).map(|i| diff(n, i, i + 1)).collect();
            let mut last = unit(n, n - 1);
            last[n - 1] = q(2);
            s.push(last);
            (n, s, Q::one())
        }
        Family::D => {
            let mut s: Vec<_> = (0..n - 1).map(|i| diff(n, i, i + 1)).collect();
            let mut last = vec![Q::zero(); n];
            last[n - 2] = Q::one();
            last[n - 1] = Q::one();
            s.push(last);
            (n, s, Q::one())
        }
        Family::E => {
            let mut a1 = vec![-half; 8];
            a1[0] = half;
            a1[7] = half;
            let mut a2 = vec![Q::zero(); 8];
            a2[0] = Q::one();
            a2[1] = Q::one();
            let mut s = vec![a1, a2];
            for i in 0..6 {
                s.push(diff(8, i + 1, i));
            }
            s.truncate(n);
            (8, s, Q::one())
        }
        Family::F => {
            let s = vec![diff(4, 1, 2), diff(4, 2, 3), unit(4, 3), vec![half, -half, -half, -half]];
            (4, s, Q::one())
        }
        Family::G => {
            let s = vec![diff(3, 0, 1), vec![q(-2), q(1), q(1)]];
            (3, s, half)
        }
    }
}

/// Builds the full root system of a (possibly reducible) type.
pub fn build_root_system(spec: &TypeSpec) -> Result<RootSystem> {
    spec.validate()?;
    let mut dim = 0;
    let mut form = Vec::new();
    let mut simple_vecs: Vec<Vec<Q>> = Vec::new();
    let mut simple_factor = Vec::new();
    let factor_data: Vec<_> = spec.factors.iter().map(|&f| factor_simple_roots(f)).collect();
    let total_dim: usize = factor_data.iter().map(|d| d.0).sum();
    for (fi, (d, roots, weight)) in factor_data.into_iter().enumerate() {
        for r in roots {
            let mut v = vec![Q::zero(); total_dim];
            v[dim..dim + d].clone_from_slice(&r);
            simple_vecs.push(v);
            simple_factor.push(fi);
        }
        form.extend(std::iter::repeat_n(weight, d));
        dim += d;
    }
    let rank = simple_vecs.len();
    let dot = |a: &[Q], b: &[Q]| -> Q { a.iter().zip(b).zip(&form).map(|((x, y), w)| x * y * w).sum() };
    let mut cartan = vec![vec![0i64; rank]; rank];
    for i in 0..rank {
        for j in 0..rank {
            let c = q(2) * dot(&simple_vecs[i], &simple_vecs[j]) / dot(&simple_vecs[j], &simple_vecs[j]);
            if !c.is_integer() {
                return Err(Error::Internal(format!("non-integral Cartan entry for {spec}")));
            }
            cartan[i][j] = *c.numer();
        }
    }

    // Closure under simple reflections in the simple-root basis:
    // s_j(v) = v - (sum_i v_i cartan[i][j]) e_j.
    let mut seen: HashMap<Vec<i32>, ()> = HashMap::new();
    let mut queue = VecDeque::new();
    let mut all = Vec::new();
    for i in 0..rank {
        let mut e = vec![0i32; rank];
        e[i] = 1;
        seen.insert(e.clone(), ());
        queue.push_back(e);
    }
    while let Some(v) = queue.pop_front() {
        for j in 0..rank {
            let pairing: i64 = (0..rank).map(|i| v[i] as i64 * cartan[i][j]).sum();
            if pairing == 0 {
                continue;
            }
            let mut w = v.clone();
            w[j] -= pairing as i32;
            if !seen.contains_key(&w) {
                seen.insert(w.clone(), ());
                queue.push_back(w);
            }
        }
        all.push(v);
    }

    let to_ambient = |c: &[i32]| -> Vec<Q> {
        let mut v = vec![Q::zero(); total_dim];
        for (i, &ci) in c.iter().enumerate() {
            if ci != 0 {
                for (k, x) in simple_vecs[i].iter().enumerate() {
                    v[k] += x * q(ci as i64);
                }
            }
        }
        v
    };
    let is_positive = |c: &[i32]| c.iter().find(|&&x| x != 0).is_some_and(|&x| x > 0);
    let mut positive: Vec<(i32, Vec<Q>, Vec<i32>)> =
        all.into_iter().filter(|c| is_positive(c)).map(|c| (c.iter().sum::<i32>(), to_ambient(&c), c)).collect();
    positive.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
    let npos = positive.len();
    if seen.len() != 2 * npos {
        return Err(Error::Internal(format!("root list of {spec} is not closed under negation")));
    }

    let mut roots = Vec::with_capacity(2 * npos);
    let mut coeffs = Vec::with_capacity(2 * npos);
    for (_, v, c) in &positive {
        roots.push(Root { coords: v.clone() });
        coeffs.push(c.clone());
    }
    for (_, v, c) in &positive {
        roots.push(Root { coords: v.iter().map(|x| -x).collect() });
        coeffs.push(c.iter().map(|x| -x).collect());
    }
    let n = roots.len();
    let mut ip2 = vec![0i64; n * n];
    for i in 0..n {
        for j in 0..n {
            let v = q(2) * dot(&roots[i].coords, &roots[j].coords);
            if !v.is_integer() {
                return Err(Error::Internal("non-integral doubled inner product".into()));
            }
            ip2[i * n + j] = *v.numer();
        }
    }
    let by_coeffs: HashMap<Vec<i32>, usize> = coeffs.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect();
    let by_coords: HashMap<Vec<Q>, usize> = roots.iter().enumerate().map(|(i, r)| (r.coords.clone(), i)).collect();
    let simple: Vec<usize> = (0..rank)
        .map(|i| {
            let mut e = vec![0i32; rank];
            e[i] = 1;
            by_coeffs[&e]
        })
        .collect();
    let factor_of = coeffs
        .iter()
        .map(|c| {
            let i = c.iter().position(|&x| x != 0).expect("zero root");
            simple_factor[i]
        })
        .collect();

    let mut rs = RootSystem {
        spec: spec.clone(),
        rank,
        form,
        roots,
        coeffs,
        npos,
        simple,
        ip2,
        cartan,
        by_coeffs,
        by_coords,
        reflections: Vec::new(),
        factor_of,
    };
    rs.reflections = (0..npos).map(|a| rs.compute_reflection(a)).collect::<Result<_>>()?;
    Ok(rs)
}

impl RootSystem {
    fn compute_reflection(&self, alpha: usize) -> Result<Vec<u16>> {
        let n = self.roots.len();
        let aa = self.ip2[alpha * n + alpha];
        (0..n)
            .map(|b| {
                let num = 2 * self.ip2[b * n + alpha];
                debug_assert_eq!(num % aa, 0);
                let c = (num / aa) as i32;
                let image: Vec<i32> = self.coeffs[b].iter().zip(&self.coeffs[alpha]).map(|(x, y)| x - c * y).collect();
                self.by_coeffs
                    .get(&image)
                    .map(|&i| i as u16)
                    .ok_or_else(|| Error::Internal(format!("reflection image of root {b} is not a root")))
            })
            .collect()
    }

    pub fn spec(&self) -> &TypeSpec {
        &self.spec
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn ambient_dim(&self) -> usize {
        self.form.len()
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn num_positive(&self) -> usize {
        self.npos
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn root(&self, i: usize) -> &Root {
        &self.roots[i]
    }

    pub fn is_positive(&self, i: usize) -> bool {
        i < self.npos
    }

    pub fn negative(&self, i: usize) -> usize {
        if i < self.npos {
            i + self.npos
        } else {
            i - self.npos
        }
    }

    /// Index of the positive root in `{i, -i}`.
    pub fn positive_of(&self, i: usize) -> usize {
        if i < self.npos {
            i
        } else {
            i - self.npos
        }
    }

    /// Root indices of the simple roots, in Bourbaki order.
    pub fn simple_roots(&self) -> &[usize] {
        &self.simple
    }

    pub fn simple_coeffs(&self, i: usize) -> &[i32] {
        &self.coeffs[i]
    }

    pub fn height(&self, i: usize) -> i32 {
        self.coeffs[i].iter().sum()
    }

    pub fn root_by_coeffs(&self, c: &[i32]) -> Option<usize> {
        self.by_coeffs.get(c).copied()
    }

    pub fn index_of(&self, v: &[Q]) -> Option<usize> {
        self.by_coords.get(v).copied()
    }

    pub fn factor_of(&self, i: usize) -> usize {
        self.factor_of[i]
    }

    /// Twice the inner product of roots `i` and `j`.
    pub fn ip2(&self, i: usize, j: usize) -> i64 {
        self.ip2[i * self.roots.len() + j]
    }

    pub fn orthogonal(&self, i: usize, j: usize) -> bool {
        self.ip2(i, j) == 0
    }

    /// Squared length of root `i`.
    pub fn norm(&self, i: usize) -> Q {
        Q::new(self.ip2(i, i), 2)
    }

    /// Cartan integer `2 (a_i, a_j) / (a_j, a_j)` for roots `i`, `j`.
    pub fn cartan_integer(&self, i: usize, j: usize) -> i64 {
        2 * self.ip2(i, j) / self.ip2(j, j)
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn inner(&self, a: &[Q], b: &[Q]) -> Result<Q> {
        let d = self.ambient_dim();
        for v in [a, b] {
            if v.len() != d {
                return Err(Error::DimensionMismatch { expected: d, got: v.len() });
            }
        }
        Ok(a.iter().zip(b).zip(&self.form).map(|((x, y), w)| x * y * w).sum())
    }

    /// Permutation of all root indices induced by the reflection in root `i`.
    pub fn reflection_perm(&self, i: usize) -> &[u16] {
        &self.reflections[self.positive_of(i)]
    }

    /// Gram matrix of the simple roots.
    pub fn simple_gram(&self) -> QMatrix {
        let r = self.rank;
        let mut g = QMatrix::zeros(r, r);
        for i in 0..r {
            for j in 0..r {
                g[(i, j)] = Q::new(self.ip2(self.simple[i], self.simple[j]), 2);
            }
        }
        g
    }

    /// Image of a vector in the simple-root basis, looked up as a root.
    pub fn root_from_combination(&self, c: &[i32]) -> Option<usize> {
        self.by_coeffs.get(c).copied()
    }

    pub fn to_json(&self) -> RootSystemJson {
        RootSystemJson {
            type_spec: self.spec.to_string(),
            rank: self.rank,
            roots: self.roots.iter().map(|r| r.coords.iter().map(fmt_q).collect()).collect(),
        }
    }
}

/// Reflects `v` in the hyperplane orthogonal to `mirror`, which must be a root of `rs`.
pub fn reflect(rs: &RootSystem, mirror: &Root, v: &[Q]) -> Result<Vec<Q>> {
    if mirror.coords.len() != rs.ambient_dim() {
        return Err(Error::DimensionMismatch { expected: rs.ambient_dim(), got: mirror.coords.len() });
    }
    if rs.index_of(&mirror.coords).is_none() {
        return Err(Error::NotARoot(rs.spec().to_string()));
    }
    let num = rs.inner(v, &mirror.coords)?;
    let den = rs.inner(&mirror.coords, &mirror.coords)?;
    let c = q(2) * num / den;
    Ok(v.iter().zip(&mirror.coords).map(|(x, m)| x - c * m).collect())
}

#[derive(Debug, Clone, Serialize)]
pub struct RootSystemJson {
    #[serde(rename = "type")]
    pub type_spec: String,
    pub rank: usize,
    pub roots: Vec<Vec<String>>,
}
