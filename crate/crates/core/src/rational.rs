//! Exact rational helpers: the scalar type, `p/q` formatting and a small
//! dense matrix used for element matrices and eigenspace keys.

use num_rational::Rational64;
use num_traits::{One, Signed, Zero};

pub type Q = Rational64;

pub fn q(n: i64) -> Q {
    Q::from_integer(n)
}

/// Formats as `p` or `p/q`.
pub fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let d: i64 = d.trim().parse().ok()?;
            if d == 0 {
                return None;
            }
            Some(Q::new(n.trim().parse().ok()?, d))
        }
        None => s.parse().ok().map(Q::from_integer),
    }
}

/// Square or rectangular exact matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Q>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix { rows, cols, data: vec![Q::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Q::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Q>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged matrix");
            data.extend_from_slice(row);
        }
        QMatrix { rows: r, cols: c, data }
    }

    pub fn row(&self, i: usize) -> &[Q] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn mul(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, other.rows, "matrix shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn scale(&self, s: Q) -> QMatrix {
        QMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * s).collect() }
    }

    pub fn sub(&self, other: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn trace(&self) -> Q {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    /// Determinant by fraction-exact Gaussian elimination.
    pub fn det(&self) -> Q {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Q::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !m[(r, c)].is_zero()) else {
                return Q::zero();
            };
            if p != c {
                for j in 0..n {
                    m.data.swap(p * n + j, c * n + j);
                }
                det = -det;
            }
            let pivot = m[(c, c)];
            det *= pivot;
            for r in c + 1..n {
                let f = m[(r, c)] / pivot;
                if f.is_zero() {
                    continue;
                }
                for j in c..n {
                    let v = m[(c, j)];
                    m[(r, j)] -= f * v;
                }
            }
        }
        det
    }

    /// Reduced row echelon form with zero rows dropped.
    pub fn rref(&self) -> QMatrix {
        let mut m = self.clone();
        let (rows, cols) = (m.rows, m.cols);
        let mut lead = 0;
        for c in 0..cols {
            if lead == rows {
                break;
            }
            let Some(p) = (lead..rows).find(|&r| !m[(r, c)].is_zero()) else {
                continue;
            };
            for j in 0..cols {
                m.data.swap(p * cols + j, lead * cols + j);
            }
            let inv = m[(lead, c)].recip();
            for j in 0..cols {
                m[(lead, j)] *= inv;
            }
            for r in 0..rows {
                if r != lead {
                    let f = m[(r, c)];
                    if !f.is_zero() {
                        for j in 0..cols {
                            let v = m[(lead, j)];
                            m[(r, j)] -= f * v;
                        }
                    }
                }
            }
            lead += 1;
        }
        m.data.truncate(lead * cols);
        m.rows = lead;
        m
    }

    pub fn rank(&self) -> usize {
        self.rref().rows
    }

    /// Coefficients `c_0..c_n` of `det(I + x M)`; `c_k` is the trace of the
    /// k-th exterior power. Computed with Newton's identities from power traces.
    pub fn exterior_traces(&self) -> Vec<Q> {
        let n = self.rows;
        let mut power = QMatrix::identity(n);
        let mut p = Vec::with_capacity(n + 1);
        p.push(q(n as i64));
        for _ in 1..=n {
            power = power.mul(self);
            p.push(power.trace());
        }
        let mut e = vec![Q::one()];
        for k in 1..=n {
            let mut acc = Q::zero();
            for i in 1..=k {
                let term = e[k - i] * p[i];
                if i % 2 == 1 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            e.push(acc / q(k as i64));
        }
        e
    }

    pub fn is_integral(&self) -> bool {
        self.data.iter().all(|x| x.is_integer())
    }

    pub fn max_abs(&self) -> Q {
        self.data.iter().map(|x| x.abs()).max().unwrap_or_else(Q::zero)
    }
}

impl std::ops::Index<(usize, usize)> for QMatrix {
    type Output = Q;
    fn index(&self, (i, j): (usize, usize)) -> &Q {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Q {
        &mut self.data[i * self.cols + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_drops_dependent_rows() {
        let m = QMatrix::from_rows(&[vec![q(1), q(2)], vec![q(2), q(4)], vec![q(0), q(3)]]);
        let r = m.rref();
        assert_eq!(r, QMatrix::identity(2));
    }

    #[test]
    fn det_and_exterior_traces() {
        let m = QMatrix::from_rows(&[vec![q(2), q(1)], vec![q(1), q(3)]]);
        assert_eq!(m.det(), q(5));
        // det(I + xM) = 1 + 5x + 5x^2
        assert_eq!(m.exterior_traces(), vec![q(1), q(5), q(5)]);
    }

    #[test]
    fn rational_formatting() {
        assert_eq!(fmt_q(&Q::new(-1, 2)), "-1/2");
        assert_eq!(fmt_q(&q(3)), "3");
        assert_eq!(parse_q("-1/2"), Some(Q::new(-1, 2)));
        assert_eq!(parse_q("1/0"), None);
    }
}
