//! Exact linear algebra over Q for quotient-algebra computations.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::poly::Rational;

pub type Vector = Vec<Rational>;

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    let mut s = Rational::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            s += x * y;
        }
    }
    s
}

pub fn unit(n: usize, i: usize) -> Vector {
    let mut v = vec![Rational::zero(); n];
    v[i] = Rational::one();
    v
}

/// Column of a multiplication matrix.
#[derive(Clone, Debug)]
pub enum Column {
    Unit(usize),
    Dense(Vector),
}

/// Square matrix stored by columns, most of which are unit vectors.
#[derive(Clone, Debug)]
pub struct ColMatrix {
    pub cols: Vec<Column>,
}

impl ColMatrix {
    pub fn apply(&self, v: &[Rational]) -> Vector {
        let n = self.cols.len();
        let mut out = vec![Rational::zero(); n];
        for (j, vj) in v.iter().enumerate() {
            if vj.is_zero() {
                continue;
            }
            match &self.cols[j] {
                Column::Unit(i) => out[*i] += vj,
                Column::Dense(c) => {
                    for (o, x) in out.iter_mut().zip(c) {
                        if !x.is_zero() {
                            *o += vj * x;
                        }
                    }
                }
            }
        }
        out
    }
}

impl ColMatrix {
    /// `sum c_v M_v` over matrices of equal size.
    pub fn combination(parts: &[(&ColMatrix, Rational)]) -> ColMatrix {
        let d = parts[0].0.cols.len();
        let cols = (0..d)
            .map(|j| {
                let mut acc = vec![Rational::zero(); d];
                for (m, c) in parts {
                    match &m.cols[j] {
                        Column::Unit(i) => acc[*i] += c,
                        Column::Dense(col) => {
                            for (a, x) in acc.iter_mut().zip(col) {
                                if !x.is_zero() {
                                    *a += c * x;
                                }
                            }
                        }
                    }
                }
                Column::Dense(acc)
            })
            .collect();
        ColMatrix { cols }
    }

    /// `M^T v`, i.e. the linear functional `w -> v . (M w)`.
    pub fn transpose_apply(&self, v: &[Rational]) -> Vector {
        self.cols
            .iter()
            .map(|c| match c {
                Column::Unit(i) => v[*i].clone(),
                Column::Dense(col) => dot(col, v),
            })
            .collect()
    }

    /// `(N, delta)` with `M = N / delta` and `N` integral.
    pub fn integral(&self) -> IntMatrix {
        let mut delta = BigInt::one();
        for c in &self.cols {
            if let Column::Dense(col) = c {
                for x in col {
                    delta = delta.lcm(x.denom());
                }
            }
        }
        let d = self.cols.len();
        let cols = self
            .cols
            .iter()
            .map(|c| match c {
                Column::Unit(i) => {
                    let mut v = vec![BigInt::zero(); d];
                    v[*i] = delta.clone();
                    v
                }
                Column::Dense(col) => col.iter().map(|x| x.numer() * (&delta / x.denom())).collect(),
            })
            .collect();
        IntMatrix { cols, delta }
    }
}

/// Integer matrix by columns with the denominator it was scaled by.
#[derive(Clone, Debug)]
pub struct IntMatrix {
    pub cols: Vec<Vec<BigInt>>,
    pub delta: BigInt,
}

impl IntMatrix {
    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        let d = self.cols.len();
        let mut out = vec![BigInt::zero(); d];
        for (j, vj) in v.iter().enumerate() {
            if vj.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(&self.cols[j]) {
                if !x.is_zero() {
                    *o += vj * x;
                }
            }
        }
        out
    }
}

/// `v = scale * ints` with `ints` integral and primitive.
pub fn integral_vector(v: &[Rational]) -> (Vec<BigInt>, Rational) {
    let mut den = BigInt::one();
    for x in v {
        den = den.lcm(x.denom());
    }
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&den / x.denom())).collect();
    let (ints, g) = primitive_ints(ints);
    (ints, Rational::new(g, den))
}

pub fn primitive_ints(v: Vec<BigInt>) -> (Vec<BigInt>, BigInt) {
    let mut g = BigInt::zero();
    for x in &v {
        g = g.gcd(x);
        if g.is_one() {
            return (v, g);
        }
    }
    if g.is_zero() {
        return (v, BigInt::one());
    }
    (v.into_iter().map(|x| x / &g).collect(), g)
}

pub fn int_dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    let mut s = BigInt::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            s += x * y;
        }
    }
    s
}

/// Rank and signature `(rank, positive, negative)` of a symmetric matrix by
/// congruence elimination.
pub fn symmetric_inertia(mut h: Vec<Vec<Rational>>) -> (usize, usize, usize) {
    let n = h.len();
    let (mut pos, mut neg) = (0, 0);
    let mut active: Vec<usize> = (0..n).collect();
    while !active.is_empty() {
        let pivot = active.iter().copied().find(|&i| !h[i][i].is_zero());
        let p = match pivot {
            Some(p) => p,
            None => {
                let pair = active
                    .iter()
                    .flat_map(|&i| active.iter().map(move |&j| (i, j)))
                    .find(|&(i, j)| i != j && !h[i][j].is_zero());
                let Some((i, j)) = pair else { break };
                // row/column i += row/column j makes the diagonal entry 2 h_ij
                for k in 0..n {
                    let t = h[j][k].clone();
                    h[i][k] += t;
                }
                for k in 0..n {
                    let t = h[k][j].clone();
                    h[k][i] += t;
                }
                i
            }
        };
        let d = h[p][p].clone();
        if d.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        active.retain(|&i| i != p);
        for &i in &active {
            if h[i][p].is_zero() {
                continue;
            }
            let f = &h[i][p] / &d;
            for &j in &active {
                if h[p][j].is_zero() {
                    continue;
                }
                let t = &f * &h[p][j];
                h[i][j] -= t;
            }
        }
        for &i in &active {
            h[i][p] = Rational::zero();
            h[p][i] = Rational::zero();
        }
    }
    (pos + neg, pos, neg)
}

/// Monic characteristic polynomial coefficients (low power first) from
/// power sums `p[k] = sum of k-th powers of the roots`, `k = 1..=n`.
pub fn newton_identities(n: usize, p: &[Rational]) -> Vec<Rational> {
    let mut e = vec![Rational::one()];
    for k in 1..=n {
        let mut s = Rational::zero();
        for i in 1..=k {
            let t = &e[k - i] * &p[i - 1];
            if i % 2 == 1 {
                s += t;
            } else {
                s -= t;
            }
        }
        e.push(s / Rational::from_integer(k.into()));
    }
    // chi(T) = sum (-1)^k e_k T^(n-k)
    let mut c = vec![Rational::zero(); n + 1];
    for (k, ek) in e.into_iter().enumerate() {
        c[n - k] = if k % 2 == 1 { -ek } else { ek };
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    fn m(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect()
    }

    #[test]
    fn inertia() {
        assert_eq!(symmetric_inertia(m(&[&[1, 0], &[0, -1]])), (2, 1, 1));
        assert_eq!(symmetric_inertia(m(&[&[0, 1], &[1, 0]])), (2, 1, 1));
        assert_eq!(symmetric_inertia(m(&[&[1, 1], &[1, 1]])), (1, 1, 0));
        assert_eq!(symmetric_inertia(m(&[&[0, 0], &[0, 0]])), (0, 0, 0));
        assert_eq!(symmetric_inertia(m(&[&[2, 1, 0], &[1, 2, 1], &[0, 1, 2]])), (3, 3, 0));
    }

    #[test]
    fn newton() {
        // roots 1, 2, 3
        let p = [rat(6), rat(14), rat(36)];
        assert_eq!(newton_identities(3, &p), vec![rat(-6), rat(11), rat(-6), rat(1)]);
    }
}
