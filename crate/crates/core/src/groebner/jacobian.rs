use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::poly::MultiPoly;

/// A derivation used as one column of a Jacobian.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Derivation {
    Partial(String),
    /// Derivative along an angle parametrized by `(cos, sin)` on the unit
    /// circle: `cos * d/dsin - sin * d/dcos`.
    Circle {
        cos: String,
        sin: String,
    },
}

impl Derivation {
    pub fn partial(name: &str) -> Self {
        Derivation::Partial(name.to_string())
    }

    pub fn apply(&self, p: &MultiPoly) -> Result<MultiPoly> {
        match self {
            Derivation::Partial(v) => p.derivative(v),
            Derivation::Circle { cos, sin } => {
                let c = MultiPoly::var(p.vars(), cos)?;
                let s = MultiPoly::var(p.vars(), sin)?;
                Ok(&(&c * &p.derivative(sin)?) - &(&s * &p.derivative(cos)?))
            }
        }
    }
}

pub fn jacobian_matrix(polys: &[MultiPoly], cols: &[Derivation]) -> Result<Vec<Vec<MultiPoly>>> {
    polys.iter().map(|p| cols.iter().map(|d| d.apply(p)).collect()).collect()
}

pub(crate) fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let mut i = k;
        while i > 0 && cur[i - 1] == n - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        cur[i - 1] += 1;
        for t in i..k {
            cur[t] = cur[t - 1] + 1;
        }
    }
}

/// Laplace expansion along the first row with a memo on (row suffix, column set).
struct MinorMemo<'a> {
    m: &'a [Vec<MultiPoly>],
    memo: HashMap<(u64, u64), MultiPoly>,
}

impl MinorMemo<'_> {
    fn det(&mut self, rows: &[usize], cols: &[usize]) -> MultiPoly {
        if rows.len() == 1 {
            return self.m[rows[0]][cols[0]].clone();
        }
        let key = (rows.iter().fold(0u64, |a, &r| a | 1 << r), cols.iter().fold(0u64, |a, &c| a | 1 << c));
        if let Some(v) = self.memo.get(&key) {
            return v.clone();
        }
        let r0 = rows[0];
        let mut acc = MultiPoly::zero(self.m[r0][cols[0]].vars());
        for (pos, &c) in cols.iter().enumerate() {
            let a = &self.m[r0][c];
            if a.is_zero() {
                continue;
            }
            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let sub = self.det(&rows[1..], &rest);
            if sub.is_zero() {
                continue;
            }
            let t = a * &sub;
            acc = if pos % 2 == 0 { &acc + &t } else { &acc - &t };
        }
        self.memo.insert(key, acc.clone());
        acc
    }
}

/// All `k x k` minors of `m`, ordered by row subset then column subset.
pub fn all_minors(m: &[Vec<MultiPoly>], k: usize) -> Vec<MultiPoly> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    assert!(rows <= 64 && cols <= 64);
    let mut memo = MinorMemo { m, memo: HashMap::new() };
    let mut out = Vec::new();
    for rs in k_subsets(rows, k) {
        for cs in k_subsets(cols, k) {
            out.push(memo.det(&rs, &cs));
        }
    }
    out
}

/// `P` followed by every `k x k` minor of the Jacobian of `P` along `cols`.
pub fn jacobian_minors_with(polys: &[MultiPoly], cols: &[Derivation], k: usize) -> Result<Vec<MultiPoly>> {
    if k == 0 || k > polys.len().min(cols.len()) {
        return Err(Error::Dimension(format!(
            "minor size {k} outside 1..={} for a {}x{} Jacobian",
            polys.len().min(cols.len()),
            polys.len(),
            cols.len()
        )));
    }
    let j = jacobian_matrix(polys, cols)?;
    let mut out = polys.to_vec();
    out.extend(all_minors(&j, k));
    Ok(out)
}

pub fn jacobian_minors<S: AsRef<str>>(polys: &[MultiPoly], vars: &[S], k: usize) -> Result<Vec<MultiPoly>> {
    let cols: Vec<Derivation> = vars.iter().map(|v| Derivation::partial(v.as_ref())).collect();
    jacobian_minors_with(polys, &cols, k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::determinant_bareiss;

    #[test]
    fn subsets() {
        assert_eq!(k_subsets(4, 2).len(), 6);
        assert_eq!(k_subsets(3, 3), vec![vec![0, 1, 2]]);
        assert_eq!(k_subsets(5, 1).len(), 5);
    }

    #[test]
    fn minors_match_bareiss() {
        let p = |s: &str| MultiPoly::parse_infer(s).unwrap();
        let vars = p("x+y+z").vars().clone();
        let q = |s: &str| MultiPoly::parse(s, &vars).unwrap();
        let m = vec![
            vec![q("x"), q("y^2"), q("1"), q("z")],
            vec![q("x*y"), q("2"), q("z-x"), q("y")],
            vec![q("3"), q("x+z"), q("y"), q("x^2")],
        ];
        let minors = all_minors(&m, 3);
        assert_eq!(minors.len(), 4);
        let cols = [0usize, 1, 3];
        let sub: Vec<Vec<MultiPoly>> = m.iter().map(|r| cols.iter().map(|&c| r[c].clone()).collect()).collect();
        assert_eq!(minors[1], determinant_bareiss(sub));
    }
}
