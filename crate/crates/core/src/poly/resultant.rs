use super::dense::{self, Dense};
use super::multipoly::{rat, MultiPoly};
use crate::error::{Error, Result};

/// Subresultant pseudo-remainder sequence (Brown-Collins form, no content
/// removal). Returns the resultant with the Sylvester determinant sign.
pub(crate) fn subresultant(a: &Dense, b: &Dense) -> MultiPoly {
    let vars = a[0].vars().clone();
    let (mut a, mut b) = (a.clone(), b.clone());
    let mut s = 1i64;
    if dense::deg(&a) < dense::deg(&b) {
        if dense::deg(&a) % 2 == 1 && dense::deg(&b) % 2 == 1 {
            s = -s;
        }
        std::mem::swap(&mut a, &mut b);
    }
    if dense::deg(&b) == 0 {
        return dense::lc(&b).pow(dense::deg(&a) as u32).scale(&rat(s));
    }
    let mut g = MultiPoly::one(&vars);
    let mut h = MultiPoly::one(&vars);
    loop {
        let (da, db) = (dense::deg(&a), dense::deg(&b));
        let delta = (da - db) as u32;
        if da % 2 == 1 && db % 2 == 1 {
            s = -s;
        }
        let r = dense::prem(&a, &b);
        a = b;
        if r.is_empty() {
            return MultiPoly::zero(&vars);
        }
        let divisor = &g * &h.pow(delta);
        b = dense::div_scalar(&r, &divisor);
        g = dense::lc(&a).clone();
        h = match delta {
            0 => h,
            1 => g.clone(),
            _ => g.pow(delta).div_exact(&h.pow(delta - 1)).expect("subresultant h update"),
        };
        if dense::deg(&b) == 0 {
            break;
        }
    }
    let da = dense::deg(&a) as u32;
    let lb = dense::lc(&b).pow(da);
    let res = if da == 1 { lb } else { lb.div_exact(&h.pow(da - 1)).expect("subresultant final") };
    res.scale(&rat(s))
}

/// Resultant of `p` and `q` with respect to `var`, signed as the Sylvester
/// determinant of `p` (first block of rows) and `q`.
pub fn resultant(p: &MultiPoly, q: &MultiPoly, var: &str) -> Result<MultiPoly> {
    let v = p.vars().require(var)?;
    if p.vars() != q.vars() {
        return Err(Error::Dimension("resultant operands over different variable lists".into()));
    }
    resultant_at(p, q, v)
}

pub fn resultant_at(p: &MultiPoly, q: &MultiPoly, v: usize) -> Result<MultiPoly> {
    if p.degree_in(v) == 0 || q.degree_in(v) == 0 {
        return Err(Error::Domain(format!("resultant needs positive degree in {} for both operands", p.vars()[v])));
    }
    Ok(subresultant(&p.coefficients_in(v), &q.coefficients_in(v)))
}

/// Discriminant `(-1)^(n(n-1)/2) res(p, p') / lc(p)`; equal to 1 for degree one.
pub fn discriminant(p: &MultiPoly, var: &str) -> Result<MultiPoly> {
    discriminant_at(p, p.vars().require(var)?)
}

pub fn discriminant_at(p: &MultiPoly, v: usize) -> Result<MultiPoly> {
    let n = p.degree_in(v);
    match n {
        0 => Err(Error::Domain(format!("discriminant of a polynomial free of {}", p.vars()[v]))),
        1 => Ok(MultiPoly::one(p.vars())),
        _ => {
            let r = resultant_at(p, &p.derivative_at(v), v)?;
            let l = p.leading_coefficient_at(v);
            let d = r
                .div_exact(&l)
                .ok_or_else(|| Error::Internal(format!("leading coefficient does not divide res(p, p') for {}", p)))?;
            let sign = if (n * (n - 1) / 2) % 2 == 0 { 1 } else { -1 };
            Ok(d.scale(&rat(sign)))
        }
    }
}

/// Sylvester matrix of `p`, `q` in variable index `v`.
pub fn sylvester_matrix(p: &MultiPoly, q: &MultiPoly, v: usize) -> Vec<Vec<MultiPoly>> {
    let pc = p.coefficients_in(v);
    let qc = q.coefficients_in(v);
    let (m, n) = (pc.len() - 1, qc.len() - 1);
    let size = m + n;
    let zero = MultiPoly::zero(p.vars());
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![zero.clone(); size];
        for (j, c) in pc.iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![zero.clone(); size];
        for (j, c) in qc.iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    rows
}

/// Determinant by fraction-free Bareiss elimination with row pivoting.
pub fn determinant_bareiss(mut m: Vec<Vec<MultiPoly>>) -> MultiPoly {
    let n = m.len();
    assert!(m.iter().all(|r| r.len() == n), "square matrix expected");
    if n == 0 {
        panic!("empty matrix");
    }
    let vars = m[0][0].vars().clone();
    let mut sign = 1i64;
    let mut prev = MultiPoly::one(&vars);
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    sign = -sign;
                }
                None => return MultiPoly::zero(&vars),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
        }
        prev = m[k][k].clone();
    }
    m[n - 1][n - 1].scale(&rat(sign))
}

/// Reference resultant via the Sylvester determinant (test oracle).
pub fn sylvester_resultant(p: &MultiPoly, q: &MultiPoly, var: &str) -> Result<MultiPoly> {
    let v = p.vars().require(var)?;
    if p.degree_in(v) == 0 || q.degree_in(v) == 0 {
        return Err(Error::Domain("resultant needs positive degrees".into()));
    }
    Ok(determinant_bareiss(sylvester_matrix(p, q, v)))
}
