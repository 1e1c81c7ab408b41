//! Recursive view `R[v]` of a multivariate polynomial, `R` the polynomials in
//! the remaining variables. Shared by resultants and gcds.

use num_traits::Zero;

use super::multipoly::MultiPoly;

/// Coefficient vector in the main variable, lowest power first, no trailing zeros.
pub(crate) type Dense = Vec<MultiPoly>;

pub(crate) fn trim(mut a: Dense) -> Dense {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

pub(crate) fn deg(a: &Dense) -> usize {
    a.len().saturating_sub(1)
}

pub(crate) fn lc(a: &Dense) -> &MultiPoly {
    a.last().expect("nonzero dense polynomial")
}

/// Pseudo-remainder `lc(b)^(deg a - deg b + 1) a mod b`.
pub(crate) fn prem(a: &Dense, b: &Dense) -> Dense {
    if a.len() < b.len() {
        return a.clone();
    }
    let n = deg(b);
    let l = lc(b).clone();
    let mut r = a.clone();
    for k in (n..r.len()).rev() {
        let t = std::mem::replace(&mut r[k], MultiPoly::zero(l.vars()));
        for x in r[..k].iter_mut() {
            if !x.is_zero() {
                *x = &*x * &l;
            }
        }
        if !t.is_zero() {
            for (j, bj) in b[..n].iter().enumerate() {
                if !bj.is_zero() {
                    r[k - n + j] = &r[k - n + j] - &(&t * bj);
                }
            }
        }
    }
    r.truncate(n);
    trim(r)
}

pub(crate) fn div_scalar(a: &Dense, c: &MultiPoly) -> Dense {
    if let Some(v) = c.constant_value() {
        if v == num_traits::One::one() {
            return a.clone();
        }
    }
    a.iter().map(|x| x.div_exact(c).unwrap_or_else(|| panic!("inexact division of {} by {}", x, c))).collect()
}

pub(crate) fn rational_unit(c: &MultiPoly) -> bool {
    c.constant_value().is_some_and(|v| !v.is_zero())
}
