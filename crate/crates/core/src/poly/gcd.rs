//! Multivariate gcd, content and squarefree part over the rationals,
//! by recursion on the variables with subresultant remainder sequences.

use super::dense::{self, Dense};
use super::multipoly::MultiPoly;
use crate::error::Result;

fn main_var(a: &MultiPoly, b: &MultiPoly) -> Option<usize> {
    (0..a.nvars()).find(|&i| a.involves(i) || b.involves(i))
}

/// Greatest common divisor, primitive over the integers with positive
/// lex-leading coefficient. `gcd(0, 0) = 0`.
pub fn gcd(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_zero() {
        return b.primitive();
    }
    if b.is_zero() {
        return a.primitive();
    }
    let v = match main_var(a, b) {
        None => return MultiPoly::one(a.vars()),
        Some(v) => v,
    };
    if !a.involves(v) {
        return gcd(a, &content_at(b, v));
    }
    if !b.involves(v) {
        return gcd(&content_at(a, v), b);
    }
    let ca = content_at(a, v);
    let cb = content_at(b, v);
    let c = gcd(&ca, &cb);
    let pa = a.div_exact(&ca).expect("content divides");
    let pb = b.div_exact(&cb).expect("content divides");
    let g = prs_gcd(&pa.coefficients_in(v), &pb.coefficients_in(v));
    let g = MultiPoly::from_coefficients_in(a.vars(), v, &g);
    let g = if g.involves(v) {
        g.div_exact(&content_at(&g, v)).expect("content divides")
    } else {
        MultiPoly::one(a.vars())
    };
    (&c * &g).primitive()
}

/// Last nonzero subresultant; only its primitive part is meaningful.
fn prs_gcd(a: &Dense, b: &Dense) -> Dense {
    let vars = a[0].vars().clone();
    let (mut a, mut b) = if dense::deg(a) >= dense::deg(b) { (a.clone(), b.clone()) } else { (b.clone(), a.clone()) };
    let mut g = MultiPoly::one(&vars);
    let mut h = MultiPoly::one(&vars);
    loop {
        let delta = (dense::deg(&a) - dense::deg(&b)) as u32;
        let r = dense::prem(&a, &b);
        if r.is_empty() {
            return b;
        }
        if r.len() == 1 {
            return vec![MultiPoly::one(&vars)];
        }
        let divisor = &g * &h.pow(delta);
        a = b;
        b = dense::div_scalar(&r, &divisor);
        g = dense::lc(&a).clone();
        h = match delta {
            0 => h,
            1 => g.clone(),
            _ => g.pow(delta).div_exact(&h.pow(delta - 1)).expect("subresultant h update"),
        };
    }
}

/// Gcd of the coefficients with respect to variable `v` (integer content included).
pub fn content_at(p: &MultiPoly, v: usize) -> MultiPoly {
    let mut acc = MultiPoly::zero(p.vars());
    for c in p.coefficients_in(v).iter().rev() {
        if c.is_zero() {
            continue;
        }
        acc = if acc.is_zero() { c.primitive() } else { gcd(&acc, c) };
        if dense::rational_unit(&acc) {
            break;
        }
    }
    acc
}

/// Splits `p = content * primitive` with respect to `var`; the content also
/// carries the rational scalar so that `primitive` has coprime integer coefficients.
pub fn content_primitive(p: &MultiPoly, var: &str) -> Result<(MultiPoly, MultiPoly)> {
    let v = p.vars().require(var)?;
    Ok(content_primitive_at(p, v))
}

pub fn content_primitive_at(p: &MultiPoly, v: usize) -> (MultiPoly, MultiPoly) {
    if p.is_zero() {
        return (MultiPoly::one(p.vars()), p.clone());
    }
    let (scalar, prim) = p.integer_content();
    let c = content_at(&prim, v);
    let pp = prim.div_exact(&c).expect("content divides");
    (c.scale(&scalar), pp)
}

/// Squarefree part, primitive with positive lex-leading coefficient.
/// Nonzero constants map to 1.
pub fn squarefree_part(p: &MultiPoly) -> MultiPoly {
    if p.is_zero() {
        return p.clone();
    }
    let v = match (0..p.nvars()).find(|&i| p.involves(i)) {
        None => return MultiPoly::one(p.vars()),
        Some(v) => v,
    };
    let c = content_at(p, v);
    let pp = p.div_exact(&c).expect("content divides");
    let g = gcd(&pp, &pp.derivative_at(v));
    let s = pp.div_exact(&g).expect("gcd divides");
    (&squarefree_part(&c) * &s).primitive()
}

/// Normalizes for set membership: squarefree, primitive, positive leading coefficient.
pub fn normalize(p: &MultiPoly) -> MultiPoly {
    squarefree_part(p)
}
