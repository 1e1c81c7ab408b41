//! Integer polynomials sorted by an arbitrary monomial order, used inside the
//! Buchberger loop. Coefficients are kept fraction-free and primitive.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::poly::{Monomial, MonomialOrder, MultiPoly, Rational, VarList};

pub(crate) type ITerm = (Monomial, BigInt);

#[derive(Clone, Debug)]
pub(crate) struct GPoly {
    pub terms: Vec<ITerm>,
    pub mask: u64,
}

impl GPoly {
    pub fn new(terms: Vec<ITerm>) -> Self {
        let mask = terms.first().map_or(0, |t| t.0.support_mask());
        GPoly { terms, mask }
    }

    /// Primitive integer multiple of `p`, sorted for `ord`; also returns
    /// `s` with `self = s * p`.
    pub fn from_multi(p: &MultiPoly, ord: MonomialOrder) -> (Self, Rational) {
        let mut den = BigInt::one();
        for (_, c) in p.terms() {
            den = den.lcm(c.denom());
        }
        let mut terms: Vec<ITerm> =
            p.terms().iter().map(|(m, c)| (m.clone(), c.numer() * (&den / c.denom()))).collect();
        terms.sort_unstable_by(|a, b| ord.cmp(&b.0, &a.0));
        let mut g = GPoly::new(terms);
        let c = g.make_primitive();
        (g, Rational::new(den, c))
    }

    pub fn to_multi(&self, vars: &VarList) -> MultiPoly {
        MultiPoly::from_terms(vars, self.terms.iter().map(|(m, c)| (m.clone(), Rational::from_integer(c.clone()))))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }

    pub fn lc(&self) -> &BigInt {
        &self.terms[0].1
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    /// Divides by the content and makes the leading coefficient positive;
    /// returns the signed divisor.
    pub fn make_primitive(&mut self) -> BigInt {
        if self.terms.is_empty() {
            return BigInt::one();
        }
        let mut g = content(&self.terms);
        if self.terms[0].1.is_negative() {
            g = -g;
        }
        if !g.is_one() {
            for t in &mut self.terms {
                t.1 = &t.1 / &g;
            }
        }
        g
    }
}

pub(crate) fn content(terms: &[ITerm]) -> BigInt {
    let mut g = BigInt::zero();
    for (_, c) in terms {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

/// `a * ma * f - b * mb * g` over the given term slices (each sorted for `ord`).
pub(crate) fn combine(
    ord: MonomialOrder,
    a: &BigInt,
    ma: Option<&Monomial>,
    f: &[ITerm],
    b: &BigInt,
    mb: Option<&Monomial>,
    g: &[ITerm],
) -> Vec<ITerm> {
    let shift = |m: &Monomial, s: Option<&Monomial>| match s {
        Some(s) => m.mul(s),
        None => m.clone(),
    };
    let a_one = a.is_one();
    let mut out = Vec::with_capacity(f.len() + g.len());
    let (mut i, mut j) = (0, 0);
    let mut fm = f.first().map(|t| shift(&t.0, ma));
    let mut gm = g.first().map(|t| shift(&t.0, mb));
    loop {
        let o = match (&fm, &gm) {
            (None, None) => break,
            (Some(_), None) => Ordering::Greater,
            (None, Some(_)) => Ordering::Less,
            (Some(x), Some(y)) => ord.cmp(x, y),
        };
        match o {
            Ordering::Greater => {
                let c = if a_one { f[i].1.clone() } else { a * &f[i].1 };
                out.push((fm.take().unwrap(), c));
                i += 1;
                fm = f.get(i).map(|t| shift(&t.0, ma));
            }
            Ordering::Less => {
                out.push((gm.take().unwrap(), -(b * &g[j].1)));
                j += 1;
                gm = g.get(j).map(|t| shift(&t.0, mb));
            }
            Ordering::Equal => {
                let c = if a_one { f[i].1.clone() } else { a * &f[i].1 } - b * &g[j].1;
                let m = fm.take().unwrap();
                if !c.is_zero() {
                    out.push((m, c));
                }
                i += 1;
                j += 1;
                fm = f.get(i).map(|t| shift(&t.0, ma));
                gm = g.get(j).map(|t| shift(&t.0, mb));
            }
        }
    }
    out
}

fn find_divisor<'a>(t: &Monomial, basis: &[&'a GPoly]) -> Option<&'a GPoly> {
    let tm = t.support_mask();
    basis.iter().find(|g| g.mask & !tm == 0 && g.lm().divides(t)).copied()
}

/// Reduces `f` modulo `basis`. Returns `(r, s)` with `s * f - r` in the ideal,
/// `r` primitive unless `keep_scale`. With `full`, every term of `r` is
/// irreducible; otherwise only its leading term.
pub(crate) fn reduce(f: &GPoly, basis: &[&GPoly], ord: MonomialOrder, full: bool) -> (GPoly, Rational) {
    let mut p: Vec<ITerm> = f.terms.clone();
    let mut start = 0usize;
    let mut r: Vec<ITerm> = Vec::new();
    let mut scale = Rational::one();
    let mut steps = 0u32;
    while start < p.len() {
        let t = &p[start].0;
        match find_divisor(t, basis) {
            Some(g) => {
                let m = t.div(g.lm()).expect("divisor");
                let c = &p[start].1;
                let gc = c.gcd(g.lc());
                let mut a = g.lc() / &gc;
                let mut b = c / &gc;
                if a.is_negative() {
                    a = -a;
                    b = -b;
                }
                p = combine(ord, &a, None, &p[start + 1..], &b, Some(&m), &g.terms[1..]);
                start = 0;
                if !a.is_one() {
                    for x in &mut r {
                        x.1 *= &a;
                    }
                    scale *= Rational::from_integer(a);
                }
                steps += 1;
                if steps % 16 == 0 {
                    let mut cg = content(&p);
                    for x in &r {
                        if cg.is_one() {
                            break;
                        }
                        cg = cg.gcd(&x.1);
                    }
                    if !cg.is_one() && !cg.is_zero() {
                        for x in p.iter_mut().chain(r.iter_mut()) {
                            x.1 = &x.1 / &cg;
                        }
                        scale /= Rational::from_integer(cg);
                    }
                }
            }
            None => {
                if !full {
                    break;
                }
                r.push(p[start].clone());
                start += 1;
            }
        }
    }
    if !full {
        r.extend(p.drain(start..));
    }
    let mut out = GPoly::new(r);
    let c = out.make_primitive();
    (out, scale / Rational::from_integer(c))
}
