//! Groebner bases over Q: Buchberger completion, normal forms, elimination,
//! saturation and Jacobian minors.

mod buchberger;
mod gpoly;
mod jacobian;

use std::collections::{BTreeSet, HashSet};
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{Monomial, MonomialOrder, MultiPoly, Rational, VarList};
use gpoly::GPoly;

pub use jacobian::{all_minors, jacobian_matrix, jacobian_minors, jacobian_minors_with, Derivation};

/// A reduced Groebner basis together with the data it was computed for.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    vars: VarList,
    order: MonomialOrder,
    polys: Vec<MultiPoly>,
    inner: Vec<GPoly>,
}

/// Dimension status read off the leading monomials.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Dimensionality {
    /// The ideal is the whole ring: no solutions.
    Unit,
    ZeroDimensional,
    Positive,
}

fn check_vars(polys: &[MultiPoly]) -> Result<Option<VarList>> {
    let vars = match polys.first() {
        None => return Ok(None),
        Some(p) => p.vars().clone(),
    };
    if polys.iter().any(|p| *p.vars() != vars) {
        return Err(Error::Dimension("generators over different variable lists".into()));
    }
    Ok(Some(vars))
}

impl GroebnerBasis {
    pub fn compute(gens: &[MultiPoly], order: MonomialOrder) -> Result<Self> {
        let vars = check_vars(gens)?.ok_or_else(|| Error::Dimension("no generators".into()))?;
        Ok(Self::compute_in(&vars, gens, order))
    }

    /// As [`compute`](Self::compute) with an explicit ring, so an empty
    /// generator list gives the zero ideal.
    pub fn compute_in(vars: &VarList, gens: &[MultiPoly], order: MonomialOrder) -> Self {
        assert!(gens.iter().all(|g| g.vars() == vars), "generators over a different variable list");
        let inner: Vec<GPoly> = gens.iter().map(|g| GPoly::from_multi(g, order).0).collect();
        let inner = buchberger::groebner(inner, order);
        let polys = inner.iter().map(|g| g.to_multi(vars)).collect();
        GroebnerBasis { vars: vars.clone(), order, polys, inner }
    }

    pub fn vars(&self) -> &VarList {
        &self.vars
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    /// Basis elements sorted by increasing leading monomial.
    pub fn polys(&self) -> &[MultiPoly] {
        &self.polys
    }

    pub fn into_polys(self) -> Vec<MultiPoly> {
        self.polys
    }

    pub fn leading_monomials(&self) -> Vec<&Monomial> {
        self.inner.iter().map(|g| g.lm()).collect()
    }

    pub fn is_unit(&self) -> bool {
        self.inner.len() == 1 && self.inner[0].lm().is_one()
    }

    pub fn dimensionality(&self) -> Dimensionality {
        dimensionality_of(&self.leading_monomials(), self.vars.len())
    }

    pub fn is_zero_dimensional(&self) -> bool {
        self.dimensionality() != Dimensionality::Positive
    }

    /// Normal form over Q (unique since the basis is reduced).
    pub fn normal_form(&self, p: &MultiPoly) -> MultiPoly {
        assert_eq!(p.vars(), &self.vars, "polynomial over a different variable list");
        if p.is_zero() {
            return p.clone();
        }
        let (g, s0) = GPoly::from_multi(p, self.order);
        let refs: Vec<&GPoly> = self.inner.iter().collect();
        let (r, s) = gpoly::reduce(&g, &refs, self.order, true);
        // s0 * p = g and s * g - r in the ideal
        r.to_multi(&self.vars).scale(&(s * s0).recip())
    }

    pub fn contains(&self, p: &MultiPoly) -> bool {
        self.normal_form(p).is_zero()
    }

    /// Monomials outside the leading-monomial ideal, increasing in the basis
    /// order; only for zero-dimensional, non-unit ideals.
    pub fn normal_set(&self) -> Result<Vec<Monomial>> {
        match self.dimensionality() {
            Dimensionality::Positive => {
                return Err(Error::NotZeroDimensional("normal set of a positive-dimensional ideal".into()))
            }
            Dimensionality::Unit => return Ok(Vec::new()),
            Dimensionality::ZeroDimensional => {}
        }
        let lms = self.leading_monomials();
        let n = self.vars.len();
        let reducible = |m: &Monomial| lms.iter().any(|l| l.divides(m));
        let mut seen: HashSet<Monomial> = HashSet::new();
        let mut queue = vec![Monomial::one(n)];
        seen.insert(Monomial::one(n));
        let mut out = Vec::new();
        while let Some(m) = queue.pop() {
            out.push(m.clone());
            for v in 0..n {
                let next = m.mul(&Monomial::var_power(n, v, 1));
                if !reducible(&next) && seen.insert(next.clone()) {
                    queue.push(next);
                }
            }
        }
        let ord = self.order;
        out.sort_by(|a, b| ord.cmp(a, b));
        Ok(out)
    }
}

fn dimensionality_of(lms: &[&Monomial], nvars: usize) -> Dimensionality {
    if lms.iter().any(|m| m.is_one()) {
        return Dimensionality::Unit;
    }
    let pure: BTreeSet<usize> = lms
        .iter()
        .filter_map(|m| {
            let s: Vec<usize> = (0..nvars).filter(|&i| m.exponent(i) > 0).collect();
            if s.len() == 1 {
                Some(s[0])
            } else {
                None
            }
        })
        .collect();
    if pure.len() == nvars {
        Dimensionality::ZeroDimensional
    } else {
        Dimensionality::Positive
    }
}

/// Generators, an order and a lazily computed reduced basis.
#[derive(Debug)]
pub struct Ideal {
    pub generators: Vec<MultiPoly>,
    pub order: MonomialOrder,
    vars: VarList,
    reduced_basis: OnceLock<GroebnerBasis>,
}

impl Ideal {
    pub fn new(vars: &VarList, generators: Vec<MultiPoly>, order: MonomialOrder) -> Result<Self> {
        if generators.iter().any(|g| g.vars() != vars) {
            return Err(Error::Dimension("generators over different variable lists".into()));
        }
        Ok(Ideal { generators, order, vars: vars.clone(), reduced_basis: OnceLock::new() })
    }

    pub fn basis(&self) -> &GroebnerBasis {
        self.reduced_basis.get_or_init(|| GroebnerBasis::compute_in(&self.vars, &self.generators, self.order))
    }

    pub fn cached_basis(&self) -> Option<&GroebnerBasis> {
        self.reduced_basis.get()
    }
}

/// Remainder of `p` on division by `basis` (leading terms taken in `ord`).
pub fn normal_form(p: &MultiPoly, basis: &[MultiPoly], ord: MonomialOrder) -> MultiPoly {
    if p.is_zero() || basis.is_empty() {
        return p.clone();
    }
    assert!(basis.iter().all(|b| b.vars() == p.vars()), "basis over a different variable list");
    let (g, s0) = GPoly::from_multi(p, ord);
    let inner: Vec<GPoly> = basis.iter().filter(|b| !b.is_zero()).map(|b| GPoly::from_multi(b, ord).0).collect();
    let refs: Vec<&GPoly> = inner.iter().collect();
    let (r, s) = gpoly::reduce(&g, &refs, ord, true);
    r.to_multi(p.vars()).scale(&(s * s0).recip())
}

/// Reduced Groebner basis with primitive integer coefficients and positive
/// leading coefficients, sorted by increasing leading monomial.
pub fn buchberger(gens: &[MultiPoly], ord: MonomialOrder) -> Result<Vec<MultiPoly>> {
    match check_vars(gens)? {
        None => Ok(Vec::new()),
        Some(vars) => Ok(GroebnerBasis::compute_in(&vars, gens, ord).into_polys()),
    }
}

/// Staircase test on a reduced basis; the unit ideal counts as
/// zero-dimensional (see [`dimensionality`] to tell it apart).
pub fn is_zero_dimensional(basis: &[MultiPoly], ord: MonomialOrder) -> bool {
    dimensionality(basis, ord) != Dimensionality::Positive
}

pub fn dimensionality(basis: &[MultiPoly], ord: MonomialOrder) -> Dimensionality {
    let Some(first) = basis.first() else {
        return Dimensionality::Positive;
    };
    let lms: Vec<Monomial> = basis.iter().filter_map(|b| leading_monomial(b, ord)).collect();
    dimensionality_of(&lms.iter().collect::<Vec<_>>(), first.nvars())
}

pub fn leading_monomial(p: &MultiPoly, ord: MonomialOrder) -> Option<Monomial> {
    p.terms().iter().map(|t| &t.0).max_by(|a, b| ord.cmp(a, b)).cloned()
}

/// Generators of `I ∩ Q[remaining]`, expressed over the remaining variables
/// (in their original relative order).
pub fn elimination_ideal<S: AsRef<str>>(gens: &[MultiPoly], eliminate: &[S]) -> Result<Vec<MultiPoly>> {
    let Some(vars) = check_vars(gens)? else {
        return Ok(Vec::new());
    };
    for e in eliminate {
        vars.require(e.as_ref())?;
    }
    let elim: Vec<&str> = eliminate.iter().map(|s| s.as_ref()).collect();
    let rest: Vec<&str> = vars.iter().map(|s| s.as_str()).filter(|v| !elim.contains(v)).collect();
    let mut perm: Vec<&str> = elim.clone();
    perm.dedup();
    let k = perm.len();
    perm.extend(rest.iter().copied());
    let pvars = VarList::new(&perm);
    let moved: Vec<MultiPoly> = gens.iter().map(|g| g.with_vars(&pvars)).collect::<Result<_>>()?;
    let gb = GroebnerBasis::compute_in(&pvars, &moved, MonomialOrder::Block(k));
    let rvars = VarList::new(&rest);
    gb.polys().iter().filter(|g| (0..k).all(|i| !g.involves(i))).map(|g| g.with_vars(&rvars)).collect()
}

/// Generators of `I : q^∞`, by adjoining `1 - t q` and eliminating `t`.
pub fn saturate(gens: &[MultiPoly], q: &MultiPoly) -> Result<Vec<MultiPoly>> {
    if q.is_zero() {
        return Err(Error::Domain("saturation by the zero polynomial".into()));
    }
    let vars = q.vars().clone();
    if gens.iter().any(|g| g.vars() != &vars) {
        return Err(Error::Dimension("generators over different variable lists".into()));
    }
    let mut t = String::from("_t");
    while vars.index_of(&t).is_some() {
        t.push('_');
    }
    let tvars = vars.with(&t);
    let mut ext: Vec<MultiPoly> = gens.iter().map(|g| g.with_vars(&tvars)).collect::<Result<_>>()?;
    let tq = &MultiPoly::var(&tvars, &t)? * &q.with_vars(&tvars)?;
    ext.push(&MultiPoly::one(&tvars) - &tq);
    let out = elimination_ideal(&ext, &[t.as_str()])?;
    out.into_iter().map(|g| g.with_vars(&vars)).collect()
}

/// Exact rational value of `p` at a point given as `(variable, value)` pairs.
pub fn eval_at(p: &MultiPoly, point: &[(&str, Rational)]) -> Result<Rational> {
    let mut vals = vec![None; p.nvars()];
    for (name, v) in point {
        vals[p.vars().require(name)?] = Some(v.clone());
    }
    let vals: Vec<Rational> = vals
        .into_iter()
        .enumerate()
        .map(|(i, v)| v.ok_or_else(|| Error::UnknownVariable(p.vars()[i].clone())))
        .collect::<Result<_>>()?;
    p.eval(&vals)
}
