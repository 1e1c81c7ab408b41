use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Deref, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::monomial::{Exponent, Monomial};
use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// Ordered list of variable names shared by a family of polynomials.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VarList(Arc<[String]>);

impl VarList {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Self {
        VarList(names.iter().map(|s| s.as_ref().to_string()).collect())
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|v| v == name)
    }

    pub fn require(&self, name: &str) -> Result<usize> {
        self.index_of(name).ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    /// Appends `name` unless already present.
    pub fn with(&self, name: &str) -> VarList {
        if self.index_of(name).is_some() {
            return self.clone();
        }
        let mut v: Vec<String> = self.0.to_vec();
        v.push(name.to_string());
        VarList(v.into())
    }
}

impl Deref for VarList {
    type Target = [String];
    fn deref(&self) -> &[String] {
        &self.0
    }
}

impl fmt::Debug for VarList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &*self.0)
    }
}

impl<S: AsRef<str>> From<&[S]> for VarList {
    fn from(v: &[S]) -> Self {
        VarList::new(v)
    }
}

/// Value bound to a variable by [`MultiPoly::substitute`].
#[derive(Clone, Debug)]
pub enum Binding {
    Value(Rational),
    Poly(MultiPoly),
}

pub type Term = (Monomial, Rational);

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Terms are kept strictly decreasing in lexicographic order with no zero
/// coefficients, so structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    vars: VarList,
    terms: Vec<Term>,
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn merge(a: &[Term], b: &[Term], negate_b: bool) -> Vec<Term> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            std::cmp::Ordering::Less => {
                let c = if negate_b { -&b[j].1 } else { b[j].1.clone() };
                out.push((b[j].0.clone(), c));
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                let c = if negate_b { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                if !c.is_zero() {
                    out.push((a[i].0.clone(), c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend(a[i..].iter().cloned());
    for t in &b[j..] {
        let c = if negate_b { -&t.1 } else { t.1.clone() };
        out.push((t.0.clone(), c));
    }
    out
}

impl MultiPoly {
    pub fn zero(vars: &VarList) -> Self {
        MultiPoly { vars: vars.clone(), terms: Vec::new() }
    }

    pub fn one(vars: &VarList) -> Self {
        Self::constant(vars, Rational::one())
    }

    pub fn constant(vars: &VarList, c: Rational) -> Self {
        if c.is_zero() {
            return Self::zero(vars);
        }
        MultiPoly { vars: vars.clone(), terms: vec![(Monomial::one(vars.len()), c)] }
    }

    pub fn var(vars: &VarList, name: &str) -> Result<Self> {
        let i = vars.require(name)?;
        Ok(Self::monomial(vars, Monomial::var_power(vars.len(), i, 1), Rational::one()))
    }

    pub fn monomial(vars: &VarList, m: Monomial, c: Rational) -> Self {
        assert_eq!(m.len(), vars.len());
        if c.is_zero() {
            return Self::zero(vars);
        }
        MultiPoly { vars: vars.clone(), terms: vec![(m, c)] }
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates.
    pub fn from_terms<I: IntoIterator<Item = Term>>(vars: &VarList, terms: I) -> Self {
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for (m, c) in terms {
            assert_eq!(m.len(), vars.len(), "monomial length does not match variable list");
            *acc.entry(m).or_insert_with(Rational::zero) += c;
        }
        Self::from_map(vars, acc)
    }

    fn from_map(vars: &VarList, acc: HashMap<Monomial, Rational>) -> Self {
        let mut terms: Vec<Term> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        MultiPoly { vars: vars.clone(), terms }
    }

    pub fn vars(&self) -> &VarList {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Term> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn constant_value(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    /// Leading term in lexicographic order.
    pub fn lex_leading(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|t| t.0.degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, index: usize) -> u32 {
        self.terms.iter().map(|t| t.0.exponent(index) as u32).max().unwrap_or(0)
    }

    pub fn degree_in_var(&self, name: &str) -> Result<u32> {
        Ok(self.degree_in(self.vars.require(name)?))
    }

    /// Indices of variables occurring with positive exponent.
    pub fn support(&self) -> Vec<usize> {
        (0..self.nvars()).filter(|&i| self.terms.iter().any(|t| t.0.exponent(i) > 0)).collect()
    }

    pub fn involves(&self, index: usize) -> bool {
        self.terms.iter().any(|t| t.0.exponent(index) > 0)
    }

    fn check_vars(&self, other: &MultiPoly) -> Result<()> {
        if self.vars != other.vars {
            return Err(Error::Dimension(format!("variable lists {:?} and {:?} differ", self.vars, other.vars)));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_vars(other)?;
        Ok(MultiPoly { vars: self.vars.clone(), terms: merge(&self.terms, &other.terms, false) })
    }

    pub fn try_sub(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_vars(other)?;
        Ok(MultiPoly { vars: self.vars.clone(), terms: merge(&self.terms, &other.terms, true) })
    }

    pub fn try_mul(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_vars(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(&self.vars));
        }
        if self.terms.len() == 1 {
            return Ok(other.mul_term(&self.terms[0].0, &self.terms[0].1));
        }
        if other.terms.len() == 1 {
            return Ok(self.mul_term(&other.terms[0].0, &other.terms[0].1));
        }
        let mut acc: HashMap<Monomial, Rational> = HashMap::with_capacity(self.terms.len() * other.terms.len() / 2 + 1);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = ca * cb;
                match acc.get_mut(&m) {
                    Some(e) => *e += c,
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        Ok(Self::from_map(&self.vars, acc))
    }

    /// Multiplies by `c * m`; lex order is multiplicative so the term order is kept.
    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        MultiPoly { vars: self.vars.clone(), terms: self.terms.iter().map(|(mm, cc)| (mm.mul(m), cc * c)).collect() }
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        MultiPoly { vars: self.vars.clone(), terms: self.terms.iter().map(|(m, cc)| (m.clone(), cc * c)).collect() }
    }

    pub fn pow(&self, mut e: u32) -> MultiPoly {
        let mut base = self.clone();
        let mut acc = Self::one(&self.vars);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Formal partial derivative with respect to `name`.
    pub fn derivative(&self, name: &str) -> Result<MultiPoly> {
        Ok(self.derivative_at(self.vars.require(name)?))
    }

    pub fn derivative_at(&self, index: usize) -> MultiPoly {
        let terms = self
            .terms
            .iter()
            .filter(|t| t.0.exponent(index) > 0)
            .map(|(m, c)| {
                let e = m.exponent(index);
                let mut m2 = m.clone();
                m2.set_exponent(index, e - 1);
                (m2, c * rat(e as i64))
            })
            .collect::<Vec<_>>();
        // lowering one exponent preserves strict lex order among surviving terms
        MultiPoly { vars: self.vars.clone(), terms }
    }

    /// Exact specialization; unbound variables stay symbolic and the ambient
    /// variable list is unchanged.
    pub fn substitute(&self, bindings: &[(&str, Binding)]) -> Result<MultiPoly> {
        let mut idx = Vec::with_capacity(bindings.len());
        for (name, b) in bindings {
            let i = self.vars.require(name)?;
            if let Binding::Poly(p) = b {
                self.check_vars(p)?;
            }
            idx.push((i, b));
        }
        if idx.is_empty() {
            return Ok(self.clone());
        }
        let mut out = Self::zero(&self.vars);
        let mut value_acc: HashMap<Monomial, Rational> = HashMap::new();
        let mut pow_cache: HashMap<(usize, Exponent), Binding> = HashMap::new();
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut rest = m.clone();
            let mut poly_factor: Option<MultiPoly> = None;
            for &(i, b) in &idx {
                let e = m.exponent(i);
                if e == 0 {
                    continue;
                }
                rest.set_exponent(i, 0);
                let p = pow_cache.entry((i, e)).or_insert_with(|| match b {
                    Binding::Value(v) => Binding::Value(num_traits::pow(v.clone(), e as usize)),
                    Binding::Poly(p) => Binding::Poly(p.pow(e as u32)),
                });
                match p {
                    Binding::Value(v) => coeff *= &*v,
                    Binding::Poly(p) => {
                        poly_factor = Some(match poly_factor {
                            None => p.clone(),
                            Some(f) => &f * p,
                        })
                    }
                }
            }
            if coeff.is_zero() {
                continue;
            }
            match poly_factor {
                None => {
                    *value_acc.entry(rest).or_insert_with(Rational::zero) += coeff;
                }
                Some(f) => {
                    out = &out + &f.mul_term(&rest, &coeff);
                }
            }
        }
        Ok(&out + &Self::from_map(&self.vars, value_acc))
    }

    /// Specialization by variable index with rational values.
    pub fn specialize(&self, values: &[(usize, Rational)]) -> MultiPoly {
        let mut acc: HashMap<Monomial, Rational> = HashMap::with_capacity(self.terms.len());
        let mut cache: HashMap<(usize, Exponent), Rational> = HashMap::new();
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut rest = m.clone();
            for (i, v) in values {
                let e = m.exponent(*i);
                if e == 0 {
                    continue;
                }
                rest.set_exponent(*i, 0);
                let p = cache.entry((*i, e)).or_insert_with(|| num_traits::pow(v.clone(), e as usize));
                coeff *= &*p;
            }
            if !coeff.is_zero() {
                *acc.entry(rest).or_insert_with(Rational::zero) += coeff;
            }
        }
        Self::from_map(&self.vars, acc)
    }

    /// Full evaluation at a point given in variable-list order.
    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.nvars() {
            return Err(Error::Dimension(format!(
                "point has {} coordinates, polynomial has {} variables",
                point.len(),
                self.nvars()
            )));
        }
        let mut cache: HashMap<(usize, Exponent), Rational> = HashMap::new();
        let mut sum = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    let p = cache.entry((i, e)).or_insert_with(|| num_traits::pow(point[i].clone(), e as usize));
                    t *= &*p;
                }
            }
            sum += t;
        }
        Ok(sum)
    }

    /// Coefficients with respect to variable `index`: entry `k` multiplies `x^k`.
    /// The coefficient polynomials keep the ambient variable list.
    pub fn coefficients_in(&self, index: usize) -> Vec<MultiPoly> {
        let deg = self.degree_in(index) as usize;
        let mut buckets: Vec<Vec<Term>> = vec![Vec::new(); deg + 1];
        for (m, c) in &self.terms {
            let e = m.exponent(index) as usize;
            let mut m2 = m.clone();
            m2.set_exponent(index, 0);
            buckets[e].push((m2, c.clone()));
        }
        buckets
            .into_iter()
            .map(|mut ts| {
                // removing one variable can reorder terms, never collide them
                ts.sort_unstable_by(|a, b| b.0.cmp(&a.0));
                MultiPoly { vars: self.vars.clone(), terms: ts }
            })
            .collect()
    }

    /// Inverse of [`coefficients_in`](Self::coefficients_in).
    pub fn from_coefficients_in(vars: &VarList, index: usize, coeffs: &[MultiPoly]) -> MultiPoly {
        let mut terms = Vec::new();
        for (k, c) in coeffs.iter().enumerate() {
            for (m, cc) in &c.terms {
                debug_assert_eq!(m.exponent(index), 0);
                let mut m2 = m.clone();
                m2.set_exponent(index, k as Exponent);
                terms.push((m2, cc.clone()));
            }
        }
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        MultiPoly { vars: vars.clone(), terms }
    }

    /// Coefficient of the highest power of `name`; `self` when free of it.
    pub fn leading_coefficient(&self, name: &str) -> Result<MultiPoly> {
        Ok(self.leading_coefficient_at(self.vars.require(name)?))
    }

    pub fn leading_coefficient_at(&self, index: usize) -> MultiPoly {
        let d = self.degree_in(index) as Exponent;
        let mut ts: Vec<Term> = self
            .terms
            .iter()
            .filter(|t| t.0.exponent(index) == d)
            .map(|(m, c)| {
                let mut m2 = m.clone();
                m2.set_exponent(index, 0);
                (m2, c.clone())
            })
            .collect();
        ts.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        MultiPoly { vars: self.vars.clone(), terms: ts }
    }

    /// Returns `(c, p)` with `self = c * p`, `p` having coprime integer
    /// coefficients and a positive lex-leading coefficient.
    pub fn integer_content(&self) -> (Rational, MultiPoly) {
        if self.is_zero() {
            return (Rational::one(), self.clone());
        }
        let mut den = BigInt::one();
        let mut num = BigInt::zero();
        for (_, c) in &self.terms {
            den = den.lcm(c.denom());
            num = num.gcd(c.numer());
        }
        let mut content = Rational::new(num, den);
        if self.terms[0].1.is_negative() {
            content = -content;
        }
        let inv = content.recip();
        (content, self.scale(&inv))
    }

    pub fn primitive(&self) -> MultiPoly {
        self.integer_content().1
    }

    /// Monic in lex order.
    pub fn monic(&self) -> MultiPoly {
        match self.terms.first() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &MultiPoly) -> Option<MultiPoly> {
        assert_eq!(self.vars, d.vars);
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(self.clone());
        }
        if let Some(c) = d.constant_value() {
            return Some(self.scale(&c.recip()));
        }
        let (lm, lc) = &d.terms[0];
        let lc_inv = lc.recip();
        let mut r = self.terms.clone();
        let mut q: Vec<Term> = Vec::new();
        while let Some((m, c)) = r.first() {
            let qm = m.div(lm)?;
            let qc = c * &lc_inv;
            let prod: Vec<Term> = d.terms.iter().map(|(mm, cc)| (mm.mul(&qm), cc * &qc)).collect();
            r = merge(&r, &prod, true);
            q.push((qm, qc));
        }
        Some(MultiPoly { vars: self.vars.clone(), terms: q })
    }

    /// Re-embeds into another variable list containing every used variable.
    pub fn with_vars(&self, vars: &VarList) -> Result<MultiPoly> {
        if *vars == self.vars {
            return Ok(self.clone());
        }
        let mut map = Vec::with_capacity(self.nvars());
        for (i, name) in self.vars.iter().enumerate() {
            match vars.index_of(name) {
                Some(j) => map.push(Some(j)),
                None => {
                    if self.involves(i) {
                        return Err(Error::UnknownVariable(name.clone()));
                    }
                    map.push(None)
                }
            }
        }
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = vec![0 as Exponent; vars.len()];
            for (i, j) in map.iter().enumerate() {
                if let Some(j) = j {
                    e[*j] = m.exponent(i);
                }
            }
            (Monomial::from_exponents(e), c.clone())
        });
        Ok(Self::from_terms(vars, terms))
    }

    /// Restricts the variable list to the variables that actually occur.
    pub fn used_vars(&self) -> VarList {
        let names: Vec<&String> = self.support().into_iter().map(|i| &self.vars[i]).collect();
        VarList::new(&names)
    }

    pub fn map_coefficients<F: Fn(&Rational) -> Rational>(&self, f: F) -> MultiPoly {
        Self::from_terms(&self.vars, self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    /// Dense integer coefficients of a univariate polynomial in `index`,
    /// scaled to be primitive. Errors if other variables occur.
    pub fn to_upoly(&self, index: usize) -> Result<crate::upoly::UPoly> {
        let mut coeffs = vec![Rational::zero(); self.degree_in(index) as usize + 1];
        for (m, c) in &self.terms {
            if m.exponents().iter().enumerate().any(|(i, &e)| i != index && e > 0) {
                return Err(Error::Domain(format!("polynomial {} is not univariate in {}", self, self.vars[index])));
            }
            coeffs[m.exponent(index) as usize] = c.clone();
        }
        Ok(crate::upoly::UPoly::from_rationals(&coeffs))
    }

    /// Univariate polynomial from dense rational coefficients.
    pub fn from_dense(vars: &VarList, index: usize, coeffs: &[Rational]) -> MultiPoly {
        let n = vars.len();
        Self::from_terms(
            vars,
            coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (Monomial::var_power(n, index, k as Exponent), c.clone())),
        )
    }

    pub fn sole_variable(&self) -> Option<usize> {
        let s = self.support();
        if s.len() == 1 {
            Some(s[0])
        } else {
            None
        }
    }
}

/// Which binary operation [`arith`] applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

pub fn arith(p: &MultiPoly, q: &MultiPoly, op: ArithOp) -> Result<MultiPoly> {
    match op {
        ArithOp::Add => p.try_add(q),
        ArithOp::Sub => p.try_sub(q),
        ArithOp::Mul => p.try_mul(q),
    }
}

macro_rules! binop {
    ($tr:ident, $f:ident, $call:ident) => {
        impl $tr<&MultiPoly> for &MultiPoly {
            type Output = MultiPoly;
            fn $f(self, rhs: &MultiPoly) -> MultiPoly {
                self.$call(rhs).expect("operands over different variable lists")
            }
        }
        impl $tr<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $f(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$call(&rhs).expect("operands over different variable lists")
            }
        }
        impl $tr<&MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $f(self, rhs: &MultiPoly) -> MultiPoly {
                (&self).$call(rhs).expect("operands over different variable lists")
            }
        }
    };
}
binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly { vars: self.vars.clone(), terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}
