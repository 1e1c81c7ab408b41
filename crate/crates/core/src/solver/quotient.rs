//! The finite-dimensional algebra `Q[X]/I` of a zero-dimensional ideal:
//! multiplication matrices, coordinates of monomials and the trace form.

use std::collections::HashMap;

use num_traits::Zero;

use super::linalg::{dot, unit, ColMatrix, Column, Vector};
use crate::error::{Error, Result};
use crate::groebner::GroebnerBasis;
use crate::poly::{Monomial, MultiPoly, Rational};

pub struct Quotient {
    pub gb: GroebnerBasis,
    pub basis: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    mult: Vec<ColMatrix>,
    coords: HashMap<Monomial, Vector>,
    trace: Option<Vector>,
}

impl Quotient {
    pub fn new(gb: GroebnerBasis) -> Result<Self> {
        let basis = gb.normal_set()?;
        if basis.is_empty() {
            return Err(Error::Internal("quotient of the unit ideal".into()));
        }
        let index: HashMap<Monomial, usize> = basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let n = gb.vars().len();
        let d = basis.len();
        let mut mult = Vec::with_capacity(n);
        for v in 0..n {
            let xv = Monomial::var_power(n, v, 1);
            let mut cols = Vec::with_capacity(d);
            for b in &basis {
                let m = b.mul(&xv);
                match index.get(&m) {
                    Some(&i) => cols.push(Column::Unit(i)),
                    None => {
                        let nf = gb.normal_form(&MultiPoly::monomial(gb.vars(), m, Rational::from_integer(1.into())));
                        cols.push(Column::Dense(Self::to_coords(&index, d, &nf)?));
                    }
                }
            }
            mult.push(ColMatrix { cols });
        }
        Ok(Quotient { gb, basis, index, mult, coords: HashMap::new(), trace: None })
    }

    fn to_coords(index: &HashMap<Monomial, usize>, d: usize, nf: &MultiPoly) -> Result<Vector> {
        let mut v = vec![Rational::zero(); d];
        for (m, c) in nf.terms() {
            let i = index
                .get(m)
                .ok_or_else(|| Error::Internal(format!("normal form term {m:?} outside the normal set")))?;
            v[*i] = c.clone();
        }
        Ok(v)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn nvars(&self) -> usize {
        self.mult.len()
    }

    pub fn mult(&self, v: usize) -> &ColMatrix {
        &self.mult[v]
    }

    pub fn one(&self) -> Vector {
        unit(self.dim(), self.index[&Monomial::one(self.nvars())])
    }

    pub fn monomial_coords(&mut self, m: &Monomial) -> Vector {
        if let Some(&i) = self.index.get(m) {
            return unit(self.dim(), i);
        }
        if let Some(v) = self.coords.get(m) {
            return v.clone();
        }
        let k = (0..self.nvars()).rev().find(|&k| m.exponent(k) > 0).expect("non-constant");
        let mut rest = m.clone();
        rest.set_exponent(k, m.exponent(k) - 1);
        // peel one variable; the recursion bottoms out in the normal set
        let inner = self.monomial_coords(&rest);
        let v = self.mult[k].apply(&inner);
        self.coords.insert(m.clone(), v.clone());
        v
    }

    pub fn poly_coords(&mut self, p: &MultiPoly) -> Vector {
        let mut v = vec![Rational::zero(); self.dim()];
        for (m, c) in p.terms() {
            let mc = self.monomial_coords(m);
            for (o, x) in v.iter_mut().zip(&mc) {
                if !x.is_zero() {
                    *o += c * x;
                }
            }
        }
        v
    }

    /// Multiplication by a polynomial applied to a coordinate vector.
    pub fn apply_poly(&self, p: &MultiPoly, w: &[Rational]) -> Vector {
        let mut out = vec![Rational::zero(); self.dim()];
        for (m, c) in p.terms() {
            let mut t = w.to_vec();
            for (k, &e) in m.exponents().iter().enumerate() {
                for _ in 0..e {
                    t = self.mult[k].apply(&t);
                }
            }
            for (o, x) in out.iter_mut().zip(&t) {
                if !x.is_zero() {
                    *o += c * x;
                }
            }
        }
        out
    }

    /// Products `b_i b_j` of normal-set monomials, as coordinates.
    fn product_coords(&mut self, i: usize, j: usize) -> Vector {
        let m = self.basis[i].mul(&self.basis[j]);
        self.monomial_coords(&m)
    }

    /// `tau_j = Tr(M_{b_j})`.
    pub fn trace_vector(&mut self) -> Vector {
        if let Some(t) = &self.trace {
            return t.clone();
        }
        let d = self.dim();
        let mut tau = vec![Rational::zero(); d];
        for (j, t) in tau.iter_mut().enumerate() {
            for i in 0..d {
                let c = self.product_coords(j, i);
                *t += &c[i];
            }
        }
        self.trace = Some(tau.clone());
        tau
    }

    /// `Tr(M_h)` for `h` given by coordinates.
    pub fn trace_of(&mut self, h: &[Rational]) -> Rational {
        let tau = self.trace_vector();
        dot(&tau, h)
    }

    /// Hermite quadratic form `H_ij = Tr(M_{b_i b_j})`.
    pub fn hermite_matrix(&mut self) -> Vec<Vec<Rational>> {
        let tau = self.trace_vector();
        let d = self.dim();
        let mut h = vec![vec![Rational::zero(); d]; d];
        for i in 0..d {
            for j in i..d {
                let c = self.product_coords(i, j);
                let t = dot(&tau, &c);
                h[j][i] = t.clone();
                h[i][j] = t;
            }
        }
        h
    }
}
