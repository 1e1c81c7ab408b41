//! Rational univariate representation by the trace method.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::linalg::{int_dot, integral_vector, newton_identities, primitive_ints, symmetric_inertia, ColMatrix};
use super::quotient::Quotient;
use crate::error::{Error, Result};
use crate::groebner::{Dimensionality, GroebnerBasis};
use crate::poly::{MonomialOrder, MultiPoly, Rational, VarList};
use crate::upoly::UPoly;

/// RUR with integer polynomials sharing one scale factor, so
/// `x_v = gv[v](t) / g1(t)` at every root `t` of `f`.
#[derive(Clone, Debug)]
pub struct Rur {
    pub vars: VarList,
    pub f: UPoly,
    pub g1: UPoly,
    pub gv: Vec<UPoly>,
    pub form: Vec<i64>,
    /// Dimension of the quotient algebra (solutions with multiplicity).
    pub multiplicity_total: usize,
    /// Hermite form inertia: `(distinct complex, positive, negative)`.
    pub hermite: (usize, usize, usize),
}

impl Rur {
    pub fn distinct_complex(&self) -> usize {
        self.hermite.0
    }

    /// Number of distinct real solutions by the Hermite signature.
    pub fn hermite_real_count(&self) -> usize {
        self.hermite.1 - self.hermite.2
    }

    pub fn form_poly(&self) -> MultiPoly {
        let terms =
            self.form.iter().enumerate().filter(|(_, c)| **c != 0).map(|(i, &c)| {
                (crate::poly::Monomial::var_power(self.vars.len(), i, 1), Rational::from_integer(c.into()))
            });
        MultiPoly::from_terms(&self.vars, terms)
    }
}

/// Coordinate forms first, then `x1 + i x2 + i^2 x3 + ...` for `i = 1..=max`.
pub fn candidate_forms(n: usize, max: u32) -> Vec<Vec<i64>> {
    let mut out: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            let mut v = vec![0; n];
            v[i] = 1;
            v
        })
        .collect();
    for i in 1..=max as i64 {
        let v: Vec<i64> = (0..n as u32).map(|k| i.pow(k)).collect();
        if !out.contains(&v) {
            out.push(v);
        }
    }
    out
}

fn integer_polys(polys: Vec<Vec<Rational>>) -> Vec<UPoly> {
    let mut den = BigInt::one();
    for p in &polys {
        for c in p {
            den = den.lcm(c.denom());
        }
    }
    let ints: Vec<Vec<BigInt>> =
        polys.iter().map(|p| p.iter().map(|c| c.numer() * (&den / c.denom())).collect()).collect();
    let mut g = BigInt::zero();
    for c in ints.iter().flatten() {
        g = g.gcd(c);
    }
    ints.into_iter()
        .map(|p| {
            UPoly::from_coeffs(if g.is_zero() || g.is_one() { p } else { p.into_iter().map(|c| c / &g).collect() })
        })
        .collect()
}

/// Builds the quotient algebra of a zero-dimensional ideal, or `None` for the unit ideal.
pub fn quotient_of(vars: &VarList, equations: &[MultiPoly]) -> Result<Option<Quotient>> {
    let gb = GroebnerBasis::compute_in(vars, equations, MonomialOrder::GrevLex);
    match gb.dimensionality() {
        Dimensionality::Unit => Ok(None),
        Dimensionality::Positive => Err(Error::NotZeroDimensional(format!(
            "the system in {:?} has infinitely many complex solutions",
            vars.names()
        ))),
        Dimensionality::ZeroDimensional => Ok(Some(Quotient::new(gb)?)),
    }
}

/// RUR with the first separating form among `forms`.
pub fn rur_from_quotient(q: &mut Quotient, forms: &[Vec<i64>], max: u32) -> Result<Rur> {
    let d = q.dim();
    let n = q.nvars();
    let h = q.hermite_matrix();
    let hermite = symmetric_inertia(h);
    let r = hermite.0;
    let tau = q.trace_vector();
    let (tau_int, tau_scale) = integral_vector(&tau);
    let one = q.one();
    for form in forms {
        let parts: Vec<(&ColMatrix, Rational)> = form
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0)
            .map(|(v, &c)| (q.mult(v), Rational::from_integer(c.into())))
            .collect();
        let nu = ColMatrix::combination(&parts).integral();
        let delta = Rational::from_integer(nu.delta.clone());
        // Krylov vectors u^k as scale[k] * w[k] with primitive integer w[k]
        let (w0, s0) = integral_vector(&one);
        let mut w = vec![w0];
        let mut scale = vec![s0];
        for k in 1..=d {
            let (next, g) = primitive_ints(nu.apply(&w[k - 1]));
            w.push(next);
            let sk = &scale[k - 1] * Rational::from_integer(g) / &delta;
            scale.push(sk);
        }
        let trace_of = |func: &[num_bigint::BigInt], fscale: &Rational, k: usize| -> Rational {
            Rational::from_integer(int_dot(func, &w[k])) * fscale * &scale[k]
        };
        let sums: Vec<Rational> = (1..=d).map(|k| trace_of(&tau_int, &tau_scale, k)).collect();
        let chi = newton_identities(d, &sums);
        let fbar = UPoly::from_rationals(&chi).squarefree_part();
        if fbar.degree() != r {
            log::debug!("form {form:?} not separating ({} vs {r})", fbar.degree());
            continue;
        }
        let a: Vec<Rational> = fbar.to_rationals();
        let numer = |t: &[Rational]| -> Vec<Rational> {
            (0..r)
                .map(|j| {
                    let mut s = Rational::zero();
                    for k in 0..r - j {
                        s += &t[k] * &a[k + j + 1];
                    }
                    s
                })
                .collect()
        };
        let t1: Vec<Rational> = (0..r).map(|k| trace_of(&tau_int, &tau_scale, k)).collect();
        let mut all = vec![numer(&t1)];
        for v in 0..n {
            // Tr(M_v M_u^k) through the functional M_v^T tau
            let (func, fs) = integral_vector(&q.mult(v).transpose_apply(&tau));
            let tv: Vec<Rational> = (0..r).map(|k| trace_of(&func, &fs, k)).collect();
            all.push(numer(&tv));
        }
        let mut ints = integer_polys(all);
        let gv = ints.split_off(1);
        let g1 = ints.pop().unwrap();
        return Ok(Rur {
            vars: q.gb.vars().clone(),
            f: fbar,
            g1,
            gv,
            form: form.clone(),
            multiplicity_total: d,
            hermite,
        });
    }
    Err(Error::SeparatingFormExhausted(max))
}
