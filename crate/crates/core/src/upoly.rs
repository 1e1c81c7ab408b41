//! Dense univariate polynomials with integer coefficients.
//!
//! Used wherever only the zero set matters (isolation, Sturm sequences,
//! projection products), so polynomials are freely rescaled.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::poly::Rational;

#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct UPoly {
    c: Vec<BigInt>,
}

pub(crate) fn sign_of(x: &BigInt) -> i8 {
    match x.sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

impl UPoly {
    pub fn from_coeffs(mut c: Vec<BigInt>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        UPoly { c }
    }

    pub fn from_i64(c: &[i64]) -> Self {
        Self::from_coeffs(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    /// Clears denominators and returns the primitive integer multiple.
    pub fn from_rationals(c: &[Rational]) -> Self {
        let den = c.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let ints = c.iter().map(|x| (x.numer() * &den) / x.denom()).collect();
        Self::from_coeffs(ints).primitive()
    }

    pub fn zero() -> Self {
        UPoly { c: Vec::new() }
    }

    pub fn one() -> Self {
        UPoly { c: vec![BigInt::one()] }
    }

    /// `x - r` scaled to integers.
    pub fn linear_root(r: &Rational) -> Self {
        Self::from_coeffs(vec![-r.numer().clone(), r.denom().clone()])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree; the zero polynomial reports 0 as well, check `is_zero` first.
    pub fn degree(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    pub fn lc(&self) -> BigInt {
        self.c.last().cloned().unwrap_or_default()
    }

    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for x in &self.c {
            g = g.gcd(x);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut g = self.content();
        if self.lc().is_negative() {
            g = -g;
        }
        if g.is_one() {
            return self.clone();
        }
        UPoly { c: self.c.iter().map(|x| x / &g).collect() }
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(self.c.iter().enumerate().skip(1).map(|(i, x)| x * BigInt::from(i)).collect())
    }

    pub fn neg(&self) -> Self {
        UPoly { c: self.c.iter().map(|x| -x).collect() }
    }

    pub fn add(&self, o: &UPoly) -> UPoly {
        let n = self.c.len().max(o.c.len());
        let z = BigInt::zero();
        Self::from_coeffs((0..n).map(|i| self.c.get(i).unwrap_or(&z) + o.c.get(i).unwrap_or(&z)).collect())
    }

    pub fn sub(&self, o: &UPoly) -> UPoly {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::from_coeffs(out)
    }

    pub fn scale(&self, k: &BigInt) -> UPoly {
        Self::from_coeffs(self.c.iter().map(|x| x * k).collect())
    }

    /// Sign of `p(r)`, computed on the homogenized integer numerator.
    pub fn sign_at(&self, r: &Rational) -> i8 {
        if self.is_zero() {
            return 0;
        }
        let (p, q) = (r.numer(), r.denom());
        // sum a_i p^i q^(n-i) by Horner in the pair (p, q)
        let mut acc = BigInt::zero();
        let mut qpow = BigInt::one();
        for a in self.c.iter().rev() {
            acc = acc * p + a * &qpow;
            qpow *= q;
        }
        // acc = q^n p(r), q > 0
        sign_of(&acc)
    }

    pub fn eval(&self, r: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for a in self.c.iter().rev() {
            acc = acc * r + Rational::from_integer(a.clone());
        }
        acc
    }

    /// Sign of the leading coefficient times `(+-1)^deg`: the sign at +-infinity.
    pub fn sign_at_infinity(&self, positive: bool) -> i8 {
        let s = sign_of(&self.lc());
        if positive || self.degree() % 2 == 0 {
            s
        } else {
            -s
        }
    }

    /// Pseudo-remainder `lc(d)^(deg p - deg d + 1) * p mod d`.
    pub fn prem(&self, d: &UPoly) -> UPoly {
        assert!(!d.is_zero(), "pseudo-division by zero");
        if self.c.len() < d.c.len() {
            return self.clone();
        }
        let n = d.degree();
        let lc = d.lc();
        let mut r = self.c.clone();
        for k in (n..r.len()).rev() {
            let t = std::mem::take(&mut r[k]);
            for x in r[..k].iter_mut() {
                *x *= &lc;
            }
            if !t.is_zero() {
                for (j, dj) in d.c[..n].iter().enumerate() {
                    r[k - n + j] -= &t * dj;
                }
            }
        }
        r.truncate(n);
        Self::from_coeffs(r)
    }

    /// Exact division over the integers; `None` if `d` does not divide.
    pub fn div_exact(&self, d: &UPoly) -> Option<UPoly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        if self.c.len() < d.c.len() {
            return None;
        }
        let dn = d.degree();
        let lc = d.lc();
        let mut r = self.c.clone();
        let mut q = vec![BigInt::zero(); r.len() - dn];
        for k in (0..q.len()).rev() {
            let (qk, rem) = r[k + dn].div_rem(&lc);
            if !rem.is_zero() {
                return None;
            }
            if !qk.is_zero() {
                for (j, dj) in d.c.iter().enumerate() {
                    r[k + j] -= &qk * dj;
                }
            }
            q[k] = qk;
        }
        if r.iter().any(|x| !x.is_zero()) {
            return None;
        }
        Some(Self::from_coeffs(q))
    }

    /// Primitive gcd with positive leading coefficient (subresultant PRS).
    pub fn gcd(&self, other: &UPoly) -> UPoly {
        if self.is_zero() {
            return other.primitive();
        }
        if other.is_zero() {
            return self.primitive();
        }
        let (mut a, mut b) = if self.degree() >= other.degree() {
            (self.primitive(), other.primitive())
        } else {
            (other.primitive(), self.primitive())
        };
        let mut g = BigInt::one();
        let mut h = BigInt::one();
        loop {
            let delta = (a.degree() - b.degree()) as u32;
            let r = a.prem(&b);
            if r.is_zero() {
                return b.primitive();
            }
            if r.degree() == 0 {
                return UPoly::one();
            }
            let div = &g * num_traits::pow(h.clone(), delta as usize);
            a = b;
            b = UPoly { c: r.c.iter().map(|x| x / &div).collect() };
            g = a.lc();
            h = if delta == 0 {
                h
            } else {
                num_traits::pow(g.clone(), delta as usize) / num_traits::pow(h, delta as usize - 1)
            };
        }
    }

    /// `p / gcd(p, p')`, primitive.
    pub fn squarefree_part(&self) -> UPoly {
        if self.degree() < 1 {
            return self.primitive();
        }
        let g = self.gcd(&self.derivative());
        if g.degree() == 0 {
            return self.primitive();
        }
        self.div_exact(&g).expect("gcd divides").primitive()
    }

    /// `p(x + 1)` via repeated synthetic division.
    pub fn taylor_shift_one(&self) -> UPoly {
        let mut a = self.c.clone();
        let n = a.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let t = a[j + 1].clone();
                a[j] += t;
            }
        }
        UPoly { c: a }
    }

    /// `p(2^k x)`.
    pub fn scale_var_pow2(&self, k: u64) -> UPoly {
        UPoly { c: self.c.iter().enumerate().map(|(i, x)| x << (k * i as u64)).collect() }
    }

    /// `2^n p(x/2)` with `n = deg p`.
    pub fn halve_var(&self) -> UPoly {
        let n = self.degree() as u64;
        UPoly { c: self.c.iter().enumerate().map(|(i, x)| x << (n - i as u64)).collect() }
    }

    /// `x^n p(1/x)`.
    pub fn reverse(&self) -> UPoly {
        let mut c = self.c.clone();
        c.reverse();
        Self::from_coeffs(c)
    }

    /// `p(-x)`.
    pub fn reflect(&self) -> UPoly {
        UPoly { c: self.c.iter().enumerate().map(|(i, x)| if i % 2 == 1 { -x } else { x.clone() }).collect() }
    }

    pub fn sign_variations(&self) -> usize {
        let mut last = 0i8;
        let mut v = 0;
        for x in &self.c {
            let s = sign_of(x);
            if s != 0 {
                if last != 0 && s != last {
                    v += 1;
                }
                last = s;
            }
        }
        v
    }

    /// Divides by `x` as long as the constant term vanishes; returns the power removed.
    pub fn strip_zero_roots(&self) -> (usize, UPoly) {
        let k = self.c.iter().take_while(|x| x.is_zero()).count();
        (k, UPoly { c: self.c[k..].to_vec() })
    }

    /// Cauchy-type bound: every real root has absolute value `< 2^k`.
    pub fn root_bound_log2(&self) -> u64 {
        let lc_bits = self.lc().magnitude().bits();
        let max_bits = self.c[..self.c.len() - 1].iter().map(|x| x.magnitude().bits()).max().unwrap_or(0);
        // |r| < 1 + max|a_i|/|a_n| <= 1 + 2^(max_bits - lc_bits + 1)
        max_bits.saturating_sub(lc_bits) + 2
    }

    pub fn to_rationals(&self) -> Vec<Rational> {
        self.c.iter().map(|x| Rational::from_integer(x.clone())).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_and_squarefree() {
        // (x-1)^2 (x+2)
        let p = UPoly::from_i64(&[2, -3, 0, 1]);
        assert_eq!(p.squarefree_part(), UPoly::from_i64(&[-2, 1, 1]));
        let a = UPoly::from_i64(&[-1, 0, 1]);
        let b = UPoly::from_i64(&[1, 2, 1]);
        assert_eq!(a.gcd(&b), UPoly::from_i64(&[1, 1]));
        assert_eq!(UPoly::from_i64(&[1, 0, -2, 0, 1]).squarefree_part(), UPoly::from_i64(&[-1, 0, 1]));
    }

    #[test]
    fn shifts() {
        let p = UPoly::from_i64(&[0, 0, 1]); // x^2
        assert_eq!(p.taylor_shift_one(), UPoly::from_i64(&[1, 2, 1]));
        assert_eq!(p.halve_var(), UPoly::from_i64(&[0, 0, 1]));
        assert_eq!(UPoly::from_i64(&[1, 1]).halve_var(), UPoly::from_i64(&[2, 1]));
    }

    #[test]
    fn signs() {
        let p = UPoly::from_i64(&[-2, 0, 1]);
        assert_eq!(p.sign_at(&Rational::new(3.into(), 2.into())), 1);
        assert_eq!(p.sign_at(&Rational::new(1.into(), 1.into())), -1);
        assert_eq!(UPoly::from_i64(&[-1, 3]).sign_at(&Rational::new(1.into(), 3.into())), 0);
    }

    #[test]
    fn prem_matches_division() {
        let a = UPoly::from_i64(&[1, 2, 3, 4]);
        let b = UPoly::from_i64(&[1, 2]);
        // 2^3 * a mod (2x+1): a(-1/2) = 1 - 1 + 3/4 - 1/2 = 1/4 -> 8 * 1/4 = 2
        assert_eq!(a.prem(&b), UPoly::from_i64(&[2]));
    }
}
