//! Closed intervals with exact rational ends and enclosures of polynomial
//! values.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::poly::{MultiPoly, Rational};
use crate::upoly::UPoly;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Interval {
    pub lo: Rational,
    pub hi: Rational,
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        assert!(lo <= hi, "empty interval [{lo}, {hi}]");
        Interval { lo, hi }
    }

    pub fn point(x: Rational) -> Self {
        Interval { lo: x.clone(), hi: x }
    }

    /// `[c - r, c + r]`.
    pub fn around(c: &Rational, r: &Rational) -> Self {
        Interval::new(c - r, c + r)
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::from_integer(BigInt::from(2))
    }

    pub fn contains(&self, x: &Rational) -> bool {
        self.lo <= *x && *x <= self.hi
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    /// `1`, `-1`, or `0` when the sign is not determined.
    pub fn sign(&self) -> i8 {
        if self.lo.is_positive() {
            1
        } else if self.hi.is_negative() {
            -1
        } else {
            0
        }
    }

    pub fn intersects(&self, o: &Interval) -> bool {
        self.lo <= o.hi && o.lo <= self.hi
    }

    pub fn subset_of(&self, o: &Interval) -> bool {
        o.lo <= self.lo && self.hi <= o.hi
    }

    pub fn hull(&self, o: &Interval) -> Interval {
        Interval { lo: self.lo.clone().min(o.lo.clone()), hi: self.hi.clone().max(o.hi.clone()) }
    }

    pub fn add(&self, o: &Interval) -> Interval {
        Interval { lo: &self.lo + &o.lo, hi: &self.hi + &o.hi }
    }

    pub fn sub(&self, o: &Interval) -> Interval {
        Interval { lo: &self.lo - &o.hi, hi: &self.hi - &o.lo }
    }

    pub fn neg(&self) -> Interval {
        Interval { lo: -&self.hi, hi: -&self.lo }
    }

    pub fn scale(&self, c: &Rational) -> Interval {
        if c.is_negative() {
            Interval { lo: &self.hi * c, hi: &self.lo * c }
        } else {
            Interval { lo: &self.lo * c, hi: &self.hi * c }
        }
    }

    pub fn mul(&self, o: &Interval) -> Interval {
        if self.is_point() {
            return o.scale(&self.lo);
        }
        if o.is_point() {
            return self.scale(&o.lo);
        }
        let c = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        Interval { lo, hi }
    }

    /// Quotient; `None` when the divisor contains zero.
    pub fn div(&self, o: &Interval) -> Option<Interval> {
        if o.contains_zero() {
            return None;
        }
        Some(self.mul(&Interval { lo: o.hi.recip(), hi: o.lo.recip() }))
    }

    pub fn pow(&self, e: u32) -> Interval {
        if e == 0 {
            return Interval::point(Rational::one());
        }
        let lo_p = num_traits::pow(self.lo.clone(), e as usize);
        let hi_p = num_traits::pow(self.hi.clone(), e as usize);
        if e % 2 == 1 {
            Interval { lo: lo_p, hi: hi_p }
        } else if self.lo.is_negative() && self.hi.is_positive() {
            Interval { lo: Rational::zero(), hi: lo_p.max(hi_p) }
        } else {
            Interval { lo: lo_p.clone().min(hi_p.clone()), hi: lo_p.max(hi_p) }
        }
    }

    /// Outward rounding of both ends to multiples of `2^-bits`; points and
    /// already dyadic ends are kept.
    pub fn round_out(&self, bits: u64) -> Interval {
        if self.is_point() {
            return self.clone();
        }
        let scale = BigInt::one() << bits;
        let down = |x: &Rational| {
            let n = (x.numer() * &scale).div_floor(x.denom());
            Rational::new(n, scale.clone())
        };
        let up = |x: &Rational| {
            let n = -((-(x.numer() * &scale)).div_floor(x.denom()));
            Rational::new(n, scale.clone())
        };
        Interval { lo: down(&self.lo), hi: up(&self.hi) }
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.lo.to_f64().unwrap_or(f64::NAN), self.hi.to_f64().unwrap_or(f64::NAN))
    }
}

/// Horner enclosure of `p` over `x`, in integer arithmetic over the common
/// denominator of the ends.
pub fn eval_upoly(p: &UPoly, x: &Interval) -> Interval {
    let c = p.coeffs();
    if c.is_empty() {
        return Interval::point(Rational::zero());
    }
    if x.is_point() {
        return Interval::point(p.eval(&x.lo));
    }
    let d = x.lo.denom().lcm(x.hi.denom());
    let a = x.lo.numer() * (&d / x.lo.denom());
    let b = x.hi.numer() * (&d / x.hi.denom());
    // H(x) = sum c_i x^i d^(n-i) over the integer interval [a, b]
    let n = c.len() - 1;
    let mut lo = c[n].clone();
    let mut hi = c[n].clone();
    let mut dpow = BigInt::one();
    for k in (0..n).rev() {
        let cands = [&lo * &a, &lo * &b, &hi * &a, &hi * &b];
        lo = cands.iter().min().unwrap().clone();
        hi = cands.iter().max().unwrap().clone();
        dpow *= &d;
        let ck = &c[k] * &dpow;
        lo += &ck;
        hi += &ck;
    }
    Interval { lo: Rational::new(lo, dpow.clone()), hi: Rational::new(hi, dpow) }
}

/// Term-by-term enclosure of `p` over a box indexed like `p`'s variables.
pub fn eval_multi(p: &MultiPoly, bx: &[Interval]) -> Interval {
    assert_eq!(bx.len(), p.nvars(), "box dimension");
    let mut powers: Vec<Vec<Interval>> = bx.iter().map(|x| vec![Interval::point(Rational::one()), x.clone()]).collect();
    let mut acc = Interval::point(Rational::zero());
    for (m, c) in p.terms() {
        let mut t = Interval::point(c.clone());
        for (i, &e) in m.exponents().iter().enumerate() {
            if e == 0 {
                continue;
            }
            while powers[i].len() <= e as usize {
                let k = powers[i].len() as u32;
                let next = bx[i].pow(k);
                powers[i].push(next);
            }
            t = t.mul(&powers[i][e as usize]);
        }
        acc = acc.add(&t);
    }
    acc
}
