//! Descartes / bisection real-root isolation on squarefree integer polynomials.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::simplest::simplest_rational;
use crate::poly::Rational;
use crate::upoly::UPoly;

/// Isolating interval with rational ends; `lo == hi` marks an exact root.
/// Otherwise the root lies in the open interval and `p` is nonzero with
/// opposite signs at both ends.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootInterval {
    pub lo: Rational,
    pub hi: Rational,
}

impl RootInterval {
    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::from_integer(BigInt::from(2))
    }

    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.midpoint().to_f64().unwrap_or(f64::NAN)
    }
}

fn dyadic(c: &BigInt, shift: u64) -> Rational {
    Rational::new(c.clone(), BigInt::one() << shift)
}

fn descartes_bound(p: &UPoly) -> usize {
    p.reverse().taylor_shift_one().sign_variations()
}

/// Roots in `(0, 2^k)` of `p` with `p(0) != 0`; exact dyadic hits are returned as points.
fn isolate_positive(p: &UPoly) -> Vec<RootInterval> {
    let k = p.root_bound_log2();
    let q = p.scale_var_pow2(k);
    let mut out = Vec::new();
    // (numerator c, depth j, transformed polynomial on (0,1))
    let mut stack: Vec<(BigInt, u64, UPoly)> = vec![(BigInt::zero(), 0, q)];
    while let Some((c, j, poly)) = stack.pop() {
        if poly.degree() == 0 {
            continue;
        }
        let v = descartes_bound(&poly);
        if v == 0 {
            continue;
        }
        // interval is (c/2^j, (c+1)/2^j) scaled by 2^k
        let scale = |num: &BigInt| -> Rational {
            if j >= k {
                dyadic(num, j - k)
            } else {
                Rational::from_integer(num << (k - j))
            }
        };
        if v == 1 {
            out.push(RootInterval { lo: scale(&c), hi: scale(&(&c + 1)) });
            continue;
        }
        let left = poly.halve_var();
        let mut right = left.taylor_shift_one();
        if right.coeffs()[0].is_zero() {
            let mid = &c * 2 + 1;
            let r = if j + 1 >= k { dyadic(&mid, j + 1 - k) } else { Rational::from_integer(mid << (k - j - 1)) };
            out.push(RootInterval { lo: r.clone(), hi: r });
            right = right.strip_zero_roots().1;
        }
        stack.push((&c * 2 + 1, j + 1, right));
        stack.push((&c * 2, j + 1, left));
    }
    out
}

/// Shrinks an interval holding exactly one root of squarefree `p` until neither
/// end is a root.
fn clear_endpoints(p: &UPoly, mut iv: RootInterval) -> RootInterval {
    if iv.is_exact() {
        return iv;
    }
    let dp = p.derivative();
    loop {
        let sa = p.sign_at(&iv.lo);
        let sb = p.sign_at(&iv.hi);
        if sa != 0 && sb != 0 {
            debug_assert_ne!(sa, sb);
            return iv;
        }
        let m = iv.midpoint();
        let sm = p.sign_at(&m);
        if sm == 0 {
            return RootInterval { lo: m.clone(), hi: m };
        }
        let root_left = if sa != 0 && sb == 0 {
            sm != sa
        } else if sa == 0 && sb != 0 {
            sm == sb
        } else {
            sm != dp.sign_at(&iv.lo)
        };
        if root_left {
            iv.hi = m;
        } else {
            iv.lo = m;
        }
    }
}

/// Isolates all real roots of a nonzero polynomial (any multiplicities),
/// returned sorted and pairwise disjoint.
pub fn isolate(p: &UPoly) -> Vec<RootInterval> {
    assert!(!p.is_zero(), "isolating roots of the zero polynomial");
    let sf = p.squarefree_part();
    isolate_squarefree(&sf)
}

/// As [`isolate`] for a polynomial already known to be squarefree.
pub fn isolate_squarefree(sf: &UPoly) -> Vec<RootInterval> {
    if sf.degree() == 0 {
        return Vec::new();
    }
    let (zeros, core) = sf.strip_zero_roots();
    let mut roots = Vec::new();
    if zeros > 0 {
        roots.push(RootInterval { lo: Rational::zero(), hi: Rational::zero() });
    }
    if core.degree() > 0 {
        for iv in isolate_positive(&core) {
            roots.push(iv);
        }
        for iv in isolate_positive(&core.reflect()) {
            roots.push(RootInterval { lo: -iv.hi, hi: -iv.lo });
        }
    }
    let mut roots: Vec<RootInterval> = roots.into_iter().map(|iv| clear_endpoints(sf, iv)).collect();
    roots.sort_by(|a, b| a.lo.cmp(&b.lo).then(a.hi.cmp(&b.hi)));
    roots
}

/// Bisects until the width is at most `width`; probes the simplest rational of
/// the current interval so small-denominator rational roots collapse to points.
pub fn refine(p: &UPoly, iv: &RootInterval, width: &Rational) -> RootInterval {
    let mut iv = iv.clone();
    if iv.is_exact() {
        return iv;
    }
    let mut slo = p.sign_at(&iv.lo);
    let mut probed: Option<Rational> = None;
    while iv.width() > *width {
        let s = simplest_rational(&Some((iv.lo.clone(), true)), &Some((iv.hi.clone(), true)));
        if probed.as_ref() != Some(&s) {
            if p.sign_at(&s) == 0 {
                return RootInterval { lo: s.clone(), hi: s };
            }
            probed = Some(s);
        }
        let m = iv.midpoint();
        let sm = p.sign_at(&m);
        if sm == 0 {
            return RootInterval { lo: m.clone(), hi: m };
        }
        if sm == slo {
            iv.lo = m;
            slo = sm;
        } else {
            iv.hi = m;
        }
    }
    iv
}

/// One bisection step (no probing); used when a caller drives refinement.
pub fn bisect_once(p: &UPoly, iv: &RootInterval) -> RootInterval {
    if iv.is_exact() {
        return iv.clone();
    }
    let m = iv.midpoint();
    let sm = p.sign_at(&m);
    if sm == 0 {
        return RootInterval { lo: m.clone(), hi: m };
    }
    if sm == p.sign_at(&iv.lo) {
        RootInterval { lo: m, hi: iv.hi.clone() }
    } else {
        RootInterval { lo: iv.lo.clone(), hi: m }
    }
}
