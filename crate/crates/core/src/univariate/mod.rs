//! Real roots of univariate polynomials over Q: isolation, refinement,
//! Sturm counts and the extended `Root(p, l)` selector.

mod isolate;
mod simplest;
mod sturm;

use std::cmp::Ordering;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{self, MultiPoly, Rational};
use crate::upoly::UPoly;

pub use isolate::{bisect_once, isolate as isolate_upoly, isolate_squarefree, refine as refine_upoly, RootInterval};
pub use simplest::{simplest_rational, End};
pub use sturm::{count_open, sturm_sequence};

/// Interval with exact rational ends; `None` stands for an infinite end.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalInterval {
    #[serde(with = "opt_rational")]
    pub lower: Option<Rational>,
    #[serde(with = "opt_rational")]
    pub upper: Option<Rational>,
}

impl RationalInterval {
    pub fn new(lower: Option<Rational>, upper: Option<Rational>) -> Self {
        RationalInterval { lower, upper }
    }

    pub fn closed(lo: Rational, hi: Rational) -> Self {
        RationalInterval { lower: Some(lo), upper: Some(hi) }
    }

    pub fn whole_line() -> Self {
        RationalInterval { lower: None, upper: None }
    }

    pub fn is_point(&self) -> bool {
        matches!((&self.lower, &self.upper), (Some(a), Some(b)) if a == b)
    }

    pub fn width(&self) -> Option<Rational> {
        match (&self.lower, &self.upper) {
            (Some(a), Some(b)) => Some(b - a),
            _ => None,
        }
    }

    pub fn contains(&self, x: &Rational) -> bool {
        self.lower.as_ref().map_or(true, |l| l <= x) && self.upper.as_ref().map_or(true, |u| x <= u)
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        let f = |r: &Option<Rational>, inf: f64| r.as_ref().and_then(|v| v.to_f64()).unwrap_or(inf);
        (f(&self.lower, f64::NEG_INFINITY), f(&self.upper, f64::INFINITY))
    }
}

mod opt_rational {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::poly::json::rational_str;
    use crate::poly::Rational;

    pub fn serialize<S: Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        match r {
            Some(v) => s.serialize_some(&rational_str::to_string(v)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
        let v: Option<String> = Option::deserialize(d)?;
        match v {
            None => Ok(None),
            Some(s) => rational_str::from_str(&s)
                .map(Some)
                .ok_or_else(|| serde::de::Error::custom(format!("bad rational {s:?}"))),
        }
    }
}

/// A real root of a squarefree univariate polynomial, identified by its
/// 1-based rank among the real roots.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsolatedRoot {
    pub polynomial: MultiPoly,
    pub interval: RationalInterval,
    pub index: usize,
}

impl IsolatedRoot {
    fn root_interval(&self) -> RootInterval {
        RootInterval {
            lo: self.interval.lower.clone().expect("finite isolating interval"),
            hi: self.interval.upper.clone().expect("finite isolating interval"),
        }
    }

    pub fn upoly(&self) -> UPoly {
        to_upoly(&self.polynomial).expect("univariate").1
    }

    pub fn is_exact(&self) -> bool {
        self.interval.is_point()
    }

    pub fn exact_value(&self) -> Option<&Rational> {
        if self.is_exact() {
            self.interval.lower.as_ref()
        } else {
            None
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.root_interval().to_f64()
    }

    /// Narrows to width at most `w` with a single polynomial conversion.
    pub fn refined(&self, w: &Rational) -> IsolatedRoot {
        refine_root(self, w)
    }
}

/// `Root(p, l)` with the infinite sentinels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ExtendedRoot {
    NegInfinity,
    Root(IsolatedRoot),
    PosInfinity,
}

impl ExtendedRoot {
    pub fn as_root(&self) -> Option<&IsolatedRoot> {
        match self {
            ExtendedRoot::Root(r) => Some(r),
            _ => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            ExtendedRoot::NegInfinity => f64::NEG_INFINITY,
            ExtendedRoot::PosInfinity => f64::INFINITY,
            ExtendedRoot::Root(r) => r.to_f64(),
        }
    }
}

/// Variable index and integer-primitive form of a univariate polynomial.
pub fn to_upoly(p: &MultiPoly) -> Result<(usize, UPoly)> {
    let support = p.support();
    match support.len() {
        0 => Ok((0, UPoly::from_rationals(&p.constant_value().into_iter().collect::<Vec<_>>()))),
        1 => Ok((support[0], p.to_upoly(support[0])?)),
        _ => Err(Error::Domain(format!("{p} is not univariate"))),
    }
}

pub fn squarefree_part(p: &MultiPoly) -> Result<MultiPoly> {
    if p.is_zero() {
        return Err(Error::Domain("squarefree part of the zero polynomial".into()));
    }
    to_upoly(p)?;
    Ok(poly::squarefree_part(p))
}

fn squarefree_univariate(p: &MultiPoly) -> Result<(usize, UPoly, MultiPoly)> {
    if p.is_zero() {
        return Err(Error::Domain("the zero polynomial has no isolated roots".into()));
    }
    let (v, u) = to_upoly(p)?;
    let sf = u.squarefree_part();
    let mp = MultiPoly::from_dense(p.vars(), v, &sf.to_rationals());
    Ok((v, sf, mp))
}

pub fn isolate_real_roots(p: &MultiPoly) -> Result<Vec<IsolatedRoot>> {
    let (_, sf, mp) = squarefree_univariate(p)?;
    Ok(isolate_squarefree(&sf)
        .into_iter()
        .enumerate()
        .map(|(i, iv)| IsolatedRoot {
            polynomial: mp.clone(),
            interval: RationalInterval::closed(iv.lo, iv.hi),
            index: i + 1,
        })
        .collect())
}

pub fn refine_root(r: &IsolatedRoot, width: &Rational) -> IsolatedRoot {
    let u = r.upoly();
    let iv = refine_upoly(&u, &r.root_interval(), width);
    IsolatedRoot { polynomial: r.polynomial.clone(), interval: RationalInterval::closed(iv.lo, iv.hi), index: r.index }
}

/// Distinct real roots in the open interval; the squarefree part is taken
/// first, and roots sitting on an end are not counted.
pub fn sturm_count(p: &MultiPoly, i: &RationalInterval) -> Result<usize> {
    let (_, sf, _) = squarefree_univariate(p)?;
    let seq = sturm_sequence(&sf);
    let n = count_open(&seq, i.lower.as_ref(), i.upper.as_ref());
    Ok(n)
}

pub fn root_of(p: &MultiPoly, l: i64) -> Result<ExtendedRoot> {
    if l <= 0 {
        if p.is_zero() {
            return Err(Error::Domain("Root of the zero polynomial".into()));
        }
        return Ok(ExtendedRoot::NegInfinity);
    }
    let roots = isolate_real_roots(p)?;
    Ok(match roots.into_iter().nth(l as usize - 1) {
        Some(r) => ExtendedRoot::Root(r),
        None => ExtendedRoot::PosInfinity,
    })
}

/// Simplest rational strictly between consecutive real roots of squarefree `p`
/// given as sorted isolating intervals; `l = 0` is left of all, `l = n` right of all.
pub fn sample_between_intervals(p: &UPoly, roots: &[RootInterval], l: usize) -> Rational {
    let mut left = if l == 0 { None } else { Some(roots[l - 1].clone()) };
    let mut right = if l == roots.len() { None } else { Some(roots[l].clone()) };
    loop {
        // simplest point of the hull of both isolating intervals, then locate it
        let lo: End = left.as_ref().map(|iv| (iv.lo.clone(), true));
        let hi: End = right.as_ref().map(|iv| (iv.hi.clone(), true));
        let s = simplest_rational(&lo, &hi);
        if let Some(iv) = &left {
            if s <= iv.hi && !iv.is_exact() {
                let sl = p.sign_at(&s);
                if sl == 0 {
                    left = Some(RootInterval { lo: s.clone(), hi: s });
                    continue;
                }
                if sl != p.sign_at(&iv.hi) {
                    left = Some(bisect_once(p, iv));
                    continue;
                }
            }
        }
        if let Some(iv) = &right {
            if s >= iv.lo && !iv.is_exact() {
                let sr = p.sign_at(&s);
                if sr == 0 {
                    right = Some(RootInterval { lo: s.clone(), hi: s });
                    continue;
                }
                if sr != p.sign_at(&iv.lo) {
                    right = Some(bisect_once(p, iv));
                    continue;
                }
            }
        }
        return s;
    }
}

pub fn sample_between(p: &MultiPoly, l: i64) -> Result<Rational> {
    let (_, sf, _) = squarefree_univariate(p)?;
    let roots = isolate_squarefree(&sf);
    if l < 0 || l as usize > roots.len() {
        return Err(Error::Domain(format!("sample index {l} outside 0..={}", roots.len())));
    }
    Ok(sample_between_intervals(&sf, &roots, l as usize))
}

/// Exact comparison of two real algebraic numbers given as isolated roots.
pub fn compare_roots(a: &IsolatedRoot, b: &IsolatedRoot) -> Ordering {
    let (ua, ub) = (a.upoly(), b.upoly());
    let (mut ia, mut ib) = (a.root_interval(), b.root_interval());
    let g = ua.gcd(&ub);
    loop {
        if ia.hi < ib.lo || (ia.hi == ib.lo && !(ia.is_exact() && ib.is_exact())) {
            return Ordering::Less;
        }
        if ib.hi < ia.lo || (ib.hi == ia.lo && !(ia.is_exact() && ib.is_exact())) {
            return Ordering::Greater;
        }
        if ia.is_exact() && ib.is_exact() {
            return ia.lo.cmp(&ib.lo);
        }
        // overlapping: equal iff both are the unique root of gcd in the intersection
        if g.degree() > 0 {
            let lo = std::cmp::max(&ia.lo, &ib.lo).clone();
            let hi = std::cmp::min(&ia.hi, &ib.hi).clone();
            if same_common_root(&g, &ua, &ia, &ub, &ib, &lo, &hi) {
                return Ordering::Equal;
            }
        }
        if ia.width() >= ib.width() {
            ia = bisect_once(&ua, &ia);
        } else {
            ib = bisect_once(&ub, &ib);
        }
    }
}

fn same_common_root(
    g: &UPoly,
    ua: &UPoly,
    ia: &RootInterval,
    ub: &UPoly,
    ib: &RootInterval,
    lo: &Rational,
    hi: &Rational,
) -> bool {
    let in_closed = |x: &Rational, iv: &RootInterval| iv.lo <= *x && *x <= iv.hi;
    if ia.is_exact() {
        return ub.sign_at(&ia.lo) == 0 && in_closed(&ia.lo, ib);
    }
    if ib.is_exact() {
        return ua.sign_at(&ib.lo) == 0 && in_closed(&ib.lo, ia);
    }
    let seq = sturm_sequence(&g.squarefree_part());
    count_open(&seq, Some(lo), Some(hi)) > 0
}

#[cfg(test)]
mod tests {
    #[test]
    fn sample_skips_rational_root_in_gap() {
        // roots -15/29 and -sqrt(4 - (29/15)^2) are very close; -15/29 is the
        // simplest rational of the hull
        let p = UPoly::from_i64(&[15, 29]).mul(&UPoly::from_i64(&[-59, 0, 225]));
        let roots = isolate_squarefree(&p);
        let s = sample_between_intervals(&p, &roots, 1);
        assert!(s > Rational::new((-15).into(), 29.into()));
        assert!(
            s < Rational::from_integer(0.into())
                && &s * &s * Rational::from_integer(225.into()) > Rational::from_integer(59.into())
        );
    }

    use super::*;
    use crate::poly::{rat, ratio};

    fn p(s: &str) -> MultiPoly {
        MultiPoly::parse_infer(s).unwrap()
    }

    fn approx(r: &IsolatedRoot) -> f64 {
        r.refined(&ratio(1, 1_000_000)).to_f64()
    }

    #[test]
    fn squarefree_examples() {
        assert_eq!(squarefree_part(&p("(x-1)^2*(x+2)")).unwrap(), p("x^2+x-2"));
        assert_eq!(squarefree_part(&p("x^4-2*x^2+1")).unwrap(), p("x^2-1"));
        assert_eq!(squarefree_part(&p("3*x^2-6")).unwrap(), p("x^2-2"));
    }

    #[test]
    fn isolate_sqrt2() {
        let r = isolate_real_roots(&p("x^2-2")).unwrap();
        assert_eq!(r.len(), 2);
        assert!((approx(&r[0]) + 2f64.sqrt()).abs() < 1e-6);
        assert!((approx(&r[1]) - 2f64.sqrt()).abs() < 1e-6);
        assert!(isolate_real_roots(&MultiPoly::zero(p("x").vars())).is_err());
    }

    #[test]
    fn isolate_sextics() {
        // two real roots each; Root(p, 2) is the positive one
        let r = isolate_real_roots(&p("8*b^6-11*b^4+6*b^2-1")).unwrap();
        assert_eq!(r.len(), 2);
        assert!((approx(&r[1]) - 0.533).abs() < 0.005);
        let r = isolate_real_roots(&p("b^6-6*b^4+11*b^2-8")).unwrap();
        assert_eq!(r.len(), 2);
        assert!((approx(&r[1]) - 1.88).abs() < 0.005);
    }

    #[test]
    fn exact_roots_collapse() {
        let r = isolate_real_roots(&p("(x-1)*(x+1/2)*x*(3*x-1)")).unwrap();
        let vals: Vec<Rational> =
            r.iter().map(|r| r.refined(&ratio(1, 1 << 20)).exact_value().cloned().unwrap()).collect();
        assert_eq!(vals, vec![ratio(-1, 2), rat(0), ratio(1, 3), rat(1)]);
        let third = isolate_real_roots(&p("3*x-1")).unwrap();
        assert_eq!(refine_root(&third[0], &ratio(1, 1000)).exact_value(), Some(&ratio(1, 3)));
    }

    #[test]
    fn sturm_examples() {
        let c = |s: &str, a: Option<i64>, b: Option<i64>| {
            sturm_count(&p(s), &RationalInterval::new(a.map(rat), b.map(rat))).unwrap()
        };
        assert_eq!(c("x^2-2", Some(0), Some(2)), 1);
        assert_eq!(c("x^2+1", None, None), 0);
        assert_eq!(c("x^3-x", Some(-2), Some(2)), 3);
        assert_eq!(c("x^3-x", Some(-1), Some(1)), 1);
    }

    #[test]
    fn root_selector() {
        let q = p("x^2-2");
        assert_eq!(root_of(&q, 0).unwrap(), ExtendedRoot::NegInfinity);
        assert_eq!(root_of(&q, 3).unwrap(), ExtendedRoot::PosInfinity);
        assert!(root_of(&q, 1).unwrap().to_f64() < 0.0);
    }

    #[test]
    fn samples() {
        assert_eq!(sample_between(&p("x^2-2"), 1).unwrap(), rat(0));
        assert!(sample_between(&p("x-5"), 0).unwrap() < rat(5));
        assert_eq!(sample_between(&p("x^2-2"), 2).unwrap(), rat(2));
        assert!(sample_between(&p("x^2-2"), 3).is_err());
        assert_eq!(sample_between(&p("x*(x-1)"), 1).unwrap(), ratio(1, 2));
    }

    #[test]
    fn comparisons() {
        let a = isolate_real_roots(&p("x^2-2")).unwrap();
        let b = isolate_real_roots(&p("x^4-4")).unwrap();
        let c = isolate_real_roots(&p("x^2-3")).unwrap();
        assert_eq!(compare_roots(&a[1], &b[1]), Ordering::Equal);
        assert_eq!(compare_roots(&a[1], &c[1]), Ordering::Less);
        assert_eq!(compare_roots(&a[0], &b[1]), Ordering::Less);
        assert_eq!(compare_roots(&c[1], &b[0]), Ordering::Greater);
    }

    #[test]
    fn interval_json() {
        let i = RationalInterval::new(Some(ratio(-1, 3)), None);
        let s = serde_json::to_string(&i).unwrap();
        assert_eq!(s, r#"{"lower":"-1/3","upper":null}"#);
        assert_eq!(serde_json::from_str::<RationalInterval>(&s).unwrap(), i);
    }
}
