use num_traits::{One, Signed, Zero};

use crate::poly::Rational;

/// One end of an interval: `None` is infinite, otherwise `(value, open)`.
pub type End = Option<(Rational, bool)>;

fn contains_zero(lo: &End, hi: &End) -> bool {
    let lo_ok = match lo {
        None => true,
        Some((v, open)) => v.is_negative() || (v.is_zero() && !open),
    };
    let hi_ok = match hi {
        None => true,
        Some((v, open)) => v.is_positive() || (v.is_zero() && !open),
    };
    lo_ok && hi_ok
}

/// Simplest rational (smallest denominator, then smallest magnitude) in the
/// interval. The interval must be nonempty.
pub fn simplest_rational(lo: &End, hi: &End) -> Rational {
    if contains_zero(lo, hi) {
        return Rational::zero();
    }
    let hi_nonpos = matches!(hi, Some((v, _)) if !v.is_positive());
    if hi_nonpos {
        let nlo = hi.as_ref().map(|(v, o)| (-v, *o));
        let nhi = lo.as_ref().map(|(v, o)| (-v, *o));
        return -simplest_positive(nlo.expect("finite"), &nhi);
    }
    simplest_positive(lo.clone().expect("lower end finite"), hi)
}

fn simplest_positive(lo: (Rational, bool), hi: &End) -> Rational {
    let (lo, lo_open) = lo;
    let fl = lo.floor();
    let k = if lo.is_integer() && !lo_open { lo.clone() } else { &fl + Rational::one() };
    let fits = match hi {
        None => true,
        Some((h, h_open)) => k < *h || (k == *h && !h_open),
    };
    if fits {
        return k;
    }
    let (h, h_open) = hi.clone().expect("bounded");
    let n = fl;
    let ylo = ((&h - &n).recip(), h_open);
    let yhi = if lo == n { None } else { Some(((&lo - &n).recip(), lo_open)) };
    let y = simplest_positive(ylo, &yhi);
    n + y.recip()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{rat, ratio};

    fn c(v: Rational) -> End {
        Some((v, false))
    }
    fn o(v: Rational) -> End {
        Some((v, true))
    }

    #[test]
    fn basics() {
        assert_eq!(simplest_rational(&c(rat(-1)), &c(rat(1))), rat(0));
        assert_eq!(simplest_rational(&c(rat(2)), &None), rat(2));
        assert_eq!(simplest_rational(&o(rat(2)), &None), rat(3));
        assert_eq!(simplest_rational(&None, &o(rat(5))), rat(0));
        assert_eq!(simplest_rational(&None, &o(rat(-5))), rat(-6));
        assert_eq!(simplest_rational(&c(ratio(1, 4)), &c(ratio(1, 2))), ratio(1, 2));
        assert_eq!(simplest_rational(&o(ratio(1, 4)), &o(ratio(1, 2))), ratio(1, 3));
        assert_eq!(simplest_rational(&o(ratio(3, 10)), &o(ratio(4, 10))), ratio(1, 3));
        assert_eq!(simplest_rational(&o(ratio(-4, 10)), &o(ratio(-3, 10))), ratio(-1, 3));
        assert_eq!(simplest_rational(&o(rat(0)), &o(ratio(1, 100))), ratio(1, 101));
        assert_eq!(simplest_rational(&c(ratio(7, 3)), &c(ratio(7, 3))), ratio(7, 3));
    }
}
