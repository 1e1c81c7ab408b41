use num_traits::Signed;

use crate::poly::Rational;
use crate::upoly::UPoly;

/// Sturm sequence `p, p', -rem(...)...` kept primitive with sign-preserving scaling.
pub fn sturm_sequence(p: &UPoly) -> Vec<UPoly> {
    let mut seq = vec![p.clone()];
    if p.degree() == 0 {
        return seq;
    }
    seq.push(p.derivative().primitive());
    loop {
        let n = seq.len();
        let (a, b) = (&seq[n - 2], &seq[n - 1]);
        if b.degree() == 0 {
            break;
        }
        let r = a.prem(b);
        if r.is_zero() {
            break;
        }
        // prem = lc(b)^(da-db+1) * rem; flip so the stored element is a positive multiple of -rem
        let delta = a.degree() - b.degree() + 1;
        let lc_sign_pos = !b.lc().is_negative() || delta % 2 == 0;
        let next = if lc_sign_pos { r.neg() } else { r };
        let g = next.content();
        let next = if g > num_bigint::BigInt::from(1) {
            UPoly::from_coeffs(next.coeffs().iter().map(|x| x / &g).collect())
        } else {
            next
        };
        seq.push(next);
    }
    seq
}

/// Evaluation point for sign variations; `None` encodes an infinity.
fn variations(seq: &[UPoly], at: Option<&Rational>, positive_infinity: bool) -> usize {
    let mut last = 0i8;
    let mut v = 0;
    for s in seq {
        let sg = match at {
            Some(r) => s.sign_at(r),
            None => s.sign_at_infinity(positive_infinity),
        };
        if sg != 0 {
            if last != 0 && sg != last {
                v += 1;
            }
            last = sg;
        }
    }
    v
}

/// Number of distinct real roots of squarefree `p` in the open interval
/// `(lo, hi)`; `None` ends are infinite.
pub fn count_open(seq: &[UPoly], lo: Option<&Rational>, hi: Option<&Rational>) -> usize {
    let p = &seq[0];
    let va = variations(seq, lo, false);
    let vb = variations(seq, hi, true);
    // V(a) - V(b) counts roots in (a, b]
    let mut n = va.saturating_sub(vb);
    if let Some(h) = hi {
        if p.sign_at(h) == 0 {
            n -= 1;
        }
    }
    n
}
