use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::monomial::Monomial;
use crate::error::{Error, Result};

/// Admissible monomial orders.
///
/// `Block(k)` compares the first `k` variables by graded reverse lexicographic
/// order and breaks ties with grevlex on the remaining variables, so every
/// monomial involving the first block dominates those that do not.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MonomialOrder {
    Lex,
    GrevLex,
    Block(usize),
}

fn grevlex(a: &[u16], b: &[u16]) -> Ordering {
    let da: u32 = a.iter().map(|&e| e as u32).sum();
    let db: u32 = b.iter().map(|&e| e as u32).sum();
    match da.cmp(&db) {
        Ordering::Equal => {}
        o => return o,
    }
    for (x, y) in a.iter().zip(b.iter()).rev() {
        match x.cmp(y) {
            Ordering::Equal => continue,
            // smaller exponent in the last differing variable wins
            o => return o.reverse(),
        }
    }
    Ordering::Equal
}

impl MonomialOrder {
    /// Compares monomials of equal length; panics on a length mismatch.
    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        assert_eq!(a.len(), b.len(), "monomials over different variable lists");
        let (ea, eb) = (a.exponents(), b.exponents());
        match *self {
            MonomialOrder::Lex => ea.cmp(eb),
            MonomialOrder::GrevLex => grevlex(ea, eb),
            MonomialOrder::Block(k) => {
                let k = k.min(ea.len());
                grevlex(&ea[..k], &eb[..k]).then_with(|| grevlex(&ea[k..], &eb[k..]))
            }
        }
    }

    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Result<Ordering> {
        if a.len() != b.len() {
            return Err(Error::Dimension(format!("monomial lengths {} and {} differ", a.len(), b.len())));
        }
        Ok(self.cmp(a, b))
    }
}
