use std::fmt;

use smallvec::SmallVec;

pub type Exponent = u16;

/// Exponent vector over an ambient variable list.
///
/// The derived `Ord` is the lexicographic order with the first variable most
/// significant; polynomials keep their terms sorted by it.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(SmallVec<[Exponent; 8]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn from_exponents<I: IntoIterator<Item = Exponent>>(exps: I) -> Self {
        Monomial(exps.into_iter().collect())
    }

    /// The monomial `x_index^power` in `nvars` variables.
    pub fn var_power(nvars: usize, index: usize, power: Exponent) -> Self {
        let mut m = Self::one(nvars);
        m.0[index] = power;
        m
    }

    #[inline]
    pub fn exponents(&self) -> &[Exponent] {
        &self.0
    }

    #[inline]
    pub fn exponent(&self, index: usize) -> Exponent {
        self.0[index]
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn set_exponent(&mut self, index: usize, e: Exponent) {
        self.0[index] = e;
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.len(), other.len());
        Monomial(
            self.0.iter().zip(other.0.iter()).map(|(&a, &b)| a.checked_add(b).expect("exponent overflow")).collect(),
        )
    }

    /// True when `self` divides `other`.
    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(&a, &b)| a <= b)
    }

    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        Some(Monomial(self.0.iter().zip(other.0.iter()).map(|(&a, &b)| a - b).collect()))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(&a, &b)| a.max(b)).collect())
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(&a, &b)| a.min(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(&a, &b)| a == 0 || b == 0)
    }

    /// Bit `i % 64` is set when variable `i` occurs; a quick divisibility filter.
    pub fn support_mask(&self) -> u64 {
        self.0.iter().enumerate().filter(|(_, &e)| e > 0).fold(0u64, |m, (i, _)| m | (1u64 << (i % 64)))
    }

    /// Reorders exponents: slot `i` of the result takes slot `perm[i]` of `self`.
    pub fn permuted(&self, perm: &[usize]) -> Monomial {
        Monomial(perm.iter().map(|&j| self.0[j]).collect())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}
