//! JSON form `{variables: [...], terms: [[numerator, denominator, [e1, ..., en]], ...]}`.
//! Numerators and denominators are decimal strings so big integers survive.

use num_bigint::BigInt;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::monomial::{Exponent, Monomial};
use super::multipoly::{MultiPoly, Rational, VarList};

#[derive(Serialize, Deserialize)]
struct PolyJson {
    variables: Vec<String>,
    terms: Vec<(String, String, Vec<Exponent>)>,
}

impl Serialize for MultiPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PolyJson {
            variables: self.vars().names().to_vec(),
            terms: self
                .terms()
                .iter()
                .map(|(m, c)| (c.numer().to_string(), c.denom().to_string(), m.exponents().to_vec()))
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for MultiPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = PolyJson::deserialize(d)?;
        let vars = VarList::new(&j.variables);
        let mut terms = Vec::with_capacity(j.terms.len());
        for (n, den, e) in j.terms {
            if e.len() != vars.len() {
                return Err(D::Error::custom("exponent vector length does not match variables"));
            }
            let n: BigInt = n.parse().map_err(D::Error::custom)?;
            let den: BigInt = den.parse().map_err(D::Error::custom)?;
            if den == BigInt::from(0) {
                return Err(D::Error::custom("zero denominator"));
            }
            terms.push((Monomial::from_exponents(e), Rational::new(n, den)));
        }
        Ok(MultiPoly::from_terms(&vars, terms))
    }
}

/// Serde helpers for exact rationals as `"p/q"` strings.
pub mod rational_str {
    use super::*;

    pub fn to_string(r: &Rational) -> String {
        if r.is_integer() {
            r.numer().to_string()
        } else {
            format!("{}/{}", r.numer(), r.denom())
        }
    }

    pub fn from_str(s: &str) -> Option<Rational> {
        let s = s.trim();
        match s.split_once('/') {
            Some((n, d)) => {
                let d: BigInt = d.trim().parse().ok()?;
                if d == BigInt::from(0) {
                    return None;
                }
                Some(Rational::new(n.trim().parse().ok()?, d))
            }
            None => Some(Rational::from_integer(s.parse().ok()?)),
        }
    }

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&to_string(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        from_str(&s).ok_or_else(|| D::Error::custom(format!("bad rational `{}`", s)))
    }
}

/// Same as [`rational_str`] for vectors.
pub mod rational_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        let strs: Vec<String> = v.iter().map(rational_str::to_string).collect();
        strs.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter()
            .map(|s| rational_str::from_str(s).ok_or_else(|| D::Error::custom(format!("bad rational `{}`", s))))
            .collect()
    }
}
