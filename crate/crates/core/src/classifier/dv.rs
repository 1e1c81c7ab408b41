//! Discriminant variety of a parametric system: the parameter values over
//! which the real solution count may change.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groebner::{elimination_ideal, jacobian_minors, saturate, Dimensionality, GroebnerBasis};
use crate::poly::{gcd::normalize, MonomialOrder, MultiPoly, Rational, VarList};
use crate::system::PolySystem;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    CriticalLocus,
    LeadingCoefficient,
    InequalityBoundary,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    pub polynomial: MultiPoly,
    pub provenance: Provenance,
}

/// Components live over the parameter ring only.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscriminantVariety {
    pub parameters: Vec<String>,
    pub components: Vec<Component>,
}

impl DiscriminantVariety {
    pub fn polynomials(&self) -> Vec<MultiPoly> {
        self.components.iter().map(|c| c.polynomial.clone()).collect()
    }

    pub fn contains_point(&self, point: &[Rational]) -> Result<bool> {
        for c in &self.components {
            if c.polynomial.eval(point)?.is_zero() {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

#[derive(Clone, Debug)]
pub struct DvOptions {
    pub seed: u64,
    /// Refuse critical loci needing more maximal minors than this.
    pub max_minors: usize,
}

impl Default for DvOptions {
    fn default() -> Self {
        DvOptions { seed: 0x5eed, max_minors: 2000 }
    }
}

pub fn discriminant_variety(sys: &PolySystem) -> Result<DiscriminantVariety> {
    discriminant_variety_with(sys, &DvOptions::default())
}

pub fn discriminant_variety_with(sys: &PolySystem, opts: &DvOptions) -> Result<DiscriminantVariety> {
    let n = sys.nunknowns();
    if n == 0 {
        return Err(Error::Dimension("no unknowns to eliminate".into()));
    }
    if sys.parameters.is_empty() {
        return Err(Error::Dimension("no parameters to classify over".into()));
    }
    check_generic_dimension(sys, opts.seed)?;

    let vars = sys.vars();
    let pvars = VarList::new(&sys.parameters);
    let unknown_positives: Vec<&MultiPoly> = sys.positives.iter().filter(|q| (0..n).any(|i| q.involves(i))).collect();

    let mut base = sys.equations.clone();
    for q in &unknown_positives {
        base = saturate(&base, q)?;
    }

    let mut out = Vec::new();

    let m = sys.equations.len();
    let nminors = binomial(m, n);
    if nminors > opts.max_minors {
        return Err(Error::Configuration(format!(
            "critical locus needs {nminors} maximal minors (limit {})",
            opts.max_minors
        )));
    }
    let mut critical = jacobian_minors(&sys.equations, &sys.unknowns, n)?;
    for q in &unknown_positives {
        critical = saturate(&critical, q)?;
    }
    match eliminate_unknowns(&critical, sys)? {
        Some(p) => out.push(Component { polynomial: p, provenance: Provenance::CriticalLocus }),
        None => {
            return Err(Error::Domain(
                "critical locus projects onto the whole parameter space (non-radical generic fibre)".into(),
            ))
        }
    }

    for p in leading_coefficient_locus(&base, n, &vars)? {
        out.push(Component { polynomial: p.with_vars(&pvars)?, provenance: Provenance::LeadingCoefficient });
    }

    for q in &sys.positives {
        if unknown_positives.contains(&q) {
            let mut gens = base.clone();
            gens.push((*q).clone());
            if let Some(p) = eliminate_unknowns(&gens, sys)? {
                out.push(Component { polynomial: p, provenance: Provenance::InequalityBoundary });
            }
        } else {
            out.push(Component { polynomial: q.with_vars(&pvars)?, provenance: Provenance::InequalityBoundary });
        }
    }

    let mut components: Vec<Component> = Vec::new();
    for c in out {
        let p = normalize(&c.polynomial);
        if p.is_constant() || components.iter().any(|d| d.polynomial == p) {
            continue;
        }
        components.push(Component { polynomial: p, provenance: c.provenance });
    }
    Ok(DiscriminantVariety { parameters: sys.parameters.clone(), components })
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// Lowest-degree nonzero element of the elimination ideal, over the parameters.
fn eliminate_unknowns(gens: &[MultiPoly], sys: &PolySystem) -> Result<Option<MultiPoly>> {
    let elim = elimination_ideal(gens, &sys.unknowns)?;
    Ok(elim.into_iter().filter(|p| !p.is_zero()).min_by_key(|p| (p.total_degree(), p.len())))
}

/// Parameter polynomials whose vanishing lets solutions escape to infinity:
/// for each unknown, the leading coefficient of a basis element whose leading
/// unknown-monomial is a pure power of it.
fn leading_coefficient_locus(gens: &[MultiPoly], n: usize, vars: &VarList) -> Result<Vec<MultiPoly>> {
    let ord = MonomialOrder::Block(n);
    let gb = GroebnerBasis::compute_in(vars, gens, ord);
    let mut out = Vec::new();
    for g in gb.polys() {
        if (0..n).all(|i| !g.involves(i)) {
            // the system is generically inconsistent off this locus
            out.push(g.clone());
        }
    }
    for i in 0..n {
        let mut best: Option<MultiPoly> = None;
        for g in gb.polys() {
            let Some(lc) = unknown_leading_coefficient(g, n, i, ord) else { continue };
            if best.as_ref().is_none_or(|b| (lc.total_degree(), lc.len()) < (b.total_degree(), b.len())) {
                best = Some(lc);
            }
        }
        match best {
            Some(lc) if !lc.is_constant() => out.push(lc),
            Some(_) => {}
            None if out.is_empty() => {
                return Err(Error::NotZeroDimensional(format!("no pure power of {} leads the basis", vars[i])))
            }
            None => {}
        }
    }
    Ok(out)
}

fn unknown_leading_coefficient(g: &MultiPoly, n: usize, i: usize, ord: MonomialOrder) -> Option<MultiPoly> {
    let lm = g.terms().iter().map(|t| &t.0).max_by(|a, b| ord.cmp(a, b))?;
    let head: Vec<u32> = (0..n).map(|j| lm.exponent(j) as u32).collect();
    if head[i] == 0 || (0..n).any(|j| j != i && head[j] != 0) {
        return None;
    }
    let terms = g.terms().iter().filter(|(m, _)| (0..n).all(|j| m.exponent(j) as u32 == head[j])).map(|(m, c)| {
        let mut m = m.clone();
        m.set_exponent(i, 0);
        (m, c.clone())
    });
    Some(MultiPoly::from_terms(g.vars(), terms))
}

fn check_generic_dimension(sys: &PolySystem, seed: u64) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let values: Vec<Rational> = sys
        .parameters
        .iter()
        .map(|_| Rational::new(rng.gen_range(1..=97i64).into(), rng.gen_range(1..=13i64).into()))
        .collect();
    let spec = sys.specialize(&values)?;
    let gb = GroebnerBasis::compute_in(&VarList::new(&spec.unknowns), &spec.equations, MonomialOrder::GrevLex);
    match gb.dimensionality() {
        Dimensionality::Positive => Err(Error::NotZeroDimensional(format!(
            "positive-dimensional fibre at the random parameter point {}",
            values.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(", ")
        ))),
        _ => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn system(eqs: &[&str], unknowns: &[&str], params: &[&str]) -> PolySystem {
        let all: Vec<&str> = unknowns.iter().chain(params).copied().collect();
        let v = VarList::new(&all);
        let eqs = eqs.iter().map(|s| MultiPoly::parse(s, &v).unwrap()).collect();
        PolySystem::new(eqs, vec![], unknowns, params).unwrap()
    }

    #[test]
    fn square_root_family() {
        let dv = discriminant_variety(&system(&["x^2 - a"], &["x"], &["a"])).unwrap();
        assert_eq!(dv.components.len(), 1);
        assert_eq!(dv.components[0].polynomial.to_string(), "a");
        assert_eq!(dv.components[0].provenance, Provenance::CriticalLocus);
    }

    #[test]
    fn monic_quadratic() {
        let dv = discriminant_variety(&system(&["x^2 + b*x + c"], &["x"], &["b", "c"])).unwrap();
        let v = VarList::new(&["b", "c"]);
        let d = normalize(&MultiPoly::parse("b^2 - 4*c", &v).unwrap());
        assert_eq!(dv.polynomials(), vec![d]);
    }

    #[test]
    fn vanishing_leading_coefficient() {
        let dv = discriminant_variety(&system(&["a*x - 1"], &["x"], &["a"])).unwrap();
        assert!(dv.components.iter().any(|c| c.provenance == Provenance::LeadingCoefficient));
    }

    #[test]
    fn positive_dimensional_fibre_rejected() {
        let err = discriminant_variety(&system(&["x - y*a"], &["x", "y"], &["a"])).unwrap_err();
        assert!(matches!(err, Error::NotZeroDimensional(_)));
    }
}
