//! Certified real solving of zero-dimensional systems through a rational
//! univariate representation and interval evaluation.

mod linalg;
mod quotient;
mod rur;

use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interval::{eval_multi, eval_upoly, Interval};
use crate::poly::{MultiPoly, Rational, VarList};
use crate::system::PolySystem;
use crate::univariate::{bisect_once, isolate_squarefree, RationalInterval, RootInterval};
use crate::upoly::UPoly;

pub use linalg::{newton_identities, symmetric_inertia};
pub use quotient::Quotient;
pub use rur::{candidate_forms, quotient_of, rur_from_quotient, Rur};

#[derive(Clone, Debug)]
pub struct SolveOptions {
    /// Largest coordinate width of a reported box.
    pub width: Rational,
    /// Largest `i` tried in `x1 + i x2 + i^2 x3 + ...`.
    pub max_form: u32,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { width: Rational::new(1.into(), 1000.into()), max_form: 40 }
    }
}

/// A product of closed rational intervals, one per unknown.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "BoxRepr", from = "BoxRepr")]
pub struct SolutionBox {
    pub variables: Vec<String>,
    pub intervals: Vec<Interval>,
}

#[derive(Serialize, Deserialize)]
struct BoxEntry {
    variable: String,
    interval: RationalInterval,
    preview: String,
}

#[derive(Serialize, Deserialize)]
struct BoxRepr {
    intervals: Vec<BoxEntry>,
}

impl From<SolutionBox> for BoxRepr {
    fn from(b: SolutionBox) -> Self {
        BoxRepr {
            intervals: b
                .variables
                .iter()
                .zip(&b.intervals)
                .map(|(v, iv)| BoxEntry {
                    variable: v.clone(),
                    interval: RationalInterval::closed(iv.lo.clone(), iv.hi.clone()),
                    preview: format!("{:.6}", iv.midpoint().to_f64().unwrap_or(f64::NAN)),
                })
                .collect(),
        }
    }
}

impl From<BoxRepr> for SolutionBox {
    fn from(r: BoxRepr) -> Self {
        let (variables, intervals) = r
            .intervals
            .into_iter()
            .map(|e| {
                let lo = e.interval.lower.unwrap_or_else(Rational::zero);
                let hi = e.interval.upper.unwrap_or_else(|| lo.clone());
                (e.variable, Interval { lo, hi })
            })
            .unzip();
        SolutionBox { variables, intervals }
    }
}

impl SolutionBox {
    pub fn get(&self, var: &str) -> Option<&Interval> {
        self.variables.iter().position(|v| v == var).map(|i| &self.intervals[i])
    }

    pub fn midpoint_f64(&self, var: &str) -> Option<f64> {
        self.get(var).and_then(|iv| iv.midpoint().to_f64())
    }

    pub fn max_width(&self) -> Rational {
        self.intervals.iter().map(|i| i.width()).max().unwrap_or_else(Rational::zero)
    }

    pub fn is_point(&self) -> bool {
        self.intervals.iter().all(|i| i.is_point())
    }

    /// True when the boxes overlap in every coordinate.
    pub fn overlaps(&self, o: &SolutionBox) -> bool {
        self.intervals.iter().zip(&o.intervals).all(|(a, b)| a.intersects(b))
    }

    pub fn subset_of(&self, o: &SolutionBox) -> bool {
        self.intervals.iter().zip(&o.intervals).all(|(a, b)| a.subset_of(b))
    }

    /// Intervals reordered to follow `vars`.
    pub fn aligned(&self, vars: &[String]) -> Option<Vec<Interval>> {
        vars.iter().map(|v| self.get(v).cloned()).collect()
    }
}

/// Public form of a rational univariate representation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RURData {
    pub f: MultiPoly,
    pub g: MultiPoly,
    pub coordinate_numerators: Vec<(String, MultiPoly)>,
    pub separating_form: MultiPoly,
}

fn t_ring() -> VarList {
    VarList::new(&["T"])
}

fn upoly_to_t(p: &UPoly) -> MultiPoly {
    MultiPoly::from_dense(&t_ring(), 0, &p.to_rationals())
}

impl RURData {
    fn from_rur(r: &Rur) -> Self {
        RURData {
            f: upoly_to_t(&r.f),
            g: upoly_to_t(&r.g1),
            coordinate_numerators: r.vars.iter().cloned().zip(r.gv.iter().map(upoly_to_t)).collect(),
            separating_form: r.form_poly(),
        }
    }
}

/// A real root of the RUR polynomial together with the solution it encodes.
#[derive(Clone, Debug)]
struct RealPoint {
    root: RootInterval,
}

/// Solver state for one zero-dimensional system.
pub struct ZeroDimSolver {
    pub rur: Rur,
    equations: Vec<MultiPoly>,
    positives: Vec<MultiPoly>,
    points: Vec<RealPoint>,
}

fn check_no_parameters(sys: &PolySystem) -> Result<()> {
    if !sys.parameters.is_empty() {
        return Err(Error::Dimension(format!("system still has parameters {:?}", sys.parameters)));
    }
    Ok(())
}

/// Numerator `P` with `q(x(t)) = P(t) / g1(t)^deg(q)`.
fn positivity_numerator(rur: &Rur, q: &MultiPoly) -> (UPoly, u32) {
    let e = q.total_degree();
    let mut g1_pows = vec![UPoly::one()];
    for k in 1..=e as usize {
        let next = g1_pows[k - 1].mul(&rur.g1);
        g1_pows.push(next);
    }
    let mut den = num_bigint::BigInt::one();
    for (_, c) in q.terms() {
        den = num_integer::Integer::lcm(&den, c.denom());
    }
    let mut acc = UPoly::zero();
    for (m, c) in q.terms() {
        let mut t = UPoly::from_coeffs(vec![c.numer() * (&den / c.denom())]);
        for (v, &k) in m.exponents().iter().enumerate() {
            for _ in 0..k {
                t = t.mul(&rur.gv[v]);
            }
        }
        t = t.mul(&g1_pows[(e - m.degree()) as usize]);
        acc = acc.add(&t);
    }
    (acc, e)
}

/// Sign of `p` at the root of squarefree `f` isolated by `root`, refining as
/// needed; `common` is `gcd(f, p)`, or `None` when `p` is known not to vanish
/// at any root of `f`.
fn sign_at_root(p: &UPoly, f: &UPoly, common: Option<&UPoly>, root: &mut RootInterval) -> i8 {
    if p.is_zero() {
        return 0;
    }
    if root.is_exact() {
        return p.sign_at(&root.lo);
    }
    if let Some(g) = common.filter(|g| g.degree() > 0) {
        let (a, b) = (g.sign_at(&root.lo), g.sign_at(&root.hi));
        if a != b {
            return 0;
        }
    }
    loop {
        let s = eval_upoly(p, &Interval::new(root.lo.clone(), root.hi.clone())).sign();
        if s != 0 {
            return s;
        }
        *root = bisect_once(f, root);
        if root.is_exact() {
            return p.sign_at(&root.lo);
        }
    }
}

impl ZeroDimSolver {
    pub fn new(sys: &PolySystem, opts: &SolveOptions) -> Result<Option<Self>> {
        check_no_parameters(sys)?;
        let vars = VarList::new(&sys.unknowns);
        let equations: Vec<MultiPoly> = sys.equations.iter().filter(|e| !e.is_zero()).cloned().collect();
        for q in &sys.positives {
            if let Some(c) = q.constant_value() {
                if !c.is_positive() {
                    return Ok(None);
                }
            }
        }
        let positives: Vec<MultiPoly> = sys.positives.iter().filter(|q| !q.is_constant()).cloned().collect();
        let Some(mut q) = quotient_of(&vars, &equations)? else {
            return Ok(None);
        };
        let forms = candidate_forms(vars.len(), opts.max_form);
        let rur = rur_from_quotient(&mut q, &forms, opts.max_form)?;
        let mut points: Vec<RealPoint> =
            isolate_squarefree(&rur.f).into_iter().map(|root| RealPoint { root }).collect();
        if positives.is_empty() && points.len() != rur.hermite_real_count() {
            return Err(Error::Internal(format!(
                "RUR gives {} real solutions but the Hermite signature gives {}",
                points.len(),
                rur.hermite_real_count()
            )));
        }
        let mut g1_sign: Vec<i8> = Vec::with_capacity(points.len());
        for p in &mut points {
            // g1(t) is a nonzero multiple of f'(t) at every root
            let s = sign_at_root(&rur.g1, &rur.f, None, &mut p.root);
            if s == 0 {
                return Err(Error::Internal("RUR denominator vanishes at a root".into()));
            }
            g1_sign.push(s);
        }
        let mut keep = vec![true; points.len()];
        for q in &positives {
            let (num, e) = positivity_numerator(&rur, q);
            let common = rur.f.gcd(&num);
            for (k, p) in points.iter_mut().enumerate() {
                if !keep[k] {
                    continue;
                }
                let s = sign_at_root(&num, &rur.f, Some(&common), &mut p.root);
                let s = if e % 2 == 1 { s * g1_sign[k] } else { s };
                if s <= 0 {
                    keep[k] = false;
                }
            }
        }
        let points = points.into_iter().zip(keep).filter(|(_, k)| *k).map(|(p, _)| p).collect();
        Ok(Some(ZeroDimSolver { rur, equations, positives, points }))
    }

    pub fn real_count(&self) -> usize {
        self.points.len()
    }

    pub fn rur_data(&self) -> RURData {
        RURData::from_rur(&self.rur)
    }

    /// Encloses the solution of root `k` with coordinate widths at most `width`.
    fn enclose(&mut self, k: usize, width: &Rational) -> Vec<Interval> {
        let rur = &self.rur;
        let root = &mut self.points[k].root;
        if root.is_exact() {
            let t = root.lo.clone();
            let g1 = rur.g1.eval(&t);
            return rur.gv.iter().map(|g| Interval::point(g.eval(&t) / &g1)).collect();
        }
        let bits = bits_for(width);
        let mut blind = 1usize;
        loop {
            let t = Interval::new(root.lo.clone(), root.hi.clone());
            let g1 = eval_upoly(&rur.g1, &t);
            let mut steps = blind;
            blind = (blind * 2).min(64);
            if !g1.contains_zero() {
                let coords: Vec<Interval> = rur
                    .gv
                    .iter()
                    .map(|g| eval_upoly(g, &t).div(&g1).expect("nonzero denominator").round_out(bits))
                    .collect();
                let widest = coords.iter().map(|c| c.width()).max().unwrap_or_else(Rational::zero);
                if widest <= *width {
                    return coords;
                }
                // enclosure widths shrink about linearly with the root interval
                let ratio = (widest / width).to_f64().unwrap_or(2.0);
                steps = (ratio.log2().ceil() as usize).clamp(1, 64);
            }
            for _ in 0..steps {
                *root = bisect_once(&rur.f, root);
            }
            if root.is_exact() {
                return self.enclose(k, width);
            }
        }
    }

    /// Certified boxes, pairwise separated, with positivity constraints
    /// strictly positive over each box.
    pub fn boxes(&mut self, width: &Rational) -> Result<Vec<SolutionBox>> {
        let n = self.points.len();
        let mut widths = vec![width.clone(); n];
        let mut boxes: Vec<Vec<Interval>> = (0..n).map(|k| self.enclose(k, width)).collect();
        let half = Rational::new(1.into(), 2.into());
        loop {
            let mut changed = false;
            for k in 0..n {
                while self.positives.iter().any(|q| eval_multi(q, &boxes[k]).sign() != 1) {
                    widths[k] = &widths[k] * &half;
                    boxes[k] = self.enclose(k, &widths[k]);
                    if boxes[k].iter().all(|i| i.is_point())
                        && self.positives.iter().any(|q| eval_multi(q, &boxes[k]).sign() != 1)
                    {
                        return Err(Error::Internal("positivity fails at an exact solution".into()));
                    }
                }
            }
            for i in 0..n {
                for j in i + 1..n {
                    if boxes[i].iter().zip(&boxes[j]).all(|(a, b)| a.intersects(b)) {
                        widths[i] = &widths[i] * &half;
                        widths[j] = &widths[j] * &half;
                        boxes[i] = self.enclose(i, &widths[i]);
                        boxes[j] = self.enclose(j, &widths[j]);
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        for b in &boxes {
            for e in &self.equations {
                if !eval_multi(e, b).contains_zero() {
                    return Err(Error::Internal(format!("equation {e} excludes zero on a solution box")));
                }
            }
        }
        let variables: Vec<String> = self.rur.vars.names().to_vec();
        Ok(boxes.into_iter().map(|intervals| SolutionBox { variables: variables.clone(), intervals }).collect())
    }
}

fn bits_for(width: &Rational) -> u64 {
    let w = width.to_f64().unwrap_or(1e-3).max(1e-300);
    ((-w.log2()).ceil().max(0.0) as u64) + 8
}

/// All real solutions satisfying the positivity constraints, as isolating boxes.
pub fn solve_zero_dim(sys: &PolySystem, opts: &SolveOptions) -> Result<Vec<SolutionBox>> {
    if sys.unknowns.is_empty() {
        check_no_parameters(sys)?;
        let ok = sys.equations.iter().all(|e| e.is_zero())
            && sys.positives.iter().all(|q| q.constant_value().is_some_and(|c| c.is_positive()));
        return Ok(if ok { vec![SolutionBox { variables: vec![], intervals: vec![] }] } else { vec![] });
    }
    match ZeroDimSolver::new(sys, opts)? {
        None => Ok(Vec::new()),
        Some(mut s) => s.boxes(&opts.width),
    }
}

pub fn count_real_solutions(sys: &PolySystem) -> Result<usize> {
    if sys.unknowns.is_empty() {
        return Ok(solve_zero_dim(sys, &SolveOptions::default())?.len());
    }
    Ok(ZeroDimSolver::new(sys, &SolveOptions::default())?.map_or(0, |s| s.real_count()))
}

/// RUR with the default separating-form search.
pub fn compute_rur(sys: &PolySystem) -> Result<RURData> {
    compute_rur_with(sys, None)
}

/// RUR with an explicit separating form (integer coefficients per unknown).
pub fn compute_rur_with(sys: &PolySystem, form: Option<&[i64]>) -> Result<RURData> {
    check_no_parameters(sys)?;
    let vars = VarList::new(&sys.unknowns);
    let Some(mut q) = quotient_of(&vars, &sys.equations)? else {
        return Err(Error::Domain("the unit ideal has no RUR".into()));
    };
    let opts = SolveOptions::default();
    let forms = match form {
        Some(f) => {
            if f.len() != vars.len() {
                return Err(Error::Dimension("separating form length".into()));
            }
            vec![f.to_vec()]
        }
        None => candidate_forms(vars.len(), opts.max_form),
    };
    let rur = rur_from_quotient(&mut q, &forms, opts.max_form)?;
    // the bijection is checked by enclosing each real solution and testing the equations
    let equations: Vec<MultiPoly> = sys.equations.iter().filter(|e| !e.is_zero()).cloned().collect();
    let points = isolate_squarefree(&rur.f).into_iter().map(|root| RealPoint { root }).collect();
    let mut s = ZeroDimSolver { rur, equations, positives: vec![], points };
    s.boxes(&opts.width)?;
    Ok(s.rur_data())
}

/// Checks that every equation's enclosure over `bx` contains zero and that
/// exactly one real solution lies in the box.
pub fn certify_box(sys: &PolySystem, bx: &SolutionBox) -> Result<bool> {
    let Some(cells) = bx.aligned(&sys.unknowns) else {
        return Ok(false);
    };
    for e in &sys.equations {
        if !eval_multi(e, &cells).contains_zero() {
            return Ok(false);
        }
    }
    let Some(mut solver) = ZeroDimSolver::new(sys, &SolveOptions::default())? else {
        return Ok(false);
    };
    let target = SolutionBox { variables: sys.unknowns.clone(), intervals: cells };
    let mut inside = 0;
    for k in 0..solver.points.len() {
        let mut w = bx.max_width().max(Rational::new(1.into(), 1000.into()));
        let mut verdict = None;
        for _ in 0..40 {
            let b = SolutionBox { variables: sys.unknowns.clone(), intervals: solver.enclose(k, &w) };
            if b.subset_of(&target) {
                verdict = Some(true);
                break;
            }
            if !b.overlaps(&target) {
                verdict = Some(false);
                break;
            }
            if b.is_point() {
                break;
            }
            w = w / Rational::from_integer(4.into());
        }
        match verdict {
            Some(true) => inside += 1,
            Some(false) => {}
            None => return Ok(false),
        }
    }
    Ok(inside == 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    fn system(eqs: &[&str], unknowns: &[&str], positives: &[&str]) -> PolySystem {
        let vars = VarList::new(unknowns);
        let p = |s: &&str| MultiPoly::parse(s, &vars).unwrap();
        PolySystem::new(eqs.iter().map(p).collect(), positives.iter().map(p).collect(), unknowns, &[]).unwrap()
    }

    #[test]
    fn small_systems() {
        let s = system(&["x^2-2", "y-x"], &["x", "y"], &[]);
        let b = solve_zero_dim(&s, &SolveOptions::default()).unwrap();
        assert_eq!(b.len(), 2);
        assert!(b.iter().all(|bx| certify_box(&s, bx).unwrap()));
        let s = system(&["x^2-2", "y-x"], &["x", "y"], &["x"]);
        let b = solve_zero_dim(&s, &SolveOptions::default()).unwrap();
        assert_eq!(b.len(), 1);
        assert!(b[0].get("x").unwrap().lo > rat(1));
        assert_eq!(count_real_solutions(&system(&["x^2+1"], &["x"], &[])).unwrap(), 0);
        assert_eq!(count_real_solutions(&system(&["x^2+1", "x-1"], &["x"], &[])).unwrap(), 0);
    }

    #[test]
    fn rational_solutions_are_points() {
        let s = system(&["x^2-3*x+2", "y^2-y", "x*y-2*y"], &["x", "y"], &[]);
        let b = solve_zero_dim(&s, &SolveOptions::default()).unwrap();
        assert_eq!(b.len(), 3);
        assert!(b.iter().all(|bx| bx.is_point()));
    }

    #[test]
    fn rur_examples() {
        let r = compute_rur(&system(&["x^2-2"], &["x"], &[])).unwrap();
        assert_eq!(r.f.to_string(), "T^2-2");
        let s = system(&["x-1", "y-2"], &["x", "y"], &[]);
        let r = compute_rur_with(&s, Some(&[1, 2])).unwrap();
        assert_eq!(r.f.to_string(), "T-5");
        let s = system(&["x^2-2", "y^2-3"], &["x", "y"], &[]);
        let r = compute_rur_with(&s, Some(&[1, 3])).unwrap();
        assert_eq!(r.f.total_degree(), 4);
        assert_eq!(solve_zero_dim(&s, &SolveOptions::default()).unwrap().len(), 4);
    }

    #[test]
    fn multiple_roots() {
        let s = system(&["(x-1)^2", "y^3"], &["x", "y"], &[]);
        let b = solve_zero_dim(&s, &SolveOptions::default()).unwrap();
        assert_eq!(b.len(), 1);
        assert!(b[0].is_point());
        assert!(matches!(
            solve_zero_dim(&system(&["x*y"], &["x", "y"], &[]), &SolveOptions::default()),
            Err(Error::NotZeroDimensional(_))
        ));
    }

    #[test]
    fn shifted_box_fails() {
        let s = system(&["x^2-2", "y-x"], &["x", "y"], &[]);
        let b = solve_zero_dim(&s, &SolveOptions::default()).unwrap();
        let mut shifted = b[0].clone();
        shifted.intervals[0] = shifted.intervals[0].add(&Interval::point(rat(1)));
        assert!(!certify_box(&s, &shifted).unwrap());
    }
}
