//! Open cylindrical decomposition of the complement of a hypersurface in
//! parameter space: projection by discriminants, leading coefficients and
//! resultants, then lifting with rational sample points.

use num_traits::{ToPrimitive, Zero};
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::gcd::{content_at, gcd, squarefree_part};
use crate::poly::json::rational_vec;
use crate::poly::resultant::{discriminant_at, resultant_at};
use crate::poly::{MultiPoly, Rational, VarList};
use crate::univariate::{
    bisect_once, count_open, isolate_squarefree, refine_upoly, sample_between_intervals, sturm_sequence, RootInterval,
};
use crate::upoly::UPoly;

/// `levels[i]` holds pairwise coprime squarefree factors whose main variable
/// is parameter `i`, so level `i` lives in the first `i + 1` parameters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProjectionStack {
    pub parameters: Vec<String>,
    pub levels: Vec<Vec<MultiPoly>>,
}

impl ProjectionStack {
    pub fn depth(&self) -> usize {
        self.parameters.len()
    }

    pub fn vars(&self) -> VarList {
        VarList::new(&self.parameters)
    }

    /// Product of the factors of `level` (0-based); `1` for an empty level.
    pub fn product(&self, level: usize) -> MultiPoly {
        self.levels[level].iter().fold(MultiPoly::one(&self.vars()), |acc, p| &acc * p)
    }

    pub fn products(&self) -> Vec<MultiPoly> {
        (0..self.depth()).map(|i| self.product(i)).collect()
    }

    /// Total degree of each level product.
    pub fn degrees(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.iter().map(|p| p.total_degree()).sum()).collect()
    }

    /// Factors of `level` restricted to the fibre over `prefix`, followed by
    /// their product. Fails when a factor vanishes identically or two factors
    /// share a root, i.e. when `prefix` is not a valid lower sample.
    pub fn fibre_polys(&self, level: usize, prefix: &[Rational]) -> Result<(Vec<UPoly>, UPoly)> {
        let assign: Vec<(usize, Rational)> = prefix.iter().cloned().enumerate().collect();
        let mut factors = Vec::with_capacity(self.levels[level].len());
        for p in &self.levels[level] {
            let s = p.specialize(&assign);
            if s.is_zero() {
                return Err(Error::StackInvalid(format!("factor {p} vanishes identically over the sample")));
            }
            factors.push(s.to_upoly(level)?);
        }
        let mut product = UPoly::one();
        for (j, f) in factors.iter().enumerate() {
            if f.degree() > 0 {
                if f.gcd(&f.derivative()).degree() > 0 {
                    return Err(Error::StackInvalid(format!("factor {} has a repeated root over the sample", j + 1)));
                }
                if product.gcd(f).degree() > 0 {
                    return Err(Error::StackInvalid(format!("factor {} shares a root with another factor", j + 1)));
                }
            }
            product = product.mul(f);
        }
        Ok((factors, product.primitive()))
    }

    /// Sorted real roots over `prefix`, each tagged with the factor it belongs to.
    pub fn fibre(&self, level: usize, prefix: &[Rational]) -> Result<Fibre> {
        let (factors, product) = self.fibre_polys(level, prefix)?;
        let roots = isolate_squarefree(&product);
        let mut seen = vec![0usize; factors.len()];
        let mut owners = Vec::with_capacity(roots.len());
        for iv in &roots {
            let owner = factors.iter().position(|f| {
                if f.degree() == 0 {
                    return false;
                }
                if iv.is_exact() {
                    f.sign_at(&iv.lo) == 0
                } else {
                    f.sign_at(&iv.lo) * f.sign_at(&iv.hi) < 0
                }
            });
            let Some(j) = owner else {
                return Err(Error::Internal("root of the level product owned by no factor".into()));
            };
            seen[j] += 1;
            owners.push((j, seen[j]));
        }
        Ok(Fibre { product, roots, owners })
    }
}

/// The real roots of one level product over a fixed lower point.
#[derive(Clone, Debug)]
pub struct Fibre {
    pub product: UPoly,
    pub roots: Vec<RootInterval>,
    /// `(factor, index)` per root: the root is the `index`-th real root of that factor.
    pub owners: Vec<(usize, usize)>,
}

impl Fibre {
    fn bound(&self, k: usize) -> Bound {
        let iv = refine_upoly(&self.product, &self.roots[k], &Rational::new(1.into(), (1u64 << 30).into()));
        let (factor, index) = self.owners[k];
        Bound::Root { factor, index, approx: iv.midpoint().to_f64().unwrap_or(f64::NAN) }
    }

    /// Lower and upper bound of the `l`-th open interval.
    pub fn bounds(&self, l: usize) -> (Bound, Bound) {
        let lower = if l == 0 { Bound::NegInfinity } else { self.bound(l - 1) };
        let upper = if l == self.roots.len() { Bound::PosInfinity } else { self.bound(l) };
        (lower, upper)
    }

    pub fn sample(&self, l: usize) -> Rational {
        sample_between_intervals(&self.product, &self.roots, l)
    }

    /// Uniformly drawn rational strictly inside the `l`-th open interval.
    pub fn random_inside<R: Rng>(&self, l: usize, rng: &mut R) -> Rational {
        let mut lower = if l == 0 { None } else { Some(self.roots[l - 1].clone()) };
        let mut upper = if l == self.roots.len() { None } else { Some(self.roots[l].clone()) };
        if let (Some(a), Some(b)) = (&mut lower, &mut upper) {
            while a.hi >= b.lo {
                *a = bisect_once(&self.product, a);
                *b = bisect_once(&self.product, b);
            }
        }
        let span = Rational::from_integer(8.into());
        let (a, b) = match (lower, upper) {
            (None, None) => (-span.clone(), span),
            (Some(a), None) => (a.hi.clone(), &a.hi + span),
            (None, Some(b)) => (&b.lo - &span, b.lo),
            (Some(a), Some(b)) => (a.hi, b.lo),
        };
        let t = Rational::new(rng.gen_range(1..1000i64).into(), 1000.into());
        &a + t * (b - &a)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Bound {
    NegInfinity,
    PosInfinity,
    /// The `index`-th real root (1-based) of factor `factor` (0-based) of the level.
    Root {
        factor: usize,
        index: usize,
        approx: f64,
    },
}

impl Bound {
    /// `Root(P<level>_<factor>, <index>)` with 1-based level and factor.
    pub fn label(&self, level: usize) -> String {
        match self {
            Bound::NegInfinity => "-inf".into(),
            Bound::PosInfinity => "+inf".into(),
            Bound::Root { factor, index, .. } => format!("Root(P{}_{}, {})", level + 1, factor + 1, index),
        }
    }

    pub fn approx(&self) -> f64 {
        match self {
            Bound::NegInfinity => f64::NEG_INFINITY,
            Bound::PosInfinity => f64::INFINITY,
            Bound::Root { approx, .. } => *approx,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LevelStep {
    /// Number of real roots of the level product below the cell.
    pub lower_index: usize,
    pub lower: Bound,
    pub upper: Bound,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Cell {
    pub depth: usize,
    pub path: Vec<LevelStep>,
    #[serde(with = "rational_vec")]
    pub sample: Vec<Rational>,
    pub solution_count: Option<usize>,
}

impl Cell {
    pub fn indices(&self) -> Vec<usize> {
        self.path.iter().map(|s| s.lower_index).collect()
    }

    pub fn sample_f64(&self) -> Vec<f64> {
        self.sample.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect()
    }
}

pub fn cad_project(top: &[MultiPoly], params: &[String]) -> Result<ProjectionStack> {
    cad_project_with(top, params, None)
}

/// Builds the projection levels from the top set; `guard` bounds the total
/// degree of every level product.
pub fn cad_project_with(top: &[MultiPoly], params: &[String], guard: Option<usize>) -> Result<ProjectionStack> {
    let d = params.len();
    if d == 0 {
        return Err(Error::Dimension("projection needs at least one parameter".into()));
    }
    let vars = VarList::new(params);
    let mut levels: Vec<Vec<MultiPoly>> = vec![Vec::new(); d];
    for p in top {
        if p.is_zero() {
            return Err(Error::Domain("zero polynomial in the projection set".into()));
        }
        distribute(&mut levels, p.with_vars(&vars)?);
    }
    for i in (0..d).rev() {
        let raw = std::mem::take(&mut levels[i]);
        let mut prim = Vec::new();
        for p in raw {
            let c = content_at(&p, i);
            if !c.is_constant() {
                distribute(&mut levels, c.clone());
            }
            prim.push(p.div_exact(&c).expect("content divides"));
        }
        let basis = gcd_free_basis(prim);
        let (here, below): (Vec<_>, Vec<_>) = basis.into_iter().partition(|p| p.involves(i));
        for p in below {
            distribute(&mut levels, p);
        }
        levels[i] = here;
        if let Some(limit) = guard {
            let degree: u32 = levels[i].iter().map(|p| p.total_degree()).sum();
            if degree as usize > limit {
                return Err(Error::DegreeGuard { level: i + 1, degree: degree as usize, limit });
            }
        }
        if i > 0 {
            for p in project_level(&levels[i], i)? {
                distribute(&mut levels, p);
            }
        }
        log::debug!("level {}: {} factors", i + 1, levels[i].len());
    }
    Ok(ProjectionStack { parameters: params.to_vec(), levels })
}

/// Files a polynomial under its main variable; constants are dropped.
fn distribute(levels: &mut [Vec<MultiPoly>], p: MultiPoly) {
    if p.is_constant() {
        return;
    }
    let main = (0..levels.len()).rev().find(|&i| p.involves(i)).expect("nonconstant");
    levels[main].push(p);
}

fn project_level(set: &[MultiPoly], v: usize) -> Result<Vec<MultiPoly>> {
    let mut out = Vec::new();
    for p in set {
        out.push(p.leading_coefficient_at(v));
        if p.degree_in(v) >= 2 {
            out.push(discriminant_at(p, v)?);
        }
    }
    let pairs: Vec<(usize, usize)> = (0..set.len()).flat_map(|a| (a + 1..set.len()).map(move |b| (a, b))).collect();
    let res: Vec<MultiPoly> =
        pairs.par_iter().map(|&(a, b)| resultant_at(&set[a], &set[b], v)).collect::<Result<_>>()?;
    out.extend(res);
    if out.iter().any(|p| p.is_zero()) {
        return Err(Error::StackInvalid("a projection polynomial vanished identically".into()));
    }
    Ok(out)
}

/// Squarefree, pairwise coprime factors generating the same radical.
pub fn gcd_free_basis(set: Vec<MultiPoly>) -> Vec<MultiPoly> {
    let mut out: Vec<MultiPoly> = Vec::new();
    let mut queue: Vec<MultiPoly> = set;
    while let Some(p) = queue.pop() {
        let mut p = squarefree_part(&p);
        if p.is_constant() {
            continue;
        }
        let mut k = 0;
        while k < out.len() {
            let g = gcd(&p, &out[k]);
            if g.is_constant() {
                k += 1;
                continue;
            }
            let q = out.swap_remove(k);
            let rest = q.div_exact(&g).expect("gcd divides");
            queue.push(rest);
            p = p.div_exact(&g).expect("gcd divides");
            queue.push(g);
            if p.is_constant() {
                break;
            }
            k = 0;
        }
        if !p.is_constant() {
            out.push(squarefree_part(&p));
        }
    }
    out.sort_by(|a, b| (a.total_degree(), a.len(), a.to_string()).cmp(&(b.total_degree(), b.len(), b.to_string())));
    out
}

/// All open cells of the complement, in lexicographic order of root-index paths.
pub fn cad_lift(stack: &ProjectionStack) -> Result<Vec<Cell>> {
    let d = stack.depth();
    let mut partial: Vec<(Vec<LevelStep>, Vec<Rational>)> = vec![(Vec::new(), Vec::new())];
    for level in 0..d {
        let next: Vec<Vec<(Vec<LevelStep>, Vec<Rational>)>> = partial
            .par_iter()
            .map(|(path, sample)| {
                let fibre = stack.fibre(level, sample)?;
                Ok((0..=fibre.roots.len())
                    .map(|l| {
                        let (lower, upper) = fibre.bounds(l);
                        let mut path = path.clone();
                        path.push(LevelStep { lower_index: l, lower, upper });
                        let mut sample = sample.clone();
                        sample.push(fibre.sample(l));
                        (path, sample)
                    })
                    .collect())
            })
            .collect::<Result<_>>()?;
        partial = next.into_iter().flatten().collect();
    }
    Ok(partial.into_iter().map(|(path, sample)| Cell { depth: d, path, sample, solution_count: None }).collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Lookup {
    Cell {
        index: usize,
    },
    /// The point lies on the zero set of the given (1-based) level product.
    Boundary {
        level: usize,
    },
    /// No listed cell has this path, e.g. it was removed by a positivity filter.
    Excluded,
}

pub fn cell_lookup(cells: &[Cell], stack: &ProjectionStack, point: &[Rational]) -> Result<Lookup> {
    if point.len() != stack.depth() {
        return Err(Error::Dimension(format!("point has {} coordinates, expected {}", point.len(), stack.depth())));
    }
    let mut path = Vec::with_capacity(point.len());
    for level in 0..stack.depth() {
        let product = match stack.fibre_polys(level, &point[..level]) {
            Ok((_, p)) => p,
            Err(Error::StackInvalid(_)) => return Ok(Lookup::Boundary { level }),
            Err(e) => return Err(e),
        };
        let x = &point[level];
        if product.sign_at(x) == 0 {
            return Ok(Lookup::Boundary { level: level + 1 });
        }
        path.push(count_open(&sturm_sequence(&product), None, Some(x)));
    }
    Ok(match cells.iter().position(|c| c.indices() == path) {
        Some(index) => Lookup::Cell { index },
        None => Lookup::Excluded,
    })
}

/// `k` random rational points strictly inside `cell`, drawn level by level.
pub fn interior_points<R: Rng>(
    stack: &ProjectionStack,
    cell: &Cell,
    k: usize,
    rng: &mut R,
) -> Result<Vec<Vec<Rational>>> {
    let mut out = Vec::with_capacity(k);
    for _ in 0..k {
        let mut point: Vec<Rational> = Vec::with_capacity(cell.depth);
        for (level, step) in cell.path.iter().enumerate() {
            let fibre = stack.fibre(level, &point)?;
            if step.lower_index > fibre.roots.len() {
                return Err(Error::Internal(format!(
                    "level {} has {} roots inside the cell but the path expects more than {}",
                    level + 1,
                    fibre.roots.len(),
                    step.lower_index
                )));
            }
            point.push(fibre.random_inside(step.lower_index, rng));
        }
        out.push(point);
    }
    Ok(out)
}

/// Real points of the top-level hypersurface over a rational grid of the
/// lower parameters, for plotting. Grid points on lower boundaries are skipped.
pub fn mesh_points(stack: &ProjectionStack, ranges: &[(Rational, Rational)], steps: usize) -> Result<Vec<Vec<f64>>> {
    let d = stack.depth();
    if ranges.len() + 1 != d {
        return Err(Error::Dimension(format!("{} ranges for {} lower parameters", ranges.len(), d - 1)));
    }
    let steps = steps.max(1);
    let axes: Vec<Vec<Rational>> = ranges
        .iter()
        .map(|(lo, hi)| {
            (0..=steps).map(|k| lo + (hi - lo) * Rational::new((k as i64).into(), (steps as i64).into())).collect()
        })
        .collect();
    let mut grid: Vec<Vec<Rational>> = vec![Vec::new()];
    for axis in &axes {
        grid = grid.into_iter().flat_map(|g| axis.iter().map(move |x| [g.clone(), vec![x.clone()]].concat())).collect();
    }
    let width = Rational::new(1.into(), (1u64 << 24).into());
    let rows: Vec<Vec<Vec<f64>>> = grid
        .par_iter()
        .map(|prefix| {
            let Ok((_, product)) = stack.fibre_polys(d - 1, prefix) else { return Vec::new() };
            let head: Vec<f64> = prefix.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect();
            isolate_squarefree(&product)
                .iter()
                .map(|iv| {
                    let r = refine_upoly(&product, iv, &width).midpoint().to_f64().unwrap_or(f64::NAN);
                    let mut row = head.clone();
                    row.push(r);
                    row
                })
                .collect()
        })
        .collect();
    Ok(rows.into_iter().flatten().collect())
}

/// Exact sign of `p` (over the parameters) at a point.
pub fn sign_at(p: &MultiPoly, point: &[Rational]) -> Result<i8> {
    let v = p.eval(point)?;
    Ok(if v.is_zero() {
        0
    } else if v > Rational::zero() {
        1
    } else {
        -1
    })
}
