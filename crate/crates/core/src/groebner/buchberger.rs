//! Buchberger completion with the Gebauer-Moeller pair criteria and sugar
//! selection.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;

use super::gpoly::{combine, reduce, GPoly};
use crate::poly::{Monomial, MonomialOrder};

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
}

struct Engine {
    ord: MonomialOrder,
    polys: Vec<GPoly>,
    sugar: Vec<u32>,
    active: Vec<usize>,
    pairs: Vec<Pair>,
}

impl Engine {
    fn pair(&self, i: usize, j: usize) -> Pair {
        let (li, lj) = (self.polys[i].lm(), self.polys[j].lm());
        let lcm = li.lcm(lj);
        let d = lcm.degree();
        let sugar = (self.sugar[i] + d - li.degree()).max(self.sugar[j] + d - lj.degree());
        Pair { i, j, lcm, sugar }
    }

    fn update(&mut self, h: usize) {
        let lh = self.polys[h].lm().clone();
        let cands: Vec<Pair> = self.active.iter().map(|&g| self.pair(h, g)).collect();
        let mut keep: Vec<bool> = vec![false; cands.len()];
        for (k, p) in cands.iter().enumerate() {
            let coprime = lh.is_coprime(self.polys[p.j].lm());
            let later = cands[k + 1..].iter().any(|q| q.lcm.divides(&p.lcm));
            let earlier = cands[..k].iter().zip(&keep).any(|(q, &kept)| kept && q.lcm.divides(&p.lcm));
            keep[k] = coprime || (!later && !earlier);
        }
        let new_pairs: Vec<Pair> = cands
            .into_iter()
            .zip(keep)
            .filter(|(p, kept)| *kept && !lh.is_coprime(self.polys[p.j].lm()))
            .map(|(p, _)| p)
            .collect();
        let polys = &self.polys;
        self.pairs
            .retain(|p| !(lh.divides(&p.lcm) && lh.lcm(polys[p.i].lm()) != p.lcm && lh.lcm(polys[p.j].lm()) != p.lcm));
        self.pairs.extend(new_pairs);
        self.active.retain(|&g| !lh.divides(polys[g].lm()));
        self.active.push(h);
    }

    fn select(&mut self) -> Option<Pair> {
        let ord = self.ord;
        let best = (0..self.pairs.len()).min_by(|&a, &b| {
            let (p, q) = (&self.pairs[a], &self.pairs[b]);
            p.sugar.cmp(&q.sugar).then_with(|| ord.cmp(&p.lcm, &q.lcm)).then_with(|| (p.i, p.j).cmp(&(q.i, q.j)))
        })?;
        Some(self.pairs.swap_remove(best))
    }

    fn spoly(&self, p: &Pair) -> GPoly {
        let (f, g) = (&self.polys[p.i], &self.polys[p.j]);
        let mf = p.lcm.div(f.lm()).unwrap();
        let mg = p.lcm.div(g.lm()).unwrap();
        let gc = f.lc().gcd(g.lc());
        let a: BigInt = g.lc() / &gc;
        let b: BigInt = f.lc() / &gc;
        GPoly::new(combine(self.ord, &a, Some(&mf), &f.terms[1..], &b, Some(&mg), &g.terms[1..]))
    }

    fn reducers(&self) -> Vec<&GPoly> {
        self.active.iter().map(|&i| &self.polys[i]).collect()
    }

    /// Adds a reduced nonzero polynomial; returns false on reaching the unit ideal.
    fn insert(&mut self, mut h: GPoly, sugar: u32) -> bool {
        h.make_primitive();
        let unit = h.lm().is_one();
        self.polys.push(h);
        self.sugar.push(sugar);
        let idx = self.polys.len() - 1;
        if unit {
            self.active = vec![idx];
            self.pairs.clear();
            return false;
        }
        self.update(idx);
        true
    }
}

/// Reduced Groebner basis (primitive integer coefficients, positive leading
/// coefficients), sorted by increasing leading monomial.
pub(crate) fn groebner(gens: Vec<GPoly>, ord: MonomialOrder) -> Vec<GPoly> {
    let mut e = Engine { ord, polys: Vec::new(), sugar: Vec::new(), active: Vec::new(), pairs: Vec::new() };
    let mut gens: Vec<GPoly> = gens.into_iter().filter(|g| !g.is_zero()).collect();
    gens.sort_by(|a, b| ord.cmp(a.lm(), b.lm()));
    for g in gens {
        let (h, _) = reduce(&g, &e.reducers(), ord, true);
        if h.is_zero() {
            continue;
        }
        let s = h.total_degree();
        if !e.insert(h, s) {
            break;
        }
    }
    while let Some(p) = e.select() {
        let s = e.spoly(&p);
        if s.is_zero() {
            continue;
        }
        let (h, _) = reduce(&s, &e.reducers(), ord, true);
        if h.is_zero() {
            continue;
        }
        if !e.insert(h, p.sugar) {
            break;
        }
        log::trace!("groebner: basis {} pairs {}", e.active.len(), e.pairs.len());
    }
    let mut basis: Vec<GPoly> = e.active.iter().map(|&i| e.polys[i].clone()).collect();
    basis.sort_by(|a, b| ord.cmp(a.lm(), b.lm()));
    interreduce(basis, ord)
}

/// Tail-reduces a minimal basis so that no term is divisible by another leading monomial.
pub(crate) fn interreduce(basis: Vec<GPoly>, ord: MonomialOrder) -> Vec<GPoly> {
    let mut basis = basis;
    for k in 0..basis.len() {
        let others: Vec<&GPoly> = basis.iter().enumerate().filter(|(i, _)| *i != k).map(|(_, g)| g).collect();
        let (r, _) = reduce(&basis[k], &others, ord, true);
        basis[k] = r;
    }
    debug_assert!(basis.windows(2).all(|w| ord.cmp(w[0].lm(), w[1].lm()) == Ordering::Less));
    basis
}
