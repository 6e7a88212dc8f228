//! Buchberger's algorithm for submodules of free modules over a polynomial
//! ring. Ideals are the rank-one case.
//!
//! Vectors are sparse term lists ordered position over term: a lower
//! component index ranks higher, ties broken by the ring's monomial order.

use std::cmp::Ordering;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poly::{Coeff, Monomial, MonomialOrder, Poly, PolyRing};

pub const DEFAULT_PAIR_BUDGET: usize = 20_000;

/// One term `c * m * e_comp`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Term {
    pub comp: usize,
    pub mono: Monomial,
    pub coeff: Coeff,
}

/// Sparse module vector, terms strictly descending.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub(crate) struct MVec {
    pub terms: Vec<Term>,
}

fn cmp_pos(order: MonomialOrder, a: (usize, &Monomial), b: (usize, &Monomial)) -> Ordering {
    b.0.cmp(&a.0).then_with(|| order.cmp(a.1, b.1))
}

impl MVec {
    pub fn from_polys(v: &[Poly]) -> MVec {
        let mut terms = Vec::new();
        for (comp, p) in v.iter().enumerate() {
            for (m, c) in p.terms() {
                terms.push(Term {
                    comp,
                    mono: m.clone(),
                    coeff: c.clone(),
                });
            }
        }
        MVec { terms }
    }

    pub fn unit(comp: usize, nvars: usize, one: Coeff) -> MVec {
        MVec {
            terms: vec![Term {
                comp,
                mono: Monomial::one(nvars),
                coeff: one,
            }],
        }
    }

    pub fn to_polys(&self, ring: &Arc<PolyRing>, rank: usize) -> Vec<Poly> {
        let mut parts: Vec<Vec<(Monomial, Coeff)>> = vec![Vec::new(); rank];
        for t in &self.terms {
            parts[t.comp].push((t.mono.clone(), t.coeff.clone()));
        }
        parts
            .into_iter()
            .map(|terms| Poly::from_terms(ring, terms))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&Term> {
        self.terms.first()
    }

    fn scale(&mut self, c: &Coeff) {
        for t in &mut self.terms {
            t.coeff = &t.coeff * c;
        }
    }

    /// `a - c * m * b` where `a` and `b` are term slices.
    fn sub_mul(order: MonomialOrder, a: &[Term], c: &Coeff, m: &Monomial, b: &[Term]) -> Vec<Term> {
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        let mut pending: Option<Term> = None;
        while i < a.len() || j < b.len() {
            if pending.is_none() && j < b.len() {
                pending = Some(Term {
                    comp: b[j].comp,
                    mono: b[j].mono.mul(m),
                    coeff: -(&b[j].coeff * c),
                });
            }
            match (a.get(i), pending.as_ref()) {
                (Some(x), Some(y)) => match cmp_pos(order, (x.comp, &x.mono), (y.comp, &y.mono)) {
                    Ordering::Greater => {
                        out.push(x.clone());
                        i += 1;
                    }
                    Ordering::Less => {
                        out.push(pending.take().expect("pending"));
                        j += 1;
                    }
                    Ordering::Equal => {
                        let s = &x.coeff + &y.coeff;
                        if !s.is_zero() {
                            out.push(Term {
                                comp: x.comp,
                                mono: x.mono.clone(),
                                coeff: s,
                            });
                        }
                        pending = None;
                        i += 1;
                        j += 1;
                    }
                },
                (Some(x), None) => {
                    out.push(x.clone());
                    i += 1;
                }
                (None, Some(_)) => {
                    out.push(pending.take().expect("pending"));
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        out
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Elem {
    pub v: MVec,
    /// Expression in the input generators, as a vector of rank `ngens`.
    pub cof: Option<MVec>,
}

/// Output of [`groebner`].
#[derive(Clone, Debug)]
pub(crate) struct Basis {
    pub order: MonomialOrder,
    pub elems: Vec<Elem>,
}

/// Full reduction of `v` (with cofactor `cof`) by `basis`.
fn reduce(order: MonomialOrder, v: MVec, mut cof: Option<MVec>, basis: &[&Elem]) -> (MVec, Option<MVec>) {
    let mut p = v.terms;
    let mut rem: Vec<Term> = Vec::new();
    let mut start = 0;
    while start < p.len() {
        let lt = &p[start];
        let hit = basis.iter().find(|g| {
            let gl = g.v.lead().expect("nonzero basis element");
            gl.comp == lt.comp && gl.mono.divides(&lt.mono)
        });
        match hit {
            None => {
                rem.push(lt.clone());
                start += 1;
            }
            Some(g) => {
                let gl = g.v.lead().expect("nonzero");
                let q = &lt.coeff * &gl.coeff.inv().expect("nonzero lead");
                let m = lt.mono.div(&gl.mono);
                if let (Some(c), Some(gc)) = (cof.as_mut(), g.cof.as_ref()) {
                    c.terms = MVec::sub_mul(order, &c.terms, &q, &m, &gc.terms);
                }
                p = MVec::sub_mul(order, &p[start + 1..], &q, &m, &g.v.terms[1..]);
                start = 0;
            }
        }
    }
    (MVec { terms: rem }, cof)
}

fn make_monic(e: &mut Elem) {
    if let Some(l) = e.v.lead() {
        if !l.coeff.is_one() {
            let inv = l.coeff.inv().expect("nonzero");
            e.v.scale(&inv);
            if let Some(c) = e.cof.as_mut() {
                c.scale(&inv);
            }
        }
    }
}

struct Pair {
    i: usize,
    j: usize,
    comp: usize,
    lcm: Monomial,
}

/// Computes a reduced Gröbner basis of the submodule generated by `gens`
/// (each of length `rank`). With `track`, every basis element carries its
/// expression in terms of `gens`.
pub(crate) fn groebner(
    ring: &Arc<PolyRing>,
    rank: usize,
    gens: &[Vec<Poly>],
    track: bool,
    budget: usize,
) -> Result<Basis> {
    let order = ring.order();
    let nvars = ring.nvars();
    let one = ring.field().one();
    let ideal_case = rank == 1;

    let mut all: Vec<Elem> = Vec::new();
    let mut active: Vec<bool> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let mut processed = 0usize;

    let insert = |all: &mut Vec<Elem>, active: &mut Vec<bool>, pairs: &mut Vec<Pair>, h: Elem| {
        let hl = h.v.lead().expect("nonzero").clone();
        let k = all.len();
        // Gebauer-Moeller update.
        let mut cands: Vec<(usize, Monomial, bool)> = (0..k)
            .filter(|&g| active[g])
            .filter_map(|g| {
                let gl = all[g].v.lead().expect("nonzero");
                (gl.comp == hl.comp).then(|| {
                    let coprime = ideal_case && gl.mono.lcm(&hl.mono).degree() == gl.mono.degree() + hl.mono.degree();
                    (g, gl.mono.lcm(&hl.mono), coprime)
                })
            })
            .collect();
        let mut kept: Vec<(usize, Monomial, bool)> = Vec::new();
        while let Some((g, l, coprime)) = cands.pop() {
            let dominated = cands.iter().chain(kept.iter()).any(|(_, l2, _)| l2.divides(&l));
            if coprime || !dominated {
                kept.push((g, l, coprime));
            }
        }
        pairs.retain(|p| {
            !(hl.comp == p.comp
                && hl.mono.divides(&p.lcm)
                && {
                    let li = all[p.i].v.lead().expect("nonzero").mono.lcm(&hl.mono);
                    let lj = all[p.j].v.lead().expect("nonzero").mono.lcm(&hl.mono);
                    li != p.lcm && lj != p.lcm
                })
        });
        for (g, l, coprime) in kept {
            if !coprime {
                pairs.push(Pair {
                    i: g,
                    j: k,
                    comp: hl.comp,
                    lcm: l,
                });
            }
        }
        for g in 0..k {
            if active[g] {
                let gl = all[g].v.lead().expect("nonzero");
                if gl.comp == hl.comp && hl.mono.divides(&gl.mono) {
                    active[g] = false;
                }
            }
        }
        all.push(h);
        active.push(true);
    };

    for (idx, g) in gens.iter().enumerate() {
        if g.len() != rank {
            return Err(Error::SizeMismatch("generator length differs from rank".into()));
        }
        let v = MVec::from_polys(g);
        let cof = track.then(|| MVec::unit(idx, nvars, one.clone()));
        let basis: Vec<&Elem> = all.iter().zip(&active).filter(|(_, a)| **a).map(|(e, _)| e).collect();
        let (r, c) = reduce(order, v, cof, &basis);
        if r.is_zero() {
            continue;
        }
        let mut h = Elem { v: r, cof: c };
        make_monic(&mut h);
        insert(&mut all, &mut active, &mut pairs, h);
    }

    while !pairs.is_empty() {
        if processed >= budget {
            return Err(Error::ResourceLimit { budget });
        }
        processed += 1;
        let best = (0..pairs.len())
            .min_by(|&a, &b| {
                cmp_pos(order, (pairs[a].comp, &pairs[a].lcm), (pairs[b].comp, &pairs[b].lcm))
                    .then(a.cmp(&b))
            })
            .expect("nonempty");
        let pr = pairs.swap_remove(best);
        let (gi, gj) = (&all[pr.i], &all[pr.j]);
        let li = gi.v.lead().expect("nonzero");
        let lj = gj.v.lead().expect("nonzero");
        let mi = pr.lcm.div(&li.mono);
        let mj = pr.lcm.div(&lj.mono);
        // Both are monic, so the S-vector is mi*gi - mj*gj.
        let zero: Vec<Term> = Vec::new();
        let a = MVec::sub_mul(order, &zero, &(-&one), &mi, &gi.v.terms);
        let s = MVec::sub_mul(order, &a, &one, &mj, &gj.v.terms);
        let cof = if track {
            let ci = gi.cof.as_ref().expect("tracked");
            let cj = gj.cof.as_ref().expect("tracked");
            let a = MVec::sub_mul(order, &zero, &(-&one), &mi, &ci.terms);
            Some(MVec {
                terms: MVec::sub_mul(order, &a, &one, &mj, &cj.terms),
            })
        } else {
            None
        };
        let basis: Vec<&Elem> = all.iter().zip(&active).filter(|(_, a)| **a).map(|(e, _)| e).collect();
        let (r, c) = reduce(order, MVec { terms: s }, cof, &basis);
        if r.is_zero() {
            continue;
        }
        let mut h = Elem { v: r, cof: c };
        make_monic(&mut h);
        insert(&mut all, &mut active, &mut pairs, h);
    }

    // Minimal basis from the active elements, then interreduce.
    let mut min: Vec<Elem> = all
        .into_iter()
        .zip(active)
        .filter(|(_, a)| *a)
        .map(|(e, _)| e)
        .collect();
    min.sort_by(|a, b| {
        let la = a.v.lead().expect("nonzero");
        let lb = b.v.lead().expect("nonzero");
        cmp_pos(order, (lb.comp, &lb.mono), (la.comp, &la.mono))
    });
    let mut reduced = Vec::with_capacity(min.len());
    for idx in 0..min.len() {
        let (lead, tail) = {
            let e = &min[idx];
            let l = e.v.terms[0].clone();
            (l, e.v.terms[1..].to_vec())
        };
        let others: Vec<&Elem> = min
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != idx)
            .map(|(_, e)| e)
            .collect();
        let (r, c) = reduce(order, MVec { terms: tail }, min[idx].cof.clone(), &others);
        let mut terms = vec![lead];
        terms.extend(r.terms);
        reduced.push(Elem {
            v: MVec { terms },
            cof: c,
        });
    }
    Ok(Basis {
        order,
        elems: reduced,
    })
}

impl Basis {
    /// Normal form of `v` and, when the basis is tracked, cofactors `w`
    /// with `v = sum w_i * gens_i + nf`.
    pub fn reduce(&self, v: &[Poly], one: &Coeff) -> (MVec, Option<MVec>) {
        let tracked = self.elems.first().is_some_and(|e| e.cof.is_some());
        let cof = (tracked || self.elems.is_empty()).then(MVec::default);
        let refs: Vec<&Elem> = self.elems.iter().collect();
        let (r, c) = reduce(self.order, MVec::from_polys(v), cof, &refs);
        // reduce accumulates -(quotient); flip the sign to get cofactors.
        let c = c.map(|mut c| {
            c.scale(&-one);
            c
        });
        (r, c)
    }

    pub fn vectors(&self, ring: &Arc<PolyRing>, rank: usize) -> Vec<Vec<Poly>> {
        self.elems.iter().map(|e| e.v.to_polys(ring, rank)).collect()
    }
}
