//! Buchberger engine and ideal-level operations.
//!
//! The pair loop runs Gebauer-Moeller elimination with sugar-first
//! selection; reductions are full normal forms with a deterministic reducer
//! choice (first basis element whose leading term divides). The cached
//! result is always the unique reduced basis, so it is independent of
//! generator order and safe to compare for ideal equality.
//!
//! Elimination uses a block order with the doomed variables in front;
//! quotients go through the classic single-generator trick
//! `I : f = (1/f) * (I cap (f))` iterated over the second ideal's
//! generators; radical membership is the localization trick: L lies in the
//! radical of I exactly when 1 lies in I + (y*L - 1).

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::hilbert::{hilbert_from_initial, HilbertData};
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::Polynomial;
use crate::ring::{same_ring, Ring, RingRef};
use once_cell::sync::OnceCell;
use std::cmp::Ordering;
use std::sync::Arc;

#[derive(Debug)]
pub struct Ideal {
    ring: RingRef,
    gens: Vec<Polynomial>,
    gb: OnceCell<Vec<Polynomial>>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        let copy = Ideal {
            ring: Arc::clone(&self.ring),
            gens: self.gens.clone(),
            gb: OnceCell::new(),
        };
        if let Some(b) = self.gb.get() {
            let _ = copy.gb.set(b.clone());
        }
        copy
    }
}

impl Ideal {
    /// Zero generators are dropped; mixed-ring generators are an error.
    pub fn new(ring: &RingRef, gens: Vec<Polynomial>) -> Result<Self> {
        for g in &gens {
            same_ring(ring, g.ring())?;
        }
        Ok(Ideal {
            ring: Arc::clone(ring),
            gens: gens.into_iter().filter(|g| !g.is_zero()).collect(),
            gb: OnceCell::new(),
        })
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    /// The reduced Groebner basis, computed once and cached. Sorted by
    /// ascending leading monomial, every element monic and tail-reduced.
    pub fn groebner_basis(&self, budget: &Budget) -> Result<&[Polynomial]> {
        self.gb
            .get_or_try_init(|| buchberger(&self.ring, &self.gens, budget))
            .map(|v| v.as_slice())
    }

    pub fn normal_form(&self, f: &Polynomial, budget: &Budget) -> Result<Polynomial> {
        same_ring(&self.ring, f.ring())?;
        let basis = self.groebner_basis(budget)?;
        let mut steps = StepCounter::new(budget.gb_steps);
        let (nf, _) = reduce_full(f, 0, basis, &mut steps)?;
        Ok(nf)
    }

    pub fn contains_poly(&self, f: &Polynomial, budget: &Budget) -> Result<bool> {
        Ok(self.normal_form(f, budget)?.is_zero())
    }

    pub fn contains_ideal(&self, other: &Ideal, budget: &Budget) -> Result<bool> {
        same_ring(&self.ring, &other.ring)?;
        for g in &other.gens {
            if !self.contains_poly(g, budget)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn equals(&self, other: &Ideal, budget: &Budget) -> Result<bool> {
        same_ring(&self.ring, &other.ring)?;
        Ok(self.groebner_basis(budget)? == other.groebner_basis(budget)?)
    }

    pub fn is_unit(&self, budget: &Budget) -> Result<bool> {
        let basis = self.groebner_basis(budget)?;
        Ok(basis.len() == 1 && basis[0].degree() == 0)
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    /// Generators of the intersection with the subring on the kept
    /// variables (given as indices into this ring, any order). The result
    /// lives in a fresh degrevlex ring on those variables.
    pub fn eliminate(&self, keep: &[usize], budget: &Budget) -> Result<Ideal> {
        let arity = self.ring.arity();
        let mut keep = keep.to_vec();
        keep.sort_unstable();
        keep.dedup();
        if keep.iter().any(|&i| i >= arity) {
            return Err(Error::IndexOutOfRange {
                index: *keep.iter().max().unwrap(),
                len: arity,
            });
        }
        if keep.is_empty() {
            return Err(Error::Unsupported("eliminate: nothing kept".into()));
        }
        let kept_names: Vec<String> = keep.iter().map(|&i| self.ring.name(i).to_string()).collect();
        let target = Ring::new(kept_names, MonomialOrder::DegRevLex, self.ring.field())?;
        if keep.len() == arity {
            // nothing to eliminate: the basis itself, moved to the fresh ring
            let basis = self.groebner_basis(budget)?;
            let gens = basis
                .iter()
                .map(|g| g.restrict(&target))
                .collect::<Result<Vec<_>>>()?;
            return Ideal::new(&target, gens);
        }
        let dropped: Vec<usize> = (0..arity).filter(|i| !keep.contains(i)).collect();
        let mut block_names: Vec<String> =
            dropped.iter().map(|&i| self.ring.name(i).to_string()).collect();
        block_names.extend(keep.iter().map(|&i| self.ring.name(i).to_string()));
        let block_ring = Ring::new(
            block_names,
            MonomialOrder::Elimination {
                split: dropped.len(),
            },
            self.ring.field(),
        )?;
        let moved = self
            .gens
            .iter()
            .map(|g| g.embed(&block_ring))
            .collect::<Result<Vec<_>>>()?;
        let block_ideal = Ideal::new(&block_ring, moved)?;
        let basis = block_ideal.groebner_basis(budget)?;
        let split = dropped.len();
        let mut out = Vec::new();
        for g in basis {
            let pure = g
                .terms()
                .iter()
                .all(|(m, _)| m.exps()[..split].iter().all(|&e| e == 0));
            if pure {
                out.push(g.restrict(&target)?);
            }
        }
        Ideal::new(&target, out)
    }

    /// Ideal quotient (I : J), one generator of J at a time via
    /// intersection-and-division in an extended ring.
    pub fn quotient(&self, other: &Ideal, budget: &Budget) -> Result<Ideal> {
        same_ring(&self.ring, &other.ring)?;
        if other.gens.is_empty() {
            // (I : 0) is the unit ideal
            return Ideal::new(&self.ring, vec![Polynomial::constant(&self.ring, 1)]);
        }
        let mut acc: Option<Ideal> = None;
        for f in &other.gens {
            let qf = self.quotient_single(f, budget)?;
            acc = Some(match acc {
                None => qf,
                Some(prev) => intersect(&prev, &qf, budget)?,
            });
        }
        Ok(acc.unwrap())
    }

    fn quotient_single(&self, f: &Polynomial, budget: &Budget) -> Result<Ideal> {
        if f.is_zero() {
            return Ideal::new(&self.ring, vec![Polynomial::constant(&self.ring, 1)]);
        }
        if f.degree() == 0 {
            return Ok(self.clone());
        }
        // I cap (f), then exact division by f
        let only_f = Ideal::new(&self.ring, vec![f.clone()])?;
        let meet = intersect(self, &only_f, budget)?;
        let gens = meet
            .gens
            .iter()
            .map(|g| exact_div(g, &meet.restricted(f)?))
            .collect::<Result<Vec<_>>>()?;
        Ideal::new(&self.ring, gens)
    }

    fn restricted(&self, f: &Polynomial) -> Result<Polynomial> {
        // move f into this ideal's ring (identity by names)
        f.restrict(&self.ring)
    }

    /// Iterated quotient by `f` until it stabilizes; the saturation proxy.
    /// Returns the stable ideal and how many quotients were taken.
    pub fn saturate_by(&self, f: &Polynomial, cap: usize, budget: &Budget) -> Result<(Ideal, usize)> {
        let f_here = f.restrict(&self.ring)?;
        let single = Ideal::new(&self.ring, vec![f_here])?;
        let mut cur = self.clone();
        for it in 0..cap {
            let next = cur.quotient(&single, budget)?;
            if next.equals(&cur, budget)? {
                return Ok((cur, it));
            }
            cur = next;
        }
        Ok((cur, cap))
    }

    pub fn hilbert(&self, budget: &Budget) -> Result<HilbertData> {
        let basis = self.groebner_basis(budget)?;
        let lts: Vec<Monomial> = basis
            .iter()
            .map(|g| g.leading().expect("basis elements nonzero").0.clone())
            .collect();
        Ok(hilbert_from_initial(&lts, self.ring.arity()))
    }
}

/// `I1 cap I2` by eliminating a tag variable from `t*I1 + (1-t)*I2`.
pub fn intersect(a: &Ideal, b: &Ideal, budget: &Budget) -> Result<Ideal> {
    let ring = same_ring(&a.ring, &b.ring)?.clone();
    if a.gens.is_empty() || b.gens.is_empty() {
        return Ideal::new(&ring, vec![]);
    }
    let tag = fresh_name(&ring, "t");
    let mut names = vec![tag.clone()];
    names.extend(ring.names().iter().cloned());
    let ext = Ring::new(
        names,
        MonomialOrder::Elimination { split: 1 },
        ring.field(),
    )?;
    let t = Polynomial::var_by_name(&ext, &tag)?;
    let one_minus_t = Polynomial::constant(&ext, 1).sub(&t)?;
    let mut gens = Vec::new();
    for g in &a.gens {
        gens.push(t.mul(&g.embed(&ext)?)?);
    }
    for g in &b.gens {
        gens.push(one_minus_t.mul(&g.embed(&ext)?)?);
    }
    let ext_ideal = Ideal::new(&ext, gens)?;
    let keep: Vec<usize> = (1..ext.arity()).collect();
    let meet = ext_ideal.eliminate(&keep, budget)?;
    // move back to the original ring (same variable names)
    let gens = meet
        .gens
        .iter()
        .map(|g| g.embed(&ring))
        .collect::<Result<Vec<_>>>()?;
    Ideal::new(&ring, gens)
}

/// True when `l` lies in the radical of `ideal`.
pub fn radical_membership(l: &Polynomial, ideal: &Ideal, budget: &Budget) -> Result<bool> {
    same_ring(&ideal.ring, l.ring())?;
    if l.is_zero() {
        return Ok(!ideal.gens.is_empty() && ideal.is_unit(budget)?);
    }
    let ring = &ideal.ring;
    let tag = fresh_name(ring, "y");
    let mut names: Vec<String> = ring.names().to_vec();
    names.push(tag.clone());
    let ext = Ring::new(names, MonomialOrder::DegRevLex, ring.field())?;
    let y = Polynomial::var_by_name(&ext, &tag)?;
    let mut gens = ideal
        .gens
        .iter()
        .map(|g| g.embed(&ext))
        .collect::<Result<Vec<_>>>()?;
    gens.push(y.mul(&l.embed(&ext)?)?.sub(&Polynomial::constant(&ext, 1))?);
    let ext_ideal = Ideal::new(&ext, gens)?;
    ext_ideal.is_unit(budget)
}

fn fresh_name(ring: &RingRef, base: &str) -> String {
    let mut name = format!("{base}_0");
    let mut k = 0;
    while ring.var_index(&name).is_ok() {
        k += 1;
        name = format!("{base}_{k}");
    }
    name
}

/// Exact division by a single polynomial; errors if the division leaves a
/// remainder (callers only use it where membership is already known).
fn exact_div(g: &Polynomial, f: &Polynomial) -> Result<Polynomial> {
    let ring = same_ring(g.ring(), f.ring())?.clone();
    let field = ring.field();
    let (flm, flc) = f.leading().ok_or(Error::DivisionByZero)?;
    let flm = flm.clone();
    let flc_inv = field.inv(flc)?;
    let mut rem = g.clone();
    let mut quot: Vec<(Monomial, u32)> = Vec::new();
    while let Some((rlm, rlc)) = rem.leading() {
        if !flm.divides(rlm) {
            return Err(Error::Unsupported(
                "exact division left a remainder".into(),
            ));
        }
        let qm = flm.div(rlm);
        let qc = field.mul(rlc, flc_inv);
        quot.push((qm.clone(), qc));
        rem = rem.sub(&f.mul_term(qc, &qm))?;
    }
    Polynomial::from_terms(&ring, quot)
}

struct StepCounter {
    used: u64,
    cap: u64,
}

impl StepCounter {
    fn new(cap: u64) -> Self {
        StepCounter { used: 0, cap }
    }

    #[inline]
    fn tick(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.cap {
            return Err(Error::BudgetExceeded {
                what: "groebner reduction steps",
                limit: self.cap,
            });
        }
        Ok(())
    }
}

/// Full normal form plus sugar bookkeeping. The reducer is the first basis
/// element (in index order) whose leading monomial divides the current one.
fn reduce_full(
    f: &Polynomial,
    sugar: u32,
    basis: &[Polynomial],
    steps: &mut StepCounter,
) -> Result<(Polynomial, u32)> {
    let ring = f.ring().clone();
    let mut work = f.clone();
    let mut sugar = sugar.max(work.degree());
    let mut done: Vec<(Monomial, u32)> = Vec::new();
    'outer: while let Some((lm, lc)) = work.leading() {
        let lm = lm.clone();
        for g in basis {
            let (glm, _) = g.leading().expect("basis nonzero");
            if glm.divides(&lm) {
                steps.tick()?;
                let q = glm.div(&lm);
                sugar = sugar.max(g.degree() + q.degree());
                // basis is monic, so the multiplier coefficient is just lc
                work = work.sub(&g.mul_term(lc, &q))?;
                continue 'outer;
            }
        }
        done.push((lm, lc));
        work = Polynomial::from_sorted_unchecked(&ring, work.terms()[1..].to_vec());
    }
    Ok((Polynomial::from_sorted_unchecked(&ring, done), sugar))
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
}

fn buchberger(ring: &RingRef, gens: &[Polynomial], budget: &Budget) -> Result<Vec<Polynomial>> {
    let order = ring.order();
    let mut steps = StepCounter::new(budget.gb_steps);
    let mut basis: Vec<Polynomial> = Vec::new();
    let mut sugars: Vec<u32> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    let add = |h: Polynomial,
                   sugar: u32,
                   basis: &mut Vec<Polynomial>,
                   sugars: &mut Vec<u32>,
                   pairs: &mut Vec<Pair>|
     -> Result<bool> {
        // returns true when the ideal turned out to be the unit ideal
        if h.degree() == 0 {
            basis.clear();
            sugars.clear();
            pairs.clear();
            basis.push(Polynomial::constant(ring, 1));
            sugars.push(0);
            return Ok(true);
        }
        let h = h.monic()?;
        let t = basis.len();
        update_pairs(pairs, basis, sugars, &h, t, order);
        basis.push(h);
        sugars.push(sugar);
        Ok(false)
    };

    // seed, interreducing as we go
    let mut unit = false;
    for g in gens {
        if unit {
            break;
        }
        let (nf, s) = reduce_full(g, g.degree(), &basis, &mut steps)?;
        if !nf.is_zero() {
            unit = add(nf, s, &mut basis, &mut sugars, &mut pairs)?;
        }
    }

    while !unit {
        let Some(best) = select_pair(&pairs, order) else {
            break;
        };
        let pair = pairs.swap_remove(best);
        steps.tick()?;
        let fi = &basis[pair.i];
        let fj = &basis[pair.j];
        let (li, _) = fi.leading().unwrap();
        let (lj, _) = fj.leading().unwrap();
        let ui = li.div(&pair.lcm);
        let uj = lj.div(&pair.lcm);
        let s = fi.mul_term(1, &ui).sub(&fj.mul_term(1, &uj))?;
        let (nf, sugar) = reduce_full(&s, pair.sugar, &basis, &mut steps)?;
        if !nf.is_zero() {
            unit = add(nf, sugar, &mut basis, &mut sugars, &mut pairs)?;
        }
    }

    reduce_basis(ring, basis, &mut steps)
}

/// Smallest pair by (sugar, lcm in ring order, i, j).
fn select_pair(pairs: &[Pair], order: MonomialOrder) -> Option<usize> {
    let mut best: Option<usize> = None;
    for (k, p) in pairs.iter().enumerate() {
        best = match best {
            None => Some(k),
            Some(b) => {
                let q = &pairs[b];
                let better = match p.sugar.cmp(&q.sugar) {
                    Ordering::Less => true,
                    Ordering::Greater => false,
                    Ordering::Equal => match order.cmp(&p.lcm, &q.lcm) {
                        Ordering::Less => true,
                        Ordering::Greater => false,
                        Ordering::Equal => (p.i, p.j) < (q.i, q.j),
                    },
                };
                Some(if better { k } else { b })
            }
        };
    }
    best
}

/// Gebauer-Moeller update for the arrival of `h` at index `t`.
fn update_pairs(
    pairs: &mut Vec<Pair>,
    basis: &[Polynomial],
    sugars: &[u32],
    h: &Polynomial,
    t: usize,
    order: MonomialOrder,
) {
    let lt_t = h.leading().unwrap().0.clone();
    let lts: Vec<&Monomial> = basis.iter().map(|g| g.leading().unwrap().0).collect();

    // prune old pairs whose lcm the newcomer strictly refines
    pairs.retain(|pr| {
        if !lt_t.divides(&pr.lcm) {
            return true;
        }
        let l_it = lts[pr.i].lcm(&lt_t);
        let l_jt = lts[pr.j].lcm(&lt_t);
        l_it == pr.lcm || l_jt == pr.lcm
    });

    // candidate pairs with the newcomer
    let sugar_t = h.degree().max(sugars.get(t).copied().unwrap_or(0));
    let mut cands: Vec<Pair> = (0..t)
        .map(|i| {
            let lcm = lts[i].lcm(&lt_t);
            let s_i = sugars[i] + (lcm.degree() - lts[i].degree());
            let s_t = sugar_t + (lcm.degree() - lt_t.degree());
            Pair {
                i,
                j: t,
                lcm,
                sugar: s_i.max(s_t),
            }
        })
        .collect();

    // group by identical lcm: a coprime member kills its whole group,
    // otherwise one representative survives
    cands.sort_by(|a, b| order.cmp(&a.lcm, &b.lcm).then(a.i.cmp(&b.i)));
    let mut kept: Vec<Pair> = Vec::with_capacity(cands.len());
    let mut g_start = 0;
    while g_start < cands.len() {
        let mut g_end = g_start + 1;
        while g_end < cands.len() && cands[g_end].lcm == cands[g_start].lcm {
            g_end += 1;
        }
        let coprime_member = (g_start..g_end)
            .any(|k| lts[cands[k].i].coprime(&lt_t));
        if !coprime_member {
            kept.push(cands[g_start].clone());
        }
        g_start = g_end;
    }

    // strict-divisibility filter across distinct lcms
    let survivors: Vec<Pair> = kept
        .iter()
        .filter(|p| {
            !kept.iter().any(|q| {
                q.lcm != p.lcm && q.lcm.divides(&p.lcm)
            })
        })
        .cloned()
        .collect();

    pairs.extend(survivors);
}

/// Minimalize and tail-reduce into the unique reduced basis.
fn reduce_basis(
    ring: &RingRef,
    mut basis: Vec<Polynomial>,
    steps: &mut StepCounter,
) -> Result<Vec<Polynomial>> {
    let order = ring.order();
    basis.sort_by(|a, b| {
        order.cmp(
            a.leading().map(|(m, _)| m).unwrap(),
            b.leading().map(|(m, _)| m).unwrap(),
        )
    });
    let mut minimal: Vec<Polynomial> = Vec::new();
    for g in basis {
        let lm = g.leading().unwrap().0;
        if !minimal
            .iter()
            .any(|h| h.leading().unwrap().0.divides(lm))
        {
            minimal.push(g);
        }
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<Polynomial> = minimal
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != k)
            .map(|(_, g)| g.clone())
            .collect();
        let (nf, _) = reduce_full(&minimal[k], 0, &others, steps)?;
        debug_assert!(!nf.is_zero());
        reduced.push(nf.monic()?);
    }
    reduced.sort_by(|a, b| {
        order.cmp(
            a.leading().map(|(m, _)| m).unwrap(),
            b.leading().map(|(m, _)| m).unwrap(),
        )
    });
    Ok(reduced)
}
