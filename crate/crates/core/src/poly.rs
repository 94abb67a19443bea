//! Multivariate polynomials over a prime field.
//!
//! Terms are kept strictly descending in the owning ring's order with no
//! zero coefficients, so equality is structural and printing is canonical.

use crate::error::{Error, Result};
use crate::monomial::{check_arity, Monomial};
use crate::ring::{same_ring, RingRef};
use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    ring: RingRef,
    terms: Vec<(Monomial, u32)>,
}

impl Polynomial {
    pub fn zero(ring: &RingRef) -> Self {
        Polynomial {
            ring: Arc::clone(ring),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &RingRef, c: u32) -> Self {
        let c = c % ring.field().modulus();
        let mut terms = Vec::new();
        if c != 0 {
            terms.push((Monomial::one(ring.arity()), c));
        }
        Polynomial {
            ring: Arc::clone(ring),
            terms,
        }
    }

    pub fn var(ring: &RingRef, i: usize) -> Result<Self> {
        if i >= ring.arity() {
            return Err(Error::IndexOutOfRange {
                index: i,
                len: ring.arity(),
            });
        }
        Ok(Polynomial {
            ring: Arc::clone(ring),
            terms: vec![(Monomial::var(ring.arity(), i), 1)],
        })
    }

    pub fn var_by_name(ring: &RingRef, name: &str) -> Result<Self> {
        Polynomial::var(ring, ring.var_index(name)?)
    }

    /// Normalizing constructor: merges duplicates, drops zeros, sorts.
    pub fn from_terms(ring: &RingRef, raw: Vec<(Monomial, u32)>) -> Result<Self> {
        let f = ring.field();
        let order = ring.order();
        let mut terms: Vec<(Monomial, u32)> = Vec::with_capacity(raw.len());
        for (m, c) in raw {
            check_arity(ring.arity(), m.arity())?;
            terms.push((m, c % f.modulus()));
        }
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        let mut merged: Vec<(Monomial, u32)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match merged.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = f.add(*lc, c),
                _ => merged.push((m, c)),
            }
        }
        merged.retain(|&(_, c)| c != 0);
        Ok(Polynomial {
            ring: Arc::clone(ring),
            terms: merged,
        })
    }

    /// Internal fast path: `terms` must already be sorted descending with
    /// canonical nonzero coefficients.
    pub(crate) fn from_sorted_unchecked(ring: &RingRef, terms: Vec<(Monomial, u32)>) -> Self {
        debug_assert!(terms.iter().all(|&(_, c)| c != 0 && c < ring.field().modulus()));
        debug_assert!(terms
            .windows(2)
            .all(|w| ring.order().cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        Polynomial {
            ring: Arc::clone(ring),
            terms,
        }
    }

    #[inline]
    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    #[inline]
    pub fn terms(&self) -> &[(Monomial, u32)] {
        &self.terms
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Option<(&Monomial, u32)> {
        self.terms.first().map(|(m, c)| (m, *c))
    }

    /// Total degree; zero polynomial reports 0.
    pub fn degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    /// `Some(d)` when every term has total degree d (zero counts as degree 0).
    pub fn homogeneous_degree(&self) -> Option<u32> {
        match self.terms.first() {
            None => Some(0),
            Some((m0, _)) => {
                let d = m0.degree();
                if self.terms.iter().all(|(m, _)| m.degree() == d) {
                    Some(d)
                } else {
                    None
                }
            }
        }
    }

    pub fn coeff_of(&self, m: &Monomial) -> u32 {
        let order = self.ring.order();
        self.terms
            .binary_search_by(|(tm, _)| order.cmp(m, tm))
            .map(|i| self.terms[i].1)
            .unwrap_or(0)
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        let ring = same_ring(&self.ring, &other.ring)?;
        Ok(merge_add(ring, &self.terms, &other.terms, 1))
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        let ring = same_ring(&self.ring, &other.ring)?;
        let m1 = ring.field().neg(1);
        Ok(merge_add(ring, &self.terms, &other.terms, m1))
    }

    pub fn neg(&self) -> Polynomial {
        self.scale(self.ring.field().neg(1))
    }

    pub fn scale(&self, c: u32) -> Polynomial {
        let f = self.ring.field();
        if c == 0 {
            return Polynomial::zero(&self.ring);
        }
        if c == 1 {
            return self.clone();
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, a)| (m.clone(), f.mul(*a, c)))
            .collect();
        Polynomial {
            ring: Arc::clone(&self.ring),
            terms,
        }
    }

    /// Multiply by a single term c*m.
    pub fn mul_term(&self, c: u32, m: &Monomial) -> Polynomial {
        let f = self.ring.field();
        if c == 0 {
            return Polynomial::zero(&self.ring);
        }
        let terms = self
            .terms
            .iter()
            .map(|(tm, a)| (tm.mul(m), f.mul(*a, c)))
            .collect();
        // multiplying by a fixed monomial preserves the term order
        Polynomial {
            ring: Arc::clone(&self.ring),
            terms,
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        let ring = same_ring(&self.ring, &other.ring)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Polynomial::zero(ring));
        }
        let f = ring.field();
        // accumulate cross products, then normalize once
        let mut raw: Vec<(Monomial, u32)> = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                raw.push((ma.mul(mb), f.mul(*ca, *cb)));
            }
        }
        let order = ring.order();
        raw.sort_by(|a, b| order.cmp(&b.0, &a.0));
        let mut merged: Vec<(Monomial, u32)> = Vec::with_capacity(raw.len());
        for (m, c) in raw {
            match merged.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = f.add(*lc, c),
                _ => merged.push((m, c)),
            }
        }
        merged.retain(|&(_, c)| c != 0);
        Ok(Polynomial {
            ring: Arc::clone(ring),
            terms: merged,
        })
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::constant(&self.ring, 1);
        for _ in 0..e {
            acc = acc.mul(self).expect("same ring");
        }
        acc
    }

    /// Rescale so the leading coefficient is 1.
    pub fn monic(&self) -> Result<Polynomial> {
        match self.leading() {
            None => Ok(self.clone()),
            Some((_, c)) => {
                let inv = self.ring.field().inv(c)?;
                Ok(self.scale(inv))
            }
        }
    }

    /// Evaluate at a point given as one value per ring variable.
    pub fn evaluate(&self, point: &[u32]) -> Result<u32> {
        check_arity(self.ring.arity(), point.len())?;
        let f = self.ring.field();
        let mut acc = 0u32;
        for (m, c) in &self.terms {
            let mut t = *c;
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    t = f.mul(t, f.pow(point[i], e as u64));
                }
            }
            acc = f.add(acc, t);
        }
        Ok(acc)
    }

    /// Ring homomorphism determined by `images` (keyed by source variable
    /// name) into `target`. Source variables without an image must exist in
    /// `target` under the same name and map to themselves.
    pub fn substitute(
        &self,
        images: &HashMap<String, Polynomial>,
        target: &RingRef,
    ) -> Result<Polynomial> {
        for img in images.values() {
            same_ring(target, img.ring())?;
        }
        // resolve every source variable once
        let mut var_images: Vec<Polynomial> = Vec::with_capacity(self.ring.arity());
        for name in self.ring.names() {
            match images.get(name) {
                Some(p) => var_images.push(p.clone()),
                None => var_images.push(Polynomial::var_by_name(target, name)?),
            }
        }
        let mut acc = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(target, *c);
            for (i, &e) in m.exps().iter().enumerate() {
                for _ in 0..e {
                    t = t.mul(&var_images[i])?;
                }
            }
            acc = acc.add(&t)?;
        }
        Ok(acc)
    }

    /// Move a polynomial into a ring that contains all of its variables by
    /// name (possibly in a different order, with extra variables allowed).
    pub fn embed(&self, target: &RingRef) -> Result<Polynomial> {
        let mut map = Vec::with_capacity(self.ring.arity());
        for name in self.ring.names() {
            map.push(target.var_index(name)?);
        }
        let mut raw = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut exps = vec![0u16; target.arity()];
            for (i, &e) in m.exps().iter().enumerate() {
                exps[map[i]] = e;
            }
            raw.push((Monomial::new(exps), *c));
        }
        Polynomial::from_terms(target, raw)
    }

    /// Inverse of `embed` onto a subring: every term must be supported on
    /// variables that exist in `target`.
    pub fn restrict(&self, target: &RingRef) -> Result<Polynomial> {
        let mut map: Vec<Option<usize>> = Vec::with_capacity(self.ring.arity());
        for name in self.ring.names() {
            map.push(target.var_index(name).ok());
        }
        let mut raw = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut exps = vec![0u16; target.arity()];
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    match map[i] {
                        Some(j) => exps[j] = e,
                        None => {
                            return Err(Error::UnknownVariable(self.ring.name(i).to_string()))
                        }
                    }
                }
            }
            raw.push((Monomial::new(exps), *c));
        }
        Polynomial::from_terms(target, raw)
    }
}

/// a + s*b as one merge pass over descending term lists.
fn merge_add(
    ring: &RingRef,
    a: &[(Monomial, u32)],
    b: &[(Monomial, u32)],
    s: u32,
) -> Polynomial {
    let f = ring.field();
    let order = ring.order();
    let mut out: Vec<(Monomial, u32)> = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match order.cmp(&a[i].0, &b[j].0) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push((b[j].0.clone(), f.mul(b[j].1, s)));
                j += 1;
            }
            Ordering::Equal => {
                let c = f.add(a[i].1, f.mul(b[j].1, s));
                if c != 0 {
                    out.push((a[i].0.clone(), c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    for (m, c) in &b[j..] {
        out.push((m.clone(), f.mul(*c, s)));
    }
    Polynomial {
        ring: Arc::clone(ring),
        terms: out,
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, w: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(w, "0");
        }
        let names = self.ring.names();
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                write!(w, " + ")?;
            }
            first = false;
            let mut wrote = false;
            if *c != 1 || m.is_one() {
                write!(w, "{c}")?;
                wrote = true;
            }
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if wrote {
                    write!(w, "*")?;
                }
                wrote = true;
                write!(w, "{}", names[i])?;
                if e > 1 {
                    write!(w, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

/// Build `sum of c_i * prod_j var(v_ij)^e_ij` tersely; test and catalog glue.
pub fn poly_from_monomials(
    ring: &RingRef,
    terms: &[(i64, &[(usize, u16)])],
) -> Result<Polynomial> {
    let f = ring.field();
    let mut raw = Vec::with_capacity(terms.len());
    for (c, vars) in terms {
        let mut exps = vec![0u16; ring.arity()];
        for &(v, e) in *vars {
            if v >= ring.arity() {
                return Err(Error::IndexOutOfRange {
                    index: v,
                    len: ring.arity(),
                });
            }
            exps[v] += e;
        }
        raw.push((Monomial::new(exps), f.reduce_i64(*c)));
    }
    Polynomial::from_terms(ring, raw)
}
