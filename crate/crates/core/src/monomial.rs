//! Monomials as dense exponent vectors, plus the supported term orders.

use crate::error::{Error, Result};
use std::cmp::Ordering;

/// Exponent vector with its total degree cached. The arity is fixed by the
/// ring a monomial is used with; operations check it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u16>,
    degree: u32,
}

impl Monomial {
    pub fn new(exps: Vec<u16>) -> Self {
        let degree = exps.iter().map(|&e| e as u32).sum();
        Monomial { exps, degree }
    }

    pub fn one(arity: usize) -> Self {
        Monomial {
            exps: vec![0; arity],
            degree: 0,
        }
    }

    pub fn var(arity: usize, i: usize) -> Self {
        let mut exps = vec![0u16; arity];
        exps[i] = 1;
        Monomial { exps, degree: 1 }
    }

    #[inline]
    pub fn arity(&self) -> usize {
        self.exps.len()
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.degree
    }

    #[inline]
    pub fn exp(&self, i: usize) -> u16 {
        self.exps[i]
    }

    #[inline]
    pub fn exps(&self) -> &[u16] {
        &self.exps
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.arity(), other.arity());
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(&a, &b)| a + b)
            .collect();
        Monomial {
            exps,
            degree: self.degree + other.degree,
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.arity() == other.arity()
            && self.degree <= other.degree
            && self.exps.iter().zip(&other.exps).all(|(&a, &b)| a <= b)
    }

    /// `other / self`; caller must have checked divisibility.
    pub fn div(&self, other: &Monomial) -> Monomial {
        debug_assert!(self.divides(other));
        let exps = other
            .exps
            .iter()
            .zip(&self.exps)
            .map(|(&b, &a)| b - a)
            .collect();
        Monomial {
            exps,
            degree: other.degree - self.degree,
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.arity(), other.arity());
        Monomial::new(
            self.exps
                .iter()
                .zip(&other.exps)
                .map(|(&a, &b)| a.max(b))
                .collect(),
        )
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(&other.exps)
            .all(|(&a, &b)| a == 0 || b == 0)
    }

    /// Project onto a subset of variable positions (used when moving between
    /// a ring and one of its elimination or section subrings).
    pub fn project(&self, keep: &[usize]) -> Monomial {
        Monomial::new(keep.iter().map(|&i| self.exps[i]).collect())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    /// Graded reverse lexicographic; the default everywhere.
    DegRevLex,
    /// Pure lexicographic.
    Lex,
    /// Block order eliminating the first `split` variables: compare the
    /// leading block by degrevlex, break ties on the trailing block.
    Elimination { split: usize },
}

impl MonomialOrder {
    pub fn cmp(self, a: &Monomial, b: &Monomial) -> Ordering {
        debug_assert_eq!(a.arity(), b.arity());
        match self {
            MonomialOrder::DegRevLex => degrevlex(a.exps(), b.exps(), a.degree(), b.degree()),
            MonomialOrder::Lex => lex(a.exps(), b.exps()),
            MonomialOrder::Elimination { split } => {
                let (a1, a2) = a.exps().split_at(split);
                let (b1, b2) = b.exps().split_at(split);
                let d = |s: &[u16]| s.iter().map(|&e| e as u32).sum::<u32>();
                degrevlex(a1, b1, d(a1), d(b1)).then_with(|| degrevlex(a2, b2, d(a2), d(b2)))
            }
        }
    }
}

fn lex(a: &[u16], b: &[u16]) -> Ordering {
    for (&x, &y) in a.iter().zip(b) {
        match x.cmp(&y) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    Ordering::Equal
}

fn degrevlex(a: &[u16], b: &[u16], da: u32, db: u32) -> Ordering {
    match da.cmp(&db) {
        Ordering::Equal => {}
        other => return other,
    }
    // Equal degree: larger = the one whose last nonzero difference is negative.
    for i in (0..a.len()).rev() {
        match a[i].cmp(&b[i]) {
            Ordering::Equal => continue,
            Ordering::Less => return Ordering::Greater,
            Ordering::Greater => return Ordering::Less,
        }
    }
    Ordering::Equal
}

/// All monomials of the given total degree, listed in descending order.
pub fn monomials_of_degree(arity: usize, degree: u32, order: MonomialOrder) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut cur = vec![0u16; arity];
    gen_rec(&mut cur, 0, degree, &mut out);
    out.sort_by(|a, b| order.cmp(b, a));
    out
}

fn gen_rec(cur: &mut Vec<u16>, pos: usize, remaining: u32, out: &mut Vec<Monomial>) {
    if pos + 1 == cur.len() {
        cur[pos] = remaining as u16;
        out.push(Monomial::new(cur.clone()));
        return;
    }
    for e in 0..=remaining {
        cur[pos] = e as u16;
        gen_rec(cur, pos + 1, remaining - e, out);
    }
    cur[pos] = 0;
}

/// Sorted k-subsets of `0..n` in lexicographic order; the index basis for
/// wedge powers.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<u8>> {
    assert!(n <= u8::MAX as usize);
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<u8> = (0..k as u8).collect();
    loop {
        out.push(cur.clone());
        // advance
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] as usize != n - k + i {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}

pub(crate) fn check_arity(expected: usize, got: usize) -> Result<()> {
    if expected != got {
        return Err(Error::ArityMismatch { expected, got });
    }
    Ok(())
}
