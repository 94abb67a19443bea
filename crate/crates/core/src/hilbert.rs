//! Hilbert series of quotients by homogeneous ideals.
//!
//! Everything is read off the initial monomial ideal: the series numerator
//! comes from the pivot recursion on minimal monomial generators, and the
//! Krull dimension and degree come from clearing (1 - t) factors out of the
//! numerator. Hilbert function values are recovered by multiplying the
//! numerator into the binomial expansion of (1 - t)^(-n).

use crate::monomial::{binomial, Monomial};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertData {
    /// Numerator of the series over (1 - t)^arity, index = power of t.
    pub numerator: Vec<i64>,
    /// Number of variables of the ambient ring.
    pub arity: usize,
    /// Krull dimension of the quotient ring.
    pub dimension: usize,
    /// Normalized leading coefficient: value of the numerator at 1 after
    /// all (1 - t) factors are cleared.
    pub degree: u64,
}

impl HilbertData {
    /// Dimension of the graded piece in degree d.
    pub fn value(&self, d: u32) -> i64 {
        let n = self.arity as u64;
        let mut acc: i128 = 0;
        for (i, &c) in self.numerator.iter().enumerate() {
            let i = i as u32;
            if i > d || c == 0 {
                continue;
            }
            let k = (d - i) as u64;
            // coefficient of t^k in (1 - t)^(-n)
            let w = if n == 0 {
                u64::from(k == 0)
            } else {
                binomial(n - 1 + k, k)
            };
            acc += c as i128 * w as i128;
        }
        i64::try_from(acc).expect("hilbert value fits i64")
    }

    /// Projective dimension of the zero set (one less than Krull).
    pub fn projective_dimension(&self) -> Option<usize> {
        self.dimension.checked_sub(1)
    }
}

/// Build the series data from the leading monomials of a reduced basis.
pub fn hilbert_from_initial(lts: &[Monomial], arity: usize) -> HilbertData {
    let gens = minimalize(lts.to_vec());
    let numerator = numerator_rec(gens, arity);
    // clear (1 - t) factors: p(t) = (1 - t) q(t) iff p(1) = 0, and then
    // q is the running prefix sum of p
    let mut q = numerator.clone();
    let mut cleared = 0;
    while !q.is_empty() && q.iter().sum::<i64>() == 0 && cleared < arity {
        let mut acc = 0i64;
        let mut next = Vec::with_capacity(q.len());
        for &c in &q {
            acc += c;
            next.push(acc);
        }
        debug_assert_eq!(next.last().copied().unwrap_or(0), 0);
        next.pop();
        q = next;
        cleared += 1;
    }
    let at_one: i64 = q.iter().sum();
    let (dimension, degree) = if at_one == 0 {
        // quotient is the zero ring (unit ideal)
        (0, 0)
    } else {
        (arity - cleared, at_one.unsigned_abs())
    };
    HilbertData {
        numerator,
        arity,
        dimension,
        degree,
    }
}

/// Same dimension and eventually-equal Hilbert function. The window starts
/// past both numerators, where each function already agrees with its
/// polynomial, and runs for dimension + 1 points.
pub fn same_hilbert_polynomial(a: &HilbertData, b: &HilbertData) -> bool {
    if a.arity != b.arity || a.dimension != b.dimension {
        return false;
    }
    let start = a.numerator.len().max(b.numerator.len()) as u32;
    let width = a.dimension.max(1) as u32 + 1;
    (start..start + width).all(|d| a.value(d) == b.value(d))
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| m.degree());
    let mut out: Vec<Monomial> = Vec::with_capacity(gens.len());
    for m in gens {
        if !out.iter().any(|g| g.divides(&m)) {
            out.push(m);
        }
    }
    out
}

/// Numerator of the Hilbert series of S/(gens) over (1 - t)^arity, for a
/// minimal list of monomial generators.
fn numerator_rec(gens: Vec<Monomial>, arity: usize) -> Vec<i64> {
    if gens.is_empty() {
        return vec![1];
    }
    if gens.iter().any(|m| m.degree() == 0) {
        return vec![0];
    }
    let pairwise_coprime = gens
        .iter()
        .enumerate()
        .all(|(i, m)| gens[i + 1..].iter().all(|n| m.coprime(n)));
    if pairwise_coprime {
        let mut acc = vec![1i64];
        for m in &gens {
            acc = mul_one_minus_tpow(&acc, m.degree() as usize);
        }
        return acc;
    }
    // pivot on the variable hitting the most generators
    let mut counts = vec![0usize; arity];
    for m in &gens {
        for (v, &e) in m.exps().iter().enumerate() {
            if e > 0 {
                counts[v] += 1;
            }
        }
    }
    let pivot = counts
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(&a.0)))
        .map(|(v, _)| v)
        .unwrap();
    let x = Monomial::var(arity, pivot);

    // gens + (x): anything using the pivot collapses into x itself
    let mut plus: Vec<Monomial> = gens
        .iter()
        .filter(|m| m.exp(pivot) == 0)
        .cloned()
        .collect();
    plus.push(x.clone());

    // gens : x, then re-minimalize
    let colon: Vec<Monomial> = gens
        .iter()
        .map(|m| if m.exp(pivot) > 0 { x.div(m) } else { m.clone() })
        .collect();

    let a = numerator_rec(minimalize(plus), arity);
    let b = numerator_rec(minimalize(colon), arity);
    // HN = HN(plus) + t * HN(colon)
    let mut out = vec![0i64; a.len().max(b.len() + 1)];
    for (i, &c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, &c) in b.iter().enumerate() {
        out[i + 1] += c;
    }
    while out.len() > 1 && *out.last().unwrap() == 0 {
        out.pop();
    }
    out
}

fn mul_one_minus_tpow(p: &[i64], d: usize) -> Vec<i64> {
    let mut out = vec![0i64; p.len() + d];
    for (i, &c) in p.iter().enumerate() {
        out[i] += c;
        out[i + d] -= c;
    }
    while out.len() > 1 && *out.last().unwrap() == 0 {
        out.pop();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::monomials_of_degree;
    use crate::monomial::MonomialOrder;

    fn m(exps: &[u16]) -> Monomial {
        Monomial::new(exps.to_vec())
    }

    #[test]
    fn polynomial_ring_itself() {
        let h = hilbert_from_initial(&[], 3);
        assert_eq!(h.numerator, vec![1]);
        assert_eq!(h.dimension, 3);
        assert_eq!(h.degree, 1);
        // values are the full binomial count of monomials
        assert_eq!(h.value(0), 1);
        assert_eq!(h.value(2), 6);
        assert_eq!(h.value(5), 21);
    }

    #[test]
    fn one_linear_form() {
        let h = hilbert_from_initial(&[m(&[1, 0])], 2);
        assert_eq!(h.dimension, 1);
        assert_eq!(h.degree, 1);
        assert_eq!(h.value(0), 1);
        assert_eq!(h.value(7), 1);
    }

    #[test]
    fn fat_point() {
        // (x^2, x*y, y^2): length-3 scheme supported at the origin
        let h = hilbert_from_initial(&[m(&[2, 0]), m(&[1, 1]), m(&[0, 2])], 2);
        assert_eq!(h.dimension, 0);
        assert_eq!(h.degree, 3);
        assert_eq!(h.value(0), 1);
        assert_eq!(h.value(1), 2);
        assert_eq!(h.value(2), 0);
    }

    #[test]
    fn unit_ideal() {
        let h = hilbert_from_initial(&[m(&[0, 0])], 2);
        assert_eq!(h.dimension, 0);
        assert_eq!(h.degree, 0);
        assert_eq!(h.value(3), 0);
    }

    #[test]
    fn hypersurface_degree() {
        // one degree-4 generator in 5 variables: dimension 4, degree 4
        let h = hilbert_from_initial(&[m(&[4, 0, 0, 0, 0])], 5);
        assert_eq!(h.dimension, 4);
        assert_eq!(h.degree, 4);
    }

    #[test]
    fn values_match_direct_monomial_count() {
        // count standard monomials directly as an oracle
        let gens = [m(&[2, 1, 0]), m(&[0, 3, 0]), m(&[1, 0, 2])];
        let h = hilbert_from_initial(&gens, 3);
        for d in 0..10u32 {
            let count = monomials_of_degree(3, d, MonomialOrder::DegRevLex)
                .into_iter()
                .filter(|mono| !gens.iter().any(|g| g.divides(mono)))
                .count() as i64;
            assert_eq!(h.value(d), count, "degree {d}");
        }
    }

    #[test]
    fn redundant_generators_are_harmless() {
        let lean = hilbert_from_initial(&[m(&[1, 0])], 2);
        let fat = hilbert_from_initial(&[m(&[1, 0]), m(&[2, 0]), m(&[1, 1])], 2);
        assert_eq!(lean, fat);
    }

    #[test]
    fn polynomial_window_comparison() {
        // a conic and a line pair in the plane share dim and degree but a
        // conic and a line do not
        let conic = hilbert_from_initial(&[m(&[2, 0, 0])], 3);
        let two_lines = hilbert_from_initial(&[m(&[1, 1, 0])], 3);
        let line = hilbert_from_initial(&[m(&[1, 0, 0])], 3);
        assert!(same_hilbert_polynomial(&conic, &two_lines));
        assert!(!same_hilbert_polynomial(&conic, &line));
    }
}
