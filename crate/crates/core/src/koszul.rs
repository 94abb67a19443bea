//! Betti numbers of the linear strand.
//!
//! For a nondegenerate variety whose ideal contains no linear forms, the
//! p-th linear-strand Betti number is the kernel dimension of one Koszul
//! differential
//!
//!   Λ^{p-1} R₁ ⊗ I₂  →  Λ^{p-2} R₁ ⊗ I₃,
//!   v₁∧…∧v_{p-1} ⊗ q  ↦  Σᵢ (−1)^{i+1} v₁∧…v̂ᵢ…∧v_{p-1} ⊗ (vᵢ·q),
//!
//! with no image to subtract. The target is coordinatized by all degree-3
//! monomials of the ambient ring, so no basis of I₃ is ever needed for the
//! kernel itself. Everything here is exact linear algebra over the entry's
//! prime field; nothing depends on Gröbner bases.

use std::collections::HashMap;
use std::fmt;

use serde_json::{json, Value};

use crate::budget::Budget;
use crate::catalog::VarietySpec;
use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::linalg::{reduced_span, FpMatrix};
use crate::monomial::{combinations, monomials_of_degree, Monomial};
use crate::poly::Polynomial;
use crate::ring::{same_ring, RingRef};

/// Linear-strand Betti numbers of one variety at one prime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    pub variety: String,
    pub prime: u32,
    /// (p, q, value) triples; this module fills the q = 1 strand.
    pub entries: Vec<(usize, usize, usize)>,
}

impl BettiTable {
    pub fn get(&self, p: usize, q: usize) -> Option<usize> {
        self.entries
            .iter()
            .find(|&&(ep, eq, _)| ep == p && eq == q)
            .map(|&(_, _, v)| v)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "variety": self.variety,
            "prime": self.prime,
            "betti": self.entries.iter().map(|&(p, q, v)| json!([p, q, v])).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for BettiTable {
    fn fmt(&self, w: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(w, "variety {} prime {}", self.variety, self.prime)?;
        write!(w, "p    ")?;
        for (p, _, _) in &self.entries {
            write!(w, " {p:>5}")?;
        }
        writeln!(w)?;
        write!(w, "b_p,1")?;
        for (_, _, v) in &self.entries {
            write!(w, " {v:>5}")?;
        }
        Ok(())
    }
}

/// An element of the kernel at homological index p: a cocycle
/// Σ_W e_W ⊗ q_W with W running over the (p-1)-subsets of the variables
/// and each q_W a combination of a fixed quadric basis.
#[derive(Clone, Debug)]
pub struct KoszulClass {
    ring: RingRef,
    quadrics: Vec<Polynomial>,
    p: usize,
    /// coeffs[wedge index][quadric index], wedges in combinations() order.
    coeffs: Vec<Vec<u32>>,
    rank: usize,
}

impl KoszulClass {
    /// Validates shape and verifies the cocycle condition before accepting.
    pub fn new(
        ring: &RingRef,
        quadrics: &[Polynomial],
        p: usize,
        coeffs: Vec<Vec<u32>>,
        budget: &Budget,
    ) -> Result<Self> {
        let class = Self::from_parts(ring, quadrics, p, coeffs)?;
        if !class.is_cocycle(budget)? {
            return Err(Error::Shape("not a cocycle".into()));
        }
        Ok(class)
    }

    fn from_parts(
        ring: &RingRef,
        quadrics: &[Polynomial],
        p: usize,
        coeffs: Vec<Vec<u32>>,
    ) -> Result<Self> {
        if p == 0 {
            return Err(Error::Shape("class index must be at least 1".into()));
        }
        check_quadrics(ring, quadrics)?;
        let wedge_count = combinations(ring.arity(), p - 1).len();
        if coeffs.len() != wedge_count || coeffs.iter().any(|r| r.len() != quadrics.len()) {
            return Err(Error::Shape(format!(
                "coefficient block must be {wedge_count} x {}",
                quadrics.len()
            )));
        }
        let f = ring.field();
        let coeffs: Vec<Vec<u32>> = coeffs
            .into_iter()
            .map(|row| row.into_iter().map(|c| c % f.modulus()).collect())
            .collect();
        let rank = reduced_span(f, &coeffs).len();
        Ok(KoszulClass {
            ring: ring.clone(),
            quadrics: quadrics.to_vec(),
            p,
            coeffs,
            rank,
        })
    }

    pub fn p(&self) -> usize {
        self.p
    }

    /// Minimal number of quadrics in any representation of the class: the
    /// rank of the coefficient block.
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn coeffs(&self) -> &[Vec<u32>] {
        &self.coeffs
    }

    pub fn quadric_basis(&self) -> &[Polynomial] {
        &self.quadrics
    }

    /// The wedge index sets the coefficient rows refer to.
    pub fn wedge_basis(&self) -> Vec<Vec<u8>> {
        combinations(self.ring.arity(), self.p - 1)
    }

    pub fn is_zero(&self) -> bool {
        self.rank == 0
    }

    /// Apply the Koszul differential and test for exact vanishing.
    pub fn is_cocycle(&self, budget: &Budget) -> Result<bool> {
        if self.p == 1 {
            return Ok(true);
        }
        let shape = StrandShape::plan(&self.ring, self.quadrics.len(), self.p, budget)?;
        let f = self.ring.field();
        let mut image: HashMap<(usize, usize), u32> = HashMap::new();
        for_each_entry(&self.ring, &self.quadrics, &shape, |row_sub, row_mono, wi, k, v| {
            let c = self.coeffs[wi][k];
            if c != 0 {
                let slot = image.entry((row_sub, row_mono)).or_insert(0);
                *slot = f.add(*slot, f.mul(v, c));
            }
        });
        Ok(image.values().all(|&v| v == 0))
    }

    /// Canonical minimal set of quadrics appearing in the class: the row
    /// reduction of the coefficient block applied to the quadric basis.
    pub fn syzygy_quadrics(&self) -> Result<Vec<Polynomial>> {
        if self.is_zero() {
            return Err(Error::Shape("zero class has no syzygy ideal".into()));
        }
        let f = self.ring.field();
        reduced_span(f, &self.coeffs)
            .into_iter()
            .map(|row| {
                let mut acc = Polynomial::zero(&self.ring);
                for (k, &c) in row.iter().enumerate() {
                    if c != 0 {
                        acc = acc.add(&self.quadrics[k].scale(c))?;
                    }
                }
                acc.monic()
            })
            .collect()
    }

    /// The ideal generated by the class's minimal quadrics.
    pub fn syzygy_ideal(&self) -> Result<Ideal> {
        Ideal::new(&self.ring, self.syzygy_quadrics()?)
    }
}

fn check_quadrics(ring: &RingRef, quadrics: &[Polynomial]) -> Result<()> {
    for q in quadrics {
        same_ring(ring, q.ring())?;
        if q.homogeneous_degree() != Some(2) {
            return Err(Error::Shape("strand input must be quadrics".into()));
        }
    }
    Ok(())
}

/// Bases of the ideal's graded pieces up to the requested degree, assuming
/// quadratic generation: I_d = R₁ · I_{d-1} for d ≥ 3. Degree 2 returns
/// the given basis unchanged; higher pieces come back in echelon form over
/// the ring's descending monomial lists.
pub fn degree_pieces(
    ring: &RingRef,
    quadrics: &[Polynomial],
    upto: u32,
) -> Result<Vec<Vec<Polynomial>>> {
    check_quadrics(ring, quadrics)?;
    let f = ring.field();
    let mut out: Vec<Vec<Polynomial>> = vec![Vec::new(), Vec::new()];
    if upto < 2 {
        out.truncate(upto as usize + 1);
        return Ok(out);
    }
    out.push(quadrics.to_vec());
    let mut prev = quadrics.to_vec();
    for d in 3..=upto {
        let monos = monomials_of_degree(ring.arity(), d, ring.order());
        let index: HashMap<&Monomial, usize> =
            monos.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut rows = Vec::with_capacity(prev.len() * ring.arity());
        for g in &prev {
            for v in 0..ring.arity() {
                let x = Monomial::var(ring.arity(), v);
                let mut row = vec![0u32; monos.len()];
                for (m, c) in g.terms() {
                    row[index[&m.mul(&x)]] = *c;
                }
                rows.push(row);
            }
        }
        let basis: Vec<Polynomial> = reduced_span(f, &rows)
            .into_iter()
            .map(|row| {
                let terms: Vec<(Monomial, u32)> = row
                    .iter()
                    .enumerate()
                    .filter(|&(_, &c)| c != 0)
                    .map(|(i, &c)| (monos[i].clone(), c))
                    .collect();
                Polynomial::from_sorted_unchecked(ring, terms)
            })
            .collect();
        prev = basis.clone();
        out.push(basis);
    }
    Ok(out)
}

/// Row/column bookkeeping for one strand matrix. Columns are (wedge,
/// quadric) pairs; rows are (smaller wedge, degree-3 monomial) pairs.
struct StrandShape {
    wedges: Vec<Vec<u8>>,
    sub_index: HashMap<Vec<u8>, usize>,
    monos3: Vec<Monomial>,
    mono_index: HashMap<Monomial, usize>,
    m: usize,
    nrows: usize,
    ncols: usize,
}

impl StrandShape {
    fn plan(ring: &RingRef, m: usize, p: usize, budget: &Budget) -> Result<StrandShape> {
        debug_assert!(p >= 2);
        let n = ring.arity();
        let wedges = combinations(n, p - 1);
        let subs = combinations(n, p - 2);
        let monos3 = monomials_of_degree(n, 3, ring.order());
        let ncols = wedges.len() * m;
        let nrows = subs.len() * monos3.len();
        if ncols > budget.matrix_cols || nrows > budget.matrix_rows {
            return Err(Error::DimensionCap {
                rows: nrows,
                cols: ncols,
            });
        }
        let sub_index = subs.into_iter().enumerate().map(|(i, s)| (s, i)).collect();
        let mono_index = monos3
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, mo)| (mo, i))
            .collect();
        Ok(StrandShape {
            wedges,
            sub_index,
            monos3,
            mono_index,
            m,
            nrows,
            ncols,
        })
    }
}

/// Walk every nonzero entry of the strand matrix in deterministic order.
/// The callback receives (row sub-wedge index, row monomial index, column
/// wedge index, column quadric index, value).
fn for_each_entry(
    ring: &RingRef,
    quadrics: &[Polynomial],
    shape: &StrandShape,
    mut visit: impl FnMut(usize, usize, usize, usize, u32),
) {
    let f = ring.field();
    let n = ring.arity();
    for (wi, w) in shape.wedges.iter().enumerate() {
        for (k, q) in quadrics.iter().enumerate() {
            for t in 0..w.len() {
                let mut sub = w.clone();
                let v = sub.remove(t) as usize;
                let si = shape.sub_index[&sub];
                let x = Monomial::var(n, v);
                for (mo, c) in q.terms() {
                    let val = if t % 2 == 0 { *c } else { f.neg(*c) };
                    let mi = shape.mono_index[&mo.mul(&x)];
                    visit(si, mi, wi, k, val);
                }
            }
        }
    }
}

fn strand_matrix(
    ring: &RingRef,
    quadrics: &[Polynomial],
    p: usize,
    budget: &Budget,
) -> Result<FpMatrix> {
    let shape = StrandShape::plan(ring, quadrics.len(), p, budget)?;
    let w3 = shape.monos3.len() as u32;
    let mut entries = Vec::new();
    for_each_entry(ring, quadrics, &shape, |si, mi, wi, k, v| {
        let row = si as u32 * w3 + mi as u32;
        let col = (wi * shape.m + k) as u32;
        entries.push((row, col, v));
    });
    FpMatrix::from_entries(ring.field(), shape.nrows, shape.ncols, &entries)
}

/// The p-th linear-strand Betti number at the entry's prime.
pub fn koszul_beta_p1(spec: &VarietySpec, p: usize, budget: &Budget) -> Result<usize> {
    beta_for(&spec.ring, &spec.quadrics, p, budget)
}

fn beta_for(ring: &RingRef, quadrics: &[Polynomial], p: usize, budget: &Budget) -> Result<usize> {
    if p == 0 {
        return Err(Error::Shape("strand index must be at least 1".into()));
    }
    check_quadrics(ring, quadrics)?;
    if p == 1 {
        return Ok(quadrics.len());
    }
    if quadrics.is_empty() || p - 1 > ring.arity() {
        return Ok(0);
    }
    let mat = strand_matrix(ring, quadrics, p, budget)?;
    Ok(mat.ncols() - mat.rank())
}

/// The whole q = 1 strand, p = 1 up to the codimension.
pub fn betti_table(spec: &VarietySpec, budget: &Budget) -> Result<BettiTable> {
    let e = spec.expected.codim;
    let mut entries = Vec::with_capacity(e);
    for p in 1..=e {
        entries.push((p, 1, koszul_beta_p1(spec, p, budget)?));
    }
    Ok(BettiTable {
        variety: spec.id.to_string(),
        prime: spec.prime(),
        entries,
    })
}

/// Kernel basis at the strand's second-to-last position p = e−1, returned
/// as classes. An empty strand yields an empty list.
pub fn top_strand_classes(spec: &VarietySpec, budget: &Budget) -> Result<Vec<KoszulClass>> {
    let e = spec.expected.codim;
    if e < 2 {
        return Err(Error::Unsupported(
            "top strand needs codimension at least 2".into(),
        ));
    }
    let p = e - 1;
    kernel_classes(&spec.ring, &spec.quadrics, p, budget)
}

fn kernel_classes(
    ring: &RingRef,
    quadrics: &[Polynomial],
    p: usize,
    budget: &Budget,
) -> Result<Vec<KoszulClass>> {
    check_quadrics(ring, quadrics)?;
    let m = quadrics.len();
    if p == 1 {
        // the kernel is all of I₂; classes are the basis quadrics
        return (0..m)
            .map(|k| {
                let mut row = vec![0u32; m];
                row[k] = 1;
                KoszulClass::from_parts(ring, quadrics, 1, vec![row])
            })
            .collect();
    }
    let mat = strand_matrix(ring, quadrics, p, budget)?;
    mat.kernel_basis()
        .into_iter()
        .map(|v| {
            let coeffs: Vec<Vec<u32>> = v.chunks(m).map(|c| c.to_vec()).collect();
            KoszulClass::from_parts(ring, quadrics, p, coeffs)
        })
        .collect()
}

/// The canonical top-strand class whose representation omits the given
/// quadric entirely: the first kernel vector of the omission constraint
/// inside the top strand. Errors when no nonzero class avoids the quadric.
pub fn omit_one_class(spec: &VarietySpec, omit: usize, budget: &Budget) -> Result<KoszulClass> {
    let m = spec.quadrics.len();
    if omit >= m {
        return Err(Error::IndexOutOfRange {
            index: omit,
            len: m,
        });
    }
    let classes = top_strand_classes(spec, budget)?;
    if classes.is_empty() {
        return Err(Error::Shape("empty top strand".into()));
    }
    let f = spec.ring.field();
    // columns = classes, rows = the omitted quadric's coefficients across
    // the wedge basis; kernel vectors are the omitting combinations
    let wedge_count = classes[0].coeffs.len();
    let mut rows = vec![vec![0u32; classes.len()]; wedge_count];
    for (ci, class) in classes.iter().enumerate() {
        for (wi, row) in class.coeffs.iter().enumerate() {
            rows[wi][ci] = row[omit];
        }
    }
    let combos = FpMatrix::from_dense_rows(f, rows)?.kernel_basis();
    let theta = combos
        .first()
        .ok_or_else(|| Error::Shape("no class omits this quadric".into()))?;
    let p = classes[0].p;
    let mut coeffs = vec![vec![0u32; m]; wedge_count];
    for (ci, &t) in theta.iter().enumerate() {
        if t == 0 {
            continue;
        }
        for (wi, row) in classes[ci].coeffs.iter().enumerate() {
            for (k, &c) in row.iter().enumerate() {
                coeffs[wi][k] = f.add(coeffs[wi][k], f.mul(t, c));
            }
        }
    }
    KoszulClass::from_parts(&spec.ring, &spec.quadrics, p, coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{variety, VarietySpec};
    use crate::monomial::binomial;
    use crate::poly::poly_from_monomials;
    use crate::ring::Ring;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn b() -> Budget {
        Budget::default()
    }

    fn get(id: &str) -> VarietySpec {
        variety(id, 31).unwrap()
    }

    fn strand(spec: &VarietySpec) -> Vec<usize> {
        betti_table(spec, &b())
            .unwrap()
            .entries
            .iter()
            .map(|&(_, _, v)| v)
            .collect()
    }

    /// Eq for minimal-degree entries: p * C(e+1, p+1).
    fn minimal_degree_strand(e: usize) -> Vec<usize> {
        (1..=e)
            .map(|p| p as u64 * binomial(e as u64 + 1, p as u64 + 1))
            .map(|v| v as usize)
            .collect()
    }

    /// Eq for the del Pezzo entries: p * C(e+1, p+1) - C(e, p-1).
    fn del_pezzo_strand(e: usize) -> Vec<usize> {
        (1..=e)
            .map(|p| {
                (p as u64 * binomial(e as u64 + 1, p as u64 + 1)
                    - binomial(e as u64, p as u64 - 1)) as usize
            })
            .collect()
    }

    #[test]
    fn hypersurface_degree_pieces() {
        let r = Ring::standard("z", 4, 31).unwrap();
        let q = poly_from_monomials(&r, &[(1, &[(0, 1), (3, 1)]), (-1, &[(1, 1), (2, 1)])]).unwrap();
        let pieces = degree_pieces(&r, &[q], 4).unwrap();
        let dims: Vec<usize> = pieces.iter().map(|p| p.len()).collect();
        assert_eq!(dims, [0, 0, 1, 4, 10]);
        // echelon output stays inside the ideal: every degree-3 element is
        // a combination of variable multiples of the quadric
        for g in &pieces[3] {
            assert_eq!(g.homogeneous_degree(), Some(3));
        }
    }

    #[test]
    fn grassmannian_cubic_piece_against_point_evaluation() {
        let g = get("g14");
        let pieces = degree_pieces(&g.ring, &g.quadrics, 3).unwrap();
        assert_eq!(pieces[2].len(), 5);
        assert_eq!(pieces[3].len(), 45);

        // oracle: evaluate all degree-3 monomials at random wedge points;
        // the kernel of that evaluation is the cubic piece of the ideal
        let f = g.ring.field();
        let mut rng = ChaCha8Rng::seed_from_u64(97);
        let monos = monomials_of_degree(10, 3, g.ring.order());
        assert_eq!(monos.len(), 220);
        let mut rows = Vec::new();
        for _ in 0..260 {
            let a: Vec<u32> = (0..5).map(|_| rng.gen_range(0..31)).collect();
            let bb: Vec<u32> = (0..5).map(|_| rng.gen_range(0..31)).collect();
            let mut pt = Vec::new();
            for i in 0..5 {
                for j in i + 1..5 {
                    pt.push(f.sub(f.mul(a[i], bb[j]), f.mul(a[j], bb[i])));
                }
            }
            if pt.iter().all(|&x| x == 0) {
                continue;
            }
            rows.push(
                monos
                    .iter()
                    .map(|mo| {
                        mo.exps()
                            .iter()
                            .zip(&pt)
                            .fold(1u32, |acc, (&e, &x)| f.mul(acc, f.pow(x, u64::from(e))))
                    })
                    .collect::<Vec<u32>>(),
            );
        }
        let eval = FpMatrix::from_dense_rows(f, rows).unwrap();
        assert_eq!(eval.ncols() - eval.rank(), 45);
        // and the computed cubic basis vanishes at the same points
        let index: HashMap<&Monomial, usize> =
            monos.iter().enumerate().map(|(i, mo)| (mo, i)).collect();
        for gcub in &pieces[3] {
            assert!(gcub.terms().iter().all(|(mo, _)| index.contains_key(mo)));
        }
    }

    #[test]
    fn beta_one_counts_quadrics() {
        for id in ["g14", "s123", "v2p3", "dp6", "segre111"] {
            let s = get(id);
            assert_eq!(
                koszul_beta_p1(&s, 1, &b()).unwrap(),
                s.quadrics.len(),
                "{id}"
            );
        }
    }

    #[test]
    fn quintic_sections_share_the_codim_three_strand() {
        for id in ["g14", "x5", "x4", "x3"] {
            let s = get(id);
            assert_eq!(strand(&s), [5, 5, 0], "{id}");
            // beyond the codimension the strand stays zero
            assert_eq!(koszul_beta_p1(&s, 4, &b()).unwrap(), 0, "{id}");
        }
    }

    #[test]
    fn dp5_strand_is_the_quintic_strand() {
        let s = get("dp5");
        assert_eq!(strand(&s), [5, 5, 0]);
    }

    #[test]
    fn scroll_strands_follow_the_minimal_degree_formula() {
        for (id, e) in [("s2", 1usize), ("s111", 2), ("s112", 3), ("s1111", 3)] {
            let s = get(id);
            assert_eq!(s.expected.codim, e, "{id}");
            assert_eq!(strand(&s), minimal_degree_strand(e), "{id}");
        }
        // degree-6 scroll in P8, the largest default-tier minimal example
        let s = get("s123");
        assert_eq!(strand(&s), [15, 40, 45, 24, 5]);
    }

    #[test]
    fn del_pezzo_strands_follow_the_gorenstein_formula() {
        for (id, e) in [("dp6", 4usize), ("segre111", 4), ("segre22", 4), ("hsegre22", 4)] {
            let s = get(id);
            assert_eq!(strand(&s), del_pezzo_strand(e), "{id}");
        }
        assert_eq!(del_pezzo_strand(4), [9, 16, 9, 0]);
        let s = get("dp7");
        assert_eq!(strand(&s), [14, 35, 35, 14, 0]);
    }

    #[test]
    fn strand_agrees_across_primes() {
        for p in [31u32, 101] {
            let s = variety("dp6", p).unwrap();
            assert_eq!(strand(&s), [9, 16, 9, 0], "p={p}");
        }
    }

    #[test]
    fn betti_table_serializes() {
        let t = betti_table(&get("x3"), &b()).unwrap();
        assert_eq!(t.get(2, 1), Some(5));
        assert_eq!(t.get(9, 1), None);
        let j = t.to_json();
        assert_eq!(j["variety"], "x3");
        assert_eq!(j["prime"], 31);
        assert_eq!(j["betti"][1][2], 5);
        let text = t.to_string();
        assert!(text.contains("x3"));
    }

    #[test]
    fn oversized_strand_hits_the_dimension_cap() {
        let s = variety("v3p2", 31).unwrap();
        match koszul_beta_p1(&s, 6, &b()) {
            Err(Error::DimensionCap { cols, .. }) => assert_eq!(cols, 6804),
            other => panic!("expected a dimension cap, got {other:?}"),
        }
    }

    #[test]
    fn top_strand_of_the_grassmannian() {
        let g = get("g14");
        let classes = top_strand_classes(&g, &b()).unwrap();
        assert_eq!(classes.len(), 5);
        for c in &classes {
            assert_eq!(c.p(), 2);
            assert!(c.is_cocycle(&b()).unwrap());
            assert!(c.rank() <= 4);
        }
    }

    #[test]
    fn codim_two_top_strand_is_the_quadric_basis() {
        let s = get("s111");
        let classes = top_strand_classes(&s, &b()).unwrap();
        assert_eq!(classes.len(), 3);
        for (k, c) in classes.iter().enumerate() {
            assert_eq!(c.p(), 1);
            assert_eq!(c.rank(), 1);
            let quads = c.syzygy_quadrics().unwrap();
            assert_eq!(quads.len(), 1);
            assert_eq!(quads[0], s.quadrics[k].monic().unwrap());
        }
    }

    #[test]
    fn omit_one_classes_of_the_grassmannian() {
        let g = get("g14");
        for omit in 0..5 {
            let class = omit_one_class(&g, omit, &b()).unwrap();
            assert!(!class.is_zero());
            assert!(class.is_cocycle(&b()).unwrap());
            assert_eq!(class.rank(), 4);
            // the class never touches the omitted quadric
            for row in class.coeffs() {
                assert_eq!(row[omit], 0);
            }
            // and its syzygy ideal is generated by the other four relations
            let quads = class.syzygy_quadrics().unwrap();
            let others: Vec<Polynomial> = (0..5)
                .filter(|&j| j != omit)
                .map(|j| g.quadrics[j].clone())
                .collect();
            assert!(same_quadric_span(&g, &quads, &others), "omit {omit}");
        }
    }

    fn quad_coords(spec: &VarietySpec, polys: &[Polynomial]) -> Vec<Vec<u32>> {
        let monos = monomials_of_degree(spec.ring.arity(), 2, spec.ring.order());
        let index: HashMap<&Monomial, usize> =
            monos.iter().enumerate().map(|(i, mo)| (mo, i)).collect();
        polys
            .iter()
            .map(|q| {
                let mut v = vec![0u32; monos.len()];
                for (mo, c) in q.terms() {
                    v[index[mo]] = *c;
                }
                v
            })
            .collect()
    }

    fn same_quadric_span(spec: &VarietySpec, a: &[Polynomial], bq: &[Polynomial]) -> bool {
        let f = spec.ring.field();
        reduced_span(f, &quad_coords(spec, a)) == reduced_span(f, &quad_coords(spec, bq))
    }

    #[test]
    fn quintic_family_classes_have_small_rank() {
        // every class in the top strand, not only basis vectors
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for id in ["g14", "x5", "x4", "x3", "dp5"] {
            let s = get(id);
            let classes = top_strand_classes(&s, &b()).unwrap();
            assert_eq!(classes.len(), 5, "{id}");
            let f = s.ring.field();
            let m = s.quadrics.len();
            let wedge_count = classes[0].coeffs().len();
            for _ in 0..20 {
                let theta: Vec<u32> = (0..5).map(|_| rng.gen_range(0..31)).collect();
                let mut coeffs = vec![vec![0u32; m]; wedge_count];
                for (ci, &t) in theta.iter().enumerate() {
                    for (wi, row) in classes[ci].coeffs().iter().enumerate() {
                        for (k, &c) in row.iter().enumerate() {
                            coeffs[wi][k] = f.add(coeffs[wi][k], f.mul(t, c));
                        }
                    }
                }
                let combo = KoszulClass::new(&s.ring, &s.quadrics, classes[0].p(), coeffs, &b())
                    .unwrap();
                assert!(combo.rank() <= 4, "{id}");
            }
        }
    }

    #[test]
    fn broken_classes_are_rejected() {
        let g = get("g14");
        // a random non-kernel element should fail the cocycle check
        let wedge_count = combinations(10, 1).len();
        let mut coeffs = vec![vec![0u32; 5]; wedge_count];
        coeffs[0][0] = 1;
        match KoszulClass::new(&g.ring, &g.quadrics, 2, coeffs, &b()) {
            Err(Error::Shape(_)) => {}
            other => panic!("expected cocycle rejection, got {other:?}"),
        }
        // zero classes are cocycles but have no syzygy ideal
        let zero = KoszulClass::new(
            &g.ring,
            &g.quadrics,
            2,
            vec![vec![0u32; 5]; wedge_count],
            &b(),
        )
        .unwrap();
        assert!(zero.is_zero());
        assert!(zero.syzygy_ideal().is_err());
        // shape mismatches are rejected early
        assert!(KoszulClass::new(&g.ring, &g.quadrics, 2, vec![vec![0; 5]], &b()).is_err());
    }

    #[test]
    fn kernel_dimension_matches_class_count() {
        for id in ["g14", "dp6", "s111"] {
            let s = get(id);
            let e = s.expected.codim;
            let classes = top_strand_classes(&s, &b()).unwrap();
            assert_eq!(
                classes.len(),
                koszul_beta_p1(&s, e - 1, &b()).unwrap(),
                "{id}"
            );
        }
    }

    #[test]
    fn strand_rejects_index_zero_and_handles_tiny_inputs() {
        let s = get("s2");
        assert!(koszul_beta_p1(&s, 0, &b()).is_err());
        assert_eq!(strand(&s), [1]);
        // far beyond the variable count the wedge algebra is zero
        assert_eq!(koszul_beta_p1(&s, 9, &b()).unwrap(), 0);
        let dims = degree_pieces(&s.ring, &s.quadrics, 1).unwrap();
        assert_eq!(dims.len(), 2);
    }
}
