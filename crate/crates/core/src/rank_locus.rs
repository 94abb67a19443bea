//! Rank filtration of the quadric pencil.
//!
//! The quadric generators of a variety span a projective space of pencil
//! coordinates; writing each generator as a symmetric Gram matrix turns the
//! whole span into a single symmetric matrix with entries linear in those
//! coordinates. The pencil points whose matrix has rank at most t form a
//! projective algebraic set cut out by the (t+1)-minors, and the number of
//! linearly independent rank-at-most-t quadrics equals the affine dimension
//! of its linear span. Two independent bounds pin that number: exhaustive
//! point enumeration over the base field bounds the span from below, and
//! Rabinowitsch certificates for linear forms in the radical of the minors
//! bound it from above. A delta value is reported as exact only when the
//! bounds meet, and cross-prime agreement is checked rather than assumed.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::budget::Budget;
use crate::catalog::{variety, VarietySpec};
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::groebner::{radical_membership, Ideal};
use crate::linalg::{reduced_span, FpMatrix, OnlineReducer};
use crate::monomial::{combinations, monomials_of_degree, Monomial};
use crate::poly::{poly_from_monomials, Polynomial};
use crate::ring::{same_ring, Ring, RingRef};

const SAMPLE_CAP: usize = 512;
const SPOT_CHECKS: usize = 100;
const STAGE_CAP: usize = 320;

/// Symmetric matrix of the pencil. Entry (i, j) is linear in the pencil
/// coordinates, and plugging in a pencil point gives the Gram matrix of the
/// corresponding quadric, canonicalized so that v^T G v reproduces it.
pub struct PencilGram {
    ring: RingRef,
    source: RingRef,
    grams: Vec<Vec<Vec<u32>>>,
}

/// The five relations of the Grassmannian family carry the index quadruple
/// they are built from as a label, and hyperplane sections keep the labels;
/// every other entry just numbers its generators.
fn pencil_names(spec: &VarietySpec) -> Vec<String> {
    if matches!(spec.id, "g14" | "x5" | "x4" | "x3") {
        combinations(5, 4)
            .iter()
            .map(|c| {
                let digits: String = c.iter().map(|d| d.to_string()).collect();
                format!("x{digits}")
            })
            .collect()
    } else {
        (1..=spec.quadrics.len()).map(|k| format!("x{k}")).collect()
    }
}

fn gram_of(q: &Polynomial, f: PrimeField, n: usize) -> Result<Vec<Vec<u32>>> {
    let half = f.inv2();
    let mut g = vec![vec![0u32; n]; n];
    for (mono, c) in q.terms() {
        if mono.degree() != 2 {
            return Err(Error::Shape("pencil members must be quadrics".into()));
        }
        let vars: Vec<usize> = mono
            .exps()
            .iter()
            .enumerate()
            .filter(|&(_, &e)| e > 0)
            .map(|(i, _)| i)
            .collect();
        match vars.as_slice() {
            [i] => g[*i][*i] = f.add(g[*i][*i], *c),
            [i, j] => {
                let h = f.mul(*c, half);
                g[*i][*j] = f.add(g[*i][*j], h);
                g[*j][*i] = f.add(g[*j][*i], h);
            }
            _ => unreachable!("degree two with more than two variables"),
        }
    }
    Ok(g)
}

/// Assemble the pencil matrix of a catalog entry's quadric generators.
/// Even characteristic never arises: the field layer rejects p = 2, so the
/// halved off-diagonal entries are always defined.
pub fn gram_pencil(spec: &VarietySpec) -> Result<PencilGram> {
    if spec.quadrics.is_empty() {
        return Err(Error::Shape("variety has no quadric generators".into()));
    }
    let f = spec.ring.field();
    let n = spec.ring.arity();
    let ring = Ring::degrevlex(pencil_names(spec), f.modulus())?;
    let grams = spec
        .quadrics
        .iter()
        .map(|q| gram_of(q, f, n))
        .collect::<Result<Vec<_>>>()?;
    Ok(PencilGram { ring, source: spec.ring.clone(), grams })
}

impl PencilGram {
    /// Ring of pencil coordinates, one per quadric generator.
    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    /// Ambient coordinate ring of the variety the pencil came from.
    pub fn source(&self) -> &RingRef {
        &self.source
    }

    /// Number of quadrics spanning the pencil.
    pub fn m(&self) -> usize {
        self.grams.len()
    }

    /// Side length of the symmetric matrix.
    pub fn size(&self) -> usize {
        self.source.arity()
    }

    pub fn field(&self) -> PrimeField {
        self.ring.field()
    }

    /// Gram matrix of one generator, dense and symmetric.
    pub fn gram(&self, k: usize) -> Result<&Vec<Vec<u32>>> {
        self.grams.get(k).ok_or(Error::IndexOutOfRange { index: k, len: self.grams.len() })
    }

    /// Entry (r, c) as a linear form in the pencil coordinates.
    pub fn entry(&self, r: usize, c: usize) -> Result<Polynomial> {
        let n = self.size();
        if r >= n {
            return Err(Error::IndexOutOfRange { index: r, len: n });
        }
        if c >= n {
            return Err(Error::IndexOutOfRange { index: c, len: n });
        }
        let mut row = vec![0u32; self.m()];
        for (k, g) in self.grams.iter().enumerate() {
            row[k] = g[r][c];
        }
        form_from_row(&self.ring, &row)
    }

    /// Numeric Gram matrix at a pencil point.
    pub fn specialize(&self, point: &[u32]) -> Result<Vec<Vec<u32>>> {
        if point.len() != self.m() {
            return Err(Error::Shape("pencil point has the wrong length".into()));
        }
        let f = self.field();
        let p = f.modulus() as u64;
        let n = self.size();
        let mut out = vec![vec![0u32; n]; n];
        for i in 0..n {
            for j in i..n {
                let mut acc = 0u64;
                for (k, g) in self.grams.iter().enumerate() {
                    acc = (acc + g[i][j] as u64 * (point[k] as u64 % p)) % p;
                }
                out[i][j] = acc as u32;
                out[j][i] = acc as u32;
            }
        }
        Ok(out)
    }

    /// Exact rank of the Gram matrix at a pencil point.
    pub fn rank_at(&self, point: &[u32]) -> Result<usize> {
        let rows = self.specialize(point)?;
        Ok(FpMatrix::from_dense_rows(self.field(), rows)?.rank())
    }

    /// Determinant of the submatrix on the given rows and columns, expanded
    /// over column subsets so repeated work is shared across permutations.
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> Result<Polynomial> {
        if rows.len() != cols.len() {
            return Err(Error::Shape("minor needs as many rows as columns".into()));
        }
        let n = self.size();
        for &i in rows.iter().chain(cols.iter()) {
            if i >= n {
                return Err(Error::IndexOutOfRange { index: i, len: n });
            }
        }
        let k = rows.len();
        if k == 0 {
            return Ok(Polynomial::constant(&self.ring, 1));
        }
        let full = 1usize << k;
        let mut prev: Vec<Option<Polynomial>> = vec![None; full];
        prev[0] = Some(Polynomial::constant(&self.ring, 1));
        for (r, &row) in rows.iter().enumerate() {
            let mut next: Vec<Option<Polynomial>> = vec![None; full];
            for mask in 0..full {
                let Some(v) = prev[mask].take() else { continue };
                if v.is_zero() {
                    continue;
                }
                let mut below = 0usize;
                for (c, &col) in cols.iter().enumerate() {
                    if mask & (1 << c) != 0 {
                        below += 1;
                        continue;
                    }
                    let e = self.entry(row, col)?;
                    if e.is_zero() {
                        continue;
                    }
                    let prod = e.mul(&v)?;
                    let signed = if (r + below) % 2 == 0 { prod } else { prod.neg() };
                    let slot = &mut next[mask | (1 << c)];
                    *slot = Some(match slot.take() {
                        None => signed,
                        Some(acc) => acc.add(&signed)?,
                    });
                }
            }
            prev = next;
        }
        Ok(prev[full - 1].take().unwrap_or_else(|| Polynomial::zero(&self.ring)))
    }
}

/// Exhaustive scan of the projectivized pencil over its base field: every
/// point whose Gram matrix has rank at most t, with the span accumulated on
/// the fly and the first hits kept for spot checks.
pub struct RankLocus {
    t: usize,
    prime: u32,
    m: usize,
    field: PrimeField,
    hits: u64,
    sample: Vec<Vec<u32>>,
    span: Vec<Vec<u32>>,
}

impl RankLocus {
    pub fn t(&self) -> usize {
        self.t
    }

    pub fn prime(&self) -> u32 {
        self.prime
    }

    /// Total number of qualifying projective points.
    pub fn hits(&self) -> u64 {
        self.hits
    }

    /// The first qualifying points in enumeration order, capped.
    pub fn sample(&self) -> &[Vec<u32>] {
        &self.sample
    }

    /// Reduced-echelon basis of the linear span of all hits.
    pub fn span(&self) -> &[Vec<u32>] {
        &self.span
    }

    /// Affine dimension of the span.
    pub fn span_dim(&self) -> usize {
        self.span.len()
    }

    /// Reduced-echelon basis of the linear forms vanishing on every hit.
    pub fn annihilator(&self) -> Result<Vec<Vec<u32>>> {
        if self.span.is_empty() {
            return Ok((0..self.m)
                .map(|i| {
                    let mut v = vec![0u32; self.m];
                    v[i] = 1;
                    v
                })
                .collect());
        }
        let mat = FpMatrix::from_dense_rows(self.field, self.span.clone())?;
        Ok(reduced_span(self.field, &mat.kernel_basis()))
    }
}

/// Row-reduce with an early exit: true when the rank is at most `cap`.
fn rank_at_most(a: &mut [u64], n: usize, p: u64, cap: usize) -> bool {
    let mut rank = 0usize;
    for col in 0..n {
        let mut piv = None;
        for r in rank..n {
            if a[r * n + col] != 0 {
                piv = Some(r);
                break;
            }
        }
        let Some(pr) = piv else { continue };
        if rank + 1 > cap {
            return false;
        }
        if pr != rank {
            for c in col..n {
                a.swap(rank * n + c, pr * n + c);
            }
        }
        let pv = a[rank * n + col];
        for r in (rank + 1)..n {
            let x = a[r * n + col];
            if x == 0 {
                continue;
            }
            let mul = p - x;
            for c in col..n {
                a[r * n + c] = (a[r * n + c] * pv + a[rank * n + c] * mul) % p;
            }
        }
        rank += 1;
    }
    true
}

/// Visit every point of the projectivized pencil in normalized-representative
/// order (first nonzero coordinate = 1, later coordinates counting up) and
/// collect the ones whose Gram matrix has rank at most t.
pub fn enumerate_rank_points(pencil: &PencilGram, t: usize, budget: &Budget) -> Result<RankLocus> {
    let f = pencil.field();
    let p = f.modulus() as u64;
    let m = pencil.m();
    let n = pencil.size();
    if m > 6 {
        return Err(Error::Unsupported(format!(
            "pencil of {m} quadrics; enumeration stops at six"
        )));
    }
    let mut total: u128 = 0;
    for _ in 0..m {
        total = total * p as u128 + 1;
    }
    if total > u128::from(budget.enum_points) {
        return Err(Error::BudgetExceeded { what: "enum_points", limit: budget.enum_points });
    }

    // nonzero pencil coefficients per upper-triangle entry
    let mut support: Vec<(usize, usize, Vec<(usize, u64)>)> = Vec::new();
    for i in 0..n {
        for j in i..n {
            let cs: Vec<(usize, u64)> = (0..m)
                .filter(|&k| pencil.grams[k][i][j] != 0)
                .map(|k| (k, pencil.grams[k][i][j] as u64))
                .collect();
            if !cs.is_empty() {
                support.push((i, j, cs));
            }
        }
    }

    let vacuous = t >= n;
    let mut work = vec![0u64; n * n];
    let mut reducer = OnlineReducer::new(f);
    let mut hits = 0u64;
    let mut sample: Vec<Vec<u32>> = Vec::new();
    let mut pt = vec![0u32; m];
    for lead in 0..m {
        pt.iter_mut().for_each(|v| *v = 0);
        pt[lead] = 1;
        'points: loop {
            let inside = vacuous || {
                work.iter_mut().for_each(|w| *w = 0);
                for &(i, j, ref cs) in &support {
                    let mut acc = 0u64;
                    for &(k, c) in cs {
                        acc += c * pt[k] as u64;
                    }
                    let v = acc % p;
                    work[i * n + j] = v;
                    work[j * n + i] = v;
                }
                rank_at_most(&mut work, n, p, t)
            };
            if inside {
                hits += 1;
                if sample.len() < SAMPLE_CAP {
                    sample.push(pt.clone());
                }
                reducer.offer_dense(&pt);
            }
            let mut i = m;
            loop {
                if i <= lead + 1 {
                    break 'points;
                }
                i -= 1;
                pt[i] += 1;
                if (pt[i] as u64) < p {
                    break;
                }
                pt[i] = 0;
            }
        }
    }
    Ok(RankLocus {
        t,
        prime: f.modulus(),
        m,
        field: f,
        hits,
        sample,
        span: reducer.reduced_rows(m),
    })
}

/// A successful radical-membership run: the recorded minors generate an
/// ideal certified to contain a power of the form, and since they are a
/// subset of all (t+1)-minors the form lies in the radical of the full
/// minors ideal as well.
#[derive(Clone)]
pub struct Certificate {
    pub form: Polynomial,
    pub minors: Vec<(Vec<usize>, Vec<usize>)>,
    pub seed: u64,
}

impl Certificate {
    /// Rebuild the exact ideal the certificate refers to.
    pub fn minor_ideal(&self, pencil: &PencilGram) -> Result<Ideal> {
        let gens = self
            .minors
            .iter()
            .map(|(r, c)| pencil.minor(r, c))
            .collect::<Result<Vec<_>>>()?;
        Ideal::new(&pencil.ring, gens)
    }
}

/// Outcome of a certification attempt. Inconclusive is not a refutation:
/// it only means no certificate was found within the sampled minors.
pub enum Certification {
    Certified(Certificate),
    Inconclusive { stages: Vec<usize>, budget_hit: bool },
}

/// Try to certify that a linear form vanishes on the whole rank-at-most-t
/// locus: scan (t+1)-minors in seeded random order, keeping the ones that
/// are linearly independent of everything kept so far, and run the
/// localization trick on the kept set at growing stage sizes. Dependent
/// minors generate nothing new, so once the kept set spans the full
/// degree-(t+1) piece the last stage is equivalent to the complete minors
/// ideal; the stage cap comfortably exceeds that span for every pencil of
/// at most six quadrics.
pub fn certify_linear_form(
    pencil: &PencilGram,
    l: &Polynomial,
    t: usize,
    seed: u64,
    budget: &Budget,
) -> Result<Certification> {
    same_ring(&pencil.ring, l.ring())?;
    if l.is_zero() {
        return Err(Error::Shape("cannot certify the zero form".into()));
    }
    if l.homogeneous_degree() != Some(1) {
        return Err(Error::Shape("radical certificates are for linear forms".into()));
    }
    let n = pencil.size();
    let k = t + 1;
    if k > n {
        // no minors of that size exist, so nothing vanishes
        return Ok(Certification::Inconclusive { stages: vec![], budget_hit: false });
    }
    let subs: Vec<Vec<usize>> = combinations(n, k)
        .iter()
        .map(|s| s.iter().map(|&x| x as usize).collect())
        .collect();
    let mut pairs: Vec<(usize, usize)> = (0..subs.len())
        .flat_map(|r| (0..subs.len()).map(move |c| (r, c)))
        .collect();
    pairs.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));

    let monos = monomials_of_degree(pencil.m(), k as u32, pencil.ring.order());
    let index: HashMap<Monomial, usize> =
        monos.iter().cloned().enumerate().map(|(i, mono)| (mono, i)).collect();
    let mut reducer = OnlineReducer::new(pencil.field());
    let mut kept: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    let mut cursor = 0usize;
    let mut stages = Vec::new();
    let mut budget_hit = false;
    for target in [20usize, 40, 80, 160, STAGE_CAP] {
        while kept.len() < target && cursor < pairs.len() {
            let (ri, ci) = pairs[cursor];
            cursor += 1;
            let d = pencil.minor(&subs[ri], &subs[ci])?;
            if d.is_zero() {
                continue;
            }
            let mut row = vec![0u32; monos.len()];
            for (mono, c) in d.terms() {
                row[index[mono]] = *c;
            }
            if reducer.offer_dense(&row) {
                kept.push((subs[ri].clone(), subs[ci].clone()));
            }
        }
        stages.push(kept.len());
        if !kept.is_empty() {
            let gens = reducer
                .reduced_rows(monos.len())
                .into_iter()
                .map(|row| {
                    let terms: Vec<(Monomial, u32)> = row
                        .iter()
                        .enumerate()
                        .filter(|&(_, &c)| c != 0)
                        .map(|(i, &c)| (monos[i].clone(), c))
                        .collect();
                    Polynomial::from_sorted_unchecked(&pencil.ring, terms)
                })
                .collect();
            let ideal = Ideal::new(&pencil.ring, gens)?;
            match radical_membership(l, &ideal, budget) {
                Ok(true) => {
                    return Ok(Certification::Certified(Certificate {
                        form: l.clone(),
                        minors: kept,
                        seed,
                    }));
                }
                Ok(false) => {}
                Err(Error::BudgetExceeded { .. }) => budget_hit = true,
                Err(e) => return Err(e),
            }
        }
        if cursor >= pairs.len() || kept.len() >= STAGE_CAP {
            break;
        }
    }
    Ok(Certification::Inconclusive { stages, budget_hit })
}

/// One prime's worth of evidence inside a delta run.
pub struct PrimeRun {
    pub prime: u32,
    pub hits: u64,
    pub span_dim: usize,
    pub candidates: Vec<Polynomial>,
    pub certified: Vec<Polynomial>,
    pub budget_hit: bool,
}

/// Everything a delta query produced. The value is exact when `agreement`
/// holds: every annihilator candidate was certified at every prime and the
/// signed candidate patterns coincide across primes. Otherwise `delta` is
/// the enumeration-only span estimate.
pub struct DeltaReport {
    pub variety: String,
    pub t: usize,
    pub pencil_dim: usize,
    pub runs: Vec<PrimeRun>,
    pub delta: usize,
    pub agreement: bool,
    pub seed: u64,
}

impl DeltaReport {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "variety": self.variety,
            "t": self.t,
            "primes": self.runs.iter().map(|r| r.prime).collect::<Vec<_>>(),
            "delta": self.delta,
            "certified_forms": self.runs[0].certified.iter().map(signed_form_string).collect::<Vec<_>>(),
            "agreement": self.agreement,
            "seed": self.seed,
        })
    }
}

/// Print a form with signed coefficients so that reports are comparable
/// across primes whenever the underlying integer patterns agree.
pub fn signed_form_string(f: &Polynomial) -> String {
    if f.is_zero() {
        return "0".into();
    }
    let field = f.ring().field();
    let names = f.ring().names();
    let mut out = String::new();
    for (idx, (mono, c)) in f.terms().iter().enumerate() {
        let s = field.lift_signed(*c);
        let mag = s.unsigned_abs();
        if idx == 0 {
            if s < 0 {
                out.push('-');
            }
        } else {
            out.push_str(if s < 0 { " - " } else { " + " });
        }
        let mut head = String::new();
        for (i, &e) in mono.exps().iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !head.is_empty() {
                head.push('*');
            }
            head.push_str(&names[i]);
            if e > 1 {
                head.push_str(&format!("^{e}"));
            }
        }
        if head.is_empty() {
            out.push_str(&mag.to_string());
        } else {
            if mag != 1 {
                out.push_str(&mag.to_string());
                out.push('*');
            }
            out.push_str(&head);
        }
    }
    out
}

fn form_from_row(ring: &RingRef, row: &[u32]) -> Result<Polynomial> {
    let owned: Vec<(i64, Vec<(usize, u16)>)> = row
        .iter()
        .enumerate()
        .filter(|&(_, &c)| c != 0)
        .map(|(k, &c)| (c as i64, vec![(k, 1)]))
        .collect();
    let borrowed: Vec<(i64, &[(usize, u16)])> =
        owned.iter().map(|(c, v)| (*c, v.as_slice())).collect();
    poly_from_monomials(ring, &borrowed)
}

/// Re-derive the rank of random hits with the plain matrix pipeline; the
/// enumerator's early-exit elimination must never disagree with it.
fn spot_check(pencil: &PencilGram, locus: &RankLocus, t: usize, seed: u64) -> Result<()> {
    if locus.sample.is_empty() {
        return Ok(());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ locus.prime as u64);
    for _ in 0..SPOT_CHECKS {
        let pt = &locus.sample[rng.gen_range(0..locus.sample.len())];
        if pencil.rank_at(pt)? > t {
            return Err(Error::Shape("enumerated point violates its rank bound".into()));
        }
    }
    Ok(())
}

fn run_signature(run: &PrimeRun) -> (usize, Vec<String>) {
    (run.span_dim, run.candidates.iter().map(signed_form_string).collect())
}

/// The full two-sided delta computation for a catalog entry at each prime:
/// enumerate the rank locus, read candidate linear forms off the span's
/// annihilator, then certify each candidate symbolically.
pub fn delta(id: &str, t: usize, primes: &[u32], seed: u64, budget: &Budget) -> Result<DeltaReport> {
    if primes.is_empty() {
        return Err(Error::Shape("at least one prime is required".into()));
    }
    let mut runs = Vec::new();
    let mut pencil_dim = None;
    let mut name = String::new();
    for &p in primes {
        let spec = variety(id, p)?;
        name = spec.id.to_string();
        let m = spec.quadrics.len();
        if let Some(prev) = pencil_dim {
            if prev != m {
                return Err(Error::Shape("pencil dimension varies with the prime".into()));
            }
        }
        pencil_dim = Some(m);
        let pencil = gram_pencil(&spec)?;
        let locus = enumerate_rank_points(&pencil, t, budget)?;
        spot_check(&pencil, &locus, t, seed)?;
        let candidates = locus
            .annihilator()?
            .iter()
            .map(|row| form_from_row(&pencil.ring, row))
            .collect::<Result<Vec<_>>>()?;
        let mut certified = Vec::new();
        let mut budget_hit = false;
        for (idx, cand) in candidates.iter().enumerate() {
            let cert_seed = seed ^ ((p as u64) << 32) ^ idx as u64;
            match certify_linear_form(&pencil, cand, t, cert_seed, budget)? {
                Certification::Certified(_) => certified.push(cand.clone()),
                Certification::Inconclusive { budget_hit: bh, .. } => budget_hit |= bh,
            }
        }
        runs.push(PrimeRun {
            prime: p,
            hits: locus.hits,
            span_dim: locus.span_dim(),
            candidates,
            certified,
            budget_hit,
        });
    }
    let m = pencil_dim.unwrap();
    let pinned = runs.iter().all(|r| r.certified.len() == r.candidates.len());
    let concur = runs.iter().all(|r| run_signature(r) == run_signature(&runs[0]));
    let agreement = pinned && concur;
    let delta = if agreement {
        m - runs[0].certified.len()
    } else {
        runs.iter().map(|r| r.span_dim).max().unwrap()
    };
    Ok(DeltaReport { variety: name, t, pencil_dim: m, runs, delta, agreement, seed })
}
