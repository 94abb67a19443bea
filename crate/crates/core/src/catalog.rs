//! The variety catalog.
//!
//! Every projective variety the workbench studies is constructed here from
//! scratch at a chosen prime: Plücker relations, linear sections, scroll
//! minors, Pfaffians, and quadric kernels of explicit parametrizations.
//! Each entry carries expected metadata (dimension, degree, codimension)
//! that is data, not computation — the test suites recompute those numbers
//! and fail on any mismatch.
//!
//! Construction is pure. Two calls with the same id and prime return
//! structurally identical entries, and nothing is cached globally.

use std::collections::HashMap;
use std::fmt;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::linalg::{solve_linear, span_dim, FpMatrix};
use crate::monomial::{monomials_of_degree, Monomial};
use crate::poly::Polynomial;
use crate::ring::{same_ring, Ring, RingRef};
use crate::text::parse_poly;

/// Metadata a catalog entry must satisfy: projective dimension, degree and
/// codimension, with dim + codim = ambient dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Expected {
    pub dim: usize,
    pub degree: u64,
    pub codim: usize,
}

/// A rectangular matrix of linear forms over one ring.
#[derive(Clone, Debug)]
pub struct LinearMatrix {
    ring: RingRef,
    rows: Vec<Vec<Polynomial>>,
}

impl LinearMatrix {
    /// Entries must be zero or homogeneous of degree one.
    pub fn new(rows: Vec<Vec<Polynomial>>) -> Result<Self> {
        let first = rows
            .first()
            .and_then(|r| r.first())
            .ok_or_else(|| Error::Shape("empty matrix".into()))?;
        let ring = first.ring().clone();
        let width = rows[0].len();
        for row in &rows {
            if row.len() != width {
                return Err(Error::Shape("ragged matrix".into()));
            }
            for e in row {
                same_ring(&ring, e.ring())?;
                if !e.is_zero() && e.homogeneous_degree() != Some(1) {
                    return Err(Error::Shape("matrix entry is not a linear form".into()));
                }
            }
        }
        Ok(LinearMatrix { ring, rows })
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.rows[0].len()
    }

    pub fn entry(&self, r: usize, c: usize) -> &Polynomial {
        &self.rows[r][c]
    }

    pub fn row(&self, r: usize) -> &[Polynomial] {
        &self.rows[r]
    }

    /// 2x2 minors in column-pair lexicographic order; identically zero
    /// minors are dropped.
    pub fn two_minors(&self) -> Result<Vec<Polynomial>> {
        if self.nrows() != 2 {
            return Err(Error::Unsupported("2-minors need a 2-row matrix".into()));
        }
        let mut out = Vec::new();
        for c1 in 0..self.ncols() {
            for c2 in c1 + 1..self.ncols() {
                let m = self.rows[0][c1]
                    .mul(&self.rows[1][c2])?
                    .sub(&self.rows[0][c2].mul(&self.rows[1][c1])?)?;
                if !m.is_zero() {
                    out.push(m);
                }
            }
        }
        Ok(out)
    }
}

impl fmt::Display for LinearMatrix {
    fn fmt(&self, w: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.rows {
            write!(w, "[")?;
            for (i, e) in row.iter().enumerate() {
                if i > 0 {
                    write!(w, ", ")?;
                }
                write!(w, "{e}")?;
            }
            writeln!(w, "]")?;
        }
        Ok(())
    }
}

/// A projective embedding given by forms of one common degree, one per
/// target coordinate. The forms must be linearly independent, so every
/// form in their span has unique coordinates.
#[derive(Clone, Debug)]
pub struct Parametrization {
    source: RingRef,
    forms: Vec<Polynomial>,
    degree: u32,
    monos: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    coeff_rows: Vec<Vec<u32>>,
}

impl Parametrization {
    pub fn new(forms: Vec<Polynomial>) -> Result<Self> {
        let first = forms
            .first()
            .ok_or_else(|| Error::Unsupported("empty parametrization".into()))?;
        let source = first.ring().clone();
        let degree = first.homogeneous_degree().ok_or(Error::NotHomogeneous)?;
        if degree == 0 {
            return Err(Error::Unsupported("constant parametrization".into()));
        }
        for f in &forms {
            same_ring(&source, f.ring())?;
            if f.is_zero() || f.homogeneous_degree() != Some(degree) {
                return Err(Error::Unsupported(
                    "parametrization forms must be nonzero of one degree".into(),
                ));
            }
        }
        let monos = monomials_of_degree(source.arity(), degree, source.order());
        let index: HashMap<Monomial, usize> = monos
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, m)| (m, i))
            .collect();
        let mut coeff_rows = vec![vec![0u32; forms.len()]; monos.len()];
        for (k, f) in forms.iter().enumerate() {
            for (m, c) in f.terms() {
                coeff_rows[index[m]][k] = *c;
            }
        }
        let cols: Vec<Vec<u32>> = (0..forms.len())
            .map(|k| coeff_rows.iter().map(|r| r[k]).collect())
            .collect();
        if span_dim(source.field(), &cols) != forms.len() {
            return Err(Error::Unsupported(
                "parametrization forms are linearly dependent".into(),
            ));
        }
        Ok(Parametrization {
            source,
            forms,
            degree,
            monos,
            index,
            coeff_rows,
        })
    }

    pub fn source(&self) -> &RingRef {
        &self.source
    }

    pub fn forms(&self) -> &[Polynomial] {
        &self.forms
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Coordinates of `w` in the span of the forms; errors when `w` is not
    /// in the span or has the wrong degree.
    pub fn express(&self, w: &Polynomial) -> Result<Vec<u32>> {
        same_ring(&self.source, w.ring())?;
        if w.is_zero() || w.homogeneous_degree() != Some(self.degree) {
            return Err(Error::NotHomogeneous);
        }
        let mut rhs = vec![0u32; self.monos.len()];
        for (m, c) in w.terms() {
            rhs[self.index[m]] = *c;
        }
        solve_linear(self.source.field(), &self.coeff_rows, &rhs)
            .ok_or_else(|| Error::Unsupported("form lies outside the parametrization span".into()))
    }

    /// Substitute the parametrization into `q` (a polynomial on the target
    /// ring) and test whether the result is identically zero. Exact, no
    /// sampling.
    pub fn vanishes_on(&self, q: &Polynomial) -> Result<bool> {
        let target = q.ring();
        if target.arity() != self.forms.len() {
            return Err(Error::ArityMismatch {
                expected: self.forms.len(),
                got: target.arity(),
            });
        }
        let images: HashMap<String, Polynomial> = target
            .names()
            .iter()
            .cloned()
            .zip(self.forms.iter().cloned())
            .collect();
        Ok(q.substitute(&images, &self.source)?.is_zero())
    }
}

/// A scroll containing the variety, exhibited by an explicit 2-row matrix
/// of linear forms whose 2-minors vanish on it.
#[derive(Clone, Debug)]
pub struct ScrollWitness {
    /// Divisor-class or flattening name the matrix came from.
    pub label: String,
    /// Expected scroll type, e.g. "S(1,2,3)".
    pub scroll_type: String,
    pub matrix: LinearMatrix,
}

/// One catalog entry.
#[derive(Clone, Debug)]
pub struct VarietySpec {
    pub id: &'static str,
    pub aliases: &'static [&'static str],
    pub ring: RingRef,
    /// Basis of the degree-2 part of the homogeneous ideal.
    pub quadrics: Vec<Polynomial>,
    pub expected: Expected,
    /// How the generators were produced; free-form tag kept in exports.
    pub recipe: String,
    pub parametrization: Option<Parametrization>,
    pub witnesses: Vec<ScrollWitness>,
    /// Witness classes known to exist but with no matrix constructed here.
    pub pending_witnesses: &'static [&'static str],
    pub notes: &'static str,
}

impl VarietySpec {
    pub fn ambient(&self) -> usize {
        self.ring.arity() - 1
    }

    pub fn prime(&self) -> u32 {
        self.ring.field().modulus()
    }
}

/// Basis of the quadrics vanishing on the image of `phi`: the kernel of
/// the pair-product map from degree-2 monomials in the target coordinates
/// to source forms of doubled degree. Exact symbolic expansion; the output
/// is the echelon normal form over the target's degree-2 monomials, so it
/// is unique for a given parametrization.
pub fn quadric_kernel(phi: &Parametrization, target: &RingRef) -> Result<Vec<Polynomial>> {
    if target.arity() != phi.forms().len() {
        return Err(Error::ArityMismatch {
            expected: phi.forms().len(),
            got: target.arity(),
        });
    }
    let f = target.field();
    if f.modulus() != phi.source().field().modulus() {
        return Err(Error::Unsupported(
            "parametrization and target use different primes".into(),
        ));
    }
    let pairs = monomials_of_degree(target.arity(), 2, target.order());
    let sq_monos = monomials_of_degree(
        phi.source().arity(),
        2 * phi.degree(),
        phi.source().order(),
    );
    let index: HashMap<&Monomial, usize> =
        sq_monos.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut rows = vec![vec![0u32; pairs.len()]; sq_monos.len()];
    for (c, pm) in pairs.iter().enumerate() {
        let prod = pair_product(phi, pm)?;
        for (m, v) in prod.terms() {
            rows[index[m]][c] = *v;
        }
    }
    let kernel = FpMatrix::from_dense_rows(f, rows)?.kernel_basis();
    Ok(kernel
        .into_iter()
        .map(|vec| {
            let terms: Vec<(Monomial, u32)> = pairs
                .iter()
                .zip(&vec)
                .filter(|&(_, &c)| c != 0)
                .map(|(m, &c)| (m.clone(), c))
                .collect();
            Polynomial::from_sorted_unchecked(target, terms)
        })
        .collect())
}

/// The product of parametrization forms selected by a degree-2 target
/// monomial (a square or a cross term).
fn pair_product(phi: &Parametrization, pm: &Monomial) -> Result<Polynomial> {
    let picked: Vec<(usize, u16)> = pm
        .exps()
        .iter()
        .enumerate()
        .filter(|&(_, &e)| e > 0)
        .map(|(i, &e)| (i, e))
        .collect();
    match picked.as_slice() {
        [(i, 2)] => phi.forms()[*i].mul(&phi.forms()[*i]),
        [(i, 1), (j, 1)] => phi.forms()[*i].mul(&phi.forms()[*j]),
        _ => Err(Error::Shape("not a degree-2 monomial".into())),
    }
}

/// Basis of the degree-`degree` forms vanishing at every given point,
/// listed leading-monomial first. The basis is the echelon normal form of
/// the vanishing condition over monomial evaluations, so a fixed ring and
/// point list always give the same polynomials.
pub fn forms_through(ring: &RingRef, degree: u32, points: &[Vec<u32>]) -> Result<Vec<Polynomial>> {
    let f = ring.field();
    let desc = monomials_of_degree(ring.arity(), degree, ring.order());
    let asc: Vec<&Monomial> = desc.iter().rev().collect();
    let kernel = if points.is_empty() {
        (0..asc.len())
            .map(|i| {
                let mut v = vec![0u32; asc.len()];
                v[i] = 1;
                v
            })
            .collect::<Vec<_>>()
    } else {
        let mut rows = Vec::with_capacity(points.len());
        for pt in points {
            if pt.len() != ring.arity() {
                return Err(Error::ArityMismatch {
                    expected: ring.arity(),
                    got: pt.len(),
                });
            }
            let red: Vec<u32> = pt.iter().map(|&x| x % f.modulus()).collect();
            if red.iter().all(|&x| x == 0) {
                return Err(Error::Unsupported(
                    "zero vector is not a projective point".into(),
                ));
            }
            rows.push(
                asc.iter()
                    .map(|m| {
                        m.exps()
                            .iter()
                            .zip(&red)
                            .fold(1u32, |acc, (&e, &x)| f.mul(acc, f.pow(x, u64::from(e))))
                    })
                    .collect::<Vec<u32>>(),
            );
        }
        FpMatrix::from_dense_rows(f, rows)?.kernel_basis()
    };
    Ok(kernel
        .into_iter()
        .rev()
        .map(|v| {
            let terms: Vec<(Monomial, u32)> = v
                .iter()
                .enumerate()
                .rev()
                .filter(|&(_, &c)| c != 0)
                .map(|(i, &c)| (asc[i].clone(), c))
                .collect();
            Polynomial::from_sorted_unchecked(ring, terms)
        })
        .collect())
}

/// The matrix of the multiplication map (u_r, v_c) -> coordinates of
/// u_r * v_c in the embedding; entries are linear forms on the target.
pub fn multiplication_matrix(
    phi: &Parametrization,
    target: &RingRef,
    u: &[Polynomial],
    v: &[Polynomial],
) -> Result<LinearMatrix> {
    let mut rows = Vec::with_capacity(u.len());
    for ur in u {
        let mut row = Vec::with_capacity(v.len());
        for vc in v {
            let x = phi.express(&ur.mul(vc)?)?;
            let raw: Vec<(Monomial, u32)> = x
                .iter()
                .enumerate()
                .filter(|&(_, &c)| c != 0)
                .map(|(k, &c)| (Monomial::var(target.arity(), k), c))
                .collect();
            row.push(Polynomial::from_terms(target, raw)?);
        }
        rows.push(row);
    }
    LinearMatrix::new(rows)
}

const IDS: [&str; 22] = [
    "g14", "x5", "x4", "x3", "dp5", "dp6", "dp7", "dp8", "s2", "s111", "s112", "s122", "s123",
    "s1111", "s222", "v2q", "segre111", "segre22", "hsegre22", "iv2p3", "v2p3", "v3p2",
];

/// Canonical ids in catalog order.
pub fn ids() -> &'static [&'static str] {
    &IDS
}

/// Resolve an id or alias to its canonical id.
pub fn resolve(id: &str) -> Option<&'static str> {
    if let Some(&c) = IDS.iter().find(|&&c| c == id) {
        return Some(c);
    }
    match id {
        "x6" => Some("g14"),
        "x2" => Some("dp5"),
        _ => None,
    }
}

/// Build one catalog entry at the given prime.
pub fn variety(id: &str, p: u32) -> Result<VarietySpec> {
    let canon = resolve(id).ok_or_else(|| Error::UnknownVariety(id.to_string()))?;
    match canon {
        "g14" => entry_g14(p),
        "x5" => entry_section(5, p),
        "x4" => entry_section(4, p),
        "x3" => entry_section(3, p),
        "dp5" => entry_dp5(p),
        "dp6" => entry_dp(6, p),
        "dp7" => entry_dp(7, p),
        "dp8" => entry_dp(8, p),
        "s2" => entry_scroll("s2", &[2], p),
        "s111" => entry_scroll("s111", &[1, 1, 1], p),
        "s112" => entry_scroll("s112", &[1, 1, 2], p),
        "s122" => entry_scroll("s122", &[1, 2, 2], p),
        "s123" => entry_scroll("s123", &[1, 2, 3], p),
        "s1111" => entry_scroll("s1111", &[1, 1, 1, 1], p),
        "s222" => entry_scroll("s222", &[2, 2, 2], p),
        "v2q" => entry_v2q(p),
        "segre111" => entry_segre111(p),
        "segre22" => entry_segre22(p),
        "hsegre22" => entry_hsegre22(p),
        "iv2p3" => entry_veronese("iv2p3", 4, 2, true, Expected { dim: 3, degree: 7, codim: 5 }, p),
        "v2p3" => entry_veronese("v2p3", 4, 2, false, Expected { dim: 3, degree: 8, codim: 6 }, p),
        "v3p2" => entry_veronese("v3p2", 3, 3, false, Expected { dim: 2, degree: 9, codim: 7 }, p),
        _ => unreachable!("resolve returned a non-canonical id"),
    }
}

/// Build every catalog entry at the given prime, in catalog order.
pub fn all(p: u32) -> Result<Vec<VarietySpec>> {
    IDS.iter().map(|id| variety(id, p)).collect()
}

#[allow(clippy::too_many_arguments)]
fn assemble(
    id: &'static str,
    aliases: &'static [&'static str],
    ring: RingRef,
    quadrics: Vec<Polynomial>,
    expected: Expected,
    recipe: impl Into<String>,
    parametrization: Option<Parametrization>,
    witnesses: Vec<ScrollWitness>,
    pending_witnesses: &'static [&'static str],
    notes: &'static str,
) -> Result<VarietySpec> {
    if expected.dim + expected.codim + 1 != ring.arity() {
        return Err(Error::Shape(format!(
            "{id}: expected dim {} + codim {} does not fit P^{}",
            expected.dim,
            expected.codim,
            ring.arity() - 1
        )));
    }
    if quadrics.is_empty() {
        return Err(Error::Shape(format!("{id}: no generators")));
    }
    for q in &quadrics {
        same_ring(&ring, q.ring())?;
        if q.homogeneous_degree() != Some(2) {
            return Err(Error::Shape(format!("{id}: generator is not a quadric")));
        }
    }
    for w in &witnesses {
        same_ring(&ring, w.matrix.ring())?;
    }
    Ok(VarietySpec {
        id,
        aliases,
        ring,
        quadrics,
        expected,
        recipe: recipe.into(),
        parametrization,
        witnesses,
        pending_witnesses,
        notes,
    })
}

/// Linear combination of variables with signed coefficients.
fn lin(ring: &RingRef, terms: &[(i64, usize)]) -> Result<Polynomial> {
    let f = ring.field();
    let raw: Vec<(Monomial, u32)> = terms
        .iter()
        .map(|&(c, v)| (Monomial::var(ring.arity(), v), f.reduce_i64(c)))
        .collect();
    Polynomial::from_terms(ring, raw)
}

/// One monomial with unit coefficient.
fn mono(ring: &RingRef, exps: &[(usize, u16)]) -> Result<Polynomial> {
    let mut e = vec![0u16; ring.arity()];
    for &(v, k) in exps {
        e[v] += k;
    }
    Polynomial::from_terms(ring, vec![(Monomial::new(e), 1)])
}

const PLUECKER_VARS: [&str; 10] = [
    "p01", "p02", "p03", "p04", "p12", "p13", "p14", "p23", "p24", "p34",
];
const PLUECKER_QUADRUPLES: [[usize; 4]; 5] = [
    [0, 1, 2, 3],
    [0, 1, 2, 4],
    [0, 1, 3, 4],
    [0, 2, 3, 4],
    [1, 2, 3, 4],
];

fn plucker_var(ring: &RingRef, i: usize, j: usize) -> Result<Polynomial> {
    Polynomial::var_by_name(ring, &format!("p{i}{j}"))
}

/// The five quadratic relations p_ij p_kl - p_ik p_jl + p_jk p_il over the
/// index quadruples of {0..4}, cutting out the lines of P4.
fn entry_g14(p: u32) -> Result<VarietySpec> {
    let ring = Ring::degrevlex(PLUECKER_VARS.to_vec(), p)?;
    let mut quads = Vec::with_capacity(5);
    for &[i, j, k, l] in &PLUECKER_QUADRUPLES {
        let q = plucker_var(&ring, i, j)?
            .mul(&plucker_var(&ring, k, l)?)?
            .sub(&plucker_var(&ring, i, k)?.mul(&plucker_var(&ring, j, l)?)?)?
            .add(&plucker_var(&ring, j, k)?.mul(&plucker_var(&ring, i, l)?)?)?;
        quads.push(q);
    }
    assemble(
        "g14",
        &["x6"],
        ring,
        quads,
        Expected { dim: 6, degree: 5, codim: 3 },
        "explicit-generators",
        None,
        vec![],
        &[],
        "lines of P4 in the Pluecker embedding; quintic sixfold in P9",
    )
}

/// Successive hyperplane sections of g14, realized in their span by
/// substituting one coordinate at a time: p34 = p01 + p02, then
/// p24 = p03 + p04, then p23 = p12 + p13 + p14.
fn entry_section(k: usize, p: u32) -> Result<VarietySpec> {
    let g = entry_g14(p)?;
    let steps: [(&str, &[&str]); 3] = [
        ("p34", &["p01", "p02"]),
        ("p24", &["p03", "p04"]),
        ("p23", &["p12", "p13", "p14"]),
    ];
    let mut ring = g.ring;
    let mut quads = g.quadrics;
    for (var, rep) in steps.iter().take(6 - k) {
        let names: Vec<String> = ring
            .names()
            .iter()
            .filter(|n| n.as_str() != *var)
            .cloned()
            .collect();
        let sub = Ring::new(names, ring.order(), ring.field())?;
        let mut image = Polynomial::zero(&sub);
        for r in *rep {
            image = image.add(&Polynomial::var_by_name(&sub, r)?)?;
        }
        let images = HashMap::from([(var.to_string(), image)]);
        quads = quads
            .iter()
            .map(|q| q.substitute(&images, &sub))
            .collect::<Result<Vec<_>>>()?;
        ring = sub;
    }
    let (id, recipe): (&'static str, &str) = match k {
        5 => ("x5", "linear-section-of(g14; p34 = p01 + p02)"),
        4 => ("x4", "linear-section-of(x5; p24 = p03 + p04)"),
        3 => ("x3", "linear-section-of(x4; p23 = p12 + p13 + p14)"),
        _ => return Err(Error::Unsupported(format!("no section of dimension {k}"))),
    };
    assemble(
        id,
        &[],
        ring,
        quads,
        Expected { dim: k, degree: 5, codim: 3 },
        recipe,
        None,
        vec![],
        &[],
        "linear section of the quintic sixfold, realized in its span",
    )
}

/// Standard 2-row scroll matrix: one block per a_i, block columns
/// (v_j, v_{j+1}) over that block's a_i + 1 consecutive variables.
fn scroll_matrix(ring: &RingRef, a: &[u32]) -> Result<LinearMatrix> {
    let mut top = Vec::new();
    let mut bot = Vec::new();
    let mut base = 0usize;
    for &ai in a {
        for j in 0..ai as usize {
            top.push(Polynomial::var(ring, base + j)?);
            bot.push(Polynomial::var(ring, base + j + 1)?);
        }
        base += ai as usize + 1;
    }
    LinearMatrix::new(vec![top, bot])
}

fn scroll_label(a: &[u32]) -> String {
    let inner: Vec<String> = a.iter().map(|x| x.to_string()).collect();
    format!("S({})", inner.join(","))
}

fn entry_scroll(id: &'static str, a: &'static [u32], p: u32) -> Result<VarietySpec> {
    let total: u32 = a.iter().sum();
    let nvars = total as usize + a.len();
    let ring = Ring::standard("z", nvars, p)?;
    let quads = scroll_matrix(&ring, a)?.two_minors()?;
    assemble(
        id,
        &[],
        ring,
        quads,
        Expected {
            dim: a.len(),
            degree: u64::from(total),
            codim: total as usize - 1,
        },
        format!("two-minors-of-scroll-matrix({})", scroll_label(a)),
        None,
        vec![],
        &[],
        "rational normal scroll; minimal degree",
    )
}

/// The projective frame in P2; blown-up point sets are its prefixes.
fn frame_points(k: usize) -> Vec<Vec<u32>> {
    let all: [[u32; 3]; 4] = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]];
    all[..k].iter().map(|p| p.to_vec()).collect()
}

/// Cubics through the first 9 - d frame points: the anticanonical system
/// of the degree-d del Pezzo surface.
fn del_pezzo_param(d: u32, p: u32) -> Result<Parametrization> {
    let src = Ring::standard("x", 3, p)?;
    let pts = frame_points(9 - d as usize);
    Parametrization::new(forms_through(&src, 3, &pts)?)
}

/// Witness matrices for the pencil classes h - e_i (and, on the quintic,
/// the conic class through all four points). For d = 5 only the first
/// pencil class is materialized; the remaining three are recorded as
/// pending on the entry.
fn del_pezzo_witnesses(
    d: u32,
    phi: &Parametrization,
    target: &RingRef,
) -> Result<Vec<ScrollWitness>> {
    let src = phi.source();
    let pts = frame_points(9 - d as usize);
    let stype = match d {
        5 => "S(1,1,1)",
        6 => "S(1,1,2)",
        7 => "S(1,2,2)",
        _ => "S(1,2,3)",
    };
    let pencil_count = if d == 5 { 1 } else { pts.len().max(1) };
    let mut out = Vec::new();
    for i in 0..pencil_count {
        let u = forms_through(src, 1, &pts[i..i + 1])?;
        let others: Vec<Vec<u32>> = pts
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, pt)| pt.clone())
            .collect();
        let v = forms_through(src, 2, &others)?;
        out.push(ScrollWitness {
            label: format!("h-e{i}"),
            scroll_type: stype.to_string(),
            matrix: multiplication_matrix(phi, target, &u, &v)?,
        });
    }
    if d == 5 {
        let u = forms_through(src, 2, &pts)?;
        let v = forms_through(src, 1, &[])?;
        out.push(ScrollWitness {
            label: "2h-e0-e1-e2-e3".to_string(),
            scroll_type: stype.to_string(),
            matrix: multiplication_matrix(phi, target, &u, &v)?,
        });
    }
    Ok(out)
}

/// Change of coordinates carrying the classical skew presentation of the
/// quintic surface onto the anticanonical cubic model: substituting these
/// images for z0..z5 in the classical forms yields forms vanishing on the
/// model. Derived by parametrizing the rank-two locus of the classical
/// matrix (a plane rational map with four base points) and moving its base
/// points onto the projective frame; verified exactly over the integers,
/// so it is valid at every odd prime.
const DP5_ALIGN: [&[(i64, usize)]; 6] = [
    &[(-1, 2), (1, 3)],
    &[(-1, 2), (1, 3), (1, 5)],
    &[(1, 3)],
    &[(1, 0), (-1, 3)],
    &[(1, 0), (-1, 1), (-1, 3), (1, 4)],
    &[(-1, 3), (1, 4)],
];

/// The quintic del Pezzo surface: five Pfaffians of the 4x4 principal
/// submatrices of a 5x5 skew matrix of linear forms, written in the
/// coordinates of the anticanonical cubic model so that the generators,
/// the parametrization, and the scroll witnesses share one frame.
fn entry_dp5(p: u32) -> Result<VarietySpec> {
    let ring = Ring::standard("z", 6, p)?;
    let images: HashMap<String, Polynomial> = (0..6)
        .map(|i| Ok((ring.name(i).to_string(), lin(&ring, DP5_ALIGN[i])?)))
        .collect::<Result<_>>()?;
    let quads = dp5_classical_quadrics(&ring)?
        .iter()
        .map(|q| q.substitute(&images, &ring))
        .collect::<Result<Vec<_>>>()?;
    let phi = del_pezzo_param(5, p)?;
    let witnesses = del_pezzo_witnesses(5, &phi, &ring)?;
    assemble(
        "dp5",
        &["x2"],
        ring,
        quads,
        Expected { dim: 2, degree: 5, codim: 3 },
        "pfaffians-of-skew-matrix",
        Some(phi),
        witnesses,
        &["h-e1", "h-e2", "h-e3"],
        "quintic del Pezzo surface; generators are the classical Pfaffians moved into the cubic model's coordinates",
    )
}

/// Pfaffian generators of the classical skew presentation, in its own
/// coordinate frame (which differs from the catalog entry's by the
/// alignment substitution). Generator i deletes row and column 5 - i.
pub fn dp5_classical_quadrics(ring: &RingRef) -> Result<Vec<Polynomial>> {
    let skew = dp5_classical_skew(ring)?;
    (1..=5usize)
        .map(|i| {
            let del = 5 - i;
            let idx: Vec<usize> = (0..5).filter(|&t| t != del).collect();
            pfaffian4(&skew, [idx[0], idx[1], idx[2], idx[3]])
        })
        .collect()
}

/// The classical 5x5 skew matrix of linear forms whose principal 4x4
/// Pfaffians cut out a quintic del Pezzo surface.
pub fn dp5_classical_skew(ring: &RingRef) -> Result<Vec<Vec<Polynomial>>> {
    let upper: [((usize, usize), &[(i64, usize)]); 10] = [
        ((0, 1), &[(-1, 0), (1, 1)]),
        ((0, 2), &[(-1, 1)]),
        ((0, 3), &[(1, 1), (-1, 5)]),
        ((0, 4), &[(1, 5)]),
        ((1, 2), &[(-1, 2)]),
        ((1, 3), &[(-1, 5)]),
        ((1, 4), &[(1, 5)]),
        ((2, 3), &[(1, 2)]),
        ((2, 4), &[(-1, 3)]),
        ((3, 4), &[(1, 4)]),
    ];
    let mut m = vec![vec![Polynomial::zero(ring); 5]; 5];
    for ((i, j), terms) in upper {
        let e = lin(ring, terms)?;
        m[j][i] = e.neg();
        m[i][j] = e;
    }
    Ok(m)
}

/// Pfaffian of the 4x4 skew submatrix on rows and columns i < j < k < l.
fn pfaffian4(m: &[Vec<Polynomial>], idx: [usize; 4]) -> Result<Polynomial> {
    let [i, j, k, l] = idx;
    m[i][j]
        .mul(&m[k][l])?
        .sub(&m[i][k].mul(&m[j][l])?)?
        .add(&m[i][l].mul(&m[j][k])?)
}

/// Del Pezzo surfaces of degree 6, 7, 8 from their anticanonical
/// parametrizations; quadric generators via the quadric kernel.
fn entry_dp(d: u32, p: u32) -> Result<VarietySpec> {
    let phi = del_pezzo_param(d, p)?;
    let ring = Ring::standard("z", d as usize + 1, p)?;
    let quads = quadric_kernel(&phi, &ring)?;
    let witnesses = del_pezzo_witnesses(d, &phi, &ring)?;
    let id: &'static str = match d {
        6 => "dp6",
        7 => "dp7",
        _ => "dp8",
    };
    assemble(
        id,
        &[],
        ring,
        quads,
        Expected {
            dim: 2,
            degree: u64::from(d),
            codim: d as usize - 2,
        },
        "quadric-kernel-of-parametrization",
        Some(phi),
        witnesses,
        &[],
        "del Pezzo surface from cubics through frame points",
    )
}

/// The (2,2) embedding of the quadric surface P1 x P1: nine bidegree-(2,2)
/// monomials z_{3i+j} = (x part i)(y part j).
fn entry_v2q(p: u32) -> Result<VarietySpec> {
    let src = Ring::degrevlex(vec!["x0", "x1", "y0", "y1"], p)?;
    let xpart: [&[(usize, u16)]; 3] = [&[(0, 2)], &[(0, 1), (1, 1)], &[(1, 2)]];
    let ypart: [&[(usize, u16)]; 3] = [&[(2, 2)], &[(2, 1), (3, 1)], &[(3, 2)]];
    let mut forms = Vec::with_capacity(9);
    for xs in &xpart {
        for ys in &ypart {
            let mut e: Vec<(usize, u16)> = xs.to_vec();
            e.extend_from_slice(ys);
            forms.push(mono(&src, &e)?);
        }
    }
    let phi = Parametrization::new(forms)?;
    let ring = Ring::standard("z", 9, p)?;
    let quads = quadric_kernel(&phi, &ring)?;
    let u1 = vec![mono(&src, &[(0, 1)])?, mono(&src, &[(1, 1)])?];
    let v1: Vec<Polynomial> = [
        &[(0, 1), (2, 2)][..],
        &[(0, 1), (2, 1), (3, 1)],
        &[(0, 1), (3, 2)],
        &[(1, 1), (2, 2)],
        &[(1, 1), (2, 1), (3, 1)],
        &[(1, 1), (3, 2)],
    ]
    .iter()
    .map(|e| mono(&src, e))
    .collect::<Result<_>>()?;
    let u2 = vec![mono(&src, &[(2, 1)])?, mono(&src, &[(3, 1)])?];
    let v2: Vec<Polynomial> = [
        &[(0, 2), (2, 1)][..],
        &[(0, 2), (3, 1)],
        &[(0, 1), (1, 1), (2, 1)],
        &[(0, 1), (1, 1), (3, 1)],
        &[(1, 2), (2, 1)],
        &[(1, 2), (3, 1)],
    ]
    .iter()
    .map(|e| mono(&src, e))
    .collect::<Result<_>>()?;
    let witnesses = vec![
        ScrollWitness {
            label: "x-ruling".to_string(),
            scroll_type: "S(2,2,2)".to_string(),
            matrix: multiplication_matrix(&phi, &ring, &u1, &v1)?,
        },
        ScrollWitness {
            label: "y-ruling".to_string(),
            scroll_type: "S(2,2,2)".to_string(),
            matrix: multiplication_matrix(&phi, &ring, &u2, &v2)?,
        },
    ];
    assemble(
        "v2q",
        &[],
        ring,
        quads,
        Expected { dim: 2, degree: 8, codim: 6 },
        "quadric-kernel-of-parametrization",
        Some(phi),
        witnesses,
        &[],
        "double embedding of the smooth quadric surface",
    )
}

/// The Segre threefold P1 x P1 x P1 in P7: z_{4a+2b+c} = x_a y_b w_c, with
/// its three 2x4 tensor flattenings as witnesses.
fn entry_segre111(p: u32) -> Result<VarietySpec> {
    let src = Ring::degrevlex(vec!["x0", "x1", "y0", "y1", "w0", "w1"], p)?;
    let mut forms = Vec::with_capacity(8);
    for a in 0..2usize {
        for b in 0..2usize {
            for c in 0..2usize {
                forms.push(mono(&src, &[(a, 1), (2 + b, 1), (4 + c, 1)])?);
            }
        }
    }
    let phi = Parametrization::new(forms)?;
    let ring = Ring::standard("z", 8, p)?;
    let quads = quadric_kernel(&phi, &ring)?;
    let factor = |base: usize| -> Result<Vec<Polynomial>> {
        Ok(vec![
            mono(&src, &[(base, 1)])?,
            mono(&src, &[(base + 1, 1)])?,
        ])
    };
    let pairs = |b1: usize, b2: usize| -> Result<Vec<Polynomial>> {
        let mut v = Vec::with_capacity(4);
        for i in 0..2 {
            for j in 0..2 {
                v.push(mono(&src, &[(b1 + i, 1), (b2 + j, 1)])?);
            }
        }
        Ok(v)
    };
    let witnesses = vec![
        ScrollWitness {
            label: "x-flattening".to_string(),
            scroll_type: "S(1,1,1,1)".to_string(),
            matrix: multiplication_matrix(&phi, &ring, &factor(0)?, &pairs(2, 4)?)?,
        },
        ScrollWitness {
            label: "y-flattening".to_string(),
            scroll_type: "S(1,1,1,1)".to_string(),
            matrix: multiplication_matrix(&phi, &ring, &factor(2)?, &pairs(0, 4)?)?,
        },
        ScrollWitness {
            label: "w-flattening".to_string(),
            scroll_type: "S(1,1,1,1)".to_string(),
            matrix: multiplication_matrix(&phi, &ring, &factor(4)?, &pairs(0, 2)?)?,
        },
    ];
    assemble(
        "segre111",
        &[],
        ring,
        quads,
        Expected { dim: 3, degree: 6, codim: 4 },
        "quadric-kernel-of-parametrization",
        Some(phi),
        witnesses,
        &[],
        "Segre product of three lines",
    )
}

/// The Segre fourfold P2 x P2 in P8: z_ij = x_i y_j.
fn entry_segre22(p: u32) -> Result<VarietySpec> {
    let src = Ring::degrevlex(vec!["x0", "x1", "x2", "y0", "y1", "y2"], p)?;
    let names: Vec<String> = (0..3)
        .flat_map(|i| (0..3).map(move |j| format!("z{i}{j}")))
        .collect();
    let mut forms = Vec::with_capacity(9);
    for i in 0..3usize {
        for j in 0..3usize {
            forms.push(mono(&src, &[(i, 1), (3 + j, 1)])?);
        }
    }
    let phi = Parametrization::new(forms)?;
    let ring = Ring::degrevlex(names, p)?;
    let quads = quadric_kernel(&phi, &ring)?;
    assemble(
        "segre22",
        &[],
        ring,
        quads,
        Expected { dim: 4, degree: 6, codim: 4 },
        "quadric-kernel-of-parametrization",
        Some(phi),
        vec![],
        &[],
        "Segre product of two planes",
    )
}

/// The trace-hyperplane section of the Segre fourfold, realized in its
/// span P7 by substituting z22 = -z00 - z11. The section is the smooth
/// one (rank-one traceless matrices, the flag threefold).
fn entry_hsegre22(p: u32) -> Result<VarietySpec> {
    let s = entry_segre22(p)?;
    let names: Vec<String> = s.ring.names()[..8].to_vec();
    let sub = Ring::new(names, s.ring.order(), s.ring.field())?;
    let image = lin(&sub, &[(-1, 0), (-1, 4)])?;
    let images = HashMap::from([("z22".to_string(), image)]);
    let quads = s
        .quadrics
        .iter()
        .map(|q| q.substitute(&images, &sub))
        .collect::<Result<Vec<_>>>()?;
    assemble(
        "hsegre22",
        &[],
        sub,
        quads,
        Expected { dim: 3, degree: 6, codim: 4 },
        "linear-section-of(segre22; z22 = -z00 - z11)",
        None,
        vec![],
        &[],
        "smooth trace-hyperplane section of the Segre fourfold",
    )
}

/// Veronese-type entries parametrized by all monomials of one degree,
/// optionally dropping the leading monomial coordinate (inner projection
/// from that coordinate point).
fn entry_veronese(
    id: &'static str,
    src_arity: usize,
    deg: u32,
    drop_first: bool,
    expected: Expected,
    p: u32,
) -> Result<VarietySpec> {
    let src = Ring::standard("x", src_arity, p)?;
    let mut monos = monomials_of_degree(src_arity, deg, src.order());
    if drop_first {
        monos.remove(0);
    }
    let forms: Vec<Polynomial> = monos
        .into_iter()
        .map(|m| Polynomial::from_terms(&src, vec![(m, 1)]))
        .collect::<Result<_>>()?;
    let phi = Parametrization::new(forms)?;
    let ring = Ring::standard("z", phi.forms().len(), p)?;
    let quads = quadric_kernel(&phi, &ring)?;
    let notes = if drop_first {
        "inner projection of the quadratic Veronese threefold from its leading coordinate point"
    } else {
        "Veronese embedding by all monomials of the given degree"
    };
    assemble(
        id,
        &[],
        ring,
        quads,
        expected,
        "quadric-kernel-of-parametrization",
        Some(phi),
        vec![],
        &[],
        notes,
    )
}

/// Serialize entries to the catalog text format. Coefficients are printed
/// in canonical form, so the prime in the header is part of the data.
pub fn export_text(entries: &[VarietySpec]) -> String {
    let mut s = String::new();
    writeln!(s, "catalog-format 1").unwrap();
    if let Some(e) = entries.first() {
        writeln!(s, "prime {}", e.prime()).unwrap();
    }
    for e in entries {
        writeln!(s).unwrap();
        writeln!(s, "variety {}", e.id).unwrap();
        writeln!(s, "ambient {}", e.ambient()).unwrap();
        writeln!(s, "recipe {}", e.recipe).unwrap();
        writeln!(
            s,
            "expected dim={} degree={} codim={}",
            e.expected.dim, e.expected.degree, e.expected.codim
        )
        .unwrap();
        writeln!(s, "vars {}", e.ring.names().join(" ")).unwrap();
        for q in &e.quadrics {
            writeln!(s, "gen {q}").unwrap();
        }
        writeln!(s, "end").unwrap();
    }
    s
}

/// A record read back from the catalog text format.
#[derive(Clone, Debug)]
pub struct ImportedVariety {
    pub id: String,
    pub recipe: String,
    pub expected: Expected,
    pub ring: RingRef,
    pub generators: Vec<Polynomial>,
}

/// Parse the catalog text format produced by `export_text`.
pub fn import_text(src: &str) -> Result<Vec<ImportedVariety>> {
    let fail = |line: usize, msg: &str| Error::Parse {
        at: line,
        msg: msg.to_string(),
    };
    let mut lines = src.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (n, header) = lines.next().ok_or_else(|| fail(0, "empty catalog"))?;
    if header.trim() != "catalog-format 1" {
        return Err(fail(n, "expected `catalog-format 1`"));
    }
    let (n, prime_line) = lines.next().ok_or_else(|| fail(n, "missing prime line"))?;
    let p: u32 = prime_line
        .trim()
        .strip_prefix("prime ")
        .and_then(|v| v.parse().ok())
        .ok_or_else(|| fail(n, "expected `prime <p>`"))?;
    let mut out = Vec::new();
    while let Some((n, line)) = lines.next() {
        let id = line
            .trim()
            .strip_prefix("variety ")
            .ok_or_else(|| fail(n, "expected `variety <id>`"))?
            .to_string();
        let mut field = |prefix: &str| -> Result<String> {
            let (m, l) = lines
                .next()
                .ok_or_else(|| fail(n, "truncated record"))?;
            l.trim()
                .strip_prefix(prefix)
                .map(str::to_string)
                .ok_or_else(|| fail(m, &format!("expected `{prefix}...`")))
        };
        let ambient: usize = field("ambient ")?
            .parse()
            .map_err(|_| fail(n, "bad ambient"))?;
        let recipe = field("recipe ")?;
        let exp_line = field("expected ")?;
        let mut nums = Vec::new();
        for part in exp_line.split_whitespace() {
            let (_, v) = part
                .split_once('=')
                .ok_or_else(|| fail(n, "bad expected line"))?;
            nums.push(
                v.parse::<u64>()
                    .map_err(|_| fail(n, "bad expected value"))?,
            );
        }
        let [dim, degree, codim] = nums.as_slice() else {
            return Err(fail(n, "expected three dim/degree/codim values"));
        };
        let names: Vec<String> = field("vars ")?
            .split_whitespace()
            .map(str::to_string)
            .collect();
        if names.len() != ambient + 1 {
            return Err(fail(n, "vars count does not match ambient"));
        }
        let ring = Ring::degrevlex(names, p)?;
        let mut generators = Vec::new();
        loop {
            let (m, l) = lines.next().ok_or_else(|| fail(n, "record missing `end`"))?;
            let l = l.trim();
            if l == "end" {
                break;
            }
            let gsrc = l
                .strip_prefix("gen ")
                .ok_or_else(|| fail(m, "expected `gen <poly>` or `end`"))?;
            generators.push(parse_poly(&ring, gsrc)?);
        }
        out.push(ImportedVariety {
            id,
            recipe,
            expected: Expected {
                dim: *dim as usize,
                degree: *degree,
                codim: *codim as usize,
            },
            ring,
            generators,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::budget::Budget;
    use crate::groebner::Ideal;
    use crate::linalg::reduced_span;
    use crate::poly::poly_from_monomials;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn get(id: &str) -> VarietySpec {
        variety(id, 31).unwrap()
    }

    /// Coefficient vectors of quadrics over the ring's degree-2 monomials.
    fn quad_coords(ring: &RingRef, polys: &[Polynomial]) -> Vec<Vec<u32>> {
        let monos = monomials_of_degree(ring.arity(), 2, ring.order());
        let index: HashMap<&Monomial, usize> =
            monos.iter().enumerate().map(|(i, m)| (m, i)).collect();
        polys
            .iter()
            .map(|q| {
                let mut v = vec![0u32; monos.len()];
                for (m, c) in q.terms() {
                    v[index[m]] = *c;
                }
                v
            })
            .collect()
    }

    fn same_span(ring: &RingRef, a: &[Polynomial], b: &[Polynomial]) -> bool {
        let f = ring.field();
        reduced_span(f, &quad_coords(ring, a)) == reduced_span(f, &quad_coords(ring, b))
    }

    fn hilbert_of(spec: &VarietySpec) -> (usize, u64) {
        let ideal = Ideal::new(&spec.ring, spec.quadrics.clone()).unwrap();
        let h = ideal.hilbert(&Budget::default()).unwrap();
        (h.projective_dimension().unwrap(), h.degree)
    }

    #[test]
    fn ids_resolve_and_unknowns() {
        assert_eq!(ids().len(), 22);
        assert_eq!(resolve("x6"), Some("g14"));
        assert_eq!(resolve("x2"), Some("dp5"));
        assert_eq!(resolve("dp7"), Some("dp7"));
        assert_eq!(resolve("nosuch"), None);
        assert!(matches!(
            variety("nosuch", 31),
            Err(Error::UnknownVariety(_))
        ));
    }

    #[test]
    fn every_entry_is_internally_consistent() {
        for p in [31u32, 101] {
            for spec in all(p).unwrap() {
                assert_eq!(
                    spec.expected.dim + spec.expected.codim,
                    spec.ambient(),
                    "{}",
                    spec.id
                );
                for q in &spec.quadrics {
                    assert_eq!(q.homogeneous_degree(), Some(2), "{}", spec.id);
                }
                // generators are linearly independent
                let coords = quad_coords(&spec.ring, &spec.quadrics);
                assert_eq!(
                    span_dim(spec.ring.field(), &coords),
                    spec.quadrics.len(),
                    "{}: dependent generators",
                    spec.id
                );
                if let Some(phi) = &spec.parametrization {
                    assert_eq!(phi.forms().len(), spec.ring.arity(), "{}", spec.id);
                }
            }
        }
    }

    #[test]
    fn quadric_counts_match_the_families() {
        let counts = [
            ("g14", 5),
            ("x5", 5),
            ("x4", 5),
            ("x3", 5),
            ("dp5", 5),
            ("dp6", 9),
            ("dp7", 14),
            ("dp8", 20),
            ("v2q", 20),
            ("v2p3", 20),
            ("iv2p3", 14),
            ("v3p2", 27),
            ("segre22", 9),
            ("hsegre22", 9),
            ("segre111", 9),
            ("s2", 1),
            ("s111", 3),
            ("s112", 6),
            ("s122", 10),
            ("s123", 15),
            ("s1111", 6),
            ("s222", 15),
        ];
        for (id, n) in counts {
            assert_eq!(get(id).quadrics.len(), n, "{id}");
        }
    }

    #[test]
    fn g14_pluecker_relations() {
        let g = get("g14");
        assert_eq!(g.ring.names()[0], "p01");
        assert_eq!(g.ring.names()[9], "p34");
        // pinned first relation: p01*p23 - p02*p13 + p12*p03
        let expect = poly_from_monomials(
            &g.ring,
            &[
                (1, &[(0, 1), (7, 1)]),
                (-1, &[(1, 1), (5, 1)]),
                (1, &[(4, 1), (2, 1)]),
            ],
        )
        .unwrap();
        assert_eq!(g.quadrics[0], expect);
        // decomposability: every relation vanishes on wedges a ∧ b
        let f = g.ring.field();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..40 {
            let a: Vec<u32> = (0..5).map(|_| rng.gen_range(0..31)).collect();
            let b: Vec<u32> = (0..5).map(|_| rng.gen_range(0..31)).collect();
            let mut pt = Vec::new();
            for i in 0..5 {
                for j in i + 1..5 {
                    pt.push(f.sub(f.mul(a[i], b[j]), f.mul(a[j], b[i])));
                }
            }
            for q in &g.quadrics {
                assert_eq!(q.evaluate(&pt).unwrap(), 0);
            }
        }
    }

    #[test]
    fn g14_hilbert_degree_and_dimension() {
        assert_eq!(hilbert_of(&get("g14")), (6, 5));
    }

    #[test]
    fn sections_are_substituted_pluecker_relations() {
        let x5 = get("x5");
        assert_eq!(x5.ring.arity(), 9);
        assert!(x5.ring.var_index("p34").is_err());
        assert_eq!(x5.quadrics.len(), 5);
        // Q(0,1,3,4) = p01*p34 - p03*p14 + p13*p04 picks up the substitution
        let expect = poly_from_monomials(
            &x5.ring,
            &[
                (1, &[(0, 2)]),
                (1, &[(0, 1), (1, 1)]),
                (-1, &[(2, 1), (6, 1)]),
                (1, &[(5, 1), (3, 1)]),
            ],
        )
        .unwrap();
        assert_eq!(x5.quadrics[2], expect);
        let x4 = get("x4");
        let x3 = get("x3");
        assert_eq!((x4.ring.arity(), x4.quadrics.len()), (8, 5));
        assert_eq!((x3.ring.arity(), x3.quadrics.len()), (7, 5));
        assert_eq!(hilbert_of(&x3), (3, 5));
        assert_eq!(hilbert_of(&x5), (5, 5));
    }

    #[test]
    fn scroll_entries_have_minimal_degree() {
        let s = get("s111");
        assert_eq!(s.ring.arity(), 6);
        assert_eq!(hilbert_of(&s), (3, 3));
        let s = get("s123");
        assert_eq!(s.ring.arity(), 9);
        assert_eq!(hilbert_of(&s), (3, 6));
        let s = get("s2");
        assert_eq!(s.ring.arity(), 3);
        assert_eq!(hilbert_of(&s), (1, 2));
        // and the conic is the classical catalecticant
        let expect = poly_from_monomials(
            &s.ring,
            &[(-1, &[(1, 2)]), (1, &[(0, 1), (2, 1)])],
        )
        .unwrap();
        assert!(same_span(&s.ring, &s.quadrics, &[expect]));
    }

    #[test]
    fn dp5_classical_pfaffians_are_pinned() {
        let ring = Ring::standard("z", 6, 31).unwrap();
        let r = &ring;
        let classical = dp5_classical_quadrics(r).unwrap();
        let expect = [
            // -z0*z2 + (-z1 + z2)*z5
            poly_from_monomials(
                r,
                &[(-1, &[(0, 1), (2, 1)]), (-1, &[(1, 1), (5, 1)]), (1, &[(2, 1), (5, 1)])],
            ),
            // (z0 - z1)*z3 + (z1 - z2)*z5
            poly_from_monomials(
                r,
                &[
                    (1, &[(0, 1), (3, 1)]),
                    (-1, &[(1, 1), (3, 1)]),
                    (1, &[(1, 1), (5, 1)]),
                    (-1, &[(2, 1), (5, 1)]),
                ],
            ),
            // (-z0 + z1)*z4 - z1*z5
            poly_from_monomials(
                r,
                &[(-1, &[(0, 1), (4, 1)]), (1, &[(1, 1), (4, 1)]), (-1, &[(1, 1), (5, 1)])],
            ),
            // (z3 - z4)*z1 + (z2 - z3)*z5
            poly_from_monomials(
                r,
                &[
                    (1, &[(3, 1), (1, 1)]),
                    (-1, &[(4, 1), (1, 1)]),
                    (1, &[(2, 1), (5, 1)]),
                    (-1, &[(3, 1), (5, 1)]),
                ],
            ),
            // (-z4 + z5)*z2 - z3*z5
            poly_from_monomials(
                r,
                &[(-1, &[(4, 1), (2, 1)]), (1, &[(5, 1), (2, 1)]), (-1, &[(3, 1), (5, 1)])],
            ),
        ];
        for (got, want) in classical.iter().zip(expect) {
            assert_eq!(*got, want.unwrap());
        }
        // the classical model is itself a surface of degree five
        let ideal = Ideal::new(r, classical).unwrap();
        let h = ideal.hilbert(&Budget::default()).unwrap();
        assert_eq!((h.projective_dimension().unwrap(), h.degree), (2, 5));
    }

    #[test]
    fn dp5_generators_are_aligned_pfaffians() {
        let s = get("dp5");
        let r = &s.ring;
        // first aligned Pfaffian, expanded by hand from the substitution
        let expect = poly_from_monomials(
            r,
            &[
                (-1, &[(3, 2)]),
                (1, &[(2, 1), (4, 1)]),
                (1, &[(3, 1), (5, 1)]),
                (-1, &[(4, 1), (5, 1)]),
            ],
        )
        .unwrap();
        assert_eq!(s.quadrics[0], expect);
        // full list agrees with substituting the alignment into the
        // classical presentation
        let images: HashMap<String, Polynomial> = (0..6)
            .map(|i| (r.names()[i].clone(), lin(r, DP5_ALIGN[i]).unwrap()))
            .collect();
        for (got, classical) in s.quadrics.iter().zip(dp5_classical_quadrics(r).unwrap()) {
            assert_eq!(*got, classical.substitute(&images, r).unwrap());
        }
        assert_eq!(hilbert_of(&s), (2, 5));
    }

    #[test]
    fn dp5_kernel_quadrics_span_the_pfaffians() {
        let s = get("dp5");
        let phi = s.parametrization.as_ref().unwrap();
        let kernel = quadric_kernel(phi, &s.ring).unwrap();
        assert_eq!(kernel.len(), 5);
        assert!(same_span(&s.ring, &kernel, &s.quadrics));
    }

    #[test]
    fn dp5_cubic_basis_is_pinned() {
        let s = get("dp5");
        let phi = s.parametrization.as_ref().unwrap();
        let r = phi.source();
        // z_k = m_k - x1*x2^2 for the six cubic monomials m_k
        let heads: [&[(usize, u16)]; 6] = [
            &[(0, 2), (1, 1)],
            &[(0, 1), (1, 2)],
            &[(0, 2), (2, 1)],
            &[(0, 1), (1, 1), (2, 1)],
            &[(1, 2), (2, 1)],
            &[(0, 1), (2, 2)],
        ];
        for (form, head) in phi.forms().iter().zip(heads) {
            let mut terms: Vec<(i64, &[(usize, u16)])> = vec![(1, head)];
            terms.push((-1, &[(1, 1), (2, 2)]));
            let want = poly_from_monomials(r, &terms).unwrap();
            assert_eq!(*form, want);
        }
    }

    #[test]
    fn dp6_cubic_basis_is_pinned() {
        let s = get("dp6");
        let phi = s.parametrization.as_ref().unwrap();
        let r = phi.source();
        let monos: [&[(usize, u16)]; 7] = [
            &[(0, 2), (1, 1)],
            &[(0, 1), (1, 2)],
            &[(0, 2), (2, 1)],
            &[(0, 1), (1, 1), (2, 1)],
            &[(1, 2), (2, 1)],
            &[(0, 1), (2, 2)],
            &[(1, 1), (2, 2)],
        ];
        for (form, m) in phi.forms().iter().zip(monos) {
            assert_eq!(*form, poly_from_monomials(r, &[(1, m)]).unwrap());
        }
    }

    fn matrix_text(m: &LinearMatrix) -> Vec<Vec<String>> {
        (0..m.nrows())
            .map(|r| (0..m.ncols()).map(|c| m.entry(r, c).to_string()).collect())
            .collect()
    }

    fn expect_matrix(m: &LinearMatrix, rows: &[&[&str]]) {
        let got = matrix_text(m);
        let want: Vec<Vec<String>> = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|s| parse_poly(m.ring(), s).unwrap().to_string())
                    .collect()
            })
            .collect();
        assert_eq!(got, want);
    }

    #[test]
    fn del_pezzo_witness_matrices_match_the_displays() {
        let dp5 = get("dp5");
        assert_eq!(dp5.witnesses.len(), 2);
        assert_eq!(dp5.witnesses[0].label, "h-e0");
        expect_matrix(
            &dp5.witnesses[0].matrix,
            &[
                &["z0 - z4", "z1 - z4", "z3 - z4"],
                &["z2", "z3", "z5"],
            ],
        );
        assert_eq!(dp5.witnesses[1].label, "2h-e0-e1-e2-e3");
        expect_matrix(
            &dp5.witnesses[1].matrix,
            &[
                &["z0 - z3", "z1 - z4", "z3"],
                &["z2 - z3", "z3 - z4", "z5"],
            ],
        );
        assert_eq!(dp5.pending_witnesses, &["h-e1", "h-e2", "h-e3"]);

        let dp6 = get("dp6");
        assert_eq!(dp6.witnesses.len(), 3);
        expect_matrix(
            &dp6.witnesses[0].matrix,
            &[&["z0", "z1", "z3", "z4"], &["z2", "z3", "z5", "z6"]],
        );
        assert_eq!(dp6.witnesses[2].label, "h-e2");

        let dp7 = get("dp7");
        assert_eq!(dp7.witnesses.len(), 2);
        expect_matrix(
            &dp7.witnesses[0].matrix,
            &[
                &["z0", "z1", "z3", "z4", "z6"],
                &["z2", "z3", "z5", "z6", "z7"],
            ],
        );

        let dp8 = get("dp8");
        assert_eq!(dp8.witnesses.len(), 1);
        assert_eq!(dp8.witnesses[0].scroll_type, "S(1,2,3)");
        expect_matrix(
            &dp8.witnesses[0].matrix,
            &[
                &["z0", "z1", "z2", "z4", "z5", "z7"],
                &["z3", "z4", "z5", "z6", "z7", "z8"],
            ],
        );
    }

    #[test]
    fn v2q_witness_matrices_match_the_displays() {
        let s = get("v2q");
        // pinned parametrization sample: z1 = x0^2*y0*y1
        let phi = s.parametrization.as_ref().unwrap();
        let want = poly_from_monomials(phi.source(), &[(1, &[(0, 2), (2, 1), (3, 1)])]).unwrap();
        assert_eq!(phi.forms()[1], want);
        assert_eq!(s.witnesses.len(), 2);
        expect_matrix(
            &s.witnesses[0].matrix,
            &[
                &["z0", "z1", "z2", "z3", "z4", "z5"],
                &["z3", "z4", "z5", "z6", "z7", "z8"],
            ],
        );
        expect_matrix(
            &s.witnesses[1].matrix,
            &[
                &["z0", "z1", "z3", "z4", "z6", "z7"],
                &["z1", "z2", "z4", "z5", "z7", "z8"],
            ],
        );
        assert_eq!(s.witnesses[0].scroll_type, "S(2,2,2)");
    }

    #[test]
    fn segre111_flattenings_match_the_tensor() {
        let s = get("segre111");
        assert_eq!(s.witnesses.len(), 3);
        expect_matrix(
            &s.witnesses[0].matrix,
            &[&["z0", "z1", "z2", "z3"], &["z4", "z5", "z6", "z7"]],
        );
        expect_matrix(
            &s.witnesses[1].matrix,
            &[&["z0", "z1", "z4", "z5"], &["z2", "z3", "z6", "z7"]],
        );
        expect_matrix(
            &s.witnesses[2].matrix,
            &[&["z0", "z2", "z4", "z6"], &["z1", "z3", "z5", "z7"]],
        );
        // pairwise distinct
        for i in 0..3 {
            for j in i + 1..3 {
                assert_ne!(
                    matrix_text(&s.witnesses[i].matrix),
                    matrix_text(&s.witnesses[j].matrix)
                );
            }
        }
    }

    #[test]
    fn quadric_kernel_identity_and_conic() {
        let src = Ring::standard("x", 3, 31).unwrap();
        let id_forms: Vec<Polynomial> = (0..3).map(|i| Polynomial::var(&src, i).unwrap()).collect();
        let phi = Parametrization::new(id_forms).unwrap();
        let target = Ring::standard("z", 3, 31).unwrap();
        assert!(quadric_kernel(&phi, &target).unwrap().is_empty());

        let src2 = Ring::standard("x", 2, 31).unwrap();
        let conic = Parametrization::new(vec![
            mono(&src2, &[(0, 2)]).unwrap(),
            mono(&src2, &[(0, 1), (1, 1)]).unwrap(),
            mono(&src2, &[(1, 2)]).unwrap(),
        ])
        .unwrap();
        let t3 = Ring::standard("z", 3, 31).unwrap();
        let quads = quadric_kernel(&conic, &t3).unwrap();
        assert_eq!(quads.len(), 1);
        let want = poly_from_monomials(&t3, &[(-1, &[(1, 2)]), (1, &[(0, 1), (2, 1)])]).unwrap();
        assert_eq!(quads[0], want);
    }

    #[test]
    fn quadrics_vanish_on_their_parametrizations() {
        for p in [31u32, 101] {
            for id in ["dp5", "dp6", "dp7", "dp8", "v2q", "segre111", "segre22", "iv2p3", "v2p3", "v3p2"] {
                let spec = variety(id, p).unwrap();
                let phi = spec.parametrization.as_ref().unwrap();
                for q in &spec.quadrics {
                    assert!(phi.vanishes_on(q).unwrap(), "{id} at p={p}");
                }
                // and the witness minors vanish as well
                for w in &spec.witnesses {
                    for m in w.matrix.two_minors().unwrap() {
                        assert!(phi.vanishes_on(&m).unwrap(), "{id} witness {}", w.label);
                    }
                }
            }
        }
    }

    #[test]
    fn segre22_kernel_matches_the_generic_matrix_minors() {
        let s = get("segre22");
        let r = &s.ring;
        let v = |i: usize, j: usize| Polynomial::var_by_name(r, &format!("z{i}{j}")).unwrap();
        let mut minors = Vec::new();
        for r1 in 0..3 {
            for r2 in r1 + 1..3 {
                for c1 in 0..3usize {
                    for c2 in c1 + 1..3 {
                        minors.push(
                            v(r1, c1)
                                .mul(&v(r2, c2))
                                .unwrap()
                                .sub(&v(r1, c2).mul(&v(r2, c1)).unwrap())
                                .unwrap(),
                        );
                    }
                }
            }
        }
        assert_eq!(minors.len(), 9);
        assert!(same_span(r, &s.quadrics, &minors));
    }

    #[test]
    fn hsegre22_is_an_eight_variable_model() {
        let s = get("hsegre22");
        assert_eq!(s.ring.arity(), 8);
        assert!(s.ring.var_index("z22").is_err());
        assert_eq!(s.quadrics.len(), 9);
        assert_eq!(hilbert_of(&s), (3, 6));
    }

    #[test]
    fn dp6_hilbert_confirms_expected() {
        assert_eq!(hilbert_of(&get("dp6")), (2, 6));
    }

    #[test]
    fn witness_minors_lie_in_the_quadric_span() {
        // quadric-level smoke check; full ideal containment is exercised by
        // the syzygy-scheme tests
        for id in ["dp6", "v2q", "segre111"] {
            let s = get(id);
            let span = quad_coords(&s.ring, &s.quadrics);
            let f = s.ring.field();
            let base = reduced_span(f, &span);
            for w in &s.witnesses {
                let minors = w.matrix.two_minors().unwrap();
                let mut joint = span.clone();
                joint.extend(quad_coords(&s.ring, &minors));
                assert_eq!(reduced_span(f, &joint), base, "{id} {}", w.label);
            }
        }
    }

    #[test]
    fn forms_through_no_conditions_lists_all_monomials() {
        let r = Ring::standard("x", 3, 31).unwrap();
        let basis = forms_through(&r, 1, &[]).unwrap();
        let names: Vec<String> = basis.iter().map(|p| p.to_string()).collect();
        assert_eq!(names, ["x0", "x1", "x2"]);
        // degenerate input is rejected
        assert!(forms_through(&r, 1, &[vec![0, 0, 0]]).is_err());
        assert!(forms_through(&r, 1, &[vec![1, 0]]).is_err());
    }

    #[test]
    fn export_import_round_trip() {
        let entries = all(31).unwrap();
        let text = export_text(&entries);
        let back = import_text(&text).unwrap();
        assert_eq!(back.len(), entries.len());
        for (orig, re) in entries.iter().zip(&back) {
            assert_eq!(orig.id, re.id);
            assert_eq!(orig.recipe, re.recipe);
            assert_eq!(orig.expected, re.expected);
            assert_eq!(orig.ring.names(), re.ring.names());
            assert_eq!(orig.quadrics.len(), re.generators.len());
            for (a, b) in orig.quadrics.iter().zip(&re.generators) {
                assert_eq!(a.to_string(), b.to_string());
            }
        }
        // malformed inputs fail cleanly
        assert!(import_text("").is_err());
        assert!(import_text("catalog-format 2\nprime 31").is_err());
        let truncated = text.lines().take(8).collect::<Vec<_>>().join("\n");
        assert!(import_text(&truncated).is_err());
    }
}
