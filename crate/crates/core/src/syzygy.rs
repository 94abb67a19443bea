//! Schemes cut out by subsets of a variety's quadrics.
//!
//! Dropping one quadric from the basis of I(X)_2, or keeping only the
//! quadrics that appear in a top-strand cocycle, leaves an ideal J whose
//! zero set contains X and possibly more. This module builds such ideals,
//! measures them (Hilbert data, residual quotient (J : I(X))), and
//! classifies the scheme as the variety itself, a union of the variety
//! with a linear space, or something else. Scheme comparisons run at the
//! level of Hilbert polynomials plus two-sided containment after a bounded
//! saturation proxy: iterated ideal quotient by a fixed linear form (the
//! sum of all coordinates), capped at five rounds. The ideals produced
//! here are usually not saturated and full saturation is never attempted.
//!
//! The module also hosts the scroll-side checks: the span count of a
//! scroll's two-minors and the verification that a catalog entry's witness
//! matrices define scrolls of the advertised degree lying on the entry.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::budget::Budget;
use crate::catalog::VarietySpec;
use crate::error::{Error, Result};
use crate::groebner::{intersect, Ideal};
use crate::hilbert::same_hilbert_polynomial;
use crate::koszul::{top_strand_classes, KoszulClass};
use crate::linalg::OnlineReducer;
use crate::monomial::monomials_of_degree;
use crate::poly::Polynomial;
use crate::ring::{same_ring, RingRef};

/// What the scheme of a quadric subset turned out to be.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Classification {
    /// Same Hilbert polynomial as the variety and two-sided containment
    /// after the saturation proxy.
    EqualsVariety,
    /// The saturated ideal equals I(X) intersected with an ideal of
    /// independent linear forms.
    UnionWithLinearSpace {
        /// Number of independent linear forms cutting the extra component.
        linear_forms: usize,
        /// Projective dimension of the extra linear space.
        span_dim: usize,
    },
    /// Neither certificate applied within budget.
    Other,
}

impl Classification {
    pub fn tag(&self) -> &'static str {
        match self {
            Classification::EqualsVariety => "equals-variety",
            Classification::UnionWithLinearSpace { .. } => "union-with-linear-space",
            Classification::Other => "other",
        }
    }
}

/// Measurements of the scheme cut out by a quadric subset.
#[derive(Clone, Debug)]
pub struct SyzygySchemeReport {
    pub variety: String,
    pub prime: u32,
    /// How the subset was chosen, e.g. "omit 3" or "class seed 7".
    pub class: String,
    /// Independent quadrics in the subset.
    pub generator_count: usize,
    /// Projective dimension of the subset's zero scheme.
    pub dimension: usize,
    pub degree: u64,
    /// Generators of the quotient (J : I(X)).
    pub residual: Vec<Polynomial>,
    pub classification: Classification,
}

impl SyzygySchemeReport {
    pub fn to_json(&self) -> Value {
        let residual: Vec<String> = self.residual.iter().map(|g| g.to_string()).collect();
        let classification = match &self.classification {
            Classification::UnionWithLinearSpace {
                linear_forms,
                span_dim,
            } => json!({
                "tag": self.classification.tag(),
                "linear_forms": linear_forms,
                "span_dim": span_dim,
            }),
            other => json!({ "tag": other.tag() }),
        };
        json!({
            "variety": self.variety,
            "prime": self.prime,
            "class": self.class,
            "generators": self.generator_count,
            "dimension": self.dimension,
            "degree": self.degree,
            "residual": residual,
            "classification": classification,
        })
    }
}

/// Coefficient row of a quadric over the degree-2 monomial basis.
fn quadric_rows(ring: &RingRef, quadrics: &[Polynomial]) -> Result<Vec<Vec<u32>>> {
    let monos = monomials_of_degree(ring.arity(), 2, ring.order());
    let mut rows = Vec::with_capacity(quadrics.len());
    for q in quadrics {
        same_ring(ring, q.ring())?;
        if q.homogeneous_degree() != Some(2) {
            return Err(Error::Shape("expected a homogeneous quadric".into()));
        }
        let row: Vec<u32> = monos.iter().map(|m| q.coeff_of(m)).collect();
        rows.push(row);
    }
    Ok(rows)
}

/// Catalog quadrics completing the span of `gens` to all of I(X)_2.
fn complement_quadrics(
    spec: &VarietySpec,
    gens: &[Polynomial],
) -> Result<Vec<Polynomial>> {
    let f = spec.ring.field();
    let mut reducer = OnlineReducer::new(f);
    for row in quadric_rows(&spec.ring, gens)? {
        reducer.offer_dense(&row);
    }
    let mut out = Vec::new();
    for (q, row) in spec
        .quadrics
        .iter()
        .zip(quadric_rows(&spec.ring, &spec.quadrics)?)
    {
        if reducer.offer_dense(&row) {
            out.push(q.clone());
        }
    }
    Ok(out)
}

/// The fixed hyperplane used by the saturation proxy.
fn proxy_form(ring: &RingRef) -> Result<Polynomial> {
    let mut ell = Polynomial::zero(ring);
    for v in 0..ring.arity() {
        ell = ell.add(&Polynomial::var(ring, v)?)?;
    }
    Ok(ell)
}

/// Cap on the iterated-quotient saturation proxy.
const SATURATION_ROUNDS: usize = 5;

/// Measure and classify the scheme of a set of quadrics from I(X)_2.
///
/// The residual reported is (J : I(X)), computed as the quotient of J by
/// the quadrics completing J's degree-2 span; both ideals agree because
/// J + (complement) = I(X). Classification certificates, in order:
/// the variety itself (equal Hilbert polynomials, J inside I(X), and the
/// saturated J containing I(X)), then a union with a linear space (the
/// saturated J equals I(X) intersected with the residual's linear part).
pub fn classify_quadrics(
    spec: &VarietySpec,
    gens: Vec<Polynomial>,
    label: &str,
    budget: &Budget,
) -> Result<SyzygySchemeReport> {
    if gens.is_empty() {
        return Err(Error::Shape("no quadrics to classify".into()));
    }
    for g in &gens {
        same_ring(&spec.ring, g.ring())?;
    }
    let ix = Ideal::new(&spec.ring, spec.quadrics.clone())?;
    let hx = ix.hilbert(budget)?;
    let complement = complement_quadrics(spec, &gens)?;
    let generator_count = spec.quadrics.len() - complement.len();

    let j = Ideal::new(&spec.ring, gens)?;
    let hj = j.hilbert(budget)?;
    let residual = if complement.is_empty() {
        // J already spans I(X)_2, so (J : I(X)) is the unit ideal
        Ideal::new(&spec.ring, vec![Polynomial::constant(&spec.ring, 1)])?
    } else {
        j.quotient(&Ideal::new(&spec.ring, complement)?, budget)?
    };

    let ell = proxy_form(&spec.ring)?;
    let (jsat, _) = j.saturate_by(&ell, SATURATION_ROUNDS, budget)?;

    let classification = if same_hilbert_polynomial(&hj, &hx)
        && ix.contains_ideal(&j, budget)?
        && jsat.contains_ideal(&ix, budget)?
    {
        Classification::EqualsVariety
    } else {
        let linear: Vec<Polynomial> = residual
            .groebner_basis(budget)?
            .iter()
            .filter(|g| g.degree() == 1)
            .cloned()
            .collect();
        let certified = if linear.is_empty() {
            false
        } else {
            let span = Ideal::new(&spec.ring, linear.clone())?;
            jsat.equals(&intersect(&ix, &span, budget)?, budget)?
        };
        if certified {
            Classification::UnionWithLinearSpace {
                linear_forms: linear.len(),
                span_dim: spec.ambient() - linear.len(),
            }
        } else {
            Classification::Other
        }
    };

    let residual = residual
        .generators()
        .iter()
        .map(|g| g.monic())
        .collect::<Result<Vec<_>>>()?;
    Ok(SyzygySchemeReport {
        variety: spec.id.to_string(),
        prime: spec.prime(),
        class: label.to_string(),
        generator_count,
        dimension: hj.dimension.saturating_sub(1),
        degree: hj.degree,
        residual,
        classification,
    })
}

/// Report on the ideal generated by every basis quadric except one.
pub fn omit_one_scheme(
    spec: &VarietySpec,
    omit: usize,
    budget: &Budget,
) -> Result<SyzygySchemeReport> {
    let n = spec.quadrics.len();
    if omit >= n {
        return Err(Error::IndexOutOfRange {
            index: omit,
            len: n,
        });
    }
    let gens: Vec<Polynomial> = spec
        .quadrics
        .iter()
        .enumerate()
        .filter(|&(k, _)| k != omit)
        .map(|(_, q)| q.clone())
        .collect();
    classify_quadrics(spec, gens, &format!("omit {omit}"), budget)
}

/// Report on the quadrics of one cocycle from the top linear strand.
pub fn class_scheme(
    spec: &VarietySpec,
    class: &KoszulClass,
    label: &str,
    budget: &Budget,
) -> Result<SyzygySchemeReport> {
    classify_quadrics(spec, class.syzygy_quadrics()?, label, budget)
}

/// A seeded random combination of the top-strand cocycle basis.
///
/// Deterministic for a fixed seed and prime. The combination stays inside
/// the cocycle space, so its quadric span is one a syzygy can actually
/// produce; that span is usually a proper subspace of the spans reachable
/// by arbitrary hyperplanes of I(X)_2.
pub fn general_class(spec: &VarietySpec, seed: u64, budget: &Budget) -> Result<KoszulClass> {
    let classes = top_strand_classes(spec, budget)?;
    let first = classes
        .first()
        .ok_or_else(|| Error::Shape("empty top strand".into()))?;
    let f = spec.ring.field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = spec.quadrics.len();
    let wedges = first.coeffs().len();
    let mut coeffs = vec![vec![0u32; m]; wedges];
    for class in &classes {
        // nonzero weights keep every basis class in play
        let t = rng.gen_range(1..f.modulus());
        for (wi, row) in class.coeffs().iter().enumerate() {
            for (k, &c) in row.iter().enumerate() {
                coeffs[wi][k] = f.add(coeffs[wi][k], f.mul(t, c));
            }
        }
    }
    KoszulClass::new(&spec.ring, &spec.quadrics, first.p(), coeffs, budget)
}

/// Report on a seeded general member of the top strand.
pub fn general_class_scheme(
    spec: &VarietySpec,
    seed: u64,
    budget: &Budget,
) -> Result<SyzygySchemeReport> {
    let class = general_class(spec, seed, budget)?;
    class_scheme(spec, &class, &format!("class seed {seed}"), budget)
}

/// Sum of several omit-one ideals: the scheme-theoretic intersection of
/// their zero sets. Needs at least two distinct indices; any two already
/// bring back every basis quadric.
pub fn syz_intersection(
    spec: &VarietySpec,
    omits: &[usize],
    budget: &Budget,
) -> Result<Ideal> {
    let n = spec.quadrics.len();
    let distinct: HashSet<usize> = omits.iter().copied().collect();
    for &omit in &distinct {
        if omit >= n {
            return Err(Error::IndexOutOfRange {
                index: omit,
                len: n,
            });
        }
    }
    if distinct.len() < 2 {
        return Err(Error::Shape(
            "intersection needs at least two omitted indices".into(),
        ));
    }
    let _ = budget;
    let gens: Vec<Polynomial> = spec
        .quadrics
        .iter()
        .enumerate()
        .filter(|(k, _)| distinct.iter().any(|&omit| omit != *k))
        .map(|(_, q)| q.clone())
        .collect();
    Ideal::new(&spec.ring, gens)
}

/// Number of independent quadrics among a scroll entry's two-minors.
pub fn scroll_quadric_count(spec: &VarietySpec) -> Result<usize> {
    if !spec.recipe.starts_with("two-minors-of-scroll-matrix") {
        return Err(Error::Unsupported(format!(
            "{} is not a scroll entry",
            spec.id
        )));
    }
    let f = spec.ring.field();
    let mut reducer = OnlineReducer::new(f);
    for row in quadric_rows(&spec.ring, &spec.quadrics)? {
        reducer.offer_dense(&row);
    }
    Ok(reducer.rank())
}

/// One witness matrix checked against its variety.
#[derive(Clone, Debug)]
pub struct WitnessCheck {
    pub label: String,
    pub scroll_type: String,
    /// Every two-minor of the witness lies in the variety's ideal.
    pub contained: bool,
    /// Hilbert degree of the two-minor ideal.
    pub degree: u64,
    /// Degree the scroll type advertises: the sum of its block degrees.
    pub degree_target: u64,
}

impl WitnessCheck {
    pub fn passed(&self) -> bool {
        self.contained && self.degree == self.degree_target
    }
}

/// All witness checks for one entry, plus pairwise ideal distinctness.
#[derive(Clone, Debug)]
pub struct ScrollWitnessReport {
    pub variety: String,
    pub checks: Vec<WitnessCheck>,
    pub pairwise_distinct: bool,
}

impl ScrollWitnessReport {
    pub fn all_passed(&self) -> bool {
        self.pairwise_distinct && self.checks.iter().all(WitnessCheck::passed)
    }

    pub fn to_json(&self) -> Value {
        let checks: Vec<Value> = self
            .checks
            .iter()
            .map(|c| {
                json!({
                    "label": c.label,
                    "scroll_type": c.scroll_type,
                    "contained": c.contained,
                    "degree": c.degree,
                    "degree_target": c.degree_target,
                })
            })
            .collect();
        json!({
            "variety": self.variety,
            "checks": checks,
            "pairwise_distinct": self.pairwise_distinct,
        })
    }
}

/// Sum of the block degrees named by a scroll type such as "S(1,2,3)".
fn scroll_type_degree(stype: &str) -> u64 {
    stype
        .split(|c: char| !c.is_ascii_digit())
        .filter(|s| !s.is_empty())
        .filter_map(|s| s.parse::<u64>().ok())
        .sum()
}

/// Check every witness matrix on the entry: its two-minors must lie in the
/// entry's ideal and cut a scheme of the advertised scroll degree, and
/// distinct witnesses must generate distinct ideals.
pub fn verify_scroll_witnesses(
    spec: &VarietySpec,
    budget: &Budget,
) -> Result<ScrollWitnessReport> {
    let ix = Ideal::new(&spec.ring, spec.quadrics.clone())?;
    let mut checks = Vec::new();
    let mut ideals = Vec::new();
    for w in &spec.witnesses {
        let minors = w.matrix.two_minors()?;
        let mut contained = true;
        for m in &minors {
            if !ix.contains_poly(m, budget)? {
                contained = false;
                break;
            }
        }
        let ideal = Ideal::new(&spec.ring, minors)?;
        let degree = ideal.hilbert(budget)?.degree;
        checks.push(WitnessCheck {
            label: w.label.clone(),
            scroll_type: w.scroll_type.clone(),
            contained,
            degree,
            degree_target: scroll_type_degree(&w.scroll_type),
        });
        ideals.push(ideal);
    }
    let mut pairwise_distinct = true;
    'outer: for a in 0..ideals.len() {
        for b in a + 1..ideals.len() {
            if ideals[a].equals(&ideals[b], budget)? {
                pairwise_distinct = false;
                break 'outer;
            }
        }
    }
    Ok(ScrollWitnessReport {
        variety: spec.id.to_string(),
        checks,
        pairwise_distinct,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::variety;
    use crate::hilbert::HilbertData;
    use crate::monomial::binomial;

    fn get(id: &str) -> VarietySpec {
        variety(id, 31).unwrap()
    }

    fn b() -> Budget {
        Budget::default()
    }

    #[test]
    fn omitting_one_quadric_keeps_the_rest() {
        let spec = get("g14");
        let report = omit_one_scheme(&spec, 0, &b()).unwrap();
        assert_eq!(report.generator_count, 4);
        assert_eq!(report.variety, "g14");
        assert_eq!(report.class, "omit 0");
        let err = omit_one_scheme(&spec, 5, &b()).unwrap_err();
        assert!(matches!(err, Error::IndexOutOfRange { index: 5, len: 5 }));
    }

    #[test]
    fn plucker_omission_adds_a_five_dimensional_space() {
        let spec = get("g14");
        for omit in 0..spec.quadrics.len() {
            let report = omit_one_scheme(&spec, omit, &b()).unwrap();
            assert_eq!(report.dimension, 6, "omit {omit}");
            assert_eq!(report.degree, 5, "omit {omit}");
            assert_eq!(
                report.classification,
                Classification::UnionWithLinearSpace {
                    linear_forms: 4,
                    span_dim: 5,
                },
                "omit {omit}"
            );
        }
    }

    #[test]
    fn triple_segre_omission_can_leave_a_line() {
        let spec = get("segre111");
        let report = omit_one_scheme(&spec, 2, &b()).unwrap();
        assert_eq!(
            report.classification,
            Classification::UnionWithLinearSpace {
                linear_forms: 6,
                span_dim: 1,
            }
        );
        // other omissions still leave linear spaces, just larger ones
        let report = omit_one_scheme(&spec, 0, &b()).unwrap();
        assert_eq!(
            report.classification,
            Classification::UnionWithLinearSpace {
                linear_forms: 4,
                span_dim: 3,
            }
        );
    }

    #[test]
    fn some_veronese_omissions_change_nothing() {
        let spec = get("v2p3");
        let report = omit_one_scheme(&spec, 8, &b()).unwrap();
        assert_eq!(report.classification, Classification::EqualsVariety);
        assert_eq!(report.generator_count, 19);
        assert_eq!(report.degree, 8);
        // most omissions do leave an extra plane
        let report = omit_one_scheme(&spec, 0, &b()).unwrap();
        assert!(matches!(
            report.classification,
            Classification::UnionWithLinearSpace { .. }
        ));
    }

    #[test]
    fn every_omission_stays_inside_the_ideal() {
        // the subset scheme contains the variety: same top dimension,
        // at least the variety's degree
        for id in ["x5", "x3", "dp5", "dp6", "segre22", "iv2p3"] {
            let spec = get(id);
            let ix = Ideal::new(&spec.ring, spec.quadrics.clone()).unwrap();
            let hx = ix.hilbert(&b()).unwrap();
            let report = omit_one_scheme(&spec, 1, &b()).unwrap();
            assert_eq!(report.generator_count, spec.quadrics.len() - 1, "{id}");
            assert_eq!(report.dimension + 1, hx.dimension, "{id}");
            assert!(report.degree >= hx.degree, "{id}");
        }
    }

    #[test]
    fn general_classes_recover_the_high_degree_entries() {
        for id in ["iv2p3", "v2p3"] {
            let spec = get(id);
            for seed in [1u64, 2] {
                let report = general_class_scheme(&spec, seed, &b()).unwrap();
                assert_eq!(
                    report.classification,
                    Classification::EqualsVariety,
                    "{id} seed {seed}"
                );
                assert_eq!(report.generator_count, spec.quadrics.len() - 1);
            }
        }
    }

    #[test]
    fn general_classes_on_the_grassmannian_keep_the_linear_space() {
        let spec = get("g14");
        let report = general_class_scheme(&spec, 1, &b()).unwrap();
        assert_eq!(
            report.classification,
            Classification::UnionWithLinearSpace {
                linear_forms: 4,
                span_dim: 5,
            }
        );
        assert_eq!(report.generator_count, 4);
    }

    #[test]
    fn deep_budget_reaches_the_plane_cubics() {
        let spec = get("v3p2");
        let err = general_class_scheme(&spec, 1, &Budget::default()).unwrap_err();
        assert!(matches!(err, Error::DimensionCap { .. }));
        let report = general_class_scheme(&spec, 1, &Budget::deep()).unwrap();
        assert_eq!(report.classification, Classification::EqualsVariety);
        assert_eq!(report.generator_count, 26);
    }

    #[test]
    fn intersection_of_omissions_is_the_variety() {
        let spec = get("x5");
        let sum = syz_intersection(&spec, &[0, 1, 2, 3, 4], &b()).unwrap();
        let ix = Ideal::new(&spec.ring, spec.quadrics.clone()).unwrap();
        assert!(sum.equals(&ix, &b()).unwrap());
        let hs = sum.hilbert(&b()).unwrap();
        let hx = ix.hilbert(&b()).unwrap();
        assert!(same_hilbert_polynomial(&hs, &hx));

        let err = syz_intersection(&spec, &[3, 3], &b()).unwrap_err();
        assert!(matches!(err, Error::Shape(_)));
        let err = syz_intersection(&spec, &[0, 9], &b()).unwrap_err();
        assert!(matches!(err, Error::IndexOutOfRange { .. }));
    }

    #[test]
    fn two_omissions_suffice_for_the_pair_sum() {
        let spec = get("dp5");
        let sum = syz_intersection(&spec, &[1, 4], &b()).unwrap();
        assert_eq!(sum.generators().len(), 5);
        let ix = Ideal::new(&spec.ring, spec.quadrics.clone()).unwrap();
        assert!(sum.equals(&ix, &b()).unwrap());
    }

    #[test]
    fn scroll_counts_follow_the_degree() {
        for (id, deg) in [("s111", 3u64), ("s1111", 4), ("s123", 6), ("s222", 6)] {
            let spec = get(id);
            let count = scroll_quadric_count(&spec).unwrap();
            assert_eq!(count as u64, binomial(deg, 2), "{id}");
        }
        assert!(matches!(
            scroll_quadric_count(&get("dp5")),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn witnesses_cut_scrolls_on_their_entries() {
        let report = verify_scroll_witnesses(&get("segre111"), &b()).unwrap();
        assert_eq!(report.checks.len(), 3);
        assert!(report.pairwise_distinct);
        for c in &report.checks {
            assert!(c.contained, "{}", c.label);
            assert_eq!(c.degree, 4, "{}", c.label);
            assert_eq!(c.degree_target, 4);
        }

        let report = verify_scroll_witnesses(&get("dp8"), &b()).unwrap();
        assert_eq!(report.checks.len(), 1);
        assert_eq!(report.checks[0].scroll_type, "S(1,2,3)");
        assert_eq!(report.checks[0].degree, 6);
        assert!(report.all_passed());
    }

    #[test]
    fn quintic_surface_witnesses_have_minimal_degree() {
        let report = verify_scroll_witnesses(&get("dp5"), &b()).unwrap();
        assert_eq!(report.checks.len(), 2);
        assert!(report.pairwise_distinct);
        for c in &report.checks {
            assert!(c.passed(), "{}", c.label);
            assert_eq!(c.degree, 3);
        }
    }

    #[test]
    fn reports_serialize_with_the_classification() {
        let spec = get("g14");
        let report = omit_one_scheme(&spec, 0, &b()).unwrap();
        let v = report.to_json();
        assert_eq!(v["variety"], "g14");
        assert_eq!(v["classification"]["tag"], "union-with-linear-space");
        assert_eq!(v["classification"]["span_dim"], 5);
        assert_eq!(v["generators"], 4);
        assert!(v["residual"].as_array().unwrap().len() >= 4);

        let hd = HilbertData {
            numerator: vec![1],
            arity: 1,
            dimension: 1,
            degree: 1,
        };
        assert_eq!(hd.value(0), 1);
    }

    #[test]
    fn scroll_type_degrees_parse() {
        assert_eq!(scroll_type_degree("S(1,2,3)"), 6);
        assert_eq!(scroll_type_degree("S(1,1,1,1)"), 4);
        assert_eq!(scroll_type_degree("S(2)"), 2);
    }
}
