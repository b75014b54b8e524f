//! Moduli analysis: assemble the defining ideal of the affine-normalized
//! realization space of one portrait or a pair (q1 = 0, q2 = 1), discard
//! degenerate loci by saturation, and report emptiness, dimension, and
//! degree.
//!
//! The normalization kills the affine action, so dimensions here are moduli
//! dimensions: -1 (empty) up to d-1.

use crate::combinat::{canonical_pair, obstruction, Obstruction, Portrait};
use crate::exact::{rat, Rational};
use crate::gb::{
    buchberger, degree_zero_dimensional, dimension, saturate_by_all, GbBudget, GroebnerBasis,
    Ideal,
};
use crate::interp::{conf_ideal, two_image_ideal};
use crate::poly::{MultiPoly, Ring};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::sync::Arc;
use std::time::Instant;

/// Analysis verdict for one moduli space.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ModuliReport {
    pub key: String,
    pub d: i64,
    #[serde(
        serialize_with = "ser_obstruction",
        deserialize_with = "de_obstruction"
    )]
    pub obstruction: Option<Obstruction>,
    pub dim: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub degree: Option<u64>,
    pub fingerprint: Option<String>,
    pub ms: u64,
    #[serde(skip_serializing_if = "std::ops::Not::not", default)]
    pub timeout: bool,
}

fn ser_obstruction<S: serde::Serializer>(
    v: &Option<Obstruction>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match v {
        None => s.serialize_str("none"),
        Some(o) => o.serialize(s),
    }
}

fn de_obstruction<'de, D: serde::Deserializer<'de>>(
    d: D,
) -> std::result::Result<Option<Obstruction>, D::Error> {
    let raw = String::deserialize(d)?;
    match raw.as_str() {
        "none" => Ok(None),
        "interpolation" => Ok(Some(Obstruction::Interpolation)),
        "coincidence" => Ok(Some(Obstruction::Coincidence)),
        "two_image" => Ok(Some(Obstruction::TwoImage)),
        other => Err(serde::de::Error::custom(format!(
            "unknown obstruction `{other}`"
        ))),
    }
}

impl ModuliReport {
    /// Equality ignoring the wall-clock field; used by resume/aggregation
    /// consistency checks.
    pub fn same_result(&self, other: &ModuliReport) -> bool {
        let mut a = self.clone();
        let mut b = other.clone();
        a.ms = 0;
        b.ms = 0;
        a == b
    }
}

/// Knobs for the analysis pipeline.
#[derive(Clone, Copy, Debug)]
pub struct AnalyzeOptions {
    /// Trust combinatorial obstructions and skip the Groebner run for
    /// obstructed pairs. Default off: obstructions are cross-checks.
    pub fast: bool,
    /// Also saturate by the leading coefficients, restricting to exact
    /// degree-d realizations instead of degree at most d.
    pub exact_degree: bool,
    pub budget: GbBudget,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions {
            fast: false,
            exact_degree: false,
            budget: GbBudget::unlimited(),
        }
    }
}

/// Substituted (q1=0, q2=1) and reduced generators for one portrait.
#[derive(Clone, Debug)]
pub struct NormalizedGens {
    pub generators: Vec<MultiPoly>,
    pub leading_coeff: MultiPoly,
}

/// The linear forms that cut out degenerate configurations after the
/// normalization: `q_i`, `q_i - 1` and `q_i - q_j` for the surviving
/// variables q3..qn.
pub fn degeneracy_factors(ring: &Arc<Ring>) -> Vec<MultiPoly> {
    let m = ring.nvars();
    let mut out = vec![];
    for i in 0..m {
        let v = MultiPoly::var(ring.clone(), i);
        out.push(v.clone());
        out.push(v.try_sub(&MultiPoly::one(ring.clone())).unwrap());
    }
    for i in 0..m {
        for j in i + 1..m {
            out.push(
                MultiPoly::var(ring.clone(), i)
                    .try_sub(&MultiPoly::var(ring.clone(), j))
                    .unwrap(),
            );
        }
    }
    out
}

/// Strip any degeneracy factor that exactly divides the polynomial (they are
/// invertible on the normalized configuration space, and all of them are
/// saturated away later, so this only lowers degrees).
fn strip_degeneracy_factors(poly: &MultiPoly) -> MultiPoly {
    if poly.is_zero() {
        return poly.clone();
    }
    let mut out = poly.clone();
    for f in degeneracy_factors(poly.ring()) {
        while let Some(q) = out.div_exact(&f) {
            if q.is_zero() {
                break;
            }
            out = q;
        }
    }
    out.primitive()
}

fn substitution_pattern(n: usize) -> Vec<Option<Rational>> {
    let mut assign = vec![None; n];
    assign[0] = Some(rat(0));
    assign[1] = Some(rat(1));
    assign
}

/// Normalized generators computed directly from the realization ideal.
pub fn normalized_gens(p: &Portrait, d: i64) -> Result<NormalizedGens> {
    if p.n() < 3 {
        return Err(Error::Domain(
            "moduli normalization needs at least 3 points".into(),
        ));
    }
    let ideal = conf_ideal(p, d);
    let assign = substitution_pattern(p.n());
    let generators = ideal
        .generators
        .iter()
        .map(|g| strip_degeneracy_factors(&g.substitute(&assign)))
        .collect();
    let leading_coeff = strip_degeneracy_factors(&ideal.leading_coeff.substitute(&assign));
    Ok(NormalizedGens {
        generators,
        leading_coeff,
    })
}

impl Ring {
    /// The normalized moduli ring Q[q3..qn].
    pub fn q_moduli_ring(n: usize) -> Arc<Ring> {
        Ring::new(
            (3..=n).map(|i| format!("q{i}")).collect(),
            crate::poly::MonomialOrder::DegRevLex,
        )
    }
}

/// The saturated defining ideal of the normalized moduli space of degree-
/// at-most-d realizations of `p` (and of `q` when given).
///
/// Generators are the substituted interpolation numerators; the result is
/// saturated by every degeneracy factor, and additionally by both leading
/// coefficients when `exact_degree` is set.
pub fn moduli_ideal(
    p: &Portrait,
    q: Option<&Portrait>,
    d: i64,
    exact_degree: bool,
    budget: &GbBudget,
) -> Result<Ideal> {
    if let Some(q) = q {
        if q.n() != p.n() {
            return Err(Error::SizeMismatch(p.n(), q.n()));
        }
    }
    let n = p.n();
    let ring = Ring::q_moduli_ring(n);
    let first = normalized_gens(p, d)?;
    let mut gens = first.generators.clone();
    let mut leadings = vec![first.leading_coeff.clone()];
    if let Some(q) = q {
        let second = normalized_gens(q, d)?;
        gens.extend(second.generators.clone());
        leadings.push(second.leading_coeff.clone());
    }
    let gens = gens.into_iter().map(|g| g.with_ring(ring.clone())).collect();
    let ideal = Ideal::new(ring.clone(), gens);
    let mut factors = degeneracy_factors(&ring);
    if exact_degree {
        factors.extend(leadings.into_iter().map(|l| l.with_ring(ring.clone())));
    }
    saturate_by_all(&ideal, &factors, budget)
}

/// Saturated ideal built from precomputed normalized generators.
fn moduli_ideal_from_gens(
    n: usize,
    gens: Vec<MultiPoly>,
    budget: &GbBudget,
) -> Result<Ideal> {
    let ring = Ring::q_moduli_ring(n);
    let gens = gens.into_iter().map(|g| g.with_ring(ring.clone())).collect();
    let ideal = Ideal::new(ring.clone(), gens);
    let factors = degeneracy_factors(&ring);
    saturate_by_all(&ideal, &factors, budget)
}

// ---- graph model ----
//
// Eliminating the interpolating polynomial produces cleared numerators of
// degree up to 1 + (n-1-k) + C(n-1,2), which chokes Buchberger for
// near-injective portraits. The graph model keeps the polynomial's
// coefficients as variables instead: realizations of the pair correspond
// bijectively to points of
//   { (q, f, g) : f(q_i) = q_{P(i)}, g(q_i) = q_{Q(i)} },
// and for d <= n-1 the projection to q-space is an isomorphism onto the
// realization space (the interpolant is unique), so dimension and the
// degree of the zero-dimensional case transfer. Generators have degree at
// most d+1, which keeps the Groebner runs small. The q-side route above is
// retained as the independent oracle; the two must agree.

/// The joint ring `Q[q3..qn, a1..a_{d-1}(, b1..b_{d-1})]`.
fn graph_ring(n: usize, d: i64, pair: bool) -> Arc<Ring> {
    let mut vars: Vec<String> = (3..=n).map(|i| format!("q{i}")).collect();
    for k in 1..d {
        vars.push(format!("a{k}"));
    }
    if pair {
        for k in 1..d {
            vars.push(format!("b{k}"));
        }
    }
    Ring::new(vars, crate::poly::MonomialOrder::DegRevLex)
}

/// `q_{idx}` as an element of the joint ring: 0, 1, or the matching variable.
fn point_expr(ring: &Arc<Ring>, idx: usize) -> MultiPoly {
    match idx {
        1 => MultiPoly::zero(ring.clone()),
        2 => MultiPoly::one(ring.clone()),
        _ => MultiPoly::var(ring.clone(), idx - 3),
    }
}

/// Interpolation conditions for one portrait in the joint ring.
///
/// With c_0 pinned by `f(0) = q_{P(1)}` and the leading coefficient solved
/// from `f(1) = q_{P(2)}`, each remaining point contributes
/// `sum_k c_k (q_i^k - q_i^d) + (y2 - y1) q_i^d + y1 - q_{P(i)} = 0`.
fn graph_equations(p: &Portrait, d: i64, ring: &Arc<Ring>, coeff_base: usize) -> Vec<MultiPoly> {
    let n = p.n();
    let d = d as usize;
    let y1 = point_expr(ring, p.apply(1));
    let y2 = point_expr(ring, p.apply(2));
    let mut lead = y2.try_sub(&y1).unwrap();
    for k in 1..d {
        lead = lead
            .try_sub(&MultiPoly::var(ring.clone(), coeff_base + k - 1))
            .unwrap();
    }
    (3..=n)
        .map(|i| {
            let qi = point_expr(ring, i);
            let mut acc = y1.clone();
            let mut qi_pow = qi.clone();
            for k in 1..d {
                let c_k = MultiPoly::var(ring.clone(), coeff_base + k - 1);
                acc = acc.try_add(&c_k.try_mul(&qi_pow).unwrap()).unwrap();
                qi_pow = qi_pow.try_mul(&qi).unwrap();
            }
            // qi_pow is now q_i^d
            acc = acc.try_add(&lead.try_mul(&qi_pow).unwrap()).unwrap();
            acc.try_sub(&point_expr(ring, p.apply(i))).unwrap()
        })
        .collect()
}


/// Unsaturated graph ideal plus its saturation factors; probe/bench helper.
#[doc(hidden)]
pub fn graph_ideal_parts_for_probe(
    p: &Portrait,
    q: &Portrait,
    d: i64,
) -> Result<(Ideal, Vec<MultiPoly>)> {
    let n = p.n();
    let ring = graph_ring(n, d, true);
    let m = n - 2;
    let mut gens = graph_equations(p, d, &ring, m);
    gens.extend(graph_equations(q, d, &ring, m + (d as usize - 1)));
    let ideal = Ideal::new(ring.clone(), gens);
    let mut factors: Vec<MultiPoly> = vec![];
    for i in 0..m {
        let v = MultiPoly::var(ring.clone(), i);
        factors.push(v.clone());
        factors.push(v.try_sub(&MultiPoly::one(ring.clone())).unwrap());
    }
    for i in 0..m {
        for j in i + 1..m {
            factors.push(
                MultiPoly::var(ring.clone(), i)
                    .try_sub(&MultiPoly::var(ring.clone(), j))
                    .unwrap(),
            );
        }
    }
    Ok((ideal, factors))
}

/// Saturated defining ideal of the moduli space in the graph model;
/// requires `1 <= d <= n-1`.
pub fn graph_moduli_ideal(
    p: &Portrait,
    q: Option<&Portrait>,
    d: i64,
    exact_degree: bool,
    budget: &GbBudget,
) -> Result<Ideal> {
    let n = p.n();
    if n < 3 {
        return Err(Error::Domain(
            "moduli normalization needs at least 3 points".into(),
        ));
    }
    if d < 1 || d as usize > n - 1 {
        return Err(Error::Domain(format!(
            "graph model needs 1 <= d <= n-1, got d={d}, n={n}"
        )));
    }
    if let Some(q) = q {
        if q.n() != n {
            return Err(Error::SizeMismatch(n, q.n()));
        }
    }
    let ring = graph_ring(n, d, q.is_some());
    let m = n - 2;
    let mut gens = graph_equations(p, d, &ring, m);
    let mut leads = vec![];
    if exact_degree {
        let y1 = point_expr(&ring, p.apply(1));
        let y2 = point_expr(&ring, p.apply(2));
        let mut lead = y2.try_sub(&y1).unwrap();
        for k in 1..d as usize {
            lead = lead.try_sub(&MultiPoly::var(ring.clone(), m + k - 1)).unwrap();
        }
        leads.push(lead);
    }
    if let Some(q) = q {
        let base = m + (d as usize - 1);
        gens.extend(graph_equations(q, d, &ring, base));
        if exact_degree {
            let y1 = point_expr(&ring, q.apply(1));
            let y2 = point_expr(&ring, q.apply(2));
            let mut lead = y2.try_sub(&y1).unwrap();
            for k in 1..d as usize {
                lead = lead
                    .try_sub(&MultiPoly::var(ring.clone(), base + k - 1))
                    .unwrap();
            }
            leads.push(lead);
        }
    }
    let ideal = Ideal::new(ring.clone(), gens);
    // degeneracy factors involve only the q-variables
    let mut factors: Vec<MultiPoly> = vec![];
    for i in 0..m {
        let v = MultiPoly::var(ring.clone(), i);
        factors.push(v.clone());
        factors.push(v.try_sub(&MultiPoly::one(ring.clone())).unwrap());
    }
    for i in 0..m {
        for j in i + 1..m {
            factors.push(
                MultiPoly::var(ring.clone(), i)
                    .try_sub(&MultiPoly::var(ring.clone(), j))
                    .unwrap(),
            );
        }
    }
    factors.extend(leads);
    saturate_by_all(&ideal, &factors, budget)
}

/// Reduced Groebner basis of the saturated moduli ideal.
pub fn moduli_groebner(
    p: &Portrait,
    q: Option<&Portrait>,
    d: i64,
    exact_degree: bool,
    budget: &GbBudget,
) -> Result<GroebnerBasis> {
    let ideal = moduli_ideal(p, q, d, exact_degree, budget)?;
    buchberger(&ideal, budget)
}

fn report_from_groebner(
    key: String,
    d: i64,
    obs: Option<Obstruction>,
    gb: &GroebnerBasis,
    started: Instant,
) -> Result<ModuliReport> {
    let dim = dimension(gb);
    let degree = if dim == 0 {
        Some(degree_zero_dimensional(gb)?)
    } else {
        None
    };
    Ok(ModuliReport {
        key,
        d,
        obstruction: obs,
        dim: Some(dim),
        degree,
        fingerprint: Some(gb.fingerprint()),
        ms: started.elapsed().as_millis() as u64,
        timeout: false,
    })
}

fn timeout_report(key: String, d: i64, obs: Option<Obstruction>, started: Instant) -> ModuliReport {
    ModuliReport {
        key,
        d,
        obstruction: obs,
        dim: None,
        degree: None,
        fingerprint: None,
        ms: started.elapsed().as_millis() as u64,
        timeout: true,
    }
}

/// Report for an obstructed pair in fast mode (no Groebner run): the
/// combinatorial theorems force emptiness.
fn trusted_empty_report(key: String, d: i64, obs: Obstruction, started: Instant) -> ModuliReport {
    ModuliReport {
        key,
        d,
        obstruction: Some(obs),
        dim: Some(-1),
        degree: None,
        fingerprint: None,
        ms: started.elapsed().as_millis() as u64,
        timeout: false,
    }
}

/// Saturated Groebner basis of the production route: the graph model when it
/// applies (1 <= d <= n-1), else the eliminated q-side model.
fn production_groebner(
    p: &Portrait,
    q: Option<&Portrait>,
    d: i64,
    exact_degree: bool,
    budget: &GbBudget,
) -> Result<GroebnerBasis> {
    let ideal = if d >= 1 && (d as usize) <= p.n() - 1 {
        graph_moduli_ideal(p, q, d, exact_degree, budget)?
    } else {
        moduli_ideal(p, q, d, exact_degree, budget)?
    };
    buchberger(&ideal, budget)
}

/// Full analysis of one portrait pair: obstruction detection first, then
/// (unless `fast` short-circuits an obstructed pair) the Groebner analysis.
pub fn analyze_pair(
    p: &Portrait,
    q: &Portrait,
    d: i64,
    opts: &AnalyzeOptions,
) -> Result<ModuliReport> {
    let key = canonical_pair(p, q)?.canonical_key;
    analyze_pair_with_key(key, p, q, d, opts)
}

/// Pair analysis with a precomputed canonical key (the survey driver already
/// has it).
pub fn analyze_pair_with_key(
    key: String,
    p: &Portrait,
    q: &Portrait,
    d: i64,
    opts: &AnalyzeOptions,
) -> Result<ModuliReport> {
    let started = Instant::now();
    let obs = obstruction(p, q, d)?;
    if opts.fast {
        if let Some(o) = obs {
            return Ok(trusted_empty_report(key, d, o, started));
        }
    }
    match production_groebner(p, Some(q), d, opts.exact_degree, &opts.budget) {
        Ok(gb) => report_from_groebner(key, d, obs, &gb, started),
        Err(Error::Timeout(_)) => Ok(timeout_report(key, d, obs, started)),
        Err(e) => Err(e),
    }
}

/// Analysis of the single-portrait moduli space.
pub fn analyze_single(p: &Portrait, d: i64, opts: &AnalyzeOptions) -> Result<ModuliReport> {
    let started = Instant::now();
    let key = p.to_string();
    match production_groebner(p, None, d, opts.exact_degree, &opts.budget) {
        Ok(gb) => report_from_groebner(key, d, None, &gb, started),
        Err(Error::Timeout(_)) => Ok(timeout_report(key, d, None, started)),
        Err(e) => Err(e),
    }
}

/// Oracle-route analysis on the eliminated q-side model (the construction
/// whose ideal lives in Q[q3..qn]); used to cross-validate the graph model.
pub fn analyze_pair_eliminated(
    p: &Portrait,
    q: &Portrait,
    d: i64,
    opts: &AnalyzeOptions,
) -> Result<ModuliReport> {
    let started = Instant::now();
    let key = canonical_pair(p, q)?.canonical_key;
    let obs = obstruction(p, q, d)?;
    match moduli_groebner(p, Some(q), d, opts.exact_degree, &opts.budget) {
        Ok(gb) => report_from_groebner(key, d, obs, &gb, started),
        Err(Error::Timeout(_)) => Ok(timeout_report(key, d, obs, started)),
        Err(e) => Err(e),
    }
}

/// Analysis of the two-image space of a partition `{A,B}` of `[2d]`,
/// together with the number `2d(2d-1)` of two-image portraits sharing it.
pub fn two_image_analyze(
    a: &[u8],
    b: &[u8],
    opts: &AnalyzeOptions,
) -> Result<(ModuliReport, u64)> {
    let started = Instant::now();
    let d = a.len() as i64;
    let gens = two_image_ideal(a, b)?;
    let n = 2 * a.len();
    let portrait_count = (2 * d * (2 * d - 1)) as u64;
    let fmt_part = |part: &[u8]| {
        part.iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(",")
    };
    let key = format!("two-image:{}:{}", fmt_part(a), fmt_part(b));
    if n < 3 {
        // d=1: no equations and no surviving variables; a single point
        return Ok((
            ModuliReport {
                key,
                d,
                obstruction: None,
                dim: Some(0),
                degree: Some(1),
                fingerprint: None,
                ms: started.elapsed().as_millis() as u64,
                timeout: false,
            },
            portrait_count,
        ));
    }
    let assign = substitution_pattern(n);
    let substituted: Vec<MultiPoly> = gens
        .iter()
        .map(|g| strip_degeneracy_factors(&g.substitute(&assign)))
        .collect();
    match moduli_ideal_from_gens(n, substituted, &opts.budget)
        .and_then(|ideal| buchberger(&ideal, &opts.budget))
    {
        Ok(gb) => Ok((report_from_groebner(key, d, None, &gb, started)?, portrait_count)),
        Err(Error::Timeout(_)) => Ok((timeout_report(key, d, None, started), portrait_count)),
        Err(e) => Err(e),
    }
}

/// Reduced Groebner basis of the saturated two-image ideal (for coherence
/// checks against per-portrait moduli bases).
pub fn two_image_groebner(a: &[u8], b: &[u8], budget: &GbBudget) -> Result<GroebnerBasis> {
    let gens = two_image_ideal(a, b)?;
    let n = 2 * a.len();
    let assign = substitution_pattern(n);
    let substituted: Vec<MultiPoly> = gens
        .iter()
        .map(|g| strip_degeneracy_factors(&g.substitute(&assign)))
        .collect();
    let ideal = moduli_ideal_from_gens(n, substituted, budget)?;
    buchberger(&ideal, budget)
}

/// Extract the unique rational point of a dim-0 degree-1 moduli basis:
/// every variable must reduce to a constant modulo the basis.
pub fn rational_point_of(gb: &GroebnerBasis) -> Option<Vec<Rational>> {
    let ring = gb.ring().clone();
    let mut point = vec![];
    for v in 0..ring.nvars() {
        let nf = crate::gb::normal_form(&MultiPoly::var(ring.clone(), v), gb.basis());
        if !nf.is_constant() {
            return None;
        }
        point.push(
            nf.terms()
                .first()
                .map(|(_, c)| c.clone())
                .unwrap_or_else(|| rat(0)),
        );
    }
    Some(point)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Portrait {
        Portrait::parse(s).unwrap()
    }

    fn opts() -> AnalyzeOptions {
        AnalyzeOptions::default()
    }

    // Worked example: P with two fixed points and two tails, against three
    // partners, hits dimensions -1, 0, 1.
    #[test]
    fn worked_example_three_dimensions() {
        let base = p("1,2,2,1");
        let q1 = p("1,2,1,2");
        let q2 = p("1,1,2,4");
        let q3 = p("2,1,1,2");

        let r1 = analyze_pair(&base, &q1, 2, &opts()).unwrap();
        assert_eq!(r1.dim, Some(-1));
        assert_eq!(r1.obstruction, Some(Obstruction::TwoImage));

        let r2 = analyze_pair(&base, &q2, 2, &opts()).unwrap();
        assert_eq!(r2.dim, Some(0));
        assert_eq!(r2.degree, Some(1));
        assert_eq!(r2.obstruction, None);

        let r3 = analyze_pair(&base, &q3, 2, &opts()).unwrap();
        assert_eq!(r3.dim, Some(1));
        assert_eq!(r3.obstruction, None);
    }

    #[test]
    fn worked_example_rational_point() {
        // the unique point of the (P, Q2) moduli space is (q3,q4) = (2,3)
        let gb = moduli_groebner(
            &p("1,2,2,1"),
            Some(&p("1,1,2,4")),
            2,
            false,
            &GbBudget::unlimited(),
        )
        .unwrap();
        assert_eq!(dimension(&gb), 0);
        let point = rational_point_of(&gb).unwrap();
        assert_eq!(point, vec![rat(2), rat(3)]);
    }

    #[test]
    fn portrait_example_pair_is_realizable() {
        // q = (0,1,2,3) realizes this pair in degree 2, so the space is
        // nonempty
        let r = analyze_pair(&p("1,1,2,4"), &p("1,3,3,1"), 2, &opts()).unwrap();
        assert!(r.dim.unwrap() >= 0);
    }

    #[test]
    fn two_image_line_for_d2() {
        // partition {{1,2},{3,4}}: the moduli space is the line q3+q4 = 1
        let ideal = moduli_ideal(&p("3,3,4,4"), None, 2, false, &GbBudget::unlimited()).unwrap();
        let gb = buchberger(&ideal, &GbBudget::unlimited()).unwrap();
        assert_eq!(gb.canonical_text(), "q3 + q4 - 1");
        assert_eq!(dimension(&gb), 1);
        // identical to the two-image ideal's saturated basis
        let tgb = two_image_groebner(&[1, 2], &[3, 4], &GbBudget::unlimited()).unwrap();
        assert_eq!(gb.canonical_text(), tgb.canonical_text());
    }

    #[test]
    fn two_image_analyze_dimensions() {
        let (r2, count2) = two_image_analyze(&[1, 2], &[3, 4], &opts()).unwrap();
        assert_eq!(r2.dim, Some(1));
        assert_eq!(count2, 12);
        let (r3, count3) = two_image_analyze(&[1, 2, 3], &[4, 5, 6], &opts()).unwrap();
        assert_eq!(r3.dim, Some(2));
        assert_eq!(count3, 30);
        let (r1, count1) = two_image_analyze(&[1], &[2], &opts()).unwrap();
        assert_eq!(r1.dim, Some(0));
        assert_eq!(count1, 2);
    }

    #[test]
    fn diagonal_pair_has_maximal_dimension() {
        // p = q admissible on n = 2d points: dim = d - 1
        let r = analyze_pair(&p("1,1,2,4"), &p("1,1,2,4"), 2, &opts()).unwrap();
        assert_eq!(r.dim, Some(1));
    }

    #[test]
    fn graph_route_agrees_with_eliminated_route() {
        let pairs = [
            ("1,2,2,1", "1,2,1,2"),
            ("1,2,2,1", "1,1,2,4"),
            ("1,2,2,1", "2,1,1,2"),
            ("1,1,2,4", "1,3,3,1"),
            ("3,3,4,4", "4,4,3,3"),
            ("1,1,2,3", "2,2,1,1"),
        ];
        for (a, b) in pairs {
            let (a, b) = (p(a), p(b));
            let graph = analyze_pair(&a, &b, 2, &opts()).unwrap();
            let elim = analyze_pair_eliminated(&a, &b, 2, &opts()).unwrap();
            assert_eq!(graph.dim, elim.dim, "{a}|{b}");
            assert_eq!(graph.degree, elim.degree, "{a}|{b}");
        }
    }

    #[test]
    fn relabeling_invariance_of_analysis() {
        let a = p("1,1,2,4");
        let b = p("1,3,3,1");
        let base = analyze_pair(&a, &b, 2, &opts()).unwrap();
        for sigma in crate::combinat::all_permutations(4).into_iter().step_by(7) {
            let r = analyze_pair(&a.relabel(&sigma), &b.relabel(&sigma), 2, &opts()).unwrap();
            // dim, degree and the canonical key are invariants; the
            // fingerprint is not (the normalization pins different points)
            assert_eq!(r.dim, base.dim);
            assert_eq!(r.degree, base.degree);
            assert_eq!(r.key, base.key);
        }
    }

    #[test]
    fn fast_mode_trusts_obstructions() {
        let r = analyze_pair(
            &p("1,2,2,1"),
            &p("1,2,1,2"),
            2,
            &AnalyzeOptions {
                fast: true,
                ..opts()
            },
        )
        .unwrap();
        assert_eq!(r.dim, Some(-1));
        assert!(r.fingerprint.is_none());
    }

    #[test]
    fn report_round_trips_through_json() {
        let r = analyze_pair(&p("1,2,2,1"), &p("1,1,2,4"), 2, &opts()).unwrap();
        let line = serde_json::to_string(&r).unwrap();
        let back: ModuliReport = serde_json::from_str(&line).unwrap();
        assert_eq!(back, r);
        assert!(line.contains("\"obstruction\":\"none\""));
    }

    #[test]
    fn single_portrait_bound() {
        // admissible non-identity portraits on n <= 2d points: dim = d-1
        for s in ["1,1,2,4", "3,3,4,4", "1,2,2,1"] {
            let r = analyze_single(&p(s), 2, &opts()).unwrap();
            assert_eq!(r.dim, Some(1), "portrait {s}");
        }
    }

    #[test]
    fn budget_timeout_is_flagged() {
        let r = analyze_pair(
            &p("1,1,2,4"),
            &p("1,3,3,1"),
            2,
            &AnalyzeOptions {
                budget: GbBudget::millis(0),
                ..opts()
            },
        )
        .unwrap();
        assert!(r.timeout);
        assert_eq!(r.dim, None);
    }
}
