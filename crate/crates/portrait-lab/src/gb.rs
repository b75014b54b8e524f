//! Exact Groebner engine: Buchberger's algorithm with the normal selection
//! strategy and both classical pair criteria, normal forms, saturation by the
//! added-variable method, Krull dimension, and degree of zero-dimensional
//! ideals.
//!
//! Coefficients are exact rationals; every polynomial entering or leaving the
//! engine is content-stripped, and reduced bases are monic, so output is
//! deterministic and safe to fingerprint.

use crate::poly::{Monomial, MonomialOrder, MultiPoly, Ring};
use crate::{Error, Result};
use std::sync::Arc;
use std::time::Instant;

/// Wall-clock cap for a single Groebner computation.
#[derive(Clone, Copy, Debug, Default)]
pub struct GbBudget {
    deadline_ms: Option<u64>,
}

impl GbBudget {
    pub fn unlimited() -> Self {
        GbBudget { deadline_ms: None }
    }

    pub fn millis(ms: u64) -> Self {
        GbBudget {
            deadline_ms: Some(ms),
        }
    }

    /// Reads `PORTRAIT_LAB_BUDGET_MS`; unset or unparsable means unlimited.
    pub fn from_env() -> Self {
        match std::env::var("PORTRAIT_LAB_BUDGET_MS")
            .ok()
            .and_then(|v| v.parse::<u64>().ok())
        {
            Some(ms) => Self::millis(ms),
            None => Self::unlimited(),
        }
    }

    fn start(&self) -> BudgetClock {
        BudgetClock {
            started: Instant::now(),
            limit_ms: self.deadline_ms,
        }
    }
}

struct BudgetClock {
    started: Instant,
    limit_ms: Option<u64>,
}

impl BudgetClock {
    fn check(&self) -> Result<()> {
        if let Some(ms) = self.limit_ms {
            if self.started.elapsed().as_millis() as u64 >= ms {
                return Err(Error::Timeout(ms));
            }
        }
        Ok(())
    }
}

/// A finite generating set; generators are stored nonzero and
/// content-stripped.
#[derive(Clone, Debug)]
pub struct Ideal {
    ring: Arc<Ring>,
    generators: Vec<MultiPoly>,
}

impl Ideal {
    pub fn new(ring: Arc<Ring>, generators: Vec<MultiPoly>) -> Self {
        let generators = generators
            .into_iter()
            .filter(|g| !g.is_zero())
            .map(|g| g.primitive())
            .collect();
        Ideal { ring, generators }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn generators(&self) -> &[MultiPoly] {
        &self.generators
    }

    /// Same generators under a different monomial order.
    pub fn with_order(&self, order: MonomialOrder) -> Ideal {
        let ring = Ring::new(self.ring.vars.clone(), order);
        Ideal {
            ring: ring.clone(),
            generators: self
                .generators
                .iter()
                .map(|g| g.with_ring(ring.clone()))
                .collect(),
        }
    }
}

/// A reduced Groebner basis: monic elements, no leading term divides another,
/// tails fully reduced, sorted descending by leading monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    ring: Arc<Ring>,
    basis: Vec<MultiPoly>,
}

impl GroebnerBasis {
    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn basis(&self) -> &[MultiPoly] {
        &self.basis
    }

    pub fn order(&self) -> MonomialOrder {
        self.ring.order
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.basis.len() == 1 && self.basis[0].is_constant() && !self.basis[0].is_zero()
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.basis.is_empty()
    }

    /// Deterministic serialization, one generator per line.
    pub fn canonical_text(&self) -> String {
        self.basis
            .iter()
            .map(|g| g.to_string())
            .collect::<Vec<_>>()
            .join("\n")
    }

    /// FNV-1a hash of the canonical serialization, as fixed-width hex.
    pub fn fingerprint(&self) -> String {
        let mut h: u64 = 0xcbf29ce484222325;
        for b in self.canonical_text().bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x100000001b3);
        }
        format!("{h:016x}")
    }
}

fn s_polynomial(f: &MultiPoly, g: &MultiPoly) -> MultiPoly {
    let (lmf, lcf) = f.leading().expect("nonzero");
    let (lmg, lcg) = g.leading().expect("nonzero");
    let lcm = lmf.lcm(lmg);
    let mf = lmf.div_into(&lcm);
    let mg = lmg.div_into(&lcm);
    let a = f.mul_term(&mf, &lcf.recip());
    let b = g.mul_term(&mg, &lcg.recip());
    a.try_sub(&b).unwrap()
}

/// Working polynomial for division: terms indexed by an order-respecting
/// key so that one reduction step touches only the reducer's terms instead
/// of rebuilding the whole polynomial.
struct WorkPoly {
    map: std::collections::BTreeMap<Vec<u16>, (Monomial, crate::exact::Rational)>,
    order: MonomialOrder,
    nvars: usize,
}

impl WorkPoly {
    /// Key whose natural lexicographic order equals the monomial order.
    fn key(order: MonomialOrder, m: &Monomial) -> Vec<u16> {
        match order {
            MonomialOrder::Lex => m.0.clone(),
            MonomialOrder::DegRevLex => {
                let mut k = Vec::with_capacity(m.0.len() + 2);
                let deg = m.total_degree();
                k.push((deg >> 16) as u16);
                k.push(deg as u16);
                k.extend(m.0.iter().rev().map(|&e| u16::MAX - e));
                k
            }
            MonomialOrder::ElimFirst => {
                let mut k = Vec::with_capacity(m.0.len() + 2);
                k.push(m.0[0]);
                let deg: u32 = m.0[1..].iter().map(|&e| e as u32).sum();
                k.push((deg >> 16) as u16);
                k.push(deg as u16);
                k.extend(m.0[1..].iter().rev().map(|&e| u16::MAX - e));
                k
            }
        }
    }

    fn from_poly(p: &MultiPoly) -> Self {
        let order = p.ring().order;
        let nvars = p.ring().nvars();
        let map = p
            .terms()
            .iter()
            .map(|(m, c)| (Self::key(order, m), (m.clone(), c.clone())))
            .collect();
        WorkPoly { map, order, nvars }
    }

    fn leading(&self) -> Option<(&Monomial, &crate::exact::Rational)> {
        self.map.last_key_value().map(|(_, (m, c))| (m, c))
    }

    fn pop_leading(&mut self) -> Option<(Monomial, crate::exact::Rational)> {
        self.map.pop_last().map(|(_, mc)| mc)
    }

    /// self += c * mono * g
    fn axpy(&mut self, c: &crate::exact::Rational, mono: &Monomial, g: &MultiPoly) {
        use num_traits::Zero;
        for (gm, gc) in g.terms() {
            let m = gm.mul(mono);
            let add = gc * c;
            let key = Self::key(self.order, &m);
            match self.map.entry(key) {
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    let sum = &e.get().1 + &add;
                    if sum.is_zero() {
                        e.remove();
                    } else {
                        e.get_mut().1 = sum;
                    }
                }
                std::collections::btree_map::Entry::Vacant(e) => {
                    if !add.is_zero() {
                        e.insert((m, add));
                    }
                }
            }
        }
    }

    /// Divide all coefficients by their common rational content to keep
    /// numerators and denominators small during long reductions.
    fn strip_content(&mut self) {
        use num_traits::Zero;
        if self.map.is_empty() {
            return;
        }
        let coeffs: Vec<crate::exact::Rational> =
            self.map.values().map(|(_, c)| c.clone()).collect();
        if let Some(ints) = crate::exact::primitive_part(&coeffs) {
            for (slot, v) in self.map.values_mut().zip(ints) {
                slot.1 = crate::exact::Rational::from_integer(v);
            }
            debug_assert!(!self.map.values().any(|(_, c)| c.is_zero()));
        }
    }

    fn into_poly(self, ring: &std::sync::Arc<Ring>) -> MultiPoly {
        debug_assert_eq!(self.nvars, ring.nvars());
        MultiPoly::from_terms(ring.clone(), self.map.into_values().collect())
    }
}

/// Fully reduce `f` modulo `basis`: no term of the result is divisible by any
/// leading monomial. Zero iff `f` lies in the ideal when `basis` is a
/// Groebner basis.
pub fn normal_form(f: &MultiPoly, basis: &[MultiPoly]) -> MultiPoly {
    let lms: Vec<Monomial> = basis
        .iter()
        .map(|g| g.leading().expect("basis elements are nonzero").0.clone())
        .collect();
    let sugars: Vec<u32> = basis.iter().map(|g| g.total_degree()).collect();
    let active = vec![true; basis.len()];
    let clock = GbBudget::unlimited().start();
    reduce_work(
        f.clone(),
        f.total_degree(),
        basis,
        &lms,
        &sugars,
        &active,
        true,
        &clock,
    )
    .expect("unlimited budget cannot time out")
    .0
}

/// Reduce against the active basis: cancel the head while it is divisible by
/// an active leading monomial, preferring reducers that keep the sugar
/// degree low and are short; with `full` also reduce the tail. Returns the
/// (unnormalized) remainder and its sugar degree.
fn reduce_work(
    work: MultiPoly,
    sugar: u32,
    basis: &[MultiPoly],
    lms: &[Monomial],
    sugars: &[u32],
    active: &[bool],
    full: bool,
    clock: &BudgetClock,
) -> Result<(MultiPoly, u32)> {
    let ring = work.ring().clone();
    let mut wp = WorkPoly::from_poly(&work);
    let mut rem: Vec<(Monomial, crate::exact::Rational)> = vec![];
    let mut steps = 0usize;
    let mut sugar = sugar;
    loop {
        let Some((lm, lc)) = wp.leading().map(|(m, c)| (m.clone(), c.clone())) else {
            break;
        };
        let reducer = (0..basis.len())
            .filter(|&gi| active[gi] && lms[gi].divides(&lm))
            .min_by_key(|&gi| {
                let shift = lm.total_degree() - lms[gi].total_degree();
                (sugars[gi] + shift, basis[gi].terms().len())
            });
        match reducer {
            Some(gi) => {
                let gc = basis[gi].leading().unwrap().1.clone();
                let coef = -(&lc / &gc);
                wp.axpy(&coef, &lms[gi].div_into(&lm), &basis[gi]);
                sugar = sugar.max(sugars[gi] + lm.total_degree() - lms[gi].total_degree());
                steps += 1;
                if steps % 64 == 0 {
                    clock.check()?;
                    wp.strip_content();
                }
            }
            None => {
                if !full {
                    break;
                }
                rem.push(wp.pop_leading().unwrap());
            }
        }
    }
    let out = if full {
        MultiPoly::from_terms(ring, rem)
    } else {
        wp.into_poly(&ring)
    };
    Ok((out, sugar))
}

/// Cross-multiplied S-polynomial; integral for integral inputs.
fn s_polynomial_int(f: &MultiPoly, g: &MultiPoly) -> MultiPoly {
    let (lmf, lcf) = f.leading().expect("nonzero");
    let (lmg, lcg) = g.leading().expect("nonzero");
    let lcm = lmf.lcm(lmg);
    let a = f.mul_term(&lmf.div_into(&lcm), lcg);
    let b = g.mul_term(&lmg.div_into(&lcm), lcf);
    a.try_sub(&b).unwrap()
}

/// Buchberger's algorithm: normal pair selection (minimal lcm degree first,
/// deterministic tie-break) with Gebauer-Moller pair pruning, top-reduction
/// in the main loop, and full auto-reduction at the end. Returns the unique
/// reduced Groebner basis.
pub fn buchberger(ideal: &Ideal, budget: &GbBudget) -> Result<GroebnerBasis> {
    use std::collections::BTreeSet;
    let ring = ideal.ring().clone();
    let clock = budget.start();
    let mut basis: Vec<MultiPoly> = ideal.generators.clone();
    basis.retain(|g| !g.is_zero());
    let mut lms: Vec<Monomial> = basis.iter().map(|g| g.leading().unwrap().0.clone()).collect();

    // pending pairs keyed for deterministic minimal-sugar-first processing
    type PairKey = (u32, u32, Vec<u16>, usize, usize);
    let mut pending: BTreeSet<PairKey> = BTreeSet::new();

    // sugar of the S-pair (i, j)
    let pair_sugar = |i: usize, j: usize, lms: &[Monomial], sugars: &[u32]| {
        let lcm = lms[i].lcm(&lms[j]);
        let si = sugars[i] + lcm.total_degree() - lms[i].total_degree();
        let sj = sugars[j] + lcm.total_degree() - lms[j].total_degree();
        si.max(sj)
    };

    // Gebauer-Moller update: install pairs (i, t) for a new element t,
    // pruning dominated lcms, duplicate lcms, and coprime pairs, and drop
    // old pairs whose lcm is strictly covered by the new leading monomial.
    let install = |t: usize,
                   lms: &[Monomial],
                   sugars: &[u32],
                   pending: &mut BTreeSet<PairKey>| {
        let lm_t = &lms[t];
        // drop old pairs (i,j) with lm_t | lcm(i,j), lcm(i,t) != lcm(i,j),
        // lcm(j,t) != lcm(i,j)
        let stale: Vec<PairKey> = pending
            .iter()
            .filter(|(_, _, lcm_e, i, j)| {
                let lcm_ij = Monomial(lcm_e.clone());
                lm_t.divides(&lcm_ij)
                    && lms[*i].lcm(lm_t) != lcm_ij
                    && lms[*j].lcm(lm_t) != lcm_ij
            })
            .cloned()
            .collect();
        for k in stale {
            pending.remove(&k);
        }
        // candidate new pairs, minimal lcms only
        let lcms: Vec<Monomial> = (0..t).map(|i| lms[i].lcm(lm_t)).collect();
        let mut keep: Vec<usize> = vec![];
        'cand: for i in 0..t {
            for j in 0..t {
                if j == i {
                    continue;
                }
                let strictly_smaller = lcms[j].divides(&lcms[i]) && lcms[j] != lcms[i];
                let duplicate_earlier = j < i && lcms[j] == lcms[i];
                if strictly_smaller || duplicate_earlier {
                    continue 'cand;
                }
            }
            keep.push(i);
        }
        for i in keep {
            if !lms[i].coprime(lm_t) {
                pending.insert((
                    pair_sugar(i, t, lms, sugars),
                    lcms[i].total_degree(),
                    lcms[i].0.clone(),
                    i,
                    t,
                ));
            }
        }
    };

    let mut sugars: Vec<u32> = basis.iter().map(|g| g.total_degree()).collect();

    // interreduce the inputs: fully reduce each against the others
    let mut active: Vec<bool> = vec![true; basis.len()];
    for idx in 0..basis.len() {
        active[idx] = false;
        let (r, s) = reduce_work(
            basis[idx].clone(),
            sugars[idx],
            &basis,
            &lms,
            &sugars,
            &active,
            true,
            &clock,
        )?;
        if r.is_zero() {
            continue;
        }
        let r = r.primitive();
        lms[idx] = r.leading().unwrap().0.clone();
        basis[idx] = r;
        sugars[idx] = s;
        active[idx] = true;
    }
    let keep: Vec<usize> = (0..basis.len()).filter(|&i| active[i]).collect();
    basis = keep.iter().map(|&i| basis[i].clone()).collect();
    lms = keep.iter().map(|&i| lms[i].clone()).collect();
    sugars = keep.iter().map(|&i| sugars[i]).collect();
    let mut active = vec![true; basis.len()];

    for t in 1..basis.len() {
        install(t, &lms, &sugars, &mut pending);
    }

    let trace = std::env::var("PORTRAIT_LAB_GB_TRACE").is_ok();
    let mut processed = 0usize;
    let mut zero_reductions = 0usize;
    while let Some(key) = pending.pop_first() {
        clock.check()?;
        let (pair_s, _, _, i, j) = key;
        let s = s_polynomial_int(&basis[i], &basis[j]);
        // full reduction keeps new basis elements short
        let (r, r_sugar) = reduce_work(s, pair_s, &basis, &lms, &sugars, &active, true, &clock)?;
        processed += 1;
        if r.is_zero() {
            zero_reductions += 1;
        }
        if trace && processed % 25 == 0 {
            let maxterms = basis.iter().map(|g| g.terms().len()).max().unwrap_or(0);
            let maxbits = basis
                .iter()
                .flat_map(|g| g.terms().iter().map(|(_, c)| c.numer().bits()))
                .max()
                .unwrap_or(0);
            eprintln!(
                "[gb] pairs={processed} zero={zero_reductions} basis={} pending={} maxterms={maxterms} maxbits={maxbits} sugar={}",
                basis.len(),
                pending.len(),
                pair_s
            );
        }
        if r.is_zero() {
            continue;
        }
        let r = r.primitive();
        let lm_new = r.leading().unwrap().0.clone();
        // older elements whose leading monomial the new one divides stop
        // acting as reducers and spawn no further pairs
        for t in 0..basis.len() {
            if active[t] && lm_new.divides(&lms[t]) {
                active[t] = false;
            }
        }
        lms.push(lm_new);
        basis.push(r);
        sugars.push(r_sugar);
        active.push(true);
        install(basis.len() - 1, &lms, &sugars, &mut pending);
    }

    let survivors: Vec<MultiPoly> = (0..basis.len())
        .filter(|&i| active[i])
        .map(|i| basis[i].clone())
        .collect();
    Ok(reduce_basis(ring, survivors))
}

fn sorted(a: usize, b: usize) -> (usize, usize) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Minimalize and tail-reduce a Groebner basis; monic output, sorted
/// descending by leading monomial.
fn reduce_basis(ring: Arc<Ring>, mut basis: Vec<MultiPoly>) -> GroebnerBasis {
    let order = ring.order;
    basis.retain(|g| !g.is_zero());
    // minimalize: drop any element whose leading monomial is divisible by
    // another's
    basis.sort_by(|a, b| order.cmp(&a.leading().unwrap().0, &b.leading().unwrap().0));
    let mut minimal: Vec<MultiPoly> = vec![];
    for g in basis {
        let lm = g.leading().unwrap().0.clone();
        if !minimal
            .iter()
            .any(|h| h.leading().unwrap().0.divides(&lm))
        {
            minimal.push(g);
        }
    }
    // tail-reduce each element against the others until stable
    loop {
        let mut changed = false;
        for idx in 0..minimal.len() {
            let others: Vec<MultiPoly> = minimal
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != idx)
                .map(|(_, h)| h.clone())
                .collect();
            let reduced = normal_form(&minimal[idx], &others).monic();
            if reduced != minimal[idx] {
                minimal[idx] = reduced;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    minimal.retain(|g| !g.is_zero());
    for g in minimal.iter_mut() {
        *g = g.monic();
    }
    minimal.sort_by(|a, b| order.cmp(&b.leading().unwrap().0, &a.leading().unwrap().0));
    GroebnerBasis { ring, basis: minimal }
}

/// Saturate a homogeneous ideal by one homogeneous linear form with unit
/// pivot coefficient, via the revlex trick: move the form into the last
/// variable by a unimodular change of coordinates, compute a degrevlex
/// Groebner basis (degree-true on homogeneous input), divide every element
/// by its power of the last variable, and map back. The divided basis is a
/// Groebner basis of the saturation in the transformed coordinates.
fn saturate_linear_homogeneous(
    gens: Vec<MultiPoly>,
    form: &[i64],
    budget: &GbBudget,
) -> Result<Vec<MultiPoly>> {
    if gens.is_empty() {
        return Ok(gens);
    }
    let ring = gens[0].ring().clone();
    let m = ring.nvars();
    debug_assert_eq!(form.len(), m);
    let pivot = form
        .iter()
        .rposition(|&c| c == 1 || c == -1)
        .expect("factor needs a unit coefficient");
    let sign = form[pivot];

    // Step 1: swap the pivot variable into the last slot.
    let mut perm: Vec<usize> = (0..m).collect();
    perm.swap(pivot, m - 1);
    let swapped: Vec<MultiPoly> = gens.iter().map(|g| g.permute_vars(&perm)).collect();
    let mut c_swapped: Vec<i64> = form.to_vec();
    c_swapped.swap(pivot, m - 1);

    // Step 2: with y_last := sign * form, substitute
    // x_last = y_last - sign * sum_{j<last} c_j y_j  (forward transform);
    // the inverse substitution is x_last -> form-expression again with the
    // roles of the correction sign flipped.
    let correction = |coeffs: &[i64], flip: i64| {
        let mut repl = MultiPoly::var(ring.clone(), m - 1);
        for (j, &c) in coeffs.iter().enumerate().take(m - 1) {
            if c != 0 {
                let term = MultiPoly::var(ring.clone(), j)
                    .scale(&crate::exact::rat(flip * sign * c));
                repl = repl.try_add(&term).unwrap();
            }
        }
        repl
    };
    let forward = correction(&c_swapped, -1);
    let transformed: Vec<MultiPoly> = swapped
        .iter()
        .map(|g| g.substitute_one(m - 1, &forward).primitive())
        .collect();

    // Step 3: homogeneous Groebner basis and division by the last variable.
    let gb = buchberger(&Ideal::new(ring.clone(), transformed), budget)?;
    let divided: Vec<MultiPoly> = gb
        .basis()
        .iter()
        .map(|g| {
            let strip = g.terms().iter().map(|(mo, _)| mo.0[m - 1]).min().unwrap_or(0);
            if strip == 0 {
                g.clone()
            } else {
                MultiPoly::from_terms(
                    ring.clone(),
                    g.terms()
                        .iter()
                        .map(|(mo, c)| {
                            let mut e = mo.0.clone();
                            e[m - 1] -= strip;
                            (Monomial(e), c.clone())
                        })
                        .collect(),
                )
            }
        })
        .collect();

    // Step 4: map back (inverse substitution, then unswap).
    let backward = correction(&c_swapped, 1);
    Ok(divided
        .into_iter()
        .map(|g| {
            g.substitute_one(m - 1, &backward)
                .permute_vars(&perm)
                .primitive()
        })
        .collect())
}

/// Saturate an affine ideal by a family of affine-linear forms (each with a
/// unit variable coefficient) through the homogeneous pipeline: homogenize,
/// saturate by the hyperplane at infinity and by every form, and come back.
/// Returns the reduced Groebner basis of the fully saturated affine ideal.
pub fn saturate_affine_linear(
    ideal: &Ideal,
    affine_forms: &[Vec<i64>],
    budget: &GbBudget,
) -> Result<GroebnerBasis> {
    let base = ideal.ring().clone();
    assert_eq!(base.order, MonomialOrder::DegRevLex);
    let m = base.nvars();
    let mut vars = base.vars.clone();
    vars.push("h#".to_string());
    let ext = Ring::new(vars, MonomialOrder::DegRevLex);
    let mut gens: Vec<MultiPoly> = ideal
        .generators()
        .iter()
        .map(|g| g.homogenize_into(ext.clone(), m, g.total_degree()))
        .collect();

    // each affine form c0 + sum c_i x_i homogenizes to c0*h + sum c_i x_i
    let mut forms: Vec<Vec<i64>> = vec![];
    // saturate by h first to discard generator-homogenization junk, and by
    // h last so the final basis dehomogenizes into a Groebner basis
    let mut h_form = vec![0i64; m + 1];
    h_form[m] = 1;
    forms.push(h_form.clone());
    forms.extend(affine_forms.iter().map(|f| {
        debug_assert_eq!(f.len(), m + 1, "affine form is [c1..cm, c0]");
        let mut v = f[..m].to_vec();
        v.push(f[m]);
        v
    }));
    forms.push(h_form);

    let trace = std::env::var("PORTRAIT_LAB_GB_TRACE").is_ok();
    for form in &forms {
        if trace {
            let t0 = Instant::now();
            let before: usize = gens.iter().map(|g| g.terms().len()).sum();
            gens = saturate_linear_homogeneous(gens, form, budget)?;
            eprintln!(
                "[sat] form={form:?} {:?} gens={} terms(before)={before} terms(after)={} maxdeg={}",
                t0.elapsed(),
                gens.len(),
                gens.iter().map(|g| g.terms().len()).sum::<usize>(),
                gens.iter().map(|g| g.total_degree()).max().unwrap_or(0)
            );
        } else {
            gens = saturate_linear_homogeneous(gens, form, budget)?;
        }
        if gens.iter().any(|g| g.is_constant() && !g.is_zero()) {
            let one = MultiPoly::one(base.clone());
            return buchberger(&Ideal::new(base, vec![one]), budget);
        }
    }

    // dehomogenize: the final basis is a degrevlex GB with h last and
    // h-saturated, so setting h = 1 yields an affine Groebner basis
    let affine: Vec<MultiPoly> = gens
        .iter()
        .map(|g| {
            MultiPoly::from_terms(
                base.clone(),
                g.terms()
                    .iter()
                    .map(|(mo, c)| (Monomial(mo.0[..m].to_vec()), c.clone()))
                    .collect(),
            )
        })
        .collect();
    // one final (cheap) pass turns the dehomogenized GB into the reduced GB
    buchberger(&Ideal::new(base, affine), budget)
}

/// Adjoin the inverse of a product: returns the ideal
/// `I + <t * prod(factors) - 1>` in the ring with one fresh last variable t.
/// Its quotient ring is the localization of `R/I` at the product, so Krull
/// dimension and (in the zero-dimensional case) the standard-monomial count
/// equal those of the saturation `(I : prod^inf)` without any elimination.
pub fn with_inverted_product(ideal: &Ideal, factors: &[MultiPoly]) -> Ideal {
    let base = ideal.ring().clone();
    let mut vars = base.vars.clone();
    vars.push("t#".to_string());
    let ext = Ring::new(vars, base.order);
    let lift = |p: &MultiPoly| {
        MultiPoly::from_terms(
            ext.clone(),
            p.terms()
                .iter()
                .map(|(m, c)| {
                    let mut e = m.0.clone();
                    e.push(0);
                    (Monomial(e), c.clone())
                })
                .collect(),
        )
    };
    let mut gens: Vec<MultiPoly> = ideal.generators().iter().map(&lift).collect();
    let mut prod = MultiPoly::var(ext.clone(), ext.nvars() - 1);
    for f in factors {
        prod = prod.try_mul(&lift(f)).unwrap();
    }
    gens.push(prod.try_sub(&MultiPoly::one(ext.clone())).unwrap());
    Ideal::new(ext, gens)
}

/// Saturation `(I : f^inf)` by the added-variable method: adjoin t, add
/// `t*f - 1`, eliminate t with a block order, and read off the t-free part.
/// The variety of the result is the Zariski closure of `V(I) \ V(f)`.
pub fn saturate(ideal: &Ideal, f: &MultiPoly, budget: &GbBudget) -> Result<Ideal> {
    if f.is_zero() {
        return Err(Error::Domain("cannot saturate by zero".into()));
    }
    if f.is_constant() {
        return Ok(ideal.clone());
    }
    let base = ideal.ring().clone();
    assert_eq!(
        base.order,
        MonomialOrder::DegRevLex,
        "saturation assumes a degrevlex base ring"
    );
    let mut vars = vec!["t#".to_string()];
    vars.extend(base.vars.iter().cloned());
    let ext = Ring::new(vars, MonomialOrder::ElimFirst);
    let lift = |p: &MultiPoly| {
        MultiPoly::from_terms(
            ext.clone(),
            p.terms()
                .iter()
                .map(|(m, c)| {
                    let mut e = vec![0u16];
                    e.extend_from_slice(&m.0);
                    (Monomial(e), c.clone())
                })
                .collect(),
        )
    };
    let mut gens: Vec<MultiPoly> = ideal.generators.iter().map(&lift).collect();
    let t = MultiPoly::var(ext.clone(), 0);
    let tf = t.try_mul(&lift(f)).unwrap();
    gens.push(tf.try_sub(&MultiPoly::one(ext.clone())).unwrap());
    let gb = buchberger(&Ideal::new(ext, gens), budget)?;
    let projected: Vec<MultiPoly> = gb
        .basis
        .iter()
        .filter(|g| g.terms().iter().all(|(m, _)| m.0[0] == 0))
        .map(|g| {
            MultiPoly::from_terms(
                base.clone(),
                g.terms()
                    .iter()
                    .map(|(m, c)| (Monomial(m.0[1..].to_vec()), c.clone()))
                    .collect(),
            )
        })
        .collect();
    Ok(Ideal::new(base, projected))
}

/// Saturate sequentially by each factor; same ideal as saturating by the
/// product, with lower elimination degrees.
pub fn saturate_by_all(ideal: &Ideal, factors: &[MultiPoly], budget: &GbBudget) -> Result<Ideal> {
    let mut cur = ideal.clone();
    for f in factors {
        cur = saturate(&cur, f, budget)?;
        // a unit ideal stays a unit ideal under further saturation
        if cur
            .generators
            .iter()
            .any(|g| g.is_constant() && !g.is_zero())
        {
            let one = MultiPoly::one(cur.ring.clone());
            return Ok(Ideal::new(cur.ring, vec![one]));
        }
    }
    Ok(cur)
}

/// Krull dimension of the quotient by the ideal, computed from the leading
/// term ideal: the largest size of a variable subset S such that no leading
/// monomial is supported inside S. The unit ideal reports -1 (empty variety).
pub fn dimension(gb: &GroebnerBasis) -> i64 {
    if gb.is_unit_ideal() {
        return -1;
    }
    let n = gb.ring.nvars();
    if gb.basis.is_empty() {
        return n as i64;
    }
    let lms: Vec<&Monomial> = gb.basis.iter().map(|g| g.leading().unwrap().0).collect();
    let mut best: i64 = 0;
    // exhaustive over the <= 2^8 variable subsets
    for mask in 0u32..(1 << n) {
        let size = mask.count_ones() as i64;
        if size <= best {
            continue;
        }
        let independent = lms.iter().all(|m| {
            m.0.iter()
                .enumerate()
                .any(|(v, &e)| e > 0 && mask & (1 << v) == 0)
        });
        if independent {
            best = size;
        }
    }
    best
}

/// Number of standard monomials (monomials outside the leading term ideal):
/// the vector-space dimension of the quotient, i.e. the degree of a
/// zero-dimensional scheme counted with multiplicity.
pub fn degree_zero_dimensional(gb: &GroebnerBasis) -> Result<u64> {
    let dim = dimension(gb);
    if dim != 0 {
        return Err(Error::NotZeroDimensional(dim));
    }
    let n = gb.ring.nvars();
    let lms: Vec<&Monomial> = gb.basis.iter().map(|g| g.leading().unwrap().0).collect();
    // zero-dimensionality guarantees a pure power of each variable among the
    // leading monomials; those powers bound the standard staircase
    let mut bounds = vec![0u16; n];
    for v in 0..n {
        let bound = lms
            .iter()
            .filter(|m| m.0.iter().enumerate().all(|(w, &e)| w == v || e == 0))
            .map(|m| m.0[v])
            .min()
            .expect("pure power exists in a zero-dimensional leading term ideal");
        bounds[v] = bound;
    }
    let mut count = 0u64;
    let mut exps = vec![0u16; n];
    loop {
        let mono = Monomial(exps.clone());
        if !lms.iter().any(|m| m.divides(&mono)) {
            count += 1;
        }
        // odometer over the box prod [0, bounds_v]
        let mut v = 0;
        loop {
            if v == n {
                return Ok(count);
            }
            if exps[v] < bounds[v] {
                exps[v] += 1;
                break;
            }
            exps[v] = 0;
            v += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn xy() -> Arc<Ring> {
        Ring::new(vec!["x".into(), "y".into()], MonomialOrder::DegRevLex)
    }

    fn gb_of(ring: Arc<Ring>, gens: Vec<MultiPoly>) -> GroebnerBasis {
        buchberger(&Ideal::new(ring, gens), &GbBudget::unlimited()).unwrap()
    }

    /// Buchberger postcondition: every S-polynomial reduces to zero.
    fn assert_all_spolys_reduce(gb: &GroebnerBasis) {
        for i in 0..gb.basis().len() {
            for j in i + 1..gb.basis().len() {
                let s = super::s_polynomial(&gb.basis()[i], &gb.basis()[j]);
                assert!(
                    normal_form(&s, gb.basis()).is_zero(),
                    "S({i},{j}) did not reduce"
                );
            }
        }
    }

    #[test]
    fn circle_line_basis() {
        let r = xy();
        let x = MultiPoly::var(r.clone(), 0);
        let y = MultiPoly::var(r.clone(), 1);
        let g1 = x.pow(2).try_sub(&MultiPoly::one(r.clone())).unwrap();
        let g2 = y.try_sub(&x).unwrap();
        let gb = gb_of(r, vec![g1.clone(), g2.clone()]);
        assert_all_spolys_reduce(&gb);
        // reduced form (descending leading monomials): {y^2 - 1, x - y}
        let text: Vec<String> = gb.basis().iter().map(|g| g.to_string()).collect();
        assert_eq!(text, vec!["y^2 - 1", "x - y"]);
        // generators are members
        assert!(normal_form(&g1, gb.basis()).is_zero());
        assert!(normal_form(&g2, gb.basis()).is_zero());
        assert_eq!(dimension(&gb), 0);
        assert_eq!(degree_zero_dimensional(&gb).unwrap(), 2);
    }

    #[test]
    fn inconsistent_system_gives_unit_ideal() {
        let r = xy();
        let x = MultiPoly::var(r.clone(), 0);
        let xm1 = x.try_sub(&MultiPoly::one(r.clone())).unwrap();
        let gb = gb_of(r, vec![x, xm1]);
        assert!(gb.is_unit_ideal());
        assert_eq!(dimension(&gb), -1);
        // normal_form(1, {1}) = 0
        let one = MultiPoly::one(gb.ring().clone());
        assert!(normal_form(&one, gb.basis()).is_zero());
    }

    #[test]
    fn normal_form_drops_reducible_part() {
        let r = xy();
        let x = MultiPoly::var(r.clone(), 0);
        let y = MultiPoly::var(r.clone(), 1);
        let f = x.try_add(&y).unwrap();
        assert_eq!(normal_form(&f, &[x.clone()]), y);
    }

    #[test]
    fn saturation_examples() {
        let r = xy();
        let x = MultiPoly::var(r.clone(), 0);
        let y = MultiPoly::var(r.clone(), 1);
        let budget = GbBudget::unlimited();

        // <x*y> : x^inf = <y>
        let xy_ideal = Ideal::new(r.clone(), vec![x.try_mul(&y).unwrap()]);
        let sat = saturate(&xy_ideal, &x, &budget).unwrap();
        let gb = buchberger(&sat, &budget).unwrap();
        assert_eq!(gb.canonical_text(), "y");

        // <x^2> : x^inf = <1>
        let x2 = Ideal::new(r.clone(), vec![x.pow(2)]);
        let sat = saturate(&x2, &x, &budget).unwrap();
        assert!(buchberger(&sat, &budget).unwrap().is_unit_ideal());

        // saturating by a unit changes nothing
        let sat = saturate(&xy_ideal, &MultiPoly::one(r.clone()), &budget).unwrap();
        assert_eq!(sat.generators().len(), xy_ideal.generators().len());

        // idempotence: saturate twice = saturate once (as reduced bases)
        let once = saturate(&xy_ideal, &x, &budget).unwrap();
        let twice = saturate(&once, &x, &budget).unwrap();
        assert_eq!(
            buchberger(&once, &budget).unwrap().canonical_text(),
            buchberger(&twice, &budget).unwrap().canonical_text()
        );
    }

    #[test]
    fn dimension_examples() {
        let r3 = Ring::new(
            vec!["x".into(), "y".into(), "z".into()],
            MonomialOrder::DegRevLex,
        );
        let zero = gb_of(r3.clone(), vec![]);
        assert_eq!(dimension(&zero), 3);
        assert!(degree_zero_dimensional(&zero).is_err());

        let r = xy();
        let x = MultiPoly::var(r.clone(), 0);
        let y = MultiPoly::var(r.clone(), 1);
        // <x> in 2 vars: a line
        let line = gb_of(r.clone(), vec![x.clone()]);
        assert_eq!(dimension(&line), 1);
        let _ = y;
    }

    #[test]
    fn degree_examples() {
        let r1 = Ring::new(vec!["x".into()], MonomialOrder::DegRevLex);
        let x = MultiPoly::var(r1.clone(), 0);
        let shifted = x.try_sub(&MultiPoly::constant(r1.clone(), rat(5))).unwrap();
        let gb = gb_of(r1.clone(), vec![shifted]);
        assert_eq!(degree_zero_dimensional(&gb).unwrap(), 1);
        // double point: <x^2>
        let gb = gb_of(r1, vec![x.pow(2)]);
        assert_eq!(degree_zero_dimensional(&gb).unwrap(), 2);
    }

    #[test]
    fn degree_counts_explicit_finite_sets() {
        // product-of-linear-forms ideals: the variety is a finite grid, and
        // the standard monomial count must equal the exact point count
        let r = xy();
        let x = MultiPoly::var(r.clone(), 0);
        let y = MultiPoly::var(r.clone(), 1);
        let lin = |v: &MultiPoly, a: i64| v.try_sub(&MultiPoly::constant(r.clone(), rat(a))).unwrap();
        let px = lin(&x, 1).try_mul(&lin(&x, 2)).unwrap();
        let py = lin(&y, 3)
            .try_mul(&lin(&y, 4))
            .unwrap()
            .try_mul(&lin(&y, 5))
            .unwrap();
        let gb = gb_of(r, vec![px, py]);
        assert_all_spolys_reduce(&gb);
        assert_eq!(dimension(&gb), 0);
        assert_eq!(degree_zero_dimensional(&gb).unwrap(), 6);
    }

    #[test]
    fn dimension_and_degree_are_order_independent() {
        let r = xy();
        let x = MultiPoly::var(r.clone(), 0);
        let y = MultiPoly::var(r.clone(), 1);
        let i1 = Ideal::new(
            r,
            vec![
                x.pow(2).try_sub(&MultiPoly::one(x.ring().clone())).unwrap(),
                y.try_sub(&x).unwrap(),
            ],
        );
        let budget = GbBudget::unlimited();
        let drl = buchberger(&i1, &budget).unwrap();
        let lex = buchberger(&i1.with_order(MonomialOrder::Lex), &budget).unwrap();
        assert_eq!(dimension(&drl), dimension(&lex));
        assert_eq!(
            degree_zero_dimensional(&drl).unwrap(),
            degree_zero_dimensional(&lex).unwrap()
        );
    }

    #[test]
    fn budget_zero_times_out() {
        let r = xy();
        let x = MultiPoly::var(r.clone(), 0);
        let y = MultiPoly::var(r.clone(), 1);
        let f = x.pow(3).try_sub(&y.pow(2)).unwrap();
        let g = x.try_mul(&y).unwrap().try_sub(&MultiPoly::one(r.clone())).unwrap();
        let ideal = Ideal::new(r, vec![f, g]);
        let result = buchberger(&ideal, &GbBudget::millis(0));
        assert!(matches!(result, Err(Error::Timeout(0))));
    }

    #[test]
    fn fingerprint_is_stable_across_runs() {
        let r = xy();
        let x = MultiPoly::var(r.clone(), 0);
        let y = MultiPoly::var(r.clone(), 1);
        let mk = || {
            gb_of(
                r.clone(),
                vec![
                    x.pow(2).try_add(&y.pow(2)).unwrap(),
                    x.try_mul(&y).unwrap(),
                ],
            )
        };
        assert_eq!(mk().fingerprint(), mk().fingerprint());
    }
}
