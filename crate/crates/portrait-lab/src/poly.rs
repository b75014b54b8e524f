//! Sparse multivariate polynomials over the rationals.
//!
//! Terms are kept in a vector sorted descending under the ring's monomial
//! order, with no zero coefficients stored. Degrevlex is the working order;
//! a block elimination order (first variable before everything else) drives
//! saturation, and plain lex is available.

use crate::exact::{format_rational, primitive_part, Rational};
use crate::{Error, Result};
use num_traits::{One, Signed, Zero};
use rustc_hash::FxHashMap;
use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

/// Exponent vector, one entry per ring variable.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<u16>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, idx: usize) -> Self {
        let mut e = vec![0; nvars];
        e[idx] = 1;
        Monomial(e)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, rhs: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&rhs.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn divides(&self, rhs: &Monomial) -> bool {
        self.0.iter().zip(&rhs.0).all(|(a, b)| a <= b)
    }

    /// rhs / self, assuming divisibility.
    pub fn div_into(&self, rhs: &Monomial) -> Monomial {
        Monomial(
            rhs.0
                .iter()
                .zip(&self.0)
                .map(|(b, a)| b - a)
                .collect(),
        )
    }

    pub fn lcm(&self, rhs: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&rhs.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn coprime(&self, rhs: &Monomial) -> bool {
        self.0.iter().zip(&rhs.0).all(|(a, b)| *a == 0 || *b == 0)
    }
}

/// Monomial orders used by the crate.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MonomialOrder {
    /// Graded reverse lexicographic; the default for Groebner runs.
    DegRevLex,
    /// Pure lexicographic, first variable largest.
    Lex,
    /// Block order eliminating the first variable: compare its exponent
    /// first, then degrevlex on the remaining variables.
    ElimFirst,
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::DegRevLex => degrevlex(&a.0, &b.0),
            MonomialOrder::Lex => a.0.cmp(&b.0),
            MonomialOrder::ElimFirst => a.0[0]
                .cmp(&b.0[0])
                .then_with(|| degrevlex(&a.0[1..], &b.0[1..])),
        }
    }
}

fn degrevlex(a: &[u16], b: &[u16]) -> Ordering {
    let da: u32 = a.iter().map(|&e| e as u32).sum();
    let db: u32 = b.iter().map(|&e| e as u32).sum();
    match da.cmp(&db) {
        Ordering::Equal => {
            for (x, y) in a.iter().zip(b).rev() {
                match x.cmp(y) {
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => {}
                }
            }
            Ordering::Equal
        }
        other => other,
    }
}

/// A polynomial ring: named variables plus the active monomial order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Ring {
    pub vars: Vec<String>,
    pub order: MonomialOrder,
}

impl Ring {
    pub fn new(vars: Vec<String>, order: MonomialOrder) -> Arc<Ring> {
        Arc::new(Ring { vars, order })
    }

    /// The ring Q[q1..qn] in degrevlex.
    pub fn q_ring(n: usize) -> Arc<Ring> {
        Self::new(
            (1..=n).map(|i| format!("q{i}")).collect(),
            MonomialOrder::DegRevLex,
        )
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }
}

/// Sparse multivariate polynomial bound to a [`Ring`].
#[derive(Clone)]
pub struct MultiPoly {
    ring: Arc<Ring>,
    /// Sorted descending under `ring.order`; no zero coefficients.
    terms: Vec<(Monomial, Rational)>,
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        *self.ring == *other.ring && self.terms == other.terms
    }
}

impl Eq for MultiPoly {}

impl MultiPoly {
    pub fn zero(ring: Arc<Ring>) -> Self {
        MultiPoly { ring, terms: vec![] }
    }

    pub fn constant(ring: Arc<Ring>, c: Rational) -> Self {
        let mut p = Self::zero(ring);
        if !c.is_zero() {
            let nvars = p.ring.nvars();
            p.terms.push((Monomial::one(nvars), c));
        }
        p
    }

    pub fn one(ring: Arc<Ring>) -> Self {
        Self::constant(ring, Rational::one())
    }

    pub fn var(ring: Arc<Ring>, idx: usize) -> Self {
        let nvars = ring.nvars();
        assert!(idx < nvars, "variable index out of range");
        MultiPoly {
            ring,
            terms: vec![(Monomial::var(nvars, idx), Rational::one())],
        }
    }

    /// Build from unsorted (monomial, coefficient) pairs, combining and
    /// dropping zeros.
    pub fn from_terms(ring: Arc<Ring>, pairs: Vec<(Monomial, Rational)>) -> Self {
        let mut map: FxHashMap<Monomial, Rational> = FxHashMap::default();
        for (m, c) in pairs {
            if c.is_zero() {
                continue;
            }
            match map.entry(m) {
                std::collections::hash_map::Entry::Occupied(mut e) => {
                    let sum = e.get() + &c;
                    if sum.is_zero() {
                        e.remove();
                    } else {
                        *e.get_mut() = sum;
                    }
                }
                std::collections::hash_map::Entry::Vacant(e) => {
                    e.insert(c);
                }
            }
        }
        let mut terms: Vec<(Monomial, Rational)> = map.into_iter().collect();
        let order = ring.order;
        terms.sort_unstable_by(|x, y| order.cmp(&y.0, &x.0));
        MultiPoly { ring, terms }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() <= 1 && self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.total_degree()).max().unwrap_or(0)
    }

    /// Leading (monomial, coefficient) under the ring order.
    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.first().map(|(m, c)| (m, c))
    }

    fn check_ring(&self, rhs: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &rhs.ring) || *self.ring == *rhs.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch(format!(
                "{:?} vs {:?}",
                self.ring.vars, rhs.ring.vars
            )))
        }
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        self.check_ring(rhs)?;
        Ok(self.merge(rhs, false))
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self> {
        self.check_ring(rhs)?;
        Ok(self.merge(rhs, true))
    }

    fn merge(&self, rhs: &Self, negate_rhs: bool) -> Self {
        let order = self.ring.order;
        let mut out = Vec::with_capacity(self.terms.len() + rhs.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < rhs.terms.len() {
            match order.cmp(&self.terms[i].0, &rhs.terms[j].0) {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let (m, c) = &rhs.terms[j];
                    out.push((m.clone(), if negate_rhs { -c } else { c.clone() }));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate_rhs {
                        &self.terms[i].1 - &rhs.terms[j].1
                    } else {
                        &self.terms[i].1 + &rhs.terms[j].1
                    };
                    if !c.is_zero() {
                        out.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        for (m, c) in &rhs.terms[j..] {
            out.push((m.clone(), if negate_rhs { -c } else { c.clone() }));
        }
        MultiPoly { ring: self.ring.clone(), terms: out }
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        self.check_ring(rhs)?;
        let mut pairs = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                pairs.push((ma.mul(mb), ca * cb));
            }
        }
        Ok(Self::from_terms(self.ring.clone(), pairs))
    }

    pub fn neg_ref(&self) -> Self {
        MultiPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.ring.clone());
        }
        MultiPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    /// Multiply by a single term.
    pub fn mul_term(&self, mono: &Monomial, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.ring.clone());
        }
        MultiPoly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.mul(mono), k * c))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.ring.clone());
        for _ in 0..e {
            acc = acc.try_mul(self).unwrap();
        }
        acc
    }

    /// Divide by the leading coefficient.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) => {
                let inv = c.recip();
                self.scale(&inv)
            }
        }
    }

    /// Canonical integer form: clear denominators, strip integer content,
    /// make the leading coefficient positive.
    pub fn primitive(&self) -> Self {
        let coeffs: Vec<Rational> = self.terms.iter().map(|(_, c)| c.clone()).collect();
        match primitive_part(&coeffs) {
            None => Self::zero(self.ring.clone()),
            Some(ints) => {
                // primitive_part normalizes the sign of the LAST nonzero entry;
                // re-normalize so the leading (first) coefficient is positive.
                let mut terms: Vec<(Monomial, Rational)> = self
                    .terms
                    .iter()
                    .zip(ints)
                    .map(|((m, _), v)| (m.clone(), Rational::from_integer(v)))
                    .collect();
                if terms.first().is_some_and(|(_, c)| c.is_negative()) {
                    for (_, c) in &mut terms {
                        *c = -&*c;
                    }
                }
                MultiPoly { ring: self.ring.clone(), terms }
            }
        }
    }

    /// Exact division; returns None when `rhs` does not divide `self`.
    pub fn div_exact(&self, rhs: &Self) -> Option<Self> {
        if rhs.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(self.clone());
        }
        let order = self.ring.order;
        let (lm, lc) = rhs.leading().unwrap();
        let mut rem = self.clone();
        let mut quot_terms: Vec<(Monomial, Rational)> = vec![];
        while let Some((m, c)) = rem.leading() {
            if !lm.divides(m) {
                return None;
            }
            let qm = lm.div_into(m);
            let qc = c / lc;
            let sub = rhs.mul_term(&qm, &qc);
            quot_terms.push((qm, qc));
            rem = rem.merge(&sub, true);
            let _ = order;
        }
        Some(Self::from_terms(self.ring.clone(), quot_terms))
    }

    /// Evaluate at a full rational point.
    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.ring.nvars());
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    t *= &point[i];
                }
            }
            acc += t;
        }
        acc
    }

    /// Exact partial evaluation: fix `assignments[i] = Some(value)` and
    /// project onto the smaller ring of the remaining variables (keeping the
    /// current order).
    pub fn substitute(&self, assignments: &[Option<Rational>]) -> Self {
        assert_eq!(assignments.len(), self.ring.nvars());
        let kept: Vec<usize> = (0..self.ring.nvars())
            .filter(|&i| assignments[i].is_none())
            .collect();
        let new_ring = Ring::new(
            kept.iter().map(|&i| self.ring.vars[i].clone()).collect(),
            self.ring.order,
        );
        let mut pairs = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut coef = c.clone();
            let mut exps = vec![0u16; kept.len()];
            for (i, &e) in m.0.iter().enumerate() {
                match &assignments[i] {
                    Some(v) => {
                        for _ in 0..e {
                            coef *= v;
                        }
                    }
                    None => {
                        let pos = kept.iter().position(|&k| k == i).unwrap();
                        exps[pos] = e;
                    }
                }
            }
            pairs.push((Monomial(exps), coef));
        }
        Self::from_terms(new_ring, pairs)
    }

    /// Replace one variable by a polynomial of the same ring.
    pub fn substitute_one(&self, var: usize, replacement: &MultiPoly) -> Self {
        let nv = self.ring.nvars();
        assert!(var < nv);
        // memoized powers of the replacement
        let mut powers: Vec<MultiPoly> = vec![MultiPoly::one(self.ring.clone())];
        let mut acc = MultiPoly::zero(self.ring.clone());
        for (m, c) in &self.terms {
            let e = m.0[var];
            while powers.len() <= e as usize {
                let next = powers.last().unwrap().try_mul(replacement).unwrap();
                powers.push(next);
            }
            let mut rest = m.0.clone();
            rest[var] = 0;
            let base = MultiPoly {
                ring: self.ring.clone(),
                terms: vec![(Monomial(rest), c.clone())],
            };
            acc = acc
                .try_add(&base.try_mul(&powers[e as usize]).unwrap())
                .unwrap();
        }
        acc
    }

    /// Homogenize to the given total degree using the variable `hvar`.
    pub fn homogenize_into(&self, ring: Arc<Ring>, hvar: usize, degree: u32) -> Self {
        let pairs = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = m.0.clone();
                e.resize(ring.nvars(), 0);
                let deficit = degree - m.total_degree();
                e[hvar] += deficit as u16;
                (Monomial(e), c.clone())
            })
            .collect();
        Self::from_terms(ring, pairs)
    }

    /// Apply a variable permutation: variable i of `self` becomes variable
    /// `perm[i]` of the result (same ring shape).
    pub fn permute_vars(&self, perm: &[usize]) -> Self {
        let nv = self.ring.nvars();
        assert_eq!(perm.len(), nv);
        let pairs = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = vec![0u16; nv];
                for (i, &x) in m.0.iter().enumerate() {
                    e[perm[i]] = x;
                }
                (Monomial(e), c.clone())
            })
            .collect();
        Self::from_terms(self.ring.clone(), pairs)
    }

    /// Same polynomial viewed in another ring with identical variable count.
    pub fn with_ring(&self, ring: Arc<Ring>) -> Self {
        assert_eq!(ring.nvars(), self.ring.nvars());
        Self::from_terms(ring, self.terms.clone())
    }
}

/// The k-th elementary symmetric polynomial in the given variables.
pub fn elementary_symmetric(ring: Arc<Ring>, k: usize, vars: &[usize]) -> Result<MultiPoly> {
    if k > vars.len() {
        return Err(Error::Domain(format!(
            "e_{k} undefined over {} variables",
            vars.len()
        )));
    }
    if k == 0 {
        return Ok(MultiPoly::one(ring));
    }
    let nvars = ring.nvars();
    let mut pairs = vec![];
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        let mut e = vec![0u16; nvars];
        for &j in &idx {
            e[vars[j]] = 1;
        }
        pairs.push((Monomial(e), Rational::one()));
        // next k-combination of 0..vars.len()
        let mut i = k;
        loop {
            if i == 0 {
                return Ok(MultiPoly::from_terms(ring, pairs));
            }
            i -= 1;
            if idx[i] + 1 <= vars.len() - (k - i) {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = vec![];
            if !mag.is_one() || m.is_one() {
                factors.push(format_rational(&mag));
            }
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.ring.vars[i].clone()),
                    _ => factors.push(format!("{}^{}", self.ring.vars[i], e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn xy_ring() -> Arc<Ring> {
        Ring::new(vec!["x".into(), "y".into()], MonomialOrder::DegRevLex)
    }

    #[test]
    fn difference_of_squares() {
        let r = xy_ring();
        let x = MultiPoly::var(r.clone(), 0);
        let y = MultiPoly::var(r.clone(), 1);
        let lhs = x
            .try_add(&y)
            .unwrap()
            .try_mul(&x.try_sub(&y).unwrap())
            .unwrap();
        let rhs = x.pow(2).try_sub(&y.pow(2)).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn additive_identity() {
        let r = xy_ring();
        let x = MultiPoly::var(r.clone(), 0);
        let zero = MultiPoly::zero(r);
        assert_eq!(x.try_add(&zero).unwrap(), x);
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        let a = MultiPoly::var(xy_ring(), 0);
        let b = MultiPoly::var(Ring::q_ring(3), 0);
        assert!(a.try_add(&b).is_err());
    }

    #[test]
    fn elementary_symmetric_examples() {
        let r = Ring::q_ring(6);
        let e1 = elementary_symmetric(r.clone(), 1, &[0, 1, 2]).unwrap();
        assert_eq!(e1.to_string(), "q1 + q2 + q3");
        // e_2(q4,q5,q6) = q4q5 + q4q6 + q5q6
        let e2 = elementary_symmetric(r.clone(), 2, &[3, 4, 5]).unwrap();
        assert_eq!(e2.to_string(), "q4*q5 + q4*q6 + q5*q6");
        let e0 = elementary_symmetric(r.clone(), 0, &[0, 1]).unwrap();
        assert_eq!(e0, MultiPoly::one(r.clone()));
        assert!(elementary_symmetric(r, 3, &[0, 1]).is_err());
    }

    #[test]
    fn substitution_examples() {
        let r = xy_ring();
        let x = MultiPoly::var(r.clone(), 0);
        let y = MultiPoly::var(r.clone(), 1);
        let s = x.try_add(&y).unwrap();
        let sub = s.substitute(&[Some(rat(0)), None]);
        assert_eq!(sub.to_string(), "y");
        let all = s.substitute(&[Some(rat(2)), Some(rat(5))]);
        assert!(all.is_constant());
        assert_eq!(all.terms()[0].1, rat(7));
    }

    #[test]
    fn degrevlex_orders_by_degree_then_reverse() {
        let ord = MonomialOrder::DegRevLex;
        // x^2 > xy > y^2 > x > y > 1 in two variables
        let seq = [
            Monomial(vec![2, 0]),
            Monomial(vec![1, 1]),
            Monomial(vec![0, 2]),
            Monomial(vec![1, 0]),
            Monomial(vec![0, 1]),
            Monomial(vec![0, 0]),
        ];
        for w in seq.windows(2) {
            assert_eq!(ord.cmp(&w[0], &w[1]), Ordering::Greater);
        }
    }

    #[test]
    fn elim_order_isolates_first_variable() {
        let ord = MonomialOrder::ElimFirst;
        // t beats any power of the others
        let t = Monomial(vec![1, 0, 0]);
        let big = Monomial(vec![0, 5, 5]);
        assert_eq!(ord.cmp(&t, &big), Ordering::Greater);
    }

    #[test]
    fn div_exact_recovers_factor() {
        let r = xy_ring();
        let x = MultiPoly::var(r.clone(), 0);
        let y = MultiPoly::var(r.clone(), 1);
        let a = x.try_add(&y).unwrap();
        let b = x.try_sub(&y).unwrap();
        let prod = a.try_mul(&b).unwrap();
        assert_eq!(prod.div_exact(&a).unwrap(), b);
        assert!(prod.div_exact(&x.pow(3)).is_none());
    }

    #[test]
    fn primitive_clears_denominators_and_content() {
        let r = xy_ring();
        let x = MultiPoly::var(r.clone(), 0);
        let p = x.scale(&crate::exact::ratio(-4, 6));
        let prim = p.primitive();
        assert_eq!(prim.to_string(), "x");
    }

    // Newton-Girard: p_k = e_1 p_{k-1} - e_2 p_{k-2} + ... + (-1)^{k-1} k e_k,
    // checked symbolically against the direct power sums for up to 5 variables.
    #[test]
    fn newton_girard_identities() {
        for n in 1..=5usize {
            let r = Ring::q_ring(n);
            let vars: Vec<usize> = (0..n).collect();
            let direct: Vec<MultiPoly> = (1..=n)
                .map(|k| {
                    let mut acc = MultiPoly::zero(r.clone());
                    for i in 0..n {
                        acc = acc
                            .try_add(&MultiPoly::var(r.clone(), i).pow(k as u32))
                            .unwrap();
                    }
                    acc
                })
                .collect();
            let mut via_e: Vec<MultiPoly> = vec![];
            for k in 1..=n {
                let mut acc = MultiPoly::zero(r.clone());
                for i in 1..k {
                    let e_i = elementary_symmetric(r.clone(), i, &vars).unwrap();
                    let term = e_i.try_mul(&via_e[k - i - 1]).unwrap();
                    let signed = if i % 2 == 1 { term } else { term.neg_ref() };
                    acc = acc.try_add(&signed).unwrap();
                }
                let e_k = elementary_symmetric(r.clone(), k, &vars).unwrap();
                let tail = e_k.scale(&rat(k as i64));
                let signed_tail = if k % 2 == 1 { tail } else { tail.neg_ref() };
                acc = acc.try_add(&signed_tail).unwrap();
                via_e.push(acc);
            }
            for k in 0..n {
                assert_eq!(via_e[k], direct[k], "n={n} k={}", k + 1);
            }
        }
    }
}
