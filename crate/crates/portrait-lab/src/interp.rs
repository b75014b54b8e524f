//! Symbolic Lagrange interpolation: defining polynomials of the realization
//! spaces of a portrait, and of the two-image spaces shared by a fiber
//! partition.
//!
//! For a portrait P on n points, the unique degree <= n-1 interpolant through
//! `(x_i, x_{P(i)})` has coefficients `b_k` that are rational functions with
//! Vandermonde denominator `V = prod_{i<j} (x_j - x_i)`. The cleared
//! numerators `B_k = V * b_k` are polynomials; a configuration of distinct
//! points realizes P in degree at most d exactly when `B_{n-1}, …, B_{d+1}`
//! vanish there, and in degree exactly d when additionally `B_d` does not.

use crate::combinat::Portrait;
use crate::exact::Rational;
use crate::poly::{elementary_symmetric, Monomial, MultiPoly, Ring};
use crate::{Error, Result};
use num_traits::One;
use std::sync::Arc;

/// Defining data for the space of degree-at-most-d realizations of one
/// portrait, in the ambient ring Q[q1..qn].
///
/// `generators` vanish on a distinct-point configuration iff the interpolant
/// has degree <= d; `leading_coeff` cuts out the exact-degree locus. Both are
/// reduced: integer content and spurious diagonal factors `(q_j - q_i)` are
/// stripped (those factors are units on configuration space).
#[derive(Clone, Debug)]
pub struct RealizationIdeal {
    pub n: usize,
    pub d: i64,
    pub generators: Vec<MultiPoly>,
    pub leading_coeff: MultiPoly,
}

/// The Vandermonde product `prod_{i<j} (x_j - x_i)` in the given ring.
pub fn vandermonde_product(ring: Arc<Ring>) -> MultiPoly {
    let n = ring.nvars();
    let mut acc = MultiPoly::one(ring.clone());
    for i in 0..n {
        for j in i + 1..n {
            let factor = MultiPoly::var(ring.clone(), j)
                .try_sub(&MultiPoly::var(ring.clone(), i))
                .unwrap();
            acc = acc.try_mul(&factor).unwrap();
        }
    }
    acc
}

/// Cleared interpolation numerators `B_k = V * b_k` for k = 0..n-1.
///
/// Computed as Cramer determinants of the Vandermonde system, expanded along
/// the replaced column: the minor over variables `x_r (r != i)` with exponent
/// set `{0..n-1} \ {k}` equals `e_{n-1-k}(x_{!=i}) * V_i`, so
/// `B_k = sum_i (-1)^{i+k+1} x_{P(i)} e_{n-1-k}(x_{!=i}) V_i` (i one-indexed).
pub fn lagrange_numerators(p: &Portrait) -> Vec<MultiPoly> {
    let n = p.n();
    let ring = Ring::q_ring(n);
    // V_i = Vandermonde product over the variables other than x_i
    let sub_vandermonde: Vec<MultiPoly> = (0..n)
        .map(|skip| {
            let mut acc = MultiPoly::one(ring.clone());
            for i in 0..n {
                for j in i + 1..n {
                    if i == skip || j == skip {
                        continue;
                    }
                    let factor = MultiPoly::var(ring.clone(), j)
                        .try_sub(&MultiPoly::var(ring.clone(), i))
                        .unwrap();
                    acc = acc.try_mul(&factor).unwrap();
                }
            }
            acc
        })
        .collect();
    (0..n)
        .map(|k| {
            let mut acc = MultiPoly::zero(ring.clone());
            for i in 1..=n {
                let others: Vec<usize> = (0..n).filter(|&v| v != i - 1).collect();
                let e = elementary_symmetric(ring.clone(), n - 1 - k, &others).unwrap();
                let y = MultiPoly::var(ring.clone(), p.apply(i) - 1);
                let mut term = y
                    .try_mul(&e)
                    .unwrap()
                    .try_mul(&sub_vandermonde[i - 1])
                    .unwrap();
                if (i + k + 1) % 2 == 1 {
                    term = term.neg_ref();
                }
                acc = acc.try_add(&term).unwrap();
            }
            acc
        })
        .collect()
}

/// Cleared divided-difference numerators of order d+1 over every
/// (d+2)-element node subset: the interpolant of the portrait has degree at
/// most d on a distinct-point configuration iff all of them vanish (the
/// higher-order differences follow by the recursion). Degrees stay at
/// 1 + C(d+1, 2) instead of the full-support clearing degree.
pub fn subset_numerators(p: &Portrait, d: i64) -> Vec<MultiPoly> {
    let n = p.n();
    let ring = Ring::q_ring(n);
    let size = d as usize + 2;
    assert!(size <= n, "need d + 2 <= n");
    let mut out = vec![];
    let mut subset: Vec<usize> = (0..size).collect(); // 0-indexed nodes
    loop {
        // cleared leading coefficient of the interpolant on these nodes:
        // det of the Vandermonde system with the top-power column replaced
        // by the portrait values, expanded along that column
        let mut acc = MultiPoly::zero(ring.clone());
        for (pos, &i) in subset.iter().enumerate() {
            let others: Vec<usize> = subset
                .iter()
                .copied()
                .filter(|&v| v != i)
                .collect();
            // Vandermonde of the other subset nodes
            let mut v_i = MultiPoly::one(ring.clone());
            for a in 0..others.len() {
                for b in a + 1..others.len() {
                    let factor = MultiPoly::var(ring.clone(), others[b])
                        .try_sub(&MultiPoly::var(ring.clone(), others[a]))
                        .unwrap();
                    v_i = v_i.try_mul(&factor).unwrap();
                }
            }
            let y = MultiPoly::var(ring.clone(), p.apply(i + 1) - 1);
            let mut term = y.try_mul(&v_i).unwrap();
            if (pos + size) % 2 == 1 {
                term = term.neg_ref();
            }
            acc = acc.try_add(&term).unwrap();
        }
        out.push(acc);
        // next combination
        let mut level = size;
        loop {
            if level == 0 {
                return out;
            }
            level -= 1;
            if subset[level] + 1 <= n - (size - level) {
                subset[level] += 1;
                for j in level + 1..size {
                    subset[j] = subset[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Strip every diagonal factor `(x_j - x_i)` that exactly divides the
/// polynomial, then strip integer content. Zero stays zero.
pub fn strip_diagonal_factors(poly: &MultiPoly) -> MultiPoly {
    if poly.is_zero() {
        return poly.clone();
    }
    let ring = poly.ring().clone();
    let n = ring.nvars();
    let mut out = poly.clone();
    for i in 0..n {
        for j in i + 1..n {
            let factor = MultiPoly::var(ring.clone(), j)
                .try_sub(&MultiPoly::var(ring.clone(), i))
                .unwrap();
            while let Some(q) = out.div_exact(&factor) {
                if q.is_zero() {
                    break;
                }
                out = q;
            }
        }
    }
    out.primitive()
}

/// The realization ideal of degree-at-most-d configurations for `p`.
///
/// For d >= n-1 every configuration works (Vandermonde lemma), so the
/// generator list is empty and the leading coefficient is the sentinel 1.
pub fn conf_ideal(p: &Portrait, d: i64) -> RealizationIdeal {
    assert!(d >= 0);
    let n = p.n();
    let ring = Ring::q_ring(n);
    if d as usize >= n - 1 {
        return RealizationIdeal {
            n,
            d,
            generators: vec![],
            leading_coeff: MultiPoly::one(ring),
        };
    }
    let numerators = lagrange_numerators(p);
    let generators: Vec<MultiPoly> = (d as usize + 1..n)
        .rev()
        .map(|k| strip_diagonal_factors(&numerators[k]))
        .collect();
    let leading_coeff = strip_diagonal_factors(&numerators[d as usize]);
    RealizationIdeal {
        n,
        d,
        generators,
        leading_coeff,
    }
}

/// Defining equations `e_k(x_A) - e_k(x_B)` (1 <= k < d) of the space of
/// configurations on which some degree-d polynomial has the two fibers A, B.
pub fn two_image_ideal(a: &[u8], b: &[u8]) -> Result<Vec<MultiPoly>> {
    let d = a.len();
    if b.len() != d || d == 0 {
        return Err(Error::InvalidPartition(
            "both parts must have the same positive size".into(),
        ));
    }
    let n = 2 * d;
    let mut seen = vec![false; n + 1];
    for &v in a.iter().chain(b) {
        if v == 0 || v as usize > n || seen[v as usize] {
            return Err(Error::InvalidPartition(format!(
                "parts must partition 1..={n}"
            )));
        }
        seen[v as usize] = true;
    }
    let ring = Ring::q_ring(n);
    let vars_a: Vec<usize> = a.iter().map(|&v| v as usize - 1).collect();
    let vars_b: Vec<usize> = b.iter().map(|&v| v as usize - 1).collect();
    (1..d)
        .map(|k| {
            let ea = elementary_symmetric(ring.clone(), k, &vars_a)?;
            let eb = elementary_symmetric(ring.clone(), k, &vars_b)?;
            ea.try_sub(&eb)
        })
        .collect()
}

/// Evaluate a polynomial at a configuration given as a slice of rationals.
pub fn eval_at(poly: &MultiPoly, q: &[Rational]) -> Rational {
    poly.eval(q)
}

/// The published defining quadric of the example portrait that maps
/// 1,2,3,4 to 1,1,2,4 (used as a golden value in tests and docs):
/// `q2^2 - q2*q3 + q3^2 + q1*q4 - q1*q3 - q2*q4`.
pub fn exceptional_quadric() -> MultiPoly {
    let ring = Ring::q_ring(4);
    let term = |exps: [u16; 4], c: i64| {
        (
            Monomial(exps.to_vec()),
            Rational::from_integer(c.into()) * Rational::one(),
        )
    };
    MultiPoly::from_terms(
        ring,
        vec![
            term([0, 2, 0, 0], 1),
            term([0, 1, 1, 0], -1),
            term([0, 0, 2, 0], 1),
            term([1, 0, 0, 1], 1),
            term([1, 0, 1, 0], -1),
            term([0, 1, 0, 1], -1),
        ],
    )
}
