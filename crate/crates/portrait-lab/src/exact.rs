//! Exact arithmetic substrate: unbounded rationals and cyclotomic field
//! elements of `Q(zeta_m)` stored modulo the m-th cyclotomic polynomial.
//!
//! Rationals are `num_rational::BigRational`, which already maintains the
//! reduced-form invariant (gcd 1, positive denominator). Cyclotomic elements
//! keep a coefficient vector of length phi(m), so equality of field elements
//! is coefficient-wise equality.

use crate::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Exact rational scalar used throughout the crate.
pub type Rational = num_rational::BigRational;

/// Shorthand for a rational from an integer.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for the rational n/d.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parse `p/q` or `p` into a rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let parse_int = |t: &str| -> Result<BigInt> {
        t.trim()
            .parse::<BigInt>()
            .map_err(|_| Error::Domain(format!("bad integer `{t}`")))
    };
    match s.split_once('/') {
        Some((num, den)) => {
            let d = parse_int(den)?;
            if d.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(Rational::new(parse_int(num)?, d))
        }
        None => Ok(Rational::from_integer(parse_int(s)?)),
    }
}

/// Render a rational as `p/q`, or `p` when the denominator is 1.
pub fn format_rational(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Euler totient by trial division.
pub fn euler_phi(m: u64) -> u64 {
    let mut n = m;
    let mut result = m;
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Coefficients of the m-th cyclotomic polynomial, ascending degree.
///
/// Computed by the recursive division
/// `Phi_m(x) = (x^m - 1) / prod_{d|m, d<m} Phi_d(x)`;
/// exact for every m we use (coefficients stay well inside i64 range for
/// m < 10^4).
pub fn cyclotomic_polynomial(m: u64) -> Vec<i64> {
    assert!(m >= 1, "conductor must be positive");
    // numerator x^m - 1
    let mut num = vec![0i64; m as usize + 1];
    num[0] = -1;
    num[m as usize] = 1;
    for d in 1..m {
        if m % d == 0 {
            let phi_d = cyclotomic_polynomial(d);
            num = divide_exact_int(&num, &phi_d);
        }
    }
    num
}

/// Exact division of integer polynomials (ascending coefficients); the
/// divisor must be monic and divide evenly.
fn divide_exact_int(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = num.len() - 1;
    let dd = den.len() - 1;
    assert_eq!(den[dd], 1, "divisor must be monic");
    assert!(dn >= dd);
    let mut rem = num.to_vec();
    let mut quot = vec![0i64; dn - dd + 1];
    for k in (0..=dn - dd).rev() {
        let c = rem[k + dd];
        quot[k] = c;
        if c != 0 {
            for (j, &dj) in den.iter().enumerate() {
                rem[k + j] -= c * dj;
            }
        }
    }
    assert!(rem.iter().all(|&c| c == 0), "division was not exact");
    quot
}

/// An element of the cyclotomic field `Q(zeta_m)`, reduced modulo `Phi_m`.
///
/// The coefficient vector always has length `phi(m)`, with `coeffs[k]` the
/// coefficient of `zeta_m^k`. Two elements are equal as field elements iff
/// their vectors are equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycloElem {
    m: u64,
    coeffs: Vec<Rational>,
}

impl CycloElem {
    /// Zero in `Q(zeta_m)`.
    pub fn zero(m: u64) -> Self {
        CycloElem {
            m,
            coeffs: vec![Rational::zero(); euler_phi(m) as usize],
        }
    }

    /// A rational constant in `Q(zeta_m)`.
    pub fn from_rational(m: u64, c: Rational) -> Self {
        let mut z = Self::zero(m);
        z.coeffs[0] = c;
        z
    }

    /// One in `Q(zeta_m)`.
    pub fn one(m: u64) -> Self {
        Self::from_rational(m, Rational::one())
    }

    /// The primitive root `zeta_m` itself.
    pub fn zeta(m: u64) -> Self {
        Self::zeta_pow(m, 1)
    }

    /// `zeta_m^k`, reduced.
    pub fn zeta_pow(m: u64, k: i64) -> Self {
        let k = k.rem_euclid(m as i64) as usize;
        let mut raw = vec![Rational::zero(); k + 1];
        raw[k] = Rational::one();
        Self::reduce(m, raw)
    }

    /// Build an element from an arbitrary-length coefficient vector in
    /// powers of `zeta_m`, reducing modulo `Phi_m`.
    pub fn reduce(m: u64, mut raw: Vec<Rational>) -> Self {
        let phi_m = cyclotomic_polynomial(m);
        let deg = phi_m.len() - 1;
        // long division by the monic Phi_m
        while raw.len() > deg {
            let top = raw.len() - 1;
            let c = raw[top].clone();
            if !c.is_zero() {
                for (j, &pj) in phi_m.iter().enumerate() {
                    let idx = top - deg + j;
                    let sub = &c * Rational::from_integer(BigInt::from(pj));
                    raw[idx] = &raw[idx] - sub;
                }
            }
            raw.pop();
        }
        raw.resize(deg, Rational::zero());
        CycloElem { m, coeffs: raw }
    }

    /// Construct from exactly `phi(m)` coefficients.
    pub fn from_coeffs(m: u64, coeffs: Vec<Rational>) -> Result<Self> {
        let want = euler_phi(m) as usize;
        if coeffs.len() != want {
            return Err(Error::Domain(format!(
                "Q(zeta_{m}) elements carry {want} coefficients, got {}",
                coeffs.len()
            )));
        }
        Ok(CycloElem { m, coeffs })
    }

    pub fn conductor(&self) -> u64 {
        self.m
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// True when the element is a plain rational number.
    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().skip(1).all(|c| c.is_zero())
    }

    fn check_same_field(&self, rhs: &Self) -> Result<()> {
        if self.m == rhs.m {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "mixed conductors {} and {}",
                self.m, rhs.m
            )))
        }
    }

    pub fn add_ref(&self, rhs: &Self) -> Result<Self> {
        self.check_same_field(rhs)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(CycloElem { m: self.m, coeffs })
    }

    pub fn sub_ref(&self, rhs: &Self) -> Result<Self> {
        self.check_same_field(rhs)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(CycloElem { m: self.m, coeffs })
    }

    pub fn mul_ref(&self, rhs: &Self) -> Result<Self> {
        self.check_same_field(rhs)?;
        let n = self.coeffs.len();
        let mut raw = vec![Rational::zero(); 2 * n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                raw[i + j] = &raw[i + j] + a * b;
            }
        }
        Ok(Self::reduce(self.m, raw))
    }

    /// Multiplicative inverse via the extended Euclidean algorithm in Q[x]:
    /// `Phi_m` is irreducible, so gcd(self, Phi_m) = 1 for nonzero self.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let phi_m: Vec<Rational> = cyclotomic_polynomial(self.m)
            .iter()
            .map(|&c| rat(c))
            .collect();
        let (g, _, t) = ext_gcd_qpoly(&phi_m, &self.coeffs);
        // g is a nonzero constant; self^{-1} = t / g
        debug_assert_eq!(poly_deg(&g), Some(0));
        let ginv = g[0].recip();
        let coeffs = t.iter().map(|c| c * &ginv).collect::<Vec<_>>();
        Ok(Self::reduce(self.m, coeffs))
    }

    pub fn div_ref(&self, rhs: &Self) -> Result<Self> {
        self.check_same_field(rhs)?;
        self.mul_ref(&rhs.inverse()?)
    }

    pub fn pow(&self, mut e: u64) -> Result<Self> {
        let mut base = self.clone();
        let mut acc = Self::one(self.m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ref(&base)?;
            }
            base = base.mul_ref(&base)?;
            e >>= 1;
        }
        Ok(acc)
    }
}

impl fmt::Debug for CycloElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclo(m={}; ", self.m)?;
        let parts: Vec<String> = self.coeffs.iter().map(format_rational).collect();
        write!(f, "[{}])", parts.join(", "))
    }
}

impl fmt::Display for CycloElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(format_rational).collect();
        write!(f, "[{}] mod Phi_{}", parts.join(","), self.m)
    }
}

impl Add for &CycloElem {
    type Output = CycloElem;
    fn add(self, rhs: Self) -> CycloElem {
        self.add_ref(rhs).expect("conductor mismatch")
    }
}

impl Sub for &CycloElem {
    type Output = CycloElem;
    fn sub(self, rhs: Self) -> CycloElem {
        self.sub_ref(rhs).expect("conductor mismatch")
    }
}

impl Mul for &CycloElem {
    type Output = CycloElem;
    fn mul(self, rhs: Self) -> CycloElem {
        self.mul_ref(rhs).expect("conductor mismatch")
    }
}

impl Neg for &CycloElem {
    type Output = CycloElem;
    fn neg(self) -> CycloElem {
        CycloElem {
            m: self.m,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

// ---- small dense univariate helpers over Q (ascending coefficients) ----

fn poly_deg(p: &[Rational]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

fn poly_trim(mut p: Vec<Rational>) -> Vec<Rational> {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn poly_rem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let db = poly_deg(b).expect("division by zero polynomial");
    let mut rem = poly_trim(a.to_vec());
    let mut quot = vec![Rational::zero(); rem.len().saturating_sub(db)];
    while let Some(dr) = poly_deg(&rem) {
        if dr < db {
            break;
        }
        let factor = &rem[dr] / &b[db];
        quot[dr - db] = factor.clone();
        for j in 0..=db {
            rem[dr - db + j] = &rem[dr - db + j] - &factor * &b[j];
        }
        rem = poly_trim(rem);
    }
    (poly_trim(quot), rem)
}

/// Extended gcd: returns (g, s, t) with s*a + t*b = g.
fn ext_gcd_qpoly(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>, Vec<Rational>) {
    let mut r0 = poly_trim(a.to_vec());
    let mut r1 = poly_trim(b.to_vec());
    let mut s0 = vec![Rational::one()];
    let mut s1: Vec<Rational> = vec![];
    let mut t0: Vec<Rational> = vec![];
    let mut t1 = vec![Rational::one()];
    while poly_deg(&r1).is_some() {
        let (q, r) = poly_rem(&r0, &r1);
        let next_s = poly_sub(&s0, &poly_mul(&q, &s1));
        let next_t = poly_sub(&t0, &poly_mul(&q, &t1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = next_s;
        t0 = t1;
        t1 = next_t;
    }
    (r0, s0, t0)
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + x * y;
        }
    }
    poly_trim(out)
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = a.to_vec();
    out.resize(out.len().max(b.len()), Rational::zero());
    for (j, y) in b.iter().enumerate() {
        out[j] = &out[j] - y;
    }
    poly_trim(out)
}

/// The handful of field operations shared by `Rational` and `CycloElem`,
/// enough to run Lagrange interpolation generically.
pub trait FieldScalar: Clone + PartialEq {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero_val(&self) -> bool;
    fn add_val(&self, rhs: &Self) -> Self;
    fn sub_val(&self, rhs: &Self) -> Self;
    fn mul_val(&self, rhs: &Self) -> Self;
    fn div_val(&self, rhs: &Self) -> Result<Self>;
}

impl FieldScalar for Rational {
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
    fn is_zero_val(&self) -> bool {
        self.is_zero()
    }
    fn add_val(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_val(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_val(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div_val(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self / rhs)
    }
}

impl FieldScalar for CycloElem {
    fn zero_like(&self) -> Self {
        CycloElem::zero(self.m)
    }
    fn one_like(&self) -> Self {
        CycloElem::one(self.m)
    }
    fn is_zero_val(&self) -> bool {
        self.is_zero()
    }
    fn add_val(&self, rhs: &Self) -> Self {
        self.add_ref(rhs).expect("conductor mismatch")
    }
    fn sub_val(&self, rhs: &Self) -> Self {
        self.sub_ref(rhs).expect("conductor mismatch")
    }
    fn mul_val(&self, rhs: &Self) -> Self {
        self.mul_ref(rhs).expect("conductor mismatch")
    }
    fn div_val(&self, rhs: &Self) -> Result<Self> {
        self.div_ref(rhs)
    }
}

/// Coefficients (ascending degree) of the unique degree <= n-1 interpolant
/// through `(nodes[i], values[i])`, by Newton's divided differences. The
/// nodes must be pairwise distinct.
pub fn lagrange_interpolate<T: FieldScalar>(nodes: &[T], values: &[T]) -> Result<Vec<T>> {
    assert_eq!(nodes.len(), values.len());
    let n = nodes.len();
    if n == 0 {
        return Ok(vec![]);
    }
    let zero = nodes[0].zero_like();
    // divided-difference table, in place
    let mut dd: Vec<T> = values.to_vec();
    for level in 1..n {
        for i in (level..n).rev() {
            let num = dd[i].sub_val(&dd[i - 1]);
            let den = nodes[i].sub_val(&nodes[i - level]);
            dd[i] = num.div_val(&den)?;
        }
    }
    // Horner expansion of the Newton form into monomial coefficients
    let mut coeffs = vec![zero.clone(); n];
    coeffs[0] = dd[n - 1].clone();
    for i in (0..n - 1).rev() {
        // multiply by (x - nodes[i]) and add dd[i]
        for j in (1..n).rev() {
            let shifted = coeffs[j - 1].sub_val(&coeffs[j].mul_val(&nodes[i]));
            coeffs[j] = shifted;
        }
        coeffs[0] = dd[i].sub_val(&coeffs[0].mul_val(&nodes[i]));
    }
    Ok(coeffs)
}

/// Strip common integer content from a slice of rationals, returning integer
/// numerators with positive leading entry. Used to canonicalize generator
/// coefficient vectors. Returns None for an all-zero slice.
pub fn primitive_part(coeffs: &[Rational]) -> Option<Vec<BigInt>> {
    use num_integer::Integer;
    if coeffs.iter().all(|c| c.is_zero()) {
        return None;
    }
    let mut denom_lcm = BigInt::one();
    for c in coeffs {
        denom_lcm = denom_lcm.lcm(c.denom());
    }
    let ints: Vec<BigInt> = coeffs
        .iter()
        .map(|c| c.numer() * (&denom_lcm / c.denom()))
        .collect();
    let mut g = BigInt::zero();
    for v in &ints {
        g = g.gcd(v);
    }
    let lead_neg = ints
        .iter()
        .rev()
        .find(|v| !v.is_zero())
        .map(|v| v.is_negative())
        .unwrap_or(false);
    if lead_neg {
        g = -g;
    }
    Some(ints.iter().map(|v| v / &g).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_small_conductors() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]); // x - 1
        assert_eq!(cyclotomic_polynomial(2), vec![1, 1]); // x + 1
        assert_eq!(cyclotomic_polynomial(3), vec![1, 1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]); // x^2 + 1
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(8), vec![1, 0, 0, 0, 1]); // x^4 + 1
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn phi_matches_degree() {
        for m in 1..=30u64 {
            assert_eq!(
                cyclotomic_polynomial(m).len() as u64 - 1,
                euler_phi(m),
                "m={m}"
            );
        }
    }

    #[test]
    fn zeta4_squared_is_minus_one() {
        let i = CycloElem::zeta(4);
        let i2 = (&i * &i).clone();
        assert_eq!(i2, CycloElem::from_rational(4, rat(-1)));
    }

    #[test]
    fn sqrt2_in_q_zeta8() {
        // (zeta_8 + zeta_8^{-1})^2 = 2
        let z = CycloElem::zeta(8);
        let zinv = CycloElem::zeta_pow(8, -1);
        let s = &z + &zinv;
        let s2 = &s * &s;
        assert_eq!(s2, CycloElem::from_rational(8, rat(2)));
    }

    #[test]
    fn primitivity_under_phi_reduction() {
        // zeta_m^m = 1 and zeta_m^k != 1 for 0 < k < m, all m <= 16
        for m in 1..=16u64 {
            let one = CycloElem::one(m);
            for k in 1..m {
                assert_ne!(CycloElem::zeta_pow(m, k as i64), one, "m={m} k={k}");
            }
            assert_eq!(CycloElem::zeta_pow(m, m as i64), one, "m={m}");
        }
    }

    #[test]
    fn field_inverse_round_trip() {
        for m in 3..=12u64 {
            let z = CycloElem::zeta(m);
            let a = &(&z * &z) + &CycloElem::from_rational(m, ratio(3, 2));
            let inv = a.inverse().unwrap();
            assert_eq!(&a * &inv, CycloElem::one(m));
        }
    }

    #[test]
    fn division_by_zero_rejected() {
        let zero = CycloElem::zero(5);
        assert!(matches!(zero.inverse(), Err(Error::DivisionByZero)));
    }

    #[test]
    fn rational_parse_format_round_trip() {
        for s in ["3", "-7", "22/7", "-5/9", "0"] {
            let r = parse_rational(s).unwrap();
            assert_eq!(format_rational(&r), s);
        }
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn primitive_part_strips_content() {
        let v = vec![ratio(2, 3), ratio(-4, 3), rat(2)];
        // lcm denom 3 -> [2, -4, 6]; gcd 2 -> [1, -2, 3]
        let p = primitive_part(&v).unwrap();
        assert_eq!(p, vec![BigInt::from(1), BigInt::from(-2), BigInt::from(3)]);
        assert!(primitive_part(&[Rational::zero()]).is_none());
    }
}
