//! Portraits as combinatorial objects: cycle structure, fiber partitions,
//! admissibility, obstruction predicates, and enumeration of portrait pairs
//! up to combinatorial equivalence.
//!
//! A portrait is a total map `P : {1,…,n} -> {1,…,n}`. Pairs `{P,Q}` are
//! considered up to simultaneous relabeling by a permutation and up to
//! swapping the two portraits.

use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

/// A total function on `{1,…,n}`, stored one-indexed.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Portrait {
    map: Vec<u8>,
}

impl Portrait {
    /// Build from one-indexed images; every entry must lie in `1..=n`.
    pub fn new(map: Vec<u8>) -> Result<Self> {
        let n = map.len();
        if n == 0 {
            return Err(Error::InvalidPortrait("empty map".into()));
        }
        if n > 255 {
            return Err(Error::InvalidPortrait("more than 255 points".into()));
        }
        for (i, &v) in map.iter().enumerate() {
            if v == 0 || v as usize > n {
                return Err(Error::InvalidPortrait(format!(
                    "entry {} at position {} is outside 1..={}",
                    v,
                    i + 1,
                    n
                )));
            }
        }
        Ok(Portrait { map })
    }

    /// Parse the text format `i1,i2,…,in`.
    pub fn parse(s: &str) -> Result<Self> {
        let map = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u8>()
                    .map_err(|_| Error::InvalidPortrait(format!("bad entry `{t}`")))
            })
            .collect::<Result<Vec<u8>>>()?;
        Self::new(map)
    }

    pub fn n(&self) -> usize {
        self.map.len()
    }

    /// One-indexed application: `P(i)`.
    pub fn apply(&self, i: usize) -> usize {
        self.map[i - 1] as usize
    }

    pub fn entries(&self) -> &[u8] {
        &self.map
    }

    /// The identity portrait on `[n]`.
    pub fn identity(n: usize) -> Self {
        Portrait {
            map: (1..=n as u8).collect(),
        }
    }

    /// The constant portrait sending everything to `target`.
    pub fn constant(n: usize, target: u8) -> Self {
        Portrait {
            map: vec![target; n],
        }
    }

    pub fn is_bijection(&self) -> bool {
        let mut seen = vec![false; self.n()];
        for &v in &self.map {
            if seen[v as usize - 1] {
                return false;
            }
            seen[v as usize - 1] = true;
        }
        true
    }

    pub fn is_constant(&self) -> bool {
        self.map.iter().all(|&v| v == self.map[0])
    }

    pub fn fixed_point_count(&self) -> usize {
        self.map
            .iter()
            .enumerate()
            .filter(|(i, &v)| v as usize == i + 1)
            .count()
    }

    pub fn image_size(&self) -> usize {
        let mut seen = vec![false; self.n()];
        for &v in &self.map {
            seen[v as usize - 1] = true;
        }
        seen.iter().filter(|&&b| b).count()
    }

    /// Relabel by `sigma` (0-indexed permutation): returns
    /// `sigma^{-1} . P . sigma`.
    pub fn relabel(&self, sigma: &[u8]) -> Self {
        let n = self.n();
        debug_assert_eq!(sigma.len(), n);
        let mut inv = vec![0u8; n];
        for (i, &s) in sigma.iter().enumerate() {
            inv[s as usize] = i as u8;
        }
        let mut map = vec![0u8; n];
        for i in 0..n {
            map[i] = inv[self.map[sigma[i] as usize] as usize - 1] + 1;
        }
        Portrait { map }
    }
}

impl fmt::Display for Portrait {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.map.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl fmt::Debug for Portrait {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

/// Count the periodic cycles of a portrait, keyed by exact cycle length.
pub fn cycle_census(p: &Portrait) -> BTreeMap<usize, usize> {
    let n = p.n();
    // After n iterations every point has entered a cycle.
    let mut cur: Vec<usize> = (1..=n).collect();
    for _ in 0..n {
        for x in cur.iter_mut() {
            *x = p.apply(*x);
        }
    }
    let mut periodic = vec![false; n + 1];
    for &x in &cur {
        periodic[x] = true;
    }
    let mut census = BTreeMap::new();
    let mut visited = vec![false; n + 1];
    for i in 1..=n {
        if periodic[i] && !visited[i] {
            let mut len = 0;
            let mut x = i;
            loop {
                visited[x] = true;
                len += 1;
                x = p.apply(x);
                if x == i {
                    break;
                }
            }
            *census.entry(len).or_insert(0) += 1;
        }
    }
    census
}

/// Number of orbits (weakly connected components of the functional graph).
pub fn orbit_count(p: &Portrait) -> usize {
    let n = p.n();
    const UNSEEN: usize = usize::MAX;
    const ON_PATH: usize = usize::MAX - 1;
    let mut comp = vec![UNSEEN; n + 1];
    let mut next = 0;
    for start in 1..=n {
        if comp[start] != UNSEEN {
            continue;
        }
        let mut path = vec![];
        let mut x = start;
        while comp[x] == UNSEEN {
            comp[x] = ON_PATH;
            path.push(x);
            x = p.apply(x);
        }
        let label = if comp[x] == ON_PATH {
            let fresh = next;
            next += 1;
            fresh
        } else {
            comp[x]
        };
        for v in path {
            comp[v] = label;
        }
    }
    next
}

/// Moebius function by trial division.
pub fn moebius(mut n: u64) -> i64 {
    debug_assert!(n >= 1);
    let mut primes = 0;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            primes += 1;
        }
        p += 1;
    }
    if n > 1 {
        primes += 1;
    }
    if primes % 2 == 0 {
        1
    } else {
        -1
    }
}

/// The k-th necklace polynomial evaluated at d:
/// `M_k(d) = (1/k) * sum_{j|k} mu(k/j) d^j`,
/// the maximal number of k-cycles of a degree-d polynomial.
pub fn necklace(k: u64, d: i64) -> i64 {
    assert!(k >= 1);
    let mut sum: i128 = 0;
    for j in 1..=k {
        if k % j == 0 {
            sum += moebius(k / j) as i128 * (d as i128).pow(j as u32);
        }
    }
    i64::try_from(sum / k as i128).expect("necklace value exceeds i64")
}

/// Degree-d admissibility for d >= 2: at most d preimages per point and at
/// most `M_k(d)` cycles of each length k.
pub fn is_admissible(p: &Portrait, d: i64) -> bool {
    assert!(d >= 2, "is_admissible is for d >= 2; see low_degree_admissible");
    let n = p.n();
    let mut preimages = vec![0i64; n + 1];
    for i in 1..=n {
        preimages[p.apply(i)] += 1;
    }
    if preimages.iter().any(|&c| c > d) {
        return false;
    }
    cycle_census(p)
        .iter()
        .all(|(&k, &count)| count as i64 <= necklace(k as u64, d))
}

/// Realizability test in degree 0 or 1.
///
/// Degree 0 holds exactly for constant portraits. Degree 1 requires a
/// bijection that is the identity or has at most one fixed point, and whose
/// nontrivial cycles all share one length covering all but at most one point.
pub fn low_degree_admissible(p: &Portrait, d: i64) -> bool {
    match d {
        0 => p.is_constant(),
        1 => {
            if !p.is_bijection() {
                return false;
            }
            let census = cycle_census(p);
            let fixed = census.get(&1).copied().unwrap_or(0);
            let long_lengths: Vec<usize> =
                census.keys().copied().filter(|&k| k > 1).collect();
            if long_lengths.is_empty() {
                // all points fixed: must be the identity
                return fixed == p.n();
            }
            // a single nontrivial cycle length, at most one fixed point
            long_lengths.len() == 1 && fixed <= 1
        }
        _ => panic!("low_degree_admissible expects d in {{0, 1}}"),
    }
}

/// Dimension of the space of degree-1 realizations: the orbit count, plus one
/// when the portrait has no fixed point.
pub fn linear_conf_dim(p: &Portrait) -> Result<usize> {
    if !low_degree_admissible(p, 1) {
        return Err(Error::Domain(format!(
            "portrait {p} is not degree-1 admissible"
        )));
    }
    let gamma = orbit_count(p);
    if p.fixed_point_count() > 0 {
        Ok(gamma)
    } else {
        Ok(gamma + 1)
    }
}

/// The partition of `[n]` into nonempty preimage sets of `P`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FiberPartition {
    parts: Vec<Vec<u8>>,
}

impl FiberPartition {
    /// Parts with elements sorted, parts sorted lexicographically.
    pub fn parts(&self) -> &[Vec<u8>] {
        &self.parts
    }

    pub fn part_sizes(&self) -> Vec<usize> {
        self.parts.iter().map(|p| p.len()).collect()
    }

    pub fn contains_part(&self, part: &[u8]) -> bool {
        self.parts.iter().any(|p| p == part)
    }
}

impl fmt::Display for FiberPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .parts
            .iter()
            .map(|p| {
                let elems: Vec<String> = p.iter().map(|v| v.to_string()).collect();
                format!("{{{}}}", elems.join(","))
            })
            .collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

pub fn fiber_partition(p: &Portrait) -> FiberPartition {
    let n = p.n();
    let mut fibers: Vec<Vec<u8>> = vec![vec![]; n + 1];
    for i in 1..=n {
        fibers[p.apply(i)].push(i as u8);
    }
    let mut parts: Vec<Vec<u8>> = fibers.into_iter().filter(|f| !f.is_empty()).collect();
    parts.sort();
    FiberPartition { parts }
}

/// Unordered pairs `{i,j}` with `p(i)=p(j)` and `q(i)=q(j)`; returned sorted.
pub fn common_coincidence_pairs(p: &Portrait, q: &Portrait) -> Result<Vec<(u8, u8)>> {
    if p.n() != q.n() {
        return Err(Error::SizeMismatch(p.n(), q.n()));
    }
    let n = p.n();
    let mut out = vec![];
    for i in 1..=n {
        for j in i + 1..=n {
            if p.apply(i) == p.apply(j) && q.apply(i) == q.apply(j) {
                out.push((i as u8, j as u8));
            }
        }
    }
    Ok(out)
}

/// True when the fiber partition consists of exactly two parts of size n/2.
pub fn is_two_image(p: &Portrait) -> bool {
    let n = p.n();
    if n % 2 != 0 {
        return false;
    }
    let fp = fiber_partition(p);
    fp.parts.len() == 2 && fp.parts.iter().all(|part| part.len() == n / 2)
}

/// Combinatorial obstruction verdicts for a portrait pair in degree d.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Obstruction {
    Interpolation,
    Coincidence,
    TwoImage,
}

impl fmt::Display for Obstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Obstruction::Interpolation => write!(f, "interpolation"),
            Obstruction::Coincidence => write!(f, "coincidence"),
            Obstruction::TwoImage => write!(f, "two_image"),
        }
    }
}

/// All obstructions flagged for `{p,q}` in degree `d`, in the fixed order
/// interpolation, coincidence, two-image.
///
/// * interpolation: `p != q` yet they agree on at least `d+1` points;
/// * coincidence: the fiber partitions differ, and realizations would be
///   forced to be left associates (one common coincidence pair in degree 2,
///   two in degree 3, or a shared fiber with exactly d elements in any
///   degree);
/// * two-image: both portraits are two-image on `2d` points with different
///   fiber partitions.
pub fn obstructions(p: &Portrait, q: &Portrait, d: i64) -> Result<Vec<Obstruction>> {
    if p.n() != q.n() {
        return Err(Error::SizeMismatch(p.n(), q.n()));
    }
    let n = p.n();
    let mut out = vec![];
    let agree = (1..=n).filter(|&i| p.apply(i) == q.apply(i)).count();
    if p != q && agree as i64 >= d + 1 {
        out.push(Obstruction::Interpolation);
    }
    let fp = fiber_partition(p);
    let fq = fiber_partition(q);
    if fp != fq {
        let ncommon = common_coincidence_pairs(p, q)?.len();
        let shares_d_part = fp
            .parts()
            .iter()
            .any(|part| part.len() as i64 == d && fq.contains_part(part));
        if (d == 2 && ncommon >= 1) || (d == 3 && ncommon >= 2) || shares_d_part {
            out.push(Obstruction::Coincidence);
        }
        if n as i64 == 2 * d && is_two_image(p) && is_two_image(q) {
            out.push(Obstruction::TwoImage);
        }
    }
    Ok(out)
}

/// First obstruction in the fixed order, or None.
pub fn obstruction(p: &Portrait, q: &Portrait, d: i64) -> Result<Option<Obstruction>> {
    Ok(obstructions(p, q, d)?.into_iter().next())
}

/// A combinatorial equivalence class of an unordered portrait pair.
///
/// `p` and `q` are the canonical representatives; `canonical_key` is the
/// byte-minimal `serialize(A)|serialize(B)` over all simultaneous relabelings
/// and the swap, so equal keys mean equivalent pairs.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PairClass {
    pub p: Portrait,
    pub q: Portrait,
    pub canonical_key: String,
}

impl PairClass {
    fn from_canonical(p: Portrait, q: Portrait) -> Self {
        let canonical_key = format!("{p}|{q}");
        PairClass { p, q, canonical_key }
    }

    /// Parse a canonical key back into its two portraits.
    pub fn parse_key(key: &str) -> Result<(Portrait, Portrait)> {
        let (a, b) = key
            .split_once('|')
            .ok_or_else(|| Error::Domain(format!("bad pair key `{key}`")))?;
        Ok((Portrait::parse(a)?, Portrait::parse(b)?))
    }
}

/// All permutations of `0..n` in lexicographic order.
pub fn all_permutations(n: usize) -> Vec<Vec<u8>> {
    let mut perms = vec![];
    let mut cur: Vec<u8> = (0..n as u8).collect();
    loop {
        perms.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (0..n - 1).rev().find(|&i| cur[i] < cur[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
    perms
}

/// Canonical form of an unordered pair by brute force over all relabelings
/// and both orderings.
///
/// The serialized text order coincides with entry-wise order only while
/// entries are single digits, hence the n <= 9 bound.
pub fn canonical_pair(p: &Portrait, q: &Portrait) -> Result<PairClass> {
    if p.n() != q.n() {
        return Err(Error::SizeMismatch(p.n(), q.n()));
    }
    if p.n() > 9 {
        return Err(Error::Domain(
            "canonical keys are defined for at most 9 points".into(),
        ));
    }
    let mut best: Option<(Vec<u8>, Vec<u8>)> = None;
    for sigma in all_permutations(p.n()) {
        let ps = p.relabel(&sigma);
        let qs = q.relabel(&sigma);
        for (a, b) in [(&ps, &qs), (&qs, &ps)] {
            let cand = (a.map.clone(), b.map.clone());
            if best.as_ref().is_none_or(|b0| cand < *b0) {
                best = Some(cand);
            }
        }
    }
    let (a, b) = best.unwrap();
    Ok(PairClass::from_canonical(Portrait { map: a }, Portrait { map: b }))
}

/// Portrait encoded as an integer in base n, entry 1 most significant, so
/// that code order equals entry-wise (and serialized-text) order.
fn code_of(map: &[u8], n: usize) -> u32 {
    let mut code = 0u32;
    for &v in map.iter() {
        code = code * n as u32 + (v as u32 - 1);
    }
    code
}

fn map_of(code: u32, n: usize) -> Vec<u8> {
    let mut map = vec![0u8; n];
    let mut c = code;
    for slot in map.iter_mut().rev() {
        *slot = (c % n as u32) as u8 + 1;
        c /= n as u32;
    }
    map
}

/// Precomputed canonical data for all portraits on `[n]`.
struct CanonTable {
    n: usize,
    perms: Vec<Vec<u8>>,
    /// canonical code per portrait code
    canon: Vec<u32>,
    /// index of one permutation sending the portrait to its canonical form
    to_canon: Vec<u32>,
}

impl CanonTable {
    fn build(n: usize) -> Self {
        let perms = all_permutations(n);
        let total = (n as u32).pow(n as u32) as usize;
        let mut canon = vec![0u32; total];
        let mut to_canon = vec![0u32; total];
        for code in 0..total {
            let p = Portrait { map: map_of(code as u32, n) };
            let mut best = u32::MAX;
            let mut best_perm = 0u32;
            for (pi, sigma) in perms.iter().enumerate() {
                let c = code_of(&p.relabel(sigma).map, n);
                if c < best {
                    best = c;
                    best_perm = pi as u32;
                }
            }
            canon[code] = best;
            to_canon[code] = best_perm;
        }
        CanonTable { n, perms, canon, to_canon }
    }

    fn relabel_code(&self, code: u32, perm_idx: usize) -> u32 {
        let p = Portrait { map: map_of(code, self.n) };
        code_of(&p.relabel(&self.perms[perm_idx]).map, self.n)
    }
}

/// Enumerate one representative per combinatorial equivalence class of
/// unordered pairs `{P,Q}` of degree-d admissible portraits on `[n]`,
/// in ascending canonical-key order.
///
/// `include_diagonal` controls whether classes with `P = Q` are emitted;
/// the published pair totals count distinct-portrait pairs only, so the
/// surveys use `false`.
pub fn enumerate_admissible_pairs(
    n: usize,
    d: i64,
    include_diagonal: bool,
) -> Result<Vec<PairClass>> {
    if n < 2 || d < 2 {
        return Err(Error::Domain("enumeration needs n >= 2 and d >= 2".into()));
    }
    if n > 8 {
        return Err(Error::Domain("enumeration supports n <= 8".into()));
    }
    let table = CanonTable::build(n);
    let total = (n as u32).pow(n as u32);
    let admissible: Vec<u32> = (0..total)
        .filter(|&code| is_admissible(&Portrait { map: map_of(code, n) }, d))
        .collect();

    // canonical representatives of single-portrait classes
    let mut reps: Vec<u32> = admissible
        .iter()
        .map(|&c| table.canon[c as usize])
        .collect();
    reps.sort_unstable();
    reps.dedup();

    let mut classes: Vec<(Vec<u8>, Vec<u8>)> = vec![];
    for &rep in &reps {
        let stab: Vec<usize> = (0..table.perms.len())
            .filter(|&pi| table.relabel_code(rep, pi) == rep)
            .collect();
        // orbit-minimal second components under the stabilizer of `rep`
        let mut seconds: Vec<u32> = admissible
            .iter()
            .map(|&q| {
                stab.iter()
                    .map(|&pi| table.relabel_code(q, pi))
                    .min()
                    .unwrap()
            })
            .collect();
        seconds.sort_unstable();
        seconds.dedup();
        for &x in &seconds {
            if !include_diagonal && x == rep {
                continue;
            }
            // Keep this ordered class only when it is the canonical ordering
            // of its unordered class; the swapped ordering starts with
            // canon(x) and is handled when the outer loop reaches it.
            let cx = table.canon[x as usize];
            if rep < cx {
                classes.push((map_of(rep, n), map_of(x, n)));
            } else if rep == cx {
                // both components lie in the same single-portrait class;
                // compare against the swap partner and keep the smaller
                let sigma1 = table.to_canon[x as usize] as usize;
                let r_conj = table.relabel_code(rep, sigma1);
                let partner = stab
                    .iter()
                    .map(|&pi| table.relabel_code(r_conj, pi))
                    .min()
                    .unwrap();
                if x <= partner {
                    classes.push((map_of(rep, n), map_of(x, n)));
                }
            }
        }
    }
    classes.sort_unstable();
    classes.dedup();
    Ok(classes
        .into_iter()
        .map(|(a, b)| PairClass::from_canonical(Portrait { map: a }, Portrait { map: b }))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Portrait {
        Portrait::parse(s).unwrap()
    }

    #[test]
    fn parse_rejects_bad_entries() {
        assert!(Portrait::parse("1,2,5").is_err());
        assert!(Portrait::parse("0,1").is_err());
        assert!(Portrait::parse("").is_err());
        assert_eq!(p("1,1,2,4").to_string(), "1,1,2,4");
    }

    #[test]
    fn cycle_census_examples() {
        assert_eq!(
            cycle_census(&Portrait::identity(3)),
            BTreeMap::from([(1, 3)])
        );
        assert_eq!(cycle_census(&p("2,1,4,3")), BTreeMap::from([(2, 2)]));
        assert_eq!(cycle_census(&p("1,1,2,4")), BTreeMap::from([(1, 2)]));
    }

    #[test]
    fn cycle_census_respects_point_budget() {
        // sum k * count <= n, equality iff bijection
        for code in 0..256u32 {
            let q = Portrait { map: map_of(code, 4) };
            let total: usize = cycle_census(&q).iter().map(|(k, c)| k * c).sum();
            assert!(total <= 4);
            assert_eq!(total == 4, q.is_bijection());
        }
    }

    #[test]
    fn necklace_examples() {
        for d in 0..7 {
            assert_eq!(necklace(1, d), d);
        }
        assert_eq!(necklace(2, 2), 1);
        assert_eq!(necklace(4, 2), 3);
        assert_eq!(necklace(3, 3), 8);
    }

    #[test]
    fn necklace_counts_words() {
        // classical identity: sum_{j|k} j*M_j(d) = d^k
        for d in 0..=6i64 {
            for k in 1..=8u64 {
                let total: i64 = (1..=k)
                    .filter(|j| k % j == 0)
                    .map(|j| j as i64 * necklace(j, d))
                    .sum();
                assert_eq!(total, d.pow(k as u32), "d={d} k={k}");
            }
        }
    }

    #[test]
    fn admissibility_examples() {
        assert!(!is_admissible(&p("2,1,4,3"), 2)); // two 2-cycles, M_2(2)=1
        let three_four_cycles = p("2,3,4,1,6,7,8,5,10,11,12,9");
        assert!(is_admissible(&three_four_cycles, 2)); // M_4(2)=3
        assert!(!is_admissible(&Portrait::identity(3), 2)); // 3 > M_1(2)=2
    }

    #[test]
    fn admissibility_is_relabeling_invariant() {
        let q = p("1,1,2,4");
        for sigma in all_permutations(4) {
            assert_eq!(is_admissible(&q.relabel(&sigma), 2), is_admissible(&q, 2));
        }
    }

    #[test]
    fn low_degree_examples() {
        assert!(low_degree_admissible(&Portrait::constant(5, 3), 0));
        assert!(!low_degree_admissible(&p("1,2,3"), 0));
        assert!(low_degree_admissible(&p("2,1,4,3"), 1));
        assert!(!low_degree_admissible(&p("1,2,4,3"), 1)); // two fixed + 2-cycle
        assert!(low_degree_admissible(&Portrait::identity(4), 1));
        assert!(!low_degree_admissible(&p("1,1,2,4"), 1)); // not a bijection
        // mixed cycle lengths 2 and 3 are not linearly realizable
        assert!(!low_degree_admissible(&p("2,1,4,5,3"), 1));
    }

    #[test]
    fn linear_conf_dim_examples() {
        assert_eq!(linear_conf_dim(&p("2,1,4,3")).unwrap(), 3);
        let three_four_cycles = p("2,3,4,1,6,7,8,5,10,11,12,9");
        assert_eq!(linear_conf_dim(&three_four_cycles).unwrap(), 4);
        for n in [1, 4, 7] {
            assert_eq!(linear_conf_dim(&Portrait::identity(n)).unwrap(), n);
        }
        assert!(linear_conf_dim(&p("1,1,2,4")).is_err());
    }

    #[test]
    fn fiber_partition_examples() {
        assert_eq!(
            fiber_partition(&p("1,1,2,4")).parts(),
            &[vec![1, 2], vec![3], vec![4]]
        );
        assert_eq!(
            fiber_partition(&Portrait::constant(4, 2)).parts(),
            &[vec![1, 2, 3, 4]]
        );
        assert_eq!(fiber_partition(&p("2,1,4,3")).parts().len(), 4);
    }

    #[test]
    fn coincidence_pair_examples() {
        let a = p("1,1,2,4");
        assert_eq!(common_coincidence_pairs(&a, &a).unwrap(), vec![(1, 2)]);
        let bij = p("2,1,4,3");
        assert!(common_coincidence_pairs(&bij, &a).unwrap().is_empty());
        let x = p("3,3,4,4,3,4");
        let y = p("3,3,4,4,4,3");
        assert_eq!(
            common_coincidence_pairs(&x, &y).unwrap(),
            vec![(1, 2), (3, 4)]
        );
    }

    #[test]
    fn two_image_examples() {
        assert!(is_two_image(&p("3,3,4,4")));
        assert!(!is_two_image(&Portrait::constant(4, 1)));
        assert!(is_two_image(&p("1,1,1,2,2,2")));
        assert!(!is_two_image(&p("1,1,2,4")));
    }

    #[test]
    fn obstruction_interpolation_example() {
        // agree on {1,3,4,6}, differ on {2,5}
        let a = p("3,4,4,6,5,5");
        let b = p("3,1,4,6,3,5");
        assert!(is_admissible(&a, 3) && is_admissible(&b, 3));
        assert_eq!(
            obstruction(&a, &b, 3).unwrap(),
            Some(Obstruction::Interpolation)
        );
    }

    #[test]
    fn obstruction_coincidence_example() {
        // common coincidence pairs {1,2} and {3,4}; different fiber partitions
        let a = p("2,2,5,5,3,5");
        let b = p("4,4,1,1,5,4");
        assert_eq!(
            fiber_partition(&a).parts(),
            &[vec![1u8, 2], vec![3, 4, 6], vec![5]]
        );
        assert_eq!(
            fiber_partition(&b).parts(),
            &[vec![1u8, 2, 6], vec![3, 4], vec![5]]
        );
        assert_eq!(
            obstruction(&a, &b, 3).unwrap(),
            Some(Obstruction::Coincidence)
        );
    }

    #[test]
    fn obstruction_two_image_example() {
        let a = p("3,3,4,4"); // fibers {1,2},{3,4}
        let b = p("2,4,2,4"); // fibers {1,3},{2,4}
        assert_eq!(obstruction(&a, &b, 2).unwrap(), Some(Obstruction::TwoImage));
        // same fiber partition: no obstruction
        let c = p("4,4,3,3");
        assert_eq!(obstruction(&a, &c, 2).unwrap(), None);
    }

    #[test]
    fn obstruction_is_relabeling_invariant() {
        let a = p("2,2,5,5,3,5");
        let b = p("4,4,1,1,5,4");
        for sigma in all_permutations(6).into_iter().step_by(37) {
            assert_eq!(
                obstruction(&a.relabel(&sigma), &b.relabel(&sigma), 3).unwrap(),
                obstruction(&a, &b, 3).unwrap()
            );
        }
    }

    #[test]
    fn canonical_pair_is_swap_and_relabel_invariant() {
        let a = p("1,1,2,4");
        let b = p("1,3,3,1");
        let k0 = canonical_pair(&a, &b).unwrap().canonical_key;
        assert_eq!(canonical_pair(&b, &a).unwrap().canonical_key, k0);
        for sigma in all_permutations(4) {
            let k = canonical_pair(&a.relabel(&sigma), &b.relabel(&sigma))
                .unwrap()
                .canonical_key;
            assert_eq!(k, k0);
        }
        // idempotent on its own representatives
        let c = canonical_pair(&a, &b).unwrap();
        let again = canonical_pair(&c.p, &c.q).unwrap();
        assert_eq!(again.canonical_key, k0);
    }

    #[test]
    fn equivalence_example_pairs_share_a_key() {
        // two labelings of the same unordered pair of 6-point portraits
        let p1 = p("3,4,4,6,5,5");
        let q1 = p("3,1,4,6,3,5");
        let sigma = vec![3u8, 0, 4, 1, 5, 2];
        let p2 = p1.relabel(&sigma);
        let q2 = q1.relabel(&sigma);
        assert_eq!(
            canonical_pair(&p1, &q1).unwrap().canonical_key,
            canonical_pair(&q2, &p2).unwrap().canonical_key
        );
    }

    /// Brute-force class count over all ordered pairs, as an oracle for the
    /// stabilizer-based enumerator.
    fn brute_force_count(n: usize, d: i64, include_diagonal: bool) -> usize {
        let total = (n as u32).pow(n as u32);
        let admissible: Vec<Portrait> = (0..total)
            .map(|c| Portrait { map: map_of(c, n) })
            .filter(|q| is_admissible(q, d))
            .collect();
        let mut keys = std::collections::BTreeSet::new();
        for a in &admissible {
            for b in &admissible {
                if !include_diagonal && a == b {
                    continue;
                }
                keys.insert(canonical_pair(a, b).unwrap().canonical_key);
            }
        }
        keys.len()
    }

    #[test]
    fn enumeration_matches_brute_force_small() {
        for (n, d) in [(2usize, 2i64), (3, 2), (3, 3), (4, 3)] {
            for diag in [false, true] {
                let fast = enumerate_admissible_pairs(n, d, diag).unwrap();
                assert_eq!(
                    fast.len(),
                    brute_force_count(n, d, diag),
                    "(n,d,diag)=({n},{d},{diag})"
                );
                // keys are unique, sorted, and fixed by canonical_pair
                for w in fast.windows(2) {
                    assert!(w[0].canonical_key < w[1].canonical_key);
                }
                for cls in fast.iter().step_by(7) {
                    let again = canonical_pair(&cls.p, &cls.q).unwrap();
                    assert_eq!(again.canonical_key, cls.canonical_key);
                }
            }
        }
    }

    #[test]
    fn enumeration_small_count_is_stable() {
        // all four portraits on [2] are degree-2 admissible; four classes of
        // distinct pairs survive relabeling+swap
        assert_eq!(enumerate_admissible_pairs(2, 2, false).unwrap().len(), 4);
    }
}
