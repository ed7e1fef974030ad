//! The cyclic group `Z/dZ` acting on k-subsets of `{0, …, d-1}` by
//! translation.
//!
//! A k-set with first element 0 is determined by its gaps
//! `δ_j = s_{j+1} - s_j` together with the closing gap `π = d - s_k`. The
//! resulting cyclic composition `(δ_1, …, δ_{k-1}, π)` of `d` into `k`
//! positive parts is what the translation action rotates: the first-element-0
//! members of an orbit are exactly the rotations of that composition (the
//! sliding class). Orbit transversals are therefore necklaces of
//! compositions, and the stabilizer order is the composition's number of
//! repetitions.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{invalid, Result};

/// A k-element subset of `Z/dZ`, stored sorted in `{0, …, d-1}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct KSet {
    elements: Vec<usize>,
    modulus: usize,
}

impl KSet {
    /// Validates and sorts `elements`; rejects duplicates, values `>= d` and
    /// the empty set.
    pub fn new(mut elements: Vec<usize>, modulus: usize) -> Result<Self> {
        if elements.is_empty() {
            return Err(invalid("a k-set needs at least one element"));
        }
        elements.sort_unstable();
        if let Some(&x) = elements.iter().find(|&&x| x >= modulus) {
            return Err(invalid(format!(
                "element {x} is not below the modulus {modulus}"
            )));
        }
        if elements.windows(2).any(|w| w[0] == w[1]) {
            return Err(invalid("k-set elements must be distinct"));
        }
        Ok(Self { elements, modulus })
    }

    /// `{start | δ}`: the set `start, start + δ_1, start + δ_1 + δ_2, …`
    /// reduced mod d.
    pub fn from_start(start: usize, dv: &DifferenceVector) -> Self {
        let d = dv.modulus;
        let mut acc = start % d;
        let mut elements = vec![acc];
        for &gap in &dv.parts {
            acc = (acc + gap) % d;
            elements.push(acc);
        }
        elements.sort_unstable();
        Self {
            elements,
            modulus: d,
        }
    }

    /// The first-element-0 set whose extended composition is `parts`.
    fn from_composition(parts: &[usize], modulus: usize) -> Self {
        let mut elements = Vec::with_capacity(parts.len());
        let mut acc = 0;
        for &part in parts {
            elements.push(acc);
            acc += part;
        }
        debug_assert_eq!(acc, modulus);
        Self { elements, modulus }
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn modulus(&self) -> usize {
        self.modulus
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn first(&self) -> usize {
        self.elements[0]
    }

    /// The cyclic gaps starting at the first element; sums to `d`.
    pub fn extended_composition(&self) -> Vec<usize> {
        let mut c: Vec<usize> = self.elements.windows(2).map(|w| w[1] - w[0]).collect();
        c.push(self.modulus - self.elements[self.elements.len() - 1] + self.elements[0]);
        c
    }
}

impl fmt::Display for KSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, x) in self.elements.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for KSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.elements.serialize(serializer)
    }
}

/// Gaps of a k-set plus its positioning value `π = d - Σδ`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct DifferenceVector {
    parts: Vec<usize>,
    positioning: usize,
    modulus: usize,
}

impl DifferenceVector {
    /// Checks `δ_j ≥ 1` and `Σδ ≤ d - 1`; the positioning value is derived.
    pub fn new(parts: Vec<usize>, modulus: usize) -> Result<Self> {
        let total: usize = parts.iter().sum();
        if parts.contains(&0) || total >= modulus || parts.len() >= modulus {
            return Err(invalid(format!(
                "{parts:?} is not a difference vector modulo {modulus}"
            )));
        }
        Ok(Self {
            positioning: modulus - total,
            parts,
            modulus,
        })
    }

    fn from_extended(extended: &[usize], modulus: usize) -> Self {
        let (last, parts) = extended.split_last().expect("nonempty composition");
        Self {
            parts: parts.to_vec(),
            positioning: *last,
            modulus,
        }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn positioning(&self) -> usize {
        self.positioning
    }

    pub fn modulus(&self) -> usize {
        self.modulus
    }

    /// `(δ_1, …, δ_{k-1}, π)`.
    pub fn extended(&self) -> Vec<usize> {
        let mut c = self.parts.clone();
        c.push(self.positioning);
        c
    }
}

impl fmt::Display for DifferenceVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, x) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "]")
    }
}

/// Stabilizer decomposition `S = S* ⊔ (S* + d') ⊔ … ⊔ (S* + (e-1)d')`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitStructure {
    pub e: usize,
    pub d_prime: usize,
    pub k_prime: usize,
    /// `S*` as a subset of `{0, …, d'-1}` (modulus `d'`).
    pub s_star: KSet,
    /// Canonical first-element-0 member of the orbit.
    pub representative: KSet,
}

/// Members of an orbit sharing one difference vector.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Block {
    pub difference_vector: DifferenceVector,
    pub members: Vec<KSet>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Orbit {
    pub blocks: Vec<Block>,
}

impl Orbit {
    pub fn members(&self) -> impl Iterator<Item = &KSet> {
        self.blocks.iter().flat_map(|b| b.members.iter())
    }

    pub fn len(&self) -> usize {
        self.blocks.iter().map(|b| b.members.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }
}

pub fn translate(set: &KSet, nu: i64) -> KSet {
    let d = set.modulus as i64;
    let shift = nu.rem_euclid(d) as usize;
    let mut elements: Vec<usize> = set
        .elements
        .iter()
        .map(|&x| (x + shift) % set.modulus)
        .collect();
    elements.sort_unstable();
    KSet {
        elements,
        modulus: set.modulus,
    }
}

pub fn difference_vector(set: &KSet) -> DifferenceVector {
    DifferenceVector::from_extended(&set.extended_composition(), set.modulus)
}

fn rotate_right(c: &[usize], j: usize) -> Vec<usize> {
    let k = c.len();
    (0..k).map(|i| c[(i + k - j % k) % k]).collect()
}

/// The k rotations `δ^(0), …, δ^(k-1)` of `(δ, π)`, where `δ^(j)` has
/// positioning value `δ_{k-j}`. Repeated vectors are kept.
pub fn sliding_class(dv: &DifferenceVector) -> Vec<DifferenceVector> {
    let c = dv.extended();
    (0..c.len())
        .map(|j| DifferenceVector::from_extended(&rotate_right(&c, j), dv.modulus))
        .collect()
}

/// [`sliding_class`] with later duplicates removed.
pub fn sliding_class_distinct(dv: &DifferenceVector) -> Vec<DifferenceVector> {
    let mut seen = BTreeSet::new();
    sliding_class(dv)
        .into_iter()
        .filter(|v| seen.insert(v.clone()))
        .collect()
}

/// Lexicographically smallest rotation and the smallest rotation period.
fn necklace_form(c: &[usize]) -> (Vec<usize>, usize) {
    let k = c.len();
    let mut best = c.to_vec();
    let mut period = k;
    for r in 1..k {
        let rot: Vec<usize> = (0..k).map(|i| c[(i + r) % k]).collect();
        if rot == c && period == k {
            period = r;
        }
        if rot < best {
            best = rot;
        }
    }
    (best, period)
}

/// Whether `c` is its own smallest rotation; returns its period if so.
fn canonical_period(c: &[usize]) -> Option<usize> {
    let k = c.len();
    for r in 1..k {
        for i in 0..k {
            let a = c[(i + r) % k];
            let b = c[i];
            if a < b {
                return None;
            }
            if a > b {
                break;
            }
            if i == k - 1 {
                return Some(r);
            }
        }
    }
    Some(k)
}

/// The canonical first-element-0 representative of the orbit of `set`.
pub fn canonical_representative(set: &KSet) -> KSet {
    let (c, _) = necklace_form(&set.extended_composition());
    KSet::from_composition(&c, set.modulus)
}

/// Sliding-class identifier: the smallest rotation of the extended
/// composition. Two sets share an orbit iff their keys agree.
pub fn sliding_class_key(set: &KSet) -> Vec<usize> {
    necklace_form(&set.extended_composition()).0
}

pub fn structure_of(set: &KSet) -> OrbitStructure {
    let d = set.modulus;
    let k = set.len();
    let d_prime = crate::field::divisors(d as u64)
        .into_iter()
        .map(|t| t as usize)
        .find(|&t| translate(set, t as i64) == *set)
        .unwrap_or(d);
    let e = d / d_prime;
    let s_star = KSet {
        elements: set
            .elements
            .iter()
            .copied()
            .filter(|&x| x < d_prime)
            .collect(),
        modulus: d_prime,
    };
    debug_assert_eq!(s_star.len() * e, k);
    OrbitStructure {
        e,
        d_prime,
        k_prime: k / e,
        s_star,
        representative: canonical_representative(set),
    }
}

/// The `d/e` members of the orbit of `set`, grouped into `k/e` blocks of
/// equal difference vector. The first block starts at `set` translated to
/// first element 0.
pub fn orbit_of(set: &KSet) -> Orbit {
    let base = translate(set, -(set.first() as i64));
    let c = base.extended_composition();
    let (_, period) = necklace_form(&c);
    let blocks = (0..period)
        .map(|j| {
            let dv = DifferenceVector::from_extended(&rotate_right(&c, j), set.modulus);
            let members = (0..dv.positioning)
                .map(|t| KSet::from_start(t, &dv))
                .collect();
            Block {
                difference_vector: dv,
                members,
            }
        })
        .collect();
    Orbit { blocks }
}

/// Visits every composition of `total` into `parts` positive parts whose
/// first part is its minimum, in lexicographic order.
fn for_each_composition(total: usize, parts: usize, mut visit: impl FnMut(&[usize])) {
    fn go(
        buf: &mut Vec<usize>,
        remaining: usize,
        parts: usize,
        floor: usize,
        visit: &mut dyn FnMut(&[usize]),
    ) {
        let slots = parts - buf.len();
        if slots == 1 {
            if remaining >= floor {
                buf.push(remaining);
                visit(buf);
                buf.pop();
            }
            return;
        }
        let lo = if buf.is_empty() { 1 } else { floor };
        for x in lo..=remaining.saturating_sub(slots - 1) {
            let floor = if buf.is_empty() { x } else { floor };
            if floor * (slots - 1) > remaining - x {
                break;
            }
            buf.push(x);
            go(buf, remaining - x, parts, floor, visit);
            buf.pop();
        }
    }
    if parts == 0 || parts > total {
        return;
    }
    go(&mut Vec::with_capacity(parts), total, parts, 1, &mut visit);
}

fn check_sizes(d: usize, k: usize) -> Result<()> {
    if k == 0 || k > d {
        return Err(invalid(format!("need 1 <= k <= d, got d = {d}, k = {k}")));
    }
    Ok(())
}

/// Canonical orbit representatives of all k-subsets of `Z/dZ`, keyed by
/// stabilizer order `e`. Every divisor of `gcd(d, k)` is present, possibly
/// with an empty list.
pub fn transversals(d: usize, k: usize) -> Result<BTreeMap<usize, Vec<KSet>>> {
    check_sizes(d, k)?;
    let g = num_integer::gcd(d, k);
    let mut out: BTreeMap<usize, Vec<KSet>> = crate::field::divisors(g as u64)
        .into_iter()
        .map(|e| (e as usize, Vec::new()))
        .collect();
    for_each_composition(d, k, |c| {
        if let Some(period) = canonical_period(c) {
            out.get_mut(&(k / period))
                .expect("period divides gcd(d, k)")
                .push(KSet::from_composition(c, d));
        }
    });
    Ok(out)
}

/// Canonical representatives of the orbits with stabilizer order exactly `e`.
pub fn transversal(d: usize, k: usize, e: usize) -> Result<Vec<KSet>> {
    check_sizes(d, k)?;
    if e == 0 || num_integer::gcd(d, k) % e != 0 {
        return Err(invalid(format!("e = {e} does not divide gcd({d}, {k})")));
    }
    Ok(transversals(d, k)?.remove(&e).unwrap_or_default())
}

/// Orbit transversals for k = 3 built by peeling the triangle of
/// difference vectors `[ij]`, `i + j <= d - 1`, one row of minimal first
/// entry at a time.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct K3Transversal {
    /// Vectors `[n j]` with `n <= j <= d - 2n - 1`, for every `n` with
    /// `3n + 1 <= d`; representatives of the full-length orbits.
    pub full: Vec<DifferenceVector>,
    /// `[d/3, d/3]` when `3 | d`; the orbit of length `d/3`.
    pub short: Vec<DifferenceVector>,
}

impl K3Transversal {
    pub fn full_sets(&self) -> Vec<KSet> {
        self.full.iter().map(|dv| KSet::from_start(0, dv)).collect()
    }

    pub fn short_sets(&self) -> Vec<KSet> {
        self.short
            .iter()
            .map(|dv| KSet::from_start(0, dv))
            .collect()
    }
}

pub fn transversal_k3(d: usize) -> Result<K3Transversal> {
    if d < 3 {
        return Err(invalid(format!("k = 3 transversals need d >= 3, got {d}")));
    }
    let mut full = Vec::new();
    let mut n = 1;
    while 3 * n < d {
        for j in n..=d - 2 * n - 1 {
            full.push(DifferenceVector::new(vec![n, j], d)?);
        }
        n += 1;
    }
    let short = if d % 3 == 0 {
        vec![DifferenceVector::new(vec![d / 3, d / 3], d)?]
    } else {
        Vec::new()
    };
    Ok(K3Transversal { full, short })
}

pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// The arithmetic Möbius function.
pub fn mobius(mut n: u64) -> i64 {
    let mut sign = 1;
    let mut f = 2;
    while f * f <= n {
        if n % f == 0 {
            n /= f;
            if n % f == 0 {
                return 0;
            }
            sign = -sign;
        }
        f += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

fn euler_phi(n: u64) -> u64 {
    (1..=n).filter(|&j| num_integer::gcd(j, n) == 1).count() as u64
}

/// Number of rotation orbits of nonempty subsets of `Z/dZ`, i.e. binary
/// necklaces of length `d` minus the empty one. Saturates at `u128::MAX`.
pub fn subset_orbit_count(d: usize) -> u128 {
    if d == 0 {
        return 0;
    }
    if d >= 127 {
        return u128::MAX;
    }
    let total: u128 = crate::field::divisors(d as u64)
        .into_iter()
        .map(|t| euler_phi(t) as u128 * (1u128 << (d as u64 / t)))
        .sum();
    total / d as u128 - 1
}

/// `Σ_{e | δ} μ(δ/e) · C(e·d̄, e·k̄)` with `δ = gcd(d, k)`, `d̄ = d/δ`,
/// `k̄ = k/δ`. This equals the number of k-sets with trivial stabilizer,
/// `d · #T_1(d, k)`.
pub fn mobius_sum(d: usize, k: usize) -> i128 {
    let g = num_integer::gcd(d, k) as u64;
    let (db, kb) = (d as u64 / g, k as u64 / g);
    crate::field::divisors(g)
        .into_iter()
        .map(|e| mobius(g / e) as i128 * binomial(e * db, e * kb) as i128)
        .sum()
}

/// Number of canonical representatives per stabilizer order.
pub fn count_orbits(d: usize, k: usize) -> Result<BTreeMap<usize, u64>> {
    Ok(transversals(d, k)?
        .into_iter()
        .map(|(e, reps)| (e, reps.len() as u64))
        .collect())
}

/// Outcome of the orbit-counting identities for one `(d, k)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountingReport {
    pub d: usize,
    pub k: usize,
    pub counts: BTreeMap<usize, u64>,
    /// `Σ_e (d/e)·#T_e(d,k) = C(d,k)`.
    pub binomial_identity: bool,
    /// `d·#T_1(d,k)` equals [`mobius_sum`].
    pub mobius_corrected: bool,
    /// The printed variant `d̄·#T_δ(d,k)` equals [`mobius_sum`]. Reported, not
    /// required.
    pub mobius_literal: bool,
    /// `#M_e(d,k) = #M_1(d/e, k/e)` for every `e | gcd(d,k)`.
    pub reduction_identity: bool,
}

impl CountingReport {
    /// All identities that are theorems hold.
    pub fn ok(&self) -> bool {
        self.binomial_identity && self.mobius_corrected && self.reduction_identity
    }
}

pub fn check_counting_identities(d: usize, k: usize) -> Result<CountingReport> {
    let counts = count_orbits(d, k)?;
    let g = num_integer::gcd(d, k);
    let orbit_total: u128 = counts
        .iter()
        .map(|(&e, &n)| (d / e) as u128 * n as u128)
        .sum();
    let binomial_identity = orbit_total == binomial(d as u64, k as u64);

    let rhs = mobius_sum(d, k);
    let mobius_corrected = d as i128 * counts[&1] as i128 == rhs;
    let mobius_literal = (d / g) as i128 * counts[&g] as i128 == rhs;

    let mut reduction_identity = true;
    for (&e, &n) in &counts {
        let sub = count_orbits(d / e, k / e)?;
        let primitive_sub = (d / e) as u64 * sub[&1];
        reduction_identity &= (d / e) as u64 * n == primitive_sub;
    }

    Ok(CountingReport {
        d,
        k,
        counts,
        binomial_identity,
        mobius_corrected,
        mobius_literal,
        reduction_identity,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ks(v: &[usize], d: usize) -> KSet {
        KSet::new(v.to_vec(), d).unwrap()
    }

    fn dv(v: &[usize], d: usize) -> DifferenceVector {
        DifferenceVector::new(v.to_vec(), d).unwrap()
    }

    #[test]
    fn kset_validation() {
        assert!(KSet::new(vec![], 3).is_err());
        assert!(KSet::new(vec![0, 3], 3).is_err());
        assert!(KSet::new(vec![1, 1], 3).is_err());
        assert_eq!(ks(&[2, 0], 3).elements(), &[0, 2]);
    }

    #[test]
    fn translations() {
        assert_eq!(translate(&ks(&[0, 1], 3), 1), ks(&[1, 2], 3));
        assert_eq!(translate(&ks(&[1, 2], 3), 2), ks(&[0, 1], 3));
        assert_eq!(translate(&ks(&[0, 2], 4), 2), ks(&[0, 2], 4));
        assert_eq!(translate(&ks(&[0, 1, 3], 5), 5), ks(&[0, 1, 3], 5));
        assert_eq!(translate(&ks(&[0, 1], 3), -1), ks(&[0, 2], 3));
    }

    #[test]
    fn difference_vectors() {
        let v = difference_vector(&ks(&[0, 1], 2));
        assert_eq!((v.parts(), v.positioning()), (&[1][..], 1));
        let v = difference_vector(&ks(&[0, 1, 2], 4));
        assert_eq!((v.parts(), v.positioning()), (&[1, 1][..], 2));
        let v = difference_vector(&ks(&[0, 2], 4));
        assert_eq!((v.parts(), v.positioning()), (&[2][..], 2));
        let v = difference_vector(&ks(&[2], 5));
        assert_eq!((v.parts(), v.positioning()), (&[][..], 5));
        // not first-element-0: π = d - s_k + s_1
        let v = difference_vector(&ks(&[1, 3], 5));
        assert_eq!((v.parts(), v.positioning()), (&[2][..], 3));
    }

    #[test]
    fn difference_vector_validation() {
        assert!(DifferenceVector::new(vec![0, 1], 4).is_err());
        assert!(DifferenceVector::new(vec![2, 2], 4).is_err());
        assert_eq!(dv(&[1, 2], 4).positioning(), 1);
    }

    #[test]
    fn sliding_classes() {
        let sc = |v: &[usize], d| -> Vec<Vec<usize>> {
            sliding_class_distinct(&dv(v, d))
                .into_iter()
                .map(|x| x.parts().to_vec())
                .collect()
        };
        assert_eq!(sc(&[1], 3), vec![vec![1], vec![2]]);
        let mut four = sc(&[1, 1], 4);
        four.sort();
        assert_eq!(four, vec![vec![1, 1], vec![1, 2], vec![2, 1]]);
        assert_eq!(sc(&[2], 4), vec![vec![2]]);
        assert_eq!(sliding_class(&dv(&[2], 4)).len(), 2);
    }

    #[test]
    fn sliding_class_positioning_is_rotated_gap() {
        let base = dv(&[1, 3, 2], 10);
        let c = base.extended();
        for (j, v) in sliding_class(&base).iter().enumerate() {
            let expected = if j == 0 {
                base.positioning()
            } else {
                c[c.len() - 1 - j]
            };
            assert_eq!(v.positioning(), expected);
        }
    }

    #[test]
    fn structures() {
        let s = structure_of(&ks(&[0, 2], 4));
        assert_eq!((s.e, s.d_prime, s.k_prime), (2, 2, 1));
        assert_eq!(s.s_star, ks(&[0], 2));

        let s = structure_of(&ks(&[0, 1], 4));
        assert_eq!((s.e, s.d_prime, s.k_prime), (1, 4, 2));
        assert_eq!(s.s_star, ks(&[0, 1], 4));

        let s = structure_of(&ks(&[0, 1, 2, 3], 4));
        assert_eq!((s.e, s.d_prime, s.k_prime), (4, 1, 1));
        assert_eq!(s.s_star, ks(&[0], 1));

        let s = structure_of(&ks(&[1, 2, 4, 5], 6));
        assert_eq!((s.e, s.d_prime, s.k_prime), (2, 3, 2));
        assert_eq!(s.s_star, ks(&[1, 2], 3));
        assert_eq!(s.representative, ks(&[0, 1, 3, 4], 6));
    }

    #[test]
    fn orbits() {
        let orbit = orbit_of(&ks(&[0, 1], 3));
        let members: Vec<KSet> = orbit.members().cloned().collect();
        assert_eq!(
            members,
            vec![ks(&[0, 1], 3), ks(&[1, 2], 3), ks(&[0, 2], 3)]
        );
        assert_eq!(orbit.blocks.len(), 2);
        assert_eq!(orbit.blocks[1].members, vec![ks(&[0, 2], 3)]);

        let members: Vec<KSet> = orbit_of(&ks(&[0, 2], 4)).members().cloned().collect();
        assert_eq!(members, vec![ks(&[0, 2], 4), ks(&[1, 3], 4)]);

        let members: Vec<KSet> = orbit_of(&ks(&[0, 1, 2, 3], 4)).members().cloned().collect();
        assert_eq!(members, vec![ks(&[0, 1, 2, 3], 4)]);
    }

    #[test]
    fn transversal_examples() {
        assert_eq!(
            transversal(5, 2, 1).unwrap(),
            vec![ks(&[0, 1], 5), ks(&[0, 2], 5)]
        );
        assert_eq!(transversal(4, 2, 2).unwrap(), vec![ks(&[0, 2], 4)]);
        assert_eq!(transversal(4, 3, 1).unwrap(), vec![ks(&[0, 1, 2], 4)]);
        assert_eq!(transversal(4, 2, 1).unwrap(), vec![ks(&[0, 1], 4)]);
        assert_eq!(transversal(1, 1, 1).unwrap(), vec![ks(&[0], 1)]);
        assert!(transversal(4, 2, 3).is_err());
        assert!(transversal(4, 5, 1).is_err());
    }

    #[test]
    fn k3_peeling_examples() {
        let t = transversal_k3(4).unwrap();
        assert_eq!(t.full_sets(), vec![ks(&[0, 1, 2], 4)]);
        assert!(t.short.is_empty());

        let t = transversal_k3(5).unwrap();
        assert_eq!(t.full_sets(), vec![ks(&[0, 1, 2], 5), ks(&[0, 1, 3], 5)]);

        let t = transversal_k3(6).unwrap();
        assert_eq!(
            t.full_sets(),
            vec![ks(&[0, 1, 2], 6), ks(&[0, 1, 3], 6), ks(&[0, 1, 4], 6)]
        );
        assert_eq!(t.short_sets(), vec![ks(&[0, 2, 4], 6)]);

        let t = transversal_k3(3).unwrap();
        assert!(t.full.is_empty());
        assert_eq!(t.short_sets(), vec![ks(&[0, 1, 2], 3)]);

        assert!(transversal_k3(2).is_err());
    }

    #[test]
    fn k3_peeling_covers_the_same_sliding_classes() {
        for d in 3..=40 {
            let t = transversal_k3(d).unwrap();
            let reps = transversals(d, 3).unwrap();
            let keys = |sets: &[KSet]| -> BTreeSet<Vec<usize>> {
                sets.iter().map(sliding_class_key).collect()
            };
            let full = t.full_sets();
            assert_eq!(keys(&full).len(), full.len(), "d={d}: duplicate classes");
            assert_eq!(keys(&full), keys(&reps[&1]), "d={d}");
            assert_eq!(
                keys(&t.short_sets()),
                keys(reps.get(&3).map_or(&[][..], |v| v)),
                "d={d}"
            );
        }
    }

    #[test]
    fn count_examples() {
        let c = count_orbits(4, 2).unwrap();
        assert_eq!(c, BTreeMap::from([(1, 1), (2, 1)]));
        assert_eq!(count_orbits(5, 2).unwrap(), BTreeMap::from([(1, 2)]));
        for d in 1..=12 {
            let c = count_orbits(d, d).unwrap();
            assert_eq!(c[&d], 1);
            assert_eq!(c.values().sum::<u64>(), 1);
        }
    }

    #[test]
    fn counting_identities_hold() {
        for d in 1..=16 {
            for k in 1..=d {
                let r = check_counting_identities(d, k).unwrap();
                assert!(r.ok(), "{r:?}");
            }
        }
    }

    #[test]
    fn printed_mobius_reading_fails_at_4_2() {
        let r = check_counting_identities(4, 2).unwrap();
        assert_eq!(mobius_sum(4, 2), 4);
        assert!(r.mobius_corrected);
        assert!(!r.mobius_literal);
    }

    #[test]
    fn mobius_values() {
        let mu: Vec<i64> = (1..=12).map(mobius).collect();
        assert_eq!(mu, vec![1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0]);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), 6);
        assert_eq!(binomial(32, 16), 601_080_390);
        assert_eq!(binomial(3, 5), 0);
    }

    #[test]
    fn subset_orbit_counts_match_enumeration() {
        for d in 1..=14 {
            let enumerated: u128 = (1..=d)
                .map(|k| count_orbits(d, k).unwrap().values().sum::<u64>() as u128)
                .sum();
            assert_eq!(subset_orbit_count(d), enumerated, "d={d}");
        }
        assert_eq!(subset_orbit_count(200), u128::MAX);
    }
}
