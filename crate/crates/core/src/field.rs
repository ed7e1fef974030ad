//! Multiplicative structure of a prime field: primitive roots and the
//! cyclotomic classes `C_s = g^s · C_0`, where `C_0` is the subgroup of
//! index `d` in `F_p^*`.

use serde::Serialize;

use crate::error::{invalid, Result};

pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut f = 3;
    while f * f <= n {
        if n % f == 0 {
            return false;
        }
        f += 2;
    }
    true
}

/// Odd primes in `[lo, hi]`, ascending.
pub fn odd_primes(lo: u64, hi: u64) -> impl Iterator<Item = u64> {
    (lo.max(3)..=hi).filter(|&n| n % 2 == 1 && is_prime(n))
}

/// Positive divisors of `n`, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut f = 1;
    while f * f <= n {
        if n % f == 0 {
            small.push(f);
            if f * f != n {
                large.push(n / f);
            }
        }
        f += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

fn check_odd_prime(p: u64) -> Result<()> {
    if p < 3 || !is_prime(p) {
        return Err(invalid(format!("{p} is not an odd prime")));
    }
    if p > u32::MAX as u64 {
        return Err(invalid(format!("{p} exceeds the supported field size")));
    }
    Ok(())
}

/// Multiplicative order of `a` modulo `p`, by trial over the powers.
fn order_mod(a: u64, p: u64) -> u64 {
    let mut x = a % p;
    let mut n = 1;
    while x != 1 {
        x = mul_mod(x, a, p);
        n += 1;
    }
    n
}

pub fn is_primitive_root(g: u64, p: u64) -> bool {
    let g = g % p;
    g != 0 && order_mod(g, p) == p - 1
}

/// Smallest positive primitive root modulo the odd prime `p`.
pub fn find_primitive_root(p: u64) -> Result<u64> {
    check_odd_prime(p)?;
    (2..p)
        .find(|&g| is_primitive_root(g, p))
        .ok_or_else(|| invalid(format!("no primitive root modulo {p}")))
}

/// Every primitive root modulo `p`, ascending.
pub fn primitive_roots(p: u64) -> Result<Vec<u64>> {
    let g = find_primitive_root(p)?;
    let mut roots: Vec<u64> = (1..p - 1)
        .filter(|&j| num_integer::gcd(j, p - 1) == 1)
        .map(|j| pow_mod(g, j, p))
        .collect();
    roots.sort_unstable();
    Ok(roots)
}

/// Immutable description of the cyclotomic classes of index `d` in `F_p^*`.
#[derive(Debug, Clone, Serialize)]
pub struct CyclotomicContext {
    p: u64,
    g: u64,
    d: usize,
    m: usize,
    #[serde(skip)]
    class_of: Vec<u32>,
    #[serde(skip)]
    powers: Vec<u32>,
    classes: Vec<Vec<u32>>,
}

const NO_CLASS: u32 = u32::MAX;

impl CyclotomicContext {
    /// Builds the classes for `(p, d)`, using `g` when given and the smallest
    /// primitive root otherwise.
    pub fn new(p: u64, d: usize, g: Option<u64>) -> Result<Self> {
        check_odd_prime(p)?;
        if d == 0 || (p - 1) % d as u64 != 0 {
            return Err(invalid(format!(
                "d = {d} does not divide p - 1 = {}",
                p - 1
            )));
        }
        let g = match g {
            Some(g) if is_primitive_root(g, p) => g % p,
            Some(g) => return Err(invalid(format!("{g} is not a primitive root modulo {p}"))),
            None => find_primitive_root(p)?,
        };
        let m = (p as usize - 1) / d;
        let mut class_of = vec![NO_CLASS; p as usize];
        let mut powers = Vec::with_capacity(p as usize - 1);
        let mut classes = vec![Vec::with_capacity(m); d];
        let mut x = 1u64;
        for i in 0..p as usize - 1 {
            let s = i % d;
            class_of[x as usize] = s as u32;
            powers.push(x as u32);
            classes[s].push(x as u32);
            x = mul_mod(x, g, p);
        }
        for class in &mut classes {
            class.sort_unstable();
        }
        Ok(Self {
            p,
            g,
            d,
            m,
            class_of,
            powers,
            classes,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn g(&self) -> u64 {
        self.g
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Index `s` with `x ∈ C_s`, or `None` for `x ≡ 0`.
    pub fn class_of(&self, x: u64) -> Option<usize> {
        match self.class_of[(x % self.p) as usize] {
            NO_CLASS => None,
            s => Some(s as usize),
        }
    }

    /// Sorted elements of `C_s`.
    pub fn class(&self, s: usize) -> &[u32] {
        &self.classes[s]
    }

    pub fn classes(&self) -> &[Vec<u32>] {
        &self.classes
    }

    /// `g^i mod p`.
    pub fn power(&self, i: u64) -> u64 {
        self.powers[(i % (self.p - 1)) as usize] as u64
    }

    /// The class containing `-1`.
    pub fn negation_class(&self) -> usize {
        let s = if self.d % 2 == 1 || self.m % 2 == 0 {
            0
        } else {
            self.d / 2
        };
        debug_assert_eq!(self.class_of(self.p - 1), Some(s));
        s
    }

    /// The index `r` with `-C_s = C_r`.
    pub fn negate_class(&self, s: usize) -> Result<usize> {
        if s >= self.d {
            return Err(invalid(format!(
                "class index {s} out of range for d = {}",
                self.d
            )));
        }
        Ok((s + self.negation_class()) % self.d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sorted(v: &[u32]) -> Vec<u32> {
        let mut v = v.to_vec();
        v.sort_unstable();
        v
    }

    #[test]
    fn smallest_primitive_roots() {
        // orders mod 7: ord(2) = 3, ord(3) = 6
        assert_eq!(pow_mod(2, 3, 7), 1);
        assert_eq!(find_primitive_root(7).unwrap(), 3);
        assert_eq!(find_primitive_root(5).unwrap(), 2);
        assert_eq!(find_primitive_root(3).unwrap(), 2);
        assert!(find_primitive_root(9).is_err());
        assert!(find_primitive_root(2).is_err());
        assert!(find_primitive_root(1).is_err());
    }

    #[test]
    fn primitive_roots_of_13() {
        assert_eq!(primitive_roots(13).unwrap(), vec![2, 6, 7, 11]);
    }

    #[test]
    fn classes_for_small_fields() {
        let ctx = CyclotomicContext::new(7, 3, Some(3)).unwrap();
        assert_eq!(ctx.class(0), &[1, 6]);
        assert_eq!(ctx.class(1), &[3, 4]);
        assert_eq!(ctx.class(2), &[2, 5]);

        let ctx = CyclotomicContext::new(5, 2, Some(2)).unwrap();
        assert_eq!(ctx.class(0), &[1, 4]);
        assert_eq!(ctx.class(1), &[2, 3]);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(matches!(
            CyclotomicContext::new(7, 7, None),
            Err(crate::Error::InvalidArgument(_))
        ));
        assert!(CyclotomicContext::new(7, 0, None).is_err());
        assert!(CyclotomicContext::new(10, 3, None).is_err());
        assert!(CyclotomicContext::new(7, 3, Some(2)).is_err());
    }

    #[test]
    fn negation_class_cases() {
        let ctx = |p, d| CyclotomicContext::new(p, d, None).unwrap();
        assert_eq!(ctx(7, 3).negation_class(), 0);
        assert_eq!(ctx(13, 4).negation_class(), 2);
        assert_eq!(ctx(17, 4).negation_class(), 0);
        assert_eq!(ctx(13, 4).negate_class(2).unwrap(), 0);
        assert_eq!(ctx(17, 4).negate_class(2).unwrap(), 2);
        assert_eq!(ctx(7, 3).negate_class(1).unwrap(), 1);
        assert!(ctx(7, 3).negate_class(3).is_err());
    }

    #[test]
    fn negation_class_matches_lookup_below_1000() {
        for p in odd_primes(3, 1000) {
            for d in divisors(p - 1) {
                let ctx = CyclotomicContext::new(p, d as usize, None).unwrap();
                assert_eq!(
                    ctx.class_of(p - 1),
                    Some(ctx.negation_class()),
                    "p={p} d={d}"
                );
                for s in 0..ctx.d() {
                    let r = ctx.negate_class(s).unwrap();
                    assert_eq!(ctx.negate_class(r).unwrap(), s);
                    assert!(ctx
                        .class(s)
                        .iter()
                        .all(|&x| ctx.class_of(p - x as u64) == Some(r)));
                }
            }
        }
    }

    #[test]
    fn classes_partition_units_and_multiply() {
        for p in odd_primes(3, 120) {
            for d in divisors(p - 1) {
                let ctx = CyclotomicContext::new(p, d as usize, None).unwrap();
                let mut all: Vec<u32> = ctx.classes().concat();
                all.sort_unstable();
                assert_eq!(all, (1..p as u32).collect::<Vec<_>>());
                assert!(ctx.classes().iter().all(|c| c.len() == ctx.m()));
                for a in 0..ctx.d() {
                    let lambda = ctx.class(a)[0] as u64;
                    for s in 0..ctx.d() {
                        let image: Vec<u32> = ctx
                            .class(s)
                            .iter()
                            .map(|&x| mul_mod(lambda, x as u64, p) as u32)
                            .collect();
                        assert_eq!(sorted(&image), ctx.class((a + s) % ctx.d()));
                    }
                }
            }
        }
    }

    #[test]
    fn powers_are_distinct() {
        let ctx = CyclotomicContext::new(101, 5, None).unwrap();
        let mut seen = [false; 101];
        for i in 0..100 {
            let x = ctx.power(i) as usize;
            assert!(!seen[x]);
            seen[x] = true;
            assert_eq!(ctx.class_of(x as u64), Some(i as usize % 5));
        }
    }

    #[test]
    fn divisors_ascending() {
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(16), vec![1, 2, 4, 8, 16]);
        assert_eq!(divisors(1), vec![1]);
    }
}
