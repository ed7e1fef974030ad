//! Gauss symbols `{M_1, …, M_n}`: the number of tuples `(x_1, …, x_n)` with
//! `x_j ∈ M_j` and `x_1 + … + x_n ≡ 0 (mod p)`.
//!
//! Two independent engines count these tuples. The default folds additive
//! convolutions of indicator vectors over `Z/pZ` and reads the entry at 0;
//! the other walks the tuples directly and serves as the test oracle and as
//! the basis of [`decompose_product`].

use serde::Serialize;

use crate::error::{inconsistent, invalid, Error, Result};
use crate::field::CyclotomicContext;
use crate::orbit::{structure_of, KSet};
use crate::scalar::ExactInt;

/// Default cap on tuple evaluations for [`decompose_product`].
pub const DEFAULT_WORK_LIMIT: u64 = 100_000_000;

/// One argument `M_j` of a Gauss symbol.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SymbolArgument {
    /// The singleton `{x}`.
    Element(u64),
    /// The cyclotomic class `C_s`.
    Class(usize),
}

impl SymbolArgument {
    pub fn resolve(&self, ctx: &CyclotomicContext) -> Result<Vec<u32>> {
        match *self {
            SymbolArgument::Element(x) if x < ctx.p() => Ok(vec![x as u32]),
            SymbolArgument::Element(x) => {
                Err(invalid(format!("residue {x} is not in 0..{}", ctx.p())))
            }
            SymbolArgument::Class(s) if s < ctx.d() => Ok(ctx.class(s).to_vec()),
            SymbolArgument::Class(s) => {
                Err(invalid(format!("class index {s} is not in 0..{}", ctx.d())))
            }
        }
    }
}

/// `(z(S), μ_0, …, μ_{d-1})`: the product `η_S` of the periods indexed by `S`
/// equals `m·z + Σ μ_t η_t`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PeriodDecomposition {
    pub set: KSet,
    pub z: u64,
    pub mu: Vec<u64>,
}

fn product_of_sizes(sets: &[Vec<u32>]) -> Option<u64> {
    sets.iter()
        .try_fold(1u64, |acc, s| acc.checked_mul(s.len() as u64))
}

/// Number of zero-sum tuples drawn from explicit residue sets (each set
/// taken without multiplicity), by iterated convolution.
pub fn zero_sum_count<T: ExactInt>(p: u64, sets: &[Vec<u32>]) -> Result<T> {
    if sets.is_empty() {
        return Err(invalid("a Gauss symbol needs at least one argument"));
    }
    if sets.iter().any(|s| s.iter().any(|&x| x as u64 >= p)) {
        return Err(invalid(format!("residues must lie in 0..{p}")));
    }
    // The total tuple count bounds every accumulator.
    match product_of_sizes(sets) {
        Some(_) => T::from_u64_checked(convolve_u64(p, sets)),
        None => convolve_checked(p, sets),
    }
}

fn convolve_u64(p: u64, sets: &[Vec<u32>]) -> u64 {
    let p = p as usize;
    let (last, init) = sets.split_last().expect("nonempty");
    let mut v = vec![0u64; p];
    match init.split_first() {
        None => v[0] = 1,
        Some((first, rest)) => {
            for &x in first {
                v[x as usize] += 1;
            }
            let mut next = vec![0u64; p];
            for set in rest {
                next.fill(0);
                for (y, &count) in v.iter().enumerate() {
                    if count == 0 {
                        continue;
                    }
                    for &x in set {
                        let mut t = y + x as usize;
                        if t >= p {
                            t -= p;
                        }
                        next[t] += count;
                    }
                }
                std::mem::swap(&mut v, &mut next);
            }
        }
    }
    last.iter().map(|&x| v[(p - x as usize) % p]).sum()
}

fn convolve_checked<T: ExactInt>(p: u64, sets: &[Vec<u32>]) -> Result<T> {
    let p = p as usize;
    let (last, init) = sets.split_last().expect("nonempty");
    let mut v: Vec<T> = vec![T::zero(); p];
    match init.split_first() {
        None => v[0] = T::one(),
        Some((first, rest)) => {
            for &x in first {
                v[x as usize] = v[x as usize].add_c(&T::one())?;
            }
            for set in rest {
                let mut next = vec![T::zero(); p];
                for (y, count) in v.iter().enumerate() {
                    if count.is_zero() {
                        continue;
                    }
                    for &x in set {
                        let t = (y + x as usize) % p;
                        next[t] = next[t].add_c(count)?;
                    }
                }
                v = next;
            }
        }
    }
    last.iter()
        .try_fold(T::zero(), |acc, &x| acc.add_c(&v[(p - x as usize) % p]))
}

/// Brute-force enumeration of the zero-sum tuples. Exponential; test oracle.
pub fn zero_sum_count_brute(p: u64, sets: &[Vec<u32>]) -> Result<u64> {
    fn go(p: u64, sets: &[Vec<u32>], partial: u64) -> u64 {
        match sets.split_first() {
            None => u64::from(partial == 0),
            Some((set, rest)) => set
                .iter()
                .map(|&x| go(p, rest, (partial + x as u64) % p))
                .sum(),
        }
    }
    if sets.is_empty() {
        return Err(invalid("a Gauss symbol needs at least one argument"));
    }
    Ok(go(p, sets, 0))
}

/// `#(left ∩ (R_1 + … + R_n))` where the sumset on the right is taken as a
/// multiset: each element counts once per representation.
pub fn multiset_intersection(p: u64, left: &[u32], summands: &[&[u32]]) -> u64 {
    let p = p as usize;
    let mut tally = vec![0u64; p];
    tally[0] = 1;
    for set in summands {
        let mut next = vec![0u64; p];
        for (y, &n) in tally.iter().enumerate().filter(|(_, &n)| n > 0) {
            for &x in *set {
                next[(y + x as usize) % p] += n;
            }
        }
        tally = next;
    }
    left.iter().map(|&y| tally[y as usize % p]).sum()
}

/// The Gauss symbol `{M_1, …, M_n}` over the classes of `ctx`.
pub fn gauss_symbol<T: ExactInt>(ctx: &CyclotomicContext, args: &[SymbolArgument]) -> Result<T> {
    let sets = resolve_all(ctx, args)?;
    zero_sum_count(ctx.p(), &sets)
}

/// [`gauss_symbol`] computed by direct tuple enumeration.
pub fn gauss_symbol_brute(ctx: &CyclotomicContext, args: &[SymbolArgument]) -> Result<u64> {
    let sets = resolve_all(ctx, args)?;
    zero_sum_count_brute(ctx.p(), &sets)
}

fn resolve_all(ctx: &CyclotomicContext, args: &[SymbolArgument]) -> Result<Vec<Vec<u32>>> {
    if args.is_empty() {
        return Err(invalid("a Gauss symbol needs at least one argument"));
    }
    args.iter().map(|a| a.resolve(ctx)).collect()
}

/// The symbol arguments `{g^{s_1}}, C_{s_2}, …, C_{s_k}` defining `z(S)`.
pub fn z_arguments(ctx: &CyclotomicContext, set: &KSet) -> Vec<SymbolArgument> {
    let mut args = vec![SymbolArgument::Element(ctx.power(set.first() as u64))];
    args.extend(
        set.elements()[1..]
            .iter()
            .map(|&s| SymbolArgument::Class(s)),
    );
    args
}

fn check_set(ctx: &CyclotomicContext, set: &KSet) -> Result<()> {
    if set.modulus() != ctx.d() {
        return Err(invalid(format!(
            "k-set modulus {} does not match d = {}",
            set.modulus(),
            ctx.d()
        )));
    }
    Ok(())
}

/// `z(S)`: the number of zeros among `g^{s_1} + x_2 + … + x_k`,
/// `x_j ∈ C_{s_j}`. A singleton set gives 0.
pub fn z_of<T: ExactInt>(ctx: &CyclotomicContext, set: &KSet) -> Result<T> {
    check_set(ctx, set)?;
    gauss_symbol(ctx, &z_arguments(ctx, set))
}

/// Enumerates the `m^{k-1}` sums `g^{s_1} + g^{d j_2 + s_2} + … + g^{d j_k + s_k}`
/// and tallies zeros and class memberships.
pub fn decompose_product(
    ctx: &CyclotomicContext,
    set: &KSet,
    work_limit: u64,
) -> Result<PeriodDecomposition> {
    check_set(ctx, set)?;
    let k = set.len();
    let work = (ctx.m() as u128)
        .checked_pow(k as u32 - 1)
        .unwrap_or(u128::MAX);
    if work > work_limit as u128 {
        return Err(Error::ResourceLimit {
            work,
            limit: work_limit as u128,
        });
    }
    let p = ctx.p() as usize;
    let mut tally = vec![0u64; p];
    let start = ctx.power(set.first() as u64) as usize;
    let classes: Vec<&[u32]> = set.elements()[1..].iter().map(|&s| ctx.class(s)).collect();

    fn walk(classes: &[&[u32]], partial: usize, p: usize, tally: &mut [u64]) {
        match classes.split_first() {
            None => tally[partial] += 1,
            Some((class, rest)) => {
                for &x in *class {
                    let mut t = partial + x as usize;
                    if t >= p {
                        t -= p;
                    }
                    walk(rest, t, p, tally);
                }
            }
        }
    }
    walk(&classes, start, p, &mut tally);

    let mut mu = vec![0u64; ctx.d()];
    for (x, &n) in tally.iter().enumerate().skip(1) {
        if n > 0 {
            mu[ctx.class_of(x as u64).expect("nonzero residue")] += n;
        }
    }
    Ok(PeriodDecomposition {
        set: set.clone(),
        z: tally[0],
        mu,
    })
}

/// `(p·z(S) - m^{k-1}) / e`: the sum of `η_T` over the orbit of `S`, where `e`
/// is the stabilizer order of `S`.
pub fn orbit_sum<T: ExactInt>(ctx: &CyclotomicContext, set: &KSet) -> Result<T> {
    let z: T = z_of(ctx, set)?;
    orbit_sum_from_z(ctx, set, &z)
}

pub(crate) fn orbit_sum_from_z<T: ExactInt>(
    ctx: &CyclotomicContext,
    set: &KSet,
    z: &T,
) -> Result<T> {
    let e = structure_of(set).e;
    let p = T::from_u64_checked(ctx.p())?;
    let m = T::from_u64_checked(ctx.m() as u64)?;
    let numerator = p.mul_c(z)?.sub_c(&m.pow_c(set.len() as u32 - 1)?)?;
    numerator
        .div_exactly(
            &T::from_u64_checked(e as u64)?,
            &format!("orbit sum of {set}"),
        )
        .map_err(|err| match err {
            Error::Consistency(msg) => inconsistent(format!(
                "{msg} (p = {}, d = {}, g = {})",
                ctx.p(),
                ctx.d(),
                ctx.g()
            )),
            other => other,
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use SymbolArgument::{Class, Element};

    fn ctx(p: u64, d: usize) -> CyclotomicContext {
        CyclotomicContext::new(p, d, None).unwrap()
    }

    fn ks(v: &[usize], d: usize) -> KSet {
        KSet::new(v.to_vec(), d).unwrap()
    }

    #[test]
    fn symbol_examples() {
        assert_eq!(
            gauss_symbol::<i64>(&ctx(5, 2), &[Element(1), Class(1)]).unwrap(),
            0
        );
        assert_eq!(
            gauss_symbol::<i64>(&ctx(7, 2), &[Element(1), Class(1)]).unwrap(),
            1
        );
        let c = ctx(7, 3);
        assert_eq!(c.g(), 3);
        assert_eq!(
            gauss_symbol::<i64>(&c, &[Element(1), Class(1), Class(2)]).unwrap(),
            1
        );
        assert_eq!(
            gauss_symbol_brute(&c, &[Element(1), Class(1), Class(2)]).unwrap(),
            1
        );
    }

    #[test]
    fn symbol_argument_errors() {
        let c = ctx(7, 3);
        assert!(gauss_symbol::<i64>(&c, &[]).is_err());
        assert!(gauss_symbol::<i64>(&c, &[Element(7)]).is_err());
        assert!(gauss_symbol::<i64>(&c, &[Class(3)]).is_err());
    }

    #[test]
    fn single_argument_symbols() {
        let c = ctx(7, 3);
        assert_eq!(gauss_symbol::<i64>(&c, &[Element(0)]).unwrap(), 1);
        assert_eq!(gauss_symbol::<i64>(&c, &[Element(3)]).unwrap(), 0);
        assert_eq!(gauss_symbol::<i64>(&c, &[Class(1)]).unwrap(), 0);
    }

    #[test]
    fn z_examples() {
        assert_eq!(z_of::<i64>(&ctx(13, 3), &ks(&[0, 1, 2], 3)).unwrap(), 1);
        assert_eq!(z_of::<i64>(&ctx(13, 4), &ks(&[0, 1, 2], 4)).unwrap(), 1);
        assert_eq!(z_of::<i64>(&ctx(5, 2), &ks(&[0], 2)).unwrap(), 0);
        assert!(z_of::<i64>(&ctx(5, 2), &ks(&[0], 3)).is_err());
    }

    #[test]
    fn z_by_set_intersection_for_d4() {
        // z(012) = #((1 + C_1) ∩ (-C_2)) with 1 + C_1 = {3, 6, 7} and -C_2 = C_0 = {1, 3, 9}
        let c = ctx(13, 4);
        assert_eq!(c.class(1), &[2, 5, 6]);
        assert_eq!(c.class(0), &[1, 3, 9]);
        let shifted: Vec<u64> = c.class(1).iter().map(|&x| (x as u64 + 1) % 13).collect();
        let neg = c.negate_class(2).unwrap();
        let hits = shifted
            .iter()
            .filter(|&&y| c.class_of(y) == Some(neg))
            .count();
        assert_eq!(hits, 1);
    }

    #[test]
    fn decomposition_examples() {
        let dec = decompose_product(&ctx(5, 2), &ks(&[0, 1], 2), DEFAULT_WORK_LIMIT).unwrap();
        assert_eq!((dec.z, dec.mu), (0, vec![1, 1]));

        let dec = decompose_product(&ctx(7, 3), &ks(&[0, 1], 3), DEFAULT_WORK_LIMIT).unwrap();
        assert_eq!(dec.z, 0);
        assert_eq!(dec.mu.iter().sum::<u64>(), 2);

        let dec = decompose_product(&ctx(5, 2), &ks(&[0], 2), DEFAULT_WORK_LIMIT).unwrap();
        assert_eq!((dec.z, dec.mu), (0, vec![1, 0]));
    }

    #[test]
    fn decomposition_respects_work_limit() {
        let c = ctx(101, 2);
        let err = decompose_product(&c, &ks(&[0, 1], 2), 10).unwrap_err();
        assert_eq!(
            err,
            Error::ResourceLimit {
                work: 50,
                limit: 10
            }
        );
    }

    #[test]
    fn decomposition_z_matches_convolution() {
        for (p, d) in [(13, 3), (13, 4), (31, 5), (37, 6), (41, 8)] {
            let c = ctx(p, d);
            for k in 1..=d {
                for set in crate::orbit::transversals(d, k).unwrap().values().flatten() {
                    let dec = decompose_product(&c, set, DEFAULT_WORK_LIMIT).unwrap();
                    let z: i64 = z_of(&c, set).unwrap();
                    assert_eq!(dec.z as i64, z, "p={p} d={d} S={set}");
                    let total = dec.z + dec.mu.iter().sum::<u64>();
                    assert_eq!(total, (c.m() as u64).pow(k as u32 - 1));
                }
            }
        }
    }

    #[test]
    fn orbit_sum_examples() {
        assert_eq!(orbit_sum::<i64>(&ctx(5, 2), &ks(&[0, 1], 2)).unwrap(), -1);
        assert_eq!(orbit_sum::<i64>(&ctx(7, 3), &ks(&[0, 1], 3)).unwrap(), -2);
        assert_eq!(
            orbit_sum::<BigInt>(&ctx(13, 3), &ks(&[0, 1, 2], 3)).unwrap(),
            BigInt::from(-1)
        );
    }

    #[test]
    fn convolution_and_brute_force_agree() {
        for (p, d) in [(11, 5), (13, 4), (17, 8), (19, 6), (29, 7)] {
            let c = ctx(p, d);
            for k in 2..=d.min(4) {
                for set in crate::orbit::transversals(d, k).unwrap().values().flatten() {
                    let args = z_arguments(&c, set);
                    let fast: i64 = gauss_symbol(&c, &args).unwrap();
                    assert_eq!(fast as u64, gauss_symbol_brute(&c, &args).unwrap());
                    let checked =
                        convolve_checked::<BigInt>(p, &resolve_all(&c, &args).unwrap()).unwrap();
                    assert_eq!(checked, BigInt::from(fast));
                }
            }
        }
    }
}
