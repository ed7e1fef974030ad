//! Vièta coefficients of the period polynomial
//! `P_d(X) = Π_j (X - η_j) = Σ_k (-1)^k a_k X^{d-k}`.
//!
//! `a_k` is the k-th elementary symmetric function of the periods. Grouping
//! the k-subsets of classes into translation orbits, each orbit with
//! representative `S` and stabilizer order `e` contributes
//! `(p·z(S) - m^{k-1}) / e`.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{inconsistent, invalid, Error, Result};
use crate::field::{find_primitive_root, is_prime, CyclotomicContext};
use crate::orbit::{structure_of, subset_orbit_count, transversal_k3, transversals, KSet};
use crate::scalar::{serialize_decimal, serialize_decimal_seq, ExactInt};
use crate::symbol::{multiset_intersection, orbit_sum_from_z, z_of};

/// Monic degree-`d` polynomial with the Gauss `d`-periods as roots.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(bound(serialize = "T: std::fmt::Display"))]
pub struct PeriodPolynomial<T> {
    pub p: u64,
    pub d: usize,
    pub g: u64,
    /// `a_1, …, a_d`.
    #[serde(serialize_with = "serialize_decimal_seq")]
    pub a: Vec<T>,
    /// Coefficients of `X^d, …, X^0`; entry `k` is `(-1)^k a_k`.
    #[serde(serialize_with = "serialize_decimal_seq")]
    pub expansion: Vec<T>,
}

impl<T: ExactInt> PeriodPolynomial<T> {
    pub fn from_coefficients(p: u64, d: usize, g: u64, a: Vec<T>) -> Self {
        debug_assert_eq!(a.len(), d);
        let mut expansion = Vec::with_capacity(d + 1);
        expansion.push(T::one());
        for (i, ak) in a.iter().enumerate() {
            expansion.push(if i % 2 == 0 { -ak.clone() } else { ak.clone() });
        }
        Self {
            p,
            d,
            g,
            a,
            expansion,
        }
    }

    /// `a_k` for `1 <= k <= d`.
    pub fn a(&self, k: usize) -> &T {
        &self.a[k - 1]
    }

    /// Same coefficients regardless of which primitive root labelled the
    /// classes.
    pub fn same_coefficients(&self, other: &Self) -> bool {
        self.p == other.p && self.d == other.d && self.a == other.a
    }
}

impl<T: ExactInt> fmt::Display for PeriodPolynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "X^{}", self.d)?;
        for (i, c) in self.expansion.iter().enumerate().skip(1) {
            if c.is_zero() {
                continue;
            }
            let power = self.d - i;
            let sign = if c.is_negative() { '-' } else { '+' };
            let mag = c.abs();
            write!(f, " {sign} ")?;
            if !mag.is_one() || power == 0 {
                write!(f, "{mag}")?;
            }
            match power {
                0 => {}
                1 => write!(f, "X")?,
                _ => write!(f, "X^{power}")?,
            }
        }
        Ok(())
    }
}

/// Contributions of the orbits with one stabilizer order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(bound(serialize = "T: std::fmt::Display"))]
pub struct DivisorBlock<T> {
    pub e: usize,
    pub representatives: Vec<KSet>,
    #[serde(serialize_with = "serialize_decimal_seq")]
    pub z: Vec<T>,
    #[serde(serialize_with = "serialize_decimal_seq")]
    pub orbit_sums: Vec<T>,
    #[serde(serialize_with = "serialize_decimal")]
    pub subtotal: T,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(bound(serialize = "T: std::fmt::Display"))]
pub struct CoefficientBreakdown<T> {
    pub k: usize,
    pub blocks: Vec<DivisorBlock<T>>,
}

impl<T: ExactInt> CoefficientBreakdown<T> {
    pub fn total(&self) -> Result<T> {
        self.blocks
            .iter()
            .try_fold(T::zero(), |acc, b| acc.add_c(&b.subtotal))
    }
}

fn check_k(ctx: &CyclotomicContext, k: usize) -> Result<()> {
    if k == 0 || k > ctx.d() {
        return Err(invalid(format!("k = {k} is outside 1..={}", ctx.d())));
    }
    Ok(())
}

/// Upper estimate of the convolution steps behind [`polynomial`]: one
/// `z(S)` per orbit, each at most `p·(p - 1)` steps.
pub fn assembly_work(ctx: &CyclotomicContext) -> u128 {
    subset_orbit_count(ctx.d()).saturating_mul(ctx.p() as u128 * (ctx.p() as u128 - 1))
}

/// [`polynomial`] after checking [`assembly_work`] against `work_limit`.
pub fn polynomial_within<T: ExactInt>(
    ctx: &CyclotomicContext,
    work_limit: u64,
) -> Result<(PeriodPolynomial<T>, Vec<CoefficientBreakdown<T>>)> {
    let work = assembly_work(ctx);
    if work > work_limit as u128 {
        return Err(Error::ResourceLimit {
            work,
            limit: work_limit as u128,
        });
    }
    polynomial_with_breakdown(ctx)
}

/// `a_k` from the canonical orbit transversals.
pub fn coefficient<T: ExactInt>(
    ctx: &CyclotomicContext,
    k: usize,
) -> Result<(T, CoefficientBreakdown<T>)> {
    check_k(ctx, k)?;
    coefficient_from_transversals(ctx, k, &transversals(ctx.d(), k)?)
}

/// `a_k` from caller-chosen orbit representatives, keyed by stabilizer
/// order. Any transversal gives the same value.
pub fn coefficient_from_transversals<T: ExactInt>(
    ctx: &CyclotomicContext,
    k: usize,
    reps: &BTreeMap<usize, Vec<KSet>>,
) -> Result<(T, CoefficientBreakdown<T>)> {
    check_k(ctx, k)?;
    let mut blocks = Vec::with_capacity(reps.len());
    let mut total = T::zero();
    for (&e, sets) in reps {
        let mut z = Vec::with_capacity(sets.len());
        let mut orbit_sums = Vec::with_capacity(sets.len());
        let mut subtotal = T::zero();
        for set in sets {
            if set.len() != k || structure_of(set).e != e {
                return Err(invalid(format!(
                    "{set} is not a {k}-set with stabilizer order {e}"
                )));
            }
            let zs: T = z_of(ctx, set)?;
            let sum = orbit_sum_from_z(ctx, set, &zs)?;
            subtotal = subtotal.add_c(&sum)?;
            z.push(zs);
            orbit_sums.push(sum);
        }
        total = total.add_c(&subtotal)?;
        blocks.push(DivisorBlock {
            e,
            representatives: sets.clone(),
            z,
            orbit_sums,
            subtotal,
        });
    }
    Ok((total, CoefficientBreakdown { k, blocks }))
}

/// Every coefficient, with per-k breakdowns.
pub fn polynomial_with_breakdown<T: ExactInt>(
    ctx: &CyclotomicContext,
) -> Result<(PeriodPolynomial<T>, Vec<CoefficientBreakdown<T>>)> {
    let d = ctx.d();
    let mut a = Vec::with_capacity(d);
    let mut breakdowns = Vec::with_capacity(d);
    for k in 1..=d {
        let (ak, b) = coefficient::<T>(ctx, k)?;
        a.push(ak);
        breakdowns.push(b);
    }
    if a[0] != -T::one() {
        return Err(inconsistent(format!("a_1 = {} instead of -1", a[0])));
    }
    let top = top_coefficient::<T>(ctx)?;
    if a[d - 1] != top {
        return Err(inconsistent(format!(
            "a_{d} = {} disagrees with the full-set formula {top}",
            a[d - 1]
        )));
    }
    Ok((
        PeriodPolynomial::from_coefficients(ctx.p(), d, ctx.g(), a),
        breakdowns,
    ))
}

pub fn polynomial<T: ExactInt>(ctx: &CyclotomicContext) -> Result<PeriodPolynomial<T>> {
    polynomial_with_breakdown(ctx).map(|(poly, _)| poly)
}

/// `a_d = (p·z({0, …, d-1}) - m^{d-1}) / d`.
pub fn top_coefficient<T: ExactInt>(ctx: &CyclotomicContext) -> Result<T> {
    let d = ctx.d();
    let full = KSet::new((0..d).collect(), d)?;
    let z: T = z_of(ctx, &full)?;
    let p = T::from_u64_checked(ctx.p())?;
    let m = T::from_u64_checked(ctx.m() as u64)?;
    p.mul_c(&z)?
        .sub_c(&m.pow_c(d as u32 - 1)?)?
        .div_exactly(&T::from_u64_checked(d as u64)?, "top coefficient")
}

fn check_prime_divisor(p: u64, d: usize) -> Result<u64> {
    if p < 3 || !is_prime(p) {
        return Err(invalid(format!("{p} is not an odd prime")));
    }
    if d == 0 || (p - 1) % d as u64 != 0 {
        return Err(invalid(format!(
            "d = {d} does not divide p - 1 = {}",
            p - 1
        )));
    }
    Ok((p - 1) / d as u64)
}

/// Closed form of `a_2(p, d)`, depending only on the parities of `d` and `m`.
pub fn a2_closed<T: ExactInt>(p: u64, d: usize) -> Result<T> {
    let m = check_prime_divisor(p, d)?;
    if d < 2 {
        return Err(invalid("a_2 needs d >= 2"));
    }
    let pt = T::from_u64_checked(p)?;
    let dt = T::from_u64_checked(d as u64)?;
    let two_d = dt.add_c(&dt)?;
    if d % 2 == 1 || m % 2 == 0 {
        let num = (dt.sub_c(&T::one())?).mul_c(&pt.sub_c(&T::one())?)?;
        Ok(-num.div_exactly(&two_d, "a_2 closed form")?)
    } else {
        pt.add_c(&dt)?
            .sub_c(&T::one())?
            .div_exactly(&two_d, "a_2 closed form")
    }
}

/// Closed form of `a_3(p, d)` from the k = 3 triangle transversal:
/// `p·A - C(d-1,2)·m²/3`, plus the short-orbit correction when `3 | d`.
pub fn a3_closed<T: ExactInt>(ctx: &CyclotomicContext) -> Result<T> {
    let d = ctx.d();
    if d < 3 {
        return Err(invalid(format!("a_3 needs d >= 3, got {d}")));
    }
    let tri = transversal_k3(d)?;
    let mut a_sum = T::zero();
    for set in tri.full_sets() {
        a_sum = a_sum.add_c(&z_of::<T>(ctx, &set)?)?;
    }
    let p = T::from_u64_checked(ctx.p())?;
    let m2 = T::from_u64_checked(ctx.m() as u64)?.pow_c(2)?;
    let three = T::from_u64_checked(3)?;
    let pairs = T::from_u64_checked(((d - 1) * (d - 2) / 2) as u64)?;
    let main = p.mul_c(&a_sum)?;
    if d % 3 != 0 {
        let corr = pairs.mul_c(&m2)?.div_exactly(&three, "a_3 closed form")?;
        main.sub_c(&corr)
    } else {
        let short = tri.short_sets();
        let b: T = z_of(ctx, &short[0])?;
        let corr = pairs
            .sub_c(&T::one())?
            .mul_c(&m2)?
            .div_exactly(&three, "a_3 closed form")?;
        let tail = p
            .mul_c(&b)?
            .sub_c(&m2)?
            .div_exactly(&three, "a_3 short orbit")?;
        main.sub_c(&corr)?.add_c(&tail)
    }
}

/// `X² + X + (1 - p*)/4` with `p* = (-1)^{(p-1)/2} p`.
pub fn quadratic_poly<T: ExactInt>(p: u64) -> Result<PeriodPolynomial<T>> {
    check_prime_divisor(p, 2)?;
    let pt = T::from_u64_checked(p)?;
    let p_star = if p % 4 == 1 { pt } else { -pt };
    let a2 = T::one()
        .sub_c(&p_star)?
        .div_exactly(&T::from_u64_checked(4)?, "quadratic constant")?;
    Ok(PeriodPolynomial::from_coefficients(
        p,
        2,
        find_primitive_root(p)?,
        vec![-T::one(), a2],
    ))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(bound(serialize = "T: std::fmt::Display"))]
pub struct CubicParams<T> {
    /// `z(012) = #((1 + C_1) ∩ (-C_2))`.
    #[serde(serialize_with = "serialize_decimal")]
    pub alpha: T,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(bound(serialize = "T: std::fmt::Display"))]
pub struct QuarticParams<T> {
    /// `z(012) = #((1 + C_1) ∩ (-C_2))`.
    #[serde(serialize_with = "serialize_decimal")]
    pub alpha: T,
    /// `z(0123) = #((1 + C_1) ∩ (-C_2 - C_3))`, counted with multiplicity.
    #[serde(serialize_with = "serialize_decimal")]
    pub beta: T,
}

fn shifted_class(ctx: &CyclotomicContext, s: usize) -> Vec<u32> {
    ctx.class(s)
        .iter()
        .map(|&x| ((x as u64 + 1) % ctx.p()) as u32)
        .collect()
}

/// `#((1 + C_1) ∩ (-C_{s_1} - … - C_{s_n}))` with the negated classes
/// located through the sign of `-1`.
fn negated_intersection(ctx: &CyclotomicContext, rest: &[usize]) -> Result<u64> {
    let left = shifted_class(ctx, 1);
    let negated = rest
        .iter()
        .map(|&s| ctx.negate_class(s).map(|r| ctx.class(r)))
        .collect::<Result<Vec<_>>>()?;
    Ok(multiset_intersection(ctx.p(), &left, &negated))
}

fn symbol_two_ways<T: ExactInt>(ctx: &CyclotomicContext, set: &[usize]) -> Result<T> {
    let z: T = z_of(ctx, &KSet::new(set.to_vec(), ctx.d())?)?;
    let via_negation = T::from_u64_checked(negated_intersection(ctx, &set[2..])?)?;
    if z != via_negation {
        return Err(inconsistent(format!(
            "z({set:?}) = {z} but the negated-class intersection gives {via_negation}"
        )));
    }
    Ok(z)
}

fn confirm<T: ExactInt>(
    ctx: &CyclotomicContext,
    closed: PeriodPolynomial<T>,
) -> Result<PeriodPolynomial<T>> {
    let general = polynomial::<T>(ctx)?;
    if !closed.same_coefficients(&general) {
        return Err(inconsistent(format!(
            "closed form {closed} disagrees with {general} for p = {}",
            ctx.p()
        )));
    }
    Ok(closed)
}

/// `X³ + X² - mX - (p·α - m²)/3` for `p ≡ 1 (mod 3)`.
pub fn cubic_poly<T: ExactInt>(p: u64) -> Result<(PeriodPolynomial<T>, CubicParams<T>)> {
    if p % 3 != 1 {
        return Err(invalid(format!("{p} is not 1 mod 3")));
    }
    let ctx = CyclotomicContext::new(p, 3, None)?;
    let alpha: T = symbol_two_ways(&ctx, &[0, 1, 2])?;
    let pt = T::from_u64_checked(p)?;
    let m = T::from_u64_checked(ctx.m() as u64)?;
    let a3 = pt
        .mul_c(&alpha)?
        .sub_c(&m.pow_c(2)?)?
        .div_exactly(&T::from_u64_checked(3)?, "cubic constant")?;
    let poly = PeriodPolynomial::from_coefficients(p, 3, ctx.g(), vec![-T::one(), -m, a3]);
    Ok((confirm(&ctx, poly)?, CubicParams { alpha }))
}

/// Quartic period polynomial for `p ≡ 1 (mod 4)`; the `X²` coefficient
/// depends on whether `-1` is a fourth power (`p ≡ 1 mod 8`).
pub fn quartic_poly<T: ExactInt>(p: u64) -> Result<(PeriodPolynomial<T>, QuarticParams<T>)> {
    if p % 4 != 1 {
        return Err(invalid(format!("{p} is not 1 mod 4")));
    }
    let ctx = CyclotomicContext::new(p, 4, None)?;
    let alpha: T = symbol_two_ways(&ctx, &[0, 1, 2])?;
    let beta: T = symbol_two_ways(&ctx, &[0, 1, 2, 3])?;
    let pt = T::from_u64_checked(p)?;
    let m = T::from_u64_checked(ctx.m() as u64)?;
    let two = T::from_u64_checked(2)?;
    let a2 = if p % 8 == 1 {
        -T::from_u64_checked(3)?
            .mul_c(&m)?
            .div_exactly(&two, "quartic a_2")?
    } else {
        m.add_c(&T::one())?.div_exactly(&two, "quartic a_2")?
    };
    let a3 = pt.mul_c(&alpha)?.sub_c(&m.pow_c(2)?)?;
    let a4 = pt
        .mul_c(&beta)?
        .sub_c(&m.pow_c(3)?)?
        .div_exactly(&T::from_u64_checked(4)?, "quartic constant")?;
    let poly = PeriodPolynomial::from_coefficients(p, 4, ctx.g(), vec![-T::one(), a2, a3, a4]);
    Ok((confirm(&ctx, poly)?, QuarticParams { alpha, beta }))
}
