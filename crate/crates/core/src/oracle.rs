//! Independent exact oracles for the period polynomial, and the
//! quadratic-form identities tying small Gauss symbols to representations
//! of `p`.
//!
//! No complex numbers appear anywhere. A polynomial in `ζ` (a primitive
//! p-th root of unity) is held as an integer function on `Z/pZ`; products
//! of periods become additive convolutions, and a function that is constant
//! on `F_p^*` collapses to an integer through `Σ_{x≠0} ζ^x = -1`.

use num_integer::Roots;
use serde::Serialize;

use crate::coefficients::PeriodPolynomial;
use crate::error::{inconsistent, invalid, Error, Result};
use crate::field::{is_prime, CyclotomicContext};
use crate::orbit::KSet;
use crate::scalar::{serialize_decimal, ExactInt};
use crate::symbol::{decompose_product, z_of};

/// Default budget for the convolution and enumeration oracles.
pub const ORACLE_WORK_LIMIT: u64 = 2_000_000_000;

/// Largest `d` accepted by [`subset_polynomial`] unless overridden.
pub const SUBSET_DEGREE_BOUND: usize = 8;

/// An integer combination `Σ_x f(x) ζ^x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassFunction<T> {
    pub value_at_zero: T,
    /// Entry `i` holds the coefficient of `ζ^{i+1}`.
    pub values_on_units: Vec<T>,
}

impl<T: ExactInt> ClassFunction<T> {
    pub fn zero(p: u64) -> Self {
        Self {
            value_at_zero: T::zero(),
            values_on_units: vec![T::zero(); p as usize - 1],
        }
    }

    pub fn indicator(p: u64, set: &[u32]) -> Self {
        let mut f = Self::zero(p);
        for &x in set {
            *f.at_mut(x as usize) = T::one();
        }
        f
    }

    fn p(&self) -> usize {
        self.values_on_units.len() + 1
    }

    pub fn at(&self, x: usize) -> &T {
        match x % self.p() {
            0 => &self.value_at_zero,
            y => &self.values_on_units[y - 1],
        }
    }

    fn at_mut(&mut self, x: usize) -> &mut T {
        let p = self.p();
        match x % p {
            0 => &mut self.value_at_zero,
            y => &mut self.values_on_units[y - 1],
        }
    }

    /// Product with `Σ_{x ∈ set} ζ^x`.
    pub fn convolve_with_set(&self, set: &[u32]) -> Result<Self> {
        let p = self.p();
        let mut out = Self::zero(p as u64);
        for y in 0..p {
            let v = self.at(y);
            if v.is_zero() {
                continue;
            }
            for &x in set {
                let slot = out.at_mut(y + x as usize);
                *slot = slot.add_c(v)?;
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        Ok(Self {
            value_at_zero: self.value_at_zero.add_c(&other.value_at_zero)?,
            values_on_units: self
                .values_on_units
                .iter()
                .zip(&other.values_on_units)
                .map(|(a, b)| a.add_c(b))
                .collect::<Result<_>>()?,
        })
    }

    /// Per-class values when the function is constant on every `C_s`.
    pub fn class_values(&self, ctx: &CyclotomicContext) -> Option<Vec<T>> {
        (0..ctx.d())
            .map(|s| {
                let class = ctx.class(s);
                let first = self.at(class[0] as usize);
                class
                    .iter()
                    .all(|&x| self.at(x as usize) == first)
                    .then(|| first.clone())
            })
            .collect()
    }

    /// The common value on `F_p^*`, if there is one.
    pub fn unit_value(&self) -> Option<&T> {
        let first = &self.values_on_units[0];
        self.values_on_units
            .iter()
            .all(|v| v == first)
            .then_some(first)
    }
}

fn guard(work: u128, limit: u64) -> Result<()> {
    if work > limit as u128 {
        return Err(Error::ResourceLimit {
            work,
            limit: limit as u128,
        });
    }
    Ok(())
}

/// `p_n = Σ_j η_j^n` for `n = 1..=n_max`.
pub fn power_sums<T: ExactInt>(
    ctx: &CyclotomicContext,
    n_max: usize,
    work_limit: u64,
) -> Result<Vec<T>> {
    if n_max == 0 {
        return Err(invalid("n_max must be at least 1"));
    }
    let p = ctx.p();
    guard(n_max as u128 * p as u128 * (p as u128 - 1), work_limit)?;
    let mut powers: Vec<ClassFunction<T>> = ctx
        .classes()
        .iter()
        .map(|c| ClassFunction::indicator(p, c))
        .collect();
    let mut sums = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        if n > 1 {
            for (s, f) in powers.iter_mut().enumerate() {
                *f = f.convolve_with_set(ctx.class(s))?;
            }
        }
        let mut total = ClassFunction::zero(p);
        for f in &powers {
            total = total.add(f)?;
        }
        let on_units = total.unit_value().ok_or_else(|| {
            inconsistent(format!(
                "Σ_j η_j^{n} is not constant on units (p = {p}, d = {})",
                ctx.d()
            ))
        })?;
        sums.push(total.value_at_zero.sub_c(on_units)?);
    }
    Ok(sums)
}

/// Elementary symmetric functions from power sums by Newton's identities,
/// `k·e_k = Σ_{i=1}^{k} (-1)^{i-1} e_{k-i} p_i`.
pub fn newton_elementary<T: ExactInt>(power_sums: &[T]) -> Result<Vec<T>> {
    let mut e = vec![T::one()];
    for k in 1..=power_sums.len() {
        let mut acc = T::zero();
        for i in 1..=k {
            let term = e[k - i].mul_c(&power_sums[i - 1])?;
            acc = if i % 2 == 1 {
                acc.add_c(&term)?
            } else {
                acc.sub_c(&term)?
            };
        }
        e.push(acc.div_exactly(
            &T::from_u64_checked(k as u64)?,
            &format!("Newton step k = {k}"),
        )?);
    }
    e.remove(0);
    Ok(e)
}

/// The period polynomial from exact power sums.
pub fn oracle_polynomial<T: ExactInt>(ctx: &CyclotomicContext) -> Result<PeriodPolynomial<T>> {
    oracle_polynomial_with_limit(ctx, ORACLE_WORK_LIMIT)
}

pub fn oracle_polynomial_with_limit<T: ExactInt>(
    ctx: &CyclotomicContext,
    work_limit: u64,
) -> Result<PeriodPolynomial<T>> {
    let sums = power_sums::<T>(ctx, ctx.d(), work_limit)?;
    let a = newton_elementary(&sums)?;
    Ok(PeriodPolynomial::from_coefficients(
        ctx.p(),
        ctx.d(),
        ctx.g(),
        a,
    ))
}

fn for_each_subset(
    d: usize,
    k: usize,
    mut visit: impl FnMut(&[usize]) -> Result<()>,
) -> Result<()> {
    fn go(
        buf: &mut Vec<usize>,
        next: usize,
        d: usize,
        k: usize,
        visit: &mut dyn FnMut(&[usize]) -> Result<()>,
    ) -> Result<()> {
        if buf.len() == k {
            return visit(buf);
        }
        for x in next..=d - (k - buf.len()) {
            buf.push(x);
            go(buf, x + 1, d, k, visit)?;
            buf.pop();
        }
        Ok(())
    }
    go(&mut Vec::with_capacity(k), 0, d, k, &mut visit)
}

/// The period polynomial by summing the period-basis expansion of every
/// product `η_S`, `|S| = k`. Also checks `z + Σμ = m^{k-1}` for each `S`.
pub fn subset_polynomial<T: ExactInt>(
    ctx: &CyclotomicContext,
    degree_bound: usize,
    work_limit: u64,
) -> Result<PeriodPolynomial<T>> {
    let d = ctx.d();
    if d > degree_bound {
        return Err(Error::ResourceLimit {
            work: d as u128,
            limit: degree_bound as u128,
        });
    }
    let m = ctx.m() as u128;
    let work: u128 = (1..=d)
        .map(|k| crate::orbit::binomial(d as u64, k as u64) * m.pow(k as u32 - 1))
        .sum();
    guard(work, work_limit)?;

    let mt = T::from_u64_checked(ctx.m() as u64)?;
    let mut a = Vec::with_capacity(d);
    for k in 1..=d {
        let mut z_total = T::zero();
        let mut mu_total = vec![T::zero(); d];
        let expected = (ctx.m() as u64).pow(k as u32 - 1);
        for_each_subset(d, k, |elements| {
            let set = KSet::new(elements.to_vec(), d)?;
            let dec = decompose_product(ctx, &set, work_limit)?;
            if dec.z + dec.mu.iter().sum::<u64>() != expected {
                return Err(inconsistent(format!(
                    "z + Σμ != m^{} for {set} (p = {})",
                    k - 1,
                    ctx.p()
                )));
            }
            z_total = z_total.add_c(&T::from_u64_checked(dec.z)?)?;
            for (acc, &mu) in mu_total.iter_mut().zip(&dec.mu) {
                *acc = acc.add_c(&T::from_u64_checked(mu)?)?;
            }
            Ok(())
        })?;
        if mu_total.iter().any(|v| *v != mu_total[0]) {
            return Err(inconsistent(format!(
                "accumulated class multiplicities for k = {k} are not constant (p = {}, d = {d})",
                ctx.p()
            )));
        }
        // Σ_S η_S = m·Z + M·Σ_t η_t = m·Z - M
        a.push(mt.mul_c(&z_total)?.sub_c(&mu_total[0])?);
    }
    Ok(PeriodPolynomial::from_coefficients(ctx.p(), d, ctx.g(), a))
}

/// Representations `4p = c² + 27b²` (`c ≡ 1 mod 3`) and `p = s² + 4t²`
/// (`s ≡ 1 mod 4`), present when `p ≡ 1` mod 3 and mod 4 respectively.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MyersonParams {
    pub p: u64,
    pub c: Option<i64>,
    pub b: Option<i64>,
    pub s: Option<i64>,
    pub t: Option<i64>,
}

fn exact_sqrt(n: i64) -> Option<i64> {
    (n >= 0).then(|| n.sqrt()).filter(|r| r * r == n)
}

/// Solutions `(x ≡ 1 mod modulus, y >= 0)` of `target = x² + weight·y²`.
fn normalized_representations(target: i64, weight: i64, modulus: i64) -> Vec<(i64, i64)> {
    let mut found = Vec::new();
    let mut y = 0;
    while weight * y * y <= target {
        if let Some(x) = exact_sqrt(target - weight * y * y) {
            for candidate in [x, -x] {
                if candidate.rem_euclid(modulus) == 1 && !found.contains(&(candidate, y)) {
                    found.push((candidate, y));
                }
            }
        }
        y += 1;
    }
    found
}

pub fn myerson_params(p: u64) -> Result<MyersonParams> {
    if !is_prime(p) || p > (i64::MAX / 4) as u64 {
        return Err(invalid(format!("{p} is not a supported prime")));
    }
    let pi = p as i64;
    let mut params = MyersonParams {
        p,
        c: None,
        b: None,
        s: None,
        t: None,
    };
    if p % 3 == 1 {
        match normalized_representations(4 * pi, 27, 3)[..] {
            [(c, b)] => {
                params.c = Some(c);
                params.b = Some(b);
            }
            ref other => {
                return Err(inconsistent(format!(
                    "expected one representation 4·{p} = c² + 27b², found {other:?}"
                )))
            }
        }
    }
    if p % 4 == 1 {
        match normalized_representations(pi, 4, 4)[..] {
            [(s, t)] => {
                params.s = Some(s);
                params.t = Some(t);
            }
            ref other => {
                return Err(inconsistent(format!(
                    "expected one representation {p} = s² + 4t², found {other:?}"
                )))
            }
        }
    }
    Ok(params)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
}

impl CheckStatus {
    fn of(ok: bool) -> Self {
        if ok {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        }
    }
}

/// One identity evaluated on both sides.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    #[serde(serialize_with = "serialize_decimal")]
    pub lhs: i128,
    #[serde(serialize_with = "serialize_decimal")]
    pub rhs: i128,
    pub status: CheckStatus,
    /// False for identities that are reported but known not to hold in
    /// general (the printed elimination relations).
    pub asserted: bool,
}

impl IdentityCheck {
    fn new(name: &str, lhs: i128, rhs: i128, asserted: bool) -> Self {
        Self {
            name: name.to_string(),
            lhs,
            rhs,
            status: CheckStatus::of(lhs == rhs),
            asserted,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub p: u64,
    pub d: usize,
    pub g: u64,
    pub identities: Vec<IdentityCheck>,
    pub params: MyersonParams,
}

impl IdentityReport {
    /// Every asserted identity holds.
    pub fn ok(&self) -> bool {
        self.identities
            .iter()
            .all(|c| !c.asserted || c.status == CheckStatus::Pass)
    }

    pub fn get(&self, name: &str) -> Option<&IdentityCheck> {
        self.identities.iter().find(|c| c.name == name)
    }
}

pub const CUBIC_POINT_COUNT: &str = "9a = p + 1 + c";
pub const ALPHA_1_MOD_8: &str = "16a = p + 1 - 2s";
pub const ALPHA_5_MOD_8: &str = "16a = p - 3 - 2s";
pub const BETA_1_MOD_8: &str = "64b = p^2 - 2p - (4s^2 - 8s + 3)";
pub const BETA_5_MOD_8: &str = "64b = p^2 + 6p - (4s^2 - 8s - 5)";
pub const ELIM_1_MOD_8: &str = "2b = a(p - 1 - 8a)";
pub const ELIM_5_MOD_8: &str = "4b = (p - 1) + 2a(p - 5) - 16a^2";
pub const ELIM_1_MOD_8_PRINTED: &str = "printed: 2b = a(p - 2 - 8a)";
pub const ELIM_5_MOD_8_PRINTED: &str = "printed: 4b = (p - 1) - 2a(p - 5) - 4a^2";

fn symbol_value(ctx: &CyclotomicContext, elements: &[usize]) -> Result<i128> {
    z_of::<i128>(ctx, &KSet::new(elements.to_vec(), ctx.d())?)
}

/// Quadratic-form identities for `d = 3` (when `p ≡ 1 mod 3`) and `d = 4`
/// (when `p ≡ 1 mod 4`). Here `a = z(012)` and `b = z(0123)`.
pub fn verify_identities(p: u64) -> Result<Vec<IdentityReport>> {
    let mut reports = Vec::new();
    for d in [3, 4] {
        reports.extend(verify_identities_at(p, d)?);
    }
    Ok(reports)
}

/// The report of [`verify_identities`] for one degree `d ∈ {3, 4}`; `None`
/// when `d` does not divide `p - 1`.
pub fn verify_identities_at(p: u64, d: usize) -> Result<Option<IdentityReport>> {
    if d != 3 && d != 4 {
        return Err(invalid(format!(
            "identities are tabulated for d = 3, 4, not {d}"
        )));
    }
    let params = myerson_params(p)?;
    let pi = p as i128;
    let identities = match (d, params.c, params.s) {
        (3, Some(c), _) => {
            let ctx = CyclotomicContext::new(p, 3, None)?;
            let alpha = symbol_value(&ctx, &[0, 1, 2])?;
            vec![IdentityCheck::new(
                CUBIC_POINT_COUNT,
                9 * alpha,
                pi + 1 + c as i128,
                true,
            )]
        }
        (4, _, Some(s)) => {
            let ctx = CyclotomicContext::new(p, 4, None)?;
            let a = symbol_value(&ctx, &[0, 1, 2])?;
            let b = symbol_value(&ctx, &[0, 1, 2, 3])?;
            let s = s as i128;
            if p % 8 == 1 {
                vec![
                    IdentityCheck::new(ALPHA_1_MOD_8, 16 * a, pi + 1 - 2 * s, true),
                    IdentityCheck::new(
                        BETA_1_MOD_8,
                        64 * b,
                        pi * pi - 2 * pi - (4 * s * s - 8 * s + 3),
                        true,
                    ),
                    IdentityCheck::new(ELIM_1_MOD_8, 2 * b, a * (pi - 1 - 8 * a), true),
                    IdentityCheck::new(ELIM_1_MOD_8_PRINTED, 2 * b, a * (pi - 2 - 8 * a), false),
                ]
            } else {
                vec![
                    IdentityCheck::new(ALPHA_5_MOD_8, 16 * a, pi - 3 - 2 * s, true),
                    IdentityCheck::new(
                        BETA_5_MOD_8,
                        64 * b,
                        pi * pi + 6 * pi - (4 * s * s - 8 * s - 5),
                        true,
                    ),
                    IdentityCheck::new(
                        ELIM_5_MOD_8,
                        4 * b,
                        (pi - 1) + 2 * a * (pi - 5) - 16 * a * a,
                        true,
                    ),
                    IdentityCheck::new(
                        ELIM_5_MOD_8_PRINTED,
                        4 * b,
                        (pi - 1) - 2 * a * (pi - 5) - 4 * a * a,
                        false,
                    ),
                ]
            }
        }
        _ => return Ok(None),
    };
    Ok(Some(IdentityReport {
        p,
        d,
        g: crate::field::find_primitive_root(p)?,
        identities,
        params,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn ctx(p: u64, d: usize) -> CyclotomicContext {
        CyclotomicContext::new(p, d, None).unwrap()
    }

    #[test]
    fn power_sum_examples() {
        for (p, d) in [(5, 2), (7, 3), (13, 4), (31, 5)] {
            assert_eq!(
                power_sums::<i64>(&ctx(p, d), 1, ORACLE_WORK_LIMIT).unwrap(),
                vec![-1]
            );
        }
        assert_eq!(
            power_sums::<i64>(&ctx(5, 2), 2, ORACLE_WORK_LIMIT).unwrap()[1],
            3
        );
        assert_eq!(
            power_sums::<i64>(&ctx(7, 3), 2, ORACLE_WORK_LIMIT).unwrap()[1],
            5
        );
        assert!(power_sums::<i64>(&ctx(7, 3), 0, ORACLE_WORK_LIMIT).is_err());
        assert!(matches!(
            power_sums::<i64>(&ctx(7, 3), 3, 10),
            Err(Error::ResourceLimit { .. })
        ));
    }

    #[test]
    fn newton_examples() {
        // p_1 = -1, p_2 = 3 for the golden-ratio periods
        assert_eq!(newton_elementary(&[-1i64, 3]).unwrap(), vec![-1, -1]);
        assert!(matches!(
            newton_elementary(&[-1i64, 2]),
            Err(Error::Consistency(_))
        ));
    }

    #[test]
    fn oracle_examples() {
        let exp = |p, d| oracle_polynomial::<BigInt>(&ctx(p, d)).unwrap().expansion;
        let big = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        assert_eq!(exp(13, 3), big(&[1, 1, -4, 1]));
        assert_eq!(exp(5, 2), big(&[1, 1, -1]));
        assert_eq!(exp(13, 4), big(&[1, 1, 2, -4, 3]));
    }

    #[test]
    fn subset_examples() {
        let exp = |p, d| {
            subset_polynomial::<i64>(&ctx(p, d), SUBSET_DEGREE_BOUND, ORACLE_WORK_LIMIT)
                .unwrap()
                .expansion
        };
        assert_eq!(exp(5, 2), vec![1, 1, -1]);
        assert_eq!(exp(7, 3), vec![1, 1, -2, -1]);
        assert_eq!(exp(13, 3), vec![1, 1, -4, 1]);
        assert!(matches!(
            subset_polynomial::<i64>(&ctx(37, 9), SUBSET_DEGREE_BOUND, ORACLE_WORK_LIMIT),
            Err(Error::ResourceLimit { .. })
        ));
    }

    #[test]
    fn class_function_queries() {
        let c = ctx(7, 3);
        let f = ClassFunction::<i64>::indicator(7, c.class(1));
        assert_eq!(f.class_values(&c), Some(vec![0, 1, 0]));
        assert_eq!(f.unit_value(), None);
        let sq = f.convolve_with_set(c.class(1)).unwrap();
        // C_1 = {3, 4}: sums 6, 0, 0, 1
        assert_eq!(sq.value_at_zero, 2);
        assert_eq!(sq.values_on_units, vec![1, 0, 0, 0, 0, 1]);
    }

    #[test]
    fn myerson_examples() {
        let m = myerson_params(13).unwrap();
        assert_eq!((m.c, m.b, m.s, m.t), (Some(-5), Some(1), Some(-3), Some(1)));
        let m = myerson_params(7).unwrap();
        assert_eq!((m.c, m.b, m.s, m.t), (Some(1), Some(1), None, None));
        let m = myerson_params(17).unwrap();
        assert_eq!((m.c, m.b, m.s, m.t), (None, None, Some(1), Some(2)));
        assert!(myerson_params(15).is_err());
    }

    #[test]
    fn identity_examples() {
        let r = verify_identities(13).unwrap();
        assert_eq!(r.len(), 2);
        assert!(r.iter().all(IdentityReport::ok));
        let cubic = r[0].get(CUBIC_POINT_COUNT).unwrap();
        assert_eq!((cubic.lhs, cubic.rhs), (9, 9));
        let lit = r[1].get(ELIM_5_MOD_8_PRINTED).unwrap();
        assert_eq!((lit.lhs, lit.rhs, lit.status), (12, -8, CheckStatus::Fail));
        assert_eq!(r[1].get(ELIM_5_MOD_8).unwrap().rhs, 12);
        assert_eq!(r[1].get(BETA_5_MOD_8).unwrap().lhs, 192);

        let r = verify_identities(17).unwrap();
        assert_eq!(r.len(), 1);
        let lit = r[0].get(ELIM_1_MOD_8_PRINTED).unwrap();
        assert_eq!((lit.lhs, lit.rhs), (8, 7));
        assert!(r[0].ok());

        let r = verify_identities(7).unwrap();
        assert_eq!(r[0].identities[0].lhs, 9);
        assert!(verify_identities(11).unwrap().is_empty());
        assert_eq!(
            verify_identities_at(13, 4).unwrap().unwrap(),
            verify_identities(13).unwrap()[1]
        );
        assert!(verify_identities_at(7, 4).unwrap().is_none());
        assert!(verify_identities_at(13, 5).is_err());
    }
}
