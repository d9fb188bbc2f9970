//! Gauss sums, the exponential sums attached to the two code families, and
//! their value distributions, computed two independent ways: exhaustively
//! in exact cyclotomic arithmetic, and from closed-form case formulas.
//!
//! Every sum in scope takes a value of the shape sign * i^t * p^{e/2}. The
//! symbolic form is `GaussTypeValue`; `classify` maps an exact cyclotomic
//! value into it and refuses loudly (rather than guessing) when a value
//! falls outside that shape.

use crate::cyclotomic::CyclotomicInt;
use crate::error::{Error, Result};
use crate::field::{gcd, prime_quad_char, FieldContext, FieldElement};
use serde::Serialize;
use std::collections::{BTreeMap, HashMap};
use std::ops::Range;

/// Symbolic algebraic value sign * i^t * p^{e/2} with t in {0, 1}
/// (`imaginary` = t). Zero is not representable; the sums in scope are
/// never zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct GaussTypeValue {
    /// +1 or -1.
    pub sign: i8,
    /// True when the value is purely imaginary.
    pub imaginary: bool,
    /// e in p^{e/2}; even means a rational integer magnitude.
    pub half_exp: u32,
}

impl GaussTypeValue {
    /// Normalizes sign * i^quartic * p^{half_exp/2} by folding i^2 = -1
    /// into the sign.
    pub fn new(sign: i8, quartic: u8, half_exp: u32) -> Self {
        assert!(sign == 1 || sign == -1);
        let (sign, imaginary) = match quartic % 4 {
            0 => (sign, false),
            1 => (sign, true),
            2 => (-sign, false),
            _ => (-sign, true),
        };
        GaussTypeValue {
            sign,
            imaginary,
            half_exp,
        }
    }

    pub fn negated(self) -> Self {
        GaussTypeValue {
            sign: -self.sign,
            ..self
        }
    }

    /// Human-readable form like `-3^2` or `+i*3^(5/2)`.
    pub fn describe(self, p: u32) -> String {
        let sign = if self.sign >= 0 { "+" } else { "-" };
        let i = if self.imaginary { "i*" } else { "" };
        if self.half_exp.is_multiple_of(2) {
            format!("{sign}{i}{p}^{}", self.half_exp / 2)
        } else {
            format!("{sign}{i}{p}^({}/2)", self.half_exp)
        }
    }

    /// The square as a rational integer: (-1)^t * p^e.
    pub fn squared_integer(self, p: u32) -> i128 {
        let mag = i128::from(p)
            .checked_pow(self.half_exp)
            .expect("squared value overflows i128");
        if self.imaginary {
            -mag
        } else {
            mag
        }
    }
}

impl Ord for GaussTypeValue {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.half_exp, self.imaginary, self.sign).cmp(&(
            other.half_exp,
            other.imaginary,
            other.sign,
        ))
    }
}

impl PartialOrd for GaussTypeValue {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Quadratic Gauss sum over the prime field: sum of eta(x) zeta^x. Equals
/// sqrt(p) for p = 1 mod 4 and i*sqrt(p) for p = 3 mod 4.
pub fn prime_gauss_sum(p: u32) -> CyclotomicInt {
    let mut acc = CyclotomicInt::zero(p);
    for x in 1..p {
        let term = CyclotomicInt::root_power(p, i64::from(x))
            .scale(i128::from(prime_quad_char(p, x)));
        acc = acc.add(&term);
    }
    acc
}

/// Gauss sum over the field of ctx: sum over nonzero x of
/// eta(x) zeta^{Tr(x)}, by exhaustive summation.
pub fn gauss_sum_direct(ctx: &FieldContext) -> CyclotomicInt {
    let p = ctx.p();
    let tr = ctx.trace_by_exp_table();
    let mut signed = vec![0i128; p as usize];
    for (i, &t) in tr.iter().enumerate() {
        // alpha^i is a square exactly when i is even.
        signed[t as usize] += if i % 2 == 0 { 1 } else { -1 };
    }
    signed_trace_counts(p, &signed)
}

/// Closed form of the Gauss sum over F_{p^m}:
/// (-1)^{m-1} * i^{((p-1)^2/4) m} * p^{m/2}, normalized.
pub fn gauss_sum_closed(p: u32, m: u32) -> GaussTypeValue {
    let base_quartic: u32 = if p % 4 == 3 { 1 } else { 0 };
    let sign = if m % 2 == 1 { 1 } else { -1 };
    GaussTypeValue::new(sign, ((base_quartic * m) % 4) as u8, m)
}

/// Classifies an exact cyclotomic value as sign * i^t * p^{e/2}.
///
/// Even e: the value must be a rational +-p^{e/2}. Odd e: the value must be
/// an integer multiple of the quadratic Gauss sum over F_p (the only
/// square root of +-p available in Z[zeta_p]). Anything else is an error.
pub fn classify(value: &CyclotomicInt) -> Result<GaussTypeValue> {
    let p = value.prime();
    let fail = || Error::UnclassifiedSumValue(value.to_string());
    if let Some(n) = value.as_integer() {
        let (sign, half) = integer_sign_and_p_power(n, p).ok_or_else(fail)?;
        return Ok(GaussTypeValue {
            sign,
            imaginary: false,
            half_exp: 2 * half,
        });
    }
    // value * conj(g) = n means value = (n/p) * g since g * conj(g) = p.
    let g = prime_gauss_sum(p);
    let folded = value.mul(&g.conjugate());
    let n = folded.as_integer().ok_or_else(fail)?;
    if n == 0 || n % i128::from(p) != 0 {
        return Err(fail());
    }
    let (sign, half) = integer_sign_and_p_power(n / i128::from(p), p).ok_or_else(fail)?;
    Ok(GaussTypeValue {
        sign,
        imaginary: p % 4 == 3,
        half_exp: 2 * half + 1,
    })
}

/// Embeds a symbolic value into Z[zeta_p]. Fails when the value does not
/// live there (i times a rational, or a real square root of p when only
/// i*sqrt(p) is in the ring, and vice versa).
pub fn embed(value: GaussTypeValue, p: u32) -> Result<CyclotomicInt> {
    let fail = || Error::UnclassifiedSumValue(value.describe(p));
    if value.half_exp.is_multiple_of(2) {
        if value.imaginary {
            return Err(fail());
        }
        let mag = i128::from(p)
            .checked_pow(value.half_exp / 2)
            .expect("magnitude overflows i128");
        Ok(CyclotomicInt::from_int(p, i128::from(value.sign) * mag))
    } else {
        if value.imaginary != (p % 4 == 3) {
            return Err(fail());
        }
        let mag = i128::from(p)
            .checked_pow((value.half_exp - 1) / 2)
            .expect("magnitude overflows i128");
        Ok(prime_gauss_sum(p).scale(i128::from(value.sign) * mag))
    }
}

fn integer_sign_and_p_power(n: i128, p: u32) -> Option<(i8, u32)> {
    if n == 0 {
        return None;
    }
    let sign = if n > 0 { 1 } else { -1 };
    let mut mag = n.unsigned_abs();
    let mut half = 0u32;
    while mag.is_multiple_of(u128::from(p)) {
        mag /= u128::from(p);
        half += 1;
    }
    (mag == 1).then_some((sign, half))
}

fn signed_trace_counts(p: u32, signed: &[i128]) -> CyclotomicInt {
    let mut acc = CyclotomicInt::zero(p);
    for (j, &c) in signed.iter().enumerate() {
        if c != 0 {
            acc = acc.add(&CyclotomicInt::root_power(p, j as i64).scale(c));
        }
    }
    acc
}

/// Value distribution of an exponential sum over a coefficient sweep.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SumDistribution {
    pub p: u32,
    pub m: u32,
    pub l: u32,
    pub d: u32,
    pub s: u32,
    /// Sorted by (half_exp, imaginary, sign) ascending.
    pub entries: Vec<SumEntry>,
    pub total: u128,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SumEntry {
    pub sign: i8,
    pub imaginary: bool,
    pub half_exp: u32,
    pub freq: u128,
}

impl SumEntry {
    pub fn value(&self) -> GaussTypeValue {
        GaussTypeValue {
            sign: self.sign,
            imaginary: self.imaginary,
            half_exp: self.half_exp,
        }
    }
}

impl SumDistribution {
    fn from_value_map(
        ctx_params: (u32, u32, u32),
        map: BTreeMap<GaussTypeValue, u128>,
        expected_total: u128,
    ) -> Self {
        let (p, m, l) = ctx_params;
        let entries: Vec<SumEntry> = map
            .into_iter()
            .filter(|&(_, freq)| freq > 0)
            .map(|(v, freq)| SumEntry {
                sign: v.sign,
                imaginary: v.imaginary,
                half_exp: v.half_exp,
                freq,
            })
            .collect();
        let total: u128 = entries.iter().map(|e| e.freq).sum();
        assert_eq!(total, expected_total, "distribution frequency total");
        let d = gcd(m, l);
        SumDistribution {
            p,
            m,
            l,
            d,
            s: m / d,
            entries,
            total,
        }
    }

    /// Render entries like `-3^1: 6, +3^2: 2`.
    pub fn describe_entries(&self) -> String {
        self.entries
            .iter()
            .map(|e| format!("{}: {}", e.value().describe(self.p), e.freq))
            .collect::<Vec<_>>()
            .join(", ")
    }
}

fn validate_l(m: u32, l: u32) -> Result<()> {
    if l == 0 || l >= m {
        Err(Error::BadExponent { l, m })
    } else {
        Ok(())
    }
}

/// p^l + 1 reduced mod the group order, the exponent step of the power map.
fn power_map_step(ctx: &FieldContext, l: u32) -> usize {
    let n = u64::from(ctx.group_order());
    let mut e = 1u64;
    for _ in 0..l {
        e *= u64::from(ctx.p());
    }
    ((e + 1) % n) as usize
}

/// S(a) = sum over all x (including zero) of zeta^{Tr(a x^{p^l+1})}.
pub fn exp_sum_s(ctx: &FieldContext, l: u32, a: FieldElement) -> Result<CyclotomicInt> {
    validate_l(ctx.m(), l)?;
    let p = ctx.p();
    match a {
        FieldElement::Zero => Ok(CyclotomicInt::from_int(p, i128::from(ctx.q()))),
        FieldElement::Exp(u) => {
            let mut counts = vec![0u64; p as usize];
            row_counts_single(ctx, power_map_step(ctx, l), u as usize, &mut counts);
            counts[0] += 1; // x = 0 contributes zeta^0
            Ok(CyclotomicInt::from_trace_counts(p, &counts))
        }
    }
}

/// T(a, b) = sum over all x of zeta^{Tr(a x^{p^l+1} + b x^2)}.
pub fn exp_sum_t(
    ctx: &FieldContext,
    l: u32,
    a: FieldElement,
    b: FieldElement,
) -> Result<CyclotomicInt> {
    validate_l(ctx.m(), l)?;
    let p = ctx.p();
    let n = ctx.group_order() as usize;
    let mut counts = vec![0u64; p as usize];
    match (a, b) {
        (FieldElement::Zero, FieldElement::Zero) => {
            return Ok(CyclotomicInt::from_int(p, i128::from(ctx.q())))
        }
        (FieldElement::Exp(u), FieldElement::Zero) => {
            row_counts_single(ctx, power_map_step(ctx, l), u as usize, &mut counts);
        }
        (FieldElement::Zero, FieldElement::Exp(v)) => {
            row_counts_single(ctx, 2 % n, v as usize, &mut counts);
        }
        (FieldElement::Exp(u), FieldElement::Exp(v)) => {
            let red = reduction_table(p);
            row_counts_pair(
                ctx,
                power_map_step(ctx, l),
                u as usize,
                v as usize,
                &red,
                &mut counts,
            );
        }
    }
    counts[0] += 1;
    Ok(CyclotomicInt::from_trace_counts(p, &counts))
}

/// Symbol counts of the codeword (Tr(a x^E))_{x in F*} for a = alpha^u.
fn row_counts_single(ctx: &FieldContext, step: usize, u: usize, counts: &mut [u64]) {
    let tr = ctx.trace_by_exp_table();
    let n = tr.len();
    let mut idx = u;
    for _ in 0..n {
        counts[tr[idx] as usize] += 1;
        idx += step;
        if idx >= n {
            idx -= n;
        }
    }
}

/// Symbol counts of (Tr(a x^E + b x^2))_{x in F*} for a = alpha^u, b = alpha^v.
fn row_counts_pair(
    ctx: &FieldContext,
    step: usize,
    u: usize,
    v: usize,
    red: &[u32],
    counts: &mut [u64],
) {
    let tr = ctx.trace_by_exp_table();
    let n = tr.len();
    let (mut ia, mut ib) = (u, v);
    for _ in 0..n {
        let t = tr[ia] + tr[ib];
        counts[red[t as usize] as usize] += 1;
        ia += step;
        if ia >= n {
            ia -= n;
        }
        ib += 2;
        if ib >= n {
            ib -= n;
        }
    }
}

fn reduction_table(p: u32) -> Vec<u32> {
    (0..2 * p - 1).map(|t| t % p).collect()
}

/// Tally of a coefficient sweep: codeword symbol compositions with their
/// multiplicities, plus an independent Hamming weight census.
#[derive(Debug)]
pub(crate) struct SweepTally {
    pub comp_freq: HashMap<Vec<u32>, u128>,
    pub weight_census: Vec<u64>,
}

impl SweepTally {
    fn new(n: usize) -> Self {
        SweepTally {
            comp_freq: HashMap::new(),
            weight_census: vec![0; n + 1],
        }
    }

    fn record(&mut self, counts: &[u64], n: usize) {
        let weight = n as u64 - counts[0];
        self.weight_census[weight as usize] += 1;
        let key: Vec<u32> = counts.iter().map(|&c| c as u32).collect();
        *self.comp_freq.entry(key).or_insert(0) += 1;
    }

    fn merge(&mut self, other: SweepTally) {
        for (k, v) in other.comp_freq {
            *self.comp_freq.entry(k).or_insert(0) += v;
        }
        for (a, b) in self.weight_census.iter_mut().zip(other.weight_census) {
            *a += b;
        }
    }
}

fn parallel_over_rows(
    workers: usize,
    n_outer: usize,
    n: usize,
    work: impl Fn(Range<usize>) -> SweepTally + Send + Sync,
) -> SweepTally {
    let workers = workers.max(1).min(n_outer.max(1));
    if workers == 1 {
        return work(0..n_outer);
    }
    let chunk = n_outer.div_ceil(workers);
    let work = &work;
    std::thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let range = (w * chunk).min(n_outer)..((w + 1) * chunk).min(n_outer);
                scope.spawn(move || work(range))
            })
            .collect();
        let mut acc = SweepTally::new(n);
        for h in handles {
            acc.merge(h.join().expect("sweep worker panicked"));
        }
        acc
    })
}

/// Compositions of (Tr(a x^exponent_step))_{x in F*} over all a in F*.
pub(crate) fn single_coeff_sweep(
    ctx: &FieldContext,
    step: usize,
    workers: usize,
) -> SweepTally {
    let n = ctx.group_order() as usize;
    let p = ctx.p() as usize;
    parallel_over_rows(workers, n, n, |range| {
        let mut tally = SweepTally::new(n);
        let mut counts = vec![0u64; p];
        for u in range {
            counts.iter_mut().for_each(|c| *c = 0);
            row_counts_single(ctx, step, u, &mut counts);
            tally.record(&counts, n);
        }
        tally
    })
}

/// Compositions of (Tr(a x^{p^l+1} + b x^2))_{x in F*} over all
/// (a, b) != (0, 0), i.e. the two single-coefficient borders plus the
/// full nonzero block.
pub(crate) fn pair_coeff_sweep(ctx: &FieldContext, l: u32, workers: usize) -> SweepTally {
    let n = ctx.group_order() as usize;
    let p = ctx.p() as usize;
    let step = power_map_step(ctx, l);
    let red = reduction_table(ctx.p());
    let mut tally = parallel_over_rows(workers, n, n, |range| {
        let mut tally = SweepTally::new(n);
        let mut counts = vec![0u64; p];
        for u in range {
            for v in 0..n {
                counts.iter_mut().for_each(|c| *c = 0);
                row_counts_pair(ctx, step, u, v, &red, &mut counts);
                tally.record(&counts, n);
            }
        }
        tally
    });
    tally.merge(single_coeff_sweep(ctx, step, workers)); // b = 0
    tally.merge(single_coeff_sweep(ctx, 2 % n, workers)); // a = 0
    tally
}

fn distribution_from_tally(
    ctx: &FieldContext,
    l: u32,
    tally: &SweepTally,
    expected_total: u128,
) -> Result<SumDistribution> {
    let p = ctx.p();
    let mut map: BTreeMap<GaussTypeValue, u128> = BTreeMap::new();
    for (comp, &freq) in &tally.comp_freq {
        let mut counts: Vec<u64> = comp.iter().map(|&c| u64::from(c)).collect();
        counts[0] += 1; // the x = 0 term of the sum
        let value = classify(&CyclotomicInt::from_trace_counts(p, &counts))?;
        *map.entry(value).or_insert(0) += freq;
    }
    Ok(SumDistribution::from_value_map(
        (p, ctx.m(), l),
        map,
        expected_total,
    ))
}

/// Value distribution of S(a) over a in F*, by exhaustive sweep.
pub fn s_distribution(ctx: &FieldContext, l: u32) -> Result<SumDistribution> {
    s_distribution_workers(ctx, l, 1)
}

pub fn s_distribution_workers(
    ctx: &FieldContext,
    l: u32,
    workers: usize,
) -> Result<SumDistribution> {
    validate_l(ctx.m(), l)?;
    let tally = single_coeff_sweep(ctx, power_map_step(ctx, l), workers);
    distribution_from_tally(ctx, l, &tally, u128::from(ctx.group_order()))
}

/// Value distribution of T(a, b) over (a, b) != (0, 0), by exhaustive sweep.
pub fn t_distribution(ctx: &FieldContext, l: u32) -> Result<SumDistribution> {
    t_distribution_workers(ctx, l, 1)
}

pub fn t_distribution_workers(
    ctx: &FieldContext,
    l: u32,
    workers: usize,
) -> Result<SumDistribution> {
    validate_l(ctx.m(), l)?;
    let tally = pair_coeff_sweep(ctx, l, workers);
    let q = u128::from(ctx.q());
    distribution_from_tally(ctx, l, &tally, q * q - 1)
}

pub(crate) fn p_pow(p: u32, e: u32) -> u128 {
    u128::from(p)
        .checked_pow(e)
        .expect("power of p overflows u128")
}

pub(crate) fn exact_div(n: u128, d: u128) -> u128 {
    assert_eq!(n % d, 0, "{n} is not divisible by {d}");
    n / d
}

/// Closed-form value distribution of S(a) over a in F*, keyed on the
/// 2-adic valuations of m and l.
pub fn s_distribution_closed(p: u32, m: u32, l: u32) -> Result<SumDistribution> {
    validate_l(m, l)?;
    let d = gcd(m, l);
    let q = p_pow(p, m);
    let pd = p_pow(p, d);
    let imag = p % 4 == 3 && d % 2 == 1;
    let mut map = BTreeMap::new();
    let mut put = |sign: i8, imaginary: bool, half_exp: u32, freq: u128| {
        map.insert(
            GaussTypeValue {
                sign,
                imaginary,
                half_exp,
            },
            freq,
        );
    };
    if m.trailing_zeros() <= l.trailing_zeros() {
        // Full rank everywhere; two symmetric values of magnitude p^{m/2}.
        put(1, imag, m, exact_div(q - 1, 2));
        put(-1, imag, m, exact_div(q - 1, 2));
    } else if m.trailing_zeros() == l.trailing_zeros() + 1 {
        put(-1, false, m, exact_div(pd * (q - 1), pd + 1));
        put(1, false, m + 2 * d, exact_div(q - 1, pd + 1));
    } else {
        put(1, false, m, exact_div(pd * (q - 1), pd + 1));
        put(-1, false, m + 2 * d, exact_div(q - 1, pd + 1));
    }
    Ok(SumDistribution::from_value_map((p, m, l), map, q - 1))
}

/// Frequencies of the six T(a, b) value classes when s = m/gcd(m,l) is odd,
/// ordered (r1, r2, r3, r4).
pub fn t_freqs_s_odd(p: u32, m: u32, d: u32) -> [u128; 4] {
    let q = p_pow(p, m);
    let p2d = p_pow(p, 2 * d);
    let r1 = exact_div(
        (p_pow(p, m + 2 * d) - p_pow(p, m + d) - q + p2d) * (q - 1),
        2 * (p2d - 1),
    );
    let r2 = exact_div((p_pow(p, m - d) + p_pow(p, (m - d) / 2)) * (q - 1), 2);
    let r3 = exact_div((p_pow(p, m - d) - p_pow(p, (m - d) / 2)) * (q - 1), 2);
    let r4 = exact_div((p_pow(p, m - d) - 1) * (q - 1), 2 * (p2d - 1));
    [r1, r2, r3, r4]
}

/// Frequencies of the six T(a, b) value classes when s is even, ordered
/// (k1, k2, k3, k4, k5).
pub fn t_freqs_s_even(p: u32, m: u32, d: u32) -> [u128; 5] {
    let q = p_pow(p, m);
    let p2d = p_pow(p, 2 * d);
    let half = m / 2;
    let k1 = exact_div(
        (p_pow(p, m + 2 * d) - p_pow(p, m + d) - q + p_pow(p, half + 2 * d)
            - p_pow(p, half + d)
            + p2d)
            * (q - 1),
        2 * (p2d - 1),
    );
    let k2 = exact_div(
        (p_pow(p, m + 2 * d) - p_pow(p, m + d) - q - p_pow(p, half + 2 * d)
            + p_pow(p, half + d)
            + p2d)
            * (q - 1),
        2 * (p2d - 1),
    );
    let k3 = exact_div(p_pow(p, m - d) * (q - 1), 2);
    let k4 = exact_div(
        (p_pow(p, half) - 1) * (p_pow(p, half - d) + 1) * (q - 1),
        2 * (p2d - 1),
    );
    let k5 = exact_div(
        (p_pow(p, half) + 1) * (p_pow(p, half - d) - 1) * (q - 1),
        2 * (p2d - 1),
    );
    [k1, k2, k3, k4, k5]
}

/// Closed-form value distribution of T(a, b) over (a, b) != (0, 0), keyed
/// on the parity of s = m/d.
pub fn t_distribution_closed(p: u32, m: u32, l: u32) -> Result<SumDistribution> {
    validate_l(m, l)?;
    let d = gcd(m, l);
    let s = m / d;
    let q = p_pow(p, m);
    let imag = p % 4 == 3 && d % 2 == 1;
    let mut map = BTreeMap::new();
    let mut put = |sign: i8, imaginary: bool, half_exp: u32, freq: u128| {
        if freq > 0 {
            map.insert(
                GaussTypeValue {
                    sign,
                    imaginary,
                    half_exp,
                },
                freq,
            );
        }
    };
    if s % 2 == 1 {
        let [r1, r2, r3, r4] = t_freqs_s_odd(p, m, d);
        put(1, imag, m, r1);
        put(-1, imag, m, r1);
        put(1, false, m + d, r2);
        put(-1, false, m + d, r3);
        put(1, imag, m + 2 * d, r4);
        put(-1, imag, m + 2 * d, r4);
    } else {
        let [k1, k2, k3, k4, k5] = t_freqs_s_even(p, m, d);
        put(1, false, m, k1);
        put(-1, false, m, k2);
        put(1, imag, m + d, k3);
        put(-1, imag, m + d, k3);
        put(1, false, m + 2 * d, k4);
        put(-1, false, m + 2 * d, k5);
    }
    Ok(SumDistribution::from_value_map((p, m, l), map, q * q - 1))
}

/// Evaluates sum over x of chi(a2 x^2 + a1 x + a0) two ways: the direct
/// exhaustive sum, and chi(a0 - a1^2 (4 a2)^{-1}) eta(a2) G with the Gauss
/// sum G itself computed directly. Callers assert the pair is equal.
pub fn quadratic_sum_identity_check(
    ctx: &FieldContext,
    a2: FieldElement,
    a1: FieldElement,
    a0: FieldElement,
) -> Result<(CyclotomicInt, CyclotomicInt)> {
    if a2.is_zero() {
        return Err(Error::DegenerateQuadratic);
    }
    let p = ctx.p();
    let mut counts = vec![0u64; p as usize];
    for x in ctx.elements() {
        let fx = ctx.add(ctx.mul(a2, ctx.mul(x, x)), ctx.add(ctx.mul(a1, x), a0));
        counts[ctx.trace(fx) as usize] += 1;
    }
    let direct = CyclotomicInt::from_trace_counts(p, &counts);

    let four_a2 = ctx.mul(ctx.from_prime(4 % p), a2);
    let shift = ctx.sub(a0, ctx.mul(ctx.mul(a1, a1), ctx.inv(four_a2)));
    let chi = CyclotomicInt::root_power(p, i64::from(ctx.trace(shift)));
    let closed = chi
        .mul(&gauss_sum_direct(ctx))
        .scale(i128::from(ctx.quad_char(a2)));
    Ok((direct, closed))
}

/// Rank and radical of a quadratic form given by an evaluator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuadraticFormAnalysis {
    /// m minus the dimension of the radical.
    pub rank: u32,
    /// Number of field elements in the radical W; p^{m-rank} when the
    /// evaluator really is a quadratic form.
    pub radical_size: u128,
}

/// Computes the rank of the quadratic form Q via the symmetric bilinear
/// form B(x, z) = Q(x+z) - Q(x) - Q(z) on the polynomial basis, checking
/// on the way that Q really is a quadratic form (2 Q(x) must equal the
/// bilinear expansion of B everywhere).
pub fn quadratic_form_rank(
    ctx: &FieldContext,
    q_eval: impl Fn(FieldElement) -> u32,
) -> Result<QuadraticFormAnalysis> {
    let p = u64::from(ctx.p());
    let q = ctx.q() as usize;
    let m = ctx.m() as usize;

    let mut table = vec![0u64; q];
    for x in ctx.elements() {
        table[ctx.to_packed(x) as usize] = u64::from(q_eval(x)) % p;
    }
    let bilinear = |x: u32, z: u32| -> u64 {
        let sum = table[ctx.packed_add(x, z) as usize] + 2 * p
            - table[x as usize]
            - table[z as usize];
        sum % p
    };

    // Polynomial basis 1, t, ..., t^{m-1} packs to powers of p.
    let basis: Vec<u32> = (0..m).map(|j| ctx.p().pow(j as u32)).collect();
    let mut matrix = vec![vec![0u64; m]; m];
    for i in 0..m {
        for j in 0..m {
            matrix[i][j] = bilinear(basis[i], basis[j]);
        }
    }

    // Quadratic-form consistency: 2 Q(x) = X M X^T for every x.
    for (x, &qx) in table.iter().enumerate() {
        let mut digits = vec![0u64; m];
        let mut rest = x as u64;
        for dgt in digits.iter_mut() {
            *dgt = rest % p;
            rest /= p;
        }
        let mut acc = 0u64;
        for (i, &di) in digits.iter().enumerate() {
            if di == 0 {
                continue;
            }
            for (j, &dj) in digits.iter().enumerate() {
                acc = (acc + di * dj % p * matrix[i][j]) % p;
            }
        }
        if acc != 2 * qx % p {
            return Err(Error::NotBilinear(format!(
                "bilinear expansion disagrees with the evaluator at packed element {x}"
            )));
        }
    }

    let rank = matrix_rank_mod_p(matrix, p);

    let mut radical_size = 0u128;
    for x in 0..q as u32 {
        if basis.iter().all(|&bj| bilinear(x, bj) == 0) {
            radical_size += 1;
        }
    }

    Ok(QuadraticFormAnalysis {
        rank: rank as u32,
        radical_size,
    })
}

/// The quadratic form x -> Tr(a x^{p^l+1} + b x^2) as an evaluator.
pub fn trace_form<'a>(
    ctx: &'a FieldContext,
    l: u32,
    a: FieldElement,
    b: FieldElement,
) -> Result<impl Fn(FieldElement) -> u32 + 'a> {
    validate_l(ctx.m(), l)?;
    let step = power_map_step(ctx, l) as u64;
    let n = u64::from(ctx.group_order());
    let p = ctx.p();
    let tr = ctx.trace_by_exp_table();
    Ok(move |x: FieldElement| -> u32 {
        match x {
            FieldElement::Zero => 0,
            FieldElement::Exp(i) => {
                let mut t = 0u32;
                if let FieldElement::Exp(u) = a {
                    t += tr[((u64::from(u) + u64::from(i) * step) % n) as usize];
                }
                if let FieldElement::Exp(v) = b {
                    t += tr[((u64::from(v) + 2 * u64::from(i)) % n) as usize];
                }
                t % p
            }
        }
    })
}

// Row elimination reads mat[row] while writing mat[r]; the index loop is
// the clear way to express that.
#[allow(clippy::needless_range_loop)]
fn matrix_rank_mod_p(mut mat: Vec<Vec<u64>>, p: u64) -> usize {
    let rows = mat.len();
    if rows == 0 {
        return 0;
    }
    let cols = mat[0].len();
    let mut rank = 0;
    let mut row = 0;
    for col in 0..cols {
        let Some(pivot) = (row..rows).find(|&r| !mat[r][col].is_multiple_of(p)) else {
            continue;
        };
        mat.swap(row, pivot);
        let inv = crate::field::mod_pow(mat[row][col], p - 2, p);
        for r in 0..rows {
            if r != row && !mat[r][col].is_multiple_of(p) {
                let factor = mat[r][col] * inv % p;
                for c in col..cols {
                    mat[r][c] = (mat[r][c] + (p - factor) * mat[row][c]) % p;
                }
            }
        }
        rank += 1;
        row += 1;
        if row == rows {
            break;
        }
    }
    rank
}
