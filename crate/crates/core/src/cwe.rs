//! Complete weight enumerators of the two cyclic code families, produced
//! two independent ways and cross-validated.
//!
//! The closed-form route turns a closed-form sum value distribution into
//! codeword symbol compositions via the counting formulas for
//! N(rho) = #{x : Tr(form(x)) = rho}, then divides out coefficient
//! degeneracy. The oracle route enumerates every coefficient tuple,
//! tallies actual codeword compositions, and divides out the same
//! degeneracy with hard divisibility checks, so a wrong dimension claim
//! cannot pass silently.

use crate::cyclotomic::CyclotomicInt;
use crate::error::{Error, Result};
use crate::field::{gcd, is_prime, prime_quad_char, FieldContext, FieldDescriptor, FieldElement};
use crate::sums::{
    exact_div, p_pow, pair_coeff_sweep, quadratic_form_rank, s_distribution_closed,
    s_distribution_workers, single_coeff_sweep, t_distribution_closed, t_distribution_workers,
    t_freqs_s_even, trace_form, GaussTypeValue, SumDistribution,
};
use serde::ser::SerializeStruct;
use serde::Serialize;
use std::collections::BTreeMap;
use std::time::Instant;

/// Default cap on oracle sweep size (coefficient tuples times codeword
/// length). Admits the p = 3, m = 6 pair sweep.
pub const DEFAULT_ORACLE_BUDGET: u128 = 500_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum CodeId {
    C1,
    C2,
}

impl CodeId {
    pub fn parse(s: &str) -> Option<CodeId> {
        match s.to_ascii_lowercase().as_str() {
            "c1" => Some(CodeId::C1),
            "c2" => Some(CodeId::C2),
            _ => None,
        }
    }
}

impl std::fmt::Display for CodeId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CodeId::C1 => write!(f, "C1"),
            CodeId::C2 => write!(f, "C2"),
        }
    }
}

/// Code dimension over F_p. Both families lose a factor p^{m/2} of
/// distinct coefficient choices when m = 2l.
pub fn code_dimension(code: CodeId, m: u32, l: u32) -> u32 {
    match (code, m == 2 * l) {
        (CodeId::C1, true) => m / 2,
        (CodeId::C1, false) => m,
        (CodeId::C2, true) => 3 * m / 2,
        (CodeId::C2, false) => 2 * m,
    }
}

/// Symbol composition of one codeword: counts[j] coordinates equal j.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CompositionVector(pub Vec<u32>);

impl CompositionVector {
    pub fn zero_word(p: u32, n: u32) -> Self {
        let mut counts = vec![0u32; p as usize];
        counts[0] = n;
        CompositionVector(counts)
    }

    pub fn coordinate_total(&self) -> u64 {
        self.0.iter().map(|&k| u64::from(k)).sum()
    }

    /// Hamming weight: everything that is not the zero symbol.
    pub fn weight(&self, n: u32) -> u32 {
        n - self.0[0]
    }
}

/// Complete weight enumerator: composition -> number of codewords.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CweTable {
    pub code: CodeId,
    pub p: u32,
    pub m: u32,
    pub l: u32,
    pub dim: u32,
    pub entries: BTreeMap<CompositionVector, u128>,
}

impl CweTable {
    /// Code length p^m - 1.
    pub fn length(&self) -> u32 {
        p_pow(self.p, self.m) as u32 - 1
    }

    /// Entries in the serialization order: lexicographically descending
    /// compositions, so the zero word comes first.
    pub fn ordered_entries(&self) -> impl Iterator<Item = (&CompositionVector, u128)> {
        self.entries.iter().rev().map(|(c, &f)| (c, f))
    }

    /// Monomial rendering, one term per entry, zero exponents omitted.
    pub fn monomial_text(&self) -> String {
        let terms: Vec<String> = self
            .ordered_entries()
            .map(|(comp, freq)| {
                let mut term = String::new();
                if freq != 1 {
                    term.push_str(&format!("{freq}*"));
                }
                let vars: Vec<String> = comp
                    .0
                    .iter()
                    .enumerate()
                    .filter(|&(_, &k)| k > 0)
                    .map(|(j, &k)| format!("w{j}^{k}"))
                    .collect();
                if vars.is_empty() {
                    term.push('1');
                } else {
                    term.push_str(&vars.join("*"));
                }
                term
            })
            .collect();
        terms.join(" + ")
    }

    fn check_invariants(&self) -> Result<()> {
        let n = self.length();
        let expected: u128 = p_pow(self.p, self.dim);
        let total: u128 = self.entries.values().sum();
        let zero = CompositionVector::zero_word(self.p, n);
        let ok = total == expected
            && self.entries.get(&zero) == Some(&1)
            && self
                .entries
                .keys()
                .all(|c| c.0.len() == self.p as usize && c.coordinate_total() == u64::from(n));
        if ok {
            Ok(())
        } else {
            Err(Error::DegeneracyMismatch {
                factor: expected,
                composition: zero.0,
                seen: total,
            })
        }
    }
}

impl Serialize for CweTable {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry<'a> {
            composition: &'a [u32],
            freq: u128,
        }
        let entries: Vec<Entry> = self
            .ordered_entries()
            .map(|(c, freq)| Entry {
                composition: &c.0,
                freq,
            })
            .collect();
        let mut s = serializer.serialize_struct("CweTable", 6)?;
        s.serialize_field("code", &self.code)?;
        s.serialize_field("p", &self.p)?;
        s.serialize_field("m", &self.m)?;
        s.serialize_field("l", &self.l)?;
        s.serialize_field("dim", &self.dim)?;
        s.serialize_field("entries", &entries)?;
        s.end()
    }
}

/// Ordinary weight distribution A_0..A_n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightDistribution {
    pub counts: Vec<u128>,
}

impl WeightDistribution {
    pub fn n(&self) -> u32 {
        self.counts.len() as u32 - 1
    }

    /// Smallest nonzero weight with a codeword, i.e. the minimum distance.
    pub fn min_distance(&self) -> Option<u32> {
        (1..self.counts.len())
            .find(|&w| self.counts[w] > 0)
            .map(|w| w as u32)
    }

    pub fn total(&self) -> u128 {
        self.counts.iter().sum()
    }
}

impl Serialize for WeightDistribution {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry {
            weight: u32,
            count: u128,
        }
        let nonzero: Vec<Entry> = self
            .counts
            .iter()
            .enumerate()
            .filter(|&(_, &c)| c > 0)
            .map(|(w, &count)| Entry {
                weight: w as u32,
                count,
            })
            .collect();
        let mut s = serializer.serialize_struct("WeightDistribution", 2)?;
        s.serialize_field("n", &self.n())?;
        s.serialize_field("nonzero", &nonzero)?;
        s.end()
    }
}

/// Weight distribution read off a complete weight enumerator.
pub fn collapse_to_weights(table: &CweTable) -> WeightDistribution {
    let n = table.length();
    let mut counts = vec![0u128; n as usize + 1];
    for (comp, freq) in &table.entries {
        counts[comp.weight(n) as usize] += freq;
    }
    WeightDistribution { counts }
}

/// Symbol composition of one codeword class from its sum value and the
/// rank of its quadratic form.
///
/// Even rank: the value S must be a rational integer divisible by p, and
///   k_0 = p^{m-1} - 1 + (p-1) S / p, k_rho = p^{m-1} - S / p.
/// Odd rank: S times the prime-field Gauss sum must be rational, and
///   k_0 = p^{m-1} - 1, k_rho = p^{m-1} + eta(rho) (S G) / p.
pub fn strategy_composition(
    p: u32,
    m: u32,
    value: GaussTypeValue,
    rank: u32,
) -> Result<CompositionVector> {
    let fail = |reason: &str| Error::NonIntegralComposition {
        value: value.describe(p),
        rank,
        reason: reason.to_string(),
    };
    let pm1 = p_pow(p, m - 1) as i128;
    let mut counts = vec![0i128; p as usize];
    if rank.is_multiple_of(2) {
        if value.imaginary || !value.half_exp.is_multiple_of(2) {
            return Err(fail("even rank requires a rational integer value"));
        }
        if value.half_exp == 0 {
            return Err(fail("value is not divisible by p"));
        }
        let s_over_p = i128::from(value.sign)
            * i128::from(p)
                .checked_pow(value.half_exp / 2 - 1)
                .expect("value magnitude overflows");
        counts[0] = pm1 - 1 + i128::from(p - 1) * s_over_p;
        for c in counts.iter_mut().skip(1) {
            *c = pm1 - s_over_p;
        }
    } else {
        if value.half_exp.is_multiple_of(2) {
            return Err(fail("odd rank requires a half-integer exponent value"));
        }
        if value.imaginary != (p % 4 == 3) {
            return Err(fail(
                "value times the prime-field Gauss sum is not rational",
            ));
        }
        // S G = sign * i^{2t} * p^{(e+1)/2}; i^{2t} folds to a sign.
        let unit = if value.imaginary { -1i128 } else { 1 };
        let magnitude = i128::from(p)
            .checked_pow((value.half_exp - 1) / 2)
            .expect("value magnitude overflows");
        let scaled = i128::from(value.sign) * unit * magnitude;
        counts[0] = pm1 - 1;
        for (rho, c) in counts.iter_mut().enumerate().skip(1) {
            *c = pm1 + i128::from(prime_quad_char(p, rho as u32)) * scaled;
        }
    }
    if counts.iter().any(|&c| c < 0) {
        return Err(fail("negative coordinate count"));
    }
    let total: i128 = counts.iter().sum();
    assert_eq!(
        total,
        p_pow(p, m) as i128 - 1,
        "composition violates the row-sum identity"
    );
    Ok(CompositionVector(
        counts.into_iter().map(|c| c as u32).collect(),
    ))
}

fn validate_code_params(p: u32, m: u32, l: u32) -> Result<()> {
    if p < 3 || p.is_multiple_of(2) || !is_prime(u64::from(p)) {
        return Err(Error::NotPrime(p));
    }
    if l == 0 || l >= m {
        return Err(Error::BadExponent { l, m });
    }
    Ok(())
}

/// Builds the table for a coefficient sweep: a raw composition tally over
/// all tuple values (including the all-zero tuple) divided by the
/// coefficient degeneracy tuple_count / p^dim, with exact divisibility
/// required throughout.
fn finalize_table(
    code: CodeId,
    p: u32,
    m: u32,
    l: u32,
    raw: BTreeMap<CompositionVector, u128>,
    tuple_count: u128,
) -> Result<CweTable> {
    let dim = code_dimension(code, m, l);
    let degeneracy = exact_div(tuple_count, p_pow(p, dim));
    let mut entries = BTreeMap::new();
    for (comp, freq) in raw {
        if freq % degeneracy != 0 {
            return Err(Error::DegeneracyMismatch {
                factor: degeneracy,
                composition: comp.0,
                seen: freq,
            });
        }
        entries.insert(comp, freq / degeneracy);
    }
    let table = CweTable {
        code,
        p,
        m,
        l,
        dim,
        entries,
    };
    table.check_invariants()?;
    Ok(table)
}

fn closed_table_from_distribution(
    code: CodeId,
    dist: &SumDistribution,
    tuple_count: u128,
) -> Result<CweTable> {
    let (p, m, l) = (dist.p, dist.m, dist.l);
    let n = p_pow(p, m) as u32 - 1;
    let mut raw: BTreeMap<CompositionVector, u128> = BTreeMap::new();
    raw.insert(CompositionVector::zero_word(p, n), 1);
    for entry in &dist.entries {
        let rank = 2 * m - entry.half_exp;
        let comp = strategy_composition(p, m, entry.value(), rank)?;
        *raw.entry(comp).or_insert(0) += entry.freq;
    }
    finalize_table(code, p, m, l, raw, tuple_count)
}

/// Closed-form complete weight enumerator of the one-coefficient family.
pub fn closed_form_cwe_c1(p: u32, m: u32, l: u32) -> Result<CweTable> {
    validate_code_params(p, m, l)?;
    let dist = s_distribution_closed(p, m, l)?;
    closed_table_from_distribution(CodeId::C1, &dist, p_pow(p, m))
}

/// Closed-form complete weight enumerator of the two-coefficient family.
pub fn closed_form_cwe_c2(p: u32, m: u32, l: u32) -> Result<CweTable> {
    validate_code_params(p, m, l)?;
    let dist = t_distribution_closed(p, m, l)?;
    closed_table_from_distribution(CodeId::C2, &dist, p_pow(p, 2 * m))
}

pub fn closed_form_cwe(code: CodeId, p: u32, m: u32, l: u32) -> Result<CweTable> {
    match code {
        CodeId::C1 => closed_form_cwe_c1(p, m, l),
        CodeId::C2 => closed_form_cwe_c2(p, m, l),
    }
}

/// Which closed-form case a parameter set falls into.
pub fn case_label(code: CodeId, m: u32, l: u32) -> String {
    let d = gcd(m, l);
    let s = m / d;
    match code {
        CodeId::C1 => {
            if m == 2 * l {
                format!("C1: m = 2l, degenerate, dim {}", m / 2)
            } else if m.trailing_zeros() <= l.trailing_zeros() {
                if m % 2 == 1 {
                    "C1: v2(m) = 0 <= v2(l)".to_string()
                } else {
                    "C1: 1 <= v2(m) <= v2(l)".to_string()
                }
            } else if m.trailing_zeros() == l.trailing_zeros() + 1 {
                "C1: v2(m) = v2(l) + 1".to_string()
            } else {
                "C1: v2(m) > v2(l) + 1".to_string()
            }
        }
        CodeId::C2 => {
            if m == 2 * l {
                format!(
                    "C2: m = 2l, degenerate, dim {}, d {}",
                    3 * m / 2,
                    if d % 2 == 1 { "odd" } else { "even" }
                )
            } else {
                format!(
                    "C2: s {}, d {}",
                    if s % 2 == 1 { "odd" } else { "even" },
                    if d % 2 == 1 { "odd" } else { "even" }
                )
            }
        }
    }
}

/// Record of the sign choice in the final even-rank C2 entry for s even,
/// d odd. Only one per-symbol exponent sign satisfies the row-sum
/// identity; the flipped variant is kept for reporting so a verifier can
/// show the oracle rejecting it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SignRepair {
    pub freq: u128,
    pub emitted: CompositionVector,
    pub emitted_row_sum: u64,
    pub rejected: CompositionVector,
    pub rejected_row_sum: u64,
}

/// For C2 with m != 2l, s even and d odd: the final entry (value
/// -p^{m/2+d}, even rank m-2d) admits a sign-flipped per-symbol exponent
/// variant that violates the row-sum identity. Returns the emitted and
/// rejected compositions when that entry is present.
pub fn c2_sign_repair(p: u32, m: u32, l: u32) -> Result<Option<SignRepair>> {
    validate_code_params(p, m, l)?;
    let d = gcd(m, l);
    let s = m / d;
    if m == 2 * l || !s.is_multiple_of(2) || d % 2 != 1 {
        return Ok(None);
    }
    let k5 = t_freqs_s_even(p, m, d)[4];
    if k5 == 0 {
        return Ok(None);
    }
    let value = GaussTypeValue {
        sign: -1,
        imaginary: false,
        half_exp: m + 2 * d,
    };
    let emitted = strategy_composition(p, m, value, m - 2 * d)?;
    // Flip the sign of the per-symbol offset: k_rho = p^{m-1} - p^{(m+2d-2)/2}.
    let pm1 = p_pow(p, m - 1) as u64;
    let offset = p_pow(p, (m + 2 * d - 2) / 2) as u64;
    let mut rejected = emitted.0.clone();
    for k in rejected.iter_mut().skip(1) {
        *k = (pm1 - offset) as u32;
    }
    let rejected = CompositionVector(rejected);
    Ok(Some(SignRepair {
        freq: k5,
        emitted_row_sum: emitted.coordinate_total(),
        emitted,
        rejected_row_sum: rejected.coordinate_total(),
        rejected,
    }))
}

/// Result of the exhaustive enumeration oracle.
#[derive(Debug, Clone)]
pub struct OracleOutcome {
    pub table: CweTable,
    /// Hamming-weight census accumulated tuple by tuple during the sweep,
    /// divided by the same degeneracy as the table. Independent of the
    /// composition map.
    pub weight_census: WeightDistribution,
    pub degeneracy: u128,
    pub evaluations: u128,
}

/// Enumerates every coefficient tuple, tallies codeword compositions, and
/// divides out coefficient degeneracy.
pub fn brute_force_cwe(ctx: &FieldContext, l: u32, code: CodeId) -> Result<CweTable> {
    brute_force_outcome(ctx, l, code, DEFAULT_ORACLE_BUDGET, 1).map(|o| o.table)
}

pub fn brute_force_outcome(
    ctx: &FieldContext,
    l: u32,
    code: CodeId,
    budget: u128,
    workers: usize,
) -> Result<OracleOutcome> {
    validate_code_params(ctx.p(), ctx.m(), l)?;
    let p = ctx.p();
    let m = ctx.m();
    let n = ctx.group_order();
    let q = u128::from(ctx.q());
    let tuple_count = match code {
        CodeId::C1 => q,
        CodeId::C2 => q * q,
    };
    let evaluations = tuple_count * u128::from(n);
    if evaluations > budget {
        return Err(Error::BudgetExceeded {
            needed: evaluations,
            budget,
        });
    }

    let tally = match code {
        CodeId::C1 => {
            let step = ((p_pow(p, l) + 1) % u128::from(n)) as usize;
            single_coeff_sweep(ctx, step, workers)
        }
        CodeId::C2 => pair_coeff_sweep(ctx, l, workers),
    };

    let mut raw: BTreeMap<CompositionVector, u128> = tally
        .comp_freq
        .into_iter()
        .map(|(k, v)| (CompositionVector(k), v))
        .collect();
    *raw.entry(CompositionVector::zero_word(p, n)).or_insert(0) += 1;

    let table = finalize_table(code, p, m, l, raw, tuple_count)?;
    let degeneracy = exact_div(tuple_count, p_pow(p, table.dim));

    let mut census = vec![0u128; n as usize + 1];
    census[0] = 1; // the all-zero tuple
    for (w, &c) in tally.weight_census.iter().enumerate() {
        census[w] += u128::from(c);
    }
    for (w, c) in census.iter_mut().enumerate() {
        if *c % degeneracy != 0 {
            return Err(Error::DegeneracyMismatch {
                factor: degeneracy,
                composition: vec![w as u32],
                seen: *c,
            });
        }
        *c /= degeneracy;
    }

    Ok(OracleOutcome {
        table,
        weight_census: WeightDistribution { counts: census },
        degeneracy,
        evaluations,
    })
}

/// Options for `verify_with`.
#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub budget: u128,
    pub workers: usize,
    pub poly_override: Option<Vec<u32>>,
    /// Upper bound on forms * q * m^2 work for the bilinear-radical rank
    /// census; beyond it the census falls back to sum-value classification.
    pub rank_census_work_limit: u128,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            budget: DEFAULT_ORACLE_BUDGET,
            workers: 1,
            poly_override: None,
            rank_census_work_limit: 200_000_000,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TableDiff {
    pub composition: CompositionVector,
    pub closed_freq: u128,
    pub brute_freq: u128,
}

#[derive(Debug, Clone, Serialize)]
pub struct DistDiff {
    pub value: String,
    pub direct_freq: u128,
    pub closed_freq: u128,
}

#[derive(Debug, Clone, Serialize)]
pub struct RankCount {
    pub rank: u32,
    pub count: u128,
}

#[derive(Debug, Clone, Serialize)]
pub struct RankCensus {
    /// "bilinear-radical" (kernel of the polarized form, with radical
    /// size checks) or "value-classification" (rank read off the
    /// classified sum value) when the radical route is over the work
    /// limit.
    pub method: String,
    pub counts: Vec<RankCount>,
    pub allowed: Vec<u32>,
    pub within_allowed: bool,
    /// True when every radical size matched p^{m - rank}; vacuously true
    /// for the classification route.
    pub radical_sizes_ok: bool,
}

#[derive(Debug, Clone, Default)]
pub struct TimingsMs {
    pub closed_ms: u128,
    pub brute_ms: u128,
    pub dist_ms: u128,
    pub rank_ms: u128,
}

/// Everything the cross-validation run produced. Timings are excluded
/// from serialization so reports stay byte-identical across runs.
#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub code: CodeId,
    pub field: FieldDescriptor,
    pub l: u32,
    pub dim: u32,
    pub case: String,
    pub matched: bool,
    pub table_match: bool,
    pub table_diffs: Vec<TableDiff>,
    pub dist_match: bool,
    pub dist_diffs: Vec<DistDiff>,
    pub weight_census_match: bool,
    pub min_distance: Option<u32>,
    pub rank_census: Option<RankCensus>,
    pub sign_repair: Option<SignRepair>,
    pub closed_table: Option<CweTable>,
    pub brute_table: Option<CweTable>,
    pub budget_exceeded: bool,
    pub errors: Vec<String>,
    #[serde(skip)]
    pub timings: TimingsMs,
}

/// Cross-validates the closed form against the enumeration oracle with
/// default options.
pub fn verify(p: u32, m: u32, l: u32, code: CodeId) -> Result<VerificationReport> {
    verify_with(p, m, l, code, &VerifyOptions::default())
}

/// Cross-validates the closed form against the enumeration oracle.
/// Parameter-level failures (bad prime, bad l, oversized field) abort;
/// failures inside either computation are folded into the report.
pub fn verify_with(
    p: u32,
    m: u32,
    l: u32,
    code: CodeId,
    opts: &VerifyOptions,
) -> Result<VerificationReport> {
    validate_code_params(p, m, l)?;
    let ctx = FieldContext::build(p, m, opts.poly_override.as_deref())?;
    let mut timings = TimingsMs::default();
    let mut errors = Vec::new();
    let mut budget_exceeded = false;

    let t0 = Instant::now();
    let closed_table = match closed_form_cwe(code, p, m, l) {
        Ok(t) => Some(t),
        Err(e) => {
            errors.push(format!("closed form: {e}"));
            None
        }
    };
    let sign_repair = match code {
        CodeId::C2 => c2_sign_repair(p, m, l)?,
        CodeId::C1 => None,
    };
    timings.closed_ms = t0.elapsed().as_millis();

    let t0 = Instant::now();
    let oracle = match brute_force_outcome(&ctx, l, code, opts.budget, opts.workers) {
        Ok(o) => Some(o),
        Err(e) => {
            budget_exceeded = matches!(e, Error::BudgetExceeded { .. });
            errors.push(format!("oracle: {e}"));
            None
        }
    };
    timings.brute_ms = t0.elapsed().as_millis();

    let (table_match, table_diffs) = match (&closed_table, &oracle) {
        (Some(ct), Some(or)) => diff_cwe_tables(ct, &or.table),
        _ => (false, Vec::new()),
    };

    // Sum value distribution: direct sweep against the closed cases.
    let t0 = Instant::now();
    let mut direct_dist = None;
    let (dist_match, dist_diffs) = {
        let q = u128::from(ctx.q());
        let n = u128::from(ctx.group_order());
        let evals = match code {
            CodeId::C1 => q * n,
            CodeId::C2 => q * q * n,
        };
        let pair = if evals > opts.budget {
            Err(Error::BudgetExceeded {
                needed: evals,
                budget: opts.budget,
            })
        } else {
            match code {
                CodeId::C1 => s_distribution_workers(&ctx, l, opts.workers)
                    .and_then(|dir| Ok((dir, s_distribution_closed(p, m, l)?))),
                CodeId::C2 => t_distribution_workers(&ctx, l, opts.workers)
                    .and_then(|dir| Ok((dir, t_distribution_closed(p, m, l)?))),
            }
        };
        match pair {
            Ok((direct, closed)) => {
                let outcome = diff_distributions(&direct, &closed);
                direct_dist = Some(direct);
                outcome
            }
            Err(e) => {
                budget_exceeded |= matches!(e, Error::BudgetExceeded { .. });
                errors.push(format!("distribution: {e}"));
                (false, Vec::new())
            }
        }
    };
    timings.dist_ms = t0.elapsed().as_millis();

    let t0 = Instant::now();
    let rank_census = match rank_census(
        &ctx,
        l,
        code,
        opts.rank_census_work_limit,
        direct_dist.as_ref(),
    ) {
        Ok(c) => Some(c),
        Err(e) => {
            errors.push(format!("rank census: {e}"));
            None
        }
    };
    timings.rank_ms = t0.elapsed().as_millis();

    let weight_census_match = oracle
        .as_ref()
        .map(|o| collapse_to_weights(&o.table) == o.weight_census)
        .unwrap_or(false);
    let min_distance = closed_table
        .as_ref()
        .and_then(|t| collapse_to_weights(t).min_distance());

    let matched = errors.is_empty()
        && table_match
        && dist_match
        && weight_census_match
        && rank_census
            .as_ref()
            .map(|c| c.within_allowed && c.radical_sizes_ok)
            .unwrap_or(false);

    Ok(VerificationReport {
        code,
        field: FieldDescriptor::from(&ctx),
        l,
        dim: code_dimension(code, m, l),
        case: case_label(code, m, l),
        matched,
        table_match,
        table_diffs,
        dist_match,
        dist_diffs,
        weight_census_match,
        min_distance,
        rank_census,
        sign_repair,
        closed_table,
        brute_table: oracle.map(|o| o.table),
        budget_exceeded,
        errors,
        timings,
    })
}

/// Pointwise frequency differences between two tables (missing = 0).
pub fn diff_cwe_tables(a: &CweTable, b: &CweTable) -> (bool, Vec<TableDiff>) {
    let mut diffs = Vec::new();
    let keys: std::collections::BTreeSet<&CompositionVector> =
        a.entries.keys().chain(b.entries.keys()).collect();
    for key in keys {
        let fa = a.entries.get(key).copied().unwrap_or(0);
        let fb = b.entries.get(key).copied().unwrap_or(0);
        if fa != fb {
            diffs.push(TableDiff {
                composition: (*key).clone(),
                closed_freq: fa,
                brute_freq: fb,
            });
        }
    }
    (diffs.is_empty() && a.dim == b.dim, diffs)
}

fn diff_distributions(
    direct: &SumDistribution,
    closed: &SumDistribution,
) -> (bool, Vec<DistDiff>) {
    let mut diffs = Vec::new();
    let to_map = |d: &SumDistribution| -> BTreeMap<GaussTypeValue, u128> {
        d.entries.iter().map(|e| (e.value(), e.freq)).collect()
    };
    let da = to_map(direct);
    let db = to_map(closed);
    let keys: std::collections::BTreeSet<GaussTypeValue> =
        da.keys().chain(db.keys()).copied().collect();
    for key in keys {
        let fa = da.get(&key).copied().unwrap_or(0);
        let fb = db.get(&key).copied().unwrap_or(0);
        if fa != fb {
            diffs.push(DistDiff {
                value: key.describe(direct.p),
                direct_freq: fa,
                closed_freq: fb,
            });
        }
    }
    (diffs.is_empty(), diffs)
}

/// Rank census over all coefficient tuples, preferring the
/// bilinear-radical route when it fits in the work limit. A precomputed
/// direct distribution, when given, backs the classification fallback.
fn rank_census(
    ctx: &FieldContext,
    l: u32,
    code: CodeId,
    work_limit: u128,
    precomputed: Option<&SumDistribution>,
) -> Result<RankCensus> {
    let p = ctx.p();
    let m = ctx.m();
    let d = gcd(m, l);
    let mut allowed: Vec<u32> = vec![m, m - d];
    if m >= 2 * d {
        allowed.push(m - 2 * d);
    }
    allowed.sort_unstable();
    allowed.dedup();

    let q = u128::from(ctx.q());
    let forms = match code {
        CodeId::C1 => q - 1,
        CodeId::C2 => q * q - 1,
    };
    let radical_work = forms * q * u128::from(m) * u128::from(m);

    let mut counts: BTreeMap<u32, u128> = BTreeMap::new();
    let mut radical_sizes_ok = true;
    let method;
    if radical_work <= work_limit {
        method = "bilinear-radical";
        let tuples: Vec<(FieldElement, FieldElement)> = match code {
            CodeId::C1 => ctx
                .nonzero_elements()
                .map(|a| (a, FieldElement::Zero))
                .collect(),
            CodeId::C2 => {
                let mut v = Vec::new();
                for a in ctx.elements() {
                    for b in ctx.elements() {
                        if !(a.is_zero() && b.is_zero()) {
                            v.push((a, b));
                        }
                    }
                }
                v
            }
        };
        for (a, b) in tuples {
            let analysis = quadratic_form_rank(ctx, trace_form(ctx, l, a, b)?)?;
            radical_sizes_ok &= analysis.radical_size == p_pow(p, m - analysis.rank);
            *counts.entry(analysis.rank).or_insert(0) += 1;
        }
    } else {
        method = "value-classification";
        let computed;
        let dist = match precomputed {
            Some(d) => d,
            None => {
                computed = match code {
                    CodeId::C1 => s_distribution_workers(ctx, l, 1)?,
                    CodeId::C2 => t_distribution_workers(ctx, l, 1)?,
                };
                &computed
            }
        };
        for entry in &dist.entries {
            *counts.entry(2 * m - entry.half_exp).or_insert(0) += entry.freq;
        }
    }

    let within_allowed = counts.keys().all(|r| allowed.contains(r));
    Ok(RankCensus {
        method: method.to_string(),
        counts: counts
            .into_iter()
            .map(|(rank, count)| RankCount { rank, count })
            .collect(),
        allowed,
        within_allowed,
        radical_sizes_ok,
    })
}

/// One-line human summary of a verification run.
pub fn report_summary(report: &VerificationReport) -> String {
    format!(
        "{} p={} m={} l={} dim={} case [{}] {}",
        report.code,
        report.field.p,
        report.field.m,
        report.l,
        report.dim,
        report.case,
        if report.matched { "match" } else { "MISMATCH" }
    )
}

/// Codeword composition evaluated symbol by symbol with generic field
/// arithmetic; a slow cross-check for the table-driven sweeps.
pub fn codeword_composition_slow(
    ctx: &FieldContext,
    l: u32,
    a: FieldElement,
    b: Option<FieldElement>,
) -> CompositionVector {
    let e = i64::from(ctx.p()).pow(l) + 1;
    let mut counts = vec![0u32; ctx.p() as usize];
    for x in ctx.nonzero_elements() {
        let mut v = ctx.mul(a, ctx.pow(x, e));
        if let Some(b) = b {
            v = ctx.add(v, ctx.mul(b, ctx.mul(x, x)));
        }
        counts[ctx.trace(v) as usize] += 1;
    }
    CompositionVector(counts)
}

/// The exponential sum of a codeword recovered from its composition:
/// 1 + sum_j counts[j] zeta^j.
pub fn composition_sum_value(p: u32, comp: &CompositionVector) -> CyclotomicInt {
    let mut counts: Vec<u64> = comp.0.iter().map(|&c| u64::from(c)).collect();
    counts[0] += 1;
    CyclotomicInt::from_trace_counts(p, &counts)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table_entries(table: &CweTable) -> Vec<(Vec<u32>, u128)> {
        table
            .ordered_entries()
            .map(|(c, f)| (c.0.clone(), f))
            .collect()
    }

    fn check(table: &CweTable, expected: &[(&[u32], u128)]) {
        let actual = table_entries(table);
        let expected: Vec<(Vec<u32>, u128)> =
            expected.iter().map(|&(c, f)| (c.to_vec(), f)).collect();
        assert_eq!(actual, expected);
    }

    #[test]
    fn strategy_composition_golden_cases() {
        // Odd rank at p=5, m=3: S G / p = +5 gives (24, 30, 20, 20, 30).
        let v = GaussTypeValue {
            sign: 1,
            imaginary: false,
            half_exp: 3,
        };
        assert_eq!(
            strategy_composition(5, 3, v, 3).unwrap().0,
            vec![24, 30, 20, 20, 30]
        );
        // Even rank, S = -p^{m/2} at p=3, m=2: (0, 4, 4).
        let v = GaussTypeValue {
            sign: -1,
            imaginary: false,
            half_exp: 2,
        };
        assert_eq!(strategy_composition(3, 2, v, 2).unwrap().0, vec![0, 4, 4]);
        // Even rank, S = +p^{m/2} at p=3, m=4: (32, 24, 24).
        let v = GaussTypeValue {
            sign: 1,
            imaginary: false,
            half_exp: 4,
        };
        assert_eq!(
            strategy_composition(3, 4, v, 4).unwrap().0,
            vec![32, 24, 24]
        );
    }

    #[test]
    fn strategy_composition_rejects_mismatches() {
        // Even rank with an irrational value.
        let v = GaussTypeValue {
            sign: 1,
            imaginary: true,
            half_exp: 3,
        };
        assert!(matches!(
            strategy_composition(3, 3, v, 2),
            Err(Error::NonIntegralComposition { .. })
        ));
        // Odd rank with a real value over p = 3 mod 4.
        let v = GaussTypeValue {
            sign: 1,
            imaginary: false,
            half_exp: 3,
        };
        assert!(matches!(
            strategy_composition(3, 3, v, 3),
            Err(Error::NonIntegralComposition { .. })
        ));
    }

    #[test]
    fn c1_golden_5_3_1() {
        let table = closed_form_cwe_c1(5, 3, 1).unwrap();
        assert_eq!(table.dim, 3);
        check(
            &table,
            &[
                (&[124, 0, 0, 0, 0], 1),
                (&[24, 30, 20, 20, 30], 62),
                (&[24, 20, 30, 30, 20], 62),
            ],
        );
    }

    #[test]
    fn c1_golden_3_6_2() {
        let table = closed_form_cwe_c1(3, 6, 2).unwrap();
        check(
            &table,
            &[
                (&[728, 0, 0], 1),
                (&[260, 234, 234], 364),
                (&[224, 252, 252], 364),
            ],
        );
    }

    #[test]
    fn c1_golden_3_6_1() {
        let table = closed_form_cwe_c1(3, 6, 1).unwrap();
        check(
            &table,
            &[
                (&[728, 0, 0], 1),
                (&[296, 216, 216], 182),
                (&[224, 252, 252], 546),
            ],
        );
    }

    #[test]
    fn c1_golden_3_4_1() {
        let table = closed_form_cwe_c1(3, 4, 1).unwrap();
        check(
            &table,
            &[(&[80, 0, 0], 1), (&[32, 24, 24], 60), (&[8, 36, 36], 20)],
        );
    }

    #[test]
    fn c1_golden_3_2_1() {
        let table = closed_form_cwe_c1(3, 2, 1).unwrap();
        assert_eq!(table.dim, 1);
        check(&table, &[(&[8, 0, 0], 1), (&[0, 4, 4], 2)]);
        assert_eq!(table.monomial_text(), "w0^8 + 2*w1^4*w2^4");
    }

    #[test]
    fn c2_golden_3_3_1() {
        let table = closed_form_cwe_c2(3, 3, 1).unwrap();
        assert_eq!(table.dim, 6);
        check(
            &table,
            &[
                (&[26, 0, 0], 1),
                (&[14, 6, 6], 156),
                (&[8, 18, 0], 13),
                (&[8, 12, 6], 234),
                (&[8, 6, 12], 234),
                (&[8, 0, 18], 13),
                (&[2, 12, 12], 78),
            ],
        );
    }

    #[test]
    fn c2_golden_3_6_2() {
        let table = closed_form_cwe_c2(3, 6, 2).unwrap();
        assert_eq!(table.dim, 12);
        check(
            &table,
            &[
                (&[728, 0, 0], 1),
                (&[404, 162, 162], 364),
                (&[296, 216, 216], 32760),
                (&[260, 234, 234], 235872),
                (&[224, 252, 252], 235872),
                (&[188, 270, 270], 26208),
                (&[80, 324, 324], 364),
            ],
        );
    }

    #[test]
    fn c2_golden_3_4_2() {
        let table = closed_form_cwe_c2(3, 4, 2).unwrap();
        assert_eq!(table.dim, 6);
        check(
            &table,
            &[
                (&[80, 0, 0], 1),
                (&[44, 18, 18], 40),
                (&[32, 24, 24], 360),
                (&[20, 30, 30], 288),
                (&[8, 36, 36], 40),
            ],
        );
    }

    #[test]
    fn oracle_matches_closed_form_small() {
        for (p, m, l, code) in [
            (3u32, 2u32, 1u32, CodeId::C1),
            (3, 3, 1, CodeId::C1),
            (3, 4, 2, CodeId::C1),
            (5, 2, 1, CodeId::C1),
            (3, 2, 1, CodeId::C2),
            (3, 3, 1, CodeId::C2),
            (3, 4, 2, CodeId::C2),
            (5, 2, 1, CodeId::C2),
        ] {
            let ctx = FieldContext::build(p, m, None).unwrap();
            let brute = brute_force_cwe(&ctx, l, code).unwrap();
            let closed = closed_form_cwe(code, p, m, l).unwrap();
            assert_eq!(brute, closed, "p={p} m={m} l={l} {code}");
        }
    }

    #[test]
    fn oracle_composition_rows_match_slow_evaluation() {
        let ctx = FieldContext::build(3, 3, None).unwrap();
        let a = ctx.element(5);
        let b = ctx.element(17);
        let slow = codeword_composition_slow(&ctx, 1, a, Some(b));
        let direct = crate::sums::exp_sum_t(&ctx, 1, a, b).unwrap();
        assert_eq!(composition_sum_value(3, &slow), direct);
    }

    #[test]
    fn budget_is_enforced() {
        let ctx = FieldContext::build(3, 3, None).unwrap();
        let err = brute_force_outcome(&ctx, 1, CodeId::C2, 1000, 1).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { .. }));
    }

    #[test]
    fn oracle_workers_are_bit_identical() {
        let ctx = FieldContext::build(3, 4, None).unwrap();
        let one = brute_force_outcome(&ctx, 1, CodeId::C2, DEFAULT_ORACLE_BUDGET, 1).unwrap();
        let four = brute_force_outcome(&ctx, 1, CodeId::C2, DEFAULT_ORACLE_BUDGET, 4).unwrap();
        assert_eq!(one.table, four.table);
        assert_eq!(one.weight_census, four.weight_census);
    }

    #[test]
    fn degenerate_dimension_divides_out() {
        // m = 2l: dimension drops and the degeneracy factor is p^{m/2}.
        let ctx = FieldContext::build(3, 2, None).unwrap();
        let outcome = brute_force_outcome(&ctx, 1, CodeId::C1, DEFAULT_ORACLE_BUDGET, 1).unwrap();
        assert_eq!(outcome.degeneracy, 3);
        assert_eq!(outcome.table.dim, 1);
        let closed = closed_form_cwe_c1(3, 2, 1).unwrap();
        assert_eq!(outcome.table, closed);

        let outcome = brute_force_outcome(&ctx, 1, CodeId::C2, DEFAULT_ORACLE_BUDGET, 1).unwrap();
        assert_eq!(outcome.degeneracy, 3);
        assert_eq!(outcome.table.dim, 3);
        assert_eq!(outcome.table, closed_form_cwe_c2(3, 2, 1).unwrap());
    }

    #[test]
    fn collapse_matches_census_and_parameters() {
        let ctx = FieldContext::build(3, 3, None).unwrap();
        let outcome = brute_force_outcome(&ctx, 1, CodeId::C2, DEFAULT_ORACLE_BUDGET, 1).unwrap();
        let weights = collapse_to_weights(&outcome.table);
        assert_eq!(weights, outcome.weight_census);
        // [26, 6, 12] code.
        assert_eq!(weights.counts[0], 1);
        assert_eq!(weights.min_distance(), Some(12));
        assert_eq!(weights.total(), 729);

        let c2_42 = closed_form_cwe_c2(3, 4, 2).unwrap();
        assert_eq!(collapse_to_weights(&c2_42).min_distance(), Some(36));
    }

    #[test]
    fn zero_only_table_collapse() {
        let mut entries = BTreeMap::new();
        entries.insert(CompositionVector::zero_word(3, 8), 1u128);
        let table = CweTable {
            code: CodeId::C1,
            p: 3,
            m: 2,
            l: 1,
            dim: 0,
            entries,
        };
        let weights = collapse_to_weights(&table);
        assert_eq!(weights.counts[0], 1);
        assert!(weights.counts[1..].iter().all(|&c| c == 0));
        assert_eq!(weights.min_distance(), None);
    }

    #[test]
    fn sign_repair_at_3_4_3() {
        let repair = c2_sign_repair(3, 4, 3).unwrap().unwrap();
        assert_eq!(repair.freq, 100);
        assert_eq!(repair.emitted.0, vec![8, 36, 36]);
        assert_eq!(repair.emitted_row_sum, 80);
        assert_eq!(repair.rejected.0, vec![8, 18, 18]);
        assert_eq!(repair.rejected_row_sum, 44);

        // The oracle contains the emitted entry and not the rejected one.
        let ctx = FieldContext::build(3, 4, None).unwrap();
        let brute = brute_force_cwe(&ctx, 3, CodeId::C2).unwrap();
        assert_eq!(brute.entries.get(&repair.emitted), Some(&100));
        assert_eq!(brute.entries.get(&repair.rejected), None);
    }

    #[test]
    fn sign_repair_absent_when_inapplicable() {
        // s odd.
        assert_eq!(c2_sign_repair(3, 3, 1).unwrap(), None);
        // d even.
        assert_eq!(c2_sign_repair(3, 4, 2).unwrap(), None);
        // m = 2l.
        assert_eq!(c2_sign_repair(3, 2, 1).unwrap(), None);
        // m = 2l with d odd also has the K5 class empty.
        assert_eq!(c2_sign_repair(3, 6, 3).unwrap(), None);
    }

    #[test]
    fn verify_small_c2() {
        let report = verify(3, 3, 1, CodeId::C2).unwrap();
        assert!(report.matched, "{report:?}");
        assert!(report.table_match);
        assert!(report.dist_match);
        assert!(report.weight_census_match);
        assert_eq!(report.min_distance, Some(12));
        let census = report.rank_census.unwrap();
        assert_eq!(census.method, "bilinear-radical");
        assert!(census.within_allowed && census.radical_sizes_ok);
        assert_eq!(report.sign_repair, None);
    }

    #[test]
    fn verify_small_c1() {
        let report = verify(5, 3, 1, CodeId::C1).unwrap();
        assert!(report.matched, "{report:?}");
        assert_eq!(report.dim, 3);
        // Both nonzero classes have k_0 = 24, so every nonzero codeword
        // has weight 124 - 24 = 100.
        assert_eq!(report.min_distance, Some(100));
    }

    #[test]
    fn verify_reports_budget_exhaustion() {
        let opts = VerifyOptions {
            budget: 10,
            ..VerifyOptions::default()
        };
        let report = verify_with(3, 3, 1, CodeId::C2, &opts).unwrap();
        assert!(!report.matched);
        assert!(report.budget_exceeded);
        assert!(report.brute_table.is_none());
        assert!(!report.errors.is_empty());
    }

    #[test]
    fn c1_balanced_nonzero_symbols() {
        // For C1 with m != 2l, every nonzero symbol appears equally often
        // over the whole code.
        for (p, m, l) in [(3u32, 3u32, 1u32), (3, 4, 1), (5, 3, 1)] {
            let table = closed_form_cwe_c1(p, m, l).unwrap();
            let mut symbol_totals = vec![0u128; p as usize];
            for (comp, freq) in &table.entries {
                for (j, &k) in comp.0.iter().enumerate() {
                    symbol_totals[j] += u128::from(k) * freq;
                }
            }
            assert!(
                symbol_totals[2..].iter().all(|&t| t == symbol_totals[1]),
                "p={p} m={m} l={l}: {symbol_totals:?}"
            );
        }
    }

    #[test]
    fn representation_independence_of_oracle() {
        let a = FieldContext::build(3, 3, None).unwrap();
        let b = FieldContext::build(3, 3, Some(&[1, 2, 0, 1])).unwrap();
        for code in [CodeId::C1, CodeId::C2] {
            assert_eq!(
                brute_force_cwe(&a, 1, code).unwrap(),
                brute_force_cwe(&b, 1, code).unwrap()
            );
        }
    }

    #[test]
    fn table_json_shape() {
        let table = closed_form_cwe_c1(3, 2, 1).unwrap();
        let json = serde_json::to_value(&table).unwrap();
        assert_eq!(json["code"], "C1");
        assert_eq!(json["p"], 3);
        assert_eq!(json["dim"], 1);
        assert_eq!(
            json["entries"][0]["composition"],
            serde_json::json!([8, 0, 0])
        );
        assert_eq!(json["entries"][0]["freq"], 1);
        assert_eq!(
            json["entries"][1]["composition"],
            serde_json::json!([0, 4, 4])
        );
        assert_eq!(json["entries"][1]["freq"], 2);
    }
}
