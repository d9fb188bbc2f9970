//! Deterministic construction of the finite field F_{p^m} for odd primes p,
//! with exact table-backed arithmetic.
//!
//! Elements are stored in discrete-log form: `Zero` or `Exp(i)` meaning
//! `alpha^i` for the root `alpha` of the chosen primitive polynomial.
//! Multiplication and powering are index arithmetic mod p^m - 1; addition
//! goes through the coefficient (antilog) tables. Without an override, the
//! primitive polynomial is the lexicographically smallest monic one
//! (coefficient vector compared constant term first), so a given (p, m)
//! always yields the same tables.

use crate::error::{Error, Result};

/// Default cap on p^m. Tables are O(p^m) words.
pub const DEFAULT_FIELD_CAP: u64 = 1 << 22;

/// Hard ceiling on p^m regardless of the configured cap.
const HARD_CAP: u64 = 1 << 31;

/// An element of F_{p^m}: zero, or a power of the fixed primitive element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldElement {
    Zero,
    Exp(u32),
}

impl FieldElement {
    pub fn is_zero(self) -> bool {
        self == FieldElement::Zero
    }
}

/// Precomputed structure of F_{p^m}: primitive polynomial, log/antilog
/// tables and trace tables. Immutable once built; all operations on it are
/// read-only, so it can be shared freely across threads.
#[derive(Debug, Clone)]
pub struct FieldContext {
    p: u32,
    m: u32,
    q: u32,
    /// Monic primitive polynomial, constant term first, length m + 1.
    prim_poly: Vec<u32>,
    /// antilog[i] = packed coefficient vector of alpha^i, length q - 1.
    antilog: Vec<u32>,
    /// log[packed] = i for nonzero packed values; log[0] is a sentinel.
    log: Vec<u32>,
    /// trace_by_packed[packed] = Tr(x) in [0, p).
    trace_by_packed: Vec<u32>,
    /// trace_by_exp[i] = Tr(alpha^i), length q - 1.
    trace_by_exp: Vec<u32>,
}

impl FieldContext {
    /// Builds F_{p^m} with the default size cap.
    pub fn build(p: u32, m: u32, poly_override: Option<&[u32]>) -> Result<Self> {
        Self::build_capped(p, m, poly_override, DEFAULT_FIELD_CAP)
    }

    /// Builds F_{p^m}, refusing fields larger than `cap` elements.
    ///
    /// `poly_override`, if given, must be the full coefficient vector
    /// (constant term first, leading 1) of a monic degree-m primitive
    /// polynomial over F_p. `m` must be at least 1.
    pub fn build_capped(
        p: u32,
        m: u32,
        poly_override: Option<&[u32]>,
        cap: u64,
    ) -> Result<Self> {
        if p < 3 || p.is_multiple_of(2) || !is_prime(u64::from(p)) {
            return Err(Error::NotPrime(p));
        }
        assert!(m >= 1, "extension degree must be at least 1");
        let cap = cap.min(HARD_CAP);
        let mut q: u64 = 1;
        for _ in 0..m {
            q = q.saturating_mul(u64::from(p));
            if q > cap {
                return Err(Error::CapExceeded {
                    q: u128::from(p).pow(m),
                    cap: u128::from(cap),
                });
            }
        }
        let q = q as u32;
        let n = u64::from(q) - 1;
        let n_factors = prime_factors(n);

        let prim_poly = match poly_override {
            Some(f) => {
                let ok = f.len() == m as usize + 1
                    && *f.last().unwrap() == 1
                    && f.iter().all(|&c| c < p)
                    && generates_full_group(f, p, n, &n_factors);
                if !ok {
                    return Err(Error::NotPrimitive(f.to_vec(), m, p));
                }
                f.to_vec()
            }
            None => smallest_primitive_poly(p, m, n, &n_factors),
        };

        // Power table: repeated multiplication by t modulo the primitive
        // polynomial, on coefficient digit vectors.
        let mut antilog = vec![0u32; n as usize];
        let mut log = vec![u32::MAX; q as usize];
        let mut digits = vec![0u32; m as usize];
        digits[0] = 1;
        #[allow(clippy::needless_range_loop)]
        for i in 0..n as usize {
            let packed = pack(&digits, p);
            antilog[i] = packed;
            assert!(
                log[packed as usize] == u32::MAX,
                "power table collision; polynomial is not primitive"
            );
            log[packed as usize] = i as u32;
            mul_by_t(&mut digits, &prim_poly, p);
        }
        assert_eq!(pack(&digits, p), 1, "alpha does not have order q - 1");

        // Traces of the basis 1, t, ..., t^{m-1}: Tr(t^j) = sum_i (t^{p^i})^j.
        // Non-constant coefficients must cancel in each sum.
        let mut frob = Vec::with_capacity(m as usize);
        let mut beta = if m == 1 {
            vec![(p - prim_poly[0] % p) % p]
        } else {
            let mut v = vec![0u32; m as usize];
            v[1] = 1;
            v
        };
        for _ in 0..m {
            frob.push(beta.clone());
            beta = poly_powmod(&beta, u64::from(p), &prim_poly, p);
        }
        let mut basis_trace = vec![0u32; m as usize];
        let mut acc = vec![vec![0u64; m as usize]; m as usize];
        for fr in &frob {
            let mut pw = vec![0u32; m as usize];
            pw[0] = 1;
            for a in acc.iter_mut() {
                for (s, &c) in a.iter_mut().zip(pw.iter()) {
                    *s += u64::from(c);
                }
                pw = poly_mulmod(&pw, fr, &prim_poly, p);
            }
        }
        for (j, a) in acc.iter().enumerate() {
            assert!(
                a[1..].iter().all(|&s| s % u64::from(p) == 0),
                "trace of basis element t^{j} is not in the prime field"
            );
            basis_trace[j] = (a[0] % u64::from(p)) as u32;
        }

        let mut trace_by_packed = vec![0u32; q as usize];
        for (x, slot) in trace_by_packed.iter_mut().enumerate() {
            let mut acc = 0u64;
            let mut rest = x as u32;
            for &bt in &basis_trace {
                acc += u64::from(rest % p) * u64::from(bt);
                rest /= p;
            }
            *slot = (acc % u64::from(p)) as u32;
        }
        let trace_by_exp = antilog
            .iter()
            .map(|&packed| trace_by_packed[packed as usize])
            .collect();

        Ok(FieldContext {
            p,
            m,
            q,
            prim_poly,
            antilog,
            log,
            trace_by_packed,
            trace_by_exp,
        })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// Field size p^m.
    pub fn q(&self) -> u32 {
        self.q
    }

    /// Multiplicative group order p^m - 1; also the code length.
    pub fn group_order(&self) -> u32 {
        self.q - 1
    }

    /// Monic primitive polynomial, constant term first.
    pub fn prim_poly(&self) -> &[u32] {
        &self.prim_poly
    }

    pub fn one(&self) -> FieldElement {
        FieldElement::Exp(0)
    }

    /// The fixed primitive element (root of `prim_poly`).
    pub fn alpha(&self) -> FieldElement {
        FieldElement::Exp(1 % self.group_order())
    }

    /// alpha^exp with the exponent reduced mod p^m - 1.
    pub fn element(&self, exp: u64) -> FieldElement {
        FieldElement::Exp((exp % u64::from(self.group_order())) as u32)
    }

    /// Embeds c in [0, p) as a constant.
    pub fn from_prime(&self, c: u32) -> FieldElement {
        let c = c % self.p;
        if c == 0 {
            FieldElement::Zero
        } else {
            FieldElement::Exp(self.log[c as usize])
        }
    }

    pub fn from_packed(&self, packed: u32) -> FieldElement {
        if packed == 0 {
            FieldElement::Zero
        } else {
            FieldElement::Exp(self.log[packed as usize])
        }
    }

    pub fn to_packed(&self, x: FieldElement) -> u32 {
        match x {
            FieldElement::Zero => 0,
            FieldElement::Exp(i) => self.antilog[i as usize],
        }
    }

    /// All q elements, zero first.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        std::iter::once(FieldElement::Zero).chain(self.nonzero_elements())
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.group_order()).map(FieldElement::Exp)
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        match (a, b) {
            (FieldElement::Zero, x) | (x, FieldElement::Zero) => x,
            (FieldElement::Exp(i), FieldElement::Exp(j)) => {
                let s = self.packed_add(self.antilog[i as usize], self.antilog[j as usize]);
                self.from_packed(s)
            }
        }
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        // -1 = alpha^{(q-1)/2}, the unique element of order two.
        self.mul(a, FieldElement::Exp(self.group_order() / 2))
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        match (a, b) {
            (FieldElement::Zero, _) | (_, FieldElement::Zero) => FieldElement::Zero,
            (FieldElement::Exp(i), FieldElement::Exp(j)) => {
                let n = self.group_order();
                FieldElement::Exp((i + j) % n)
            }
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self, a: FieldElement) -> FieldElement {
        match a {
            FieldElement::Zero => panic!("inverse of zero"),
            FieldElement::Exp(i) => {
                let n = self.group_order();
                FieldElement::Exp((n - i) % n)
            }
        }
    }

    /// a^k for any integer k. Conventions: 0^0 = 1 and 0^k = 0 for k != 0.
    pub fn pow(&self, a: FieldElement, k: i64) -> FieldElement {
        match a {
            FieldElement::Zero => {
                if k == 0 {
                    self.one()
                } else {
                    FieldElement::Zero
                }
            }
            FieldElement::Exp(i) => {
                let n = i128::from(self.group_order());
                let e = (i128::from(i) * i128::from(k)).rem_euclid(n);
                FieldElement::Exp(e as u32)
            }
        }
    }

    /// Tr(x) = sum of x^{p^i} for i < m, as a value in [0, p).
    pub fn trace(&self, x: FieldElement) -> u32 {
        match x {
            FieldElement::Zero => 0,
            FieldElement::Exp(i) => self.trace_by_exp[i as usize],
        }
    }

    /// Trace lookup keyed by packed coefficient vector.
    pub fn trace_of_packed(&self, packed: u32) -> u32 {
        self.trace_by_packed[packed as usize]
    }

    /// Quadratic character: 0 at zero, +1 on squares, -1 on nonsquares.
    pub fn quad_char(&self, x: FieldElement) -> i32 {
        match x {
            FieldElement::Zero => 0,
            FieldElement::Exp(i) => {
                if i % 2 == 0 {
                    1
                } else {
                    -1
                }
            }
        }
    }

    /// Quadratic character of the prime field F_p at c.
    pub fn prime_quad_char(&self, c: u32) -> i32 {
        prime_quad_char(self.p, c)
    }

    /// Monic minimal polynomial of x over F_p, constant term first.
    /// The minimal polynomial of zero is t itself.
    pub fn minimal_polynomial(&self, x: FieldElement) -> Vec<u32> {
        let e = match x {
            FieldElement::Zero => return vec![0, 1],
            FieldElement::Exp(e) => u64::from(e),
        };
        let n = u64::from(self.group_order());
        let mut orbit = vec![e];
        let mut cur = e * u64::from(self.p) % n;
        while cur != e {
            orbit.push(cur);
            cur = cur * u64::from(self.p) % n;
        }
        // Expand the product of (t - alpha^j) over the orbit in the extension.
        let mut coeffs = vec![self.one()];
        for &j in &orbit {
            let root = FieldElement::Exp(j as u32);
            let mut next = vec![FieldElement::Zero; coeffs.len() + 1];
            for (i, &c) in coeffs.iter().enumerate() {
                next[i + 1] = self.add(next[i + 1], c);
                next[i] = self.sub(next[i], self.mul(c, root));
            }
            coeffs = next;
        }
        coeffs
            .iter()
            .map(|&c| {
                let packed = self.to_packed(c);
                assert!(
                    packed < self.p,
                    "minimal polynomial coefficient fell outside the prime field"
                );
                packed
            })
            .collect()
    }

    /// Tr(alpha^i) lookup slice for exponent-indexed sweeps.
    pub(crate) fn trace_by_exp_table(&self) -> &[u32] {
        &self.trace_by_exp
    }

    pub(crate) fn packed_add(&self, x: u32, y: u32) -> u32 {
        let p = self.p;
        let (mut x, mut y) = (x, y);
        let mut out = 0u32;
        let mut place = 1u32;
        for _ in 0..self.m {
            let d = (x % p + y % p) % p;
            out += d * place;
            x /= p;
            y /= p;
            place = place.wrapping_mul(p);
        }
        out
    }
}

/// Serializable descriptor of a built field, embedded in CLI reports.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct FieldDescriptor {
    pub p: u32,
    pub m: u32,
    pub prim_poly: Vec<u32>,
}

impl From<&FieldContext> for FieldDescriptor {
    fn from(ctx: &FieldContext) -> Self {
        FieldDescriptor {
            p: ctx.p(),
            m: ctx.m(),
            prim_poly: ctx.prim_poly().to_vec(),
        }
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Distinct prime factors of n.
pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Quadratic character of F_p via Euler's criterion.
pub(crate) fn prime_quad_char(p: u32, c: u32) -> i32 {
    let c = c % p;
    if c == 0 {
        return 0;
    }
    if mod_pow(u64::from(c), u64::from((p - 1) / 2), u64::from(p)) == 1 {
        1
    } else {
        -1
    }
}

pub(crate) fn mod_pow(mut base: u64, mut e: u64, modulus: u64) -> u64 {
    let mut acc = 1u64;
    base %= modulus;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % modulus;
        }
        base = base * base % modulus;
        e >>= 1;
    }
    acc
}

pub(crate) fn gcd(a: u32, b: u32) -> u32 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// First monic degree-m polynomial, in lexicographic coefficient order
/// (constant term first), whose root generates the full multiplicative
/// group. Such a polynomial is automatically irreducible.
fn smallest_primitive_poly(p: u32, m: u32, n: u64, n_factors: &[u64]) -> Vec<u32> {
    let mut coeffs = vec![0u32; m as usize + 1];
    coeffs[m as usize] = 1;
    loop {
        if coeffs[0] != 0 && generates_full_group(&coeffs, p, n, n_factors) {
            return coeffs;
        }
        // Advance (c_0, ..., c_{m-1}) lexicographically: last index is the
        // least significant.
        let mut i = m as usize;
        loop {
            assert!(i > 0, "no primitive polynomial found; p is not prime?");
            i -= 1;
            coeffs[i] += 1;
            if coeffs[i] < p {
                break;
            }
            coeffs[i] = 0;
        }
    }
}

/// Does t have multiplicative order exactly n in F_p[t]/(f)?
/// Order n = p^deg(f) - 1 forces f to be irreducible with a primitive root.
fn generates_full_group(f: &[u32], p: u32, n: u64, n_factors: &[u64]) -> bool {
    let m = f.len() - 1;
    let one = {
        let mut v = vec![0u32; m];
        v[0] = 1;
        v
    };
    let t = if m == 1 {
        vec![(p - f[0] % p) % p]
    } else {
        let mut v = vec![0u32; m];
        v[1] = 1;
        v
    };
    if poly_powmod(&t, n, f, p) != one {
        return false;
    }
    n_factors
        .iter()
        .all(|&ell| poly_powmod(&t, n / ell, f, p) != one)
}

/// Product of reduced polynomials a, b modulo the monic polynomial f.
fn poly_mulmod(a: &[u32], b: &[u32], f: &[u32], p: u32) -> Vec<u32> {
    let m = f.len() - 1;
    if m == 0 {
        return vec![];
    }
    let mut prod = vec![0u64; 2 * m - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            prod[i + j] += u64::from(ai) * u64::from(bj);
        }
    }
    let pp = u64::from(p);
    for deg in (m..prod.len()).rev() {
        let c = prod[deg] % pp;
        prod[deg] = 0;
        if c == 0 {
            continue;
        }
        for j in 0..m {
            // Subtract c * f[j] * t^{deg-m+j}, working mod p.
            prod[deg - m + j] += c * u64::from((p - f[j] % p) % p);
        }
    }
    prod[..m].iter().map(|&c| (c % pp) as u32).collect()
}

fn poly_powmod(base: &[u32], mut e: u64, f: &[u32], p: u32) -> Vec<u32> {
    let m = f.len() - 1;
    let mut result = vec![0u32; m];
    result[0] = 1;
    let mut sq = base.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            result = poly_mulmod(&result, &sq, f, p);
        }
        e >>= 1;
        if e > 0 {
            sq = poly_mulmod(&sq, &sq, f, p);
        }
    }
    result
}

/// Multiply a digit vector by t modulo the monic polynomial f, in place.
fn mul_by_t(digits: &mut [u32], f: &[u32], p: u32) {
    let m = digits.len();
    let carry = digits[m - 1];
    for j in (1..m).rev() {
        digits[j] = digits[j - 1];
    }
    digits[0] = 0;
    if carry != 0 {
        for j in 0..m {
            digits[j] = (digits[j] + carry * ((p - f[j] % p) % p)) % p;
        }
    }
}

fn pack(digits: &[u32], p: u32) -> u32 {
    let mut out = 0u32;
    for &d in digits.iter().rev() {
        out = out * p + d;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use FieldElement::{Exp, Zero};

    #[test]
    fn prime_field_f3_uses_smallest_primitive_root() {
        let ctx = FieldContext::build(3, 1, None).unwrap();
        // Powers of alpha as packed values: alpha = 2 is the smallest
        // primitive root of F_3.
        let powers: Vec<u32> = (0..2).map(|i| ctx.to_packed(Exp(i))).collect();
        assert_eq!(powers, vec![1, 2]);
        assert_eq!(ctx.prim_poly(), &[1, 1]);
    }

    #[test]
    fn f9_square_root_of_one() {
        let ctx = FieldContext::build(3, 2, None).unwrap();
        assert_eq!(ctx.prim_poly(), &[2, 1, 1]);
        assert_eq!(ctx.pow(ctx.alpha(), 8), Exp(0));
        // alpha^4 is the unique element of order two, i.e. -1 = 2.
        assert_eq!(ctx.to_packed(Exp(4)), 2);
    }

    #[test]
    fn frobenius_fixes_f125() {
        let ctx = FieldContext::build(5, 3, None).unwrap();
        for x in ctx.elements() {
            assert_eq!(ctx.pow(x, 125), x);
        }
    }

    #[test]
    fn additive_and_multiplicative_basics() {
        let ctx = FieldContext::build(3, 3, None).unwrap();
        for x in ctx.elements() {
            assert_eq!(ctx.add(x, ctx.neg(x)), Zero);
            assert_eq!(ctx.mul(Zero, x), Zero);
        }
        assert_eq!(ctx.pow(ctx.alpha(), i64::from(ctx.group_order())), Exp(0));
        // Distributivity, exhaustively on a small field.
        for x in ctx.elements() {
            for y in ctx.elements() {
                for z in [Zero, Exp(0), Exp(5), Exp(13)] {
                    assert_eq!(
                        ctx.mul(z, ctx.add(x, y)),
                        ctx.add(ctx.mul(z, x), ctx.mul(z, y))
                    );
                }
            }
        }
    }

    /// Oracle for the trace tables: evaluate the defining sum with generic
    /// field powering and compare everywhere.
    #[test]
    fn trace_matches_definition() {
        for (p, m) in [(3u32, 1u32), (3, 2), (3, 4), (5, 2), (7, 2)] {
            let ctx = FieldContext::build(p, m, None).unwrap();
            for x in ctx.elements() {
                let mut acc = Zero;
                for i in 0..m {
                    acc = ctx.add(acc, ctx.pow(x, i64::from(p).pow(i)));
                }
                let packed = ctx.to_packed(acc);
                assert!(packed < p);
                assert_eq!(packed, ctx.trace(x));
                assert_eq!(packed, ctx.trace_of_packed(ctx.to_packed(x)));
            }
        }
    }

    #[test]
    fn trace_is_balanced_and_linear() {
        let ctx = FieldContext::build(3, 2, None).unwrap();
        assert_eq!(ctx.trace(ctx.one()), 2);
        let mut counts = [0u32; 3];
        for x in ctx.elements() {
            counts[ctx.trace(x) as usize] += 1;
        }
        assert_eq!(counts, [3, 3, 3]);
        for x in ctx.elements() {
            for y in ctx.elements() {
                assert_eq!(
                    ctx.trace(ctx.add(x, y)),
                    (ctx.trace(x) + ctx.trace(y)) % 3
                );
            }
        }
    }

    #[test]
    fn trace_fibers_have_size_q_over_p() {
        for (p, m) in [(3u32, 3u32), (5, 2), (7, 2)] {
            let ctx = FieldContext::build(p, m, None).unwrap();
            let mut counts = vec![0u32; p as usize];
            for x in ctx.elements() {
                counts[ctx.trace(x) as usize] += 1;
            }
            assert!(counts.iter().all(|&c| c == ctx.q() / p));
        }
    }

    #[test]
    fn quad_char_properties() {
        let f3 = FieldContext::build(3, 1, None).unwrap();
        assert_eq!(f3.quad_char(f3.one()), 1);
        assert_eq!(f3.quad_char(f3.from_prime(2)), -1);

        for (p, m) in [(3u32, 4u32), (5, 3), (7, 2)] {
            let ctx = FieldContext::build(p, m, None).unwrap();
            let mut plus = 0u32;
            for x in ctx.nonzero_elements() {
                assert_eq!(ctx.quad_char(ctx.mul(x, x)), 1);
                if ctx.quad_char(x) == 1 {
                    plus += 1;
                }
            }
            assert_eq!(plus, ctx.group_order() / 2);
            // Multiplicativity, exhaustive.
            for x in ctx.nonzero_elements() {
                for y in ctx.nonzero_elements() {
                    assert_eq!(
                        ctx.quad_char(x) * ctx.quad_char(y),
                        ctx.quad_char(ctx.mul(x, y))
                    );
                }
            }
        }
    }

    #[test]
    fn prime_quad_char_matches_field_char_at_m1() {
        for p in [3u32, 5, 7, 11] {
            let ctx = FieldContext::build(p, 1, None).unwrap();
            for c in 0..p {
                assert_eq!(ctx.prime_quad_char(c), ctx.quad_char(ctx.from_prime(c)));
            }
        }
    }

    #[test]
    fn minimal_polynomial_degrees() {
        let ctx = FieldContext::build(3, 2, None).unwrap();
        // Minimal polynomial of 1 is t - 1.
        assert_eq!(ctx.minimal_polynomial(ctx.one()), vec![2, 1]);
        // alpha^{-(p^l+1)} = alpha^{-4} has degree m/2 = 1 when m = 2l.
        let x = ctx.pow(ctx.alpha(), -4);
        assert_eq!(ctx.minimal_polynomial(x).len() - 1, 1);

        let ctx = FieldContext::build(3, 3, None).unwrap();
        let x = ctx.pow(ctx.alpha(), -4);
        assert_eq!(ctx.minimal_polynomial(x).len() - 1, 3);
    }

    #[test]
    fn minimal_polynomial_annihilates() {
        let ctx = FieldContext::build(5, 3, None).unwrap();
        for x in ctx.elements() {
            let poly = ctx.minimal_polynomial(x);
            let degree = poly.len() as u32 - 1;
            assert_eq!(ctx.m() % degree, 0, "degree must divide m");
            let mut acc = Zero;
            let mut pw = ctx.one();
            for &c in &poly {
                acc = ctx.add(acc, ctx.mul(ctx.from_prime(c), pw));
                pw = ctx.mul(pw, x);
            }
            assert_eq!(acc, Zero, "minimal polynomial must annihilate {x:?}");
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(
            FieldContext::build(4, 2, None).unwrap_err(),
            Error::NotPrime(4)
        );
        assert_eq!(
            FieldContext::build(9, 1, None).unwrap_err(),
            Error::NotPrime(9)
        );
        assert_eq!(
            FieldContext::build(2, 3, None).unwrap_err(),
            Error::NotPrime(2)
        );
        assert!(matches!(
            FieldContext::build_capped(3, 2, None, 8),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn rejects_non_primitive_overrides() {
        // t^2 + 1 is irreducible over F_3 but its root has order 4.
        assert!(matches!(
            FieldContext::build(3, 2, Some(&[1, 0, 1])),
            Err(Error::NotPrimitive(..))
        ));
        // (t + 1)^2 is reducible.
        assert!(matches!(
            FieldContext::build(3, 2, Some(&[1, 2, 1])),
            Err(Error::NotPrimitive(..))
        ));
        // Valid alternative primitive polynomial is accepted.
        let ctx = FieldContext::build(3, 2, Some(&[2, 2, 1])).unwrap();
        assert_eq!(ctx.prim_poly(), &[2, 2, 1]);
        assert_eq!(ctx.pow(ctx.alpha(), 8), Exp(0));
    }

    #[test]
    fn log_antilog_are_inverse() {
        let ctx = FieldContext::build(7, 2, None).unwrap();
        for i in 0..ctx.group_order() {
            let packed = ctx.to_packed(Exp(i));
            assert_eq!(ctx.from_packed(packed), Exp(i));
        }
        for packed in 1..ctx.q() {
            let x = ctx.from_packed(packed);
            assert_eq!(ctx.to_packed(x), packed);
        }
    }

    /// Derived statistics do not depend on the representation choice.
    #[test]
    fn representation_independent_power_trace_multiset() {
        let a = FieldContext::build(3, 3, None).unwrap();
        // Another primitive polynomial for F_27.
        let b = FieldContext::build(3, 3, Some(&[1, 2, 0, 1])).unwrap();
        assert_ne!(a.prim_poly(), b.prim_poly());
        let stats = |ctx: &FieldContext| {
            let mut v: Vec<u32> = ctx
                .elements()
                .map(|x| ctx.trace(ctx.pow(x, 4)))
                .collect();
            v.sort_unstable();
            v
        };
        assert_eq!(stats(&a), stats(&b));
    }
}
