//! Exact arithmetic in Z[zeta_p], the ring of integers extended by a
//! primitive p-th root of unity.
//!
//! Values are coordinate vectors in the power basis 1, zeta, ...,
//! zeta^{p-2}; the relation 1 + zeta + ... + zeta^{p-1} = 0 eliminates
//! zeta^{p-1}. The basis is a free Z-module basis, so two values are equal
//! exactly when their coordinate vectors are equal.

use crate::error::{Error, Result};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CyclotomicInt {
    p: u32,
    /// Length p - 1. coeffs[i] is the coordinate of zeta^i.
    coeffs: Vec<i128>,
}

impl CyclotomicInt {
    pub fn zero(p: u32) -> Self {
        assert!(p >= 3, "p must be an odd prime");
        CyclotomicInt {
            p,
            coeffs: vec![0; (p - 1) as usize],
        }
    }

    /// The rational integer n.
    pub fn from_int(p: u32, n: i128) -> Self {
        let mut v = Self::zero(p);
        v.coeffs[0] = n;
        v
    }

    /// zeta^k for any integer k.
    pub fn root_power(p: u32, k: i64) -> Self {
        let mut v = Self::zero(p);
        let k = k.rem_euclid(i64::from(p)) as usize;
        if k == (p - 1) as usize {
            v.coeffs.iter_mut().for_each(|c| *c = -1);
        } else {
            v.coeffs[k] = 1;
        }
        v
    }

    /// sum_j counts[j] * zeta^j for j in 0..p. This is how a character sum
    /// is assembled from a tally of trace values.
    pub fn from_trace_counts(p: u32, counts: &[u64]) -> Self {
        assert_eq!(counts.len(), p as usize);
        let top = counts[(p - 1) as usize] as i128;
        let mut v = Self::zero(p);
        for (i, c) in v.coeffs.iter_mut().enumerate() {
            *c = counts[i] as i128 - top;
        }
        v
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Some(n) if the value is the rational integer n.
    pub fn as_integer(&self) -> Option<i128> {
        if self.coeffs[1..].iter().all(|&c| c == 0) {
            Some(self.coeffs[0])
        } else {
            None
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.try_add(other).expect("mixed cyclotomic primes")
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.same_prime(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(CyclotomicInt { p: self.p, coeffs })
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        CyclotomicInt {
            p: self.p,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, k: i128) -> Self {
        CyclotomicInt {
            p: self.p,
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.try_mul(other).expect("mixed cyclotomic primes")
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.same_prime(other)?;
        let deg = (self.p - 1) as usize;
        let mut prod = vec![0i128; 2 * deg - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                prod[i + j] += a * b;
            }
        }
        // Rewrite zeta^e for e >= p-1 using zeta^{p-1} = -(1 + ... + zeta^{p-2}).
        for e in (deg..prod.len()).rev() {
            let c = prod[e];
            if c != 0 {
                prod[e] = 0;
                for i in 0..deg {
                    prod[e - deg + i] -= c;
                }
            }
        }
        prod.truncate(deg);
        Ok(CyclotomicInt {
            p: self.p,
            coeffs: prod,
        })
    }

    /// The field automorphism zeta -> zeta^y for y not divisible by p.
    pub fn galois(&self, y: u32) -> Self {
        let y = y % self.p;
        assert!(y != 0, "zeta -> zeta^0 is not an automorphism");
        let mut out = Self::zero(self.p);
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let target = (i as u64 * u64::from(y) % u64::from(self.p)) as usize;
            if target == (self.p - 1) as usize {
                out.coeffs.iter_mut().for_each(|t| *t -= c);
            } else {
                out.coeffs[target] += c;
            }
        }
        out
    }

    /// Complex conjugation zeta -> zeta^{-1}.
    pub fn conjugate(&self) -> Self {
        self.galois(self.p - 1)
    }

    fn same_prime(&self, other: &Self) -> Result<()> {
        if self.p == other.p {
            Ok(())
        } else {
            Err(Error::MixedPrimes(self.p, other.p))
        }
    }
}

impl fmt::Display for CyclotomicInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if wrote {
                write!(f, " {} ", if c < 0 { "-" } else { "+" })?;
            } else if c < 0 {
                write!(f, "-")?;
            }
            let mag = c.unsigned_abs();
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if mag != 1 {
                        write!(f, "{mag}*")?;
                    }
                    if i == 1 {
                        write!(f, "z")?;
                    } else {
                        write!(f, "z^{i}")?;
                    }
                }
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}
