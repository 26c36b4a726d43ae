//! Prime-field arithmetic with a fixed primitive element and discrete logs.
//!
//! Decoding works with evaluations at powers `alpha^l` for signed `l`, and
//! turns located roots back into monomial exponents via `dlog`. Exponents of
//! interest go up to `2n`, so the field for length-`n` strings is the smallest
//! odd prime with `q - 1 > 2n`: distinct exponents stay distinct as powers of
//! `alpha`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

/// Largest modulus for which a full discrete-log table is precomputed.
/// Above this, lookups fall back to baby-step/giant-step.
const DLOG_TABLE_MAX: u64 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldError {
    /// Inverse or discrete log of zero.
    Zero,
    /// Modulus is not an odd prime.
    NotPrime(u64),
    /// Claimed primitive element has smaller order.
    NotPrimitive(u64),
}

impl fmt::Display for FieldError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldError::Zero => write!(f, "zero has no inverse or discrete log"),
            FieldError::NotPrime(q) => write!(f, "{q} is not an odd prime"),
            FieldError::NotPrimitive(a) => write!(f, "{a} does not generate the whole group"),
        }
    }
}

/// Arithmetic mod an odd prime `q`, with a primitive element `alpha`.
///
/// Elements are plain `u64` values already reduced mod `q`.
#[derive(Clone)]
pub struct PrimeField {
    q: u64,
    alpha: u64,
    dlog: DlogStrategy,
}

#[derive(Clone)]
enum DlogStrategy {
    /// `table[x] = dlog(x)` for the whole group.
    Table(Vec<u32>),
    /// Baby steps `alpha^j -> j` for `j < m`, with `m = ceil(sqrt(q-1))`.
    Bsgs { m: u64, baby: BTreeMap<u64, u64> },
}

impl fmt::Debug for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PrimeField(q={}, alpha={})", self.q, self.alpha)
    }
}

impl PrimeField {
    /// Field for strings of length `n`: smallest odd prime `q` with
    /// `q - 1 > 2n`, and the smallest primitive element.
    pub fn find(n: u64) -> PrimeField {
        let mut q = (2 * n + 2) | 1;
        loop {
            if is_prime(q) && q > 2 {
                let alpha = smallest_primitive(q);
                return PrimeField::with_parts(q, alpha);
            }
            q += 2;
        }
    }

    /// Field with explicit modulus and primitive element, both verified.
    pub fn new(q: u64, alpha: u64) -> Result<PrimeField, FieldError> {
        if q < 3 || q % 2 == 0 || !is_prime(q) {
            return Err(FieldError::NotPrime(q));
        }
        if alpha == 0 || alpha >= q || !is_primitive(q, alpha) {
            return Err(FieldError::NotPrimitive(alpha));
        }
        Ok(PrimeField::with_parts(q, alpha))
    }

    fn with_parts(q: u64, alpha: u64) -> PrimeField {
        let dlog = if q < DLOG_TABLE_MAX {
            let mut table = alloc::vec![0u32; q as usize];
            let mut x = 1u64;
            for e in 0..q - 1 {
                table[x as usize] = e as u32;
                x = mul_mod(x, alpha, q);
            }
            DlogStrategy::Table(table)
        } else {
            let m = isqrt(q - 1) + 1;
            let mut baby = BTreeMap::new();
            let mut x = 1u64;
            for j in 0..m {
                baby.entry(x).or_insert(j);
                x = mul_mod(x, alpha, q);
            }
            DlogStrategy::Bsgs { m, baby }
        };
        PrimeField { q, alpha, dlog }
    }

    #[inline]
    pub fn q(&self) -> u64 {
        self.q
    }

    #[inline]
    pub fn alpha(&self) -> u64 {
        self.alpha
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.q {
            s - self.q
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.q - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.q - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        mul_mod(a, b, self.q)
    }

    /// Inverse by Fermat's little theorem.
    ///
    /// # Errors
    /// `FieldError::Zero` when `a == 0`.
    pub fn inv(&self, a: u64) -> Result<u64, FieldError> {
        if a == 0 {
            return Err(FieldError::Zero);
        }
        Ok(pow_mod(a, self.q - 2, self.q))
    }

    /// `a^e` for signed `e`; negative exponents go through the inverse.
    pub fn pow(&self, a: u64, e: i64) -> Result<u64, FieldError> {
        if e >= 0 {
            return Ok(pow_mod(a, e as u64, self.q));
        }
        if a == 0 {
            return Err(FieldError::Zero);
        }
        let inv = self.inv(a)?;
        Ok(pow_mod(inv, e.unsigned_abs(), self.q))
    }

    /// `alpha^e` for signed `e`, reduced mod the group order.
    #[inline]
    pub fn alpha_pow(&self, e: i64) -> u64 {
        let ord = (self.q - 1) as i64;
        let e = e.rem_euclid(ord) as u64;
        pow_mod(self.alpha, e, self.q)
    }

    /// Exponent `e` in `[0, q-2]` with `alpha^e = x`.
    ///
    /// # Errors
    /// `FieldError::Zero` when `x == 0`.
    pub fn dlog(&self, x: u64) -> Result<u64, FieldError> {
        if x == 0 {
            return Err(FieldError::Zero);
        }
        debug_assert!(x < self.q);
        match &self.dlog {
            DlogStrategy::Table(t) => Ok(t[x as usize] as u64),
            DlogStrategy::Bsgs { m, baby } => {
                // x * (alpha^-m)^i hits a baby step for some i < m + 1.
                let am = pow_mod(self.alpha, self.q - 1 - (m % (self.q - 1)), self.q);
                let mut y = x;
                for i in 0..=*m {
                    if let Some(j) = baby.get(&y) {
                        return Ok((i * m + j) % (self.q - 1));
                    }
                    y = mul_mod(y, am, self.q);
                }
                unreachable!("alpha generates the whole group");
            }
        }
    }
}

#[inline]
fn mul_mod(a: u64, b: u64, q: u64) -> u64 {
    (a as u128 * b as u128 % q as u128) as u64
}

fn pow_mod(mut base: u64, mut e: u64, q: u64) -> u64 {
    let mut acc = 1u64;
    base %= q;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, q);
        }
        base = mul_mod(base, base, q);
        e >>= 1;
    }
    acc
}

fn isqrt(n: u64) -> u64 {
    if n < 2 {
        return n;
    }
    // Newton iteration from a power-of-two overestimate.
    let mut r = 1u64 << (n.ilog2() / 2 + 1);
    loop {
        let next = (r + n / r) / 2;
        if next >= r {
            break;
        }
        r = next;
    }
    r
}

/// Deterministic Miller-Rabin, valid for all u64.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let d = n - 1;
    let s = d.trailing_zeros();
    let d = d >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn is_primitive(q: u64, g: u64) -> bool {
    prime_factors(q - 1)
        .iter()
        .all(|&p| pow_mod(g, (q - 1) / p, q) != 1)
}

fn smallest_primitive(q: u64) -> u64 {
    let factors = prime_factors(q - 1);
    (2..q)
        .find(|&g| factors.iter().all(|&p| pow_mod(g, (q - 1) / p, q) != 1))
        .expect("every prime field has a primitive element")
}
