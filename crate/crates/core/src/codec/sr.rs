//! Enumerative coding for the dominance code that makes reconstruction
//! unambiguous.
//!
//! A string of length `m` is dominant when, for every `i` up to `ceil(m/2)`,
//! its length-`i` prefix contains strictly more zeros than its length-`i`
//! suffix. Pairing positions `j` and `m+1-j` turns this into a walk: the
//! pair symbols `(0,1)`, `(0,0)`, `(1,1)`, `(1,0)` step the zero surplus by
//! `+1`, `0`, `0`, `-1`, and dominance says every partial sum stays at least
//! 1 (an odd middle bit is unconstrained).
//!
//! Counting walk completions by reflection gives a window sum of one
//! binomial row: with two flat colors, free walks of length `l` have
//! generating function `((1+x)^2/x)^l`, so the number of completions from
//! surplus `d` is `sum_{k=l+1-d}^{l+d} binom(2l, k)`, saturating at `4^l`
//! once `d > l`. Rank and unrank maintain that window sum and its two edge
//! binomials across steps, each update a constant number of big-integer
//! multiplications by word-size factors, so coding costs O(m) big-integer
//! operations instead of a quadratic table.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::composition::BitString;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SrError {
    /// Block length below 2.
    LengthTooShort,
    /// Encoding input does not have exactly `info_bits` bits.
    WrongInfoLength,
    /// The string violates the dominance property.
    NotDominant,
    /// Valid dominant string whose rank lies outside the encoder's image.
    RankOutOfRange,
}

impl fmt::Display for SrError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SrError::LengthTooShort => write!(f, "block length must be at least 2"),
            SrError::WrongInfoLength => write!(f, "wrong number of information bits"),
            SrError::NotDominant => write!(f, "string violates the dominance property"),
            SrError::RankOutOfRange => write!(f, "dominant string outside the encoder image"),
        }
    }
}

/// Direct check of the dominance property.
pub fn satisfies_dominance(u: &BitString) -> bool {
    let bits = u.bits();
    let m = bits.len();
    if m < 2 {
        return false;
    }
    let (mut pre, mut suf) = (0u64, 0u64);
    for i in 1..=m.div_ceil(2) {
        if bits[i - 1] == 0 {
            pre += 1;
        }
        if bits[m - i] == 0 {
            suf += 1;
        }
        if pre <= suf {
            return false;
        }
    }
    true
}

/// `binom(n, k)` by direct product.
fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `b * num / den` for a binomial neighbor move; exact by construction.
fn shift(b: &BigUint, num: u64, den: u64) -> BigUint {
    if b.is_zero() || num == 0 {
        return BigUint::zero();
    }
    let prod = b * num;
    debug_assert!((&prod % den).is_zero(), "binomial ratio not exact");
    prod / den
}

fn exact_half(v: BigUint) -> BigUint {
    debug_assert!(!v.bit(0), "window sum not even");
    v >> 1
}

/// Completion counts along a walk, `V(l, d) = sum_{k=l+1-d}^{l+d}
/// binom(2l, k)`, kept incrementally.
///
/// While `d <= l` the fields hold the window sum `v` and the two binomials
/// just outside the window, `bl = binom(2l, l-d)` and `br = binom(2l,
/// l+d+1)`; once `d > l` the count saturates at `4^l` and the trackers are
/// unused. The only re-entry from the saturated region is at `d == l`,
/// where both trackers are trivial.
struct Walker {
    l: u64,
    d: u64,
    v: BigUint,
    bl: BigUint,
    br: BigUint,
}

impl Walker {
    /// State after the forced first pair: `(l, d = 1)`.
    fn start(l: u64) -> Walker {
        if l == 0 {
            return Walker {
                l,
                d: 1,
                v: BigUint::one(),
                bl: BigUint::zero(),
                br: BigUint::zero(),
            };
        }
        let c = binomial(2 * l, l);
        let up1 = shift(&c, l, l + 1); // binom(2l, l+1)
        let bl = shift(&c, l, l + 1); // binom(2l, l-1), equal by symmetry
        let br = shift(&up1, l - 1, l + 2); // binom(2l, l+2)
        let v = &c + &up1;
        Walker { l, d: 1, v, bl, br }
    }

    fn saturated(&self) -> bool {
        self.d > self.l
    }

    /// `(l, d) -> (l - 1, d)`: two Pascal halvings plus edge corrections.
    fn descend(&mut self) {
        debug_assert!(self.l >= 1);
        if self.d >= self.l {
            self.l -= 1;
            self.v = BigUint::one() << (2 * self.l as usize);
            self.bl = BigUint::zero();
            self.br = BigUint::zero();
            return;
        }
        let (l, d) = (self.l, self.d);
        let n2 = 2 * l;
        let b1l = shift(&self.bl, l + d, n2); // binom(2l-1, l-d)
        let b1r = shift(&self.br, l + d + 1, n2); // binom(2l-1, l+d)
        let w1 = exact_half(&self.v - &b1l - &b1r);
        let b2l = shift(&b1l, l + d - 1, n2 - 1); // binom(2l-2, l-d)
        let b2r = shift(&b1r, l + d, n2 - 1); // binom(2l-2, l+d-1)
        let w2 = exact_half(w1 - &b2l - &b2r);
        self.v = w2 + &b2l + &b2r;
        self.bl = shift(&b2l, l - d, l + d - 1); // binom(2l-2, l-d-1)
        self.br = shift(&b2r, l - d - 1, l + d); // binom(2l-2, l+d)
        self.l = l - 1;
    }

    /// `V(l, d + delta)` without moving.
    fn v_at(&self, delta: i64) -> BigUint {
        let d2 = self.d as i64 + delta;
        if d2 <= 0 {
            return BigUint::zero();
        }
        let d2 = d2 as u64;
        if d2 > self.l {
            return BigUint::one() << (2 * self.l as usize);
        }
        if self.saturated() {
            // Only reachable as d2 == l from d == l + 1.
            debug_assert!(d2 == self.l);
            return (BigUint::one() << (2 * self.l as usize)) - 1u32;
        }
        match delta {
            0 => self.v.clone(),
            1 => &self.v + &self.bl + &self.br,
            _ => {
                let il = shift(&self.bl, self.l + self.d, self.l - self.d + 1);
                let ir = if self.d == self.l {
                    BigUint::one()
                } else {
                    shift(&self.br, self.l + self.d + 1, self.l - self.d)
                };
                &self.v - il - ir
            }
        }
    }

    /// Moves `d` by `delta` in `{-1, 0, 1}` at fixed `l`.
    fn move_d(&mut self, delta: i64) {
        if delta == 0 {
            return;
        }
        let d2 = (self.d as i64 + delta) as u64;
        debug_assert!(d2 >= 1);
        if self.saturated() {
            if d2 > self.l {
                self.d = d2;
                return;
            }
            debug_assert!(d2 == self.l);
            self.d = d2;
            self.v = (BigUint::one() << (2 * self.l as usize)) - 1u32;
            self.bl = BigUint::one(); // binom(2l, 0)
            self.br = BigUint::zero(); // binom(2l, 2l+1)
            return;
        }
        if d2 > self.l {
            self.d = d2;
            self.v = BigUint::one() << (2 * self.l as usize);
            self.bl = BigUint::zero();
            self.br = BigUint::zero();
            return;
        }
        if delta == 1 {
            self.v = &self.v + &self.bl + &self.br;
            let bl2 = shift(&self.bl, self.l - self.d, self.l + self.d + 1); // binom(2l, l-d-1)
            let br2 = shift(&self.br, self.l - self.d - 1, self.l + self.d + 2); // binom(2l, l+d+2)
            self.bl = bl2;
            self.br = br2;
        } else {
            let il = shift(&self.bl, self.l + self.d, self.l - self.d + 1); // binom(2l, l-d+1)
            let ir = if self.d == self.l {
                BigUint::one()
            } else {
                shift(&self.br, self.l + self.d + 1, self.l - self.d) // binom(2l, l+d)
            };
            self.v = &self.v - &il - &ir;
            self.bl = il;
            self.br = ir;
        }
        self.d = d2;
    }
}

/// Pair symbols in ranking order with their walk steps.
const SYMBOLS: [(u8, u8, i64); 4] = [(0, 0, 0), (0, 1, 1), (1, 0, -1), (1, 1, 0)];

/// The dominance code at one block length, with rank/unrank coding.
#[derive(Clone, Debug)]
pub struct SrCode {
    m: usize,
    h: usize,
    odd: bool,
    count: BigUint,
    info_bits: usize,
}

impl SrCode {
    pub fn new(m: usize) -> Result<SrCode, SrError> {
        if m < 2 {
            return Err(SrError::LengthTooShort);
        }
        let h = m / 2;
        let odd = m % 2 == 1;
        let mut count = Walker::start(h as u64 - 1).v;
        if odd {
            count <<= 1;
        }
        let info_bits = (count.bits() - 1) as usize;
        Ok(SrCode { m, h, odd, count, info_bits })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Number of dominant strings of length `m`.
    pub fn count(&self) -> &BigUint {
        &self.count
    }

    /// Bits carried per block: largest `k` with `2^k <= count`.
    pub fn info_bits(&self) -> usize {
        self.info_bits
    }

    pub fn redundancy(&self) -> usize {
        self.m - self.info_bits
    }

    /// Dominant string with the given rank (rank order is lexicographic in
    /// the interleaved pair coordinates, middle bit least significant).
    pub fn unrank(&self, rank: &BigUint) -> Result<BitString, SrError> {
        if *rank >= self.count {
            return Err(SrError::RankOutOfRange);
        }
        let mut bits = vec![0u8; self.m];
        let mut r = rank.clone();
        if self.odd {
            bits[self.h] = if r.bit(0) { 1 } else { 0 };
            r >>= 1;
        }
        bits[0] = 0;
        bits[self.m - 1] = 1;
        let mut wk = Walker::start(self.h as u64 - 1);
        for j in 2..=self.h {
            wk.descend();
            let mut chosen = None;
            for &(left, right, delta) in &SYMBOLS {
                let c = wk.v_at(delta);
                if r < c {
                    chosen = Some((left, right, delta));
                    break;
                }
                r -= c;
            }
            let (left, right, delta) = chosen.expect("rank below total count");
            bits[j - 1] = left;
            bits[self.m - j] = right;
            wk.move_d(delta);
        }
        debug_assert!(r.is_zero());
        Ok(BitString::new(bits).expect("m >= 2"))
    }

    /// Rank of a dominant string; rejects non-dominant input.
    pub fn rank(&self, u: &BitString) -> Result<BigUint, SrError> {
        let bits = u.bits();
        if bits.len() != self.m {
            return Err(SrError::NotDominant);
        }
        if bits[0] != 0 || bits[self.m - 1] != 1 {
            return Err(SrError::NotDominant);
        }
        let mut r = BigUint::zero();
        let mut wk = Walker::start(self.h as u64 - 1);
        for j in 2..=self.h {
            wk.descend();
            let sym = (bits[j - 1], bits[self.m - j]);
            let delta = match sym {
                (0, 0) | (1, 1) => 0i64,
                (0, 1) => 1,
                _ => -1,
            };
            if wk.d as i64 + delta < 1 {
                return Err(SrError::NotDominant);
            }
            for &(left, right, d) in &SYMBOLS {
                if (left, right) == sym {
                    break;
                }
                r += wk.v_at(d);
            }
            wk.move_d(delta);
        }
        if self.odd {
            r <<= 1;
            if bits[self.h] == 1 {
                r += 1u32;
            }
        }
        Ok(r)
    }

    /// Encodes `info_bits` bits, most significant first.
    pub fn encode(&self, info: &[u8]) -> Result<BitString, SrError> {
        if info.len() != self.info_bits || info.iter().any(|&b| b > 1) {
            return Err(SrError::WrongInfoLength);
        }
        let mut rank = BigUint::zero();
        for &b in info {
            rank = (rank << 1) + b;
        }
        self.unrank(&rank)
    }

    /// Inverts `encode`; fails on non-dominant strings and on dominant
    /// strings whose rank exceeds the information range.
    pub fn decode(&self, u: &BitString) -> Result<Vec<u8>, SrError> {
        let rank = self.rank(u)?;
        if rank.bits() > self.info_bits as u64 {
            return Err(SrError::RankOutOfRange);
        }
        let mut info = vec![0u8; self.info_bits];
        for (i, slot) in info.iter_mut().enumerate() {
            *slot = rank.bit((self.info_bits - 1 - i) as u64) as u8;
        }
        Ok(info)
    }
}
