//! A short-length code corrected by exhaustive search.
//!
//! Codewords are framed as `0^(4t+1) | d | 1^(4t+1)` where `d` ranges over
//! balanced strings whose every prefix has at least as many zeros as ones.
//! The frame forces any two codewords to differ in enough substring
//! compositions that up to `t` composition substitutions leave the nearest
//! codeword unique. Decoding walks the whole codebook, so this construction
//! only makes sense when the middle section is short; the interesting
//! property is the redundancy, which stays logarithmic in the block length
//! for fixed `t`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::composition::{composition_multiset, multiset_distance, BitString, CompositionMultiset};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CatalanError {
    /// Block length cannot fit the two frames plus an even-length middle.
    BadLength,
    /// Encoding input has the wrong number of information bits.
    WrongInfoLength,
    /// Rank outside `0..count`.
    IndexOutOfRange,
    /// Received multiset has the wrong block length.
    WrongBlockLength,
    /// Two codewords are equally close to the received multiset.
    Ambiguous,
    /// The codebook exceeds the enumeration cap.
    CodebookTooLarge,
    /// Input is not a codeword of this code.
    NotACodeword,
}

impl fmt::Display for CatalanError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CatalanError::BadLength => write!(f, "length cannot fit frames and an even middle"),
            CatalanError::WrongInfoLength => write!(f, "wrong number of information bits"),
            CatalanError::IndexOutOfRange => write!(f, "rank outside the codebook"),
            CatalanError::WrongBlockLength => write!(f, "received multiset has the wrong length"),
            CatalanError::Ambiguous => write!(f, "received multiset is equidistant from two codewords"),
            CatalanError::CodebookTooLarge => write!(f, "codebook exceeds the enumeration cap"),
            CatalanError::NotACodeword => write!(f, "string is not a codeword"),
        }
    }
}

/// The framed code with its middle-section ranking table.
pub struct CatalanCode {
    n: usize,
    t: usize,
    mid: usize,
    /// `paths[i][h]`: completions of a middle prefix of length `i` at height
    /// `h` (zeros minus ones so far) into a valid middle section.
    paths: Vec<Vec<BigUint>>,
}

impl CatalanCode {
    pub fn new(n: usize, t: usize) -> Result<CatalanCode, CatalanError> {
        let frame = 4 * t + 1;
        if n < 2 * frame || (n - 2 * frame) % 2 != 0 {
            return Err(CatalanError::BadLength);
        }
        let mid = n - 2 * frame;
        let mut paths = vec![vec![BigUint::zero(); mid + 2]; mid + 1];
        paths[mid][0] = BigUint::one();
        for i in (0..mid).rev() {
            for h in 0..=mid - i {
                let mut v = paths[i + 1][h + 1].clone();
                if h > 0 {
                    v += &paths[i + 1][h - 1];
                }
                paths[i][h] = v;
            }
        }
        Ok(CatalanCode { n, t, mid, paths })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn t(&self) -> usize {
        self.t
    }

    /// Number of codewords.
    pub fn count(&self) -> BigUint {
        self.paths[0][0].clone()
    }

    /// Bits encodable per block: the largest `k` with `2^k <= count`.
    pub fn info_bits(&self) -> usize {
        (self.count().bits() - 1) as usize
    }

    /// Redundancy in bits, `n - info_bits`.
    pub fn redundancy(&self) -> usize {
        self.n - self.info_bits()
    }

    /// Codeword with the middle section of the given rank.
    pub fn codeword(&self, rank: &BigUint) -> Result<BitString, CatalanError> {
        if *rank >= self.count() {
            return Err(CatalanError::IndexOutOfRange);
        }
        let frame = 4 * self.t + 1;
        let mut bits = vec![0u8; frame];
        let mut rest = rank.clone();
        let mut h = 0usize;
        for i in 0..self.mid {
            let with_zero = &self.paths[i + 1][h + 1];
            if rest < *with_zero {
                bits.push(0);
                h += 1;
            } else {
                rest -= with_zero;
                bits.push(1);
                h -= 1;
            }
        }
        bits.extend(core::iter::repeat(1).take(frame));
        Ok(BitString::new(bits).expect("frame is nonempty"))
    }

    /// Rank of a codeword's middle section; rejects anything off-code.
    pub fn rank(&self, s: &BitString) -> Result<BigUint, CatalanError> {
        let frame = 4 * self.t + 1;
        let bits = s.bits();
        if bits.len() != self.n
            || bits[..frame].iter().any(|&b| b != 0)
            || bits[self.n - frame..].iter().any(|&b| b != 1)
        {
            return Err(CatalanError::NotACodeword);
        }
        let mut rank = BigUint::zero();
        let mut h = 0usize;
        for (i, &b) in bits[frame..frame + self.mid].iter().enumerate() {
            if b == 0 {
                h += 1;
            } else {
                if h == 0 {
                    return Err(CatalanError::NotACodeword);
                }
                rank += &self.paths[i + 1][h + 1];
                h -= 1;
            }
        }
        if h != 0 {
            return Err(CatalanError::NotACodeword);
        }
        Ok(rank)
    }

    /// Encodes `info_bits()` bits, most significant first.
    pub fn encode(&self, info: &[u8]) -> Result<BitString, CatalanError> {
        if info.len() != self.info_bits() || info.iter().any(|&b| b > 1) {
            return Err(CatalanError::WrongInfoLength);
        }
        let mut rank = BigUint::zero();
        for &b in info {
            rank = (rank << 1) + b;
        }
        self.codeword(&rank)
    }

    /// All codewords, or `None` when the codebook exceeds `cap`.
    pub fn enumerate(&self, cap: usize) -> Option<Vec<BitString>> {
        let count = self.count();
        if count > BigUint::from(cap) {
            return None;
        }
        let mut out = Vec::new();
        let mut rank = BigUint::zero();
        while rank < count {
            out.push(self.codeword(&rank).expect("rank in range"));
            rank += 1u32;
        }
        Some(out)
    }

    /// Nearest-codeword decoding by exhaustive search over the codebook.
    ///
    /// Returns the information bits of the unique codeword minimizing the
    /// composition distance to `received`. `cap` bounds the codebook size
    /// this is willing to walk.
    pub fn decode(
        &self,
        received: &CompositionMultiset,
        cap: usize,
    ) -> Result<Vec<u8>, CatalanError> {
        if received.n() != self.n {
            return Err(CatalanError::WrongBlockLength);
        }
        let codebook = self.enumerate(cap).ok_or(CatalanError::CodebookTooLarge)?;
        let mut best: Option<(u64, usize)> = None;
        let mut tied = false;
        for (idx, cw) in codebook.iter().enumerate() {
            let d = multiset_distance(&composition_multiset(cw), received)
                .expect("lengths match");
            match best {
                Some((bd, _)) if d > bd => {}
                Some((bd, _)) if d == bd => tied = true,
                _ => {
                    best = Some((d, idx));
                    tied = false;
                }
            }
        }
        let (_, idx) = best.ok_or(CatalanError::IndexOutOfRange)?;
        if tied {
            return Err(CatalanError::Ambiguous);
        }
        let rank = BigUint::from(idx);
        let k = self.info_bits();
        let mut info = vec![0u8; k];
        for (i, slot) in info.iter_mut().enumerate() {
            *slot = rank.bit((k - 1 - i) as u64) as u8;
        }
        Ok(info)
    }
}
