//! Independent brute-force checks for composition codes.
//!
//! Everything here is deliberately naive: pairwise distances and exhaustive
//! nearest-codeword search, with no shortcuts shared with the structured
//! encoders and decoders. Tests and the certification tooling use this
//! module as the ground truth to compare against.

use alloc::vec::Vec;
use core::fmt;

use crate::composition::{composition_multiset, multiset_distance, BitString, CompositionMultiset};

/// Outcome of certifying a codebook against a target error weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    /// Error weight the codebook was checked against.
    pub t: usize,
    /// Smallest pairwise composition distance, `None` for codebooks of size
    /// below two.
    pub min_distance: Option<u64>,
    /// Indices of a closest pair, `None` for codebooks of size below two.
    pub witness: Option<(usize, usize)>,
    /// Whether every pair is at distance at least `2t + 1`.
    pub ok: bool,
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.ok, self.min_distance, self.witness) {
            (true, Some(d), _) => write!(f, "PASS: min distance {d} >= {}", 2 * self.t + 1),
            (true, None, _) => write!(f, "PASS: fewer than two codewords"),
            (false, Some(d), Some((i, j))) => write!(
                f,
                "FAIL: codewords {i} and {j} at distance {d} < {}",
                2 * self.t + 1
            ),
            _ => write!(f, "FAIL"),
        }
    }
}

/// Checks that all pairwise composition distances are at least `2t + 1`,
/// which is exactly the condition for `t` substitutions to be correctable.
///
/// Quadratic in the codebook size; refuses books beyond the cap to keep the
/// run time sane.
pub fn certify_code(codebook: &[BitString], t: usize) -> Certificate {
    assert!(codebook.len() <= 100_000, "codebook too large to certify");
    let multisets: Vec<CompositionMultiset> =
        codebook.iter().map(composition_multiset).collect();
    let mut min: Option<(u64, (usize, usize))> = None;
    for i in 0..multisets.len() {
        for j in (i + 1)..multisets.len() {
            let d = multiset_distance(&multisets[i], &multisets[j])
                .expect("codebook strings share a length");
            if min.map_or(true, |(bd, _)| d < bd) {
                min = Some((d, (i, j)));
            }
        }
    }
    Certificate {
        t,
        min_distance: min.map(|(d, _)| d),
        witness: min.map(|(_, w)| w),
        ok: min.map_or(true, |(d, _)| d >= 2 * t as u64 + 1),
    }
}

/// Reference decoding failure.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OracleError {
    /// Codebook is empty.
    Empty,
    /// Two codewords are equally close to the received multiset.
    Tie,
}

impl fmt::Display for OracleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleError::Empty => write!(f, "empty codebook"),
            OracleError::Tie => write!(f, "two codewords equally close"),
        }
    }
}

/// Exhaustive nearest-codeword decoding: returns the index of the unique
/// codeword whose composition multiset is closest to `received`.
pub fn reference_decode(
    codebook: &[BitString],
    received: &CompositionMultiset,
) -> Result<usize, OracleError> {
    let mut best: Option<(u64, usize)> = None;
    let mut tied = false;
    for (idx, cw) in codebook.iter().enumerate() {
        let d = multiset_distance(&composition_multiset(cw), received)
            .expect("codebook strings match the received length");
        match best {
            Some((bd, _)) if d > bd => {}
            Some((bd, _)) if d == bd => tied = true,
            _ => {
                best = Some((d, idx));
                tied = false;
            }
        }
    }
    let (_, idx) = best.ok_or(OracleError::Empty)?;
    if tied {
        return Err(OracleError::Tie);
    }
    Ok(idx)
}
