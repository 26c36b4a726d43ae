//! Encoder and decoder for composition-substitution error correction.
//!
//! A codeword of length `n` is laid out as `0^{r/2} | u | reverse(z)` where
//! `r = r_hat` is the redundancy and `u` is a dominance-encoded information
//! block. The pad and the reversed tail make the pairwise sums
//! `sigma_j = s_j + s_{n+1-j}` equal `z_j` for `j <= r/2`, and the parities of
//! the even-class cumulative weights `w_{2j}` equal the odd prefix sums of
//! `z`. Those parities change in at most one position per composition
//! substitution, so `z` carries an inner code correcting `t` bit errors.
//!
//! The inner codeword protects a payload pinned for the decoder: the weight
//! of `u` modulo `2t + 1` and the evaluations of the prefix polynomial of `u`
//! on the symmetric grid `(alpha^{l1}, alpha^{l2})` with `|l1|, |l2| <= 4t`.
//! From the payload the decoder rebuilds `z`, resolves the true codeword
//! weight inside a window of width `2t + 1`, assembles the true prefix
//! polynomial on the grid, and subtracts its self-correlation from the one
//! implied by the received multiset. What remains is a shifted difference
//! polynomial with at most `4t` terms; sparse interpolation recovers it, the
//! multiset is corrected, and the string is reconstructed pair by pair.

pub mod inner;
pub mod reconstruct;
pub mod sr;

pub use inner::{BchCode, InnerCode, InnerError, RepetitionCode};
pub use reconstruct::{reconstruct_with_pad, ReconstructError};
pub use sr::{satisfies_dominance, SrCode, SrError};

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::composition::{
    cumulative_weights, BitString, Composition, CompositionMultiset,
};
use crate::field::{is_prime, PrimeField};
use crate::sparse::{recover_error_poly, GridSamples, SparseError};

/// Construction-time failures.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CodecError {
    /// The redundancy does not fit: the length must be at least `required`.
    Infeasible { n: usize, t: usize, required: usize },
    /// No inner code fits the payload at this `t`.
    Inner(InnerError),
    /// Operation needs an inner code but the parameters carry none.
    LayoutOnly,
    /// Information block error (wrong length, not in the code's image).
    Sr(SrError),
}

impl fmt::Display for CodecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CodecError::Infeasible { n, t, required } => write!(
                f,
                "length {n} cannot hold the redundancy for t={t}; need at least {required}"
            ),
            CodecError::Inner(e) => write!(f, "inner code: {e}"),
            CodecError::LayoutOnly => {
                write!(f, "parameters are layout-only and cannot encode or decode")
            }
            CodecError::Sr(e) => write!(f, "information block: {e}"),
        }
    }
}

/// Decoder failures. Any of these means the received multiset is not within
/// `t` substitutions of a codeword (or not a plausible multiset at all).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DecodeError {
    /// Wrong length or malformed class sizes.
    InvalidInput,
    /// Parameters carry no inner code.
    LayoutOnly,
    /// The parity stream is beyond the inner code's correction radius.
    Inner(InnerError),
    /// Inner-decoded payload bits fall outside their value ranges.
    Payload,
    /// No weight consistent with the pinned residue lies in the window.
    WeightWindow,
    /// Sparse interpolation of the difference polynomial failed.
    Sparse(SparseError),
    /// Recovered difference terms do not form a valid substitution pattern.
    ErrorTerm,
    /// The two mirror halves of the difference polynomial disagree.
    MirrorMismatch,
    /// Subtracting the pattern drives some multiplicity negative.
    Correction,
    /// The corrected multiset is not the multiset of any string.
    Reconstruction(ReconstructError),
    /// The reconstructed tail contradicts the inner-decoded parity block.
    SegmentMismatch,
    /// The reconstructed information block is not in the code's image.
    Sr(SrError),
}

impl fmt::Display for DecodeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DecodeError::InvalidInput => write!(f, "input is not a multiset of the right shape"),
            DecodeError::LayoutOnly => {
                write!(f, "parameters are layout-only and cannot decode")
            }
            DecodeError::Inner(e) => write!(f, "inner decode: {e}"),
            DecodeError::Payload => write!(f, "payload bits out of range"),
            DecodeError::WeightWindow => write!(f, "no weight matches the pinned residue"),
            DecodeError::Sparse(e) => write!(f, "sparse recovery: {e}"),
            DecodeError::ErrorTerm => write!(f, "difference terms exceed the error model"),
            DecodeError::MirrorMismatch => write!(f, "difference polynomial is not symmetric"),
            DecodeError::Correction => write!(f, "correction drives a multiplicity negative"),
            DecodeError::Reconstruction(e) => write!(f, "reconstruction: {e}"),
            DecodeError::SegmentMismatch => write!(f, "tail disagrees with the parity block"),
            DecodeError::Sr(e) => write!(f, "information block: {e}"),
        }
    }
}

/// Bits needed to store values `0..=max`.
fn bits_for(max: u64) -> usize {
    (64 - max.leading_zeros()) as usize
}

/// Base-2 logarithm routed through the `Float` trait so it resolves with or
/// without the standard library.
fn log2(x: f64) -> f64 {
    num_traits::Float::log2(x)
}

fn push_bits(out: &mut Vec<u8>, value: u64, width: usize) {
    for k in (0..width).rev() {
        out.push(((value >> k) & 1) as u8);
    }
}

fn read_bits(bits: &[u8], pos: usize, width: usize) -> u64 {
    bits[pos..pos + width]
        .iter()
        .fold(0u64, |acc, &b| (acc << 1) | b as u64)
}

/// Smallest odd prime `q` with `q - 1 > 2n`; mirrors `PrimeField::find`
/// without building the field, for cheap feasibility probing.
fn smallest_field_prime(n: usize) -> u64 {
    let mut q = (2 * n as u64 + 2) | 1;
    loop {
        if is_prime(q) && q > 2 {
            return q;
        }
        q += 2;
    }
}

/// Payload width: the weight residue plus `(8t+1)^2` field elements.
fn payload_width(t: usize, q: u64) -> usize {
    let points = (8 * t + 1) * (8 * t + 1);
    bits_for(2 * t as u64) + points * bits_for(q - 1)
}

/// Everything fixed by the pair `(n, t)`: the field, the redundancy split,
/// the inner code, and the dominance code over the information block.
#[derive(Debug, Clone)]
pub struct CodecParams {
    n: usize,
    t: usize,
    field: PrimeField,
    r_hat: usize,
    sr: SrCode,
    inner: Option<InnerCode>,
}

impl CodecParams {
    /// Parameters with a BCH inner code.
    pub fn new(n: usize, t: usize) -> Result<CodecParams, CodecError> {
        assert!(t >= 1, "t must be positive");
        let field = PrimeField::find(n as u64);
        let payload = payload_width(t, field.q());
        let inner = InnerCode::Bch(BchCode::new(payload, t).map_err(CodecError::Inner)?);
        CodecParams::assemble(n, t, field, inner)
    }

    /// Parameters with a `(2t+1)`-fold repetition inner code. Far more
    /// redundant than BCH; exists as a trivially correct baseline.
    pub fn with_repetition_inner(n: usize, t: usize) -> Result<CodecParams, CodecError> {
        assert!(t >= 1, "t must be positive");
        let field = PrimeField::find(n as u64);
        let payload = payload_width(t, field.q());
        let inner = InnerCode::Repetition(RepetitionCode::new(payload, t));
        CodecParams::assemble(n, t, field, inner)
    }

    fn assemble(
        n: usize,
        t: usize,
        field: PrimeField,
        inner: InnerCode,
    ) -> Result<CodecParams, CodecError> {
        let r_hat = 4 * inner.code_len();
        if n < r_hat + 2 {
            return Err(CodecError::Infeasible { n, t, required: r_hat + 2 });
        }
        let sr = SrCode::new(n - r_hat).expect("block length is at least 2");
        Ok(CodecParams { n, t, field, r_hat, sr, inner: Some(inner) })
    }

    /// Layout-only parameters with an explicit redundancy, no inner code.
    /// Supports `reconstruct_string` and layout accessors; `encode` and
    /// `decode` report `LayoutOnly`. Useful at small lengths where no real
    /// inner code fits.
    pub fn layout_only(n: usize, t: usize, r_hat: usize) -> Result<CodecParams, CodecError> {
        assert!(t >= 1, "t must be positive");
        assert!(r_hat % 4 == 0, "redundancy must be a multiple of 4");
        if n < r_hat + 2 {
            return Err(CodecError::Infeasible { n, t, required: r_hat + 2 });
        }
        let field = PrimeField::find(n as u64);
        let sr = SrCode::new(n - r_hat).expect("block length is at least 2");
        Ok(CodecParams { n, t, field, r_hat, sr, inner: None })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    /// Total redundancy positions outside the information block.
    pub fn r_hat(&self) -> usize {
        self.r_hat
    }

    /// Length of the zero pad (also of the tail): `r_hat / 2`.
    pub fn pad_len(&self) -> usize {
        self.r_hat / 2
    }

    /// Length of the information block `u`.
    pub fn u_len(&self) -> usize {
        self.n - self.r_hat
    }

    /// Grid half-width: evaluations cover `|l1|, |l2| <= 4t`.
    pub fn grid_halfwidth(&self) -> usize {
        4 * self.t
    }

    /// Information bits per codeword.
    pub fn info_len(&self) -> usize {
        self.sr.info_bits()
    }

    /// Payload bits protected by the inner code.
    pub fn payload_bits(&self) -> usize {
        payload_width(self.t, self.field.q())
    }

    pub fn sr(&self) -> &SrCode {
        &self.sr
    }

    pub fn inner(&self) -> Option<&InnerCode> {
        self.inner.as_ref()
    }
}

/// The data the decoder needs before it can touch the grid: the weight of
/// the information block modulo `2t + 1` and the prefix-polynomial
/// evaluations of `u`, row-major over `l1` then `l2`, each in `-4t..=4t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PinnedPayload {
    pub a: u64,
    pub evals: Vec<u64>,
}

impl PinnedPayload {
    /// Fixed-width big-endian packing: the residue, then each evaluation.
    pub fn to_bits(&self, params: &CodecParams) -> Vec<u8> {
        let mut out = Vec::with_capacity(params.payload_bits());
        push_bits(&mut out, self.a, bits_for(2 * params.t as u64));
        let wq = bits_for(params.field.q() - 1);
        for &v in &self.evals {
            push_bits(&mut out, v, wq);
        }
        debug_assert_eq!(out.len(), params.payload_bits());
        out
    }

    pub fn from_bits(bits: &[u8], params: &CodecParams) -> Result<PinnedPayload, DecodeError> {
        if bits.len() != params.payload_bits() {
            return Err(DecodeError::Payload);
        }
        let wa = bits_for(2 * params.t as u64);
        let wq = bits_for(params.field.q() - 1);
        let a = read_bits(bits, 0, wa);
        if a > 2 * params.t as u64 {
            return Err(DecodeError::Payload);
        }
        let side = 2 * params.grid_halfwidth() + 1;
        let mut evals = Vec::with_capacity(side * side);
        for k in 0..side * side {
            let v = read_bits(bits, wa + k * wq, wq);
            if v >= params.field.q() {
                return Err(DecodeError::Payload);
            }
            evals.push(v);
        }
        Ok(PinnedPayload { a, evals })
    }
}

/// An encoded string together with nothing else; the type exists so that
/// strings produced by the encoder are distinguishable from arbitrary ones.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Codeword {
    s: BitString,
}

impl Codeword {
    pub fn string(&self) -> &BitString {
        &self.s
    }

    pub fn into_string(self) -> BitString {
        self.s
    }
}

/// Parity block from the inner codeword: odd positions of `z` are chosen so
/// that the prefix sum of `z` through position `2j - 1` has parity
/// `sbar[j - 1]`; even positions stay zero.
fn zeta_from_parity(sbar: &[u8], half: usize) -> Vec<u8> {
    debug_assert_eq!(2 * sbar.len(), half);
    let mut z = vec![0u8; half];
    let mut acc = 0u8;
    for (i, &p) in sbar.iter().enumerate() {
        z[2 * i] = p ^ acc;
        acc ^= z[2 * i];
    }
    z
}

/// Prefix polynomial of `s` evaluated at `(alpha^{l1}, alpha^{l2})` for all
/// `|l1|, |l2| <= g`, row-major over `l1` then `l2`. The polynomial has one
/// term `x^{ones} y^{zeros}` per prefix, the empty prefix included.
fn prefix_grid_evals(f: &PrimeField, s: &BitString, g: i64) -> Vec<u64> {
    let bits = s.bits();
    let wt = s.weight() as usize;
    let size = (2 * g + 1) as usize;
    let mut xs = vec![0u64; wt + 1];
    let mut ys = vec![0u64; bits.len() - wt + 1];
    let mut evals = Vec::with_capacity(size * size);
    for l1 in -g..=g {
        let bx = f.alpha_pow(l1);
        let mut cur = 1u64;
        for v in xs.iter_mut() {
            *v = cur;
            cur = f.mul(cur, bx);
        }
        for l2 in -g..=g {
            let by = f.alpha_pow(l2);
            let mut cur = 1u64;
            for v in ys.iter_mut() {
                *v = cur;
                cur = f.mul(cur, by);
            }
            let mut acc = 1u64;
            let (mut ones, mut zeros) = (0usize, 0usize);
            for &bit in bits {
                if bit == 1 {
                    ones += 1;
                } else {
                    zeros += 1;
                }
                acc = f.add(acc, f.mul(xs[ones], ys[zeros]));
            }
            evals.push(acc);
        }
    }
    evals
}

/// Multiset polynomial of `c` on the same grid, indexed `[l1+g][l2+g]`.
/// Factorized per diagonal: a term `cnt * x^w y^{l-w}` at `(alpha^{l1},
/// alpha^{l2})` is `cnt * alpha^{l2 l} * alpha^{(l1-l2) w}`, so for each
/// difference `d = l1 - l2` one pass over the classes yields per-length sums
/// `G_l` that every point on the diagonal reuses.
fn multiset_grid(f: &PrimeField, c: &CompositionMultiset, g: i64) -> Vec<Vec<u64>> {
    let n = c.n();
    let size = (2 * g + 1) as usize;
    let mut out = vec![vec![0u64; size]; size];
    let mut pow_d = vec![0u64; n + 1];
    let mut cls = vec![0u64; n + 1];
    for d in -2 * g..=2 * g {
        let base = f.alpha_pow(d);
        let mut cur = 1u64;
        for v in pow_d.iter_mut() {
            *v = cur;
            cur = f.mul(cur, base);
        }
        for l in 1..=n {
            let mut acc = 0u64;
            for (comp, cnt) in c.class(l) {
                acc = f.add(acc, f.mul(cnt as u64, pow_d[comp.ones as usize]));
            }
            cls[l] = acc;
        }
        for l1 in (-g).max(d - g)..=g.min(d + g) {
            let l2 = l1 - d;
            let by = f.alpha_pow(l2);
            let mut cur = by;
            let mut val = 0u64;
            for &gl in cls.iter().skip(1) {
                val = f.add(val, f.mul(cur, gl));
                cur = f.mul(cur, by);
            }
            out[(l1 + g) as usize][(l2 + g) as usize] = val;
        }
    }
    out
}

/// Encodes `info` (exactly `params.info_len()` bits of 0/1) into a codeword.
pub fn encode(params: &CodecParams, info: &[u8]) -> Result<Codeword, CodecError> {
    let inner = params.inner.as_ref().ok_or(CodecError::LayoutOnly)?;
    let u = params.sr.encode(info).map_err(CodecError::Sr)?;
    let g = params.grid_halfwidth() as i64;
    let payload = PinnedPayload {
        a: u.weight() % (2 * params.t as u64 + 1),
        evals: prefix_grid_evals(&params.field, &u, g),
    };
    let sbar = inner.encode(&payload.to_bits(params));
    let z = zeta_from_parity(&sbar, params.pad_len());
    let mut bits = Vec::with_capacity(params.n);
    bits.resize(params.pad_len(), 0u8);
    bits.extend_from_slice(u.bits());
    bits.extend(z.iter().rev().copied());
    let s = BitString::new(bits).expect("codeword is nonempty");
    Ok(Codeword { s })
}

/// Decodes a received multiset within `t` substitutions of a codeword's.
/// Returns the information bits, the codeword string, and the corrected
/// multiset. Every verification failure maps to a distinct error.
pub fn decode(
    params: &CodecParams,
    received: &CompositionMultiset,
) -> Result<(Vec<u8>, Codeword, CompositionMultiset), DecodeError> {
    let inner = params.inner.as_ref().ok_or(DecodeError::LayoutOnly)?;
    let n = params.n;
    if received.n() != n || received.validate_sizes().is_err() {
        return Err(DecodeError::InvalidInput);
    }
    let f = &params.field;
    let q = f.q();
    let t = params.t;
    let g = params.grid_halfwidth() as i64;
    let size = (2 * g + 1) as usize;

    // Parity stream: each substitution flips the weight of one class, so the
    // even-class parities differ from the inner codeword in at most t bits.
    let w = cumulative_weights(received);
    let noisy: Vec<u8> = (1..=params.r_hat / 4)
        .map(|j| (w[2 * j - 1] & 1) as u8)
        .collect();
    let data = inner.decode(&noisy).map_err(DecodeError::Inner)?;
    let payload = PinnedPayload::from_bits(&data, params)?;
    let sbar = inner.encode(&data);
    let z = zeta_from_parity(&sbar, params.pad_len());
    let wt_z: u64 = z.iter().map(|&b| b as u64).sum();

    // The observed weight is off by at most t, and the true weight is pinned
    // modulo 2t + 1, so the window holds exactly one candidate.
    let modulus = 2 * t as u64 + 1;
    let rho = (payload.a + wt_z) % modulus;
    let observed = w[0];
    let lo = observed.saturating_sub(t as u64);
    let hi = (observed + t as u64).min(n as u64);
    let d_x = (lo..=hi)
        .find(|k| k % modulus == rho)
        .ok_or(DecodeError::WeightWindow)?;
    let d_y = n as u64 - d_x;
    if d_x < wt_z || d_x - wt_z > params.u_len() as u64 {
        return Err(DecodeError::WeightWindow);
    }

    // The true prefix polynomial on the grid, assembled from its segments:
    // pad prefixes contribute a geometric sum in y, prefixes into u reuse the
    // pinned evaluations shifted by y^{pad}, prefixes into the tail shift its
    // own prefix polynomial by the composition of everything before it.
    let pad = params.pad_len() as i64;
    let d_xu = (d_x - wt_z) as i64;
    let d_yu = params.u_len() as i64 - d_xu;
    let tail = BitString::new(z.iter().rev().copied().collect()).expect("tail is nonempty");
    let p_tail = prefix_grid_evals(f, &tail, g);
    let mut p_s = vec![vec![0u64; size]; size];
    for l2 in -g..=g {
        let step = f.alpha_pow(l2);
        let mut p_pad = 0u64;
        let mut cur = 1u64;
        for _ in 0..=pad {
            p_pad = f.add(p_pad, cur);
            cur = f.mul(cur, step);
        }
        for l1 in -g..=g {
            let idx = ((l1 + g) * (2 * g + 1) + (l2 + g)) as usize;
            let mut v = p_pad;
            let shift_u = f.alpha_pow(l2 * pad);
            v = f.add(v, f.mul(shift_u, f.sub(payload.evals[idx], 1)));
            let shift_tail = f.alpha_pow(l1 * d_xu + l2 * (pad + d_yu));
            v = f.add(v, f.mul(shift_tail, f.sub(p_tail[idx], 1)));
            p_s[(l1 + g) as usize][(l2 + g) as usize] = v;
        }
    }

    // Difference grid: the self-correlation identity says the multiset side
    // minus the prefix-polynomial side vanishes exactly on true data, so on
    // noisy data it samples the shifted difference polynomial. Lifting by
    // x^{n-d_x} y^{n-d_y} keeps all exponents in 0..=2n.
    let stilde = multiset_grid(f, received, g);
    let np1 = (n as u64 + 1) % q;
    let mut values = vec![vec![0u64; size]; size];
    for l1 in -g..=g {
        for l2 in -g..=g {
            let (i1, i2) = ((l1 + g) as usize, (l2 + g) as usize);
            let (m1, m2) = ((g - l1) as usize, (g - l2) as usize);
            let shift = f.alpha_pow(l1 * d_x as i64 + l2 * d_y as i64);
            let f_val = f.mul(shift, f.add(np1, f.add(stilde[i1][i2], stilde[m1][m2])));
            let prod = f.mul(p_s[i1][i2], f.mul(shift, p_s[m1][m2]));
            let lift = f.alpha_pow(l1 * (n as u64 - d_x) as i64 + l2 * (n as u64 - d_y) as i64);
            values[i2][i1] = f.mul(f.sub(f_val, prod), lift);
        }
    }
    let grid = GridSamples { radius: g as u32, values };
    let terms = recover_error_poly(f, &grid, 4 * t, 2 * n as u32, 2 * n as u32)
        .map_err(DecodeError::Sparse)?;

    // Unshift, lift coefficients to signed integers, and split around the
    // pivot x^{d_x} y^{d_y}. Both halves must agree: the difference of two
    // composition multisets is mirror-symmetric by construction.
    let tcap = 2 * t as u64;
    let mut upper: BTreeMap<(u32, u32), i64> = BTreeMap::new();
    let mut lower: BTreeMap<(u32, u32), i64> = BTreeMap::new();
    for (&(ex, ey), &c) in &terms {
        let signed = if c <= tcap {
            c as i64
        } else if q - c <= tcap {
            -((q - c) as i64)
        } else {
            return Err(DecodeError::ErrorTerm);
        };
        let rx = ex as i64 - n as i64;
        let ry = ey as i64 - n as i64;
        if rx == 0 && ry == 0 {
            return Err(DecodeError::ErrorTerm);
        }
        if rx >= 0 && ry >= 0 {
            upper.insert((rx as u32, ry as u32), signed);
        } else if rx <= 0 && ry <= 0 {
            lower.insert(((-rx) as u32, (-ry) as u32), signed);
        } else {
            return Err(DecodeError::ErrorTerm);
        }
    }
    if upper != lower {
        return Err(DecodeError::MirrorMismatch);
    }
    let mut mass = 0i64;
    let mut class_sums: BTreeMap<u32, i64> = BTreeMap::new();
    for (&(wx, zy), &c) in &upper {
        let l = wx + zy;
        if l == 0 || l > n as u32 {
            return Err(DecodeError::ErrorTerm);
        }
        mass += c.abs();
        *class_sums.entry(l).or_insert(0) += c;
    }
    if mass > 2 * t as i64 || class_sums.values().any(|&v| v != 0) {
        return Err(DecodeError::ErrorTerm);
    }

    // The upper half is noisy-minus-true per composition; subtract it.
    let mut corrected = received.clone();
    for (&(wx, zy), &c) in &upper {
        corrected
            .adjust(Composition::new(zy, wx), -c)
            .map_err(|_| DecodeError::Correction)?;
    }

    let s_hat = reconstruct_with_pad(&corrected, params.pad_len())
        .map_err(DecodeError::Reconstruction)?;
    let bits = s_hat.bits();
    if (0..params.pad_len()).any(|i| bits[n - 1 - i] != z[i]) {
        return Err(DecodeError::SegmentMismatch);
    }
    let u_bits = bits[params.pad_len()..params.pad_len() + params.u_len()].to_vec();
    let u = BitString::new(u_bits).expect("information block is nonempty");
    let info = params.sr.decode(&u).map_err(DecodeError::Sr)?;
    Ok((info, Codeword { s: s_hat }, corrected))
}

/// Rebuilds the unique string with multiset `c` under this layout's pad.
pub fn reconstruct_string(
    params: &CodecParams,
    c: &CompositionMultiset,
) -> Result<BitString, ReconstructError> {
    reconstruct_with_pad(c, params.pad_len())
}

/// Smallest length at which `CodecParams::new(n, t)` succeeds. The field
/// grows with `n`, so feasibility is not monotone at field-size jumps; the
/// downward scan keeps going through short infeasible stretches.
pub fn min_feasible_n(t: usize) -> usize {
    assert!(t >= 1, "t must be positive");
    let feasible = |n: usize| -> bool {
        let q = smallest_field_prime(n);
        match BchCode::new(payload_width(t, q), t) {
            Ok(code) => n >= 4 * code.code_len() + 2,
            Err(_) => false,
        }
    };
    let mut hi = 64usize;
    while !feasible(hi) {
        hi *= 2;
        assert!(hi <= 1 << 26, "no feasible length in range");
    }
    let mut best = hi;
    let mut k = hi - 1;
    let mut misses = 0usize;
    while misses < 512 && k >= 4 {
        if feasible(k) {
            best = k;
            misses = 0;
        } else {
            misses += 1;
        }
        k -= 1;
    }
    best
}

/// Redundancy accounting for a parameter pair, whether or not it is
/// feasible, plus two analytic reference curves: the redundancy of the
/// narrower-grid construction variant and the closed-form ceiling
/// `156 t^2 log2(8n)`.
#[derive(Debug, Clone, PartialEq)]
pub struct RedundancyReport {
    pub n: usize,
    pub t: usize,
    pub q: u64,
    pub payload_bits: usize,
    pub r_hat: usize,
    pub info_bits: usize,
    pub redundancy_bits: usize,
    pub feasible: bool,
    pub variant_redundancy: f64,
    pub bound_redundancy: f64,
}

impl fmt::Display for RedundancyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "n={} t={} q={} payload={} r_hat={} info={} redundancy={} feasible={} \
             variant={:.1} bound={:.1}",
            self.n,
            self.t,
            self.q,
            self.payload_bits,
            self.r_hat,
            self.info_bits,
            self.redundancy_bits,
            self.feasible,
            self.variant_redundancy,
            self.bound_redundancy,
        )
    }
}

pub fn redundancy_report(n: usize, t: usize) -> RedundancyReport {
    assert!(t >= 1 && n >= 2);
    let q = smallest_field_prime(n);
    let payload = payload_width(t, q);
    let (feasible, r_hat, info_bits) = match BchCode::new(payload, t) {
        Ok(code) if n >= 4 * code.code_len() + 2 => {
            let r_hat = 4 * code.code_len();
            let sr = SrCode::new(n - r_hat).expect("block length is at least 2");
            (true, r_hat, sr.info_bits())
        }
        Ok(code) => (false, 4 * code.code_len(), 0),
        Err(_) => (false, 0, 0),
    };
    let (nf, tf) = (n as f64, t as f64);
    // The narrower-grid variant pins evaluations on |l1|, |l2| <= 2t and
    // spends half a log on side information instead of the dominance code.
    let m_small = (4.0 * tf + 1.0) * (4.0 * tf + 1.0) * (log2(2.0 * nf + 1.0) + 1.0)
        + log2(2.0 * tf + 1.0);
    let variant = 4.0 * (m_small + tf * log2(m_small)) + 0.5 * log2(nf);
    let bound = 156.0 * tf * tf * log2(8.0 * nf);
    RedundancyReport {
        n,
        t,
        q,
        payload_bits: payload,
        r_hat,
        info_bits,
        redundancy_bits: n - info_bits,
        feasible,
        variant_redundancy: variant,
        bound_redundancy: bound,
    }
}
