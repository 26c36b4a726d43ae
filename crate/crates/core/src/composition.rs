//! Substring composition multisets and the substitution channel acting on them.
//!
//! The composition of a binary substring is the unordered pair `0^z 1^w`: how
//! many zeros and ones it contains, with order erased. A string of length `k`
//! is observed as the union over `l = 1..=k` of the compositions of all its
//! length-`l` substrings, class `l` holding exactly `k - l + 1` elements. A
//! channel error substitutes one composition in some class for another of the
//! same length, so class sizes never change.
//!
//! Reversal leaves every class untouched, which is why codes over this channel
//! must break the palindromic symmetry themselves.

use alloc::vec::Vec;
use core::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CompositionError {
    EmptyString,
    NotBinary { index: usize },
    ClassSize { len: usize, expected: usize, got: usize },
    MissingComposition { comp: Composition },
    SubstitutionLength { from: Composition, to: Composition },
    LengthMismatch { left: usize, right: usize },
    WeightsInconsistent { index: usize },
}

impl fmt::Display for CompositionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CompositionError::EmptyString => write!(f, "bit string must be non-empty"),
            CompositionError::NotBinary { index } => {
                write!(f, "bit string holds a non-binary value at index {index}")
            }
            CompositionError::ClassSize { len, expected, got } => {
                write!(f, "class {len} holds {got} compositions, expected {expected}")
            }
            CompositionError::MissingComposition { comp } => {
                write!(f, "composition {comp} is absent from its class")
            }
            CompositionError::SubstitutionLength { from, to } => {
                write!(f, "substitution {from} -> {to} changes the composition length")
            }
            CompositionError::LengthMismatch { left, right } => {
                write!(f, "multisets describe different lengths: {left} vs {right}")
            }
            CompositionError::WeightsInconsistent { index } => {
                write!(f, "no pair-weight vector over {{0,1,2}} matches the weights at index {index}")
            }
        }
    }
}

/// Binary string; bits stored as `0u8`/`1u8`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitString(Vec<u8>);

impl BitString {
    pub fn new(bits: Vec<u8>) -> Result<BitString, CompositionError> {
        if bits.is_empty() {
            return Err(CompositionError::EmptyString);
        }
        if let Some(index) = bits.iter().position(|&b| b > 1) {
            return Err(CompositionError::NotBinary { index });
        }
        Ok(BitString(bits))
    }

    /// Parses a string of ASCII `0`/`1` characters.
    pub fn parse(s: &str) -> Result<BitString, CompositionError> {
        if s.is_empty() {
            return Err(CompositionError::EmptyString);
        }
        let mut bits = Vec::with_capacity(s.len());
        for (index, c) in s.chars().enumerate() {
            match c {
                '0' => bits.push(0),
                '1' => bits.push(1),
                _ => return Err(CompositionError::NotBinary { index }),
            }
        }
        Ok(BitString(bits))
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    #[inline]
    pub fn bits(&self) -> &[u8] {
        &self.0
    }

    pub fn weight(&self) -> u64 {
        self.0.iter().map(|&b| b as u64).sum()
    }

    pub fn reversed(&self) -> BitString {
        let mut bits = self.0.clone();
        bits.reverse();
        BitString(bits)
    }

    /// Concatenation helper used by the encoders.
    pub fn concat(parts: &[&BitString]) -> BitString {
        let mut bits = Vec::new();
        for p in parts {
            bits.extend_from_slice(p.bits());
        }
        BitString(bits)
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            write!(f, "{}", b)?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitString({self})")
    }
}

/// `0^zeros 1^ones`: the composition of one substring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Composition {
    pub zeros: u32,
    pub ones: u32,
}

impl Composition {
    pub fn new(zeros: u32, ones: u32) -> Composition {
        Composition { zeros, ones }
    }

    #[inline]
    pub fn len(&self) -> u32 {
        self.zeros + self.ones
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.zeros, self.ones)
    }
}

/// One channel error: `from` is replaced by `to` within class `from.len()`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Substitution {
    pub from: Composition,
    pub to: Composition,
}

/// Errors applied in order; later entries see earlier substitutions.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ErrorPattern(pub Vec<Substitution>);

impl ErrorPattern {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// All substring compositions of one string, grouped by substring length.
///
/// Class `l` (1-based) is stored sorted by ones-count with multiplicities, so
/// equality is plain structural equality and iteration order is canonical.
#[derive(Clone, PartialEq, Eq)]
pub struct CompositionMultiset {
    n: usize,
    /// `classes[l - 1]` holds `(ones, count)` pairs sorted by `ones`.
    classes: Vec<Vec<(u32, u32)>>,
}

impl fmt::Debug for CompositionMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CompositionMultiset(n={})", self.n)
    }
}

impl CompositionMultiset {
    /// Multiset with the given length and no elements; used by parsers.
    pub fn empty(n: usize) -> CompositionMultiset {
        CompositionMultiset {
            n,
            classes: alloc::vec![Vec::new(); n],
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn class_size(&self, len: usize) -> usize {
        self.classes[len - 1]
            .iter()
            .map(|&(_, c)| c as usize)
            .sum()
    }

    /// `(composition, multiplicity)` pairs of class `len`, zeros descending.
    pub fn class(&self, len: usize) -> impl Iterator<Item = (Composition, u32)> + '_ {
        let l = len as u32;
        self.classes[len - 1]
            .iter()
            .map(move |&(ones, count)| (Composition::new(l - ones, ones), count))
    }

    pub fn multiplicity(&self, comp: Composition) -> u32 {
        let class = &self.classes[(comp.len() - 1) as usize];
        match class.binary_search_by_key(&comp.ones, |&(w, _)| w) {
            Ok(i) => class[i].1,
            Err(_) => 0,
        }
    }

    /// Adds `delta` copies of `comp` (negative removes).
    pub fn adjust(&mut self, comp: Composition, delta: i64) -> Result<(), CompositionError> {
        if delta == 0 {
            return Ok(());
        }
        let class = &mut self.classes[(comp.len() - 1) as usize];
        match class.binary_search_by_key(&comp.ones, |&(w, _)| w) {
            Ok(i) => {
                let cur = class[i].1 as i64;
                let next = cur + delta;
                if next < 0 {
                    return Err(CompositionError::MissingComposition { comp });
                }
                if next == 0 {
                    class.remove(i);
                } else {
                    class[i].1 = next as u32;
                }
            }
            Err(i) => {
                if delta < 0 {
                    return Err(CompositionError::MissingComposition { comp });
                }
                class.insert(i, (comp.ones, delta as u32));
            }
        }
        Ok(())
    }

    /// Checks `|C_l| = n - l + 1` for every class.
    pub fn validate_sizes(&self) -> Result<(), CompositionError> {
        for l in 1..=self.n {
            let got = self.class_size(l);
            let expected = self.n - l + 1;
            if got != expected {
                return Err(CompositionError::ClassSize { len: l, expected, got });
            }
        }
        Ok(())
    }

    /// Total number of elements across all classes.
    pub fn total_size(&self) -> u64 {
        (1..=self.n).map(|l| self.class_size(l) as u64).sum()
    }
}

/// Composition multiset of `s`: every substring of every length.
pub fn composition_multiset(s: &BitString) -> CompositionMultiset {
    let n = s.len();
    let bits = s.bits();
    let mut classes = Vec::with_capacity(n);
    // Reusable per-class histogram over ones-counts 0..=l.
    let mut hist: Vec<u32> = alloc::vec![0u32; n + 1];
    let mut window_ones: Vec<u32> = alloc::vec![0u32; n];
    for l in 1..=n {
        // Slide length-l windows; ones-count updates incrementally.
        let mut w: u32 = bits[..l].iter().map(|&b| b as u32).sum();
        let count = n - l + 1;
        window_ones[0] = w;
        for start in 1..count {
            w += bits[start + l - 1] as u32;
            w -= bits[start - 1] as u32;
            window_ones[start] = w;
        }
        let mut lo = u32::MAX;
        let mut hi = 0u32;
        for &w in &window_ones[..count] {
            hist[w as usize] += 1;
            lo = lo.min(w);
            hi = hi.max(w);
        }
        let mut class = Vec::new();
        for w in lo..=hi {
            if hist[w as usize] > 0 {
                class.push((w, hist[w as usize]));
                hist[w as usize] = 0;
            }
        }
        classes.push(class);
    }
    CompositionMultiset { n, classes }
}

/// Cumulative weight `w_l`: total ones over class `l`, for `l = 1..=n`.
pub fn cumulative_weights(c: &CompositionMultiset) -> Vec<u64> {
    c.classes
        .iter()
        .map(|class| {
            class
                .iter()
                .map(|&(ones, count)| ones as u64 * count as u64)
                .sum()
        })
        .collect()
}

/// Cumulative weights straight from a string, by counting how many length-`l`
/// windows cover each position. Independent of the multiset construction.
pub fn string_cumulative_weights(s: &BitString) -> Vec<u64> {
    let n = s.len();
    let bits = s.bits();
    // ones[i] = ones among the first i bits; pos[i] = sum of p over one-bits p <= i.
    let mut ones = alloc::vec![0u64; n + 1];
    let mut pos = alloc::vec![0u64; n + 1];
    for p in 1..=n {
        ones[p] = ones[p - 1] + bits[p - 1] as u64;
        pos[p] = pos[p - 1] + if bits[p - 1] == 1 { p as u64 } else { 0 };
    }
    let mut w = alloc::vec![0u64; n];
    for l in 1..=n {
        let m = l.min(n - l + 1);
        // Windows covering p: ramp up over p < m, plateau of height m, ramp down.
        let plateau_hi = n - m + 1;
        let head = pos[m - 1];
        let mid = m as u64 * (ones[plateau_hi] - ones[m - 1]);
        let tail = (n as u64 + 1) * (ones[n] - ones[plateau_hi]) - (pos[n] - pos[plateau_hi]);
        w[l - 1] = head + mid + tail;
    }
    w
}

/// Pair weights `sigma_i = s_i + s_{n+1-i}` recovered from the first
/// `ceil(n/2)` cumulative weights via successive differences.
pub fn sigma_from_weights(w: &[u64], n: usize) -> Result<Vec<u8>, CompositionError> {
    let h = n.div_ceil(2);
    assert!(w.len() >= h, "need the first ceil(n/2) cumulative weights");
    // tail_i = sigma_i + ... + sigma_h: tail_1 = w_1, tail_{i+1} = w_{i+1} - w_i.
    let mut tails = Vec::with_capacity(h + 1);
    tails.push(w[0]);
    for i in 1..h {
        if w[i] < w[i - 1] {
            return Err(CompositionError::WeightsInconsistent { index: i + 1 });
        }
        tails.push(w[i] - w[i - 1]);
    }
    tails.push(0);
    let mut sigma = Vec::with_capacity(h);
    for i in 0..h {
        if tails[i] < tails[i + 1] {
            return Err(CompositionError::WeightsInconsistent { index: i + 1 });
        }
        let s = tails[i] - tails[i + 1];
        let cap = if n % 2 == 1 && i == h - 1 { 1 } else { 2 };
        if s > cap {
            return Err(CompositionError::WeightsInconsistent { index: i + 1 });
        }
        sigma.push(s as u8);
    }
    Ok(sigma)
}

/// Applies substitutions in order. Each `from` must be present (accounting for
/// earlier substitutions) and each `to` must have the same length.
pub fn apply_errors(
    c: &CompositionMultiset,
    e: &ErrorPattern,
) -> Result<CompositionMultiset, CompositionError> {
    let mut out = c.clone();
    for sub in &e.0 {
        if sub.from.len() != sub.to.len() || sub.from.is_empty() {
            return Err(CompositionError::SubstitutionLength { from: sub.from, to: sub.to });
        }
        if sub.from.len() as usize > out.n {
            return Err(CompositionError::MissingComposition { comp: sub.from });
        }
        out.adjust(sub.from, -1)?;
        out.adjust(sub.to, 1)?;
    }
    Ok(out)
}

/// Channel distance: half the symmetric difference, summed over classes. This
/// is the minimum number of substitutions turning one multiset into the other.
pub fn multiset_distance(
    a: &CompositionMultiset,
    b: &CompositionMultiset,
) -> Result<u64, CompositionError> {
    if a.n != b.n {
        return Err(CompositionError::LengthMismatch { left: a.n, right: b.n });
    }
    let mut diff = 0u64;
    for l in 0..a.n {
        let (xs, ys) = (&a.classes[l], &b.classes[l]);
        let (mut i, mut j) = (0, 0);
        while i < xs.len() || j < ys.len() {
            match (xs.get(i), ys.get(j)) {
                (Some(&(wx, cx)), Some(&(wy, cy))) if wx == wy => {
                    diff += (cx as i64 - cy as i64).unsigned_abs();
                    i += 1;
                    j += 1;
                }
                (Some(&(wx, cx)), Some(&(wy, _))) if wx < wy => {
                    diff += cx as u64;
                    i += 1;
                }
                (Some(_), Some(&(_, cy))) => {
                    diff += cy as u64;
                    j += 1;
                }
                (Some(&(_, cx)), None) => {
                    diff += cx as u64;
                    i += 1;
                }
                (None, Some(&(_, cy))) => {
                    diff += cy as u64;
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
    }
    debug_assert_eq!(diff % 2, 0, "class sizes differ");
    Ok(diff / 2)
}
