//! Rebuilding a string from its exact composition multiset.
//!
//! Positions are peeled in mirror pairs `(j, n+1-j)` from the outside in.
//! The pair weights `sigma_j` follow from the cumulative class weights; a
//! known all-zero prefix fixes the first `pad` pairs outright, and inside
//! the data region a `sigma_j = 1` pair is oriented by comparing the class
//! of length `n - j` against the already determined boundary: once the
//! `j - 1` substring weights that involve only known positions are removed
//! from that class, the two survivors are `wt - a_j` and `wt - b_j`, where
//! `a_j` and `b_j` count ones in the length-`j` prefix and suffix. The two
//! orientations predict different survivor pairs whenever the prefix and
//! suffix weights differ, which the dominance structure of the data region
//! guarantees; the lone boundary tie is broken toward a zero on the left,
//! matching that structure. A depth-first fallback with the same per-step
//! pruning and a node budget guards adversarial non-codeword inputs, and
//! every returned string is verified against the full multiset. Runs in
//! O(n^2) time on valid inputs.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::composition::{
    composition_multiset, cumulative_weights, sigma_from_weights, BitString, CompositionMultiset,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReconstructError {
    /// Class sizes or cumulative weights rule out any preimage.
    BadShape,
    /// The pad length does not fit the string length.
    BadPad,
    /// Search budget exhausted before finding a consistent string.
    BudgetExhausted,
    /// No string with the required layout has this multiset.
    Mismatch,
}

impl fmt::Display for ReconstructError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReconstructError::BadShape => write!(f, "multiset shape rules out any preimage"),
            ReconstructError::BadPad => write!(f, "pad length does not fit the string length"),
            ReconstructError::BudgetExhausted => write!(f, "reconstruction search budget exhausted"),
            ReconstructError::Mismatch => write!(f, "no string with the required layout matches"),
        }
    }
}

/// Rebuilds the unique string with an all-zero length-`pad` prefix whose
/// composition multiset equals `c`.
pub fn reconstruct_with_pad(
    c: &CompositionMultiset,
    pad: usize,
) -> Result<BitString, ReconstructError> {
    let n = c.n();
    if n == 0 || 2 * pad > n {
        return Err(ReconstructError::BadPad);
    }
    c.validate_sizes().map_err(|_| ReconstructError::BadShape)?;
    let w = cumulative_weights(c);
    for l in 1..=n {
        if w[l - 1] != w[n - l] {
            return Err(ReconstructError::BadShape);
        }
    }
    let sigma = sigma_from_weights(&w, n).map_err(|_| ReconstructError::BadShape)?;
    let h = n.div_ceil(2);
    let wt = w[0];

    let mut solver = Solver {
        c,
        n,
        h,
        wt,
        sigma: &sigma,
        bits: vec![0u8; n],
        a: Vec::with_capacity(h + 1),
        b: Vec::with_capacity(h + 1),
        scratch: vec![0i64; (wt + 1) as usize],
        touched: Vec::new(),
        budget: 8 * (n + 16),
    };
    solver.a.push(0);
    solver.b.push(0);

    // Pad pairs are forced: the left bit is 0, so the right bit is sigma.
    for j in 1..=pad {
        let s = sigma[j - 1];
        if s > 1 {
            return Err(ReconstructError::Mismatch);
        }
        solver.bits[j - 1] = 0;
        solver.bits[n - j] = s;
        solver.a.push(0);
        let b_prev = *solver.b.last().unwrap();
        solver.b.push(b_prev + s as u64);
    }

    match solver.solve(pad + 1)? {
        true => Ok(BitString::new(solver.bits).expect("n >= 1")),
        false => Err(ReconstructError::Mismatch),
    }
}

struct Solver<'a> {
    c: &'a CompositionMultiset,
    n: usize,
    h: usize,
    wt: u64,
    sigma: &'a [u8],
    bits: Vec<u8>,
    /// `a[j]` = ones among `s_1..s_j`, `b[j]` = ones among the last `j` bits.
    a: Vec<u64>,
    b: Vec<u64>,
    scratch: Vec<i64>,
    touched: Vec<usize>,
    budget: usize,
}

impl Solver<'_> {
    /// Depth-first peeling from pair `j`; `Ok(true)` fills `bits`.
    fn solve(&mut self, j: usize) -> Result<bool, ReconstructError> {
        if self.budget == 0 {
            return Err(ReconstructError::BudgetExhausted);
        }
        self.budget -= 1;
        if j > self.h {
            let candidate = BitString::new(self.bits.clone()).expect("n >= 1");
            return Ok(composition_multiset(&candidate) == *self.c);
        }
        let s = self.sigma[j - 1];
        if j == self.n + 1 - j {
            // Odd middle: the bit is sigma itself.
            self.bits[j - 1] = s;
            return self.solve(j + 1);
        }
        let residual = match self.class_residual(j) {
            Some(r) => r,
            None => return Ok(false),
        };
        let candidates: &[(u8, u8)] = match s {
            0 => &[(0, 0)],
            2 => &[(1, 1)],
            _ => &[(0, 1), (1, 0)],
        };
        for &(left, right) in candidates {
            let a_next = self.a[j - 1] + left as u64;
            let b_next = self.b[j - 1] + right as u64;
            let (pa, pb) = match (self.wt.checked_sub(b_next), self.wt.checked_sub(a_next)) {
                (Some(pa), Some(pb)) => (pa, pb),
                _ => continue,
            };
            let predicted = if pa <= pb { (pa, pb) } else { (pb, pa) };
            if predicted != residual {
                continue;
            }
            self.bits[j - 1] = left;
            self.bits[self.n - j] = right;
            self.a.push(a_next);
            self.b.push(b_next);
            if self.solve(j + 1)? {
                return Ok(true);
            }
            self.a.pop();
            self.b.pop();
        }
        Ok(false)
    }

    /// Ones-counts of class `n - j` with the `j - 1` already determined
    /// substring weights removed; the two survivors are returned sorted.
    /// `None` when the class is inconsistent with the known boundary.
    fn class_residual(&mut self, j: usize) -> Option<(u64, u64)> {
        let class_len = self.n - j;
        let mut ok = true;
        for (comp, count) in self.c.class(class_len) {
            let ones = comp.ones as usize;
            if ones >= self.scratch.len() {
                ok = false;
                break;
            }
            if self.scratch[ones] == 0 {
                self.touched.push(ones);
            }
            self.scratch[ones] += count as i64;
        }
        if ok {
            for p in 2..=j {
                let known = self.a[p - 1] + self.b[j + 1 - p];
                let v = match self.wt.checked_sub(known) {
                    Some(v) => v as usize,
                    None => {
                        ok = false;
                        break;
                    }
                };
                if self.scratch[v] == 0 {
                    self.touched.push(v);
                }
                self.scratch[v] -= 1;
            }
        }
        let mut survivors = [0u64; 2];
        let mut found = 0usize;
        if ok {
            for &idx in &self.touched {
                let cnt = self.scratch[idx];
                if cnt < 0 {
                    ok = false;
                    break;
                }
                for _ in 0..cnt {
                    if found == 2 {
                        ok = false;
                        break;
                    }
                    survivors[found] = idx as u64;
                    found += 1;
                }
                if !ok {
                    break;
                }
            }
        }
        for &idx in &self.touched {
            self.scratch[idx] = 0;
        }
        self.touched.clear();
        if !ok || found != 2 {
            return None;
        }
        survivors.sort_unstable();
        Some((survivors[0], survivors[1]))
    }
}
