//! Sparse bivariate polynomials linking strings to their composition multisets.
//!
//! The prefix polynomial of `s` has one term per prefix, `x` counting ones and
//! `y` counting zeros; the multiset polynomial has the multiplicity of
//! `0^z 1^w` as the coefficient of `x^w y^z`. The two satisfy
//!
//! `P_s(x, y) * P_s(1/x, 1/y) = (n + 1) + S_s(x, y) + S_s(1/x, 1/y)`
//!
//! because each ordered pair of distinct prefixes isolates one substring, and
//! equal prefixes contribute the constant. Everything downstream (pinning,
//! error recovery) is this identity evaluated at powers of a primitive element.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::composition::{BitString, CompositionMultiset};
use crate::field::{FieldError, PrimeField};

/// Polynomial in `x`, `y` with integer coefficients and exponents `>= 0`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct BivPoly {
    /// `(x_exp, y_exp) -> coefficient`, zero coefficients never stored.
    terms: BTreeMap<(u32, u32), i64>,
}

impl BivPoly {
    pub fn from_terms(terms: impl IntoIterator<Item = ((u32, u32), i64)>) -> BivPoly {
        let mut map = BTreeMap::new();
        for (e, c) in terms {
            if c != 0 {
                *map.entry(e).or_insert(0) += c;
            }
        }
        map.retain(|_, c| *c != 0);
        BivPoly { terms: map }
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), i64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, x_exp: u32, y_exp: u32) -> i64 {
        self.terms.get(&(x_exp, y_exp)).copied().unwrap_or(0)
    }

    /// Sum of all coefficients.
    pub fn total_mass(&self) -> i64 {
        self.terms.values().sum()
    }

    /// `(deg_x, deg_y)`: per-variable maxima over the support.
    pub fn degrees(&self) -> (u32, u32) {
        let dx = self.terms.keys().map(|&(i, _)| i).max().unwrap_or(0);
        let dy = self.terms.keys().map(|&(_, j)| j).max().unwrap_or(0);
        (dx, dy)
    }

    /// Evaluates at a field point.
    pub fn eval(&self, f: &PrimeField, x0: u64, y0: u64) -> u64 {
        let mut acc = 0u64;
        for (&(i, j), &c) in &self.terms {
            let xi = f.pow(x0, i as i64).unwrap_or(0);
            let yj = f.pow(y0, j as i64).unwrap_or(0);
            let c = c.rem_euclid(f.q() as i64) as u64;
            acc = f.add(acc, f.mul(c, f.mul(xi, yj)));
        }
        acc
    }

    /// `x0^d_x * y0^d_y * p(1/x0, 1/y0)`: the reciprocal form taken with
    /// explicit degree bounds, evaluated at a nonzero point.
    pub fn reciprocal_eval(
        &self,
        f: &PrimeField,
        x0: u64,
        y0: u64,
        d_x: u32,
        d_y: u32,
    ) -> Result<u64, FieldError> {
        if x0 == 0 || y0 == 0 {
            return Err(FieldError::Zero);
        }
        let mut acc = 0u64;
        for (&(i, j), &c) in &self.terms {
            debug_assert!(i <= d_x && j <= d_y);
            let xi = f.pow(x0, d_x as i64 - i as i64)?;
            let yj = f.pow(y0, d_y as i64 - j as i64)?;
            let c = c.rem_euclid(f.q() as i64) as u64;
            acc = f.add(acc, f.mul(c, f.mul(xi, yj)));
        }
        Ok(acc)
    }
}

impl fmt::Display for BivPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut sorted: Vec<_> = self.terms.iter().collect();
        sorted.sort_by_key(|&(&(i, j), _)| (i + j, core::cmp::Reverse(i)));
        for (idx, (&(i, j), &c)) in sorted.iter().enumerate() {
            let mag = c.unsigned_abs();
            if idx == 0 {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else if c < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if mag != 1 || (i, j) == (0, 0) {
                write!(f, "{mag}")?;
            }
            let mut vars: Vec<String> = Vec::new();
            match i {
                0 => {}
                1 => vars.push(String::from("x")),
                _ => vars.push(alloc::format!("x^{i}")),
            }
            match j {
                0 => {}
                1 => vars.push(String::from("y")),
                _ => vars.push(alloc::format!("y^{j}")),
            }
            write!(f, "{}", vars.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for BivPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BivPoly({self})")
    }
}

/// Prefix polynomial: one term per prefix of `s`, the empty prefix giving 1.
pub fn prefix_poly(s: &BitString) -> BivPoly {
    let mut terms = BTreeMap::new();
    let (mut ones, mut zeros) = (0u32, 0u32);
    terms.insert((0, 0), 1);
    for &b in s.bits() {
        if b == 1 {
            ones += 1;
        } else {
            zeros += 1;
        }
        *terms.entry((ones, zeros)).or_insert(0) += 1;
    }
    BivPoly { terms }
}

/// Multiset polynomial: multiplicity of `0^z 1^w` as coefficient of `x^w y^z`.
pub fn multiset_poly(c: &CompositionMultiset) -> BivPoly {
    let mut terms = BTreeMap::new();
    for l in 1..=c.n() {
        for (comp, count) in c.class(l) {
            *terms.entry((comp.ones, comp.zeros)).or_insert(0) += count as i64;
        }
    }
    BivPoly { terms }
}

/// Laurent polynomial kept with nonnegative keys plus an explicit shift:
/// the stored key `(i, j)` stands for the monomial `x^(i - shift.0) * y^(j - shift.1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftedPoly {
    pub shift: (i64, i64),
    pub terms: BTreeMap<(u32, u32), i64>,
}

impl ShiftedPoly {
    pub fn zero() -> ShiftedPoly {
        ShiftedPoly { shift: (0, 0), terms: BTreeMap::new() }
    }

    /// Terms with their true signed exponents.
    pub fn signed_terms(&self) -> impl Iterator<Item = ((i64, i64), i64)> + '_ {
        self.terms
            .iter()
            .map(move |(&(i, j), &c)| ((i as i64 - self.shift.0, j as i64 - self.shift.1), c))
    }
}

/// Checks the product identity exactly over the integers.
///
/// Both sides are expanded as Laurent polynomials normalized by the common
/// shift `(wt(s), n - wt(s))`, then compared term by term.
pub fn verify_identity(s: &BitString) -> bool {
    let n = s.len() as i64;
    let p = prefix_poly(s);
    let prefixes: Vec<(i64, i64)> = p
        .terms()
        .flat_map(|((i, j), c)| core::iter::repeat((i as i64, j as i64)).take(c as usize))
        .collect();
    let d_x = s.weight() as i64;
    let d_y = n - d_x;

    // Left side: P(x, y) * P(1/x, 1/y), exponents shifted by (d_x, d_y).
    let mut lhs: BTreeMap<(u32, u32), i64> = BTreeMap::new();
    for &(ai, zi) in &prefixes {
        for &(aj, zj) in &prefixes {
            let key = ((ai - aj + d_x) as u32, (zi - zj + d_y) as u32);
            *lhs.entry(key).or_insert(0) += 1;
        }
    }

    // Right side: (n + 1) + S(x, y) + S(1/x, 1/y), same shift.
    let s_poly = multiset_poly(&crate::composition::composition_multiset(s));
    let mut rhs: BTreeMap<(u32, u32), i64> = BTreeMap::new();
    *rhs.entry((d_x as u32, d_y as u32)).or_insert(0) += n + 1;
    for ((w, z), c) in s_poly.terms() {
        *rhs.entry(((w as i64 + d_x) as u32, (z as i64 + d_y) as u32))
            .or_insert(0) += c;
        *rhs.entry(((d_x - w as i64) as u32, (d_y - z as i64) as u32))
            .or_insert(0) += c;
    }

    lhs.retain(|_, c| *c != 0);
    rhs.retain(|_, c| *c != 0);
    lhs == rhs
}
