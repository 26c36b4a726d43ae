//! Sparse polynomial recovery from evaluations at consecutive powers of a
//! primitive element.
//!
//! A `T`-sparse polynomial with exponents below the field's multiplicative
//! order is pinned down by its values at `2T + 1` consecutive powers: the
//! value sequence satisfies a linear recurrence of order `T` whose
//! characteristic roots are the per-term geometric ratios. Recovery is
//! Berlekamp-Massey for the recurrence, a root scan over the admissible
//! exponent range, and a transposed Vandermonde solve for the coefficients.
//!
//! The bivariate variant works on a square grid of evaluations, symmetric
//! around exponent zero in both variables: one univariate pass per row pools
//! the `x`-exponents (every term must surface in at least one row, since a
//! sparse nonzero column polynomial cannot vanish on the whole row range),
//! then one univariate pass per pooled exponent recovers its column
//! polynomial in `y`.

use alloc::collections::BTreeMap;
use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::field::PrimeField;

/// Recovery failure. Inputs that do not come from a polynomial within the
/// promised sparsity and exponent ranges land on one of these.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SparseError {
    /// The samples need a recurrence longer than the sparsity budget.
    SparsityExceeded,
    /// A recurrence root is not a power of alpha within the exponent bound.
    RootNotInRange,
    /// A candidate polynomial was found but fails to reproduce every sample.
    Inconsistent,
}

impl fmt::Display for SparseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SparseError::SparsityExceeded => write!(f, "sparsity budget exceeded"),
            SparseError::RootNotInRange => {
                write!(f, "recurrence root outside the admissible exponent range")
            }
            SparseError::Inconsistent => write!(f, "recovered polynomial fails re-evaluation"),
        }
    }
}

/// Minimal LFSR for `s`: returns `(order, c)` with `c[0] = 1` such that
/// `sum_k c[k] * s[i - k] = 0` for all `i >= order`.
fn berlekamp_massey(f: &PrimeField, s: &[u64]) -> (usize, Vec<u64>) {
    let mut c = vec![1u64];
    let mut b = vec![1u64];
    let mut l = 0usize;
    let mut m = 1usize;
    let mut last_d = 1u64;
    for n in 0..s.len() {
        let mut d = s[n];
        for k in 1..=l.min(c.len() - 1) {
            d = f.add(d, f.mul(c[k], s[n - k]));
        }
        if d == 0 {
            m += 1;
            continue;
        }
        let coef = f.mul(d, f.inv(last_d).expect("nonzero discrepancy"));
        if 2 * l <= n {
            let snapshot = c.clone();
            if c.len() < b.len() + m {
                c.resize(b.len() + m, 0);
            }
            for k in 0..b.len() {
                c[k + m] = f.sub(c[k + m], f.mul(coef, b[k]));
            }
            l = n + 1 - l;
            b = snapshot;
            last_d = d;
            m = 1;
        } else {
            if c.len() < b.len() + m {
                c.resize(b.len() + m, 0);
            }
            for k in 0..b.len() {
                c[k + m] = f.sub(c[k + m], f.mul(coef, b[k]));
            }
            m += 1;
        }
    }
    c.truncate(l + 1);
    (l, c)
}

fn poly_eval(f: &PrimeField, c: &[u64], x: u64) -> u64 {
    let mut acc = 0u64;
    for &ck in c.iter().rev() {
        acc = f.add(f.mul(acc, x), ck);
    }
    acc
}

/// Exponents `e` in `0..=exp_bound` with `C(alpha^-e) = 0`, i.e. the
/// recurrence's characteristic roots that are admissible powers of alpha.
fn locate_exponents(f: &PrimeField, c: &[u64], exp_bound: u32) -> Vec<u32> {
    let mut found = Vec::new();
    for e in 0..=exp_bound {
        if poly_eval(f, c, f.alpha_pow(-(e as i64))) == 0 {
            found.push(e);
        }
    }
    found
}

/// Solves `sum_m coeffs[m] * nodes[m]^k = rhs[k]` for `k = 0..nodes.len()`.
/// The nodes are distinct, so the system is invertible.
fn solve_transposed_vandermonde(f: &PrimeField, nodes: &[u64], rhs: &[u64]) -> Vec<u64> {
    let m = nodes.len();
    debug_assert!(rhs.len() >= m);
    let mut a = vec![vec![0u64; m + 1]; m];
    let mut pow = vec![1u64; m];
    for (k, row) in a.iter_mut().enumerate() {
        for j in 0..m {
            row[j] = pow[j];
            pow[j] = f.mul(pow[j], nodes[j]);
        }
        row[m] = rhs[k];
    }
    // Gaussian elimination; matrices here are tiny (a few dozen rows at most).
    for col in 0..m {
        let pivot = (col..m)
            .find(|&r| a[r][col] != 0)
            .expect("transposed Vandermonde is nonsingular");
        a.swap(col, pivot);
        let inv = f.inv(a[col][col]).expect("pivot nonzero");
        for j in col..=m {
            a[col][j] = f.mul(a[col][j], inv);
        }
        for r in 0..m {
            if r != col && a[r][col] != 0 {
                let factor = a[r][col];
                for j in col..=m {
                    a[r][j] = f.sub(a[r][j], f.mul(factor, a[col][j]));
                }
            }
        }
    }
    (0..m).map(|r| a[r][m]).collect()
}

/// Recovers a sparse univariate polynomial from `samples[k] = p(alpha^k)`.
///
/// Needs `samples.len() >= 2 * sparsity + 1` and all exponents of `p` in
/// `0..=exp_bound` with `exp_bound` below the multiplicative order of alpha.
/// Returns `(exponent, coefficient)` pairs sorted by exponent.
pub fn recover_sparse(
    f: &PrimeField,
    samples: &[u64],
    sparsity: usize,
    exp_bound: u32,
) -> Result<Vec<(u32, u64)>, SparseError> {
    assert!(
        samples.len() >= 2 * sparsity + 1,
        "need 2T + 1 samples for sparsity T"
    );
    assert!(
        (exp_bound as u64) < f.q() - 1,
        "exponent bound must stay below the order of alpha"
    );
    let (order, conn) = berlekamp_massey(f, samples);
    if order > sparsity {
        return Err(SparseError::SparsityExceeded);
    }
    let exps = locate_exponents(f, &conn, exp_bound);
    if exps.len() != order {
        return Err(SparseError::RootNotInRange);
    }
    let nodes: Vec<u64> = exps.iter().map(|&e| f.alpha_pow(e as i64)).collect();
    let coeffs = if order == 0 {
        Vec::new()
    } else {
        solve_transposed_vandermonde(f, &nodes, &samples[..order])
    };
    // The recurrence plus the solve already force agreement in exact
    // arithmetic; re-evaluating every sample guards the implementation.
    let mut pow = vec![1u64; nodes.len()];
    for &sv in samples {
        let mut acc = 0u64;
        for m in 0..nodes.len() {
            acc = f.add(acc, f.mul(coeffs[m], pow[m]));
            pow[m] = f.mul(pow[m], nodes[m]);
        }
        if acc != sv {
            return Err(SparseError::Inconsistent);
        }
    }
    Ok(exps
        .into_iter()
        .zip(coeffs)
        .filter(|&(_, c)| c != 0)
        .collect())
}

/// Square grid of evaluations `values[l2 + radius][l1 + radius] =
/// g(alpha^l1, alpha^l2)` for `l1, l2` in `-radius..=radius`.
#[derive(Clone, Debug)]
pub struct GridSamples {
    pub radius: u32,
    pub values: Vec<Vec<u64>>,
}

impl GridSamples {
    pub fn size(&self) -> usize {
        2 * self.radius as usize + 1
    }

    pub fn at(&self, l1: i64, l2: i64) -> u64 {
        let r = self.radius as i64;
        self.values[(l2 + r) as usize][(l1 + r) as usize]
    }

    /// Checks the expected `(2 * radius + 1)^2 ` shape.
    pub fn well_formed(&self) -> bool {
        let w = self.size();
        self.values.len() == w && self.values.iter().all(|row| row.len() == w)
    }
}

/// Recovers a sparse bivariate polynomial from its grid of evaluations.
///
/// `sparsity` bounds the total number of terms; per-variable exponents must
/// lie in `0..=exp_bound_x` and `0..=exp_bound_y`. The grid must satisfy
/// `2 * radius + 1 >= 2 * sparsity + 1`. Returns `(x_exp, y_exp) ->
/// coefficient` with no zero coefficients.
pub fn recover_error_poly(
    f: &PrimeField,
    grid: &GridSamples,
    sparsity: usize,
    exp_bound_x: u32,
    exp_bound_y: u32,
) -> Result<BTreeMap<(u32, u32), u64>, SparseError> {
    assert!(grid.well_formed(), "grid must be square and symmetric");
    assert!(
        grid.radius as usize >= sparsity,
        "grid radius too small for the sparsity budget"
    );
    let radius = grid.radius as i64;

    // Stage 1: pool x-exponents across rows. Each term of the polynomial has
    // a column polynomial in y with at most `sparsity` terms, which cannot
    // vanish at all 2 * radius + 1 powers, so its x-exponent shows up in at
    // least one row.
    let mut xset: BTreeSet<u32> = BTreeSet::new();
    for row in &grid.values {
        let (order, conn) = berlekamp_massey(f, row);
        if order > sparsity {
            return Err(SparseError::SparsityExceeded);
        }
        let exps = locate_exponents(f, &conn, exp_bound_x);
        if exps.len() != order {
            return Err(SparseError::RootNotInRange);
        }
        xset.extend(exps);
    }
    if xset.len() > sparsity {
        return Err(SparseError::SparsityExceeded);
    }
    let xexps: Vec<u32> = xset.into_iter().collect();
    let mut terms: BTreeMap<(u32, u32), u64> = BTreeMap::new();

    if !xexps.is_empty() {
        // Row samples start at l1 = -radius, which scales the coefficient of
        // x^i by alpha^(-i * radius); undo that after each solve.
        let nodes: Vec<u64> = xexps.iter().map(|&e| f.alpha_pow(e as i64)).collect();
        let unscale: Vec<u64> = xexps
            .iter()
            .map(|&e| f.alpha_pow(e as i64 * radius))
            .collect();
        let m = nodes.len();
        let mut columns: Vec<Vec<u64>> = vec![Vec::with_capacity(grid.size()); m];
        for row in &grid.values {
            let solved = solve_transposed_vandermonde(f, &nodes, &row[..m]);
            for (i, c) in solved.into_iter().enumerate() {
                columns[i].push(f.mul(c, unscale[i]));
            }
        }

        // Stage 2: each pooled x-exponent's column sequence is itself a
        // sparse polynomial in y sampled at powers of alpha, with the same
        // -radius start offset.
        for (i, column) in columns.into_iter().enumerate() {
            let recovered = recover_sparse(f, &column, sparsity, exp_bound_y)?;
            for (j, c) in recovered {
                let c = f.mul(c, f.alpha_pow(j as i64 * radius));
                terms.insert((xexps[i], j), c);
            }
        }
    }

    if terms.len() > sparsity {
        return Err(SparseError::SparsityExceeded);
    }

    // Full-grid re-evaluation: the staged solves only consume leading
    // sub-windows, so this pins the result against every sample.
    let width = grid.size();
    let mut acc = vec![vec![0u64; width]; width];
    for (&(i, j), &c) in &terms {
        let bx = f.alpha_pow(i as i64);
        let by = f.alpha_pow(j as i64);
        let mut py = f.alpha_pow(-(j as i64) * radius);
        for row in acc.iter_mut() {
            let mut v = f.mul(c, f.mul(py, f.alpha_pow(-(i as i64) * radius)));
            for cell in row.iter_mut() {
                *cell = f.add(*cell, v);
                v = f.mul(v, bx);
            }
            py = f.mul(py, by);
        }
    }
    for (r, row) in grid.values.iter().enumerate() {
        if acc[r] != *row {
            return Err(SparseError::Inconsistent);
        }
    }
    Ok(terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha12Rng;

    fn sample_univariate(f: &PrimeField, terms: &[(u32, u64)], len: usize) -> Vec<u64> {
        (0..len)
            .map(|k| {
                let mut acc = 0u64;
                for &(e, c) in terms {
                    acc = f.add(acc, f.mul(c, f.alpha_pow(e as i64 * k as i64)));
                }
                acc
            })
            .collect()
    }

    fn sample_grid(f: &PrimeField, terms: &[((u32, u32), u64)], radius: u32) -> GridSamples {
        let r = radius as i64;
        let values = (-r..=r)
            .map(|l2| {
                (-r..=r)
                    .map(|l1| {
                        let mut acc = 0u64;
                        for &((i, j), c) in terms {
                            let p = f.alpha_pow(i as i64 * l1 + j as i64 * l2);
                            acc = f.add(acc, f.mul(c, p));
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        GridSamples { radius, values }
    }

    #[test]
    fn recovers_single_cubic_term() {
        let f = PrimeField::new(13, 2).unwrap();
        // Samples of x^3 at 2^0, 2^1, 2^2.
        assert_eq!(
            recover_sparse(&f, &[1, 8, 12], 1, 11).unwrap(),
            vec![(3, 1)]
        );
    }

    #[test]
    fn zero_samples_give_empty_polynomial() {
        let f = PrimeField::new(13, 2).unwrap();
        assert_eq!(recover_sparse(&f, &[0, 0, 0, 0, 0], 2, 11).unwrap(), vec![]);
    }

    #[test]
    fn exhaustive_two_sparse_over_small_field() {
        let f = PrimeField::new(13, 2).unwrap();
        for e1 in 0..11u32 {
            for e2 in (e1 + 1)..=11 {
                for c1 in [1u64, 5, 12] {
                    for c2 in [1u64, 7, 12] {
                        let terms = vec![(e1, c1), (e2, c2)];
                        let samples = sample_univariate(&f, &terms, 5);
                        assert_eq!(recover_sparse(&f, &samples, 2, 11).unwrap(), terms);
                    }
                }
            }
        }
    }

    #[test]
    fn sparsity_budget_is_enforced() {
        let f = PrimeField::new(13, 2).unwrap();
        let samples = sample_univariate(&f, &[(2, 3), (5, 1)], 5);
        assert_eq!(
            recover_sparse(&f, &samples, 1, 11),
            Err(SparseError::SparsityExceeded)
        );
    }

    #[test]
    fn out_of_range_exponent_is_rejected() {
        let f = PrimeField::new(13, 2).unwrap();
        let samples = sample_univariate(&f, &[(5, 1)], 5);
        assert_eq!(
            recover_sparse(&f, &samples, 2, 3),
            Err(SparseError::RootNotInRange)
        );
    }

    #[test]
    fn random_recoveries_at_working_scale() {
        let n = 64u64;
        let f = PrimeField::find(n);
        let bound = 2 * n as u32;
        let mut rng = ChaCha12Rng::seed_from_u64(23);
        for _ in 0..1000 {
            let t = rng.gen_range(0..=12usize);
            let mut exps = BTreeSet::new();
            while exps.len() < t {
                exps.insert(rng.gen_range(0..=bound));
            }
            let terms: Vec<(u32, u64)> = exps
                .into_iter()
                .map(|e| (e, rng.gen_range(1..f.q())))
                .collect();
            let samples = sample_univariate(&f, &terms, 2 * 12 + 1);
            assert_eq!(recover_sparse(&f, &samples, 12, bound).unwrap(), terms);
        }
    }

    #[test]
    fn recovers_bivariate_difference() {
        // x^2 y^3 - x^5 with the negative coefficient lifted into the field.
        let f = PrimeField::find(8);
        assert_eq!(f.q(), 19);
        let terms = vec![((2, 3), 1u64), ((5, 0), 18u64)];
        let grid = sample_grid(&f, &terms, 4);
        let got = recover_error_poly(&f, &grid, 4, 16, 16).unwrap();
        assert_eq!(got.into_iter().collect::<Vec<_>>(), terms);
    }

    #[test]
    fn random_bivariate_recoveries() {
        let f = PrimeField::find(8);
        let bound = 16u32;
        let mut rng = ChaCha12Rng::seed_from_u64(29);
        for _ in 0..300 {
            let t = rng.gen_range(0..=4usize);
            let mut support = BTreeSet::new();
            while support.len() < t {
                support.insert((rng.gen_range(0..=bound), rng.gen_range(0..=bound)));
            }
            let terms: Vec<((u32, u32), u64)> = support
                .into_iter()
                .map(|e| (e, rng.gen_range(1..f.q())))
                .collect();
            let grid = sample_grid(&f, &terms, 4);
            let got = recover_error_poly(&f, &grid, 4, bound, bound).unwrap();
            assert_eq!(got.into_iter().collect::<Vec<_>>(), terms);
        }
    }

    #[test]
    fn grid_dirt_is_caught() {
        let f = PrimeField::find(8);
        let terms = vec![((2, 3), 1u64), ((5, 0), 18u64)];
        let mut grid = sample_grid(&f, &terms, 4);
        grid.values[0][0] = f.add(grid.values[0][0], 1);
        assert!(recover_error_poly(&f, &grid, 4, 16, 16).is_err());
    }
}
