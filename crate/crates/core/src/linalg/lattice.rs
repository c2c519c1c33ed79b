//! Kernels, cokernels and linear systems over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::group::FgAbelianGroup;
use super::hnf::hermite;
use super::snf::snf;
use super::IntMatrix;
use crate::error::LinalgError;

/// Columns form a ℤ-basis of `{x : m x = 0}`.
///
/// The basis is saturated (it spans the whole integer kernel) and is returned
/// as the transpose of a row Hermite form, so it is unique for a given `m`.
pub fn kernel_basis(m: &IntMatrix) -> IntMatrix {
    let f = hermite(&m.transpose());
    let n = m.cols();
    let r = f.rank();
    let mut rows = Vec::with_capacity(n - r);
    for i in r..n {
        rows.push(f.u.row(i).to_vec());
    }
    if rows.is_empty() {
        return IntMatrix::zeros(n, 0);
    }
    let k = IntMatrix::new(rows.len(), n, rows.concat()).expect("rows have length n");
    hermite(&k).h.transpose()
}

pub fn rank(m: &IntMatrix) -> usize {
    hermite(m).rank()
}

/// Cokernel of `m : ℤ^cols → ℤ^rows`.
pub fn cokernel_invariants(m: &IntMatrix) -> FgAbelianGroup {
    let cert = snf(m);
    let factors = cert.invariant_factors();
    FgAbelianGroup::from_invariant_factors(m.rows() - factors.len(), factors)
}

/// Some integer `x` with `m x = b`, or `None` when none exists.
///
/// Works from the row Hermite form `H = U mᵀ`: writing `x = Uᵀ y` turns the
/// system into `Hᵀ y = b`, which is echelon and solved by forward substitution.
/// A failed division or a nonzero residual certifies there is no solution.
pub fn solve_linear(m: &IntMatrix, b: &[BigInt]) -> Result<Option<Vec<BigInt>>, LinalgError> {
    if b.len() != m.rows() {
        return Err(LinalgError::DimensionMismatch {
            expected: m.rows(),
            got: b.len(),
        });
    }
    let f = hermite(&m.transpose());
    let mut residual = b.to_vec();
    let mut y = vec![BigInt::zero(); m.cols()];
    for (i, &p) in f.pivots.iter().enumerate() {
        let pivot = &f.h[(i, p)];
        let (q, r) = residual[p].div_rem(pivot);
        if !r.is_zero() {
            return Ok(None);
        }
        for (c, res) in residual.iter_mut().enumerate().skip(p) {
            let h = &f.h[(i, c)];
            if !h.is_zero() {
                *res -= &q * h;
            }
        }
        y[i] = q;
    }
    if residual.iter().any(|x| !x.is_zero()) {
        return Ok(None);
    }
    let x = f.u.transpose().mul_vec(&y)?;
    Ok(Some(x))
}

/// Whether `x` lies in the lattice spanned by the columns of `basis`.
pub fn lattice_contains(basis: &IntMatrix, x: &[BigInt]) -> Result<bool, LinalgError> {
    Ok(solve_linear(basis, x)?.is_some())
}

/// Whether the column lattices of `a` and `b` coincide.
pub fn same_lattice(a: &IntMatrix, b: &IntMatrix) -> Result<bool, LinalgError> {
    if a.rows() != b.rows() {
        return Err(LinalgError::DimensionMismatch {
            expected: a.rows(),
            got: b.rows(),
        });
    }
    for c in b.columns() {
        if !lattice_contains(a, &c)? {
            return Ok(false);
        }
    }
    for c in a.columns() {
        if !lattice_contains(b, &c)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Unit vector of length `n`.
pub fn unit_vector(n: usize, i: usize) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); n];
    v[i] = BigInt::one();
    v
}
