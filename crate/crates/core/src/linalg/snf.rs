use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntMatrix;

/// `u * a * v = d` with `u`, `v` unimodular and `d` in Smith normal form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithCertificate {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithCertificate {
    /// Full diagonal of `d`, zeros included.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d[(i, i)].clone())
            .collect()
    }

    /// Nonzero diagonal entries, in divisibility order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.diagonal()
            .into_iter()
            .filter(|x| !x.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }

    /// Checks every certificate invariant against the input `a`.
    pub fn verify(&self, a: &IntMatrix) -> bool {
        let Ok(ua) = self.u.checked_mul(a) else {
            return false;
        };
        let Ok(uav) = ua.checked_mul(&self.v) else {
            return false;
        };
        uav == self.d && self.u.is_unimodular() && self.v.is_unimodular() && is_smith(&self.d)
    }
}

/// Diagonal, nonnegative, and each diagonal entry divides the next (zeros trail).
pub fn is_smith(d: &IntMatrix) -> bool {
    for i in 0..d.rows() {
        for j in 0..d.cols() {
            if i != j && !d[(i, j)].is_zero() {
                return false;
            }
        }
    }
    let diag: Vec<&BigInt> = (0..d.rows().min(d.cols())).map(|i| &d[(i, i)]).collect();
    if diag.iter().any(|x| x.is_negative()) {
        return false;
    }
    diag.windows(2).all(|w| {
        if w[0].is_zero() {
            w[1].is_zero()
        } else {
            (w[1] % w[0]).is_zero()
        }
    })
}

/// Smith normal form with certificate.
///
/// Pivots are the smallest nonzero absolute value in the active submatrix,
/// ties broken by lowest `(row, col)`, so the output is deterministic.
pub fn snf(a: &IntMatrix) -> SmithCertificate {
    let (rows, cols) = (a.rows(), a.cols());
    let mut d = a.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    'outer: for k in 0..rows.min(cols) {
        loop {
            let Some((pi, pj)) = smallest_in_block(&d, k) else {
                break 'outer;
            };
            d.swap_rows(k, pi);
            u.swap_rows(k, pi);
            d.swap_cols(k, pj);
            v.swap_cols(k, pj);

            let mut clean = true;
            for i in k + 1..rows {
                if d[(i, k)].is_zero() {
                    continue;
                }
                let q = -d[(i, k)].div_floor(&d[(k, k)]);
                d.add_row_multiple(i, k, &q);
                u.add_row_multiple(i, k, &q);
                clean &= d[(i, k)].is_zero();
            }
            for j in k + 1..cols {
                if d[(k, j)].is_zero() {
                    continue;
                }
                let q = -d[(k, j)].div_floor(&d[(k, k)]);
                d.add_col_multiple(j, k, &q);
                v.add_col_multiple(j, k, &q);
                clean &= d[(k, j)].is_zero();
            }
            if !clean {
                continue;
            }

            // Pivot must divide the rest of the block; otherwise fold the offending row in.
            let offending = (k + 1..rows)
                .find(|&i| (k + 1..cols).any(|j| !(&d[(i, j)] % &d[(k, k)]).is_zero()));
            match offending {
                Some(i) => {
                    d.add_row_multiple(k, i, &BigInt::one());
                    u.add_row_multiple(k, i, &BigInt::one());
                }
                None => break,
            }
        }
        if d[(k, k)].is_negative() {
            d.negate_row(k);
            u.negate_row(k);
        }
    }

    SmithCertificate { u, d, v }
}

fn smallest_in_block(m: &IntMatrix, k: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for i in k..m.rows() {
        for j in k..m.cols() {
            let x = &m[(i, j)];
            if x.is_zero() {
                continue;
            }
            let a = x.abs();
            if best.as_ref().is_none_or(|(_, _, b)| a < *b) {
                best = Some((i, j, a));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag(c: &SmithCertificate) -> Vec<i64> {
        c.diagonal()
            .iter()
            .map(|x| i64::try_from(x).unwrap())
            .collect()
    }

    #[test]
    fn o2_matrix_has_unit_factors() {
        let a = IntMatrix::from_rows(&[vec![0, -1], vec![-1, 0]]);
        let c = snf(&a);
        assert!(c.verify(&a));
        assert_eq!(diag(&c), vec![1, 1]);
    }

    #[test]
    fn gcd_lcm_of_diagonal() {
        let a = IntMatrix::from_rows(&[vec![6, 0], vec![0, 4]]);
        let c = snf(&a);
        assert!(c.verify(&a));
        assert_eq!(diag(&c), vec![2, 12]);
    }

    #[test]
    fn zero_matrix() {
        let a = IntMatrix::zeros(3, 3);
        let c = snf(&a);
        assert!(c.verify(&a));
        assert!(c.d.is_zero());
        assert_eq!(c.rank(), 0);
    }

    #[test]
    fn empty_matrices_get_identity_certificates() {
        let a = IntMatrix::zeros(2, 0);
        let c = snf(&a);
        assert_eq!(c.u, IntMatrix::identity(2));
        assert_eq!(c.v.rows(), 0);
        assert!(c.verify(&a));
    }

    #[test]
    fn rectangular() {
        let a = IntMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        let c = snf(&a);
        assert!(c.verify(&a));
        assert_eq!(diag(&c), vec![2, 6, 12]);
        let b = IntMatrix::from_rows(&[vec![1, 2, 3, 4], vec![2, 4, 6, 8]]);
        let c = snf(&b);
        assert!(c.verify(&b));
        assert_eq!(diag(&c), vec![1, 0]);
    }
}
