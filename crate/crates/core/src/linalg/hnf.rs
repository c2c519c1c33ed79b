use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::IntMatrix;

/// Row Hermite normal form `h = u * m` together with its pivot columns.
#[derive(Debug, Clone)]
pub struct HermiteForm {
    pub h: IntMatrix,
    pub u: IntMatrix,
    /// Pivot column of each nonzero row of `h`, strictly increasing.
    pub pivots: Vec<usize>,
}

impl HermiteForm {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Row Hermite normal form with unimodular transform: returns `(H, U)` with `H = U * M`.
pub fn hnf(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let f = hermite(m);
    (f.h, f.u)
}

pub fn hermite(m: &IntMatrix) -> HermiteForm {
    let rows = m.rows();
    let mut h = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut pivots = Vec::new();
    let mut pr = 0;

    for col in 0..m.cols() {
        if pr == rows {
            break;
        }
        let mut found = false;
        while let Some(p) = smallest_in_column(&h, col, pr) {
            found = true;
            h.swap_rows(pr, p);
            u.swap_rows(pr, p);
            let mut clean = true;
            for r in pr + 1..rows {
                if h[(r, col)].is_zero() {
                    continue;
                }
                let q = -h[(r, col)].div_floor(&h[(pr, col)]);
                h.add_row_multiple(r, pr, &q);
                u.add_row_multiple(r, pr, &q);
                if !h[(r, col)].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if !found {
            continue;
        }
        if h[(pr, col)].is_negative() {
            h.negate_row(pr);
            u.negate_row(pr);
        }
        for r in 0..pr {
            let q = -h[(r, col)].div_floor(&h[(pr, col)]);
            h.add_row_multiple(r, pr, &q);
            u.add_row_multiple(r, pr, &q);
        }
        pivots.push(col);
        pr += 1;
    }

    HermiteForm { h, u, pivots }
}

// Smallest nonzero |entry| at or below `from` in `col`; ties go to the lowest row.
fn smallest_in_column(m: &IntMatrix, col: usize, from: usize) -> Option<usize> {
    let mut best: Option<(usize, BigInt)> = None;
    for r in from..m.rows() {
        let v = &m[(r, col)];
        if v.is_zero() {
            continue;
        }
        let a = v.abs();
        if best.as_ref().is_none_or(|(_, b)| a < *b) {
            best = Some((r, a));
        }
    }
    best.map(|(r, _)| r)
}

/// True when `h` is in row Hermite normal form.
pub fn is_hermite(h: &IntMatrix) -> bool {
    let mut last_pivot: Option<usize> = None;
    let mut seen_zero_row = false;
    for r in 0..h.rows() {
        let lead = (0..h.cols()).find(|&c| !h[(r, c)].is_zero());
        match lead {
            None => seen_zero_row = true,
            Some(c) => {
                if seen_zero_row || last_pivot.is_some_and(|p| c <= p) {
                    return false;
                }
                let piv = &h[(r, c)];
                if !piv.is_positive() {
                    return false;
                }
                for above in 0..r {
                    let v = &h[(above, c)];
                    if v.is_negative() || v >= piv {
                        return false;
                    }
                }
                last_pivot = Some(c);
            }
        }
    }
    true
}
