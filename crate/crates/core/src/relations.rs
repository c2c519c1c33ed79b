//! The product relation `∏ S_x S_x* ∏ (1 - S_y S_y*) = Σ_j A(X,Y,j) S_j S_j*`
//! in the commutative function model, and the subring lemma checked by brute
//! force on small index sets.

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::epseq::{alignment, EpSeq};
use crate::error::{Error, Result};
use crate::linalg::{same_lattice, IntMatrix};
use crate::presentation::{FiniteMatrix, InfinitePresentation, MatrixPresentation};

/// `j ↦ ∏_{x∈X} A(x,j) ∏_{y∈Y} (1 - A(y,j))`, evaluated pointwise.
pub fn ck_coefficient(p: &InfinitePresentation, xs: &[usize], ys: &[usize]) -> Result<EpSeq> {
    let rows: Vec<&EpSeq> = xs.iter().chain(ys).map(|&i| p.row(i)).collect();
    let al = alignment(rows.iter().copied(), p.period_limit())?;
    Ok(EpSeq::from_fn(al, |j| {
        let on = xs.iter().all(|&x| p.entry(x, j)) && ys.iter().all(|&y| !p.entry(y, j));
        BigInt::from(u8::from(on))
    })?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationCheck {
    pub applicable: bool,
    pub holds: bool,
    pub support: Vec<usize>,
}

/// When the coefficient is finitely supported, compares
/// `∏ ρ_x ∏ (1 - ρ_y)` (ring arithmetic) against `Σ_{j ∈ support} δ_j`.
pub fn verify_relation_iv(
    p: &InfinitePresentation,
    xs: &[usize],
    ys: &[usize],
) -> Result<RelationCheck> {
    let coeff = ck_coefficient(p, xs, ys)?;
    let Some(support) = coeff.finite_support_data().support else {
        return Ok(RelationCheck {
            applicable: false,
            holds: false,
            support: Vec::new(),
        });
    };
    let limit = p.period_limit();
    let mut lhs = EpSeq::one();
    for &x in xs {
        lhs = lhs.multiply_with_limit(p.row(x), limit)?;
    }
    for &y in ys {
        lhs = lhs.multiply_with_limit(&EpSeq::one().sub_with_limit(p.row(y), limit)?, limit)?;
    }
    let mut rhs = EpSeq::zero();
    for &j in &support {
        rhs = rhs.add_with_limit(&EpSeq::delta(j), limit)?;
    }
    Ok(RelationCheck {
        applicable: true,
        holds: lhs == rhs,
        support,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationInstance {
    pub x: Vec<usize>,
    pub y: Vec<usize>,
    pub check: RelationCheck,
}

/// Applicable `(X, Y)` pairs built from one representative row per class,
/// with `|X| + |Y| ≤ size_bound`. Repeated classes add nothing since rows
/// are idempotent, so this covers every finite pair up to class equivalence.
pub fn enumerate_relation_instances(
    p: &InfinitePresentation,
    size_bound: usize,
) -> Result<Vec<RelationInstance>> {
    let m = p.num_classes();
    let reps: Vec<usize> = (0..m).map(|k| p.representative(k)).collect();
    let pick = |mask: usize| -> Vec<usize> {
        (0..m)
            .filter(|k| mask >> k & 1 == 1)
            .map(|k| reps[k])
            .collect()
    };
    let mut out = Vec::new();
    for xm in 0..1usize << m {
        for ym in 0..1usize << m {
            if xm == 0 && ym == 0 {
                continue;
            }
            if (xm.count_ones() + ym.count_ones()) as usize > size_bound {
                continue;
            }
            let (x, y) = (pick(xm), pick(ym));
            let check = verify_relation_iv(p, &x, &y)?;
            if check.applicable {
                out.push(RelationInstance { x, y, check });
            }
        }
    }
    Ok(out)
}

/// Finite counterpart of [`verify_relation_iv`]; every coefficient is
/// finitely supported, so every pair applies.
pub fn verify_relation_iv_finite(m: &FiniteMatrix, xs: &[usize], ys: &[usize]) -> RelationCheck {
    let n = m.size();
    let mut lhs = vec![1i64; n];
    for &x in xs {
        for (l, &a) in lhs.iter_mut().zip(&m.rows()[x]) {
            *l *= i64::from(a);
        }
    }
    for &y in ys {
        for (l, &a) in lhs.iter_mut().zip(&m.rows()[y]) {
            *l *= 1 - i64::from(a);
        }
    }
    let support: Vec<usize> = (0..n)
        .filter(|&j| xs.iter().all(|&x| m.entry(x, j)) && ys.iter().all(|&y| !m.entry(y, j)))
        .collect();
    let rhs: Vec<i64> = (0..n).map(|j| i64::from(support.contains(&j))).collect();
    RelationCheck {
        applicable: true,
        holds: lhs == rhs,
        support,
    }
}

/// Most distinct rows [`relation_instances`] will enumerate over.
pub const MAX_ENUMERATED_CLASSES: usize = 10;

/// Relation instances for either kind of presentation.
pub fn relation_instances(
    p: &MatrixPresentation,
    size_bound: usize,
) -> Result<Vec<RelationInstance>> {
    match p {
        MatrixPresentation::Infinite(p) => enumerate_relation_instances(p, size_bound),
        MatrixPresentation::Finite(m) => {
            let mut reps: Vec<usize> = Vec::new();
            for i in 0..m.size() {
                if !reps.iter().any(|&r| m.rows()[r] == m.rows()[i]) {
                    reps.push(i);
                }
            }
            if reps.len() > MAX_ENUMERATED_CLASSES {
                return Err(Error::Guard(format!(
                    "{} distinct rows exceed the enumeration limit {MAX_ENUMERATED_CLASSES}",
                    reps.len()
                )));
            }
            let k = reps.len();
            let pick = |mask: usize| -> Vec<usize> {
                (0..k)
                    .filter(|b| mask >> b & 1 == 1)
                    .map(|b| reps[b])
                    .collect()
            };
            let mut out = Vec::new();
            for xm in 0..1usize << k {
                for ym in 0..1usize << k {
                    let size = (xm.count_ones() + ym.count_ones()) as usize;
                    if size == 0 || size > size_bound {
                        continue;
                    }
                    let (x, y) = (pick(xm), pick(ym));
                    let check = verify_relation_iv_finite(m, &x, &y);
                    out.push(RelationInstance { x, y, check });
                }
            }
            Ok(out)
        }
    }
}

/// Largest index set accepted by [`verify_subring_lemma`].
pub const SUBRING_MAX_INDICES: usize = 12;
/// Largest generator count accepted by [`verify_subring_lemma`].
pub const SUBRING_MAX_VECTORS: usize = 6;

/// Checks that the ring generated by 0-1 vectors equals the group of integer
/// vectors constant on the atoms of the generated set algebra and zero off
/// the union of supports.
pub fn verify_subring_lemma(vectors: &[Vec<u8>]) -> Result<bool> {
    let Some(first) = vectors.first() else {
        return Ok(true);
    };
    let n = first.len();
    if vectors.len() > SUBRING_MAX_VECTORS || n > SUBRING_MAX_INDICES {
        return Err(Error::Guard(format!(
            "subring check limited to {SUBRING_MAX_VECTORS} vectors over {SUBRING_MAX_INDICES} indices"
        )));
    }
    if vectors
        .iter()
        .any(|v| v.len() != n || v.iter().any(|&x| x > 1))
    {
        return Err(Error::Invalid(crate::error::ValidationError::Shape {
            location: "vectors".into(),
            message: "expected 0-1 vectors of equal length".into(),
        }));
    }

    // closure under pointwise products
    let mut closed: Vec<Vec<u8>> = Vec::new();
    for v in vectors {
        if !closed.contains(v) {
            closed.push(v.clone());
        }
    }
    loop {
        let mut fresh = Vec::new();
        for a in &closed {
            for b in &closed {
                let prod: Vec<u8> = a.iter().zip(b).map(|(x, y)| x * y).collect();
                if !closed.contains(&prod) && !fresh.contains(&prod) {
                    fresh.push(prod);
                }
            }
        }
        if fresh.is_empty() {
            break;
        }
        closed.extend(fresh);
    }

    let mut atoms: Vec<(Vec<u8>, Vec<usize>)> = Vec::new();
    for i in 0..n {
        let signature: Vec<u8> = vectors.iter().map(|v| v[i]).collect();
        if signature.iter().all(|&s| s == 0) {
            continue;
        }
        match atoms.iter_mut().find(|(s, _)| *s == signature) {
            Some((_, idx)) => idx.push(i),
            None => atoms.push((signature, vec![i])),
        }
    }

    let as_column = |v: &[u8]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
    let span =
        IntMatrix::from_columns(n, &closed.iter().map(|v| as_column(v)).collect::<Vec<_>>())?;
    let atom_cols: Vec<Vec<BigInt>> = atoms
        .iter()
        .map(|(_, idx)| {
            (0..n)
                .map(|i| {
                    if idx.contains(&i) {
                        BigInt::one()
                    } else {
                        BigInt::from(0)
                    }
                })
                .collect()
        })
        .collect();
    let atom_span = IntMatrix::from_columns(n, &atom_cols)?;
    Ok(same_lattice(&span, &atom_span)?)
}
