//! Input matrices: finite 0-1 matrices and eventually periodic presentations
//! of ℕ×ℕ 0-1 matrices.
//!
//! An infinite presentation lists the distinct row patterns `r_0..r_{m-1}` and
//! a classmap `i ↦ k` saying that row `i` equals `r_k`. Rows, columns and
//! truncations are all derived from those two pieces.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::epseq::{alignment, Alignment, EpSeq, DEFAULT_PERIOD_LIMIT};
use crate::error::{Error, Result, ValidationError};
use crate::linalg::IntMatrix;

/// Largest number of distinct row patterns accepted (K₀ has `2^m` generators).
pub const MAX_PATTERNS: usize = 20;

/// Square 0-1 matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteMatrix {
    entries: Vec<Vec<bool>>,
}

impl FiniteMatrix {
    /// Validated matrix: square, nonempty, no zero rows.
    pub fn new(entries: Vec<Vec<bool>>) -> Result<Self> {
        let n = entries.len();
        if n == 0 {
            return Err(shape("matrix", "n must be at least 1"));
        }
        for (i, row) in entries.iter().enumerate() {
            if row.len() != n {
                return Err(shape(
                    &format!("matrix[{i}]"),
                    &format!("expected {n} entries, found {}", row.len()),
                ));
            }
            if !row.iter().any(|&x| x) {
                return Err(ValidationError::ZeroRow {
                    location: format!("matrix[{i}]"),
                }
                .into());
            }
        }
        Ok(FiniteMatrix { entries })
    }

    /// Square matrix that may contain zero rows (truncations, test fixtures).
    pub fn unchecked(entries: Vec<Vec<bool>>) -> Self {
        assert!(entries.iter().all(|r| r.len() == entries.len()));
        FiniteMatrix { entries }
    }

    pub fn from_ints(rows: &[Vec<u8>]) -> Result<Self> {
        Self::new(
            rows.iter()
                .map(|r| r.iter().map(|&x| x != 0).collect())
                .collect(),
        )
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> bool {
        self.entries[i][j]
    }

    pub fn rows(&self) -> &[Vec<bool>] {
        &self.entries
    }

    pub fn has_zero_row(&self) -> bool {
        self.entries.iter().any(|r| !r.iter().any(|&x| x))
    }

    pub fn to_int_matrix(&self) -> IntMatrix {
        let n = self.size();
        let data = self
            .entries
            .iter()
            .flatten()
            .map(|&b| BigInt::from(u8::from(b)))
            .collect();
        IntMatrix::new(n, n, data).expect("square")
    }

    /// `I - Aᵀ`, the matrix of `δᵢ ↦ δᵢ - ρᵢ` in the delta basis.
    pub fn identity_minus_transpose(&self) -> IntMatrix {
        let n = self.size();
        let mut m = IntMatrix::identity(n);
        for i in 0..n {
            for j in 0..n {
                if self.entries[i][j] {
                    m[(j, i)] -= 1;
                }
            }
        }
        m
    }

    pub fn classify(&self) -> Classification {
        let rows = &self.entries;
        let mut edge = true;
        for a in 0..rows.len() {
            for b in a + 1..rows.len() {
                let equal = rows[a] == rows[b];
                let orthogonal = rows[a].iter().zip(&rows[b]).all(|(x, y)| !(*x && *y));
                edge &= equal || orthogonal;
            }
        }
        Classification {
            is_edge_matrix: edge,
            is_row_finite: true,
        }
    }
}

/// Eventually periodic presentation of an ℕ×ℕ 0-1 matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InfinitePresentation {
    patterns: Vec<EpSeq>,
    classmap: EpSeq,
    period_limit: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub is_edge_matrix: bool,
    pub is_row_finite: bool,
}

impl InfinitePresentation {
    /// Validated reduced presentation: distinct nonzero 0-1 patterns, each used.
    pub fn new(patterns: Vec<EpSeq>, classmap: EpSeq) -> Result<Self> {
        Self::build(patterns, classmap, false, DEFAULT_PERIOD_LIMIT)
    }

    /// Like [`InfinitePresentation::new`], but merges duplicate patterns and
    /// drops unused ones instead of rejecting them.
    pub fn reduced(patterns: Vec<EpSeq>, classmap: EpSeq) -> Result<Self> {
        Self::build(patterns, classmap, true, DEFAULT_PERIOD_LIMIT)
    }

    /// Revalidates against a different bound on aligned periods.
    pub fn with_period_limit(self, limit: usize) -> Result<Self> {
        Self::build(self.patterns, self.classmap, false, limit)
    }

    fn build(
        mut patterns: Vec<EpSeq>,
        mut classmap: EpSeq,
        reduce: bool,
        period_limit: usize,
    ) -> Result<Self> {
        let m = patterns.len();
        if m == 0 {
            return Err(shape("patterns", "at least one pattern is required"));
        }
        for (k, p) in patterns.iter().enumerate() {
            if let Some((idx, v)) = first_non_binary(p) {
                return Err(ValidationError::NonBinary {
                    location: format!("patterns[{k}] index {idx}"),
                    value: v.to_string(),
                }
                .into());
            }
        }
        for (idx, v) in classmap
            .prefix()
            .iter()
            .chain(classmap.period())
            .enumerate()
        {
            if v.to_usize().is_none_or(|c| c >= m) {
                let part = if idx < classmap.prefix().len() {
                    format!("classmap.prefix[{idx}]")
                } else {
                    format!("classmap.period[{}]", idx - classmap.prefix().len())
                };
                return Err(ValidationError::ClassOutOfRange {
                    location: part,
                    value: v.to_string(),
                    patterns: m,
                }
                .into());
            }
        }

        if reduce {
            (patterns, classmap) = reduce_patterns(patterns, &classmap)?;
        } else {
            if let Some(k) = patterns.iter().position(EpSeq::is_zero) {
                return Err(ValidationError::ZeroRow {
                    location: format!("patterns[{k}]"),
                }
                .into());
            }
            for a in 0..m {
                for b in a + 1..m {
                    if patterns[a] == patterns[b] {
                        return Err(ValidationError::DuplicatePattern {
                            first: a,
                            second: b,
                        }
                        .into());
                    }
                }
            }
            let used = used_classes(&classmap, m);
            if let Some(k) = used.iter().position(|u| !u) {
                return Err(ValidationError::UnusedPattern(k).into());
            }
        }
        if let Some(k) = patterns.iter().position(EpSeq::is_zero) {
            return Err(ValidationError::ZeroRow {
                location: format!("patterns[{k}]"),
            }
            .into());
        }
        if patterns.len() > MAX_PATTERNS {
            return Err(Error::Guard(format!(
                "{} distinct row patterns exceed the limit of {MAX_PATTERNS}",
                patterns.len()
            )));
        }
        alignment(patterns.iter().chain([&classmap]), period_limit)?;
        Ok(InfinitePresentation {
            patterns,
            classmap,
            period_limit,
        })
    }

    pub fn patterns(&self) -> &[EpSeq] {
        &self.patterns
    }

    pub fn classmap(&self) -> &EpSeq {
        &self.classmap
    }

    pub fn num_classes(&self) -> usize {
        self.patterns.len()
    }

    pub fn period_limit(&self) -> usize {
        self.period_limit
    }

    pub fn class_of(&self, i: usize) -> usize {
        self.classmap
            .eval(i)
            .to_usize()
            .expect("classmap validated")
    }

    /// Row `i` as a function of the column index.
    pub fn row(&self, i: usize) -> &EpSeq {
        &self.patterns[self.class_of(i)]
    }

    pub fn entry(&self, i: usize, j: usize) -> bool {
        self.row(i).eval(j).is_one()
    }

    /// Column `j` as a function of the row index.
    pub fn column(&self, j: usize) -> EpSeq {
        let value = |k: &BigInt| {
            let k = k.to_usize().expect("classmap validated");
            self.patterns[k].eval(j).clone()
        };
        EpSeq::new(
            self.classmap.prefix().iter().map(value).collect(),
            self.classmap.period().iter().map(value).collect(),
        )
        .expect("nonempty period")
    }

    /// Top-left `n × n` corner; may contain zero rows.
    pub fn truncate(&self, n: usize) -> FiniteMatrix {
        FiniteMatrix::unchecked(
            (0..n)
                .map(|i| (0..n).map(|j| self.entry(i, j)).collect())
                .collect(),
        )
    }

    /// First row index in class `k`.
    pub fn representative(&self, k: usize) -> usize {
        let target = BigInt::from(k);
        (0..self.classmap.prefix().len() + self.classmap.period().len())
            .find(|&i| *self.classmap.eval(i) == target)
            .expect("every class is used")
    }

    /// `χ_k(i) = 1 ⟺ classmap(i) = k`.
    pub fn class_indicators(&self) -> Vec<EpSeq> {
        (0..self.num_classes())
            .map(|k| {
                let target = BigInt::from(k);
                let ind = |v: &BigInt| BigInt::from(u8::from(*v == target));
                EpSeq::new(
                    self.classmap.prefix().iter().map(ind).collect(),
                    self.classmap.period().iter().map(ind).collect(),
                )
                .expect("nonempty period")
            })
            .collect()
    }

    /// Common alignment of the row patterns.
    pub fn pattern_alignment(&self) -> Alignment {
        alignment(&self.patterns, self.period_limit).expect("checked at construction")
    }

    /// Common alignment of the row patterns and the classmap.
    pub fn full_alignment(&self) -> Alignment {
        alignment(
            self.patterns.iter().chain([&self.classmap]),
            self.period_limit,
        )
        .expect("checked at construction")
    }

    pub fn classify(&self) -> Result<Classification> {
        let mut edge = true;
        for a in 0..self.patterns.len() {
            for b in a + 1..self.patterns.len() {
                let prod =
                    self.patterns[a].multiply_with_limit(&self.patterns[b], self.period_limit)?;
                edge &= prod.is_zero();
            }
        }
        Ok(Classification {
            is_edge_matrix: edge,
            is_row_finite: self.patterns.iter().all(EpSeq::is_finitely_supported),
        })
    }

    pub fn to_document(&self) -> Document {
        Document::Ep {
            patterns: self.patterns.iter().map(SeqDoc::from_seq).collect(),
            classmap: SeqDoc::from_seq(&self.classmap),
        }
    }
}

fn first_non_binary(s: &EpSeq) -> Option<(usize, &BigInt)> {
    s.prefix()
        .iter()
        .chain(s.period())
        .enumerate()
        .find(|(_, v)| !(v.is_zero() || v.is_one()))
}

fn used_classes(classmap: &EpSeq, m: usize) -> Vec<bool> {
    let mut used = vec![false; m];
    for v in classmap.prefix().iter().chain(classmap.period()) {
        used[v.to_usize().expect("classmap validated")] = true;
    }
    used
}

fn reduce_patterns(patterns: Vec<EpSeq>, classmap: &EpSeq) -> Result<(Vec<EpSeq>, EpSeq)> {
    let used = used_classes(classmap, patterns.len());
    let mut kept: Vec<EpSeq> = Vec::new();
    let mut remap = vec![usize::MAX; patterns.len()];
    for (k, p) in patterns.into_iter().enumerate() {
        if !used[k] {
            continue;
        }
        remap[k] = match kept.iter().position(|q| *q == p) {
            Some(pos) => pos,
            None => {
                kept.push(p);
                kept.len() - 1
            }
        };
    }
    let map = |v: &BigInt| BigInt::from(remap[v.to_usize().expect("classmap validated")]);
    let classmap = EpSeq::new(
        classmap.prefix().iter().map(map).collect(),
        classmap.period().iter().map(map).collect(),
    )?;
    Ok((kept, classmap))
}

fn shape(location: &str, message: &str) -> Error {
    ValidationError::Shape {
        location: location.to_string(),
        message: message.to_string(),
    }
    .into()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatrixPresentation {
    Finite(FiniteMatrix),
    Infinite(InfinitePresentation),
}

impl MatrixPresentation {
    pub fn classify(&self) -> Result<Classification> {
        match self {
            MatrixPresentation::Finite(f) => Ok(f.classify()),
            MatrixPresentation::Infinite(p) => p.classify(),
        }
    }

    pub fn format_name(&self) -> &'static str {
        match self {
            MatrixPresentation::Finite(_) => "finite",
            MatrixPresentation::Infinite(_) => "ep",
        }
    }
}

/// Sequence as written in an input document.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeqDoc {
    pub prefix: Vec<i64>,
    pub period: Vec<i64>,
}

impl SeqDoc {
    fn from_seq(s: &EpSeq) -> Self {
        let small = |v: &[BigInt]| {
            v.iter()
                .map(|x| x.to_i64().expect("0-1 or class index"))
                .collect()
        };
        SeqDoc {
            prefix: small(s.prefix()),
            period: small(s.period()),
        }
    }

    fn to_seq(&self, location: &str) -> Result<EpSeq> {
        if self.period.is_empty() {
            return Err(shape(location, "period must be nonempty"));
        }
        Ok(EpSeq::from_ints(&self.prefix, &self.period)?)
    }
}

/// The JSON input document.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "format", deny_unknown_fields)]
pub enum Document {
    #[serde(rename = "finite")]
    Finite { n: usize, matrix: Vec<Vec<i64>> },
    #[serde(rename = "ep")]
    Ep {
        patterns: Vec<SeqDoc>,
        classmap: SeqDoc,
    },
}

impl Document {
    pub fn into_presentation(self, canonicalize: bool) -> Result<MatrixPresentation> {
        match self {
            Document::Finite { n, matrix } => {
                if matrix.len() != n {
                    return Err(shape(
                        "matrix",
                        &format!("n = {n} but {} rows given", matrix.len()),
                    ));
                }
                let mut entries = Vec::with_capacity(n);
                for (i, row) in matrix.iter().enumerate() {
                    let mut out = Vec::with_capacity(row.len());
                    for (j, &v) in row.iter().enumerate() {
                        match v {
                            0 => out.push(false),
                            1 => out.push(true),
                            _ => {
                                return Err(ValidationError::NonBinary {
                                    location: format!("matrix[{i}][{j}]"),
                                    value: v.to_string(),
                                }
                                .into())
                            }
                        }
                    }
                    entries.push(out);
                }
                Ok(MatrixPresentation::Finite(FiniteMatrix::new(entries)?))
            }
            Document::Ep { patterns, classmap } => {
                let patterns = patterns
                    .iter()
                    .enumerate()
                    .map(|(k, p)| p.to_seq(&format!("patterns[{k}]")))
                    .collect::<Result<Vec<_>>>()?;
                let classmap = classmap.to_seq("classmap")?;
                let p = if canonicalize {
                    InfinitePresentation::reduced(patterns, classmap)?
                } else {
                    InfinitePresentation::new(patterns, classmap)?
                };
                Ok(MatrixPresentation::Infinite(p))
            }
        }
    }
}

/// Parses and validates an input document.
pub fn parse(document: &str) -> Result<MatrixPresentation> {
    parse_with(document, false)
}

/// With `canonicalize`, duplicate and unused patterns are reduced away instead
/// of being rejected.
pub fn parse_with(document: &str, canonicalize: bool) -> Result<MatrixPresentation> {
    let doc: Document =
        serde_json::from_str(document).map_err(|e| ValidationError::Syntax(e.to_string()))?;
    doc.into_presentation(canonicalize)
}
