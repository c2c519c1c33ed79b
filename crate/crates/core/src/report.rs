//! Report types behind each CLI command, with a human rendering and a
//! canonical JSON rendering (sorted keys, integers only).

use std::fmt::Write as _;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::ktheory::k_groups;
use crate::linalg::FgAbelianGroup;
use crate::oracle::{compare_k1_report, verify_k0_relations, K1Comparison};
use crate::presentation::MatrixPresentation;
use crate::relations::relation_instances;
use crate::spectrum::describe;

fn sort_keys(v: Value) -> Value {
    match v {
        Value::Object(map) => {
            let mut entries: Vec<(String, Value)> = map.into_iter().collect();
            entries.sort_by(|a, b| a.0.cmp(&b.0));
            Value::Object(
                entries
                    .into_iter()
                    .map(|(k, v)| (k, sort_keys(v)))
                    .collect::<Map<_, _>>(),
            )
        }
        Value::Array(items) => Value::Array(items.into_iter().map(sort_keys).collect()),
        other => other,
    }
}

/// Pretty JSON with object keys in sorted order and a trailing newline.
pub fn canonical_json(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(&sort_keys(value.clone())).expect("JSON value");
    s.push('\n');
    s
}

pub fn to_canonical_json<T: Serialize>(report: &T) -> Result<String> {
    let value = serde_json::to_value(report).map_err(|e| Error::Internal(e.to_string()))?;
    Ok(canonical_json(&value))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KGroupsReport {
    pub k0: FgAbelianGroup,
    pub k1: FgAbelianGroup,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k0_unital: Option<FgAbelianGroup>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k1_unital: Option<FgAbelianGroup>,
    pub unital: bool,
    pub accumulation_columns: Vec<String>,
    pub witnesses: Vec<String>,
    pub k0_generators: Vec<String>,
    /// One relation per entry, in the coordinates of `k0_generators`.
    #[serde(with = "crate::num_serde::matrix")]
    pub k0_relations: Vec<Vec<BigInt>>,
}

impl KGroupsReport {
    pub fn build(p: &MatrixPresentation, include_unital: bool) -> Result<Self> {
        let k = k_groups(p)?;
        let spectrum = describe(p)?;
        Ok(KGroupsReport {
            k0: k.k0,
            k1: k.k1,
            k0_unital: include_unital.then_some(k.k0_unital),
            k1_unital: include_unital.then_some(k.k1_unital),
            unital: spectrum.unital,
            accumulation_columns: spectrum
                .accumulation_columns
                .iter()
                .map(ToString::to_string)
                .collect(),
            witnesses: k.k1_witnesses.iter().map(ToString::to_string).collect(),
            k0_generators: k
                .k0_generator_labels
                .iter()
                .map(ToString::to_string)
                .collect(),
            k0_relations: k.k0_relations.columns(),
        })
    }

    pub fn human(&self) -> String {
        let mut s = format!("K0 = {}, K1 = {}", self.k0, self.k1);
        if let (Some(k0u), Some(k1u)) = (&self.k0_unital, &self.k1_unital) {
            let _ = write!(s, ", K0~ = {k0u}, K1~ = {k1u}");
        }
        s.push('\n');
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpectrumReport {
    pub accumulation_columns: Vec<String>,
    pub zero_at_infinity: bool,
    pub unital: bool,
}

impl SpectrumReport {
    pub fn build(p: &MatrixPresentation) -> Result<Self> {
        let d = describe(p)?;
        Ok(SpectrumReport {
            accumulation_columns: d
                .accumulation_columns
                .iter()
                .map(ToString::to_string)
                .collect(),
            zero_at_infinity: d.zero_at_infinity,
            unital: d.unital,
        })
    }

    pub fn human(&self) -> String {
        let mut s = format!(
            "unital: {}\nzero column at infinity: {}\naccumulation columns: {}\n",
            yes_no(self.unital),
            yes_no(self.zero_at_infinity),
            self.accumulation_columns.len()
        );
        for c in &self.accumulation_columns {
            let _ = writeln!(s, "  {c}");
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceLine {
    pub x: Vec<usize>,
    pub y: Vec<usize>,
    pub support: Vec<usize>,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelationsReport {
    pub size_bound: usize,
    pub instances: Vec<InstanceLine>,
    pub all_hold: bool,
}

impl RelationsReport {
    pub fn build(p: &MatrixPresentation, size_bound: usize) -> Result<Self> {
        let instances: Vec<InstanceLine> = relation_instances(p, size_bound)?
            .into_iter()
            .map(|r| InstanceLine {
                x: r.x,
                y: r.y,
                support: r.check.support,
                holds: r.check.holds,
            })
            .collect();
        Ok(RelationsReport {
            size_bound,
            all_hold: instances.iter().all(|i| i.holds),
            instances,
        })
    }

    pub fn human(&self) -> String {
        let set = |v: &[usize]| {
            let items: Vec<String> = v.iter().map(ToString::to_string).collect();
            format!("{{{}}}", items.join(","))
        };
        let mut s = String::new();
        for i in &self.instances {
            let _ = writeln!(
                s,
                "X = {}, Y = {}: support {} {}",
                set(&i.x),
                set(&i.y),
                set(&i.support),
                if i.holds { "ok" } else { "FAILED" }
            );
        }
        let _ = writeln!(
            s,
            "{} applicable instances, {}",
            self.instances.len(),
            if self.all_hold {
                "all hold"
            } else {
                "some fail"
            }
        );
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OracleReport {
    pub k1: K1Comparison,
    pub k0_relations_verified: bool,
    pub agrees: bool,
}

impl OracleReport {
    pub fn build(p: &MatrixPresentation, slabs: Option<&[usize]>) -> Result<Self> {
        let k1 = compare_k1_report(p, slabs)?;
        let k0_relations_verified = verify_k0_relations(p)?;
        Ok(OracleReport {
            agrees: k1.agrees() && k0_relations_verified,
            k1,
            k0_relations_verified,
        })
    }

    pub fn human(&self) -> String {
        let ranks: Vec<String> = self
            .k1
            .slabs
            .iter()
            .map(|s| format!("N={}: {}", s.n, s.rank))
            .collect();
        format!(
            "slab kernel ranks: {}\nK1 matches slabs: {}\nK0 relations verified: {}\n",
            ranks.join(", "),
            yes_no(self.k1.agrees()),
            yes_no(self.k0_relations_verified)
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ValidateReport {
    pub valid: bool,
    pub format: String,
    /// Matrix size for finite input, pattern count otherwise.
    pub size: usize,
    pub edge_matrix: bool,
    pub row_finite: bool,
}

impl ValidateReport {
    pub fn build(p: &MatrixPresentation) -> Result<Self> {
        let c = p.classify()?;
        let size = match p {
            MatrixPresentation::Finite(m) => m.size(),
            MatrixPresentation::Infinite(p) => p.num_classes(),
        };
        Ok(ValidateReport {
            valid: true,
            format: p.format_name().to_string(),
            size,
            edge_matrix: c.is_edge_matrix,
            row_finite: c.is_row_finite,
        })
    }

    pub fn human(&self) -> String {
        let what = if self.format == "finite" {
            format!("{n}x{n} matrix", n = self.size)
        } else {
            format!("presentation with {} patterns", self.size)
        };
        format!(
            "valid {what}\nedge matrix: {}\nrow finite: {}\n",
            yes_no(self.edge_matrix),
            yes_no(self.row_finite)
        )
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}
