//! On-disk JSON formats: model files, obstruction inputs, and reports.
//! All rationals are fraction strings; all matrices are row-major integer
//! arrays. Emission is deterministic, so emit -> parse -> emit is
//! byte-identical.

use crate::grading::{Grading, GradingStr};
use crate::hfmodel::{HFModel, ModuleType, TorsionLabel, WindowModule};
use crate::intlinalg::{IntMatrix, SubgroupPresentation};
use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FilesError {
    #[error("malformed model file: {0}")]
    Malformed(String),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Model(#[from] crate::hfmodel::ModelError),
    #[error(transparent)]
    Linalg(#[from] crate::intlinalg::LinalgError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<i64>,
}

impl MatrixJson {
    fn from_matrix(m: &IntMatrix) -> Result<Self, FilesError> {
        let entries = m
            .entries()
            .iter()
            .map(|e| {
                i64::try_from(e.clone())
                    .map_err(|_| FilesError::Malformed("matrix entry exceeds i64".into()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(MatrixJson {
            rows: m.rows(),
            cols: m.cols(),
            entries,
        })
    }

    fn to_matrix(&self) -> Result<IntMatrix, FilesError> {
        if self.entries.len() != self.rows * self.cols {
            return Err(FilesError::Malformed("matrix entry count mismatch".into()));
        }
        Ok(IntMatrix::from_i64(self.rows, self.cols, &self.entries))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowJson {
    pub lo: GradingStr,
    pub hi: GradingStr,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HfInfJson {
    pub ranks: Vec<usize>,
    #[serde(rename = "U")]
    pub u: Vec<MatrixJson>,
    #[serde(rename = "A")]
    pub a: Vec<Vec<MatrixJson>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PromisesJson {
    pub full_below: GradingStr,
    pub zero_above: GradingStr,
}

/// The model document: a window module presented explicitly, plus the
/// `I^-` generators per grading and the boundary promises.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelFile {
    pub name: String,
    pub b1: usize,
    pub sigma: GradingStr,
    pub window: WindowJson,
    pub hf_inf: HfInfJson,
    /// Per grading (from `lo` up), a list of generator columns.
    pub iminus: Vec<Vec<Vec<i64>>>,
    pub promises: PromisesJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub torsion_label: Option<TorsionLabel>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub iplus_ranks: Option<Vec<usize>>,
}

impl ModelFile {
    pub fn from_model(m: &HFModel) -> Result<Self, FilesError> {
        let w = &m.hf_inf;
        let u = w
            .u_matrices()
            .iter()
            .map(MatrixJson::from_matrix)
            .collect::<Result<Vec<_>, _>>()?;
        let a = w
            .a_matrices()
            .iter()
            .map(|ai| ai.iter().map(MatrixJson::from_matrix).collect())
            .collect::<Result<Vec<_>, _>>()?;
        let iminus = m
            .iminus
            .iter()
            .map(|sub| {
                (0..sub.gens().cols())
                    .map(|j| {
                        sub.gens()
                            .column(j)
                            .into_iter()
                            .map(|e| {
                                i64::try_from(e).map_err(|_| {
                                    FilesError::Malformed("generator entry exceeds i64".into())
                                })
                            })
                            .collect::<Result<Vec<_>, _>>()
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(ModelFile {
            name: m.name.clone(),
            b1: w.n(),
            sigma: GradingStr(w.sigma()),
            window: WindowJson {
                lo: GradingStr(w.lo()),
                hi: GradingStr(w.hi()),
            },
            hf_inf: HfInfJson {
                ranks: w.ranks().to_vec(),
                u,
                a,
            },
            iminus,
            promises: PromisesJson {
                full_below: GradingStr(m.full_below),
                zero_above: GradingStr(m.zero_above),
            },
            torsion_label: m.torsion_label.clone(),
            iplus_ranks: m.iplus_ranks.clone(),
        })
    }

    pub fn to_model(&self) -> Result<HFModel, FilesError> {
        let u = self
            .hf_inf
            .u
            .iter()
            .map(MatrixJson::to_matrix)
            .collect::<Result<Vec<_>, _>>()?;
        let a = self
            .hf_inf
            .a
            .iter()
            .map(|ai| ai.iter().map(MatrixJson::to_matrix).collect())
            .collect::<Result<Vec<_>, _>>()?;
        let hf_inf = WindowModule::new(
            self.b1,
            ModuleType::Homological,
            self.sigma.0,
            self.window.lo.0,
            self.window.hi.0,
            self.hf_inf.ranks.clone(),
            u,
            a,
        )?;
        if self.iminus.len() != hf_inf.size() {
            return Err(FilesError::Malformed(format!(
                "iminus has {} gradings, window has {}",
                self.iminus.len(),
                hf_inf.size()
            )));
        }
        let mut iminus = Vec::with_capacity(self.iminus.len());
        for (j, cols) in self.iminus.iter().enumerate() {
            let rank = self.hf_inf.ranks[j];
            let cols: Vec<Vec<BigInt>> = cols
                .iter()
                .map(|c| {
                    if c.len() != rank {
                        return Err(FilesError::Malformed(format!(
                            "iminus generator at index {} has wrong length",
                            j
                        )));
                    }
                    Ok(c.iter().map(|&x| BigInt::from(x)).collect())
                })
                .collect::<Result<Vec<_>, _>>()?;
            iminus.push(SubgroupPresentation::from_columns(rank, &cols)?);
        }
        Ok(HFModel {
            name: self.name.clone(),
            hf_inf,
            iminus,
            full_below: self.promises.full_below.0,
            zero_above: self.promises.zero_above.0,
            torsion_label: self.torsion_label.clone(),
            iplus_ranks: self.iplus_ranks.clone(),
        })
    }
}

/// Canonical pretty emission used for all document output.
pub fn emit_model(m: &HFModel) -> Result<String, FilesError> {
    let file = ModelFile::from_model(m)?;
    let mut s = serde_json::to_string_pretty(&file)?;
    s.push('\n');
    Ok(s)
}

pub fn parse_model(s: &str) -> Result<HFModel, FilesError> {
    let file: ModelFile = serde_json::from_str(s)?;
    file.to_model()
}

/// Machine-readable report wrapper for `--json` CLI output.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub inputs: Vec<String>,
    pub results: serde_json::Value,
    pub certified: bool,
    pub failures: Vec<String>,
}

impl Report {
    pub fn new(command: &str, inputs: Vec<String>) -> Self {
        Report {
            command: command.to_string(),
            inputs,
            results: serde_json::Value::Null,
            certified: true,
            failures: Vec::new(),
        }
    }

    pub fn emit(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialization");
        s.push('\n');
        s
    }
}

/// Serialized d-table entry for reports.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DTableEntryJson {
    pub subspace: Vec<Vec<i64>>,
    pub rank: usize,
    pub d: GradingStr,
    pub d_certified: bool,
    pub d_star: GradingStr,
    pub d_star_certified: bool,
}

pub fn dtable_entries_json(t: &crate::dinv::DTable) -> Result<Vec<DTableEntryJson>, FilesError> {
    t.entries
        .iter()
        .map(|e| {
            let gens = e.subspace.span().gens();
            let subspace = (0..gens.cols())
                .map(|j| {
                    gens.column(j)
                        .into_iter()
                        .map(|x| {
                            i64::try_from(x).map_err(|_| {
                                FilesError::Malformed("subspace entry exceeds i64".into())
                            })
                        })
                        .collect::<Result<Vec<_>, _>>()
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok(DTableEntryJson {
                subspace,
                rank: e.subspace.rank(),
                d: GradingStr(e.d.value),
                d_certified: e.d.certified,
                d_star: GradingStr(e.d_star.value),
                d_star_certified: e.d_star.certified,
            })
        })
        .collect()
}

/// Parses a subspace argument: basis vectors separated by `;`, entries by
/// `,` — e.g. `"1,0;0,1"`.
pub fn parse_subspace(n: usize, s: &str) -> Result<crate::functors::Subspace, FilesError> {
    let s = s.trim();
    if s.is_empty() || s == "0" {
        return Ok(crate::functors::Subspace::zero(n));
    }
    let mut cols = Vec::new();
    for part in s.split(';') {
        let col: Vec<BigInt> = part
            .split(',')
            .map(|x| {
                x.trim()
                    .parse::<i64>()
                    .map(BigInt::from)
                    .map_err(|_| FilesError::Malformed(format!("bad subspace entry: {}", x)))
            })
            .collect::<Result<Vec<_>, _>>()?;
        if col.len() != n {
            return Err(FilesError::Malformed(format!(
                "subspace vector has {} entries, expected {}",
                col.len(),
                n
            )));
        }
        cols.push(col);
    }
    Ok(crate::functors::Subspace::new(n, &cols)?)
}

/// Formats a grading table cell, marking uncertified values.
pub fn format_dvalue(v: &crate::dinv::DValue) -> String {
    let mut s = crate::grading::format_grading(&v.value);
    if !v.certified {
        s.push('?');
    }
    s
}

pub fn grading_is_zero(g: &Grading) -> bool {
    g.is_zero()
}
