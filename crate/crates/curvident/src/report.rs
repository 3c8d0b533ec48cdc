//! Machine-readable reports: JSON documents (schema `curvident/1`) and CSV
//! dimension tables. Every report embeds the full run configuration, and
//! serialization is deterministic, so reruns with the same arguments produce
//! byte-identical files.

use serde::Serialize;

use crate::identities::IdentityReport;
use crate::invariant::{MembershipReport, ReductionReport};

pub const SCHEMA: &str = "curvident/1";

/// Echo of the command line that produced a report.
#[derive(Clone, Debug, Default, Serialize, PartialEq)]
pub struct RunConfig {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pbar: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub signature: Option<[usize; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trials: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m_max: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_max: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out: Option<String>,
    pub format: String,
}

#[derive(Debug, Serialize)]
pub struct VerifyReport {
    pub schema: &'static str,
    pub config: RunConfig,
    #[serde(flatten)]
    pub identity: IdentityReport,
    /// Whether the observed outcome matches the dichotomy for this dimension:
    /// all-zero below the critical dimension, a witness at or above it.
    pub prediction_matched: bool,
}

#[derive(Debug, Serialize)]
pub struct DimTableRow {
    pub m: usize,
    pub n: usize,
    pub dimension: usize,
}

#[derive(Debug, Serialize)]
pub struct DimTableReport {
    pub schema: &'static str,
    pub config: RunConfig,
    pub rows: Vec<DimTableRow>,
}

#[derive(Debug, Serialize)]
pub struct KernelRow {
    pub n: usize,
    pub dimension: usize,
}

#[derive(Debug, Serialize)]
pub struct KernelReport {
    pub schema: &'static str,
    pub config: RunConfig,
    pub pbar: usize,
    pub k: usize,
    pub kernel: Vec<KernelRow>,
    pub membership: MembershipReport,
}

#[derive(Debug, Serialize)]
pub struct ReduceReport {
    pub schema: &'static str,
    pub config: RunConfig,
    pub reports: Vec<ReductionReport>,
    pub all_ok: bool,
}

#[derive(Debug, Serialize)]
pub struct NormalDimsRow {
    pub r: usize,
    pub n: usize,
    pub dimension: usize,
}

#[derive(Debug, Serialize)]
pub struct NormalDimsReport {
    pub schema: &'static str,
    pub config: RunConfig,
    pub rows: Vec<NormalDimsRow>,
}

pub fn to_json<T: Serialize>(report: &T) -> String {
    let mut text = serde_json::to_string_pretty(report).expect("reports serialize");
    text.push('\n');
    text
}

impl VerifyReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("trial,exact_zero,witness_index,witness_value\n");
        for r in &self.identity.results {
            let (idx, val) = match &r.witness_component {
                None => (String::new(), String::new()),
                Some(w) => (
                    w.index
                        .iter()
                        .map(|i| i.to_string())
                        .collect::<Vec<_>>()
                        .join(" "),
                    w.value.clone(),
                ),
            };
            out.push_str(&format!("{},{},{},{}\n", r.trial, r.exact_zero, idx, val));
        }
        out
    }
}

impl DimTableReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("m,n,dimension\n");
        for r in &self.rows {
            out.push_str(&format!("{},{},{}\n", r.m, r.n, r.dimension));
        }
        out
    }
}

impl KernelReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("pbar,k,n,dimension\n");
        for r in &self.kernel {
            out.push_str(&format!(
                "{},{},{},{}\n",
                self.pbar, self.k, r.n, r.dimension
            ));
        }
        out
    }
}

impl ReduceReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("m,n,dimension\n");
        for rep in &self.reports {
            for (i, d) in rep.dims.iter().enumerate() {
                out.push_str(&format!("{},{},{}\n", rep.m, i + 1, d));
            }
        }
        out
    }
}

impl NormalDimsReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("r,n,dimension\n");
        for r in &self.rows {
            out.push_str(&format!("{},{},{}\n", r.r, r.n, r.dimension));
        }
        out
    }
}
