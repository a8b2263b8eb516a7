//! Verification records and their JSON form.
//!
//! Exact mode passes only on a literally zero difference. Float mode passes
//! when the largest entry of the difference, divided by the largest entry of
//! either side, is below [`FLOAT_REL_TOL`].

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::linalg::Matrix;
use crate::operator::{Bidegree, GradedOp};
use crate::scalar::Field;

pub const FLOAT_REL_TOL: f64 = 1e-10;

/// Report schema version.
pub const REPORT_VERSION: &str = "1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Float,
}

impl Mode {
    pub fn of<F: Field>() -> Self {
        if F::EXACT {
            Mode::Exact
        } else {
            Mode::Float
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Exact => "exact",
            Mode::Float => "float",
        }
    }
}

impl std::str::FromStr for Mode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "exact" => Ok(Mode::Exact),
            "float" => Ok(Mode::Float),
            _ => Err(format!("unknown mode {s:?} (expected exact or float)")),
        }
    }
}

/// Result of one identity check before it is tied to a fixture and point.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub identity: String,
    pub detail: String,
    pub residual: f64,
    pub pass: bool,
}

impl Outcome {
    pub fn new(identity: &str, detail: impl Into<String>, residual: f64, pass: bool) -> Self {
        Outcome {
            identity: identity.to_string(),
            detail: detail.into(),
            residual,
            pass,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Record {
    pub fixture: String,
    pub point: Vec<String>,
    pub identity: String,
    pub detail: String,
    pub mode: Mode,
    pub residual: f64,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub skipped: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub version: String,
    pub seed: Option<u64>,
    pub records: Vec<Record>,
    pub summary: Summary,
    #[serde(default)]
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn new(seed: Option<u64>) -> Self {
        VerificationReport {
            version: REPORT_VERSION.to_string(),
            seed,
            records: vec![],
            summary: Summary::default(),
            notes: vec![],
        }
    }

    pub fn push_outcomes(
        &mut self,
        fixture: &str,
        point: &[String],
        mode: Mode,
        outcomes: Vec<Outcome>,
    ) {
        for o in outcomes {
            self.records.push(Record {
                fixture: fixture.to_string(),
                point: point.to_vec(),
                identity: o.identity,
                detail: o.detail,
                mode,
                residual: o.residual,
                pass: o.pass,
                skipped: None,
            });
        }
        self.refresh();
    }

    pub fn push_skipped(&mut self, fixture: &str, identity: &str, mode: Mode, reason: &str) {
        self.records.push(Record {
            fixture: fixture.to_string(),
            point: vec![],
            identity: identity.to_string(),
            detail: String::new(),
            mode,
            residual: 0.0,
            pass: true,
            skipped: Some(reason.to_string()),
        });
        self.refresh();
    }

    pub fn merge(&mut self, other: VerificationReport) {
        self.records.extend(other.records);
        self.notes.extend(other.notes);
        self.refresh();
    }

    fn refresh(&mut self) {
        let skipped = self.records.iter().filter(|r| r.skipped.is_some()).count();
        let passed = self
            .records
            .iter()
            .filter(|r| r.skipped.is_none() && r.pass)
            .count();
        self.summary = Summary {
            total: self.records.len(),
            passed,
            failed: self.records.len() - passed - skipped,
            skipped,
        };
    }

    pub fn all_pass(&self) -> bool {
        self.records.iter().all(|r| r.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Record> {
        self.records.iter().filter(|r| !r.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Identity id → (count, worst residual, all pass).
    pub fn by_identity(&self) -> BTreeMap<String, (usize, f64, bool)> {
        let mut out: BTreeMap<String, (usize, f64, bool)> = BTreeMap::new();
        for r in self.records.iter().filter(|r| r.skipped.is_none()) {
            let e = out.entry(r.identity.clone()).or_insert((0, 0.0, true));
            e.0 += 1;
            e.1 = e.1.max(r.residual);
            e.2 &= r.pass;
        }
        out
    }
}

/// Residual of `lhs − rhs` and its pass flag.
pub fn compare_ops<F: Field>(
    lhs: &GradedOp<F>,
    rhs: &GradedOp<F>,
) -> (f64, bool, Option<Bidegree>) {
    compare_ops_scaled(lhs, rhs, 0.0)
}

/// As [`compare_ops`], with `scale` as a floor for the float normalization.
pub fn compare_ops_scaled<F: Field>(
    lhs: &GradedOp<F>,
    rhs: &GradedOp<F>,
    scale: f64,
) -> (f64, bool, Option<Bidegree>) {
    let (worst, diff) = lhs.worst_block_diff(rhs);
    if F::EXACT {
        (diff, lhs.sub(rhs).is_zero(), worst)
    } else {
        let rel = relative(
            diff,
            lhs.max_magnitude().max(rhs.max_magnitude()).max(scale),
        );
        (rel, rel < FLOAT_REL_TOL, worst)
    }
}

pub fn compare_matrices<F: Field>(lhs: &Matrix<F>, rhs: &Matrix<F>) -> (f64, bool) {
    let diff = lhs.max_abs_diff(rhs);
    if F::EXACT {
        (diff, lhs.sub(rhs).is_zero())
    } else {
        let rel = relative(diff, lhs.max_magnitude().max(rhs.max_magnitude()));
        (rel, rel < FLOAT_REL_TOL)
    }
}

pub fn compare_scalars<F: Field>(lhs: &F, rhs: &F) -> (f64, bool) {
    compare_scalars_scaled(lhs, rhs, 0.0)
}

/// As [`compare_scalars`], with `scale` as a floor for the float
/// normalization. Use it when both sides are sums that may cancel to zero.
pub fn compare_scalars_scaled<F: Field>(lhs: &F, rhs: &F, scale: f64) -> (f64, bool) {
    let diff = (lhs.clone() - rhs).magnitude();
    if F::EXACT {
        (diff, (lhs.clone() - rhs).is_zero())
    } else {
        let rel = relative(diff, lhs.magnitude().max(rhs.magnitude()).max(scale));
        (rel, rel < FLOAT_REL_TOL)
    }
}

fn relative(diff: f64, scale: f64) -> f64 {
    if scale > 0.0 {
        diff / scale
    } else {
        diff
    }
}

/// Outcome comparing two block operators.
pub fn op_outcome<F: Field>(
    identity: &str,
    detail: &str,
    lhs: &GradedOp<F>,
    rhs: &GradedOp<F>,
) -> Outcome {
    scaled_op_outcome(identity, detail, lhs, rhs, 0.0)
}

pub fn scaled_op_outcome<F: Field>(
    identity: &str,
    detail: &str,
    lhs: &GradedOp<F>,
    rhs: &GradedOp<F>,
    scale: f64,
) -> Outcome {
    let (res, pass, worst) = compare_ops_scaled(lhs, rhs, scale);
    let detail = match (pass, worst) {
        (false, Some(bd)) => format!("{detail} worst H^{{{},{}}}", bd.0, bd.1),
        _ => detail.to_string(),
    };
    Outcome::new(identity, detail, res, pass)
}

pub fn scalar_outcome<F: Field>(identity: &str, detail: &str, lhs: &F, rhs: &F) -> Outcome {
    scaled_outcome(identity, detail, lhs, rhs, 0.0)
}

pub fn scaled_outcome<F: Field>(
    identity: &str,
    detail: &str,
    lhs: &F,
    rhs: &F,
    scale: f64,
) -> Outcome {
    let (res, pass) = compare_scalars_scaled(lhs, rhs, scale);
    Outcome::new(identity, detail, res, pass)
}
