//! Machine-readable verification reports.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    ConjecturePass,
    ConjectureFail,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Mismatch {
    pub kind: String,
    pub charge: i64,
    pub weight4: i64,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Report {
    pub check: String,
    pub k: u32,
    pub i: u32,
    pub j: u32,
    #[serde(rename = "box")]
    pub box_: [i64; 2],
    pub convention: String,
    pub extra_form: String,
    pub status: Status,
    pub mismatches: Vec<Mismatch>,
}

impl Report {
    pub fn new(
        check: &str,
        k: u32,
        i: u32,
        j: u32,
        box_: [i64; 2],
        convention: &str,
        extra_form: &str,
        conjecture: bool,
        mismatches: Vec<Mismatch>,
    ) -> Self {
        let status = match (conjecture, mismatches.is_empty()) {
            (false, true) => Status::Pass,
            (false, false) => Status::Fail,
            (true, true) => Status::ConjecturePass,
            (true, false) => Status::ConjectureFail,
        };
        Report {
            check: check.into(),
            k,
            i,
            j,
            box_,
            convention: convention.into(),
            extra_form: extra_form.into(),
            status,
            mismatches,
        }
    }

    pub fn passed(&self) -> bool {
        matches!(self.status, Status::Pass | Status::ConjecturePass)
    }

    /// Theorem-grade checks drive the exit code; conjecture outcomes are
    /// recorded, not asserted.
    pub fn is_conjecture(&self) -> bool {
        matches!(self.status, Status::ConjecturePass | Status::ConjectureFail)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

pub fn mismatch(kind: &str, charge: i64, weight4: i64, detail: String) -> Mismatch {
    Mismatch { kind: kind.into(), charge, weight4, detail }
}
