//! Bigraded dimension tables, the central computed object.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::monomial::Bidegree;

/// A complete map from the bidegrees of a truncation box to quotient (or
/// module) dimensions. Serialization is byte-stable: fixed field order,
/// entries sorted charge-major.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct DimTable {
    pub side: String,
    pub k: u32,
    pub i: u32,
    pub j: u32,
    pub convention: String,
    pub extra_form: String,
    #[serde(rename = "box")]
    pub box_: [i64; 2],
    /// `[charge, 4*weight, dim]` triples, one per bidegree of the box.
    pub entries: Vec<[i64; 3]>,
}

impl DimTable {
    pub fn from_map(
        side: &str,
        k: u32,
        i: u32,
        j: u32,
        convention: &str,
        extra_form: &str,
        box_: [i64; 2],
        map: &BTreeMap<Bidegree, usize>,
    ) -> Self {
        let mut entries: Vec<[i64; 3]> =
            map.iter().map(|(b, &d)| [b.charge, b.weight4(), d as i64]).collect();
        entries.sort_unstable();
        DimTable {
            side: side.into(),
            k,
            i,
            j,
            convention: convention.into(),
            extra_form: extra_form.into(),
            box_,
            entries,
        }
    }

    pub fn get(&self, charge: i64, weight4: i64) -> Option<i64> {
        self.entries
            .binary_search_by(|e| (e[0], e[1]).cmp(&(charge, weight4)))
            .ok()
            .map(|idx| self.entries[idx][2])
    }

    /// Dimension with the usual convention that everything outside the
    /// first quadrant is zero; `None` if the bidegree is inside the
    /// quadrant but outside the box.
    pub fn dim_or_zero(&self, charge: i64, weight4: i64) -> Option<i64> {
        if charge < 0 || weight4 < 0 {
            return Some(0);
        }
        self.get(charge, weight4)
    }

    /// Bidegrees where the two tables disagree (both must share a box).
    pub fn mismatches(&self, other: &DimTable) -> Vec<(i64, i64, i64, i64)> {
        let mut out = Vec::new();
        for e in &self.entries {
            let theirs = other.get(e[0], e[1]).unwrap_or(-1);
            if theirs != e[2] {
                out.push((e[0], e[1], e[2], theirs));
            }
        }
        out
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn to_csv_string(&self) -> String {
        let mut out = String::from("charge,weight_x4,dim\n");
        for e in &self.entries {
            out.push_str(&format!("{},{},{}\n", e[0], e[1], e[2]));
        }
        out
    }
}
