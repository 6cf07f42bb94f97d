use serde::{Deserialize, Serialize};

use super::{HereditaryError, HereditaryOrder, LaurentMatrix};
use crate::arith::{LaurentJson, OrderTag};

/// `{"version": 1, "tag", "shape", "trunc", "entries": [[TLaurent, ...], ...]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixJson {
    pub version: u32,
    pub tag: OrderTag,
    pub shape: Vec<usize>,
    #[serde(default = "default_trunc")]
    pub trunc: usize,
    pub entries: Vec<Vec<LaurentJson>>,
}

fn default_trunc() -> usize {
    crate::DEFAULT_TRUNC
}

impl MatrixJson {
    pub fn from_matrix(h: &HereditaryOrder, m: &LaurentMatrix) -> Self {
        MatrixJson {
            version: 1,
            tag: h.tag(),
            shape: h.shape().to_vec(),
            trunc: h.trunc(),
            entries: m.rows().iter().map(|r| r.iter().map(|e| e.to_json()).collect()).collect(),
        }
    }

    /// Errors carry the offending entry position.
    pub fn to_order_and_matrix(&self) -> Result<(HereditaryOrder, LaurentMatrix), String> {
        if self.version != 1 {
            return Err(format!("unsupported schema version {}", self.version));
        }
        let h = HereditaryOrder::new(self.tag, self.shape.clone(), self.trunc).map_err(|e| e.to_string())?;
        if self.entries.len() != h.size() {
            return Err(HereditaryError::SizeMismatch { expected: h.size(), found: self.entries.len() }.to_string());
        }
        let mut rows = Vec::with_capacity(h.size());
        for (i, row) in self.entries.iter().enumerate() {
            if row.len() != h.size() {
                return Err(format!("entries[{i}]: row has {} entries, expected {}", row.len(), h.size()));
            }
            let mut out = Vec::with_capacity(row.len());
            for (j, e) in row.iter().enumerate() {
                if e.tag != self.tag {
                    return Err(format!("entries[{i}][{j}]: tag {} differs from matrix tag {}", e.tag, self.tag));
                }
                out.push(e.to_laurent(self.trunc).map_err(|err| format!("entries[{i}][{j}]: {err}"))?);
            }
            rows.push(out);
        }
        let m = LaurentMatrix::from_rows(rows).map_err(|e| e.to_string())?;
        Ok((h, m))
    }
}
