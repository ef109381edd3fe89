//! Axiom reports: one verdict per checked identity, tagged so that humans
//! and CI can diff on which identity failed.

use std::fmt;

use serde::Serialize;

use crate::linalg::LinMap;

/// Location of the first failure of a matrix identity: the basis vector of
/// the domain on which the two sides differ, with both images rendered.
#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub basis_index: usize,
    pub lhs: Vec<String>,
    pub rhs: Vec<String>,
}

/// Outcome of a single named identity check.
#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    /// Stable tag of the identity, e.g. `"1.1"` or `"WBA.3a"`.
    pub tag: String,
    /// Human-readable name, e.g. `"associativity"`.
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl Verdict {
    pub fn of_eq(tag: &str, name: &str, lhs: &LinMap, rhs: &LinMap) -> Verdict {
        debug_assert_eq!(lhs.rows(), rhs.rows(), "verdict {tag}: row mismatch");
        debug_assert_eq!(lhs.cols(), rhs.cols(), "verdict {tag}: col mismatch");
        let mut witness = None;
        'scan: for j in 0..lhs.cols() {
            for i in 0..lhs.rows() {
                if lhs.get(i, j) != rhs.get(i, j) {
                    witness = Some(Witness {
                        basis_index: j,
                        lhs: lhs.col_strings(j),
                        rhs: rhs.col_strings(j),
                    });
                    break 'scan;
                }
            }
        }
        Verdict {
            tag: tag.to_string(),
            name: name.to_string(),
            pass: witness.is_none(),
            witness,
        }
    }

    pub fn of_bool(tag: &str, name: &str, pass: bool) -> Verdict {
        Verdict {
            tag: tag.to_string(),
            name: name.to_string(),
            pass,
            witness: None,
        }
    }
}

/// A batch of verdicts under one title.
#[derive(Clone, Debug, Serialize, Default)]
pub struct Report {
    pub title: String,
    pub verdicts: Vec<Verdict>,
}

impl Report {
    pub fn new(title: &str) -> Report {
        Report {
            title: title.to_string(),
            verdicts: Vec::new(),
        }
    }

    pub fn push(&mut self, v: Verdict) {
        self.verdicts.push(v);
    }

    pub fn extend(&mut self, other: Report) {
        self.verdicts.extend(other.verdicts);
    }

    pub fn pass(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass)
    }

    pub fn get(&self, tag: &str) -> Option<&Verdict> {
        self.verdicts.iter().find(|v| v.tag == tag)
    }

    /// True iff the verdict with the given tag exists and passes.
    pub fn passes(&self, tag: &str) -> bool {
        self.get(tag).map(|v| v.pass).unwrap_or(false)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{}: {}",
            self.title,
            if self.pass() { "PASS" } else { "FAIL" }
        )?;
        for v in &self.verdicts {
            writeln!(
                f,
                "  [{}] {:<8} {}",
                if v.pass { "ok" } else { "FAIL" },
                v.tag,
                v.name
            )?;
            if let Some(w) = &v.witness {
                writeln!(f, "         first failing basis vector: e_{}", w.basis_index)?;
                writeln!(f, "         lhs = ({})", w.lhs.join(", "))?;
                writeln!(f, "         rhs = ({})", w.rhs.join(", "))?;
            }
        }
        Ok(())
    }
}
