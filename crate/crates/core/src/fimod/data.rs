use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::{matrix, FiModule, Injection};
use crate::error::{Error, Result};
use crate::linalg::SparseVec;

pub const FORMAT_VERSION: u32 = 1;

/// An FI-module given by explicit matrices: the adjacent transpositions of each `S_n` and
/// the standard inclusion `V_n -> V_{n+1}`. Every other injection is a composite of these.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiModuleData {
    pub name: String,
    pub dims: Vec<usize>,
    /// `transpositions[n][k]` is the matrix of swapping points `k` and `k + 1` in `V_n`.
    pub transpositions: Vec<Vec<Vec<SparseVec>>>,
    /// `inclusions[n]` maps `V_n` to `V_{n+1}`.
    pub inclusions: Vec<Vec<SparseVec>>,
}

fn mat_vec(m: &[SparseVec], v: &SparseVec) -> SparseVec {
    let mut out = SparseVec::new();
    for (j, c) in v.iter() {
        out.axpy(c, &m[j]);
    }
    out
}

/// Adjacent transpositions `k` (swapping `k`, `k + 1`) whose product, applied in order, is
/// the permutation with the given images.
fn adjacent_word(images: &[usize]) -> Vec<usize> {
    let mut w = images.to_vec();
    let mut out = Vec::new();
    loop {
        let Some(i) = (0..w.len().saturating_sub(1)).find(|&i| w[i] > w[i + 1]) else {
            return out;
        };
        w.swap(i, i + 1);
        out.push(i);
    }
}

impl FiModuleData {
    /// Records the generating matrices of any module.
    pub fn materialize(v: &dyn FiModule) -> Self {
        let n_max = v.n_max();
        let dims = (0..=n_max).map(|n| v.dim(n)).collect();
        let transpositions = (0..=n_max)
            .map(|n| (0..n.saturating_sub(1)).map(|k| matrix(v, &Injection::adjacent(n, k))).collect())
            .collect();
        let inclusions = (0..n_max).map(|n| matrix(v, &Injection::standard(n, n + 1))).collect();
        FiModuleData {
            name: v.name(),
            dims,
            transpositions,
            inclusions,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.dims.is_empty() {
            return Err(Error::Data("no levels".into()));
        }
        let n_max = self.dims.len() - 1;
        if self.transpositions.len() != n_max + 1 || self.inclusions.len() != n_max {
            return Err(Error::Data("level counts disagree with dims".into()));
        }
        let check = |m: &[SparseVec], rows: usize, cols: usize, what: String| -> Result<()> {
            if m.len() != cols || m.iter().any(|c| c.iter().any(|(r, _)| r >= rows)) {
                return Err(Error::Data(format!("{what} does not have shape {rows}x{cols}")));
            }
            Ok(())
        };
        for n in 0..=n_max {
            if self.transpositions[n].len() != n.saturating_sub(1) {
                return Err(Error::Data(format!("level {n} needs {} transpositions", n.saturating_sub(1))));
            }
            for (k, m) in self.transpositions[n].iter().enumerate() {
                check(m, self.dims[n], self.dims[n], format!("transposition {k} at level {n}"))?;
            }
            if n < n_max {
                check(&self.inclusions[n], self.dims[n + 1], self.dims[n], format!("inclusion at level {n}"))?;
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        let doc = Document {
            format: "fimodule".into(),
            version: FORMAT_VERSION,
            name: self.name.clone(),
            dims: self.dims.clone(),
            levels: (0..self.dims.len())
                .map(|n| Level {
                    n,
                    transpositions: self.transpositions[n].iter().map(|m| encode(m)).collect(),
                    inclusion: self.inclusions.get(n).map(|m| encode(m)),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let doc: Document = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        if doc.format != "fimodule" {
            return Err(Error::Data(format!("not an FI-module document: {:?}", doc.format)));
        }
        if doc.version != FORMAT_VERSION {
            return Err(Error::Data(format!("unsupported format version {}", doc.version)));
        }
        if doc.levels.len() != doc.dims.len() || doc.levels.iter().enumerate().any(|(k, l)| l.n != k) {
            return Err(Error::Data("levels must be listed in order, one per dimension".into()));
        }
        let n_max = doc.dims.len().saturating_sub(1);
        let mut transpositions = Vec::new();
        let mut inclusions = Vec::new();
        for level in &doc.levels {
            transpositions.push(level.transpositions.iter().map(|m| decode(m)).collect::<Result<Vec<_>>>()?);
            match (&level.inclusion, level.n < n_max) {
                (Some(m), true) => inclusions.push(decode(m)?),
                (None, false) => {}
                _ => return Err(Error::Data(format!("level {} has a misplaced inclusion", level.n))),
            }
        }
        let data = FiModuleData {
            name: doc.name,
            dims: doc.dims,
            transpositions,
            inclusions,
        };
        data.validate()?;
        Ok(data)
    }
}

impl FiModule for FiModuleData {
    fn name(&self) -> String {
        self.name.clone()
    }

    fn n_max(&self) -> usize {
        self.dims.len() - 1
    }

    fn dim(&self, n: usize) -> usize {
        self.dims[n]
    }

    fn apply(&self, f: &Injection, idx: usize) -> SparseVec {
        let mut v = SparseVec::unit(idx);
        for level in f.source()..f.target() {
            v = mat_vec(&self.inclusions[level], &v);
        }
        let n = f.target();
        for k in adjacent_word(&f.extend_to_permutation()) {
            v = mat_vec(&self.transpositions[n][k], &v);
        }
        v
    }
}

#[derive(Serialize, Deserialize)]
struct Document {
    format: String,
    version: u32,
    name: String,
    dims: Vec<usize>,
    levels: Vec<Level>,
}

/// A matrix as a list of sparse columns of `(row, "p/q")` pairs.
type Encoded = Vec<Vec<(usize, String)>>;

#[derive(Serialize, Deserialize)]
struct Level {
    n: usize,
    transpositions: Vec<Encoded>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    inclusion: Option<Encoded>,
}

fn encode(m: &[SparseVec]) -> Encoded {
    m.iter()
        .map(|col| col.iter().map(|(r, c)| (r, c.to_string())).collect())
        .collect()
}

fn decode(m: &Encoded) -> Result<Vec<SparseVec>> {
    m.iter()
        .map(|col| {
            col.iter()
                .map(|(r, c)| {
                    c.parse::<BigRational>()
                        .map(|v| (*r, v))
                        .map_err(|e| Error::Parse(format!("bad entry {c:?}: {e}")))
                })
                .collect::<Result<Vec<_>>>()
                .map(SparseVec::from_entries)
        })
        .collect()
}
