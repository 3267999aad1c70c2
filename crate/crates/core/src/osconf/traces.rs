use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::ops::RangeInclusive;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use once_cell::sync::Lazy;
use rayon::prelude::*;

use super::algebra::{coefficient_of, nbc_basis, relabel_word, OSMonomial};
use crate::error::{Error, Result};
use crate::symcore::{decompose, partitions_of, ClassFunction, Decomposition, Partition, Permutation};

/// Persistent storage for per-class traces, keyed by `(n, i)`. Values are listed in the
/// canonical class order of `S_n`.
pub trait TraceCache: Send + Sync {
    fn load(&self, n: usize, i: usize) -> Option<Vec<BigInt>>;
    fn store(&self, n: usize, i: usize, traces: &[BigInt]);
}

static MEMO: Lazy<RwLock<HashMap<(usize, usize), Arc<Vec<BigInt>>>>> =
    Lazy::new(|| RwLock::new(HashMap::new()));
static BACKING: Lazy<RwLock<Option<Arc<dyn TraceCache>>>> = Lazy::new(|| RwLock::new(None));

/// Installs a persistent cache consulted before computing traces.
pub fn set_trace_cache(cache: Option<Arc<dyn TraceCache>>) {
    *BACKING.write().expect("trace cache lock") = cache;
}

/// Connected-component label of every point (0-based) in the forest of a normal-form monomial.
fn components(m: &OSMonomial, n: usize) -> Vec<u8> {
    let mut comp: Vec<u8> = (0..n as u8).collect();
    // upper indices are distinct, so each factor attaches the tree of `j` under `a`
    for g in m.factors() {
        let (a, j) = (comp[g.lower() - 1], comp[g.upper() - 1]);
        if a != j {
            for c in comp.iter_mut() {
                if *c == j {
                    *c = a;
                }
            }
        }
    }
    comp
}

/// Coefficient of `m` in `sigma . m`.
///
/// The product of the generators of a forest lies in the summand of the algebra indexed
/// by the partition of the points into trees, and `sigma` carries that summand onto the
/// one for the permuted partition. So the coefficient vanishes unless `sigma` preserves
/// the partition, which holds exactly when every relabeled edge stays inside a tree.
pub(crate) fn diagonal_coefficient(m: &OSMonomial, sigma: &Permutation, n: usize) -> i64 {
    let fs = m.factors();
    if fs
        .iter()
        .all(|g| sigma.apply(g.lower() - 1) == g.lower() - 1 && sigma.apply(g.upper() - 1) == g.upper() - 1)
    {
        return 1;
    }
    let comp = components(m, n);
    for g in fs {
        if comp[sigma.apply(g.lower() - 1)] != comp[sigma.apply(g.upper() - 1)] {
            return 0;
        }
    }
    coefficient_of(relabel_word(fs, sigma), fs)
}

/// Trace of `sigma` on the degree-`i` part, read off diagonal coefficients.
pub fn trace(n: usize, i: usize, sigma: &Permutation) -> BigInt {
    let basis = nbc_basis(n, i);
    trace_on(&basis, sigma, n)
}

fn trace_on(basis: &[OSMonomial], sigma: &Permutation, n: usize) -> BigInt {
    let t: i64 = basis
        .par_iter()
        .with_min_len(256)
        .map(|m| diagonal_coefficient(m, sigma, n))
        .sum();
    BigInt::from(t)
}

/// Traces for the classes selected by `want` (in canonical class order); `None` marks
/// skipped classes. Full results are memoized and written to the installed cache.
pub fn conf_traces_filtered(n: usize, i: usize, want: impl Fn(&Partition) -> bool) -> Vec<Option<BigInt>> {
    if let Some(full) = cached_traces(n, i) {
        return full.iter().cloned().map(Some).collect();
    }
    let classes = partitions_of(n);
    let basis = nbc_basis(n, i);
    let out: Vec<Option<BigInt>> = classes
        .iter()
        .map(|mu| {
            if !want(mu) {
                return None;
            }
            if mu.parts().iter().all(|&p| p == 1) {
                return Some(BigInt::from(basis.len()));
            }
            let sigma = Permutation::representative(&mu.clone().into());
            Some(trace_on(&basis, &sigma, n))
        })
        .collect();
    if out.iter().all(Option::is_some) {
        let full: Vec<BigInt> = out.iter().map(|v| v.clone().expect("all present")).collect();
        remember(n, i, full);
    }
    out
}

fn cached_traces(n: usize, i: usize) -> Option<Arc<Vec<BigInt>>> {
    if let Some(v) = MEMO.read().expect("memo lock").get(&(n, i)) {
        return Some(v.clone());
    }
    let backing = BACKING.read().expect("trace cache lock").clone();
    let loaded = backing?.load(n, i)?;
    if loaded.len() != partitions_of(n).len() {
        return None;
    }
    let v = Arc::new(loaded);
    MEMO.write().expect("memo lock").insert((n, i), v.clone());
    Some(v)
}

fn remember(n: usize, i: usize, full: Vec<BigInt>) {
    if let Some(c) = BACKING.read().expect("trace cache lock").as_ref() {
        c.store(n, i, &full);
    }
    MEMO.write().expect("memo lock").insert((n, i), Arc::new(full));
}

/// Character of `S_n` on `H^i` of the configuration space of `n` points in the plane.
/// Zero when `i > n - 1` (and `i > 0`).
pub fn character_conf(n: usize, i: usize) -> ClassFunction {
    let values = conf_traces_filtered(n, i, |_| true)
        .into_iter()
        .map(|v| BigRational::from_integer(v.expect("no class skipped")))
        .collect();
    ClassFunction::new(n, values).expect("one value per class")
}

/// Irreducible decomposition of `H^i` for `n` points.
pub fn decompose_conf(n: usize, i: usize) -> Result<Decomposition> {
    decompose(&character_conf(n, i))
}

/// Multiplicities of one irreducible across the window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelHistory {
    pub lambda: Partition,
    pub values: Vec<(usize, u64)>,
    /// First `n` of the final constant run.
    pub settles_at: usize,
}

/// Outcome of checking stability of `H^i` over a window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilityReport {
    pub i: usize,
    pub window: (usize, usize),
    /// The bound `4i` from which multiplicities are asserted constant.
    pub bound: usize,
    /// Smallest `n` from which every multiplicity is constant through the window end.
    pub onset: usize,
    pub labels: Vec<LabelHistory>,
    pub decompositions: Vec<(usize, Decomposition)>,
    pub stable: BTreeMap<Partition, u64>,
}

/// Decomposes `H^i` for every `n` in the window and checks that nothing changes at or
/// after `n = 4i`.
pub fn verify_stability(i: usize, window: RangeInclusive<usize>) -> Result<StabilityReport> {
    if window.is_empty() {
        return Err(Error::Argument("empty window".into()));
    }
    let (lo, hi) = (*window.start(), *window.end());
    let decompositions: Vec<(usize, Decomposition)> = window
        .map(|n| Ok((n, decompose_conf(n, i)?)))
        .collect::<Result<_>>()?;
    let all: BTreeSet<Partition> = decompositions
        .iter()
        .flat_map(|(_, d)| d.unpadded().keys().cloned())
        .collect();
    let bound = 4 * i;
    let mut labels = Vec::new();
    for lambda in all {
        let values: Vec<(usize, u64)> = decompositions
            .iter()
            .map(|(n, d)| (*n, d.multiplicity(&lambda)))
            .collect();
        let last = values.last().expect("nonempty window").1;
        let mut start = values.len() - 1;
        while start > 0 && values[start - 1].1 == last {
            start -= 1;
        }
        let settles_at = values[start].0;
        if settles_at > lo && settles_at > bound {
            return Err(Error::StabilityViolation {
                label: crate::symcore::unpadded_name(&lambda),
                n: settles_at,
                bound,
            });
        }
        labels.push(LabelHistory {
            lambda,
            values,
            settles_at,
        });
    }
    let onset = labels.iter().map(|l| l.settles_at).max().unwrap_or(lo);
    let stable = decompositions.last().expect("nonempty").1.unpadded().clone();
    Ok(StabilityReport {
        i,
        window: (lo, hi),
        bound,
        onset,
        labels,
        decompositions,
        stable,
    })
}
