//! Truncated FI-modules: a vector space `V_n` for each `n <= n_max` and a linear map
//! `V(f): V_m -> V_n` for every injection `f: [m] -> [n]`.
//!
//! Modules are given by rules (the built-ins) or by explicit matrices. Everything else,
//! such as generation profiles, the representation stability conditions, colimit
//! presentations and Murnaghan tables, is computed by exact rank over the rationals.

mod analysis;
mod builtins;
mod data;

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::SparseVec;
use crate::symcore::{partitions_of, ClassFunction, CycleType, Permutation};

pub use analysis::{
    check_functoriality, check_repstab, colimit_check, generation_profile, murnaghan_check,
    orbit_span, orbit_span_dim, ColimitReport, OrbitSpan, GenerationProfile, MurnaghanReport, RepStabReport, RepStabRow,
};
pub use builtins::{
    parse_builtin, ConfCohomology, ExteriorAlgebra, FiMap, IrrepSequence, KernelModule,
    PolyHomogeneous, SumOfPartials, Tensor,
};
pub use data::{FiModuleData, FORMAT_VERSION};

/// An injection `[m] -> [n]` on 0-based points.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Injection {
    target: usize,
    images: Vec<usize>,
}

impl Injection {
    pub fn new(target: usize, images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; target];
        for &x in &images {
            if x >= target || std::mem::replace(&mut seen[x], true) {
                return Err(Error::Argument(format!(
                    "{images:?} is not an injection into [{target}]"
                )));
            }
        }
        Ok(Injection { target, images })
    }

    pub fn identity(n: usize) -> Self {
        Injection {
            target: n,
            images: (0..n).collect(),
        }
    }

    /// The inclusion `[m] -> [n]` fixing `0..m`.
    pub fn standard(m: usize, n: usize) -> Self {
        assert!(m <= n);
        Injection {
            target: n,
            images: (0..m).collect(),
        }
    }

    pub fn from_permutation(sigma: &Permutation) -> Self {
        Injection {
            target: sigma.degree(),
            images: sigma.images().to_vec(),
        }
    }

    /// The transposition of `k` and `k + 1` in `S_n`.
    pub fn adjacent(n: usize, k: usize) -> Self {
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(k, k + 1);
        Injection { target: n, images }
    }

    pub fn source(&self) -> usize {
        self.images.len()
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    /// `self . other`.
    pub fn compose(&self, other: &Injection) -> Injection {
        assert_eq!(other.target, self.source());
        Injection {
            target: self.target,
            images: other.images.iter().map(|&x| self.images[x]).collect(),
        }
    }

    pub fn is_permutation(&self) -> bool {
        self.source() == self.target
    }

    /// A permutation `sigma` of `[n]` with `self = sigma . standard(m, n)`; points outside
    /// the image are sent, in increasing order, to `m..n`.
    pub fn extend_to_permutation(&self) -> Vec<usize> {
        let mut images = self.images.clone();
        let mut used = vec![false; self.target];
        for &x in &self.images {
            used[x] = true;
        }
        images.extend((0..self.target).filter(|&x| !used[x]));
        images
    }

    /// Every injection `[m] -> [n]`.
    pub fn all(m: usize, n: usize) -> Vec<Injection> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(m);
        let mut used = vec![false; n];
        fn rec(m: usize, n: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Injection>) {
            if cur.len() == m {
                out.push(Injection {
                    target: n,
                    images: cur.clone(),
                });
                return;
            }
            for x in 0..n {
                if !used[x] {
                    used[x] = true;
                    cur.push(x);
                    rec(m, n, cur, used, out);
                    cur.pop();
                    used[x] = false;
                }
            }
        }
        if m <= n {
            rec(m, n, &mut cur, &mut used, &mut out);
        }
        out
    }
}

impl fmt::Display for Injection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let shown: Vec<String> = self.images.iter().map(|x| (x + 1).to_string()).collect();
        write!(f, "[{}] -> [{}]: ({})", self.source(), self.target, shown.join(" "))
    }
}

/// Functor data truncated at `n_max`.
pub trait FiModule: Send + Sync {
    fn name(&self) -> String;

    fn n_max(&self) -> usize;

    fn dim(&self, n: usize) -> usize;

    /// Image of the `idx`-th basis vector of `V_m` under `V(f)`, for `f: [m] -> [n]`.
    fn apply(&self, f: &Injection, idx: usize) -> SparseVec;

    fn basis_label(&self, n: usize, idx: usize) -> String {
        let _ = n;
        format!("e{idx}")
    }

    /// Character of `S_n` on `V_n`.
    fn character(&self, n: usize) -> ClassFunction {
        generic_character(self, n)
    }
}

/// Traces of permutation representatives, read off the action on basis vectors.
pub fn generic_character<V: FiModule + ?Sized>(v: &V, n: usize) -> ClassFunction {
    let values = partitions_of(n)
        .into_iter()
        .map(|mu| {
            let f = Injection::from_permutation(&Permutation::representative(&CycleType::new(mu)));
            let mut t = BigRational::zero();
            for idx in 0..v.dim(n) {
                t += v.apply(&f, idx).get(idx);
            }
            t
        })
        .collect();
    ClassFunction::new(n, values).expect("one value per class")
}

/// `V(f) x` for an arbitrary vector.
pub fn apply_vector<V: FiModule + ?Sized>(v: &V, f: &Injection, x: &SparseVec) -> SparseVec {
    let mut out = SparseVec::new();
    for (idx, c) in x.iter() {
        out.axpy(c, &v.apply(f, idx));
    }
    out
}

/// Columns of the matrix of `V(f)`.
pub fn matrix<V: FiModule + ?Sized>(v: &V, f: &Injection) -> Vec<SparseVec> {
    (0..v.dim(f.source())).map(|idx| v.apply(f, idx)).collect()
}

/// Dimensions `dim V_n` for `n = 0..=n_max`.
pub fn dims<V: FiModule + ?Sized>(v: &V) -> Vec<usize> {
    (0..=v.n_max()).map(|n| v.dim(n)).collect()
}

pub(crate) fn rational(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

#[cfg(test)]
mod tests;
