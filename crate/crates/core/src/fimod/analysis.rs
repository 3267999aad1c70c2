use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{apply_vector, matrix, FiModule, Injection};
use crate::error::{Error, Result};
use crate::linalg::{rank, Echelon, SparseVec, SpanCoordinates};
use crate::stabilization::{detect_stable, MIN_RUN};
use crate::symcore::{
    decompose, dim_irrep, pad, partitions_of, ClassFunction, CycleType, Decomposition, Partition, Permutation,
};

/// The span of an `S_n`-orbit inside `V_n`.
pub enum OrbitSpan {
    /// Spanned by these basis vectors.
    Indices(HashSet<usize>),
    /// Spanned by these independent vectors.
    General(Vec<SparseVec>),
}

impl OrbitSpan {
    pub fn dim(&self) -> usize {
        match self {
            OrbitSpan::Indices(s) => s.len(),
            OrbitSpan::General(b) => b.len(),
        }
    }
}

/// Span of the `S_n`-orbit of `seeds` inside `V_n`.
///
/// The span is closed under the adjacent transpositions, which generate `S_n`. While every
/// vector met is a multiple of a basis vector the closure is tracked as a set of indices.
pub fn orbit_span<V: FiModule + ?Sized>(v: &V, n: usize, seeds: Vec<SparseVec>) -> OrbitSpan {
    let gens: Vec<Injection> = (0..n.saturating_sub(1)).map(|k| Injection::adjacent(n, k)).collect();
    if seeds.iter().all(|s| s.len() <= 1) {
        if let Some(set) = monomial_closure(v, &gens, &seeds) {
            return OrbitSpan::Indices(set);
        }
    }
    let mut span = Echelon::new();
    let mut basis = Vec::new();
    let mut next = 0;
    for s in seeds {
        if span.add(s.clone()) {
            basis.push(s);
        }
    }
    while next < basis.len() {
        let x = basis[next].clone();
        next += 1;
        for g in &gens {
            let y = apply_vector(v, g, &x);
            if span.add(y.clone()) {
                basis.push(y);
            }
        }
    }
    OrbitSpan::General(basis)
}

pub fn orbit_span_dim<V: FiModule + ?Sized>(v: &V, n: usize, seeds: Vec<SparseVec>) -> usize {
    orbit_span(v, n, seeds).dim()
}

fn monomial_closure<V: FiModule + ?Sized>(v: &V, gens: &[Injection], seeds: &[SparseVec]) -> Option<HashSet<usize>> {
    let mut seen: HashSet<usize> = HashSet::new();
    let mut queue = Vec::new();
    for s in seeds {
        if let Some((k, _)) = s.leading() {
            if seen.insert(k) {
                queue.push(k);
            }
        }
    }
    while let Some(k) = queue.pop() {
        for g in gens {
            let y = v.apply(g, k);
            if y.len() != 1 {
                return None;
            }
            let (j, _) = y.leading().expect("one entry");
            if seen.insert(j) {
                queue.push(j);
            }
        }
    }
    Some(seen)
}

/// Character of `S_n` on an invariant span.
fn span_character<V: FiModule + ?Sized>(v: &V, n: usize, span: &OrbitSpan) -> ClassFunction {
    let reps: Vec<Injection> = partitions_of(n)
        .into_iter()
        .map(|mu| Injection::from_permutation(&Permutation::representative(&CycleType::new(mu))))
        .collect();
    let values = match span {
        OrbitSpan::Indices(set) => reps
            .iter()
            .map(|f| set.iter().map(|&k| v.apply(f, k).get(k)).sum())
            .collect(),
        OrbitSpan::General(basis) => {
            let coords = SpanCoordinates::new(basis.clone()).expect("independent");
            reps.iter()
                .map(|f| {
                    let mut t = BigRational::zero();
                    for (j, b) in basis.iter().enumerate() {
                        let c = coords.coordinates(&apply_vector(v, f, b)).expect("span is invariant");
                        t += c.get(j);
                    }
                    t
                })
                .collect()
        }
    };
    ClassFunction::new(n, values).expect("one value per class")
}

/// Fewest elements whose `S_n`-orbits span a module with the given decomposition:
/// the largest `ceil(multiplicity / dimension)` over its irreducibles.
fn minimal_generators(d: &Decomposition) -> usize {
    d.iter()
        .map(|(label, m)| {
            let dim = dim_irrep(&label);
            let m = BigInt::from(m);
            let q: BigInt = (&m + &dim - 1u32) / &dim;
            q.try_into().expect("small")
        })
        .max()
        .unwrap_or(0)
}

/// Dimension of new generators needed at each level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenerationProfile {
    pub name: String,
    pub dims: Vec<usize>,
    /// `dim V_n` minus the dimension of the span of images of all smaller `V_m`.
    pub quotient_dims: Vec<usize>,
    /// Fewest new elements at level `n` which, with all images of smaller levels,
    /// generate `V_n` under `S_n`.
    pub new_generators: Vec<usize>,
}

impl GenerationProfile {
    /// Size of a minimal generating set within the truncation.
    pub fn generator_count(&self) -> usize {
        self.new_generators.iter().sum()
    }

    /// Largest `n` needing a new generator.
    pub fn generation_degree(&self) -> Option<usize> {
        self.new_generators.iter().rposition(|&g| g > 0)
    }

    /// True when the last `tail` levels need no new generators.
    pub fn eventually_zero(&self, tail: usize) -> bool {
        self.new_generators.len() >= tail && self.new_generators.iter().rev().take(tail).all(|&g| g == 0)
    }
}

/// Checks `V(g f) = V(g) V(f)` on the generating injections around level `n`.
fn local_functoriality<V: FiModule + ?Sized>(v: &V, n: usize) -> Result<()> {
    let mut pairs = Vec::new();
    for k in 0..n.saturating_sub(1) {
        let s = Injection::adjacent(n, k);
        pairs.push((s.clone(), s.clone()));
        if n < v.n_max() {
            pairs.push((Injection::standard(n, n + 1), s));
        }
    }
    if n >= 1 {
        pairs.push((Injection::standard(n, n), Injection::standard(n - 1, n)));
    }
    for (g, f) in pairs {
        compare(v, &g, &f)?;
    }
    Ok(())
}

fn compare<V: FiModule + ?Sized>(v: &V, g: &Injection, f: &Injection) -> Result<()> {
    let gf = g.compose(f);
    for idx in 0..v.dim(f.source()) {
        let direct = v.apply(&gf, idx);
        let stepwise = apply_vector(v, g, &v.apply(f, idx));
        if direct != stepwise {
            return Err(Error::Data(format!(
                "{}: V(g f) differs from V(g) V(f) on basis vector {idx} for f = {f}, g = {g}",
                v.name()
            )));
        }
    }
    Ok(())
}

/// Levels above this dimension skip the local functoriality spot check.
const LOCAL_CHECK_LIMIT: usize = 2000;

pub fn generation_profile<V: FiModule + ?Sized>(v: &V) -> Result<GenerationProfile> {
    let dims: Vec<usize> = (0..=v.n_max()).map(|n| v.dim(n)).collect();
    let mut quotient_dims = Vec::with_capacity(dims.len());
    let mut new_generators = Vec::with_capacity(dims.len());
    for n in 0..=v.n_max() {
        if dims[n] <= LOCAL_CHECK_LIMIT {
            local_functoriality(v, n)?;
        }
        let span = if n == 0 {
            OrbitSpan::Indices(HashSet::new())
        } else {
            orbit_span(v, n, matrix(v, &Injection::standard(n - 1, n)))
        };
        quotient_dims.push(dims[n] - span.dim());
        if span.dim() == dims[n] {
            new_generators.push(0);
            continue;
        }
        let quotient = &v.character(n) - &span_character(v, n, &span);
        new_generators.push(minimal_generators(&decompose(&quotient)?));
    }
    Ok(GenerationProfile {
        name: v.name(),
        dims,
        quotient_dims,
        new_generators,
    })
}

/// Exhaustive functoriality for targets up to `exhaustive_max`, then `samples` random
/// composable pairs per level above. Returns the number of pairs checked.
pub fn check_functoriality<V: FiModule + ?Sized>(
    v: &V,
    exhaustive_max: usize,
    samples: usize,
    seed: u64,
) -> Result<usize> {
    let mut checked = 0;
    for n in 0..=v.n_max() {
        for idx in 0..v.dim(n) {
            if v.apply(&Injection::identity(n), idx) != SparseVec::unit(idx) {
                return Err(Error::Data(format!("{}: identity acts nontrivially at n = {n}", v.name())));
            }
        }
    }
    for c in 0..=exhaustive_max.min(v.n_max()) {
        for b in 0..=c {
            let gs = Injection::all(b, c);
            for a in 0..=b {
                let fs = Injection::all(a, b);
                for g in &gs {
                    for f in &fs {
                        compare(v, g, f)?;
                        checked += 1;
                    }
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let random_injection = |rng: &mut ChaCha8Rng, m: usize, n: usize| {
        let mut pts: Vec<usize> = (0..n).collect();
        for i in 0..m {
            let j = rng.gen_range(i..n);
            pts.swap(i, j);
        }
        pts.truncate(m);
        Injection::new(n, pts).expect("distinct points")
    };
    for c in exhaustive_max + 1..=v.n_max() {
        for _ in 0..samples {
            let b = rng.gen_range(0..=c);
            let a = rng.gen_range(0..=b);
            let f = random_injection(&mut rng, a, b);
            let g = random_injection(&mut rng, b, c);
            compare(v, &g, &f)?;
            checked += 1;
        }
    }
    Ok(checked)
}

/// One level of a representation stability check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepStabRow {
    pub n: usize,
    pub dim: usize,
    /// Whether `V_n -> V_{n+1}` is injective; `None` past the truncation.
    pub injective: Option<bool>,
    /// Whether the `S_{n+1}`-orbit of the image spans `V_{n+1}`; `None` past the truncation.
    pub surjective: Option<bool>,
    pub decomposition: Decomposition,
    /// Whether the multiplicities at `n` persist through the end of the window.
    pub multiplicities_constant: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepStabReport {
    pub name: String,
    pub window: (usize, usize),
    pub rows: Vec<RepStabRow>,
    /// For each irreducible seen, the first `n` from which its multiplicity is constant.
    pub label_onsets: BTreeMap<Partition, usize>,
    /// Smallest `n` below the window end from which multiplicities are constant.
    pub multiplicity_onset: Option<usize>,
    /// Smallest `n` below the window end from which all three conditions hold.
    pub onset: Option<usize>,
}

impl RepStabReport {
    /// Candidate onsets are the window points with at least one later point to compare.
    pub fn candidate_onsets(&self) -> impl Iterator<Item = usize> + '_ {
        self.window.0..self.window.1
    }

    pub fn row(&self, n: usize) -> Option<&RepStabRow> {
        self.rows.iter().find(|r| r.n == n)
    }
}

pub fn check_repstab<V: FiModule + ?Sized>(v: &V, window: RangeInclusive<usize>) -> Result<RepStabReport> {
    let (lo, hi) = (*window.start(), *window.end());
    if lo > hi || hi > v.n_max() {
        return Err(Error::Argument(format!(
            "window {lo}..={hi} must lie within the truncation n <= {}",
            v.n_max()
        )));
    }
    let mut rows = Vec::new();
    for n in lo..=hi {
        let decomposition = decompose(&v.character(n))?;
        let (injective, surjective) = if n < v.n_max() {
            let images = matrix(v, &Injection::standard(n, n + 1));
            let inj = rank(images.clone()) == v.dim(n);
            let sur = orbit_span_dim(v, n + 1, images) == v.dim(n + 1);
            (Some(inj), Some(sur))
        } else {
            (None, None)
        };
        rows.push(RepStabRow {
            n,
            dim: v.dim(n),
            injective,
            surjective,
            decomposition,
            multiplicities_constant: false,
        });
    }
    for k in 0..rows.len() {
        let here = rows[k].decomposition.unpadded().clone();
        rows[k].multiplicities_constant = rows[k..].iter().all(|r| *r.decomposition.unpadded() == here);
    }
    let labels: BTreeSet<Partition> = rows
        .iter()
        .flat_map(|r| r.decomposition.unpadded().keys().cloned())
        .collect();
    let label_onsets = labels
        .into_iter()
        .map(|lambda| {
            let values: Vec<u64> = rows.iter().map(|r| r.decomposition.multiplicity(&lambda)).collect();
            let last = *values.last().expect("nonempty window");
            let mut start = values.len() - 1;
            while start > 0 && values[start - 1] == last {
                start -= 1;
            }
            (lambda, rows[start].n)
        })
        .collect();
    let holds_from = |k: usize, all: bool| {
        rows[k].multiplicities_constant
            && (!all
                || rows[k..]
                    .iter()
                    .all(|r| r.injective != Some(false) && r.surjective != Some(false)))
    };
    let candidates = rows.len().saturating_sub(1);
    let multiplicity_onset = (0..candidates).find(|&k| holds_from(k, false)).map(|k| rows[k].n);
    let onset = (0..candidates).find(|&k| holds_from(k, true)).map(|k| rows[k].n);
    Ok(RepStabReport {
        name: v.name(),
        window: (lo, hi),
        rows,
        label_onsets,
        multiplicity_onset,
        onset,
    })
}

/// Comparison of `V_n` with the colimit of `V(S)` over subsets `S` of `[n]` with `|S| <= N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColimitReport {
    pub big_n: usize,
    pub n: usize,
    pub colimit_dim: usize,
    pub v_dim: usize,
    /// Rank of the induced map from the colimit to `V_n`.
    pub image_rank: usize,
    pub isomorphic: bool,
}

fn subsets_up_to(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    let mut frontier = vec![Vec::new()];
    for _ in 0..k {
        let mut next = Vec::new();
        for s in &frontier {
            let start = s.last().map_or(0, |&x: &usize| x + 1);
            for x in start..n {
                let mut t: Vec<usize> = s.clone();
                t.push(x);
                next.push(t);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Builds the colimit as the cokernel of the difference map over covering inclusions
/// `S < T` and compares it with `V_n` through the maps induced by `S -> [n]`.
pub fn colimit_check<V: FiModule + ?Sized>(v: &V, big_n: usize, n: usize) -> Result<ColimitReport> {
    if big_n > n {
        return Err(Error::Argument(format!("N = {big_n} exceeds n = {n}")));
    }
    if n > v.n_max() {
        return Err(Error::Argument(format!("n = {n} is beyond the truncation {}", v.n_max())));
    }
    let subsets = subsets_up_to(n, big_n);
    let mut offsets = BTreeMap::new();
    let mut total = 0;
    for s in &subsets {
        offsets.insert(s.clone(), total);
        total += v.dim(s.len());
    }
    let mut relations = Echelon::new();
    for s in &subsets {
        if s.len() == big_n {
            continue;
        }
        for t_new in (0..n).filter(|x| !s.contains(x)) {
            let mut t = s.clone();
            t.push(t_new);
            t.sort_unstable();
            let positions: Vec<usize> = s.iter().map(|x| t.binary_search(x).expect("subset")).collect();
            let inc = Injection::new(t.len(), positions).expect("injective");
            let (os, ot) = (offsets[s], offsets[&t]);
            for idx in 0..v.dim(s.len()) {
                let mut rel = SparseVec::unit(os + idx);
                let img = v.apply(&inc, idx);
                for (j, c) in img.iter() {
                    rel.add_at(ot + j, &-c.clone());
                }
                relations.add(rel);
            }
        }
    }
    let colimit_dim = total - relations.rank();
    let mut image = Echelon::new();
    for s in &subsets {
        let j = Injection::new(n, s.clone()).expect("subset");
        for idx in 0..v.dim(s.len()) {
            image.add(v.apply(&j, idx));
        }
    }
    let v_dim = v.dim(n);
    let image_rank = image.rank();
    Ok(ColimitReport {
        big_n,
        n,
        colimit_dim,
        v_dim,
        image_rank,
        isomorphic: colimit_dim == v_dim && image_rank == v_dim,
    })
}

/// Stable decomposition of `V(lambda)_n (x) V(mu)_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MurnaghanReport {
    pub lambda: Partition,
    pub mu: Partition,
    pub table: BTreeMap<Partition, u64>,
    pub onset: usize,
    pub trace: Vec<(usize, BTreeMap<Partition, u64>)>,
}

pub fn murnaghan_check(lambda: &Partition, mu: &Partition, window: RangeInclusive<usize>) -> Result<MurnaghanReport> {
    let lo = *window.start();
    pad(lambda, lo)?;
    pad(mu, lo)?;
    let trace: Vec<(usize, BTreeMap<Partition, u64>)> = window
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|n| {
            let a = ClassFunction::irreducible(&pad(lambda, n)?);
            let b = ClassFunction::irreducible(&pad(mu, n)?);
            Ok((n, decompose(&(&a * &b))?.unpadded().clone()))
        })
        .collect::<Result<_>>()?;
    let stable = detect_stable(trace, MIN_RUN)?;
    Ok(MurnaghanReport {
        lambda: lambda.clone(),
        mu: mu.clone(),
        table: stable.value,
        onset: stable.onset,
        trace: stable.trace,
    })
}
