use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use super::{apply_vector, rational, FiModule, Injection};
use crate::error::{Error, Result};
use crate::linalg::{kernel, SparseVec, SpanCoordinates};
use crate::osconf::{character_conf, nbc_basis, straighten, OSGenerator, OSMonomial};
use crate::symcore::{pad, ClassFunction, Partition, Permutation};

fn levels<T>(n_max: usize) -> Vec<OnceLock<T>> {
    (0..=n_max).map(|_| OnceLock::new()).collect()
}

fn check_level(name: &str, n_max: usize, n: usize) {
    assert!(n <= n_max, "{name} is truncated at n = {n_max}, asked for {n}");
}

// ---------------------------------------------------------------------------

struct PolyLevel {
    monomials: Vec<Vec<u16>>,
    index: HashMap<Vec<u16>, usize>,
}

/// Homogeneous polynomials of degree `d` in `x_1, ..., x_n`; injections relabel variables.
pub struct PolyHomogeneous {
    d: usize,
    n_max: usize,
    levels: Vec<OnceLock<PolyLevel>>,
}

impl PolyHomogeneous {
    pub fn new(d: usize, n_max: usize) -> Self {
        PolyHomogeneous {
            d,
            n_max,
            levels: levels(n_max),
        }
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    fn level(&self, n: usize) -> &PolyLevel {
        check_level(&self.name(), self.n_max, n);
        self.levels[n].get_or_init(|| {
            let mut monomials = Vec::new();
            let mut cur = vec![0u16; n];
            fn rec(k: usize, left: usize, cur: &mut Vec<u16>, out: &mut Vec<Vec<u16>>) {
                if k + 1 == cur.len() {
                    cur[k] = left as u16;
                    out.push(cur.clone());
                    return;
                }
                for e in (0..=left).rev() {
                    cur[k] = e as u16;
                    rec(k + 1, left - e, cur, out);
                }
            }
            if n == 0 {
                if self.d == 0 {
                    monomials.push(Vec::new());
                }
            } else {
                rec(0, self.d, &mut cur, &mut monomials);
            }
            let index = monomials.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
            PolyLevel { monomials, index }
        })
    }

    fn index_of(&self, n: usize, exps: &[u16]) -> usize {
        self.level(n).index[exps]
    }

    fn monomial(&self, n: usize, idx: usize) -> &[u16] {
        &self.level(n).monomials[idx]
    }
}

impl FiModule for PolyHomogeneous {
    fn name(&self) -> String {
        format!("poly_homogeneous({})", self.d)
    }

    fn n_max(&self) -> usize {
        self.n_max
    }

    fn dim(&self, n: usize) -> usize {
        self.level(n).monomials.len()
    }

    fn apply(&self, f: &Injection, idx: usize) -> SparseVec {
        let src = self.monomial(f.source(), idx);
        let mut out = vec![0u16; f.target()];
        for (k, &e) in src.iter().enumerate() {
            out[f.apply(k)] = e;
        }
        SparseVec::unit(self.index_of(f.target(), &out))
    }

    fn basis_label(&self, n: usize, idx: usize) -> String {
        let m = self.monomial(n, idx);
        let factors: Vec<String> = m
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(k, &e)| if e == 1 { format!("x{}", k + 1) } else { format!("x{}^{e}", k + 1) })
            .collect();
        if factors.is_empty() {
            "1".into()
        } else {
            factors.join("*")
        }
    }
}

// ---------------------------------------------------------------------------

struct ConfLevel {
    basis: Vec<OSMonomial>,
    index: HashMap<OSMonomial, usize>,
}

/// `H^i` of the configuration space of `n` points in the plane, on the broken-circuit basis.
/// Injections act by `omega_ab -> omega_{f(a) f(b)}`.
pub struct ConfCohomology {
    i: usize,
    n_max: usize,
    levels: Vec<OnceLock<ConfLevel>>,
}

impl ConfCohomology {
    pub fn new(i: usize, n_max: usize) -> Self {
        ConfCohomology {
            i,
            n_max,
            levels: levels(n_max),
        }
    }

    fn level(&self, n: usize) -> &ConfLevel {
        check_level(&self.name(), self.n_max, n);
        self.levels[n].get_or_init(|| {
            let basis = nbc_basis(n, self.i);
            let index = basis.iter().enumerate().map(|(k, m)| (m.clone(), k)).collect();
            ConfLevel { basis, index }
        })
    }
}

impl FiModule for ConfCohomology {
    fn name(&self) -> String {
        format!("conf_cohomology({})", self.i)
    }

    fn n_max(&self) -> usize {
        self.n_max
    }

    fn dim(&self, n: usize) -> usize {
        self.level(n).basis.len()
    }

    fn apply(&self, f: &Injection, idx: usize) -> SparseVec {
        let m = &self.level(f.source()).basis[idx];
        let word: Vec<OSGenerator> = m
            .factors()
            .iter()
            .map(|g| OSGenerator::new(f.apply(g.lower() - 1) + 1, f.apply(g.upper() - 1) + 1))
            .collect();
        let target = self.level(f.target());
        SparseVec::from_entries(
            straighten(&word, f.target())
                .terms()
                .iter()
                .map(|(t, c)| (target.index[t], c.clone())),
        )
    }

    fn basis_label(&self, n: usize, idx: usize) -> String {
        let m = &self.level(n).basis[idx];
        if m.degree() == 0 {
            return "1".into();
        }
        m.factors().iter().map(|g| g.to_string()).collect::<Vec<_>>().join("*")
    }

    fn character(&self, n: usize) -> ClassFunction {
        character_conf(n, self.i)
    }
}

// ---------------------------------------------------------------------------

type Tabloid = Vec<Vec<u8>>;

struct SpechtLevel {
    shape: Option<Partition>,
    tableaux: Vec<Vec<Vec<u8>>>,
    tabloids: Mutex<HashMap<Tabloid, usize>>,
    coords: Option<SpanCoordinates>,
}

/// The sequence `V(lambda)_n`, realized as Specht modules spanned by polytabloids.
///
/// An injection relabels the entries of a tableau and places the new points at the end of
/// the first row; the columns, and hence the polytabloid's signs, are unchanged. Below
/// `n = |lambda| + lambda_1` the space is zero.
pub struct IrrepSequence {
    lambda: Partition,
    n_max: usize,
    levels: Vec<OnceLock<SpechtLevel>>,
}

impl IrrepSequence {
    pub fn new(lambda: Partition, n_max: usize) -> Result<Self> {
        let min = lambda.size() + lambda.first() as usize;
        if n_max < min {
            return Err(Error::Padding {
                lambda: lambda.to_string(),
                n: n_max,
                min,
            });
        }
        Ok(IrrepSequence {
            lambda,
            n_max,
            levels: levels(n_max),
        })
    }

    fn level(&self, n: usize) -> &SpechtLevel {
        check_level(&self.name(), self.n_max, n);
        self.levels[n].get_or_init(|| {
            let Ok(shape) = pad(&self.lambda, n) else {
                return SpechtLevel {
                    shape: None,
                    tableaux: Vec::new(),
                    tabloids: Mutex::new(HashMap::new()),
                    coords: None,
                };
            };
            let tableaux = standard_tableaux(&shape);
            let level = SpechtLevel {
                shape: Some(shape),
                tableaux,
                tabloids: Mutex::new(HashMap::new()),
                coords: None,
            };
            let vecs: Vec<SparseVec> = level.tableaux.iter().map(|t| polytabloid(t, &level.tabloids)).collect();
            SpechtLevel {
                coords: Some(SpanCoordinates::new(vecs).expect("standard polytabloids are independent")),
                ..level
            }
        })
    }
}

fn standard_tableaux(shape: &Partition) -> Vec<Vec<Vec<u8>>> {
    let rows: Vec<usize> = shape.parts().iter().map(|&p| p as usize).collect();
    let n = shape.size();
    let mut out = Vec::new();
    let mut t: Vec<Vec<u8>> = vec![Vec::new(); rows.len()];
    fn rec(k: usize, n: usize, rows: &[usize], t: &mut Vec<Vec<u8>>, out: &mut Vec<Vec<Vec<u8>>>) {
        if k == n {
            out.push(t.clone());
            return;
        }
        for r in 0..rows.len() {
            if t[r].len() < rows[r] && (r == 0 || t[r].len() < t[r - 1].len()) {
                t[r].push(k as u8);
                rec(k + 1, n, rows, t, out);
                t[r].pop();
            }
        }
    }
    rec(0, n, &rows, &mut t, &mut out);
    out
}

/// `sum_{pi in column group} sign(pi) {pi T}` in tabloid coordinates.
fn polytabloid(t: &[Vec<u8>], interner: &Mutex<HashMap<Tabloid, usize>>) -> SparseVec {
    let width = t.first().map_or(0, Vec::len);
    let columns: Vec<Vec<usize>> = (0..width)
        .map(|c| (0..t.len()).filter(|&r| t[r].len() > c).collect())
        .filter(|rows: &Vec<usize>| rows.len() > 1)
        .collect();
    let col_index: Vec<usize> = (0..width).filter(|&c| t.iter().filter(|row| row.len() > c).count() > 1).collect();
    let perms: Vec<Vec<(Permutation, i32)>> = columns
        .iter()
        .map(|rows| {
            Permutation::all(rows.len())
                .into_iter()
                .map(|p| {
                    let s = p.cycle_type().sign();
                    (p, s)
                })
                .collect()
        })
        .collect();
    let mut out = SparseVec::new();
    let mut choice = vec![0usize; columns.len()];
    loop {
        let mut u: Vec<Vec<u8>> = t.to_vec();
        let mut sign = 1;
        for (ci, rows) in columns.iter().enumerate() {
            let (p, s) = &perms[ci][choice[ci]];
            sign *= s;
            let c = col_index[ci];
            for (k, &r) in rows.iter().enumerate() {
                u[r][c] = t[rows[p.apply(k)]][c];
            }
        }
        let key: Tabloid = u[1.min(u.len())..]
            .iter()
            .map(|row| {
                let mut r = row.clone();
                r.sort_unstable();
                r
            })
            .collect();
        let idx = {
            let mut map = interner.lock().expect("tabloid interner");
            let next = map.len();
            *map.entry(key).or_insert(next)
        };
        out.add_at(idx, &rational(sign as i64));
        // next combination
        let mut k = 0;
        loop {
            if k == choice.len() {
                return out;
            }
            choice[k] += 1;
            if choice[k] < perms[k].len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}

impl FiModule for IrrepSequence {
    fn name(&self) -> String {
        format!("irrep_sequence({})", self.lambda)
    }

    fn n_max(&self) -> usize {
        self.n_max
    }

    fn dim(&self, n: usize) -> usize {
        self.level(n).tableaux.len()
    }

    fn apply(&self, f: &Injection, idx: usize) -> SparseVec {
        let src = &self.level(f.source()).tableaux[idx];
        let mut t: Vec<Vec<u8>> = src
            .iter()
            .map(|row| row.iter().map(|&x| f.apply(x as usize) as u8).collect())
            .collect();
        let ext = f.extend_to_permutation();
        let fresh = ext[f.source()..].iter().map(|&x| x as u8);
        if t.is_empty() {
            t.push(Vec::new());
        }
        t[0].extend(fresh);
        let target = self.level(f.target());
        let v = polytabloid(&t, &target.tabloids);
        target
            .coords
            .as_ref()
            .expect("nonzero target")
            .coordinates(&v)
            .expect("polytabloids lie in the span of the standard ones")
    }

    fn basis_label(&self, n: usize, idx: usize) -> String {
        let t = &self.level(n).tableaux[idx];
        t.iter()
            .map(|row| row.iter().map(|x| (x + 1).to_string()).collect::<Vec<_>>().join(" "))
            .collect::<Vec<_>>()
            .join(" / ")
    }

    fn character(&self, n: usize) -> ClassFunction {
        match &self.level(n).shape {
            Some(shape) => ClassFunction::irreducible(shape),
            None => ClassFunction::zero(n),
        }
    }
}

// ---------------------------------------------------------------------------

/// Pointwise tensor product with the diagonal action.
pub struct Tensor {
    a: Arc<dyn FiModule>,
    b: Arc<dyn FiModule>,
}

impl Tensor {
    pub fn new(a: Arc<dyn FiModule>, b: Arc<dyn FiModule>) -> Self {
        Tensor { a, b }
    }
}

impl FiModule for Tensor {
    fn name(&self) -> String {
        format!("tensor({}, {})", self.a.name(), self.b.name())
    }

    fn n_max(&self) -> usize {
        self.a.n_max().min(self.b.n_max())
    }

    fn dim(&self, n: usize) -> usize {
        self.a.dim(n) * self.b.dim(n)
    }

    fn apply(&self, f: &Injection, idx: usize) -> SparseVec {
        let db = self.b.dim(f.source());
        let tb = self.b.dim(f.target());
        let x = self.a.apply(f, idx / db);
        let y = self.b.apply(f, idx % db);
        let mut out = SparseVec::new();
        for (i, c) in x.iter() {
            for (j, d) in y.iter() {
                out.add_at(i * tb + j, &(c * d));
            }
        }
        out
    }

    fn basis_label(&self, n: usize, idx: usize) -> String {
        let db = self.b.dim(n);
        format!("{} (x) {}", self.a.basis_label(n, idx / db), self.b.basis_label(n, idx % db))
    }
}

/// The exterior algebra of `C^n`, all degrees together. Basis vectors are indexed by the
/// bitmask of the wedge factors.
pub struct ExteriorAlgebra {
    n_max: usize,
}

impl ExteriorAlgebra {
    pub fn new(n_max: usize) -> Result<Self> {
        if n_max > 20 {
            return Err(Error::CostGuard(format!("exterior algebra up to n = {n_max} has 2^{n_max} basis vectors")));
        }
        Ok(ExteriorAlgebra { n_max })
    }
}

impl FiModule for ExteriorAlgebra {
    fn name(&self) -> String {
        "exterior".into()
    }

    fn n_max(&self) -> usize {
        self.n_max
    }

    fn dim(&self, n: usize) -> usize {
        check_level("exterior", self.n_max, n);
        1 << n
    }

    fn apply(&self, f: &Injection, idx: usize) -> SparseVec {
        let images: Vec<usize> = (0..f.source()).filter(|k| idx >> k & 1 == 1).map(|k| f.apply(k)).collect();
        let mut inversions = 0;
        for a in 0..images.len() {
            for b in a + 1..images.len() {
                if images[a] > images[b] {
                    inversions += 1;
                }
            }
        }
        let mask = images.iter().fold(0usize, |m, &x| m | 1 << x);
        SparseVec::from_entries([(mask, rational(if inversions % 2 == 0 { 1 } else { -1 }))])
    }

    fn basis_label(&self, n: usize, idx: usize) -> String {
        let factors: Vec<String> = (0..n).filter(|k| idx >> k & 1 == 1).map(|k| format!("e{}", k + 1)).collect();
        if factors.is_empty() {
            "1".into()
        } else {
            factors.join("^")
        }
    }
}

// ---------------------------------------------------------------------------

/// A natural transformation between FI-modules.
pub trait FiMap: Send + Sync {
    fn name(&self) -> String;
    fn source(&self) -> Arc<dyn FiModule>;
    fn target(&self) -> Arc<dyn FiModule>;
    /// Images of the source basis vectors at level `n`.
    fn matrix(&self, n: usize) -> Vec<SparseVec>;
}

/// `sum_k d/dx_k` from degree `d` to degree `d - 1`. It commutes with relabeling variables.
pub struct SumOfPartials {
    source: Arc<PolyHomogeneous>,
    target: Arc<PolyHomogeneous>,
}

impl SumOfPartials {
    pub fn new(d: usize, n_max: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::Argument("degree must be positive".into()));
        }
        Ok(SumOfPartials {
            source: Arc::new(PolyHomogeneous::new(d, n_max)),
            target: Arc::new(PolyHomogeneous::new(d - 1, n_max)),
        })
    }
}

impl FiMap for SumOfPartials {
    fn name(&self) -> String {
        format!("partials({})", self.source.degree())
    }

    fn source(&self) -> Arc<dyn FiModule> {
        self.source.clone()
    }

    fn target(&self) -> Arc<dyn FiModule> {
        self.target.clone()
    }

    fn matrix(&self, n: usize) -> Vec<SparseVec> {
        (0..self.source.dim(n))
            .map(|idx| {
                let m = self.source.monomial(n, idx).to_vec();
                let mut out = SparseVec::new();
                for k in 0..n {
                    if m[k] > 0 {
                        let mut e = m.clone();
                        e[k] -= 1;
                        out.add_at(self.target.index_of(n, &e), &rational(m[k] as i64));
                    }
                }
                out
            })
            .collect()
    }
}

struct KernelLevel {
    basis: Vec<SparseVec>,
    coords: SpanCoordinates,
}

/// The kernel of a map of FI-modules, as a sub-FI-module of its source.
pub struct KernelModule {
    map: Arc<dyn FiMap>,
    source: Arc<dyn FiModule>,
    levels: Vec<OnceLock<KernelLevel>>,
}

impl KernelModule {
    pub fn new(map: Arc<dyn FiMap>) -> Self {
        let source = map.source();
        let n_max = source.n_max().min(map.target().n_max());
        KernelModule {
            map,
            source,
            levels: levels(n_max),
        }
    }

    fn level(&self, n: usize) -> &KernelLevel {
        self.levels[n].get_or_init(|| {
            let basis = kernel(self.map.matrix(n));
            let coords = SpanCoordinates::new(basis.clone()).expect("kernel basis is independent");
            KernelLevel { basis, coords }
        })
    }

    /// The kernel basis at level `n`, in source coordinates.
    pub fn basis(&self, n: usize) -> &[SparseVec] {
        &self.level(n).basis
    }
}

impl FiModule for KernelModule {
    fn name(&self) -> String {
        format!("ker({})", self.map.name())
    }

    fn n_max(&self) -> usize {
        self.levels.len() - 1
    }

    fn dim(&self, n: usize) -> usize {
        self.level(n).basis.len()
    }

    fn apply(&self, f: &Injection, idx: usize) -> SparseVec {
        let v = &self.level(f.source()).basis[idx];
        let w = apply_vector(self.source.as_ref(), f, v);
        self.level(f.target())
            .coords
            .coordinates(&w)
            .expect("the kernel of a natural map is preserved by injections")
    }
}

// ---------------------------------------------------------------------------

fn split_call(s: &str) -> Result<(&str, &str)> {
    let s = s.trim();
    match s.find('(') {
        Some(open) if s.ends_with(')') => Ok((s[..open].trim(), &s[open + 1..s.len() - 1])),
        _ => Ok((s, "")),
    }
}

fn split_top_level(s: &str) -> Vec<&str> {
    let mut depth = 0;
    let mut parts = Vec::new();
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(s[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(s[start..].trim());
    parts
}

fn parse_usize(s: &str, what: &str) -> Result<usize> {
    s.trim()
        .parse()
        .map_err(|_| Error::Parse(format!("expected a nonnegative integer for {what}, got {s:?}")))
}

/// Parses `poly_homogeneous(d)`, `conf_cohomology(i)`, `irrep_sequence(lambda)`,
/// `exterior`, `ker_partials(d)` or `tensor(A, B)`.
pub fn parse_builtin(spec: &str, n_max: usize) -> Result<Arc<dyn FiModule>> {
    let (name, args) = split_call(spec)?;
    Ok(match name {
        "poly_homogeneous" | "poly" => Arc::new(PolyHomogeneous::new(parse_usize(args, "degree")?, n_max)),
        "conf_cohomology" | "conf" => Arc::new(ConfCohomology::new(parse_usize(args, "degree")?, n_max)),
        "irrep_sequence" | "irrep" => Arc::new(IrrepSequence::new(args.parse()?, n_max)?),
        "exterior" => Arc::new(ExteriorAlgebra::new(n_max)?),
        "ker_partials" => Arc::new(KernelModule::new(Arc::new(SumOfPartials::new(
            parse_usize(args, "degree")?,
            n_max,
        )?))),
        "tensor" => {
            let parts = split_top_level(args);
            if parts.len() != 2 {
                return Err(Error::Parse(format!("tensor takes two modules, got {args:?}")));
            }
            Arc::new(Tensor::new(parse_builtin(parts[0], n_max)?, parse_builtin(parts[1], n_max)?))
        }
        other => return Err(Error::Argument(format!("unknown FI-module {other:?}"))),
    })
}
