//! Monic square-free polynomials over prime fields `F_q`, their factor-degree statistics
//! and weighted totals, checked against the cohomology of configuration spaces.
//!
//! The factor degrees `d_i(f)` of a square-free `f` are the cycle counts of the Frobenius
//! permutation of its roots, so any class-function statistic is a function of them.
//! Enumeration runs once per `(n, q)` and records how many square-free polynomials have
//! each factor-degree type; every statistic is then a weighted sum over that histogram.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use once_cell::sync::Lazy;
use rayon::prelude::*;

use crate::charpoly::{stable_inner_product, CharacterPolynomial};
use crate::error::{Error, Result};
use crate::osconf::conf_traces_filtered;
use crate::stabilization::{detect_stable, MIN_RUN};
use crate::symcore::{character_table, factorial, ClassFunction, CycleType, Partition};

pub fn is_prime(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= q {
        if q % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn check_field(q: u64) -> Result<()> {
    if !is_prime(q) {
        return Err(Error::Argument(format!(
            "q = {q} is not prime; only prime fields are supported"
        )));
    }
    if q > 1 << 16 {
        return Err(Error::Argument(format!("q = {q} is too large")));
    }
    Ok(())
}

/// A monic polynomial over `F_q`, coefficients stored from the constant term up.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FqPoly {
    q: u32,
    coeffs: Vec<u32>,
}

impl FqPoly {
    /// Builds a monic polynomial from its low coefficients `a_0, ..., a_{n-1}`.
    pub fn monic(q: u64, low: &[u64]) -> Result<Self> {
        check_field(q)?;
        let mut coeffs: Vec<u32> = low.iter().map(|&c| (c % q) as u32).collect();
        coeffs.push(1);
        Ok(FqPoly { q: q as u32, coeffs })
    }

    pub fn q(&self) -> u64 {
        self.q as u64
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    fn dense(&self) -> Dense {
        Dense::from_slice(&self.coeffs)
    }
}

impl fmt::Display for FqPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (k, c) {
                (0, _) => write!(f, "{c}")?,
                (1, 1) => write!(f, "x")?,
                (1, _) => write!(f, "{c}*x")?,
                (_, 1) => write!(f, "x^{k}")?,
                _ => write!(f, "{c}*x^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for FqPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} (mod {})", self.q)
    }
}

/// Every monic polynomial of degree `n` over `F_q`, streamed.
pub fn enumerate_monic(n: usize, q: u64) -> Result<impl Iterator<Item = FqPoly>> {
    check_field(q)?;
    let total = (q as u128).pow(n as u32);
    if total > u64::MAX as u128 {
        return Err(Error::CostGuard(format!("enumerating {q}^{n} polynomials")));
    }
    Ok((0..total as u64).map(move |idx| poly_at(n, q, idx)))
}

fn poly_at(n: usize, q: u64, mut idx: u64) -> FqPoly {
    let mut coeffs = Vec::with_capacity(n + 1);
    for _ in 0..n {
        coeffs.push((idx % q) as u32);
        idx /= q;
    }
    coeffs.push(1);
    FqPoly { q: q as u32, coeffs }
}

// ---------------------------------------------------------------------------
// fixed-capacity arithmetic

const CAP: usize = 40;

/// Dense polynomial with `len` significant coefficients (`len == 0` is zero).
#[derive(Clone, Copy)]
struct Dense {
    c: [u32; CAP],
    len: usize,
}

impl Dense {
    fn zero() -> Self {
        Dense { c: [0; CAP], len: 0 }
    }

    fn from_slice(s: &[u32]) -> Self {
        assert!(s.len() <= CAP / 2, "degree too large for the fixed-size kernel");
        let mut d = Dense::zero();
        d.c[..s.len()].copy_from_slice(s);
        d.len = s.len();
        d.trim();
        d
    }

    fn x() -> Self {
        Dense::from_slice(&[0, 1])
    }

    fn trim(&mut self) {
        while self.len > 0 && self.c[self.len - 1] == 0 {
            self.len -= 1;
        }
    }

    fn deg(&self) -> isize {
        self.len as isize - 1
    }

    fn lead(&self) -> u32 {
        self.c[self.len - 1]
    }
}

struct Field {
    q: u32,
    inv: Vec<u32>,
}

impl Field {
    fn new(q: u32) -> Self {
        let mut inv = vec![0u32; q as usize];
        for a in 1..q {
            inv[a as usize] = pow_mod(a as u64, q as u64 - 2, q as u64) as u32;
        }
        Field { q, inv }
    }

    #[inline]
    fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.q as u64) as u32
    }

    /// `a mod b` in place.
    fn rem(&self, a: &mut Dense, b: &Dense) {
        let db = b.len;
        let inv = self.inv[b.lead() as usize];
        while a.len >= db {
            let shift = a.len - db;
            let f = self.mul(a.lead(), inv);
            let q = self.q;
            for k in 0..db {
                let t = self.mul(f, b.c[k]);
                let x = &mut a.c[shift + k];
                *x = (*x + q - t) % q;
            }
            a.trim();
        }
    }

    /// Exact quotient `a / b`.
    fn div(&self, a: &Dense, b: &Dense) -> Dense {
        let mut r = *a;
        let mut out = Dense::zero();
        let db = b.len;
        let inv = self.inv[b.lead() as usize];
        if r.len < db {
            return out;
        }
        out.len = r.len - db + 1;
        while r.len >= db {
            let shift = r.len - db;
            let f = self.mul(r.lead(), inv);
            out.c[shift] = f;
            let q = self.q;
            for k in 0..db {
                let t = self.mul(f, b.c[k]);
                let x = &mut r.c[shift + k];
                *x = (*x + q - t) % q;
            }
            r.trim();
        }
        out.trim();
        out
    }

    fn make_monic(&self, a: &mut Dense) {
        if a.len == 0 {
            return;
        }
        let inv = self.inv[a.lead() as usize];
        for k in 0..a.len {
            a.c[k] = self.mul(a.c[k], inv);
        }
    }

    fn gcd(&self, a: &Dense, b: &Dense) -> Dense {
        let (mut a, mut b) = (*a, *b);
        while b.len > 0 {
            self.rem(&mut a, &b);
            std::mem::swap(&mut a, &mut b);
        }
        self.make_monic(&mut a);
        a
    }

    fn mul_mod(&self, a: &Dense, b: &Dense, m: &Dense) -> Dense {
        let mut p = Dense::zero();
        if a.len == 0 || b.len == 0 {
            return p;
        }
        p.len = a.len + b.len - 1;
        let q = self.q as u64;
        for i in 0..a.len {
            if a.c[i] == 0 {
                continue;
            }
            for j in 0..b.len {
                p.c[i + j] = ((p.c[i + j] as u64 + a.c[i] as u64 * b.c[j] as u64) % q) as u32;
            }
        }
        p.trim();
        self.rem(&mut p, m);
        p
    }

    fn pow_mod(&self, base: &Dense, mut e: u64, m: &Dense) -> Dense {
        let mut result = Dense::from_slice(&[1]);
        self.rem(&mut result, m);
        let mut b = *base;
        self.rem(&mut b, m);
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul_mod(&result, &b, m);
            }
            e >>= 1;
            if e > 0 {
                b = self.mul_mod(&b, &b, m);
            }
        }
        result
    }

    fn derivative(&self, a: &Dense) -> Dense {
        let mut d = Dense::zero();
        if a.len <= 1 {
            return d;
        }
        d.len = a.len - 1;
        for k in 1..a.len {
            d.c[k - 1] = self.mul(a.c[k], (k as u64 % self.q as u64) as u32);
        }
        d.trim();
        d
    }

    fn sub(&self, a: &Dense, b: &Dense) -> Dense {
        let mut r = *a;
        r.len = a.len.max(b.len);
        for k in 0..b.len {
            r.c[k] = (r.c[k] + self.q - b.c[k]) % self.q;
        }
        r.trim();
        r
    }

    fn squarefree(&self, f: &Dense) -> bool {
        if f.deg() <= 1 {
            return true;
        }
        let d = self.derivative(f);
        if d.len == 0 {
            return false;
        }
        self.gcd(f, &d).deg() == 0
    }

    /// Distinct-degree factorization of a monic square-free `f`; `d[i]` counts degree-`i` factors.
    fn ddf(&self, f: &Dense) -> Vec<u32> {
        let n = f.deg().max(0) as usize;
        let mut d = vec![0u32; n + 1];
        let mut rest = *f;
        let x = Dense::x();
        let mut h = x;
        let mut i = 1;
        while rest.deg() >= 2 * i as isize {
            // h = x^{q^i} mod rest
            h = self.pow_mod(&h, self.q as u64, &rest);
            let g = self.gcd(&rest, &self.sub(&h, &x));
            if g.deg() > 0 {
                d[i] = (g.deg() as usize / i) as u32;
                rest = self.div(&rest, &g);
                self.rem(&mut h, &rest);
            }
            i += 1;
        }
        if rest.deg() > 0 {
            d[rest.deg() as usize] += 1;
        }
        d
    }
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

/// True iff `gcd(f, f')` is constant.
pub fn is_squarefree(f: &FqPoly) -> bool {
    Field::new(f.q).squarefree(&f.dense())
}

/// Counts of irreducible factors by degree; `d[i]` for `i >= 1`, `d[0] = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FactorStats {
    pub d: Vec<u32>,
}

impl FactorStats {
    /// The Frobenius cycle type: `X_i = d_i`.
    pub fn cycle_type(&self) -> CycleType {
        let mut parts = Vec::new();
        for (i, &c) in self.d.iter().enumerate().skip(1) {
            parts.extend(std::iter::repeat(i as u32).take(c as usize));
        }
        CycleType::new(Partition::from_unsorted(parts))
    }

    /// `(-1)^{n - number of factors}`.
    pub fn sign(&self) -> i32 {
        let n: u32 = self.d.iter().enumerate().map(|(i, &c)| i as u32 * c).sum();
        let k: u32 = self.d.iter().sum();
        if (n - k) % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

/// Distinct-degree factorization of a square-free polynomial.
pub fn factor_degree_stats(f: &FqPoly) -> Result<FactorStats> {
    let field = Field::new(f.q);
    let dense = f.dense();
    if !field.squarefree(&dense) {
        return Err(Error::Precondition(format!("{f:?} is not square-free")));
    }
    Ok(FactorStats { d: field.ddf(&dense) })
}

// ---------------------------------------------------------------------------
// histograms and statistics

/// Number of square-free monic degree-`n` polynomials of each Frobenius cycle type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeHistogram {
    pub n: usize,
    pub q: u64,
    pub counts: BTreeMap<Partition, u64>,
}

impl TypeHistogram {
    pub fn squarefree_count(&self) -> u64 {
        self.counts.values().sum()
    }
}

static HISTOGRAMS: Lazy<Mutex<HashMap<(usize, u64), Arc<TypeHistogram>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

/// Largest `q^n` enumerated before refusing.
pub const ENUMERATION_LIMIT: u64 = 200_000_000;

/// Enumerates all monic polynomials of degree `n` once and tallies cycle types of the
/// square-free ones. Work is split by blocks of consecutive coefficient vectors.
pub fn type_histogram(n: usize, q: u64) -> Result<Arc<TypeHistogram>> {
    check_field(q)?;
    if n == 0 {
        return Err(Error::Argument("degree must be at least 1".into()));
    }
    if n > CAP / 2 - 1 {
        return Err(Error::CostGuard(format!("degree {n} is beyond the enumeration kernel")));
    }
    let total = (q as u128).pow(n as u32);
    if total > ENUMERATION_LIMIT as u128 {
        return Err(Error::CostGuard(format!(
            "enumerating {q}^{n} polynomials exceeds the limit of {ENUMERATION_LIMIT}"
        )));
    }
    if let Some(h) = HISTOGRAMS.lock().expect("histogram lock").get(&(n, q)) {
        return Ok(h.clone());
    }
    let total = total as u64;
    let field = Field::new(q as u32);
    const BLOCK: u64 = 4096;
    let blocks = total.div_ceil(BLOCK);
    let raw: HashMap<Vec<u32>, u64> = (0..blocks)
        .into_par_iter()
        .fold(HashMap::new, |mut acc: HashMap<Vec<u32>, u64>, b| {
            let mut f = Dense::zero();
            f.len = n + 1;
            f.c[n] = 1;
            let start = b * BLOCK;
            let end = (start + BLOCK).min(total);
            // digits of `start`, then increment in place
            let mut idx = start;
            for k in 0..n {
                f.c[k] = (idx % q) as u32;
                idx /= q;
            }
            for _ in start..end {
                if field.squarefree(&f) {
                    *acc.entry(field.ddf(&f)).or_insert(0) += 1;
                }
                for k in 0..n {
                    f.c[k] += 1;
                    if f.c[k] < q as u32 {
                        break;
                    }
                    f.c[k] = 0;
                }
            }
            acc
        })
        .reduce(HashMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            a
        });
    let counts = raw
        .into_iter()
        .map(|(d, c)| (FactorStats { d }.cycle_type().partition().clone(), c))
        .collect();
    let h = Arc::new(TypeHistogram { n, q, counts });
    HISTOGRAMS
        .lock()
        .expect("histogram lock")
        .insert((n, q), h.clone());
    Ok(h)
}

/// A weight on square-free polynomials depending only on the Frobenius cycle type.
#[derive(Clone, Debug)]
pub enum Statistic {
    Polynomial(CharacterPolynomial),
    /// `(-1)^{n - number of irreducible factors}`.
    Sign,
    /// 1 on irreducible polynomials, 0 otherwise.
    NCycle,
    /// An arbitrary class function on `S_n` for the matching `n`.
    Class(ClassFunction),
}

impl Statistic {
    pub fn name(&self) -> String {
        match self {
            Statistic::Polynomial(p) => p.to_string(),
            Statistic::Sign => "sign".into(),
            Statistic::NCycle => "n-cycle".into(),
            Statistic::Class(_) => "class-function".into(),
        }
    }

    pub fn evaluate(&self, mu: &CycleType) -> Result<BigRational> {
        let n = mu.n();
        Ok(match self {
            Statistic::Polynomial(p) => p.evaluate(mu),
            Statistic::Sign => BigRational::from_integer(BigInt::from(mu.sign())),
            Statistic::NCycle => {
                if n > 0 && mu.partition().parts() == [n as u32] {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            }
            Statistic::Class(cf) => {
                if cf.n() != n {
                    return Err(Error::Argument(format!(
                        "class function on S_{} used at n = {n}",
                        cf.n()
                    )));
                }
                cf.get(mu.partition()).cloned().expect("every class present")
            }
        })
    }
}

/// Sum of a statistic over square-free polynomials, and its mean.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StatTotal {
    pub n: usize,
    pub q: u64,
    pub statistic: String,
    pub total: BigRational,
    /// `total` divided by the number of square-free polynomials (`q^n - q^{n-1}` for `n >= 2`).
    pub expectation: BigRational,
}

pub fn total_statistic(n: usize, q: u64, stat: &Statistic) -> Result<StatTotal> {
    let h = type_histogram(n, q)?;
    let mut total = BigRational::zero();
    for (mu, &c) in &h.counts {
        let v = stat.evaluate(&CycleType::new(mu.clone()))?;
        total += v * BigRational::from_integer(BigInt::from(c));
    }
    let count = BigRational::from_integer(BigInt::from(h.squarefree_count()));
    Ok(StatTotal {
        n,
        q,
        statistic: stat.name(),
        expectation: &total / count,
        total,
    })
}

/// `sum_{d | n} mu(n/d) q^d / n`.
pub fn necklace_count(n: usize, q: u64) -> BigInt {
    let mut acc = BigInt::zero();
    for d in 1..=n {
        if n % d == 0 {
            let m = mobius(n / d);
            if m != 0 {
                acc += BigInt::from(m) * num_traits::pow(BigInt::from(q), d);
            }
        }
    }
    acc / BigInt::from(n)
}

fn mobius(mut n: usize) -> i32 {
    let mut r = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            r = -r;
        }
        p += 1;
    }
    if n > 1 {
        r = -r;
    }
    r
}

/// Number of monic irreducible polynomials of degree `n`, by enumeration; checked
/// against the necklace formula.
pub fn irreducible_count(n: usize, q: u64) -> Result<u64> {
    let h = type_histogram(n, q)?;
    let brute = h.counts.get(&Partition::row(n)).copied().unwrap_or(0);
    let formula = necklace_count(n, q);
    if BigInt::from(brute) != formula {
        return Err(Error::IdentityViolation(format!(
            "{brute} irreducible polynomials of degree {n} over F_{q}, formula gives {formula}"
        )));
    }
    Ok(brute)
}

/// Determinant of a square matrix over `F_q` by elimination.
fn det_mod(mut m: Vec<Vec<u64>>, q: u64) -> u64 {
    let k = m.len();
    let mut det = 1u64;
    for c in 0..k {
        let Some(p) = (c..k).find(|&r| m[r][c] != 0) else {
            return 0;
        };
        if p != c {
            m.swap(p, c);
            det = (q - det) % q;
        }
        det = det * m[c][c] % q;
        let inv = pow_mod(m[c][c], q - 2, q);
        for r in c + 1..k {
            if m[r][c] != 0 {
                let f = m[r][c] * inv % q;
                for j in c..k {
                    m[r][j] = (m[r][j] + q * q - f * m[c][j] % q) % q;
                }
            }
        }
    }
    det
}

/// Sylvester resultant of `f` (degree `n`) and `f'` taken with formal degree `n - 1`.
fn resultant_with_derivative(f: &FqPoly) -> u64 {
    let q = f.q();
    let n = f.degree();
    let a: Vec<u64> = f.coeffs.iter().rev().map(|&c| c as u64).collect();
    let b: Vec<u64> = (1..=n)
        .rev()
        .map(|k| f.coeffs[k] as u64 * (k as u64 % q) % q)
        .collect();
    let size = 2 * n - 1;
    let mut m = vec![vec![0u64; size]; size];
    for r in 0..n - 1 {
        for (k, &c) in a.iter().enumerate() {
            m[r][r + k] = c;
        }
    }
    for r in 0..n {
        for (k, &c) in b.iter().enumerate() {
            m[n - 1 + r][r + k] = c;
        }
    }
    det_mod(m, q)
}

/// `(-1)^{n(n-1)/2} Res(f, f')` in `F_q`.
pub fn discriminant(f: &FqPoly) -> u64 {
    let q = f.q();
    let n = f.degree();
    if n < 2 {
        return 1;
    }
    let r = resultant_with_derivative(f);
    if (n * (n - 1) / 2) % 2 == 1 {
        (q - r) % q
    } else {
        r
    }
}

/// Square and non-square discriminant counts over the square-free polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscriminantReport {
    pub n: usize,
    pub q: u64,
    pub square: u64,
    pub nonsquare: u64,
    /// `sum_f sign(sigma_f)`.
    pub sign_sum: i64,
    /// Whether every `f` has a square discriminant exactly when its Frobenius is even.
    pub sign_matches_residue: bool,
}

pub fn discriminant_statistic(n: usize, q: u64) -> Result<DiscriminantReport> {
    check_field(q)?;
    if q == 2 {
        return Err(Error::Argument("q must be odd".into()));
    }
    if n < 2 {
        return Err(Error::Argument("degree must be at least 2".into()));
    }
    let field = Field::new(q as u32);
    let (square, nonsquare, sign_sum, matches) = enumerate_monic(n, q)?
        .par_bridge()
        .filter_map(|f| {
            let d = f.dense();
            if !field.squarefree(&d) {
                return None;
            }
            let sign = FactorStats { d: field.ddf(&d) }.sign();
            let disc = discriminant(&f);
            debug_assert!(disc != 0);
            let is_sq = pow_mod(disc, (q - 1) / 2, q) == 1;
            Some((is_sq as u64, !is_sq as u64, sign as i64, (is_sq == (sign == 1)) as u64))
        })
        .reduce(|| (0, 0, 0, 0), |a, b| (a.0 + b.0, a.1 + b.1, a.2 + b.2, a.3 + b.3));
    Ok(DiscriminantReport {
        n,
        q,
        square,
        nonsquare,
        sign_sum,
        sign_matches_residue: matches == square + nonsquare,
    })
}

// ---------------------------------------------------------------------------
// cohomological side

/// Both sides of the twisted point count identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlReport {
    pub n: usize,
    pub q: u64,
    pub statistic: String,
    /// Enumeration side.
    pub total: BigRational,
    /// `sum_i (-1)^i q^{n-i} <P, H^i>`.
    pub cohomology: BigRational,
    /// The inner products `<P, H^i>` for `0 <= i <= n-1`.
    pub inner_products: Vec<BigRational>,
}

/// `<P, chi_{H^i}>` on `S_n`, touching only classes where `P` is nonzero.
pub fn conf_inner_product(p: &CharacterPolynomial, n: usize, i: usize) -> BigRational {
    let table = character_table(n);
    let values: Vec<BigRational> = table
        .partitions()
        .iter()
        .map(|mu| p.evaluate(&CycleType::new(mu.clone())))
        .collect();
    let nonzero: std::collections::HashSet<&Partition> = table
        .partitions()
        .iter()
        .zip(&values)
        .filter(|(_, v)| !v.is_zero())
        .map(|(mu, _)| mu)
        .collect();
    let traces = conf_traces_filtered(n, i, |mu| nonzero.contains(mu));
    let mut acc = BigRational::zero();
    for ((v, t), size) in values.iter().zip(&traces).zip(table.class_sizes()) {
        if let Some(t) = t {
            acc += v * BigRational::from_integer(t * size);
        }
    }
    acc / BigRational::from_integer(factorial(n))
}

/// Checks `sum_f P(f) = sum_{i<n} (-1)^i q^{n-i} <P, H^i(Conf_n)>`.
pub fn gl_crosscheck(n: usize, q: u64, p: &CharacterPolynomial) -> Result<GlReport> {
    let lhs = total_statistic(n, q, &Statistic::Polynomial(p.clone()))?;
    let inner: Vec<BigRational> = (0..n).map(|i| conf_inner_product(p, n, i)).collect();
    let mut rhs = BigRational::zero();
    for (i, ip) in inner.iter().enumerate() {
        let w = num_traits::pow(BigInt::from(q), n - i);
        let term = ip * BigRational::from_integer(w);
        if i % 2 == 0 {
            rhs += term;
        } else {
            rhs -= term;
        }
    }
    if lhs.total != rhs {
        return Err(Error::CrossCheck {
            context: format!("n = {n}, q = {q}, P = {p}"),
            lhs: lhs.total.to_string(),
            rhs: rhs.to_string(),
        });
    }
    Ok(GlReport {
        n,
        q,
        statistic: p.to_string(),
        total: lhs.total,
        cohomology: rhs,
        inner_products: inner,
    })
}

/// Stable coefficients of the limiting `1/q`-series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series {
    /// `(-1)^i <P, H^i>` in the stable range: the limit of `q^{-n} sum_f P(f)`.
    pub raw: Vec<BigRational>,
    /// Coefficients of the limiting mean, i.e. `raw` divided by `1 - 1/q`
    /// (cumulative sums of `raw`).
    pub expectation: Vec<BigRational>,
    /// Observed onset of each stable inner product.
    pub onsets: Vec<usize>,
}

/// Coefficients of `q^{-i}` for `i <= i_max` in the limit of `P`-weighted counts. Each
/// inner product `<P, H^i>` must be constant on the tail of `window`.
pub fn series_partial_sums(
    p: &CharacterPolynomial,
    i_max: usize,
    window: std::ops::RangeInclusive<usize>,
) -> Result<Series> {
    let mut raw = Vec::new();
    let mut onsets = Vec::new();
    for i in 0..=i_max {
        let trace: Vec<(usize, BigRational)> = window
            .clone()
            .filter(|&n| n >= 1)
            .map(|n| (n, conf_inner_product(p, n, i)))
            .collect();
        let s = detect_stable(trace, MIN_RUN)?;
        onsets.push(s.onset);
        raw.push(if i % 2 == 0 { s.value } else { -s.value });
    }
    let mut expectation = Vec::new();
    let mut acc = BigRational::zero();
    for c in &raw {
        acc += c;
        expectation.push(acc.clone());
    }
    Ok(Series {
        raw,
        expectation,
        onsets,
    })
}

/// `<P, chi^lambda>` stabilized, re-exported for series diagnostics.
pub fn stable_multiplicity(
    p: &CharacterPolynomial,
    lambda: &Partition,
    window: std::ops::RangeInclusive<usize>,
) -> Result<BigRational> {
    Ok(stable_inner_product(p, lambda, window)?.value)
}

/// `|x|` for exact rationals, used in envelope checks.
pub fn abs(x: &BigRational) -> BigRational {
    x.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    fn brute_squarefree(f: &FqPoly) -> bool {
        // no repeated root in any extension iff no square of a monic factor of degree >= 1 divides f
        let q = f.q();
        let n = f.degree();
        let field = Field::new(q as u32);
        for d in 1..=n / 2 {
            for g in enumerate_monic(d, q).unwrap() {
                let g2 = field.mul_mod(&g.dense(), &g.dense(), &Dense::from_slice(&{
                    let mut big = vec![0u32; 2 * d + 2];
                    big[2 * d + 1] = 1;
                    big
                }));
                let mut r = f.dense();
                field.rem(&mut r, &g2);
                if r.len == 0 {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn enumeration_sizes() {
        let v: Vec<String> = enumerate_monic(1, 2).unwrap().map(|f| f.to_string()).collect();
        assert_eq!(v, vec!["x", "x + 1"]);
        assert_eq!(enumerate_monic(2, 2).unwrap().count(), 4);
        assert_eq!(enumerate_monic(3, 3).unwrap().count(), 27);
        assert!(enumerate_monic(2, 4).is_err());
    }

    #[test]
    fn squarefree_examples() {
        assert!(!is_squarefree(&FqPoly::monic(2, &[0, 0]).unwrap()));
        assert!(is_squarefree(&FqPoly::monic(2, &[0, 1]).unwrap()));
        assert_eq!(enumerate_monic(3, 2).unwrap().filter(is_squarefree).count(), 4);
        // x^2 + 1 = (x+1)^2 over F_2; x^3 has zero derivative over F_3
        assert!(!is_squarefree(&FqPoly::monic(2, &[1, 0]).unwrap()));
        assert!(!is_squarefree(&FqPoly::monic(3, &[1, 0, 0]).unwrap()));
        for (n, q) in [(4, 2), (3, 3), (4, 3), (3, 5)] {
            for f in enumerate_monic(n, q).unwrap() {
                assert_eq!(is_squarefree(&f), brute_squarefree(&f), "{f:?}");
            }
        }
    }

    #[test]
    fn factor_stats_examples() {
        let f = FqPoly::monic(2, &[0, 1]).unwrap();
        assert_eq!(factor_degree_stats(&f).unwrap().d, vec![0, 2, 0]);
        let f = FqPoly::monic(2, &[1, 1]).unwrap();
        assert_eq!(factor_degree_stats(&f).unwrap().d, vec![0, 0, 1]);
        assert!(factor_degree_stats(&FqPoly::monic(2, &[0, 0]).unwrap()).is_err());
        for q in [2, 3, 5] {
            for n in 1..=5 {
                for f in enumerate_monic(n, q).unwrap().filter(is_squarefree) {
                    let s = factor_degree_stats(&f).unwrap();
                    let deg: u32 = s.d.iter().enumerate().map(|(i, &c)| i as u32 * c).sum();
                    assert_eq!(deg as usize, n);
                    assert!(s.sign() == 1 || s.sign() == -1);
                }
            }
        }
    }

    #[test]
    fn ddf_agrees_with_root_counting() {
        // d_1 is the number of roots in F_q
        for q in [3u64, 5] {
            for f in enumerate_monic(4, q).unwrap().filter(is_squarefree) {
                let roots = (0..q)
                    .filter(|&x| {
                        f.coeffs().iter().rev().fold(0u64, |acc, &c| (acc * x + c as u64) % q) == 0
                    })
                    .count();
                assert_eq!(factor_degree_stats(&f).unwrap().d[1] as usize, roots);
            }
        }
    }

    #[test]
    fn totals() {
        let one = Statistic::Polynomial(CharacterPolynomial::one());
        let t = total_statistic(3, 2, &one).unwrap();
        assert_eq!(t.total, int(4));
        assert_eq!(t.expectation, int(1));
        for q in [2u64, 3, 5] {
            for n in 2..=6 {
                let t = total_statistic(n, q, &one).unwrap();
                let expect = q.pow(n as u32) - q.pow(n as u32 - 1);
                assert_eq!(t.total, int(expect as i64));
            }
        }
    }

    #[test]
    fn irreducible_counts() {
        assert_eq!(irreducible_count(2, 2).unwrap(), 1);
        assert_eq!(irreducible_count(3, 2).unwrap(), 2);
        assert_eq!(irreducible_count(1, 7).unwrap(), 7);
        assert_eq!(necklace_count(6, 2), BigInt::from(9));
    }

    #[test]
    fn discriminants() {
        // x^2 + b x + c has discriminant b^2 - 4c
        for b in 0..5u64 {
            for c in 0..5u64 {
                let f = FqPoly::monic(5, &[c, b]).unwrap();
                assert_eq!(discriminant(&f), (b * b + 5 * 5 - 4 * c % 5) % 5);
            }
        }
        let r = discriminant_statistic(2, 5).unwrap();
        assert_eq!(r.square + r.nonsquare, 20);
        let r = discriminant_statistic(3, 3).unwrap();
        assert_eq!(r.square + r.nonsquare, 18);
        for (n, q) in [(2, 3), (3, 5), (4, 3), (5, 3)] {
            let r = discriminant_statistic(n, q).unwrap();
            assert_eq!(r.square as i64 - r.nonsquare as i64, r.sign_sum);
            assert!(r.sign_matches_residue);
        }
        assert!(discriminant_statistic(3, 2).is_err());
    }

    #[test]
    fn crosscheck_small() {
        let r = gl_crosscheck(3, 2, &CharacterPolynomial::one()).unwrap();
        assert_eq!(r.total, int(4));
        gl_crosscheck(4, 3, &CharacterPolynomial::x(1)).unwrap();
        gl_crosscheck(5, 2, &CharacterPolynomial::quadratic_excess()).unwrap();
    }

    #[test]
    fn series_for_constant_statistic() {
        let s = series_partial_sums(&CharacterPolynomial::one(), 3, 2..=7).unwrap();
        assert_eq!(s.raw, vec![int(1), int(-1), int(0), int(0)]);
        assert_eq!(s.expectation, vec![int(1), int(0), int(0), int(0)]);
    }
}
