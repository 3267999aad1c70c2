//! Counting maximal tori in `GL_n(F_q)` by twisting type.
//!
//! An `F_q`-stable maximal torus of `GL_n` has a type `mu`, a partition of `n` (the cycle
//! type of Frobenius on the Weyl group), and its rational points form
//! `prod_j F_{q^{mu_j}}^x`. The tori of type `mu` make up one conjugacy class, of size
//! `|GL_n(F_q)| / (z_mu prod_j (q^{mu_j} - 1))`.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fqstats::{enumerate_monic, factor_degree_stats, is_prime, is_squarefree, Statistic};
use crate::symcore::{partitions_of, CycleType, Partition};

fn check(n: usize, q: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::Argument("n must be at least 1".into()));
    }
    if !is_prime(q) {
        return Err(Error::Argument(format!("q = {q} is not prime")));
    }
    Ok(())
}

/// `q^{n(n-1)/2} prod_{i=1}^n (q^i - 1)`.
pub fn gl_order(n: usize, q: u64) -> Result<BigInt> {
    check(n, q)?;
    Ok(gl_order_poly(n).evaluate_int(&BigInt::from(q)))
}

/// Number of maximal tori of each type.
pub fn tori_count_by_type(n: usize, q: u64) -> Result<BTreeMap<Partition, BigInt>> {
    check(n, q)?;
    let order = gl_order(n, q)?;
    let q = BigInt::from(q);
    partitions_of(n)
        .into_par_iter()
        .map(|mu| {
            let mut stab = mu.centralizer_order();
            for &p in mu.parts() {
                stab *= num_traits::pow(q.clone(), p as usize) - 1;
            }
            let (count, rem) = order.div_rem(&stab);
            if !rem.is_zero() {
                return Err(Error::FormulaViolation(format!(
                    "|GL_{n}| = {order} is not divisible by {stab} for type {mu}"
                )));
            }
            Ok((mu, count))
        })
        .collect()
}

/// Polynomial in `q` with rational coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QPolynomial {
    coeffs: Vec<BigRational>,
}

impl QPolynomial {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        QPolynomial { coeffs }
    }

    fn from_ints(c: &[i64]) -> Self {
        QPolynomial::new(c.iter().map(|&v| BigRational::from_integer(v.into())).collect())
    }

    /// `q^k - 1`.
    fn q_power_minus_one(k: usize) -> Self {
        let mut c = vec![BigRational::zero(); k + 1];
        c[0] = -BigRational::one();
        c[k] += BigRational::one();
        QPolynomial::new(c)
    }

    fn monomial(k: usize) -> Self {
        let mut c = vec![BigRational::zero(); k + 1];
        c[k] = BigRational::one();
        QPolynomial::new(c)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn evaluate(&self, q: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * q + c)
    }

    fn evaluate_int(&self, q: &BigInt) -> BigInt {
        let v = self.evaluate(&BigRational::from_integer(q.clone()));
        assert!(v.is_integer());
        v.to_integer()
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return QPolynomial::new(Vec::new());
        }
        let mut c = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        QPolynomial::new(c)
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        QPolynomial::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let z = BigRational::zero();
        QPolynomial::new(
            (0..len)
                .map(|k| self.coeffs.get(k).unwrap_or(&z) + other.coeffs.get(k).unwrap_or(&z))
                .collect(),
        )
    }

    /// Exact quotient, or `None` when the division leaves a remainder.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let dd = d.degree()?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return rem.iter().all(Zero::is_zero).then(|| QPolynomial::new(Vec::new()));
        }
        let mut quot = vec![BigRational::zero(); rem.len() - dd];
        let lead = &d.coeffs[dd];
        for k in (0..quot.len()).rev() {
            let f = &rem[k + dd] / lead;
            for (j, c) in d.coeffs.iter().enumerate() {
                rem[k + j] -= &f * c;
            }
            quot[k] = f;
        }
        rem.iter().all(Zero::is_zero).then(|| QPolynomial::new(quot))
    }
}

impl fmt::Display for QPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            }
            first = false;
            let unit = mag.is_one();
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !unit {
                        write!(f, "{mag}*")?;
                    }
                    if k == 1 {
                        write!(f, "q")?;
                    } else {
                        write!(f, "q^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

fn gl_order_poly(n: usize) -> QPolynomial {
    let mut p = QPolynomial::monomial(n * (n - 1) / 2);
    for i in 1..=n {
        p = p.mul(&QPolynomial::q_power_minus_one(i));
    }
    p
}

/// The number of tori of type `mu` as a polynomial in `q`.
pub fn tori_count_polynomial(mu: &Partition) -> Result<QPolynomial> {
    let n = mu.size();
    if n == 0 {
        return Err(Error::Argument("empty type".into()));
    }
    let mut stab = QPolynomial::from_ints(&[1]);
    for &p in mu.parts() {
        stab = stab.mul(&QPolynomial::q_power_minus_one(p as usize));
    }
    let count = gl_order_poly(n)
        .div_exact(&stab)
        .ok_or_else(|| Error::FormulaViolation(format!("torus count for {mu} is not a polynomial")))?;
    Ok(count.scale(&BigRational::new(BigInt::one(), mu.centralizer_order())))
}

/// Weighted torus count: total, and mean over all `q^{n^2-n}` tori.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToriTotal {
    pub n: usize,
    pub q: u64,
    pub statistic: String,
    pub total: BigRational,
    pub expectation: BigRational,
}

pub fn tori_statistic(n: usize, q: u64, stat: &Statistic) -> Result<ToriTotal> {
    let counts = tori_count_by_type(n, q)?;
    let mut total = BigRational::zero();
    for (mu, c) in &counts {
        total += stat.evaluate(&CycleType::new(mu.clone()))? * BigRational::from_integer(c.clone());
    }
    let all = num_traits::pow(BigInt::from(q), n * n - n);
    Ok(ToriTotal {
        n,
        q,
        statistic: stat.name(),
        expectation: &total / BigRational::from_integer(all),
        total,
    })
}

/// Coefficients `a_k` with `E[P] = sum_k a_k q^{-k}` over tori of `GL_n`, exact for
/// every `q`: the weighted count is a polynomial of degree at most `n^2 - n`.
pub fn tori_expectation_series(n: usize, stat: &Statistic) -> Result<Vec<BigRational>> {
    if n == 0 {
        return Err(Error::Argument("n must be at least 1".into()));
    }
    let mut total = QPolynomial::new(Vec::new());
    for mu in partitions_of(n) {
        let w = stat.evaluate(&CycleType::new(mu.clone()))?;
        total = total.add(&tori_count_polynomial(&mu)?.scale(&w));
    }
    let top = n * n - n;
    if total.degree().is_some_and(|d| d > top) {
        return Err(Error::FormulaViolation(format!(
            "weighted torus count of degree {:?} exceeds {top}",
            total.degree()
        )));
    }
    Ok((0..=top)
        .map(|k| total.coeffs().get(top - k).cloned().unwrap_or_else(BigRational::zero))
        .collect())
}

// ---------------------------------------------------------------------------
// brute-force oracle

type Matrix = Vec<u32>;

fn mat_mul(a: &[u32], b: &[u32], n: usize, q: u32) -> Matrix {
    let mut c = vec![0u32; n * n];
    for i in 0..n {
        for k in 0..n {
            let x = a[i * n + k];
            if x == 0 {
                continue;
            }
            for j in 0..n {
                c[i * n + j] = (c[i * n + j] + x * b[k * n + j]) % q;
            }
        }
    }
    c
}

fn inv_mod(a: u32, q: u32) -> u32 {
    (1..q).find(|&b| a * b % q == 1).expect("field element invertible")
}

/// Row-reduced echelon form of the given vectors; a canonical key for their span.
fn rref(mut rows: Vec<Vec<u32>>, q: u32) -> Vec<Vec<u32>> {
    let width = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..width {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, p);
        let inv = inv_mod(rows[r][c], q);
        for x in rows[r].iter_mut() {
            *x = *x * inv % q;
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let f = rows[i][c];
                for j in 0..width {
                    rows[i][j] = (rows[i][j] + q * q - f * rows[r][j]) % q;
                }
            }
        }
        r += 1;
    }
    rows.truncate(r);
    rows
}

/// Inverse by Gauss-Jordan, `None` when singular.
fn mat_inverse(a: &[u32], n: usize, q: u32) -> Option<Matrix> {
    let mut aug: Vec<Vec<u32>> = (0..n)
        .map(|i| {
            let mut row = a[i * n..(i + 1) * n].to_vec();
            row.extend((0..n).map(|j| (i == j) as u32));
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| aug[i][c] != 0)?;
        aug.swap(c, p);
        let inv = inv_mod(aug[c][c], q);
        for x in aug[c].iter_mut() {
            *x = *x * inv % q;
        }
        for i in 0..n {
            if i != c && aug[i][c] != 0 {
                let f = aug[i][c];
                for j in 0..2 * n {
                    aug[i][j] = (aug[i][j] + q * q - f * aug[c][j]) % q;
                }
            }
        }
    }
    Some(aug.into_iter().flat_map(|row| row[n..].to_vec()).collect())
}

/// Basis of the commutative algebra `prod_j F_{q^{mu_j}}`, embedded block-diagonally
/// through companion matrices of irreducible polynomials.
fn standard_algebra(mu: &Partition, q: u64) -> Result<Vec<Matrix>> {
    let n = mu.size();
    let mut basis = Vec::new();
    let mut offset = 0;
    for &d in mu.parts() {
        let d = d as usize;
        let f = enumerate_monic(d, q)?
            .find(|f| is_squarefree(f) && factor_degree_stats(f).is_ok_and(|s| s.d[d] == 1))
            .expect("irreducible polynomials exist in every degree");
        // companion matrix of f
        let mut comp = vec![0u32; d * d];
        for i in 1..d {
            comp[i * d + i - 1] = 1;
        }
        for i in 0..d {
            comp[i * d + d - 1] = (q as u32 - f.coeffs()[i]) % q as u32;
        }
        let mut power: Matrix = (0..d * d).map(|k| (k % (d + 1) == 0) as u32).collect();
        for _ in 0..d {
            let mut m = vec![0u32; n * n];
            for i in 0..d {
                for j in 0..d {
                    m[(offset + i) * n + offset + j] = power[i * d + j];
                }
            }
            basis.push(m);
            power = mat_mul(&power, &comp, d, q as u32);
        }
        offset += d;
    }
    Ok(basis)
}

/// Counts tori of each type by conjugating a standard torus of that type around
/// `GL_n(F_q)`.
///
/// A torus is recorded through its `F_q`-algebra (the span of its points), since over
/// tiny fields the finite point groups of different tori can coincide. For every type the
/// number of distinct conjugate algebras is compared with `|GL_n| / |stabilizer|`.
pub fn brute_force_tori(n: usize, q: u64) -> Result<BTreeMap<Partition, BigInt>> {
    check(n, q)?;
    if n > 3 || q > 3 {
        return Err(Error::CostGuard(format!(
            "brute-force tori need n <= 3 and q <= 3 (got n = {n}, q = {q}); use tori_count_by_type"
        )));
    }
    let qq = q as u32;
    let total = (q as usize).pow((n * n) as u32);
    let group: Vec<(Matrix, Matrix)> = (0..total)
        .filter_map(|mut idx| {
            let m: Matrix = (0..n * n)
                .map(|_| {
                    let d = (idx % q as usize) as u32;
                    idx /= q as usize;
                    d
                })
                .collect();
            let inv = mat_inverse(&m, n, qq)?;
            Some((m, inv))
        })
        .collect();
    let mut out = BTreeMap::new();
    for mu in partitions_of(n) {
        let basis = standard_algebra(&mu, q)?;
        let key = rref(basis.clone(), qq);
        let mut seen = HashSet::new();
        let mut stabilizer = 0usize;
        for (g, gi) in &group {
            let conj: Vec<Matrix> = basis
                .iter()
                .map(|b| mat_mul(&mat_mul(g, b, n, qq), gi, n, qq))
                .collect();
            let k = rref(conj, qq);
            if k == key {
                stabilizer += 1;
            }
            seen.insert(k);
        }
        if seen.len() * stabilizer != group.len() {
            return Err(Error::IdentityViolation(format!(
                "type {mu}: {} conjugates but stabilizer of order {stabilizer} in a group of order {}",
                seen.len(),
                group.len()
            )));
        }
        out.insert(mu, BigInt::from(seen.len()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::CharacterPolynomial;

    fn int(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn part(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn group_orders() {
        assert_eq!(gl_order(1, 5).unwrap(), int(4));
        assert_eq!(gl_order(2, 2).unwrap(), int(6));
        assert_eq!(gl_order(3, 2).unwrap(), int(168));
        assert!(gl_order(2, 4).is_err());
        // count invertible 2x2 and 3x3 matrices directly
        for (n, q) in [(2usize, 3u32), (3, 2)] {
            let total = q.pow((n * n) as u32);
            let count = (0..total)
                .filter(|&idx| {
                    let mut idx = idx;
                    let m: Vec<u32> = (0..n * n)
                        .map(|_| {
                            let d = idx % q;
                            idx /= q;
                            d
                        })
                        .collect();
                    mat_inverse(&m, n, q).is_some()
                })
                .count();
            assert_eq!(gl_order(n, q as u64).unwrap(), BigInt::from(count));
        }
    }

    #[test]
    fn counts_for_gl2() {
        let c = tori_count_by_type(2, 2).unwrap();
        assert_eq!(c[&part("(1,1)")], int(3));
        assert_eq!(c[&part("(2)")], int(1));
    }

    #[test]
    fn steinberg_total() {
        for q in [2u64, 3, 5] {
            for n in 1..=7 {
                let s: BigInt = tori_count_by_type(n, q).unwrap().values().sum();
                assert_eq!(s, num_traits::pow(BigInt::from(q), n * n - n));
            }
        }
    }

    #[test]
    fn irreducible_tori() {
        for q in [2u64, 3, 5] {
            for n in 1..=7 {
                let c = &tori_count_by_type(n, q).unwrap()[&Partition::row(n)];
                let qb = BigInt::from(q);
                let mut expect = num_traits::pow(qb.clone(), n * (n - 1) / 2);
                for i in 1..n {
                    expect *= num_traits::pow(qb.clone(), i) - 1;
                }
                assert_eq!(*c, expect / BigInt::from(n));
            }
        }
    }

    #[test]
    fn eigenline_expectation() {
        let x1 = Statistic::Polynomial(CharacterPolynomial::x(1));
        let t = tori_statistic(2, 2, &x1).unwrap();
        assert_eq!(t.expectation, BigRational::new(int(3), int(2)));
        for q in [2u64, 3, 5] {
            for n in 1..=7 {
                let e = tori_statistic(n, q, &x1).unwrap().expectation;
                let expect: BigRational = (0..n)
                    .map(|k| BigRational::new(int(1), num_traits::pow(BigInt::from(q), k)))
                    .sum();
                assert_eq!(e, expect);
            }
        }
    }

    #[test]
    fn sign_bias() {
        for q in [2u64, 3, 5] {
            for n in 1..=6 {
                let t = tori_statistic(n, q, &Statistic::Sign).unwrap();
                let root = num_traits::pow(BigInt::from(q), (n * n - n) / 2);
                assert_eq!(t.total.abs(), BigRational::from_integer(root));
            }
        }
    }

    #[test]
    fn symbolic_counts_agree() {
        for n in 1..=6 {
            for mu in partitions_of(n) {
                let p = tori_count_polynomial(&mu).unwrap();
                for q in [2u64, 3, 7] {
                    let v = p.evaluate(&BigRational::from_integer(BigInt::from(q)));
                    assert_eq!(v, BigRational::from_integer(tori_count_by_type(n, q).unwrap()[&mu].clone()));
                }
            }
        }
        assert_eq!(tori_count_polynomial(&part("(2)")).unwrap().to_string(), "1/2*q^2 - 1/2*q");
    }

    #[test]
    fn oracle_agrees() {
        for (n, q) in [(1, 2), (1, 3), (2, 2), (2, 3), (3, 2)] {
            assert_eq!(brute_force_tori(n, q).unwrap(), tori_count_by_type(n, q).unwrap(), "n={n} q={q}");
        }
        let total: BigInt = brute_force_tori(2, 3).unwrap().values().sum();
        assert_eq!(total, int(9));
        assert!(matches!(brute_force_tori(4, 2), Err(Error::CostGuard(_))));
    }

    #[test]
    fn series_coefficients() {
        let x1 = tori_expectation_series(4, &Statistic::Polynomial(CharacterPolynomial::x(1))).unwrap();
        let ones: Vec<i64> = vec![1, 1, 1, 1];
        assert_eq!(&x1[..4], &ones.iter().map(|&v| BigRational::from_integer(int(v))).collect::<Vec<_>>()[..]);
        assert!(x1[4..].iter().all(Zero::is_zero));
    }

    #[test]
    fn quadratic_excess_over_tori() {
        let p = Statistic::Polynomial(CharacterPolynomial::quadratic_excess());
        let s = tori_expectation_series(10, &p).unwrap();
        let expect = [0, 1, 1, 2, 2, 3, 3, 4, 4];
        for (k, &e) in expect.iter().enumerate() {
            assert_eq!(s[k], BigRational::from_integer(int(e)), "q^-{k}");
        }
    }
}
