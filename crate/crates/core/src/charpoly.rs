//! Character polynomials: rational polynomials in the cycle counts `X_1, X_2, ...`,
//! stored in the basis of products of binomials `C(X_1,a_1)*C(X_2,a_2)*...`.
//!
//! Text form: terms `c * C(X1,a1)*C(X2,a2)` sorted by degree (with `deg X_k = k`) and
//! then by multi-index, joined by ` + ` or ` - `. A constant term is written as the bare
//! coefficient and the zero polynomial as `0`. The parser also accepts `X2`, `X1^3`,
//! `binom(X1,2)`, parentheses and products of sums.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{solve_dense, Solution};
use crate::stabilization::{detect_stable, MIN_RUN};
use crate::symcore::{
    inner_product, pad, partitions_of, ClassFunction, CycleType, Partition,
};

/// `a[k]` is the exponent of `C(X_{k+1}, .)`; trailing zeros are trimmed.
pub type MultiIndex = Vec<u32>;

fn trim(mut a: MultiIndex) -> MultiIndex {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn index_degree(a: &[u32]) -> usize {
    a.iter().enumerate().map(|(k, &e)| (k + 1) * e as usize).sum()
}

/// Exact binomial coefficient `C(m, a)` for nonnegative `m`.
pub fn binomial(m: u64, a: u64) -> BigInt {
    if a > m {
        return BigInt::zero();
    }
    let a = a.min(m - a);
    let mut acc = BigInt::one();
    for t in 0..a {
        acc = acc * BigInt::from(m - t) / BigInt::from(t + 1);
    }
    acc
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// A rational polynomial in the cycle-count variables.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct CharacterPolynomial {
    terms: BTreeMap<MultiIndex, BigRational>,
}

impl CharacterPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: BigRational) -> Self {
        let mut p = Self::zero();
        p.add_term(vec![], c);
        p
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    /// `C(X_k, a)`.
    pub fn binom(k: usize, a: u32) -> Self {
        assert!(k >= 1, "cycle-count variables start at X1");
        let mut idx = vec![0; k];
        idx[k - 1] = a;
        let mut p = Self::zero();
        p.add_term(idx, BigRational::one());
        p
    }

    /// The variable `X_k`.
    pub fn x(k: usize) -> Self {
        Self::binom(k, 1)
    }

    /// `C(X_1, 2) - X_2`, the character of the exterior square of the permutation representation.
    pub fn quadratic_excess() -> Self {
        &Self::binom(1, 2) - &Self::x(2)
    }

    /// The character of the second cohomology of the configuration space of `n` points in the plane.
    pub fn conf_h2() -> Self {
        "2 * C(X1,3) + 3 * C(X1,4) + C(X1,2)*X2 - C(X2,2) - X3 - X4"
            .parse()
            .expect("well-formed literal")
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (MultiIndex, BigRational)>) -> Self {
        let mut p = Self::zero();
        for (a, c) in terms {
            p.add_term(a, c);
        }
        p
    }

    fn add_term(&mut self, a: MultiIndex, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let a = trim(a);
        let e = self.terms.entry(a.clone()).or_insert_with(BigRational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&a);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<MultiIndex, BigRational> {
        &self.terms
    }

    pub fn coefficient(&self, a: &[u32]) -> BigRational {
        self.terms
            .get(&trim(a.to_vec()))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// Maximum of `sum_k k * a_k` over the terms; 0 for constants and the zero polynomial.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(|a| index_degree(a)).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::from_terms(self.terms.iter().map(|(a, v)| (a.clone(), v * c)))
    }

    /// Value at the cycle counts `m`, where `m[i]` is `X_i` (index 0 unused).
    pub fn evaluate_counts(&self, m: &[u32]) -> BigRational {
        let mut acc = BigRational::zero();
        for (a, c) in &self.terms {
            let mut v = BigInt::one();
            for (k, &e) in a.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let mk = m.get(k + 1).copied().unwrap_or(0);
                v *= binomial(mk as u64, e as u64);
                if v.is_zero() {
                    break;
                }
            }
            if !v.is_zero() {
                acc += c * BigRational::from_integer(v);
            }
        }
        acc
    }

    pub fn evaluate(&self, mu: &CycleType) -> BigRational {
        self.evaluate_counts(mu.multiplicities())
    }

    /// The class function on `S_n` defined by this polynomial.
    pub fn restrict_to_n(&self, n: usize) -> ClassFunction {
        ClassFunction::from_fn(n, |ct| self.evaluate(ct))
    }

    /// Expansion in ordinary monomials `X_1^e_1 X_2^e_2 ...`.
    pub fn to_monomials(&self) -> MonomialPolynomial {
        let mut out = MonomialPolynomial::default();
        for (a, c) in &self.terms {
            let mut prod: BTreeMap<MultiIndex, BigRational> = BTreeMap::new();
            prod.insert(vec![], c.clone());
            for (k, &e) in a.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                // C(x, e) = x (x-1) ... (x-e+1) / e!
                let mut uni = vec![BigRational::one()];
                for t in 0..e as i64 {
                    let mut next = vec![BigRational::zero(); uni.len() + 1];
                    for (d, u) in uni.iter().enumerate() {
                        next[d + 1] += u;
                        next[d] -= u * rat(t);
                    }
                    uni = next;
                }
                let fact = BigRational::from_integer(crate::symcore::factorial(e as usize));
                let mut next: BTreeMap<MultiIndex, BigRational> = BTreeMap::new();
                for (exps, v) in &prod {
                    for (d, u) in uni.iter().enumerate() {
                        if u.is_zero() {
                            continue;
                        }
                        let mut ex = exps.clone();
                        if ex.len() <= k {
                            ex.resize(k + 1, 0);
                        }
                        ex[k] += d as u32;
                        *next.entry(trim(ex)).or_insert_with(BigRational::zero) += v * u / &fact;
                    }
                }
                prod = next;
            }
            for (ex, v) in prod {
                out.add(ex, v);
            }
        }
        out
    }

    /// Terms in display order: by degree, then by multi-index.
    pub fn sorted_terms(&self) -> Vec<(&MultiIndex, &BigRational)> {
        let mut t: Vec<_> = self.terms.iter().collect();
        t.sort_by(|x, y| index_degree(x.0).cmp(&index_degree(y.0)).then(x.0.cmp(y.0)));
        t
    }

    /// Product, using `C(x,a) C(x,b) = sum_j C(j,a) C(a,a+b-j) C(x,j)` for `max(a,b) <= j <= a+b`.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (a, c) in &self.terms {
            for (b, d) in &other.terms {
                let len = a.len().max(b.len());
                let mut partial: Vec<(MultiIndex, BigInt)> = vec![(vec![0; len], BigInt::one())];
                for k in 0..len {
                    let x = a.get(k).copied().unwrap_or(0) as u64;
                    let y = b.get(k).copied().unwrap_or(0) as u64;
                    let mut next = Vec::new();
                    for j in x.max(y)..=x + y {
                        let w = binomial(j, x) * binomial(x, x + y - j);
                        if w.is_zero() {
                            continue;
                        }
                        for (idx, v) in &partial {
                            let mut idx = idx.clone();
                            idx[k] = j as u32;
                            next.push((idx, v * &w));
                        }
                    }
                    partial = next;
                }
                let cd = c * d;
                for (idx, v) in partial {
                    out.add_term(idx, &cd * BigRational::from_integer(v));
                }
            }
        }
        out
    }

    fn combine(&self, other: &Self, sign: i64) -> Self {
        let mut out = self.clone();
        for (a, c) in &other.terms {
            out.add_term(a.clone(), c * rat(sign));
        }
        out
    }
}

impl std::ops::Add for &CharacterPolynomial {
    type Output = CharacterPolynomial;
    fn add(self, rhs: &CharacterPolynomial) -> CharacterPolynomial {
        self.combine(rhs, 1)
    }
}

impl std::ops::Sub for &CharacterPolynomial {
    type Output = CharacterPolynomial;
    fn sub(self, rhs: &CharacterPolynomial) -> CharacterPolynomial {
        self.combine(rhs, -1)
    }
}

impl std::ops::Mul for &CharacterPolynomial {
    type Output = CharacterPolynomial;
    fn mul(self, rhs: &CharacterPolynomial) -> CharacterPolynomial {
        CharacterPolynomial::mul(self, rhs)
    }
}

fn fmt_binomials(a: &[u32]) -> String {
    a.iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(k, e)| format!("C(X{},{})", k + 1, e))
        .collect::<Vec<_>>()
        .join("*")
}

impl fmt::Display for CharacterPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (a, c)) in self.sorted_terms().into_iter().enumerate() {
            let mag = c.abs();
            if k == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if a.is_empty() {
                write!(f, "{mag}")?;
            } else {
                write!(f, "{mag} * {}", fmt_binomials(a))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CharacterPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CharacterPolynomial({self})")
    }
}

/// Ordinary-monomial form, mainly for display and as an independent evaluator.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MonomialPolynomial {
    terms: BTreeMap<MultiIndex, BigRational>,
}

impl MonomialPolynomial {
    fn add(&mut self, ex: MultiIndex, v: BigRational) {
        let e = self.terms.entry(ex.clone()).or_insert_with(BigRational::zero);
        *e += v;
        if e.is_zero() {
            self.terms.remove(&ex);
        }
    }

    pub fn terms(&self) -> &BTreeMap<MultiIndex, BigRational> {
        &self.terms
    }

    /// Value at cycle counts `m` (`m[i]` is `X_i`).
    pub fn evaluate_counts(&self, m: &[u32]) -> BigRational {
        let mut acc = BigRational::zero();
        for (ex, c) in &self.terms {
            let mut v = BigInt::one();
            for (k, &e) in ex.iter().enumerate() {
                let mk = BigInt::from(m.get(k + 1).copied().unwrap_or(0));
                v *= num_traits::pow(mk, e as usize);
            }
            acc += c * BigRational::from_integer(v);
        }
        acc
    }
}

impl fmt::Display for MonomialPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut t: Vec<_> = self.terms.iter().collect();
        t.sort_by(|x, y| index_degree(y.0).cmp(&index_degree(x.0)).then(y.0.cmp(x.0)));
        for (k, (ex, c)) in t.into_iter().enumerate() {
            let sep = match (k, c.is_negative()) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            };
            write!(f, "{sep}")?;
            let vars: Vec<String> = ex
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        format!("X{}", i + 1)
                    } else {
                        format!("X{}^{}", i + 1, e)
                    }
                })
                .collect();
            let mag = c.abs();
            if vars.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{mag}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// parsing

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!(
            "{msg} at offset {} in {:?}",
            self.pos,
            String::from_utf8_lossy(self.s)
        ))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", c as char)))
        }
    }

    fn number(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        let txt = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii digits");
        Ok(txt.parse().expect("digits"))
    }

    fn small(&mut self) -> Result<u32> {
        let n = self.number()?;
        u32::try_from(n).map_err(|_| self.err("index too large"))
    }

    fn variable(&mut self) -> Result<usize> {
        self.skip_ws();
        if !matches!(self.s.get(self.pos), Some(b'X' | b'x')) {
            return Err(self.err("expected a variable X<k>"));
        }
        self.pos += 1;
        let k = self.small()? as usize;
        if k == 0 {
            return Err(self.err("variables start at X1"));
        }
        Ok(k)
    }

    fn keyword(&mut self, kw: &str) -> bool {
        self.skip_ws();
        if self.s[self.pos..].starts_with(kw.as_bytes()) {
            self.pos += kw.len();
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<CharacterPolynomial> {
        let mut acc = if self.eat(b'-') {
            &CharacterPolynomial::zero() - &self.term()?
        } else {
            self.eat(b'+');
            self.term()?
        };
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.term()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<CharacterPolynomial> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<CharacterPolynomial> {
        let base = match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                e
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.number()?;
                let den = if self.eat(b'/') { self.number()? } else { BigInt::one() };
                if den.is_zero() {
                    return Err(self.err("zero denominator"));
                }
                CharacterPolynomial::constant(BigRational::new(num, den))
            }
            Some(b'C') | Some(b'b') => {
                if !(self.keyword("binom") || self.keyword("C")) {
                    return Err(self.err("unexpected identifier"));
                }
                self.expect(b'(')?;
                let k = self.variable()?;
                self.expect(b',')?;
                let a = self.small()?;
                self.expect(b')')?;
                CharacterPolynomial::binom(k, a)
            }
            Some(b'X') | Some(b'x') => CharacterPolynomial::x(self.variable()?),
            _ => return Err(self.err("unexpected input")),
        };
        if self.eat(b'^') {
            let e = self.small()?;
            let mut acc = CharacterPolynomial::one();
            for _ in 0..e {
                acc = &acc * &base;
            }
            return Ok(acc);
        }
        Ok(base)
    }
}

impl FromStr for CharacterPolynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser {
            s: s.as_bytes(),
            pos: 0,
        };
        let e = p.expr()?;
        if p.peek().is_some() {
            return Err(p.err("trailing input"));
        }
        Ok(e)
    }
}

// ---------------------------------------------------------------------------
// fitting and stable inner products

/// All multi-indices of degree at most `d`, ordered by degree.
pub fn multi_indices(max_degree: usize) -> Vec<MultiIndex> {
    let mut out = Vec::new();
    for k in 0..=max_degree {
        for p in partitions_of(k) {
            let m = p.multiplicities();
            out.push(trim(m.into_iter().skip(1).collect()));
        }
    }
    out
}

/// Finds the unique polynomial of degree `<= max_degree` agreeing with every class
/// function in `data`.
pub fn fit(data: &[(usize, ClassFunction)], max_degree: usize) -> Result<CharacterPolynomial> {
    let mut seen = std::collections::BTreeSet::new();
    for (n, cf) in data {
        if cf.n() != *n {
            return Err(Error::Argument(format!(
                "data labeled n = {n} holds a class function on S_{}",
                cf.n()
            )));
        }
        if !seen.insert(*n) {
            return Err(Error::Argument(format!("n = {n} appears twice in fit data")));
        }
    }
    let unknowns = multi_indices(max_degree);
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    let mut labels = Vec::new();
    for (n, cf) in data {
        for (mu, value) in cf.iter() {
            let ct = CycleType::new(mu.clone());
            let m = ct.multiplicities();
            let row: Vec<BigRational> = unknowns
                .iter()
                .map(|a| {
                    let mut v = BigInt::one();
                    for (k, &e) in a.iter().enumerate() {
                        v *= binomial(m.get(k + 1).copied().unwrap_or(0) as u64, e as u64);
                    }
                    BigRational::from_integer(v)
                })
                .collect();
            rows.push(row);
            rhs.push(value.clone());
            labels.push((*n, mu));
        }
    }
    match solve_dense(&rows, &rhs, unknowns.len()) {
        Solution::Unique(x) => Ok(CharacterPolynomial::from_terms(unknowns.into_iter().zip(x))),
        Solution::Inconsistent { row } => Err(Error::NoSolution {
            n: labels[row].0,
            class: labels[row].1.to_string(),
        }),
        Solution::Underdetermined { rank, free } => Err(Error::Underdetermined {
            rank,
            unknowns: unknowns.len(),
            free: free
                .into_iter()
                .map(|c| {
                    let a = &unknowns[c];
                    if a.is_empty() {
                        "1".to_string()
                    } else {
                        fmt_binomials(a)
                    }
                })
                .collect(),
        }),
    }
}

/// A quantity found to be constant on the tail of a window of `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StableValue {
    pub value: BigRational,
    pub onset: usize,
    /// The onset guaranteed by theory, when one is known.
    pub predicted_onset: Option<usize>,
    pub trace: Vec<(usize, BigRational)>,
}

/// `<P, chi^{lambda[n]}>` over the window, with its stable value and onset.
///
/// The predicted onset is `deg P + |lambda|` (the degree of the character polynomial of
/// `V(lambda)` is `|lambda|`), raised to the padding threshold if necessary.
pub fn stable_inner_product(
    p: &CharacterPolynomial,
    lambda: &Partition,
    window: RangeInclusive<usize>,
) -> Result<StableValue> {
    if window.is_empty() {
        return Err(Error::Argument("empty window".into()));
    }
    let min = lambda.size() + lambda.first() as usize;
    if *window.start() < min {
        return Err(Error::Padding {
            lambda: lambda.to_string(),
            n: *window.start(),
            min,
        });
    }
    let trace: Vec<(usize, BigRational)> = window
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|n| {
            let chi = ClassFunction::irreducible(&pad(lambda, n)?);
            let v = inner_product(&p.restrict_to_n(n), &chi)?;
            Ok((n, v))
        })
        .collect::<Result<_>>()?;
    let s = detect_stable(trace, MIN_RUN)?;
    Ok(StableValue {
        value: s.value,
        onset: s.onset,
        predicted_onset: Some((p.degree() + lambda.size()).max(min)),
        trace: s.trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symcore::{decompose, Decomposition};
    use proptest::prelude::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn evaluation_at_identity() {
        let x1 = CharacterPolynomial::x(1);
        assert_eq!(x1.evaluate(&CycleType::identity(7)), rat(7));
        let qe = CharacterPolynomial::quadratic_excess();
        for n in 0..9 {
            assert_eq!(qe.evaluate(&CycleType::identity(n)), rat((n * n.saturating_sub(1) / 2) as i64));
        }
        assert_eq!(CharacterPolynomial::conf_h2().evaluate(&CycleType::identity(4)), rat(11));
    }

    #[test]
    fn fixed_points_on_s3() {
        let f = CharacterPolynomial::x(1).restrict_to_n(3);
        assert_eq!(f.get(&p(&[1, 1, 1])), Some(&rat(3)));
        assert_eq!(f.get(&p(&[2, 1])), Some(&rat(1)));
        assert_eq!(f.get(&p(&[3])), Some(&rat(0)));
        assert_eq!(CharacterPolynomial::one().restrict_to_n(5), ClassFunction::constant(5, rat(1)));
    }

    #[test]
    fn h2_polynomial_matches_displayed_decompositions() {
        let d = decompose(&CharacterPolynomial::conf_h2().restrict_to_n(4)).unwrap();
        let expect = Decomposition::from_unpadded(4, [(p(&[1]), 2), (p(&[1, 1]), 1), (p(&[2]), 1)]).unwrap();
        assert_eq!(d, expect);
    }

    #[test]
    fn text_round_trip() {
        let h2 = CharacterPolynomial::conf_h2();
        let s = h2.to_string();
        assert_eq!(
            s,
            "-1 * C(X3,1) + 2 * C(X1,3) - 1 * C(X4,1) - 1 * C(X2,2) + 1 * C(X1,2)*C(X2,1) + 3 * C(X1,4)"
        );
        let back: CharacterPolynomial = s.parse().unwrap();
        assert_eq!(back, h2);
        assert_eq!(back.to_string(), s);
        assert_eq!(CharacterPolynomial::zero().to_string(), "0");
        assert_eq!("0".parse::<CharacterPolynomial>().unwrap(), CharacterPolynomial::zero());
        let q: CharacterPolynomial = "-3/4 + 1/2 * C(X1,1)".parse().unwrap();
        assert_eq!(q.to_string(), "-3/4 + 1/2 * C(X1,1)");
        assert!("C(X0,1)".parse::<CharacterPolynomial>().is_err());
        assert!("2 *".parse::<CharacterPolynomial>().is_err());
    }

    #[test]
    fn powers_convert_to_binomials() {
        let sq: CharacterPolynomial = "X1^2".parse().unwrap();
        // x^2 = C(x,1) + 2 C(x,2)
        assert_eq!(sq, &CharacterPolynomial::x(1) + &CharacterPolynomial::binom(1, 2).scale(&rat(2)));
        assert_eq!(sq.to_monomials().to_string(), "X1^2");
    }

    #[test]
    fn fit_recovers_known_polynomials() {
        let data: Vec<_> = (1..=4).map(|n| (n, CharacterPolynomial::x(1).restrict_to_n(n))).collect();
        assert_eq!(fit(&data, 1).unwrap(), CharacterPolynomial::x(1));
        let qe = CharacterPolynomial::quadratic_excess();
        let data: Vec<_> = (2..=6).map(|n| (n, qe.restrict_to_n(n))).collect();
        assert_eq!(fit(&data, 2).unwrap(), qe);
    }

    #[test]
    fn fit_reports_failures() {
        let data = vec![(3, ClassFunction::from_fn(3, |ct| rat(ct.sign() as i64)))];
        assert!(matches!(fit(&data, 0), Err(Error::NoSolution { .. })));
        let data = vec![(1, CharacterPolynomial::x(1).restrict_to_n(1))];
        match fit(&data, 2) {
            Err(Error::Underdetermined { rank, unknowns, free }) => {
                assert_eq!(unknowns, 4);
                assert!(rank < unknowns);
                assert!(!free.is_empty());
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn stable_inner_products() {
        let one = CharacterPolynomial::one();
        assert_eq!(stable_inner_product(&one, &Partition::empty(), 1..=6).unwrap().value, rat(1));
        let s = stable_inner_product(&CharacterPolynomial::x(1), &p(&[1]), 2..=8).unwrap();
        assert_eq!((s.value, s.onset), (rat(1), 2));
        let s = stable_inner_product(&CharacterPolynomial::quadratic_excess(), &Partition::empty(), 2..=8).unwrap();
        assert_eq!(s.value, rat(0));
        assert!(stable_inner_product(&one, &p(&[2]), 2..=6).is_err());
    }

    fn arb_poly() -> impl Strategy<Value = CharacterPolynomial> {
        let idx = multi_indices(6);
        let n = idx.len();
        proptest::collection::vec((0..n, -5i64..=5, 1i64..=4), 0..6).prop_map(move |ts| {
            CharacterPolynomial::from_terms(
                ts.into_iter()
                    .map(|(k, a, b)| (idx[k].clone(), BigRational::new(a.into(), b.into()))),
            )
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn binomial_and_monomial_evaluations_agree(poly in arb_poly(), n in 0usize..=8) {
            let mono = poly.to_monomials();
            for mu in partitions_of(n) {
                let ct = CycleType::new(mu);
                prop_assert_eq!(poly.evaluate(&ct), mono.evaluate_counts(ct.multiplicities()));
            }
        }

        #[test]
        fn product_is_pointwise(a in arb_poly(), b in arb_poly(), n in 0usize..=7) {
            let ab = &a * &b;
            for mu in partitions_of(n) {
                let ct = CycleType::new(mu);
                prop_assert_eq!(ab.evaluate(&ct), a.evaluate(&ct) * b.evaluate(&ct));
            }
        }

        #[test]
        fn text_form_round_trips(poly in arb_poly()) {
            let s = poly.to_string();
            let back: CharacterPolynomial = s.parse().unwrap();
            prop_assert_eq!(&back, &poly);
            prop_assert_eq!(back.to_string(), s);
        }

        #[test]
        fn fit_is_idempotent(poly in arb_poly()) {
            let d = poly.degree();
            let data: Vec<_> = (0..=2 * d + 2).map(|n| (n, poly.restrict_to_n(n))).collect();
            prop_assert_eq!(fit(&data, d).unwrap(), poly);
        }
    }
}
