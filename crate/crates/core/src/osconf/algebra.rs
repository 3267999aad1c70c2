use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use smallvec::SmallVec;

use crate::symcore::Permutation;

/// The degree-one class `omega_ij`, stored with `i < j` (points are 1-based).
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct OSGenerator {
    i: u8,
    j: u8,
}

impl OSGenerator {
    /// `omega_ab`; the two indices may be given in either order.
    pub fn new(a: usize, b: usize) -> Self {
        assert!(a != b && a >= 1 && b >= 1 && a.max(b) < 256, "bad generator ({a},{b})");
        OSGenerator {
            i: a.min(b) as u8,
            j: a.max(b) as u8,
        }
    }

    pub fn lower(&self) -> usize {
        self.i as usize
    }

    pub fn upper(&self) -> usize {
        self.j as usize
    }

    fn relabel(&self, sigma: &Permutation) -> Self {
        OSGenerator::new(
            sigma.apply(self.i as usize - 1) + 1,
            sigma.apply(self.j as usize - 1) + 1,
        )
    }
}

/// Generators are ordered by upper index, then lower index.
impl Ord for OSGenerator {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.j, self.i).cmp(&(other.j, other.i))
    }
}

impl PartialOrd for OSGenerator {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for OSGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "w{}{}", self.i, self.j)
    }
}

impl fmt::Display for OSGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.j >= 10 {
            write!(f, "w({},{})", self.i, self.j)
        } else {
            write!(f, "w{}{}", self.i, self.j)
        }
    }
}

pub(crate) type Word = SmallVec<[OSGenerator; 8]>;

/// A normal-form monomial: generators with strictly increasing upper indices.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OSMonomial(pub(crate) Word);

impl OSMonomial {
    /// Checks the normal-form condition.
    pub fn new(factors: &[OSGenerator]) -> Option<Self> {
        if factors.windows(2).all(|w| w[0].j < w[1].j) {
            Some(OSMonomial(factors.iter().copied().collect()))
        } else {
            None
        }
    }

    pub fn one() -> Self {
        OSMonomial(Word::new())
    }

    pub fn factors(&self) -> &[OSGenerator] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }
}

impl fmt::Debug for OSMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for OSMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.0.iter().map(|g| g.to_string()).collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// A homogeneous element of the Orlik–Solomon algebra of the braid arrangement on `n` points.
#[derive(Clone, PartialEq, Eq)]
pub struct OSElement {
    n: usize,
    degree: usize,
    terms: BTreeMap<OSMonomial, BigRational>,
}

impl OSElement {
    pub fn zero(n: usize, degree: usize) -> Self {
        OSElement {
            n,
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(n: usize, m: OSMonomial) -> Self {
        let mut e = OSElement::zero(n, m.degree());
        e.add_term(m, BigRational::from_integer(1.into()));
        e
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<OSMonomial, BigRational> {
        &self.terms
    }

    pub fn coefficient(&self, m: &OSMonomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add_term(&mut self, m: OSMonomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m.clone()).or_insert_with(BigRational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add_scaled(&mut self, c: &BigRational, other: &OSElement) {
        for (m, v) in &other.terms {
            self.add_term(m.clone(), c * v);
        }
    }

    /// Product in the algebra, straightened.
    pub fn mul(&self, other: &OSElement) -> OSElement {
        let n = self.n.max(other.n);
        let mut out = OSElement::zero(n, self.degree + other.degree);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let mut w: Word = a.0.clone();
                w.extend(b.0.iter().copied());
                let s = straighten(&w, n);
                out.add_scaled(&(x * y), &s);
            }
        }
        out
    }
}

impl fmt::Debug for OSElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for OSElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})*{m}")?;
        }
        Ok(())
    }
}

/// Sorts by (upper, lower) and returns the permutation sign, or `None` if a generator repeats.
fn normalize(w: &mut Word) -> Option<i64> {
    let mut sign = 1i64;
    for k in 1..w.len() {
        let mut p = k;
        while p > 0 && w[p - 1] > w[p] {
            w.swap(p - 1, p);
            sign = -sign;
            p -= 1;
        }
        if p > 0 && w[p - 1] == w[p] {
            return None;
        }
    }
    Some(sign)
}

/// The first position `p` with `upper(w[p]) == upper(w[p+1])` in a normalized word.
fn first_collision(w: &Word) -> Option<usize> {
    w.windows(2).position(|x| x[0].j == x[1].j)
}

/// Upper indices in decreasing order.
pub(crate) fn uppers_desc(w: &[OSGenerator]) -> SmallVec<[u8; 8]> {
    let mut u: SmallVec<[u8; 8]> = w.iter().map(|g| g.j).collect();
    u.sort_unstable_by(|a, b| b.cmp(a));
    u
}

/// Applies the three-term relation at the collision `(a,j),(b,j)`, `a < b < j`:
///
/// `w_aj * w_bj = w_ab * w_bj - w_ab * w_aj`.
///
/// One upper index `j` is replaced by `b < j`, so the decreasingly sorted multiset of
/// upper indices drops strictly in lexicographic order. That order is well founded on
/// words of fixed length, which is why straightening terminates.
fn rewrite(w: &Word, p: usize) -> [(Word, i64); 2] {
    let a = w[p].i as usize;
    let b = w[p + 1].i as usize;
    let j = w[p].j as usize;
    debug_assert!(a < b && b < j);
    let ab = OSGenerator::new(a, b);
    let mut t1 = w.clone();
    t1[p] = ab;
    t1[p + 1] = OSGenerator::new(b, j);
    let mut t2 = w.clone();
    t2[p] = ab;
    t2[p + 1] = OSGenerator::new(a, j);
    [(t1, 1), (t2, -1)]
}

/// Core straightening loop. `keep` may discard words that cannot contribute to the
/// terms of interest; `emit` receives normal forms with integer coefficients.
/// `choose` picks which collision to resolve (the first one, in production).
pub(crate) fn straighten_with(
    word: Word,
    coeff: i64,
    keep: &impl Fn(&Word) -> bool,
    choose: &mut impl FnMut(&Word) -> Option<usize>,
    emit: &mut impl FnMut(Word, i64),
) {
    let mut stack: Vec<(Word, i64)> = vec![(word, coeff)];
    while let Some((mut w, c)) = stack.pop() {
        let Some(s) = normalize(&mut w) else { continue };
        let c = c * s;
        if !keep(&w) {
            continue;
        }
        match choose(&w) {
            None => emit(w, c),
            Some(p) => {
                for (t, sgn) in rewrite(&w, p) {
                    stack.push((t, c * sgn));
                }
            }
        }
    }
}

pub(crate) fn straighten_to_map(word: Word) -> HashMap<Word, i64> {
    let mut out: HashMap<Word, i64> = HashMap::new();
    straighten_with(word, 1, &|_| true, &mut first_collision, &mut |w, c| {
        *out.entry(w).or_insert(0) += c;
    });
    out.retain(|_, c| *c != 0);
    out
}

/// Normal-form expansion of the product of the given generators.
pub fn straighten(word: &[OSGenerator], n: usize) -> OSElement {
    let mut e = OSElement::zero(n, word.len());
    for (w, c) in straighten_to_map(word.iter().copied().collect()) {
        e.add_term(OSMonomial(w), BigRational::from_integer(BigInt::from(c)));
    }
    e
}

/// Straightening that resolves collisions in an order chosen by `choose`; used to test
/// that the normal form does not depend on the order of rewriting.
pub fn straighten_in_order(
    word: &[OSGenerator],
    n: usize,
    mut choose: impl FnMut(&[usize]) -> usize,
) -> OSElement {
    let mut out: HashMap<Word, i64> = HashMap::new();
    let mut pick = |w: &Word| {
        let cands: Vec<usize> = w
            .windows(2)
            .enumerate()
            .filter(|(_, x)| x[0].j == x[1].j)
            .map(|(p, _)| p)
            .collect();
        if cands.is_empty() {
            None
        } else {
            Some(cands[choose(&cands) % cands.len()])
        }
    };
    straighten_with(word.iter().copied().collect(), 1, &|_| true, &mut pick, &mut |w, c| {
        *out.entry(w).or_insert(0) += c;
    });
    let mut e = OSElement::zero(n, word.len());
    for (w, c) in out {
        e.add_term(OSMonomial(w), BigRational::from_integer(BigInt::from(c)));
    }
    e
}

/// Coefficient of the normal-form monomial `target` in the straightening of `word`.
///
/// Words whose decreasing upper-index sequence is already lexicographically below that
/// of `target` are dropped: rewriting only lowers that sequence.
pub(crate) fn coefficient_of(word: Word, target: &[OSGenerator]) -> i64 {
    let tu = uppers_desc(target);
    let mut acc = 0i64;
    let keep = |w: &Word| uppers_desc(w) >= tu;
    straighten_with(word, 1, &keep, &mut first_collision, &mut |w, c| {
        if w.as_slice() == target {
            acc += c;
        }
    });
    acc
}

/// Monomials with strictly increasing upper indices, in lexicographic order of their
/// `(upper, lower)` sequences. Degree `i > n - 1` gives an empty list (except `i = 0`).
pub fn nbc_basis(n: usize, i: usize) -> Vec<OSMonomial> {
    fn rec(n: usize, left: usize, next_j: usize, cur: &mut Word, out: &mut Vec<OSMonomial>) {
        if left == 0 {
            out.push(OSMonomial(cur.clone()));
            return;
        }
        // leave room for the remaining factors
        for j in next_j..=n + 1 - left {
            for a in 1..j {
                cur.push(OSGenerator::new(a, j));
                rec(n, left - 1, j + 1, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    if i == 0 {
        out.push(OSMonomial::one());
        return out;
    }
    if i >= n {
        return out;
    }
    rec(n, i, 2, &mut Word::new(), &mut out);
    out
}

/// `e_i(1, 2, ..., n-1)`, the size of the degree-`i` basis.
pub fn nbc_dimension(n: usize, i: usize) -> BigInt {
    // e_k over 1..m via e_k(1..m) = e_k(1..m-1) + m e_{k-1}(1..m-1)
    let mut e = vec![BigInt::zero(); i + 1];
    e[0] = BigInt::from(1);
    for m in 1..n {
        for k in (1..=i).rev() {
            let prev = e[k - 1].clone();
            e[k] += prev * BigInt::from(m);
        }
    }
    e[i].clone()
}

/// `sigma . x`: relabel `omega_ab -> omega_{sigma(a) sigma(b)}` and straighten.
pub fn sn_action(sigma: &Permutation, x: &OSElement) -> OSElement {
    let mut out = OSElement::zero(x.n, x.degree);
    for (m, c) in &x.terms {
        let w: Vec<OSGenerator> = m.0.iter().map(|g| g.relabel(sigma)).collect();
        out.add_scaled(c, &straighten(&w, x.n));
    }
    out
}

pub(crate) fn relabel_word(m: &[OSGenerator], sigma: &Permutation) -> Word {
    m.iter().map(|g| g.relabel(sigma)).collect()
}
