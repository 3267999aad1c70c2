use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::character::{character_table, factorial, PaddedLabel};
use super::partition::{partitions_of, CycleType, Partition};
use crate::error::{Error, Result};

/// An exact rational class function on `S_n`, one value per cycle type in canonical order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ClassFunction {
    n: usize,
    values: Vec<BigRational>,
}

impl ClassFunction {
    pub fn new(n: usize, values: Vec<BigRational>) -> Result<Self> {
        let p = partitions_of(n).len();
        if values.len() != p {
            return Err(Error::Argument(format!(
                "class function on S_{n} needs {p} values, got {}",
                values.len()
            )));
        }
        Ok(ClassFunction { n, values })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(&CycleType) -> BigRational) -> Self {
        let values = partitions_of(n)
            .into_iter()
            .map(|p| f(&CycleType::new(p)))
            .collect();
        ClassFunction { n, values }
    }

    pub fn from_integers(n: usize, values: Vec<BigInt>) -> Result<Self> {
        Self::new(n, values.into_iter().map(BigRational::from_integer).collect())
    }

    pub fn zero(n: usize) -> Self {
        Self::from_fn(n, |_| BigRational::zero())
    }

    pub fn constant(n: usize, c: BigRational) -> Self {
        Self::from_fn(n, |_| c.clone())
    }

    /// The irreducible character indexed by a partition of `n`.
    pub fn irreducible(nu: &Partition) -> Self {
        let n = nu.size();
        let t = character_table(n);
        let row = t.index_of(nu).expect("partition of n");
        ClassFunction {
            n,
            values: t
                .row(row)
                .iter()
                .map(|v| BigRational::from_integer(v.clone()))
                .collect(),
        }
    }

    /// Character of the regular representation.
    pub fn regular(n: usize) -> Self {
        let id = Partition::column(n);
        Self::from_fn(n, |ct| {
            if ct.partition() == &id {
                BigRational::from_integer(factorial(n))
            } else {
                BigRational::zero()
            }
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    pub fn get(&self, mu: &Partition) -> Option<&BigRational> {
        let idx = character_table(self.n).index_of(mu)?;
        self.values.get(idx)
    }

    /// `(cycle type, value)` pairs in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = (Partition, &BigRational)> {
        partitions_of(self.n).into_iter().zip(self.values.iter())
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        ClassFunction {
            n: self.n,
            values: self.values.iter().map(|v| v * c).collect(),
        }
    }

    fn zip_with(
        &self,
        other: &ClassFunction,
        f: impl Fn(&BigRational, &BigRational) -> BigRational,
    ) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::Argument(format!(
                "class functions on S_{} and S_{}",
                self.n, other.n
            )));
        }
        Ok(ClassFunction {
            n: self.n,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| f(a, b))
                .collect(),
        })
    }

    /// Pointwise product (character of the tensor product).
    pub fn product(&self, other: &ClassFunction) -> Result<Self> {
        self.zip_with(other, |a, b| a * b)
    }

    pub fn sum(&self, other: &ClassFunction) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn difference(&self, other: &ClassFunction) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }
}

impl Add for &ClassFunction {
    type Output = ClassFunction;
    fn add(self, rhs: &ClassFunction) -> ClassFunction {
        self.sum(rhs).expect("same n")
    }
}

impl Sub for &ClassFunction {
    type Output = ClassFunction;
    fn sub(self, rhs: &ClassFunction) -> ClassFunction {
        self.difference(rhs).expect("same n")
    }
}

impl Mul for &ClassFunction {
    type Output = ClassFunction;
    fn mul(self, rhs: &ClassFunction) -> ClassFunction {
        self.product(rhs).expect("same n")
    }
}

/// `(1/n!) sum_mu |C_mu| f(mu) g(mu)`. Characters here are rational so no conjugation.
pub fn inner_product(f: &ClassFunction, g: &ClassFunction) -> Result<BigRational> {
    if f.n != g.n {
        return Err(Error::Argument(format!(
            "inner product of class functions on S_{} and S_{}",
            f.n, g.n
        )));
    }
    let table = character_table(f.n);
    let mut acc = BigRational::zero();
    for ((a, b), size) in f.values.iter().zip(&g.values).zip(table.class_sizes()) {
        if a.is_zero() || b.is_zero() {
            continue;
        }
        acc += a * b * BigRational::from_integer(size.clone());
    }
    Ok(acc / BigRational::from_integer(factorial(f.n)))
}

/// Multiplicities of irreducibles in a representation of `S_n`, keyed by unpadded partition.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Decomposition {
    n: usize,
    mult: BTreeMap<Partition, u64>,
}

impl Decomposition {
    pub fn new(n: usize) -> Self {
        Decomposition {
            n,
            mult: BTreeMap::new(),
        }
    }

    /// Builds from unpadded labels; zero entries are dropped.
    pub fn from_unpadded(n: usize, entries: impl IntoIterator<Item = (Partition, u64)>) -> Result<Self> {
        let mut d = Decomposition::new(n);
        for (lambda, m) in entries {
            PaddedLabel::new(lambda.clone(), n)?;
            if m > 0 {
                *d.mult.entry(lambda).or_insert(0) += m;
            }
        }
        Ok(d)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn multiplicity(&self, lambda: &Partition) -> u64 {
        self.mult.get(lambda).copied().unwrap_or(0)
    }

    /// `(V(lambda)_n, multiplicity)` pairs with nonzero multiplicity.
    pub fn iter(&self) -> impl Iterator<Item = (PaddedLabel, u64)> + '_ {
        self.mult.iter().map(move |(l, &m)| {
            (
                PaddedLabel::new(l.clone(), self.n).expect("valid by construction"),
                m,
            )
        })
    }

    /// The multiplicity table with the `n` forgotten.
    pub fn unpadded(&self) -> &BTreeMap<Partition, u64> {
        &self.mult
    }

    /// Character `sum_lambda c(lambda) chi^{lambda[n]}`.
    pub fn character(&self) -> ClassFunction {
        let mut f = ClassFunction::zero(self.n);
        for (label, m) in self.iter() {
            let chi = ClassFunction::irreducible(&label.partition());
            f = &f + &chi.scale(&BigRational::from_integer(BigInt::from(m)));
        }
        f
    }

    pub fn dimension(&self) -> BigInt {
        self.iter()
            .map(|(l, m)| super::character::dim_irrep(&l) * BigInt::from(m))
            .sum()
    }
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.mult.is_empty() {
            return write!(f, "0");
        }
        for (k, (label, m)) in self.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            if m == 1 {
                write!(f, "{label}")?;
            } else {
                write!(f, "{label}^{m}")?;
            }
        }
        Ok(())
    }
}

/// Multiplicities `<f, chi^lambda>` for every irreducible of `S_n`.
pub fn decompose(f: &ClassFunction) -> Result<Decomposition> {
    let table = character_table(f.n);
    let mut d = Decomposition::new(f.n);
    for (row, nu) in table.partitions().iter().enumerate() {
        let chi = ClassFunction {
            n: f.n,
            values: table
                .row(row)
                .iter()
                .map(|v| BigRational::from_integer(v.clone()))
                .collect(),
        };
        let c = inner_product(f, &chi)?;
        let label = PaddedLabel::of_partition(nu);
        if !c.is_integer() || c.is_negative() {
            return Err(Error::NotACharacter {
                label: format!("{label:?}"),
                value: c.to_string(),
            });
        }
        let m = c.to_integer().to_u64().ok_or_else(|| Error::NotACharacter {
            label: format!("{label:?}"),
            value: c.to_string(),
        })?;
        if m > 0 {
            d.mult.insert(label.lambda().clone(), m);
        }
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symcore::character::{dim_irrep, pad};
    use num_traits::One;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn int(v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    #[test]
    fn orthonormality() {
        for n in 0..=10 {
            let parts = partitions_of(n);
            let chars: Vec<_> = parts.iter().map(ClassFunction::irreducible).collect();
            for (a, ca) in chars.iter().enumerate() {
                for (b, cb) in chars.iter().enumerate() {
                    let ip = inner_product(ca, cb).unwrap();
                    let expect = if a == b { BigRational::one() } else { BigRational::zero() };
                    assert_eq!(ip, expect, "n={n} {} {}", parts[a], parts[b]);
                }
            }
        }
    }

    #[test]
    fn regular_representation() {
        for n in 1..=7 {
            let d = decompose(&ClassFunction::regular(n)).unwrap();
            for (label, m) in d.iter() {
                assert_eq!(BigInt::from(m), dim_irrep(&label));
            }
            assert_eq!(d.unpadded().len(), partitions_of(n).len());
        }
    }

    #[test]
    fn permutation_representation() {
        for n in 2..=9 {
            let fixed = ClassFunction::from_fn(n, |ct| int(ct.count(1) as i64));
            let d = decompose(&fixed).unwrap();
            let expect = Decomposition::from_unpadded(n, [(Partition::empty(), 1), (p(&[1]), 1)]).unwrap();
            assert_eq!(d, expect);
            assert_eq!(d.to_string(), "V(0) + V(1)");
        }
    }

    #[test]
    fn not_a_character() {
        let half = ClassFunction::constant(3, BigRational::new(BigInt::from(1), BigInt::from(2)));
        assert!(matches!(decompose(&half), Err(Error::NotACharacter { .. })));
        let neg = ClassFunction::constant(3, int(-1));
        assert!(matches!(decompose(&neg), Err(Error::NotACharacter { .. })));
    }

    #[test]
    fn mismatched_n() {
        assert!(inner_product(&ClassFunction::zero(3), &ClassFunction::zero(4)).is_err());
    }

    #[test]
    fn decomposition_reconstructs() {
        let d = Decomposition::from_unpadded(6, [(p(&[1]), 2), (p(&[2, 1]), 1), (p(&[1, 1]), 3)]).unwrap();
        assert_eq!(decompose(&d.character()).unwrap(), d);
        assert_eq!(
            d.dimension(),
            BigInt::from(2 * 5 + 16 + 3 * 10)
        );
        assert_eq!(pad(&p(&[2, 1]), 6).unwrap(), p(&[3, 2, 1]));
    }
}
