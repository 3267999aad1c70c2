use std::collections::BTreeMap;

use num_bigint::BigInt;
use proptest::prelude::*;

use repstab_core::charpoly::{fit, CharacterPolynomial};
use repstab_core::fqstats::{gl_crosscheck, total_statistic, Statistic};
use repstab_core::osconf::{character_conf, decompose_conf, nbc_dimension, verify_stability};
use repstab_core::symcore::{partitions_of, CycleType, Partition};

fn parse(s: &str) -> BTreeMap<Partition, u64> {
    s.split('+')
        .map(|t| {
            let t = t.trim();
            let (l, m) = t.split_once('^').unwrap_or((t, "1"));
            (l.trim_start_matches('V').parse().unwrap(), m.parse().unwrap())
        })
        .collect()
}

#[test]
fn h3_is_eventually_constant() {
    let r = verify_stability(3, 8..=13).unwrap();
    assert!(r.onset <= 12);
    let last = &r.decompositions.last().unwrap().1;
    assert_eq!(*last.unpadded(), r.stable);
    assert_eq!(last.dimension(), nbc_dimension(13, 3));
}

#[test]
fn fitted_polynomial_predicts_later_characters() {
    let data: Vec<_> = (5..=9).map(|n| (n, character_conf(n, 2))).collect();
    let p = fit(&data, 4).unwrap();
    assert_eq!(p, CharacterPolynomial::conf_h2());
    assert_eq!(p.restrict_to_n(11), character_conf(11, 2));
}

#[test]
fn top_degree_is_sign_twisted_regular_over_n() {
    // H^{n-1} has dimension (n-1)!
    for n in 2..=7 {
        let d = decompose_conf(n, n - 1).unwrap();
        assert_eq!(d.dimension(), (1..n).map(BigInt::from).product::<BigInt>());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn weighted_counts_match_cohomology(n in 1usize..=5, q in prop::sample::select(vec![2u64, 3, 5]), a in -3i64..=3, b in -3i64..=3) {
        let int = |v: i64| num_rational::BigRational::from_integer(BigInt::from(v));
        let p = CharacterPolynomial::from_terms([(vec![], int(a)), (vec![1], int(b))]);
        let r = gl_crosscheck(n, q, &p).unwrap();
        prop_assert_eq!(r.total, r.cohomology);
    }

    #[test]
    fn totals_are_linear(n in 2usize..=5, q in prop::sample::select(vec![2u64, 3])) {
        let x1 = total_statistic(n, q, &Statistic::Polynomial(CharacterPolynomial::x(1))).unwrap().total;
        let x2 = total_statistic(n, q, &Statistic::Polynomial(CharacterPolynomial::x(2))).unwrap().total;
        let both = total_statistic(n, q, &Statistic::Polynomial("X1 + X2".parse().unwrap())).unwrap().total;
        prop_assert_eq!(both, x1 + x2);
    }

    #[test]
    fn polynomials_are_class_functions(n in 1usize..=8) {
        let p = CharacterPolynomial::conf_h2();
        let cf = p.restrict_to_n(n);
        for mu in partitions_of(n) {
            prop_assert_eq!(cf.get(&mu).unwrap(), &p.evaluate(&CycleType::new(mu.clone())));
        }
    }
}

/// Full decomposition of H^4 at n = 16. Takes about two minutes on a fast machine.
#[test]
#[ignore]
fn h4_at_sixteen() {
    let expected = parse(
        "V(1)^2 + V(2)^6 + V(1,1)^6 + V(3)^8 + V(1,1,1)^9 + V(2,1)^16 + V(4)^6 \
         + V(1,1,1,1)^5 + V(5)^2 + V(2,2)^12 + V(3,1)^19 + V(2,1,1)^17 + V(4,1)^12 + V(2,1,1,1)^7 \
         + V(3,2)^14 + V(2,2,1)^10 + V(5,1)^3 + V(3,3)^4 + V(3,1,1)^16 + V(2,2,2)^2 + V(4,2)^7 \
         + V(4,1,1)^8 + V(5,2) + V(2,2,1,1)^2 + V(3,1,1,1)^5 + V(5,1,1)^2 + V(4,3)^2 + V(3,2,1)^9 \
         + V(4,1,1,1)^2 + V(3,3,1)^2 + V(3,2,2) + V(4,2,1)^3 + V(3,2,1,1) + V(5,1,1,1) + V(4,3,1)",
    );
    let d = decompose_conf(16, 4).unwrap();
    assert_eq!(*d.unpadded(), expected);
}
