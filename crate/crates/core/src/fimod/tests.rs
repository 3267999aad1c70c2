use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use super::*;
use crate::charpoly::fit;
use crate::symcore::Partition;

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn part(s: &str) -> Partition {
    s.parse().unwrap()
}

#[test]
fn injections() {
    assert_eq!(Injection::all(2, 3).len(), 6);
    assert_eq!(Injection::all(0, 3).len(), 1);
    assert!(Injection::all(3, 2).is_empty());
    assert!(Injection::new(3, vec![0, 0]).is_err());
    let f = Injection::new(4, vec![2, 0]).unwrap();
    assert_eq!(f.extend_to_permutation(), vec![2, 0, 1, 3]);
    let g = Injection::new(5, vec![4, 3, 1, 0]).unwrap();
    assert_eq!(g.compose(&f).images(), &[1, 4]);
    assert_eq!(f.to_string(), "[2] -> [4]: (3 1)");
}

#[test]
fn builtin_dimensions() {
    let p = PolyHomogeneous::new(3, 6);
    for n in 0..=6 {
        assert_eq!(p.dim(n), binom(n + 2, 3));
    }
    let c = ConfCohomology::new(1, 6);
    for n in 0..=6 {
        assert_eq!(c.dim(n), binom(n, 2));
    }
    let t = parse_builtin("tensor(irrep_sequence((1)), irrep_sequence((1)))", 8).unwrap();
    for n in 2..=8 {
        assert_eq!(t.dim(n), (n - 1) * (n - 1));
    }
    let s = IrrepSequence::new(part("(2,1)"), 7).unwrap();
    assert_eq!(s.dim(4), 0);
    assert_eq!(s.dim(5), 5);
    assert_eq!(s.dim(6), 16);
    assert!(IrrepSequence::new(part("(2)"), 3).is_err());
    assert!(parse_builtin("nonsense(1)", 4).is_err());
}

#[test]
fn builtins_are_functors() {
    let modules: Vec<Arc<dyn FiModule>> = vec![
        Arc::new(PolyHomogeneous::new(2, 6)),
        Arc::new(ConfCohomology::new(2, 6)),
        Arc::new(IrrepSequence::new(part("(1,1)"), 6).unwrap()),
        Arc::new(IrrepSequence::new(part("(2)"), 6).unwrap()),
        Arc::new(ExteriorAlgebra::new(6).unwrap()),
        parse_builtin("tensor(irrep((1)), conf(1))", 6).unwrap(),
        parse_builtin("ker_partials(2)", 6).unwrap(),
    ];
    for m in modules {
        let checked = check_functoriality(m.as_ref(), 4, 60, 7).unwrap();
        assert!(checked > 0, "{}", m.name());
    }
}

/// Swaps the images of two basis vectors, which breaks functoriality.
struct Broken(PolyHomogeneous);

impl FiModule for Broken {
    fn name(&self) -> String {
        "broken".into()
    }
    fn n_max(&self) -> usize {
        self.0.n_max()
    }
    fn dim(&self, n: usize) -> usize {
        self.0.dim(n)
    }
    fn apply(&self, f: &Injection, idx: usize) -> SparseVec {
        if f.source() == 2 && f.target() == 3 && idx == 0 {
            return self.0.apply(f, 1);
        }
        self.0.apply(f, idx)
    }
}

#[test]
fn functoriality_violations_are_reported() {
    let b = Broken(PolyHomogeneous::new(1, 4));
    assert!(matches!(check_functoriality(&b, 4, 0, 1), Err(Error::Data(_))));
    assert!(matches!(generation_profile(&b), Err(Error::Data(_))));
}

#[test]
fn specht_characters() {
    for lambda in ["()", "(1)", "(2)", "(1,1)", "(2,1)"] {
        let s = IrrepSequence::new(part(lambda), 7).unwrap();
        for n in 0..=7 {
            assert_eq!(generic_character(&s, n), s.character(n), "{lambda} at {n}");
        }
    }
    let c = ConfCohomology::new(2, 6);
    for n in 0..=6 {
        assert_eq!(generic_character(&c, n), c.character(n));
    }
}

#[test]
fn generation_profiles() {
    let p = generation_profile(&PolyHomogeneous::new(3, 5)).unwrap();
    assert_eq!(p.new_generators, vec![0, 1, 1, 1, 0, 0]);
    assert_eq!(p.quotient_dims, vec![0, 1, 2, 1, 0, 0]);
    assert_eq!(p.generator_count(), 3);
    assert_eq!(p.generation_degree(), Some(3));
    let c = generation_profile(&ConfCohomology::new(1, 6)).unwrap();
    assert_eq!(c.new_generators, vec![0, 0, 1, 0, 0, 0, 0]);
    let t = generation_profile(&IrrepSequence::new(Partition::empty(), 4).unwrap()).unwrap();
    assert_eq!(t.new_generators, vec![1, 0, 0, 0, 0]);
    let e = generation_profile(&ExteriorAlgebra::new(6).unwrap()).unwrap();
    assert_eq!(e.new_generators, vec![1, 1, 1, 1, 1, 1, 1]);
    let big = generation_profile(&PolyHomogeneous::new(87, 4)).unwrap();
    assert!(big.new_generators[1..].iter().all(|&g| g > 0));
}

#[test]
fn repstab_reports() {
    let r = check_repstab(&ConfCohomology::new(1, 11), 2..=10).unwrap();
    assert_eq!(r.onset, Some(4));
    assert_eq!(r.multiplicity_onset, Some(4));
    for row in &r.rows {
        assert_eq!(row.injective, Some(true));
        assert_eq!(row.surjective, Some(row.n >= 2));
    }
    let s = check_repstab(&IrrepSequence::new(part("(1)"), 8).unwrap(), 2..=8).unwrap();
    assert_eq!(s.onset, Some(2));
    assert_eq!(s.rows.last().unwrap().decomposition.to_string(), "V(1)");
    let e = check_repstab(&ExteriorAlgebra::new(9).unwrap(), 1..=9).unwrap();
    assert_eq!(e.multiplicity_onset, None);
    assert_eq!(e.onset, None);
    assert!(e.candidate_onsets().all(|n| !e.row(n).unwrap().multiplicities_constant));
    assert!(check_repstab(&ExteriorAlgebra::new(4).unwrap(), 1..=5).is_err());
}

#[test]
fn colimits() {
    let p = PolyHomogeneous::new(3, 7);
    let r = colimit_check(&p, 3, 5).unwrap();
    assert_eq!((r.colimit_dim, r.v_dim, r.isomorphic), (35, 35, true));
    let r = colimit_check(&p, 2, 3).unwrap();
    assert_eq!(r.v_dim, 10);
    assert_eq!(r.image_rank, 9);
    assert!(!r.isomorphic);
    for n in 3..=7 {
        assert!(colimit_check(&p, 3, n).unwrap().isomorphic, "n = {n}");
    }
    let t = IrrepSequence::new(Partition::empty(), 4).unwrap();
    assert!(colimit_check(&t, 0, 4).unwrap().isomorphic);
    assert!(colimit_check(&p, 4, 3).is_err());
    let c = ConfCohomology::new(1, 6);
    assert!(colimit_check(&c, 2, 6).unwrap().isomorphic);
    assert!(!colimit_check(&c, 1, 3).unwrap().isomorphic);
}

#[test]
fn murnaghan_tables() {
    let r = murnaghan_check(&Partition::empty(), &Partition::empty(), 0..=5).unwrap();
    assert_eq!(r.table.len(), 1);
    assert_eq!(r.table[&Partition::empty()], 1);
    let r = murnaghan_check(&part("(1)"), &part("(1)"), 4..=10).unwrap();
    let expect: Vec<(Partition, u64)> = ["()", "(1)", "(1,1)", "(2)"].iter().map(|s| (part(s), 1)).collect();
    assert_eq!(r.table.clone().into_iter().collect::<Vec<_>>(), expect);
    assert_eq!(r.onset, 4);
    assert!(murnaghan_check(&part("(2)"), &part("(1)"), 3..=8).is_err());
    assert!(matches!(
        murnaghan_check(&part("(1)"), &part("(1,1)"), 5..=6),
        Err(Error::Stabilization { .. })
    ));
}

#[test]
fn json_round_trip() {
    let p = PolyHomogeneous::new(2, 4);
    let data = FiModuleData::materialize(&p);
    let text = data.to_json();
    let back = FiModuleData::from_json(&text).unwrap();
    assert_eq!(back, data);
    for m in 0..=4 {
        for n in m..=4 {
            for f in Injection::all(m, n) {
                for idx in 0..p.dim(m) {
                    assert_eq!(back.apply(&f, idx), p.apply(&f, idx));
                }
            }
        }
    }
    assert_eq!(generation_profile(&back).unwrap(), {
        let mut g = generation_profile(&p).unwrap();
        g.name = back.name.clone();
        g
    });
    let c = FiModuleData::materialize(&ConfCohomology::new(2, 5));
    check_functoriality(&c, 5, 0, 0).unwrap();
    assert!(FiModuleData::from_json(&text.replace("\"version\": 1", "\"version\": 9")).is_err());
    assert!(FiModuleData::from_json("{}").is_err());
}

#[test]
fn finite_generation_gives_stable_multiplicities() {
    let modules: Vec<Arc<dyn FiModule>> = vec![
        Arc::new(PolyHomogeneous::new(3, 9)),
        Arc::new(ConfCohomology::new(1, 9)),
        Arc::new(IrrepSequence::new(part("(1)"), 9).unwrap()),
        parse_builtin("tensor(irrep((1)), irrep((1)))", 9).unwrap(),
        parse_builtin("ker_partials(2)", 9).unwrap(),
    ];
    for m in modules {
        let profile = generation_profile(m.as_ref()).unwrap();
        assert!(profile.eventually_zero(3), "{}: {:?}", m.name(), profile.new_generators);
        let r = check_repstab(m.as_ref(), 6..=9).unwrap();
        assert_eq!(r.multiplicity_onset, Some(6), "{}", m.name());
    }
}

#[test]
fn dimensions_are_polynomial() {
    let modules: Vec<(Arc<dyn FiModule>, usize)> = vec![
        (Arc::new(PolyHomogeneous::new(3, 9)), 3),
        (Arc::new(ConfCohomology::new(1, 9)), 2),
        (parse_builtin("tensor(irrep((1)), irrep((1)))", 9).unwrap(), 2),
        (parse_builtin("ker_partials(2)", 9).unwrap(), 2),
    ];
    for (m, degree) in modules {
        let data: Vec<(usize, ClassFunction)> = (5..=9).map(|n| (n, m.character(n))).collect();
        let p = fit(&data, degree).unwrap();
        for n in 5..=9 {
            let d = p.evaluate(&crate::symcore::CycleType::identity(n));
            assert_eq!(d, BigRational::from_integer(BigInt::from(m.dim(n))), "{}", m.name());
        }
    }
}

#[test]
fn kernel_of_partials() {
    let k = KernelModule::new(Arc::new(SumOfPartials::new(2, 6).unwrap()));
    for n in 1..=6 {
        assert_eq!(k.dim(n), binom(n + 1, 2) - n);
    }
    let profile = generation_profile(&k).unwrap();
    assert_eq!(profile.new_generators, vec![0, 0, 1, 0, 0, 0, 0]);
}

proptest! {
    #[test]
    fn random_composites_agree(seed in any::<u64>()) {
        let p = PolyHomogeneous::new(2, 7);
        let e = ExteriorAlgebra::new(7).unwrap();
        prop_assert!(check_functoriality(&p, 0, 20, seed).is_ok());
        prop_assert!(check_functoriality(&e, 0, 20, seed).is_ok());
    }
}
