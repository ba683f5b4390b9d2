use std::sync::Arc;

use permcode::construct::{abelian_code, extend_code, transitive_code, AbelianAction};
use permcode::group::{GSet, Perm, PermGroup};
use permcode::library::cyclic;
use permcode::modrep::FGModule;
use permcode::par::Execution;
use permcode::verify::{
    brute_force_search, classify_hull, dual_code, invariance_check, Budget, HullRelation, Target,
};
use permcode::{Error, Fel, FiniteField, Mat, Subspace, SymForm};

fn gf(p: u64, m: u32) -> Arc<FiniteField> {
    FiniteField::shared(p, m).unwrap()
}

fn regular(m: usize) -> GSet {
    GSet::natural(Arc::new(cyclic(m)))
}

fn unit(n: usize, i: usize) -> Vec<Fel> {
    let mut v = vec![Fel::ZERO; n];
    v[i] = Fel::ONE;
    v
}

fn perm_mats(f: &Arc<FiniteField>, g: &PermGroup) -> Vec<Mat> {
    g.generators().iter().map(|p| Mat::permutation(f, p.images())).collect()
}

#[test]
fn dual_examples() {
    let f = gf(2, 1);
    let c = transitive_code(&regular(7), &f, 0).unwrap().code;
    let ext = extend_code(&c, 0).unwrap().code;
    assert_eq!(dual_code(&ext, &SymForm::standard(&f, 8), &[]).unwrap(), ext);
    assert!(dual_code(&Subspace::zero(&f, 5), &SymForm::standard(&f, 5), &[]).unwrap().is_full());
    let z3 = cyclic(3);
    let e = Subspace::from_rows(&f, 3, &[vec![Fel::ONE; 3]]);
    let d = dual_code(&e, &SymForm::standard(&f, 3), &perm_mats(&f, &z3)).unwrap();
    assert_eq!(d.dim(), 2);
    assert!(d.vectors().all(|v| v.iter().filter(|x| !x.is_zero()).count() % 2 == 0));
    assert!(invariance_check(&d, &z3).unwrap());
    assert!(matches!(
        dual_code(&e, &SymForm::standard(&f, 4), &[]),
        Err(Error::DimensionMismatch { .. })
    ));
}

#[test]
fn dual_is_an_involution() {
    for (p, m) in [(2, 1), (3, 1), (2, 2)] {
        let f = gf(p, m);
        let form = SymForm::standard(&f, 6);
        let c = Subspace::from_rows(&f, 6, &[unit(6, 0), vec![Fel::ONE; 6], unit(6, 3)]);
        let d = dual_code(&c, &form, &[]).unwrap();
        assert_eq!(dual_code(&d, &form, &[]).unwrap(), c);
    }
}

#[test]
fn hull_classification() {
    let f = gf(2, 1);
    let c = transitive_code(&regular(7), &f, 0).unwrap().code;
    let e = vec![Fel::ONE; 7];
    let r = classify_hull(&c, &SymForm::standard(&f, 7), &e).unwrap();
    assert_eq!(r.relation, HullRelation::HullPlusE);
    assert_eq!((r.dim, r.dual_dim, r.hull_dim), (3, 4, 3));
    let ext = extend_code(&c, 0).unwrap().code;
    let r = classify_hull(&ext, &SymForm::standard(&f, 8), &[Fel::ONE; 8]).unwrap();
    assert_eq!(r.relation, HullRelation::SelfDual);
    // e1 has e1.e1 = 1
    let bad = Subspace::from_rows(&f, 3, &[unit(3, 0)]);
    let r = classify_hull(&bad, &SymForm::standard(&f, 3), &[Fel::ONE; 3]).unwrap();
    assert_eq!(r.relation, HullRelation::None);
    let so = Subspace::from_rows(&f, 4, &[vec![Fel::ONE, Fel::ONE, Fel::ZERO, Fel::ZERO]]);
    let r = classify_hull(&so, &SymForm::standard(&f, 4), &[Fel::ONE; 4]).unwrap();
    assert_eq!(r.relation, HullRelation::SelfOrthogonalOther);
    assert!(r.to_node().find("relation").is_some());
    assert!(classify_hull(&so, &SymForm::standard(&f, 4), &[Fel::ZERO; 4]).is_err());
}

#[test]
fn invariance_examples() {
    let f = gf(2, 1);
    let z3 = cyclic(3);
    let e = Subspace::from_rows(&f, 3, &[vec![Fel::ONE; 3]]);
    assert!(invariance_check(&e, &z3).unwrap());
    let coord = Subspace::from_rows(&f, 3, &[unit(3, 0)]);
    assert!(!invariance_check(&coord, &z3).unwrap());
    assert!(matches!(invariance_check(&coord, &cyclic(5)), Err(Error::DegreeMismatch { .. })));
}

#[test]
fn search_regular_z3_has_no_self_dual_code() {
    let f = gf(2, 1);
    let v = FGModule::permutation_module(&regular(3), &f).unwrap();
    let out = brute_force_search(&v, Target::SelfDual, &Budget::default(), Execution::Sequential).unwrap();
    assert!(out.witness.is_none());
}

#[test]
fn search_two_copies_of_z3() {
    let f = gf(2, 1);
    let x = regular(3).disjoint_union(&regular(3)).unwrap();
    let v = FGModule::permutation_module(&x, &f).unwrap();
    let out = brute_force_search(&v, Target::SelfDual, &Budget::default(), Execution::Parallel).unwrap();
    let w = out.witness.unwrap();
    assert_eq!(w.dim(), 3);
    assert_eq!(w.perp_standard(), w);
    assert!(invariance_check(&w, &x.image_group()).unwrap());
}

#[test]
fn search_z7_hull_matches_abelian_code() {
    let f = gf(2, 1);
    let v = FGModule::permutation_module(&regular(7), &f).unwrap();
    let out = brute_force_search(&v, Target::HullPlusE, &Budget::default(), Execution::Parallel).unwrap();
    let w = out.witness.unwrap();
    assert_eq!(w.dim(), 3);
    // both hull codes are found; the abelian code is one of them
    let ab = abelian_code(&cyclic(7), &AbelianAction::trivial(), &f).unwrap().code;
    let t = transitive_code(&regular(7), &f, 0).unwrap().code;
    let mirror = |s: &Subspace| {
        let rows: Vec<Vec<Fel>> = s.basis().row_vecs().iter().map(|r| (0..7).map(|i| r[(7 - i) % 7]).collect()).collect();
        Subspace::from_rows(&f, 7, &rows)
    };
    assert!(w == t || w == mirror(&t));
    assert!(ab == t || ab == mirror(&t));
    assert!(out.lattice_size >= 3);
}

#[test]
fn search_modes_agree() {
    let f = gf(2, 2);
    let g = Arc::new(cyclic(3));
    let fixed = GSet::cosets(g.clone(), &g).unwrap();
    let x = GSet::natural(g).disjoint_union(&fixed).unwrap();
    let x = x.disjoint_union(&fixed).unwrap();
    let v = FGModule::permutation_module(&x, &f).unwrap();
    let a = brute_force_search(&v, Target::SelfDual, &Budget::default(), Execution::Sequential).unwrap();
    let b = brute_force_search(&v, Target::SelfDual, &Budget::default(), Execution::Parallel).unwrap();
    assert_eq!(a, b);
}

#[test]
fn search_budget() {
    let f = gf(2, 2);
    let v = FGModule::permutation_module(&regular(9), &f).unwrap();
    assert!(matches!(
        brute_force_search(&v, Target::HullPlusE, &Budget::default(), Execution::Parallel),
        Err(Error::BudgetExceeded(_))
    ));
    let tight = Budget {
        max_vectors: 1 << 16,
        max_lattice: 2,
    };
    let x = regular(3).disjoint_union(&regular(3)).unwrap();
    let v = FGModule::permutation_module(&x, &gf(2, 1)).unwrap();
    assert!(matches!(
        brute_force_search(&v, Target::SelfDual, &tight, Execution::Parallel),
        Err(Error::BudgetExceeded(_))
    ));
}

#[test]
fn search_needs_a_form() {
    let f = gf(2, 1);
    let g = PermGroup::new(3, vec![Perm::cycle(3)]).unwrap();
    let v = FGModule::new(&f, perm_mats(&f, &g), 3, None).unwrap();
    assert!(brute_force_search(&v, Target::SelfDual, &Budget::default(), Execution::Sequential).is_err());
}
