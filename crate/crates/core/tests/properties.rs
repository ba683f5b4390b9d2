use std::sync::Arc;

use permcode::construct::{
    abelian_code, decide_existence, extend_code, induce_code, puncture_hull, selfdual_code, transitive_code,
    AbelianAction, EVEN_MULTIPLICITY,
};
use permcode::group::GSet;
use permcode::library::{action_unions, cyclic, frobenius21, library, subgroup_classes, transitive_actions, z3xz3};
use permcode::modrep::FGModule;
use permcode::verify::{dual_code, invariance_check};
use permcode::{Error, Fel, FiniteField, Subspace, SymForm};
use proptest::prelude::*;

fn field(q: u64) -> Arc<FiniteField> {
    match q {
        4 => FiniteField::shared(2, 2),
        8 => FiniteField::shared(2, 3),
        9 => FiniteField::shared(3, 2),
        _ => FiniteField::shared(q, 1),
    }
    .unwrap()
}

fn random_rows(f: &Arc<FiniteField>, n: usize, raw: &[Vec<u32>]) -> Vec<Vec<Fel>> {
    raw.iter()
        .map(|r| (0..n).map(|i| Fel(r[i % r.len()] % f.order())).collect())
        .collect()
}

fn hull_plus_e(c: &Subspace) -> bool {
    let n = c.ambient();
    let e = Subspace::from_rows(c.field(), n, &[vec![Fel::ONE; n]]);
    !c.contains(&vec![Fel::ONE; n]) && c.perp_standard() == c.sum(&e).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn dual_is_involutive(
        q in prop::sample::select(vec![2u64, 3, 4, 5, 9]),
        n in 1usize..12,
        raw in prop::collection::vec(prop::collection::vec(any::<u32>(), 1..12), 0..8),
    ) {
        let f = field(q);
        let form = SymForm::standard(&f, n);
        let c = Subspace::from_rows(&f, n, &random_rows(&f, n, &raw));
        let d = dual_code(&c, &form, &[]).unwrap();
        prop_assert_eq!(d.dim() + c.dim(), n);
        prop_assert_eq!(dual_code(&d, &form, &[]).unwrap(), c);
    }

    #[test]
    fn induction_commutes_with_duality(
        gi in 0usize..17,
        hi in any::<prop::sample::Index>(),
        ki in any::<prop::sample::Index>(),
        q in prop::sample::select(vec![2u64, 4, 5, 11]),
        raw in prop::collection::vec(prop::collection::vec(any::<u32>(), 1..30), 1..3),
    ) {
        let g = library()[gi].group.clone();
        prop_assume!(permcode::numtheory::gcd(q, g.order() as u64) == 1);
        let subs = subgroup_classes(&g).unwrap();
        let h = Arc::new(hi.get(&subs).clone());
        let ks = subgroup_classes(&h).unwrap();
        let y = GSet::cosets(h.clone(), ki.get(&ks)).unwrap();
        prop_assume!(g.order() / h.order() * y.points() <= 60);
        let f = field(q);
        let v = FGModule::permutation_module(&y, &f).unwrap();
        let d = v.spin_all(&random_rows(&f, y.points(), &raw)).unwrap().carrier().clone();
        let ind = induce_code(g.clone(), &y, &d).unwrap();
        let ind_perp = induce_code(g, &y, &d.perp_standard()).unwrap();
        prop_assert_eq!(ind.code.perp_standard(), ind_perp.code);
        prop_assert_eq!(ind.code.dim(), d.dim() * ind.induced.blocks().len());
    }

    #[test]
    fn selfdual_sound_and_exact(
        gi in 0usize..17,
        ui in any::<prop::sample::Index>(),
        q in prop::sample::select(vec![2u64, 4]),
        seed in any::<u64>(),
    ) {
        let g = library()[gi].group.clone();
        let unions = action_unions(&g, 12).unwrap();
        let (_, x) = ui.get(&unions);
        let f = field(q);
        let v = FGModule::permutation_module(x, &f).unwrap();
        let crit = decide_existence(x, &f, seed).unwrap().criterion(EVEN_MULTIPLICITY).unwrap().pass;
        match selfdual_code(&v, seed) {
            Ok(r) => {
                prop_assert!(crit);
                prop_assert_eq!(r.code.perp_standard(), r.code.clone());
                prop_assert_eq!(2 * r.code.dim(), x.points());
                prop_assert!(invariance_check(&r.code, &x.image_group()).unwrap());
            }
            Err(Error::Obstruction(c)) => {
                prop_assert!(!crit);
                prop_assert_eq!(c.multiplicity % 2, 1);
            }
            Err(e) => prop_assert!(false, "{}", e),
        }
    }

    #[test]
    fn transitive_output_and_extension(
        gi in 0usize..17,
        xi in any::<prop::sample::Index>(),
        q in prop::sample::select(vec![2u64, 3, 4, 5, 8, 11]),
        seed in any::<u64>(),
    ) {
        let g = library()[gi].group.clone();
        let acts = transitive_actions(&g, 27).unwrap();
        let x = xi.get(&acts);
        let n = x.points();
        let f = field(q);
        match transitive_code(x, &f, seed) {
            Ok(r) => {
                prop_assert_eq!(2 * r.code.dim() + 1, n);
                prop_assert!(hull_plus_e(&r.code));
                prop_assert!(invariance_check(&r.code, &x.image_group()).unwrap());
                let again = transitive_code(x, &f, seed).unwrap();
                prop_assert_eq!(again.report.to_text(), r.report.to_text());
                match extend_code(&r.code, seed) {
                    Ok(ext) => {
                        prop_assert_eq!(ext.code.perp_standard(), ext.code.clone());
                        prop_assert_eq!(puncture_hull(&ext.code).unwrap(), r.code);
                    }
                    Err(Error::NoSquareRoot(_)) => prop_assert!(q % 2 == 1),
                    Err(e) => prop_assert!(false, "{}", e),
                }
            }
            Err(Error::PreconditionViolated(_)) => {
                let w = permcode::numtheory::gcd(q, n as u64) != 1
                    || !permcode::numtheory::odd_order_check(q as i64, n as u64).unwrap().pass;
                prop_assert!(w);
            }
            Err(Error::TooLarge(_)) => {}
            Err(e) => prop_assert!(false, "{}", e),
        }
    }
}

#[test]
fn abelian_outputs() {
    let f21 = frobenius21();
    let a7 = f21.minimal_normal_subgroup().unwrap();
    let h7 = AbelianAction::conjugation(&a7, &f21.point_stabilizer(0)).unwrap();
    let cases: Vec<(permcode::group::PermGroup, AbelianAction, u64)> = vec![
        (cyclic(3), AbelianAction::trivial(), 4),
        (cyclic(5), AbelianAction::trivial(), 11),
        (cyclic(7), AbelianAction::trivial(), 2),
        (cyclic(7), AbelianAction::trivial(), 11),
        (a7, h7, 4),
        (cyclic(9), AbelianAction::trivial(), 4),
        (cyclic(25), AbelianAction::trivial(), 11),
        (cyclic(27), AbelianAction::trivial(), 4),
        (z3xz3(), AbelianAction::trivial(), 7),
    ];
    for (a, h, q) in cases {
        let f = field(q);
        let r = abelian_code(&a, &h, &f).unwrap();
        let n = a.order();
        let c = &r.code;
        assert!(c.perp_standard().contains_subspace(c));
        assert_eq!(2 * c.dim() + 1, n);
        assert!(!c.contains(&vec![Fel::ONE; n]));
        assert!(hull_plus_e(c));
        let sel: usize = r.partition.selected.iter().map(|&i| r.partition.orbits[i].len()).sum();
        let mir: usize = r.partition.mirror.iter().map(|&i| r.partition.orbits[i].len()).sum();
        assert_eq!(sel + mir + 1, n);
        for (&s, &m) in r.partition.selected.iter().zip(&r.partition.mirror) {
            let inv: Vec<usize> = r.partition.orbits[s].iter().map(|&x| r.table.inversion[x]).collect();
            let mut inv = inv;
            inv.sort_unstable();
            assert_eq!(inv, r.partition.orbits[m]);
        }
    }
}
