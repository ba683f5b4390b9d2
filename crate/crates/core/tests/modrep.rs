use std::sync::Arc;

use permcode::library::{action_unions, library};
use permcode::modrep::{homogeneous_decomposition, iso_test, FGModule};
use permcode::{FiniteField, Subspace};
use proptest::prelude::*;

fn field(q: u64) -> Arc<FiniteField> {
    match q {
        4 => FiniteField::shared(2, 2),
        8 => FiniteField::shared(2, 3),
        _ => FiniteField::shared(q, 1),
    }
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn decomposition_is_direct_and_irreducible(
        gi in 0usize..17,
        ui in any::<prop::sample::Index>(),
        q in prop::sample::select(vec![2u64, 4, 5, 8, 11]),
        seed in any::<u64>(),
    ) {
        let g = library()[gi].group.clone();
        prop_assume!(permcode::numtheory::gcd(q, g.order() as u64) == 1);
        let unions = action_unions(&g, 10).unwrap();
        let (_, x) = ui.get(&unions);
        let f = field(q);
        let v = FGModule::permutation_module(x, &f).unwrap();
        let parts = v.decompose(seed).unwrap();
        let mut sum = Subspace::zero(&f, x.points());
        for p in &parts {
            prop_assert!(p.certify_irreducible(seed).unwrap());
            prop_assert!(v.is_stable(p.carrier()));
            sum = sum.sum(p.carrier()).unwrap();
        }
        prop_assert_eq!(parts.iter().map(|p| p.dim()).sum::<usize>(), v.dim());
        prop_assert_eq!(sum.dim(), v.dim());

        let h = homogeneous_decomposition(&v, seed).unwrap();
        prop_assert_eq!(h.total_dim(), v.dim());
        for (i, c) in h.classes.iter().enumerate() {
            prop_assert_eq!(c.component.dim(), c.multiplicity * c.sample.dim());
            prop_assert_eq!(h.classes[c.dual].dual, i);
            prop_assert_eq!(c.self_dual, c.dual == i);
            for (j, d) in h.classes.iter().enumerate() {
                let iso = iso_test(&c.sample, &d.sample).unwrap().is_some();
                prop_assert_eq!(iso, i == j);
            }
        }
        // the trivial module occurs once per orbit
        let trivial: Vec<_> = h
            .classes
            .iter()
            .filter(|c| c.sample.dim() == 1 && c.sample.action().iter().all(|m| m.get(0, 0) == permcode::Fel::ONE))
            .collect();
        prop_assert_eq!(trivial.len(), 1);
        prop_assert_eq!(trivial[0].multiplicity, x.orbits().len());
    }
}
