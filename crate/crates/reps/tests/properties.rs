use std::collections::BTreeMap;

use proptest::prelude::*;
use spq_algebra::{build_basis, AdjointRep, AlgebraElement, DefiningRep};
use spq_numerics::{max_abs, C64};
use spq_reps::*;

fn multiplicities(m: &ModuleSpace) -> BTreeMap<Vec<i64>, usize> {
    weight_decompose(m)
        .unwrap()
        .into_iter()
        .map(|w| (w.weight.iter().map(|x| x.round() as i64).collect(), w.multiplicity()))
        .collect()
}

fn signed_permutation(w: &[i64], perm: &[usize], signs: &[bool]) -> Vec<i64> {
    perm.iter().zip(signs).map(|(&p, &s)| if s { -w[p] } else { w[p] }).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn weyl_group_preserves_multiplicities(
        perm in Just(vec![0usize, 1, 2, 3]).prop_shuffle(),
        signs in prop::collection::vec(any::<bool>(), 4),
    ) {
        let basis = build_basis(4).unwrap();
        let modules = [
            ModuleSpace::from_realization("defining", &basis, &DefiningRep::<f64>::new(basis.rank())).unwrap(),
            ModuleSpace::from_realization("adjoint", &basis, &AdjointRep::new(basis.clone())).unwrap(),
        ];
        for m in &modules {
            let mult = multiplicities(m);
            for (w, k) in &mult {
                let image = signed_permutation(w, &perm, &signs);
                prop_assert_eq!(mult.get(&image), Some(k));
            }
        }
    }

    #[test]
    fn paired_fock_is_a_homomorphism(
        xs in prop::collection::vec(-1.0f64..1.0, 10),
        ys in prop::collection::vec(-1.0f64..1.0, 10),
    ) {
        let f = build_fock(2, 5).unwrap();
        let basis = f.basis().clone();
        let x = AlgebraElement::from_real(&basis, &xs).unwrap();
        let y = AlgebraElement::from_real(&basis, &ys).unwrap();
        let rx = f.realize_sparse(&x);
        let ry = f.realize_sparse(&y);
        let lhs = &(&rx * &ry) - &(&ry * &rx);
        let rhs = f.realize_sparse(&x.bracket(&y).unwrap());
        let diff = f.interior_dense(&(&lhs - &rhs));
        prop_assert!(max_abs(&diff) < 1e-10);
    }

    #[test]
    fn semisimple_modular_function_is_trivial(xs in prop::collection::vec(-2.0f64..2.0, 10)) {
        let basis = build_basis(2).unwrap();
        let x = AlgebraElement::from_real(&basis, &xs).unwrap().scale(C64::new(0.3, 0.7));
        let all: Vec<usize> = (0..basis.len()).collect();
        prop_assert!((modular_function(&x, &all).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn symmetric_power_modules_match_gl_dimension(top in 0i64..5) {
        let f = build_fock(3, 5).unwrap();
        let part = Partition::new(vec![top, 0, 0]).unwrap();
        let m = u4_lowest_module(&f, &part).unwrap();
        prop_assert_eq!(m.dim() as u128, weyl_dimension_gl(part.parts()).unwrap());
        prop_assert!(m.invariance_residual() < 1e-8);
    }
}
