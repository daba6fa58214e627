mod common;

use aodesolve::algsolve::{algebraic_solve, verify_solution_polynomial};
use aodesolve::diff_ring::{derive, prem_with_fuel};
use aodesolve::poly::gcd::{gcd, resultant};
use aodesolve::poly::{Poly, Var};
use aodesolve::solver::shifted_system;
use aodesolve::systems::{is_differential_simple, DiffSystem};
use aodesolve::thomas::differential_decompose;
use aodesolve::Config;
use common::*;
use proptest::prelude::*;

fn vars() -> Vec<Var> {
    vec![Var::jet(0, 0), Var::jet(0, 1), Var::jet(1, 0), Var::jet(1, 1), Var::X]
}

prop_compose! {
    fn small_poly()(seed in any::<u64>(), terms in 1usize..4) -> Poly {
        random_poly(&mut rng(seed), &vars(), 3, terms, 4)
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn derive_is_a_derivation(f in small_poly(), g in small_poly()) {
        let lhs = derive(&(&f * &g), 1);
        let rhs = &(&derive(&f, 1) * &g) + &(&f * &derive(&g, 1));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn resultant_vanishes_with_common_factor(seed in any::<u64>()) {
        let mut r = rng(seed);
        let y = Var::jet(0, 0);
        let a = random_poly(&mut r, &[y, Var::X], 3, 3, 4);
        let b = random_poly(&mut r, &[y, Var::X], 3, 3, 4);
        prop_assume!(a.degree(y) > 0 && b.degree(y) > 0);
        let common = gcd(&a, &b, y).unwrap().degree(y) > 0;
        prop_assert_eq!(resultant(&a, &b, y).unwrap().is_zero(), common);
        let g = &Poly::var(y) - &Poly::x();
        let (ga, gb) = (&a * &g, &b * &g);
        prop_assert!(resultant(&ga, &gb, y).unwrap().is_zero());
    }

    #[test]
    fn reduction_terminates_within_fuel(f in small_poly(), g in small_poly()) {
        prop_assume!(g.has_jets());
        prop_assert!(prem_with_fuel(&f, &[g], true, 10_000).is_ok());
    }
}

#[test]
fn decomposition_of_simple_output_is_idempotent() {
    let cfg = Config::default();
    for text in [FOUR_EQUATIONS, THREE_EQUATIONS, TWO_EQUATIONS] {
        for g in differential_decompose(&sys(text), &cfg).unwrap().systems {
            assert!(is_differential_simple(&g.system, true, &cfg).unwrap().is_ok());
            let again = differential_decompose(&g.system, &cfg).unwrap();
            assert_eq!(again.systems.len(), 1, "{}", g.system);
            solution_equivalent(&again.systems[0].system, &g.system).unwrap();
        }
    }
}

#[test]
fn shifted_solution_polynomials_verify() {
    let cfg = Config::default();
    for text in ["y*y' - 1 = 0", "8*y'^3 - 27*y = 0", "y'^2 - 4*y = 0"] {
        let f = sys(text).equations[0].clone();
        let q = algebraic_solve(&f, &cfg).unwrap().expect("algebraic solution");
        for (n, d) in [(1, 1), (-2, 1), (1, 3), (5, 2)] {
            let c = Poly::constant(rat(n, d).into());
            let s = DiffSystem::new(vec!["y".into()], vec![q.poly.clone()], vec![]);
            let moved = shifted_system(&s, &c).unwrap().equations[0].clone();
            assert!(verify_solution_polynomial(&f, &moved).unwrap(), "{text}: {moved}");
        }
    }
}
