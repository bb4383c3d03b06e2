use num_bigint::BigUint;
use num_traits::Zero;
use proptest::prelude::*;

use uniserial::constructions::{all_submodules, spin, FpModule, Subspace};
use uniserial::genprob::{gaschutz_check, p_exact_mobius, p_montecarlo};
use uniserial::linalg::FpMatrix;
use uniserial::oracle::Oracle;
use uniserial::structure::normal_subgroups;
use uniserial::{Group, Permutation};

fn perm(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n as u32).collect::<Vec<u32>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(v).unwrap())
}

fn small_group(n: usize) -> impl Strategy<Value = Group> {
    prop::collection::vec(perm(n), 1..=2).prop_map(move |gens| Group::new(n, gens).unwrap())
}

fn vector(p: u64, n: usize) -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(0..p, n)
}

fn invertible(p: u64, n: usize) -> impl Strategy<Value = FpMatrix> {
    vector(p, n * n)
        .prop_map(move |data| FpMatrix { p, rows: n, cols: n, data })
        .prop_filter("singular", |m| m.det() != 0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn multiplication_is_associative(a in perm(7), b in perm(7), c in perm(7)) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert!(a.mul(&a.inverse()).is_identity());
        prop_assert_eq!(a.conjugate_by(&b).order(), a.order());
    }

    #[test]
    fn order_divides_and_generators_belong(g in small_group(6), x in perm(6)) {
        let order = g.order();
        prop_assert!((BigUint::from(720u32) % &order).is_zero());
        for s in g.generators() {
            prop_assert!(g.contains(s).unwrap());
        }
        let h = g.subgroup(vec![g.generators()[0].clone()]).unwrap();
        prop_assert!((&order % h.order()).is_zero());
        let sym = Group::symmetric(6);
        prop_assert!(sym.contains(&x).unwrap());
    }

    #[test]
    fn normal_subgroups_match_brute_force(g in small_group(5)) {
        let o = Oracle::new(&g).unwrap();
        let mut fast: Vec<_> = normal_subgroups(&g).unwrap().iter().map(|n| o.bits_of(n)).collect();
        let mut slow = o.normal_subgroups();
        fast.sort();
        slow.sort();
        prop_assert_eq!(fast, slow);
    }

    #[test]
    fn mobius_matches_brute_force(g in small_group(5), d in 1u32..=2) {
        let o = Oracle::new(&g).unwrap();
        prop_assert_eq!(p_exact_mobius(&g, d).unwrap().value, o.generation_probability(d));
    }

    #[test]
    fn gaschutz_holds_for_random_groups(g in small_group(5)) {
        for n in normal_subgroups(&g).unwrap().iter() {
            prop_assert!(gaschutz_check(&g, n, 2).unwrap().holds());
        }
    }

    #[test]
    fn monte_carlo_is_reproducible(seed in any::<u64>()) {
        let g = Group::symmetric(4);
        let a = p_montecarlo(&g, 2, 5000, seed);
        let b = p_montecarlo(&g, 2, 5000, seed);
        prop_assert_eq!(a.successes, b.successes);
    }

    #[test]
    fn subspace_dimension_formula(a in prop::collection::vec(vector(3, 5), 0..4),
                                  b in prop::collection::vec(vector(3, 5), 0..4)) {
        let u = Subspace::span(3, 5, &a);
        let w = Subspace::span(3, 5, &b);
        let sum = u.sum(&w);
        let meet = u.intersection(&w);
        prop_assert_eq!(sum.dim() + meet.dim(), u.dim() + w.dim());
        prop_assert!(meet.is_subspace_of(&u) && meet.is_subspace_of(&w));
        prop_assert!(u.is_subspace_of(&sum));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn submodules_form_a_lattice(gens in prop::collection::vec(invertible(3, 3), 1..=2),
                                 vs in prop::collection::vec(vector(3, 3), 50)) {
        let m = FpModule::new(3, 3, gens).unwrap();
        let subs = all_submodules(&m).unwrap();
        prop_assert!(subs.contains(&Subspace::zero(3, 3)));
        prop_assert!(subs.contains(&Subspace::full(3, 3)));
        for a in &subs {
            for b in &subs {
                prop_assert!(subs.contains(&a.sum(b)));
                prop_assert!(subs.contains(&a.intersection(b)));
            }
        }
        for v in &vs {
            prop_assert!(subs.contains(&spin(&m, v)));
        }
    }
}
