use std::sync::Arc;

use proptest::prelude::*;

use nf_pairing::cohomology::{
    cocycle_basis, coboundary, cup_pairing_oracle, parabolic_potentials, random_parabolic, ParabolicData, TwistedCocycle,
};
use nf_pairing::linalg::{self, Matrix};
use nf_pairing::normal_function::build_section;
use nf_pairing::pencil::PencilModel;
use nf_pairing::poincare_degree::{degree_of_pair, verify_theorem};
use nf_pairing::random::{primitive_vector, small_symplectic, Rng};
use nf_pairing::symplectic::{
    invariant_sublattice, is_symplectic, pair, solve_potential, transvection, LatticeVector, RatVector, Ring,
};

fn lattice(coords: &[i64]) -> LatticeVector {
    LatticeVector::from_i64(coords).unwrap()
}

fn pencil(seed: u64) -> Arc<PencilModel> {
    let mut rng = Rng::from_seed(seed);
    let genus = rng.range(1, 3);
    let k = rng.range(2 * genus + 1, 8) as usize;
    Arc::new(PencilModel::random_instance(genus, k, rng.next_u64()).unwrap())
}

fn coords(genus: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-20i64..=20, 2 * genus)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pairing_is_alternating_and_linear(
        (x, y, z) in (1usize..=4).prop_flat_map(|g| (coords(g), coords(g), coords(g)))
    ) {
        let (x, y, z) = (lattice(&x), lattice(&y), lattice(&z));
        prop_assert_eq!(pair(&x, &y).unwrap() + pair(&y, &x).unwrap(), 0.into());
        prop_assert_eq!(pair(&(&x + &z), &y).unwrap(), pair(&x, &y).unwrap() + pair(&z, &y).unwrap());
    }

    #[test]
    fn symplectic_maps_preserve_the_pairing(seed in any::<u64>(), g in 1usize..=4) {
        let mut rng = Rng::from_seed(seed);
        let m = small_symplectic(g, &mut rng).unwrap();
        let x = primitive_vector(g, &mut rng);
        let y = primitive_vector(g, &mut rng);
        prop_assert_eq!(pair(&m.apply(&x), &m.apply(&y)).unwrap(), pair(&x, &y).unwrap());
    }

    #[test]
    fn transvections_are_symplectic_with_corank_one(seed in any::<u64>(), g in 1usize..=4) {
        let mut rng = Rng::from_seed(seed);
        let delta = primitive_vector(g, &mut rng);
        let t = transvection(&delta).unwrap();
        prop_assert!(is_symplectic(t.matrix()).unwrap());
        prop_assert_eq!(invariant_sublattice(&t).len(), 2 * g - 1);
        prop_assert_eq!(t.apply(&delta), delta);
    }

    #[test]
    fn solve_potential_is_exact_or_provably_inconsistent(seed in any::<u64>(), g in 1usize..=3, c in coords(3)) {
        let mut rng = Rng::from_seed(seed);
        let t = small_symplectic(g, &mut rng).unwrap();
        let c = RatVector::from_i64(&c[..2 * g]).unwrap();
        match solve_potential(&t, &c, Ring::Rationals).unwrap() {
            Some(a) => prop_assert_eq!(&t.apply(&a) - &a, c),
            None => {
                let n = 2 * g;
                let a = t.minus_identity().map(linalg::to_rat);
                let augmented = Matrix::from_fn(n, n + 1, |r, k| if k < n { a[(r, k)].clone() } else { c.coords()[r].clone() });
                prop_assert!(linalg::rank(&augmented) > linalg::rank(&a));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_pencils_satisfy_the_relation(seed in any::<u64>()) {
        let p = pencil(seed);
        prop_assert!(p.partial_products().last().unwrap().is_identity());
        for t in p.monodromies() {
            prop_assert!(is_symplectic(t.matrix()).unwrap());
        }
    }

    #[test]
    fn word_monodromy_is_a_homomorphism(seed in any::<u64>(), u in prop::collection::vec(1i64..=6, 0..6), v in prop::collection::vec(-6i64..=-1, 0..6)) {
        let p = pencil(seed);
        let full: Vec<i64> = u.iter().chain(&v).copied().collect();
        let lhs = p.monodromy_of_word(&full).unwrap();
        let rhs = p.monodromy_of_word(&u).unwrap().compose(&p.monodromy_of_word(&v).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn cocycle_space_dimension(seed in any::<u64>()) {
        let p = pencil(seed);
        prop_assert_eq!(cocycle_basis(&p, Ring::Rationals).len(), 2 * p.genus() * (p.punctures() - 1));
    }

    #[test]
    fn sections_close_up(seed in any::<u64>()) {
        let p = pencil(seed);
        let mut rng = Rng::from_seed(seed ^ 1);
        let (c, _) = random_parabolic(&p, Ring::Rationals, &mut rng);
        let s = build_section(&c).unwrap();
        prop_assert!(s.corner_values().last().unwrap().is_zero());
        prop_assert!(s.corner_values()[0].is_zero());
    }

    #[test]
    fn rational_pairing_is_bilinear_symmetric_and_coboundary_blind(seed in any::<u64>()) {
        let p = pencil(seed);
        let mut rng = Rng::from_seed(seed ^ 2);
        let x = random_parabolic(&p, Ring::Rationals, &mut rng);
        let y = random_parabolic(&p, Ring::Rationals, &mut rng);
        let z = random_parabolic(&p, Ring::Rationals, &mut rng);
        let cup = |a: &(TwistedCocycle, ParabolicData), b: &(TwistedCocycle, ParabolicData)| cup_pairing_oracle(&a.0, &a.1, &b.0, &b.1).unwrap();
        let xz = (x.0.add(&z.0).unwrap(), x.1.add(&z.1));
        prop_assert_eq!(cup(&xz, &y), cup(&x, &y) + cup(&z, &y));
        prop_assert_eq!(cup(&x, &y), cup(&y, &x));
        let v: Vec<i64> = (0..2 * p.genus()).map(|_| rng.range(-3, 3)).collect();
        let (b, ab) = coboundary(&RatVector::from_i64(&v).unwrap(), &p).unwrap();
        let xb = (x.0.add(&b).unwrap(), x.1.add(&ab));
        prop_assert_eq!(cup(&xb, &y), cup(&x, &y));
    }

    #[test]
    fn rational_theorem_identity(seed in any::<u64>()) {
        let p = pencil(seed);
        let mut rng = Rng::from_seed(seed ^ 3);
        let (c1, a1) = random_parabolic(&p, Ring::Rationals, &mut rng);
        let (c2, a2) = random_parabolic(&p, Ring::Rationals, &mut rng);
        let report = verify_theorem(&c1, &a1, &c2, &a2, 1, None).unwrap();
        prop_assert!(report.equal, "{} vs {}", report.lhs, report.rhs);
    }

    #[test]
    fn potential_shifts_change_neither_side(seed in any::<u64>()) {
        let p = pencil(seed);
        let mut rng = Rng::from_seed(seed ^ 4);
        let (c1, a1) = random_parabolic(&p, Ring::Integers, &mut rng);
        let (c2, a2) = random_parabolic(&p, Ring::Integers, &mut rng);
        let i = rng.below(p.punctures() as u64) as usize;
        let invariant = invariant_sublattice(p.monodromy(i));
        let by = invariant.iter().fold(RatVector::zero(p.genus()), |acc, v| &acc + &v.to_rational().scale(&linalg::rat(rng.range(-2, 2))));
        let shifted = a1.shifted(i, &by);
        prop_assert_eq!(
            cup_pairing_oracle(&c1, &shifted, &c2, &a2).unwrap(),
            cup_pairing_oracle(&c1, &a1, &c2, &a2).unwrap()
        );
        prop_assert_eq!(degree_of_pair(&c1, &shifted, &c2, &a2).unwrap(), degree_of_pair(&c1, &a1, &c2, &a2).unwrap());
    }

    #[test]
    fn gluing_maps_fix_puncture_values(seed in any::<u64>()) {
        let p = pencil(seed);
        let mut rng = Rng::from_seed(seed ^ 5);
        let (c, a) = random_parabolic(&p, Ring::Integers, &mut rng);
        let s = nf_pairing::normal_function::build_extended_section(&c, &a).unwrap();
        for i in 0..p.punctures() {
            let g = s.edge_identification(i).unwrap();
            prop_assert_eq!(&g.apply(s.puncture_value(i)), s.puncture_value(i));
        }
        prop_assert!(parabolic_potentials(&c, Ring::Integers).is_some());
    }
}

#[test]
fn pairing_unit_value() {
    let e1 = lattice(&[1, 0]);
    let f1 = lattice(&[0, 1]);
    assert_eq!(pair(&e1, &f1).unwrap(), 1.into());
}
