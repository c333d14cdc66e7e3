mod common;

use std::collections::BTreeSet;

use num_bigint::BigInt;
use proptest::prelude::*;

use common::*;
use toric_deform::json;
use toric_deform::lattice::{smith_normal_form, IntMatrix};
use toric_deform::mutation::{inverse_datum, minimal_witnesses};
use toric_deform::{
    build_tilde, mutate, mutation_family, specialize_fiber, ParameterPoint, PolarizedToricVariety,
    Polyhedron,
};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn smith_normal_form_factorises(rows in prop::collection::vec(prop::collection::vec(-6i64..=6, 1..5), 1..5)) {
        let cols = rows[0].len();
        let rows: Vec<Vec<i64>> = rows.into_iter().map(|mut r| { r.resize(cols, 0); r }).collect();
        let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
        let a = IntMatrix::from_i64_rows(&refs);
        let s = smith_normal_form(&a);
        prop_assert_eq!(s.u.mul(&a).unwrap().mul(&s.v).unwrap(), s.d.clone());
        prop_assert!(s.d.is_diagonal());
        prop_assert_eq!(s.u.determinant().unwrap().magnitude().clone(), 1u32.into());
        prop_assert_eq!(s.v.determinant().unwrap().magnitude().clone(), 1u32.into());
        let f = s.invariant_factors();
        for w in f.windows(2) {
            prop_assert!(w[0] > BigInt::from(0));
            prop_assert_eq!(&w[1] % &w[0], BigInt::from(0));
        }
        prop_assert_eq!(s.rank(), a.rank());
    }

    #[test]
    fn dual_of_dual_is_the_cone(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = 2 + (seed % 3) as usize;
        let c = random_any_cone(&mut r, n, 3);
        prop_assert!(same_cone(&c.dual().dual(), &c), "{}", c);
    }

    #[test]
    fn polyhedron_representations_agree(seed in any::<u64>()) {
        let mut r = rng(seed);
        let p = random_polyhedron(&mut r, 2 + (seed % 2) as usize, 3);
        let back = Polyhedron::from_constraints(p.rank(), p.inequalities(), p.equations()).unwrap();
        prop_assert_eq!(&back, &p);
        let hull = Polyhedron::convex_hull(p.rank(), p.vertices(), p.rays()).unwrap();
        prop_assert_eq!(hull, p);
    }

    #[test]
    fn minkowski_sum_commutes(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = 2 + (seed % 2) as usize;
        let (a, b, c) = (random_polyhedron(&mut r, n, 2), random_polyhedron(&mut r, n, 2), random_polytope(&mut r, n, 2));
        prop_assert_eq!(a.minkowski_sum(&b).unwrap(), b.minkowski_sum(&a).unwrap());
        let left = a.minkowski_sum(&b).unwrap().minkowski_sum(&c).unwrap();
        let right = a.minkowski_sum(&b.minkowski_sum(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn lattice_points_match_brute_force(seed in any::<u64>()) {
        let pts = full_dimensional_points(seed);
        let refs: Vec<&[i64]> = pts.iter().map(Vec::as_slice).collect();
        let p = Polyhedron::from_i64_points(&refs).unwrap();
        prop_assert_eq!(p.lattice_points().unwrap(), brute_force_lattice_points(&pts));
    }

    #[test]
    fn support_function_is_minimum_over_polytope(seed in any::<u64>()) {
        let mut r = rng(seed);
        let p = if seed % 3 == 0 { random_fano_3d(&mut r) } else { random_fano_polygon(&mut r) };
        let v = PolarizedToricVariety::from_polytope(p.polytope()).unwrap();
        let pm = v.polytope_in_m();
        for rd in v.ray_data() {
            prop_assert_eq!(pm.min_functional(&rd.rho).unwrap().0, rd.phi());
        }
        prop_assert_eq!(&pm.normal_fan().unwrap(), v.fan());
    }

    #[test]
    fn polyhedron_json_round_trip(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = 2 + (seed % 2) as usize;
        let p = random_polyhedron(&mut r, n, 3).scale(&num_rational::BigRational::new(1.into(), 3.into()));
        prop_assert_eq!(json::polyhedron_from_json(&json::polyhedron_to_json(&p)).unwrap(), p);
        let c = random_any_cone(&mut r, n, 3);
        prop_assert!(same_cone(&json::cone_from_json(&json::cone_to_json(&c)).unwrap(), &c));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn datum_json_round_trip(seed in any::<u64>()) {
        let d = random_datum(&mut rng(seed));
        let text = serde_json::to_string(&json::datum_to_json(&d)).unwrap();
        let back = json::datum_from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        prop_assert_eq!(back, d);
    }

    #[test]
    fn tilde_rays_pair_positively_with_at_most_one_parameter(seed in any::<u64>()) {
        let d = random_datum(&mut rng(seed));
        let t = build_tilde(&d).unwrap();
        for r in &t.rays {
            let positive = r.e_pairings.iter().filter(|a| **a > BigInt::from(0)).count();
            prop_assert!(positive <= 1, "{} has {} positive pairings", r.ray, positive);
        }
    }

    #[test]
    fn floor_min_identity_on_dual_points(seed in any::<u64>()) {
        let d = random_datum(&mut rng(seed));
        for u in cone_points_in_box(&d.sigma().dual(), 3) {
            let (lhs, rhs) = toric_deform::datum::floor_min_sides(&d, &u).unwrap();
            prop_assert_eq!(lhs, rhs, "u = {}", u);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn mutation_round_trip_and_witness_independence(seed in any::<u64>()) {
        let (p, d) = random_mutation(&mut rng(seed));
        let q = mutate(&p, &d).unwrap();
        let back = inverse_datum(&q, &d).unwrap();
        prop_assert_eq!(mutate(&q, &back).unwrap(), p.clone());
        let min = d.with_witnesses(&p, minimal_witnesses(&p, &d).unwrap()).unwrap();
        prop_assert_eq!(mutate(&p, &min).unwrap(), q);
    }

    #[test]
    fn family_equations_are_homogeneous_and_coprime(seed in any::<u64>()) {
        let (p, d) = random_mutation(&mut rng(seed));
        let fam = mutation_family(&p, &d).unwrap();
        prop_assert!(fam.cox.is_homogeneous(&fam.trinomial));
        prop_assert!(fam.cox.is_homogeneous(&fam.monomial));
        let shared: BTreeSet<usize> = fam.trinomial.common_variables().intersection(&fam.monomial.support()).copied().collect();
        prop_assert!(shared.is_empty());
        for (a, b, c) in [(0, 1, -1), (1, 0, -1), (1, 1, -1), (2, -1, 3), (1, 1, 1)] {
            let f = specialize_fiber(&fam, &ParameterPoint::from_i64s(a, b, c).unwrap()).unwrap();
            prop_assert!(f.coprime);
            prop_assert_ne!(f.matches_toric, Some(false));
        }
    }
}
