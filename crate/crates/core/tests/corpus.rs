mod common;

use std::collections::HashMap;

use num_bigint::BigInt;

use common::*;
use toric_deform::oracle::{bounded_points, degree_zero_equality_check, hilbert_basis, Bound};
use toric_deform::polarized::e0_interior;
use toric_deform::{mutation_family, Cone, LatticeVector};

fn degree(c: &Cone, v: &LatticeVector) -> BigInt {
    c.facets().iter().map(|f| f.dot(v)).sum()
}

/// Irreducible elements by saturation: walk the points in order of degree and
/// keep each one that is not a sum of points kept so far.
fn saturated_basis(c: &Cone, points: &[LatticeVector]) -> Vec<LatticeVector> {
    fn generated(
        p: &LatticeVector,
        c: &Cone,
        kept: &[LatticeVector],
        memo: &mut HashMap<LatticeVector, bool>,
    ) -> bool {
        if p.is_zero() {
            return true;
        }
        if let Some(&b) = memo.get(p) {
            return b;
        }
        let ans = kept.iter().any(|h| {
            let rest = p - h;
            c.contains(&rest) && generated(&rest, c, kept, memo)
        });
        memo.insert(p.clone(), ans);
        ans
    }
    let mut sorted: Vec<LatticeVector> = points.iter().filter(|p| !p.is_zero()).cloned().collect();
    sorted.sort_by_key(|p| degree(c, p));
    let mut kept: Vec<LatticeVector> = Vec::new();
    for p in sorted {
        let mut memo = HashMap::new();
        if !generated(&p, c, &kept, &mut memo) {
            kept.push(p);
        }
    }
    kept.sort();
    kept
}

#[test]
fn hilbert_basis_agrees_with_saturation() {
    let mut compared = 0;
    for d in datum_corpus(11, 60) {
        for c in [d.sigma().dual(), d.sigma().clone()] {
            let needed: BigInt = c.rays().iter().map(|r| degree(&c, r)).sum();
            let Some(b) = u64::try_from(needed).ok().filter(|b| *b <= 40) else {
                continue;
            };
            let bound = Bound::Degree(b);
            let hb = hilbert_basis(&c, &bound).unwrap();
            assert!(hb.complete);
            let pts = bounded_points(&c, &bound).unwrap();
            assert_eq!(hb.generators, saturated_basis(&c, &pts), "cone {c}");
            compared += 1;
        }
    }
    assert!(compared >= 60, "only {compared} cones compared");
}

#[test]
fn corpus_covers_unbounded_and_rational_data() {
    let corpus = datum_corpus(3, 60);
    let unbounded = corpus.iter().filter(|d| !d.q().is_bounded()).count();
    let rational = corpus
        .iter()
        .filter(|d| !d.summands()[0].is_lattice())
        .count();
    let two = corpus.iter().filter(|d| d.k() == 2).count();
    let three = corpus.iter().filter(|d| d.n() == 3).count();
    assert!(
        unbounded > 0 && rational > 0 && two > 0 && three > 0,
        "{unbounded} {rational} {two} {three}"
    );
}

#[test]
fn induced_data_of_random_mutations() {
    for (i, (p, d)) in mutation_corpus(5, 10).into_iter().enumerate() {
        let fam = mutation_family(&p, &d).unwrap();
        assert!(e0_interior(&fam.induced.tilde));
        if i < 3 {
            let report = degree_zero_equality_check(&fam.induced.tilde, 6).unwrap();
            assert!(report.passed(), "{:?}", report.failures.first());
        }
    }
}
