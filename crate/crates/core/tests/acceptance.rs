//! One line per acceptance criterion; exits non-zero if any fails.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use num_bigint::BigInt;

use common::*;
use toric_deform::cox::{self, CoxPolynomial, CoxSystem, PairingTable};
use toric_deform::datum::{check_tilde_structure, floor_min_sides};
use toric_deform::mutation::{inverse_datum, minimal_witnesses, FiberKind};
use toric_deform::oracle::{
    boundary_equality_check, degree_zero_equality_check, hilbert_basis, Bound,
};
use toric_deform::presets;
use toric_deform::{
    build_tilde, mutate, mutation_family, specialize_fiber, FanoPolytope, MutationDatum,
    ParameterPoint, Polyhedron,
};

const EXAMPLE_TIME_LIMIT: Duration = Duration::from_secs(1);
const ORACLE_TIME_LIMIT: Duration = Duration::from_secs(30);
const ORACLE_BOUND: u64 = 12;
const MIN_ORACLE_PAIRS: usize = 200;
const CORPUS_SIZE: usize = 60;
const CORPUS_SEED: u64 = 2024;
const DUAL_BOX: i64 = 5;
const KERNEL_CASES: u64 = 1000;
const RANDOM_MUTATIONS: usize = 10;

type Criterion = fn() -> Result<Outcome, toric_deform::Error>;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

/// Terms as (signed coefficient, variable name -> exponent).
fn terms_by_name(cox: &CoxSystem, f: &CoxPolynomial) -> BTreeSet<(String, BTreeMap<String, u64>)> {
    f.terms
        .iter()
        .map(|t| {
            let exps = t
                .exps
                .iter()
                .enumerate()
                .filter(|(_, e)| **e > 0)
                .map(|(j, e)| (cox.names()[j].clone(), *e))
                .collect();
            (t.coeff.to_signed_string(), exps)
        })
        .collect()
}

fn expected_terms(terms: &[(&str, &[(&str, u64)])]) -> BTreeSet<(String, BTreeMap<String, u64>)> {
    terms.iter()
        .map(|(c, e)| {
            (
                c.to_string(),
                e.iter().map(|(n, x)| (n.to_string(), *x)).collect(),
            )
        })
        .collect()
}

fn ca1_end_to_end() -> Result<Outcome, toric_deform::Error> {
    let start = Instant::now();
    let d = presets::ca1_datum(3)?;
    let t = build_tilde(&d)?;
    let det = toric_deform::lattice::IntMatrix::from_vectors(4, &t.ray_vectors())?.determinant()?;
    let eq = presets::affine_equations(&t, true, Some(&presets::ca1_aliases()))?;
    let table = PairingTable::from_tilde(&t);
    let trinomial = &cox::trinomials(&table)?[0];
    let monomial = cox::boundary_monomial(&table).monomial;
    let elapsed = start.elapsed();

    let tri_ok = terms_by_name(&eq.cox, trinomial)
        == expected_terms(&[
            ("+1", &[("x", 1), ("y", 1)]),
            ("-1", &[("u", 2)]),
            ("-t1", &[("z", 3)]),
        ]);
    let mono_ok =
        terms_by_name(&eq.cox, &monomial) == expected_terms(&[("+1", &[("z", 1), ("u", 1)])]);
    let passed = t.rays.len() == 4
        && det.magnitude() == &1u32.into()
        && tri_ok
        && mono_ok
        && elapsed < EXAMPLE_TIME_LIMIT;
    Ok(outcome(
        passed,
        format!(
            "{} rays, |det| = {}, trinomial {}, monomial {}, {:?}",
            t.rays.len(),
            det.magnitude(),
            eq.trinomials.join(", "),
            eq.monomial.unwrap_or_default(),
            elapsed
        ),
    ))
}

fn p2_p114_end_to_end() -> Result<Outcome, toric_deform::Error> {
    let start = Instant::now();
    let (p, d) = presets::p2_p114_datum()?;
    let q = mutate(&p, &d)?;
    let fam = mutation_family(&p, &d)?;
    let fiber = specialize_fiber(&fam, &ParameterPoint::from_i64s(0, 1, -1)?)?;
    let elapsed = start.elapsed();

    let expected_p = Polyhedron::from_i64_points(&[&[-1, -1], &[0, 1], &[4, 3]])?;
    let rays: BTreeSet<_> = fam.rays.iter().cloned().collect();
    let expected_rays: BTreeSet<_> = [[0, 1, 0], [-1, -1, -1], [0, 0, 1], [2, 1, 1]]
        .iter()
        .map(|r| lv(r))
        .collect();
    let weights = fam.weights.clone().unwrap_or_default();
    let mut sorted = weights.clone();
    sorted.sort();
    let heavy: Vec<_> = fam
        .cox
        .print_order()
        .iter()
        .zip(&weights)
        .filter(|(_, w)| **w == BigInt::from(2))
        .map(|(&j, _)| fam.cox.rays()[j].clone())
        .collect();
    let checks = [
        q.polytope() == &expected_p,
        rays == expected_rays,
        sorted == [1, 1, 1, 2].map(BigInt::from),
        heavy == vec![lv(&[-1, -1, -1])],
        fam.format(&fam.trinomial) == "a*x^2 + b*y + c*z0*z1",
        fam.format(&fam.monomial) == "x*y",
        fiber.kind == FiberKind::Source && fiber.matches_toric == Some(true),
        elapsed < EXAMPLE_TIME_LIMIT,
    ];
    Ok(outcome(
        checks.iter().all(|c| *c),
        format!(
            "P' = {}, weights ({}), {} / {}, fiber [0:1:-1] {}, {:?}",
            q.polytope(),
            weights
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(","),
            fam.format(&fam.trinomial),
            fam.format(&fam.monomial),
            fam.format(&fiber.trinomial),
            elapsed
        ),
    ))
}

fn structural_suite() -> Result<Outcome, toric_deform::Error> {
    let corpus = datum_corpus(CORPUS_SEED, CORPUS_SIZE);
    let (mut structure, mut fischer) = (0, 0);
    for d in &corpus {
        let t = build_tilde(d)?;
        structure += usize::from(check_tilde_structure(&t, d)?.passed());
        fischer += usize::from(cox::fischer_shapiro_check(
            &PairingTable::from_tilde(&t).matrix(),
        ));
    }
    let n = corpus.len();
    Ok(outcome(
        structure == n && fischer == n && n >= 50,
        format!("{n} data: structure {structure}/{n}, Fischer-Shapiro {fischer}/{n}"),
    ))
}

fn floor_min_suite() -> Result<Outcome, toric_deform::Error> {
    let corpus = datum_corpus(CORPUS_SEED, CORPUS_SIZE);
    let (mut checked, mut failures) = (0usize, 0usize);
    for d in &corpus {
        for u in cone_points_in_box(&d.sigma().dual(), DUAL_BOX) {
            let (lhs, rhs) = floor_min_sides(d, &u)?;
            checked += 1;
            failures += usize::from(lhs != rhs);
        }
    }
    Ok(outcome(
        failures == 0 && checked > 0,
        format!("{checked} characters, {failures} failures"),
    ))
}

fn oracle_suite() -> Result<Outcome, toric_deform::Error> {
    let start = Instant::now();
    let mut cases = Vec::new();
    for p in 1..=3 {
        cases.push((format!("cA1 p={p}"), build_tilde(&presets::ca1_datum(p)?)?));
    }
    cases.push((
        "toy-plane".to_string(),
        build_tilde(&presets::toy_plane_datum()?)?,
    ));
    let (p, d) = presets::p2_p114_datum()?;
    cases.push((
        "p2-p114 induced".to_string(),
        mutation_family(&p, &d)?.induced.tilde,
    ));
    let mut passed = true;
    let mut parts = Vec::new();
    for (name, t) in &cases {
        let dz = degree_zero_equality_check(t, ORACLE_BOUND)?;
        let be = boundary_equality_check(t, ORACLE_BOUND)?;
        passed &= dz.passed() && be.passed() && dz.checked >= MIN_ORACLE_PAIRS;
        parts.push(format!(
            "{name}: {} pairs/{} failures",
            dz.checked,
            dz.failures.len() + be.failures.len()
        ));
    }
    let elapsed = start.elapsed();
    passed &= elapsed < ORACLE_TIME_LIMIT;
    Ok(outcome(
        passed,
        format!("{}, {:?}", parts.join("; "), elapsed),
    ))
}

fn kernel_suite() -> Result<Outcome, toric_deform::Error> {
    let (mut dual, mut hull, mut minkowski, mut points) = (0u64, 0u64, 0u64, 0u64);
    for seed in 0..KERNEL_CASES {
        let mut r = rng(seed);
        let n = 2 + (seed % 3) as usize;
        let c = random_any_cone(&mut r, n, 3);
        dual += u64::from(same_cone(&c.dual().dual(), &c));

        let m = 2 + (seed % 2) as usize;
        let p = random_polyhedron(&mut r, m, 3);
        let again = Polyhedron::convex_hull(m, p.vertices(), p.rays())?;
        let from_h = Polyhedron::from_constraints(m, p.inequalities(), p.equations())?;
        hull += u64::from(again == p && from_h == p);

        let (a, b, c) = (
            random_polyhedron(&mut r, m, 2),
            random_polyhedron(&mut r, m, 2),
            random_polytope(&mut r, m, 2),
        );
        let comm = a.minkowski_sum(&b)? == b.minkowski_sum(&a)?;
        let assoc =
            a.minkowski_sum(&b)?.minkowski_sum(&c)? == a.minkowski_sum(&b.minkowski_sum(&c)?)?;
        minkowski += u64::from(comm && assoc);

        let pts = full_dimensional_points(seed);
        let refs: Vec<&[i64]> = pts.iter().map(Vec::as_slice).collect();
        points += u64::from(
            Polyhedron::from_i64_points(&refs)?.lattice_points()?
                == brute_force_lattice_points(&pts),
        );
    }
    let k = KERNEL_CASES;
    Ok(outcome(
        dual == k && hull == k && minkowski == k && points == k,
        format!("dual-dual {dual}/{k}, hull {hull}/{k}, Minkowski {minkowski}/{k}, lattice points {points}/{k}"),
    ))
}

fn round_trip(p: &FanoPolytope, d: &MutationDatum) -> Result<bool, toric_deform::Error> {
    let q = mutate(p, d)?;
    let back = inverse_datum(&q, d)?;
    Ok(&mutate(&q, &back)? == p)
}

fn mutation_suite() -> Result<Outcome, toric_deform::Error> {
    let (p, d) = presets::p2_p114_datum()?;
    let q = mutate(&p, &d)?;
    let d_back = inverse_datum(&q, &d)?;
    let mut inverse_failures =
        usize::from(!round_trip(&p, &d)?) + usize::from(!round_trip(&q, &d_back)?);
    let mut witness_failures = 0;
    let mut coprime_failures = 0;
    let mut cases = vec![(p, d)];
    let random = mutation_corpus(CORPUS_SEED, RANDOM_MUTATIONS);
    for (p, d) in &random {
        inverse_failures += usize::from(!round_trip(p, d)?);
    }
    cases.extend(random);
    for (p, d) in &cases {
        let min = d.with_witnesses(p, minimal_witnesses(p, d)?)?;
        witness_failures += usize::from(mutate(p, &min)? != mutate(p, d)?);
        let fam = mutation_family(p, d)?;
        let shared = fam
            .trinomial
            .common_variables()
            .intersection(&fam.monomial.support())
            .count();
        coprime_failures += usize::from(shared > 0);
        for (a, b, c) in [(0, 1, -1), (1, 0, -1), (1, 1, -1), (2, 3, 1)] {
            coprime_failures +=
                usize::from(!specialize_fiber(&fam, &ParameterPoint::from_i64s(a, b, c)?)?.coprime);
        }
    }
    Ok(outcome(
        inverse_failures + witness_failures + coprime_failures == 0,
        format!(
            "{} mutations: inverse failures {inverse_failures}, witness failures {witness_failures}, coprimality failures {coprime_failures}",
            cases.len() + 1
        ),
    ))
}

fn ca1_hilbert_basis() -> Result<Outcome, toric_deform::Error> {
    let d = presets::ca1_datum(3)?;
    let hb = hilbert_basis(&d.sigma().dual(), &Bound::Degree(20))?;
    let mut expected: Vec<_> = [[1, 1, 0], [-1, 1, 0], [0, 0, 1], [0, 1, 0]]
        .iter()
        .map(|r| lv(r))
        .collect();
    expected.sort();
    let shown: Vec<String> = hb.generators.iter().map(ToString::to_string).collect();
    Ok(outcome(
        hb.complete && hb.generators == expected,
        format!("{}, complete: {}", shown.join(" "), hb.complete),
    ))
}

fn main() {
    let criteria: [(&str, Criterion); 8] = [
        ("cA1 deformation end to end (p = 3)", ca1_end_to_end),
        ("plane to P(1,1,4) mutation end to end", p2_p114_end_to_end),
        ("enlarged cone structure on random data", structural_suite),
        ("floor-min identity on random data", floor_min_suite),
        ("ideal oracles on the worked examples", oracle_suite),
        ("convexity kernel properties", kernel_suite),
        ("mutation properties", mutation_suite),
        ("Hilbert basis of the cA1 dual cone", ca1_hilbert_basis),
    ];
    let mut all = true;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = check().unwrap_or_else(|e| outcome(false, format!("error: {e}")));
        all &= o.passed;
        let status = if o.passed { "PASS" } else { "FAIL" };
        println!(
            "criterion {}: {status}  {name}  [{}] ({:.2?})",
            i + 1,
            o.detail,
            start.elapsed()
        );
    }
    if !all {
        std::process::exit(1);
    }
}
