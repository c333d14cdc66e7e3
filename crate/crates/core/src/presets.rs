//! Worked examples with their expected outputs, runnable end to end.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::cone::Cone;
use crate::cox::{self, AliasTable, CoxSystem, PairingTable};
use crate::datum::{
    build_tilde, check_tilde_structure, validate_datum, DeformationDatum, TildeData,
};
use crate::error::{Error, Result};
use crate::lattice::{LatticeVector, RationalVector};
use crate::mutation::{
    inverse_datum, minimal_witnesses, mutate, mutation_family, specialize_fiber,
    validate_mutation_datum, FanoPolytope, MutationDatum, MutationFamily, ParameterPoint,
};
use crate::oracle::{boundary_equality_check, degree_zero_equality_check};
use crate::polyhedron::Polyhedron;

pub const PRESET_NAMES: [&str; 4] = ["cA1", "p2-p114", "hexagon", "toy-plane"];

fn lv(c: &[i64]) -> LatticeVector {
    LatticeVector::from_i64s(c)
}

fn pts(points: &[&[i64]]) -> Polyhedron {
    Polyhedron::from_i64_points(points).expect("preset polytope")
}

/// The cone over the square with opposite vertices `(+-1, 1, 0)` and the
/// segment datum with character `(0, -2, p)`.
pub fn ca1_datum(p: i64) -> Result<DeformationDatum> {
    let sigma = Cone::from_generators(3, &[lv(&[1, 1, 0]), lv(&[-1, 1, 0]), lv(&[0, 0, 1])])?;
    let q0 = Polyhedron::point(RationalVector::from_fracs(&[(-1, 2), (1, 2), (0, 1)]));
    let q1 = pts(&[&[0, 0, 0], &[1, 0, 0]]);
    DeformationDatum::new(sigma, vec![q0, q1], lv(&[0, -2, p]), true)
}

pub fn ca1_aliases() -> AliasTable {
    AliasTable::from_i64s(&[
        (&[0, 0, 0, 1], "x"),
        (&[1, 0, 0, 1], "y"),
        (&[0, 0, 1, 0], "z"),
        (&[-1, 1, 0, -2], "u"),
    ])
}

/// The positive quadrant with `Q_0 = {(0,1)}`, `Q_1 = {0}` and `w = (0,-1)`.
pub fn toy_plane_datum() -> Result<DeformationDatum> {
    let sigma = Cone::from_generators(2, &[lv(&[1, 0]), lv(&[0, 1])])?;
    DeformationDatum::new(
        sigma,
        vec![pts(&[&[0, 1]]), pts(&[&[0, 0]])],
        lv(&[0, -1]),
        true,
    )
}

pub fn toy_plane_aliases() -> AliasTable {
    AliasTable::from_i64s(&[(&[1, 0, 0], "x"), (&[0, 0, 1], "y"), (&[0, 1, -1], "z")])
}

pub fn p2() -> Result<FanoPolytope> {
    FanoPolytope::from_i64_points(&[&[1, 0], &[0, 1], &[-1, -1]])
}

/// `(w, F) = ((-1, 2), [(0,0), (2,1)])` on the triangle of the plane.
pub fn p2_p114_datum() -> Result<(FanoPolytope, MutationDatum)> {
    let p = p2()?;
    let d = validate_mutation_datum(&p, &lv(&[-1, 2]), &pts(&[&[0, 0], &[2, 1]]))?;
    Ok((p, d))
}

/// The hexagon with vertices `(1,0), (1,1), (0,1), (-1,0), (-1,-1), (0,-1)`.
pub fn hexagon() -> Polyhedron {
    pts(&[&[1, 0], &[1, 1], &[0, 1], &[-1, 0], &[-1, -1], &[0, -1]])
}

/// Cone over the hexagon at height 1.
pub fn hexagon_cone() -> Result<Cone> {
    let gens: Vec<LatticeVector> = hexagon()
        .lattice_vertices()
        .expect("lattice")
        .iter()
        .map(|v| v.extended(&[1.into()]))
        .collect();
    Cone::from_generators(3, &gens)
}

/// The hexagon at height 1 as a sum of three segments.
pub fn hexagon_segments() -> Result<DeformationDatum> {
    let q0 = pts(&[&[-1, -1, 1], &[0, -1, 1]]);
    let q1 = pts(&[&[0, 0, 0], &[0, 1, 0]]);
    let q2 = pts(&[&[0, 0, 0], &[1, 1, 0]]);
    DeformationDatum::new(hexagon_cone()?, vec![q0, q1, q2], lv(&[0, 0, -1]), true)
}

/// The hexagon at height 1 as a sum of two triangles.
pub fn hexagon_triangles() -> Result<DeformationDatum> {
    let q0 = pts(&[&[0, 0, 1], &[-1, 0, 1], &[-1, -1, 1]]);
    let q1 = pts(&[&[0, 0, 0], &[1, 0, 0], &[1, 1, 0]]);
    DeformationDatum::new(hexagon_cone()?, vec![q0, q1], lv(&[0, 0, -1]), true)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PresetReport {
    pub name: String,
    /// Human-readable output lines.
    pub lines: Vec<String>,
    pub checks: Vec<Check>,
}

impl PresetReport {
    fn new(name: &str) -> Self {
        Self {
            name: name.to_string(),
            lines: Vec::new(),
            checks: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    fn check(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.to_string(),
            passed,
            detail: detail.into(),
        });
    }

    /// Records `expected == got`, with both in the detail on mismatch.
    fn expect_eq<T: PartialEq + std::fmt::Debug>(&mut self, name: &str, expected: T, got: T) {
        let passed = expected == got;
        let shown = format!("{got:?}");
        let detail = match (passed, shown.len() <= 100) {
            (true, true) => shown,
            (true, false) => "matches".to_string(),
            (false, _) => format!("expected {expected:?}, got {shown}"),
        };
        self.check(name, passed, detail);
    }
}

fn sorted(mut v: Vec<LatticeVector>) -> Vec<LatticeVector> {
    v.sort();
    v
}

/// Equations of an affine datum in aliased Cox coordinates.
pub struct AffineEquations {
    pub cox: CoxSystem,
    pub binomials: Vec<String>,
    pub trinomials: Vec<String>,
    pub monomial: Option<String>,
}

pub fn affine_equations(
    t: &TildeData,
    boundary: bool,
    aliases: Option<&AliasTable>,
) -> Result<AffineEquations> {
    let table = PairingTable::from_tilde(t);
    let mut cox = CoxSystem::new(t.n + t.k, t.ray_vectors(), cox::parameter_names(t.k))?;
    if let Some(a) = aliases {
        cox = cox.with_aliases(a)?;
    }
    let binomials = cox::binomials(&table)
        .iter()
        .map(|f| cox.format(f))
        .collect();
    let trinomials = cox::trinomials(&table)?
        .iter()
        .map(|f| cox.format(f))
        .collect();
    let monomial = boundary.then(|| cox.format(&cox::boundary_monomial(&table).monomial));
    Ok(AffineEquations {
        cox,
        binomials,
        trinomials,
        monomial,
    })
}

fn oracle_checks(r: &mut PresetReport, t: &TildeData, bound: u64, min_pairs: usize) -> Result<()> {
    let dz = degree_zero_equality_check(t, bound)?;
    r.check(
        "kernel equals degree-zero binomial ideal",
        dz.passed() && dz.checked >= min_pairs,
        format!(
            "{} pairs, {} reverse lifts, {} failures",
            dz.checked,
            dz.reverse_checked,
            dz.failures.len()
        ),
    );
    let be = boundary_equality_check(t, bound)?;
    r.check(
        "boundary ideal equals degree-zero part",
        be.passed(),
        format!(
            "{} characters, {} interior, {} failures",
            be.checked,
            be.interior,
            be.failures.len()
        ),
    );
    Ok(())
}

pub fn verify_ca1(p: i64, bound: u64) -> Result<PresetReport> {
    let mut r = PresetReport::new("cA1");
    if p < 1 {
        return Err(Error::InvalidDatum(format!("p must be positive, got {p}")));
    }
    let d = ca1_datum(p)?;
    let report = validate_datum(&d);
    r.check(
        "datum conditions",
        report.is_valid(),
        report.to_string().replace('\n', "; "),
    );
    let t = build_tilde(&d)?;
    let s = check_tilde_structure(&t, &d)?;
    r.check(
        "enlarged cone structure",
        s.passed(),
        format!("dimension {}", s.dimension),
    );
    r.expect_eq(
        "enlarged cone rays",
        sorted(vec![
            lv(&[-1, 1, 0, -2]),
            lv(&[0, 0, 0, 1]),
            lv(&[0, 0, 1, 0]),
            lv(&[1, 0, 0, 1]),
        ]),
        t.ray_vectors(),
    );
    r.expect_eq("shifted character", lv(&[0, -2, p, 0]), t.w_tilde.clone());
    let det = crate::lattice::IntMatrix::from_vectors(4, &t.ray_vectors())?.determinant()?;
    r.expect_eq(
        "ambient is affine space",
        BigInt::from(1),
        num_traits::Signed::abs(&det),
    );

    let eq = affine_equations(&t, true, Some(&ca1_aliases()))?;
    let z = if p == 1 {
        "z".to_string()
    } else {
        format!("z^{p}")
    };
    r.expect_eq(
        "binomial",
        vec!["x*y - u^2".to_string()],
        eq.binomials.clone(),
    );
    r.expect_eq(
        "trinomial",
        vec![format!("x*y - u^2 - t1*{z}")],
        eq.trinomials.clone(),
    );
    r.expect_eq(
        "boundary monomial",
        Some("z*u".to_string()),
        eq.monomial.clone(),
    );
    r.line(format!("rays: {}", fmt_rays(&t.ray_vectors())));
    r.line(format!("w~ = {}", t.w_tilde));
    r.line(format!("binomial: {}", eq.binomials[0]));
    r.line(format!("trinomial: {}", eq.trinomials[0]));
    r.line(format!(
        "monomial: {}",
        eq.monomial.clone().unwrap_or_default()
    ));
    oracle_checks(&mut r, &t, bound, 200)?;
    Ok(r)
}

pub fn verify_toy_plane(bound: u64) -> Result<PresetReport> {
    let mut r = PresetReport::new("toy-plane");
    let d = toy_plane_datum()?;
    let report = validate_datum(&d);
    r.check(
        "datum conditions",
        report.is_valid(),
        report.to_string().replace('\n', "; "),
    );
    let t = build_tilde(&d)?;
    r.check(
        "enlarged cone structure",
        check_tilde_structure(&t, &d)?.passed(),
        "",
    );
    r.expect_eq(
        "enlarged cone rays",
        sorted(vec![lv(&[1, 0, 0]), lv(&[0, 1, -1]), lv(&[0, 0, 1])]),
        t.ray_vectors(),
    );
    r.expect_eq("shifted character", lv(&[0, -1, 0]), t.w_tilde.clone());
    r.expect_eq(
        "dropped generator",
        vec![lv(&[0, 1, 0])],
        t.dropped.iter().map(|(g, _)| g.clone()).collect(),
    );
    let eq = affine_equations(&t, true, Some(&toy_plane_aliases()))?;
    r.expect_eq("binomial", vec!["y - z".to_string()], eq.binomials.clone());
    r.expect_eq(
        "trinomial",
        vec!["y - z - t1".to_string()],
        eq.trinomials.clone(),
    );
    r.expect_eq(
        "boundary monomial",
        Some("x*z".to_string()),
        eq.monomial.clone(),
    );
    r.line(format!("rays: {}", fmt_rays(&t.ray_vectors())));
    r.line(format!("binomial: {}", eq.binomials[0]));
    r.line(format!("trinomial: {}", eq.trinomials[0]));
    r.line(format!(
        "monomial: {}",
        eq.monomial.clone().unwrap_or_default()
    ));
    oracle_checks(&mut r, &t, bound, 200)?;
    Ok(r)
}

fn fmt_rays(rays: &[LatticeVector]) -> String {
    rays.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

fn weights_i64(fam: &MutationFamily) -> Option<Vec<i64>> {
    fam.weights
        .as_ref()
        .map(|w| w.iter().map(|x| x.to_i64().unwrap_or(i64::MAX)).collect())
}

pub fn verify_p2_p114(bound: u64) -> Result<PresetReport> {
    let mut r = PresetReport::new("p2-p114");
    let (p, d) = p2_p114_datum()?;
    r.expect_eq(
        "witness at height -1",
        Some(pts(&[&[-1, -1]])),
        d.witnesses.get(&BigInt::from(-1)).cloned().flatten(),
    );
    let q = mutate(&p, &d)?;
    r.expect_eq(
        "mutated polytope",
        pts(&[&[-1, -1], &[0, 1], &[4, 3]]),
        q.polytope().clone(),
    );
    let min = d.with_witnesses(&p, minimal_witnesses(&p, &d)?)?;
    r.expect_eq(
        "mutation independent of witnesses",
        q.clone(),
        mutate(&p, &min)?,
    );
    let back = inverse_datum(&q, &d)?;
    r.expect_eq("inverse mutation", p.clone(), mutate(&q, &back)?);

    let fam = mutation_family(&p, &d)?;
    r.expect_eq(
        "family rays",
        sorted(vec![
            lv(&[0, 1, 0]),
            lv(&[-1, -1, -1]),
            lv(&[0, 0, 1]),
            lv(&[2, 1, 1]),
        ]),
        sorted(fam.rays.clone()),
    );
    r.expect_eq(
        "variables",
        vec!["x", "y", "z0", "z1"]
            .into_iter()
            .map(String::from)
            .collect(),
        fam.variable_names(),
    );
    r.expect_eq("weights", Some(vec![1, 2, 1, 1]), weights_i64(&fam));
    r.expect_eq(
        "trinomial",
        "a*x^2 + b*y + c*z0*z1".to_string(),
        fam.format(&fam.trinomial),
    );
    r.expect_eq("monomial", "x*y".to_string(), fam.format(&fam.monomial));
    r.line(format!("P' = {}", q.polytope()));
    let mut sorted_w = weights_i64(&fam).unwrap_or_default();
    sorted_w.sort();
    let ws: Vec<String> = sorted_w.iter().map(ToString::to_string).collect();
    r.line(format!("ambient weights ({})", ws.join(",")));
    r.line(format!("trinomial: {}", fam.format(&fam.trinomial)));
    r.line(format!("monomial: {}", fam.format(&fam.monomial)));

    for (point, expected) in [
        ((0, 1, -1), "y - z0*z1"),
        ((1, 0, -1), "x^2 - z0*z1"),
        ((1, 1, -1), "x^2 + y - z0*z1"),
    ] {
        let pp = ParameterPoint::from_i64s(point.0, point.1, point.2)?;
        let f = specialize_fiber(&fam, &pp)?;
        let got = fam.format(&f.trinomial);
        r.expect_eq(&format!("fiber {pp}"), expected.to_string(), got.clone());
        if let Some(m) = f.matches_toric {
            r.check(&format!("fiber {pp} is toric"), m, "");
        }
        r.check(&format!("fiber {pp} coprime to monomial"), f.coprime, "");
        r.line(format!("fiber {pp}: {got}, {}", fam.format(&f.monomial)));
    }
    oracle_checks(&mut r, &fam.induced.tilde, bound, 200)?;
    Ok(r)
}

pub fn verify_hexagon() -> Result<PresetReport> {
    let mut r = PresetReport::new("hexagon");
    let segments = hexagon_segments()?;
    let triangles = hexagon_triangles()?;
    let lifted = hexagon().lift(&num_rational::BigRational::from_integer(1.into()));
    r.expect_eq("segments recombine", lifted.clone(), segments.q().clone());
    r.expect_eq("triangles recombine", lifted, triangles.q().clone());
    let mut trinomial_sets = Vec::new();
    for (label, d) in [("segments", &segments), ("triangles", &triangles)] {
        let report = validate_datum(d);
        r.check(
            &format!("{label} datum conditions"),
            report.is_valid(),
            report.to_string().replace('\n', "; "),
        );
        let t = build_tilde(d)?;
        r.check(
            &format!("{label} enlarged cone structure"),
            check_tilde_structure(&t, d)?.passed(),
            "",
        );
        let eq = affine_equations(&t, true, None)?;
        r.check(
            &format!("{label} Fischer-Shapiro"),
            cox::fischer_shapiro_check(&PairingTable::from_tilde(&t).matrix()),
            "",
        );
        r.line(format!(
            "{label}: k = {}, rays: {}",
            d.k(),
            fmt_rays(&t.ray_vectors())
        ));
        for f in &eq.trinomials {
            r.line(format!("  {f}"));
        }
        r.line(format!(
            "  monomial: {}",
            eq.monomial.clone().unwrap_or_default()
        ));
        trinomial_sets.push(eq.trinomials);
    }
    r.expect_eq(
        "number of parameters",
        (2, 1),
        (trinomial_sets[0].len(), trinomial_sets[1].len()),
    );
    r.check(
        "distinct deformations",
        trinomial_sets[0] != trinomial_sets[1],
        "",
    );
    Ok(r)
}

pub fn verify_example(name: &str, p: i64, bound: u64) -> Result<PresetReport> {
    match name {
        "cA1" => verify_ca1(p, bound),
        "p2-p114" => verify_p2_p114(bound),
        "hexagon" => verify_hexagon(),
        "toy-plane" => verify_toy_plane(bound),
        _ => Err(Error::Unknown(format!(
            "no preset named {name:?}; expected one of {}",
            PRESET_NAMES.join(", ")
        ))),
    }
}
