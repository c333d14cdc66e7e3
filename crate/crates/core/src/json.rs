//! JSON encodings of the main objects and of the reports built from them.
//!
//! Integers are JSON numbers when they fit in `i64` and decimal strings
//! otherwise; rational coordinates are `[num, den]` pairs in lowest terms.
//! Object keys come out sorted, so printing is deterministic.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde_json::{json, Map, Value};

use crate::cone::{Cone, Fan};
use crate::cox::{AliasTable, CoxPolynomial, CoxSystem};
use crate::datum::{DeformationDatum, TildeData, TildeStructureReport, ValidationReport};
use crate::error::{Error, Result};
use crate::lattice::{parse_rational, LatticeVector, RationalVector};
use crate::mutation::{FiberReport, MutationFamily};
use crate::polarized::PolarizedToricVariety;
use crate::polyhedron::Polyhedron;

fn malformed(what: impl Into<String>) -> Error {
    Error::Malformed(what.into())
}

pub fn int_to_json(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => Value::from(v),
        None => Value::String(x.to_string()),
    }
}

pub fn int_from_json(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| malformed(format!("{n} is not an integer"))),
        Value::String(s) => s
            .trim()
            .parse()
            .map_err(|_| malformed(format!("{s:?} is not an integer"))),
        _ => Err(malformed(format!("expected an integer, got {v}"))),
    }
}

/// An integer when the denominator is 1, otherwise `[num, den]`.
pub fn rational_to_json(q: &BigRational) -> Value {
    if q.is_integer() {
        return int_to_json(q.numer());
    }
    json!([int_to_json(q.numer()), int_to_json(q.denom())])
}

/// Accepts `[num, den]`, an integer, or a string such as `"-1/2"`.
pub fn rational_from_json(v: &Value) -> Result<BigRational> {
    match v {
        Value::Array(pair) if pair.len() == 2 => {
            let (n, d) = (int_from_json(&pair[0])?, int_from_json(&pair[1])?);
            if d.is_zero() {
                return Err(malformed("zero denominator"));
            }
            Ok(BigRational::new(n, d))
        }
        Value::String(s) => {
            parse_rational(s).ok_or_else(|| malformed(format!("{s:?} is not a rational number")))
        }
        _ => Ok(BigRational::from_integer(int_from_json(v)?)),
    }
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array()
        .ok_or_else(|| malformed(format!("{what} must be an array")))
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key)
        .ok_or_else(|| malformed(format!("missing field {key:?}")))
}

pub fn lattice_to_json(v: &LatticeVector) -> Value {
    Value::Array(v.0.iter().map(int_to_json).collect())
}

pub fn lattice_from_json(v: &Value) -> Result<LatticeVector> {
    Ok(LatticeVector(
        array(v, "a lattice vector")?
            .iter()
            .map(int_from_json)
            .collect::<Result<_>>()?,
    ))
}

pub fn rational_vector_to_json(v: &RationalVector) -> Value {
    Value::Array(v.0.iter().map(rational_to_json).collect())
}

pub fn rational_vector_from_json(v: &Value) -> Result<RationalVector> {
    Ok(RationalVector(
        array(v, "a point")?
            .iter()
            .map(rational_from_json)
            .collect::<Result<_>>()?,
    ))
}

fn lattice_list(v: &Value, what: &str) -> Result<Vec<LatticeVector>> {
    array(v, what)?.iter().map(lattice_from_json).collect()
}

fn check_rank(vs: &[LatticeVector], rank: usize) -> Result<()> {
    match vs.iter().find(|v| v.rank() != rank) {
        Some(v) => Err(Error::RankMismatch {
            expected: rank,
            found: v.rank(),
        }),
        None => Ok(()),
    }
}

/// `{"rank": n, "rays": [...]}`, plus `"lineality"` when the cone has lines.
pub fn cone_to_json(c: &Cone) -> Value {
    let mut m = Map::new();
    m.insert("rank".into(), Value::from(c.rank()));
    m.insert(
        "rays".into(),
        Value::Array(c.rays().iter().map(lattice_to_json).collect()),
    );
    if !c.lineality().is_empty() {
        m.insert(
            "lineality".into(),
            Value::Array(c.lineality().iter().map(lattice_to_json).collect()),
        );
    }
    Value::Object(m)
}

/// The listed rays are taken as generators; lineality vectors count with both signs.
pub fn cone_from_json(v: &Value) -> Result<Cone> {
    let rays = lattice_list(field(v, "rays")?, "rays")?;
    let rank = match v.get("rank") {
        Some(r) => r
            .as_u64()
            .ok_or_else(|| malformed("rank must be a non-negative integer"))?
            as usize,
        None => rays
            .first()
            .map(LatticeVector::rank)
            .ok_or_else(|| malformed("rank is needed for a cone without rays"))?,
    };
    let mut gens = rays;
    if let Some(l) = v.get("lineality") {
        for x in lattice_list(l, "lineality")? {
            gens.push(-&x);
            gens.push(x);
        }
    }
    check_rank(&gens, rank)?;
    if gens.is_empty() {
        return Ok(Cone::zero(rank));
    }
    Cone::from_generators(rank, &gens)
}

/// `{"rank": n, "vertices": [[[num, den], ...], ...], "rays": [...]}`.
pub fn polyhedron_to_json(p: &Polyhedron) -> Value {
    json!({
        "rank": p.rank(),
        "vertices": p.vertices().iter().map(rational_vector_to_json).collect::<Vec<_>>(),
        "rays": p.rays().iter().map(lattice_to_json).collect::<Vec<_>>(),
    })
}

pub fn polyhedron_from_json(v: &Value) -> Result<Polyhedron> {
    let vertices: Vec<RationalVector> = array(field(v, "vertices")?, "vertices")?
        .iter()
        .map(rational_vector_from_json)
        .collect::<Result<_>>()?;
    let rays = match v.get("rays") {
        Some(r) => lattice_list(r, "rays")?,
        None => Vec::new(),
    };
    let rank = match v.get("rank") {
        Some(r) => r
            .as_u64()
            .ok_or_else(|| malformed("rank must be a non-negative integer"))?
            as usize,
        None => vertices
            .first()
            .map(RationalVector::rank)
            .ok_or_else(|| malformed("rank is needed for an empty polyhedron"))?,
    };
    if vertices.is_empty() {
        if !rays.is_empty() {
            return Err(malformed("rays without vertices"));
        }
        return Ok(Polyhedron::empty(rank));
    }
    if let Some(p) = vertices.iter().find(|p| p.rank() != rank) {
        return Err(Error::RankMismatch {
            expected: rank,
            found: p.rank(),
        });
    }
    check_rank(&rays, rank)?;
    Polyhedron::convex_hull(rank, &vertices, &rays)
}

pub fn datum_to_json(d: &DeformationDatum) -> Value {
    let mut m = Map::new();
    m.insert("sigma".into(), cone_to_json(d.sigma()));
    m.insert(
        "summands".into(),
        Value::Array(d.summands().iter().map(polyhedron_to_json).collect()),
    );
    m.insert("w".into(), lattice_to_json(d.w()));
    m.insert("boundary".into(), Value::Bool(d.is_boundary()));
    if let Some(q) = d.claimed_q() {
        m.insert("Q".into(), polyhedron_to_json(q));
    }
    Value::Object(m)
}

pub fn datum_from_json(v: &Value) -> Result<DeformationDatum> {
    let sigma = cone_from_json(field(v, "sigma")?)?;
    let summands = array(field(v, "summands")?, "summands")?
        .iter()
        .map(polyhedron_from_json)
        .collect::<Result<Vec<_>>>()?;
    let w = lattice_from_json(field(v, "w")?)?;
    let boundary = match v.get("boundary") {
        Some(b) => b
            .as_bool()
            .ok_or_else(|| malformed("boundary must be a boolean"))?,
        None => false,
    };
    let d = DeformationDatum::new(sigma, summands, w, boundary)?;
    match v.get("Q") {
        Some(q) => d.with_claimed_sum(polyhedron_from_json(q)?),
        None => Ok(d),
    }
}

/// `{"tau": Cone}` or `{"polytope": Polyhedron}`.
pub fn polarized_from_json(v: &Value) -> Result<PolarizedToricVariety> {
    match (v.get("tau"), v.get("polytope")) {
        (Some(t), None) => PolarizedToricVariety::from_tau(cone_from_json(t)?),
        (None, Some(p)) => PolarizedToricVariety::from_polytope(&polyhedron_from_json(p)?),
        _ => Err(malformed(
            "expected exactly one of \"tau\" and \"polytope\"",
        )),
    }
}

/// `{"P": Polyhedron, "w": [...], "F": Polyhedron}`.
pub struct MutationInput {
    pub p: Polyhedron,
    pub w: LatticeVector,
    pub f: Polyhedron,
}

pub fn mutation_input_from_json(v: &Value) -> Result<MutationInput> {
    Ok(MutationInput {
        p: polyhedron_from_json(field(v, "P")?)?,
        w: lattice_from_json(field(v, "w")?)?,
        f: polyhedron_from_json(field(v, "F")?)?,
    })
}

pub fn mutation_input_to_json(m: &MutationInput) -> Value {
    json!({ "P": polyhedron_to_json(&m.p), "w": lattice_to_json(&m.w), "F": polyhedron_to_json(&m.f) })
}

/// `[{"name": "x", "ray": [...]}, ...]`.
pub fn aliases_from_json(v: &Value) -> Result<AliasTable> {
    let mut entries = Vec::new();
    for e in array(v, "alias table")? {
        let name = field(e, "name")?
            .as_str()
            .ok_or_else(|| malformed("alias name must be a string"))?;
        entries.push((lattice_from_json(field(e, "ray")?)?, name.to_string()));
    }
    Ok(AliasTable::new(entries))
}

pub fn aliases_to_json(a: &AliasTable) -> Value {
    Value::Array(
        a.entries
            .iter()
            .map(|(r, n)| json!({ "name": n, "ray": lattice_to_json(r) }))
            .collect(),
    )
}

/// `"a:b:c"` with integer or rational entries.
pub fn parse_parameter_point(s: &str) -> Result<[BigRational; 3]> {
    let parts: Vec<&str> = s.split(':').collect();
    let [a, b, c] = parts.as_slice() else {
        return Err(malformed(format!("{s:?} is not of the form a:b:c")));
    };
    let q = |x: &str| {
        parse_rational(x).ok_or_else(|| malformed(format!("{x:?} is not a rational number")))
    };
    Ok([q(a)?, q(b)?, q(c)?])
}

pub fn validation_to_json(r: &ValidationReport) -> Value {
    json!({
        "valid": r.is_valid(),
        "conditions": r.results.iter().map(|c| json!({
            "condition": c.condition.label(),
            "passed": c.passed,
            "witness": c.witness,
        })).collect::<Vec<_>>(),
    })
}

pub fn tilde_to_json(t: &TildeData, structure: &TildeStructureReport) -> Value {
    json!({
        "n": t.n,
        "k": t.k,
        "rays": t.rays.iter().map(|r| json!({
            "ray": lattice_to_json(&r.ray),
            "e_pairings": r.e_pairings.iter().map(int_to_json).collect::<Vec<_>>(),
            "w_pairing": int_to_json(&r.w_pairing),
            "origins": r.origins.iter().map(ToString::to_string).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
        "w_tilde": lattice_to_json(&t.w_tilde),
        "dropped": t.dropped.iter().map(|(g, o)| json!({ "generator": lattice_to_json(g), "origin": o.to_string() })).collect::<Vec<_>>(),
        "structure": {
            "strongly_convex": structure.strongly_convex,
            "dimension": structure.dimension,
            "expected_dimension": structure.expected_dimension,
            "slice_matches": structure.slice_matches,
        },
    })
}

pub fn polynomial_to_json(cox: &CoxSystem, f: &CoxPolynomial) -> Value {
    Value::String(cox.format(f))
}

pub fn cox_to_json(cox: &CoxSystem) -> Value {
    let order = cox.print_order();
    let degrees: Vec<String> = order
        .iter()
        .map(|&j| cox.grading().degrees[j].to_string())
        .collect();
    json!({
        "variables": order.iter().map(|&j| json!({
            "name": cox.names()[j],
            "ray": lattice_to_json(&cox.rays()[j]),
        })).collect::<Vec<_>>(),
        "class_group": {
            "free_rank": cox.grading().group.free_rank,
            "torsion": cox.grading().group.torsion.iter().map(int_to_json).collect::<Vec<_>>(),
        },
        "degrees": degrees,
        "weights": cox.weights().map(|w| order.iter().map(|&j| int_to_json(&w[j])).collect::<Vec<_>>()),
    })
}

pub fn fan_to_json(f: &Fan) -> Value {
    json!({
        "rank": f.rank,
        "rays": f.rays.iter().map(lattice_to_json).collect::<Vec<_>>(),
        "maximal_cones": f.maximal_cones,
    })
}

pub fn polarized_to_json(v: &PolarizedToricVariety) -> Value {
    json!({
        "tau": cone_to_json(v.tau()),
        "fan": fan_to_json(v.fan()),
        "phi": v.phi_values().iter().map(rational_to_json).collect::<Vec<_>>(),
        "b": v.cox_comparison().iter().map(int_to_json).collect::<Vec<_>>(),
        "divisor_class": v.classify_divisor().name(),
        "polytope_in_M": polyhedron_to_json(&v.polytope_in_m()),
    })
}

pub fn family_to_json(fam: &MutationFamily) -> Value {
    json!({
        "P": polyhedron_to_json(fam.p.polytope()),
        "P_prime": polyhedron_to_json(fam.p_prime.polytope()),
        "w": lattice_to_json(&fam.datum.w),
        "F": polyhedron_to_json(&fam.datum.factor),
        "Q_tilde": polyhedron_to_json(&fam.q_tilde),
        "cox": cox_to_json(&fam.cox),
        "weights": fam.weights.as_ref().map(|w| w.iter().map(int_to_json).collect::<Vec<_>>()),
        "trinomial": fam.format(&fam.trinomial),
        "monomial": fam.format(&fam.monomial),
    })
}

pub fn fiber_to_json(fam: &MutationFamily, r: &FiberReport) -> Value {
    json!({
        "point": r.point.0.iter().map(int_to_json).collect::<Vec<_>>(),
        "kind": format!("{:?}", r.kind),
        "trinomial": fam.format(&r.trinomial),
        "monomial": fam.format(&r.monomial),
        "matches_toric": r.matches_toric,
        "coprime": r.coprime,
    })
}

/// Pretty form of a rational: `3`, `-1/2`.
pub fn rational_string(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polyhedron_round_trip() {
        let p = Polyhedron::convex_hull(
            3,
            &[
                RationalVector::from_fracs(&[(-1, 2), (1, 2), (0, 1)]),
                RationalVector::from_i64s(&[1, 0, 0]),
            ],
            &[LatticeVector::from_i64s(&[0, 0, 1])],
        )
        .unwrap();
        let v = polyhedron_to_json(&p);
        assert_eq!(polyhedron_from_json(&v).unwrap(), p);
        assert_eq!(v["vertices"][0][0], json!([-1, 2]));
    }

    #[test]
    fn lenient_coordinates() {
        let v = json!({"vertices": [[1, "1/2"], [[0, 1], -3]]});
        let p = polyhedron_from_json(&v).unwrap();
        assert_eq!(p.vertices().len(), 2);
        assert!(polyhedron_from_json(&json!({"vertices": [[1, [1, 0]]]})).is_err());
    }

    #[test]
    fn huge_integers_are_strings() {
        let x: BigInt = "123456789012345678901234567890".parse().unwrap();
        assert_eq!(int_to_json(&x), json!("123456789012345678901234567890"));
        assert_eq!(int_from_json(&int_to_json(&x)).unwrap(), x);
    }

    #[test]
    fn parameter_points() {
        let [a, b, c] = parse_parameter_point("0:1/2:-1").unwrap();
        assert!(a.is_zero());
        assert_eq!(b, BigRational::new(1.into(), 2.into()));
        assert_eq!(c, BigRational::from_integer((-1).into()));
        assert!(parse_parameter_point("1:2").is_err());
    }
}
