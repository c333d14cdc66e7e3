use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use toric_deform::cox::{self, AliasTable, CoxSystem};
use toric_deform::datum::{check_tilde_structure, DeformationDatum};
use toric_deform::json as tj;
use toric_deform::oracle::{self, Bound};
use toric_deform::presets;
use toric_deform::{
    build_tilde, mutate, mutation_family, projective_tilde, specialize_fiber, validate_datum,
    validate_mutation_datum, Error, FanoPolytope, ParameterPoint,
};

#[derive(Parser)]
#[command(
    name = "toric-workbench",
    version,
    about = "Deformations of toric pairs and mutations of Fano polytopes"
)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Pretty, global = true)]
    format: Format,
    /// Degree bound for the oracle and Hilbert basis enumeration.
    #[arg(long, global = true)]
    bound: Option<u64>,
    /// Exponent p of the cA1 preset.
    #[arg(long, default_value_t = 3, global = true)]
    p: i64,
    /// JSON alias table `[{"name": "x", "ray": [...]}, ...]`.
    #[arg(long, global = true)]
    alias: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Pretty,
}

#[derive(Subcommand)]
enum Command {
    /// Check the defining conditions of a deformation datum.
    ValidateDatum { file: PathBuf },
    /// Enlarged cone and shifted character of a datum.
    Tilde { file: PathBuf },
    /// Binomials, trinomials and boundary monomial of a datum, optionally over a polarised variety.
    Equations { file: PathBuf },
    /// Fan, support function and divisor class of a polarised toric variety.
    Polarize { file: PathBuf },
    /// Mutation of a Fano polygon or polytope.
    Mutate { file: PathBuf },
    /// The two-parameter family joining a Fano polytope and its mutation.
    Family { file: PathBuf },
    /// One fiber of the mutation family.
    Fiber {
        file: PathBuf,
        /// Homogeneous parameter point `a:b:c`.
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Hilbert basis of a pointed full-dimensional cone.
    HilbertBasis { file: PathBuf },
    /// Bounded check of the ideal-theoretic statements for a datum.
    Oracle { file: PathBuf },
    /// Run a named worked example against its expected output.
    VerifyExample { name: String },
}

const DEFAULT_ORACLE_BOUND: u64 = 12;
const DEFAULT_HILBERT_BOUND: u64 = 20;

/// Result of a command: JSON document, pretty lines, and whether it succeeded.
struct Outcome {
    value: Value,
    lines: Vec<String>,
    ok: bool,
}

impl Outcome {
    fn ok(value: Value, lines: Vec<String>) -> Self {
        Self {
            value,
            lines,
            ok: true,
        }
    }
}

fn read_json(path: &Path) -> anyhow::Result<Value> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .context("reading stdin")?;
        s
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?
    };
    serde_json::from_str(&text)
        .map_err(|e| Error::Malformed(format!("{}: {e}", path.display())).into())
}

fn load_aliases(cli: &Cli) -> anyhow::Result<Option<AliasTable>> {
    cli.alias
        .as_deref()
        .map(|p| Ok(tj::aliases_from_json(&read_json(p)?)?))
        .transpose()
}

fn polys(cox: &CoxSystem, fs: &[cox::CoxPolynomial]) -> Vec<String> {
    fs.iter().map(|f| cox.format(f)).collect()
}

fn validate(file: &Path) -> anyhow::Result<Outcome> {
    let d = tj::datum_from_json(&read_json(file)?)?;
    let report = validate_datum(&d);
    Ok(Outcome {
        value: tj::validation_to_json(&report),
        lines: report.results.iter().map(ToString::to_string).collect(),
        ok: report.is_valid(),
    })
}

fn tilde(file: &Path) -> anyhow::Result<Outcome> {
    let d = tj::datum_from_json(&read_json(file)?)?;
    let t = build_tilde(&d)?;
    let s = check_tilde_structure(&t, &d)?;
    let mut lines = vec![format!("n = {}, k = {}", t.n, t.k)];
    for r in &t.rays {
        let origins: Vec<String> = r.origins.iter().map(ToString::to_string).collect();
        lines.push(format!("ray {}  <- {}", r.ray, origins.join("; ")));
    }
    lines.push(format!("w~ = {}", t.w_tilde));
    for (g, o) in &t.dropped {
        lines.push(format!("dropped {g} ({o})"));
    }
    lines.push(format!(
        "strongly convex: {}, dimension {} of {}, slice matches: {}",
        s.strongly_convex, s.dimension, s.expected_dimension, s.slice_matches
    ));
    let ok = s.passed();
    Ok(Outcome {
        value: tj::tilde_to_json(&t, &s),
        lines,
        ok,
    })
}

fn equations(cli: &Cli, file: &Path) -> anyhow::Result<Outcome> {
    let input = read_json(file)?;
    let aliases = load_aliases(cli)?;
    let (cox, binomials, trinomials, monomial, fs) = match input.get("variety") {
        Some(v) => {
            let variety = tj::polarized_from_json(v)?;
            let datum_json = input
                .get("datum")
                .ok_or_else(|| Error::Malformed("missing field \"datum\"".into()))?;
            let d = tj::datum_from_json(datum_json)?;
            let pt = projective_tilde(&variety, &d, d.is_boundary())?;
            let mut cox = pt.cox_system()?;
            if let Some(a) = &aliases {
                cox = cox.with_aliases(a)?;
            }
            let fs = cox::fischer_shapiro_check(&pt.table.matrix());
            let monomial = pt
                .boundary_monomial
                .as_ref()
                .map(|m| cox.format(&m.monomial));
            let (binomials, trinomials) = (polys(&cox, &pt.binomials), polys(&cox, &pt.trinomials));
            (cox, binomials, trinomials, monomial, fs)
        }
        None => {
            let d: DeformationDatum = tj::datum_from_json(&input)?;
            let t = build_tilde(&d)?;
            let eq = presets::affine_equations(&t, d.is_boundary(), aliases.as_ref())?;
            let fs = cox::fischer_shapiro_check(&cox::PairingTable::from_tilde(&t).matrix());
            (eq.cox, eq.binomials, eq.trinomials, eq.monomial, fs)
        }
    };
    let mut lines = vec![format!(
        "variables: {}",
        cox.print_order()
            .iter()
            .map(|&j| cox.names()[j].clone())
            .collect::<Vec<_>>()
            .join(" ")
    )];
    if let Some(w) = cox.weights() {
        let ws: Vec<String> = cox
            .print_order()
            .iter()
            .map(|&j| w[j].to_string())
            .collect();
        lines.push(format!("weights: ({})", ws.join(",")));
    }
    lines.extend(binomials.iter().map(|b| format!("binomial: {b}")));
    lines.extend(trinomials.iter().map(|t| format!("trinomial: {t}")));
    if let Some(m) = &monomial {
        lines.push(format!("monomial: {m}"));
    }
    lines.push(format!("Fischer-Shapiro: {fs}"));
    let value = json!({
        "cox": tj::cox_to_json(&cox),
        "binomials": binomials,
        "trinomials": trinomials,
        "monomial": monomial,
        "fischer_shapiro": fs,
    });
    Ok(Outcome {
        value,
        lines,
        ok: fs,
    })
}

fn polarize(file: &Path) -> anyhow::Result<Outcome> {
    let v = tj::polarized_from_json(&read_json(file)?)?;
    let mut lines = vec![format!("tau = {}", v.tau())];
    for r in v.ray_data() {
        lines.push(format!(
            "ray {}  phi = {}",
            r.rho,
            tj::rational_string(&r.phi())
        ));
    }
    for c in &v.fan().maximal_cones {
        let rays: Vec<String> = c.iter().map(|&i| v.fan().rays[i].to_string()).collect();
        lines.push(format!("cone {}", rays.join(" ")));
    }
    lines.push(format!("polytope in M: {}", v.polytope_in_m()));
    lines.push(format!("divisor: {}", v.classify_divisor().name()));
    Ok(Outcome::ok(tj::polarized_to_json(&v), lines))
}

fn mutation_input(file: &Path) -> anyhow::Result<(FanoPolytope, toric_deform::MutationDatum)> {
    let m = tj::mutation_input_from_json(&read_json(file)?)?;
    let p = FanoPolytope::new(m.p)?;
    let d = validate_mutation_datum(&p, &m.w, &m.f)?;
    Ok((p, d))
}

fn witnesses_json(d: &toric_deform::MutationDatum) -> Value {
    Value::Array(
        d.witnesses
            .iter()
            .map(|(h, g)| json!({ "height": tj::int_to_json(h), "G": g.as_ref().map(tj::polyhedron_to_json) }))
            .collect(),
    )
}

fn mutate_cmd(file: &Path) -> anyhow::Result<Outcome> {
    let (p, d) = mutation_input(file)?;
    let q = mutate(&p, &d)?;
    let mut lines = Vec::new();
    for (h, g) in &d.witnesses {
        let g = g.as_ref().map_or("empty".to_string(), ToString::to_string);
        lines.push(format!("G_{h} = {g}"));
    }
    lines.push(format!("P' = {}", q.polytope()));
    let value =
        json!({ "witnesses": witnesses_json(&d), "P_prime": tj::polyhedron_to_json(q.polytope()) });
    Ok(Outcome::ok(value, lines))
}

fn family(file: &Path) -> anyhow::Result<Outcome> {
    let (p, d) = mutation_input(file)?;
    let fam = mutation_family(&p, &d)?;
    let mut lines = vec![format!("P' = {}", fam.p_prime.polytope())];
    let names = fam.variable_names();
    for (name, &j) in names.iter().zip(fam.cox.print_order()) {
        lines.push(format!("{name}: ray {}", fam.cox.rays()[j]));
    }
    if let Some(w) = &fam.weights {
        let ws: Vec<String> = w.iter().map(ToString::to_string).collect();
        lines.push(format!(
            "weights ({}) for ({})",
            ws.join(","),
            names.join(",")
        ));
    }
    lines.push(format!("trinomial: {}", fam.format(&fam.trinomial)));
    lines.push(format!("monomial: {}", fam.format(&fam.monomial)));
    Ok(Outcome::ok(tj::family_to_json(&fam), lines))
}

fn fiber(file: &Path, point: &str) -> anyhow::Result<Outcome> {
    let coords = tj::parse_parameter_point(point)?;
    let pp = ParameterPoint::new(coords)?;
    let (p, d) = mutation_input(file)?;
    let fam = mutation_family(&p, &d)?;
    let r = specialize_fiber(&fam, &pp)?;
    let mut lines = vec![
        format!("fiber {} ({:?})", r.point, r.kind),
        format!("trinomial: {}", fam.format(&r.trinomial)),
        format!("monomial: {}", fam.format(&r.monomial)),
    ];
    if let Some(m) = r.matches_toric {
        lines.push(format!("matches toric binomial: {m}"));
    }
    lines.push(format!("coprime: {}", r.coprime));
    let ok = r.coprime && r.matches_toric != Some(false);
    Ok(Outcome {
        value: tj::fiber_to_json(&fam, &r),
        lines,
        ok,
    })
}

fn hilbert(cli: &Cli, file: &Path) -> anyhow::Result<Outcome> {
    let c = tj::cone_from_json(&read_json(file)?)?;
    let hb = oracle::hilbert_basis(
        &c,
        &Bound::Degree(cli.bound.unwrap_or(DEFAULT_HILBERT_BOUND)),
    )?;
    let mut lines: Vec<String> = hb.generators.iter().map(ToString::to_string).collect();
    lines.push(format!(
        "{} generators, complete: {}",
        hb.generators.len(),
        hb.complete
    ));
    let value = json!({
        "generators": hb.generators.iter().map(tj::lattice_to_json).collect::<Vec<_>>(),
        "complete": hb.complete,
        "examined": hb.examined,
    });
    Ok(Outcome::ok(value, lines))
}

fn oracle_cmd(cli: &Cli, file: &Path) -> anyhow::Result<Outcome> {
    let d = tj::datum_from_json(&read_json(file)?)?;
    let t = build_tilde(&d)?;
    let bound = cli.bound.unwrap_or(DEFAULT_ORACLE_BOUND);
    let dz = oracle::degree_zero_equality_check(&t, bound)?;
    let be = oracle::boundary_equality_check(&t, bound)?;
    let failure = |f: &oracle::OracleFailure| json!({ "point": f.point, "reason": f.reason });
    let mut lines = vec![
        format!(
            "degree zero: {} pairs, {} reverse lifts, {} failures",
            dz.checked,
            dz.reverse_checked,
            dz.failures.len()
        ),
        format!(
            "boundary: {} characters, {} interior, {} failures",
            be.checked,
            be.interior,
            be.failures.len()
        ),
    ];
    for f in dz.failures.iter().chain(&be.failures) {
        lines.push(format!("failure at {}: {}", f.point, f.reason));
    }
    let value = json!({
        "bound": bound,
        "degree_zero": { "checked": dz.checked, "reverse_checked": dz.reverse_checked, "failures": dz.failures.iter().map(failure).collect::<Vec<_>>() },
        "boundary": { "checked": be.checked, "interior": be.interior, "failures": be.failures.iter().map(failure).collect::<Vec<_>>() },
    });
    Ok(Outcome {
        value,
        lines,
        ok: dz.passed() && be.passed(),
    })
}

fn verify(cli: &Cli, name: &str) -> anyhow::Result<Outcome> {
    let r = presets::verify_example(name, cli.p, cli.bound.unwrap_or(DEFAULT_ORACLE_BOUND))?;
    let mut lines = r.lines.clone();
    for c in &r.checks {
        let status = if c.passed { "ok" } else { "FAILED" };
        let detail = if c.detail.is_empty() {
            String::new()
        } else {
            format!(" ({})", c.detail)
        };
        lines.push(format!("[{status}] {}{detail}", c.name));
    }
    lines.push(format!(
        "{}: {}",
        r.name,
        if r.passed() { "PASS" } else { "FAIL" }
    ));
    Ok(Outcome {
        value: serde_json::to_value(&r)?,
        lines,
        ok: r.passed(),
    })
}

fn run(cli: &Cli) -> anyhow::Result<Outcome> {
    match &cli.command {
        Command::ValidateDatum { file } => validate(file),
        Command::Tilde { file } => tilde(file),
        Command::Equations { file } => equations(cli, file),
        Command::Polarize { file } => polarize(file),
        Command::Mutate { file } => mutate_cmd(file),
        Command::Family { file } => family(file),
        Command::Fiber { file, point } => fiber(file, point),
        Command::HilbertBasis { file } => hilbert(cli, file),
        Command::Oracle { file } => oracle_cmd(cli, file),
        Command::VerifyExample { name } => verify(cli, name),
    }
}

/// 2 for input that could not be read or parsed, 1 for everything else.
fn exit_code(e: &anyhow::Error) -> u8 {
    if let Some(err) = e.downcast_ref::<Error>() {
        return match err {
            Error::Malformed(_)
            | Error::Unknown(_)
            | Error::RankMismatch { .. }
            | Error::EmptyInput
            | Error::ZeroVector => 2,
            _ => 1,
        };
    }
    if e.downcast_ref::<std::io::Error>().is_some()
        || e.downcast_ref::<serde_json::Error>().is_some()
    {
        return 2;
    }
    1
}

/// Writes the whole report at once; a closed pipe is not an error.
fn emit(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let mut text = match cli.format {
                Format::Json => serde_json::to_string_pretty(&out.value).expect("serialisable"),
                Format::Pretty => out.lines.join("\n"),
            };
            text.push('\n');
            emit(&text);
            ExitCode::from(if out.ok { 0 } else { 1 })
        }
        Err(e) => {
            let code = exit_code(&e);
            match cli.format {
                Format::Json => emit(&format!(
                    "{}\n",
                    json!({ "error": format!("{e:#}"), "exit_code": code })
                )),
                Format::Pretty => eprintln!("error: {e:#}"),
            }
            ExitCode::from(code)
        }
    }
}
