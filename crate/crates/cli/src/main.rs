//! `qsi`: command-line front end for quiver representation and
//! semi-invariant computations.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::Value;

use qsi::fixtures::{build_fixture, verify_example, FixtureId};
use qsi::linalg::{FieldChoice, Rationals};
use qsi::quiver::{euler_form, BoundQuiver, DimensionVector, Weight};
use qsi::rep::{orbit_data, random_rep, sample_rng, RepPoint, Sampling};
use qsi::roots::{canonical_decomposition, classify_root, prehomogeneity_report, RootsError};
use qsi::si::{
    minimal_double_weight, multiplicity_free_in_box, weight_remainder, weight_space_dim_symbolic,
    GeneratorSystem, SiError,
};

#[derive(Parser)]
#[command(
    name = "qsi",
    version,
    about = "Exact quiver representation invariants and semi-invariant ring checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Seed for every random choice
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Generic points drawn per estimate
    #[arg(long, default_value_t = 5)]
    samples: usize,
    /// Sampling field: `rational` or `p:PRIME` with PRIME >= 32003
    #[arg(long, default_value = "rational")]
    field: FieldChoice,
    /// Emit machine-readable JSON
    #[arg(long)]
    json: bool,
}

impl Common {
    fn sampling(&self) -> Sampling {
        Sampling {
            samples: self.samples,
            seed: self.seed,
            field: self.field,
        }
    }
}

#[derive(Args, Clone)]
struct Target {
    /// Quiver JSON file
    #[arg(long)]
    quiver: PathBuf,
    /// Dimension vector, comma separated in vertex order
    #[arg(long)]
    dim: DimensionVector,
}

#[derive(Subcommand)]
enum Command {
    /// Euler form <dim, dim2> (dim2 defaults to dim)
    Euler {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        dim2: Option<DimensionVector>,
        #[command(flatten)]
        common: Common,
    },
    /// Real, isotropic, imaginary or non-Schur
    Classify {
        #[command(flatten)]
        target: Target,
        #[command(flatten)]
        common: Common,
    },
    /// Canonical decomposition with its certificate
    Decompose {
        #[command(flatten)]
        target: Target,
        #[command(flatten)]
        common: Common,
    },
    /// Prehomogeneity report for an acyclic quiver
    Report {
        #[command(flatten)]
        target: Target,
        #[command(flatten)]
        common: Common,
    },
    /// Minimal double weight, graded dimensions and multiplicity test
    SiWeights {
        /// Generator system JSON file
        #[arg(long)]
        system: PathBuf,
        /// Degree box for monomial searches
        #[arg(long = "box", default_value_t = 6)]
        bound: u32,
        /// Also report the weight space of this weight
        #[arg(long)]
        weight: Option<Weight>,
        #[command(flatten)]
        common: Common,
    },
    /// Check the claims of a worked example (ex1, ex2, ex2-d4, ex3)
    VerifyExample {
        name: String,
        /// Family size for ex3 (n >= 2)
        #[arg(long)]
        n: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Orbit dimension and codimension of a given or generic point
    Orbit {
        #[command(flatten)]
        target: Target,
        /// Representation JSON file; a generic point is drawn when absent
        #[arg(long)]
        point: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Export a worked example as quiver and generator system JSON
    Fixture {
        name: String,
        #[arg(long)]
        n: Option<usize>,
    },
}

/// Exit 1 is an analysis failure, exit 2 bad input.
enum Failure {
    Analysis(String),
    Input(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Analysis(_) => 1,
            Failure::Input(_) => 2,
        }
    }
}

fn input(e: impl std::fmt::Display) -> Failure {
    Failure::Input(e.to_string())
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))
}

fn load_target(t: &Target) -> Result<BoundQuiver, Failure> {
    let bound = BoundQuiver::from_json(&read(&t.quiver)?)
        .map_err(|e| Failure::Input(format!("{}: {e}", t.quiver.display())))?;
    if t.dim.len() != bound.quiver.num_vertices() {
        return Err(Failure::Input(format!(
            "--dim has {} entries but the quiver has {} vertices",
            t.dim.len(),
            bound.quiver.num_vertices()
        )));
    }
    Ok(bound)
}

fn roots_failure(e: RootsError) -> Failure {
    match e {
        RootsError::CertificationFailed { .. } => Failure::Analysis(e.to_string()),
        other => input(other),
    }
}

#[derive(Serialize)]
struct Output<T: Serialize> {
    command: &'static str,
    #[serde(flatten)]
    body: T,
}

/// What a command produced: JSON body, text lines and whether the analysis
/// succeeded.
struct Done {
    command: &'static str,
    body: Value,
    text: Vec<String>,
    failure: Option<String>,
}

fn done(command: &'static str, body: impl Serialize, text: Vec<String>) -> Done {
    Done {
        command,
        body: serde_json::to_value(body).expect("serializable"),
        text,
        failure: None,
    }
}

#[derive(Serialize)]
struct EulerOut {
    dim: DimensionVector,
    dim2: DimensionVector,
    euler: i64,
}

#[derive(Serialize)]
struct ClassifyOut {
    dim: DimensionVector,
    class: String,
    label: String,
    tits_form: i64,
}

#[derive(Serialize)]
struct OrbitOut {
    dim: DimensionVector,
    generic: bool,
    gl_dim: usize,
    end_dim: usize,
    orbit_dim: usize,
    codim: Option<usize>,
}

#[derive(Serialize)]
struct WeightDims {
    chi: usize,
    #[serde(rename = "2chi")]
    two_chi: usize,
}

#[derive(Serialize)]
struct WeightQuery {
    weight: Weight,
    dim: usize,
    n: Option<u32>,
    remainder: Option<Weight>,
    predicted_dim: Option<usize>,
}

#[derive(Serialize)]
struct SiOut {
    #[serde(rename = "box")]
    bound: u32,
    chi: Weight,
    monomials: Vec<String>,
    count: usize,
    codim: usize,
    unique_in_box: bool,
    dims: WeightDims,
    multiplicity_free: bool,
    witness: Option<Weight>,
    witness_dim: Option<usize>,
    query: Option<WeightQuery>,
}

fn run(cmd: Command) -> Result<(Done, bool), Failure> {
    match cmd {
        Command::Euler {
            target,
            dim2,
            common,
        } => {
            let bound = load_target(&target)?;
            let dim2 = dim2.unwrap_or_else(|| target.dim.clone());
            let euler = euler_form(&bound.quiver, &target.dim, &dim2).map_err(input)?;
            let text = vec![format!("<{}, {}> = {euler}", target.dim, dim2)];
            Ok((
                done(
                    "euler",
                    EulerOut {
                        dim: target.dim,
                        dim2,
                        euler,
                    },
                    text,
                ),
                common.json,
            ))
        }
        Command::Classify { target, common } => {
            let bound = load_target(&target)?;
            let class = classify_root(&bound.quiver, &target.dim, &common.sampling())
                .map_err(roots_failure)?;
            let b = target.dim.to_i64();
            let tits_form = bound.quiver.euler_pairing(&b, &b).map_err(input)?;
            let label = class.to_string();
            let out = ClassifyOut {
                dim: target.dim,
                class: format!("{class:?}"),
                label: label.clone(),
                tits_form,
            };
            Ok((done("classify", out, vec![label]), common.json))
        }
        Command::Decompose { target, common } => {
            let bound = load_target(&target)?;
            let (dec, failure) =
                match canonical_decomposition(&bound.quiver, &target.dim, &common.sampling()) {
                    Ok(d) => (d, None),
                    Err(RootsError::CertificationFailed {
                        decomposition,
                        reason,
                    }) => (*decomposition, Some(reason)),
                    Err(e) => return Err(input(e)),
                };
            let parts: Vec<String> = dec.parts.iter().map(|p| p.to_string()).collect();
            let mut text = vec![format!("{} = {}", target.dim, parts.join(" + "))];
            text.extend(
                dec.certificate
                    .classes
                    .iter()
                    .zip(&parts)
                    .map(|(c, p)| format!("  {p}: {c}")),
            );
            text.push(format!("confidence: {:?}", dec.confidence));
            let mut d = done("decompose", &dec, text);
            d.failure = failure.map(|r| format!("certification failed: {r}"));
            Ok((d, common.json))
        }
        Command::Report { target, common } => {
            let bound = load_target(&target)?;
            let r = prehomogeneity_report(&bound.quiver, &target.dim, &common.sampling())
                .map_err(roots_failure)?;
            let text = vec![
                format!("prehomogeneous: {}", r.prehomogeneous),
                format!("almost prehomogeneous: {}", r.almost_prehomogeneous),
                format!("generic orbit codim: {}", r.generic_orbit_codim),
                format!("conclusion: {:?}", r.conclusion),
            ];
            Ok((done("report", &r, text), common.json))
        }
        Command::SiWeights {
            system,
            bound,
            weight,
            common,
        } => {
            let sys = GeneratorSystem::from_json(&read(&system)?)
                .map_err(|e| Failure::Input(format!("{}: {e}", system.display())))?;
            let rep = match minimal_double_weight(&sys, bound) {
                Ok(r) => r,
                Err(e @ SiError::NotFoundInBox { .. }) => {
                    return Err(Failure::Analysis(e.to_string()))
                }
                Err(e) => return Err(input(e)),
            };
            let dims = WeightDims {
                chi: weight_space_dim_symbolic(&sys, &rep.chi, bound),
                two_chi: weight_space_dim_symbolic(&sys, &rep.chi.scale(2), bound),
            };
            let mf = multiplicity_free_in_box(&sys, bound);
            let query = match weight {
                Some(w) => {
                    if w.len() != sys.vertices().len() {
                        return Err(Failure::Input(format!(
                            "--weight has {} entries but the system has {} vertices",
                            w.len(),
                            sys.vertices().len()
                        )));
                    }
                    let dim = weight_space_dim_symbolic(&sys, &w, bound);
                    let rem = weight_remainder(&w, &rep, &sys, bound).ok();
                    Some(WeightQuery {
                        weight: w,
                        dim,
                        n: rem.as_ref().map(|r| r.n),
                        remainder: rem.as_ref().map(|r| r.rem.clone()),
                        predicted_dim: rem.and_then(|r| r.predicted_dim),
                    })
                }
                None => None,
            };
            let monomials: Vec<String> = rep
                .monomials
                .iter()
                .map(|m| sys.display(m).to_string())
                .collect();
            let mut text = vec![
                format!("chi = {}", rep.chi),
                format!(
                    "monomials: {} (count {}, codim {})",
                    monomials.join(", "),
                    rep.count,
                    rep.codim
                ),
                format!("dim SI_chi = {}, dim SI_2chi = {}", dims.chi, dims.two_chi),
                format!("multiplicity free in box {bound}: {}", mf.multiplicity_free),
            ];
            if let Some(q) = &query {
                text.push(format!("dim SI_{} = {}", q.weight, q.dim));
            }
            let out = SiOut {
                bound,
                chi: rep.chi,
                monomials,
                count: rep.count,
                codim: rep.codim,
                unique_in_box: rep.unique_in_box,
                dims,
                multiplicity_free: mf.multiplicity_free,
                witness: mf.witness,
                witness_dim: mf.witness_dim,
                query,
            };
            Ok((done("si-weights", out, text), common.json))
        }
        Command::VerifyExample { name, n, common } => {
            let id = FixtureId::parse(&name, n).map_err(input)?;
            let report = verify_example(id, common.seed).map_err(input)?;
            let mut text = vec![format!("{} (seed {})", report.fixture, report.seed)];
            for c in &report.claims {
                let values = serde_json::to_string(&c.values).expect("serializable");
                text.push(format!(
                    "  ({}) {} {}  {values}",
                    c.id,
                    if c.passed { "PASS" } else { "FAIL" },
                    c.statement
                ));
            }
            let failure =
                (!report.passed).then(|| format!("{} has failing claims", report.fixture));
            let mut d = done("verify-example", &report, text);
            d.failure = failure;
            Ok((d, common.json))
        }
        Command::Orbit {
            target,
            point,
            common,
        } => {
            let bound = load_target(&target)?;
            let v = match &point {
                Some(p) => {
                    let v = RepPoint::from_json(&bound.quiver, &read(p)?).map_err(input)?;
                    if v.dim() != &target.dim {
                        return Err(Failure::Input(format!(
                            "point has dimension vector {}, not {}",
                            v.dim(),
                            target.dim
                        )));
                    }
                    if !v.satisfies(&bound.relations).map_err(input)? {
                        return Err(Failure::Input(
                            "point does not satisfy the relations".into(),
                        ));
                    }
                    v
                }
                None if bound.relations.is_empty() => {
                    random_rep(&bound.quiver, &target.dim, &mut sample_rng(common.seed, 0))
                }
                None => {
                    return Err(Failure::Input(
                        "quiver has relations: pass a point with --point".into(),
                    ))
                }
            };
            let od = orbit_data(&Rationals, &v);
            let text = vec![
                format!(
                    "dim GL = {}, dim End = {}, orbit dim = {}",
                    od.gl_dim, od.end_dim, od.orbit_dim
                ),
                match od.codim {
                    Some(c) => format!("codim in rep space = {c}"),
                    None => "codim: not computed for quivers with oriented cycles".into(),
                },
            ];
            let out = OrbitOut {
                dim: target.dim,
                generic: point.is_none(),
                gl_dim: od.gl_dim,
                end_dim: od.end_dim,
                orbit_dim: od.orbit_dim,
                codim: od.codim,
            };
            Ok((done("orbit", out, text), common.json))
        }
        Command::Fixture { name, n } => {
            let f = build_fixture(FixtureId::parse(&name, n).map_err(input)?).map_err(input)?;
            let body = serde_json::json!({
                "fixture": f.id.to_string(),
                "quiver": f.bound.to_file(),
                "dim": f.dim,
                "system": f.system.as_ref().map(|s| s.to_file()),
            });
            Ok((done("fixture", body, vec![]), true))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok((d, json)) => {
            let mut stdout = std::io::stdout().lock();
            // A closed pipe (e.g. `| head`) is not an error worth reporting.
            let _ = if json {
                let out = Output {
                    command: d.command,
                    body: d.body,
                };
                writeln!(
                    stdout,
                    "{}",
                    serde_json::to_string_pretty(&out).expect("serializable")
                )
            } else {
                d.text
                    .iter()
                    .try_for_each(|line| writeln!(stdout, "{line}"))
            };
            match d.failure {
                Some(msg) => {
                    eprintln!("qsi: {msg}");
                    ExitCode::from(1)
                }
                None => ExitCode::SUCCESS,
            }
        }
        Err(f) => {
            let msg = match &f {
                Failure::Analysis(m) | Failure::Input(m) => m,
            };
            eprintln!("qsi: {msg}");
            ExitCode::from(f.code())
        }
    }
}
