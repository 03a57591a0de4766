use clap::{Args, Parser, Subcommand, ValueEnum};
use floqudit::floquet::{
    circle_square_checks, code_parameters, ellison_style_checks, gauge_analysis, qubit_honeycomb_checks, run_schedule,
    validate_conditions, CheckAssignment,
};
use floqudit::lattice::{build_torus_honeycomb, ColoredLattice};
use floqudit::logical::{brute_force_distance_bounded, loop_operators, verify_logical, BRUTE_FORCE_MAX_N};
use floqudit::noise::{
    build_space_time_lattice, infer_plaquette_values, run_with_errors, syndrome_lattice, NoiseModel,
};
use floqudit::{oracle, Dim, Error, OutcomeMode, PauliOperator, SinglePauli};
use serde_json::json;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "floqudit", version, about = "Qudit Floquet codes on three-colorable {p,3} lattices")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build or load a lattice, print its combinatorics, optionally save it.
    BuildLattice {
        #[command(flatten)]
        lattice: LatticeArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the three commutation conditions. Exit 1 on violation.
    ValidateChecks {
        #[command(flatten)]
        code: CodeArgs,
        /// Write the check assignment in the check-file format.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the schedule and export the trace as JSON Lines.
    Run {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long, default_value_t = 12)]
        rounds: usize,
        #[arg(long, value_enum, default_value_t = Outcomes::Zero)]
        outcomes: Outcomes,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Code parameters, rate cross-checks and the gauge report.
    Params {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long, default_value_t = 12)]
        rounds: usize,
        /// Also search for the exact distance up to this weight (D = 2 only).
        #[arg(long)]
        exact: Option<usize>,
        #[arg(long, default_value_t = BRUTE_FORCE_MAX_N)]
        max_n: usize,
    },
    /// Loop operators of both kinds at every round from 4 on.
    Logicals {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long, default_value_t = 12)]
        rounds: usize,
    },
    /// Apply one single-qudit error and report shifted outcomes and detections.
    Inject {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long, default_value_t = 12)]
        rounds: usize,
        #[arg(long)]
        vertex: usize,
        /// X exponent of the error.
        #[arg(long, default_value_t = 1)]
        x: i64,
        /// Z exponent of the error.
        #[arg(long, default_value_t = 0)]
        z: i64,
        /// The error is applied right before this round.
        #[arg(long, default_value_t = 6)]
        before_round: usize,
    },
    /// Noisy run and space-time syndrome lattice export.
    Syndrome {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long, default_value_t = 12)]
        rounds: usize,
        #[arg(long, default_value_t = 0.01)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of consecutive seeds; more than one prints one lattice per line.
        #[arg(long, default_value_t = 1)]
        shots: u64,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exhaustive dense-matrix oracle suites.
    OracleTest {
        #[arg(long, default_value_t = 2)]
        max_n: usize,
        #[arg(long, value_delimiter = ',', default_value = "2,3")]
        dims: Vec<u32>,
    },
}

#[derive(Args)]
struct LatticeArgs {
    /// `torus:<L1>x<L2>` or a lattice file.
    #[arg(long)]
    lattice: String,
}

#[derive(Args)]
struct CodeArgs {
    #[command(flatten)]
    lattice: LatticeArgs,
    /// circle-square, qubit-honeycomb or ellison:<e>.
    #[arg(long, conflicts_with = "checks")]
    instance: Option<String>,
    /// Check-assignment file.
    #[arg(long)]
    checks: Option<PathBuf>,
    #[arg(long)]
    dim: Option<u32>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Outcomes {
    Zero,
    Sampled,
}

enum Fail {
    Usage(String),
    Invalid(serde_json::Value),
    Lib(Error),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Lib(e)
    }
}

type Res<T> = std::result::Result<T, Fail>;

fn load_lattice(a: &LatticeArgs) -> Res<ColoredLattice> {
    if let Some(spec) = a.lattice.strip_prefix("torus:") {
        let dims: Vec<usize> = spec
            .split('x')
            .map(|t| t.parse().map_err(|_| Fail::Usage(format!("bad torus size {spec:?}, expected e.g. 6x8"))))
            .collect::<Res<_>>()?;
        if dims.len() != 2 {
            return Err(Fail::Usage(format!("bad torus size {spec:?}, expected e.g. 6x8")));
        }
        return Ok(build_torus_honeycomb(dims[0], dims[1])?);
    }
    Ok(ColoredLattice::load(&a.lattice)?)
}

fn parse_dim(d: u32) -> Res<Dim> {
    Dim::new(d).map_err(|e| Fail::Usage(e.to_string()))
}

fn load_code(a: &CodeArgs) -> Res<(ColoredLattice, CheckAssignment)> {
    let lat = load_lattice(&a.lattice)?;
    let dim = a.dim.map(parse_dim).transpose()?;
    let odd = match dim {
        Some(d) => d,
        None => parse_dim(3)?,
    };
    let ca = match (&a.instance, &a.checks) {
        (_, Some(path)) => CheckAssignment::parse(&std::fs::read_to_string(path).map_err(Error::from)?, &lat, dim)?,
        (Some(name), None) => match name.as_str() {
            "circle-square" => circle_square_checks(&lat, odd)?,
            "qubit-honeycomb" => {
                if dim.is_some_and(|d| d.get() != 2) {
                    return Err(Fail::Usage("qubit-honeycomb needs --dim 2".into()));
                }
                qubit_honeycomb_checks(&lat)?
            }
            other => {
                let Some(e) = other.strip_prefix("ellison:") else {
                    return Err(Fail::Usage(format!("unknown instance {other:?}")));
                };
                let e: i64 = e.parse().map_err(|_| Fail::Usage(format!("bad exponent in {other:?}")))?;
                ellison_style_checks(&lat, odd, Some(odd.reduce(e)))?
            }
        },
        (None, None) => return Err(Fail::Usage("pass --instance or --checks".into())),
    };
    Ok((lat, ca))
}

fn require_valid(lat: &ColoredLattice, ca: &CheckAssignment) -> Res<()> {
    let rep = validate_conditions(lat, ca);
    if !rep.passes() {
        return Err(Fail::Invalid(serde_json::to_value(&rep).expect("serializable")));
    }
    Ok(())
}

fn min_rounds(rounds: usize) -> Res<()> {
    if rounds < floqudit::floquet::INIT_ROUNDS {
        return Err(Fail::Usage(format!("--rounds must be at least {}", floqudit::floquet::INIT_ROUNDS)));
    }
    Ok(())
}

fn emit(out: &Option<PathBuf>, text: &str) -> Res<()> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| Fail::Lib(e.into())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Res<()> {
    match cli.cmd {
        Cmd::BuildLattice { lattice, out } => {
            let lat = load_lattice(&lattice)?;
            let c = lat.combinatorics();
            println!(
                "{}",
                json!({
                    "n": c.n, "n_e": c.n_e, "n_p": c.n_p, "p": lat.p, "genus": c.genus,
                    "edges_per_color": c.edges_per_color, "faces_per_color": c.faces_per_color,
                    "loops": lat.loops.iter().map(|l| json!({"name": l.name, "length": l.edges.len(), "nontrivial": lat.is_nontrivial_loop(l)})).collect::<Vec<_>>(),
                })
            );
            if let Some(p) = out {
                lat.save(p)?;
            }
        }
        Cmd::ValidateChecks { code, out } => {
            let (lat, ca) = load_code(&code)?;
            if let Some(p) = &out {
                std::fs::write(p, ca.to_file_string(&lat)).map_err(Error::from)?;
            }
            let rep = validate_conditions(&lat, &ca);
            println!("{}", serde_json::to_string(&rep).expect("serializable"));
            if !rep.passes() {
                return Err(Fail::Invalid(json!(null)));
            }
        }
        Cmd::Run { code, rounds, outcomes, seed, out } => {
            let (lat, ca) = load_code(&code)?;
            require_valid(&lat, &ca)?;
            let mode = match outcomes {
                Outcomes::Zero => OutcomeMode::AllZero,
                Outcomes::Sampled => OutcomeMode::Sampled(seed),
            };
            let tr = run_schedule(&lat, &ca, rounds, mode)?;
            emit(&out, &tr.export_string())?;
        }
        Cmd::Params { code, rounds, exact, max_n } => {
            min_rounds(rounds)?;
            let (lat, ca) = load_code(&code)?;
            require_valid(&lat, &ca)?;
            let tr = run_schedule(&lat, &ca, rounds, OutcomeMode::AllZero)?;
            let round = rounds - 1;
            let mut cp = code_parameters(&lat, &ca, &tr, round)?;
            if let Some(w) = exact {
                cp.d_exact = brute_force_distance_bounded(&tr, round, w, max_n)?;
            }
            let periodic = (4..rounds.saturating_sub(3)).all(|r| tr.rounds[r].tableau == tr.rounds[r + 3].tableau);
            let g = gauge_analysis(&lat, &ca);
            println!(
                "{}",
                json!({
                    "n": cp.n, "k": cp.k, "rate": cp.rate.to_string(), "d_upper": cp.d_upper, "d_exact": cp.d_exact,
                    "round": round, "D": ca.dim().get(), "genus": lat.genus, "periodic": periodic,
                    "mismatches": cp.mismatches, "gauge": g,
                })
            );
            if !cp.mismatches.is_empty() {
                return Err(Fail::Invalid(json!(null)));
            }
        }
        Cmd::Logicals { code, rounds } => {
            min_rounds(rounds)?;
            let (lat, ca) = load_code(&code)?;
            require_valid(&lat, &ca)?;
            let tr = run_schedule(&lat, &ca, rounds, OutcomeMode::AllZero)?;
            let mut bad = false;
            for r in floqudit::floquet::INIT_ROUNDS - 1..rounds {
                for res in loop_operators(&lat, &ca, r) {
                    let row = match res {
                        Ok(op) => {
                            let ok = verify_logical(&tr.rounds[r].isg, &op.operator);
                            bad |= !ok;
                            json!({"round": r, "loop": op.loop_name, "kind": op.kind.name(), "weight": op.operator.weight(),
                                   "operator": op.operator.to_string(), "verified": ok})
                        }
                        Err(e) => {
                            bad = true;
                            json!({"round": r, "error": e.to_string()})
                        }
                    };
                    println!("{row}");
                }
            }
            if bad {
                return Err(Fail::Invalid(json!(null)));
            }
        }
        Cmd::Inject { code, rounds, vertex, x, z, before_round } => {
            min_rounds(rounds)?;
            let (lat, ca) = load_code(&code)?;
            require_valid(&lat, &ca)?;
            if vertex >= lat.n() || before_round >= rounds {
                return Err(Fail::Usage("--vertex or --before-round out of range".into()));
            }
            let dim = ca.dim();
            let single = SinglePauli::new(dim.reduce(x), dim.reduce(z));
            let e = PauliOperator::embed(dim, single, vertex, lat.n())?;
            let id = PauliOperator::identity(dim, lat.n());
            let tr = run_with_errors(&lat, &ca, rounds, |r| if r == before_round { e.clone() } else { id.clone() })?;
            let mut shifts = Vec::new();
            for (a, b) in tr.noisy.rounds.iter().zip(&tr.baseline.rounds) {
                for (&(edge, o), &(_, o0)) in a.outcomes.iter().zip(&b.outcomes) {
                    if o != o0 {
                        shifts.push(json!({"round": a.round, "edge": edge, "shift": dim.sub(o, o0)}));
                    }
                }
            }
            let inf = infer_plaquette_values(&lat, &ca, &tr)?;
            let st = build_space_time_lattice(&lat, dim, &inf, 0.0, 0, rounds);
            let det: Vec<_> = st.detections().collect();
            println!("{}", json!({"error": e.to_string(), "before_round": before_round, "shifts": shifts, "detections": det}));
        }
        Cmd::Syndrome { code, rounds, p, seed, shots, jobs, out } => {
            if rounds <= floqudit::floquet::INIT_ROUNDS {
                return Err(Fail::Usage(format!("--rounds must exceed {}", floqudit::floquet::INIT_ROUNDS)));
            }
            let (lat, ca) = load_code(&code)?;
            require_valid(&lat, &ca)?;
            let model = NoiseModel::new(p, ca.dim()).map_err(|e| Fail::Usage(e.to_string()))?;
            let seeds: Vec<u64> = (0..shots.max(1)).map(|s| seed.wrapping_add(s)).collect();
            let jobs = jobs.max(1).min(seeds.len());
            let chunk = seeds.len().div_ceil(jobs);
            let results: Vec<floqudit::Result<String>> = std::thread::scope(|sc| {
                let handles: Vec<_> = seeds
                    .chunks(chunk)
                    .map(|part| {
                        let (lat, ca, model) = (&lat, &ca, &model);
                        sc.spawn(move || {
                            part.iter()
                                .map(|&s| syndrome_lattice(lat, ca, rounds, model, s).map(|st| st.to_json()))
                                .collect::<Vec<_>>()
                        })
                    })
                    .collect();
                handles.into_iter().flat_map(|h| h.join().expect("worker panicked")).collect()
            });
            let mut text = String::new();
            for r in results {
                text.push_str(&r?);
                text.push('\n');
            }
            emit(&out, &text)?;
        }
        Cmd::OracleTest { max_n, dims } => {
            let dims = dims.into_iter().map(parse_dim).collect::<Res<Vec<_>>>()?;
            let reports = oracle::run_all(max_n, &dims)?;
            let mut ok = true;
            for r in &reports {
                ok &= r.passed();
                println!("{}", serde_json::to_string(r).expect("serializable"));
            }
            if !ok {
                return Err(Fail::Invalid(json!(null)));
            }
        }
    }
    Ok(())
}

fn exit_code(res: Res<()>) -> u8 {
    match res {
        Ok(()) => 0,
        Err(Fail::Usage(m)) => {
            eprintln!("error: {m}");
            2
        }
        Err(Fail::Invalid(v)) => {
            if !v.is_null() {
                println!("{v}");
            }
            1
        }
        Err(Fail::Lib(e)) => {
            eprintln!("{}", json!({"error": e.to_string()}));
            1
        }
    }
}

fn main() -> ExitCode {
    ExitCode::from(exit_code(run(Cli::parse())))
}
