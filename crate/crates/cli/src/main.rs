//! `biquiver`: JSON in, JSON out.
//!
//! Exit codes: 0 success, 1 usage, 2 parse or validation error,
//! 3 precondition violation.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use biquiver_core::conjugation::Elimination;
use biquiver_core::morphisms::Decomposition;
use biquiver_core::{
    are_isomorphic, conjugate_representation, dash_elimination_plan, decompose, definiteness,
    direct_sum, evaluate, gadget_cycle, gadget_loop_arrow, gadget_two_loops, gram_matrix, hom_basis, radical_vector,
    random_representation, representation_type, Biquiver, CMatrix, DimensionVector, Error, IsoVerdict,
    MatrixRepresentation, SamplingConfig, SmallWild,
};
use clap::{Parser, Subcommand};
use serde_json::{json, Map, Value};

#[derive(Parser)]
#[command(name = "biquiver", version, about = "Classify biquivers and compute with their representations")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Indented JSON, plus a one-line summary on stderr.
    #[arg(long, global = true)]
    pretty: bool,

    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Random attempts per search.
    #[arg(long, global = true, default_value_t = 8)]
    trials: usize,

    /// Coefficient bound for sampling; coordinate cap for `roots`.
    #[arg(long, global = true)]
    bound: Option<i64>,
}

#[derive(Subcommand)]
enum Command {
    /// Representation type and Dynkin label of a connected biquiver.
    Classify {
        file: PathBuf,
        /// Classify each connected component instead of rejecting disconnected input.
        #[arg(long)]
        components: bool,
    },
    /// Gram matrix, definiteness and radical of the Tits form.
    Tits {
        file: PathBuf,
        /// Also evaluate the form at this vector, e.g. `1,2,1`.
        #[arg(long, value_delimiter = ',')]
        vector: Option<Vec<usize>>,
    },
    /// Nonnegative vectors where the Tits form takes the given value.
    Roots {
        file: PathBuf,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(i64).range(0..=1))]
        value: i64,
    },
    /// Conjugate at a vertex (1-based).
    Conjugate {
        file: PathBuf,
        #[arg(long)]
        vertex: usize,
        /// Representation to transform along with the biquiver.
        #[arg(long)]
        rep: Option<PathBuf>,
    },
    /// Vertices whose conjugation removes every dashed arrow, or the obstruction.
    Eliminate {
        file: PathBuf,
        #[arg(long)]
        rep: Option<PathBuf>,
    },
    #[command(subcommand)]
    Rep(RepCommand),
    #[command(subcommand)]
    Gadget(GadgetCommand),
}

#[derive(Subcommand)]
enum RepCommand {
    /// Check a representation document against its biquiver.
    Validate { biquiver: PathBuf, rep: PathBuf },
    /// Block-diagonal direct sum.
    Sum {
        biquiver: PathBuf,
        #[arg(required = true)]
        reps: Vec<PathBuf>,
    },
    /// Random representation of the given dimension vector.
    Random {
        biquiver: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        dims: Vec<usize>,
    },
    /// A real basis of the morphism space.
    Hom { biquiver: PathBuf, source: PathBuf, target: PathBuf },
    /// Isomorphism test with a certificate on success.
    Iso { biquiver: PathBuf, source: PathBuf, target: PathBuf },
    /// Split into indecomposable summands.
    Decompose { biquiver: PathBuf, rep: PathBuf },
    /// Re-check an emitted certificate: an `iso` result needs TARGET, a
    /// `decompose` result does not.
    Verify { biquiver: PathBuf, source: PathBuf, certificate: PathBuf, target: Option<PathBuf> },
}

#[derive(Subcommand)]
enum GadgetCommand {
    /// Identity maps around a cycle, closed by the given square matrix.
    Cycle {
        biquiver: PathBuf,
        #[arg(long)]
        matrix: PathBuf,
        /// Arrow ids of the cycle in walking order.
        #[arg(long, value_delimiter = ',')]
        cycle: Option<Vec<String>>,
    },
    G1(PairArgs),
    G2(PairArgs),
    G3(PairArgs),
    G4(PairArgs),
}

#[derive(clap::Args)]
struct PairArgs {
    #[arg(long)]
    p: PathBuf,
    #[arg(long)]
    q: PathBuf,
}

enum Failure {
    Usage(String),
    Input(String),
    Precondition(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_precondition() {
            Failure::Precondition(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

type Outcome = Result<(Value, String), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok((value, summary)) => {
            if cli.pretty {
                println!("{}", serde_json::to_string_pretty(&value).expect("serializable"));
                eprintln!("{summary}");
            } else {
                println!("{value}");
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Precondition(msg)) => {
            eprintln!("precondition failed: {msg}");
            ExitCode::from(3)
        }
    }
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Classify { file, components } => classify(&load_biquiver(file)?, *components),
        Command::Tits { file, vector } => tits(&load_biquiver(file)?, vector.as_deref()),
        Command::Roots { file, value } => {
            let bound = match cli.bound {
                Some(b) if b < 1 => return Err(Failure::Usage("--bound must be positive".into())),
                b => b.map(|b| b as usize),
            };
            let roots = biquiver_core::roots::roots_with_value(&load_biquiver(file)?, *value, bound)?;
            let n = roots.len();
            Ok((json!(roots), format!("{n} vectors with value {value}")))
        }
        Command::Conjugate { file, vertex, rep } => {
            let g = load_biquiver(file)?;
            let u = zero_based(&g, *vertex)?;
            match rep {
                None => {
                    let h = biquiver_core::conjugate_biquiver(&g, u)?;
                    let summary = format!("{} dashed arrows after conjugating at {vertex}", h.dashed_count());
                    Ok((h.to_json_value(), summary))
                }
                Some(path) => {
                    let a = conjugate_representation(&load_rep(&g, path)?, u)?;
                    let summary = format!("{} dashed arrows after conjugating at {vertex}", a.biquiver().dashed_count());
                    Ok((json!({"biquiver": a.biquiver().to_json_value(), "representation": a.to_json()}), summary))
                }
            }
        }
        Command::Eliminate { file, rep } => {
            let g = load_biquiver(file)?;
            let a = rep.as_ref().map(|p| load_rep(&g, p)).transpose()?;
            eliminate(&g, a.as_ref())
        }
        Command::Rep(cmd) => rep_command(cli, cmd),
        Command::Gadget(cmd) => gadget_command(cmd),
    }
}

fn sampling(cli: &Cli) -> Result<SamplingConfig, Failure> {
    let bound = cli.bound.unwrap_or(SamplingConfig::default().bound);
    if bound < 1 {
        return Err(Failure::Usage("--bound must be positive".into()));
    }
    Ok(SamplingConfig { bound, trials: cli.trials, seed: cli.seed })
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))
}

fn read_json(path: &Path) -> Result<Value, Failure> {
    serde_json::from_str(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_biquiver(path: &Path) -> Result<Biquiver, Failure> {
    Biquiver::parse_json(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_rep(g: &Biquiver, path: &Path) -> Result<MatrixRepresentation, Failure> {
    MatrixRepresentation::parse_json(g, &read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_matrix(path: &Path) -> Result<CMatrix, Failure> {
    CMatrix::from_json(&read_json(path)?, None).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn zero_based(g: &Biquiver, vertex: usize) -> Result<usize, Failure> {
    if vertex == 0 || vertex > g.vertex_count() {
        return Err(Error::VertexOutOfRange { vertex, vertices: g.vertex_count() }.into());
    }
    Ok(vertex - 1)
}

/// `{"1": S_1, "2": S_2, ...}`
fn vertex_matrices(ms: &[CMatrix]) -> Value {
    Value::Object(ms.iter().enumerate().map(|(v, m)| ((v + 1).to_string(), m.to_json())).collect())
}

fn parse_vertex_matrices(value: &Value, dims: &DimensionVector) -> Result<Vec<CMatrix>, Failure> {
    let obj = value.as_object().ok_or_else(|| Failure::Input("certificate must be an object keyed by vertex".into()))?;
    if obj.len() != dims.len() {
        return Err(Failure::Input(format!("certificate has {} blocks, expected {}", obj.len(), dims.len())));
    }
    (0..dims.len())
        .map(|v| {
            let key = (v + 1).to_string();
            let m = obj.get(&key).ok_or_else(|| Failure::Input(format!("certificate lacks vertex {key}")))?;
            Ok(CMatrix::from_json(m, Some((dims[v], dims[v])))?)
        })
        .collect()
}

fn classify(g: &Biquiver, components: bool) -> Outcome {
    if components {
        let comps = biquiver_core::classifier::classify_components(g)?
            .into_iter()
            .map(|(vertices, ty)| {
                let zero: Vec<usize> = vertices.iter().map(|v| v - 1).collect();
                let def = definiteness(&gram_matrix(&g.induced(&zero)?));
                Ok(json!({"vertices": vertices, "kind": ty.kind, "diagram": ty.diagram, "definiteness": def}))
            })
            .collect::<Result<Vec<Value>, Error>>()?;
        let n = comps.len();
        return Ok((json!({"components": comps}), format!("{n} components")));
    }
    let ty = representation_type(g)?;
    let def = definiteness(&gram_matrix(g));
    let label = ty.diagram.map_or_else(|| "no Dynkin label".to_string(), |d| d.to_string());
    let summary = format!("{label}: {:?} ({:?})", ty.kind, def);
    Ok((json!({"kind": ty.kind, "diagram": ty.diagram, "definiteness": def}), summary))
}

fn tits(g: &Biquiver, vector: Option<&[usize]>) -> Outcome {
    let gram = gram_matrix(g);
    let def = definiteness(&gram);
    let mut out = Map::new();
    out.insert("gram".into(), json!(gram.to_strings()));
    out.insert("definiteness".into(), json!(def));
    out.insert("radical".into(), json!(radical_vector(&gram)));
    if let Some(z) = vector {
        out.insert("value".into(), json!(evaluate(g, &DimensionVector(z.to_vec()))?));
    }
    Ok((Value::Object(out), format!("{def:?}")))
}

fn eliminate(g: &Biquiver, a: Option<&MatrixRepresentation>) -> Outcome {
    match dash_elimination_plan(g)? {
        Elimination::Plan(plan) => {
            let vertices: Vec<usize> = plan.vertices.iter().map(|v| v + 1).collect();
            let summary = format!("conjugate at {vertices:?}");
            let mut out = Map::new();
            out.insert("possible".into(), json!(true));
            out.insert("vertices".into(), json!(vertices));
            out.insert("biquiver".into(), plan.apply_biquiver(g)?.to_json_value());
            if let Some(a) = a {
                out.insert("representation".into(), plan.apply_representation(a)?.to_json());
            }
            Ok((Value::Object(out), summary))
        }
        Elimination::Impossible(obstruction) => {
            let mut detail = serde_json::to_value(&obstruction).expect("serializable");
            if let Some(v) = detail.get_mut("vertex") {
                *v = json!(v.as_u64().expect("vertex index") + 1);
            }
            let message = obstruction.to_string();
            Ok((json!({"possible": false, "obstruction": detail, "message": message}), message))
        }
    }
}

fn rep_command(cli: &Cli, cmd: &RepCommand) -> Outcome {
    match cmd {
        RepCommand::Validate { biquiver, rep } => {
            let a = load_rep(&load_biquiver(biquiver)?, rep)?;
            Ok((json!({"valid": true, "dims": a.dims()}), format!("valid, dims {:?}", a.dims().0)))
        }
        RepCommand::Sum { biquiver, reps } => {
            let g = load_biquiver(biquiver)?;
            let mut parts = reps.iter().map(|p| load_rep(&g, p));
            let first = parts.next().expect("at least one representation")?;
            let sum = parts.try_fold(first, |acc, next| Ok::<_, Failure>(direct_sum(&acc, &next?)?))?;
            let summary = format!("dims {:?}", sum.dims().0);
            Ok((sum.to_json(), summary))
        }
        RepCommand::Random { biquiver, dims } => {
            let g = load_biquiver(biquiver)?;
            let cfg = sampling(cli)?;
            let a = random_representation(&g, &DimensionVector(dims.clone()), cfg.bound, cfg.seed)?;
            Ok((a.to_json(), format!("random representation, dims {dims:?}")))
        }
        RepCommand::Hom { biquiver, source, target } => {
            let g = load_biquiver(biquiver)?;
            let (a, b) = (load_rep(&g, source)?, load_rep(&g, target)?);
            let hom = hom_basis(&a, &b)?;
            let basis: Vec<Value> = hom.basis().iter().map(|f| vertex_matrices(f)).collect();
            Ok((json!({"dim": hom.dim(), "basis": basis}), format!("real dimension {}", hom.dim())))
        }
        RepCommand::Iso { biquiver, source, target } => {
            let g = load_biquiver(biquiver)?;
            let (a, b) = (load_rep(&g, source)?, load_rep(&g, target)?);
            let cfg = sampling(cli)?;
            let verdict = are_isomorphic(&a, &b, &cfg)?;
            let label = verdict.label();
            let mut out = Map::new();
            out.insert("verdict".into(), json!(label));
            match verdict {
                IsoVerdict::Yes(s) => {
                    out.insert("certificate".into(), vertex_matrices(&s));
                }
                IsoVerdict::No(reason) => {
                    out.insert("reason".into(), serde_json::to_value(reason).expect("serializable"));
                }
                IsoVerdict::ProbablyNo(detail) => {
                    out.insert("inconclusive".into(), serde_json::to_value(detail).expect("serializable"));
                }
            }
            out.insert("sampling".into(), json!(cfg));
            Ok((Value::Object(out), label.to_string()))
        }
        RepCommand::Decompose { biquiver, rep } => {
            let g = load_biquiver(biquiver)?;
            let a = load_rep(&g, rep)?;
            let cfg = sampling(cli)?;
            let d = decompose(&a, &cfg)?;
            let summary = format!("{} summands", d.summands.len());
            Ok((decomposition_json(&d, &cfg), summary))
        }
        RepCommand::Verify { biquiver, source, certificate, target } => {
            let g = load_biquiver(biquiver)?;
            let a = load_rep(&g, source)?;
            let doc = read_json(certificate)?;
            let valid = if doc.get("summands").is_some() {
                let summands = doc["summands"]
                    .as_array()
                    .ok_or_else(|| Failure::Input("`summands` must be an array".into()))?
                    .iter()
                    .map(|s| MatrixRepresentation::from_json(&g, s).map_err(Failure::from))
                    .collect::<Result<Vec<_>, _>>()?;
                let t = parse_vertex_matrices(&doc["certificate"], a.dims())?;
                let leaf_status = Vec::new();
                Decomposition { summands, certificate: t, leaf_status }.verify(&a)
            } else {
                let target = target
                    .as_ref()
                    .ok_or_else(|| Failure::Usage("an isomorphism certificate needs TARGET".into()))?;
                let b = load_rep(&g, target)?;
                let s = parse_vertex_matrices(doc.get("certificate").unwrap_or(&doc), a.dims())?;
                biquiver_core::morphisms::verify_isomorphism(&a, &b, &s)
            };
            Ok((json!({"valid": valid}), if valid { "certificate verifies" } else { "certificate does not verify" }.into()))
        }
    }
}

fn decomposition_json(d: &Decomposition, cfg: &SamplingConfig) -> Value {
    json!({
        "summands": d.summands.iter().map(MatrixRepresentation::to_json).collect::<Vec<_>>(),
        "summand_dims": d.summands.iter().map(|s| s.dims().clone()).collect::<Vec<_>>(),
        "leaf_status": d.leaf_status,
        "certificate": vertex_matrices(&d.certificate),
        "sampling": cfg,
    })
}

fn gadget_command(cmd: &GadgetCommand) -> Outcome {
    let (a, name) = match cmd {
        GadgetCommand::Cycle { biquiver, matrix, cycle } => {
            let g = load_biquiver(biquiver)?;
            (gadget_cycle(&g, cycle.as_deref(), &load_matrix(matrix)?)?, "cycle")
        }
        GadgetCommand::G1(p) => (gadget_loop_arrow(SmallWild::G1, &load_matrix(&p.p)?, &load_matrix(&p.q)?)?, "G1"),
        GadgetCommand::G2(p) => (gadget_loop_arrow(SmallWild::G2, &load_matrix(&p.p)?, &load_matrix(&p.q)?)?, "G2"),
        GadgetCommand::G3(p) => (gadget_two_loops(SmallWild::G3, &load_matrix(&p.p)?, &load_matrix(&p.q)?)?, "G3"),
        GadgetCommand::G4(p) => (gadget_two_loops(SmallWild::G4, &load_matrix(&p.p)?, &load_matrix(&p.q)?)?, "G4"),
    };
    let summary = format!("{name} gadget, dims {:?}", a.dims().0);
    Ok((json!({"biquiver": a.biquiver().to_json_value(), "representation": a.to_json()}), summary))
}
