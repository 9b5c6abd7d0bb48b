//! Command-line interface: algebra and module inspection, the pp-formula
//! calculus, Euler-form arithmetic, integer window queries, slope profiles,
//! Ziegler containment at a rational slope, one-point extension tools and
//! the end-to-end inclusion decider.

use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use tubular::algebra::AlgebraPresentation;
use tubular::decide::{
    decide_inclusion, decide_sentence, DecisionContext, SentenceVerdict, Verdict, Witness,
};
use tubular::decomp;
use tubular::euler::EulerData;
use tubular::json as wire;
use tubular::linalg::fmt_rat;
use tubular::onepoint;
use tubular::pp;
use tubular::presburger::{self, Endpoint};
use tubular::profile;
use tubular::ziegler;
use tubular::Result;

#[derive(Parser)]
#[command(
    name = "tubular",
    version,
    about = "exact decision procedures for modules over canonical algebras of tubular type"
)]
struct Cli {
    /// Algebra context: a spec like "C(2,2,2,2;2)" or a JSON file path
    #[arg(long, global = true, default_value = "C(2,2,2,2;2)")]
    algebra: String,
    /// Stream pipeline steps to stderr
    #[arg(long, global = true)]
    trace: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Algebra presentations
    Algebra {
        #[command(subcommand)]
        cmd: AlgebraCmd,
    },
    /// Module presentations
    Module {
        #[command(subcommand)]
        cmd: ModuleCmd,
    },
    /// pp-formula calculus
    Pp {
        #[command(subcommand)]
        cmd: PpCmd,
    },
    /// Grothendieck-group arithmetic
    Euler {
        #[command(subcommand)]
        cmd: EulerCmd,
    },
    /// Integer linear feasibility queries
    Presburger {
        #[command(subcommand)]
        cmd: PresburgerCmd,
    },
    /// Slope profile of a pp-pair
    Slopeprofile {
        /// pair file {"phi": ..., "psi": ...}
        pairfile: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Ziegler spectrum at a rational slope
    Ziegler {
        #[command(subcommand)]
        cmd: ZieglerCmd,
    },
    /// One-point extension tools
    Onept {
        #[command(subcommand)]
        cmd: OneptCmd,
    },
    /// Inclusion and sentence decisions
    Decide {
        #[command(subcommand)]
        cmd: DecideCmd,
    },
}

#[derive(Subcommand)]
enum AlgebraCmd {
    /// Print the algebra presentation as JSON
    Show,
}

#[derive(Subcommand)]
enum ModuleCmd {
    /// Check all module presentation invariants
    Validate { file: String },
    /// Dimension of Hom(M, N)
    Homdim { m: String, n: String },
    /// Dimension vector
    Dimvec { m: String },
    /// Decompose into indecomposables
    Decompose {
        file: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Isomorphism test with certificate
    Iso {
        a: String,
        b: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 32)]
        trials: u32,
    },
}

#[derive(Args)]
struct FormulaArg {
    /// formula JSON file
    #[arg(long, conflicts_with = "text")]
    formula: Option<String>,
    /// formula in surface syntax, e.g. "E y1 . x1 - y1*einf = 0"
    #[arg(long)]
    text: Option<String>,
}

impl FormulaArg {
    fn load(&self, algebra: &Arc<AlgebraPresentation>) -> Result<pp::PpFormula> {
        match (&self.formula, &self.text) {
            (Some(path), _) => {
                let j: wire::FormulaJson =
                    serde_json::from_str(&std::fs::read_to_string(path)?)?;
                wire::formula_from_json(&j, algebra.clone())
            }
            (_, Some(text)) => pp::parse_text(algebra.clone(), text),
            _ => Err(tubular::Error::Parse(
                "provide --formula FILE or --text".into(),
            )),
        }
    }
}

#[derive(Subcommand)]
enum PpCmd {
    /// dim phi(M)
    Eval {
        #[command(flatten)]
        formula: FormulaArg,
        /// module file or fixture name
        #[arg(long)]
        module: String,
    },
    /// Elementary dual formula
    Dual {
        #[command(flatten)]
        formula: FormulaArg,
    },
    /// Free realization: module, tuple and cokernel dimensions
    Freereal {
        #[command(flatten)]
        formula: FormulaArg,
    },
    /// Conjunction of two formula files
    Meet { a: String, b: String },
    /// Sum of two formula files
    Join { a: String, b: String },
    /// Generator of the pp-type of the standard basis of a module
    Genpp { module: String },
}

#[derive(Subcommand)]
enum EulerCmd {
    /// Euler pairing of two integer vectors
    Pair { x: String, y: String },
    /// Quadratic form
    Chi { x: String },
    /// Slope of a vector
    Slope { x: String },
    /// Root-coset representatives
    Omega,
    /// Indecomposable dimension vector predicate
    Indec { x: String },
}

#[derive(Subcommand)]
enum PresburgerCmd {
    /// Window query: witness with slope in (a, b), w.x > 0, v.x = 0
    Query {
        /// open interval endpoints, rationals or "inf"
        #[arg(long, num_args = 2)]
        window: Vec<String>,
        /// positivity functional (comma-separated integers)
        #[arg(long)]
        pos: String,
        /// zero functionals, repeatable
        #[arg(long)]
        zero: Vec<String>,
    },
}

#[derive(Subcommand)]
enum ZieglerCmd {
    /// Decide U subseteq W1 cup ... at a rational slope
    Contain {
        /// family file {"slope": "b/a", "ranks": [...]}
        #[arg(long)]
        family: String,
        /// form files: U then W1 W2 ...
        forms: Vec<String>,
    },
}

#[derive(Subcommand)]
enum OneptCmd {
    /// The pp-axioms for the image of F1
    Axioms,
    /// Flat A[X]-presentation of F0(M) for a star module file
    F0 { module: String },
    /// Flat A[X]-presentation of F1(M) for a star module file
    F1 { module: String },
    /// Bounded boundary-slope search for a pair file
    Boundary {
        pairfile: String,
        #[arg(long)]
        side: String,
        #[arg(long, default_value_t = 3)]
        bound: usize,
        /// additional pair files that must stay closed
        #[arg(long)]
        closed: Vec<String>,
    },
}

#[derive(Subcommand)]
enum DecideCmd {
    /// Decide (phi/psi) subseteq union of the other pairs
    Include {
        pair: String,
        pairs: Vec<String>,
        /// canonical Ziegler forms for interior breakpoints
        #[arg(long)]
        forms: Option<String>,
        #[arg(long, default_value_t = 3)]
        boundary_bound: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Decide satisfiability of a boolean combination of invariant sentences
    Sentence {
        expr: String,
        #[arg(long, default_value_t = 3)]
        boundary_bound: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

fn parse_ivec(s: &str) -> Result<Vec<i64>> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse::<i64>()
                .map_err(|_| tubular::Error::Parse(format!("bad integer {x:?}")))
        })
        .collect()
}

fn load_pair(path: &str, algebra: &Arc<AlgebraPresentation>) -> Result<pp::PpPair> {
    let j: wire::PairJson = serde_json::from_str(&std::fs::read_to_string(path)?)?;
    wire::pair_from_json(&j, algebra.clone())
}

fn witness_json(w: &Witness) -> serde_json::Value {
    match w {
        Witness::DimensionVector { vector, slope } => json!({
            "kind": "dimension_vector", "vector": vector, "slope": slope,
        }),
        Witness::SymbolicPoint { description, slope } => json!({
            "kind": "symbolic_point", "description": description, "slope": slope,
        }),
        Witness::Module { name, dim_vector } => json!({
            "kind": "module", "name": name, "dim_vector": dim_vector,
        }),
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    let algebra = wire::algebra_from_spec(&cli.algebra)?;
    match cli.cmd {
        Cmd::Algebra { cmd: AlgebraCmd::Show } => {
            let j = wire::algebra_to_json(&algebra);
            println!("{}", serde_json::to_string_pretty(&j)?);
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Module { cmd } => run_module(cmd, &algebra),
        Cmd::Pp { cmd } => run_pp(cmd, &algebra),
        Cmd::Euler { cmd } => run_euler(cmd, &algebra),
        Cmd::Presburger { cmd } => run_presburger(cmd, &algebra),
        Cmd::Slopeprofile { pairfile, seed } => {
            let pair = load_pair(&pairfile, &algebra)?;
            let e = EulerData::new(&algebra)?;
            let p = profile::slope_profile(&e, &pair, seed)?;
            println!(
                "{}",
                serde_json::to_string_pretty(&json!({
                    "breakpoints": p.breakpoints.iter().map(fmt_rat).collect::<Vec<_>>(),
                    "vectors": p.vectors,
                }))?
            );
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Ziegler { cmd } => run_ziegler(cmd),
        Cmd::Onept { cmd } => run_onept(cmd, &algebra),
        Cmd::Decide { cmd } => run_decide(cmd, &algebra, cli.trace),
    }
}

fn run_module(cmd: ModuleCmd, algebra: &Arc<AlgebraPresentation>) -> Result<ExitCode> {
    match cmd {
        ModuleCmd::Validate { file } => match wire::module_from_spec(&file, algebra) {
            Ok(_) => {
                println!("{}", json!({"ok": true}));
                Ok(ExitCode::SUCCESS)
            }
            Err(e) => {
                println!("{}", json!({"ok": false, "violation": e.to_string()}));
                Ok(ExitCode::FAILURE)
            }
        },
        ModuleCmd::Homdim { m, n } => {
            let mm = wire::module_from_spec(&m, algebra)?;
            let nn = wire::module_from_spec(&n, algebra)?;
            let d = tubular::module::hom_dim(&mm, &nn)?;
            println!("{}", json!({"hom_dim": d}));
            Ok(ExitCode::SUCCESS)
        }
        ModuleCmd::Dimvec { m } => {
            let mm = wire::module_from_spec(&m, algebra)?;
            println!("{}", json!({"dim_vector": mm.dim_vector()}));
            Ok(ExitCode::SUCCESS)
        }
        ModuleCmd::Decompose { file, seed } => {
            let mm = wire::module_from_spec(&file, algebra)?;
            let d = decomp::decompose(&mm, seed)?;
            let summands: Vec<_> = d
                .groups
                .iter()
                .map(|&(rep, mult)| {
                    json!({
                        "dim_vector": d.factors[rep].module.dim_vector(),
                        "multiplicity": mult,
                        "absolutely_indecomposable": d.factors[rep].absolutely_indec,
                    })
                })
                .collect();
            println!(
                "{}",
                serde_json::to_string_pretty(&json!({
                    "summands": summands,
                    "certificate_verified": d.verify(&mm),
                    "absolute": d.all_absolute,
                }))?
            );
            Ok(ExitCode::SUCCESS)
        }
        ModuleCmd::Iso { a, b, seed, trials } => {
            let ma = wire::module_from_spec(&a, algebra)?;
            let mb = wire::module_from_spec(&b, algebra)?;
            let out = match decomp::are_isomorphic(&ma, &mb, seed, trials)? {
                decomp::IsoResult::Yes(_) => json!({"isomorphic": "yes"}),
                decomp::IsoResult::No(reason) => {
                    json!({"isomorphic": "no", "reason": reason})
                }
                decomp::IsoResult::ProbablyNo => json!({"isomorphic": "probably_no"}),
            };
            println!("{out}");
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn run_pp(cmd: PpCmd, algebra: &Arc<AlgebraPresentation>) -> Result<ExitCode> {
    match cmd {
        PpCmd::Eval { formula, module } => {
            let f = formula.load(algebra)?;
            let m = wire::module_from_spec(&module, algebra)?;
            println!("{}", json!({"dim": pp::evaluate(&f, &m)?}));
        }
        PpCmd::Dual { formula } => {
            let f = formula.load(algebra)?;
            let d = pp::dual(&f);
            println!(
                "{}",
                serde_json::to_string_pretty(&wire::formula_to_json(&d))?
            );
        }
        PpCmd::Freereal { formula } => {
            let f = formula.load(algebra)?;
            let fr = pp::free_realization(&f)?;
            println!(
                "{}",
                serde_json::to_string_pretty(&json!({
                    "module": wire::module_to_json(&fr.module),
                    "tuple": fr.tuple.iter()
                        .map(|t| t.iter().map(fmt_rat).collect::<Vec<_>>())
                        .collect::<Vec<_>>(),
                    "cokernel_dim": fr.cokernel.dim,
                }))?
            );
        }
        PpCmd::Meet { a, b } => {
            let fa = FormulaArg {
                formula: Some(a),
                text: None,
            }
            .load(algebra)?;
            let fb = FormulaArg {
                formula: Some(b),
                text: None,
            }
            .load(algebra)?;
            let m = pp::meet(&fa, &fb)?;
            println!(
                "{}",
                serde_json::to_string_pretty(&wire::formula_to_json(&m))?
            );
        }
        PpCmd::Join { a, b } => {
            let fa = FormulaArg {
                formula: Some(a),
                text: None,
            }
            .load(algebra)?;
            let fb = FormulaArg {
                formula: Some(b),
                text: None,
            }
            .load(algebra)?;
            let m = pp::join(&fa, &fb)?;
            println!(
                "{}",
                serde_json::to_string_pretty(&wire::formula_to_json(&m))?
            );
        }
        PpCmd::Genpp { module } => {
            let m = wire::module_from_spec(&module, algebra)?;
            let basis: Vec<Vec<tubular::linalg::Rat>> = (0..m.dim)
                .map(|i| {
                    let mut e: Vec<tubular::linalg::Rat> =
                        vec![num::Zero::zero(); m.dim];
                    e[i] = num::One::one();
                    e
                })
                .collect();
            let f = pp::pp_type_generator(&m, &basis)?;
            println!(
                "{}",
                serde_json::to_string_pretty(&wire::formula_to_json(&f))?
            );
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn run_euler(cmd: EulerCmd, algebra: &Arc<AlgebraPresentation>) -> Result<ExitCode> {
    let e = EulerData::new(algebra)?;
    match cmd {
        EulerCmd::Pair { x, y } => {
            let v = e.pair(&parse_ivec(&x)?, &parse_ivec(&y)?)?;
            println!("{}", json!({"pair": v}));
        }
        EulerCmd::Chi { x } => {
            println!("{}", json!({"chi": e.chi(&parse_ivec(&x)?)}));
        }
        EulerCmd::Slope { x } => {
            println!(
                "{}",
                json!({"slope": e.slope_of(&parse_ivec(&x)?).as_string()})
            );
        }
        EulerCmd::Omega => {
            println!(
                "{}",
                serde_json::to_string_pretty(&json!({
                    "omega": e.compute_omega(),
                    "radical_basis": e.radical_basis,
                    "h0": e.h0, "hinf": e.hinf,
                    "band_bounds": [e.band_bounds.0, e.band_bounds.1],
                }))?
            );
        }
        EulerCmd::Indec { x } => {
            println!(
                "{}",
                json!({"indecomposable": e.is_indec_dimvector(&parse_ivec(&x)?)})
            );
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn run_presburger(cmd: PresburgerCmd, algebra: &Arc<AlgebraPresentation>) -> Result<ExitCode> {
    let PresburgerCmd::Query { window, pos, zero } = cmd;
    let e = EulerData::new(algebra)?;
    let a = Endpoint::parse(&window[0])?;
    let b = Endpoint::parse(&window[1])?;
    let w = parse_ivec(&pos)?;
    let vs: Vec<Vec<i64>> = zero.iter().map(|z| parse_ivec(z)).collect::<Result<_>>()?;
    match presburger::window_query(&e, &a, &b, &w, &vs)? {
        Some(x) => {
            println!(
                "{}",
                json!({"witness": x, "slope": e.slope_of(&x).as_string()})
            );
            Ok(ExitCode::SUCCESS)
        }
        None => {
            println!("{}", json!({"infeasible": true}));
            Ok(ExitCode::FAILURE)
        }
    }
}

fn run_ziegler(cmd: ZieglerCmd) -> Result<ExitCode> {
    let ZieglerCmd::Contain { family, forms } = cmd;
    if forms.len() < 2 {
        return Err(tubular::Error::Parse(
            "need U and at least one W form file".into(),
        ));
    }
    let fam: wire::FamilyJson = serde_json::from_str(&std::fs::read_to_string(&family)?)?;
    let model = wire::family_from_json(&fam)?;
    let mut loaded = Vec::new();
    for f in &forms {
        let j: wire::FormJson = serde_json::from_str(&std::fs::read_to_string(f)?)?;
        loaded.push(wire::form_from_json(&j)?);
    }
    let u = &loaded[0];
    let ws = &loaded[1..];
    let verdict = ziegler::contains(&model, u, ws);
    println!("{}", json!({"contained": verdict}));
    Ok(if verdict {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn run_onept(cmd: OneptCmd, algebra: &Arc<AlgebraPresentation>) -> Result<ExitCode> {
    let ext = onepoint::extension_from_canonical(algebra.clone())?;
    match cmd {
        OneptCmd::Axioms => {
            let (sigma, pair) = onepoint::image_axioms(&ext)?;
            println!(
                "{}",
                serde_json::to_string_pretty(&json!({
                    "sigma": wire::formula_to_json(&sigma),
                    "pair": wire::pair_to_json(&pair),
                }))?
            );
            Ok(ExitCode::SUCCESS)
        }
        OneptCmd::F0 { module } => {
            let j: wire::ModuleJson = serde_json::from_str(&std::fs::read_to_string(&module)?)?;
            let m = wire::module_from_json(&j, ext.star.clone())?;
            let flat = onepoint::to_flat(&ext, &onepoint::functor_f0(&ext, &m));
            println!(
                "{}",
                serde_json::to_string_pretty(&wire::module_to_json(&flat))?
            );
            Ok(ExitCode::SUCCESS)
        }
        OneptCmd::F1 { module } => {
            let j: wire::ModuleJson = serde_json::from_str(&std::fs::read_to_string(&module)?)?;
            let m = wire::module_from_json(&j, ext.star.clone())?;
            let flat = onepoint::to_flat(&ext, &onepoint::functor_f1(&ext, &m)?);
            println!(
                "{}",
                serde_json::to_string_pretty(&wire::module_to_json(&flat))?
            );
            Ok(ExitCode::SUCCESS)
        }
        OneptCmd::Boundary {
            pairfile,
            side,
            bound,
            closed,
        } => {
            let pair = load_pair(&pairfile, algebra)?;
            let mut pairs = Vec::new();
            for c in &closed {
                pairs.push(load_pair(c, algebra)?);
            }
            let side = match side.as_str() {
                "zero" => onepoint::BoundarySide::Zero,
                "infinity" | "inf" => onepoint::BoundarySide::Infinity,
                other => return Err(tubular::Error::Parse(format!("unknown side {other:?}"))),
            };
            let ext_op = onepoint::extension_from_canonical(Arc::new(algebra.opposite()))?;
            match onepoint::boundary_query(&ext, &ext_op, &pair, &pairs, side, bound)? {
                onepoint::BoundaryResult::Yes {
                    witness_name,
                    witness,
                } => {
                    println!(
                        "{}",
                        json!({
                            "result": "yes",
                            "witness": witness_name,
                            "dim_vector": witness.dim_vector(),
                        })
                    );
                    Ok(ExitCode::SUCCESS)
                }
                onepoint::BoundaryResult::Unknown => {
                    println!("{}", json!({"result": "unknown"}));
                    Ok(ExitCode::FAILURE)
                }
            }
        }
    }
}

fn run_decide(cmd: DecideCmd, algebra: &Arc<AlgebraPresentation>, trace: bool) -> Result<ExitCode> {
    match cmd {
        DecideCmd::Include {
            pair,
            pairs,
            forms,
            boundary_bound,
            seed,
        } => {
            let mut ctx = DecisionContext::new(algebra.clone())?;
            ctx.boundary_bound = boundary_bound;
            ctx.seed = seed;
            if let Some(path) = forms {
                let j: wire::FormsFileJson =
                    serde_json::from_str(&std::fs::read_to_string(&path)?)?;
                ctx.forms = wire::forms_from_json(&j)?;
            }
            let p = load_pair(&pair, algebra)?;
            let ps: Vec<_> = pairs
                .iter()
                .map(|f| load_pair(f, algebra))
                .collect::<Result<_>>()?;
            let d = decide_inclusion(&ctx, &p, &ps)?;
            if trace {
                for line in &d.log {
                    eprintln!("[trace] {line}");
                }
            }
            let (verdict, code, witness) = match &d.verdict {
                Verdict::Included => ("included", ExitCode::from(0), None),
                Verdict::NotIncluded { witness } => (
                    "not_included",
                    ExitCode::from(1),
                    Some(witness_json(witness)),
                ),
                Verdict::Unknown { blocking } => (
                    "unknown",
                    ExitCode::from(2),
                    Some(json!({"blocking": blocking})),
                ),
            };
            println!(
                "{}",
                serde_json::to_string_pretty(&json!({
                    "verdict": verdict,
                    "witness": witness,
                    "log": d.log,
                }))?
            );
            Ok(code)
        }
        DecideCmd::Sentence {
            expr,
            boundary_bound,
            seed,
        } => {
            let mut ctx = DecisionContext::new(algebra.clone())?;
            ctx.boundary_bound = boundary_bound;
            ctx.seed = seed;
            let j: wire::SentenceJson = serde_json::from_str(&std::fs::read_to_string(&expr)?)?;
            let e = wire::sentence_from_json(&j, algebra.clone())?;
            let d = decide_sentence(&ctx, &e)?;
            if trace {
                for line in &d.log {
                    eprintln!("[trace] {line}");
                }
            }
            let (verdict, code, witnesses) = match &d.verdict {
                SentenceVerdict::Satisfiable { witnesses } => (
                    "satisfiable",
                    ExitCode::from(0),
                    Some(witnesses.iter().map(witness_json).collect::<Vec<_>>()),
                ),
                SentenceVerdict::Unsatisfiable => ("unsatisfiable", ExitCode::from(1), None),
                SentenceVerdict::Unknown { blocking } => (
                    "unknown",
                    ExitCode::from(2),
                    Some(vec![json!({"blocking": blocking})]),
                ),
            };
            println!(
                "{}",
                serde_json::to_string_pretty(&json!({
                    "verdict": verdict,
                    "witnesses": witnesses,
                    "log": d.log,
                }))?
            );
            Ok(code)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
    }
}
