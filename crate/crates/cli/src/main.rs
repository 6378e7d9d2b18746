use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use spinhecke::clifford_family::{affine_embedding_check, center_check, center_suite, evaluation_hom_check};
use spinhecke::dunkl::{check_phi_compatibility, finite_module_by_name, verify_module, InducedModule, PolyVar};
use spinhecke::engine::{confluence_probe, verify_relations};
use spinhecke::expr::parse_element;
use spinhecke::morphisms::{self, check_inverse_pair, inverse_name};
use spinhecke::spin_family::{spin_affine_embedding_check, spin_evaluation_hom_check};
use spinhecke::structure::{Permutation, SpinCocycle};
use spinhecke::{Algebra, Error, Kind, Report, Scalar, Signature, UParam};

const SCHEMA: &str = "spinhecke-report/1";

#[derive(Parser)]
#[command(name = "spinhecke", version, about = "Exact computations in double affine Hecke-Clifford and spin Hecke algebras")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct AlgArgs {
    /// Algebra name, e.g. dahca, sdaha, trigsdaha, "Cl(x)SDaHa", "DaHCa[y^-1]".
    #[arg(long)]
    algebra: String,
    #[arg(long, default_value_t = 2)]
    n: usize,
    /// Specialize u to a constant in Q(w), e.g. 0 or 1/2.
    #[arg(long)]
    u: Option<String>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the PBW normal form of an expression.
    Normalize {
        #[command(flatten)]
        alg: AlgArgs,
        #[arg(long)]
        expr: String,
    },
    /// Check every defining relation, optionally with a random associativity probe.
    VerifyRelations {
        #[command(flatten)]
        alg: AlgArgs,
        /// Number of random monomial triples for the associativity probe.
        #[arg(long, default_value_t = 0)]
        trials: usize,
        #[arg(long, default_value_t = 3)]
        degree_bound: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Homomorphism and inverse-pair checks for the named maps (all when omitted).
    VerifyMorphisms {
        #[arg(long)]
        name: Option<String>,
        #[arg(long, default_value_t = 2)]
        n: usize,
    },
    /// Operator relations and engine cross-check on a polynomial module.
    VerifyModules {
        #[arg(long, default_value = "dahca")]
        algebra: String,
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// basic-spin, basic-spin-odd, basic-spin-tensor, regular-clifford, regular-spin.
        #[arg(long)]
        module: Option<String>,
        #[arg(long, value_enum, default_value_t = Var::Y)]
        var: Var,
        #[arg(long, default_value_t = 3)]
        degree_bound: u32,
        /// Also compare with the action transported through the isomorphism.
        #[arg(long)]
        transport: bool,
    },
    /// Test an element for the even center, or run the power-sum suite.
    CenterCheck {
        #[command(flatten)]
        alg: AlgArgs,
        #[arg(long)]
        expr: Option<String>,
    },
    /// Affine embeddings `a_i -> alpha x_i + z_i` (or spin analogue) and the evaluation map.
    EmbeddingCheck {
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value = "0")]
        alpha: String,
        #[arg(long)]
        spin: bool,
    },
    /// The sign cocycle of the spin group basis.
    CocycleTable {
        #[arg(long, default_value_t = 3)]
        n: usize,
    },
    /// Apply a Dunkl operator or an algebra element to `f (x) w`.
    Act {
        /// dunkl-x, dunkl-y, dunkl-xi, or element.
        #[arg(long)]
        op: String,
        #[arg(long, default_value_t = 1)]
        i: usize,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long)]
        module: Option<String>,
        /// Polynomial f in the module variables.
        #[arg(long)]
        expr: String,
        /// Label of the finite basis vector w (default: the first).
        #[arg(long)]
        w: Option<String>,
        /// For `--op element`: the acting element and its algebra.
        #[arg(long)]
        element: Option<String>,
        #[arg(long, default_value = "dahca")]
        algebra: String,
        #[arg(long, value_enum, default_value_t = Var::Y)]
        var: Var,
    },
    /// Apply a named algebra map.
    Map {
        #[arg(long)]
        name: String,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long)]
        expr: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Var {
    Y,
    X,
}

struct Output {
    command: &'static str,
    algebra: Option<String>,
    n: usize,
    report: Report,
    extra: Map<String, Value>,
    text: Vec<String>,
}

impl Output {
    fn new(command: &'static str, algebra: Option<String>, n: usize) -> Self {
        Output { command, algebra, n, report: Report::new(), extra: Map::new(), text: Vec::new() }
    }

    fn json(&self) -> Value {
        let results: Vec<Value> = self
            .report
            .results
            .iter()
            .map(|r| json!({"id": r.id, "status": if r.pass { "pass" } else { "fail" }, "witness": r.witness}))
            .collect();
        let mut v = json!({
            "schema": SCHEMA,
            "command": self.command,
            "algebra": self.algebra,
            "n": self.n,
            "results": results,
            "summary": {"pass": self.report.passed(), "fail": self.report.failed()},
        });
        v.as_object_mut().expect("object").extend(self.extra.clone());
        v
    }

    fn print(&self, format: Format) {
        match format {
            Format::Json => println!("{}", serde_json::to_string_pretty(&self.json()).expect("serializable")),
            Format::Text => {
                for line in &self.text {
                    println!("{line}");
                }
                for r in &self.report.results {
                    match &r.witness {
                        Some(w) if !r.pass => println!("FAIL {}: {w}", r.id),
                        _ => println!("PASS {}", r.id),
                    }
                }
                if !self.report.results.is_empty() {
                    println!("summary: {} pass, {} fail", self.report.passed(), self.report.failed());
                }
            }
        }
    }
}

fn scalar_constant(text: &str) -> spinhecke::Result<Scalar> {
    let e = parse_element(&Algebra::new(Kind::Sym, 1)?, text)?;
    e.as_scalar().ok_or_else(|| Error::Invalid(format!("{text:?} is not a scalar")))
}

fn algebra(args: &AlgArgs) -> spinhecke::Result<Arc<Algebra>> {
    let mut sig = Signature::parse(&args.algebra, args.n)?;
    if let Some(u) = &args.u {
        let v = scalar_constant(u)?.as_constant().ok_or_else(|| Error::Invalid(format!("--u {u:?} must not involve u")))?;
        sig = sig.with_u(UParam::Value(v));
    }
    Algebra::from_signature(sig)
}

fn default_module(kind: Kind) -> &'static str {
    if kind.is_spin() {
        "basic-spin-odd"
    } else {
        "basic-spin"
    }
}

fn poly_var(v: Var) -> PolyVar {
    match v {
        Var::Y => PolyVar::Y,
        Var::X => PolyVar::X,
    }
}

fn run(cli: &Cli) -> spinhecke::Result<Output> {
    Ok(match &cli.cmd {
        Cmd::Normalize { alg, expr } => {
            let a = algebra(alg)?;
            let e = parse_element(&a, expr)?;
            let mut out = Output::new("normalize", Some(a.name()), a.n());
            out.text.push(e.to_string());
            out.extra.insert("result".into(), json!(e.to_string()));
            out.extra.insert("terms".into(), e.to_json()["terms"].clone());
            out
        }
        Cmd::VerifyRelations { alg, trials, degree_bound, seed } => {
            let a = algebra(alg)?;
            let mut out = Output::new("verify-relations", Some(a.name()), a.n());
            out.report = verify_relations(&a);
            if *trials > 0 {
                let probe = confluence_probe(&a, *trials, *degree_bound, *seed);
                out.report.push(match probe.associativity_failures.first() {
                    None => spinhecke::CheckResult::pass(format!("associativity({trials})")),
                    Some(w) => spinhecke::CheckResult::fail(format!("associativity({trials})"), w.clone()),
                });
                out.report.push(match probe.idempotence_failures.first() {
                    None => spinhecke::CheckResult::pass(format!("renormalization({trials})")),
                    Some(w) => spinhecke::CheckResult::fail(format!("renormalization({trials})"), w.clone()),
                });
            }
            out
        }
        Cmd::VerifyMorphisms { name, n } => {
            let names: Vec<&str> = match name {
                Some(s) => vec![s.as_str()],
                None => morphisms::NAMES.to_vec(),
            };
            let mut out = Output::new("verify-morphisms", None, *n);
            for nm in names {
                let m = morphisms::by_name(nm, *n)?;
                out.report.extend(m.check_homomorphism().prefixed(&format!("{}: ", m.name())));
                if let Some(partner) = inverse_name(m.name()) {
                    let g = morphisms::by_name(partner, *n)?;
                    out.report.extend(check_inverse_pair(&m, &g)?.prefixed(&format!("{}: ", m.name())));
                }
            }
            if name.is_none() {
                out.report.extend(morphisms::check_distinguished_images(*n)?.prefixed("images: "));
                out.report.extend(morphisms::check_compatibility_square(*n)?.prefixed("square: "));
            }
            out
        }
        Cmd::VerifyModules { algebra: alg_name, n, module, var, degree_bound, transport } => {
            let a = Algebra::from_signature(Signature::parse(alg_name, *n)?)?;
            let mname = module.clone().unwrap_or_else(|| default_module(a.kind()).to_string());
            let fin = finite_module_by_name(&mname, *n)?;
            let m = InducedModule::new(a.clone(), fin, poly_var(*var))?;
            let mut out = Output::new("verify-modules", Some(a.name()), *n);
            out.extra.insert("module".into(), json!(m.finite().name()));
            out.report = verify_module(&m, *degree_bound);
            if *transport {
                out.report.extend(check_phi_compatibility(*n, *degree_bound)?);
            }
            out
        }
        Cmd::CenterCheck { alg, expr } => {
            let a = algebra(alg)?;
            let mut out = Output::new("center-check", Some(a.name()), a.n());
            out.report = match expr {
                Some(e) => center_check(&parse_element(&a, e)?),
                None => center_suite(&a)?,
            };
            out
        }
        Cmd::EmbeddingCheck { n, alpha, spin } => {
            let al = scalar_constant(alpha)?;
            let mut out = Output::new("embedding-check", None, *n);
            if *spin {
                out.report.extend(spin_affine_embedding_check(*n, &al)?.prefixed("embedding: "));
                out.report.extend(spin_evaluation_hom_check(*n)?.prefixed("evaluation: "));
            } else {
                out.report.extend(affine_embedding_check(*n, &al)?.prefixed("embedding: "));
                out.report.extend(evaluation_hom_check(*n)?.prefixed("evaluation: "));
            }
            out.extra.insert("alpha".into(), json!(al.to_string()));
            out
        }
        Cmd::CocycleTable { n } => {
            if *n == 0 || *n > 6 {
                return Err(Error::IndexOutOfRange { what: "rank".into(), index: *n, n: 6 });
            }
            let cocycle = SpinCocycle::for_rank(*n);
            let perms = Permutation::all(*n);
            let mut entries = Vec::new();
            let fmt = |p: &Permutation| p.one_line().iter().map(|x| x.to_string()).collect::<String>();
            let mut out = Output::new("cocycle-table", None, *n);
            for s in &perms {
                for t in &perms {
                    let b = cocycle.beta(s, t);
                    out.text.push(format!("{} {} {:+}", fmt(s), fmt(t), b));
                    entries.push(json!({"sigma": fmt(s), "tau": fmt(t), "beta": b}));
                }
            }
            out.extra.insert("table".into(), Value::Array(entries));
            out
        }
        Cmd::Act { op, i, n, module, expr, w, element, algebra: alg_name, var } => {
            let (kind, pv) = match op.as_str() {
                "dunkl-x" => (Kind::DaHCa, PolyVar::Y),
                "dunkl-xi" => (Kind::SDaHa, PolyVar::Y),
                "dunkl-y" => (Kind::DaHCa, PolyVar::X),
                "element" => (Signature::parse(alg_name, *n)?.kind, poly_var(*var)),
                other => return Err(Error::Invalid(format!("unknown op {other:?}; expected dunkl-x, dunkl-y, dunkl-xi or element"))),
            };
            let a = Algebra::new(kind, *n)?;
            let mname = module.clone().unwrap_or_else(|| default_module(kind).to_string());
            let m = InducedModule::new(a.clone(), finite_module_by_name(&mname, *n)?, pv)?;
            let j = match w {
                Some(label) => m.basis_index(label)?,
                None => 0,
            };
            let v = m.vector_from_element(&parse_element(&a, expr)?, j)?;
            let result = match op.as_str() {
                "dunkl-x" => m.dunkl_x(*i, &v)?,
                "dunkl-xi" => m.dunkl_xi(*i, &v)?,
                "dunkl-y" => m.dunkl_y(*i, &v)?,
                _ => {
                    let text = element.as_deref().ok_or_else(|| Error::Invalid("--op element needs --element".into()))?;
                    m.act(&parse_element(&a, text)?, &v)?
                }
            };
            let mut out = Output::new("act", Some(a.name()), *n);
            out.text.push(m.render(&result));
            out.extra.insert("input".into(), m.to_json(&v));
            out.extra.insert("result".into(), m.to_json(&result));
            out
        }
        Cmd::Map { name, n, expr } => {
            let m = morphisms::by_name(name, *n)?;
            let x = parse_element(m.source(), expr)?;
            let img = m.apply(&x)?;
            let mut out = Output::new("map", Some(m.source().name()), *n);
            out.text.push(img.to_string());
            let gens: Vec<Value> = m.images().into_iter().map(|(g, e)| json!({"generator": g.to_string(), "image": e.to_string()})).collect();
            out.extra.insert("morphism".into(), json!(m.name()));
            out.extra.insert("target".into(), json!(m.target().name()));
            out.extra.insert("images".into(), Value::Array(gens));
            out.extra.insert("result".into(), json!(img.to_string()));
            out
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            out.print(cli.format);
            if out.report.all_pass() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
