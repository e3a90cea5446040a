use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fgring_core::fol::{
    defined_set, emit_jac, emit_kronecker, emit_morphism_formula, eval, kronecker_slots, FiniteRingTable, Formula,
    Kronecker, Term,
};
use fgring_core::groebner::{Domain, IdealPresentation};
use fgring_core::spectrum::{self, RingPresentation};
use fgring_core::witt::{WittRing, WittVector};
use fgring_core::Error;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::cache::WittCache;
use crate::config::Config;
use crate::parse::{parse_polynomial, parse_polynomial_list, parse_presentation, print_presentation, ParseError};
use crate::report;

#[derive(Debug, Parser)]
#[command(name = "fgring", version, about = "Analyse finitely generated commutative rings Z[x1..xn]/(f1..fm)")]
pub struct Cli {
    /// TOML file with resource caps and search bounds.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true)]
    pub max_steps: Option<usize>,
    #[arg(long, global = true)]
    pub max_basis: Option<usize>,
    #[arg(long, global = true)]
    pub max_branches: Option<usize>,
    #[arg(long, global = true)]
    pub finite_ring_cap: Option<usize>,
    /// Directory for cached Witt tables.
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct RingInput {
    /// A presentation such as `ring Z[x]/(x^2 - x)`.
    pub ring: Option<String>,
    /// File with one presentation per line, analysed in parallel.
    #[arg(long, conflicts_with = "ring")]
    pub batch: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum WittCommandOp {
    Add,
    Mul,
    Neg,
    Ghost,
    WMap,
    FromGhost,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide bi-interpretability with Z, with certificates.
    Classify(RingInput),
    /// Minimal primes; with --candidate, check a proposed list instead.
    Minprimes {
        #[command(flatten)]
        input: RingInput,
        /// A proposed prime such as `(x, 2)`; repeat for each prime.
        #[arg(long)]
        candidate: Vec<String>,
    },
    /// Generators of the nilradical and the annihilator exponent.
    Nilradical(RingInput),
    /// The graph of minimal primes of infinite index.
    Graph(RingInput),
    /// Whether the ring is finite.
    CheckFinite(RingInput),
    /// The Witt polynomials S_j, M_j, N_j for the divisors of d.
    WittTable {
        #[arg(long)]
        d: u64,
    },
    /// Arithmetic in W_d(A).
    WittEval {
        #[arg(long)]
        d: u64,
        /// The coefficient ring A.
        #[arg(long)]
        ring: String,
        #[arg(long, value_enum)]
        op: WittCommandOp,
        /// Components indexed by the divisors of d, comma-separated.
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: Option<String>,
    },
    /// Print a formula as an s-expression.
    Emit {
        /// gamma, jac, pi, mu, Pi, pi_circ, jac-nil or morphism.
        #[arg(long)]
        formula: String,
        #[arg(long, default_value_t = 0)]
        n: usize,
        /// The presentation, for `morphism`.
        #[arg(long)]
        ring: Option<String>,
    },
    /// Evaluate a formula over a finite ring.
    EvalFormula {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        formula: String,
        /// `var=polynomial`; repeat for each parameter.
        #[arg(long)]
        assign: Vec<String>,
        /// Variables whose satisfying tuples are listed, comma-separated.
        #[arg(long)]
        enumerate: Option<String>,
    },
}

/// What a command produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Failure {
    code: i32,
    body: Value,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure { code: report::exit_code(&e), body: report::error(&e), message: e.to_string() }
    }
}

fn syntax(what: &str, e: &ParseError) -> Failure {
    let message = format!("{what}: {e}");
    let body = json!({"error": {
        "kind": "SYNTAX",
        "message": message,
        "line": e.line,
        "column": e.column,
        "offset": e.offset,
    }});
    Failure { code: 1, body, message }
}

fn usage(message: impl Into<String>) -> Failure {
    let message = message.into();
    Failure { code: 1, body: json!({"error": {"kind": "USAGE", "message": message}}), message }
}

type Answer = Result<Value, Failure>;

struct Session {
    config: Config,
}

impl Session {
    fn ring(&self, text: &str) -> Result<RingPresentation, Failure> {
        let r = parse_presentation(text).map_err(|e| syntax("presentation", &e))?;
        Ok(r.with_limits(self.config.limits()))
    }

    fn classify(&self, text: &str) -> Answer {
        let r = self.ring(text)?;
        match spectrum::classify(&r, self.config.decomposition_limits()) {
            Ok(rep) => Ok(report::classification(&r, &rep)),
            Err(e @ Error::DecompositionIncomplete(_)) => {
                let mut body = report::error(&e);
                body["input"] = json!(print_presentation(&r));
                body["verdict"] = json!(spectrum::Verdict::UndecidedDecompositionIncomplete.as_str());
                Err(Failure { code: 2, body, message: e.to_string() })
            }
            Err(e) => Err(e.into()),
        }
    }

    fn minprimes(&self, text: &str, candidates: &[String]) -> Answer {
        let r = self.ring(text)?;
        if !candidates.is_empty() {
            let mut ideals = Vec::new();
            for c in candidates {
                let gens = parse_polynomial_list(c, r.names()).map_err(|e| syntax("candidate", &e))?;
                ideals.push(IdealPresentation::new(r.ctx(), gens, Domain::Integers)?.with_limits(r.limits()));
            }
            let rep = spectrum::verify_candidates(&r, &ideals, self.config.decomposition_limits())?;
            return Ok(json!({"input": print_presentation(&r), "candidates": report::candidates(&rep)}));
        }
        if r.is_zero_ring()? {
            return Ok(json!({"input": print_presentation(&r), "minimal_primes": []}));
        }
        let dec = spectrum::decompose(&r, self.config.decomposition_limits())?;
        Ok(json!({
            "input": print_presentation(&r),
            "minimal_primes": dec.primes.iter().map(|p| report::prime(&r, p)).collect::<Vec<_>>(),
            "assumptions": report::ASSUMPTIONS,
        }))
    }

    fn nilradical(&self, text: &str) -> Answer {
        let r = self.ring(text)?;
        let n = if r.is_zero_ring()? {
            IdealPresentation::unit(r.ctx(), Domain::Integers)
        } else {
            spectrum::decompose(&r, self.config.decomposition_limits())?.nilradical
        };
        let d = spectrum::nil_annihilator_exponent_of(&r, &n)?;
        Ok(json!({
            "input": print_presentation(&r),
            "nilradical": report::ideal(&r, &n),
            "reduced": n.generators().iter().all(|g| r.is_zero(g).unwrap_or(false)),
            "annihilator_exponent": report::integer(&d),
        }))
    }

    fn graph(&self, text: &str) -> Answer {
        let r = self.ring(text)?;
        let g = if r.is_zero_ring()? {
            spectrum::PrimeGraph { vertices: Vec::new(), edges: Vec::new(), components: Vec::new() }
        } else {
            spectrum::prime_graph_of(&spectrum::decompose(&r, self.config.decomposition_limits())?.primes)?
        };
        let mut body = report::graph(&r, &g);
        body["input"] = json!(print_presentation(&r));
        Ok(body)
    }

    fn check_finite(&self, text: &str) -> Answer {
        let r = self.ring(text)?;
        let t = spectrum::finite_index(r.relations())?;
        Ok(report::index_test(&r, &t))
    }

    fn witt_cache(&self) -> WittCache {
        let dir = self.config.witt.cache_dir.clone().unwrap_or_else(|| std::env::temp_dir().join("fgring-witt"));
        WittCache::new(dir)
    }

    fn witt_table(&self, d: u64) -> Answer {
        if d == 0 {
            return Err(usage("--d must be at least 1"));
        }
        let (t, _) = self.witt_cache().get(d)?;
        Ok(report::witt_table(&t))
    }

    fn witt_eval(&self, d: u64, ring: &str, op: WittCommandOp, a: &str, b: Option<&str>) -> Answer {
        if d == 0 {
            return Err(usage("--d must be at least 1"));
        }
        let r = self.ring(ring)?;
        let (t, _) = self.witt_cache().get(d)?;
        let w = WittRing::new(t, r.clone());
        let comps = |s: &str| -> Result<Vec<_>, Failure> {
            parse_polynomial_list(&format!("({s})"), r.names()).map_err(|e| usage(format!("components `{s}`: {e}")))
        };
        let vector = |s: &str| -> Result<WittVector, Failure> { Ok(w.vector(comps(s)?)?) };
        let result = match op {
            WittCommandOp::Ghost | WittCommandOp::WMap => {
                let v = vector(a)?;
                let value = if op == WittCommandOp::Ghost {
                    let g = w.vector(w.ghost(&v)?)?;
                    report::witt_vector(&r, w.table(), &g)
                } else {
                    json!(r.format(&w.w_map(&v)?))
                };
                return Ok(
                    json!({"d": d, "ring": print_presentation(&r), "op": op.to_possible_value().map(|v| v.get_name().to_string()), "result": value}),
                );
            }
            WittCommandOp::FromGhost => w.from_ghost(&comps(a)?)?,
            WittCommandOp::Neg => w.neg(&vector(a)?)?,
            WittCommandOp::Add | WittCommandOp::Mul => {
                let b = b.ok_or_else(|| usage("--b is required for add and mul"))?;
                let (x, y) = (vector(a)?, vector(b)?);
                if op == WittCommandOp::Add {
                    w.add(&x, &y)?
                } else {
                    w.mul(&x, &y)?
                }
            }
        };
        Ok(json!({
            "d": d,
            "ring": print_presentation(&r),
            "op": op.to_possible_value().map(|v| v.get_name().to_string()),
            "result": report::witt_vector(&r, w.table(), &result),
        }))
    }

    fn emit(&self, name: &str, n: usize, ring: Option<&str>) -> Answer {
        if name == "morphism" {
            let text = ring.ok_or_else(|| usage("--ring is required for the morphism formula"))?;
            let r = self.ring(text)?;
            let f = emit_morphism_formula(&r);
            return Ok(report::formula(name, None, r.names(), &f));
        }
        if name == "jac-nil" {
            let f = emit_jac(&Formula::eq(Term::var("w"), Term::int(0)), "w", "x")?;
            return Ok(report::formula(name, None, &["x".to_string()], &f));
        }
        let which = Kronecker::from_name(name).ok_or_else(|| usage(format!("unknown formula `{name}`")))?;
        Ok(report::formula(name, Some(n), &kronecker_slots(n, which), &emit_kronecker(n, which)))
    }

    fn eval_formula(&self, ring: &str, formula: &str, assign: &[String], enumerate: Option<&str>) -> Answer {
        let r = self.ring(ring)?;
        let phi = Formula::parse(formula).map_err(|e| match e {
            Error::Syntax { offset, message } => syntax("formula", &crate::parse::locate(formula, offset, message)),
            other => other.into(),
        })?;
        let table = FiniteRingTable::enumerate(&r, self.config.fol.finite_ring_cap)?;
        let mut fixed = BTreeMap::new();
        for a in assign {
            let (var, value) = a.split_once('=').ok_or_else(|| usage(format!("assignment `{a}` is not var=value")))?;
            let p = parse_polynomial(value.trim(), r.names()).map_err(|e| usage(format!("assignment `{a}`: {e}")))?;
            let idx =
                table.index_of(&r.normal_form(&p)?).ok_or_else(|| usage(format!("`{value}` is not in the ring")))?;
            fixed.insert(var.trim().to_string(), idx);
        }
        let base = json!({"ring": print_presentation(&r), "formula": phi.to_sexpr(), "elements": table.len()});
        let mut body = base;
        match enumerate {
            None => {
                body["value"] = json!(eval(&phi, &table, &fixed)?);
            }
            Some(vars) => {
                let vars: Vec<String> =
                    vars.split(',').map(|v| v.trim().to_string()).filter(|v| !v.is_empty()).collect();
                let set = defined_set(&phi, &table, &vars, &fixed)?;
                body["variables"] = json!(vars);
                body["defined_set"] = json!(set
                    .iter()
                    .map(|t| t.iter().map(|&i| table.format(i)).collect::<Vec<_>>())
                    .collect::<Vec<_>>());
            }
        }
        Ok(body)
    }
}

fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn finish(answer: Answer) -> Outcome {
    match answer {
        Ok(v) => Outcome { code: 0, stdout: render(&v), stderr: String::new() },
        Err(f) => Outcome { code: f.code, stdout: render(&f.body), stderr: format!("fgring: {}\n", f.message) },
    }
}

fn with_rings(input: &RingInput, f: impl Fn(&str) -> Answer + Sync) -> Outcome {
    match (&input.ring, &input.batch) {
        (Some(text), None) => finish(f(text)),
        (None, Some(path)) => {
            let text = match std::fs::read_to_string(path) {
                Ok(t) => t,
                Err(e) => return finish(Err(usage(format!("{}: {e}", path.display())))),
            };
            let lines: Vec<&str> =
                text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')).collect();
            let results: Vec<Answer> = lines.par_iter().map(|l| f(l)).collect();
            let mut code = 0;
            let mut stderr = String::new();
            let mut items = Vec::with_capacity(results.len());
            for (line, res) in lines.iter().zip(results) {
                match res {
                    Ok(v) => items.push(v),
                    Err(fail) => {
                        code = code.max(fail.code);
                        stderr.push_str(&format!("fgring: {line}: {}\n", fail.message));
                        items.push(fail.body);
                    }
                }
            }
            Outcome { code, stdout: render(&Value::Array(items)), stderr }
        }
        _ => finish(Err(usage("give a presentation or --batch FILE"))),
    }
}

fn config_for(cli: &Cli) -> Result<Config, String> {
    let mut config = match &cli.config {
        Some(path) => Config::load(path)?,
        None => Config::default(),
    };
    if let Some(v) = cli.max_steps {
        config.groebner.max_steps = v;
    }
    if let Some(v) = cli.max_basis {
        config.groebner.max_basis = v;
    }
    if let Some(v) = cli.max_branches {
        config.decomposition.max_branches = v;
    }
    if let Some(v) = cli.finite_ring_cap {
        config.fol.finite_ring_cap = v;
    }
    if let Some(dir) = &cli.cache_dir {
        config.witt.cache_dir = Some(dir.clone());
    }
    Ok(config)
}

/// Parses the arguments (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let config = match config_for(&cli) {
        Ok(c) => c,
        Err(msg) => return finish(Err(usage(msg))),
    };
    let s = Session { config };
    match &cli.command {
        Command::Classify(input) => with_rings(input, |t| s.classify(t)),
        Command::Minprimes { input, candidate } => with_rings(input, |t| s.minprimes(t, candidate)),
        Command::Nilradical(input) => with_rings(input, |t| s.nilradical(t)),
        Command::Graph(input) => with_rings(input, |t| s.graph(t)),
        Command::CheckFinite(input) => with_rings(input, |t| s.check_finite(t)),
        Command::WittTable { d } => finish(s.witt_table(*d)),
        Command::WittEval { d, ring, op, a, b } => finish(s.witt_eval(*d, ring, *op, a, b.as_deref())),
        Command::Emit { formula, n, ring } => finish(s.emit(formula, *n, ring.as_deref())),
        Command::EvalFormula { ring, formula, assign, enumerate } => {
            finish(s.eval_formula(ring, formula, assign, enumerate.as_deref()))
        }
    }
}
