//! The `torica` command line: JSON in, JSON out.
//!
//! Exit codes: 0 on success, 1 on domain failures (including failed checks
//! and inconclusive certificates), 2 on usage errors and malformed input.

pub mod error;
pub mod input;
pub mod verify;
pub mod workspace;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};
use torica_core::cohomology::{check_danilov_hypothesis, h_dim_product, LineBundleOnP1Product};
use torica_core::divisor::{
    canonical_class, canonical_divisor, class_group, enumerate_mcm_rank_one_candidates, half_canonical,
    module_generators, multiplicity, trace_surjectivity_witness, ToricVariety, TorusDivisor,
};
use torica_core::polyring::{
    groebner_basis, ideal_sum, is_prime, is_regular_sequence, quotient_dimension, saturate, standard_monomials, Ideal,
    IdealJson, Polynomial, QuotientDimension, DEFAULT_CHARACTERISTIC, DEFAULT_DEGREE_BOUND,
};
use torica_core::toric::toric_ideal;

pub use error::{CliError, EXIT_DOMAIN, EXIT_USAGE};
use workspace::{workspace_path, Workspace};

#[derive(Debug, Parser)]
#[command(name = "torica", version, about = "Exact computations on affine toric varieties")]
pub struct Cli {
    /// Prime characteristic of the coefficient field (odd, below 2^31).
    #[arg(long, global = true, env = "TORICA_FIELD")]
    pub field: Option<u64>,
    /// Degree bound for regular-sequence certificates.
    #[arg(long, global = true, default_value_t = DEFAULT_DEGREE_BOUND)]
    pub degree_bound: u32,
    /// Where `paper verify` writes its JSON report.
    #[arg(long, global = true)]
    pub report: Option<PathBuf>,
    /// Print compact machine-readable JSON (errors included) on stdout.
    #[arg(long, global = true)]
    pub json: bool,
    /// Workspace document used by `ws` commands and `ws:NAME` references.
    #[arg(long, global = true, env = "TORICA_WORKSPACE")]
    pub workspace: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Rational polyhedral cones.
    #[command(subcommand)]
    Cone(ConeCmd),
    /// Polynomial ideals and toric ideals.
    #[command(subcommand)]
    Ideal(IdealCmd),
    /// Divisors, class groups and divisorial modules.
    #[command(subcommand)]
    Div(DivCmd),
    /// Line bundle cohomology on products of projective lines.
    #[command(subcommand)]
    Cohomology(CohomologyCmd),
    /// Reproduce the worked examples.
    #[command(subcommand)]
    Paper(PaperCmd),
    /// Named objects in the workspace document.
    #[command(subcommand)]
    Ws(WsCmd),
}

#[derive(Debug, Subcommand)]
pub enum ConeCmd {
    /// The dual cone.
    Dual { cone: String },
    /// Rays with their primitive generators.
    Rays { cone: String },
    /// Hilbert basis of the lattice points of a pointed cone.
    HilbertBasis { cone: String },
    /// Product cone.
    Product { first: String, second: String },
}

#[derive(Debug, Args)]
pub struct Cuts {
    /// Extra polynomials (repeatable).
    #[arg(long = "cut", allow_hyphen_values = true)]
    pub cuts: Vec<String>,
    /// Read `--cut`/`--seq` polynomials in the character variables of a built-in ring.
    #[arg(long)]
    pub characters: bool,
}

#[derive(Debug, Subcommand)]
pub enum IdealCmd {
    /// Toric ideal of a monomial map (`@S` for the built-in one).
    Toric { map: String },
    /// Reduced Groebner basis.
    Groebner {
        ideal: String,
        /// grevlex, lex or elim:K.
        #[arg(long)]
        order: Option<String>,
    },
    /// Saturation `(I : f^∞)`.
    Saturate {
        ideal: String,
        #[arg(long, allow_hyphen_values = true)]
        by: String,
    },
    /// Vector-space dimension of the quotient, with its standard monomials.
    QuotientDim {
        ideal: String,
        #[command(flatten)]
        cuts: Cuts,
    },
    /// Regular-sequence test by Hilbert series.
    RegularSeq {
        ideal: String,
        /// Sequence elements in order (repeatable).
        #[arg(long = "seq", required = true, allow_hyphen_values = true)]
        seq: Vec<String>,
        #[arg(long)]
        characters: bool,
    },
}

#[derive(Debug, Args)]
pub struct DivisorArgs {
    /// Divisor JSON `{"variety": ..., "coeffs": [...]}`.
    pub divisor: Option<String>,
    #[arg(long)]
    pub variety: Option<String>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub coeffs: Option<Vec<i64>>,
}

#[derive(Debug, Subcommand)]
pub enum DivCmd {
    /// Free rank and torsion of the class group.
    ClassGroup { variety: String },
    /// Canonical divisor `-Σ D_ρ` and its class.
    Canonical { variety: String },
    /// Minimal monomial generators of `O(D)`.
    ModuleGens(DivisorArgs),
    /// The class `c` with `2c = [ω]`.
    HalfCanonical { variety: String },
    /// Generator count of the self-dual module on `@S^k*A^s`.
    Multiplicity {
        variety: Option<String>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        s: Option<usize>,
    },
    /// Monomial witness for `O(D_1) O(D_2) = χ^m ω`.
    TraceWitness {
        #[arg(default_value = "@S")]
        variety: String,
        /// Defaults to a representative of the self-dual class.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        d1: Option<Vec<i64>>,
        /// Defaults to `d1`.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        d2: Option<Vec<i64>>,
        /// Defaults to the canonical divisor.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        omega: Option<Vec<i64>>,
    },
    /// Maximal Cohen–Macaulay rank-one modules `O(kD_0)` on `@S` with few generators.
    McmScan {
        #[arg(default_value = "@S")]
        variety: String,
        #[arg(long, default_value_t = 4)]
        gen_bound: usize,
        #[arg(long, default_value_t = 10)]
        window: i64,
    },
}

#[derive(Debug, Subcommand)]
pub enum CohomologyCmd {
    /// `dim H^d` of `O(a_1) ⊠ ... ⊠ O(a_n)`.
    H {
        #[arg(long)]
        degree: u32,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        bundle: Vec<i64>,
    },
    /// Vanishing of `H^1`, `H^2` of all powers up to `i_max` (one `--bundle` per factor).
    Danilov {
        #[arg(long = "bundle", required = true, allow_hyphen_values = true)]
        bundles: Vec<String>,
        #[arg(long, default_value_t = 50)]
        i_max: i64,
    },
}

#[derive(Debug, Subcommand)]
pub enum PaperCmd {
    /// Rerun all checks and report expected against computed values.
    Verify,
}

#[derive(Debug, Subcommand)]
pub enum WsCmd {
    /// Store a value (file, inline JSON, `-`, or built-in name) under a name.
    Put { name: String, source: String },
    /// Print a stored value.
    Get { name: String },
    /// List names and kinds.
    List,
    /// Record the default field characteristic.
    SetField { p: u64 },
}

/// Command result: a JSON value, optional human rendering, exit code.
#[derive(Debug, Clone, PartialEq)]
pub struct Output {
    pub value: Value,
    pub text: Option<String>,
    pub exit: i32,
}

impl Output {
    fn ok<T: Serialize>(value: T) -> Result<Output, CliError> {
        Ok(Output { value: serde_json::to_value(value)?, text: None, exit: 0 })
    }

    /// What goes to stdout: compact JSON with `--json`, otherwise the
    /// human rendering or pretty JSON.
    pub fn render(&self, json: bool) -> String {
        match (&self.text, json) {
            (Some(text), false) => text.clone(),
            _ if json => format!("{}\n", self.value),
            _ => format!("{}\n", serde_json::to_string_pretty(&self.value).expect("values serialize")),
        }
    }
}

/// Settings shared by all commands.
#[derive(Debug, Clone)]
pub struct Context {
    pub field: u64,
    pub degree_bound: u32,
    pub workspace: PathBuf,
    pub report: Option<PathBuf>,
}

/// Rejects 2, composites and values of 2^31 or more.
pub fn check_field(p: u64) -> Result<u64, CliError> {
    if p == 2 || !is_prime(p) || p >= 1 << 31 {
        return Err(CliError::BadField(p));
    }
    Ok(p)
}

impl Context {
    /// The field comes from `--field` / `TORICA_FIELD`, then the workspace,
    /// then the default 101.
    pub fn from_cli(cli: &Cli) -> Result<Context, CliError> {
        let workspace = workspace_path(cli.workspace.as_deref());
        let field = match cli.field {
            Some(p) => p,
            None if workspace.exists() => Workspace::load(&workspace)?.field.unwrap_or(DEFAULT_CHARACTERISTIC),
            None => DEFAULT_CHARACTERISTIC,
        };
        Ok(Context {
            field: check_field(field)?,
            degree_bound: cli.degree_bound,
            workspace,
            report: cli.report.clone(),
        })
    }
}

pub fn run(cli: &Cli) -> Result<Output, CliError> {
    let ctx = Context::from_cli(cli)?;
    match &cli.command {
        Command::Cone(cmd) => run_cone(&ctx, cmd),
        Command::Ideal(cmd) => run_ideal(&ctx, cmd),
        Command::Div(cmd) => run_div(&ctx, cmd),
        Command::Cohomology(cmd) => run_cohomology(cmd),
        Command::Paper(PaperCmd::Verify) => run_verify(&ctx),
        Command::Ws(cmd) => run_ws(&ctx, cmd),
    }
}

fn run_cone(ctx: &Context, cmd: &ConeCmd) -> Result<Output, CliError> {
    let ws = &ctx.workspace;
    match cmd {
        ConeCmd::Dual { cone } => Output::ok(input::cone(cone, ws)?.dual_cone().to_json()),
        ConeCmd::Rays { cone } => Output::ok(input::cone(cone, ws)?.rays()?),
        ConeCmd::HilbertBasis { cone } => Output::ok(input::cone(cone, ws)?.hilbert_basis()?),
        ConeCmd::Product { first, second } => {
            Output::ok(input::cone(first, ws)?.product(&input::cone(second, ws)?).to_json())
        }
    }
}

fn ideal_json(i: &Ideal) -> IdealJson {
    IdealJson::from_ideal(&groebner_basis(i))
}

fn run_ideal(ctx: &Context, cmd: &IdealCmd) -> Result<Output, CliError> {
    let ws = &ctx.workspace;
    match cmd {
        IdealCmd::Toric { map } => {
            let (map, characters) = input::monomial_map(map, ws)?;
            let mut pres = toric_ideal(&map, ctx.field)?;
            if let Some(c) = characters {
                pres.characters = c;
            }
            Output::ok(pres.to_json())
        }
        IdealCmd::Groebner { ideal, order } => {
            let (i, _) = input::ideal(ideal, ctx.field, ws)?;
            let i = match order {
                Some(o) => i.with_order(input::monomial_order(o)?),
                None => i,
            };
            Output::ok(ideal_json(&i))
        }
        IdealCmd::Saturate { ideal, by } => {
            let (i, _) = input::ideal(ideal, ctx.field, ws)?;
            let f = Polynomial::parse(i.ring(), by)?;
            Output::ok(ideal_json(&saturate(&i, &f)))
        }
        IdealCmd::QuotientDim { ideal, cuts } => {
            let (i, pres) = input::ideal(ideal, ctx.field, ws)?;
            let extra = input::polynomials(i.ring(), pres.as_ref(), &cuts.cuts, cuts.characters)?;
            let q = ideal_sum(&i, &Ideal::new(i.ring(), extra, i.order())?);
            let (dimension, standard) = match quotient_dimension(&q) {
                QuotientDimension::Finite(n) => {
                    let mons = standard_monomials(&q).unwrap_or_default();
                    let names: Vec<String> =
                        mons.into_iter().map(|m| Polynomial::monomial(q.ring(), m).to_string()).collect();
                    (json!(n), json!(names))
                }
                QuotientDimension::Infinite => (json!("infinite"), Value::Null),
            };
            Output::ok(json!({ "dimension": dimension, "standard_monomials": standard, "ideal": ideal_json(&q) }))
        }
        IdealCmd::RegularSeq { ideal, seq, characters } => {
            let (i, pres) = input::ideal(ideal, ctx.field, ws)?;
            let elements = input::polynomials(i.ring(), pres.as_ref(), seq, *characters)?;
            Output::ok(is_regular_sequence(&elements, &i, ctx.degree_bound)?)
        }
    }
}

fn coeffs_or(
    v: &ToricVariety,
    given: &Option<Vec<i64>>,
    default: impl FnOnce() -> Result<TorusDivisor, CliError>,
) -> Result<TorusDivisor, CliError> {
    match given {
        Some(c) => Ok(v.divisor(c.clone())?),
        None => default(),
    }
}

fn run_div(ctx: &Context, cmd: &DivCmd) -> Result<Output, CliError> {
    let ws = &ctx.workspace;
    match cmd {
        DivCmd::ClassGroup { variety } => Output::ok(class_group(&input::variety(variety, ws)?).summary()),
        DivCmd::Canonical { variety } => {
            let v = input::variety(variety, ws)?;
            Output::ok(json!({ "divisor": canonical_divisor(&v), "class": canonical_class(&v) }))
        }
        DivCmd::ModuleGens(args) => {
            let (v, d) = match (&args.divisor, &args.variety, &args.coeffs) {
                (Some(src), None, None) => input::divisor(src, ws)?,
                (None, Some(var), Some(c)) => input::divisor_on(var, c.clone(), ws)?,
                _ => return Err(CliError::Usage("give a divisor JSON or both --variety and --coeffs".into())),
            };
            let m = module_generators(&v, &d)?;
            let class = class_group(&v).project(&d)?;
            Output::ok(json!({
                "divisor": d,
                "class": class,
                "generators": m.generators,
                "monomials": m.monomials(&v),
            }))
        }
        DivCmd::HalfCanonical { variety } => {
            let v = input::variety(variety, ws)?;
            let h = half_canonical(&v)?;
            let rep = class_group(&v).representative(&h)?;
            Output::ok(json!({ "class": h, "representative": rep }))
        }
        DivCmd::Multiplicity { variety, k, s } => {
            let v = match (variety, k, s) {
                (Some(src), None, None) => input::variety(src, ws)?,
                (None, k, s) => ToricVariety::power_product(k.unwrap_or(0), s.unwrap_or(0)),
                _ => return Err(CliError::Usage("give a variety or --k/--s, not both".into())),
            };
            Output::ok(json!({ "variety": v.id(), "multiplicity": multiplicity(&v)? }))
        }
        DivCmd::TraceWitness { variety, d1, d2, omega } => {
            let v = input::variety(variety, ws)?;
            let d1 = coeffs_or(&v, d1, || {
                let cg = class_group(&v);
                Ok(cg.representative(&half_canonical(&v)?)?)
            })?;
            let d2 = coeffs_or(&v, d2, || Ok(d1.clone()))?;
            let omega = coeffs_or(&v, omega, || Ok(canonical_divisor(&v)))?;
            let t = trace_surjectivity_witness(&v, &d1, &d2, &omega)?;
            let witness_monomial = t.witness.as_ref().map(|m| v.monomial(m));
            Output::ok(json!({
                "d1": d1,
                "d2": d2,
                "omega": omega,
                "surjective": t.surjective,
                "witness": t.witness,
                "witness_monomial": witness_monomial,
                "product_generators": t.product_generators,
                "omega_generators": t.omega_generators,
            }))
        }
        DivCmd::McmScan { variety, gen_bound, window } => {
            let v = input::variety(variety, ws)?;
            Output::ok(enumerate_mcm_rank_one_candidates(&v, *gen_bound, *window, ctx.field)?)
        }
    }
}

fn run_cohomology(cmd: &CohomologyCmd) -> Result<Output, CliError> {
    match cmd {
        CohomologyCmd::H { degree, bundle } => {
            let l = LineBundleOnP1Product::new(bundle.clone());
            Output::ok(json!({ "degree": degree, "bundle": bundle, "dimension": h_dim_product(*degree, &l) }))
        }
        CohomologyCmd::Danilov { bundles, i_max } => {
            let factors = bundles
                .iter()
                .map(|b| {
                    b.split(',')
                        .filter(|t| !t.trim().is_empty())
                        .map(|t| t.trim().parse::<i64>().map_err(|e| CliError::Usage(format!("bad degree {t:?}: {e}"))))
                        .collect::<Result<Vec<_>, _>>()
                        .map(LineBundleOnP1Product::new)
                })
                .collect::<Result<Vec<_>, _>>()?;
            let report = check_danilov_hypothesis(&factors, *i_max);
            let exit = if report.holds { 0 } else { EXIT_DOMAIN };
            Ok(Output { value: serde_json::to_value(report)?, text: None, exit })
        }
    }
}

fn run_verify(ctx: &Context) -> Result<Output, CliError> {
    let report = verify::run_checks(ctx.field, ctx.degree_bound);
    let value = serde_json::to_value(&report)?;
    if let Some(path) = &ctx.report {
        let text = format!("{}\n", serde_json::to_string_pretty(&value)?);
        std::fs::write(path, text).map_err(|e| CliError::io(path, e))?;
    }
    let exit = if report.failed == 0 { 0 } else { EXIT_DOMAIN };
    Ok(Output { value, text: Some(report.render_text()), exit })
}

fn run_ws(ctx: &Context, cmd: &WsCmd) -> Result<Output, CliError> {
    let path = &ctx.workspace;
    let mut ws = Workspace::load(path)?;
    match cmd {
        WsCmd::Put { name, source } => {
            if name.is_empty() || name.contains(char::is_whitespace) {
                return Err(CliError::Usage(format!("invalid object name {name:?}")));
            }
            let value = input::read_value(source, path)?;
            let kind = ws.put(name, value);
            ws.save(path)?;
            Output::ok(json!({ "name": name, "kind": kind }))
        }
        WsCmd::Get { name } => Output::ok(ws.get(name)?.value.clone()),
        WsCmd::List => {
            let entries: Vec<Value> =
                ws.objects.iter().map(|(name, e)| json!({ "name": name, "kind": e.kind })).collect();
            let text: String = ws
                .objects
                .iter()
                .map(|(name, e)| format!("{name}\t{}\n", json!(e.kind).as_str().unwrap_or("")))
                .collect();
            Ok(Output { value: json!({ "field": ws.field, "objects": entries }), text: Some(text), exit: 0 })
        }
        WsCmd::SetField { p } => {
            ws.field = Some(check_field(*p)?);
            ws.save(path)?;
            Output::ok(json!({ "field": p }))
        }
    }
}
