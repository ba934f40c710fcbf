use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use periodrel_core::gfun::{check_period_equation, compute_radii, derive_g, GFunMatrix, GaussManinCoefficients, PeriodBlock};
use periodrel_core::ideal::{self, TrivialIdeal};
use periodrel_core::relations::case3::{build_case3_relation, sample_case3_input};
use periodrel_core::relations::{
    certify_nonarch, select_nontrivial_entry, synthesize_period_data, EndomorphismAction, SyntheticPeriodData,
    WitnessCase,
};
use periodrel_core::series::{eval_with_tail_bound, globally_bounded_scan, radius_lower_bound, EvalValue, GbVerdict};
use periodrel_core::symplectic::{complete_to_symplectic_basis, project_to_v, sample_symplectic, with_multiplier};
use periodrel_core::{MultiPoly, Place, QuadScalar, Rational, Ring, TruncatedSeries};
use serde_json::{json, Value};

use crate::json::{self, Json};
use crate::manifest::{sha256_hex, RunManifest};
use crate::report;

#[derive(Parser, Debug)]
#[command(name = "periodrel", version, about = "Exact period relations, trivial-relation ideals and G-function series")]
struct Cli {
    /// Human-readable text instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,
    /// Write the report to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Truncated power series.
    #[command(subcommand)]
    Series(SeriesCmd),
    /// Symplectic similitudes and isotropic frames.
    #[command(subcommand)]
    Symplectic(SymplecticCmd),
    /// The ideal of trivial relations.
    #[command(subcommand)]
    Ideal(IdealCmd),
    /// Period relations and their certificates.
    #[command(subcommand)]
    Relation(RelationCmd),
    /// G-function series and radii.
    #[command(subcommand)]
    Gfun(GfunCmd),
}

#[derive(Args, Debug)]
struct SeriesSource {
    /// Series JSON file {"order", "coeffs"}.
    #[arg(long, conflicts_with_all = ["coeffs", "builtin"])]
    series: Option<PathBuf>,
    /// Inline coefficients a_0,a_1,...
    #[arg(long, allow_hyphen_values = true, conflicts_with = "builtin")]
    coeffs: Option<String>,
    /// geometric, exp, central-binomial or hypergeometric.
    #[arg(long)]
    builtin: Option<String>,
    /// Truncation order. Inline coefficients are zero-padded up to it;
    /// builtins default to 30.
    #[arg(long)]
    order: Option<usize>,
    /// Assert integer coefficients (checked).
    #[arg(long)]
    integral: bool,
}

#[derive(Subcommand, Debug)]
enum SeriesCmd {
    /// Compositional inverse of f with f(0) = 0, f'(0) ≠ 0.
    Invert {
        #[command(flatten)]
        src: SeriesSource,
    },
    /// Radius lower bounds at the given places.
    Radius {
        #[command(flatten)]
        src: SeriesSource,
        #[arg(long = "place", default_values_t = vec!["arch".to_string()])]
        places: Vec<String>,
    },
    /// Scan denominators for global boundedness.
    GbScan {
        #[command(flatten)]
        src: SeriesSource,
        #[arg(long, default_value_t = 10)]
        prime_bound: u64,
    },
    /// Partial sum at x with a tail bound.
    Eval {
        #[command(flatten)]
        src: SeriesSource,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, default_value = "arch")]
        place: String,
        #[arg(long)]
        integral_tail: bool,
    },
}

#[derive(Subcommand, Debug)]
enum SymplecticCmd {
    /// Random similitude with multiplier mu, its projected frame and a completion.
    Sample {
        #[arg(long)]
        g: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        mu: String,
        #[arg(long, default_value_t = 6)]
        word_length: usize,
    },
}

#[derive(Subcommand, Debug)]
enum IdealCmd {
    /// The generators f_ij, i < j.
    Gens {
        #[arg(long)]
        g: usize,
    },
    /// Jacobian-rank radicality certificate.
    Radical {
        #[arg(long)]
        g: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Membership of a polynomial.
    Member {
        #[arg(long)]
        poly: PathBuf,
        #[arg(long)]
        g: usize,
        #[arg(long, default_value_t = 20)]
        budget: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args, Debug)]
struct ActionSource {
    /// EndomorphismAction JSON {"g", "A", "B", "D"}.
    #[arg(long, conflicts_with = "random")]
    act: Option<PathBuf>,
    /// Draw a random non-scalar action for --g.
    #[arg(long, requires = "g")]
    random: bool,
    #[arg(long)]
    g: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum RelationCmd {
    /// Non-archimedean relation with witness and vanishing evidence.
    BuildNonarch {
        #[command(flatten)]
        act: ActionSource,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Seeds for the synthetic period data the relation is checked on.
        #[arg(long, default_value = "0,1,2")]
        data_seeds: String,
    },
    /// Synthetic period data for an action.
    Synthesize {
        #[command(flatten)]
        act: ActionSource,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Evaluate a relation on period data.
    Verify {
        /// Polynomial JSON, or a certificate with a "polynomial" field.
        #[arg(long)]
        rel: PathBuf,
        #[arg(long)]
        data: PathBuf,
    },
    /// Real-quadratic relation for even g > 2.
    Case3 {
        #[arg(long)]
        g: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Squarefree d of the field ℚ(√d).
        #[arg(long, default_value_t = 5, allow_hyphen_values = true)]
        d: i64,
        #[arg(long, default_value_t = 10)]
        budget: usize,
    },
}

#[derive(Subcommand, Debug)]
enum GfunCmd {
    /// G_ij = Σ_k Σ_ℓ a_ikℓ d^k F_ℓj.
    Derive {
        #[arg(long = "F")]
        f: PathBuf,
        #[arg(long = "a")]
        a: PathBuf,
    },
    /// Radii r_v at the given places.
    Radii {
        #[arg(long = "F")]
        f: PathBuf,
        #[arg(long = "a")]
        a: PathBuf,
        /// Comma-separated nonzero x-values of excluded points.
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        excluded: String,
        #[arg(long = "place", default_values_t = vec!["arch".to_string()])]
        places: Vec<String>,
    },
    /// Compare F(x), G(x) with period data.
    Check {
        #[arg(long = "F")]
        f: PathBuf,
        /// G series; derived from --a when absent.
        #[arg(long = "G", conflicts_with = "a")]
        g: Option<PathBuf>,
        #[arg(long = "a")]
        a: Option<PathBuf>,
        #[arg(long)]
        data: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, default_value = "arch")]
        place: String,
        #[arg(long, default_value_t = 0.0)]
        tolerance: f64,
    },
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug)]
struct Failure {
    kind: String,
    message: String,
}

impl From<periodrel_core::Error> for Failure {
    fn from(e: periodrel_core::Error) -> Self {
        let dbg = format!("{e:?}");
        let kind = dbg.split(|c: char| !c.is_alphanumeric()).next().unwrap_or("Error").to_string();
        Failure { kind, message: e.to_string() }
    }
}

impl From<json::FormatError> for Failure {
    fn from(e: json::FormatError) -> Self {
        match e {
            json::FormatError::Core(c) => c.into(),
            other => Failure { kind: "Format".into(), message: other.to_string() },
        }
    }
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure { kind: "Input".into(), message: message.into() }
}

type CmdResult = Result<Value, Failure>;

fn payload<'a>(v: &'a Value, key: &str) -> &'a Value {
    let r = match (v.get("manifest"), v.get("result")) {
        (Some(_), Some(r)) => r,
        _ => v,
    };
    r.get(key).unwrap_or(r)
}

/// Input files are digested into the manifest as they are read.
struct Ctx {
    manifest: RunManifest,
}

impl Ctx {
    fn read_json(&mut self, path: &PathBuf) -> Result<Value, Failure> {
        let bytes = std::fs::read(path).map_err(|e| input_error(format!("{}: {e}", path.display())))?;
        self.manifest.record_input(&path.display().to_string(), &bytes);
        serde_json::from_slice(&bytes).map_err(|e| input_error(format!("{}: {e}", path.display())))
    }

    /// Accepts the bare object or a report from an earlier run, in which
    /// case `result.<key>` is used.
    fn load<T: Json>(&mut self, path: &PathBuf, key: &str) -> Result<T, Failure> {
        let v = self.read_json(path)?;
        Ok(T::from_json(payload(&v, key), "$")?)
    }
}

pub fn dispatch<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: 2, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    let arguments: Vec<String> = argv.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    let mut ctx = Ctx { manifest: RunManifest::new(command_name(&cli.command), arguments) };
    ctx.manifest.seed = command_seed(&cli.command);
    let result = run(&cli.command, &mut ctx);
    let (code, body, stderr) = match result {
        Ok(v) => {
            ctx.manifest.outcome = "ok".into();
            ctx.manifest.result_digest = Some(sha256_hex(v.to_string().as_bytes()));
            (0, json!({ "manifest": ctx.manifest, "result": v }), String::new())
        }
        Err(f) => {
            ctx.manifest.outcome = format!("error: {}", f.message);
            let body = json!({ "manifest": ctx.manifest, "error": { "kind": f.kind, "message": f.message } });
            (1, body, format!("error: {}\n", f.message))
        }
    };
    let text = if cli.pretty {
        report::pretty(&body)
    } else {
        let mut s = serde_json::to_string_pretty(&body).expect("JSON values serialise");
        s.push('\n');
        s
    };
    match &cli.out {
        Some(path) => match std::fs::write(path, &text) {
            Ok(()) => Outcome { code, stdout: String::new(), stderr },
            Err(e) => Outcome { code: 1, stdout: String::new(), stderr: format!("error: {}: {e}\n", path.display()) },
        },
        None => Outcome { code, stdout: text, stderr },
    }
}

fn command_name(c: &Command) -> String {
    let sub = match c {
        Command::Series(s) => match s {
            SeriesCmd::Invert { .. } => "series invert",
            SeriesCmd::Radius { .. } => "series radius",
            SeriesCmd::GbScan { .. } => "series gb-scan",
            SeriesCmd::Eval { .. } => "series eval",
        },
        Command::Symplectic(SymplecticCmd::Sample { .. }) => "symplectic sample",
        Command::Ideal(i) => match i {
            IdealCmd::Gens { .. } => "ideal gens",
            IdealCmd::Radical { .. } => "ideal radical",
            IdealCmd::Member { .. } => "ideal member",
        },
        Command::Relation(r) => match r {
            RelationCmd::BuildNonarch { .. } => "relation build-nonarch",
            RelationCmd::Synthesize { .. } => "relation synthesize",
            RelationCmd::Verify { .. } => "relation verify",
            RelationCmd::Case3 { .. } => "relation case3",
        },
        Command::Gfun(g) => match g {
            GfunCmd::Derive { .. } => "gfun derive",
            GfunCmd::Radii { .. } => "gfun radii",
            GfunCmd::Check { .. } => "gfun check",
        },
    };
    sub.to_string()
}

fn command_seed(c: &Command) -> Option<u64> {
    match c {
        Command::Symplectic(SymplecticCmd::Sample { seed, .. })
        | Command::Ideal(IdealCmd::Radical { seed, .. })
        | Command::Ideal(IdealCmd::Member { seed, .. })
        | Command::Relation(RelationCmd::BuildNonarch { seed, .. })
        | Command::Relation(RelationCmd::Synthesize { seed, .. })
        | Command::Relation(RelationCmd::Case3 { seed, .. }) => Some(*seed),
        _ => None,
    }
}

fn run(c: &Command, ctx: &mut Ctx) -> CmdResult {
    match c {
        Command::Series(s) => series(s, ctx),
        Command::Symplectic(s) => symplectic(s),
        Command::Ideal(i) => ideal_cmd(i, ctx),
        Command::Relation(r) => relation(r, ctx),
        Command::Gfun(g) => gfun(g, ctx),
    }
}

fn parse_scalar(s: &str) -> Result<QuadScalar, Failure> {
    s.trim().parse::<Rational>().map(QuadScalar::rational).map_err(|e| input_error(e.to_string()))
}

fn parse_place(s: &str) -> Result<Place, Failure> {
    json::parse_place(s).map_err(input_error)
}

fn builtin_series(name: &str, order: usize) -> Result<TruncatedSeries<QuadScalar>, Failure> {
    let q = QuadScalar::rational;
    let step = |c: &mut Rational, n: usize, r: Rational| {
        if n > 0 {
            *c = c.clone() * &r;
        }
        q(c.clone())
    };
    let ratio = |a: i64, b: i64| Rational::new(a, b).expect("positive denominator");
    let mut c = Rational::from(1);
    Ok(match name {
        "geometric" => TruncatedSeries::geometric(order),
        "exp" => TruncatedSeries::from_fn(order, |n| step(&mut c, n, ratio(1, n.max(1) as i64))),
        "central-binomial" => TruncatedSeries::from_fn(order, |n| {
            let (a, b) = (2 * (2 * n as i64 - 1), n.max(1) as i64);
            step(&mut c, n, ratio(a * a, b * b))
        }),
        "hypergeometric" => TruncatedSeries::from_fn(order, |n| {
            let (a, b) = (2 * n as i64 - 1, 2 * n.max(1) as i64);
            step(&mut c, n, ratio(a * a, b * b))
        }),
        other => return Err(input_error(format!("unknown builtin series {other:?}"))),
    })
}

fn load_series(src: &SeriesSource, ctx: &mut Ctx) -> Result<TruncatedSeries<QuadScalar>, Failure> {
    let s = if let Some(path) = &src.series {
        let s = ctx.load::<TruncatedSeries<QuadScalar>>(path, "inverse")?;
        match src.order {
            Some(n) => s.truncate(n),
            None => s,
        }
    } else if let Some(list) = &src.coeffs {
        let c = json::parse_scalar_list(list).map_err(input_error)?;
        if c.is_empty() {
            return Err(input_error("empty coefficient list"));
        }
        let order = src.order.unwrap_or(c.len() - 1);
        TruncatedSeries::from_fn(order, |n| c.get(n).cloned().unwrap_or_else(QuadScalar::zero))
    } else if let Some(name) = &src.builtin {
        builtin_series(name, src.order.unwrap_or(30))?
    } else {
        return Err(input_error("one of --series, --coeffs, --builtin is required"));
    };
    Ok(if src.integral { s.assert_integral()? } else { s })
}

fn series(cmd: &SeriesCmd, ctx: &mut Ctx) -> CmdResult {
    match cmd {
        SeriesCmd::Invert { src } => {
            let f = load_series(src, ctx)?;
            let g = f.compositional_inverse()?;
            let x = TruncatedSeries::x(f.order());
            Ok(json!({
                "input": f.to_json(),
                "inverse": g.to_json(),
                "f_of_g_is_x": f.compose(&g)?.coeffs() == x.coeffs(),
                "g_of_f_is_x": g.compose(&f)?.coeffs() == x.coeffs(),
            }))
        }
        SeriesCmd::Radius { src, places } => {
            let f = load_series(src, ctx)?;
            let reports = places
                .iter()
                .map(|p| {
                    let r = radius_lower_bound(&f, &parse_place(p)?);
                    Ok(json!({
                        "place": r.place.to_json(),
                        "lower_bound": report::real(r.lower_bound),
                        "certified": r.certified,
                    }))
                })
                .collect::<Result<Vec<_>, Failure>>()?;
            Ok(json!({ "order": f.order(), "radii": reports }))
        }
        SeriesCmd::GbScan { src, prime_bound } => {
            let f = load_series(src, ctx)?;
            let r = globally_bounded_scan(&f, *prime_bound);
            Ok(json!({
                "order": f.order(),
                "prime_bound": prime_bound,
                "verdict": match r.verdict {
                    GbVerdict::Bounded => "bounded",
                    GbVerdict::UnboundedEvidence => "unbounded_evidence",
                    GbVerdict::Inconclusive => "inconclusive",
                },
                "positive_radius_everywhere": r.positive_radius_everywhere,
                "witness": r.witness.map(|(n, p)| json!({ "n": n, "p": p })),
                "bad_primes": r.bad_primes.iter().map(|b| json!({ "p": b.p, "first_index": b.first_index })).collect::<Vec<_>>(),
                "unfactored": r.unfactored,
            }))
        }
        SeriesCmd::Eval { src, x, place, integral_tail } => {
            let f = load_series(src, ctx)?;
            let (x, v) = (parse_scalar(x)?, parse_place(place)?);
            let r = eval_with_tail_bound(&f, &x, &v, *integral_tail)?;
            let value = match &r.value {
                EvalValue::Exact(s) => json!({ "exact": s.to_json() }),
                EvalValue::Float(z) => json!({ "re": report::real(z.re), "im": report::real(z.im) }),
            };
            Ok(json!({
                "order": f.order(),
                "x": x.to_json(),
                "place": v.to_json(),
                "value": value,
                "tail_bound": report::real(r.tail_bound),
                "heuristic": r.heuristic,
            }))
        }
    }
}

fn symplectic(cmd: &SymplecticCmd) -> CmdResult {
    let SymplecticCmd::Sample { g, seed, mu, word_length } = cmd;
    if *g == 0 {
        return Err(input_error("--g must be positive"));
    }
    let mu: Rational = mu.parse().map_err(|e: periodrel_core::Error| input_error(e.to_string()))?;
    let s = with_multiplier(&sample_symplectic(*g, *seed, *word_length), &mu)?;
    let frame = project_to_v(&s);
    let completion = complete_to_symplectic_basis(&frame)?;
    let on_v = TrivialIdeal::new(*g).vanishes_at(&frame.y(), &frame.z());
    Ok(json!({
        "g": g,
        "matrix": s.matrix().to_json(),
        "multiplier": s.multiplier().to_json(),
        "similitude_verified": s.verify(),
        "frame": { "y": frame.y().to_json(), "z": frame.z().to_json(), "on_v": on_v },
        "completion": completion.matrix().to_json(),
    }))
}

fn ideal_cmd(cmd: &IdealCmd, ctx: &mut Ctx) -> CmdResult {
    let check_g = |g: usize| if g == 0 { Err(input_error("--g must be positive")) } else { Ok(()) };
    match cmd {
        IdealCmd::Gens { g } => {
            check_g(*g)?;
            let ideal = TrivialIdeal::new(*g);
            let gens: Vec<Value> = ideal
                .generators()
                .iter()
                .map(|((i, j), p)| {
                    let p = p.map_coeffs(|c| QuadScalar::rational(c.clone()));
                    json!({ "i": i, "j": j, "text": report::poly_text(&p), "poly": p.to_json() })
                })
                .collect();
            Ok(json!({ "g": g, "m": ideal.len(), "generators": gens }))
        }
        IdealCmd::Radical { g, seed } => {
            check_g(*g)?;
            Ok(report::radicality(&ideal::radicality_certificate(&TrivialIdeal::new(*g), *seed)))
        }
        IdealCmd::Member { poly, g, budget, seed } => {
            check_g(*g)?;
            let p: MultiPoly<QuadScalar> = ctx.load(poly, "polynomial")?;
            let v = ideal::membership(&p, &TrivialIdeal::new(*g), *budget, *seed);
            Ok(json!({ "g": g, "polynomial": p.to_json(), "membership": report::membership(&v, &p) }))
        }
    }
}

fn load_action(src: &ActionSource, seed: u64, ctx: &mut Ctx) -> Result<EndomorphismAction<QuadScalar>, Failure> {
    match (&src.act, src.random, src.g) {
        (Some(path), false, _) => ctx.load(path, "action"),
        (None, true, Some(g)) if g > 0 => Ok(EndomorphismAction::random(g, seed)),
        _ => Err(input_error("supply --act FILE or --random --g G")),
    }
}

fn case_name(c: WitnessCase) -> &'static str {
    match c {
        WitnessCase::BNonzero => "B_nonzero: (I, 0) -> -B",
        WitnessCase::ADiffersFromD => "A_differs_from_D: (I, I) -> A - D",
        WitnessCase::ANotScalar => "A_not_scalar: (I, z) -> Az - zD",
    }
}

fn relation(cmd: &RelationCmd, ctx: &mut Ctx) -> CmdResult {
    match cmd {
        RelationCmd::BuildNonarch { act, seed, data_seeds } => {
            let act = load_action(act, *seed, ctx)?;
            let seeds = data_seeds
                .split(',')
                .filter(|s| !s.trim().is_empty())
                .map(|s| s.trim().parse::<u64>().map_err(|e| input_error(format!("--data-seeds: {e}"))))
                .collect::<Result<Vec<_>, _>>()?;
            let cert = certify_nonarch(&act, &seeds)?;
            let p = periodrel_core::relations::build_nonarch_relation(&act);
            let entry = select_nontrivial_entry(&p, &act)?;
            Ok(json!({
                "action": act.to_json(),
                "entry": { "i": entry.i, "j": entry.j },
                "case": case_name(entry.case),
                "witness_value_matrix": entry.value.to_json(),
                "table_value_matrix": entry.expected.to_json(),
                "certificate": report::certificate(&cert),
            }))
        }
        RelationCmd::Synthesize { act, seed } => {
            let act = load_action(act, *seed, ctx)?;
            let data = synthesize_period_data(&act, *seed)?;
            Ok(json!({ "action": act.to_json(), "data": data.to_json(), "satisfies_invariants": data.satisfies(&act) }))
        }
        RelationCmd::Verify { rel, data } => {
            let rv = ctx.read_json(rel)?;
            let rv = payload(&rv, "certificate");
            let pv = rv.get("polynomial").unwrap_or(rv);
            let p = MultiPoly::<QuadScalar>::from_json(pv, "$")?;
            let data: SyntheticPeriodData<QuadScalar> = ctx.load(data, "data")?;
            let value = p.eval_yz(&data.f, &data.gp)?;
            Ok(json!({ "value": value.to_json(), "vanishes": value.is_zero() }))
        }
        RelationCmd::Case3 { g, seed, d, budget } => {
            let input = sample_case3_input(*g, *seed, *d)?;
            let rel = build_case3_relation(&input, *budget, *seed)?;
            let lift = |p: &MultiPoly<Rational>| p.map_coeffs(|c| QuadScalar::rational(c.clone()));
            Ok(json!({
                "g": g,
                "h": input.h().to_json(),
                "sqrt_e": input.sqrt_e().to_json(),
                "change_of_basis": input.change().to_json(),
                "m_prime": rel.m_prime.to_json(),
                "lambda": rel.lambda.to_json(),
                "mu": rel.mu.to_json(),
                "q": lift(&rel.q).to_json(),
                "p_hat": lift(&rel.p_hat).to_json(),
                "certificate": report::certificate(&rel.certificate),
            }))
        }
    }
}

fn gfun(cmd: &GfunCmd, ctx: &mut Ctx) -> CmdResult {
    match cmd {
        GfunCmd::Derive { f, a } => {
            let f: GFunMatrix<QuadScalar> = ctx.load(f, "F")?;
            let a: GaussManinCoefficients<QuadScalar> = ctx.load(a, "coefficients")?;
            Ok(json!({ "G": derive_g(&f, &a)?.to_json() }))
        }
        GfunCmd::Radii { f, a, excluded, places } => {
            let f: GFunMatrix<QuadScalar> = ctx.load(f, "F")?;
            let a: GaussManinCoefficients<QuadScalar> = ctx.load(a, "coefficients")?;
            let g = derive_g(&f, &a)?;
            let excl = json::parse_scalar_list(excluded).map_err(input_error)?;
            let places = places.iter().map(|p| parse_place(p)).collect::<Result<Vec<_>, _>>()?;
            let radii = compute_radii(&f, &g, &a, &excl, &places)?;
            let out: Vec<Value> = radii
                .radii
                .iter()
                .map(|r| json!({ "place": r.place.to_json(), "r": report::real(r.r), "certified": r.certified }))
                .collect();
            Ok(json!({ "radii": out }))
        }
        GfunCmd::Check { f, g, a, data, x, place, tolerance } => {
            let f: GFunMatrix<QuadScalar> = ctx.load(f, "F")?;
            let g = match (g, a) {
                (Some(path), _) => ctx.load(path, "G")?,
                (None, Some(path)) => {
                    let a: GaussManinCoefficients<QuadScalar> = ctx.load(path, "coefficients")?;
                    derive_g(&f, &a)?
                }
                (None, None) => return Err(input_error("supply --G or --a")),
            };
            let data: SyntheticPeriodData<QuadScalar> = ctx.load(data, "data")?;
            let (x, v) = (parse_scalar(x)?, parse_place(place)?);
            let rep = check_period_equation(&f, &g, &data, &x, &v, *tolerance)?;
            let entries: Vec<Value> = rep
                .entries
                .iter()
                .map(|e| {
                    json!({
                        "block": if e.block == PeriodBlock::F { "F" } else { "G" },
                        "i": e.i,
                        "j": e.j,
                        "discrepancy": report::real(e.discrepancy),
                        "tail_bound": report::real(e.tail_bound),
                        "heuristic": e.heuristic,
                        "within": e.within,
                    })
                })
                .collect();
            Ok(json!({ "place": v.to_json(), "x": x.to_json(), "all_within": rep.all_within, "entries": entries }))
        }
    }
}
