//! The `edwardsg2` command line. [`run`] parses `argv`, executes one verb and
//! returns the exit code: 0 on success, 2 on a parse error, 3 on a domain
//! error.

use std::ffi::OsString;
use std::io::Write;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use edwardsg2::edwards::{EPoint, EdwardsParams, EdwardsStrategy, WPoint};
use edwardsg2::family::{self, universality_report, CurveParams, SearchStrategy};
use edwardsg2::field::{self, Fe, PrimeField};
use edwardsg2::json::{self as ej, LJson, PointJson};
use edwardsg2::model::{self, AddStrategy, ModelPoint};
use edwardsg2::{kummer, Error};

#[derive(Parser, Debug)]
#[command(
    name = "edwardsg2",
    version,
    about = "Group law on a P3 x P3 model of genus-2 Jacobians"
)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Args, Debug)]
struct Common {
    /// Field modulus.
    #[arg(long, global = true, value_parser = parse_u64)]
    p: Option<u64>,
    #[arg(long, global = true, value_parser = parse_u64)]
    a: Option<u64>,
    #[arg(long, global = true, value_parser = parse_u64)]
    b: Option<u64>,
    #[arg(long, global = true, value_parser = parse_u64)]
    c: Option<u64>,
    /// Parameter giving `a` as a square; enables the universal law.
    #[arg(long = "frak-a", global = true, value_parser = parse_u64)]
    frak_a: Option<u64>,
    #[arg(long, global = true, default_value = "0", value_parser = parse_u64)]
    seed: u64,
    #[arg(long, global = true, value_parser = parse_u64)]
    count: Option<u64>,
    /// universal, first, or columns:j,j'
    #[arg(long, global = true, value_parser = parse_strategy)]
    strategy: Option<StrategyArg>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Derived constants and the square classes controlling universality.
    ParamsCheck,
    /// Search for (frak_a, b, c) meeting the universality conditions.
    ParamsSearch {
        #[arg(long, value_enum, default_value_t = Method::Random)]
        method: Method,
        /// Number of candidates examined.
        #[arg(long, default_value = "65536", value_parser = parse_u64)]
        budget: u64,
    },
    /// Random model points, one JSON object per line.
    PointRandom,
    Add {
        #[arg(value_name = "P")]
        point: String,
        #[arg(value_name = "Q")]
        other: String,
    },
    Double {
        #[arg(value_name = "P")]
        point: String,
    },
    Mul {
        #[arg(long, allow_hyphen_values = true, value_parser = parse_i64)]
        k: i64,
        #[arg(value_name = "P")]
        point: String,
    },
    /// The fifteen defining residuals and the two l-quartic residuals.
    Verify {
        #[arg(value_name = "P")]
        point: String,
    },
    /// The two model points over an l-coordinate point `{"l": [...]}`.
    Lift { l: String },
    /// Additions per second and field multiplications per strategy.
    Bench,
    EdwardsRandom {
        #[arg(long, value_parser = parse_u64)]
        d: u64,
    },
    EdwardsAdd {
        #[arg(long, value_parser = parse_u64)]
        d: u64,
        #[arg(value_name = "P")]
        point: String,
        #[arg(value_name = "Q")]
        other: String,
    },
    EdwardsCheck {
        #[arg(long, value_parser = parse_u64)]
        d: u64,
        #[arg(value_name = "P")]
        point: String,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Random,
    T,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum StrategyArg {
    Universal,
    First,
    Columns(usize, usize),
}

impl StrategyArg {
    fn name(&self) -> String {
        match self {
            StrategyArg::Universal => "universal".into(),
            StrategyArg::First => "first".into(),
            StrategyArg::Columns(j, k) => format!("columns:{j},{k}"),
        }
    }

    fn model(&self) -> AddStrategy {
        match *self {
            StrategyArg::Universal => AddStrategy::Universal,
            StrategyArg::First => AddStrategy::FirstNonzeroColumn,
            StrategyArg::Columns(j, k) => AddStrategy::Columns(j, k),
        }
    }
}

fn parse_u64(s: &str) -> Result<u64, String> {
    let t = s.trim();
    let r = match t.strip_prefix("0x").or_else(|| t.strip_prefix("0X")) {
        Some(h) => u64::from_str_radix(h, 16),
        None => t.parse(),
    };
    r.map_err(|_| format!("not a decimal or 0x-hex integer: {s}"))
}

fn parse_i64(s: &str) -> Result<i64, String> {
    let t = s.trim();
    let (neg, body) = match t.strip_prefix('-') {
        Some(b) => (true, b),
        None => (false, t),
    };
    let m = i64::try_from(parse_u64(body)?).map_err(|_| format!("out of range: {s}"))?;
    Ok(if neg { -m } else { m })
}

fn parse_strategy(s: &str) -> Result<StrategyArg, String> {
    match s {
        "universal" => Ok(StrategyArg::Universal),
        "first" => Ok(StrategyArg::First),
        _ => {
            let cols = s
                .strip_prefix("columns:")
                .ok_or_else(|| format!("unknown strategy: {s}"))?;
            let (j, k) = cols
                .split_once(',')
                .ok_or_else(|| format!("expected columns:j,j' in {s}"))?;
            let j = j.trim().parse().map_err(|_| format!("bad column {j}"))?;
            let k = k.trim().parse().map_err(|_| format!("bad column {k}"))?;
            if !(1..=4).contains(&j) || !(1..=4).contains(&k) {
                return Err(format!("columns must lie in 1..4: {s}"));
            }
            Ok(StrategyArg::Columns(j, k))
        }
    }
}

enum CliError {
    Parse(String),
    Domain(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(m) => CliError::Parse(m),
            e => CliError::Domain(e),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

fn parse_err<T>(m: impl Into<String>) -> CliResult<T> {
    Err(CliError::Parse(m.into()))
}

/// Output of one verb: a single JSON value or a sequence of JSON lines.
enum Output {
    One(Value),
    Lines(Vec<Value>),
}

struct Ctx<'a> {
    common: &'a Common,
}

impl Ctx<'_> {
    fn field(&self) -> CliResult<PrimeField> {
        match self.common.p {
            Some(p) => Ok(PrimeField::new(p)?),
            None => parse_err("--p is required"),
        }
    }

    fn elem(&self, k: PrimeField, v: Option<u64>, flag: &str) -> CliResult<Fe> {
        match v {
            Some(v) if v < k.modulus() => Ok(k.elem(v)),
            Some(v) => parse_err(format!("--{flag} {v} is not reduced modulo p")),
            None => parse_err(format!("--{flag} is required")),
        }
    }

    fn params(&self) -> CliResult<CurveParams> {
        let k = self.field()?;
        let b = self.elem(k, self.common.b, "b")?;
        let c = self.elem(k, self.common.c, "c")?;
        Ok(match self.common.frak_a {
            Some(fa) => family::params_from_frak(self.elem(k, Some(fa), "frak-a")?, b, c)?,
            None => family::params_from_abc(self.elem(k, self.common.a, "a")?, b, c)?,
        })
    }

    fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.common.seed)
    }

    fn count(&self, default: u64) -> u64 {
        self.common.count.unwrap_or(default)
    }

    fn model_strategy(&self, params: &CurveParams) -> AddStrategy {
        self.common
            .strategy
            .map(|s| s.model())
            .unwrap_or_else(|| model::default_strategy(params))
    }

    fn edwards_strategy(&self, c: &EdwardsParams) -> CliResult<EdwardsStrategy> {
        Ok(match self.common.strategy {
            None => c.default_strategy(),
            Some(StrategyArg::First) => EdwardsStrategy::FirstNonzeroColumn,
            Some(StrategyArg::Columns(j, k)) => EdwardsStrategy::Columns(j, k),
            Some(StrategyArg::Universal) if c.d().legendre() == -1 => {
                EdwardsStrategy::Columns(1, 1)
            }
            Some(StrategyArg::Universal) => {
                return Err(CliError::Domain(Error::UniversalLawUnavailable))
            }
        })
    }
}

/// Argument text, read from a file when prefixed with `@`.
fn arg_text(s: &str) -> CliResult<String> {
    match s.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).or_else(|e| parse_err(format!("{path}: {e}"))),
        None => Ok(s.to_string()),
    }
}

fn model_point_arg(params: &CurveParams, s: &str, require_member: bool) -> CliResult<ModelPoint> {
    let named = |d| model::embed(params, &d);
    let p = match s {
        "identity" => model::identity_point(params),
        "d1" => named(kummer::make_d1(params)?)?,
        "e1" | "e2" | "e3" => named(kummer::torsion_e(params, (s.as_bytes()[1] - b'0') as usize))?,
        _ => ej::model_point_from_json(params.field, &ej::from_str::<PointJson>(&arg_text(s)?)?)?,
    };
    if require_member && !model::is_member(params, &p) {
        return Err(CliError::Domain(Error::InvalidPoint(
            "not on the model".into(),
        )));
    }
    Ok(p)
}

fn edwards_point_arg(c: &EdwardsParams, s: &str, require_member: bool) -> CliResult<EPoint> {
    let p = match s {
        "identity" => c.identity(),
        "d1" => c.embed(&c.d1()),
        "e1" => c.embed(&c.e1()),
        _ => ej::edwards_point_from_json(c.field(), &ej::from_str::<PointJson>(&arg_text(s)?)?)?,
    };
    if require_member && !c.is_member(&p) {
        return Err(CliError::Domain(Error::InvalidPoint(
            "not on the Edwards model".into(),
        )));
    }
    Ok(p)
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("plain data serializes")
}

fn model_point_value(p: &ModelPoint) -> Value {
    to_value(&ej::model_point_to_json(p))
}

fn edwards_point_value(p: &EPoint) -> Value {
    to_value(&ej::edwards_point_to_json(p))
}

fn hex_list(v: &[Fe]) -> Value {
    Value::from(v.iter().map(Fe::to_hex).collect::<Vec<_>>())
}

fn threads() -> usize {
    let avail = std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1);
    match std::env::var("EDWARDSG2_THREADS")
        .ok()
        .and_then(|s| s.trim().parse::<usize>().ok())
    {
        Some(n) if n > 0 => n.min(avail),
        _ => avail,
    }
}

fn params_check(ctx: &Ctx) -> CliResult<Output> {
    let p = ctx.params()?;
    let r = universality_report(&p);
    let mut v = to_value(&r);
    let obj = v.as_object_mut().expect("report is an object");
    obj.insert("universal".into(), r.universal().into());
    obj.insert("cd".into(), (p.c * p.d).to_hex().into());
    obj.insert("gterm".into(), p.gterm().to_hex().into());
    obj.insert("params".into(), to_value(&ej::params_to_json(&p)));
    Ok(Output::One(v))
}

fn params_search(ctx: &Ctx, method: Method, budget: u64) -> CliResult<Output> {
    let k = ctx.field()?;
    let strategy = match method {
        Method::Random => SearchStrategy::Random,
        Method::T => SearchStrategy::TParametrized,
    };
    let found = family::param_search_parallel(k, strategy, budget, ctx.common.seed, threads());
    let limit = ctx.count(10) as usize;
    let list: Vec<Value> = found
        .iter()
        .take(limit)
        .map(|(fa, b, c)| json!({"frak_a": fa.to_hex(), "b": b.to_hex(), "c": c.to_hex()}))
        .collect();
    Ok(Output::One(json!({
        "p": format!("{:x}", k.modulus()),
        "method": match method { Method::Random => "random", Method::T => "t" },
        "budget": budget,
        "total_found": found.len(),
        "found": list,
    })))
}

fn point_random(ctx: &Ctx) -> CliResult<Output> {
    let p = ctx.params()?;
    let mut rng = ctx.rng();
    let curve = p.jacobian_curve();
    let mut out = Vec::new();
    for _ in 0..ctx.count(1) {
        let d = curve.random_class(&mut rng);
        out.push(model_point_value(&model::embed(&p, &d)?));
    }
    Ok(Output::Lines(out))
}

fn verify(ctx: &Ctx, s: &str) -> CliResult<Output> {
    let p = ctx.params()?;
    let pt = model_point_arg(&p, s, false)?;
    let r = model::defining_residuals(&p, &pt);
    let lq = [
        kummer::l_quartic_eval(&p, pt.u()),
        kummer::l_quartic_eval(&p, pt.y()),
    ];
    let member = r.iter().chain(lq.iter()).all(|x| x.is_zero());
    Ok(Output::One(
        json!({"member": member, "residuals": hex_list(&r), "l_quartic": hex_list(&lq)}),
    ))
}

fn lift(ctx: &Ctx, s: &str) -> CliResult<Output> {
    let p = ctx.params()?;
    let l = ej::l_from_json(p.field, &ej::from_str::<LJson>(&arg_text(s)?)?)?;
    let (a, b) = model::lift_from_kummer(&p, &l)?;
    Ok(Output::One(
        json!({"points": [model_point_value(&a), model_point_value(&b)]}),
    ))
}

fn bench(ctx: &Ctx) -> CliResult<Output> {
    let p = ctx.params()?;
    let n = ctx.count(1000).max(1) as usize;
    let mut rng = ctx.rng();
    let curve = p.jacobian_curve();
    let divisors: Vec<_> = (0..=n).map(|_| curve.random_class(&mut rng)).collect();
    let points = divisors
        .iter()
        .map(|d| model::embed(&p, d))
        .collect::<Result<Vec<_>, _>>()?;
    let strategies: Vec<StrategyArg> = match ctx.common.strategy {
        Some(s) => vec![s],
        None if model::default_strategy(&p) == AddStrategy::Universal => {
            vec![
                StrategyArg::Universal,
                StrategyArg::First,
                StrategyArg::Columns(1, 1),
            ]
        }
        None => vec![StrategyArg::First, StrategyArg::Columns(1, 1)],
    };
    let mut results = Vec::new();
    let mut record = |name: String, secs: f64, mults: u64, degenerate: usize| {
        results.push(json!({
            "strategy": name,
            "seconds": secs,
            "adds_per_sec": n as f64 / secs.max(1e-9),
            "field_mults": mults,
            "mults_per_add": mults as f64 / n as f64,
            "degenerate": degenerate,
        }));
    };
    for s in strategies {
        let st = s.model();
        field::reset_mul_count();
        let t = Instant::now();
        let mut degenerate = 0;
        for i in 0..n {
            match model::add(&p, &points[i], &points[i + 1], st) {
                Ok(_) => {}
                Err(Error::DegenerateColumn) => degenerate += 1,
                Err(e) => return Err(e.into()),
            }
        }
        let secs = t.elapsed().as_secs_f64();
        record(s.name(), secs, field::mul_count(), degenerate);
    }
    field::reset_mul_count();
    let t = Instant::now();
    for i in 0..n {
        curve.add(&divisors[i], &divisors[i + 1])?;
    }
    let secs = t.elapsed().as_secs_f64();
    record("divisor-oracle".into(), secs, field::mul_count(), 0);
    Ok(Output::One(
        json!({"p": format!("{:x}", p.field.modulus()), "additions": n, "seed": ctx.common.seed, "results": results}),
    ))
}

fn edwards_params(ctx: &Ctx, d: u64) -> CliResult<EdwardsParams> {
    let k = ctx.field()?;
    Ok(EdwardsParams::new(ctx.elem(k, Some(d), "d")?)?)
}

fn edwards_check(ctx: &Ctx, d: u64, s: &str) -> CliResult<Output> {
    let c = edwards_params(ctx, d)?;
    let p = edwards_point_arg(&c, s, false)?;
    let member = c.is_member(&p);
    let affine = c.affine(&p).ok().map(|(u, y)| vec![u.to_hex(), y.to_hex()]);
    let w = if member {
        match c.to_weierstrass(&p) {
            Ok(WPoint::Infinity) => json!("infinity"),
            Ok(WPoint::Affine(x, y)) => json!({"x": x.to_hex(), "y": y.to_hex()}),
            Err(_) => Value::Null,
        }
    } else {
        Value::Null
    };
    Ok(Output::One(json!({
        "member": member,
        "residual": c.residual(&p).to_hex(),
        "affine": affine,
        "weierstrass": w,
    })))
}

fn execute(cli: &Cli) -> CliResult<Output> {
    let ctx = Ctx {
        common: &cli.common,
    };
    match &cli.cmd {
        Command::ParamsCheck => params_check(&ctx),
        Command::ParamsSearch { method, budget } => params_search(&ctx, *method, *budget),
        Command::PointRandom => point_random(&ctx),
        Command::Add { point: p, other: q } => {
            let params = ctx.params()?;
            let (a, b) = (
                model_point_arg(&params, p, true)?,
                model_point_arg(&params, q, true)?,
            );
            let s = model::add(&params, &a, &b, ctx.model_strategy(&params))?;
            Ok(Output::One(model_point_value(&s)))
        }
        Command::Double { point: p } => {
            let params = ctx.params()?;
            let a = model_point_arg(&params, p, true)?;
            Ok(Output::One(model_point_value(&model::double(&params, &a)?)))
        }
        Command::Mul { k, point: p } => {
            let params = ctx.params()?;
            let a = model_point_arg(&params, p, true)?;
            let s = model::scalar_mul(&params, *k, &a, ctx.model_strategy(&params))?;
            Ok(Output::One(model_point_value(&s)))
        }
        Command::Verify { point: p } => verify(&ctx, p),
        Command::Lift { l } => lift(&ctx, l),
        Command::Bench => bench(&ctx),
        Command::EdwardsRandom { d } => {
            let c = edwards_params(&ctx, *d)?;
            let mut rng = ctx.rng();
            let pts = (0..ctx.count(1))
                .map(|_| edwards_point_value(&c.embed(&c.random_w_point(&mut rng))))
                .collect();
            Ok(Output::Lines(pts))
        }
        Command::EdwardsAdd {
            d,
            point: p,
            other: q,
        } => {
            let c = edwards_params(&ctx, *d)?;
            let (a, b) = (
                edwards_point_arg(&c, p, true)?,
                edwards_point_arg(&c, q, true)?,
            );
            Ok(Output::One(edwards_point_value(&c.add(
                &a,
                &b,
                ctx.edwards_strategy(&c)?,
            )?)))
        }
        Command::EdwardsCheck { d, point: p } => edwards_check(&ctx, *d, p),
    }
}

fn render_text(v: &Value, prefix: &str, out: &mut String) {
    let scalar = |v: &Value| match v {
        Value::String(s) => s.clone(),
        v => v.to_string(),
    };
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                render_text(x, &key, out);
            }
        }
        Value::Array(a) if a.iter().all(|x| !x.is_object() && !x.is_array()) => {
            let items: Vec<String> = a.iter().map(scalar).collect();
            out.push_str(&format!("{prefix}: [{}]\n", items.join(", ")));
        }
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                render_text(x, &format!("{prefix}[{i}]"), out);
            }
        }
        v if prefix.is_empty() => out.push_str(&format!("{}\n", scalar(v))),
        v => out.push_str(&format!("{prefix}: {}\n", scalar(v))),
    }
}

fn emit(out: &mut dyn Write, v: &Value, format: Format) {
    let s = match format {
        Format::Json => format!("{v}\n"),
        Format::Text => {
            let mut s = String::new();
            render_text(v, "", &mut s);
            s
        }
    };
    let _ = out.write_all(s.as_bytes());
}

/// Runs one command. Results go to `out`; usage text and text-mode errors
/// go to `err`.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let format = cli.common.format;
    match execute(&cli) {
        Ok(Output::One(v)) => {
            emit(out, &v, format);
            0
        }
        Ok(Output::Lines(vs)) => {
            for v in &vs {
                emit(out, v, format);
            }
            0
        }
        Err(e) => {
            let (code, v) = match e {
                CliError::Parse(m) => (2, json!({"error": "Parse", "message": m})),
                CliError::Domain(e) => (3, json!({"error": e.name(), "message": e.to_string()})),
            };
            match format {
                Format::Json => emit(out, &v, format),
                Format::Text => {
                    let _ = writeln!(
                        err,
                        "error: {}: {}",
                        v["error"].as_str().unwrap_or(""),
                        v["message"].as_str().unwrap_or("")
                    );
                }
            }
            code
        }
    }
}
