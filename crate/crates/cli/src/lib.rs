//! The `satake` command line: argument parsing, JSON and TSV output, and the
//! check harness. [`run`] is a pure function of its arguments.

use std::ffi::OsString;
use std::fmt::Display;

use clap::{Args, Parser, Subcommand};
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use satake_core::central_ext::{char_assumption_ok, classify_extensions, is_prime, monodromy_modulus};
use satake_core::loop_symbols::{tame_symbol, torus_commutator};
use satake_core::rep_check::{
    freudenthal_multiplicities, mv_vs_character_check, rank_one_mv_multiplicities, weyl_dim, MonodromyModulus,
};
use satake_core::scalar::{parse_rational, Field, SUPPORTED_PRIMES};
use satake_core::twisted_dual::{table_row, TableRow, TABLE_FAMILIES};
use satake_core::{
    with_field, CartanType, Error, ExtensionSpec, Isogeny, LaurentSeries, QVector, RootDatum, TorusLoopPoint,
    TwistedDualDatum,
};

pub const SCHEMA_VERSION: &str = "1";
pub const TABLE_HEADER: &str = "group\tisogeny\tN\tdual\texpected\tverdict";

const CONVENTIONS: &str = "\
Conventions:
  Simple roots are numbered as in Bourbaki; --i is 1-based.
  Vectors (--highest, point lambdas) are comma-separated exact rationals in
  simple-coroot coordinates, e.g. --highest 1,0,1/2.
  Isogeny: sc | adjoint | so | quotient:[[g1],[g2],...] with the generators of
  X beyond the root lattice in simple-root coordinates, e.g.
  quotient:[[1/2,0,1/2]] (a single generator may drop the outer brackets).
  Fields: Q, or F<p> for a prime p <= 101.
Exit codes: 0 success, 1 usage or input error, 2 a requested check failed.";

/// Exit status and captured output streams of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser, Debug)]
#[command(name = "satake", version, about = "Twisted Satake duals, loop-group central extensions and tame symbols", after_help = CONVENTIONS)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Group {
    /// Cartan type, e.g. A1, C3, E8.
    #[arg(long = "type", value_parser = parse_type)]
    cartan_type: CartanType,
    /// sc | adjoint | so | quotient:[[...],...]
    #[arg(long, value_parser = parse_isogeny)]
    isogeny: Isogeny,
}

impl Group {
    fn datum(&self) -> Result<RootDatum, CliError> {
        RootDatum::new(self.cartan_type, self.isogeny.clone()).map_err(|e| CliError::flag("--isogeny", e))
    }

    fn echo(&self, map: &mut Map<String, Value>) {
        map.insert("type".into(), json!(self.cartan_type.to_string()));
        map.insert("isogeny".into(), json!(self.isogeny.to_string()));
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Root datum and identity of the twisted dual group.
    Dual {
        #[command(flatten)]
        group: Group,
        #[arg(long = "N", value_parser = positive, allow_hyphen_values = true)]
        n: i64,
    },
    /// The divisor d, the admissible levels and the automorphism group.
    Extensions {
        #[command(flatten)]
        group: Group,
    },
    /// The worked examples for N = 1..Nmax as TSV.
    Table {
        #[arg(long = "Nmax", value_parser = positive, allow_hyphen_values = true)]
        n_max: i64,
        /// Exit with status 2 unless every row matches the stated dual.
        #[arg(long = "paper-check")]
        check_expected: bool,
    },
    /// Tame symbol (f, g) of two Laurent series, e.g. "t^-2*(3 + 1/2*t)".
    Symbol {
        #[arg(long, default_value = "Q", value_parser = parse_field)]
        field: u64,
        #[arg(long = "f", allow_hyphen_values = true)]
        f: String,
        #[arg(long = "g", allow_hyphen_values = true)]
        g: String,
    },
    /// Commutator of two torus loop points in the extension of level m.
    Commutator {
        #[command(flatten)]
        group: Group,
        #[arg(long = "m", allow_hyphen_values = true)]
        m: i64,
        /// {"field":"Q","x1":[{"lambda":[..],"f":".."}],"x2":[..]}
        #[arg(long)]
        points: String,
    },
    /// Weight multiplicities of a representation of the twisted dual group.
    Mult {
        #[command(flatten)]
        group: Group,
        #[arg(long = "N", value_parser = positive, allow_hyphen_values = true)]
        n: i64,
        #[arg(long, value_parser = parse_vector, allow_hyphen_values = true)]
        highest: QVector,
    },
    /// Rank-one stratum count for highest weight a·α_i.
    MvRank1 {
        #[command(flatten)]
        group: Group,
        #[arg(long = "N", value_parser = positive, allow_hyphen_values = true)]
        n: i64,
        #[arg(long = "i", value_parser = positive, allow_hyphen_values = true)]
        i: i64,
        #[arg(long = "a", value_parser = positive, allow_hyphen_values = true)]
        a: i64,
        /// Compare with the character of the rank-one dual group; exit 2 on mismatch.
        #[arg(long)]
        check: bool,
    },
    /// Whether the characteristic p avoids 2ȟN/d.
    CheckAssumption {
        #[command(flatten)]
        group: Group,
        #[arg(long = "N", value_parser = positive, allow_hyphen_values = true)]
        n: i64,
        /// A prime, or 0 for characteristic zero.
        #[arg(long = "p", value_parser = parse_characteristic)]
        p: u64,
    },
}

#[derive(Debug)]
struct CliError {
    flag: Option<&'static str>,
    message: String,
}

impl CliError {
    fn flag(flag: &'static str, e: impl Display) -> Self {
        CliError { flag: Some(flag), message: e.to_string() }
    }

    fn plain(e: impl Display) -> Self {
        CliError { flag: None, message: e.to_string() }
    }
}

impl Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.flag {
            Some(flag) => write!(f, "error: invalid value for '{flag}': {}", self.message),
            None => write!(f, "error: {}", self.message),
        }
    }
}

fn parse_type(s: &str) -> Result<CartanType, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_isogeny(s: &str) -> Result<Isogeny, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn positive(s: &str) -> Result<i64, String> {
    let v: i64 = s.trim().parse().map_err(|_| format!("'{s}' is not an integer"))?;
    if v <= 0 {
        return Err(format!("must be a positive integer, got {v}"));
    }
    Ok(v)
}

fn parse_vector(s: &str) -> Result<QVector, String> {
    let body = s.trim().trim_start_matches('[').trim_end_matches(']');
    body.split(',')
        .map(|t| parse_rational(t.trim().trim_matches('"')).ok_or_else(|| format!("'{t}' is not an exact rational")))
        .collect()
}

fn parse_field(s: &str) -> Result<u64, String> {
    let t = s.trim();
    if matches!(t, "Q" | "QQ" | "0") {
        return Ok(0);
    }
    let digits = t
        .strip_prefix("GF(")
        .and_then(|x| x.strip_suffix(')'))
        .or_else(|| t.strip_prefix("Fp"))
        .or_else(|| t.strip_prefix('F'))
        .unwrap_or(t);
    let p: u64 = digits.parse().map_err(|_| format!("unknown field '{s}' (use Q or F<p>)"))?;
    if !SUPPORTED_PRIMES.contains(&p) {
        return Err(format!("F{p} is not a supported prime field (primes up to 101)"));
    }
    Ok(p)
}

fn parse_characteristic(s: &str) -> Result<u64, String> {
    let p: u64 = s.trim().parse().map_err(|_| format!("'{s}' is not a nonnegative integer"))?;
    if p != 0 && !is_prime(p) {
        return Err(format!("{p} is neither 0 nor a prime"));
    }
    Ok(p)
}

/// Recursively sorts object keys so output does not depend on how the
/// JSON map type is configured.
fn canonical(v: Value) -> Value {
    match v {
        Value::Object(m) => {
            let mut entries: Vec<(String, Value)> = m.into_iter().collect();
            entries.sort_by(|a, b| a.0.cmp(&b.0));
            Value::Object(entries.into_iter().map(|(k, v)| (k, canonical(v))).collect())
        }
        Value::Array(a) => Value::Array(a.into_iter().map(canonical).collect()),
        other => other,
    }
}

struct Check {
    name: &'static str,
    pass: bool,
}

/// Serialises the output envelope.
fn emit_json(command: &str, input_echo: Map<String, Value>, result: Value, checks: &[Check]) -> String {
    let checks: Vec<Value> = checks.iter().map(|c| json!({"name": c.name, "pass": c.pass})).collect();
    let envelope = json!({
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "input_echo": Value::Object(input_echo),
        "result": result,
        "checks": checks,
    });
    let mut s = serde_json::to_string_pretty(&canonical(envelope)).expect("JSON values serialise");
    s.push('\n');
    s
}

fn to_json(v: &impl serde::Serialize) -> Result<Value, CliError> {
    serde_json::to_value(v).map_err(CliError::plain)
}

fn ok(stdout: String) -> Output {
    Output { code: 0, stdout, stderr: String::new() }
}

fn with_checks(stdout: String, checks: &[Check]) -> Output {
    let failed: Vec<&str> = checks.iter().filter(|c| !c.pass).map(|c| c.name).collect();
    if failed.is_empty() {
        ok(stdout)
    } else {
        Output { code: 2, stdout, stderr: format!("check failed: {}\n", failed.join(", ")) }
    }
}

fn dual(group: &Group, n: i64) -> Result<Output, CliError> {
    let source = group.datum()?;
    let dd = TwistedDualDatum::new(&source, n).map_err(|e| CliError::flag("--N", e))?;
    let id = dd.identify().map_err(CliError::plain)?;
    let mut result = to_json(&dd)?;
    let obj = result.as_object_mut().expect("dual datum serialises to an object");
    obj.insert("dual_type".into(), json!(id.cartan_type.to_string()));
    obj.insert("center".into(), to_json(&id.center_chars)?);
    obj.insert("pi1".into(), to_json(&id.fundamental_group)?);
    if let Some(name) = &id.canonical_name {
        obj.insert("name".into(), json!(name));
    }
    let mut echo = Map::new();
    group.echo(&mut echo);
    echo.insert("N".into(), json!(n));
    let checks = [Check { name: "reflections", pass: dd.check_reflections().is_ok() }];
    Ok(with_checks(emit_json("dual", echo, result, &checks), &checks))
}

fn extensions(group: &Group) -> Result<Output, CliError> {
    let datum = group.datum()?;
    let cls = classify_extensions(&datum).map_err(CliError::plain)?;
    let result = json!({"d": cls.d, "levels": cls.levels(), "aut": to_json(&cls.automorphisms)?});
    let mut echo = Map::new();
    group.echo(&mut echo);
    Ok(ok(emit_json("extensions", echo, result, &[])))
}

/// All rows of the examples table, computed in parallel and returned in
/// family-then-N order.
pub fn table_rows(n_max: i64) -> satake_core::Result<Vec<TableRow>> {
    let jobs: Vec<(usize, i64)> = (0..TABLE_FAMILIES.len()).flat_map(|f| (1..=n_max).map(move |n| (f, n))).collect();
    jobs.par_iter().map(|&(f, n)| table_row(&TABLE_FAMILIES[f], n)).collect()
}

fn table(n_max: i64, check_expected: bool) -> Result<Output, CliError> {
    let rows = table_rows(n_max).map_err(CliError::plain)?;
    let mut out = String::from(TABLE_HEADER);
    out.push('\n');
    for r in &rows {
        out.push_str(&r.to_tsv());
        out.push('\n');
    }
    let failed: Vec<String> = rows.iter().filter(|r| !r.pass).map(|r| format!("{} N={}", r.group, r.n)).collect();
    if check_expected && !failed.is_empty() {
        return Ok(Output { code: 2, stdout: out, stderr: format!("rows differ from the stated dual: {}\n", failed.join(", ")) });
    }
    Ok(ok(out))
}

fn symbol_in<F: Field>(f: &str, g: &str) -> Result<String, CliError> {
    let fs = LaurentSeries::<F>::parse(f).map_err(|e| CliError::flag("--f", e))?;
    let gs = LaurentSeries::<F>::parse(g).map_err(|e| CliError::flag("--g", e))?;
    if fs.is_zero() {
        return Err(CliError::flag("--f", "the series is zero"));
    }
    if gs.is_zero() {
        return Err(CliError::flag("--g", "the series is zero"));
    }
    tame_symbol(&fs, &gs).map(|v| v.to_string()).map_err(CliError::plain)
}

fn field_name(p: u64) -> String {
    if p == 0 {
        "Q".into()
    } else {
        format!("F{p}")
    }
}

fn symbol(field: u64, f: &str, g: &str) -> Result<Output, CliError> {
    let value = with_field!(field, F => symbol_in::<F>(f, g)).ok_or_else(|| CliError::flag("--field", "unsupported field"))??;
    let mut echo = Map::new();
    echo.insert("field".into(), json!(field_name(field)));
    echo.insert("f".into(), json!(f));
    echo.insert("g".into(), json!(g));
    Ok(ok(emit_json("symbol", echo, json!({"value": value}), &[])))
}

fn point_from_json<F: Field>(v: &Value, key: &str) -> Result<TorusLoopPoint<F>, CliError> {
    let bad = |m: String| CliError::flag("--points", format!("{key}: {m}"));
    let terms = v.get(key).and_then(Value::as_array).ok_or_else(|| bad("expected a list of {lambda, f} terms".into()))?;
    let mut out = Vec::new();
    for t in terms {
        let lambda = t
            .get("lambda")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("term without a 'lambda' list".into()))?
            .iter()
            .map(|x| match x {
                Value::String(s) => parse_rational(s),
                Value::Number(n) => parse_rational(&n.to_string()),
                _ => None,
            })
            .collect::<Option<QVector>>()
            .ok_or_else(|| bad("lambda entries must be exact rationals".into()))?;
        let f = t.get("f").and_then(Value::as_str).ok_or_else(|| bad("term without a series 'f'".into()))?;
        let series = LaurentSeries::<F>::parse(f).map_err(|e| bad(e.to_string()))?;
        out.push((lambda, series));
    }
    TorusLoopPoint::new(out).map_err(|e| bad(e.to_string()))
}

fn commutator_in<F: Field>(spec: &ExtensionSpec, points: &Value) -> Result<String, CliError> {
    let x1 = point_from_json::<F>(points, "x1")?;
    let x2 = point_from_json::<F>(points, "x2")?;
    torus_commutator(spec, &x1, &x2).map(|v| v.to_string()).map_err(|e| CliError::flag("--points", e))
}

fn commutator(group: &Group, m: i64, points: &str) -> Result<Output, CliError> {
    let datum = group.datum()?;
    let spec = ExtensionSpec::new(&datum, m).map_err(|e| CliError::flag("--m", e))?;
    let pv: Value = serde_json::from_str(points).map_err(|e| CliError::flag("--points", e))?;
    let field = match pv.get("field") {
        None => 0,
        Some(Value::String(s)) => parse_field(s).map_err(|e| CliError::flag("--points", e))?,
        Some(other) => return Err(CliError::flag("--points", format!("bad field {other}"))),
    };
    let value = with_field!(field, F => commutator_in::<F>(&spec, &pv)).ok_or_else(|| CliError::flag("--points", "unsupported field"))??;
    let mut echo = Map::new();
    group.echo(&mut echo);
    echo.insert("m".into(), json!(m));
    echo.insert("points".into(), canonical(pv));
    let result = json!({"value": value, "field": field_name(field), "d": spec.d(), "level": m});
    Ok(ok(emit_json("commutator", echo, result, &[])))
}

fn vector_json(v: &[satake_core::Rational]) -> Value {
    Value::Array(v.iter().map(|x| json!(x.to_string())).collect())
}

fn mult(group: &Group, n: i64, highest: &QVector) -> Result<Output, CliError> {
    let source = group.datum()?;
    if highest.len() != source.rank() {
        return Err(CliError::flag("--highest", format!("expected {} coordinates, got {}", source.rank(), highest.len())));
    }
    let dd = TwistedDualDatum::new(&source, n).map_err(|e| CliError::flag("--N", e))?;
    let w = dd.weight_datum();
    let mults = freudenthal_multiplicities(&w, highest).map_err(|e| CliError::flag("--highest", e))?;
    let dim = weyl_dim(&w, highest).map_err(|e| CliError::flag("--highest", e))?;
    let id = dd.identify().map_err(CliError::plain)?;
    let result = json!({
        "weights": to_json(&mults)?,
        "dimension": mults.total(),
        "dual": to_json(&id)?,
    });
    let mut echo = Map::new();
    group.echo(&mut echo);
    echo.insert("N".into(), json!(n));
    echo.insert("highest".into(), vector_json(highest));
    let checks = [Check { name: "weyl_dimension", pass: dim.to_u64() == Some(mults.total()) }];
    Ok(with_checks(emit_json("mult", echo, result, &checks), &checks))
}

fn map_rank_one_error(e: Error) -> CliError {
    match e {
        Error::BadIndex { .. } => CliError::flag("--i", e),
        Error::Precondition(_) => CliError::flag("--a", e),
        other => CliError::plain(other),
    }
}

fn mv_rank1(group: &Group, n: i64, i: i64, a: i64, check: bool) -> Result<Output, CliError> {
    let source = group.datum()?;
    let idx = (i - 1) as usize;
    let mv = rank_one_mv_multiplicities(&source, n, idx, a).map_err(map_rank_one_error)?;
    let dd = TwistedDualDatum::new(&source, n).map_err(|e| CliError::flag("--N", e))?;
    let modulus = MonodromyModulus::new(&source, n).map_err(CliError::plain)?;
    let result = json!({
        "weights": to_json(&mv)?,
        "delta_i": dd.delta()[idx],
        "modulus": modulus.modulus().to_string(),
        "nonzero": mv.support().len(),
    });
    let mut echo = Map::new();
    group.echo(&mut echo);
    echo.insert("N".into(), json!(n));
    echo.insert("i".into(), json!(i));
    echo.insert("a".into(), json!(a));
    let mut checks = Vec::new();
    if check {
        let pass = mv_vs_character_check(&source, n, idx, a).map_err(map_rank_one_error)?;
        checks.push(Check { name: "mv_vs_character", pass });
    }
    Ok(with_checks(emit_json("mv-rank1", echo, result, &checks), &checks))
}

fn check_assumption(group: &Group, n: i64, p: u64) -> Result<Output, CliError> {
    let datum = group.datum()?;
    let ok_p = char_assumption_ok(&datum, p, n).map_err(|e| CliError::flag("--p", e))?;
    let modulus = monodromy_modulus(&datum, n).map_err(|e| CliError::flag("--N", e))?;
    let mut echo = Map::new();
    group.echo(&mut echo);
    echo.insert("N".into(), json!(n));
    echo.insert("p".into(), json!(p));
    let result = json!({"ok": ok_p, "modulus": modulus.to_string()});
    Ok(ok(emit_json("check-assumption", echo, result, &[])))
}

/// Runs one invocation. `argv[0]` is the program name.
pub fn run<I, T>(argv: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Output { code: 1, stdout: String::new(), stderr: text }
            } else {
                ok(text)
            };
        }
    };
    let result = match &cli.command {
        Command::Dual { group, n } => dual(group, *n),
        Command::Extensions { group } => extensions(group),
        Command::Table { n_max, check_expected } => table(*n_max, *check_expected),
        Command::Symbol { field, f, g } => symbol(*field, f, g),
        Command::Commutator { group, m, points } => commutator(group, *m, points),
        Command::Mult { group, n, highest } => mult(group, *n, highest),
        Command::MvRank1 { group, n, i, a, check } => mv_rank1(group, *n, *i, *a, *check),
        Command::CheckAssumption { group, n, p } => check_assumption(group, *n, *p),
    };
    match result {
        Ok(out) => out,
        Err(e) => Output { code: 1, stdout: String::new(), stderr: format!("{e}\n") },
    }
}
