use std::io::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use sn_core::exec::Exec;
use sn_core::geometry::{pullback, related, PolyMap};
use sn_core::parser::{parse_polynomial, print_canonical};
use sn_core::poisson::{is_poisson_with, PoissonCandidate};
use sn_core::schouten::bracket;
use sn_core::suite::{self, SignVariant, Suite, SuiteConfig};
use sn_core::{parse, BracketConvention, Error, Form, Method, Multivector, TestScope, Value};

/// Exact Schouten-Nijenhuis bracket and exterior calculus on polynomial charts.
///
/// Expressions use x1.., e1.. (coordinate vector fields) and dx1.. with
/// `^` for wedge, `*` for scalar multiplication and `**` for powers.
#[derive(Parser)]
#[command(name = "sn", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Chart dimension.
    #[arg(long)]
    dim: usize,
    /// Print JSON instead of canonical text.
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Schouten-Nijenhuis bracket [U,V].
    Bracket {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = Method::Both)]
        method: Method,
        #[arg(long, default_value_t = BracketConvention::Koszul)]
        convention: BracketConvention,
        u: String,
        v: String,
    },
    /// Check whether a bivector is Poisson; exit 0 if it is, 1 if not.
    Poisson {
        #[command(flatten)]
        common: Common,
        /// Evaluate the Jacobiator on this triple as well.
        #[arg(long = "with", num_args = 3, value_names = ["F", "G", "H"])]
        with: Option<Vec<String>>,
        /// Random Jacobiator samples.
        #[arg(long, default_value_t = 8)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        p: String,
    },
    /// Run the seeded identity suites; exit 0 iff every identity passes.
    Identities(IdentitiesArgs),
    /// Wedge product A ^ B.
    Wedge {
        #[command(flatten)]
        common: Common,
        a: String,
        b: String,
    },
    /// Exterior derivative.
    D {
        #[command(flatten)]
        common: Common,
        omega: String,
    },
    /// Insertion i(U)omega of a multivector into a form.
    Insert {
        #[command(flatten)]
        common: Common,
        u: String,
        omega: String,
    },
    /// Contraction of a multivector U by a form omega.
    Iota {
        #[command(flatten)]
        common: Common,
        omega: String,
        u: String,
    },
    /// Pairing <omega, U>.
    Pair {
        #[command(flatten)]
        common: Common,
        omega: String,
        u: String,
    },
    /// Lie differential L(U)omega.
    Lie {
        #[command(flatten)]
        common: Common,
        u: String,
        omega: String,
    },
    /// Pullback of a form along a polynomial map; `--dim` is the source dimension.
    Pullback {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        map: MapArgs,
        omega: String,
    },
    /// Whether U on the source and U' on the target are related by the map.
    Related {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        map: MapArgs,
        u: String,
        u_image: String,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct MapArgs {
    /// A component of the map, in the source variables; repeat per target coordinate.
    #[arg(long = "map")]
    components: Vec<String>,
    /// The map as {"src":m,"dst":n,"components":[...]}.
    #[arg(long)]
    map_json: Option<String>,
}

#[derive(Args)]
struct IdentitiesArgs {
    /// Dimensions, as a list `1,2,3` or a range `1..4`.
    #[arg(long, default_value = "1..4", value_parser = parse_dims)]
    dims: Dims,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    /// Overridden by SN_SEED when set.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Comma-separated suites; all by default.
    #[arg(long, value_delimiter = ',')]
    suites: Vec<Suite>,
    #[arg(long, default_value_t = 3)]
    coeff_degree: u32,
    /// Largest multivector degree; the dimension by default.
    #[arg(long)]
    max_degree: Option<usize>,
    /// Largest form degree in operator checks; the dimension by default.
    #[arg(long)]
    form_degree: Option<usize>,
    /// Run trials on one thread.
    #[arg(long)]
    sequential: bool,
    #[arg(long)]
    json: bool,
    #[arg(long, hide = true)]
    sign_variant: Option<SignVariant>,
}

#[derive(Clone)]
struct Dims(Vec<usize>);

fn parse_dims(s: &str) -> Result<Dims, String> {
    let num = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("`{t}`: {e}"));
    if let Some((a, b)) = s.split_once("..") {
        let (a, b) = (num(a)?, num(b)?);
        if a > b {
            return Err(format!("empty range {s}"));
        }
        return Ok(Dims((a..=b).collect()));
    }
    s.split(',').map(num).collect::<Result<_, _>>().map(Dims)
}

/// A failure mapped to an exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if matches!(e, Error::MethodDisagreement { .. }) { 3 } else { 2 };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

type Outcome = Result<(String, u8), Failure>;

fn value(text: &str, dim: usize) -> Result<Value, Failure> {
    Ok(parse(text, dim)?)
}

fn multivector(text: &str, dim: usize) -> Result<Multivector, Failure> {
    value(text, dim)?
        .into_multivector()
        .ok_or_else(|| input_error(format!("`{text}` is a form; expected a multivector")))
}

fn form(text: &str, dim: usize) -> Result<Form, Failure> {
    value(text, dim)?
        .into_form()
        .ok_or_else(|| input_error(format!("`{text}` is a multivector; expected a form")))
}

fn json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("values serialize")
}

fn render(v: Value, as_json: bool) -> String {
    let v = v.normalized();
    if as_json {
        json(&v)
    } else {
        print_canonical(&v)
    }
}

fn render_mv(m: Multivector, as_json: bool) -> String {
    if as_json {
        json(&m)
    } else {
        print_canonical(&Value::Multivector(m))
    }
}

fn render_form(w: Form, as_json: bool) -> String {
    if as_json {
        json(&w)
    } else {
        print_canonical(&Value::Form(w))
    }
}

fn read_map(args: &MapArgs, src: usize) -> Result<PolyMap, Failure> {
    if let Some(text) = &args.map_json {
        let map: PolyMap =
            serde_json::from_str(text).map_err(|e| input_error(format!("invalid map JSON: {e}")))?;
        if map.src() != src {
            return Err(input_error(format!(
                "map source dimension {} differs from --dim {src}",
                map.src()
            )));
        }
        return Ok(map);
    }
    let comps = args
        .components
        .iter()
        .map(|c| parse_polynomial(c, src).map_err(|e| input_error(e.to_string())))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(PolyMap::new(src, comps)?)
}

fn check_dim(dim: usize) -> Result<(), Failure> {
    if dim == 0 {
        return Err(input_error("--dim must be positive"));
    }
    Ok(())
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Bracket {
            common,
            method,
            convention,
            u,
            v,
        } => {
            let (u, v) = (multivector(&u, common.dim)?, multivector(&v, common.dim)?);
            let b = bracket(&u, &v, method, convention)?;
            Ok((render_mv(b, common.json), 0))
        }
        Command::Poisson {
            common,
            with,
            trials,
            seed,
            p,
        } => poisson(common, with, trials, seed, &p),
        Command::Identities(args) => identities(args),
        Command::Wedge { common, a, b } => {
            let out = match (value(&a, common.dim)?, value(&b, common.dim)?) {
                (Value::Form(_), Value::Multivector(_)) | (Value::Multivector(_), Value::Form(_)) => {
                    return Err(input_error("cannot wedge a multivector with a form"));
                }
                (Value::Form(x), y) => Value::Form(x.wedge(&y.into_form().expect("scalar or form"))),
                (x, Value::Form(y)) => Value::Form(x.into_form().expect("scalar").wedge(&y)),
                (x, y) => Value::Multivector(
                    x.into_multivector()
                        .expect("scalar or multivector")
                        .wedge(&y.into_multivector().expect("scalar or multivector")),
                ),
            };
            Ok((render(out, common.json), 0))
        }
        Command::D { common, omega } => {
            let w = form(&omega, common.dim)?;
            Ok((render_form(w.d(), common.json), 0))
        }
        Command::Insert { common, u, omega } => {
            let (u, w) = (multivector(&u, common.dim)?, form(&omega, common.dim)?);
            Ok((render_form(u.insert_into(&w), common.json), 0))
        }
        Command::Iota { common, omega, u } => {
            let (w, u) = (form(&omega, common.dim)?, multivector(&u, common.dim)?);
            Ok((render_mv(w.insert_into(&u), common.json), 0))
        }
        Command::Pair { common, omega, u } => {
            let (w, u) = (form(&omega, common.dim)?, multivector(&u, common.dim)?);
            Ok((render(Value::Scalar(w.pair_with(&u)), common.json), 0))
        }
        Command::Lie { common, u, omega } => {
            let (u, w) = (multivector(&u, common.dim)?, form(&omega, common.dim)?);
            Ok((render_form(u.lie_diff(&w), common.json), 0))
        }
        Command::Pullback { common, map, omega } => {
            check_dim(common.dim)?;
            let map = read_map(&map, common.dim)?;
            let w = form(&omega, map.dst())?;
            Ok((render_form(pullback(&map, &w)?, common.json), 0))
        }
        Command::Related {
            common,
            map,
            u,
            u_image,
        } => {
            check_dim(common.dim)?;
            let map = read_map(&map, common.dim)?;
            let (u, image) = (multivector(&u, map.src())?, multivector(&u_image, map.dst())?);
            let verdict = related(&map, &u, &image)?;
            let out = if common.json {
                json(&serde_json::json!({ "related": verdict }))
            } else {
                verdict.to_string()
            };
            Ok((out, 0))
        }
    }
}

fn poisson(common: Common, with: Option<Vec<String>>, trials: usize, seed: u64, p: &str) -> Outcome {
    let dim = common.dim;
    let p = PoissonCandidate::new(multivector(p, dim)?)?;
    let extra = match with {
        Some(fs) => {
            let polys = fs
                .iter()
                .map(|f| parse_polynomial(f, dim).map_err(|e| input_error(e.to_string())))
                .collect::<Result<Vec<_>, _>>()?;
            vec![[polys[0].clone(), polys[1].clone(), polys[2].clone()]]
        }
        None => Vec::new(),
    };
    let scope = TestScope {
        trials,
        seed,
        ..TestScope::new(dim)
    };
    let report = is_poisson_with(&p, &scope, &extra, Exec::default())?;
    let code = if report.poisson { 0 } else { 1 };
    if common.json {
        return Ok((json(&report), code));
    }
    let mut out = String::new();
    out.push_str(if report.poisson { "poisson: yes\n" } else { "poisson: no\n" });
    out.push_str(&format!(
        "[P,P] = {}\n",
        print_canonical(&Value::Multivector(report.schouten_square.clone()))
    ));
    // the coordinate triple and any --with triple, then a count over all samples
    for s in report.jacobiator_samples.iter().take(1 + extra.len()) {
        out.push_str(&format!("J({}, {}, {}) = {}\n", s.f, s.g, s.h, s.value));
    }
    let nonzero = report
        .jacobiator_samples
        .iter()
        .filter(|s| !s.value.is_zero())
        .count();
    out.push_str(&format!(
        "nonzero Jacobiator samples: {nonzero}/{}",
        report.jacobiator_samples.len()
    ));
    Ok((out, code))
}

fn identities(args: IdentitiesArgs) -> Outcome {
    let seed = match std::env::var("SN_SEED") {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|e| input_error(format!("SN_SEED `{s}`: {e}")))?,
        Err(_) => args.seed,
    };
    let config = SuiteConfig {
        dims: args.dims.0,
        max_multivector_degree: args.max_degree,
        coeff_degree: args.coeff_degree,
        form_degree: args.form_degree,
        trials: args.trials,
        seed,
        suites: if args.suites.is_empty() {
            Suite::ALL.to_vec()
        } else {
            args.suites
        },
        exec: if args.sequential { Exec::Sequential } else { Exec::default() },
        sign_variant: args.sign_variant,
    };
    let report = suite::run(&config)?;
    let code = if report.all_passed() { 0 } else { 1 };
    let out = if args.json { json(&report) } else { report.to_string() };
    Ok((out, code))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok((out, code)) => {
            let mut stdout = std::io::stdout().lock();
            let _ = writeln!(stdout, "{out}");
            ExitCode::from(code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
