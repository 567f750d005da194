//! Command-line front end for the `nearhopf` engine.

pub mod export;
pub mod expr;

use std::fmt::Write as _;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};

use nearhopf::catalog::entry;
use nearhopf::integral::PsiMode;
use nearhopf::notation::format_formula;
use nearhopf::presentation::Model;
use nearhopf::verify::{run_suite, AllowList, CheckReport};
use nearhopf::{Group, HopfAlgebra, IntegralRing, Rule, Symbol};

use expr::{parse_in, Context, ExprError, Value};

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 1;
pub const EXIT_MISMATCH: u8 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "nearhopf",
    version,
    about = "Integral cohomology and coproducts of the exceptional Lie groups"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
pub struct Coefficients {
    /// Work over F_p.
    #[arg(long)]
    pub prime: Option<u32>,
    /// Work in integral cohomology.
    #[arg(long)]
    pub integral: bool,
}

#[derive(Args, Debug, Clone)]
#[group(required = false, multiple = false)]
pub struct OptionalCoefficients {
    #[arg(long)]
    pub prime: Option<u32>,
    /// Integral cohomology (the default).
    #[arg(long)]
    pub integral: bool,
}

#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
pub struct SeriesField {
    #[arg(long)]
    pub prime: Option<u32>,
    #[arg(long)]
    pub rational: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print presentations, coproduct and Bockstein tables.
    Show {
        group: Group,
        #[arg(long)]
        prime: Option<u32>,
    },
    /// Reduced coproduct of an expression.
    Coproduct {
        group: Group,
        expr: String,
        #[command(flatten)]
        coeff: Coefficients,
    },
    /// Bockstein of an expression over F_p.
    Bockstein {
        group: Group,
        expr: String,
        #[arg(long)]
        prime: u32,
    },
    /// Mod-p reduction of an integral expression.
    Reduce {
        group: Group,
        expr: String,
        #[arg(long)]
        prime: u32,
    },
    /// Product of two expressions.
    Multiply {
        group: Group,
        left: String,
        right: String,
        #[command(flatten)]
        coeff: OptionalCoefficients,
    },
    /// Whether an expression is primitive.
    Primitive {
        group: Group,
        expr: String,
        #[command(flatten)]
        coeff: OptionalCoefficients,
    },
    /// Poincaré series coefficients up to a degree.
    Poincare {
        group: Group,
        #[command(flatten)]
        field: SeriesField,
        #[arg(long)]
        max: u32,
    },
    /// Run the consistency suite on one group or on all of them.
    Verify {
        /// A group name or `all`.
        target: String,
        #[arg(long)]
        json: Option<PathBuf>,
        /// File of tolerated finding ids, one per line.
        #[arg(long)]
        allow: Option<PathBuf>,
    },
    /// Write the catalog entry of a group as JSON.
    Export {
        group: Group,
        #[arg(long)]
        json: PathBuf,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Expr(#[from] ExprError),
    #[error(transparent)]
    Core(#[from] nearhopf::Error),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

type Res<T> = Result<T, CliError>;

fn mod_p(group: Group, p: u32) -> Res<HopfAlgebra> {
    Ok(HopfAlgebra::new(
        Arc::new(entry(group)?),
        p,
        Model::AllowExterior,
    )?)
}

fn ring(group: Group) -> Res<IntegralRing> {
    Ok(IntegralRing::for_group(group)?)
}

fn describe(ctx: &Context<'_>, v: &Value) -> String {
    match (ctx, v) {
        (Context::ModP(h), Value::Elem(x)) => h.algebra().format(x),
        (Context::ModP(h), Value::Tensor(t)) => h.algebra().format_tensor(t),
        (Context::Integral(r), Value::IElem(x)) => r.format(x),
        (Context::Integral(r), Value::ITensor(t)) => r.format_tensor(t),
        _ => unreachable!("value from another context"),
    }
}

fn eval(ctx: &Context<'_>, src: &str) -> Res<Value> {
    let e = parse_in(src, ctx)?;
    Ok(ctx.eval(&e)?)
}

/// Runs one command, writing its text output to `out`; returns the exit code.
pub fn run(cli: Cli, out: &mut String) -> Res<u8> {
    match cli.command {
        Command::Show { group, prime } => show(group, prime, out),
        Command::Coproduct { group, expr, coeff } => coproduct(group, &expr, coeff.prime, out),
        Command::Bockstein { group, expr, prime } => {
            let h = mod_p(group, prime)?;
            let ctx = Context::ModP(&h);
            let v = match eval(&ctx, &expr)? {
                Value::Elem(x) => Value::Elem(h.bockstein(&x)),
                Value::Tensor(t) => Value::Tensor(h.bockstein_tensor(&t)),
                _ => unreachable!(),
            };
            writeln!(out, "{}", describe(&ctx, &v)).unwrap();
            Ok(EXIT_OK)
        }
        Command::Reduce { group, expr, prime } => {
            let r = ring(group)?;
            let ctx = Context::Integral(&r);
            let h = r.hopf(prime)?;
            let text = match eval(&ctx, &expr)? {
                Value::IElem(x) => h.algebra().format(&x.shadows[&prime]),
                Value::ITensor(t) => h.algebra().format_tensor(&t.shadows[&prime]),
                _ => unreachable!(),
            };
            writeln!(out, "{text}").unwrap();
            Ok(EXIT_OK)
        }
        Command::Multiply {
            group,
            left,
            right,
            coeff,
        } => {
            let src = format!("({left})*({right})");
            with_context(group, coeff.prime, |ctx| {
                // parse separately so positions refer to each operand
                parse_in(&left, ctx)?;
                parse_in(&right, ctx)?;
                let v = eval(ctx, &src)?;
                writeln!(out, "{}", describe(ctx, &v)).unwrap();
                Ok(EXIT_OK)
            })
        }
        Command::Primitive { group, expr, coeff } => with_context(group, coeff.prime, |ctx| {
            let prim = match (ctx, eval(ctx, &expr)?) {
                (Context::ModP(h), Value::Elem(x)) => h.is_primitive(&x)?,
                (Context::Integral(r), Value::IElem(x)) => r.is_primitive(&x)?,
                _ => {
                    return Err(CliError::Usage(
                        "primitive takes an element, not a tensor".into(),
                    ))
                }
            };
            writeln!(out, "{}", if prim { "primitive" } else { "not primitive" }).unwrap();
            Ok(EXIT_OK)
        }),
        Command::Poincare { group, field, max } => {
            let series = match field.prime {
                Some(p) => mod_p(group, p)?.algebra().poincare(max),
                None => ring(group)?.rational().poincare(max),
            };
            for (d, n) in series.iter().enumerate() {
                writeln!(out, "{d}: {n}").unwrap();
            }
            Ok(EXIT_OK)
        }
        Command::Verify {
            target,
            json,
            allow,
        } => verify(&target, json, allow, out),
        Command::Export { group, json } => {
            let doc = export::build(entry(group)?)?;
            let text = serde_json::to_string_pretty(&doc).expect("serializable document");
            std::fs::write(&json, text).map_err(|source| CliError::Io {
                path: json.clone(),
                source,
            })?;
            writeln!(out, "wrote {}", json.display()).unwrap();
            Ok(EXIT_OK)
        }
    }
}

fn with_context(
    group: Group,
    prime: Option<u32>,
    f: impl FnOnce(&Context<'_>) -> Res<u8>,
) -> Res<u8> {
    match prime {
        Some(p) => {
            let h = mod_p(group, p)?;
            f(&Context::ModP(&h))
        }
        None => {
            let r = ring(group)?;
            f(&Context::Integral(&r))
        }
    }
}

fn coproduct(group: Group, src: &str, prime: Option<u32>, out: &mut String) -> Res<u8> {
    match prime {
        Some(p) => {
            let h = mod_p(group, p)?;
            let ctx = Context::ModP(&h);
            let Value::Elem(x) = eval(&ctx, src)? else {
                return Err(CliError::Usage("coproduct takes an element".into()));
            };
            let psi = h.reduced_coproduct(&x)?;
            writeln!(out, "psi_{p}({src}) = {}", h.algebra().format_tensor(&psi)).unwrap();
            if let Some(Symbol::Zeta(z)) = Symbol::parse(src.trim()) {
                if let Some(f) = h.stored_psi(z) {
                    writeln!(out, "  stored: {}", format_formula(f)).unwrap();
                }
            }
        }
        None => {
            let r = ring(group)?;
            let ctx = Context::Integral(&r);
            let Value::IElem(x) = eval(&ctx, src)? else {
                return Err(CliError::Usage("coproduct takes an element".into()));
            };
            let is_generator = matches!(
                Symbol::parse(src.trim()),
                Some(Symbol::Rho(_) | Symbol::C(_))
            );
            // generators go through the Bockstein lift, which also checks torsion membership
            let mode = if is_generator {
                PsiMode::Generator
            } else {
                PsiMode::General
            };
            let psi = r.psi(&x, mode)?;
            writeln!(out, "psi({src}) = {}", r.display_tensor(&psi)).unwrap();
            if !psi.free.is_zero() {
                writeln!(out, "  {} [Q]", r.rational().format_tensor(&psi.free)).unwrap();
            }
            for h in r.primes() {
                let s = &psi.shadows[&h.prime()];
                if !s.is_zero() {
                    writeln!(
                        out,
                        "  {} [mod {}]",
                        h.algebra().format_tensor(s),
                        h.prime()
                    )
                    .unwrap();
                }
            }
        }
    }
    Ok(EXIT_OK)
}

fn show(group: Group, prime: Option<u32>, out: &mut String) -> Res<u8> {
    let e = entry(group)?;
    let degrees: Vec<String> = e
        .invariant_degrees
        .iter()
        .map(ToString::to_string)
        .collect();
    writeln!(out, "{group}: invariant degrees {{{}}}", degrees.join(",")).unwrap();
    let primes = match prime {
        Some(p) => vec![p],
        None => e.torsion_primes(),
    };
    for p in primes {
        let h = mod_p(group, p)?;
        let alg = h.algebra();
        writeln!(out, "\nH*({group};F{p})").unwrap();
        for (i, g) in alg.generators().iter().enumerate() {
            let rule = match &g.rule {
                Rule::Exterior => "exterior".to_string(),
                Rule::Truncated(n) => format!("{}^{n} = 0", g.symbol),
                Rule::SquareTo(t) => format!("{}^2 = {}", g.symbol, alg.format(t)),
            };
            writeln!(
                out,
                "  {:<8} degree {:<3} {rule}",
                g.symbol.to_string(),
                g.degree
            )
            .unwrap();
            let b = h.bockstein_generator(i);
            if !b.is_zero() {
                writeln!(out, "           beta = {}", alg.format(b)).unwrap();
            }
            if let Symbol::Zeta(z) = g.symbol {
                if let Some(f) = h.stored_psi(z) {
                    writeln!(out, "           psi  = {}", format_formula(f)).unwrap();
                }
            }
        }
    }
    if prime.is_none() {
        writeln!(out, "\nH*({group};Z)").unwrap();
        for r in &e.reductions {
            writeln!(
                out,
                "  r{}(rho{}) = {}",
                r.prime,
                r.rho,
                nearhopf::notation::format_terms(&r.image)
            )
            .unwrap();
        }
        for r in &e.relations {
            let lhs = nearhopf::notation::format_terms(&r.lhs);
            writeln!(
                out,
                "  {lhs} = {}",
                nearhopf::notation::format_terms(&r.rhs)
            )
            .unwrap();
        }
        for f in &e.psi_formulas {
            writeln!(out, "  psi(rho{}) = {}", f.rho, format_formula(&f.formula)).unwrap();
        }
        let prims: Vec<String> = e.primitives.iter().map(ToString::to_string).collect();
        writeln!(out, "  primitive: {}", prims.join(", ")).unwrap();
    }
    Ok(EXIT_OK)
}

fn verify(
    target: &str,
    json: Option<PathBuf>,
    allow: Option<PathBuf>,
    out: &mut String,
) -> Res<u8> {
    let allow = match allow {
        Some(path) => {
            let text = std::fs::read_to_string(&path).map_err(|source| CliError::Io {
                path: path.clone(),
                source,
            })?;
            AllowList::parse(&text).map_err(|e| CliError::Usage(e.to_string()))?
        }
        None => AllowList::default(),
    };
    let reports: Vec<CheckReport> = if target.eq_ignore_ascii_case("all") {
        nearhopf::verify::run_all()
    } else {
        let g: Group = target.parse().map_err(CliError::Usage)?;
        vec![run_suite(g)]
    };
    let mut unexpected = 0;
    for r in &reports {
        writeln!(out, "{r}").unwrap();
        for f in r.findings() {
            let tag = if allow.contains(&f) {
                "allowed"
            } else {
                "finding"
            };
            writeln!(out, "  {tag}: {f}").unwrap();
        }
        unexpected += r.unexpected(&allow).len();
    }
    if let Some(path) = json {
        let text = serde_json::to_string_pretty(&reports).expect("serializable report");
        std::fs::write(&path, text).map_err(|source| CliError::Io {
            path: path.clone(),
            source,
        })?;
    }
    writeln!(out, "{unexpected} finding(s) beyond the allow-list").unwrap();
    Ok(if unexpected == 0 {
        EXIT_OK
    } else {
        EXIT_MISMATCH
    })
}
