use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use quatnorm::classification::{classify, classify_over_gaussian, GaussianClassification};
use quatnorm::fibonacci::{
    check_identity, fib, fib_hurwitz, pisano_period, special_product, FibIdentity,
    SigmaPermutation,
};
use quatnorm::forms::{represent, represent_rational, verify_universal, FormTuple, DEFAULT_UNIVERSAL_LIMIT};
use quatnorm::lattice::{divide_with_scaled_remainder, right_divide, LatticePoint};
use quatnorm::monoid::{default_max_steps, fib_sequence, MonoidElement, MonoidVariant};
use quatnorm::scalars::{parse_integer, parse_rational};
use quatnorm::subring::{residue_system, to_residue, SubringElement};
use quatnorm::{AlgebraParams, Error, Integer, Quaternion, Rational, Scalar};

const LIMIT_VAR: &str = "QF_SEARCH_LIMIT";

/// Exact quaternion algebras, quadratic forms, integer quaternions and
/// Fibonacci quaternions.
#[derive(Parser)]
#[command(name = "quatnorm", version)]
struct Cli {
    /// Print structured JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Field {
    /// the rationals
    Q,
    /// the Gaussian rationals
    Qi,
}

#[derive(Clone, Copy, ValueEnum)]
enum Variant {
    Add,
    Or,
}

#[derive(Args)]
struct AlgebraArgs {
    #[arg(short = 'b', default_value = "1", allow_negative_numbers = true)]
    b: String,
    #[arg(short = 'c', default_value = "1", allow_negative_numbers = true)]
    c: String,
}

#[derive(Subcommand)]
enum Command {
    /// Ramification data of H(-b,-c), or a witness search over Q(i).
    Classify {
        #[arg(short = 'b', allow_negative_numbers = true)]
        b: String,
        #[arg(short = 'c', allow_negative_numbers = true)]
        c: String,
        #[arg(long, value_enum, default_value = "q")]
        field: Field,
        /// Height bound for the search over Q(i).
        #[arg(long, default_value_t = 5)]
        bound: u32,
    },
    /// First representation of N (integer or p/q) by a diagonal form.
    Represent {
        #[arg(allow_hyphen_values = true)]
        n: String,
        #[arg(long)]
        form: String,
    },
    /// Check that a form represents every 1 <= n <= limit.
    Universal {
        #[arg(long)]
        form: String,
        #[arg(long, default_value_t = DEFAULT_UNIVERSAL_LIMIT)]
        limit: u64,
    },
    /// Divide integer quaternions: x = γy + θ, or n(y)x = γy + n(y)θ with --scaled.
    Qdiv {
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
        #[arg(long)]
        scaled: bool,
        #[command(flatten)]
        algebra: AlgebraArgs,
    },
    /// Residue representatives of Z[v] modulo φ = a + b·v.
    Residues {
        #[arg(long, allow_hyphen_values = true)]
        phi: String,
    },
    /// The integer m with Q ≡ m modulo φ.
    Tores {
        #[arg(allow_hyphen_values = true)]
        q: String,
        #[arg(long, allow_hyphen_values = true)]
        phi: String,
    },
    /// Fibonacci number f_N.
    Fib {
        #[arg(allow_negative_numbers = true)]
        n: i64,
        /// Also print the Lucas number l_N.
        #[arg(long)]
        lucas: bool,
    },
    /// Pisano period of M.
    Pisano { m: u64 },
    /// Fibonacci quaternion with permuted indices.
    Fibquat {
        n: u64,
        #[arg(long, default_value = "0,1,2,3")]
        sigma: String,
        #[arg(long)]
        norm: bool,
    },
    /// Product of the two sign-twisted Fibonacci quaternions for indices N < L.
    Fibprod { n: u64, l: u64 },
    /// Fibonacci sequence in the monoid with 2^k elements.
    MonoidFib {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        a: u64,
        #[arg(long)]
        b: u64,
        #[arg(long, value_enum, default_value = "add")]
        variant: Variant,
    },
    /// Evaluate a Fibonacci identity at the given indices.
    IdentityCheck {
        id: String,
        args: Vec<u64>,
    },
}

struct Report {
    text: String,
    json: Value,
}

enum Failure {
    Usage(String),
    Domain(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) => Failure::Usage(e.to_string()),
            _ => Failure::Domain(e.to_string()),
        }
    }
}

type Outcome = Result<Report, Failure>;

fn search_cap() -> Result<Option<u64>, Failure> {
    match std::env::var(LIMIT_VAR) {
        Ok(v) => v
            .trim()
            .parse::<u64>()
            .map(Some)
            .map_err(|_| Failure::Usage(format!("{LIMIT_VAR} must be a nonnegative integer, got {v:?}"))),
        Err(_) => Ok(None),
    }
}

fn clamp(requested: u64) -> Result<u64, Failure> {
    Ok(search_cap()?.map_or(requested, |cap| requested.min(cap)))
}

fn int_json(n: &Integer) -> Value {
    Value::String(n.to_string())
}

fn quaternion_json<S: Scalar>(q: &Quaternion<S>) -> Value {
    let p = q.params();
    json!({
        "algebra": { "b": int_json(p.b()), "c": int_json(p.c()), "field": p.field().to_string() },
        "coords": q.coord_strings().to_vec(),
        "literal": q.to_string(),
    })
}

fn subring_json(s: &SubringElement) -> Value {
    json!({ "alpha": int_json(&s.alpha), "beta": int_json(&s.beta), "literal": s.to_string() })
}

fn parse_form(s: &str) -> Result<FormTuple, Failure> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 4 {
        return Err(Failure::Usage(format!("--form needs four comma-separated integers, got {s:?}")));
    }
    let mut coeffs: [Integer; 4] = Default::default();
    for (c, p) in coeffs.iter_mut().zip(parts) {
        *c = parse_integer(p)?;
    }
    Ok(FormTuple::new(coeffs)?)
}

fn parse_phi(s: &str) -> Result<SubringElement, Failure> {
    match s.split_once(',') {
        Some((a, b)) => Ok(SubringElement::new(parse_integer(a.trim())?, parse_integer(b.trim())?)),
        None => Ok(s.parse()?),
    }
}

fn classify_cmd(b: &str, c: &str, field: Field, bound: u32) -> Outcome {
    let (b, c) = (parse_integer(b)?, parse_integer(c)?);
    match field {
        Field::Q => {
            let params = AlgebraParams::new(b, c, quatnorm::BaseField::Rationals)?;
            let r = classify(&params)?;
            let primes: Vec<String> = r.ramified_primes.iter().map(ToString::to_string).collect();
            Ok(Report {
                text: format!(
                    "{params}: discriminant {}, {}\nramified primes: {}\nramified at infinity: {}",
                    r.reduced_discriminant,
                    r.verdict,
                    if primes.is_empty() { "none".to_string() } else { primes.join(", ") },
                    r.ramified_at_infinity
                ),
                json: json!({
                    "algebra": params.to_string(),
                    "discriminant": int_json(&r.reduced_discriminant),
                    "verdict": r.verdict.to_string(),
                    "ramified_primes": primes,
                    "ramified_at_infinity": r.ramified_at_infinity,
                }),
            })
        }
        Field::Qi => {
            let bound = u32::try_from(clamp(u64::from(bound))?).unwrap_or(bound);
            let params = AlgebraParams::new(b.clone(), c.clone(), quatnorm::BaseField::GaussianRationals)?;
            match classify_over_gaussian(&b, &c, bound)? {
                GaussianClassification::SplitWitnessed(w) => {
                    let pts: Vec<String> = w.iter().map(ToString::to_string).collect();
                    Ok(Report {
                        text: format!(
                            "{params}: Split, witness (x, y, z) = ({}) with -{b}x^2 - {c}y^2 = z^2",
                            pts.join(", ")
                        ),
                        json: json!({ "algebra": params.to_string(), "verdict": "Split", "witness": pts, "bound": bound }),
                    })
                }
                GaussianClassification::NoWitnessFound { bound } => Ok(Report {
                    text: format!("{params}: no witness of height <= {bound} (not a proof of division)"),
                    json: json!({ "algebra": params.to_string(), "verdict": "NoWitnessFound", "bound": bound }),
                }),
            }
        }
    }
}

fn represent_cmd(n: &str, form: &str) -> Outcome {
    let form = parse_form(form)?;
    let m = parse_rational(n)?;
    if m.is_integer() {
        let n = m.to_integer();
        if let Some(cap) = search_cap()? {
            if n > Integer::from(cap) {
                return Err(Failure::Domain(format!("{n} exceeds {LIMIT_VAR} = {cap}")));
            }
        }
        let found = represent(&n, &form)?;
        let text = match &found {
            Some(xs) => {
                let xs: Vec<String> = xs.iter().map(ToString::to_string).collect();
                format!("{n} = {form} at ({})", xs.join(", "))
            }
            None => format!("{n} is not represented by {form}"),
        };
        let coords = found.map(|xs| xs.iter().map(int_json).collect::<Vec<_>>());
        return Ok(Report {
            text,
            json: json!({ "n": n.to_string(), "form": form.to_string(), "representation": coords }),
        });
    }
    let [a, b, c, d] = form.coeffs().clone();
    if a != Integer::from(1) || d != &b * &c {
        return Err(Failure::Domain(format!(
            "rational targets need a norm form (1,b,c,bc), got {form}"
        )));
    }
    let xs = represent_rational(&m, &b, &c)?;
    let strs: Vec<String> = xs.iter().map(Rational::to_string).collect();
    Ok(Report {
        text: format!("{m} = {form} at ({})", strs.join(", ")),
        json: json!({ "n": m.to_string(), "form": form.to_string(), "representation": strs }),
    })
}

fn universal_cmd(form: &str, limit: u64) -> Outcome {
    let form = parse_form(form)?;
    let effective = clamp(limit)?;
    let r = verify_universal(&form, effective)?;
    let text = match r.counterexample {
        None => format!("true: {form} represents every n in 1..={effective}"),
        Some(n) => format!("false: {form} does not represent {n}"),
    };
    Ok(Report {
        text,
        json: json!({
            "form": form.to_string(),
            "universal": r.universal,
            "limit": effective,
            "requested_limit": limit,
            "counterexample": r.counterexample,
        }),
    })
}

fn qdiv_cmd(x: &str, y: &str, scaled: bool, algebra: &AlgebraArgs) -> Outcome {
    let params = AlgebraParams::new(parse_integer(&algebra.b)?, parse_integer(&algebra.c)?, quatnorm::BaseField::Rationals)?;
    let x = LatticePoint::new(Quaternion::parse(x, params.clone())?, quatnorm::lattice::LatticeKind::Lipschitz)?;
    let y = LatticePoint::new(Quaternion::parse(y, params.clone())?, quatnorm::lattice::LatticeKind::Lipschitz)?;
    let (gamma, theta) = if scaled {
        divide_with_scaled_remainder(&x, &y)?
    } else {
        right_divide(&x, &y)?
    };
    let identity = if scaled {
        "n(y)x = gamma*y + n(y)theta"
    } else {
        "x = gamma*y + theta"
    };
    Ok(Report {
        text: format!(
            "{identity} in {params}\ngamma = {gamma}\ntheta = {theta}\nn(theta) = {} < n(y) = {}",
            theta.norm(),
            y.norm()
        ),
        json: json!({
            "identity": identity,
            "gamma": quaternion_json(gamma.quaternion()),
            "theta": quaternion_json(theta.quaternion()),
            "norm_theta": int_json(&theta.norm()),
            "norm_y": int_json(&y.norm()),
        }),
    })
}

fn residues_cmd(phi: &str) -> Outcome {
    let phi = parse_phi(phi)?;
    if let Some(cap) = search_cap()? {
        if phi.norm() > Integer::from(cap) {
            return Err(Failure::Domain(format!("norm of {phi} exceeds {LIMIT_VAR} = {cap}")));
        }
    }
    let r = residue_system(&phi)?;
    let lines: Vec<String> = r
        .representatives()
        .iter()
        .enumerate()
        .map(|(m, rep)| format!("{m} -> {rep}"))
        .collect();
    Ok(Report {
        text: format!("Z[v] mod {phi}: {} classes\n{}", r.len(), lines.join("\n")),
        json: json!({
            "phi": subring_json(&phi),
            "classes": r.len(),
            "representatives": r.representatives().iter().map(subring_json).collect::<Vec<_>>(),
        }),
    })
}

fn tores_cmd(q: &str, phi: &str) -> Outcome {
    let q: SubringElement = q.parse()?;
    let phi = parse_phi(phi)?;
    let m = to_residue(&q, &phi)?;
    Ok(Report {
        text: format!("{q} = {m} mod {phi}"),
        json: json!({ "q": subring_json(&q), "phi": subring_json(&phi), "residue": int_json(&m) }),
    })
}

fn fib_cmd(n: i64, lucas: bool) -> Outcome {
    let f = fib(n)?;
    if lucas {
        let l = quatnorm::fibonacci::lucas(n)?;
        Ok(Report {
            text: format!("{f}\n{l}"),
            json: json!({ "n": n, "fib": int_json(&f), "lucas": int_json(&l) }),
        })
    } else {
        Ok(Report {
            text: f.to_string(),
            json: json!({ "n": n, "fib": int_json(&f) }),
        })
    }
}

fn pisano_cmd(m: u64) -> Outcome {
    if let Some(cap) = search_cap()? {
        if m > cap {
            return Err(Failure::Domain(format!("{m} exceeds {LIMIT_VAR} = {cap}")));
        }
    }
    let p = pisano_period(m)?;
    Ok(Report {
        text: p.to_string(),
        json: json!({ "m": m, "period": p }),
    })
}

fn fibquat_cmd(n: u64, sigma: &str, norm: bool) -> Outcome {
    let sigma: SigmaPermutation = sigma.parse()?;
    let f = fib_hurwitz(n, sigma)?;
    let mut json = json!({ "n": n, "sigma": sigma.to_string(), "value": quaternion_json(&f.value) });
    let mut text = f.value.to_string();
    if norm {
        let nv = f.value.norm();
        text.push_str(&format!("\nnorm = {nv}"));
        json["norm"] = Value::String(nv.to_string());
    }
    Ok(Report { text, json })
}

fn fibprod_cmd(n: u64, l: u64) -> Outcome {
    let p = special_product(n, l)?;
    Ok(Report {
        text: format!(
            "product = {}\ntrace = {} (2f(n+l+3): {})\nproduct - trace/2 = {}\nstated closed form = {} ({})",
            p.product,
            p.trace,
            p.trace_matches(),
            p.residual,
            p.closed_form,
            if p.closed_form_matches() { "matches" } else { "does not match" }
        ),
        json: json!({
            "n": n,
            "l": l,
            "product": quaternion_json(&p.product),
            "trace": p.trace.to_string(),
            "trace_matches": p.trace_matches(),
            "residual": quaternion_json(&p.residual),
            "closed_form": quaternion_json(&p.closed_form),
            "closed_form_matches": p.closed_form_matches(),
        }),
    })
}

fn monoid_cmd(k: u32, a: u64, b: u64, variant: Variant) -> Outcome {
    let variant = match variant {
        Variant::Add => MonoidVariant::TruncatedAdd,
        Variant::Or => MonoidVariant::ComponentwiseOr,
    };
    let (a, b) = (MonoidElement::new(a, k)?, MonoidElement::new(b, k)?);
    let tr = fib_sequence(a, b, variant, default_max_steps(k))?;
    let terms: Vec<String> = tr.terms.iter().map(ToString::to_string).collect();
    Ok(Report {
        text: format!("{}\nt = {}\nlimit = {}", terms.join(", "), tr.t, tr.limit),
        json: json!({
            "k": k,
            "variant": variant.to_string(),
            "terms": terms,
            "indices": tr.terms.iter().map(MonoidElement::index).collect::<Vec<_>>(),
            "t": tr.t,
            "limit": tr.limit.to_string(),
        }),
    })
}

fn identity_cmd(id: &str, args: &[u64]) -> Outcome {
    let id: FibIdentity = id.parse()?;
    if !check_identity(id, args)? {
        return Err(Failure::Domain(format!("{id} fails at {args:?}")));
    }
    Ok(Report {
        text: "true".into(),
        json: json!({ "identity": id.name(), "args": args, "holds": true }),
    })
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Classify { b, c, field, bound } => classify_cmd(b, c, *field, *bound),
        Command::Represent { n, form } => represent_cmd(n, form),
        Command::Universal { form, limit } => universal_cmd(form, *limit),
        Command::Qdiv { x, y, scaled, algebra } => qdiv_cmd(x, y, *scaled, algebra),
        Command::Residues { phi } => residues_cmd(phi),
        Command::Tores { q, phi } => tores_cmd(q, phi),
        Command::Fib { n, lucas } => fib_cmd(*n, *lucas),
        Command::Pisano { m } => pisano_cmd(*m),
        Command::Fibquat { n, sigma, norm } => fibquat_cmd(*n, sigma, *norm),
        Command::Fibprod { n, l } => fibprod_cmd(*n, *l),
        Command::MonoidFib { k, a, b, variant } => monoid_cmd(*k, *a, *b, *variant),
        Command::IdentityCheck { id, args } => identity_cmd(id, args),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&report.json).expect("serialisable"));
            } else {
                println!("{}", report.text);
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
