//! `degen`: inspect structure vectors, act on them, and certify degenerations.

use std::fmt::Write as _;
use std::io::{Read, Write as _};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use degen_core::action::{act, enumerate_orbit};
use degen_core::algebras::Invariants;
use degen_core::degen::{classify, necessary_conditions, witness_to_abelian, DegenerationVerdict, VerdictKind};
use degen_core::grading::{hypothesis_holds, search_weight_witness, truncate};
use degen_core::modspan::{fg_span, in_p, in_u};
use degen_core::{catalog, BasisChange, Error, FieldSpec, Scalar, StructureVector, WeightVector};
use serde_json::json;

#[derive(Parser)]
#[command(name = "degen", version, about = "Exact structure-constant computations and degeneration certificates")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the invariants of a structure vector.
    Info { file: String },
    /// Apply a change of basis; prints the resulting vector as JSON.
    Act { file: String, basis: String },
    /// Truncate by a weighting, or search for a weighting that reaches a target.
    Grade {
        file: String,
        /// Comma-separated weights, e.g. 1,1,2.
        #[arg(long, allow_hyphen_values = true)]
        q: Option<WeightVector>,
        /// Target vector to compare against or search for.
        #[arg(long)]
        target: Option<String>,
        /// Weight bound for the search when --q is absent.
        #[arg(long, default_value_t = 3)]
        bound: u32,
    },
    /// Check whether FROM can degenerate to TO.
    Degen {
        from: String,
        to: String,
        /// Search weightings in [-Q, Q]^n when no obstruction is found.
        #[arg(long)]
        search: Option<u32>,
    },
    /// Enumerate the orbit over a small prime field.
    Orbit {
        file: String,
        /// Also list the orbit members.
        #[arg(long)]
        members: bool,
    },
    /// Dimension and echelon basis of the span of the orbit.
    Span {
        file: String,
        /// Reduce a rational input modulo this prime first.
        #[arg(long)]
        p: Option<u64>,
    },
    /// Level-one classification with its certificate.
    Classify { file: String },
    /// Print a named structure vector as JSON.
    Catalog {
        /// abelian, rho, eta, delta, epsilon, k2, hat, tilde or g-family.
        name: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        beta: Option<String>,
        /// Comma-separated values for g-family.
        #[arg(long, allow_hyphen_values = true)]
        betas: Option<String>,
        /// One-based r,s,t for hat and tilde.
        #[arg(long)]
        indices: Option<String>,
        /// Work over F_p instead of Q.
        #[arg(long)]
        p: Option<u64>,
    },
}

enum Failure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } => Failure::Usage(e.to_string()),
            other => Failure::Domain(other),
        }
    }
}

type Outcome = Result<String, Failure>;

fn read_source(path: &str) -> Result<String, Failure> {
    if path == "-" {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| Failure::Usage(format!("stdin: {e}")))?;
        Ok(text)
    } else {
        std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{path}: {e}")))
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &str) -> Result<T, Failure> {
    let text = read_source(path)?;
    serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{path}: {e}")))
}

fn pretty<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable")
}

/// Nonzero entries as `λ(i,j,k) = x`, one-based.
fn sparse(v: &StructureVector) -> String {
    let parts: Vec<String> = v
        .support()
        .map(|((i, j, k), x)| format!("λ({},{},{}) = {x}", i + 1, j + 1, k + 1))
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join("; ")
    }
}

fn info(file: &str, as_json: bool) -> Outcome {
    let v: StructureVector = read_json(file)?;
    let inv = Invariants::of(&v);
    let (p, u) = (in_p(&v), in_u(&v));
    if as_json {
        return Ok(pretty(&json!({
            "n": v.n(),
            "field": v.field(),
            "invariants": inv,
            "in_p": p,
            "in_u": u,
        })));
    }
    let mut out = String::new();
    let yes = |b: bool| if b { "yes" } else { "no" };
    writeln!(out, "n: {}", v.n()).unwrap();
    writeln!(out, "field: {}", v.field()).unwrap();
    writeln!(out, "entries: {}", sparse(&v)).unwrap();
    writeln!(out, "rank a~: {}", inv.rank_a).unwrap();
    writeln!(out, "rank b~: {}", inv.rank_b).unwrap();
    writeln!(out, "dim ann_L: {}", inv.ann.left).unwrap();
    writeln!(out, "dim ann_R: {}", inv.ann.right).unwrap();
    writeln!(out, "dim ann: {}", inv.ann.two_sided).unwrap();
    writeln!(out, "dim square: {}", inv.square_dim).unwrap();
    writeln!(out, "skew: {}", yes(inv.skew)).unwrap();
    writeln!(out, "Lie: {}", yes(inv.lie)).unwrap();
    writeln!(out, "metabelian: {}", yes(inv.metabelian)).unwrap();
    writeln!(out, "commutative: {}", yes(inv.commutative)).unwrap();
    writeln!(out, "unimodular: {}", yes(inv.unimodular)).unwrap();
    writeln!(out, "condition (**): {}", yes(inv.star_star)).unwrap();
    writeln!(out, "condition (*): {}", yes(inv.star)).unwrap();
    writeln!(out, "in P: {}", yes(p)).unwrap();
    write!(out, "in U_n: {}", yes(u)).unwrap();
    Ok(out)
}

fn grade(file: &str, q: Option<WeightVector>, target: Option<&str>, bound: u32, as_json: bool) -> Outcome {
    let v: StructureVector = read_json(file)?;
    let target: Option<StructureVector> = target.map(read_json).transpose()?;
    match (q, target) {
        (Some(q), target) => {
            let t = truncate(&v, &q)?;
            let holds = hypothesis_holds(&v, &q)?;
            let matches = target.map(|tv| tv == t);
            if as_json {
                return Ok(pretty(&json!({
                    "q": q,
                    "hypothesis": holds,
                    "truncation": t,
                    "matches_target": matches,
                })));
            }
            let mut out = format!(
                "q: {q}\ntruncation: {}\nhypothesis: {}",
                sparse(&t),
                if holds { "holds" } else { "fails" }
            );
            if let Some(m) = matches {
                write!(out, "\ntarget: {}", if m { "matches" } else { "differs" }).unwrap();
            }
            Ok(out)
        }
        (None, Some(target)) => {
            let found = search_weight_witness(&v, &target, bound)?;
            if as_json {
                return Ok(pretty(&json!({ "bound": bound, "q": found })));
            }
            Ok(match found {
                Some(q) => format!("found q: {q}"),
                None => format!("no weighting in [-{bound}, {bound}]^{} reaches the target", v.n()),
            })
        }
        (None, None) => Err(Failure::Usage("grade needs --q or --target".into())),
    }
}

fn degen(from: &str, to: &str, search: Option<u32>, as_json: bool) -> Outcome {
    let lambda: StructureVector = read_json(from)?;
    let mu: StructureVector = read_json(to)?;
    let mut verdict = necessary_conditions(&lambda, &mu)?;
    if verdict.kind == VerdictKind::Inconclusive {
        if mu.is_zero() {
            verdict = witness_to_abelian(&lambda)?;
        } else if let Some(bound) = search {
            if let Some(q) = search_weight_witness(&lambda, &mu, bound)? {
                let basis = BasisChange::identity(lambda.n(), lambda.field());
                verdict = DegenerationVerdict::grading(lambda, mu, q, basis)?;
            }
        }
    }
    if as_json {
        Ok(pretty(&verdict))
    } else {
        Ok(verdict.to_string())
    }
}

fn orbit(file: &str, members: bool, as_json: bool) -> Outcome {
    let v: StructureVector = read_json(file)?;
    let orbit = enumerate_orbit(&v)?;
    let mut listed: Vec<&StructureVector> = orbit.members.iter().collect();
    listed.sort_by_key(|m| m.to_string());
    if as_json {
        let mut value = json!({
            "field": orbit.field,
            "size": orbit.len(),
            "group_order": orbit.group_order,
        });
        if members {
            value["members"] = json!(listed);
        }
        return Ok(pretty(&value));
    }
    let mut out = format!("orbit size: {}\ngroup order: {}", orbit.len(), orbit.group_order);
    if members {
        for m in listed {
            write!(out, "\n{}", sparse(m)).unwrap();
        }
    }
    Ok(out)
}

fn span(file: &str, p: Option<u64>, as_json: bool) -> Outcome {
    let mut v: StructureVector = read_json(file)?;
    if let Some(p) = p {
        v = v.convert(FieldSpec::prime(p)?)?;
    }
    let s = fg_span(&v)?;
    if as_json {
        return Ok(pretty(&s));
    }
    let mut out = format!("dimension: {}", s.dim());
    for b in s.vectors() {
        write!(out, "\n{}", sparse(&b)).unwrap();
    }
    Ok(out)
}

fn classify_cmd(file: &str, as_json: bool) -> Outcome {
    let v: StructureVector = read_json(file)?;
    let label = classify(&v)?;
    if as_json {
        return Ok(pretty(&label));
    }
    let mut out = format!("label: {label}");
    if let Some(w) = label.witness() {
        write!(out, "\ncertificate: {w}\ndegenerates to: {}", sparse(&w.to)).unwrap();
    }
    Ok(out)
}

fn scalar_arg(field: FieldSpec, flag: &str, text: Option<&str>) -> Result<Scalar, Failure> {
    let text = text.ok_or_else(|| Failure::Usage(format!("--{flag} is required")))?;
    field
        .parse_scalar(text)
        .map_err(|e| Failure::Usage(format!("--{flag}: {e}")))
}

struct CatalogArgs<'a> {
    name: &'a str,
    n: Option<usize>,
    alpha: Option<&'a str>,
    beta: Option<&'a str>,
    betas: Option<&'a str>,
    indices: Option<&'a str>,
    p: Option<u64>,
}

fn catalog_cmd(args: CatalogArgs<'_>) -> Outcome {
    let field = match args.p {
        Some(p) => FieldSpec::prime(p)?,
        None => FieldSpec::Rationals,
    };
    let n = || args.n.ok_or_else(|| Failure::Usage("--n is required".into()));
    let indices = || -> Result<(usize, usize, usize), Failure> {
        let text = args.indices.ok_or_else(|| Failure::Usage("--indices is required".into()))?;
        let parts: Vec<usize> = text
            .split(',')
            .map(|s| s.trim().parse::<usize>())
            .collect::<Result<_, _>>()
            .map_err(|e| Failure::Usage(format!("--indices: {e}")))?;
        match parts.as_slice() {
            &[r, s, t] if r >= 1 && s >= 1 && t >= 1 => Ok((r - 1, s - 1, t - 1)),
            _ => Err(Failure::Usage("--indices takes three one-based values r,s,t".into())),
        }
    };
    let v = match args.name {
        "abelian" => catalog::abelian(n()?, field)?,
        "rho" => catalog::rho(n()?, field)?,
        "eta" => catalog::eta(n()?, field)?,
        "delta" => catalog::delta(n()?, field)?,
        "epsilon" => catalog::epsilon(n()?, field, &scalar_arg(field, "alpha", args.alpha)?)?,
        "k2" => catalog::k2_member(
            field,
            &scalar_arg(field, "alpha", args.alpha)?,
            &scalar_arg(field, "beta", args.beta)?,
        )?,
        "hat" => {
            let (r, s, t) = indices()?;
            catalog::lambda_hat(r, s, t, n()?, field)?
        }
        "tilde" => {
            let (r, s, t) = indices()?;
            catalog::lambda_tilde(r, s, t, n()?, field)?
        }
        "g-family" => {
            let text = args.betas.ok_or_else(|| Failure::Usage("--betas is required".into()))?;
            let betas = text
                .split(',')
                .map(|s| scalar_arg(field, "betas", Some(s)))
                .collect::<Result<Vec<_>, _>>()?;
            catalog::g_family(field, &scalar_arg(field, "alpha", args.alpha)?, &betas)?
        }
        other => return Err(Failure::Usage(format!("unknown catalog name {other:?}"))),
    };
    Ok(serde_json::to_string(&v).expect("serializable"))
}

fn run(cli: Cli) -> Outcome {
    let as_json = cli.json;
    match cli.command {
        Command::Info { file } => info(&file, as_json),
        Command::Act { file, basis } => {
            let v: StructureVector = read_json(&file)?;
            let g: BasisChange = read_json(&basis)?;
            Ok(serde_json::to_string(&act(&v, &g)?).expect("serializable"))
        }
        Command::Grade { file, q, target, bound } => grade(&file, q, target.as_deref(), bound, as_json),
        Command::Degen { from, to, search } => degen(&from, &to, search, as_json),
        Command::Orbit { file, members } => orbit(&file, members, as_json),
        Command::Span { file, p } => span(&file, p, as_json),
        Command::Classify { file } => classify_cmd(&file, as_json),
        Command::Catalog {
            name,
            n,
            alpha,
            beta,
            betas,
            indices,
            p,
        } => catalog_cmd(CatalogArgs {
            name: &name,
            n,
            alpha: alpha.as_deref(),
            beta: beta.as_deref(),
            betas: betas.as_deref(),
            indices: indices.as_deref(),
            p,
        }),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            let _ = writeln!(std::io::stdout(), "{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
