use std::collections::BTreeSet;
use std::fmt;
use std::fmt::Write as _;
use std::path::Path;

use graphprod::canon::canonical_labeling;
use graphprod::grf::{blocks_graph, family_blocks, parse_grf, render_grf, GrfBlock};
use graphprod::laws;
use graphprod::series::counterexample::{demo_counterexample as demo, ADDITIVE_WITNESS};
use graphprod::{
    decode, encode as encode_family, family_for, Error, Graph, GraphFamily, Letter, Monomial,
    NatSeries, PrimeRegistry, Product, Side,
};
use serde_json::{json, Value};

/// What a command prints: text and JSON renderings plus an exit status.
pub struct Outcome {
    pub text: String,
    pub json: Value,
    pub status: u8,
}

impl Outcome {
    fn ok(text: String, json: Value) -> Self {
        Outcome {
            text,
            json,
            status: 0,
        }
    }
}

#[derive(Debug)]
pub enum CliError {
    Io(String, std::io::Error),
    Lib(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Io(path, e) => write!(f, "{path}: {e}"),
            CliError::Lib(e) => write!(f, "{e}"),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Io(..) => 2,
            CliError::Lib(e) => match e {
                Error::Parse { .. } => 2,
                Error::NoRoot(_) | Error::NotDivisible | Error::ZeroDivisor => 4,
                Error::SizeLimitExceeded(_) | Error::TruncationExceeded { .. } => 5,
                _ => 3,
            },
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Io(..) => "Io",
            CliError::Lib(e) => match e {
                Error::InvalidGraph(_) => "InvalidGraph",
                Error::SizeLimitExceeded(_) => "SizeLimitExceeded",
                Error::EmptyRootSet => "EmptyRootSet",
                Error::NotSinglyRooted => "NotSinglyRooted",
                Error::LoopsNotAllowed => "LoopsNotAllowed",
                Error::UnsupportedDomain(_) => "UnsupportedDomain",
                Error::FactorizationNotUnique(_) => "FactorizationNotUnique",
                Error::RegistryMismatch => "RegistryMismatch",
                Error::NotDivisible => "NotDivisible",
                Error::ZeroDivisor => "ZeroDivisor",
                Error::NoRoot(_) => "NoRoot",
                Error::TruncationExceeded { .. } => "TruncationExceeded",
                Error::Parse { .. } => "Parse",
            },
        }
    }
}

fn read_blocks(path: &Path) -> Result<Vec<GrfBlock>, CliError> {
    let text =
        std::fs::read_to_string(path).map_err(|e| CliError::Io(path.display().to_string(), e))?;
    parse_grf(&text)
        .map_err(|e| match e {
            Error::Parse { line, message } => Error::Parse {
                line,
                message: format!("{}: {message}", path.display()),
            },
            other => other,
        })
        .map_err(CliError::from)
}

fn read_graph(path: &Path) -> Result<Graph, CliError> {
    Ok(blocks_graph(&read_blocks(path)?))
}

fn family_json(f: &GraphFamily) -> Value {
    let components: Vec<Value> = f
        .iter()
        .map(|(key, g, m)| {
            json!({
                "key": key.to_hex(),
                "vertices": g.vertex_count(),
                "edges": g.edge_count(),
                "multiplicity": m,
            })
        })
        .collect();
    json!({ "components": components, "grf": render_grf(&family_blocks(f)) })
}

fn graph_outcome(command: &str, g: &Graph) -> Outcome {
    let block = GrfBlock {
        name: command.to_string(),
        multiplicity: 1,
        graph: g.clone(),
    };
    let text = render_grf(&[block]);
    Outcome::ok(
        text.clone(),
        json!({
            "command": command,
            "result": "ok",
            "vertices": g.vertex_count(),
            "edges": g.edge_count(),
            "grf": text,
        }),
    )
}

fn family_outcome(command: &str, f: &GraphFamily, reg: Option<&PrimeRegistry>) -> Outcome {
    let mut json = json!({
        "command": command,
        "result": "ok",
        "family": family_json(f),
        "bound": f.bound(),
    });
    if let Some(reg) = reg {
        json["registry"] = registry_json(reg, &BTreeSet::new());
    }
    Outcome::ok(render_grf(&family_blocks(f)), json)
}

fn used_letters<'a>(monomials: impl IntoIterator<Item = &'a Monomial>) -> BTreeSet<Letter> {
    monomials
        .into_iter()
        .flat_map(|m| m.letters().iter().copied())
        .collect()
}

fn registry_json(reg: &PrimeRegistry, letters: &BTreeSet<Letter>) -> Value {
    let listed: Vec<Value> = letters
        .iter()
        .map(|&l| {
            json!({
                "letter": l.to_string(),
                "kind": l.kind.symbol().to_string(),
                "rank": l.rank,
                "vertices": reg.prime(l).map(Graph::vertex_count),
                "key": reg.key(l).map(|k| k.to_hex()),
            })
        })
        .collect();
    json!({
        "id": reg.id().to_string(),
        "op": reg.op().name(),
        "bound": reg.bound(),
        "letters": listed,
    })
}

/// The dump lines of the given letters, preceded by a registry header.
fn registry_text(reg: &PrimeRegistry, letters: &BTreeSet<Letter>) -> String {
    let mut out = format!(
        "# registry {} op={} bound={}\n",
        reg.id(),
        reg.op(),
        reg.bound()
    );
    for &l in letters {
        let n = reg.prime(l).map_or(0, Graph::vertex_count);
        let key = reg.key(l).map(|k| k.to_hex()).unwrap_or_default();
        let _ = writeln!(out, "{} {} {} {}", l.kind.symbol(), l.rank, n, key);
    }
    out
}

pub fn canon(file: &Path) -> Result<Outcome, CliError> {
    let g = read_graph(file)?;
    let labeling = canonical_labeling(&g, g.vertex_count().max(1))?;
    let canonical = g.permuted(&labeling.position);
    let key = labeling.key.to_hex();
    let block = GrfBlock {
        name: "canonical".into(),
        multiplicity: 1,
        graph: canonical,
    };
    let grf = render_grf(&[block]);
    Ok(Outcome::ok(
        format!("key {key}\n{grf}"),
        json!({ "command": "canon", "result": key, "grf": grf }),
    ))
}

pub fn components(file: &Path) -> Result<Outcome, CliError> {
    let f = GraphFamily::of(&read_graph(file)?)?;
    Ok(family_outcome("components", &f, None))
}

pub fn product(op: Product, a: &Path, b: &Path) -> Result<Outcome, CliError> {
    let g = op.apply(&read_graph(a)?, &read_graph(b)?)?;
    Ok(graph_outcome("product", &g))
}

pub fn power(op: Product, n: usize, file: &Path) -> Result<Outcome, CliError> {
    let g = graphprod::products::power(&read_graph(file)?, n, op)?;
    Ok(graph_outcome("power", &g))
}

pub fn factor(op: Product, registry_bound: usize, file: &Path) -> Result<Outcome, CliError> {
    let g = read_graph(file)?;
    if !g.is_connected() {
        return Err(Error::InvalidGraph(
            "factor expects a connected graph; use encode for families".into(),
        )
        .into());
    }
    let reg = PrimeRegistry::build(op, registry_bound)?;
    let m = reg.factor(&g)?;
    let letters = used_letters([&m]);
    Ok(Outcome::ok(
        format!("{m}\n{}", registry_text(&reg, &letters)),
        json!({
            "command": "factor",
            "result": m.to_string(),
            "degree": m.degree(),
            "registry": registry_json(&reg, &letters),
        }),
    ))
}

fn series_outcome(command: &str, s: &NatSeries, reg: &PrimeRegistry) -> Outcome {
    let letters = used_letters(s.terms().map(|(m, _)| m));
    Outcome::ok(
        format!("{s}\n{}", registry_text(reg, &letters)),
        json!({
            "command": command,
            "result": "ok",
            "series": s.to_string(),
            "bound": s.bound(),
            "registry": registry_json(reg, &letters),
        }),
    )
}

pub fn encode(
    op: Product,
    bound: Option<usize>,
    registry_bound: usize,
    file: &Path,
) -> Result<Outcome, CliError> {
    let reg = PrimeRegistry::build(op, registry_bound)?;
    let f = family_for(&read_graph(file)?, op)?;
    let s = encode_family(&f, &reg, bound)?;
    Ok(series_outcome("encode", &s, &reg))
}

pub fn root(
    op: Product,
    n: usize,
    bound: Option<usize>,
    registry_bound: usize,
    file: &Path,
) -> Result<Outcome, CliError> {
    let reg = PrimeRegistry::build(op, registry_bound)?;
    let f = family_for(&read_graph(file)?, op)?;
    let s = encode_family(&f, &reg, bound)?;
    let r = decode(&s.nth_root(n)?, &reg)?;
    Ok(family_outcome("root", &r, Some(&reg)))
}

pub fn cancel(
    op: Product,
    side: Side,
    bound: Option<usize>,
    registry_bound: usize,
    prod: &Path,
    c: &Path,
) -> Result<Outcome, CliError> {
    let reg = PrimeRegistry::build(op, registry_bound)?;
    let mut p = family_for(&read_graph(prod)?, op)?;
    let mut cf = family_for(&read_graph(c)?, op)?;
    p.set_bound(bound);
    cf.set_bound(bound);
    let a = graphprod::graph_cancel(&p, &cf, side, &reg)?;
    Ok(family_outcome("cancel", &a, Some(&reg)))
}

pub fn demo_counterexample(bound: usize, seq_a: &[u64], seq_b: &[u64]) -> Outcome {
    let r = demo(bound, seq_a, seq_b);
    let yes = |b: bool| if b { "yes" } else { "no" };
    let holds = r.series_differ() && r.squares_agree() && r.cancellation_fails();
    let text = format!(
        "H_a   = {}\nH_b   = {}\nH_a^2 = {}\nH_b^2 = {}\n\
         H_a != H_b: {}\nH_a^2 == H_b^2: {}\nw*g + g == w*g + {n}*g: {}\n",
        r.h_a,
        r.h_b,
        r.square_a,
        r.square_b,
        yes(r.series_differ()),
        yes(r.squares_agree()),
        yes(r.cancellation_fails()),
        n = ADDITIVE_WITNESS,
    );
    let json = json!({
        "command": "demo-counterexample",
        "result": if holds { "ok" } else { "failed" },
        "bound": bound,
        "h_a": r.h_a.to_string(),
        "h_b": r.h_b.to_string(),
        "square_a": r.square_a.to_string(),
        "square_b": r.square_b.to_string(),
        "series_differ": r.series_differ(),
        "squares_agree": r.squares_agree(),
        "additive_cancellation_fails": r.cancellation_fails(),
    });
    Outcome {
        text,
        json,
        status: if holds { 0 } else { 1 },
    }
}

pub fn selftest(seed: u64, iters: usize) -> Result<Outcome, CliError> {
    let reports = laws::run_all(seed, iters)?;
    let mut text = String::new();
    for r in &reports {
        let _ = writeln!(text, "{r}");
    }
    let failed = reports.iter().filter(|r| !r.passed()).count();
    let _ = writeln!(text, "{} checks, {failed} failed", reports.len());
    let checks: Vec<Value> = reports
        .iter()
        .map(|r| {
            json!({
                "name": r.name,
                "cases": r.cases,
                "failures": r.failures,
                "example": r.example,
            })
        })
        .collect();
    Ok(Outcome {
        text,
        json: json!({
            "command": "selftest",
            "result": if failed == 0 { "ok" } else { "failed" },
            "seed": seed,
            "iters": iters,
            "checks": checks,
        }),
        status: if failed == 0 { 0 } else { 1 },
    })
}
