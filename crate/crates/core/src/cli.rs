//! The `fdt` command line.
//!
//! [`run`] takes the argument list and returns the exit status with
//! everything that would go to stdout and stderr, so the binary is a thin
//! wrapper and tests can call it directly. Status 1 is a usage error,
//! status 2 a file that fails to parse or validate, or a failed operation.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};

use crate::basis::{find_isomorphism, BasisExt, BasisRef, FinitePresentation};
use crate::constructors::{FunSpaceBasis, ProductBasis, RecTreeBasis, SumBasis};
use crate::fixpoint::{fix_finite, kleene_chain};
use crate::format::{braces, write_basis, write_map, FormatError, Workspace};
use crate::ideal::Ideal;
use crate::lambda::{denote, parse_term_file, token_to_value, value_to_token, Env, Signature};
use crate::mapping::compose;
use crate::universal::{classify_projection, embed, path_string, sub_combinator};

pub const DEFAULT_FUEL: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser, Debug)]
#[command(name = "fdt", about = "Finitary bases, approximable mappings and the universal domain")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Validate every basis and map in a file.
    Check { file: PathBuf },
    /// Least upper bound of some elements.
    Lub {
        file: PathBuf,
        labels: Vec<String>,
        #[arg(long)]
        basis: Option<String>,
    },
    /// Greatest lower bound of a nonempty set of elements.
    Glb {
        file: PathBuf,
        labels: Vec<String>,
        #[arg(long)]
        basis: Option<String>,
    },
    /// The ideal generated by some elements.
    Ideal {
        file: PathBuf,
        labels: Vec<String>,
        #[arg(long)]
        basis: Option<String>,
    },
    /// Whether a set of elements has an upper bound.
    Consistent {
        file: PathBuf,
        labels: Vec<String>,
        #[arg(long)]
        basis: Option<String>,
    },
    /// Apply a map to the ideal generated by some elements.
    Apply {
        file: PathBuf,
        labels: Vec<String>,
        #[arg(long)]
        map: Option<String>,
    },
    /// Compose two maps of a file: `g` after `f`.
    Compose { file: PathBuf, g: String, f: String },
    /// Least fixed point of a self-map.
    Fix {
        file: PathBuf,
        #[arg(long)]
        map: Option<String>,
        #[arg(long, default_value_t = DEFAULT_FUEL)]
        fuel: usize,
    },
    /// Evaluate the terms of a term file.
    Eval {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_FUEL)]
        fuel: usize,
        /// Value of a declared variable, as `name=label`.
        #[arg(long = "arg")]
        args: Vec<String>,
        #[arg(long, value_enum, default_value_t = Sig::Nats)]
        sig: Sig,
        /// Largest numeral, or longest stream.
        #[arg(long)]
        size: Option<usize>,
    },
    /// Build a basis from the bases of a file and print it.
    Construct {
        #[arg(value_enum)]
        kind: Kind,
        file: PathBuf,
        bases: Vec<String>,
        #[arg(long, default_value_t = 1)]
        depth: usize,
    },
    /// Embed a basis into the universal domain.
    Embed {
        file: PathBuf,
        #[arg(long, value_delimiter = ',')]
        order: Option<Vec<String>>,
        #[arg(long)]
        basis: Option<String>,
    },
    /// The largest finitary projection below a self-map.
    Sub {
        file: PathBuf,
        #[arg(long)]
        map: Option<String>,
    },
    /// Classify a self-map as a retraction or projection.
    Classify {
        file: PathBuf,
        #[arg(long)]
        map: Option<String>,
    },
    /// Search for an order isomorphism between two bases.
    Iso { file: PathBuf, a: String, b: String },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Kind {
    Product,
    Sum,
    Funspace,
    Rectree,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Sig {
    Nats,
    Streams,
}

enum Failure {
    Usage(String),
    Invalid(String),
}

fn invalid(e: impl std::fmt::Display) -> Failure {
    Failure::Invalid(e.to_string())
}

type Res = Result<String, Failure>;

/// Runs one command. `argv[0]` is the program name.
pub fn run<I, S>(argv: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: 1, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    match dispatch(cli.cmd) {
        Ok(stdout) => Outcome { code: 0, stdout, stderr: String::new() },
        Err(Failure::Usage(m)) => Outcome { code: 1, stdout: String::new(), stderr: format!("error: {m}\n") },
        Err(Failure::Invalid(m)) => Outcome { code: 2, stdout: String::new(), stderr: format!("error: {m}\n") },
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

/// Loads a file. `include` paths are relative to its directory.
fn load(path: &Path) -> Result<Workspace, Failure> {
    let text = read(path)?;
    let mut ws = Workspace::default();
    let dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
    let mut resolve = |rel: &str| -> Result<String, FormatError> {
        std::fs::read_to_string(dir.join(rel))
            .map_err(|e| FormatError::Include { path: rel.to_string(), message: e.to_string() })
    };
    ws.load(&text, &mut resolve).map_err(|e| invalid(format!("{}: {e}", path.display())))?;
    Ok(ws)
}

fn elements(b: &BasisRef, labels: &[String]) -> Result<Vec<crate::basis::Token>, Failure> {
    b.resolve(labels).map_err(invalid)
}

fn dispatch(cmd: Cmd) -> Res {
    match cmd {
        Cmd::Check { file } => check(&load(&file)?),
        Cmd::Lub { file, labels, basis } => {
            let ws = load(&file)?;
            let b = ws.basis_or_last(basis.as_deref()).map_err(invalid)?;
            let t = b.lub(&elements(b, &labels)?).map_err(invalid)?;
            Ok(format!("{}\n", b.label(t)))
        }
        Cmd::Glb { file, labels, basis } => {
            let ws = load(&file)?;
            let b = ws.basis_or_last(basis.as_deref()).map_err(invalid)?;
            let t = b.glb(&elements(b, &labels)?).map_err(invalid)?;
            Ok(format!("{}\n", b.label(t)))
        }
        Cmd::Ideal { file, labels, basis } => {
            let ws = load(&file)?;
            let b = ws.basis_or_last(basis.as_deref()).map_err(invalid)?;
            let x = Ideal::close(b, &elements(b, &labels)?).map_err(invalid)?;
            Ok(format!("{}\n", braces(x.labels())))
        }
        Cmd::Consistent { file, labels, basis } => {
            let ws = load(&file)?;
            let b = ws.basis_or_last(basis.as_deref()).map_err(invalid)?;
            Ok(format!("{}\n", b.consistent(&elements(b, &labels)?)))
        }
        Cmd::Apply { file, labels, map } => {
            let ws = load(&file)?;
            let f = ws.map_or_last(map.as_deref()).map_err(invalid)?;
            let x = Ideal::close(f.source(), &elements(f.source(), &labels)?).map_err(invalid)?;
            Ok(format!("{}\n", braces(f.apply(&x).map_err(invalid)?.labels())))
        }
        Cmd::Compose { file, g, f } => {
            let ws = load(&file)?;
            let (gm, fm) = (ws.map(&g).map_err(invalid)?, ws.map(&f).map_err(invalid)?);
            let h = compose(gm, fm).map_err(invalid)?;
            Ok(write_map(
                &format!("{g}.{f}"),
                basis_name(&ws, fm.source()),
                basis_name(&ws, gm.target()),
                &h,
            ))
        }
        Cmd::Fix { file, map, fuel } => fix(&load(&file)?, map.as_deref(), fuel),
        Cmd::Eval { file, fuel, args, sig, size } => eval(&read(&file)?, fuel, &args, sig, size),
        Cmd::Construct { kind, file, bases, depth } => construct(&load(&file)?, kind, &bases, depth),
        Cmd::Embed { file, order, basis } => {
            let ws = load(&file)?;
            let b = ws.basis_or_last(basis.as_deref()).map_err(invalid)?;
            embed_report(b, order.as_deref())
        }
        Cmd::Sub { file, map } => {
            let ws = load(&file)?;
            let f = ws.map_or_last(map.as_deref()).map_err(invalid)?;
            let s = sub_combinator(f).map_err(invalid)?;
            let d = basis_name(&ws, f.source());
            let name = map.unwrap_or_else(|| ws.maps().last().expect("map exists").0.clone());
            Ok(write_map(&format!("sub({name})"), d, d, &s))
        }
        Cmd::Classify { file, map } => {
            let ws = load(&file)?;
            let f = ws.map_or_last(map.as_deref()).map_err(invalid)?;
            Ok(format!("{}\n", classify_projection(f).map_err(invalid)?))
        }
        Cmd::Iso { file, a, b } => {
            let ws = load(&file)?;
            let (x, y) = (ws.basis(&a).map_err(invalid)?, ws.basis(&b).map_err(invalid)?);
            match find_isomorphism(x.as_ref(), y.as_ref()).map_err(invalid)? {
                None => Ok("not isomorphic\n".into()),
                Some(pairs) => {
                    let mut lines: Vec<String> =
                        pairs.iter().map(|&(s, t)| format!("{} => {}\n", x.label(s), y.label(t))).collect();
                    lines.sort();
                    Ok(lines.concat())
                }
            }
        }
    }
}

/// The name a basis was loaded under.
fn basis_name<'a>(ws: &'a Workspace, b: &BasisRef) -> &'a str {
    ws.bases()
        .iter()
        .find(|(_, c)| Arc::ptr_eq(c, b))
        .map(|(n, _)| n.as_str())
        .expect("maps refer to loaded bases")
}

fn check(ws: &Workspace) -> Res {
    if ws.bases().is_empty() {
        return Err(invalid(FormatError::NoBasis));
    }
    let mut out = String::new();
    for (name, b) in ws.bases() {
        out.push_str(&format!("basis {name}: {} elements, bottom {}\n", b.len(), b.label(b.bottom())));
    }
    for (name, f) in ws.maps() {
        out.push_str(&format!(
            "map {name} : {} -> {}, steps: {}\n",
            basis_name(ws, f.source()),
            basis_name(ws, f.target()),
            f.steps().len()
        ));
    }
    Ok(out)
}

fn fix(ws: &Workspace, map: Option<&str>, fuel: usize) -> Res {
    let f = ws.map_or_last(map).map_err(invalid)?;
    let chain = kleene_chain(f).map_err(invalid)?;
    let exact = fix_finite(f).map_err(invalid)?;
    // `chain` ends with the first repeat, so `chain.len() - 1` applications
    // reach the fixed point.
    let needed = chain.len() - 1;
    let (value, iterations, converged) = if fuel >= needed {
        (exact.value, needed, true)
    } else {
        (Ideal::principal(f.source(), chain[fuel]), fuel, false)
    };
    Ok(format!("{}\niterations: {iterations}\nconverged: {converged}\n", braces(value.labels())))
}

fn eval(text: &str, fuel: usize, args: &[String], sig: Sig, size: Option<usize>) -> Res {
    let base = match sig {
        Sig::Nats => Signature::flat_nats(size.unwrap_or(crate::lambda::DEFAULT_NAT_MAX)),
        Sig::Streams => Signature::streams(size.unwrap_or(crate::lambda::DEFAULT_STREAM_LEN)),
    };
    let (file, sig) = parse_term_file(text, &base).map_err(invalid)?;
    let sig = Arc::new(sig);
    let mut given: BTreeMap<String, String> = BTreeMap::new();
    for a in args {
        let (name, label) = a.split_once('=').ok_or_else(|| Failure::Usage(format!("expected name=label, got `{a}`")))?;
        given.insert(name.to_string(), label.to_string());
    }
    let mut env = Env::new();
    for (name, ty) in &file.vars {
        if let Some(label) = given.remove(name) {
            let b = sig.basis_of(ty).map_err(invalid)?;
            let t = b.lookup(&label).ok_or_else(|| invalid(format!("`{label}` is not an element of {ty}")))?;
            env.insert(name.clone(), token_to_value(&sig, t, ty).map_err(invalid)?);
        }
    }
    if let Some(name) = given.keys().next() {
        return Err(Failure::Usage(format!("`{name}` is not a declared variable")));
    }
    let mut out = String::new();
    for (name, ty, term) in &file.terms {
        let v = denote(term, &env, &sig, fuel).map_err(invalid)?;
        let shown = match value_to_token(&sig, &v, ty) {
            Ok(t) => sig.basis_of(ty).map_err(invalid)?.label(t),
            Err(_) => "<function>".to_string(),
        };
        out.push_str(&format!("{name} : {ty} = {shown}\n"));
    }
    Ok(out)
}

fn construct(ws: &Workspace, kind: Kind, names: &[String], depth: usize) -> Res {
    let arity = if matches!(kind, Kind::Rectree) { 1 } else { 2 };
    if names.len() != arity {
        return Err(Failure::Usage(format!("expected {arity} basis names, got {}", names.len())));
    }
    let get = |i: usize| ws.basis(&names[i]).map_err(invalid).cloned();
    let (name, b): (String, BasisRef) = match kind {
        Kind::Product => (format!("{}*{}", names[0], names[1]), ProductBasis::new(get(0)?, get(1)?)),
        Kind::Sum => (format!("{}+{}", names[0], names[1]), SumBasis::new(get(0)?, get(1)?)),
        Kind::Funspace => (
            format!("{}=>{}", names[0], names[1]),
            FunSpaceBasis::new(get(0)?, get(1)?).map_err(invalid)?,
        ),
        Kind::Rectree => (format!("tree({},{depth})", names[0]), RecTreeBasis::new(get(0)?, depth)),
    };
    Ok(write_basis(&name, b.as_ref()))
}

fn embed_report(b: &BasisRef, order: Option<&[String]>) -> Res {
    let p = match order {
        Some(labels) => FinitePresentation::from_labels(b.clone(), labels).map_err(invalid)?,
        None => FinitePresentation::natural(b.clone()),
    };
    let cert = embed(&p).map_err(invalid)?;
    let mut out = String::from("regions\n");
    for (r, members) in cert.region_table().map_err(invalid)? {
        out.push_str(&format!("D{r} = {}\n", braces(b.labels_of(&members))));
    }
    out.push_str("locs\n");
    for (r, path) in cert.locs() {
        out.push_str(&format!("Loc({r}) = {}\n", path_string(path)));
    }
    out.push_str("trees\n");
    for (t, tree) in cert.trees() {
        out.push_str(&format!("{} => {tree}\n", b.label(t)));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fdt(args: &[&str]) -> Outcome {
        run(std::iter::once("fdt").chain(args.iter().copied()))
    }

    #[test]
    fn usage_errors_exit_one() {
        let o = fdt(&["frobnicate"]);
        assert_eq!(o.code, 1);
        assert!(o.stdout.is_empty());
        assert!(o.stderr.contains("frobnicate"));
        assert_eq!(fdt(&["lub", "/nonexistent/file.fb"]).code, 1);
        assert_eq!(fdt(&["fix", "x.fm", "--fuel", "many"]).code, 1);
    }

    #[test]
    fn help_exits_zero() {
        let o = fdt(&["--help"]);
        assert_eq!(o.code, 0);
        assert!(o.stdout.contains("embed"));
    }
}
