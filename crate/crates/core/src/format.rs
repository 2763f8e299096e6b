//! Line-based text formats for bases and maps.
//!
//! ```text
//! # the diamond
//! basis diamond
//! elem bot
//! elem l
//! elem r
//! elem top
//! leq bot l
//! leq bot r
//! leq l top
//! leq r top
//!
//! map flip : diamond -> diamond
//! pair l r
//! pair r l
//! close
//! ```
//!
//! A file is a sequence of `basis` and `map` blocks. The first `elem` of a
//! basis is its bottom. A map block lists `pair` lines; without `close`
//! they must already form an approximable mapping, with `close` they are
//! a seed for the least one containing them. Maps refer to bases defined
//! earlier. `include <path>` pulls in another file, resolved by the
//! caller. Labels containing spaces are written in double quotes.

use std::sync::Arc;

use crate::basis::{Basis, BasisError, BasisExt, BasisRef, FiniteBasis, Token};
use crate::mapping::{ApproxMap, MapError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: basis `{name}`: {source}")]
    Basis {
        line: usize,
        name: String,
        source: BasisError,
    },
    #[error("line {line}: map `{name}`: {source}")]
    Map {
        line: usize,
        name: String,
        source: MapError,
    },
    #[error("no bottom element")]
    NoBasis,
    #[error("no map in file")]
    NoMap,
    #[error("unknown {kind} `{name}`")]
    Unknown { kind: &'static str, name: String },
    #[error("include `{path}`: {message}")]
    Include { path: String, message: String },
}

/// Bases and maps by name, in definition order.
#[derive(Debug, Clone, Default)]
pub struct Workspace {
    bases: Vec<(String, BasisRef)>,
    maps: Vec<(String, ApproxMap)>,
}

impl Workspace {
    pub fn bases(&self) -> &[(String, BasisRef)] {
        &self.bases
    }

    pub fn maps(&self) -> &[(String, ApproxMap)] {
        &self.maps
    }

    pub fn basis(&self, name: &str) -> Result<&BasisRef, FormatError> {
        self.bases
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, b)| b)
            .ok_or_else(|| FormatError::Unknown { kind: "basis", name: name.to_string() })
    }

    pub fn map(&self, name: &str) -> Result<&ApproxMap, FormatError> {
        self.maps
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, m)| m)
            .ok_or_else(|| FormatError::Unknown { kind: "map", name: name.to_string() })
    }

    /// The named basis, or the last one defined.
    pub fn basis_or_last(&self, name: Option<&str>) -> Result<&BasisRef, FormatError> {
        match name {
            Some(n) => self.basis(n),
            None => self.bases.last().map(|(_, b)| b).ok_or(FormatError::NoBasis),
        }
    }

    /// The named map, or the last one defined.
    pub fn map_or_last(&self, name: Option<&str>) -> Result<&ApproxMap, FormatError> {
        match name {
            Some(n) => self.map(n),
            None => self.maps.last().map(|(_, m)| m).ok_or(FormatError::NoMap),
        }
    }

    pub fn add_basis(&mut self, name: &str, basis: BasisRef) -> Result<(), FormatError> {
        if self.basis(name).is_ok() {
            return Err(FormatError::Syntax { line: 0, message: format!("duplicate basis `{name}`") });
        }
        self.bases.push((name.to_string(), basis));
        Ok(())
    }

    /// Parses `text` into this workspace. `include` lines call `resolve`
    /// with the path and parse the returned text in place.
    pub fn load<R>(&mut self, text: &str, resolve: &mut R) -> Result<(), FormatError>
    where
        R: FnMut(&str) -> Result<String, FormatError>,
    {
        let mut block: Option<Block> = None;
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let words = split_words(raw).map_err(|message| FormatError::Syntax { line, message })?;
            let Some((kw, args)) = words.split_first() else { continue };
            let syntax = |message: String| FormatError::Syntax { line, message };
            match kw.as_str() {
                "basis" => {
                    self.finish(block.take())?;
                    let name = raw.trim().strip_prefix("basis").unwrap_or("").trim();
                    if name.is_empty() {
                        return Err(syntax("expected `basis <name>`".into()));
                    }
                    self.check_fresh(name, "basis", line)?;
                    block = Some(Block::Basis { line, name: name.to_string(), elems: vec![], leqs: vec![] });
                }
                "map" => {
                    self.finish(block.take())?;
                    block = Some(self.map_header(raw, line)?);
                }
                "include" => {
                    self.finish(block.take())?;
                    let [path] = args else {
                        return Err(syntax("expected `include <path>`".into()));
                    };
                    let inner = resolve(path)?;
                    self.load(&inner, resolve).map_err(|e| FormatError::Include {
                        path: path.clone(),
                        message: e.to_string(),
                    })?;
                }
                "elem" => match (&mut block, args) {
                    (Some(Block::Basis { elems, .. }), [label]) => elems.push(label.clone()),
                    (Some(Block::Basis { .. }), _) => return Err(syntax("expected `elem <label>`".into())),
                    _ => return Err(syntax("`elem` outside a basis block".into())),
                },
                "leq" => match (&mut block, args) {
                    (Some(Block::Basis { leqs, .. }), [a, b]) => leqs.push((a.clone(), b.clone())),
                    (Some(Block::Basis { .. }), _) => return Err(syntax("expected `leq <a> <b>`".into())),
                    _ => return Err(syntax("`leq` outside a basis block".into())),
                },
                "pair" => match (&mut block, args) {
                    (Some(Block::Map { pairs, .. }), [a, b]) => pairs.push((a.clone(), b.clone())),
                    (Some(Block::Map { .. }), _) => return Err(syntax("expected `pair <a> <b>`".into())),
                    _ => return Err(syntax("`pair` outside a map block".into())),
                },
                "close" => match (&mut block, args) {
                    (Some(Block::Map { close, .. }), []) => *close = true,
                    _ => return Err(syntax("`close` outside a map block".into())),
                },
                other => return Err(syntax(format!("unknown directive `{other}`"))),
            }
        }
        self.finish(block)
    }

    fn check_fresh(&self, name: &str, kind: &str, line: usize) -> Result<(), FormatError> {
        let taken = match kind {
            "basis" => self.basis(name).is_ok(),
            _ => self.map(name).is_ok(),
        };
        if taken {
            return Err(FormatError::Syntax { line, message: format!("duplicate {kind} `{name}`") });
        }
        Ok(())
    }

    fn map_header(&self, raw: &str, line: usize) -> Result<Block, FormatError> {
        let bad = || FormatError::Syntax { line, message: "expected `map <name> : <source> -> <target>`".into() };
        let rest = raw.trim().strip_prefix("map").ok_or_else(bad)?;
        let (name, sig) = rest.split_once(':').ok_or_else(bad)?;
        let (src, dst) = sig.rsplit_once("->").ok_or_else(bad)?;
        let (name, src, dst) = (name.trim(), src.trim(), dst.trim());
        if name.is_empty() || src.is_empty() || dst.is_empty() {
            return Err(bad());
        }
        self.check_fresh(name, "map", line)?;
        let at = |e: FormatError| match e {
            FormatError::Unknown { kind, name } => FormatError::Syntax { line, message: format!("unknown {kind} `{name}`") },
            e => e,
        };
        Ok(Block::Map {
            line,
            name: name.to_string(),
            source: self.basis(src).map_err(at)?.clone(),
            target: self.basis(dst).map_err(at)?.clone(),
            pairs: vec![],
            close: false,
        })
    }

    fn finish(&mut self, block: Option<Block>) -> Result<(), FormatError> {
        match block {
            None => Ok(()),
            Some(Block::Basis { line, name, elems, leqs }) => {
                let err = |source| FormatError::Basis { line, name: name.clone(), source };
                if elems.is_empty() {
                    return Err(err(BasisError::NoBottom));
                }
                let b = FiniteBasis::validate_with_bottom_first(&name, &elems, &leqs).map_err(err)?;
                self.bases.push((name, Arc::new(b)));
                Ok(())
            }
            Some(Block::Map { line, name, source, target, pairs, close }) => {
                let m = if close {
                    ApproxMap::finite_step_closure_labels(&source, &target, &pairs)
                } else {
                    ApproxMap::validate_labels(&source, &target, &pairs)
                };
                let m = m.map_err(|source| FormatError::Map { line, name: name.clone(), source })?;
                self.maps.push((name, m));
                Ok(())
            }
        }
    }
}

enum Block {
    Basis {
        line: usize,
        name: String,
        elems: Vec<String>,
        leqs: Vec<(String, String)>,
    },
    Map {
        line: usize,
        name: String,
        source: BasisRef,
        target: BasisRef,
        pairs: Vec<(String, String)>,
        close: bool,
    },
}

/// Parses a self-contained workspace; `include` is an error.
pub fn parse_workspace(text: &str) -> Result<Workspace, FormatError> {
    let mut ws = Workspace::default();
    ws.load(text, &mut |path: &str| {
        Err(FormatError::Include { path: path.to_string(), message: "includes are not available here".into() })
    })?;
    Ok(ws)
}

/// The single basis of a basis file. An empty file has no bottom element.
pub fn parse_basis_file(text: &str) -> Result<BasisRef, FormatError> {
    let ws = parse_workspace(text)?;
    match ws.bases.as_slice() {
        [] => Err(FormatError::NoBasis),
        [(_, b)] => Ok(b.clone()),
        more => Err(FormatError::Syntax {
            line: 0,
            message: format!("expected one basis, found {}", more.len()),
        }),
    }
}

/// The last map of a file, with the bases it refers to.
pub fn parse_map_file(text: &str) -> Result<(Workspace, ApproxMap), FormatError> {
    let ws = parse_workspace(text)?;
    let m = ws.map_or_last(None)?.clone();
    Ok((ws, m))
}

/// Whitespace-separated words; `#` starts a comment outside quotes.
fn split_words(line: &str) -> Result<Vec<String>, String> {
    let mut words = Vec::new();
    let mut chars = line.chars().peekable();
    while let Some(&c) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
        } else if c == '#' {
            break;
        } else if c == '"' {
            chars.next();
            let mut w = String::new();
            loop {
                match chars.next() {
                    Some('"') => break,
                    Some(c) => w.push(c),
                    None => return Err("unterminated quote".into()),
                }
            }
            words.push(w);
        } else {
            let mut w = String::new();
            while let Some(&c) = chars.peek() {
                if c.is_whitespace() || c == '#' {
                    break;
                }
                w.push(c);
                chars.next();
            }
            words.push(w);
        }
    }
    Ok(words)
}

fn quote(label: &str) -> String {
    if label.is_empty() || label.contains(|c: char| c.is_whitespace() || c == '#') {
        format!("\"{label}\"")
    } else {
        label.to_string()
    }
}

/// Pairs `a ⊏ b` with nothing strictly between.
pub fn covers(b: &dyn Basis) -> Vec<(Token, Token)> {
    let mut out = Vec::new();
    for a in b.tokens() {
        let above: Vec<Token> = b.tokens().filter(|&c| c != a && b.leq(a, c)).collect();
        for &c in &above {
            if !above.iter().any(|&m| m != c && b.leq(m, c)) {
                out.push((a, c));
            }
        }
    }
    out
}

/// Writes any basis in the basis format, bottom first, with its covering
/// pairs as `leq` lines.
pub fn write_basis(name: &str, b: &dyn Basis) -> String {
    let mut out = format!("basis {name}\n");
    let bot = b.bottom();
    let order = std::iter::once(bot).chain(b.tokens().filter(|&t| t != bot));
    for t in order {
        out.push_str(&format!("elem {}\n", quote(&b.label(t))));
    }
    for (x, y) in covers(b) {
        out.push_str(&format!("leq {} {}\n", quote(&b.label(x)), quote(&b.label(y))));
    }
    out
}

/// Writes a map as its minimal steps under `close`.
pub fn write_map(name: &str, source: &str, target: &str, f: &ApproxMap) -> String {
    let mut out = format!("map {name} : {source} -> {target}\n");
    for (a, b) in f.steps() {
        out.push_str(&format!("pair {} {}\n", quote(&f.source().label(a)), quote(&f.target().label(b))));
    }
    out.push_str("close\n");
    out
}

/// Labels in sorted order, in braces.
pub fn braces(mut labels: Vec<String>) -> String {
    labels.sort();
    format!("{{{}}}", labels.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::mapping::Violation;

    const DIAMOND: &str = "\
# the diamond
basis diamond
elem bot
elem l   # left
elem r
elem top
leq bot l
leq bot r
leq l top
leq r top
";

    #[test]
    fn diamond_parses() {
        let b = parse_basis_file(DIAMOND).unwrap();
        assert_eq!(b.len(), 4);
        assert_eq!(b.label(b.bottom()), "bot");
        let (l, r) = (b.lookup("l").unwrap(), b.lookup("r").unwrap());
        assert_eq!(b.label(b.join(l, r).unwrap()), "top");
    }

    #[test]
    fn empty_file_has_no_bottom() {
        assert_eq!(parse_basis_file("").unwrap_err().to_string(), "no bottom element");
        assert_eq!(parse_basis_file("# nothing\n\n").unwrap_err(), FormatError::NoBasis);
        let err = parse_basis_file("basis x\n").unwrap_err();
        assert!(err.to_string().ends_with("no bottom element"), "{err}");
    }

    #[test]
    fn syntax_errors_carry_lines() {
        let err = parse_workspace("basis x\nelem a\nleq a\n").unwrap_err();
        assert_eq!(err, FormatError::Syntax { line: 3, message: "expected `leq <a> <b>`".into() });
        let err = parse_workspace("elem a\n").unwrap_err();
        assert!(matches!(err, FormatError::Syntax { line: 1, .. }));
        let err = parse_workspace("basis x\nelem \"a\n").unwrap_err();
        assert!(matches!(err, FormatError::Syntax { line: 2, .. }));
        let err = parse_workspace("basis x\nelem a\nmap f : x -> y\n").unwrap_err();
        assert_eq!(err.to_string(), "line 3: unknown basis `y`");
    }

    #[test]
    fn first_elem_must_be_bottom() {
        let err = parse_basis_file("basis x\nelem a\nelem b\nleq b a\n").unwrap_err();
        assert!(matches!(err, FormatError::Basis { source: BasisError::FirstNotBottom { .. }, .. }));
    }

    #[test]
    fn monotonicity_violation_names_the_witness() {
        let text = format!("{DIAMOND}\nmap f : diamond -> diamond\npair bot bot\npair l bot\npair r bot\npair top bot\npair l l\n");
        let err = parse_workspace(&text).unwrap_err();
        let FormatError::Map { line, source: MapError::NotApproximable(vs), .. } = &err else {
            panic!("{err}");
        };
        assert_eq!(*line, 12);
        assert_eq!(vs.len(), 1);
        assert!(vs.contains(&Violation::NotMonotone { a: "l".into(), above: "top".into(), b: "l".into() }), "{err}");
        assert!(err.to_string().contains("l relates to l but top above it does not"));
    }

    #[test]
    fn close_builds_the_least_map() {
        let text = format!("{DIAMOND}\nmap f : diamond -> diamond\npair l r\nclose\n");
        let (ws, f) = parse_map_file(&text).unwrap();
        let b = ws.basis("diamond").unwrap();
        let top = b.lookup("top").unwrap();
        assert_eq!(b.label(f.image_token(top)), "r");
        assert_eq!(b.label(f.image_token(b.lookup("r").unwrap())), "bot");
    }

    #[test]
    fn written_bases_round_trip() {
        let cases: Vec<BasisRef> = vec![
            Arc::new(fixtures::example_strings()),
            Arc::new(fixtures::hook()),
            Arc::new(fixtures::intervals(4)),
        ];
        for b in cases {
            let text = write_basis(b.name(), b.as_ref());
            let back = parse_basis_file(&text).unwrap();
            assert_eq!(back.len(), b.len());
            for x in b.tokens() {
                for y in b.tokens() {
                    let (x2, y2) = (back.lookup(&b.label(x)).unwrap(), back.lookup(&b.label(y)).unwrap());
                    assert_eq!(b.leq(x, y), back.leq(x2, y2));
                }
            }
        }
    }

    #[test]
    fn written_maps_round_trip() {
        let b: BasisRef = Arc::new(fixtures::example_strings());
        let f = ApproxMap::from_fn(&b, &b, |t| if b.label(t) == "⊥" { t } else { b.lookup("0⊥").unwrap() }).unwrap();
        let text = format!("{}\n{}", write_basis("strings", b.as_ref()), write_map("f", "strings", "strings", &f));
        let (_, g) = parse_map_file(&text).unwrap();
        let labels = |m: &ApproxMap| m.generators().iter().map(|&t| m.target().label(t)).collect::<Vec<_>>();
        assert_eq!(labels(&g), labels(&f));
    }

    #[test]
    fn quoted_labels() {
        let b = parse_basis_file("basis q\nelem \"a b\"\nelem c#x\n").unwrap_err();
        // `c#x` is `c` followed by a comment, and `c` is not above `a b`.
        assert!(matches!(b, FormatError::Basis { .. }));
        let b = parse_basis_file("basis q\nelem \"a b\"\nelem \"c#x\"\nleq \"a b\" \"c#x\"\n").unwrap();
        assert_eq!(b.lookup("c#x"), Some(Token::new(1)));
        assert!(write_basis("q", b.as_ref()).contains("elem \"a b\""));
    }

    #[test]
    fn includes_are_resolved_by_the_caller() {
        let mut ws = Workspace::default();
        ws.load("include d.fb\nmap id : diamond -> diamond\npair bot bot\nclose\n", &mut |p: &str| {
            assert_eq!(p, "d.fb");
            Ok(DIAMOND.to_string())
        })
        .unwrap();
        assert_eq!(ws.maps().len(), 1);
        assert!(parse_workspace("include d.fb\n").is_err());
    }
}
