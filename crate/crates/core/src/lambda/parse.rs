//! Term files.
//!
//! ```text
//! # comment
//! var x : N
//! term double : N->N = \n:N. (add <n, n>)
//! term four : N = (double 2)
//! ```
//!
//! Expressions are identifiers, numerals, applications `(e e …)`, tuples
//! `<e, e>`, abstractions `\x:T, y:T. e` and `fix e`. Types are base
//! names, `AxB` and `A->B`, with `x` binding tighter than `->`.

use std::collections::BTreeSet;

use super::{typecheck, LambdaError, Signature, Term, Type};

#[derive(Debug, Clone, Default)]
pub struct TermFile {
    /// Declared free variables, in order.
    pub vars: Vec<(String, Type)>,
    pub terms: Vec<(String, Type, Term)>,
}

struct Cursor {
    chars: Vec<char>,
    pos: usize,
    line: usize,
}

impl Cursor {
    fn new(text: &str, line: usize) -> Cursor {
        Cursor { chars: text.chars().collect(), pos: 0, line }
    }

    fn error(&self, message: impl Into<String>) -> LambdaError {
        let before = &self.chars[..self.pos.min(self.chars.len())];
        let lines = before.iter().filter(|&&c| c == '\n').count();
        let col = before.iter().rev().take_while(|&&c| c != '\n').count() + 1;
        LambdaError::Parse { line: self.line + lines, col, message: message.into() }
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), LambdaError> {
        if self.eat(c) {
            Ok(())
        } else {
            let found = self.peek().map_or("end of input".to_string(), |f| format!("`{f}`"));
            Err(self.error(format!("expected `{c}`, found {found}")))
        }
    }

    fn ident(&mut self) -> Option<String> {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|&c| c.is_alphanumeric() || c == '_' || c == '\'') {
            self.pos += 1;
        }
        (self.pos > start).then(|| self.chars[start..self.pos].iter().collect())
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }
}

pub fn parse_type(text: &str) -> Result<Type, LambdaError> {
    let mut c = Cursor::new(text, 1);
    let t = type_expr(&mut c)?;
    if !c.at_end() {
        return Err(c.error("trailing input after type"));
    }
    Ok(t)
}

fn type_expr(c: &mut Cursor) -> Result<Type, LambdaError> {
    let left = type_prod(c)?;
    c.skip_ws();
    let rest: String = c.chars[c.pos..].iter().take(2).collect();
    if rest == "->" {
        c.pos += 2;
        Ok(Type::arrow(left, type_expr(c)?))
    } else if c.eat('→') {
        Ok(Type::arrow(left, type_expr(c)?))
    } else {
        Ok(left)
    }
}

fn type_prod(c: &mut Cursor) -> Result<Type, LambdaError> {
    let left = type_atom(c)?;
    if c.eat('x') || c.eat('×') {
        Ok(Type::prod(left, type_prod(c)?))
    } else {
        Ok(left)
    }
}

fn type_atom(c: &mut Cursor) -> Result<Type, LambdaError> {
    if c.eat('(') {
        let t = type_expr(c)?;
        c.expect(')')?;
        return Ok(t);
    }
    c.skip_ws();
    let start = c.pos;
    if !c.chars.get(c.pos).is_some_and(|ch| ch.is_ascii_uppercase()) {
        return Err(c.error("expected a base type name"));
    }
    while c.chars.get(c.pos).is_some_and(|ch| ch.is_ascii_uppercase() || ch.is_ascii_digit()) {
        c.pos += 1;
    }
    Ok(Type::Base(c.chars[start..c.pos].iter().collect()))
}

/// Parses one expression. Identifiers bound by an enclosing abstraction
/// or listed in `free` become variables; the rest are constants.
pub fn parse_term(text: &str, free: &[String]) -> Result<Term, LambdaError> {
    let mut c = Cursor::new(text, 1);
    let t = expr(&mut c, &mut free.to_vec())?;
    if !c.at_end() {
        return Err(c.error("trailing input after expression"));
    }
    Ok(t)
}

fn expr(c: &mut Cursor, bound: &mut Vec<String>) -> Result<Term, LambdaError> {
    match c.peek() {
        Some('\\') | Some('λ') => {
            c.pos += 1;
            let mut params = Vec::new();
            loop {
                let name = c.ident().ok_or_else(|| c.error("expected a parameter name"))?;
                c.expect(':')?;
                let ty = type_expr(c)?;
                params.push((name, ty));
                if !c.eat(',') {
                    break;
                }
            }
            c.expect('.')?;
            let depth = bound.len();
            bound.extend(params.iter().map(|(n, _)| n.clone()));
            let body = expr(c, bound);
            bound.truncate(depth);
            Ok(Term::Lam(params, Box::new(body?)))
        }
        Some('(') => {
            c.pos += 1;
            let mut items = vec![expr(c, bound)?];
            while !c.eat(')') {
                if c.at_end() {
                    return Err(c.error("unclosed `(`"));
                }
                items.push(expr(c, bound)?);
            }
            let mut it = items.into_iter();
            let first = it.next().unwrap();
            Ok(it.fold(first, Term::app))
        }
        Some('<') => {
            c.pos += 1;
            let mut items = vec![expr(c, bound)?];
            while c.eat(',') {
                items.push(expr(c, bound)?);
            }
            c.expect('>')?;
            Ok(Term::tuple(items))
        }
        Some(_) => {
            let name = c.ident().ok_or_else(|| c.error("expected an expression"))?;
            if name == "fix" {
                return Ok(Term::fix(expr(c, bound)?));
            }
            if bound.contains(&name) {
                Ok(Term::Var(name))
            } else {
                Ok(Term::Const(name))
            }
        }
        None => Err(c.error("unexpected end of input")),
    }
}

/// Parses a term file against `sig`. Each closed term becomes a constant
/// of the returned signature, so later terms can use it by name.
pub fn parse_term_file(text: &str, sig: &Signature) -> Result<(TermFile, Signature), LambdaError> {
    let mut sig = sig.clone();
    let mut file = TermFile::default();
    for (line, stmt) in statements(text) {
        let c = Cursor::new(&stmt, line);
        let (kw, rest) = stmt.split_once(char::is_whitespace).unwrap_or((&stmt, ""));
        let offset = kw.chars().count() + 1;
        match kw {
            "var" => {
                let (name, ty) = rest.split_once(':').ok_or_else(|| c.error("expected `var name : type`"))?;
                let ty = parse_type(ty).map_err(|e| shift(e, line))?;
                file.vars.push((name.trim().to_string(), ty));
            }
            "term" => {
                let (head, body) = rest.split_once('=').ok_or_else(|| c.error("expected `=`"))?;
                let (name, ty) = head.split_once(':').ok_or_else(|| c.error("expected `term name : type = expr`"))?;
                let name = name.trim().to_string();
                let ty = parse_type(ty).map_err(|e| shift(e, line))?;
                let body_start = offset + head.chars().count() + 1;
                let prefix: String = stmt.chars().take(body_start).collect();
                let body_line = line + prefix.matches('\n').count();
                let free: Vec<String> = file.vars.iter().map(|(n, _)| n.clone()).collect();
                let term = parse_term(body, &free).map_err(|e| shift(e, body_line))?;
                let found = typecheck(&term, &sig, &file.vars)?;
                if found != ty {
                    return Err(LambdaError::TypeMismatch {
                        path: name.clone(),
                        expected: ty.to_string(),
                        found: found.to_string(),
                    });
                }
                let names: BTreeSet<String> = super::free_vars(&term);
                if names.is_empty() {
                    sig.add_term(&name, ty.clone(), term.clone());
                }
                file.terms.push((name, ty, term));
            }
            other => return Err(c.error(format!("expected `term` or `var`, found `{other}`"))),
        }
    }
    Ok((file, sig))
}

fn shift(e: LambdaError, line: usize) -> LambdaError {
    match e {
        LambdaError::Parse { line: l, col, message } => LambdaError::Parse { line: line + l - 1, col, message },
        other => other,
    }
}

/// Groups lines into statements: a statement starts at a `term` or `var`
/// line and runs until the next one. Comments and blank lines are skipped.
fn statements(text: &str) -> Vec<(usize, String)> {
    let mut out: Vec<(usize, String)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            if let Some((_, s)) = out.last_mut() {
                s.push('\n');
            }
            continue;
        }
        let starts = line.starts_with("term ") || line.starts_with("var ") || out.is_empty();
        if starts {
            out.push((i + 1, line.to_string()));
        } else {
            let (_, s) = out.last_mut().unwrap();
            s.push('\n');
            s.push_str(line);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::lambda::{denote, Env, Value};

    #[test]
    fn types() {
        let n = || Type::base("N");
        assert_eq!(parse_type("N").unwrap(), n());
        assert_eq!(parse_type("NxN->N").unwrap(), Type::arrow(Type::prod(n(), n()), n()));
        assert_eq!(parse_type("(N->N)->N->T").unwrap().to_string(), "(N->N)->N->T");
        assert_eq!(parse_type("NxNxN").unwrap(), Type::tuple(&[n(), n(), n()]));
        assert!(parse_type("N->").is_err());
        for s in ["N", "NxT", "(NxN)xN", "Nx(N->N)", "(N->N)->N", "N->N->N"] {
            assert_eq!(parse_type(s).unwrap().to_string(), s);
        }
    }

    #[test]
    fn terms_round_trip() {
        let src = r"fix (\f:N->N. (\n:N. (cond <(zero n), 0, (add <(f (pred n)), (pred n)>)>)))";
        let t = parse_term(src, &[]).unwrap();
        let again = parse_term(&t.to_string(), &[]).unwrap();
        assert_eq!(t, again);
        let Term::Fix(inner) = &t else { panic!() };
        assert!(matches!(&**inner, Term::Lam(ps, _) if ps[0].0 == "f"));
    }

    #[test]
    fn file_with_definitions() {
        let sig = Signature::flat_nats(16);
        let text = "# doubling\nterm double : N->N = \\n:N.\n   (add <n, n>)\nvar k : N\nterm four : N = (double 2)\nterm kk : N = (double k)\n";
        let (file, sig) = parse_term_file(text, &sig).unwrap();
        assert_eq!(file.terms.len(), 3);
        assert_eq!(file.vars, vec![("k".to_string(), Type::base("N"))]);
        let sig = Arc::new(sig);
        let four = denote(&file.terms[1].2, &Env::new(), &sig, 32).unwrap();
        let Value::Data(t) = four else { panic!() };
        assert_eq!(sig.base("N").unwrap().label(t), "4");
    }

    #[test]
    fn errors_have_positions() {
        let sig = Signature::flat_nats(4);
        let err = parse_term_file("term a : N = 0\n\nterm b : N = (succ <0, \n", &sig).unwrap_err();
        assert!(matches!(err, LambdaError::Parse { line: 3 | 4, .. }), "{err:?}");
        let err = parse_term_file("term a : N = true\n", &sig).unwrap_err();
        assert!(matches!(err, LambdaError::TypeMismatch { .. }));
        let err = parse_term_file("let a = 0\n", &sig).unwrap_err();
        assert!(matches!(err, LambdaError::Parse { line: 1, .. }));
    }
}
