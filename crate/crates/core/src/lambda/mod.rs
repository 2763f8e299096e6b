//! A typed λ-calculus over finite bases.
//!
//! Terms are checked against a [`Signature`] of base types and constants,
//! then evaluated to [`Value`]s: tokens of data bases, pairs, and
//! closures. `fix` unrolls its argument `fuel` times, so evaluation
//! always terminates and more fuel can only give a larger answer.

mod compile;
mod eval;
mod parse;
mod signature;
mod strict;
mod subst;
mod typecheck;

use std::fmt;

use crate::basis::BasisError;
use crate::mapping::MapError;

pub use compile::{compile_mu, compile_primrec};
pub use eval::{apply_value, beta_check, denote, denote_as_map, token_to_value, value_to_token, Env, Func, Value};
pub use parse::{parse_term, parse_term_file, parse_type, TermFile};
pub use signature::{Constant, Interp, Signature, DEFAULT_NAT_MAX, DEFAULT_STREAM_LEN};
pub use strict::{check_map, fade_map, fade_retraction, strictify, two_point};
pub use subst::{free_vars, fresh_name, substitute};
pub use typecheck::typecheck;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Type {
    Base(String),
    Prod(Box<Type>, Box<Type>),
    Arrow(Box<Type>, Box<Type>),
}

impl Type {
    pub fn base(name: &str) -> Type {
        Type::Base(name.to_string())
    }

    pub fn prod(a: Type, b: Type) -> Type {
        Type::Prod(Box::new(a), Box::new(b))
    }

    pub fn arrow(a: Type, b: Type) -> Type {
        Type::Arrow(Box::new(a), Box::new(b))
    }

    /// `A₀ × (A₁ × (… × Aₙ))`, or `A₀` alone.
    pub fn tuple(parts: &[Type]) -> Type {
        let (last, init) = parts.split_last().expect("at least one component");
        init.iter().rev().fold(last.clone(), |acc, t| Type::prod(t.clone(), acc))
    }
}

impl fmt::Display for Type {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Type::Base(n) => write!(f, "{n}"),
            Type::Prod(a, b) => {
                match **a {
                    Type::Base(_) => write!(f, "{a}")?,
                    _ => write!(f, "({a})")?,
                }
                match **b {
                    Type::Arrow(..) => write!(f, "x({b})"),
                    _ => write!(f, "x{b}"),
                }
            }
            Type::Arrow(a, b) => match **a {
                Type::Arrow(..) => write!(f, "({a})->{b}"),
                _ => write!(f, "{a}->{b}"),
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Term {
    Var(String),
    Const(String),
    Tuple(Vec<Term>),
    App(Box<Term>, Box<Term>),
    /// `λx₀:A₀, …, xₙ:Aₙ. body` takes one argument of the tuple type.
    Lam(Vec<(String, Type)>, Box<Term>),
    Fix(Box<Term>),
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(name.to_string())
    }

    pub fn constant(name: &str) -> Term {
        Term::Const(name.to_string())
    }

    pub fn app(f: Term, a: Term) -> Term {
        Term::App(Box::new(f), Box::new(a))
    }

    /// Applies `f` to the tuple of `args`.
    pub fn call(f: Term, args: Vec<Term>) -> Term {
        Term::app(f, Term::tuple(args))
    }

    pub fn tuple(mut parts: Vec<Term>) -> Term {
        if parts.len() == 1 {
            parts.pop().unwrap()
        } else {
            Term::Tuple(parts)
        }
    }

    pub fn lam(params: &[(&str, Type)], body: Term) -> Term {
        Term::Lam(params.iter().map(|(n, t)| (n.to_string(), t.clone())).collect(), Box::new(body))
    }

    pub fn fix(f: Term) -> Term {
        Term::Fix(Box::new(f))
    }

    pub fn cond(test: Term, then: Term, otherwise: Term) -> Term {
        Term::call(Term::constant("cond"), vec![test, then, otherwise])
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(n) | Term::Const(n) => write!(f, "{n}"),
            Term::Tuple(ts) => {
                write!(f, "<")?;
                for (i, t) in ts.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{t}")?;
                }
                write!(f, ">")
            }
            Term::App(g, a) => write!(f, "({g} {a})"),
            Term::Lam(ps, body) => {
                write!(f, "(\\")?;
                for (i, (n, t)) in ps.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{n}:{t}")?;
                }
                write!(f, ". {body})")
            }
            Term::Fix(e) => write!(f, "(fix {e})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LambdaError {
    #[error("line {line}, column {col}: {message}")]
    Parse { line: usize, col: usize, message: String },
    #[error("at {path}: unknown constant `{name}`")]
    UnknownConstant { path: String, name: String },
    #[error("at {path}: unbound variable `{name}`")]
    Unbound { path: String, name: String },
    #[error("at {path}: expected {expected}, found {found}")]
    TypeMismatch { path: String, expected: String, found: String },
    #[error("at {path}: {found} is not an arrow")]
    NotAnArrow { path: String, found: String },
    #[error("at {path}: cond must be applied to a triple <test, then, else>")]
    BadCond { path: String },
    #[error("unknown base type `{0}`")]
    UnknownBase(String),
    #[error("{0}")]
    TooLarge(String),
    #[error("value does not match type {0}")]
    BadValue(String),
    #[error(transparent)]
    Basis(#[from] BasisError),
    #[error(transparent)]
    Map(#[from] MapError),
}
