use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::{substitute, typecheck, Interp, LambdaError, Signature, Term, Type};
use crate::basis::{Basis, BasisExt, BasisRef, Token};
use crate::fixtures::flat;
use crate::mapping::ApproxMap;

/// Largest environment space `denote_as_map` and `beta_check` will scan.
pub const ENV_LIMIT: usize = 1 << 14;

type Closure = dyn Fn(Value) -> Result<Value, LambdaError> + Send + Sync;

#[derive(Clone)]
pub struct Func(Arc<Closure>);

impl Func {
    pub fn new<F>(f: F) -> Func
    where
        F: Fn(Value) -> Result<Value, LambdaError> + Send + Sync + 'static,
    {
        Func(Arc::new(f))
    }

    pub fn call(&self, v: Value) -> Result<Value, LambdaError> {
        (self.0)(v)
    }
}

/// A denotation. `Bottom` is the least element of every type; data tokens
/// may also be the bottom of their basis.
#[derive(Clone)]
pub enum Value {
    Bottom,
    Data(Token),
    Pair(Box<Value>, Box<Value>),
    Fun(Func),
}

impl fmt::Debug for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Bottom => write!(f, "⊥"),
            Value::Data(t) => write!(f, "{t}"),
            Value::Pair(a, b) => write!(f, "[{a:?},{b:?}]"),
            Value::Fun(_) => write!(f, "<fun>"),
        }
    }
}

pub type Env = BTreeMap<String, Value>;

pub fn apply_value(f: &Value, a: Value) -> Result<Value, LambdaError> {
    match f {
        Value::Bottom => Ok(Value::Bottom),
        Value::Fun(g) => g.call(a),
        other => Err(LambdaError::BadValue(format!("{other:?} applied as a function"))),
    }
}

fn split(v: Value) -> Result<(Value, Value), LambdaError> {
    match v {
        Value::Bottom => Ok((Value::Bottom, Value::Bottom)),
        Value::Pair(a, b) => Ok((*a, *b)),
        other => Err(LambdaError::BadValue(format!("{other:?} is not a pair"))),
    }
}

/// Binds the parameters of a tuple abstraction to the parts of `v`.
fn bind(env: &mut Env, names: &[String], v: Value) -> Result<(), LambdaError> {
    match names {
        [] => Ok(()),
        [x] => {
            env.insert(x.clone(), v);
            Ok(())
        }
        [x, rest @ ..] => {
            let (a, b) = split(v)?;
            env.insert(x.clone(), a);
            bind(env, rest, b)
        }
    }
}

/// Evaluates a term. `fix` applies its argument `fuel` times to `⊥`.
///
/// The term should already have passed [`typecheck`]; evaluation only
/// reports the errors it runs into.
pub fn denote(term: &Term, env: &Env, sig: &Arc<Signature>, fuel: usize) -> Result<Value, LambdaError> {
    match term {
        Term::Var(x) => env
            .get(x)
            .cloned()
            .ok_or_else(|| LambdaError::Unbound { path: "$".into(), name: x.clone() }),
        Term::Const(c) => constant_value(c, sig, fuel),
        Term::Tuple(parts) => {
            let vals = parts.iter().map(|p| denote(p, env, sig, fuel)).collect::<Result<Vec<_>, _>>()?;
            let mut it = vals.into_iter().rev();
            let last = it.next().ok_or_else(|| LambdaError::BadValue("empty tuple".into()))?;
            Ok(it.fold(last, |acc, v| Value::Pair(Box::new(v), Box::new(acc))))
        }
        Term::App(f, a) if matches!(&**f, Term::Const(c) if c == "cond") => {
            let Term::Tuple(parts) = &**a else {
                return Err(LambdaError::BadCond { path: "$".into() });
            };
            let [b, x, y] = parts.as_slice() else {
                return Err(LambdaError::BadCond { path: "$".into() });
            };
            // Only the chosen branch is evaluated; the other would be
            // ignored by cond anyway.
            let t = sig.base("T")?;
            match denote(b, env, sig, fuel)? {
                Value::Data(v) if t.label(v) == "true" => denote(x, env, sig, fuel),
                Value::Data(v) if t.label(v) == "false" => denote(y, env, sig, fuel),
                _ => Ok(Value::Bottom),
            }
        }
        Term::App(f, a) => {
            let fv = denote(f, env, sig, fuel)?;
            let av = denote(a, env, sig, fuel)?;
            apply_value(&fv, av)
        }
        Term::Lam(params, body) => {
            let names: Vec<String> = params.iter().map(|(n, _)| n.clone()).collect();
            let (env, body, sig) = (env.clone(), body.clone(), sig.clone());
            Ok(Value::Fun(Func::new(move |arg| {
                let mut inner = env.clone();
                bind(&mut inner, &names, arg)?;
                denote(&body, &inner, &sig, fuel)
            })))
        }
        Term::Fix(e) => {
            let f = denote(e, env, sig, fuel)?;
            let mut v = Value::Bottom;
            for _ in 0..fuel {
                v = apply_value(&f, v)?;
            }
            Ok(v)
        }
    }
}

fn constant_value(name: &str, sig: &Arc<Signature>, fuel: usize) -> Result<Value, LambdaError> {
    let c = sig
        .constant(name)
        .ok_or_else(|| LambdaError::UnknownConstant { path: "$".into(), name: name.to_string() })?;
    match c.interp {
        Interp::Token(t) => Ok(Value::Data(t)),
        Interp::Term(t) => denote(&t, &Env::new(), sig, fuel),
        Interp::Map(m) => {
            let Type::Arrow(dom, cod) = c.ty else {
                return Err(LambdaError::BadValue(format!("constant {name} is a map but not of arrow type")));
            };
            let sig = sig.clone();
            Ok(Value::Fun(Func::new(move |arg| {
                let x = value_to_token(&sig, &arg, &dom)?;
                token_to_value(&sig, m.image_token(x), &cod)
            })))
        }
    }
}

/// The token of the finite basis of `ty` that a value denotes. Functions
/// are tabulated over every token of their source.
pub fn value_to_token(sig: &Signature, v: &Value, ty: &Type) -> Result<Token, LambdaError> {
    match (ty, v) {
        (Type::Base(n), Value::Bottom) => Ok(sig.base(n)?.bottom()),
        (Type::Base(_), Value::Data(t)) => Ok(*t),
        (Type::Prod(a, b), Value::Bottom) => {
            let p = sig.product_basis(a, b)?;
            Ok(p.bottom())
        }
        (Type::Prod(a, b), Value::Pair(x, y)) => {
            let p = sig.product_basis(a, b)?;
            Ok(p.pair(value_to_token(sig, x, a)?, value_to_token(sig, y, b)?))
        }
        (Type::Arrow(a, b), Value::Bottom) => Ok(sig.funspace_basis(a, b)?.bottom()),
        (Type::Arrow(a, b), Value::Fun(f)) => {
            let fs = sig.funspace_basis(a, b)?;
            let table = fs
                .source()
                .tokens()
                .map(|s| value_to_token(sig, &f.call(token_to_value(sig, s, a)?)?, b))
                .collect::<Result<Vec<_>, _>>()?;
            fs.token_of_table(&table).ok_or_else(|| LambdaError::BadValue(format!("non-monotone function of type {ty}")))
        }
        _ => Err(LambdaError::BadValue(ty.to_string())),
    }
}

pub fn token_to_value(sig: &Signature, t: Token, ty: &Type) -> Result<Value, LambdaError> {
    Ok(match ty {
        Type::Base(_) => Value::Data(t),
        Type::Prod(a, b) => {
            let (x, y) = sig.product_basis(a, b)?.split(t);
            Value::Pair(Box::new(token_to_value(sig, x, a)?), Box::new(token_to_value(sig, y, b)?))
        }
        Type::Arrow(a, b) => {
            let fs = sig.funspace_basis(a, b)?;
            let (a, b) = ((**a).clone(), (**b).clone());
            let table = fs.table(t).to_vec();
            let sig = sig.clone();
            Value::Fun(Func::new(move |arg| {
                let x = value_to_token(&sig, &arg, &a)?;
                token_to_value(&sig, table[x.index()], &b)
            }))
        }
    })
}

fn env_space(sig: &Signature, free: &[(String, Type)]) -> Result<(BasisRef, Option<Type>), LambdaError> {
    if free.is_empty() {
        return Ok((Arc::new(flat("1", &[])), None));
    }
    let tys: Vec<Type> = free.iter().map(|(_, t)| t.clone()).collect();
    let ty = Type::tuple(&tys);
    let b = sig.basis_of(&ty)?;
    if b.len() > ENV_LIMIT {
        return Err(LambdaError::TooLarge(format!("{} environments, above the limit of {ENV_LIMIT}", b.len())));
    }
    Ok((b, Some(ty)))
}

/// The relation `F_M` of a term in its free variables, built by
/// evaluating it in every environment of tokens. With no free variables
/// the source is the one-point basis.
pub fn denote_as_map(
    term: &Term,
    free: &[(String, Type)],
    sig: &Arc<Signature>,
    fuel: usize,
) -> Result<ApproxMap, LambdaError> {
    let result_ty = typecheck(term, sig, free)?;
    let (source, env_ty) = env_space(sig, free)?;
    let target = sig.basis_of(&result_ty)?;
    let names: Vec<String> = free.iter().map(|(n, _)| n.clone()).collect();
    let mut gens = Vec::with_capacity(source.len());
    for s in source.tokens() {
        let mut env = Env::new();
        if let Some(ty) = &env_ty {
            bind(&mut env, &names, token_to_value(sig, s, ty)?)?;
        }
        let v = denote(term, &env, sig, fuel)?;
        gens.push(value_to_token(sig, &v, &result_ty)?);
    }
    Ok(ApproxMap::from_fn(&source, &target, |t| gens[t.index()])?)
}

/// Compares `(λx⃗.τ)(σ⃗)` with `τ[σ⃗/x⃗]` over every environment of the free
/// variables in `ctx`.
pub fn beta_check(
    abs: &Term,
    args: &[Term],
    ctx: &[(String, Type)],
    sig: &Arc<Signature>,
    fuel: usize,
) -> Result<bool, LambdaError> {
    let Term::Lam(params, body) = abs else {
        return Err(LambdaError::NotAnArrow { path: "$".into(), found: abs.to_string() });
    };
    if params.len() != args.len() {
        return Err(LambdaError::TypeMismatch {
            path: "$.arg".into(),
            expected: format!("{} arguments", params.len()),
            found: args.len().to_string(),
        });
    }
    let lhs = Term::app(abs.clone(), Term::tuple(args.to_vec()));
    let map: BTreeMap<String, Term> = params.iter().map(|(n, _)| n.clone()).zip(args.iter().cloned()).collect();
    let rhs = substitute(body, &map);
    let tl = typecheck(&lhs, sig, ctx)?;
    let tr = typecheck(&rhs, sig, ctx)?;
    if tl != tr {
        return Ok(false);
    }
    let a = denote_as_map(&lhs, ctx, sig, fuel)?;
    let b = denote_as_map(&rhs, ctx, sig, fuel)?;
    Ok(a.generators() == b.generators())
}
