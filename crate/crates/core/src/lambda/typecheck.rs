use super::{LambdaError, Signature, Term, Type};

/// The type of `term` under the variable typings in `ctx` (later entries
/// shadow earlier ones). Errors carry a dotted path into the term.
pub fn typecheck(term: &Term, sig: &Signature, ctx: &[(String, Type)]) -> Result<Type, LambdaError> {
    let mut scope = ctx.to_vec();
    check(term, sig, &mut scope, "$")
}

fn truth() -> Type {
    Type::base("T")
}

fn expect(path: &str, expected: &Type, found: &Type) -> Result<(), LambdaError> {
    if expected == found {
        Ok(())
    } else {
        Err(LambdaError::TypeMismatch { path: path.to_string(), expected: expected.to_string(), found: found.to_string() })
    }
}

fn check(term: &Term, sig: &Signature, scope: &mut Vec<(String, Type)>, path: &str) -> Result<Type, LambdaError> {
    match term {
        Term::Var(x) => scope
            .iter()
            .rev()
            .find(|(n, _)| n == x)
            .map(|(_, t)| t.clone())
            .ok_or_else(|| LambdaError::Unbound { path: path.to_string(), name: x.clone() }),
        Term::Const(c) if c == "cond" => Err(LambdaError::BadCond { path: path.to_string() }),
        Term::Const(c) => sig
            .constant(c)
            .map(|k| k.ty)
            .ok_or_else(|| LambdaError::UnknownConstant { path: path.to_string(), name: c.clone() }),
        Term::Tuple(parts) => {
            if parts.is_empty() {
                return Err(LambdaError::TypeMismatch {
                    path: path.to_string(),
                    expected: "a component".into(),
                    found: "empty tuple".into(),
                });
            }
            let tys = parts
                .iter()
                .enumerate()
                .map(|(i, p)| check(p, sig, scope, &format!("{path}.{i}")))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Type::tuple(&tys))
        }
        Term::App(f, a) if matches!(&**f, Term::Const(c) if c == "cond") => {
            let Term::Tuple(parts) = &**a else {
                return Err(LambdaError::BadCond { path: path.to_string() });
            };
            let [b, x, y] = parts.as_slice() else {
                return Err(LambdaError::BadCond { path: path.to_string() });
            };
            let tb = check(b, sig, scope, &format!("{path}.arg.0"))?;
            expect(&format!("{path}.arg.0"), &truth(), &tb)?;
            let tx = check(x, sig, scope, &format!("{path}.arg.1"))?;
            let ty = check(y, sig, scope, &format!("{path}.arg.2"))?;
            expect(&format!("{path}.arg.2"), &tx, &ty)?;
            Ok(tx)
        }
        Term::App(f, a) => {
            let tf = check(f, sig, scope, &format!("{path}.fun"))?;
            let ta = check(a, sig, scope, &format!("{path}.arg"))?;
            match tf {
                Type::Arrow(dom, cod) => {
                    expect(&format!("{path}.arg"), &dom, &ta)?;
                    Ok(*cod)
                }
                other => Err(LambdaError::NotAnArrow { path: format!("{path}.fun"), found: other.to_string() }),
            }
        }
        Term::Lam(params, body) => {
            if params.is_empty() {
                return Err(LambdaError::TypeMismatch {
                    path: path.to_string(),
                    expected: "a parameter".into(),
                    found: "none".into(),
                });
            }
            for (_, t) in params {
                check_type(sig, t)?;
            }
            let depth = scope.len();
            scope.extend(params.iter().cloned());
            let tb = check(body, sig, scope, &format!("{path}.body"));
            scope.truncate(depth);
            let dom: Vec<Type> = params.iter().map(|(_, t)| t.clone()).collect();
            Ok(Type::arrow(Type::tuple(&dom), tb?))
        }
        Term::Fix(e) => {
            let te = check(e, sig, scope, &format!("{path}.fix"))?;
            match te {
                Type::Arrow(a, b) if a == b => Ok(*a),
                Type::Arrow(a, b) => Err(LambdaError::TypeMismatch {
                    path: format!("{path}.fix"),
                    expected: Type::arrow((*a).clone(), (*a).clone()).to_string(),
                    found: Type::Arrow(a, b).to_string(),
                }),
                other => Err(LambdaError::NotAnArrow { path: format!("{path}.fix"), found: other.to_string() }),
            }
        }
    }
}

fn check_type(sig: &Signature, t: &Type) -> Result<(), LambdaError> {
    match t {
        Type::Base(n) => sig.base(n).map(|_| ()),
        Type::Prod(a, b) | Type::Arrow(a, b) => {
            check_type(sig, a)?;
            check_type(sig, b)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n() -> Type {
        Type::base("N")
    }

    #[test]
    fn basic_types() {
        let sig = Signature::flat_nats(8);
        let id = Term::lam(&[("x", n())], Term::var("x"));
        assert_eq!(typecheck(&id, &sig, &[]).unwrap(), Type::arrow(n(), n()));
        let s0 = Term::app(Term::constant("succ"), Term::constant("0"));
        assert_eq!(typecheck(&s0, &sig, &[]).unwrap(), n());
        let bad = Term::app(Term::constant("0"), Term::constant("0"));
        assert!(matches!(typecheck(&bad, &sig, &[]), Err(LambdaError::NotAnArrow { .. })));
    }

    #[test]
    fn error_paths() {
        let sig = Signature::flat_nats(8);
        let t = Term::lam(&[("x", n())], Term::app(Term::constant("succ"), Term::constant("true")));
        match typecheck(&t, &sig, &[]) {
            Err(LambdaError::TypeMismatch { path, expected, found }) => {
                assert_eq!(path, "$.body.arg");
                assert_eq!((expected.as_str(), found.as_str()), ("N", "T"));
            }
            other => panic!("{other:?}"),
        }
        let u = Term::app(Term::constant("nope"), Term::constant("0"));
        assert!(matches!(typecheck(&u, &sig, &[]), Err(LambdaError::UnknownConstant { .. })));
        assert!(matches!(typecheck(&Term::var("y"), &sig, &[]), Err(LambdaError::Unbound { .. })));
    }

    #[test]
    fn cond_and_fix() {
        let sig = Signature::flat_nats(8);
        let c = Term::cond(Term::constant("true"), Term::constant("1"), Term::constant("2"));
        assert_eq!(typecheck(&c, &sig, &[]).unwrap(), n());
        let mixed = Term::cond(Term::constant("true"), Term::constant("1"), Term::constant("false"));
        assert!(typecheck(&mixed, &sig, &[]).is_err());
        let f = Term::fix(Term::lam(&[("x", n())], Term::var("x")));
        assert_eq!(typecheck(&f, &sig, &[]).unwrap(), n());
        let g = Term::fix(Term::constant("zero"));
        assert!(typecheck(&g, &sig, &[]).is_err());
    }

    #[test]
    fn type_display() {
        let t = Type::arrow(Type::tuple(&[n(), n(), n()]), n());
        assert_eq!(t.to_string(), "NxNxN->N");
        let h = Type::arrow(Type::arrow(n(), n()), n());
        assert_eq!(h.to_string(), "(N->N)->N");
    }
}
