//! Primitive recursion and least-number search as λ-terms.

use std::collections::BTreeSet;

use super::{fresh_name, free_vars, typecheck, LambdaError, Signature, Term, Type};

fn nat() -> Type {
    Type::base("N")
}

fn expect(term: &Term, sig: &Signature, ty: &Type, path: &str) -> Result<(), LambdaError> {
    let found = typecheck(term, sig, &[])?;
    if &found == ty {
        Ok(())
    } else {
        Err(LambdaError::TypeMismatch { path: path.into(), expected: ty.to_string(), found: found.to_string() })
    }
}

/// Picks names for the binders of a generated term that the embedded
/// terms cannot capture.
fn binders<const K: usize>(wanted: [&str; K], parts: &[&Term]) -> [String; K] {
    let mut taken: BTreeSet<String> = parts.iter().flat_map(|t| free_vars(t)).collect();
    wanted.map(|w| {
        let n = if taken.contains(w) { fresh_name(w, &taken) } else { w.to_string() };
        taken.insert(n.clone());
        n
    })
}

/// `h` with `h(0,m) = f(m)` and `h(n+1,m) = g(n,m,h(n,m))`, as
///
/// `fix(λk. λx,y. cond(zero(x), f(y), g(pred(x), y, k(pred(x), y))))`.
pub fn compile_primrec(f: &Term, g: &Term, sig: &Signature) -> Result<Term, LambdaError> {
    expect(f, sig, &Type::arrow(nat(), nat()), "primrec.f")?;
    expect(g, sig, &Type::arrow(Type::tuple(&[nat(), nat(), nat()]), nat()), "primrec.g")?;
    let [k, x, y] = binders(["k", "x", "y"], &[f, g]);
    let (kv, xv, yv) = (Term::Var(k.clone()), Term::Var(x.clone()), Term::Var(y.clone()));
    let px = Term::app(Term::constant("pred"), xv.clone());
    let body = Term::cond(
        Term::app(Term::constant("zero"), xv),
        Term::app(f.clone(), yv.clone()),
        Term::call(g.clone(), vec![px.clone(), yv.clone(), Term::call(kv, vec![px, yv])]),
    );
    let h = Type::arrow(Type::prod(nat(), nat()), nat());
    Ok(Term::fix(Term::lam(&[(&k, h)], Term::lam(&[(&x, nat()), (&y, nat())], body))))
}

/// `h(m) = μn. f(n,m) = 0`, as `λy. ḡ(0,y)` with
///
/// `ḡ = fix(λg. λx,y. cond(zero(f(x,y)), x, g(succ(x), y)))`.
pub fn compile_mu(f: &Term, sig: &Signature) -> Result<Term, LambdaError> {
    expect(f, sig, &Type::arrow(Type::prod(nat(), nat()), nat()), "mu.f")?;
    let [g, x, y, m] = binders(["g", "x", "y", "m"], &[f]);
    let (gv, xv, yv) = (Term::Var(g.clone()), Term::Var(x.clone()), Term::Var(y.clone()));
    let body = Term::cond(
        Term::app(Term::constant("zero"), Term::call(f.clone(), vec![xv.clone(), yv.clone()])),
        xv.clone(),
        Term::call(gv, vec![Term::app(Term::constant("succ"), xv), yv]),
    );
    let search = Term::fix(Term::lam(
        &[(&g, Type::arrow(Type::prod(nat(), nat()), nat()))],
        Term::lam(&[(&x, nat()), (&y, nat())], body),
    ));
    Ok(Term::lam(&[(&m, nat())], Term::call(search, vec![Term::constant("0"), Term::Var(m.clone())])))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::lambda::{denote, Env, Value};

    fn sig() -> Arc<Signature> {
        Arc::new(Signature::flat_nats(64))
    }

    fn run(sig: &Arc<Signature>, t: &Term, fuel: usize) -> Option<usize> {
        match denote(t, &Env::new(), sig, fuel).unwrap() {
            Value::Data(tok) => sig.base("N").unwrap().label(tok).parse().ok(),
            _ => None,
        }
    }

    fn c(s: &str) -> Term {
        Term::constant(s)
    }

    fn v(s: &str) -> Term {
        Term::var(s)
    }

    fn num(k: usize) -> Term {
        c(&k.to_string())
    }

    #[test]
    fn arithmetic() {
        let s = sig();
        assert_eq!(run(&s, &Term::call(c("add"), vec![num(2), num(3)]), 64), Some(5));
        assert_eq!(run(&s, &Term::call(c("mul"), vec![num(3), num(4)]), 64), Some(12));
        assert_eq!(run(&s, &Term::call(c("sub"), vec![num(3), num(5)]), 64), Some(0));
        assert_eq!(run(&s, &Term::call(c("dist"), vec![num(3), num(7)]), 64), Some(4));
        assert_eq!(run(&s, &Term::call(c("add"), vec![num(60), num(7)]), 64), None);
    }

    #[test]
    fn recursion_equations() {
        let s = sig();
        let n = || Type::base("N");
        let f = Term::lam(&[("m", n())], Term::app(c("succ"), Term::app(c("succ"), v("m"))));
        let g = Term::lam(
            &[("a", n()), ("b", n()), ("r", n())],
            Term::call(c("add"), vec![v("r"), Term::call(c("add"), vec![v("a"), v("b")])]),
        );
        let h = compile_primrec(&f, &g, &s).unwrap();
        let oracle = |n: usize, m: usize| -> usize {
            let mut r = m + 2;
            for i in 0..n {
                r += i + m;
            }
            r
        };
        for a in 0..=5 {
            for b in 0..=5 {
                let lhs = run(&s, &Term::call(h.clone(), vec![num(a), num(b)]), 64);
                assert_eq!(lhs, Some(oracle(a, b)));
                if a == 0 {
                    assert_eq!(lhs, run(&s, &Term::app(f.clone(), num(b)), 64));
                } else {
                    let prev = Term::call(h.clone(), vec![num(a - 1), num(b)]);
                    let rhs = run(&s, &Term::call(g.clone(), vec![num(a - 1), num(b), prev]), 64);
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn least_zero_search() {
        let s = sig();
        let n = || Type::base("N");
        let dist3 = Term::lam(&[("a", n()), ("b", n())], Term::call(c("dist"), vec![v("a"), num(3)]));
        assert_eq!(run(&s, &Term::app(compile_mu(&dist3, &s).unwrap(), num(0)), 64), Some(3));
        let itself = Term::lam(&[("a", n()), ("b", n())], v("a"));
        assert_eq!(run(&s, &Term::app(compile_mu(&itself, &s).unwrap(), num(9)), 64), Some(0));
        let never = Term::lam(&[("a", n()), ("b", n())], Term::app(c("succ"), v("a")));
        for fuel in [0, 5, 64, 70] {
            assert_eq!(run(&s, &Term::app(compile_mu(&never, &s).unwrap(), num(1)), fuel), None);
        }
    }

    #[test]
    fn binders_avoid_free_names() {
        let s = Signature::flat_nats(4);
        let n = || Type::base("N");
        let f = Term::lam(&[("m", n())], v("m"));
        let g = Term::lam(&[("a", n()), ("b", n()), ("r", n())], v("r"));
        let t = compile_primrec(&f, &g, &s).unwrap();
        assert!(free_vars(&t).is_empty());
        assert!(compile_primrec(&g, &f, &s).is_err());
    }
}
