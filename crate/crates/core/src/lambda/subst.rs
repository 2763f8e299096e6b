use std::collections::{BTreeMap, BTreeSet};

use super::Term;

pub fn free_vars(term: &Term) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    collect(term, &mut Vec::new(), &mut out);
    out
}

fn collect(term: &Term, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
    match term {
        Term::Var(x) => {
            if !bound.contains(x) {
                out.insert(x.clone());
            }
        }
        Term::Const(_) => {}
        Term::Tuple(ts) => ts.iter().for_each(|t| collect(t, bound, out)),
        Term::App(f, a) => {
            collect(f, bound, out);
            collect(a, bound, out);
        }
        Term::Lam(ps, body) => {
            let depth = bound.len();
            bound.extend(ps.iter().map(|(n, _)| n.clone()));
            collect(body, bound, out);
            bound.truncate(depth);
        }
        Term::Fix(e) => collect(e, bound, out),
    }
}

/// `name` with a numeric suffix, chosen to avoid `taken`.
pub fn fresh_name(name: &str, taken: &BTreeSet<String>) -> String {
    let stem = name.trim_end_matches(|c: char| c.is_ascii_digit());
    (1..).map(|i| format!("{stem}{i}")).find(|n| !taken.contains(n)).unwrap()
}

/// Capture-avoiding simultaneous substitution of terms for variables.
pub fn substitute(term: &Term, map: &BTreeMap<String, Term>) -> Term {
    match term {
        Term::Var(x) => map.get(x).cloned().unwrap_or_else(|| term.clone()),
        Term::Const(_) => term.clone(),
        Term::Tuple(ts) => Term::Tuple(ts.iter().map(|t| substitute(t, map)).collect()),
        Term::App(f, a) => Term::app(substitute(f, map), substitute(a, map)),
        Term::Fix(e) => Term::fix(substitute(e, map)),
        Term::Lam(ps, body) => {
            let mut inner: BTreeMap<String, Term> =
                map.iter().filter(|(k, _)| !ps.iter().any(|(n, _)| n == *k)).map(|(k, v)| (k.clone(), v.clone())).collect();
            let body_free = free_vars(body);
            // Variables the incoming terms would bring into scope.
            let incoming: BTreeSet<String> =
                inner.iter().filter(|(k, _)| body_free.contains(*k)).flat_map(|(_, v)| free_vars(v)).collect();
            let mut taken: BTreeSet<String> = body_free.union(&incoming).cloned().collect();
            taken.extend(inner.keys().cloned());
            taken.extend(ps.iter().map(|(n, _)| n.clone()));
            let mut params = Vec::with_capacity(ps.len());
            for (n, t) in ps {
                if incoming.contains(n) {
                    let fresh = fresh_name(n, &taken);
                    taken.insert(fresh.clone());
                    inner.insert(n.clone(), Term::Var(fresh.clone()));
                    params.push((fresh, t.clone()));
                } else {
                    params.push((n.clone(), t.clone()));
                }
            }
            Term::Lam(params, Box::new(substitute(body, &inner)))
        }
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::lambda::{denote_as_map, Signature, Type};

    fn n() -> Type {
        Type::base("N")
    }

    #[test]
    fn free_and_bound() {
        let t = Term::lam(&[("x", n())], Term::app(Term::var("x"), Term::var("y")));
        assert_eq!(free_vars(&t), BTreeSet::from(["y".to_string()]));
    }

    #[test]
    fn capture_is_avoided() {
        // (λy. x)[y/x] must not become λy. y.
        let t = Term::lam(&[("y", n())], Term::var("x"));
        let s = substitute(&t, &BTreeMap::from([("x".to_string(), Term::var("y"))]));
        let Term::Lam(ps, body) = &s else { panic!() };
        assert_eq!(ps[0].0, "y1");
        assert_eq!(**body, Term::var("y"));
    }

    #[test]
    fn shadowed_names_are_left_alone() {
        let t = Term::lam(&[("x", n())], Term::var("x"));
        let s = substitute(&t, &BTreeMap::from([("x".to_string(), Term::constant("0"))]));
        assert_eq!(s, t);
    }

    #[test]
    fn fresh_names() {
        let taken = BTreeSet::from(["x1".to_string(), "x2".to_string()]);
        assert_eq!(fresh_name("x", &taken), "x3");
        assert_eq!(fresh_name("x2", &taken), "x3");
    }

    #[test]
    fn alpha_renaming_keeps_meaning() {
        let sig = Arc::new(Signature::flat_nats(2));
        let body = Term::call(Term::constant("add"), vec![Term::var("x"), Term::var("z")]);
        let a = Term::lam(&[("x", n())], body.clone());
        let b = Term::lam(&[("y", n())], substitute(&body, &BTreeMap::from([("x".to_string(), Term::var("y"))])));
        let ctx = [("z".to_string(), n())];
        let ma = denote_as_map(&a, &ctx, &sig, 6).unwrap();
        let mb = denote_as_map(&b, &ctx, &sig, 6).unwrap();
        assert_eq!(ma, mb);
    }
}
