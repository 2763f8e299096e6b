// The typed λ-calculus: parsing, type checking and evaluation over flat
// naturals and truncated streams.

use std::sync::Arc;

use finitary::lambda::{denote, denote_as_map, parse_term, parse_term_file, typecheck, value_to_token, Env, Signature, Type};

const PROGRAM: &str = r"
# σ(n) = σ(n-1) + (n-1)
term sigma : N->N = fix \f:N->N. \n:N. (cond <(zero n), 0, (add <(f (pred n)), (pred n)>)>)
term swap : NxN->NxN = \x:N, y:N. <y, x>
";

pub fn run_example() {
    let base = Signature::flat_nats(30);
    let (file, sig) = parse_term_file(PROGRAM, &base).unwrap();
    let sig = Arc::new(sig);
    for (name, ty, term) in &file.terms {
        println!("{name} : {ty} = {term}");
    }

    let n = sig.base("N").unwrap();
    for k in 0..=6 {
        let term = parse_term(&format!("(sigma {k})"), &[]).unwrap();
        let v = denote(&term, &Env::new(), &sig, 64).unwrap();
        let got = n.label(value_to_token(&sig, &v, &Type::base("N")).unwrap());
        println!("σ({k}) = {got}");
        assert_eq!(got, (k * (k.max(1) - 1) / 2).to_string());
    }

    // Too little fuel leaves deep calls undefined.
    let v = denote(&parse_term("(sigma 6)", &[]).unwrap(), &Env::new(), &sig, 3).unwrap();
    assert_eq!(n.label(value_to_token(&sig, &v, &Type::base("N")).unwrap()), "⊥");

    let bad = parse_term("(succ true)", &[]).unwrap();
    println!("(succ true): {}", typecheck(&bad, &sig, &[]).unwrap_err());

    // A term with a free variable is a map from its environment.
    let small = Arc::new(Signature::flat_nats(4));
    let pred2 = parse_term("(pred (pred x))", &["x".into()]).unwrap();
    let m = denote_as_map(&pred2, &[("x".into(), Type::base("N"))], &small, 8).unwrap();
    let labels: Vec<String> = m.generators().iter().map(|&t| m.target().label(t)).collect();
    println!("pred∘pred over N4: {labels:?}");

    // Streams: double every bit.
    let streams = Arc::new(Signature::streams(6));
    let d = parse_term(
        r"fix \d:C->C. \x:C. (cond <(empty x), eps, (cond <(zero x), (succ0 (succ0 (d (tail x)))), (succ1 (succ1 (d (tail x))))>)>)",
        &[],
    )
    .unwrap();
    let c = streams.base("C").unwrap();
    let input = finitary::lambda::token_to_value(&streams, c.lookup("01⊥").unwrap(), &Type::base("C")).unwrap();
    let out = finitary::lambda::apply_value(&denote(&d, &Env::new(), &streams, 16).unwrap(), input).unwrap();
    let out = c.label(value_to_token(&streams, &out, &Type::base("C")).unwrap());
    println!("double(01⊥) = {out}");
    assert_eq!(out, "0011⊥");
}

#[allow(dead_code)]
fn main() {
    run_example();
}
