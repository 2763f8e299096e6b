// Partial recursive functions as terms: primitive recursion and
// minimization compiled to `fix`.

use std::sync::Arc;

use finitary::lambda::{compile_mu, compile_primrec, denote, parse_term, Env, Signature, Term, Value};

fn nat(sig: &Arc<Signature>, t: &Term, fuel: usize) -> Option<usize> {
    match denote(t, &Env::new(), sig, fuel).unwrap() {
        Value::Data(k) => sig.base("N").unwrap().label(k).parse().ok(),
        _ => None,
    }
}

pub fn run_example() {
    let sig = Arc::new(Signature::flat_nats(40));
    let p = |s: &str| parse_term(s, &[]).unwrap();

    // Addition by recursion on the first argument.
    let plus = compile_primrec(&p(r"\m:N. m"), &p(r"\n:N, m:N, r:N. (succ r)"), &sig).unwrap();
    // Multiplication, using that addition.
    let times = compile_primrec(&p(r"\m:N. 0"), &Term::lam(
        &[("n", finitary::lambda::Type::base("N")), ("m", finitary::lambda::Type::base("N")), ("r", finitary::lambda::Type::base("N"))],
        Term::call(plus.clone(), vec![Term::var("r"), Term::var("m")]),
    ), &sig)
    .unwrap();
    let two_plus_three = nat(&sig, &Term::call(plus.clone(), vec![p("2"), p("3")]), 64);
    let three_times_four = nat(&sig, &Term::call(times, vec![p("3"), p("4")]), 64);
    println!("2+3 = {two_plus_three:?}, 3·4 = {three_times_four:?}");
    assert_eq!(two_plus_three, Some(5));
    assert_eq!(three_times_four, Some(12));

    // μn. |n·n − m| = 0: an integer square root when one exists.
    let f = p(r"\n:N, m:N. (dist <(mul <n, n>), m>)");
    let root = compile_mu(&f, &sig).unwrap();
    for m in [0, 9, 16, 7] {
        let r = nat(&sig, &Term::app(root.clone(), p(&m.to_string())), 64);
        println!("√{m} = {}", r.map_or("⊥".to_string(), |r| r.to_string()));
    }
    assert_eq!(nat(&sig, &Term::app(root.clone(), p("16")), 64), Some(4));
    assert_eq!(nat(&sig, &Term::app(root, p("7")), 64), None);
}

#[allow(dead_code)]
fn main() {
    run_example();
}
