// The universal domain: reduced trees and the embedding of a finite basis.

use std::sync::Arc;

use finitary::basis::{BasisExt, BasisRef, FinitePresentation};
use finitary::fixtures;
use finitary::universal::{embed, path_string, reduce, u_leq, u_lub, UTree};

pub fn run_example() {
    let raw: UTree = "(((T,(T,T)),(T,D)),((D,D),(T,T)))".parse().unwrap();
    let normal = reduce(&raw);
    println!("{raw} reduces to {normal}");
    assert_eq!(normal.to_string(), "((T,(T,D)),(D,T))");

    let x: UTree = "(D,(D,T))".parse().unwrap();
    let y: UTree = "(D,(T,D))".parse().unwrap();
    println!("{x} ⊔ {y} = {}", u_lub(&x, &y).unwrap());
    assert!(u_lub(&"(D,T)".parse().unwrap(), &"(T,D)".parse().unwrap()).is_none());
    assert!(u_leq(&x, &"(D,T)".parse().unwrap()));

    // Embed a four-element basis, enumerated ⊥, b, c, a.
    let b: BasisRef = Arc::new(fixtures::hook());
    let p = FinitePresentation::from_labels(b.clone(), &["⊥", "b", "c", "a"]).unwrap();
    let cert = embed(&p).unwrap();
    for (r, members) in cert.region_table().unwrap() {
        println!("D{r} = {:?}", b.labels_of(&members));
    }
    for (r, path) in cert.locs() {
        println!("Loc({r}) = {}", path_string(path));
    }
    for (t, tree) in cert.trees() {
        println!("{} => {tree}", b.label(t));
    }
    let trees: Vec<String> = cert.trees().iter().map(|(_, t)| t.to_string()).collect();
    assert_eq!(trees, ["D", "(D,T)", "(T,(D,T))", "((D,T),T)"]);
    cert.verify().unwrap();
    cert.check_locs().unwrap();

    // Every other enumeration gives another valid embedding.
    let q = FinitePresentation::from_labels(b.clone(), &["⊥", "c", "a", "b"]).unwrap();
    let other = embed(&q).unwrap();
    println!("with ⊥,c,a,b: {:?}", other.trees().iter().map(|(_, t)| t.to_string()).collect::<Vec<_>>());
}

#[allow(dead_code)]
fn main() {
    run_example();
}
