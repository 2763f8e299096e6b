// Approximable mappings: validation, step closure, composition, pairing
// and currying.

use std::sync::Arc;

use finitary::basis::{Basis, BasisRef};
use finitary::constructors::{FunSpaceBasis, ProductBasis};
use finitary::fixtures::{self, tok};
use finitary::ideal::Ideal;
use finitary::mapping::{apply_combinator, compose, curry_map, pair_map, proj0, proj1, ApproxMap, MapError};

pub fn run_example() {
    let s: BasisRef = Arc::new(fixtures::example_strings());

    // Forget the second bit.
    let first = ApproxMap::finite_step_closure_labels(&s, &s, &[("0⊥", "0⊥"), ("1⊥", "1⊥")]).unwrap();
    let x = Ideal::principal(&s, tok(&s, "01"));
    println!("first(01) = {:?}", first.apply(&x).unwrap().labels());
    assert_eq!(s.label(first.image_token(tok(&s, "01"))), "0⊥");

    // A pair set that is not monotone is rejected with a witness.
    let err = ApproxMap::validate_labels(&s, &s, &[("⊥", "⊥"), ("0⊥", "⊥"), ("0⊥", "0⊥"), ("00", "⊥"), ("01", "⊥")]);
    let Err(MapError::NotApproximable(v)) = err else { panic!("expected a violation") };
    println!("rejected: {}", v[0]);

    // Flip the first bit; flipping twice is the identity on first bits.
    let flip = ApproxMap::from_fn(&s, &s, |t| {
        let l = s.label(t);
        let flipped: String = l.chars().map(|c| match c { '0' => '1', '1' => '0', c => c }).collect();
        s.lookup(&flipped).unwrap()
    })
    .unwrap();
    let twice = compose(&flip, &flip).unwrap();
    assert!(twice == ApproxMap::identity(&s));
    assert!(compose(&first, &flip).unwrap() == compose(&flip, &first).unwrap());

    // ⟨f,g⟩ followed by the projections gives back f and g.
    let prod = ProductBasis::new(s.clone(), s.clone());
    let both = pair_map(&first, &flip).unwrap();
    assert!(compose(&proj0(&prod), &both).unwrap() == first);
    assert!(compose(&proj1(&prod), &both).unwrap() == flip);

    // Currying: apply ∘ ⟨curry(g)∘p0, p1⟩ = g.
    let t: BasisRef = Arc::new(fixtures::truth());
    let tt = ProductBasis::new(t.clone(), t.clone());
    let tt_ref: BasisRef = tt.clone();
    let and = ApproxMap::from_fn(&tt_ref, &t, |p| {
        let (a, b) = tt.split(p);
        match (t.label(a).as_str(), t.label(b).as_str()) {
            ("true", "true") => tok(&t, "true"),
            ("false", _) | (_, "false") => tok(&t, "false"),
            _ => t.bottom(),
        }
    })
    .unwrap();
    let fs = FunSpaceBasis::new(t.clone(), t.clone()).unwrap();
    println!("T => T has {} elements", fs.len());
    let curried = curry_map(&and, &tt, &fs).unwrap();
    let (app_dom, apply) = apply_combinator(&fs);
    let back = compose(&apply, &pair_map(&compose(&curried, &proj0(&tt)).unwrap(), &proj1(&tt)).unwrap()).unwrap();
    assert_eq!(back.generators(), and.generators());
    println!("curry(and)(false) = {}", fs.label(curried.image_token(tok(&t, "false"))));
    assert_eq!(app_dom.len(), fs.len() * 3);
}

#[allow(dead_code)]
fn main() {
    run_example();
}
