// Least fixed points: Kleene chains on finite bases, fuel-bounded search
// on infinite presentations, and simultaneous equations.

use std::sync::Arc;

use finitary::basis::{BasisExt, BasisRef};
use finitary::constructors::ProductBasis;
use finitary::fixpoint::{fix_finite, fix_fuel, fix_fuel_finite, fix_pair, kleene_chain, longest_stream, prefix_equation, sigma_table, verify_least};
use finitary::fixtures::{self, tok};
use finitary::mapping::ApproxMap;

pub fn run_example() {
    let c: BasisRef = Arc::new(fixtures::chain(5));
    let up = ApproxMap::from_fn(&c, &c, |t| finitary::basis::Token::new((t.index() + 1).min(4))).unwrap();
    let chain = kleene_chain(&up).unwrap();
    let r = fix_finite(&up).unwrap();
    println!("chain {:?}, fix {:?} after {} steps", c.labels_of(&chain), r.value.labels(), r.iterations);
    assert!(verify_least(&up, &r.value).unwrap());
    assert_eq!(fix_fuel_finite(&up, 64).unwrap().value, r.value);
    assert!(!fix_fuel_finite(&up, 2).unwrap().converged);

    // a = 01a: every fuel level gives a longer prefix of 0101…
    let eq = prefix_equation("01");
    let mut last = 0;
    for fuel in [4, 16, 64, 256] {
        let s = longest_stream(&fix_fuel(&eq, fuel));
        println!("fuel {fuel:>3}: {s}");
        assert!(s.bits.len() >= last);
        assert!(s.bit_string().starts_with(&"01".repeat(s.bits.len() / 2)));
        last = s.bits.len();
    }
    assert!(last >= 2);

    // σ(n) by table iteration.
    let (table, rounds) = sigma_table(20);
    println!("σ(0..=6) = {:?} in {rounds} rounds", &table[..7]);
    let expected: Vec<Option<usize>> = (0..7).map(|n| Some(n * (n.max(1) - 1) / 2)).collect();
    assert_eq!(table[..7], expected[..]);

    // x = y, y = true: solved jointly and by nesting.
    let t: BasisRef = Arc::new(fixtures::truth());
    let tt = ProductBasis::new(t.clone(), t.clone());
    let tt_ref: BasisRef = tt.clone();
    let tau = ApproxMap::from_fn(&tt_ref, &t, |p| tt.split(p).1).unwrap();
    let sigma = ApproxMap::constant(&tt_ref, &t, tok(&t, "true"));
    let (x, y) = fix_pair(&tt, &tau, &sigma).unwrap();
    assert_eq!((x.labels(), y.labels()), (vec!["true".into(), "⊥".into()], vec!["true".into(), "⊥".into()]));
}

#[allow(dead_code)]
fn main() {
    run_example();
}
