// Domain constructors: products, separated sums, function spaces and
// recursive trees.

use std::sync::Arc;

use finitary::basis::{Basis, BasisExt, BasisRef};
use finitary::constructors::{sum_basis, FunSpaceBasis, ProductBasis, RecTreeBasis, Tagged};
use finitary::fixtures::{self, tok};
use finitary::mapping::compose;

pub fn run_example() {
    let t: BasisRef = Arc::new(fixtures::truth());
    let n: BasisRef = Arc::new(fixtures::flat_nats(2));

    let p = ProductBasis::new(t.clone(), n.clone());
    println!("{}: {} elements", p.name(), p.len());
    assert_eq!(p.len(), 3 * 4);
    let x = p.lookup("[true,⊥]").unwrap();
    let y = p.lookup("[⊥,1]").unwrap();
    assert_eq!(p.label(p.join(x, y).unwrap()), "[true,1]");

    // The sum keeps the two sides apart with a shared bottom.
    let (s, maps) = sum_basis(t.clone(), n.clone());
    assert_eq!(s.len(), 1 + 3 + 4);
    let l = s.inl(tok(&t, "true"));
    let r = s.inr(tok(&n, "0"));
    assert!(s.join(l, r).is_none());
    assert_eq!(s.tag(r), Tagged::Right(tok(&n, "0")));
    let round = compose(&maps.out_left, &maps.in_left).unwrap();
    assert_eq!(round.generators(), finitary::mapping::ApproxMap::identity(&t).generators());
    println!("{}: {}", s.name(), s.tokens().map(|k| s.label(k)).collect::<Vec<_>>().join(" "));

    // Monotone functions T → T.
    let fs = FunSpaceBasis::new(t.clone(), t.clone()).unwrap();
    for f in fs.tokens() {
        println!("  {}", fs.label(f));
    }
    assert_eq!(fs.len(), 11);

    // Trees over one atom, by nesting depth.
    let a: BasisRef = Arc::new(fixtures::flat("A", &["a"]));
    let sizes: Vec<usize> = (0..3).map(|d| RecTreeBasis::new(a.clone(), d).len()).collect();
    println!("tree sizes by depth: {sizes:?}");
    let tr = RecTreeBasis::new(a.clone(), 1);
    let leaf = tr.atom(tok(&a, "a")).unwrap();
    let node = tr.node(leaf, tr.delta()).unwrap();
    println!("{}", tr.label(node));
    assert!(tr.leq(tr.node(tr.delta(), tr.delta()).unwrap(), node));
}

#[allow(dead_code)]
fn main() {
    run_example();
}
