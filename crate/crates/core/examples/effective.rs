// Effective presentations: enumerated bases, computable maps and their
// dovetailed graphs.

use std::sync::Arc;

use finitary::basis::{FinitePresentation, Presentation};
use finitary::constructors::{enum_funspace, enum_product, pairing, unpair, PowersetPresentation, StreamPresentation};
use finitary::fixtures;
use finitary::mapping::{enumerate_graph, FnMap};

pub fn run_example() {
    assert_eq!(unpair(pairing(3, 5)), (3, 5));
    println!("pairing: {:?}", (0..6).map(unpair).collect::<Vec<_>>());

    // Finite sets of naturals, coded in binary.
    let pw = PowersetPresentation;
    println!("powerset: {}", (0..8).map(|i| pw.label(i)).collect::<Vec<_>>().join(" "));
    assert_eq!(pw.label(pw.lub_index(1, 2).unwrap()), "{0,1}");

    let streams: Arc<dyn Presentation> = Arc::new(StreamPresentation);
    println!("streams: {}", (0..8).map(|i| streams.label(i)).collect::<Vec<_>>().join(" "));

    let t: Arc<dyn Presentation> = FinitePresentation::natural(fixtures::shared(fixtures::truth())).shared();
    let tp = enum_product(t.clone(), streams.clone());
    println!("T × C: {}", (0..6).map(|i| tp.label(i)).collect::<Vec<_>>().join(" "));
    let fs = enum_funspace(t.clone(), t.clone());
    println!("T ⇒ T: {}", (0..6).map(|i| fs.label(i)).collect::<Vec<_>>().join(" "));

    // Prepending 1 to a stream, enumerated as a graph.
    let cons1 = FnMap::new(streams.clone(), streams.clone(), |i, j| {
        StreamPresentation::decode(j).leq(&StreamPresentation::decode(i).prepend("1"))
    });
    let g8 = enumerate_graph(&cons1, 8);
    let g12 = enumerate_graph(&cons1, 12);
    assert_eq!(g12[..8], g8[..]);
    for (i, j) in g8 {
        println!("  {} ↦ {}", streams.label(i), streams.label(j));
    }
}

#[allow(dead_code)]
fn main() {
    run_example();
}
