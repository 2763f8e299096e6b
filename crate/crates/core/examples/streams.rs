// Maps on bit strings: the parity test and the map that drops a run of
// ones.

use std::sync::Arc;

use finitary::basis::BasisRef;
use finitary::fixtures::{self, drop_ones_map, parity_map, tok};

pub fn run_example() {
    let s: BasisRef = Arc::new(fixtures::prefix_strings(5));
    let t: BasisRef = Arc::new(fixtures::truth());
    let parity = parity_map(&s, &t);
    for input in ["001", "0001", "00", "1", "00001"] {
        let out = t.label(parity.image_token(tok(&s, input)));
        println!("parity({input}…) = {out}");
    }
    assert_eq!(t.label(parity.image_token(tok(&s, "001"))), "true");
    assert_eq!(t.label(parity.image_token(tok(&s, "0001"))), "false");
    assert_eq!(t.label(parity.image_token(tok(&s, "00"))), "⊥");

    let g = drop_ones_map(&s);
    for input in ["0110", "01", "1100", "00110"] {
        println!("g({input}…) = {}", s.label(g.image_token(tok(&s, input))));
    }
    assert_eq!(s.label(g.image_token(tok(&s, "0110"))), "00");
    assert_eq!(s.label(g.image_token(tok(&s, "01"))), "ε");
}

#[allow(dead_code)]
fn main() {
    run_example();
}
