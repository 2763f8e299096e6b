// Finite bases: consistency, lubs, glbs, ideals and isomorphisms.

use std::sync::Arc;

use finitary::basis::{find_isomorphism, BasisExt, BasisRef, ElementKind, FiniteBasis};
use finitary::fixtures;
use finitary::ideal::Ideal;

pub fn run_example() {
    let iv: BasisRef = Arc::new(fixtures::intervals(12));
    let t = |l: &str| fixtures::tok(&iv, l);

    // (2,6) and (4,8) can both hold: the answer is in 4..=6.
    let lub = iv.lub(&[t("(2,6)"), t("(4,8)")]).unwrap();
    println!("lub (2,6) (4,8) = {}", iv.label(lub));
    assert_eq!(iv.label(lub), "(4,6)");

    // No integer is both in 2..=6 and in 7..=12.
    assert!(!iv.consistent(&[t("(2,6)"), t("(7,12)")]));
    let err = iv.lub(&[t("(2,6)"), t("(7,12)")]).unwrap_err();
    println!("lub (2,6) (7,12): {err}");

    let glb = iv.glb(&[t("(2,6)"), t("(4,8)")]).unwrap();
    assert_eq!(iv.label(glb), "(2,8)");
    assert_eq!(iv.label(iv.lub(&[]).unwrap()), "(0,12)");

    // A finite ideal is the down-set of its lub.
    let x = Ideal::close(&iv, &[t("(3,3)")]).unwrap();
    println!("ideal of (3,3) has {} elements", x.len());
    assert_eq!(x.len(), 4 * 10);
    assert_eq!(iv.classify_element(t("(3,3)")), ElementKind::Total);
    assert_eq!(iv.classify_element(t("(3,4)")), ElementKind::Partial);

    // Validation rejects orders without lubs.
    let bowtie = FiniteBasis::validate(
        "bowtie",
        &["⊥", "a", "b", "c", "d"],
        &[("⊥", "a"), ("⊥", "b"), ("a", "c"), ("b", "c"), ("a", "d"), ("b", "d")],
    );
    println!("bowtie: {}", bowtie.unwrap_err());

    let strings: BasisRef = Arc::new(fixtures::example_strings());
    let copy = FiniteBasis::from_order(
        "copy",
        strings.tokens().map(|t| format!("s{}", t.index())).collect(),
        |i, j| strings.leq(finitary::basis::Token::new(i), finitary::basis::Token::new(j)),
    )
    .unwrap();
    let iso = find_isomorphism(strings.as_ref(), &copy).unwrap().expect("a relabeling is isomorphic");
    assert_eq!(iso.len(), 7);
    assert!(find_isomorphism(strings.as_ref(), &fixtures::chain(7)).unwrap().is_none());
}

#[allow(dead_code)]
fn main() {
    run_example();
}
