// Sub-domains, retractions and projections, and solving a domain equation
// inside the universal domain.

use std::sync::Arc;

use finitary::basis::{find_isomorphism_with_limit, BasisRef, FinitePresentation};
use finitary::constructors::RecTreeBasis;
use finitary::fixtures::{self, tok};
use finitary::lambda::fade_retraction;
use finitary::mapping::ApproxMap;
use finitary::universal::{
    classify_projection, embed, solve_domain_equation, sub_combinator, DomainExpr, ProjectionClass, SubDomain,
    UProjection,
};

pub fn run_example() {
    // {⊥, 0⊥, 00} sits inside the two-bit strings.
    let s: BasisRef = Arc::new(fixtures::example_strings());
    let sub = SubDomain::from_labels(&s, &["⊥", "0⊥", "00"]).unwrap();
    let pair = sub.projection_pair();
    pair.check().unwrap();
    let r = sub.retraction();
    println!("retraction onto {{⊥,0⊥,00}}: 01 ↦ {}", s.label(r.image_token(tok(&s, "01"))));
    assert_eq!(classify_projection(&r).unwrap(), ProjectionClass::FinitaryProjection);

    // {⊥, 0⊥, 1⊥} without 00 is fine, {⊥, 00, 01} too, but a diamond's
    // sides without its top are not.
    let d: BasisRef = Arc::new(
        finitary::basis::FiniteBasis::validate("d", &["⊥", "l", "r", "t"], &[("⊥", "l"), ("⊥", "r"), ("l", "t"), ("r", "t")])
            .unwrap(),
    );
    println!("{{⊥,l,r}} in the diamond: {}", SubDomain::from_labels(&d, &["⊥", "l", "r"]).unwrap_err());

    // The fade map is a retraction that is not below the identity.
    let t: BasisRef = Arc::new(fixtures::truth());
    let fade = fade_retraction(&t, tok(&t, "true")).unwrap();
    println!("fade: {}", classify_projection(&fade).unwrap());

    // sub(f) is the largest finitary projection inside f.
    let lift = ApproxMap::finite_step_closure_labels(&d, &d, &[("l", "l"), ("r", "l")]).unwrap();
    let p = sub_combinator(&lift).unwrap();
    println!("lift: {}, sub(lift): {}", classify_projection(&lift).unwrap(), classify_projection(&p).unwrap());
    assert!(p.is_subset(&lift));
    assert!(sub_combinator(&p).unwrap() == p);

    // T = A + T×T, approximated by projections of U.
    let a: BasisRef = Arc::new(fixtures::flat("A", &["a"]));
    let atoms = UProjection::of_certificate(&embed(&FinitePresentation::natural(a.clone())).unwrap()).unwrap();
    let expr = DomainExpr::sum(DomainExpr::Const(atoms), DomainExpr::prod(DomainExpr::Var, DomainExpr::Var));
    let chain = solve_domain_equation(&expr, 12, 2).unwrap();
    for (n, pn) in chain.iter().enumerate() {
        let approx = RecTreeBasis::approximant(a.clone(), n);
        let iso = find_isomorphism_with_limit(&pn.domain(), approx.as_ref(), 20).unwrap();
        println!("p{n}: {} fixed trees, deepest {}, matches approximant {n}: {}", pn.len(), pn.depth(), iso.is_some());
        assert!(iso.is_some());
    }
    println!("over U3: {}", solve_domain_equation(&expr, 3, 2).unwrap_err());
}

#[allow(dead_code)]
fn main() {
    run_example();
}
