//! The `check`/`fade` combinators and strictification.

use std::sync::Arc;

use crate::basis::BasisRef;
use crate::constructors::ProductBasis;
use crate::fixtures::flat;
use crate::mapping::{compose, pair_map, ApproxMap, MapError};

/// The two-point basis `O = {⊥, 0}`.
pub fn two_point() -> BasisRef {
    Arc::new(flat("O", &["0"]))
}

/// `x check y ⟺ y = ⊥ or x ≠ ⊥`.
pub fn check_map(d: &BasisRef) -> ApproxMap {
    let o = two_point();
    let top = o.lookup("0").unwrap();
    ApproxMap::from_fn(d, &o, |x| if x == d.bottom() { o.bottom() } else { top }).expect("check is monotone")
}

/// `fade(⊥, x) = ⊥` and `fade(0, x) = x`.
pub fn fade_map(d: &BasisRef) -> (Arc<ProductBasis>, ApproxMap) {
    let o = two_point();
    let prod = ProductBasis::new(o.clone(), d.clone());
    let pb: BasisRef = prod.clone();
    let map = ApproxMap::from_fn(&pb, d, |t| {
        let (s, x) = prod.split(t);
        if s == o.bottom() {
            d.bottom()
        } else {
            x
        }
    })
    .expect("fade is monotone");
    (prod, map)
}

/// `strict(f) = λx. fade(check(x), f(x))`.
pub fn strictify(f: &ApproxMap) -> Result<ApproxMap, MapError> {
    let (_, fade) = fade_map(f.target());
    compose(&fade, &pair_map(&check_map(f.source()), f)?)
}

/// `a(x) = fade(check(x), u)`: a retraction onto a copy of `O`.
pub fn fade_retraction(d: &BasisRef, u: crate::basis::Token) -> Result<ApproxMap, MapError> {
    let (_, fade) = fade_map(d);
    compose(&fade, &pair_map(&check_map(d), &ApproxMap::constant(d, d, u))?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::BasisExt;
    use crate::fixtures::{self, shared, tok};
    use crate::ideal::Ideal;

    #[test]
    fn check_detects_bottom() {
        let d = shared(fixtures::example_strings());
        let c = check_map(&d);
        for x in d.tokens() {
            assert_eq!(c.image_token(x) == c.target().bottom(), x == d.bottom());
        }
    }

    #[test]
    fn strict_constants() {
        let d = shared(fixtures::example_strings());
        let e = tok(&d, "10");
        let s = strictify(&ApproxMap::constant(&d, &d, e)).unwrap();
        assert!(s.apply(&Ideal::bottom(&d)).unwrap().is_bottom());
        for x in d.tokens().filter(|&x| x != d.bottom()) {
            assert_eq!(s.image_token(x), e);
        }
        assert_eq!(strictify(&s).unwrap(), s);
    }

    #[test]
    fn strictify_is_idempotent_on_all_small_maps() {
        for b in fixtures::small_bases(3) {
            let b = shared(b);
            let fs = crate::constructors::FunSpaceBasis::new(b.clone(), b.clone()).unwrap();
            for f in fs.maps() {
                let s = strictify(&f).unwrap();
                assert_eq!(strictify(&s).unwrap(), s);
                assert!(s.is_subset(&f));
                for x in b.tokens().filter(|&x| x != b.bottom()) {
                    assert_eq!(s.image_token(x), f.image_token(x));
                }
            }
        }
    }

    #[test]
    fn fade_retraction_is_idempotent() {
        let d = shared(fixtures::example_strings());
        let a = fade_retraction(&d, tok(&d, "01")).unwrap();
        assert_eq!(compose(&a, &a).unwrap(), a);
        assert!(!a.is_identity_below());
    }
}
