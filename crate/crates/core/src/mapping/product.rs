use std::sync::Arc;

use super::{compose, expect_basis, ApproxMap, MapError};
use crate::basis::{BasisExt, BasisRef};
use crate::constructors::ProductBasis;

/// `a ⟨F,G⟩ [d,e] ⟺ a F d ∧ a G e`.
pub fn pair_map(f: &ApproxMap, g: &ApproxMap) -> Result<ApproxMap, MapError> {
    expect_basis(f.source().as_ref(), g.source().as_ref())?;
    let prod = ProductBasis::new(f.target().clone(), g.target().clone());
    let gens = f
        .source()
        .tokens()
        .map(|a| prod.pair(f.image_token(a), g.image_token(a)))
        .collect();
    let target: BasisRef = prod;
    Ok(ApproxMap::from_generators(f.source(), &target, gens))
}

/// `[d,e] P₀ d' ⟺ d' ⊑ d`.
pub fn proj0(prod: &Arc<ProductBasis>) -> ApproxMap {
    let source: BasisRef = prod.clone();
    ApproxMap::from_monotone_fn(&source, prod.left(), |t| prod.split(t).0)
}

/// `[d,e] P₁ e' ⟺ e' ⊑ e`.
pub fn proj1(prod: &Arc<ProductBasis>) -> ApproxMap {
    let source: BasisRef = prod.clone();
    ApproxMap::from_monotone_fn(&source, prod.right(), |t| prod.split(t).1)
}

/// Which argument of a two-place map is held fixed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Side {
    Left(String),
    Right(String),
}

/// The section of `f` at a fixed argument, built as `f∘⟨K,I⟩` or `f∘⟨I,K⟩`.
///
/// The source of `f` must be a product basis; its components are recovered
/// from `prod`, which must have the same name and size.
pub fn section_map(
    f: &ApproxMap,
    prod: &Arc<ProductBasis>,
    side: &Side,
) -> Result<ApproxMap, MapError> {
    expect_basis(f.source().as_ref(), prod.as_ref())?;
    let (fixed, free) = match side {
        Side::Left(_) => (prod.left(), prod.right()),
        Side::Right(_) => (prod.right(), prod.left()),
    };
    let label = match side {
        Side::Left(l) | Side::Right(l) => l,
    };
    let t = fixed
        .lookup(label)
        .ok_or_else(|| MapError::UnknownElement(label.clone()))?;
    let k = ApproxMap::constant(free, fixed, t);
    let id = ApproxMap::identity(free);
    let inner = match side {
        Side::Left(_) => pair_map(&k, &id)?,
        Side::Right(_) => pair_map(&id, &k)?,
    };
    compose(f, &inner)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::ideal::Ideal;

    fn strings() -> BasisRef {
        Arc::new(fixtures::example_strings())
    }

    fn chain2() -> BasisRef {
        Arc::new(fixtures::chain(2))
    }

    #[test]
    fn projection_laws() {
        let a = strings();
        let c = chain2();
        let prod = ProductBasis::new(a.clone(), c.clone());
        let p0 = proj0(&prod);
        for t in prod.tokens() {
            let (d, _) = prod.split(t);
            for d2 in a.tokens() {
                assert_eq!(p0.relates(t, d2), a.leq(d2, d));
            }
        }
        let f =
            ApproxMap::finite_step_closure_labels(&a, &a, &[("0⊥", "1⊥"), ("00", "11")]).unwrap();
        let g = ApproxMap::constant(&a, &c, c.lookup("c1").unwrap());
        let fg = pair_map(&f, &g).unwrap();
        assert_eq!(compose(&p0, &fg).unwrap(), f);
        assert_eq!(compose(&proj1(&prod), &fg).unwrap(), g);
        let prod_ref: BasisRef = prod.clone();
        assert_eq!(
            pair_map(&p0, &proj1(&prod)).unwrap(),
            ApproxMap::identity(&prod_ref)
        );
    }

    #[test]
    fn sections() {
        let a = strings();
        let prod = ProductBasis::new(a.clone(), a.clone());
        let left = section_map(&proj0(&prod), &prod, &Side::Left("0⊥".into())).unwrap();
        assert_eq!(left, ApproxMap::constant(&a, &a, a.lookup("0⊥").unwrap()));
        let right = section_map(&proj1(&prod), &prod, &Side::Left("0⊥".into())).unwrap();
        assert_eq!(right, ApproxMap::identity(&a));
        let x = Ideal::close_labels(&a, &["11"]).unwrap();
        assert_eq!(right.apply(&x).unwrap(), x);
        assert!(section_map(&proj0(&prod), &prod, &Side::Right("zz".into())).is_err());
    }
}
