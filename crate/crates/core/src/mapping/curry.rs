use std::sync::Arc;

use super::{expect_basis, ApproxMap, MapError};
use crate::basis::{BasisExt, BasisRef};
use crate::constructors::{FunSpaceBasis, ProductBasis};

/// `Curry_G(a) = {F ∈ B⇒C | ∀[b,c]∈F. [a,b] G c}`.
///
/// `g` must have source `prod = A×B` and target `C`, and `funspace` must be
/// `B⇒C`. The result maps `A` into `B⇒C`.
pub fn curry_map(
    g: &ApproxMap,
    prod: &Arc<ProductBasis>,
    funspace: &Arc<FunSpaceBasis>,
) -> Result<ApproxMap, MapError> {
    expect_basis(g.source().as_ref(), prod.as_ref())?;
    expect_basis(prod.right().as_ref(), funspace.source().as_ref())?;
    expect_basis(g.target().as_ref(), funspace.target().as_ref())?;
    let b = prod.right();
    let mut gens = Vec::with_capacity(prod.left().len());
    for a in prod.left().tokens() {
        let table: Vec<_> = b.tokens().map(|y| g.image_token(prod.pair(a, y))).collect();
        // The section of a valid map is monotone, so its table is a token.
        gens.push(
            funspace
                .token_of_table(&table)
                .expect("sections are monotone"),
        );
    }
    let target: BasisRef = funspace.clone();
    Ok(ApproxMap::from_generators(prod.left(), &target, gens))
}

/// `[F,a] Apply b ⟺ a F b`, as a map `(A⇒B)×A → B`.
pub fn apply_combinator(funspace: &Arc<FunSpaceBasis>) -> (Arc<ProductBasis>, ApproxMap) {
    let fs: BasisRef = funspace.clone();
    let prod = ProductBasis::new(fs, funspace.source().clone());
    let source: BasisRef = prod.clone();
    let map = ApproxMap::from_monotone_fn(&source, funspace.target(), |t| {
        let (f, a) = prod.split(t);
        funspace.table(f)[a.index()]
    });
    (prod, map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::Basis;
    use crate::fixtures;
    use crate::ideal::Ideal;
    use crate::mapping::{compose, pair_map, proj0, proj1};

    fn chain2() -> BasisRef {
        Arc::new(fixtures::chain(2))
    }

    #[test]
    fn apply_is_application() {
        let a: BasisRef = Arc::new(fixtures::example_strings());
        let c = chain2();
        let fs = FunSpaceBasis::new(a.clone(), c.clone()).unwrap();
        let (prod, apply) = apply_combinator(&fs);
        assert!(apply.check().is_empty());
        for f in fs.tokens() {
            for x in a.tokens() {
                let fx = fs.as_map(f).apply(&Ideal::principal(&a, x)).unwrap();
                let pair: BasisRef = prod.clone();
                let got = apply
                    .apply(&Ideal::principal(&pair, prod.pair(f, x)))
                    .unwrap();
                assert_eq!(got.labels(), fx.labels());
            }
        }
    }

    #[test]
    fn curry_of_second_projection() {
        let c = chain2();
        let prod = ProductBasis::new(c.clone(), c.clone());
        let fs = FunSpaceBasis::new(c.clone(), c.clone()).unwrap();
        let curried = curry_map(&proj1(&prod), &prod, &fs).unwrap();
        let id = fs.token_of(&ApproxMap::identity(&c)).unwrap();
        for a in c.tokens() {
            assert_eq!(curried.image_token(a), id);
        }
        assert_eq!(fs.label(id), "{c1↦c1}");
    }

    #[test]
    fn curry_equations_on_chains() {
        let c = chain2();
        let prod = ProductBasis::new(c.clone(), c.clone());
        let prod_ref: BasisRef = prod.clone();
        let fs = FunSpaceBasis::new(c.clone(), c.clone()).unwrap();
        let (_, apply) = apply_combinator(&fs);
        let all = FunSpaceBasis::new(prod_ref.clone(), c.clone()).unwrap();
        for g in all.maps() {
            let curried = curry_map(&g, &prod, &fs).unwrap();
            let inner =
                pair_map(&compose(&curried, &proj0(&prod)).unwrap(), &proj1(&prod)).unwrap();
            assert_eq!(compose(&apply, &inner).unwrap(), g);
        }
    }
}
