//! Sub-domains, projection pairs, retractions and projections.

use std::fmt;
use std::sync::Arc;

use super::UniversalError;
use crate::basis::{Basis, BasisError, BasisExt, BasisRef, FiniteBasis, Token};
use crate::ideal::Ideal;
use crate::mapping::{compose, ApproxMap};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SubdomainViolation {
    #[error("{0} is not an element of the enclosing basis")]
    NotSubset(String),
    #[error("the bottom `{0}` of the enclosing basis is missing")]
    MissingBottom(String),
    #[error("`{left}` and `{right}` have lub `{lub}` outside the sub-basis")]
    LubOutside { left: String, right: String, lub: String },
    #[error("the sub-basis is not finitary: {0}")]
    Invalid(BasisError),
}

/// Checks that `subset` carries a sub-domain of `e`: its tokens belong
/// to `e`, it contains the bottom, and every pair of its tokens that is
/// consistent in `e` has its lub in `subset`. The restricted order is then
/// a finitary basis.
pub fn subdomain_check(e: &dyn Basis, subset: &[Token]) -> Result<(), SubdomainViolation> {
    if let Some(t) = subset.iter().find(|t| t.index() >= e.len()) {
        return Err(SubdomainViolation::NotSubset(t.to_string()));
    }
    if !subset.contains(&e.bottom()) {
        return Err(SubdomainViolation::MissingBottom(e.label(e.bottom())));
    }
    for (i, &x) in subset.iter().enumerate() {
        for &y in &subset[i + 1..] {
            if let Some(z) = e.join(x, y) {
                if !subset.contains(&z) {
                    return Err(SubdomainViolation::LubOutside {
                        left: e.label(x),
                        right: e.label(y),
                        lub: e.label(z),
                    });
                }
            }
        }
    }
    let labels: Vec<String> = subset.iter().map(|&t| e.label(t)).collect();
    FiniteBasis::from_order("sub", labels, |i, j| e.leq(subset[i], subset[j])).map_err(SubdomainViolation::Invalid)?;
    Ok(())
}

/// A sub-domain `D ◁ E`, with `D` materialized under the labels of `E`.
#[derive(Debug, Clone)]
pub struct SubDomain {
    inner: BasisRef,
    outer: BasisRef,
    // Token of `outer` for each token of `inner`.
    into: Vec<Token>,
}

/// Embedding and projection of a sub-domain: `j∘i` is the identity and
/// `i∘j` lies below the identity.
#[derive(Debug, Clone)]
pub struct ProjectionPair {
    pub i: ApproxMap,
    pub j: ApproxMap,
}

impl ProjectionPair {
    pub fn check(&self) -> Result<(), UniversalError> {
        if compose(&self.j, &self.i)? != ApproxMap::identity(self.i.source()) {
            return Err(UniversalError::Unsupported("j∘i is not the identity".into()));
        }
        if !compose(&self.i, &self.j)?.is_identity_below() {
            return Err(UniversalError::Unsupported("i∘j is not below the identity".into()));
        }
        Ok(())
    }
}

impl SubDomain {
    pub fn new(outer: &BasisRef, subset: &[Token]) -> Result<SubDomain, SubdomainViolation> {
        let mut subset = subset.to_vec();
        subset.sort();
        subset.dedup();
        subdomain_check(outer.as_ref(), &subset)?;
        let labels: Vec<String> = subset.iter().map(|&t| outer.label(t)).collect();
        let inner = FiniteBasis::from_order(&format!("sub({})", outer.name()), labels, |i, j| {
            outer.leq(subset[i], subset[j])
        })
        .map_err(SubdomainViolation::Invalid)?;
        Ok(SubDomain { inner: Arc::new(inner), outer: outer.clone(), into: subset })
    }

    pub fn from_labels<S: AsRef<str>>(outer: &BasisRef, labels: &[S]) -> Result<SubDomain, UniversalError> {
        let subset = outer.resolve(labels)?;
        Ok(SubDomain::new(outer, &subset)?)
    }

    pub fn inner(&self) -> &BasisRef {
        &self.inner
    }

    pub fn outer(&self) -> &BasisRef {
        &self.outer
    }

    pub fn tokens(&self) -> &[Token] {
        &self.into
    }

    /// The largest element of the sub-basis below `y`, as a token of the
    /// sub-basis.
    pub fn below(&self, y: Token) -> Token {
        let members: Vec<Token> =
            self.inner.tokens().filter(|&x| self.outer.leq(self.into[x.index()], y)).collect();
        self.inner.lub(&members).expect("elements below one token are consistent")
    }

    /// `i(x)` is the ideal of `E` generated by `x`; `j(y)` keeps the
    /// elements of `D` inside `y`.
    pub fn projection_pair(&self) -> ProjectionPair {
        let i = ApproxMap::from_fn(&self.inner, &self.outer, |x| self.into[x.index()]).expect("inclusion is monotone");
        let j = ApproxMap::from_fn(&self.outer, &self.inner, |y| self.below(y)).expect("j is monotone");
        ProjectionPair { i, j }
    }

    /// `x a z ⟺ ∃y ∈ D. z ⊑ y ⊑ x`.
    pub fn retraction(&self) -> ApproxMap {
        ApproxMap::from_fn(&self.outer, &self.outer, |x| self.into[self.below(x).index()]).expect("a is monotone")
    }
}

pub fn projection_pair(e: &BasisRef, subset: &[Token]) -> Result<ProjectionPair, UniversalError> {
    Ok(SubDomain::new(e, subset)?.projection_pair())
}

pub fn subdomain_retraction(e: &BasisRef, subset: &[Token]) -> Result<ApproxMap, UniversalError> {
    Ok(SubDomain::new(e, subset)?.retraction())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ProjectionClass {
    NotRetraction,
    Retraction,
    Projection,
    FinitaryProjection,
}

impl fmt::Display for ProjectionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ProjectionClass::NotRetraction => "not-retraction",
            ProjectionClass::Retraction => "retraction",
            ProjectionClass::Projection => "projection",
            ProjectionClass::FinitaryProjection => "finitary-projection",
        })
    }
}

fn self_map(a: &ApproxMap) -> Result<(), UniversalError> {
    if !a.source().same_basis(a.target().as_ref()) {
        return Err(UniversalError::NotSelfMap { from: a.source().name().into(), to: a.target().name().into() });
    }
    Ok(())
}

/// Tokens `x` with `x a x`.
pub fn fixed_tokens(a: &ApproxMap) -> Vec<Token> {
    a.source().tokens().filter(|&x| a.relates(x, x)).collect()
}

/// Checks `a∘a = a`, then `a ⊆ I`, then that `a(x)` is the ideal
/// generated by the fixed tokens inside `x`.
pub fn classify_projection(a: &ApproxMap) -> Result<ProjectionClass, UniversalError> {
    self_map(a)?;
    if compose(a, a)? != *a {
        return Ok(ProjectionClass::NotRetraction);
    }
    if !a.is_identity_below() {
        return Ok(ProjectionClass::Retraction);
    }
    let d = a.source();
    let fixed = fixed_tokens(a);
    for x in d.tokens() {
        let below: Vec<Token> = fixed.iter().copied().filter(|&f| d.leq(f, x)).collect();
        let formula = Ideal::close(d, &below).map_err(|_| UniversalError::Unsupported("fixed tokens below one token are inconsistent".into()))?;
        if formula != Ideal::principal(d, a.image_token(x)) {
            return Ok(ProjectionClass::Projection);
        }
    }
    Ok(ProjectionClass::FinitaryProjection)
}

/// `x sub(f) z ⟺ ∃y. y f y ∧ y ⊑ x ∧ z ⊑ y`.
pub fn sub_combinator(f: &ApproxMap) -> Result<ApproxMap, UniversalError> {
    self_map(f)?;
    let d = f.source();
    let fixed = fixed_tokens(f);
    Ok(ApproxMap::from_fn(d, d, |x| {
        let below: Vec<Token> = fixed.iter().copied().filter(|&y| d.leq(y, x)).collect();
        // y ⊑ f(y) is closed under lubs, so the tokens below x have a lub
        // with the same property.
        d.lub(&below).expect("tokens below x are consistent")
    })?)
}
