use std::sync::Arc;

use crate::basis::{Basis, BasisRef, Token};
use crate::mapping::ApproxMap;

/// The separated sum: a fresh bottom below `inl(d)` and `inr(e)`. Tokens of
/// different tags are inconsistent, and `inl(⊥)` differs from the fresh
/// bottom.
#[derive(Debug)]
pub struct SumBasis {
    left: BasisRef,
    right: BasisRef,
    name: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Tagged {
    Bottom,
    Left(Token),
    Right(Token),
}

impl SumBasis {
    pub fn new(left: BasisRef, right: BasisRef) -> Arc<SumBasis> {
        let name = format!("({} + {})", left.name(), right.name());
        Arc::new(SumBasis { left, right, name })
    }

    pub fn left(&self) -> &BasisRef {
        &self.left
    }

    pub fn right(&self) -> &BasisRef {
        &self.right
    }

    pub fn tag(&self, t: Token) -> Tagged {
        let i = t.index();
        let l = self.left.len();
        if i == 0 {
            Tagged::Bottom
        } else if i <= l {
            Tagged::Left(Token::new(i - 1))
        } else {
            Tagged::Right(Token::new(i - 1 - l))
        }
    }

    pub fn untag(&self, t: Tagged) -> Token {
        match t {
            Tagged::Bottom => Token::new(0),
            Tagged::Left(d) => Token::new(1 + d.index()),
            Tagged::Right(e) => Token::new(1 + self.left.len() + e.index()),
        }
    }

    pub fn inl(&self, d: Token) -> Token {
        self.untag(Tagged::Left(d))
    }

    pub fn inr(&self, e: Token) -> Token {
        self.untag(Tagged::Right(e))
    }
}

impl Basis for SumBasis {
    fn name(&self) -> &str {
        &self.name
    }

    fn len(&self) -> usize {
        1 + self.left.len() + self.right.len()
    }

    fn bottom(&self) -> Token {
        Token::new(0)
    }

    fn leq(&self, a: Token, b: Token) -> bool {
        match (self.tag(a), self.tag(b)) {
            (Tagged::Bottom, _) => true,
            (Tagged::Left(x), Tagged::Left(y)) => self.left.leq(x, y),
            (Tagged::Right(x), Tagged::Right(y)) => self.right.leq(x, y),
            _ => false,
        }
    }

    fn join(&self, a: Token, b: Token) -> Option<Token> {
        match (self.tag(a), self.tag(b)) {
            (Tagged::Bottom, _) => Some(b),
            (_, Tagged::Bottom) => Some(a),
            (Tagged::Left(x), Tagged::Left(y)) => Some(self.inl(self.left.join(x, y)?)),
            (Tagged::Right(x), Tagged::Right(y)) => Some(self.inr(self.right.join(x, y)?)),
            _ => None,
        }
    }

    fn label(&self, t: Token) -> String {
        match self.tag(t) {
            Tagged::Bottom => "⊥".to_string(),
            Tagged::Left(d) => format!("inl({})", self.left.label(d)),
            Tagged::Right(e) => format!("inr({})", self.right.label(e)),
        }
    }

    fn lookup(&self, label: &str) -> Option<Token> {
        if label == "⊥" {
            return Some(self.bottom());
        }
        if let Some(inner) = label.strip_prefix("inl(").and_then(|s| s.strip_suffix(')')) {
            return self.left.lookup(inner).map(|d| self.inl(d));
        }
        let inner = label.strip_prefix("inr(")?.strip_suffix(')')?;
        self.right.lookup(inner).map(|e| self.inr(e))
    }
}

/// The injections and projections of a sum. Projections send tokens of the
/// other tag to bottom.
pub struct SumMaps {
    pub in_left: ApproxMap,
    pub in_right: ApproxMap,
    pub out_left: ApproxMap,
    pub out_right: ApproxMap,
}

pub fn sum_basis(left: BasisRef, right: BasisRef) -> (Arc<SumBasis>, SumMaps) {
    let sum = SumBasis::new(left.clone(), right.clone());
    let s: BasisRef = sum.clone();
    let in_left = ApproxMap::from_monotone_fn(&left, &s, |d| sum.inl(d));
    let in_right = ApproxMap::from_monotone_fn(&right, &s, |e| sum.inr(e));
    let out_left = ApproxMap::from_monotone_fn(&s, &left, |t| match sum.tag(t) {
        Tagged::Left(d) => d,
        _ => left.bottom(),
    });
    let out_right = ApproxMap::from_monotone_fn(&s, &right, |t| match sum.tag(t) {
        Tagged::Right(e) => e,
        _ => right.bottom(),
    });
    (
        sum,
        SumMaps {
            in_left,
            in_right,
            out_left,
            out_right,
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::BasisExt;
    use crate::fixtures;
    use crate::ideal::Ideal;
    use crate::mapping::compose;

    #[test]
    fn out_after_in_is_identity() {
        let a: BasisRef = Arc::new(fixtures::example_strings());
        let b: BasisRef = Arc::new(fixtures::chain(2));
        let (sum, maps) = sum_basis(a.clone(), b.clone());
        for m in [
            &maps.in_left,
            &maps.in_right,
            &maps.out_left,
            &maps.out_right,
        ] {
            assert!(m.check().is_empty());
        }
        let round = compose(&maps.out_left, &maps.in_left).unwrap();
        assert_eq!(round, ApproxMap::identity(&a));
        for y in b.tokens() {
            let x = maps.in_right.apply(&Ideal::principal(&b, y)).unwrap();
            assert!(maps.out_left.apply(&x).unwrap().is_bottom());
        }
        assert_ne!(sum.inl(a.bottom()), sum.bottom());
    }

    #[test]
    fn tags_are_inconsistent() {
        let a: BasisRef = Arc::new(fixtures::chain(2));
        let sum = SumBasis::new(a.clone(), a);
        let l = sum.lookup("inl(⊥)").unwrap();
        let r = sum.lookup("inr(⊥)").unwrap();
        assert!(!sum.consistent(&[l, r]));
        assert!(sum.leq(sum.bottom(), l));
        for t in sum.tokens() {
            assert_eq!(sum.lookup(&sum.label(t)), Some(t));
        }
    }
}
