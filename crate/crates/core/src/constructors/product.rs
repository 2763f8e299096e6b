use std::sync::Arc;

use crate::basis::{split_top_level, Basis, BasisRef, Token};

/// Pairs `[d,e]` ordered componentwise. Token `[d,e]` has index
/// `d·|right| + e`.
#[derive(Debug)]
pub struct ProductBasis {
    left: BasisRef,
    right: BasisRef,
    name: String,
}

impl ProductBasis {
    pub fn new(left: BasisRef, right: BasisRef) -> Arc<ProductBasis> {
        let name = format!("({} x {})", left.name(), right.name());
        Arc::new(ProductBasis { left, right, name })
    }

    pub fn left(&self) -> &BasisRef {
        &self.left
    }

    pub fn right(&self) -> &BasisRef {
        &self.right
    }

    pub fn pair(&self, d: Token, e: Token) -> Token {
        Token::new(d.index() * self.right.len() + e.index())
    }

    pub fn split(&self, t: Token) -> (Token, Token) {
        let r = self.right.len();
        (Token::new(t.index() / r), Token::new(t.index() % r))
    }
}

impl Basis for ProductBasis {
    fn name(&self) -> &str {
        &self.name
    }

    fn len(&self) -> usize {
        self.left.len() * self.right.len()
    }

    fn bottom(&self) -> Token {
        self.pair(self.left.bottom(), self.right.bottom())
    }

    fn leq(&self, a: Token, b: Token) -> bool {
        let (a0, a1) = self.split(a);
        let (b0, b1) = self.split(b);
        self.left.leq(a0, b0) && self.right.leq(a1, b1)
    }

    fn join(&self, a: Token, b: Token) -> Option<Token> {
        let (a0, a1) = self.split(a);
        let (b0, b1) = self.split(b);
        Some(self.pair(self.left.join(a0, b0)?, self.right.join(a1, b1)?))
    }

    fn label(&self, t: Token) -> String {
        let (d, e) = self.split(t);
        format!("[{},{}]", self.left.label(d), self.right.label(e))
    }

    fn lookup(&self, label: &str) -> Option<Token> {
        let inner = label.strip_prefix('[')?.strip_suffix(']')?;
        let parts = split_top_level(inner);
        // Labels of the components may themselves contain commas.
        (1..parts.len()).find_map(|k| {
            let cut: usize = parts[..k].iter().map(|p| p.len() + 1).sum::<usize>() - 1;
            let d = self.left.lookup(&inner[..cut])?;
            let e = self.right.lookup(&inner[cut + 1..])?;
            Some(self.pair(d, e))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::{find_isomorphism, BasisExt, FiniteBasis};
    use crate::fixtures;

    fn materialize(b: &dyn Basis) -> FiniteBasis {
        let labels = b.tokens().map(|t| b.label(t)).collect();
        FiniteBasis::from_order("m", labels, |i, j| b.leq(Token::new(i), Token::new(j))).unwrap()
    }

    #[test]
    fn chain_squared_is_a_diamond() {
        let c: BasisRef = Arc::new(fixtures::chain(2));
        let p = ProductBasis::new(c.clone(), c);
        let m = materialize(p.as_ref());
        let diamond = FiniteBasis::validate(
            "diamond",
            &["⊥", "l", "r", "t"],
            &[("⊥", "l"), ("⊥", "r"), ("l", "t"), ("r", "t")],
        )
        .unwrap();
        assert!(find_isomorphism(&m, &diamond).unwrap().is_some());
        assert_eq!(p.label(p.bottom()), "[⊥,⊥]");
    }

    #[test]
    fn componentwise_consistency() {
        let s: BasisRef = Arc::new(fixtures::example_strings());
        let c: BasisRef = Arc::new(fixtures::chain(2));
        let p = ProductBasis::new(s, c);
        let x = p.lookup("[0⊥,⊥]").unwrap();
        let y = p.lookup("[1⊥,c1]").unwrap();
        assert!(!p.consistent(&[x, y]));
        let z = p.lookup("[00,⊥]").unwrap();
        let w = p.lookup("[0⊥,c1]").unwrap();
        assert_eq!(p.label(p.join(z, w).unwrap()), "[00,c1]");
    }

    #[test]
    fn labels_round_trip_with_commas() {
        let i: BasisRef = Arc::new(fixtures::intervals(4));
        let p = ProductBasis::new(i.clone(), i);
        for t in p.tokens() {
            assert_eq!(p.lookup(&p.label(t)), Some(t));
        }
    }

    #[test]
    fn product_is_valid_and_commutes() {
        let a: BasisRef = Arc::new(fixtures::hook());
        let b: BasisRef = Arc::new(fixtures::chain(2));
        let ab = materialize(ProductBasis::new(a.clone(), b.clone()).as_ref());
        let ba = materialize(ProductBasis::new(b, a).as_ref());
        assert!(find_isomorphism(&ab, &ba).unwrap().is_some());
    }

    #[test]
    fn product_associates() {
        let a: BasisRef = Arc::new(fixtures::chain(2));
        let b: BasisRef = Arc::new(fixtures::flat("v", &["x", "y"]));
        let c: BasisRef = Arc::new(fixtures::chain(2));
        let left: BasisRef = ProductBasis::new(ProductBasis::new(a.clone(), b.clone()), c.clone());
        let right: BasisRef = ProductBasis::new(a, ProductBasis::new(b, c));
        let l = materialize(left.as_ref());
        let r = materialize(right.as_ref());
        assert!(find_isomorphism(&l, &r).unwrap().is_some());
    }
}
