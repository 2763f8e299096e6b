use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use super::{reduce, trees_up_to, u_leq, u_lub, UTree, UniversalError};
use crate::basis::{Basis, Token};

/// Deepest truncation that is materialized. `U_3` has 255 trees, `U_4`
/// already 65535.
pub const TRUNCATION_LIMIT: usize = 3;

/// A finite set of reduced trees closed under consistent lubs, as a basis.
/// Tokens are sorted by depth, then serialization; labels are the
/// serializations.
#[derive(Debug, Clone)]
pub struct TreeBasis {
    name: String,
    trees: Vec<UTree>,
    index: HashMap<UTree, Token>,
    up: Vec<FixedBitSet>,
}

impl TreeBasis {
    pub fn from_trees(name: &str, trees: impl IntoIterator<Item = UTree>) -> Result<TreeBasis, UniversalError> {
        let mut trees: Vec<UTree> = trees.into_iter().map(|t| reduce(&t)).collect();
        if trees.iter().any(UTree::is_top) {
            return Err(UniversalError::TopToken);
        }
        trees.sort_by(|a, b| a.canonical_cmp(b));
        trees.dedup();
        if trees.first() != Some(&UTree::Delta) {
            return Err(UniversalError::NoDelta);
        }
        let index: HashMap<UTree, Token> = trees.iter().enumerate().map(|(i, t)| (t.clone(), Token::new(i))).collect();
        for (i, a) in trees.iter().enumerate() {
            for b in &trees[i + 1..] {
                if let Some(j) = u_lub(a, b) {
                    if !index.contains_key(&j) {
                        return Err(UniversalError::NotClosed {
                            left: a.to_string(),
                            right: b.to_string(),
                            lub: j.to_string(),
                        });
                    }
                }
            }
        }
        let n = trees.len();
        let up = trees
            .iter()
            .map(|a| {
                let mut row = FixedBitSet::with_capacity(n);
                for (j, b) in trees.iter().enumerate() {
                    if u_leq(a, b) {
                        row.insert(j);
                    }
                }
                row
            })
            .collect();
        Ok(TreeBasis { name: name.to_string(), trees, index, up })
    }

    pub fn tree(&self, t: Token) -> &UTree {
        &self.trees[t.index()]
    }

    pub fn trees(&self) -> &[UTree] {
        &self.trees
    }

    /// The token of a tree, after reduction.
    pub fn token_of(&self, t: &UTree) -> Option<Token> {
        self.index.get(t).or_else(|| self.index.get(&reduce(t))).copied()
    }

    pub fn max_depth(&self) -> usize {
        self.trees.iter().map(UTree::depth).max().unwrap_or(0)
    }
}

/// `U_d`: every reduced tree of depth at most `d` except `⊤`.
pub fn u_truncation(depth: usize) -> Result<TreeBasis, UniversalError> {
    if depth > TRUNCATION_LIMIT {
        return Err(UniversalError::TruncationLimit { depth, limit: TRUNCATION_LIMIT });
    }
    TreeBasis::from_trees(&format!("U{depth}"), trees_up_to(depth))
}

impl Basis for TreeBasis {
    fn name(&self) -> &str {
        &self.name
    }

    fn len(&self) -> usize {
        self.trees.len()
    }

    fn bottom(&self) -> Token {
        Token::new(0)
    }

    fn leq(&self, a: Token, b: Token) -> bool {
        self.up[a.index()].contains(b.index())
    }

    fn join(&self, a: Token, b: Token) -> Option<Token> {
        u_lub(self.tree(a), self.tree(b)).map(|j| self.index[&j])
    }

    fn label(&self, t: Token) -> String {
        self.tree(t).to_string()
    }

    fn lookup(&self, label: &str) -> Option<Token> {
        label.parse::<UTree>().ok().and_then(|t| self.token_of(&t))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::{BasisExt, FiniteBasis};

    #[test]
    fn truncations_are_finitary() {
        for d in 0..=2 {
            let u = u_truncation(d).unwrap();
            let labels: Vec<String> = u.tokens().map(|t| u.label(t)).collect();
            let copy = FiniteBasis::from_order("copy", labels, |i, j| u.leq(Token::new(i), Token::new(j))).unwrap();
            assert_eq!(copy.len(), u.len());
            for a in u.tokens() {
                for b in u.tokens() {
                    assert_eq!(u.join(a, b), copy.join(a, b));
                }
            }
        }
        assert_eq!(u_truncation(3).unwrap().len(), 255);
        assert!(matches!(u_truncation(4), Err(UniversalError::TruncationLimit { .. })));
    }

    #[test]
    fn tree_sets_must_be_closed() {
        let t = |s: &str| s.parse::<UTree>().unwrap();
        let err = TreeBasis::from_trees("x", [t("D"), t("(D,(D,T))"), t("((D,T),D)")]).unwrap_err();
        assert!(matches!(err, UniversalError::NotClosed { .. }));
        assert_eq!(TreeBasis::from_trees("x", [t("(D,T)")]).unwrap_err(), UniversalError::NoDelta);
        let b = TreeBasis::from_trees("x", [t("(D,(D,D))"), t("(D,T)")]).unwrap();
        assert_eq!(b.len(), 2);
        assert_eq!(b.lookup("(D,T)"), Some(Token::new(1)));
    }
}
