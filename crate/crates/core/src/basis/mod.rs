//! Finitary bases: partial orders in which every finite consistent subset
//! has a least upper bound.
//!
//! Every basis implements [`Basis`]. Materialized orders live in
//! [`FiniteBasis`]; the constructors module adds structural bases (products,
//! sums) whose order is computed on demand. Infinite bases are only reachable
//! through [`Presentation`] oracles.

mod finite;
mod iso;
mod presented;

use std::fmt;
use std::sync::Arc;

use fixedbitset::FixedBitSet;

pub use finite::FiniteBasis;
pub use iso::{find_isomorphism, find_isomorphism_with_limit, DEFAULT_ISO_LIMIT};
pub use presented::{present, FinitePresentation, Presentation};

/// Index of an element within one basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Token(u32);

impl Token {
    pub const fn new(index: usize) -> Self {
        Token(index as u32)
    }

    pub const fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

pub type BasisRef = Arc<dyn Basis>;

/// A finite finitary basis.
///
/// Implementations must be valid: `leq` is a partial order with least
/// element `bottom`, and `join` returns the least upper bound of any
/// consistent pair (and `None` exactly for inconsistent pairs).
pub trait Basis: fmt::Debug + Send + Sync {
    fn name(&self) -> &str;
    fn len(&self) -> usize;
    fn bottom(&self) -> Token;
    fn leq(&self, a: Token, b: Token) -> bool;
    fn join(&self, a: Token, b: Token) -> Option<Token>;
    fn label(&self, t: Token) -> String;
    fn lookup(&self, label: &str) -> Option<Token>;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BasisError {
    #[error("basis has no elements")]
    Empty,
    #[error("duplicate element `{0}`")]
    DuplicateElement(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("order has a cycle: {0} ⊑ {1} and {1} ⊑ {0}")]
    Cycle(String, String),
    #[error("no bottom element")]
    NoBottom,
    #[error("first element `{first}` is not the bottom (`{found}` is not above it)")]
    FirstNotBottom { first: String, found: String },
    #[error("consistent subset {{{}}} has no least upper bound; minimal upper bounds {{{}}}", .subset.join(", "), .minimal.join(", "))]
    MissingLub {
        subset: Vec<String>,
        minimal: Vec<String>,
    },
    #[error("subset {{{}}} is inconsistent", .0.join(", "))]
    Inconsistent(Vec<String>),
    #[error("greatest lower bound of the empty set is undefined")]
    EmptyGlb,
    #[error(
        "presentation order must be a permutation of the elements starting at the bottom: {0}"
    )]
    BadOrder(String),
    #[error("basis has {size} elements, above the limit of {limit}")]
    TooLarge { size: usize, limit: usize },
}

/// Whether an element can still be refined.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ElementKind {
    Partial,
    Total,
}

/// Derived operations available on every basis.
pub trait BasisExt: Basis {
    fn tokens(&self) -> TokenIter {
        TokenIter {
            next: 0,
            len: self.len(),
        }
    }

    fn labels_of(&self, ts: &[Token]) -> Vec<String> {
        ts.iter().map(|&t| self.label(t)).collect()
    }

    /// Resolves labels to tokens, failing on the first unknown label.
    fn resolve<S: AsRef<str>>(&self, labels: &[S]) -> Result<Vec<Token>, BasisError> {
        labels
            .iter()
            .map(|l| {
                self.lookup(l.as_ref())
                    .ok_or_else(|| BasisError::UnknownElement(l.as_ref().to_string()))
            })
            .collect()
    }

    fn consistent(&self, subset: &[Token]) -> bool {
        self.lub(subset).is_ok()
    }

    /// Least upper bound, folding pairwise joins. In a valid basis pairwise
    /// joins determine every finite lub.
    fn lub(&self, subset: &[Token]) -> Result<Token, BasisError> {
        let mut acc = self.bottom();
        for &t in subset {
            acc = self
                .join(acc, t)
                .ok_or_else(|| BasisError::Inconsistent(self.labels_of(subset)))?;
        }
        Ok(acc)
    }

    /// Lub of the common lower bounds.
    fn glb(&self, subset: &[Token]) -> Result<Token, BasisError> {
        if subset.is_empty() {
            return Err(BasisError::EmptyGlb);
        }
        let lower: Vec<Token> = self
            .tokens()
            .filter(|&y| subset.iter().all(|&s| self.leq(y, s)))
            .collect();
        self.lub(&lower)
    }

    fn down_set(&self, x: Token) -> FixedBitSet {
        let mut set = FixedBitSet::with_capacity(self.len());
        for y in self.tokens() {
            if self.leq(y, x) {
                set.insert(y.index());
            }
        }
        set
    }

    fn principal_ideal(&self, x: Token) -> Vec<Token> {
        self.down_set(x).ones().map(Token::new).collect()
    }

    fn classify_element(&self, x: Token) -> ElementKind {
        if self.tokens().any(|y| y != x && self.leq(x, y)) {
            ElementKind::Partial
        } else {
            ElementKind::Total
        }
    }

    fn same_basis(&self, other: &dyn Basis) -> bool {
        self.name() == other.name() && self.len() == other.len()
    }
}

impl<B: Basis + ?Sized> BasisExt for B {}

pub struct TokenIter {
    next: usize,
    len: usize,
}

impl Iterator for TokenIter {
    type Item = Token;

    fn next(&mut self) -> Option<Token> {
        if self.next < self.len {
            self.next += 1;
            Some(Token::new(self.next - 1))
        } else {
            None
        }
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.len - self.next;
        (n, Some(n))
    }
}

impl ExactSizeIterator for TokenIter {}

/// Splits `s` at commas that are not nested inside brackets.
pub(crate) fn split_top_level(s: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' | '{' | '<' => depth += 1,
            ')' | ']' | '}' | '>' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&s[start..]);
    parts
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn lub_and_glb_on_strings() {
        let b = fixtures::example_strings();
        let t = |l: &str| b.lookup(l).unwrap();
        assert_eq!(b.lub(&[t("0⊥"), t("00")]).unwrap(), t("00"));
        assert_eq!(b.lub(&[]).unwrap(), t("⊥"));
        assert!(!b.consistent(&[t("00"), t("01")]));
        assert!(b.consistent(&[]));
        assert_eq!(b.glb(&[t("00"), t("01")]).unwrap(), t("0⊥"));
        assert_eq!(b.glb(&[t("00"), t("10")]).unwrap(), t("⊥"));
        assert_eq!(b.glb(&[t("11")]).unwrap(), t("11"));
        assert!(matches!(
            b.lub(&[t("00"), t("01")]),
            Err(BasisError::Inconsistent(_))
        ));
    }

    #[test]
    fn principal_ideals_and_kinds() {
        let b = fixtures::example_strings();
        let t = |l: &str| b.lookup(l).unwrap();
        let mut got = b.labels_of(&b.principal_ideal(t("00")));
        got.sort();
        assert_eq!(got, vec!["00", "0⊥", "⊥"]);
        assert_eq!(b.principal_ideal(t("⊥")), vec![t("⊥")]);
        assert_eq!(b.classify_element(t("11")), ElementKind::Total);
        assert_eq!(b.classify_element(t("1⊥")), ElementKind::Partial);
        assert_eq!(b.classify_element(t("⊥")), ElementKind::Partial);
    }

    #[test]
    fn truncated_interval_principal_ideal() {
        let b = fixtures::intervals(9);
        let x = b.lookup("(4,6)").unwrap();
        let ideal = b.principal_ideal(x);
        let mut expected = Vec::new();
        for n in 0..=9 {
            for m in n..=9 {
                if n <= 4 && 6 <= m {
                    expected.push(b.lookup(&format!("({n},{m})")).unwrap());
                }
            }
        }
        expected.sort();
        assert_eq!(ideal, expected);
    }

    #[test]
    fn splits_respect_nesting() {
        assert_eq!(split_top_level("(2,6),[a,b]"), vec!["(2,6)", "[a,b]"]);
        assert_eq!(split_top_level("x"), vec!["x"]);
    }
}
