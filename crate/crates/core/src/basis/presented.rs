use std::fmt;
use std::sync::Arc;

use super::{BasisError, BasisRef, Token};

/// An effective presentation: an enumeration of a (possibly infinite)
/// basis starting at its bottom, with decidable order, consistency and lub.
///
/// Indices may repeat elements. Implementations must be pure; nothing is
/// cached between calls, so enumerations restart from zero.
pub trait Presentation: fmt::Debug + Send + Sync {
    /// Number of indices, or `None` for an infinite enumeration.
    fn len(&self) -> Option<usize>;
    fn label(&self, i: usize) -> String;
    fn leq(&self, i: usize, j: usize) -> bool;
    fn lub_index(&self, i: usize, j: usize) -> Option<usize>;

    fn consistent(&self, i: usize, j: usize) -> bool {
        self.lub_index(i, j).is_some()
    }

    fn same(&self, i: usize, j: usize) -> bool {
        self.leq(i, j) && self.leq(j, i)
    }

    fn in_range(&self, i: usize) -> bool {
        self.len().map_or(true, |n| i < n)
    }
}

/// A finite basis enumerated in a caller-chosen order.
#[derive(Clone, Debug)]
pub struct FinitePresentation {
    basis: BasisRef,
    order: Vec<Token>,
    position: Vec<usize>,
}

/// Wraps a finite basis as a presentation. `order` must list every token
/// exactly once, bottom first.
pub fn present(basis: BasisRef, order: &[Token]) -> Result<FinitePresentation, BasisError> {
    let n = basis.len();
    if order.len() != n {
        return Err(BasisError::BadOrder(format!(
            "expected {n} elements, got {}",
            order.len()
        )));
    }
    if order.first() != Some(&basis.bottom()) {
        return Err(BasisError::BadOrder(format!(
            "first element `{}` is not the bottom",
            order.first().map(|&t| basis.label(t)).unwrap_or_default()
        )));
    }
    let mut position = vec![usize::MAX; n];
    for (i, &t) in order.iter().enumerate() {
        if t.index() >= n || position[t.index()] != usize::MAX {
            return Err(BasisError::BadOrder(format!(
                "element {t} repeated or out of range"
            )));
        }
        position[t.index()] = i;
    }
    Ok(FinitePresentation {
        basis,
        order: order.to_vec(),
        position,
    })
}

impl FinitePresentation {
    /// Presents a basis in token order (its bottom moved to the front).
    pub fn natural(basis: BasisRef) -> Self {
        let bottom = basis.bottom();
        let mut order = vec![bottom];
        order.extend((0..basis.len()).map(Token::new).filter(|&t| t != bottom));
        present(basis, &order).expect("natural order is a permutation")
    }

    pub fn from_labels<S: AsRef<str>>(basis: BasisRef, labels: &[S]) -> Result<Self, BasisError> {
        let order = labels
            .iter()
            .map(|l| {
                basis
                    .lookup(l.as_ref())
                    .ok_or_else(|| BasisError::UnknownElement(l.as_ref().to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        present(basis, &order)
    }

    pub fn basis(&self) -> &BasisRef {
        &self.basis
    }

    pub fn token(&self, i: usize) -> Token {
        self.order[i]
    }

    pub fn index_of(&self, t: Token) -> usize {
        self.position[t.index()]
    }

    pub fn order(&self) -> &[Token] {
        &self.order
    }

    pub fn shared(self) -> Arc<dyn Presentation> {
        Arc::new(self)
    }
}

impl Presentation for FinitePresentation {
    fn len(&self) -> Option<usize> {
        Some(self.order.len())
    }

    fn label(&self, i: usize) -> String {
        self.basis.label(self.order[i])
    }

    fn leq(&self, i: usize, j: usize) -> bool {
        self.basis.leq(self.order[i], self.order[j])
    }

    fn lub_index(&self, i: usize, j: usize) -> Option<usize> {
        self.basis
            .join(self.order[i], self.order[j])
            .map(|t| self.position[t.index()])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::BasisExt;
    use crate::fixtures;

    #[test]
    fn hook_order() {
        let b: BasisRef = Arc::new(fixtures::hook());
        let p = FinitePresentation::from_labels(b.clone(), &["⊥", "b", "c", "a"]).unwrap();
        assert_eq!(p.label(3), "a");
        assert!(p.leq(1, 3));
        assert!(!p.consistent(1, 2));
        assert_eq!(p.lub_index(0, 3), Some(3));
    }

    #[test]
    fn bad_orders() {
        let b: BasisRef = Arc::new(fixtures::hook());
        assert!(FinitePresentation::from_labels(b.clone(), &["b", "⊥", "c", "a"]).is_err());
        assert!(FinitePresentation::from_labels(b.clone(), &["⊥", "b", "b", "a"]).is_err());
        assert!(FinitePresentation::from_labels(b, &["⊥", "b"]).is_err());
    }

    #[test]
    fn oracles_agree_with_basis() {
        let b: BasisRef = Arc::new(fixtures::example_strings());
        let p = FinitePresentation::natural(b.clone());
        for i in 0..b.len() {
            for j in 0..b.len() {
                let (x, y) = (p.token(i), p.token(j));
                assert_eq!(p.leq(i, j), b.leq(x, y));
                assert_eq!(p.consistent(i, j), b.consistent(&[x, y]));
                assert_eq!(p.lub_index(i, j).map(|k| p.token(k)), b.join(x, y));
            }
        }
    }

    #[test]
    fn one_point() {
        let b: BasisRef = Arc::new(fixtures::chain(1));
        let p = FinitePresentation::natural(b);
        assert_eq!(p.len(), Some(1));
        assert_eq!(p.lub_index(0, 0), Some(0));
    }
}
