use std::sync::Arc;

use super::{pairing, powerset_decode, unpair};
use crate::basis::Presentation;

type Pres = Arc<dyn Presentation>;

/// Reduces an index into a finite presentation by wrapping around.
fn wrap(p: &dyn Presentation, i: usize) -> usize {
    p.len().map_or(i, |n| i % n)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Tag {
    Bottom,
    Left(usize),
    Right(usize),
}

/// The separated sum: `Z₀ = ⊥`, `Z_{2n+1} = inl(X_n)`, `Z_{2n+2} = inr(Y_n)`.
#[derive(Debug, Clone)]
pub struct SumPresentation {
    left: Pres,
    right: Pres,
}

pub fn enum_sum(left: Pres, right: Pres) -> SumPresentation {
    SumPresentation { left, right }
}

impl SumPresentation {
    fn tag(&self, i: usize) -> Tag {
        match i {
            0 => Tag::Bottom,
            _ if i % 2 == 1 => Tag::Left(wrap(self.left.as_ref(), (i - 1) / 2)),
            _ => Tag::Right(wrap(self.right.as_ref(), (i - 2) / 2)),
        }
    }
}

impl Presentation for SumPresentation {
    fn len(&self) -> Option<usize> {
        Some(1 + 2 * self.left.len()?.max(self.right.len()?))
    }

    fn label(&self, i: usize) -> String {
        match self.tag(i) {
            Tag::Bottom => "⊥".to_string(),
            Tag::Left(n) => format!("inl({})", self.left.label(n)),
            Tag::Right(n) => format!("inr({})", self.right.label(n)),
        }
    }

    fn leq(&self, i: usize, j: usize) -> bool {
        match (self.tag(i), self.tag(j)) {
            (Tag::Bottom, _) => true,
            (Tag::Left(n), Tag::Left(m)) => self.left.leq(n, m),
            (Tag::Right(n), Tag::Right(m)) => self.right.leq(n, m),
            _ => false,
        }
    }

    fn lub_index(&self, i: usize, j: usize) -> Option<usize> {
        match (self.tag(i), self.tag(j)) {
            (Tag::Bottom, _) => Some(j),
            (_, Tag::Bottom) => Some(i),
            (Tag::Left(n), Tag::Left(m)) => Some(2 * self.left.lub_index(n, m)? + 1),
            (Tag::Right(n), Tag::Right(m)) => Some(2 * self.right.lub_index(n, m)? + 2),
            _ => None,
        }
    }
}

/// The product: `W_i = [X_{p(i)}, Y_{q(i)}]` with `(p(i), q(i)) = unpair(i)`.
#[derive(Debug, Clone)]
pub struct ProductPresentation {
    left: Pres,
    right: Pres,
}

pub fn enum_product(left: Pres, right: Pres) -> ProductPresentation {
    ProductPresentation { left, right }
}

impl ProductPresentation {
    fn split(&self, i: usize) -> (usize, usize) {
        let (p, q) = unpair(i);
        (wrap(self.left.as_ref(), p), wrap(self.right.as_ref(), q))
    }
}

impl Presentation for ProductPresentation {
    fn len(&self) -> Option<usize> {
        let (n, m) = (self.left.len()?, self.right.len()?);
        Some(pairing(n - 1, m - 1) + 1)
    }

    fn label(&self, i: usize) -> String {
        let (p, q) = self.split(i);
        format!("[{},{}]", self.left.label(p), self.right.label(q))
    }

    fn leq(&self, i: usize, j: usize) -> bool {
        let ((p, q), (p2, q2)) = (self.split(i), self.split(j));
        self.left.leq(p, p2) && self.right.leq(q, q2)
    }

    fn lub_index(&self, i: usize, j: usize) -> Option<usize> {
        let ((p, q), (p2, q2)) = (self.split(i), self.split(j));
        Some(pairing(
            self.left.lub_index(p, p2)?,
            self.right.lub_index(q, q2)?,
        ))
    }
}

/// Finite-step mappings between presented bases.
///
/// Index `k` names the seed `{(X_n, Y_m) | r(n,m) ∈ E_k}`. An inconsistent
/// seed names the everywhere-⊥ map, so every index denotes an element.
#[derive(Debug, Clone)]
pub struct FunSpacePresentation {
    source: Pres,
    target: Pres,
}

pub fn enum_funspace(source: Pres, target: Pres) -> FunSpacePresentation {
    FunSpacePresentation { source, target }
}

impl FunSpacePresentation {
    /// The step pairs named by index `k`.
    pub fn seed(&self, k: usize) -> Vec<(usize, usize)> {
        powerset_decode(k as u64)
            .into_iter()
            .map(|code| {
                let (n, m) = unpair(code as usize);
                (wrap(self.source.as_ref(), n), wrap(self.target.as_ref(), m))
            })
            .collect()
    }

    /// Whether the seed has a least approximable superset: every subset of
    /// steps with consistent inputs must have consistent outputs.
    pub fn seed_consistent(&self, seed: &[(usize, usize)]) -> bool {
        let n = seed.len();
        (1u64..(1 << n)).all(|mask| {
            let chosen: Vec<&(usize, usize)> = (0..n)
                .filter(|b| mask >> b & 1 == 1)
                .map(|b| &seed[b])
                .collect();
            let input = chosen
                .iter()
                .try_fold(0usize, |acc, &&(x, _)| self.source.lub_index(acc, x));
            match input {
                None => true,
                Some(a) => self.image(seed, a).is_some(),
            }
        })
    }

    /// `F(a) = ⊔{y | (x,y) ∈ seed, x ⊑ a}`.
    pub fn image(&self, seed: &[(usize, usize)], a: usize) -> Option<usize> {
        seed.iter()
            .filter(|&&(x, _)| self.source.leq(x, a))
            .try_fold(0usize, |acc, &(_, y)| self.target.lub_index(acc, y))
    }

    fn effective_seed(&self, k: usize) -> Vec<(usize, usize)> {
        let seed = self.seed(k);
        if self.seed_consistent(&seed) {
            seed
        } else {
            Vec::new()
        }
    }
}

impl Presentation for FunSpacePresentation {
    fn len(&self) -> Option<usize> {
        let (n, m) = (self.source.len()?, self.target.len()?);
        let bits = pairing(n - 1, m - 1) + 1;
        (bits < usize::BITS as usize - 1).then(|| 1usize << bits)
    }

    fn label(&self, k: usize) -> String {
        let steps: Vec<String> = self
            .effective_seed(k)
            .iter()
            .map(|&(x, y)| format!("{}↦{}", self.source.label(x), self.target.label(y)))
            .collect();
        format!("{{{}}}", steps.join(", "))
    }

    fn leq(&self, i: usize, j: usize) -> bool {
        let g = self.effective_seed(j);
        self.effective_seed(i)
            .iter()
            .all(|&(x, y)| self.image(&g, x).is_some_and(|gx| self.target.leq(y, gx)))
    }

    fn lub_index(&self, i: usize, j: usize) -> Option<usize> {
        let (si, sj) = (self.seed(i), self.seed(j));
        if !self.seed_consistent(&si) {
            return Some(j);
        }
        if !self.seed_consistent(&sj) {
            return Some(i);
        }
        let mut union = si;
        union.extend(sj);
        self.seed_consistent(&union).then_some(i | j)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::{Basis, BasisExt, BasisRef, FinitePresentation, Token};
    use crate::constructors::FunSpaceBasis;
    use crate::fixtures;
    use crate::mapping::ApproxMap;

    fn pres(b: BasisRef) -> (FinitePresentation, Pres) {
        let p = FinitePresentation::natural(b);
        (p.clone(), Arc::new(p))
    }

    #[test]
    fn sum_indices() {
        let (_, a) = pres(Arc::new(fixtures::example_strings()));
        let (_, c) = pres(Arc::new(fixtures::chain(2)));
        let s = enum_sum(a.clone(), c);
        assert_eq!(s.label(0), "⊥");
        for n in 0..7 {
            assert_eq!(s.label(2 * n + 1), format!("inl({})", a.label(n)));
        }
        assert!(!s.consistent(1, 2));
        assert_eq!(s.lub_index(0, 3), Some(3));
    }

    #[test]
    fn product_indices() {
        let (_, a) = pres(Arc::new(fixtures::example_strings()));
        let (_, c) = pres(Arc::new(fixtures::chain(2)));
        let p = enum_product(a, c);
        assert_eq!(p.label(0), "[⊥,⊥]");
        for i in 0..p.len().unwrap() {
            for j in 0..p.len().unwrap() {
                if let Some(k) = p.lub_index(i, j) {
                    assert!(p.leq(i, k) && p.leq(j, k));
                }
            }
        }
    }

    #[test]
    fn funspace_oracle_matches_table() {
        let c: BasisRef = Arc::new(fixtures::chain(2));
        let (fp, cp) = pres(c.clone());
        let fs = FunSpaceBasis::new(c.clone(), c.clone()).unwrap();
        let e = enum_funspace(cp.clone(), cp);
        let n = e.len().unwrap();
        assert_eq!(n, 32);
        let token = |k: usize| {
            let seed: Vec<(Token, Token)> = e
                .effective_seed(k)
                .iter()
                .map(|&(x, y)| (fp.token(x), fp.token(y)))
                .collect();
            fs.token_of(&ApproxMap::finite_step_closure(&c, &c, &seed).unwrap())
                .unwrap()
        };
        let mut hit = std::collections::BTreeSet::new();
        for i in 0..n {
            hit.insert(token(i));
            for j in 0..n {
                assert_eq!(e.leq(i, j), fs.leq(token(i), token(j)));
                assert_eq!(e.lub_index(i, j).map(token), fs.join(token(i), token(j)));
            }
        }
        assert_eq!(hit.len(), fs.len());
        assert_eq!(token(0), fs.bottom());
        assert!(fs.tokens().count() == 3);
    }
}
