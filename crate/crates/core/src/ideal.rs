//! Ideals: the elements of the domain generated by a basis.
//!
//! A finite basis only has principal ideals, so [`Ideal`] stores the member
//! set and can always report its generator. [`LazyIdeal`] covers ideals over
//! infinite presentations as a fuel-indexed monotone producer.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use crate::basis::{BasisExt, BasisRef, Presentation, Token};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IdealError {
    #[error("no ideal contains both `{0}` and `{1}`")]
    Inconsistent(String, String),
    #[error("ideals live in different bases: `{0}` and `{1}`")]
    BasisMismatch(String, String),
    #[error("meet of an empty list of ideals")]
    EmptyMeet,
    #[error("unknown element `{0}`")]
    UnknownElement(String),
}

/// A downward-closed, lub-closed set of tokens of a finite basis.
#[derive(Clone)]
pub struct Ideal {
    basis: BasisRef,
    members: FixedBitSet,
}

impl Ideal {
    /// The least ideal containing `seed`.
    pub fn close(basis: &BasisRef, seed: &[Token]) -> Result<Ideal, IdealError> {
        let mut acc = basis.bottom();
        for &t in seed {
            acc = basis
                .join(acc, t)
                .ok_or_else(|| IdealError::Inconsistent(basis.label(acc), basis.label(t)))?;
        }
        Ok(Ideal::principal(basis, acc))
    }

    pub fn close_labels<S: AsRef<str>>(
        basis: &BasisRef,
        labels: &[S],
    ) -> Result<Ideal, IdealError> {
        let seed = basis.resolve(labels).map_err(|_| {
            let bad = labels.iter().find(|l| basis.lookup(l.as_ref()).is_none());
            IdealError::UnknownElement(bad.map(|l| l.as_ref().to_string()).unwrap_or_default())
        })?;
        Ideal::close(basis, &seed)
    }

    pub fn principal(basis: &BasisRef, x: Token) -> Ideal {
        Ideal {
            basis: basis.clone(),
            members: basis.down_set(x),
        }
    }

    pub fn bottom(basis: &BasisRef) -> Ideal {
        Ideal::principal(basis, basis.bottom())
    }

    /// Wraps a member set that is already an ideal.
    pub(crate) fn from_members(basis: &BasisRef, members: FixedBitSet) -> Ideal {
        debug_assert_eq!(members.len(), basis.len());
        Ideal {
            basis: basis.clone(),
            members,
        }
    }

    /// Checks the two closure conditions on an arbitrary token set.
    pub fn from_set(basis: &BasisRef, tokens: &[Token]) -> Option<Ideal> {
        let mut members = FixedBitSet::with_capacity(basis.len());
        for t in tokens {
            members.insert(t.index());
        }
        let downward = tokens
            .iter()
            .all(|&t| basis.down_set(t).is_subset(&members));
        let joined = tokens.iter().all(|&a| {
            tokens.iter().all(|&b| {
                basis
                    .join(a, b)
                    .is_some_and(|j| members.contains(j.index()))
            })
        });
        (members.contains(basis.bottom().index()) && downward && joined)
            .then(|| Ideal::from_members(basis, members))
    }

    pub fn basis(&self) -> &BasisRef {
        &self.basis
    }

    pub fn members(&self) -> &FixedBitSet {
        &self.members
    }

    pub fn contains(&self, t: Token) -> bool {
        self.members.contains(t.index())
    }

    pub fn tokens(&self) -> Vec<Token> {
        self.members.ones().map(Token::new).collect()
    }

    pub fn len(&self) -> usize {
        self.members.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_bottom(&self) -> bool {
        self.len() == 1
    }

    /// The greatest member; it generates the ideal.
    pub fn generator(&self) -> Token {
        self.members
            .ones()
            .map(Token::new)
            .find(|&t| {
                self.members
                    .ones()
                    .all(|u| self.basis.leq(Token::new(u), t))
            })
            .expect("finite ideals are principal")
    }

    pub fn is_subset(&self, other: &Ideal) -> bool {
        self.members.is_subset(&other.members)
    }

    /// Member labels in sorted order.
    pub fn labels(&self) -> Vec<String> {
        let mut ls: Vec<String> = self
            .members
            .ones()
            .map(|i| self.basis.label(Token::new(i)))
            .collect();
        ls.sort();
        ls
    }

    /// The least ideal containing all of `xs`.
    pub fn lub(xs: &[Ideal]) -> Result<Ideal, IdealError> {
        let first = xs.first().ok_or(IdealError::EmptyMeet)?;
        let mut seed = Vec::new();
        for x in xs {
            check_same(first, x)?;
            seed.push(x.generator());
        }
        Ideal::close(&first.basis, &seed)
    }

    /// Intersection, which is always an ideal.
    pub fn meet(xs: &[Ideal]) -> Result<Ideal, IdealError> {
        let first = xs.first().ok_or(IdealError::EmptyMeet)?;
        let mut members = first.members.clone();
        for x in &xs[1..] {
            check_same(first, x)?;
            members.intersect_with(&x.members);
        }
        Ok(Ideal::from_members(&first.basis, members))
    }
}

fn check_same(a: &Ideal, b: &Ideal) -> Result<(), IdealError> {
    if a.basis.same_basis(b.basis.as_ref()) {
        Ok(())
    } else {
        Err(IdealError::BasisMismatch(
            a.basis.name().to_string(),
            b.basis.name().to_string(),
        ))
    }
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        self.basis.same_basis(other.basis.as_ref()) && self.members == other.members
    }
}

impl Eq for Ideal {}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal({self})")
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.labels().join(", "))
    }
}

type Producer = dyn Fn(usize) -> BTreeSet<usize> + Send + Sync;

/// An ideal over a presentation, given by the indices produced at each fuel.
/// Producers must be monotone in fuel.
#[derive(Clone)]
pub struct LazyIdeal {
    presentation: Arc<dyn Presentation>,
    producer: Arc<Producer>,
}

impl LazyIdeal {
    pub fn new<F>(presentation: Arc<dyn Presentation>, producer: F) -> Self
    where
        F: Fn(usize) -> BTreeSet<usize> + Send + Sync + 'static,
    {
        LazyIdeal {
            presentation,
            producer: Arc::new(producer),
        }
    }

    /// The ideal below a chain of generators: at fuel `f`, every index
    /// below `f` that lies under some generator produced at `f`.
    pub fn below<F>(presentation: Arc<dyn Presentation>, generators: F) -> Self
    where
        F: Fn(usize) -> Vec<usize> + Send + Sync + 'static,
    {
        let p = presentation.clone();
        LazyIdeal::new(presentation, move |fuel| {
            let gens = generators(fuel);
            (0..fuel)
                .filter(|&j| p.in_range(j) && gens.iter().any(|&g| p.leq(j, g)))
                .collect()
        })
    }

    pub fn principal(presentation: Arc<dyn Presentation>, generator: usize) -> Self {
        LazyIdeal::below(presentation, move |_| vec![generator])
    }

    pub fn presentation(&self) -> &Arc<dyn Presentation> {
        &self.presentation
    }

    pub fn at(&self, fuel: usize) -> BTreeSet<usize> {
        (self.producer)(fuel)
    }

    /// Labels of the indices produced at `fuel`, deduplicated and sorted.
    pub fn labels_at(&self, fuel: usize) -> Vec<String> {
        let set: BTreeSet<String> = self
            .at(fuel)
            .into_iter()
            .map(|i| self.presentation.label(i))
            .collect();
        set.into_iter().collect()
    }
}

impl fmt::Debug for LazyIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LazyIdeal")
            .field("presentation", &self.presentation)
            .finish_non_exhaustive()
    }
}
