//! Approximable mappings between finite bases, stored as relations.
//!
//! Row `a` of a map holds every `b` with `a F b`. Since finite ideals are
//! principal, each row of a valid map is the down-set of one target token;
//! that token is cached as the row's generator and gives the extensional
//! function view.

mod computable;
mod curry;
mod product;

use std::fmt;

use fixedbitset::FixedBitSet;

use crate::basis::{Basis, BasisExt, BasisRef, Token};
use crate::ideal::Ideal;

pub use computable::{
    apply_lazy, enumerate_graph, graph_levels, ComputableMap, FnMap, PresentedMap,
};
pub use curry::{apply_combinator, curry_map};
pub use product::{pair_map, proj0, proj1, section_map, Side};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// Condition 1: bottom is not related to bottom.
    MissingBottom,
    /// Condition 2: both outputs are present but their lub is missing.
    NotJoinClosed { a: String, b: String, b2: String },
    /// Condition 2 with inconsistent outputs: no lub exists at all.
    InconsistentOutputs { a: String, b: String, b2: String },
    /// Condition 3: an output is present but something below it is not.
    NotDownClosed { a: String, b: String, below: String },
    /// Condition 4: an input relates to `b` but a larger input does not.
    NotMonotone { a: String, above: String, b: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::MissingBottom => write!(f, "bottom is not related to bottom"),
            Violation::NotJoinClosed { a, b, b2 } => {
                write!(f, "{a} relates to {b} and {b2} but not to their lub")
            }
            Violation::InconsistentOutputs { a, b, b2 } => {
                write!(f, "{a} relates to inconsistent outputs {b} and {b2}")
            }
            Violation::NotDownClosed { a, b, below } => {
                write!(f, "{a} relates to {b} but not to {below} below it")
            }
            Violation::NotMonotone { a, above, b } => {
                write!(f, "{a} relates to {b} but {above} above it does not")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MapError {
    #[error("not an approximable mapping: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    NotApproximable(Vec<Violation>),
    #[error("basis mismatch: expected `{expected}`, found `{found}`")]
    BasisMismatch { expected: String, found: String },
    #[error("step closure needs a lub of inconsistent outputs {b} and {b2} at {a}")]
    NoLub { a: String, b: String, b2: String },
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("{0}")]
    Other(String),
}

/// An approximable mapping between two finite bases.
#[derive(Clone)]
pub struct ApproxMap {
    source: BasisRef,
    target: BasisRef,
    rows: Vec<FixedBitSet>,
    gens: Vec<Token>,
}

impl ApproxMap {
    /// Checks the four closure conditions on an explicit pair set.
    pub fn validate(
        source: &BasisRef,
        target: &BasisRef,
        pairs: &[(Token, Token)],
    ) -> Result<ApproxMap, MapError> {
        let mut rows = vec![FixedBitSet::with_capacity(target.len()); source.len()];
        for &(a, b) in pairs {
            rows[a.index()].insert(b.index());
        }
        let violations = violations(source.as_ref(), target.as_ref(), &rows);
        if !violations.is_empty() {
            return Err(MapError::NotApproximable(violations));
        }
        Ok(ApproxMap::from_rows(source, target, rows))
    }

    pub fn validate_labels<S: AsRef<str>>(
        source: &BasisRef,
        target: &BasisRef,
        pairs: &[(S, S)],
    ) -> Result<ApproxMap, MapError> {
        let pairs = resolve_pairs(source, target, pairs)?;
        ApproxMap::validate(source, target, &pairs)
    }

    /// The least approximable mapping containing `seed`.
    ///
    /// Each input is sent to the lub of every seed output whose input lies
    /// below it; rows are the down-sets of those lubs.
    pub fn finite_step_closure(
        source: &BasisRef,
        target: &BasisRef,
        seed: &[(Token, Token)],
    ) -> Result<ApproxMap, MapError> {
        let mut gens = Vec::with_capacity(source.len());
        for a in source.tokens() {
            let mut acc = target.bottom();
            for &(a0, b0) in seed {
                if source.leq(a0, a) {
                    acc = target.join(acc, b0).ok_or_else(|| MapError::NoLub {
                        a: source.label(a),
                        b: target.label(acc),
                        b2: target.label(b0),
                    })?;
                }
            }
            gens.push(acc);
        }
        Ok(ApproxMap::from_generators(source, target, gens))
    }

    pub fn finite_step_closure_labels<S: AsRef<str>>(
        source: &BasisRef,
        target: &BasisRef,
        seed: &[(S, S)],
    ) -> Result<ApproxMap, MapError> {
        let seed = resolve_pairs(source, target, seed)?;
        ApproxMap::finite_step_closure(source, target, &seed)
    }

    /// The map sending each token to the down-set of `f(token)`. The caller
    /// guarantees `f` is monotone.
    pub(crate) fn from_generators(
        source: &BasisRef,
        target: &BasisRef,
        gens: Vec<Token>,
    ) -> ApproxMap {
        let rows = gens.iter().map(|&g| target.down_set(g)).collect();
        ApproxMap {
            source: source.clone(),
            target: target.clone(),
            rows,
            gens,
        }
    }

    fn from_rows(source: &BasisRef, target: &BasisRef, rows: Vec<FixedBitSet>) -> ApproxMap {
        let gens = rows
            .iter()
            .map(|row| {
                let members: Vec<Token> = row.ones().map(Token::new).collect();
                target.lub(&members).expect("valid rows are consistent")
            })
            .collect();
        ApproxMap {
            source: source.clone(),
            target: target.clone(),
            rows,
            gens,
        }
    }

    /// Builds a map from a token function, checking monotonicity.
    pub fn from_fn<F>(source: &BasisRef, target: &BasisRef, f: F) -> Result<ApproxMap, MapError>
    where
        F: Fn(Token) -> Token,
    {
        let gens: Vec<Token> = source.tokens().map(&f).collect();
        for a in source.tokens() {
            for a2 in source.tokens() {
                if source.leq(a, a2) && !target.leq(gens[a.index()], gens[a2.index()]) {
                    return Err(MapError::NotApproximable(vec![Violation::NotMonotone {
                        a: source.label(a),
                        above: source.label(a2),
                        b: target.label(gens[a.index()]),
                    }]));
                }
            }
        }
        Ok(ApproxMap::from_generators(source, target, gens))
    }

    /// Builds a map from a token function known to be monotone.
    pub(crate) fn from_monotone_fn<F>(source: &BasisRef, target: &BasisRef, f: F) -> ApproxMap
    where
        F: Fn(Token) -> Token,
    {
        let gens = source.tokens().map(f).collect();
        ApproxMap::from_generators(source, target, gens)
    }

    /// The relation `a F b ⟺ b ∈ f(I_a)` of an ideal function.
    pub fn from_ideal_fn<F>(
        source: &BasisRef,
        target: &BasisRef,
        f: F,
    ) -> Result<ApproxMap, MapError>
    where
        F: Fn(&Ideal) -> Ideal,
    {
        let pairs: Vec<(Token, Token)> = source
            .tokens()
            .flat_map(|a| {
                f(&Ideal::principal(source, a))
                    .tokens()
                    .into_iter()
                    .map(move |b| (a, b))
            })
            .collect();
        ApproxMap::validate(source, target, &pairs)
    }

    pub fn identity(basis: &BasisRef) -> ApproxMap {
        ApproxMap::from_generators(basis, basis, basis.tokens().collect())
    }

    /// `d K_e e' ⟺ e' ⊑ e`.
    pub fn constant(source: &BasisRef, target: &BasisRef, e: Token) -> ApproxMap {
        ApproxMap::from_generators(source, target, vec![e; source.len()])
    }

    pub fn source(&self) -> &BasisRef {
        &self.source
    }

    pub fn target(&self) -> &BasisRef {
        &self.target
    }

    pub fn relates(&self, a: Token, b: Token) -> bool {
        self.rows[a.index()].contains(b.index())
    }

    pub fn row(&self, a: Token) -> &FixedBitSet {
        &self.rows[a.index()]
    }

    /// The greatest token related to `a`.
    pub fn image_token(&self, a: Token) -> Token {
        self.gens[a.index()]
    }

    pub fn generators(&self) -> &[Token] {
        &self.gens
    }

    pub fn pairs(&self) -> Vec<(Token, Token)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(a, row)| row.ones().map(move |b| (Token::new(a), Token::new(b))))
            .collect()
    }

    /// The fewest pairs whose step closure is this map: each input whose
    /// image is not already the lub of the images strictly below it.
    pub fn steps(&self) -> Vec<(Token, Token)> {
        self.source
            .tokens()
            .filter(|&a| {
                let below: Vec<Token> = self
                    .source
                    .tokens()
                    .filter(|&a0| a0 != a && self.source.leq(a0, a))
                    .map(|a0| self.gens[a0.index()])
                    .collect();
                let inherited = self.target.lub(&below).expect("images below are bounded");
                inherited != self.gens[a.index()]
            })
            .map(|a| (a, self.gens[a.index()]))
            .collect()
    }

    pub fn apply(&self, x: &Ideal) -> Result<Ideal, MapError> {
        expect_basis(self.source.as_ref(), x.basis().as_ref())?;
        Ok(Ideal::principal(
            &self.target,
            self.gens[x.generator().index()],
        ))
    }

    /// The relational image `{b | ∃a∈x. a F b}` computed row by row.
    pub fn apply_relational(&self, x: &Ideal) -> Result<Ideal, MapError> {
        expect_basis(self.source.as_ref(), x.basis().as_ref())?;
        let mut out = FixedBitSet::with_capacity(self.target.len());
        for a in x.tokens() {
            out.union_with(&self.rows[a.index()]);
        }
        Ok(Ideal::from_members(&self.target, out))
    }

    pub fn is_subset(&self, other: &ApproxMap) -> bool {
        self.rows
            .iter()
            .zip(&other.rows)
            .all(|(r, s)| r.is_subset(s))
    }

    pub fn is_identity_below(&self) -> bool {
        self.source
            .tokens()
            .all(|a| self.source.leq(self.gens[a.index()], a))
    }

    pub fn len(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones(..)).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Rechecks the four closure conditions.
    pub fn check(&self) -> Vec<Violation> {
        violations(self.source.as_ref(), self.target.as_ref(), &self.rows)
    }
}

/// `a (G∘F) c ⟺ ∃b. a F b ∧ b G c`.
pub fn compose(g: &ApproxMap, f: &ApproxMap) -> Result<ApproxMap, MapError> {
    expect_basis(g.source.as_ref(), f.target.as_ref())?;
    let gens = f.gens.iter().map(|&b| g.gens[b.index()]).collect();
    Ok(ApproxMap::from_generators(&f.source, &g.target, gens))
}

/// Relational composition by brute force over all intermediate tokens.
pub fn compose_relational(g: &ApproxMap, f: &ApproxMap) -> Result<ApproxMap, MapError> {
    expect_basis(g.source.as_ref(), f.target.as_ref())?;
    let mut pairs = Vec::new();
    for a in f.source.tokens() {
        for c in g.target.tokens() {
            if f.rows[a.index()]
                .ones()
                .any(|b| g.rows[b].contains(c.index()))
            {
                pairs.push((a, c));
            }
        }
    }
    let mut rows = vec![FixedBitSet::with_capacity(g.target.len()); f.source.len()];
    for (a, c) in pairs {
        rows[a.index()].insert(c.index());
    }
    let v = violations(f.source.as_ref(), g.target.as_ref(), &rows);
    if !v.is_empty() {
        return Err(MapError::NotApproximable(v));
    }
    Ok(ApproxMap::from_rows(&f.source, &g.target, rows))
}

pub(crate) fn expect_basis(expected: &dyn Basis, found: &dyn Basis) -> Result<(), MapError> {
    if expected.same_basis(found) {
        Ok(())
    } else {
        Err(MapError::BasisMismatch {
            expected: expected.name().to_string(),
            found: found.name().to_string(),
        })
    }
}

fn resolve_pairs<S: AsRef<str>>(
    source: &BasisRef,
    target: &BasisRef,
    pairs: &[(S, S)],
) -> Result<Vec<(Token, Token)>, MapError> {
    pairs
        .iter()
        .map(|(a, b)| {
            let ta = source
                .lookup(a.as_ref())
                .ok_or_else(|| MapError::UnknownElement(a.as_ref().into()))?;
            let tb = target
                .lookup(b.as_ref())
                .ok_or_else(|| MapError::UnknownElement(b.as_ref().into()))?;
            Ok((ta, tb))
        })
        .collect()
}

fn violations(source: &dyn Basis, target: &dyn Basis, rows: &[FixedBitSet]) -> Vec<Violation> {
    let mut out = Vec::new();
    if !rows[source.bottom().index()].contains(target.bottom().index()) {
        out.push(Violation::MissingBottom);
    }
    let l = |t: usize| source.label(Token::new(t));
    let m = |t: usize| target.label(Token::new(t));
    'join: for (a, row) in rows.iter().enumerate() {
        for b in row.ones() {
            for b2 in row.ones() {
                match target.join(Token::new(b), Token::new(b2)) {
                    None => {
                        out.push(Violation::InconsistentOutputs {
                            a: l(a),
                            b: m(b),
                            b2: m(b2),
                        });
                        break 'join;
                    }
                    Some(j) if !row.contains(j.index()) => {
                        out.push(Violation::NotJoinClosed {
                            a: l(a),
                            b: m(b),
                            b2: m(b2),
                        });
                        break 'join;
                    }
                    Some(_) => {}
                }
            }
        }
    }
    'down: for (a, row) in rows.iter().enumerate() {
        for b in row.ones() {
            for below in target.tokens() {
                if target.leq(below, Token::new(b)) && !row.contains(below.index()) {
                    out.push(Violation::NotDownClosed {
                        a: l(a),
                        b: m(b),
                        below: target.label(below),
                    });
                    break 'down;
                }
            }
        }
    }
    'mono: for a in source.tokens() {
        for above in source.tokens() {
            if source.leq(a, above) && !rows[a.index()].is_subset(&rows[above.index()]) {
                let b = rows[a.index()]
                    .difference(&rows[above.index()])
                    .next()
                    .unwrap();
                out.push(Violation::NotMonotone {
                    a: source.label(a),
                    above: source.label(above),
                    b: m(b),
                });
                break 'mono;
            }
        }
    }
    out
}

impl PartialEq for ApproxMap {
    fn eq(&self, other: &Self) -> bool {
        self.source.same_basis(other.source.as_ref())
            && self.target.same_basis(other.target.as_ref())
            && self.rows == other.rows
    }
}

impl Eq for ApproxMap {}

impl fmt::Debug for ApproxMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "ApproxMap({} -> {}; ",
            self.source.name(),
            self.target.name()
        )?;
        let steps: Vec<String> = self
            .steps()
            .into_iter()
            .map(|(a, b)| format!("{}>{}", self.source.label(a), self.target.label(b)))
            .collect();
        write!(f, "{{{}}})", steps.join(", "))
    }
}
