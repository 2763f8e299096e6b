use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use super::{Basis, BasisError, Token};

/// Above this size lub validation switches from all subsets to all pairs.
const EXHAUSTIVE_LIMIT: usize = 16;

/// An explicit finite partial order with its reflexive-transitive closure
/// stored as up-sets.
#[derive(Clone, Debug)]
pub struct FiniteBasis {
    name: String,
    labels: Vec<String>,
    index: HashMap<String, Token>,
    up: Vec<FixedBitSet>,
    bottom: Token,
}

impl FiniteBasis {
    /// Validates a basis given as elements and generating order pairs.
    /// The bottom is discovered.
    pub fn validate<S: AsRef<str>>(
        name: &str,
        elements: &[S],
        order_pairs: &[(S, S)],
    ) -> Result<Self, BasisError> {
        let (labels, index) = intern(elements)?;
        let n = labels.len();
        let mut up: Vec<FixedBitSet> = (0..n)
            .map(|i| {
                let mut s = FixedBitSet::with_capacity(n);
                s.insert(i);
                s
            })
            .collect();
        for (a, b) in order_pairs {
            let ia = lookup(&index, a.as_ref())?;
            let ib = lookup(&index, b.as_ref())?;
            up[ia.index()].insert(ib.index());
        }
        // Warshall on up-sets.
        for k in 0..n {
            let row_k = up[k].clone();
            for row in up.iter_mut() {
                if row.contains(k) {
                    row.union_with(&row_k);
                }
            }
        }
        Self::finish(name, labels, index, up)
    }

    /// Like [`FiniteBasis::validate`] but the first element must be the bottom.
    pub fn validate_with_bottom_first<S: AsRef<str>>(
        name: &str,
        elements: &[S],
        order_pairs: &[(S, S)],
    ) -> Result<Self, BasisError> {
        let b = Self::validate(name, elements, order_pairs)?;
        if b.bottom != Token::new(0) {
            let found = (0..b.len())
                .find(|&i| !b.up[0].contains(i))
                .map(|i| b.labels[i].clone())
                .unwrap_or_default();
            return Err(BasisError::FirstNotBottom {
                first: b.labels[0].clone(),
                found,
            });
        }
        Ok(b)
    }

    /// Builds a basis from labels and an order predicate that is already a
    /// partial order; antisymmetry, bottom and lubs are still checked.
    pub fn from_order<F>(name: &str, labels: Vec<String>, leq: F) -> Result<Self, BasisError>
    where
        F: Fn(usize, usize) -> bool,
    {
        let (labels, index) = intern(&labels)?;
        let n = labels.len();
        let up = (0..n)
            .map(|i| {
                let mut s = FixedBitSet::with_capacity(n);
                for j in 0..n {
                    if i == j || leq(i, j) {
                        s.insert(j);
                    }
                }
                s
            })
            .collect();
        Self::finish(name, labels, index, up)
    }

    fn finish(
        name: &str,
        labels: Vec<String>,
        index: HashMap<String, Token>,
        up: Vec<FixedBitSet>,
    ) -> Result<Self, BasisError> {
        let n = labels.len();
        for i in 0..n {
            for j in up[i].ones() {
                if j != i && up[j].contains(i) {
                    return Err(BasisError::Cycle(labels[i].clone(), labels[j].clone()));
                }
            }
        }
        let bottom = (0..n)
            .find(|&i| up[i].count_ones(..) == n)
            .ok_or(BasisError::NoBottom)?;
        let basis = FiniteBasis {
            name: name.to_string(),
            labels,
            index,
            up,
            bottom: Token::new(bottom),
        };
        basis.check_lubs()?;
        Ok(basis)
    }

    /// Checks that every consistent subset has a least upper bound:
    /// exhaustively over subsets for small bases, pairwise above that.
    fn check_lubs(&self) -> Result<(), BasisError> {
        let n = self.len();
        if n <= EXHAUSTIVE_LIMIT {
            for mask in 1u32..(1u32 << n) {
                let members: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
                let mut ub = FixedBitSet::with_capacity(n);
                ub.insert_range(..);
                for &m in &members {
                    ub.intersect_with(&self.up[m]);
                }
                self.require_least(&members, &ub)?;
            }
        } else {
            for a in 0..n {
                for b in a + 1..n {
                    let mut ub = self.up[a].clone();
                    ub.intersect_with(&self.up[b]);
                    self.require_least(&[a, b], &ub)?;
                }
            }
        }
        Ok(())
    }

    fn require_least(&self, members: &[usize], ub: &FixedBitSet) -> Result<(), BasisError> {
        if ub.count_ones(..) == 0 || least_of(&self.up, ub).is_some() {
            return Ok(());
        }
        let minimal: Vec<String> = ub
            .ones()
            .filter(|&u| ub.ones().all(|v| v == u || !self.up[v].contains(u)))
            .map(|u| self.labels[u].clone())
            .collect();
        Err(BasisError::MissingLub {
            subset: members.iter().map(|&m| self.labels[m].clone()).collect(),
            minimal,
        })
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// All elements above `t`.
    pub fn up_set(&self, t: Token) -> &FixedBitSet {
        &self.up[t.index()]
    }

    /// Generating pairs of the order: the covering relation.
    pub fn covers(&self) -> Vec<(Token, Token)> {
        let n = self.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in self.up[a].ones() {
                if b == a {
                    continue;
                }
                let between = self.up[a]
                    .ones()
                    .any(|c| c != a && c != b && self.up[c].contains(b));
                if !between {
                    out.push((Token::new(a), Token::new(b)));
                }
            }
        }
        out
    }

    /// The same order with different labels.
    pub fn relabeled<F: Fn(&str) -> String>(&self, name: &str, f: F) -> Result<Self, BasisError> {
        let labels: Vec<String> = self.labels.iter().map(|l| f(l)).collect();
        let (labels, index) = intern(&labels)?;
        Ok(FiniteBasis {
            name: name.to_string(),
            labels,
            index,
            up: self.up.clone(),
            bottom: self.bottom,
        })
    }
}

fn least_of(up: &[FixedBitSet], ub: &FixedBitSet) -> Option<usize> {
    ub.ones().find(|&u| ub.is_subset(&up[u]))
}

fn intern<S: AsRef<str>>(
    elements: &[S],
) -> Result<(Vec<String>, HashMap<String, Token>), BasisError> {
    if elements.is_empty() {
        return Err(BasisError::Empty);
    }
    let mut labels = Vec::with_capacity(elements.len());
    let mut index = HashMap::with_capacity(elements.len());
    for (i, e) in elements.iter().enumerate() {
        let l = e.as_ref().to_string();
        if index.insert(l.clone(), Token::new(i)).is_some() {
            return Err(BasisError::DuplicateElement(l));
        }
        labels.push(l);
    }
    Ok((labels, index))
}

fn lookup(index: &HashMap<String, Token>, l: &str) -> Result<Token, BasisError> {
    index
        .get(l)
        .copied()
        .ok_or_else(|| BasisError::UnknownElement(l.to_string()))
}

impl Basis for FiniteBasis {
    fn name(&self) -> &str {
        &self.name
    }

    fn len(&self) -> usize {
        self.labels.len()
    }

    fn bottom(&self) -> Token {
        self.bottom
    }

    fn leq(&self, a: Token, b: Token) -> bool {
        self.up[a.index()].contains(b.index())
    }

    fn join(&self, a: Token, b: Token) -> Option<Token> {
        if self.leq(a, b) {
            return Some(b);
        }
        if self.leq(b, a) {
            return Some(a);
        }
        let mut ub = self.up[a.index()].clone();
        ub.intersect_with(&self.up[b.index()]);
        least_of(&self.up, &ub).map(Token::new)
    }

    fn label(&self, t: Token) -> String {
        self.labels[t.index()].clone()
    }

    fn lookup(&self, label: &str) -> Option<Token> {
        self.index.get(label).copied()
    }
}
