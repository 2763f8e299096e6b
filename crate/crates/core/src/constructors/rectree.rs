use std::collections::HashMap;
use std::sync::Arc;

use crate::basis::{split_top_level, Basis, BasisExt, BasisRef, Token};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Shape {
    Delta,
    Atom(Token),
    Node(Token, Token),
}

/// Finite truncations of the trees `T = A + (T×T)`: a fresh bottom `Δ`,
/// atoms `atom(a)` and pairs `node(s,t)`.
///
/// Atoms and nodes are never consistent with each other; atoms compare
/// through `A` and nodes componentwise.
#[derive(Debug)]
pub struct RecTreeBasis {
    atoms: BasisRef,
    name: String,
    shapes: Vec<Shape>,
    index: HashMap<Shape, Token>,
    // Nesting depth of each token.
    depth: Vec<usize>,
}

impl RecTreeBasis {
    /// Tokens of nesting depth at most `depth`: depth 0 holds `Δ` and the
    /// atoms, depth `n+1` adds `node(s,t)` for `s,t` of depth `n`.
    pub fn new(atoms: BasisRef, depth: usize) -> Arc<RecTreeBasis> {
        let name = format!("tree({}, {depth})", atoms.name());
        Arc::new(RecTreeBasis::build(atoms, name, depth, true))
    }

    /// The approximants `T₀ = {Δ}`, `T_{n+1} = {Δ} ∪ A ∪ T_n×T_n` of the
    /// least solution of `T = A + (T×T)`.
    pub fn approximant(atoms: BasisRef, n: usize) -> Arc<RecTreeBasis> {
        let name = format!("approx({}, {n})", atoms.name());
        Arc::new(RecTreeBasis::build(atoms, name, n, false))
    }

    fn build(atoms: BasisRef, name: String, rounds: usize, atoms_first: bool) -> RecTreeBasis {
        let mut b = RecTreeBasis {
            atoms,
            name,
            shapes: Vec::new(),
            index: HashMap::new(),
            depth: Vec::new(),
        };
        b.push(Shape::Delta, 0);
        let atom_tokens: Vec<Token> = b.atoms.tokens().collect();
        let mut prev: Vec<Token> = vec![Token::new(0)];
        if atoms_first {
            for &a in &atom_tokens {
                prev.push(b.push(Shape::Atom(a), 0));
            }
        }
        for _ in 0..rounds {
            let mut next = vec![Token::new(0)];
            for &a in &atom_tokens {
                next.push(b.push(Shape::Atom(a), 0));
            }
            for &s in &prev {
                for &t in &prev {
                    let d = 1 + b.depth[s.index()].max(b.depth[t.index()]);
                    next.push(b.push(Shape::Node(s, t), d));
                }
            }
            prev = next;
        }
        b
    }

    fn push(&mut self, shape: Shape, depth: usize) -> Token {
        if let Some(&t) = self.index.get(&shape) {
            return t;
        }
        let t = Token::new(self.shapes.len());
        self.shapes.push(shape);
        self.depth.push(depth);
        self.index.insert(shape, t);
        t
    }

    pub fn atoms(&self) -> &BasisRef {
        &self.atoms
    }

    pub fn delta(&self) -> Token {
        Token::new(0)
    }

    pub fn atom(&self, a: Token) -> Option<Token> {
        self.index.get(&Shape::Atom(a)).copied()
    }

    pub fn node(&self, s: Token, t: Token) -> Option<Token> {
        self.index.get(&Shape::Node(s, t)).copied()
    }

    /// Nesting depth of a token: 0 for `Δ` and atoms.
    pub fn depth_of(&self, t: Token) -> usize {
        self.depth[t.index()]
    }
}

impl Basis for RecTreeBasis {
    fn name(&self) -> &str {
        &self.name
    }

    fn len(&self) -> usize {
        self.shapes.len()
    }

    fn bottom(&self) -> Token {
        Token::new(0)
    }

    fn leq(&self, a: Token, b: Token) -> bool {
        match (self.shapes[a.index()], self.shapes[b.index()]) {
            (Shape::Delta, _) => true,
            (Shape::Atom(x), Shape::Atom(y)) => self.atoms.leq(x, y),
            (Shape::Node(s, t), Shape::Node(s2, t2)) => self.leq(s, s2) && self.leq(t, t2),
            _ => false,
        }
    }

    fn join(&self, a: Token, b: Token) -> Option<Token> {
        match (self.shapes[a.index()], self.shapes[b.index()]) {
            (Shape::Delta, _) => Some(b),
            (_, Shape::Delta) => Some(a),
            (Shape::Atom(x), Shape::Atom(y)) => self.atom(self.atoms.join(x, y)?),
            (Shape::Node(s, t), Shape::Node(s2, t2)) => {
                self.node(self.join(s, s2)?, self.join(t, t2)?)
            }
            _ => None,
        }
    }

    fn label(&self, t: Token) -> String {
        match self.shapes[t.index()] {
            Shape::Delta => "Δ".to_string(),
            Shape::Atom(a) => format!("atom({})", self.atoms.label(a)),
            Shape::Node(s, t) => format!("node({},{})", self.label(s), self.label(t)),
        }
    }

    fn lookup(&self, label: &str) -> Option<Token> {
        let label = label.trim();
        if label == "Δ" {
            return Some(self.delta());
        }
        if let Some(inner) = label
            .strip_prefix("atom(")
            .and_then(|s| s.strip_suffix(')'))
        {
            return self.atom(self.atoms.lookup(inner)?);
        }
        let inner = label.strip_prefix("node(")?.strip_suffix(')')?;
        let parts = split_top_level(inner);
        if parts.len() != 2 {
            return None;
        }
        self.node(self.lookup(parts[0])?, self.lookup(parts[1])?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::FiniteBasis;
    use crate::fixtures;

    fn two_atoms() -> BasisRef {
        Arc::new(fixtures::flat("A", &["a"]))
    }

    #[test]
    fn depth_zero() {
        let t = RecTreeBasis::new(two_atoms(), 0);
        let mut labels: Vec<String> = t.tokens().map(|x| t.label(x)).collect();
        labels.sort();
        assert_eq!(labels, vec!["atom(a)", "atom(⊥)", "Δ"]);
        let ab = t.lookup("atom(⊥)").unwrap();
        assert!(t.leq(t.delta(), ab) && ab != t.delta());
    }

    #[test]
    fn sizes() {
        let sizes: Vec<usize> = (0..3)
            .map(|d| RecTreeBasis::new(two_atoms(), d).len())
            .collect();
        assert_eq!(sizes, vec![3, 12, 147]);
        let approx: Vec<usize> = (0..4)
            .map(|n| RecTreeBasis::approximant(two_atoms(), n).len())
            .collect();
        assert_eq!(approx, vec![1, 4, 19, 364]);
    }

    #[test]
    fn lub_rules() {
        let t = RecTreeBasis::new(two_atoms(), 2);
        let j = |x: &str, y: &str| {
            t.join(t.lookup(x).unwrap(), t.lookup(y).unwrap())
                .map(|z| t.label(z))
        };
        assert_eq!(
            j("node(atom(⊥),Δ)", "node(Δ,atom(a))").as_deref(),
            Some("node(atom(⊥),atom(a))")
        );
        assert_eq!(
            j("node(atom(⊥),Δ)", "node(atom(a),Δ)").as_deref(),
            Some("node(atom(a),Δ)")
        );
        assert_eq!(j("atom(a)", "node(Δ,Δ)"), None);
        assert_eq!(j("node(Δ,atom(a))", "node(Δ,node(Δ,Δ))"), None);
        assert_eq!(t.depth_of(t.lookup("node(Δ,node(Δ,Δ))").unwrap()), 2);
    }

    #[test]
    fn valid_and_nested() {
        for d in 0..2 {
            let small = RecTreeBasis::new(two_atoms(), d);
            let big = RecTreeBasis::new(two_atoms(), d + 1);
            let labels: Vec<String> = small.tokens().map(|x| small.label(x)).collect();
            FiniteBasis::from_order("t", labels, |i, j| small.leq(Token::new(i), Token::new(j)))
                .unwrap();
            for x in small.tokens() {
                let bx = big.lookup(&small.label(x)).unwrap();
                for y in small.tokens() {
                    let by = big.lookup(&small.label(y)).unwrap();
                    assert_eq!(small.leq(x, y), big.leq(bx, by));
                    assert_eq!(
                        small.join(x, y).map(|z| small.label(z)),
                        big.join(bx, by).map(|z| big.label(z))
                    );
                }
            }
        }
    }
}
