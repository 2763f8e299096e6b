use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use super::UniversalError;

/// A binary tree with `Δ` (bottom) and `⊤` (top) leaves.
///
/// Trees built with [`UTree::node`] are kept reduced: no subtree is
/// `(Δ,Δ)` or `(⊤,⊤)`. [`UTree::raw`] builds unreduced trees.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum UTree {
    Delta,
    Top,
    Node(Box<UTree>, Box<UTree>),
}

/// A step in a tree path.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Dir {
    L,
    R,
}

pub type Path = Vec<Dir>;

/// `l`/`r` letters, `ε` for the empty path.
pub fn path_string(p: &[Dir]) -> String {
    if p.is_empty() {
        return "ε".to_string();
    }
    p.iter().map(|d| if *d == Dir::L { 'l' } else { 'r' }).collect()
}

impl UTree {
    /// The reduced pair of two reduced trees.
    pub fn node(l: UTree, r: UTree) -> UTree {
        match (l, r) {
            (UTree::Delta, UTree::Delta) => UTree::Delta,
            (UTree::Top, UTree::Top) => UTree::Top,
            (l, r) => UTree::Node(Box::new(l), Box::new(r)),
        }
    }

    pub fn raw(l: UTree, r: UTree) -> UTree {
        UTree::Node(Box::new(l), Box::new(r))
    }

    pub fn is_top(&self) -> bool {
        matches!(self, UTree::Top)
    }

    pub fn is_delta(&self) -> bool {
        matches!(self, UTree::Delta)
    }

    /// Leaves have depth 0.
    pub fn depth(&self) -> usize {
        match self {
            UTree::Node(l, r) => 1 + l.depth().max(r.depth()),
            _ => 0,
        }
    }

    pub fn size(&self) -> usize {
        match self {
            UTree::Node(l, r) => 1 + l.size() + r.size(),
            _ => 1,
        }
    }

    pub fn is_reduced(&self) -> bool {
        match self {
            UTree::Node(l, r) => {
                !(l.is_delta() && r.is_delta())
                    && !(l.is_top() && r.is_top())
                    && l.is_reduced()
                    && r.is_reduced()
            }
            _ => true,
        }
    }

    /// The two halves, reading a leaf as a pair of copies of itself.
    pub fn halves(&self) -> (UTree, UTree) {
        match self {
            UTree::Node(l, r) => ((**l).clone(), (**r).clone()),
            leaf => (leaf.clone(), leaf.clone()),
        }
    }

    pub fn subtree(&self, path: &[Dir]) -> Option<&UTree> {
        match (path.split_first(), self) {
            (None, t) => Some(t),
            (Some((Dir::L, rest)), UTree::Node(l, _)) => l.subtree(rest),
            (Some((Dir::R, rest)), UTree::Node(_, r)) => r.subtree(rest),
            _ => None,
        }
    }

    /// Orders trees by depth, then by serialization.
    pub fn canonical_cmp(&self, other: &UTree) -> Ordering {
        self.depth()
            .cmp(&other.depth())
            .then_with(|| self.to_string().cmp(&other.to_string()))
    }
}

/// Normal form under `(Δ,Δ) → Δ` and `(⊤,⊤) → ⊤`.
pub fn reduce(t: &UTree) -> UTree {
    match t {
        UTree::Node(l, r) => UTree::node(reduce(l), reduce(r)),
        leaf => leaf.clone(),
    }
}

/// Positions of every redex in `t`.
pub fn redexes(t: &UTree) -> Vec<Path> {
    fn go(t: &UTree, here: &mut Path, out: &mut Vec<Path>) {
        if let UTree::Node(l, r) = t {
            if (l.is_delta() && r.is_delta()) || (l.is_top() && r.is_top()) {
                out.push(here.clone());
            }
            here.push(Dir::L);
            go(l, here, out);
            here.pop();
            here.push(Dir::R);
            go(r, here, out);
            here.pop();
        }
    }
    let mut out = Vec::new();
    go(t, &mut Vec::new(), &mut out);
    out
}

/// Rewrites the redex at `path`; other positions are left alone.
pub fn rewrite_at(t: &UTree, path: &[Dir]) -> UTree {
    match (path.split_first(), t) {
        (None, UTree::Node(l, r)) if l.is_delta() && r.is_delta() => UTree::Delta,
        (None, UTree::Node(l, r)) if l.is_top() && r.is_top() => UTree::Top,
        (Some((Dir::L, rest)), UTree::Node(l, r)) => UTree::raw(rewrite_at(l, rest), (**r).clone()),
        (Some((Dir::R, rest)), UTree::Node(l, r)) => UTree::raw((**l).clone(), rewrite_at(r, rest)),
        _ => t.clone(),
    }
}

/// The order of `V`, on any trees.
pub fn u_leq(s: &UTree, t: &UTree) -> bool {
    match (s, t) {
        (UTree::Delta, _) | (_, UTree::Top) => true,
        (UTree::Top, UTree::Delta) => false,
        (UTree::Node(a, b), UTree::Node(c, d)) => u_leq(a, c) && u_leq(b, d),
        (UTree::Node(a, b), UTree::Delta) => u_leq(a, t) && u_leq(b, t),
        (UTree::Top, UTree::Node(c, d)) => u_leq(s, c) && u_leq(s, d),
    }
}

/// The lub in `V`, reduced. May be `⊤`.
pub fn v_lub(s: &UTree, t: &UTree) -> UTree {
    match (s, t) {
        (UTree::Top, _) | (_, UTree::Top) => UTree::Top,
        (UTree::Delta, x) | (x, UTree::Delta) => reduce(x),
        (UTree::Node(a, b), UTree::Node(c, d)) => UTree::node(v_lub(a, c), v_lub(b, d)),
    }
}

/// The lub in `U`: `None` exactly when the pair is inconsistent.
pub fn u_lub(s: &UTree, t: &UTree) -> Option<UTree> {
    let j = v_lub(s, t);
    (!j.is_top()).then_some(j)
}

/// The greatest lower bound in `V`, reduced.
pub fn u_glb(s: &UTree, t: &UTree) -> UTree {
    match (s, t) {
        (UTree::Delta, _) | (_, UTree::Delta) => UTree::Delta,
        (UTree::Top, x) | (x, UTree::Top) => reduce(x),
        (UTree::Node(a, b), UTree::Node(c, d)) => UTree::node(u_glb(a, c), u_glb(b, d)),
    }
}

/// Every reduced tree of depth at most `depth` except `⊤`, sorted
/// canonically.
pub fn trees_up_to(depth: usize) -> Vec<UTree> {
    let mut level = vec![UTree::Delta, UTree::Top];
    for _ in 0..depth {
        let mut next = vec![UTree::Delta, UTree::Top];
        for l in &level {
            for r in &level {
                if !(l.is_delta() && r.is_delta()) && !(l.is_top() && r.is_top()) {
                    next.push(UTree::raw(l.clone(), r.clone()));
                }
            }
        }
        level = next;
    }
    let mut out: Vec<UTree> = level.into_iter().filter(|t| !t.is_top()).collect();
    out.sort_by(|a, b| a.canonical_cmp(b));
    out
}

impl fmt::Display for UTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UTree::Delta => write!(f, "D"),
            UTree::Top => write!(f, "T"),
            UTree::Node(l, r) => write!(f, "({l},{r})"),
        }
    }
}

impl FromStr for UTree {
    type Err = UniversalError;

    /// Parses `D`, `T` and `(L,R)`; `Δ` and `⊤` are accepted too. The
    /// result is not reduced.
    fn from_str(s: &str) -> Result<UTree, UniversalError> {
        let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut pos = 0;
        let t = parse(&chars, &mut pos)?;
        if pos != chars.len() {
            return Err(UniversalError::BadTree { text: s.to_string(), pos });
        }
        Ok(t)
    }
}

fn parse(chars: &[char], pos: &mut usize) -> Result<UTree, UniversalError> {
    let bad = |pos: usize| UniversalError::BadTree { text: chars.iter().collect(), pos };
    let c = *chars.get(*pos).ok_or_else(|| bad(*pos))?;
    *pos += 1;
    match c {
        'D' | 'Δ' => Ok(UTree::Delta),
        'T' | '⊤' => Ok(UTree::Top),
        '(' | '⟨' => {
            let l = parse(chars, pos)?;
            if chars.get(*pos) != Some(&',') {
                return Err(bad(*pos));
            }
            *pos += 1;
            let r = parse(chars, pos)?;
            if !matches!(chars.get(*pos), Some(')') | Some('⟩')) {
                return Err(bad(*pos));
            }
            *pos += 1;
            Ok(UTree::raw(l, r))
        }
        _ => Err(bad(*pos - 1)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> UTree {
        s.parse().unwrap()
    }

    #[test]
    fn worked_reduction() {
        let input = t("(((T,(T,T)),(T,D)),((D,D),(T,T)))");
        assert_eq!(reduce(&input).to_string(), "((T,(T,D)),(D,T))");
        assert_eq!(reduce(&t("D")), UTree::Delta);
        assert_eq!(reduce(&t("(D,(D,D))")), UTree::Delta);
    }

    #[test]
    fn redexes_rewrite_to_the_normal_form() {
        let mut x = t("(((T,(T,T)),(T,D)),((D,D),(T,T)))");
        while let Some(p) = redexes(&x).pop() {
            x = rewrite_at(&x, &p);
        }
        assert_eq!(x, reduce(&x));
        assert_eq!(x.to_string(), "((T,(T,D)),(D,T))");
    }

    #[test]
    fn lubs() {
        assert_eq!(u_lub(&UTree::Delta, &t("(D,T)")), Some(t("(D,T)")));
        assert_eq!(u_lub(&t("(D,T)"), &t("(T,D)")), None);
        assert_eq!(u_lub(&t("(D,(D,T))"), &t("(D,(T,D))")), Some(t("(D,T)")));
        assert_eq!(u_lub(&t("((D,T),(D,T))"), &t("((T,D),(T,D))")), None);
        assert_eq!(u_lub(&t("((D,T),D)"), &t("(D,(D,T))")), Some(t("((D,T),(D,T))")));
        assert_eq!(u_glb(&t("(D,T)"), &t("(T,D)")), UTree::Delta);
    }

    #[test]
    fn order() {
        let all = trees_up_to(2);
        for x in &all {
            assert!(u_leq(&UTree::Delta, x));
            assert!(u_leq(x, &UTree::Top));
            assert!(!u_leq(x, &UTree::Delta) || x.is_delta());
        }
        // An unreduced tree compares like its normal form.
        assert!(u_leq(&t("(D,D)"), &UTree::Delta));
        assert!(u_leq(&UTree::Top, &t("(T,T)")));
        assert!(!u_leq(&t("(D,T)"), &t("(T,D)")));
    }

    #[test]
    fn truncation_sizes() {
        assert_eq!(trees_up_to(0).len(), 1);
        assert_eq!(trees_up_to(1).len(), 3);
        assert_eq!(trees_up_to(2).len(), 15);
        assert_eq!(trees_up_to(3).len(), 255);
        assert!(trees_up_to(3).iter().all(UTree::is_reduced));
    }

    #[test]
    fn serialization_round_trips() {
        for x in trees_up_to(2) {
            assert_eq!(t(&x.to_string()), x);
        }
        assert_eq!(t("⟨⟨Δ,⊤⟩,⊤⟩").to_string(), "((D,T),T)");
        assert!("(D,T".parse::<UTree>().is_err());
        assert!("(D,T))".parse::<UTree>().is_err());
        assert_eq!(path_string(&[]), "ε");
        assert_eq!(path_string(&[Dir::R, Dir::L]), "rl");
    }
}
