//! Embedding a finite basis into `U` through sign-string regions.
//!
//! For an enumeration `d₀ = ⊥, d₁, …` the string `R ∈ {+,-}^k` names the
//! region of elements `d` with `dᵢ ⊑ d` exactly where `Rᵢ = +`. Regions
//! place leaves in a tree; `d_k` gets `⊤` where a region says "not above
//! `d_k`" and `Δ` where it says "above".

use super::{path_string, reduce, u_leq, u_lub, Dir, Path, TreeBasis, UTree, UniversalError};
use crate::basis::{BasisExt, BasisRef, FinitePresentation, Token};

/// Longest sign string whose full region table (empty regions included)
/// is produced.
pub const REGION_TABLE_LIMIT: usize = 12;

/// `+`/`-` characters for a sign vector (`true` is `+`).
pub fn sign_string(r: &[bool]) -> String {
    r.iter().map(|&b| if b { '+' } else { '-' }).collect()
}

fn parse_signs(r: &str) -> Vec<bool> {
    r.chars().map(|c| c == '+').collect()
}

/// Signs of every element against `d₁ … d_{n-1}`.
struct Signs {
    rows: Vec<Vec<bool>>,
}

impl Signs {
    fn new(p: &FinitePresentation) -> Signs {
        let b = p.basis();
        let n = p.order().len();
        let rows = (0..n)
            .map(|pos| (1..n).map(|i| b.leq(p.token(i), p.token(pos))).collect())
            .collect();
        Signs { rows }
    }

    fn members(&self, r: &[bool]) -> impl Iterator<Item = usize> + '_ {
        let r = r.to_vec();
        (0..self.rows.len()).filter(move |&pos| self.rows[pos].starts_with(&r))
    }

    fn nonempty(&self, r: &[bool]) -> bool {
        self.rows.iter().any(|row| row.starts_with(r))
    }

    fn loc(&self, r: &[bool]) -> Path {
        let mut path = Vec::new();
        let mut prefix = Vec::with_capacity(r.len());
        for &s in r {
            let split = self.nonempty(&[prefix.as_slice(), &[true]].concat())
                && self.nonempty(&[prefix.as_slice(), &[false]].concat());
            if split {
                path.push(if s { Dir::L } else { Dir::R });
            }
            prefix.push(s);
        }
        path
    }

    /// Nonempty regions of length `k`, in sign order.
    fn nonempty_regions(&self, k: usize) -> Vec<Vec<bool>> {
        let mut out: Vec<Vec<bool>> = self.rows.iter().map(|row| row[..k].to_vec()).collect();
        out.sort_by_key(|r| sign_string(r));
        out.dedup();
        out
    }
}

fn check_length(p: &FinitePresentation, k: usize) -> Result<(), UniversalError> {
    let len = p.order().len();
    if k + 1 > len {
        return Err(UniversalError::RegionLength { k, len });
    }
    Ok(())
}

/// Every region of length `k`, empty ones included, in sign order (`+`
/// before `-`). Members are listed in enumeration order.
pub fn regions(p: &FinitePresentation, k: usize) -> Result<Vec<(String, Vec<Token>)>, UniversalError> {
    check_length(p, k)?;
    if k > REGION_TABLE_LIMIT {
        return Err(UniversalError::RegionTable { k, limit: 1 << REGION_TABLE_LIMIT });
    }
    let signs = Signs::new(p);
    Ok((0..1usize << k)
        .map(|code| {
            let r: Vec<bool> = (0..k).map(|i| code >> (k - 1 - i) & 1 == 0).collect();
            let members = signs.members(&r).map(|pos| p.token(pos)).collect();
            (sign_string(&r), members)
        })
        .collect())
}

/// The tree position of region `r`: one step per sign whose region splits
/// into two nonempty halves.
pub fn loc(p: &FinitePresentation, r: &str) -> Result<Path, UniversalError> {
    check_length(p, r.chars().count())?;
    Ok(Signs::new(p).loc(&parse_signs(r)))
}

/// The embedding of one enumerated basis, with the data that produced it.
#[derive(Debug, Clone)]
pub struct EmbeddingCertificate {
    presentation: FinitePresentation,
    trees: Vec<UTree>,
    unreduced: Vec<UTree>,
    locs: Vec<(String, Path)>,
    nonempty: Vec<Vec<(String, Vec<Token>)>>,
}

/// Embeds a finite basis into `U` and checks the result.
pub fn embed(p: &FinitePresentation) -> Result<EmbeddingCertificate, UniversalError> {
    let b = p.basis();
    let n = p.order().len();
    let signs = Signs::new(p);
    let mut locs = Vec::new();
    let mut nonempty = Vec::new();
    for k in 1..n {
        let level = signs.nonempty_regions(k);
        nonempty.push(
            level.iter().map(|r| (sign_string(r), signs.members(r).map(|pos| p.token(pos)).collect())).collect(),
        );
        locs.extend(level.iter().map(|r| (sign_string(r), signs.loc(r))));
    }
    let mut trees = vec![UTree::Delta; b.len()];
    let mut unreduced = vec![UTree::Delta; b.len()];
    for k in 1..n {
        let mut leaves: Vec<(Path, UTree)> = Vec::new();
        let shorter = if k == 1 { vec![Vec::new()] } else { signs.nonempty_regions(k - 1) };
        for r in shorter {
            let minus = [r.as_slice(), &[false]].concat();
            let plus = [r.as_slice(), &[true]].concat();
            if signs.nonempty(&minus) {
                leaves.push((signs.loc(&minus), UTree::Top));
            }
            if signs.nonempty(&plus) {
                leaves.push((signs.loc(&plus), UTree::Delta));
            }
        }
        let raw = build(&leaves, 0).map_err(|e| {
            UniversalError::Certificate(format!("element `{}`: {e}", b.label(p.token(k))))
        })?;
        let t = p.token(k).index();
        trees[t] = reduce(&raw);
        unreduced[t] = raw;
    }
    let cert = EmbeddingCertificate { presentation: p.clone(), trees, unreduced, locs, nonempty };
    cert.verify()?;
    Ok(cert)
}

/// Builds the tree whose leaves sit at the given paths.
fn build(leaves: &[(Path, UTree)], depth: usize) -> Result<UTree, String> {
    match leaves {
        [] => Err(format!("no leaf at depth {depth}")),
        [(p, leaf)] if p.len() == depth => Ok(leaf.clone()),
        _ => {
            if let Some((p, _)) = leaves.iter().find(|(p, _)| p.len() == depth) {
                return Err(format!("leaf {} also has leaves below it", path_string(p)));
            }
            let (l, r): (Vec<_>, Vec<_>) = leaves.iter().cloned().partition(|(p, _)| p[depth] == Dir::L);
            Ok(UTree::raw(build(&l, depth + 1)?, build(&r, depth + 1)?))
        }
    }
}

impl EmbeddingCertificate {
    pub fn basis(&self) -> &BasisRef {
        self.presentation.basis()
    }

    pub fn presentation(&self) -> &FinitePresentation {
        &self.presentation
    }

    pub fn order(&self) -> &[Token] {
        self.presentation.order()
    }

    /// The reduced tree of a token.
    pub fn tree(&self, t: Token) -> &UTree {
        &self.trees[t.index()]
    }

    /// The tree before reduction.
    pub fn unreduced(&self, t: Token) -> &UTree {
        &self.unreduced[t.index()]
    }

    /// Trees in enumeration order.
    pub fn trees(&self) -> Vec<(Token, &UTree)> {
        self.order().iter().map(|&t| (t, self.tree(t))).collect()
    }

    /// `Loc` of every nonempty region, shortest strings first.
    pub fn locs(&self) -> &[(String, Path)] {
        &self.locs
    }

    /// Nonempty regions of length `k ≥ 1`.
    pub fn nonempty_regions(&self, k: usize) -> &[(String, Vec<Token>)] {
        &self.nonempty[k - 1]
    }

    /// Every region of every length `1 … n-1`, empty ones included.
    pub fn region_table(&self) -> Result<Vec<(String, Vec<Token>)>, UniversalError> {
        let mut out = Vec::new();
        for k in 1..self.order().len() {
            out.extend(regions(&self.presentation, k)?);
        }
        Ok(out)
    }

    /// The image of the embedding as a basis of trees.
    pub fn image(&self) -> Result<TreeBasis, UniversalError> {
        TreeBasis::from_trees(&format!("U({})", self.basis().name()), self.trees.iter().cloned())
    }

    /// Bottom goes to `Δ`, trees are distinct, the order is reflected and
    /// preserved, and lubs and inconsistency carry over.
    pub fn verify(&self) -> Result<(), UniversalError> {
        let b = self.basis();
        let fail = |m: String| Err(UniversalError::Certificate(m));
        if !self.tree(b.bottom()).is_delta() {
            return fail(format!("bottom maps to {}", self.tree(b.bottom())));
        }
        for x in b.tokens() {
            let tx = self.tree(x);
            if tx.is_top() || !tx.is_reduced() {
                return fail(format!("`{}` maps to {tx}", b.label(x)));
            }
            for y in b.tokens() {
                let ty = self.tree(y);
                if x != y && tx == ty {
                    return fail(format!("`{}` and `{}` share the tree {tx}", b.label(x), b.label(y)));
                }
                if b.leq(x, y) != u_leq(tx, ty) {
                    return fail(format!("order of `{}` and `{}` is not kept", b.label(x), b.label(y)));
                }
                match (b.join(x, y), u_lub(tx, ty)) {
                    (None, None) => {}
                    (Some(z), Some(tz)) if &tz == self.tree(z) => {}
                    _ => return fail(format!("lub of `{}` and `{}` is not kept", b.label(x), b.label(y))),
                }
            }
        }
        Ok(())
    }

    /// The three properties of `Loc`: extending a string extends its
    /// location, and at each length the locations of nonempty regions are
    /// the leaves of one finite binary tree.
    pub fn check_locs(&self) -> Result<(), UniversalError> {
        let fail = |m: String| Err(UniversalError::Certificate(m));
        let by_sign: std::collections::HashMap<&str, &Path> =
            self.locs.iter().map(|(r, p)| (r.as_str(), p)).collect();
        for (r, p) in &self.locs {
            if r.len() > 1 {
                let parent = by_sign[&r[..r.len() - 1]];
                if !p.starts_with(parent) {
                    return fail(format!("Loc({r}) does not extend Loc of its prefix"));
                }
            }
        }
        for k in 1..self.order().len() {
            let level: Vec<&Path> = self.locs.iter().filter(|(r, _)| r.len() == k).map(|(_, p)| p).collect();
            for (i, p) in level.iter().enumerate() {
                for q in &level[i + 1..] {
                    if p.starts_with(q) || q.starts_with(p) {
                        return fail(format!("locations {} and {} overlap", path_string(p), path_string(q)));
                    }
                }
            }
            // Prefix-free paths cover every branch exactly when their
            // weights 2^-len sum to one.
            let depth = level.iter().map(|p| p.len()).max().unwrap_or(0);
            let total: u128 = level.iter().map(|p| 1u128 << (depth - p.len())).sum();
            if total != 1u128 << depth {
                return fail(format!("locations of length {k} leave a branch uncovered"));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::basis::{present, Basis};
    use crate::fixtures::{self, shared};

    fn hook() -> FinitePresentation {
        let b = shared(fixtures::hook());
        FinitePresentation::from_labels(b, &["⊥", "b", "c", "a"]).unwrap()
    }

    fn labels(p: &FinitePresentation, ts: &[Token]) -> Vec<String> {
        let mut out = p.basis().labels_of(ts);
        out.sort();
        out
    }

    #[test]
    fn hook_regions() {
        let p = hook();
        let table: Vec<(String, Vec<String>)> =
            (1..=3).flat_map(|k| regions(&p, k).unwrap()).map(|(r, ts)| (r, labels(&p, &ts))).collect();
        let expect: Vec<(&str, Vec<&str>)> = vec![
            ("+", vec!["a", "b"]),
            ("-", vec!["c", "⊥"]),
            ("++", vec![]),
            ("+-", vec!["a", "b"]),
            ("-+", vec!["c"]),
            ("--", vec!["⊥"]),
            ("+++", vec![]),
            ("++-", vec![]),
            ("+-+", vec!["a"]),
            ("+--", vec!["b"]),
            ("-++", vec![]),
            ("-+-", vec!["c"]),
            ("--+", vec![]),
            ("---", vec!["⊥"]),
        ];
        assert_eq!(table.len(), 14);
        for ((r, ts), (er, ets)) in table.iter().zip(&expect) {
            assert_eq!(r, er);
            assert_eq!(ts, ets, "region {r}");
        }
        assert_eq!(regions(&p, 0).unwrap(), vec![(String::new(), p.order().to_vec())]);
        assert!(regions(&p, 4).is_err());
    }

    #[test]
    fn hook_locs_and_trees() {
        let p = hook();
        let cert = embed(&p).unwrap();
        let locs: Vec<(String, String)> = cert.locs().iter().map(|(r, l)| (r.clone(), path_string(l))).collect();
        let expect = [
            ("+", "l"),
            ("-", "r"),
            ("+-", "l"),
            ("-+", "rl"),
            ("--", "rr"),
            ("+-+", "ll"),
            ("+--", "lr"),
            ("-+-", "rl"),
            ("---", "rr"),
        ];
        assert_eq!(locs.len(), 9);
        for ((r, l), (er, el)) in locs.iter().zip(expect) {
            assert_eq!((r.as_str(), l.as_str()), (er, el));
        }
        assert_eq!(path_string(&loc(&p, "").unwrap()), "ε");
        assert_eq!(path_string(&loc(&p, "-+").unwrap()), "rl");
        let trees: Vec<String> = cert.trees().iter().map(|(_, t)| t.to_string()).collect();
        assert_eq!(trees, ["D", "(D,T)", "(T,(D,T))", "((D,T),T)"]);
        let a = p.token(3);
        assert_eq!(cert.unreduced(a).to_string(), "((D,T),(T,T))");
        cert.check_locs().unwrap();
    }

    #[test]
    fn one_point_basis() {
        let b = shared(fixtures::flat("1", &[]));
        let cert = embed(&FinitePresentation::natural(b)).unwrap();
        assert_eq!(cert.tree(Token::new(0)), &UTree::Delta);
        assert!(cert.locs().is_empty());
    }

    #[test]
    fn every_enumeration_of_small_bases() {
        for b in fixtures::small_bases(5) {
            let b: BasisRef = Arc::new(b);
            let rest: Vec<Token> = b.tokens().filter(|&t| t != b.bottom()).collect();
            for perm in permutations(&rest) {
                let order: Vec<Token> = std::iter::once(b.bottom()).chain(perm).collect();
                let cert = embed(&present(b.clone(), &order).unwrap()).unwrap();
                cert.check_locs().unwrap();
            }
        }
    }

    fn permutations(xs: &[Token]) -> Vec<Vec<Token>> {
        if xs.is_empty() {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for i in 0..xs.len() {
            let mut rest = xs.to_vec();
            let x = rest.remove(i);
            for mut p in permutations(&rest) {
                p.insert(0, x);
                out.push(p);
            }
        }
        out
    }

    #[test]
    fn fixtures_embed() {
        for b in [fixtures::example_strings(), fixtures::intervals(4), fixtures::truth(), fixtures::chain(5)] {
            let b = shared(b);
            let cert = embed(&FinitePresentation::natural(b.clone())).unwrap();
            cert.check_locs().unwrap();
            assert_eq!(cert.image().unwrap().len(), b.len());
        }
    }
}
