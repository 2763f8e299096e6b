use std::collections::HashMap;
use std::sync::Arc;

use crate::basis::{split_top_level, Basis, BasisError, BasisExt, BasisRef, Token};
use crate::mapping::ApproxMap;

pub const DEFAULT_FUNSPACE_LIMIT: usize = 4096;

/// The finite-step mappings `A⇒B`, ordered pointwise.
///
/// On finite bases each approximable map is determined by its monotone
/// table `a ↦ F(a)`; tables are the tokens. Labels list the minimal steps,
/// e.g. `{0⊥↦1⊥, 00↦11}`, with `{}` for the everywhere-⊥ map.
#[derive(Debug)]
pub struct FunSpaceBasis {
    source: BasisRef,
    target: BasisRef,
    name: String,
    tables: Vec<Vec<Token>>,
    index: HashMap<Vec<Token>, Token>,
    bottom: Token,
}

impl FunSpaceBasis {
    pub fn new(source: BasisRef, target: BasisRef) -> Result<Arc<FunSpaceBasis>, BasisError> {
        FunSpaceBasis::with_limit(source, target, DEFAULT_FUNSPACE_LIMIT)
    }

    pub fn with_limit(
        source: BasisRef,
        target: BasisRef,
        limit: usize,
    ) -> Result<Arc<FunSpaceBasis>, BasisError> {
        let tables = monotone_tables(source.as_ref(), target.as_ref(), limit)?;
        let index: HashMap<Vec<Token>, Token> = tables
            .iter()
            .enumerate()
            .map(|(i, t)| (t.clone(), Token::new(i)))
            .collect();
        let bottom = index[&vec![target.bottom(); source.len()]];
        let name = format!("({} => {})", source.name(), target.name());
        Ok(Arc::new(FunSpaceBasis {
            source,
            target,
            name,
            tables,
            index,
            bottom,
        }))
    }

    pub fn source(&self) -> &BasisRef {
        &self.source
    }

    pub fn target(&self) -> &BasisRef {
        &self.target
    }

    pub fn table(&self, t: Token) -> &[Token] {
        &self.tables[t.index()]
    }

    pub fn token_of_table(&self, table: &[Token]) -> Option<Token> {
        self.index.get(table).copied()
    }

    pub fn as_map(&self, t: Token) -> ApproxMap {
        ApproxMap::from_generators(&self.source, &self.target, self.tables[t.index()].clone())
    }

    pub fn token_of(&self, f: &ApproxMap) -> Option<Token> {
        if !(f.source().same_basis(self.source.as_ref())
            && f.target().same_basis(self.target.as_ref()))
        {
            return None;
        }
        self.token_of_table(f.generators())
    }

    /// Every approximable map `A → B`, in token order.
    pub fn maps(&self) -> impl Iterator<Item = ApproxMap> + '_ {
        self.tokens().map(|t| self.as_map(t))
    }

    fn step_label(&self, table: &[Token]) -> String {
        let f = ApproxMap::from_generators(&self.source, &self.target, table.to_vec());
        let steps: Vec<String> = f
            .steps()
            .into_iter()
            .map(|(a, b)| format!("{}↦{}", self.source.label(a), self.target.label(b)))
            .collect();
        format!("{{{}}}", steps.join(", "))
    }
}

impl Basis for FunSpaceBasis {
    fn name(&self) -> &str {
        &self.name
    }

    fn len(&self) -> usize {
        self.tables.len()
    }

    fn bottom(&self) -> Token {
        self.bottom
    }

    fn leq(&self, a: Token, b: Token) -> bool {
        let (f, g) = (&self.tables[a.index()], &self.tables[b.index()]);
        f.iter().zip(g).all(|(&x, &y)| self.target.leq(x, y))
    }

    fn join(&self, a: Token, b: Token) -> Option<Token> {
        let (f, g) = (&self.tables[a.index()], &self.tables[b.index()]);
        let table: Option<Vec<Token>> = f
            .iter()
            .zip(g)
            .map(|(&x, &y)| self.target.join(x, y))
            .collect();
        self.token_of_table(&table?)
    }

    fn label(&self, t: Token) -> String {
        self.step_label(&self.tables[t.index()])
    }

    fn lookup(&self, label: &str) -> Option<Token> {
        let inner = label.trim().strip_prefix('{')?.strip_suffix('}')?.trim();
        let mut seed = Vec::new();
        if !inner.is_empty() {
            for part in split_top_level(inner) {
                let (a, b) = split_step(part.trim())?;
                seed.push((self.source.lookup(a)?, self.target.lookup(b)?));
            }
        }
        let f = ApproxMap::finite_step_closure(&self.source, &self.target, &seed).ok()?;
        self.token_of(&f)
    }
}

/// Splits `a↦b` at the arrow that is not nested in brackets.
fn split_step(s: &str) -> Option<(&str, &str)> {
    let mut depth = 0i32;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' | '{' | '<' => depth += 1,
            ')' | ']' | '}' | '>' => depth -= 1,
            '↦' if depth == 0 => return Some((&s[..i], &s[i + '↦'.len_utf8()..])),
            _ => {}
        }
    }
    None
}

/// All monotone tables `A → B` by backtracking in token order.
fn monotone_tables(
    a: &dyn Basis,
    b: &dyn Basis,
    limit: usize,
) -> Result<Vec<Vec<Token>>, BasisError> {
    let n = a.len();
    let below: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            (0..i)
                .filter(|&j| {
                    a.leq(Token::new(j), Token::new(i)) || a.leq(Token::new(i), Token::new(j))
                })
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut table = vec![Token::new(0); n];
    fn go(
        i: usize,
        a: &dyn Basis,
        b: &dyn Basis,
        below: &[Vec<usize>],
        table: &mut Vec<Token>,
        out: &mut Vec<Vec<Token>>,
        limit: usize,
    ) -> Result<(), BasisError> {
        if i == table.len() {
            if out.len() == limit {
                return Err(BasisError::TooLarge {
                    size: limit + 1,
                    limit,
                });
            }
            out.push(table.clone());
            return Ok(());
        }
        for y in b.tokens() {
            let ok = below[i].iter().all(|&j| {
                let (tj, ti) = (Token::new(j), Token::new(i));
                (!a.leq(tj, ti) || b.leq(table[j], y)) && (!a.leq(ti, tj) || b.leq(y, table[j]))
            });
            if ok {
                table[i] = y;
                go(i + 1, a, b, below, table, out, limit)?;
            }
        }
        Ok(())
    }
    go(0, a, b, &below, &mut table, &mut out, limit)?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::FiniteBasis;
    use crate::fixtures;

    fn chain2() -> BasisRef {
        Arc::new(fixtures::chain(2))
    }

    // Every relation on A×B passing the four conditions, by brute force.
    fn all_relations(a: &BasisRef, b: &BasisRef) -> Vec<ApproxMap> {
        let cells: Vec<(Token, Token)> = a
            .tokens()
            .flat_map(|x| b.tokens().map(move |y| (x, y)))
            .collect();
        (0u32..(1 << cells.len()))
            .filter_map(|mask| {
                let pairs: Vec<_> = cells
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| mask >> k & 1 == 1)
                    .map(|(_, &p)| p)
                    .collect();
                ApproxMap::validate(a, b, &pairs).ok()
            })
            .collect()
    }

    #[test]
    fn two_point_chains() {
        let c = chain2();
        let fs = FunSpaceBasis::new(c.clone(), c.clone()).unwrap();
        assert_eq!(fs.len(), 3);
        let mut labels: Vec<String> = fs.tokens().map(|t| fs.label(t)).collect();
        labels.sort();
        assert_eq!(labels, vec!["{c1↦c1}", "{}", "{⊥↦c1}"]);
        let bot = fs.bottom();
        let mid = fs.lookup("{c1↦c1}").unwrap();
        let top = fs.lookup("{⊥↦c1}").unwrap();
        assert_eq!(fs.label(bot), "{}");
        assert!(fs.leq(bot, mid) && fs.leq(mid, top) && !fs.leq(top, mid));
        assert_eq!(all_relations(&c, &c).len(), 3);
    }

    #[test]
    fn tokens_match_brute_force_relations() {
        let bases: Vec<BasisRef> = fixtures::small_bases(3)
            .into_iter()
            .map(|b| Arc::new(b) as BasisRef)
            .collect();
        for a in &bases {
            for b in &bases {
                let fs = FunSpaceBasis::new(a.clone(), b.clone()).unwrap();
                let brute = all_relations(a, b);
                assert_eq!(brute.len(), fs.len());
                for f in &brute {
                    let t = fs.token_of(f).unwrap();
                    assert_eq!(&fs.as_map(t), f);
                }
            }
        }
    }

    #[test]
    fn join_is_step_closure_of_union() {
        let bases: Vec<BasisRef> = fixtures::small_bases(3)
            .into_iter()
            .map(|b| Arc::new(b) as BasisRef)
            .collect();
        for a in &bases {
            for b in &bases {
                let fs = FunSpaceBasis::new(a.clone(), b.clone()).unwrap();
                for x in fs.tokens() {
                    for y in fs.tokens() {
                        let mut seed = fs.as_map(x).pairs();
                        seed.extend(fs.as_map(y).pairs());
                        let closed = ApproxMap::finite_step_closure(a, b, &seed).ok();
                        assert_eq!(fs.join(x, y).map(|t| fs.as_map(t)), closed);
                    }
                }
            }
        }
    }

    #[test]
    fn funspace_is_a_valid_basis() {
        let s: BasisRef = Arc::new(fixtures::hook());
        let fs = FunSpaceBasis::new(s.clone(), s).unwrap();
        let labels: Vec<String> = fs.tokens().map(|t| fs.label(t)).collect();
        let m = FiniteBasis::from_order("fs", labels, |i, j| fs.leq(Token::new(i), Token::new(j)))
            .unwrap();
        assert_eq!(m.len(), fs.len());
        for t in fs.tokens() {
            assert_eq!(fs.lookup(&fs.label(t)), Some(t));
        }
    }

    #[test]
    fn size_guard() {
        let s: BasisRef = Arc::new(fixtures::flat("f", &["a", "b", "c", "d", "e", "g"]));
        assert!(matches!(
            FunSpaceBasis::with_limit(s.clone(), s, 100),
            Err(BasisError::TooLarge { .. })
        ));
    }
}
