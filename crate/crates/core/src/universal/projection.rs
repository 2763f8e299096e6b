//! Finitary projections of `U` and the constructors `+`, `×`, `→` on them.
//!
//! A projection is kept as its fixed-point set, a finite sub-domain of `U`;
//! its value at a tree is the largest fixed tree below it. Sums and
//! products are placed in `U` by embeddings defined on all of `U`:
//!
//! * `inl(x) = (x,⊤)`, `inr(y) = (⊤,y)`, bottom to `Δ`;
//! * `[x,y]` is the tree whose set of branches is `x×C ∪ C×y` under the
//!   interleaving of two branches into one (even steps belong to `x`).
//!
//! Reading a tree as the set of infinite branches that end in a `⊤` leaf,
//! the order of `U` is inclusion, so both embeddings keep the order, lubs
//! and inconsistency. Function spaces go through [`embed`] applied to the
//! maps of `U₁ → U₁`.

use std::sync::{Arc, OnceLock};

use super::{embed, u_glb, u_leq, u_lub, EmbeddingCertificate, TreeBasis, UTree, UniversalError};
use crate::basis::{present, BasisExt, BasisRef, Token};
use crate::constructors::FunSpaceBasis;
use crate::mapping::ApproxMap;

/// Depth used when none is given.
pub const DEFAULT_DEPTH: usize = 3;

pub fn inl_tree(x: &UTree) -> UTree {
    UTree::node(x.clone(), UTree::Top)
}

pub fn inr_tree(y: &UTree) -> UTree {
    UTree::node(UTree::Top, y.clone())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SumView {
    Bottom,
    Left(UTree),
    Right(UTree),
}

/// The largest sum element whose image lies below `t`.
pub fn unsum_tree(t: &UTree) -> SumView {
    match t {
        UTree::Node(l, r) if r.is_top() => SumView::Left((**l).clone()),
        UTree::Node(l, r) if l.is_top() => SumView::Right((**r).clone()),
        _ => SumView::Bottom,
    }
}

/// The image of the pair `[x,y]`.
pub fn pair_tree(x: &UTree, y: &UTree) -> UTree {
    interleave(x, y, true)
}

fn interleave(x: &UTree, y: &UTree, x_turn: bool) -> UTree {
    if x.is_top() || y.is_top() {
        return UTree::Top;
    }
    if x.is_delta() && y.is_delta() {
        return UTree::Delta;
    }
    if x_turn {
        let (a, b) = x.halves();
        UTree::node(interleave(&a, y, false), interleave(&b, y, false))
    } else {
        let (c, d) = y.halves();
        UTree::node(interleave(x, &c, true), interleave(x, &d, true))
    }
}

/// The largest pair whose image lies below `t`.
pub fn unpair_tree(t: &UTree) -> (UTree, UTree) {
    (part(t, true, true), part(t, false, true))
}

// The largest x with x×C below t (or C×y for `left = false`); `x_turn`
// says whose step the root of t is.
fn part(t: &UTree, left: bool, x_turn: bool) -> UTree {
    match t {
        UTree::Node(l, r) => {
            let (a, b) = (part(l, left, !x_turn), part(r, left, !x_turn));
            if x_turn == left {
                UTree::node(a, b)
            } else {
                u_glb(&a, &b)
            }
        }
        leaf => leaf.clone(),
    }
}

/// A finitary projection of `U`, given by its fixed-point set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UProjection {
    fixed: Vec<UTree>,
}

impl UProjection {
    /// Checks that the trees form a sub-domain of `U`: `Δ` is present and
    /// consistent lubs stay inside.
    pub fn from_fixed(trees: impl IntoIterator<Item = UTree>) -> Result<UProjection, UniversalError> {
        let b = TreeBasis::from_trees("fixed", trees)?;
        Ok(UProjection { fixed: b.trees().to_vec() })
    }

    /// The everywhere-`Δ` projection.
    pub fn bottom() -> UProjection {
        UProjection { fixed: vec![UTree::Delta] }
    }

    /// The projection onto `U_d`.
    pub fn truncation(depth: usize) -> Result<UProjection, UniversalError> {
        Ok(UProjection { fixed: super::u_truncation(depth)?.trees().to_vec() })
    }

    /// The projection onto the image of an embedded basis.
    pub fn of_certificate(cert: &EmbeddingCertificate) -> Result<UProjection, UniversalError> {
        Ok(UProjection { fixed: cert.image()?.trees().to_vec() })
    }

    /// Fixed trees, sorted by depth then serialization.
    pub fn fixed(&self) -> &[UTree] {
        &self.fixed
    }

    pub fn len(&self) -> usize {
        self.fixed.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fixed.is_empty()
    }

    pub fn depth(&self) -> usize {
        self.fixed.iter().map(UTree::depth).max().unwrap_or(0)
    }

    pub fn is_fixed(&self, t: &UTree) -> bool {
        self.fixed.binary_search_by(|f| f.canonical_cmp(t)).is_ok()
    }

    /// The largest fixed tree below `t`.
    pub fn image(&self, t: &UTree) -> UTree {
        self.fixed
            .iter()
            .filter(|f| u_leq(f, t))
            .fold(UTree::Delta, |acc, f| u_lub(&acc, f).expect("fixed trees below t are consistent"))
    }

    /// `a ⊆ b` as relations, which holds exactly when the fixed sets are
    /// included.
    pub fn is_below(&self, other: &UProjection) -> bool {
        self.fixed.iter().all(|t| other.is_fixed(t))
    }

    /// The fixed-point set as a basis.
    pub fn domain(&self) -> TreeBasis {
        TreeBasis::from_trees("fixed", self.fixed.iter().cloned()).expect("fixed sets are sub-domains")
    }

    /// The relation `x a z ⟺ z ⊑ a(x)` on a finite set of trees that
    /// holds every fixed tree.
    pub fn on(&self, carrier: &Arc<TreeBasis>) -> Result<ApproxMap, UniversalError> {
        if let Some(t) = self.fixed.iter().find(|t| carrier.token_of(t).is_none()) {
            return Err(UniversalError::TruncationTooSmall { depth: carrier.max_depth(), required: t.depth() });
        }
        let b: BasisRef = carrier.clone();
        let images: Vec<Token> = carrier.tokens().map(|x| carrier.token_of(&self.image(carrier.tree(x))).unwrap()).collect();
        Ok(ApproxMap::from_fn(&b, &b, |x| images[x.index()])?)
    }

    fn within(self, depth: usize) -> Result<UProjection, UniversalError> {
        let required = self.depth();
        if required > depth {
            return Err(UniversalError::TruncationTooSmall { depth, required });
        }
        Ok(self)
    }
}

fn check_depth(ps: &[&UProjection], depth: usize) -> Result<(), UniversalError> {
    let required = ps.iter().map(|p| p.depth()).max().unwrap_or(0);
    if required > depth {
        return Err(UniversalError::TruncationTooSmall { depth, required });
    }
    Ok(())
}

/// `a+b = cond∘⟨which, i₊∘in₀∘a∘out₀, i₊∘in₁∘b∘out₁⟩∘j₊`, evaluated at `t`.
pub fn sum_image(a: &UProjection, b: &UProjection, t: &UTree) -> UTree {
    match unsum_tree(t) {
        SumView::Bottom => UTree::Delta,
        SumView::Left(x) => inl_tree(&a.image(&x)),
        SumView::Right(y) => inr_tree(&b.image(&y)),
    }
}

/// `a×b = i×∘⟨a∘proj₀, b∘proj₁⟩∘j×`, evaluated at `t`.
pub fn prod_image(a: &UProjection, b: &UProjection, t: &UTree) -> UTree {
    let (x, y) = unpair_tree(t);
    pair_tree(&a.image(&x), &b.image(&y))
}

/// Fixed trees are `Δ`, `inl` of those of `a` and `inr` of those of `b`.
pub fn proj_sum(a: &UProjection, b: &UProjection, depth: usize) -> Result<UProjection, UniversalError> {
    check_depth(&[a, b], depth)?;
    let trees = std::iter::once(UTree::Delta)
        .chain(a.fixed.iter().map(inl_tree))
        .chain(b.fixed.iter().map(inr_tree));
    UProjection::from_fixed(trees)?.within(depth)
}

/// Fixed trees are the pairs of fixed trees.
pub fn proj_prod(a: &UProjection, b: &UProjection, depth: usize) -> Result<UProjection, UniversalError> {
    check_depth(&[a, b], depth)?;
    let trees: Vec<UTree> = a.fixed.iter().flat_map(|x| b.fixed.iter().map(move |y| pair_tree(x, y))).collect();
    UProjection::from_fixed(trees)?.within(depth)
}

/// The maps of `U₁ → U₁`, embedded once in canonical order.
struct ArrowSpace {
    u1: Arc<TreeBasis>,
    maps: Arc<FunSpaceBasis>,
    cert: EmbeddingCertificate,
}

fn arrow_space() -> &'static ArrowSpace {
    static SPACE: OnceLock<ArrowSpace> = OnceLock::new();
    SPACE.get_or_init(|| {
        let u1 = Arc::new(super::u_truncation(1).expect("U1 is small"));
        let maps = FunSpaceBasis::new(u1.clone(), u1.clone()).expect("U1 → U1 is small");
        let b: BasisRef = maps.clone();
        let cert = embed(&present(b.clone(), &canonical_order(&b)).expect("canonical order")).expect("certificate");
        ArrowSpace { u1, maps, cert }
    })
}

/// Tokens sorted by the number of tokens below them, then by label.
pub(crate) fn canonical_order(b: &BasisRef) -> Vec<Token> {
    let mut order: Vec<Token> = b.tokens().collect();
    order.sort_by_cached_key(|&t| (b.tokens().filter(|&y| b.leq(y, t)).count(), b.label(t)));
    order
}

/// `a→b = i→∘(λf. b∘f∘a)∘j→`. Fixed trees are the images of the maps
/// `f = b∘f∘a`. Only projections inside `U₁` are supported, since the
/// function space of anything larger is too big to embed.
pub fn proj_arrow(a: &UProjection, b: &UProjection, depth: usize) -> Result<UProjection, UniversalError> {
    check_depth(&[a, b], depth)?;
    if a.depth() > 1 || b.depth() > 1 {
        return Err(UniversalError::Unsupported(format!(
            "function spaces are only built for projections inside U1, got depths {} and {}",
            a.depth(),
            b.depth()
        )));
    }
    let space = arrow_space();
    let u1 = &space.u1;
    let on = |p: &UProjection, t: Token| u1.token_of(&p.image(u1.tree(t))).expect("images stay in U1");
    let trees: Vec<UTree> = space
        .maps
        .tokens()
        .filter(|&f| {
            let table = space.maps.table(f);
            u1.tokens().all(|s| table[s.index()] == on(b, table[on(a, s).index()]))
        })
        .map(|f| space.cert.tree(f).clone())
        .collect();
    UProjection::from_fixed(trees)?.within(depth)
}

/// Expressions over projections: the unknown, constants, `+`, `×`, `→`.
#[derive(Clone, Debug)]
pub enum DomainExpr {
    Var,
    Const(UProjection),
    Sum(Box<DomainExpr>, Box<DomainExpr>),
    Prod(Box<DomainExpr>, Box<DomainExpr>),
    Arrow(Box<DomainExpr>, Box<DomainExpr>),
}

impl DomainExpr {
    pub fn sum(a: DomainExpr, b: DomainExpr) -> DomainExpr {
        DomainExpr::Sum(Box::new(a), Box::new(b))
    }

    pub fn prod(a: DomainExpr, b: DomainExpr) -> DomainExpr {
        DomainExpr::Prod(Box::new(a), Box::new(b))
    }

    pub fn arrow(a: DomainExpr, b: DomainExpr) -> DomainExpr {
        DomainExpr::Arrow(Box::new(a), Box::new(b))
    }

    pub fn eval(&self, p: &UProjection, depth: usize) -> Result<UProjection, UniversalError> {
        match self {
            DomainExpr::Var => Ok(p.clone()),
            DomainExpr::Const(c) => Ok(c.clone()),
            DomainExpr::Sum(a, b) => proj_sum(&a.eval(p, depth)?, &b.eval(p, depth)?, depth),
            DomainExpr::Prod(a, b) => proj_prod(&a.eval(p, depth)?, &b.eval(p, depth)?, depth),
            DomainExpr::Arrow(a, b) => proj_arrow(&a.eval(p, depth)?, &b.eval(p, depth)?, depth),
        }
    }
}

/// `p₀ = ⊥`, `p_{n+1} = expr(pₙ)`, for `fuel` steps. Every tree of every
/// `pₙ` must have depth at most `depth`.
pub fn solve_domain_equation(expr: &DomainExpr, depth: usize, fuel: usize) -> Result<Vec<UProjection>, UniversalError> {
    let mut chain = vec![UProjection::bottom()];
    for _ in 0..fuel {
        let next = expr.eval(chain.last().unwrap(), depth)?;
        chain.push(next);
    }
    Ok(chain)
}
