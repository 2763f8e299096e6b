//! Least fixed points of approximable self-maps.
//!
//! On a finite basis the chain `⊥ ⊑ f(⊥) ⊑ f²(⊥) ⊑ …` is followed until it
//! stops moving. On a presented basis the fixed point is the set of indices
//! reachable from `⊥` along the graph of the map, cut off by fuel.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::basis::{Basis, BasisExt, BasisRef, Presentation, Token};
use crate::constructors::{ProductBasis, Stream, StreamPresentation};
use crate::ideal::Ideal;
use crate::mapping::{expect_basis, graph_levels, ApproxMap, ComputableMap, FnMap, MapError};

/// Largest basis `verify_least` will scan.
pub const VERIFY_LIMIT: usize = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FixError {
    #[error(transparent)]
    Map(#[from] MapError),
    #[error("`{0}` is not a self-map")]
    NotSelfMap(String),
    #[error("basis has {size} elements, more than the limit of {limit}")]
    TooLarge { size: usize, limit: usize },
    #[error("joint iteration gave {joint} but the nested formula gave {nested}")]
    Disagreement { joint: String, nested: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixResult {
    pub value: Ideal,
    /// Applications of `f` made before the chain stopped.
    pub iterations: usize,
    pub converged: bool,
}

fn self_map(f: &ApproxMap) -> Result<(), FixError> {
    if f.source().same_basis(f.target().as_ref()) {
        Ok(())
    } else {
        Err(FixError::NotSelfMap(format!(
            "{} -> {}",
            f.source().name(),
            f.target().name()
        )))
    }
}

/// The Kleene chain `⊥, f(⊥), f²(⊥), …` up to and including the first
/// repeated element.
pub fn kleene_chain(f: &ApproxMap) -> Result<Vec<Token>, FixError> {
    self_map(f)?;
    let mut chain = vec![f.source().bottom()];
    loop {
        let x = *chain.last().unwrap();
        let y = f.image_token(x);
        chain.push(y);
        if y == x {
            return Ok(chain);
        }
    }
}

pub fn fix_finite(f: &ApproxMap) -> Result<FixResult, FixError> {
    let chain = kleene_chain(f)?;
    let x = *chain.last().unwrap();
    Ok(FixResult {
        value: Ideal::principal(f.source(), x),
        iterations: chain.len() - 1,
        converged: true,
    })
}

/// True when `x` is a fixed point of `f` below every pre-fixed point.
///
/// Ideals over a finite basis are principal, so it is enough to scan the
/// tokens `y` with `f(y) ⊑ y`.
pub fn verify_least(f: &ApproxMap, x: &Ideal) -> Result<bool, FixError> {
    self_map(f)?;
    expect_basis(f.source().as_ref(), x.basis().as_ref())?;
    let b = f.source();
    if b.len() > VERIFY_LIMIT {
        return Err(FixError::TooLarge {
            size: b.len(),
            limit: VERIFY_LIMIT,
        });
    }
    let g = x.generator();
    if f.image_token(g) != g {
        return Ok(false);
    }
    Ok(b.tokens()
        .filter(|&y| b.leq(f.image_token(y), y))
        .all(|y| b.leq(g, y)))
}

/// The result of a fuel-bounded fixed-point search over a presentation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FuelFix {
    pub indices: BTreeSet<usize>,
    /// Passes that added at least one index.
    pub iterations: usize,
    pub converged: bool,
}

impl FuelFix {
    pub fn labels(&self, p: &dyn Presentation) -> Vec<String> {
        let set: BTreeSet<String> = self.indices.iter().map(|&i| p.label(i)).collect();
        set.into_iter().collect()
    }
}

/// Indices reachable by chains `⊥ F d₁ F … F d` of length at most `fuel`,
/// using only graph pairs whose indices are both below `fuel`.
///
/// `converged` is set when a pass adds nothing and the presentation is
/// finite with every index below `fuel`, so nothing was cut off.
pub fn fix_fuel(f: &dyn ComputableMap, fuel: usize) -> FuelFix {
    let graph = graph_levels(f, fuel);
    let mut indices = BTreeSet::from([0usize]);
    let mut iterations = 0;
    let mut stable = false;
    for _ in 0..fuel {
        let next: Vec<usize> = graph
            .iter()
            .filter(|(i, j)| indices.contains(i) && !indices.contains(j))
            .map(|&(_, j)| j)
            .collect();
        if next.is_empty() {
            stable = true;
            break;
        }
        indices.extend(next);
        iterations += 1;
    }
    let whole = f.source().len().is_some_and(|n| n <= fuel);
    FuelFix {
        indices,
        iterations,
        converged: stable && whole,
    }
}

/// `fix_fuel` on a finite map through its natural presentation, with the
/// reached set closed up to an ideal.
pub fn fix_fuel_finite(f: &ApproxMap, fuel: usize) -> Result<FixResult, FixError> {
    self_map(f)?;
    let p = crate::basis::FinitePresentation::natural(f.source().clone());
    let presented = crate::mapping::PresentedMap::new(f.clone(), p.clone(), p.clone());
    let r = fix_fuel(&presented, fuel);
    let seed: Vec<Token> = r.indices.iter().map(|&i| p.token(i)).collect();
    let value =
        Ideal::close(f.source(), &seed).expect("reached tokens lie below the least fixed point");
    Ok(FixResult {
        value,
        iterations: r.iterations,
        converged: r.converged,
    })
}

/// The least solution of `x = τ(x,y)`, `y = σ(x,y)`.
///
/// Computed twice: by iterating `⟨τ,σ⟩` on the product, and by the nested
/// formula `x* = fix(λx. τ(x, fix(λy. σ(x,y))))`, `y* = fix(λy. σ(x*,y))`.
/// The two must agree.
pub fn fix_pair(
    prod: &Arc<ProductBasis>,
    tau: &ApproxMap,
    sigma: &ApproxMap,
) -> Result<(Ideal, Ideal), FixError> {
    let (xb, yb) = (prod.left().clone(), prod.right().clone());
    expect_basis(prod.as_ref(), tau.source().as_ref())?;
    expect_basis(prod.as_ref(), sigma.source().as_ref())?;
    expect_basis(xb.as_ref(), tau.target().as_ref())?;
    expect_basis(yb.as_ref(), sigma.target().as_ref())?;

    let mut t = prod.bottom();
    loop {
        let next = prod.pair(tau.image_token(t), sigma.image_token(t));
        if next == t {
            break;
        }
        t = next;
    }
    let (jx, jy) = prod.split(t);

    let inner = |x: Token| lfp(&yb, |y| sigma.image_token(prod.pair(x, y)));
    let nx = lfp(&xb, |x| tau.image_token(prod.pair(x, inner(x))));
    let ny = inner(nx);

    if (jx, jy) != (nx, ny) {
        return Err(FixError::Disagreement {
            joint: format!("[{},{}]", xb.label(jx), yb.label(jy)),
            nested: format!("[{},{}]", xb.label(nx), yb.label(ny)),
        });
    }
    Ok((Ideal::principal(&xb, jx), Ideal::principal(&yb, jy)))
}

/// Least fixed point of a monotone token function on a finite basis.
fn lfp<F: Fn(Token) -> Token>(b: &BasisRef, f: F) -> Token {
    let mut x = b.bottom();
    loop {
        let y = f(x);
        if y == x {
            return x;
        }
        x = y;
    }
}

/// The stream map `a ↦ prefix·a` as a computable map: `i F j` when
/// stream `j` lies below `prefix` followed by stream `i`.
pub fn prefix_equation(prefix: &str) -> FnMap {
    let prefix = prefix.to_string();
    let p: Arc<dyn Presentation> = Arc::new(StreamPresentation);
    FnMap::new(p.clone(), p, move |i, j| {
        StreamPresentation::decode(j).leq(&StreamPresentation::decode(i).prepend(&prefix))
    })
}

/// The longest stream in a reached set of stream indices.
pub fn longest_stream(r: &FuelFix) -> Stream {
    r.indices
        .iter()
        .map(|&i| StreamPresentation::decode(i))
        .max_by_key(|s| s.bits.len())
        .expect("⊥ is always reached")
}

/// Table iteration of `σ = λn. cond(zero(n), 0, σ(pred n) + pred n)` over
/// the flat naturals `0..=max`. Values beyond `max` are `None`, matching
/// the truncated `succ`.
///
/// The result is `σ(n) = n(n−1)/2`, that is `Σ_{i<n} i`.
pub fn sigma_table(max: usize) -> (Vec<Option<usize>>, usize) {
    let mut table: Vec<Option<usize>> = vec![None; max + 1];
    let mut iterations = 0;
    loop {
        let next: Vec<Option<usize>> = (0..=max)
            .map(|n| match n {
                0 => Some(0),
                _ => table[n - 1].map(|v| v + (n - 1)).filter(|&v| v <= max),
            })
            .collect();
        iterations += 1;
        if next == table {
            return (table, iterations);
        }
        table = next;
    }
}
