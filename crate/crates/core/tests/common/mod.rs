//! Random generators shared by the integration tests.
#![allow(dead_code)]

use std::sync::Arc;

use finitary::basis::{BasisExt, BasisRef, FiniteBasis, Token};
use finitary::mapping::ApproxMap;
use finitary::universal::UTree;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random finitary basis with `1..=max` elements, by rejection: a random
/// DAG over the non-bottom elements is closed transitively, and kept when
/// every consistent pair has a lub.
pub fn random_basis(rng: &mut ChaCha8Rng, max: usize) -> FiniteBasis {
    loop {
        let n = rng.gen_range(1..=max);
        let k = n - 1;
        let density = rng.gen_range(0.1..0.6);
        let mut lt = vec![vec![false; k]; k];
        for i in 0..k {
            for j in i + 1..k {
                lt[i][j] = rng.gen_bool(density);
            }
        }
        for m in 0..k {
            for i in 0..k {
                for j in 0..k {
                    if lt[i][m] && lt[m][j] {
                        lt[i][j] = true;
                    }
                }
            }
        }
        // Shuffle labels so the token order is not a linear extension.
        let mut perm: Vec<usize> = (0..k).collect();
        perm.shuffle(rng);
        let labels = std::iter::once("⊥".to_string()).chain((0..k).map(|i| format!("x{i}"))).collect();
        let b = FiniteBasis::from_order(&format!("rand{n}"), labels, |i, j| {
            i == 0 || (i > 0 && j > 0 && lt[perm[i - 1]][perm[j - 1]])
        });
        if let Ok(b) = b {
            return b;
        }
    }
}

/// The least map containing a few random steps, retried until the steps
/// are consistent.
pub fn random_map(rng: &mut ChaCha8Rng, source: &BasisRef, target: &BasisRef) -> ApproxMap {
    loop {
        let steps = rng.gen_range(0..=3);
        let seed: Vec<(Token, Token)> = (0..steps)
            .map(|_| {
                (
                    Token::new(rng.gen_range(0..source.len())),
                    Token::new(rng.gen_range(0..target.len())),
                )
            })
            .collect();
        if let Ok(m) = ApproxMap::finite_step_closure(source, target, &seed) {
            return m;
        }
    }
}

/// A random enumeration starting at the bottom.
pub fn random_order(rng: &mut ChaCha8Rng, b: &BasisRef) -> Vec<Token> {
    let bot = b.bottom();
    let mut rest: Vec<Token> = b.tokens().filter(|&t| t != bot).collect();
    rest.shuffle(rng);
    std::iter::once(bot).chain(rest).collect()
}

/// A random, usually unreduced, tree of depth at most `depth`.
pub fn random_tree(rng: &mut ChaCha8Rng, depth: usize) -> UTree {
    if depth == 0 || rng.gen_bool(0.25) {
        if rng.gen_bool(0.5) {
            UTree::Delta
        } else {
            UTree::Top
        }
    } else {
        UTree::raw(random_tree(rng, depth - 1), random_tree(rng, depth - 1))
    }
}

pub fn shared(b: FiniteBasis) -> BasisRef {
    Arc::new(b)
}
