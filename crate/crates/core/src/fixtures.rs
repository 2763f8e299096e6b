//! Small named bases and maps used throughout the examples and tests.

use std::sync::Arc;

use crate::basis::{find_isomorphism, BasisRef, FiniteBasis, Token};
use crate::constructors::Stream;
use crate::mapping::ApproxMap;

/// The seven two-bit strings: `⊥ ⊑ 0⊥,1⊥` and `x⊥ ⊑ x0, x1`.
pub fn example_strings() -> FiniteBasis {
    FiniteBasis::validate(
        "strings",
        &["⊥", "0⊥", "1⊥", "00", "01", "10", "11"],
        &[
            ("⊥", "0⊥"),
            ("⊥", "1⊥"),
            ("0⊥", "00"),
            ("0⊥", "01"),
            ("1⊥", "10"),
            ("1⊥", "11"),
        ],
    )
    .expect("fixture is valid")
}

/// Bitstrings of length at most `max_len` under the prefix order, with
/// bottom `ε`. Each string stands for every infinite string extending it.
pub fn prefix_strings(max_len: usize) -> FiniteBasis {
    let mut labels = vec!["ε".to_string()];
    for n in 1..=max_len {
        for code in 0..1usize << n {
            labels.push(
                (0..n)
                    .map(|k| {
                        if code >> (n - 1 - k) & 1 == 1 {
                            '1'
                        } else {
                            '0'
                        }
                    })
                    .collect(),
            );
        }
    }
    let strip = |s: &str| {
        if s == "ε" {
            String::new()
        } else {
            s.to_string()
        }
    };
    let plain: Vec<String> = labels.iter().map(|l| strip(l)).collect();
    FiniteBasis::from_order(&format!("prefix{max_len}"), labels, |i, j| {
        plain[j].starts_with(&plain[i])
    })
    .expect("prefix orders are finitary")
}

/// Intervals `(n,m)` with `0 ≤ n ≤ m ≤ max`, refined by narrowing. The
/// bottom is `(0,max)`.
pub fn intervals(max: u32) -> FiniteBasis {
    let mut labels = Vec::new();
    let mut bounds = Vec::new();
    // Bottom first so it is easy to spot in listings.
    labels.push(format!("(0,{max})"));
    bounds.push((0, max));
    for n in 0..=max {
        for m in n..=max {
            if (n, m) != (0, max) {
                labels.push(format!("({n},{m})"));
                bounds.push((n, m));
            }
        }
    }
    FiniteBasis::from_order(&format!("intervals{max}"), labels, |i, j| {
        let ((n, m), (n2, m2)) = (bounds[i], bounds[j]);
        n <= n2 && m2 <= m
    })
    .expect("intervals are finitary")
}

/// Four elements `⊥, b, c, a` with `b ⊑ a`.
pub fn hook() -> FiniteBasis {
    FiniteBasis::validate(
        "hook",
        &["⊥", "b", "c", "a"],
        &[("⊥", "b"), ("⊥", "c"), ("b", "a")],
    )
    .expect("fixture is valid")
}

/// The chain `⊥ ⊑ c1 ⊑ … ⊑ c(n-1)`.
pub fn chain(n: usize) -> FiniteBasis {
    assert!(n >= 1);
    let labels: Vec<String> = std::iter::once("⊥".to_string())
        .chain((1..n).map(|i| format!("c{i}")))
        .collect();
    FiniteBasis::from_order(&format!("chain{n}"), labels, |i, j| i <= j)
        .expect("chains are finitary")
}

/// A bottom below pairwise inconsistent atoms.
pub fn flat(name: &str, atoms: &[&str]) -> FiniteBasis {
    let mut labels = vec!["⊥".to_string()];
    labels.extend(atoms.iter().map(|a| a.to_string()));
    FiniteBasis::from_order(name, labels, |i, j| i == 0 || i == j)
        .expect("flat orders are finitary")
}

/// The truth values `⊥, true, false`.
pub fn truth() -> FiniteBasis {
    flat("T", &["true", "false"])
}

/// The flat naturals `⊥, 0, 1, …, n`.
pub fn flat_nats(n: usize) -> FiniteBasis {
    let atoms: Vec<String> = (0..=n).map(|k| k.to_string()).collect();
    let refs: Vec<&str> = atoms.iter().map(|s| s.as_str()).collect();
    flat(&format!("N{n}"), &refs)
}

/// Every finitary basis with at most `max` elements, up to isomorphism.
/// Labels are `⊥` followed by `a, b, c, …`.
pub fn small_bases(max: usize) -> Vec<FiniteBasis> {
    const NAMES: [&str; 7] = ["a", "b", "c", "d", "e", "f", "g"];
    assert!((1..=NAMES.len() + 1).contains(&max));
    let mut out: Vec<FiniteBasis> = Vec::new();
    for n in 1..=max {
        let k = n - 1;
        let cells: Vec<(usize, usize)> = (0..k)
            .flat_map(|i| (0..k).filter(move |&j| j != i).map(move |j| (i, j)))
            .collect();
        let mut found: Vec<FiniteBasis> = Vec::new();
        for mask in 0u64..(1 << cells.len()) {
            let mut lt = vec![vec![false; k]; k];
            for (c, &(i, j)) in cells.iter().enumerate() {
                lt[i][j] = mask >> c & 1 == 1;
            }
            let transitive = (0..k).all(|i| {
                (0..k).all(|j| (0..k).all(|l| !(lt[i][j] && lt[j][l]) || lt[i][l] || i == l))
            });
            let antisymmetric = (0..k).all(|i| (0..k).all(|j| !(lt[i][j] && lt[j][i])));
            if !transitive || !antisymmetric {
                continue;
            }
            let labels: Vec<String> = std::iter::once("⊥".to_string())
                .chain(NAMES[..k].iter().map(|s| s.to_string()))
                .collect();
            let name = format!("small{n}_{}", found.len());
            let Ok(b) = FiniteBasis::from_order(&name, labels, |i, j| {
                i == 0 || (i > 0 && j > 0 && lt[i - 1][j - 1])
            }) else {
                continue;
            };
            if found
                .iter()
                .all(|f| find_isomorphism(f, &b).expect("small").is_none())
            {
                found.push(b);
            }
        }
        out.extend(found);
    }
    out
}

/// The parity map `p : prefix strings → T`: `true` once the string has the
/// form `0ⁿ1y` with `n` even, `false` for odd `n`, and `⊥` before the
/// first `1`.
pub fn parity_map(strings: &BasisRef, truth: &BasisRef) -> ApproxMap {
    ApproxMap::from_fn(strings, truth, |t| {
        let s = strings.label(t);
        let label = match s.find('1') {
            Some(n) if n % 2 == 0 => "true",
            Some(_) => "false",
            None => "⊥",
        };
        truth.lookup(label).expect("truth labels")
    })
    .expect("parity is monotone")
}

/// `g(0ⁿ1ᵏ0y) = 0ⁿ⁺¹y` for `k > 0`, and `⊥` (the empty prefix) when no
/// such split exists yet.
pub fn drop_ones_map(strings: &BasisRef) -> ApproxMap {
    ApproxMap::from_fn(strings, strings, |t| {
        let s = strings.label(t);
        let s = if s == "ε" { String::new() } else { s };
        let n = s.find('1');
        let out = n.and_then(|n| {
            let rest = &s[n..];
            let k = rest.find('0')?;
            Some(format!("{}{}", "0".repeat(n + 1), &rest[k + 1..]))
        });
        match out {
            Some(o) if !o.is_empty() => strings.lookup(&o).expect("output is no longer than input"),
            _ => strings.bottom(),
        }
    })
    .expect("g is monotone")
}

/// Partial strings `σ⊥` and total strings `σ` with `|σ| ≤ max_len`.
pub fn stream_basis(max_len: usize) -> FiniteBasis {
    let mut streams = Vec::new();
    for n in 0..=max_len {
        for total in [false, true] {
            for code in 0..1usize << n {
                let bits = (0..n).map(|k| code >> (n - 1 - k) & 1 == 1).collect();
                streams.push(Stream { bits, total });
            }
        }
    }
    let labels = streams.iter().map(|s| s.to_string()).collect();
    FiniteBasis::from_order(&format!("C{max_len}"), labels, |i, j| {
        streams[i].leq(&streams[j])
    })
    .expect("streams are finitary")
}

/// The largest element of a truncated stream basis below `s`.
pub fn truncate_stream(s: &Stream, max_len: usize) -> Stream {
    if s.bits.len() <= max_len {
        s.clone()
    } else {
        Stream {
            bits: s.bits[..max_len].to_vec(),
            total: false,
        }
    }
}

/// Lifts a stream function to a map on a truncated stream basis.
pub fn stream_map<F>(basis: &BasisRef, max_len: usize, f: F) -> ApproxMap
where
    F: Fn(&Stream) -> Stream,
{
    ApproxMap::from_fn(basis, basis, |t| {
        let s = Stream::parse(&basis.label(t)).expect("stream label");
        let out = truncate_stream(&f(&s), max_len);
        basis
            .lookup(&out.to_string())
            .expect("truncated output is a token")
    })
    .expect("stream function is monotone")
}

pub fn shared(b: FiniteBasis) -> BasisRef {
    Arc::new(b)
}

/// Looks up a label that is known to exist.
pub fn tok(b: &BasisRef, label: &str) -> Token {
    b.lookup(label)
        .unwrap_or_else(|| panic!("no element `{label}` in {}", b.name()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::{Basis, BasisExt};
    use crate::ideal::Ideal;

    #[test]
    fn small_basis_counts() {
        let counts: Vec<usize> = (1..=5).map(|n| small_bases(n).len()).collect();
        // 1, 1, 2, 4 new bases at sizes 1..4: posets with bottom whose
        // remaining elements form a finitary order.
        assert_eq!(counts[0], 1);
        assert_eq!(counts[1], 2);
        assert_eq!(counts[2], 4);
        assert!(counts[3] > counts[2] && counts[4] > counts[3]);
    }

    #[test]
    fn interval_lubs() {
        let b = intervals(12);
        let t = |l: &str| b.lookup(l).unwrap();
        assert_eq!(b.label(b.lub(&[t("(2,6)"), t("(4,8)")]).unwrap()), "(4,6)");
        assert!(!b.consistent(&[t("(2,6)"), t("(7,12)")]));
        assert!(b.leq(t("(1,10)"), t("(2,6)")));
        assert_eq!(b.label(b.bottom()), "(0,12)");
    }

    #[test]
    fn parity_values() {
        let s = shared(prefix_strings(5));
        let tv = shared(truth());
        let p = parity_map(&s, &tv);
        let at = |x: &str| {
            p.apply(&Ideal::principal(&s, tok(&s, x)))
                .unwrap()
                .generator()
        };
        assert_eq!(tv.label(at("001")), "true");
        assert_eq!(tv.label(at("0001")), "false");
        assert_eq!(tv.label(at("00")), "⊥");
        assert_eq!(tv.label(at("1")), "true");
    }

    #[test]
    fn drop_ones() {
        let s = shared(prefix_strings(5));
        let g = drop_ones_map(&s);
        let at = |x: &str| s.label(g.image_token(tok(&s, x)));
        assert_eq!(at("0110"), "00");
        assert_eq!(at("011"), "ε");
        assert_eq!(at("10"), "0");
        assert_eq!(at("11101"), "01");
    }

    #[test]
    fn stream_basis_sizes() {
        let c = stream_basis(2);
        assert_eq!(c.len(), 14);
        assert_eq!(c.label(c.bottom()), "⊥");
        let cr = shared(stream_basis(3));
        let succ0 = stream_map(&cr, 3, |s| s.prepend("0"));
        assert_eq!(cr.label(succ0.image_token(tok(&cr, "011"))), "001⊥");
    }
}
