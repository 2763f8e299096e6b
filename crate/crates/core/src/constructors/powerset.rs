use std::collections::BTreeSet;

use crate::basis::Presentation;

/// `E_n`: the set of bit positions set in `n`.
pub fn powerset_decode(n: u64) -> BTreeSet<u32> {
    (0..64).filter(|k| n >> k & 1 == 1).collect()
}

/// Inverse of [`powerset_decode`]. Elements must be below 64.
pub fn powerset_encode(s: &BTreeSet<u32>) -> u64 {
    s.iter().fold(0, |acc, &k| acc | 1u64 << k)
}

/// Finite subsets of the naturals presented by `n ↦ E_n`, ordered by
/// inclusion. Every pair is consistent and the lub is the union.
#[derive(Debug, Clone, Copy, Default)]
pub struct PowersetPresentation;

impl Presentation for PowersetPresentation {
    fn len(&self) -> Option<usize> {
        None
    }

    fn label(&self, i: usize) -> String {
        let items: Vec<String> = powerset_decode(i as u64)
            .iter()
            .map(|k| k.to_string())
            .collect();
        format!("{{{}}}", items.join(","))
    }

    fn leq(&self, i: usize, j: usize) -> bool {
        i & !j == 0
    }

    fn lub_index(&self, i: usize, j: usize) -> Option<usize> {
        Some(i | j)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decoding() {
        assert_eq!(powerset_decode(6), BTreeSet::from([1, 2]));
        assert!(powerset_decode(0).is_empty());
        for n in 0..1024 {
            assert_eq!(powerset_encode(&powerset_decode(n)), n);
        }
    }

    #[test]
    fn order_is_inclusion() {
        let p = PowersetPresentation;
        for n in 0..64usize {
            for m in 0..64usize {
                let sub = powerset_decode(n as u64).is_subset(&powerset_decode(m as u64));
                assert_eq!(p.leq(n, m), sub);
                let union: BTreeSet<u32> = powerset_decode(n as u64)
                    .union(&powerset_decode(m as u64))
                    .copied()
                    .collect();
                assert_eq!(p.lub_index(n, m), Some(powerset_encode(&union) as usize));
            }
        }
        assert_eq!(p.label(6), "{1,2}");
        assert_eq!(p.label(0), "{}");
    }
}
