use super::{Basis, BasisError, BasisExt, Token};

pub const DEFAULT_ISO_LIMIT: usize = 12;

/// Searches for an order isomorphism from `a` onto `b`.
///
/// Elements of `a` are assigned in label order and candidates in `b` are
/// tried in label order, so the first bijection found is the
/// lexicographically least by label. Bases of different size are never
/// isomorphic; otherwise the size guard applies.
pub fn find_isomorphism(
    a: &dyn Basis,
    b: &dyn Basis,
) -> Result<Option<Vec<(Token, Token)>>, BasisError> {
    find_isomorphism_with_limit(a, b, DEFAULT_ISO_LIMIT)
}

pub fn find_isomorphism_with_limit(
    a: &dyn Basis,
    b: &dyn Basis,
    limit: usize,
) -> Result<Option<Vec<(Token, Token)>>, BasisError> {
    let n = a.len();
    if n != b.len() {
        return Ok(None);
    }
    if n > limit {
        return Err(BasisError::TooLarge { size: n, limit });
    }
    let sig = |x: &dyn Basis, t: Token| {
        let ups = x.tokens().filter(|&y| x.leq(t, y)).count();
        let downs = x.tokens().filter(|&y| x.leq(y, t)).count();
        (ups, downs)
    };
    let mut order_a: Vec<Token> = a.tokens().collect();
    order_a.sort_by_key(|&t| a.label(t));
    let mut order_b: Vec<Token> = b.tokens().collect();
    order_b.sort_by_key(|&t| b.label(t));
    let sig_a: Vec<_> = a.tokens().map(|t| sig(a, t)).collect();
    let sig_b: Vec<_> = b.tokens().map(|t| sig(b, t)).collect();
    let mut used = vec![false; n];
    let mut assigned: Vec<(Token, Token)> = Vec::with_capacity(n);

    fn search(
        a: &dyn Basis,
        b: &dyn Basis,
        order_a: &[Token],
        order_b: &[Token],
        sig_a: &[(usize, usize)],
        sig_b: &[(usize, usize)],
        used: &mut [bool],
        assigned: &mut Vec<(Token, Token)>,
    ) -> bool {
        let depth = assigned.len();
        if depth == order_a.len() {
            return true;
        }
        let x = order_a[depth];
        for &y in order_b {
            if used[y.index()] || sig_a[x.index()] != sig_b[y.index()] {
                continue;
            }
            let fits = assigned
                .iter()
                .all(|&(p, q)| a.leq(p, x) == b.leq(q, y) && a.leq(x, p) == b.leq(y, q));
            if !fits {
                continue;
            }
            used[y.index()] = true;
            assigned.push((x, y));
            if search(a, b, order_a, order_b, sig_a, sig_b, used, assigned) {
                return true;
            }
            assigned.pop();
            used[y.index()] = false;
        }
        false
    }

    if search(
        a,
        b,
        &order_a,
        &order_b,
        &sig_a,
        &sig_b,
        &mut used,
        &mut assigned,
    ) {
        Ok(Some(assigned))
    } else {
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::FiniteBasis;
    use crate::fixtures;

    fn brute_force_exists(a: &dyn Basis, b: &dyn Basis) -> bool {
        fn permute(k: usize, perm: &mut Vec<usize>, a: &dyn Basis, b: &dyn Basis) -> bool {
            let n = perm.len();
            if k == n {
                return (0..n).all(|i| {
                    (0..n).all(|j| {
                        a.leq(Token::new(i), Token::new(j))
                            == b.leq(Token::new(perm[i]), Token::new(perm[j]))
                    })
                });
            }
            for i in k..n {
                perm.swap(k, i);
                if permute(k + 1, perm, a, b) {
                    return true;
                }
                perm.swap(k, i);
            }
            false
        }
        a.len() == b.len() && permute(0, &mut (0..a.len()).collect(), a, b)
    }

    #[test]
    fn identity_on_strings() {
        let b = fixtures::example_strings();
        let m = find_isomorphism(&b, &b).unwrap().unwrap();
        assert!(m.iter().all(|(x, y)| x == y));
    }

    #[test]
    fn swapped_digits() {
        let a = fixtures::example_strings();
        let b = a
            .relabeled("swapped", |l| {
                l.chars()
                    .map(|c| match c {
                        '0' => 'x',
                        '1' => '0',
                        c => c,
                    })
                    .map(|c| if c == 'x' { '1' } else { c })
                    .collect()
            })
            .unwrap();
        let m = find_isomorphism(&a, &b).unwrap().unwrap();
        for (x, y) in m {
            assert!(a.leq(a.bottom(), x));
            let lx = a.label(x);
            let ly = b.label(y);
            assert_eq!(lx.chars().count(), ly.chars().count());
        }
    }

    #[test]
    fn chain_is_not_a_vee() {
        let chain = fixtures::chain(3);
        let vee = fixtures::flat("vee", &["a", "b"]);
        assert_eq!(find_isomorphism(&chain, &vee).unwrap(), None);
        let two = fixtures::chain(2);
        assert_eq!(find_isomorphism(&two, &vee).unwrap(), None);
    }

    #[test]
    fn agrees_with_brute_force_on_small_orders() {
        let bases: Vec<FiniteBasis> = fixtures::small_bases(4);
        for a in &bases {
            for b in &bases {
                let found = find_isomorphism(a, b).unwrap();
                assert_eq!(found.is_some(), brute_force_exists(a, b));
                if let Some(m) = found {
                    for &(p, q) in &m {
                        for &(r, s) in &m {
                            assert_eq!(a.leq(p, r), b.leq(q, s));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn guard() {
        let big = fixtures::chain(13);
        assert!(matches!(
            find_isomorphism(&big, &big),
            Err(BasisError::TooLarge { .. })
        ));
    }
}
