//! Composite bases: products, separated sums, function spaces and the
//! recursive trees, plus effective presentations of each.

mod effective;
mod funspace;
mod powerset;
mod product;
mod rectree;
mod stream;
mod sum;

pub use effective::{
    enum_funspace, enum_product, enum_sum, FunSpacePresentation, ProductPresentation,
    SumPresentation,
};
pub use funspace::{FunSpaceBasis, DEFAULT_FUNSPACE_LIMIT};
pub use powerset::{powerset_decode, powerset_encode, PowersetPresentation};
pub use product::ProductBasis;
pub use rectree::RecTreeBasis;
pub use stream::{Stream, StreamPresentation};
pub use sum::{sum_basis, SumBasis, SumMaps, Tagged};

/// The diagonal pairing `(n+m)(n+m+1)/2 + m`.
pub fn pairing(n: usize, m: usize) -> usize {
    (n + m) * (n + m + 1) / 2 + m
}

pub fn unpair(k: usize) -> (usize, usize) {
    // Largest w with w(w+1)/2 ≤ k.
    let mut w = (((8 * k + 1) as f64).sqrt() as usize).saturating_sub(1) / 2;
    while (w + 1) * (w + 2) / 2 <= k {
        w += 1;
    }
    while w * (w + 1) / 2 > k {
        w -= 1;
    }
    let m = k - w * (w + 1) / 2;
    (w - m, m)
}
