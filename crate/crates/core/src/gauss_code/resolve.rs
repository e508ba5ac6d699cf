use std::collections::BTreeSet;

use super::{FlatCode, FlatPassage, FlatRole, Passage, Role, Sign, SignedGaussCode};

/// The underlying flat diagram.
pub fn forget(code: &SignedGaussCode) -> FlatCode {
    code.map_passages(|p| FlatPassage::new(p.flat_role(), p.crossing))
}

/// The signed code over `flat` in which the crossings in `negative` are
/// negative (their L-passage goes over) and all others positive (their
/// R-passage goes over).
pub fn resolve(flat: &FlatCode, negative: &BTreeSet<u32>) -> SignedGaussCode {
    flat.map_passages(|p| {
        let neg = negative.contains(&p.crossing);
        let (role, sign) = match (p.role, neg) {
            (FlatRole::R, false) => (Role::Over, Sign::Positive),
            (FlatRole::L, false) => (Role::Under, Sign::Positive),
            (FlatRole::L, true) => (Role::Over, Sign::Negative),
            (FlatRole::R, true) => (Role::Under, Sign::Negative),
        };
        Passage::new(role, p.crossing, sign)
    })
}

/// All `2^n` resolutions. Bit `i` of the enumeration index selects the
/// negative resolution of the `i`-th smallest crossing id.
pub fn resolutions(flat: &FlatCode) -> Vec<SignedGaussCode> {
    let ids = flat.crossings();
    assert!(
        ids.len() < usize::BITS as usize,
        "too many crossings to enumerate"
    );
    (0usize..1 << ids.len())
        .map(|mask| {
            let neg = ids
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &id)| id)
                .collect();
            resolve(flat, &neg)
        })
        .collect()
}
