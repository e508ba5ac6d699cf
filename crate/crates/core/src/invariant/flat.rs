//! Nontriviality certificates for flat knots.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use super::affine_index_polynomial;
use crate::error::{Error, Result};
use crate::gauss_code::{resolutions, FlatCode, FlatPassage, FlatRole, SignedGaussCode};
use crate::polynomial::LaurentPolynomial;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Witness {
    /// A resolution whose polynomial vanishes.
    ZeroResolution(SignedGaussCode),
    /// Every resolution with its (nonzero) polynomial, in resolution order.
    Polynomials(Vec<(SignedGaussCode, LaurentPolynomial)>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FlatCertificate {
    pub certified: bool,
    pub witness: Witness,
}

/// Certified iff no resolution of `flat` has zero polynomial. The witness is
/// the first zero resolution in [`resolutions`] order.
pub fn flat_nontriviality_certificate(flat: &FlatCode) -> Result<FlatCertificate> {
    if !flat.is_knot() {
        return Err(Error::NotAKnot(flat.num_components()));
    }
    let polys: Vec<(SignedGaussCode, LaurentPolynomial)> = resolutions(flat)
        .into_par_iter()
        .map(|r| {
            let p = affine_index_polynomial(&r)?;
            Ok((r, p))
        })
        .collect::<Result<_>>()?;
    Ok(match polys.iter().find(|(_, p)| p.is_zero()) {
        Some((r, _)) => FlatCertificate {
            certified: false,
            witness: Witness::ZeroResolution(r.clone()),
        },
        None => FlatCertificate {
            certified: true,
            witness: Witness::Polynomials(polys),
        },
    })
}

/// Every one-component flat code with at most `max_crossings` crossings, up
/// to canonical form, sorted.
pub fn enumerate_flat_knots(max_crossings: usize) -> Vec<FlatCode> {
    let mut seen = BTreeSet::new();
    for n in 0..=max_crossings {
        let mut word = Vec::with_capacity(2 * n);
        let mut words = Vec::new();
        first_appearance_words(n, &mut word, &mut vec![0; n], 0, &mut words);
        for w in words {
            for roles in 0u64..1 << n {
                let mut first = vec![true; n];
                let comp: Vec<FlatPassage> = w
                    .iter()
                    .map(|&id| {
                        let bit = roles >> id & 1 == 1;
                        let is_first = std::mem::replace(&mut first[id], false);
                        let role = if bit == is_first {
                            FlatRole::L
                        } else {
                            FlatRole::R
                        };
                        FlatPassage::new(role, id as u32 + 1)
                    })
                    .collect();
                seen.insert(FlatCode::from_valid(vec![comp]).canonicalize());
            }
        }
    }
    seen.into_iter().collect()
}

/// Words of length `2n` using each of `0..n` exactly twice, with ids
/// introduced in increasing order.
fn first_appearance_words(
    n: usize,
    word: &mut Vec<usize>,
    count: &mut Vec<u8>,
    introduced: usize,
    out: &mut Vec<Vec<usize>>,
) {
    if word.len() == 2 * n {
        out.push(word.clone());
        return;
    }
    for id in 0..introduced {
        if count[id] == 1 {
            count[id] = 2;
            word.push(id);
            first_appearance_words(n, word, count, introduced, out);
            word.pop();
            count[id] = 1;
        }
    }
    if introduced < n {
        count[introduced] = 1;
        word.push(introduced);
        first_appearance_words(n, word, count, introduced + 1, out);
        word.pop();
        count[introduced] = 0;
    }
}
