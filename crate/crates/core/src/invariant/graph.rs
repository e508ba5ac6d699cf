//! Codes with singular (graphical) nodes and their polynomial.

use std::fmt;

use rayon::prelude::*;

use super::affine_index_polynomial;
use crate::error::{Error, Result};
use crate::gauss_code::{
    Code, FlatPassage, FlatRole, Passage, Role, Sign, SignedGaussCode, Token, Violation,
};
use crate::polynomial::LaurentPolynomial;

/// A passage through either a classical crossing or a singular node. Nodes
/// carry only a flat role and are written `L<id>` / `R<id>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SingularPassage {
    Classical(Passage),
    Node(FlatPassage),
}

impl Token for SingularPassage {
    fn crossing(&self) -> u32 {
        match self {
            SingularPassage::Classical(p) => p.crossing,
            SingularPassage::Node(p) => p.crossing,
        }
    }

    fn with_crossing(self, crossing: u32) -> Self {
        match self {
            SingularPassage::Classical(p) => SingularPassage::Classical(p.with_crossing(crossing)),
            SingularPassage::Node(p) => SingularPassage::Node(p.with_crossing(crossing)),
        }
    }

    fn parse_token(text: &str) -> std::result::Result<Self, String> {
        match text.chars().next() {
            Some('L' | 'R') => FlatPassage::parse_token(text).map(SingularPassage::Node),
            Some('O' | 'U') => Passage::parse_token(text).map(SingularPassage::Classical),
            _ => Err("expected `O`, `U`, `L` or `R`".into()),
        }
    }

    fn check_pair(crossing: u32, occ: &[Self], out: &mut Vec<Violation>) {
        match (occ[0], occ[1]) {
            (SingularPassage::Classical(a), SingularPassage::Classical(b)) => {
                Passage::check_pair(crossing, &[a, b], out)
            }
            (SingularPassage::Node(a), SingularPassage::Node(b)) => {
                FlatPassage::check_pair(crossing, &[a, b], out)
            }
            _ => out.push(Violation::MixedKinds { crossing }),
        }
    }
}

impl fmt::Display for SingularPassage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SingularPassage::Classical(p) => p.fmt(f),
            SingularPassage::Node(p) => p.fmt(f),
        }
    }
}

pub type SingularCode = Code<SingularPassage>;

impl SingularCode {
    /// Makes the listed crossings of `code` singular.
    pub fn from_signed(code: &SignedGaussCode, nodes: &[u32]) -> Result<SingularCode> {
        for &id in nodes {
            if !code.contains_crossing(id) {
                return Err(Error::UnknownCrossing(id));
            }
        }
        Ok(code.map_passages(|p| {
            if nodes.contains(&p.crossing) {
                SingularPassage::Node(FlatPassage::new(p.flat_role(), p.crossing))
            } else {
                SingularPassage::Classical(*p)
            }
        }))
    }

    /// Ids of singular nodes in increasing order.
    pub fn nodes(&self) -> Vec<u32> {
        let mut ids: Vec<u32> = self
            .components()
            .iter()
            .flatten()
            .filter_map(|p| match p {
                SingularPassage::Node(n) => Some(n.crossing),
                SingularPassage::Classical(_) => None,
            })
            .collect();
        ids.sort_unstable();
        ids.dedup();
        ids
    }

    /// Resolves node `id`: positive puts the R-passage over with sign `+`,
    /// negative puts the L-passage over with sign `-`.
    pub fn resolve_node(&self, id: u32, sign: Sign) -> SingularCode {
        self.map_passages(|p| match *p {
            SingularPassage::Node(n) if n.crossing == id => {
                let over = match sign {
                    Sign::Positive => FlatRole::R,
                    Sign::Negative => FlatRole::L,
                };
                let role = if n.role == over {
                    Role::Over
                } else {
                    Role::Under
                };
                SingularPassage::Classical(Passage::new(role, id, sign))
            }
            other => other,
        })
    }

    /// The signed code once no nodes remain.
    pub fn to_signed(&self) -> Option<SignedGaussCode> {
        let comps = self
            .components()
            .iter()
            .map(|comp| {
                comp.iter()
                    .map(|p| match p {
                        SingularPassage::Classical(c) => Some(*c),
                        SingularPassage::Node(_) => None,
                    })
                    .collect::<Option<Vec<_>>>()
            })
            .collect::<Option<Vec<_>>>()?;
        Some(SignedGaussCode::from_valid(comps))
    }

    /// Resolution in which bit `i` of `mask` makes the `i`-th node negative.
    pub fn expand(&self, mask: usize) -> SignedGaussCode {
        let mut g = self.clone();
        for (i, id) in self.nodes().into_iter().enumerate() {
            let sign = if mask >> i & 1 == 1 {
                Sign::Negative
            } else {
                Sign::Positive
            };
            g = g.resolve_node(id, sign);
        }
        g.to_signed().expect("all nodes resolved")
    }
}

/// `sum_mask (-1)^|mask| P(expand(mask))` over all `2^m` resolutions.
pub fn graph_polynomial(g: &SingularCode) -> Result<LaurentPolynomial> {
    if !g.is_knot() {
        return Err(Error::NotAKnot(g.num_components()));
    }
    let m = g.nodes().len();
    if m >= usize::BITS as usize - 1 {
        return Err(Error::Precondition(format!(
            "{m} singular nodes is too many"
        )));
    }
    (0usize..1 << m)
        .into_par_iter()
        .map(|mask| {
            let p = affine_index_polynomial(&g.expand(mask))?;
            Ok(if mask.count_ones() % 2 == 0 { p } else { -p })
        })
        .try_reduce(LaurentPolynomial::zero, |a, b| Ok(a + b))
}

/// The same polynomial by expanding nodes one at a time in `order`:
/// `P(G) = P(G+) - P(G-)`.
pub fn graph_polynomial_in_order(g: &SingularCode, order: &[u32]) -> Result<LaurentPolynomial> {
    let mut sorted = order.to_vec();
    sorted.sort_unstable();
    if sorted != g.nodes() {
        return Err(Error::Precondition(
            "order must list every singular node once".into(),
        ));
    }
    if !g.is_knot() {
        return Err(Error::NotAKnot(g.num_components()));
    }
    fn go(g: &SingularCode, order: &[u32]) -> Result<LaurentPolynomial> {
        match order.split_first() {
            None => affine_index_polynomial(&g.to_signed().expect("all nodes resolved")),
            Some((&id, rest)) => {
                let plus = go(&g.resolve_node(id, Sign::Positive), rest)?;
                let minus = go(&g.resolve_node(id, Sign::Negative), rest)?;
                Ok(plus - minus)
            }
        }
    }
    go(g, order)
}
