//! Crossing weights, the Affine Index Polynomial and the invariants derived
//! from it.
//!
//! At a crossing let `a` be the label entering on the R-passage and `b` the
//! label entering on the L-passage. Then
//!
//! ```text
//! W+(c) = a - (b + 1)      W-(c) = b - (a - 1) = -W+(c)
//! W(c)  = W+(c) if sgn(c) = +1, W-(c) otherwise
//! P(t)  = sum_c sgn(c) (t^W(c) - 1)
//! ```

mod flat;
mod graph;

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::coloring::{
    colorability, lambda_coloring, propagate_coloring, verify_coloring, ChengColoring,
};
use crate::diagram_ops::switch_crossings;
use crate::error::{Error, Result};
use crate::gauss_code::{FlatRole, Role, Sign, SignedGaussCode};
use crate::polynomial::{factorial, LaurentPolynomial};

pub use flat::{enumerate_flat_knots, flat_nontriviality_certificate, FlatCertificate, Witness};
pub use graph::{graph_polynomial, graph_polynomial_in_order, SingularCode, SingularPassage};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CrossingWeight {
    pub crossing: u32,
    pub sign: Sign,
    pub w_plus: i64,
    pub w_minus: i64,
    /// `w_plus` at a positive crossing, `w_minus` at a negative one.
    pub weight: i64,
}

/// Weights of every crossing, ordered by crossing id.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeightTable {
    entries: Vec<CrossingWeight>,
}

impl WeightTable {
    pub fn entries(&self) -> &[CrossingWeight] {
        &self.entries
    }

    pub fn get(&self, crossing: u32) -> Option<&CrossingWeight> {
        self.entries.iter().find(|w| w.crossing == crossing)
    }

    /// `(sgn(c), W(c))` pairs.
    pub fn signed_weights(&self) -> Vec<(Sign, i64)> {
        self.entries.iter().map(|w| (w.sign, w.weight)).collect()
    }

    /// `sum_c sgn(c) (t^W(c) - 1)`.
    pub fn polynomial(&self) -> LaurentPolynomial {
        polynomial_from_weights(&self.signed_weights())
    }
}

pub fn polynomial_from_weights(weights: &[(Sign, i64)]) -> LaurentPolynomial {
    let mut p = LaurentPolynomial::zero();
    for &(s, w) in weights {
        p.add_term(w, BigInt::from(s.value()));
        p.add_term(0, BigInt::from(-s.value()));
    }
    p
}

/// Weights from a valid Cheng coloring. Both the flat `a`/`b` formula and
/// `λ(over-in) - λ(under-in) - sgn(c)` are evaluated and must agree.
pub fn crossing_weights(code: &SignedGaussCode, coloring: &ChengColoring) -> Result<WeightTable> {
    if !verify_coloring(code, coloring)? {
        return Err(Error::InvalidColoring);
    }
    let mut entries = Vec::with_capacity(code.num_crossings());
    for (id, positions) in code.locate() {
        let sign = code.passage(positions[0]).sign;
        let mut r_in = 0;
        let mut l_in = 0;
        let mut over_in = 0;
        let mut under_in = 0;
        for pos in positions {
            let p = code.passage(pos);
            let incoming = coloring.incoming(pos.component, pos.index);
            match p.flat_role() {
                FlatRole::R => r_in = incoming,
                FlatRole::L => l_in = incoming,
            }
            match p.role {
                Role::Over => over_in = incoming,
                Role::Under => under_in = incoming,
            }
        }
        let w_plus = r_in - (l_in + 1);
        let w_minus = l_in - (r_in - 1);
        let weight = match sign {
            Sign::Positive => w_plus,
            Sign::Negative => w_minus,
        };
        let direct = over_in - under_in - sign.value();
        if direct != weight {
            return Err(Error::Internal(format!(
                "weight routes disagree at crossing {id}: {weight} vs {direct}"
            )));
        }
        entries.push(CrossingWeight {
            crossing: id,
            sign,
            w_plus,
            w_minus,
            weight,
        });
    }
    Ok(WeightTable { entries })
}

/// Weights of a knot under its canonical λ labeling.
pub fn knot_weights(code: &SignedGaussCode) -> Result<WeightTable> {
    crossing_weights(code, &lambda_coloring(code)?)
}

/// The Affine Index Polynomial of a knot.
pub fn affine_index_polynomial(code: &SignedGaussCode) -> Result<LaurentPolynomial> {
    Ok(knot_weights(code)?.polynomial())
}

/// The polynomial of a colored diagram `(L, C)`.
pub fn link_pair_polynomial(
    code: &SignedGaussCode,
    coloring: &ChengColoring,
) -> Result<LaurentPolynomial> {
    Ok(crossing_weights(code, coloring)?.polynomial())
}

/// A crossing weight as an affine function of per-component offsets:
/// `constant + offset[plus_component] - offset[minus_component]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SymbolicWeight {
    pub crossing: u32,
    pub sign: Sign,
    pub constant: i64,
    pub plus_component: usize,
    pub minus_component: usize,
}

impl SymbolicWeight {
    pub fn evaluate(&self, offsets: &[i64]) -> i64 {
        self.constant + offsets[self.plus_component] - offsets[self.minus_component]
    }

    pub fn is_constant(&self) -> bool {
        self.plus_component == self.minus_component
    }
}

impl fmt::Display for SymbolicWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.constant)?;
        if !self.is_constant() {
            write!(
                f,
                " + off[{}] - off[{}]",
                self.plus_component, self.minus_component
            )?;
        }
        Ok(())
    }
}

/// The most general weights of a colorable diagram. The over strand's
/// component contributes `+offset`, the under strand's `-offset`.
pub fn symbolic_link_weights(code: &SignedGaussCode) -> Result<Vec<SymbolicWeight>> {
    let report = colorability(code);
    if !report.colorable {
        return Err(Error::Uncolorable {
            imbalances: report.imbalances,
        });
    }
    let base = propagate_coloring(code, &vec![0; code.num_components()])?;
    let table = crossing_weights(code, &base)?;
    let locations = code.locate();
    Ok(table
        .entries()
        .iter()
        .map(|w| {
            let [p, q] = locations[&w.crossing];
            let (over, under) = if code.passage(p).role == Role::Over {
                (p, q)
            } else {
                (q, p)
            };
            SymbolicWeight {
                crossing: w.crossing,
                sign: w.sign,
                constant: w.weight,
                plus_component: over.component,
                minus_component: under.component,
            }
        })
        .collect())
}

/// `v_n = (1/n!) sum_c sgn(c) W(c)^n`, exactly.
pub fn vassiliev_invariant(weights: &[(Sign, i64)], n: u32) -> BigRational {
    let numer: BigInt = weights
        .iter()
        .map(|&(s, w)| BigInt::from(s.value()) * num_traits::pow(BigInt::from(w), n as usize))
        .sum();
    BigRational::new(numer, factorial(n))
}

pub fn knot_vassiliev(code: &SignedGaussCode, n: u32) -> Result<BigRational> {
    Ok(vassiliev_invariant(
        &knot_weights(code)?.signed_weights(),
        n,
    ))
}

fn sign_at(code: &SignedGaussCode, id: u32) -> Result<Sign> {
    code.components()
        .iter()
        .flatten()
        .find(|p| p.crossing == id)
        .map(|p| p.sign)
        .ok_or(Error::UnknownCrossing(id))
}

/// `(K+, K-)`: the diagram with crossing `id` made positive and negative by
/// switching.
pub fn skein_pair(code: &SignedGaussCode, id: u32) -> Result<(SignedGaussCode, SignedGaussCode)> {
    let switched = switch_crossings(code, &[id])?;
    Ok(match sign_at(code, id)? {
        Sign::Positive => (code.clone(), switched),
        Sign::Negative => (switched, code.clone()),
    })
}

/// `P(K+) - P(K-)`, each side computed through the full pipeline.
pub fn skein_difference(code: &SignedGaussCode, id: u32) -> Result<LaurentPolynomial> {
    let (plus, minus) = skein_pair(code, id)?;
    Ok(affine_index_polynomial(&plus)? - affine_index_polynomial(&minus)?)
}

/// `t^W + t^-W - 2` with `W = W+(c)` in `K+`.
pub fn skein_prediction(code: &SignedGaussCode, id: u32) -> Result<LaurentPolynomial> {
    let (plus, _) = skein_pair(code, id)?;
    let w = knot_weights(&plus)?
        .get(id)
        .map(|w| w.w_plus)
        .ok_or(Error::UnknownCrossing(id))?;
    let mut p = LaurentPolynomial::constant(-2);
    p.add_term(w, 1.into());
    p.add_term(-w, 1.into());
    Ok(p)
}
