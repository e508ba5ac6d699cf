//! Oracles and generators shared by the integration tests. The oracles work
//! on raw passage lists and recompute everything from definitions, without
//! going through the library's coloring or weight code.

#![allow(dead_code)]

use std::collections::BTreeMap;

use affine_index::gauss_code::{parse_signed, FlatRole, Passage, Role, Sign};
use affine_index::FlatCode;
use affine_index::SignedGaussCode;
use rand::seq::SliceRandom;
use rand::Rng;

pub fn code(s: &str) -> SignedGaussCode {
    parse_signed(s).unwrap()
}

/// Knot passages as `(over, crossing, sign)`.
fn passages(code: &SignedGaussCode) -> Vec<(bool, u32, i64)> {
    assert!(code.is_knot());
    code.component(0)
        .iter()
        .map(|p| (p.role == Role::Over, p.crossing, p.sign.value()))
        .collect()
}

/// `lambda(arc i)`: walk forward from the arc following passage `i` and add
/// the sign of every crossing whose first occurrence on the way is an
/// over-passage.
pub fn lambda_oracle(code: &SignedGaussCode) -> Vec<i64> {
    let ps = passages(code);
    let n = ps.len();
    (0..n.max(1))
        .map(|i| {
            let mut seen = Vec::new();
            let mut total = 0;
            for step in 1..=n {
                let (over, c, s) = ps[(i + step) % n];
                if !seen.contains(&c) {
                    seen.push(c);
                    if over {
                        total += s;
                    }
                }
            }
            total
        })
        .collect()
}

/// Labels of a diagram by direct propagation: the closing arc of component
/// `c` (the one entering passage 0) gets `closing[c]`, and each passage adds
/// +1 (L) or -1 (R).
pub fn propagate_oracle(code: &SignedGaussCode, closing: &[i64]) -> Vec<Vec<i64>> {
    code.components()
        .iter()
        .zip(closing)
        .map(|(comp, &start)| {
            let mut label = start;
            let mut out: Vec<i64> = comp
                .iter()
                .map(|p| {
                    label += if is_r(p) { -1 } else { 1 };
                    label
                })
                .collect();
            if out.is_empty() {
                out.push(start);
            }
            out
        })
        .collect()
}

/// Over+ and Under- are R-passages.
fn is_r(p: &Passage) -> bool {
    (p.role == Role::Over) == (p.sign == Sign::Positive)
}

/// Weights `(crossing, sign, W)` from arc labels: with `a` entering the
/// R-passage and `b` the L-passage, `W = sgn (a - b - 1)`.
pub fn weights_from_labels(code: &SignedGaussCode, labels: &[Vec<i64>]) -> Vec<(u32, i64, i64)> {
    let mut by: BTreeMap<u32, (i64, Option<i64>, Option<i64>)> = BTreeMap::new();
    for (c, comp) in code.components().iter().enumerate() {
        let n = comp.len();
        for (i, p) in comp.iter().enumerate() {
            let incoming = labels[c][(i + n - 1) % n];
            let e = by.entry(p.crossing).or_insert((p.sign.value(), None, None));
            if is_r(p) {
                e.1 = Some(incoming);
            } else {
                e.2 = Some(incoming);
            }
        }
    }
    by.into_iter()
        .map(|(c, (s, a, b))| (c, s, s * (a.unwrap() - b.unwrap() - 1)))
        .collect()
}

/// Knot weights from [`lambda_oracle`].
pub fn weight_oracle(code: &SignedGaussCode) -> Vec<(u32, i64, i64)> {
    weights_from_labels(code, &[lambda_oracle(code)])
}

/// `sum sgn (t^W - 1)` over the given weights.
pub fn polynomial_of(weights: &[(u32, i64, i64)]) -> BTreeMap<i64, i64> {
    let mut p = BTreeMap::new();
    for &(_, s, w) in weights {
        *p.entry(w).or_insert(0) += s;
        *p.entry(0).or_insert(0) -= s;
    }
    p.retain(|_, c| *c != 0);
    p
}

/// Knot polynomial from [`weight_oracle`].
pub fn polynomial_oracle(code: &SignedGaussCode) -> BTreeMap<i64, i64> {
    polynomial_of(&weight_oracle(code))
}

/// Library polynomial in the oracle's representation.
pub fn as_map(p: &affine_index::LaurentPolynomial) -> BTreeMap<i64, i64> {
    use num_traits::ToPrimitive;
    p.terms().map(|(e, c)| (e, c.to_i64().unwrap())).collect()
}

/// Uniformly shuffled knot word on `n` crossings with random roles and signs.
pub fn random_knot(rng: &mut impl Rng, n: u32) -> SignedGaussCode {
    let mut slots: Vec<u32> = (1..=n).flat_map(|c| [c, c]).collect();
    slots.shuffle(rng);
    let signs: Vec<Sign> = (0..n)
        .map(|_| {
            if rng.gen() {
                Sign::Positive
            } else {
                Sign::Negative
            }
        })
        .collect();
    let over_first: Vec<bool> = (0..n).map(|_| rng.gen()).collect();
    let mut seen = vec![false; n as usize + 1];
    let comp = slots
        .into_iter()
        .map(|c| {
            let first = !seen[c as usize];
            seen[c as usize] = true;
            let role = if first == over_first[c as usize - 1] {
                Role::Over
            } else {
                Role::Under
            };
            Passage::new(role, c, signs[c as usize - 1])
        })
        .collect();
    SignedGaussCode::new(vec![comp]).unwrap()
}

/// Random knot code with 1 to `max` crossings.
pub fn random_small_knot(rng: &mut impl Rng, max: u32) -> SignedGaussCode {
    let n = rng.gen_range(1..=max);
    random_knot(rng, n)
}

/// Resolution of a flat code: bit `i` of `mask` makes the `i`-th crossing
/// (by increasing id) negative, so its L-passage goes over.
pub fn resolve_oracle(flat: &FlatCode, mask: usize) -> SignedGaussCode {
    if flat.num_crossings() == 0 {
        assert!(flat.is_knot());
        return SignedGaussCode::unknot();
    }
    let ids = flat.crossings();
    let text: Vec<String> = flat
        .components()
        .iter()
        .map(|comp| {
            comp.iter()
                .map(|p| {
                    let bit = ids.iter().position(|&c| c == p.crossing).unwrap();
                    let negative = mask >> bit & 1 == 1;
                    let over = (p.role == FlatRole::L) == negative;
                    let role = if over { 'O' } else { 'U' };
                    let sign = if negative { '-' } else { '+' };
                    format!("{role}{}{sign}", p.crossing)
                })
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect();
    code(&text.join(" ; "))
}

/// Number of biquandle colorings by trying all `n^arcs` labelings. At each
/// crossing the arc leaving the R-passage is `in(R) # in(L)` and the arc
/// leaving the L-passage is `in(L) * in(R)`.
pub fn count_colorings_oracle(
    flat: &FlatCode,
    n: usize,
    star: impl Fn(usize, usize) -> usize,
    sharp: impl Fn(usize, usize) -> usize,
) -> usize {
    let lens: Vec<usize> = flat.components().iter().map(|c| c.len().max(1)).collect();
    let offset: Vec<usize> = lens
        .iter()
        .scan(0, |acc, &l| {
            let o = *acc;
            *acc += l;
            Some(o)
        })
        .collect();
    let arcs: usize = lens.iter().sum();
    let mut crossings: BTreeMap<u32, [usize; 4]> = BTreeMap::new();
    for (c, comp) in flat.components().iter().enumerate() {
        for (i, p) in comp.iter().enumerate() {
            let out = offset[c] + i;
            let inc = offset[c] + (i + lens[c] - 1) % lens[c];
            let e = crossings.entry(p.crossing).or_insert([0; 4]);
            match p.role {
                FlatRole::R => (e[0], e[2]) = (inc, out),
                FlatRole::L => (e[1], e[3]) = (inc, out),
            }
        }
    }
    let total = n.pow(arcs as u32);
    (0..total)
        .filter(|&idx| {
            let labels: Vec<usize> = (0..arcs).map(|a| idx / n.pow(a as u32) % n).collect();
            crossings.values().all(|&[ri, li, ro, lo]| {
                labels[ro] == sharp(labels[ri], labels[li])
                    && labels[lo] == star(labels[li], labels[ri])
            })
        })
        .count()
}

/// Random code on `n` crossings split into `comps` nonempty components
/// (fewer if there are not enough passages).
pub fn random_code(rng: &mut impl Rng, n: u32, comps: usize) -> SignedGaussCode {
    let knot = random_knot(rng, n);
    let word = knot.component(0).to_vec();
    if word.len() < 2 || comps < 2 {
        return knot;
    }
    let mut cuts: Vec<usize> = (1..word.len()).collect();
    cuts.shuffle(rng);
    let mut cuts: Vec<usize> = cuts.into_iter().take(comps - 1).collect();
    cuts.sort_unstable();
    let mut out = Vec::new();
    let mut start = 0;
    for c in cuts.into_iter().chain([word.len()]) {
        out.push(word[start..c].to_vec());
        start = c;
    }
    SignedGaussCode::new(out).unwrap()
}
