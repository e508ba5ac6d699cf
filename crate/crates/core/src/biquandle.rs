//! Finite flat biquandles over `Z/N`, their axioms, affine families and
//! arc colorings of flat diagrams.
//!
//! A coloring assigns an element to every arc. At each crossing, with `a`
//! entering on the R-passage and `b` on the L-passage, the R-passage leaves
//! with `a # b` and the L-passage with `b * a`.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::coloring::ArcColoring;
use crate::diagram_ops::writhe;
use crate::error::{Error, Result};
use crate::gauss_code::{forget, FlatCode, FlatRole, Pos, SignedGaussCode};

pub type BiquandleColoring = ArcColoring<usize>;

/// Operation tables over `{0, .., N-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteFlatBiquandle {
    n: usize,
    star: Vec<usize>,
    sharp: Vec<usize>,
}

impl FiniteFlatBiquandle {
    /// Builds from row-major tables, `star[a][b] = a * b`.
    pub fn from_tables(star: Vec<Vec<usize>>, sharp: Vec<Vec<usize>>) -> Result<Self> {
        let n = star.len();
        if n == 0 {
            return Err(Error::Format("empty carrier".into()));
        }
        for (name, t) in [("star", &star), ("sharp", &sharp)] {
            if t.len() != n || t.iter().any(|row| row.len() != n) {
                return Err(Error::Format(format!("{name} table is not {n}x{n}")));
            }
            if t.iter().flatten().any(|&x| x >= n) {
                return Err(Error::Format(format!("{name} table entry out of range")));
            }
        }
        Ok(FiniteFlatBiquandle {
            n,
            star: star.into_iter().flatten().collect(),
            sharp: sharp.into_iter().flatten().collect(),
        })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    /// `a * b`
    pub fn star(&self, a: usize, b: usize) -> usize {
        self.star[a * self.n + b]
    }

    /// `a # b`
    pub fn sharp(&self, a: usize, b: usize) -> usize {
        self.sharp[a * self.n + b]
    }

    pub fn star_rows(&self) -> Vec<Vec<usize>> {
        self.star.chunks(self.n).map(<[usize]>::to_vec).collect()
    }

    pub fn sharp_rows(&self) -> Vec<Vec<usize>> {
        self.sharp.chunks(self.n).map(<[usize]>::to_vec).collect()
    }
}

impl fmt::Display for FiniteFlatBiquandle {
    /// Table file format: `N`, the star rows, a blank line, the sharp rows.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.n)?;
        let row = |r: &[usize]| {
            r.iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(" ")
        };
        for r in self.star.chunks(self.n) {
            writeln!(f, "{}", row(r))?;
        }
        writeln!(f)?;
        for r in self.sharp.chunks(self.n) {
            writeln!(f, "{}", row(r))?;
        }
        Ok(())
    }
}

fn parse_ints(line: &str) -> Result<Vec<i64>> {
    line.split_whitespace()
        .map(|t| {
            t.parse::<i64>()
                .map_err(|_| Error::Format(format!("not an integer: `{t}`")))
        })
        .collect()
}

impl FromStr for FiniteFlatBiquandle {
    type Err = Error;

    /// Reads the table file format. A single line `N r s k p q l` is also
    /// accepted and expanded through [`make_affine`].
    fn from_str(s: &str) -> Result<Self> {
        let lines: Vec<&str> = s.lines().map(str::trim).filter(|l| !l.is_empty()).collect();
        let Some(first) = lines.first() else {
            return Err(Error::Format("empty biquandle description".into()));
        };
        if parse_ints(first)?.len() == 7 && lines.len() == 1 {
            return Ok(make_affine(&first.parse()?));
        }
        let n = match parse_ints(first)?[..] {
            [n] if n > 0 => n as usize,
            _ => return Err(Error::Format("first line must be the carrier size".into())),
        };
        if lines.len() != 2 * n + 1 {
            return Err(Error::Format(format!(
                "expected {} table rows, found {}",
                2 * n,
                lines.len() - 1
            )));
        }
        let rows = lines[1..]
            .iter()
            .map(|l| {
                parse_ints(l)?
                    .into_iter()
                    .map(|x| {
                        usize::try_from(x).map_err(|_| Error::Format(format!("negative entry {x}")))
                    })
                    .collect::<Result<Vec<usize>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let (star, sharp) = rows.split_at(n);
        FiniteFlatBiquandle::from_tables(star.to_vec(), sharp.to_vec())
    }
}

/// `a * b = r a + s b + k`, `a # b = p a + q b + l` over `Z/N`. Values are
/// kept reduced to `0..N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct AffineParams {
    pub n: usize,
    pub r: usize,
    pub s: usize,
    pub k: usize,
    pub p: usize,
    pub q: usize,
    pub l: usize,
}

fn reduce(x: i64, n: usize) -> usize {
    x.rem_euclid(n as i64) as usize
}

impl AffineParams {
    /// Reduces every coefficient modulo `n`.
    pub fn new(n: usize, [r, s, k, p, q, l]: [i64; 6]) -> Self {
        assert!(n > 0, "carrier must be nonempty");
        let m = |x| reduce(x, n);
        AffineParams {
            n,
            r: m(r),
            s: m(s),
            k: m(k),
            p: m(p),
            q: m(q),
            l: m(l),
        }
    }
}

impl fmt::Display for AffineParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let AffineParams {
            n,
            r,
            s,
            k,
            p,
            q,
            l,
        } = self;
        write!(f, "{n} {r} {s} {k} {p} {q} {l}")
    }
}

impl FromStr for AffineParams {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match parse_ints(s)?[..] {
            [n, r, s, k, p, q, l] if n > 0 => Ok(AffineParams::new(n as usize, [r, s, k, p, q, l])),
            _ => Err(Error::Format("expected `N r s k p q l` with N > 0".into())),
        }
    }
}

pub fn make_affine(params: &AffineParams) -> FiniteFlatBiquandle {
    let AffineParams {
        n,
        r,
        s,
        k,
        p,
        q,
        l,
    } = *params;
    let mut star = Vec::with_capacity(n * n);
    let mut sharp = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            star.push((r * a + s * b + k) % n);
            sharp.push((p * a + q * b + l) % n);
        }
    }
    FiniteFlatBiquandle { n, star, sharp }
}

/// Inverse of `a` modulo `n`, if it is a unit.
pub fn inverse_mod(a: i64, n: usize) -> Option<usize> {
    let a = reduce(a, n);
    (0..n).find(|&x| (a * x) % n == 1 % n)
}

pub fn units(n: usize) -> Vec<usize> {
    (0..n)
        .filter(|&a| inverse_mod(a as i64, n).is_some())
        .collect()
}

fn require_unit(value: i64, n: usize) -> Result<usize> {
    inverse_mod(value, n).ok_or(Error::NonUnit { value, modulus: n })
}

/// `a * b = alpha a + k`, `a # b = alpha^-1 a - alpha^-1 k`.
pub fn theorem_form(n: usize, alpha: i64, k: i64) -> Result<AffineParams> {
    let inv = require_unit(alpha, n)? as i64;
    Ok(AffineParams::new(n, [alpha, 0, k, inv, 0, -inv * k]))
}

/// `a * b = (1-q) a - q b + k`, `a # b = (1+q) a + q b - k`.
pub fn basic_preflat_params(n: usize, q: i64, k: i64) -> Result<AffineParams> {
    require_unit(1 - q, n)?;
    require_unit(1 + q, n)?;
    Ok(AffineParams::new(n, [1 - q, -q, k, 1 + q, q, -k]))
}

pub fn basic_preflat(n: usize, q: i64, k: i64) -> Result<FiniteFlatBiquandle> {
    Ok(make_affine(&basic_preflat_params(n, q, k)?))
}

/// Elements witnessing a failed axiom.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomViolation {
    pub elements: Vec<usize>,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub axiom1: Option<AxiomViolation>,
    pub axiom2: Option<AxiomViolation>,
    pub axiom3: Option<AxiomViolation>,
}

impl AxiomReport {
    pub fn is_preflat(&self) -> bool {
        self.axiom1.is_none() && self.axiom2.is_none()
    }

    pub fn is_flat_biquandle(&self) -> bool {
        self.is_preflat() && self.axiom3.is_none()
    }
}

fn violation(elements: Vec<usize>, reason: &str) -> Option<AxiomViolation> {
    Some(AxiomViolation {
        elements,
        reason: reason.into(),
    })
}

fn axiom1(b: &FiniteFlatBiquandle) -> Option<AxiomViolation> {
    let n = b.n;
    for a in 0..n {
        let xs = (0..n)
            .filter(|&x| b.sharp(a, x) == x && b.star(x, a) == a)
            .count();
        if xs != 1 {
            return violation(vec![a], &format!("{xs} solutions x of a#x = x, x*a = a"));
        }
        let ys = (0..n)
            .filter(|&y| b.star(a, y) == y && b.sharp(y, a) == a)
            .count();
        if ys != 1 {
            return violation(vec![a], &format!("{ys} solutions y of a*y = y, y#a = a"));
        }
    }
    None
}

fn axiom2(b: &FiniteFlatBiquandle) -> Option<AxiomViolation> {
    let n = b.n;
    for a in 0..n {
        for c in 0..n {
            if b.star(b.sharp(a, c), b.star(c, a)) != a {
                return violation(vec![a, c], "(a#b)*(b*a) != a");
            }
            if b.sharp(b.star(c, a), b.sharp(a, c)) != c {
                return violation(vec![a, c], "(b*a)#(a#b) != b");
            }
            // y is forced by x, so counting x counts the pairs
            let pairs = (0..n)
                .filter(|&x| {
                    let y = b.sharp(a, x);
                    x == b.sharp(c, y) && c == b.star(x, a) && a == b.star(y, c)
                })
                .count();
            if pairs != 1 {
                return violation(
                    vec![a, c],
                    &format!("{pairs} pairs (x, y) solve the reverse move"),
                );
            }
        }
    }
    None
}

fn axiom3(bq: &FiniteFlatBiquandle) -> Option<AxiomViolation> {
    let n = bq.n;
    let (st, sh) = (|x, y| bq.star(x, y), |x, y| bq.sharp(x, y));
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if sh(sh(a, b), c) != sh(sh(a, st(c, b)), sh(b, c)) {
                    return violation(vec![a, b, c], "(a#b)#c != (a#(c*b))#(b#c)");
                }
                if st(st(c, b), a) != st(st(c, sh(a, b)), st(b, a)) {
                    return violation(vec![a, b, c], "(c*b)*a != (c*(a#b))*(b*a)");
                }
                if st(sh(b, c), sh(a, st(c, b))) != sh(st(b, a), st(c, sh(a, b))) {
                    return violation(vec![a, b, c], "(b#c)*(a#(c*b)) != (b*a)#(c*(a#b))");
                }
            }
        }
    }
    None
}

pub fn check_axioms(b: &FiniteFlatBiquandle) -> AxiomReport {
    AxiomReport {
        axiom1: axiom1(b),
        axiom2: axiom2(b),
        axiom3: axiom3(b),
    }
}

/// Every affine parameter tuple over `Z/N` whose tables satisfy all three
/// axioms, in lexicographic `(r, s, k, p, q, l)` order.
pub fn search_affine(n: usize) -> Vec<AffineParams> {
    assert!(n >= 1, "carrier must be nonempty");
    (0..n)
        .into_par_iter()
        .flat_map_iter(|r| {
            let mut found = Vec::new();
            for s in 0..n {
                for k in 0..n {
                    for p in 0..n {
                        for q in 0..n {
                            for l in 0..n {
                                let params = AffineParams {
                                    n,
                                    r,
                                    s,
                                    k,
                                    p,
                                    q,
                                    l,
                                };
                                if check_axioms(&make_affine(&params)).is_flat_biquandle() {
                                    found.push(params);
                                }
                            }
                        }
                    }
                }
            }
            found
        })
        .collect()
}

/// `{r = p^-1, s = q = 0, l = -p k : p a unit}`, sorted like
/// [`search_affine`].
pub fn closed_form(n: usize) -> Vec<AffineParams> {
    let mut out: Vec<AffineParams> = units(n)
        .into_iter()
        .flat_map(|p| {
            let inv = inverse_mod(p as i64, n).expect("unit") as i64;
            (0..n as i64)
                .map(move |k| AffineParams::new(n, [inv, 0, k, p as i64, 0, -(p as i64) * k]))
        })
        .collect();
    out.sort();
    out
}

/// First `(a, b)` (with `b` in the outer loop) breaking
/// `a + b = b*a + a#b`, i.e. `W+ + W- != 0`.
pub fn weight_condition(b: &FiniteFlatBiquandle) -> Option<(usize, usize)> {
    let n = b.n;
    (0..n)
        .flat_map(|y| (0..n).map(move |x| (x, y)))
        .find(|&(x, y)| (x + y) % n != (b.star(y, x) + b.sharp(x, y)) % n)
}

/// Per crossing, the positions of the R- and L-passages and the global
/// indices of the arcs entering and leaving them.
struct Frame {
    arcs: usize,
    /// global index of arc (component, index)
    offsets: Vec<usize>,
    /// (R in, L in, R out, L out)
    crossings: Vec<[usize; 4]>,
}

impl Frame {
    fn new(flat: &FlatCode) -> Self {
        let mut offsets = Vec::with_capacity(flat.num_components());
        let mut arcs = 0;
        for comp in flat.components() {
            offsets.push(arcs);
            arcs += comp.len().max(1);
        }
        let arc = |p: Pos| offsets[p.component] + p.index;
        let incoming = |p: Pos| arc(flat.prev_pos(p));
        let crossings = flat
            .locate()
            .values()
            .map(|&[x, y]| {
                let (r, l) = if flat.passage(x).role == FlatRole::R {
                    (x, y)
                } else {
                    (y, x)
                };
                [incoming(r), incoming(l), arc(r), arc(l)]
            })
            .collect();
        Frame {
            arcs,
            offsets,
            crossings,
        }
    }

    fn satisfied(&self, b: &FiniteFlatBiquandle, labels: &[usize]) -> bool {
        self.crossings.iter().all(|&[ri, li, ro, lo]| {
            labels[ro] == b.sharp(labels[ri], labels[li])
                && labels[lo] == b.star(labels[li], labels[ri])
        })
    }

    fn split(&self, flat: &FlatCode, labels: &[usize]) -> BiquandleColoring {
        ArcColoring::new(
            flat.components()
                .iter()
                .zip(&self.offsets)
                .map(|(comp, &o)| labels[o..o + comp.len().max(1)].to_vec())
                .collect(),
        )
    }
}

/// Largest brute-force search space accepted.
pub const BRUTE_FORCE_LIMIT: u128 = 50_000_000;

/// All colorings by exhaustive search over `N^arcs` assignments, sorted.
pub fn enumerate_colorings(
    flat: &FlatCode,
    b: &FiniteFlatBiquandle,
) -> Result<Vec<BiquandleColoring>> {
    let frame = Frame::new(flat);
    let n = b.n;
    let total = (n as u128)
        .checked_pow(frame.arcs as u32)
        .filter(|&t| t <= BRUTE_FORCE_LIMIT);
    let Some(total) = total else {
        return Err(Error::Precondition(format!(
            "{n}^{} assignments is too many",
            frame.arcs
        )));
    };
    let found: Vec<Vec<usize>> = (0..total as u64)
        .into_par_iter()
        .filter_map(|mut idx| {
            let mut labels = vec![0; frame.arcs];
            for slot in labels.iter_mut().rev() {
                *slot = (idx % n as u64) as usize;
                idx /= n as u64;
            }
            frame.satisfied(b, &labels).then_some(labels)
        })
        .collect();
    Ok(found.iter().map(|l| frame.split(flat, l)).collect())
}

/// All colorings agreeing with `pins`, by propagation and backtracking.
/// Agrees with [`enumerate_colorings`]; results are sorted.
pub fn solve_colorings(
    flat: &FlatCode,
    b: &FiniteFlatBiquandle,
    pins: &[(Pos, usize)],
) -> Result<Vec<BiquandleColoring>> {
    let frame = Frame::new(flat);
    let mut labels = vec![None; frame.arcs];
    for &(p, v) in pins {
        let len = flat.components().get(p.component).map(|c| c.len().max(1));
        if len.is_none_or(|l| p.index >= l) || v >= b.n {
            return Err(Error::Precondition(format!("pin {p}={v} is out of range")));
        }
        let slot = &mut labels[frame.offsets[p.component] + p.index];
        if slot.is_some_and(|old| old != v) {
            return Ok(Vec::new());
        }
        *slot = Some(v);
    }
    let mut out = Vec::new();
    search(&frame, b, labels, &mut out);
    out.sort();
    Ok(out.iter().map(|l| frame.split(flat, l)).collect())
}

fn search(
    frame: &Frame,
    b: &FiniteFlatBiquandle,
    mut labels: Vec<Option<usize>>,
    out: &mut Vec<Vec<usize>>,
) {
    // forward propagation to a fixpoint
    loop {
        let mut changed = false;
        for &[ri, li, ro, lo] in &frame.crossings {
            let (Some(a), Some(c)) = (labels[ri], labels[li]) else {
                continue;
            };
            for (slot, v) in [(ro, b.sharp(a, c)), (lo, b.star(c, a))] {
                match labels[slot] {
                    Some(old) if old != v => return,
                    Some(_) => {}
                    None => {
                        labels[slot] = Some(v);
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    // branch on an arc that completes a crossing's inputs if possible
    let pick = frame
        .crossings
        .iter()
        .find_map(|&[ri, li, ..]| match (labels[ri], labels[li]) {
            (Some(_), None) => Some(li),
            (None, Some(_)) => Some(ri),
            _ => None,
        })
        .or_else(|| labels.iter().position(Option::is_none));
    match pick {
        None => out.push(labels.into_iter().map(|l| l.expect("assigned")).collect()),
        Some(arc) => {
            for v in 0..b.n {
                let mut next = labels.clone();
                next[arc] = Some(v);
                search(frame, b, next, out);
            }
        }
    }
}

/// True iff `coloring` satisfies the crossing relations of `flat`.
pub fn verify_biquandle_coloring(
    flat: &FlatCode,
    b: &FiniteFlatBiquandle,
    coloring: &BiquandleColoring,
) -> Result<bool> {
    coloring.check_shape(flat)?;
    let frame = Frame::new(flat);
    let labels: Vec<usize> = coloring.components().iter().flatten().copied().collect();
    Ok(labels.iter().all(|&x| x < b.n) && frame.satisfied(b, &labels))
}

/// `sum_c sgn(c) t^W(c) - wr t^0` with exponents in `Z/N`, as a dense
/// coefficient vector. `W+ = a - b*a`, `W- = b - a#b` for `a` entering on
/// the R-passage and `b` on the L-passage.
pub fn doodle_pre_invariant(
    code: &SignedGaussCode,
    b: &FiniteFlatBiquandle,
    coloring: &BiquandleColoring,
) -> Result<Vec<i64>> {
    let flat = forget(code);
    if !verify_biquandle_coloring(&flat, b, coloring)? {
        return Err(Error::InvalidColoring);
    }
    let n = b.n;
    let frame = Frame::new(&flat);
    let labels: Vec<usize> = coloring.components().iter().flatten().copied().collect();
    let mut out = vec![0i64; n];
    for ((_, pos), &[ri, li, ..]) in code.locate().iter().zip(&frame.crossings) {
        let (a, c) = (labels[ri], labels[li]);
        let sign = code.passage(pos[0]).sign;
        let w = match sign {
            crate::gauss_code::Sign::Positive => (a + n - b.star(c, a)) % n,
            crate::gauss_code::Sign::Negative => (c + n - b.sharp(a, c)) % n,
        };
        out[w] += sign.value();
    }
    out[0] -= writhe(code);
    Ok(out)
}

/// [`doodle_pre_invariant`] summed over every coloring.
pub fn doodle_aggregate(code: &SignedGaussCode, b: &FiniteFlatBiquandle) -> Result<Vec<i64>> {
    let mut total = vec![0i64; b.n];
    for col in solve_colorings(&forget(code), b, &[])? {
        for (t, x) in total.iter_mut().zip(doodle_pre_invariant(code, b, &col)?) {
            *t += x;
        }
    }
    Ok(total)
}

/// Carries a coloring across a move: arcs listed in `arc_map` keep their
/// label and the rest is solved for. Fails unless the completion is unique.
pub fn transport_biquandle(
    before: &BiquandleColoring,
    after: &FlatCode,
    arc_map: &[Vec<Option<Pos>>],
    b: &FiniteFlatBiquandle,
) -> Result<BiquandleColoring> {
    let pins: Vec<(Pos, usize)> = arc_map
        .iter()
        .enumerate()
        .flat_map(|(c, m)| {
            m.iter().enumerate().filter_map(move |(i, src)| {
                src.map(|s| (Pos::new(c, i), before.label(s.component, s.index)))
            })
        })
        .collect();
    let mut sols = solve_colorings(after, b, &pins)?;
    match sols.len() {
        1 => Ok(sols.pop().expect("one solution")),
        k => Err(Error::Internal(format!(
            "transported coloring has {k} completions"
        ))),
    }
}
