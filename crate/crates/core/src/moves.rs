//! Reidemeister moves on signed codes and a randomized invariance harness.
//!
//! Moves are the Gauss-diagram forms: an R1 chord has adjacent endpoints, an
//! R2 pair has adjacent over passages and adjacent under passages with
//! opposite signs, and R3 is the all-positive triangle
//! `(Oa Ob) .. (Ua Oc) .. (Ub Uc)` whose pairs are swapped in place.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::coloring::{propagate_coloring, verify_coloring, ArcColoring, ChengColoring};
use crate::error::{Error, Result};
use crate::gauss_code::{Passage, Pos, Role, Sign, SignedGaussCode};
use crate::invariant::link_pair_polynomial;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum MoveKind {
    R1Insert,
    R1Delete,
    R2Insert,
    R2Delete,
    R3,
}

impl MoveKind {
    pub const ALL: [MoveKind; 5] = [
        MoveKind::R1Insert,
        MoveKind::R1Delete,
        MoveKind::R2Insert,
        MoveKind::R2Delete,
        MoveKind::R3,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MoveKind::R1Insert => "R1_insert",
            MoveKind::R1Delete => "R1_delete",
            MoveKind::R2Insert => "R2_insert",
            MoveKind::R2Delete => "R2_delete",
            MoveKind::R3 => "R3",
        }
    }
}

/// How the under pair of an R2 move is ordered relative to the over pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum R2Variant {
    /// `Oa Ob .. Ua Ub`
    Coherent,
    /// `Oa Ob .. Ub Ua`
    Antiparallel,
}

impl fmt::Display for R2Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            R2Variant::Coherent => "coherent",
            R2Variant::Antiparallel => "antiparallel",
        })
    }
}

/// Insertion point: new passages go before `index` of `component`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Gap {
    pub component: usize,
    pub index: usize,
}

impl fmt::Display for Gap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.component, self.index)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum MoveSite {
    /// Inserts `O U` (or `U O` when `!over_first`) of a fresh crossing.
    R1Insert {
        gap: Gap,
        sign: Sign,
        over_first: bool,
    },
    /// Removes the passages at `first` and the position following it.
    R1Delete { first: Pos },
    /// Inserts fresh crossings `a` (sign `sign`) and `b` (opposite sign).
    /// When both gaps coincide `over_first` orders the two pairs.
    R2Insert {
        over_gap: Gap,
        under_gap: Gap,
        variant: R2Variant,
        sign: Sign,
        over_first: bool,
    },
    /// Removes the over pair starting at `over` and the under pair at `under`.
    R2Delete {
        over: Pos,
        under: Pos,
        variant: R2Variant,
    },
    /// Starts of the three pairs, in the order `(Oa Ob)`, `(Ua Oc)`,
    /// `(Ub Uc)`, or the swapped images `(Ob Oa)`, `(Oc Ua)`, `(Uc Ub)`.
    R3 { pairs: [Pos; 3] },
}

impl MoveSite {
    pub fn kind(&self) -> MoveKind {
        match self {
            MoveSite::R1Insert { .. } => MoveKind::R1Insert,
            MoveSite::R1Delete { .. } => MoveKind::R1Delete,
            MoveSite::R2Insert { .. } => MoveKind::R2Insert,
            MoveSite::R2Delete { .. } => MoveKind::R2Delete,
            MoveSite::R3 { .. } => MoveKind::R3,
        }
    }
}

impl fmt::Display for MoveSite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind().name())?;
        match self {
            MoveSite::R1Insert {
                gap,
                sign,
                over_first,
            } => {
                write!(f, " gap={gap} sign={sign} over_first={over_first}")
            }
            MoveSite::R1Delete { first } => write!(f, " at={first}"),
            MoveSite::R2Insert {
                over_gap,
                under_gap,
                variant,
                sign,
                over_first,
            } => write!(
                f,
                " over={over_gap} under={under_gap} {variant} sign={sign} over_first={over_first}"
            ),
            MoveSite::R2Delete {
                over,
                under,
                variant,
            } => {
                write!(f, " over={over} under={under} {variant}")
            }
            MoveSite::R3 { pairs } => write!(f, " pairs={},{},{}", pairs[0], pairs[1], pairs[2]),
        }
    }
}

fn gaps(code: &SignedGaussCode) -> Vec<Gap> {
    code.components()
        .iter()
        .enumerate()
        .flat_map(|(c, comp)| {
            (0..comp.len().max(1)).map(move |i| Gap {
                component: c,
                index: i,
            })
        })
        .collect()
}

fn positions(code: &SignedGaussCode) -> impl Iterator<Item = Pos> + '_ {
    code.components()
        .iter()
        .enumerate()
        .flat_map(|(c, comp)| (0..comp.len()).map(move |i| Pos::new(c, i)))
}

fn r1_delete_matches(code: &SignedGaussCode, first: Pos) -> bool {
    let next = code.next_pos(first);
    next != first && code.passage(first).crossing == code.passage(next).crossing
}

fn r2_delete_matches(code: &SignedGaussCode, over: Pos, under: Pos, variant: R2Variant) -> bool {
    let (o1, o2) = (code.passage(over), code.passage(code.next_pos(over)));
    let (u1, u2) = (code.passage(under), code.passage(code.next_pos(under)));
    let (ua, ub) = match variant {
        R2Variant::Coherent => (u1, u2),
        R2Variant::Antiparallel => (u2, u1),
    };
    o1.role == Role::Over
        && o2.role == Role::Over
        && ua.role == Role::Under
        && ub.role == Role::Under
        && o1.crossing != o2.crossing
        && ua.crossing == o1.crossing
        && ub.crossing == o2.crossing
        && o1.sign != o2.sign
}

/// Matches either the forward triangle or its swapped image.
fn r3_matches(code: &SignedGaussCode, pairs: [Pos; 3]) -> bool {
    let pair = |p: Pos| (code.passage(p), code.passage(code.next_pos(p)));
    let ((x1, x2), (y1, y2), (z1, z2)) = (pair(pairs[0]), pair(pairs[1]), pair(pairs[2]));
    let all = [x1, x2, y1, y2, z1, z2];
    if all.iter().any(|p| p.sign != Sign::Positive) {
        return false;
    }
    let is = |p: Passage, role: Role, id: u32| p.role == role && p.crossing == id;
    let distinct = |a: u32, b: u32, c: u32| a != b && b != c && a != c;
    let (a, b, c) = (x1.crossing, x2.crossing, y2.crossing);
    let forward = distinct(a, b, c)
        && is(x1, Role::Over, a)
        && is(x2, Role::Over, b)
        && is(y1, Role::Under, a)
        && is(y2, Role::Over, c)
        && is(z1, Role::Under, b)
        && is(z2, Role::Under, c);
    let (b, a, c) = (x1.crossing, x2.crossing, y1.crossing);
    let backward = distinct(a, b, c)
        && is(x1, Role::Over, b)
        && is(x2, Role::Over, a)
        && is(y1, Role::Over, c)
        && is(y2, Role::Under, a)
        && is(z1, Role::Under, c)
        && is(z2, Role::Under, b);
    forward || backward
}

fn dedup_sites(sites: Vec<(Vec<Pos>, MoveSite)>) -> Vec<MoveSite> {
    let mut seen = std::collections::HashSet::new();
    sites
        .into_iter()
        .filter_map(|(mut key, site)| {
            key.sort();
            seen.insert(key).then_some(site)
        })
        .collect()
}

/// All sites of the given kind, in a deterministic order. Delete sites that
/// remove the same passages are reported once.
pub fn find_move_sites(code: &SignedGaussCode, kind: MoveKind) -> Vec<MoveSite> {
    match kind {
        MoveKind::R1Insert => {
            let mut out = Vec::new();
            for gap in gaps(code) {
                for sign in [Sign::Positive, Sign::Negative] {
                    for over_first in [true, false] {
                        out.push(MoveSite::R1Insert {
                            gap,
                            sign,
                            over_first,
                        });
                    }
                }
            }
            out
        }
        MoveKind::R2Insert => {
            let g = gaps(code);
            let mut out = Vec::new();
            for &over_gap in &g {
                for &under_gap in &g {
                    let orders: &[bool] = if over_gap == under_gap {
                        &[true, false]
                    } else {
                        &[true]
                    };
                    for variant in [R2Variant::Coherent, R2Variant::Antiparallel] {
                        for sign in [Sign::Positive, Sign::Negative] {
                            for &over_first in orders {
                                out.push(MoveSite::R2Insert {
                                    over_gap,
                                    under_gap,
                                    variant,
                                    sign,
                                    over_first,
                                });
                            }
                        }
                    }
                }
            }
            out
        }
        MoveKind::R1Delete => dedup_sites(
            positions(code)
                .filter(|&p| r1_delete_matches(code, p))
                .map(|p| (vec![p, code.next_pos(p)], MoveSite::R1Delete { first: p }))
                .collect(),
        ),
        MoveKind::R2Delete => {
            let mut found = Vec::new();
            for over in positions(code) {
                for under in positions(code) {
                    for variant in [R2Variant::Coherent, R2Variant::Antiparallel] {
                        if r2_delete_matches(code, over, under, variant) {
                            let key = vec![over, code.next_pos(over), under, code.next_pos(under)];
                            found.push((
                                key,
                                MoveSite::R2Delete {
                                    over,
                                    under,
                                    variant,
                                },
                            ));
                        }
                    }
                }
            }
            dedup_sites(found)
        }
        MoveKind::R3 => {
            let locations = code.locate();
            let other = |p: Pos| {
                let [x, y] = locations[&code.passage(p).crossing];
                if x == p {
                    y
                } else {
                    x
                }
            };
            let mut found = Vec::new();
            for p in positions(code) {
                let q = code.next_pos(p);
                if q == p {
                    continue;
                }
                // forward: p = Oa, q = Ob; the a-pair starts at Ua, the b-pair at Ub
                // backward: p = Ob, q = Oa; the a-pair ends at Ua, the b-pair ends at Ub
                let fwd = [p, other(p), other(q)];
                let bwd = [p, code.prev_pos(other(q)), code.prev_pos(other(p))];
                for pairs in [fwd, bwd] {
                    if r3_matches(code, pairs) {
                        found.push((pairs.to_vec(), MoveSite::R3 { pairs }));
                    }
                }
            }
            dedup_sites(found)
        }
    }
}

/// Result of a move with, for every arc of the new code, the arc of the old
/// code carrying the same Cheng label (`None` for arcs created inside the
/// move).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Applied {
    pub code: SignedGaussCode,
    pub arc_map: Vec<Vec<Option<Pos>>>,
}

struct Work {
    comps: Vec<Vec<Passage>>,
    /// current arc -> original arc
    map: Vec<Vec<Option<Pos>>>,
}

impl Work {
    fn new(code: &SignedGaussCode) -> Self {
        let map = code
            .components()
            .iter()
            .enumerate()
            .map(|(c, comp)| {
                (0..comp.len().max(1))
                    .map(|i| Some(Pos::new(c, i)))
                    .collect()
            })
            .collect();
        Work {
            comps: code.components().to_vec(),
            map,
        }
    }

    fn insert(&mut self, gap: Gap, block: &[Passage]) {
        let c = gap.component;
        let old_len = self.comps[c].len();
        let g = gap.index;
        let old_map = &self.map[c];
        // the arc leaving the block is the tail of the arc that held the gap
        let held = old_map[(g + old_map.len() - 1) % old_map.len()];
        let k = block.len();
        let mut new_map: Vec<Option<Pos>> = Vec::with_capacity(old_len + k);
        new_map.extend_from_slice(&old_map[..g.min(old_len)]);
        new_map.extend(std::iter::repeat_n(None, k - 1));
        new_map.push(held);
        if old_len > 0 {
            new_map.extend_from_slice(&old_map[g..]);
        }
        self.comps[c].splice(g..g, block.iter().copied());
        self.map[c] = new_map;
    }

    fn delete(&mut self, c: usize, mut idx: Vec<usize>) {
        idx.sort_unstable();
        let comp = &self.comps[c];
        let len = comp.len();
        let keep: Vec<usize> = (0..len).filter(|i| idx.binary_search(i).is_err()).collect();
        let map = &self.map[c];
        if keep.is_empty() {
            self.map[c] = vec![map[(idx[0] + len - 1) % len]];
            self.comps[c].clear();
            return;
        }
        self.map[c] = keep.iter().map(|&i| map[i]).collect();
        self.comps[c] = keep.iter().map(|&i| comp[i]).collect();
    }

    fn finish(self) -> Applied {
        Applied {
            code: SignedGaussCode::from_valid(self.comps),
            arc_map: self.map,
        }
    }
}

fn check_gap(code: &SignedGaussCode, gap: Gap) -> Result<()> {
    if gap.component < code.num_components()
        && gap.index < code.component(gap.component).len().max(1)
    {
        Ok(())
    } else {
        Err(Error::StaleSite(format!("gap {gap} is out of range")))
    }
}

fn check_pos(code: &SignedGaussCode, p: Pos) -> Result<()> {
    if p.component < code.num_components() && p.index < code.component(p.component).len() {
        Ok(())
    } else {
        Err(Error::StaleSite(format!("position {p} is out of range")))
    }
}

fn delete_positions(work: &mut Work, ps: &[Pos]) {
    let mut by_comp: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for p in ps {
        by_comp.entry(p.component).or_default().push(p.index);
    }
    for (c, idx) in by_comp {
        work.delete(c, idx);
    }
}

/// Applies `site` and reports how arcs correspond.
pub fn apply_move_tracked(code: &SignedGaussCode, site: &MoveSite) -> Result<Applied> {
    let mut work = Work::new(code);
    let fresh = code.max_crossing() + 1;
    match *site {
        MoveSite::R1Insert {
            gap,
            sign,
            over_first,
        } => {
            check_gap(code, gap)?;
            let o = Passage::new(Role::Over, fresh, sign);
            let u = Passage::new(Role::Under, fresh, sign);
            work.insert(gap, &if over_first { [o, u] } else { [u, o] });
        }
        MoveSite::R1Delete { first } => {
            check_pos(code, first)?;
            if !r1_delete_matches(code, first) {
                return Err(Error::StaleSite(site.to_string()));
            }
            delete_positions(&mut work, &[first, code.next_pos(first)]);
        }
        MoveSite::R2Insert {
            over_gap,
            under_gap,
            variant,
            sign,
            over_first,
        } => {
            check_gap(code, over_gap)?;
            check_gap(code, under_gap)?;
            let (a, b) = (fresh, fresh + 1);
            let over = [
                Passage::new(Role::Over, a, sign),
                Passage::new(Role::Over, b, sign.flip()),
            ];
            let (ua, ub) = (
                Passage::new(Role::Under, a, sign),
                Passage::new(Role::Under, b, sign.flip()),
            );
            let under = match variant {
                R2Variant::Coherent => [ua, ub],
                R2Variant::Antiparallel => [ub, ua],
            };
            if over_gap == under_gap {
                let block = if over_first {
                    [over[0], over[1], under[0], under[1]]
                } else {
                    [under[0], under[1], over[0], over[1]]
                };
                work.insert(over_gap, &block);
            } else if over_gap > under_gap {
                work.insert(over_gap, &over);
                work.insert(under_gap, &under);
            } else {
                work.insert(under_gap, &under);
                work.insert(over_gap, &over);
            }
        }
        MoveSite::R2Delete {
            over,
            under,
            variant,
        } => {
            check_pos(code, over)?;
            check_pos(code, under)?;
            if !r2_delete_matches(code, over, under, variant) {
                return Err(Error::StaleSite(site.to_string()));
            }
            let ps = [over, code.next_pos(over), under, code.next_pos(under)];
            delete_positions(&mut work, &ps);
        }
        MoveSite::R3 { pairs } => {
            for p in pairs {
                check_pos(code, p)?;
            }
            if !r3_matches(code, pairs) {
                return Err(Error::StaleSite(site.to_string()));
            }
            for p in pairs {
                let q = code.next_pos(p);
                work.comps[p.component].swap(p.index, q.index);
                // the arc between the swapped passages is new
                work.map[p.component][p.index] = None;
            }
        }
    }
    Ok(work.finish())
}

/// Applies `site` to `code`. Ids are not renumbered.
pub fn apply_move(code: &SignedGaussCode, site: &MoveSite) -> Result<SignedGaussCode> {
    Ok(apply_move_tracked(code, site)?.code)
}

/// Carries a Cheng coloring of `before` across a move: mapped arcs keep their
/// label and each component is completed by propagation.
pub fn transport_cheng(
    before: &ChengColoring,
    after: &SignedGaussCode,
    arc_map: &[Vec<Option<Pos>>],
) -> Result<ChengColoring> {
    let mut comps = Vec::with_capacity(after.num_components());
    for (c, comp) in after.components().iter().enumerate() {
        let map = &arc_map[c];
        let (anchor, old) = map
            .iter()
            .enumerate()
            .find_map(|(i, m)| m.map(|p| (i, p)))
            .ok_or_else(|| Error::Internal(format!("component {c} has no surviving arc")))?;
        let n = map.len();
        let mut labels = vec![0i64; n];
        labels[anchor] = before.label(old.component, old.index);
        for step in 1..n {
            let i = (anchor + step) % n;
            labels[i] = labels[(i + n - 1) % n] + comp[i].flat_role().step();
        }
        for (i, m) in map.iter().enumerate() {
            if let Some(p) = m {
                if labels[i] != before.label(p.component, p.index) {
                    return Err(Error::Internal(format!(
                        "transported label mismatch at {c}:{i}"
                    )));
                }
            }
        }
        comps.push(labels);
    }
    let col = ArcColoring::new(comps);
    if !verify_coloring(after, &col)? {
        return Err(Error::Internal("transported coloring is not valid".into()));
    }
    Ok(col)
}

/// Mover used by the walk: the real one is [`apply_move_tracked`].
pub type Mover = fn(&SignedGaussCode, &MoveSite) -> Result<Applied>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Walk {
    pub code: SignedGaussCode,
    pub trace: Vec<MoveSite>,
}

impl Walk {
    /// One move per line.
    pub fn trace_text(&self) -> String {
        self.trace.iter().map(|m| format!("{m}\n")).collect()
    }
}

/// Picks a kind uniformly among those with at least one site, then a site
/// uniformly. The code is canonicalized after every move.
pub fn random_walk(code: &SignedGaussCode, steps: usize, seed: u64) -> Walk {
    walk_with(code, None, steps, seed, apply_move_tracked)
        .expect("moves produced by the finder apply")
        .0
}

/// [`random_walk`] that also carries a Cheng coloring along, one move at a
/// time.
pub fn random_walk_colored(
    code: &SignedGaussCode,
    coloring: &ChengColoring,
    steps: usize,
    seed: u64,
) -> Result<(Walk, ChengColoring)> {
    let (walk, col) = walk_with(code, Some(coloring), steps, seed, apply_move_tracked)?;
    Ok((walk, col.expect("coloring was supplied")))
}

fn walk_with(
    code: &SignedGaussCode,
    coloring: Option<&ChengColoring>,
    steps: usize,
    seed: u64,
    mover: Mover,
) -> Result<(Walk, Option<ChengColoring>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cur = code.clone();
    let mut col = coloring.cloned();
    let mut trace = Vec::with_capacity(steps);
    for _ in 0..steps {
        let options: Vec<Vec<MoveSite>> = MoveKind::ALL
            .iter()
            .map(|&k| find_move_sites(&cur, k))
            .filter(|s| !s.is_empty())
            .collect();
        let sites = &options[rng.gen_range(0..options.len())];
        let site = sites[rng.gen_range(0..sites.len())];
        let applied = mover(&cur, &site)?;
        let (canon, cmap) = applied.code.canonical_form();
        if let Some(c) = &col {
            let moved = transport_cheng(c, &applied.code, &applied.arc_map)?;
            let comps = canon
                .components()
                .iter()
                .enumerate()
                .map(|(ci, comp)| {
                    (0..comp.len().max(1))
                        .map(|i| {
                            let src = cmap.source(Pos::new(ci, i), comp.len());
                            moved.label(src.component, src.index)
                        })
                        .collect()
                })
                .collect();
            col = Some(ArcColoring::new(comps));
        }
        cur = canon;
        trace.push(site);
    }
    Ok((Walk { code: cur, trace }, col))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub seed_code: String,
    pub trial: usize,
    pub trial_seed: u64,
    pub before: String,
    pub after: String,
    pub final_code: String,
    pub trace: Vec<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct InvarianceReport {
    pub passed: usize,
    pub failed: usize,
    /// Uncolorable links, which have no polynomial to compare.
    pub skipped: usize,
    pub failures: Vec<Counterexample>,
}

impl InvarianceReport {
    pub fn total(&self) -> usize {
        self.passed + self.failed + self.skipped
    }

    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// Seed of trial `trial` for seed code `index`.
pub fn trial_seed(seed: u64, index: usize, trial: usize) -> u64 {
    splitmix64(splitmix64(seed ^ splitmix64(index as u64)) ^ trial as u64)
}

/// Walks every seed code `trials` times and compares polynomials. Links are
/// compared through their transported coloring.
pub fn invariance_report(
    seeds: &[SignedGaussCode],
    steps: usize,
    trials: usize,
    seed: u64,
) -> InvarianceReport {
    invariance_report_with(seeds, steps, trials, seed, apply_move_tracked)
}

/// [`invariance_report`] with a replaceable move implementation, so the
/// harness itself can be checked against a broken mover.
pub fn invariance_report_with(
    seeds: &[SignedGaussCode],
    steps: usize,
    trials: usize,
    seed: u64,
    mover: Mover,
) -> InvarianceReport {
    let jobs: Vec<(usize, usize)> = (0..seeds.len())
        .flat_map(|i| (0..trials).map(move |t| (i, t)))
        .collect();
    let outcomes: Vec<Option<std::result::Result<(), Counterexample>>> = jobs
        .par_iter()
        .map(|&(i, t)| run_trial(&seeds[i], i, t, steps, seed, mover))
        .collect();
    let mut report = InvarianceReport::default();
    for o in outcomes {
        match o {
            None => report.skipped += 1,
            Some(Ok(())) => report.passed += 1,
            Some(Err(c)) => {
                report.failed += 1;
                report.failures.push(c);
            }
        }
    }
    report
}

fn run_trial(
    code: &SignedGaussCode,
    index: usize,
    trial: usize,
    steps: usize,
    seed: u64,
    mover: Mover,
) -> Option<std::result::Result<(), Counterexample>> {
    let col = propagate_coloring(code, &vec![0; code.num_components()]).ok()?;
    let ts = trial_seed(seed, index, trial);
    let before = link_pair_polynomial(code, &col).ok()?;
    let fail = |after: String, final_code: String, trace: Vec<String>| Counterexample {
        seed_code: code.to_string(),
        trial,
        trial_seed: ts,
        before: before.to_string(),
        after,
        final_code,
        trace,
    };
    let (walk, moved) = match walk_with(code, Some(&col), steps, ts, mover) {
        Ok((w, Some(c))) => (w, c),
        Ok((_, None)) => unreachable!("coloring was supplied"),
        Err(e) => return Some(Err(fail(format!("error: {e}"), String::new(), Vec::new()))),
    };
    let trace: Vec<String> = walk.trace.iter().map(ToString::to_string).collect();
    let after = link_pair_polynomial(&walk.code, &moved);
    match after {
        Ok(p) if p == before => Some(Ok(())),
        Ok(p) => Some(Err(fail(p.to_string(), walk.code.to_string(), trace))),
        Err(e) => Some(Err(fail(
            format!("error: {e}"),
            walk.code.to_string(),
            trace,
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram_ops::writhe;
    use crate::gauss_code::parse_signed;
    use crate::invariant::affine_index_polynomial;
    use crate::polynomial::LaurentPolynomial;

    fn k(s: &str) -> SignedGaussCode {
        parse_signed(s).unwrap()
    }

    fn poly(c: &SignedGaussCode) -> LaurentPolynomial {
        affine_index_polynomial(c).unwrap()
    }

    #[test]
    fn r2_delete_across_seam() {
        let c = k("U1- O2+ O1- U2+");
        let sites = find_move_sites(&c, MoveKind::R2Delete);
        assert_eq!(sites.len(), 1);
        assert_eq!(
            sites[0],
            MoveSite::R2Delete {
                over: Pos::new(0, 1),
                under: Pos::new(0, 3),
                variant: R2Variant::Coherent
            }
        );
        assert_eq!(
            apply_move(&c, &sites[0]).unwrap(),
            SignedGaussCode::unknot()
        );
    }

    #[test]
    fn r1_delete() {
        let c = k("O1+ U1+ O2+ O3+ U2+ U3+");
        let sites = find_move_sites(&c, MoveKind::R1Delete);
        assert_eq!(
            sites,
            vec![MoveSite::R1Delete {
                first: Pos::new(0, 0)
            }]
        );
        assert_eq!(
            apply_move(&c, &sites[0]).unwrap().to_string(),
            "O2+ O3+ U2+ U3+"
        );
        // a lone kink is found once, not once per rotation
        assert_eq!(find_move_sites(&k("O1+ U1+"), MoveKind::R1Delete).len(), 1);
    }

    #[test]
    fn r3_example() {
        let c = k("O1+ O2+ U1+ O3+ U2+ U3+");
        let sites = find_move_sites(&c, MoveKind::R3);
        let pairs = [Pos::new(0, 0), Pos::new(0, 2), Pos::new(0, 4)];
        assert_eq!(sites, vec![MoveSite::R3 { pairs }]);
        let out = apply_move(&c, &sites[0]).unwrap();
        assert_eq!(out.to_string(), "O2+ O1+ O3+ U1+ U3+ U2+");
        assert_eq!(poly(&out), poly(&c));
        assert_eq!(writhe(&out), writhe(&c));
        // the swapped image is recognised at the same site
        assert_eq!(find_move_sites(&out, MoveKind::R3), sites);
        assert_eq!(apply_move(&out, &sites[0]).unwrap(), c);
    }

    #[test]
    fn stale_sites() {
        let c = k("O1+ O2+ U1+ U2+");
        assert!(matches!(
            apply_move(
                &c,
                &MoveSite::R1Delete {
                    first: Pos::new(0, 0)
                }
            ),
            Err(Error::StaleSite(_))
        ));
        assert!(matches!(
            apply_move(
                &c,
                &MoveSite::R1Delete {
                    first: Pos::new(3, 0)
                }
            ),
            Err(Error::StaleSite(_))
        ));
        let gap = Gap {
            component: 0,
            index: 9,
        };
        let site = MoveSite::R1Insert {
            gap,
            sign: Sign::Positive,
            over_first: true,
        };
        assert!(matches!(apply_move(&c, &site), Err(Error::StaleSite(_))));
    }

    #[test]
    fn insertion_sites() {
        let u = SignedGaussCode::unknot();
        assert_eq!(find_move_sites(&u, MoveKind::R1Insert).len(), 4);
        assert_eq!(find_move_sites(&u, MoveKind::R2Insert).len(), 8);
        let site = MoveSite::R1Insert {
            gap: Gap {
                component: 0,
                index: 0,
            },
            sign: Sign::Negative,
            over_first: false,
        };
        assert_eq!(apply_move(&u, &site).unwrap().to_string(), "U1- O1-");
    }

    #[test]
    fn r2_insert_two_gaps() {
        let c = k("O1+ U1+");
        let site = MoveSite::R2Insert {
            over_gap: Gap {
                component: 0,
                index: 1,
            },
            under_gap: Gap {
                component: 0,
                index: 0,
            },
            variant: R2Variant::Antiparallel,
            sign: Sign::Positive,
            over_first: true,
        };
        let out = apply_move(&c, &site).unwrap();
        assert_eq!(out.to_string(), "U3- U2+ O1+ O2+ O3- U1+");
        assert_eq!(poly(&out), poly(&c));
        assert_eq!(find_move_sites(&out, MoveKind::R2Delete).len(), 1);
    }

    #[test]
    fn arc_map_of_insertion() {
        let c = k("O1+ O2+ U1+ U2+");
        let site = MoveSite::R1Insert {
            gap: Gap {
                component: 0,
                index: 2,
            },
            sign: Sign::Positive,
            over_first: true,
        };
        let a = apply_move_tracked(&c, &site).unwrap();
        let p = |i| Some(Pos::new(0, i));
        assert_eq!(a.arc_map, vec![vec![p(0), p(1), None, p(1), p(2), p(3)]]);
    }

    #[test]
    fn walk_is_deterministic() {
        let c = k("O1+ O2+ U1+ U2+");
        assert_eq!(random_walk(&c, 0, 5).code, c);
        let a = random_walk(&c, 20, 11);
        let b = random_walk(&c, 20, 11);
        assert_eq!(a, b);
        assert_eq!(a.trace.len(), 20);
        assert_eq!(poly(&a.code).to_string(), "t^-1 - 2 + t");
    }

    #[test]
    fn hopf_walk_keeps_link_polynomial() {
        let r = invariance_report(&[k("O1+ U2+ ; U1+ O2+")], 15, 20, 3);
        assert_eq!(r.passed, 20, "{:?}", r.failures.first());
    }

    #[test]
    fn empty_report() {
        let r = invariance_report(&[], 10, 10, 0);
        assert_eq!(r, InvarianceReport::default());
        let r = invariance_report(&[k("O1+ O2+ ; U1+ U2+")], 3, 2, 0);
        assert_eq!((r.skipped, r.total()), (2, 2));
    }
}
