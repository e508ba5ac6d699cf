use std::collections::{BTreeMap, HashSet};

use super::{Code, Pos, Token};

/// How a canonical form was obtained from its source code: new component
/// `i` is old component `order[i]` read from index `rotation[i]`, and old
/// crossing ids map to new ones through `relabel`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalMap {
    pub order: Vec<usize>,
    pub rotation: Vec<usize>,
    pub relabel: BTreeMap<u32, u32>,
}

impl CanonicalMap {
    /// Old position of the passage at `new` in the canonical code. Also valid
    /// for arcs, since arc `i` follows passage `i`.
    pub fn source(&self, new: Pos, len: usize) -> Pos {
        let old = self.order[new.component];
        if len == 0 {
            return Pos::new(old, 0);
        }
        Pos::new(old, (new.index + self.rotation[new.component]) % len)
    }
}

#[derive(Clone)]
struct State<T> {
    used: Vec<bool>,
    relabel: BTreeMap<u32, u32>,
    order: Vec<usize>,
    rotation: Vec<usize>,
    tokens: Vec<Vec<T>>,
}

fn relabeled<T: Token>(comp: &[T], rot: usize, relabel: &mut BTreeMap<u32, u32>) -> Vec<T> {
    let n = comp.len();
    (0..n)
        .map(|i| {
            let p = comp[(i + rot) % n];
            let next = relabel.len() as u32 + 1;
            let id = *relabel.entry(p.crossing()).or_insert(next);
            p.with_crossing(id)
        })
        .collect()
}

impl<T: Token> Code<T> {
    /// Minimal form over component rotations, component orderings and
    /// relabelings (ids renumbered 1..n by first appearance).
    pub fn canonicalize(&self) -> Code<T> {
        self.canonical_form().0
    }

    pub fn canonical_form(&self) -> (Code<T>, CanonicalMap) {
        let k = self.components.len();
        let mut beam = vec![State {
            used: vec![false; k],
            relabel: BTreeMap::new(),
            order: Vec::new(),
            rotation: Vec::new(),
            tokens: Vec::new(),
        }];
        // Components compare one at a time, so the minimum is found level by
        // level keeping every state that ties on the prefix.
        for _ in 0..k {
            let mut best: Option<Vec<T>> = None;
            let mut next: Vec<State<T>> = Vec::new();
            for st in &beam {
                for c in (0..k).filter(|&c| !st.used[c]) {
                    let comp = &self.components[c];
                    for rot in 0..comp.len().max(1) {
                        let mut relabel = st.relabel.clone();
                        let toks = relabeled(comp, rot, &mut relabel);
                        let better = match &best {
                            None => true,
                            Some(b) => toks < *b,
                        };
                        if better {
                            best = Some(toks.clone());
                            next.clear();
                        }
                        if best.as_ref() == Some(&toks) {
                            let mut s = st.clone();
                            s.used[c] = true;
                            s.relabel = relabel;
                            s.order.push(c);
                            s.rotation.push(rot);
                            s.tokens.push(toks);
                            next.push(s);
                        }
                    }
                }
            }
            let mut seen = HashSet::new();
            next.retain(|s| seen.insert((s.used.clone(), s.relabel.clone())));
            beam = next;
        }
        let st = beam.swap_remove(0);
        (
            Code::from_valid(st.tokens),
            CanonicalMap {
                order: st.order,
                rotation: st.rotation,
                relabel: st.relabel,
            },
        )
    }
}
