//! Structural transforms on signed codes.

use std::collections::BTreeSet;

use crate::coloring::{verify_coloring, ArcColoring, ChengColoring};
use crate::error::{Error, Result};
use crate::gauss_code::{Passage, SignedGaussCode};
use crate::invariant::crossing_weights;

/// Reverses the orientation of every component. Roles and signs are kept.
pub fn reverse(code: &SignedGaussCode) -> SignedGaussCode {
    SignedGaussCode::from_valid(
        code.components()
            .iter()
            .map(|c| c.iter().rev().copied().collect())
            .collect(),
    )
}

/// Switches every crossing.
pub fn mirror(code: &SignedGaussCode) -> SignedGaussCode {
    code.map_passages(|p| switched(*p))
}

fn switched(p: Passage) -> Passage {
    Passage::new(p.role.flip(), p.crossing, p.sign.flip())
}

fn check_ids(code: &SignedGaussCode, ids: &[u32]) -> Result<BTreeSet<u32>> {
    let present: BTreeSet<u32> = code.crossings().into_iter().collect();
    ids.iter()
        .map(|&id| {
            if present.contains(&id) {
                Ok(id)
            } else {
                Err(Error::UnknownCrossing(id))
            }
        })
        .collect()
}

/// Swaps over/under and flips the sign at the listed crossings.
pub fn switch_crossings(code: &SignedGaussCode, ids: &[u32]) -> Result<SignedGaussCode> {
    let set = check_ids(code, ids)?;
    Ok(code.map_passages(|p| {
        if set.contains(&p.crossing) {
            switched(*p)
        } else {
            *p
        }
    }))
}

/// Flips the sign at the listed crossings. The flanking virtual crossings
/// of a virtualization are invisible in a Gauss code.
pub fn virtualize(code: &SignedGaussCode, ids: &[u32]) -> Result<SignedGaussCode> {
    let set = check_ids(code, ids)?;
    Ok(code.map_passages(|p| {
        if set.contains(&p.crossing) {
            Passage {
                sign: p.sign.flip(),
                ..*p
            }
        } else {
            *p
        }
    }))
}

pub fn writhe(code: &SignedGaussCode) -> i64 {
    code.components()
        .iter()
        .flatten()
        .map(|p| p.sign.value())
        .sum::<i64>()
        / 2
}

struct Labeled {
    passages: Vec<Passage>,
    labels: Vec<i64>,
}

fn take(comp: &Labeled, idx: impl Iterator<Item = usize>, fallback: i64) -> Labeled {
    let idx: Vec<usize> = idx.collect();
    let passages: Vec<Passage> = idx.iter().map(|&i| comp.passages[i]).collect();
    let labels = if idx.is_empty() {
        vec![fallback]
    } else {
        idx.iter().map(|&i| comp.labels[i]).collect()
    };
    Labeled { passages, labels }
}

/// Oriented smoothing of crossing `id`, carrying arc labels along.
fn smooth_labeled(comps: &mut Vec<Labeled>, id: u32) -> Result<()> {
    let mut found = Vec::new();
    for (c, comp) in comps.iter().enumerate() {
        for (i, p) in comp.passages.iter().enumerate() {
            if p.crossing == id {
                found.push((c, i));
            }
        }
    }
    let [(ca, i), (cb, j)] = found[..] else {
        return Err(Error::UnknownCrossing(id));
    };
    if ca == cb {
        // i < j: the two arcs between the passages become separate circles
        let comp = &comps[ca];
        let len = comp.passages.len();
        let inner = take(comp, i + 1..j, comp.labels[i]);
        let outer = take(comp, (j + 1..len).chain(0..i), comp.labels[j]);
        comps.splice(ca..=ca, [inner, outer]);
    } else {
        let (a, b) = (&comps[ca], &comps[cb]);
        let (la, lb) = (a.passages.len(), b.passages.len());
        let mut merged = take(a, (i + 1..la).chain(0..i), a.labels[i]);
        let tail = take(b, (j + 1..lb).chain(0..j), b.labels[j]);
        if !tail.passages.is_empty() {
            if merged.passages.is_empty() {
                merged = tail;
            } else {
                merged.passages.extend(tail.passages);
                merged.labels.extend(tail.labels);
            }
        }
        comps[ca] = merged;
        comps.remove(cb);
    }
    Ok(())
}

fn labeled_components(code: &SignedGaussCode, coloring: Option<&ChengColoring>) -> Vec<Labeled> {
    code.components()
        .iter()
        .enumerate()
        .map(|(c, comp)| Labeled {
            passages: comp.clone(),
            labels: match coloring {
                Some(col) => col.component(c).to_vec(),
                None => vec![0; comp.len().max(1)],
            },
        })
        .collect()
}

/// Deletes both passages of `id` and reconnects respecting orientation: a
/// self-crossing splits its component in two, a crossing between two
/// components merges them.
pub fn smooth_oriented(code: &SignedGaussCode, id: u32) -> Result<SignedGaussCode> {
    let mut comps = labeled_components(code, None);
    smooth_labeled(&mut comps, id)?;
    Ok(SignedGaussCode::from_valid(
        comps.into_iter().map(|c| c.passages).collect(),
    ))
}

/// Smooths every crossing of weight zero (in increasing id order). Labels of
/// surviving arc segments are inherited, so the output coloring is valid.
pub fn smooth_zero_weight(
    code: &SignedGaussCode,
    coloring: &ChengColoring,
) -> Result<(SignedGaussCode, ChengColoring)> {
    let table = crossing_weights(code, coloring)?;
    let mut comps = labeled_components(code, Some(coloring));
    for w in table.entries().iter().filter(|w| w.weight == 0) {
        smooth_labeled(&mut comps, w.crossing)?;
    }
    let out = SignedGaussCode::from_valid(comps.iter().map(|c| c.passages.clone()).collect());
    let col = ArcColoring::new(comps.into_iter().map(|c| c.labels).collect());
    if !verify_coloring(&out, &col)? {
        return Err(Error::Internal("inherited coloring is not valid".into()));
    }
    Ok((out, col))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::lambda_coloring;
    use crate::gauss_code::{forget, parse_signed};

    fn k(s: &str) -> SignedGaussCode {
        parse_signed(s).unwrap()
    }

    #[test]
    fn reverse_and_mirror() {
        let t = k("O1+ O2+ U1+ U2+");
        assert_eq!(reverse(&t).to_string(), "U2+ U1+ O2+ O1+");
        assert_eq!(mirror(&t).to_string(), "U1- U2- O1- O2-");
        assert_eq!(reverse(&reverse(&t)), t);
        assert_eq!(mirror(&mirror(&t)), t);
        let u = SignedGaussCode::unknot();
        assert_eq!(reverse(&u), u);
    }

    #[test]
    fn switching() {
        let t = k("O1+ O2+ U1+ U2+");
        assert_eq!(
            switch_crossings(&t, &[1]).unwrap().to_string(),
            "U1- O2+ O1- U2+"
        );
        assert_eq!(switch_crossings(&t, &[1, 2]).unwrap(), mirror(&t));
        assert_eq!(switch_crossings(&t, &[]).unwrap(), t);
        assert_eq!(switch_crossings(&t, &[7]), Err(Error::UnknownCrossing(7)));
    }

    #[test]
    fn virtualization() {
        let t = k("O1+ O2+ U1+ U2+");
        let v = virtualize(&t, &[1]).unwrap();
        assert_eq!(v.to_string(), "O1- O2+ U1- U2+");
        assert_eq!(virtualize(&v, &[1]).unwrap(), t);
        assert_eq!(forget(&v).to_string(), "L1 R2 R1 L2");
        assert_eq!(virtualize(&t, &[3]), Err(Error::UnknownCrossing(3)));
    }

    #[test]
    fn writhe_examples() {
        assert_eq!(writhe(&k("O1+ O2+ U1+ U2+")), 2);
        assert_eq!(writhe(&k("O1+ U1+")), 1);
        assert_eq!(writhe(&mirror(&k("O1+ O2+ U1+ U2+"))), -2);
    }

    #[test]
    fn smoothing_examples() {
        assert_eq!(
            smooth_oriented(&k("O1+ O2+ U1+ U2+"), 1)
                .unwrap()
                .to_string(),
            "O2+ ; U2+"
        );
        assert_eq!(
            smooth_oriented(&k("O3+ U3+ O1+ O2+ U1+ U2+"), 3)
                .unwrap()
                .to_string(),
            "() ; O1+ O2+ U1+ U2+"
        );
        assert_eq!(
            smooth_oriented(&k("O1+ ; U1+"), 1).unwrap().to_string(),
            "()"
        );
        assert_eq!(
            smooth_oriented(&k("O1+ U1+"), 4),
            Err(Error::UnknownCrossing(4))
        );
    }

    #[test]
    fn merge_keeps_orientation() {
        // A: O1+ O2+ | B: U1+ U2+ ; smoothing 1 runs A after 1, then B after 1
        let l = k("O1+ O2+ ; U1+ U2+");
        assert_eq!(smooth_oriented(&l, 1).unwrap().to_string(), "O2+ U2+");
    }

    #[test]
    fn zero_weight_smoothing_of_kinked_trefoil() {
        let code = k("O3+ U3+ O1+ O2+ U1+ U2+");
        let col = lambda_coloring(&code).unwrap();
        let (out, c) = smooth_zero_weight(&code, &col).unwrap();
        assert_eq!(out.to_string(), "() ; O1+ O2+ U1+ U2+");
        assert!(verify_coloring(&out, &c).unwrap());
        // surviving arcs keep their labels
        assert_eq!(c.component(1), &col.component(0)[2..]);
    }

    #[test]
    fn nothing_to_smooth() {
        let t = k("O1+ O2+ U1+ U2+");
        let col = lambda_coloring(&t).unwrap();
        assert_eq!(smooth_zero_weight(&t, &col).unwrap(), (t, col));
    }

    #[test]
    fn invalid_coloring_rejected() {
        let t = k("O1+ O2+ U1+ U2+");
        let bad: ChengColoring = "0,0,0,0".parse().unwrap();
        assert_eq!(smooth_zero_weight(&t, &bad), Err(Error::InvalidColoring));
    }
}
