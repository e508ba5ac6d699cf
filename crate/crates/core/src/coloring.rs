//! Cheng colorings: integer arc labels that rise by one across an `L`
//! passage and fall by one across an `R` passage.
//!
//! Arc `i` of a component is the segment immediately following passage `i`;
//! the last arc of a component is therefore the one entering passage `0`.
//! A component without passages has exactly one arc.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gauss_code::{FlatCode, FlatRole, Role, SignedGaussCode, Token};

/// One label per arc, grouped by component.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ArcColoring<T> {
    components: Vec<Vec<T>>,
}

pub type ChengColoring = ArcColoring<i64>;

impl<T: Copy> ArcColoring<T> {
    pub fn new(components: Vec<Vec<T>>) -> Self {
        ArcColoring { components }
    }

    pub fn components(&self) -> &[Vec<T>] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &[T] {
        &self.components[i]
    }

    /// Label of arc `index` of `component`.
    pub fn label(&self, component: usize, index: usize) -> T {
        self.components[component][index]
    }

    /// Label of the arc entering passage `index`.
    pub fn incoming(&self, component: usize, index: usize) -> T {
        let labels = &self.components[component];
        labels[(index + labels.len() - 1) % labels.len()]
    }

    pub fn into_components(self) -> Vec<Vec<T>> {
        self.components
    }

    /// Fails unless there is one label per arc of `code`.
    pub fn check_shape<P: Token>(&self, code: &crate::gauss_code::Code<P>) -> Result<()> {
        if self.components.len() != code.num_components() {
            return Err(Error::ShapeMismatch(format!(
                "{} coloring components for {} code components",
                self.components.len(),
                code.num_components()
            )));
        }
        for (i, (labels, comp)) in self.components.iter().zip(code.components()).enumerate() {
            if labels.len() != comp.len().max(1) {
                return Err(Error::ShapeMismatch(format!(
                    "component {i} has {} labels for {} arcs",
                    labels.len(),
                    comp.len().max(1)
                )));
            }
        }
        Ok(())
    }
}

impl<T: fmt::Display> fmt::Display for ArcColoring<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, comp) in self.components.iter().enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            for (j, x) in comp.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{x}")?;
            }
        }
        Ok(())
    }
}

impl<T: FromStr> FromStr for ArcColoring<T> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let components = s
            .split(';')
            .map(|part| {
                part.split(',')
                    .map(|x| {
                        x.trim().parse::<T>().map_err(|_| Error::Syntax {
                            token: x.trim().to_string(),
                            message: "expected an integer label".into(),
                        })
                    })
                    .collect::<Result<Vec<T>>>()
            })
            .collect::<Result<_>>()?;
        Ok(ArcColoring { components })
    }
}

impl<T: fmt::Display> Serialize for ArcColoring<T> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

pub(crate) fn flat_roles(code: &SignedGaussCode) -> Vec<Vec<FlatRole>> {
    code.components()
        .iter()
        .map(|comp| comp.iter().map(|p| p.flat_role()).collect())
        .collect()
}

/// Labels for one component, starting from the label of the closing arc
/// (the one entering passage 0).
fn propagate(roles: &[FlatRole], closing: i64) -> Vec<i64> {
    if roles.is_empty() {
        return vec![closing];
    }
    let mut labels = Vec::with_capacity(roles.len());
    let mut cur = closing;
    for r in roles {
        cur += r.step();
        labels.push(cur);
    }
    labels
}

/// λ of the closing arc: the signed count of crossings first met as
/// over-crossings when traversing from passage 0.
fn lambda_closing(comp: &[crate::gauss_code::Passage]) -> i64 {
    let mut seen = std::collections::HashSet::new();
    comp.iter()
        .filter(|p| seen.insert(p.crossing))
        .filter(|p| p.role == Role::Over)
        .map(|p| p.sign.value())
        .sum()
}

/// The canonical λ labeling of a knot.
pub fn lambda_coloring(code: &SignedGaussCode) -> Result<ChengColoring> {
    if !code.is_knot() {
        return Err(Error::NotAKnot(code.num_components()));
    }
    let comp = code.component(0);
    let roles: Vec<FlatRole> = comp.iter().map(|p| p.flat_role()).collect();
    Ok(ArcColoring::new(vec![propagate(
        &roles,
        lambda_closing(comp),
    )]))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Colorability {
    pub colorable: bool,
    /// `#L - #R` per component.
    pub imbalances: Vec<i64>,
}

pub fn colorability(code: &SignedGaussCode) -> Colorability {
    flat_colorability(&crate::gauss_code::forget(code))
}

pub fn flat_colorability(flat: &FlatCode) -> Colorability {
    let imbalances: Vec<i64> = flat
        .components()
        .iter()
        .map(|comp| comp.iter().map(|p| p.role.step()).sum())
        .collect();
    Colorability {
        colorable: imbalances.iter().all(|&d| d == 0),
        imbalances,
    }
}

/// Propagates a coloring from a base label on each component's closing arc:
/// λ for a knot, 0 for a link, plus the component's offset.
pub fn propagate_coloring(code: &SignedGaussCode, offsets: &[i64]) -> Result<ChengColoring> {
    if offsets.len() != code.num_components() {
        return Err(Error::ShapeMismatch(format!(
            "{} offsets for {} components",
            offsets.len(),
            code.num_components()
        )));
    }
    let report = colorability(code);
    if !report.colorable {
        return Err(Error::Uncolorable {
            imbalances: report.imbalances,
        });
    }
    let roles = flat_roles(code);
    let comps = roles
        .iter()
        .zip(offsets)
        .enumerate()
        .map(|(i, (r, off))| {
            let base = if code.is_knot() {
                lambda_closing(code.component(i))
            } else {
                0
            };
            propagate(r, base + off)
        })
        .collect();
    Ok(ArcColoring::new(comps))
}

/// True iff every passage satisfies the ±1 rule.
pub fn verify_coloring(code: &SignedGaussCode, coloring: &ChengColoring) -> Result<bool> {
    verify_flat_coloring(&crate::gauss_code::forget(code), coloring)
}

pub fn verify_flat_coloring(flat: &FlatCode, coloring: &ChengColoring) -> Result<bool> {
    coloring.check_shape(flat)?;
    Ok(flat.components().iter().enumerate().all(|(c, comp)| {
        comp.iter()
            .enumerate()
            .all(|(i, p)| coloring.label(c, i) == coloring.incoming(c, i) + p.role.step())
    }))
}
