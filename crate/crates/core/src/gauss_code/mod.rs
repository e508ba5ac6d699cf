//! Signed and flat Gauss codes.
//!
//! A virtual knot or link diagram is stored as one cyclic sequence of
//! passages per component. Only classical crossings appear; virtual
//! crossings leave no trace, so every purely virtual and detour move is the
//! identity on this representation.
//!
//! Text grammar: tokens `O<id><+|->` / `U<id><+|->` for signed codes and
//! `L<id>` / `R<id>` for flat codes, separated by spaces within a
//! component, `;` between components, and `()` for an empty component.

mod canonical;
mod resolve;

use std::collections::BTreeMap;
use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

pub use canonical::CanonicalMap;
pub use resolve::{forget, resolutions, resolve};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Role {
    Over,
    Under,
}

impl Role {
    pub fn flip(self) -> Role {
        match self {
            Role::Over => Role::Under,
            Role::Under => Role::Over,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Positive => '+',
            Sign::Negative => '-',
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// Role of a passage in the flat diagram. `L` crosses to the left and raises
/// the Cheng label by one, `R` crosses to the right and lowers it by one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum FlatRole {
    L,
    R,
}

impl FlatRole {
    pub fn flip(self) -> FlatRole {
        match self {
            FlatRole::L => FlatRole::R,
            FlatRole::R => FlatRole::L,
        }
    }

    /// Change of the Cheng label across this passage.
    pub fn step(self) -> i64 {
        match self {
            FlatRole::L => 1,
            FlatRole::R => -1,
        }
    }
}

/// One classical passage of a signed code. Field order gives the canonical
/// token order: `O < U`, then crossing id, then `+ < -`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Passage {
    pub role: Role,
    pub crossing: u32,
    pub sign: Sign,
}

impl Passage {
    pub fn new(role: Role, crossing: u32, sign: Sign) -> Self {
        Passage {
            role,
            crossing,
            sign,
        }
    }

    /// Flat role of this passage. Over at a positive crossing is the
    /// decrementing strand.
    pub fn flat_role(&self) -> FlatRole {
        match (self.role, self.sign) {
            (Role::Over, Sign::Positive) | (Role::Under, Sign::Negative) => FlatRole::R,
            (Role::Over, Sign::Negative) | (Role::Under, Sign::Positive) => FlatRole::L,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FlatPassage {
    pub role: FlatRole,
    pub crossing: u32,
}

impl FlatPassage {
    pub fn new(role: FlatRole, crossing: u32) -> Self {
        FlatPassage { role, crossing }
    }
}

/// Position of a passage: component index and index within the component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Pos {
    pub component: usize,
    pub index: usize,
}

impl Pos {
    pub fn new(component: usize, index: usize) -> Self {
        Pos { component, index }
    }
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.component, self.index)
    }
}

/// A structural defect found while validating a code.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub enum Violation {
    Occurrences { crossing: u32, count: usize },
    DuplicateRole { crossing: u32, role: String },
    SignMismatch { crossing: u32 },
    MixedKinds { crossing: u32 },
    NoComponents,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Occurrences { crossing, count } if count % 2 == 1 => {
                write!(f, "odd occurrence of {crossing}")
            }
            Violation::Occurrences { crossing, count } => {
                write!(f, "crossing {crossing} occurs {count} times")
            }
            Violation::DuplicateRole { crossing, role } => {
                write!(f, "crossing {crossing} appears with role {role} twice")
            }
            Violation::SignMismatch { crossing } => write!(f, "sign mismatch at {crossing}"),
            Violation::MixedKinds { crossing } => {
                write!(
                    f,
                    "crossing {crossing} mixes singular and classical passages"
                )
            }
            Violation::NoComponents => write!(f, "code has no components"),
        }
    }
}

/// A passage type that can live in a [`Code`].
pub trait Token: Copy + Eq + Ord + Hash + fmt::Debug + fmt::Display + Send + Sync {
    fn crossing(&self) -> u32;

    fn with_crossing(self, crossing: u32) -> Self;

    /// Parses a single token; the error is a human-readable reason.
    fn parse_token(text: &str) -> std::result::Result<Self, String>;

    /// Checks the passages that share one crossing id. `occurrences` always
    /// has length two when called.
    fn check_pair(crossing: u32, occurrences: &[Self], out: &mut Vec<Violation>);
}

fn split_id(rest: &str) -> std::result::Result<(u32, &str), String> {
    let digits = rest.bytes().take_while(u8::is_ascii_digit).count();
    if digits == 0 {
        return Err("missing crossing id".into());
    }
    let id: u32 = rest[..digits]
        .parse()
        .map_err(|_| "crossing id out of range".to_string())?;
    if id == 0 {
        return Err("crossing ids start at 1".into());
    }
    Ok((id, &rest[digits..]))
}

impl Token for Passage {
    fn crossing(&self) -> u32 {
        self.crossing
    }

    fn with_crossing(self, crossing: u32) -> Self {
        Passage { crossing, ..self }
    }

    fn parse_token(text: &str) -> std::result::Result<Self, String> {
        let role = match text.chars().next() {
            Some('O') => Role::Over,
            Some('U') => Role::Under,
            _ => return Err("expected `O` or `U`".into()),
        };
        let (id, rest) = split_id(&text[1..])?;
        let sign = match rest {
            "+" => Sign::Positive,
            "-" => Sign::Negative,
            "" => return Err("missing sign".into()),
            _ => return Err("trailing characters".into()),
        };
        Ok(Passage::new(role, id, sign))
    }

    fn check_pair(crossing: u32, occ: &[Self], out: &mut Vec<Violation>) {
        if occ[0].role == occ[1].role {
            out.push(Violation::DuplicateRole {
                crossing,
                role: format!("{:?}", occ[0].role),
            });
        }
        if occ[0].sign != occ[1].sign {
            out.push(Violation::SignMismatch { crossing });
        }
    }
}

impl fmt::Display for Passage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = match self.role {
            Role::Over => 'O',
            Role::Under => 'U',
        };
        write!(f, "{r}{}{}", self.crossing, self.sign)
    }
}

impl Token for FlatPassage {
    fn crossing(&self) -> u32 {
        self.crossing
    }

    fn with_crossing(self, crossing: u32) -> Self {
        FlatPassage { crossing, ..self }
    }

    fn parse_token(text: &str) -> std::result::Result<Self, String> {
        let role = match text.chars().next() {
            Some('L') => FlatRole::L,
            Some('R') => FlatRole::R,
            _ => return Err("expected `L` or `R`".into()),
        };
        let (id, rest) = split_id(&text[1..])?;
        if !rest.is_empty() {
            return Err("trailing characters".into());
        }
        Ok(FlatPassage::new(role, id))
    }

    fn check_pair(crossing: u32, occ: &[Self], out: &mut Vec<Violation>) {
        if occ[0].role == occ[1].role {
            out.push(Violation::DuplicateRole {
                crossing,
                role: format!("{:?}", occ[0].role),
            });
        }
    }
}

impl fmt::Display for FlatPassage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.role, self.crossing)
    }
}

/// Outcome of [`validate`]: every violated structural invariant.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the pairing invariants of raw components.
pub fn validate<T: Token>(components: &[Vec<T>]) -> ValidationReport {
    let mut violations = Vec::new();
    if components.is_empty() {
        violations.push(Violation::NoComponents);
    }
    let mut by_id: BTreeMap<u32, Vec<T>> = BTreeMap::new();
    for p in components.iter().flatten() {
        by_id.entry(p.crossing()).or_default().push(*p);
    }
    for (&id, occ) in &by_id {
        if occ.len() != 2 {
            violations.push(Violation::Occurrences {
                crossing: id,
                count: occ.len(),
            });
            // a repeated role is still worth reporting when the count is off
            let mut roles = occ.clone();
            roles.sort();
            for w in roles.windows(2) {
                if let [a, b] = w {
                    let mut v = Vec::new();
                    T::check_pair(id, &[*a, *b], &mut v);
                    for x in v {
                        if matches!(x, Violation::DuplicateRole { .. }) && !violations.contains(&x)
                        {
                            violations.push(x);
                        }
                    }
                }
            }
        } else {
            T::check_pair(id, occ, &mut violations);
        }
    }
    ValidationReport { violations }
}

/// Splits `text` into raw components without checking pairing invariants.
pub fn parse_components<T: Token>(text: &str) -> Result<Vec<Vec<T>>> {
    let text = text.trim();
    if text.is_empty() {
        return Err(Error::Syntax {
            token: String::new(),
            message: "empty input".into(),
        });
    }
    text.split(';')
        .map(|part| {
            let part = part.trim();
            if part == "()" {
                return Ok(Vec::new());
            }
            if part.is_empty() {
                return Err(Error::Syntax {
                    token: ";".into(),
                    message: "empty component (write `()`)".into(),
                });
            }
            part.split_whitespace()
                .map(|tok| {
                    T::parse_token(tok).map_err(|message| Error::Syntax {
                        token: tok.to_string(),
                        message,
                    })
                })
                .collect()
        })
        .collect()
}

/// A validated Gauss code: ordered components, each a cyclic sequence of
/// passages in traversal order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Code<T> {
    components: Vec<Vec<T>>,
}

pub type SignedGaussCode = Code<Passage>;
pub type FlatCode = Code<FlatPassage>;

impl<T: Token> Code<T> {
    pub fn new(components: Vec<Vec<T>>) -> Result<Self> {
        let report = validate(&components);
        if report.is_ok() {
            Ok(Code { components })
        } else {
            Err(Error::Validation(report.violations))
        }
    }

    /// Builds a code whose invariants the caller has already established.
    pub(crate) fn from_valid(components: Vec<Vec<T>>) -> Self {
        debug_assert!(validate(&components).is_ok(), "invalid components");
        Code { components }
    }

    /// The zero-crossing unknot.
    pub fn unknot() -> Self {
        Code {
            components: vec![Vec::new()],
        }
    }

    pub fn components(&self) -> &[Vec<T>] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &[T] {
        &self.components[i]
    }

    pub fn into_components(self) -> Vec<Vec<T>> {
        self.components
    }

    pub fn num_components(&self) -> usize {
        self.components.len()
    }

    pub fn is_knot(&self) -> bool {
        self.components.len() == 1
    }

    pub fn num_crossings(&self) -> usize {
        self.num_passages() / 2
    }

    pub fn num_passages(&self) -> usize {
        self.components.iter().map(Vec::len).sum()
    }

    pub fn passage(&self, pos: Pos) -> T {
        self.components[pos.component][pos.index]
    }

    /// Crossing ids in increasing order.
    pub fn crossings(&self) -> Vec<u32> {
        self.locate().into_keys().collect()
    }

    pub fn max_crossing(&self) -> u32 {
        self.components
            .iter()
            .flatten()
            .map(Token::crossing)
            .max()
            .unwrap_or(0)
    }

    /// Both positions of every crossing, in traversal order.
    pub fn locate(&self) -> BTreeMap<u32, [Pos; 2]> {
        let mut first: BTreeMap<u32, Pos> = BTreeMap::new();
        let mut out = BTreeMap::new();
        for (c, comp) in self.components.iter().enumerate() {
            for (i, p) in comp.iter().enumerate() {
                let pos = Pos::new(c, i);
                match first.remove(&p.crossing()) {
                    Some(prev) => {
                        out.insert(p.crossing(), [prev, pos]);
                    }
                    None => {
                        first.insert(p.crossing(), pos);
                    }
                }
            }
        }
        out
    }

    pub fn contains_crossing(&self, id: u32) -> bool {
        self.components.iter().flatten().any(|p| p.crossing() == id)
    }

    /// Position following `pos` cyclically within its component.
    pub fn next_pos(&self, pos: Pos) -> Pos {
        let len = self.components[pos.component].len();
        Pos::new(pos.component, (pos.index + 1) % len)
    }

    pub fn prev_pos(&self, pos: Pos) -> Pos {
        let len = self.components[pos.component].len();
        Pos::new(pos.component, (pos.index + len - 1) % len)
    }

    /// Applies `f` to every passage; the result must still be valid.
    pub(crate) fn map_passages<U: Token>(&self, f: impl Fn(&T) -> U) -> Code<U> {
        Code::from_valid(
            self.components
                .iter()
                .map(|comp| comp.iter().map(&f).collect())
                .collect(),
        )
    }
}

impl<T: Token> FromStr for Code<T> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Code::new(parse_components(s)?)
    }
}

impl<T: Token> fmt::Display for Code<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, comp) in self.components.iter().enumerate() {
            if i > 0 {
                f.write_str(" ; ")?;
            }
            if comp.is_empty() {
                f.write_str("()")?;
            }
            for (j, p) in comp.iter().enumerate() {
                if j > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{p}")?;
            }
        }
        Ok(())
    }
}

impl<T: Token> Serialize for Code<T> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

pub fn parse_signed(text: &str) -> Result<SignedGaussCode> {
    text.parse()
}

pub fn parse_flat(text: &str) -> Result<FlatCode> {
    text.parse()
}
