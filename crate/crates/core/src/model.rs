//! Arc-annotated sequences, assignments, solutions and the two validity
//! conditions that define an arc-preserving common subsequence.
//!
//! Positions are 1-based everywhere in this crate: position `p` of a sequence
//! refers to its `p`-th symbol.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};

/// Set of single-byte symbols a sequence may be drawn from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    symbols: Vec<u8>,
}

impl Alphabet {
    pub const RNA: &'static [u8] = b"ACGU";

    /// Builds an alphabet from its symbols; order is kept, duplicates dropped.
    pub fn new(symbols: &[u8]) -> Result<Self> {
        let mut seen = Vec::with_capacity(symbols.len());
        for &s in symbols {
            if s.is_ascii_whitespace() || s == b'#' {
                return Err(Error::InvalidParameter(format!(
                    "symbol {:?} cannot be part of an alphabet",
                    s as char
                )));
            }
            if !seen.contains(&s) {
                seen.push(s);
            }
        }
        if seen.is_empty() {
            return Err(Error::InvalidParameter("empty alphabet".into()));
        }
        Ok(Self { symbols: seen })
    }

    pub fn rna() -> Self {
        Self {
            symbols: Self::RNA.to_vec(),
        }
    }

    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn contains(&self, s: u8) -> bool {
        self.symbols.contains(&s)
    }
}

impl Default for Alphabet {
    fn default() -> Self {
        Self::rna()
    }
}

/// Arc annotation of one sequence.
///
/// Stores the sorted arc list for iteration and, for every left endpoint, the
/// sorted list of right endpoints so that membership queries on the conflict
/// hot path touch a single short vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArcSet {
    arcs: Vec<(u32, u32)>,
    right_of: Vec<Vec<u32>>,
    partners: Vec<Vec<u32>>,
}

impl ArcSet {
    /// Validates and indexes the arcs of a sequence of length `len`.
    pub fn new(len: usize, arcs: impl IntoIterator<Item = (u32, u32)>, seq: char) -> Result<Self> {
        let mut seen = HashSet::new();
        let mut list = Vec::new();
        for (a, b) in arcs {
            for p in [a, b] {
                if p == 0 || p as usize > len {
                    return Err(Error::PositionOutOfRange {
                        seq,
                        pos: p,
                        len: len as u32,
                    });
                }
            }
            if a >= b {
                return Err(Error::ArcOrder(a, b));
            }
            if !seen.insert((a, b)) {
                return Err(Error::DuplicateArc(a, b));
            }
            list.push((a, b));
        }
        list.sort_unstable();
        let mut right_of = vec![Vec::new(); len + 1];
        let mut partners = vec![Vec::new(); len + 1];
        for &(a, b) in &list {
            right_of[a as usize].push(b);
            partners[a as usize].push(b);
            partners[b as usize].push(a);
        }
        for p in &mut partners {
            p.sort_unstable();
        }
        Ok(Self {
            arcs: list,
            right_of,
            partners,
        })
    }

    /// True iff `(left, right)` is an arc. Pairs with `left >= right` are never arcs.
    #[inline]
    pub fn contains(&self, left: u32, right: u32) -> bool {
        match self.right_of.get(left as usize) {
            Some(rs) => rs.binary_search(&right).is_ok(),
            None => false,
        }
    }

    /// Arcs in ascending `(left, right)` order.
    pub fn iter(&self) -> impl ExactSizeIterator<Item = (u32, u32)> + '_ {
        self.arcs.iter().copied()
    }

    /// Positions joined to `pos` by an arc, ascending.
    pub fn partners(&self, pos: u32) -> &[u32] {
        self.partners
            .get(pos as usize)
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArcAnnotatedSequence {
    seq: Vec<u8>,
    arcs: ArcSet,
}

impl ArcAnnotatedSequence {
    pub fn new(seq: impl Into<Vec<u8>>, arcs: impl IntoIterator<Item = (u32, u32)>) -> Result<Self> {
        Self::named(seq, arcs, 'x')
    }

    pub(crate) fn named(
        seq: impl Into<Vec<u8>>,
        arcs: impl IntoIterator<Item = (u32, u32)>,
        name: char,
    ) -> Result<Self> {
        let seq = seq.into();
        let arcs = ArcSet::new(seq.len(), arcs, name)?;
        Ok(Self { seq, arcs })
    }

    /// Sequence without arcs.
    pub fn plain(seq: impl Into<Vec<u8>>) -> Self {
        let seq = seq.into();
        let arcs = ArcSet::new(seq.len(), [], 'x').expect("empty arc set is valid");
        Self { seq, arcs }
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    pub fn symbols(&self) -> &[u8] {
        &self.seq
    }

    /// Symbol at 1-based position `pos`.
    #[inline]
    pub fn at(&self, pos: u32) -> u8 {
        self.seq[pos as usize - 1]
    }

    pub fn arcs(&self) -> &ArcSet {
        &self.arcs
    }

    #[inline]
    pub fn has_arc(&self, left: u32, right: u32) -> bool {
        self.arcs.contains(left, right)
    }
}

/// A pair of arc-annotated sequences.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub x: ArcAnnotatedSequence,
    pub y: ArcAnnotatedSequence,
}

impl Instance {
    pub fn new(x: ArcAnnotatedSequence, y: ArcAnnotatedSequence) -> Self {
        Self { x, y }
    }

    /// Builds an instance and checks that every symbol belongs to `alphabet`.
    pub fn with_alphabet(
        x: ArcAnnotatedSequence,
        y: ArcAnnotatedSequence,
        alphabet: &Alphabet,
    ) -> Result<Self> {
        for (name, s) in [("x", &x), ("y", &y)] {
            if let Some(&bad) = s.symbols().iter().find(|&&c| !alphabet.contains(c)) {
                return Err(Error::InvalidParameter(format!(
                    "symbol {:?} of {name} is not in the alphabet",
                    bad as char
                )));
            }
        }
        Ok(Self { x, y })
    }

    /// Arc-free instance from two strings.
    pub fn plain(x: &str, y: &str) -> Self {
        Self {
            x: ArcAnnotatedSequence::plain(x.as_bytes()),
            y: ArcAnnotatedSequence::plain(y.as_bytes()),
        }
    }

    pub fn lx(&self) -> usize {
        self.x.len()
    }

    pub fn ly(&self) -> usize {
        self.y.len()
    }

    /// Checks that `a` lies inside both sequences and joins equal letters.
    pub fn check_assignment(&self, a: Assignment) -> Result<()> {
        if a.i == 0 || a.i as usize > self.lx() {
            return Err(Error::PositionOutOfRange {
                seq: 'x',
                pos: a.i,
                len: self.lx() as u32,
            });
        }
        if a.j == 0 || a.j as usize > self.ly() {
            return Err(Error::PositionOutOfRange {
                seq: 'y',
                pos: a.j,
                len: self.ly() as u32,
            });
        }
        if self.x.at(a.i) != self.y.at(a.j) {
            return Err(Error::LetterMismatch(a));
        }
        Ok(())
    }
}

/// Matches position `i` of x with position `j` of y.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Assignment {
    pub i: u32,
    pub j: u32,
}

impl Assignment {
    pub const fn new(i: u32, j: u32) -> Self {
        Self { i, j }
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

impl From<(u32, u32)> for Assignment {
    fn from((i, j): (u32, u32)) -> Self {
        Self { i, j }
    }
}

/// A set of assignments, kept sorted by `(i, j)`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Solution {
    items: Vec<Assignment>,
}

impl Solution {
    pub fn new(mut items: Vec<Assignment>) -> Self {
        items.sort_unstable();
        items.dedup();
        Self { items }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = Assignment> + '_ {
        self.items.iter().copied()
    }

    pub fn as_slice(&self) -> &[Assignment] {
        &self.items
    }

    pub fn contains(&self, a: Assignment) -> bool {
        self.items.binary_search(&a).is_ok()
    }

    pub fn into_vec(self) -> Vec<Assignment> {
        self.items
    }
}

impl FromIterator<Assignment> for Solution {
    fn from_iter<T: IntoIterator<Item = Assignment>>(iter: T) -> Self {
        Self::new(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a Solution {
    type Item = &'a Assignment;
    type IntoIter = std::slice::Iter<'a, Assignment>;

    fn into_iter(self) -> Self::IntoIter {
        self.items.iter()
    }
}

/// All `(i, j)` with `x[i] = y[j]`, ordered by `i` then `j`.
pub fn build_assignment_universe(instance: &Instance) -> Vec<Assignment> {
    let mut out = Vec::new();
    for (i, &a) in instance.x.symbols().iter().enumerate() {
        for (j, &b) in instance.y.symbols().iter().enumerate() {
            if a == b {
                out.push(Assignment::new(i as u32 + 1, j as u32 + 1));
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ViolationKind {
    CommonSubsequence,
    ArcPreservation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Violation {
    pub first: Assignment,
    pub second: Assignment,
    pub kind: ViolationKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidityReport {
    pub valid: bool,
    /// Violations in ascending pair order, at most the configured limit.
    pub violations: Vec<Violation>,
    /// Number of violations found, including those beyond the limit.
    pub total_violations: usize,
}

pub const DEFAULT_VIOLATION_LIMIT: usize = 100;

pub fn is_valid_solution(s: &Solution, instance: &Instance) -> Result<ValidityReport> {
    validity_report(s, instance, DEFAULT_VIOLATION_LIMIT)
}

/// Checks both conditions for every pair of `s`, recording at most `limit`
/// violations. A pair can break both conditions and is then listed twice.
pub fn validity_report(s: &Solution, instance: &Instance, limit: usize) -> Result<ValidityReport> {
    for a in s.iter() {
        instance.check_assignment(a)?;
    }
    let items = s.as_slice();
    let mut violations = Vec::new();
    let mut total = 0usize;
    let mut record = |first, second, kind| {
        total += 1;
        if violations.len() < limit {
            violations.push(Violation { first, second, kind });
        }
    };
    for (p, &a) in items.iter().enumerate() {
        for &b in &items[p + 1..] {
            // items are sorted, so a.i <= b.i
            let ordered = (a.i < b.i && a.j < b.j) || (a.i > b.i && a.j > b.j);
            if !ordered {
                record(a, b, ViolationKind::CommonSubsequence);
            }
            if a.i < b.i && instance.x.has_arc(a.i, b.i) != instance.y.has_arc(a.j, b.j) {
                record(a, b, ViolationKind::ArcPreservation);
            }
        }
    }
    Ok(ValidityReport {
        valid: total == 0,
        violations,
        total_violations: total,
    })
}

/// Reads the common subsequence encoded by a valid solution.
pub fn decode_subsequence(s: &Solution, instance: &Instance) -> Result<String> {
    let report = is_valid_solution(s, instance)?;
    if !report.valid {
        return Err(Error::InvalidSolution(report.total_violations));
    }
    let bytes: Vec<u8> = s.iter().map(|a| instance.x.at(a.i)).collect();
    Ok(String::from_utf8_lossy(&bytes).into_owned())
}

/// Restriction classes of an arc annotation, from most to least restrictive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ArcStructureClass {
    Plain,
    Chain,
    Nested,
    Crossing,
    Unlimited,
}

impl fmt::Display for ArcStructureClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Self::Plain => "PLAIN",
            Self::Chain => "CHAIN",
            Self::Nested => "NESTED",
            Self::Crossing => "CROSSING",
            Self::Unlimited => "UNLIMITED",
        };
        f.write_str(s)
    }
}

/// Most restrictive class whose constraints the arc set satisfies.
///
/// Constraints: no shared endpoints (CROSSING), additionally no crossing pair
/// `a < c < b < d` (NESTED), additionally no nesting pair `a < c < d < b`
/// (CHAIN); an empty arc set is PLAIN.
pub fn classify_arc_structure(seq: &ArcAnnotatedSequence) -> ArcStructureClass {
    let arcs: Vec<(u32, u32)> = seq.arcs().iter().collect();
    if arcs.is_empty() {
        return ArcStructureClass::Plain;
    }
    let mut endpoints: Vec<u32> = arcs.iter().flat_map(|&(a, b)| [a, b]).collect();
    endpoints.sort_unstable();
    if endpoints.windows(2).any(|w| w[0] == w[1]) {
        return ArcStructureClass::Unlimited;
    }
    let mut crossing = false;
    let mut nesting = false;
    for (p, &(_, b)) in arcs.iter().enumerate() {
        // arcs sorted by left endpoint, endpoints distinct, so a < c
        for &(c, d) in &arcs[p + 1..] {
            if c > b {
                break;
            }
            if d < b {
                nesting = true;
            } else {
                crossing = true;
            }
        }
    }
    match (crossing, nesting) {
        (true, _) => ArcStructureClass::Crossing,
        (false, true) => ArcStructureClass::Nested,
        (false, false) => ArcStructureClass::Chain,
    }
}
