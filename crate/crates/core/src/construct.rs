//! Randomized greedy construction of common subsequences.
//!
//! A construction walks through both sequences: at every step one candidate
//! per letter is available (the next occurrence of that letter after the last
//! chosen assignment in both sequences), candidates are ranked by a weight
//! that measures how much of the two sequences they skip, and one of them is
//! picked either greedily or from a short list of the best-ranked ones. The
//! result is a common subsequence that may still violate arc preservation;
//! [`generate_random_solution`] repairs it.

use std::cmp::Ordering;

use rand::Rng;

use crate::error::{Error, Result};
use crate::mis::Budget;
use crate::model::{Assignment, Instance, Solution};
use crate::solvers::repair;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstructionParams {
    /// Probability of taking the best candidate instead of sampling.
    pub d_rate: f64,
    /// Number of best-ranked candidates sampled from otherwise.
    pub l_size: usize,
}

impl ConstructionParams {
    pub fn new(d_rate: f64, l_size: usize) -> Result<Self> {
        let p = Self { d_rate, l_size };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.d_rate) {
            return Err(Error::InvalidParameter(format!(
                "d_rate must lie in [0, 1], got {}",
                self.d_rate
            )));
        }
        if self.l_size == 0 {
            return Err(Error::InvalidParameter("l_size must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
struct LetterPositions {
    symbol: u8,
    in_x: Vec<u32>,
    in_y: Vec<u32>,
}

/// Sorted occurrence lists of every letter shared by both sequences.
#[derive(Debug, Clone)]
pub struct OccurrenceIndex {
    lx: u32,
    ly: u32,
    letters: Vec<LetterPositions>,
}

impl OccurrenceIndex {
    pub fn new(instance: &Instance) -> Self {
        let mut table: Vec<Option<LetterPositions>> = vec![None; 256];
        for (p, &c) in instance.x.symbols().iter().enumerate() {
            table[c as usize]
                .get_or_insert_with(|| LetterPositions {
                    symbol: c,
                    in_x: Vec::new(),
                    in_y: Vec::new(),
                })
                .in_x
                .push(p as u32 + 1);
        }
        for (p, &c) in instance.y.symbols().iter().enumerate() {
            if let Some(l) = table[c as usize].as_mut() {
                l.in_y.push(p as u32 + 1);
            }
        }
        let letters = table
            .into_iter()
            .flatten()
            .filter(|l| !l.in_y.is_empty())
            .collect();
        Self {
            lx: instance.lx() as u32,
            ly: instance.ly() as u32,
            letters,
        }
    }

    pub fn lx(&self) -> u32 {
        self.lx
    }

    pub fn ly(&self) -> u32 {
        self.ly
    }

    /// Letters occurring in both sequences, ascending by byte value.
    pub fn shared_letters(&self) -> impl Iterator<Item = u8> + '_ {
        self.letters.iter().map(|l| l.symbol)
    }

    /// Positions of `symbol` in x and y, if the letter is shared.
    pub fn positions(&self, symbol: u8) -> Option<(&[u32], &[u32])> {
        self.letters
            .iter()
            .find(|l| l.symbol == symbol)
            .map(|l| (l.in_x.as_slice(), l.in_y.as_slice()))
    }

    fn candidates_after(&self, i: u32, j: u32) -> impl Iterator<Item = (u8, Assignment)> + '_ {
        self.letters.iter().filter_map(move |l| {
            let r = first_after(&l.in_x, i)?;
            let s = first_after(&l.in_y, j)?;
            Some((l.symbol, Assignment::new(r, s)))
        })
    }
}

#[inline]
fn first_after(sorted: &[u32], p: u32) -> Option<u32> {
    let k = sorted.partition_point(|&q| q <= p);
    sorted.get(k).copied()
}

/// Greedy weight of `z`: `i/lx + j/ly` without an anchor, and
/// `(r-i)/(lx-i) + (s-j)/(ly-j)` for `z = (r, s)` after anchor `(i, j)`.
pub fn weight(z: Assignment, anchor: Option<Assignment>, lx: u32, ly: u32) -> Result<f64> {
    match anchor {
        None => {
            if z.i == 0 || z.j == 0 || z.i > lx || z.j > ly {
                return Err(Error::InvalidParameter(format!("{z} lies outside {lx}x{ly}")));
            }
            Ok(raw_weight(z, None, lx, ly))
        }
        Some(a) => {
            if a.i >= lx || a.j >= ly {
                return Err(Error::InvalidParameter(format!(
                    "anchor {a} has no successor in {lx}x{ly}"
                )));
            }
            if z.i <= a.i || z.j <= a.j || z.i > lx || z.j > ly {
                return Err(Error::InvalidParameter(format!(
                    "{z} does not follow anchor {a}"
                )));
            }
            Ok(raw_weight(z, Some(a), lx, ly))
        }
    }
}

#[inline]
fn raw_weight(z: Assignment, anchor: Option<Assignment>, lx: u32, ly: u32) -> f64 {
    let (i, j) = anchor.map_or((0, 0), |a| (a.i, a.j));
    f64::from(z.i - i) / f64::from(lx - i) + f64::from(z.j - j) / f64::from(ly - j)
}

/// For each shared letter, its first occurrence in x paired with its first
/// occurrence in y. Ascending by letter.
pub fn initial_candidates(idx: &OccurrenceIndex) -> Vec<Assignment> {
    idx.candidates_after(0, 0).map(|(_, a)| a).collect()
}

/// For each letter, the first occurrences strictly after `last` in both
/// sequences, when both exist. Ascending by letter.
pub fn successor_candidates(idx: &OccurrenceIndex, last: Assignment) -> Vec<Assignment> {
    idx.candidates_after(last.i, last.j).map(|(_, a)| a).collect()
}

#[derive(Debug, Clone, Copy)]
struct Candidate {
    symbol: u8,
    at: Assignment,
    weight: f64,
}

fn rank(a: &Candidate, b: &Candidate) -> Ordering {
    a.weight
        .total_cmp(&b.weight)
        .then(a.symbol.cmp(&b.symbol))
        .then(a.at.cmp(&b.at))
}

/// Builds a common subsequence step by step; arcs are not looked at.
pub fn construct_common_subsequence<R: Rng + ?Sized>(
    idx: &OccurrenceIndex,
    params: &ConstructionParams,
    rng: &mut R,
) -> Solution {
    let mut chosen = Vec::new();
    let mut last: Option<Assignment> = None;
    let mut cands: Vec<Candidate> = Vec::with_capacity(idx.letters.len());
    loop {
        let (i, j) = last.map_or((0, 0), |a| (a.i, a.j));
        cands.clear();
        cands.extend(idx.candidates_after(i, j).map(|(symbol, at)| Candidate {
            symbol,
            at,
            weight: raw_weight(at, last, idx.lx, idx.ly),
        }));
        if cands.is_empty() {
            break;
        }
        cands.sort_unstable_by(rank);
        let r: f64 = rng.gen();
        let pick = if r <= params.d_rate {
            0
        } else {
            rng.gen_range(0..params.l_size.min(cands.len()))
        };
        let at = cands[pick].at;
        chosen.push(at);
        last = Some(at);
    }
    Solution::new(chosen)
}

/// Reusable constructor for one instance.
#[derive(Debug, Clone)]
pub struct Constructor<'a> {
    instance: &'a Instance,
    index: OccurrenceIndex,
}

impl<'a> Constructor<'a> {
    pub fn new(instance: &'a Instance) -> Self {
        Self {
            instance,
            index: OccurrenceIndex::new(instance),
        }
    }

    pub fn index(&self) -> &OccurrenceIndex {
        &self.index
    }

    /// Constructs and repairs one solution.
    pub fn generate<R: Rng + ?Sized>(
        &self,
        params: &ConstructionParams,
        repair_budget: Budget,
        rng: &mut R,
    ) -> Solution {
        let raw = construct_common_subsequence(&self.index, params, rng);
        repair(&raw, self.instance, repair_budget)
            .expect("constructed sets are common subsequences")
    }
}

/// One randomized construction followed by arc repair; the result is valid.
pub fn generate_random_solution<R: Rng + ?Sized>(
    instance: &Instance,
    params: &ConstructionParams,
    repair_budget: Budget,
    rng: &mut R,
) -> Result<Solution> {
    params.validate()?;
    Ok(Constructor::new(instance).generate(params, repair_budget, rng))
}
