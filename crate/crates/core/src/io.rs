//! Random instance generation and the plain-text instance format.
//!
//! The format is line oriented. Blank lines and everything after a `#` are
//! ignored. An instance is two blocks, first for x and then for y:
//!
//! ```text
//! <length>
//! <sequence>
//! <number of arcs>
//! <left> <right>      (one line per arc, 1-based, left < right)
//! ```

use std::collections::HashSet;
use std::fmt::Write as _;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::model::{Alphabet, ArcAnnotatedSequence, Instance};

#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorConfig {
    pub n: usize,
    pub n_arcs: usize,
    pub alphabet: Alphabet,
    pub seed: u64,
}

impl GeneratorConfig {
    pub fn new(n: usize, n_arcs: usize, seed: u64) -> Self {
        Self {
            n,
            n_arcs,
            alphabet: Alphabet::rna(),
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidParameter("n must be at least 1".into()));
        }
        let max = pair_count(self.n);
        if self.n_arcs > max {
            return Err(Error::TooManyArcs {
                n: self.n,
                n_arcs: self.n_arcs,
                max,
            });
        }
        Ok(())
    }
}

fn pair_count(n: usize) -> usize {
    n * (n - 1) / 2
}

/// Pair number `k` in the order (1,2), (1,3), ..., (1,n), (2,3), ...
fn pair_at(n: usize, mut k: usize) -> (u32, u32) {
    let mut left = 1;
    loop {
        let row = n - left;
        if k < row {
            return (left as u32, (left + 1 + k) as u32);
        }
        k -= row;
        left += 1;
    }
}

fn random_sequence<R: Rng + ?Sized>(cfg: &GeneratorConfig, rng: &mut R) -> Result<ArcAnnotatedSequence> {
    let symbols = cfg.alphabet.symbols();
    let seq: Vec<u8> = (0..cfg.n)
        .map(|_| symbols[rng.gen_range(0..symbols.len())])
        .collect();
    let arcs = index::sample(rng, pair_count(cfg.n), cfg.n_arcs)
        .into_iter()
        .map(|k| pair_at(cfg.n, k));
    ArcAnnotatedSequence::new(seq, arcs)
}

/// Two independent uniform sequences with `n_arcs` distinct uniform arcs
/// each, drawn from `rng`.
pub fn generate_instance_with<R: Rng + ?Sized>(cfg: &GeneratorConfig, rng: &mut R) -> Result<Instance> {
    cfg.validate()?;
    let x = random_sequence(cfg, rng)?;
    let y = random_sequence(cfg, rng)?;
    Ok(Instance::new(x, y))
}

/// [`generate_instance_with`] driven by ChaCha8 seeded with `cfg.seed`.
pub fn generate_instance(cfg: &GeneratorConfig) -> Result<Instance> {
    generate_instance_with(cfg, &mut ChaCha8Rng::seed_from_u64(cfg.seed))
}

pub fn serialize_instance(instance: &Instance) -> String {
    let mut out = String::new();
    for s in [&instance.x, &instance.y] {
        let _ = writeln!(out, "{}", s.len());
        out.push_str(&String::from_utf8_lossy(s.symbols()));
        out.push('\n');
        let _ = writeln!(out, "{}", s.arcs().len());
        for (a, b) in s.arcs().iter() {
            let _ = writeln!(out, "{a} {b}");
        }
    }
    out
}

/// Parses an instance over the RNA alphabet.
pub fn parse_instance(text: &str) -> Result<Instance> {
    parse_instance_with_alphabet(text, &Alphabet::rna())
}

pub fn parse_instance_with_alphabet(text: &str, alphabet: &Alphabet) -> Result<Instance> {
    let mut lines = Lines::new(text);
    let x = parse_block(&mut lines, alphabet, 'x')?;
    let y = parse_block(&mut lines, alphabet, 'y')?;
    if let Some((line, content)) = lines.next() {
        return Err(Error::Parse {
            line,
            msg: format!("unexpected trailing content {content:?}"),
        });
    }
    Ok(Instance::new(x, y))
}

struct Lines<'t> {
    inner: std::iter::Enumerate<std::str::Lines<'t>>,
    last_line: usize,
}

impl<'t> Lines<'t> {
    fn new(text: &'t str) -> Self {
        Self {
            inner: text.lines().enumerate(),
            last_line: 0,
        }
    }

    fn next(&mut self) -> Option<(usize, &'t str)> {
        for (k, raw) in self.inner.by_ref() {
            self.last_line = k + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if !content.is_empty() {
                return Some((k + 1, content));
            }
        }
        None
    }

    fn expect(&mut self, what: &str) -> Result<(usize, &'t str)> {
        self.next().ok_or_else(|| Error::Parse {
            line: self.last_line + 1,
            msg: format!("unexpected end of input, expected {what}"),
        })
    }
}

fn parse_count(line: usize, content: &str, what: &str) -> Result<usize> {
    let mut tokens = content.split_whitespace();
    let value = tokens.next().and_then(|t| t.parse::<usize>().ok());
    match (value, tokens.next()) {
        (Some(v), None) => Ok(v),
        _ => Err(Error::Parse {
            line,
            msg: format!("expected {what} as a single non-negative integer, got {content:?}"),
        }),
    }
}

fn parse_block(lines: &mut Lines<'_>, alphabet: &Alphabet, name: char) -> Result<ArcAnnotatedSequence> {
    let (line, content) = lines.expect(&format!("length of {name}"))?;
    let len = parse_count(line, content, "a length")?;
    let seq: Vec<u8> = if len == 0 {
        Vec::new()
    } else {
        let (line, content) = lines.expect(&format!("sequence {name}"))?;
        if content.len() != len || content.contains(char::is_whitespace) {
            return Err(Error::Parse {
                line,
                msg: format!(
                    "length mismatch: declared {len}, sequence has {} symbols",
                    content.chars().filter(|c| !c.is_whitespace()).count()
                ),
            });
        }
        if let Some(bad) = content.bytes().find(|&c| !alphabet.contains(c)) {
            return Err(Error::Parse {
                line,
                msg: format!("unknown symbol {:?}", bad as char),
            });
        }
        content.as_bytes().to_vec()
    };
    let (line, content) = lines.expect(&format!("arc count of {name}"))?;
    let m = parse_count(line, content, "an arc count")?;
    let mut arcs = Vec::with_capacity(m);
    let mut seen = HashSet::with_capacity(m);
    for _ in 0..m {
        let (line, content) = lines.expect("an arc")?;
        let nums: Vec<Option<u32>> = content.split_whitespace().map(|t| t.parse().ok()).collect();
        let (a, b) = match nums[..] {
            [Some(a), Some(b)] => (a, b),
            _ => {
                return Err(Error::Parse {
                    line,
                    msg: format!("expected two positions, got {content:?}"),
                })
            }
        };
        for p in [a, b] {
            if p == 0 || p as usize > len {
                return Err(Error::Parse {
                    line,
                    msg: format!("arc endpoint {p} out of range 1..={len}"),
                });
            }
        }
        if a >= b {
            return Err(Error::Parse {
                line,
                msg: "arc left endpoint must be smaller than right endpoint".into(),
            });
        }
        if !seen.insert((a, b)) {
            return Err(Error::Parse {
                line,
                msg: format!("duplicate arc {a} {b}"),
            });
        }
        arcs.push((a, b));
    }
    ArcAnnotatedSequence::named(seq, arcs, name)
}

/// Lengths and arc counts of the ten RNase P instance pairs, used to check
/// hand transcriptions: `(name, |x|, arcs of x, |y|, arcs of y)`.
pub const REAL_INSTANCE_COUNTS: [(&str, usize, usize, usize, usize); 10] = [
    ("Real_1", 369, 119, 377, 124),
    ("Real_2", 361, 121, 398, 131),
    ("Real_3", 475, 154, 433, 142),
    ("Real_4", 383, 127, 377, 124),
    ("Real_5", 252, 75, 229, 67),
    ("Real_6", 371, 115, 330, 100),
    ("Real_7", 384, 119, 369, 112),
    ("Real_8", 336, 90, 281, 71),
    ("Real_9", 378, 125, 354, 115),
    ("Real_10", 398, 135, 405, 138),
];

/// Compares an instance with the published counts of `name`.
pub fn check_real_counts(name: &str, instance: &Instance) -> Result<()> {
    let &(_, lx, ax, ly, ay) = REAL_INSTANCE_COUNTS
        .iter()
        .find(|r| r.0 == name)
        .ok_or_else(|| Error::InvalidParameter(format!("unknown real instance {name:?}")))?;
    let got = (
        instance.lx(),
        instance.x.arcs().len(),
        instance.ly(),
        instance.y.arcs().len(),
    );
    if got != (lx, ax, ly, ay) {
        return Err(Error::InvalidParameter(format!(
            "{name}: expected lengths/arcs {lx}/{ax} and {ly}/{ay}, found {}/{} and {}/{}",
            got.0, got.1, got.2, got.3
        )));
    }
    Ok(())
}
