//! Anytime exact maximum independent set search.
//!
//! The search works on the complement graph and looks for a maximum clique
//! there with the bitset branch-and-bound scheme of San Segundo et al.
//! (BBMC): each node greedily partitions the candidate set into color classes,
//! where a class is a set of pairwise adjacent vertices of the input graph. The
//! number of classes bounds how many candidates a single independent set can
//! take, and candidates are expanded from the highest class down so that one
//! coloring prunes a whole suffix of branches.
//!
//! Before branching, vertices of degree zero or one are taken greedily (there
//! is always a maximum independent set containing them) and the remainder is
//! split into connected components that are searched one after the other.

use std::collections::VecDeque;
use std::io::{self, Write};
use std::time::{Duration, Instant};

/// Undirected simple graph with one adjacency bitset per vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitGraph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
}

#[inline]
fn words_for(n: usize) -> usize {
    n.div_ceil(64)
}

impl BitGraph {
    pub fn new(n: usize) -> Self {
        let words = words_for(n);
        Self {
            n,
            words,
            rows: vec![0; n * words],
        }
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut g = Self::new(n);
        for (u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Adds `{u, v}`. Self-loops are ignored.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u < self.n && v < self.n, "vertex out of range");
        if u == v {
            return;
        }
        self.rows[u * self.words + v / 64] |= 1 << (v % 64);
        self.rows[v * self.words + u / 64] |= 1 << (u % 64);
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    #[inline]
    pub fn row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.words..(v + 1) * self.words]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        iter_bits(self.row(v))
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| self.neighbors(u).filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn is_independent(&self, set: &[usize]) -> bool {
        set.iter().enumerate().all(|(p, &u)| {
            u < self.n && set[p + 1..].iter().all(|&v| v != u && !self.has_edge(u, v))
        })
    }

    /// Writes one `u v` line per edge, 0-based.
    pub fn write_edge_list<W: Write>(&self, mut out: W) -> io::Result<()> {
        for (u, v) in self.edges() {
            writeln!(out, "{u} {v}")?;
        }
        Ok(())
    }
}

fn iter_bits(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(w, &bits)| {
        let mut b = bits;
        std::iter::from_fn(move || {
            if b == 0 {
                None
            } else {
                let t = b.trailing_zeros() as usize;
                b &= b - 1;
                Some(w * 64 + t)
            }
        })
    })
}

/// Maximal independent set: repeatedly take a vertex of minimum residual
/// degree (lowest index on ties) and delete its closed neighbourhood.
pub fn greedy_mis(g: &BitGraph) -> Vec<usize> {
    let n = g.len();
    let mut alive = vec![true; n];
    let mut degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut out = Vec::new();
    loop {
        let pick = (0..n)
            .filter(|&v| alive[v])
            .min_by_key(|&v| (degree[v], v));
        let Some(v) = pick else { break };
        out.push(v);
        let mut removed = vec![v];
        removed.extend(g.neighbors(v).filter(|&u| alive[u]));
        for &u in &removed {
            alive[u] = false;
        }
        for &u in &removed {
            for w in g.neighbors(u) {
                if alive[w] {
                    degree[w] -= 1;
                }
            }
        }
    }
    out.sort_unstable();
    out
}

/// Search budget. Time budgets are checked every 1024 search nodes and are
/// not reproducible; node budgets are.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Budget {
    Time(Duration),
    Nodes(u64),
    Unlimited,
}

impl Budget {
    pub fn seconds(s: f64) -> Self {
        Budget::Time(Duration::from_secs_f64(s.max(0.0)))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MisResult {
    /// Vertex indices, ascending.
    pub best_set: Vec<usize>,
    pub proven_optimal: bool,
    pub nodes_explored: u64,
    pub elapsed: Duration,
}

const CHECK_INTERVAL: u64 = 1024;

/// Configurable entry point; [`solve_mis`] covers the common case.
#[derive(Debug, Clone)]
pub struct MisSolver<'g> {
    graph: &'g BitGraph,
    budget: Budget,
    order: Option<Vec<usize>>,
    incumbent: Vec<usize>,
}

impl<'g> MisSolver<'g> {
    pub fn new(graph: &'g BitGraph, budget: Budget) -> Self {
        Self {
            graph,
            budget,
            order: None,
            incumbent: Vec::new(),
        }
    }

    /// Vertex order used for coloring; earlier vertices are colored first.
    /// Must be a permutation of `0..n`.
    pub fn with_order(mut self, order: Vec<usize>) -> Self {
        assert_eq!(order.len(), self.graph.len(), "order must cover every vertex");
        self.order = Some(order);
        self
    }

    /// Independent set the search starts from; the result is never smaller.
    /// Ignored if it is not independent.
    pub fn with_incumbent(mut self, set: &[usize]) -> Self {
        let mut s = set.to_vec();
        s.sort_unstable();
        s.dedup();
        if self.graph.is_independent(&s) {
            self.incumbent = s;
        }
        self
    }

    pub fn solve(self) -> MisResult {
        let start = Instant::now();
        let g = self.graph;
        let n = g.len();
        let mut clock = Clock {
            start,
            budget: self.budget,
            nodes: 0,
            aborted: false,
        };

        let greedy = greedy_mis(g);
        let mut in_inc = vec![false; n];
        let inc = if greedy.len() > self.incumbent.len() {
            &greedy
        } else {
            &self.incumbent
        };
        for &v in inc {
            in_inc[v] = true;
        }

        let (mut taken, alive) = reduce_low_degree(g, &mut in_inc);

        let rank = match &self.order {
            Some(order) => {
                let mut rank = vec![0usize; n];
                for (r, &v) in order.iter().enumerate() {
                    rank[v] = r;
                }
                rank
            }
            None => (0..n).collect(),
        };

        for mut comp in components(g, &alive) {
            comp.sort_unstable_by_key(|&v| rank[v]);
            let start_set: Vec<usize> = comp.iter().copied().filter(|&v| in_inc[v]).collect();
            let found = if clock.aborted {
                start_set
            } else {
                search_component(g, &comp, start_set, &mut clock)
            };
            taken.extend(found);
        }

        taken.sort_unstable();
        debug_assert!(g.is_independent(&taken));
        MisResult {
            best_set: taken,
            proven_optimal: !clock.aborted,
            nodes_explored: clock.nodes,
            elapsed: start.elapsed(),
        }
    }
}

/// Best independent set found within `budget`; see [`MisSolver`].
pub fn solve_mis(g: &BitGraph, budget: Budget) -> MisResult {
    MisSolver::new(g, budget).solve()
}

struct Clock {
    start: Instant,
    budget: Budget,
    nodes: u64,
    aborted: bool,
}

impl Clock {
    /// Counts one node; false once the budget is spent.
    #[inline]
    fn tick(&mut self) -> bool {
        if self.aborted {
            return false;
        }
        match self.budget {
            Budget::Nodes(cap) => {
                if self.nodes >= cap {
                    self.aborted = true;
                }
            }
            Budget::Time(limit) => {
                if self.nodes.is_multiple_of(CHECK_INTERVAL) && self.nodes > 0 && self.start.elapsed() >= limit {
                    self.aborted = true;
                }
            }
            Budget::Unlimited => {}
        }
        if !self.aborted {
            self.nodes += 1;
        }
        !self.aborted
    }
}

/// Takes vertices of residual degree at most one while any exist. Returns the
/// taken vertices and the survivors. `in_inc` is updated so that the taken
/// vertices plus the surviving incumbent vertices are never fewer than before.
fn reduce_low_degree(g: &BitGraph, in_inc: &mut [bool]) -> (Vec<usize>, Vec<bool>) {
    let n = g.len();
    let mut alive = vec![true; n];
    let mut degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut queue: VecDeque<usize> = (0..n).filter(|&v| degree[v] <= 1).collect();
    let mut taken = Vec::new();
    while let Some(v) = queue.pop_front() {
        if !alive[v] || degree[v] > 1 {
            continue;
        }
        taken.push(v);
        let mut removed = vec![v];
        removed.extend(g.neighbors(v).filter(|&u| alive[u]));
        for &u in &removed {
            alive[u] = false;
            in_inc[u] = false;
        }
        for &u in &removed {
            for w in g.neighbors(u) {
                if alive[w] {
                    degree[w] -= 1;
                    if degree[w] == 1 {
                        queue.push_back(w);
                    }
                }
            }
        }
    }
    (taken, alive)
}

fn components(g: &BitGraph, alive: &[bool]) -> Vec<Vec<usize>> {
    let n = g.len();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if !alive[s] || seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut head = 0;
        while head < comp.len() {
            let u = comp[head];
            head += 1;
            for w in g.neighbors(u) {
                if alive[w] && !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                }
            }
        }
        out.push(comp);
    }
    out
}

/// Maximum clique search in the complement of the subgraph induced by `comp`.
fn search_component(g: &BitGraph, comp: &[usize], start: Vec<usize>, clock: &mut Clock) -> Vec<usize> {
    let m = comp.len();
    let words = words_for(m);
    // compatibility rows: local u ~ local v iff not adjacent in g
    let mut compat = vec![0u64; m * words];
    for (lu, &u) in comp.iter().enumerate() {
        let row = &mut compat[lu * words..(lu + 1) * words];
        for (lv, &v) in comp.iter().enumerate() {
            if lu != lv && !g.has_edge(u, v) {
                row[lv / 64] |= 1 << (lv % 64);
            }
        }
    }
    let mut local = start.clone();
    for l in local.iter_mut() {
        *l = comp.iter().position(|&c| c == *l).expect("vertex in component");
    }
    let mut search = CliqueSearch {
        words,
        compat,
        best: local,
        current: Vec::new(),
        clock,
    };
    let mut all = vec![0u64; words];
    for v in 0..m {
        all[v / 64] |= 1 << (v % 64);
    }
    search.expand(all);
    search.best.into_iter().map(|l| comp[l]).collect()
}

struct CliqueSearch<'c> {
    words: usize,
    compat: Vec<u64>,
    best: Vec<usize>,
    current: Vec<usize>,
    clock: &'c mut Clock,
}

impl CliqueSearch<'_> {
    #[inline]
    fn compat_row(&self, v: usize) -> &[u64] {
        &self.compat[v * self.words..(v + 1) * self.words]
    }

    /// Greedy sequential coloring of `cands` in bit order. Only vertices whose
    /// class could still lead to an improvement are returned for branching.
    fn color(&self, cands: &[u64]) -> (Vec<usize>, Vec<usize>) {
        let kmin = (self.best.len() + 1).saturating_sub(self.current.len());
        let mut uncolored = cands.to_vec();
        let mut class = vec![0u64; self.words];
        let mut verts = Vec::new();
        let mut colors = Vec::new();
        let mut k = 0;
        let mut first_word = 0;
        loop {
            while first_word < self.words && uncolored[first_word] == 0 {
                first_word += 1;
            }
            if first_word == self.words {
                break;
            }
            k += 1;
            class[first_word..].copy_from_slice(&uncolored[first_word..]);
            for w in first_word..self.words {
                while class[w] != 0 {
                    let v = w * 64 + class[w].trailing_zeros() as usize;
                    class[w] &= class[w] - 1;
                    uncolored[w] &= !(1 << (v % 64));
                    let row = self.compat_row(v);
                    for (c, r) in class[w..].iter_mut().zip(&row[w..]) {
                        *c &= !r;
                    }
                    if k >= kmin {
                        verts.push(v);
                        colors.push(k);
                    }
                }
            }
        }
        (verts, colors)
    }

    fn expand(&mut self, mut cands: Vec<u64>) {
        if !self.clock.tick() {
            return;
        }
        let (verts, colors) = self.color(&cands);
        for idx in (0..verts.len()).rev() {
            if self.current.len() + colors[idx] <= self.best.len() {
                return;
            }
            let v = verts[idx];
            self.current.push(v);
            let next: Vec<u64> = cands
                .iter()
                .zip(self.compat_row(v))
                .map(|(a, b)| a & b)
                .collect();
            if next.iter().all(|&w| w == 0) {
                if self.current.len() > self.best.len() {
                    self.best = self.current.clone();
                }
            } else {
                self.expand(next);
            }
            self.current.pop();
            cands[v / 64] &= !(1 << (v % 64));
            if self.clock.aborted {
                return;
            }
        }
    }
}
