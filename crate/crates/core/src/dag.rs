//! Directed acyclic graphs, their reachability relation, and instance generators.
//!
//! Vertices are dense ids `0..n`. Labels are carried for presentation only;
//! every algorithm in the crate works on ids.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bits;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dag {
    labels: Vec<String>,
    /// Sorted and deduplicated.
    edges: Vec<(usize, usize)>,
    succ: Vec<Vec<usize>>,
}

impl Dag {
    /// Builds a DAG on `n` vertices labelled by their ids.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        Self::with_labels((0..n).map(|v| v.to_string()).collect(), edges)
    }

    /// Builds a DAG whose vertex count is `labels.len()`.
    ///
    /// Duplicate edges are dropped. Self-loops, out-of-range endpoints and
    /// cycles are rejected.
    pub fn with_labels(
        labels: Vec<String>,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let n = labels.len();
        let mut edges: Vec<(usize, usize)> = edges.into_iter().collect();
        for &(u, v) in &edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop { vertex: labels[u].clone() });
            }
        }
        edges.sort_unstable();
        edges.dedup();

        let mut succ = vec![Vec::new(); n];
        for &(u, v) in &edges {
            succ[u].push(v);
        }
        let dag = Dag { labels, edges, succ };
        let order = dag.min_id_kahn();
        if order.len() < n {
            // Any vertex left unplaced lies on or behind a cycle.
            let mut placed = vec![false; n];
            for &v in &order {
                placed[v] = true;
            }
            let stuck = (0..n).find(|&v| !placed[v]).unwrap();
            return Err(Error::CycleDetected { vertex: dag.labels[stuck].clone() });
        }
        Ok(dag)
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn successors(&self, v: usize) -> &[usize] {
        &self.succ[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.succ[u].binary_search(&v).is_ok()
    }

    /// Kahn's algorithm, always removing the smallest-id source. Returns fewer
    /// than `n` vertices iff the edge relation has a cycle.
    pub(crate) fn min_id_kahn(&self) -> Vec<usize> {
        let n = self.n();
        let mut indeg = vec![0usize; n];
        for &(_, v) in &self.edges {
            indeg[v] += 1;
        }
        let mut ready: BinaryHeap<Reverse<usize>> =
            (0..n).filter(|&v| indeg[v] == 0).map(Reverse).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(Reverse(u)) = ready.pop() {
            order.push(u);
            for &v in &self.succ[u] {
                indeg[v] -= 1;
                if indeg[v] == 0 {
                    ready.push(Reverse(v));
                }
            }
        }
        order
    }

    /// Serializes to the edge-list format: one line per vertex (fixing id
    /// order on re-parse) followed by one `u v` line per edge.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("# {} vertices, {} edges\n", self.n(), self.edge_count());
        for l in &self.labels {
            out.push_str(l);
            out.push('\n');
        }
        for &(u, v) in &self.edges {
            out.push_str(&format!("{} {}\n", self.labels[u], self.labels[v]));
        }
        out
    }
}

/// Parses the edge-list text format.
///
/// Each non-blank line that does not start with `#` is either `u v` (an edge
/// u→v) or a single token declaring a vertex. Ids follow first appearance.
pub fn parse_edge_list(text: &str) -> Result<Dag> {
    let mut ids: HashMap<&str, usize> = HashMap::new();
    let mut labels: Vec<String> = Vec::new();
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks.as_slice() {
            [v] => {
                intern_label(&mut ids, &mut labels, v);
            }
            [u, v] => {
                if u == v {
                    return Err(Error::SelfLoop { vertex: u.to_string() });
                }
                let a = intern_label(&mut ids, &mut labels, u);
                let b = intern_label(&mut ids, &mut labels, v);
                edges.push((a, b));
            }
            _ => {
                return Err(Error::MalformedLine { line: i + 1, content: raw.to_string() });
            }
        }
    }
    Dag::with_labels(labels, edges)
}

fn intern_label<'a>(ids: &mut HashMap<&'a str, usize>, labels: &mut Vec<String>, tok: &'a str) -> usize {
    let next = ids.len();
    *ids.entry(tok).or_insert_with(|| {
        labels.push(tok.to_string());
        next
    })
}

/// Crown graph: sources a1..ak, sinks b1..bk, edge ai→bj iff i≠j.
pub fn gen_crown(k: usize) -> Dag {
    let labels = (1..=k)
        .map(|i| format!("a{i}"))
        .chain((1..=k).map(|j| format!("b{j}")))
        .collect();
    let edges = (0..k).flat_map(|i| (0..k).filter(move |&j| j != i).map(move |j| (i, k + j)));
    Dag::with_labels(labels, edges).expect("crown is acyclic")
}

pub fn gen_chain(n: usize) -> Dag {
    Dag::new(n, (1..n).map(|v| (v - 1, v))).expect("chain is acyclic")
}

pub fn gen_antichain(n: usize) -> Dag {
    Dag::new(n, []).expect("no edges")
}

/// Product of a `rows`-chain and a `cols`-chain, given by its cover relation.
pub fn gen_grid(rows: usize, cols: usize) -> Dag {
    let id = |r: usize, c: usize| r * cols + c;
    let labels = (0..rows)
        .flat_map(|r| (0..cols).map(move |c| format!("r{r}c{c}")))
        .collect();
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if r + 1 < rows {
                edges.push((id(r, c), id(r + 1, c)));
            }
            if c + 1 < cols {
                edges.push((id(r, c), id(r, c + 1)));
            }
        }
    }
    Dag::with_labels(labels, edges).expect("grid is acyclic")
}

/// Each pair i<j gets the edge i→j independently with probability `p`.
///
/// # Panics
/// If `p` is not in `[0, 1]`.
pub fn gen_random_dag(n: usize, p: f64, seed: u64) -> Dag {
    assert!((0.0..=1.0).contains(&p), "edge probability {p} outside [0, 1]");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.random_bool(p) {
                edges.push((i, j));
            }
        }
    }
    Dag::new(n, edges).expect("forward edges are acyclic")
}

/// Transitive closure of a DAG, i.e. the partial order it induces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reachability {
    n: usize,
    /// Row `u` has bit `v` set iff a nonempty path u→v exists.
    rows: Vec<Vec<u64>>,
    closure_edge_count: usize,
    /// Unordered incomparable pairs `(u, v)` with `u < v`, in lexicographic order.
    inc_pairs: Vec<(usize, usize)>,
}

impl Reachability {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Whether a nonempty directed path u→v exists.
    #[inline]
    pub fn reaches(&self, u: usize, v: usize) -> bool {
        bits::get(&self.rows[u], v)
    }

    #[inline]
    pub fn comparable(&self, u: usize, v: usize) -> bool {
        self.reaches(u, v) || self.reaches(v, u)
    }

    /// |E*|.
    pub fn closure_edge_count(&self) -> usize {
        self.closure_edge_count
    }

    pub fn inc_pairs(&self) -> &[(usize, usize)] {
        &self.inc_pairs
    }

    pub fn closure_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(u, row)| bits::ones(row).map(move |v| (u, v)))
    }

    pub(crate) fn row(&self, u: usize) -> &[u64] {
        &self.rows[u]
    }

    /// Predecessor bitsets (column view of the closure).
    pub(crate) fn predecessor_rows(&self) -> Vec<Vec<u64>> {
        let mut preds = vec![vec![0u64; bits::words_for(self.n)]; self.n];
        for (u, v) in self.closure_edges() {
            bits::set(&mut preds[v], u);
        }
        preds
    }
}

pub fn transitive_closure(g: &Dag) -> Reachability {
    let n = g.n();
    let words = bits::words_for(n);
    let mut rows = vec![vec![0u64; words]; n];
    // Sinks first, so every successor row is final when read.
    for &u in g.min_id_kahn().iter().rev() {
        let mut row = vec![0u64; words];
        for &v in g.successors(u) {
            bits::set(&mut row, v);
            bits::or_assign(&mut row, &rows[v]);
        }
        rows[u] = row;
    }
    let closure_edge_count = rows.iter().map(|r| bits::count(r)).sum();
    let mut inc_pairs = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if !bits::get(&rows[u], v) && !bits::get(&rows[v], u) {
                inc_pairs.push((u, v));
            }
        }
    }
    Reachability { n, rows, closure_edge_count, inc_pairs }
}

/// inc(G) = n(n−1)/2 − |E*|.
pub fn count_incomparable(r: &Reachability) -> usize {
    r.n * r.n.saturating_sub(1) / 2 - r.closure_edge_count
}
