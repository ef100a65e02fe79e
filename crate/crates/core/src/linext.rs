//! Linear extensions of a reachability poset and the linear extension graph.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use num_bigint::BigUint;

use crate::bits;
use crate::dag::Reachability;
use crate::drawing::TopoOrder;
use crate::error::{Error, Result};

/// Default bound on enumerated extensions and on downset-lattice states.
pub const DEFAULT_CAP: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionSet {
    extensions: Vec<TopoOrder>,
    truncated: bool,
}

impl ExtensionSet {
    /// Extensions in lexicographic order of their vertex sequences.
    pub fn extensions(&self) -> &[TopoOrder] {
        &self.extensions
    }

    pub fn len(&self) -> usize {
        self.extensions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.extensions.is_empty()
    }

    pub fn is_truncated(&self) -> bool {
        self.truncated
    }

    pub fn get(&self, i: usize) -> Option<&TopoOrder> {
        self.extensions.get(i)
    }
}

struct Enumerator<'a> {
    succ: &'a [Vec<usize>],
    pending: Vec<usize>,
    placed: Vec<bool>,
    prefix: Vec<usize>,
    out: Vec<TopoOrder>,
    cap: usize,
    truncated: bool,
}

impl Enumerator<'_> {
    /// Returns false once the cap stops the walk.
    fn walk(&mut self) -> bool {
        let n = self.placed.len();
        if self.prefix.len() == n {
            if self.out.len() >= self.cap {
                self.truncated = true;
                return false;
            }
            self.out.push(TopoOrder::from_sequence_unchecked(self.prefix.clone()));
            return true;
        }
        for v in 0..n {
            if self.placed[v] || self.pending[v] > 0 {
                continue;
            }
            self.placed[v] = true;
            self.prefix.push(v);
            for &w in &self.succ[v] {
                self.pending[w] -= 1;
            }
            let go_on = self.walk();
            for &w in &self.succ[v] {
                self.pending[w] += 1;
            }
            self.prefix.pop();
            self.placed[v] = false;
            if !go_on {
                return false;
            }
        }
        true
    }
}

/// Lists all linear extensions by repeatedly choosing a minimal element,
/// smallest id first, so the output is lexicographically sorted. Stops with
/// `truncated` set when more than `cap` extensions exist.
pub fn enumerate_extensions(r: &Reachability, cap: usize) -> ExtensionSet {
    let n = r.n();
    let succ: Vec<Vec<usize>> = (0..n).map(|u| bits::ones(r.row(u)).collect()).collect();
    let mut pending = vec![0usize; n];
    for s in &succ {
        for &v in s {
            pending[v] += 1;
        }
    }
    let mut e = Enumerator {
        succ: &succ,
        pending,
        placed: vec![false; n],
        prefix: Vec::with_capacity(n),
        out: Vec::new(),
        cap,
        truncated: false,
    };
    e.walk();
    ExtensionSet { extensions: e.out, truncated: e.truncated }
}

/// Counts linear extensions as maximal chains of the downset lattice.
///
/// Downsets are processed by size; each one passes its count on to every
/// downset obtained by adding one element whose predecessors are all inside.
/// Fails once more than `cap` distinct downsets have been reached.
pub fn count_extensions(r: &Reachability, cap: usize) -> Result<BigUint> {
    let n = r.n();
    let words = bits::words_for(n);
    let preds = r.predecessor_rows();
    let mut layer: HashMap<Vec<u64>, BigUint> = HashMap::new();
    layer.insert(vec![0u64; words], BigUint::from(1u32));
    let mut states = 1usize;
    for _ in 0..n {
        let mut next: HashMap<Vec<u64>, BigUint> = HashMap::new();
        for (down, count) in &layer {
            for v in 0..n {
                if bits::get(down, v) || !bits::is_subset(&preds[v], down) {
                    continue;
                }
                let mut up = down.clone();
                bits::set(&mut up, v);
                *next.entry(up).or_default() += count;
            }
        }
        states += next.len();
        if states > cap {
            return Err(Error::StateCapExceeded { cap });
        }
        layer = next;
    }
    Ok(layer.into_values().next().unwrap_or_default())
}

/// Number of pairs the two extensions order oppositely.
pub fn distance(l1: &TopoOrder, l2: &TopoOrder, r: &Reachability) -> Result<usize> {
    l1.check_poset(r)?;
    l2.check_poset(r)?;
    let n = r.n();
    let mut d = 0;
    for u in 0..n {
        for v in u + 1..n {
            if l1.precedes(u, v) != l2.precedes(u, v) {
                d += 1;
            }
        }
    }
    Ok(d)
}

/// Extensions joined whenever they differ by one adjacent transposition.
#[derive(Debug, Clone)]
pub struct LinExtGraph {
    nodes: ExtensionSet,
    adjacency: Vec<Vec<usize>>,
    edge_count: usize,
}

impl LinExtGraph {
    pub fn nodes(&self) -> &ExtensionSet {
        &self.nodes
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.adjacency[i]
    }

    /// Edges `(i, j)` with `i < j`, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(i, adj)| adj.iter().filter(move |&&j| i < j).map(move |&j| (i, j)))
    }

    /// BFS hop counts from `source`; `None` for unreachable nodes.
    pub fn bfs_distances(&self, source: usize) -> Result<Vec<Option<usize>>> {
        let len = self.node_count();
        if source >= len {
            return Err(Error::IndexOutOfRange { index: source, len });
        }
        let mut dist = vec![None; len];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for &v in &self.adjacency[u] {
                if dist[v].is_none() {
                    dist[v] = Some(du + 1);
                    queue.push_back(v);
                }
            }
        }
        Ok(dist)
    }

    pub fn is_connected(&self) -> bool {
        self.node_count() == 0 || self.bfs_distances(0).unwrap().iter().all(Option::is_some)
    }

    /// `i j` per edge.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for (i, j) in self.edges() {
            writeln!(out, "{i} {j}").unwrap();
        }
        out
    }

    /// `index extension` per node, the extension written as its vertex labels
    /// concatenated in order. Labels are separated by `,` unless all of them
    /// are single characters.
    pub fn to_node_table(&self, labels: &[String]) -> String {
        let sep = if labels.iter().all(|l| l.chars().count() == 1) { "" } else { "," };
        let mut out = String::new();
        for (i, ext) in self.nodes.extensions().iter().enumerate() {
            writeln!(out, "{i} {}", ext.labelled(labels).join(sep)).unwrap();
        }
        out
    }
}

pub fn build_linext_graph(e: &ExtensionSet) -> Result<LinExtGraph> {
    if e.is_truncated() {
        return Err(Error::TruncatedInput);
    }
    let index: HashMap<&[usize], usize> =
        e.extensions.iter().enumerate().map(|(i, l)| (l.sequence(), i)).collect();
    let mut adjacency = vec![Vec::new(); e.len()];
    let mut edge_count = 0;
    let mut buf = Vec::new();
    for (i, l) in e.extensions.iter().enumerate() {
        buf.clear();
        buf.extend_from_slice(l.sequence());
        for p in 0..buf.len().saturating_sub(1) {
            buf.swap(p, p + 1);
            if let Some(&j) = index.get(buf.as_slice()) {
                adjacency[i].push(j);
                if i < j {
                    edge_count += 1;
                }
            }
            buf.swap(p, p + 1);
        }
    }
    for adj in &mut adjacency {
        adj.sort_unstable();
    }
    Ok(LinExtGraph { nodes: e.clone(), adjacency, edge_count })
}

pub fn graph_distance(g: &LinExtGraph, i: usize, j: usize) -> Result<usize> {
    let len = g.node_count();
    if j >= len {
        return Err(Error::IndexOutOfRange { index: j, len });
    }
    g.bfs_distances(i)?[j].ok_or(Error::Disconnected { from: i, to: j })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dag::{gen_antichain, gen_chain, gen_crown, gen_random_dag, transitive_closure};

    fn extensions_by_filter(r: &Reachability) -> Vec<Vec<usize>> {
        let n = r.n();
        let mut out = Vec::new();
        let mut perm: Vec<usize> = (0..n).collect();
        permute(&mut perm, 0, &mut |p| {
            let ok = (0..n).all(|i| (i + 1..n).all(|j| !r.reaches(p[j], p[i])));
            if ok {
                out.push(p.to_vec());
            }
        });
        out.sort();
        out
    }

    fn permute(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
        if k == p.len() {
            f(p);
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            permute(p, k + 1, f);
            p.swap(k, i);
        }
    }

    #[test]
    fn chain_and_antichain_counts() {
        let chain = transitive_closure(&gen_chain(5));
        assert_eq!(enumerate_extensions(&chain, DEFAULT_CAP).len(), 1);
        assert_eq!(count_extensions(&chain, DEFAULT_CAP).unwrap(), BigUint::from(1u32));

        let anti3 = transitive_closure(&gen_antichain(3));
        let e = enumerate_extensions(&anti3, DEFAULT_CAP);
        assert_eq!(e.len(), 6);
        assert!(!e.is_truncated());
        let anti4 = transitive_closure(&gen_antichain(4));
        assert_eq!(count_extensions(&anti4, DEFAULT_CAP).unwrap(), BigUint::from(24u32));
    }

    #[test]
    fn enumeration_is_sorted_and_matches_filter() {
        for seed in 0..60u64 {
            let n = (seed % 7) as usize;
            let g = gen_random_dag(n, 0.35, seed);
            let r = transitive_closure(&g);
            let e = enumerate_extensions(&r, DEFAULT_CAP);
            let got: Vec<Vec<usize>> = e.extensions().iter().map(|l| l.sequence().to_vec()).collect();
            assert_eq!(got, extensions_by_filter(&r), "seed {seed}");
        }
    }

    #[test]
    fn truncation_flag() {
        let r = transitive_closure(&gen_antichain(4));
        let e = enumerate_extensions(&r, 24);
        assert!(!e.is_truncated());
        assert_eq!(e.len(), 24);
        let e = enumerate_extensions(&r, 5);
        assert!(e.is_truncated());
        assert_eq!(e.len(), 5);
        assert_eq!(build_linext_graph(&e).unwrap_err(), Error::TruncatedInput);
    }

    #[test]
    fn state_cap() {
        // 2^10 downsets.
        let r = transitive_closure(&gen_antichain(10));
        assert_eq!(count_extensions(&r, 1000), Err(Error::StateCapExceeded { cap: 1000 }));
        assert_eq!(count_extensions(&r, 1024).unwrap(), BigUint::from(3_628_800u32));
    }

    #[test]
    fn counting_handles_large_totals() {
        // Two disjoint 40-chains interleave in C(80, 40) > 2^64 ways.
        let edges = (1..40).flat_map(|i| [(i - 1, i), (40 + i - 1, 40 + i)]);
        let g = crate::dag::Dag::new(80, edges).unwrap();
        let r = transitive_closure(&g);
        let num: BigUint = (41..=80u32).map(BigUint::from).product();
        let den: BigUint = (1..=40u32).map(BigUint::from).product();
        assert_eq!(count_extensions(&r, DEFAULT_CAP).unwrap(), num / den);
    }

    #[test]
    fn empty_poset() {
        let r = transitive_closure(&gen_chain(0));
        let e = enumerate_extensions(&r, DEFAULT_CAP);
        assert_eq!(e.len(), 1);
        assert_eq!(count_extensions(&r, DEFAULT_CAP).unwrap(), BigUint::from(1u32));
    }

    #[test]
    fn distance_examples() {
        let anti = transitive_closure(&gen_antichain(3));
        let id = TopoOrder::from_sequence(vec![0, 1, 2]).unwrap();
        let rev = TopoOrder::from_sequence(vec![2, 1, 0]).unwrap();
        assert_eq!(distance(&id, &id, &anti).unwrap(), 0);
        assert_eq!(distance(&id, &rev, &anti).unwrap(), 3);

        let crown = transitive_closure(&gen_crown(3));
        let l1 = TopoOrder::from_sequence(vec![0, 1, 5, 2, 4, 3]).unwrap();
        let l2 = TopoOrder::from_sequence(vec![2, 1, 3, 0, 4, 5]).unwrap();
        assert_eq!(distance(&l1, &l2, &crown).unwrap(), 8);

        let chain = transitive_closure(&gen_chain(3));
        assert!(matches!(distance(&id, &rev, &chain), Err(Error::InvalidOrder(_))));
    }

    #[test]
    fn small_graphs() {
        let g = build_linext_graph(&enumerate_extensions(&transitive_closure(&gen_chain(4)), 10))
            .unwrap();
        assert_eq!((g.node_count(), g.edge_count()), (1, 0));
        let g =
            build_linext_graph(&enumerate_extensions(&transitive_closure(&gen_antichain(2)), 10))
                .unwrap();
        assert_eq!((g.node_count(), g.edge_count()), (2, 1));
        assert_eq!(graph_distance(&g, 0, 1).unwrap(), 1);
        assert_eq!(graph_distance(&g, 1, 1).unwrap(), 0);
        assert_eq!(graph_distance(&g, 0, 2), Err(Error::IndexOutOfRange { index: 2, len: 2 }));
        assert_eq!(graph_distance(&g, 7, 0), Err(Error::IndexOutOfRange { index: 7, len: 2 }));
    }

    #[test]
    fn crown_graph_size() {
        let r = transitive_closure(&gen_crown(3));
        let e = enumerate_extensions(&r, DEFAULT_CAP);
        assert_eq!(count_extensions(&r, DEFAULT_CAP).unwrap(), BigUint::from(e.len()));
        let g = build_linext_graph(&e).unwrap();
        // Brute-force values for the standard crown.
        assert_eq!((g.node_count(), g.edge_count()), (48, 96));
        assert!(g.is_connected());
    }

    #[test]
    fn export_formats() {
        let dag = gen_antichain(2);
        let g = build_linext_graph(&enumerate_extensions(&transitive_closure(&dag), 10)).unwrap();
        assert_eq!(g.to_edge_list(), "0 1\n");
        assert_eq!(g.to_node_table(dag.labels()), "0 01\n1 10\n");
        let crown = gen_crown(2);
        let g = build_linext_graph(&enumerate_extensions(&transitive_closure(&crown), 100))
            .unwrap();
        assert!(g.to_node_table(crown.labels()).starts_with("0 a1,a2,b1,b2\n"));
    }
}
