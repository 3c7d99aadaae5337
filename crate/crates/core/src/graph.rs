//! Editor–reviewer bipartite snapshots and their reviewer-reviewer projection.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::corpus::{Corpus, Date, EditorIdx, ReviewerIdx};

/// Undirected simple graph on nodes `0..n` with sorted adjacency lists.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SimpleGraph {
    adj: Vec<Vec<usize>>,
}

impl SimpleGraph {
    pub fn new(n: usize) -> Self {
        SimpleGraph {
            adj: alloc::vec![Vec::new(); n],
        }
    }

    /// Build from an edge list; self-loops and repeated edges are dropped.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = SimpleGraph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    /// Insert an undirected edge. Returns false for self-loops and edges
    /// already present.
    pub fn add_edge(&mut self, u: usize, v: usize) -> bool {
        if u == v {
            return false;
        }
        match self.adj[u].binary_search(&v) {
            Ok(_) => false,
            Err(pos) => {
                self.adj[u].insert(pos, v);
                let pos = self.adj[v].binary_search(&u).unwrap_err();
                self.adj[v].insert(pos, u);
                true
            }
        }
    }

    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (u, list) in self.adj.iter().enumerate() {
            out.extend(list.iter().filter(|&&v| v > u).map(|&v| (u, v)));
        }
        out
    }
}

/// Deduplicated editor–reviewer pairs from assignments dated before a cutoff.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteSnapshot {
    pub cutoff: Option<Date>,
    pub editors: BTreeSet<EditorIdx>,
    pub reviewers: BTreeSet<ReviewerIdx>,
    pub pairs: BTreeSet<(EditorIdx, ReviewerIdx)>,
}

impl BipartiteSnapshot {
    fn from_pairs(cutoff: Option<Date>, pairs: impl IntoIterator<Item = (EditorIdx, ReviewerIdx)>) -> Self {
        let mut snap = BipartiteSnapshot {
            cutoff,
            editors: BTreeSet::new(),
            reviewers: BTreeSet::new(),
            pairs: BTreeSet::new(),
        };
        for (e, r) in pairs {
            snap.editors.insert(e);
            snap.reviewers.insert(r);
            snap.pairs.insert((e, r));
        }
        snap
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

/// Snapshot of every assignment dated strictly before `cutoff`.
pub fn snapshot(corpus: &Corpus, cutoff: Date) -> BipartiteSnapshot {
    let timeline = corpus.assignment_timeline();
    let end = timeline.partition_point(|a| a.date < cutoff);
    BipartiteSnapshot::from_pairs(Some(cutoff), timeline[..end].iter().map(|a| (a.editor, a.reviewer)))
}

/// Snapshot of the full history (no cutoff).
pub fn snapshot_all(corpus: &Corpus) -> BipartiteSnapshot {
    BipartiteSnapshot::from_pairs(
        None,
        corpus.assignment_timeline().iter().map(|a| (a.editor, a.reviewer)),
    )
}

/// Reviewer-reviewer graph: two reviewers are adjacent iff some editor
/// assigned both of them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReviewGraph {
    pub cutoff: Option<Date>,
    /// Reviewer behind each node, ascending.
    pub nodes: Vec<ReviewerIdx>,
    pub graph: SimpleGraph,
    /// Number of distinct shared editors per edge `(u, v)`, `u < v`.
    /// Informational only; the graph itself is unweighted.
    pub shared_editors: BTreeMap<(usize, usize), u32>,
}

impl ReviewGraph {
    pub fn node_of(&self, reviewer: ReviewerIdx) -> Option<usize> {
        self.nodes.binary_search(&reviewer).ok()
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }
}

/// One-mode projection of a snapshot onto its reviewers. Reviewers with no
/// co-assigned partner stay as isolated nodes.
pub fn project(snapshot: &BipartiteSnapshot) -> ReviewGraph {
    let nodes: Vec<ReviewerIdx> = snapshot.reviewers.iter().copied().collect();
    let mut graph = SimpleGraph::new(nodes.len());
    let mut shared_editors = BTreeMap::new();

    let mut by_editor: BTreeMap<EditorIdx, Vec<usize>> = BTreeMap::new();
    for &(e, r) in &snapshot.pairs {
        let node = nodes.binary_search(&r).expect("reviewer in node set");
        by_editor.entry(e).or_default().push(node);
    }
    for members in by_editor.values() {
        for (i, &u) in members.iter().enumerate() {
            for &v in &members[i + 1..] {
                graph.add_edge(u, v);
                *shared_editors.entry((u.min(v), u.max(v))).or_insert(0) += 1;
            }
        }
    }

    ReviewGraph {
        cutoff: snapshot.cutoff,
        nodes,
        graph,
        shared_editors,
    }
}
