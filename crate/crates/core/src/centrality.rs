//! Structural node measures on an undirected simple graph: degree,
//! betweenness, closeness, local clustering and PageRank.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::graph::SimpleGraph;

pub fn degree(graph: &SimpleGraph) -> Vec<usize> {
    (0..graph.node_count()).map(|v| graph.degree(v)).collect()
}

/// Exact shortest-path betweenness (Brandes), endpoints excluded,
/// normalized by `(n-1)(n-2)/2` unordered pairs. All zeros for `n < 3`.
pub fn betweenness(graph: &SimpleGraph) -> Vec<f64> {
    let n = graph.node_count();
    let mut scores = vec![0.0; n];
    if n < 3 {
        return scores;
    }

    let mut stack = Vec::with_capacity(n);
    let mut queue = VecDeque::with_capacity(n);
    let mut preds: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut sigma = vec![0.0f64; n];
    let mut dist = vec![usize::MAX; n];
    let mut delta = vec![0.0f64; n];

    for s in 0..n {
        for v in 0..n {
            preds[v].clear();
            sigma[v] = 0.0;
            dist[v] = usize::MAX;
            delta[v] = 0.0;
        }
        sigma[s] = 1.0;
        dist[s] = 0;
        queue.push_back(s);
        while let Some(v) = queue.pop_front() {
            stack.push(v);
            for &w in graph.neighbors(v) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
                if dist[w] == dist[v] + 1 {
                    sigma[w] += sigma[v];
                    preds[w].push(v);
                }
            }
        }
        while let Some(w) = stack.pop() {
            for &v in &preds[w] {
                delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
            }
            if w != s {
                scores[w] += delta[w];
            }
        }
    }

    // each unordered pair was counted from both endpoints
    let scale = 1.0 / ((n - 1) * (n - 2)) as f64;
    for s in &mut scores {
        *s *= scale;
    }
    scores
}

/// Component-scaled closeness:
/// `((r-1)/(n-1)) * ((r-1) / sum of distances to reachable nodes)`,
/// where `r` is the size of the node's component. Reduces to
/// `(n-1)/sum` on connected graphs; isolated nodes get 0.
pub fn closeness(graph: &SimpleGraph) -> Vec<f64> {
    let n = graph.node_count();
    let mut out = vec![0.0; n];
    if n < 2 {
        return out;
    }
    let mut dist = vec![usize::MAX; n];
    let mut queue = VecDeque::with_capacity(n);
    for s in 0..n {
        dist.iter_mut().for_each(|d| *d = usize::MAX);
        dist[s] = 0;
        queue.push_back(s);
        let mut reached = 0usize;
        let mut total = 0usize;
        while let Some(v) = queue.pop_front() {
            reached += 1;
            total += dist[v];
            for &w in graph.neighbors(v) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        if total > 0 {
            let r1 = (reached - 1) as f64;
            out[s] = (r1 / (n - 1) as f64) * (r1 / total as f64);
        }
    }
    out
}

/// Local clustering coefficient; 0 for nodes of degree below 2.
pub fn clustering(graph: &SimpleGraph) -> Vec<f64> {
    let n = graph.node_count();
    let mut mark = vec![false; n];
    let mut out = vec![0.0; n];
    for v in 0..n {
        let nbrs = graph.neighbors(v);
        let k = nbrs.len();
        if k < 2 {
            continue;
        }
        for &u in nbrs {
            mark[u] = true;
        }
        let mut links = 0usize;
        for &u in nbrs {
            links += graph.neighbors(u).iter().filter(|&&w| mark[w]).count();
        }
        for &u in nbrs {
            mark[u] = false;
        }
        // each neighbor-neighbor edge was seen from both sides
        out[v] = links as f64 / (k * (k - 1)) as f64;
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PageRankConfig {
    pub damping: f64,
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for PageRankConfig {
    fn default() -> Self {
        PageRankConfig {
            damping: 0.85,
            tol: 1e-9,
            max_iter: 200,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PageRank {
    pub scores: Vec<f64>,
    pub iterations: usize,
    pub converged: bool,
}

/// One damped power-iteration step. Edges are walked in both directions;
/// the mass of degree-0 nodes is spread uniformly.
pub fn pagerank_step(graph: &SimpleGraph, damping: f64, x: &[f64]) -> Vec<f64> {
    let n = graph.node_count();
    let nf = n as f64;
    let dangling: f64 = (0..n).filter(|&v| graph.degree(v) == 0).map(|v| x[v]).sum();
    let base = (1.0 - damping) / nf + damping * dangling / nf;
    (0..n)
        .map(|v| {
            let inflow: f64 = graph
                .neighbors(v)
                .iter()
                .map(|&u| x[u] / graph.degree(u) as f64)
                .sum();
            base + damping * inflow
        })
        .collect()
}

/// PageRank by power iteration until the L1 change drops below `tol` or
/// `max_iter` steps have run.
pub fn pagerank(graph: &SimpleGraph, config: &PageRankConfig) -> PageRank {
    let n = graph.node_count();
    if n == 0 {
        return PageRank {
            scores: Vec::new(),
            iterations: 0,
            converged: true,
        };
    }
    let mut x = vec![1.0 / n as f64; n];
    let mut iterations = 0;
    let mut converged = false;
    while iterations < config.max_iter {
        let next = pagerank_step(graph, config.damping, &x);
        iterations += 1;
        let change: f64 = next.iter().zip(&x).map(|(a, b)| libm::fabs(a - b)).sum();
        x = next;
        if change < config.tol {
            converged = true;
            break;
        }
    }
    PageRank {
        scores: x,
        iterations,
        converged,
    }
}

/// All five measures for every node of a graph.
#[derive(Clone, Debug, PartialEq)]
pub struct CentralityTable {
    pub degree: Vec<usize>,
    pub betweenness: Vec<f64>,
    pub closeness: Vec<f64>,
    pub clustering: Vec<f64>,
    pub pagerank: Vec<f64>,
    pub pagerank_converged: bool,
}

impl CentralityTable {
    pub fn compute(graph: &SimpleGraph, pagerank_config: &PageRankConfig) -> Self {
        let pr = pagerank(graph, pagerank_config);
        CentralityTable {
            degree: degree(graph),
            betweenness: betweenness(graph),
            closeness: closeness(graph),
            clustering: clustering(graph),
            pagerank: pr.scores,
            pagerank_converged: pr.converged,
        }
    }

    pub fn len(&self) -> usize {
        self.degree.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degree.is_empty()
    }
}
