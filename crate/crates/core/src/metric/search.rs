//! Bottleneck (minimax) search over a [`ProgramGraph`].
//!
//! Per-pair queries run one breadth-first search per cost level `K`, using
//! only edges of cost at most `K`; the first level at which the target shows
//! up is the distance. Breadth-first order with edges visited in encoding
//! order yields the shortest witness and, among those, the one whose step
//! encodings are lexicographically least.

use std::collections::{HashMap, VecDeque};

use super::graph::{Edge, ProgramGraph};

/// A witness path: `(entry, node)` for each step after the source.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Found {
    pub level: usize,
    pub path: Vec<(u16, u32)>,
    /// No cheaper level was cut short by the node budget.
    pub exact: bool,
}

struct LevelBfs {
    parent: HashMap<u32, (u32, u16)>,
    order: Vec<u32>,
    /// Lowest level among skipped edges into unvisited nodes.
    next_level: Option<usize>,
}

fn bfs_at_level(
    g: &mut ProgramGraph<'_>,
    source: u32,
    level: usize,
    max_len: Option<usize>,
    target: Option<u32>,
) -> LevelBfs {
    let mut parent: HashMap<u32, (u32, u16)> = HashMap::new();
    let mut order = vec![source];
    let mut next_level: Option<usize> = None;
    let mut queue = VecDeque::from([(source, 0usize)]);
    parent.insert(source, (source, u16::MAX));
    'outer: while let Some((u, depth)) = queue.pop_front() {
        if max_len.is_some_and(|max| depth >= max) {
            continue;
        }
        g.expand(u);
        let edges: Vec<Edge> = g.edges(u).to_vec();
        for e in edges {
            if parent.contains_key(&e.to) {
                continue;
            }
            if e.level as usize > level {
                let l = e.level as usize;
                next_level = Some(next_level.map_or(l, |n| n.min(l)));
                continue;
            }
            parent.insert(e.to, (u, e.entry));
            order.push(e.to);
            if Some(e.to) == target {
                break 'outer;
            }
            queue.push_back((e.to, depth + 1));
        }
    }
    LevelBfs {
        parent,
        order,
        next_level,
    }
}

fn reconstruct(parent: &HashMap<u32, (u32, u16)>, source: u32, target: u32) -> Vec<(u16, u32)> {
    let mut path = Vec::new();
    let mut v = target;
    while v != source {
        let (u, entry) = parent[&v];
        path.push((entry, v));
        v = u;
    }
    path.reverse();
    path
}

/// Least level at which `target` is reachable from `source`, with the
/// tie-broken witness.
pub fn search_to(
    g: &mut ProgramGraph<'_>,
    source: u32,
    target: u32,
    max_len: Option<usize>,
) -> Option<Found> {
    if source == target {
        return Some(Found {
            level: 0,
            path: Vec::new(),
            exact: true,
        });
    }
    let mut exact = true;
    let mut level = 0;
    while level < g.levels().len() {
        let bfs = bfs_at_level(g, source, level, max_len, Some(target));
        if bfs.parent.contains_key(&target) {
            return Some(Found {
                level,
                path: reconstruct(&bfs.parent, source, target),
                exact,
            });
        }
        exact &= !g.truncated();
        level = bfs.next_level?.max(level + 1);
    }
    None
}

/// Level of every node reachable from `source` (source at level 0).
pub fn search_all(
    g: &mut ProgramGraph<'_>,
    source: u32,
    max_len: Option<usize>,
) -> HashMap<u32, usize> {
    let mut dist = HashMap::from([(source, 0usize)]);
    let mut level = 0;
    while level < g.levels().len() {
        let bfs = bfs_at_level(g, source, level, max_len, None);
        for v in bfs.order {
            dist.entry(v).or_insert(level);
        }
        match bfs.next_level {
            Some(l) => level = l.max(level + 1),
            None => break,
        }
    }
    dist
}

pub const UNREACHED: u8 = u8::MAX;
pub const NO_PARENT: u32 = u32::MAX;

/// Reusable buffers for single-source bottleneck rows over a fully expanded
/// graph of `n` nodes.
pub struct RowScratch {
    /// Level index per node, [`UNREACHED`] when not reached.
    pub dist: Vec<u8>,
    /// Node whose relaxation set the final level.
    pub parent: Vec<u32>,
    /// Settling order; a parent always settles before its child.
    pub rank: Vec<u32>,
    /// Reached nodes in settling order.
    pub touched: Vec<u32>,
    buckets: Vec<Vec<u32>>,
}

impl RowScratch {
    pub fn new(n: usize) -> Self {
        RowScratch {
            dist: vec![UNREACHED; n],
            parent: vec![NO_PARENT; n],
            rank: vec![u32::MAX; n],
            touched: Vec::new(),
            buckets: Vec::new(),
        }
    }

    /// Bucketed bottleneck Dijkstra from `source` along `adjacency`.
    /// Clears the previous row first.
    pub fn run<'e>(&mut self, levels: usize, source: u32, adjacency: impl Fn(u32) -> &'e [Edge]) {
        self.reset();
        self.buckets.resize_with(levels, Vec::new);
        self.dist[source as usize] = 0;
        self.buckets[0].push(source);
        for b in 0..levels {
            while let Some(u) = self.buckets[b].pop() {
                if self.dist[u as usize] as usize != b || self.rank[u as usize] != u32::MAX {
                    continue;
                }
                self.rank[u as usize] = self.touched.len() as u32;
                self.touched.push(u);
                for e in adjacency(u) {
                    let nb = b.max(e.level as usize) as u8;
                    let v = e.to as usize;
                    if nb < self.dist[v] {
                        self.dist[v] = nb;
                        self.parent[v] = u;
                        self.buckets[nb as usize].push(e.to);
                    }
                }
            }
        }
    }

    pub fn reset(&mut self) {
        for &v in &self.touched {
            self.dist[v as usize] = UNREACHED;
            self.parent[v as usize] = NO_PARENT;
            self.rank[v as usize] = u32::MAX;
        }
        self.touched.clear();
    }
}
