//! The directed program graph induced by a catalog: one edge per catalog
//! entry that changes a program, restricted to programs of at most
//! `max_tokens` tokens. Nodes are interned on discovery and successor lists
//! are computed once.

use std::collections::HashMap;

use crate::lab::Lab;
use crate::lang::Program;
use crate::transform::{Catalog, Transformation};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Edge {
    pub to: u32,
    /// Index into [`ProgramGraph::levels`].
    pub level: u8,
    /// Index into [`ProgramGraph::entries`].
    pub entry: u16,
}

pub struct ProgramGraph<'a> {
    lab: &'a Lab,
    /// Catalog transformations sorted by encoding.
    entries: Vec<Transformation>,
    entry_level: Vec<u8>,
    /// Distinct costs, ascending.
    levels: Vec<u32>,
    max_tokens: usize,
    max_nodes: Option<usize>,
    nodes: Vec<Program>,
    ids: HashMap<Program, u32>,
    succ: Vec<Option<Box<[Edge]>>>,
    truncated: bool,
}

impl<'a> ProgramGraph<'a> {
    pub fn new(lab: &'a Lab, catalog: &Catalog, max_tokens: usize, max_nodes: Option<usize>) -> Self {
        let mut entries: Vec<(crate::transform::Bits, Transformation, u32)> = catalog
            .entries()
            .iter()
            .map(|e| (e.transformation.encode(), e.transformation.clone(), e.complexity.0))
            .collect();
        entries.sort_by(|a, b| a.0.cmp(&b.0));
        let levels: Vec<u32> = catalog.complexity_levels().iter().map(|c| c.0).collect();
        let entry_level = entries
            .iter()
            .map(|(_, _, c)| levels.binary_search(c).unwrap() as u8)
            .collect();
        ProgramGraph {
            lab,
            entries: entries.into_iter().map(|(_, t, _)| t).collect(),
            entry_level,
            levels,
            max_tokens,
            max_nodes,
            nodes: Vec::new(),
            ids: HashMap::new(),
            succ: Vec::new(),
            truncated: false,
        }
    }

    pub fn lab(&self) -> &'a Lab {
        self.lab
    }

    pub fn levels(&self) -> &[u32] {
        &self.levels
    }

    pub fn entries(&self) -> &[Transformation] {
        &self.entries
    }

    pub fn max_tokens(&self) -> usize {
        self.max_tokens
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// True once the node budget stopped the graph from growing.
    pub fn truncated(&self) -> bool {
        self.truncated
    }

    pub fn program(&self, id: u32) -> &Program {
        &self.nodes[id as usize]
    }

    pub fn id_of(&self, p: &Program) -> Option<u32> {
        self.ids.get(p).copied()
    }

    pub fn intern(&mut self, p: &Program) -> Option<u32> {
        if let Some(&id) = self.ids.get(p) {
            return Some(id);
        }
        if p.token_count() > self.max_tokens {
            return None;
        }
        if self.max_nodes.is_some_and(|max| self.nodes.len() >= max) {
            self.truncated = true;
            return None;
        }
        let id = self.nodes.len() as u32;
        self.nodes.push(p.clone());
        self.ids.insert(p.clone(), id);
        self.succ.push(None);
        Some(id)
    }

    /// Computes the successors of `id` if not done yet.
    pub fn expand(&mut self, id: u32) {
        if self.succ[id as usize].is_some() {
            return;
        }
        let p = self.nodes[id as usize].clone();
        let mut edges = Vec::new();
        for i in 0..self.entries.len() {
            let image = self.entries[i].apply(self.lab, &p);
            if image == p {
                continue;
            }
            if let Some(to) = self.intern(&image) {
                edges.push(Edge {
                    to,
                    level: self.entry_level[i],
                    entry: i as u16,
                });
            }
        }
        self.succ[id as usize] = Some(edges.into_boxed_slice());
    }

    /// Successors of an expanded node.
    pub fn edges(&self, id: u32) -> &[Edge] {
        self.succ[id as usize]
            .as_deref()
            .expect("node expanded before its edges are read")
    }

    pub fn is_expanded(&self, id: u32) -> bool {
        self.succ[id as usize].is_some()
    }

    /// Interns and expands every node reachable from the current nodes.
    pub fn close(&mut self) {
        let mut i = 0;
        while i < self.nodes.len() {
            self.expand(i as u32);
            i += 1;
        }
    }

    /// Reverse adjacency of a fully expanded graph, as CSR offsets + edges
    /// whose `to` field holds the predecessor.
    pub fn reverse(&self) -> (Vec<u32>, Vec<Edge>) {
        let n = self.nodes.len();
        let mut counts = vec![0u32; n + 1];
        for u in 0..n {
            for e in self.edges(u as u32) {
                counts[e.to as usize + 1] += 1;
            }
        }
        for i in 0..n {
            counts[i + 1] += counts[i];
        }
        let mut fill = counts.clone();
        let mut rev = vec![
            Edge {
                to: 0,
                level: 0,
                entry: 0
            };
            counts[n] as usize
        ];
        for u in 0..n {
            for e in self.edges(u as u32) {
                let slot = &mut fill[e.to as usize];
                rev[*slot as usize] = Edge {
                    to: u as u32,
                    level: e.level,
                    entry: e.entry,
                };
                *slot += 1;
            }
        }
        (counts, rev)
    }
}
