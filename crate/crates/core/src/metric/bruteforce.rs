//! Exhaustive oracle: every chain of at most `max_len` catalog steps.
//!
//! For each threshold `T` (ascending catalog cost) the chains using only
//! steps of cost `≤ T` are unrolled layer by layer; layer `k` keeps, per
//! program, the lexicographically least step sequence of length exactly `k`
//! reaching it. The first threshold at which the target appears is the
//! minimax value. Applications are memoised for the lifetime of a
//! [`BruteForce`]; nothing is shared with the graph search.

use std::collections::{BTreeMap, HashMap, HashSet};

use super::{Chain, DistanceResult, ResolvedBounds, Status};
use crate::lab::Lab;
use crate::lang::Program;
use crate::transform::{Bits, Catalog, ComplexityBits, Transformation};

/// Reusable oracle; keeps its memo of images between queries.
pub struct BruteForce<'a> {
    lab: &'a Lab,
    steps: Vec<(Bits, Transformation, u32)>,
    max_tokens: Option<usize>,
    ids: HashMap<Program, u32>,
    nodes: Vec<Program>,
    fits: Vec<bool>,
    memo: Vec<Option<Box<[u32]>>>,
    expanded: usize,
}

impl<'a> BruteForce<'a> {
    pub fn new(lab: &'a Lab, cat: &Catalog, max_tokens: Option<usize>) -> Self {
        let mut steps: Vec<_> = cat
            .entries()
            .iter()
            .map(|e| (e.transformation.encode(), e.transformation.clone(), e.complexity.0))
            .collect();
        steps.sort_by(|a, b| a.0.cmp(&b.0));
        BruteForce {
            lab,
            steps,
            max_tokens,
            ids: HashMap::new(),
            nodes: Vec::new(),
            fits: Vec::new(),
            memo: Vec::new(),
            expanded: 0,
        }
    }

    fn thresholds(&self) -> Vec<u32> {
        let mut t: Vec<u32> = self.steps.iter().map(|s| s.2).collect();
        t.sort_unstable();
        t.dedup();
        t
    }

    fn intern(&mut self, p: &Program) -> u32 {
        if let Some(&id) = self.ids.get(p) {
            return id;
        }
        let id = self.nodes.len() as u32;
        self.ids.insert(p.clone(), id);
        self.fits.push(self.max_tokens.is_none_or(|max| p.token_count() <= max));
        self.nodes.push(p.clone());
        self.memo.push(None);
        id
    }

    /// Images of node `u` under every step, in step order.
    fn images(&mut self, u: u32) -> Box<[u32]> {
        if let Some(imgs) = &self.memo[u as usize] {
            return imgs.clone();
        }
        let p = self.nodes[u as usize].clone();
        let imgs: Box<[u32]> = (0..self.steps.len())
            .map(|i| {
                let q = self.steps[i].1.apply(self.lab, &p);
                self.intern(&q)
            })
            .collect();
        self.memo[u as usize] = Some(imgs.clone());
        self.expanded += 1;
        imgs
    }

    fn fits(&self, p: &Program) -> bool {
        self.max_tokens.is_none_or(|max| p.token_count() <= max)
    }

    /// Layers of lexicographically least step sequences (as step indices)
    /// using steps of cost `≤ t`.
    fn layers(&mut self, source: u32, t: u32, max_len: usize) -> Vec<HashMap<u32, Vec<usize>>> {
        let mut layers = vec![HashMap::from([(source, Vec::new())])];
        for _ in 0..max_len {
            let mut next: HashMap<u32, Vec<usize>> = HashMap::new();
            let prev = layers.last().unwrap().clone();
            for (&u, seq) in &prev {
                for (i, &v) in self.images(u).iter().enumerate() {
                    if self.steps[i].2 > t || !self.fits[v as usize] {
                        continue;
                    }
                    let mut cand = seq.clone();
                    cand.push(i);
                    let better = match next.get(&v) {
                        Some(old) => self.lex_less(&cand, old),
                        None => true,
                    };
                    if better {
                        next.insert(v, cand);
                    }
                }
            }
            layers.push(next);
        }
        layers
    }

    fn lex_less(&self, a: &[usize], b: &[usize]) -> bool {
        let key = |s: &[usize]| s.iter().map(|&i| self.steps[i].0.clone()).collect::<Vec<_>>();
        key(a) < key(b)
    }

    /// Exact minimax over all chains of at most `max_len` steps whose
    /// intermediates stay within the token cap (when given).
    pub fn distance(&mut self, p: &Program, q: &Program, max_len: usize) -> DistanceResult {
        let bounds = ResolvedBounds {
            max_program_tokens: self.max_tokens.unwrap_or(usize::MAX),
            max_chain_length: Some(max_len),
            max_explored: None,
        };
        let fits = self.fits(p) && self.fits(q);
        for t in self.thresholds() {
            if !fits {
                break;
            }
            let (source, target) = (self.intern(p), self.intern(q));
            let layers = self.layers(source, t, max_len);
            if let Some(seq) = layers.iter().find_map(|l| l.get(&target)) {
                let steps = seq.iter().map(|&i| self.steps[i].1.clone()).collect();
                return DistanceResult {
                    value: Some(ComplexityBits(t)),
                    witness: Some(Chain {
                        source: p.clone(),
                        target: q.clone(),
                        steps,
                    }),
                    explored: self.expanded,
                    bounds,
                    status: Status::Exact,
                };
            }
        }
        DistanceResult {
            value: None,
            witness: None,
            explored: self.expanded,
            bounds,
            status: Status::Unreachable,
        }
    }

    /// Minimax from `p` to everything reachable in at most `max_len` steps.
    pub fn reachable(&mut self, p: &Program, max_len: usize) -> BTreeMap<Program, ComplexityBits> {
        let mut out = BTreeMap::new();
        if !self.fits(p) {
            return out;
        }
        let source = self.intern(p);
        for t in self.thresholds() {
            // Plain reachability sets suffice here; witnesses are not needed.
            let mut seen = HashSet::from([source]);
            let mut frontier = vec![source];
            for _ in 0..max_len {
                let mut next = Vec::new();
                for &u in &frontier {
                    for (i, &v) in self.images(u).iter().enumerate() {
                        if self.steps[i].2 <= t && self.fits[v as usize] && seen.insert(v) {
                            next.push(v);
                        }
                    }
                }
                frontier = next;
            }
            for v in seen {
                out.entry(self.nodes[v as usize].clone()).or_insert(ComplexityBits(t));
            }
        }
        out
    }
}

pub fn distance_bruteforce(
    lab: &Lab,
    p: &Program,
    q: &Program,
    cat: &Catalog,
    max_len: usize,
    max_tokens: Option<usize>,
) -> DistanceResult {
    BruteForce::new(lab, cat, max_tokens).distance(p, q, max_len)
}

pub fn bruteforce_from(
    lab: &Lab,
    p: &Program,
    cat: &Catalog,
    max_len: usize,
    max_tokens: Option<usize>,
) -> BTreeMap<Program, ComplexityBits> {
    BruteForce::new(lab, cat, max_tokens).reachable(p, max_len)
}
