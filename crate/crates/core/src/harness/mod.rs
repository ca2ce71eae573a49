//! Experiment suites over exhaustively enumerated universes.

mod axioms;
mod ordering;
mod selector;
mod sweep;

use std::collections::BTreeMap;

use serde::Serialize;

use crate::lab::Lab;
use crate::lang::{table, FunctionTable, Program};
use crate::metric::{ProgramGraph, RowScratch};
use crate::transform::Catalog;
use crate::Result;

pub use axioms::{axiom_suite, AxiomReport};
pub use ordering::{ordering_experiment, OrderingReport};
pub use selector::{selector_demo, SelectorReport};
pub use sweep::{budget_sweep, sweep_csv, SweepReport, SweepRow};

/// Every program of at most `max_tokens` tokens, optionally restricted to
/// one function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniverseSpec {
    pub max_tokens: usize,
    pub filter: Option<FunctionTable>,
}

impl UniverseSpec {
    pub fn new(max_tokens: usize) -> Self {
        UniverseSpec {
            max_tokens,
            filter: None,
        }
    }

    pub fn programs(&self, lab: &Lab) -> Result<Vec<Program>> {
        let m = lab.modulus();
        Ok(lab
            .enumeration()
            .iter_upto(self.max_tokens)?
            .filter(|p| self.filter.as_ref().is_none_or(|f| table(p, m) == *f))
            .collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UniverseSummary {
    pub modulus: u32,
    pub max_tokens: usize,
    pub filter: Option<FunctionTable>,
    /// Programs named by the spec.
    pub programs: usize,
    /// Nodes after closing under the catalog within the token cap.
    pub nodes: usize,
    pub edges: usize,
    pub classes: usize,
    pub catalog: String,
    pub catalog_entries: usize,
}

/// A universe closed under a catalog: every node expanded, with its
/// function class recorded.
pub(crate) struct ClosedUniverse<'a> {
    pub graph: ProgramGraph<'a>,
    pub class: Vec<u32>,
    pub class_sizes: Vec<u64>,
    pub summary: UniverseSummary,
}

impl<'a> ClosedUniverse<'a> {
    pub fn build(lab: &'a Lab, spec: &UniverseSpec, cat: &Catalog) -> Result<Self> {
        let programs = spec.programs(lab)?;
        let mut graph = ProgramGraph::new(lab, cat, spec.max_tokens, None);
        for p in &programs {
            graph.intern(p);
        }
        graph.close();
        let m = lab.modulus();
        let mut ids: BTreeMap<FunctionTable, u32> = BTreeMap::new();
        let tables: Vec<FunctionTable> = (0..graph.len() as u32).map(|v| table(graph.program(v), m)).collect();
        for t in &tables {
            let next = ids.len() as u32;
            ids.entry(t.clone()).or_insert(next);
        }
        // Number classes in table order so the numbering is canonical.
        for (i, v) in ids.values_mut().enumerate() {
            *v = i as u32;
        }
        let class: Vec<u32> = tables.iter().map(|t| ids[t]).collect();
        let mut class_sizes = vec![0u64; ids.len()];
        for &c in &class {
            class_sizes[c as usize] += 1;
        }
        let edges = (0..graph.len() as u32).map(|v| graph.edges(v).len()).sum();
        let summary = UniverseSummary {
            modulus: u32::from(m.get()),
            max_tokens: spec.max_tokens,
            filter: spec.filter.clone(),
            programs: programs.len(),
            nodes: graph.len(),
            edges,
            classes: ids.len(),
            catalog: cat.name.clone(),
            catalog_entries: cat.len(),
        };
        Ok(ClosedUniverse {
            graph,
            class,
            class_sizes,
            summary,
        })
    }

    pub fn len(&self) -> usize {
        self.graph.len()
    }

    /// Ordered pairs of distinct, equivalent nodes.
    pub fn equivalent_pairs(&self) -> u64 {
        self.class_sizes.iter().map(|s| s * s.saturating_sub(1)).sum()
    }

    /// Runs the forward row of every node in id order.
    pub fn for_each_row(&self, mut f: impl FnMut(u32, &RowScratch)) {
        let mut row = RowScratch::new(self.len());
        let levels = self.graph.levels().len();
        for s in 0..self.len() as u32 {
            row.run(levels, s, |u| self.graph.edges(u));
            f(s, &row);
        }
    }

    pub fn text(&self, v: u32) -> String {
        self.graph.program(v).to_string()
    }

    pub fn bits(&self, level: u8) -> u32 {
        self.graph.levels()[level as usize]
    }
}

/// Keeps the first few examples of a violation kind plus a total count.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Violations {
    pub count: u64,
    pub examples: Vec<String>,
}

impl Violations {
    const KEEP: usize = 10;

    pub fn push(&mut self, describe: impl FnOnce() -> String) {
        self.count += 1;
        if self.examples.len() < Self::KEEP {
            self.examples.push(describe());
        }
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }
}
