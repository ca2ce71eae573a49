//! The chain distance: the least bound on the costliest step of any catalog
//! chain mapping one program to another.

mod bruteforce;
mod graph;
mod search;

use std::fmt;

use serde::Serialize;
use serde_json::json;

use crate::lab::Lab;
use crate::lang::{equivalent, table, Program};
use crate::transform::{Catalog, ComplexityBits, Transformation};
use crate::{Error, Result};

pub use bruteforce::{bruteforce_from, distance_bruteforce, BruteForce};
pub use graph::{Edge, ProgramGraph};
pub use search::{search_all, search_to, Found, RowScratch, NO_PARENT, UNREACHED};

/// Exploration caps. Unset token cap means `max(|p|, |q|) + 8`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBounds {
    pub max_program_tokens: Option<usize>,
    pub max_chain_length: Option<usize>,
    /// Node budget; reaching it makes the answer inconclusive.
    pub max_explored: Option<usize>,
}

pub const DEFAULT_TOKEN_SLACK: usize = 8;
pub const DEFAULT_MAX_EXPLORED: usize = 250_000;

impl Default for SearchBounds {
    fn default() -> Self {
        SearchBounds {
            max_program_tokens: None,
            max_chain_length: None,
            max_explored: Some(DEFAULT_MAX_EXPLORED),
        }
    }
}

/// Caps actually in effect for one query.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ResolvedBounds {
    pub max_program_tokens: usize,
    pub max_chain_length: Option<usize>,
    pub max_explored: Option<usize>,
}

impl SearchBounds {
    pub fn tokens(max_program_tokens: usize) -> Self {
        SearchBounds {
            max_program_tokens: Some(max_program_tokens),
            ..SearchBounds::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let zero = |v: Option<usize>| v == Some(0);
        if zero(self.max_program_tokens) || zero(self.max_chain_length) || zero(self.max_explored) {
            return Err(Error::Config("search caps must be strictly positive".into()));
        }
        Ok(())
    }

    pub fn resolve(&self, p: &Program, q: &Program) -> ResolvedBounds {
        ResolvedBounds {
            max_program_tokens: self
                .max_program_tokens
                .unwrap_or(p.token_count().max(q.token_count()) + DEFAULT_TOKEN_SLACK),
            max_chain_length: self.max_chain_length,
            max_explored: self.max_explored,
        }
    }
}

/// Steps `s_1..s_n` leading `source` to `target`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Chain {
    pub source: Program,
    pub target: Program,
    pub steps: Vec<Transformation>,
}

impl Chain {
    pub fn empty(p: &Program) -> Chain {
        Chain {
            source: p.clone(),
            target: p.clone(),
            steps: Vec::new(),
        }
    }

    /// The chain obtained by running `steps` from `source`.
    pub fn run(lab: &Lab, source: &Program, steps: Vec<Transformation>) -> Chain {
        Chain {
            source: source.clone(),
            target: Transformation::apply_all(&steps, lab, source),
            steps,
        }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn max_step_complexity(&self) -> ComplexityBits {
        self.steps
            .iter()
            .map(Transformation::complexity)
            .max()
            .unwrap_or_default()
    }

    /// Source, every intermediate, and the final program.
    pub fn programs(&self, lab: &Lab) -> Vec<Program> {
        let mut out = vec![self.source.clone()];
        for s in &self.steps {
            let next = s.apply(lab, out.last().unwrap());
            out.push(next);
        }
        out
    }

    /// Concatenation; `other` must start where `self` ends.
    pub fn then(&self, other: &Chain) -> Chain {
        assert_eq!(self.target, other.source, "chains do not meet");
        Chain {
            source: self.source.clone(),
            target: other.target.clone(),
            steps: self.steps.iter().chain(&other.steps).cloned().collect(),
        }
    }

    pub fn terms(&self) -> Vec<String> {
        self.steps.iter().map(ToString::to_string).collect()
    }
}

impl fmt::Display for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.source)?;
        for s in &self.steps {
            write!(f, " --[{s}]-->")?;
        }
        write!(f, " {}", self.target)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainFailure {
    /// Zero-based step index; `steps.len()` when only the endpoint is wrong.
    pub step: usize,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainCheck {
    pub valid: bool,
    pub max_complexity: ComplexityBits,
    pub failure: Option<ChainFailure>,
    pub intermediates: Vec<Program>,
}

/// Checks that every step is in `cat`, that each intermediate computes the
/// source's function, and that the last program is the chain's target.
pub fn check_chain(lab: &Lab, chain: &Chain, cat: &Catalog) -> ChainCheck {
    let m = lab.modulus();
    let expected = table(&chain.source, m);
    let mut current = chain.source.clone();
    let mut intermediates = vec![current.clone()];
    let mut max = ComplexityBits(0);
    let fail = |step: usize, reason: String, intermediates: Vec<Program>, max| ChainCheck {
        valid: false,
        max_complexity: max,
        failure: Some(ChainFailure { step, reason }),
        intermediates,
    };
    for (i, s) in chain.steps.iter().enumerate() {
        let Some(cost) = cat.complexity_of(s) else {
            return fail(i, format!("{s} is not in catalog {}", cat.name), intermediates, max);
        };
        max = max.max(cost);
        let next = s.apply(lab, &current);
        let t = table(&next, m);
        if t != expected {
            let reason = format!("{s} maps `{current}` to `{next}`, computing {t} instead of {expected}");
            intermediates.push(next);
            return fail(i, reason, intermediates, max);
        }
        intermediates.push(next.clone());
        current = next;
    }
    if current != chain.target {
        let reason = format!("chain ends at `{current}`, not `{}`", chain.target);
        return fail(chain.steps.len(), reason, intermediates, max);
    }
    ChainCheck {
        valid: true,
        max_complexity: max,
        failure: None,
        intermediates,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    /// Least minimax over every chain within bounds.
    Exact,
    /// Attained, but the node budget may have hidden a cheaper chain.
    UpperBound,
    /// No chain within bounds.
    Unreachable,
    /// Budget exhausted before the target showed up.
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceResult {
    pub value: Option<ComplexityBits>,
    pub witness: Option<Chain>,
    pub explored: usize,
    pub bounds: ResolvedBounds,
    pub status: Status,
}

impl DistanceResult {
    pub fn is_finite(&self) -> bool {
        self.value.is_some()
    }

    pub fn to_json(&self, lab: &Lab) -> serde_json::Value {
        let value = match self.value {
            Some(v) => json!(v.0),
            None => json!("unreachable"),
        };
        let (witness, programs) = match &self.witness {
            Some(c) => (
                json!(c.terms()),
                json!(c.programs(lab).iter().map(ToString::to_string).collect::<Vec<_>>()),
            ),
            None => (serde_json::Value::Null, serde_json::Value::Null),
        };
        json!({
            "value": value,
            "status": self.status,
            "witness": witness,
            "programs": programs,
            "explored": self.explored,
            "bounds": self.bounds,
        })
    }
}

/// Distance from `p` to `q` within `bounds`. Inequivalent programs are
/// reported unreachable without searching: no verified chain joins them.
pub fn distance(lab: &Lab, p: &Program, q: &Program, cat: &Catalog, bounds: &SearchBounds) -> Result<DistanceResult> {
    bounds.validate()?;
    let resolved = bounds.resolve(p, q);
    if !equivalent(p, q, lab.modulus()) {
        return Ok(DistanceResult {
            value: None,
            witness: None,
            explored: 0,
            bounds: resolved,
            status: Status::Unreachable,
        });
    }
    let mut graph = ProgramGraph::new(lab, cat, resolved.max_program_tokens, resolved.max_explored);
    Ok(query(&mut graph, p, q, resolved))
}

fn query(graph: &mut ProgramGraph<'_>, p: &Program, q: &Program, bounds: ResolvedBounds) -> DistanceResult {
    let before = graph.len();
    let (found, explored) = match (graph.intern(p), graph.intern(q)) {
        (Some(s), Some(t)) => {
            let found = search_to(graph, s, t, bounds.max_chain_length);
            (found, graph.len() - before)
        }
        _ => (None, 0),
    };
    let truncated = graph.truncated();
    match found {
        Some(f) => {
            let steps = f.path.iter().map(|&(e, _)| graph.entries()[e as usize].clone()).collect();
            DistanceResult {
                value: Some(ComplexityBits(graph.levels()[f.level])),
                witness: Some(Chain {
                    source: p.clone(),
                    target: q.clone(),
                    steps,
                }),
                explored: explored.max(1),
                bounds,
                status: if f.exact { Status::Exact } else { Status::UpperBound },
            }
        }
        None => DistanceResult {
            value: None,
            witness: None,
            explored,
            bounds,
            status: if truncated { Status::Inconclusive } else { Status::Unreachable },
        },
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetrizedDistance {
    pub value: Option<ComplexityBits>,
    pub forward: DistanceResult,
    pub backward: DistanceResult,
}

impl SymmetrizedDistance {
    pub fn gap(&self) -> Option<i64> {
        Some(self.forward.value?.0 as i64 - self.backward.value?.0 as i64)
    }

    pub fn to_json(&self, lab: &Lab) -> serde_json::Value {
        json!({
            "value": self.value.map_or(json!("unreachable"), |v| json!(v.0)),
            "forward": self.forward.to_json(lab),
            "backward": self.backward.to_json(lab),
        })
    }
}

/// `max(d(p, q), d(q, p))`.
pub fn symmetrized_distance(
    lab: &Lab,
    p: &Program,
    q: &Program,
    cat: &Catalog,
    bounds: &SearchBounds,
) -> Result<SymmetrizedDistance> {
    let forward = distance(lab, p, q, cat, bounds)?;
    let backward = distance(lab, q, p, cat, bounds)?;
    let value = match (forward.value, backward.value) {
        (Some(a), Some(b)) => Some(a.max(b)),
        _ => None,
    };
    Ok(SymmetrizedDistance { value, forward, backward })
}

/// Many queries over one shared graph with a fixed token cap.
pub struct Metric<'a> {
    graph: ProgramGraph<'a>,
    max_chain_length: Option<usize>,
    max_explored: Option<usize>,
}

impl<'a> Metric<'a> {
    pub fn new(lab: &'a Lab, cat: &Catalog, max_tokens: usize) -> Self {
        Metric {
            graph: ProgramGraph::new(lab, cat, max_tokens, None),
            max_chain_length: None,
            max_explored: None,
        }
    }

    pub fn with_bounds(lab: &'a Lab, cat: &Catalog, bounds: ResolvedBounds) -> Self {
        Metric {
            graph: ProgramGraph::new(lab, cat, bounds.max_program_tokens, bounds.max_explored),
            max_chain_length: bounds.max_chain_length,
            max_explored: bounds.max_explored,
        }
    }

    pub fn graph(&self) -> &ProgramGraph<'a> {
        &self.graph
    }

    pub fn graph_mut(&mut self) -> &mut ProgramGraph<'a> {
        &mut self.graph
    }

    fn bounds(&self) -> ResolvedBounds {
        ResolvedBounds {
            max_program_tokens: self.graph.max_tokens(),
            max_chain_length: self.max_chain_length,
            max_explored: self.max_explored,
        }
    }

    pub fn distance(&mut self, p: &Program, q: &Program) -> DistanceResult {
        let bounds = self.bounds();
        query(&mut self.graph, p, q, bounds)
    }

    /// Distances from `p` to every reachable program, in canonical order.
    pub fn distances_from(&mut self, p: &Program) -> Vec<(Program, ComplexityBits)> {
        let Some(s) = self.graph.intern(p) else {
            return Vec::new();
        };
        let row = search_all(&mut self.graph, s, self.max_chain_length);
        let mut out: Vec<(Program, ComplexityBits)> = row
            .into_iter()
            .map(|(v, l)| (self.graph.program(v).clone(), ComplexityBits(self.graph.levels()[l])))
            .collect();
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Transformation::*;

    fn lab() -> Lab {
        Lab::default()
    }

    #[test]
    fn self_distance_is_zero() {
        let lab = lab();
        let p = lab.parse("( x + 1 )").unwrap();
        let d = distance(&lab, &p, &p, &Catalog::base(lab.modulus()), &SearchBounds::default()).unwrap();
        assert_eq!(d.value, Some(ComplexityBits(0)));
        assert!(d.witness.unwrap().is_empty());
    }

    #[test]
    fn strip_comment_distance() {
        let lab = lab();
        let p = lab.parse("# 3 x").unwrap();
        let q = lab.parse("x").unwrap();
        let d = distance(&lab, &p, &q, &Catalog::base(lab.modulus()), &SearchBounds::default()).unwrap();
        assert_eq!(d.value, Some(ComplexityBits(5)));
        assert_eq!(d.status, Status::Exact);
        assert_eq!(d.witness.unwrap().steps, vec![StripComment]);
    }

    #[test]
    fn comment_edits_cannot_rewrite() {
        let lab = lab();
        let p = lab.parse("( x + x )").unwrap();
        let q = lab.parse("( 2 * x )").unwrap();
        let d = distance(&lab, &p, &q, &Catalog::comment_only(), &SearchBounds::tokens(7)).unwrap();
        assert_eq!(d.status, Status::Unreachable);
        assert!(d.explored > 1);
    }

    #[test]
    fn inequivalent_is_unreachable() {
        let lab = lab();
        let p = lab.parse("x").unwrap();
        let q = lab.parse("1").unwrap();
        let d = distance(&lab, &p, &q, &Catalog::base(lab.modulus()), &SearchBounds::default()).unwrap();
        assert_eq!(d.status, Status::Unreachable);
    }

    #[test]
    fn chain_checks() {
        let lab = lab();
        let base = Catalog::base(lab.modulus());
        let p = lab.parse("# 3 x").unwrap();
        let c = Chain::run(&lab, &p, vec![StripComment]);
        let r = check_chain(&lab, &c, &base);
        assert!(r.valid);
        assert_eq!(r.max_complexity, ComplexityBits(5));

        let p = lab.parse("1 0 S 1").unwrap();
        let c = Chain::run(&lab, &p, vec![FlipSelector]);
        assert_eq!(c.target.to_string(), "2 0 S 1");
        let r = check_chain(&lab, &c, &base);
        assert!(!r.valid);
        assert_eq!(r.failure.unwrap().step, 0);
        let open = Catalog::new("open", [FlipSelector], 7);
        let r = check_chain(&lab, &c, &open);
        assert!(!r.valid, "semantics change must be caught");

        let r = check_chain(&lab, &Chain::empty(&p), &base);
        assert!(r.valid);
        assert_eq!(r.max_complexity, ComplexityBits(0));
    }

    #[test]
    fn wrong_target_fails() {
        let lab = lab();
        let p = lab.parse("# 3 x").unwrap();
        let mut c = Chain::run(&lab, &p, vec![StripComment]);
        c.target = p.clone();
        let r = check_chain(&lab, &c, &Catalog::base(lab.modulus()));
        assert_eq!(r.failure.unwrap().step, 1);
    }

    #[test]
    fn symmetrized_strip_comment() {
        let lab = lab();
        let p = lab.parse("# 3 x").unwrap();
        let q = lab.parse("x").unwrap();
        let s = symmetrized_distance(&lab, &p, &q, &Catalog::base(lab.modulus()), &SearchBounds::default()).unwrap();
        assert_eq!(s.forward.value, Some(ComplexityBits(5)));
        // AppendCommentDigit 3 after adding `#` is not a single step; the
        // cheapest way back writes the comment digit by digit.
        assert!(s.value.is_some());
        let w = s.backward.witness.unwrap();
        assert!(check_chain(&lab, &w, &Catalog::base(lab.modulus())).valid);
    }

    #[test]
    fn zero_caps_rejected() {
        let b = SearchBounds {
            max_program_tokens: Some(0),
            ..SearchBounds::default()
        };
        assert!(b.validate().is_err());
    }
}
