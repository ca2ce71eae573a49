//! Comments versus algorithms: programs differing only in their comment are
//! close, while equivalent programs with different expressions can be far.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::json;

use super::{UniverseSpec, Violations};
use crate::lab::Lab;
use crate::lang::{equivalent, Body, Numeral, Program};
use crate::metric::{check_chain, Chain, Metric};
use crate::transform::{Catalog, ComplexityBits, Transformation};
use crate::Result;

/// Comments tried on each expression: none, then every numeral of one or
/// two digits.
pub const MAX_COMMENT_DIGITS: usize = 2;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CommentVariants {
    pub expressions: usize,
    pub comments_per_expression: usize,
    pub pairs: u64,
    pub bound_bits: u32,
    pub max_witness_bits: u32,
    pub failures: Violations,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExpressionPairs {
    pub max_tokens: usize,
    pub pairs: u64,
    pub finite: u64,
    pub unreachable: u64,
    /// Distance in bits → number of ordered pairs.
    pub histogram: BTreeMap<u32, u64>,
    pub above_comment_bound: u64,
    pub example_above: Option<serde_json::Value>,
    /// Finite pairs no farther than the comment bound: instances where the
    /// strict ordering does not hold.
    pub within_comment_bound: Violations,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OrderingReport {
    pub catalog: String,
    pub comment_variants: CommentVariants,
    pub expression_pairs: ExpressionPairs,
    pub examples: Vec<serde_json::Value>,
    /// Every expression-distinct pair strictly farther than every
    /// comment-variant pair.
    pub strict_ordering_universal: bool,
    pub passed: bool,
}

impl OrderingReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

fn comments() -> Vec<Option<Numeral>> {
    let mut out = vec![None];
    let mut frontier = vec![String::new()];
    for _ in 0..MAX_COMMENT_DIGITS {
        let next: Vec<String> = frontier
            .iter()
            .flat_map(|s| (0..10).map(move |d| format!("{s}{d}")))
            .collect();
        out.extend(next.iter().map(|s| Some(Numeral::new(s.clone()).unwrap())));
        frontier = next;
    }
    out
}

/// Strip whatever comment is there, then write the new one digit by digit.
fn comment_chain(from: &Option<Numeral>, to: &Option<Numeral>) -> Vec<Transformation> {
    let mut steps = Vec::new();
    if from.is_some() {
        steps.push(Transformation::StripComment);
    }
    if let Some(n) = to {
        steps.extend(n.digits().bytes().map(|b| Transformation::AppendCommentDigit(b - b'0')));
    }
    steps
}

pub fn ordering_experiment(lab: &Lab, spec: &UniverseSpec, cat: &Catalog) -> Result<OrderingReport> {
    let m = lab.modulus();
    let exprs: Vec<Program> = spec
        .programs(lab)?
        .into_iter()
        .filter(|p| p.comment.is_none() && matches!(p.body, Body::Plain(_)))
        .collect();
    let bound = cat
        .complexity_of(&Transformation::StripComment)
        .into_iter()
        .chain((0..10).filter_map(|d| cat.complexity_of(&Transformation::AppendCommentDigit(d))))
        .max()
        .unwrap_or_default();

    let variants = comments();
    let mut cv = CommentVariants {
        expressions: exprs.len(),
        comments_per_expression: variants.len(),
        pairs: 0,
        bound_bits: bound.0,
        max_witness_bits: 0,
        failures: Violations::default(),
    };
    for e in &exprs {
        for a in &variants {
            let p = Program { comment: a.clone(), body: e.body.clone() };
            for b in &variants {
                if a == b {
                    continue;
                }
                let chain = Chain {
                    source: p.clone(),
                    target: Program {
                        comment: b.clone(),
                        body: e.body.clone(),
                    },
                    steps: comment_chain(a, b),
                };
                let check = check_chain(lab, &chain, cat);
                cv.pairs += 1;
                cv.max_witness_bits = cv.max_witness_bits.max(check.max_complexity.0);
                if !check.valid || check.max_complexity > bound {
                    cv.failures.push(|| format!("{} -> {}", chain.source, chain.target));
                }
            }
        }
    }

    let mut metric = Metric::new(lab, cat, spec.max_tokens);
    let mut ep = ExpressionPairs {
        max_tokens: spec.max_tokens,
        pairs: 0,
        finite: 0,
        unreachable: 0,
        histogram: BTreeMap::new(),
        above_comment_bound: 0,
        example_above: None,
        within_comment_bound: Violations::default(),
    };
    for p in &exprs {
        let row: BTreeMap<Program, ComplexityBits> = metric.distances_from(p).into_iter().collect();
        for q in &exprs {
            if p == q || !equivalent(p, q, m) {
                continue;
            }
            ep.pairs += 1;
            let Some(&d) = row.get(q) else {
                ep.unreachable += 1;
                continue;
            };
            ep.finite += 1;
            *ep.histogram.entry(d.0).or_default() += 1;
            if d > bound {
                ep.above_comment_bound += 1;
                if ep.example_above.is_none() {
                    let r = metric.distance(p, q);
                    let chain = r.witness.expect("finite distance has a witness");
                    let check = check_chain(lab, &chain, cat);
                    ep.example_above = Some(json!({
                        "from": p.to_string(),
                        "to": q.to_string(),
                        "bits": d.0,
                        "witness": chain.terms(),
                        "witness_valid": check.valid && check.max_complexity == d,
                    }));
                }
            } else {
                ep.within_comment_bound.push(|| format!("d({p}, {q}) = {}", d.0));
            }
        }
    }

    let examples = spec_examples(lab, &mut metric);
    let example_ok = ep
        .example_above
        .as_ref()
        .is_some_and(|v| v["witness_valid"] == json!(true));
    let strict = ep.within_comment_bound.is_empty();
    Ok(OrderingReport {
        catalog: cat.name.clone(),
        passed: cv.failures.is_empty() && ep.above_comment_bound > 0 && example_ok,
        comment_variants: cv,
        expression_pairs: ep,
        examples,
        strict_ordering_universal: strict,
    })
}

fn spec_examples(lab: &Lab, metric: &mut Metric<'_>) -> Vec<serde_json::Value> {
    [
        ("# 1 ( x + x )", "( x + x )"),
        ("( x + x )", "( 2 * x )"),
        ("# 1 ( x + x )", "# 1 ( x + x )"),
    ]
    .iter()
    .map(|(a, b)| {
        let p = lab.parse(a).expect("example parses");
        let q = lab.parse(b).expect("example parses");
        metric.distance(&p, &q).to_json(lab)
    })
    .collect()
}
