//! Metric axioms, checked exhaustively on a closed universe.
//!
//! Rows `d(p, ·)` come from a forward bottleneck pass and columns `d(·, p)`
//! from a pass over the reversed graph. The strong triangle inequality is
//! certified per row rather than enumerated triple by triple: if every edge
//! `u → v` of cost `c` satisfies `d(p,v) ≤ max(d(p,u), c)` and every finite
//! entry is attained by a real chain, then `d(p,r) ≤ max(d(p,q), d(q,r))`
//! for every finite triple, by induction along a chain realising `d(q,r)`.

use serde::Serialize;
use serde_json::json;

use super::{ClosedUniverse, UniverseSpec, UniverseSummary, Violations};
use crate::lab::Lab;
use crate::metric::{check_chain, search_to, Chain, RowScratch, NO_PARENT, UNREACHED};
use crate::transform::{undo_step, Catalog, ComplexityBits, Transformation};
use crate::Result;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComplexityAudit {
    /// Entries recorded at zero bits; must be exactly `Id`.
    pub zero_cost_entries: Vec<String>,
    pub id_cost: Option<u32>,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub pairs_tested: u64,
    pub violations: Violations,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TriangleCheck {
    /// Finite triples `(p, q, r)` with `d(p,q)` and `d(q,r)` finite.
    pub triples_covered: u64,
    pub relaxations_checked: u64,
    pub relaxation_violations: Violations,
    pub attainment_violations: Violations,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SymmetryCheck {
    pub inverse_closed: bool,
    pub delta: u32,
    pub pairs_both_finite: u64,
    /// Ordered pairs finite from `p` to `q` only, within the token cap.
    pub one_way_pairs: u64,
    pub max_gap: u32,
    /// `d(p,q) - d(q,p)` over pairs finite both ways.
    pub gap_histogram: std::collections::BTreeMap<i64, u64>,
    pub violations: Violations,
    /// Edges whose undo chain (free of the cap) was executed and checked.
    pub edges_certified: u64,
    pub certificate_failures: Violations,
    /// Forward rows and backward columns describe the same matrix.
    pub rows_match_columns: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SymmetrizedCheck {
    pub pairs_finite: u64,
    pub identity_violations: Violations,
    /// `max(d(p,q), d(q,p))` is symmetric by construction once rows and
    /// columns agree; its strong triangle follows from the directed one
    /// applied to `(p,q,r)` and `(r,q,p)`.
    pub symmetric: bool,
    pub triangle_from_directed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AxiomReport {
    pub universe: UniverseSummary,
    pub complexity_audit: ComplexityAudit,
    pub identity: IdentityCheck,
    pub strong_triangle: TriangleCheck,
    pub symmetry: SymmetryCheck,
    pub symmetrized: SymmetrizedCheck,
    pub witnesses: Vec<serde_json::Value>,
    pub passed: bool,
}

impl AxiomReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

fn mix(p: u32, q: u32, d: u8) -> u64 {
    // splitmix64 finaliser over the packed triple
    let mut z = (u64::from(p) << 32 | u64::from(q)) ^ (u64::from(d) << 56).rotate_left(7);
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn audit(cat: &Catalog) -> ComplexityAudit {
    let zero: Vec<String> = cat
        .entries()
        .iter()
        .filter(|e| e.complexity.0 == 0)
        .map(|e| e.transformation.to_string())
        .collect();
    let id_cost = cat.complexity_of(&Transformation::Id).map(|c| c.0);
    ComplexityAudit {
        passed: zero == ["Id"] && id_cost == Some(0),
        zero_cost_entries: zero,
        id_cost,
    }
}

pub fn axiom_suite(lab: &Lab, spec: &UniverseSpec, cat: &Catalog) -> Result<AxiomReport> {
    let mut u = ClosedUniverse::build(lab, spec, cat)?;
    let n = u.len();
    let levels = u.graph.levels().len();
    let (offsets, rev) = u.graph.reverse();
    let inverse_closed = cat.is_inverse_closed();
    let delta = cat.symmetry_slack();

    let mut identity = IdentityCheck {
        pairs_tested: (n as u64) * (n as u64),
        violations: Violations::default(),
    };
    let mut triangle = TriangleCheck {
        triples_covered: 0,
        relaxations_checked: 0,
        relaxation_violations: Violations::default(),
        attainment_violations: Violations::default(),
    };
    let mut symmetry = SymmetryCheck {
        inverse_closed,
        delta,
        pairs_both_finite: 0,
        one_way_pairs: 0,
        max_gap: 0,
        gap_histogram: Default::default(),
        violations: Violations::default(),
        edges_certified: 0,
        certificate_failures: Violations::default(),
        rows_match_columns: false,
    };
    let mut sym = SymmetrizedCheck {
        pairs_finite: 0,
        identity_violations: Violations::default(),
        symmetric: false,
        triangle_from_directed: false,
    };
    let mut row_reach = vec![0u64; n];
    let mut col_reach = vec![0u64; n];
    let (mut row_hash, mut col_hash) = (0u64, 0u64);

    let mut row = RowScratch::new(n);
    let mut col = RowScratch::new(n);
    let g = &u.graph;
    for p in 0..n as u32 {
        row.run(levels, p, |v| g.edges(v));
        col.run(levels, p, |v| &rev[offsets[v as usize] as usize..offsets[v as usize + 1] as usize]);
        row_reach[p as usize] = row.touched.len() as u64;

        for &q in &row.touched {
            let d = row.dist[q as usize];
            col_reach[q as usize] += 1;
            row_hash = row_hash.wrapping_add(mix(p, q, d));
            if (u.bits(d) == 0) != (q == p) {
                identity.violations.push(|| format!("d({}, {}) = {}", u.text(p), u.text(q), u.bits(d)));
            }
            // Relaxation along every edge out of a reached node.
            for e in g.edges(q) {
                triangle.relaxations_checked += 1;
                if row.dist[e.to as usize] > d.max(e.level) {
                    triangle.relaxation_violations.push(|| {
                        format!("from {}: edge {} -> {} not relaxed", u.text(p), u.text(q), u.text(e.to))
                    });
                }
            }
            // Attainment: a parent settled earlier, no farther, with an
            // edge no costlier than the entry.
            if q != p {
                let par = row.parent[q as usize];
                let ok = par != NO_PARENT
                    && row.rank[par as usize] < row.rank[q as usize]
                    && row.dist[par as usize] <= d
                    && g.edges(par).iter().any(|e| e.to == q && e.level <= d);
                if !ok {
                    triangle
                        .attainment_violations
                        .push(|| format!("d({}, {}) not attained", u.text(p), u.text(q)));
                }
            }
            let back = col.dist[q as usize];
            if back == UNREACHED {
                symmetry.one_way_pairs += 1;
                continue;
            }
            symmetry.pairs_both_finite += 1;
            sym.pairs_finite += 1;
            let gap = i64::from(u.bits(d)) - i64::from(u.bits(back));
            *symmetry.gap_histogram.entry(gap).or_default() += 1;
            symmetry.max_gap = symmetry.max_gap.max(gap.unsigned_abs() as u32);
            if inverse_closed && gap.unsigned_abs() > u64::from(delta) {
                symmetry
                    .violations
                    .push(|| format!("|d({0},{1}) - d({1},{0})| = {2}", u.text(p), u.text(q), gap.abs()));
            }
            if d.max(back) == 0 && q != p {
                sym.identity_violations
                    .push(|| format!("sym({}, {}) = 0", u.text(p), u.text(q)));
            }
        }
        for &q in &col.touched {
            col_hash = col_hash.wrapping_add(mix(q, p, col.dist[q as usize]));
        }
    }
    triangle.triples_covered = row_reach.iter().zip(&col_reach).map(|(r, c)| r * c).sum();
    symmetry.rows_match_columns = row_hash == col_hash;
    sym.symmetric = symmetry.rows_match_columns;

    if inverse_closed {
        certify_edges(lab, &u, cat, &mut symmetry);
    }
    sym.triangle_from_directed =
        triangle.relaxation_violations.is_empty() && triangle.attainment_violations.is_empty();

    let witnesses = witness_examples(lab, &mut u);
    let complexity_audit = audit(cat);
    let passed = complexity_audit.passed
        && identity.violations.is_empty()
        && sym.triangle_from_directed
        && symmetry.violations.is_empty()
        && symmetry.certificate_failures.is_empty()
        && symmetry.rows_match_columns
        && sym.identity_violations.is_empty();
    Ok(AxiomReport {
        universe: u.summary.clone(),
        complexity_audit,
        identity,
        strong_triangle: triangle,
        symmetry,
        symmetrized: sym,
        witnesses,
        passed,
    })
}

/// For every edge `u → v` via `s`, the undo chain from `v` must return to
/// `u` through catalog steps, preserve semantics, and cost at most
/// `max(9, 5 + rawlen(s))`. Chained along a witness, this bounds the reverse
/// distance of pairs that the token cap leaves one-way.
fn certify_edges(lab: &Lab, u: &ClosedUniverse<'_>, cat: &Catalog, out: &mut SymmetryCheck) {
    let g = &u.graph;
    for from in 0..u.len() as u32 {
        for e in g.edges(from) {
            let s = &g.entries()[e.entry as usize];
            let before = g.program(from);
            let after = g.program(e.to);
            let bound = ComplexityBits(9.max(5 + s.raw_len()));
            let ok = undo_step(lab, s, before).is_ok_and(|steps| {
                let chain = Chain {
                    source: after.clone(),
                    target: before.clone(),
                    steps,
                };
                let check = check_chain(lab, &chain, cat);
                check.valid && check.max_complexity <= bound
            });
            out.edges_certified += 1;
            if !ok {
                out.certificate_failures
                    .push(|| format!("undo of {s} from `{after}` back to `{before}`"));
            }
        }
    }
}

fn witness_examples(lab: &Lab, u: &mut ClosedUniverse<'_>) -> Vec<serde_json::Value> {
    let names = ["# 3 x", "x", "# 7 x"];
    let ids: Option<Vec<u32>> = names
        .iter()
        .map(|t| lab.parse(t).ok().and_then(|p| u.graph.id_of(&p)))
        .collect();
    let Some(ids) = ids else {
        return Vec::new();
    };
    let mut out = Vec::new();
    let mut d = |a: u32, b: u32, out: &mut Vec<serde_json::Value>| {
        let found = search_to(&mut u.graph, a, b, None);
        let bits = found.as_ref().map(|f| u.graph.levels()[f.level]);
        let steps: Vec<String> = found
            .map(|f| f.path.iter().map(|&(e, _)| u.graph.entries()[e as usize].to_string()).collect())
            .unwrap_or_default();
        out.push(json!({
            "from": u.graph.program(a).to_string(),
            "to": u.graph.program(b).to_string(),
            "bits": bits,
            "witness": steps,
        }));
        bits
    };
    let pq = d(ids[0], ids[1], &mut out);
    let qr = d(ids[1], ids[2], &mut out);
    let pr = d(ids[0], ids[2], &mut out);
    if let (Some(a), Some(b), Some(c)) = (pq, qr, pr) {
        out.push(json!({ "triangle": format!("{c} <= max({a}, {b})"), "holds": c <= a.max(b) }));
    }
    out
}
