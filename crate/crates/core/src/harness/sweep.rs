//! Connectivity of equivalent pairs as the per-step budget grows.

use serde::Serialize;

use super::{ClosedUniverse, UniverseSpec, UniverseSummary};
use crate::lab::Lab;
use crate::transform::Catalog;
use crate::Result;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRow {
    pub budget_bits: u32,
    /// Share of ordered distinct equivalent pairs with distance `< budget`.
    pub connected_fraction: f64,
    pub unreachable_pairs: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepReport {
    pub universe: UniverseSummary,
    pub equivalent_pairs: u64,
    pub rows: Vec<SweepRow>,
    /// Pairs with no chain at all within the cap, at any budget.
    pub never_connected: u64,
    /// The canonically first such pair.
    pub example_unconnected: Option<(String, String)>,
    pub monotone: bool,
}

pub fn budget_sweep(lab: &Lab, spec: &UniverseSpec, cat: &Catalog) -> Result<SweepReport> {
    let u = ClosedUniverse::build(lab, spec, cat)?;
    let levels = u.graph.levels().to_vec();
    let mut histogram = vec![0u64; levels.len()];
    let mut example = None;
    let mut reached = vec![false; u.len()];
    u.for_each_row(|p, row| {
        for &q in &row.touched {
            if q != p {
                histogram[row.dist[q as usize] as usize] += 1;
            }
        }
        if example.is_none() {
            let cp = u.class[p as usize];
            for &q in &row.touched {
                reached[q as usize] = true;
            }
            example = (0..u.len() as u32)
                .find(|&q| u.class[q as usize] == cp && !reached[q as usize])
                .map(|q| (u.text(p), u.text(q)));
            for &q in &row.touched {
                reached[q as usize] = false;
            }
        }
    });
    let total = u.equivalent_pairs();
    let mut rows = Vec::new();
    let mut connected = 0u64;
    for (i, &bits) in levels.iter().enumerate() {
        rows.push(SweepRow {
            budget_bits: bits,
            connected_fraction: if total == 0 { 0.0 } else { connected as f64 / total as f64 },
            unreachable_pairs: total - connected,
        });
        connected += histogram[i];
    }
    let monotone = rows.windows(2).all(|w| {
        w[0].connected_fraction <= w[1].connected_fraction && w[0].unreachable_pairs >= w[1].unreachable_pairs
    });
    Ok(SweepReport {
        universe: u.summary.clone(),
        equivalent_pairs: total,
        rows,
        never_connected: total - connected,
        example_unconnected: example,
        monotone,
    })
}

pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from("budget_bits,connected_fraction,unreachable_pairs\n");
    for r in rows {
        out.push_str(&format!("{},{:.6},{}\n", r.budget_bits, r.connected_fraction, r.unreachable_pairs));
    }
    out
}
