//! The selector argument: writing a second program into the inert half of
//! `1 <code_i> S` is harmless, but flipping the selector is not an
//! interpreter, so no verified chain reaches `2 S <code_j>` this way.

use serde::Serialize;
use serde_json::json;

use crate::lab::Lab;
use crate::lang::table;
use crate::lang::token::tokenize;
use crate::metric::{check_chain, distance, Chain, SearchBounds, Status};
use crate::transform::{verify, Catalog, Transformation, VerificationReport};
use crate::Result;

pub const CODE_I: &str = "0";
pub const CODE_J: &str = "( 0 + 0 )";
const BOUND: usize = 7;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SelectorReport {
    pub code_i: String,
    pub code_j: String,
    pub start: String,
    pub goal: String,
    pub start_table: String,
    pub goal_table: String,
    /// Each `AppendInactiveToken` step writing `code_j` after `S`.
    pub append_steps: Vec<VerificationReport>,
    pub after_appends: String,
    pub appends_valid: bool,
    pub flip: VerificationReport,
    pub flip_rejected: bool,
    /// The paper's chain: appends, then a selector flip.
    pub rejected_chain: serde_json::Value,
    pub rejected_chain_fails: bool,
    pub restricted_catalog: String,
    pub restricted_distance: serde_json::Value,
    pub unreachable_under_restriction: bool,
    pub passed: bool,
}

pub fn selector_demo(lab: &Lab) -> Result<SelectorReport> {
    let m = lab.modulus();
    let start = lab.parse(&format!("1 {CODE_I} S"))?;
    let goal = lab.parse(&format!("2 S {CODE_J}"))?;

    let appends: Vec<Transformation> = tokenize(CODE_J)?
        .into_iter()
        .map(Transformation::AppendInactiveToken)
        .collect();
    let append_steps = appends
        .iter()
        .map(|t| verify(lab, t, BOUND))
        .collect::<Result<Vec<_>>>()?;
    let appends_valid = append_steps.iter().all(VerificationReport::is_valid);
    let after_appends = Transformation::apply_all(&appends, lab, &start);

    let flip = verify(lab, &Transformation::FlipSelector, BOUND)?;
    let flip_rejected = !flip.is_valid();

    let mut steps = appends.clone();
    steps.push(Transformation::FlipSelector);
    let chain = Chain::run(lab, &start, steps);
    let base = Catalog::base(m);
    let check = check_chain(lab, &chain, &base);
    let rejected_chain = json!({
        "steps": chain.terms(),
        "programs": chain.programs(lab).iter().map(ToString::to_string).collect::<Vec<_>>(),
        "catalog": base.name,
        "valid": check.valid,
        "failure": check.failure,
    });

    let restricted = Catalog::inert_edits();
    let d = distance(lab, &start, &goal, &restricted, &SearchBounds::tokens(BOUND))?;
    let unreachable = d.status == Status::Unreachable;

    let passed = appends_valid && flip_rejected && !check.valid && unreachable;
    Ok(SelectorReport {
        code_i: CODE_I.into(),
        code_j: CODE_J.into(),
        start: start.to_string(),
        goal: goal.to_string(),
        start_table: table(&start, m).to_string(),
        goal_table: table(&goal, m).to_string(),
        append_steps,
        after_appends: after_appends.to_string(),
        appends_valid,
        flip,
        flip_rejected,
        rejected_chain,
        rejected_chain_fails: !check.valid,
        restricted_catalog: restricted.name.clone(),
        restricted_distance: d.to_json(lab),
        unreachable_under_restriction: unreachable,
        passed,
    })
}

impl SelectorReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }
}
