use serde::Serialize;

use super::Transformation;
use crate::lab::Lab;
use crate::lang::{table, FunctionTable, Program};
use crate::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Valid,
    Invalid,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub program: String,
    pub image: String,
    pub program_table: FunctionTable,
    pub image_table: FunctionTable,
}

/// Outcome of checking one transformation against every program up to
/// `bound` tokens.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub subject: String,
    pub bound: usize,
    pub programs_checked: u64,
    pub verdict: Verdict,
    pub counterexample: Option<Counterexample>,
}

impl VerificationReport {
    pub fn is_valid(&self) -> bool {
        self.verdict == Verdict::Valid
    }
}

pub fn verify(lab: &Lab, t: &Transformation, bound: usize) -> Result<VerificationReport> {
    Ok(verify_all(lab, std::slice::from_ref(t), bound)?.remove(0))
}

/// Verifies several transformations in one pass over the bounded universe.
/// Each report carries the canonically first counterexample for its subject.
pub fn verify_all(
    lab: &Lab,
    ts: &[Transformation],
    bound: usize,
) -> Result<Vec<VerificationReport>> {
    assert!(bound >= 1, "verification bound must be positive");
    let total = lab.enumeration().check_bound(bound)?;
    let m = lab.modulus();
    let mut found: Vec<Option<Counterexample>> = vec![None; ts.len()];
    let mut open: Vec<usize> = (0..ts.len()).collect();
    for p in lab.enumeration().iter_upto(bound)? {
        if open.is_empty() {
            break;
        }
        let before = table(&p, m);
        open.retain(|&i| {
            let image = ts[i].apply(lab, &p);
            if image == p {
                return true;
            }
            // the table only depends on the active expression
            let same_meaning = image.body.active() == p.body.active()
                || table(&image, m) == before;
            if same_meaning && round_trips(&image, lab) {
                return true;
            }
            let after = table(&image, m);
            found[i] = Some(Counterexample {
                program: p.to_string(),
                image: image.to_string(),
                program_table: before.clone(),
                image_table: after,
            });
            false
        });
    }
    Ok(ts
        .iter()
        .zip(found)
        .map(|(t, cx)| VerificationReport {
            subject: t.to_string(),
            bound,
            programs_checked: total,
            verdict: if cx.is_some() { Verdict::Invalid } else { Verdict::Valid },
            counterexample: cx,
        })
        .collect())
}

fn round_trips(p: &Program, lab: &Lab) -> bool {
    Program::from_tokens(&p.tokens(), lab.modulus()).as_ref() == Ok(p)
}
