//! Inverting an interpreter step with cheap interpreters.
//!
//! Given a valid `s` and a program `p`, the image `s(p)` is led back to `p`
//! by writing `n = index(p) + 1` into the comment one digit at a time and
//! then running `InvDovetail(s)`: among the first `n` enumerated programs,
//! `p` is the last one whose image under `s` has the right body.

use serde::Serialize;

use super::{ComplexityBits, Transformation};
use crate::lab::Lab;
use crate::lang::Program;
use crate::Result;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InverseChainPlan {
    pub source: Transformation,
    pub preimage: Program,
    pub image: Program,
    pub n: u64,
    pub steps: Vec<Transformation>,
}

#[derive(Serialize)]
struct PlanReport {
    source: String,
    preimage: String,
    image: String,
    n: u64,
    steps: Vec<String>,
    result: String,
    max_step_bits: u32,
    reproduces_preimage: bool,
}

impl InverseChainPlan {
    pub fn execute(&self, lab: &Lab) -> Program {
        Transformation::apply_all(&self.steps, lab, &self.image)
    }

    pub fn max_step_complexity(&self) -> ComplexityBits {
        self.steps
            .iter()
            .map(Transformation::complexity)
            .max()
            .unwrap_or_default()
    }

    pub fn to_json(&self, lab: &Lab) -> serde_json::Value {
        let result = self.execute(lab);
        serde_json::to_value(PlanReport {
            source: self.source.to_string(),
            preimage: self.preimage.to_string(),
            image: self.image.to_string(),
            n: self.n,
            steps: self.steps.iter().map(ToString::to_string).collect(),
            reproduces_preimage: result == self.preimage,
            result: result.to_string(),
            max_step_bits: self.max_step_complexity().0,
        })
        .expect("plan report serializes")
    }
}

fn append_digits(digits: &str, steps: &mut Vec<Transformation>) {
    steps.extend(
        digits
            .bytes()
            .map(|b| Transformation::AppendCommentDigit(b - b'0')),
    );
}

/// Plan leading `s(p)` back to `p`. When the image already carries a comment
/// it is stripped first, so the numeral read by `InvDovetail` is exactly `n`.
pub fn build_inverse_chain(lab: &Lab, s: &Transformation, p: &Program) -> Result<InverseChainPlan> {
    let n = lab.index_of(p)?.0 + 1;
    let image = s.apply(lab, p);
    let mut steps = Vec::new();
    if image.comment.is_some() {
        steps.push(Transformation::StripComment);
    }
    append_digits(&n.to_string(), &mut steps);
    steps.push(Transformation::inv_dovetail(s.clone()));
    Ok(InverseChainPlan {
        source: s.clone(),
        preimage: p.clone(),
        image,
        n,
        steps,
    })
}

/// Steps mapping `s(before)` back to `before`, preferring the direct route
/// for `InvDovetail` steps: re-apply the inner interpreter, then rewrite the
/// original comment.
pub fn undo_step(lab: &Lab, s: &Transformation, before: &Program) -> Result<Vec<Transformation>> {
    let after = s.apply(lab, before);
    if after == *before {
        return Ok(Vec::new());
    }
    if let (Transformation::InvDovetail(inner), Some(comment)) = (s, &before.comment) {
        let mut steps = vec![(**inner).clone()];
        if inner.apply(lab, &after).comment.is_some() {
            steps.push(Transformation::StripComment);
        }
        append_digits(comment.digits(), &mut steps);
        return Ok(steps);
    }
    Ok(build_inverse_chain(lab, s, before)?.steps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use Transformation::*;

    #[test]
    fn strip_comment_inverse() {
        let lab = Lab::default();
        let p = lab.parse("# 3 x").unwrap();
        let plan = build_inverse_chain(&lab, &StripComment, &p).unwrap();
        assert_eq!(plan.image.to_string(), "x");
        assert_eq!(plan.n, lab.index_of(&p).unwrap().0 + 1);
        assert_eq!(plan.steps.last(), Some(&Transformation::inv_dovetail(StripComment)));
        assert_eq!(plan.execute(&lab), p);
        assert_eq!(plan.max_step_complexity(), ComplexityBits(10));
    }

    #[test]
    fn identity_inverse() {
        let lab = Lab::default();
        let p = lab.parse("x").unwrap();
        let plan = build_inverse_chain(&lab, &Id, &p).unwrap();
        assert_eq!(plan.execute(&lab), p);
    }

    #[test]
    fn commented_image_is_stripped_first() {
        let lab = Lab::default();
        let p = lab.parse("# 3 ( x + 0 )").unwrap();
        let plan = build_inverse_chain(&lab, &AddZeroElim, &p).unwrap();
        assert_eq!(plan.image.to_string(), "# 3 x");
        assert_eq!(plan.steps[0], StripComment);
        assert_eq!(plan.execute(&lab), p);
    }

    #[test]
    fn undo_inv_dovetail_step() {
        let lab = Lab::default();
        let target = lab.parse("( 2 * 3 )").unwrap();
        let n = lab.index_of(&target).unwrap().0 + 1;
        let before = lab.parse(&format!("# {n} # 1")).unwrap();
        let s = Transformation::inv_dovetail(FoldConst);
        assert_eq!(s.apply(&lab, &before), target);
        let steps = undo_step(&lab, &s, &before).unwrap();
        assert_eq!(steps[0], FoldConst);
        assert_eq!(Transformation::apply_all(&steps, &lab, &target), before);
    }
}
