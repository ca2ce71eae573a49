//! Finite sets of verified interpreters and their text format.
//!
//! ```text
//! # name: base
//! # bound: 7
//! Id
//! StripComment
//! AppendCommentDigit 7
//! InvDovetail (StripComment)
//! ```
//!
//! A `# bound: N` header applies to every entry after it, up to the next
//! header. Other lines starting with `#` are ignored.

use std::collections::BTreeSet;
use std::path::Path;

use super::verify::verify_all;
use super::{ComplexityBits, Transformation, VerificationReport};
use crate::lab::Lab;
use crate::lang::token::INACTIVE_TOKENS;
use crate::lang::Modulus;
use crate::{Error, Result};

pub const DEFAULT_BOUND: usize = 7;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub transformation: Transformation,
    pub complexity: ComplexityBits,
    /// Token bound at which the entry was verified.
    pub bound: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Catalog {
    pub name: String,
    entries: Vec<CatalogEntry>,
}

impl Catalog {
    /// Builds a catalog; `Id` is added at the front when missing and
    /// duplicates are dropped.
    pub fn new(name: impl Into<String>, ts: impl IntoIterator<Item = Transformation>, bound: usize) -> Self {
        let mut c = Catalog {
            name: name.into(),
            entries: Vec::new(),
        };
        c.push(Transformation::Id, bound);
        for t in ts {
            c.push(t, bound);
        }
        c
    }

    fn push(&mut self, t: Transformation, bound: usize) -> bool {
        if self.contains(&t) {
            return false;
        }
        self.entries.push(CatalogEntry {
            complexity: t.complexity(),
            transformation: t,
            bound,
        });
        true
    }

    /// The base interpreters without their inverse wrappers.
    pub fn base_rules(m: Modulus) -> Vec<Transformation> {
        use Transformation::*;
        let mut ts = vec![Id, StripComment];
        ts.extend((0..10).map(AppendCommentDigit));
        ts.extend([
            CommuteAdd,
            CommuteMul,
            FoldConst,
            AddZeroElim,
            AddZeroIntro,
            MulOneElim,
            MulOneIntro,
        ]);
        ts.extend((0..m.literal_limit()).map(UnfoldConstAdd));
        ts.extend(INACTIVE_TOKENS.iter().map(|&t| AppendInactiveToken(t)));
        ts.push(ClearInactive);
        ts
    }

    /// The shipped catalog: every base rule plus `InvDovetail(s)` for each
    /// non-identity base rule `s`, which makes it closed under the inverse
    /// construction.
    pub fn base(m: Modulus) -> Catalog {
        let rules = Catalog::base_rules(m);
        let wrappers: Vec<_> = rules
            .iter()
            .filter(|t| **t != Transformation::Id)
            .map(|t| Transformation::inv_dovetail(t.clone()))
            .collect();
        Catalog::new("base", rules.into_iter().chain(wrappers), DEFAULT_BOUND)
    }

    /// `Id`, `StripComment` and the ten digit appends.
    pub fn comment_only() -> Catalog {
        Catalog::new(
            "comment-only",
            std::iter::once(Transformation::StripComment)
                .chain((0..10).map(Transformation::AppendCommentDigit)),
            DEFAULT_BOUND,
        )
    }

    /// Comment edits plus inactive-run edits: everything that leaves the
    /// active expression and the selector alone.
    pub fn inert_edits() -> Catalog {
        let mut c = Catalog::comment_only();
        c.name = "inert-edits".into();
        for &t in &INACTIVE_TOKENS {
            c.push(Transformation::AppendInactiveToken(t), DEFAULT_BOUND);
        }
        c.push(Transformation::ClearInactive, DEFAULT_BOUND);
        c
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn transformations(&self) -> impl Iterator<Item = &Transformation> {
        self.entries.iter().map(|e| &e.transformation)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn contains(&self, t: &Transformation) -> bool {
        self.entries.iter().any(|e| e.transformation == *t)
    }

    /// The cost recorded for `t`, if it is an entry.
    pub fn complexity_of(&self, t: &Transformation) -> Option<ComplexityBits> {
        self.entries
            .iter()
            .find(|e| e.transformation == *t)
            .map(|e| e.complexity)
    }

    /// Overrides the recorded cost of an entry. Only useful for exercising
    /// the complexity-table audit with a deliberately broken catalog.
    pub fn with_declared_complexity(mut self, t: &Transformation, bits: ComplexityBits) -> Catalog {
        for e in &mut self.entries {
            if e.transformation == *t {
                e.complexity = bits;
            }
        }
        self
    }

    /// Distinct entry costs, ascending (0 for `Id` included).
    pub fn complexity_levels(&self) -> Vec<ComplexityBits> {
        self.entries
            .iter()
            .map(|e| e.complexity)
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect()
    }

    pub fn max_complexity(&self) -> ComplexityBits {
        self.entries
            .iter()
            .map(|e| e.complexity)
            .max()
            .unwrap_or_default()
    }

    /// Whether every non-identity entry has its `InvDovetail` wrapper, and
    /// the comment edits the inverse construction needs are present.
    pub fn is_inverse_closed(&self) -> bool {
        let comment_steps = self.contains(&Transformation::StripComment)
            && (0..10).all(|d| self.contains(&Transformation::AppendCommentDigit(d)));
        comment_steps
            && self.entries.iter().all(|e| match &e.transformation {
                Transformation::Id | Transformation::InvDovetail(_) => true,
                t => self.contains(&Transformation::inv_dovetail(t.clone())),
            })
    }

    /// Additive slack allowed between the two directions of the distance:
    /// the wrapper overhead `5 + rawlen(s) - C(s)` over all entries, and the
    /// cost of one comment-digit step.
    pub fn symmetry_slack(&self) -> u32 {
        let wrapper = self
            .entries
            .iter()
            .map(|e| 5 + e.transformation.raw_len() - e.complexity.0)
            .max()
            .unwrap_or(0);
        wrapper.max(Transformation::AppendCommentDigit(0).complexity().0)
    }

    /// Re-verifies every entry at its recorded bound.
    pub fn verification_reports(&self, lab: &Lab) -> Result<Vec<VerificationReport>> {
        let bounds: BTreeSet<usize> = self.entries.iter().map(|e| e.bound).collect();
        let mut reports = vec![None; self.entries.len()];
        for bound in bounds {
            let idx: Vec<usize> = (0..self.entries.len())
                .filter(|&i| self.entries[i].bound == bound)
                .collect();
            let ts: Vec<Transformation> = idx
                .iter()
                .map(|&i| self.entries[i].transformation.clone())
                .collect();
            for (i, r) in idx.into_iter().zip(verify_all(lab, &ts, bound)?) {
                reports[i] = Some(r);
            }
        }
        Ok(reports.into_iter().map(Option::unwrap).collect())
    }

    pub fn verify(&self, lab: &Lab) -> Result<()> {
        for r in self.verification_reports(lab)? {
            if let Some(cx) = r.counterexample {
                return Err(Error::VerificationFailed {
                    entry: r.subject,
                    bound: r.bound,
                    counterexample: cx.program,
                });
            }
        }
        Ok(())
    }

    pub fn parse_text(text: &str) -> Result<Catalog> {
        let mut name = String::from("unnamed");
        let mut bound = DEFAULT_BOUND;
        let mut c = Catalog {
            name: String::new(),
            entries: Vec::new(),
        };
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(header) = line.strip_prefix('#') {
                let header = header.trim();
                if let Some(v) = header.strip_prefix("bound:") {
                    bound = v.trim().parse().ok().filter(|&b| b >= 1).ok_or_else(|| {
                        Error::MalformedCatalog {
                            line: line_no,
                            reason: format!("bad bound `{}`", v.trim()),
                        }
                    })?;
                } else if let Some(v) = header.strip_prefix("name:") {
                    name = v.trim().to_string();
                }
                continue;
            }
            let t: Transformation = line.parse().map_err(|e: Error| Error::MalformedCatalog {
                line: line_no,
                reason: e.to_string(),
            })?;
            if !c.push(t, bound) {
                return Err(Error::MalformedCatalog {
                    line: line_no,
                    reason: format!("duplicate entry `{line}`"),
                });
            }
        }
        if !c.contains(&Transformation::Id) {
            c.entries.insert(
                0,
                CatalogEntry {
                    transformation: Transformation::Id,
                    complexity: ComplexityBits(0),
                    bound,
                },
            );
        }
        c.name = name;
        Ok(c)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("# name: {}\n", self.name);
        let mut current = None;
        for e in &self.entries {
            if current != Some(e.bound) {
                out.push_str(&format!("# bound: {}\n", e.bound));
                current = Some(e.bound);
            }
            out.push_str(&e.transformation.to_string());
            out.push('\n');
        }
        out
    }

    /// Loads a catalog file. With `reverify`, every entry is checked again at
    /// its recorded bound; otherwise recorded bounds are trusted.
    pub fn load(path: &Path, lab: &Lab, reverify: bool) -> Result<Catalog> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let c = Catalog::parse_text(&text)?;
        if reverify {
            c.verify(lab)?;
        }
        Ok(c)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_text()).map_err(|e| Error::io(path, e))
    }

    pub fn describe(&self) -> Vec<(String, u32, usize)> {
        self.entries
            .iter()
            .map(|e| (e.transformation.to_string(), e.complexity.0, e.bound))
            .collect()
    }
}


#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn base_catalog_shape() {
        let c = Catalog::base(Modulus::DEFAULT);
        assert_eq!(c.entries()[0].transformation, Transformation::Id);
        assert_eq!(c.len(), 40 + 39);
        assert!(c.is_inverse_closed());
        assert_eq!(
            c.complexity_levels().iter().map(|b| b.0).collect::<Vec<_>>(),
            vec![0, 5, 9, 10, 14]
        );
        assert_eq!(c.symmetry_slack(), 10);
        let zero: Vec<_> = c.entries().iter().filter(|e| e.complexity.0 == 0).collect();
        assert_eq!(zero.len(), 1);
    }

    #[test]
    fn text_round_trip_keeps_bounds() {
        let text = "# name: mixed\n# bound: 3\nStripComment\n# bound: 5\nInvDovetail (AppendInactiveToken ))\n";
        let c = Catalog::parse_text(text).unwrap();
        assert_eq!(c.entries()[0].transformation, Transformation::Id);
        assert_eq!(c.entries()[1].bound, 3);
        assert_eq!(c.entries()[2].bound, 5);
        let again = Catalog::parse_text(&c.to_text()).unwrap();
        assert_eq!(again, c);
        assert_eq!(again.to_text(), c.to_text());
    }

    #[test]
    fn malformed_lines_are_located() {
        let err = Catalog::parse_text("Id\nStripComment\nBogus\n").unwrap_err();
        assert!(matches!(err, Error::MalformedCatalog { line: 3, .. }), "{err}");
        let dup = Catalog::parse_text("Id\nId\n").unwrap_err();
        assert!(matches!(dup, Error::MalformedCatalog { line: 2, .. }));
        let bound = Catalog::parse_text("# bound: zero\n").unwrap_err();
        assert!(matches!(bound, Error::MalformedCatalog { line: 1, .. }));
    }

    #[test]
    fn reverification_rejects_flip_selector() {
        let lab = Lab::default();
        let c = Catalog::parse_text("# bound: 4\nStripComment\nFlipSelector\n").unwrap();
        match c.verify(&lab) {
            Err(Error::VerificationFailed { entry, counterexample, .. }) => {
                assert_eq!(entry, "FlipSelector");
                assert_eq!(counterexample, "1 0 S 1");
            }
            other => panic!("{other:?}"),
        }
    }
}
