use std::collections::HashMap;
use std::sync::{Arc, Mutex, RwLock};

use crate::lang::{Enumeration, Modulus, Program, ProgramIndex};
use crate::transform::Transformation;
use crate::Result;

/// Shared context for applying transformations: the modulus, the canonical
/// enumeration, and per-interpreter preimage tables used by `InvDovetail`.
///
/// Everything cached here is a pure function of `(modulus, ceiling)`, so one
/// `Lab` can be shared freely between threads and queries.
#[derive(Debug)]
pub struct Lab {
    enumeration: Enumeration,
    preimages: Mutex<HashMap<Transformation, Arc<RwLock<PreimageTable>>>>,
}

/// For one interpreter `s`: every enumerated program `q` below `covered`,
/// grouped by the comment-free body of `s(q)`.
#[derive(Debug, Default)]
struct PreimageTable {
    covered: u64,
    by_image: HashMap<Box<[u8]>, Vec<u64>>,
}

impl Lab {
    pub fn new(modulus: Modulus, ceiling: u64) -> Self {
        Lab {
            enumeration: Enumeration::new(modulus, ceiling),
            preimages: Mutex::new(HashMap::new()),
        }
    }

    pub fn modulus(&self) -> Modulus {
        self.enumeration.modulus()
    }

    pub fn ceiling(&self) -> u64 {
        self.enumeration.ceiling()
    }

    pub fn enumeration(&self) -> &Enumeration {
        &self.enumeration
    }

    pub fn parse(&self, text: &str) -> Result<Program> {
        Program::parse(text, self.modulus())
    }

    pub fn index_of(&self, p: &Program) -> Result<ProgramIndex> {
        self.enumeration.index_of(p)
    }

    pub fn program_at(&self, i: ProgramIndex) -> Result<Program> {
        self.enumeration.program_at(i)
    }

    /// Largest index `k < limit` whose image under `s`, comment removed,
    /// equals `body`. `limit` is clamped to the ceiling.
    pub(crate) fn last_preimage_below(
        &self,
        s: &Transformation,
        limit: u64,
        body: &Program,
    ) -> Option<u64> {
        let limit = limit.min(self.ceiling());
        if limit == 0 {
            return None;
        }
        let table = {
            let mut all = self.preimages.lock().unwrap();
            all.entry(s.clone()).or_default().clone()
        };
        let key = body.codes().into_boxed_slice();
        {
            let t = table.read().unwrap();
            if t.covered >= limit {
                return t.lookup(&key, limit);
            }
        }
        let mut t = table.write().unwrap();
        while t.covered < limit {
            let k = t.covered;
            let q = self.enumeration.program_at_unchecked(k);
            let image = s.apply(self, &q).without_comment();
            t.by_image
                .entry(image.codes().into_boxed_slice())
                .or_default()
                .push(k);
            t.covered += 1;
        }
        t.lookup(&key, limit)
    }
}

impl PreimageTable {
    fn lookup(&self, key: &[u8], limit: u64) -> Option<u64> {
        let ks = self.by_image.get(key)?;
        let n = ks.partition_point(|&k| k < limit);
        n.checked_sub(1).map(|i| ks[i])
    }
}

impl Default for Lab {
    fn default() -> Self {
        Lab::new(Modulus::DEFAULT, crate::lang::DEFAULT_CEILING)
    }
}
