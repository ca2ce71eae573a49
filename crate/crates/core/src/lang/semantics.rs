use std::fmt;

use serde::Serialize;

use super::syntax::{Modulus, Program};

/// The function a program denotes: its outputs on `0..m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FunctionTable {
    pub modulus: Modulus,
    pub outputs: Vec<u8>,
}

impl fmt::Display for FunctionTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, v) in self.outputs.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("]")
    }
}

/// Runs `p` on input `x`. Comments and inactive runs are never looked at.
pub fn evaluate(p: &Program, x: u8, m: Modulus) -> u8 {
    debug_assert!(x < m.get());
    p.body.active().evaluate(x, m)
}

pub fn table(p: &Program, m: Modulus) -> FunctionTable {
    let e = p.body.active();
    FunctionTable {
        modulus: m,
        outputs: (0..m.get()).map(|x| e.evaluate(x, m)).collect(),
    }
}

/// Extensional equality: same output on every input.
pub fn equivalent(p: &Program, q: &Program, m: Modulus) -> bool {
    let (a, b) = (p.body.active(), q.body.active());
    (0..m.get()).all(|x| a.evaluate(x, m) == b.evaluate(x, m))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(text: &str) -> Program {
        Program::parse(text, Modulus::DEFAULT).unwrap()
    }

    #[test]
    fn evaluates_mod_m() {
        let m = Modulus::DEFAULT;
        assert_eq!(evaluate(&p("( x + 1 )"), 4, m), 0);
        assert_eq!(evaluate(&p("# 7 ( x * x )"), 3, m), 4);
        assert_eq!(evaluate(&p("2 ) ( S 3"), 0, m), 3);
    }

    #[test]
    fn tables() {
        let m = Modulus::DEFAULT;
        assert_eq!(table(&p("x"), m).outputs, vec![0, 1, 2, 3, 4]);
        assert_eq!(table(&p("( 2 * x )"), m).outputs, vec![0, 2, 4, 1, 3]);
        assert_eq!(table(&p("# 42 ( x + x )"), m).outputs, vec![0, 2, 4, 1, 3]);
        assert_eq!(table(&p("x"), m).to_string(), "[0,1,2,3,4]");
    }

    #[test]
    fn equivalence() {
        let m = Modulus::DEFAULT;
        assert!(equivalent(&p("( x + x )"), &p("( 2 * x )"), m));
        assert!(!equivalent(&p("x"), &p("( x * x )"), m));
        assert!(equivalent(&p("1 x S 0"), &p("x"), m));
    }
}
