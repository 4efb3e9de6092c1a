//! DIMACS CNF encoding of the coloring constraints.
//!
//! Variable `i` is true iff ray `i` is Green. A triad `(a, b, c)` emits
//! `(a ∨ b ∨ c)`, `(¬a ∨ ¬b)`, `(¬a ∨ ¬c)`, `(¬b ∨ ¬c)` in that order; a pair
//! `(a, b)` emits `(¬a ∨ ¬b)`. Triads come first, then pairs.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::kscolor::{Color, Coloring, ConstraintSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cnf {
    pub num_vars: usize,
    pub clauses: Vec<Vec<i32>>,
    pub comments: Vec<String>,
}

pub fn encode(cs: &ConstraintSet, comments: Vec<String>) -> Cnf {
    let mut clauses = Vec::with_capacity(4 * cs.triads().len() + cs.pairs().len());
    for t in cs.triads() {
        let [a, b, c] = t.map(i32::from);
        clauses.push(vec![a, b, c]);
        clauses.push(vec![-a, -b]);
        clauses.push(vec![-a, -c]);
        clauses.push(vec![-b, -c]);
    }
    for p in cs.pairs() {
        let [a, b] = p.map(i32::from);
        clauses.push(vec![-a, -b]);
    }
    Cnf { num_vars: cs.vertex_count(), clauses, comments }
}

impl Cnf {
    pub fn to_dimacs(&self) -> String {
        let mut out = String::new();
        for c in &self.comments {
            let _ = writeln!(out, "c {c}");
        }
        let _ = writeln!(out, "p cnf {} {}", self.num_vars, self.clauses.len());
        for clause in &self.clauses {
            for lit in clause {
                let _ = write!(out, "{lit} ");
            }
            out.push_str("0\n");
        }
        out
    }

    pub fn write_to(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_dimacs()).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
    }

    pub fn parse_dimacs(text: &str) -> Result<Cnf> {
        let bad = |m: &str| Error::InvalidArgument(format!("malformed DIMACS: {m}"));
        let mut comments = Vec::new();
        let mut header: Option<(usize, usize)> = None;
        let mut clauses = Vec::new();
        let mut current = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(c) = line.strip_prefix('c') {
                comments.push(c.trim_start().to_string());
                continue;
            }
            if let Some(rest) = line.strip_prefix("p cnf") {
                let nums: Vec<usize> = rest
                    .split_whitespace()
                    .map(|t| t.parse().map_err(|_| bad("header")))
                    .collect::<Result<_>>()?;
                if nums.len() != 2 {
                    return Err(bad("header"));
                }
                header = Some((nums[0], nums[1]));
                continue;
            }
            for tok in line.split_whitespace() {
                let lit: i32 = tok.parse().map_err(|_| bad(tok))?;
                if lit == 0 {
                    clauses.push(std::mem::take(&mut current));
                } else {
                    current.push(lit);
                }
            }
        }
        let (num_vars, num_clauses) = header.ok_or_else(|| bad("missing header"))?;
        if !current.is_empty() || clauses.len() != num_clauses {
            return Err(bad("clause count"));
        }
        if clauses.iter().flatten().any(|l| l.unsigned_abs() as usize > num_vars) {
            return Err(bad("variable out of range"));
        }
        Ok(Cnf { num_vars, clauses, comments })
    }

    /// Index of the first clause falsified by `assignment` (`assignment[i - 1]`
    /// is variable `i`).
    pub fn first_violated(&self, assignment: &[bool]) -> Option<usize> {
        self.clauses.iter().position(|clause| {
            !clause.iter().any(|&l| assignment[l.unsigned_abs() as usize - 1] == (l > 0))
        })
    }

    pub fn satisfied_by(&self, assignment: &[bool]) -> bool {
        self.first_violated(assignment).is_none()
    }
}

/// Green ⇒ true; Red or unassigned ⇒ false.
pub fn assignment_from_coloring(c: &Coloring) -> Vec<bool> {
    (1..=c.len() as u8).map(|r| c.get(r) == Color::Green).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kscolor::RAY1_DELETION_GREENS;
    use crate::orthograph::reference_decomposition;

    fn full() -> ConstraintSet {
        ConstraintSet::from_decomposition(33, &reference_decomposition())
    }

    #[test]
    fn full_instance_counts() {
        let cnf = encode(&full(), vec![]);
        assert_eq!(cnf.num_vars, 33);
        assert_eq!(cnf.clauses.len(), 88);
        assert!(cnf.to_dimacs().starts_with("p cnf 33 88\n1 2 3 0\n-1 -2 0\n-1 -3 0\n-2 -3 0\n"));
    }

    #[test]
    fn delete_one_is_satisfied_by_known_coloring() {
        let cs = full().delete(1).unwrap();
        let cnf = encode(&cs, vec!["deleted: 1".into()]);
        assert_eq!(cnf.clauses.len(), 12 * 4 + 28);
        let c = Coloring::from_greens(&cs, &RAY1_DELETION_GREENS);
        assert!(cnf.satisfied_by(&assignment_from_coloring(&c)));
        let mut bad = assignment_from_coloring(&c);
        bad[2] = true;
        assert!(cnf.first_violated(&bad).is_some());
    }

    #[test]
    fn dimacs_roundtrip() {
        let cnf = encode(&full(), vec!["catalog: peres".into()]);
        assert_eq!(Cnf::parse_dimacs(&cnf.to_dimacs()).unwrap(), cnf);
        assert!(Cnf::parse_dimacs("p cnf 2 1\n1 3 0\n").is_err());
        assert!(Cnf::parse_dimacs("1 2 0\n").is_err());
    }
}
