use std::fmt::Write as _;

use crate::error::{Error, ParseError, ParseErrorKind, Result};

/// A CNF over variables `1..=vars`; literals are signed variable indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CnfInput {
    vars: usize,
    clauses: Vec<Vec<i32>>,
}

impl CnfInput {
    /// Duplicate literals inside a clause are merged. Fails on empty or
    /// tautological clauses and on literals outside `1..=vars`.
    pub fn new(vars: usize, clauses: Vec<Vec<i32>>) -> Result<Self> {
        let mut out = Vec::with_capacity(clauses.len());
        for mut c in clauses {
            if c.is_empty() {
                return Err(Error::InvalidFormula("empty clause".into()));
            }
            for &l in &c {
                if l == 0 || l.unsigned_abs() as usize > vars {
                    return Err(Error::InvalidFormula(format!(
                        "literal {l} outside variables 1..={vars}"
                    )));
                }
                if c.contains(&-l) {
                    return Err(Error::InvalidFormula(format!(
                        "clause contains both {l} and {}",
                        -l
                    )));
                }
            }
            let mut seen = Vec::with_capacity(c.len());
            c.retain(|l| {
                let fresh = !seen.contains(l);
                seen.push(*l);
                fresh
            });
            out.push(c);
        }
        Ok(CnfInput { vars, clauses: out })
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn clauses(&self) -> &[Vec<i32>] {
        &self.clauses
    }

    pub fn max_width(&self) -> usize {
        self.clauses.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Evaluates under `assignment`, bit `j - 1` holding variable `j`.
    pub fn satisfied_by(&self, assignment: u64) -> bool {
        self.clauses.iter().all(|c| clause_holds(c, assignment))
    }

    pub fn to_dimacs(&self) -> String {
        let mut s = format!("p cnf {} {}\n", self.vars, self.clauses.len());
        for c in &self.clauses {
            for l in c {
                let _ = write!(s, "{l} ");
            }
            s.push_str("0\n");
        }
        s
    }
}

pub(crate) fn clause_holds(c: &[i32], assignment: u64) -> bool {
    c.iter().any(|&l| {
        let bit = (assignment >> (l.unsigned_abs() - 1)) & 1 == 1;
        bit == (l > 0)
    })
}

/// Reads DIMACS CNF: `c` comments, one `p cnf <vars> <clauses>` header,
/// zero-terminated clauses that may span lines.
pub fn parse_dimacs(text: &str) -> Result<CnfInput, ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses: Vec<Vec<i32>> = Vec::new();
    let mut current: Vec<i32> = Vec::new();
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if line.starts_with('%') {
            break;
        }
        if let Some(rest) = line.strip_prefix('p') {
            if header.is_some() {
                return Err(ParseError::new(line_no, ParseErrorKind::Duplicate("header".into())));
            }
            let parts: Vec<&str> = rest.split_whitespace().collect();
            match parts.as_slice() {
                ["cnf", n, k] => {
                    let n = n.parse().map_err(|_| ParseError::syntax(line_no, "bad variable count"))?;
                    let k = k.parse().map_err(|_| ParseError::syntax(line_no, "bad clause count"))?;
                    header = Some((n, k));
                }
                _ => return Err(ParseError::syntax(line_no, "expected `p cnf <vars> <clauses>`")),
            }
            continue;
        }
        if header.is_none() {
            return Err(ParseError::syntax(line_no, "clause before `p cnf` header"));
        }
        for tok in line.split_whitespace() {
            let l: i32 = tok
                .parse()
                .map_err(|_| ParseError::syntax(line_no, format!("bad literal `{tok}`")))?;
            if l == 0 {
                if current.is_empty() {
                    return Err(ParseError::syntax(line_no, "empty clause"));
                }
                clauses.push(std::mem::take(&mut current));
            } else {
                current.push(l);
            }
        }
        last_line = line_no;
    }
    let (n, k) = header.ok_or_else(|| ParseError::new(0, ParseErrorKind::Missing("`p cnf` header")))?;
    if !current.is_empty() {
        return Err(ParseError::syntax(last_line, "clause not terminated by 0"));
    }
    if clauses.len() != k {
        return Err(ParseError::syntax(
            0,
            format!("header declares {k} clauses, found {}", clauses.len()),
        ));
    }
    CnfInput::new(n, clauses).map_err(|e| ParseError::new(0, ParseErrorKind::Invalid(e.to_string())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimacs_round_trip() {
        let text = "c example\np cnf 3 2\n1 -2\n 3 0 -1\n0\n";
        let cnf = parse_dimacs(text).unwrap();
        assert_eq!(cnf.clauses(), &[vec![1, -2, 3], vec![-1]]);
        assert_eq!(parse_dimacs(&cnf.to_dimacs()).unwrap(), cnf);
    }

    #[test]
    fn dimacs_errors() {
        assert!(parse_dimacs("1 0\n").is_err());
        assert!(parse_dimacs("p cnf 1 2\n1 0\n").is_err());
        assert!(parse_dimacs("p cnf 1 1\n2 0\n").is_err());
        assert!(parse_dimacs("p cnf 1 1\n1 -1 0\n").is_err());
        assert!(parse_dimacs("p cnf 1 1\n1\n").is_err());
        assert!(parse_dimacs("p cnf 1 1\nx 0\n").is_err());
    }

    #[test]
    fn evaluation() {
        let cnf = CnfInput::new(2, vec![vec![1, 1, 2], vec![-1]]).unwrap();
        assert_eq!(cnf.clauses()[0], [1, 2]);
        assert!(cnf.satisfied_by(0b10));
        assert!(!cnf.satisfied_by(0b01));
    }
}
