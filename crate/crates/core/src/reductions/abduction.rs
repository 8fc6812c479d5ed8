use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, ParseError, ParseErrorKind, Result};
use crate::formulas::{file_loader, parse_document, GammaFormula, Var};
use crate::relations::ConstraintLanguage;

/// An abduction instance: theory `phi`, hypotheses `H` and observation `q ∉ H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbdInstance {
    pub language: ConstraintLanguage,
    pub phi: GammaFormula,
    pub hypotheses: BTreeSet<Var>,
    pub q: Var,
}

impl AbdInstance {
    pub fn new(
        language: ConstraintLanguage,
        phi: GammaFormula,
        hypotheses: impl IntoIterator<Item = Var>,
        q: Var,
    ) -> Result<Self> {
        let hypotheses: BTreeSet<Var> = hypotheses.into_iter().collect();
        if hypotheses.contains(&q) {
            return Err(Error::InvalidFormula(format!("observation `{q}` is a hypothesis")));
        }
        phi.check_language(&language)?;
        Ok(AbdInstance {
            language,
            phi,
            hypotheses,
            q,
        })
    }

    /// Every variable mentioned: `var(phi) ∪ H ∪ {q}`.
    pub fn all_vars(&self) -> BTreeSet<Var> {
        let mut vs = self.phi.vars();
        vs.extend(self.hypotheses.iter().cloned());
        vs.insert(self.q.clone());
        vs
    }

    /// Renders with relations inline; the theory is the single formula `phi`.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        for r in self.language.relations() {
            let _ = writeln!(out, "{r}");
        }
        let _ = writeln!(out, "formula phi = {}", self.phi);
        out.push_str("kb phi\nhypotheses");
        for h in &self.hypotheses {
            let _ = write!(out, " {h}");
        }
        let _ = writeln!(out, "\nobservation {}", self.q);
        out
    }
}

/// Parses an abduction file. The theory is the conjunction of the `kb`
/// formulas in order.
pub fn parse_abduction(
    text: &str,
    load: &mut dyn FnMut(&str) -> Result<String, String>,
) -> Result<AbdInstance, ParseError> {
    let doc = parse_document(text, load)?;
    if doc.claim.is_some() || doc.relevant.is_some() {
        return Err(ParseError::syntax(0, "`claim`/`relevant` belong in instance files"));
    }
    let hypotheses = doc
        .hypotheses
        .clone()
        .ok_or_else(|| ParseError::new(0, ParseErrorKind::Missing("`hypotheses` line")))?;
    let q = doc
        .observation
        .clone()
        .ok_or_else(|| ParseError::new(0, ParseErrorKind::Missing("`observation` line")))?;
    let mut parts = doc.kb.iter().map(|n| doc.formula(n).expect("checked"));
    let first = parts
        .next()
        .ok_or_else(|| ParseError::new(0, ParseErrorKind::Missing("nonempty `kb` line")))?;
    let phi = parts.fold(first.clone(), |acc, f| acc.and(f));
    AbdInstance::new(doc.language, phi, hypotheses, q)
        .map_err(|e| ParseError::new(0, ParseErrorKind::Invalid(e.to_string())))
}

pub fn parse_abduction_file(path: &Path) -> Result<AbdInstance> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| ParseError::new(0, ParseErrorKind::Io(format!("{}: {e}", path.display()))))?;
    let mut load = file_loader(path);
    Ok(parse_abduction(&text, &mut load)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn no_files(p: &str) -> Result<String, String> {
        Err(format!("no file {p}"))
    }

    #[test]
    fn round_trip() {
        let text = "relation IMPL 2 { 00 01 11 }\nformula a = IMPL(h,q)\nformula b = IMPL(g,h)\n\
                    kb a b\nhypotheses g h\nobservation q\n";
        let abd = parse_abduction(text, &mut no_files).unwrap();
        assert_eq!(abd.phi.to_string(), "IMPL(h,q) & IMPL(g,h)");
        assert_eq!(abd.hypotheses.len(), 2);
        assert_eq!(parse_abduction(&abd.serialize(), &mut no_files).unwrap(), abd);
    }

    #[test]
    fn rejects_observation_among_hypotheses() {
        let text = "relation IMPL 2 { 00 01 11 }\nformula a = IMPL(h,q)\nkb a\nhypotheses q\nobservation q\n";
        assert!(parse_abduction(text, &mut no_files).is_err());
        let text = "relation IMPL 2 { 00 01 11 }\nformula a = IMPL(h,q)\nkb a\nhypotheses h\n";
        assert!(parse_abduction(text, &mut no_files).is_err());
    }
}
