use std::fmt;

use crate::relations::{ConstraintLanguage, PropertyReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ComplexityClass {
    P,
    NpComplete,
    CoNpComplete,
    DpComplete,
    SigmaP2Complete,
}

impl fmt::Display for ComplexityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ComplexityClass::P => "P",
            ComplexityClass::NpComplete => "NP-complete",
            ComplexityClass::CoNpComplete => "coNP-complete",
            ComplexityClass::DpComplete => "DP-complete",
            ComplexityClass::SigmaP2Complete => "SigmaP2-complete",
        })
    }
}

/// Complexity of the three argumentation problems for a fixed language.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ComplexityReport {
    pub arg: ComplexityClass,
    pub argcheck: ComplexityClass,
    pub argrel: ComplexityClass,
}

impl ComplexityReport {
    pub fn from_properties(p: &PropertyReport) -> Self {
        use ComplexityClass::*;
        let arg = match (p.schaefer, p.eps_valid) {
            (true, true) => P,
            (true, false) => NpComplete,
            (false, true) => CoNpComplete,
            (false, false) => SigmaP2Complete,
        };
        let argcheck = if p.schaefer { P } else { DpComplete };
        let argrel = if p.positive || p.negative {
            P
        } else if p.schaefer {
            NpComplete
        } else {
            SigmaP2Complete
        };
        ComplexityReport {
            arg,
            argcheck,
            argrel,
        }
    }
}

pub fn classify_complexity(language: &ConstraintLanguage) -> ComplexityReport {
    ComplexityReport::from_properties(&language.properties())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relations::catalog;
    use ComplexityClass::*;

    fn classify(r: crate::relations::Relation) -> ComplexityReport {
        classify_complexity(&ConstraintLanguage::new([r]).unwrap())
    }

    #[test]
    fn single_relation_languages() {
        let or2 = classify(catalog::or2());
        assert_eq!((or2.arg, or2.argcheck, or2.argrel), (P, P, P));
        assert_eq!(classify(catalog::or2_with_copy()).argrel, NpComplete);
        let neq = classify(catalog::neq());
        assert_eq!((neq.arg, neq.argcheck, neq.argrel), (NpComplete, P, NpComplete));
        let nae = classify(catalog::nae3());
        assert_eq!(
            (nae.arg, nae.argcheck, nae.argrel),
            (SigmaP2Complete, DpComplete, SigmaP2Complete)
        );
    }

    #[test]
    fn display_strings() {
        assert_eq!(SigmaP2Complete.to_string(), "SigmaP2-complete");
        assert_eq!(CoNpComplete.to_string(), "coNP-complete");
    }
}
