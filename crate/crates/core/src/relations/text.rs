//! Relation files: one `relation <NAME> <arity> { <tuple> ... }` per line.

use super::{is_identifier, ConstraintLanguage, Relation};
use crate::error::{ParseError, ParseErrorKind};

/// Parses a relation file into a constraint language.
///
/// Blank lines and `#` comments are ignored.
pub fn parse_language(text: &str) -> Result<ConstraintLanguage, ParseError> {
    let mut relations: Vec<Relation> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let r = parse_declaration(line, line_no)?;
        if relations.iter().any(|o| o.name() == r.name()) {
            return Err(ParseError::new(
                line_no,
                ParseErrorKind::Duplicate(format!("relation `{}`", r.name())),
            ));
        }
        relations.push(r);
    }
    if relations.is_empty() {
        return Err(ParseError::new(0, ParseErrorKind::Missing("relation declaration")));
    }
    ConstraintLanguage::new(relations)
        .map_err(|e| ParseError::new(0, ParseErrorKind::Invalid(e.to_string())))
}

fn parse_declaration(line: &str, line_no: usize) -> Result<Relation, ParseError> {
    // braces may be glued to tuples: `{01 10}`
    let spaced = line.replace('{', " { ").replace('}', " } ");
    let tokens: Vec<&str> = spaced.split_whitespace().collect();
    let syntax = |msg: &str| ParseError::syntax(line_no, msg);

    if tokens.first() != Some(&"relation") {
        return Err(syntax("expected `relation <NAME> <arity> { ... }`"));
    }
    let name = *tokens.get(1).ok_or_else(|| syntax("missing relation name"))?;
    if !is_identifier(name) {
        return Err(syntax(&format!("`{name}` is not a valid relation name")));
    }
    let arity: usize = tokens
        .get(2)
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| syntax("missing or malformed arity"))?;
    if tokens.get(3) != Some(&"{") {
        return Err(syntax("expected `{` after arity"));
    }
    if tokens.last() != Some(&"}") || tokens[4..].contains(&"{") {
        return Err(syntax("expected a single `}` closing the tuple list"));
    }
    let body = &tokens[4..tokens.len() - 1];
    if body.contains(&"}") {
        return Err(syntax("unexpected `}`"));
    }
    Relation::from_strs(name, arity, body.iter().copied())
        .map_err(|e| ParseError::new(line_no, ParseErrorKind::Invalid(e.to_string())))
}

/// Renders a language as a relation file, relations in name order.
pub fn serialize_language(language: &ConstraintLanguage) -> String {
    let mut out = String::new();
    for r in language.relations() {
        out.push_str(&r.to_string());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relations::catalog;

    #[test]
    fn parses_example_declaration() {
        let l = parse_language("relation NEQ 2 { 01 10 }\n").unwrap();
        assert!(l.get("NEQ").unwrap().same_tuples(&catalog::neq()));
    }

    #[test]
    fn comments_and_glued_braces() {
        let l = parse_language("# header\n\nrelation T 1 {1}  # unit\nrelation F 1 { 0}\n").unwrap();
        assert_eq!(l.len(), 2);
    }

    #[test]
    fn round_trip() {
        let l = ConstraintLanguage::new([catalog::nae3(), catalog::t(), catalog::implies()]).unwrap();
        assert_eq!(parse_language(&serialize_language(&l)).unwrap(), l);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let err = parse_language("relation T 1 { 1 }\nrelation X 2 { 011 }\n").unwrap_err();
        assert_eq!(err.line, 2);
        let err = parse_language("relation T 1 { 1 }\nrelation T 1 { 0 }\n").unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::Duplicate(_)));
        let err = parse_language("relation FULL 1 { 0 1 }").unwrap_err();
        assert_eq!(err.line, 1);
        assert!(parse_language("rel T 1 { 1 }").is_err());
        assert!(parse_language("relation T x { 1 }").is_err());
        assert!(parse_language("relation T 1 1 }").is_err());
        assert!(parse_language("").is_err());
    }
}
