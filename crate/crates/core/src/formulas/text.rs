//! Instance files.
//!
//! ```text
//! use <relation-file>
//! relation <NAME> <arity> { ... }      # inline declaration
//! formula <name> = R(a,b) & S(b)
//! kb <name> ...
//! claim R(a,b) & ...
//! relevant <name>
//! hypotheses <var> ...                 # abduction files only
//! observation <var>                    # abduction files only
//! ```

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use super::{ArgInstance, Constraint, GammaFormula, Var};
use crate::error::{Error, ParseError, ParseErrorKind};
use crate::relations::{is_identifier, parse_language, ConstraintLanguage};

/// The raw content of an instance or abduction file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceDocument {
    pub language: ConstraintLanguage,
    /// Declared formulas in file order.
    pub formulas: Vec<(String, GammaFormula)>,
    pub kb: Vec<String>,
    pub claim: Option<GammaFormula>,
    pub relevant: Option<String>,
    pub hypotheses: Option<Vec<Var>>,
    pub observation: Option<Var>,
}

impl InstanceDocument {
    pub fn formula(&self, name: &str) -> Option<&GammaFormula> {
        self.formulas
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, f)| f)
    }
}

fn err(line: usize, kind: ParseErrorKind) -> ParseError {
    ParseError::new(line, kind)
}

/// Parses an instance or abduction file. `load` resolves `use` paths to
/// relation-file contents.
pub fn parse_document(
    text: &str,
    load: &mut dyn FnMut(&str) -> Result<String, String>,
) -> Result<InstanceDocument, ParseError> {
    let mut language: Option<ConstraintLanguage> = None;
    let mut formulas: Vec<(String, GammaFormula, usize)> = Vec::new();
    let mut pending: Vec<(usize, String, String)> = Vec::new();
    let mut kb: Option<(usize, Vec<String>)> = None;
    let mut claim_src: Option<(usize, String)> = None;
    let mut relevant: Option<(usize, String)> = None;
    let mut hypotheses: Option<Vec<Var>> = None;
    let mut observation: Option<Var> = None;

    let merge = |lang: ConstraintLanguage, line: usize, language: &mut Option<ConstraintLanguage>| {
        *language = Some(match language.take() {
            None => lang,
            Some(l) => l
                .union(&lang)
                .map_err(|e| err(line, ParseErrorKind::Invalid(e.to_string())))?,
        });
        Ok::<(), ParseError>(())
    };

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (keyword, rest) = line
            .split_once(char::is_whitespace)
            .map(|(k, r)| (k, r.trim()))
            .unwrap_or((line, ""));
        let once = |seen: bool, what: &str| {
            if seen {
                Err(err(line_no, ParseErrorKind::Duplicate(format!("`{what}` line"))))
            } else {
                Ok(())
            }
        };
        match keyword {
            "use" => {
                if rest.is_empty() {
                    return Err(ParseError::syntax(line_no, "`use` needs a path"));
                }
                let content = load(rest).map_err(|e| err(line_no, ParseErrorKind::Io(e)))?;
                let lang = parse_language(&content).map_err(|e| {
                    err(line_no, ParseErrorKind::Invalid(format!("in `{rest}`: {e}")))
                })?;
                merge(lang, line_no, &mut language)?;
            }
            "relation" => {
                let lang = parse_language(line).map_err(|e| ParseError::new(line_no, e.kind))?;
                merge(lang, line_no, &mut language)?;
            }
            "formula" => {
                let (name, body) = rest
                    .split_once('=')
                    .ok_or_else(|| ParseError::syntax(line_no, "expected `formula <name> = ...`"))?;
                let name = name.trim();
                if !is_identifier(name) {
                    return Err(ParseError::syntax(
                        line_no,
                        format!("`{name}` is not a valid formula name"),
                    ));
                }
                if pending.iter().any(|(_, n, _)| n == name) {
                    return Err(err(
                        line_no,
                        ParseErrorKind::Duplicate(format!("formula `{name}`")),
                    ));
                }
                pending.push((line_no, name.to_string(), body.trim().to_string()));
            }
            "kb" => {
                once(kb.is_some(), "kb")?;
                let names: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
                kb = Some((line_no, names));
            }
            "claim" => {
                once(claim_src.is_some(), "claim")?;
                claim_src = Some((line_no, rest.to_string()));
            }
            "relevant" => {
                once(relevant.is_some(), "relevant")?;
                if !is_identifier(rest) {
                    return Err(ParseError::syntax(line_no, "expected `relevant <name>`"));
                }
                relevant = Some((line_no, rest.to_string()));
            }
            "hypotheses" => {
                once(hypotheses.is_some(), "hypotheses")?;
                hypotheses = Some(parse_vars(rest, line_no)?);
            }
            "observation" => {
                once(observation.is_some(), "observation")?;
                let vs = parse_vars(rest, line_no)?;
                if vs.len() != 1 {
                    return Err(ParseError::syntax(line_no, "expected `observation <var>`"));
                }
                observation = vs.into_iter().next();
            }
            other => {
                return Err(ParseError::syntax(
                    line_no,
                    format!("unknown keyword `{other}`"),
                ))
            }
        }
    }

    let language = language.ok_or_else(|| err(0, ParseErrorKind::Missing("relation declarations")))?;
    for (line_no, name, body) in pending {
        let f = parse_formula(&body, &language, line_no)?;
        formulas.push((name, f, line_no));
    }
    let declared: BTreeMap<&str, ()> = formulas.iter().map(|(n, _, _)| (n.as_str(), ())).collect();

    let kb = match kb {
        Some((line_no, names)) => {
            for (i, n) in names.iter().enumerate() {
                if !declared.contains_key(n.as_str()) {
                    return Err(err(line_no, ParseErrorKind::UnknownFormula(n.clone())));
                }
                if names[..i].contains(n) {
                    return Err(err(
                        line_no,
                        ParseErrorKind::Duplicate(format!("knowledge-base entry `{n}`")),
                    ));
                }
            }
            names
        }
        None => Vec::new(),
    };
    if let Some((line_no, name)) = &relevant {
        if !declared.contains_key(name.as_str()) {
            return Err(err(*line_no, ParseErrorKind::UnknownFormula(name.clone())));
        }
        if !kb.contains(name) {
            return Err(err(*line_no, ParseErrorKind::DanglingRelevant(name.clone())));
        }
    }
    let claim = match claim_src {
        Some((line_no, src)) => Some(parse_formula(&src, &language, line_no)?),
        None => None,
    };
    Ok(InstanceDocument {
        language,
        formulas: formulas.into_iter().map(|(n, f, _)| (n, f)).collect(),
        kb,
        claim,
        relevant: relevant.map(|(_, n)| n),
        hypotheses,
        observation,
    })
}

fn parse_vars(rest: &str, line_no: usize) -> Result<Vec<Var>, ParseError> {
    rest.split_whitespace()
        .map(|v| {
            if is_identifier(v) {
                Ok(Var::from(v))
            } else {
                Err(ParseError::syntax(line_no, format!("`{v}` is not a valid variable")))
            }
        })
        .collect()
}

/// Parses `R(a,b) & S(c)` against `language`.
fn parse_formula(
    src: &str,
    language: &ConstraintLanguage,
    line_no: usize,
) -> Result<GammaFormula, ParseError> {
    let mut constraints = Vec::new();
    for part in src.split('&') {
        let part = part.trim();
        let (name, args) = part
            .strip_suffix(')')
            .and_then(|p| p.split_once('('))
            .ok_or_else(|| ParseError::syntax(line_no, format!("malformed constraint `{part}`")))?;
        let name = name.trim();
        if !is_identifier(name) {
            return Err(ParseError::syntax(
                line_no,
                format!("malformed constraint `{part}`"),
            ));
        }
        let relation: &Arc<_> = language
            .get(name)
            .ok_or_else(|| err(line_no, ParseErrorKind::UnknownRelation(name.to_string())))?;
        let args: Vec<Var> = args
            .split(',')
            .map(|a| {
                let a = a.trim();
                if is_identifier(a) {
                    Ok(Var::from(a))
                } else {
                    Err(ParseError::syntax(line_no, format!("`{a}` is not a valid variable")))
                }
            })
            .collect::<Result<_, _>>()?;
        if args.len() != relation.arity() {
            return Err(err(
                line_no,
                ParseErrorKind::ArityMismatch {
                    relation: name.to_string(),
                    expected: relation.arity(),
                    found: args.len(),
                },
            ));
        }
        constraints.push(Constraint::new(relation.clone(), args).expect("arity checked"));
    }
    GammaFormula::new(constraints).map_err(|e| ParseError::syntax(line_no, e.to_string()))
}

/// Parses an argumentation instance file.
pub fn parse_instance(
    text: &str,
    load: &mut dyn FnMut(&str) -> Result<String, String>,
) -> Result<ArgInstance, ParseError> {
    let doc = parse_document(text, load)?;
    if doc.hypotheses.is_some() || doc.observation.is_some() {
        return Err(ParseError::syntax(
            0,
            "`hypotheses`/`observation` belong in abduction files",
        ));
    }
    let alpha = doc
        .claim
        .clone()
        .ok_or_else(|| err(0, ParseErrorKind::Missing("`claim` line")))?;
    let delta: Vec<(String, GammaFormula)> = doc
        .kb
        .iter()
        .map(|n| (n.clone(), doc.formula(n).expect("checked").clone()))
        .collect();
    let relevant = doc
        .relevant
        .as_ref()
        .map(|r| doc.kb.iter().position(|n| n == r).expect("checked"));
    ArgInstance::new(doc.language, delta, alpha, relevant)
        .map_err(|e| err(0, ParseErrorKind::Invalid(e.to_string())))
}

/// Reads an instance file; `use` paths are resolved relative to its directory.
pub fn parse_instance_file(path: &Path) -> Result<ArgInstance, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| ParseError::new(0, ParseErrorKind::Io(format!("{}: {e}", path.display()))))?;
    let mut load = file_loader(path);
    Ok(parse_instance(&text, &mut load)?)
}

/// A loader resolving paths relative to `path`'s parent directory.
pub fn file_loader(path: &Path) -> impl FnMut(&str) -> Result<String, String> {
    let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
    move |p: &str| {
        let full = base.join(p);
        std::fs::read_to_string(&full).map_err(|e| format!("{}: {e}", full.display()))
    }
}

/// Renders an instance. With `use_path` the language is referenced,
/// otherwise its relations are declared inline.
pub fn serialize_instance(inst: &ArgInstance, use_path: Option<&str>) -> String {
    let mut out = String::new();
    match use_path {
        Some(p) => out.push_str(&format!("use {p}\n")),
        None => {
            for r in inst.language.relations() {
                out.push_str(&format!("{r}\n"));
            }
        }
    }
    for (label, f) in inst.labels.iter().zip(&inst.delta) {
        out.push_str(&format!("formula {label} = {f}\n"));
    }
    out.push_str("kb");
    for label in &inst.labels {
        out.push(' ');
        out.push_str(label);
    }
    out.push('\n');
    out.push_str(&format!("claim {}\n", inst.alpha));
    if let Some(r) = inst.relevant {
        out.push_str(&format!("relevant {}\n", inst.labels[r]));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relations::catalog;

    fn no_files(_: &str) -> Result<String, String> {
        Err("no files".into())
    }

    fn parse(text: &str) -> Result<ArgInstance, ParseError> {
        parse_instance(text, &mut no_files)
    }

    #[test]
    fn minimal_instance_round_trips() {
        let text = "relation T 1 { 1 }\nformula a = T(x)\nkb a\nclaim T(x)\nrelevant a\n";
        let inst = parse(text).unwrap();
        assert_eq!(inst.relevant, Some(0));
        assert_eq!(serialize_instance(&inst, None), text);
        assert_eq!(parse(&serialize_instance(&inst, None)).unwrap(), inst);
    }

    #[test]
    fn use_lines_go_through_the_loader() {
        let mut load = |p: &str| {
            assert_eq!(p, "lang.rel");
            Ok("relation NEQ 2 { 01 10 }\n".to_string())
        };
        let inst = parse_instance(
            "use lang.rel\nformula d = NEQ(x,y) & NEQ(y,z)  # chain\nkb d\nclaim NEQ(x,y)\n",
            &mut load,
        )
        .unwrap();
        assert_eq!(inst.delta[0].to_string(), "NEQ(x,y) & NEQ(y,z)");
        assert!(inst.language.contains(&catalog::neq()));
    }

    #[test]
    fn errors() {
        let e = parse("relation T 1 { 1 }\nkb f1\nclaim T(x)\n").unwrap_err();
        assert_eq!(e.line, 2);
        assert!(e.to_string().contains("unknown formula"));

        let e = parse("relation T 1 { 1 }\nclaim S(x)\n").unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::UnknownRelation(_)));

        let e = parse("relation T 1 { 1 }\nclaim T(x,y)\n").unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::ArityMismatch { expected: 1, found: 2, .. }));

        let e = parse("relation T 1 { 1 }\nformula a = T(x)\nformula b = T(y)\nkb a\nclaim T(x)\nrelevant b\n")
            .unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::DanglingRelevant(_)));
        assert_eq!(e.line, 6);

        assert!(parse("relation T 1 { 1 }\nformula a = T(x)\nkb a\n").is_err());
        assert!(parse("relation T 1 { 1 }\nclaim T(x) &\n").is_err());
        assert!(parse("relation T 1 { 1 }\nclaim T(1x)\n").is_err());
        assert!(parse("relation T 1 { 1 }\nbogus\n").is_err());
        assert!(parse("use missing.rel\nclaim T(x)\n").is_err());
    }

    #[test]
    fn abduction_lines() {
        let doc = parse_document(
            "relation IMPL 2 { 00 01 11 }\nformula p = IMPL(h,q)\nkb p\nhypotheses h\nobservation q\n",
            &mut no_files,
        )
        .unwrap();
        assert_eq!(doc.hypotheses, Some(vec![Var::from("h")]));
        assert_eq!(doc.observation, Some(Var::from("q")));
        assert!(doc.claim.is_none());
    }
}
