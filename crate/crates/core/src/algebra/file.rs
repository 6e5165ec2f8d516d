use serde::Deserialize;
use toml::Spanned;

use crate::exactlinalg::{PrimeField, DEFAULT_PRIME};
use crate::{Error, Result};

use super::quiver::{parse_relation, Quiver, Relation};

const DEFAULT_MAX_PATH_LEN: usize = 32;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFile {
    name: Option<String>,
    prime: Option<Spanned<u32>>,
    vertices: Spanned<Vec<Spanned<String>>>,
    #[serde(default)]
    arrows: Vec<Spanned<(String, String, String)>>,
    #[serde(default)]
    relations: Vec<Spanned<String>>,
    max_path_len: Option<Spanned<usize>>,
}

/// A validated algebra definition, ready for [`super::Algebra::from_spec`].
#[derive(Clone, Debug)]
pub struct AlgebraSpec {
    pub name: String,
    pub field: PrimeField,
    pub quiver: Quiver,
    pub relations: Vec<Relation>,
    pub max_path_len: usize,
}

fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.len() - before.rfind('\n').map_or(0, |i| i + 1) + 1;
    (line, column)
}

fn at(text: &str, offset: usize, message: impl Into<String>) -> Error {
    let (line, column) = line_col(text, offset);
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Parses the TOML algebra format. `prime_override` replaces the file's
/// `prime` entry; `default_name` is used when the file has no `name`.
pub fn parse_algebra_file(
    text: &str,
    default_name: &str,
    prime_override: Option<u32>,
) -> Result<AlgebraSpec> {
    let raw: RawFile = toml::from_str(text).map_err(|e| {
        let offset = e.span().map_or(0, |s| s.start);
        at(text, offset, e.message().to_string())
    })?;
    let (p, p_offset) = match (prime_override, &raw.prime) {
        (Some(p), _) => (p, 0),
        (None, Some(sp)) => (*sp.get_ref(), sp.span().start),
        (None, None) => (DEFAULT_PRIME, 0),
    };
    let field = PrimeField::new(p).ok_or_else(|| at(text, p_offset, format!("{p} is not a prime below 2^31")))?;
    let vertices_span = raw.vertices.span();
    let vertices: Vec<String> = raw.vertices.into_inner().into_iter().map(|v| v.into_inner()).collect();
    if vertices.is_empty() {
        return Err(at(text, vertices_span.start, "vertex list is empty"));
    }
    let arrows: Vec<(String, String, String)> = raw.arrows.iter().map(|a| a.get_ref().clone()).collect();
    let quiver = Quiver::new(vertices, &arrows).map_err(|e| {
        let offset = match &e {
            Error::Invalid(msg) => raw
                .arrows
                .iter()
                .find(|a| msg.contains(&format!("{:?}", a.get_ref().0)))
                .map_or(vertices_span.start, |a| a.span().start),
            _ => vertices_span.start,
        };
        at(text, offset, e.to_string())
    })?;
    let mut relations = Vec::with_capacity(raw.relations.len());
    for r in &raw.relations {
        // +1 skips the opening quote of the string literal
        let base = r.span().start + 1;
        let rel = parse_relation(&quiver, field, r.get_ref()).map_err(|e| match e {
            Error::Parse { column, message, .. } => at(text, base + column - 1, message),
            other => other,
        })?;
        relations.push(rel);
    }
    let max_path_len = match &raw.max_path_len {
        Some(m) if *m.get_ref() == 0 => return Err(at(text, m.span().start, "max_path_len must be positive")),
        Some(m) => *m.get_ref(),
        None => DEFAULT_MAX_PATH_LEN,
    };
    Ok(AlgebraSpec {
        name: raw.name.unwrap_or_else(|| default_name.to_string()),
        field,
        quiver,
        relations,
        max_path_len,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const A2: &str = r#"
prime = 32003
vertices = ["1", "2"]
arrows = [["a", "1", "2"]]
"#;

    #[test]
    fn parses_minimal_file() {
        let spec = parse_algebra_file(A2, "A2", None).unwrap();
        assert_eq!(spec.quiver.vertices.len(), 2);
        assert_eq!(spec.field.modulus(), 32003);
        assert_eq!(spec.max_path_len, DEFAULT_MAX_PATH_LEN);
    }

    #[test]
    fn prime_override_wins() {
        let spec = parse_algebra_file(A2, "A2", Some(7)).unwrap();
        assert_eq!(spec.field.modulus(), 7);
    }

    #[test]
    fn empty_vertex_list_reports_position() {
        let err = parse_algebra_file("vertices = []\n", "x", None).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, column: 12, .. }), "{err:?}");
    }

    #[test]
    fn relation_errors_point_into_the_file() {
        let text = "vertices = [\"1\", \"2\", \"3\"]\narrows = [[\"a\", \"1\", \"2\"], [\"b\", \"2\", \"3\"]]\nrelations = [\"a*c\"]\n";
        let err = parse_algebra_file(text, "x", None).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, column: 17, .. }), "{err:?}");
        let text = "vertices = [\"1\", \"2\"]\narrows = [[\"a\", \"1\", \"2\"]]\nrelations = [\"a\"]\n";
        assert!(matches!(
            parse_algebra_file(text, "x", None).unwrap_err(),
            Error::InadmissibleRelation { .. }
        ));
    }

    #[test]
    fn syntax_error_has_line_and_column() {
        let err = parse_algebra_file("vertices = [\"1\"\nprime = ", "x", None).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err:?}");
    }
}
