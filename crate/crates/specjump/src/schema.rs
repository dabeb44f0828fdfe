//! Resolution JSON schema: loading, validation, and storing.
//!
//! Field names are part of the contract. A file is an object with
//! `components` (array of component records) and `intersections` (array of
//! `{a, b, points}`); unknown fields are rejected. `self_intersection` is
//! required exactly for exceptional components, and `cluster_degree`
//! defaults to 1. Chart maps are a resolver-internal extra and never appear
//! in files, so user-supplied data drives every combinatorial calculator but
//! not the valuative oracle.

use std::fmt;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use specjump_core::{Component, ComponentKind, ResolutionData, Violation};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResolutionFile {
    pub components: Vec<ComponentEntry>,
    pub intersections: Vec<IntersectionEntry>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentEntry {
    pub id: String,
    pub kind: KindTag,
    pub m: i64,
    pub k: i64,
    pub over_origin: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub self_intersection: Option<i64>,
    #[serde(default = "default_cluster_degree")]
    pub cluster_degree: i64,
}

fn default_cluster_degree() -> i64 {
    1
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum KindTag {
    #[serde(rename = "exceptional")]
    Exceptional,
    #[serde(rename = "strict")]
    Strict,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntersectionEntry {
    pub a: String,
    pub b: String,
    pub points: i64,
}

#[derive(Debug)]
pub enum SchemaError {
    Io(std::io::Error),
    /// Parse error with line/column position from the JSON reader.
    Parse(serde_json::Error),
    /// Structurally broken (duplicate ids, bad references, field misuse).
    Malformed(String),
    /// Identity violations found by validation.
    Invalid(Vec<Violation>),
}

impl fmt::Display for SchemaError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SchemaError::Io(e) => write!(f, "cannot read resolution file: {e}"),
            SchemaError::Parse(e) => write!(
                f,
                "resolution JSON parse error at line {}, column {}: {e}",
                e.line(),
                e.column()
            ),
            SchemaError::Malformed(detail) => write!(f, "malformed resolution data: {detail}"),
            SchemaError::Invalid(violations) => {
                writeln!(f, "resolution data fails validation:")?;
                for v in violations {
                    writeln!(f, "  - {v}")?;
                }
                Ok(())
            }
        }
    }
}

impl std::error::Error for SchemaError {}

pub fn to_file(data: &ResolutionData) -> ResolutionFile {
    let components = data
        .components()
        .iter()
        .map(|c| ComponentEntry {
            id: c.id.clone(),
            kind: match c.kind {
                ComponentKind::Exceptional => KindTag::Exceptional,
                ComponentKind::Strict => KindTag::Strict,
            },
            m: c.m,
            k: c.k,
            over_origin: c.over_origin,
            self_intersection: c.self_intersection,
            cluster_degree: c.cluster_degree,
        })
        .collect();
    let intersections = data
        .intersection_entries()
        .map(|(i, j, points)| IntersectionEntry {
            a: data.component(i).id.clone(),
            b: data.component(j).id.clone(),
            points,
        })
        .collect();
    ResolutionFile {
        components,
        intersections,
    }
}

pub fn from_file(file: ResolutionFile, force: bool) -> Result<ResolutionData, SchemaError> {
    let mut components = Vec::with_capacity(file.components.len());
    for entry in &file.components {
        match entry.kind {
            KindTag::Exceptional => {
                if entry.self_intersection.is_none() {
                    return Err(SchemaError::Malformed(format!(
                        "component `{}` is exceptional and needs `self_intersection`",
                        entry.id
                    )));
                }
            }
            KindTag::Strict => {
                if entry.self_intersection.is_some() {
                    return Err(SchemaError::Malformed(format!(
                        "component `{}` is strict and must not carry `self_intersection`",
                        entry.id
                    )));
                }
            }
        }
        components.push(Component {
            id: entry.id.clone(),
            kind: match entry.kind {
                KindTag::Exceptional => ComponentKind::Exceptional,
                KindTag::Strict => ComponentKind::Strict,
            },
            m: entry.m,
            k: entry.k,
            over_origin: entry.over_origin,
            self_intersection: entry.self_intersection,
            cluster_degree: entry.cluster_degree,
        });
    }
    let intersections: Vec<(String, String, i64)> = file
        .intersections
        .iter()
        .map(|e| (e.a.clone(), e.b.clone(), e.points))
        .collect();
    let data = ResolutionData::new(components, intersections)
        .map_err(|e| SchemaError::Malformed(e.to_string()))?;
    let violations = data.validate();
    if !violations.is_empty() && !force {
        return Err(SchemaError::Invalid(violations));
    }
    Ok(data)
}

pub fn load(path: &Path, force: bool) -> Result<ResolutionData, SchemaError> {
    let text = fs::read_to_string(path).map_err(SchemaError::Io)?;
    let file: ResolutionFile = serde_json::from_str(&text).map_err(SchemaError::Parse)?;
    from_file(file, force)
}

pub fn store(data: &ResolutionData, path: &Path) -> Result<(), SchemaError> {
    let text = render(data);
    fs::write(path, text).map_err(SchemaError::Io)
}

/// Deterministic JSON rendering of resolution data, newline-terminated.
pub fn render(data: &ResolutionData) -> String {
    let mut text = serde_json::to_string_pretty(&to_file(data)).expect("schema serializes");
    text.push('\n');
    text
}

#[cfg(test)]
mod tests {
    use super::*;
    use specjump_core::resolve::{resolve_germ, ResolveLimits};

    fn cusp() -> ResolutionData {
        resolve_germ(&"x^2 + y^3".parse().unwrap(), ResolveLimits::default())
            .unwrap()
            .data
    }

    #[test]
    fn roundtrip_preserves_data() {
        let data = cusp();
        let rendered = render(&data);
        let parsed: ResolutionFile = serde_json::from_str(&rendered).unwrap();
        let back = from_file(parsed, false).unwrap();
        assert_eq!(back.components(), data.components());
        let a: Vec<_> = data.intersection_entries().collect();
        let b: Vec<_> = back.intersection_entries().collect();
        assert_eq!(a, b);
    }

    #[test]
    fn store_then_load_is_identity() {
        let data = cusp();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cusp.json");
        store(&data, &path).unwrap();
        let back = load(&path, false).unwrap();
        assert_eq!(back.components(), data.components());
        assert_eq!(
            back.intersection_entries().collect::<Vec<_>>(),
            data.intersection_entries().collect::<Vec<_>>()
        );
    }

    #[test]
    fn unknown_fields_rejected() {
        let text = r#"{"components": [], "intersections": [], "extra": 1}"#;
        assert!(serde_json::from_str::<ResolutionFile>(text).is_err());
    }

    #[test]
    fn missing_self_intersection_rejected() {
        let text = r#"{
            "components": [
                {"id": "E1", "kind": "exceptional", "m": 2, "k": 1, "over_origin": true}
            ],
            "intersections": []
        }"#;
        let file: ResolutionFile = serde_json::from_str(text).unwrap();
        assert!(matches!(
            from_file(file, false),
            Err(SchemaError::Malformed(_))
        ));
    }

    #[test]
    fn identity_violations_rejected_unless_forced() {
        let text = r#"{
            "components": [
                {"id": "E1", "kind": "exceptional", "m": 3, "k": 1, "over_origin": true,
                 "self_intersection": -1},
                {"id": "S1", "kind": "strict", "m": 1, "k": 0, "over_origin": false}
            ],
            "intersections": [{"a": "E1", "b": "S1", "points": 1}]
        }"#;
        let file: ResolutionFile = serde_json::from_str(text).unwrap();
        assert!(matches!(from_file(file, false), Err(SchemaError::Invalid(_))));
        let file: ResolutionFile = serde_json::from_str(text).unwrap();
        assert!(from_file(file, true).is_ok());
    }

    #[test]
    fn cluster_degree_defaults_to_one() {
        let text = r#"{
            "components": [
                {"id": "E1", "kind": "exceptional", "m": 1, "k": 1, "over_origin": true,
                 "self_intersection": -1},
                {"id": "S1", "kind": "strict", "m": 1, "k": 0, "over_origin": false}
            ],
            "intersections": [{"a": "E1", "b": "S1", "points": 1}]
        }"#;
        let file: ResolutionFile = serde_json::from_str(text).unwrap();
        let data = from_file(file, false).unwrap();
        assert_eq!(data.component(1).cluster_degree, 1);
    }
}
