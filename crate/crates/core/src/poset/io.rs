//! JSON poset files.
//!
//! `{"schema":1,"name":"...","elements":["0","a",...],"covers":[[0,1],...]}`.
//! `name` and `schema` are optional on input. Ranks are always recomputed.
//! Output is canonical: elements sorted by (rank, label), covers sorted, so
//! parse followed by emit is byte-identical on canonical input.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::Poset;
use crate::{Error, Result};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct PosetFile {
    #[serde(default = "default_schema")]
    schema: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    elements: Vec<String>,
    covers: Vec<(usize, usize)>,
}

fn default_schema() -> u32 {
    SCHEMA_VERSION
}

pub fn from_json(text: &str) -> Result<Poset> {
    let file: PosetFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    if file.schema != SCHEMA_VERSION {
        return Err(Error::Parse(format!("unsupported schema version {}", file.schema)));
    }
    let mut seen = HashSet::new();
    for label in &file.elements {
        if !seen.insert(label.as_str()) {
            return Err(Error::Parse(format!("duplicate element label {label:?}")));
        }
    }
    let p = Poset::from_covers(file.elements, &file.covers)?;
    Ok(match file.name {
        Some(name) => p.with_name(name),
        None => p,
    })
}

pub fn to_json(p: &Poset) -> String {
    let c = p.canonical();
    let file = PosetFile {
        schema: SCHEMA_VERSION,
        name: c.name().map(str::to_owned),
        elements: c.labels().to_vec(),
        covers: c.covers().to_vec(),
    };
    serde_json::to_string(&file).expect("poset serialization is infallible")
}

pub fn read_file(path: &std::path::Path) -> Result<Poset> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    from_json(&text)
}

#[cfg(test)]
mod tests {
    use super::super::generators::*;
    use super::super::iso::is_isomorphic;
    use super::*;

    #[test]
    fn round_trip_is_byte_identical() {
        for p in [figure1(), boolean_lattice(3).unwrap(), partition_lattice(4).unwrap(), uniform_flats(3, 5).unwrap()] {
            let text = to_json(&p);
            let q = from_json(&text).unwrap();
            assert!(is_isomorphic(&p, &q));
            assert_eq!(to_json(&q), text);
        }
    }

    #[test]
    fn canonical_output_format() {
        let text = r#"{"elements":["1","c","0","a","b"],"covers":[[2,3],[2,4],[2,1],[3,0],[4,0],[1,0]]}"#;
        let p = from_json(text).unwrap();
        assert_eq!(
            to_json(&p),
            r#"{"schema":1,"elements":["0","a","b","c","1"],"covers":[[0,1],[0,2],[0,3],[1,4],[2,4],[3,4]]}"#
        );
        assert_eq!(
            to_json(&figure1()),
            r#"{"schema":1,"name":"figure1","elements":["0","a","b","c","1"],"covers":[[0,1],[0,2],[0,3],[1,4],[2,4],[3,4]]}"#
        );
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(from_json("{"), Err(Error::Parse(_))));
        assert!(matches!(from_json(r#"{"schema":2,"elements":["x"],"covers":[]}"#), Err(Error::Parse(_))));
        assert!(matches!(from_json(r#"{"elements":["x","x"],"covers":[]}"#), Err(Error::Parse(_))));
        assert_eq!(
            from_json(r#"{"elements":["x","y"],"covers":[[0,1],[1,0]]}"#),
            Err(Error::CycleDetected(0))
        );
    }
}
