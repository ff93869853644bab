//! The versioned machine-readable output format.
//!
//! Every JSON document carries `"schema": "fmzv/1"` and a `"kind"`. Objects
//! are emitted with keys in sorted order and rationals as decimal strings
//! `{"num": "...", "den": "..."}`, so identical inputs give byte-identical
//! output.

use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::combination::Combination;
use crate::error::{Error, Result};
use crate::genfun::PTable;
use crate::poly2::{Poly2, VarNames};
use crate::Rational;

pub const SCHEMA: &str = "fmzv/1";

/// Wraps a JSON object body into a versioned document.
pub fn document(kind: &str, body: Value) -> Value {
    let mut map = match body {
        Value::Object(map) => map,
        other => {
            let mut m = Map::new();
            m.insert("data".into(), other);
            m
        }
    };
    map.insert("schema".into(), SCHEMA.into());
    map.insert("kind".into(), kind.into());
    Value::Object(map)
}

/// Serializes a report struct into a versioned document.
pub fn report<T: Serialize>(kind: &str, value: &T) -> Result<Value> {
    let body = serde_json::to_value(value).map_err(|e| Error::Domain(format!("serialization failed: {e}")))?;
    Ok(document(kind, body))
}

pub fn rational(q: &Rational) -> Value {
    json!({ "num": q.numer().to_string(), "den": q.denom().to_string() })
}

/// Terms of a polynomial in descending total degree, as
/// `{"dplus", "dminus", "num", "den"}` objects.
pub fn poly2(p: &Poly2) -> Value {
    Value::Array(
        p.canonical_terms()
            .into_iter()
            .map(|((dp, dm), c)| {
                json!({
                    "dplus": dp,
                    "dminus": dm,
                    "num": c.numer().to_string(),
                    "den": c.denom().to_string(),
                })
            })
            .collect(),
    )
}

pub fn combination(c: &Combination, names: VarNames) -> Value {
    let terms: Vec<Value> = c
        .iter()
        .map(|(k, p)| json!({ "index": k.to_string(), "coeff": poly2(p), "text": p.display_with(names) }))
        .collect();
    json!({ "terms": terms })
}

pub fn p_table(table: &PTable, names: VarNames) -> Value {
    let entries: Vec<Value> = table
        .iter()
        .map(|(k, p)| json!({ "k": k, "coeff": poly2(p), "text": p.display_with(names) }))
        .collect();
    json!({ "depth": table.depth, "max_k": table.max_k, "entries": entries })
}

/// Renders a document with stable formatting.
pub fn render(doc: &Value) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("JSON values always serialize");
    s.push('\n');
    s
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// One row per monomial: `index,dplus,dminus,num,den`.
pub fn combination_csv(c: &Combination) -> String {
    let mut out = String::from("index,dplus,dminus,num,den\n");
    for (k, p) in c.iter() {
        for ((dp, dm), q) in p.canonical_terms() {
            out.push_str(&format!("{},{dp},{dm},{},{}\n", csv_field(&k.to_string()), q.numer(), q.denom()));
        }
    }
    out
}

/// One row per table entry: the `k`-tuple and the polynomial.
pub fn p_table_csv(table: &PTable, names: VarNames) -> String {
    let mut out = String::from("k,polynomial\n");
    for (k, p) in table.iter() {
        let key: Vec<String> = k.iter().map(u32::to_string).collect();
        out.push_str(&format!("{},{}\n", csv_field(&key.join(",")), csv_field(&p.display_with(names))));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat_frac;
    use crate::genfun::extract_p;
    use crate::index::Index;
    use crate::reduce::reduce_full;

    #[test]
    fn documents_are_versioned_and_sorted() {
        let doc = document("demo", json!({ "z": 1, "a": 2 }));
        let text = render(&doc);
        assert_eq!(text, "{\n  \"a\": 2,\n  \"kind\": \"demo\",\n  \"schema\": \"fmzv/1\",\n  \"z\": 1\n}\n");
    }

    #[test]
    fn rationals_as_strings() {
        assert_eq!(rational(&rat_frac(-3, 12)), json!({ "num": "-1", "den": "4" }));
    }

    #[test]
    fn combination_round_trips_through_text() {
        let k: Index = "3,-1".parse().unwrap();
        let c = reduce_full(&k, Default::default()).result.specialize_single();
        let v = combination(&c, VarNames::SINGLE);
        let terms = v["terms"].as_array().unwrap();
        assert_eq!(terms.len(), 3);
        assert_eq!(terms[2]["index"], "3");
        assert_eq!(terms[2]["coeff"][0], json!({ "dplus": 0, "dminus": 2, "num": "1", "den": "2" }));
        assert_eq!(render(&document("c", v.clone())), render(&document("c", v)));
        let csv = combination_csv(&c);
        assert!(csv.starts_with("index,dplus,dminus,num,den\n1,0,0,-1,2\n"));
    }

    #[test]
    fn table_csv() {
        let t = extract_p(2, 0).unwrap();
        let csv = p_table_csv(&t, VarNames::Y);
        assert_eq!(csv.lines().count(), 2);
        assert!(csv.lines().nth(1).unwrap().starts_with("\"0,0\","));
    }
}
