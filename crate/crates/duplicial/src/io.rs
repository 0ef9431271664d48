//! JSON formats for fields, matrices, algebras, bialgebras and categories.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::algebra::{Algebra, AlgebraError, AlgebraMap, Bimodule};
use crate::hopf::{Bialgebra, Coefficients, HopfError};
use crate::linalg::Matrix;
use crate::nerve::{FiniteCategory, NerveError};
use crate::report::ValidationReport;
use crate::scalar::{Field, Scalar};

#[derive(Debug, Error)]
pub enum InputError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("schema: {0}")]
    Schema(String),
    #[error("invalid: {0}")]
    Invariant(ValidationReport),
}

impl From<AlgebraError> for InputError {
    fn from(e: AlgebraError) -> InputError {
        match e {
            AlgebraError::Malformed(m) => InputError::Schema(m),
            AlgebraError::Invalid(r) => InputError::Invariant(r),
        }
    }
}

impl From<HopfError> for InputError {
    fn from(e: HopfError) -> InputError {
        match e {
            HopfError::Algebra(a) => a.into(),
            HopfError::Coefficients(r) => InputError::Invariant(r),
            other => InputError::Schema(other.to_string()),
        }
    }
}

impl From<NerveError> for InputError {
    fn from(e: NerveError) -> InputError {
        match e {
            NerveError::InvalidCategory(m) if m.contains("fails") => {
                let mut r = ValidationReport::new();
                r.push(0, m);
                InputError::Invariant(r)
            }
            other => InputError::Schema(other.to_string()),
        }
    }
}

fn schema(m: impl Into<String>) -> InputError {
    InputError::Schema(m.into())
}

pub fn read(path: &Path) -> Result<String, InputError> {
    fs::read_to_string(path).map_err(|e| InputError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum FieldJson {
    Name(String),
    Prime {
        #[serde(rename = "Fp")]
        fp: u64,
    },
}

/// `"Q"`, `"F5"`, `5`, or `{"Fp": 5}`.
pub fn parse_field(v: &Value) -> Result<Field, InputError> {
    if let Some(p) = v.as_u64() {
        return Field::prime(p).map_err(|e| schema(e.to_string()));
    }
    match serde_json::from_value::<FieldJson>(v.clone()).map_err(|e| schema(format!("field: {e}")))? {
        FieldJson::Name(s) if s == "Q" => Ok(Field::Rational),
        FieldJson::Name(s) => {
            let p = s
                .trim_start_matches('F')
                .parse::<u64>()
                .map_err(|_| schema(format!("field must be \"Q\" or a prime, got {s}")))?;
            Field::prime(p).map_err(|e| schema(e.to_string()))
        }
        FieldJson::Prime { fp } => Field::prime(fp).map_err(|e| schema(e.to_string())),
    }
}

pub fn field_json(f: Field) -> Value {
    match f {
        Field::Rational => Value::String("Q".into()),
        Field::Prime(p) => serde_json::json!({ "Fp": p }),
    }
}

pub fn parse_scalar(f: Field, v: &Value) -> Result<Scalar, InputError> {
    match v {
        Value::String(s) => f.parse(s).map_err(|e| schema(format!("{s}: {e}"))),
        Value::Number(n) => n
            .as_i64()
            .map(|k| f.from_i64(k))
            .ok_or_else(|| schema(format!("{n} is not an integer; use a \"p/q\" string"))),
        other => Err(schema(format!("expected a scalar, got {other}"))),
    }
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>, InputError> {
    v.as_array().ok_or_else(|| schema(format!("{what} must be an array")))
}

pub fn parse_vector(f: Field, v: &Value, len: usize, what: &str) -> Result<Vec<Scalar>, InputError> {
    let a = array(v, what)?;
    if a.len() != len {
        return Err(schema(format!("{what} must have length {len}, got {}", a.len())));
    }
    a.iter().map(|x| parse_scalar(f, x)).collect()
}

/// Row-major.
pub fn parse_matrix(f: Field, v: &Value, rows: usize, cols: usize, what: &str) -> Result<Matrix, InputError> {
    let a = array(v, what)?;
    if a.len() != rows {
        return Err(schema(format!("{what} must have {rows} rows, got {}", a.len())));
    }
    let entries = a
        .iter()
        .enumerate()
        .map(|(i, r)| parse_vector(f, r, cols, &format!("{what} row {i}")))
        .collect::<Result<Vec<_>, _>>()?;
    Matrix::from_dense(f, rows, cols, entries).map_err(|e| schema(e.to_string()))
}

pub fn matrix_json(m: &Matrix) -> Value {
    Value::Array(
        m.to_dense()
            .into_iter()
            .map(|r| Value::Array(r.into_iter().map(|x| Value::String(x.to_string())).collect()))
            .collect(),
    )
}

fn get<'a>(v: &'a Value, key: &str) -> Result<&'a Value, InputError> {
    v.get(key).ok_or_else(|| schema(format!("missing \"{key}\"")))
}

fn parse_json(text: &str) -> Result<Value, InputError> {
    serde_json::from_str(text).map_err(|e| schema(e.to_string()))
}

/// `{"field", "dim", "mult": [[[c]]], "unit": [c], "labels"?}`
/// with `mult[i][j]` the coordinates of `e_i e_j`.
pub fn algebra_from_value(v: &Value) -> Result<Algebra, InputError> {
    let field = parse_field(get(v, "field")?)?;
    let dim = get(v, "dim")?.as_u64().ok_or_else(|| schema("dim must be a nonnegative integer"))? as usize;
    let rows = array(get(v, "mult")?, "mult")?;
    if rows.len() != dim {
        return Err(schema(format!("mult must have {dim} rows")));
    }
    let mut mult = Vec::new();
    for (i, r) in rows.iter().enumerate() {
        let cells = array(r, "mult row")?;
        if cells.len() != dim {
            return Err(schema(format!("mult row {i} must have {dim} entries")));
        }
        mult.push(
            cells
                .iter()
                .enumerate()
                .map(|(j, c)| parse_vector(field, c, dim, &format!("mult[{i}][{j}]")))
                .collect::<Result<Vec<_>, _>>()?,
        );
    }
    let unit = parse_vector(field, get(v, "unit")?, dim, "unit")?;
    let labels = match v.get("labels") {
        Some(l) => array(l, "labels")?
            .iter()
            .map(|s| s.as_str().map(String::from).ok_or_else(|| schema("labels must be strings")))
            .collect::<Result<Vec<_>, _>>()?,
        None => (0..dim).map(|k| format!("e{k}")).collect(),
    };
    if labels.len() != dim {
        return Err(schema(format!("labels must have length {dim}")));
    }
    Ok(Algebra::new(field, labels, mult, unit)?)
}

pub fn algebra_from_json(text: &str) -> Result<Algebra, InputError> {
    algebra_from_value(&parse_json(text)?)
}

pub fn algebra_json(a: &Algebra) -> Value {
    let d = a.dim();
    let mult: Vec<Vec<Vec<String>>> = (0..d)
        .map(|i| (0..d).map(|j| a.mul(&a.basis_vec(i), &a.basis_vec(j)).iter().map(|x| x.to_string()).collect()).collect())
        .collect();
    serde_json::json!({
        "field": field_json(a.field),
        "dim": d,
        "labels": a.labels,
        "mult": mult,
        "unit": a.unit_dense().iter().map(|x| x.to_string()).collect::<Vec<_>>(),
    })
}

/// `{"matrix": [[c]]}`, row-major, acting on coordinate columns.
pub fn algebra_map_from_json(a: &Algebra, text: &str) -> Result<AlgebraMap, InputError> {
    let v = parse_json(text)?;
    let m = parse_matrix(a.field, get(&v, "matrix")?, a.dim(), a.dim(), "matrix")?;
    Ok(AlgebraMap::new(a, m)?)
}

/// `{"dim", "left": [matrix per basis element], "right": [...]}`.
pub fn bimodule_from_json(a: &Algebra, text: &str) -> Result<Bimodule, InputError> {
    let v = parse_json(text)?;
    let dim = get(&v, "dim")?.as_u64().ok_or_else(|| schema("dim must be a nonnegative integer"))? as usize;
    let side = |key: &str| -> Result<Vec<Matrix>, InputError> {
        let ms = array(get(&v, key)?, key)?;
        if ms.len() != a.dim() {
            return Err(schema(format!("{key} needs one matrix per basis element")));
        }
        ms.iter().enumerate().map(|(i, m)| parse_matrix(a.field, m, dim, dim, &format!("{key}[{i}]"))).collect()
    };
    Ok(Bimodule::new(a, dim, side("left")?, side("right")?)?)
}

/// The algebra format with `"comult": [[[c]]]`, `comult[i][j][k]` the
/// coefficient of `e_j ⊗ e_k` in `Δ e_i`, and `"counit": [c]`.
pub fn bialgebra_from_json(text: &str) -> Result<Bialgebra, InputError> {
    let v = parse_json(text)?;
    let a = algebra_from_value(&v)?;
    let (f, d) = (a.field, a.dim());
    let parts = array(get(&v, "comult")?, "comult")?;
    if parts.len() != d {
        return Err(schema(format!("comult must have {d} entries")));
    }
    let mut trip = Vec::new();
    for (i, p) in parts.iter().enumerate() {
        let m = parse_matrix(f, p, d, d, &format!("comult[{i}]"))?;
        for (j, k, x) in m.entries() {
            trip.push((j * d + k, i, x.clone()));
        }
    }
    let comult = Matrix::from_triplets(f, d * d, d, trip);
    let counit = parse_vector(f, get(&v, "counit")?, d, "counit")?;
    let counit = Matrix::from_dense(f, 1, d, vec![counit]).map_err(|e| schema(e.to_string()))?;
    Ok(Bialgebra::new(a, comult, counit)?)
}

pub fn bialgebra_json(h: &Bialgebra) -> Value {
    let d = h.dim();
    let mut v = algebra_json(&h.algebra);
    let comult: Vec<Vec<Vec<String>>> = (0..d)
        .map(|i| (0..d).map(|j| (0..d).map(|k| h.comult.get(j * d + k, i).to_string()).collect()).collect())
        .collect();
    v["comult"] = serde_json::json!(comult);
    v["counit"] = serde_json::json!((0..d).map(|i| h.counit.get(0, i).to_string()).collect::<Vec<_>>());
    v
}

/// `{"dim", "action": [matrix per basis element], "coaction": matrix (d_H·dim × dim), "side": "left"|"right"}`.
pub fn coefficients_from_json(h: &Bialgebra, text: &str) -> Result<(Coefficients, bool), InputError> {
    let v = parse_json(text)?;
    let f = h.field();
    let dim = get(&v, "dim")?.as_u64().ok_or_else(|| schema("dim must be a nonnegative integer"))? as usize;
    let ms = array(get(&v, "action")?, "action")?;
    if ms.len() != h.dim() {
        return Err(schema("action needs one matrix per basis element"));
    }
    let action = ms
        .iter()
        .enumerate()
        .map(|(i, m)| parse_matrix(f, m, dim, dim, &format!("action[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;
    let coaction = parse_matrix(f, get(&v, "coaction")?, h.dim() * dim, dim, "coaction")?;
    let right = match v.get("side").and_then(|s| s.as_str()) {
        None | Some("right") => true,
        Some("left") => false,
        Some(other) => return Err(schema(format!("side must be left or right, got {other}"))),
    };
    Ok((Coefficients::new(h, dim, action, coaction, right)?, right))
}

pub fn category_from_json(text: &str) -> Result<FiniteCategory, InputError> {
    Ok(FiniteCategory::from_json(text)?)
}

pub fn category_json(c: &FiniteCategory) -> Value {
    let mut compose = serde_json::Map::new();
    for f in 0..c.num_morphisms() {
        for g in 0..c.num_morphisms() {
            if c.tgt(f) == c.src(g) {
                compose.insert(
                    format!("({},{})", c.morphism_id(g), c.morphism_id(f)),
                    Value::String(c.morphism_id(c.comp(g, f)).into()),
                );
            }
        }
    }
    let identities: serde_json::Map<String, Value> = (0..c.num_objects())
        .map(|a| (c.objects[a].clone(), Value::String(c.morphism_id(c.identity(a)).into())))
        .collect();
    serde_json::json!({
        "objects": c.objects,
        "morphisms": c.morphisms.iter().map(|m| serde_json::json!({
            "id": m.id, "src": c.objects[m.src], "tgt": c.objects[m.tgt]
        })).collect::<Vec<_>>(),
        "compose": compose,
        "identities": identities,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputKind {
    Algebra,
    Bialgebra,
    Category,
}

/// Guesses the kind from the keys present.
pub fn detect_kind(text: &str) -> Result<InputKind, InputError> {
    let v = parse_json(text)?;
    if v.get("objects").is_some() {
        Ok(InputKind::Category)
    } else if v.get("comult").is_some() {
        Ok(InputKind::Bialgebra)
    } else if v.get("mult").is_some() {
        Ok(InputKind::Algebra)
    } else {
        Err(schema("not an algebra, bialgebra or category"))
    }
}

/// Schema and invariant check of any supported input.
pub fn validate_input(path: &Path) -> Result<ValidationReport, InputError> {
    let text = read(path)?;
    let kind = detect_kind(&text)?;
    let r = match kind {
        InputKind::Algebra => algebra_from_json(&text).map(|_| ()),
        InputKind::Bialgebra => bialgebra_from_json(&text).map(|_| ()),
        InputKind::Category => category_from_json(&text).map(|_| ()),
    };
    match r {
        Ok(()) => Ok(ValidationReport::new()),
        Err(InputError::Invariant(rep)) => Ok(rep),
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn algebra_round_trip() {
        for a in [Algebra::dual_numbers(Field::Rational), Algebra::upper_triangular(Field::Rational)] {
            let text = algebra_json(&a).to_string();
            let b = algebra_from_json(&text).unwrap();
            assert_eq!(b.mult_matrix(), a.mult_matrix());
            assert_eq!(b.unit_dense(), a.unit_dense());
        }
    }

    #[test]
    fn bialgebra_round_trip() {
        for (_, h) in Bialgebra::catalog() {
            let text = bialgebra_json(&h).to_string();
            let g = bialgebra_from_json(&text).unwrap();
            assert_eq!(g.comult, h.comult);
            assert_eq!(g.counit, h.counit);
        }
    }

    #[test]
    fn category_round_trip() {
        for (_, c) in FiniteCategory::catalog() {
            let d = category_from_json(&category_json(&c).to_string()).unwrap();
            assert_eq!(d, c);
        }
    }

    #[test]
    fn schema_and_invariants() {
        let missing = r#"{"field":"Q","dim":1,"mult":[[["1"]]]}"#;
        assert!(matches!(algebra_from_json(missing), Err(InputError::Schema(m)) if m.contains("unit")));
        let golden = r#"{"field":"Q","dim":2,"mult":[[[1,0],[0,1]],[[0,1],[1,1]]],"unit":[1,0]}"#;
        assert!(algebra_from_json(golden).is_ok());
        let nonassoc = r#"{"field":"Q","dim":3,"mult":[[[1,0,0],[0,1,0],[0,0,1]],[[0,1,0],[0,0,1],[0,0,0]],[[0,0,1],[0,1,0],[0,0,0]]],"unit":[1,0,0]}"#;
        match algebra_from_json(nonassoc) {
            Err(InputError::Invariant(r)) => assert!(r.to_string().contains("associativity"), "{r}"),
            other => panic!("{other:?}"),
        }
        let bad = r#"{"field":"Q","dim":2,"mult":[[[1,0],[0,1]],[[0,1],[0,1]]],"unit":[0,1]}"#;
        match algebra_from_json(bad) {
            Err(InputError::Invariant(r)) => assert!(!r.is_ok()),
            other => panic!("{other:?}"),
        }
        assert_eq!(parse_field(&serde_json::json!({"Fp": 7})).unwrap(), Field::Prime(7));
        assert_eq!(parse_field(&serde_json::json!("F3")).unwrap(), Field::Prime(3));
        assert!(parse_field(&serde_json::json!({"Fp": 4})).is_err());
    }
}
