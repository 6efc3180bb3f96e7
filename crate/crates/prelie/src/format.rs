//! JSON forms of scalars, algebras, representations, cochains, operators and
//! NS tables. Parse errors carry the JSON pointer of the offending value.
//!
//! Indices in files are 1-based; in memory they are 0-based.

use std::collections::BTreeMap;

use prelie_core::cochain::Cochain;
use prelie_core::kcohomology::KCohomologyReport;
use prelie_core::ns::NsTensors;
use prelie_core::prelie::{Actions, StructureTensor};
use prelie_core::{CohomologyReport, Error, Field, Matrix, Report, Scalar};
use serde_json::{json, Map, Value};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FormatError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("schema error at {pointer}: {message}")]
    Schema { pointer: String, message: String },
    #[error("{first} and {second} disagree: {message}")]
    FieldMismatch { first: String, second: String, message: String },
}

impl FormatError {
    pub fn schema(pointer: &str, message: impl Into<String>) -> Self {
        FormatError::Schema {
            pointer: pointer.to_string(),
            message: message.into(),
        }
    }

    pub fn mismatch(first: &str, second: &str, message: impl Into<String>) -> Self {
        FormatError::FieldMismatch {
            first: first.to_string(),
            second: second.to_string(),
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, FormatError>;

/// Appends a reference token to a JSON pointer, escaping `~` and `/`.
pub fn child(at: &str, token: impl std::fmt::Display) -> String {
    let t = token.to_string().replace('~', "~0").replace('/', "~1");
    format!("{}/{}", at, t)
}

pub fn object<'a>(v: &'a Value, at: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| FormatError::schema(at, "expected an object"))
}

pub fn array<'a>(v: &'a Value, at: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| FormatError::schema(at, "expected an array"))
}

fn required<'a>(obj: &'a Map<String, Value>, at: &str, key: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| FormatError::schema(&child(at, key), "missing"))
}

pub fn usize_at(v: &Value, at: &str) -> Result<usize> {
    v.as_u64()
        .map(|n| n as usize)
        .ok_or_else(|| FormatError::schema(at, "expected a non-negative integer"))
}

fn required_usize(obj: &Map<String, Value>, at: &str, key: &str) -> Result<usize> {
    usize_at(required(obj, at, key)?, &child(at, key))
}

/// A 1-based index in `1..=bound`, returned 0-based.
fn index_at(v: &Value, at: &str, bound: usize) -> Result<usize> {
    let i = usize_at(v, at)?;
    if i == 0 || i > bound {
        return Err(FormatError::schema(at, format!("index {} outside 1..={}", i, bound)));
    }
    Ok(i - 1)
}

fn reject_unknown(obj: &Map<String, Value>, at: &str, known: &[&str]) -> Result<()> {
    match obj.keys().find(|k| !known.contains(&k.as_str())) {
        Some(k) => Err(FormatError::schema(&child(at, k), "unknown key")),
        None => Ok(()),
    }
}

/// Maps a core error raised while reading the value at `at`.
pub fn core_error(at: &str, e: Error) -> FormatError {
    match e {
        Error::FieldMismatch(found, declared) => {
            FormatError::mismatch(at, "/field", format!("value lies in {}, bundle declares {}", found, declared))
        }
        other => FormatError::schema(at, other.to_string()),
    }
}

pub fn field_from_json(v: &Value, at: &str) -> Result<Field> {
    let s = v.as_str().ok_or_else(|| FormatError::schema(at, "expected a field name such as \"q\" or \"f3\""))?;
    s.parse().map_err(|e: Error| FormatError::schema(at, e.to_string()))
}

pub fn scalar_from_json(v: &Value, at: &str, field: Field) -> Result<Scalar> {
    let s = v.as_str().ok_or_else(|| FormatError::schema(at, "expected a scalar string"))?;
    field.parse(s).map_err(|e| core_error(at, e))
}

pub fn scalar_to_json(s: &Scalar) -> Value {
    Value::String(s.to_string())
}

pub fn vector_from_json(v: &Value, at: &str, field: Field, len: Option<usize>) -> Result<Vec<Scalar>> {
    let items = array(v, at)?;
    if let Some(n) = len {
        if items.len() != n {
            return Err(FormatError::schema(at, format!("expected {} entries, found {}", n, items.len())));
        }
    }
    items.iter().enumerate().map(|(i, x)| scalar_from_json(x, &child(at, i), field)).collect()
}

pub fn vector_to_json(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(scalar_to_json).collect())
}

/// `{"rows", "cols", "entries"}`.
pub fn matrix_from_json(v: &Value, at: &str, field: Field) -> Result<Matrix> {
    let obj = object(v, at)?;
    reject_unknown(obj, at, &["rows", "cols", "entries"])?;
    let rows = required_usize(obj, at, "rows")?;
    let cols = required_usize(obj, at, "cols")?;
    let eat = child(at, "entries");
    let entries = array(required(obj, at, "entries")?, &eat)?;
    if entries.len() != rows {
        return Err(FormatError::schema(&eat, format!("expected {} rows, found {}", rows, entries.len())));
    }
    let mut data = Vec::with_capacity(rows * cols);
    for (i, row) in entries.iter().enumerate() {
        data.extend(vector_from_json(row, &child(&eat, i), field, Some(cols))?);
    }
    Matrix::from_flat(field, rows, cols, data).map_err(|e| core_error(at, e))
}

pub fn matrix_to_json(m: &Matrix) -> Value {
    let entries: Vec<Value> = (0..m.rows())
        .map(|i| Value::Array((0..m.cols()).map(|j| scalar_to_json(m.get(i, j))).collect()))
        .collect();
    json!({"rows": m.rows(), "cols": m.cols(), "entries": entries})
}

/// An algebra section before any axiom is checked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraSection {
    pub tensor: StructureTensor,
    pub unit: Option<Vec<Scalar>>,
    pub labels: Option<Vec<String>>,
}

impl AlgebraSection {
    pub fn dim(&self) -> usize {
        self.tensor.dim()
    }
}

/// `{"dim", "product": [{"i","j","k","c"}], "unit"?, "labels"?}`.
pub fn algebra_from_json(v: &Value, at: &str, field: Field) -> Result<AlgebraSection> {
    let obj = object(v, at)?;
    reject_unknown(obj, at, &["dim", "product", "unit", "labels"])?;
    let dim = required_usize(obj, at, "dim")?;
    let mut tensor = StructureTensor::zero(field, dim);
    let pat = child(at, "product");
    let mut seen = BTreeMap::new();
    if let Some(p) = obj.get("product") {
        for (n, entry) in array(p, &pat)?.iter().enumerate() {
            let eat = child(&pat, n);
            let e = object(entry, &eat)?;
            reject_unknown(e, &eat, &["i", "j", "k", "c"])?;
            let i = index_at(required(e, &eat, "i")?, &child(&eat, "i"), dim)?;
            let j = index_at(required(e, &eat, "j")?, &child(&eat, "j"), dim)?;
            let k = index_at(required(e, &eat, "k")?, &child(&eat, "k"), dim)?;
            let c = scalar_from_json(required(e, &eat, "c")?, &child(&eat, "c"), field)?;
            if seen.insert((i, j, k), ()).is_some() {
                return Err(FormatError::schema(&eat, format!("entry ({},{},{}) given twice", i + 1, j + 1, k + 1)));
            }
            tensor.set(i, j, k, c);
        }
    }
    let unit = match obj.get("unit") {
        Some(u) => Some(vector_from_json(u, &child(at, "unit"), field, Some(dim))?),
        None => None,
    };
    let labels = match obj.get("labels") {
        Some(l) => {
            let lat = child(at, "labels");
            let items = array(l, &lat)?;
            if items.len() != dim {
                return Err(FormatError::schema(&lat, format!("expected {} labels", dim)));
            }
            let names = items
                .iter()
                .enumerate()
                .map(|(i, x)| x.as_str().map(str::to_string).ok_or_else(|| FormatError::schema(&child(&lat, i), "expected a string")))
                .collect::<Result<Vec<_>>>()?;
            Some(names)
        }
        None => None,
    };
    Ok(AlgebraSection { tensor, unit, labels })
}

pub fn tensor_to_json(t: &StructureTensor) -> Value {
    let n = t.dim();
    let mut product = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let c = t.get(i, j, k);
                if !c.is_zero() {
                    product.push(json!({"i": i + 1, "j": j + 1, "k": k + 1, "c": scalar_to_json(c)}));
                }
            }
        }
    }
    json!({"dim": n, "product": product})
}

pub fn algebra_to_json(a: &prelie_core::PreLieAlgebra) -> Value {
    let mut v = tensor_to_json(a.tensor());
    if let Some(u) = a.unit() {
        v["unit"] = vector_to_json(u);
    }
    if let Some(l) = a.labels() {
        v["labels"] = json!(l);
    }
    v
}

/// `"regular"` or `{"dimV", "L": [...], "R": [...]}`; omitted action lists
/// are zero.
pub fn actions_from_json(v: &Value, at: &str, field: Field, algebra: Option<&AlgebraSection>) -> Result<Actions> {
    if let Some(s) = v.as_str() {
        if s != "regular" {
            return Err(FormatError::schema(at, "expected \"regular\" or an object"));
        }
        let a = algebra.ok_or_else(|| FormatError::mismatch(at, "/algebra", "the regular representation needs an algebra"))?;
        let t = &a.tensor;
        return Actions::new(
            field,
            t.dim(),
            t.dim(),
            (0..t.dim()).map(|i| t.left_matrix(i)).collect(),
            (0..t.dim()).map(|i| t.right_matrix(i)).collect(),
        )
        .map_err(|e| core_error(at, e));
    }
    let obj = object(v, at)?;
    reject_unknown(obj, at, &["dimV", "L", "R"])?;
    let dim_v = required_usize(obj, at, "dimV")?;
    let mut lists = Vec::new();
    for key in ["L", "R"] {
        let kat = child(at, key);
        match obj.get(key) {
            Some(list) => {
                let ms = array(list, &kat)?
                    .iter()
                    .enumerate()
                    .map(|(i, m)| {
                        let mat = child(&kat, i);
                        let m = matrix_from_json(m, &mat, field)?;
                        if m.rows() != dim_v || m.cols() != dim_v {
                            return Err(FormatError::schema(&mat, format!("expected a {}x{} matrix", dim_v, dim_v)));
                        }
                        Ok(m)
                    })
                    .collect::<Result<Vec<_>>>()?;
                lists.push(Some(ms));
            }
            None => lists.push(None),
        }
    }
    let dim_g = match (algebra, &lists[0], &lists[1]) {
        (Some(a), _, _) => a.dim(),
        (None, Some(l), _) | (None, None, Some(l)) => l.len(),
        (None, None, None) => 0,
    };
    let mut out = Vec::new();
    for (key, list) in ["L", "R"].iter().zip(lists) {
        match list {
            Some(ms) if ms.len() != dim_g => {
                return Err(FormatError::mismatch(
                    &child(at, key),
                    "/algebra",
                    format!("{} action matrices for an algebra of dimension {}", ms.len(), dim_g),
                ))
            }
            Some(ms) => out.push(ms),
            None => out.push((0..dim_g).map(|_| Matrix::zeros(field, dim_v, dim_v)).collect()),
        }
    }
    let right = out.pop().unwrap_or_default();
    let left = out.pop().unwrap_or_default();
    Actions::new(field, dim_g, dim_v, left, right).map_err(|e| core_error(at, e))
}

pub fn actions_to_json(a: &Actions) -> Value {
    json!({
        "dimV": a.dim_v,
        "L": a.left.iter().map(matrix_to_json).collect::<Vec<_>>(),
        "R": a.right.iter().map(matrix_to_json).collect::<Vec<_>>(),
    })
}

/// `{"degree", "dim_source", "dim_target", "values": [{"args", "last", "v"}]}`
/// with strictly increasing `args` of length `degree − 1`.
pub fn cochain_from_json(v: &Value, at: &str, field: Field) -> Result<Cochain> {
    let obj = object(v, at)?;
    reject_unknown(obj, at, &["degree", "dim_source", "dim_target", "values"])?;
    let degree = required_usize(obj, at, "degree")?;
    if degree == 0 {
        return Err(FormatError::schema(&child(at, "degree"), "degree must be at least 1"));
    }
    let n = required_usize(obj, at, "dim_source")?;
    let m = required_usize(obj, at, "dim_target")?;
    let mut c = Cochain::zero(field, degree, n, m);
    let vat = child(at, "values");
    let mut seen = BTreeMap::new();
    if let Some(values) = obj.get("values") {
        for (idx, entry) in array(values, &vat)?.iter().enumerate() {
            let eat = child(&vat, idx);
            let e = object(entry, &eat)?;
            reject_unknown(e, &eat, &["args", "last", "v"])?;
            let aat = child(&eat, "args");
            let args = array(required(e, &eat, "args")?, &aat)?
                .iter()
                .enumerate()
                .map(|(i, x)| index_at(x, &child(&aat, i), n))
                .collect::<Result<Vec<_>>>()?;
            if args.len() + 1 != degree {
                return Err(FormatError::schema(&aat, format!("degree {} needs {} args", degree, degree - 1)));
            }
            if !args.windows(2).all(|w| w[0] < w[1]) {
                return Err(FormatError::schema(&aat, "args must be strictly increasing"));
            }
            let last = index_at(required(e, &eat, "last")?, &child(&eat, "last"), n)?;
            let val = vector_from_json(required(e, &eat, "v")?, &child(&eat, "v"), field, Some(m))?;
            if seen.insert((args.clone(), last), ()).is_some() {
                return Err(FormatError::schema(&eat, "tuple given twice"));
            }
            c.set(&args, last, val);
        }
    }
    Ok(c)
}

pub fn cochain_to_json(c: &Cochain) -> Value {
    let values: Vec<Value> = c
        .nonzero_entries()
        .into_iter()
        .map(|(args, last, v)| {
            json!({
                "args": args.iter().map(|a| a + 1).collect::<Vec<_>>(),
                "last": last + 1,
                "v": vector_to_json(&v),
            })
        })
        .collect();
    json!({
        "degree": c.degree(),
        "dim_source": c.dim_source(),
        "dim_target": c.dim_target(),
        "values": values,
    })
}

fn ns_table_from_json(v: &Value, at: &str, field: Field, dim: usize) -> Result<StructureTensor> {
    let mut t = StructureTensor::zero(field, dim);
    for (pair, row) in object(v, at)? {
        let pat = child(at, pair);
        let (i, j) = pair
            .split_once(',')
            .and_then(|(a, b)| Some((a.trim().parse::<usize>().ok()?, b.trim().parse::<usize>().ok()?)))
            .filter(|(i, j)| (1..=dim).contains(i) && (1..=dim).contains(j))
            .ok_or_else(|| FormatError::schema(&pat, format!("expected \"i,j\" with indices in 1..={}", dim)))?;
        for (k, c) in object(row, &pat)? {
            let kat = child(&pat, k);
            let k: usize = k
                .trim()
                .parse()
                .ok()
                .filter(|k| (1..=dim).contains(k))
                .ok_or_else(|| FormatError::schema(&kat, format!("expected an index in 1..={}", dim)))?;
            t.set(i - 1, j - 1, k - 1, scalar_from_json(c, &kat, field)?);
        }
    }
    Ok(t)
}

/// `{"dim", "tri": {"i,j": {"k": "c"}}, "trl": {...}, "circ": {...}}`.
pub fn ns_from_json(v: &Value, at: &str, field: Field) -> Result<NsTensors> {
    let obj = object(v, at)?;
    reject_unknown(obj, at, &["dim", "tri", "trl", "circ"])?;
    let dim = required_usize(obj, at, "dim")?;
    let table = |key: &str| match obj.get(key) {
        Some(t) => ns_table_from_json(t, &child(at, key), field, dim),
        None => Ok(StructureTensor::zero(field, dim)),
    };
    Ok(NsTensors {
        tri: table("tri")?,
        trl: table("trl")?,
        circ: table("circ")?,
    })
}

fn ns_table_to_json(t: &StructureTensor) -> Value {
    let n = t.dim();
    let mut out = Map::new();
    for i in 0..n {
        for j in 0..n {
            let mut row = Map::new();
            for k in 0..n {
                let c = t.get(i, j, k);
                if !c.is_zero() {
                    row.insert((k + 1).to_string(), scalar_to_json(c));
                }
            }
            if !row.is_empty() {
                out.insert(format!("{},{}", i + 1, j + 1), Value::Object(row));
            }
        }
    }
    Value::Object(out)
}

pub fn ns_to_json(ns: &NsTensors) -> Value {
    json!({
        "dim": ns.dim(),
        "tri": ns_table_to_json(&ns.tri),
        "trl": ns_table_to_json(&ns.trl),
        "circ": ns_table_to_json(&ns.circ),
    })
}

pub fn report_to_json(r: &Report) -> Value {
    json!({
        "check": r.check,
        "passed": r.passed(),
        "conditions": r.conditions.iter().map(|c| json!({"name": c.name, "passed": c.passed})).collect::<Vec<_>>(),
        "violations": r.violations.iter().map(|v| json!({
            "condition": v.condition,
            "indices": v.indices,
            "residual": vector_to_json(&v.residual),
        })).collect::<Vec<_>>(),
        "notes": r.notes,
    })
}

pub fn cohomology_to_json(r: &CohomologyReport) -> Value {
    json!({
        "degree": r.degree,
        "dimZ": r.dim_z,
        "dimB": r.dim_b,
        "dimH": r.dim_h,
        "squaresToZero": r.squares_to_zero,
    })
}

pub fn k_cohomology_to_json(r: &KCohomologyReport) -> Value {
    let mut v = cohomology_to_json(&r.report);
    v["operator"] = json!(r.operator);
    v
}
