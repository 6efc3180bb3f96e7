//! Bundle files: one JSON document holding the sections a command needs.
//!
//! ```json
//! {"field": "q", "algebra": {...}, "rep": "regular", "H": {...}, "K": {...}}
//! ```
//!
//! Besides `algebra`, `rep`, `H`, `K` and `nsprelie`, a bundle may carry
//! named `operators`, `vectors`, `scalars` and `cochains`, a `series` of
//! operator coefficients and a `target` bundle (for morphisms). `comment` is
//! ignored.

use std::collections::BTreeMap;
use std::path::Path;

use prelie_core::cochain::Cochain;
use prelie_core::ns::NsTensors;
use prelie_core::prelie::{Actions, Representation};
use prelie_core::{Error, Field, Matrix, PreLieAlgebra, RcwSetting, ReynoldsData, Scalar};
use serde_json::Value;

use crate::format::*;

const SECTIONS: [&str; 13] = [
    "field", "comment", "algebra", "rep", "H", "K", "nsprelie", "operators", "vectors", "scalars", "cochains", "series",
    "target",
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bundle {
    pub field: Field,
    pub algebra: Option<AlgebraSection>,
    pub rep: Option<Actions>,
    pub h: Option<Cochain>,
    pub k: Option<Matrix>,
    pub nsprelie: Option<NsTensors>,
    pub operators: BTreeMap<String, Matrix>,
    pub vectors: BTreeMap<String, Vec<Scalar>>,
    pub scalars: BTreeMap<String, Scalar>,
    pub cochains: BTreeMap<String, Cochain>,
    pub series: Option<Vec<Matrix>>,
    pub target: Option<Box<Bundle>>,
}

/// Reads and validates a bundle. `field` overrides the declared field.
pub fn parse_bundle(path: &Path, field: Option<Field>) -> Result<Bundle> {
    let text = std::fs::read_to_string(path).map_err(|e| FormatError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    let v: Value = serde_json::from_str(&text).map_err(|e| FormatError::schema("", format!("invalid JSON: {}", e)))?;
    bundle_from_json(&v, field)
}

pub fn bundle_from_json(v: &Value, field: Option<Field>) -> Result<Bundle> {
    parse_at(v, "", field)
}

fn named<T>(
    obj: &serde_json::Map<String, Value>,
    at: &str,
    key: &str,
    mut parse: impl FnMut(&Value, &str) -> Result<T>,
) -> Result<BTreeMap<String, T>> {
    let mut out = BTreeMap::new();
    if let Some(v) = obj.get(key) {
        let kat = child(at, key);
        for (name, item) in object(v, &kat)? {
            out.insert(name.clone(), parse(item, &child(&kat, name))?);
        }
    }
    Ok(out)
}

fn parse_at(v: &Value, at: &str, field: Option<Field>) -> Result<Bundle> {
    let obj = object(v, at)?;
    if let Some(k) = obj.keys().find(|k| !SECTIONS.contains(&k.as_str())) {
        return Err(FormatError::schema(&child(at, k), "unknown section"));
    }
    let field = match (field, obj.get("field")) {
        (Some(f), _) => f,
        (None, Some(f)) => field_from_json(f, &child(at, "field"))?,
        (None, None) => return Err(FormatError::schema(&child(at, "field"), "missing")),
    };
    let sec = |key: &str| child(at, key);

    let algebra = match obj.get("algebra") {
        Some(a) => Some(algebra_from_json(a, &sec("algebra"), field)?),
        None => None,
    };
    let rep = match obj.get("rep") {
        Some(r) => Some(actions_from_json(r, &sec("rep"), field, algebra.as_ref())?),
        None => None,
    };
    let dim_g = algebra.as_ref().map(AlgebraSection::dim);
    let dim_v = rep.as_ref().map(|r| r.dim_v);

    let h = match obj.get("H") {
        Some(h) => {
            let c = cochain_from_json(h, &sec("H"), field)?;
            if c.degree() != 2 {
                return Err(FormatError::schema(&child(&sec("H"), "degree"), "H must have degree 2"));
            }
            if let Some(n) = dim_g.filter(|n| *n != c.dim_source()) {
                return Err(FormatError::mismatch(&sec("H"), &sec("algebra"), format!("dim_source {} vs algebra dimension {}", c.dim_source(), n)));
            }
            if let Some(m) = dim_v.filter(|m| *m != c.dim_target()) {
                return Err(FormatError::mismatch(&sec("H"), &sec("rep"), format!("dim_target {} vs dimV {}", c.dim_target(), m)));
            }
            Some(c)
        }
        None => None,
    };
    let k = match obj.get("K") {
        Some(k) => {
            let m = matrix_from_json(k, &sec("K"), field)?;
            if let Some(n) = dim_g.filter(|n| *n != m.rows()) {
                return Err(FormatError::mismatch(&sec("K"), &sec("algebra"), format!("{} rows vs algebra dimension {}", m.rows(), n)));
            }
            if let Some(d) = dim_v.filter(|d| *d != m.cols()) {
                return Err(FormatError::mismatch(&sec("K"), &sec("rep"), format!("{} columns vs dimV {}", m.cols(), d)));
            }
            Some(m)
        }
        None => None,
    };
    let nsprelie = match obj.get("nsprelie") {
        Some(n) => Some(ns_from_json(n, &sec("nsprelie"), field)?),
        None => None,
    };
    let operators = named(obj, at, "operators", |v, p| matrix_from_json(v, p, field))?;
    let vectors = named(obj, at, "vectors", |v, p| vector_from_json(v, p, field, None))?;
    let scalars = named(obj, at, "scalars", |v, p| scalar_from_json(v, p, field))?;
    let cochains = named(obj, at, "cochains", |v, p| cochain_from_json(v, p, field))?;
    let series = match obj.get("series") {
        Some(s) => {
            let sat = sec("series");
            Some(
                array(s, &sat)?
                    .iter()
                    .enumerate()
                    .map(|(i, m)| matrix_from_json(m, &child(&sat, i), field))
                    .collect::<Result<Vec<_>>>()?,
            )
        }
        None => None,
    };
    let target = match obj.get("target") {
        Some(t) => {
            let tat = sec("target");
            if t.get("field").is_some() {
                return Err(FormatError::schema(&child(&tat, "field"), "the field declaration is global"));
            }
            Some(Box::new(parse_at(t, &tat, Some(field))?))
        }
        None => None,
    };
    Ok(Bundle {
        field,
        algebra,
        rep,
        h,
        k,
        nsprelie,
        operators,
        vectors,
        scalars,
        cochains,
        series,
        target,
    })
}

/// A bundle section that a command needs but the file lacks, or that fails
/// the axioms its role requires.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum InputError {
    #[error("bundle has no {0}")]
    Missing(String),
    #[error("{section}: {error}")]
    Invalid { section: String, error: Error },
}

fn invalid(section: &str) -> impl FnOnce(Error) -> InputError + '_ {
    move |error| InputError::Invalid {
        section: section.to_string(),
        error,
    }
}

impl Bundle {
    pub fn algebra_section(&self) -> std::result::Result<&AlgebraSection, InputError> {
        self.algebra.as_ref().ok_or_else(|| InputError::Missing("/algebra".into()))
    }

    /// The algebra, verified pre-Lie (and its unit, if declared).
    pub fn algebra(&self) -> std::result::Result<PreLieAlgebra, InputError> {
        let s = self.algebra_section()?;
        let mut a = PreLieAlgebra::new(s.tensor.clone()).map_err(invalid("/algebra"))?;
        if let Some(u) = &s.unit {
            a = a.with_unit(u.clone()).map_err(invalid("/algebra/unit"))?;
        }
        if let Some(l) = &s.labels {
            a = a.with_labels(l.clone()).map_err(invalid("/algebra/labels"))?;
        }
        Ok(a)
    }

    pub fn actions(&self) -> std::result::Result<&Actions, InputError> {
        self.rep.as_ref().ok_or_else(|| InputError::Missing("/rep".into()))
    }

    pub fn representation(&self) -> std::result::Result<(PreLieAlgebra, Representation), InputError> {
        let g = self.algebra()?;
        let rep = Representation::new(&g, self.actions()?.clone()).map_err(invalid("/rep"))?;
        Ok((g, rep))
    }

    pub fn cocycle(&self) -> std::result::Result<&Cochain, InputError> {
        self.h.as_ref().ok_or_else(|| InputError::Missing("/H".into()))
    }

    /// Algebra, representation and `H`, all verified. A missing `H` is zero.
    pub fn setting(&self) -> std::result::Result<RcwSetting, InputError> {
        let (g, rep) = self.representation()?;
        match &self.h {
            Some(h) => RcwSetting::new(g, rep, h.clone()).map_err(invalid("/H")),
            None => Ok(RcwSetting::without_cocycle(g, rep)),
        }
    }

    pub fn operator_k(&self) -> std::result::Result<&Matrix, InputError> {
        self.k.as_ref().ok_or_else(|| InputError::Missing("/K".into()))
    }

    /// The setting with `K`, verified to be an RCW Reynolds operator.
    pub fn reynolds(&self) -> std::result::Result<ReynoldsData, InputError> {
        ReynoldsData::new(self.setting()?, self.operator_k()?.clone()).map_err(invalid("/K"))
    }

    pub fn operator(&self, name: &str) -> std::result::Result<&Matrix, InputError> {
        self.operators.get(name).ok_or_else(|| InputError::Missing(format!("/operators/{}", name)))
    }

    pub fn vector(&self, name: &str) -> std::result::Result<&Vec<Scalar>, InputError> {
        self.vectors.get(name).ok_or_else(|| InputError::Missing(format!("/vectors/{}", name)))
    }

    pub fn scalar(&self, name: &str) -> std::result::Result<&Scalar, InputError> {
        self.scalars.get(name).ok_or_else(|| InputError::Missing(format!("/scalars/{}", name)))
    }

    pub fn ns(&self) -> std::result::Result<&NsTensors, InputError> {
        self.nsprelie.as_ref().ok_or_else(|| InputError::Missing("/nsprelie".into()))
    }

    pub fn target(&self) -> std::result::Result<&Bundle, InputError> {
        self.target.as_deref().ok_or_else(|| InputError::Missing("/target".into()))
    }
}
