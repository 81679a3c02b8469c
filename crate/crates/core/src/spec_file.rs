//! JSON description of a structure-constant algebra:
//!
//! ```json
//! {"field": "Q", "basis": ["e1", "e2"], "products": [["e1", "e1", [["1", "e2"]]]]}
//! ```
//!
//! Coefficients may be integers or strings such as `"-3/2"`. Omitted products
//! are zero.

use serde::{Deserialize, Serialize};

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::scalar::Field;

#[derive(Debug, Deserialize, Serialize)]
#[serde(untagged)]
enum Coefficient {
    Int(i64),
    Text(String),
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct SpecFile {
    field: String,
    basis: Vec<String>,
    #[serde(default)]
    products: Vec<(String, String, Vec<(Coefficient, String)>)>,
}

pub fn algebra_from_json(text: &str) -> Result<Algebra> {
    let spec: SpecFile = serde_json::from_str(text).map_err(|e| Error::Spec(e.to_string()))?;
    let field: Field = spec.field.parse()?;
    let mut index = std::collections::HashMap::new();
    for (i, n) in spec.basis.iter().enumerate() {
        if index.insert(n.as_str(), i).is_some() {
            return Err(Error::DuplicateBasisName(n.clone()));
        }
    }
    let lookup = |n: &str| {
        index
            .get(n)
            .copied()
            .ok_or_else(|| Error::UnknownBasisName(n.to_string()))
    };
    let mut entries = Vec::new();
    for (l, r, terms) in &spec.products {
        let (i, j) = (lookup(l)?, lookup(r)?);
        for (c, k) in terms {
            let c = match c {
                Coefficient::Int(v) => field.from_i64(*v),
                Coefficient::Text(s) => field.parse_scalar(s)?,
            };
            entries.push((i, j, lookup(k)?, c));
        }
    }
    Algebra::new(field, spec.basis, entries)
}

/// Serializes with string coefficients, products in basis-index order.
pub fn algebra_to_json(alg: &Algebra) -> String {
    let products = alg
        .structure_constants()
        .map(|(&(i, j), v)| {
            let terms = v
                .iter()
                .map(|(&k, c)| (Coefficient::Text(c.to_string()), alg.name(k).to_string()))
                .collect();
            (alg.name(i).to_string(), alg.name(j).to_string(), terms)
        })
        .collect();
    let spec = SpecFile {
        field: alg.field().to_string(),
        basis: alg.names().to_vec(),
        products,
    };
    serde_json::to_string_pretty(&spec).expect("serializable")
}
