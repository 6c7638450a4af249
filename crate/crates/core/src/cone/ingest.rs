//! Cone definitions read from JSON.
//!
//! ```json
//! { "name": "my_lorentz", "rank": 2, "block_sizes": [3, 1],
//!   "dims": [[2, 1, 3]], "invariants": "star", "gram_scale": [1, 1, 2, 2, 2] }
//! ```
//!
//! `invariants` names a realization family (`orthant` or `star`) or a catalog cone;
//! polynomial text is not accepted. Optional fields are validated against the
//! realization when present.

use crate::cone::model::{load_catalog_cone, ConeModel};
use crate::cone::structure::derive_constants;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConeSpec {
    pub name: String,
    pub rank: usize,
    #[serde(default)]
    pub block_sizes: Option<Vec<usize>>,
    #[serde(default)]
    pub dims: Vec<[i64; 3]>,
    #[serde(default)]
    pub coordinates: Option<Vec<String>>,
    pub invariants: String,
    #[serde(default)]
    pub gram_scale: Option<Vec<f64>>,
}

pub fn cone_from_json(text: &str) -> Result<ConeModel> {
    let spec: ConeSpec = serde_json::from_str(text).map_err(|e| Error::Input(e.to_string()))?;
    cone_from_spec(&spec)
}

pub fn cone_from_spec(spec: &ConeSpec) -> Result<ConeModel> {
    let table: Vec<(usize, usize, i64)> = spec
        .dims
        .iter()
        .map(|&[k, j, n]| {
            if k < 1 || j < 1 {
                Err(Error::InvalidStructure(format!("indices must be one-based, got ({k},{j})")))
            } else {
                Ok((k as usize, j as usize, n))
            }
        })
        .collect::<Result<_>>()?;
    let structure = derive_constants(&table, spec.rank)?;
    let mut model = match spec.invariants.as_str() {
        "orthant" => {
            if structure.ambient_dim != structure.rank {
                return Err(Error::InvalidStructure("orthant has no off-diagonal blocks".into()));
            }
            ConeModel::orthant(&spec.name, spec.rank)?
        }
        "star" => {
            let mut leaves = Vec::new();
            for k in 1..structure.rank {
                for j in 1..k {
                    if structure.n(k, j) != 0 {
                        return Err(Error::InvalidStructure(format!(
                            "star realization needs n_{}{} = 0",
                            k + 1,
                            j + 1
                        )));
                    }
                }
                leaves.push(structure.n(k, 0) as usize);
            }
            ConeModel::star(&spec.name, leaves)?
        }
        key => {
            let mut m = load_catalog_cone(key)?;
            m.name = spec.name.clone();
            m
        }
    };
    if model.structure != structure {
        return Err(Error::InvalidStructure("dims do not match the named realization".into()));
    }
    if let Some(b) = &spec.block_sizes {
        if *b != model.block_sizes {
            return Err(Error::InvalidStructure(format!(
                "block_sizes {b:?} differ from realization {:?}",
                model.block_sizes
            )));
        }
    }
    if let Some(g) = &spec.gram_scale {
        if g.len() != model.dim() || g.iter().any(|&v| !(v > 0.0)) {
            return Err(Error::InvalidStructure("gram_scale must be positive, one per coordinate".into()));
        }
        model.gram_scale = g.clone();
    }
    if let Some(c) = &spec.coordinates {
        if c.len() != model.dim() {
            return Err(Error::Dimension { expected: model.dim(), got: c.len() });
        }
        for (desc, label) in model.coordinates.iter_mut().zip(c) {
            desc.label = label.clone();
        }
    }
    Ok(model)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn star_from_json() {
        let text = r#"{"name":"l3","rank":2,"dims":[[2,1,3]],"invariants":"star","block_sizes":[3,1]}"#;
        let m = cone_from_json(text).unwrap();
        assert_eq!(m.dim(), 5);
        assert_eq!(m.structure.d[1], num_rational::Ratio::new(5, 2));
        assert_eq!(m, { let mut l = load_catalog_cone("lorentz_3").unwrap(); l.name = "l3".into(); l });
    }

    #[test]
    fn rejects_mismatch() {
        let text = r#"{"name":"x","rank":3,"dims":[[2,1,1],[3,2,1]],"invariants":"star"}"#;
        assert!(cone_from_json(text).is_err());
        let text = r#"{"name":"x","rank":2,"dims":[[2,1,1]],"invariants":"vinberg"}"#;
        assert!(cone_from_json(text).is_err());
        assert!(cone_from_json("{").is_err());
    }
}
