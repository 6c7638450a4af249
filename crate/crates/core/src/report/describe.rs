//! Catalog listing and per-cone description documents.

use crate::characters::{order_map_sigma, reversal_conjugation_check};
use crate::cone::{catalog_names, check_completion_condition, load_catalog_cone, ConeModel, ParityVector, Side};
use crate::error::Result;
use crate::report::SCHEMA_VERSION;
use serde_json::json;

fn labels(indices: &[usize], r: usize) -> Vec<String> {
    let all: Vec<ParityVector> = ParityVector::all(r).collect();
    indices.iter().map(|&i| all[i].label()).collect()
}

fn ratio_strings(v: &[num_rational::Ratio<i64>]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

/// Structure constants, multipliers, completion condition, orders and the
/// reversal verdict.
pub fn describe(cone: &ConeModel) -> Result<serde_json::Value> {
    let r = cone.rank();
    let st = &cone.structure;
    let order = order_map_sigma(&cone.sigma)?;
    let order_star = order_map_sigma(&cone.sigma_star)?;
    let (conj, equal) = reversal_conjugation_check(&cone.sigma, &cone.sigma_star)?;
    let m = check_completion_condition(st);
    Ok(json!({
        "schema_version": SCHEMA_VERSION,
        "name": cone.name,
        "rank": r,
        "n": st.ambient_dim,
        "structure_constants": st.blocks().iter().map(|(k, j, n)| json!({ "k": k + 1, "j": j + 1, "n": n })).collect::<Vec<_>>(),
        "p": st.p,
        "q": st.q,
        "d": ratio_strings(&st.d),
        "sigma": cone.sigma,
        "sigma_star": cone.sigma_star,
        "measure_exponents": {
            "primal": ratio_strings(&cone.measure_exponents_q(Side::Primal)),
            "dual": ratio_strings(&cone.measure_exponents_q(Side::Dual)),
        },
        "m": m.map(|m| json!(m)).unwrap_or(json!("fails")),
        "order_sigma": labels(&order.order, r),
        "order_sigma_star": labels(&order_star.order, r),
        "reversal": {
            "r_sigma_star_r_inv": conj,
            "equal": equal,
            "verdict": if equal { "equal" } else { "not equal" },
        },
        "realization": cone.realization,
        "coordinates": cone.coordinates.iter().map(|c| c.label.clone()).collect::<Vec<_>>(),
    }))
}

/// Catalog names with rank, dimension and completion condition.
pub fn list_cones() -> Result<serde_json::Value> {
    let cones = catalog_names()
        .iter()
        .map(|name| {
            let c = load_catalog_cone(name)?;
            let m = check_completion_condition(&c.structure);
            Ok(json!({
                "name": name,
                "rank": c.rank(),
                "n": c.dim(),
                "m": m.map(|m| json!(m)).unwrap_or(json!("fails")),
            }))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(json!({ "schema_version": SCHEMA_VERSION, "cones": cones }))
}
