//! wasm-bindgen bindings for the static page in `www/`. Every export takes
//! plain strings and returns a JSON string, so the page needs no glue beyond
//! `JSON.parse`.

use std::sync::Arc;

use serde::Serialize;
use wasm_bindgen::prelude::*;

use weyl_core::atlas::{builtin_reductions, classify_cubes, verify_reduction_with, Atlas, AtlasJson};
use weyl_core::invariant::{canonical_basis, expand, CanonicalBasis, InvariantExpr, InvariantVector};
use weyl_core::root_system::{build_root_system, find_subsystem, RootSystem, TypeSpec};
use weyl_core::weyl::group_order;

#[derive(Serialize)]
struct Classification {
    order: String,
    basis: CanonicalBasis,
    atlas: AtlasJson,
}

#[derive(Serialize)]
struct PairRow {
    expr: String,
    #[serde(flatten)]
    vector: InvariantVector,
}

fn system(spec: &str) -> weyl_core::Result<Arc<RootSystem>> {
    let spec: TypeSpec = spec.trim().parse()?;
    Ok(Arc::new(build_root_system(&spec)?))
}

fn to_js<T: Serialize>(r: weyl_core::Result<T>) -> Result<String, JsError> {
    let value = r.map_err(|e| JsError::new(&e.to_string()))?;
    serde_json::to_string(&value).map_err(|e| JsError::new(&e.to_string()))
}

/// Order, canonical basis and the involution and cube classes of a type.
pub fn classify_json(spec: &str) -> weyl_core::Result<impl Serialize> {
    let rs = system(spec)?;
    let atlas = Atlas::compute(&rs)?;
    Ok(Classification { order: group_order(&rs).to_string(), basis: canonical_basis(&atlas), atlas: atlas.to_json() })
}

/// Pairings of `w_i(cox)` and of the `;`-separated expressions in `exprs`.
pub fn pair_json(spec: &str, exprs: &str) -> weyl_core::Result<impl Serialize> {
    let rs = system(spec)?;
    let atlas = Atlas::compute(&rs)?;
    let mut texts: Vec<String> = (0..=rs.rank()).map(|i| format!("w{i}(cox)")).collect();
    texts.extend(exprs.split(';').map(str::trim).filter(|s| !s.is_empty()).map(String::from));
    texts
        .iter()
        .map(|t| {
            let e = InvariantExpr::parse(&rs, t)?;
            Ok(PairRow { expr: e.to_string(), vector: expand(&e, &atlas)? })
        })
        .collect::<weyl_core::Result<Vec<_>>>()
}

/// Index and cube coverage of a subsystem; the built-in one if `sub` is empty.
pub fn reduce_json(spec: &str, sub: &str) -> weyl_core::Result<impl Serialize> {
    let rs = system(spec)?;
    let name = rs.spec().to_string();
    let sub = match sub.trim() {
        "" => builtin_reductions()
            .iter()
            .find(|(g, _)| *g == name)
            .map(|(_, h)| h.to_string())
            .ok_or_else(|| weyl_core::Error::Precondition(format!("no built-in reduction for {name}")))?,
        s => s.to_string(),
    };
    let emb = find_subsystem(&rs, &sub.parse()?)?
        .ok_or_else(|| weyl_core::Error::Precondition(format!("{name} has no subsystem of type {sub}")))?;
    Ok(verify_reduction_with(&rs, &emb, &classify_cubes(&rs)?))
}

#[wasm_bindgen]
pub fn classify(spec: &str) -> Result<String, JsError> {
    to_js(classify_json(spec))
}

#[wasm_bindgen]
pub fn pair(spec: &str, exprs: &str) -> Result<String, JsError> {
    to_js(pair_json(spec, exprs))
}

#[wasm_bindgen]
pub fn reduce(spec: &str, sub: &str) -> Result<String, JsError> {
    to_js(reduce_json(spec, sub))
}
