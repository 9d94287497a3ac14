//! Browser bindings: build catalog families, run the tropical system with
//! mutation coloring, detect periods, and check admissibility — each call
//! takes and returns JSON strings so the page stays framework-free.

use wasm_bindgen::prelude::*;
use zamolod::biagram::DynkinBiagram;
use zamolod::catalog::FamilySpec;
use zamolod::tropical::{self, MutationColor};
use zamolod::tsystem;
use zamolod::wgraph;

fn err(msg: impl std::fmt::Display) -> JsValue {
    JsValue::from_str(&msg.to_string())
}

fn load_biagram(family_or_json: &str) -> Result<(DynkinBiagram, String), JsValue> {
    let text = family_or_json.trim();
    if text.starts_with('{') {
        let v: serde_json::Value = serde_json::from_str(text).map_err(err)?;
        let bg = DynkinBiagram::from_json(&v).map_err(err)?;
        Ok((bg, "custom biagram".to_string()))
    } else {
        let spec = FamilySpec::parse(text).map_err(err)?;
        let bg = spec.build().map_err(err)?;
        Ok((bg, spec.name()))
    }
}

/// Build a family (or accept biagram JSON) and report its invariants.
#[wasm_bindgen]
pub fn describe(family_or_json: &str) -> Result<String, JsValue> {
    let (bg, name) = load_biagram(family_or_json)?;
    let witness = bg.admissibility_witness();
    let recurrent = bg.to_exchange_matrix().is_recurrent().map_err(err)?;
    let coxeter = bg.coxeter_numbers().ok();
    let subadditive = bg.strictly_subadditive_labeling().map(|l| l.values);
    let fixed_point = bg
        .fixed_point_labeling(1e-12)
        .ok()
        .flatten()
        .map(|l| l.values);
    Ok(serde_json::json!({
        "name": name,
        "n": bg.n(),
        "gamma": bg.gamma(),
        "delta": bg.delta(),
        "eps": bg.eps().iter().map(|c| match c {
            zamolod::exchange::Color::White => "w",
            zamolod::exchange::Color::Black => "b",
        }).collect::<Vec<_>>(),
        "admissible": witness.is_none(),
        "witness": witness.map(|(i, j)| vec![i + 1, j + 1]),
        "recurrent": recurrent,
        "h_gamma": coxeter.map(|c| c.0),
        "h_delta": coxeter.map(|c| c.1),
        "subadditive_labeling": subadditive,
        "fixed_point_labeling": fixed_point,
    })
    .to_string())
}

/// Run the tropical system and return the colored table plus the period.
#[wasm_bindgen]
pub fn tropical_table(family_or_json: &str, lambda: &str, steps: usize) -> Result<String, JsValue> {
    let (bg, name) = load_biagram(family_or_json)?;
    let lam = tropical::parse_lambda(lambda, bg.n()).map_err(err)?;
    let last = steps.clamp(2, 200) - 1;
    let (states, colors) = tropical::trop_evolve(&bg, &lam, last).map_err(err)?;
    let (hg, hd) = bg.coxeter_numbers().map_err(err)?;
    let period = tropical::trop_period(&bg, &lam, hg + hd + 2).map_err(err)?;
    let rows: Vec<serde_json::Value> = states
        .iter()
        .map(|s| {
            let cells: Vec<serde_json::Value> = (0..bg.n())
                .map(|k| match s.values.get(&k) {
                    Some(v) => serde_json::json!({
                        "value": v.to_string(),
                        "color": match colors.get(&(s.t, k)) {
                            Some(MutationColor::Gamma) => "gamma",
                            Some(MutationColor::Delta) => "delta",
                            Some(MutationColor::Tie) => "tie",
                            None => "initial",
                        },
                    }),
                    None => serde_json::Value::Null,
                })
                .collect();
            serde_json::json!({ "t": s.t, "cells": cells })
        })
        .collect();
    Ok(serde_json::json!({
        "name": name,
        "n": bg.n(),
        "rows": rows,
        "period": period,
        "h_gamma": hg,
        "h_delta": hd,
    })
    .to_string())
}

/// Exact Laurent trajectory entries for the first few layers.
#[wasm_bindgen]
pub fn exact_layers(family_or_json: &str, steps: usize) -> Result<String, JsValue> {
    let (bg, name) = load_biagram(family_or_json)?;
    let last = steps.clamp(2, 12) - 1;
    let states = tsystem::evolve(&bg, last).map_err(err)?;
    let layers: Vec<serde_json::Value> = states
        .iter()
        .map(|s| {
            serde_json::json!({
                "t": s.t,
                "entries": s.values.iter()
                    .map(|(k, p)| serde_json::json!({ "k": k + 1, "poly": p.to_string() }))
                    .collect::<Vec<_>>(),
            })
        })
        .collect();
    Ok(serde_json::json!({ "name": name, "layers": layers }).to_string())
}

/// Build the product cell for one seed and verify the Hecke relations.
#[wasm_bindgen]
pub fn wcell_report(family_or_json: &str, seed: &str) -> Result<String, JsValue> {
    let (bg, name) = load_biagram(family_or_json)?;
    let seed: Vec<u8> = seed
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<u8>()
                .map_err(|_| err(format!("bad seed token `{s}`")))
        })
        .collect::<Result<_, _>>()?;
    let (hg, hd) = bg.coxeter_numbers().map_err(err)?;
    let cell = wgraph::build_product_cell(&bg, &seed).map_err(err)?;
    let verdict = wgraph::verify_hecke_relations(&cell, hg as usize, hd as usize);
    Ok(serde_json::json!({
        "name": name,
        "p": hg,
        "q": hd,
        "tau": cell.tau.iter().map(|t| t.iter().copied().collect::<Vec<u8>>()).collect::<Vec<_>>(),
        "verified": verdict.is_ok(),
        "detail": match verdict {
            Ok(r) => r.relations_checked.join(", "),
            Err(e) => e.to_string(),
        },
    })
    .to_string())
}
