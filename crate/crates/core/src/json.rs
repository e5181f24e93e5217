//! JSON encodings of the external data formats. All node indices are
//! 1-based on the wire; rationals travel as "p/q" strings (bare integers are
//! also accepted on input).

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::asympchar::{GradedCharacter, MonomialQuotient};
use crate::crystal::{CrystalGraph, ParamSet};
use crate::dbar::Seq;
use crate::error::{Error, Result};
use crate::klrchar::KLRCharacter;
use crate::rat::{format_rat, parse_rat, Rat};
use crate::ratfun::RatFun;
use crate::rootsys::{CartanDatum, WeightVec};

fn bad(field: &str, detail: &str) -> Error {
    Error::Json(format!("field '{field}': {detail}"))
}

fn parse_value(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))
}

fn rat_from_value(field: &str, v: &Value) -> Result<Rat> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(crate::rat::int)
            .ok_or_else(|| bad(field, "expected an integer or \"p/q\" string")),
        Value::String(s) => {
            parse_rat(s).ok_or_else(|| bad(field, &format!("cannot parse rational '{s}'")))
        }
        _ => Err(bad(field, "expected an integer or \"p/q\" string")),
    }
}

fn i64_from_value(field: &str, v: &Value) -> Result<i64> {
    v.as_i64()
        .ok_or_else(|| bad(field, "expected an integer"))
}

fn array<'v>(field: &str, v: &'v Value) -> Result<&'v Vec<Value>> {
    v.as_array().ok_or_else(|| bad(field, "expected an array"))
}

fn coords_from_value(field: &str, v: &Value) -> Result<Vec<Rat>> {
    array(field, v)?
        .iter()
        .map(|c| rat_from_value(field, c))
        .collect()
}

/// {"nodes": r, "edges": [[i,j],...], "parity": [0,1,...]} with 1-based
/// edges; the parity list is optional.
pub fn parse_datum_config(text: &str) -> Result<CartanDatum> {
    let v = parse_value(text)?;
    let nodes = i64_from_value("nodes", v.get("nodes").ok_or_else(|| bad("nodes", "missing"))?)?;
    if nodes <= 0 {
        return Err(bad("nodes", "must be positive"));
    }
    let rank = nodes as usize;
    let mut edges = Vec::new();
    for (ix, e) in array("edges", v.get("edges").ok_or_else(|| bad("edges", "missing"))?)?
        .iter()
        .enumerate()
    {
        let pair = array("edges", e)?;
        if pair.len() != 2 {
            return Err(bad("edges", &format!("edge {ix} is not a pair")));
        }
        let a = i64_from_value("edges", &pair[0])?;
        let b = i64_from_value("edges", &pair[1])?;
        if a < 1 || b < 1 || a as usize > rank || b as usize > rank {
            return Err(bad("edges", &format!("edge {ix} is out of range")));
        }
        edges.push((a as usize - 1, b as usize - 1));
    }
    match v.get("parity") {
        None | Some(Value::Null) => CartanDatum::new(rank, &edges),
        Some(p) => {
            let parity: Result<Vec<u8>> = array("parity", p)?
                .iter()
                .map(|x| {
                    let n = i64_from_value("parity", x)?;
                    if n == 0 || n == 1 {
                        Ok(n as u8)
                    } else {
                        Err(bad("parity", "entries must be 0 or 1"))
                    }
                })
                .collect();
            CartanDatum::with_parity(rank, &edges, parity?)
        }
    }
}

/// A type name ("A2", "D4") or an inline configuration object.
pub fn parse_datum_arg(text: &str) -> Result<CartanDatum> {
    if text.trim_start().starts_with('{') {
        parse_datum_config(text)
    } else {
        CartanDatum::from_type(text)
    }
}

/// Per-node lists of integer parameters: [[...], [...], ...].
pub fn parse_param_set(text: &str, rank: usize) -> Result<ParamSet> {
    let v = parse_value(text)?;
    let outer = array("params", &v)?;
    if outer.len() > rank {
        return Err(bad(
            "params",
            &format!("{} node lists given, rank is {rank}", outer.len()),
        ));
    }
    let mut sets = Vec::new();
    for inner in outer {
        let list: Result<Vec<i64>> = array("params", inner)
            ?.iter()
            .map(|x| i64_from_value("params", x))
            .collect();
        sets.push(list?);
    }
    Ok(ParamSet::new(rank, sets))
}

/// 1-based integer array.
pub fn parse_seq_value(field: &str, v: &Value, rank: usize) -> Result<Seq> {
    let ixs: Result<Vec<usize>> = array(field, v)?
        .iter()
        .map(|x| {
            let n = i64_from_value(field, x)?;
            if n < 1 || n as usize > rank {
                Err(bad(field, &format!("node {n} out of range")))
            } else {
                Ok(n as usize - 1)
            }
        })
        .collect();
    Ok(Seq(ixs?))
}

pub fn seq_to_value(seq: &Seq) -> Value {
    Value::Array(seq.0.iter().map(|&i| json!(i + 1)).collect())
}

/// {"nu": [m_1,...,m_r], "dims": [[sequence, dim], ...]}.
pub fn parse_klr_character(datum: &CartanDatum, text: &str) -> Result<KLRCharacter> {
    let v = parse_value(text)?;
    let nu_list: Result<Vec<i64>> =
        array("nu", v.get("nu").ok_or_else(|| bad("nu", "missing"))?)?
            .iter()
            .map(|x| i64_from_value("nu", x))
            .collect();
    let nu_list = nu_list?;
    if nu_list.len() != datum.rank() {
        return Err(bad("nu", &format!("expected {} entries", datum.rank())));
    }
    let nu = WeightVec::from_integers(&nu_list);
    let mut dims = BTreeMap::new();
    for (ix, entry) in array("dims", v.get("dims").ok_or_else(|| bad("dims", "missing"))?)?
        .iter()
        .enumerate()
    {
        let pair = array("dims", entry)?;
        if pair.len() != 2 {
            return Err(bad("dims", &format!("entry {ix} is not [sequence, dim]")));
        }
        let seq = parse_seq_value("dims", &pair[0], datum.rank())?;
        let dim = i64_from_value("dims", &pair[1])?;
        if dim < 0 {
            return Err(bad("dims", &format!("entry {ix} has a negative dimension")));
        }
        if dim > 0 {
            *dims.entry(seq).or_insert(0) += dim as u64;
        }
    }
    let character = KLRCharacter::new(datum, dims)?;
    if !character.dims.is_empty() && character.weight != nu {
        return Err(bad("nu", "does not match the weight of the support"));
    }
    Ok(KLRCharacter {
        weight: nu,
        dims: character.dims,
    })
}

pub fn klr_character_to_value(datum: &CartanDatum, c: &KLRCharacter) -> Value {
    let nu: Vec<Value> = c
        .weight
        .coords
        .iter()
        .map(|x| json!(format_rat(x)))
        .collect();
    let dims: Vec<Value> = c
        .dims
        .iter()
        .map(|(seq, &d)| json!([seq_to_value(seq), d]))
        .collect();
    let _ = datum;
    json!({ "nu": nu, "dims": dims })
}

/// {"weights": [[coords],...], "generators": [[exponents],...]}; the ambient
/// rank is the length of the weight coordinate vectors.
pub fn parse_monomial_quotient(text: &str) -> Result<MonomialQuotient> {
    let v = parse_value(text)?;
    let mut weights = Vec::new();
    let mut rank = 0usize;
    for w in array(
        "weights",
        v.get("weights").ok_or_else(|| bad("weights", "missing"))?,
    )? {
        let coords = coords_from_value("weights", w)?;
        rank = rank.max(coords.len());
        weights.push(WeightVec { coords });
    }
    for w in &weights {
        if w.rank() != rank {
            return Err(bad("weights", "coordinate vectors have mixed lengths"));
        }
    }
    let mut generators = Vec::new();
    for (ix, g) in array(
        "generators",
        v.get("generators")
            .ok_or_else(|| bad("generators", "missing"))?,
    )?
    .iter()
    .enumerate()
    {
        let exps: Result<Vec<u32>> = array("generators", g)?
            .iter()
            .map(|x| {
                let n = i64_from_value("generators", x)?;
                u32::try_from(n)
                    .map_err(|_| bad("generators", &format!("entry {ix} has a negative exponent")))
            })
            .collect();
        generators.push(exps?);
    }
    MonomialQuotient::new(rank, weights, generators)
}

/// {"numerator": [[[coords], n], ...], "denominator": [[coords], ...]}.
pub fn parse_graded_character(text: &str) -> Result<GradedCharacter> {
    let v = parse_value(text)?;
    let mut numerator = BTreeMap::new();
    let mut rank = 0usize;
    let mut weights = Vec::new();
    for (ix, entry) in array(
        "numerator",
        v.get("numerator")
            .ok_or_else(|| bad("numerator", "missing"))?,
    )?
    .iter()
    .enumerate()
    {
        let pair = array("numerator", entry)?;
        if pair.len() != 2 {
            return Err(bad(
                "numerator",
                &format!("entry {ix} is not [weight, coefficient]"),
            ));
        }
        let coords = coords_from_value("numerator", &pair[0])?;
        rank = rank.max(coords.len());
        let n = i64_from_value("numerator", &pair[1])?;
        weights.push((coords, n));
    }
    let mut denominator = Vec::new();
    for w in array(
        "denominator",
        v.get("denominator")
            .ok_or_else(|| bad("denominator", "missing"))?,
    )? {
        let coords = coords_from_value("denominator", w)?;
        rank = rank.max(coords.len());
        denominator.push(coords);
    }
    for (coords, n) in weights {
        if coords.len() != rank {
            return Err(bad("numerator", "coordinate vectors have mixed lengths"));
        }
        *numerator.entry(WeightVec { coords }).or_insert(0) += n;
    }
    let denominator: Vec<WeightVec> = denominator
        .into_iter()
        .map(|coords| {
            if coords.len() != rank {
                Err(bad("denominator", "coordinate vectors have mixed lengths"))
            } else {
                Ok(WeightVec { coords })
            }
        })
        .collect::<Result<_>>()?;
    GradedCharacter::new(rank, numerator, denominator)
}

/// Polynomial as a list of [coefficient "p/q", exponent vector]; a rational
/// function as {num, den: [[coords, multiplicity], ...]}.
pub fn ratfun_to_value(f: &RatFun) -> Value {
    let num: Vec<Value> = f
        .numerator()
        .terms()
        .map(|(e, c)| json!([format_rat(c), e.0]))
        .collect();
    let den: Vec<Value> = f
        .denominator()
        .iter()
        .map(|(k, &m)| {
            let coords: Vec<String> = k.0.iter().map(|v| v.to_string()).collect();
            json!([coords, m])
        })
        .collect();
    json!({ "num": num, "den": den })
}

/// Vertex list with weights and coweight values.
pub fn crystal_to_value(datum: &CartanDatum, graph: &CrystalGraph) -> Value {
    let vertices: Vec<Value> = graph
        .vertices()
        .iter()
        .map(|m| {
            let wt = m.weight_fundamental(datum.rank());
            let vp: Vec<String> = m
                .varpi_vee_fundamental(datum.rank())
                .iter()
                .map(format_rat)
                .collect();
            json!({ "monomial": m.to_string(), "wt": wt, "varpi_vee": vp })
        })
        .collect();
    let edges: Vec<Value> = graph
        .edges()
        .iter()
        .map(|&(src, node, dst)| json!([src, node + 1, dst]))
        .collect();
    json!({ "vertices": vertices, "edges": edges })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn datum_config_round_trip() {
        let d =
            parse_datum_config(r#"{"nodes": 3, "edges": [[1,2],[2,3]], "parity": [1,0,1]}"#)
                .unwrap();
        assert_eq!(d.label(), "A3");
        assert_eq!(d.parity(0), 1);
        assert!(parse_datum_config(r#"{"edges": []}"#).is_err());
        let err = parse_datum_config(r#"{"nodes": 2, "edges": [[1]]}"#).unwrap_err();
        assert!(err.to_string().contains("edges"), "{err}");
        assert_eq!(parse_datum_arg("D4").unwrap().label(), "D4");
    }

    #[test]
    fn param_set_parsing() {
        let p = parse_param_set("[[0, 2], [1]]", 2).unwrap();
        assert_eq!(p.set(0), &[0, 2]);
        assert_eq!(p.set(1), &[1]);
        assert!(parse_param_set("[[0], [1], [2]]", 2).is_err());
        assert!(parse_param_set(r#"[["x"]]"#, 2).is_err());
    }

    #[test]
    fn klr_character_parsing() {
        let d = CartanDatum::from_type("A2").unwrap();
        let c = parse_klr_character(&d, r#"{"nu": [1,1], "dims": [[[1,2], 1]]}"#).unwrap();
        assert_eq!(c.total_dimension(), 1);
        // weight mismatch is flagged on the nu field
        let err = parse_klr_character(&d, r#"{"nu": [2,0], "dims": [[[1,2], 1]]}"#).unwrap_err();
        assert!(err.to_string().contains("nu"), "{err}");
    }

    #[test]
    fn monomial_quotient_parsing() {
        let mq = parse_monomial_quotient(
            r#"{"weights": [[1,0],[0,1]], "generators": [[1,1]]}"#,
        )
        .unwrap();
        assert_eq!(mq.variable_count(), 2);
        let err =
            parse_monomial_quotient(r#"{"weights": [[1,0],[0,1]]}"#).unwrap_err();
        assert!(err.to_string().contains("generators"), "{err}");
    }

    #[test]
    fn graded_character_parsing() {
        let gc = parse_graded_character(
            r#"{"numerator": [[[0,0], 1], [["-1/2","1/2"], 2]], "denominator": [[1,0],[1,1]]}"#,
        )
        .unwrap();
        assert_eq!(gc.variable_count(), 2);
        assert_eq!(gc.numerator().len(), 2);
    }

    #[test]
    fn ratfun_value_shape() {
        let f = RatFun::inverse_product(
            2,
            &[WeightVec::from_integers(&[1, 0]), WeightVec::from_integers(&[1, 1])],
        )
        .unwrap();
        let v = ratfun_to_value(&f);
        assert!(v.get("num").is_some() && v.get("den").is_some());
    }
}
