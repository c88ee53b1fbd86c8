//! Resolution of command arguments into values: files, inline JSON, stdin,
//! workspace references and named built-ins.

use std::io::Read;
use std::path::Path;
use std::sync::Arc;

use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::Value;
use torica_core::cone::{Cone, ConeJson};
use torica_core::divisor::{ToricVariety, TorusDivisor};
use torica_core::polyring::{Ideal, MonomialOrder, PolyRing, Polynomial};
use torica_core::toric::{
    product_ring, steinberg_phi, MonomialMap, MonomialMapJson, ToricPresentation, STEINBERG_CHARACTERS, STEINBERG_VARS,
};

use crate::error::CliError;
use crate::workspace::Workspace;

/// Reads a source argument:
/// - `-` reads JSON from stdin,
/// - text starting with `{`, `[` or `"` is inline JSON,
/// - `ws:NAME` is a workspace object,
/// - `@...` is a built-in name, returned as a JSON string,
/// - anything else is a path to a JSON file.
pub fn read_value(src: &str, workspace: &Path) -> Result<Value, CliError> {
    if src == "-" {
        let mut text = String::new();
        std::io::stdin().read_to_string(&mut text).map_err(|e| CliError::io("<stdin>", e))?;
        return Ok(serde_json::from_str(&text)?);
    }
    if src.starts_with(['{', '[', '"']) {
        return Ok(serde_json::from_str(src)?);
    }
    if let Some(name) = src.strip_prefix("ws:") {
        return Ok(Workspace::load(workspace)?.get(name)?.value.clone());
    }
    if src.starts_with('@') {
        return Ok(Value::String(src.to_string()));
    }
    let text = std::fs::read_to_string(src).map_err(|e| CliError::io(src, e))?;
    Ok(serde_json::from_str(&text)?)
}

pub fn decode<T: DeserializeOwned>(value: Value) -> Result<T, CliError> {
    Ok(serde_json::from_value(value)?)
}

/// `@S`, `@A`, `@A1` and products `@S^k*A^s` (factors in any order).
pub fn builtin_variety(name: &str) -> Option<ToricVariety> {
    match name {
        "@S" => return Some(ToricVariety::steinberg()),
        "@A" => return Some(ToricVariety::affine_line()),
        "@A1" => return Some(ToricVariety::a1()),
        _ => {}
    }
    let (k, s) = steinberg_power(name)?;
    Some(ToricVariety::power_product(k, s))
}

/// `(k, s)` for `@S^k*A^s`.
pub fn steinberg_power(name: &str) -> Option<(usize, usize)> {
    let body = name.strip_prefix('@')?;
    let (mut k, mut s) = (0, 0);
    for factor in body.split('*') {
        let (base, exp) = factor.split_once('^').unwrap_or((factor, "1"));
        let exp: usize = exp.parse().ok()?;
        match base {
            "S" => k += exp,
            "A" => s += exp,
            _ => return None,
        }
    }
    Some((k, s))
}

/// A variety from a built-in name or a cone `σ` given as JSON. Cones read
/// from the workspace keep the reference `ws:NAME` as their id.
pub fn variety(src: &str, workspace: &Path) -> Result<ToricVariety, CliError> {
    let value = read_value(src, workspace)?;
    variety_from_value(value, src, workspace)
}

fn variety_from_value(value: Value, src: &str, workspace: &Path) -> Result<ToricVariety, CliError> {
    match value {
        Value::String(name) if name.starts_with('@') => {
            builtin_variety(&name).ok_or_else(|| CliError::Usage(format!("unknown built-in variety {name}")))
        }
        Value::String(name) => variety(&name, workspace),
        other => {
            let cone = Cone::from_json(&decode::<ConeJson>(other)?)?;
            let id = if src.starts_with("ws:") { src.to_string() } else { "cone".to_string() };
            Ok(ToricVariety::from_cone(cone, id)?)
        }
    }
}

#[derive(Debug, Deserialize)]
struct DivisorInput {
    variety: String,
    coeffs: Vec<i64>,
}

/// `{"variety": ID, "coeffs": [...]}`, where `ID` is a built-in or a
/// workspace reference.
pub fn divisor(src: &str, workspace: &Path) -> Result<(ToricVariety, TorusDivisor), CliError> {
    let input: DivisorInput = decode(read_value(src, workspace)?)?;
    divisor_on(&input.variety, input.coeffs, workspace)
}

pub fn divisor_on(
    variety_src: &str,
    coeffs: Vec<i64>,
    workspace: &Path,
) -> Result<(ToricVariety, TorusDivisor), CliError> {
    let v = variety(variety_src, workspace)?;
    let d = v.divisor(coeffs)?;
    Ok((v, d))
}

pub fn cone(src: &str, workspace: &Path) -> Result<Cone, CliError> {
    Ok(Cone::from_json(&decode::<ConeJson>(read_value(src, workspace)?)?)?)
}

/// A monomial map with names for the character coordinates when known;
/// `@S` is the map `A = xz, ..., Z = y`.
pub fn monomial_map(src: &str, workspace: &Path) -> Result<(MonomialMap, Option<Vec<String>>), CliError> {
    match read_value(src, workspace)? {
        Value::String(name) if name == "@S" => {
            let map = MonomialMap::new(steinberg_phi(), STEINBERG_VARS.map(String::from).to_vec())?;
            Ok((map, Some(STEINBERG_CHARACTERS.map(String::from).to_vec())))
        }
        Value::String(name) => Err(CliError::Usage(format!("no built-in monomial map {name}"))),
        other => Ok((MonomialMap::from_json(&decode::<MonomialMapJson>(other)?)?, None)),
    }
}

#[derive(Debug, Deserialize)]
struct IdealInput {
    vars: Vec<String>,
    #[serde(rename = "char")]
    characteristic: Option<u64>,
    gens: Vec<String>,
    #[serde(default)]
    order: Option<MonomialOrder>,
}

/// An ideal from JSON (`char` defaults to `field`) or the presentation
/// ideal of a built-in `@S^k*A^s`.
pub fn ideal(src: &str, field: u64, workspace: &Path) -> Result<(Ideal, Option<ToricPresentation>), CliError> {
    match read_value(src, workspace)? {
        Value::String(name) => {
            let (k, s) = steinberg_power(&name)
                .ok_or_else(|| CliError::Usage(format!("{name} has no polynomial presentation")))?;
            let pres = product_ring(k, s, field)?;
            Ok((pres.ideal.clone(), Some(pres)))
        }
        other => {
            let input: IdealInput = decode(other)?;
            let ring = PolyRing::new(&input.vars, input.characteristic.unwrap_or(field))?;
            Ok((Ideal::parse(&ring, &input.gens, input.order.unwrap_or_default())?, None))
        }
    }
}

/// Parses polynomials in the ring variables or, with `characters`, in the
/// character variables of a presentation (pulled back to the ring).
pub fn polynomials(
    ring: &Arc<PolyRing>,
    presentation: Option<&ToricPresentation>,
    texts: &[String],
    characters: bool,
) -> Result<Vec<Polynomial>, CliError> {
    texts
        .iter()
        .map(|t| match (characters, presentation) {
            (true, Some(p)) => Ok(p.pull_back(t)?),
            (true, None) => Err(CliError::Usage("--characters needs a built-in ring such as @S".into())),
            (false, _) => Ok(Polynomial::parse(ring, t)?),
        })
        .collect()
}

/// `grevlex`, `lex` or `elim:K`.
pub fn monomial_order(text: &str) -> Result<MonomialOrder, CliError> {
    match text {
        "grevlex" => Ok(MonomialOrder::Grevlex),
        "lex" => Ok(MonomialOrder::Lex),
        _ => text
            .strip_prefix("elim:")
            .and_then(|k| k.parse().ok())
            .map(MonomialOrder::Elimination)
            .ok_or_else(|| CliError::Usage(format!("unknown monomial order {text:?}; use grevlex, lex or elim:K"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_names() {
        assert_eq!(steinberg_power("@S^2*A^1"), Some((2, 1)));
        assert_eq!(steinberg_power("@A^3*S"), Some((1, 3)));
        assert_eq!(steinberg_power("@S^x"), None);
        assert_eq!(steinberg_power("S"), None);
        assert_eq!(builtin_variety("@S").unwrap().rays().len(), 4);
        assert_eq!(builtin_variety("@S^2*A^1").unwrap().rays().len(), 9);
        assert_eq!(builtin_variety("@A1").unwrap().dim(), 2);
        assert!(builtin_variety("@Q").is_none());
    }

    #[test]
    fn orders() {
        assert_eq!(monomial_order("elim:2").unwrap(), MonomialOrder::Elimination(2));
        assert!(monomial_order("deglex").is_err());
    }

    #[test]
    fn inline_values() {
        let ws = Path::new("/nonexistent/ws.json");
        let c = cone(r#"{"dim": 2, "generators": [[1, 0], [0, 1]]}"#, ws).unwrap();
        assert_eq!(c.dim(), 2);
        let (i, pres) = ideal(r#"{"vars": ["x", "y"], "gens": ["x*y"]}"#, 7, ws).unwrap();
        assert_eq!(i.ring().characteristic(), 7);
        assert!(pres.is_none());
        let (_, d) = divisor(r#"{"variety": "@S", "coeffs": [1, 0, 0, 0]}"#, ws).unwrap();
        assert_eq!(d.variety, "@S");
        assert!(matches!(read_value("{", ws), Err(CliError::Json(_))));
    }
}
