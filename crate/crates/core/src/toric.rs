//! Toric ideals of monomial maps and the concrete rings built from the
//! three-dimensional cone over `P^1 x P^1`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cone::{dot, embed, lex_desc, sub, Cone, Semigroup};
use crate::polyring::{
    groebner_basis, saturate, Ideal, IdealJson, Monomial, MonomialOrder, PolyError, PolyRing, Polynomial,
};
use crate::zlinalg::{cokernel_presentation, kernel_basis, IntMatrix, MatrixError, MatrixJson};

#[derive(Debug, Error)]
pub enum ToricError {
    #[error("the monomial map has infinite cokernel (free rank {0})")]
    InfiniteCokernel(usize),
    #[error("expected {expected} variable names, got {got}")]
    VariableCount { expected: usize, got: usize },
    #[error("characteristic must be odd")]
    EvenCharacteristic,
    #[error("need k + s >= 1")]
    EmptyProduct,
    #[error("monomial {0} is not in the semigroup of the presentation")]
    NotInSemigroup(String),
    #[error("matrix entry does not fit in 64 bits")]
    Overflow,
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// `Phi : Z^h -> Z^d`, column `i` being the exponent of the `i`-th variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialMap {
    phi: IntMatrix,
    vars: Vec<String>,
}

/// JSON wire form: `{"phi": <matrix>, "vars": [...]}`; `vars` defaults to
/// `z1..zh`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialMapJson {
    pub phi: MatrixJson,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub vars: Vec<String>,
}

impl MonomialMap {
    pub fn new(phi: IntMatrix, vars: Vec<String>) -> Result<MonomialMap, ToricError> {
        if vars.len() != phi.cols() {
            return Err(ToricError::VariableCount { expected: phi.cols(), got: vars.len() });
        }
        Ok(MonomialMap { phi, vars })
    }

    pub fn with_default_names(phi: IntMatrix) -> MonomialMap {
        let vars = (1..=phi.cols()).map(|i| format!("z{i}")).collect();
        MonomialMap { phi, vars }
    }

    pub fn from_json(j: &MonomialMapJson) -> Result<MonomialMap, ToricError> {
        let phi = IntMatrix::try_from(&j.phi)?;
        if j.vars.is_empty() {
            Ok(MonomialMap::with_default_names(phi))
        } else {
            MonomialMap::new(phi, j.vars.clone())
        }
    }

    pub fn to_json(&self) -> Result<MonomialMapJson, ToricError> {
        Ok(MonomialMapJson { phi: self.phi.to_json().ok_or(ToricError::Overflow)?, vars: self.vars.clone() })
    }

    pub fn phi(&self) -> &IntMatrix {
        &self.phi
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn columns(&self) -> Result<Vec<Vec<i64>>, ToricError> {
        self.phi.transpose().to_i64_rows().ok_or(ToricError::Overflow)
    }

    pub fn apply(&self, exponent: &[i64]) -> Vec<i64> {
        let v: Vec<BigInt> = exponent.iter().map(|&e| BigInt::from(e)).collect();
        self.phi.mul_vec(&v).iter().map(|x| x.to_i64().expect("image fits in 64 bits")).collect()
    }
}

/// `F[z]/I_L ≅ F[S]` together with the data that produced it.
#[derive(Debug, Clone)]
pub struct ToricPresentation {
    pub map: MonomialMap,
    pub ideal: Ideal,
    pub semigroup: Semigroup,
    /// Names of the coordinates of the character lattice `Z^d`.
    pub characters: Vec<String>,
}

impl ToricPresentation {
    pub fn ring(&self) -> &Arc<PolyRing> {
        self.ideal.ring()
    }

    /// Each variable written as a character monomial, e.g. `A = x*z`.
    pub fn substitution(&self) -> BTreeMap<String, String> {
        let cols = self.map.columns().expect("presentation columns fit in 64 bits");
        self.map.vars.iter().cloned().zip(cols.iter().map(|c| character_monomial(c, &self.characters))).collect()
    }

    pub fn to_json(&self) -> PresentationJson {
        PresentationJson {
            ideal: IdealJson::from_ideal(&self.ideal),
            phi: self.map.phi.to_json().expect("presentation matrix fits in 64 bits"),
            characters: self.characters.clone(),
            substitution: self.substitution(),
            semigroup: self.semigroup.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationJson {
    pub ideal: IdealJson,
    pub phi: MatrixJson,
    pub characters: Vec<String>,
    pub substitution: BTreeMap<String, String>,
    pub semigroup: Semigroup,
}

/// `x^a y^b ...` with negative exponents allowed, `1` for the zero vector.
pub fn character_monomial(m: &[i64], names: &[String]) -> String {
    let parts: Vec<String> = m
        .iter()
        .zip(names)
        .filter(|(e, _)| **e != 0)
        .map(|(e, n)| if *e == 1 { n.clone() } else { format!("{n}^{e}") })
        .collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

fn default_characters(d: usize) -> Vec<String> {
    (1..=d).map(|i| format!("t{i}")).collect()
}

fn binomial_of(ring: &Arc<PolyRing>, l: &[BigInt]) -> Polynomial {
    let plus = l.iter().map(|x| if x.is_positive() { x.to_u32().expect("small exponent") } else { 0 }).collect();
    let minus = l.iter().map(|x| if x.is_negative() { (-x).to_u32().expect("small exponent") } else { 0 }).collect();
    Polynomial::binomial(ring, Monomial(plus), Monomial(minus))
}

/// Greedy minimal generating set of a homogeneous ideal: walk the reduced
/// basis by degree and keep what the earlier elements do not already give.
pub fn minimal_generators(i: &Ideal) -> Vec<Polynomial> {
    let mut basis = i.basis().to_vec();
    basis.sort_by_key(|g| g.total_degree().unwrap_or(0));
    let mut kept: Vec<Polynomial> = Vec::new();
    for g in basis {
        let sub = Ideal::new(i.ring(), kept.clone(), i.order()).expect("same ring");
        if kept.is_empty() || !sub.contains(&g) {
            kept.push(g);
        }
    }
    kept
}

/// `I_L = (I_𝓛 : (z_1 ⋯ z_h)^∞)`, with `I_𝓛` from an HNF basis of `ker Phi`.
pub fn toric_ideal(map: &MonomialMap, characteristic: u64) -> Result<ToricPresentation, ToricError> {
    let coker = cokernel_presentation(&map.phi);
    if coker.free_rank > 0 {
        return Err(ToricError::InfiniteCokernel(coker.free_rank));
    }
    let ring = PolyRing::new(&map.vars, characteristic)?;
    let kernel = kernel_basis(&map.phi);
    let lattice_gens: Vec<Polynomial> = (0..kernel.cols()).map(|j| binomial_of(&ring, &kernel.column(j))).collect();
    let il = Ideal::new(&ring, lattice_gens, MonomialOrder::Grevlex)?;
    let all_vars = (0..ring.nvars()).fold(Polynomial::constant(&ring, 1), |acc, i| acc.mul(&Polynomial::var(&ring, i)));
    let saturated = saturate(&il, &all_vars);
    let homogeneous = saturated.basis().iter().all(Polynomial::is_homogeneous);
    let gens = if homogeneous { minimal_generators(&saturated) } else { saturated.basis().to_vec() };
    let ideal = Ideal::new(&ring, gens, MonomialOrder::Grevlex)?;
    let semigroup = column_semigroup(map)?;
    let characters = default_characters(map.phi.rows());
    Ok(ToricPresentation { map: map.clone(), ideal, semigroup, characters })
}

fn column_semigroup(map: &MonomialMap) -> Result<Semigroup, ToricError> {
    let mut gens = map.columns()?;
    gens.sort_by(|a, b| lex_desc(a, b));
    gens.dedup();
    Ok(Semigroup { ambient_dim: map.phi.rows(), hilbert_generators: gens })
}

pub const STEINBERG_VARS: [&str; 6] = ["A", "B", "C", "X", "Y", "Z"];
pub const STEINBERG_CHARACTERS: [&str; 3] = ["x", "y", "z"];

/// Exponents of `A=xz, B=xz^2, C=x, X=yz, Y=yz^2, Z=y` in `(x, y, z)`.
pub fn steinberg_phi() -> IntMatrix {
    IntMatrix::from_columns(3, &[[1, 0, 1], [1, 0, 2], [1, 0, 0], [0, 1, 1], [0, 1, 2], [0, 1, 0]])
        .expect("fixed 3x6 matrix")
}

/// The 2x2 minors of `[[A, B, X, Y], [C, A, Z, X]]`.
pub const STEINBERG_MINORS: [&str; 6] = ["A^2 - B*C", "A*Z - C*X", "A*X - C*Y", "A*X - B*Z", "A*Y - B*X", "X^2 - Y*Z"];

fn steinberg_copy(ring: &Arc<PolyRing>, names: &[String]) -> Result<Vec<Polynomial>, ToricError> {
    // rename A..Z to the copy's variable names before parsing
    STEINBERG_MINORS
        .iter()
        .map(|m| {
            let renamed: String = m
                .chars()
                .map(|c| match STEINBERG_VARS.iter().position(|v| v.starts_with(c)) {
                    Some(i) => names[i].clone(),
                    None => c.to_string(),
                })
                .collect();
            Polynomial::parse(ring, &renamed).map_err(ToricError::from)
        })
        .collect()
}

/// `F[A,B,C,X,Y,Z]/Ī` for odd `p`, with `Ī` the minors ideal.
pub fn steinberg_ring_mod_l(characteristic: u64) -> Result<ToricPresentation, ToricError> {
    product_ring(1, 0, characteristic)
}

/// `𝒮^{⊗k}[x_1..x_s]` as disjoint copies of the minors ideal. Copy `j` uses
/// variables `Aj..Zj` (plain `A..Z` when `k = 1`), the polynomial variables
/// are `x1..xs`.
pub fn product_ring(k: usize, s: usize, characteristic: u64) -> Result<ToricPresentation, ToricError> {
    if k + s == 0 {
        return Err(ToricError::EmptyProduct);
    }
    if characteristic.is_multiple_of(2) {
        return Err(ToricError::EvenCharacteristic);
    }
    let suffix = |j: usize| if k == 1 { String::new() } else { (j + 1).to_string() };
    let mut vars: Vec<String> = Vec::new();
    let mut characters: Vec<String> = Vec::new();
    for j in 0..k {
        vars.extend(STEINBERG_VARS.iter().map(|v| format!("{v}{}", suffix(j))));
        characters.extend(STEINBERG_CHARACTERS.iter().map(|c| format!("{c}{}", suffix(j))));
    }
    for i in 1..=s {
        vars.push(format!("x{i}"));
        characters.push(format!("w{i}"));
    }
    let ring = PolyRing::new(&vars, characteristic)?;
    let mut gens = Vec::new();
    for j in 0..k {
        gens.extend(steinberg_copy(&ring, &vars[6 * j..6 * j + 6])?);
    }
    let ideal = Ideal::new(&ring, gens, MonomialOrder::Grevlex)?;

    let (d, h) = (3 * k + s, 6 * k + s);
    let base = steinberg_phi().transpose().to_i64_rows().expect("small entries");
    let mut columns: Vec<Vec<i64>> = Vec::with_capacity(h);
    for j in 0..k {
        columns.extend(base.iter().map(|c| embed(c, 3 * j, d)));
    }
    for i in 0..s {
        columns.push(embed(&[1], 3 * k + i, d));
    }
    let phi = IntMatrix::from_columns(d, &columns)?;
    let map = MonomialMap::new(phi, vars)?;
    let semigroup = column_semigroup(&map)?;
    Ok(ToricPresentation { map, ideal, semigroup, characters })
}

/// Factors `m` as a sum of columns (smallest column indices first).
fn decompose(m: &[i64], cols: &[Vec<i64>], w: &[i64], start: usize, out: &mut Vec<u32>) -> bool {
    if m.iter().all(|&x| x == 0) {
        return true;
    }
    if dot(w, m) <= 0 {
        return false;
    }
    for j in start..cols.len() {
        let rest = sub(m, &cols[j]);
        out[j] += 1;
        if decompose(&rest, cols, w, j, out) {
            return true;
        }
        out[j] -= 1;
    }
    false
}

impl ToricPresentation {
    /// Rewrites a polynomial in the character names, such as `y - x*z^2`,
    /// in the presentation variables.
    pub fn pull_back(&self, text: &str) -> Result<Polynomial, ToricError> {
        let cols = self.map.columns()?;
        let d = self.map.phi.rows();
        // a grading positive on every column: sum of facet normals
        let normals = &Cone::new(d, cols.clone()).map_err(|_| ToricError::Overflow)?.halfspaces().normals.clone();
        let w: Vec<i64> = (0..d).map(|i| normals.iter().map(|n| n[i]).sum()).collect();
        let char_ring = PolyRing::new(&self.characters, self.ring().characteristic())?;
        let f = Polynomial::parse(&char_ring, text)?;
        let mut terms = Vec::with_capacity(f.terms().len());
        for (m, c) in f.terms() {
            let m: Vec<i64> = m.0.iter().map(|&e| e as i64).collect();
            let mut e = vec![0u32; cols.len()];
            if !decompose(&m, &cols, &w, 0, &mut e) {
                return Err(ToricError::NotInSemigroup(character_monomial(&m, &self.characters)));
            }
            terms.push((Monomial(e), *c as i64));
        }
        Ok(Polynomial::from_terms(self.ring(), terms))
    }
}

/// Checks `Phi alpha = Phi beta` for every two-term generator `z^alpha - z^beta`.
pub fn generators_are_lattice_binomials(p: &ToricPresentation) -> bool {
    p.ideal.generators().iter().all(|g| {
        let ts = g.terms();
        if ts.len() != 2 || (ts[0].1 + ts[1].1) % p.ring().characteristic() != 0 {
            return false;
        }
        let a: Vec<i64> = ts[0].0 .0.iter().map(|&e| e as i64).collect();
        let b: Vec<i64> = ts[1].0 .0.iter().map(|&e| e as i64).collect();
        p.map.apply(&a) == p.map.apply(&b)
    })
}

/// The ideal with its reduced basis already computed.
pub fn reduced(p: &ToricPresentation) -> Ideal {
    groebner_basis(&p.ideal)
}
