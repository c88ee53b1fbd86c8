//! Rational polyhedral cones given by integer generators.
//!
//! Conversions between generator and inequality descriptions go through a
//! double-description (Fourier-Motzkin) pass with exact integers. Hilbert
//! bases are found by enumerating the lattice points of the bounding box of
//! the generator zonotope and sieving out reducible points degree by degree.

use std::cmp::Ordering;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::par;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConeError {
    #[error("cone is not strongly convex (it contains a line)")]
    NotStronglyConvex,
    #[error("cone is not pointed; Hilbert basis is only defined for pointed cones")]
    NotPointed,
    #[error("generator {index} has length {got}, expected ambient dimension {dim}")]
    BadGenerator { index: usize, got: usize, dim: usize },
    #[error("intermediate value does not fit in 64 bits")]
    Overflow,
}

/// `Cone(generators) ⊆ R^dim`.
#[derive(Clone)]
pub struct Cone {
    dim: usize,
    generators: Vec<Vec<i64>>,
    cache: OnceLock<Halfspaces>,
}

/// `{x : <n, x> >= 0 for n in normals, <e, x> = 0 for e in equations}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Halfspaces {
    pub normals: Vec<Vec<i64>>,
    pub equations: Vec<Vec<i64>>,
}

impl Halfspaces {
    pub fn contains(&self, v: &[i64]) -> bool {
        self.normals.iter().all(|n| dot(n, v) >= 0) && self.equations.iter().all(|e| dot(e, v) == 0)
    }
}

impl std::fmt::Debug for Cone {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Cone").field("dim", &self.dim).field("generators", &self.generators).finish()
    }
}

/// Two cones are equal when they are the same set.
impl PartialEq for Cone {
    fn eq(&self, other: &Cone) -> bool {
        self.dim == other.dim
            && self.generators.iter().all(|g| other.contains(g))
            && other.generators.iter().all(|g| self.contains(g))
    }
}

impl Eq for Cone {}

/// JSON wire form: `{"dim": d, "generators": [[...], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeJson {
    pub dim: usize,
    pub generators: Vec<Vec<i64>>,
}

/// A ray of a strongly convex cone with its primitive generator.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ray {
    pub index: usize,
    pub generator: Vec<i64>,
}

/// Minimal generating set of the lattice points of a pointed cone.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Semigroup {
    pub ambient_dim: usize,
    pub hilbert_generators: Vec<Vec<i64>>,
}

impl Semigroup {
    /// `S1 x S2` inside `Z^(d1 + d2)`.
    pub fn product(&self, other: &Semigroup) -> Semigroup {
        let d = self.ambient_dim + other.ambient_dim;
        let mut gens: Vec<Vec<i64>> = self.hilbert_generators.iter().map(|g| embed(g, 0, d)).collect();
        gens.extend(other.hilbert_generators.iter().map(|g| embed(g, self.ambient_dim, d)));
        gens.sort_by(|a, b| lex_desc(a, b));
        Semigroup { ambient_dim: d, hilbert_generators: gens }
    }
}

impl Cone {
    pub fn new(dim: usize, generators: Vec<Vec<i64>>) -> Result<Cone, ConeError> {
        for (index, g) in generators.iter().enumerate() {
            if g.len() != dim {
                return Err(ConeError::BadGenerator { index, got: g.len(), dim });
            }
        }
        let mut gens: Vec<Vec<i64>> =
            generators.into_iter().filter(|g| g.iter().any(|&x| x != 0)).map(|g| primitive_i64(&g)).collect();
        gens.sort_by(|a, b| lex_desc(a, b));
        gens.dedup();
        Ok(Cone { dim, generators: gens, cache: OnceLock::new() })
    }

    pub fn from_json(j: &ConeJson) -> Result<Cone, ConeError> {
        Cone::new(j.dim, j.generators.clone())
    }

    pub fn to_json(&self) -> ConeJson {
        ConeJson { dim: self.dim, generators: self.generators.clone() }
    }

    /// The positive orthant `Cone(e_1, ..., e_d)`.
    pub fn orthant(dim: usize) -> Cone {
        let gens = (0..dim).map(|i| unit(i, dim)).collect();
        Cone::new(dim, gens).expect("unit vectors have the right length")
    }

    /// `{0} ⊆ R^dim`.
    pub fn zero(dim: usize) -> Cone {
        Cone::new(dim, vec![]).expect("empty generator list")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[Vec<i64>] {
        &self.generators
    }

    /// Inequality description, computed once.
    pub fn halfspaces(&self) -> &Halfspaces {
        self.cache.get_or_init(|| {
            let dd = double_description(self.dim, &big_rows(&self.generators));
            Halfspaces {
                normals: small_rows(&dd.rays).expect("facet normals fit in 64 bits"),
                equations: small_rows(&dd.lineality).expect("equations fit in 64 bits"),
            }
        })
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        self.halfspaces().contains(v)
    }

    pub fn dual_cone(&self) -> Cone {
        let h = self.halfspaces();
        let mut gens = h.normals.clone();
        for e in &h.equations {
            gens.push(e.clone());
            gens.push(e.iter().map(|x| -x).collect());
        }
        Cone::new(self.dim, gens).expect("dual generators have the ambient dimension")
    }

    /// Extreme rays and a lineality basis of the cone itself.
    fn vertex_description(&self) -> Polyhedral {
        let h = self.halfspaces();
        let mut ineqs = big_rows(&h.normals);
        for e in big_rows(&h.equations) {
            ineqs.push(e.iter().map(|x| -x).collect());
            ineqs.push(e);
        }
        double_description(self.dim, &ineqs)
    }

    pub fn is_strongly_convex(&self) -> bool {
        self.vertex_description().lineality.is_empty()
    }

    /// Edges of the cone with their primitive generators, in decreasing
    /// lexicographic order.
    pub fn rays(&self) -> Result<Vec<Ray>, ConeError> {
        let vd = self.vertex_description();
        if !vd.lineality.is_empty() {
            return Err(ConeError::NotStronglyConvex);
        }
        let mut gens = small_rows(&vd.rays).ok_or(ConeError::Overflow)?;
        gens.sort_by(|a, b| lex_desc(a, b));
        gens.dedup();
        Ok(gens.into_iter().enumerate().map(|(index, generator)| Ray { index, generator }).collect())
    }

    /// `c1 x c2 ⊆ R^(d1 + d2)`.
    pub fn product(&self, other: &Cone) -> Cone {
        let d = self.dim + other.dim;
        let mut gens: Vec<Vec<i64>> = self.generators.iter().map(|g| embed(g, 0, d)).collect();
        gens.extend(other.generators.iter().map(|g| embed(g, self.dim, d)));
        Cone::new(d, gens).expect("embedded generators have the product dimension")
    }

    /// Minimal generators of the semigroup `C ∩ Z^d`.
    pub fn hilbert_basis(&self) -> Result<Semigroup, ConeError> {
        let rays = match self.rays() {
            Ok(r) => r,
            Err(ConeError::NotStronglyConvex) => return Err(ConeError::NotPointed),
            Err(e) => return Err(e),
        };
        let gens = hilbert_basis_of(self.halfspaces(), rays.iter().map(|r| r.generator.clone()).collect(), self.dim);
        Ok(Semigroup { ambient_dim: self.dim, hilbert_generators: gens })
    }
}

fn hilbert_basis_of(h: &Halfspaces, rays: Vec<Vec<i64>>, dim: usize) -> Vec<Vec<i64>> {
    if rays.is_empty() {
        return vec![];
    }
    // degree: sum of facet normals, positive on C \ {0} when C is pointed
    let mut grading = vec![0i64; dim];
    for n in &h.normals {
        for (g, x) in grading.iter_mut().zip(n) {
            *g += x;
        }
    }
    let (lo, hi) = zonotope_box(&rays, dim);
    let mut cands = par::box_points(&lo, &hi, |p| p.iter().any(|&x| x != 0) && h.contains(p));
    cands.sort_by(|a, b| dot(&grading, a).cmp(&dot(&grading, b)).then_with(|| lex_desc(a, b)));

    let mut basis: Vec<Vec<i64>> = Vec::new();
    let mut i = 0;
    while i < cands.len() {
        let deg = dot(&grading, &cands[i]);
        let j = i + cands[i..].iter().take_while(|c| dot(&grading, c) == deg).count();
        let layer = &cands[i..j];
        let found = par::filter_map(layer, |x| {
            let reducible = basis.iter().any(|b| h.contains(&sub(x, b)));
            (!reducible).then(|| x.clone())
        });
        basis.extend(found);
        i = j;
    }
    basis.sort_by(|a, b| lex_desc(a, b));
    basis
}

/// Bounding box of `{sum t_i r_i : 0 <= t_i <= 1}`.
pub(crate) fn zonotope_box(rays: &[Vec<i64>], dim: usize) -> (Vec<i64>, Vec<i64>) {
    let mut lo = vec![0i64; dim];
    let mut hi = vec![0i64; dim];
    for r in rays {
        for k in 0..dim {
            lo[k] += r[k].min(0);
            hi[k] += r[k].max(0);
        }
    }
    (lo, hi)
}

/// Extreme rays and lineality basis of a cone given by inequalities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Polyhedral {
    pub rays: Vec<Vec<BigInt>>,
    pub lineality: Vec<Vec<BigInt>>,
}

struct DdRay {
    v: Vec<BigInt>,
    zeros: Vec<u64>,
}

fn bit_set(bits: &mut [u64], i: usize) {
    bits[i / 64] |= 1 << (i % 64);
}

fn is_subset(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x & !y == 0)
}

/// Double description of `{x : <a, x> >= 0 for a in ineqs} ⊆ R^dim`.
pub(crate) fn double_description(dim: usize, ineqs: &[Vec<BigInt>]) -> Polyhedral {
    let words = ineqs.len().div_ceil(64).max(1);
    let mut lineality: Vec<Vec<BigInt>> =
        (0..dim).map(|i| (0..dim).map(|j| BigInt::from((i == j) as i64)).collect()).collect();
    let mut rays: Vec<DdRay> = Vec::new();

    for (k, a) in ineqs.iter().enumerate() {
        if a.iter().all(Zero::is_zero) {
            for r in &mut rays {
                bit_set(&mut r.zeros, k);
            }
            continue;
        }
        if let Some(p) = lineality.iter().position(|l| !big_dot(a, l).is_zero()) {
            let mut pivot = lineality.swap_remove(p);
            let mut ap = big_dot(a, &pivot);
            if ap.is_negative() {
                pivot.iter_mut().for_each(|x| *x = -&*x);
                ap = -ap;
            }
            for l in &mut lineality {
                let al = big_dot(a, l);
                if !al.is_zero() {
                    *l = primitive_big(&combine(&ap, l, &al, &pivot), true);
                }
            }
            for r in &mut rays {
                let ar = big_dot(a, &r.v);
                if !ar.is_zero() {
                    r.v = primitive_big(&combine(&ap, &r.v, &ar, &pivot), false);
                }
                bit_set(&mut r.zeros, k);
            }
            let mut zeros = vec![0u64; words];
            for j in 0..k {
                bit_set(&mut zeros, j);
            }
            rays.push(DdRay { v: primitive_big(&pivot, false), zeros });
            continue;
        }

        let vals: Vec<BigInt> = rays.iter().map(|r| big_dot(a, &r.v)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_negative()).collect();
        if neg.is_empty() {
            for (r, v) in rays.iter_mut().zip(&vals) {
                if v.is_zero() {
                    bit_set(&mut r.zeros, k);
                }
            }
            continue;
        }
        let pointed_dim = dim - lineality.len();
        let mut fresh = Vec::new();
        for &p in &pos {
            for &n in &neg {
                let inter: Vec<u64> = rays[p].zeros.iter().zip(&rays[n].zeros).map(|(x, y)| x & y).collect();
                let common: usize = inter.iter().map(|w| w.count_ones() as usize).sum();
                if common + 2 < pointed_dim {
                    continue;
                }
                let adjacent = rays.iter().enumerate().all(|(i, r)| i == p || i == n || !is_subset(&inter, &r.zeros));
                if !adjacent {
                    continue;
                }
                let w = combine(&vals[p], &rays[n].v, &vals[n], &rays[p].v);
                let mut zeros = inter;
                bit_set(&mut zeros, k);
                fresh.push(DdRay { v: primitive_big(&w, false), zeros });
            }
        }
        let mut kept: Vec<DdRay> = Vec::new();
        for (i, mut r) in rays.into_iter().enumerate() {
            if vals[i].is_negative() {
                continue;
            }
            if vals[i].is_zero() {
                bit_set(&mut r.zeros, k);
            }
            kept.push(r);
        }
        kept.extend(fresh);
        rays = kept;
    }
    let mut out: Vec<Vec<BigInt>> = rays.into_iter().map(|r| r.v).collect();
    out.sort();
    out.dedup();
    Polyhedral { rays: out, lineality }
}

/// `s * u - t * v`
fn combine(s: &BigInt, u: &[BigInt], t: &BigInt, v: &[BigInt]) -> Vec<BigInt> {
    u.iter().zip(v).map(|(x, y)| s * x - t * y).collect()
}

fn primitive_big(v: &[BigInt], normalize_sign: bool) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return v.to_vec();
    }
    let mut out: Vec<BigInt> = v.iter().map(|x| x / &g).collect();
    if normalize_sign && out.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
        out.iter_mut().for_each(|x| *x = -&*x);
    }
    out
}

pub(crate) fn big_dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn big_rows(rows: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

pub(crate) fn small_rows(rows: &[Vec<BigInt>]) -> Option<Vec<Vec<i64>>> {
    rows.iter().map(|r| r.iter().map(ToPrimitive::to_i64).collect()).collect()
}

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn sub(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub(crate) fn add(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub(crate) fn unit(i: usize, dim: usize) -> Vec<i64> {
    (0..dim).map(|j| (i == j) as i64).collect()
}

pub(crate) fn embed(v: &[i64], offset: usize, dim: usize) -> Vec<i64> {
    let mut out = vec![0; dim];
    out[offset..offset + v.len()].copy_from_slice(v);
    out
}

pub fn primitive_i64(v: &[i64]) -> Vec<i64> {
    let g = v.iter().fold(0i64, |acc, &x| acc.gcd(&x));
    if g == 0 {
        v.to_vec()
    } else {
        v.iter().map(|x| x / g).collect()
    }
}

/// Decreasing lexicographic order, the canonical order for rays and
/// generator lists.
pub fn lex_desc(a: &[i64], b: &[i64]) -> Ordering {
    b.cmp(a)
}
