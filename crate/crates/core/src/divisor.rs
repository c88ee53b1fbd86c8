//! Torus-invariant divisors on normal affine toric varieties: class groups,
//! canonical classes, divisorial modules `O(D)` and the self-dual class.
//!
//! Conventions. A variety is given by a full-dimensional strongly convex cone
//! `σ ⊆ N_R`; its rays `u_ρ` are listed in decreasing lexicographic order
//! (products list the rays of each factor in turn). `D_i` is the divisor of
//! the `i`-th ray. Class coordinates come from the cokernel of the pairing
//! matrix `P` (rows `u_ρ`): the free part is the row Hermite basis of
//! `{y : y P = 0}`, each row negated if needed so that the canonical class has
//! non-negative coordinates; torsion residues come from the Smith form.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cone::{dot, double_description, embed, primitive_i64, sub, zonotope_box, Cone, ConeError, Semigroup};
use crate::par;
use crate::toric::{character_monomial, product_ring, ToricError, ToricPresentation};
use crate::zlinalg::{kernel_basis, row_hermite_normal_form, smith_normal_form, solve_integer, IntMatrix};

#[derive(Debug, Error)]
pub enum DivisorError {
    #[error(transparent)]
    Cone(#[from] ConeError),
    #[error("the cone is not full-dimensional, so the dual cone is not pointed")]
    NotFullDimensional,
    #[error("object belongs to variety {got}, expected {expected}")]
    VarietyMismatch { expected: String, got: String },
    #[error("expected {expected} coefficients, got {got}")]
    CoefficientCount { expected: usize, got: usize },
    #[error("class has {expected} free and {expected_torsion} torsion coordinates")]
    ClassShape { expected: usize, expected_torsion: usize },
    #[error("no class c satisfies 2c = canonical class")]
    NoSolution,
    #[error("2c = canonical class has {count} solutions")]
    NonUnique { count: u64 },
    #[error("{0}")]
    Unsupported(String),
    #[error("graded quotient did not stabilize by degree {0}")]
    NoCertificate(i64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FactorKind {
    Steinberg,
    AffineLine,
    A1,
    Point,
    General,
}

/// A normal affine toric variety `U_σ`.
#[derive(Debug, Clone)]
pub struct ToricVariety {
    id: String,
    kind: FactorKind,
    dim: usize,
    cone: Cone,
    rays: Vec<Vec<i64>>,
    dual_rays: Vec<Vec<i64>>,
    semigroup: Semigroup,
    characters: Vec<String>,
    /// Atomic factors of a product, empty for an atomic variety.
    factors: Vec<ToricVariety>,
    class_group: OnceLock<ClassGroup>,
}

/// The cone `σ_S = Cone(e_1, e_2, e_3, 2e_1 + 2e_2 - e_3)`.
pub fn steinberg_cone() -> Cone {
    Cone::new(3, vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1], vec![2, 2, -1]]).expect("fixed cone")
}

impl ToricVariety {
    pub fn from_cone(cone: Cone, id: impl Into<String>) -> Result<ToricVariety, DivisorError> {
        Self::atomic(cone, id.into(), FactorKind::General, None)
    }

    fn atomic(
        cone: Cone,
        id: String,
        kind: FactorKind,
        characters: Option<Vec<String>>,
    ) -> Result<ToricVariety, DivisorError> {
        let dim = cone.dim();
        if !cone.halfspaces().equations.is_empty() {
            return Err(DivisorError::NotFullDimensional);
        }
        let rays: Vec<Vec<i64>> = cone.rays()?.into_iter().map(|r| r.generator).collect();
        let dual = cone.dual_cone();
        let dual_rays = dual.rays()?.into_iter().map(|r| r.generator).collect();
        let semigroup = dual.hilbert_basis()?;
        let characters = characters.unwrap_or_else(|| (1..=dim).map(|i| format!("t{i}")).collect());
        Ok(ToricVariety {
            id,
            kind,
            dim,
            cone,
            rays,
            dual_rays,
            semigroup,
            characters,
            factors: vec![],
            class_group: OnceLock::new(),
        })
    }

    /// `Spec F[x, xz, xz^2, y, yz, yz^2]`, the cone over `P^1 x P^1`
    /// embedded by `O(2) ⊠ O(1)`.
    pub fn steinberg() -> ToricVariety {
        let names = ["x", "y", "z"].map(String::from).to_vec();
        Self::atomic(steinberg_cone(), "@S".into(), FactorKind::Steinberg, Some(names)).expect("fixed cone")
    }

    pub fn affine_line() -> ToricVariety {
        Self::atomic(Cone::orthant(1), "@A".into(), FactorKind::AffineLine, Some(vec!["w".into()])).expect("fixed cone")
    }

    /// The `A_1` surface singularity `Cone((1,0), (1,2))`.
    pub fn a1() -> ToricVariety {
        let cone = Cone::new(2, vec![vec![1, 0], vec![1, 2]]).expect("fixed cone");
        Self::atomic(cone, "@A1".into(), FactorKind::A1, None).expect("fixed cone")
    }

    pub fn point() -> ToricVariety {
        ToricVariety {
            id: "@S^0*A^0".into(),
            kind: FactorKind::Point,
            dim: 0,
            cone: Cone::zero(0),
            rays: vec![],
            dual_rays: vec![],
            semigroup: Semigroup { ambient_dim: 0, hilbert_generators: vec![] },
            characters: vec![],
            factors: vec![],
            class_group: OnceLock::new(),
        }
    }

    fn atoms(&self) -> Vec<ToricVariety> {
        match (self.kind, self.factors.is_empty()) {
            (FactorKind::Point, true) => vec![],
            (_, true) => vec![self.clone()],
            _ => self.factors.clone(),
        }
    }

    fn renamed(mut self, characters: Vec<String>) -> ToricVariety {
        self.characters = characters;
        self
    }

    /// `X x Y`, with `σ_{X x Y} = σ_X x σ_Y`.
    pub fn product(&self, other: &ToricVariety) -> ToricVariety {
        let id = format!("{}*{}", self.id, other.id);
        Self::from_atoms(self.atoms().into_iter().chain(other.atoms()).collect(), id)
    }

    fn from_atoms(atoms: Vec<ToricVariety>, id: String) -> ToricVariety {
        if atoms.is_empty() {
            return ToricVariety { id, ..ToricVariety::point() };
        }
        if atoms.len() == 1 {
            return ToricVariety { id, class_group: OnceLock::new(), ..atoms[0].clone() };
        }
        let dim: usize = atoms.iter().map(|a| a.dim).sum();
        let mut cone = Cone::zero(0);
        let mut semigroup = Semigroup { ambient_dim: 0, hilbert_generators: vec![] };
        let (mut rays, mut dual_rays, mut characters) = (vec![], vec![], vec![]);
        let mut offset = 0;
        for a in &atoms {
            cone = cone.product(&a.cone);
            semigroup = semigroup.product(&a.semigroup);
            rays.extend(a.rays.iter().map(|r| embed(r, offset, dim)));
            dual_rays.extend(a.dual_rays.iter().map(|r| embed(r, offset, dim)));
            characters.extend(a.characters.iter().cloned());
            offset += a.dim;
        }
        ToricVariety {
            id,
            kind: FactorKind::General,
            dim,
            cone,
            rays,
            dual_rays,
            semigroup,
            characters,
            factors: atoms,
            class_group: OnceLock::new(),
        }
    }

    /// `𝒮^k x A^s` with characters `x_j, y_j, z_j` and `w_i`.
    pub fn power_product(k: usize, s: usize) -> ToricVariety {
        if (k, s) == (1, 0) {
            return ToricVariety::steinberg();
        }
        let suffix = |j: usize, n: usize| if n == 1 { String::new() } else { j.to_string() };
        let mut atoms = Vec::with_capacity(k + s);
        for j in 1..=k {
            let names = ["x", "y", "z"].iter().map(|c| format!("{c}{}", suffix(j, k))).collect();
            atoms.push(ToricVariety::steinberg().renamed(names));
        }
        for i in 1..=s {
            atoms.push(ToricVariety::affine_line().renamed(vec![format!("w{}", suffix(i, s))]));
        }
        Self::from_atoms(atoms, format!("@S^{k}*A^{s}"))
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn kind(&self) -> FactorKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn cone(&self) -> &Cone {
        &self.cone
    }

    pub fn rays(&self) -> &[Vec<i64>] {
        &self.rays
    }

    pub fn dual_rays(&self) -> &[Vec<i64>] {
        &self.dual_rays
    }

    pub fn semigroup(&self) -> &Semigroup {
        &self.semigroup
    }

    pub fn characters(&self) -> &[String] {
        &self.characters
    }

    pub fn factors(&self) -> Vec<ToricVariety> {
        self.atoms()
    }

    /// Counts of `𝒮` and `A^1` factors when the variety is `𝒮^k x A^s` with
    /// the factors in that order.
    pub fn steinberg_shape(&self) -> Option<(usize, usize)> {
        let atoms = self.atoms();
        let k = atoms.iter().take_while(|a| a.kind == FactorKind::Steinberg).count();
        atoms[k..].iter().all(|a| a.kind == FactorKind::AffineLine).then_some((k, atoms.len() - k))
    }

    /// The binomial presentation, for `𝒮^k x A^s`.
    pub fn presentation(&self, characteristic: u64) -> Option<Result<ToricPresentation, ToricError>> {
        let (k, s) = self.steinberg_shape()?;
        (k + s > 0).then(|| product_ring(k, s, characteristic))
    }

    /// Whether `m` lies in `σ^∨`.
    pub fn in_semigroup(&self, m: &[i64]) -> bool {
        self.rays.iter().all(|u| dot(m, u) >= 0)
    }

    pub fn monomial(&self, m: &[i64]) -> String {
        character_monomial(m, &self.characters)
    }

    pub fn divisor(&self, coeffs: Vec<i64>) -> Result<TorusDivisor, DivisorError> {
        if coeffs.len() != self.rays.len() {
            return Err(DivisorError::CoefficientCount { expected: self.rays.len(), got: coeffs.len() });
        }
        Ok(TorusDivisor { variety: self.id.clone(), coeffs })
    }

    /// `D_i`.
    pub fn prime_divisor(&self, i: usize) -> TorusDivisor {
        let coeffs = (0..self.rays.len()).map(|j| (i == j) as i64).collect();
        TorusDivisor { variety: self.id.clone(), coeffs }
    }

    fn check(&self, d: &TorusDivisor) -> Result<(), DivisorError> {
        if d.variety != self.id {
            return Err(DivisorError::VarietyMismatch { expected: self.id.clone(), got: d.variety.clone() });
        }
        if d.coeffs.len() != self.rays.len() {
            return Err(DivisorError::CoefficientCount { expected: self.rays.len(), got: d.coeffs.len() });
        }
        Ok(())
    }
}

/// `Σ a_ρ D_ρ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TorusDivisor {
    pub variety: String,
    pub coeffs: Vec<i64>,
}

impl TorusDivisor {
    pub fn add(&self, other: &TorusDivisor) -> TorusDivisor {
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        TorusDivisor { variety: self.variety.clone(), coeffs }
    }

    pub fn scale(&self, k: i64) -> TorusDivisor {
        TorusDivisor { variety: self.variety.clone(), coeffs: self.coeffs.iter().map(|a| a * k).collect() }
    }

    pub fn neg(&self) -> TorusDivisor {
        self.scale(-1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&a| a == 0)
    }
}

/// Coordinates in `Z^free (+) (+)_i Z/t_i`, torsion entries reduced into
/// `[0, t_i)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DivisorClass {
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub variety: String,
    pub free: Vec<i64>,
    pub torsion: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassGroup {
    pub variety: String,
    pub free_rank: usize,
    pub torsion: Vec<i64>,
    free_rows: Vec<Vec<i64>>,
    torsion_rows: Vec<Vec<i64>>,
}

/// JSON summary `{"free": r, "torsion": [t_1, ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassGroupJson {
    pub free: usize,
    pub torsion: Vec<i64>,
}

fn big_to_i64(x: &BigInt) -> i64 {
    x.to_i64().expect("class group data fits in 64 bits")
}

impl ClassGroup {
    fn compute(v: &ToricVariety) -> ClassGroup {
        let n = v.rays.len();
        if n == 0 {
            return ClassGroup {
                variety: v.id.clone(),
                free_rank: 0,
                torsion: vec![],
                free_rows: vec![],
                torsion_rows: vec![],
            };
        }
        let p = IntMatrix::from_rows(v.dim, &v.rays).expect("rays have the ambient dimension");
        let snf = smith_normal_form(&p);
        let mut torsion = Vec::new();
        let mut torsion_rows = Vec::new();
        for (i, d) in snf.invariant_factors.iter().enumerate() {
            if !d.is_zero() && d.abs() > BigInt::from(1) {
                torsion.push(big_to_i64(&d.abs()));
                torsion_rows.push(snf.u.row(i).iter().map(big_to_i64).collect());
            }
        }
        let left_kernel = row_hermite_normal_form(&kernel_basis(&p.transpose()).transpose());
        let mut free_rows: Vec<Vec<i64>> =
            (0..left_kernel.rows()).map(|i| left_kernel.row(i).iter().map(big_to_i64).collect()).collect();
        for row in &mut free_rows {
            let canonical: i64 = -row.iter().sum::<i64>();
            if canonical < 0 {
                row.iter_mut().for_each(|x| *x = -*x);
            }
        }
        ClassGroup { variety: v.id.clone(), free_rank: free_rows.len(), torsion, free_rows, torsion_rows }
    }

    pub fn summary(&self) -> ClassGroupJson {
        ClassGroupJson { free: self.free_rank, torsion: self.torsion.clone() }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// The quotient map `Div_T -> Cl`.
    pub fn project(&self, d: &TorusDivisor) -> Result<DivisorClass, DivisorError> {
        if d.variety != self.variety {
            return Err(DivisorError::VarietyMismatch { expected: self.variety.clone(), got: d.variety.clone() });
        }
        Ok(self.project_coeffs(&d.coeffs))
    }

    pub fn project_coeffs(&self, coeffs: &[i64]) -> DivisorClass {
        let free = self.free_rows.iter().map(|r| dot(r, coeffs)).collect();
        let torsion = self.torsion_rows.iter().zip(&self.torsion).map(|(r, t)| dot(r, coeffs).rem_euclid(*t)).collect();
        DivisorClass { variety: self.variety.clone(), free, torsion }
    }

    pub fn zero(&self) -> DivisorClass {
        DivisorClass {
            variety: self.variety.clone(),
            free: vec![0; self.free_rank],
            torsion: vec![0; self.torsion.len()],
        }
    }

    fn check(&self, c: &DivisorClass) -> Result<(), DivisorError> {
        if c.variety != self.variety {
            return Err(DivisorError::VarietyMismatch { expected: self.variety.clone(), got: c.variety.clone() });
        }
        if c.free.len() != self.free_rank || c.torsion.len() != self.torsion.len() {
            return Err(DivisorError::ClassShape { expected: self.free_rank, expected_torsion: self.torsion.len() });
        }
        Ok(())
    }

    pub fn add(&self, a: &DivisorClass, b: &DivisorClass) -> Result<DivisorClass, DivisorError> {
        self.check(a)?;
        self.check(b)?;
        let free = a.free.iter().zip(&b.free).map(|(x, y)| x + y).collect();
        let torsion =
            a.torsion.iter().zip(&b.torsion).zip(&self.torsion).map(|((x, y), t)| (x + y).rem_euclid(*t)).collect();
        Ok(DivisorClass { variety: self.variety.clone(), free, torsion })
    }

    pub fn neg(&self, a: &DivisorClass) -> Result<DivisorClass, DivisorError> {
        self.check(a)?;
        let free = a.free.iter().map(|x| -x).collect();
        let torsion = a.torsion.iter().zip(&self.torsion).map(|(x, t)| (-x).rem_euclid(*t)).collect();
        Ok(DivisorClass { variety: self.variety.clone(), free, torsion })
    }

    /// A divisor with the given class.
    pub fn representative(&self, c: &DivisorClass) -> Result<TorusDivisor, DivisorError> {
        self.check(c)?;
        let n = self.free_rows.first().or(self.torsion_rows.first()).map_or(0, Vec::len);
        let (r, t) = (self.free_rank, self.torsion.len());
        if r + t == 0 {
            return Ok(TorusDivisor { variety: self.variety.clone(), coeffs: vec![0; n] });
        }
        // [free_rows 0; torsion_rows diag(t)] (a, q) = (free, torsion)
        let mut a = IntMatrix::zeros(r + t, n + t);
        for (i, row) in self.free_rows.iter().chain(&self.torsion_rows).enumerate() {
            for (j, x) in row.iter().enumerate() {
                a.set(i, j, BigInt::from(*x));
            }
        }
        for (i, ti) in self.torsion.iter().enumerate() {
            a.set(r + i, n + i, BigInt::from(*ti));
        }
        let rhs: Vec<BigInt> = c.free.iter().chain(&c.torsion).map(|&x| BigInt::from(x)).collect();
        let x = solve_integer(&a, &rhs).expect("the projection is surjective");
        Ok(TorusDivisor { variety: self.variety.clone(), coeffs: x[..n].iter().map(big_to_i64).collect() })
    }
}

/// `div(χ^m) = Σ <m, u_ρ> D_ρ`.
pub fn div_of_character(v: &ToricVariety, m: &[i64]) -> TorusDivisor {
    assert_eq!(m.len(), v.dim, "character has the wrong length");
    TorusDivisor { variety: v.id.clone(), coeffs: v.rays.iter().map(|u| dot(m, u)).collect() }
}

pub fn class_group(v: &ToricVariety) -> &ClassGroup {
    v.class_group.get_or_init(|| ClassGroup::compute(v))
}

/// `K = -Σ D_ρ`, so that `ω ≅ O(K)`.
pub fn canonical_divisor(v: &ToricVariety) -> TorusDivisor {
    TorusDivisor { variety: v.id.clone(), coeffs: vec![-1; v.rays.len()] }
}

pub fn canonical_class(v: &ToricVariety) -> DivisorClass {
    class_group(v).project_coeffs(&canonical_divisor(v).coeffs)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassOp {
    /// `[M] + [N]`
    Add,
    /// `[M*] = [ω] - [M]`; the second operand is ignored.
    Dual,
}

pub fn class_arithmetic(
    v: &ToricVariety,
    a: &DivisorClass,
    b: &DivisorClass,
    op: ClassOp,
) -> Result<DivisorClass, DivisorError> {
    let cg = class_group(v);
    match op {
        ClassOp::Add => cg.add(a, b),
        ClassOp::Dual => cg.add(&canonical_class(v), &cg.neg(a)?),
    }
}

/// The class `c` with `2c = [ω]`, when it exists and is unique.
pub fn half_canonical(v: &ToricVariety) -> Result<DivisorClass, DivisorError> {
    let cg = class_group(v);
    let k = canonical_class(v);
    let mut free = Vec::with_capacity(k.free.len());
    for x in &k.free {
        if x % 2 != 0 {
            return Err(DivisorError::NoSolution);
        }
        free.push(x / 2);
    }
    let mut count: u64 = 1;
    let mut torsion = Vec::with_capacity(k.torsion.len());
    for (x, t) in k.torsion.iter().zip(&cg.torsion) {
        if t % 2 == 1 {
            // 2 is invertible mod t
            torsion.push((x * (t + 1) / 2).rem_euclid(*t));
        } else if x % 2 == 0 {
            count *= 2;
            torsion.push(x / 2);
        } else {
            return Err(DivisorError::NoSolution);
        }
    }
    if count > 1 {
        return Err(DivisorError::NonUnique { count });
    }
    Ok(DivisorClass { variety: v.id.clone(), free, torsion })
}

/// `O(D)` as the monomials `χ^m` with `<m, u_ρ> >= -a_ρ` for every ray.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisorialModule {
    pub divisor: TorusDivisor,
    /// Minimal generators in increasing lexicographic order.
    pub generators: Vec<Vec<i64>>,
}

impl DivisorialModule {
    pub fn contains(&self, v: &ToricVariety, m: &[i64]) -> bool {
        v.rays.iter().zip(&self.divisor.coeffs).all(|(u, a)| dot(m, u) >= -a)
    }

    pub fn monomials(&self, v: &ToricVariety) -> Vec<String> {
        self.generators.iter().map(|m| v.monomial(m)).collect()
    }
}

pub fn module_generators(v: &ToricVariety, d: &TorusDivisor) -> Result<DivisorialModule, DivisorError> {
    module_generators_with_slack(v, d, 0)
}

/// As [`module_generators`], enumerating a box widened by `slack` in every
/// direction. The result does not depend on `slack`.
pub fn module_generators_with_slack(
    v: &ToricVariety,
    d: &TorusDivisor,
    slack: i64,
) -> Result<DivisorialModule, DivisorError> {
    v.check(d)?;
    let atoms = v.atoms();
    let generators = if atoms.len() <= 1 {
        atomic_generators(v, &d.coeffs, slack)
    } else {
        // O(D_1 ⊠ D_2) = O(D_1) ⊗ O(D_2): generators are concatenations
        let mut acc: Vec<Vec<i64>> = vec![vec![]];
        let mut offset = 0;
        for a in &atoms {
            let part = atomic_generators(a, &d.coeffs[offset..offset + a.rays.len()], slack);
            offset += a.rays.len();
            acc = acc.iter().flat_map(|g| part.iter().map(move |h| [g.as_slice(), h].concat())).collect();
        }
        acc.sort();
        acc
    };
    Ok(DivisorialModule { divisor: d.clone(), generators })
}

/// Minimal lattice points of `P_D = {m : <m, u_ρ> >= -a_ρ}` modulo `σ^∨ ∩ M`.
///
/// Writing `m = v + Σ λ_r r` with `v` in the convex hull of the vertices of
/// `P_D` and `r` over extreme rays of `σ^∨`, a minimal `m` has every
/// `λ_r < 1` (otherwise `m - r ∈ P_D`), so it lies in the vertex box widened
/// by the zonotope of the extreme rays.
fn atomic_generators(v: &ToricVariety, a: &[i64], slack: i64) -> Vec<Vec<i64>> {
    let d = v.dim;
    if d == 0 {
        return vec![vec![]];
    }
    // homogenization {(m, t) : <m, u> + a t >= 0, t >= 0}
    let mut ineqs: Vec<Vec<BigInt>> = v
        .rays
        .iter()
        .zip(a)
        .map(|(u, ai)| u.iter().chain(std::iter::once(ai)).map(|&x| BigInt::from(x)).collect())
        .collect();
    ineqs.push((0..=d).map(|i| BigInt::from((i == d) as i64)).collect());
    let hom = double_description(d + 1, &ineqs);
    let mut lo = vec![i64::MAX; d];
    let mut hi = vec![i64::MIN; d];
    for r in hom.rays.iter().filter(|r| r[d].is_positive()) {
        for i in 0..d {
            lo[i] = lo[i].min(big_to_i64(&r[i].div_floor(&r[d])));
            hi[i] = hi[i].max(big_to_i64(&Integer::div_ceil(&r[i], &r[d])));
        }
    }
    let (zlo, zhi) = zonotope_box(&v.dual_rays, d);
    for i in 0..d {
        lo[i] += zlo[i] - slack;
        hi[i] += zhi[i] + slack;
    }
    let inside = |m: &[i64]| v.rays.iter().zip(a).all(|(u, ai)| dot(m, u) >= -ai);
    let points = par::box_points(&lo, &hi, inside);
    let hb = &v.semigroup.hilbert_generators;
    let mut gens = par::filter_map(&points, |m| (!hb.iter().any(|h| inside(&sub(m, h)))).then(|| m.clone()));
    gens.sort();
    gens
}

/// Minimal elements of `set` under `m ≤ m'` iff `m' - m ∈ σ^∨`.
fn minimal_elements(v: &ToricVariety, set: &BTreeSet<Vec<i64>>) -> Vec<Vec<i64>> {
    let items: Vec<Vec<i64>> = set.iter().cloned().collect();
    par::filter_map(&items, |g| {
        let dominated = items.iter().any(|h| h != g && v.in_semigroup(&sub(g, h)));
        (!dominated).then(|| g.clone())
    })
}

/// Number of minimal generators of the self-dual module: `2^k` on
/// `𝒮^k x A^s`.
pub fn multiplicity(v: &ToricVariety) -> Result<usize, DivisorError> {
    let h = half_canonical(v)?;
    let d = class_group(v).representative(&h)?;
    Ok(module_generators(v, &d)?.generators.len())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceWitness {
    pub surjective: bool,
    /// `m` with `O(D_1) O(D_2) = χ^m O(K)`.
    pub witness: Option<Vec<i64>>,
    /// Minimal generators of the product `O(D_1) O(D_2)`.
    pub product_generators: Vec<Vec<i64>>,
    pub omega_generators: Vec<Vec<i64>>,
}

/// Searches for `m` with `O(D_1) · O(D_2) = χ^m · O(K)` at the level of
/// monomials, i.e. a surjection `O(D_1) ⊗ O(D_2) -> O(K)` given by
/// multiplication followed by `χ^{-m}`.
pub fn trace_surjectivity_witness(
    v: &ToricVariety,
    d1: &TorusDivisor,
    d2: &TorusDivisor,
    omega: &TorusDivisor,
) -> Result<TraceWitness, DivisorError> {
    let g1 = module_generators(v, d1)?.generators;
    let g2 = module_generators(v, d2)?.generators;
    let w = module_generators(v, omega)?.generators;
    let sums: BTreeSet<Vec<i64>> = g1.iter().flat_map(|a| g2.iter().map(move |b| crate::cone::add(a, b))).collect();
    let mut product = minimal_elements(v, &sums);
    product.sort();
    let witness = match (product.first(), w.first()) {
        (Some(p0), Some(w0)) if product.len() == w.len() => {
            let m = sub(p0, w0);
            product.iter().zip(&w).all(|(p, q)| sub(p, q) == m).then_some(m)
        }
        _ => None,
    };
    Ok(TraceWitness { surjective: witness.is_some(), witness, product_generators: product, omega_generators: w })
}

/// The system of parameters `(x, yz^2, y - xz^2)` of `𝒮` as character
/// polynomials.
pub fn steinberg_parameters() -> Vec<Vec<(Vec<i64>, i64)>> {
    vec![vec![(vec![1, 0, 0], 1)], vec![(vec![0, 1, 2], 1)], vec![(vec![0, 1, 0], 1), (vec![1, 0, 2], -1)]]
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct McmCertificate {
    pub generator_count: usize,
    /// `(n, dim_F (M / tM)_n)` for every degree examined.
    pub graded_lengths: Vec<(i64, usize)>,
    pub length: usize,
    /// `dim_F S / tS`.
    pub expected: usize,
    pub is_mcm: bool,
}

/// Positive grading `w`, the primitive sum of the rays of `σ`.
fn interior_grading(v: &ToricVariety) -> Vec<i64> {
    let mut w = vec![0i64; v.dim];
    for u in &v.rays {
        for (x, y) in w.iter_mut().zip(u) {
            *x += y;
        }
    }
    primitive_i64(&w)
}

/// `dim_F M/tM` degree by degree for the monomial module generated by
/// `gens`, where `t` is a homogeneous system of parameters. The walk stops
/// once a run of zero degrees past the top generator degree is seen; since
/// `M/tM` is generated in degrees up to the top generator degree and the
/// semigroup in degrees up to the window length, zeros persist from there.
fn graded_quotient_lengths(
    v: &ToricVariety,
    gens: &[Vec<i64>],
    params: &[Vec<(Vec<i64>, i64)>],
    p: u64,
) -> Result<Vec<(i64, usize)>, DivisorError> {
    let w = interior_grading(v);
    let deg = |m: &[i64]| dot(&w, m);
    let hb = &v.semigroup.hilbert_generators;
    let window = hb.iter().map(|h| deg(h)).max().unwrap_or(1).max(1);
    let param_deg: Vec<i64> = params.iter().map(|f| deg(&f[0].0)).collect();
    let lo = gens.iter().map(|g| deg(g)).min().unwrap_or(0);
    let top = gens.iter().map(|g| deg(g)).max().unwrap_or(0);
    let cap = top + 64;

    // semigroup slices S_k by dynamic programming on the degree
    let mut slices: Vec<BTreeSet<Vec<i64>>> = vec![BTreeSet::from([vec![0; v.dim]])];
    let slice = |slices: &mut Vec<BTreeSet<Vec<i64>>>, k: usize| {
        while slices.len() <= k {
            let j = slices.len() as i64;
            let mut next = BTreeSet::new();
            for h in hb {
                let dh = deg(h);
                if dh <= j {
                    for s in &slices[(j - dh) as usize] {
                        next.insert(crate::cone::add(s, h));
                    }
                }
            }
            slices.push(next);
        }
    };
    let piece = |slices: &mut Vec<BTreeSet<Vec<i64>>>, n: i64| -> BTreeMap<Vec<i64>, usize> {
        let mut set = BTreeSet::new();
        for g in gens {
            let k = n - deg(g);
            if k >= 0 {
                slice(slices, k as usize);
                set.extend(slices[k as usize].iter().map(|s| crate::cone::add(g, s)));
            }
        }
        set.into_iter().enumerate().map(|(i, m)| (m, i)).collect()
    };

    let mut out = Vec::new();
    let mut pieces: BTreeMap<i64, BTreeMap<Vec<i64>, usize>> = BTreeMap::new();
    let mut zero_run = 0;
    let mut n = lo;
    while n <= cap {
        let here = piece(&mut slices, n);
        let mut rows: Vec<Vec<u64>> = Vec::new();
        for (f, df) in params.iter().zip(&param_deg) {
            let src = pieces.entry(n - df).or_insert_with(|| piece(&mut slices, n - df)).clone();
            for m in src.keys() {
                let mut row = vec![0u64; here.len()];
                for (a, c) in f {
                    let idx = here[&crate::cone::add(m, a)];
                    row[idx] = (row[idx] + c.rem_euclid(p as i64) as u64) % p;
                }
                rows.push(row);
            }
        }
        let dim_n = here.len() - crate::polyring::rank_mod_p(rows, p);
        out.push((n, dim_n));
        pieces.insert(n, here);
        zero_run = if dim_n == 0 { zero_run + 1 } else { 0 };
        if n > top && zero_run >= window {
            return Ok(out);
        }
        n += 1;
    }
    Err(DivisorError::NoCertificate(cap))
}

/// Maximal Cohen–Macaulay test for `O(D)` on `𝒮`: a rank-one module `M` over
/// a Cohen–Macaulay domain is MCM iff `dim_F M/tM = dim_F S/tS` for a system
/// of parameters `t`.
pub fn steinberg_mcm_check(v: &ToricVariety, d: &TorusDivisor, p: u64) -> Result<McmCertificate, DivisorError> {
    if v.kind != FactorKind::Steinberg {
        return Err(DivisorError::Unsupported(format!("the MCM check needs the variety @S, got {}", v.id)));
    }
    let params = steinberg_parameters();
    let expected = graded_quotient_lengths(v, &[vec![0; 3]], &params, p)?.iter().map(|x| x.1).sum();
    let gens = module_generators(v, d)?.generators;
    let graded_lengths = graded_quotient_lengths(v, &gens, &params, p)?;
    let length = graded_lengths.iter().map(|x| x.1).sum();
    Ok(McmCertificate { generator_count: gens.len(), graded_lengths, length, expected, is_mcm: length == expected })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct McmScan {
    pub window: i64,
    pub gen_bound: usize,
    /// `(k, generator count)` for MCM modules `O(kD_0)` within the bound.
    pub candidates: Vec<(i64, usize)>,
    /// `(k, generator count, dim M/tM)` for modules within the bound that
    /// fail the MCM test.
    pub rejected: Vec<(i64, usize, usize)>,
}

/// Scans `O(kD_0)` for `|k| <= window`: keeps those with at most
/// `gen_bound` generators that are maximal Cohen–Macaulay. Classes of `𝒮` are
/// the `k [D_0]`.
pub fn enumerate_mcm_rank_one_candidates(
    v: &ToricVariety,
    gen_bound: usize,
    window: i64,
    p: u64,
) -> Result<McmScan, DivisorError> {
    if v.kind != FactorKind::Steinberg {
        return Err(DivisorError::Unsupported(format!("the MCM scan needs the variety @S, got {}", v.id)));
    }
    let ks: Vec<i64> = (-window..=window).collect();
    let results = par::map(&ks, |&k| -> Result<Option<(i64, McmCertificate)>, DivisorError> {
        let d = v.prime_divisor(0).scale(k);
        let count = module_generators(v, &d)?.generators.len();
        if count > gen_bound {
            return Ok(None);
        }
        Ok(Some((k, steinberg_mcm_check(v, &d, p)?)))
    });
    let mut scan = McmScan { window, gen_bound, candidates: vec![], rejected: vec![] };
    for r in results {
        if let Some((k, cert)) = r? {
            if cert.is_mcm {
                scan.candidates.push((k, cert.generator_count));
            } else {
                scan.rejected.push((k, cert.generator_count, cert.length));
            }
        }
    }
    Ok(scan)
}
