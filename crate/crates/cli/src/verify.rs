//! Reruns every explicit computation about the cone over `P^1 x P^1` and
//! its products and records expected against computed values.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use torica_core::cohomology::{check_danilov_hypothesis, h_dim_product, LineBundleOnP1Product};
use torica_core::cone::Cone;
use torica_core::divisor::{
    canonical_class, class_group, div_of_character, enumerate_mcm_rank_one_candidates, half_canonical,
    module_generators, multiplicity, trace_surjectivity_witness, ClassGroupJson, ToricVariety,
};
use torica_core::polyring::{
    groebner_basis, ideal_equal, ideal_sum, is_monomial_basis, is_regular_sequence, quotient_dimension, saturate,
    Ideal, Monomial, MonomialOrder, Polynomial, QuotientDimension,
};
use torica_core::toric::{
    product_ring, steinberg_phi, steinberg_ring_mod_l, toric_ideal, MonomialMap, STEINBERG_MINORS,
};
use torica_core::zlinalg::{kernel_basis, row_hermite_normal_form, IntMatrix};

use crate::error::CliError;

pub const REPORT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub check_id: String,
    pub expected: Value,
    pub got: Value,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub report_version: u32,
    pub field: u64,
    pub degree_bound: u32,
    pub passed: usize,
    pub failed: usize,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn failing(&self) -> Vec<String> {
        self.checks.iter().filter(|c| !c.pass).map(|c| c.check_id.clone()).collect()
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            if c.pass {
                out.push_str(&format!("PASS {}\n", c.check_id));
            } else {
                out.push_str(&format!("FAIL {}: expected {}, got {}\n", c.check_id, c.expected, c.got));
            }
        }
        out.push_str(&format!(
            "{} passed, {} failed (field {}, degree bound {})\n",
            self.passed, self.failed, self.field, self.degree_bound
        ));
        out
    }
}

struct Runner {
    checks: Vec<Check>,
}

impl Runner {
    fn check<T, F>(&mut self, id: &str, expected: T, compute: F)
    where
        T: Serialize + PartialEq,
        F: FnOnce() -> Result<T, CliError>,
    {
        let expected_json = serde_json::to_value(&expected).expect("expected values serialize");
        let (got, pass) = match compute() {
            Ok(got) => (serde_json::to_value(&got).expect("computed values serialize"), got == expected),
            Err(e) => (e.to_json(), false),
        };
        self.checks.push(Check { check_id: id.to_string(), expected: expected_json, got, pass });
    }
}

fn gens_of(v: &ToricVariety, coeffs: Vec<i64>) -> Result<BTreeSet<String>, CliError> {
    let d = v.divisor(coeffs)?;
    Ok(module_generators(v, &d)?.monomials(v).into_iter().collect())
}

fn strings(items: &[&str]) -> BTreeSet<String> {
    items.iter().map(|s| s.to_string()).collect()
}

fn vectors<const N: usize>(items: &[[i64; N]]) -> BTreeSet<Vec<i64>> {
    items.iter().map(|v| v.to_vec()).collect()
}

/// Runs all checks over `F_p` with the given degree bound for the
/// regular-sequence certificate.
pub fn run_checks(p: u64, degree_bound: u32) -> Report {
    let mut r = Runner { checks: Vec::new() };
    let s = ToricVariety::steinberg();

    r.check("toric.saturation_equals_minors", true, || {
        let pres = steinberg_ring_mod_l(p)?;
        let ring = pres.ring().clone();
        let il = Ideal::parse(&ring, &["A*Z - C*X", "A*X - C*Y", "A*X - B*Z"], MonomialOrder::Grevlex)?;
        let all = Polynomial::parse(&ring, "A*B*C*X*Y*Z")?;
        let minors = Ideal::parse(&ring, &STEINBERG_MINORS, MonomialOrder::Grevlex)?;
        Ok(ideal_equal(&saturate(&il, &all), &minors))
    });
    r.check("toric.ideal_of_phi", (6, 6, true), || {
        let map = MonomialMap::new(steinberg_phi(), ["A", "B", "C", "X", "Y", "Z"].map(String::from).to_vec())?;
        let pres = toric_ideal(&map, p)?;
        let minors = steinberg_ring_mod_l(p)?.ideal;
        let reduced = groebner_basis(&pres.ideal).generators().len();
        Ok((pres.ideal.generators().len(), reduced, ideal_equal(&pres.ideal, &minors)))
    });
    r.check("zlinalg.kernel_of_phi", true, || {
        let ells = IntMatrix::from_rows(6, &[[1, 0, -1, -1, 0, 1], [1, 0, -1, 1, -1, 0], [1, -1, 0, 1, 0, -1]])
            .map_err(|e| CliError::Usage(e.to_string()))?;
        let k = kernel_basis(&steinberg_phi());
        Ok(row_hermite_normal_form(&k.transpose()) == row_hermite_normal_form(&ells))
    });

    let dual_s = || Cone::new(3, vec![vec![1, 0, 0], vec![0, 1, 0], vec![1, 0, 2], vec![0, 1, 2]]);
    r.check("cone.dual_rays", vectors(&[[1, 0, 0], [0, 1, 0], [0, 0, 1], [2, 2, -1]]), || {
        Ok(dual_s()?.dual_cone().rays()?.into_iter().map(|ray| ray.generator).collect())
    });
    r.check("cone.hilbert_basis", vectors(&[[1, 0, 1], [1, 0, 2], [1, 0, 0], [0, 1, 1], [0, 1, 2], [0, 1, 0]]), || {
        Ok(dual_s()?.hilbert_basis()?.hilbert_generators.into_iter().collect())
    });
    r.check("cone.product_rays", 8, || {
        let sigma = dual_s()?.dual_cone();
        Ok(sigma.product(&sigma).rays()?.len())
    });

    r.check("divisor.characters", vec![vec![2, 1, 0, 0], vec![2, 0, 1, 0], vec![-1, 0, 0, 1]], || {
        Ok([[1, 0, 0], [0, 1, 0], [0, 0, 1]].iter().map(|m| div_of_character(&s, m).coeffs).collect())
    });
    r.check("class_group.steinberg", ClassGroupJson { free: 1, torsion: vec![] }, || Ok(class_group(&s).summary()));
    r.check("class_group.prime_divisors", vec![1, -2, -2, 1], || {
        let cg = class_group(&s);
        (0..4).map(|i| Ok(cg.project(&s.prime_divisor(i))?.free[0])).collect()
    });
    r.check("canonical.steinberg", vec![2], || Ok(canonical_class(&s).free));
    r.check("half_canonical.steinberg", vec![1], || Ok(half_canonical(&s)?.free));
    r.check("module.self_dual", (2, strings(&["x*z", "x*z^2"])), || {
        let n = module_generators(&s, &s.prime_divisor(0))?.generators.len();
        Ok((n, gens_of(&s, vec![0, -1, 0, -1])?))
    });
    r.check("module.canonical", strings(&["x", "x*z", "x*z^2"]), || gens_of(&s, vec![0, -1, 0, 0]));
    r.check("trace.witness", Some(vec![1, 0, 2]), || {
        let rep = s.divisor(vec![0, -1, 0, -1])?;
        let omega = s.divisor(vec![0, -1, 0, 0])?;
        Ok(trace_surjectivity_witness(&s, &rep, &rep, &omega)?.witness)
    });

    let table = [(0, 0), (1, 0), (1, 2), (2, 0), (3, 1)];
    r.check("multiplicity.table", vec![1, 2, 2, 4, 8], || {
        table.iter().map(|&(k, s)| Ok(multiplicity(&ToricVariety::power_product(k, s))?)).collect()
    });
    r.check(
        "product.s2_a1",
        json!({"free_rank": 2, "canonical": [2, 2], "half_canonical": [1, 1], "multiplicity": 4}),
        || {
            let v = ToricVariety::power_product(2, 1);
            Ok(json!({
                "free_rank": class_group(&v).free_rank,
                "canonical": canonical_class(&v).free,
                "half_canonical": half_canonical(&v)?.free,
                "multiplicity": multiplicity(&v)?,
            }))
        },
    );
    r.check("product_ring.k2_s1", (13, 12, 7), || {
        let pres = product_ring(2, 1, p)?;
        Ok((pres.ring().nvars(), pres.ideal.generators().len(), pres.semigroup.ambient_dim))
    });

    r.check("mcm.five_modules", vec![(-1, 4), (0, 1), (1, 2), (2, 3), (3, 4)], || {
        Ok(enumerate_mcm_rank_one_candidates(&s, 4, 10, p)?.candidates)
    });
    r.check(
        "mcm.listed_generators",
        vec![
            strings(&["x*z", "x*z^2", "y*z", "y*z^2"]),
            strings(&["1"]),
            strings(&["x*z", "x*z^2"]),
            strings(&["x", "x*z", "x*z^2"]),
            strings(&["x^2", "x^2*z", "x^2*z^2", "x^2*z^3"]),
        ],
        || {
            [vec![0, 0, 0, -1], vec![0; 4], vec![0, -1, 0, -1], vec![0, -1, 0, 0], vec![-1, -2, 0, 0]]
                .into_iter()
                .map(|c| gens_of(&s, c))
                .collect()
        },
    );

    r.check("quotient.linear_section", (QuotientDimension::Finite(4), Some(true)), || {
        let pres = steinberg_ring_mod_l(p)?;
        let ring = pres.ring().clone();
        let q = ideal_sum(&pres.ideal, &Ideal::parse(&ring, &["C", "Y", "B - Z"], MonomialOrder::Grevlex)?);
        let basis = ["1", "A", "B", "X"]
            .iter()
            .map(|t| Ok(Polynomial::parse(&ring, t)?.terms()[0].0.clone()))
            .collect::<Result<Vec<Monomial>, CliError>>()?;
        Ok((quotient_dimension(&q), is_monomial_basis(&q, &basis)))
    });
    r.check("quotient.parameters", QuotientDimension::Finite(4), || {
        let pres = steinberg_ring_mod_l(p)?;
        let cut = ["x", "y*z^2", "y - x*z^2"].iter().map(|t| pres.pull_back(t)).collect::<Result<Vec<_>, _>>()?;
        let cut = Ideal::new(pres.ring(), cut, MonomialOrder::Grevlex)?;
        Ok(quotient_dimension(&ideal_sum(&pres.ideal, &cut)))
    });
    r.check("regular_sequence.linear", true, || {
        let pres = steinberg_ring_mod_l(p)?;
        let seq =
            ["C", "Y", "B - Z"].iter().map(|t| Polynomial::parse(pres.ring(), t)).collect::<Result<Vec<_>, _>>()?;
        Ok(is_regular_sequence(&seq, &pres.ideal, degree_bound)?.regular)
    });

    r.check("cohomology.danilov", (true, 0), || {
        let vanishing = (0..=50)
            .flat_map(|i| [1, 2].map(|d| h_dim_product(d, &LineBundleOnP1Product::new(vec![2 * i, i]))))
            .sum::<u64>();
        Ok((check_danilov_hypothesis(&[LineBundleOnP1Product::new(vec![2, 1])], 50).holds, vanishing))
    });
    r.check("cohomology.sections", 6, || Ok(h_dim_product(0, &LineBundleOnP1Product::new(vec![2, 1]))));

    let passed = r.checks.iter().filter(|c| c.pass).count();
    Report {
        report_version: REPORT_VERSION,
        field: p,
        degree_bound,
        passed,
        failed: r.checks.len() - passed,
        checks: r.checks,
    }
}
