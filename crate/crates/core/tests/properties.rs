use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use torica_core::cohomology::{h_dim_p1, h_dim_product, LineBundleOnP1Product};
use torica_core::cone::{dot, Cone};
use torica_core::divisor::{
    class_group, div_of_character, module_generators, module_generators_with_slack, ToricVariety,
};
use torica_core::polyring::{
    ideal_equal, normal_form, satisfies_buchberger_criterion, saturate, Ideal, Monomial, MonomialOrder, PolyRing,
    Polynomial,
};
use torica_core::toric::{generators_are_lattice_binomials, toric_ideal, MonomialMap};
use torica_core::zlinalg::{
    cokernel_presentation, hnf_row_lattice_contains, kernel_basis, smith_normal_form, IntMatrix,
};

fn matrix(max_dim: usize, bound: i64) -> impl Strategy<Value = IntMatrix> {
    (1..=max_dim, 1..=max_dim).prop_flat_map(move |(r, c)| {
        prop::collection::vec(-bound..=bound, r * c).prop_map(move |e| {
            let rows: Vec<Vec<i64>> = e.chunks(c).map(<[i64]>::to_vec).collect();
            IntMatrix::from_rows(c, &rows).unwrap()
        })
    })
}

fn cone(max_dim: usize) -> impl Strategy<Value = Cone> {
    (1..=max_dim).prop_flat_map(|d| {
        prop::collection::vec(prop::collection::vec(-3i64..=3, d), 0..5).prop_map(move |g| Cone::new(d, g).unwrap())
    })
}

/// Full-dimensional pointed cones: the orthant tilted by extra generators
/// from the positive half-space `x_0 + ... > 0`.
fn pointed_cone() -> impl Strategy<Value = Cone> {
    (2usize..=3).prop_flat_map(|d| {
        prop::collection::vec(prop::collection::vec(-2i64..=3, d), 0..3).prop_map(move |extra| {
            let mut gens: Vec<Vec<i64>> = (0..d).map(|i| (0..d).map(|j| (i == j) as i64).collect()).collect();
            gens.extend(extra.into_iter().filter(|v| v.iter().sum::<i64>() > 0));
            Cone::new(d, gens).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn smith_form_reconstructs(a in matrix(6, 9)) {
        let s = smith_normal_form(&a);
        prop_assert_eq!(s.u.mul(&a).unwrap().mul(&s.v).unwrap(), s.d.clone());
        prop_assert!(s.u.is_unimodular());
        prop_assert!(s.v.is_unimodular());
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j {
                    prop_assert!(s.d.get(i, j).is_zero());
                }
            }
        }
        for w in s.invariant_factors.windows(2) {
            prop_assert!(!w[0].is_negative());
            prop_assert!(w[1].is_zero() || (!w[0].is_zero() && w[1].is_multiple_of(&w[0])));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn kernel_basis_is_a_basis(a in matrix(4, 4), coeffs in prop::collection::vec(-5i64..=5, 8)) {
        let k = kernel_basis(&a);
        let zero = vec![BigInt::zero(); a.rows()];
        for j in 0..k.cols() {
            prop_assert_eq!(a.mul_vec(&k.column(j)), zero.clone());
        }
        // any integer combination lies in the lattice spanned by the rows of k^T
        let mut v = vec![BigInt::zero(); a.cols()];
        for (j, c) in coeffs.iter().take(k.cols()).enumerate() {
            for (x, y) in v.iter_mut().zip(k.column(j)) {
                *x += y * c;
            }
        }
        prop_assert!(hnf_row_lattice_contains(&k.transpose(), &v));
    }

    #[test]
    fn cokernel_ignores_permutations(a in matrix(4, 5), seed in any::<u64>()) {
        let rows: Vec<Vec<i64>> = a.to_i64_rows().unwrap();
        let mut perm_rows = rows.clone();
        perm_rows.rotate_left((seed as usize) % rows.len());
        let mut cols = perm_rows.clone();
        let n = a.cols();
        for r in &mut cols {
            r.rotate_right((seed as usize / 7) % n);
        }
        let b = IntMatrix::from_rows(n, &cols).unwrap();
        prop_assert_eq!(cokernel_presentation(&a), cokernel_presentation(&b));
    }

    #[test]
    fn biduality(c in cone(4)) {
        prop_assert_eq!(c.dual_cone().dual_cone(), c);
    }

    #[test]
    fn membership_matches_dual_generators(c in cone(3), v in prop::collection::vec(-4i64..=4, 3)) {
        let v = &v[..c.dim()];
        let dual = c.dual_cone();
        prop_assert_eq!(c.contains(v), dual.generators().iter().all(|m| dot(m, v) >= 0));
    }

    #[test]
    fn hilbert_basis_is_irreducible(c in pointed_cone()) {
        let hb = c.hilbert_basis().unwrap().hilbert_generators;
        for h in &hb {
            prop_assert!(c.contains(h));
            for b in &hb {
                if b != h {
                    let rest: Vec<i64> = h.iter().zip(b).map(|(x, y)| x - y).collect();
                    prop_assert!(!c.contains(&rest) || rest.iter().all(|&x| x == 0));
                }
            }
        }
    }

    #[test]
    fn product_rays_are_embedded_factor_rays(a in pointed_cone(), b in pointed_cone()) {
        let ra: Vec<Vec<i64>> = a.rays().unwrap().into_iter().map(|r| r.generator).collect();
        let rb: Vec<Vec<i64>> = b.rays().unwrap().into_iter().map(|r| r.generator).collect();
        let mut expected: Vec<Vec<i64>> = ra.iter().map(|r| [r.as_slice(), &vec![0; b.dim()]].concat()).collect();
        expected.extend(rb.iter().map(|r| [vec![0; a.dim()].as_slice(), r].concat()));
        expected.sort();
        let mut got: Vec<Vec<i64>> = a.product(&b).rays().unwrap().into_iter().map(|r| r.generator).collect();
        got.sort();
        prop_assert_eq!(got, expected);
    }
}

fn polynomial(ring: std::sync::Arc<PolyRing>) -> impl Strategy<Value = Polynomial> {
    let n = ring.nvars();
    prop::collection::vec((prop::collection::vec(0u32..=2, n), -50i64..=50), 1..4).prop_map(move |terms| {
        Polynomial::from_terms(&ring, terms.into_iter().map(|(e, c)| (Monomial(e), c)).collect())
    })
}

fn ring3() -> std::sync::Arc<PolyRing> {
    PolyRing::new(&["x", "y", "z"], 101).unwrap()
}

fn binomial(ring: std::sync::Arc<PolyRing>) -> impl Strategy<Value = Polynomial> {
    let n = ring.nvars();
    (prop::collection::vec(0u32..=2, n), prop::collection::vec(0u32..=2, n))
        .prop_map(move |(a, b)| Polynomial::binomial(&ring, Monomial(a), Monomial(b)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn buchberger_pairs_reduce_to_zero(
        gens in prop::collection::vec(polynomial(ring3()), 1..4),
        order in prop::sample::select(vec![MonomialOrder::Grevlex, MonomialOrder::Lex, MonomialOrder::Elimination(1)]),
        f in polynomial(ring3()),
    ) {
        let i = Ideal::new(&ring3(), gens.clone(), order).unwrap();
        prop_assert!(satisfies_buchberger_criterion(&i));
        for g in &gens {
            prop_assert!(normal_form(g, &i).is_zero());
        }
        // f - NF(f) lies in the ideal, and NF is idempotent
        let r = normal_form(&f, &i);
        prop_assert!(normal_form(&f.sub(&r), &i).is_zero());
        prop_assert_eq!(normal_form(&r, &i), r);
    }

    #[test]
    fn saturation_is_idempotent_and_monotone(gens in prop::collection::vec(binomial(ring3()), 1..4)) {
        let r = ring3();
        let i = Ideal::new(&r, gens.clone(), MonomialOrder::Grevlex).unwrap();
        let f = Polynomial::parse(&r, "x*y*z").unwrap();
        let sat = saturate(&i, &f);
        prop_assert!(ideal_equal(&saturate(&sat, &f), &sat));
        for g in &gens {
            prop_assert!(sat.contains(g));
        }
        // every generator of the saturation is pushed into i by a power of f
        for g in sat.generators() {
            let mut h = g.clone();
            let mut found = i.contains(&h);
            for _ in 0..10 {
                if found {
                    break;
                }
                h = h.mul(&f);
                found = i.contains(&h);
            }
            prop_assert!(found);
        }
    }
}

/// Random unimodular change of basis of `ker Phi` leaves `I_L` unchanged.
#[test]
fn toric_ideal_is_basis_independent() {
    use rand::{Rng, SeedableRng};
    use torica_core::polyring::ideal_equal;
    use torica_core::toric::{steinberg_phi, STEINBERG_MINORS, STEINBERG_VARS};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    let vars: Vec<String> = STEINBERG_VARS.iter().map(|s| s.to_string()).collect();
    let ring = PolyRing::new(&vars, 101).unwrap();
    let minors = Ideal::parse(&ring, &STEINBERG_MINORS, MonomialOrder::Grevlex).unwrap();
    let k = kernel_basis(&steinberg_phi());
    let all = Polynomial::parse(&ring, "A*B*C*X*Y*Z").unwrap();
    for _ in 0..20 {
        // elementary column operations keep the basis unimodular
        let mut cols: Vec<Vec<i64>> =
            (0..k.cols()).map(|j| k.column(j).iter().map(|x| i64::try_from(x).unwrap()).collect()).collect();
        for _ in 0..3 {
            let (a, b) = (rng.random_range(0..3), rng.random_range(0..3));
            if a != b {
                let c: i64 = rng.random_range(-2..=2);
                let add: Vec<i64> = cols[b].iter().map(|x| x * c).collect();
                for (x, y) in cols[a].iter_mut().zip(add) {
                    *x += y;
                }
            }
        }
        let gens = cols
            .iter()
            .map(|l| {
                let plus = l.iter().map(|&x| x.max(0) as u32).collect();
                let minus = l.iter().map(|&x| (-x).max(0) as u32).collect();
                Polynomial::binomial(&ring, Monomial(plus), Monomial(minus))
            })
            .collect();
        let il = Ideal::new(&ring, gens, MonomialOrder::Grevlex).unwrap();
        assert!(ideal_equal(&saturate(&il, &all), &minors));
    }
}

fn steinberg_divisor() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-3i64..=3, 4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn generators_translate_with_the_representative(a in steinberg_divisor(), m in prop::collection::vec(-3i64..=3, 3)) {
        let v = ToricVariety::steinberg();
        let d = v.divisor(a).unwrap();
        let shifted = d.add(&div_of_character(&v, &m));
        let g = module_generators(&v, &d).unwrap().generators;
        let h = module_generators(&v, &shifted).unwrap().generators;
        let mut moved: Vec<Vec<i64>> = g.iter().map(|x| x.iter().zip(&m).map(|(p, q)| p - q).collect()).collect();
        moved.sort();
        prop_assert_eq!(h, moved);
        let cg = class_group(&v);
        prop_assert_eq!(cg.project(&shifted).unwrap(), cg.project(&d).unwrap());
    }

    #[test]
    fn generators_do_not_depend_on_the_box(a in steinberg_divisor()) {
        let v = ToricVariety::steinberg();
        let d = v.divisor(a).unwrap();
        let tight = module_generators(&v, &d).unwrap();
        let wide = module_generators_with_slack(&v, &d, 3).unwrap();
        prop_assert_eq!(&tight, &wide);
        for g in &tight.generators {
            prop_assert!(tight.contains(&v, g));
        }
    }

    #[test]
    fn a1_generators_translate(a in prop::collection::vec(-4i64..=4, 2), m in prop::collection::vec(-3i64..=3, 2)) {
        let v = ToricVariety::a1();
        let d = v.divisor(a).unwrap();
        let g = module_generators(&v, &d).unwrap().generators;
        let h = module_generators(&v, &d.add(&div_of_character(&v, &m))).unwrap().generators;
        prop_assert_eq!(g.len(), h.len());
    }

    #[test]
    fn character_divisors_are_principal(m in prop::collection::vec(-5i64..=5, 3)) {
        let v = ToricVariety::steinberg();
        let cg = class_group(&v);
        prop_assert_eq!(cg.project(&div_of_character(&v, &m)).unwrap(), cg.zero());
        let a1 = ToricVariety::a1();
        prop_assert_eq!(class_group(&a1).project(&div_of_character(&a1, &m[..2])).unwrap(), class_group(&a1).zero());
    }

    #[test]
    fn serre_duality_and_euler_characteristic(deg in -20i64..=20) {
        prop_assert_eq!(h_dim_p1(1, deg), h_dim_p1(0, -deg - 2));
        prop_assert_eq!(h_dim_p1(0, deg) as i64 - h_dim_p1(1, deg) as i64, deg + 1);
    }

    #[test]
    fn kunneth_is_symmetric(degs in prop::collection::vec(-6i64..=6, 0..5), d in 0u32..5, rot in 0usize..5) {
        let mut permuted = degs.clone();
        if !permuted.is_empty() {
            let r = rot % permuted.len();
            permuted.rotate_left(r);
        }
        prop_assert_eq!(
            h_dim_product(d, &LineBundleOnP1Product::new(degs)),
            h_dim_product(d, &LineBundleOnP1Product::new(permuted))
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn toric_generators_are_lattice_binomials(cols in prop::collection::vec(prop::collection::vec(0i64..=2, 2), 3..5)) {
        // prepend the unit vectors so the cokernel is finite
        let mut all = vec![vec![1, 0], vec![0, 1]];
        all.extend(cols);
        let phi = IntMatrix::from_columns(2, &all).unwrap();
        let t = toric_ideal(&MonomialMap::with_default_names(phi), 101).unwrap();
        prop_assert!(generators_are_lattice_binomials(&t));
        let f = (0..t.ring().nvars()).fold(Polynomial::constant(t.ring(), 1), |acc, i| acc.mul(&Polynomial::var(t.ring(), i)));
        prop_assert!(ideal_equal(&saturate(&t.ideal, &f), &t.ideal));
    }
}

#[test]
fn unimodular_determinant_sanity() {
    assert!(IntMatrix::identity(3).determinant().unwrap().is_one());
}
