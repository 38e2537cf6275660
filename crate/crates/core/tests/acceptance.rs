//! Acceptance gate: one test per criterion, each printing a single
//! `[PASS]`/`[FAIL]` line (visible with `--nocapture`) before asserting.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the
//! per-criterion lines and timings.

use resenv::envalg::{EnvElement, Monomial};
use resenv::liealg::LieAlgebra;
use resenv::radical::{self, RadicalError, RadicalMethod};
use resenv::scalars::Scalar;
use resenv::verify::rng::Sampler;
use resenv::verify::{fixtures, free_module, locally_finite, perfect_field, torus_chain};
use std::collections::BTreeMap;
use std::time::Instant;

fn record(criterion: &str, pass: bool, detail: &str) {
    println!(
        "[{}] {criterion}: {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "{criterion}: {detail}");
}

#[test]
fn criterion_1_perfect_field_worked_example() {
    let mut detail = String::new();
    let mut pass = true;
    for m in [1usize, 2] {
        for r in [1u32, 2] {
            let start = Instant::now();
            let report = perfect_field::run(&perfect_field::PerfectFieldParams {
                m,
                r,
                trials: 10,
                seed: 7,
            })
            .expect("scenario runs");
            let ms = start.elapsed().as_millis();
            let ok = report.passed() && report.checks.len() == 7 && ms < 10_000;
            if !ok {
                pass = false;
                detail = format!("m={m} r={r}: {}", report.to_text());
                break;
            }
            detail.push_str(&format!("(m={m},r={r}: {ms} ms) "));
        }
    }
    record(
        "criterion 1 — inverse formula, 2^r-th roots, nil ideal, unit lifting, power normal form",
        pass,
        &detail,
    );
}

/// Three-fold tensor expansion of (Δ⊗id)Δu (`left = true`) or
/// (id⊗Δ)Δu (`left = false`), keyed by monomial triples.
fn triple_coproduct(
    u: &EnvElement,
    left: bool,
) -> BTreeMap<(Monomial, Monomial, Monomial), Scalar> {
    let alg = u.algebra().clone();
    let mut out: BTreeMap<(Monomial, Monomial, Monomial), Scalar> = BTreeMap::new();
    let delta = u.comultiply().expect("within tensor bound");
    for ((a, b), c) in delta.terms() {
        let leg = if left { a } else { b };
        let inner = EnvElement::monomial_element(&alg, leg.clone())
            .comultiply()
            .expect("within tensor bound");
        for ((x, y), d) in inner.terms() {
            let key = if left {
                (x.clone(), y.clone(), b.clone())
            } else {
                (a.clone(), x.clone(), y.clone())
            };
            let add = c * d;
            let cur = out.entry(key).or_insert_with(|| alg.field().zero());
            *cur = &*cur + &add;
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

#[test]
fn criterion_2_pbw_and_hopf_suite() {
    let start = Instant::now();
    let algebras: Vec<(&str, LieAlgebra, u64)> = vec![
        ("heisenberg_p2", fixtures::heisenberg(2), 8),
        ("heisenberg_p3", fixtures::heisenberg(3), 27),
        ("heisenberg_variant_z", fixtures::heisenberg_variant_z(), 8),
        ("borel2", fixtures::borel2(), 4),
        ("sl2_p3", fixtures::sl2_p3(), 27),
        (
            "double_torus_plus_chain",
            fixtures::double_torus_plus_chain(),
            16,
        ),
    ];
    let mut sampler = Sampler::new(11);
    let mut triples = 0usize;
    for (name, alg, expected_dim) in &algebras {
        assert_eq!(
            alg.env_dim(),
            Some(*expected_dim),
            "{name}: dim u(L) must be p^n"
        );
        for _ in 0..34 {
            let a = sampler.env_element(alg);
            let b = sampler.env_element(alg);
            let c = sampler.env_element(alg);
            assert_eq!(
                a.mul(&b).mul(&c),
                a.mul(&b.mul(&c)),
                "{name}: associativity"
            );
            triples += 1;
        }
        for _ in 0..10 {
            let u = sampler.env_element(alg);
            let delta = u.comultiply().expect("tensor bound");
            assert_eq!(
                triple_coproduct(&u, true),
                triple_coproduct(&u, false),
                "{name}: coassociativity"
            );
            assert_eq!(delta.contract_counit_left(), u, "{name}: left counit");
            assert_eq!(delta.contract_counit_right(), u, "{name}: right counit");
            let eps = EnvElement::scalar(alg, &u.counit());
            assert_eq!(
                delta.contract_antipode_left(),
                eps,
                "{name}: antipode (left)"
            );
            assert_eq!(
                delta.contract_antipode_right(),
                eps,
                "{name}: antipode (right)"
            );
            assert_eq!(delta.swap(), delta, "{name}: cocommutativity");
        }
    }
    let ms = start.elapsed().as_millis();
    record(
        "criterion 2 — PBW dimensions, associativity, Hopf axioms",
        triples >= 200 && ms < 30_000,
        &format!(
            "{} algebras, {triples} associativity triples, 60 Hopf samples, {ms} ms",
            algebras.len()
        ),
    );
}

#[test]
fn criterion_3_power_formula_cross_check() {
    let algebras = vec![
        fixtures::heisenberg(2),
        fixtures::heisenberg_variant_z(),
        fixtures::borel2(),
    ];
    let mut sampler = Sampler::new(23);
    let mut pairs = 0usize;
    for alg in &algebras {
        for _ in 0..34 {
            let x = sampler.lie_element(alg);
            let y = sampler.lie_element(alg);
            // Over F_2: (x+y)^[2] = x^[2] + y^[2] + [x,y].
            let lhs = alg.p_power(&x.add(&y), 1).unwrap();
            let rhs = alg
                .p_power(&x, 1)
                .unwrap()
                .add(&alg.p_power(&y, 1).unwrap())
                .add(&alg.bracket(&x, &y));
            assert_eq!(
                lhs.coords(),
                rhs.coords(),
                "power formula in {:?}",
                alg.labels()
            );
            pairs += 1;
        }
    }
    record(
        "criterion 3 — (x+y)^[2] = x^[2] + y^[2] + [x,y] against enveloping powers",
        pairs >= 100,
        &format!("{pairs} random pairs over 3 nonabelian algebras"),
    );
}

/// Exhaustive nilpotent enumeration over F_2 for dim u(L) ≤ 16: an
/// element is nilpotent iff its 16-th power vanishes, and the nilradical
/// is exactly the set of nilpotents.
fn brute_force_nilradical_check(alg: &LieAlgebra) -> (usize, usize) {
    let dim = alg.env_dim().expect("small") as usize;
    assert!(dim <= 16, "oracle is exhaustive only up to dimension 16");
    let cert = radical::jacobson_radical(alg, None).expect("commutative radical");
    let mut nilpotents = 0usize;
    for mask in 0u32..(1u32 << dim) {
        let coords: Vec<Scalar> = (0..dim)
            .map(|i| {
                if mask >> i & 1 == 1 {
                    alg.field().one()
                } else {
                    alg.field().zero()
                }
            })
            .collect();
        let mut u = EnvElement::from_coords(alg, &coords).expect("coords");
        for _ in 0..4 {
            u = u.mul(&u);
        }
        if u.is_zero() {
            nilpotents += 1;
            assert!(
                cert.radical.contains(&coords),
                "nilpotent element outside the certified radical"
            );
        }
    }
    (nilpotents, cert.radical.dim())
}

#[test]
fn criterion_4_radical_suite() {
    let mut summaries = Vec::new();
    for (name, alg) in fixtures::abelian_radical_fixtures() {
        let (nilpotents, dim) = brute_force_nilradical_check(&alg);
        assert_eq!(
            nilpotents,
            1usize << dim,
            "{name}: radical must consist exactly of the nilpotents"
        );
        let cert = radical::jacobson_radical(&alg, None).unwrap();
        assert!(matches!(
            cert.method,
            RadicalMethod::CommutativeFrobeniusKernel { .. }
        ));
        summaries.push(format!("{name}: dim J = {dim}"));
    }

    // Structural route: the Heisenberg algebra is p-nil, so J is the
    // augmentation ideal, of dimension 7, with a certified index.
    let h = fixtures::heisenberg(2);
    let cert = radical::jacobson_radical(&h, None).unwrap();
    assert!(matches!(
        cert.method,
        RadicalMethod::StructuralPNilIdeal { .. }
    ));
    let omega = resenv::envalg::augmentation_subspace(&h).unwrap();
    assert_eq!(cert.radical.dim(), 7);
    assert!(cert.radical.contains_subspace(&omega) && omega.contains_subspace(&cert.radical));
    let recheck = radical::nilpotency_index(&h, &cert.radical).unwrap();
    assert_eq!(recheck.index(), Some(cert.nil_index));
    summaries.push(format!(
        "heisenberg: J = augmentation ideal, dim 7, nil index {}",
        cert.nil_index
    ));

    record(
        "criterion 4 — nilradical equals the exhaustive F_2 oracle; structural route certified",
        true,
        &summaries.join("; "),
    );
}

#[test]
fn criterion_5_nil_ideal_quotients() {
    let cases: Vec<(&str, LieAlgebra, Vec<String>)> = vec![
        (
            "heisenberg",
            fixtures::heisenberg(2),
            vec!["x".into(), "y".into(), "z".into()],
        ),
        ("mixed_torus", fixtures::mixed_torus(), vec!["w".into()]),
        ("borel2", fixtures::borel2(), vec!["w".into()]),
    ];
    let mut summaries = Vec::new();
    for (name, alg, gens) in cases {
        let report = locally_finite::run(&alg, Some(&gens)).expect("scenario runs");
        assert!(report.passed(), "{name}: {}", report.to_text());
        summaries.push(format!(
            "{name}: dim I = {}, dim u(L/P) = {}",
            report.checks[0].witness["ideal_dim"],
            report.checks[1].witness["dim_u_quotient"]
        ));
    }
    record(
        "criterion 5 — Pu(L) nil, dimension formula, structure match for u(L)/Pu(L) = u(L/P)",
        true,
        &summaries.join("; "),
    );
}

#[test]
fn criterion_6_torus_chain() {
    let start = Instant::now();
    let report = torus_chain::run(3, 2).expect("scenario runs");
    let ms = start.elapsed().as_millis();
    record(
        "criterion 6 — integral idempotents of the torus chain with absorption and difference-square identities",
        report.passed() && ms < 1_000,
        &format!("k=3 p=2, {} checks, {ms} ms", report.checks.len()),
    );
}

#[test]
fn criterion_7_free_module_suite() {
    let cases: Vec<(&str, LieAlgebra, Vec<String>, Vec<String>)> = vec![
        (
            "strongly_abelian",
            fixtures::strongly_abelian(2, 3),
            vec!["w0".into()],
            vec!["w0".into(), "w1".into(), "w2".into()],
        ),
        (
            "heisenberg",
            fixtures::heisenberg(2),
            vec!["x".into()],
            vec!["x".into(), "y".into()],
        ),
        (
            "torus_plus_chain",
            fixtures::torus_plus_chain(),
            vec!["x".into()],
            vec!["a".into(), "x".into()],
        ),
    ];
    let mut round_trips = 0u32;
    let mut links = 0usize;
    for (name, alg, sub, chain) in cases {
        let report = free_module::run(&alg, &sub, &chain, 34, 7).expect("scenario runs");
        assert!(report.passed(), "{name}: {}", report.to_text());
        round_trips += 34;
        links += report.checks[1].witness["links_checked"]
            .as_u64()
            .unwrap() as usize;
    }
    record(
        "criterion 7 — free-module round-trips and right-ideal nonmembership along chains",
        round_trips >= 100 && links >= 4,
        &format!("{round_trips} round-trips, {links} chain links"),
    );
}

/// Independent re-implementation of the induced section
/// u(L/P) -> u(L): lift each quotient generator through the quotient
/// map and multiply in ascending basis order.
fn lift_env(
    v: &EnvElement,
    ambient: &LieAlgebra,
    qmap: &resenv::liealg::QuotientMap,
) -> EnvElement {
    let quot = v.algebra().clone();
    let mut out = EnvElement::zero(ambient);
    for (m, c) in v.terms() {
        let mut acc = EnvElement::scalar(ambient, c);
        for (i, &e) in m.exponents().iter().enumerate() {
            if e > 0 {
                let gen = EnvElement::from_lie(&qmap.lift(&quot.basis_element(i)));
                acc = acc.mul(&gen.pow(e as u64));
            }
        }
        out = out.add(&acc);
    }
    out
}

#[test]
fn criterion_8_idempotent_lifting() {
    let mut lifted = 0usize;
    let mut sampler = Sampler::new(31);
    for (name, alg) in fixtures::abelian_radical_fixtures() {
        let cert = radical::jacobson_radical(&alg, None).unwrap();
        let (quot, qmap) = alg.quotient(&alg.p_radical().unwrap()).unwrap();
        let family: Vec<EnvElement> = radical::split_toral_idempotents(&quot)
            .unwrap()
            .expect("fixture quotients are split")
            .iter()
            .map(|e| lift_env(e, &alg, &qmap))
            .collect();
        for _ in 0..10 {
            // A valid input: an exact idempotent (a subset sum of the
            // orthogonal family) plus a random radical element.
            let mask = sampler.index(1 << family.len());
            let mut e = EnvElement::zero(&alg);
            for (i, f) in family.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    e = e.add(f);
                }
            }
            for row in cert.radical.basis() {
                let c = sampler.scalar(alg.field());
                let n = EnvElement::from_coords(&alg, row).unwrap().scale(&c);
                e = e.add(&n);
            }
            let g = radical::lift_idempotent(&e, &cert.radical, cert.nil_index)
                .unwrap_or_else(|err| panic!("{name}: lift failed: {err}"));
            assert_eq!(g.mul(&g), g, "{name}: lifted element must be idempotent");
            let diff = g.sub(&e);
            assert!(
                cert.radical.contains(&diff.to_coords().unwrap()),
                "{name}: g - e must stay in the ideal"
            );
            lifted += 1;
        }
    }

    // Negative controls: a defect outside the ideal is rejected, and a
    // non-orthogonal family is rejected.
    let pf = fixtures::perfect_field_example(1);
    let cert = radical::jacobson_radical(&pf, None).unwrap();
    let bad = EnvElement::generator(&pf, pf.label_index("y1").unwrap());
    let refused = matches!(
        radical::lift_idempotent(&bad, &cert.radical, cert.nil_index),
        Err(RadicalError::NotIdempotentModulo(_))
    );
    let mt = fixtures::mixed_torus();
    let mt_cert = radical::jacobson_radical(&mt, None).unwrap();
    let x = EnvElement::generator(&mt, 0);
    let refused_family = matches!(
        radical::lift_orthogonal_family(
            &[x.clone(), x.clone()],
            &mt_cert.radical,
            mt_cert.nil_index
        ),
        Err(RadicalError::NotOrthogonalModulo(_))
    );

    record(
        "criterion 8 — idempotents lift along nil ideals; invalid inputs are refused",
        lifted >= 50 && refused && refused_family,
        &format!("{lifted} random lifts, 2 negative controls refused"),
    );
}

#[test]
fn criterion_9_deterministic_reports() {
    let run_pf = || {
        perfect_field::run(&perfect_field::PerfectFieldParams {
            m: 2,
            r: 2,
            trials: 10,
            seed: 7,
        })
        .unwrap()
        .to_json()
    };
    let run_tc = || torus_chain::run(3, 2).unwrap().to_json();
    let alg = fixtures::heisenberg(2);
    let run_fm = || {
        free_module::run(
            &alg,
            &["x".to_string()],
            &["x".to_string(), "y".to_string()],
            10,
            7,
        )
        .unwrap()
        .to_json()
    };
    let same = run_pf() == run_pf() && run_tc() == run_tc() && run_fm() == run_fm();
    record(
        "criterion 9 — byte-identical JSON reports for identical (scenario, parameters, seed)",
        same,
        "3 scenarios re-run and compared byte-for-byte",
    );
}
