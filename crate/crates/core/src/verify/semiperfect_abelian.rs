//! Scenario `semiperfect-abelian`: for a finite-dimensional abelian L
//! over a prime field, u(L) is semiperfect, exhibited constructively: the
//! p-radical O = O_p(L) generates an ideal I with I = J(u(L)), the
//! quotient u(L)/I is reduced, and the complete orthogonal idempotent
//! family of the semisimple quotient u(L/O) lifts through I.

use super::{ScenarioReport, VerifyError};
use crate::envalg::{self, EnvElement, Monomial};
use crate::liealg::LieAlgebra;
use crate::radical::{self, Sides};
use serde_json::json;
use std::collections::BTreeMap;

pub fn run(alg: &LieAlgebra) -> Result<ScenarioReport, VerifyError> {
    let start = std::time::Instant::now();
    if !alg.is_abelian() {
        return Err(VerifyError::Input(
            "the semiperfect-abelian scenario needs an abelian algebra".into(),
        ));
    }
    if !alg.field().is_perfect() {
        return Err(VerifyError::Input(
            "the semiperfect-abelian scenario needs a perfect (prime) coefficient field".into(),
        ));
    }

    let o_p = alg.p_radical()?;
    let mut parameters = BTreeMap::new();
    parameters.insert("p".into(), json!(alg.p()));
    parameters.insert("dim".into(), json!(alg.dim()));
    parameters.insert("o_p_dim".into(), json!(o_p.dim()));
    let mut report = ScenarioReport::new("semiperfect-abelian", parameters);

    // S1: the computed O is a p-nilpotent restricted ideal.
    let o_nil = alg.p_nil_index(&o_p)?;
    let s1_pass = o_p.is_ideal() && o_p.p_closed() && o_nil.is_some();
    report.push(
        "S1",
        "O_p(L) is a p-nilpotent restricted ideal",
        s1_pass,
        json!({
            "dim": o_p.dim(),
            "ideal": o_p.is_ideal(),
            "p_closed": o_p.p_closed(),
            "p_nil_index": o_nil,
        }),
    );

    // S2: the ideal generated by O inside u(L) is exactly the Jacobson
    // radical, computed independently through Frobenius-kernel saturation.
    let env_gens: Vec<EnvElement> = o_p
        .space()
        .basis()
        .iter()
        .map(|row| alg.element(row.clone()).map(|e| EnvElement::from_lie(&e)))
        .collect::<Result<_, _>>()?;
    let ideal = radical::ideal_closure(alg, &env_gens, Sides::TwoSided)?;
    let cert = radical::jacobson_radical(alg, None)?;
    let s2_pass = ideal.dim() == cert.radical.dim()
        && cert.radical.contains_subspace(&ideal)
        && ideal.contains_subspace(&cert.radical);
    report.push(
        "S2",
        "the ideal generated by O_p(L) equals J(u(L))",
        s2_pass,
        json!({
            "ideal_dim": ideal.dim(),
            "radical_dim": cert.radical.dim(),
            "nil_index": cert.nil_index,
        }),
    );

    // S3: u(L)/J is reduced — the p-th-power preimage of J is J itself,
    // read through coordinates on a complement of J.
    let dim = envalg::dense_dim(alg)?;
    let complement = cert.radical.complement_indices();
    let mut columns = Vec::with_capacity(dim);
    for j in 0..dim {
        let m = EnvElement::monomial_element(alg, Monomial::from_index(j, alg.p(), alg.dim()));
        let reduced = cert.radical.reduce(&m.pow(alg.p() as u64).to_coords()?);
        columns.push(
            complement
                .iter()
                .map(|&i| reduced[i].clone())
                .collect::<Vec<_>>(),
        );
    }
    let preimage = crate::linalg::semilinear_nullspace(alg.field(), &columns, 1);
    let s3_pass = preimage.dim() == cert.radical.dim()
        && preimage.contains_subspace(&cert.radical);
    report.push(
        "S3",
        "u(L)/J(u(L)) is reduced: u^p in J implies u in J",
        s3_pass,
        json!({
            "p_power_preimage_dim": preimage.dim(),
            "radical_dim": cert.radical.dim(),
        }),
    );

    // S4: the complete orthogonal idempotents of the split-toral quotient
    // lift through the nil ideal to a complete orthogonal family in u(L).
    let (quot, qmap) = alg.quotient(&o_p)?;
    let family = radical::split_toral_idempotents(&quot)?.ok_or_else(|| {
        VerifyError::Input(
            "the quotient by O_p(L) is a torus that is not split; \
             idempotent enumeration needs x_i^[p] = x_i after a basis change"
                .into(),
        )
    })?;
    let sigma = |v: &EnvElement| -> EnvElement {
        envalg::map_through(v, alg, |i| {
            EnvElement::from_lie(&qmap.lift(&quot.basis_element(i)))
        })
    };
    let reps: Vec<EnvElement> = family.iter().map(&sigma).collect();
    let lifted = radical::lift_orthogonal_family(&reps, &cert.radical, cert.nil_index)?;
    let mut s4_pass = lifted.len() == envalg::dense_dim(&quot)?;
    let mut sum = EnvElement::zero(alg);
    for (i, g) in lifted.iter().enumerate() {
        sum = sum.add(g);
        for (j, h) in lifted.iter().enumerate() {
            let expect = if i == j { g.clone() } else { EnvElement::zero(alg) };
            if g.mul(h) != expect {
                s4_pass = false;
            }
        }
    }
    if !sum.is_one() {
        s4_pass = false;
    }
    report.push(
        "S4",
        "a complete orthogonal idempotent family of u(L/O_p(L)) lifts modulo the nil ideal, so u(L) is semiperfect",
        s4_pass,
        json!({
            "family_size": lifted.len(),
            "quotient_dim": envalg::dense_dim(&quot)?,
            "sum_is_one": sum.is_one(),
            "idempotents": lifted.iter().map(|e| e.to_string()).collect::<Vec<_>>(),
        }),
    );

    report.finalize(super::elapsed_ms(start));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::fixtures;

    #[test]
    fn torus_plus_nil_lifts_the_two_idempotents() {
        let report = run(&fixtures::mixed_torus()).unwrap();
        assert!(report.passed(), "{}", report.to_text());
        assert_eq!(report.checks[1].witness["ideal_dim"], 2);
        let idems = &report.checks[3].witness["idempotents"];
        let listed: Vec<String> = idems
            .as_array()
            .unwrap()
            .iter()
            .map(|v| v.as_str().unwrap().to_string())
            .collect();
        assert!(listed.contains(&"x".to_string()), "{listed:?}");
        assert!(listed.contains(&"1 + x".to_string()), "{listed:?}");
    }

    #[test]
    fn split_torus_has_zero_radical() {
        let report = run(&fixtures::split_torus(2, 2)).unwrap();
        assert!(report.passed(), "{}", report.to_text());
        assert_eq!(report.parameters["o_p_dim"], 0);
        assert_eq!(report.checks[1].witness["radical_dim"], 0);
        assert_eq!(report.checks[3].witness["family_size"], 4);
    }

    #[test]
    fn strongly_abelian_algebra_is_local() {
        let report = run(&fixtures::strongly_abelian(2, 2)).unwrap();
        assert!(report.passed(), "{}", report.to_text());
        assert_eq!(report.parameters["o_p_dim"], 2);
        assert_eq!(report.checks[3].witness["family_size"], 1);
    }

    #[test]
    fn char_three_case() {
        let report = run(&fixtures::strongly_abelian(3, 1)).unwrap();
        assert!(report.passed(), "{}", report.to_text());
    }

    #[test]
    fn nonabelian_input_is_refused() {
        let err = run(&fixtures::borel2()).unwrap_err();
        assert!(matches!(err, VerifyError::Input(_)), "{err}");
    }

    #[test]
    fn imperfect_coefficients_are_refused() {
        let err = run(&fixtures::perfect_field_example(1)).unwrap_err();
        assert!(matches!(err, VerifyError::Input(_)), "{err}");
    }

    #[test]
    fn nonsplit_toral_quotient_is_refused() {
        let err = run(&fixtures::toral_f4()).unwrap_err();
        match err {
            VerifyError::Input(msg) => assert!(msg.contains("not split"), "{msg}"),
            other => panic!("unexpected error {other}"),
        }
    }
}
