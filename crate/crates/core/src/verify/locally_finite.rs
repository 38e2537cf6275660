//! Scenario `locally-finite`: for a p-nilpotent restricted ideal P of L,
//! the right ideal P·u(L) it generates is a nil ideal I, the quotient
//! u(L)/I is the enveloping algebra of L/P (verified as a dimension count
//! plus a structure match under the induced maps), and when L/P is a
//! split torus the quotient's complete orthogonal idempotent family lifts
//! through I.

use super::{ScenarioReport, VerifyError};
use crate::envalg::{self, EnvElement, Monomial};
use crate::liealg::{LieAlgebra, LieElement, PNilpotence, RestrictedSubspace};
use crate::radical::{self, NilpotencyResult, Sides};
use serde_json::json;
use std::collections::BTreeMap;

/// Largest number of monomial pairs exercised by the structure-match
/// check; beyond this the enumeration is truncated deterministically.
const PAIR_CAP: usize = 4096;

pub fn run(alg: &LieAlgebra, gens: Option<&[String]>) -> Result<ScenarioReport, VerifyError> {
    let start = std::time::Instant::now();

    // Assemble P and fail fast on inputs outside the scenario's hypothesis.
    let (p_sub, gen_desc) = match gens {
        Some(src) => {
            let mut parsed: Vec<LieElement> = Vec::new();
            let mut desc = Vec::new();
            for s in src {
                let e = alg.parse_element(s)?;
                match alg.is_p_nilpotent(&e)? {
                    PNilpotence::Nilpotent { .. } => {}
                    PNilpotence::NotNilpotent { closure_dim } => {
                        return Err(VerifyError::Input(format!(
                            "generator `{s}` is not p-nilpotent \
                             (its restricted closure has dimension {closure_dim} \
                             and stabilizes away from zero)"
                        )));
                    }
                }
                desc.push(json!(s));
                parsed.push(e);
            }
            (alg.restricted_ideal_closure(&parsed)?, json!(desc))
        }
        None => (alg.p_radical()?, json!("p-radical")),
    };
    let nil = alg.p_nil_index(&p_sub)?.ok_or_else(|| {
        VerifyError::Input(
            "the generated restricted ideal is not p-nilpotent".to_string(),
        )
    })?;

    let mut parameters = BTreeMap::new();
    parameters.insert("p".into(), json!(alg.p()));
    parameters.insert("dim".into(), json!(alg.dim()));
    parameters.insert("generators".into(), gen_desc);
    parameters.insert("ideal_dim".into(), json!(p_sub.dim()));
    let mut report = ScenarioReport::new("locally-finite", parameters);

    // L1: the two-sided ideal of u(L) generated by P is nilpotent.
    let env_gens: Vec<EnvElement> = p_sub
        .space()
        .basis()
        .iter()
        .map(|row| {
            alg.element(row.clone())
                .map(|e| EnvElement::from_lie(&e))
        })
        .collect::<Result<_, _>>()?;
    let ideal = radical::ideal_closure(alg, &env_gens, Sides::TwoSided)?;
    let (l1_pass, nil_index, l1_witness) = match radical::nilpotency_index(alg, &ideal)? {
        NilpotencyResult::Nilpotent { index } => (
            true,
            index,
            json!({ "ideal_dim": ideal.dim(), "nil_index": index, "p_nil_index_of_P": nil }),
        ),
        NilpotencyResult::NotNilpotent { stabilized_dim } => (
            false,
            0,
            json!({ "ideal_dim": ideal.dim(), "stabilized_dim": stabilized_dim }),
        ),
    };
    report.push(
        "L1",
        "P p-nilpotent restricted ideal => Pu(L) is a nil ideal",
        l1_pass,
        l1_witness,
    );

    // L2: dimension bookkeeping of the isomorphism u(L)/Pu(L) = u(L/P).
    let (quot, qmap) = alg.quotient(&p_sub)?;
    let dim_l = envalg::dense_dim(alg)?;
    let dim_q = envalg::dense_dim(&quot)?;
    let l2_pass = dim_q == dim_l - ideal.dim();
    report.push(
        "L2",
        "dim u(L/P) = dim u(L) - dim Pu(L)",
        l2_pass,
        json!({
            "dim_u_L": dim_l,
            "dim_u_quotient": dim_q,
            "ideal_dim": ideal.dim(),
        }),
    );

    // The algebra map pi: u(L) -> u(L/P) induced by the projection, and a
    // section sigma: u(L/P) -> u(L) lifting quotient generators.
    let pi = |u: &EnvElement| -> EnvElement {
        envalg::map_through(u, &quot, |i| {
            EnvElement::from_lie(&qmap.project(&alg.basis_element(i)))
        })
    };
    let sigma = |v: &EnvElement| -> EnvElement {
        envalg::map_through(v, alg, |i| {
            EnvElement::from_lie(&qmap.lift(&quot.basis_element(i)))
        })
    };

    // L3: structure match. pi kills I, and on lifted monomials it
    // reproduces the multiplication of u(L/P).
    let mut l3_pass = true;
    let mut l3_witness = json!(null);
    for row in ideal.basis() {
        let v = EnvElement::from_coords(alg, row)?;
        if !pi(&v).is_zero() {
            l3_pass = false;
            l3_witness = json!({
                "ideal_element": v.to_string(),
                "image": pi(&v).to_string(),
                "reason": "ideal element survives the induced map",
            });
            break;
        }
    }
    let mut pairs_checked = 0usize;
    if l3_pass {
        'outer: for ai in 0..dim_q {
            let ma = EnvElement::monomial_element(
                &quot,
                Monomial::from_index(ai, quot.p(), quot.dim()),
            );
            let sa = sigma(&ma);
            for bi in 0..dim_q {
                if pairs_checked >= PAIR_CAP {
                    break 'outer;
                }
                let mb = EnvElement::monomial_element(
                    &quot,
                    Monomial::from_index(bi, quot.p(), quot.dim()),
                );
                let lhs = pi(&sa.mul(&sigma(&mb)));
                let rhs = ma.mul(&mb);
                pairs_checked += 1;
                if lhs != rhs {
                    l3_pass = false;
                    l3_witness = json!({
                        "a": ma.to_string(),
                        "b": mb.to_string(),
                        "lifted_product_image": lhs.to_string(),
                        "quotient_product": rhs.to_string(),
                    });
                    break 'outer;
                }
            }
        }
    }
    if l3_pass {
        l3_witness = json!({
            "ideal_basis_killed": ideal.dim(),
            "monomial_pairs": pairs_checked,
        });
    }
    report.push(
        "L3",
        "u(L)/Pu(L) = u(L/P): induced map kills Pu(L) and matches products of lifted monomials",
        l3_pass,
        l3_witness,
    );

    // L4: when the quotient is a split torus, its complete orthogonal
    // idempotent family lifts through the nil ideal.
    let mut l4_pass = true;
    let l4_witness;
    match radical::split_toral_idempotents(&quot)? {
        Some(family) if l1_pass => {
            let reps: Vec<EnvElement> = family.iter().map(&sigma).collect();
            let lifted = radical::lift_orthogonal_family(&reps, &ideal, nil_index)?;
            let mut sum = EnvElement::zero(alg);
            for (i, g) in lifted.iter().enumerate() {
                sum = sum.add(g);
                for (j, h) in lifted.iter().enumerate() {
                    let prod = g.mul(h);
                    let expect = if i == j { g.clone() } else { EnvElement::zero(alg) };
                    if prod != expect {
                        l4_pass = false;
                    }
                }
            }
            if !sum.is_one() {
                l4_pass = false;
            }
            l4_witness = json!({
                "applicable": true,
                "family_size": lifted.len(),
                "sum_is_one": sum.is_one(),
            });
        }
        _ => {
            l4_witness = json!({
                "applicable": false,
                "reason": "quotient is not a split torus with every x_i^[p] = x_i",
            });
        }
    }
    report.push(
        "L4",
        "split-toral quotient: complete orthogonal idempotents lift modulo the nil ideal",
        l4_pass,
        l4_witness,
    );

    report.finalize(super::elapsed_ms(start));
    Ok(report)
}

/// The restricted ideal used by the default run, exposed for callers that
/// need to inspect it.
pub fn default_ideal(alg: &LieAlgebra) -> Result<RestrictedSubspace, VerifyError> {
    Ok(alg.p_radical()?)
}
