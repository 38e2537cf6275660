//! Scenario `free-module`: u(L) is a free module over u(H) for any
//! restricted subalgebra H, exhibited through an explicit decomposition
//! u(L) = ⊕_k u(H)·u_k that recomposes exactly; and for a chain of
//! generators x_1, x_2, … with x_{i+1} outside the restricted closure of
//! its predecessors, the partial product x_1···x_i never lies in the
//! principal right ideal generated by x_1···x_i·x_{i+1} — checked by two
//! independent oracles (span enumeration and direct division).

use super::rng::Sampler;
use super::{ScenarioReport, VerifyError};
use crate::envalg::{self, EnvElement};
use crate::liealg::{LieAlgebra, LieElement};
use serde_json::json;
use std::collections::BTreeMap;

pub fn run(
    alg: &LieAlgebra,
    subalgebra_gens: &[String],
    chain: &[String],
    trials: u32,
    seed: u64,
) -> Result<ScenarioReport, VerifyError> {
    let start = std::time::Instant::now();
    if subalgebra_gens.is_empty() {
        return Err(VerifyError::Input(
            "at least one subalgebra generator is required".into(),
        ));
    }
    if chain.len() < 2 {
        return Err(VerifyError::Input(
            "the chain needs at least two elements".into(),
        ));
    }

    let mut h_gens = Vec::new();
    for s in subalgebra_gens {
        h_gens.push(alg.parse_element(s)?);
    }
    let h = alg.restricted_closure(&h_gens)?;
    if h.dim() == alg.dim() {
        return Err(VerifyError::Input(format!(
            "the subalgebra generators span the whole algebra \
             (restricted closure has dimension {}); a proper subalgebra is required",
            h.dim()
        )));
    }

    let mut chain_elems: Vec<LieElement> = Vec::new();
    for (pos, s) in chain.iter().enumerate() {
        let e = alg.parse_element(s)?;
        if pos > 0 {
            let prior = alg.restricted_closure(&chain_elems)?;
            if prior.contains(&e) {
                return Err(VerifyError::Input(format!(
                    "chain element `{s}` lies in the restricted closure of its predecessors"
                )));
            }
        }
        chain_elems.push(e);
    }

    let mut parameters = BTreeMap::new();
    parameters.insert("p".into(), json!(alg.p()));
    parameters.insert("dim".into(), json!(alg.dim()));
    parameters.insert(
        "subalgebra".into(),
        json!(subalgebra_gens.iter().map(|s| json!(s)).collect::<Vec<_>>()),
    );
    parameters.insert(
        "chain".into(),
        json!(chain.iter().map(|s| json!(s)).collect::<Vec<_>>()),
    );
    parameters.insert("trials".into(), json!(trials));
    parameters.insert("seed".into(), json!(seed));
    let mut report = ScenarioReport::new("free-module", parameters);
    let mut sampler = Sampler::new(seed);

    // F1: decompose/recompose round-trip on random elements.
    let mut f1_pass = true;
    let mut f1_witness = json!(null);
    let mut max_parts = 0usize;
    for trial in 0..trials.max(1) {
        let u = sampler.env_element(alg);
        let decomposition = envalg::free_module_decompose(&u, &h)?;
        max_parts = max_parts.max(decomposition.parts().len());
        let back = decomposition.recompose()?;
        if back != u {
            f1_pass = false;
            f1_witness = json!({
                "trial": trial,
                "element": u.to_string(),
                "recomposed": back.to_string(),
            });
            break;
        }
    }
    if f1_pass {
        let free_rank = (alg.p() as u64).pow((alg.dim() - h.dim()) as u32);
        f1_witness = json!({
            "trials": trials.max(1),
            "h_dim": h.dim(),
            "free_rank": free_rank,
            "max_parts_seen": max_parts,
        });
    }
    report.push(
        "F1",
        "u(L) = (+)_k u(H) u_k: every element decomposes over u(H) and recomposes exactly",
        f1_pass,
        f1_witness,
    );

    // F2: principal-right-ideal nonmembership along the chain, by two
    // oracles that must agree.
    let mut f2_pass = true;
    let mut f2_witness = json!(null);
    let mut links = 0usize;
    let mut partial = EnvElement::from_lie(&chain_elems[0]);
    for next in &chain_elems[1..] {
        let extended = partial.mul(&EnvElement::from_lie(next));
        let ideal = envalg::principal_right_ideal(&extended)?;
        let span_member = ideal.contains(&partial.to_coords()?);
        let division = envalg::solve_right_factor(&extended, &partial)?;
        if span_member || division.is_some() {
            f2_pass = false;
            f2_witness = json!({
                "link": links + 1,
                "partial_product": partial.to_string(),
                "extended_product": extended.to_string(),
                "span_oracle_member": span_member,
                "division_oracle_member": division.is_some(),
            });
            break;
        }
        links += 1;
        partial = extended;
    }
    if f2_pass {
        f2_witness = json!({ "links_checked": links });
    }
    report.push(
        "F2",
        "x_1...x_i is not in the principal right ideal of x_1...x_i x_(i+1): no v solves x_1...x_i x_(i+1) v = x_1...x_i",
        f2_pass,
        f2_witness,
    );

    report.finalize(super::elapsed_ms(start));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::fixtures;

    fn strings(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn strongly_abelian_three_generator_chain() {
        let alg = fixtures::strongly_abelian(2, 3);
        let report = run(
            &alg,
            &strings(&["w0"]),
            &strings(&["w0", "w1", "w2"]),
            8,
            7,
        )
        .unwrap();
        assert!(report.passed(), "{}", report.to_text());
        assert_eq!(report.checks[1].witness["links_checked"], 2);
    }

    #[test]
    fn heisenberg_chain_x_y() {
        let alg = fixtures::heisenberg(2);
        let report = run(&alg, &strings(&["x"]), &strings(&["x", "y"]), 8, 7).unwrap();
        assert!(report.passed(), "{}", report.to_text());
    }

    #[test]
    fn chain_inside_prior_closure_is_refused() {
        let alg = fixtures::strongly_abelian(2, 3);
        let err = run(
            &alg,
            &strings(&["w0"]),
            &strings(&["w1", "w1"]),
            4,
            7,
        )
        .unwrap_err();
        match err {
            VerifyError::Input(msg) => {
                assert!(msg.contains("restricted closure"), "{msg}")
            }
            other => panic!("unexpected error {other}"),
        }
    }

    #[test]
    fn whole_algebra_subalgebra_is_refused() {
        let alg = fixtures::heisenberg(2);
        let err = run(
            &alg,
            &strings(&["x", "y"]),
            &strings(&["x", "y"]),
            4,
            7,
        )
        .unwrap_err();
        assert!(matches!(err, VerifyError::Input(_)), "{err}");
    }
}
