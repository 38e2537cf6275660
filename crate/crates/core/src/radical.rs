//! Jacobson radicals of enveloping algebras, with certificates instead of
//! bare answers, plus the unit-group machinery that depends on them:
//! idempotent lifting along nil ideals and integrals of the Hopf
//! structure.
//!
//! Two certification routes are implemented.
//!
//! * Commutative route (abelian L): u(L) is commutative, so the radical is
//!   the nilradical, the stabilized kernel of the iterated Frobenius map.
//!   Each power map is additive and semilinear over the coefficient field,
//!   so the kernel is exact linear algebra. The result is certified
//!   nilpotent and the quotient certified reduced before returning.
//!
//! * Structural route: given a p-nil restricted ideal P of L with L/P
//!   certified semiprimitive, the radical is exactly the two-sided ideal
//!   generated by P. The route verifies every input property it relies on
//!   and refuses (with a typed error) whenever the quotient cannot be
//!   certified.

use crate::envalg::{self, EnvElement, Monomial};
use crate::liealg::{LieAlgebra, LieError, RestrictedSubspace};
use crate::linalg::{self, Matrix, Subspace};
use crate::scalars::Scalar;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum RadicalError {
    #[error("supplied subspace is not a p-nil restricted ideal: {0}")]
    NotPNilIdeal(String),
    #[error("cannot certify the quotient semiprimitive: {0}")]
    UnverifiedQuotient(String),
    #[error("element is not idempotent modulo the ideal: {0}")]
    NotIdempotentModulo(String),
    #[error("family is not orthogonal modulo the ideal: {0}")]
    NotOrthogonalModulo(String),
    #[error("integral space has dimension {0}, expected 1")]
    IntegralDimension(usize),
    #[error("enveloping algebra is not semisimple: {0}")]
    NotSemisimple(String),
    #[error("subspaces do not form an ascending chain of tori: {0}")]
    NotAChain(String),
    #[error(transparent)]
    Lie(#[from] LieError),
}

/// Which multiplications to close under when generating an ideal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sides {
    Left,
    Right,
    TwoSided,
}

/// Outcome of iterating S, S², S³, … inside u(L).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NilpotencyResult {
    /// The least k with S^k = 0.
    Nilpotent { index: u32 },
    /// The power chain stabilized at a nonzero subspace of this dimension.
    NotNilpotent { stabilized_dim: usize },
}

impl NilpotencyResult {
    pub fn index(&self) -> Option<u32> {
        match self {
            NilpotencyResult::Nilpotent { index } => Some(*index),
            NilpotencyResult::NotNilpotent { .. } => None,
        }
    }
}

/// The ideal of u(L) generated by the given elements: the span is closed
/// under multiplication by the algebra generators on the requested sides,
/// which generate all of u(L) multiplicatively.
pub fn ideal_closure(
    alg: &LieAlgebra,
    gens: &[EnvElement],
    sides: Sides,
) -> Result<Subspace, LieError> {
    let n = envalg::dense_dim(alg)?;
    let mut space = Subspace::zero(alg.field(), n);
    for g in gens {
        assert!(*g.algebra() == *alg, "algebra mismatch");
        space.insert(&g.to_coords()?);
    }
    loop {
        let rows: Vec<Vec<Scalar>> = space.basis().to_vec();
        let mut grew = false;
        for row in &rows {
            let v = EnvElement::from_coords(alg, row)?;
            for i in 0..alg.dim() {
                let x = EnvElement::generator(alg, i);
                if matches!(sides, Sides::Left | Sides::TwoSided) {
                    grew |= space.insert(&x.mul(&v).to_coords()?);
                }
                if matches!(sides, Sides::Right | Sides::TwoSided) {
                    grew |= space.insert(&v.mul(&x).to_coords()?);
                }
            }
        }
        if !grew {
            return Ok(space);
        }
    }
}

/// Power chain of a subspace of u(L). For an ideal the chain is
/// decreasing, so the first repeat is a stable value and decides
/// non-nilpotency; a zero power gives the exact index. The zero subspace
/// has index 1.
pub fn nilpotency_index(alg: &LieAlgebra, s: &Subspace) -> Result<NilpotencyResult, LieError> {
    let n = envalg::dense_dim(alg)?;
    assert_eq!(s.ambient(), n, "subspace must live in dense coordinates");
    if s.dim() == 0 {
        return Ok(NilpotencyResult::Nilpotent { index: 1 });
    }
    let mut current = s.clone();
    let mut k = 1u32;
    let cap = n as u32 + 2;
    loop {
        let next = envalg::subspace_mul(alg, &current, s)?;
        if next.dim() == 0 {
            return Ok(NilpotencyResult::Nilpotent { index: k + 1 });
        }
        let repeated = next.dim() == current.dim() && current.contains_subspace(&next);
        if repeated || k >= cap {
            return Ok(NilpotencyResult::NotNilpotent {
                stabilized_dim: next.dim(),
            });
        }
        current = next;
        k += 1;
    }
}

/// How a radical was certified.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RadicalMethod {
    /// Stabilized kernel of the iterated power map on a commutative u(L);
    /// `saturation_power` is the first r with ker(u ↦ u^{p^r}) maximal.
    CommutativeFrobeniusKernel { saturation_power: u32 },
    /// Two-sided ideal generated by a p-nil restricted ideal of L whose
    /// quotient was certified semiprimitive.
    StructuralPNilIdeal {
        p_nil_dim: usize,
        quotient_dim: usize,
    },
}

/// A Jacobson radical together with the evidence establishing it: the
/// certified nilpotency index of the radical and the method used to
/// certify maximality.
#[derive(Debug, Clone)]
pub struct RadicalCertificate {
    pub alg: LieAlgebra,
    /// The radical as a subspace of the dense coordinate space of u(L).
    pub radical: Subspace,
    pub nil_index: u32,
    pub method: RadicalMethod,
}

impl RadicalCertificate {
    pub fn contains(&self, u: &EnvElement) -> Result<bool, LieError> {
        Ok(self.radical.contains(&u.to_coords()?))
    }

    /// Canonical representative of u modulo the radical.
    pub fn reduce(&self, u: &EnvElement) -> Result<EnvElement, LieError> {
        EnvElement::from_coords(&self.alg, &self.radical.reduce(&u.to_coords()?))
    }
}

/// Kernel of u ↦ u^{p^r} on a commutative u(L), in dense coordinates.
fn frobenius_kernel(alg: &LieAlgebra, r: u32) -> Result<Subspace, LieError> {
    let n = envalg::dense_dim(alg)?;
    let q = (alg.p() as u64).pow(r);
    let mut columns = Vec::with_capacity(n);
    for j in 0..n {
        let m = EnvElement::monomial_element(alg, Monomial::from_index(j, alg.p(), alg.dim()));
        columns.push(m.pow(q).to_coords()?);
    }
    Ok(linalg::semilinear_nullspace(alg.field(), &columns, r))
}

/// Jacobson radical of u(L) with a certificate.
///
/// For abelian L the commutative route runs unconditionally. Otherwise a
/// p-nil restricted ideal P of L drives the structural route; when none is
/// supplied, the p-radical of L is computed and used. Every route either
/// returns a fully certified radical or a typed refusal — never an
/// unverified answer.
pub fn jacobson_radical(
    alg: &LieAlgebra,
    supplied: Option<&RestrictedSubspace>,
) -> Result<RadicalCertificate, RadicalError> {
    if alg.is_abelian() && supplied.is_none() {
        return commutative_radical(alg);
    }
    let owned;
    let p_ideal = match supplied {
        Some(p) => p,
        None => {
            owned = alg.p_radical()?;
            &owned
        }
    };
    structural_radical(alg, p_ideal)
}

fn commutative_radical(alg: &LieAlgebra) -> Result<RadicalCertificate, RadicalError> {
    let mut r = 1u32;
    let mut kernel = frobenius_kernel(alg, 1)?;
    loop {
        let next = frobenius_kernel(alg, r + 1)?;
        // Kernels of successive power maps are nested, so equal dimension
        // means the chain of nilpotents of bounded order has saturated.
        if next.dim() == kernel.dim() {
            break;
        }
        kernel = next;
        r += 1;
    }
    let nil = nilpotency_index(alg, &kernel)?;
    let NilpotencyResult::Nilpotent { index } = nil else {
        return Err(RadicalError::UnverifiedQuotient(
            "stabilized power-map kernel failed its nilpotency certification".into(),
        ));
    };
    // Reduced-quotient certificate: the kernel of u ↦ (u^p mod J) must be
    // J itself, i.e. no new nilpotents exist modulo J.
    let n = envalg::dense_dim(alg)?;
    let mut columns = Vec::with_capacity(n);
    for j in 0..n {
        let m = EnvElement::monomial_element(alg, Monomial::from_index(j, alg.p(), alg.dim()));
        columns.push(kernel.reduce(&m.pow(alg.p() as u64).to_coords()?));
    }
    let mod_kernel = linalg::semilinear_nullspace(alg.field(), &columns, 1);
    if mod_kernel.dim() != kernel.dim() {
        return Err(RadicalError::UnverifiedQuotient(format!(
            "quotient is not reduced: kernel of the power map modulo J has dimension {}, J has dimension {}",
            mod_kernel.dim(),
            kernel.dim()
        )));
    }
    Ok(RadicalCertificate {
        alg: alg.clone(),
        radical: kernel,
        nil_index: index,
        method: RadicalMethod::CommutativeFrobeniusKernel {
            saturation_power: r,
        },
    })
}

fn structural_radical(
    alg: &LieAlgebra,
    p_ideal: &RestrictedSubspace,
) -> Result<RadicalCertificate, RadicalError> {
    assert!(*p_ideal.algebra() == *alg, "algebra mismatch");
    if !p_ideal.is_ideal() || !p_ideal.p_closed() {
        return Err(RadicalError::NotPNilIdeal(
            "subspace is not a restricted ideal".into(),
        ));
    }
    match alg.p_nil_index(p_ideal)? {
        Some(_) => {}
        None => {
            return Err(RadicalError::NotPNilIdeal(
                "augmentation ideal of the subalgebra is not nilpotent".into(),
            ))
        }
    }

    // The ideal P·u(L) = u(L)·P, generated two-sidedly by P in u(L).
    let gens: Vec<EnvElement> = p_ideal
        .space()
        .basis()
        .iter()
        .map(|row| {
            alg.element(row.clone())
                .map(|e| EnvElement::from_lie(&e))
        })
        .collect::<Result<_, _>>()?;
    let ideal = ideal_closure(alg, &gens, Sides::TwoSided)?;
    let nil = nilpotency_index(alg, &ideal)?;
    let NilpotencyResult::Nilpotent { index } = nil else {
        return Err(RadicalError::NotPNilIdeal(
            "generated ideal failed its nilpotency certification".into(),
        ));
    };

    // u(L)/I must be u(L/P): compare dimensions exactly.
    let (quot, _) = alg.quotient(p_ideal)?;
    let n = envalg::dense_dim(alg)?;
    let quot_dim = envalg::dense_dim(&quot)?;
    if n - ideal.dim() != quot_dim {
        return Err(RadicalError::UnverifiedQuotient(format!(
            "dimension mismatch: dim u(L) - dim I = {}, dim u(L/P) = {}",
            n - ideal.dim(),
            quot_dim
        )));
    }

    // The radical equals I exactly when u(L/P) is semiprimitive.
    if !quot.is_abelian() {
        return Err(RadicalError::UnverifiedQuotient(format!(
            "quotient of dimension {} is not abelian; no certification route applies",
            quot.dim()
        )));
    }
    let quot_radical = commutative_radical(&quot)?;
    if quot_radical.radical.dim() != 0 {
        return Err(RadicalError::UnverifiedQuotient(format!(
            "quotient enveloping algebra has a radical of dimension {}",
            quot_radical.radical.dim()
        )));
    }

    Ok(RadicalCertificate {
        alg: alg.clone(),
        radical: ideal,
        nil_index: index,
        method: RadicalMethod::StructuralPNilIdeal {
            p_nil_dim: p_ideal.dim(),
            quotient_dim: quot.dim(),
        },
    })
}

/// Lift an idempotent along a nil ideal N of u(L) by powering: for
/// e² ≡ e (mod N) and p^r at least the nilpotency index of N, the element
/// g = e^{p^r} satisfies g² = g exactly and g ≡ e (mod N), because
/// g² − g = (e² − e)^{p^r} ∈ N^{p^r} = 0 in characteristic p.
pub fn lift_idempotent(
    e: &EnvElement,
    n: &Subspace,
    nil_index: u32,
) -> Result<EnvElement, RadicalError> {
    let alg = e.algebra().clone();
    let defect = e.mul(e).sub(e);
    if !n.contains(&defect.to_coords()?) {
        return Err(RadicalError::NotIdempotentModulo(format!(
            "e^2 - e = {defect} is outside the ideal"
        )));
    }
    let p = alg.p() as u64;
    let mut q = 1u64;
    while q < nil_index as u64 {
        q *= p;
    }
    let g = e.pow(q);
    assert_eq!(g.mul(&g), g, "powered element must be exactly idempotent");
    assert!(
        n.contains(&g.sub(e).to_coords()?),
        "lift must agree with the original modulo the ideal"
    );
    Ok(g)
}

/// Lift a family of pairwise-orthogonal idempotents modulo a nil ideal to
/// an exactly orthogonal family of idempotents. Each element is first
/// corrected to annihilate the already-lifted part, then powered. If the
/// input family is complete modulo N (sums to 1), the lifted family sums
/// to 1 exactly: the difference is an idempotent inside a nil ideal.
pub fn lift_orthogonal_family(
    es: &[EnvElement],
    n: &Subspace,
    nil_index: u32,
) -> Result<Vec<EnvElement>, RadicalError> {
    if es.is_empty() {
        return Ok(Vec::new());
    }
    let alg = es[0].algebra().clone();
    for (i, a) in es.iter().enumerate() {
        for (j, b) in es.iter().enumerate() {
            if i != j && !n.contains(&a.mul(b).to_coords()?) {
                return Err(RadicalError::NotOrthogonalModulo(format!(
                    "product of members {i} and {j} is outside the ideal"
                )));
            }
        }
    }
    let one = EnvElement::one(&alg);
    let mut lifted: Vec<EnvElement> = Vec::with_capacity(es.len());
    for e in es {
        let mut sum = EnvElement::zero(&alg);
        for g in &lifted {
            sum = sum.add(g);
        }
        let mask = one.sub(&sum);
        // The corrected element stays idempotent mod N and is annihilated
        // exactly by every already-lifted idempotent.
        let corrected = mask.mul(e).mul(&mask);
        let g = lift_idempotent(&corrected, n, nil_index)?;
        lifted.push(g);
    }
    for (i, a) in lifted.iter().enumerate() {
        assert_eq!(a.mul(a), *a, "lifted member {i} must be idempotent");
        for (j, b) in lifted.iter().enumerate() {
            if i != j {
                assert!(
                    a.mul(b).is_zero(),
                    "lifted members {i} and {j} must be exactly orthogonal"
                );
            }
        }
    }
    let mut total = EnvElement::zero(&alg);
    for g in &lifted {
        total = total.add(g);
    }
    if n.contains(&one.sub(&total).to_coords()?) {
        // 1 − Σg is an idempotent lying in a nil ideal, hence zero.
        assert!(
            total.is_one(),
            "complete family must lift to an exact decomposition of 1"
        );
    }
    Ok(lifted)
}

/// The spaces of left and right integrals of u(L): elements Λ with
/// uΛ = ε(u)Λ (respectively Λu = ε(u)Λ) for all u. Since the degree-one
/// generators satisfy ε(x) = 0 and generate u(L) multiplicatively, Λ is a
/// left integral exactly when every generator annihilates it from the
/// left, which is one stacked linear system.
#[derive(Debug, Clone)]
pub struct IntegralReport {
    pub left: Subspace,
    pub right: Subspace,
    /// Whether the two spaces coincide (unimodularity).
    pub two_sided: bool,
}

pub fn integral_space(alg: &LieAlgebra) -> Result<IntegralReport, LieError> {
    let n = envalg::dense_dim(alg)?;
    let dim_l = alg.dim();
    let mut left_rows = Matrix::zeros(alg.field(), n * dim_l.max(1), n);
    let mut right_rows = Matrix::zeros(alg.field(), n * dim_l.max(1), n);
    for g in 0..dim_l {
        let x = EnvElement::generator(alg, g);
        for j in 0..n {
            let m =
                EnvElement::monomial_element(alg, Monomial::from_index(j, alg.p(), alg.dim()));
            let lcol = x.mul(&m).to_coords()?;
            let rcol = m.mul(&x).to_coords()?;
            for i in 0..n {
                if !lcol[i].is_zero() {
                    left_rows.set(g * n + i, j, lcol[i].clone());
                }
                if !rcol[i].is_zero() {
                    right_rows.set(g * n + i, j, rcol[i].clone());
                }
            }
        }
    }
    let left = Subspace::from_vectors(alg.field(), n, &left_rows.nullspace());
    let right = Subspace::from_vectors(alg.field(), n, &right_rows.nullspace());
    let two_sided = left.dim() == right.dim()
        && left.basis().iter().all(|row| right.contains(row));
    Ok(IntegralReport {
        left,
        right,
        two_sided,
    })
}

/// Semisimplicity test by the integral criterion: u(L) is semisimple
/// exactly when the counit does not vanish on the (one-dimensional) space
/// of left integrals. On success returns the idempotent integral
/// Λ/ε(Λ).
pub fn semisimple_integral(alg: &LieAlgebra) -> Result<Option<EnvElement>, RadicalError> {
    let report = integral_space(alg)?;
    if report.left.dim() != 1 {
        return Err(RadicalError::IntegralDimension(report.left.dim()));
    }
    let lambda = EnvElement::from_coords(alg, &report.left.basis()[0])?;
    let eps = lambda.counit();
    if eps.is_zero() {
        return Ok(None);
    }
    let e = lambda.scale(&eps.inverse().expect("nonzero counit value"));
    assert_eq!(e.mul(&e), e, "normalized integral must be idempotent");
    Ok(Some(e))
}

/// Idempotent integrals of an ascending chain of tori, embedded in the
/// ambient enveloping algebra, together with the elements h_i = e_i − 1.
#[derive(Debug, Clone)]
pub struct IntegralChain {
    /// e_i: the idempotent integral of u(T_i), embedded in u(L).
    pub idempotents: Vec<EnvElement>,
    /// h_i = e_i − 1.
    pub h_elements: Vec<EnvElement>,
}

/// Build and verify the chain of idempotent integrals for nested tori
/// T_1 ⊆ T_2 ⊆ … ⊆ L. Verified exactly, with typed errors on failure:
///
/// * each T_i is a torus and each u(T_i) is semisimple with a
///   two-sided integral;
/// * each embedded e_i is idempotent and is annihilated two-sidedly by
///   the embedded augmentation ideal of u(T_i);
/// * absorption across the chain: e_i·e_j = e_j·e_i = e_j for i ≤ j,
///   equivalently (1+h_j)(1+h_i) = 1+h_j;
/// * consecutive differences h_i − h_{i+1} are idempotent.
pub fn integral_idempotent_chain(
    alg: &LieAlgebra,
    tori: &[RestrictedSubspace],
) -> Result<IntegralChain, RadicalError> {
    for win in tori.windows(2) {
        if !win[1].space().contains_subspace(win[0].space()) {
            return Err(RadicalError::NotAChain(format!(
                "a member of dimension {} does not contain its predecessor of dimension {}",
                win[1].dim(),
                win[0].dim()
            )));
        }
    }
    let one = EnvElement::one(alg);
    let mut idempotents = Vec::with_capacity(tori.len());
    for (pos, t) in tori.iter().enumerate() {
        assert!(*t.algebra() == *alg, "algebra mismatch");
        let torus_report = alg.is_torus(t)?;
        if !torus_report.is_torus() {
            return Err(RadicalError::NotAChain(format!(
                "chain member {pos} is not a torus (abelian: {}, semisimple rows: {:?})",
                torus_report.abelian, torus_report.row_semisimple
            )));
        }
        let (t_alg, t_map) = alg.subalgebra(t)?;
        let report = integral_space(&t_alg)?;
        if report.left.dim() != 1 {
            return Err(RadicalError::IntegralDimension(report.left.dim()));
        }
        if !report.two_sided {
            return Err(RadicalError::NotSemisimple(format!(
                "integrals of chain member {pos} are not two-sided"
            )));
        }
        let Some(e_local) = semisimple_integral(&t_alg)? else {
            return Err(RadicalError::NotSemisimple(format!(
                "counit vanishes on the integral of chain member {pos}"
            )));
        };
        let e = t_map.embed_env(&e_local);
        assert_eq!(e.mul(&e), e, "embedded integral must stay idempotent");
        // Two-sided annihilation by the embedded augmentation ideal.
        for row in t.space().basis() {
            let v = EnvElement::from_lie(&alg.element(row.clone())?);
            if !v.mul(&e).is_zero() || !e.mul(&v).is_zero() {
                return Err(RadicalError::NotSemisimple(format!(
                    "embedded integral of member {pos} is not annihilated by its torus"
                )));
            }
        }
        idempotents.push(e);
    }
    for i in 0..idempotents.len() {
        for j in i..idempotents.len() {
            let (ei, ej) = (&idempotents[i], &idempotents[j]);
            if ei.mul(ej) != *ej || ej.mul(ei) != *ej {
                return Err(RadicalError::NotAChain(format!(
                    "absorption e_{i}·e_{j} = e_{j} fails"
                )));
            }
        }
    }
    let h_elements: Vec<EnvElement> = idempotents.iter().map(|e| e.sub(&one)).collect();
    for win in idempotents.windows(2) {
        let d = win[0].sub(&win[1]);
        assert_eq!(
            d.mul(&d),
            d,
            "consecutive integral differences must be idempotent"
        );
    }
    Ok(IntegralChain {
        idempotents,
        h_elements,
    })
}

/// The complete family of orthogonal primitive idempotents of u(T) for a
/// split torus T (abelian with x_i^{[p]} = x_i on the basis): the p^k
/// products of the eigenprojections e_a(x_i) = Π_{b≠a} (x_i − b)/(a − b)
/// of each generator, whose spectrum is exactly the prime field because
/// x^p = x. Returns None when the algebra is not in split-diagonal form.
/// The family is asserted orthogonal, idempotent, and complete.
pub fn split_toral_idempotents(
    alg: &LieAlgebra,
) -> Result<Option<Vec<EnvElement>>, LieError> {
    if !alg.is_abelian() {
        return Ok(None);
    }
    for i in 0..alg.dim() {
        let row = alg.pmap_row(i);
        let expected = alg.basis_element(i);
        if row != expected {
            return Ok(None);
        }
    }
    let p = alg.p();
    let count = envalg::dense_dim(alg)?;
    let one = EnvElement::one(alg);
    let mut family = Vec::with_capacity(count);
    for idx in 0..count {
        let mut digits = Vec::with_capacity(alg.dim());
        let mut rest = idx;
        for _ in 0..alg.dim() {
            digits.push((rest % p as usize) as i64);
            rest /= p as usize;
        }
        let mut e = one.clone();
        for (i, &a) in digits.iter().enumerate() {
            e = e.mul(&eigen_idempotent(alg, i, a));
        }
        family.push(e);
    }
    let mut total = EnvElement::zero(alg);
    for (i, a) in family.iter().enumerate() {
        assert_eq!(a.mul(a), *a, "eigenprojection product {i} must be idempotent");
        for b in family.iter().skip(i + 1) {
            assert!(
                a.mul(b).is_zero(),
                "distinct eigenprojection products must be orthogonal"
            );
        }
        total = total.add(a);
    }
    assert!(total.is_one(), "eigenprojections must resolve the identity");
    Ok(Some(family))
}

/// Projection of a single split-toral generator onto its eigenvalue-a
/// eigenspace: Π_{b≠a} (x_i − b)/(a − b) over the prime field.
fn eigen_idempotent(alg: &LieAlgebra, i: usize, a: i64) -> EnvElement {
    let x = EnvElement::generator(alg, i);
    let mut num = EnvElement::one(alg);
    let mut den = alg.field().one();
    for b in 0..alg.p() as i64 {
        if b == a {
            continue;
        }
        num = num.mul(&x.sub(&EnvElement::scalar(alg, &alg.field().from_int(b))));
        den = &den * &alg.field().from_int(a - b);
    }
    num.scale(&den.inverse().expect("product of nonzero residues"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::envalg::parse_env;
    use crate::scalars::Field;

    fn heisenberg() -> LieAlgebra {
        let f = Field::prime(2).unwrap();
        let zero = vec![f.zero(); 3];
        let mut z_row = zero.clone();
        z_row[2] = f.one();
        LieAlgebra::new(
            f.clone(),
            vec!["x".into(), "y".into(), "z".into()],
            vec![((0, 1), z_row)],
            vec![zero.clone(), zero.clone(), zero],
        )
        .unwrap()
    }

    /// Abelian over F_2: x^[2] = x (toral part), w^[2] = 0 (nil part).
    fn mixed_torus() -> LieAlgebra {
        let f = Field::prime(2).unwrap();
        let mk = |a: i64, b: i64| vec![f.from_int(a), f.from_int(b)];
        LieAlgebra::new(
            f.clone(),
            vec!["x".into(), "w".into()],
            vec![],
            vec![mk(1, 0), mk(0, 0)],
        )
        .unwrap()
    }

    fn borel2() -> LieAlgebra {
        let f = Field::prime(2).unwrap();
        let mk = |a: i64, b: i64| vec![f.from_int(a), f.from_int(b)];
        LieAlgebra::new(
            f.clone(),
            vec!["x".into(), "w".into()],
            vec![((0, 1), mk(0, 1))],
            vec![mk(1, 0), mk(0, 0)],
        )
        .unwrap()
    }

    fn split_torus(k: usize, p: u32) -> LieAlgebra {
        let f = Field::prime(p).unwrap();
        let labels = (1..=k).map(|i| format!("x{i}")).collect();
        let mut pmap = Vec::new();
        for i in 0..k {
            let mut row = vec![f.zero(); k];
            row[i] = f.one();
            pmap.push(row);
        }
        LieAlgebra::new(f, labels, vec![], pmap).unwrap()
    }

    fn truncated_example() -> LieAlgebra {
        let f = Field::new(2, &["t1"]).unwrap();
        let mut x_row = vec![f.zero(); 2];
        x_row[0] = f.one();
        let mut y_row = vec![f.zero(); 2];
        y_row[0] = f.var(0);
        LieAlgebra::new(
            f.clone(),
            vec!["x".into(), "y1".into()],
            vec![],
            vec![x_row, y_row],
        )
        .unwrap()
    }

    #[test]
    fn ideal_closure_of_augmentation_generators() {
        let l = heisenberg();
        let gens: Vec<EnvElement> = (0..3).map(|i| EnvElement::generator(&l, i)).collect();
        let ideal = ideal_closure(&l, &gens, Sides::TwoSided).unwrap();
        assert_eq!(ideal.dim(), 7);
        let one = EnvElement::one(&l);
        assert!(!ideal.contains(&one.to_coords().unwrap()));
    }

    #[test]
    fn nilpotency_index_of_heisenberg_augmentation_ideal() {
        let l = heisenberg();
        let omega = envalg::augmentation_subspace(&l).unwrap();
        assert_eq!(
            nilpotency_index(&l, &omega).unwrap(),
            NilpotencyResult::Nilpotent { index: 5 }
        );
        let zero = Subspace::zero(l.field(), 8);
        assert_eq!(
            nilpotency_index(&l, &zero).unwrap(),
            NilpotencyResult::Nilpotent { index: 1 }
        );
    }

    #[test]
    fn nilpotency_detects_idempotent_span() {
        let t = split_torus(1, 2);
        let omega = envalg::augmentation_subspace(&t).unwrap();
        assert_eq!(
            nilpotency_index(&t, &omega).unwrap(),
            NilpotencyResult::NotNilpotent { stabilized_dim: 1 }
        );
    }

    #[test]
    fn commutative_radical_of_mixed_torus() {
        let l = mixed_torus();
        let cert = jacobson_radical(&l, None).unwrap();
        assert_eq!(cert.radical.dim(), 2);
        assert_eq!(cert.nil_index, 2);
        assert!(matches!(
            cert.method,
            RadicalMethod::CommutativeFrobeniusKernel { .. }
        ));
        let w = EnvElement::generator(&l, 1);
        let xw = parse_env(&l, "x*w").unwrap();
        assert!(cert.contains(&w).unwrap());
        assert!(cert.contains(&xw).unwrap());
        assert!(!cert.contains(&EnvElement::generator(&l, 0)).unwrap());
    }

    #[test]
    fn commutative_radical_over_rational_function_field() {
        // x^[2] = x, y1^[2] = t1·x: the only nilpotents are the multiples
        // of y1·(1 + x).
        let l = truncated_example();
        let cert = jacobson_radical(&l, None).unwrap();
        assert_eq!(cert.radical.dim(), 1);
        assert_eq!(cert.nil_index, 2);
        let gen = parse_env(&l, "y1 + x*y1").unwrap();
        assert!(cert.contains(&gen).unwrap());
        assert!(!cert.contains(&parse_env(&l, "y1").unwrap()).unwrap());
    }

    #[test]
    fn commutative_radical_of_torus_is_zero() {
        let t = split_torus(2, 3);
        let cert = jacobson_radical(&t, None).unwrap();
        assert_eq!(cert.radical.dim(), 0);
        assert_eq!(cert.nil_index, 1);
    }

    #[test]
    fn structural_radical_of_borel() {
        let l = borel2();
        let cert = jacobson_radical(&l, None).unwrap();
        assert_eq!(cert.radical.dim(), 2);
        assert_eq!(cert.nil_index, 2);
        assert!(matches!(
            cert.method,
            RadicalMethod::StructuralPNilIdeal {
                p_nil_dim: 1,
                quotient_dim: 1
            }
        ));
        let w = EnvElement::generator(&l, 1);
        let xw = parse_env(&l, "x*w").unwrap();
        assert!(cert.contains(&w).unwrap());
        assert!(cert.contains(&xw).unwrap());
    }

    #[test]
    fn structural_radical_of_heisenberg_is_augmentation_ideal() {
        let l = heisenberg();
        let cert = jacobson_radical(&l, None).unwrap();
        assert_eq!(cert.radical.dim(), 7);
        assert_eq!(cert.nil_index, 5);
        let omega = envalg::augmentation_subspace(&l).unwrap();
        assert!(cert.radical.contains_subspace(&omega));
    }

    #[test]
    fn structural_radical_refuses_bad_inputs() {
        let l = borel2();
        // span{x} is a restricted subalgebra but toral, not p-nil — and in
        // fact not an ideal here.
        let toral = RestrictedSubspace::from_elements(&l, &[l.basis_element(0)]).unwrap();
        let err = jacobson_radical(&l, Some(&toral)).unwrap_err();
        assert!(matches!(err, RadicalError::NotPNilIdeal(_)), "{err}");
        // P = 0 leaves the nonabelian quotient uncertified.
        let zero = RestrictedSubspace::from_elements(&l, &[]).unwrap();
        let err = jacobson_radical(&l, Some(&zero)).unwrap_err();
        assert!(matches!(err, RadicalError::UnverifiedQuotient(_)), "{err}");
    }

    #[test]
    fn idempotent_lifting_by_powering() {
        let l = mixed_torus();
        let cert = jacobson_radical(&l, None).unwrap();
        let e = parse_env(&l, "x + w").unwrap();
        let g = lift_idempotent(&e, &cert.radical, cert.nil_index).unwrap();
        assert_eq!(g, parse_env(&l, "x").unwrap());
        // A non-idempotent input is rejected; over F_2 the quotient here
        // is Boolean, so the counterexample needs the bigger field.
        let lt = truncated_example();
        let cert_t = jacobson_radical(&lt, None).unwrap();
        let bad = parse_env(&lt, "y1").unwrap();
        assert!(matches!(
            lift_idempotent(&bad, &cert_t.radical, cert_t.nil_index),
            Err(RadicalError::NotIdempotentModulo(_))
        ));
    }

    #[test]
    fn orthogonal_family_lifts_to_decomposition_of_one() {
        let l = mixed_torus();
        let cert = jacobson_radical(&l, None).unwrap();
        let e1 = parse_env(&l, "x + w").unwrap();
        let e2 = parse_env(&l, "1 + x + x*w").unwrap();
        let lifted = lift_orthogonal_family(&[e1, e2], &cert.radical, cert.nil_index).unwrap();
        assert_eq!(lifted.len(), 2);
        let sum = lifted[0].add(&lifted[1]);
        assert!(sum.is_one());
        assert!(lifted[0].mul(&lifted[1]).is_zero());
    }

    #[test]
    fn integrals_of_split_tori() {
        // p = 2: Λ = 1 + x, ε(Λ) = 1, semisimple.
        let t = split_torus(1, 2);
        let report = integral_space(&t).unwrap();
        assert_eq!(report.left.dim(), 1);
        assert!(report.two_sided);
        let e = semisimple_integral(&t).unwrap().unwrap();
        assert_eq!(e, parse_env(&t, "1 + x1").unwrap());
        // p = 3: Λ = 1 + 2x², counit 1.
        let t3 = split_torus(1, 3);
        let e3 = semisimple_integral(&t3).unwrap().unwrap();
        assert_eq!(e3, parse_env(&t3, "1 + 2*x1^2").unwrap());
    }

    #[test]
    fn integral_detects_non_semisimple_envelope() {
        // Strongly abelian one-dimensional: u = F[w]/(w²), Λ = w,
        // ε(Λ) = 0 — not semisimple.
        let f = Field::prime(2).unwrap();
        let l = LieAlgebra::new(f.clone(), vec!["w".into()], vec![], vec![vec![f.zero()]])
            .unwrap();
        let report = integral_space(&l).unwrap();
        assert_eq!(report.left.dim(), 1);
        assert!(semisimple_integral(&l).unwrap().is_none());
    }

    #[test]
    fn integral_chain_for_nested_split_tori() {
        let t = split_torus(2, 2);
        let t1 = RestrictedSubspace::from_elements(&t, &[t.basis_element(0)]).unwrap();
        let t2 = RestrictedSubspace::from_elements(
            &t,
            &[t.basis_element(0), t.basis_element(1)],
        )
        .unwrap();
        let chain = integral_idempotent_chain(&t, &[t1, t2]).unwrap();
        assert_eq!(chain.idempotents.len(), 2);
        assert_eq!(chain.idempotents[0], parse_env(&t, "1 + x1").unwrap());
        assert_eq!(
            chain.idempotents[1],
            parse_env(&t, "1 + x1 + x2 + x1*x2").unwrap()
        );
        assert_eq!(chain.h_elements[0], parse_env(&t, "x1").unwrap());
        assert_eq!(
            chain.h_elements[1],
            parse_env(&t, "x1 + x2 + x1*x2").unwrap()
        );
    }

    #[test]
    fn split_toral_idempotent_families() {
        let t = split_torus(2, 2);
        let family = split_toral_idempotents(&t).unwrap().unwrap();
        assert_eq!(family.len(), 4);
        assert!(family.contains(&parse_env(&t, "1 + x1 + x2 + x1*x2").unwrap()));
        assert!(family.contains(&parse_env(&t, "x1*x2").unwrap()));
        let t3 = split_torus(1, 3);
        let family3 = split_toral_idempotents(&t3).unwrap().unwrap();
        assert_eq!(family3.len(), 3);
        // The zero-dimensional algebra: the single idempotent 1.
        let f = Field::prime(2).unwrap();
        let zero_alg = LieAlgebra::new(f, vec![], vec![], vec![]).unwrap();
        let trivial = split_toral_idempotents(&zero_alg).unwrap().unwrap();
        assert_eq!(trivial.len(), 1);
        assert!(trivial[0].is_one());
        // Non-split p-map rows yield None.
        assert!(split_toral_idempotents(&mixed_torus()).unwrap().is_none());
        assert!(split_toral_idempotents(&heisenberg()).unwrap().is_none());
    }

    #[test]
    fn integral_chain_rejects_non_nested_members() {
        let t = split_torus(2, 2);
        let a = RestrictedSubspace::from_elements(&t, &[t.basis_element(0)]).unwrap();
        let b = RestrictedSubspace::from_elements(&t, &[t.basis_element(1)]).unwrap();
        assert!(matches!(
            integral_idempotent_chain(&t, &[a, b]),
            Err(RadicalError::NotAChain(_))
        ));
    }
}
