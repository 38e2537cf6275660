//! Restricted Lie algebras over the scalar fields, presented by a basis,
//! structure constants for brackets of basis pairs, and images of basis
//! elements under the p-map.
//!
//! The p-power of a general element is computed inside the enveloping
//! algebra (`u^[p]` is the plain p-th power of a degree-one element there),
//! so nothing in this module depends on closed-form p-power expansions.
//! All higher operations — restricted closures, p-nilpotency certificates,
//! torus tests, the p-radical, quotients — reduce to exact linear algebra
//! over the coefficient field.

use crate::envalg::{self, EnvElement, Monomial};
use crate::linalg::{self, Matrix, Subspace};
use crate::scalars::{Field, Scalar, ScalarError};
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LieError {
    #[error("invalid basis label `{0}` (labels must be identifiers)")]
    BadLabel(String),
    #[error("duplicate basis label `{0}`")]
    DuplicateLabel(String),
    #[error("basis label `{0}` collides with a field variable")]
    LabelIsVariable(String),
    #[error("bracket pair ({i},{j}) invalid: need 0 <= i < j < dim")]
    BadBracketPair { i: usize, j: usize },
    #[error("bracket pair ({i},{j}) listed twice")]
    DuplicateBracketPair { i: usize, j: usize },
    #[error("coefficient vector has length {got}, expected {want}")]
    BadCoeffLength { got: usize, want: usize },
    #[error("scalar belongs to field {got}, algebra is over {want}")]
    FieldMismatch { got: String, want: String },
    #[error("element belongs to a different algebra")]
    AlgebraMismatch,
    #[error("algebra fails validation: {0}")]
    InvalidAlgebra(String),
    #[error("p-th power left the degree-one span: {0}")]
    NotRestricted(String),
    #[error("element is not of degree one: {0}")]
    NotDegreeOne(String),
    #[error("subspace is not closed: {0}")]
    NotClosed(String),
    #[error("subspace is not a restricted ideal: {0}")]
    NotAnIdeal(String),
    #[error("unsupported algebra class: {0}")]
    UnsupportedClass(String),
    #[error("dim u(L) = {p}^{n} exceeds the supported bound {bound} for this operation")]
    TooLarge { p: u32, n: usize, bound: u64 },
    #[error("parse error at byte {pos}: {msg}")]
    ParseElement { pos: usize, msg: String },
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

pub(crate) struct AlgebraInner {
    pub(crate) field: Field,
    pub(crate) basis: Vec<String>,
    /// Coordinates of [x_i, x_j] for i < j; absent pairs bracket to zero.
    pub(crate) brackets: BTreeMap<(usize, usize), Vec<Scalar>>,
    /// Coordinates of x_i^[p], one row per basis element.
    pub(crate) pmap: Vec<Vec<Scalar>>,
    /// Straightening cache: normal form of x_i * (normal monomial).
    pub(crate) straighten: Mutex<HashMap<(usize, Monomial), BTreeMap<Monomial, Scalar>>>,
}

impl fmt::Debug for AlgebraInner {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AlgebraInner")
            .field("field", &self.field.to_string())
            .field("basis", &self.basis)
            .finish()
    }
}

/// Shared handle to a restricted Lie algebra. Clones are cheap; equality is
/// instance identity, so elements always know exactly which algebra they
/// live in.
#[derive(Debug, Clone)]
pub struct LieAlgebra(pub(crate) Arc<AlgebraInner>);

impl PartialEq for LieAlgebra {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }
}
impl Eq for LieAlgebra {}

impl LieAlgebra {
    /// Build an algebra from structure data. This validates shapes (index
    /// ranges, vector lengths, label hygiene) but not the Lie axioms; run
    /// [`LieAlgebra::validate`] for those.
    pub fn new(
        field: Field,
        basis: Vec<String>,
        brackets: Vec<((usize, usize), Vec<Scalar>)>,
        pmap: Vec<Vec<Scalar>>,
    ) -> Result<LieAlgebra, LieError> {
        let n = basis.len();
        let mut seen = std::collections::BTreeSet::new();
        for label in &basis {
            if !is_identifier(label) {
                return Err(LieError::BadLabel(label.clone()));
            }
            if field.vars().iter().any(|v| v == label) {
                return Err(LieError::LabelIsVariable(label.clone()));
            }
            if !seen.insert(label.clone()) {
                return Err(LieError::DuplicateLabel(label.clone()));
            }
        }
        let mut table = BTreeMap::new();
        for ((i, j), coeffs) in brackets {
            if i >= j || j >= n {
                return Err(LieError::BadBracketPair { i, j });
            }
            check_coeffs(&field, &coeffs, n)?;
            if table.insert((i, j), coeffs).is_some() {
                return Err(LieError::DuplicateBracketPair { i, j });
            }
        }
        if pmap.len() != n {
            return Err(LieError::BadCoeffLength {
                got: pmap.len(),
                want: n,
            });
        }
        for row in &pmap {
            check_coeffs(&field, row, n)?;
        }
        Ok(LieAlgebra(Arc::new(AlgebraInner {
            field,
            basis,
            brackets: table,
            pmap,
            straighten: Mutex::new(HashMap::new()),
        })))
    }

    pub fn field(&self) -> &Field {
        &self.0.field
    }

    pub fn p(&self) -> u32 {
        self.0.field.p()
    }

    pub fn dim(&self) -> usize {
        self.0.basis.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.0.basis
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.0.basis.iter().position(|b| b == label)
    }

    /// dim u(L) = p^dim as a u64, or None on overflow.
    pub fn env_dim(&self) -> Option<u64> {
        (self.p() as u64).checked_pow(u32::try_from(self.dim()).ok()?)
    }

    pub fn zero_element(&self) -> LieElement {
        LieElement {
            alg: self.clone(),
            coords: vec![self.field().zero(); self.dim()],
        }
    }

    pub fn basis_element(&self, i: usize) -> LieElement {
        assert!(i < self.dim());
        let mut e = self.zero_element();
        e.coords[i] = self.field().one();
        e
    }

    pub fn element(&self, coords: Vec<Scalar>) -> Result<LieElement, LieError> {
        check_coeffs(self.field(), &coords, self.dim())?;
        Ok(LieElement {
            alg: self.clone(),
            coords,
        })
    }

    /// Parse an element expression; it must be a linear combination of
    /// basis labels (degree one, no constant term).
    pub fn parse_element(&self, src: &str) -> Result<LieElement, LieError> {
        envalg::parse_env(self, src)?.as_lie()
    }

    /// Coordinates of `[x_i, x_j]` for arbitrary index order.
    pub(crate) fn bracket_of_generators(&self, i: usize, j: usize) -> Vec<Scalar> {
        let zero_row = || vec![self.field().zero(); self.dim()];
        if i == j {
            return zero_row();
        }
        let (a, b, flip) = if i < j { (i, j, false) } else { (j, i, true) };
        match self.0.brackets.get(&(a, b)) {
            None => zero_row(),
            Some(row) if flip => row.iter().map(|c| -c).collect(),
            Some(row) => row.clone(),
        }
    }

    pub fn bracket(&self, u: &LieElement, v: &LieElement) -> LieElement {
        assert!(u.alg == *self && v.alg == *self, "algebra mismatch");
        let mut out = self.zero_element();
        for ((i, j), row) in &self.0.brackets {
            // [u, v] picks up (u_i v_j - u_j v_i) · [x_i, x_j].
            let c = &(&u.coords[*i] * &v.coords[*j]) - &(&u.coords[*j] * &v.coords[*i]);
            if c.is_zero() {
                continue;
            }
            for (k, t) in row.iter().enumerate() {
                if !t.is_zero() {
                    out.coords[k] = &out.coords[k] + &(&c * t);
                }
            }
        }
        out
    }

    /// Matrix of `ad u`: column j holds the coordinates of `[u, x_j]`.
    pub fn ad_matrix(&self, u: &LieElement) -> Matrix {
        let n = self.dim();
        let mut m = Matrix::zeros(self.field(), n, n);
        for j in 0..n {
            let col = self.bracket(u, &self.basis_element(j));
            for i in 0..n {
                m.set(i, j, col.coords[i].clone());
            }
        }
        m
    }

    pub fn pmap_row(&self, i: usize) -> LieElement {
        LieElement {
            alg: self.clone(),
            coords: self.0.pmap[i].clone(),
        }
    }

    pub fn is_abelian(&self) -> bool {
        self.0
            .brackets
            .values()
            .all(|row| row.iter().all(Scalar::is_zero))
    }

    /// The r-fold iterated p-power `u^[p]^r`, computed in u(L). Fails with a
    /// typed error if a power leaves the degree-one span, which can only
    /// happen when the structure data violates the restricted-algebra
    /// axioms.
    pub fn p_power(&self, u: &LieElement, r: u32) -> Result<LieElement, LieError> {
        assert!(u.alg == *self, "algebra mismatch");
        let mut v = u.clone();
        for _ in 0..r {
            let env = EnvElement::from_lie(&v).pow(self.p() as u64);
            v = env
                .as_lie()
                .map_err(|e| LieError::NotRestricted(e.to_string()))?;
        }
        Ok(v)
    }

    /// Axiom validation: Jacobi on basis triples, `(ad x)^p = ad(x^[p])` on
    /// the basis, and agreement of p-th powers in u(L) with the stored
    /// p-map rows.
    pub fn validate(&self) -> ValidationReport {
        let mut checks = Vec::new();
        checks.push(ValidationCheck {
            name: "bracket_table_shape".into(),
            pass: true,
            detail: "stored pairs are i<j with matching lengths; antisymmetry and [x,x]=0 hold by construction".into(),
        });

        let n = self.dim();
        let mut jacobi_pass = true;
        let mut jacobi_detail = String::from("[[x_i,x_j],x_k] + [[x_j,x_k],x_i] + [[x_k,x_i],x_j] = 0 on all basis triples");
        'jacobi: for i in 0..n {
            for j in (i + 1)..n {
                for k in (j + 1)..n {
                    let (a, b, c) = (
                        self.basis_element(i),
                        self.basis_element(j),
                        self.basis_element(k),
                    );
                    let s = self
                        .bracket(&self.bracket(&a, &b), &c)
                        .add(&self.bracket(&self.bracket(&b, &c), &a))
                        .add(&self.bracket(&self.bracket(&c, &a), &b));
                    if !s.is_zero() {
                        jacobi_pass = false;
                        jacobi_detail = format!(
                            "Jacobi fails on ({}, {}, {}): sum = {}",
                            self.0.basis[i], self.0.basis[j], self.0.basis[k], s
                        );
                        break 'jacobi;
                    }
                }
            }
        }
        checks.push(ValidationCheck {
            name: "jacobi".into(),
            pass: jacobi_pass,
            detail: jacobi_detail,
        });

        let mut ad_pass = true;
        let mut ad_detail =
            String::from("(ad x_i)^p equals ad(x_i^[p]) as matrices for every basis element");
        for i in 0..n {
            let ad_i = self.ad_matrix(&self.basis_element(i));
            let mut power = Matrix::identity(self.field(), n);
            for _ in 0..self.p() {
                power = ad_i.mul(&power);
            }
            let ad_pi = self.ad_matrix(&self.pmap_row(i));
            if power != ad_pi {
                ad_pass = false;
                ad_detail = format!(
                    "(ad {})^{} differs from ad({}^[p])",
                    self.0.basis[i],
                    self.p(),
                    self.0.basis[i]
                );
                break;
            }
        }
        checks.push(ValidationCheck {
            name: "ad_compatibility".into(),
            pass: ad_pass,
            detail: ad_detail,
        });

        let mut env_pass = true;
        let mut env_detail =
            String::from("x_i^p computed in u(L) equals the stored p-map image for every basis element");
        for i in 0..n {
            // Literal repeated multiplication, not repeated squaring: on
            // intentionally broken tables the rewriting need not be
            // associative, and this form is the definitional one.
            let gen = EnvElement::generator(self, i);
            let mut acc = EnvElement::one(self);
            for _ in 0..self.p() {
                acc = &gen * &acc;
            }
            let expected = EnvElement::from_lie(&self.pmap_row(i));
            if acc != expected {
                env_pass = false;
                env_detail = format!(
                    "{}^{} = {} in u(L), but the p-map row says {}",
                    self.0.basis[i],
                    self.p(),
                    acc,
                    expected
                );
                break;
            }
        }
        checks.push(ValidationCheck {
            name: "envelope_power_consistency".into(),
            pass: env_pass,
            detail: env_detail,
        });

        ValidationReport { checks }
    }

    pub fn is_valid(&self) -> bool {
        self.validate().pass()
    }

    /// Smallest restricted subalgebra containing the generators: closure
    /// under brackets of members and under the p-map.
    pub fn restricted_closure(&self, gens: &[LieElement]) -> Result<RestrictedSubspace, LieError> {
        let mut space = Subspace::zero(self.field(), self.dim());
        for g in gens {
            assert!(g.alg == *self, "algebra mismatch");
            space.insert(&g.coords);
        }
        loop {
            let rows: Vec<Vec<Scalar>> = space.basis().to_vec();
            let mut grew = false;
            for a in &rows {
                let ea = self.element(a.clone())?;
                for b in &rows {
                    let eb = self.element(b.clone())?;
                    grew |= space.insert(&self.bracket(&ea, &eb).coords);
                }
                grew |= space.insert(&self.p_power(&ea, 1)?.coords);
            }
            if !grew {
                break;
            }
        }
        RestrictedSubspace::new(self, space)
    }

    /// Smallest restricted ideal containing the generators: closure under
    /// brackets with the whole algebra and under the p-map.
    pub fn restricted_ideal_closure(
        &self,
        gens: &[LieElement],
    ) -> Result<RestrictedSubspace, LieError> {
        let mut space = Subspace::zero(self.field(), self.dim());
        for g in gens {
            assert!(g.alg == *self, "algebra mismatch");
            space.insert(&g.coords);
        }
        loop {
            let rows: Vec<Vec<Scalar>> = space.basis().to_vec();
            let mut grew = false;
            for a in &rows {
                let ea = self.element(a.clone())?;
                for k in 0..self.dim() {
                    grew |= space
                        .insert(&self.bracket(&self.basis_element(k), &ea).coords);
                }
                grew |= space.insert(&self.p_power(&ea, 1)?.coords);
            }
            if !grew {
                break;
            }
        }
        RestrictedSubspace::new(self, space)
    }

    /// p-nilpotency of a single element, with the minimal number of p-power
    /// steps as witness. `⟨u⟩_p` is abelian and spanned by the iterated
    /// p-powers of u; if u is p-nilpotent its iterates up to the first zero
    /// are linearly independent, so the step count is bounded by
    /// dim ⟨u⟩_p and the search below is exhaustive.
    pub fn is_p_nilpotent(&self, u: &LieElement) -> Result<PNilpotence, LieError> {
        let closure = self.restricted_closure(std::slice::from_ref(u))?;
        let d = closure.dim() as u32;
        if u.is_zero() {
            return Ok(PNilpotence::Nilpotent { steps: 0 });
        }
        let mut v = u.clone();
        for k in 1..=d {
            v = self.p_power(&v, 1)?;
            if v.is_zero() {
                return Ok(PNilpotence::Nilpotent { steps: k });
            }
        }
        Ok(PNilpotence::NotNilpotent {
            closure_dim: d as usize,
        })
    }

    /// Torus test for a restricted subspace: abelian, and every basis row t
    /// lies in the restricted closure of its own p-power.
    pub fn is_torus(&self, s: &RestrictedSubspace) -> Result<TorusReport, LieError> {
        assert!(s.alg == *self, "algebra mismatch");
        let rows = s.space.basis();
        let mut abelian = true;
        'outer: for a in rows {
            for b in rows {
                let br = self.bracket(&self.element(a.clone())?, &self.element(b.clone())?);
                if !br.is_zero() {
                    abelian = false;
                    break 'outer;
                }
            }
        }
        let mut semisimple_rows = Vec::new();
        for a in rows {
            let t = self.element(a.clone())?;
            let power = self.p_power(&t, 1)?;
            let closure = self.restricted_closure(&[power])?;
            semisimple_rows.push(closure.space.contains(&t.coords));
        }
        Ok(TorusReport {
            abelian,
            row_semisimple: semisimple_rows,
        })
    }

    /// Kernel of `u ↦ u^[p]^r` on an abelian algebra, as a subspace of L.
    pub fn semilinear_kernel(&self, r: u32) -> Result<Subspace, LieError> {
        if !self.is_abelian() {
            return Err(LieError::UnsupportedClass(
                "semilinear kernels are defined for abelian algebras only".into(),
            ));
        }
        let mut columns = Vec::with_capacity(self.dim());
        for k in 0..self.dim() {
            columns.push(self.p_power(&self.basis_element(k), r)?.coords);
        }
        Ok(linalg::semilinear_nullspace(self.field(), &columns, r))
    }

    /// The p-radical O_p(L): the largest p-nil restricted ideal for the
    /// supported classes.
    ///
    /// * Abelian L: saturate the kernel chain of the iterated p-map.
    /// * Nonabelian L whose derived restricted closure C is p-nilpotent:
    ///   O_p(L) is the preimage of O_p(L/C), and the result is re-certified
    ///   as a p-nil restricted ideal before returning.
    ///
    /// Anything else is a typed refusal.
    pub fn p_radical(&self) -> Result<RestrictedSubspace, LieError> {
        if self.is_abelian() {
            let mut r = 1;
            let mut kernel = self.semilinear_kernel(1)?;
            loop {
                let next = self.semilinear_kernel(r + 1)?;
                // Kernels of iterates are nested, so equal dimension means
                // the chain has stabilized.
                if next.dim() == kernel.dim() {
                    break;
                }
                kernel = next;
                r += 1;
            }
            let rs = RestrictedSubspace::new(self, kernel)?;
            debug_assert!(rs.is_ideal() && rs.p_closed());
            return Ok(rs);
        }

        let mut derived = Vec::new();
        for (i, j) in self.0.brackets.keys() {
            derived.push(self.bracket(&self.basis_element(*i), &self.basis_element(*j)));
        }
        let c = self.restricted_ideal_closure(&derived)?;
        if self.p_nil_index(&c)?.is_none() {
            return Err(LieError::UnsupportedClass(
                "the restricted closure of [L,L] is not p-nilpotent; only abelian-by-p-nil algebras are supported".into(),
            ));
        }
        let (quot, map) = self.quotient(&c)?;
        debug_assert!(quot.is_abelian());
        let quot_radical = quot.p_radical()?;
        let mut total = c.space.clone();
        for row in quot_radical.space.basis() {
            total.insert(&map.lift_coords(row));
        }
        let rs = RestrictedSubspace::new(self, total)?;
        if !(rs.is_ideal() && rs.p_closed()) {
            return Err(LieError::InvalidAlgebra(
                "p-radical preimage failed closure re-verification".into(),
            ));
        }
        if self.p_nil_index(&rs)?.is_none() {
            return Err(LieError::InvalidAlgebra(
                "p-radical preimage failed the p-nilpotency re-certification".into(),
            ));
        }
        Ok(rs)
    }

    /// Certify that a restricted subalgebra is p-nil by checking that the
    /// augmentation ideal of its own enveloping algebra is nilpotent;
    /// returns the nilpotency index, or None when not p-nil.
    pub fn p_nil_index(&self, s: &RestrictedSubspace) -> Result<Option<u32>, LieError> {
        if s.space.is_zero() {
            return Ok(Some(1));
        }
        let (sub, _) = self.subalgebra(s)?;
        envalg::augmentation_nilpotency(&sub)
    }

    /// Elements whose bracket with the whole algebra spans a
    /// finite-dimensional space — all of L in finite dimension.
    pub fn fc_center(&self) -> Result<RestrictedSubspace, LieError> {
        RestrictedSubspace::new(self, Subspace::full(self.field(), self.dim()))
    }

    /// Quotient by a restricted ideal, with the projection data. The
    /// induced structure constants are re-validated and the projection is
    /// checked to be a restricted homomorphism on the basis.
    pub fn quotient(
        &self,
        ideal: &RestrictedSubspace,
    ) -> Result<(LieAlgebra, QuotientMap), LieError> {
        assert!(ideal.alg == *self, "algebra mismatch");
        if !ideal.p_closed() {
            let witness = self.closure_witness_p(ideal);
            return Err(LieError::NotAnIdeal(format!(
                "not p-closed: {witness}"
            )));
        }
        if !ideal.is_ideal() {
            let witness = self.closure_witness_bracket(ideal);
            return Err(LieError::NotAnIdeal(format!("not an ideal: {witness}")));
        }
        let complement = ideal.space.complement_indices();
        let labels: Vec<String> = complement
            .iter()
            .map(|&i| self.0.basis[i].clone())
            .collect();
        let project = |coords: &[Scalar]| -> Vec<Scalar> {
            let reduced = ideal.space.reduce(coords);
            complement.iter().map(|&i| reduced[i].clone()).collect()
        };
        let mut brackets = Vec::new();
        for (a_pos, &a) in complement.iter().enumerate() {
            for (b_pos, &b) in complement.iter().enumerate().skip(a_pos + 1) {
                let w = self.bracket(&self.basis_element(a), &self.basis_element(b));
                let coords = project(&w.coords);
                if coords.iter().any(|c| !c.is_zero()) {
                    brackets.push(((a_pos, b_pos), coords));
                }
            }
        }
        let mut pmap = Vec::new();
        for &a in &complement {
            let w = self.p_power(&self.basis_element(a), 1)?;
            pmap.push(project(&w.coords));
        }
        let quot = LieAlgebra::new(self.field().clone(), labels, brackets, pmap)?;
        let map = QuotientMap {
            source: self.clone(),
            target: quot.clone(),
            ideal_space: ideal.space.clone(),
            complement,
        };
        // The projection must be a restricted homomorphism on the basis;
        // with a genuine restricted ideal this cannot fail.
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                let lhs = map.project(&self.bracket(&self.basis_element(i), &self.basis_element(j)));
                let rhs = quot.bracket(
                    &map.project(&self.basis_element(i)),
                    &map.project(&self.basis_element(j)),
                );
                if lhs != rhs {
                    return Err(LieError::InvalidAlgebra(
                        "quotient projection is not a Lie homomorphism".into(),
                    ));
                }
            }
            let lhs = map.project(&self.p_power(&self.basis_element(i), 1)?);
            let rhs = quot.p_power(&map.project(&self.basis_element(i)), 1)?;
            if lhs != rhs {
                return Err(LieError::InvalidAlgebra(
                    "quotient projection does not commute with the p-map".into(),
                ));
            }
        }
        Ok((quot, map))
    }

    fn closure_witness_p(&self, s: &RestrictedSubspace) -> String {
        for row in s.space.basis() {
            if let Ok(e) = self.element(row.clone()) {
                if let Ok(pw) = self.p_power(&e, 1) {
                    if !s.space.contains(&pw.coords) {
                        return format!("({e})^[p] = {pw} is outside the subspace");
                    }
                }
            }
        }
        "p-closure witness not found".into()
    }

    fn closure_witness_bracket(&self, s: &RestrictedSubspace) -> String {
        for row in s.space.basis() {
            let e = self.element(row.clone()).expect("row of this algebra");
            for k in 0..self.dim() {
                let br = self.bracket(&self.basis_element(k), &e);
                if !s.space.contains(&br.coords) {
                    return format!(
                        "[{}, {}] = {} is outside the subspace",
                        self.0.basis[k], e, br
                    );
                }
            }
        }
        "bracket witness not found".into()
    }

    /// A bracket- and p-closed subspace as a standalone algebra, with the
    /// embedding data. Structure constants are read off through the
    /// echelonized rows of the subspace.
    pub fn subalgebra(
        &self,
        s: &RestrictedSubspace,
    ) -> Result<(LieAlgebra, SubalgebraMap), LieError> {
        assert!(s.alg == *self, "algebra mismatch");
        if !s.bracket_closed() {
            return Err(LieError::NotClosed(
                "subspace is not closed under brackets".into(),
            ));
        }
        if !s.p_closed() {
            return Err(LieError::NotClosed(
                "subspace is not closed under the p-map".into(),
            ));
        }
        let rows: Vec<Vec<Scalar>> = s.space.basis().to_vec();
        let d = rows.len();
        let labels = fresh_labels(d, self.field().vars());
        let coords_of = |v: &LieElement| -> Result<Vec<Scalar>, LieError> {
            s.space
                .coordinates(&v.coords)
                .ok_or_else(|| LieError::NotClosed(format!("{v} left the subspace")))
        };
        let mut brackets = Vec::new();
        for i in 0..d {
            for j in (i + 1)..d {
                let w = self.bracket(&self.element(rows[i].clone())?, &self.element(rows[j].clone())?);
                let coords = coords_of(&w)?;
                if coords.iter().any(|c| !c.is_zero()) {
                    brackets.push(((i, j), coords));
                }
            }
        }
        let mut pmap = Vec::new();
        for row in &rows {
            let w = self.p_power(&self.element(row.clone())?, 1)?;
            pmap.push(coords_of(&w)?);
        }
        let sub = LieAlgebra::new(self.field().clone(), labels, brackets, pmap)?;
        let map = SubalgebraMap {
            ambient: self.clone(),
            sub: sub.clone(),
            rows,
        };
        Ok((sub, map))
    }
}

fn check_coeffs(field: &Field, coeffs: &[Scalar], want: usize) -> Result<(), LieError> {
    if coeffs.len() != want {
        return Err(LieError::BadCoeffLength {
            got: coeffs.len(),
            want,
        });
    }
    for c in coeffs {
        if c.field() != field {
            return Err(LieError::FieldMismatch {
                got: c.field().to_string(),
                want: field.to_string(),
            });
        }
    }
    Ok(())
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Labels for derived algebras whose basis rows have no names of their own:
/// `b0, b1, ...` with the prefix lengthened until it avoids field variables.
pub(crate) fn fresh_labels(count: usize, forbidden: &[String]) -> Vec<String> {
    let mut prefix = String::from("b");
    loop {
        let labels: Vec<String> = (0..count).map(|i| format!("{prefix}{i}")).collect();
        if labels.iter().all(|l| !forbidden.contains(l)) {
            return labels;
        }
        prefix.push('b');
    }
}

/// An element of a [`LieAlgebra`], stored by coordinates in the basis.
#[derive(Debug, Clone, PartialEq)]
pub struct LieElement {
    pub(crate) alg: LieAlgebra,
    pub(crate) coords: Vec<Scalar>,
}

impl LieElement {
    pub fn algebra(&self) -> &LieAlgebra {
        &self.alg
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Scalar::is_zero)
    }

    pub fn add(&self, other: &LieElement) -> LieElement {
        assert!(self.alg == other.alg, "algebra mismatch");
        LieElement {
            alg: self.alg.clone(),
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &LieElement) -> LieElement {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> LieElement {
        LieElement {
            alg: self.alg.clone(),
            coords: self.coords.iter().map(|a| -a).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> LieElement {
        LieElement {
            alg: self.alg.clone(),
            coords: self.coords.iter().map(|a| a * c).collect(),
        }
    }
}

impl fmt::Display for LieElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let label = &self.alg.0.basis[i];
            if c.is_one() {
                parts.push(label.clone());
            } else {
                parts.push(format!("{}*{}", c.display_as_factor(), label));
            }
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// One named validation check with a human-readable outcome.
#[derive(Debug, Clone)]
pub struct ValidationCheck {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct ValidationReport {
    pub checks: Vec<ValidationCheck>,
}

impl ValidationReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// p-nilpotency verdict for a single element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PNilpotence {
    /// `u^[p]^steps = 0` with `steps` minimal.
    Nilpotent { steps: u32 },
    /// The iterate after `closure_dim` steps is still nonzero, which rules
    /// out nilpotency entirely.
    NotNilpotent { closure_dim: usize },
}

impl PNilpotence {
    pub fn is_nilpotent(&self) -> bool {
        matches!(self, PNilpotence::Nilpotent { .. })
    }
}

/// Torus test outcome with per-row semisimplicity witnesses.
#[derive(Debug, Clone)]
pub struct TorusReport {
    pub abelian: bool,
    /// For each basis row t of the subspace: t ∈ ⟨t^[p]⟩_p.
    pub row_semisimple: Vec<bool>,
}

impl TorusReport {
    pub fn is_torus(&self) -> bool {
        self.abelian && self.row_semisimple.iter().all(|&b| b)
    }
}

/// A subspace of a Lie algebra together with verified closure flags. The
/// flags are computed at construction, so they always describe the stored
/// subspace.
#[derive(Debug, Clone)]
pub struct RestrictedSubspace {
    pub(crate) alg: LieAlgebra,
    pub(crate) space: Subspace,
    bracket_closed: bool,
    p_closed: bool,
    ideal: bool,
}

impl RestrictedSubspace {
    pub fn new(alg: &LieAlgebra, space: Subspace) -> Result<RestrictedSubspace, LieError> {
        assert_eq!(space.ambient(), alg.dim(), "ambient dimension mismatch");
        assert!(space.field() == alg.field(), "field mismatch");
        let rows: Vec<Vec<Scalar>> = space.basis().to_vec();
        let mut bracket_closed = true;
        let mut ideal = true;
        for a in &rows {
            let ea = alg.element(a.clone())?;
            for b in &rows {
                let eb = alg.element(b.clone())?;
                if !space.contains(&alg.bracket(&ea, &eb).coords) {
                    bracket_closed = false;
                }
            }
            for k in 0..alg.dim() {
                if !space.contains(&alg.bracket(&alg.basis_element(k), &ea).coords) {
                    ideal = false;
                }
            }
        }
        let mut p_closed = true;
        for a in &rows {
            let ea = alg.element(a.clone())?;
            if !space.contains(&alg.p_power(&ea, 1)?.coords) {
                p_closed = false;
            }
        }
        Ok(RestrictedSubspace {
            alg: alg.clone(),
            space,
            bracket_closed: bracket_closed || ideal,
            p_closed,
            ideal,
        })
    }

    pub fn from_elements(
        alg: &LieAlgebra,
        elements: &[LieElement],
    ) -> Result<RestrictedSubspace, LieError> {
        let mut space = Subspace::zero(alg.field(), alg.dim());
        for e in elements {
            assert!(e.alg == *alg, "algebra mismatch");
            space.insert(&e.coords);
        }
        RestrictedSubspace::new(alg, space)
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.alg
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn bracket_closed(&self) -> bool {
        self.bracket_closed
    }

    pub fn p_closed(&self) -> bool {
        self.p_closed
    }

    pub fn is_ideal(&self) -> bool {
        self.ideal
    }

    pub fn contains(&self, e: &LieElement) -> bool {
        assert!(e.alg == self.alg, "algebra mismatch");
        self.space.contains(&e.coords)
    }
}

/// Projection data for a quotient L → L/I.
#[derive(Debug, Clone)]
pub struct QuotientMap {
    pub(crate) source: LieAlgebra,
    pub(crate) target: LieAlgebra,
    pub(crate) ideal_space: Subspace,
    pub(crate) complement: Vec<usize>,
}

impl QuotientMap {
    pub fn source(&self) -> &LieAlgebra {
        &self.source
    }

    pub fn target(&self) -> &LieAlgebra {
        &self.target
    }

    pub fn project(&self, u: &LieElement) -> LieElement {
        assert!(u.alg == self.source, "algebra mismatch");
        let reduced = self.ideal_space.reduce(&u.coords);
        LieElement {
            alg: self.target.clone(),
            coords: self.complement.iter().map(|&i| reduced[i].clone()).collect(),
        }
    }

    /// The canonical section: quotient coordinates placed at the complement
    /// positions of the source.
    pub fn lift(&self, v: &LieElement) -> LieElement {
        assert!(v.alg == self.target, "algebra mismatch");
        LieElement {
            alg: self.source.clone(),
            coords: self.lift_coords(&v.coords),
        }
    }

    pub(crate) fn lift_coords(&self, coords: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![self.source.field().zero(); self.source.dim()];
        for (pos, &i) in self.complement.iter().enumerate() {
            out[i] = coords[pos].clone();
        }
        out
    }
}

/// Embedding data for a subalgebra extracted as a standalone algebra.
#[derive(Debug, Clone)]
pub struct SubalgebraMap {
    pub(crate) ambient: LieAlgebra,
    pub(crate) sub: LieAlgebra,
    /// Ambient coordinates of the subalgebra's basis elements.
    pub(crate) rows: Vec<Vec<Scalar>>,
}

impl SubalgebraMap {
    pub fn sub(&self) -> &LieAlgebra {
        &self.sub
    }

    pub fn ambient(&self) -> &LieAlgebra {
        &self.ambient
    }

    pub fn embed_lie(&self, u: &LieElement) -> LieElement {
        assert!(u.alg == self.sub, "algebra mismatch");
        let mut coords = vec![self.ambient.field().zero(); self.ambient.dim()];
        for (c, row) in u.coords.iter().zip(&self.rows) {
            if c.is_zero() {
                continue;
            }
            for (i, r) in row.iter().enumerate() {
                if !r.is_zero() {
                    coords[i] = &coords[i] + &(c * r);
                }
            }
        }
        LieElement {
            alg: self.ambient.clone(),
            coords,
        }
    }

    /// Algebra map u(sub) → u(ambient): each monomial becomes the ordered
    /// product of the embedded generators' powers.
    pub fn embed_env(&self, u: &EnvElement) -> EnvElement {
        envalg::map_through(u, &self.ambient, |i| {
            EnvElement::from_lie(&self.embed_lie(&self.sub.basis_element(i)))
        })
    }
}
