//! Restricted enveloping algebras u(L) in their monomial basis.
//!
//! Elements are finite sums of ordered monomials `x_0^{e_0} … x_{n-1}^{e_{n-1}}`
//! with every exponent below p, so dim u(L) = p^dim L. Multiplication
//! rewrites products into this normal form with two rules: `x_j x_i =
//! x_i x_j + [x_j, x_i]` for j > i, and `x_i^p = (stored p-map image)`.
//! The rewriting is memoized per algebra.
//!
//! On top of the product the module provides the full Hopf structure
//! (comultiplication into a tensor square, counit, antipode), inverses and
//! principal right ideals through dense linear algebra, augmentation-ideal
//! powers, and the decomposition of u(L) as a free module over the
//! enveloping algebra of a restricted subalgebra.

use crate::liealg::{fresh_labels, LieAlgebra, LieElement, LieError, RestrictedSubspace};
use crate::linalg::{Matrix, Subspace};
use crate::scalars::Scalar;
use std::collections::BTreeMap;
use std::fmt;

/// Hard cap on dim u(L) for operations that enumerate the whole monomial
/// basis (inverses, ideals, augmentation powers, dense coordinates).
pub const DENSE_DIM_BOUND: u64 = 512;

/// Cap on dim u(L) for tensor-square operations, whose intermediate
/// supports are quadratically larger.
pub const TENSOR_DIM_BOUND: u64 = 64;

/// An ordered monomial: the exponent of each generator, all below p.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(pub(crate) Vec<u8>);

impl Monomial {
    pub fn unit(n: usize) -> Monomial {
        Monomial(vec![0; n])
    }

    pub fn generator(n: usize, i: usize) -> Monomial {
        let mut m = Monomial::unit(n);
        m.0[i] = 1;
        m
    }

    pub fn exponents(&self) -> &[u8] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn is_unit(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Position in the dense basis enumeration: mixed-radix with the first
    /// generator as the least significant digit.
    pub fn to_index(&self, p: u32) -> usize {
        let mut idx = 0usize;
        for &e in self.0.iter().rev() {
            idx = idx * p as usize + e as usize;
        }
        idx
    }

    pub fn from_index(mut idx: usize, p: u32, n: usize) -> Monomial {
        let mut exps = vec![0u8; n];
        for slot in exps.iter_mut() {
            *slot = (idx % p as usize) as u8;
            idx /= p as usize;
        }
        Monomial(exps)
    }
}

/// An element of u(L): a map from ordered monomials to nonzero scalars.
#[derive(Debug, Clone, PartialEq)]
pub struct EnvElement {
    pub(crate) alg: LieAlgebra,
    pub(crate) terms: BTreeMap<Monomial, Scalar>,
}

impl EnvElement {
    pub fn zero(alg: &LieAlgebra) -> EnvElement {
        EnvElement {
            alg: alg.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(alg: &LieAlgebra) -> EnvElement {
        EnvElement::scalar(alg, &alg.field().one())
    }

    pub fn scalar(alg: &LieAlgebra, c: &Scalar) -> EnvElement {
        let mut e = EnvElement::zero(alg);
        e.add_term(Monomial::unit(alg.dim()), c.clone());
        e
    }

    pub fn generator(alg: &LieAlgebra, i: usize) -> EnvElement {
        assert!(i < alg.dim());
        let mut e = EnvElement::zero(alg);
        e.add_term(Monomial::generator(alg.dim(), i), alg.field().one());
        e
    }

    pub fn monomial_element(alg: &LieAlgebra, m: Monomial) -> EnvElement {
        assert_eq!(m.0.len(), alg.dim());
        assert!(m.0.iter().all(|&e| (e as u32) < alg.p()));
        let mut e = EnvElement::zero(alg);
        e.add_term(m, alg.field().one());
        e
    }

    /// The degree-one element attached to a Lie element.
    pub fn from_lie(u: &LieElement) -> EnvElement {
        let alg = u.algebra().clone();
        let mut e = EnvElement::zero(&alg);
        for (i, c) in u.coords().iter().enumerate() {
            if !c.is_zero() {
                e.add_term(Monomial::generator(alg.dim(), i), c.clone());
            }
        }
        e
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.alg
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Scalar> {
        &self.terms
    }

    pub fn support(&self) -> Vec<Monomial> {
        self.terms.keys().cloned().collect()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| self.alg.field().zero())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .all(|(m, c)| m.is_unit() && c.is_one())
    }

    /// Coefficient of the unit monomial.
    pub fn constant_part(&self) -> Scalar {
        self.coeff(&Monomial::unit(self.alg.dim()))
    }

    /// The counit: sends every generator to zero, so it reads off the
    /// constant part.
    pub fn counit(&self) -> Scalar {
        self.constant_part()
    }

    /// Interpret as a Lie element; every term must have degree exactly one.
    pub fn as_lie(&self) -> Result<LieElement, LieError> {
        let mut coords = vec![self.alg.field().zero(); self.alg.dim()];
        for (m, c) in &self.terms {
            if m.degree() != 1 {
                return Err(LieError::NotDegreeOne(format!(
                    "term {} of {} has degree {}",
                    EnvElement::monomial_element(&self.alg, m.clone()),
                    self,
                    m.degree()
                )));
            }
            let i = m.0.iter().position(|&e| e == 1).expect("degree-one term");
            coords[i] = c.clone();
        }
        self.alg.element(coords)
    }

    fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                let sum = slot.get() + &c;
                if sum.is_zero() {
                    slot.remove();
                } else {
                    slot.insert(sum);
                }
            }
        }
    }

    pub fn add(&self, other: &EnvElement) -> EnvElement {
        assert!(self.alg == other.alg, "algebra mismatch");
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> EnvElement {
        EnvElement {
            alg: self.alg.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &EnvElement) -> EnvElement {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Scalar) -> EnvElement {
        if c.is_zero() {
            return EnvElement::zero(&self.alg);
        }
        EnvElement {
            alg: self.alg.clone(),
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn mul(&self, other: &EnvElement) -> EnvElement {
        assert!(self.alg == other.alg, "algebra mismatch");
        let mut out = EnvElement::zero(&self.alg);
        for (ma, ca) in &self.terms {
            // Push the generators of `ma` onto `other`, last letter first,
            // so the accumulated product stays in normal form throughout.
            let mut acc: BTreeMap<Monomial, Scalar> = other.terms.clone();
            for i in (0..self.alg.dim()).rev() {
                for _ in 0..ma.0[i] {
                    acc = apply_gen(&self.alg, i, &acc);
                }
            }
            for (m, c) in acc {
                out.add_term(m, &c * ca);
            }
        }
        out
    }

    pub fn pow(&self, k: u64) -> EnvElement {
        let mut result = EnvElement::one(&self.alg);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// The antipode: the anti-automorphism with `S(x) = -x` on degree one.
    /// Each monomial becomes `(-1)^deg` times the product of its letters in
    /// reverse order.
    pub fn antipode(&self) -> EnvElement {
        let alg = &self.alg;
        let mut out = EnvElement::zero(alg);
        for (m, c) in &self.terms {
            // Reversed product x_{i_k} … x_{i_1} built inside-out: left-
            // multiply the accumulator by the letters in ascending order.
            let mut acc: BTreeMap<Monomial, Scalar> = BTreeMap::new();
            acc.insert(Monomial::unit(alg.dim()), alg.field().one());
            for i in 0..alg.dim() {
                for _ in 0..m.0[i] {
                    acc = apply_gen(alg, i, &acc);
                }
            }
            let sign = if m.degree() % 2 == 0 {
                alg.field().one()
            } else {
                -&alg.field().one()
            };
            let factor = &sign * c;
            for (mm, cc) in acc {
                out.add_term(mm, &cc * &factor);
            }
        }
        out
    }

    /// Comultiplication into u(L) ⊗ u(L): generators are primitive,
    /// `Δ(x) = x ⊗ 1 + 1 ⊗ x`, extended as an algebra map.
    pub fn comultiply(&self) -> Result<TensorElement, LieError> {
        guard_dim(&self.alg, TENSOR_DIM_BOUND)?;
        let alg = &self.alg;
        let mut out = TensorElement::zero(alg);
        for (m, c) in &self.terms {
            let mut acc = TensorElement::one(alg);
            for i in 0..alg.dim() {
                for _ in 0..m.0[i] {
                    let gi = EnvElement::generator(alg, i);
                    let primitive = TensorElement::pure(&gi, &EnvElement::one(alg))
                        .add(&TensorElement::pure(&EnvElement::one(alg), &gi));
                    acc = acc.mul(&primitive);
                }
            }
            out = out.add(&acc.scale(c));
        }
        Ok(out)
    }

    /// Dense coordinates over the full monomial basis, indexed by
    /// [`Monomial::to_index`].
    pub fn to_coords(&self) -> Result<Vec<Scalar>, LieError> {
        let n = dense_dim(&self.alg)?;
        let mut coords = vec![self.alg.field().zero(); n];
        for (m, c) in &self.terms {
            coords[m.to_index(self.alg.p())] = c.clone();
        }
        Ok(coords)
    }

    pub fn from_coords(alg: &LieAlgebra, coords: &[Scalar]) -> Result<EnvElement, LieError> {
        let n = dense_dim(alg)?;
        assert_eq!(coords.len(), n, "dense coordinate length mismatch");
        let mut e = EnvElement::zero(alg);
        for (idx, c) in coords.iter().enumerate() {
            if !c.is_zero() {
                e.add_term(Monomial::from_index(idx, alg.p(), alg.dim()), c.clone());
            }
        }
        Ok(e)
    }

    /// Two-sided inverse, or None when the element is not a unit.
    pub fn inverse(&self) -> Result<Option<EnvElement>, LieError> {
        let n = dense_dim(&self.alg)?;
        let m = left_mul_matrix(self)?;
        let mut unit = vec![self.alg.field().zero(); n];
        unit[0] = self.alg.field().one();
        let Some(w) = m.solve(&unit) else {
            return Ok(None);
        };
        let inv = EnvElement::from_coords(&self.alg, &w)?;
        if self.mul(&inv).is_one() && inv.mul(self).is_one() {
            Ok(Some(inv))
        } else {
            Ok(None)
        }
    }

    pub fn is_invertible(&self) -> Result<bool, LieError> {
        Ok(self.inverse()?.is_some())
    }
}

macro_rules! env_binop {
    ($trait:ident, $method:ident, $delegate:ident) => {
        impl std::ops::$trait<&EnvElement> for &EnvElement {
            type Output = EnvElement;
            fn $method(self, rhs: &EnvElement) -> EnvElement {
                self.$delegate(rhs)
            }
        }
        impl std::ops::$trait<EnvElement> for EnvElement {
            type Output = EnvElement;
            fn $method(self, rhs: EnvElement) -> EnvElement {
                (&self).$delegate(&rhs)
            }
        }
        impl std::ops::$trait<&EnvElement> for EnvElement {
            type Output = EnvElement;
            fn $method(self, rhs: &EnvElement) -> EnvElement {
                (&self).$delegate(rhs)
            }
        }
        impl std::ops::$trait<EnvElement> for &EnvElement {
            type Output = EnvElement;
            fn $method(self, rhs: EnvElement) -> EnvElement {
                self.$delegate(&rhs)
            }
        }
    };
}

env_binop!(Add, add, add);
env_binop!(Sub, sub, sub);
env_binop!(Mul, mul, mul);

impl std::ops::Neg for &EnvElement {
    type Output = EnvElement;
    fn neg(self) -> EnvElement {
        EnvElement::neg(self)
    }
}

impl fmt::Display for EnvElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let labels = self.alg.labels();
        let mut parts = Vec::new();
        for (m, c) in &self.terms {
            let mut factors = Vec::new();
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(labels[i].clone()),
                    _ => factors.push(format!("{}^{}", labels[i], e)),
                }
            }
            if factors.is_empty() {
                parts.push(c.to_string());
            } else if c.is_one() {
                parts.push(factors.join("*"));
            } else {
                parts.push(format!("{}*{}", c.display_as_factor(), factors.join("*")));
            }
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// An element of u(L) ⊗ u(L), stored as a map from monomial pairs to
/// scalars.
#[derive(Debug, Clone, PartialEq)]
pub struct TensorElement {
    alg: LieAlgebra,
    terms: BTreeMap<(Monomial, Monomial), Scalar>,
}

impl TensorElement {
    pub fn zero(alg: &LieAlgebra) -> TensorElement {
        TensorElement {
            alg: alg.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(alg: &LieAlgebra) -> TensorElement {
        TensorElement::pure(&EnvElement::one(alg), &EnvElement::one(alg))
    }

    /// The decomposable tensor a ⊗ b.
    pub fn pure(a: &EnvElement, b: &EnvElement) -> TensorElement {
        assert!(a.alg == b.alg, "algebra mismatch");
        let mut t = TensorElement::zero(&a.alg);
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                t.add_term((ma.clone(), mb.clone()), ca * cb);
            }
        }
        t
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.alg
    }

    pub fn terms(&self) -> &BTreeMap<(Monomial, Monomial), Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, key: (Monomial, Monomial), c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                let sum = slot.get() + &c;
                if sum.is_zero() {
                    slot.remove();
                } else {
                    slot.insert(sum);
                }
            }
        }
    }

    pub fn add(&self, other: &TensorElement) -> TensorElement {
        assert!(self.alg == other.alg, "algebra mismatch");
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &TensorElement) -> TensorElement {
        assert!(self.alg == other.alg, "algebra mismatch");
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), -c);
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> TensorElement {
        if c.is_zero() {
            return TensorElement::zero(&self.alg);
        }
        TensorElement {
            alg: self.alg.clone(),
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    /// Componentwise product: (a ⊗ b)(c ⊗ d) = ac ⊗ bd.
    pub fn mul(&self, other: &TensorElement) -> TensorElement {
        assert!(self.alg == other.alg, "algebra mismatch");
        let alg = &self.alg;
        let mut out = TensorElement::zero(alg);
        for ((la, ra), ca) in &self.terms {
            for ((lb, rb), cb) in &other.terms {
                let left = EnvElement::monomial_element(alg, la.clone())
                    .mul(&EnvElement::monomial_element(alg, lb.clone()));
                let right = EnvElement::monomial_element(alg, ra.clone())
                    .mul(&EnvElement::monomial_element(alg, rb.clone()));
                let c = ca * cb;
                for (ml, cl) in &left.terms {
                    for (mr, cr) in &right.terms {
                        out.add_term((ml.clone(), mr.clone()), &(&c * cl) * cr);
                    }
                }
            }
        }
        out
    }

    /// Swap the two tensor legs.
    pub fn swap(&self) -> TensorElement {
        TensorElement {
            alg: self.alg.clone(),
            terms: self
                .terms
                .iter()
                .map(|((a, b), c)| ((b.clone(), a.clone()), c.clone()))
                .collect(),
        }
    }

    /// Apply the counit to the left leg: Σ c ε(m₁) m₂.
    pub fn contract_counit_left(&self) -> EnvElement {
        let mut out = EnvElement::zero(&self.alg);
        for ((a, b), c) in &self.terms {
            if a.is_unit() {
                out.add_term(b.clone(), c.clone());
            }
        }
        out
    }

    pub fn contract_counit_right(&self) -> EnvElement {
        self.swap().contract_counit_left()
    }

    /// Multiply the legs after applying the antipode on the left:
    /// Σ c S(m₁)·m₂.
    pub fn contract_antipode_left(&self) -> EnvElement {
        let alg = &self.alg;
        let mut out = EnvElement::zero(alg);
        for ((a, b), c) in &self.terms {
            let s = EnvElement::monomial_element(alg, a.clone()).antipode();
            let prod = s.mul(&EnvElement::monomial_element(alg, b.clone()));
            out = out.add(&prod.scale(c));
        }
        out
    }

    pub fn contract_antipode_right(&self) -> EnvElement {
        let alg = &self.alg;
        let mut out = EnvElement::zero(alg);
        for ((a, b), c) in &self.terms {
            let s = EnvElement::monomial_element(alg, b.clone()).antipode();
            let prod = EnvElement::monomial_element(alg, a.clone()).mul(&s);
            out = out.add(&prod.scale(c));
        }
        out
    }
}

/// Normal form of `x_i ·(normal-form term map)`: one straightening layer
/// applied across a sum.
fn apply_gen(
    alg: &LieAlgebra,
    i: usize,
    terms: &BTreeMap<Monomial, Scalar>,
) -> BTreeMap<Monomial, Scalar> {
    let mut out: BTreeMap<Monomial, Scalar> = BTreeMap::new();
    for (m, c) in terms {
        for (mm, cc) in gen_mul(alg, i, m) {
            let prod = &cc * c;
            if prod.is_zero() {
                continue;
            }
            match out.entry(mm) {
                std::collections::btree_map::Entry::Vacant(slot) => {
                    slot.insert(prod);
                }
                std::collections::btree_map::Entry::Occupied(mut slot) => {
                    let sum = slot.get() + &prod;
                    if sum.is_zero() {
                        slot.remove();
                    } else {
                        slot.insert(sum);
                    }
                }
            }
        }
    }
    out
}

/// Normal form of `x_i · m` for a normal monomial m. Memoized on the
/// algebra. The rewriting follows the filtration: swaps introduce brackets
/// of lower degree and exponent overflow substitutes the stored p-map
/// image, so the recursion terminates.
fn gen_mul(alg: &LieAlgebra, i: usize, m: &Monomial) -> BTreeMap<Monomial, Scalar> {
    if let Some(hit) = alg.0.straighten.lock().unwrap().get(&(i, m.clone())) {
        return hit.clone();
    }
    let p = alg.p() as u8;
    let field = alg.field().clone();
    let result: BTreeMap<Monomial, Scalar> = (|| {
        let mut out = BTreeMap::new();
        let first = m.0.iter().position(|&e| e > 0);
        match first {
            // x_i · 1 = x_i.
            None => {
                out.insert(Monomial::generator(alg.dim(), i), field.one());
                out
            }
            // Already in order: bump the exponent of x_i.
            Some(j) if i < j => {
                let mut mm = m.clone();
                mm.0[i] = 1;
                out.insert(mm, field.one());
                out
            }
            Some(j) if i == j => {
                if m.0[i] + 1 < p {
                    let mut mm = m.clone();
                    mm.0[i] += 1;
                    out.insert(mm, field.one());
                    out
                } else {
                    // Exponent reaches p: x_i^p · rest = (x_i^[p]) · rest,
                    // where the p-map image is degree one.
                    let mut rest = m.clone();
                    rest.0[i] = 0;
                    for (k, ck) in alg.0.pmap[i].iter().enumerate() {
                        if ck.is_zero() {
                            continue;
                        }
                        for (mm, cc) in gen_mul(alg, k, &rest) {
                            let prod = &cc * ck;
                            merge_term(&mut out, mm, prod);
                        }
                    }
                    out
                }
            }
            // i > j: x_i x_j = x_j x_i + [x_i, x_j], applied to m = x_j·m'.
            Some(j) => {
                let mut rest = m.clone();
                rest.0[j] -= 1;
                let inner = gen_mul(alg, i, &rest);
                for (mm, cc) in &inner {
                    for (mmm, ccc) in gen_mul(alg, j, mm) {
                        merge_term(&mut out, mmm, &ccc * cc);
                    }
                }
                for (k, ck) in alg.bracket_of_generators(i, j).iter().enumerate() {
                    if ck.is_zero() {
                        continue;
                    }
                    for (mm, cc) in gen_mul(alg, k, &rest) {
                        merge_term(&mut out, mm, &cc * ck);
                    }
                }
                out
            }
        }
    })();
    alg.0
        .straighten
        .lock()
        .unwrap()
        .insert((i, m.clone()), result.clone());
    result
}

fn merge_term(out: &mut BTreeMap<Monomial, Scalar>, m: Monomial, c: Scalar) {
    if c.is_zero() {
        return;
    }
    match out.entry(m) {
        std::collections::btree_map::Entry::Vacant(slot) => {
            slot.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut slot) => {
            let sum = slot.get() + &c;
            if sum.is_zero() {
                slot.remove();
            } else {
                slot.insert(sum);
            }
        }
    }
}

fn guard_dim(alg: &LieAlgebra, bound: u64) -> Result<(), LieError> {
    match alg.env_dim() {
        Some(d) if d <= bound => Ok(()),
        _ => Err(LieError::TooLarge {
            p: alg.p(),
            n: alg.dim(),
            bound,
        }),
    }
}

pub(crate) fn dense_dim(alg: &LieAlgebra) -> Result<usize, LieError> {
    guard_dim(alg, DENSE_DIM_BOUND)?;
    Ok(alg.env_dim().expect("guarded") as usize)
}

/// Matrix of left multiplication by u on the dense monomial basis: column j
/// holds the coordinates of u · m_j.
fn left_mul_matrix(u: &EnvElement) -> Result<Matrix, LieError> {
    let alg = &u.alg;
    let n = dense_dim(alg)?;
    let mut m = Matrix::zeros(alg.field(), n, n);
    for j in 0..n {
        let basis = EnvElement::monomial_element(alg, Monomial::from_index(j, alg.p(), alg.dim()));
        let col = u.mul(&basis).to_coords()?;
        for (i, c) in col.into_iter().enumerate() {
            if !c.is_zero() {
                m.set(i, j, c);
            }
        }
    }
    Ok(m)
}

/// The right ideal u·u(L), as a subspace of the dense coordinate space.
pub fn principal_right_ideal(u: &EnvElement) -> Result<Subspace, LieError> {
    let alg = &u.alg;
    let n = dense_dim(alg)?;
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        let basis = EnvElement::monomial_element(alg, Monomial::from_index(j, alg.p(), alg.dim()));
        cols.push(u.mul(&basis).to_coords()?);
    }
    Ok(Subspace::from_vectors(alg.field(), n, &cols))
}

/// Solve u·x = b, verifying the product; None when b is outside the
/// principal right ideal of u. This inverts the left-multiplication matrix
/// directly, independent of the span enumeration above.
pub fn solve_right_factor(u: &EnvElement, b: &EnvElement) -> Result<Option<EnvElement>, LieError> {
    assert!(u.alg == b.alg, "algebra mismatch");
    let m = left_mul_matrix(u)?;
    let Some(x) = m.solve(&b.to_coords()?) else {
        return Ok(None);
    };
    let cand = EnvElement::from_coords(&u.alg, &x)?;
    if u.mul(&cand) == *b {
        Ok(Some(cand))
    } else {
        Ok(None)
    }
}

/// The augmentation ideal ω(L) = ker ε as a subspace of the dense
/// coordinate space: the span of all non-unit monomials.
pub fn augmentation_subspace(alg: &LieAlgebra) -> Result<Subspace, LieError> {
    let n = dense_dim(alg)?;
    let mut space = Subspace::zero(alg.field(), n);
    for idx in 1..n {
        let mut row = vec![alg.field().zero(); n];
        row[idx] = alg.field().one();
        space.insert(&row);
    }
    Ok(space)
}

/// Span of all pairwise products of two subspaces of u(L), in dense
/// coordinates.
pub fn subspace_mul(alg: &LieAlgebra, a: &Subspace, b: &Subspace) -> Result<Subspace, LieError> {
    let n = dense_dim(alg)?;
    assert_eq!(a.ambient(), n);
    assert_eq!(b.ambient(), n);
    let mut out = Subspace::zero(alg.field(), n);
    for ra in a.basis() {
        let ea = EnvElement::from_coords(alg, ra)?;
        for rb in b.basis() {
            let eb = EnvElement::from_coords(alg, rb)?;
            out.insert(&ea.mul(&eb).to_coords()?);
        }
    }
    Ok(out)
}

/// Nilpotency index of the augmentation ideal: the least k with ω^k = 0,
/// or None when the power chain stabilizes at a nonzero subspace. ω is a
/// two-sided ideal, so the chain ω ⊇ ω² ⊇ … is decreasing and the first
/// repeat decides.
pub fn augmentation_nilpotency(alg: &LieAlgebra) -> Result<Option<u32>, LieError> {
    let omega = augmentation_subspace(alg)?;
    if omega.dim() == 0 {
        return Ok(Some(1));
    }
    let mut current = omega.clone();
    let mut k = 1u32;
    loop {
        let next = subspace_mul(alg, &current, &omega)?;
        if next.dim() == 0 {
            return Ok(Some(k + 1));
        }
        if next.dim() == current.dim() {
            return Ok(None);
        }
        current = next;
        k += 1;
    }
}

/// Push an element through the algebra map determined by generator images:
/// each monomial becomes the ordered product of the images' powers.
pub(crate) fn map_through(
    u: &EnvElement,
    target: &LieAlgebra,
    image: impl Fn(usize) -> EnvElement,
) -> EnvElement {
    let mut out = EnvElement::zero(target);
    for (m, c) in &u.terms {
        let mut acc = EnvElement::one(target);
        for (i, &e) in m.0.iter().enumerate() {
            if e > 0 {
                acc = acc.mul(&image(i).pow(e as u64));
            }
        }
        out = out.add(&acc.scale(c));
    }
    out
}

/// u(L) written as a free left module over u(H) for a restricted
/// subalgebra H: a basis of L is chosen with the rows of H first, the
/// element is rewritten in that basis, and its terms are grouped as
/// Σ_y (coefficient in u(H)) · y over ordered monomials y in the
/// complementary generators.
#[derive(Debug, Clone)]
pub struct FreeModuleDecomposition {
    original: EnvElement,
    /// L presented in the adapted basis: H rows first, then unit vectors at
    /// the complement positions.
    reordered: LieAlgebra,
    /// H as a standalone algebra; its basis matches the first rows of the
    /// adapted basis, so u(H)-monomials embed by zero-padding.
    h_alg: LieAlgebra,
    h_dim: usize,
    /// Rows of the basis-change matrix: adapted basis in ambient
    /// coordinates.
    basis_rows: Vec<Vec<Scalar>>,
    parts: BTreeMap<Monomial, EnvElement>,
}

impl FreeModuleDecomposition {
    pub fn original(&self) -> &EnvElement {
        &self.original
    }

    pub fn h_algebra(&self) -> &LieAlgebra {
        &self.h_alg
    }

    pub fn reordered_algebra(&self) -> &LieAlgebra {
        &self.reordered
    }

    pub fn h_dim(&self) -> usize {
        self.h_dim
    }

    /// The module coordinates: ordered monomial in the complementary
    /// generators ↦ coefficient in u(H).
    pub fn parts(&self) -> &BTreeMap<Monomial, EnvElement> {
        &self.parts
    }

    /// Reassemble Σ_y c_y·y and map back to the original basis; equal to
    /// the original element by construction, which callers can verify.
    pub fn recompose(&self) -> Result<EnvElement, LieError> {
        let n = self.reordered.dim();
        let mut adapted = EnvElement::zero(&self.reordered);
        for (y, coefficient) in &self.parts {
            for (a, c) in coefficient.terms() {
                let mut exps = vec![0u8; n];
                exps[..self.h_dim].copy_from_slice(&a.0);
                exps[self.h_dim..].copy_from_slice(&y.0);
                adapted.add_term(Monomial(exps), c.clone());
            }
        }
        let ambient = self.original.algebra().clone();
        let rows = self.basis_rows.clone();
        Ok(map_through(&adapted, &ambient, |k| {
            EnvElement::from_lie(&ambient.element(rows[k].clone()).expect("stored row"))
        }))
    }
}

pub fn free_module_decompose(
    u: &EnvElement,
    h: &RestrictedSubspace,
) -> Result<FreeModuleDecomposition, LieError> {
    let alg = u.algebra().clone();
    assert!(*h.algebra() == alg, "algebra mismatch");
    if !h.bracket_closed() || !h.p_closed() {
        return Err(LieError::NotClosed(
            "free-module decomposition needs a bracket- and p-closed subspace".into(),
        ));
    }
    let (h_alg, _) = alg.subalgebra(h)?;
    let d = h.dim();
    let n = alg.dim();

    let mut basis_rows: Vec<Vec<Scalar>> = h.space().basis().to_vec();
    for &idx in &h.space().complement_indices() {
        let mut row = vec![alg.field().zero(); n];
        row[idx] = alg.field().one();
        basis_rows.push(row);
    }
    let b = Matrix::from_rows(alg.field(), basis_rows.clone());
    let to_adapted = b
        .transpose()
        .inverse()
        .expect("adapted basis rows span the algebra");

    let labels = fresh_labels(n, alg.field().vars());
    let adapted_coords = |v: &[Scalar]| -> Vec<Scalar> { to_adapted.mul_vec(v) };
    let mut brackets = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let w = alg.bracket(
                &alg.element(basis_rows[i].clone())?,
                &alg.element(basis_rows[j].clone())?,
            );
            let coords = adapted_coords(w.coords());
            if coords.iter().any(|c| !c.is_zero()) {
                brackets.push(((i, j), coords));
            }
        }
    }
    let mut pmap = Vec::new();
    for row in &basis_rows {
        let w = alg.p_power(&alg.element(row.clone())?, 1)?;
        pmap.push(adapted_coords(w.coords()));
    }
    let reordered = LieAlgebra::new(alg.field().clone(), labels, brackets, pmap)?;

    // Rewrite u in the adapted basis through the induced algebra map.
    let adapted = map_through(u, &reordered, |i| {
        let mut unit = vec![alg.field().zero(); n];
        unit[i] = alg.field().one();
        let coords = to_adapted.mul_vec(&unit);
        EnvElement::from_lie(&reordered.element(coords).expect("coordinate vector"))
    });

    let mut parts: BTreeMap<Monomial, EnvElement> = BTreeMap::new();
    for (m, c) in adapted.terms() {
        let h_part = Monomial(m.0[..d].to_vec());
        let y_part = Monomial(m.0[d..].to_vec());
        parts
            .entry(y_part)
            .or_insert_with(|| EnvElement::zero(&h_alg))
            .add_term(h_part, c.clone());
    }

    Ok(FreeModuleDecomposition {
        original: u.clone(),
        reordered,
        h_alg,
        h_dim: d,
        basis_rows,
        parts,
    })
}

/// Parse an element of u(L). Atoms are integers, basis labels, field
/// variables, and parenthesized expressions; `*`, `^`, `+`, `-`, and
/// division by scalar-valued factors are supported.
pub fn parse_env(alg: &LieAlgebra, src: &str) -> Result<EnvElement, LieError> {
    Parser {
        alg,
        bytes: src.as_bytes(),
        pos: 0,
    }
    .parse()
}

struct Parser<'a> {
    alg: &'a LieAlgebra,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn parse(mut self) -> Result<EnvElement, LieError> {
        let e = self.expr()?;
        self.skip_ws();
        if self.pos != self.bytes.len() {
            return Err(self.err("trailing input"));
        }
        Ok(e)
    }

    fn err(&self, msg: &str) -> LieError {
        LieError::ParseElement {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<EnvElement, LieError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<EnvElement, LieError> {
        let mut negate = false;
        while self.peek() == Some(b'-') {
            self.pos += 1;
            negate = !negate;
        }
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc.mul(&self.factor()?);
                }
                Some(b'/') => {
                    self.pos += 1;
                    let rhs = self.factor()?;
                    let Some(c) = rhs.as_scalar() else {
                        return Err(self.err("division is only defined by scalar factors"));
                    };
                    if c.is_zero() {
                        return Err(self.err("division by zero"));
                    }
                    acc = acc.scale(&c.inverse().expect("nonzero scalar"));
                }
                _ => break,
            }
        }
        Ok(if negate { acc.neg() } else { acc })
    }

    fn factor(&mut self) -> Result<EnvElement, LieError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let e = self.uint()?;
            Ok(base.pow(e))
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<EnvElement, LieError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let v = self.uint()?;
                Ok(EnvElement::scalar(
                    self.alg,
                    &self.alg.field().from_int(v as i64),
                ))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let name = self.ident();
                if let Some(i) = self.alg.label_index(&name) {
                    return Ok(EnvElement::generator(self.alg, i));
                }
                if let Some(v) = self
                    .alg
                    .field()
                    .vars()
                    .iter()
                    .position(|w| *w == name)
                {
                    return Ok(EnvElement::scalar(self.alg, &self.alg.field().var(v)));
                }
                Err(self.err(&format!(
                    "unknown name `{name}` (not a basis label or field variable)"
                )))
            }
            _ => Err(self.err("expected a number, name, or '('")),
        }
    }

    fn ident(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.bytes.len()
            && (self.bytes[self.pos].is_ascii_alphanumeric() || self.bytes[self.pos] == b'_')
        {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.bytes[start..self.pos]).into_owned()
    }

    fn uint(&mut self) -> Result<u64, LieError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.err("integer out of range"))
    }
}

impl EnvElement {
    /// The scalar value when the element has degree zero; None otherwise.
    pub fn as_scalar(&self) -> Option<Scalar> {
        if self.terms.is_empty() {
            return Some(self.alg.field().zero());
        }
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            if m.is_unit() {
                return Some(c.clone());
            }
        }
        None
    }
}
