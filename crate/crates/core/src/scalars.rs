//! Exact scalar arithmetic over `F_p` and rational function fields
//! `F_p(t_1, ..., t_m)`.
//!
//! Scalars are kept in a canonical form at all times: fractions of
//! multivariate polynomials that are reduced (numerator and denominator
//! coprime) with the denominator monic under lexicographic term order.
//! Equality of scalars is therefore structural equality, which the rest of
//! the library relies on for exact linear algebra.
//!
//! Beyond field arithmetic the module provides the characteristic-p tools
//! the Lie-algebra layers need: the Frobenius endomorphism `a -> a^(p^r)`,
//! exact p^r-th roots (with a typed failure when no root exists), and
//! coordinates of a scalar in the module basis `{t^e : 0 <= e_i < p^r}` of
//! the field over its subfield of p^r-th powers.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

/// Exponent vectors of monomials in the commuting variables of a field.
pub type Exponents = Vec<u32>;

/// Errors produced by field construction, parsing and partial scalar ops.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("characteristic must be prime, got {0}")]
    NotPrime(u32),
    #[error("duplicate variable name `{0}`")]
    DuplicateVar(String),
    #[error("invalid variable name `{0}` (want identifier: letter or `_` first, then letters, digits, `_`)")]
    BadVarName(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("no p^{r}-th root exists: {detail}")]
    NoRoot { r: u32, detail: String },
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unknown variable `{0}`")]
    UnknownVar(String),
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n as u64 {
        if n as u64 % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Modular inverse in `F_p` for `0 < a < p`, via Fermat.
fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(a % p != 0);
    pow_mod(a % p, p - 2, p)
}

fn pow_mod(base: u32, mut exp: u32, p: u32) -> u32 {
    let mut acc = 1u64;
    let mut b = base as u64 % p as u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % p as u64;
        }
        b = b * b % p as u64;
        exp >>= 1;
    }
    acc as u32
}

/// Immutable description of a coefficient field `F_p(vars...)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldSpec {
    p: u32,
    vars: Vec<String>,
}

/// Shared handle to a coefficient field. Two handles compare equal when they
/// describe the same characteristic and variable list, so independently
/// constructed fields interoperate.
#[derive(Debug, Clone)]
pub struct Field(Arc<FieldSpec>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}
impl Eq for Field {}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.vars.is_empty() {
            write!(f, "F_{}", self.0.p)
        } else {
            write!(f, "F_{}({})", self.0.p, self.0.vars.join(","))
        }
    }
}

impl Field {
    /// A field `F_p(vars...)`; `vars` empty gives the prime field.
    pub fn new<S: AsRef<str>>(p: u32, vars: &[S]) -> Result<Field, ScalarError> {
        if !is_prime(p) {
            return Err(ScalarError::NotPrime(p));
        }
        let mut seen = std::collections::BTreeSet::new();
        let mut names = Vec::with_capacity(vars.len());
        for v in vars {
            let v = v.as_ref();
            if !is_identifier(v) {
                return Err(ScalarError::BadVarName(v.to_string()));
            }
            if !seen.insert(v.to_string()) {
                return Err(ScalarError::DuplicateVar(v.to_string()));
            }
            names.push(v.to_string());
        }
        Ok(Field(Arc::new(FieldSpec { p, vars: names })))
    }

    /// The prime field `F_p`.
    pub fn prime(p: u32) -> Result<Field, ScalarError> {
        Field::new::<&str>(p, &[])
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }

    pub fn vars(&self) -> &[String] {
        &self.0.vars
    }

    pub fn nvars(&self) -> usize {
        self.0.vars.len()
    }

    /// Prime fields are perfect; `F_p(t_1,...)` with at least one variable
    /// is not (no variable has a p-th root).
    pub fn is_perfect(&self) -> bool {
        self.0.vars.is_empty()
    }

    pub fn zero(&self) -> Scalar {
        Scalar {
            field: self.clone(),
            num: Poly::zero(),
            den: Poly::one(self.nvars()),
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_int(1)
    }

    /// The image of an integer in `F_p`, as a constant scalar.
    pub fn from_int(&self, n: i64) -> Scalar {
        let p = self.0.p as i64;
        let c = n.rem_euclid(p) as u32;
        Scalar {
            field: self.clone(),
            num: Poly::constant(self.nvars(), c),
            den: Poly::one(self.nvars()),
        }
    }

    /// The variable with the given index, as a scalar.
    pub fn var(&self, idx: usize) -> Scalar {
        assert!(idx < self.nvars(), "variable index {idx} out of range");
        Scalar {
            field: self.clone(),
            num: Poly::monomial(self.nvars(), idx, 1, 1),
            den: Poly::one(self.nvars()),
        }
    }

    pub fn var_named(&self, name: &str) -> Result<Scalar, ScalarError> {
        match self.0.vars.iter().position(|v| v == name) {
            Some(i) => Ok(self.var(i)),
            None => Err(ScalarError::UnknownVar(name.to_string())),
        }
    }

    /// Parse an arithmetic expression (`+ - * / ^`, parentheses, integers,
    /// variable names) into a scalar of this field.
    pub fn parse(&self, input: &str) -> Result<Scalar, ScalarError> {
        Parser {
            field: self,
            bytes: input.as_bytes(),
            pos: 0,
        }
        .parse_all()
    }
}

// ---------------------------------------------------------------------------
// Polynomials (internal representation)
// ---------------------------------------------------------------------------

/// A multivariate polynomial over `F_p`: monomial exponent vector -> nonzero
/// coefficient in `1..p`. The map being ordered makes every traversal, and
/// hence every printed or serialized form, deterministic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Poly {
    terms: BTreeMap<Exponents, u32>,
}

impl Poly {
    fn zero() -> Poly {
        Poly {
            terms: BTreeMap::new(),
        }
    }

    fn one(nvars: usize) -> Poly {
        Poly::constant(nvars, 1)
    }

    fn constant(nvars: usize, c: u32) -> Poly {
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert(vec![0u32; nvars], c);
        }
        Poly { terms }
    }

    fn monomial(nvars: usize, var: usize, exp: u32, c: u32) -> Poly {
        let mut e = vec![0u32; nvars];
        e[var] = exp;
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert(e, c);
        }
        Poly { terms }
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Some(c)` when the polynomial is the constant `c` (including 0).
    fn as_constant(&self) -> Option<u32> {
        match self.terms.len() {
            0 => Some(0),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                if e.iter().all(|&x| x == 0) {
                    Some(*c)
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    fn is_one(&self) -> bool {
        self.as_constant() == Some(1)
    }

    fn add_term(&mut self, e: Exponents, c: u32, p: u32) {
        if c % p == 0 {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c % p);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = (*o.get() + c) % p;
                if s == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn add(&self, other: &Poly, p: u32) -> Poly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), *c, p);
        }
        out
    }

    fn neg(&self, p: u32) -> Poly {
        let mut out = Poly::zero();
        for (e, c) in &self.terms {
            out.terms.insert(e.clone(), p - c);
        }
        out
    }

    fn sub(&self, other: &Poly, p: u32) -> Poly {
        self.add(&other.neg(p), p)
    }

    fn scale(&self, c: u32, p: u32) -> Poly {
        let c = c % p;
        if c == 0 {
            return Poly::zero();
        }
        let mut out = Poly::zero();
        for (e, k) in &self.terms {
            out.terms
                .insert(e.clone(), ((*k as u64 * c as u64) % p as u64) as u32);
        }
        out
    }

    fn mul(&self, other: &Poly, p: u32) -> Poly {
        let mut out = Poly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Exponents = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                let c = ((*ca as u64 * *cb as u64) % p as u64) as u32;
                out.add_term(e, c, p);
            }
        }
        out
    }

    /// Leading term under pure lexicographic order on exponent vectors.
    fn lex_lead(&self) -> Option<(&Exponents, u32)> {
        self.terms.iter().next_back().map(|(e, c)| (e, *c))
    }

    fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    fn deg_in(&self, v: usize) -> u32 {
        self.terms.keys().map(|e| e[v]).max().unwrap_or(0)
    }

    /// First variable index that occurs with positive exponent, if any.
    fn first_var(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for e in self.terms.keys() {
            for (i, &x) in e.iter().enumerate() {
                if x > 0 && best.map_or(true, |b| i < b) {
                    best = Some(i);
                }
            }
        }
        best
    }

    /// Exact division; `None` when `other` does not divide `self`.
    fn div_exact(&self, other: &Poly, p: u32) -> Option<Poly> {
        assert!(!other.is_zero(), "division by zero polynomial");
        let mut rem = self.clone();
        let mut quot = Poly::zero();
        let (ed, cd) = other.lex_lead().unwrap();
        let ed = ed.clone();
        let cd_inv = inv_mod(cd, p);
        while let Some((er, cr)) = rem.lex_lead() {
            if !ed.iter().zip(er).all(|(d, r)| d <= r) {
                return None;
            }
            let eq: Exponents = er.iter().zip(&ed).map(|(r, d)| r - d).collect();
            let cq = ((cr as u64 * cd_inv as u64) % p as u64) as u32;
            let t = Poly {
                terms: BTreeMap::from([(eq, cq)]),
            };
            quot = quot.add(&t, p);
            rem = rem.sub(&t.mul(other, p), p);
        }
        Some(quot)
    }

    /// Coefficient polynomials with respect to variable `v`, keyed by the
    /// `v`-degree; variable `v` is zeroed out inside the coefficients.
    fn decompose_by_var(&self, v: usize) -> BTreeMap<u32, Poly> {
        let mut out: BTreeMap<u32, Poly> = BTreeMap::new();
        for (e, c) in &self.terms {
            let d = e[v];
            let mut e2 = e.clone();
            e2[v] = 0;
            out.entry(d).or_insert_with(Poly::zero).terms.insert(e2, *c);
        }
        out
    }

    fn lead_coeff_in(&self, v: usize) -> Poly {
        let d = self.deg_in(v);
        let mut out = Poly::zero();
        for (e, c) in &self.terms {
            if e[v] == d {
                let mut e2 = e.clone();
                e2[v] = 0;
                out.terms.insert(e2, *c);
            }
        }
        out
    }

    /// Scale so the lexicographic leading coefficient becomes 1.
    fn monic_lex(&self, p: u32) -> Poly {
        match self.lex_lead() {
            None => Poly::zero(),
            Some((_, c)) => self.scale(inv_mod(c, p), p),
        }
    }

    /// Multiply every exponent by `k` (the effect of `a -> a^k` on monomials
    /// when `k` is a power of the characteristic).
    fn stretch_exponents(&self, k: u32) -> Poly {
        let mut out = Poly::zero();
        for (e, c) in &self.terms {
            let e2: Exponents = e
                .iter()
                .map(|&x| {
                    let v = x as u64 * k as u64;
                    assert!(v <= u32::MAX as u64, "exponent overflow");
                    v as u32
                })
                .collect();
            out.terms.insert(e2, *c);
        }
        out
    }

    /// Divide every exponent by `k` if all are divisible; the inverse of
    /// `stretch_exponents` where it exists.
    fn shrink_exponents(&self, k: u32) -> Option<Poly> {
        let mut out = Poly::zero();
        for (e, c) in &self.terms {
            let mut e2 = Vec::with_capacity(e.len());
            for &x in e {
                if x % k != 0 {
                    return None;
                }
                e2.push(x / k);
            }
            out.terms.insert(e2, *c);
        }
        Some(out)
    }
}

/// Pseudo-remainder of `f` by `g` with respect to variable `v`
/// (`deg_v g >= 1`). Each elimination step multiplies through by the leading
/// coefficient of `g`, which is harmless because callers take primitive
/// parts afterwards.
fn prem(f: &Poly, g: &Poly, v: usize, p: u32) -> Poly {
    let m = g.deg_in(v);
    debug_assert!(m >= 1);
    let lcg = g.lead_coeff_in(v);
    let nvars = f
        .terms
        .keys()
        .next()
        .or_else(|| g.terms.keys().next())
        .map(|e| e.len())
        .unwrap_or(0);
    let mut r = f.clone();
    while !r.is_zero() && r.deg_in(v) >= m {
        let d = r.deg_in(v);
        let lcr = r.lead_coeff_in(v);
        let shift = Poly::monomial(nvars, v, d - m, 1);
        r = lcg.mul(&r, p).sub(&lcr.mul(g, p).mul(&shift, p), p);
    }
    r
}

fn content_in(a: &Poly, v: usize, p: u32) -> Poly {
    let mut g = Poly::zero();
    for coeff in a.decompose_by_var(v).values() {
        g = poly_gcd(&g, coeff, p);
    }
    g
}

/// Gcd of multivariate polynomials over `F_p`, normalized so the
/// lexicographic leading coefficient is 1. Primitive polynomial-remainder
/// sequence with content recursion.
pub(crate) fn poly_gcd(a: &Poly, b: &Poly, p: u32) -> Poly {
    if a.is_zero() {
        return b.monic_lex(p);
    }
    if b.is_zero() {
        return a.monic_lex(p);
    }
    if a.as_constant().is_some() || b.as_constant().is_some() {
        let n = a.terms.keys().next().unwrap().len();
        return Poly::one(n);
    }
    let v = match (a.first_var(), b.first_var()) {
        (Some(x), Some(y)) => x.min(y),
        (Some(x), None) => x,
        (None, Some(y)) => y,
        (None, None) => unreachable!("nonconstant polynomials have variables"),
    };
    let cont_a = content_in(a, v, p);
    let cont_b = content_in(b, v, p);
    let pp_a = a
        .div_exact(&cont_a, p)
        .expect("content divides its polynomial");
    let pp_b = b
        .div_exact(&cont_b, p)
        .expect("content divides its polynomial");
    let c = poly_gcd(&cont_a, &cont_b, p);

    let nvars = a.terms.keys().next().unwrap().len();
    let (mut f, mut g) = if pp_a.deg_in(v) >= pp_b.deg_in(v) {
        (pp_a, pp_b)
    } else {
        (pp_b, pp_a)
    };
    let gcd_pp = loop {
        if g.deg_in(v) == 0 {
            // A nonzero v-free remainder: the primitive parts are coprime.
            break Poly::one(nvars);
        }
        let r = prem(&f, &g, v, p);
        if r.is_zero() {
            break g;
        }
        let cont_r = content_in(&r, v, p);
        let r = r
            .div_exact(&cont_r, p)
            .expect("content divides its polynomial");
        f = std::mem::replace(&mut g, r);
    };
    c.mul(&gcd_pp, p).monic_lex(p)
}

// ---------------------------------------------------------------------------
// Scalars
// ---------------------------------------------------------------------------

/// An element of a [`Field`], stored as a reduced fraction of polynomials
/// with monic denominator. Canonical form makes `==` exact equality in the
/// field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scalar {
    field: Field,
    num: Poly,
    den: Poly,
}

impl Scalar {
    fn make(field: Field, num: Poly, den: Poly) -> Result<Scalar, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let p = field.p();
        if num.is_zero() {
            return Ok(field.zero());
        }
        let g = poly_gcd(&num, &den, p);
        let mut num = num.div_exact(&g, p).expect("gcd divides numerator");
        let mut den = den.div_exact(&g, p).expect("gcd divides denominator");
        let lc = den.lex_lead().unwrap().1;
        if lc != 1 {
            let inv = inv_mod(lc, p);
            num = num.scale(inv, p);
            den = den.scale(inv, p);
        }
        Ok(Scalar { field, num, den })
    }

    pub(crate) fn from_poly(field: &Field, num: Poly) -> Scalar {
        Scalar {
            field: field.clone(),
            den: Poly::one(field.nvars()),
            num,
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// `Some(c)` when the scalar is the image of an integer `c` in `F_p`.
    pub fn as_constant(&self) -> Option<u32> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    /// True when the denominator is 1, i.e. the scalar is polynomial.
    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// Max of numerator and denominator total degrees; the size measure the
    /// degree budget guards.
    pub fn degree(&self) -> u32 {
        self.num.total_degree().max(self.den.total_degree())
    }

    pub fn inverse(&self) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Scalar::make(self.field.clone(), self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        assert_same_field(self, other);
        if other.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Scalar::make(
            self.field.clone(),
            self.num.mul(&other.den, self.field.p()),
            self.den.mul(&other.num, self.field.p()),
        )
    }

    /// Nonnegative integer power.
    pub fn pow(&self, mut e: u32) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// The Frobenius power `a^(p^r)`: coefficients are fixed (Fermat) and
    /// exponents scale by `p^r`.
    pub fn frobenius(&self, r: u32) -> Scalar {
        let k = self.field.p().checked_pow(r).expect("p^r overflow");
        Scalar {
            field: self.field.clone(),
            num: self.num.stretch_exponents(k),
            den: self.den.stretch_exponents(k),
        }
    }

    /// Exact `p^r`-th root, which exists iff every exponent of the reduced
    /// numerator and denominator is divisible by `p^r`. Constants always
    /// have roots (`c^(p^r) = c` in `F_p`).
    pub fn pth_root(&self, r: u32) -> Result<Scalar, ScalarError> {
        let k = self.field.p().checked_pow(r).expect("p^r overflow");
        let num = self.num.shrink_exponents(k);
        let den = self.den.shrink_exponents(k);
        match (num, den) {
            (Some(num), Some(den)) => Ok(Scalar {
                field: self.field.clone(),
                num,
                den,
            }),
            _ => Err(ScalarError::NoRoot {
                r,
                detail: format!("{self} has an exponent not divisible by {k}"),
            }),
        }
    }

    /// Coordinates of the scalar in the module basis
    /// `{t^e : 0 <= e_i < p^r}` of the field over its subfield of p^r-th
    /// powers: returns `coords` with `self = sum_e coords[e]^(p^r) * t^e`.
    ///
    /// Always succeeds on polynomials. A ratio is supported exactly when its
    /// reduced denominator is itself a p^r-th power; otherwise `None`
    /// (the fraction has no finite decomposition of this shape).
    pub fn subfield_coords(&self, r: u32) -> Option<BTreeMap<Exponents, Scalar>> {
        let k = self.field.p().checked_pow(r).expect("p^r overflow");
        let den_root = if self.den.is_one() {
            Poly::one(self.field.nvars())
        } else {
            self.den.shrink_exponents(k)?
        };
        let mut buckets: BTreeMap<Exponents, Poly> = BTreeMap::new();
        for (e, c) in &self.num.terms {
            let residue: Exponents = e.iter().map(|&x| x % k).collect();
            let quotient: Exponents = e.iter().map(|&x| x / k).collect();
            buckets
                .entry(residue)
                .or_insert_with(Poly::zero)
                .terms
                .insert(quotient, *c);
        }
        let mut out = BTreeMap::new();
        for (e, poly) in buckets {
            let coeff = Scalar::make(self.field.clone(), poly, den_root.clone())
                .expect("denominator root is nonzero");
            out.insert(e, coeff);
        }
        Some(out)
    }

    /// How this scalar should print inside a `*` chain: multi-term
    /// polynomials need parentheses, everything else (single terms and
    /// fractions, whose tops and bottoms are already wrapped) is safe.
    pub fn display_as_factor(&self) -> String {
        if self.den.is_one() && self.num.terms.len() > 1 {
            format!("({self})")
        } else {
            format!("{self}")
        }
    }

    /// Rebuild a scalar from [`Scalar::subfield_coords`] output:
    /// `sum_e coords[e]^(p^r) * t^e`.
    pub fn from_subfield_coords(
        field: &Field,
        r: u32,
        coords: &BTreeMap<Exponents, Scalar>,
    ) -> Scalar {
        let mut acc = field.zero();
        for (e, c) in coords {
            let mut mono = Poly::one(field.nvars());
            for (i, &x) in e.iter().enumerate() {
                if x > 0 {
                    mono = mono.mul(&Poly::monomial(field.nvars(), i, x, 1), field.p());
                }
            }
            acc = &acc + &(&c.frobenius(r) * &Scalar::from_poly(field, mono));
        }
        acc
    }
}

/// Scale a family of scalars by the least common multiple of their
/// denominators, so every entry becomes polynomial. Multiplying an equation
/// through by a nonzero polynomial preserves its solution set, which is how
/// the semilinear solvers use this.
pub(crate) fn clear_denominators(field: &Field, row: &[Scalar]) -> Vec<Scalar> {
    let p = field.p();
    let mut lcm = Poly::one(field.nvars());
    for s in row {
        assert!(s.field() == field, "mixed fields in clear_denominators");
        if s.den.is_one() {
            continue;
        }
        let g = poly_gcd(&lcm, &s.den, p);
        lcm = lcm
            .div_exact(&g, p)
            .expect("gcd divides")
            .mul(&s.den, p);
    }
    let lcm = Scalar::from_poly(field, lcm);
    row.iter()
        .map(|s| {
            let cleared = s * &lcm;
            debug_assert!(cleared.is_polynomial(), "lcm clears every denominator");
            cleared
        })
        .collect()
}

fn assert_same_field(a: &Scalar, b: &Scalar) {
    assert!(
        a.field == b.field,
        "scalars from different fields: {} vs {}",
        a.field,
        b.field
    );
}

impl std::ops::Add for &Scalar {
    type Output = Scalar;
    fn add(self, other: &Scalar) -> Scalar {
        assert_same_field(self, other);
        let p = self.field.p();
        let num = self
            .num
            .mul(&other.den, p)
            .add(&other.num.mul(&self.den, p), p);
        let den = self.den.mul(&other.den, p);
        Scalar::make(self.field.clone(), num, den).expect("denominators are nonzero")
    }
}

impl std::ops::Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, other: &Scalar) -> Scalar {
        self + &(-other)
    }
}

impl std::ops::Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            field: self.field.clone(),
            num: self.num.neg(self.field.p()),
            den: self.den.clone(),
        }
    }
}

impl std::ops::Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, other: &Scalar) -> Scalar {
        assert_same_field(self, other);
        let p = self.field.p();
        Scalar::make(
            self.field.clone(),
            self.num.mul(&other.num, p),
            self.den.mul(&other.den, p),
        )
        .expect("denominators are nonzero")
    }
}

impl std::ops::Div for &Scalar {
    type Output = Scalar;
    fn div(self, other: &Scalar) -> Scalar {
        self.checked_div(other).expect("division by zero scalar")
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl std::ops::$trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, other: Scalar) -> Scalar {
                (&self).$method(&other)
            }
        }
        impl std::ops::$trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, other: &Scalar) -> Scalar {
                (&self).$method(other)
            }
        }
        impl std::ops::$trait<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, other: Scalar) -> Scalar {
                self.$method(&other)
            }
        }
    };
}
forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);
forward_owned_binop!(Div, div);

impl std::ops::Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

// ---------------------------------------------------------------------------
// Printing and parsing
// ---------------------------------------------------------------------------

fn poly_term_string(e: &Exponents, c: u32, vars: &[String]) -> String {
    let mut parts = Vec::new();
    if c != 1 || e.iter().all(|&x| x == 0) {
        parts.push(c.to_string());
    }
    for (i, &x) in e.iter().enumerate() {
        if x == 1 {
            parts.push(vars[i].clone());
        } else if x > 1 {
            parts.push(format!("{}^{}", vars[i], x));
        }
    }
    parts.join("*")
}

fn poly_string(poly: &Poly, vars: &[String]) -> String {
    if poly.is_zero() {
        return "0".to_string();
    }
    poly.terms
        .iter()
        .rev()
        .map(|(e, c)| poly_term_string(e, *c, vars))
        .collect::<Vec<_>>()
        .join(" + ")
}

/// A polynomial that can appear after `/` without parentheses: a bare
/// integer, or a coefficient-1 power of a single variable.
fn den_needs_parens(poly: &Poly) -> bool {
    if poly.terms.len() != 1 {
        return true;
    }
    let (e, c) = poly.terms.iter().next().unwrap();
    let nvars_used = e.iter().filter(|&&x| x > 0).count();
    match nvars_used {
        0 => false,
        1 => *c != 1,
        _ => true,
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vars = self.field.vars();
        if self.den.is_one() {
            return write!(f, "{}", poly_string(&self.num, vars));
        }
        let num = if self.num.terms.len() > 1 {
            format!("({})", poly_string(&self.num, vars))
        } else {
            poly_string(&self.num, vars)
        };
        let den = if den_needs_parens(&self.den) {
            format!("({})", poly_string(&self.den, vars))
        } else {
            poly_string(&self.den, vars)
        };
        write!(f, "{num}/{den}")
    }
}

struct Parser<'a> {
    field: &'a Field,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn parse_all(mut self) -> Result<Scalar, ScalarError> {
        let value = self.expr()?;
        self.skip_ws();
        if self.pos != self.bytes.len() {
            return Err(self.err("unexpected trailing input"));
        }
        Ok(value)
    }

    fn err(&self, msg: &str) -> ScalarError {
        ScalarError::Parse {
            pos: self.pos,
            msg: msg.to_string(),
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

    fn expr(&mut self) -> Result<Scalar, ScalarError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Scalar, ScalarError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.factor()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let rhs = self.factor()?;
                    acc = acc.checked_div(&rhs)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Scalar, ScalarError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let e = self.integer()?;
            Ok(base.pow(e))
        } else {
            Ok(base)
        }
    }

    fn integer(&mut self) -> Result<u32, ScalarError> {
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
            .parse::<u32>()
            .map_err(|_| self.err("integer too large"))
    }

    fn atom(&mut self) -> Result<Scalar, ScalarError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b'-') => {
                self.pos += 1;
                Ok(-&self.factor()?)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(self.field.from_int(n as i64))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.bytes.len()
                    && (self.bytes[self.pos].is_ascii_alphanumeric() || self.bytes[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
                self.field.var_named(name)
            }
            _ => Err(self.err("expected a number, variable, or `(`")),
        }
    }
}
