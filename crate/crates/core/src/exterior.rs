//! Alternating tensor fields: multivectors, differential forms, the wedge
//! product, the duality pairing and the insertion operators.
//!
//! Both variances share one representation: a homogeneous degree and a map from
//! strictly increasing index tuples ([`Blade`]) to nonzero polynomial
//! coefficients. The variance is a type parameter, so a [`Form`] can never be
//! wedged with a [`Multivector`] by accident.
//!
//! Basis conventions: `⟨dx_I, ∂_J⟩ = δ_IJ` on increasing tuples, which is the
//! determinant pairing `⟨φ1∧…∧φk, X1∧…∧Xk⟩ = det(⟨φi, Xj⟩)`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::marker::PhantomData;
use std::ops::{Add, Neg, Sub};

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::ring::{Polynomial, Rational};

/// Largest supported chart dimension for alternating tensors.
pub const MAX_DIM: usize = 32;

/// A strictly increasing index tuple, stored as a bit set (bit `i` = index `i`,
/// 0-based). Ordered lexicographically as a tuple.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Blade(u32);

impl Blade {
    pub const EMPTY: Blade = Blade(0);

    pub fn from_mask(mask: u32) -> Self {
        Blade(mask)
    }

    pub fn single(i: usize) -> Self {
        assert!(i < MAX_DIM);
        Blade(1 << i)
    }

    /// Sorts `indices` (0-based, any order) and returns the blade with the sign
    /// of the sorting permutation, or `None` if an index repeats.
    pub fn from_indices(indices: &[usize]) -> Option<(Blade, i32)> {
        let mut acc = Blade::EMPTY;
        let mut sign = 1;
        for &i in indices {
            assert!(i < MAX_DIM, "index {i} exceeds the supported dimension");
            sign *= wedge_sign(acc, Blade::single(i))?;
            acc = Blade(acc.0 | 1 << i);
        }
        Some((acc, sign))
    }

    pub fn mask(self) -> u32 {
        self.0
    }

    pub fn grade(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn is_subset_of(self, other: Blade) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn without(self, other: Blade) -> Blade {
        Blade(self.0 & !other.0)
    }

    /// Indices in increasing order (0-based).
    pub fn indices(self) -> impl Iterator<Item = usize> {
        let mut m = self.0;
        std::iter::from_fn(move || {
            if m == 0 {
                return None;
            }
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(i)
        })
    }

    pub fn max_index(self) -> Option<usize> {
        (self.0 != 0).then(|| 31 - self.0.leading_zeros() as usize)
    }

    /// Every blade of the given grade in dimension `dim`, lexicographically.
    pub fn all(dim: usize, grade: usize) -> Vec<Blade> {
        assert!(dim <= MAX_DIM);
        let mut out = Vec::new();
        if grade > dim {
            return out;
        }
        fn rec(dim: usize, start: usize, left: usize, acc: u32, out: &mut Vec<Blade>) {
            if left == 0 {
                out.push(Blade(acc));
                return;
            }
            for i in start..=dim - left {
                rec(dim, i + 1, left - 1, acc | 1 << i, out);
            }
        }
        rec(dim, 0, grade, 0, &mut out);
        out
    }
}

impl Ord for Blade {
    fn cmp(&self, other: &Self) -> Ordering {
        let diff = self.0 ^ other.0;
        if diff == 0 {
            return Ordering::Equal;
        }
        if self.0 >> diff.trailing_zeros() & 1 == 1 {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }
}

impl PartialOrd for Blade {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.indices().map(|i| i + 1)).finish()
    }
}

/// Sign of the shuffle that sorts the concatenation `a ++ b`, or `None` when
/// the two blades share an index.
pub fn wedge_sign(a: Blade, b: Blade) -> Option<i32> {
    if a.0 & b.0 != 0 {
        return None;
    }
    let mut inversions = 0u32;
    for j in b.indices() {
        inversions += (a.0 >> j).count_ones();
    }
    Some(if inversions.is_multiple_of(2) { 1 } else { -1 })
}

/// Marker for the variance of a [`Graded`] field.
pub trait Variance: Copy + Eq + fmt::Debug + Send + Sync + 'static {
    const KIND: &'static str;
    const BASIS: &'static str;
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Contravariant {}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Covariant {}

impl Variance for Contravariant {
    const KIND: &'static str = "multivector";
    const BASIS: &'static str = "e";
}

impl Variance for Covariant {
    const KIND: &'static str = "form";
    const BASIS: &'static str = "dx";
}

/// A homogeneous alternating tensor field with polynomial coefficients.
///
/// Degree-0 fields are functions (the coefficient of the empty blade). A zero
/// field compares equal to a zero field of any degree.
#[derive(Clone)]
pub struct Graded<V: Variance> {
    dim: usize,
    degree: usize,
    terms: BTreeMap<Blade, Polynomial>,
    _variance: PhantomData<V>,
}

/// Degree-`u` multivector field `Σ f_I ∂_I`.
pub type Multivector = Graded<Contravariant>;

/// Degree-`k` differential form `Σ ω_I dx_I`.
pub type Form = Graded<Covariant>;

impl<V: Variance> Graded<V> {
    pub fn zero(dim: usize, degree: usize) -> Self {
        assert!(dim <= MAX_DIM, "dimension {dim} exceeds {MAX_DIM}");
        Graded {
            dim,
            degree,
            terms: BTreeMap::new(),
            _variance: PhantomData,
        }
    }

    /// A function viewed as a degree-0 field.
    pub fn scalar(f: Polynomial) -> Self {
        let mut out = Self::zero(f.dim(), 0);
        if !f.is_zero() {
            out.terms.insert(Blade::EMPTY, f);
        }
        out
    }

    /// `coeff · e_{i1} ∧ … ∧ e_{ik}` for 0-based indices in any order.
    pub fn term(dim: usize, indices: &[usize], coeff: Polynomial) -> Self {
        assert_eq!(coeff.dim(), dim, "coefficient dimension differs from field dimension");
        let mut out = Self::zero(dim, indices.len());
        if let Some(&bad) = indices.iter().find(|&&i| i >= dim) {
            panic!("index {bad} out of range for dim {dim}");
        }
        if let Some((blade, sign)) = Blade::from_indices(indices) {
            let c = if sign < 0 { -&coeff } else { coeff };
            if !c.is_zero() {
                out.terms.insert(blade, c);
            }
        }
        out
    }

    /// The constant basis field `e_{i1} ∧ … ∧ e_{ik}`.
    pub fn basis(dim: usize, indices: &[usize]) -> Self {
        Self::term(dim, indices, Polynomial::one(dim))
    }

    pub fn from_terms(
        dim: usize,
        degree: usize,
        terms: impl IntoIterator<Item = (Blade, Polynomial)>,
    ) -> Self {
        let mut out = Self::zero(dim, degree);
        for (b, c) in terms {
            assert_eq!(b.grade(), degree, "blade grade differs from field degree");
            assert!(b.max_index().is_none_or(|m| m < dim), "blade index out of range");
            out.add_term(b, c);
        }
        out
    }

    fn add_term(&mut self, b: Blade, c: Polynomial) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(b) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in lexicographic order of their index tuples.
    pub fn terms(&self) -> impl Iterator<Item = (Blade, &Polynomial)> {
        self.terms.iter().map(|(b, c)| (*b, c))
    }

    pub fn component(&self, b: Blade) -> Polynomial {
        self.terms
            .get(&b)
            .cloned()
            .unwrap_or_else(|| Polynomial::zero(self.dim))
    }

    /// The function part of a degree-0 field.
    pub fn as_scalar(&self) -> Option<Polynomial> {
        (self.degree == 0 || self.is_zero()).then(|| self.component(Blade::EMPTY))
    }

    pub fn scale(&self, f: &Polynomial) -> Self {
        assert_eq!(f.dim(), self.dim, "scalar dimension mismatch");
        let mut out = Self::zero(self.dim, self.degree);
        for (b, c) in &self.terms {
            out.add_term(*b, c * f);
        }
        out
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        let mut out = Self::zero(self.dim, self.degree);
        for (b, c) in &self.terms {
            out.add_term(*b, c.scale(r));
        }
        out
    }

    /// Multiplies by `(-1)^k`.
    pub fn signed(self, k: i64) -> Self {
        if k.rem_euclid(2) == 0 {
            self
        } else {
            -&self
        }
    }

    pub fn map_coefficients(&self, mut f: impl FnMut(&Polynomial) -> Polynomial) -> Self {
        let mut out = Self::zero(self.dim, self.degree);
        for (b, c) in &self.terms {
            out.add_term(*b, f(c));
        }
        out
    }

    /// Wedge product. Panics on dimension mismatch; see [`wedge`].
    pub fn wedge(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "wedge of fields with different dimensions");
        let mut out = Self::zero(self.dim, self.degree + other.degree);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                if let Some(sign) = wedge_sign(*a, *b) {
                    let c = ca * cb;
                    out.add_term(Blade(a.0 | b.0), if sign < 0 { -&c } else { c });
                }
            }
        }
        out
    }

    fn combine(&self, other: &Self, negate: bool) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch in sum of fields");
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if negate { -other } else { other.clone() };
        }
        assert_eq!(
            self.degree, other.degree,
            "sum of fields of different degrees"
        );
        let mut out = self.clone();
        for (b, c) in &other.terms {
            out.add_term(*b, if negate { -c } else { c.clone() });
        }
        out
    }
}

impl<V: Variance> PartialEq for Graded<V> {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim
            && self.terms == other.terms
            && (self.degree == other.degree || self.terms.is_empty())
    }
}

impl<V: Variance> Eq for Graded<V> {}

impl<'a, V: Variance> Add<&'a Graded<V>> for &'a Graded<V> {
    type Output = Graded<V>;
    fn add(self, rhs: &Graded<V>) -> Graded<V> {
        self.combine(rhs, false)
    }
}

impl<'a, V: Variance> Sub<&'a Graded<V>> for &'a Graded<V> {
    type Output = Graded<V>;
    fn sub(self, rhs: &Graded<V>) -> Graded<V> {
        self.combine(rhs, true)
    }
}

impl<V: Variance> Add for Graded<V> {
    type Output = Graded<V>;
    fn add(self, rhs: Graded<V>) -> Graded<V> {
        self.combine(&rhs, false)
    }
}

impl<V: Variance> Sub for Graded<V> {
    type Output = Graded<V>;
    fn sub(self, rhs: Graded<V>) -> Graded<V> {
        self.combine(&rhs, true)
    }
}

impl<V: Variance> Neg for &Graded<V> {
    type Output = Graded<V>;
    fn neg(self) -> Graded<V> {
        self.map_coefficients(|c| -c)
    }
}

impl<V: Variance> Neg for Graded<V> {
    type Output = Graded<V>;
    fn neg(self) -> Graded<V> {
        -&self
    }
}

fn check_dims(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::DimensionMismatch {
            expected: a,
            found: b,
        });
    }
    Ok(())
}

/// Contraction of `b` by `a` across the duality: the result `r` satisfies
/// `⟨φ, r⟩ = ⟨a ∧ φ, b⟩`. On basis elements, `e_A ⌟ e_B = ±e_{B∖A}` where the
/// sign is that of `e_A ∧ e_{B∖A} = ±e_B`; zero unless `A ⊆ B`.
fn contract<A: Variance, B: Variance>(a: &Graded<A>, b: &Graded<B>) -> Graded<B> {
    if b.degree < a.degree {
        return Graded::zero(b.dim, 0);
    }
    let mut out = Graded::zero(b.dim, b.degree - a.degree);
    for (sa, ca) in &a.terms {
        for (sb, cb) in &b.terms {
            if !sa.is_subset_of(*sb) {
                continue;
            }
            let rest = sb.without(*sa);
            let sign = wedge_sign(*sa, rest).expect("disjoint by construction");
            let c = ca * cb;
            out.add_term(rest, if sign < 0 { -&c } else { c });
        }
    }
    out
}

impl Multivector {
    /// `i(U)ω`; panics on dimension mismatch, see [`insert_mv`].
    pub fn insert_into(&self, form: &Form) -> Form {
        assert_eq!(self.dim, form.dim, "dimension mismatch in insertion");
        contract(self, form)
    }
}

impl Form {
    /// `ῑ(ω)U`; panics on dimension mismatch, see [`insert_form`].
    pub fn insert_into(&self, mv: &Multivector) -> Multivector {
        assert_eq!(self.dim, mv.dim, "dimension mismatch in insertion");
        contract(self, mv)
    }

    /// `⟨ω, U⟩`; zero when the degrees differ.
    pub fn pair_with(&self, mv: &Multivector) -> Polynomial {
        assert_eq!(self.dim, mv.dim, "dimension mismatch in pairing");
        let mut acc = Polynomial::zero(self.dim);
        if self.degree != mv.degree {
            return acc;
        }
        for (b, c) in &self.terms {
            if let Some(d) = mv.terms.get(b) {
                acc = &acc + &(c * d);
            }
        }
        acc
    }
}

/// Wedge product of two fields of the same variance.
pub fn wedge<V: Variance>(a: &Graded<V>, b: &Graded<V>) -> Result<Graded<V>> {
    check_dims(a.dim, b.dim)?;
    Ok(a.wedge(b))
}

/// The duality pairing `⟨ω, U⟩`, zero on mismatched degrees.
pub fn pair(form: &Form, mv: &Multivector) -> Result<Polynomial> {
    check_dims(form.dim, mv.dim)?;
    Ok(form.pair_with(mv))
}

/// `i(U)ω`, the dual of `V ↦ U ∧ V`: `⟨i(U)ω, V⟩ = ⟨ω, U ∧ V⟩`.
pub fn insert_mv(mv: &Multivector, form: &Form) -> Result<Form> {
    check_dims(mv.dim, form.dim)?;
    Ok(mv.insert_into(form))
}

/// `ῑ(ω)U`, the dual of `φ ↦ ω ∧ φ`: `⟨φ, ῑ(ω)U⟩ = ⟨ω ∧ φ, U⟩`.
pub fn insert_form(form: &Form, mv: &Multivector) -> Result<Multivector> {
    check_dims(form.dim, mv.dim)?;
    Ok(form.insert_into(mv))
}

impl<V: Variance> fmt::Display for Graded<V> {
    /// Canonical text, e.g. `x3*e1^e2 + x1*e2^e3`; zero prints as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (b, c)) in self.terms.iter().enumerate() {
            let basis = b
                .indices()
                .map(|i| format!("{}{}", V::BASIS, i + 1))
                .collect::<Vec<_>>()
                .join("^");
            let text = if basis.is_empty() {
                c.to_string()
            } else if c.is_one() {
                basis
            } else if c.num_terms() == 1 {
                format!("{c}*{basis}")
            } else {
                format!("({c})*{basis}")
            };
            if k == 0 {
                f.write_str(&text)?;
            } else if let Some(rest) = text.strip_prefix('-') {
                write!(f, " - {rest}")?;
            } else {
                write!(f, " + {text}")?;
            }
        }
        Ok(())
    }
}

impl<V: Variance> fmt::Debug for Graded<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[dim {}, deg {}]({self})", V::KIND, self.dim, self.degree)
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    index: Vec<usize>,
    coeff: String,
}

#[derive(Serialize, Deserialize)]
struct GradedJson {
    kind: String,
    dim: usize,
    degree: usize,
    terms: Vec<TermJson>,
}

impl<V: Variance> Serialize for Graded<V> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GradedJson {
            kind: V::KIND.to_string(),
            dim: self.dim,
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .map(|(b, c)| TermJson {
                    index: b.indices().map(|i| i + 1).collect(),
                    coeff: c.to_string(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de, V: Variance> Deserialize<'de> for Graded<V> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = GradedJson::deserialize(d)?;
        if raw.kind != V::KIND {
            return Err(D::Error::custom(format!(
                "expected kind `{}`, found `{}`",
                V::KIND,
                raw.kind
            )));
        }
        if raw.dim > MAX_DIM {
            return Err(D::Error::custom("dimension too large"));
        }
        let mut out = Graded::zero(raw.dim, raw.degree);
        for t in raw.terms {
            if t.index.len() != raw.degree {
                return Err(D::Error::custom("index length differs from degree"));
            }
            if t.index.windows(2).any(|w| w[0] >= w[1]) {
                return Err(D::Error::custom("index tuple must be strictly increasing"));
            }
            if t.index.iter().any(|&i| i == 0 || i > raw.dim) {
                return Err(D::Error::custom("index out of range"));
            }
            let zero_based: Vec<usize> = t.index.iter().map(|i| i - 1).collect();
            let (blade, _) = Blade::from_indices(&zero_based).expect("strictly increasing");
            let coeff = crate::parser::parse_polynomial(&t.coeff, raw.dim)
                .map_err(|e| D::Error::custom(e.to_string()))?;
            out.add_term(blade, coeff);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(dim: usize, i: usize) -> Polynomial {
        Polynomial::var(dim, i - 1)
    }

    fn e(dim: usize, idx: &[usize]) -> Multivector {
        let z: Vec<usize> = idx.iter().map(|i| i - 1).collect();
        Multivector::basis(dim, &z)
    }

    fn dx(dim: usize, idx: &[usize]) -> Form {
        let z: Vec<usize> = idx.iter().map(|i| i - 1).collect();
        Form::basis(dim, &z)
    }

    #[test]
    fn blade_order_is_lexicographic() {
        let all = Blade::all(4, 2);
        let tuples: Vec<Vec<usize>> = all.iter().map(|b| b.indices().map(|i| i + 1).collect()).collect();
        assert_eq!(
            tuples,
            vec![vec![1, 2], vec![1, 3], vec![1, 4], vec![2, 3], vec![2, 4], vec![3, 4]]
        );
        let mut shuffled = all.clone();
        shuffled.reverse();
        shuffled.sort();
        assert_eq!(shuffled, all);
    }

    #[test]
    fn wedge_examples() {
        assert_eq!(e(2, &[1]).wedge(&e(2, &[2])), e(2, &[1, 2]));
        assert_eq!(e(2, &[2]).wedge(&e(2, &[1])), -e(2, &[1, 2]));
        let x1e1 = e(2, &[1]).scale(&x(2, 1));
        assert!(x1e1.wedge(&e(2, &[1, 2])).is_zero());
        assert!(wedge(&e(2, &[1]), &e(3, &[1])).is_err());
    }

    #[test]
    fn pairing_examples() {
        assert!(pair(&dx(2, &[1, 2]), &e(2, &[1, 2])).unwrap().is_one());
        assert_eq!(
            pair(&dx(2, &[1, 2]), &e(2, &[2]).wedge(&e(2, &[1]))).unwrap(),
            Polynomial::integer(2, -1)
        );
        let w = dx(2, &[1, 2]).scale(&x(2, 1));
        assert_eq!(pair(&w, &e(2, &[1, 2])).unwrap(), x(2, 1));
        // mismatched degrees pair to zero
        assert!(pair(&dx(2, &[1]), &e(2, &[1, 2])).unwrap().is_zero());
        // degree 0: product of functions
        let f = Form::scalar(x(2, 1));
        let g = Multivector::scalar(x(2, 2));
        assert_eq!(pair(&f, &g).unwrap(), &x(2, 1) * &x(2, 2));
    }

    #[test]
    fn insertion_examples() {
        let w = dx(2, &[1, 2]);
        assert_eq!(insert_mv(&e(2, &[1]), &w).unwrap(), dx(2, &[2]));
        assert_eq!(insert_mv(&e(2, &[2]), &w).unwrap(), -dx(2, &[1]));
        assert_eq!(
            insert_mv(&e(2, &[1, 2]), &w).unwrap(),
            Form::scalar(Polynomial::one(2))
        );
        let u = e(2, &[1, 2]);
        assert_eq!(insert_form(&dx(2, &[1]), &u).unwrap(), e(2, &[2]));
        assert_eq!(insert_form(&dx(2, &[2]), &u).unwrap(), -e(2, &[1]));
        assert_eq!(
            insert_form(&dx(2, &[1, 2]), &u).unwrap(),
            Multivector::scalar(Polynomial::one(2))
        );
        // degree too low: zero
        assert!(insert_mv(&e(2, &[1, 2]), &dx(2, &[1])).unwrap().is_zero());
        // i(f)ω = fω
        let f = x(2, 2);
        assert_eq!(insert_mv(&Multivector::scalar(f.clone()), &w).unwrap(), w.scale(&f));
    }

    #[test]
    fn display_examples() {
        assert_eq!((-e(2, &[2])).to_string(), "-1*e2");
        assert_eq!(Multivector::zero(3, 2).to_string(), "0");
        let p = &e(3, &[1, 2]).scale(&x(3, 3)) + &e(3, &[2, 3]).scale(&x(3, 1));
        assert_eq!(p.to_string(), "x3*e1^e2 + x1*e2^e3");
        let q = dx(2, &[1]).scale(&(&x(2, 1) + &x(2, 2)));
        assert_eq!(q.to_string(), "(x1 + x2)*dx1");
        let r = &e(2, &[1]).scale(&x(2, 1)) - &e(2, &[2]);
        assert_eq!(r.to_string(), "x1*e1 - 1*e2");
    }

    #[test]
    fn zero_fields_compare_equal_across_degrees() {
        assert_eq!(Multivector::zero(3, 1), Multivector::zero(3, 3));
        assert_ne!(Multivector::zero(3, 1), Multivector::zero(2, 1));
    }

    #[test]
    fn json_shape() {
        let p = &e(3, &[1, 2]).scale(&x(3, 3)) + &e(3, &[2, 3]);
        let js = serde_json::to_string(&p).unwrap();
        assert_eq!(
            js,
            r#"{"kind":"multivector","dim":3,"degree":2,"terms":[{"index":[1,2],"coeff":"x3"},{"index":[2,3],"coeff":"1"}]}"#
        );
        let back: Multivector = serde_json::from_str(&js).unwrap();
        assert_eq!(back, p);
        assert!(serde_json::from_str::<Form>(&js).is_err());
    }
}
