//! Exact multivariate polynomials over the rationals.
//!
//! A [`Polynomial`] in `dim` variables `x1..x{dim}` is stored as a map from
//! exponent vectors to nonzero rational coefficients. Iteration runs in
//! graded-lexicographic order so that printing is reproducible.

mod rational;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use smallvec::SmallVec;

use crate::error::{Error, Result};

pub use rational::{factorial, Rational};

/// Exponent vector of a monomial, ordered graded-lexicographically
/// (total degree first, then `x1` most significant).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    degree: u32,
    exps: SmallVec<[u16; 6]>,
}

impl Monomial {
    pub fn one(dim: usize) -> Self {
        Monomial {
            degree: 0,
            exps: SmallVec::from_elem(0, dim),
        }
    }

    pub fn from_exponents(exps: &[u16]) -> Self {
        Monomial {
            degree: exps.iter().map(|&e| e as u32).sum(),
            exps: SmallVec::from_slice(exps),
        }
    }

    /// `x_i` (0-based) in `dim` variables.
    pub fn var(dim: usize, i: usize) -> Self {
        let mut m = Self::one(dim);
        m.exps[i] = 1;
        m.degree = 1;
        m
    }

    pub fn dim(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn exponents(&self) -> &[u16] {
        &self.exps
    }

    pub fn exponent(&self, i: usize) -> u16 {
        self.exps[i]
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| a.checked_add(*b).expect("monomial exponent overflow"))
            .collect();
        Monomial {
            degree: self.degree + other.degree,
            exps,
        }
    }

    /// All monomials in `dim` variables with total degree at most `max_degree`,
    /// in ascending graded-lex order.
    pub fn all_up_to(dim: usize, max_degree: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        for d in 0..=max_degree {
            let mut exps = vec![0u16; dim];
            compositions(dim, d, 0, &mut exps, &mut out);
        }
        out.sort();
        out
    }
}

fn compositions(dim: usize, remaining: u32, pos: usize, exps: &mut Vec<u16>, out: &mut Vec<Monomial>) {
    if dim == 0 {
        if remaining == 0 {
            out.push(Monomial::from_exponents(exps));
        }
        return;
    }
    if pos == dim - 1 {
        exps[pos] = remaining as u16;
        out.push(Monomial::from_exponents(exps));
        exps[pos] = 0;
        return;
    }
    for e in 0..=remaining {
        exps[pos] = e as u16;
        compositions(dim, remaining - e, pos + 1, exps, out);
    }
    exps[pos] = 0;
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree
            .cmp(&other.degree)
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial in `dim` variables with rational coefficients, in canonical form
/// (no stored zero coefficients).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    dim: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(dim: usize) -> Self {
        Polynomial {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(dim: usize) -> Self {
        Self::constant(dim, Rational::one())
    }

    pub fn constant(dim: usize, c: Rational) -> Self {
        Self::term(dim, Monomial::one(dim), c)
    }

    pub fn integer(dim: usize, n: i64) -> Self {
        Self::constant(dim, Rational::from_integer(n))
    }

    /// The coordinate function `x_i` (0-based index).
    pub fn var(dim: usize, i: usize) -> Self {
        assert!(i < dim, "variable index {i} out of range for dim {dim}");
        Self::term(dim, Monomial::var(dim, i), Rational::one())
    }

    pub fn term(dim: usize, m: Monomial, c: Rational) -> Self {
        assert_eq!(m.dim(), dim, "monomial arity differs from polynomial dim");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { dim, terms }
    }

    /// Builds a polynomial from `(monomial, coefficient)` pairs, combining
    /// repeated monomials and dropping zeros.
    pub fn from_terms(dim: usize, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Self::zero(dim);
        for (m, c) in terms {
            assert_eq!(m.dim(), dim, "monomial arity differs from polynomial dim");
            p.add_term(m, &c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: &Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + c;
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

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.constant_term().is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn constant_term(&self) -> Rational {
        self.terms
            .get(&Monomial::one(self.dim))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in descending graded-lex order (the printing order).
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter().rev()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    fn check_dim(&self, other: &Polynomial) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_dim(other)?;
        Ok(self + other)
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_dim(other)?;
        Ok(self * other)
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.dim);
        }
        Polynomial {
            dim: self.dim,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.dim);
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Formal partial derivative by `x_i` (0-based). Panics if `i >= dim`.
    pub fn partial(&self, i: usize) -> Polynomial {
        assert!(i < self.dim, "variable index {i} out of range for dim {}", self.dim);
        let mut out = Polynomial::zero(self.dim);
        for (m, c) in &self.terms {
            let e = m.exps[i];
            if e == 0 {
                continue;
            }
            let mut dm = m.clone();
            dm.exps[i] -= 1;
            dm.degree -= 1;
            out.terms.insert(dm, c * &Rational::from_integer(e as i64));
        }
        out
    }

    pub fn try_partial(&self, i: usize) -> Result<Polynomial> {
        if i >= self.dim {
            return Err(Error::IndexOutOfRange {
                index: i + 1,
                dim: self.dim,
            });
        }
        Ok(self.partial(i))
    }

    /// Composition `p(φ_1, …, φ_dim)`; the result lives in the common
    /// dimension of the `φ_i`.
    pub fn substitute(&self, images: &[Polynomial]) -> Result<Polynomial> {
        if images.len() != self.dim {
            return Err(Error::ArityMismatch {
                expected: self.dim,
                found: images.len(),
            });
        }
        let target = match images.first() {
            Some(p) => p.dim,
            None => return Ok(Polynomial::constant(0, self.constant_term())),
        };
        if let Some(bad) = images.iter().find(|p| p.dim != target) {
            return Err(Error::DimensionMismatch {
                expected: target,
                found: bad.dim,
            });
        }
        // powers[i][k] = φ_i^k, filled lazily
        let mut powers: Vec<Vec<Polynomial>> = images
            .iter()
            .map(|_| vec![Polynomial::one(target)])
            .collect();
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut acc = Polynomial::constant(target, c.clone());
            for (i, &e) in m.exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap() * &images[i];
                    powers[i].push(next);
                }
                acc = &acc * &powers[i][e as usize];
            }
            out = &out + &acc;
        }
        Ok(out)
    }

    /// Re-expresses the polynomial in `new_dim` variables, sending `x_i` to
    /// `x_{placement[i]}`.
    pub fn embed(&self, new_dim: usize, placement: &[usize]) -> Polynomial {
        assert_eq!(placement.len(), self.dim);
        let terms = self.terms.iter().map(|(m, c)| {
            let mut exps: SmallVec<[u16; 6]> = SmallVec::from_elem(0, new_dim);
            for (i, &e) in m.exps.iter().enumerate() {
                exps[placement[i]] += e;
            }
            (Monomial { degree: m.degree, exps }, c.clone())
        });
        Polynomial::from_terms(new_dim, terms)
    }

    /// Coefficient of `x_var^power`, as a polynomial in the remaining
    /// `dim - 1` variables (order preserved).
    pub fn coefficient_of_power(&self, var: usize, power: u16) -> Polynomial {
        assert!(var < self.dim);
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.exps[var] == power)
            .map(|(m, c)| {
                let mut exps = m.exps.clone();
                exps.remove(var);
                (Monomial::from_exponents(&exps), c.clone())
            });
        Polynomial::from_terms(self.dim - 1, terms)
    }

    /// Evaluates at a rational point.
    pub fn evaluate(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.dim);
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.exps.iter()) {
                if e > 0 {
                    t *= &x.pow(e as u32);
                }
            }
            acc += &t;
        }
        acc
    }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.dim, rhs.dim, "polynomial dimension mismatch");
        let (big, small) = if self.terms.len() >= rhs.terms.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(m.clone(), c);
        }
        out
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.dim, rhs.dim, "polynomial dimension mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), &-c);
        }
        out
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.dim, rhs.dim, "polynomial dimension mismatch");
        let mut out = Polynomial::zero(self.dim);
        if self.is_zero() || rhs.is_zero() {
            return out;
        }
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), &(c1 * c2));
            }
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            dim: self.dim,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_owned_poly {
    ($tr:ident, $m:ident) => {
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: &Polynomial) -> Polynomial {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned_poly!(Add, add);
forward_owned_poly!(Sub, sub);
forward_owned_poly!(Mul, mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

/// Sum of two polynomials of equal dimension.
pub fn add(p: &Polynomial, q: &Polynomial) -> Result<Polynomial> {
    p.try_add(q)
}

/// Product of two polynomials of equal dimension.
pub fn mul(p: &Polynomial, q: &Polynomial) -> Result<Polynomial> {
    p.try_mul(q)
}

/// `∂p/∂x_i` with a 0-based variable index.
pub fn partial(p: &Polynomial, i: usize) -> Result<Polynomial> {
    p.try_partial(i)
}

/// `p ∘ (φ_1, …, φ_dim)`.
pub fn substitute(p: &Polynomial, images: &[Polynomial]) -> Result<Polynomial> {
    p.substitute(images)
}

fn write_monomial(f: &mut fmt::Formatter<'_>, m: &Monomial) -> fmt::Result {
    let mut first = true;
    for (i, &e) in m.exps.iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        write!(f, "x{}", i + 1)?;
        if e > 1 {
            write!(f, "**{e}")?;
        }
    }
    Ok(())
}

struct TermDisplay<'a>(&'a Monomial, &'a Rational);

impl fmt::Display for TermDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (m, c) = (self.0, self.1);
        if m.is_one() {
            return write!(f, "{c}");
        }
        if c.is_one() {
        } else if *c == Rational::from_integer(-1) {
            f.write_str("-")?;
        } else {
            write!(f, "{c}*")?;
        }
        write_monomial(f, m)
    }
}

/// Canonical text: terms in descending graded-lex order, e.g.
/// `3/2*x1**2*x2 - x3 + 1`; the zero polynomial prints as `0`.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms().enumerate() {
            let text = TermDisplay(m, c).to_string();
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

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial[{}]({self})", self.dim)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(dim: usize, i: usize) -> Polynomial {
        Polynomial::var(dim, i - 1)
    }

    fn c(dim: usize, n: i64, d: i64) -> Polynomial {
        Polynomial::constant(dim, Rational::new(n, d))
    }

    #[test]
    fn add_examples() {
        let x1 = x(2, 1);
        assert_eq!(&(&x1 + &c(2, 1, 1)) + &(-&x1), c(2, 1, 1));
        let x1x2 = &x1 * &x(2, 2);
        assert_eq!(&x1x2 + &x1x2, x1x2.scale(&Rational::from_integer(2)));
        let lhs = &(&x1.pow(2) + &c(2, 3, 2)) + &c(2, 1, 2);
        assert_eq!(lhs, &x1.pow(2) + &c(2, 2, 1));
    }

    #[test]
    fn mul_examples() {
        let (x1, x2) = (x(2, 1), x(2, 2));
        assert_eq!(&(&x1 + &x2) * &(&x1 - &x2), &x1.pow(2) - &x2.pow(2));
        assert!((&Polynomial::zero(2) * &(&x1 + &x2)).is_zero());
        assert_eq!(&(&c(2, 1, 2) * &x1) * &(&c(2, 2, 1) * &x2), &x1 * &x2);
    }

    #[test]
    fn partial_examples() {
        let (x1, x2) = (x(2, 1), x(2, 2));
        assert_eq!((&x1.pow(2) * &x2).partial(0), (&x1 * &x2).scale(&2.into()));
        assert!(x2.partial(0).is_zero());
        assert_eq!(x1.pow(3).partial(0), x1.pow(2).scale(&3.into()));
        assert!(matches!(x1.try_partial(2), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn substitute_examples() {
        let (x1, x2) = (x(2, 1), x(2, 2));
        let p = &x1 * &x2;
        let got = p.substitute(&[&x1 + &x2, x1.clone()]).unwrap();
        assert_eq!(got, &x1.pow(2) + &(&x1 * &x2));
        assert_eq!(p.substitute(&[x1.clone(), x2.clone()]).unwrap(), p);
        // t as a formal chart variable: x1 ↦ x1 + t·x2 in (x1, x2, t)
        let (y1, y2, t) = (x(3, 1), x(3, 2), x(3, 3));
        let q = x(1, 1).pow(2);
        let got = q.substitute(&[&y1 + &(&t * &y2)]).unwrap();
        let want = &(&y1.pow(2) + &(&(&t * &y1) * &y2).scale(&2.into())) + &(&t.pow(2) * &y2.pow(2));
        assert_eq!(got, want);
        assert!(matches!(p.substitute(&[x1]), Err(Error::ArityMismatch { .. })));
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        assert!(matches!(
            x(2, 1).try_add(&x(3, 1)),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(x(2, 1).try_mul(&x(3, 1)).is_err());
    }

    #[test]
    fn canonical_text() {
        let (x1, x2, x3) = (x(3, 1), x(3, 2), x(3, 3));
        let p = &(&x1.pow(2) * &x2).scale(&Rational::new(3, 2)) + &x3;
        assert_eq!(p.to_string(), "3/2*x1**2*x2 + x3");
        let q = &(&x1.pow(2) - &x2.pow(2)) - &c(3, 1, 1);
        assert_eq!(q.to_string(), "x1**2 - x2**2 - 1");
        assert_eq!((-&x1).to_string(), "-x1");
        assert_eq!(Polynomial::zero(3).to_string(), "0");
        assert_eq!(c(3, -1, 1).to_string(), "-1");
        assert_eq!((&x1 * &x2).scale(&Rational::new(-3, 4)).to_string(), "-3/4*x1*x2");
    }

    #[test]
    fn monomial_enumeration_counts() {
        // C(n + d, d)
        assert_eq!(Monomial::all_up_to(3, 3).len(), 20);
        assert_eq!(Monomial::all_up_to(2, 2).len(), 6);
        assert_eq!(Monomial::all_up_to(4, 0).len(), 1);
    }

    #[test]
    fn coefficient_extraction() {
        let (t, y) = (x(2, 1), x(2, 2));
        let p = &(&t * &y) + &(&t.pow(2) + &y);
        assert_eq!(p.coefficient_of_power(0, 1), x(1, 1));
        assert_eq!(p.coefficient_of_power(0, 0), x(1, 1));
        assert_eq!(p.coefficient_of_power(0, 2), c(1, 1, 1));
    }
}
