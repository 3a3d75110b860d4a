//! Exterior derivative, Lie bracket of vector fields, the Lie differential
//! `L(U) = [i(U), d]`, and linear operators on forms with their graded
//! commutators.
//!
//! Operator identities are decided by [`operator_equal`]: both sides are
//! applied to every form `m·dx_I` of a finite spanning family. All operators
//! here are ℝ-linear, so agreement on the family is exact agreement on its
//! span.

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::exterior::{Blade, Form, Multivector};
use crate::ring::{Monomial, Polynomial, Rational};

impl Form {
    /// Exterior derivative `d(f dx_I) = Σ_j ∂_j f dx_j ∧ dx_I`.
    pub fn d(&self) -> Form {
        let dim = self.dim();
        let mut out = Form::zero(dim, self.degree() + 1);
        for (blade, c) in self.terms() {
            for j in 0..dim {
                if blade.contains(j) {
                    continue;
                }
                let dc = c.partial(j);
                if dc.is_zero() {
                    continue;
                }
                let mut idx = vec![j];
                idx.extend(blade.indices());
                out = &out + &Form::term(dim, &idx, dc);
            }
        }
        out
    }
}

/// `d` of a function, as a 1-form.
pub fn differential(f: &Polynomial) -> Form {
    Form::scalar(f.clone()).d()
}

/// Exterior derivative.
pub fn ext_deriv(form: &Form) -> Form {
    form.d()
}

fn check_degree(mv: &Multivector, want: usize, what: &str) -> Result<()> {
    if mv.degree() != want && !mv.is_zero() {
        return Err(Error::DegreeMismatch(format!(
            "{what} must have degree {want}, found {}",
            mv.degree()
        )));
    }
    Ok(())
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

/// Components `X^i` of a vector field (zero where absent).
pub(crate) fn components(x: &Multivector) -> Vec<Polynomial> {
    (0..x.dim()).map(|i| x.component(Blade::single(i))).collect()
}

pub(crate) fn vector_field(comps: Vec<Polynomial>) -> Multivector {
    let dim = comps.len();
    Multivector::from_terms(
        dim,
        1,
        comps.into_iter().enumerate().map(|(i, c)| (Blade::single(i), c)),
    )
}

/// `[X, Y]^i = Σ_j X^j ∂_j Y^i − Y^j ∂_j X^i`.
pub fn lie_bracket_vf(x: &Multivector, y: &Multivector) -> Result<Multivector> {
    check_dims(x.dim(), y.dim())?;
    check_degree(x, 1, "first argument")?;
    check_degree(y, 1, "second argument")?;
    let dim = x.dim();
    let (xs, ys) = (components(x), components(y));
    let comps = (0..dim)
        .map(|i| {
            let mut acc = Polynomial::zero(dim);
            for j in 0..dim {
                acc = &acc + &(&(&xs[j] * &ys[i].partial(j)) - &(&ys[j] * &xs[i].partial(j)));
            }
            acc
        })
        .collect();
    Ok(vector_field(comps))
}

impl Multivector {
    /// `L(U)ω = i(U)dω − (−1)^u d i(U)ω`.
    pub fn lie_diff(&self, form: &Form) -> Form {
        let first = self.insert_into(&form.d());
        let second = self.insert_into(form).d().signed(self.degree() as i64);
        &first - &second
    }
}

/// The Lie differential `L(U)ω`, homogeneous of degree `1 − u`.
pub fn lie_diff(mv: &Multivector, form: &Form) -> Result<Form> {
    check_dims(mv.dim(), form.dim())?;
    Ok(mv.lie_diff(form))
}

type Action = Arc<dyn Fn(&Form) -> Form + Send + Sync>;

/// An ℝ-linear operator on forms that shifts degree by `homogeneity`.
#[derive(Clone)]
pub struct FormOperator {
    dim: usize,
    homogeneity: i32,
    action: Action,
}

impl fmt::Debug for FormOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FormOperator")
            .field("dim", &self.dim)
            .field("homogeneity", &self.homogeneity)
            .finish_non_exhaustive()
    }
}

impl FormOperator {
    pub fn from_fn(
        dim: usize,
        homogeneity: i32,
        f: impl Fn(&Form) -> Form + Send + Sync + 'static,
    ) -> Self {
        FormOperator {
            dim,
            homogeneity,
            action: Arc::new(f),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn homogeneity(&self) -> i32 {
        self.homogeneity
    }

    pub fn apply(&self, form: &Form) -> Form {
        assert_eq!(form.dim(), self.dim, "operator applied to form of wrong dimension");
        (self.action)(form)
    }

    pub fn zero(dim: usize, homogeneity: i32) -> Self {
        Self::from_fn(dim, homogeneity, move |w| {
            Form::zero(dim, (w.degree() as i32 + homogeneity).max(0) as usize)
        })
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, 0, Form::clone)
    }

    /// Exterior derivative `d`.
    pub fn d(dim: usize) -> Self {
        Self::from_fn(dim, 1, Form::d)
    }

    /// Insertion `i(U)`.
    pub fn insertion(mv: Multivector) -> Self {
        let (dim, hom) = (mv.dim(), -(mv.degree() as i32));
        Self::from_fn(dim, hom, move |w| mv.insert_into(w))
    }

    /// Left multiplication `μ(ω): ψ ↦ ω ∧ ψ`.
    pub fn multiplication(form: Form) -> Self {
        let (dim, hom) = (form.dim(), form.degree() as i32);
        Self::from_fn(dim, hom, move |w| form.wedge(w))
    }

    /// Lie differential `L(U)`.
    pub fn lie(mv: Multivector) -> Self {
        let (dim, hom) = (mv.dim(), 1 - mv.degree() as i32);
        Self::from_fn(dim, hom, move |w| mv.lie_diff(w))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &FormOperator) -> Self {
        assert_eq!(self.dim, other.dim, "composition of operators of different dimensions");
        let (a, b) = (self.action.clone(), other.action.clone());
        Self::from_fn(self.dim, self.homogeneity + other.homogeneity, move |w| a(&b(w)))
    }

    pub fn scaled(&self, r: Rational) -> Self {
        let a = self.action.clone();
        Self::from_fn(self.dim, self.homogeneity, move |w| a(w).scale_rational(&r))
    }

    /// Multiplies by `(−1)^k`.
    pub fn signed(&self, k: i64) -> Self {
        if k.rem_euclid(2) == 0 {
            self.clone()
        } else {
            -self
        }
    }

    fn combine(&self, other: &FormOperator, negate: bool) -> Self {
        assert_eq!(self.dim, other.dim, "sum of operators of different dimensions");
        assert_eq!(
            self.homogeneity, other.homogeneity,
            "sum of operators of different homogeneity"
        );
        let (a, b) = (self.action.clone(), other.action.clone());
        Self::from_fn(self.dim, self.homogeneity, move |w| {
            if negate {
                a(w) - b(w)
            } else {
                a(w) + b(w)
            }
        })
    }

    /// `[A, B] = A∘B − (−1)^{|A||B|} B∘A`.
    pub fn commutator(&self, other: &FormOperator) -> Self {
        let ab = self.compose(other);
        let ba = other.compose(self);
        let k = self.homogeneity as i64 * other.homogeneity as i64;
        &ab - &ba.signed(k)
    }
}

impl<'a> Add<&'a FormOperator> for &'a FormOperator {
    type Output = FormOperator;
    fn add(self, rhs: &FormOperator) -> FormOperator {
        self.combine(rhs, false)
    }
}

impl<'a> Sub<&'a FormOperator> for &'a FormOperator {
    type Output = FormOperator;
    fn sub(self, rhs: &FormOperator) -> FormOperator {
        self.combine(rhs, true)
    }
}

impl Neg for &FormOperator {
    type Output = FormOperator;
    fn neg(self) -> FormOperator {
        let a = self.action.clone();
        FormOperator::from_fn(self.dim, self.homogeneity, move |w| -a(w))
    }
}

/// Graded commutator `[A, B] = A∘B − (−1)^{|A||B|} B∘A`.
pub fn graded_commutator(a: &FormOperator, b: &FormOperator) -> Result<FormOperator> {
    check_dims(a.dim, b.dim)?;
    Ok(a.commutator(b))
}

/// Sizes for randomized identity checks and for the spanning family of
/// [`operator_equal`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TestScope {
    pub dim: usize,
    pub max_multivector_degree: usize,
    /// Largest total degree of the monomial coefficients in the family.
    pub coeff_degree: u32,
    /// Largest form degree in the family.
    pub form_degree: usize,
    pub trials: usize,
    pub seed: u64,
}

impl TestScope {
    /// Full scope for `dim`: every form degree, coefficients up to degree 3.
    pub fn new(dim: usize) -> Self {
        TestScope {
            dim,
            max_multivector_degree: dim,
            coeff_degree: 3,
            form_degree: dim,
            trials: 100,
            seed: 0,
        }
    }

    pub fn with_degrees(dim: usize, coeff_degree: u32, form_degree: usize) -> Self {
        TestScope {
            coeff_degree,
            form_degree,
            ..Self::new(dim)
        }
    }

    /// `{m·dx_I}` for monomials `m` of degree ≤ `coeff_degree` and increasing
    /// tuples `I` with `|I| ≤ form_degree`.
    pub fn spanning_family(&self) -> Vec<Form> {
        let monomials = Monomial::all_up_to(self.dim, self.coeff_degree);
        let mut out = Vec::new();
        for k in 0..=self.form_degree.min(self.dim) {
            for blade in Blade::all(self.dim, k) {
                for m in &monomials {
                    let c = Polynomial::term(self.dim, m.clone(), Rational::one());
                    out.push(Form::from_terms(self.dim, k, [(blade, c)]));
                }
            }
        }
        out
    }
}

/// A form on which two operators disagree, with both images.
#[derive(Clone, Debug)]
pub struct OperatorMismatch {
    pub input: Form,
    pub left: Form,
    pub right: Form,
}

/// First element of the spanning family on which `a` and `b` differ.
pub fn operator_counterexample_with(
    exec: Exec,
    a: &FormOperator,
    b: &FormOperator,
    scope: &TestScope,
) -> Result<Option<OperatorMismatch>> {
    check_dims(a.dim, b.dim)?;
    check_dims(a.dim, scope.dim)?;
    if a.homogeneity != b.homogeneity {
        return Err(Error::HomogeneityMismatch {
            left: a.homogeneity,
            right: b.homogeneity,
        });
    }
    let family = scope.spanning_family();
    Ok(exec.find_first(&family, |w| {
        let (l, r) = (a.apply(w), b.apply(w));
        (l != r).then(|| OperatorMismatch {
            input: w.clone(),
            left: l,
            right: r,
        })
    }))
}

pub fn operator_counterexample(
    a: &FormOperator,
    b: &FormOperator,
    scope: &TestScope,
) -> Result<Option<OperatorMismatch>> {
    operator_counterexample_with(Exec::default(), a, b, scope)
}

/// Exact equality of two operators on the span of the scope's family.
pub fn operator_equal(a: &FormOperator, b: &FormOperator, scope: &TestScope) -> Result<bool> {
    Ok(operator_counterexample(a, b, scope)?.is_none())
}
