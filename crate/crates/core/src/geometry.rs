//! Polynomial maps between charts: pullback of forms, relatedness of
//! multivector fields, and polynomial flows of nilpotent linear vector
//! fields.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::calculus::{components, differential, vector_field, TestScope};
use crate::error::{Error, Result};
use crate::exterior::{wedge_sign, Blade, Form, Multivector};
use crate::ring::{factorial, Polynomial, Rational};
use crate::schouten::schouten;

/// A polynomial map `φ: ℝ^src → ℝ^dst`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMap {
    src: usize,
    dst: usize,
    components: Vec<Polynomial>,
}

impl PolyMap {
    pub fn new(src: usize, components: Vec<Polynomial>) -> Result<Self> {
        if let Some(bad) = components.iter().find(|p| p.dim() != src) {
            return Err(Error::DimensionMismatch {
                expected: src,
                found: bad.dim(),
            });
        }
        Ok(PolyMap {
            src,
            dst: components.len(),
            components,
        })
    }

    pub fn identity(dim: usize) -> Self {
        PolyMap {
            src: dim,
            dst: dim,
            components: (0..dim).map(|i| Polynomial::var(dim, i)).collect(),
        }
    }

    /// `y = A x` for a `dst × src` matrix.
    pub fn linear(src: usize, matrix: &[Vec<Rational>]) -> Result<Self> {
        let comps = matrix
            .iter()
            .map(|row| {
                if row.len() != src {
                    return Err(Error::ArityMismatch {
                        expected: src,
                        found: row.len(),
                    });
                }
                Ok(Polynomial::from_terms(
                    src,
                    row.iter()
                        .enumerate()
                        .map(|(j, a)| (crate::Monomial::var(src, j), a.clone())),
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(src, comps)
    }

    pub fn src(&self) -> usize {
        self.src
    }

    pub fn dst(&self) -> usize {
        self.dst
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &PolyMap) -> Result<PolyMap> {
        if inner.dst != self.src {
            return Err(Error::DimensionMismatch {
                expected: self.src,
                found: inner.dst,
            });
        }
        let comps = self
            .components
            .iter()
            .map(|c| pull_function(c, inner))
            .collect::<Result<Vec<_>>>()?;
        Ok(PolyMap {
            src: inner.src,
            dst: self.dst,
            components: comps,
        })
    }

    /// `J[i][j] = ∂φ_i/∂x_j`.
    pub fn jacobian(&self) -> Vec<Vec<Polynomial>> {
        self.components
            .iter()
            .map(|c| (0..self.src).map(|j| c.partial(j)).collect())
            .collect()
    }

    /// `f ∘ φ`.
    pub fn pull_function(&self, f: &Polynomial) -> Result<Polynomial> {
        pull_function(f, self)
    }

    /// `φ^*ω`.
    pub fn pullback(&self, form: &Form) -> Result<Form> {
        pullback(self, form)
    }
}

fn pull_function(f: &Polynomial, map: &PolyMap) -> Result<Polynomial> {
    if f.dim() != map.dst {
        return Err(Error::DimensionMismatch {
            expected: map.dst,
            found: f.dim(),
        });
    }
    if map.dst == 0 {
        return Ok(Polynomial::constant(map.src, f.constant_term()));
    }
    f.substitute(&map.components)
}

/// `φ^*(f dy_I) = (f∘φ) dφ_{i1} ∧ … ∧ dφ_{ik}`.
pub fn pullback(map: &PolyMap, form: &Form) -> Result<Form> {
    if form.dim() != map.dst {
        return Err(Error::DimensionMismatch {
            expected: map.dst,
            found: form.dim(),
        });
    }
    let dphi: Vec<Form> = map.components.iter().map(differential).collect();
    let mut out = Form::zero(map.src, form.degree());
    for (blade, c) in form.terms() {
        let mut term = Form::scalar(pull_function(c, map)?);
        for i in blade.indices() {
            term = term.wedge(&dphi[i]);
        }
        out = &out + &term;
    }
    Ok(out)
}

/// Multivector data with coefficients in a different number of variables
/// than the basis, e.g. `⋀^u Tφ·U` along `φ`.
type Section = BTreeMap<Blade, Polynomial>;

fn section_add(acc: &mut Section, b: Blade, c: Polynomial) {
    if c.is_zero() {
        return;
    }
    let s = match acc.remove(&b) {
        Some(old) => &old + &c,
        None => c,
    };
    if !s.is_zero() {
        acc.insert(b, s);
    }
}

/// Applies `⋀^u M` to the terms of a multivector, where column `j` of `M`
/// is the image of `∂_j`.
fn wedge_power<'a>(
    matrix: &[Vec<Polynomial>],
    coeff_dim: usize,
    terms: impl Iterator<Item = (Blade, &'a Polynomial)>,
    transform: impl Fn(&Polynomial) -> Result<Polynomial>,
) -> Result<Section> {
    let rows = matrix.len();
    let mut out = Section::new();
    for (blade, c) in terms {
        let mut acc: Section = [(Blade::EMPTY, transform(c)?)].into_iter().collect();
        for j in blade.indices() {
            let mut next = Section::new();
            for (b, cb) in &acc {
                for (i, row) in matrix.iter().enumerate().take(rows) {
                    let entry = &row[j];
                    if entry.is_zero() {
                        continue;
                    }
                    if let Some(sign) = wedge_sign(*b, Blade::single(i)) {
                        let v = cb * entry;
                        section_add(&mut next, Blade::from_mask(b.mask() | 1 << i), if sign < 0 { -v } else { v });
                    }
                }
            }
            acc = next;
        }
        for (b, v) in acc {
            debug_assert_eq!(v.dim(), coeff_dim);
            section_add(&mut out, b, v);
        }
    }
    Ok(out)
}

/// `⋀^u Tφ · U` as a section along `φ`.
fn push_along(map: &PolyMap, mv: &Multivector) -> Result<Section> {
    wedge_power(&map.jacobian(), map.src, mv.terms(), |c| Ok(c.clone()))
}

/// `U′ ∘ φ` as a section along `φ`.
fn compose_along(map: &PolyMap, mv: &Multivector) -> Result<Section> {
    let mut out = Section::new();
    for (b, c) in mv.terms() {
        section_add(&mut out, b, pull_function(c, map)?);
    }
    Ok(out)
}

fn check_related_args(map: &PolyMap, mv: &Multivector, image: &Multivector) -> Result<()> {
    if mv.dim() != map.src {
        return Err(Error::DimensionMismatch {
            expected: map.src,
            found: mv.dim(),
        });
    }
    if image.dim() != map.dst {
        return Err(Error::DimensionMismatch {
            expected: map.dst,
            found: image.dim(),
        });
    }
    if mv.degree() != image.degree() && !mv.is_zero() && !image.is_zero() {
        return Err(Error::DegreeMismatch(format!(
            "related fields must have equal degree, found {} and {}",
            mv.degree(),
            image.degree()
        )));
    }
    Ok(())
}

/// `⋀^u Tφ · U = U′ ∘ φ`, exactly.
pub fn related_exact(map: &PolyMap, mv: &Multivector, image: &Multivector) -> Result<bool> {
    check_related_args(map, mv, image)?;
    Ok(push_along(map, mv)? == compose_along(map, image)?)
}

/// `i(U) ∘ φ^* = φ^* ∘ i(U′)` on the constant and linear forms `m·dy_I`.
pub fn related_by_insertion(map: &PolyMap, mv: &Multivector, image: &Multivector) -> Result<bool> {
    check_related_args(map, mv, image)?;
    for w in TestScope::with_degrees(map.dst, 1, map.dst).spanning_family() {
        let lhs = mv.insert_into(&pullback(map, &w)?);
        let rhs = pullback(map, &image.insert_into(&w))?;
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether `U` on the source and `U′` on the target are `φ`-related, by the
/// tangent-map definition and by the insertion characterization.
pub fn related(map: &PolyMap, mv: &Multivector, image: &Multivector) -> Result<bool> {
    Ok(related_exact(map, mv, image)? && related_by_insertion(map, mv, image)?)
}

/// The unique `U′ = (⋀^u Tφ · U) ∘ ψ` related to `U`, given the inverse `ψ`.
pub fn pushforward_invertible(map: &PolyMap, inverse: &PolyMap, mv: &Multivector) -> Result<Multivector> {
    let n = map.src;
    if map.dst != n || inverse.src != n || inverse.dst != n {
        return Err(Error::InverseCheckFailed(format!(
            "maps must be square of one dimension, found {}→{} and {}→{}",
            map.src, map.dst, inverse.src, inverse.dst
        )));
    }
    if map.compose(inverse)? != PolyMap::identity(n) || inverse.compose(map)? != PolyMap::identity(n) {
        return Err(Error::InverseCheckFailed(
            "the given inverse does not invert the map".into(),
        ));
    }
    if mv.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: mv.dim(),
        });
    }
    let along = push_along(map, mv)?;
    let terms = along
        .into_iter()
        .map(|(b, c)| Ok((b, pull_function(&c, inverse)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Multivector::from_terms(n, mv.degree(), terms))
}

/// If `U_j` and `U_j′` are `φ`-related, whether `[U_1, U_2]` and `[U_1′, U_2′]` are.
pub fn naturality_check(
    map: &PolyMap,
    u1: &Multivector,
    u2: &Multivector,
    u1_image: &Multivector,
    u2_image: &Multivector,
) -> Result<bool> {
    for (k, (u, image)) in [(u1, u1_image), (u2, u2_image)].into_iter().enumerate() {
        if !related(map, u, image)? {
            return Err(Error::Precondition(format!("pair {} is not related by the map", k + 1)));
        }
    }
    let lhs = schouten(u1, u2)?;
    let rhs = schouten(u1_image, u2_image)?;
    related(map, &lhs, &rhs)
}

/// The coefficient matrix `A` of a linear vector field `X = Σ A_ij x_j ∂_i`.
pub fn linear_part(x: &Multivector) -> Result<Vec<Vec<Rational>>> {
    if x.degree() != 1 && !x.is_zero() {
        return Err(Error::NotNilpotentLinear(format!(
            "generator must be a vector field, found degree {}",
            x.degree()
        )));
    }
    let dim = x.dim();
    let mut a = vec![vec![Rational::zero(); dim]; dim];
    for (i, comp) in components(x).iter().enumerate() {
        for (m, c) in comp.terms() {
            if m.degree() != 1 {
                return Err(Error::NotNilpotentLinear(format!(
                    "component {} of the generator is not linear homogeneous",
                    i + 1
                )));
            }
            let j = m.exponents().iter().position(|&e| e == 1).expect("degree one");
            a[i][j] = c.clone();
        }
    }
    Ok(a)
}

fn mat_mul(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).fold(Rational::zero(), |acc, k| acc + &a[i][k] * &b[k][j]))
                .collect()
        })
        .collect()
}

/// The flow `Fl_t(x) = exp(tA)x` of a nilpotent linear vector field, a
/// polynomial in `(t, x_1, …, x_n)` with `t` as variable 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlowFamily {
    generator: Multivector,
    matrix: Vec<Vec<Rational>>,
    components: Vec<Polynomial>,
}

impl FlowFamily {
    pub fn new(generator: &Multivector) -> Result<Self> {
        let a = linear_part(generator)?;
        let n = generator.dim();
        // powers[k] = A^k / k!
        let mut powers = vec![(0..n)
            .map(|i| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect::<Vec<_>>())
            .collect::<Vec<_>>()];
        let mut ak = powers[0].clone();
        for k in 1..=n {
            ak = mat_mul(&ak, &a);
            if k == n {
                if ak.iter().flatten().any(|r| !r.is_zero()) {
                    return Err(Error::NotNilpotentLinear(
                        "coefficient matrix is not nilpotent".into(),
                    ));
                }
                break;
            }
            let fk = factorial(k as u32).recip();
            powers.push(ak.iter().map(|row| row.iter().map(|r| r * &fk).collect()).collect());
        }
        let t = Polynomial::var(n + 1, 0);
        let components = (0..n)
            .map(|i| {
                let mut acc = Polynomial::zero(n + 1);
                for (k, pk) in powers.iter().enumerate() {
                    let tk = t.pow(k as u32);
                    for (j, c) in pk[i].iter().enumerate() {
                        if !c.is_zero() {
                            acc = &acc + &(&tk * &Polynomial::var(n + 1, j + 1)).scale(c);
                        }
                    }
                }
                acc
            })
            .collect();
        Ok(FlowFamily {
            generator: generator.clone(),
            matrix: a,
            components,
        })
    }

    pub fn dim(&self) -> usize {
        self.generator.dim()
    }

    pub fn generator(&self) -> &Multivector {
        &self.generator
    }

    pub fn matrix(&self) -> &[Vec<Rational>] {
        &self.matrix
    }

    /// `Fl_t(x)` as polynomials in `(t, x)`.
    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    /// The family as a map `(t, x) ↦ Fl_t(x)`.
    pub fn as_map(&self) -> PolyMap {
        PolyMap::new(self.dim() + 1, self.components.clone()).expect("components in (t, x)")
    }

    /// `Fl_0 = id` and `∂_t Fl_t = X ∘ Fl_t`.
    pub fn satisfies_flow_equation(&self) -> bool {
        let n = self.dim();
        let at_zero: Vec<Polynomial> = self.components.iter().map(|c| c.coefficient_of_power(0, 0)).collect();
        if at_zero != PolyMap::identity(n).components {
            return false;
        }
        let xs = components(&self.generator);
        let map = self.as_map();
        self.components.iter().zip(&xs).all(|(c, x)| {
            let x_along = map.pull_function(x).expect("generator on target");
            c.partial(0) == x_along
        })
    }

    /// `Fl_s ∘ Fl_t = Fl_{s+t}` as an identity in `(s, t, x)`.
    pub fn satisfies_group_law(&self) -> bool {
        let n = self.dim();
        let d = n + 2;
        let s = Polynomial::var(d, 0);
        let t = Polynomial::var(d, 1);
        let xs: Vec<Polynomial> = (0..n).map(|i| Polynomial::var(d, i + 2)).collect();
        let at = |param: &Polynomial, args: &[Polynomial]| -> Vec<Polynomial> {
            let mut images = vec![param.clone()];
            images.extend_from_slice(args);
            self.components
                .iter()
                .map(|c| c.substitute(&images).expect("arity n + 1"))
                .collect()
        };
        let inner = at(&t, &xs);
        at(&s, &inner) == at(&(&s + &t), &xs)
    }

    /// `∂_t|₀ (⋀^u T Fl_{−t}) ∘ U ∘ Fl_t`.
    pub fn lie_derivative(&self, mv: &Multivector) -> Result<Multivector> {
        let n = self.dim();
        if mv.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: mv.dim(),
            });
        }
        let minus_t: Vec<Polynomial> = {
            let mut v = vec![-Polynomial::var(n + 1, 0)];
            v.extend((1..=n).map(|i| Polynomial::var(n + 1, i)));
            v
        };
        // T Fl_{−t} = exp(−tA), independent of x
        let jac: Vec<Vec<Polynomial>> = self
            .components
            .iter()
            .map(|c| {
                let back = c.substitute(&minus_t).expect("arity n + 1");
                (1..=n).map(|j| back.partial(j)).collect()
            })
            .collect();
        let map = self.as_map();
        let moved = wedge_power(&jac, n + 1, mv.terms(), |c| pull_function(c, &map))?;
        let terms: Vec<(Blade, Polynomial)> = moved
            .into_iter()
            .map(|(b, c)| (b, c.coefficient_of_power(0, 1)))
            .collect();
        Ok(Multivector::from_terms(n, mv.degree(), terms))
    }
}

/// `∂_t|₀ (Fl^X_t)^* U` for a nilpotent linear `X`.
pub fn flow_lie_derivative(x: &Multivector, mv: &Multivector) -> Result<Multivector> {
    FlowFamily::new(x)?.lie_derivative(mv)
}

/// The vector field `Σ_i (Σ_j A_ij x_j) ∂_i`.
pub fn linear_vector_field(matrix: &[Vec<Rational>]) -> Multivector {
    let n = matrix.len();
    vector_field(
        matrix
            .iter()
            .map(|row| {
                Polynomial::from_terms(
                    n,
                    row.iter().enumerate().map(|(j, a)| (crate::Monomial::var(n, j), a.clone())),
                )
            })
            .collect(),
    )
}

#[derive(Serialize, Deserialize)]
struct RawMap {
    src: usize,
    dst: usize,
    components: Vec<String>,
}

impl Serialize for PolyMap {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RawMap {
            src: self.src,
            dst: self.dst,
            components: self.components.iter().map(ToString::to_string).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PolyMap {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = RawMap::deserialize(d)?;
        if raw.components.len() != raw.dst {
            return Err(D::Error::custom(format!(
                "expected {} components, found {}",
                raw.dst,
                raw.components.len()
            )));
        }
        let comps = raw
            .components
            .iter()
            .map(|c| crate::parser::parse_polynomial(c, raw.src).map_err(D::Error::custom))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        PolyMap::new(raw.src, comps).map_err(D::Error::custom)
    }
}
