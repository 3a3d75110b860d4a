//! The Schouten-Nijenhuis bracket of multivector fields.
//!
//! The internal normal form is the Koszul sign convention, in which vector
//! fields bracket as the Lie bracket and `[f, U] = −ῑ(df)U`. Two independent
//! formulas are implemented: the termwise expansion over decomposable
//! multivectors ([`bracket_direct`]) and the pairing formula against exact
//! forms ([`bracket_tulczyjew`]). [`Method::Both`] computes both and fails
//! if they differ.

use std::fmt;
use std::str::FromStr;

use crate::calculus::{lie_bracket_vf, vector_field, FormOperator, TestScope};
use crate::error::{Error, Result};
use crate::exterior::{Blade, Form, Multivector};
use crate::ring::Polynomial;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Method {
    Direct,
    Tulczyjew,
    #[default]
    Both,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum BracketConvention {
    #[default]
    Koszul,
    Tulczyjew,
    Lichnerowicz,
}

impl FromStr for Method {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "direct" => Ok(Method::Direct),
            "tulczyjew" => Ok(Method::Tulczyjew),
            "both" => Ok(Method::Both),
            _ => Err(format!("unknown method `{s}` (direct, tulczyjew, both)")),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Direct => "direct",
            Method::Tulczyjew => "tulczyjew",
            Method::Both => "both",
        })
    }
}

impl FromStr for BracketConvention {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "koszul" => Ok(BracketConvention::Koszul),
            "tulczyjew" => Ok(BracketConvention::Tulczyjew),
            "lichnerowicz" | "vaisman" => Ok(BracketConvention::Lichnerowicz),
            _ => Err(format!(
                "unknown convention `{s}` (koszul, tulczyjew, lichnerowicz)"
            )),
        }
    }
}

impl fmt::Display for BracketConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BracketConvention::Koszul => "koszul",
            BracketConvention::Tulczyjew => "tulczyjew",
            BracketConvention::Lichnerowicz => "lichnerowicz",
        })
    }
}

impl BracketConvention {
    /// The sign `s` with `[U, V]_conv = s · [U, V]_koszul` for degrees `u`, `v`.
    pub fn factor(self, u: usize, v: usize) -> i64 {
        let (u, v) = (u as i64, v as i64);
        let parity = match self {
            BracketConvention::Koszul => 0,
            BracketConvention::Tulczyjew => 1 + (u - 1) * (v - 1),
            BracketConvention::Lichnerowicz => u - 1,
        };
        if parity.rem_euclid(2) == 0 {
            1
        } else {
            -1
        }
    }

    /// Rescales a Koszul bracket of degree-`u` and degree-`v` fields.
    pub fn from_koszul(self, bracket: Multivector, u: usize, v: usize) -> Multivector {
        bracket.signed(i64::from(self.factor(u, v) < 0))
    }

    /// Inverse of [`from_koszul`](Self::from_koszul); the factors are signs.
    pub fn to_koszul(self, bracket: Multivector, u: usize, v: usize) -> Multivector {
        self.from_koszul(bracket, u, v)
    }
}

fn check_dims(a: &Multivector, b: &Multivector) -> Result<()> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    Ok(())
}

fn result_degree(u: usize, v: usize) -> usize {
    (u + v).saturating_sub(1)
}

/// `f·∂_{i1} ∧ ∂_{i2} ∧ …` as the list of vector fields `[f∂_{i1}, ∂_{i2}, …]`.
fn factors(dim: usize, blade: Blade, coeff: &Polynomial) -> Vec<Multivector> {
    blade
        .indices()
        .enumerate()
        .map(|(k, i)| {
            let mut comps = vec![Polynomial::zero(dim); dim];
            comps[i] = if k == 0 {
                coeff.clone()
            } else {
                Polynomial::one(dim)
            };
            vector_field(comps)
        })
        .collect()
}

fn wedge_all<'a>(dim: usize, fields: impl Iterator<Item = &'a Multivector>) -> Multivector {
    fields.fold(Multivector::scalar(Polynomial::one(dim)), |acc, x| acc.wedge(x))
}

/// `[X_1∧…∧X_u, Y_1∧…∧Y_v] = Σ (−1)^{i+j} [X_i, Y_j] ∧ X_1∧…X̂_i…∧X_u ∧ Y_1∧…Ŷ_j…∧Y_v`.
fn decomposable(dim: usize, xs: &[Multivector], ys: &[Multivector], degree: usize) -> Multivector {
    let mut out = Multivector::zero(dim, degree);
    for (i, x) in xs.iter().enumerate() {
        for (j, y) in ys.iter().enumerate() {
            let xy = lie_bracket_vf(x, y).expect("vector fields of equal dimension");
            if xy.is_zero() {
                continue;
            }
            let rest_x = wedge_all(dim, xs.iter().enumerate().filter(|(k, _)| *k != i).map(|p| p.1));
            let rest_y = wedge_all(dim, ys.iter().enumerate().filter(|(k, _)| *k != j).map(|p| p.1));
            let term = xy.wedge(&rest_x).wedge(&rest_y).signed((i + j) as i64);
            out = &out + &term;
        }
    }
    out
}

/// The bracket computed termwise from its defining properties.
pub fn bracket_direct(u_field: &Multivector, v_field: &Multivector) -> Result<Multivector> {
    check_dims(u_field, v_field)?;
    let dim = u_field.dim();
    let (u, v) = (u_field.degree(), v_field.degree());
    let degree = result_degree(u, v);
    if u + v == 0 || degree > dim || u_field.is_zero() || v_field.is_zero() {
        return Ok(Multivector::zero(dim, degree));
    }
    if u == 0 {
        let f = u_field.component(Blade::EMPTY);
        return Ok(-crate::calculus::differential(&f).insert_into(v_field));
    }
    if v == 0 {
        let g = v_field.component(Blade::EMPTY);
        return Ok(crate::calculus::differential(&g)
            .insert_into(u_field)
            .signed(u as i64 - 1));
    }
    let mut out = Multivector::zero(dim, degree);
    for (a, ca) in u_field.terms() {
        let xs = factors(dim, a, ca);
        for (b, cb) in v_field.terms() {
            let ys = factors(dim, b, cb);
            out = &out + &decomposable(dim, &xs, &ys, degree);
        }
    }
    Ok(out)
}

/// The bracket computed from `⟨[U,V], dω⟩ = −⟨V, d i(U) dω⟩ + (−1)^{(u−1)(v−1)} ⟨U, d i(V) dω⟩`
/// with `dω` running over the constant basis forms `dx_J`.
pub fn bracket_tulczyjew(u_field: &Multivector, v_field: &Multivector) -> Result<Multivector> {
    check_dims(u_field, v_field)?;
    let dim = u_field.dim();
    let (u, v) = (u_field.degree(), v_field.degree());
    let degree = result_degree(u, v);
    if u + v == 0 || degree > dim {
        return Ok(Multivector::zero(dim, degree));
    }
    let sign = ((u as i64 - 1) * (v as i64 - 1)).rem_euclid(2);
    let comps = Blade::all(dim, degree).into_iter().map(|j| {
        let dx_j = Form::from_terms(dim, degree, [(j, Polynomial::one(dim))]);
        let first = u_field.insert_into(&dx_j).d().pair_with(v_field);
        let second = v_field.insert_into(&dx_j).d().pair_with(u_field);
        let second = if sign == 0 { second } else { -second };
        (j, &second - &first)
    });
    Ok(Multivector::from_terms(dim, degree, comps))
}

/// The bracket by the chosen method, scaled to the chosen convention.
pub fn bracket(
    u_field: &Multivector,
    v_field: &Multivector,
    method: Method,
    conv: BracketConvention,
) -> Result<Multivector> {
    let koszul = match method {
        Method::Direct => bracket_direct(u_field, v_field)?,
        Method::Tulczyjew => bracket_tulczyjew(u_field, v_field)?,
        Method::Both => {
            let direct = bracket_direct(u_field, v_field)?;
            let tulczyjew = bracket_tulczyjew(u_field, v_field)?;
            if direct != tulczyjew {
                return Err(Error::MethodDisagreement {
                    direct: direct.to_string(),
                    tulczyjew: tulczyjew.to_string(),
                });
            }
            direct
        }
    };
    Ok(conv.from_koszul(koszul, u_field.degree(), v_field.degree()))
}

/// The Koszul bracket, cross-checked by both methods.
pub fn schouten(u_field: &Multivector, v_field: &Multivector) -> Result<Multivector> {
    bracket(u_field, v_field, Method::Both, BracketConvention::Koszul)
}

/// `[L(U), i(V)] = (−1)^{(u−1)(v−1)} i([U,V])` and
/// `[L(U), L(V)] = (−1)^{(u−1)(v−1)} L([U,V])` as operator identities.
pub fn lie_derivative_identity_check(
    u_field: &Multivector,
    v_field: &Multivector,
    scope: &TestScope,
) -> bool {
    if u_field.dim() != v_field.dim() || u_field.dim() != scope.dim {
        return false;
    }
    let Ok(uv) = schouten(u_field, v_field) else {
        return false;
    };
    let dim = u_field.dim();
    let (u, v) = (u_field.degree() as i32, v_field.degree() as i32);
    let sign = ((u - 1) * (v - 1)) as i64;
    let lu = FormOperator::lie(u_field.clone());

    let lhs_i = lu.commutator(&FormOperator::insertion(v_field.clone()));
    let br = uv.clone();
    let rhs_i = FormOperator::from_fn(dim, 1 - u - v, move |w| br.insert_into(w)).signed(sign);

    let lhs_l = lu.commutator(&FormOperator::lie(v_field.clone()));
    let rhs_l = FormOperator::from_fn(dim, 2 - u - v, move |w| uv.lie_diff(w)).signed(sign);

    [(lhs_i, rhs_i), (lhs_l, rhs_l)]
        .iter()
        .all(|(l, r)| crate::calculus::operator_equal(l, r, scope).unwrap_or(false))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_multivector;

    fn mv(s: &str, dim: usize) -> Multivector {
        parse_multivector(s, dim).unwrap()
    }

    fn both(a: &str, b: &str, dim: usize) -> Multivector {
        schouten(&mv(a, dim), &mv(b, dim)).unwrap()
    }

    #[test]
    fn direct_examples() {
        assert_eq!(bracket_direct(&mv("x1", 2), &mv("e1^e2", 2)).unwrap(), mv("-e2", 2));
        assert!(bracket_direct(&mv("e1^e2", 2), &mv("e1^e2", 2)).unwrap().is_zero());
        assert_eq!(
            bracket_direct(&mv("x2*e1", 2), &mv("x1*e2", 2)).unwrap(),
            mv("x2*e2 - x1*e1", 2)
        );
    }

    #[test]
    fn tulczyjew_examples() {
        assert_eq!(bracket_tulczyjew(&mv("x1", 2), &mv("e1^e2", 2)).unwrap(), mv("-e2", 2));
        assert_eq!(bracket_tulczyjew(&mv("e1", 2), &mv("x1*e2", 2)).unwrap(), mv("e2", 2));
        assert!(bracket_tulczyjew(&mv("e1^e2", 2), &mv("e1^e2", 2)).unwrap().is_zero());
    }

    #[test]
    fn dispatch_examples() {
        assert_eq!(both("x2*e1", "e2", 2), mv("-e1", 2));
        let f = both("x1**2 + x2", "3*x1*x2", 2);
        assert!(f.is_zero());
        assert_eq!(f.degree(), 0);
        let (u, v) = (mv("x2*e1^e2", 3), mv("x3*e1 + e2", 3));
        let k = bracket(&u, &v, Method::Direct, BracketConvention::Koszul).unwrap();
        let t = bracket(&u, &v, Method::Direct, BracketConvention::Tulczyjew).unwrap();
        assert_eq!(t, -k.clone());
        let l = bracket(&u, &v, Method::Both, BracketConvention::Lichnerowicz).unwrap();
        assert_eq!(l, -k);
    }

    #[test]
    fn tulczyjew_convention_examples() {
        let t = |a, b| bracket(&mv(a, 2), &mv(b, 2), Method::Both, BracketConvention::Tulczyjew).unwrap();
        assert_eq!(t("x2*e1", "e2"), mv("e1", 2));
    }

    #[test]
    fn degree_overflow_is_zero() {
        let r = both("x3*e1^e2", "x1*e2^e3", 3);
        assert!(r.is_zero());
        assert_eq!(r.degree(), 3);
        let r = both("x1*e1^e2", "x2*e1^e2", 2);
        assert!(r.is_zero());
        assert_eq!(r.degree(), 3);
    }

    #[test]
    fn function_against_field() {
        // [U, g] = (−1)^{u−1} ῑ(dg)U
        assert_eq!(both("e1^e2", "x1", 2), mv("-e2", 2));
        assert_eq!(both("e1", "x1**2", 2), mv("2*x1", 2));
    }

    #[test]
    fn lie_identity_examples() {
        let s2 = TestScope::with_degrees(2, 2, 2);
        assert!(lie_derivative_identity_check(&mv("e1", 2), &mv("e2", 2), &s2));
        assert!(lie_derivative_identity_check(&mv("x2*e1", 2), &mv("x1*e2", 2), &s2));
        let s3 = TestScope::with_degrees(3, 2, 3);
        assert!(lie_derivative_identity_check(&mv("x3*e1^e2", 3), &mv("e3", 3), &s3));
        assert!(lie_derivative_identity_check(&mv("x1*x2", 3), &mv("x3", 3), &s3));
    }
}
