//! Poisson brackets of bivector fields and the criterion `[P, P] = 0`.

use serde::Serialize;

use crate::calculus::{differential, TestScope};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::exterior::Multivector;
use crate::random;
use crate::ring::{Monomial, Polynomial, Rational};
use crate::schouten::{bracket_direct, schouten};

/// A bivector field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoissonCandidate(Multivector);

impl PoissonCandidate {
    pub fn new(p: Multivector) -> Result<Self> {
        if p.degree() != 2 {
            if p.is_zero() {
                return Ok(PoissonCandidate(Multivector::zero(p.dim(), 2)));
            }
            return Err(Error::DegreeMismatch(format!(
                "a Poisson candidate must have degree 2, found {}",
                p.degree()
            )));
        }
        Ok(PoissonCandidate(p))
    }

    pub fn bivector(&self) -> &Multivector {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    fn check(&self, fs: &[&Polynomial]) -> Result<()> {
        match fs.iter().find(|f| f.dim() != self.dim()) {
            Some(f) => Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: f.dim(),
            }),
            None => Ok(()),
        }
    }

    /// `{f, g} = ⟨df ∧ dg, P⟩`.
    pub fn bracket(&self, f: &Polynomial, g: &Polynomial) -> Polynomial {
        differential(f).wedge(&differential(g)).pair_with(&self.0)
    }

    /// `{f,{g,h}} + {g,{h,f}} + {h,{f,g}}`.
    pub fn jacobiator(&self, f: &Polynomial, g: &Polynomial, h: &Polynomial) -> Polynomial {
        let a = self.bracket(f, &self.bracket(g, h));
        let b = self.bracket(g, &self.bracket(h, f));
        let c = self.bracket(h, &self.bracket(f, g));
        &(&a + &b) + &c
    }
}

pub fn poisson_bracket(p: &PoissonCandidate, f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
    p.check(&[f, g])?;
    Ok(p.bracket(f, g))
}

pub fn jacobiator(
    p: &PoissonCandidate,
    f: &Polynomial,
    g: &Polynomial,
    h: &Polynomial,
) -> Result<Polynomial> {
    p.check(&[f, g, h])?;
    Ok(p.jacobiator(f, g, h))
}

/// `[P, P]`, computed by both bracket formulas.
pub fn schouten_square(p: &PoissonCandidate) -> Result<Multivector> {
    schouten(&p.0, &p.0)
}

/// `[h, [g, [f, Q]]]` for a field `Q`, by the direct bracket.
pub fn iterated_function_bracket(
    q: &Multivector,
    f: &Polynomial,
    g: &Polynomial,
    h: &Polynomial,
) -> Result<Polynomial> {
    let scalar = |p: &Polynomial| Multivector::scalar(p.clone());
    let once = bracket_direct(&scalar(f), q)?;
    let twice = bracket_direct(&scalar(g), &once)?;
    let thrice = bracket_direct(&scalar(h), &twice)?;
    Ok(thrice.as_scalar().unwrap_or_else(|| Polynomial::zero(q.dim())))
}

/// The two sides of the proof identity for `P` and `f, g, h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripleIdentity {
    /// `[h, [g, [f, [P, P]]]]`.
    pub iterated: Polynomial,
    /// `⟨df ∧ dg ∧ dh, [P, P]⟩`.
    pub pairing: Polynomial,
    pub jacobiator: Polynomial,
}

impl TripleIdentity {
    pub fn compute(p: &PoissonCandidate, f: &Polynomial, g: &Polynomial, h: &Polynomial) -> Result<Self> {
        p.check(&[f, g, h])?;
        let pp = schouten_square(p)?;
        let iterated = iterated_function_bracket(&pp, f, g, h)?;
        let pairing = differential(f)
            .wedge(&differential(g))
            .wedge(&differential(h))
            .pair_with(&pp);
        Ok(TripleIdentity {
            iterated,
            pairing,
            jacobiator: p.jacobiator(f, g, h),
        })
    }

    /// `[h,[g,[f,[P,P]]]] = −2·Jacobiator`.
    pub fn jacobi_side_holds(&self) -> bool {
        self.iterated == self.jacobiator.scale(&Rational::from_integer(-2))
    }

    /// `[h,[g,[f,[P,P]]]] = −⟨df ∧ dg ∧ dh, [P,P]⟩`. Each `[f, ·] = −ῑ(df)`
    /// contributes one sign, so three of them leave a minus.
    pub fn pairing_side_holds(&self) -> bool {
        self.iterated == -&self.pairing
    }

    /// The pairing side with a plus sign instead.
    pub fn unsigned_pairing_side_holds(&self) -> bool {
        self.iterated == self.pairing
    }
}

/// Both sides of the proof identity hold for `P` and `f, g, h`.
pub fn triple_identity_check(p: &PoissonCandidate, f: &Polynomial, g: &Polynomial, h: &Polynomial) -> bool {
    match TripleIdentity::compute(p, f, g, h) {
        Ok(t) => t.jacobi_side_holds() && t.pairing_side_holds(),
        Err(_) => false,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JacobiatorSample {
    #[serde(serialize_with = "as_text")]
    pub f: Polynomial,
    #[serde(serialize_with = "as_text")]
    pub g: Polynomial,
    #[serde(serialize_with = "as_text")]
    pub h: Polynomial,
    #[serde(serialize_with = "as_text")]
    pub value: Polynomial,
}

fn as_text<S: serde::Serializer>(p: &Polynomial, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(p)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PoissonReport {
    pub poisson: bool,
    pub schouten_square: Multivector,
    pub jacobiator_samples: Vec<JacobiatorSample>,
}

impl PoissonReport {
    /// Whether some sampled Jacobiator is nonzero.
    pub fn has_nonzero_sample(&self) -> bool {
        self.jacobiator_samples.iter().any(|s| !s.value.is_zero())
    }
}

/// `(x1, x2, x3)`, or as many coordinates as exist padded with `x1·x_n`.
pub fn coordinate_triple(dim: usize) -> [Polynomial; 3] {
    let x = |i: usize| Polynomial::var(dim, i.min(dim - 1));
    match dim {
        1 => [x(0), x(0), x(0)],
        2 => [x(0), x(1), &x(0) * &x(1)],
        _ => [x(0), x(1), x(2)],
    }
}

/// `[P, P]`, the verdict, and Jacobiators on the coordinate triple, on
/// `extra` triples and on `scope.trials` seeded random triples.
pub fn is_poisson_with(
    p: &PoissonCandidate,
    scope: &TestScope,
    extra: &[[Polynomial; 3]],
    exec: Exec,
) -> Result<PoissonReport> {
    let dim = p.dim();
    if dim == 0 {
        return Err(Error::Precondition("dim must be positive".into()));
    }
    let pp = schouten_square(p)?;
    let mut triples = vec![coordinate_triple(dim)];
    for t in extra {
        p.check(&[&t[0], &t[1], &t[2]])?;
        triples.push(t.clone());
    }
    let trials: Vec<usize> = (0..scope.trials).collect();
    triples.extend(exec.map(&trials, |&k| {
        let mut rng = random::stream(scope.seed, &[random::label("poisson"), dim as u64, k as u64]);
        [0, 1, 2].map(|_| random::polynomial(&mut rng, dim, scope.coeff_degree))
    }));
    let samples = exec.map(&triples, |[f, g, h]| JacobiatorSample {
        value: p.jacobiator(f, g, h),
        f: f.clone(),
        g: g.clone(),
        h: h.clone(),
    });
    Ok(PoissonReport {
        poisson: pp.is_zero(),
        schouten_square: pp,
        jacobiator_samples: samples,
    })
}

pub fn is_poisson(p: &PoissonCandidate, scope: &TestScope) -> Result<PoissonReport> {
    is_poisson_with(p, scope, &[], Exec::default())
}

/// The first triple of distinct monomials of degree `1..=max_degree` with a
/// nonzero Jacobiator. The Jacobiator is alternating and trilinear, so
/// `None` means it vanishes on all polynomials of that degree.
pub fn jacobiator_counterexample(
    p: &PoissonCandidate,
    max_degree: u32,
    exec: Exec,
) -> Option<JacobiatorSample> {
    let dim = p.dim();
    let monos: Vec<Polynomial> = Monomial::all_up_to(dim, max_degree)
        .into_iter()
        .filter(|m| !m.is_one())
        .map(|m| Polynomial::term(dim, m, Rational::one()))
        .collect();
    let n = monos.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    exec.find_first(&pairs, |&(i, j)| {
        (j + 1..n).find_map(|k| {
            let value = p.jacobiator(&monos[i], &monos[j], &monos[k]);
            (!value.is_zero()).then(|| JacobiatorSample {
                f: monos[i].clone(),
                g: monos[j].clone(),
                h: monos[k].clone(),
                value,
            })
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::{parse_multivector, parse_polynomial};

    fn cand(s: &str, dim: usize) -> PoissonCandidate {
        PoissonCandidate::new(parse_multivector(s, dim).unwrap()).unwrap()
    }

    fn poly(s: &str, dim: usize) -> Polynomial {
        parse_polynomial(s, dim).unwrap()
    }

    const SO3: &str = "x3*e1^e2 + x1*e2^e3 + x2*e3^e1";

    #[test]
    fn bracket_examples() {
        let p = cand("e1^e2", 2);
        assert_eq!(p.bracket(&poly("x1", 2), &poly("x2", 2)), poly("1", 2));
        let f = poly("x1**2*x2 + 3", 2);
        assert!(p.bracket(&f, &f).is_zero());
        let so3 = cand(SO3, 3);
        assert_eq!(so3.bracket(&poly("x1", 3), &poly("x2", 3)), poly("x3", 3));
        assert!(matches!(
            poisson_bracket(&p, &poly("x1", 3), &poly("x1", 2)),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(PoissonCandidate::new(parse_multivector("e1", 2).unwrap()).is_err());
    }

    #[test]
    fn bracket_is_iterated_schouten() {
        let p = cand("x1*x2*e1^e2 + x3**2*e2^e3", 3);
        let (f, g) = (poly("x1 + x2*x3", 3), poly("x3**2 - x1", 3));
        let fp = bracket_direct(&Multivector::scalar(f.clone()), p.bivector()).unwrap();
        let gfp = bracket_direct(&Multivector::scalar(g.clone()), &fp).unwrap();
        assert_eq!(gfp.as_scalar().unwrap(), p.bracket(&f, &g));
    }

    #[test]
    fn jacobiator_examples() {
        let p = cand("e1^e2", 2);
        assert!(jacobiator_counterexample(&p, 2, Exec::Sequential).is_none());
        let so3 = cand(SO3, 3);
        let [f, g, h] = coordinate_triple(3);
        assert!(so3.jacobiator(&f, &g, &h).is_zero());
        let p = cand("x1*e1^e2", 2);
        assert!(p.jacobiator(&poly("x1", 2), &poly("x2", 2), &poly("x1*x2", 2)).is_zero());
    }

    #[test]
    fn schouten_square_examples() {
        assert!(schouten_square(&cand("e1^e2", 2)).unwrap().is_zero());
        assert!(schouten_square(&cand(SO3, 3)).unwrap().is_zero());
        // both bivectors of this shape are Poisson
        assert!(schouten_square(&cand("x1*e1^e2 + e2^e3", 3)).unwrap().is_zero());
        assert!(schouten_square(&cand("x2*e1^e2 + e1^e3", 3)).unwrap().is_zero());
        let pp = schouten_square(&cand("x1*e1^e2 + x2*e2^e3", 3)).unwrap();
        assert_eq!(pp, parse_multivector("2*x1*e1^e2^e3", 3).unwrap());
    }

    #[test]
    fn triple_identity_examples() {
        let p = cand("e1^e2", 2);
        assert!(triple_identity_check(&p, &poly("x1", 2), &poly("x2", 2), &poly("x1*x2", 2)));
        let [f, g, h] = coordinate_triple(3);
        assert!(triple_identity_check(&cand(SO3, 3), &f, &g, &h));
        let p = cand("x1*e1^e2 + x2*e2^e3", 3);
        let t = TripleIdentity::compute(&p, &f, &g, &h).unwrap();
        assert_eq!(t.jacobiator, poly("x1", 3));
        assert_eq!(t.iterated, poly("-2*x1", 3));
        assert_eq!(t.pairing, poly("2*x1", 3));
        assert!(t.jacobi_side_holds() && t.pairing_side_holds());
        assert!(!t.unsigned_pairing_side_holds());
    }

    #[test]
    fn report() {
        let scope = TestScope { trials: 5, ..TestScope::new(3) };
        let r = is_poisson(&cand(SO3, 3), &scope).unwrap();
        assert!(r.poisson && !r.has_nonzero_sample());
        assert_eq!(r.jacobiator_samples.len(), 6);
        let r = is_poisson(&cand("x1*e1^e2 + x2*e2^e3", 3), &scope).unwrap();
        assert!(!r.poisson && r.has_nonzero_sample());
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["poisson"], false);
        assert_eq!(json["schouten_square"]["degree"], 3);
        assert_eq!(json["jacobiator_samples"][0]["value"], "x1");
    }
}
