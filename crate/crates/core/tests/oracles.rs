//! Hand-computed values and brute-force oracles that do not share code paths
//! with the library implementations they check.

use sn_core::calculus::{differential, lie_bracket_vf};
use sn_core::geometry::{
    flow_lie_derivative, pullback, pushforward_invertible, related, related_exact, PolyMap,
};
use sn_core::parser::{parse_form, parse_multivector, parse_polynomial, print_canonical};
use sn_core::poisson::{is_poisson, jacobiator_counterexample, PoissonCandidate, TripleIdentity};
use sn_core::random;
use sn_core::schouten::{bracket, bracket_direct, bracket_tulczyjew, BracketConvention, Method};
use sn_core::exec::Exec;
use sn_core::{parse, Form, Multivector, Polynomial, Rational, TestScope, Value};

fn mv(s: &str, dim: usize) -> Multivector {
    parse_multivector(s, dim).unwrap()
}

fn form(s: &str, dim: usize) -> Form {
    parse_form(s, dim).unwrap()
}

fn poly(s: &str, dim: usize) -> Polynomial {
    parse_polynomial(s, dim).unwrap()
}

// ---- coordinate oracles ----

fn components(x: &Multivector) -> Vec<Polynomial> {
    (0..x.dim())
        .map(|i| x.component(sn_core::Blade::single(i)))
        .collect()
}

/// `[X,Y]^k = Σ_i X^i ∂_i Y^k − Y^i ∂_i X^k`.
fn coordinate_bracket(x: &Multivector, y: &Multivector) -> Multivector {
    let dim = x.dim();
    let (a, b) = (components(x), components(y));
    let mut out = Multivector::zero(dim, 1);
    for k in 0..dim {
        let mut c = Polynomial::zero(dim);
        for i in 0..dim {
            c = &c + &(&a[i] * &b[k].partial(i));
            c = &c - &(&b[i] * &a[k].partial(i));
        }
        out = &out + &Multivector::term(dim, &[k], c);
    }
    out
}

fn wedge_all(xs: &[Multivector], dim: usize) -> Multivector {
    xs.iter()
        .fold(Multivector::scalar(Polynomial::one(dim)), |acc, x| acc.wedge(x))
}

fn without(xs: &[Multivector], i: usize) -> Vec<Multivector> {
    xs.iter()
        .enumerate()
        .filter(|&(k, _)| k != i)
        .map(|(_, x)| x.clone())
        .collect()
}

/// `Σ_{i,j} (−1)^{i+j} [X_i,Y_j] ∧ X_1 ∧ ⋯X̂_i⋯ ∧ X_k ∧ Y_1 ∧ ⋯Ŷ_j⋯ ∧ Y_l`.
fn decomposable_bracket_front(xs: &[Multivector], ys: &[Multivector], dim: usize) -> Multivector {
    let mut out = Multivector::zero(dim, xs.len() + ys.len() - 1);
    for i in 0..xs.len() {
        for j in 0..ys.len() {
            let t = coordinate_bracket(&xs[i], &ys[j])
                .wedge(&wedge_all(&without(xs, i), dim))
                .wedge(&wedge_all(&without(ys, j), dim));
            out = if (i + j) % 2 == 0 { &out + &t } else { &out - &t };
        }
    }
    out
}

/// `Σ_{i,j} (−1)^{k−i+j−1} X_1 ∧ ⋯X̂_i⋯ ∧ X_k ∧ [X_i,Y_j] ∧ Y_1 ∧ ⋯Ŷ_j⋯ ∧ Y_l`
/// with 1-based `i, j`.
fn decomposable_bracket_middle(xs: &[Multivector], ys: &[Multivector], dim: usize) -> Multivector {
    let k = xs.len();
    let mut out = Multivector::zero(dim, xs.len() + ys.len() - 1);
    for i in 1..=k {
        for j in 1..=ys.len() {
            let t = wedge_all(&without(xs, i - 1), dim)
                .wedge(&coordinate_bracket(&xs[i - 1], &ys[j - 1]))
                .wedge(&wedge_all(&without(ys, j - 1), dim));
            out = if (k + 1 + j - i).is_multiple_of(2) { &out + &t } else { &out - &t };
        }
    }
    out
}

#[test]
fn vector_field_bracket_matches_coordinate_formula() {
    let mut rng = random::stream(11, &[]);
    for dim in 1..=4 {
        for _ in 0..40 {
            let x: Multivector = random::graded(&mut rng, dim, 1, 3);
            let y: Multivector = random::graded(&mut rng, dim, 1, 3);
            let want = coordinate_bracket(&x, &y);
            assert_eq!(lie_bracket_vf(&x, &y).unwrap(), want);
            assert_eq!(bracket_direct(&x, &y).unwrap(), want);
            assert_eq!(bracket_tulczyjew(&x, &y).unwrap(), want);
        }
    }
}

#[test]
fn decomposable_bracket_formulas_agree_with_both_methods() {
    let mut rng = random::stream(12, &[]);
    for dim in 2..=4 {
        for _ in 0..15 {
            let k = 1 + (rand::Rng::gen_range(&mut rng, 0..dim.min(3)));
            let l = 1 + (rand::Rng::gen_range(&mut rng, 0..dim.min(3)));
            let xs: Vec<Multivector> = (0..k).map(|_| random::graded(&mut rng, dim, 1, 2)).collect();
            let ys: Vec<Multivector> = (0..l).map(|_| random::graded(&mut rng, dim, 1, 2)).collect();
            let front = decomposable_bracket_front(&xs, &ys, dim);
            let middle = decomposable_bracket_middle(&xs, &ys, dim);
            assert_eq!(front, middle);
            let (u, v) = (wedge_all(&xs, dim), wedge_all(&ys, dim));
            if k + l - 1 > dim {
                assert!(front.is_zero());
                continue;
            }
            assert_eq!(bracket_direct(&u, &v).unwrap(), front);
            assert_eq!(bracket_tulczyjew(&u, &v).unwrap(), front);
        }
    }
}

/// `ῑ(df)(X_1 ∧ ⋯ ∧ X_k) = Σ_i (−1)^{i−1} df(X_i) X_1 ∧ ⋯X̂_i⋯ ∧ X_k`, so
/// `[f, X_1 ∧ ⋯ ∧ X_k] = −` that sum.
#[test]
fn function_bracket_matches_contraction_formula() {
    let mut rng = random::stream(13, &[]);
    for dim in 1..=4 {
        for _ in 0..20 {
            let f = random::polynomial(&mut rng, dim, 3);
            let k = 1 + rand::Rng::gen_range(&mut rng, 0..dim);
            let xs: Vec<Multivector> = (0..k).map(|_| random::graded(&mut rng, dim, 1, 2)).collect();
            let grad: Vec<Polynomial> = (0..dim).map(|i| f.partial(i)).collect();
            let mut want = Multivector::zero(dim, k - 1);
            for (i, x) in xs.iter().enumerate() {
                let dfx = components(x)
                    .iter()
                    .zip(&grad)
                    .fold(Polynomial::zero(dim), |acc, (a, b)| &acc + &(a * b));
                let t = wedge_all(&without(&xs, i), dim).scale(&dfx);
                want = if i % 2 == 0 { &want - &t } else { &want + &t };
            }
            let u = wedge_all(&xs, dim);
            let fm = Multivector::scalar(f.clone());
            assert_eq!(bracket_direct(&fm, &u).unwrap(), want);
            assert_eq!(bracket_tulczyjew(&fm, &u).unwrap(), want);
            assert_eq!(-&differential(&f).insert_into(&u), want);
        }
    }
}

#[test]
fn constant_bracket_vanishes() {
    let mut rng = random::stream(14, &[]);
    for dim in 1..=3 {
        let one = Multivector::scalar(Polynomial::one(dim));
        for u in 0..=dim {
            let field: Multivector = random::graded(&mut rng, dim, u, 3);
            assert!(bracket_direct(&one, &field).unwrap().is_zero());
            assert!(bracket_tulczyjew(&field, &one).unwrap().is_zero());
        }
    }
}

// ---- brute-force insertion oracle ----

fn permutations(n: usize) -> Vec<(Vec<usize>, bool)> {
    // Heap's algorithm; each step is one transposition
    let mut a: Vec<usize> = (0..n).collect();
    let mut c = vec![0; n];
    let mut out = vec![(a.clone(), true)];
    let mut even = true;
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            even = !even;
            out.push((a.clone(), even));
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

fn factorial(n: usize) -> i64 {
    (1..=n as i64).product()
}

/// `U(φ_1, …, φ_u) = Σ_σ sign σ U^{σ…}`, summing over all ordered index
/// tuples rather than increasing ones.
fn evaluate_on_covectors(u: &Multivector, phis: &[&Form]) -> Polynomial {
    let dim = u.dim();
    let deg = phis.len();
    let mut total = Polynomial::zero(dim);
    for (blade, coeff) in u.terms() {
        let idx: Vec<usize> = blade.indices().collect();
        for (p, even) in permutations(deg) {
            let mut t = coeff.clone();
            for (a, phi) in phis.iter().enumerate() {
                t = &t * &phi.component(sn_core::Blade::single(idx[p[a]]));
            }
            total = if even { &total + &t } else { &total - &t };
        }
    }
    total
}

fn insertion_oracle(u: &Multivector, phis: &[Form]) -> Form {
    let dim = u.dim();
    let (k, deg) = (phis.len(), u.degree());
    let norm = Rational::new(1, factorial(deg) * factorial(k - deg));
    let mut out = Form::zero(dim, k - deg);
    for (p, even) in permutations(k) {
        let args: Vec<&Form> = p[..deg].iter().map(|&i| &phis[i]).collect();
        let value = evaluate_on_covectors(u, &args);
        let rest = p[deg..]
            .iter()
            .fold(Form::scalar(Polynomial::one(dim)), |acc, &i| acc.wedge(&phis[i]));
        let t = rest.scale(&value).scale_rational(&norm);
        out = if even { &out + &t } else { &out - &t };
    }
    out
}

#[test]
fn insertion_matches_permutation_sum_on_decomposables() {
    let mut rng = random::stream(15, &[]);
    for dim in 1..=4 {
        for k in 0..=dim {
            for deg in 0..=k {
                for _ in 0..4 {
                    let phis: Vec<Form> = (0..k).map(|_| random::graded(&mut rng, dim, 1, 1)).collect();
                    let u: Multivector = random::graded(&mut rng, dim, deg, 1);
                    let w = phis
                        .iter()
                        .fold(Form::scalar(Polynomial::one(dim)), |acc, p| acc.wedge(p));
                    assert_eq!(u.insert_into(&w), insertion_oracle(&u, &phis), "U = {u}, k = {k}");
                }
            }
        }
    }
}

#[test]
fn permutation_parity_counts() {
    let perms = permutations(4);
    assert_eq!(perms.len(), 24);
    assert_eq!(perms.iter().filter(|p| p.1).count(), 12);
}

// ---- hand-computed examples ----

#[test]
fn pairing_examples() {
    assert_eq!(form("dx1^dx2", 2).pair_with(&mv("e1^e2", 2)), poly("1", 2));
    assert_eq!(form("dx1^dx2", 2).pair_with(&mv("e2^e1", 2)), poly("-1", 2));
    assert_eq!(form("x1*dx1^dx2", 2).pair_with(&mv("e1^e2", 2)), poly("x1", 2));
    assert!(form("dx1", 2).pair_with(&mv("e1^e2", 2)).is_zero());
}

#[test]
fn insertion_examples() {
    assert_eq!(mv("e1", 2).insert_into(&form("dx1^dx2", 2)), form("dx2", 2));
    assert_eq!(mv("e2", 2).insert_into(&form("dx1^dx2", 2)), form("-dx1", 2));
    assert_eq!(
        mv("e1^e2", 2).insert_into(&form("dx1^dx2", 2)),
        Form::scalar(Polynomial::one(2))
    );
    assert_eq!(form("dx1", 2).insert_into(&mv("e1^e2", 2)), mv("e2", 2));
    assert_eq!(form("dx2", 2).insert_into(&mv("e1^e2", 2)), mv("-e1", 2));
    assert_eq!(
        form("dx1^dx2", 2).insert_into(&mv("e1^e2", 2)),
        Multivector::scalar(Polynomial::one(2))
    );
}

#[test]
fn bracket_examples() {
    let b = |u: &str, v: &str, dim| bracket(&mv(u, dim), &mv(v, dim), Method::Both, BracketConvention::Koszul).unwrap();
    assert_eq!(b("x1", "e1^e2", 2), mv("-e2", 2));
    assert!(b("e1", "e2", 2).is_zero());
    assert_eq!(b("x2*e1", "x1*e2", 2), mv("x2*e2 - x1*e1", 2));
    // [x1 e1, x2 e1^e2] = [x1 e1, x2 e1] ^ e2 = -x2 e1^e2
    assert_eq!(b("x1*e1", "x2*e1^e2", 2), mv("-x2*e1^e2", 2));
    assert!(b("x1*e1", "x1*x2*e1^e2", 2).is_zero());
    // [e1^e2, x1 x2 e1] = -[x1 x2 e1, e1^e2] = -(-x2 e1)^e2
    assert_eq!(b("e1^e2", "x1*x2*e1", 2), mv("x2*e1^e2", 2));
    let t = bracket(&mv("x2*e1", 2), &mv("e2", 2), Method::Both, BracketConvention::Tulczyjew).unwrap();
    assert_eq!(t, mv("e1", 2));
}

#[test]
fn lie_and_d_examples() {
    assert_eq!(form("x1*dx2", 2).d(), form("dx1^dx2", 2));
    assert_eq!(mv("e1", 2).lie_diff(&form("x1*dx2", 2)), form("dx2", 2));
    // L(x2 e1) dx1 = d(x2) = dx2
    assert_eq!(mv("x2*e1", 2).lie_diff(&form("dx1", 2)), form("dx2", 2));
}

#[test]
fn geometry_examples() {
    let phi = PolyMap::new(1, vec![poly("x1", 1), poly("x1**2", 1)]).unwrap();
    assert_eq!(pullback(&phi, &form("dx2", 2)).unwrap(), form("2*x1*dx1", 1));

    let scale = PolyMap::new(2, vec![poly("2*x1", 2), poly("x2", 2)]).unwrap();
    assert!(related(&scale, &mv("e1^e2", 2), &mv("2*e1^e2", 2)).unwrap());
    assert!(!related(&scale, &mv("e1^e2", 2), &mv("1/2*e1^e2", 2)).unwrap());
    assert!(!related_exact(&scale, &mv("e1^e2", 2), &mv("e1^e2", 2)).unwrap());

    let inv = PolyMap::new(2, vec![poly("1/2*x1", 2), poly("x2", 2)]).unwrap();
    assert_eq!(
        pushforward_invertible(&scale, &inv, &mv("e1^e2", 2)).unwrap(),
        mv("2*e1^e2", 2)
    );
    // a field depending on the target point is transported through the inverse
    assert_eq!(
        pushforward_invertible(&scale, &inv, &mv("x1*e1", 2)).unwrap(),
        mv("x1*e1", 2)
    );

    let shear = PolyMap::new(2, vec![poly("x1 + x2**2", 2), poly("x2", 2)]).unwrap();
    let shear_inv = PolyMap::new(2, vec![poly("x1 - x2**2", 2), poly("x2", 2)]).unwrap();
    assert_eq!(pushforward_invertible(&shear, &shear_inv, &mv("e1", 2)).unwrap(), mv("e1", 2));
    // T(shear) e2 = 2 x2 e1 + e2, and x2 is unchanged by the inverse
    assert_eq!(
        pushforward_invertible(&shear, &shear_inv, &mv("e2", 2)).unwrap(),
        mv("2*x2*e1 + e2", 2)
    );
}

#[test]
fn flow_examples() {
    let x = mv("x2*e1", 2);
    assert_eq!(flow_lie_derivative(&x, &mv("x1*e2", 2)).unwrap(), mv("-x1*e1 + x2*e2", 2));
    assert!(flow_lie_derivative(&x, &mv("e1", 2)).unwrap().is_zero());
    assert!(flow_lie_derivative(&Multivector::zero(2, 1), &mv("x1*e1^e2", 2))
        .unwrap()
        .is_zero());
    // [x2 e1, e2] = −e1
    assert_eq!(flow_lie_derivative(&x, &mv("e2", 2)).unwrap(), mv("-e1", 2));
}

#[test]
fn parser_examples() {
    assert_eq!(parse("x1*e1 ^ e2", 2).unwrap(), Value::Multivector(mv("x1*e1^e2", 2)));
    assert!(parse("dx1 ^ e1", 2).is_err());
    let w = parse("3/2*x1**2*dx2", 2).unwrap();
    assert_eq!(print_canonical(&w), "3/2*x1**2*dx2");
    assert_eq!(print_canonical(&Value::Multivector(mv("-e2", 2))), "-1*e2");
    assert_eq!(print_canonical(&parse("e1 - e1", 2).unwrap()), "0");
    assert_eq!(
        print_canonical(&Value::Multivector(mv("x1*e2^e3 + x3*e1^e2", 3))),
        "x3*e1^e2 + x1*e2^e3"
    );
}

// ---- Poisson ----

#[test]
fn poisson_examples() {
    let scope = TestScope::new(3);
    for text in ["e1^e2", "x3*e1^e2 + x1*e2^e3 + x2*e3^e1", "x1*e1^e2 + e2^e3", "x2*e1^e2 + e1^e3"] {
        let p = PoissonCandidate::new(mv(text, 3)).unwrap();
        let report = is_poisson(&p, &scope).unwrap();
        assert!(report.poisson, "{text}");
        assert!(!report.has_nonzero_sample(), "{text}");
        assert!(jacobiator_counterexample(&p, 3, Exec::default()).is_none(), "{text}");
    }
    let golden = PoissonCandidate::new(mv("x1*e1^e2 + x2*e2^e3", 3)).unwrap();
    let report = is_poisson(&golden, &scope).unwrap();
    assert!(!report.poisson);
    assert_eq!(report.schouten_square, mv("2*x1*e1^e2^e3", 3));
    assert_eq!(report.jacobiator_samples[0].value, poly("x1", 3));
}

/// For `P = x1 e1^e2 + x2 e2^e3`: `{x1,x2} = x1`, `{x2,x3} = x2`, `{x1,x3} = 0`,
/// so `J(x1,x2,x3) = {x1,{x2,x3}} + {x2,{x3,x1}} + {x3,{x1,x2}} = x1`.
#[test]
fn triple_identity_hand_values() {
    let p = PoissonCandidate::new(mv("x1*e1^e2 + x2*e2^e3", 3)).unwrap();
    let (x1, x2, x3) = (poly("x1", 3), poly("x2", 3), poly("x3", 3));
    assert_eq!(p.bracket(&x1, &x2), x1);
    assert_eq!(p.bracket(&x2, &x3), x2);
    assert!(p.bracket(&x1, &x3).is_zero());
    let t = TripleIdentity::compute(&p, &x1, &x2, &x3).unwrap();
    assert_eq!(t.jacobiator, poly("x1", 3));
    assert_eq!(t.iterated, poly("-2*x1", 3));
    assert_eq!(t.pairing, poly("2*x1", 3));
    assert!(t.jacobi_side_holds() && t.pairing_side_holds());
    assert!(!t.unsigned_pairing_side_holds());
}
