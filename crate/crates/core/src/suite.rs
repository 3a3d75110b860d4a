//! Seeded randomized identity suites.
//!
//! Every named identity runs `trials` times per dimension on inputs drawn
//! from a stream keyed by `(seed, suite, identity, dim, trial)`, so reports
//! are identical under sequential and parallel execution. Failures carry the
//! inputs as parseable text. Identities with recorded counterexamples run
//! those cases before the random trials.

use std::fmt::{self, Display, Write as _};
use std::str::FromStr;

use rand::Rng;
use serde::Serialize;

use crate::calculus::{differential, lie_bracket_vf, FormOperator, TestScope};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::exterior::{Blade, Form, Graded, Multivector, Variance};
use crate::geometry::{
    flow_lie_derivative, linear_vector_field, naturality_check, pullback, pushforward_invertible,
    related_by_insertion, related_exact, FlowFamily, PolyMap,
};
use crate::parser::parse_multivector;
use crate::poisson::{jacobiator_counterexample, is_poisson_with, PoissonCandidate, TripleIdentity};
use crate::random::{self, TrialRng};
use crate::ring::{Polynomial, Rational};
use crate::schouten::{bracket, bracket_direct, bracket_tulczyjew, schouten, BracketConvention, Method};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Exterior,
    Cartan,
    Schouten,
    Poisson,
    Naturality,
    Flow,
    Conventions,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Exterior,
        Suite::Cartan,
        Suite::Schouten,
        Suite::Poisson,
        Suite::Naturality,
        Suite::Flow,
        Suite::Conventions,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Exterior => "exterior",
            Suite::Cartan => "cartan",
            Suite::Schouten => "schouten",
            Suite::Poisson => "poisson",
            Suite::Naturality => "naturality",
            Suite::Flow => "flow",
            Suite::Conventions => "conventions",
        }
    }
}

impl Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s.to_ascii_lowercase())
            .ok_or_else(|| {
                let names: Vec<_> = Suite::ALL.iter().map(|x| x.name()).collect();
                format!("unknown suite `{s}` ({})", names.join(", "))
            })
    }
}

/// Alternative sign exponents for the graded Jacobi and Leibniz identities,
/// substituted into the schouten suite to show that they fail.
#[doc(hidden)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SignVariant {
    /// `[U,[V,W]] = [[U,V],W] + (−1)^{u(v−1)} [V,[U,W]]`.
    JacobiUVMinusOne,
    /// `[U,V∧W] = [U,V]∧W + (−1)^{(u−1)(v−1)} V∧[U,W]`.
    LeibnizUMinusOneVMinusOne,
}

impl FromStr for SignVariant {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "jacobi" => Ok(SignVariant::JacobiUVMinusOne),
            "leibniz" => Ok(SignVariant::LeibnizUMinusOneVMinusOne),
            _ => Err(format!("unknown sign variant `{s}` (jacobi, leibniz)")),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub dims: Vec<usize>,
    /// Largest multivector degree drawn; `None` means the dimension.
    pub max_multivector_degree: Option<usize>,
    pub coeff_degree: u32,
    /// Largest form degree in operator checks; `None` means the dimension.
    pub form_degree: Option<usize>,
    pub trials: usize,
    pub seed: u64,
    pub suites: Vec<Suite>,
    pub exec: Exec,
    #[doc(hidden)]
    pub sign_variant: Option<SignVariant>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            dims: (1..=4).collect(),
            max_multivector_degree: None,
            coeff_degree: 3,
            form_degree: None,
            trials: 100,
            seed: 0,
            suites: Suite::ALL.to_vec(),
            exec: Exec::default(),
            sign_variant: None,
        }
    }
}

impl SuiteConfig {
    fn validate(&self) -> Result<()> {
        if self.suites.is_empty() {
            return Err(Error::Precondition("no suites selected".into()));
        }
        if self.dims.is_empty() {
            return Err(Error::Precondition("no dimensions selected".into()));
        }
        if let Some(&d) = self.dims.iter().find(|&&d| d == 0 || d > 8) {
            return Err(Error::Precondition(format!("dimension {d} outside 1..=8")));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub dim: usize,
    /// `trial <k>` or `recorded <k>`.
    pub case: String,
    pub inputs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub suite: Suite,
    pub identity: &'static str,
    pub passed: usize,
    pub failed: usize,
    pub counterexample: Option<Counterexample>,
}

impl IdentityReport {
    pub fn ok(&self) -> bool {
        self.failed == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub trials: usize,
    pub identities: Vec<IdentityReport>,
    pub warnings: Vec<String>,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.identities.iter().all(IdentityReport::ok)
    }

    pub fn get(&self, suite: Suite, identity: &str) -> Option<&IdentityReport> {
        self.identities
            .iter()
            .find(|r| r.suite == suite && r.identity == identity)
    }
}

impl Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for w in &self.warnings {
            writeln!(f, "warning: {w}")?;
        }
        let width = self
            .identities
            .iter()
            .map(|r| r.suite.name().len() + r.identity.len() + 1)
            .max()
            .unwrap_or(0);
        for r in &self.identities {
            let name = format!("{}/{}", r.suite, r.identity);
            let verdict = if r.ok() { "PASS" } else { "FAIL" };
            write!(f, "{verdict} {name:<width$} {}/{}", r.passed, r.passed + r.failed)?;
            if let Some(c) = &r.counterexample {
                write!(f, "  [dim {}, {}] {}", c.dim, c.case, c.inputs)?;
            }
            writeln!(f)?;
        }
        let failed = self.identities.iter().filter(|r| !r.ok()).count();
        write!(
            f,
            "{} identities, {} failed (seed {}, {} trials)",
            self.identities.len(),
            failed,
            self.seed,
            self.trials
        )
    }
}

type Check = std::result::Result<(), String>;

struct Ctx {
    dim: usize,
    max_mv: usize,
    coeff: u32,
    scope: TestScope,
    variant: Option<SignVariant>,
}

impl Ctx {
    fn poly(&self, rng: &mut TrialRng) -> Polynomial {
        random::any_polynomial(rng, self.dim, self.coeff)
    }

    fn field<V: Variance>(&self, rng: &mut TrialRng, degree: usize) -> Graded<V> {
        random::graded(rng, self.dim, degree, self.coeff)
    }

    fn mv(&self, rng: &mut TrialRng, degree: usize) -> Multivector {
        self.field(rng, degree)
    }

    fn form(&self, rng: &mut TrialRng, degree: usize) -> Form {
        self.field(rng, degree)
    }

    fn degree(&self, rng: &mut TrialRng) -> usize {
        rng.gen_range(0..=self.max_mv)
    }

    fn any_mv(&self, rng: &mut TrialRng) -> Multivector {
        let d = self.degree(rng);
        self.mv(rng, d)
    }

    fn vector_field(&self, rng: &mut TrialRng) -> Multivector {
        self.mv(rng, 1)
    }

    fn ops_equal(&self, a: &FormOperator, b: &FormOperator) -> bool {
        crate::calculus::operator_counterexample_with(Exec::Sequential, a, b, &self.scope)
            .map(|m| m.is_none())
            .unwrap_or(false)
    }
}

fn inputs(parts: &[(&str, &dyn Display)]) -> String {
    let mut s = String::new();
    for (k, (name, v)) in parts.iter().enumerate() {
        if k > 0 {
            s.push_str("; ");
        }
        let _ = write!(s, "{name} = {v}");
    }
    s
}

fn expect(ok: bool, parts: &[(&str, &dyn Display)]) -> Check {
    if ok {
        Ok(())
    } else {
        Err(inputs(parts))
    }
}

fn sign(k: i64) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

fn deg(x: &Multivector) -> i64 {
    x.degree() as i64
}

fn br(u: &Multivector, v: &Multivector) -> Multivector {
    bracket_direct(u, v).expect("fields of one dimension")
}

fn ins(u: &Multivector) -> FormOperator {
    FormOperator::insertion(u.clone())
}

fn lie(u: &Multivector) -> FormOperator {
    FormOperator::lie(u.clone())
}

/// `i(B)` as an operator of homogeneity `hom`, for brackets whose stored
/// degree may have been clamped at zero.
fn ins_with(b: Multivector, hom: i32) -> FormOperator {
    FormOperator::from_fn(b.dim(), hom, move |w| b.insert_into(w))
}

fn lie_with(b: Multivector, hom: i32) -> FormOperator {
    FormOperator::from_fn(b.dim(), hom, move |w| b.lie_diff(w))
}

type CheckFn = fn(&Ctx, &mut TrialRng) -> Check;
type RecordedFn = fn(&Ctx) -> Vec<Check>;

struct Identity {
    suite: Suite,
    name: &'static str,
    min_dim: usize,
    /// Deterministic checks run once per dimension.
    once: bool,
    check: CheckFn,
    recorded: Option<RecordedFn>,
}

const fn random_id(suite: Suite, name: &'static str, min_dim: usize, check: CheckFn) -> Identity {
    Identity {
        suite,
        name,
        min_dim,
        once: false,
        check,
        recorded: None,
    }
}

const fn once_id(suite: Suite, name: &'static str, min_dim: usize, check: CheckFn) -> Identity {
    Identity {
        suite,
        name,
        min_dim,
        once: true,
        check,
        recorded: None,
    }
}

fn identities() -> Vec<Identity> {
    use Suite::*;
    vec![
        random_id(Exterior, "wedge_graded_commutative", 1, ext_commutative),
        random_id(Exterior, "wedge_associative", 1, ext_associative),
        random_id(Exterior, "insertion_dual_to_wedge", 1, ext_insertion_duality),
        random_id(Exterior, "iota_dual_to_wedge", 1, ext_iota_duality),
        random_id(Exterior, "insertion_of_wedge", 1, ext_insertion_of_wedge),
        random_id(Exterior, "insertion_derivation", 1, ext_insertion_derivation),
        once_id(Exterior, "shuffle_matches_permutations_basis", 1, ext_shuffle_basis),
        random_id(Exterior, "shuffle_matches_permutations", 1, ext_shuffle_random),
        once_id(Cartan, "d_squared", 1, cartan_d_squared),
        random_id(Cartan, "insertion_of_function", 1, cartan_insertion_function),
        random_id(Cartan, "insertions_commute", 1, cartan_insertions_commute),
        random_id(Cartan, "insertion_multiplication", 1, cartan_insertion_mu),
        random_id(Cartan, "lie_is_commutator", 1, cartan_lie_commutator),
        random_id(Cartan, "lie_of_wedge", 1, cartan_lie_wedge),
        random_id(Cartan, "lie_of_decomposable", 1, cartan_lie_decomposable),
        random_id(Cartan, "lie_of_function", 1, cartan_lie_function),
        random_id(Cartan, "lie_commutes_with_d", 1, cartan_lie_d),
        random_id(Cartan, "lie_insertion", 1, cartan_lie_insertion),
        random_id(Cartan, "lie_lie", 1, cartan_lie_lie),
        random_id(Cartan, "insertion_of_bracket", 1, cartan_insertion_bracket),
        random_id(Cartan, "lie_multiplication_df", 1, cartan_lie_mu_df),
        random_id(Schouten, "cross_method", 1, sch_cross_method),
        random_id(Schouten, "vector_fields", 1, sch_vector_fields),
        random_id(Schouten, "antisymmetry", 1, sch_antisymmetry),
        Identity {
            recorded: Some(sch_jacobi_recorded),
            ..random_id(Schouten, "jacobi", 1, sch_jacobi)
        },
        Identity {
            recorded: Some(sch_leibniz_recorded),
            ..random_id(Schouten, "leibniz", 1, sch_leibniz)
        },
        once_id(Schouten, "jacobi_variant_rejected", 2, sch_jacobi_variant_rejected),
        once_id(Schouten, "leibniz_variant_rejected", 2, sch_leibniz_variant_rejected),
        random_id(Schouten, "derivation_rule", 1, sch_derivation_rule),
        random_id(Schouten, "exact_form_pairing", 1, sch_exact_form_pairing),
        once_id(Poisson, "canonical_is_poisson", 2, poi_canonical),
        once_id(Poisson, "so3_is_poisson", 3, poi_so3),
        once_id(Poisson, "golden_non_poisson", 3, poi_golden),
        random_id(Poisson, "bracket_is_iterated_schouten", 2, poi_iterated),
        random_id(Poisson, "triple_identity", 2, poi_triple),
        random_id(Poisson, "criterion_equivalence", 2, poi_equivalence),
        random_id(Naturality, "bracket_naturality", 1, nat_bracket),
        random_id(Naturality, "pullback_functorial", 1, nat_functorial),
        random_id(Naturality, "pullback_wedge", 1, nat_wedge),
        random_id(Naturality, "pullback_d", 1, nat_d),
        random_id(Naturality, "related_iff_insertion", 1, nat_related_insertion),
        random_id(Naturality, "related_intertwines_lie", 1, nat_related_lie),
        random_id(Flow, "flow_lie_derivative", 1, flow_bracket),
        random_id(Flow, "flow_equation", 1, flow_equation),
        random_id(Flow, "group_law", 1, flow_group_law),
        random_id(Conventions, "roundtrip_tulczyjew", 1, conv_roundtrip_tulczyjew),
        random_id(Conventions, "roundtrip_lichnerowicz", 1, conv_roundtrip_lichnerowicz),
        random_id(Conventions, "tulczyjew_is_reversed_koszul", 1, conv_tulczyjew_reversed),
    ]
}

/// Names of all identities, grouped by suite.
pub fn identity_names() -> Vec<(Suite, &'static str)> {
    identities().iter().map(|i| (i.suite, i.name)).collect()
}

enum Case {
    Recorded(usize),
    Trial(usize),
}

struct Job {
    identity: usize,
    dim: usize,
    case: Case,
}

/// Runs the selected suites.
pub fn run(config: &SuiteConfig) -> Result<SuiteReport> {
    config.validate()?;
    let all = identities();
    let mut warnings = Vec::new();
    if config.trials == 0 {
        warnings.push("trials = 0: every identity passes vacuously".to_string());
    }
    let selected: Vec<usize> = (0..all.len())
        .filter(|&i| config.suites.contains(&all[i].suite))
        .collect();
    let ctxs: Vec<Ctx> = config
        .dims
        .iter()
        .map(|&dim| Ctx {
            dim,
            max_mv: config.max_multivector_degree.unwrap_or(dim).min(dim),
            coeff: config.coeff_degree,
            scope: TestScope {
                dim,
                max_multivector_degree: config.max_multivector_degree.unwrap_or(dim).min(dim),
                coeff_degree: config.coeff_degree,
                form_degree: config.form_degree.unwrap_or(dim).min(dim),
                trials: config.trials,
                seed: config.seed,
            },
            variant: config.sign_variant,
        })
        .collect();

    let mut jobs = Vec::new();
    if config.trials > 0 {
        for &i in &selected {
            let id = &all[i];
            for (c, ctx) in ctxs.iter().enumerate() {
                if ctx.dim < id.min_dim {
                    continue;
                }
                if let Some(rec) = id.recorded {
                    jobs.extend((0..rec(ctx).len()).map(|k| Job {
                        identity: i,
                        dim: c,
                        case: Case::Recorded(k),
                    }));
                }
                let n = if id.once { 1 } else { config.trials };
                jobs.extend((0..n).map(|k| Job {
                    identity: i,
                    dim: c,
                    case: Case::Trial(k),
                }));
            }
        }
    }

    let outcomes = config.exec.map(&jobs, |job| {
        let id = &all[job.identity];
        let ctx = &ctxs[job.dim];
        match job.case {
            Case::Recorded(k) => id.recorded.expect("recorded cases")(ctx).swap_remove(k),
            Case::Trial(k) => {
                let mut rng = random::stream(
                    config.seed,
                    &[
                        random::label(id.suite.name()),
                        random::label(id.name),
                        ctx.dim as u64,
                        k as u64,
                    ],
                );
                (id.check)(ctx, &mut rng)
            }
        }
    });

    let mut reports: Vec<IdentityReport> = selected
        .iter()
        .map(|&i| IdentityReport {
            suite: all[i].suite,
            identity: all[i].name,
            passed: 0,
            failed: 0,
            counterexample: None,
        })
        .collect();
    for (job, outcome) in jobs.iter().zip(outcomes) {
        let slot = selected.iter().position(|&i| i == job.identity).expect("selected");
        let r = &mut reports[slot];
        match outcome {
            Ok(()) => r.passed += 1,
            Err(text) => {
                r.failed += 1;
                if r.counterexample.is_none() {
                    r.counterexample = Some(Counterexample {
                        dim: ctxs[job.dim].dim,
                        case: match job.case {
                            Case::Recorded(k) => format!("recorded {}", k + 1),
                            Case::Trial(k) => format!("trial {k}"),
                        },
                        inputs: text,
                    });
                }
            }
        }
    }
    Ok(SuiteReport {
        seed: config.seed,
        trials: config.trials,
        identities: reports,
        warnings,
    })
}

// ---- exterior ----

fn ext_commutative(c: &Ctx, rng: &mut TrialRng) -> Check {
    let (p, q) = (rng.gen_range(0..=c.dim), rng.gen_range(0..=c.dim));
    let k = (p * q) as i64;
    if rng.gen_bool(0.5) {
        let (a, b) = (c.mv(rng, p), c.mv(rng, q));
        expect(a.wedge(&b) == b.wedge(&a).signed(k), &[("A", &a), ("B", &b)])
    } else {
        let (a, b) = (c.form(rng, p), c.form(rng, q));
        expect(a.wedge(&b) == b.wedge(&a).signed(k), &[("A", &a), ("B", &b)])
    }
}

fn ext_associative(c: &Ctx, rng: &mut TrialRng) -> Check {
    let ds: Vec<usize> = (0..3).map(|_| rng.gen_range(0..=c.dim)).collect();
    let (a, b, d) = (c.form(rng, ds[0]), c.form(rng, ds[1]), c.form(rng, ds[2]));
    expect(
        a.wedge(&b).wedge(&d) == a.wedge(&b.wedge(&d)),
        &[("A", &a), ("B", &b), ("C", &d)],
    )
}

fn ext_insertion_duality(c: &Ctx, rng: &mut TrialRng) -> Check {
    let u = rng.gen_range(0..=c.dim);
    let v = rng.gen_range(0..=c.dim - u);
    let (uf, vf, w) = (c.mv(rng, u), c.mv(rng, v), c.form(rng, u + v));
    expect(
        uf.insert_into(&w).pair_with(&vf) == w.pair_with(&uf.wedge(&vf)),
        &[("U", &uf), ("V", &vf), ("omega", &w)],
    )
}

fn ext_iota_duality(c: &Ctx, rng: &mut TrialRng) -> Check {
    let k = rng.gen_range(0..=c.dim);
    let l = rng.gen_range(0..=c.dim - k);
    let (w, phi, u) = (c.form(rng, k), c.form(rng, l), c.mv(rng, k + l));
    expect(
        phi.pair_with(&w.insert_into(&u)) == w.wedge(&phi).pair_with(&u),
        &[("omega", &w), ("phi", &phi), ("U", &u)],
    )
}

fn ext_insertion_of_wedge(c: &Ctx, rng: &mut TrialRng) -> Check {
    let u = rng.gen_range(0..=c.dim);
    let v = rng.gen_range(0..=c.dim - u);
    let k = rng.gen_range(0..=c.dim);
    let (uf, vf, w) = (c.mv(rng, u), c.mv(rng, v), c.form(rng, k));
    expect(
        uf.wedge(&vf).insert_into(&w) == vf.insert_into(&uf.insert_into(&w)),
        &[("U", &uf), ("V", &vf), ("omega", &w)],
    )
}

fn ext_insertion_derivation(c: &Ctx, rng: &mut TrialRng) -> Check {
    let (u, k) = (c.degree(rng), rng.gen_range(0..c.dim));
    let (uf, w, psi) = (c.mv(rng, u), c.form(rng, 1), c.form(rng, k));
    let lhs = uf.insert_into(&w.wedge(&psi));
    let rhs = &w.insert_into(&uf).insert_into(&psi) + &w.wedge(&uf.insert_into(&psi)).signed(u as i64);
    expect(lhs == rhs, &[("U", &uf), ("omega", &w), ("psi", &psi)])
}

/// All permutations of `0..n` with their signs.
fn permutations(n: usize) -> Vec<(Vec<usize>, i64)> {
    if n == 0 {
        return vec![(Vec::new(), 1)];
    }
    let mut out = Vec::new();
    for (p, s) in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            // moving n−1 from the end to `pos` passes `len − pos` entries
            out.push((q, s * sign((p.len() - pos) as i64)));
        }
    }
    out
}

/// `det(M)` by the Leibniz formula.
fn det(m: &[Vec<Polynomial>], dim: usize) -> Polynomial {
    let n = m.len();
    permutations(n).into_iter().fold(Polynomial::zero(dim), |acc, (p, s)| {
        let prod = (0..n).fold(Polynomial::one(dim), |t, i| &t * &m[i][p[i]]);
        &acc + &prod.scale(&Rational::from_integer(s))
    })
}

fn factorial(n: usize) -> Rational {
    (1..=n as i64).fold(Rational::one(), |acc, k| &acc * &Rational::from_integer(k))
}

/// `U(φ_1, …, φ_u)` for 1-fields `φ_a` of the dual variance, as
/// `Σ_I U^I det(φ_a(∂_{I_b}))`.
fn evaluate<A: Variance, B: Variance>(u: &Graded<A>, phis: &[&Graded<B>]) -> Polynomial {
    let dim = u.dim();
    if phis.len() != u.degree() {
        return Polynomial::zero(dim);
    }
    u.terms().fold(Polynomial::zero(dim), |acc, (blade, coeff)| {
        let idx: Vec<usize> = blade.indices().collect();
        let m: Vec<Vec<Polynomial>> = phis
            .iter()
            .map(|phi| idx.iter().map(|&i| phi.component(Blade::single(i))).collect())
            .collect();
        &acc + &(coeff * &det(&m, dim))
    })
}

/// `1/(u!ℓ!) Σ_σ sign σ · U(φ_σ1, …, φ_σu) φ_σ(u+1) ∧ … ∧ φ_σ(u+ℓ)`.
fn insertion_by_permutations(u: &Multivector, phis: &[Form]) -> Form {
    let dim = u.dim();
    let (k, deg) = (phis.len(), u.degree());
    if deg > k {
        return Form::zero(dim, 0);
    }
    let norm = (&factorial(deg) * &factorial(k - deg)).recip();
    let mut out = Form::zero(dim, k - deg);
    for (p, s) in permutations(k) {
        let args: Vec<&Form> = p[..deg].iter().map(|&i| &phis[i]).collect();
        let value = evaluate(u, &args);
        if value.is_zero() {
            continue;
        }
        let rest = p[deg..]
            .iter()
            .fold(Form::scalar(Polynomial::one(dim)), |acc, &i| acc.wedge(&phis[i]));
        out = &out + &rest.scale(&value).scale_rational(&(&norm * &Rational::from_integer(s)));
    }
    out
}

/// `1/(p!k!) Σ_σ sign σ · ω(X_σ1, …, X_σp) X_σ(p+1) ∧ … ∧ X_σ(p+k)`.
fn iota_by_permutations(w: &Form, xs: &[Multivector]) -> Multivector {
    let dim = w.dim();
    let (n, deg) = (xs.len(), w.degree());
    if deg > n {
        return Multivector::zero(dim, 0);
    }
    let norm = (&factorial(deg) * &factorial(n - deg)).recip();
    let mut out = Multivector::zero(dim, n - deg);
    for (p, s) in permutations(n) {
        let args: Vec<&Multivector> = p[..deg].iter().map(|&i| &xs[i]).collect();
        let value = evaluate(w, &args);
        if value.is_zero() {
            continue;
        }
        let rest = p[deg..]
            .iter()
            .fold(Multivector::scalar(Polynomial::one(dim)), |acc, &i| acc.wedge(&xs[i]));
        out = &out + &rest.scale(&value).scale_rational(&(&norm * &Rational::from_integer(s)));
    }
    out
}

fn ext_shuffle_basis(c: &Ctx, _rng: &mut TrialRng) -> Check {
    let dim = c.dim;
    let blades: Vec<Blade> = (0..=dim).flat_map(|g| Blade::all(dim, g)).collect();
    let one = || Polynomial::one(dim);
    for &a in &blades {
        for &b in &blades {
            let u = Multivector::from_terms(dim, a.grade(), [(a, one())]);
            let w = Form::from_terms(dim, b.grade(), [(b, one())]);
            let phis: Vec<Form> = b.indices().map(|i| Form::basis(dim, &[i])).collect();
            if u.insert_into(&w) != insertion_by_permutations(&u, &phis) {
                return Err(inputs(&[("U", &u), ("omega", &w)]));
            }
            let w2 = Form::from_terms(dim, a.grade(), [(a, one())]);
            let xs: Vec<Multivector> = b.indices().map(|i| Multivector::basis(dim, &[i])).collect();
            let u2 = Multivector::from_terms(dim, b.grade(), [(b, one())]);
            if w2.insert_into(&u2) != iota_by_permutations(&w2, &xs) {
                return Err(inputs(&[("omega", &w2), ("U", &u2)]));
            }
        }
    }
    Ok(())
}

fn ext_shuffle_random(c: &Ctx, rng: &mut TrialRng) -> Check {
    let k = rng.gen_range(1..=c.dim);
    let u = rng.gen_range(0..=k);
    let coeff = c.coeff.min(1);
    let phis: Vec<Form> = (0..k).map(|_| random::graded(rng, c.dim, 1, coeff)).collect();
    let uf: Multivector = random::graded(rng, c.dim, u, coeff);
    let w = phis
        .iter()
        .fold(Form::scalar(Polynomial::one(c.dim)), |acc, p| acc.wedge(p));
    if uf.insert_into(&w) != insertion_by_permutations(&uf, &phis) {
        let list = phis.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
        return Err(inputs(&[("U", &uf), ("factors", &list)]));
    }
    let xs: Vec<Multivector> = (0..k).map(|_| random::graded(rng, c.dim, 1, coeff)).collect();
    let wf: Form = random::graded(rng, c.dim, u, coeff);
    let uu = xs
        .iter()
        .fold(Multivector::scalar(Polynomial::one(c.dim)), |acc, x| acc.wedge(x));
    let list = xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
    expect(
        wf.insert_into(&uu) == iota_by_permutations(&wf, &xs),
        &[("omega", &wf), ("factors", &list)],
    )
}

// ---- cartan ----

fn cartan_d_squared(c: &Ctx, _rng: &mut TrialRng) -> Check {
    let d = FormOperator::d(c.dim);
    expect(
        c.ops_equal(&d.compose(&d), &FormOperator::zero(c.dim, 2)),
        &[("dim", &c.dim)],
    )
}

fn cartan_insertion_function(c: &Ctx, rng: &mut TrialRng) -> Check {
    let f = c.poly(rng);
    let lhs = ins(&Multivector::scalar(f.clone()));
    let rhs = FormOperator::multiplication(Form::scalar(f.clone()));
    expect(c.ops_equal(&lhs, &rhs), &[("f", &f)])
}

fn cartan_insertions_commute(c: &Ctx, rng: &mut TrialRng) -> Check {
    let (u, v) = (c.any_mv(rng), c.any_mv(rng));
    let comm = ins(&u).commutator(&ins(&v));
    let zero = FormOperator::zero(c.dim, -(u.degree() as i32 + v.degree() as i32));
    let ok = c.ops_equal(&comm, &zero)
        && (u.degree() + v.degree() > c.dim
            || c.ops_equal(&ins(&u.wedge(&v)), &ins(&v).compose(&ins(&u))));
    expect(ok, &[("U", &u), ("V", &v)])
}

fn cartan_insertion_mu(c: &Ctx, rng: &mut TrialRng) -> Check {
    let (u, w) = (c.any_mv(rng), c.form(rng, 1));
    let lhs = ins(&u).commutator(&FormOperator::multiplication(w.clone()));
    let rhs = ins_with(w.insert_into(&u), 1 - u.degree() as i32);
    expect(c.ops_equal(&lhs, &rhs), &[("U", &u), ("omega", &w)])
}

fn cartan_lie_commutator(c: &Ctx, rng: &mut TrialRng) -> Check {
    let u = c.any_mv(rng);
    let rhs = ins(&u).commutator(&FormOperator::d(c.dim));
    expect(c.ops_equal(&lie(&u), &rhs), &[("U", &u)])
}

fn cartan_lie_wedge(c: &Ctx, rng: &mut TrialRng) -> Check {
    let u = c.degree(rng);
    let v = rng.gen_range(0..=c.max_mv.saturating_sub(u));
    let (uf, vf) = (c.mv(rng, u), c.mv(rng, v));
    let lhs = lie_with(uf.wedge(&vf), 1 - (u + v) as i32);
    let rhs = &ins(&vf).compose(&lie(&uf)) + &lie(&vf).compose(&ins(&uf)).signed(u as i64);
    expect(c.ops_equal(&lhs, &rhs), &[("U", &uf), ("V", &vf)])
}

fn cartan_lie_decomposable(c: &Ctx, rng: &mut TrialRng) -> Check {
    let u = rng.gen_range(1..=c.max_mv.max(1));
    let xs: Vec<Multivector> = (0..u).map(|_| c.vector_field(rng)).collect();
    let wedge = xs
        .iter()
        .fold(Multivector::scalar(Polynomial::one(c.dim)), |acc, x| acc.wedge(x));
    let hom = 1 - u as i32;
    let mut rhs = FormOperator::zero(c.dim, hom);
    for j in 0..u {
        // i(X_u)⋯i(X_{j+1}) L(X_j) i(X_{j−1})⋯i(X_1), applied right to left
        let mut op = FormOperator::identity(c.dim);
        for (k, x) in xs.iter().enumerate() {
            let step = if k == j { lie(x) } else { ins(x) };
            op = step.compose(&op);
        }
        rhs = &rhs + &op.signed(j as i64);
    }
    let list = xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
    expect(c.ops_equal(&lie_with(wedge, hom), &rhs), &[("factors", &list)])
}

fn cartan_lie_function(c: &Ctx, rng: &mut TrialRng) -> Check {
    let f = c.poly(rng);
    let rhs = -&FormOperator::multiplication(differential(&f));
    expect(c.ops_equal(&lie_with(Multivector::scalar(f.clone()), 1), &rhs), &[("f", &f)])
}

fn cartan_lie_d(c: &Ctx, rng: &mut TrialRng) -> Check {
    let u = c.any_mv(rng);
    let comm = lie(&u).commutator(&FormOperator::d(c.dim));
    let zero = FormOperator::zero(c.dim, 2 - u.degree() as i32);
    expect(c.ops_equal(&comm, &zero), &[("U", &u)])
}

fn cartan_lie_insertion(c: &Ctx, rng: &mut TrialRng) -> Check {
    let (u, v) = (c.any_mv(rng), c.any_mv(rng));
    let hom = 1 - (deg(&u) + deg(&v)) as i32;
    let lhs = lie(&u).commutator(&ins(&v));
    let s = (deg(&u) - 1) * (deg(&v) - 1);
    let uv = ins_with(br(&u, &v), hom).signed(s);
    let vu = -&ins_with(br(&v, &u), hom);
    expect(
        c.ops_equal(&lhs, &uv) && c.ops_equal(&lhs, &vu),
        &[("U", &u), ("V", &v)],
    )
}

fn cartan_lie_lie(c: &Ctx, rng: &mut TrialRng) -> Check {
    let (u, v) = (c.any_mv(rng), c.any_mv(rng));
    let hom = 2 - (deg(&u) + deg(&v)) as i32;
    let lhs = lie(&u).commutator(&lie(&v));
    let s = (deg(&u) - 1) * (deg(&v) - 1);
    let uv = lie_with(br(&u, &v), hom).signed(s);
    let vu = -&lie_with(br(&v, &u), hom);
    expect(
        c.ops_equal(&lhs, &uv) && c.ops_equal(&lhs, &vu),
        &[("U", &u), ("V", &v)],
    )
}

fn cartan_insertion_bracket(c: &Ctx, rng: &mut TrialRng) -> Check {
    let (u, v) = (c.any_mv(rng), c.any_mv(rng));
    let (du, dv) = (deg(&u), deg(&v));
    let hom = 1 - (du + dv) as i32;
    let lhs = ins_with(br(&u, &v), hom);
    let d = FormOperator::d(c.dim);
    let uw = ins_with(u.wedge(&v), -((du + dv) as i32));
    let terms = [
        -&ins(&v).compose(&d).compose(&ins(&u)),
        ins(&u).compose(&d).compose(&ins(&v)).signed((du - 1) * (dv - 1)),
        d.compose(&uw).signed(dv),
        uw.compose(&d).signed(du),
    ];
    let rhs = terms[1..].iter().fold(terms[0].clone(), |acc, t| &acc + t);
    expect(c.ops_equal(&lhs, &rhs), &[("U", &u), ("V", &v)])
}

fn cartan_lie_mu_df(c: &Ctx, rng: &mut TrialRng) -> Check {
    let (u, f) = (c.any_mv(rng), c.poly(rng));
    let df = differential(&f);
    let lhs = lie(&u).commutator(&FormOperator::multiplication(df.clone()));
    let rhs = -&lie_with(df.insert_into(&u), 2 - u.degree() as i32);
    expect(c.ops_equal(&lhs, &rhs), &[("U", &u), ("f", &f)])
}

// ---- schouten ----

fn sch_cross_method(c: &Ctx, rng: &mut TrialRng) -> Check {
    for u in 0..=c.max_mv {
        for v in 0..=c.max_mv {
            let (uf, vf) = (c.mv(rng, u), c.mv(rng, v));
            let direct = br(&uf, &vf);
            let tulczyjew = bracket_tulczyjew(&uf, &vf).expect("fields of one dimension");
            if direct != tulczyjew {
                return Err(inputs(&[("U", &uf), ("V", &vf)]));
            }
        }
    }
    Ok(())
}

fn sch_vector_fields(c: &Ctx, rng: &mut TrialRng) -> Check {
    let (x, y) = (c.vector_field(rng), c.vector_field(rng));
    let ok = br(&x, &y) == lie_bracket_vf(&x, &y).expect("vector fields");
    expect(ok, &[("X", &x), ("Y", &y)])
}

fn sch_antisymmetry(c: &Ctx, rng: &mut TrialRng) -> Check {
    let (u, v) = (c.any_mv(rng), c.any_mv(rng));
    let s = 1 + (deg(&u) - 1) * (deg(&v) - 1);
    expect(br(&u, &v) == br(&v, &u).signed(s), &[("U", &u), ("V", &v)])
}

fn jacobi_holds(u: &Multivector, v: &Multivector, w: &Multivector, variant: bool) -> bool {
    let (du, dv) = (deg(u), deg(v));
    let exp = if variant { du * (dv - 1) } else { (du - 1) * (dv - 1) };
    let lhs = br(u, &br(v, w));
    let rhs = &br(&br(u, v), w) + &br(v, &br(u, w)).signed(exp);
    lhs == rhs
}

fn leibniz_holds(u: &Multivector, v: &Multivector, w: &Multivector, variant: bool) -> bool {
    let (du, dv) = (deg(u), deg(v));
    let exp = if variant { (du - 1) * (dv - 1) } else { (du - 1) * dv };
    if v.degree() + w.degree() > v.dim() {
        return true;
    }
    let lhs = br(u, &v.wedge(w));
    let rhs = &br(u, v).wedge(w) + &v.wedge(&br(u, w)).signed(exp);
    lhs == rhs
}

const JACOBI_RECORDED: [[&str; 3]; 2] = [["x1", "x2", "e1^e2"], ["x1", "e1^e2", "x1*e1"]];
const LEIBNIZ_RECORDED: [[&str; 3]; 2] = [["x1", "1", "e1"], ["e1^e2", "e1", "x1"]];

fn recorded_triple(c: &Ctx, t: &[&str; 3]) -> [Multivector; 3] {
    t.map(|s| parse_multivector(s, c.dim).expect("recorded inputs parse"))
}

fn triple_inputs(t: &[Multivector; 3]) -> String {
    inputs(&[("U", &t[0]), ("V", &t[1]), ("W", &t[2])])
}

fn sch_jacobi(c: &Ctx, rng: &mut TrialRng) -> Check {
    let t = [c.any_mv(rng), c.any_mv(rng), c.any_mv(rng)];
    let variant = c.variant == Some(SignVariant::JacobiUVMinusOne);
    if jacobi_holds(&t[0], &t[1], &t[2], variant) {
        Ok(())
    } else {
        Err(triple_inputs(&t))
    }
}

fn sch_jacobi_recorded(c: &Ctx) -> Vec<Check> {
    if c.dim < 2 {
        return Vec::new();
    }
    let variant = c.variant == Some(SignVariant::JacobiUVMinusOne);
    JACOBI_RECORDED
        .iter()
        .map(|t| {
            let t = recorded_triple(c, t);
            if jacobi_holds(&t[0], &t[1], &t[2], variant) {
                Ok(())
            } else {
                Err(triple_inputs(&t))
            }
        })
        .collect()
}

fn sch_leibniz(c: &Ctx, rng: &mut TrialRng) -> Check {
    let u = c.any_mv(rng);
    let v = c.degree(rng);
    let w = rng.gen_range(0..=c.dim - v);
    let t = [u, c.mv(rng, v), c.mv(rng, w)];
    let variant = c.variant == Some(SignVariant::LeibnizUMinusOneVMinusOne);
    if leibniz_holds(&t[0], &t[1], &t[2], variant) {
        Ok(())
    } else {
        Err(triple_inputs(&t))
    }
}

fn sch_leibniz_recorded(c: &Ctx) -> Vec<Check> {
    if c.dim < 2 {
        return Vec::new();
    }
    let variant = c.variant == Some(SignVariant::LeibnizUMinusOneVMinusOne);
    LEIBNIZ_RECORDED
        .iter()
        .map(|t| {
            let t = recorded_triple(c, t);
            if leibniz_holds(&t[0], &t[1], &t[2], variant) {
                Ok(())
            } else {
                Err(triple_inputs(&t))
            }
        })
        .collect()
}

fn sch_jacobi_variant_rejected(c: &Ctx, _rng: &mut TrialRng) -> Check {
    for t in &JACOBI_RECORDED {
        let t = recorded_triple(c, t);
        if jacobi_holds(&t[0], &t[1], &t[2], true) {
            return Err(triple_inputs(&t));
        }
    }
    Ok(())
}

fn sch_leibniz_variant_rejected(c: &Ctx, _rng: &mut TrialRng) -> Check {
    for t in &LEIBNIZ_RECORDED {
        let t = recorded_triple(c, t);
        if leibniz_holds(&t[0], &t[1], &t[2], true) {
            return Err(triple_inputs(&t));
        }
    }
    Ok(())
}

fn sch_derivation_rule(c: &Ctx, rng: &mut TrialRng) -> Check {
    let (u, v, f) = (c.any_mv(rng), c.any_mv(rng), c.poly(rng));
    let df = differential(&f);
    let lhs = df.insert_into(&br(&u, &v));
    let rhs = &br(&df.insert_into(&u), &v) + &br(&u, &df.insert_into(&v)).signed(deg(&u) - 1);
    expect(lhs == rhs, &[("U", &u), ("V", &v), ("f", &f)])
}

/// `⟨dω, −[V,U]⟩ = ⟨d i(V) dω, U⟩ − (−1)^{(u−1)(v−1)} ⟨d i(U) dω, V⟩` for
/// arbitrary polynomial `ω`, not only the constant test forms.
fn sch_exact_form_pairing(c: &Ctx, rng: &mut TrialRng) -> Check {
    let (u, v) = (c.any_mv(rng), c.any_mv(rng));
    let k = (u.degree() + v.degree()) as i64 - 2;
    if k < 0 || k as usize >= c.dim {
        return Ok(());
    }
    let w = c.form(rng, k as usize);
    let dw = w.d();
    let lhs = dw.pair_with(&-br(&v, &u));
    let a = v.insert_into(&dw).d().pair_with(&u);
    let b = u.insert_into(&dw).d().pair_with(&v);
    let rhs = &a - &b.scale(&Rational::from_integer(sign((deg(&u) - 1) * (deg(&v) - 1))));
    expect(lhs == rhs, &[("U", &u), ("V", &v), ("omega", &w)])
}

// ---- poisson ----

fn candidate(text: &str, dim: usize) -> PoissonCandidate {
    PoissonCandidate::new(parse_multivector(text, dim).expect("bivector parses")).expect("degree 2")
}

fn poisson_verified(c: &Ctx, p: &PoissonCandidate) -> bool {
    schouten(p.bivector(), p.bivector()).is_ok_and(|pp| pp.is_zero())
        && jacobiator_counterexample(p, c.coeff, Exec::Sequential).is_none()
}

fn poi_canonical(c: &Ctx, _rng: &mut TrialRng) -> Check {
    let p = candidate("e1^e2", c.dim);
    expect(poisson_verified(c, &p), &[("P", p.bivector())])
}

pub(crate) const SO3: &str = "x3*e1^e2 + x1*e2^e3 + x2*e3^e1";
pub(crate) const GOLDEN_NON_POISSON: &str = "x1*e1^e2 + x2*e2^e3";

fn poi_so3(c: &Ctx, _rng: &mut TrialRng) -> Check {
    let p = candidate(SO3, c.dim);
    expect(poisson_verified(c, &p), &[("P", p.bivector())])
}

fn poi_golden(c: &Ctx, _rng: &mut TrialRng) -> Check {
    let p = candidate(GOLDEN_NON_POISSON, c.dim);
    let want = parse_multivector("2*x1*e1^e2^e3", c.dim).expect("parses");
    let scope = TestScope {
        trials: 20,
        ..c.scope.clone()
    };
    let ok = is_poisson_with(&p, &scope, &[], Exec::Sequential)
        .is_ok_and(|r| !r.poisson && r.schouten_square == want && r.has_nonzero_sample());
    expect(ok, &[("P", p.bivector())])
}

fn random_bivector(c: &Ctx, rng: &mut TrialRng) -> PoissonCandidate {
    let coeff = if rng.gen_bool(0.25) { 0 } else { c.coeff.min(2) };
    PoissonCandidate::new(random::graded(rng, c.dim, 2, coeff)).expect("degree 2")
}

fn poi_iterated(c: &Ctx, rng: &mut TrialRng) -> Check {
    let p = random_bivector(c, rng);
    let (f, g) = (c.poly(rng), c.poly(rng));
    let fp = br(&Multivector::scalar(f.clone()), p.bivector());
    let gfp = br(&Multivector::scalar(g.clone()), &fp);
    let ok = gfp.as_scalar().is_some_and(|s| s == p.bracket(&f, &g));
    expect(ok, &[("P", p.bivector()), ("f", &f), ("g", &g)])
}

fn poi_triple(c: &Ctx, rng: &mut TrialRng) -> Check {
    let p = random_bivector(c, rng);
    let fs: Vec<Polynomial> = (0..3).map(|_| random::any_polynomial(rng, c.dim, c.coeff.min(2))).collect();
    let ok = TripleIdentity::compute(&p, &fs[0], &fs[1], &fs[2])
        .is_ok_and(|t| t.jacobi_side_holds() && t.pairing_side_holds());
    expect(ok, &[("P", p.bivector()), ("f", &fs[0]), ("g", &fs[1]), ("h", &fs[2])])
}

fn poi_equivalence(c: &Ctx, rng: &mut TrialRng) -> Check {
    let p = random_bivector(c, rng);
    let square_zero = schouten(p.bivector(), p.bivector()).is_ok_and(|pp| pp.is_zero());
    let jacobi = jacobiator_counterexample(&p, c.coeff, Exec::Sequential).is_none();
    expect(square_zero == jacobi, &[("P", p.bivector())])
}

// ---- naturality ----

fn random_map(c: &Ctx, rng: &mut TrialRng) -> (PolyMap, PolyMap) {
    if rng.gen_bool(0.5) {
        random::linear_invertible(rng, c.dim)
    } else {
        random::shear(rng, c.dim)
    }
}

fn map_text(m: &PolyMap) -> String {
    let comps: Vec<String> = m.components().iter().map(ToString::to_string).collect();
    format!("({})", comps.join(", "))
}

fn nat_bracket(c: &Ctx, rng: &mut TrialRng) -> Check {
    let (phi, psi) = random_map(c, rng);
    let coeff = c.coeff.min(2);
    let (u1, u2): (Multivector, Multivector) = {
        let (a, b) = (c.degree(rng), c.degree(rng));
        (random::graded(rng, c.dim, a, coeff), random::graded(rng, c.dim, b, coeff))
    };
    let push = |u: &Multivector| pushforward_invertible(&phi, &psi, u);
    let ok = match (push(&u1), push(&u2)) {
        (Ok(a), Ok(b)) => naturality_check(&phi, &u1, &u2, &a, &b).unwrap_or(false),
        _ => false,
    };
    expect(ok, &[("phi", &map_text(&phi)), ("U1", &u1), ("U2", &u2)])
}

fn nat_functorial(c: &Ctx, rng: &mut TrialRng) -> Check {
    let (phi, _) = random_map(c, rng);
    let (psi, _) = random_map(c, rng);
    let k = rng.gen_range(0..=c.dim);
    let w = c.form(rng, k);
    let lhs = pullback(&phi.compose(&psi).expect("square"), &w).expect("dims");
    let rhs = pullback(&psi, &pullback(&phi, &w).expect("dims")).expect("dims");
    expect(lhs == rhs, &[("phi", &map_text(&phi)), ("psi", &map_text(&psi)), ("omega", &w)])
}

fn nat_wedge(c: &Ctx, rng: &mut TrialRng) -> Check {
    let (phi, _) = random_map(c, rng);
    let k = rng.gen_range(0..=c.dim);
    let l = rng.gen_range(0..=c.dim - k);
    let (a, b) = (c.form(rng, k), c.form(rng, l));
    let pull = |w: &Form| pullback(&phi, w).expect("dims");
    expect(
        pull(&a.wedge(&b)) == pull(&a).wedge(&pull(&b)),
        &[("phi", &map_text(&phi)), ("A", &a), ("B", &b)],
    )
}

fn nat_d(c: &Ctx, rng: &mut TrialRng) -> Check {
    let (phi, _) = random_map(c, rng);
    let k = rng.gen_range(0..c.dim);
    let w = c.form(rng, k);
    let pull = |w: &Form| pullback(&phi, w).expect("dims");
    expect(pull(&w.d()) == pull(&w).d(), &[("phi", &map_text(&phi)), ("omega", &w)])
}

fn nat_related_insertion(c: &Ctx, rng: &mut TrialRng) -> Check {
    let (phi, psi) = random_map(c, rng);
    let u = c.degree(rng);
    let uf: Multivector = random::graded(rng, c.dim, u, c.coeff.min(2));
    let image = if rng.gen_bool(0.5) {
        pushforward_invertible(&phi, &psi, &uf).expect("inverse checked by generator")
    } else {
        random::graded(rng, c.dim, u, c.coeff.min(2))
    };
    let a = related_exact(&phi, &uf, &image);
    let b = related_by_insertion(&phi, &uf, &image);
    expect(
        matches!((a, b), (Ok(x), Ok(y)) if x == y),
        &[("phi", &map_text(&phi)), ("U", &uf), ("U'", &image)],
    )
}

fn nat_related_lie(c: &Ctx, rng: &mut TrialRng) -> Check {
    let (phi, psi) = random_map(c, rng);
    let u = c.degree(rng);
    let uf: Multivector = random::graded(rng, c.dim, u, c.coeff.min(2));
    let Ok(image) = pushforward_invertible(&phi, &psi, &uf) else {
        return Err(inputs(&[("phi", &map_text(&phi)), ("U", &uf)]));
    };
    let family = TestScope::with_degrees(c.dim, 1, c.dim).spanning_family();
    let ok = family.iter().all(|w| {
        let lhs = uf.lie_diff(&pullback(&phi, w).expect("dims"));
        let rhs = pullback(&phi, &image.lie_diff(w)).expect("dims");
        lhs == rhs
    });
    expect(ok, &[("phi", &map_text(&phi)), ("U", &uf)])
}

// ---- flow ----

fn random_generator(c: &Ctx, rng: &mut TrialRng) -> Multivector {
    linear_vector_field(&random::nilpotent_matrix(rng, c.dim))
}

fn flow_bracket(c: &Ctx, rng: &mut TrialRng) -> Check {
    let x = random_generator(c, rng);
    let u = c.any_mv(rng);
    let ok = match (flow_lie_derivative(&x, &u), schouten(&x, &u)) {
        (Ok(a), Ok(b)) => a == b,
        _ => false,
    };
    expect(ok, &[("X", &x), ("U", &u)])
}

fn flow_equation(c: &Ctx, rng: &mut TrialRng) -> Check {
    let x = random_generator(c, rng);
    let ok = FlowFamily::new(&x).is_ok_and(|f| f.satisfies_flow_equation());
    expect(ok, &[("X", &x)])
}

fn flow_group_law(c: &Ctx, rng: &mut TrialRng) -> Check {
    let x = random_generator(c, rng);
    let ok = FlowFamily::new(&x).is_ok_and(|f| f.satisfies_group_law());
    expect(ok, &[("X", &x)])
}

// ---- conventions ----

fn roundtrip(c: &Ctx, rng: &mut TrialRng, conv: BracketConvention) -> Check {
    let (u, v) = (c.any_mv(rng), c.any_mv(rng));
    let (du, dv) = (u.degree(), v.degree());
    let koszul = br(&u, &v);
    let converted = bracket(&u, &v, Method::Direct, conv).expect("dims");
    let ok = conv.to_koszul(converted.clone(), du, dv) == koszul
        && conv.from_koszul(koszul.clone(), du, dv) == converted
        && converted == koszul.signed(i64::from(conv.factor(du, dv) < 0));
    expect(ok, &[("U", &u), ("V", &v)])
}

fn conv_roundtrip_tulczyjew(c: &Ctx, rng: &mut TrialRng) -> Check {
    roundtrip(c, rng, BracketConvention::Tulczyjew)
}

fn conv_roundtrip_lichnerowicz(c: &Ctx, rng: &mut TrialRng) -> Check {
    roundtrip(c, rng, BracketConvention::Lichnerowicz)
}

/// The Tulczyjew-convention bracket `[U,V]` equals the Koszul `[V,U]`.
fn conv_tulczyjew_reversed(c: &Ctx, rng: &mut TrialRng) -> Check {
    let (u, v) = (c.any_mv(rng), c.any_mv(rng));
    let t = bracket(&u, &v, Method::Direct, BracketConvention::Tulczyjew).expect("dims");
    expect(t == br(&v, &u), &[("U", &u), ("V", &v)])
}
