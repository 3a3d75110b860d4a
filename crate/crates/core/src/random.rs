//! Seeded generators for randomized identity checks.
//!
//! Each trial draws from its own ChaCha stream keyed by `(seed, labels…)`, so
//! a trial's inputs do not depend on which thread runs it or on how many
//! trials ran before it.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exterior::{Blade, Graded, Variance};
use crate::geometry::PolyMap;
use crate::ring::{Monomial, Polynomial, Rational};

pub type TrialRng = ChaCha8Rng;

/// Largest absolute value of a sampled integer coefficient.
pub const COEFF_BOUND: i64 = 3;
/// Largest number of monomials sampled per basis tuple.
pub const MAX_TERMS: usize = 3;

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// FNV-1a hash of a name, for use as a stream label.
pub fn label(name: &str) -> u64 {
    name.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| {
        (h ^ u64::from(b)).wrapping_mul(0x0100_0000_01b3)
    })
}

/// The stream for `seed` and a path of labels.
pub fn stream(seed: u64, labels: &[u64]) -> TrialRng {
    let key = labels.iter().fold(splitmix(seed), |acc, &l| splitmix(acc ^ l));
    ChaCha8Rng::seed_from_u64(key)
}

/// A nonzero integer in `[-COEFF_BOUND, COEFF_BOUND]`.
pub fn coefficient(rng: &mut impl Rng) -> Rational {
    let n = rng.gen_range(1..=COEFF_BOUND);
    Rational::from_integer(if rng.gen_bool(0.5) { n } else { -n })
}

/// A monomial of total degree at most `max_degree`.
pub fn monomial(rng: &mut impl Rng, dim: usize, max_degree: u32) -> Monomial {
    let mut exps = vec![0u16; dim];
    if dim > 0 {
        for _ in 0..rng.gen_range(0..=max_degree) {
            exps[rng.gen_range(0..dim)] += 1;
        }
    }
    Monomial::from_exponents(&exps)
}

/// A nonzero polynomial with between 1 and `MAX_TERMS` terms.
pub fn polynomial(rng: &mut impl Rng, dim: usize, max_degree: u32) -> Polynomial {
    loop {
        let n = rng.gen_range(1..=MAX_TERMS);
        let p = Polynomial::from_terms(
            dim,
            (0..n).map(|_| (monomial(rng, dim, max_degree), coefficient(rng))),
        );
        if !p.is_zero() {
            return p;
        }
    }
}

/// A polynomial that may be zero or constant, for exercising degenerate inputs.
pub fn any_polynomial(rng: &mut impl Rng, dim: usize, max_degree: u32) -> Polynomial {
    match rng.gen_range(0..8) {
        0 => Polynomial::zero(dim),
        1 => Polynomial::constant(dim, coefficient(rng)),
        _ => polynomial(rng, dim, max_degree),
    }
}

/// A nonzero homogeneous field of the given degree on up to three basis tuples.
pub fn graded<V: Variance>(
    rng: &mut impl Rng,
    dim: usize,
    degree: usize,
    coeff_degree: u32,
) -> Graded<V> {
    let mut blades = Blade::all(dim, degree);
    blades.shuffle(rng);
    let n = rng.gen_range(1..=blades.len().min(3));
    Graded::from_terms(
        dim,
        degree,
        blades
            .into_iter()
            .take(n)
            .map(|b| (b, polynomial(rng, dim, coeff_degree)))
            .collect::<Vec<_>>(),
    )
}

/// A square matrix with integer entries in `[-2, 2]` that is strictly upper
/// triangular after a random relabeling of coordinates, hence nilpotent.
pub fn nilpotent_matrix(rng: &mut impl Rng, dim: usize) -> Vec<Vec<Rational>> {
    let mut perm: Vec<usize> = (0..dim).collect();
    perm.shuffle(rng);
    let mut a = vec![vec![Rational::zero(); dim]; dim];
    for i in 0..dim {
        for j in i + 1..dim {
            a[perm[i]][perm[j]] = Rational::from_integer(rng.gen_range(-2..=2));
        }
    }
    a
}

/// An invertible linear map and its inverse: a product of elementary shears,
/// scalings by `±1, ±2, ±1/2` and a coordinate permutation.
pub fn linear_invertible(rng: &mut impl Rng, dim: usize) -> (PolyMap, PolyMap) {
    let mut fwd = PolyMap::identity(dim);
    let mut inv = PolyMap::identity(dim);
    let scalings = [
        Rational::one(),
        Rational::from_integer(-1),
        Rational::from_integer(2),
        Rational::new(1, 2),
        Rational::new(-1, 2),
    ];
    for _ in 0..dim + 1 {
        let step = if dim > 1 && rng.gen_bool(0.7) {
            let i = rng.gen_range(0..dim);
            let j = (i + rng.gen_range(1..dim)) % dim;
            let c = Rational::from_integer(rng.gen_range(1..=2) * if rng.gen_bool(0.5) { 1 } else { -1 });
            let shear = |c: Rational| {
                let mut comps: Vec<Polynomial> = (0..dim).map(|k| Polynomial::var(dim, k)).collect();
                comps[i] = &comps[i] + &Polynomial::var(dim, j).scale(&c);
                PolyMap::new(dim, comps).expect("components have source dimension")
            };
            (shear(c.clone()), shear(-c))
        } else {
            let i = rng.gen_range(0..dim);
            let s = scalings.choose(rng).expect("nonempty").clone();
            let scale = |s: &Rational| {
                let mut comps: Vec<Polynomial> = (0..dim).map(|k| Polynomial::var(dim, k)).collect();
                comps[i] = comps[i].scale(s);
                PolyMap::new(dim, comps).expect("components have source dimension")
            };
            (scale(&s), scale(&s.recip()))
        };
        fwd = step.0.compose(&fwd).expect("square maps");
        inv = inv.compose(&step.1).expect("square maps");
    }
    let mut perm: Vec<usize> = (0..dim).collect();
    perm.shuffle(rng);
    let mut back = vec![0; dim];
    for (k, &p) in perm.iter().enumerate() {
        back[p] = k;
    }
    let permute = |p: &[usize]| {
        PolyMap::new(dim, p.iter().map(|&k| Polynomial::var(dim, k)).collect())
            .expect("components have source dimension")
    };
    let fwd = permute(&perm).compose(&fwd).expect("square maps");
    let inv = inv.compose(&permute(&back)).expect("square maps");
    (fwd, inv)
}

/// A triangular polynomial automorphism `y_i = x_i + p_i(x_{i+1}, …, x_n)`
/// with `deg p_i ≤ 2`, and its inverse.
pub fn shear(rng: &mut impl Rng, dim: usize) -> (PolyMap, PolyMap) {
    let mut fwd: Vec<Polynomial> = (0..dim).map(|k| Polynomial::var(dim, k)).collect();
    let mut shifts = vec![Polynomial::zero(dim); dim];
    for (i, shift) in shifts.iter_mut().enumerate().take(dim.saturating_sub(1)) {
        let later = dim - i - 1;
        let p = polynomial(rng, later, 2);
        let placement: Vec<usize> = (i + 1..dim).collect();
        *shift = p.embed(dim, &placement);
        fwd[i] = &fwd[i] + shift;
    }
    // x_i = y_i − p_i(x_{i+1}, …), solved from the last coordinate up
    let mut inv: Vec<Polynomial> = (0..dim).map(|k| Polynomial::var(dim, k)).collect();
    for i in (0..dim).rev() {
        let images: Vec<Polynomial> = (0..dim)
            .map(|k| if k > i { inv[k].clone() } else { Polynomial::var(dim, k) })
            .collect();
        let shifted = shifts[i].substitute(&images).expect("dimensions agree");
        inv[i] = &Polynomial::var(dim, i) - &shifted;
    }
    (
        PolyMap::new(dim, fwd).expect("components have source dimension"),
        PolyMap::new(dim, inv).expect("components have source dimension"),
    )
}
