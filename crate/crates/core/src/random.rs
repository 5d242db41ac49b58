//! Seeded generators of exact and floating-point test inputs.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::poly::{Polynomial, Scalar};
use crate::spaces::{Domain, SpaceSpec};

/// The RNG used by every randomized check; stable across platforms.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Rational with numerator in `[-height, height]` and denominator in `[1, den]`.
pub fn rational<R: Rng>(rng: &mut R, height: i64, den: i64) -> BigRational {
    let p = rng.gen_range(-height..=height);
    let q = rng.gen_range(1..=den.max(1));
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn scalar<R: Rng>(rng: &mut R, height: i64, den: i64, gaussian: bool) -> Scalar {
    let re = rational(rng, height, den);
    let im = if gaussian {
        rational(rng, height, den)
    } else {
        BigRational::from_integer(0.into())
    };
    Scalar::new(re, im)
}

/// Monic polynomial of exact degree with random lower coefficients.
pub fn monic<R: Rng>(rng: &mut R, degree: usize, height: i64, gaussian: bool) -> Polynomial {
    let mut c: Vec<Scalar> = (0..degree)
        .map(|_| scalar(rng, height, 3, gaussian))
        .collect();
    c.push(Scalar::int(1));
    Polynomial::new(c)
}

/// Monic polynomial of the given degree assembled from random roots with
/// multiplicities at most `max_mult`, optionally topped up with a random
/// monic cofactor. Produces repeated roots far more often than [`monic`].
pub fn monic_structured<R: Rng>(
    rng: &mut R,
    degree: usize,
    max_mult: usize,
    gaussian: bool,
) -> Polynomial {
    let mut f = Polynomial::one();
    let mut remaining = degree;
    while remaining > 0 {
        if rng.gen_bool(0.2) {
            let k = rng.gen_range(1..=remaining);
            f = &f * &monic(rng, k, 4, gaussian);
            remaining -= k;
            continue;
        }
        let mult = rng.gen_range(1..=max_mult.max(1).min(remaining));
        let root = scalar(rng, 3, 2, gaussian);
        let lin = Polynomial::linear(&root);
        f = &f * &lin.pow(mult as u32);
        remaining -= mult;
    }
    f
}

/// Either generator, picked at random.
pub fn monic_mixed<R: Rng>(rng: &mut R, degree: usize, max_mult: usize, gaussian: bool) -> Polynomial {
    if rng.gen_bool(0.5) {
        monic(rng, degree, 5, gaussian)
    } else {
        monic_structured(rng, degree, max_mult, gaussian)
    }
}

/// Real monic polynomial whose real roots have multiplicity `< n`, while
/// conjugate pairs of non-real roots may have any multiplicity.
pub fn real_member<R: Rng>(rng: &mut R, degree: usize, n: usize) -> Polynomial {
    let spec = SpaceSpec::restricted_roots(degree, n, Domain::Real, Domain::Real).expect("degree >= 1, n >= 2");
    loop {
        // independently drawn real roots may coincide
        let f = real_candidate(rng, degree, n);
        if spec.contains(&f).is_ok_and(|v| v.member) {
            return f;
        }
    }
}

fn real_candidate<R: Rng>(rng: &mut R, degree: usize, n: usize) -> Polynomial {
    let mut f = Polynomial::one();
    let mut remaining = degree;
    while remaining > 0 {
        if remaining >= 2 && rng.gen_bool(0.4) {
            // (z - a)^2 + b^2 with b != 0, raised to a power
            let a = rational(rng, 3, 2);
            let b = BigRational::new(BigInt::from(rng.gen_range(1..=3)), BigInt::from(rng.gen_range(1..=2)));
            let quad = Polynomial::new(vec![
                Scalar::real(&a * &a + &b * &b),
                Scalar::real(-(a.clone() + a)),
                Scalar::int(1),
            ]);
            let mult = rng.gen_range(1..=remaining / 2);
            f = &f * &quad.pow(mult as u32);
            remaining -= 2 * mult;
        } else {
            let mult = rng.gen_range(1..=(n - 1).min(remaining));
            let root = Scalar::real(rational(rng, 3, 2));
            f = &f * &Polynomial::linear(&root).pow(mult as u32);
            remaining -= mult;
        }
    }
    f
}

/// Random complex number with standard-normal-ish components.
pub fn complex<R: Rng>(rng: &mut R, scale: f64) -> Complex64 {
    Complex64::new(
        rng.gen_range(-1.0..1.0) * scale,
        rng.gen_range(-1.0..1.0) * scale,
    )
}

/// Roots and multiplicities of a well-conditioned member of SP^d_n: distinct
/// roots pairwise at least `separation` apart inside the disk of radius
/// `radius`, every multiplicity `< n`.
pub fn separated_roots<R: Rng>(
    rng: &mut R,
    degree: usize,
    n: usize,
    separation: f64,
    radius: f64,
) -> Vec<(Complex64, usize)> {
    loop {
        let mut roots: Vec<(Complex64, usize)> = Vec::new();
        let mut remaining = degree;
        let mut ok = true;
        while remaining > 0 {
            let mult = rng.gen_range(1..=(n - 1).min(remaining));
            let mut placed = false;
            for _ in 0..100 {
                let z = complex(rng, radius);
                if z.norm() < radius && roots.iter().all(|(w, _)| (z - w).norm() >= separation) {
                    roots.push((z, mult));
                    placed = true;
                    break;
                }
            }
            if !placed {
                ok = false;
                break;
            }
            remaining -= mult;
        }
        if ok {
            return roots;
        }
    }
}
