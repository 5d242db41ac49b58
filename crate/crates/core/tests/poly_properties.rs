use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use polyspaces::poly::{
    gcd, gcd_many, max_root_multiplicity, real_root_count, resultant, squarefree_decomposition, squarefree_part,
    sturm_count, ExtendedRational, Polynomial, Scalar,
};
use polyspaces::random;

fn q(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

fn gaussian_poly(max_degree: usize) -> impl Strategy<Value = Polynomial> {
    proptest::collection::vec((-4i64..=4, -4i64..=4), 1..=max_degree + 1)
        .prop_map(|c| Polynomial::new(c.into_iter().map(|(a, b)| Scalar::gaussian(a, b)).collect()))
}

fn nonzero_poly(max_degree: usize) -> impl Strategy<Value = Polynomial> {
    gaussian_poly(max_degree).prop_filter("nonzero", |p| !p.is_zero())
}

/// Distinct half-integer roots in [-4, 4] with multiplicities.
fn rooted() -> impl Strategy<Value = Vec<(i64, usize)>> {
    proptest::collection::btree_map(-8i64..=8, 1usize..=4, 1..=4).prop_map(|m| m.into_iter().collect())
}

fn from_half_roots(roots: &[(i64, usize)]) -> Polynomial {
    roots.iter().fold(Polynomial::one(), |acc, &(r, m)| {
        &acc * &Polynomial::linear(&Scalar::ratio(r, 2)).pow(m as u32)
    })
}

/// Exact sign-change count on the grid of odd multiples of 1/4 in [-5, 5];
/// each grid cell holds at most one half-integer root.
fn grid_root_count(f: &Polynomial) -> usize {
    let values: Vec<BigRational> = (-20..20)
        .map(|k| f.eval(&Scalar::ratio(2 * k + 1, 4)).re().clone())
        .collect();
    values.windows(2).filter(|w| (w[0] > q(0, 1)) != (w[1] > q(0, 1))).count()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn gcd_divides_both(f in nonzero_poly(6), g in nonzero_poly(6), h in nonzero_poly(3)) {
        let d = gcd(&f, &g).unwrap();
        prop_assert!(d.divides(&f) && d.divides(&g));
        let fh = &f * &h;
        let gh = &g * &h;
        let dh = gcd(&fh, &gh).unwrap();
        prop_assert!(h.monic().divides(&dh));
        prop_assert!(dh.is_monic());
    }

    #[test]
    fn squarefree_reassembles(f in nonzero_poly(5), roots in rooted()) {
        let f = &f * &from_half_roots(&roots);
        let sqf = squarefree_decomposition(&f).unwrap();
        prop_assert_eq!(sqf.reassemble(), f.monic());
        for (factor, _) in sqf.factors() {
            prop_assert!(gcd(factor, &factor.derivative(1)).unwrap().is_constant());
        }
    }

    #[test]
    fn multiplicity_of_known_roots(roots in rooted(), extra in nonzero_poly(3)) {
        let f = from_half_roots(&roots);
        let expected = roots.iter().map(|&(_, m)| m).max().unwrap();
        prop_assert_eq!(max_root_multiplicity(&f).unwrap(), expected);
        // a cofactor can only raise the maximum
        prop_assert!(max_root_multiplicity(&(&f * &extra)).unwrap() >= expected);
    }

    #[test]
    fn sturm_matches_grid_oracle(roots in rooted(), a in -10i64..=10, b in -10i64..=10) {
        // times a factor without real roots
        let f = &from_half_roots(&roots) * &"z^2 + 1".parse::<Polynomial>().unwrap();
        let g = squarefree_part(&f).unwrap();
        prop_assert_eq!(real_root_count(&f).unwrap(), roots.len());
        prop_assert_eq!(grid_root_count(&g), roots.len());
        let (lo, hi) = (a.min(b), a.max(b) + 1);
        let inside = roots.iter().filter(|&&(r, _)| 2 * lo < r && r <= 2 * hi).count();
        let counted = sturm_count(&f, &ExtendedRational::Finite(q(lo, 1)), &ExtendedRational::Finite(q(hi, 1))).unwrap();
        prop_assert_eq!(counted, inside);
        let all = sturm_count(&f, &ExtendedRational::NegInfinity, &ExtendedRational::PosInfinity).unwrap();
        prop_assert_eq!(all, roots.len());
    }

    #[test]
    fn resultant_vanishes_iff_common_factor(f in nonzero_poly(4), g in nonzero_poly(4), share in any::<bool>()) {
        let (f, g) = if share {
            let h: Polynomial = "z - 1/3".parse().unwrap();
            (&f * &h, &g * &h)
        } else {
            (f, g)
        };
        prop_assume!(f.degree() > Some(0) || g.degree() > Some(0));
        let r = resultant(&f, &g).unwrap();
        let common = !gcd(&f, &g).unwrap().is_constant();
        prop_assert_eq!(r == Scalar::int(0), common);
    }

    #[test]
    fn resultant_of_split_polynomials(a in proptest::collection::vec(-5i64..=5, 1..4), b in proptest::collection::vec(-5i64..=5, 1..4)) {
        let split = |r: &[i64]| r.iter().fold(Polynomial::one(), |acc, &x| &acc * &Polynomial::linear(&Scalar::int(x)));
        let expected: i64 = a.iter().flat_map(|x| b.iter().map(move |y| x - y)).product();
        prop_assert_eq!(resultant(&split(&a), &split(&b)).unwrap(), Scalar::int(expected));
    }

    #[test]
    fn display_parse_round_trip(f in gaussian_poly(7), den in 1i64..=6) {
        let f = f.scale(&Scalar::ratio(1, den));
        let text = f.to_string();
        prop_assert_eq!(text.parse::<Polynomial>().unwrap(), f);
    }
}

/// Yun's multiplicity against the gcd of the first `n` derivatives.
#[test]
fn multiplicity_agrees_with_derivative_gcd() {
    let mut rng = random::rng(2);
    for d in 1..=8 {
        for n in 2..=5 {
            for k in 0..1000 {
                let f = random::monic_mixed(&mut rng, d, n, k % 2 == 0);
                let ders: Vec<Polynomial> = (0..n).map(|i| f.derivative(i)).collect();
                let by_gcd = gcd_many(ders.iter()).unwrap().is_constant();
                assert_eq!(max_root_multiplicity(&f).unwrap() < n, by_gcd, "f = {f}, n = {n}");
            }
        }
    }
}

#[test]
fn non_real_input_counts_real_roots_of_conjugate_gcd() {
    // (z - 1)(z - i): one real root
    let f = &Polynomial::linear(&Scalar::int(1)) * &Polynomial::linear(&Scalar::i());
    assert_eq!(real_root_count(&f).unwrap(), 1);
}
