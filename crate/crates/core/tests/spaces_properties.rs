use proptest::prelude::*;

use polyspaces::poly::{jet, Polynomial, Scalar};
use polyspaces::random;
use polyspaces::spaces::{
    in_p_d_y_n, in_sp_d_n, stabilize, Conjugate, Domain, PolyTuple, SpaceError, SpaceSpec,
};

fn gaussian_monic() -> impl Strategy<Value = Polynomial> {
    proptest::collection::vec((-6i64..=6, -6i64..=6, 1i64..=4), 1..=6).prop_map(|c| {
        let mut coeffs: Vec<Scalar> = c
            .into_iter()
            .map(|(a, b, den)| &Scalar::gaussian(a, b) * &Scalar::ratio(1, den))
            .collect();
        coeffs.push(Scalar::int(1));
        Polynomial::new(coeffs)
    })
}

proptest! {
    #[test]
    fn exact_jets_commute_with_conjugation(f in gaussian_monic(), a in -9i64..=9, b in -9i64..=9, n in 1usize..=5) {
        let z = &Scalar::gaussian(a, b) * &Scalar::ratio(1, 3);
        prop_assert_eq!(jet(&f.theta(), &z.theta(), n), jet(&f, &z, n).theta());
        prop_assert_eq!(f.theta().theta(), f);
    }

    #[test]
    fn tuple_conjugation_is_an_involution(f in gaussian_monic(), g in gaussian_monic()) {
        let t = PolyTuple(vec![f, g]);
        prop_assert_eq!(t.theta().theta(), t);
    }
}

#[test]
fn filtration_is_increasing() {
    let mut rng = random::rng(11);
    for k in 0..1000 {
        let (d, n) = (1 + k % 7, 2 + k % 4);
        let f = random::monic_mixed(&mut rng, d, n, k % 3 == 0);
        if in_sp_d_n(&f, n).member {
            assert!(in_sp_d_n(&f, n + 1).member, "{f}");
        }
    }
}

#[test]
fn stabilization_preserves_membership() {
    let mut rng = random::rng(12);
    let mut applied = 0;
    for k in 0..400 {
        let (d, n) = (1 + k % 6, 2 + k % 3);
        let f = random::monic_structured(&mut rng, d, n - 1, k % 2 == 0);
        if !in_sp_d_n(&f, n).member {
            continue;
        }
        match stabilize(&f, n) {
            Ok(g) => {
                applied += 1;
                assert_eq!(g.degree(), Some(d + 1));
                assert!(in_sp_d_n(&g, n).member, "{f} -> {g}");
            }
            Err(SpaceError::PreconditionRootOutsideDisk { .. }) => {}
            Err(e) => panic!("{f}: {e}"),
        }
    }
    assert!(applied > 100, "only {applied} stabilizations");
}

#[test]
fn complex_restriction_implies_real_restriction() {
    let mut rng = random::rng(13);
    for k in 0..600 {
        let (d, n) = (1 + k % 6, 2 + k % 3);
        let f = random::monic_mixed(&mut rng, d, n, false);
        let cc = SpaceSpec::restricted_roots(d, n, Domain::Real, Domain::Complex).unwrap();
        let rr = SpaceSpec::restricted_roots(d, n, Domain::Real, Domain::Real).unwrap();
        if in_p_d_y_n(&f, &cc).unwrap().member {
            assert!(in_p_d_y_n(&f, &rr).unwrap().member, "{f}");
        }
        // for real coefficients the complex version is the symmetric product
        assert_eq!(in_p_d_y_n(&f, &cc).unwrap().member, in_sp_d_n(&f, n).member);
    }
}
