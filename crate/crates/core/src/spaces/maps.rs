use num_bigint::BigInt;
use num_rational::BigRational;

use super::{in_sp_d_n, PolyTuple, SpaceError};
use crate::poly::{cauchy_bound_within, jet, roots_in_open_disk, Polynomial, Scalar};

/// The fixed root adjoined by [`stabilize`] when passing from degree `d` to
/// `d + 1`: the rational point `d + 1/2`, outside the disk of radius `d` and
/// inside the disk of radius `d + 1`.
pub fn stabilization_point(d: usize) -> Scalar {
    Scalar::real(BigRational::new(BigInt::from(2 * d + 1), BigInt::from(2)))
}

/// Stabilization `SP^d_n -> SP^{d+1}_n`: multiplies by `z - (d + 1/2)`.
///
/// Requires `f` in `SP^d_n` with every root in the open disk of radius
/// `d = deg f`. The Cauchy bound decides most inputs; otherwise the exact
/// Schur–Cohn test does.
pub fn stabilize(f: &Polynomial, n: usize) -> Result<Polynomial, SpaceError> {
    let verdict = in_sp_d_n(f, n);
    if let Some(c) = verdict.certificate {
        return Err(SpaceError::NotMember(Box::new(c)));
    }
    let d = f.degree().unwrap_or(0);
    if d == 0 {
        return Err(SpaceError::InvalidParameter("stabilization needs degree at least 1".into()));
    }
    let radius = BigRational::from_integer(BigInt::from(d));
    if !cauchy_bound_within(f, &radius) && !roots_in_open_disk(f, &radius)? {
        return Err(SpaceError::PreconditionRootOutsideDisk { radius: d });
    }
    Ok(f * &Polynomial::linear(&stabilization_point(d)))
}

/// `f -> (f, f + f', ..., f + f^(n-1))`, an n-tuple of monic degree-d
/// polynomials.
pub fn jet_tuple_t(f: &Polynomial, n: usize) -> Result<PolyTuple, SpaceError> {
    if !f.is_monic() || f.degree() == Some(0) {
        return Err(SpaceError::NotMonicPositive);
    }
    let mut out = Vec::with_capacity(n);
    out.push(f.clone());
    for k in 1..n {
        out.push(f + &f.derivative(k));
    }
    Ok(PolyTuple(out))
}

/// Jets at the origin of every entry, to order `m`: the map into the
/// arrangement complement `A_{n,m}`.
pub fn jet0(tuple: &PolyTuple, m: usize) -> Vec<Vec<Scalar>> {
    let origin = Scalar::default();
    tuple.iter().map(|p| jet(p, &origin, m)).collect()
}

/// `(a_0, a_1, ..., a_{n-1}) -> (a_0, a_1, 2! a_2, ..., (n-1)! a_{n-1})`
pub fn coefficient_rescale_map(v: &[Scalar]) -> Vec<Scalar> {
    let mut factorial = BigInt::from(1);
    v.iter()
        .enumerate()
        .map(|(i, a)| {
            if i > 1 {
                factorial *= i;
            }
            a * &Scalar::real(BigRational::from_integer(factorial.clone()))
        })
        .collect()
}

/// The involution induced by complex conjugation.
pub trait Conjugate {
    fn theta(&self) -> Self;
}

impl Conjugate for Scalar {
    fn theta(&self) -> Self {
        self.conj()
    }
}

impl Conjugate for Polynomial {
    fn theta(&self) -> Self {
        self.conj()
    }
}

impl Conjugate for PolyTuple {
    fn theta(&self) -> Self {
        PolyTuple(self.iter().map(Polynomial::conj).collect())
    }
}

impl<T: Conjugate> Conjugate for Vec<T> {
    fn theta(&self) -> Self {
        self.iter().map(Conjugate::theta).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::gcd_many;
    use crate::spaces::{Certificate, SpaceSpec};

    fn p(s: &str) -> Polynomial {
        s.parse().unwrap()
    }

    #[test]
    fn stabilize_examples() {
        assert_eq!(stabilize(&p("z"), 2).unwrap(), &p("z") * &p("z - 3/2"));
        assert_eq!(stabilize(&p("z^2 - 1/4"), 2).unwrap(), &p("z^2 - 1/4") * &p("z - 5/2"));
        let err = stabilize(&p("z - 1").pow(2), 2).unwrap_err();
        assert!(matches!(err, SpaceError::NotMember(c) if matches!(*c, Certificate::RootMultiplicity { .. })));
    }

    #[test]
    fn stabilize_needs_schur_cohn_fallback() {
        // roots 0, 0, 2.5 inside radius 3, but Cauchy bound 1 + 2.5 > 3
        let f = &p("z").pow(2) * &p("z - 5/2");
        assert!(!cauchy_bound_within(&f, &BigRational::from_integer(3.into())));
        let g = stabilize(&f, 3).unwrap();
        assert_eq!(g.degree(), Some(4));
        // a root at 3 sits on the boundary
        let h = &p("z").pow(2) * &p("z - 3");
        assert!(matches!(stabilize(&h, 3), Err(SpaceError::PreconditionRootOutsideDisk { radius: 3 })));
    }

    #[test]
    fn jet_tuple_examples() {
        let t = jet_tuple_t(&p("z^2 - 1"), 2).unwrap();
        assert_eq!(t.0, vec![p("z^2 - 1"), p("z^2 + 2*z - 1")]);
        assert!(gcd_many(t.iter()).unwrap().is_constant());

        let t = jet_tuple_t(&p("z^2"), 2).unwrap();
        assert_eq!(gcd_many(t.iter()).unwrap(), p("z"));

        let t = jet_tuple_t(&p("z"), 3).unwrap();
        assert_eq!(t.0, vec![p("z"), p("z + 1"), p("z")]);
        assert!(gcd_many(t.iter()).unwrap().is_constant());
        assert!(in_q_coprime(&t, 1, 3));

        assert!(jet_tuple_t(&p("2*z"), 2).is_err());
    }

    fn in_q_coprime(t: &PolyTuple, d: usize, n: usize) -> bool {
        crate::spaces::in_q(t, &SpaceSpec::coprime(d, n).unwrap()).unwrap().member
    }

    #[test]
    fn theta_examples() {
        let f = Polynomial::new(vec![Scalar::default(), Scalar::i(), Scalar::int(1)]);
        let g = Polynomial::new(vec![Scalar::default(), -Scalar::i(), Scalar::int(1)]);
        assert_eq!(f.theta(), g);
        assert_eq!(f.theta().theta(), f);
        assert_eq!(p("z^2 - 3").theta(), p("z^2 - 3"));
    }

    #[test]
    fn rescale_examples() {
        let ones = vec![Scalar::int(1); 3];
        assert_eq!(coefficient_rescale_map(&ones), vec![Scalar::int(1), Scalar::int(1), Scalar::int(2)]);
        let e3 = vec![Scalar::int(0), Scalar::int(0), Scalar::int(0), Scalar::int(1)];
        assert_eq!(coefficient_rescale_map(&e3)[3], Scalar::int(6));
        let zero = vec![Scalar::int(0); 4];
        assert_eq!(coefficient_rescale_map(&zero), zero);
    }

    #[test]
    fn jet0_lands_in_arrangement() {
        // z^2 - z and z^2 + 1 with m = 2: coprime, multiplicities < 2
        let t: PolyTuple = "z^2 - z; z^2 + 1".parse().unwrap();
        let v = jet0(&t, 2);
        assert_eq!(v[0], vec![Scalar::int(0), Scalar::int(-1)]);
        assert!(crate::spaces::in_a_n_m(&v).unwrap());
    }

    // Jets at 0 of z^k equal the rescaled coefficient vector of z^k.
    #[test]
    fn rescale_matches_jet_at_origin() {
        let f = p("1 + 2*z + 3*z^2 + 4*z^3");
        let j = jet(&f, &Scalar::default(), 4);
        assert_eq!(j, coefficient_rescale_map(f.coeffs()));
    }
}
