use num_traits::Zero;

use super::{Certificate, Domain, PolyTuple, SpaceError, SpaceSpec, Verdict};
use crate::poly::{gcd_many, real_root_count, squarefree_decomposition, Polynomial, Scalar};

fn monic_check(f: &Polynomial) -> Option<Certificate> {
    match f.leading() {
        None => Some(Certificate::ZeroPolynomial),
        Some(lc) if !num_traits::One::is_one(lc) => Some(Certificate::NotMonic { leading: lc.clone() }),
        Some(_) => None,
    }
}

/// Runs `inner` only when `f` has degree exactly `d`.
pub(crate) fn with_degree(f: &Polynomial, d: usize, inner: impl FnOnce() -> Verdict) -> Verdict {
    if f.is_zero() {
        return Verdict::no(Certificate::ZeroPolynomial);
    }
    if f.degree() != Some(d) {
        return Verdict::no(Certificate::WrongDegree {
            expected: d,
            found: f.degree(),
        });
    }
    inner()
}

/// `f` monic with every root of multiplicity `< n`. The certificate names the
/// first squarefree factor whose multiplicity reaches `n`.
pub fn in_sp_d_n(f: &Polynomial, n: usize) -> Verdict {
    if let Some(c) = monic_check(f) {
        return Verdict::no(c);
    }
    let sqf = squarefree_decomposition(f).expect("nonzero");
    let offending = sqf.at_least(n).next().cloned();
    match offending {
        Some((factor, multiplicity)) => Verdict::no(Certificate::RootMultiplicity { factor, multiplicity }),
        None => Verdict::yes(),
    }
}

/// Multiplicity condition for roots lying in `y`.
fn no_n_fold_roots_in(f: &Polynomial, n: usize, y: Domain) -> Option<Certificate> {
    let sqf = squarefree_decomposition(f).expect("nonzero");
    for (factor, m) in sqf.at_least(n) {
        match y {
            Domain::Complex => {
                return Some(Certificate::RootMultiplicity {
                    factor: factor.clone(),
                    multiplicity: *m,
                })
            }
            Domain::Real => {
                let real_roots = real_root_count(factor).expect("nonzero");
                if real_roots > 0 {
                    return Some(Certificate::RealRootMultiplicity {
                        factor: factor.clone(),
                        multiplicity: *m,
                        real_roots,
                    });
                }
            }
        }
    }
    None
}

/// Monic degree-d `f` with `f(X) ⊆ X` and no n-fold roots in `Y`.
///
/// For `X = R` the first condition is "all coefficients real", which for monic
/// polynomials is equivalent to preserving the real line.
pub fn in_p_d_y_n(f: &Polynomial, spec: &SpaceSpec) -> Result<Verdict, SpaceError> {
    let SpaceSpec::RestrictedRoots { d, n, x, y } = *spec else {
        return Err(SpaceError::WrongArity);
    };
    Ok(with_degree(f, d, || {
        if let Some(c) = monic_check(f) {
            return Verdict::no(c);
        }
        if x == Domain::Real && !f.is_real() {
            return Verdict::no(Certificate::NonRealCoefficients);
        }
        match no_n_fold_roots_in(f, n, y) {
            Some(c) => Verdict::no(c),
            None => Verdict::yes(),
        }
    }))
}

/// Membership in the coprime-tuple spaces.
pub fn in_q(tuple: &PolyTuple, spec: &SpaceSpec) -> Result<Verdict, SpaceError> {
    let (d, n, m, x, y) = match *spec {
        SpaceSpec::Coprime { d, n } => (d, n, None, Domain::Complex, Domain::Complex),
        SpaceSpec::BoundedCoprime { d, n, m } => (d, n, Some(m), Domain::Complex, Domain::Complex),
        SpaceSpec::RestrictedCoprime { d, n, x, y } => (d, n, None, x, y),
        _ => return Err(SpaceError::WrongArity),
    };
    if tuple.len() != n {
        return Ok(Verdict::no(Certificate::TupleLength {
            expected: n,
            found: tuple.len(),
        }));
    }
    for (index, p) in tuple.iter().enumerate() {
        let component = |reason| {
            Verdict::no(Certificate::Component {
                index,
                reason: Box::new(reason),
            })
        };
        let v = with_degree(p, d, || match monic_check(p) {
            Some(c) => Verdict::no(c),
            None => Verdict::yes(),
        });
        if let Some(c) = v.certificate {
            return Ok(component(c));
        }
        if x == Domain::Real && !p.is_real() {
            return Ok(component(Certificate::NonRealCoefficients));
        }
        if let Some(m) = m {
            if let Some(c) = in_sp_d_n(p, m).certificate {
                return Ok(component(c));
            }
        }
    }
    let g = gcd_many(tuple.iter())?;
    if g.is_constant() {
        return Ok(Verdict::yes());
    }
    Ok(match y {
        Domain::Complex => Verdict::no(Certificate::CommonRoot { gcd: g }),
        Domain::Real => match real_root_count(&g)? {
            0 => Verdict::yes(),
            real_roots => Verdict::no(Certificate::CommonRealRoot { gcd: g, real_roots }),
        },
    })
}

/// Tuples of nonzero vectors of a common length whose first coordinates do
/// not all vanish.
pub fn in_a_n_m(vectors: &[Vec<Scalar>]) -> Result<bool, SpaceError> {
    let Some(m) = vectors.first().map(Vec::len) else {
        return Err(SpaceError::RaggedVectors);
    };
    if m == 0 || vectors.iter().any(|v| v.len() != m) {
        return Err(SpaceError::RaggedVectors);
    }
    let all_nonzero = vectors.iter().all(|v| v.iter().any(|c| !c.is_zero()));
    let some_first = vectors.iter().any(|v| !v[0].is_zero());
    Ok(all_nonzero && some_first)
}
