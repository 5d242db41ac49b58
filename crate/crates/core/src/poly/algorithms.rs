use std::cmp::Ordering;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{PolyError, Polynomial, Scalar};

/// Monic gcd over Q(i).
pub fn gcd(f: &Polynomial, g: &Polynomial) -> Result<Polynomial, PolyError> {
    if f.is_zero() && g.is_zero() {
        return Err(PolyError::BothZero);
    }
    let (mut a, mut b) = (f.monic(), g.monic());
    if !a.is_zero() && !b.is_zero() && coprime_mod_p(&a, &b) {
        return Ok(Polynomial::one());
    }
    while !b.is_zero() {
        let r = a.rem(&b).monic();
        a = b;
        b = r;
    }
    Ok(a)
}

const MODULUS: u64 = 1_000_000_009;

fn pow_mod(mut b: u64, mut e: u64) -> u64 {
    let mut acc = 1u64;
    b %= MODULUS;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b);
        }
        b = mul_mod(b, b);
        e >>= 1;
    }
    acc
}

fn mul_mod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % MODULUS as u128) as u64
}

fn inv_mod(a: u64) -> u64 {
    pow_mod(a, MODULUS - 2)
}

/// A square root of -1 modulo the prime `MODULUS`, which is 1 mod 4.
fn sqrt_minus_one() -> u64 {
    static ROOT: std::sync::OnceLock<u64> = std::sync::OnceLock::new();
    *ROOT.get_or_init(|| {
        (2..)
            .map(|c| pow_mod(c, (MODULUS - 1) / 4))
            .find(|&s| mul_mod(s, s) == MODULUS - 1)
            .expect("a nonresidue exists")
    })
}

fn rational_mod(q: &BigRational) -> Option<u64> {
    let m = num_bigint::BigInt::from(MODULUS);
    let reduce = |x: &num_bigint::BigInt| -> u64 {
        let r = x % &m;
        let r = if r.is_negative() { r + &m } else { r };
        r.try_into().expect("reduced below modulus")
    };
    let den = reduce(q.denom());
    (den != 0).then(|| mul_mod(reduce(q.numer()), inv_mod(den)))
}

fn reduce_mod(f: &Polynomial, s: u64) -> Option<Vec<u64>> {
    f.coeffs()
        .iter()
        .map(|c| Some((rational_mod(c.re())? + mul_mod(rational_mod(c.im())?, s)) % MODULUS))
        .collect()
}

fn degree_of_gcd_mod(mut a: Vec<u64>, mut b: Vec<u64>) -> usize {
    let trim = |v: &mut Vec<u64>| {
        while v.last() == Some(&0) {
            v.pop();
        }
    };
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let lead_inv = inv_mod(*b.last().unwrap());
        while a.len() >= b.len() {
            let c = mul_mod(*a.last().unwrap(), lead_inv);
            let shift = a.len() - b.len();
            for (j, bj) in b.iter().enumerate() {
                a[shift + j] = (a[shift + j] + MODULUS - mul_mod(c, *bj)) % MODULUS;
            }
            trim(&mut a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

/// Sufficient test for coprimality of two monic polynomials: reduce modulo a
/// prime `p = 1 mod 4`, sending `i` to a square root of -1. The monic gcd
/// over Q(i) has coefficients integral at `p` and its reduction divides both
/// reductions, so a constant gcd mod `p` forces a constant gcd.
fn coprime_mod_p(a: &Polynomial, b: &Polynomial) -> bool {
    let s = sqrt_minus_one();
    match (reduce_mod(a, s), reduce_mod(b, s)) {
        (Some(x), Some(y)) => degree_of_gcd_mod(x, y) == 0,
        _ => false,
    }
}

/// Monic gcd of a list; errors when every entry is zero or the list is empty.
pub fn gcd_many<'a>(polys: impl IntoIterator<Item = &'a Polynomial>) -> Result<Polynomial, PolyError> {
    let mut acc = Polynomial::zero();
    for p in polys {
        if p.is_zero() {
            continue;
        }
        acc = if acc.is_zero() { p.monic() } else { gcd(&acc, p)? };
        if acc.is_constant() {
            break;
        }
    }
    if acc.is_zero() {
        Err(PolyError::BothZero)
    } else {
        Ok(acc)
    }
}

/// Squarefree factors with their multiplicities, multiplicities strictly
/// increasing, every factor monic of positive degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquarefreeDecomposition {
    factors: Vec<(Polynomial, usize)>,
}

impl SquarefreeDecomposition {
    pub fn factors(&self) -> &[(Polynomial, usize)] {
        &self.factors
    }

    pub fn max_multiplicity(&self) -> usize {
        self.factors.last().map_or(0, |(_, m)| *m)
    }

    /// Product of `factor^multiplicity`, monic.
    pub fn reassemble(&self) -> Polynomial {
        self.factors
            .iter()
            .fold(Polynomial::one(), |acc, (f, m)| &acc * &f.pow(*m as u32))
    }

    /// Factors whose multiplicity is at least `bound`.
    pub fn at_least(&self, bound: usize) -> impl Iterator<Item = &(Polynomial, usize)> {
        self.factors.iter().filter(move |(_, m)| *m >= bound)
    }
}

/// Yun's squarefree decomposition (characteristic zero).
pub fn squarefree_decomposition(f: &Polynomial) -> Result<SquarefreeDecomposition, PolyError> {
    if f.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let f = f.monic();
    let mut factors = Vec::new();
    if f.is_constant() {
        return Ok(SquarefreeDecomposition { factors });
    }
    let df = f.derivative(1);
    let a0 = gcd(&f, &df)?;
    let mut b = exact(&f, &a0);
    let mut c = exact(&df, &a0);
    let mut d = &c - &b.derivative(1);
    let mut i = 1;
    while !b.is_constant() {
        let a = gcd(&b, &d)?;
        b = exact(&b, &a);
        c = exact(&d, &a);
        d = &c - &b.derivative(1);
        if !a.is_constant() {
            factors.push((a, i));
        }
        i += 1;
    }
    Ok(SquarefreeDecomposition { factors })
}

fn exact(f: &Polynomial, g: &Polynomial) -> Polynomial {
    f.exact_div(g).expect("gcd divides its arguments")
}

/// Largest root multiplicity; zero for nonzero constants.
pub fn max_root_multiplicity(f: &Polynomial) -> Result<usize, PolyError> {
    Ok(squarefree_decomposition(f)?.max_multiplicity())
}

/// `f / gcd(f, f')`, monic.
pub fn squarefree_part(f: &Polynomial) -> Result<Polynomial, PolyError> {
    if f.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    if f.is_constant() {
        return Ok(Polynomial::one());
    }
    let g = gcd(f, &f.derivative(1))?;
    Ok(exact(&f.monic(), &g))
}

/// A point of the extended real line with rational finite part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExtendedRational {
    NegInfinity,
    Finite(BigRational),
    PosInfinity,
}

impl ExtendedRational {
    pub fn int(v: i64) -> Self {
        ExtendedRational::Finite(BigRational::from_integer(v.into()))
    }
}

impl PartialOrd for ExtendedRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        use ExtendedRational::*;
        Some(match (self, other) {
            (NegInfinity, NegInfinity) | (PosInfinity, PosInfinity) => Ordering::Equal,
            (NegInfinity, _) | (_, PosInfinity) => Ordering::Less,
            (_, NegInfinity) | (PosInfinity, _) => Ordering::Greater,
            (Finite(a), Finite(b)) => a.cmp(b),
        })
    }
}

/// The real polynomial whose real roots are exactly the real roots of `f`:
/// `f` itself when real, else `gcd(f, conj f)` (which is real once monic).
pub fn real_root_carrier(f: &Polynomial) -> Result<Polynomial, PolyError> {
    if f.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    if f.is_real() {
        return Ok(f.clone());
    }
    let g = gcd(f, &f.conj())?;
    debug_assert!(g.is_real());
    Ok(g)
}

fn real_parts(f: &Polynomial) -> Vec<BigRational> {
    f.coeffs().iter().map(|c| c.re().clone()).collect()
}

fn eval_real(coeffs: &[BigRational], x: &BigRational) -> BigRational {
    coeffs
        .iter()
        .rev()
        .fold(BigRational::zero(), |acc, c| acc * x + c)
}

fn sign_at(coeffs: &[BigRational], at: &ExtendedRational) -> i8 {
    let Some(lead) = coeffs.last() else { return 0 };
    let s = |v: &BigRational| match v.cmp(&BigRational::zero()) {
        Ordering::Less => -1,
        Ordering::Equal => 0,
        Ordering::Greater => 1,
    };
    match at {
        ExtendedRational::PosInfinity => s(lead),
        ExtendedRational::NegInfinity => {
            if (coeffs.len() - 1).is_multiple_of(2) {
                s(lead)
            } else {
                -s(lead)
            }
        }
        ExtendedRational::Finite(x) => s(&eval_real(coeffs, x)),
    }
}

/// Sturm chain of the squarefree part of a real polynomial.
pub fn sturm_sequence(f: &Polynomial) -> Result<Vec<Polynomial>, PolyError> {
    let carrier = real_root_carrier(f)?;
    let s = squarefree_part(&carrier)?;
    let mut seq = vec![s.clone(), s.derivative(1)];
    loop {
        let n = seq.len();
        if seq[n - 1].is_zero() {
            seq.pop();
            break;
        }
        let r = seq[n - 2].rem(&seq[n - 1]);
        if r.is_zero() {
            break;
        }
        seq.push(-&r);
    }
    Ok(seq)
}

fn variations(seq: &[Vec<BigRational>], at: &ExtendedRational) -> usize {
    let signs: Vec<i8> = seq
        .iter()
        .map(|p| sign_at(p, at))
        .filter(|&s| s != 0)
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Number of distinct real roots in `(a, b]`. Polynomials with non-real
/// coefficients are first reduced to `gcd(f, conj f)`.
pub fn sturm_count(
    f: &Polynomial,
    a: &ExtendedRational,
    b: &ExtendedRational,
) -> Result<usize, PolyError> {
    if f.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    if a >= b {
        return Err(PolyError::EmptyInterval);
    }
    let seq: Vec<Vec<BigRational>> = sturm_sequence(f)?.iter().map(real_parts).collect();
    let (va, vb) = (variations(&seq, a), variations(&seq, b));
    Ok(va.saturating_sub(vb))
}

/// Number of distinct real roots.
pub fn real_root_count(f: &Polynomial) -> Result<usize, PolyError> {
    sturm_count(f, &ExtendedRational::NegInfinity, &ExtendedRational::PosInfinity)
}

/// Resultant as the determinant of the Sylvester matrix.
pub fn resultant(f: &Polynomial, g: &Polynomial) -> Result<Scalar, PolyError> {
    let (m, n) = match (f.degree(), g.degree()) {
        (Some(m), Some(n)) => (m, n),
        _ => return Err(PolyError::ZeroPolynomial),
    };
    let size = m + n;
    if size == 0 {
        return Ok(Scalar::one());
    }
    let mut rows: Vec<Vec<Scalar>> = Vec::with_capacity(size);
    for shift in 0..n {
        let mut row = vec![Scalar::zero(); size];
        for k in 0..=m {
            row[shift + k] = f.coeff(m - k);
        }
        rows.push(row);
    }
    for shift in 0..m {
        let mut row = vec![Scalar::zero(); size];
        for k in 0..=n {
            row[shift + k] = g.coeff(n - k);
        }
        rows.push(row);
    }
    Ok(determinant(rows))
}

/// Gaussian elimination over Q(i).
pub fn determinant(mut a: Vec<Vec<Scalar>>) -> Scalar {
    let n = a.len();
    let mut det = Scalar::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return Scalar::zero();
        };
        if p != k {
            a.swap(p, k);
            det = -det;
        }
        let pivot = a[k][k].clone();
        det = &det * &pivot;
        let inv = pivot.inv();
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let factor = &a[i][k] * &inv;
            let pivot_row = a[k].clone();
            for (x, p) in a[i][k..].iter_mut().zip(&pivot_row[k..]) {
                *x -= &(&factor * p);
            }
        }
    }
    det
}

/// `(f(z0), f'(z0), ..., f^(n-1)(z0))`
pub fn jet(f: &Polynomial, z0: &Scalar, n: usize) -> Vec<Scalar> {
    let mut out = Vec::with_capacity(n);
    let mut d = f.clone();
    for _ in 0..n {
        out.push(d.eval(z0));
        d = d.derivative(1);
    }
    out
}

/// Exact test that every root of `f` lies in the open disk `|z| < radius`,
/// by the Schur–Cohn recursion on `f(radius * z)`.
pub fn roots_in_open_disk(f: &Polynomial, radius: &BigRational) -> Result<bool, PolyError> {
    if f.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    if !radius.is_positive() {
        return Ok(f.is_constant());
    }
    let mut p = f.rescale_argument(&Scalar::real(radius.clone()));
    while let Some(deg) = p.degree() {
        if deg == 0 {
            return Ok(true);
        }
        let a0 = p.coeff(0);
        let ad = p.coeff(deg);
        if a0.norm_sqr() >= ad.norm_sqr() {
            return Ok(false);
        }
        // reciprocal-conjugate polynomial z^d conj(p(1/conj z))
        let reversed = Polynomial::new(p.coeffs().iter().rev().map(Scalar::conj).collect());
        let t = &p.scale(&ad.conj()) - &reversed.scale(&a0);
        // t(0) = 0; drop the factor z
        let shifted = Polynomial::new(t.coeffs().iter().skip(1).cloned().collect());
        p = shifted;
    }
    Ok(true)
}

/// `1 + max |a_i / a_d|` squared is compared against `radius^2`: true when the
/// Cauchy bound alone proves every root lies in `|z| < radius`.
pub fn cauchy_bound_within(f: &Polynomial, radius: &BigRational) -> bool {
    let Some(deg) = f.degree() else { return false };
    if deg == 0 {
        return true;
    }
    let m = f.monic();
    let max_sq = m.coeffs()[..deg]
        .iter()
        .map(Scalar::norm_sqr)
        .max()
        .unwrap_or_else(BigRational::zero);
    // 1 + sqrt(max_sq) <= radius  <=>  radius >= 1 and max_sq <= (radius - 1)^2
    let slack = radius - BigRational::one();
    !slack.is_negative() && max_sq <= &slack * &slack
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(c: &[i64]) -> Polynomial {
        Polynomial::from_ints(c)
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd(&ints(&[-1, 0, 1]), &ints(&[-1, 1])).unwrap(), ints(&[-1, 1]));
        assert_eq!(gcd(&ints(&[1, 0, 1]), &ints(&[-1, 0, 1])).unwrap(), ints(&[1]));
        assert_eq!(gcd(&ints(&[0, -1, 0, 1]), &ints(&[1, -2, 1])).unwrap(), ints(&[-1, 1]));
        assert_eq!(gcd(&Polynomial::zero(), &Polynomial::zero()), Err(PolyError::BothZero));
        assert_eq!(gcd(&Polynomial::zero(), &ints(&[2, 4])).unwrap(), ints(&[1, 2]).monic());
    }

    #[test]
    fn yun_examples() {
        let f = ints(&[1, 0, 1]);
        let sq = squarefree_decomposition(&f).unwrap();
        assert_eq!(sq.factors(), &[(f.clone(), 1)]);

        let z = ints(&[0, 1]);
        let zm1 = ints(&[-1, 1]);
        let g = &z.pow(2) * &zm1.pow(5);
        let sq = squarefree_decomposition(&g).unwrap();
        assert_eq!(sq.factors(), &[(z, 2), (zm1.clone(), 5)]);

        let h = zm1.pow(3);
        assert_eq!(squarefree_decomposition(&h).unwrap().factors(), &[(zm1, 3)]);
        assert_eq!(squarefree_decomposition(&Polynomial::zero()), Err(PolyError::ZeroPolynomial));
    }

    #[test]
    fn max_multiplicity_examples() {
        assert_eq!(max_root_multiplicity(&ints(&[1, 0, 1])).unwrap(), 1);
        let f = &ints(&[-1, 1]).pow(3) * &ints(&[1, 0, 1]);
        assert_eq!(max_root_multiplicity(&f).unwrap(), 3);
        assert_eq!(max_root_multiplicity(&ints(&[7])).unwrap(), 0);
    }

    #[test]
    fn sturm_examples() {
        use ExtendedRational::*;
        assert_eq!(sturm_count(&ints(&[1, 0, 1]), &NegInfinity, &PosInfinity).unwrap(), 0);
        assert_eq!(
            sturm_count(&ints(&[-1, 0, 1]), &ExtendedRational::int(-2), &ExtendedRational::int(2)).unwrap(),
            2
        );
        assert_eq!(
            sturm_count(&ints(&[1, -2, 1]), &ExtendedRational::int(0), &ExtendedRational::int(2)).unwrap(),
            1
        );
        // half-open: root at the right endpoint counts, at the left does not
        let f = ints(&[-1, 1]);
        assert_eq!(sturm_count(&f, &ExtendedRational::int(0), &ExtendedRational::int(1)).unwrap(), 1);
        assert_eq!(sturm_count(&f, &ExtendedRational::int(1), &ExtendedRational::int(2)).unwrap(), 0);
        assert_eq!(
            sturm_count(&f, &ExtendedRational::int(2), &ExtendedRational::int(1)),
            Err(PolyError::EmptyInterval)
        );
    }

    #[test]
    fn sturm_on_gaussian_input() {
        // (z - 2)(z - i): single real root at 2
        let f = Polynomial::from_roots(&[Scalar::int(2), Scalar::i()]);
        assert!(!f.is_real());
        assert_eq!(real_root_count(&f).unwrap(), 1);
    }

    #[test]
    fn resultant_examples() {
        assert_eq!(resultant(&ints(&[-1, 1]), &ints(&[1, 1])).unwrap(), Scalar::int(2));
        assert_eq!(resultant(&ints(&[-1, 1]), &ints(&[-1, 0, 1])).unwrap(), Scalar::zero());
        assert_eq!(resultant(&ints(&[0, 1]), &ints(&[3, 1])).unwrap(), Scalar::int(3));
        assert_eq!(resultant(&ints(&[3]), &ints(&[1, 0, 1])).unwrap(), Scalar::int(9));
    }

    #[test]
    fn jet_examples() {
        assert_eq!(
            jet(&ints(&[0, 0, 1]), &Scalar::zero(), 3),
            vec![Scalar::zero(), Scalar::zero(), Scalar::int(2)]
        );
        // z^2 + i z at z = i: f = -2, f' = 3i
        let f = Polynomial::new(vec![Scalar::zero(), Scalar::i(), Scalar::one()]);
        assert_eq!(jet(&f, &Scalar::i(), 2), vec![Scalar::int(-2), Scalar::gaussian(0, 3)]);
        assert_eq!(jet(&ints(&[1]), &Scalar::gaussian(5, 7), 2), vec![Scalar::one(), Scalar::zero()]);
    }

    #[test]
    fn disk_tests() {
        let r = |v: i64| BigRational::from_integer(v.into());
        let f = ints(&[-1, 0, 1]);
        assert!(roots_in_open_disk(&f, &r(2)).unwrap());
        assert!(!roots_in_open_disk(&f, &r(1)).unwrap());
        // root 3i outside radius 2, inside radius 4
        let g = Polynomial::from_roots(&[Scalar::gaussian(0, 3), Scalar::ratio(1, 2)]);
        assert!(!roots_in_open_disk(&g, &r(2)).unwrap());
        assert!(roots_in_open_disk(&g, &r(4)).unwrap());
        assert!(cauchy_bound_within(&ints(&[0, 1]), &r(1)));
        assert!(cauchy_bound_within(&ints(&[-1, 0, 1]), &r(2)));
        assert!(!cauchy_bound_within(&ints(&[-4, 0, 1]), &r(2)));
    }
}
