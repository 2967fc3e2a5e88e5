//! Exact rational scalars and the `"p/q"` text encoding.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;

/// Coordinate vector over the rationals.
pub type RVec = Vec<Rational>;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn zeros(n: usize) -> RVec {
    vec![Rational::zero(); n]
}

/// Standard basis vector `e_i` of length `n`.
pub fn unit(n: usize, i: usize) -> RVec {
    let mut v = zeros(n);
    v[i] = Rational::one();
    v
}

pub fn from_ints(xs: &[i64]) -> RVec {
    xs.iter().map(|&x| int(x)).collect()
}

pub fn is_zero_vec(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn add(a: &[Rational], b: &[Rational]) -> RVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Rational], b: &[Rational]) -> RVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(c: &Rational, a: &[Rational]) -> RVec {
    a.iter().map(|x| c * x).collect()
}

pub fn neg(a: &[Rational]) -> RVec {
    a.iter().map(|x| -x).collect()
}

/// `acc += c * a`
pub fn axpy(acc: &mut [Rational], c: &Rational, a: &[Rational]) {
    if c.is_zero() {
        return;
    }
    for (x, y) in acc.iter_mut().zip(a) {
        if !y.is_zero() {
            *x += c * y;
        }
    }
}

pub fn to_f64(q: &Rational) -> f64 {
    match (q.numer().to_f64(), q.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            // Huge numerators or denominators: shift both into range first.
            let bits = q.numer().bits().max(q.denom().bits()) as i64 - 900;
            let shift = bits.max(0) as usize;
            let n = (q.numer() >> shift).to_f64().unwrap_or(0.0);
            let d = (q.denom() >> shift).to_f64().unwrap_or(0.0);
            if d == 0.0 {
                if q.is_negative() {
                    f64::NEG_INFINITY
                } else {
                    f64::INFINITY
                }
            } else {
                n / d
            }
        }
    }
}

/// Renders `p/q` with a positive denominator; integers keep the `/1`.
pub fn format(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Parses `"p/q"`, `"p"`, or a plain integer literal.
pub fn parse(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(Rational::new(p, q))
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}
