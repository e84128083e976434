use core::fmt;

use rand_core::RngCore;

use crate::error::FieldError;

/// The ground field every computation runs over.
///
/// The theory wants an algebraically closed field; exact computation needs a
/// field whose elements can be stored and compared. Either the rationals or a
/// prime field `F_p` with `p >= 5` stands in for it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rationals,
    Prime(u64),
}

/// Characteristic used when nothing else is requested.
pub const DEFAULT_PRIME: u64 = 101;

/// Largest admissible prime; products of two residues must fit in a `u64`.
pub const MAX_PRIME: u64 = (1 << 31) - 1;

/// Half-width of the integer range used when sampling random rationals.
pub const RATIONAL_SAMPLE_RADIUS: i64 = 9;

impl Default for Field {
    fn default() -> Self {
        Field::Prime(DEFAULT_PRIME)
    }
}

/// An exact field element.
///
/// Rationals are kept in lowest terms with a positive denominator. Elements
/// of `F_p` use the canonical residue in `[0, p)` with denominator 1, so the
/// derived equality is field equality.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Scalar {
    num: i128,
    den: i128,
}

fn gcd(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn overflow() -> ! {
    panic!("rational arithmetic overflowed i128; the computation is too large for exact rationals, use a prime field")
}

impl Scalar {
    /// Numerator; for prime fields the residue itself.
    pub fn numer(&self) -> i128 {
        self.num
    }

    pub fn denom(&self) -> i128 {
        self.den
    }

    fn rational(num: i128, den: i128) -> Scalar {
        debug_assert!(den != 0);
        let g = gcd(num, den);
        let (mut n, mut d) = if g > 1 { (num / g, den / g) } else { (num, den) };
        if d < 0 {
            n = n.checked_neg().unwrap_or_else(|| overflow());
            d = d.checked_neg().unwrap_or_else(|| overflow());
        }
        Scalar { num: n, den: d }
    }

    fn residue(v: u64) -> Scalar {
        Scalar { num: v as i128, den: 1 }
    }
}

impl Field {
    /// `F_p`, checking that `p` is a prime in `[5, 2^31)`.
    pub fn prime(p: u64) -> Result<Field, FieldError> {
        if p < 5 || p > MAX_PRIME || !is_prime(p) {
            return Err(FieldError::BadCharacteristic(p));
        }
        Ok(Field::Prime(p))
    }

    pub fn characteristic(&self) -> u64 {
        match *self {
            Field::Rationals => 0,
            Field::Prime(p) => p,
        }
    }

    pub fn zero(&self) -> Scalar {
        Scalar { num: 0, den: 1 }
    }

    pub fn one(&self) -> Scalar {
        Scalar { num: 1, den: 1 }
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match *self {
            Field::Rationals => Scalar { num: v as i128, den: 1 },
            Field::Prime(p) => Scalar::residue((v as i128).rem_euclid(p as i128) as u64),
        }
    }

    /// The element `num / den`; `None` when `den` vanishes in this field.
    pub fn from_ratio(&self, num: i64, den: i64) -> Option<Scalar> {
        let d = self.from_i64(den);
        if d == self.zero() {
            return None;
        }
        Some(self.div(self.from_i64(num), d))
    }

    pub fn is_zero(&self, a: Scalar) -> bool {
        a.num == 0
    }

    pub fn add(&self, a: Scalar, b: Scalar) -> Scalar {
        match *self {
            Field::Prime(p) => Scalar::residue((a.num as u64 + b.num as u64) % p),
            Field::Rationals => {
                if a.den == 1 && b.den == 1 {
                    return Scalar { num: a.num.checked_add(b.num).unwrap_or_else(|| overflow()), den: 1 };
                }
                let n = a
                    .num
                    .checked_mul(b.den)
                    .and_then(|x| b.num.checked_mul(a.den).and_then(|y| x.checked_add(y)))
                    .unwrap_or_else(|| overflow());
                let d = a.den.checked_mul(b.den).unwrap_or_else(|| overflow());
                Scalar::rational(n, d)
            }
        }
    }

    pub fn neg(&self, a: Scalar) -> Scalar {
        match *self {
            Field::Prime(p) => Scalar::residue((p - a.num as u64) % p),
            Field::Rationals => Scalar { num: -a.num, den: a.den },
        }
    }

    pub fn sub(&self, a: Scalar, b: Scalar) -> Scalar {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Scalar, b: Scalar) -> Scalar {
        match *self {
            Field::Prime(p) => Scalar::residue((a.num as u64 * b.num as u64) % p),
            Field::Rationals => {
                if a.num == 0 || b.num == 0 {
                    return self.zero();
                }
                let g1 = gcd(a.num, b.den);
                let g2 = gcd(b.num, a.den);
                let n = (a.num / g1).checked_mul(b.num / g2).unwrap_or_else(|| overflow());
                let d = (a.den / g2).checked_mul(b.den / g1).unwrap_or_else(|| overflow());
                Scalar::rational(n, d)
            }
        }
    }

    pub fn inv(&self, a: Scalar) -> Option<Scalar> {
        if a.num == 0 {
            return None;
        }
        Some(match *self {
            Field::Prime(p) => Scalar::residue(pow_mod(a.num as u64, p - 2, p)),
            Field::Rationals => Scalar::rational(a.den, a.num),
        })
    }

    /// `a / b`; panics on division by zero.
    pub fn div(&self, a: Scalar, b: Scalar) -> Scalar {
        self.mul(a, self.inv(b).expect("division by zero"))
    }

    pub fn pow(&self, a: Scalar, mut e: u64) -> Scalar {
        let mut base = a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Uniform element of `F_p`, or a uniform integer in
    /// `[-RATIONAL_SAMPLE_RADIUS, RATIONAL_SAMPLE_RADIUS]` over the rationals.
    pub fn random<R: RngCore>(&self, rng: &mut R) -> Scalar {
        match *self {
            Field::Prime(p) => Scalar::residue(uniform_below(rng, p)),
            Field::Rationals => {
                let width = (2 * RATIONAL_SAMPLE_RADIUS + 1) as u64;
                self.from_i64(uniform_below(rng, width) as i64 - RATIONAL_SAMPLE_RADIUS)
            }
        }
    }

    /// Random nonzero element.
    pub fn random_nonzero<R: RngCore>(&self, rng: &mut R) -> Scalar {
        loop {
            let s = self.random(rng);
            if !self.is_zero(s) {
                return s;
            }
        }
    }

    /// Every element of a prime field in residue order; `None` over the rationals.
    pub fn elements(&self) -> Option<impl Iterator<Item = Scalar>> {
        match *self {
            Field::Prime(p) => Some((0..p).map(Scalar::residue)),
            Field::Rationals => None,
        }
    }

    pub fn display(&self, a: Scalar) -> ScalarDisplay {
        ScalarDisplay(a)
    }
}

/// Uniform integer in `[0, bound)` by rejection.
pub fn uniform_below<R: RngCore>(rng: &mut R, bound: u64) -> u64 {
    debug_assert!(bound > 0);
    let zone = u64::MAX - (u64::MAX % bound);
    loop {
        let v = rng.next_u64();
        if v < zone {
            return v % bound;
        }
    }
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

pub struct ScalarDisplay(Scalar);

impl fmt::Display for ScalarDisplay {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.den == 1 {
            write!(f, "{}", self.0.num)
        } else {
            write!(f, "{}/{}", self.0.num, self.0.den)
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Prime(p) => write!(f, "Fp {p}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_validation() {
        assert!(Field::prime(101).is_ok());
        assert!(Field::prime(3).is_err());
        assert!(Field::prime(91).is_err());
    }

    #[test]
    fn rational_normal_form() {
        let q = Field::Rationals;
        let a = q.from_ratio(2, -4).unwrap();
        assert_eq!(a, q.from_ratio(-1, 2).unwrap());
        assert_eq!(q.add(a, a), q.from_i64(-1));
        assert_eq!(q.mul(a, q.from_i64(-2)), q.one());
    }

    #[test]
    fn prime_inverse() {
        let f = Field::Prime(101);
        for v in 1..101 {
            let a = f.from_i64(v);
            assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
        }
        assert_eq!(f.from_i64(-1), f.from_i64(100));
    }
}
