//! Scalar fields used by the elimination engine: the rationals and word-sized
//! prime fields.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar. Always in lowest terms with a positive denominator.
pub type Q = BigRational;

/// Four primes just below 2^62. Recorded in every report.
pub const DEFAULT_PRIMES: [u64; 4] = [
    4_611_686_018_427_387_847,
    4_611_686_018_427_387_817,
    4_611_686_018_427_387_787,
    4_611_686_018_427_387_761,
];

pub fn q(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Field operations over an element type. Implementors are cheap handles
/// (a unit struct, or a struct holding the modulus).
pub trait Field: Sync + Send {
    type Elem: Clone + PartialEq + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse. Callers never pass zero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;

    /// `a -= b * c`
    fn sub_mul_assign(&self, a: &mut Self::Elem, b: &Self::Elem, c: &Self::Elem) {
        *a = self.sub(a, &self.mul(b, c));
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = Q;

    fn zero(&self) -> Q {
        Q::zero()
    }
    fn one(&self) -> Q {
        Q::one()
    }
    fn is_zero(&self, a: &Q) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Q, b: &Q) -> Q {
        a + b
    }
    fn sub(&self, a: &Q, b: &Q) -> Q {
        a - b
    }
    fn mul(&self, a: &Q, b: &Q) -> Q {
        a * b
    }
    fn neg(&self, a: &Q) -> Q {
        -a
    }
    fn inv(&self, a: &Q) -> Q {
        a.recip()
    }
    fn sub_mul_assign(&self, a: &mut Q, b: &Q, c: &Q) {
        *a -= b * c;
    }
}

/// Integers modulo a prime `p < 2^63`. Residues are kept in `[0, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Self {
        assert!(p >= 2 && p < (1 << 63), "prime out of supported range");
        PrimeField { p }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }

    pub fn from_bigint(&self, v: &BigInt) -> u64 {
        let m = BigInt::from(self.p);
        v.mod_floor(&m).to_u64().expect("residue fits in u64")
    }

    /// Reduce a rational; fails if `p` divides the denominator.
    pub fn reduce(&self, v: &Q) -> Result<u64> {
        let den = self.from_bigint(v.denom());
        if den == 0 {
            return Err(Error::PrimeDividesDenominator(self.p));
        }
        let num = self.from_bigint(v.numer());
        Ok(self.mul(&num, &self.inv(&den)))
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            exp >>= 1;
        }
        acc
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> u64 {
        // extended Euclid on signed 128-bit values
        let (mut r0, mut r1) = (self.p as i128, *a as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let qt = r0 / r1;
            (r0, r1) = (r1, r0 - qt * r1);
            (t0, t1) = (t1, t0 - qt * t1);
        }
        debug_assert_eq!(r0, 1, "inverse of a non-unit");
        t0.rem_euclid(self.p as i128) as u64
    }
}

/// Deterministic Miller–Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, b);
            }
            b = mulmod(b, b);
            e >>= 1;
        }
        acc
    };
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Rational reconstruction of `u mod m` with numerator and denominator
/// bounded by `sqrt(m/2)`.
pub fn rational_reconstruct(u: &BigInt, m: &BigInt) -> Option<Q> {
    let bound = (m / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (m.clone(), u.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let (qt, rem) = r0.div_rem(&r1);
        let t2 = &t0 - &qt * &t1;
        r0 = std::mem::replace(&mut r1, rem);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    if !r1.gcd(&t1).is_one() {
        return None;
    }
    Some(Q::new(r1, t1))
}

/// Single-prime fast path of [`rational_reconstruct`].
pub fn rational_reconstruct_u64(u: u64, p: u64) -> Option<Q> {
    let bound = ((p / 2) as f64).sqrt() as i128;
    let (mut r0, mut r1) = (p as i128, (u % p) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 > bound {
        let qt = r0 / r1;
        (r0, r1) = (r1, r0 - qt * r1);
        (t0, t1) = (t1, t0 - qt * t1);
    }
    if t1 == 0 || t1.abs() > bound {
        return None;
    }
    if num_integer::gcd(r1, t1) != 1 {
        return None;
    }
    Some(Q::new(BigInt::from(r1), BigInt::from(t1)))
}

/// Combine residues by the Chinese remainder theorem. Returns `(value, modulus)`.
pub fn crt(residues: &[(u64, u64)]) -> (BigInt, BigInt) {
    let mut value = BigInt::zero();
    let mut modulus = BigInt::one();
    for &(r, p) in residues {
        let pb = BigInt::from(p);
        // value + modulus * k ≡ r (mod p)
        let field = PrimeField::new(p);
        let cur = field.from_bigint(&value);
        let mm = field.from_bigint(&modulus);
        let k = field.mul(&field.sub(&r, &cur), &field.inv(&mm));
        value += &modulus * BigInt::from(k);
        modulus *= pb;
    }
    (value, modulus)
}
