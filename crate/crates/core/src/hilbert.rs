//! Legendre and Hilbert symbols over the rationals, the inert/split/ramified
//! classification of `Q(sqrt(rho))` at a prime, and the quadratic character
//! `chi_T(a) = (a, rho)_v` attached to `T = diag(1, -rho)`.

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::algebra::Rational;
use crate::{Error, Result};

/// A place of the rationals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Place {
    Real,
    Finite(u64),
}

impl Place {
    /// The finite place at `p`, checking primality.
    pub fn prime(p: u64) -> Result<Place> {
        if is_prime(p) {
            Ok(Place::Finite(p))
        } else {
            Err(Error::InvalidInput(alloc::format!("{p} is not prime")))
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Real => f.write_str("real"),
            Place::Finite(p) => write!(f, "{p}"),
        }
    }
}

impl FromStr for Place {
    type Err = Error;

    /// `real`, `inf` or a prime.
    fn from_str(s: &str) -> Result<Place> {
        match s.trim() {
            "real" | "inf" | "infinity" => Ok(Place::Real),
            t => t
                .parse::<u64>()
                .map_err(|_| Error::Parse(alloc::format!("not a place: {t:?}")))
                .and_then(Place::prime),
        }
    }
}

/// The quadratic space datum `rho`, with `-det T = rho`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadSpaceData {
    rho: Rational,
}

impl QuadSpaceData {
    pub fn new(rho: Rational) -> Result<Self> {
        if rho.is_zero() {
            return Err(Error::ZeroArgument);
        }
        Ok(QuadSpaceData { rho })
    }

    pub fn rho(&self) -> &Rational {
        &self.rho
    }

    pub fn minus_det_t(&self) -> &Rational {
        &self.rho
    }
}

/// Behaviour of `Q(sqrt(rho))` at a prime; the discriminant is the Legendre
/// symbol `(E/v)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PlaceClass {
    Inert = -1,
    Ramified = 0,
    Split = 1,
}

impl PlaceClass {
    pub fn legendre(self) -> i8 {
        self as i8
    }

    pub fn name(self) -> &'static str {
        match self {
            PlaceClass::Inert => "inert",
            PlaceClass::Ramified => "ramified",
            PlaceClass::Split => "split",
        }
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// `(a/p)` for an odd prime `p`, by Euler's criterion.
pub fn legendre(a: &BigInt, p: u64) -> i8 {
    let pb = BigInt::from(p);
    let r = ((a % &pb) + &pb) % &pb;
    if r.is_zero() {
        return 0;
    }
    let e = BigInt::from((p - 1) / 2);
    if r.modpow(&e, &pb).is_one() {
        1
    } else {
        -1
    }
}

fn split_int(n: &BigInt, p: u64) -> (i64, BigInt) {
    let pb = BigInt::from(p);
    let mut n = n.clone();
    let mut v = 0;
    while (&n % &pb).is_zero() {
        n /= &pb;
        v += 1;
    }
    (v, n)
}

/// `p`-adic valuation and unit part `(num', den')` of a nonzero rational.
fn split(a: &Rational, p: u64) -> (i64, BigInt, BigInt) {
    let (vn, n) = split_int(a.numer(), p);
    let (vd, d) = split_int(a.denom(), p);
    (vn - vd, n, d)
}

fn legendre_unit(n: &BigInt, d: &BigInt, p: u64) -> i8 {
    legendre(n, p) * legendre(d, p)
}

fn mod8(n: &BigInt, d: &BigInt) -> u8 {
    // d is odd, so d^-1 = d mod 8
    let r = (n * d) % BigInt::from(8);
    let r = if r.is_negative() { r + 8 } else { r };
    r.to_u8().expect("residue mod 8")
}

fn eps2(u: u8) -> u8 {
    ((u - 1) / 2) & 1
}

fn omega2(u: u8) -> u8 {
    let u = u as u32;
    (((u * u - 1) / 8) & 1) as u8
}

/// The Hilbert symbol `(a, b)_v`.
pub fn hilbert_symbol(a: &Rational, b: &Rational, v: Place) -> Result<i8> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroArgument);
    }
    match v {
        Place::Real => Ok(if a.is_negative() && b.is_negative() {
            -1
        } else {
            1
        }),
        Place::Finite(2) => {
            let (al, un, ud) = split(a, 2);
            let (be, vn, vd) = split(b, 2);
            let u = mod8(&un, &ud);
            let w = mod8(&vn, &vd);
            let e = eps2(u) * eps2(w)
                + (al.rem_euclid(2) as u8) * omega2(w)
                + (be.rem_euclid(2) as u8) * omega2(u);
            Ok(if e.is_multiple_of(2) { 1 } else { -1 })
        }
        Place::Finite(p) => {
            if !is_prime(p) {
                return Err(Error::InvalidInput(alloc::format!("{p} is not prime")));
            }
            let (al, un, ud) = split(a, p);
            let (be, vn, vd) = split(b, p);
            let mut s: i8 = 1;
            if al.rem_euclid(2) == 1 && be.rem_euclid(2) == 1 && ((p - 1) / 2) % 2 == 1 {
                s = -s;
            }
            if be.rem_euclid(2) == 1 {
                s *= legendre_unit(&un, &ud, p);
            }
            if al.rem_euclid(2) == 1 {
                s *= legendre_unit(&vn, &vd, p);
            }
            Ok(s)
        }
    }
}

/// `chi_T(a) = (a, -det T)_v = (a, rho)_v`.
pub fn chi_t(a: &Rational, rho: &QuadSpaceData, v: Place) -> Result<i8> {
    hilbert_symbol(a, rho.minus_det_t(), v)
}

/// Classifies the prime `p` in `Q(sqrt(rho))`.
pub fn classify_place(rho: &QuadSpaceData, p: u64) -> Result<PlaceClass> {
    let Place::Finite(p) = Place::prime(p)? else {
        unreachable!()
    };
    let (v, n, d) = split(rho.rho(), p);
    if v.rem_euclid(2) == 1 {
        return Ok(PlaceClass::Ramified);
    }
    if p == 2 {
        return Ok(match mod8(&n, &d) {
            1 => PlaceClass::Split,
            5 => PlaceClass::Inert,
            _ => PlaceClass::Ramified,
        });
    }
    Ok(match legendre_unit(&n, &d, p) {
        1 => PlaceClass::Split,
        _ => PlaceClass::Inert,
    })
}

/// Replaces a rational by an integer in the same square class with
/// `p`-adic valuation 0 or 1.
fn square_reduce(a: &Rational, p: u64) -> BigInt {
    let mut n = a.numer() * a.denom();
    let p2 = BigInt::from(p * p);
    while !n.is_zero() && (&n % &p2).is_zero() {
        n /= &p2;
    }
    n
}

/// Search depth for [`solvable_oracle`]: `v_p(4 a' b') + 3` for the square
/// class representatives `a'`, `b'` it works with.
pub fn default_precision(a: &Rational, b: &Rational, p: u64) -> Result<u32> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroArgument);
    }
    let prod = square_reduce(a, p) * square_reduce(b, p) * 4;
    Ok(split_int(&prod, p).0 as u32 + 3)
}

fn val_mod(x: u64, p: u64, j: u32) -> u32 {
    if x == 0 {
        return j;
    }
    let mut x = x;
    let mut v = 0;
    while x.is_multiple_of(p) && v < j {
        x /= p;
        v += 1;
    }
    v
}

/// Decides whether `z^2 = a x^2 + b y^2` has a nontrivial `p`-adic solution
/// by exhaustive search for primitive solutions modulo `p^k`.
///
/// Solutions are normalized so that the first unit coordinate among
/// `(z, x, y)` equals 1, and residues are extended one `p`-adic digit at a
/// time, keeping those with `f = a x^2 + b y^2 - z^2 = 0 mod p^(j+1)`. A
/// residue mod `p^j` with `j >= 2e + 1`, where `e` is the least valuation of
/// a partial derivative of `f`, lifts to a true solution by Hensel's lemma.
/// If the tree dies out, or no node certifies before depth `k`, the answer
/// is negative; with `k >= default_precision` this is exact.
pub fn solvable_oracle(a: &Rational, b: &Rational, p: u64, k: u32) -> Result<bool> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroArgument);
    }
    Place::prime(p)?;
    let modulus = p
        .checked_pow(k)
        .filter(|m| *m < (1u64 << 31))
        .ok_or_else(|| Error::InvalidInput(alloc::format!("precision {p}^{k} too large")))?;
    let m = BigInt::from(modulus);
    let reduce = |n: BigInt| ((n % &m + &m) % &m).to_u64().expect("residue");
    let ca = reduce(square_reduce(a, p)) as u128;
    let cb = reduce(square_reduce(b, p)) as u128;
    let md = modulus as u128;
    let f = |c: &[u64; 3]| -> u64 {
        let (z, x, y) = (c[0] as u128, c[1] as u128, c[2] as u128);
        ((ca * x % md * x + cb * y % md * y + md * md - z * z % md) % md) as u64
    };
    let certified = |c: &[u64; 3], j: u32| -> bool {
        let pj = p.pow(j);
        let two = 2u128;
        let parts = [
            (two * c[0] as u128 % pj as u128) as u64,
            (two * ca % pj as u128 * c[1] as u128 % pj as u128) as u64,
            (two * cb % pj as u128 * c[2] as u128 % pj as u128) as u64,
        ];
        let e = parts.iter().map(|&d| val_mod(d, p, j)).min().unwrap();
        2 * e < j
    };

    // pinned: index of the coordinate fixed to 1; lower indices are = 0 mod p
    for pinned in 0..3 {
        let mut stack: Vec<([u64; 3], u32)> = Vec::new();
        let free: Vec<usize> = (0..3).filter(|&i| i != pinned).collect();
        for d0 in 0..p {
            for d1 in 0..p {
                let mut c = [0u64; 3];
                c[pinned] = 1;
                c[free[0]] = d0;
                c[free[1]] = d1;
                if (0..pinned).any(|i| c[i] % p != 0) {
                    continue;
                }
                if f(&c) % p == 0 {
                    stack.push((c, 1));
                }
            }
        }
        while let Some((c, j)) = stack.pop() {
            if certified(&c, j) {
                return Ok(true);
            }
            if j >= k {
                continue;
            }
            let pj = p.pow(j);
            let pj1 = pj * p;
            for d0 in 0..p {
                for d1 in 0..p {
                    let mut n = c;
                    n[free[0]] += d0 * pj;
                    n[free[1]] += d1 * pj;
                    if f(&n) % pj1 == 0 {
                        stack.push((n, j + 1));
                    }
                }
            }
        }
    }
    Ok(false)
}

/// Primes dividing the numerator or denominator of `a` or `b`, together
/// with 2, by trial division.
pub fn relevant_primes(a: &Rational, b: &Rational) -> Vec<u64> {
    let mut out = alloc::vec![2u64];
    for n in [a.numer(), a.denom(), b.numer(), b.denom()] {
        let mut n = n.abs().to_u64().expect("trial division needs u64 inputs");
        let mut d = 2;
        while d * d <= n {
            while n % d == 0 {
                out.push(d);
                n /= d;
            }
            d += 1;
        }
        if n > 1 {
            out.push(n);
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}
