//! Coset combinatorics of the unramified integral: the index of the
//! congruence subgroups `H^m` in `H(O)` for `H` the norm-one torus of
//! `Q_p(sqrt(rho))`, and the volume and weight factors attached to each
//! double coset.
//!
//! The brute-force index is computed in `O / p^m`: reduction mod `p^m` maps
//! `H(O)` onto the units of `O_E / p^m` with kernel inside `H^m(O)`, so the
//! index is the same in the finite quotient.

use crate::algebra::{LaurentPoly, Monomial, Rational, VarId};
use crate::hilbert::is_prime;
use crate::sugano::{PlaceCase, PlaceData};
use crate::{Error, Result};

/// Residue class modulo `modulus`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FiniteRingElt {
    value: u64,
    modulus: u64,
}

impl FiniteRingElt {
    pub fn new(value: i64, modulus: u64) -> Self {
        assert!(modulus > 0, "zero modulus");
        FiniteRingElt {
            value: value.rem_euclid(modulus as i64) as u64,
            modulus,
        }
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> u64 {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }
}

impl core::ops::Add for FiniteRingElt {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        debug_assert_eq!(self.modulus, o.modulus);
        FiniteRingElt {
            value: (self.value + o.value) % self.modulus,
            modulus: self.modulus,
        }
    }
}

impl core::ops::Sub for FiniteRingElt {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        debug_assert_eq!(self.modulus, o.modulus);
        FiniteRingElt {
            value: (self.value + self.modulus - o.value) % self.modulus,
            modulus: self.modulus,
        }
    }
}

impl core::ops::Mul for FiniteRingElt {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        debug_assert_eq!(self.modulus, o.modulus);
        FiniteRingElt {
            value: ((self.value as u128 * o.value as u128) % self.modulus as u128) as u64,
            modulus: self.modulus,
        }
    }
}

/// `[H(O) : H^m(O)]` by enumeration of `(x, y) mod p^m`: the number of
/// pairs with `x^2 - rho y^2` a unit, divided by the number with `y = 0`.
pub fn index_bruteforce(p: u64, rho: i64, m: u32) -> Result<u64> {
    if p == 2 || !is_prime(p) {
        return Err(Error::InvalidInput(alloc::format!(
            "{p} is not an odd prime"
        )));
    }
    if rho.rem_euclid(p as i64) == 0 {
        return Err(Error::InvalidInput(alloc::format!(
            "rho = {rho} is not a unit mod {p}"
        )));
    }
    if m == 0 {
        return Err(Error::InvalidInput("m must be positive".into()));
    }
    let modulus = p
        .checked_pow(m)
        .filter(|&n| n <= 1 << 16)
        .ok_or_else(|| Error::InvalidInput(alloc::format!("{p}^{m} is too large to enumerate")))?;
    let rho = FiniteRingElt::new(rho, modulus);
    let (mut units, mut diagonal) = (0u64, 0u64);
    for x in 0..modulus {
        let x = FiniteRingElt::new(x as i64, modulus);
        for y in 0..modulus {
            let y = FiniteRingElt::new(y as i64, modulus);
            let norm = x * x - rho * y * y;
            if !norm.value().is_multiple_of(p) {
                units += 1;
                if y.is_zero() {
                    diagonal += 1;
                }
            }
        }
    }
    if units % diagonal != 0 {
        return Err(Error::InvalidInput("index is not an integer".into()));
    }
    Ok(units / diagonal)
}

/// `1` for `m = 0`, else `q^(m-1) (q - (E/v))`.
pub fn index_formula(q: u64, legendre_e: i8, m: u32) -> u64 {
    if m == 0 {
        return 1;
    }
    let q_minus = (q as i64 - i64::from(legendre_e)) as u64;
    q.pow(m - 1) * q_minus
}

/// [`index_formula`] as a polynomial in the place data.
pub fn index_poly(p: &PlaceData, m: u32) -> Result<LaurentPoly> {
    if m == 0 {
        return Ok(LaurentPoly::one());
    }
    let e = LaurentPoly::int(i64::from(p.legendre_e()));
    p.r_pow(2 * m as i32 - 2).mul(&(&p.q() - &e))
}

/// Exponents of `q` contributed by one double coset `(n, m, k)`.
///
/// The section contributes `q^(section_s * s + section_const)`, the Weil
/// representation `chi_T(p)^weil_chi * q^weil_q`, and the coset volume
/// `q^volume`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CosetWeight {
    pub section_s: i64,
    pub section_const: i64,
    pub weil_q: i64,
    pub weil_chi: u64,
    pub volume: i64,
}

impl CosetWeight {
    /// Net exponent of `q` apart from `q^-s`.
    pub fn q_exponent(&self) -> i64 {
        self.section_const + self.weil_q + self.volume
    }

    /// Power of `T = q^-s`.
    pub fn t_power(&self) -> u64 {
        (-self.section_s) as u64
    }

    /// `chi^weil_chi * q^q_exponent * T^t_power` over the place.
    pub fn monomial(&self, p: &PlaceData, chi_t: i8) -> LaurentPoly {
        let sign = if chi_t < 0 && self.weil_chi % 2 == 1 {
            -1
        } else {
            1
        };
        let t = LaurentPoly::monomial(
            Monomial::var(VarId::T, self.t_power() as i32),
            Rational::from_integer(sign),
        );
        p.r_pow(2 * self.q_exponent() as i32)
            .mul(&t)
            .expect("product of two terms")
    }
}

pub fn coset_weight(case: PlaceCase, n: u64, m: u64, k: u64) -> Result<CosetWeight> {
    if case == PlaceCase::Inert && k != 0 {
        return Err(Error::InvalidInput(
            "k must vanish in the inert case".into(),
        ));
    }
    let det = (2 * n + m + k) as i64;
    Ok(CosetWeight {
        section_s: -det,
        section_const: -delta_p(det, 0) / 3,
        weil_q: -det,
        weil_chi: det as u64,
        volume: (6 * n + 3 * m + 3 * k) as i64,
    })
}

/// Modulus character of the Siegel parabolic on an element with
/// `|det| = |p|^det_power` and `|lambda| = |p|^lambda_power`, as an exponent
/// of `q^-1`.
pub fn delta_p(det_power: i64, lambda_power: i64) -> i64 {
    3 * det_power - 3 * lambda_power
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sugano::mono;
    use VarId::*;

    #[test]
    fn index_examples() {
        assert_eq!(index_bruteforce(3, 2, 1), Ok(4));
        assert_eq!(index_bruteforce(5, 4, 1), Ok(4));
        assert_eq!(index_bruteforce(3, 2, 2), Ok(12));
        assert!(index_bruteforce(2, 3, 1).is_err());
        assert!(index_bruteforce(5, 10, 1).is_err());
    }

    #[test]
    fn index_matches_formula() {
        for p in [3u64, 5, 7] {
            for rho in 1..p as i64 {
                let e = crate::hilbert::legendre(&rho.into(), p);
                for m in 1..=2 {
                    assert_eq!(index_bruteforce(p, rho, m).unwrap(), index_formula(p, e, m));
                }
            }
        }
    }

    #[test]
    fn ring_element_arithmetic() {
        let a = FiniteRingElt::new(-1, 9);
        assert_eq!(a.value(), 8);
        assert_eq!((a * a).value(), 1);
        assert_eq!((a + FiniteRingElt::new(2, 9)).value(), 1);
        assert!((a - a).is_zero());
    }

    #[test]
    fn weight_examples() {
        let w = coset_weight(PlaceCase::Inert, 0, 0, 0).unwrap();
        assert_eq!(
            (w.volume, w.section_s, w.section_const, w.weil_q),
            (0, 0, 0, 0)
        );
        let w = coset_weight(PlaceCase::Inert, 1, 0, 0).unwrap();
        assert_eq!((w.volume, w.section_s, w.section_const), (6, -2, -2));
        assert_eq!((w.weil_chi, w.weil_q), (2, -2));
        // times index 1: q^(2(1 - s))
        assert_eq!((w.q_exponent(), w.t_power()), (2, 2));
        let w = coset_weight(PlaceCase::Split, 0, 0, 1).unwrap();
        assert_eq!((w.volume, w.section_s, w.weil_q), (3, -1, -1));
        assert_eq!((w.q_exponent(), w.t_power()), (1, 1));
        assert!(coset_weight(PlaceCase::Inert, 0, 0, 1).is_err());
    }

    #[test]
    fn modulus_character() {
        assert_eq!(delta_p(0, 0), 0);
        assert_eq!(delta_p(5, 0), 15);
        // det(h) = lambda(h) for h in the torus: trivial modulus
        assert_eq!(delta_p(3, 3), 0);
    }

    #[test]
    fn inert_weights_reproduce_coset_monomial() {
        // index * volume * section * Weil = q^(2n(1-s)) q^(m(2-s)) chi^m (1 - E/q) for m > 0
        let p = PlaceData::symbolic_inert();
        for n in 0..=4u64 {
            for m in 0..=4u64 {
                let w = coset_weight(PlaceCase::Inert, n, m, 0).unwrap();
                let got = index_poly(&p, m as u32)
                    .unwrap()
                    .mul(&w.monomial(&p, -1))
                    .unwrap();
                let sign = if m % 2 == 1 { -1 } else { 1 };
                let base = LaurentPoly::term(
                    Rational::from_integer(sign),
                    &[(R, (4 * n + 4 * m) as i32), (T, (2 * n + m) as i32)],
                );
                let want = if m == 0 {
                    base
                } else {
                    base.mul(&(&LaurentPoly::one() + &mono(&[(R, -2)])))
                        .unwrap()
                };
                assert_eq!(got, want, "(n, m) = ({n}, {m})");
            }
        }
    }
}
