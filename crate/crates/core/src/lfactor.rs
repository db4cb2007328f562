//! Degree-five local L-factor and the zeta factors normalizing the local
//! integral.

use alloc::vec::Vec;

use crate::algebra::{LaurentPoly, Rational, RationalFunction, VarId};
use crate::sugano::{PlaceData, SatakeData};
use crate::Result;

/// Reciprocal roots `1, chi1, chi1^-1, chi2, chi2^-1` of the degree-five
/// Euler factor.
pub fn eigenvalues(s: &SatakeData) -> [LaurentPoly; 5] {
    let inv = |p: &LaurentPoly| p.unit_inverse().expect("characters are units");
    [
        LaurentPoly::one(),
        s.chi1().clone(),
        inv(s.chi1()),
        s.chi2().clone(),
        inv(s.chi2()),
    ]
}

/// `prod (1 - twist * lambda * T)^-1` over the eigenvalues; `twist` is the
/// value `chi_T(p)` of the quadratic character.
pub fn local_lfactor(s: &SatakeData, twist: i8) -> Result<RationalFunction> {
    let t = LaurentPoly::var(VarId::T).scale(&Rational::from_integer(i64::from(twist)));
    let factors = eigenvalues(s)
        .iter()
        .map(|l| Ok((&LaurentPoly::one() - &l.mul(&t)?, 1)))
        .collect::<Result<Vec<_>>>()?;
    RationalFunction::from_factors(LaurentPoly::one(), factors)
}

/// `zeta(s + 1) zeta(2s) = ((1 - q^-1 T)(1 - T^2))^-1`.
pub fn zeta_normalizer(p: &PlaceData) -> Result<RationalFunction> {
    let one = LaurentPoly::one();
    let t = LaurentPoly::var(VarId::T);
    let f1 = &one - &p.r_pow(-2).mul(&t)?;
    let f2 = &one - &t.pow(2)?;
    RationalFunction::from_factors(one, [(f1, 1), (f2, 1)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rf_equal, Bindings};
    use crate::sugano::mono;
    use VarId::*;

    fn one_minus(c: i64) -> LaurentPoly {
        &LaurentPoly::one() - &LaurentPoly::var(T).scale(&Rational::from_integer(c))
    }

    #[test]
    fn eigenvalue_readoff() {
        let e = eigenvalues(&SatakeData::symbolic());
        assert_eq!(e[1], mono(&[(A, 2)]));
        assert_eq!(e[2], mono(&[(A, -2)]));
        assert_eq!(e[4], mono(&[(B, -2)]));
        let s = SatakeData::from_characters(Rational::one(), 2.into(), 3.into()).unwrap();
        let vals: Vec<_> = eigenvalues(&s)
            .iter()
            .map(|p| p.as_constant().unwrap())
            .collect();
        assert_eq!(
            vals,
            [
                1.into(),
                2.into(),
                Rational::new(1, 2),
                3.into(),
                Rational::new(1, 3)
            ]
        );
        let prod = LaurentPoly::product(eigenvalues(&SatakeData::symbolic()).iter()).unwrap();
        assert!(prod.is_one());
    }

    #[test]
    fn trivial_characters() {
        let one = Rational::one();
        let s = SatakeData::from_characters(one.clone(), one.clone(), one).unwrap();
        let plus = local_lfactor(&s, 1).unwrap();
        assert_eq!(
            plus,
            RationalFunction::from_factors(LaurentPoly::one(), [(one_minus(1), 5)]).unwrap()
        );
        let minus = local_lfactor(&s, -1).unwrap();
        assert_eq!(
            minus,
            RationalFunction::from_factors(LaurentPoly::one(), [(one_minus(-1), 5)]).unwrap()
        );
    }

    #[test]
    fn degree_five_in_t() {
        let l = local_lfactor(&SatakeData::symbolic(), -1).unwrap();
        assert!(!l.numerator().contains(T));
        assert_eq!(l.denominator().unwrap().exponent_range(T), Some((0, 5)));
    }

    #[test]
    fn weyl_invariance_and_twist() {
        let l = local_lfactor(&SatakeData::symbolic(), 1).unwrap();
        for b in [
            Bindings::new().bind(A, B).bind(B, A),
            Bindings::new().bind(A, mono(&[(A, -1)])),
            Bindings::new().bind(B, mono(&[(B, -1)])),
        ] {
            assert!(rf_equal(&l, &l.substitute(&b).unwrap()).unwrap());
        }
        let flipped = l
            .substitute(&Bindings::new().bind(T, -LaurentPoly::var(T)))
            .unwrap();
        assert!(rf_equal(
            &flipped,
            &local_lfactor(&SatakeData::symbolic(), -1).unwrap()
        )
        .unwrap());
    }

    #[test]
    fn zeta_factor() {
        let p = PlaceData::exact(&Rational::from_integer(4), -1, None).unwrap();
        let z = zeta_normalizer(&p).unwrap();
        let t = LaurentPoly::var(T);
        let quarter = &LaurentPoly::one() - &t.scale(&Rational::new(1, 4));
        let want = RationalFunction::from_factors(
            LaurentPoly::one(),
            [
                (quarter.clone(), 1),
                (&LaurentPoly::one() - &t.pow(2).unwrap(), 1),
            ],
        )
        .unwrap();
        assert!(rf_equal(&z, &want).unwrap());
        // times (1 - T)(1 - T/4) leaves 1/(1 + T)
        let prod = z.mul_poly(&one_minus(1).mul(&quarter).unwrap()).unwrap();
        let want = RationalFunction::fraction(LaurentPoly::one(), &one_minus(-1)).unwrap();
        assert!(rf_equal(&prod, &want).unwrap());
        let sym = zeta_normalizer(&PlaceData::symbolic_inert()).unwrap();
        assert!(sym.den_factors().iter().any(|(f, _)| f.contains(R)));
    }
}
