//! The unramified local integral computed three ways: by specializing the
//! generating function, in closed form, and as a first-principles series
//! over double cosets.

mod report;
mod run;

pub use report::{Check, Mismatch, VerifyReport};
pub use run::{
    check_sample, draw_samples, finish_report, symbolic_checks, verify, Convention, Mode, Sample,
    SampleCheck, VerifyConfig,
};

use alloc::vec::Vec;

use crate::algebra::{
    series_expand, Bindings, LaurentPoly, Rational, RationalFunction, TruncSeries, VarId,
};
use crate::cosets::{coset_weight, index_poly};
use crate::sugano::{bessel_table, sugano_c, PlaceCase, PlaceData, SatakeData};
use crate::{Error, Result};

fn t() -> LaurentPoly {
    LaurentPoly::var(VarId::T)
}

fn require(p: &PlaceData, case: PlaceCase) -> Result<()> {
    if p.case()? != case {
        return Err(Error::WrongCase {
            expected: case.name(),
        });
    }
    Ok(())
}

fn unit_inv(p: &LaurentPoly) -> LaurentPoly {
    p.unit_inverse().expect("parameters are units")
}

fn specialize(c: &RationalFunction, x: LaurentPoly, y: LaurentPoly) -> Result<RationalFunction> {
    c.substitute(&Bindings::new().bind(VarId::X, x).bind(VarId::Y, y))
}

/// Inert assembly of the local integral:
///
/// ```text
/// (1 + 1/q) (C(X, Y) + C(X, -Y)) / 2 - (1/q) (C(0, Y) + C(0, -Y)) / 2
/// ```
///
/// with `X = -omega^-1 q^2 T` and `Y = omega^(-1/2) q T`.
pub fn assembled_inert(s: &SatakeData, p: &PlaceData) -> Result<RationalFunction> {
    require(p, PlaceCase::Inert)?;
    let c = sugano_c(s, p)?;
    let sw = s.sqrt_omega().ok_or(Error::MissingSquareRoot)?;
    let x = -unit_inv(&s.omega()).mul(&p.r_pow(4))?.mul(&t())?;
    let y = unit_inv(sw).mul(&p.r_pow(2))?.mul(&t())?;
    let zero = LaurentPoly::zero();
    let full = specialize(&c, x.clone(), y.clone())?.add(&specialize(&c, x, -&y)?)?;
    let edge = specialize(&c, zero.clone(), y.clone())?.add(&specialize(&c, zero, -&y)?)?;
    let half = Rational::new(1, 2);
    let q_inv = p.r_pow(-2);
    let w_full = (&LaurentPoly::one() + &q_inv).scale(&half);
    let w_edge = q_inv.scale(&-half);
    full.mul_poly(&w_full)?.add(&edge.mul_poly(&w_edge)?)
}

/// The weights of the split assembly.
#[derive(Clone, Debug, PartialEq)]
pub struct EtaTheta {
    pub eta1: RationalFunction,
    pub eta2: RationalFunction,
    pub theta1: RationalFunction,
    pub theta2: RationalFunction,
}

/// `eta_i = w^-1 nu_i^2 / (w^-1 nu_i^2 - 1)` and
/// `theta_i = w^-1 nu_i / (w^-1 nu_i^2 - 1)` with `nu_2 = omega / nu_1`.
pub fn eta_theta(s: &SatakeData, p: &PlaceData) -> Result<EtaTheta> {
    require(p, PlaceCase::Split)?;
    let (nu1, nu2) = p.nu_pair(s)?;
    let w_inv = unit_inv(&s.omega());
    let weights = |nu: &LaurentPoly| -> Result<(RationalFunction, RationalFunction)> {
        let a = w_inv.mul(&nu.pow(2)?)?;
        let den = &a - &LaurentPoly::one();
        if den.is_zero() {
            return Err(Error::DegenerateSplitParameter);
        }
        Ok((
            RationalFunction::fraction(a, &den)?,
            RationalFunction::fraction(w_inv.mul(nu)?, &den)?,
        ))
    };
    let (eta1, theta1) = weights(&nu1)?;
    let (eta2, theta2) = weights(&nu2)?;
    Ok(EtaTheta {
        eta1,
        eta2,
        theta1,
        theta2,
    })
}

fn assembled_split_signed(
    s: &SatakeData,
    p: &PlaceData,
    edge_sign: i64,
) -> Result<RationalFunction> {
    let et = eta_theta(s, p)?;
    let (nu1, nu2) = p.nu_pair(s)?;
    let c = sugano_c(s, p)?;
    let w_inv = unit_inv(&s.omega());
    let x = w_inv.mul(&p.r_pow(4))?.mul(&t())?;
    let q_inv = p.r_pow(-2);
    let w_full = &LaurentPoly::one() - &q_inv;
    let w_edge = q_inv.scale(&Rational::from_integer(edge_sign));
    let mut out = RationalFunction::zero();
    for (eta, nu) in [(&et.eta1, &nu1), (&et.eta2, &nu2)] {
        let z = w_inv.mul(nu)?.mul(&p.r_pow(2))?.mul(&t())?;
        let full = specialize(&c, x.clone(), z.clone())?.mul_poly(&w_full)?;
        let edge = specialize(&c, LaurentPoly::zero(), z)?.mul_poly(&w_edge)?;
        out = out.add(&eta.mul(&full.add(&edge)?)?)?;
    }
    Ok(out)
}

/// Split assembly of the local integral:
///
/// ```text
/// sum_i eta_i ((1 - 1/q) C(X, Z_i) + (1/q) C(0, Z_i))
/// ```
///
/// with `X = omega^-1 q^2 T` and `Z_i = omega^-1 nu_i q T`. The sign of the
/// `C(0, Z_i)` terms is the one produced by the coset index at `m = 0`.
pub fn assembled_split(s: &SatakeData, p: &PlaceData) -> Result<RationalFunction> {
    assembled_split_signed(s, p, 1)
}

/// `(1 - T)(1 - T/q) / prod (1 + gamma_i gamma_j omega^-1 T)`.
pub fn closed_form_inert(s: &SatakeData, p: &PlaceData) -> Result<RationalFunction> {
    require(p, PlaceCase::Inert)?;
    closed_form(PlaceCase::Inert, s, p, None)
}

/// `(1 + T)(1 - T/q) / prod (1 - gamma_i gamma_j omega^-1 T)`.
pub fn closed_form_split(s: &SatakeData, p: &PlaceData) -> Result<RationalFunction> {
    require(p, PlaceCase::Split)?;
    closed_form(PlaceCase::Split, s, p, None)
}

/// Number of linear factors in a closed form, for [`closed_form_tampered`].
pub const CLOSED_FORM_FACTORS: usize = 6;

/// A closed form with the sign of the `T` term of one linear factor flipped:
/// factors 0 and 1 are the numerator, 2 to 5 the denominator.
pub fn closed_form_tampered(
    case: PlaceCase,
    s: &SatakeData,
    p: &PlaceData,
    factor: usize,
) -> Result<RationalFunction> {
    require(p, case)?;
    if factor >= CLOSED_FORM_FACTORS {
        return Err(Error::InvalidInput(alloc::format!(
            "no closed-form factor {factor}"
        )));
    }
    closed_form(case, s, p, Some(factor))
}

fn closed_form(
    case: PlaceCase,
    s: &SatakeData,
    p: &PlaceData,
    flip: Option<usize>,
) -> Result<RationalFunction> {
    // each factor is 1 + c T
    let sign = Rational::from_integer(match case {
        PlaceCase::Inert => 1,
        PlaceCase::Split => -1,
    });
    let mut coeffs: Vec<LaurentPoly> =
        alloc::vec![LaurentPoly::constant(-sign.clone()), -p.r_pow(-2),];
    coeffs.extend(s.pair_ratios().iter().map(|r| r.scale(&sign)));
    let factors: Vec<LaurentPoly> = coeffs
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let c = if flip == Some(i) { -c } else { c.clone() };
            Ok(&LaurentPoly::one() + &c.mul(&t())?)
        })
        .collect::<Result<_>>()?;
    let num = factors[0].mul(&factors[1])?;
    RationalFunction::from_factors(num, factors[2..].iter().map(|f| (f.clone(), 1)))
}

/// `chi_T` at a uniformizer: `(E/v)` for the unramified places in scope.
fn chi_t_uniformizer(case: PlaceCase) -> i8 {
    case.legendre()
}

/// The local integral rebuilt from its double-coset decomposition, as a
/// series in `T` through `T^order`.
///
/// Each coset `(n, m, k)` contributes its index, volume, section and Weil
/// weights, the central character `omega^-(n+m+k)` (times `nu_i^k` at a
/// split place) and the Bessel value `phi(h(2n + k, m))`.
pub fn series_oracle(
    case: PlaceCase,
    s: &SatakeData,
    p: &PlaceData,
    order: usize,
    convention: Convention,
) -> Result<TruncSeries> {
    require(p, case)?;
    let table = bessel_table(s, p, order, order)?;
    let w_inv = unit_inv(&s.omega());
    let chi = chi_t_uniformizer(case);
    let mut coeffs = alloc::vec![RationalFunction::zero(); order + 1];
    let branches: Vec<(LaurentPoly, usize)> = match case {
        PlaceCase::Inert => alloc::vec![(LaurentPoly::one(), 0)],
        PlaceCase::Split => {
            let (nu1, nu2) = p.nu_pair(s)?;
            let k1_min = match convention {
                Convention::Proof => 1,
                Convention::PaperA => 0,
            };
            alloc::vec![(nu1, k1_min), (nu2, 0)]
        }
    };
    for (nu, k_min) in &branches {
        let k_max = if case == PlaceCase::Inert { 0 } else { order };
        for k in *k_min..=k_max {
            for n in 0..=(order - k.min(order)) / 2 {
                for m in 0..=order - 2 * n - k {
                    let w = coset_weight(case, n as u64, m as u64, k as u64)?;
                    let deg = w.t_power() as usize;
                    let ell = 2 * n + k;
                    let phi = table.coeff(m, ell);
                    if phi.is_zero() {
                        continue;
                    }
                    let weight = LaurentPoly::product([
                        &index_poly(p, m as u32)?,
                        &w.monomial(p, chi).coefficient_in(VarId::T, deg as i32),
                        &w_inv.pow((n + m + k) as u32)?,
                        &nu.pow(k as u32)?,
                    ])?;
                    coeffs[deg] = coeffs[deg].add(&phi.mul_poly(&weight)?)?;
                }
            }
        }
    }
    Ok(TruncSeries::new(VarId::T, order, coeffs))
}

/// Taylor coefficients of a closed form in `T`.
pub fn closed_form_series(f: &RationalFunction, order: usize) -> Result<TruncSeries> {
    series_expand(f, VarId::T, order)
}
