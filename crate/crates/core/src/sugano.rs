//! Sugano's generating function for the spherical Bessel function of an
//! unramified principal series of `GSp(4)`.
//!
//! Over a place with residue field of size `q` and Satake parameters
//! `gamma_1..gamma_4`,
//!
//! ```text
//! C(x, y) = sum_{l, m >= 0} phi(h(l, m)) x^m y^l = H(x, y) / (P(x) Q(y))
//! ```
//!
//! with `h(l, m) = diag(p^(2m+l), p^(m+l), 1, p^m)`.

use alloc::vec::Vec;

use crate::algebra::{
    bi_series_expand, iterated_coeff, BiSeries, LaurentPoly, Rational, RationalFunction, VarId,
};
use crate::{Error, Result};

/// Index pairs `(i, j)` (zero-based) of the products `gamma_i gamma_j`
/// occurring in `P(x)` and in the closed forms of the local integral.
pub const GAMMA_PAIRS: [(usize, usize); 4] = [(0, 1), (0, 3), (1, 2), (2, 3)];

fn require_unit(p: &LaurentPoly) -> Result<()> {
    if p.is_unit() {
        Ok(())
    } else {
        Err(Error::NotAUnit(alloc::format!("{p}")))
    }
}

fn unit_pow(p: &LaurentPoly, k: i32) -> LaurentPoly {
    let (c, m) = p.as_unit().expect("unit checked at construction");
    LaurentPoly::monomial(m.pow(k), c.pow(k).expect("nonzero unit"))
}

/// The characters `chi_0, chi_1, chi_2` at a uniformizer, each a unit: either
/// a nonzero rational or a monomial in `C`, `A`, `B`.
#[derive(Clone, Debug, PartialEq)]
pub struct SatakeData {
    chi0: LaurentPoly,
    chi1: LaurentPoly,
    chi2: LaurentPoly,
    sqrt_omega: Option<LaurentPoly>,
}

impl SatakeData {
    /// `chi_0 = C`, `chi_1 = A^2`, `chi_2 = B^2`.
    pub fn symbolic() -> Self {
        let m = |pairs: &[(VarId, i32)]| LaurentPoly::term(Rational::one(), pairs);
        SatakeData {
            chi0: m(&[(VarId::C, 1)]),
            chi1: m(&[(VarId::A, 2)]),
            chi2: m(&[(VarId::B, 2)]),
            sqrt_omega: Some(m(&[(VarId::A, 1), (VarId::B, 1), (VarId::C, 1)])),
        }
    }

    /// Exact data given `chi_0` and square roots `a`, `b` of `chi_1`, `chi_2`.
    pub fn from_roots(chi0: Rational, a: Rational, b: Rational) -> Result<Self> {
        if chi0.is_zero() || a.is_zero() || b.is_zero() {
            return Err(Error::ZeroArgument);
        }
        let sqrt_omega = &(&a * &b) * &chi0;
        Ok(SatakeData {
            chi0: chi0.into(),
            chi1: (&a * &a).into(),
            chi2: (&b * &b).into(),
            sqrt_omega: Some(sqrt_omega.into()),
        })
    }

    /// Exact data from the three characters. A square root of `omega` is
    /// recorded when `chi_1 chi_2` is a rational square.
    pub fn from_characters(chi0: Rational, chi1: Rational, chi2: Rational) -> Result<Self> {
        if chi0.is_zero() || chi1.is_zero() || chi2.is_zero() {
            return Err(Error::ZeroArgument);
        }
        let sqrt_omega = (&chi1 * &chi2)
            .sqrt()
            .map(|r| LaurentPoly::constant(&r * &chi0));
        Ok(SatakeData {
            chi0: chi0.into(),
            chi1: chi1.into(),
            chi2: chi2.into(),
            sqrt_omega,
        })
    }

    pub fn chi0(&self) -> &LaurentPoly {
        &self.chi0
    }

    pub fn chi1(&self) -> &LaurentPoly {
        &self.chi1
    }

    pub fn chi2(&self) -> &LaurentPoly {
        &self.chi2
    }

    /// `[chi1 chi2 chi0, chi1 chi0, chi0, chi2 chi0]`.
    pub fn gammas(&self) -> [LaurentPoly; 4] {
        let m = |a: &LaurentPoly, b: &LaurentPoly| a.mul(b).expect("product of units");
        let g3 = self.chi0.clone();
        let g2 = m(&self.chi1, &g3);
        let g4 = m(&self.chi2, &g3);
        let g1 = m(&self.chi1, &g4);
        [g1, g2, g3, g4]
    }

    /// Central character at a uniformizer, `gamma_1 gamma_3`.
    pub fn omega(&self) -> LaurentPoly {
        let [g1, _, g3, _] = self.gammas();
        g1.mul(&g3).expect("product of units")
    }

    pub fn sqrt_omega(&self) -> Option<&LaurentPoly> {
        self.sqrt_omega.as_ref()
    }

    /// `gamma_i gamma_j / omega` for the pairs in [`GAMMA_PAIRS`].
    pub fn pair_ratios(&self) -> [LaurentPoly; 4] {
        let g = self.gammas();
        let w_inv = unit_pow(&self.omega(), -1);
        GAMMA_PAIRS.map(|(i, j)| g[i].mul(&g[j]).and_then(|p| p.mul(&w_inv)).expect("units"))
    }
}

/// Inert or split behaviour of the quadratic extension at the place.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PlaceCase {
    Inert,
    Split,
}

impl PlaceCase {
    pub fn legendre(self) -> i8 {
        match self {
            PlaceCase::Inert => -1,
            PlaceCase::Split => 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            PlaceCase::Inert => "inert",
            PlaceCase::Split => "split",
        }
    }
}

/// Local arithmetic at the place: `sqrt(q)`, the Legendre symbol `(E/v)` and,
/// at a split place, the value `nu(Pi_1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct PlaceData {
    r: LaurentPoly,
    legendre_e: i8,
    nu_pi1: Option<LaurentPoly>,
}

impl PlaceData {
    pub fn symbolic_inert() -> Self {
        PlaceData {
            r: LaurentPoly::var(VarId::R),
            legendre_e: -1,
            nu_pi1: None,
        }
    }

    pub fn symbolic_split() -> Self {
        PlaceData {
            r: LaurentPoly::var(VarId::R),
            legendre_e: 1,
            nu_pi1: Some(LaurentPoly::var(VarId::U)),
        }
    }

    /// Exact data; `q` must be a rational square.
    pub fn exact(q: &Rational, legendre_e: i8, nu_pi1: Option<Rational>) -> Result<Self> {
        let r = q
            .sqrt()
            .filter(|r| !r.is_zero())
            .ok_or_else(|| Error::NotASquare(alloc::format!("{q}")))?;
        Self::new(r.into(), legendre_e, nu_pi1.map(Into::into))
    }

    /// General constructor; `r` and `nu_pi1` must be units.
    pub fn new(r: LaurentPoly, legendre_e: i8, nu_pi1: Option<LaurentPoly>) -> Result<Self> {
        if !(-1..=1).contains(&legendre_e) {
            return Err(Error::InvalidInput(alloc::format!(
                "Legendre symbol must be -1, 0 or 1, got {legendre_e}"
            )));
        }
        require_unit(&r)?;
        if let Some(nu) = &nu_pi1 {
            require_unit(nu)?;
        }
        Ok(PlaceData {
            r,
            legendre_e,
            nu_pi1,
        })
    }

    pub fn r(&self) -> &LaurentPoly {
        &self.r
    }

    /// `q^(k/2)`.
    pub fn r_pow(&self, k: i32) -> LaurentPoly {
        unit_pow(&self.r, k)
    }

    pub fn q(&self) -> LaurentPoly {
        self.r_pow(2)
    }

    pub fn legendre_e(&self) -> i8 {
        self.legendre_e
    }

    pub fn case(&self) -> Result<PlaceCase> {
        match self.legendre_e {
            -1 => Ok(PlaceCase::Inert),
            1 => Ok(PlaceCase::Split),
            _ => Err(Error::RamifiedPlace),
        }
    }

    pub fn nu_pi1(&self) -> Option<&LaurentPoly> {
        self.nu_pi1.as_ref()
    }

    /// `nu(Pi_1)` and `nu(Pi_2) = omega / nu(Pi_1)`.
    pub fn nu_pair(&self, s: &SatakeData) -> Result<(LaurentPoly, LaurentPoly)> {
        let nu1 = self.nu_pi1.clone().ok_or(Error::MissingSplitParameter)?;
        let nu2 = s.omega().mul(&unit_pow(&nu1, -1))?;
        Ok((nu1, nu2))
    }
}

/// The constants `A1..A5`, `alpha`, `beta` of the generating function.
#[derive(Clone, Debug, PartialEq)]
pub struct SuganoParams {
    pub alpha: LaurentPoly,
    pub beta: LaurentPoly,
    pub a1: LaurentPoly,
    pub a2: LaurentPoly,
    pub a3: LaurentPoly,
    pub a4: LaurentPoly,
    pub a5: LaurentPoly,
}

/// Index `(l, m)` of the coset `h(l, m)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CosetRep {
    pub ell: usize,
    pub m: usize,
}

pub fn build_params(s: &SatakeData, p: &PlaceData) -> Result<SuganoParams> {
    let case = p.case()?;
    let g = s.gammas();
    let w = s.omega();
    let qp = |k: i32| p.r_pow(2 * k);
    let eps = match case {
        PlaceCase::Inert => LaurentPoly::zero(),
        PlaceCase::Split => {
            let (nu1, nu2) = p.nu_pair(s)?;
            &nu1 + &nu2
        }
    };
    let mut pair_sum = LaurentPoly::zero();
    for i in 0..4 {
        for j in i + 1..4 {
            pair_sum = &pair_sum + &g[i].mul(&g[j])?;
        }
    }
    let gamma_sum = g.iter().fold(LaurentPoly::zero(), |acc, gi| &acc + gi);
    Ok(SuganoParams {
        alpha: p.r_pow(-3).mul(&gamma_sum)?,
        beta: qp(-3).mul(&pair_sum)?,
        a1: qp(-1),
        a2: qp(-2).mul(&w)?,
        a3: qp(-3).mul(&w)?,
        a4: qp(-2).scale(&Rational::from_integer(-i64::from(p.legendre_e))),
        a5: qp(-2).mul(&eps)?,
    })
}

fn prod(items: &[&LaurentPoly]) -> Result<LaurentPoly> {
    LaurentPoly::product(items.iter().copied())
}

/// Linear factors `1 - gamma_i gamma_j q^-2 x` of `P(x)`.
pub fn p_factors(s: &SatakeData, p: &PlaceData) -> Result<[LaurentPoly; 4]> {
    let g = s.gammas();
    let x = LaurentPoly::var(VarId::X);
    let q2 = p.r_pow(-4);
    let mut out: [LaurentPoly; 4] = Default::default();
    for (slot, (i, j)) in out.iter_mut().zip(GAMMA_PAIRS) {
        *slot = &LaurentPoly::one() - &prod(&[&g[i], &g[j], &q2, &x])?;
    }
    Ok(out)
}

/// Linear factors `1 - gamma_i q^(-3/2) y` of `Q(y)`.
pub fn q_factors(s: &SatakeData, p: &PlaceData) -> Result<[LaurentPoly; 4]> {
    let y = LaurentPoly::var(VarId::Y);
    let r3 = p.r_pow(-3);
    let g = s.gammas();
    let mut out: [LaurentPoly; 4] = Default::default();
    for (slot, gi) in out.iter_mut().zip(g.iter()) {
        *slot = &LaurentPoly::one() - &prod(&[gi, &r3, &y])?;
    }
    Ok(out)
}

/// `C(X, Y) = H / (P Q)`.
///
/// `M1` carries the denominator `A1 + A4`, which is kept as an extra factor
/// of the result (a constant when the place data are exact).
pub fn sugano_c(s: &SatakeData, p: &PlaceData) -> Result<RationalFunction> {
    let SuganoParams {
        alpha,
        beta,
        a1,
        a2,
        a3,
        a4,
        a5,
    } = build_params(s, p)?;
    let one = LaurentPoly::one();
    let x = LaurentPoly::var(VarId::X);
    let y = LaurentPoly::var(VarId::Y);
    let x2 = x.pow(2)?;
    let x3 = x.pow(3)?;
    let y2 = y.pow(2)?;
    let a1_inv = p.q();
    let two = LaurentPoly::int(2);

    let pf = p_factors(s, p)?;
    let pp = LaurentPoly::product(pf.iter())?;
    let qf = q_factors(s, p)?;

    // sA = A1 + A4; m1s = sA * M1
    let sa = &a1 + &a4;
    let lin = prod(&[&a1, &a5, &alpha])? + prod(&[&a4, &beta])?
        - prod(&[&a1, &a5, &a5])?
        - prod(&[&two, &a1, &a2, &a4])?;
    let lin = a1_inv.mul(&lin)?;
    let m1s = sa.mul(&(&one + &prod(&[&a1_inv, &a2, &a2, &a4, &x2])?))? - lin.mul(&x)?;

    let a1a2_beta = a1.mul(&a2)? - beta.clone();
    let m2 = &one
        + &(prod(&[&a1_inv, &a1a2_beta, &x])?
            + prod(&[&a1_inv, &a2, &a1a2_beta, &x2])?
            + prod(&[&a2, &a2, &a2, &x3])?);

    // hs = sA * H
    let first = (&one + &prod(&[&a2, &a3, &x, &y2])?)
        .mul(&(m1s.mul(&(&one + &a2.mul(&x)?))? + prod(&[&sa, &a2, &a5, &alpha, &a1_inv, &x2])?))?;
    let second = prod(&[&a2, &x, &y])?.mul(&(alpha.mul(&m1s)? - prod(&[&sa, &a5, &m2])?))?;
    let third = prod(&[&sa, &a5, &pp, &y])?;
    let fourth = prod(&[&sa, &a2, &a4, &pp, &y2])?;
    let hs = first - second - third - fourth;

    let factors: Vec<(LaurentPoly, u32)> = pf
        .into_iter()
        .chain(qf)
        .chain(core::iter::once(sa))
        .map(|f| (f, 1))
        .collect();
    RationalFunction::from_factors(hs, factors)
}

/// Bessel coefficients `phi(h(l, m))` for `l <= max_ell`, `m <= max_m`, as a
/// bivariate series in `(X, Y)`.
pub fn bessel_table(
    s: &SatakeData,
    p: &PlaceData,
    max_ell: usize,
    max_m: usize,
) -> Result<BiSeries> {
    bi_series_expand(&sugano_c(s, p)?, VarId::X, VarId::Y, max_m, max_ell)
}

/// `phi(h(l, m))`: the coefficient of `X^m Y^l` by joint expansion.
pub fn bessel_coeff(s: &SatakeData, p: &PlaceData, rep: CosetRep) -> Result<RationalFunction> {
    Ok(bessel_table(s, p, rep.ell, rep.m)?
        .coeff(rep.m, rep.ell)
        .clone())
}

/// The same coefficient extracted by expanding in `X` and then in `Y`.
pub fn bessel_coeff_iterated(
    s: &SatakeData,
    p: &PlaceData,
    rep: CosetRep,
) -> Result<RationalFunction> {
    iterated_coeff(&sugano_c(s, p)?, VarId::X, VarId::Y, rep.m, rep.ell)
}

#[cfg(test)]
/// Monomial `m` with coefficient one, as a polynomial.
pub(crate) fn mono(pairs: &[(VarId, i32)]) -> LaurentPoly {
    LaurentPoly::monomial(crate::algebra::Monomial::from_pairs(pairs), Rational::one())
}
