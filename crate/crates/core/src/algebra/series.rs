use alloc::vec;
use alloc::vec::Vec;

use super::{LaurentPoly, RationalFunction, VarId};
use crate::{Error, Result};

/// Power series in one variable truncated after `order`, with coefficients
/// that are rational functions in the remaining variables.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncSeries {
    var: VarId,
    coeffs: Vec<RationalFunction>,
}

impl TruncSeries {
    /// Pads or truncates `coeffs` to `order + 1` entries.
    pub fn new(var: VarId, order: usize, mut coeffs: Vec<RationalFunction>) -> Self {
        coeffs.resize(order + 1, RationalFunction::zero());
        TruncSeries { var, coeffs }
    }

    pub fn var(&self) -> VarId {
        self.var
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &RationalFunction {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[RationalFunction] {
        &self.coeffs
    }

    fn check_var(&self, other: &TruncSeries) -> Result<()> {
        if self.var != other.var {
            return Err(Error::InvalidInput(alloc::format!(
                "series in {} and {} cannot be combined",
                self.var,
                other.var
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &TruncSeries) -> Result<TruncSeries> {
        self.check_var(other)?;
        let n = self.order().min(other.order());
        let coeffs = (0..=n)
            .map(|k| self.coeffs[k].add(&other.coeffs[k]))
            .collect::<Result<_>>()?;
        Ok(TruncSeries::new(self.var, n, coeffs))
    }

    pub fn mul(&self, other: &TruncSeries) -> Result<TruncSeries> {
        self.check_var(other)?;
        let n = self.order().min(other.order());
        let mut coeffs = vec![RationalFunction::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n + 1 - i) {
                if !b.is_zero() {
                    coeffs[i + j] = coeffs[i + j].add(&a.mul(b)?)?;
                }
            }
        }
        Ok(TruncSeries::new(self.var, n, coeffs))
    }

    pub fn scale(&self, c: &RationalFunction) -> Result<TruncSeries> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|a| a.mul(c))
            .collect::<Result<_>>()?;
        Ok(TruncSeries::new(self.var, self.order(), coeffs))
    }

    /// Index of the first coefficient where the two series differ, comparing
    /// up to the smaller order.
    pub fn first_difference(&self, other: &TruncSeries) -> Result<Option<usize>> {
        self.check_var(other)?;
        for k in 0..=self.order().min(other.order()) {
            if !super::rf_equal(&self.coeffs[k], &other.coeffs[k])? {
                return Ok(Some(k));
            }
        }
        Ok(None)
    }
}

/// Nonnegative-power coefficients of `p` in `v`, up to `order`; a negative
/// power is a pole at the expansion point.
fn poly_coeffs(p: &LaurentPoly, v: VarId, order: usize) -> Result<Vec<LaurentPoly>> {
    let mut out = vec![LaurentPoly::zero(); order + 1];
    for (k, c) in p.coefficients_in(v) {
        if k < 0 {
            return Err(Error::NonUnitDenominator(v));
        }
        if let Some(slot) = out.get_mut(k as usize) {
            *slot = c;
        }
    }
    Ok(out)
}

/// `1 / d0^k` as a rational function.
fn inv_power(d0: &LaurentPoly, k: u32) -> Result<RationalFunction> {
    RationalFunction::from_factors(LaurentPoly::one(), [(d0.clone(), k)])
}

/// Coefficients of `1/f` in `v` up to `order`.
///
/// With `f = sum d_j v^j` the expansion is `b_k = e_k / d_0^(k+1)` where
/// `e_0 = 1` and `e_k = -sum_{j>=1} d_j e_{k-j} d_0^(j-1)`, which keeps every
/// intermediate a polynomial. When `d_0` is a unit the plain recurrence is
/// used directly.
fn inverse_coeffs(f: &LaurentPoly, v: VarId, order: usize) -> Result<Vec<RationalFunction>> {
    let d = poly_coeffs(f, v, order)?;
    if d[0].is_zero() {
        return Err(Error::NonUnitDenominator(v));
    }
    if let Some(inv0) = d[0].unit_inverse() {
        let mut b: Vec<LaurentPoly> = Vec::with_capacity(order + 1);
        b.push(inv0.clone());
        for k in 1..=order {
            let mut acc = LaurentPoly::zero();
            for j in 1..=k {
                if !d[j].is_zero() {
                    acc = &acc + &d[j].mul(&b[k - j])?;
                }
            }
            b.push(-inv0.mul(&acc)?);
        }
        return Ok(b.into_iter().map(RationalFunction::from_poly).collect());
    }
    let mut d0_pows = vec![LaurentPoly::one()];
    let mut e: Vec<LaurentPoly> = vec![LaurentPoly::one()];
    for k in 1..=order {
        while d0_pows.len() < k {
            let next = d0_pows.last().unwrap().mul(&d[0])?;
            d0_pows.push(next);
        }
        let mut acc = LaurentPoly::zero();
        for j in 1..=k {
            if !d[j].is_zero() && !e[k - j].is_zero() {
                acc = &acc + &d[j].mul(&e[k - j])?.mul(&d0_pows[j - 1])?;
            }
        }
        e.push(-acc);
    }
    e.into_iter()
        .enumerate()
        .map(|(k, ek)| inv_power(&d[0], k as u32 + 1)?.mul_poly(&ek))
        .collect()
}

/// Taylor expansion of `f` in `v` about `v = 0`, through `v^order`.
///
/// Fails with [`Error::NonUnitDenominator`] if `f` has a pole at `v = 0`.
pub fn series_expand(f: &RationalFunction, v: VarId, order: usize) -> Result<TruncSeries> {
    let num = poly_coeffs(f.numerator(), v, order)?;
    let mut series = TruncSeries::new(
        v,
        order,
        num.into_iter().map(RationalFunction::from_poly).collect(),
    );
    let mut constant = Vec::new();
    for (g, e) in f.den_factors() {
        if !g.contains(v) {
            constant.push((g.clone(), *e));
            continue;
        }
        let inv = TruncSeries::new(v, order, inverse_coeffs(g, v, order)?);
        for _ in 0..*e {
            series = series.mul(&inv)?;
        }
    }
    if constant.is_empty() {
        return Ok(series);
    }
    series.scale(&RationalFunction::from_factors(
        LaurentPoly::one(),
        constant,
    )?)
}

/// Power series in two variables truncated to the box `x^i y^j` with
/// `i <= order_x`, `j <= order_y`.
#[derive(Clone, Debug, PartialEq)]
pub struct BiSeries {
    vars: (VarId, VarId),
    orders: (usize, usize),
    coeffs: Vec<RationalFunction>,
}

impl BiSeries {
    pub fn zero(vars: (VarId, VarId), orders: (usize, usize)) -> Self {
        BiSeries {
            vars,
            orders,
            coeffs: vec![RationalFunction::zero(); (orders.0 + 1) * (orders.1 + 1)],
        }
    }

    pub fn vars(&self) -> (VarId, VarId) {
        self.vars
    }

    pub fn orders(&self) -> (usize, usize) {
        self.orders
    }

    fn idx(&self, i: usize, j: usize) -> usize {
        i * (self.orders.1 + 1) + j
    }

    /// Coefficient of `x^i y^j`.
    pub fn coeff(&self, i: usize, j: usize) -> &RationalFunction {
        &self.coeffs[self.idx(i, j)]
    }

    fn set(&mut self, i: usize, j: usize, c: RationalFunction) {
        let k = self.idx(i, j);
        self.coeffs[k] = c;
    }

    pub fn mul(&self, other: &BiSeries) -> Result<BiSeries> {
        if self.vars != other.vars || self.orders != other.orders {
            return Err(Error::InvalidInput("incompatible bivariate series".into()));
        }
        let (mx, my) = self.orders;
        let mut out = BiSeries::zero(self.vars, self.orders);
        for i in 0..=mx {
            for j in 0..=my {
                let a = self.coeff(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..=mx - i {
                    for l in 0..=my - j {
                        let b = other.coeff(k, l);
                        if !b.is_zero() {
                            let s = out.coeff(i + k, j + l).add(&a.mul(b)?)?;
                            out.set(i + k, j + l, s);
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &RationalFunction) -> Result<BiSeries> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|a| a.mul(c))
            .collect::<Result<_>>()?;
        Ok(BiSeries {
            vars: self.vars,
            orders: self.orders,
            coeffs,
        })
    }
}

fn poly_box(
    p: &LaurentPoly,
    vars: (VarId, VarId),
    orders: (usize, usize),
) -> Result<Vec<Vec<LaurentPoly>>> {
    let mut out = vec![vec![LaurentPoly::zero(); orders.1 + 1]; orders.0 + 1];
    for (i, row) in poly_coeffs(p, vars.0, orders.0)?.into_iter().enumerate() {
        for (j, c) in poly_coeffs(&row, vars.1, orders.1)?.into_iter().enumerate() {
            out[i][j] = c;
        }
    }
    Ok(out)
}

/// Two-variable analogue of [`inverse_coeffs`]:
/// `e_ij = -sum_{(a,b) != 0} f_ab e_{i-a,j-b} f00^(a+b-1)` and the
/// coefficient is `e_ij / f00^(i+j+1)`.
fn bi_inverse(f: &LaurentPoly, vars: (VarId, VarId), orders: (usize, usize)) -> Result<BiSeries> {
    let fc = poly_box(f, vars, orders)?;
    let f00 = &fc[0][0];
    if f00.is_zero() {
        return Err(Error::NonUnitDenominator(if f.contains(vars.0) {
            vars.0
        } else {
            vars.1
        }));
    }
    let (mx, my) = orders;
    let mut out = BiSeries::zero(vars, orders);
    let unit = f00.unit_inverse();
    let mut pows = vec![LaurentPoly::one()];
    while pows.len() < mx + my + 1 && unit.is_none() {
        let next = pows.last().unwrap().mul(f00)?;
        pows.push(next);
    }
    let mut e = vec![vec![LaurentPoly::zero(); my + 1]; mx + 1];
    for i in 0..=mx {
        for j in 0..=my {
            let value = if i == 0 && j == 0 {
                match &unit {
                    Some(inv) => inv.clone(),
                    None => LaurentPoly::one(),
                }
            } else {
                let mut acc = LaurentPoly::zero();
                for a in 0..=i {
                    for b in 0..=j {
                        if (a == 0 && b == 0) || fc[a][b].is_zero() || e[i - a][j - b].is_zero() {
                            continue;
                        }
                        let term = fc[a][b].mul(&e[i - a][j - b])?;
                        acc = &acc
                            + &match unit {
                                Some(_) => term,
                                None => term.mul(&pows[a + b - 1])?,
                            };
                    }
                }
                match &unit {
                    Some(inv) => -inv.mul(&acc)?,
                    None => -acc,
                }
            };
            e[i][j] = value;
        }
    }
    for (i, row) in e.into_iter().enumerate() {
        for (j, eij) in row.into_iter().enumerate() {
            let c = match unit {
                Some(_) => RationalFunction::from_poly(eij),
                None => inv_power(f00, (i + j + 1) as u32)?.mul_poly(&eij)?,
            };
            out.set(i, j, c);
        }
    }
    Ok(out)
}

/// Joint expansion of `f` about `x = y = 0` truncated to a box.
pub fn bi_series_expand(
    f: &RationalFunction,
    x: VarId,
    y: VarId,
    order_x: usize,
    order_y: usize,
) -> Result<BiSeries> {
    let vars = (x, y);
    let orders = (order_x, order_y);
    let mut series = BiSeries::zero(vars, orders);
    for (i, row) in poly_box(f.numerator(), vars, orders)?
        .into_iter()
        .enumerate()
    {
        for (j, c) in row.into_iter().enumerate() {
            series.set(i, j, RationalFunction::from_poly(c));
        }
    }
    let mut constant = Vec::new();
    for (g, e) in f.den_factors() {
        if !g.contains(x) && !g.contains(y) {
            constant.push((g.clone(), *e));
            continue;
        }
        let inv = bi_inverse(g, vars, orders)?;
        for _ in 0..*e {
            series = series.mul(&inv)?;
        }
    }
    if constant.is_empty() {
        return Ok(series);
    }
    series.scale(&RationalFunction::from_factors(
        LaurentPoly::one(),
        constant,
    )?)
}

/// Coefficient of `x^i y^j` by expanding in `x` first and then expanding the
/// resulting coefficient in `y`. Independent of [`bi_series_expand`].
pub fn iterated_coeff(
    f: &RationalFunction,
    x: VarId,
    y: VarId,
    i: usize,
    j: usize,
) -> Result<RationalFunction> {
    let sx = series_expand(f, x, i)?;
    let sy = series_expand(sx.coeff(i), y, j)?;
    Ok(sy.coeff(j).clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rf_equal, Rational};
    use VarId::*;

    fn geometric(c: LaurentPoly, v: VarId) -> RationalFunction {
        // 1 / (1 - c v)
        let den = &LaurentPoly::one() - &c.mul(&LaurentPoly::var(v)).unwrap();
        RationalFunction::fraction(LaurentPoly::one(), &den).unwrap()
    }

    #[test]
    fn geometric_series_coefficients() {
        let q = LaurentPoly::term(Rational::one(), &[(R, 2)]);
        let s = series_expand(&geometric(q, T), T, 5).unwrap();
        for k in 0..=5 {
            let want = LaurentPoly::term(Rational::one(), &[(R, 2 * k as i32)]);
            assert_eq!(s.coeff(k).as_poly(), Some(&want));
        }
    }

    #[test]
    fn non_unit_constant_term() {
        // 1 / (a - t) = sum t^k / a^(k+1)
        let den = &LaurentPoly::var(A) - &LaurentPoly::var(T);
        let den2 = &LaurentPoly::var(A) + &LaurentPoly::one();
        let f = RationalFunction::fraction(LaurentPoly::one(), &(&den2 - &LaurentPoly::var(T)))
            .unwrap();
        let s = series_expand(&f, T, 3).unwrap();
        let want = RationalFunction::fraction(LaurentPoly::one(), &den2.pow(4).unwrap()).unwrap();
        assert!(rf_equal(s.coeff(3), &want).unwrap());
        let g = RationalFunction::fraction(LaurentPoly::one(), &den).unwrap();
        let s = series_expand(&g, T, 2).unwrap();
        assert_eq!(
            s.coeff(2).as_poly(),
            Some(&LaurentPoly::term(Rational::one(), &[(A, -3)]))
        );
    }

    #[test]
    fn pole_is_reported() {
        let f = RationalFunction::fraction(LaurentPoly::one(), &LaurentPoly::var(T)).unwrap();
        // a monomial denominator is a unit and lands in the numerator as t^-1
        assert_eq!(series_expand(&f, T, 2), Err(Error::NonUnitDenominator(T)));
        let g = RationalFunction::fraction(
            LaurentPoly::one(),
            &(&LaurentPoly::var(T) + &LaurentPoly::term(Rational::one(), &[(T, 2)])),
        )
        .unwrap();
        assert_eq!(series_expand(&g, T, 2), Err(Error::NonUnitDenominator(T)));
    }

    #[test]
    fn bivariate_matches_iterated() {
        // 1 / ((1 - a x)(1 - x y)(2 + a - y))
        let one = LaurentPoly::one();
        let x = LaurentPoly::var(X);
        let y = LaurentPoly::var(Y);
        let a = LaurentPoly::var(A);
        let f1 = &one - &a.mul(&x).unwrap();
        let f2 = &one - &x.mul(&y).unwrap();
        let f3 = &(&LaurentPoly::int(2) + &a) - &y;
        let f = RationalFunction::from_factors(&one + &y, [(f1, 1), (f2, 2), (f3, 1)]).unwrap();
        let bi = bi_series_expand(&f, X, Y, 3, 3).unwrap();
        for i in 0..=3 {
            for j in 0..=3 {
                let it = iterated_coeff(&f, X, Y, i, j).unwrap();
                assert!(rf_equal(bi.coeff(i, j), &it).unwrap(), "({i},{j})");
            }
        }
    }
}
