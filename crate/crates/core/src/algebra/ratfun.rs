use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use super::{LaurentPoly, Monomial, Rational, VarId, NVARS};
use crate::{Error, Result};

/// A denominator factor together with its multiplicity.
pub type Factor = (LaurentPoly, u32);

/// Quotient of Laurent polynomials with a factored denominator.
///
/// Every denominator factor is monic under the graded-lex order, free of
/// monomial content, and not a unit; units are always absorbed into the
/// numerator. Factors are kept sorted and distinct, so two denominators that
/// are products of the same canonical factors compare equal and addition can
/// use a syntactic least common multiple. No polynomial gcd is ever taken:
/// a fraction may carry a factor that also divides its numerator, and
/// equality is decided by cross-multiplication ([`rf_equal`]).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: LaurentPoly,
    den: Vec<Factor>,
}

/// Splits a nonzero polynomial into a unit and a canonical factor (`None`
/// when the polynomial is itself a unit).
fn canonical_factor(p: &LaurentPoly) -> Result<(Rational, Monomial, Option<LaurentPoly>)> {
    let (c, m, f) = p.normalize().ok_or(Error::ZeroDenominator)?;
    Ok((c, m, if f.is_one() { None } else { Some(f) }))
}

fn insert_factor(den: &mut Vec<Factor>, f: LaurentPoly, e: u32) {
    if e == 0 {
        return;
    }
    match den.binary_search_by(|(g, _)| g.cmp(&f)) {
        Ok(i) => den[i].1 += e,
        Err(i) => den.insert(i, (f, e)),
    }
}

fn lcm(a: &[Factor], b: &[Factor]) -> Vec<Factor> {
    let mut out = a.to_vec();
    for (f, e) in b {
        match out.binary_search_by(|(g, _)| g.cmp(f)) {
            Ok(i) => out[i].1 = out[i].1.max(*e),
            Err(i) => out.insert(i, (f.clone(), *e)),
        }
    }
    out
}

/// Expands `l / d` for `d` dividing `l` factorwise.
fn cofactor(l: &[Factor], d: &[Factor]) -> Result<LaurentPoly> {
    let mut acc = LaurentPoly::one();
    for (f, e) in l {
        let have = d
            .binary_search_by(|(g, _)| g.cmp(f))
            .map(|i| d[i].1)
            .unwrap_or(0);
        if *e > have {
            acc = acc.mul(&f.pow(e - have)?)?;
        }
    }
    Ok(acc)
}

fn expand(den: &[Factor]) -> Result<LaurentPoly> {
    cofactor(den, &[])
}

impl RationalFunction {
    pub fn zero() -> Self {
        RationalFunction {
            num: LaurentPoly::zero(),
            den: Vec::new(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(LaurentPoly::one())
    }

    pub fn from_poly(num: LaurentPoly) -> Self {
        RationalFunction {
            num,
            den: Vec::new(),
        }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(LaurentPoly::constant(c))
    }

    pub fn int(n: i64) -> Self {
        Self::from_poly(LaurentPoly::int(n))
    }

    pub fn var(v: VarId) -> Self {
        Self::from_poly(LaurentPoly::var(v))
    }

    /// `num / den`, failing if `den` is zero.
    pub fn fraction(num: LaurentPoly, den: &LaurentPoly) -> Result<Self> {
        Self::from_factors(num, [(den.clone(), 1)])
    }

    /// `num / prod f^e`; the factors need not be canonical.
    pub fn from_factors(
        num: LaurentPoly,
        factors: impl IntoIterator<Item = Factor>,
    ) -> Result<Self> {
        let mut num = num;
        let mut den = Vec::new();
        for (f, e) in factors {
            if e == 0 {
                continue;
            }
            let (c, m, f) = canonical_factor(&f)?;
            let unit_inv = c.pow(-(e as i32))?;
            num = num.mul_term(&m.pow(-(e as i32)), &unit_inv);
            if let Some(f) = f {
                insert_factor(&mut den, f, e);
            }
        }
        Ok(Self::build(num, den))
    }

    fn build(num: LaurentPoly, den: Vec<Factor>) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let mut rf = RationalFunction { num, den };
        rf.cancel_trivial();
        rf
    }

    /// Cancels a denominator factor that equals the whole numerator up to a
    /// unit. This is the only cancellation performed.
    fn cancel_trivial(&mut self) {
        if self.den.is_empty() || self.num.is_unit() {
            return;
        }
        let Some((c, m, f)) = self.num.normalize() else {
            return;
        };
        if let Ok(i) = self.den.binary_search_by(|(g, _)| g.cmp(&f)) {
            self.num = LaurentPoly::monomial(m, c);
            if self.den[i].1 == 1 {
                self.den.remove(i);
            } else {
                self.den[i].1 -= 1;
            }
        }
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den_factors(&self) -> &[Factor] {
        &self.den
    }

    /// The expanded denominator polynomial.
    pub fn denominator(&self) -> Result<LaurentPoly> {
        expand(&self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_empty() && self.num.is_one()
    }

    /// The numerator when the denominator is trivial.
    pub fn as_poly(&self) -> Option<&LaurentPoly> {
        self.den.is_empty().then_some(&self.num)
    }

    pub fn as_constant(&self) -> Option<Rational> {
        self.as_poly().and_then(LaurentPoly::as_constant)
    }

    pub fn contains(&self, v: VarId) -> bool {
        self.num.contains(v) || self.den.iter().any(|(f, _)| f.contains(v))
    }

    pub fn add(&self, other: &RationalFunction) -> Result<RationalFunction> {
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.den == other.den {
            return Ok(Self::build(&self.num + &other.num, self.den.clone()));
        }
        let l = lcm(&self.den, &other.den);
        let a = self.num.mul(&cofactor(&l, &self.den)?)?;
        let b = other.num.mul(&cofactor(&l, &other.den)?)?;
        Ok(Self::build(&a + &b, l))
    }

    pub fn sub(&self, other: &RationalFunction) -> Result<RationalFunction> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn scale(&self, c: &Rational) -> RationalFunction {
        Self::build(self.num.scale(c), self.den.clone())
    }

    pub fn mul_poly(&self, p: &LaurentPoly) -> Result<RationalFunction> {
        Ok(Self::build(self.num.mul(p)?, self.den.clone()))
    }

    pub fn mul(&self, other: &RationalFunction) -> Result<RationalFunction> {
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero());
        }
        let mut den = self.den.clone();
        for (f, e) in &other.den {
            insert_factor(&mut den, f.clone(), *e);
        }
        Ok(Self::build(self.num.mul(&other.num)?, den))
    }

    pub fn inv(&self) -> Result<RationalFunction> {
        let (c, m, f) = canonical_factor(&self.num)?;
        let num = expand(&self.den)?.mul_term(&m.inv(), &c.inv()?);
        let den = f.map(|f| alloc::vec![(f, 1)]).unwrap_or_default();
        Ok(Self::build(num, den))
    }

    pub fn div(&self, other: &RationalFunction) -> Result<RationalFunction> {
        self.mul(&other.inv()?)
    }

    pub fn powi(&self, e: i32) -> Result<RationalFunction> {
        if e < 0 {
            return self.inv()?.powi(-e);
        }
        let e = e as u32;
        let den = self.den.iter().map(|(f, k)| (f.clone(), k * e)).collect();
        Ok(Self::build(self.num.pow(e)?, den))
    }

    pub fn sum<'a>(
        items: impl IntoIterator<Item = &'a RationalFunction>,
    ) -> Result<RationalFunction> {
        items
            .into_iter()
            .try_fold(Self::zero(), |acc, f| acc.add(f))
    }

    pub fn product<'a>(
        items: impl IntoIterator<Item = &'a RationalFunction>,
    ) -> Result<RationalFunction> {
        items.into_iter().try_fold(Self::one(), |acc, f| acc.mul(f))
    }

    pub fn substitute(&self, bindings: &Bindings) -> Result<RationalFunction> {
        let mut out = substitute(&self.num, bindings)?;
        for (f, e) in &self.den {
            let fs = substitute(f, bindings)?;
            if fs.is_zero() {
                return Err(Error::ZeroDenominator);
            }
            out = out.mul(&fs.inv()?.powi(*e as i32)?)?;
        }
        Ok(out)
    }

    /// Evaluates at a point where every variable has a value.
    pub fn eval(&self, point: &[Rational; NVARS]) -> Result<Rational> {
        let mut value = self.num.eval(point)?;
        for (f, e) in &self.den {
            let d = f.eval(point)?;
            if d.is_zero() {
                return Err(Error::ZeroDenominator);
            }
            value = &value / &d.pow(*e as i32)?;
        }
        Ok(value)
    }
}

/// Exact equality by cross-multiplication over the least common multiple of
/// the two factored denominators.
pub fn rf_equal(f: &RationalFunction, g: &RationalFunction) -> Result<bool> {
    if f == g {
        return Ok(true);
    }
    let l = lcm(&f.den, &g.den);
    let a = f.num.mul(&cofactor(&l, &f.den)?)?;
    let b = g.num.mul(&cofactor(&l, &g.den)?)?;
    Ok(a == b)
}

impl From<LaurentPoly> for RationalFunction {
    fn from(p: LaurentPoly) -> Self {
        RationalFunction::from_poly(p)
    }
}

impl From<Rational> for RationalFunction {
    fn from(c: Rational) -> Self {
        RationalFunction::constant(c)
    }
}

impl From<VarId> for RationalFunction {
    fn from(v: VarId) -> Self {
        RationalFunction::var(v)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() {
            return write!(f, "{}", self.num);
        }
        if self.num.len() > 1 {
            write!(f, "({})", self.num)?;
        } else {
            write!(f, "{}", self.num)?;
        }
        f.write_str(" / ")?;
        let wrap = self.den.len() > 1;
        if wrap {
            f.write_str("(")?;
        }
        for (i, (g, e)) in self.den.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            write!(f, "({g})")?;
            if *e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if wrap {
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Values assigned to some of the variables; unbound variables pass through
/// a substitution unchanged.
#[derive(Clone, Debug, Default)]
pub struct Bindings {
    slots: [Option<RationalFunction>; NVARS],
}

impl Bindings {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn bind(mut self, v: VarId, value: impl Into<RationalFunction>) -> Self {
        self.slots[v.index()] = Some(value.into());
        self
    }

    pub fn get(&self, v: VarId) -> Option<&RationalFunction> {
        self.slots[v.index()].as_ref()
    }
}

enum Binding<'a> {
    Free,
    Zero,
    Unit(&'a Rational, &'a Monomial),
    General(&'a RationalFunction),
}

/// Substitutes rational functions for variables of a Laurent polynomial.
///
/// Unit bindings (a single term) are applied termwise. Any other binding
/// `n/d` is handled over one common denominator `d^max * n^neg`, where `max`
/// and `neg` are the largest positive and negative exponents of its variable.
pub fn substitute(p: &LaurentPoly, bindings: &Bindings) -> Result<RationalFunction> {
    let kinds: Vec<Binding<'_>> = VarId::ALL
        .iter()
        .map(|&v| match bindings.get(v) {
            None => Binding::Free,
            Some(rf) if rf.is_zero() => Binding::Zero,
            Some(rf) => match rf.as_poly().and_then(LaurentPoly::as_unit) {
                Some((c, m)) => Binding::Unit(c, m),
                None => Binding::General(rf),
            },
        })
        .collect();
    let general: Vec<VarId> = VarId::ALL
        .into_iter()
        .filter(|v| matches!(kinds[v.index()], Binding::General(_)))
        .collect();

    let mut groups: BTreeMap<Vec<i32>, Vec<(Monomial, Rational)>> = BTreeMap::new();
    'terms: for (m, c) in p.terms() {
        let mut mono = *m;
        for v in VarId::ALL {
            if !matches!(kinds[v.index()], Binding::Free) {
                mono = mono.with_exp(v, 0);
            }
        }
        let mut coeff = c.clone();
        for v in VarId::ALL {
            let e = m.exp(v);
            match kinds[v.index()] {
                Binding::Free | Binding::General(_) => {}
                _ if e == 0 => {}
                Binding::Zero => {
                    if e < 0 {
                        return Err(Error::ZeroSubstitutionIntoNegativePower(v));
                    }
                    continue 'terms;
                }
                Binding::Unit(uc, um) => {
                    mono = mono.mul(&um.pow(e));
                    coeff *= &uc.pow(e)?;
                }
            }
        }
        let key = general.iter().map(|&v| m.exp(v)).collect();
        groups.entry(key).or_default().push((mono, coeff));
    }

    if general.is_empty() {
        let num = groups
            .into_values()
            .next()
            .map(LaurentPoly::from_terms)
            .unwrap_or_default();
        return Ok(RationalFunction::from_poly(num));
    }

    struct Plan<'a> {
        num: &'a LaurentPoly,
        den: LaurentPoly,
        max_pos: u32,
        max_neg: u32,
    }
    let mut plans = Vec::with_capacity(general.len());
    for (i, &v) in general.iter().enumerate() {
        let Binding::General(rf) = kinds[v.index()] else {
            unreachable!()
        };
        let (mut max_pos, mut max_neg) = (0u32, 0u32);
        for key in groups.keys() {
            let e = key[i];
            if e > 0 {
                max_pos = max_pos.max(e as u32);
            } else {
                max_neg = max_neg.max(e.unsigned_abs());
            }
        }
        plans.push(Plan {
            num: rf.numerator(),
            den: rf.denominator()?,
            max_pos,
            max_neg,
        });
    }

    let mut num = LaurentPoly::zero();
    for (key, terms) in groups {
        let mut part = LaurentPoly::from_terms(terms);
        for (plan, &e) in plans.iter().zip(key.iter()) {
            let n_exp = (e + plan.max_neg as i32) as u32;
            let d_exp = (plan.max_pos as i32 - e) as u32;
            if n_exp > 0 {
                part = part.mul(&plan.num.pow(n_exp)?)?;
            }
            if d_exp > 0 {
                part = part.mul(&plan.den.pow(d_exp)?)?;
            }
        }
        num = &num + &part;
    }

    let mut factors: Vec<Factor> = Vec::new();
    for (plan, &v) in plans.iter().zip(general.iter()) {
        let Binding::General(rf) = kinds[v.index()] else {
            unreachable!()
        };
        for (f, e) in rf.den_factors() {
            factors.push((f.clone(), e * plan.max_pos));
        }
        if plan.max_neg > 0 {
            if plan.num.is_zero() {
                return Err(Error::ZeroSubstitutionIntoNegativePower(v));
            }
            factors.push((plan.num.clone(), plan.max_neg));
        }
    }
    RationalFunction::from_factors(num, factors)
}
