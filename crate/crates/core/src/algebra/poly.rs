use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Neg, Sub};
use core::sync::atomic::{AtomicUsize, Ordering as AtomicOrdering};

use super::{Monomial, Rational, VarId, NVARS};
use crate::{Error, Result};

/// Default ceiling on the number of terms any product may produce.
pub const DEFAULT_TERM_LIMIT: usize = 2_000_000;

static TERM_LIMIT: AtomicUsize = AtomicUsize::new(DEFAULT_TERM_LIMIT);

/// Sets the process-wide term ceiling checked by every polynomial product.
pub fn set_term_limit(limit: usize) {
    TERM_LIMIT.store(limit, AtomicOrdering::Relaxed);
}

pub fn term_limit() -> usize {
    TERM_LIMIT.load(AtomicOrdering::Relaxed)
}

fn check_limit(terms: usize, limit: usize) -> Result<()> {
    if terms > limit {
        Err(Error::ResourceLimit { terms, limit })
    } else {
        Ok(())
    }
}

pub type Term = (Monomial, Rational);

/// Sparse multivariate Laurent polynomial with rational coefficients.
///
/// Terms are kept sorted by ascending monomial order with no zero
/// coefficients, so structural equality is mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct LaurentPoly {
    terms: Vec<Term>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(Monomial::ONE, c)
    }

    pub fn int(n: i64) -> Self {
        Self::constant(Rational::from_integer(n))
    }

    pub fn var(v: VarId) -> Self {
        Self::monomial(Monomial::var(v, 1), Rational::one())
    }

    pub fn monomial(m: Monomial, c: Rational) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            LaurentPoly {
                terms: alloc::vec![(m, c)],
            }
        }
    }

    /// `c * prod v^e`.
    pub fn term(c: Rational, pairs: &[(VarId, i32)]) -> Self {
        Self::monomial(Monomial::from_pairs(pairs), c)
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates.
    pub fn from_terms(mut terms: Vec<Term>) -> Self {
        terms.sort_unstable_by_key(|a| a.0);
        let mut out: Vec<Term> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some(last) if last.0 == m => {
                    last.1 += &c;
                    if last.1.is_zero() {
                        out.pop();
                    }
                }
                _ => {
                    if !c.is_zero() {
                        out.push((m, c));
                    }
                }
            }
        }
        LaurentPoly { terms: out }
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    /// The value if the polynomial has no variables (zero included).
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    /// `(c, m)` if the polynomial is a single term, i.e. a unit of the
    /// Laurent ring.
    pub fn as_unit(&self) -> Option<(&Rational, &Monomial)> {
        match self.terms.as_slice() {
            [(m, c)] => Some((c, m)),
            _ => None,
        }
    }

    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1
    }

    /// Inverse of a unit.
    pub fn unit_inverse(&self) -> Option<LaurentPoly> {
        let (c, m) = self.as_unit()?;
        Some(Self::monomial(m.inv(), c.inv().ok()?))
    }

    /// Leading term under the graded-lex order.
    pub fn leading(&self) -> Option<&Term> {
        self.terms.last()
    }

    pub fn contains(&self, v: VarId) -> bool {
        self.terms.iter().any(|(m, _)| m.exp(v) != 0)
    }

    /// Smallest and largest exponent of `v`, or `None` for zero.
    pub fn exponent_range(&self, v: VarId) -> Option<(i32, i32)> {
        let mut it = self.terms.iter().map(|(m, _)| m.exp(v));
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), e| (lo.min(e), hi.max(e))))
    }

    pub fn scale(&self, c: &Rational) -> LaurentPoly {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> LaurentPoly {
        if c.is_zero() {
            return Self::zero();
        }
        // the monomial order is multiplicative, so sortedness is preserved
        LaurentPoly {
            terms: self.terms.iter().map(|(t, a)| (t.mul(m), a * c)).collect(),
        }
    }

    /// Exact product, failing with [`Error::ResourceLimit`] when the result or
    /// an intermediate partial sum exceeds the term ceiling.
    pub fn mul(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        self.mul_limited(other, term_limit())
    }

    /// [`LaurentPoly::mul`] with an explicit term ceiling.
    pub fn mul_limited(&self, other: &LaurentPoly, limit: usize) -> Result<LaurentPoly> {
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero());
        }
        let (small, big) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        if let [(m, c)] = small.terms.as_slice() {
            return Ok(big.mul_term(m, c));
        }
        // Binary-counter merge of the row products keeps peak memory near the
        // size of the result rather than `len * len`.
        let mut stack: Vec<(u32, Vec<Term>)> = Vec::new();
        for (m, c) in &small.terms {
            let mut level = 0u32;
            let mut row = big.mul_term(m, c).terms;
            while let Some((top_level, _)) = stack.last() {
                if *top_level != level {
                    break;
                }
                let (_, top) = stack.pop().expect("nonempty stack");
                row = merge(&top, &row, false);
                check_limit(row.len(), limit)?;
                level += 1;
            }
            stack.push((level, row));
        }
        let mut acc: Vec<Term> = Vec::new();
        while let Some((_, row)) = stack.pop() {
            acc = merge(&acc, &row, false);
            check_limit(acc.len(), limit)?;
        }
        Ok(LaurentPoly { terms: acc })
    }

    pub fn pow(&self, e: u32) -> Result<LaurentPoly> {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(result)
    }

    pub fn product<'a>(factors: impl IntoIterator<Item = &'a LaurentPoly>) -> Result<LaurentPoly> {
        factors
            .into_iter()
            .try_fold(Self::one(), |acc, f| acc.mul(f))
    }

    /// Groups terms by the exponent of `v`; the returned polynomials no longer
    /// contain `v`. Exponents ascend.
    pub fn coefficients_in(&self, v: VarId) -> Vec<(i32, LaurentPoly)> {
        let mut buckets: Vec<(i32, Vec<Term>)> = Vec::new();
        for (m, c) in &self.terms {
            let e = m.exp(v);
            let stripped = m.with_exp(v, 0);
            match buckets.iter_mut().find(|(k, _)| *k == e) {
                Some((_, ts)) => ts.push((stripped, c.clone())),
                None => buckets.push((e, alloc::vec![(stripped, c.clone())])),
            }
        }
        buckets.sort_unstable_by_key(|(k, _)| *k);
        buckets
            .into_iter()
            .map(|(k, ts)| (k, LaurentPoly::from_terms(ts)))
            .collect()
    }

    /// Coefficient of `v^k`, with `v` removed.
    pub fn coefficient_in(&self, v: VarId, k: i32) -> LaurentPoly {
        LaurentPoly::from_terms(
            self.terms
                .iter()
                .filter(|(m, _)| m.exp(v) == k)
                .map(|(m, c)| (m.with_exp(v, 0), c.clone()))
                .collect(),
        )
    }

    /// Writes `self = c * m * p` with `p` monic and free of monomial content
    /// (every variable's minimum exponent is zero). `None` for zero.
    pub fn normalize(&self) -> Option<(Rational, Monomial, LaurentPoly)> {
        let (first, rest) = self.terms.split_first()?;
        let content = rest.iter().fold(first.0, |acc, (m, _)| acc.gcd(m));
        let lead = self.leading().expect("nonzero").1.clone();
        let scale = lead.inv().expect("nonzero leading coefficient");
        let inv_content = content.inv();
        let p = LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.mul(&inv_content), c * &scale))
                .collect(),
        };
        Some((lead, content, p))
    }

    /// Evaluates at a point where every variable has a value.
    pub fn eval(&self, point: &[Rational; NVARS]) -> Result<Rational> {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for v in VarId::ALL {
                let e = m.exp(v);
                if e != 0 {
                    let x = &point[v.index()];
                    if e < 0 && x.is_zero() {
                        return Err(Error::ZeroSubstitutionIntoNegativePower(v));
                    }
                    t *= &x.pow(e)?;
                }
            }
            acc += &t;
        }
        Ok(acc)
    }
}

fn merge(a: &[Term], b: &[Term], negate_b: bool) -> Vec<Term> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let take_b = |c: &Rational| if negate_b { -c } else { c.clone() };
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            core::cmp::Ordering::Less => {
                out.push(a[i].clone());
                i += 1;
            }
            core::cmp::Ordering::Greater => {
                out.push((b[j].0, take_b(&b[j].1)));
                j += 1;
            }
            core::cmp::Ordering::Equal => {
                let c = if negate_b {
                    &a[i].1 - &b[j].1
                } else {
                    &a[i].1 + &b[j].1
                };
                if !c.is_zero() {
                    out.push((a[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend(b[j..].iter().map(|(m, c)| (*m, take_b(c))));
    out
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        LaurentPoly {
            terms: merge(&self.terms, &rhs.terms, false),
        }
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        LaurentPoly {
            terms: merge(&self.terms, &rhs.terms, true),
        }
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        &self + &rhs
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl From<Rational> for LaurentPoly {
    fn from(c: Rational) -> Self {
        LaurentPoly::constant(c)
    }
}

impl From<VarId> for LaurentPoly {
    fn from(v: VarId) -> Self {
        LaurentPoly::var(v)
    }
}

/// Plain-text form: terms in descending monomial order, e.g.
/// `a^2*t - 3/2*r^-3*x + 1`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let a = c.abs();
            if m.is_one() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{a}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
