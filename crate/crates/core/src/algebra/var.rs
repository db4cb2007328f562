use core::cmp::Ordering;
use core::fmt;

pub const NVARS: usize = 8;

/// The fixed set of indeterminates.
///
/// | var | meaning |
/// |-----|---------|
/// | `C` | `chi_0(varpi)` |
/// | `A` | square root of `chi_1(varpi)` |
/// | `B` | square root of `chi_2(varpi)` |
/// | `R` | square root of the residue cardinality `q` |
/// | `U` | `nu(Pi_1)` at a split place |
/// | `T` | `q^{-s}` |
/// | `X`, `Y` | the two arguments of the Bessel generating function |
///
/// The declaration order is the variable order used by the monomial order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VarId {
    C = 0,
    A = 1,
    B = 2,
    R = 3,
    U = 4,
    T = 5,
    X = 6,
    Y = 7,
}

impl VarId {
    pub const ALL: [VarId; NVARS] = [
        VarId::C,
        VarId::A,
        VarId::B,
        VarId::R,
        VarId::U,
        VarId::T,
        VarId::X,
        VarId::Y,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    /// Lowercase name used by the text format.
    pub fn name(self) -> &'static str {
        match self {
            VarId::C => "c",
            VarId::A => "a",
            VarId::B => "b",
            VarId::R => "r",
            VarId::U => "u",
            VarId::T => "t",
            VarId::X => "x",
            VarId::Y => "y",
        }
    }

    pub fn from_name(name: &str) -> Option<VarId> {
        VarId::ALL
            .into_iter()
            .find(|v| v.name().eq_ignore_ascii_case(name))
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Exponent vector of a Laurent monomial, one signed exponent per [`VarId`].
///
/// Ordered graded-lexicographically: first by total degree, then
/// lexicographically with `C` most significant. The order is compatible with
/// multiplication, which the polynomial kernel relies on.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial(pub [i32; NVARS]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; NVARS]);

    pub fn var(v: VarId, e: i32) -> Self {
        let mut m = Monomial::ONE;
        m.0[v.index()] = e;
        m
    }

    pub fn from_pairs(pairs: &[(VarId, i32)]) -> Self {
        let mut m = Monomial::ONE;
        for &(v, e) in pairs {
            m.0[v.index()] += e;
        }
        m
    }

    pub fn exp(&self, v: VarId) -> i32 {
        self.0[v.index()]
    }

    pub fn with_exp(mut self, v: VarId, e: i32) -> Self {
        self.0[v.index()] = e;
        self
    }

    pub fn is_one(&self) -> bool {
        self.0 == [0; NVARS]
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|&e| i64::from(e)).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        for (o, e) in out.0.iter_mut().zip(other.0.iter()) {
            *o += e;
        }
        out
    }

    pub fn inv(&self) -> Monomial {
        let mut out = *self;
        for e in out.0.iter_mut() {
            *e = -*e;
        }
        out
    }

    pub fn pow(&self, k: i32) -> Monomial {
        let mut out = *self;
        for e in out.0.iter_mut() {
            *e *= k;
        }
        out
    }

    /// Componentwise minimum.
    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        for (o, e) in out.0.iter_mut().zip(other.0.iter()) {
            *o = (*o).min(*e);
        }
        out
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for v in VarId::ALL {
            let e = self.exp(v);
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grlex_compares_degree_first() {
        let x2 = Monomial::var(VarId::X, 2);
        let cab = Monomial::from_pairs(&[(VarId::C, 1), (VarId::A, 1)]);
        assert_eq!(cab, Monomial::from_pairs(&[(VarId::A, 1), (VarId::C, 1)]));
        // equal degree: lex with C most significant
        assert!(cab > x2);
        assert!(Monomial::var(VarId::T, 3) > cab);
        assert!(Monomial::var(VarId::R, -3) < Monomial::ONE);
    }

    #[test]
    fn order_is_multiplicative() {
        let a = Monomial::from_pairs(&[(VarId::A, 2), (VarId::T, -1)]);
        let b = Monomial::from_pairs(&[(VarId::B, 1)]);
        let c = Monomial::from_pairs(&[(VarId::R, -4), (VarId::X, 1)]);
        assert_eq!(a.cmp(&b), a.mul(&c).cmp(&b.mul(&c)));
    }
}
