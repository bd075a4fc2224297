use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{One, Zero};

use super::poly::Poly;
use crate::error::{Error, Result};

/// Degree of a motive in `L`, with `deg L^{1/r} = 1/r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(Rational64),
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => f.write_str("-inf"),
            Degree::Finite(q) => write!(f, "{q}"),
        }
    }
}

/// An exact rational function in `u = L^{1/r}` with integer coefficients.
///
/// Values are kept reduced: the numerator and denominator share no
/// non-unit factor in `Z[u]` and the denominator's leading coefficient is
/// positive. Values over different root indices are promoted to the lcm
/// before arithmetic or comparison, so `L` over `r = 1` equals `u^2` over
/// `r = 2`.
#[derive(Clone, Debug)]
pub struct MotiveValue {
    root_index: u32,
    num: Poly,
    den: Poly,
}

impl MotiveValue {
    pub fn new(root_index: u32, num: Poly, den: Poly) -> Result<Self> {
        assert!(root_index > 0, "root index must be positive");
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduced(root_index, num, den))
    }

    fn reduced(root_index: u32, num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return MotiveValue {
                root_index,
                num,
                den: Poly::one(),
            };
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        if den.lead_sign() == Ordering::Less {
            num = num.neg();
            den = den.neg();
        }
        MotiveValue {
            root_index,
            num,
            den,
        }
    }

    pub fn from_poly(root_index: u32, num: Poly) -> Self {
        assert!(root_index > 0, "root index must be positive");
        MotiveValue {
            root_index,
            num,
            den: Poly::one(),
        }
    }

    /// A polynomial in `L` with integer coefficients, constant term first.
    pub fn from_l_coeffs(coeffs: &[i64]) -> Self {
        Self::from_poly(1, Poly::from_i64s(coeffs))
    }

    pub fn zero() -> Self {
        Self::from_poly(1, Poly::zero())
    }

    pub fn one() -> Self {
        Self::integer(1)
    }

    pub fn integer(n: impl Into<BigInt>) -> Self {
        Self::from_poly(1, Poly::constant(n))
    }

    /// The class `L` of the affine line.
    pub fn l() -> Self {
        Self::from_poly(1, Poly::monomial(1, 1))
    }

    /// `L^e` for a rational exponent `e`; the root index is the
    /// denominator of `e`.
    pub fn l_power(e: Rational64) -> Self {
        let r = *e.denom() as u32;
        let k = e.numer().unsigned_abs() as usize;
        let mono = Poly::monomial(1, k);
        if *e.numer() >= 0 {
            Self::from_poly(r, mono)
        } else {
            MotiveValue {
                root_index: r,
                num: Poly::one(),
                den: mono,
            }
        }
    }

    /// The factor `(L - 1)/(L^a - 1)`, written `(u^r - 1)/(u^s - 1)` with
    /// `a = s/r` in lowest terms. It sums `(L - 1) * sum_{n>=1} L^{-an}`,
    /// which converges only for `a > 0`.
    pub fn geometric_term(a: Rational64) -> Result<Self> {
        if *a.numer() <= 0 {
            return Err(Error::NonKlt(a.to_string()));
        }
        let r = *a.denom() as usize;
        let s = *a.numer() as usize;
        let num = Poly::monomial(1, r).sub(&Poly::one());
        let den = Poly::monomial(1, s).sub(&Poly::one());
        Ok(Self::reduced(r as u32, num, den))
    }

    pub fn root_index(&self) -> u32 {
        self.root_index
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.degree() == Some(0)
    }

    /// Re-expresses the value over root index `r`, a multiple of the
    /// current one.
    pub fn promoted(&self, r: u32) -> Self {
        assert!(
            r % self.root_index == 0,
            "root index {r} is not a multiple of {}",
            self.root_index
        );
        let k = (r / self.root_index) as usize;
        MotiveValue {
            root_index: r,
            num: self.num.inflate(k),
            den: self.den.inflate(k),
        }
    }

    /// The same value over the smallest root index that expresses it.
    pub fn normalized(&self) -> Self {
        let step = self
            .num
            .support()
            .chain(self.den.support())
            .fold(0usize, |g, (k, _)| g.gcd(&k));
        let r = self.root_index as usize;
        let k = if step == 0 { r } else { step.gcd(&r) };
        if k <= 1 {
            return self.clone();
        }
        let deflate = |p: &Poly| {
            Poly::from_coeffs(p.coeffs().iter().step_by(k).cloned().collect())
        };
        MotiveValue {
            root_index: (r / k) as u32,
            num: deflate(&self.num),
            den: deflate(&self.den),
        }
    }

    fn common(&self, other: &Self) -> (Self, Self) {
        let r = self.root_index.lcm(&other.root_index);
        (self.promoted(r), other.promoted(r))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (a, b) = self.common(other);
        Ok(Self::reduced(
            a.root_index,
            a.num.mul(&b.den),
            a.den.mul(&b.num),
        ))
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, e: i32) -> Result<Self> {
        let base = if e < 0 {
            Self::one().checked_div(self)?
        } else {
            self.clone()
        };
        let mut acc = Self::from_poly(self.root_index, Poly::one());
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// `(deg num - deg den) / r`, or `NegInfinity` for zero.
    pub fn degree(&self) -> Degree {
        match (self.num.degree(), self.den.degree()) {
            (Some(n), Some(d)) => Degree::Finite(Rational64::new(
                n as i64 - d as i64,
                self.root_index as i64,
            )),
            _ => Degree::NegInfinity,
        }
    }

    /// Order in `Z((L^{-1/r}))`: compare the highest-degree coefficient of
    /// `self - other`. Exact, no truncation involved.
    pub fn compare(&self, other: &Self) -> Ordering {
        let (a, b) = self.common(other);
        // both denominators have positive leading coefficient
        a.num.mul(&b.den).sub(&b.num.mul(&a.den)).lead_sign()
    }

    pub fn is_positive(&self) -> bool {
        self.num.lead_sign() == Ordering::Greater
    }
}

impl PartialEq for MotiveValue {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = self.common(other);
        a.num == b.num && a.den == b.den
    }
}

impl Eq for MotiveValue {}

impl Hash for MotiveValue {
    fn hash<H: Hasher>(&self, state: &mut H) {
        let n = self.normalized();
        n.root_index.hash(state);
        n.num.hash(state);
        n.den.hash(state);
    }
}

impl PartialOrd for MotiveValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for MotiveValue {
    fn cmp(&self, other: &Self) -> Ordering {
        self.compare(other)
    }
}

impl Default for MotiveValue {
    fn default() -> Self {
        Self::zero()
    }
}

impl Zero for MotiveValue {
    fn zero() -> Self {
        MotiveValue::zero()
    }

    fn is_zero(&self) -> bool {
        MotiveValue::is_zero(self)
    }
}

impl One for MotiveValue {
    fn one() -> Self {
        MotiveValue::one()
    }
}

impl<'a> Add<&'a MotiveValue> for &'a MotiveValue {
    type Output = MotiveValue;

    fn add(self, other: &MotiveValue) -> MotiveValue {
        let (a, b) = self.common(other);
        if a.den == b.den {
            return MotiveValue::reduced(a.root_index, a.num.add(&b.num), a.den);
        }
        MotiveValue::reduced(
            a.root_index,
            a.num.mul(&b.den).add(&b.num.mul(&a.den)),
            a.den.mul(&b.den),
        )
    }
}

impl<'a> Sub<&'a MotiveValue> for &'a MotiveValue {
    type Output = MotiveValue;

    fn sub(self, other: &MotiveValue) -> MotiveValue {
        self + &(-other)
    }
}

impl<'a> Mul<&'a MotiveValue> for &'a MotiveValue {
    type Output = MotiveValue;

    fn mul(self, other: &MotiveValue) -> MotiveValue {
        let (a, b) = self.common(other);
        MotiveValue::reduced(a.root_index, a.num.mul(&b.num), a.den.mul(&b.den))
    }
}

/// Panics on division by zero; use [`MotiveValue::checked_div`] otherwise.
impl<'a> Div<&'a MotiveValue> for &'a MotiveValue {
    type Output = MotiveValue;

    fn div(self, other: &MotiveValue) -> MotiveValue {
        self.checked_div(other).expect("division by zero motive")
    }
}

impl Neg for &MotiveValue {
    type Output = MotiveValue;

    fn neg(self) -> MotiveValue {
        MotiveValue {
            root_index: self.root_index,
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
}

impl Neg for MotiveValue {
    type Output = MotiveValue;

    fn neg(self) -> MotiveValue {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<MotiveValue> for MotiveValue {
            type Output = MotiveValue;
            fn $m(self, other: MotiveValue) -> MotiveValue {
                (&self).$m(&other)
            }
        }
        impl<'a> $tr<&'a MotiveValue> for MotiveValue {
            type Output = MotiveValue;
            fn $m(self, other: &MotiveValue) -> MotiveValue {
                (&self).$m(other)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl std::iter::Sum for MotiveValue {
    fn sum<I: Iterator<Item = MotiveValue>>(iter: I) -> Self {
        iter.fold(MotiveValue::zero(), |acc, x| acc + x)
    }
}
