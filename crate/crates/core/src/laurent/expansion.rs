use std::fmt;

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{Signed, Zero};

use super::motive::MotiveValue;
use super::poly::Poly;
use super::text::write_monomial;

/// Finite head of the expansion of a motive at `L -> infinity`.
///
/// Terms are `(exponent, coefficient)` with strictly decreasing exponents
/// and nonzero coefficients; every omitted term has exponent `< cutoff`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentExpansion {
    root_index: u32,
    terms: Vec<(Rational64, BigRational)>,
    cutoff: Rational64,
}

/// The same series after the Poincaré realization `L -> T^2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoincareSeries {
    terms: Vec<(Rational64, BigRational)>,
    cutoff: Rational64,
}

fn ceil_mul(q: Rational64, r: u32) -> i64 {
    (q * Rational64::from_integer(r as i64)).ceil().to_integer()
}

/// Long division of `f` in descending powers of `u = L^{1/r}`, stopping
/// below exponent `cutoff`.
pub fn expand(f: &MotiveValue, cutoff: Rational64) -> LaurentExpansion {
    let r = f.root_index();
    let num = f.numerator();
    let den = f.denominator();
    let mut terms = Vec::new();
    if let (Some(dn), Some(dd)) = (num.degree(), den.degree()) {
        let top = dn as i64 - dd as i64;
        let bottom = ceil_mul(cutoff, r);
        if top >= bottom {
            let count = (top - bottom + 1) as usize;
            let rev = |p: &Poly, deg: usize, j: usize| -> BigInt {
                if j <= deg {
                    p.coeff(deg - j)
                } else {
                    BigInt::zero()
                }
            };
            let d0 = BigRational::from_integer(den.lead().unwrap().clone());
            let mut series: Vec<BigRational> = Vec::with_capacity(count);
            for j in 0..count {
                let mut acc = BigRational::from_integer(rev(num, dn, j));
                for i in 1..=j.min(dd) {
                    let di = rev(den, dd, i);
                    if !di.is_zero() {
                        acc -= BigRational::from_integer(di) * &series[j - i];
                    }
                }
                series.push(acc / &d0);
            }
            for (j, c) in series.into_iter().enumerate() {
                if !c.is_zero() {
                    terms.push((Rational64::new(top - j as i64, r as i64), c));
                }
            }
        }
    }
    LaurentExpansion {
        root_index: r,
        terms,
        cutoff,
    }
}

/// Poincaré realization of the expansion of `f`: every exponent doubles.
pub fn poincare(f: &MotiveValue, cutoff: Rational64) -> PoincareSeries {
    expand(f, cutoff).to_poincare()
}

impl LaurentExpansion {
    pub fn root_index(&self) -> u32 {
        self.root_index
    }

    pub fn terms(&self) -> &[(Rational64, BigRational)] {
        &self.terms
    }

    pub fn cutoff(&self) -> Rational64 {
        self.cutoff
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Option<&(Rational64, BigRational)> {
        self.terms.first()
    }

    /// Terms with integer coefficients, or `None` if some coefficient is a
    /// proper fraction.
    pub fn integer_terms(&self) -> Option<Vec<(Rational64, BigInt)>> {
        self.terms
            .iter()
            .map(|(e, c)| c.is_integer().then(|| (*e, c.to_integer())))
            .collect()
    }

    /// Keeps only terms with exponent `>= bound`.
    pub fn at_least(&self, bound: Rational64) -> Vec<(Rational64, BigRational)> {
        self.terms.iter().filter(|(e, _)| *e >= bound).cloned().collect()
    }

    /// Sum of the retained terms as an exact motive (only when every
    /// coefficient is an integer).
    pub fn truncated_sum(&self) -> Option<MotiveValue> {
        let terms = self.integer_terms()?;
        Some(
            terms
                .into_iter()
                .map(|(e, c)| MotiveValue::l_power(e) * MotiveValue::integer(c))
                .sum(),
        )
    }

    pub fn to_poincare(&self) -> PoincareSeries {
        let two = Rational64::from_integer(2);
        PoincareSeries {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e * two, c.clone()))
                .collect(),
            cutoff: self.cutoff * two,
        }
    }
}

impl PoincareSeries {
    pub fn terms(&self) -> &[(Rational64, BigRational)] {
        &self.terms
    }

    pub fn cutoff(&self) -> Rational64 {
        self.cutoff
    }
}

fn write_series(
    f: &mut fmt::Formatter<'_>,
    symbol: char,
    terms: &[(Rational64, BigRational)],
    cutoff: Rational64,
) -> fmt::Result {
    for (i, (e, c)) in terms.iter().enumerate() {
        let neg = c.is_negative();
        match (i, neg) {
            (0, true) => f.write_str("-")?,
            (0, false) => {}
            (_, true) => f.write_str(" - ")?,
            (_, false) => f.write_str(" + ")?,
        }
        let abs = c.abs();
        if abs.is_integer() {
            write_monomial(f, symbol, &abs.to_integer(), *e)?;
        } else {
            write!(f, "({abs})")?;
            if !e.is_zero() {
                f.write_str("*")?;
                write_monomial(f, symbol, &BigInt::from(1), *e)?;
            }
        }
    }
    if terms.is_empty() {
        f.write_str("0")?;
    }
    write!(f, " + O({symbol}^(<{cutoff}))")
}

impl fmt::Display for LaurentExpansion {
    /// The trailing `O(L^(<c))` stands for the omitted exponents below `c`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_series(f, 'L', &self.terms, self.cutoff)
    }
}

impl fmt::Display for PoincareSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_series(f, 'T', &self.terms, self.cutoff)
    }
}
