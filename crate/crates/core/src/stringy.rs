//! Stringy motives from resolution data.
//!
//! Two independent evaluation routes are provided: [`batyrev_snc`] sums
//! over the strata `E_J°` of an snc divisor, and [`stringy_local`] sums
//! over the vertices and edges of a (quotient) dual graph. On a trivial
//! action they must agree.

use std::fmt;

use num_bigint::BigInt;
use num_rational::Rational64;
use num_traits::Zero;

use crate::dualgraph::{validate, ResolutionGraph};
use crate::equivariant::{modified_minimal_resolution, quotient, GraphAction, QuotientGraph};
use crate::error::{Error, Result};
use crate::laurent::{expand, Degree, MotiveValue};

/// One stratum `E_J°`: its class and the discrepancies of the `E_j`, `j ∈ J`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stratum {
    pub divisors: Vec<usize>,
    pub class: MotiveValue,
    pub discrepancies: Vec<Rational64>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StratumData {
    pub strata: Vec<Stratum>,
}

impl StratumData {
    /// Stratification of the fibre over the singular point of a surface
    /// whose exceptional curves form the dual graph `g`.
    ///
    /// `E_∅°` meets the fibre only when there are no exceptional curves
    /// (the germ is smooth and the fibre is the point itself). `E_i°` is a
    /// `P^1` minus one point per neighbour; `E_{i,j}°` is one point for an
    /// edge. Triple intersections are empty. Strata with zero class are
    /// omitted.
    pub fn local_tree(g: &ResolutionGraph) -> Result<Self> {
        let a = g
            .discrepancies()
            .ok_or_else(|| Error::MissingData("log discrepancies are not all set".into()))?;
        let mut strata = Vec::new();
        if g.is_empty() {
            strata.push(Stratum {
                divisors: Vec::new(),
                class: MotiveValue::one(),
                discrepancies: Vec::new(),
            });
        }
        for i in 0..g.len() {
            let class = MotiveValue::l() + MotiveValue::integer(1 - g.degree(i) as i64);
            if !class.is_zero() {
                strata.push(Stratum {
                    divisors: vec![i],
                    class,
                    discrepancies: vec![a[i]],
                });
            }
        }
        for i in 0..g.len() {
            for j in i + 1..g.len() {
                if g.has_edge(i, j) {
                    strata.push(Stratum {
                        divisors: vec![i, j],
                        class: MotiveValue::one(),
                        discrepancies: vec![a[i], a[j]],
                    });
                }
            }
        }
        Ok(StratumData { strata })
    }
}

/// `sum_J {E_J°} prod_{j in J} (L - 1)/(L^{a_j} - 1)`.
pub fn batyrev_snc(data: &StratumData) -> Result<MotiveValue> {
    let mut total = MotiveValue::zero();
    for s in &data.strata {
        let mut term = s.class.clone();
        for &a in &s.discrepancies {
            term = term * MotiveValue::geometric_term(a)?;
        }
        total = total + term;
    }
    Ok(total)
}

/// `sum_ι (L + m_ι) (L-1)/(L^{a_ι}-1) + sum_{ι-κ} (L-1)^2/((L^{a_ι}-1)(L^{a_κ}-1))`.
///
/// An empty quotient graph is the smooth germ, whose local motive is 1.
pub fn stringy_local(q: &QuotientGraph) -> Result<MotiveValue> {
    if q.is_empty() {
        return Ok(MotiveValue::one());
    }
    let factors = q
        .vertices()
        .iter()
        .map(|v| MotiveValue::geometric_term(v.a))
        .collect::<Result<Vec<_>>>()?;
    let mut total = MotiveValue::zero();
    for (v, f) in q.vertices().iter().zip(&factors) {
        let class = MotiveValue::l() + MotiveValue::integer(v.m);
        total = total + class * f;
    }
    for &(i, j) in q.edges() {
        total = total + &factors[i] * &factors[j];
    }
    Ok(total)
}

/// `M_st(X)/G = {(X \ x)/G} + M_st(X)_x/G`.
pub fn globalize(local: &MotiveValue, smooth_part: &MotiveValue) -> MotiveValue {
    smooth_part + local
}

/// Several singular points: the smooth part plus one local term per orbit
/// representative (each computed with its stabilizer).
pub fn globalize_many(smooth_part: &MotiveValue, locals: &[MotiveValue]) -> MotiveValue {
    locals.iter().fold(smooth_part.clone(), |acc, x| acc + x)
}

/// The full equivariant pipeline: modified minimal resolution, G-normality
/// check, orbit graph and local stringy motive.
pub fn quotient_motive(g: &ResolutionGraph, act: &GraphAction) -> Result<(QuotientGraph, MotiveValue)> {
    validate(g)?;
    let (resolved, action) = modified_minimal_resolution(g, act)?;
    let q = quotient(&resolved, &action)?;
    let m = stringy_local(&q)?;
    Ok((q, m))
}

/// `N` (the part of the expansion with exponents `>= 1`) and `C`, the sum
/// of its coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncationReport {
    root_index: u32,
    terms: Vec<(Rational64, BigInt)>,
    c: BigInt,
}

impl TruncationReport {
    /// `(exponent, coefficient)`, exponents descending in `[1, 2)`.
    pub fn terms(&self) -> &[(Rational64, BigInt)] {
        &self.terms
    }

    pub fn c(&self) -> &BigInt {
        &self.c
    }

    pub fn root_index(&self) -> u32 {
        self.root_index
    }

    pub fn n(&self) -> MotiveValue {
        self.terms
            .iter()
            .map(|(e, c)| MotiveValue::l_power(*e) * MotiveValue::integer(c.clone()))
            .sum()
    }

    pub fn has_nonnegative_coefficients(&self) -> bool {
        self.terms.iter().all(|(_, c)| *c >= BigInt::zero())
    }
}

impl fmt::Display for TruncationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "N = {}, C = {}", self.n(), self.c)
    }
}

pub fn truncation_report(m: &MotiveValue) -> Result<TruncationReport> {
    let one = Rational64::from_integer(1);
    if let Degree::Finite(d) = m.degree() {
        if d >= Rational64::from_integer(2) {
            return Err(Error::DegreeTooLarge(d.to_string()));
        }
    }
    let head = expand(m, one);
    let terms = head
        .integer_terms()
        .ok_or_else(|| Error::NonIntegral(m.to_string()))?;
    let c = terms.iter().fold(BigInt::zero(), |acc, (_, c)| acc + c);
    Ok(TruncationReport {
        root_index: m.root_index(),
        terms,
        c,
    })
}
