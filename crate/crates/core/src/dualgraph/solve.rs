//! Log discrepancies from self-intersection weights.
//!
//! For smooth rational curves with `E_j^2 = -w_j`, adjunction gives
//! `K . E_j = w_j - 2`. Writing `K = sum_i b_i E_i` on the minimal
//! resolution yields the linear system `sum_i b_i (E_i . E_j) = w_j - 2`,
//! and the log discrepancies are `a_i = 1 + b_i`.

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::ResolutionGraph;
use crate::error::{Error, Result};

/// `E_i . E_j`: `-w_i` on the diagonal, `1` on edges, `0` elsewhere.
pub fn intersection_matrix(g: &ResolutionGraph) -> Result<Vec<Vec<i64>>> {
    let w = g
        .weights()
        .ok_or_else(|| Error::MissingData("self-intersection weights are not all set".into()))?;
    let n = g.len();
    let mut m = vec![vec![0i64; n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = -(w[i] as i64);
    }
    for &(i, j) in g.edges() {
        m[i][j] = 1;
        m[j][i] = 1;
    }
    Ok(m)
}

fn to_big(m: &[Vec<i64>]) -> Vec<Vec<BigRational>> {
    m.iter()
        .map(|row| row.iter().map(|&x| BigRational::from_integer(x.into())).collect())
        .collect()
}

/// Leading principal minors, via fraction-free elimination without
/// pivoting (a zero pivot stops the sequence early).
fn leading_minors(m: &[Vec<i64>]) -> Vec<BigInt> {
    let n = m.len();
    let mut a: Vec<Vec<BigInt>> = m
        .iter()
        .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut minors = Vec::with_capacity(n);
    let mut prev = BigInt::one();
    for k in 0..n {
        let pivot = a[k][k].clone();
        minors.push(pivot.clone());
        if pivot.is_zero() {
            break;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&pivot * &a[i][j] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = pivot;
    }
    minors
}

/// Sylvester's criterion: the `k`-th leading minor has sign `(-1)^k`.
pub fn is_negative_definite(g: &ResolutionGraph) -> Result<bool> {
    let m = intersection_matrix(g)?;
    let minors = leading_minors(&m);
    Ok(minors.len() == m.len()
        && minors.iter().enumerate().all(|(k, d)| {
            if k % 2 == 0 {
                d.is_negative()
            } else {
                d.is_positive()
            }
        }))
}

/// Solves `m x = rhs` exactly; `None` if `m` is singular.
fn solve_exact(m: &[Vec<i64>], rhs: &[i64]) -> Option<Vec<BigRational>> {
    let n = m.len();
    let mut a = to_big(m);
    let mut b: Vec<BigRational> = rhs
        .iter()
        .map(|&x| BigRational::from_integer(x.into()))
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        let inv = a[col][col].recip();
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = &a[r][col] * &inv;
            for c in col..n {
                let delta = &factor * &a[col][c];
                a[r][c] -= delta;
            }
            let delta = &factor * &b[col];
            b[r] -= delta;
        }
    }
    Some((0..n).map(|i| &b[i] / &a[i][i]).collect())
}

fn to_rational64(x: &BigRational) -> Result<Rational64> {
    match (x.numer().to_i64(), x.denom().to_i64()) {
        (Some(n), Some(d)) => Ok(Rational64::new(n, d)),
        _ => Err(Error::Overflow(format!("discrepancy {x} does not fit in 64 bits"))),
    }
}

/// Fills every log discrepancy from the weights.
///
/// Shape is not validated here; any graph with weights `>= 2` whose
/// intersection matrix is invertible is accepted. The result must be log
/// terminal: `0 < a_i <= 1` for every vertex.
pub fn discrepancies_from_weights(g: &ResolutionGraph) -> Result<ResolutionGraph> {
    let w = g
        .weights()
        .ok_or_else(|| Error::MissingData("self-intersection weights are not all set".into()))?;
    if let Some(v) = g.vertices().iter().find(|v| v.w.is_some_and(|w| w < 2)) {
        return Err(Error::InvalidGraph(format!(
            "weight of `{}` is {}, expected at least 2",
            v.id,
            v.w.unwrap()
        )));
    }
    let m = intersection_matrix(g)?;
    let rhs: Vec<i64> = w.iter().map(|&x| x as i64 - 2).collect();
    let b = solve_exact(&m, &rhs).ok_or(Error::SingularMatrix)?;
    let one = BigRational::one();
    let a = b
        .iter()
        .map(|bi| to_rational64(&(bi + &one)))
        .collect::<Result<Vec<_>>>()?;
    for (v, ai) in g.vertices().iter().zip(&a) {
        if *ai <= Rational64::zero() || *ai > Rational64::one() {
            return Err(Error::NotLogTerminal(format!("a({}) = {ai}", v.id)));
        }
    }
    Ok(g.with_discrepancies(&a))
}
