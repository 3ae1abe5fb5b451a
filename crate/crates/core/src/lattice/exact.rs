//! Integer and rational linear algebra on exact data.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::cyclo::CyclotomicElement;
use crate::error::{Error, Result};

/// The standard `D_n` basis: row 0 is `(-1, -1, 0, ...)`, row `i >= 1` is `e_{i-1} - e_i`.
pub fn dn_transform(n: usize) -> Result<Vec<Vec<i64>>> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("D_n needs n >= 2, got {n}")));
    }
    let mut t = vec![vec![0i64; n]; n];
    t[0][0] = -1;
    t[0][1] = -1;
    for (i, row) in t.iter_mut().enumerate().skip(1) {
        row[i - 1] = 1;
        row[i] = -1;
    }
    Ok(t)
}

/// Exact determinant by fraction-free (Bareiss) elimination.
pub fn integer_determinant(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = m
        .iter()
        .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
        .collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// `Σ_j t[i][j]·g_j` for each row of an integer matrix.
pub fn transform_elements(
    t: &[Vec<i64>],
    gens: &[CyclotomicElement],
) -> Vec<CyclotomicElement> {
    let conductor = gens[0].conductor();
    t.iter()
        .map(|row| {
            row.iter()
                .zip(gens)
                .filter(|(&c, _)| c != 0)
                .fold(CyclotomicElement::zero(conductor), |acc, (&c, g)| {
                    &acc + &g.scale(&BigRational::from_integer(c.into()))
                })
        })
        .collect()
}

/// Rational coefficients `c` with `Σ c_i basis_i = target`, if any.
///
/// `basis` must be linearly independent over Q.
pub fn solve_combination(
    basis: &[CyclotomicElement],
    target: &CyclotomicElement,
) -> Option<Vec<BigRational>> {
    let r = basis.len();
    let d = target.degree();
    // rows: power-basis coordinates; columns: basis elements then the target
    let mut a: Vec<Vec<BigRational>> = (0..d)
        .map(|i| {
            basis
                .iter()
                .map(|b| b.coeff(i))
                .chain(std::iter::once(target.coeff(i)))
                .collect()
        })
        .collect();
    let mut pivots = Vec::with_capacity(r);
    let mut row = 0;
    for col in 0..r {
        let Some(p) = (row..d).find(|&i| !a[i][col].is_zero()) else {
            panic!("basis elements are linearly dependent");
        };
        a.swap(row, p);
        let inv = a[row][col].recip();
        for v in a[row].iter_mut() {
            *v *= &inv;
        }
        for i in 0..d {
            if i != row && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                for j in col..=r {
                    let sub = &f * &a[row][j];
                    a[i][j] -= sub;
                }
            }
        }
        pivots.push(row);
        row += 1;
    }
    if a[row..].iter().any(|rw| !rw[r].is_zero()) {
        return None;
    }
    Some(pivots.iter().map(|&p| a[p][r].clone()).collect())
}

/// Whether the Z-spans of two independent families coincide.
pub fn same_z_module(a: &[CyclotomicElement], b: &[CyclotomicElement]) -> bool {
    let inside = |xs: &[CyclotomicElement], basis: &[CyclotomicElement]| {
        xs.iter().all(|x| {
            solve_combination(basis, x)
                .is_some_and(|c| c.iter().all(|q| q.is_integer()))
        })
    };
    a.len() == b.len() && inside(a, b) && inside(b, a)
}
