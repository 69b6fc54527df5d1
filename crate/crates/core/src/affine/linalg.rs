//! Exact linear algebra over the rationals.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Parses `"3"`, `"-2/7"` or a plain decimal such as `"0.64"`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let bad = || Error::Rational(text.to_owned());
    let t = text.trim();
    if t.is_empty() {
        return Err(bad());
    }
    if let Some((num, den)) = t.split_once('/') {
        let num = BigInt::from_str(num.trim()).map_err(|_| bad())?;
        let den = BigInt::from_str(den.trim()).map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(num, den));
    }
    if let Some((int, frac)) = t.split_once('.') {
        let (negative, int) = match int.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, int.strip_prefix('+').unwrap_or(int)),
        };
        let digits_ok = |s: &str| s.bytes().all(|b| b.is_ascii_digit());
        if !digits_ok(int) || !digits_ok(frac) || (int.is_empty() && frac.is_empty()) {
            return Err(bad());
        }
        let joined = format!("{int}{frac}");
        let num =
            BigInt::from_str(if joined.is_empty() { "0" } else { &joined }).map_err(|_| bad())?;
        let den = num_traits::pow(BigInt::from(10), frac.len());
        let value = BigRational::new(num, den);
        return Ok(if negative { -value } else { value });
    }
    BigInt::from_str(t)
        .map(BigRational::from_integer)
        .map_err(|_| bad())
}

/// Canonical string form: `"n"` or `"n/d"`.
pub fn format_rational(value: &Rational) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// Brings `m` to reduced row echelon form and returns the pivot columns.
pub fn row_reduce(m: &mut [Vec<Rational>]) -> Vec<usize> {
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row == m.len() {
            break;
        }
        let Some(found) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, found);
        let lead = m[row][col].clone();
        for v in m[row].iter_mut() {
            *v = &*v / &lead;
        }
        let pivot_row = m[row].clone();
        for (r, other) in m.iter_mut().enumerate() {
            if r != row && !other[col].is_zero() {
                let factor = other[col].clone();
                for (v, p) in other[col..cols].iter_mut().zip(&pivot_row[col..cols]) {
                    *v -= &factor * p;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut m = rows.to_vec();
    row_reduce(&mut m).len()
}

/// `points[i] - points[0]` for every `i > 0`.
pub fn differences(points: &[&[Rational]]) -> Vec<Vec<Rational>> {
    let Some((origin, rest)) = points.split_first() else {
        return Vec::new();
    };
    rest.iter()
        .map(|p| p.iter().zip(origin.iter()).map(|(a, b)| a - b).collect())
        .collect()
}

/// Dimension of the affine span; `None` for no points.
pub fn affine_rank(points: &[&[Rational]]) -> Option<usize> {
    if points.is_empty() {
        None
    } else {
        Some(rank(&differences(points)))
    }
}

pub fn affinely_independent(points: &[&[Rational]]) -> bool {
    affine_rank(points) == Some(points.len().saturating_sub(1))
}

/// A nonzero vector orthogonal to every row, when the solution space of
/// `rows · v = 0` in dimension `cols` is exactly one-dimensional.
pub fn normal_vector(rows: &[Vec<Rational>], cols: usize) -> Option<Vec<Rational>> {
    let mut m = rows.to_vec();
    let pivots = row_reduce(&mut m);
    if cols - pivots.len() != 1 {
        return None;
    }
    let free = (0..cols).find(|c| !pivots.contains(c))?;
    let mut v = vec![Rational::zero(); cols];
    v[free] = Rational::one();
    for (r, &p) in pivots.iter().enumerate() {
        v[p] = -m[r][free].clone();
    }
    Some(v)
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Barycentric coordinates of `p` with respect to affinely independent
/// `vertices`, or `None` when `p` is outside their affine span.
pub fn barycentric(vertices: &[&[Rational]], p: &[Rational]) -> Option<Vec<Rational>> {
    let k = vertices.len();
    let mut m: Vec<Vec<Rational>> = (0..p.len())
        .map(|j| {
            let mut row: Vec<Rational> = vertices.iter().map(|v| v[j].clone()).collect();
            row.push(p[j].clone());
            row
        })
        .collect();
    // Coefficients sum to one.
    m.push(vec![Rational::one(); k + 1]);
    let pivots = row_reduce(&mut m);
    if pivots.contains(&k) {
        return None;
    }
    debug_assert_eq!(pivots.len(), k, "vertices must be affinely independent");
    Some((0..k).map(|i| m[i][k].clone()).collect())
}

/// Whether `p` lies in the simplex spanned by affinely independent `vertices`.
pub fn in_simplex(vertices: &[&[Rational]], p: &[Rational]) -> bool {
    barycentric(vertices, p).is_some_and(|l| l.iter().all(|x| !x.is_negative()))
}
