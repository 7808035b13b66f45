//! Exact rational helpers and small dense linear algebra over `BigRational`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

pub fn qi(v: i64) -> Q {
    Q::from_integer(BigInt::from(v))
}

pub fn to_f64(x: &Q) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Exact binary value of a finite float.
pub fn from_f64(x: f64) -> Result<Q> {
    Q::from_float(x).ok_or_else(|| Error::Domain(format!("non-finite value {x}")))
}

/// Parses `"p/q"`, `"p"` or a plain decimal such as `"0.25"`.
pub fn parse(s: &str) -> Result<Q> {
    let s = s.trim();
    if let Ok(v) = s.parse::<Q>() {
        return Ok(v);
    }
    if let Some((int, frac)) = s.split_once('.') {
        let neg = int.starts_with('-');
        let digits = format!("{}{}", int.trim_start_matches(['-', '+']), frac);
        if !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit()) {
            let num: BigInt = digits.parse().map_err(|_| Error::Spec(format!("bad number {s:?}")))?;
            let den = num_traits::pow(BigInt::from(10), frac.len());
            let v = Q::new(num, den);
            return Ok(if neg { -v } else { v });
        }
    }
    Err(Error::Spec(format!("cannot parse {s:?} as a rational")))
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).fold(Q::zero(), |acc, (x, y)| acc + x * y)
}

pub fn sum(a: &[Q]) -> Q {
    a.iter().fold(Q::zero(), |acc, x| acc + x)
}

/// Exact square root when `x` is the square of a rational.
pub fn exact_sqrt(x: &Q) -> Option<Q> {
    if x.is_negative() {
        return None;
    }
    let (n, d) = (x.numer(), x.denom());
    let (rn, rd) = (n.sqrt(), d.sqrt());
    (&rn * &rn == *n && &rd * &rd == *d).then(|| Q::new(rn, rd))
}

/// Reduced row echelon form in place; returns the pivot columns.
fn rref(m: &mut [Vec<Q>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row == m.len() {
            break;
        }
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].recip();
        for v in m[row].iter_mut() {
            *v = &*v * &inv;
        }
        for r in 0..m.len() {
            if r != row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in 0..m[r].len() {
                    let delta = &f * &m[row][c];
                    m[r][c] -= delta;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

/// A spanning vector of the kernel of `rows` (each of length `cols`) when the
/// kernel is exactly one-dimensional.
pub fn kernel_line(rows: &[Vec<Q>], cols: usize) -> Option<Vec<Q>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m, cols);
    if pivots.len() + 1 != cols {
        return None;
    }
    let free = (0..cols).find(|c| !pivots.contains(c))?;
    let mut v = vec![Q::zero(); cols];
    v[free] = Q::one();
    for (r, &pc) in pivots.iter().enumerate() {
        v[pc] = -m[r][free].clone();
    }
    Some(v)
}

/// Unique solution of the square system `rows · x = rhs`.
pub fn solve(rows: &[Vec<Q>], rhs: &[Q]) -> Option<Vec<Q>> {
    let n = rhs.len();
    let mut m: Vec<Vec<Q>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| r.iter().cloned().chain(std::iter::once(b.clone())).collect())
        .collect();
    let pivots = rref(&mut m, n);
    if pivots.len() != n {
        return None;
    }
    Some(m.into_iter().map(|r| r[n].clone()).collect())
}

/// All `k`-element subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

pub fn format(x: &Q) -> String {
    x.to_string()
}

pub fn is_positive(x: &Q) -> bool {
    x.is_positive()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_integers_and_decimals() {
        assert_eq!(parse("3/4").unwrap(), q(3, 4));
        assert_eq!(parse("-7").unwrap(), qi(-7));
        assert_eq!(parse("0.25").unwrap(), q(1, 4));
        assert_eq!(parse("-1.5").unwrap(), q(-3, 2));
        assert!(parse("x/2").is_err());
    }

    #[test]
    fn kernel_of_single_row() {
        // x - y = 0 in the plane
        let v = kernel_line(&[vec![qi(1), qi(-1)]], 2).unwrap();
        assert_eq!(v[0], v[1]);
        assert!(kernel_line(&[vec![qi(0), qi(0)]], 2).is_none());
    }

    #[test]
    fn solves_square_system() {
        let x = solve(&[vec![qi(2), qi(1)], vec![qi(1), qi(3)]], &[qi(3), qi(4)]).unwrap();
        assert_eq!(x, vec![qi(1), qi(1)]);
        assert!(solve(&[vec![qi(1), qi(1)], vec![qi(2), qi(2)]], &[qi(1), qi(2)]).is_none());
    }

    #[test]
    fn square_roots() {
        assert_eq!(exact_sqrt(&q(9, 4)), Some(q(3, 2)));
        assert_eq!(exact_sqrt(&qi(2)), None);
    }

    #[test]
    fn combination_counts() {
        assert_eq!(combinations(5, 2).len(), 10);
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
        assert!(combinations(2, 3).is_empty());
    }
}
