pub use num_bigint::BigInt;
pub use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Rational from an integer.
pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn rat_big(n: BigInt) -> BigRational {
    BigRational::from_integer(n)
}

pub fn rat_frac(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Integer value of a rational that is known to be integral.
pub fn as_integer(r: &BigRational) -> Option<BigInt> {
    if r.denom().is_one() {
        Some(r.numer().clone())
    } else {
        None
    }
}

/// Renders a rational as `n` or `n/d`.
pub fn display_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Exact determinant of a square integer matrix (fraction-free
/// Bareiss elimination).
pub fn integer_determinant(matrix: &[Vec<BigInt>]) -> BigInt {
    let n = matrix.len();
    if n == 0 {
        return BigInt::one();
    }
    debug_assert!(matrix.iter().all(|row| row.len() == n));
    let mut m: Vec<Vec<BigInt>> = matrix.to_vec();
    let mut prev = BigInt::one();
    let mut sign = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            let swap = (k + 1..n).find(|&i| !m[i][k].is_zero());
            match swap {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = num / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    sign * m[n - 1][n - 1].clone()
}

/// Smith normal form diagonal of an integer matrix: nonneg invariants
/// d_1 | d_2 | ... including zeros, one per row/column of the rank
/// profile (length = min(rows, cols)).
pub fn smith_normal_diagonal(matrix: &[Vec<BigInt>]) -> Vec<BigInt> {
    let rows = matrix.len();
    let cols = if rows == 0 { 0 } else { matrix[0].len() };
    let mut m: Vec<Vec<BigInt>> = matrix.to_vec();
    let n = rows.min(cols);
    let mut diag = Vec::with_capacity(n);
    let mut top = 0usize;
    while top < n {
        // find a nonzero pivot in the remaining block
        let mut pivot = None;
        'search: for i in top..rows {
            for j in top..cols {
                if !m[i][j].is_zero() {
                    pivot = Some((i, j));
                    break 'search;
                }
            }
        }
        let (pi, pj) = match pivot {
            Some(p) => p,
            None => break,
        };
        m.swap(top, pi);
        for row in m.iter_mut() {
            row.swap(top, pj);
        }
        // reduce row and column below/right of the pivot until clean
        loop {
            let mut changed = false;
            for i in top + 1..rows {
                if !m[i][top].is_zero() {
                    let q = div_round(&m[i][top], &m[top][top]);
                    if !q.is_zero() {
                        for j in top..cols {
                            let sub = &q * &m[top][j];
                            m[i][j] -= sub;
                        }
                    }
                    if !m[i][top].is_zero() {
                        m.swap(top, i);
                        changed = true;
                    }
                }
            }
            for j in top + 1..cols {
                if !m[top][j].is_zero() {
                    let q = div_round(&m[top][j], &m[top][top]);
                    if !q.is_zero() {
                        for row in m.iter_mut().take(rows).skip(top) {
                            let sub = &q * &row[top];
                            row[j] -= sub;
                        }
                    }
                    if !m[top][j].is_zero() {
                        for row in m.iter_mut() {
                            row.swap(top, j);
                        }
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        // ensure the pivot divides every remaining entry
        let mut fixed = false;
        'divis: for i in top + 1..rows {
            for j in top + 1..cols {
                if !(&m[i][j] % &m[top][top]).is_zero() {
                    let add = m[i].clone();
                    for (jj, v) in add.into_iter().enumerate() {
                        m[top][jj] += v;
                    }
                    fixed = true;
                    break 'divis;
                }
            }
        }
        if fixed {
            continue;
        }
        diag.push(m[top][top].abs());
        top += 1;
    }
    while diag.len() < n {
        diag.push(BigInt::zero());
    }
    diag
}

/// Quotient rounded toward the nearest integer, so remainders shrink.
fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    let two = BigInt::from(2);
    let (q, r) = num_integer::Integer::div_rem(a, b);
    if (&r * &two).abs() > b.abs() {
        if (r.is_negative()) == (b.is_negative()) {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}
