//! Integer matrix algorithms over `BigInt`: determinant, Smith and echelon forms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type IntMatrix = Vec<Vec<BigInt>>;

pub fn from_i64(m: &[Vec<i64>]) -> IntMatrix {
    m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

pub fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

pub fn transpose(m: &IntMatrix) -> IntMatrix {
    if m.is_empty() {
        return Vec::new();
    }
    (0..m[0].len()).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}

pub fn mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let inner = b.len();
    let cols = if inner == 0 { 0 } else { b[0].len() };
    a.iter()
        .map(|r| {
            (0..cols)
                .map(|j| (0..inner).fold(BigInt::zero(), |acc, k| acc + &r[k] * &b[k][j]))
                .collect()
        })
        .collect()
}

/// Exact determinant by fraction-free elimination.
pub fn det(m: &IntMatrix) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.clone();
    let mut prev = BigInt::one();
    let mut neg = false;
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    neg = !neg;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if neg {
        -d
    } else {
        d
    }
}

/// Smith normal form: returns `(U, D, V)` with `U * m * V = D`, `U` and `V`
/// unimodular, `D` diagonal, nonnegative, with `D[i][i] | D[i+1][i+1]`.
pub fn smith(m: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut a = m.clone();
    let mut u = identity(rows);
    let mut v = identity(cols);
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry of the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero() && best.map(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()).unwrap_or(true) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        u.swap(t, pi);
        for r in a.iter_mut() {
            r.swap(t, pj);
        }
        for r in v.iter_mut() {
            r.swap(t, pj);
        }
        let mut clean = true;
        for i in t + 1..rows {
            if a[i][t].is_zero() {
                continue;
            }
            let q = a[i][t].div_floor(&a[t][t]);
            row_axpy(&mut a, i, t, &q);
            row_axpy(&mut u, i, t, &q);
            if !a[i][t].is_zero() {
                clean = false;
            }
        }
        for j in t + 1..cols {
            if a[t][j].is_zero() {
                continue;
            }
            let q = a[t][j].div_floor(&a[t][t]);
            col_axpy(&mut a, j, t, &q);
            col_axpy(&mut v, j, t, &q);
            if !a[t][j].is_zero() {
                clean = false;
            }
        }
        if !clean {
            continue;
        }
        // divisibility: fold a violating row into row t and redo this pivot
        let mut bad = None;
        'scan: for i in t + 1..rows {
            for j in t + 1..cols {
                if !(&a[i][j] % &a[t][t]).is_zero() {
                    bad = Some(i);
                    break 'scan;
                }
            }
        }
        if let Some(i) = bad {
            let one = -BigInt::one();
            row_axpy(&mut a, t, i, &one);
            row_axpy(&mut u, t, i, &one);
            continue;
        }
        if a[t][t].is_negative() {
            for x in a[t].iter_mut() {
                *x = -x.clone();
            }
            for x in u[t].iter_mut() {
                *x = -x.clone();
            }
        }
        t += 1;
    }
    (u, a, v)
}

// row_i -= q * row_k
fn row_axpy(a: &mut IntMatrix, i: usize, k: usize, q: &BigInt) {
    let src = a[k].clone();
    for (x, s) in a[i].iter_mut().zip(src.iter()) {
        *x -= q * s;
    }
}

// col_j -= q * col_k
fn col_axpy(a: &mut IntMatrix, j: usize, k: usize, q: &BigInt) {
    for r in a.iter_mut() {
        let s = r[k].clone();
        r[j] -= q * s;
    }
}

/// Row echelon form over Z with transform: `U * m = E`, `U` unimodular,
/// the first `rank` rows of `E` nonzero and the rest zero.
pub fn echelon(m: &IntMatrix) -> (IntMatrix, IntMatrix, usize) {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut a = m.clone();
    let mut u = identity(rows);
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        loop {
            let piv = (r..rows).filter(|&i| !a[i][c].is_zero()).min_by_key(|&i| a[i][c].abs());
            let Some(p) = piv else { break };
            a.swap(r, p);
            u.swap(r, p);
            let mut done = true;
            for i in r + 1..rows {
                if a[i][c].is_zero() {
                    continue;
                }
                let q = a[i][c].div_floor(&a[r][c]);
                row_axpy(&mut a, i, r, &q);
                row_axpy(&mut u, i, r, &q);
                if !a[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if !a[r][c].is_zero() {
            if a[r][c].is_negative() {
                for x in a[r].iter_mut() {
                    *x = -x.clone();
                }
                for x in u[r].iter_mut() {
                    *x = -x.clone();
                }
            }
            r += 1;
        }
    }
    (u, a, r)
}
