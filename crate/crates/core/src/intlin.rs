//! Integer linear algebra: kernels over `Z/p^e` and Smith normal form.
//!
//! All arithmetic is checked `i128`; coefficient blow-up surfaces as
//! [`MotkitError::Overflow`] instead of wrapping.

use crate::error::{MotkitError, Result};

pub type IntMat = Vec<Vec<i128>>;

fn ck(x: Option<i128>) -> Result<i128> {
    x.ok_or(MotkitError::Overflow)
}

/// Extended gcd: returns `(g, x, y)` with `a x + b y = g >= 0`.
pub fn egcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i128, 0i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

pub fn gcd(a: i128, b: i128) -> i128 {
    egcd(a, b).0
}

/// Generators of the solution module `{x in (Z/p^e)^n : A x = 0}`.
///
/// Column elimination over the chain ring `Z/p^e`: the pivot of each row is
/// an entry of least valuation, and a pivot `p^v u` with `v > 0` contributes
/// the extra column `p^(e-v)` times its own column.
pub fn kernel_mod_prime_power(a: &IntMat, n: usize, p: u64, e: u32) -> Result<Vec<Vec<u64>>> {
    let q = ck(i128::from(p).checked_pow(e))?;
    if q >= 1 << 62 {
        return Err(MotkitError::Overflow);
    }
    let m = a.len();
    let red = |x: i128| x.rem_euclid(q);
    let mut cols: Vec<Vec<i128>> = (0..n)
        .map(|c| {
            let mut v: Vec<i128> = (0..m).map(|r| red(a[r][c])).collect();
            v.extend((0..n).map(|k| i128::from(k == c)));
            v
        })
        .collect();
    let pi = i128::from(p);
    let valuation = |mut x: i128| {
        let mut v = 0u32;
        while x % pi == 0 {
            x /= pi;
            v += 1;
        }
        (v, x)
    };
    let mut start = 0;
    for row in 0..m {
        let Some(piv) = (start..cols.len()).filter(|&c| cols[c][row] != 0).min_by_key(|&c| valuation(cols[c][row]).0)
        else {
            continue;
        };
        cols.swap(start, piv);
        let (v, unit) = valuation(cols[start][row]);
        let inv = egcd(unit.rem_euclid(q), q).1.rem_euclid(q);
        let pivot_col = cols[start].clone();
        for col in cols.iter_mut().skip(start + 1) {
            let x = col[row];
            if x == 0 {
                continue;
            }
            let factor = (x / pi.pow(v)) % q * inv % q;
            for (y, &z) in col.iter_mut().zip(&pivot_col) {
                *y = red(*y - factor * z % q);
            }
        }
        if v > 0 {
            let mult = pi.pow(e - v);
            cols.push(pivot_col.iter().map(|&z| z * mult % q).collect());
        }
        start += 1;
    }
    Ok(cols[start..]
        .iter()
        .map(|c| c[m..].iter().map(|&x| x as u64).collect())
        .filter(|v: &Vec<u64>| v.iter().any(|&x| x != 0))
        .collect())
}

/// Nonzero diagonal entries of the Smith normal form of an `m x n` integer
/// matrix, each dividing the next.
pub fn smith_diagonal(a: &IntMat, n: usize) -> Result<Vec<i128>> {
    let mut m: IntMat = a.clone();
    let rows = m.len();
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(n) {
        // choose the nonzero entry of smallest absolute value in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for r in t..rows {
            for c in t..n {
                if m[r][c] != 0 && best.is_none_or(|(br, bc)| m[r][c].abs() < m[br][bc].abs()) {
                    best = Some((r, c));
                }
            }
        }
        let Some((br, bc)) = best else { break };
        m.swap(t, br);
        for row in m.iter_mut() {
            row.swap(t, bc);
        }
        loop {
            let piv = m[t][t];
            let mut dirty = false;
            for r in t + 1..rows {
                let q = m[r][t].div_euclid(piv);
                if q != 0 {
                    for c in t..n {
                        m[r][c] = ck(m[r][c].checked_sub(ck(q.checked_mul(m[t][c]))?))?;
                    }
                }
                if m[r][t] != 0 {
                    dirty = true;
                }
            }
            for c in t + 1..n {
                let q = m[t][c].div_euclid(piv);
                if q != 0 {
                    for row in m.iter_mut().skip(t) {
                        row[c] = ck(row[c].checked_sub(ck(q.checked_mul(row[t]))?))?;
                    }
                }
                if m[t][c] != 0 {
                    dirty = true;
                }
            }
            if !dirty {
                // divisibility condition on the remaining block
                let bad = (t + 1..rows)
                    .flat_map(|r| (t + 1..n).map(move |c| (r, c)))
                    .find(|&(r, c)| m[r][c] % piv != 0);
                match bad {
                    None => break,
                    Some((r, _)) => {
                        for c in t..n {
                            m[t][c] = ck(m[t][c].checked_add(m[r][c]))?;
                        }
                        continue;
                    }
                }
            }
            // move a smaller remainder into the pivot position
            let mut best = (t, t);
            for r in t..rows {
                if m[r][t] != 0 && m[r][t].abs() < m[best.0][best.1].abs() {
                    best = (r, t);
                }
            }
            for c in t..n {
                if m[t][c] != 0 && m[t][c].abs() < m[best.0][best.1].abs() {
                    best = (t, c);
                }
            }
            m.swap(t, best.0);
            for row in m.iter_mut() {
                row.swap(t, best.1);
            }
        }
        diag.push(m[t][t].abs());
        t += 1;
    }
    Ok(diag)
}
