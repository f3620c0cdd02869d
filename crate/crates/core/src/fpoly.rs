//! Univariate polynomials over `F_p` (coefficients low to high), just enough
//! to find the `F_p`-rational eigenvalues of small matrices.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::fp::{Fp, FpMat, RowSpace};

/// Below this prime, roots are found by evaluating at every field element.
const ENUMERATE_BELOW: u32 = 1024;

fn trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn degree(a: &[u32]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

pub fn eval(f: Fp, a: &[u32], x: u32) -> u32 {
    a.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
}

fn rem(f: Fp, a: &[u32], m: &[u32]) -> Vec<u32> {
    let dm = degree(m).expect("nonzero modulus");
    let inv = f.inv(m[dm]);
    let mut r = trim(a.to_vec());
    while let Some(dr) = degree(&r) {
        if dr < dm {
            break;
        }
        let c = f.mul(r[dr], inv);
        for (k, &mk) in m[..=dm].iter().enumerate() {
            let i = dr - dm + k;
            r[i] = f.sub(r[i], f.mul(c, mk));
        }
        r = trim(r);
    }
    r
}

fn mul(f: Fp, a: &[u32], b: &[u32]) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    trim(out)
}

fn monic(f: Fp, a: Vec<u32>) -> Vec<u32> {
    let a = trim(a);
    match a.last() {
        None => a,
        Some(&lead) => {
            let inv = f.inv(lead);
            a.into_iter().map(|c| f.mul(c, inv)).collect()
        }
    }
}

fn gcd(f: Fp, a: &[u32], b: &[u32]) -> Vec<u32> {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let r = rem(f, &a, &b);
        a = b;
        b = r;
    }
    monic(f, a)
}

fn powmod(f: Fp, base: &[u32], mut e: u64, m: &[u32]) -> Vec<u32> {
    let mut result = vec![1u32];
    let mut b = rem(f, base, m);
    while e > 0 {
        if e & 1 == 1 {
            result = rem(f, &mul(f, &result, &b), m);
        }
        b = rem(f, &mul(f, &b, &b), m);
        e >>= 1;
    }
    rem(f, &result, m)
}

fn sub(f: Fp, a: &[u32], b: &[u32]) -> Vec<u32> {
    let n = a.len().max(b.len());
    trim((0..n).map(|i| f.sub(a.get(i).copied().unwrap_or(0), b.get(i).copied().unwrap_or(0))).collect())
}

/// Distinct roots in `F_p` of a nonzero polynomial, sorted.
pub fn roots(f: Fp, a: &[u32]) -> Vec<u32> {
    let a = monic(f, a.to_vec());
    let Some(d) = degree(&a) else { return Vec::new() };
    if d == 0 {
        return Vec::new();
    }
    let p = f.p();
    if p < ENUMERATE_BELOW {
        return (0..p).filter(|&x| eval(f, &a, x) == 0).collect();
    }
    // g = product of the distinct linear factors
    let xp = powmod(f, &[0, 1], p as u64, &a);
    let g = gcd(f, &a, &sub(f, &xp, &[0, 1]));
    let mut out = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    split_linear(f, g, &mut rng, &mut out);
    out.sort_unstable();
    out
}

/// Equal-degree splitting of a squarefree product of linear factors.
fn split_linear(f: Fp, g: Vec<u32>, rng: &mut ChaCha8Rng, out: &mut Vec<u32>) {
    match degree(&g) {
        None | Some(0) => {}
        Some(1) => out.push(f.neg(f.mul(g[0], f.inv(g[1])))),
        Some(d) => loop {
            let a = rng.gen_range(0..f.p());
            let h = powmod(f, &[a, 1], (f.p() as u64 - 1) / 2, &g);
            let s = gcd(f, &g, &sub(f, &h, &[1]));
            let ds = degree(&s).unwrap_or(0);
            if ds > 0 && ds < d {
                let mut q = g.clone();
                // q = g / s by long division; the remainder is zero
                let mut quot = vec![0u32; d - ds + 1];
                while let Some(dq) = degree(&q) {
                    if dq < ds {
                        break;
                    }
                    let c = q[dq];
                    quot[dq - ds] = c;
                    for (k, &sk) in s.iter().enumerate() {
                        q[dq - ds + k] = f.sub(q[dq - ds + k], f.mul(c, sk));
                    }
                    q = trim(q);
                }
                split_linear(f, s, rng, out);
                split_linear(f, trim(quot), rng, out);
                return;
            }
        },
    }
}

/// Minimal polynomial of `v` under `a` (monic, low to high).
fn local_min_poly(f: Fp, a: &FpMat, v: Vec<u32>) -> Vec<u32> {
    let n = a.rows();
    let mut krylov: Vec<Vec<u32>> = Vec::new();
    let mut space = RowSpace::new(n);
    let mut cur = v;
    while space.insert(cur.clone(), f) {
        krylov.push(cur.clone());
        cur = a.mul_vec(&cur, f);
    }
    // cur = Σ c_i krylov[i]
    let basis = FpMat::from_columns(n, &krylov);
    let rhs = FpMat::from_columns(n, &[cur]);
    let c = basis.solve(&rhs, f).expect("Krylov vector lies in the span");
    let mut poly: Vec<u32> = (0..krylov.len()).map(|i| f.neg(c.get(i, 0))).collect();
    poly.push(1);
    poly
}

/// Distinct eigenvalues of a square matrix that lie in `F_p`, sorted.
pub fn eigenvalues(f: Fp, a: &FpMat) -> Vec<u32> {
    let n = a.rows();
    assert_eq!(n, a.cols());
    let mut out: Vec<u32> = Vec::new();
    for i in 0..n {
        let mut e = vec![0u32; n];
        e[i] = 1;
        for r in roots(f, &local_min_poly(f, a, e)) {
            if !out.contains(&r) {
                out.push(r);
            }
        }
    }
    out.sort_unstable();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_small_and_large_prime() {
        let f = Fp::new(7);
        // (x-1)(x-3)(x^2+1); x^2+1 is irreducible mod 7
        let p = mul(f, &mul(f, &[6, 1], &[4, 1]), &[1, 0, 1]);
        assert_eq!(roots(f, &p), vec![1, 3]);
        let f = Fp::new(1_000_003);
        let p = mul(f, &mul(f, &[f.neg(5), 1], &[f.neg(77), 1]), &[f.neg(5), 1]);
        assert_eq!(roots(f, &p), vec![5, 77]);
    }

    #[test]
    fn eigenvalues_of_block_matrix() {
        let f = Fp::new(5);
        // diag(2, [[0,-1],[1,0]]): rotation has eigenvalues ±2 since 2^2 = -1 mod 5
        let a = FpMat::from_rows(3, 3, vec![2, 0, 0, 0, 0, 4, 0, 1, 0]);
        assert_eq!(eigenvalues(f, &a), vec![2, 3]);
        let f = Fp::new(3);
        // same rotation mod 3 has no rational eigenvalues
        let a = FpMat::from_rows(2, 2, vec![0, 2, 1, 0]);
        assert!(eigenvalues(f, &a).is_empty());
    }
}
