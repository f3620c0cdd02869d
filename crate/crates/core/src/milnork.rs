//! Milnor K-groups of small finite fields by brute force, and the Hom table
//! between Tate objects over an algebraic closure of `F_p`.

use serde::Serialize;

use crate::error::{MotkitError, Result};
use crate::fp::is_prime;
use crate::intlin::smith_diagonal;

/// Largest field size handled.
pub const MAX_Q: u64 = 64;
/// Largest K-degree handled.
pub const MAX_N: usize = 3;

/// `q = p^e` as `(p, e)`, if `q` is a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut e = 0;
    let mut r = q;
    while r.is_multiple_of(p) {
        r /= p;
        e += 1;
    }
    (r == 1).then_some((p, e))
}

/// The unit group of `F_q` with discrete logarithms. Elements are encoded
/// as integers `Σ c_i p^i` for the polynomial `Σ c_i t^i` modulo a
/// primitive polynomial.
#[derive(Clone, Debug)]
pub struct FqUnits {
    pub q: u64,
    pub p: u64,
    pub degree: u32,
    /// Monic primitive polynomial, coefficients low to high (length `degree + 1`).
    pub modulus: Vec<u64>,
    /// `exp[k] = g^k` for `0 <= k < q - 1`.
    exp: Vec<u64>,
    /// `log[x]` for `x != 0`; `log[0]` is unused.
    log: Vec<u64>,
}

fn digits(x: u64, p: u64, e: u32) -> Vec<u64> {
    let mut out = Vec::with_capacity(e as usize);
    let mut r = x;
    for _ in 0..e {
        out.push(r % p);
        r /= p;
    }
    out
}

fn encode(c: &[u64], p: u64) -> u64 {
    c.iter().rev().fold(0, |acc, &d| acc * p + d)
}

/// `t · x` modulo the monic `modulus`.
fn times_t(x: u64, modulus: &[u64], p: u64, e: u32) -> u64 {
    let c = digits(x, p, e);
    let top = c[e as usize - 1];
    let mut out = vec![0u64; e as usize];
    for i in (1..e as usize).rev() {
        out[i] = c[i - 1];
    }
    // t^e = -Σ modulus[i] t^i
    for (i, o) in out.iter_mut().enumerate() {
        *o = (*o + (p - modulus[i]) * top) % p;
    }
    encode(&out, p)
}

/// Powers of `t` modulo `modulus`, until they return to 1 or the bound.
fn powers_of_t(modulus: &[u64], p: u64, e: u32, bound: usize) -> Vec<u64> {
    let mut out = vec![1u64];
    let mut x = 1;
    for _ in 1..bound {
        x = times_t(x, modulus, p, e);
        if x == 1 {
            break;
        }
        out.push(x);
    }
    out
}

impl FqUnits {
    pub fn new(q: u64) -> Result<Self> {
        let (p, e) = prime_power(q).ok_or_else(|| MotkitError::Rejected(format!("{q} is not a prime power")))?;
        if q > MAX_Q {
            return Err(MotkitError::Rejected(format!("q = {q} exceeds the bound {MAX_Q}")));
        }
        let units = (q - 1) as usize;
        // search monic modulus whose root t has order q - 1
        let (modulus, exp) = (0..q)
            .map(|low| {
                let mut m = digits(low, p, e);
                m.push(1);
                m
            })
            .find_map(|m| {
                let pw = powers_of_t(&m, p, e, units + 1);
                (pw.len() == units && times_t(pw[units - 1], &m, p, e) == 1).then_some((m, pw))
            })
            .ok_or_else(|| MotkitError::SelfCheck(format!("no primitive polynomial of degree {e} over F_{p}")))?;
        let mut log = vec![0u64; q as usize];
        for (k, &x) in exp.iter().enumerate() {
            log[x as usize] = k as u64;
        }
        Ok(FqUnits { q, p, degree: e, modulus, exp, log })
    }

    pub fn order(&self) -> u64 {
        self.q - 1
    }

    pub fn generator(&self) -> u64 {
        self.exp.get(1).copied().unwrap_or(1)
    }

    pub fn log(&self, x: u64) -> u64 {
        assert!(x != 0 && x < self.q, "log of a non-unit");
        self.log[x as usize]
    }

    pub fn exp(&self, k: u64) -> u64 {
        self.exp[(k % self.order()) as usize]
    }

    /// `1 - x` in the encoding.
    pub fn one_minus(&self, x: u64) -> u64 {
        let mut c = digits(x, self.p, self.degree);
        for d in c.iter_mut() {
            *d = (self.p - *d) % self.p;
        }
        c[0] = (c[0] + 1) % self.p;
        encode(&c, self.p)
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        if a == 0 || b == 0 {
            return 0;
        }
        self.exp(self.log(a) + self.log(b))
    }
}

/// Elementary divisors `d_1 | d_2 | ...` of a finitely generated abelian
/// group; `0` stands for a copy of `Z`. Empty means trivial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AbGroupInvariants(pub Vec<u64>);

impl AbGroupInvariants {
    pub fn is_trivial(&self) -> bool {
        self.0.is_empty()
    }

    /// `dim_{F_p} (G ⊗ F_p)`.
    pub fn dim_mod(&self, p: u64) -> usize {
        self.0.iter().filter(|&&d| d == 0 || d % p == 0).count()
    }

    /// Order of a finite group, `None` if infinite.
    pub fn order(&self) -> Option<u64> {
        self.0.iter().try_fold(1u64, |acc, &d| (d != 0).then(|| acc * d))
    }
}

/// `K^M_n(F_q)`: the `n`-fold tensor power of the units modulo the
/// Steinberg relations `... ⊗ a ⊗ (1 - a) ⊗ ...` in every pair of adjacent
/// slots. `K_0 = Z` is reported as `[0]`.
pub fn milnor_k(q: u64, n: usize) -> Result<AbGroupInvariants> {
    if n > MAX_N {
        return Err(MotkitError::Rejected(format!("degree n = {n} exceeds the bound {MAX_N}")));
    }
    let f = FqUnits::new(q)?;
    if n == 0 {
        return Ok(AbGroupInvariants(vec![0]));
    }
    let m = f.order();
    // (F_q^*)^{⊗n} = Z/m through g^{k_1} ⊗ ... ⊗ g^{k_n} -> k_1 ⋯ k_n
    let mut relations: Vec<Vec<i128>> = vec![vec![m as i128]];
    // Under that identification a Steinberg relation in any slot maps to
    // log(a)·log(1-a)·(product of the other exponents).
    let mut seen = vec![false; m as usize];
    seen[0] = true;
    let fillers = if n >= 2 { m.pow(n as u32 - 2) } else { 0 };
    for a in 2..q {
        let b = f.one_minus(a);
        if b == 0 {
            continue;
        }
        let core = f.log(a) * f.log(b) % m;
        for rest in 0..fillers {
            let mut prod = core;
            let mut r = rest;
            for _ in 2..n {
                prod = prod * (r % m) % m;
                r /= m;
            }
            if !seen[prod as usize] {
                seen[prod as usize] = true;
                relations.push(vec![prod as i128]);
            }
        }
    }
    let diag = smith_diagonal(&relations, 1)?;
    let mut out: Vec<u64> = diag.iter().map(|&d| d.unsigned_abs() as u64).filter(|&d| d != 1).collect();
    if diag.is_empty() {
        out.push(0);
    }
    Ok(AbGroupInvariants(out))
}

/// `dim Hom(1, 1(i)[j])` over `F̄_p` with `F_p` coefficients, plus the
/// field sizes at which the vanishing was recomputed from Milnor K-groups.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TateHom {
    pub p: u64,
    pub i: i64,
    pub j: i64,
    pub dim: usize,
    pub verified_over: Vec<u64>,
}

pub fn tate_hom(p: u64, i: i64, j: i64) -> Result<TateHom> {
    if !is_prime(p) {
        return Err(MotkitError::NotPrime(p));
    }
    let dim = usize::from(i == 0 && j == 0);
    let mut verified_over = Vec::new();
    if i == j && (0..=MAX_N as i64).contains(&i) {
        let mut q = p;
        for _ in 0..3 {
            if q > MAX_Q {
                break;
            }
            let k = milnor_k(q, i as usize)?;
            if k.dim_mod(p) != dim {
                return Err(MotkitError::SelfCheck(format!(
                    "K_{i}(F_{q}) ⊗ F_{p} has dimension {} but the Tate Hom table predicts {dim}",
                    k.dim_mod(p)
                )));
            }
            verified_over.push(q);
            q *= p;
        }
    }
    Ok(TateHom { p, i, j, dim, verified_over })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(64), Some((2, 6)));
        assert_eq!(prime_power(27), Some((3, 3)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
    }

    fn add(f: &FqUnits, x: u64, y: u64) -> u64 {
        let (a, b) = (digits(x, f.p, f.degree), digits(y, f.p, f.degree));
        encode(&a.iter().zip(&b).map(|(s, t)| (s + t) % f.p).collect::<Vec<_>>(), f.p)
    }

    /// Schoolbook product: Σ y_i t^i x.
    fn slow_mul(f: &FqUnits, x: u64, y: u64) -> u64 {
        let mut acc = 0;
        let mut shifted = x;
        for d in digits(y, f.p, f.degree) {
            for _ in 0..d {
                acc = add(f, acc, shifted);
            }
            shifted = times_t(shifted, &f.modulus, f.p, f.degree);
        }
        acc
    }

    #[test]
    fn log_tables_match_polynomial_arithmetic() {
        for q in [2, 4, 7, 8, 9, 16, 25, 27, 32, 49, 64] {
            let f = FqUnits::new(q).unwrap();
            let mut seen: Vec<u64> = (0..f.order()).map(|k| f.exp(k)).collect();
            seen.sort_unstable();
            assert_eq!(seen, (1..q).collect::<Vec<_>>(), "q = {q}");
            for x in 1..q {
                assert_eq!(add(&f, f.one_minus(x), x), 1);
                for y in 1..q {
                    assert_eq!(f.mul(x, y), slow_mul(&f, x, y), "q = {q}");
                }
            }
        }
    }

    #[test]
    fn k2_of_f5_by_hand() {
        // the symbols a ⊗ (1-a), a = 2, 3, 4, together with 4 generate Z
        let f = FqUnits::new(5).unwrap();
        let g = (2..5).map(|a| f.log(a) * f.log(f.one_minus(a))).fold(4, |x, y| crate::intlin::gcd(x as i128, y as i128) as u64);
        assert_eq!(g, 1);
        assert!(milnor_k(5, 2).unwrap().is_trivial());
        assert_eq!(milnor_k(5, 1).unwrap(), AbGroupInvariants(vec![4]));
        assert_eq!(milnor_k(5, 0).unwrap(), AbGroupInvariants(vec![0]));
    }

    #[test]
    fn bounds_are_enforced() {
        assert!(milnor_k(81, 1).is_err());
        assert!(milnor_k(6, 1).is_err());
        assert!(milnor_k(5, 4).is_err());
    }
}
