//! The symmetric algebra of the weight lattice with its Weyl group action,
//! Demazure operators, and the coinvariant algebra over `F_p`.
//!
//! Generators `x_j` are the fundamental weights, each of degree 2. Internally
//! we index by polynomial degree `n` (graded degree `2n`).
//!
//! The coinvariant algebra is the quotient of `S ⊗ F_p` by the ideal
//! generated by the reductions of the positive-degree integral invariants,
//! built degree by degree. Invariants computed directly over `F_p` can be
//! too large at small primes (type `C` at 2, `F4` at 3), so the mod-`p`
//! kernel is checked against the rational dimension and refined p-adically
//! when it overshoots.

use std::collections::BTreeMap;
use std::fmt;

use crate::coxeter::{torsion_primes, RootDatum, WeylElt};
use crate::error::{MotkitError, Result};
use crate::fp::{is_prime, Fp, FpMat, RowSpace};
use crate::intlin::kernel_mod_prime_power;
use crate::laurent::LaurentPoly;

pub type Monomial = Vec<u32>;

/// Largest rank for which we build coinvariant algebras.
pub const MAX_RANK: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Base {
    Integers,
    Mod(u32),
}

/// A polynomial in the fundamental weights, with integer or `F_p`
/// coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct GradedPoly {
    nvars: usize,
    base: Base,
    terms: BTreeMap<Monomial, i64>,
}

impl fmt::Debug for GradedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| {
                let mono: Vec<String> = m
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(j, &e)| if e == 1 { format!("w{}", j + 1) } else { format!("w{}^{e}", j + 1) })
                    .collect();
                if mono.is_empty() {
                    format!("{c}")
                } else {
                    format!("{c}*{}", mono.join("*"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl GradedPoly {
    pub fn zero(nvars: usize) -> Self {
        GradedPoly { nvars, base: Base::Integers, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::monomial(vec![0; nvars], 1)
    }

    pub fn monomial(m: Monomial, c: i64) -> Self {
        let mut p = Self::zero(m.len());
        p.add_term(m, c);
        p
    }

    /// The fundamental weight `ϖ_j` as a degree-2 generator.
    pub fn variable(nvars: usize, j: usize) -> Self {
        let mut m = vec![0; nvars];
        m[j] = 1;
        Self::monomial(m, 1)
    }

    /// The linear form with the given weight coordinates.
    pub fn linear(coords: &[i64]) -> Self {
        let n = coords.len();
        let mut p = Self::zero(n);
        for (j, &c) in coords.iter().enumerate() {
            let mut m = vec![0; n];
            m[j] = 1;
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn base(&self) -> Base {
        self.base
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, i64)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: Monomial, c: i64) {
        debug_assert_eq!(m.len(), self.nvars);
        let c = match self.base {
            Base::Integers => c,
            Base::Mod(p) => c.rem_euclid(p as i64),
        };
        if c == 0 {
            return;
        }
        let e = self.terms.entry(m.clone()).or_insert(0);
        *e += c;
        if let Base::Mod(p) = self.base {
            *e = e.rem_euclid(p as i64);
        }
        if *e == 0 {
            self.terms.remove(&m);
        }
    }

    /// Reduce coefficients mod `p`.
    pub fn reduce_mod(&self, p: u32) -> Self {
        let mut out = GradedPoly { nvars: self.nvars, base: Base::Mod(p), terms: BTreeMap::new() };
        for (m, c) in self.terms() {
            out.add_term(m.clone(), c);
        }
        out
    }

    /// Polynomial degree of each term (half the graded degree), if homogeneous.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut degs = self.terms.keys().map(|m| m.iter().sum::<u32>() as usize);
        let d = degs.next()?;
        degs.all(|e| e == d).then_some(d)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m.clone(), -c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = GradedPoly { nvars: self.nvars, base: self.base, terms: BTreeMap::new() };
        for (m1, c1) in self.terms() {
            for (m2, c2) in other.terms() {
                let m: Monomial = m1.iter().zip(m2).map(|(a, b)| a + b).collect();
                out.add_term(m, c1 * c2);
            }
        }
        out
    }

    fn pow(&self, e: u32) -> Self {
        let mut out = GradedPoly { nvars: self.nvars, base: self.base, terms: BTreeMap::new() };
        out.add_term(vec![0; self.nvars], 1);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Apply the linear substitution `x_j -> Σ_k m[k][j] x_k`, i.e. the
    /// algebra automorphism induced by a lattice automorphism with matrix `m`.
    pub fn substitute(&self, matrix: &[Vec<i64>]) -> Self {
        let n = self.nvars;
        let images: Vec<GradedPoly> = (0..n)
            .map(|j| {
                let col: Vec<i64> = (0..n).map(|k| matrix[k][j]).collect();
                let mut l = GradedPoly::linear(&col);
                l.base = self.base;
                l
            })
            .collect();
        let mut out = GradedPoly { nvars: n, base: self.base, terms: BTreeMap::new() };
        for (m, c) in self.terms() {
            let mut t = GradedPoly { nvars: n, base: self.base, terms: BTreeMap::new() };
            t.add_term(vec![0; n], c);
            for (j, &e) in m.iter().enumerate() {
                if e > 0 {
                    t = t.mul(&images[j].pow(e));
                }
            }
            out = out.add(&t);
        }
        out
    }

    /// Exact division by a nonzero linear form over `Z` (lex order).
    pub fn div_linear(&self, l: &GradedPoly) -> Result<Self> {
        if self.base != Base::Integers {
            return Err(MotkitError::NotIntegral);
        }
        let (lead_m, lead_c) = l.terms.iter().next_back().map(|(m, &c)| (m.clone(), c)).ok_or_else(|| {
            MotkitError::Rejected("division by zero linear form".into())
        })?;
        let k = lead_m.iter().position(|&e| e == 1).expect("linear");
        let mut rem = self.clone();
        let mut q = GradedPoly::zero(self.nvars);
        while let Some((m, c)) = rem.terms.iter().next_back().map(|(m, &c)| (m.clone(), c)) {
            if m[k] == 0 || c % lead_c != 0 {
                return Err(MotkitError::Rejected("division by root is not exact over Z".into()));
            }
            let mut qm = m.clone();
            qm[k] -= 1;
            let t = GradedPoly::monomial(qm, c / lead_c);
            rem = rem.sub(&t.mul(l));
            q = q.add(&t);
        }
        Ok(q)
    }
}

/// `w · f`.
pub fn weyl_act(w: &WeylElt, f: &GradedPoly) -> GradedPoly {
    f.substitute(w.action_matrix())
}

/// The Demazure operator `∂_s f = (f - s·f) / α_s` over `Z`.
pub fn demazure(datum: &RootDatum, s: usize, f: &GradedPoly) -> Result<GradedPoly> {
    if f.base() != Base::Integers {
        return Err(MotkitError::NotIntegral);
    }
    if s >= datum.rank {
        return Err(MotkitError::InvalidWord(format!("generator s{} out of range", s + 1)));
    }
    let sf = f.substitute(&datum.reflection_matrix(s));
    f.sub(&sf).div_linear(&GradedPoly::linear(&datum.simple_roots[s]))
}

/// All exponent vectors of total degree `n` in `r` variables, lex-descending
/// (so `x_1^n` comes first).
pub fn monomials(r: usize, n: usize) -> Vec<Monomial> {
    fn rec(r: usize, n: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if prefix.len() == r - 1 {
            prefix.push(n);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=n).rev() {
            prefix.push(e);
            rec(r, n - e, prefix, out);
            prefix.pop();
        }
    }
    if r == 0 {
        return if n == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    rec(r, n as u32, &mut Vec::new(), &mut out);
    out
}

/// A homogeneous element of the coinvariant algebra: coordinates in the
/// standard-monomial basis of polynomial degree `deg`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CElt {
    pub deg: usize,
    pub coords: Vec<u32>,
}

impl CElt {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }
}

#[derive(Debug)]
struct Degree {
    monomials: Vec<Monomial>,
    index: BTreeMap<Monomial, usize>,
    ideal: RowSpace,
    /// Monomial indices of the standard monomials (the basis of `C_n`).
    standard: Vec<usize>,
    /// Position of each monomial among the standard ones, if standard.
    standard_pos: Vec<Option<usize>>,
    /// Generators of the ideal first needed in this degree (mod `p`).
    new_generators: Vec<Vec<u32>>,
}

/// `C = (S(X) / S(X)^W_+) ⊗ F_p`.
#[derive(Debug)]
pub struct CoinvariantAlgebra {
    pub datum: RootDatum,
    pub field: Fp,
    /// `ℓ(w0)`: the top polynomial degree.
    pub top: usize,
    degrees: Vec<Degree>,
    /// `gen_mult[j][n]`: multiplication by `x_j`, `C_n -> C_{n+1}`.
    gen_mult: Vec<Vec<FpMat>>,
    /// `demazure[s][n]`: `∂_s : C_n -> C_{n-1}` (entry 0 is the zero map).
    demazure: Vec<Vec<FpMat>>,
    /// Chosen `x` with `∂_s(x) = 1`, per generator, in `C_1` coordinates.
    splitting: Vec<Vec<u32>>,
}

impl CoinvariantAlgebra {
    pub fn build(datum: &RootDatum, p: u32) -> Result<Self> {
        if !is_prime(p as u64) || p >= (1 << 31) {
            return Err(MotkitError::NotPrime(p as u64));
        }
        if datum.rank > MAX_RANK {
            return Err(MotkitError::Precondition(format!(
                "coinvariant algebras are built for rank <= {MAX_RANK}, got {}",
                datum.cartan_type
            )));
        }
        let f = Fp::new(p);
        let r = datum.rank;
        let top = datum.positive_roots.len();
        let refl: Vec<_> = (0..r).map(|i| datum.reflection_matrix(i)).collect();

        let mut degrees: Vec<Degree> = Vec::with_capacity(top + 2);
        for n in 0..=top + 1 {
            let monos = monomials(r, n);
            let index: BTreeMap<Monomial, usize> = monos.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
            let mut ideal = RowSpace::new(monos.len());
            let mut new_generators = Vec::new();
            if n > 0 {
                let prev = &degrees[n - 1];
                let shifted: Vec<Vec<u32>> = prev
                    .ideal
                    .basis()
                    .flat_map(|row| {
                        (0..r).map(|j| {
                            let mut v = vec![0u32; monos.len()];
                            for (i, &c) in row.iter().enumerate() {
                                if c != 0 {
                                    let mut m = prev.monomials[i].clone();
                                    m[j] += 1;
                                    v[index[&m]] = c;
                                }
                            }
                            v
                        })
                    })
                    .collect();
                for v in shifted {
                    ideal.insert(v, f);
                }
                for v in invariants_mod_p(datum, &refl, n, &monos, &index, f)? {
                    if ideal.insert(v.clone(), f) {
                        new_generators.push(v);
                    }
                }
            }
            let pivots = ideal.pivots();
            let mut is_pivot = vec![false; monos.len()];
            for &c in &pivots {
                is_pivot[c] = true;
            }
            let standard: Vec<usize> = (0..monos.len()).filter(|&i| !is_pivot[i]).collect();
            let mut standard_pos = vec![None; monos.len()];
            for (k, &i) in standard.iter().enumerate() {
                standard_pos[i] = Some(k);
            }
            degrees.push(Degree { monomials: monos, index, ideal, standard, standard_pos, new_generators });
        }
        let vanishing = &degrees[top + 1];
        if !vanishing.standard.is_empty() {
            return Err(MotkitError::QuotientDoesNotVanish { degree: 2 * (top + 1), dim: vanishing.standard.len() });
        }

        let mut c = CoinvariantAlgebra {
            datum: datum.clone(),
            field: f,
            top,
            degrees,
            gen_mult: Vec::new(),
            demazure: Vec::new(),
            splitting: Vec::new(),
        };
        c.gen_mult = (0..r)
            .map(|j| {
                (0..=top)
                    .map(|n| {
                        let cols: Vec<Vec<u32>> = c.degrees[n]
                            .standard
                            .iter()
                            .map(|&i| {
                                let mut m = c.degrees[n].monomials[i].clone();
                                m[j] += 1;
                                c.normal_form_monomial(n + 1, &m)
                            })
                            .collect();
                        FpMat::from_columns(c.dim(n + 1), &cols)
                    })
                    .collect()
            })
            .collect();
        let mut dem = Vec::with_capacity(r);
        for s in 0..r {
            let mut per_deg = vec![FpMat::zeros(0, c.dim(0))];
            for n in 1..=top {
                let mut cols = Vec::new();
                for &i in &c.degrees[n].standard {
                    let m = c.degrees[n].monomials[i].clone();
                    let d = demazure(datum, s, &GradedPoly::monomial(m, 1))?;
                    cols.push(c.normal_form_poly(n - 1, &d));
                }
                per_deg.push(FpMat::from_columns(c.dim(n - 1), &cols));
            }
            dem.push(per_deg);
        }
        c.demazure = dem;
        c.splitting = (0..r).map(|s| c.find_splitting_element(s)).collect::<Result<_>>()?;
        Ok(c)
    }

    pub fn prime(&self) -> u32 {
        self.field.p()
    }

    pub fn rank(&self) -> usize {
        self.datum.rank
    }

    /// `dim C_n` for polynomial degree `n` (graded degree `2n`).
    pub fn dim(&self, n: usize) -> usize {
        self.degrees.get(n).map_or(0, |d| d.standard.len())
    }

    /// Dimensions indexed by graded degree `0..=2 top` (odd entries zero).
    pub fn graded_dims(&self) -> Vec<usize> {
        (0..=2 * self.top).map(|d| if d % 2 == 0 { self.dim(d / 2) } else { 0 }).collect()
    }

    pub fn total_dim(&self) -> usize {
        (0..=self.top).map(|n| self.dim(n)).sum()
    }

    pub fn torsion_primes(&self) -> Vec<u32> {
        torsion_primes(&self.datum)
    }

    /// Whether `p` avoids the torsion primes (the case where `C` computes the
    /// cohomology of the flag variety).
    pub fn prime_ok(&self) -> bool {
        !self.torsion_primes().contains(&self.prime())
    }

    /// The standard monomials spanning `C_n`.
    pub fn basis_monomials(&self, n: usize) -> Vec<Monomial> {
        self.degrees.get(n).map_or_else(Vec::new, |d| d.standard.iter().map(|&i| d.monomials[i].clone()).collect())
    }

    pub fn generator_image(&self, j: usize) -> CElt {
        let mut m = vec![0; self.rank()];
        m[j] = 1;
        CElt { deg: 1, coords: self.normal_form_monomial(1, &m) }
    }

    pub fn one(&self) -> CElt {
        CElt { deg: 0, coords: vec![1] }
    }

    pub fn zero(&self, n: usize) -> CElt {
        CElt { deg: n, coords: vec![0; self.dim(n)] }
    }

    fn normal_form_vec(&self, n: usize, mut v: Vec<u32>) -> Vec<u32> {
        let d = &self.degrees[n];
        d.ideal.reduce(&mut v, self.field);
        d.standard.iter().map(|&i| v[i]).collect()
    }

    fn normal_form_monomial(&self, n: usize, m: &Monomial) -> Vec<u32> {
        if n >= self.degrees.len() {
            return Vec::new();
        }
        let d = &self.degrees[n];
        if let Some(k) = d.standard_pos[d.index[m]] {
            let mut out = vec![0; d.standard.len()];
            out[k] = 1;
            return out;
        }
        let mut v = vec![0u32; d.monomials.len()];
        v[d.index[m]] = 1;
        self.normal_form_vec(n, v)
    }

    /// Class in `C_n` of a homogeneous integral or mod-`p` polynomial.
    pub fn normal_form_poly(&self, n: usize, f: &GradedPoly) -> Vec<u32> {
        if n >= self.degrees.len() {
            return Vec::new();
        }
        let d = &self.degrees[n];
        let mut v = vec![0u32; d.monomials.len()];
        for (m, c) in f.terms() {
            let i = d.index[m];
            v[i] = self.field.add(v[i], self.field.from_i64(c));
        }
        self.normal_form_vec(n, v)
    }

    pub fn element(&self, f: &GradedPoly) -> Result<CElt> {
        let n = match f.homogeneous_degree() {
            Some(n) => n,
            None if f.is_zero() => 0,
            None => return Err(MotkitError::Rejected("element of C must be homogeneous".into())),
        };
        Ok(CElt { deg: n, coords: if n > self.top { Vec::new() } else { self.normal_form_poly(n, f) } })
    }

    /// Integral lift of an element on its standard monomials.
    pub fn lift(&self, c: &CElt) -> GradedPoly {
        let mut f = GradedPoly::zero(self.rank());
        if c.deg > self.top {
            return f;
        }
        let d = &self.degrees[c.deg];
        for (k, &x) in c.coords.iter().enumerate() {
            f.add_term(d.monomials[d.standard[k]].clone(), self.field.lift(x));
        }
        f
    }

    /// Structure constants: coordinates of `b_i · b_j` for basis elements of
    /// `C_{n1}` and `C_{n2}`.
    pub fn structure_constants(&self, n1: usize, i: usize, n2: usize, j: usize) -> Vec<u32> {
        let d1 = &self.degrees[n1];
        let d2 = &self.degrees[n2];
        let m: Monomial =
            d1.monomials[d1.standard[i]].iter().zip(&d2.monomials[d2.standard[j]]).map(|(a, b)| a + b).collect();
        if n1 + n2 > self.top {
            return Vec::new();
        }
        self.normal_form_monomial(n1 + n2, &m)
    }

    pub fn mul(&self, a: &CElt, b: &CElt) -> CElt {
        let n = a.deg + b.deg;
        let mut out = vec![0u32; self.dim(n)];
        if n <= self.top {
            for (i, &x) in a.coords.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                for (j, &y) in b.coords.iter().enumerate() {
                    if y == 0 {
                        continue;
                    }
                    let xy = self.field.mul(x, y);
                    for (o, c) in out.iter_mut().zip(self.structure_constants(a.deg, i, b.deg, j)) {
                        *o = self.field.add(*o, self.field.mul(xy, c));
                    }
                }
            }
        }
        CElt { deg: n, coords: out }
    }

    pub fn add(&self, a: &CElt, b: &CElt) -> CElt {
        assert_eq!(a.deg, b.deg);
        CElt { deg: a.deg, coords: a.coords.iter().zip(&b.coords).map(|(&x, &y)| self.field.add(x, y)).collect() }
    }

    pub fn sub(&self, a: &CElt, b: &CElt) -> CElt {
        assert_eq!(a.deg, b.deg);
        CElt { deg: a.deg, coords: a.coords.iter().zip(&b.coords).map(|(&x, &y)| self.field.sub(x, y)).collect() }
    }

    /// Multiplication by the generator `x_j` as a map `C_n -> C_{n+1}`.
    pub fn generator_matrix(&self, j: usize, n: usize) -> &FpMat {
        &self.gen_mult[j][n]
    }

    pub fn demazure_matrix(&self, s: usize, n: usize) -> &FpMat {
        &self.demazure[s][n]
    }

    /// `∂_s` on `C`, induced from the integral operator.
    pub fn demazure(&self, s: usize, c: &CElt) -> CElt {
        if c.deg == 0 || c.deg > self.top {
            return self.zero(c.deg.saturating_sub(1));
        }
        CElt { deg: c.deg - 1, coords: self.demazure[s][c.deg].mul_vec(&c.coords, self.field) }
    }

    pub fn weyl_act(&self, w: &WeylElt, c: &CElt) -> CElt {
        let f = weyl_act(w, &self.lift(c));
        CElt { deg: c.deg, coords: self.normal_form_poly(c.deg, &f) }
    }

    fn find_splitting_element(&self, s: usize) -> Result<Vec<u32>> {
        let r = self.rank();
        let f = self.field;
        let works = |x: &[u32]| {
            let d = self.demazure[s][1].mul_vec(x, f);
            d == vec![1]
        };
        // fundamental weights first
        for j in std::iter::once(s).chain((0..r).filter(|&j| j != s)) {
            let x = self.generator_image(j).coords;
            if works(&x) {
                return Ok(x);
            }
        }
        // then small integer combinations in a fixed order
        let range: Vec<i64> = vec![0, 1, -1, 2, -2];
        let mut combo = vec![0usize; r];
        loop {
            let coeffs: Vec<i64> = combo.iter().map(|&k| range[k]).collect();
            let mut x = vec![0u32; self.dim(1)];
            for (j, &c) in coeffs.iter().enumerate() {
                for (o, g) in x.iter_mut().zip(self.generator_image(j).coords) {
                    *o = f.add(*o, f.mul(f.from_i64(c), g));
                }
            }
            if works(&x) {
                return Ok(x);
            }
            let mut k = 0;
            while k < r && combo[k] == range.len() - 1 {
                combo[k] = 0;
                k += 1;
            }
            if k == r {
                return Err(MotkitError::NoSplittingElement { s, p: self.prime() });
            }
            combo[k] += 1;
        }
    }

    /// The fixed degree-2 element `x` with `∂_s(x) = 1`.
    pub fn splitting_element(&self, s: usize) -> CElt {
        CElt { deg: 1, coords: self.splitting[s].clone() }
    }

    /// The unique decomposition `c = a + x·b` with `∂_s a = ∂_s b = 0`,
    /// namely `b = ∂_s c` and `a = c - x·∂_s c`.
    pub fn cs_split(&self, s: usize, c: &CElt) -> Result<(CElt, CElt)> {
        if s >= self.rank() {
            return Err(MotkitError::InvalidWord(format!("generator s{} out of range", s + 1)));
        }
        let b = self.demazure(s, c);
        if c.deg == 0 {
            return Ok((c.clone(), self.zero(0)));
        }
        let xb = self.mul(&self.splitting_element(s), &b);
        Ok((self.sub(c, &xb), b))
    }

    /// `Σ_n dim C_n t^{2n}`.
    pub fn poincare_poly(&self) -> LaurentPoly {
        LaurentPoly::from_terms((0..=self.top).map(|n| (2 * n as i32, self.dim(n) as i64)))
    }

    /// Generators of the defining ideal (mod `p`) first appearing in
    /// polynomial degree `n`, as (monomial, coefficient) lists.
    pub fn ideal_generators(&self, n: usize) -> Vec<Vec<(Monomial, u32)>> {
        self.sparse_rows(n, self.degrees[n].new_generators.iter().map(|v| v.as_slice()))
    }

    /// A spanning set of the whole ideal in degree `n`.
    pub fn ideal_basis(&self, n: usize) -> Vec<Vec<(Monomial, u32)>> {
        self.sparse_rows(n, self.degrees[n].ideal.basis())
    }

    fn sparse_rows<'a>(&self, n: usize, rows: impl Iterator<Item = &'a [u32]>) -> Vec<Vec<(Monomial, u32)>> {
        let d = &self.degrees[n];
        rows.map(|v| {
            v.iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, &c)| (d.monomials[i].clone(), c)).collect()
        })
        .collect()
    }

    /// Number of stored polynomial degrees (`top + 2`, including the
    /// vanishing check degree).
    pub fn stored_degrees(&self) -> usize {
        self.degrees.len()
    }
}

/// Build `C` for `datum` over `F_p`.
pub fn build_coinvariant(datum: &RootDatum, p: u32) -> Result<CoinvariantAlgebra> {
    CoinvariantAlgebra::build(datum, p)
}

pub fn poincare_poly(c: &CoinvariantAlgebra) -> LaurentPoly {
    c.poincare_poly()
}

/// Dimension of the degree-`n` invariants over `Q`: the number of ways to
/// write `n` as a sum of the basic degrees.
fn invariant_count(degrees: &[u32], n: usize) -> usize {
    let mut ways = vec![0usize; n + 1];
    ways[0] = 1;
    for &d in degrees {
        for k in d as usize..=n {
            ways[k] += ways[k - d as usize];
        }
    }
    ways[n]
}

fn to_vector(f: &GradedPoly, index: &BTreeMap<Monomial, usize>) -> Vec<i64> {
    let mut v = vec![0i64; index.len()];
    for (m, c) in f.terms() {
        v[index[m]] += c;
    }
    v
}

/// The image mod `p` of the integral degree-`n` invariants, as row vectors on
/// `monos`.
///
/// Starts from the explicit basis `{x^β q^j}` of the `s_1`-invariants, where
/// `q = -x_1 · s_1(x_1)` and `β` avoids `x_1`. Imposing the other reflections
/// mod `p` gives a space containing the reduction of the integral invariants;
/// equality is certified by comparing with the rational dimension. When the
/// certificate fails (small primes) the integral kernel is recovered from
/// kernels mod `p^e` for growing `e`.
fn invariants_mod_p(
    datum: &RootDatum,
    refl: &[Vec<Vec<i64>>],
    n: usize,
    monos: &[Monomial],
    index: &BTreeMap<Monomial, usize>,
    f: Fp,
) -> Result<Vec<Vec<u32>>> {
    let expected = invariant_count(&datum.cartan_type.degrees(), n);
    if expected == 0 {
        return Ok(Vec::new());
    }
    let r = datum.rank;
    let x0 = GradedPoly::variable(r, 0);
    let q = GradedPoly::zero(r).sub(&x0.mul(&x0.substitute(&refl[0])));
    let mut basis: Vec<GradedPoly> = Vec::new();
    let mut qj = GradedPoly::one(r);
    for j in 0..=n / 2 {
        for beta in monomials(r - 1, n - 2 * j) {
            let mut m = vec![0u32];
            m.extend(beta);
            basis.push(GradedPoly::monomial(m, 1).mul(&qj));
        }
        qj = qj.mul(&q);
    }
    let int_basis: Vec<Vec<i64>> = basis.iter().map(|b| to_vector(b, index)).collect();
    let images: Vec<Vec<Vec<i64>>> = refl[1..]
        .iter()
        .map(|s| basis.iter().map(|b| to_vector(&b.substitute(s).sub(b), index)).collect())
        .collect();

    // fast path: intersect over F_p
    let p = f.p();
    let modp = |v: &[i64]| -> Vec<u32> { v.iter().map(|&c| f.from_i64(c)).collect() };
    let mut coeffs: Vec<Vec<u32>> = (0..basis.len()).map(|i| (0..basis.len()).map(|k| u32::from(k == i)).collect()).collect();
    for img in &images {
        if coeffs.is_empty() {
            break;
        }
        let img: Vec<Vec<u32>> = img.iter().map(|v| modp(v)).collect();
        let cols: Vec<Vec<u32>> = coeffs.iter().map(|c| combine(f, c, &img, monos.len())).collect();
        let k = FpMat::from_columns(monos.len(), &cols).kernel(f);
        coeffs = k.iter().map(|kv| combine(f, kv, &coeffs, basis.len())).collect();
    }
    let reduce_basis: Vec<Vec<u32>> = int_basis.iter().map(|v| modp(v)).collect();
    if coeffs.len() == expected {
        return Ok(coeffs.iter().map(|c| combine(f, c, &reduce_basis, monos.len())).collect());
    }
    if coeffs.len() < expected {
        return Err(MotkitError::SelfCheck(format!(
            "degree {n} invariants mod {p}: found {} < rational dimension {expected}",
            coeffs.len()
        )));
    }

    // p-adic fallback on the stacked system
    let a: Vec<Vec<i128>> = images
        .iter()
        .flat_map(|img| (0..monos.len()).map(move |row| img.iter().map(|col| i128::from(col[row])).collect::<Vec<_>>()))
        .filter(|row: &Vec<i128>| row.iter().any(|&x| x != 0))
        .collect();
    for e in 2.. {
        let sols = kernel_mod_prime_power(&a, basis.len(), p as u64, e)?;
        let mut span = RowSpace::new(monos.len());
        for c in &sols {
            let c: Vec<u32> = c.iter().map(|&x| (x % p as u64) as u32).collect();
            span.insert(combine(f, &c, &reduce_basis, monos.len()), f);
        }
        if span.dim() == expected {
            return Ok(span.basis().map(|v| v.to_vec()).collect());
        }
    }
    unreachable!()
}

/// `Σ_k c_k rows[k]` over `F_p`.
fn combine(f: Fp, c: &[u32], rows: &[Vec<u32>], len: usize) -> Vec<u32> {
    let mut out = vec![0u32; len];
    for (&ck, row) in c.iter().zip(rows) {
        if ck == 0 {
            continue;
        }
        for (o, &x) in out.iter_mut().zip(row) {
            if x != 0 {
                *o = f.add(*o, f.mul(ck, x));
            }
        }
    }
    out
}
