//! The Hecke algebra of a finite Weyl group over `Z[v, v^{-1}]`.
//!
//! Normalization: `H_s^2 = (v^{-1} - v) H_s + H_e`, `b_s = H_s + v H_e`, so
//! the Kazhdan–Lusztig basis is `b_w = H_w + Σ_{y<w} h_{y,w} H_y` with
//! `h_{y,w} ∈ vZ[v]`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use serde::Serialize;

use crate::coxeter::{CartanType, WeylGroup};
use crate::error::{MotkitError, Result};
use crate::laurent::LaurentPoly;

/// A finite combination `Σ p_w H_w`, keyed by element index in the group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeckeElt {
    pub cartan_type: CartanType,
    terms: BTreeMap<usize, LaurentPoly>,
}

impl HeckeElt {
    pub fn zero(cartan_type: CartanType) -> Self {
        HeckeElt { cartan_type, terms: BTreeMap::new() }
    }

    pub fn standard(cartan_type: CartanType, w: usize) -> Self {
        let mut h = Self::zero(cartan_type);
        h.add_term(w, &LaurentPoly::one());
        h
    }

    pub fn add_term(&mut self, w: usize, p: &LaurentPoly) {
        if p.is_zero() {
            return;
        }
        let e = self.terms.entry(w).or_default();
        *e += p;
        if e.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn coeff(&self, w: usize) -> LaurentPoly {
        self.terms.get(&w).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &LaurentPoly)> {
        self.terms.iter().map(|(&w, p)| (w, p))
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.terms.keys().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, p: &LaurentPoly) -> Self {
        let mut out = Self::zero(self.cartan_type);
        for (w, q) in self.terms() {
            out.add_term(w, &(q * p));
        }
        out
    }

    pub fn add(&self, other: &HeckeElt) -> Self {
        let mut out = self.clone();
        for (w, q) in other.terms() {
            out.add_term(w, q);
        }
        out
    }

    pub fn sub(&self, other: &HeckeElt) -> Self {
        let mut out = self.clone();
        for (w, q) in other.terms() {
            out.add_term(w, &-q);
        }
        out
    }

    pub fn has_nonnegative_coefficients(&self) -> bool {
        self.terms.values().all(LaurentPoly::has_nonnegative_coefficients)
    }
}

/// JSON view: canonical word → `[[deg, coeff], ...]`.
#[derive(Serialize)]
pub struct HeckeJson(pub BTreeMap<String, LaurentPoly>);

#[derive(Debug)]
pub struct HeckeAlgebra {
    group: Arc<WeylGroup>,
    bar_cache: Mutex<HashMap<usize, HeckeElt>>,
    kl_cache: Mutex<HashMap<usize, HeckeElt>>,
}

impl HeckeAlgebra {
    pub fn new(group: Arc<WeylGroup>) -> Self {
        HeckeAlgebra { group, bar_cache: Mutex::default(), kl_cache: Mutex::default() }
    }

    pub fn group(&self) -> &Arc<WeylGroup> {
        &self.group
    }

    fn ty(&self) -> CartanType {
        self.group.cartan_type()
    }

    fn check(&self, a: &HeckeElt) -> Result<()> {
        if a.cartan_type == self.ty() {
            Ok(())
        } else {
            Err(MotkitError::DatumMismatch(self.ty().to_string(), a.cartan_type.to_string()))
        }
    }

    pub fn one(&self) -> HeckeElt {
        HeckeElt::standard(self.ty(), 0)
    }

    pub fn standard(&self, w: usize) -> HeckeElt {
        HeckeElt::standard(self.ty(), w)
    }

    /// `b_s = H_s + v H_e`.
    pub fn b_s(&self, s: usize) -> HeckeElt {
        let mut h = self.standard(self.group.right_mul(0, s));
        h.add_term(0, &LaurentPoly::v());
        h
    }

    /// `a · H_s`.
    pub fn mul_h_s(&self, a: &HeckeElt, s: usize) -> HeckeElt {
        let quad = LaurentPoly::from_terms([(-1, 1), (1, -1)]);
        let mut out = HeckeElt::zero(a.cartan_type);
        for (x, p) in a.terms() {
            let xs = self.group.right_mul(x, s);
            out.add_term(xs, p);
            if self.group.length(xs) < self.group.length(x) {
                out.add_term(x, &(p * &quad));
            }
        }
        out
    }

    /// `H_s · a`.
    pub fn h_s_mul(&self, s: usize, a: &HeckeElt) -> HeckeElt {
        let quad = LaurentPoly::from_terms([(-1, 1), (1, -1)]);
        let mut out = HeckeElt::zero(a.cartan_type);
        for (x, p) in a.terms() {
            let sx = self.group.left_mul(x, s);
            out.add_term(sx, p);
            if self.group.length(sx) < self.group.length(x) {
                out.add_term(x, &(p * &quad));
            }
        }
        out
    }

    /// `a · b_s`.
    pub fn mul_b_s(&self, a: &HeckeElt, s: usize) -> HeckeElt {
        self.mul_h_s(a, s).add(&a.scale(&LaurentPoly::v()))
    }

    pub fn mul(&self, a: &HeckeElt, b: &HeckeElt) -> Result<HeckeElt> {
        self.check(a)?;
        self.check(b)?;
        let mut out = HeckeElt::zero(self.ty());
        for (y, q) in b.terms() {
            let mut t = a.scale(q);
            for &s in self.group.element(y).canonical_word() {
                t = self.mul_h_s(&t, s);
            }
            out = out.add(&t);
        }
        Ok(out)
    }

    /// `bar(H_w) = (H_{w^{-1}})^{-1}`, memoized.
    fn bar_standard(&self, w: usize) -> HeckeElt {
        if let Some(h) = self.bar_cache.lock().expect("bar cache").get(&w) {
            return h.clone();
        }
        let h = match self.group.element(w).canonical_word().last() {
            None => self.one(),
            Some(&s) => {
                let prev = self.group.right_mul(w, s);
                let b = self.bar_standard(prev);
                // bar(H_s) = H_s + (v - v^{-1})
                let corr = LaurentPoly::from_terms([(1, 1), (-1, -1)]);
                self.mul_h_s(&b, s).add(&b.scale(&corr))
            }
        };
        self.bar_cache.lock().expect("bar cache").insert(w, h.clone());
        h
    }

    pub fn bar(&self, a: &HeckeElt) -> Result<HeckeElt> {
        self.check(a)?;
        let mut out = HeckeElt::zero(self.ty());
        for (w, p) in a.terms() {
            out = out.add(&self.bar_standard(w).scale(&p.bar()));
        }
        Ok(out)
    }

    pub fn is_bar_invariant(&self, a: &HeckeElt) -> Result<bool> {
        Ok(self.bar(a)? == *a)
    }

    /// The Kazhdan–Lusztig basis element `b_w`, computed by
    /// `b_{w} = b_{ws} b_s - Σ_{y<ws, ys<y} μ(y, ws) b_y` with `ws < w`,
    /// where `μ(y, x)` is the coefficient of `v` in `h_{y,x}`.
    pub fn kl_basis(&self, w: usize) -> HeckeElt {
        if let Some(h) = self.kl_cache.lock().expect("kl cache").get(&w) {
            return h.clone();
        }
        let h = match self.group.element(w).canonical_word().last() {
            None => self.one(),
            Some(&s) => {
                let x = self.group.right_mul(w, s);
                let bx = self.kl_basis(x);
                let mut out = self.mul_b_s(&bx, s);
                for (y, h_yx) in bx.terms() {
                    if y == x {
                        continue;
                    }
                    let ys = self.group.right_mul(y, s);
                    if self.group.length(ys) < self.group.length(y) {
                        let mu = h_yx.coeff(1);
                        if mu != 0 {
                            out = out.sub(&self.kl_basis(y).scale(&LaurentPoly::monomial(0, mu)));
                        }
                    }
                }
                out
            }
        };
        self.kl_cache.lock().expect("kl cache").insert(w, h.clone());
        h
    }

    /// Kazhdan–Lusztig polynomial coefficient `h_{y,w}`.
    pub fn kl_coefficient(&self, y: usize, w: usize) -> LaurentPoly {
        self.kl_basis(w).coeff(y)
    }

    /// `b_{s1} b_{s2} ... b_{sl}`; the empty word gives `H_e`.
    pub fn bs_character(&self, word: &[usize]) -> Result<HeckeElt> {
        let mut out = self.one();
        for &s in word {
            if s >= self.group.rank() {
                return Err(MotkitError::InvalidWord(format!("generator s{} out of range", s + 1)));
            }
            out = self.mul_b_s(&out, s);
        }
        Ok(out)
    }

    /// Write a bar-invariant element as `Σ m_y b_y` with bar-invariant
    /// `m_y`, peeling off the longest support element first.
    pub fn kl_expand(&self, a: &HeckeElt) -> Result<BTreeMap<usize, LaurentPoly>> {
        self.check(a)?;
        let mut rest = a.clone();
        let mut out = BTreeMap::new();
        while let Some(top) = rest.support().max_by_key(|&y| (self.group.length(y), y)) {
            let m = rest.coeff(top);
            if !m.is_bar_invariant() {
                return Err(MotkitError::Normalization(format!(
                    "coefficient {m} of H_{} is not bar-invariant",
                    self.group.element(top)
                )));
            }
            rest = rest.sub(&self.kl_basis(top).scale(&m));
            out.insert(top, m);
        }
        Ok(out)
    }

    pub fn to_json(&self, a: &HeckeElt) -> HeckeJson {
        HeckeJson(a.terms().map(|(w, p)| (self.group.element(w).to_string(), p.clone())).collect())
    }
}
