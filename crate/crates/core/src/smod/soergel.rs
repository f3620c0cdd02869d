use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::coinv::CoinvariantAlgebra;
use crate::coxeter::{format_word, torsion_primes, WeylElt, WeylGroup};
use crate::error::{MotkitError, Result};
use crate::hecke::{HeckeAlgebra, HeckeElt};
use crate::laurent::LaurentPoly;

use super::decompose::{decompose, indecomposables_isomorphic, Summand};
use super::hom::{hom_shift, shift_range, EndAlgebra};
use super::module::{bott_samelson, GradedModule};

/// Cheap isomorphism invariants of a module.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fingerprint {
    /// Graded dimension in degree-2 units.
    pub gdim: LaurentPoly,
    /// `(k, dim Hom_k(M, M))` over every shift with possibly nonzero maps.
    pub end_dims: Vec<(i32, usize)>,
}

impl Fingerprint {
    pub fn of(m: &GradedModule) -> Result<Self> {
        let end_dims = shift_range(m, m).into_iter().map(|k| Ok((k, hom_shift(m, m, k)?.len()))).collect::<Result<_>>()?;
        Ok(Fingerprint { gdim: m.gdim(), end_dims })
    }
}

/// The indecomposable Soergel module `D_w`, normalized to bottom degree 0.
#[derive(Clone, Debug)]
pub struct IndecompRecord {
    pub label: WeylElt,
    pub module: GradedModule,
    pub fingerprint: Fingerprint,
    pub prime: u32,
    pub certified: bool,
}

/// A summand of a Bott–Samelson module identified as `D_x⟨shift⟩`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LabeledSummand {
    pub element: usize,
    pub shift: i32,
    pub certified: bool,
}

/// Graded dimension is palindromic with its top in degree `2 len`.
fn palindromic(gdim: &LaurentPoly, len: usize) -> bool {
    gdim.min_degree() == Some(0) && *gdim == gdim.bar().shift(len as i32)
}

/// Cache of the modules `D_w` for one algebra, filled in length order.
pub struct SoergelCatalog {
    alg: Arc<CoinvariantAlgebra>,
    group: Arc<WeylGroup>,
    hecke: HeckeAlgebra,
    seed: u64,
    records: BTreeMap<usize, IndecompRecord>,
    /// `μ_x(v)` for the summands `D_x`, `x ≠ w`, of `BS(canonical word of w)`.
    mults: BTreeMap<usize, BTreeMap<usize, LaurentPoly>>,
    pcan: BTreeMap<usize, HeckeElt>,
    fresh: Vec<usize>,
}

impl SoergelCatalog {
    /// Refuses torsion primes, where `C` stops computing the cohomology of
    /// the flag variety and `D_w` need not be well defined.
    pub fn new(alg: Arc<CoinvariantAlgebra>, seed: u64) -> Result<Self> {
        if torsion_primes(&alg.datum).contains(&alg.prime()) {
            return Err(MotkitError::Precondition(format!(
                "p = {} is a torsion prime of {}; Soergel modules over C are only classified for p outside {:?}",
                alg.prime(),
                alg.datum.cartan_type,
                torsion_primes(&alg.datum)
            )));
        }
        let group = Arc::new(WeylGroup::new(alg.datum.clone())?);
        Ok(SoergelCatalog {
            hecke: HeckeAlgebra::new(group.clone()),
            alg,
            group,
            seed,
            records: BTreeMap::new(),
            mults: BTreeMap::new(),
            pcan: BTreeMap::new(),
            fresh: Vec::new(),
        })
    }

    pub fn algebra(&self) -> &Arc<CoinvariantAlgebra> {
        &self.alg
    }

    pub fn group(&self) -> &Arc<WeylGroup> {
        &self.group
    }

    pub fn hecke(&self) -> &HeckeAlgebra {
        &self.hecke
    }

    pub fn prime(&self) -> u32 {
        self.alg.prime()
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn record(&self, w: usize) -> Option<&IndecompRecord> {
        self.records.get(&w)
    }

    /// Indices of records computed (not preloaded) since construction.
    pub fn fresh(&self) -> &[usize] {
        &self.fresh
    }

    /// Insert a record obtained elsewhere (e.g. from disk) together with the
    /// multiplicities `μ_x` of its Bott–Samelson module, if known. The
    /// module must live over this catalog's algebra.
    pub fn preload(&mut self, record: IndecompRecord, mults: Option<BTreeMap<usize, LaurentPoly>>) -> Result<()> {
        if !Arc::ptr_eq(record.module.algebra(), &self.alg) || record.prime != self.prime() {
            return Err(MotkitError::AlgebraMismatch(format!("record for {}", record.label)));
        }
        let w = self.group.index_of(&record.label)?;
        if let Some(m) = mults {
            if m.keys().any(|&x| x >= w || !self.group.bruhat_leq(x, w)) {
                return Err(MotkitError::Rejected(format!("multiplicities for {} name elements not below it", record.label)));
            }
            self.mults.insert(w, m);
        }
        self.records.insert(w, record);
        Ok(())
    }

    /// `μ_x(v)` as far as already known.
    pub fn known_multiplicities(&self, w: usize) -> Option<&BTreeMap<usize, LaurentPoly>> {
        self.mults.get(&w)
    }

    fn classify(&self, s: &Summand, candidates: impl Iterator<Item = usize>) -> Result<Option<usize>> {
        let gdim = s.module.gdim();
        for x in candidates {
            let rec = &self.records[&x];
            if rec.fingerprint.gdim == gdim && indecomposables_isomorphic(&s.module, &rec.module)? {
                return Ok(Some(x));
            }
        }
        Ok(None)
    }

    /// `D_w`, computing `D_x` for all `x < w` first.
    pub fn indecomposable(&mut self, w: usize) -> Result<&IndecompRecord> {
        if self.records.contains_key(&w) {
            return Ok(&self.records[&w]);
        }
        let below: Vec<usize> = (0..w).filter(|&x| self.group.bruhat_leq(x, w)).collect();
        for &x in &below {
            self.indecomposable(x)?;
        }
        let elt = self.group.element(w).clone();
        let word = elt.canonical_word().to_vec();
        let l = word.len();
        let bs = bott_samelson(&self.alg, &word)?;
        let summands = decompose(&bs, self.seed)?;
        let mut new = Vec::new();
        let mut mults: BTreeMap<usize, LaurentPoly> = BTreeMap::new();
        for s in summands {
            match self.classify(&s, below.iter().copied())? {
                Some(x) => {
                    let e = s.shift + self.group.length(x) as i32 - l as i32;
                    mults.entry(x).or_default().add_term(e, 1);
                }
                None => new.push(s),
            }
        }
        if new.len() != 1 {
            return Err(MotkitError::Classification {
                element: elt.to_string(),
                reason: format!("{} summands of BS({}) are not shifts of smaller D_x", new.len(), format_word(&word)),
            });
        }
        let s = new.pop().expect("one summand");
        if s.shift != 0 {
            return Err(MotkitError::Classification {
                element: elt.to_string(),
                reason: format!("new summand sits in shift {} instead of 0", s.shift),
            });
        }
        let module = s.module;
        if module.slot_dims().first() != Some(&1) || !palindromic(&module.gdim(), l) {
            return Err(MotkitError::Classification {
                element: elt.to_string(),
                reason: format!("new summand has graded dimension {}", module.gdim()),
            });
        }
        let fingerprint = Fingerprint::of(&module)?;
        let record = IndecompRecord { label: elt, module, fingerprint, prime: self.prime(), certified: s.certified };
        self.mults.insert(w, mults);
        self.records.insert(w, record);
        self.fresh.push(w);
        Ok(&self.records[&w])
    }

    /// Decompose `BS(word)` and label every summand by the `D_x` it is
    /// isomorphic to.
    pub fn labeled_decomposition(&mut self, word: &[usize]) -> Result<Vec<LabeledSummand>> {
        let l = word.len();
        let candidates: Vec<usize> = (0..self.group.order()).filter(|&x| self.group.length(x) <= l).collect();
        for &x in &candidates {
            self.indecomposable(x)?;
        }
        let bs = bott_samelson(&self.alg, word)?;
        let mut out = Vec::new();
        for s in decompose(&bs, self.seed)? {
            let x = self.classify(&s, candidates.iter().copied())?.ok_or_else(|| MotkitError::Classification {
                element: format_word(word),
                reason: format!("summand with graded dimension {} matches no D_x", s.module.gdim()),
            })?;
            out.push(LabeledSummand { element: x, shift: s.shift, certified: s.certified });
        }
        out.sort_by_key(|s| (s.element, s.shift));
        Ok(out)
    }

    /// `μ_x(v)` for the other summands of `BS(canonical word of w)`.
    pub fn multiplicities(&mut self, w: usize) -> Result<&BTreeMap<usize, LaurentPoly>> {
        if !self.mults.contains_key(&w) {
            // preloaded without multiplicities: redo the decomposition, which
            // also marks the record fresh so it is stored again
            let rec = self.records.remove(&w);
            if let Err(e) = self.indecomposable(w) {
                if let Some(r) = rec {
                    self.records.insert(w, r);
                }
                return Err(e);
            }
        }
        Ok(&self.mults[&w])
    }

    /// The p-canonical basis element `ᵖb_w = ch BS(w) - Σ μ_x ᵖb_x`.
    pub fn p_canonical(&mut self, w: usize) -> Result<HeckeElt> {
        if let Some(h) = self.pcan.get(&w) {
            return Ok(h.clone());
        }
        let mults = self.multiplicities(w)?.clone();
        let word = self.group.element(w).canonical_word().to_vec();
        let mut h = self.hecke.bs_character(&word)?;
        for (x, mu) in mults {
            let bx = self.p_canonical(x)?;
            h = h.sub(&bx.scale(&mu));
        }
        if !self.hecke.is_bar_invariant(&h)? {
            return Err(MotkitError::Normalization(format!(
                "p-canonical element for {} is not bar-invariant",
                self.group.element(w)
            )));
        }
        self.pcan.insert(w, h.clone());
        Ok(h)
    }
}

/// The standing assumption for reading p-canonical data as multiplicities in
/// modular category O: `p` exceeds the Coxeter number and is not a torsion
/// prime.
pub fn category_o_precondition(alg: &CoinvariantAlgebra) -> Result<()> {
    let p = alg.prime();
    let h = alg.datum.coxeter_number;
    let torsion = torsion_primes(&alg.datum);
    if p <= h {
        return Err(MotkitError::Precondition(format!(
            "p = {p} must be bigger than the Coxeter number h = {h} of {}",
            alg.datum.cartan_type
        )));
    }
    if torsion.contains(&p) {
        return Err(MotkitError::Precondition(format!(
            "p = {p} is a torsion prime of {}; the torsion index must be invertible",
            alg.datum.cartan_type
        )));
    }
    Ok(())
}

/// Entry `(y, x)` is the coefficient of `H_y` in `ᵖb_x`.
#[derive(Clone, Debug, Serialize)]
pub struct DecompositionMatrix {
    pub elements: Vec<String>,
    pub entries: Vec<Vec<LaurentPoly>>,
    /// Whether the category O precondition held.
    pub valid: bool,
}

/// Build the decomposition matrix; refuses unless the category O
/// precondition holds or `force` is set.
pub fn decomposition_matrix(catalog: &mut SoergelCatalog, force: bool) -> Result<DecompositionMatrix> {
    let valid = category_o_precondition(catalog.algebra()).map_or_else(|e| if force { Ok(false) } else { Err(e) }, |_| Ok(true))?;
    let n = catalog.group().order();
    let mut entries = vec![vec![LaurentPoly::zero(); n]; n];
    for x in 0..n {
        let b = catalog.p_canonical(x)?;
        for (y, c) in b.terms() {
            entries[y][x] = c.clone();
        }
    }
    let elements = catalog.group().elements().iter().map(|w| w.to_string()).collect();
    Ok(DecompositionMatrix { elements, entries, valid })
}

/// `[M_y : L_x] = (P_x : M_y)`, graded and at `v = 1`, with inverses.
#[derive(Clone, Debug, Serialize)]
pub struct SimpleMultiplicities {
    pub elements: Vec<String>,
    pub graded: Vec<Vec<LaurentPoly>>,
    pub ungraded: Vec<Vec<i64>>,
    /// Column `x` expresses the simple `L_x` in standard characters.
    pub graded_inverse: Vec<Vec<LaurentPoly>>,
    pub inverse: Vec<Vec<i64>>,
    pub valid: bool,
}

/// Inverse of an upper unitriangular matrix over a ring, by back
/// substitution.
fn unitriangular_inverse<T: Clone>(
    a: &[Vec<T>],
    zero: T,
    one: T,
    is_zero: impl Fn(&T) -> bool,
    mul_sub: impl Fn(&T, &T, &T) -> T,
) -> Result<Vec<Vec<T>>> {
    let n = a.len();
    for (i, row) in a.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            if j < i && !is_zero(x) {
                return Err(MotkitError::SelfCheck("matrix is not upper triangular".into()));
            }
        }
    }
    let mut inv = vec![vec![zero; n]; n];
    for col in 0..n {
        for i in (0..=col).rev() {
            // inv[i][col] = δ - Σ_{k>i} a[i][k] inv[k][col]
            let mut acc = if i == col { one.clone() } else { inv[i][col].clone() };
            for k in i + 1..=col {
                acc = mul_sub(&acc, &a[i][k], &inv[k][col]);
            }
            inv[i][col] = acc;
        }
    }
    Ok(inv)
}

pub fn simple_multiplicities(catalog: &mut SoergelCatalog, force: bool) -> Result<SimpleMultiplicities> {
    let d = decomposition_matrix(catalog, force)?;
    let n = d.entries.len();
    for i in 0..n {
        if d.entries[i][i] != LaurentPoly::one() {
            return Err(MotkitError::SelfCheck(format!("diagonal entry {} is {}", d.elements[i], d.entries[i][i])));
        }
    }
    let ungraded: Vec<Vec<i64>> = d.entries.iter().map(|r| r.iter().map(LaurentPoly::eval_one).collect()).collect();
    let graded_inverse = unitriangular_inverse(
        &d.entries,
        LaurentPoly::zero(),
        LaurentPoly::one(),
        LaurentPoly::is_zero,
        |acc, a, b| acc - &(a * b),
    )?;
    let inverse = unitriangular_inverse(&ungraded, 0i64, 1i64, |x| *x == 0, |acc, a, b| acc - a * b)?;
    for i in 0..n {
        for j in 0..n {
            let s: i64 = (0..n).map(|k| ungraded[i][k] * inverse[k][j]).sum();
            if s != i64::from(i == j) {
                return Err(MotkitError::SelfCheck("integral inverse check failed".into()));
            }
        }
    }
    Ok(SimpleMultiplicities { elements: d.elements, graded: d.entries, ungraded, graded_inverse, inverse, valid: d.valid })
}

/// Exhaustive count of idempotents in `End_0(M)`, `None` if too large.
pub fn idempotent_count(m: &GradedModule, limit: u64) -> Result<Option<u64>> {
    Ok(EndAlgebra::new(m)?.count_idempotents(limit))
}
