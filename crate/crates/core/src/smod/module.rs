use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::coinv::{CElt, CoinvariantAlgebra, Monomial};
use crate::error::{MotkitError, Result};
use crate::fp::{Fp, FpMat};
use crate::laurent::LaurentPoly;

/// A finite-dimensional graded module over the coinvariant algebra `C`,
/// concentrated in even degrees.
///
/// Slot `k` holds the degree `bottom + 2k` piece. `action[j][k]` is the
/// action of the generator `x_j` (degree 2) from slot `k` to slot `k + 1`;
/// the last slot maps to the zero space.
#[derive(Clone)]
pub struct GradedModule {
    alg: Arc<CoinvariantAlgebra>,
    bottom: i32,
    dims: Vec<usize>,
    action: Vec<Vec<FpMat>>,
}

impl fmt::Debug for GradedModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GradedModule").field("bottom", &self.bottom).field("dims", &self.dims).finish()
    }
}

fn check_even(d: i32) -> Result<()> {
    if d % 2 == 0 {
        Ok(())
    } else {
        Err(MotkitError::OddShift(d))
    }
}

impl GradedModule {
    /// Build and validate: shapes, commuting generators, and vanishing of
    /// the ideal generators of `C`.
    pub fn new(alg: Arc<CoinvariantAlgebra>, bottom: i32, dims: Vec<usize>, action: Vec<Vec<FpMat>>) -> Result<Self> {
        check_even(bottom)?;
        let m = GradedModule { alg, bottom, dims, action };
        m.check_shapes()?;
        m.check_commuting()?;
        m.check_relations(false)?;
        Ok(m)
    }

    pub(crate) fn new_unchecked(alg: Arc<CoinvariantAlgebra>, bottom: i32, dims: Vec<usize>, action: Vec<Vec<FpMat>>) -> Self {
        GradedModule { alg, bottom, dims, action }
    }

    pub fn zero(alg: Arc<CoinvariantAlgebra>) -> Self {
        let r = alg.rank();
        GradedModule { alg, bottom: 0, dims: Vec::new(), action: vec![Vec::new(); r] }
    }

    pub fn algebra(&self) -> &Arc<CoinvariantAlgebra> {
        &self.alg
    }

    pub fn field(&self) -> Fp {
        self.alg.field
    }

    pub fn rank(&self) -> usize {
        self.alg.rank()
    }

    /// Graded degree of slot 0.
    pub fn bottom(&self) -> i32 {
        self.bottom
    }

    /// Graded degree of the last slot.
    pub fn top(&self) -> i32 {
        self.bottom + 2 * (self.dims.len() as i32 - 1)
    }

    pub fn slot_dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn num_slots(&self) -> usize {
        self.dims.len()
    }

    /// Dimension of the slot with signed index `k`; zero outside the range.
    pub fn dim_at(&self, k: isize) -> usize {
        if k < 0 {
            0
        } else {
            self.dims.get(k as usize).copied().unwrap_or(0)
        }
    }

    pub fn dim_in_degree(&self, d: i32) -> usize {
        if (d - self.bottom) % 2 != 0 {
            return 0;
        }
        self.dim_at(((d - self.bottom) / 2) as isize)
    }

    /// Nonzero dimensions keyed by graded degree.
    pub fn dims_by_degree(&self) -> BTreeMap<i32, usize> {
        self.dims.iter().enumerate().filter(|(_, &d)| d > 0).map(|(k, &d)| (self.bottom + 2 * k as i32, d)).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    /// `Σ dim M_{2i} v^i`: graded dimension in degree-2 units.
    pub fn gdim(&self) -> LaurentPoly {
        LaurentPoly::from_terms(self.dims.iter().enumerate().map(|(k, &d)| (self.bottom / 2 + k as i32, d as i64)))
    }

    /// Action of `x_j` from slot `k` to slot `k + 1`.
    pub fn action_matrix(&self, j: usize, k: usize) -> &FpMat {
        &self.action[j][k]
    }

    pub fn action(&self) -> &[Vec<FpMat>] {
        &self.action
    }

    /// `x_j` on a slot with signed index; zero matrices of the right shape
    /// outside the range.
    pub fn gen_at(&self, j: usize, k: isize) -> FpMat {
        if k >= 0 && (k as usize) < self.dims.len() {
            self.action[j][k as usize].clone()
        } else {
            FpMat::zeros(self.dim_at(k + 1), self.dim_at(k))
        }
    }

    /// The operator of a monomial in the generators from slot `k`.
    pub fn monomial_op(&self, m: &Monomial, k: isize) -> FpMat {
        let f = self.field();
        let mut op = FpMat::identity(self.dim_at(k));
        let mut cur = k;
        for (j, &e) in m.iter().enumerate() {
            for _ in 0..e {
                op = self.gen_at(j, cur).mul(&op, f);
                cur += 1;
            }
        }
        op
    }

    /// The operator of a homogeneous element of `C` from slot `k` to slot
    /// `k + c.deg`.
    pub fn element_op(&self, c: &CElt, k: isize) -> FpMat {
        let f = self.field();
        let mut out = FpMat::zeros(self.dim_at(k + c.deg as isize), self.dim_at(k));
        if c.coords.is_empty() || out.rows() == 0 || out.cols() == 0 {
            return out;
        }
        for (m, &x) in self.alg.basis_monomials(c.deg).iter().zip(&c.coords) {
            if x != 0 {
                out.add_scaled(&self.monomial_op(m, k), x, f);
            }
        }
        out
    }

    fn check_shapes(&self) -> Result<()> {
        if self.action.len() != self.rank() {
            return Err(MotkitError::InvalidModule(format!(
                "{} action families for {} generators",
                self.action.len(),
                self.rank()
            )));
        }
        for (j, fam) in self.action.iter().enumerate() {
            if fam.len() != self.dims.len() {
                return Err(MotkitError::InvalidModule(format!("generator {j}: {} matrices for {} slots", fam.len(), self.dims.len())));
            }
            for (k, a) in fam.iter().enumerate() {
                let want = (self.dim_at(k as isize + 1), self.dims[k]);
                if (a.rows(), a.cols()) != want {
                    return Err(MotkitError::InvalidModule(format!(
                        "generator {j} slot {k}: shape {}x{}, expected {}x{}",
                        a.rows(),
                        a.cols(),
                        want.0,
                        want.1
                    )));
                }
            }
        }
        Ok(())
    }

    fn check_commuting(&self) -> Result<()> {
        let f = self.field();
        for k in 0..self.dims.len() as isize {
            for i in 0..self.rank() {
                for j in i + 1..self.rank() {
                    let ij = self.gen_at(i, k + 1).mul(&self.gen_at(j, k), f);
                    let ji = self.gen_at(j, k + 1).mul(&self.gen_at(i, k), f);
                    if ij != ji {
                        return Err(MotkitError::InvalidModule(format!("x{} and x{} do not commute on slot {k}", i + 1, j + 1)));
                    }
                }
            }
        }
        Ok(())
    }

    /// Check that the defining ideal of `C` acts by zero. With commuting
    /// generators it suffices to check the ideal generators; `full` checks a
    /// basis of the ideal in every degree instead.
    pub fn check_relations(&self, full: bool) -> Result<()> {
        let f = self.field();
        let span = self.dims.len();
        for n in 1..self.alg.stored_degrees().min(span) {
            let rels = if full { self.alg.ideal_basis(n) } else { self.alg.ideal_generators(n) };
            for rel in rels {
                for k in 0..(span - n) as isize {
                    let mut op = FpMat::zeros(self.dim_at(k + n as isize), self.dim_at(k));
                    for (m, c) in &rel {
                        op.add_scaled(&self.monomial_op(m, k), *c, f);
                    }
                    if !op.is_zero() {
                        return Err(MotkitError::InvalidModule(format!("a relation of degree {} acts nontrivially", 2 * n)));
                    }
                }
            }
        }
        Ok(())
    }

    /// Full relation check over a basis of the ideal.
    pub fn validate_full(&self) -> Result<()> {
        self.check_shapes()?;
        self.check_commuting()?;
        self.check_relations(true)
    }

    /// `M⟨d⟩`: the same module moved up by `d` degrees.
    pub fn shift(&self, d: i32) -> Result<Self> {
        check_even(d)?;
        let mut m = self.clone();
        m.bottom += d;
        Ok(m)
    }

    /// Drop zero slots at both ends; the zero module gets bottom 0.
    pub fn trimmed(&self) -> Self {
        let Some(first) = self.dims.iter().position(|&d| d > 0) else {
            return GradedModule::zero(self.alg.clone());
        };
        let last = self.dims.iter().rposition(|&d| d > 0).expect("nonzero");
        let mut action: Vec<Vec<FpMat>> = self.action.iter().map(|fam| fam[first..=last].to_vec()).collect();
        for fam in &mut action {
            let k = last - first;
            fam[k] = FpMat::zeros(0, self.dims[last]);
        }
        GradedModule {
            alg: self.alg.clone(),
            bottom: self.bottom + 2 * first as i32,
            dims: self.dims[first..=last].to_vec(),
            action,
        }
    }

    /// Trimmed and moved so that the bottom degree is 0.
    pub fn normalized(&self) -> Self {
        let mut m = self.trimmed();
        m.bottom = 0;
        m
    }

    fn same_algebra(&self, other: &GradedModule) -> Result<()> {
        if Arc::ptr_eq(&self.alg, &other.alg) {
            Ok(())
        } else {
            Err(MotkitError::AlgebraMismatch(format!(
                "{} p={} vs {} p={}",
                self.alg.datum.cartan_type,
                self.alg.prime(),
                other.alg.datum.cartan_type,
                other.alg.prime()
            )))
        }
    }

    pub(crate) fn ensure_same_algebra(&self, other: &GradedModule) -> Result<()> {
        self.same_algebra(other)
    }

    pub fn direct_sum(&self, other: &GradedModule) -> Result<Self> {
        self.same_algebra(other)?;
        if self.is_zero() {
            return Ok(other.trimmed());
        }
        if other.is_zero() {
            return Ok(self.trimmed());
        }
        let bottom = self.bottom.min(other.bottom);
        let top = self.top().max(other.top());
        let len = ((top - bottom) / 2 + 1) as usize;
        let off_a = ((self.bottom - bottom) / 2) as isize;
        let off_b = ((other.bottom - bottom) / 2) as isize;
        let dims: Vec<usize> =
            (0..len as isize).map(|k| self.dim_at(k - off_a) + other.dim_at(k - off_b)).collect();
        let action = (0..self.rank())
            .map(|j| {
                (0..len as isize)
                    .map(|k| {
                        let a = self.gen_at(j, k - off_a);
                        let b = other.gen_at(j, k - off_b);
                        let mut m = FpMat::zeros(a.rows() + b.rows(), a.cols() + b.cols());
                        m.put_block(0, 0, &a);
                        m.put_block(a.rows(), a.cols(), &b);
                        m
                    })
                    .collect()
            })
            .collect();
        Ok(GradedModule { alg: self.alg.clone(), bottom, dims, action })
    }

    /// The submodule spanned slotwise by the columns of `basis[k]` (full
    /// column rank). Fails if the span is not stable under the action.
    pub fn submodule(&self, basis: &[FpMat]) -> Result<Self> {
        let f = self.field();
        let dims: Vec<usize> = basis.iter().map(|b| b.cols()).collect();
        let mut action = vec![Vec::with_capacity(dims.len()); self.rank()];
        for (j, fam) in action.iter_mut().enumerate() {
            for k in 0..dims.len() {
                let img = self.action[j][k].mul(&basis[k], f);
                let restricted = if k + 1 < dims.len() {
                    basis[k + 1].solve(&img, f).ok_or_else(|| {
                        MotkitError::InvalidModule(format!("span is not stable under x{} at slot {k}", j + 1))
                    })?
                } else {
                    FpMat::zeros(0, dims[k])
                };
                fam.push(restricted);
            }
        }
        Ok(GradedModule { alg: self.alg.clone(), bottom: self.bottom, dims, action })
    }
}

/// The one-dimensional module `k` placed in degree `shift`.
pub fn trivial_module(alg: &Arc<CoinvariantAlgebra>, shift: i32) -> Result<GradedModule> {
    check_even(shift)?;
    let r = alg.rank();
    Ok(GradedModule::new_unchecked(alg.clone(), shift, vec![1], vec![vec![FpMat::zeros(0, 1)]; r]))
}

/// `C ⊗_{C^s} M`, with basis `1 ⊗ m` followed by `x ⊗ m` in each degree, where
/// `x` is the splitting element of `s`.
pub fn translate(s: usize, m: &GradedModule) -> Result<GradedModule> {
    let alg = m.algebra();
    if s >= alg.rank() {
        return Err(MotkitError::InvalidWord(format!("generator s{} out of range", s + 1)));
    }
    let x = alg.splitting_element(s);
    let len = m.num_slots() + 1;
    let dims: Vec<usize> = (0..len as isize).map(|k| m.dim_at(k) + m.dim_at(k - 1)).collect();
    let mut action = Vec::with_capacity(alg.rank());
    for j in 0..alg.rank() {
        let y = alg.generator_image(j);
        // y = a + x b and y x = a2 + x b2 with a, b, a2, b2 in C^s
        let (a, b) = alg.cs_split(s, &y)?;
        let (a2, b2) = alg.cs_split(s, &alg.mul(&y, &x))?;
        let b = b.coords.first().copied().unwrap_or(0);
        let fam: Vec<FpMat> = (0..len as isize)
            .map(|k| {
                let (top_in, bot_in) = (m.dim_at(k), m.dim_at(k - 1));
                let (top_out, bot_out) = (m.dim_at(k + 1), m.dim_at(k));
                let mut mat = FpMat::zeros(top_out + bot_out, top_in + bot_in);
                mat.put_block(0, 0, &m.element_op(&a, k));
                mat.put_block(0, top_in, &m.element_op(&a2, k - 1));
                mat.put_block(top_out, 0, &FpMat::scalar(top_in, b));
                mat.put_block(top_out, top_in, &m.element_op(&b2, k - 1));
                mat
            })
            .collect();
        action.push(fam);
    }
    let out = GradedModule::new_unchecked(alg.clone(), m.bottom(), dims, action);
    out.check_shapes()?;
    out.check_commuting()?;
    out.check_relations(false)?;
    Ok(out)
}

/// `C ⊗_{C^{s_1}} ... C ⊗_{C^{s_l}} k` for the word `s_1 ... s_l`: the
/// rightmost generator is applied first.
pub fn bott_samelson(alg: &Arc<CoinvariantAlgebra>, word: &[usize]) -> Result<GradedModule> {
    let mut m = trivial_module(alg, 0)?;
    for &s in word.iter().rev() {
        m = translate(s, &m)?;
    }
    Ok(m)
}
