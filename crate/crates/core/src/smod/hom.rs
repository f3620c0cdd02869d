use std::collections::BTreeMap;

use crate::error::{MotkitError, Result};
use crate::fp::{Fp, FpMat, RowSpace};
use crate::fpoly::eigenvalues;

use super::module::GradedModule;

/// Slot layout of a module, enough to line up blocks of maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Shape {
    pub bottom: i32,
    pub dims: Vec<usize>,
}

impl Shape {
    pub fn of(m: &GradedModule) -> Self {
        Shape { bottom: m.bottom(), dims: m.slot_dims().to_vec() }
    }

    fn dim_at(&self, k: isize) -> usize {
        if k < 0 {
            0
        } else {
            self.dims.get(k as usize).copied().unwrap_or(0)
        }
    }

    /// Signed slot index of graded degree `d` (which must have the parity of
    /// the bottom).
    fn slot(&self, d: i32) -> isize {
        ((d - self.bottom) / 2) as isize
    }
}

/// A homogeneous `C`-linear map of degree `shift`, stored as one block per
/// source slot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMap {
    pub shift: i32,
    pub src: Shape,
    pub dst: Shape,
    pub blocks: Vec<FpMat>,
}

impl GradedMap {
    pub fn zero(src: &GradedModule, dst: &GradedModule, shift: i32) -> Self {
        let (s, d) = (Shape::of(src), Shape::of(dst));
        let blocks = (0..s.dims.len())
            .map(|a| FpMat::zeros(d.dim_at(d.slot(s.bottom + 2 * a as i32 + shift)), s.dims[a]))
            .collect();
        GradedMap { shift, src: s, dst: d, blocks }
    }

    pub fn identity(m: &GradedModule) -> Self {
        let s = Shape::of(m);
        let blocks = s.dims.iter().map(|&d| FpMat::identity(d)).collect();
        GradedMap { shift: 0, src: s.clone(), dst: s, blocks }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &GradedMap, f: Fp) -> GradedMap {
        assert_eq!(self.src, other.dst, "composing maps with mismatched modules");
        let shift = self.shift + other.shift;
        let blocks = other
            .blocks
            .iter()
            .enumerate()
            .map(|(a, fa)| {
                let mid = other.src.bottom + 2 * a as i32 + other.shift;
                let b = self.src.slot(mid);
                let tgt = self.dst.dim_at(self.dst.slot(mid + self.shift));
                if b >= 0 && (b as usize) < self.blocks.len() {
                    self.blocks[b as usize].mul(fa, f)
                } else {
                    FpMat::zeros(tgt, fa.cols())
                }
            })
            .collect();
        GradedMap { shift, src: other.src.clone(), dst: self.dst.clone(), blocks }
    }

    pub fn add_scaled(&mut self, other: &GradedMap, c: u32, f: Fp) {
        for (a, b) in self.blocks.iter_mut().zip(&other.blocks) {
            a.add_scaled(b, c, f);
        }
    }

    pub fn scale(&self, c: u32, f: Fp) -> GradedMap {
        let mut out = self.clone();
        for b in &mut out.blocks {
            *b = b.scale(c, f);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(FpMat::is_zero)
    }

    /// Entries of all blocks, concatenated.
    pub fn to_vec(&self) -> Vec<u32> {
        self.blocks.iter().flat_map(|b| b.data().iter().copied()).collect()
    }

    fn is_endo(&self) -> bool {
        self.shift == 0 && self.src == self.dst
    }

    /// Degree-0 endomorphism with every block invertible.
    pub fn is_invertible(&self, f: Fp) -> bool {
        self.is_endo() && self.blocks.iter().all(|b| b.is_invertible(f))
    }

    pub fn is_nilpotent(&self, f: Fp) -> bool {
        !self.is_endo() || self.blocks.iter().all(|b| b.is_nilpotent(f))
    }

    /// Distinct `F_p`-rational eigenvalues of a degree-0 endomorphism.
    pub fn eigenvalues(&self, f: Fp) -> Vec<u32> {
        let mut out: Vec<u32> = self.blocks.iter().flat_map(|b| eigenvalues(f, b)).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// `self - λ·id` for a degree-0 endomorphism.
    pub fn minus_scalar(&self, lambda: u32, f: Fp) -> GradedMap {
        let mut out = self.clone();
        for b in &mut out.blocks {
            *b = b.sub(&FpMat::scalar(b.rows(), lambda), f);
        }
        out
    }
}

/// Basis of the degree-`shift` `C`-linear maps `M -> N`.
///
/// Solved slot by slot: after slot `a` we hold a basis of the maps
/// `(f_0, ..., f_a)` satisfying `x_j f_b = f_{b+1} x_j` for `b < a`, and
/// the next equation introduces the unknown block `f_{a+1}`.
pub fn hom_shift(m: &GradedModule, n: &GradedModule, shift: i32) -> Result<Vec<GradedMap>> {
    m.ensure_same_algebra(n)?;
    let f = m.field();
    let zero = GradedMap::zero(m, n, shift);
    if shift % 2 != 0 || m.is_zero() || n.is_zero() {
        return Ok(Vec::new());
    }
    let len = m.num_slots();
    let target = |a: usize| -> isize { ((m.bottom() + 2 * a as i32 + shift - n.bottom()) / 2) as isize };
    let block_shape = |a: usize| (n.dim_at(target(a)), m.slot_dims()[a]);
    let offsets: Vec<usize> = (0..=len)
        .scan(0usize, |acc, a| {
            let o = *acc;
            if a < len {
                let (r, c) = block_shape(a);
                *acc += r * c;
            }
            Some(o)
        })
        .collect();
    let total = offsets[len];

    let (r0, c0) = block_shape(0);
    let mut basis: Vec<Vec<u32>> = (0..r0 * c0)
        .map(|i| {
            let mut v = vec![0u32; r0 * c0];
            v[i] = 1;
            v
        })
        .collect();
    for a in 0..len {
        let b = target(a);
        let (ra, ca) = block_shape(a);
        let (rn, cn) = if a + 1 < len { block_shape(a + 1) } else { (n.dim_at(b + 1), 0) };
        let eq_rows = n.dim_at(b + 1) * ca;
        let gens: Vec<(FpMat, FpMat)> = (0..m.rank()).map(|j| (n.gen_at(j, b), m.gen_at(j, a as isize))).collect();
        let mut columns: Vec<Vec<u32>> = Vec::with_capacity(basis.len() + rn * cn);
        for v in &basis {
            let fa = FpMat::from_rows(ra, ca, v[offsets[a]..offsets[a] + ra * ca].to_vec());
            let mut col = Vec::with_capacity(eq_rows * gens.len());
            for (xn, _) in &gens {
                col.extend_from_slice(xn.mul(&fa, f).data());
            }
            columns.push(col);
        }
        for r in 0..rn {
            for c in 0..cn {
                // -E_{rc} x_j^M: row r holds -(row c of x_j^M)
                let mut col = Vec::with_capacity(eq_rows * gens.len());
                for (_, xm) in &gens {
                    let mut blk = FpMat::zeros(rn, ca);
                    for k in 0..ca {
                        blk.set(r, k, f.neg(xm.get(c, k)));
                    }
                    col.extend_from_slice(blk.data());
                }
                columns.push(col);
            }
        }
        let rows = eq_rows * gens.len();
        let kernel = if rows == 0 {
            (0..columns.len())
                .map(|i| {
                    let mut v = vec![0u32; columns.len()];
                    v[i] = 1;
                    v
                })
                .collect()
        } else {
            FpMat::from_columns(rows, &columns).kernel(f)
        };
        let prefix = offsets[a + 1];
        basis = kernel
            .iter()
            .map(|kv| {
                let mut v = vec![0u32; prefix + rn * cn];
                for (i, &c) in kv[..basis.len()].iter().enumerate() {
                    if c == 0 {
                        continue;
                    }
                    for (o, &x) in v.iter_mut().zip(&basis[i]) {
                        *o = f.add(*o, f.mul(c, x));
                    }
                }
                v[prefix..].copy_from_slice(&kv[basis.len()..]);
                v
            })
            .collect();
    }
    Ok(basis
        .into_iter()
        .map(|v| {
            debug_assert_eq!(v.len(), total);
            let mut map = zero.clone();
            for (a, blk) in map.blocks.iter_mut().enumerate() {
                let (r, c) = (blk.rows(), blk.cols());
                *blk = FpMat::from_rows(r, c, v[offsets[a]..offsets[a] + r * c].to_vec());
            }
            map
        })
        .filter(|map| !map.is_zero())
        .collect())
}

/// The range of shifts in which nonzero maps `M -> N` can exist.
pub fn shift_range(m: &GradedModule, n: &GradedModule) -> Vec<i32> {
    if m.is_zero() || n.is_zero() {
        return Vec::new();
    }
    (n.bottom() - m.top()..=n.top() - m.bottom()).step_by(2).collect()
}

/// Bases of `Hom_k(M, N)` for every shift `k` in [`shift_range`].
pub fn hom_graded(m: &GradedModule, n: &GradedModule) -> Result<BTreeMap<i32, Vec<GradedMap>>> {
    shift_range(m, n).into_iter().map(|k| Ok((k, hom_shift(m, n, k)?))).collect()
}

/// The degree-0 endomorphism algebra of a module, with a fixed basis.
#[derive(Clone, Debug)]
pub struct EndAlgebra {
    pub basis: Vec<GradedMap>,
    field: Fp,
    coords: FpMat,
}

impl EndAlgebra {
    pub fn new(m: &GradedModule) -> Result<Self> {
        let basis = hom_shift(m, m, 0)?;
        let f = m.field();
        let cols: Vec<Vec<u32>> = basis.iter().map(GradedMap::to_vec).collect();
        let len = cols.first().map_or(0, Vec::len);
        Ok(EndAlgebra { coords: FpMat::from_columns(len, &cols), basis, field: f })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn field(&self) -> Fp {
        self.field
    }

    pub fn combination(&self, c: &[u32]) -> GradedMap {
        let f = self.field;
        let mut out = self.basis[0].scale(0, f);
        for (b, &x) in self.basis.iter().zip(c) {
            out.add_scaled(b, x, f);
        }
        out
    }

    /// Coordinates of an endomorphism in the basis.
    pub fn coordinates(&self, e: &GradedMap) -> Result<Vec<u32>> {
        let rhs = FpMat::from_columns(self.coords.rows(), &[e.to_vec()]);
        self.coords
            .solve(&rhs, self.field)
            .map(|y| y.column(0))
            .ok_or_else(|| MotkitError::SelfCheck("map is not in the endomorphism algebra".into()))
    }

    /// Locality certificate: every basis element has a single eigenvalue
    /// `λ_i` in `F_p` with `b_i - λ_i` nilpotent, the span `J` of the
    /// `b_i - λ_i` is a two-sided ideal of codimension one, and `J` is
    /// nilpotent. Then `End/J = F_p`, so 0 and 1 are the only idempotents.
    pub fn certify_local(&self) -> bool {
        let f = self.field;
        let d = self.dim();
        if d == 0 {
            return false;
        }
        let mut radical = Vec::with_capacity(d);
        for b in &self.basis {
            let ev = b.eigenvalues(f);
            if ev.len() != 1 {
                return false;
            }
            let n = b.minus_scalar(ev[0], f);
            if !n.is_nilpotent(f) {
                return false;
            }
            radical.push(n);
        }
        let len = self.coords.rows();
        let mut j_space = RowSpace::new(len);
        let mut j_basis = Vec::new();
        for n in radical {
            if j_space.insert(n.to_vec(), f) {
                j_basis.push(n);
            }
        }
        if j_basis.len() + 1 != d {
            return false;
        }
        for b in &self.basis {
            for n in &j_basis {
                if !j_space.contains(&b.compose(n, f).to_vec(), f) || !j_space.contains(&n.compose(b, f).to_vec(), f) {
                    return false;
                }
            }
        }
        // J^t -> 0
        let mut power = j_basis.clone();
        for _ in 0..=len {
            if power.is_empty() {
                return true;
            }
            let mut next_space = RowSpace::new(len);
            let mut next = Vec::new();
            for a in &power {
                for n in &j_basis {
                    let prod = a.compose(n, f);
                    if next_space.insert(prod.to_vec(), f) {
                        next.push(prod);
                    }
                }
            }
            power = next;
        }
        false
    }

    /// Number of idempotents, by enumerating all `p^dim` elements; `None`
    /// when that exceeds `limit`.
    pub fn count_idempotents(&self, limit: u64) -> Option<u64> {
        let f = self.field;
        let p = f.p() as u64;
        let d = self.dim() as u32;
        if d == 0 {
            return Some(1);
        }
        let total = p.checked_pow(d).filter(|&t| t <= limit)?;
        let mut count = 0;
        let mut c = vec![0u32; d as usize];
        for _ in 0..total {
            let e = self.combination(&c);
            if e.compose(&e, f) == e {
                count += 1;
            }
            for x in c.iter_mut() {
                *x += 1;
                if (*x as u64) < p {
                    break;
                }
                *x = 0;
            }
        }
        Some(count)
    }
}
