use crate::error::{MotkitError, Result};
use crate::fp::{FpMat, RowSpace};

use super::hom::{hom_shift, GradedMap};
use super::module::GradedModule;

/// A bounded complex `X^start -> X^{start+1} -> ...` of graded modules with
/// degree-0 differentials.
#[derive(Clone, Debug)]
pub struct ModuleComplex {
    start: i32,
    objects: Vec<GradedModule>,
    diffs: Vec<GradedMap>,
}

/// `x_j f_a = f_{a+1} x_j` for all generators and slots.
fn is_module_map(m: &GradedModule, n: &GradedModule, g: &GradedMap) -> bool {
    let f = m.field();
    if g.shift != 0 || g.blocks.len() != m.num_slots() {
        return false;
    }
    let zero = GradedMap::zero(m, n, 0);
    if zero.blocks.iter().zip(&g.blocks).any(|(z, b)| (z.rows(), z.cols()) != (b.rows(), b.cols())) {
        return false;
    }
    let offset = ((m.bottom() - n.bottom()) / 2) as isize;
    for j in 0..m.rank() {
        for a in 0..m.num_slots() {
            let b = a as isize + offset;
            let lhs = n.gen_at(j, b).mul(&g.blocks[a], f);
            let next = g.blocks.get(a + 1).cloned().unwrap_or_else(|| FpMat::zeros(n.dim_at(b + 1), 0));
            let rhs = next.mul(&m.gen_at(j, a as isize), f);
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

impl ModuleComplex {
    /// `diffs[i]` maps `objects[i]` to `objects[i + 1]`.
    pub fn new(start: i32, objects: Vec<GradedModule>, diffs: Vec<GradedMap>) -> Result<Self> {
        if objects.is_empty() {
            return Err(MotkitError::InvalidModule("complex without terms".into()));
        }
        if diffs.len() + 1 != objects.len() {
            return Err(MotkitError::InvalidModule(format!("{} terms need {} differentials", objects.len(), objects.len() - 1)));
        }
        for w in objects.windows(2) {
            w[0].ensure_same_algebra(&w[1])?;
        }
        let f = objects[0].field();
        for (i, d) in diffs.iter().enumerate() {
            if !is_module_map(&objects[i], &objects[i + 1], d) {
                return Err(MotkitError::InvalidModule(format!("differential in position {} is not a degree-0 module map", start + i as i32)));
            }
        }
        for (i, w) in diffs.windows(2).enumerate() {
            if !w[1].compose(&w[0], f).is_zero() {
                return Err(MotkitError::InvalidModule(format!("d² ≠ 0 at position {}", start + i as i32)));
            }
        }
        Ok(ModuleComplex { start, objects, diffs })
    }

    /// `M` placed in position 0.
    pub fn single(m: GradedModule) -> Self {
        ModuleComplex { start: 0, objects: vec![m], diffs: Vec::new() }
    }

    pub fn start(&self) -> i32 {
        self.start
    }

    pub fn end(&self) -> i32 {
        self.start + self.objects.len() as i32 - 1
    }

    pub fn term(&self, i: i32) -> Option<&GradedModule> {
        usize::try_from(i - self.start).ok().and_then(|k| self.objects.get(k))
    }

    /// `d^i : X^i -> X^{i+1}`.
    pub fn differential(&self, i: i32) -> Option<&GradedMap> {
        usize::try_from(i - self.start).ok().and_then(|k| self.diffs.get(k))
    }
}

/// Basis of `C^a = ⊕_i Hom_0(X^i, Y^{i+a})`, each element listed with its
/// component index.
fn cochains(x: &ModuleComplex, y: &ModuleComplex, a: i32) -> Result<Vec<(i32, GradedMap)>> {
    let mut out = Vec::new();
    for i in x.start()..=x.end() {
        if let (Some(xi), Some(yi)) = (x.term(i), y.term(i + a)) {
            for g in hom_shift(xi, yi, 0)? {
                out.push((i, g));
            }
        }
    }
    Ok(out)
}

/// Rank of `D f = d_Y f - (-1)^a f d_X` on `C^a`, computed on raw block
/// entries of the image components.
fn differential_rank(x: &ModuleComplex, y: &ModuleComplex, a: i32) -> Result<usize> {
    let basis = cochains(x, y, a)?;
    let Some(first) = x.term(x.start()) else { return Ok(0) };
    let f = first.field();
    let targets: Vec<i32> = (x.start()..=x.end()).filter(|&i| y.term(i + a + 1).is_some()).collect();
    let zero_images: Vec<GradedMap> = targets
        .iter()
        .map(|&i| GradedMap::zero(x.term(i).expect("in range"), y.term(i + a + 1).expect("checked"), 0))
        .collect();
    let len: usize = zero_images.iter().map(|z| z.to_vec().len()).sum();
    let sign = if a % 2 == 0 { f.neg(1) } else { 1 };
    let mut space = RowSpace::new(len);
    let mut rank = 0;
    for (i, g) in &basis {
        let mut image = zero_images.clone();
        for (slot, &t) in targets.iter().enumerate() {
            if t == *i {
                if let Some(dy) = y.differential(i + a) {
                    image[slot].add_scaled(&dy.compose(g, f), 1, f);
                }
            }
            if t + 1 == *i {
                if let Some(dx) = x.differential(t) {
                    image[slot].add_scaled(&g.compose(dx, f), sign, f);
                }
            }
        }
        let v: Vec<u32> = image.iter().flat_map(GradedMap::to_vec).collect();
        if len > 0 && space.insert(v, f) {
            rank += 1;
        }
    }
    Ok(rank)
}

/// `dim H^a` of the total Hom complex, i.e. degree-`a` maps `X -> Y[a]`
/// up to homotopy.
pub fn hom_homotopy(x: &ModuleComplex, y: &ModuleComplex, a: i32) -> Result<usize> {
    if let (Some(m), Some(n)) = (x.term(x.start()), y.term(y.start())) {
        m.ensure_same_algebra(n)?;
    }
    let dim = cochains(x, y, a)?.len();
    let out = differential_rank(x, y, a)?;
    let inc = differential_rank(x, y, a - 1)?;
    dim.checked_sub(out + inc)
        .ok_or_else(|| MotkitError::SelfCheck(format!("cohomology of the Hom complex in degree {a} has negative dimension")))
}
