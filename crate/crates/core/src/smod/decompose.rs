use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{MotkitError, Result};
use crate::fp::{Fp, FpMat};

use super::hom::{hom_shift, EndAlgebra, GradedMap};
use super::module::GradedModule;

/// Random endomorphisms tried before a module is declared indecomposable.
pub const SPLIT_ATTEMPTS: usize = 200;

/// Exhaustive searches enumerate at most this many elements.
pub const EXHAUSTIVE_LIMIT: u64 = 1 << 20;

/// One indecomposable summand: `module` is normalized to bottom degree 0 and
/// sits in the original module shifted up by `shift`.
#[derive(Clone, Debug)]
pub struct Summand {
    pub module: GradedModule,
    pub shift: i32,
    /// Indecomposability proven by the locality certificate; otherwise it
    /// is only heuristic (no split found after [`SPLIT_ATTEMPTS`] tries).
    pub certified: bool,
}

/// A degree-0 endomorphism that is neither nilpotent nor invertible.
fn splitting_endomorphism(end: &EndAlgebra, rng: &mut ChaCha8Rng) -> Option<GradedMap> {
    let f = end.field();
    let try_one = |phi: &GradedMap| -> Option<GradedMap> {
        let ev = phi.eigenvalues(f);
        let lambda = *ev.first()?;
        let psi = phi.minus_scalar(lambda, f);
        (!psi.is_nilpotent(f)).then_some(psi)
    };
    for b in &end.basis {
        if let Some(psi) = try_one(b) {
            return Some(psi);
        }
    }
    for _ in 0..SPLIT_ATTEMPTS {
        let c: Vec<u32> = (0..end.dim()).map(|_| rng.gen_range(0..f.p())).collect();
        if let Some(psi) = try_one(&end.combination(&c)) {
            return Some(psi);
        }
    }
    None
}

/// `M = ker φ^n ⊕ im φ^n` with `n` the total dimension.
fn fitting_split(m: &GradedModule, phi: &GradedMap) -> Result<(GradedModule, GradedModule)> {
    let f = m.field();
    let n = m.total_dim() as u64;
    let mut kernels = Vec::new();
    let mut images = Vec::new();
    for (a, blk) in phi.blocks.iter().enumerate() {
        let d = m.slot_dims()[a];
        let pw = blk.pow(n, f);
        kernels.push(FpMat::from_columns(d, &pw.kernel(f)));
        images.push(pw.column_space(f));
    }
    Ok((m.submodule(&kernels)?, m.submodule(&images)?))
}

fn split_recursive(m: &GradedModule, rng: &mut ChaCha8Rng, out: &mut Vec<Summand>) -> Result<()> {
    let m = m.trimmed();
    if m.is_zero() {
        return Ok(());
    }
    let end = EndAlgebra::new(&m)?;
    if end.dim() > 1 {
        if let Some(phi) = splitting_endomorphism(&end, rng) {
            let (k, i) = fitting_split(&m, &phi)?;
            if k.is_zero() || i.is_zero() {
                return Err(MotkitError::SelfCheck("Fitting decomposition produced a trivial piece".into()));
            }
            split_recursive(&k, rng, out)?;
            return split_recursive(&i, rng, out);
        }
    }
    let certified = end.dim() == 1 || end.certify_local();
    out.push(Summand { shift: m.bottom(), module: m.normalized(), certified });
    Ok(())
}

/// Decompose into indecomposable summands (Fitting lemma on seeded random
/// degree-0 endomorphisms). Summands are sorted by shift, then graded
/// dimension.
pub fn decompose(m: &GradedModule, seed: u64) -> Result<Vec<Summand>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    split_recursive(m, &mut rng, &mut out)?;
    let total: usize = out.iter().map(|s| s.module.total_dim()).sum();
    if total != m.total_dim() {
        return Err(MotkitError::SelfCheck(format!("summands have total dimension {total}, module has {}", m.total_dim())));
    }
    out.sort_by(|a, b| {
        (a.shift, a.module.slot_dims()).cmp(&(b.shift, b.module.slot_dims()))
    });
    Ok(out)
}

/// Exact isomorphism test for two modules with local degree-0 endomorphism
/// rings: `M ≅ N` iff some composite `g ∘ f` of basis maps `M -> N -> M` is
/// not nilpotent.
pub fn indecomposables_isomorphic(m: &GradedModule, n: &GradedModule) -> Result<bool> {
    if m.bottom() != n.bottom() || m.slot_dims() != n.slot_dims() {
        return Ok(false);
    }
    let f = m.field();
    let there = hom_shift(m, n, 0)?;
    if there.is_empty() {
        return Ok(false);
    }
    let back = hom_shift(n, m, 0)?;
    for a in &there {
        for b in &back {
            if !b.compose(a, f).is_nilpotent(f) {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IsoVerdict {
    pub isomorphic: bool,
    /// False when the answer rests on heuristically indecomposable summands.
    pub certified: bool,
}

fn any_invertible(maps: &[GradedMap], f: Fp, limit: u64) -> Option<bool> {
    let p = f.p() as u64;
    let total = p.checked_pow(maps.len() as u32).filter(|&t| t <= limit)?;
    let mut c = vec![0u32; maps.len()];
    for _ in 0..total {
        let mut g = maps[0].scale(0, f);
        for (m, &x) in maps.iter().zip(&c) {
            g.add_scaled(m, x, f);
        }
        if g.is_invertible(f) {
            return Some(true);
        }
        for x in c.iter_mut() {
            *x += 1;
            if (*x as u64) < p {
                break;
            }
            *x = 0;
        }
    }
    Some(false)
}

/// Whether `M ≅ N` as graded modules (degree-0 isomorphism).
///
/// Graded dimensions filter first; then random elements of `Hom_0(M, N)` are
/// tested for invertibility; then all of `Hom_0` is enumerated when it has
/// dimension at most 6 and `p^dim` is small; otherwise both modules are
/// decomposed and their summands matched.
pub fn is_isomorphic(m: &GradedModule, n: &GradedModule, seed: u64) -> Result<IsoVerdict> {
    m.ensure_same_algebra(n)?;
    let (m, n) = (m.trimmed(), n.trimmed());
    if m.bottom() != n.bottom() || m.slot_dims() != n.slot_dims() {
        return Ok(IsoVerdict { isomorphic: false, certified: true });
    }
    if m.is_zero() {
        return Ok(IsoVerdict { isomorphic: true, certified: true });
    }
    let f = m.field();
    let homs = hom_shift(&m, &n, 0)?;
    if homs.is_empty() {
        return Ok(IsoVerdict { isomorphic: false, certified: true });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..SPLIT_ATTEMPTS {
        let mut g = homs[0].scale(0, f);
        for h in &homs {
            g.add_scaled(h, rng.gen_range(0..f.p()), f);
        }
        if g.is_invertible(f) {
            return Ok(IsoVerdict { isomorphic: true, certified: true });
        }
    }
    if homs.len() <= 6 {
        if let Some(found) = any_invertible(&homs, f, EXHAUSTIVE_LIMIT) {
            return Ok(IsoVerdict { isomorphic: found, certified: true });
        }
    }
    let a = decompose(&m, seed)?;
    let b = decompose(&n, seed)?;
    let certified = a.iter().chain(&b).all(|s| s.certified);
    if a.len() != b.len() {
        return Ok(IsoVerdict { isomorphic: false, certified });
    }
    let mut used = vec![false; b.len()];
    for s in &a {
        let mut matched = false;
        for (i, t) in b.iter().enumerate() {
            if !used[i] && s.shift == t.shift && indecomposables_isomorphic(&s.module, &t.module)? {
                used[i] = true;
                matched = true;
                break;
            }
        }
        if !matched {
            return Ok(IsoVerdict { isomorphic: false, certified });
        }
    }
    Ok(IsoVerdict { isomorphic: true, certified })
}
