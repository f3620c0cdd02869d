//! Motivic cohomology of cellular varieties from their stratification poset.
//!
//! Every stratum is an affine space, so a stratum of dimension `i`
//! contributes one copy of the coefficients in bidegree `(2i, i)`.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize, Serializer};

use crate::coxeter::{RootDatum, WeylGroup};
use crate::error::{MotkitError, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stratum {
    pub label: String,
    pub dim: usize,
}

/// The on-disk form: `closure` lists pairs `[a, b]` with `a` in the
/// closure of `b`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PosetSpec {
    pub strata: Vec<Stratum>,
    #[serde(default)]
    pub closure: Vec<(String, String)>,
}

/// Strata with their closure order (reflexive-transitive, stored as a
/// reachability table).
#[derive(Clone, Debug)]
pub struct StrataPoset {
    strata: Vec<Stratum>,
    index: BTreeMap<String, usize>,
    /// `below[b]` = all `a` with `a <= b`.
    below: Vec<BTreeSet<usize>>,
}

impl StrataPoset {
    /// `closure` holds pairs `(a, b)` meaning `a <= b`; the transitive
    /// closure is taken.
    pub fn new(strata: Vec<Stratum>, closure: &[(String, String)]) -> Result<Self> {
        let mut index = BTreeMap::new();
        for (i, s) in strata.iter().enumerate() {
            if index.insert(s.label.clone(), i).is_some() {
                return Err(MotkitError::Rejected(format!("duplicate stratum label {:?}", s.label)));
            }
        }
        let n = strata.len();
        let mut up: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (a, b) in closure {
            let ia = *index.get(a).ok_or_else(|| MotkitError::Rejected(format!("unknown stratum {a:?}")))?;
            let ib = *index.get(b).ok_or_else(|| MotkitError::Rejected(format!("unknown stratum {b:?}")))?;
            if ia == ib {
                continue;
            }
            if strata[ia].dim >= strata[ib].dim {
                return Err(MotkitError::Rejected(format!(
                    "{a:?} (dim {}) cannot lie in the closure of {b:?} (dim {})",
                    strata[ia].dim, strata[ib].dim
                )));
            }
            up[ib].push(ia);
        }
        // dims strictly increase along relations, so processing by dimension
        // gives the transitive closure in one pass
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| strata[i].dim);
        let mut below: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
        for &b in &order {
            let mut set = BTreeSet::from([b]);
            for &a in &up[b] {
                set.extend(below[a].iter().copied());
            }
            below[b] = set;
        }
        Ok(StrataPoset { strata, index, below })
    }

    pub fn from_spec(spec: &PosetSpec) -> Result<Self> {
        Self::new(spec.strata.clone(), &spec.closure)
    }

    /// The n-cell poset `A^0 < A^1 < ... < A^{n-1}` of projective space.
    pub fn projective_space(n: usize) -> Self {
        let strata = (0..n).map(|i| Stratum { label: format!("A{i}"), dim: i }).collect();
        let closure: Vec<(String, String)> = (1..n).map(|i| (format!("A{}", i - 1), format!("A{i}"))).collect();
        Self::new(strata, &closure).expect("chain is a valid poset")
    }

    pub fn strata(&self) -> &[Stratum] {
        &self.strata
    }

    pub fn len(&self) -> usize {
        self.strata.len()
    }

    pub fn is_empty(&self) -> bool {
        self.strata.is_empty()
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.below[b].contains(&a)
    }

    /// Maximal strata.
    pub fn maximal(&self) -> Vec<usize> {
        (0..self.len()).filter(|&b| !(0..self.len()).any(|c| c != b && self.leq(b, c))).collect()
    }

    /// A unique open stratum, i.e. the variety is irreducible.
    pub fn is_irreducible(&self) -> bool {
        self.maximal().len() == 1
    }

    /// Connected components of the comparability graph.
    pub fn components(&self) -> usize {
        let n = self.len();
        let mut comp: Vec<usize> = (0..n).collect();
        fn find(c: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while c[r] != r {
                r = c[r];
            }
            c[x] = r;
            r
        }
        for b in 0..n {
            for &a in &self.below[b] {
                let (ra, rb) = (find(&mut comp, a), find(&mut comp, b));
                comp[ra] = rb;
            }
        }
        (0..n).filter(|&x| find(&mut comp, x) == x).count()
    }

    /// Indices of the given labels; rejects unknown labels.
    pub fn indices(&self, labels: &[String]) -> Result<BTreeSet<usize>> {
        labels
            .iter()
            .map(|l| self.index.get(l).copied().ok_or_else(|| MotkitError::Rejected(format!("unknown stratum {l:?}"))))
            .collect()
    }

    pub fn is_down_set(&self, set: &BTreeSet<usize>) -> bool {
        set.iter().all(|&b| self.below[b].is_subset(set))
    }

    /// All closed unions of strata.
    pub fn down_sets(&self) -> Vec<BTreeSet<usize>> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&i| (self.strata[i].dim, i));
        let mut out = vec![BTreeSet::new()];
        // add strata in dimension order; a stratum may join a down-set once
        // everything strictly below it is present
        for &b in &order {
            let extra: Vec<BTreeSet<usize>> = out
                .iter()
                .filter(|s| self.below[b].iter().all(|a| *a == b || s.contains(a)))
                .map(|s| {
                    let mut t = s.clone();
                    t.insert(b);
                    t
                })
                .collect();
            out.extend(extra);
        }
        out
    }

    fn restrict(&self, keep: &BTreeSet<usize>) -> StrataPoset {
        let strata: Vec<Stratum> = keep.iter().map(|&i| self.strata[i].clone()).collect();
        let closure: Vec<(String, String)> = keep
            .iter()
            .flat_map(|&b| {
                self.below[b]
                    .iter()
                    .filter(move |a| keep.contains(a) && **a != b)
                    .map(move |&a| (self.strata[a].label.clone(), self.strata[b].label.clone()))
            })
            .collect();
        StrataPoset::new(strata, &closure).expect("sub-poset of a valid poset")
    }
}

/// Finitely supported table `(j, i) -> dim`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BigradedDims(pub BTreeMap<(i64, i64), u64>);

impl BigradedDims {
    pub fn get(&self, j: i64, i: i64) -> u64 {
        self.0.get(&(j, i)).copied().unwrap_or(0)
    }

    pub fn add(&mut self, j: i64, i: i64, n: u64) {
        if n > 0 {
            *self.0.entry((j, i)).or_insert(0) += n;
        }
    }

    pub fn plus(&self, other: &BigradedDims) -> BigradedDims {
        let mut out = self.clone();
        for (&(j, i), &n) in &other.0 {
            out.add(j, i, n);
        }
        out
    }

    /// `[[j, i, dim], ...]` in increasing `(j, i)`.
    pub fn triples(&self) -> Vec<[i64; 3]> {
        self.0.iter().map(|(&(j, i), &n)| [j, i, n as i64]).collect()
    }

    /// Sum of `dim · t^i` over the diagonal `j = 2i`, as coefficients.
    pub fn diagonal_poincare(&self) -> Vec<u64> {
        let top = self.0.keys().map(|&(_, i)| i).max().unwrap_or(-1);
        (0..=top).map(|i| self.get(2 * i, i)).collect()
    }
}

impl Serialize for BigradedDims {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.triples().serialize(s)
    }
}

/// `H^{2i}(X, Z(i))` is free on the strata of dimension `i`; all other
/// bidegrees vanish.
pub fn motivic_cohomology(x: &StrataPoset) -> BigradedDims {
    let mut out = BigradedDims::default();
    for s in x.strata() {
        out.add(2 * s.dim as i64, s.dim as i64, 1);
    }
    out
}

/// Bruhat stratification of `G/B`: one cell of dimension `ℓ(w)` per `w`.
pub fn flag_strata(datum: &RootDatum) -> Result<StrataPoset> {
    let group = WeylGroup::new(datum.clone())?;
    flag_strata_of(&group)
}

pub fn flag_strata_of(group: &WeylGroup) -> Result<StrataPoset> {
    let n = group.order();
    let strata: Vec<Stratum> = group.elements().iter().map(|w| Stratum { label: w.to_string(), dim: w.length() }).collect();
    // Bruhat order is graded by length: covering relations suffice
    let mut closure = Vec::new();
    for y in 0..n {
        for x in 0..n {
            if group.length(x) + 1 == group.length(y) && group.bruhat_leq(x, y) {
                closure.push((strata[x].label.clone(), strata[y].label.clone()));
            }
        }
    }
    StrataPoset::new(strata, &closure)
}

/// Cohomology of the projectivization of a rank-`n` bundle over `X`:
/// `dims(j, i) = Σ_{t<n} dims_X(j - 2t, i - t)`.
pub fn projective_bundle(x: &StrataPoset, n: usize) -> Result<BigradedDims> {
    if n == 0 {
        return Err(MotkitError::Rejected("projective bundle of rank 0".into()));
    }
    let base = motivic_cohomology(x);
    let mut out = BigradedDims::default();
    for (&(j, i), &d) in &base.0 {
        for t in 0..n as i64 {
            out.add(j + 2 * t, i + t, d);
        }
    }
    Ok(out)
}

/// The three tables of the localization sequence for `Z ⊂ X` closed with
/// open complement `U`, and whether they add up.
#[derive(Clone, Debug, Serialize)]
pub struct LocalizationReport {
    pub total: BigradedDims,
    pub open: BigradedDims,
    pub closed: BigradedDims,
    pub additive: bool,
}

/// Checks `dims(X) = dims(U) + dims(Z)` entrywise. Cells keep their own
/// dimension in `Z` and `U`, so in this dimension-indexed grading the
/// closed part enters without a twist and the sequence splits by parity.
pub fn localization_check(x: &StrataPoset, closed: &[String]) -> Result<LocalizationReport> {
    let z = x.indices(closed)?;
    if !x.is_down_set(&z) {
        return Err(MotkitError::Rejected("closed part must be a union of strata closed under specialization".into()));
    }
    let u: BTreeSet<usize> = (0..x.len()).filter(|i| !z.contains(i)).collect();
    let total = motivic_cohomology(x);
    let open = motivic_cohomology(&x.restrict(&u));
    let closed = motivic_cohomology(&x.restrict(&z));
    let additive = open.plus(&closed) == total;
    Ok(LocalizationReport { total, open, closed, additive })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::build_root_datum;

    fn table(entries: &[(i64, i64, u64)]) -> BigradedDims {
        let mut t = BigradedDims::default();
        for &(j, i, n) in entries {
            t.add(j, i, n);
        }
        t
    }

    #[test]
    fn points_and_lines() {
        let pt = StrataPoset::projective_space(1);
        assert_eq!(motivic_cohomology(&pt), table(&[(0, 0, 1)]));
        let p1 = StrataPoset::projective_space(2);
        assert_eq!(motivic_cohomology(&p1), table(&[(0, 0, 1), (2, 1, 1)]));
        assert_eq!(projective_bundle(&pt, 1).unwrap(), motivic_cohomology(&pt));
        assert_eq!(projective_bundle(&pt, 2).unwrap(), motivic_cohomology(&p1));
        assert_eq!(projective_bundle(&p1, 2).unwrap(), table(&[(0, 0, 1), (2, 1, 2), (4, 2, 1)]));
    }

    #[test]
    fn flag_varieties() {
        let a2 = flag_strata(&build_root_datum("A", 2).unwrap()).unwrap();
        assert_eq!(motivic_cohomology(&a2), table(&[(0, 0, 1), (2, 1, 2), (4, 2, 2), (6, 3, 1)]));
        assert!(a2.is_irreducible());
        let mut dims: Vec<usize> = a2.strata().iter().map(|s| s.dim).collect();
        dims.sort_unstable();
        assert_eq!(dims, vec![0, 1, 1, 2, 2, 3]);
        let b2 = flag_strata(&build_root_datum("B", 2).unwrap()).unwrap();
        assert_eq!(b2.len(), 8);
        assert_eq!(b2.strata().iter().map(|s| s.dim).max(), Some(4));
        // the A1 flag has down-sets {}, {e}, {e, s}
        let a1 = flag_strata(&build_root_datum("A", 1).unwrap()).unwrap();
        assert_eq!(a1.down_sets().len(), 3);
        let brute = (0u32..1 << a2.len())
            .filter(|mask| a2.is_down_set(&(0..a2.len()).filter(|i| mask >> i & 1 == 1).collect()))
            .count();
        assert_eq!(a2.down_sets().len(), brute);
    }

    #[test]
    fn localization() {
        let p1 = StrataPoset::projective_space(2);
        let r = localization_check(&p1, &["A0".to_string()]).unwrap();
        assert!(r.additive);
        assert_eq!(r.closed, table(&[(0, 0, 1)]));
        assert_eq!(r.open, table(&[(2, 1, 1)]));
        assert!(localization_check(&p1, &[]).unwrap().open == motivic_cohomology(&p1));
        assert!(localization_check(&p1, &["A1".to_string()]).is_err());
    }

    #[test]
    fn rejects_bad_posets() {
        let s = |l: &str, d| Stratum { label: l.into(), dim: d };
        assert!(StrataPoset::new(vec![s("a", 1), s("b", 1)], &[("a".into(), "b".into())]).is_err());
        assert!(StrataPoset::new(vec![s("a", 0), s("a", 1)], &[]).is_err());
        let two_points = StrataPoset::new(vec![s("a", 0), s("b", 0)], &[]).unwrap();
        assert_eq!(two_points.components(), 2);
        assert!(!two_points.is_irreducible());
    }
}
