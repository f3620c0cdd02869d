//! Brute-force oracles for the Weyl group, Hecke algebra and coinvariant
//! algebra, kept independent of the code paths they check.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::sync::Arc;

use motkit_core::coinv::CElt;
use motkit_core::{
    build_coinvariant, build_root_datum, CoinvariantAlgebra, HeckeAlgebra, HeckeElt, LaurentPoly, RootDatum, WeylGroup,
};
use proptest::prelude::*;

type Mat = Vec<Vec<i64>>;

const TYPES: [(&str, usize); 6] = [("A", 1), ("A", 2), ("A", 3), ("B", 2), ("G", 2), ("B", 3)];

fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
}

/// `λ ↦ λ - λ_i α_i` on weight coordinates.
fn reflection(datum: &RootDatum, i: usize) -> Mat {
    let n = datum.rank;
    (0..n)
        .map(|r| (0..n).map(|c| i64::from(r == c) - if c == i { datum.simple_roots[i][r] } else { 0 }).collect())
        .collect()
}

/// Breadth-first search from the identity: element count per distance.
fn bfs_length_counts(datum: &RootDatum) -> Vec<usize> {
    let n = datum.rank;
    let gens: Vec<Mat> = (0..n).map(|i| reflection(datum, i)).collect();
    let id: Mat = (0..n).map(|r| (0..n).map(|c| i64::from(r == c)).collect()).collect();
    let mut seen = HashSet::from([id.clone()]);
    let mut layer = vec![id];
    let mut counts = vec![];
    while !layer.is_empty() {
        counts.push(layer.len());
        let mut next = vec![];
        for m in &layer {
            for g in &gens {
                let x = mat_mul(m, g);
                if seen.insert(x.clone()) {
                    next.push(x);
                }
            }
        }
        layer = next;
    }
    counts
}

/// `Π_i (1 + t + ... + t^{d_i - 1})` as a coefficient list.
fn poincare_from_degrees(degrees: &[u32]) -> Vec<usize> {
    degrees.iter().fold(vec![1usize], |acc, &d| {
        let mut out = vec![0; acc.len() + d as usize - 1];
        for (i, a) in acc.iter().enumerate() {
            for j in 0..d as usize {
                out[i + j] += a;
            }
        }
        out
    })
}

#[test]
fn group_enumeration_matches_bfs_and_degrees() {
    for (letter, rank) in TYPES {
        let datum = build_root_datum(letter, rank).unwrap();
        let group = WeylGroup::new(datum.clone()).unwrap();
        let bfs = bfs_length_counts(&datum);
        assert_eq!(group.length_counts(), bfs, "{letter}{rank}");
        assert_eq!(bfs, poincare_from_degrees(&datum.cartan_type.degrees()), "{letter}{rank}");
        assert_eq!(group.order() as u128, datum.weyl_order());
    }
}

/// Orbit of the simple roots in simple-root coordinates under
/// `s_i(β) = β - <β, α_i^∨> α_i`.
fn root_orbit(datum: &RootDatum) -> BTreeSet<Vec<i64>> {
    let n = datum.rank;
    let a = &datum.cartan_matrix;
    let mut roots: BTreeSet<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    loop {
        let mut grew = false;
        for beta in roots.clone() {
            for i in 0..n {
                let pairing: i64 = (0..n).map(|j| beta[j] * a[i][j]).sum();
                let mut image = beta.clone();
                image[i] -= pairing;
                grew |= roots.insert(image);
            }
        }
        if !grew {
            return roots;
        }
    }
}

#[test]
fn positive_roots_and_coxeter_numbers() {
    for (letter, rank) in TYPES {
        let datum = build_root_datum(letter, rank).unwrap();
        let orbit = root_orbit(&datum);
        let positive: BTreeSet<Vec<i64>> = orbit.iter().filter(|b| b.iter().all(|&c| c >= 0)).cloned().collect();
        assert_eq!(orbit.len(), 2 * positive.len(), "{letter}{rank}: roots are positive or negative");
        let mine: BTreeSet<Vec<i64>> = datum.positive_roots_simple.iter().cloned().collect();
        assert_eq!(mine, positive, "{letter}{rank}");
        assert_eq!(datum.coxeter_number as usize, 2 * positive.len() / rank);
    }
    let g2 = build_root_datum("G", 2).unwrap();
    assert_eq!((g2.positive_roots.len(), g2.coxeter_number), (6, 6));
}

fn index_of(group: &WeylGroup, datum: &RootDatum, word: &[usize]) -> usize {
    group.index_of(&datum.element_from_word(word).unwrap()).unwrap()
}

#[test]
fn bruhat_order_is_the_subword_order() {
    for (letter, rank) in [("A", 2), ("A", 3), ("B", 2), ("G", 2)] {
        let datum = build_root_datum(letter, rank).unwrap();
        let group = WeylGroup::new(datum.clone()).unwrap();
        for w in 0..group.order() {
            let word = group.element(w).canonical_word().to_vec();
            let below: HashSet<usize> = (0..1u32 << word.len())
                .map(|mask| {
                    let sub: Vec<usize> = word.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &s)| s).collect();
                    index_of(&group, &datum, &sub)
                })
                .collect();
            for x in 0..group.order() {
                assert_eq!(group.bruhat_leq(x, w), below.contains(&x), "{letter}{rank}: {x} <= {w}");
            }
        }
    }
}

#[test]
fn reduced_words_match_exhaustive_search() {
    for (letter, rank) in [("A", 2), ("A", 3), ("B", 2), ("G", 2)] {
        let datum = build_root_datum(letter, rank).unwrap();
        let group = WeylGroup::new(datum.clone()).unwrap();
        let mut by_element: HashMap<usize, BTreeSet<Vec<usize>>> = HashMap::new();
        let mut layer: Vec<Vec<usize>> = vec![vec![]];
        for len in 0..=group.max_length() {
            for word in &layer {
                let w = index_of(&group, &datum, word);
                if group.length(w) == len {
                    by_element.entry(w).or_default().insert(word.clone());
                }
            }
            layer = layer.iter().flat_map(|w| (0..rank).map(move |s| [w.clone(), vec![s]].concat())).collect();
        }
        for (w, words) in by_element {
            let mine: BTreeSet<Vec<usize>> =
                datum.reduced_words(group.element(w), group.max_length()).unwrap().into_iter().collect();
            assert_eq!(mine, words, "{letter}{rank}");
        }
    }
    let b2 = build_root_datum("B", 2).unwrap();
    assert_eq!(b2.reduced_words(&b2.longest_element(), 4).unwrap().len(), 2);
}

fn hecke(letter: &str, rank: usize) -> HeckeAlgebra {
    HeckeAlgebra::new(Arc::new(WeylGroup::new(build_root_datum(letter, rank).unwrap()).unwrap()))
}

#[test]
fn kl_basis_is_characterized_by_bar_invariance_and_degree_bounds() {
    for (letter, rank) in [("A", 2), ("A", 3), ("B", 2), ("G", 2)] {
        let h = hecke(letter, rank);
        let group = h.group().clone();
        for w in 0..group.order() {
            let b = h.kl_basis(w);
            assert!(h.is_bar_invariant(&b).unwrap());
            assert_eq!(b.coeff(w), LaurentPoly::one());
            for (y, c) in b.terms() {
                assert!(group.bruhat_leq(y, w));
                assert!(y == w || c.in_v_z_v(), "{letter}{rank}: coefficient {c} of H_{y} in b_{w}");
            }
        }
    }
    let h = hecke("A", 2);
    let w0 = h.group().longest();
    for y in 0..6 {
        assert_eq!(h.kl_basis(w0).coeff(y), LaurentPoly::monomial(3 - h.group().length(y) as i32, 1));
    }
}

#[test]
fn standard_basis_multiplies_along_reduced_words() {
    let h = hecke("A", 2);
    let g = h.group().clone();
    let s1s2 = g.index_of_word(&[0, 1]).unwrap();
    assert_eq!(h.mul(&h.standard(1), &h.standard(2)).unwrap(), h.standard(s1s2));
    let ss = h.mul(&h.standard(1), &h.standard(1)).unwrap();
    let expected = h.one().add(&h.standard(1).scale(&LaurentPoly::from_terms([(-1, 1), (1, -1)])));
    assert_eq!(ss, expected);
}

fn hecke_elt(h: &HeckeAlgebra, coeffs: &[(usize, i32, i64)]) -> HeckeElt {
    let mut x = HeckeElt::zero(h.group().cartan_type());
    for &(w, d, c) in coeffs {
        x.add_term(w % h.group().order(), &LaurentPoly::monomial(d, c));
    }
    x
}

fn coeff_list() -> impl Strategy<Value = Vec<(usize, i32, i64)>> {
    prop::collection::vec((0usize..8, -2i32..3, -3i64..4), 0..5)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn hecke_multiplication_is_associative(a in coeff_list(), b in coeff_list(), c in coeff_list()) {
        let h = hecke("B", 2);
        let (a, b, c) = (hecke_elt(&h, &a), hecke_elt(&h, &b), hecke_elt(&h, &c));
        let left = h.mul(&h.mul(&a, &b).unwrap(), &c).unwrap();
        let right = h.mul(&a, &h.mul(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn bar_is_a_ring_involution(a in coeff_list(), b in coeff_list()) {
        let h = hecke("B", 2);
        let (a, b) = (hecke_elt(&h, &a), hecke_elt(&h, &b));
        prop_assert_eq!(h.bar(&h.bar(&a).unwrap()).unwrap(), a.clone());
        let ab = h.mul(&a, &b).unwrap();
        prop_assert_eq!(h.bar(&ab).unwrap(), h.mul(&h.bar(&a).unwrap(), &h.bar(&b).unwrap()).unwrap());
    }
}

fn coinvariants(letter: &str, rank: usize, p: u32) -> CoinvariantAlgebra {
    build_coinvariant(&build_root_datum(letter, rank).unwrap(), p).unwrap()
}

fn basis(c: &CoinvariantAlgebra, n: usize) -> Vec<CElt> {
    let d = c.dim(n);
    (0..d).map(|i| CElt { deg: n, coords: (0..d).map(|j| u32::from(i == j)).collect() }).collect()
}

#[test]
fn coinvariant_poincare_polynomials() {
    for (letter, rank) in [("A", 1), ("A", 2), ("A", 3), ("B", 2), ("G", 2)] {
        let datum = build_root_datum(letter, rank).unwrap();
        let c = build_coinvariant(&datum, 7).unwrap();
        let expected = poincare_from_degrees(&datum.cartan_type.degrees());
        let got: Vec<usize> = (0..=c.top).map(|n| c.dim(n)).collect();
        assert_eq!(got, expected, "{letter}{rank}");
        let poly = LaurentPoly::from_terms(expected.iter().enumerate().map(|(i, &d)| (2 * i as i32, d as i64)));
        assert_eq!(c.poincare_poly(), poly);
    }
}

#[test]
fn demazure_operators_square_to_zero_and_satisfy_braid_relations() {
    for (letter, rank, m) in [("A", 2, 3), ("B", 2, 4), ("G", 2, 6)] {
        let c = coinvariants(letter, rank, 7);
        for n in 0..=c.top {
            for f in basis(&c, n) {
                for s in 0..2 {
                    assert!(c.demazure(s, &c.demazure(s, &f)).is_zero(), "{letter}{rank}");
                }
                let alternate = |first: usize| (0..m).fold(f.clone(), |g, k| c.demazure((first + k) % 2, &g));
                assert_eq!(alternate(0), alternate(1), "{letter}{rank}: braid relation of length {m}");
            }
        }
    }
}

fn celt(c: &CoinvariantAlgebra, deg: usize, raw: &[u32]) -> CElt {
    let deg = deg % (c.top + 1);
    let p = c.prime();
    CElt { deg, coords: (0..c.dim(deg)).map(|i| raw.get(i).copied().unwrap_or(0) % p).collect() }
}

fn raw_coords() -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0u32..1000, 6)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn twisted_leibniz_rule(df in 1usize..4, dg in 1usize..4, f in raw_coords(), g in raw_coords(), s in 0usize..2) {
        let c = coinvariants("B", 2, 5);
        let group = WeylGroup::new(build_root_datum("B", 2).unwrap()).unwrap();
        let refl = group.element(group.index_of_word(&[s]).unwrap()).clone();
        let (f, g) = (celt(&c, df, &f), celt(&c, dg, &g));
        let lhs = c.demazure(s, &c.mul(&f, &g));
        let rhs = c.add(&c.mul(&c.demazure(s, &f), &g), &c.mul(&c.weyl_act(&refl, &f), &c.demazure(s, &g)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn multiplication_is_commutative_and_associative(
        d in (0usize..4, 0usize..4, 0usize..4), a in raw_coords(), b in raw_coords(), e in raw_coords()
    ) {
        let c = coinvariants("A", 3, 5);
        let (a, b, e) = (celt(&c, d.0, &a), celt(&c, d.1, &b), celt(&c, d.2, &e));
        prop_assert_eq!(c.mul(&a, &b), c.mul(&b, &a));
        prop_assert_eq!(c.mul(&c.mul(&a, &b), &e), c.mul(&a, &c.mul(&b, &e)));
    }

    #[test]
    fn splitting_over_invariants_recomposes(d in 1usize..7, raw in raw_coords(), s in 0usize..2) {
        let c = coinvariants("G", 2, 7);
        let x = celt(&c, d, &raw);
        let (a, b) = c.cs_split(s, &x).unwrap();
        prop_assert!(c.demazure(s, &a).is_zero());
        prop_assert!(c.demazure(s, &b).is_zero());
        prop_assert_eq!(c.add(&a, &c.mul(&c.splitting_element(s), &b)), x);
    }
}
