//! Root data, Weyl groups, reduced words and Bruhat order for the finite
//! crystallographic types A–G.
//!
//! Weights are written in the basis of fundamental weights and the lattice
//! is the simply connected one, so the simple root `α_i` is the `i`-th column
//! of the Cartan matrix `a_ij = <α_i^∨, α_j>`. Generators are 0-based
//! internally and printed 1-based (`s1`, `s2`, ...).

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{MotkitError, Result};

/// Default cap on the number of Weyl group elements we enumerate.
pub const DEFAULT_ENUMERATION_BOUND: u128 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CartanLetter {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl CartanLetter {
    pub fn parse(s: &str) -> Option<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Some(Self::A),
            "B" => Some(Self::B),
            "C" => Some(Self::C),
            "D" => Some(Self::D),
            "E" => Some(Self::E),
            "F" => Some(Self::F),
            "G" => Some(Self::G),
            _ => None,
        }
    }
}

impl fmt::Display for CartanLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CartanType {
    pub letter: CartanLetter,
    pub rank: usize,
}

impl CartanType {
    pub fn new(letter: CartanLetter, rank: usize) -> Result<Self> {
        use CartanLetter::*;
        let ok = match letter {
            A => rank >= 1,
            B => rank >= 2,
            C => rank >= 3,
            D => rank >= 4,
            E => (6..=8).contains(&rank),
            F => rank == 4,
            G => rank == 2,
        };
        if ok {
            Ok(CartanType { letter, rank })
        } else {
            let reason = match letter {
                A => "rank must be at least 1",
                B => "rank must be at least 2",
                C => "rank must be at least 3 (C2 is B2)",
                D => "rank must be at least 4",
                E => "rank must be 6, 7 or 8",
                F => "rank must be 4",
                G => "rank must be 2",
            };
            Err(MotkitError::InvalidCartanType { letter: letter.to_string(), rank, reason: reason.into() })
        }
    }

    /// Parse strings such as `"A2"` or `"g2"`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || MotkitError::InvalidCartanType {
            letter: s.to_string(),
            rank: 0,
            reason: "expected a letter A-G followed by a rank".into(),
        };
        let letter = s.get(..1).and_then(CartanLetter::parse).ok_or_else(bad)?;
        let rank: usize = s[1..].parse().map_err(|_| bad())?;
        Self::new(letter, rank)
    }

    /// Degrees of the basic invariants.
    pub fn degrees(&self) -> Vec<u32> {
        use CartanLetter::*;
        let n = self.rank as u32;
        match self.letter {
            A => (2..=n + 1).collect(),
            B | C => (1..=n).map(|i| 2 * i).collect(),
            D => {
                let mut d: Vec<u32> = (1..n).map(|i| 2 * i).collect();
                d.push(n);
                d.sort_unstable();
                d
            }
            E => match n {
                6 => vec![2, 5, 6, 8, 9, 12],
                7 => vec![2, 6, 8, 10, 12, 14, 18],
                _ => vec![2, 8, 12, 14, 18, 20, 24, 30],
            },
            F => vec![2, 6, 8, 12],
            G => vec![2, 6],
        }
    }

    pub fn weyl_order(&self) -> u128 {
        self.degrees().iter().map(|&d| d as u128).product()
    }

    pub fn coxeter_number(&self) -> u32 {
        *self.degrees().iter().max().expect("rank >= 1")
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.letter, self.rank)
    }
}

/// Integer square matrix, row-major.
pub type IntSquare = Vec<Vec<i64>>;

fn cartan_matrix(t: CartanType) -> IntSquare {
    use CartanLetter::*;
    let n = t.rank;
    let mut a = vec![vec![0i64; n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut link = |i: usize, j: usize, aij: i64, aji: i64| {
        a[i][j] = aij;
        a[j][i] = aji;
    };
    match t.letter {
        A => (0..n - 1).for_each(|i| link(i, i + 1, -1, -1)),
        B => {
            (0..n - 2).for_each(|i| link(i, i + 1, -1, -1));
            // α_n short
            link(n - 2, n - 1, -1, -2);
        }
        C => {
            (0..n - 2).for_each(|i| link(i, i + 1, -1, -1));
            // α_n long
            link(n - 2, n - 1, -2, -1);
        }
        D => {
            (0..n - 2).for_each(|i| link(i, i + 1, -1, -1));
            link(n - 3, n - 1, -1, -1);
        }
        E => {
            // Bourbaki: 1-3-4-5-6-7-8 with 2 attached to 4
            link(0, 2, -1, -1);
            link(1, 3, -1, -1);
            (2..n - 1).for_each(|i| link(i, i + 1, -1, -1));
        }
        F => {
            link(0, 1, -1, -1);
            // α1, α2 long; α3, α4 short
            link(1, 2, -1, -2);
            link(2, 3, -1, -1);
        }
        G => {
            // α1 short, α2 long
            link(0, 1, -3, -1);
        }
    }
    a
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootDatum {
    pub cartan_type: CartanType,
    pub cartan_matrix: IntSquare,
    /// `simple_roots[i]` is `α_i` in fundamental-weight coordinates.
    pub simple_roots: Vec<Vec<i64>>,
    pub rank: usize,
    /// Positive roots in fundamental-weight coordinates.
    pub positive_roots: Vec<Vec<i64>>,
    /// Positive roots in simple-root coordinates, parallel to `positive_roots`.
    pub positive_roots_simple: Vec<Vec<i64>>,
    pub coxeter_number: u32,
}

/// Build the root datum of an irreducible Cartan type such as `("A", 2)`.
pub fn build_root_datum(letter: &str, rank: usize) -> Result<RootDatum> {
    let l = CartanLetter::parse(letter).ok_or_else(|| MotkitError::InvalidCartanType {
        letter: letter.to_string(),
        rank,
        reason: "unknown letter; expected one of A-G".into(),
    })?;
    RootDatum::new(CartanType::new(l, rank)?)
}

impl RootDatum {
    pub fn new(cartan_type: CartanType) -> Result<Self> {
        let a = cartan_matrix(cartan_type);
        let n = cartan_type.rank;
        let simple_roots: Vec<Vec<i64>> = (0..n).map(|j| (0..n).map(|k| a[k][j]).collect()).collect();

        // Close the simple roots under simple reflections in root coordinates:
        // s_i(β) = β - <α_i^∨, β> α_i.
        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        let mut queue = VecDeque::new();
        for i in 0..n {
            let mut e = vec![0i64; n];
            e[i] = 1;
            if seen.insert(e.clone()) {
                queue.push_back(e);
            }
        }
        while let Some(beta) = queue.pop_front() {
            for i in 0..n {
                let pairing: i64 = (0..n).map(|j| a[i][j] * beta[j]).sum();
                let mut img = beta.clone();
                img[i] -= pairing;
                if seen.insert(img.clone()) {
                    queue.push_back(img);
                }
            }
        }
        let mut positive_roots_simple: Vec<Vec<i64>> =
            seen.into_iter().filter(|r| r.iter().all(|&c| c >= 0)).collect();
        positive_roots_simple.sort_by(|x, y| {
            let hx: i64 = x.iter().sum();
            let hy: i64 = y.iter().sum();
            hx.cmp(&hy).then_with(|| y.cmp(x))
        });
        let positive_roots = positive_roots_simple
            .iter()
            .map(|beta| (0..n).map(|k| (0..n).map(|j| a[k][j] * beta[j]).sum()).collect())
            .collect();

        let datum = RootDatum {
            cartan_type,
            cartan_matrix: a,
            simple_roots,
            rank: n,
            positive_roots,
            positive_roots_simple,
            coxeter_number: cartan_type.coxeter_number(),
        };
        let expected: u32 = cartan_type.degrees().iter().map(|d| d - 1).sum();
        if datum.positive_roots.len() != expected as usize {
            return Err(MotkitError::SelfCheck(format!(
                "{cartan_type}: found {} positive roots, expected {expected}",
                datum.positive_roots.len()
            )));
        }
        Ok(datum)
    }

    pub fn weyl_order(&self) -> u128 {
        self.cartan_type.weyl_order()
    }

    /// Matrix of the simple reflection `s_i` on weight coordinates.
    pub fn reflection_matrix(&self, i: usize) -> IntSquare {
        let n = self.rank;
        let mut m = identity(n);
        for k in 0..n {
            m[k][i] -= self.simple_roots[i][k];
        }
        m
    }

    fn check_generator(&self, s: usize) -> Result<()> {
        if s < self.rank {
            Ok(())
        } else {
            Err(MotkitError::InvalidWord(format!("generator s{} out of range for {}", s + 1, self.cartan_type)))
        }
    }

    pub fn identity_element(&self) -> WeylElt {
        WeylElt { cartan_type: self.cartan_type, word: Vec::new(), matrix: identity(self.rank) }
    }

    /// The element `s_{i1} s_{i2} ...` of a (not necessarily reduced) word.
    pub fn element_from_word(&self, word: &[usize]) -> Result<WeylElt> {
        let mut m = identity(self.rank);
        for &s in word {
            self.check_generator(s)?;
            m = mat_mul(&m, &self.reflection_matrix(s));
        }
        Ok(self.element_from_matrix(m))
    }

    pub fn element_from_matrix(&self, matrix: IntSquare) -> WeylElt {
        let word = self.canonical_word_of(&matrix);
        WeylElt { cartan_type: self.cartan_type, word, matrix }
    }

    /// Shortlex-minimal reduced word, obtained by repeatedly stripping the
    /// smallest left descent. `i` is a left descent of `w` iff the `i`-th
    /// coordinate of `w·ρ` is negative.
    fn canonical_word_of(&self, matrix: &IntSquare) -> Vec<usize> {
        let mut v: Vec<i64> = matrix.iter().map(|row| row.iter().sum()).collect();
        let mut word = Vec::new();
        while let Some(i) = v.iter().position(|&c| c < 0) {
            word.push(i);
            let c = v[i];
            for k in 0..self.rank {
                v[k] -= c * self.simple_roots[i][k];
            }
        }
        word
    }

    fn check(&self, w: &WeylElt) -> Result<()> {
        if w.cartan_type == self.cartan_type {
            Ok(())
        } else {
            Err(MotkitError::DatumMismatch(self.cartan_type.to_string(), w.cartan_type.to_string()))
        }
    }

    pub fn mul(&self, x: &WeylElt, y: &WeylElt) -> Result<WeylElt> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.element_from_matrix(mat_mul(&x.matrix, &y.matrix)))
    }

    pub fn inverse(&self, w: &WeylElt) -> WeylElt {
        let rev: Vec<usize> = w.word.iter().rev().copied().collect();
        self.element_from_word(&rev).expect("word of a valid element")
    }

    pub fn is_left_descent(&self, w: &WeylElt, s: usize) -> bool {
        let v: i64 = w.matrix[s].iter().sum();
        v < 0
    }

    pub fn is_right_descent(&self, w: &WeylElt, s: usize) -> bool {
        // w α_s < 0 iff s is a left descent of w^{-1}
        self.is_left_descent(&self.inverse(w), s)
    }

    /// Number of positive roots sent to negative roots; an independent
    /// length count used to cross-check reduced words.
    pub fn inversion_count(&self, w: &WeylElt) -> usize {
        let n = self.rank;
        self.positive_roots
            .iter()
            .filter(|beta| {
                let img: Vec<i64> = (0..n).map(|k| (0..n).map(|j| w.matrix[k][j] * beta[j]).sum()).collect();
                self.root_simple_coords(&img).iter().all(|&c| c <= 0)
            })
            .count()
    }

    /// Simple-root coordinates of a root given in weight coordinates.
    fn root_simple_coords(&self, v: &[i64]) -> Vec<i64> {
        for (wt, sc) in self.positive_roots.iter().zip(&self.positive_roots_simple) {
            if wt.as_slice() == v {
                return sc.clone();
            }
            if wt.iter().zip(v).all(|(a, b)| *a == -*b) {
                return sc.iter().map(|c| -c).collect();
            }
        }
        panic!("{v:?} is not a root");
    }

    /// All elements grouped by length. Refuses when the group order exceeds
    /// `bound`.
    pub fn enumerate_weyl(&self, bound: u128) -> Result<Vec<Vec<WeylElt>>> {
        let order = self.weyl_order();
        if order > bound {
            return Err(MotkitError::WeylTooLarge { order, bound });
        }
        let group = WeylGroup::with_bound(self.clone(), bound)?;
        let mut out: Vec<Vec<WeylElt>> = vec![Vec::new(); group.max_length() + 1];
        for w in &group.elements {
            out[w.length()].push(w.clone());
        }
        Ok(out)
    }

    /// Bruhat order via the lifting property: for a right descent `s` of
    /// `y`, `x <= y` iff `min(x, xs) <= ys`.
    pub fn bruhat_leq(&self, x: &WeylElt, y: &WeylElt) -> Result<bool> {
        self.check(x)?;
        self.check(y)?;
        let mut x = x.clone();
        let mut y = y.clone();
        loop {
            if x.length() > y.length() {
                return Ok(false);
            }
            if y.length() == 0 {
                return Ok(x.length() == 0);
            }
            let s = *y.word.last().expect("nonempty");
            let ys = self.element_from_word(&y.word[..y.word.len() - 1])?;
            let xs = self.mul(&x, &self.element_from_word(&[s])?)?;
            if xs.length() < x.length() {
                x = xs;
            }
            y = ys;
        }
    }

    /// Every reduced word of `w`, in lexicographic order.
    pub fn reduced_words(&self, w: &WeylElt, max_length: usize) -> Result<Vec<Vec<usize>>> {
        self.check(w)?;
        if w.length() > max_length {
            return Err(MotkitError::LengthTooLarge { length: w.length(), bound: max_length });
        }
        let mut out = Vec::new();
        let mut prefix = Vec::new();
        self.reduced_words_rec(w.matrix.clone(), &mut prefix, &mut out);
        Ok(out)
    }

    fn reduced_words_rec(&self, m: IntSquare, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let v: Vec<i64> = m.iter().map(|row| row.iter().sum()).collect();
        let descents: Vec<usize> = (0..self.rank).filter(|&i| v[i] < 0).collect();
        if descents.is_empty() {
            out.push(prefix.clone());
            return;
        }
        for s in descents {
            let next = mat_mul(&self.reflection_matrix(s), &m);
            prefix.push(s);
            self.reduced_words_rec(next, prefix, out);
            prefix.pop();
        }
    }

    pub fn longest_element(&self) -> WeylElt {
        // w0 sends ρ to -ρ
        let mut m = identity(self.rank);
        loop {
            let v: Vec<i64> = (0..self.rank).map(|k| m[k].iter().sum()).collect();
            match v.iter().position(|&c| c > 0) {
                Some(i) => m = mat_mul(&self.reflection_matrix(i), &m),
                None => return self.element_from_matrix(m),
            }
        }
    }
}

/// Primes dividing the torsion index of the root system.
pub fn torsion_primes(datum: &RootDatum) -> Vec<u32> {
    use CartanLetter::*;
    let t = datum.cartan_type;
    match (t.letter, t.rank) {
        (A, _) | (C, _) | (B, 2) => vec![],
        (B, _) | (D, _) | (G, _) => vec![2],
        (E, 6) | (E, 7) | (F, _) => vec![2, 3],
        (E, _) => vec![2, 3, 5],
    }
}

pub(crate) fn identity(n: usize) -> IntSquare {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

pub(crate) fn mat_mul(a: &IntSquare, b: &IntSquare) -> IntSquare {
    let n = a.len();
    let m = b[0].len();
    let k = b.len();
    (0..n).map(|i| (0..m).map(|j| (0..k).map(|t| a[i][t] * b[t][j]).sum()).collect()).collect()
}

/// An element of the Weyl group. Equality is equality of action matrices.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WeylElt {
    pub cartan_type: CartanType,
    word: Vec<usize>,
    matrix: IntSquare,
}

impl PartialEq for WeylElt {
    fn eq(&self, other: &Self) -> bool {
        self.cartan_type == other.cartan_type && self.matrix == other.matrix
    }
}

impl Eq for WeylElt {}

impl std::hash::Hash for WeylElt {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.cartan_type.hash(state);
        self.matrix.hash(state);
    }
}

impl WeylElt {
    pub fn canonical_word(&self) -> &[usize] {
        &self.word
    }

    pub fn action_matrix(&self) -> &IntSquare {
        &self.matrix
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }
}

impl fmt::Display for WeylElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_word(&self.word))
    }
}

/// `[0, 1, 0]` prints as `s1 s2 s1`; the empty word prints as `e`.
pub fn format_word(word: &[usize]) -> String {
    if word.is_empty() {
        return "e".to_string();
    }
    word.iter().map(|s| format!("s{}", s + 1)).collect::<Vec<_>>().join(" ")
}

/// Parse words like `"s1 s2 s1"`, `"1 2 1"`, `"s1s2s1"` or `"e"`.
pub fn parse_word(s: &str) -> Result<Vec<usize>> {
    let t = s.trim();
    if t.is_empty() || t == "e" {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let bad = || MotkitError::InvalidWord(format!("cannot parse word {s:?}"));
    for tok in t.split(|c: char| c.is_whitespace() || c == ',').filter(|x| !x.is_empty()) {
        if let Some(rest) = tok.strip_prefix('s') {
            // allow "s1s2s1"
            for part in rest.split('s') {
                let k: usize = part.parse().map_err(|_| bad())?;
                if k == 0 {
                    return Err(bad());
                }
                out.push(k - 1);
            }
        } else {
            let k: usize = tok.parse().map_err(|_| bad())?;
            if k == 0 {
                return Err(bad());
            }
            out.push(k - 1);
        }
    }
    Ok(out)
}

/// A fully enumerated Weyl group with multiplication tables by generators.
/// Elements are indexed by position, ordered by length then canonical word.
#[derive(Debug)]
pub struct WeylGroup {
    pub datum: RootDatum,
    elements: Vec<WeylElt>,
    index: HashMap<Vec<Vec<i64>>, usize>,
    right: Vec<Vec<usize>>,
    left: Vec<Vec<usize>>,
}

impl WeylGroup {
    pub fn new(datum: RootDatum) -> Result<Self> {
        Self::with_bound(datum, DEFAULT_ENUMERATION_BOUND)
    }

    pub fn with_bound(datum: RootDatum, bound: u128) -> Result<Self> {
        let order = datum.weyl_order();
        if order > bound {
            return Err(MotkitError::WeylTooLarge { order, bound });
        }
        let n = datum.rank;
        let refl: Vec<IntSquare> = (0..n).map(|i| datum.reflection_matrix(i)).collect();
        let mut seen: HashSet<IntSquare> = HashSet::new();
        let mut mats = vec![identity(n)];
        seen.insert(identity(n));
        let mut head = 0;
        while head < mats.len() {
            let m = mats[head].clone();
            head += 1;
            for r in &refl {
                let next = mat_mul(&m, r);
                if seen.insert(next.clone()) {
                    mats.push(next);
                }
            }
        }
        if mats.len() as u128 != order {
            return Err(MotkitError::SelfCheck(format!(
                "{}: enumerated {} elements, expected {order}",
                datum.cartan_type,
                mats.len()
            )));
        }
        let mut elements: Vec<WeylElt> = mats.into_iter().map(|m| datum.element_from_matrix(m)).collect();
        elements.sort_by(|a, b| a.word.len().cmp(&b.word.len()).then_with(|| a.word.cmp(&b.word)));
        let index: HashMap<Vec<Vec<i64>>, usize> =
            elements.iter().enumerate().map(|(i, w)| (w.matrix.clone(), i)).collect();
        let right = elements
            .iter()
            .map(|w| refl.iter().map(|r| index[&mat_mul(&w.matrix, r)]).collect())
            .collect();
        let left = elements
            .iter()
            .map(|w| refl.iter().map(|r| index[&mat_mul(r, &w.matrix)]).collect())
            .collect();
        Ok(WeylGroup { datum, elements, index, right, left })
    }

    pub fn cartan_type(&self) -> CartanType {
        self.datum.cartan_type
    }

    pub fn rank(&self) -> usize {
        self.datum.rank
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[WeylElt] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &WeylElt {
        &self.elements[i]
    }

    pub fn index_of(&self, w: &WeylElt) -> Result<usize> {
        if w.cartan_type != self.cartan_type() {
            return Err(MotkitError::DatumMismatch(self.cartan_type().to_string(), w.cartan_type.to_string()));
        }
        Ok(self.index[&w.matrix])
    }

    pub fn index_of_word(&self, word: &[usize]) -> Result<usize> {
        let mut i = 0;
        for &s in word {
            self.datum.check_generator(s)?;
            i = self.right[i][s];
        }
        Ok(i)
    }

    pub fn length(&self, i: usize) -> usize {
        self.elements[i].length()
    }

    pub fn max_length(&self) -> usize {
        self.elements.last().map_or(0, |w| w.length())
    }

    pub fn longest(&self) -> usize {
        self.elements.len() - 1
    }

    /// Index of `w s`.
    pub fn right_mul(&self, i: usize, s: usize) -> usize {
        self.right[i][s]
    }

    /// Index of `s w`.
    pub fn left_mul(&self, i: usize, s: usize) -> usize {
        self.left[i][s]
    }

    pub fn inverse(&self, i: usize) -> usize {
        let mut j = 0;
        for &s in self.elements[i].word.iter().rev() {
            j = self.right[j][s];
        }
        j
    }

    pub fn bruhat_leq(&self, x: usize, y: usize) -> bool {
        let (mut x, mut y) = (x, y);
        loop {
            if self.length(x) > self.length(y) {
                return false;
            }
            if self.length(y) == 0 {
                return self.length(x) == 0;
            }
            let s = *self.elements[y].word.last().expect("nonempty");
            let xs = self.right[x][s];
            if self.length(xs) < self.length(x) {
                x = xs;
            }
            y = self.right[y][s];
        }
    }

    /// Counts `#{w : ℓ(w) = i}`.
    pub fn length_counts(&self) -> Vec<usize> {
        let mut c = vec![0; self.max_length() + 1];
        for w in &self.elements {
            c[w.length()] += 1;
        }
        c
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a1_datum() {
        let d = build_root_datum("A", 1).unwrap();
        assert_eq!(d.cartan_matrix, vec![vec![2]]);
        assert_eq!(d.positive_roots.len(), 1);
        assert_eq!(d.weyl_order(), 2);
    }

    #[test]
    fn rejects_bad_types() {
        assert!(build_root_datum("H", 3).is_err());
        assert!(build_root_datum("G", 3).is_err());
        assert!(build_root_datum("E", 5).is_err());
        assert!(build_root_datum("D", 3).is_err());
        assert!(build_root_datum("A", 0).is_err());
    }

    #[test]
    fn a2_reflection_of_first_weight() {
        let d = build_root_datum("A", 2).unwrap();
        let s1 = d.reflection_matrix(0);
        // column 0 = image of ϖ1 = ϖ1 - α1 = (-1, 1)
        assert_eq!((s1[0][0], s1[1][0]), (-1, 1));
    }

    #[test]
    fn longest_elements() {
        for (l, r, len) in [("A", 2, 3), ("B", 2, 4), ("G", 2, 6), ("A", 3, 6)] {
            let d = build_root_datum(l, r).unwrap();
            assert_eq!(d.longest_element().length(), len);
        }
    }

    #[test]
    fn words_parse() {
        assert_eq!(parse_word("s1 s2 s1").unwrap(), vec![0, 1, 0]);
        assert_eq!(parse_word("s1s2").unwrap(), vec![0, 1]);
        assert_eq!(parse_word("1,2").unwrap(), vec![0, 1]);
        assert_eq!(parse_word("e").unwrap(), Vec::<usize>::new());
        assert!(parse_word("s0").is_err());
        assert!(parse_word("x").is_err());
        assert_eq!(format_word(&[0, 1]), "s1 s2");
    }

    #[test]
    fn enumeration_bound_refusal() {
        let d = build_root_datum("E", 8).unwrap();
        match d.enumerate_weyl(DEFAULT_ENUMERATION_BOUND) {
            Err(MotkitError::WeylTooLarge { order, .. }) => assert_eq!(order, 696_729_600),
            other => panic!("expected refusal, got {other:?}"),
        }
    }
}
