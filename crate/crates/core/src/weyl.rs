//! Weyl group elements as integer matrices on weight coordinates.

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{RootSystem, Weight};

/// Default cap on `|W|` for full enumeration.
pub const DEFAULT_WEYL_CAP: u128 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylElement {
    /// Row-major `rank × rank` matrix acting on fundamental-weight coordinates.
    matrix: Vec<i64>,
    rank: usize,
    length: usize,
    /// A reduced word in the simple reflections (0-based indices),
    /// read left to right as a product `s_{w[0]} s_{w[1]} ⋯`.
    word: Vec<usize>,
}

impl WeylElement {
    pub fn identity(rank: usize) -> Self {
        let mut matrix = vec![0; rank * rank];
        for i in 0..rank {
            matrix[i * rank + i] = 1;
        }
        WeylElement {
            matrix,
            rank,
            length: 0,
            word: Vec::new(),
        }
    }

    pub fn simple_reflection(rs: &RootSystem, i: usize) -> Self {
        let n = rs.rank();
        let alpha = rs.simple_root(i);
        let mut matrix = vec![0; n * n];
        for r in 0..n {
            for c in 0..n {
                matrix[r * n + c] = i64::from(r == c) - if c == i { alpha.coords()[r] } else { 0 };
            }
        }
        WeylElement {
            matrix,
            rank: n,
            length: 1,
            word: vec![i],
        }
    }

    /// Product of simple reflections; the word need not be reduced.
    pub fn from_word(rs: &RootSystem, word: &[usize]) -> Result<Self> {
        let mut w = WeylElement::identity(rs.rank());
        for &i in word {
            if i >= rs.rank() {
                return Err(Error::Parse(format!(
                    "simple reflection index {} out of range for rank {}",
                    i + 1,
                    rs.rank()
                )));
            }
            w = w.compose_raw(&WeylElement::simple_reflection(rs, i));
        }
        Ok(WeylElement::from_matrix(rs, w.matrix)?)
    }

    /// Validates that `matrix` lies in `W` and recovers a reduced word.
    pub fn from_matrix(rs: &RootSystem, matrix: Vec<i64>) -> Result<Self> {
        let n = rs.rank();
        if matrix.len() != n * n {
            return Err(Error::RankMismatch {
                expected: n * n,
                got: matrix.len(),
            });
        }
        let mut cur = WeylElement {
            matrix: matrix.clone(),
            rank: n,
            length: 0,
            word: Vec::new(),
        };
        // peel right descents: w(α_i) < 0  ⇒  ℓ(w s_i) = ℓ(w) − 1
        let mut rev = Vec::new();
        let limit = rs.num_positive_roots();
        loop {
            let descent = (0..n).find(|&i| {
                let img = cur.apply(&rs.simple_root(i));
                !rs.is_positive_root(&img)
            });
            match descent {
                None => break,
                Some(i) => {
                    if rev.len() > limit {
                        return Err(Error::InvalidSubgroup("matrix is not a Weyl group element".into()));
                    }
                    rev.push(i);
                    cur = cur.compose_raw(&WeylElement::simple_reflection(rs, i));
                }
            }
        }
        if cur.matrix != WeylElement::identity(n).matrix {
            return Err(Error::InvalidSubgroup("matrix is not a Weyl group element".into()));
        }
        rev.reverse();
        Ok(WeylElement {
            matrix,
            rank: n,
            length: rev.len(),
            word: rev,
        })
    }

    fn compose_raw(&self, other: &WeylElement) -> WeylElement {
        let n = self.rank;
        let mut m = vec![0; n * n];
        for r in 0..n {
            for c in 0..n {
                let mut acc = 0;
                for k in 0..n {
                    acc += self.matrix[r * n + k] * other.matrix[k * n + c];
                }
                m[r * n + c] = acc;
            }
        }
        let mut word = self.word.clone();
        word.extend_from_slice(&other.word);
        WeylElement {
            matrix: m,
            rank: n,
            length: 0,
            word,
        }
    }

    /// `self ∘ other`, with length and reduced word recomputed.
    pub fn compose(&self, rs: &RootSystem, other: &WeylElement) -> WeylElement {
        let raw = self.compose_raw(other);
        WeylElement::from_matrix(rs, raw.matrix).expect("W is closed under composition")
    }

    pub fn inverse(&self, rs: &RootSystem) -> WeylElement {
        let rev: Vec<usize> = self.word.iter().rev().copied().collect();
        WeylElement::from_word(rs, &rev).expect("reversed reduced word is valid")
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn matrix(&self) -> &[i64] {
        &self.matrix
    }

    pub fn matrix_rows(&self) -> Vec<Vec<i64>> {
        self.matrix.chunks(self.rank).map(<[i64]>::to_vec).collect()
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    /// `ε(w) = (−1)^ℓ(w)`.
    pub fn sign(&self) -> i64 {
        if self.length % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn is_identity(&self) -> bool {
        self.length == 0
    }

    /// Action on a weight.
    pub fn act(&self, mu: &Weight) -> Result<Weight> {
        mu.check_rank(self.rank)?;
        Ok(self.apply(mu))
    }

    pub(crate) fn apply(&self, mu: &Weight) -> Weight {
        let n = self.rank;
        let c = mu.coords();
        Weight::new(
            (0..n)
                .map(|r| (0..n).map(|k| self.matrix[r * n + k] * c[k]).sum())
                .collect(),
        )
    }

    pub fn determinant(&self) -> i64 {
        det_i64(&self.matrix_rows())
    }
}

/// `ρ − wρ`.
pub fn rho_shift(w: &WeylElement, rs: &RootSystem) -> Result<Weight> {
    let wr = w.act(rs.rho())?;
    Ok(rs.rho().sub(&wr))
}

/// Sum of the positive roots sent negative by `w⁻¹`; equals `ρ − wρ`.
pub fn inversion_sum(w: &WeylElement, rs: &RootSystem) -> Weight {
    let inv = w.inverse(rs);
    rs.positive_roots()
        .iter()
        .filter(|a| !rs.is_positive_root(&inv.apply(a)))
        .fold(Weight::zero(rs.rank()), |acc, a| acc.add(a))
}

#[derive(Clone, Debug)]
pub struct WeylSubgroup {
    elements: Vec<WeylElement>,
}

impl WeylSubgroup {
    pub fn trivial(rank: usize) -> Self {
        WeylSubgroup {
            elements: vec![WeylElement::identity(rank)],
        }
    }

    /// The full Weyl group, enumerated by breadth-first closure so that each
    /// element is first reached at depth equal to its length.
    pub fn full(rs: &RootSystem, cap: u128) -> Result<Self> {
        let predicted = rs.classical_weyl_order();
        if predicted > cap {
            return Err(Error::GroupTooLarge { predicted, cap });
        }
        let gens: Vec<WeylElement> = (0..rs.rank())
            .map(|i| WeylElement::simple_reflection(rs, i))
            .collect();
        let id = WeylElement::identity(rs.rank());
        let mut index: HashMap<Vec<i64>, usize> = HashMap::new();
        index.insert(id.matrix.clone(), 0);
        let mut elements = vec![id];
        let mut queue = VecDeque::from([0usize]);
        while let Some(k) = queue.pop_front() {
            for g in &gens {
                let mut next = elements[k].compose_raw(g);
                if index.contains_key(&next.matrix) {
                    continue;
                }
                next.length = elements[k].length + 1;
                if elements.len() as u128 >= cap {
                    return Err(Error::GroupTooLarge {
                        predicted: elements.len() as u128 + 1,
                        cap,
                    });
                }
                index.insert(next.matrix.clone(), elements.len());
                queue.push_back(elements.len());
                elements.push(next);
            }
        }
        Ok(WeylSubgroup { elements })
    }

    /// Closure of the given elements under composition.
    pub fn generated_by(rs: &RootSystem, generators: &[WeylElement]) -> Result<Self> {
        for g in generators {
            if g.rank() != rs.rank() {
                return Err(Error::RankMismatch {
                    expected: rs.rank(),
                    got: g.rank(),
                });
            }
            // re-validates membership in W
            WeylElement::from_matrix(rs, g.matrix.clone())?;
        }
        let id = WeylElement::identity(rs.rank());
        let mut index: HashMap<Vec<i64>, ()> = HashMap::new();
        index.insert(id.matrix.clone(), ());
        let mut elements = vec![id];
        let mut cursor = 0;
        while cursor < elements.len() {
            for g in generators {
                let next = elements[cursor].compose(rs, g);
                if index.insert(next.matrix.clone(), ()).is_none() {
                    elements.push(next);
                }
            }
            cursor += 1;
        }
        elements.sort_by(|a, b| a.length.cmp(&b.length).then_with(|| a.word.cmp(&b.word)));
        Ok(WeylSubgroup { elements })
    }

    pub fn from_words(rs: &RootSystem, words: &[Vec<usize>]) -> Result<Self> {
        let gens = words
            .iter()
            .map(|w| WeylElement::from_word(rs, w))
            .collect::<Result<Vec<_>>>()?;
        WeylSubgroup::generated_by(rs, &gens)
    }

    pub fn elements(&self) -> &[WeylElement] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, w: &WeylElement) -> bool {
        self.elements.iter().any(|e| e.matrix == w.matrix)
    }

    /// Reduced words of a generating set (all non-identity elements of
    /// length one in the subgroup's own closure order would not suffice in
    /// general, so every element is listed when the group is small).
    pub fn generator_words(&self) -> Vec<Vec<usize>> {
        let mut gens: Vec<WeylElement> = Vec::new();
        let mut span: Vec<Vec<i64>> = vec![self.elements[0].matrix.clone()];
        for e in &self.elements {
            if span.contains(&e.matrix) {
                continue;
            }
            gens.push(e.clone());
            // recompute closure of the current generating set
            span = closure_matrices(&gens, e.rank);
        }
        gens.into_iter().map(|g| g.word).collect()
    }

    pub fn is_subgroup_of(&self, other: &WeylSubgroup) -> bool {
        self.elements.iter().all(|e| other.contains(e))
    }

    /// Group axioms: identity, composition, inverses.
    pub fn check_closed(&self, rs: &RootSystem) -> bool {
        if !self.elements.iter().any(WeylElement::is_identity) {
            return false;
        }
        self.elements.iter().all(|a| {
            self.contains(&a.inverse(rs))
                && self.elements.iter().all(|b| self.contains(&a.compose(rs, b)))
        })
    }
}

fn closure_matrices(gens: &[WeylElement], rank: usize) -> Vec<Vec<i64>> {
    let id = WeylElement::identity(rank);
    let mut out = vec![id.matrix.clone()];
    let mut cursor = 0;
    while cursor < out.len() {
        let cur = WeylElement {
            matrix: out[cursor].clone(),
            rank,
            length: 0,
            word: vec![],
        };
        for g in gens {
            let n = cur.compose_raw(g).matrix;
            if !out.contains(&n) {
                out.push(n);
            }
        }
        cursor += 1;
    }
    out
}

fn det_i64(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    // Bareiss on a small integer matrix
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&r| a[r][k] != 0) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    (sign * a[n - 1][n - 1]) as i64
}

/// Serializable description of a subgroup by generator words (1-based).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupSpec {
    pub generators: Vec<Vec<usize>>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Series;
    use std::collections::HashSet;

    fn rs(s: Series, r: usize) -> RootSystem {
        RootSystem::new(s, r).unwrap()
    }

    #[test]
    fn small_orders() {
        assert_eq!(WeylSubgroup::full(&rs(Series::A, 1), DEFAULT_WEYL_CAP).unwrap().order(), 2);
        assert_eq!(WeylSubgroup::full(&rs(Series::A, 2), DEFAULT_WEYL_CAP).unwrap().order(), 6);
        assert_eq!(WeylSubgroup::full(&rs(Series::B, 2), DEFAULT_WEYL_CAP).unwrap().order(), 8);
        assert_eq!(WeylSubgroup::full(&rs(Series::G, 2), DEFAULT_WEYL_CAP).unwrap().order(), 12);
    }

    #[test]
    fn cap_is_enforced() {
        let e8 = rs(Series::E, 8);
        let err = WeylSubgroup::full(&e8, DEFAULT_WEYL_CAP).unwrap_err();
        assert!(matches!(err, Error::GroupTooLarge { .. }));
        assert!(err.to_string().contains("group too large"));
        assert!(WeylSubgroup::full(&rs(Series::A, 3), 10).is_err());
    }

    #[test]
    fn lengths_signs_and_determinants() {
        for (s, r) in [(Series::A, 3), (Series::B, 3), (Series::G, 2), (Series::C, 3)] {
            let rs = rs(s, r);
            let w = WeylSubgroup::full(&rs, DEFAULT_WEYL_CAP).unwrap();
            for e in w.elements() {
                assert_eq!(e.sign(), e.determinant());
                // length = number of positive roots made negative
                let inv = rs
                    .positive_roots()
                    .iter()
                    .filter(|a| !rs.is_positive_root(&e.apply(a)))
                    .count();
                assert_eq!(e.length(), inv);
                assert_eq!(e.word().len(), e.length());
                let roots: HashSet<_> = rs.full_roots().iter().map(|a| e.apply(a)).collect();
                let orig: HashSet<_> = rs.full_roots().iter().cloned().collect();
                assert_eq!(roots, orig);
            }
        }
    }

    #[test]
    fn action_examples() {
        let a1 = rs(Series::A, 1);
        let s = WeylElement::simple_reflection(&a1, 0);
        assert_eq!(s.act(&Weight::new(vec![1])).unwrap(), Weight::new(vec![-1]));
        let id = WeylElement::identity(1);
        assert_eq!(id.act(&Weight::new(vec![5])).unwrap(), Weight::new(vec![5]));
        assert!(s.act(&Weight::new(vec![1, 0])).is_err());

        let a2 = rs(Series::A, 2);
        let w0 = WeylElement::from_word(&a2, &[0, 1, 0]).unwrap();
        assert_eq!(w0.length(), 3);
        assert_eq!(w0.act(a2.rho()).unwrap(), Weight::new(vec![-1, -1]));
    }

    #[test]
    fn rho_shift_examples() {
        let a1 = rs(Series::A, 1);
        assert!(rho_shift(&WeylElement::identity(1), &a1).unwrap().is_zero());
        let s = WeylElement::simple_reflection(&a1, 0);
        assert_eq!(rho_shift(&s, &a1).unwrap(), Weight::new(vec![2]));
        let a2 = rs(Series::A, 2);
        let w0 = WeylElement::from_word(&a2, &[0, 1, 0]).unwrap();
        assert_eq!(rho_shift(&w0, &a2).unwrap(), Weight::new(vec![2, 2]));
    }

    #[test]
    fn rho_shift_matches_inversion_sum() {
        for (s, r) in [(Series::A, 3), (Series::B, 3), (Series::G, 2)] {
            let rs = rs(s, r);
            for w in WeylSubgroup::full(&rs, DEFAULT_WEYL_CAP).unwrap().elements() {
                assert_eq!(rho_shift(w, &rs).unwrap(), inversion_sum(w, &rs));
            }
        }
    }

    #[test]
    fn subgroup_closure() {
        let b2 = rs(Series::B, 2);
        let w = WeylSubgroup::full(&b2, DEFAULT_WEYL_CAP).unwrap();
        let h = WeylSubgroup::from_words(&b2, &[vec![0]]).unwrap();
        assert_eq!(h.order(), 2);
        assert!(h.is_subgroup_of(&w));
        assert!(h.check_closed(&b2));
        let rot = WeylSubgroup::from_words(&b2, &[vec![0, 1]]).unwrap();
        assert_eq!(rot.order(), 4);
        let all = WeylSubgroup::from_words(&b2, &[vec![0], vec![1]]).unwrap();
        assert_eq!(all.order(), 8);
        let regen = WeylSubgroup::from_words(&b2, &rot.generator_words()).unwrap();
        assert_eq!(regen.order(), 4);
    }

    #[test]
    fn non_weyl_matrix_rejected() {
        let a2 = rs(Series::A, 2);
        // −1 is not in W(A2)
        assert!(WeylElement::from_matrix(&a2, vec![-1, 0, 0, -1]).is_err());
    }
}
