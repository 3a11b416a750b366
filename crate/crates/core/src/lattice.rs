//! Root data of the simple types A–G in the fundamental-weight basis.
//!
//! Every weight is an integer vector `(μ_1, …, μ_r)` with `μ_i = ⟨μ, α_i^∨⟩`.
//! In this basis ρ is `(1, …, 1)`, the simple root `α_j` is column `j` of the
//! Cartan matrix `A[i][j] = ⟨α_i^∨, α_j⟩`, and the simple reflection `s_i`
//! acts by `μ ↦ μ − μ_i α_i`. All quantities built from roots and ρ stay in
//! the integral lattice, so no fractional coordinate ever appears.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default cap on the rank accepted by [`RootSystem::new`].
pub const DEFAULT_RANK_CAP: usize = 8;

/// An integral weight in fundamental-weight coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(Vec<i64>);

impl Weight {
    pub fn new(coords: Vec<i64>) -> Self {
        Weight(coords)
    }

    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    /// Unit vector `ω_i`.
    pub fn fundamental(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i] = 1;
        Weight(v)
    }

    /// Rejects any coordinate that is not an integer.
    pub fn from_rational(coords: &[Ratio<i64>]) -> Result<Self> {
        coords
            .iter()
            .map(|c| {
                if c.is_integer() {
                    Ok(c.to_integer())
                } else {
                    Err(Error::Parse(format!("non-integral weight coordinate {c}")))
                }
            })
            .collect::<Result<Vec<_>>>()
            .map(Weight)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    pub fn add(&self, other: &Weight) -> Weight {
        debug_assert_eq!(self.rank(), other.rank());
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        debug_assert_eq!(self.rank(), other.rank());
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, k: i64) -> Weight {
        Weight(self.0.iter().map(|a| a * k).collect())
    }

    pub(crate) fn add_scaled(&self, other: &Weight, k: i64) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + k * b).collect())
    }

    pub(crate) fn check_rank(&self, rank: usize) -> Result<()> {
        if self.rank() == rank {
            Ok(())
        } else {
            Err(Error::RankMismatch {
                expected: rank,
                got: self.rank(),
            })
        }
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl FromStr for Weight {
    type Err = Error;

    /// Parses `1,0,-2` or `(1,0,-2)`.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
        if inner.trim().is_empty() {
            return Ok(Weight(Vec::new()));
        }
        inner
            .split(',')
            .map(|t| {
                let t = t.trim();
                if let Ok(v) = t.parse::<i64>() {
                    return Ok(v);
                }
                // accept `2/1` but reject `1/2`
                let r: Ratio<i64> = t
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad weight coordinate `{t}`")))?;
                if r.is_integer() {
                    Ok(r.to_integer())
                } else {
                    Err(Error::Parse(format!("non-integral weight coordinate `{t}`")))
                }
            })
            .collect::<Result<Vec<_>>>()
            .map(Weight)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, PartialOrd, Ord)]
pub enum Series {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Series {
    fn valid_ranks(self) -> &'static str {
        match self {
            Series::A => "A_n needs n >= 1",
            Series::B => "B_n needs n >= 2",
            Series::C => "C_n needs n >= 2",
            Series::D => "D_n needs n >= 4",
            Series::E => "E_n needs n in {6,7,8}",
            Series::F => "F only exists as F4",
            Series::G => "G only exists as G2",
        }
    }

    fn accepts(self, rank: usize) -> bool {
        match self {
            Series::A => rank >= 1,
            Series::B | Series::C => rank >= 2,
            Series::D => rank >= 4,
            Series::E => (6..=8).contains(&rank),
            Series::F => rank == 4,
            Series::G => rank == 2,
        }
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Series::A => 'A',
            Series::B => 'B',
            Series::C => 'C',
            Series::D => 'D',
            Series::E => 'E',
            Series::F => 'F',
            Series::G => 'G',
        };
        write!(f, "{c}")
    }
}

impl FromStr for Series {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(Series::A),
            "B" => Ok(Series::B),
            "C" => Ok(Series::C),
            "D" => Ok(Series::D),
            "E" => Ok(Series::E),
            "F" => Ok(Series::F),
            "G" => Ok(Series::G),
            other => Err(Error::Parse(format!("unknown series `{other}`"))),
        }
    }
}

/// Parses a combined type label such as `A2` or `g2`.
pub fn parse_type_label(s: &str) -> Result<(Series, usize)> {
    let s = s.trim();
    let (head, tail) = s.split_at(s.char_indices().nth(1).map_or(s.len(), |(i, _)| i));
    let series: Series = head.parse()?;
    let rank = tail
        .parse::<usize>()
        .map_err(|_| Error::Parse(format!("bad type label `{s}`")))?;
    Ok((series, rank))
}

/// Order of the Weyl group from the classical product formulas.
pub fn classical_weyl_order(series: Series, rank: usize) -> u128 {
    let fact = |n: usize| (1..=n as u128).product::<u128>();
    match series {
        Series::A => fact(rank + 1),
        Series::B | Series::C => (1u128 << rank) * fact(rank),
        Series::D => (1u128 << (rank - 1)) * fact(rank),
        Series::E => match rank {
            6 => 51_840,
            7 => 2_903_040,
            _ => 696_729_600,
        },
        Series::F => 1152,
        Series::G => 12,
    }
}

#[derive(Clone)]
pub struct RootSystem {
    series: Series,
    rank: usize,
    cartan: Vec<Vec<i64>>,
    /// Half squared lengths of the simple roots, short roots normalised to 1.
    symmetrizer: Vec<i64>,
    positive_roots: Vec<Weight>,
    /// Simple-root coordinates of each positive root.
    positive_root_coords: Vec<Vec<i64>>,
    full_roots: Vec<Weight>,
    root_index: HashMap<Weight, usize>,
    rho: Weight,
    /// Integer multiple of the invariant form on fundamental-weight coordinates.
    form: Vec<Vec<i64>>,
}

impl fmt::Debug for RootSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RootSystem({}{})", self.series, self.rank)
    }
}

impl PartialEq for RootSystem {
    fn eq(&self, other: &Self) -> bool {
        self.series == other.series && self.rank == other.rank
    }
}

impl Eq for RootSystem {}

impl RootSystem {
    pub fn new(series: Series, rank: usize) -> Result<Self> {
        Self::with_rank_cap(series, rank, DEFAULT_RANK_CAP)
    }

    pub fn with_rank_cap(series: Series, rank: usize, cap: usize) -> Result<Self> {
        if !series.accepts(rank) || rank > cap {
            let mut valid = series.valid_ranks().to_string();
            if rank > cap {
                valid.push_str(&format!(" and rank <= {cap}"));
            }
            return Err(Error::UnsupportedType {
                series: series.to_string(),
                rank,
                valid,
            });
        }
        let (symmetrizer, edges) = dynkin_data(series, rank);
        let mut sym = vec![vec![0i64; rank]; rank];
        for i in 0..rank {
            sym[i][i] = 2 * symmetrizer[i];
        }
        for &(i, j) in &edges {
            let v = -symmetrizer[i].max(symmetrizer[j]);
            sym[i][j] = v;
            sym[j][i] = v;
        }
        let cartan: Vec<Vec<i64>> = (0..rank)
            .map(|i| (0..rank).map(|j| sym[i][j] / symmetrizer[i]).collect())
            .collect();

        let simple: Vec<Weight> = (0..rank)
            .map(|j| Weight((0..rank).map(|i| cartan[i][j]).collect()))
            .collect();

        // close the simple roots under simple reflections, keeping positives
        let mut positive_roots = simple.clone();
        let mut positive_root_coords: Vec<Vec<i64>> = (0..rank)
            .map(|j| {
                let mut c = vec![0; rank];
                c[j] = 1;
                c
            })
            .collect();
        let mut seen: HashSet<Weight> = simple.iter().cloned().collect();
        let mut cursor = 0;
        while cursor < positive_roots.len() {
            let beta = positive_roots[cursor].clone();
            let coords = positive_root_coords[cursor].clone();
            for i in 0..rank {
                let k = beta.0[i];
                if k == 0 {
                    continue;
                }
                let mut c = coords.clone();
                c[i] -= k;
                if c.iter().any(|&x| x < 0) {
                    continue;
                }
                let image = beta.add_scaled(&simple[i], -k);
                if seen.insert(image.clone()) {
                    positive_roots.push(image);
                    positive_root_coords.push(c);
                }
            }
            cursor += 1;
        }
        let mut order: Vec<usize> = (0..positive_roots.len()).collect();
        order.sort_by_key(|&k| positive_root_coords[k].iter().sum::<i64>());
        let positive_roots: Vec<Weight> = order.iter().map(|&k| positive_roots[k].clone()).collect();
        let positive_root_coords: Vec<Vec<i64>> =
            order.iter().map(|&k| positive_root_coords[k].clone()).collect();

        let mut full_roots = positive_roots.clone();
        full_roots.extend(positive_roots.iter().map(Weight::neg));
        let root_index = full_roots
            .iter()
            .enumerate()
            .map(|(k, r)| (r.clone(), k))
            .collect();

        let form = weight_form(&cartan, &symmetrizer);

        Ok(RootSystem {
            series,
            rank,
            cartan,
            symmetrizer,
            positive_roots,
            positive_root_coords,
            full_roots,
            root_index,
            rho: Weight(vec![1; rank]),
            form,
        })
    }

    pub fn series(&self) -> Series {
        self.series
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn label(&self) -> String {
        format!("{}{}", self.series, self.rank)
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn symmetrizer(&self) -> &[i64] {
        &self.symmetrizer
    }

    pub fn simple_root(&self, i: usize) -> Weight {
        Weight((0..self.rank).map(|r| self.cartan[r][i]).collect())
    }

    pub fn simple_roots(&self) -> Vec<Weight> {
        (0..self.rank).map(|i| self.simple_root(i)).collect()
    }

    /// Positive roots ordered by height; the simple roots come first.
    pub fn positive_roots(&self) -> &[Weight] {
        &self.positive_roots
    }

    pub fn positive_root_coords(&self) -> &[Vec<i64>] {
        &self.positive_root_coords
    }

    pub fn num_positive_roots(&self) -> usize {
        self.positive_roots.len()
    }

    /// Positive roots followed by their negatives, in the same order.
    pub fn full_roots(&self) -> &[Weight] {
        &self.full_roots
    }

    pub fn root_index(&self, w: &Weight) -> Option<usize> {
        self.root_index.get(w).copied()
    }

    pub fn is_root(&self, w: &Weight) -> bool {
        self.root_index.contains_key(w)
    }

    pub fn is_positive_root(&self, w: &Weight) -> bool {
        matches!(self.root_index(w), Some(k) if k < self.positive_roots.len())
    }

    pub fn rho(&self) -> &Weight {
        &self.rho
    }

    pub fn two_rho(&self) -> Weight {
        self.rho.scale(2)
    }

    /// Integer multiple of the invariant inner product.
    pub fn inner(&self, a: &Weight, b: &Weight) -> i64 {
        let mut acc = 0;
        for i in 0..self.rank {
            if a.0[i] == 0 {
                continue;
            }
            for j in 0..self.rank {
                acc += a.0[i] * self.form[i][j] * b.0[j];
            }
        }
        acc
    }

    /// Applies the simple reflection `s_i`.
    pub fn reflect_simple(&self, i: usize, mu: &Weight) -> Weight {
        let k = mu.0[i];
        Weight((0..self.rank).map(|r| mu.0[r] - k * self.cartan[r][i]).collect())
    }

    /// Dominant representative of the Weyl orbit of `mu`.
    pub fn dominant_conjugate(&self, mu: &Weight) -> Weight {
        let mut cur = mu.clone();
        while let Some(i) = cur.0.iter().position(|&c| c < 0) {
            cur = self.reflect_simple(i, &cur);
        }
        cur
    }

    pub fn check_rank(&self, w: &Weight) -> Result<()> {
        w.check_rank(self.rank)
    }

    pub fn classical_weyl_order(&self) -> u128 {
        classical_weyl_order(self.series, self.rank)
    }

    /// Weyl dimension formula `∏_{α>0} (λ+ρ, α) / (ρ, α)`.
    pub fn weyl_dimension(&self, lambda: &Weight) -> num_bigint::BigInt {
        let shifted = lambda.add(&self.rho);
        let mut num = num_bigint::BigInt::from(1);
        let mut den = num_bigint::BigInt::from(1);
        for a in &self.positive_roots {
            num *= self.inner(&shifted, a);
            den *= self.inner(&self.rho, a);
        }
        num / den
    }

    pub fn dump(&self) -> RootSystemDump {
        RootSystemDump {
            series: self.series.to_string(),
            rank: self.rank,
            positive_roots: self.positive_roots.iter().map(|r| r.0.clone()).collect(),
            rho: self.rho.0.clone(),
            weyl_order: self.classical_weyl_order(),
        }
    }
}

/// JSON dump of a root system.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootSystemDump {
    pub series: String,
    pub rank: usize,
    pub positive_roots: Vec<Vec<i64>>,
    pub rho: Vec<i64>,
    pub weyl_order: u128,
}

fn dynkin_data(series: Series, n: usize) -> (Vec<i64>, Vec<(usize, usize)>) {
    let chain = |len: usize| (1..len).map(|i| (i - 1, i)).collect::<Vec<_>>();
    match series {
        Series::A => (vec![1; n], chain(n)),
        Series::B => {
            let mut d = vec![2; n];
            d[n - 1] = 1;
            (d, chain(n))
        }
        Series::C => {
            let mut d = vec![1; n];
            d[n - 1] = 2;
            (d, chain(n))
        }
        Series::D => {
            let mut e = chain(n - 1);
            e.push((n - 3, n - 1));
            (vec![1; n], e)
        }
        Series::E => {
            // Bourbaki labels: 1-3-4-5-6-7-8 with 2 attached to 4
            let mut e = vec![(0, 2), (1, 3), (2, 3)];
            e.extend((4..n).map(|i| (i - 1, i)));
            (vec![1; n], e)
        }
        Series::F => (vec![2, 2, 1, 1], chain(4)),
        Series::G => (vec![1, 3], vec![(0, 1)]),
    }
}

/// `(ω_i, ω_j)` scaled to integers: the Gram matrix is `diag(d) · A^{-1}`.
fn weight_form(cartan: &[Vec<i64>], d: &[i64]) -> Vec<Vec<i64>> {
    let n = cartan.len();
    let mut m: Vec<Vec<Ratio<i64>>> = (0..n)
        .map(|i| {
            let mut row: Vec<Ratio<i64>> = cartan[i].iter().map(|&x| Ratio::from_integer(x)).collect();
            row.extend((0..n).map(|j| Ratio::from_integer(i64::from(i == j))));
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n)
            .find(|&r| m[r][col] != Ratio::from_integer(0))
            .expect("Cartan matrices are invertible");
        m.swap(col, piv);
        let p = m[col][col];
        for x in m[col].iter_mut() {
            *x /= p;
        }
        for r in 0..n {
            if r != col && m[r][col] != Ratio::from_integer(0) {
                let f = m[r][col];
                for c in 0..2 * n {
                    let sub = f * m[col][c];
                    m[r][c] -= sub;
                }
            }
        }
    }
    let gram: Vec<Vec<Ratio<i64>>> = (0..n)
        .map(|i| (0..n).map(|j| Ratio::from_integer(d[i]) * m[i][n + j]).collect())
        .collect();
    let lcm = gram
        .iter()
        .flatten()
        .fold(1i64, |acc, r| acc.lcm(r.denom()));
    gram.iter()
        .map(|row| row.iter().map(|r| (r * lcm).to_integer()).collect())
        .collect()
}
