//! Finite-dimensional characters and `n`-homology.
//!
//! Two independent character algorithms (Freudenthal recursion and the Weyl
//! quotient) and a brute-force Koszul complex `Λ^p n ⊗ V_λ` whose homology
//! is computed by exact ranks. The per-degree closed form of Kostant is kept
//! separate in [`kostant_homology`] so that it can be checked against the
//! complex rather than trusted.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::character::{half_denominator, CharElement};
use crate::error::{Error, Result};
use crate::lattice::{RootSystem, Weight};
use crate::linalg::{exact_rank, modular_rank, SparseIntMatrix};
use crate::rep::{HighestWeightModule, StructureConstants};
use crate::weyl::{WeylElement, WeylSubgroup};

/// Default cap on `dim V_λ` for the Koszul complex.
pub const DEFAULT_DIM_CAP: u128 = 2000;
/// Default cap on the rank for the Koszul complex.
pub const DEFAULT_KOSZUL_RANK_CAP: usize = 3;

/// A positive system `uR⁺` together with `u`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositiveSystem {
    roots: Vec<Weight>,
    rho: Weight,
    u: WeylElement,
}

impl PositiveSystem {
    pub fn standard(rs: &RootSystem) -> Self {
        Self::from_weyl(rs, &WeylElement::identity(rs.rank()))
    }

    pub fn from_weyl(rs: &RootSystem, u: &WeylElement) -> Self {
        let mut roots: Vec<Weight> = rs.positive_roots().iter().map(|a| u.apply(a)).collect();
        roots.sort();
        PositiveSystem {
            roots,
            rho: u.apply(rs.rho()),
            u: u.clone(),
        }
    }

    /// Validates a root list as `uR⁺` for some `u ∈ W`.
    pub fn from_roots(rs: &RootSystem, roots: &[Weight]) -> Result<Self> {
        let bad = |m: &str| Error::InvalidPositiveSystem(m.to_string());
        if roots.len() != rs.num_positive_roots() {
            return Err(bad(&format!(
                "expected {} roots, got {}",
                rs.num_positive_roots(),
                roots.len()
            )));
        }
        let mut sum = Weight::zero(rs.rank());
        for r in roots {
            rs.check_rank(r)?;
            if !rs.is_root(r) {
                return Err(Error::NotARoot(r.to_string()));
            }
            if roots.contains(&r.neg()) {
                return Err(bad("contains a root and its negative"));
            }
            sum = sum.add(r);
        }
        let mut sorted = roots.to_vec();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != roots.len() {
            return Err(bad("repeated root"));
        }
        // 2ρ_P is regular and W-conjugate to 2ρ exactly when P = uR⁺
        let mut mu = sum;
        let mut word = Vec::new();
        while let Some(i) = mu.coords().iter().position(|&c| c < 0) {
            mu = rs.reflect_simple(i, &mu);
            word.push(i);
            if word.len() > 4 * rs.full_roots().len() {
                return Err(bad("not conjugate to the standard system"));
            }
        }
        if mu != rs.two_rho() {
            return Err(bad("not conjugate to the standard system"));
        }
        let u = WeylElement::from_word(rs, &word)?;
        let ps = PositiveSystem::from_weyl(rs, &u);
        if ps.roots != sorted {
            return Err(bad("not closed under addition"));
        }
        Ok(ps)
    }

    pub fn roots(&self) -> &[Weight] {
        &self.roots
    }

    pub fn rho(&self) -> &Weight {
        &self.rho
    }

    /// `u` with `self = uR⁺`.
    pub fn weyl_element(&self) -> &WeylElement {
        &self.u
    }
}

/// The T-characters of `H_p(n, V)`, `p = 0 … |R⁺|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedHomology {
    rank: usize,
    classes: Vec<CharElement>,
    positive_system: Vec<Weight>,
}

impl GradedHomology {
    pub fn new(rank: usize, classes: Vec<CharElement>, positive_system: Vec<Weight>) -> Result<Self> {
        if classes.len() > positive_system.len() + 1 {
            return Err(Error::Internal(format!(
                "homology in degree {} beyond |R+| = {}",
                classes.len() - 1,
                positive_system.len()
            )));
        }
        for c in &classes {
            if c.rank() != rank {
                return Err(Error::RankMismatch { expected: rank, got: c.rank() });
            }
        }
        let mut classes = classes;
        classes.resize(positive_system.len() + 1, CharElement::zero(rank));
        let mut positive_system = positive_system;
        positive_system.sort();
        Ok(GradedHomology {
            rank,
            classes,
            positive_system,
        })
    }

    pub fn empty(ps: &PositiveSystem, rank: usize) -> Self {
        GradedHomology {
            rank,
            classes: vec![CharElement::zero(rank); ps.roots().len() + 1],
            positive_system: ps.roots().to_vec(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn classes(&self) -> &[CharElement] {
        &self.classes
    }

    pub fn degree(&self, p: usize) -> CharElement {
        self.classes.get(p).cloned().unwrap_or_else(|| CharElement::zero(self.rank))
    }

    pub fn positive_system(&self) -> &[Weight] {
        &self.positive_system
    }

    pub fn scale(&self, k: &BigInt) -> GradedHomology {
        GradedHomology {
            rank: self.rank,
            classes: self.classes.iter().map(|c| c.scale(k)).collect(),
            positive_system: self.positive_system.clone(),
        }
    }

    pub fn checked_add(&self, other: &GradedHomology) -> Result<GradedHomology> {
        if self.positive_system != other.positive_system {
            return Err(Error::PositiveSystemMismatch);
        }
        let classes = self
            .classes
            .iter()
            .zip(&other.classes)
            .map(|(a, b)| a.checked_add(b))
            .collect::<Result<Vec<_>>>()?;
        Ok(GradedHomology {
            rank: self.rank,
            classes,
            positive_system: self.positive_system.clone(),
        })
    }

    /// Σ_p (−1)^p [H_p].
    pub fn euler_class(&self) -> CharElement {
        euler_class(self)
    }
}

pub fn euler_class(gh: &GradedHomology) -> CharElement {
    let mut out = CharElement::zero(gh.rank);
    for (p, c) in gh.classes.iter().enumerate() {
        out = &out + &if p % 2 == 0 { c.clone() } else { -c };
    }
    out
}

#[derive(Serialize, Deserialize)]
struct DegreeJson {
    p: usize,
    class: CharElement,
}

#[derive(Serialize, Deserialize)]
struct GradedHomologyJson {
    degrees: Vec<DegreeJson>,
    positive_system: Vec<Weight>,
}

impl Serialize for GradedHomology {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GradedHomologyJson {
            degrees: self
                .classes
                .iter()
                .enumerate()
                .map(|(p, c)| DegreeJson { p, class: c.clone() })
                .collect(),
            positive_system: self.positive_system.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for GradedHomology {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = GradedHomologyJson::deserialize(d)?;
        let rank = raw
            .positive_system
            .first()
            .map(Weight::rank)
            .or_else(|| raw.degrees.first().map(|d| d.class.rank()))
            .ok_or_else(|| D::Error::custom("cannot infer rank of empty homology"))?;
        let top = raw.degrees.iter().map(|d| d.p + 1).max().unwrap_or(0);
        let mut classes = vec![CharElement::zero(rank); top];
        for deg in raw.degrees {
            classes[deg.p] = &classes[deg.p] + &deg.class;
        }
        GradedHomology::new(rank, classes, raw.positive_system).map_err(D::Error::custom)
    }
}

fn require_dominant(rs: &RootSystem, lambda: &Weight) -> Result<()> {
    rs.check_rank(lambda)?;
    if !lambda.is_dominant() {
        return Err(Error::NotDominant(lambda.to_string()));
    }
    Ok(())
}

/// Character of `V_λ` from the Freudenthal multiplicity recursion.
pub fn freudenthal_character(lambda: &Weight, rs: &RootSystem) -> Result<CharElement> {
    require_dominant(rs, lambda)?;
    let simple = rs.simple_roots();
    let lr = lambda.add(rs.rho());
    let norm_top = rs.inner(&lr, &lr);
    // dominant multiplicities; other weights read through their dominant conjugate
    let mut dom: HashMap<Weight, i64> = HashMap::from([(lambda.clone(), 1)]);
    let mut all: BTreeMap<Weight, i64> = BTreeMap::from([(lambda.clone(), 1)]);
    let mult = |mu: &Weight, dom: &HashMap<Weight, i64>| -> i64 {
        dom.get(&rs.dominant_conjugate(mu)).copied().unwrap_or(0)
    };
    let mut layer = vec![lambda.clone()];
    while !layer.is_empty() {
        let mut next: Vec<Weight> = Vec::new();
        for nu in &layer {
            for a in &simple {
                let mu = nu.sub(a);
                if !all.contains_key(&mu) && !next.contains(&mu) {
                    next.push(mu);
                }
            }
        }
        let mut new_layer = Vec::new();
        for mu in next {
            let m = if mu.is_dominant() {
                let mr = mu.add(rs.rho());
                let den = norm_top - rs.inner(&mr, &mr);
                if den == 0 {
                    return Err(Error::Internal(format!("Freudenthal denominator vanished at {mu}")));
                }
                let mut num: i64 = 0;
                for alpha in rs.positive_roots() {
                    let mut k = 1;
                    loop {
                        let up = mu.add_scaled(alpha, k);
                        // weights above the top of the α-string vanish
                        if !all.contains_key(&up) && mult(&up, &dom) == 0 {
                            break;
                        }
                        num += 2 * rs.inner(&up, alpha) * all.get(&up).copied().unwrap_or_else(|| mult(&up, &dom));
                        k += 1;
                    }
                }
                if num % den != 0 {
                    return Err(Error::Internal(format!("non-integral multiplicity at {mu}")));
                }
                let m = num / den;
                dom.insert(mu.clone(), m);
                m
            } else {
                mult(&mu, &dom)
            };
            if m > 0 {
                all.insert(mu.clone(), m);
                new_layer.push(mu);
            }
        }
        layer = new_layer;
    }
    CharElement::from_terms(rs.rank(), all)
}

/// Character of `V_λ` as the Weyl quotient
/// `Σ_w ε(w) e^{w(λ+ρ)−ρ} / ∏_{α>0} (1 − e^{−α})`.
pub fn weyl_character(lambda: &Weight, rs: &RootSystem, group: &WeylSubgroup) -> Result<CharElement> {
    require_dominant(rs, lambda)?;
    let lr = lambda.add(rs.rho());
    let mut num = CharElement::zero(rs.rank());
    for w in group.elements() {
        num.add_term(w.apply(&lr).sub(rs.rho()), BigInt::from(w.sign()));
    }
    num.exact_div(&half_denominator(rs).conjugate()).map_err(|e| match e {
        Error::InexactDivision => {
            Error::Internal(format!("Weyl numerator for {lambda} is not divisible by the denominator"))
        }
        other => other,
    })
}

/// `λ* = −w₀λ`, the highest weight of the dual module.
pub fn dual_weight(rs: &RootSystem, lambda: &Weight) -> Weight {
    rs.dominant_conjugate(&lambda.neg())
}

/// `Σ_{w∈W} ε(w) e^{ρ − w(λ*+ρ)}`, equal to `∏_{α>0}(1−e^α) · χ_λ`.
pub fn euler_class_closed_form(lambda: &Weight, rs: &RootSystem, group: &WeylSubgroup) -> Result<CharElement> {
    require_dominant(rs, lambda)?;
    let top = dual_weight(rs, lambda).add(rs.rho());
    let mut out = CharElement::zero(rs.rank());
    for w in group.elements() {
        out.add_term(rs.rho().sub(&w.apply(&top)), BigInt::from(w.sign()));
    }
    Ok(out)
}

/// Kostant's per-degree answer
/// `H_p(n_u, V_λ) = Σ_{ℓ(w)=p} e^{u(ρ − w(λ*+ρ))}`.
pub fn kostant_homology(
    lambda: &Weight,
    ps: &PositiveSystem,
    rs: &RootSystem,
    group: &WeylSubgroup,
) -> Result<GradedHomology> {
    require_dominant(rs, lambda)?;
    let top = dual_weight(rs, lambda).add(rs.rho());
    let mut classes = vec![CharElement::zero(rs.rank()); rs.num_positive_roots() + 1];
    for w in group.elements() {
        let mu = ps.weyl_element().apply(&rs.rho().sub(&w.apply(&top)));
        classes[w.length()].add_term(mu, BigInt::one());
    }
    GradedHomology::new(rs.rank(), classes, ps.roots().to_vec())
}

/// The chain complex `Λ^• n ⊗ V_λ` split by weight.
pub struct KoszulComplex<'a> {
    rs: &'a RootSystem,
    module: HighestWeightModule,
    sc: std::sync::Arc<StructureConstants>,
    /// Roots of `n`, ascending.
    roots: Vec<Weight>,
    /// Index of each root of `n` in `full_roots`.
    full_index: Vec<usize>,
    /// Position in `roots` of each full root, if it lies in `n`.
    position: HashMap<usize, usize>,
}

/// One block of a chain space: wedge mask, module weight index, offset.
#[derive(Clone, Debug)]
struct ChainBlock {
    mask: u32,
    weight: usize,
    offset: usize,
}

impl<'a> KoszulComplex<'a> {
    pub fn new(rs: &'a RootSystem, lambda: &Weight, ps: &PositiveSystem, dim_cap: u128) -> Result<Self> {
        let module = HighestWeightModule::new(rs, lambda, dim_cap)?;
        let sc = StructureConstants::cached(rs)?;
        let roots = ps.roots().to_vec();
        if roots.len() > 31 {
            return Err(Error::Internal("too many roots for the wedge encoding".into()));
        }
        let full_index: Vec<usize> = roots
            .iter()
            .map(|r| rs.root_index(r).expect("validated root"))
            .collect();
        let position = full_index.iter().enumerate().map(|(p, &k)| (k, p)).collect();
        Ok(KoszulComplex {
            rs,
            module,
            sc,
            roots,
            full_index,
            position,
        })
    }

    pub fn module(&self) -> &HighestWeightModule {
        &self.module
    }

    fn mask_weight(&self, mask: u32) -> Weight {
        let mut w = Weight::zero(self.rs.rank());
        for (k, r) in self.roots.iter().enumerate() {
            if mask & (1 << k) != 0 {
                w = w.add(r);
            }
        }
        w
    }

    /// Chain weights `ν` with their blocks per degree.
    fn chain_weights(&self) -> BTreeMap<Weight, Vec<Vec<ChainBlock>>> {
        let n = self.roots.len();
        let mut out: BTreeMap<Weight, Vec<Vec<ChainBlock>>> = BTreeMap::new();
        let mask_weights: Vec<Weight> = (0..1u32 << n).map(|m| self.mask_weight(m)).collect();
        for mask in 0..1u32 << n {
            let p = mask.count_ones() as usize;
            for (idx, mu) in self.module.weights().iter().enumerate() {
                let nu = mu.add(&mask_weights[mask as usize]);
                let entry = out.entry(nu).or_insert_with(|| vec![Vec::new(); n + 1]);
                let offset = entry[p].last().map_or(0, |b: &ChainBlock| b.offset + self.module.weight_dims()[b.weight]);
                entry[p].push(ChainBlock { mask, weight: idx, offset });
            }
        }
        out
    }

    fn space_dim(&self, blocks: &[ChainBlock]) -> usize {
        blocks.last().map_or(0, |b| b.offset + self.module.weight_dims()[b.weight])
    }

    /// Images of the basis of `C_{p,ν}` in `C_{p−1,ν}` as sparse rows.
    fn boundary_rows(&self, source: &[ChainBlock], target: &[ChainBlock]) -> Vec<Vec<(usize, BigRational)>> {
        let lookup: HashMap<(u32, usize), usize> =
            target.iter().map(|b| ((b.mask, b.weight), b.offset)).collect();
        let dims = self.module.weight_dims();
        let mut rows = Vec::new();
        for blk in source {
            let members: Vec<usize> = (0..self.roots.len()).filter(|k| blk.mask & (1 << k) != 0).collect();
            let mu = &self.module.weights()[blk.weight];
            for j in 0..dims[blk.weight] {
                let mut row: BTreeMap<usize, BigRational> = BTreeMap::new();
                // Σ_i (−1)^i (…x̂_i…) ⊗ x_i v, i counted from 1
                for (pos, &k) in members.iter().enumerate() {
                    let sign = if pos % 2 == 0 { -1 } else { 1 };
                    let Some(block) = self.module.root_block(self.full_index[k], blk.weight) else {
                        continue;
                    };
                    let tw = self.module.index_of(&mu.add(&self.roots[k])).expect("target weight exists");
                    let off = lookup[&(blk.mask & !(1 << k), tw)];
                    for r in 0..dims[tw] {
                        let c = block.get(r, j);
                        if !c.is_zero() {
                            *row.entry(off + r).or_insert_with(BigRational::zero) +=
                                c * BigRational::from_integer(sign.into());
                        }
                    }
                }
                // Σ_{i<j} (−1)^{i+j} [x_i, x_j] ∧ … ⊗ v
                for a in 0..members.len() {
                    for b in a + 1..members.len() {
                        let (ka, kb) = (members[a], members[b]);
                        let Some((c, k)) = self.sc.bracket(self.full_index[ka], self.full_index[kb]) else {
                            continue;
                        };
                        let t = self.position[&k];
                        let rest = blk.mask & !(1 << ka) & !(1 << kb);
                        if rest & (1 << t) != 0 {
                            continue;
                        }
                        let below = (rest & ((1u32 << t) - 1)).count_ones();
                        // positions a+1, b+1 are 1-based
                        let exp = (a + 1) + (b + 1) + below as usize;
                        let sign = if exp % 2 == 0 { 1 } else { -1 };
                        let off = lookup[&(rest | (1 << t), blk.weight)];
                        *row.entry(off + j).or_insert_with(BigRational::zero) +=
                            c * BigRational::from_integer(sign.into());
                    }
                }
                rows.push(row.into_iter().filter(|(_, v)| !v.is_zero()).collect());
            }
        }
        rows
    }

    /// `H_p` as T-characters.
    pub fn homology(&self) -> Result<Vec<CharElement>> {
        let n = self.roots.len();
        let weights: Vec<(Weight, Vec<Vec<ChainBlock>>)> = self.chain_weights().into_iter().collect();
        let per_weight: Vec<(Weight, Vec<i64>)> = weights
            .par_iter()
            .map(|(nu, spaces)| {
                let dims: Vec<usize> = spaces.iter().map(|s| self.space_dim(s)).collect();
                let rows: Vec<Vec<Vec<(usize, BigRational)>>> = (0..=n)
                    .map(|p| {
                        if p == 0 || dims[p] == 0 || dims[p - 1] == 0 {
                            Vec::new()
                        } else {
                            self.boundary_rows(&spaces[p], &spaces[p - 1])
                        }
                    })
                    .collect();
                let homology = |ranks: &[usize]| -> Vec<i64> {
                    (0..=n)
                        .map(|p| dims[p] as i64 - ranks[p] as i64 - ranks[p + 1] as i64)
                        .collect()
                };
                // ranks[p] = rank ∂_p : C_p → C_{p−1}
                let mut ranks = vec![0usize; n + 2];
                for p in 1..=n {
                    ranks[p] = modular_rank(dims[p - 1], &rows[p]);
                }
                let h = homology(&ranks);
                // Modular ranks only bound the true ones from below, so h
                // bounds the true homology from above with the same Euler
                // characteristic. Within one parity class that forces
                // equality.
                let parities: Vec<usize> = (0..=n).filter(|&p| h[p] != 0).map(|p| p % 2).collect();
                if parities.windows(2).all(|w| w[0] == w[1]) {
                    return (nu.clone(), h);
                }
                log::debug!("weight {nu}: modular homology spans both parities; using exact ranks");
                for p in 1..=n {
                    if !rows[p].is_empty() {
                        let m = SparseIntMatrix::from_rational_rows(dims[p - 1], rows[p].clone());
                        ranks[p] = exact_rank(&m);
                    }
                }
                (nu.clone(), homology(&ranks))
            })
            .collect();
        let mut classes = vec![CharElement::zero(self.rs.rank()); n + 1];
        for (nu, h) in per_weight {
            for (p, &d) in h.iter().enumerate() {
                if d < 0 {
                    return Err(Error::Internal(format!("negative homology dimension at {nu}, degree {p}")));
                }
                if d > 0 {
                    classes[p].add_term(nu.clone(), BigInt::from(d));
                }
            }
        }
        Ok(classes)
    }

    /// Largest `|∂_{p−1} ∘ ∂_p|` entry over all weights; zero for a complex.
    pub fn max_square_defect(&self) -> BigRational {
        let n = self.roots.len();
        let mut worst = BigRational::zero();
        for (_, spaces) in self.chain_weights() {
            for p in 2..=n {
                let first = self.boundary_rows(&spaces[p], &spaces[p - 1]);
                let second = self.boundary_rows(&spaces[p - 1], &spaces[p - 2]);
                for row in &first {
                    let mut acc: BTreeMap<usize, BigRational> = BTreeMap::new();
                    for (mid, c) in row {
                        for (t, d) in &second[*mid] {
                            *acc.entry(*t).or_insert_with(BigRational::zero) += c * d;
                        }
                    }
                    for v in acc.values() {
                        let a = if v < &BigRational::zero() { -v } else { v.clone() };
                        if a > worst {
                            worst = a;
                        }
                    }
                }
            }
        }
        worst
    }
}

/// `H_•(n, V_λ)` for `n` spanned by the roots of `ps`, from the Koszul
/// complex.
pub fn koszul_n_homology(
    lambda: &Weight,
    ps: &PositiveSystem,
    rs: &RootSystem,
    dim_cap: u128,
) -> Result<GradedHomology> {
    require_dominant(rs, lambda)?;
    let complex = KoszulComplex::new(rs, lambda, ps, dim_cap)?;
    let classes = complex.homology()?;
    GradedHomology::new(rs.rank(), classes, ps.roots().to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Series;
    use crate::weyl::DEFAULT_WEYL_CAP;

    fn w(v: &[i64]) -> Weight {
        Weight::new(v.to_vec())
    }

    fn e(v: &[i64]) -> CharElement {
        CharElement::monomial(w(v))
    }

    fn sys(s: Series, r: usize) -> (RootSystem, WeylSubgroup) {
        let rs = RootSystem::new(s, r).unwrap();
        let g = WeylSubgroup::full(&rs, DEFAULT_WEYL_CAP).unwrap();
        (rs, g)
    }

    #[test]
    fn small_characters() {
        let (a1, g1) = sys(Series::A, 1);
        assert_eq!(freudenthal_character(&w(&[0]), &a1).unwrap(), e(&[0]));
        assert_eq!(freudenthal_character(&w(&[1]), &a1).unwrap(), &e(&[1]) + &e(&[-1]));
        assert_eq!(weyl_character(&w(&[2]), &a1, &g1).unwrap(), &(&e(&[2]) + &e(&[0])) + &e(&[-2]));
        let (a2, _) = sys(Series::A, 2);
        assert_eq!(freudenthal_character(&w(&[1, 1]), &a2).unwrap().degree(), BigInt::from(8));
        let (g2, gg) = sys(Series::G, 2);
        let dims: Vec<BigInt> = [w(&[1, 0]), w(&[0, 1])]
            .iter()
            .map(|l| weyl_character(l, &g2, &gg).unwrap().degree())
            .collect();
        assert!(dims.contains(&BigInt::from(7)));
        assert!(matches!(freudenthal_character(&w(&[-1]), &a1), Err(Error::NotDominant(_))));
    }

    #[test]
    fn characters_agree_and_are_invariant() {
        for (s, r, bound) in [(Series::A, 2, 3), (Series::B, 2, 3), (Series::G, 2, 2), (Series::A, 3, 1)] {
            let (rs, g) = sys(s, r);
            let mut lam = vec![0i64; r];
            loop {
                let l = Weight::new(lam.clone());
                let f = freudenthal_character(&l, &rs).unwrap();
                assert_eq!(weyl_character(&l, &rs, &g).unwrap(), f, "{s}{r} {l}");
                assert_eq!(f.degree(), rs.weyl_dimension(&l));
                assert!(f.is_weyl_invariant(&rs));
                let Some(i) = lam.iter().position(|&c| c < bound) else { break };
                lam[i] += 1;
                lam[..i].iter_mut().for_each(|c| *c = 0);
            }
        }
    }

    #[test]
    fn koszul_rank_one() {
        let (a1, _) = sys(Series::A, 1);
        let ps = PositiveSystem::standard(&a1);
        let h = koszul_n_homology(&w(&[0]), &ps, &a1, DEFAULT_DIM_CAP).unwrap();
        assert_eq!(h.classes(), &[e(&[0]), e(&[2])]);
        let h = koszul_n_homology(&w(&[1]), &ps, &a1, DEFAULT_DIM_CAP).unwrap();
        assert_eq!(h.classes(), &[e(&[-1]), e(&[3])]);
        assert_eq!(h.euler_class(), &e(&[-1]) - &e(&[3]));
    }

    #[test]
    fn boundary_squares_to_zero() {
        for (s, r, lam) in [(Series::A, 2, vec![1, 0]), (Series::B, 2, vec![0, 1]), (Series::G, 2, vec![1, 0])] {
            let rs = RootSystem::new(s, r).unwrap();
            let ps = PositiveSystem::standard(&rs);
            let c = KoszulComplex::new(&rs, &w(&lam), &ps, DEFAULT_DIM_CAP).unwrap();
            assert!(c.max_square_defect().is_zero(), "{s}{r}");
        }
    }

    #[test]
    fn koszul_matches_kostant_per_degree() {
        for (s, r, lams) in [
            (Series::A, 2, vec![vec![0, 0], vec![1, 0], vec![1, 1], vec![2, 1]]),
            (Series::B, 2, vec![vec![1, 0], vec![0, 1], vec![1, 1]]),
            (Series::G, 2, vec![vec![0, 0], vec![1, 0]]),
            (Series::A, 3, vec![vec![1, 0, 0]]),
        ] {
            let (rs, g) = sys(s, r);
            for u in g.elements().iter().step_by(3) {
                let ps = PositiveSystem::from_weyl(&rs, u);
                for lam in &lams {
                    let l = Weight::new(lam.clone());
                    assert_eq!(
                        koszul_n_homology(&l, &ps, &rs, DEFAULT_DIM_CAP).unwrap(),
                        kostant_homology(&l, &ps, &rs, &g).unwrap(),
                        "{s}{r} {l} u={:?}",
                        u.word()
                    );
                }
            }
        }
    }

    #[test]
    fn closed_form_is_denominator_times_character() {
        let (a2, g) = sys(Series::A, 2);
        let l = w(&[1, 0]);
        let xi = euler_class_closed_form(&l, &a2, &g).unwrap();
        assert_eq!(xi.len(), 6);
        assert_eq!(xi, &half_denominator(&a2) * &weyl_character(&l, &a2, &g).unwrap());
        // λ = 0: 1 − e^{α₁} − e^{α₂} + …
        let xi0 = euler_class_closed_form(&w(&[0, 0]), &a2, &g).unwrap();
        assert_eq!(xi0.coefficient(&w(&[0, 0])), BigInt::from(1));
        assert_eq!(xi0.coefficient(&w(&[2, -1])), BigInt::from(-1));
        assert_eq!(xi0.coefficient(&w(&[-1, 2])), BigInt::from(-1));
    }

    #[test]
    fn positive_systems() {
        let (b2, g) = sys(Series::B, 2);
        for u in g.elements() {
            let ps = PositiveSystem::from_weyl(&b2, u);
            let back = PositiveSystem::from_roots(&b2, ps.roots()).unwrap();
            assert_eq!(back.roots(), ps.roots());
            assert_eq!(back.weyl_element().matrix(), u.matrix());
        }
        // negating a simple root gives s_i R⁺, negating the highest root does not
        let mut flip = b2.positive_roots().to_vec();
        flip[0] = flip[0].neg();
        assert!(PositiveSystem::from_roots(&b2, &flip).is_ok());
        let mut bad = b2.positive_roots().to_vec();
        let last = bad.len() - 1;
        bad[last] = bad[last].neg();
        assert!(PositiveSystem::from_roots(&b2, &bad).is_err());
        assert!(PositiveSystem::from_roots(&b2, &bad[1..]).is_err());
    }

    #[test]
    fn homology_json_round_trip() {
        let (a1, _) = sys(Series::A, 1);
        let ps = PositiveSystem::standard(&a1);
        let h = koszul_n_homology(&w(&[1]), &ps, &a1, DEFAULT_DIM_CAP).unwrap();
        let s = serde_json::to_string(&h).unwrap();
        assert!(s.starts_with("{\"degrees\":[{\"p\":0,\"class\":"));
        assert!(s.ends_with("\"positive_system\":[[2]]}"));
        let back: GradedHomology = serde_json::from_str(&s).unwrap();
        assert_eq!(back, h);
        assert!(euler_class(&GradedHomology::empty(&ps, 1)).is_zero());
    }
}
