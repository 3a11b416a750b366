//! The multiplicity, elliptic and homological pairings, and the identities
//! relating Euler classes across positive systems.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::character::{half_denominator, product_one_minus, weyl_denominator_full, CharElement};
use crate::error::{Error, Result};
use crate::kostant::{GradedHomology, PositiveSystem};
use crate::lattice::{parse_type_label, RootSystem, Weight};
use crate::linalg::{exact_rank, SparseIntMatrix};
use crate::weyl::{WeylElement, WeylSubgroup, DEFAULT_WEYL_CAP};

/// Root system, positive system, `W₀` and the rank dichotomy.
#[derive(Clone, Debug)]
pub struct PairContext {
    rs: RootSystem,
    ps: PositiveSystem,
    w0: WeylSubgroup,
    equal_rank: bool,
    /// Dimension of the split part `a` of the Cartan; zero in equal rank.
    split_rank: usize,
    preset: String,
}

impl PairContext {
    /// Validates `w0` as a subgroup of `W`.
    pub fn new(
        rs: RootSystem,
        ps: PositiveSystem,
        w0: WeylSubgroup,
        equal_rank: bool,
        split_rank: usize,
        preset: &str,
    ) -> Result<Self> {
        if !w0.check_closed(&rs) {
            return Err(Error::InvalidSubgroup("not closed under composition".into()));
        }
        if equal_rank && split_rank != 0 {
            return Err(Error::Parse("equal-rank contexts have no split part".into()));
        }
        if !equal_rank && split_rank == 0 {
            return Err(Error::Parse("unequal-rank contexts need a split part of dimension ≥ 1".into()));
        }
        Ok(PairContext {
            rs,
            ps,
            w0,
            equal_rank,
            split_rank,
            preset: preset.to_string(),
        })
    }

    /// Compact group: `W₀ = W`, standard positive system.
    pub fn compact(rs: RootSystem, weyl_cap: u128) -> Result<Self> {
        let w0 = WeylSubgroup::full(&rs, weyl_cap)?;
        let ps = PositiveSystem::standard(&rs);
        PairContext::new(rs, ps, w0, true, 0, "compact")
    }

    /// `SL(2,ℝ)`: type A1 with trivial `W₀`.
    pub fn sl2() -> Self {
        let rs = RootSystem::new(crate::lattice::Series::A, 1).expect("A1");
        let ps = PositiveSystem::standard(&rs);
        PairContext::new(rs, ps, WeylSubgroup::trivial(1), true, 0, "sl2r").expect("valid preset")
    }

    /// A rank-one context whose Cartan has a one-dimensional split part.
    pub fn unequal_rank_stub() -> Self {
        let rs = RootSystem::new(crate::lattice::Series::A, 1).expect("A1");
        let ps = PositiveSystem::standard(&rs);
        PairContext::new(rs, ps, WeylSubgroup::trivial(1), false, 1, "unequal").expect("valid preset")
    }

    pub fn rs(&self) -> &RootSystem {
        &self.rs
    }

    pub fn positive_system(&self) -> &PositiveSystem {
        &self.ps
    }

    pub fn w0(&self) -> &WeylSubgroup {
        &self.w0
    }

    pub fn w0_order(&self) -> usize {
        self.w0.order()
    }

    pub fn equal_rank(&self) -> bool {
        self.equal_rank
    }

    pub fn split_rank(&self) -> usize {
        self.split_rank
    }

    pub fn preset(&self) -> &str {
        &self.preset
    }

    /// `W₀ = W` and equal rank.
    pub fn is_compact(&self) -> bool {
        self.equal_rank && self.w0.order() as u128 == self.rs.classical_weyl_order()
    }

    fn check_class(&self, c: &CharElement) -> Result<()> {
        if c.rank() != self.rs.rank() {
            return Err(Error::RankMismatch {
                expected: self.rs.rank(),
                got: c.rank(),
            });
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct ContextJson {
    series: String,
    rank: usize,
    preset: String,
    positive_system: Vec<Weight>,
    /// Generators as 1-based words in the simple reflections.
    w0_generators: Vec<Vec<usize>>,
    w0_order: usize,
    equal_rank: bool,
    split_rank: usize,
}

impl Serialize for PairContext {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ContextJson {
            series: self.rs.series().to_string(),
            rank: self.rs.rank(),
            preset: self.preset.clone(),
            positive_system: self.ps.roots().to_vec(),
            w0_generators: self
                .w0
                .generator_words()
                .into_iter()
                .map(|w| w.into_iter().map(|i| i + 1).collect())
                .collect(),
            w0_order: self.w0.order(),
            equal_rank: self.equal_rank,
            split_rank: self.split_rank,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PairContext {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = ContextJson::deserialize(d)?;
        let build = || -> Result<PairContext> {
            let (series, _) = parse_type_label(&format!("{}{}", raw.series, raw.rank))?;
            let rs = RootSystem::new(series, raw.rank)?;
            let ps = PositiveSystem::from_roots(&rs, &raw.positive_system)?;
            let words = raw
                .w0_generators
                .iter()
                .map(|w| {
                    w.iter()
                        .map(|&i| {
                            i.checked_sub(1)
                                .ok_or_else(|| Error::Parse("reflection indices are 1-based".into()))
                        })
                        .collect::<Result<Vec<usize>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            let w0 = WeylSubgroup::from_words(&rs, &words)?;
            if w0.order() != raw.w0_order {
                return Err(Error::InvalidSubgroup(format!(
                    "generators give order {}, file says {}",
                    w0.order(),
                    raw.w0_order
                )));
            }
            PairContext::new(rs, ps, w0, raw.equal_rank, raw.split_rank, &raw.preset)
        };
        build().map_err(D::Error::custom)
    }
}

/// An exact rational pairing value, written `p/q`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PairingValue(BigRational);

impl PairingValue {
    pub fn new(v: BigRational) -> Self {
        PairingValue(v)
    }

    pub fn zero() -> Self {
        PairingValue(BigRational::zero())
    }

    pub fn from_integer(n: i64) -> Self {
        PairingValue(BigRational::from_integer(n.into()))
    }

    pub fn ratio(num: BigInt, den: usize) -> Self {
        PairingValue(BigRational::new(num, BigInt::from(den)))
    }

    pub fn value(&self) -> &BigRational {
        &self.0
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// `k · self` is an integer.
    pub fn times_is_integer(&self, k: usize) -> bool {
        (&self.0 * BigRational::from_integer(k.into())).is_integer()
    }
}

impl fmt::Display for PairingValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl FromStr for PairingValue {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("invalid pairing value `{s}`"));
        let (n, d) = s.trim().split_once('/').unwrap_or((s.trim(), "1"));
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        Ok(PairingValue(BigRational::new(n, d)))
    }
}

impl Serialize for PairingValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for PairingValue {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PairingKind {
    Multiplicity,
    Elliptic,
    Homological,
}

impl PairingKind {
    pub const ALL: [PairingKind; 3] = [PairingKind::Multiplicity, PairingKind::Elliptic, PairingKind::Homological];
}

impl fmt::Display for PairingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PairingKind::Multiplicity => "multiplicity",
            PairingKind::Elliptic => "elliptic",
            PairingKind::Homological => "homological",
        })
    }
}

impl FromStr for PairingKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "multiplicity" => Ok(PairingKind::Multiplicity),
            "elliptic" => Ok(PairingKind::Elliptic),
            "homological" => Ok(PairingKind::Homological),
            _ => Err(Error::Parse(format!(
                "unknown pairing kind `{s}` (expected elliptic, homological or multiplicity)"
            ))),
        }
    }
}

/// The zero pairing of an unequal-rank context.
pub fn pairing_unequal_rank(kind: PairingKind) -> PairingValue {
    log::info!("{kind} pairing: unequal-rank context, returning the zero pairing");
    PairingValue::zero()
}

/// `(1/|W|) · CT(D · χ · conj χ')`.
pub fn multiplicity_pairing(chi: &CharElement, chi2: &CharElement, ctx: &PairContext) -> Result<PairingValue> {
    if !ctx.equal_rank {
        return Ok(pairing_unequal_rank(PairingKind::Multiplicity));
    }
    if !ctx.is_compact() {
        return Err(Error::ContextMismatch {
            kind: PairingKind::Multiplicity.to_string(),
            reason: "requires a compact context (equal rank, W0 = W)".into(),
        });
    }
    ctx.check_class(chi)?;
    ctx.check_class(chi2)?;
    if !chi.is_weyl_invariant(&ctx.rs) || !chi2.is_weyl_invariant(&ctx.rs) {
        return Err(Error::NotWeylInvariant);
    }
    let weighted = weyl_denominator_full(&ctx.rs).checked_mul(chi)?;
    Ok(PairingValue::ratio(weighted.torus_pairing(chi2)?, ctx.w0_order()))
}

/// `(1/[W₀]) · Σ_μ Ξ_μ Ξ'_μ`.
pub fn elliptic_pairing(xi: &CharElement, xi2: &CharElement, ctx: &PairContext) -> Result<PairingValue> {
    if !ctx.equal_rank {
        return Ok(pairing_unequal_rank(PairingKind::Elliptic));
    }
    ctx.check_class(xi)?;
    ctx.check_class(xi2)?;
    Ok(PairingValue::ratio(xi.torus_pairing(xi2)?, ctx.w0_order()))
}

fn check_positive_system(h: &GradedHomology, ctx: &PairContext) -> Result<()> {
    if h.rank() != ctx.rs.rank() {
        return Err(Error::RankMismatch {
            expected: ctx.rs.rank(),
            got: h.rank(),
        });
    }
    if h.positive_system() != ctx.ps.roots() {
        return Err(Error::PositiveSystemMismatch);
    }
    Ok(())
}

fn bigraded_sum(h: &GradedHomology, h2: &GradedHomology) -> Result<BigInt> {
    let mut total = BigInt::zero();
    for (p, a) in h.classes().iter().enumerate() {
        for (q, b) in h2.classes().iter().enumerate() {
            let t = a.torus_pairing(b)?;
            if (p + q) % 2 == 0 {
                total += t;
            } else {
                total -= t;
            }
        }
    }
    Ok(total)
}

/// `(1/[W₀]) · Σ_{p,q} (−1)^{p+q} dim Hom_T(H_p, H'_q)`.
pub fn homological_pairing(h: &GradedHomology, h2: &GradedHomology, ctx: &PairContext) -> Result<PairingValue> {
    if !ctx.equal_rank {
        return Ok(pairing_unequal_rank(PairingKind::Homological));
    }
    check_positive_system(h, ctx)?;
    check_positive_system(h2, ctx)?;
    Ok(PairingValue::ratio(bigraded_sum(h, h2)?, ctx.w0_order()))
}

/// The homological pairing evaluated without the unequal-rank shortcut:
/// the Cartan splits as `t ⊕ a`, both classes carry trivial `a`-weights, and
/// every `T`-weight match is weighted by the Euler characteristic of
/// `Ext_a(ℂ, ℂ)`, which vanishes as soon as `a ≠ 0`.
pub fn homological_pairing_split(
    h: &GradedHomology,
    h2: &GradedHomology,
    ctx: &PairContext,
) -> Result<PairingValue> {
    check_positive_system(h, ctx)?;
    check_positive_system(h2, ctx)?;
    let zero = vec![BigRational::zero(); ctx.split_rank];
    let ext = ext_abelian_graded(&zero, ctx.split_rank)?;
    let euler: i64 = ext
        .iter()
        .enumerate()
        .map(|(p, &d)| if p % 2 == 0 { d as i64 } else { -(d as i64) })
        .sum();
    Ok(PairingValue::ratio(bigraded_sum(h, h2)? * euler, ctx.w0_order()))
}

/// `dim H^p(a, ℂ_ν)` for `p = 0 … d`, where `a = ℚ^d` is abelian and acts on
/// `ℂ_ν` through the functional `ν`; computed from the Koszul complex
/// `Λ^p a* ⊗ ℂ_ν` with differential `ω ↦ ν ∧ ω`.
pub fn ext_abelian_graded(nu: &[BigRational], d: usize) -> Result<Vec<u64>> {
    if nu.len() != d {
        return Err(Error::RankMismatch {
            expected: d,
            got: nu.len(),
        });
    }
    if d > 20 {
        return Err(Error::Internal(format!("abelian dimension {d} is beyond desk scale")));
    }
    // integer functional with the same kernel
    let l = nu.iter().fold(BigInt::one(), |acc, q| num_integer::Integer::lcm(&acc, q.denom()));
    let nu_int: Vec<BigInt> = nu.iter().map(|q| (q * BigRational::from_integer(l.clone())).to_integer()).collect();
    let by_degree = |p: usize| -> Vec<u32> { (0..1u32 << d).filter(|m| m.count_ones() as usize == p).collect() };
    // ranks[p] = rank of Λ^p → Λ^{p+1}
    let mut ranks = vec![0usize; d + 2];
    for p in 0..d {
        let src = by_degree(p);
        let tgt = by_degree(p + 1);
        let pos: std::collections::HashMap<u32, usize> = tgt.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        let mut m = SparseIntMatrix::new(src.len(), tgt.len());
        for (r, &mask) in src.iter().enumerate() {
            for (k, c) in nu_int.iter().enumerate() {
                if c.is_zero() || mask & (1 << k) != 0 {
                    continue;
                }
                let sign = if (mask & ((1u32 << k) - 1)).count_ones() % 2 == 0 { 1 } else { -1 };
                m.entries[r].push((pos[&(mask | 1 << k)], c * sign));
            }
        }
        ranks[p + 1] = exact_rank(&m);
    }
    Ok((0..=d)
        .map(|p| {
            let dim = by_degree(p).len();
            (dim - ranks[p] - ranks[p + 1]) as u64
        })
        .collect())
}

/// Σ_p (−1)^p dims[p].
pub fn euler_sum(dims: &[u64]) -> i64 {
    dims.iter()
        .enumerate()
        .map(|(p, &d)| if p % 2 == 0 { d as i64 } else { -(d as i64) })
        .sum()
}

/// `∏_{α∈wR⁺}(1 − e^α) = ε(w) e^{wρ−ρ} ∏_{α∈R⁺}(1 − e^α)`, checked by expansion.
pub fn check_denominator_symmetry(w: &WeylElement, rs: &RootSystem) -> bool {
    let moved: Vec<Weight> = rs.positive_roots().iter().map(|a| w.apply(a)).collect();
    let lhs = product_one_minus(rs.rank(), &moved);
    let shift = w.apply(rs.rho()).sub(rs.rho());
    let rhs = half_denominator(rs).shift(&shift).scale_i64(w.sign());
    lhs == rhs
}

/// `ε(w) · Ξ · e^{wρ−ρ}` for the context's `ρ`.
fn twist(xi: &CharElement, w: &WeylElement, ctx: &PairContext) -> CharElement {
    let rho = ctx.ps.rho();
    xi.shift(&w.apply(rho).sub(rho)).scale_i64(w.sign())
}

/// `w(Ξ) = ε(w) · Ξ · e^{wρ−ρ}`.
pub fn check_antisym_i(xi: &CharElement, w: &WeylElement, ctx: &PairContext) -> bool {
    if xi.rank() != ctx.rs.rank() || w.rank() != ctx.rs.rank() {
        return false;
    }
    if !ctx.w0.contains(w) {
        log::warn!("antisymmetry checked for an element outside W0");
    }
    match xi.weyl_act(w) {
        Ok(lhs) => lhs == twist(xi, w, ctx),
        Err(_) => false,
    }
}

/// Euler class for the positive system `wP` from the one for `P`:
/// `Ξ_{wP} = ε(w) · Ξ_P · e^{wρ_P − ρ_P}`.
pub fn antisym_transport(xi: &CharElement, w: &WeylElement, ctx: &PairContext) -> Result<CharElement> {
    ctx.check_class(xi)?;
    Ok(twist(xi, w, ctx))
}

/// Euler class of the dual module, `(−1)^{|R⁺|} e^{2ρ} conj(Ξ)`.
pub fn dual_class(xi: &CharElement, ctx: &PairContext) -> Result<CharElement> {
    ctx.check_class(xi)?;
    let sign = if ctx.rs.num_positive_roots() % 2 == 0 { 1 } else { -1 };
    Ok(xi.conjugate().shift(&ctx.ps.rho().scale(2)).scale_i64(sign))
}

/// `true` when `|v|` has denominator dividing `k`.
pub fn denominator_divides(v: &PairingValue, k: usize) -> bool {
    let d = v.value().denom().abs();
    (BigInt::from(k) % d).is_zero()
}

/// Convenience for the full Weyl group of a context's root system.
pub fn full_weyl(rs: &RootSystem) -> Result<WeylSubgroup> {
    WeylSubgroup::full(rs, DEFAULT_WEYL_CAP)
}
