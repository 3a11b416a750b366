//! Catalogs of Grothendieck-group classes: compact irreducibles, standard
//! modules from orbit data, their duals, and the rank-one presets.

use std::fmt;

use num_bigint::BigInt;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::character::{product_one_minus, CharElement};
use crate::error::{Error, Result};
use crate::kostant::{koszul_n_homology, kostant_homology, GradedHomology, DEFAULT_DIM_CAP, DEFAULT_KOSZUL_RANK_CAP};
use crate::lattice::{RootSystem, Weight};
use crate::pairing::{
    dual_class, elliptic_pairing, homological_pairing, multiplicity_pairing, PairContext, PairingKind, PairingValue,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    CompactIrreducible,
    StandardClosed,
    StandardOpen,
    DualOf,
    External,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).expect("unit variant");
        f.write_str(s.as_str().expect("string"))
    }
}

/// Orbit data: whether the orbit is closed, the fiber weight `V`, and `s`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeometricDatum {
    pub closed: bool,
    pub v_weight: Weight,
    pub s: u32,
}

/// A class in the Grothendieck group. The context lives on the [`Catalog`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VirtualModule {
    pub label: String,
    pub provenance: Provenance,
    pub euler: CharElement,
    pub homology: Option<GradedHomology>,
}

impl VirtualModule {
    /// A class given only by its Euler class. The homology is the parity
    /// representative: positive terms in degree 0, negative ones in degree 1.
    pub fn from_euler(label: &str, provenance: Provenance, euler: CharElement, ctx: &PairContext) -> Self {
        let rank = euler.rank();
        let mut even = CharElement::zero(rank);
        let mut odd = CharElement::zero(rank);
        for (mu, c) in euler.terms() {
            if c.sign() == num_bigint::Sign::Minus {
                odd.add_term(mu.clone(), -c);
            } else {
                even.add_term(mu.clone(), c.clone());
            }
        }
        let homology = GradedHomology::new(rank, vec![even, odd], ctx.positive_system().roots().to_vec())
            .expect("two degrees fit any positive system");
        VirtualModule {
            label: label.to_string(),
            provenance,
            euler,
            homology: Some(homology),
        }
    }

    /// Σ k_i · M_i; homology kept only when every summand has it.
    pub fn combination(label: &str, terms: &[(i64, &VirtualModule)], rank: usize) -> Result<Self> {
        let mut euler = CharElement::zero(rank);
        let mut homology: Option<GradedHomology> = None;
        let mut all_have = true;
        for (k, m) in terms {
            euler = euler.checked_add(&m.euler.scale_i64(*k))?;
            match (&m.homology, all_have) {
                (Some(h), true) => {
                    let scaled = h.scale(&BigInt::from(*k));
                    homology = Some(match homology {
                        None => scaled,
                        Some(acc) => acc.checked_add(&scaled)?,
                    });
                }
                _ => all_have = false,
            }
        }
        Ok(VirtualModule {
            label: label.to_string(),
            provenance: Provenance::External,
            euler,
            homology: if all_have { homology } else { None },
        })
    }

    pub fn pairing(&self, other: &VirtualModule, kind: PairingKind, ctx: &PairContext) -> Result<PairingValue> {
        if !ctx.equal_rank() {
            return Ok(crate::pairing::pairing_unequal_rank(kind));
        }
        match kind {
            PairingKind::Elliptic => elliptic_pairing(&self.euler, &other.euler, ctx),
            PairingKind::Homological => {
                let missing = |m: &VirtualModule| Error::ContextMismatch {
                    kind: kind.to_string(),
                    reason: format!("class `{}` carries no homology", m.label),
                };
                let a = self.homology.as_ref().ok_or_else(|| missing(self))?;
                let b = other.homology.as_ref().ok_or_else(|| missing(other))?;
                homological_pairing(a, b, ctx)
            }
            PairingKind::Multiplicity => {
                if !ctx.is_compact() {
                    return Err(Error::ContextMismatch {
                        kind: kind.to_string(),
                        reason: "requires a compact context (equal rank, W0 = W)".into(),
                    });
                }
                let den = product_one_minus(ctx.rs().rank(), ctx.positive_system().roots());
                let chi = |m: &VirtualModule| {
                    m.euler.exact_div(&den).map_err(|_| Error::NotWeylInvariant)
                };
                multiplicity_pairing(&chi(self)?, &chi(other)?, ctx)
            }
        }
    }
}

/// Where compact homology comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HomologySource {
    /// Koszul complex; fails above the caps.
    Koszul,
    /// Kostant's per-degree formula.
    Kostant,
    /// Koszul within the caps, Kostant beyond them.
    Auto { dim_cap: u128, rank_cap: usize },
}

impl Default for HomologySource {
    fn default() -> Self {
        HomologySource::Auto {
            dim_cap: DEFAULT_DIM_CAP,
            rank_cap: DEFAULT_KOSZUL_RANK_CAP,
        }
    }
}

pub fn weight_label(prefix: &str, w: &Weight) -> String {
    format!("{prefix}{w}")
}

/// `V_λ` of the compact group, with homology for the context's positive
/// system.
pub fn compact_irreducible(lambda: &Weight, ctx: &PairContext, source: HomologySource) -> Result<VirtualModule> {
    if !ctx.is_compact() {
        return Err(Error::ContextMismatch {
            kind: "compact_irreducible".into(),
            reason: "requires a compact context (equal rank, W0 = W)".into(),
        });
    }
    let rs = ctx.rs();
    rs.check_rank(lambda)?;
    if !lambda.is_dominant() {
        return Err(Error::NotDominant(lambda.to_string()));
    }
    let ps = ctx.positive_system();
    let homology = match source {
        HomologySource::Koszul => koszul_n_homology(lambda, ps, rs, u128::MAX)?,
        HomologySource::Kostant => kostant_homology(lambda, ps, rs, ctx.w0())?,
        HomologySource::Auto { dim_cap, rank_cap } => {
            let dim = rs.weyl_dimension(lambda);
            if rs.rank() <= rank_cap && dim <= BigInt::from(dim_cap) {
                koszul_n_homology(lambda, ps, rs, dim_cap)?
            } else {
                log::debug!("{lambda}: dimension {dim} beyond Koszul caps, using Kostant's formula");
                kostant_homology(lambda, ps, rs, ctx.w0())?
            }
        }
    };
    Ok(VirtualModule {
        label: weight_label("V", lambda),
        provenance: Provenance::CompactIrreducible,
        euler: homology.euler_class(),
        homology: Some(homology),
    })
}

fn check_datum(datum: &GeometricDatum, ctx: &PairContext) -> Result<()> {
    ctx.rs().check_rank(&datum.v_weight)
}

/// Closed orbit: `(−1)^{s+|R⁺|} Σ_{w∈W₀} ε(w) e^{wV + ρ − wρ}`; otherwise 0.
pub fn standard_module_class(datum: &GeometricDatum, ctx: &PairContext) -> Result<VirtualModule> {
    check_datum(datum, ctx)?;
    let rank = ctx.rs().rank();
    if !datum.closed {
        return Ok(VirtualModule::from_euler(
            &weight_label("std-open", &datum.v_weight),
            Provenance::StandardOpen,
            CharElement::zero(rank),
            ctx,
        ));
    }
    let rho = ctx.positive_system().rho();
    let sign: i64 = if (datum.s as usize + ctx.rs().num_positive_roots()) % 2 == 0 { 1 } else { -1 };
    let mut xi = CharElement::zero(rank);
    for w in ctx.w0().elements() {
        let mu = w.apply(&datum.v_weight).add(rho).sub(&w.apply(rho));
        xi.add_term(mu, BigInt::from(sign * w.sign()));
    }
    Ok(VirtualModule::from_euler(
        &weight_label("std", &datum.v_weight),
        Provenance::StandardClosed,
        xi,
        ctx,
    ))
}

/// Dual of a closed-orbit standard class:
/// `(−1)^s Σ_{w∈W₀} ε(w) e^{−wV + ρ + wρ}`.
pub fn dual_standard_class(datum: &GeometricDatum, ctx: &PairContext) -> Result<VirtualModule> {
    check_datum(datum, ctx)?;
    let rank = ctx.rs().rank();
    let label = weight_label("dual-std", &datum.v_weight);
    if !datum.closed {
        log::warn!("dual of a non-closed orbit class: the class is zero");
        return Ok(VirtualModule::from_euler(&label, Provenance::DualOf, CharElement::zero(rank), ctx));
    }
    let rho = ctx.positive_system().rho();
    let sign: i64 = if datum.s % 2 == 0 { 1 } else { -1 };
    let mut xi = CharElement::zero(rank);
    for w in ctx.w0().elements() {
        let mu = w.apply(&datum.v_weight).neg().add(rho).add(&w.apply(rho));
        xi.add_term(mu, BigInt::from(sign * w.sign()));
    }
    Ok(VirtualModule::from_euler(&label, Provenance::DualOf, xi, ctx))
}

/// Dual of any class through [`dual_class`].
pub fn dual_module(m: &VirtualModule, ctx: &PairContext) -> Result<VirtualModule> {
    let xi = dual_class(&m.euler, ctx)?;
    Ok(VirtualModule::from_euler(
        &format!("dual({})", m.label),
        Provenance::DualOf,
        xi,
        ctx,
    ))
}

/// A catalog: one context, many classes.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Catalog {
    pub context: PairContext,
    pub modules: Vec<VirtualModule>,
}

impl Catalog {
    /// Compact irreducibles `V_λ` for all dominant `λ` with coordinates ≤ `bound`.
    pub fn compact(rs: RootSystem, bound: i64, weyl_cap: u128, source: HomologySource) -> Result<Self> {
        let ctx = PairContext::compact(rs, weyl_cap)?;
        let modules = dominant_box(ctx.rs().rank(), bound)
            .iter()
            .map(|l| compact_irreducible(l, &ctx, source))
            .collect::<Result<Vec<_>>>()?;
        Ok(Catalog { context: ctx, modules })
    }

    /// `SL(2,ℝ)`: closed-orbit classes `−e^μ` for `μ ∈ weights` and the open
    /// orbit's zero class.
    pub fn sl2(weights: impl IntoIterator<Item = i64>) -> Result<Self> {
        let ctx = PairContext::sl2();
        let mut modules = Vec::new();
        for mu in weights {
            let datum = GeometricDatum {
                closed: true,
                v_weight: Weight::new(vec![mu]),
                s: 0,
            };
            let mut m = standard_module_class(&datum, &ctx)?;
            m.label = format!("DS{mu:+}");
            modules.push(m);
        }
        let open = GeometricDatum {
            closed: false,
            v_weight: Weight::new(vec![0]),
            s: 0,
        };
        let mut m = standard_module_class(&open, &ctx)?;
        m.label = "PS".into();
        modules.push(m);
        Ok(Catalog { context: ctx, modules })
    }

    /// A single unequal-rank stub class.
    pub fn unequal_rank(labels: &[&str]) -> Self {
        let context = PairContext::unequal_rank_stub();
        let modules = labels.iter().map(|l| unequal_rank_stub(l)).collect();
        Catalog { context, modules }
    }

    pub fn len(&self) -> usize {
        self.modules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modules.is_empty()
    }

    /// Row `i`, column `j`: `⟨M_i | M_j⟩`.
    pub fn pairing_matrix(&self, kind: PairingKind) -> Result<Vec<Vec<PairingValue>>> {
        self.modules
            .iter()
            .map(|a| self.modules.iter().map(|b| a.pairing(b, kind, &self.context)).collect())
            .collect()
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let cat: Catalog = serde_json::from_str(s)?;
        for m in &cat.modules {
            if m.euler.rank() != cat.context.rs().rank() {
                return Err(Error::RankMismatch {
                    expected: cat.context.rs().rank(),
                    got: m.euler.rank(),
                });
            }
            if let Some(h) = &m.homology {
                if h.euler_class() != m.euler {
                    return Err(Error::Parse(format!("class `{}`: euler does not match homology", m.label)));
                }
            }
        }
        Ok(cat)
    }
}

/// Stub class in the unequal-rank context: `Ξ = e^0`, `H_0 = e^0`.
pub fn unequal_rank_stub(label: &str) -> VirtualModule {
    let ctx = PairContext::unequal_rank_stub();
    VirtualModule::from_euler(label, Provenance::External, CharElement::one(1), &ctx)
}

/// Dominant weights with all coordinates in `0..=bound`, in lexicographic order.
pub fn dominant_box(rank: usize, bound: i64) -> Vec<Weight> {
    let mut out = Vec::new();
    let mut cur = vec![0i64; rank];
    loop {
        out.push(Weight::new(cur.clone()));
        let Some(i) = (0..rank).rev().find(|&i| cur[i] < bound) else {
            break;
        };
        cur[i] += 1;
        cur[i + 1..].iter_mut().for_each(|c| *c = 0);
    }
    out
}

/// Σ k_i M_i with `k_i` uniform in `[−3, 3]`.
pub fn random_combination<R: Rng>(rng: &mut R, basis: &[VirtualModule], label: &str) -> Result<VirtualModule> {
    let rank = basis
        .first()
        .map(|m| m.euler.rank())
        .ok_or_else(|| Error::Parse("empty basis".into()))?;
    let coeffs: Vec<i64> = basis.iter().map(|_| rng.gen_range(-3..=3)).collect();
    let mut terms: Vec<(i64, &VirtualModule)> = coeffs.into_iter().zip(basis).filter(|(k, _)| *k != 0).collect();
    if terms.is_empty() {
        // keep a zero term so the homology stays attached
        terms.push((0, &basis[0]));
    }
    VirtualModule::combination(label, &terms, rank)
}

/// Random closed-orbit datum with `|V| ≤ bound`.
pub fn random_closed_datum<R: Rng>(rng: &mut R, rank: usize, bound: i64, s: u32) -> GeometricDatum {
    GeometricDatum {
        closed: true,
        v_weight: Weight::new((0..rank).map(|_| rng.gen_range(-bound..=bound)).collect()),
        s,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::character::half_denominator;
    use crate::kostant::weyl_character;
    use crate::lattice::Series;
    use crate::weyl::DEFAULT_WEYL_CAP;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn w(v: &[i64]) -> Weight {
        Weight::new(v.to_vec())
    }

    fn e(v: &[i64]) -> CharElement {
        CharElement::monomial(w(v))
    }

    fn compact(s: Series, r: usize) -> PairContext {
        PairContext::compact(RootSystem::new(s, r).unwrap(), DEFAULT_WEYL_CAP).unwrap()
    }

    #[test]
    fn compact_examples() {
        let ctx = compact(Series::A, 1);
        let m = compact_irreducible(&w(&[0]), &ctx, HomologySource::Koszul).unwrap();
        assert_eq!(m.euler, &e(&[0]) - &e(&[2]));
        let m = compact_irreducible(&w(&[1]), &ctx, HomologySource::Koszul).unwrap();
        assert_eq!(m.euler, &e(&[-1]) - &e(&[3]));
        let a2 = compact(Series::A, 2);
        let m = compact_irreducible(&w(&[1, 0]), &a2, HomologySource::default()).unwrap();
        assert_eq!(m.euler.len(), 6);
        let chi = weyl_character(&w(&[1, 0]), a2.rs(), a2.w0()).unwrap();
        assert_eq!(m.euler, &half_denominator(a2.rs()) * &chi);
        assert!(compact_irreducible(&w(&[1]), &PairContext::sl2(), HomologySource::Koszul).is_err());
        assert!(compact_irreducible(&w(&[-1, 0]), &a2, HomologySource::Koszul).is_err());
    }

    #[test]
    fn sl2_preset() {
        let cat = Catalog::sl2(-2..=2).unwrap();
        assert_eq!(cat.modules[0].euler, -&e(&[-2]));
        let ell = cat.pairing_matrix(PairingKind::Elliptic).unwrap();
        let hom = cat.pairing_matrix(PairingKind::Homological).unwrap();
        for i in 0..cat.len() {
            for j in 0..cat.len() {
                let closed = cat.modules[i].provenance == Provenance::StandardClosed;
                let expect = PairingValue::from_integer(i64::from(i == j && closed));
                assert_eq!(ell[i][j], expect);
                assert_eq!(hom[i][j], expect);
            }
        }
        assert!(cat.pairing_matrix(PairingKind::Multiplicity).is_err());
    }

    #[test]
    fn compact_standard_matches_irreducible() {
        // s = |R⁺| and V = w₀λ
        let ctx = compact(Series::B, 2);
        let n = ctx.rs().num_positive_roots() as u32;
        for lam in dominant_box(2, 2) {
            let v = ctx.rs().dominant_conjugate(&lam.neg()).neg();
            let datum = GeometricDatum { closed: true, v_weight: v, s: n };
            let std = standard_module_class(&datum, &ctx).unwrap();
            let irr = compact_irreducible(&lam, &ctx, HomologySource::Kostant).unwrap();
            assert_eq!(std.euler, irr.euler);
        }
    }

    #[test]
    fn dual_standard_agrees() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for ctx in [PairContext::sl2(), compact(Series::A, 2), compact(Series::G, 2)] {
            for _ in 0..10 {
                let s = rng.gen_range(0..4);
                let d = random_closed_datum(&mut rng, ctx.rs().rank(), 4, s);
                let std = standard_module_class(&d, &ctx).unwrap();
                let dual = dual_standard_class(&d, &ctx).unwrap();
                assert_eq!(dual_class(&std.euler, &ctx).unwrap(), dual.euler);
                assert_eq!(dual_class(&dual.euler, &ctx).unwrap(), std.euler);
            }
        }
    }

    #[test]
    fn stubs_pair_to_zero() {
        let cat = Catalog::unequal_rank(&["X", "Y"]);
        for kind in [PairingKind::Elliptic, PairingKind::Homological] {
            assert!(cat.pairing_matrix(kind).unwrap().iter().flatten().all(PairingValue::is_zero));
        }
        let back = Catalog::from_json(&cat.to_json().unwrap()).unwrap();
        assert!(back.pairing_matrix(PairingKind::Elliptic).unwrap().iter().flatten().all(PairingValue::is_zero));
    }

    #[test]
    fn catalog_round_trip() {
        let cat = Catalog::compact(RootSystem::new(Series::A, 1).unwrap(), 2, DEFAULT_WEYL_CAP, HomologySource::Koszul).unwrap();
        let s = cat.to_json().unwrap();
        let back = Catalog::from_json(&s).unwrap();
        assert_eq!(back.modules, cat.modules);
        assert_eq!(back.to_json().unwrap(), s);
        for kind in PairingKind::ALL {
            let m = back.pairing_matrix(kind).unwrap();
            for (i, row) in m.iter().enumerate() {
                for (j, v) in row.iter().enumerate() {
                    assert_eq!(*v, PairingValue::from_integer(i64::from(i == j)));
                }
            }
        }
    }

    #[test]
    fn combinations_are_bilinear() {
        let ctx = compact(Series::A, 2);
        let basis: Vec<VirtualModule> = dominant_box(2, 1)
            .iter()
            .map(|l| compact_irreducible(l, &ctx, HomologySource::Kostant).unwrap())
            .collect();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let x = random_combination(&mut rng, &basis, "x").unwrap();
        let y = random_combination(&mut rng, &basis, "y").unwrap();
        assert_eq!(
            x.pairing(&y, PairingKind::Elliptic, &ctx).unwrap(),
            x.pairing(&y, PairingKind::Homological, &ctx).unwrap()
        );
        assert_eq!(x.homology.as_ref().unwrap().euler_class(), x.euler);
    }

    #[test]
    fn box_order() {
        assert_eq!(dominant_box(2, 1), vec![w(&[0, 0]), w(&[0, 1]), w(&[1, 0]), w(&[1, 1])]);
        assert_eq!(dominant_box(1, 3).len(), 4);
    }
}
