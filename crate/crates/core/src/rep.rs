//! Irreducible highest-weight modules realized on an explicit weight basis.
//!
//! The module is grown downward from the highest weight vector. A candidate
//! vector `F_i b` in weight `μ ≠ λ` is identified by its image under all
//! raising operators, which is injective on `V_μ` because an irreducible
//! module has no other singular vectors. The relation
//! `E_j F_i b = F_i E_j b + δ_ij ⟨μ + α_i, α_i^∨⟩ b` lets every image be
//! computed from blocks already built.
//!
//! Root vectors beyond the simple ones are iterated commutators
//! `x_α = [x_{α_i}, x_{α − α_i}]`; [`StructureConstants`] records
//! `[x_α, x_β] = c · x_{α+β}` for this normalization.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lattice::{RootSystem, Weight};
use crate::linalg::{select_basis, QMatrix};

/// Linear map given by blocks `V_μ → V_{μ+shift}` indexed by source weight.
#[derive(Clone, Debug)]
pub struct WeightOperator {
    pub shift: Weight,
    pub blocks: HashMap<usize, QMatrix>,
}

impl WeightOperator {
    fn commutator(a: &WeightOperator, b: &WeightOperator, module: &HighestWeightModule) -> WeightOperator {
        let shift = a.shift.add(&b.shift);
        let mut blocks = HashMap::new();
        for src in 0..module.weights.len() {
            let mu = &module.weights[src];
            let Some(tgt) = module.index_of(&mu.add(&shift)) else {
                continue;
            };
            let mut m = QMatrix::zeros(module.dims[tgt], module.dims[src]);
            // a·b
            if let (Some(bb), Some(mid)) = (b.blocks.get(&src), module.index_of(&mu.add(&b.shift))) {
                if let Some(ab) = a.blocks.get(&mid) {
                    m = m.sub(&ab.mul(bb).scale(&-BigRational::one()));
                }
            }
            // − b·a
            if let (Some(ba), Some(mid)) = (a.blocks.get(&src), module.index_of(&mu.add(&a.shift))) {
                if let Some(bm) = b.blocks.get(&mid) {
                    m = m.sub(&bm.mul(ba));
                }
            }
            if !m.is_zero() {
                blocks.insert(src, m);
            }
        }
        WeightOperator { shift, blocks }
    }

    /// `Some(c)` with `self = c · other` blockwise.
    fn ratio(&self, other: &WeightOperator) -> Option<BigRational> {
        let mut factor: Option<BigRational> = None;
        let keys: std::collections::BTreeSet<usize> =
            self.blocks.keys().chain(other.blocks.keys()).copied().collect();
        for k in keys {
            let c = match (self.blocks.get(&k), other.blocks.get(&k)) {
                (Some(a), Some(b)) => a.proportionality(b)?,
                (None, Some(_)) => BigRational::zero(),
                (Some(_), None) => return None,
                (None, None) => continue,
            };
            match &factor {
                None => factor = Some(c),
                Some(f) if *f == c => {}
                Some(_) => return None,
            }
        }
        Some(factor.unwrap_or_else(BigRational::zero))
    }
}

/// `V_λ` with its weight spaces and the action of every root vector.
#[derive(Clone, Debug)]
pub struct HighestWeightModule {
    highest: Weight,
    weights: Vec<Weight>,
    dims: Vec<usize>,
    index: HashMap<Weight, usize>,
    /// Root vectors in the order of `RootSystem::full_roots`.
    root_ops: Vec<WeightOperator>,
}

impl HighestWeightModule {
    /// Builds `V_λ`, refusing modules above `dim_cap`.
    pub fn new(rs: &RootSystem, lambda: &Weight, dim_cap: u128) -> Result<Self> {
        rs.check_rank(lambda)?;
        if !lambda.is_dominant() {
            return Err(Error::NotDominant(lambda.to_string()));
        }
        let dim = rs.weyl_dimension(lambda);
        let dim_u: u128 = (&dim).try_into().unwrap_or(u128::MAX);
        if dim_u > dim_cap {
            return Err(Error::ModuleTooLarge { dim: dim_u, cap: dim_cap });
        }
        let n = rs.rank();
        let simple: Vec<Weight> = rs.simple_roots();
        let mut weights = vec![lambda.clone()];
        let mut dims = vec![1usize];
        let mut index: HashMap<Weight, usize> = HashMap::from([(lambda.clone(), 0)]);
        // e[i][src]: V_src → V_{src+α_i};  f[i][src]: V_src → V_{src−α_i}
        let mut e: Vec<HashMap<usize, QMatrix>> = vec![HashMap::new(); n];
        let mut f: Vec<HashMap<usize, QMatrix>> = vec![HashMap::new(); n];

        let mut layer: Vec<usize> = vec![0];
        while !layer.is_empty() {
            let mut next: Vec<Weight> = Vec::new();
            for &src in &layer {
                for a in &simple {
                    let mu = weights[src].sub(a);
                    if !next.contains(&mu) {
                        next.push(mu);
                    }
                }
            }
            next.sort();
            let mut new_layer = Vec::new();
            for mu in next {
                // candidates F_i b for b in the basis of V_{μ+α_i}
                let mut cands: Vec<(usize, usize, usize)> = Vec::new(); // (i, above, b)
                for (i, a) in simple.iter().enumerate() {
                    if let Some(&above) = index.get(&mu.add(a)) {
                        for b in 0..dims[above] {
                            cands.push((i, above, b));
                        }
                    }
                }
                // raising targets μ+α_j
                let targets: Vec<Option<usize>> =
                    simple.iter().map(|a| index.get(&mu.add(a)).copied()).collect();
                let offsets: Vec<usize> = targets
                    .iter()
                    .scan(0usize, |acc, t| {
                        let o = *acc;
                        *acc += t.map_or(0, |t| dims[t]);
                        Some(o)
                    })
                    .collect();
                let sig_len: usize = targets.iter().map(|t| t.map_or(0, |t| dims[t])).sum();
                let mut sigs: Vec<Vec<BigRational>> = Vec::with_capacity(cands.len());
                for &(i, above, b) in &cands {
                    let mut sig = vec![BigRational::zero(); sig_len];
                    for (j, t) in targets.iter().enumerate() {
                        let Some(t) = *t else { continue };
                        // F_i E_j e_b, with E_j e_b ∈ V_{μ+α_i+α_j}
                        if let Some(ej) = e[j].get(&above) {
                            let top = index[&mu.add(&simple[i]).add(&simple[j])];
                            let fi = f[i].get(&top);
                            if let Some(fi) = fi {
                                for r in 0..dims[t] {
                                    let mut acc = BigRational::zero();
                                    for k in 0..dims[top] {
                                        let x = ej.get(k, b);
                                        if !x.is_zero() {
                                            acc += fi.get(r, k) * x;
                                        }
                                    }
                                    sig[offsets[j] + r] += acc;
                                }
                            }
                        }
                        if i == j {
                            let h = weights[above].coords()[i];
                            sig[offsets[j] + b] += BigRational::from_integer(h.into());
                        }
                    }
                    sigs.push(sig);
                }
                let (basis, coords) = select_basis(&sigs);
                if basis.is_empty() {
                    continue;
                }
                let d = basis.len();
                let idx = weights.len();
                weights.push(mu.clone());
                dims.push(d);
                index.insert(mu.clone(), idx);
                for (i, a) in simple.iter().enumerate() {
                    if let Some(&above) = index.get(&mu.add(a)) {
                        let mut m = QMatrix::zeros(d, dims[above]);
                        for (k, &(ci, cab, b)) in cands.iter().enumerate() {
                            if ci == i && cab == above {
                                for (r, v) in coords[k].iter().enumerate() {
                                    m.set(r, b, v.clone());
                                }
                            }
                        }
                        f[i].insert(above, m);
                    }
                }
                for (j, t) in targets.iter().enumerate() {
                    let Some(t) = *t else { continue };
                    let mut m = QMatrix::zeros(dims[t], d);
                    for (col, &k) in basis.iter().enumerate() {
                        for r in 0..dims[t] {
                            m.set(r, col, sigs[k][offsets[j] + r].clone());
                        }
                    }
                    e[j].insert(idx, m);
                }
                new_layer.push(idx);
            }
            layer = new_layer;
        }

        let total: usize = dims.iter().sum();
        if BigRational::from_integer(total.into()) != BigRational::from_integer(dim.clone()) {
            return Err(Error::Internal(format!(
                "constructed module has dimension {total}, expected {dim}"
            )));
        }

        let mut module = HighestWeightModule {
            highest: lambda.clone(),
            weights,
            dims,
            index,
            root_ops: Vec::new(),
        };
        let mut ops: Vec<Option<WeightOperator>> = vec![None; rs.full_roots().len()];
        let npos = rs.num_positive_roots();
        for i in 0..n {
            ops[i] = Some(WeightOperator {
                shift: simple[i].clone(),
                blocks: std::mem::take(&mut e[i]),
            });
            ops[npos + i] = Some(WeightOperator {
                shift: simple[i].neg(),
                blocks: std::mem::take(&mut f[i]),
            });
        }
        for k in 0..npos {
            if ops[k].is_some() {
                continue;
            }
            let (i, rest) = root_decomposition(rs, k);
            let pos = WeightOperator::commutator(
                ops[i].as_ref().expect("simple"),
                ops[rest].as_ref().expect("lower height first"),
                &module,
            );
            let neg = WeightOperator::commutator(
                ops[npos + i].as_ref().expect("simple"),
                ops[npos + rest].as_ref().expect("lower height first"),
                &module,
            );
            ops[k] = Some(pos);
            ops[npos + k] = Some(neg);
        }
        module.root_ops = ops.into_iter().map(|o| o.expect("all roots built")).collect();
        Ok(module)
    }

    pub fn highest_weight(&self) -> &Weight {
        &self.highest
    }

    pub fn dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn weights(&self) -> &[Weight] {
        &self.weights
    }

    pub fn weight_dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn index_of(&self, mu: &Weight) -> Option<usize> {
        self.index.get(mu).copied()
    }

    pub fn multiplicity(&self, mu: &Weight) -> usize {
        self.index_of(mu).map_or(0, |i| self.dims[i])
    }

    /// Action of the root vector for `full_roots()[k]`.
    pub fn root_operator(&self, k: usize) -> &WeightOperator {
        &self.root_ops[k]
    }

    /// Block of root vector `k` on the weight space with index `src`.
    pub fn root_block(&self, k: usize, src: usize) -> Option<&QMatrix> {
        self.root_ops[k].blocks.get(&src)
    }
}

/// For a non-simple positive root with index `k`, the smallest simple index
/// `i` with `α_k − α_i` a positive root, and that root's index.
fn root_decomposition(rs: &RootSystem, k: usize) -> (usize, usize) {
    let alpha = &rs.positive_roots()[k];
    for i in 0..rs.rank() {
        let rest = alpha.sub(&rs.simple_root(i));
        if let Some(j) = rs.root_index(&rest) {
            if j < rs.num_positive_roots() {
                return (i, j);
            }
        }
    }
    unreachable!("every non-simple positive root has a simple predecessor")
}

/// Bracket table for the normalized root vectors.
#[derive(Clone, Debug)]
pub struct StructureConstants {
    /// `table[a][b]`: `Some((c, k))` when `[x_a, x_b] = c · x_k`.
    table: Vec<Vec<Option<(BigRational, usize)>>>,
}

impl StructureConstants {
    /// Computed in the adjoint module, which is faithful.
    pub fn compute(rs: &RootSystem) -> Result<Self> {
        let theta = rs
            .positive_roots()
            .iter()
            .find(|r| r.is_dominant() && rs.positive_roots().iter().all(|s| rs.root_index(&r.add(s)).is_none()))
            .cloned()
            .ok_or_else(|| Error::Internal("no highest root".into()))?;
        let adj = HighestWeightModule::new(rs, &theta, u128::MAX)?;
        let roots = rs.full_roots();
        let m = roots.len();
        let mut table = vec![vec![None; m]; m];
        for a in 0..m {
            for b in 0..m {
                let sum = roots[a].add(&roots[b]);
                let Some(k) = rs.root_index(&sum) else { continue };
                let br = WeightOperator::commutator(&adj.root_ops[a], &adj.root_ops[b], &adj);
                let c = br.ratio(&adj.root_ops[k]).ok_or_else(|| {
                    Error::Internal(format!("bracket of roots {a},{b} is not a root vector"))
                })?;
                table[a][b] = Some((c, k));
            }
        }
        Ok(StructureConstants { table })
    }

    /// Cached per root system label.
    pub fn cached(rs: &RootSystem) -> Result<Arc<Self>> {
        static CACHE: OnceLock<Mutex<HashMap<String, Arc<StructureConstants>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(sc) = cache.lock().expect("cache lock").get(&rs.label()) {
            return Ok(sc.clone());
        }
        let sc = Arc::new(StructureConstants::compute(rs)?);
        cache.lock().expect("cache lock").insert(rs.label(), sc.clone());
        Ok(sc)
    }

    pub fn bracket(&self, a: usize, b: usize) -> Option<(&BigRational, usize)> {
        self.table[a][b].as_ref().map(|(c, k)| (c, *k))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Series;

    fn w(v: &[i64]) -> Weight {
        Weight::new(v.to_vec())
    }

    #[test]
    fn dimensions_match_weyl() {
        for (s, r, lam) in [
            (Series::A, 1, vec![3]),
            (Series::A, 2, vec![1, 1]),
            (Series::A, 2, vec![2, 1]),
            (Series::B, 2, vec![1, 1]),
            (Series::C, 2, vec![0, 2]),
            (Series::G, 2, vec![1, 0]),
            (Series::G, 2, vec![0, 1]),
            (Series::A, 3, vec![1, 0, 1]),
        ] {
            let rs = RootSystem::new(s, r).unwrap();
            let m = HighestWeightModule::new(&rs, &w(&lam), 10_000).unwrap();
            assert_eq!(BigRational::from_integer(m.dim().into()), BigRational::from_integer(rs.weyl_dimension(&w(&lam))));
        }
    }

    #[test]
    fn cap_is_enforced() {
        let rs = RootSystem::new(Series::G, 2).unwrap();
        let err = HighestWeightModule::new(&rs, &w(&[3, 3]), 2000).unwrap_err();
        assert!(matches!(err, Error::ModuleTooLarge { .. }));
    }

    #[test]
    fn sl3_adjoint_multiplicity() {
        let rs = RootSystem::new(Series::A, 2).unwrap();
        let m = HighestWeightModule::new(&rs, &w(&[1, 1]), 100).unwrap();
        assert_eq!(m.multiplicity(&w(&[0, 0])), 2);
        assert_eq!(m.multiplicity(&w(&[2, -1])), 1);
    }

    // [E_i, F_j] = δ_ij h_i on every weight space
    #[test]
    fn serre_commutators() {
        for (s, r, lam) in [(Series::B, 2, vec![1, 1]), (Series::G, 2, vec![1, 0]), (Series::A, 3, vec![0, 1, 1])] {
            let rs = RootSystem::new(s, r).unwrap();
            let m = HighestWeightModule::new(&rs, &w(&lam), 10_000).unwrap();
            let npos = rs.num_positive_roots();
            for i in 0..r {
                for j in 0..r {
                    let c = WeightOperator::commutator(m.root_operator(i), m.root_operator(npos + j), &m);
                    for (src, blk) in &c.blocks {
                        assert_eq!(i, j);
                        let h = m.weights()[*src].coords()[i];
                        let expect = QMatrix::identity(m.weight_dims()[*src])
                            .scale(&BigRational::from_integer(h.into()));
                        assert_eq!(blk, &expect);
                    }
                }
            }
        }
    }

    #[test]
    fn brackets_close_on_roots() {
        for (s, r) in [(Series::A, 2), (Series::B, 2), (Series::G, 2), (Series::C, 3)] {
            let rs = RootSystem::new(s, r).unwrap();
            let sc = StructureConstants::compute(&rs).unwrap();
            let roots = rs.full_roots();
            for a in 0..roots.len() {
                for b in 0..roots.len() {
                    let sum = roots[a].add(&roots[b]);
                    match sc.bracket(a, b) {
                        Some((c, k)) => {
                            assert!(!c.is_zero());
                            assert_eq!(roots[k], sum);
                        }
                        None => assert!(rs.root_index(&sum).is_none()),
                    }
                }
            }
        }
    }

    // brackets computed in the adjoint module also hold in other modules
    #[test]
    fn brackets_hold_in_other_modules() {
        let rs = RootSystem::new(Series::G, 2).unwrap();
        let sc = StructureConstants::compute(&rs).unwrap();
        let m = HighestWeightModule::new(&rs, &w(&[1, 0]), 100).unwrap();
        let roots = rs.full_roots();
        for a in 0..roots.len() {
            for b in 0..roots.len() {
                if let Some((c, k)) = sc.bracket(a, b) {
                    let br = WeightOperator::commutator(m.root_operator(a), m.root_operator(b), &m);
                    assert_eq!(br.ratio(m.root_operator(k)), Some(c.clone()));
                }
            }
        }
    }
}
