//! Batch verification suites and their reports.

use std::fmt;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::character::{half_denominator, weyl_denominator_full};
use crate::error::{Error, Result};
use crate::kostant::{
    euler_class_closed_form, freudenthal_character, koszul_n_homology, weyl_character, PositiveSystem,
    DEFAULT_DIM_CAP, DEFAULT_KOSZUL_RANK_CAP,
};
use crate::lattice::{parse_type_label, RootSystem, Series, Weight, DEFAULT_RANK_CAP};
use crate::pairing::{
    antisym_transport, check_antisym_i, check_denominator_symmetry, dual_class, elliptic_pairing, euler_sum,
    ext_abelian_graded, homological_pairing, homological_pairing_split, multiplicity_pairing, PairContext,
    PairingKind, PairingValue,
};
use crate::weyl::{WeylSubgroup, DEFAULT_WEYL_CAP};
use crate::zoo::{
    compact_irreducible, dominant_box, dual_standard_class, random_closed_datum, random_combination,
    standard_module_class, Catalog, HomologySource, Provenance, VirtualModule,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    /// Compact irreducibles: all three pairings give `δ_{λμ}`.
    Schur,
    /// Random integer combinations: elliptic and homological paths agree.
    Kazhdan,
    /// Koszul Euler class against the character and the closed form.
    Osborne,
    /// `w(D) = D` for the full denominator.
    WeylDenom,
    /// Antisymmetry of Euler classes and transport between positive systems.
    Antisym,
    /// Cohomology of an abelian Lie algebra with a character.
    Lavan,
    /// Standard and dual standard classes.
    Standard,
    /// Unequal-rank contexts pair to zero.
    Unequal,
    /// Independent character and Weyl-group cross-checks.
    Oracle,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Schur,
        Suite::Kazhdan,
        Suite::Osborne,
        Suite::WeylDenom,
        Suite::Antisym,
        Suite::Lavan,
        Suite::Standard,
        Suite::Unequal,
        Suite::Oracle,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Schur => "schur",
            Suite::Kazhdan => "kazhdan",
            Suite::Osborne => "osborne",
            Suite::WeylDenom => "weyldenom",
            Suite::Antisym => "antisym",
            Suite::Lavan => "lavan",
            Suite::Standard => "standard",
            Suite::Unequal => "unequal",
            Suite::Oracle => "oracle",
        }
    }

    fn default_types(&self) -> Vec<(Series, usize)> {
        use Series::*;
        match self {
            Suite::Schur | Suite::Oracle => vec![(A, 1), (A, 2), (B, 2), (G, 2)],
            Suite::Kazhdan => vec![(A, 1), (A, 2), (B, 2), (G, 2), (A, 3), (B, 3), (C, 3)],
            Suite::Osborne | Suite::Antisym => vec![(A, 1), (A, 2), (B, 2), (C, 2), (G, 2)],
            Suite::WeylDenom => vec![(A, 1), (A, 2), (A, 3), (B, 2), (B, 3), (C, 2), (C, 3), (G, 2)],
            Suite::Standard => vec![(A, 1), (A, 2), (B, 2), (G, 2)],
            Suite::Lavan | Suite::Unequal => Vec::new(),
        }
    }

    fn default_bound(&self) -> i64 {
        match self {
            Suite::Schur | Suite::Oracle => 3,
            _ => 2,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .iter()
            .find(|x| x.name() == s.trim().to_ascii_lowercase())
            .copied()
            .ok_or_else(|| {
                let names: Vec<&str> = Suite::ALL.iter().map(Suite::name).collect();
                Error::Parse(format!("unknown suite `{s}` (expected one of: {}, all)", names.join(", ")))
            })
    }
}

/// Which subgroup plays `W₀` in contexts built by the suites.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum W0Spec {
    Full,
    Trivial,
    /// Generators as 0-based words.
    Generators(Vec<Vec<usize>>),
}

impl W0Spec {
    pub fn build(&self, rs: &RootSystem, weyl_cap: u128) -> Result<WeylSubgroup> {
        match self {
            W0Spec::Full => WeylSubgroup::full(rs, weyl_cap),
            W0Spec::Trivial => Ok(WeylSubgroup::trivial(rs.rank())),
            W0Spec::Generators(words) => WeylSubgroup::from_words(rs, words),
        }
    }
}

impl FromStr for W0Spec {
    type Err = Error;

    /// `full`, `trivial`, or `;`-separated 1-based words such as `1,2;2`.
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "full" => Ok(W0Spec::Full),
            "trivial" => Ok(W0Spec::Trivial),
            other => other
                .split(';')
                .map(|word| {
                    word.split(',')
                        .filter(|t| !t.trim().is_empty())
                        .map(|t| {
                            t.trim()
                                .parse::<usize>()
                                .ok()
                                .and_then(|i| i.checked_sub(1))
                                .ok_or_else(|| Error::Parse(format!("invalid W0 generator `{word}` (1-based indices)")))
                        })
                        .collect::<Result<Vec<usize>>>()
                })
                .collect::<Result<Vec<_>>>()
                .map(W0Spec::Generators),
        }
    }
}

impl fmt::Display for W0Spec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            W0Spec::Full => f.write_str("full"),
            W0Spec::Trivial => f.write_str("trivial"),
            W0Spec::Generators(words) => {
                let ws: Vec<String> = words
                    .iter()
                    .map(|w| w.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(","))
                    .collect();
                f.write_str(&ws.join(";"))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    /// Overrides each suite's default types when non-empty.
    pub types: Vec<(Series, usize)>,
    /// Overrides each suite's default weight bound.
    pub bound: Option<i64>,
    pub w0: W0Spec,
    pub suites: Vec<Suite>,
    pub seed: u64,
    pub weyl_cap: u128,
    pub dim_cap: u128,
    pub koszul_rank_cap: usize,
    /// Above this dimension the pairing suites take homology from Kostant's
    /// formula instead of the Koszul complex.
    pub koszul_pairing_dim: u128,
    /// Random pairs per type in the fuzz suite.
    pub fuzz: usize,
    /// Closed-orbit data in the standard-module suite.
    pub standard_samples: usize,
    /// Abelian dimensions for the Ext suite.
    pub dims: (usize, usize),
    pub out: Option<PathBuf>,
    pub timing: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            types: Vec::new(),
            bound: None,
            w0: W0Spec::Full,
            suites: Suite::ALL.to_vec(),
            seed: 0,
            weyl_cap: DEFAULT_WEYL_CAP,
            dim_cap: DEFAULT_DIM_CAP,
            koszul_rank_cap: DEFAULT_KOSZUL_RANK_CAP,
            koszul_pairing_dim: 300,
            fuzz: 1000,
            standard_samples: 50,
            dims: (1, 6),
            out: None,
            timing: false,
        }
    }
}

fn parse_num<T: FromStr>(key: &str, v: &str) -> Result<T> {
    v.trim()
        .replace('_', "")
        .parse()
        .map_err(|_| Error::Parse(format!("invalid value `{v}` for `{key}`")))
}

pub fn parse_types(v: &str) -> Result<Vec<(Series, usize)>> {
    v.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            let (s, r) = parse_type_label(t.trim())?;
            RootSystem::with_rank_cap(s, r, DEFAULT_RANK_CAP)?;
            Ok((s, r))
        })
        .collect()
}

pub fn parse_suites(v: &str) -> Result<Vec<Suite>> {
    if v.trim() == "all" {
        return Ok(Suite::ALL.to_vec());
    }
    v.split(',').filter(|t| !t.trim().is_empty()).map(str::parse).collect()
}

/// `a..b` or `a..=b` (inclusive either way) or a single number.
pub fn parse_dims(v: &str) -> Result<(usize, usize)> {
    let v = v.trim();
    match v.split_once("..") {
        Some((a, b)) => {
            let lo = parse_num("dims", a)?;
            let hi = parse_num("dims", b.trim_start_matches('='))?;
            if lo > hi {
                return Err(Error::Parse(format!("empty range `{v}`")));
            }
            Ok((lo, hi))
        }
        None => {
            let d = parse_num("dims", v)?;
            Ok((d, d))
        }
    }
}

impl RunConfig {
    /// Applies one `key = value` setting.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let value = value.trim();
        match key.trim() {
            "type" | "types" => self.types = parse_types(value)?,
            "bound" => self.bound = Some(parse_num(key, value)?),
            "w0" => self.w0 = value.parse()?,
            "suite" | "suites" => self.suites = parse_suites(value)?,
            "seed" => self.seed = parse_num(key, value)?,
            "cap_weyl" | "cap-weyl" => self.weyl_cap = parse_num(key, value)?,
            "cap_dim" | "cap-dim" => self.dim_cap = parse_num(key, value)?,
            "cap_rank" | "cap-rank" => self.koszul_rank_cap = parse_num(key, value)?,
            "koszul_pairing_dim" => self.koszul_pairing_dim = parse_num(key, value)?,
            "fuzz" => self.fuzz = parse_num(key, value)?,
            "standard_samples" => self.standard_samples = parse_num(key, value)?,
            "dims" => self.dims = parse_dims(value)?,
            "out" => self.out = Some(PathBuf::from(value)),
            "timing" => self.timing = parse_num(key, value)?,
            other => return Err(Error::Parse(format!("unknown config key `{other}`"))),
        }
        Ok(())
    }

    /// Parses `key = value` lines; `#` starts a comment.
    pub fn from_key_values(text: &str) -> Result<Self> {
        let mut cfg = RunConfig::default();
        cfg.merge_key_values(text)?;
        Ok(cfg)
    }

    pub fn merge_key_values(&mut self, text: &str) -> Result<()> {
        for (n, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("line {}: expected `key = value`", n + 1)))?;
            self.set(k, v).map_err(|e| Error::Parse(format!("line {}: {e}", n + 1)))?;
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        if self.weyl_cap == 0 || self.dim_cap == 0 || self.koszul_rank_cap == 0 {
            return Err(Error::Parse("caps must be positive".into()));
        }
        if matches!(self.bound, Some(b) if b < 0) {
            return Err(Error::Parse("bound must be nonnegative".into()));
        }
        for &(s, r) in &self.types {
            RootSystem::with_rank_cap(s, r, DEFAULT_RANK_CAP)?;
        }
        Ok(())
    }

    fn types_for(&self, suite: Suite) -> Vec<(Series, usize)> {
        if self.types.is_empty() {
            suite.default_types()
        } else {
            self.types.clone()
        }
    }

    fn bound_for(&self, suite: Suite) -> i64 {
        self.bound.unwrap_or_else(|| suite.default_bound())
    }

    fn pairing_source(&self) -> HomologySource {
        HomologySource::Auto {
            dim_cap: self.koszul_pairing_dim.min(self.dim_cap),
            rank_cap: self.koszul_rank_cap,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseResult {
    pub name: String,
    pub inputs: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

impl CaseResult {
    fn new(name: impl Into<String>, inputs: impl Into<String>, expected: impl fmt::Display, actual: impl fmt::Display, pass: bool) -> Self {
        CaseResult {
            name: name.into(),
            inputs: inputs.into(),
            expected: expected.to_string(),
            actual: actual.to_string(),
            pass,
        }
    }

    fn check<T: PartialEq + fmt::Display>(name: impl Into<String>, inputs: impl Into<String>, expected: T, actual: T) -> Self {
        let pass = expected == actual;
        Self::new(name, inputs, expected, actual, pass)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

impl Summary {
    fn of(cases: &[CaseResult]) -> Self {
        let passed = cases.iter().filter(|c| c.pass).count();
        Summary {
            total: cases.len(),
            passed,
            failed: cases.len() - passed,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub seed: u64,
    /// `ran`, or `skipped: cap` with the reason in `note`.
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
    pub cases: Vec<CaseResult>,
    pub summary: Summary,
    /// Wall time; omitted unless requested so reports stay reproducible.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub timing_ms: Option<u64>,
}

impl VerificationReport {
    pub fn skipped(&self) -> bool {
        self.status != "ran"
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunReport {
    pub seed: u64,
    pub reports: Vec<VerificationReport>,
    pub summary: Summary,
}

impl RunReport {
    pub fn passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }

    /// Aligned text: one line per suite, then failing cases.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let width = self.reports.iter().map(|r| r.suite.len()).max().unwrap_or(5).max(5);
        let _ = writeln!(out, "{:<width$}  {:>6}  {:>6}  {:>6}  status", "suite", "total", "passed", "failed");
        for r in &self.reports {
            let _ = writeln!(
                out,
                "{:<width$}  {:>6}  {:>6}  {:>6}  {}",
                r.suite, r.summary.total, r.summary.passed, r.summary.failed, r.status
            );
        }
        let _ = writeln!(
            out,
            "{:<width$}  {:>6}  {:>6}  {:>6}",
            "all", self.summary.total, self.summary.passed, self.summary.failed
        );
        for r in &self.reports {
            for c in r.cases.iter().filter(|c| !c.pass) {
                let _ = writeln!(out, "FAIL {}: {} [{}] expected {} got {}", r.suite, c.name, c.inputs, c.expected, c.actual);
            }
        }
        out
    }
}

fn is_cap(e: &Error) -> bool {
    matches!(e, Error::GroupTooLarge { .. } | Error::ModuleTooLarge { .. })
}

/// Runs the configured suites in parallel and assembles the report in
/// configuration order.
pub fn run(cfg: &RunConfig) -> Result<RunReport> {
    cfg.validate()?;
    let mut suites = cfg.suites.clone();
    suites.dedup();
    let reports: Vec<VerificationReport> = suites.par_iter().map(|&s| run_suite(s, cfg)).collect();
    let mut summary = Summary::default();
    for r in &reports {
        summary.total += r.summary.total;
        summary.passed += r.summary.passed;
        summary.failed += r.summary.failed;
    }
    Ok(RunReport {
        seed: cfg.seed,
        reports,
        summary,
    })
}

fn suite_seed(cfg: &RunConfig, suite: Suite) -> u64 {
    cfg.seed
        .wrapping_mul(0x9E37_79B9_7F4A_7C15)
        .wrapping_add(Suite::ALL.iter().position(|&s| s == suite).unwrap_or(0) as u64)
}

pub fn run_suite(suite: Suite, cfg: &RunConfig) -> VerificationReport {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(suite_seed(cfg, suite));
    let result = match suite {
        Suite::Schur => suite_schur(cfg),
        Suite::Kazhdan => suite_kazhdan(cfg, &mut rng),
        Suite::Osborne => suite_osborne(cfg),
        Suite::WeylDenom => suite_weyldenom(cfg),
        Suite::Antisym => suite_antisym(cfg),
        Suite::Lavan => suite_lavan(cfg, &mut rng),
        Suite::Standard => suite_standard(cfg, &mut rng),
        Suite::Unequal => suite_unequal(),
        Suite::Oracle => suite_oracle(cfg),
    };
    let (status, note, cases) = match result {
        Ok(cases) => ("ran".to_string(), None, cases),
        Err(e) if is_cap(&e) => ("skipped: cap".to_string(), Some(e.to_string()), Vec::new()),
        Err(e) => (
            "ran".to_string(),
            None,
            vec![CaseResult::new("error", suite.name(), "no error", e.to_string(), false)],
        ),
    };
    let summary = Summary::of(&cases);
    VerificationReport {
        suite: suite.name().to_string(),
        seed: cfg.seed,
        status,
        note,
        cases,
        summary,
        timing_ms: cfg.timing.then(|| start.elapsed().as_millis() as u64),
    }
}

fn root_system(cfg: &RunConfig, (s, r): (Series, usize)) -> Result<RootSystem> {
    let rs = RootSystem::with_rank_cap(s, r, DEFAULT_RANK_CAP)?;
    let order = rs.classical_weyl_order();
    if order > cfg.weyl_cap {
        return Err(Error::GroupTooLarge {
            predicted: order,
            cap: cfg.weyl_cap,
        });
    }
    Ok(rs)
}

fn compact_ctx(cfg: &RunConfig, t: (Series, usize)) -> Result<PairContext> {
    PairContext::compact(root_system(cfg, t)?, cfg.weyl_cap)
}

fn koszul_allowed(cfg: &RunConfig, rs: &RootSystem) -> Result<()> {
    if rs.rank() > cfg.koszul_rank_cap {
        return Err(Error::ModuleTooLarge {
            dim: rs.rank() as u128,
            cap: cfg.koszul_rank_cap as u128,
        });
    }
    Ok(())
}

/// `[W₀]·v ∈ ℤ`, and `v ∈ ℤ` for genuine classes.
fn integrality_case(label: &str, v: &PairingValue, w0: usize, genuine: bool) -> CaseResult {
    let ok = v.times_is_integer(w0) && (!genuine || v.is_integer());
    CaseResult::new(
        format!("integrality {label}"),
        format!("[W0]={w0}"),
        if genuine { "integer" } else { "[W0]*value integer" },
        v,
        ok,
    )
}

fn suite_schur(cfg: &RunConfig) -> Result<Vec<CaseResult>> {
    let mut cases = Vec::new();
    for t in cfg.types_for(Suite::Schur) {
        let ctx = compact_ctx(cfg, t)?;
        let label = ctx.rs().label();
        let lams = dominant_box(ctx.rs().rank(), cfg.bound_for(Suite::Schur));
        let mods: Vec<(VirtualModule, crate::CharElement)> = lams
            .par_iter()
            .map(|l| -> Result<_> {
                let m = compact_irreducible(l, &ctx, cfg.pairing_source())?;
                let chi = weyl_character(l, ctx.rs(), ctx.w0())?;
                Ok((m, chi))
            })
            .collect::<Result<Vec<_>>>()?;
        let rows: Vec<Vec<CaseResult>> = (0..mods.len())
            .into_par_iter()
            .map(|i| -> Result<Vec<CaseResult>> {
                let mut out = Vec::new();
                for j in 0..mods.len() {
                    let (a, ca) = &mods[i];
                    let (b, cb) = &mods[j];
                    let m = multiplicity_pairing(ca, cb, &ctx)?;
                    let e = a.pairing(b, PairingKind::Elliptic, &ctx)?;
                    let h = a.pairing(b, PairingKind::Homological, &ctx)?;
                    let delta = PairingValue::from_integer(i64::from(i == j));
                    let pass = m == delta && e == delta && h == delta;
                    let name = format!("{label} {} x {}", a.label, b.label);
                    out.push(CaseResult::new(
                        name.clone(),
                        "multiplicity, elliptic, homological",
                        format!("{delta} {delta} {delta}"),
                        format!("{m} {e} {h}"),
                        pass,
                    ));
                    out.push(integrality_case(&name, &e, ctx.w0_order(), true));
                }
                Ok(out)
            })
            .collect::<Result<Vec<_>>>()?;
        cases.extend(rows.into_iter().flatten());
    }
    Ok(cases)
}

fn fuzz_bound(rank: usize) -> i64 {
    if rank <= 2 {
        2
    } else {
        1
    }
}

fn suite_kazhdan(cfg: &RunConfig, rng: &mut ChaCha8Rng) -> Result<Vec<CaseResult>> {
    let mut cases = Vec::new();
    for t in cfg.types_for(Suite::Kazhdan) {
        if t.1 > 3 && cfg.types.is_empty() {
            continue;
        }
        let ctx = compact_ctx(cfg, t)?;
        let label = ctx.rs().label();
        let bound = cfg.bound.unwrap_or_else(|| fuzz_bound(ctx.rs().rank()));
        let basis = dominant_box(ctx.rs().rank(), bound)
            .par_iter()
            .map(|l| compact_irreducible(l, &ctx, cfg.pairing_source()))
            .collect::<Result<Vec<_>>>()?;
        // draw sequentially for reproducibility, evaluate in parallel
        let pairs: Vec<(VirtualModule, VirtualModule)> = (0..cfg.fuzz)
            .map(|k| -> Result<_> {
                let x = random_combination(rng, &basis, &format!("x{k}"))?;
                let y = random_combination(rng, &basis, &format!("y{k}"))?;
                Ok((x, y))
            })
            .collect::<Result<Vec<_>>>()?;
        let checked = pairs
            .par_iter()
            .map(|(x, y)| -> Result<Vec<CaseResult>> {
                let e = x.pairing(y, PairingKind::Elliptic, &ctx)?;
                let h = x.pairing(y, PairingKind::Homological, &ctx)?;
                let name = format!("{label} {} x {}", x.label, y.label);
                Ok(vec![
                    CaseResult::check(name.clone(), "elliptic vs homological", e.clone(), h),
                    integrality_case(&name, &e, ctx.w0_order(), true),
                ])
            })
            .collect::<Result<Vec<_>>>()?;
        cases.extend(checked.into_iter().flatten());
    }
    Ok(cases)
}

fn suite_osborne(cfg: &RunConfig) -> Result<Vec<CaseResult>> {
    let mut cases = Vec::new();
    for t in cfg.types_for(Suite::Osborne) {
        let ctx = compact_ctx(cfg, t)?;
        koszul_allowed(cfg, ctx.rs())?;
        let rs = ctx.rs();
        let ps = PositiveSystem::standard(rs);
        let rows = dominant_box(rs.rank(), cfg.bound_for(Suite::Osborne))
            .par_iter()
            .map(|l| -> Result<CaseResult> {
                let koszul = koszul_n_homology(l, &ps, rs, cfg.dim_cap)?.euler_class();
                let product = &half_denominator(rs) * &weyl_character(l, rs, ctx.w0())?;
                let closed = euler_class_closed_form(l, rs, ctx.w0())?;
                let pass = koszul == product && product == closed;
                Ok(CaseResult::new(
                    format!("{} {l}", rs.label()),
                    "koszul = denominator*character = closed form",
                    "equal",
                    if pass { "equal".to_string() } else { format!("{koszul} | {product} | {closed}") },
                    pass,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        cases.extend(rows);
    }
    Ok(cases)
}

fn suite_weyldenom(cfg: &RunConfig) -> Result<Vec<CaseResult>> {
    let mut cases = Vec::new();
    for t in cfg.types_for(Suite::WeylDenom) {
        let rs = root_system(cfg, t)?;
        let group = WeylSubgroup::full(&rs, cfg.weyl_cap)?;
        let rows: Vec<CaseResult> = group
            .elements()
            .par_iter()
            .map(|w| {
                let ok = check_denominator_symmetry(w, &rs);
                CaseResult::new(
                    format!("{} w={:?}", rs.label(), w.word().iter().map(|i| i + 1).collect::<Vec<_>>()),
                    "denominator symmetry",
                    true,
                    ok,
                    ok,
                )
            })
            .collect();
        cases.extend(rows);
    }
    Ok(cases)
}

fn suite_antisym(cfg: &RunConfig) -> Result<Vec<CaseResult>> {
    let mut cases = Vec::new();
    for t in cfg.types_for(Suite::Antisym) {
        let rs = root_system(cfg, t)?;
        koszul_allowed(cfg, &rs)?;
        let full = WeylSubgroup::full(&rs, cfg.weyl_cap)?;
        let w0 = cfg.w0.build(&rs, cfg.weyl_cap)?;
        let ctx = PairContext::new(rs.clone(), PositiveSystem::standard(&rs), w0, true, 0, "antisym")?;
        let lams = dominant_box(rs.rank(), cfg.bound_for(Suite::Antisym));
        let xis = lams
            .par_iter()
            .map(|l| Ok((l.clone(), koszul_n_homology(l, ctx.positive_system(), &rs, cfg.dim_cap)?.euler_class())))
            .collect::<Result<Vec<_>>>()?;
        for (l, xi) in &xis {
            for w in ctx.w0().elements() {
                let ok = check_antisym_i(xi, w, &ctx);
                cases.push(CaseResult::new(
                    format!("(i) {} {l} w={:?}", rs.label(), w.word().iter().map(|i| i + 1).collect::<Vec<_>>()),
                    "w(Xi) = e(w) Xi e^(w rho - rho)",
                    true,
                    ok,
                    ok,
                ));
            }
        }
        let jobs: Vec<(&(Weight, crate::CharElement), &crate::WeylElement)> =
            xis.iter().flat_map(|x| full.elements().iter().map(move |w| (x, w))).collect();
        let rows = jobs
            .par_iter()
            .map(|((l, xi), w)| -> Result<CaseResult> {
                let transported = antisym_transport(xi, w, &ctx)?;
                let ps = PositiveSystem::from_weyl(&rs, w);
                let direct = koszul_n_homology(l, &ps, &rs, cfg.dim_cap)?.euler_class();
                Ok(CaseResult::new(
                    format!("(ii) {} {l} w={:?}", rs.label(), w.word().iter().map(|i| i + 1).collect::<Vec<_>>()),
                    "transport vs Koszul over n_w",
                    "equal",
                    if transported == direct { "equal".to_string() } else { format!("{transported} vs {direct}") },
                    transported == direct,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        cases.extend(rows);
    }
    Ok(cases)
}

fn binomial(n: usize, k: usize) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

fn suite_lavan(cfg: &RunConfig, rng: &mut ChaCha8Rng) -> Result<Vec<CaseResult>> {
    let mut cases = Vec::new();
    for d in cfg.dims.0..=cfg.dims.1 {
        let zero = vec![BigRational::zero(); d];
        let dims = ext_abelian_graded(&zero, d)?;
        let binom: Vec<u64> = (0..=d).map(|p| binomial(d, p)).collect();
        cases.push(CaseResult::check(format!("d={d} nu=0 dims"), "graded dimensions", format!("{binom:?}"), format!("{dims:?}")));
        let expected_euler = i64::from(d == 0);
        cases.push(CaseResult::check(format!("d={d} nu=0 euler"), "alternating sum", expected_euler, euler_sum(&dims)));
        if d == 0 {
            continue;
        }
        let mut nu: Vec<BigRational> = (0..d)
            .map(|_| BigRational::new(rng.gen_range(-3i64..=3).into(), rng.gen_range(1i64..=4).into()))
            .collect();
        if nu.iter().all(Zero::is_zero) {
            nu[0] = BigRational::one();
        }
        let dims = ext_abelian_graded(&nu, d)?;
        let zeros = vec![0u64; d + 1];
        let shown: Vec<String> = nu.iter().map(ToString::to_string).collect();
        cases.push(CaseResult::check(
            format!("d={d} nu!=0 dims"),
            format!("nu=({})", shown.join(",")),
            format!("{zeros:?}"),
            format!("{dims:?}"),
        ));
        cases.push(CaseResult::check(format!("d={d} nu!=0 euler"), "alternating sum", 0, euler_sum(&dims)));
    }
    Ok(cases)
}

fn suite_standard(cfg: &RunConfig, rng: &mut ChaCha8Rng) -> Result<Vec<CaseResult>> {
    let mut cases = Vec::new();
    let cat = Catalog::sl2(-3..=3)?;
    let ell = cat.pairing_matrix(PairingKind::Elliptic)?;
    let hom = cat.pairing_matrix(PairingKind::Homological)?;
    for (i, a) in cat.modules.iter().enumerate() {
        for (j, b) in cat.modules.iter().enumerate() {
            let closed = a.provenance == Provenance::StandardClosed && b.provenance == Provenance::StandardClosed;
            let expect = PairingValue::from_integer(i64::from(i == j && closed));
            let name = format!("SL2 {} x {}", a.label, b.label);
            cases.push(CaseResult::new(
                name.clone(),
                "elliptic, homological",
                format!("{expect} {expect}"),
                format!("{} {}", ell[i][j], hom[i][j]),
                ell[i][j] == expect && hom[i][j] == expect,
            ));
            cases.push(integrality_case(&name, &ell[i][j], cat.context.w0_order(), true));
        }
    }
    let mut contexts = vec![PairContext::sl2()];
    for t in cfg.types_for(Suite::Standard) {
        let rs = root_system(cfg, t)?;
        if rs.rank() > 2 && cfg.types.is_empty() {
            continue;
        }
        let w0 = cfg.w0.build(&rs, cfg.weyl_cap)?;
        contexts.push(PairContext::new(rs.clone(), PositiveSystem::standard(&rs), w0, true, 0, "standard")?);
    }
    for k in 0..cfg.standard_samples {
        let ctx = &contexts[rng.gen_range(0..contexts.len())];
        let n = ctx.rs().num_positive_roots() as u32;
        let s = rng.gen_range(0..=n);
        let datum = random_closed_datum(rng, ctx.rs().rank(), 4, s);
        let std = standard_module_class(&datum, ctx)?;
        let dual = dual_standard_class(&datum, ctx)?;
        let via = dual_class(&std.euler, ctx)?;
        let inputs = format!("{} V={} s={}", ctx.rs().label(), datum.v_weight, datum.s);
        cases.push(CaseResult::new(format!("dual #{k}"), inputs.clone(), "equal", if via == dual.euler { "equal" } else { "differ" }, via == dual.euler));
        let back = dual_class(&dual.euler, ctx)?;
        cases.push(CaseResult::new(format!("double dual #{k}"), inputs.clone(), "equal", if back == std.euler { "equal" } else { "differ" }, back == std.euler));
        let anti = ctx.w0().elements().iter().all(|w| check_antisym_i(&std.euler, w, ctx));
        cases.push(CaseResult::new(format!("antisym #{k}"), inputs.clone(), true, anti, anti));
        let open = standard_module_class(&crate::zoo::GeometricDatum { closed: false, ..datum }, ctx)?;
        for kind in [PairingKind::Elliptic, PairingKind::Homological] {
            let v = open.pairing(&std, kind, ctx)?;
            cases.push(CaseResult::check(format!("open x closed #{k} {kind}"), inputs.clone(), PairingValue::zero(), v));
        }
        let e = std.pairing(&dual, PairingKind::Elliptic, ctx)?;
        let h = std.pairing(&dual, PairingKind::Homological, ctx)?;
        cases.push(CaseResult::check(format!("paths #{k}"), inputs.clone(), e.clone(), h));
        cases.push(integrality_case(&format!("#{k}"), &e, ctx.w0_order(), false));
    }
    Ok(cases)
}

fn suite_unequal() -> Result<Vec<CaseResult>> {
    let cat = Catalog::unequal_rank(&["stub-a", "stub-b"]);
    let ctx = &cat.context;
    let round = Catalog::from_json(&cat.to_json()?)?;
    let mut cases = Vec::new();
    for c in [&cat, &round] {
        for kind in [PairingKind::Elliptic, PairingKind::Homological] {
            for (i, row) in c.pairing_matrix(kind)?.iter().enumerate() {
                for (j, v) in row.iter().enumerate() {
                    cases.push(CaseResult::check(
                        format!("shortcut {kind} {} x {}", c.modules[i].label, c.modules[j].label),
                        if std::ptr::eq(c, &cat) { "built" } else { "reloaded" },
                        PairingValue::zero(),
                        v.clone(),
                    ));
                }
            }
        }
    }
    for a in &cat.modules {
        for b in &cat.modules {
            let ha = a.homology.as_ref().expect("stubs carry homology");
            let hb = b.homology.as_ref().expect("stubs carry homology");
            let v = homological_pairing_split(ha, hb, ctx)?;
            cases.push(CaseResult::check(
                format!("split {} x {}", a.label, b.label),
                format!("dim a = {}", ctx.split_rank()),
                PairingValue::zero(),
                v,
            ));
            let direct = elliptic_pairing(&a.euler, &b.euler, ctx)?;
            cases.push(CaseResult::check(format!("elliptic {} x {}", a.label, b.label), "", PairingValue::zero(), direct));
        }
    }
    let zero = vec![BigRational::zero(); ctx.split_rank()];
    let ext = ext_abelian_graded(&zero, ctx.split_rank())?;
    cases.push(CaseResult::check("abelian Ext euler", format!("d={}", ctx.split_rank()), 0, euler_sum(&ext)));
    // the same classes in an equal-rank context do pair nontrivially
    let eq = PairContext::sl2();
    let h = cat.modules[0].homology.as_ref().expect("stub homology");
    cases.push(CaseResult::check(
        "control: equal-rank pairing of the stub classes",
        "A1, trivial W0",
        PairingValue::from_integer(1),
        homological_pairing(h, h, &eq)?,
    ));
    Ok(cases)
}

fn suite_oracle(cfg: &RunConfig) -> Result<Vec<CaseResult>> {
    let mut cases = Vec::new();
    for t in cfg.types_for(Suite::Oracle) {
        let rs = root_system(cfg, t)?;
        let group = WeylSubgroup::full(&rs, cfg.weyl_cap)?;
        let rows = dominant_box(rs.rank(), cfg.bound_for(Suite::Oracle))
            .par_iter()
            .map(|l| -> Result<CaseResult> {
                let f = freudenthal_character(l, &rs)?;
                let w = weyl_character(l, &rs, &group)?;
                Ok(CaseResult::new(
                    format!("{} {l}", rs.label()),
                    "weyl vs freudenthal",
                    format!("dim {}", rs.weyl_dimension(l)),
                    if f == w { format!("dim {}", f.degree()) } else { "characters differ".to_string() },
                    f == w && f.degree() == rs.weyl_dimension(l),
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        cases.extend(rows);
    }
    for t in Suite::WeylDenom.default_types() {
        let rs = root_system(cfg, t)?;
        let group = WeylSubgroup::full(&rs, cfg.weyl_cap)?;
        let order = group.order() as u128;
        cases.push(CaseResult::check(format!("{} |W|", rs.label()), "classical order", rs.classical_weyl_order(), order));
        cases.push(CaseResult::check(
            format!("{} CT(D)", rs.label()),
            "torus integral of the full denominator",
            BigInt::from(order),
            weyl_denominator_full(&rs).torus_integral(),
        ));
    }
    Ok(cases)
}
