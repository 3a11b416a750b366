//! The character ring of the compact torus: finitely supported integer
//! combinations `Σ c_μ e^μ` of lattice characters.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::lattice::{RootSystem, Weight};
use crate::weyl::WeylElement;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CharElement {
    rank: usize,
    terms: BTreeMap<Weight, BigInt>,
}

impl CharElement {
    pub fn zero(rank: usize) -> Self {
        CharElement {
            rank,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(rank: usize) -> Self {
        CharElement::monomial(Weight::zero(rank))
    }

    /// `e^μ`.
    pub fn monomial(mu: Weight) -> Self {
        CharElement::term(mu, BigInt::one())
    }

    pub fn term(mu: Weight, c: BigInt) -> Self {
        let mut out = CharElement::zero(mu.rank());
        out.add_term(mu, c);
        out
    }

    /// Builds from `(weight, coefficient)` pairs, merging repeats.
    pub fn from_terms<I, C>(rank: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Weight, C)>,
        C: Into<BigInt>,
    {
        let mut out = CharElement::zero(rank);
        for (w, c) in terms {
            w.check_rank(rank)?;
            out.add_term(w, c.into());
        }
        Ok(out)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in lexicographic weight order.
    pub fn terms(&self) -> impl Iterator<Item = (&Weight, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, mu: &Weight) -> BigInt {
        self.terms.get(mu).cloned().unwrap_or_default()
    }

    pub fn support(&self) -> impl Iterator<Item = &Weight> {
        self.terms.keys()
    }

    /// Sum of coefficients (the dimension of a genuine character).
    pub fn degree(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn add_term(&mut self, mu: Weight, c: BigInt) {
        debug_assert_eq!(mu.rank(), self.rank);
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(mu) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_same_rank(&self, other: &CharElement) -> Result<()> {
        if self.rank == other.rank {
            Ok(())
        } else {
            Err(Error::RankMismatch {
                expected: self.rank,
                got: other.rank,
            })
        }
    }

    pub fn checked_add(&self, other: &CharElement) -> Result<CharElement> {
        self.check_same_rank(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &CharElement) -> Result<CharElement> {
        self.check_same_rank(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), -c);
        }
        Ok(out)
    }

    /// Convolution product `e^μ · e^ν = e^{μ+ν}`.
    pub fn checked_mul(&self, other: &CharElement) -> Result<CharElement> {
        self.check_same_rank(other)?;
        let mut out = CharElement::zero(self.rank);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term(a.add(b), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, k: &BigInt) -> CharElement {
        if k.is_zero() {
            return CharElement::zero(self.rank);
        }
        CharElement {
            rank: self.rank,
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c * k)).collect(),
        }
    }

    pub fn scale_i64(&self, k: i64) -> CharElement {
        self.scale(&BigInt::from(k))
    }

    /// Multiplication by `e^μ`.
    pub fn shift(&self, mu: &Weight) -> CharElement {
        debug_assert_eq!(mu.rank(), self.rank);
        CharElement {
            rank: self.rank,
            terms: self.terms.iter().map(|(w, c)| (w.add(mu), c.clone())).collect(),
        }
    }

    /// `e^μ ↦ e^{−μ}`: complex conjugation of a torus character.
    pub fn conjugate(&self) -> CharElement {
        CharElement {
            rank: self.rank,
            terms: self.terms.iter().map(|(w, c)| (w.neg(), c.clone())).collect(),
        }
    }

    /// `e^μ ↦ e^{wμ}`.
    pub fn weyl_act(&self, w: &WeylElement) -> Result<CharElement> {
        if w.rank() != self.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                got: w.rank(),
            });
        }
        Ok(CharElement {
            rank: self.rank,
            terms: self.terms.iter().map(|(m, c)| (w.apply(m), c.clone())).collect(),
        })
    }

    /// Coefficient of `e^0`: the integral against normalized Haar measure.
    pub fn torus_integral(&self) -> BigInt {
        self.coefficient(&Weight::zero(self.rank))
    }

    /// `∫ A · conj(B)`, computed as `Σ_μ a_μ b_μ` without forming the product.
    pub fn torus_pairing(&self, other: &CharElement) -> Result<BigInt> {
        self.check_same_rank(other)?;
        let (small, large) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        Ok(small
            .terms
            .iter()
            .filter_map(|(w, c)| large.terms.get(w).map(|d| c * d))
            .sum())
    }

    pub fn is_weyl_invariant(&self, rs: &RootSystem) -> bool {
        (0..rs.rank()).all(|i| {
            self.terms
                .iter()
                .all(|(w, c)| self.terms.get(&rs.reflect_simple(i, w)) == Some(c))
        })
    }

    /// Exact quotient `self / divisor`; fails unless the division is exact.
    ///
    /// Uses a group order on the lattice (a generic linear functional with
    /// lexicographic tie-break), so leading terms multiply.
    pub fn exact_div(&self, divisor: &CharElement) -> Result<CharElement> {
        self.check_same_rank(divisor)?;
        if divisor.is_zero() {
            return Err(Error::InexactDivision);
        }
        let key = |w: &Weight| -> (i128, Weight) {
            // weights 1, 1000, 10^6, … keep ties rare; lex breaks the rest
            let f = w
                .coords()
                .iter()
                .enumerate()
                .map(|(i, &c)| c as i128 * 1000i128.pow(i as u32))
                .sum::<i128>();
            (f, w.clone())
        };
        let (lead_w, lead_c) = divisor
            .terms
            .iter()
            .max_by(|a, b| key(a.0).cmp(&key(b.0)))
            .map(|(w, c)| (w.clone(), c.clone()))
            .expect("non-zero");
        let low = |x: &CharElement| x.terms.keys().min_by(|a, b| key(a).cmp(&key(b))).cloned();
        // every quotient monomial lies above this bound
        let floor = match low(self) {
            Some(ls) => key(&ls.sub(&low(divisor).expect("non-zero"))),
            None => return Ok(CharElement::zero(self.rank)),
        };
        let mut rem = self.clone();
        let mut quot = CharElement::zero(self.rank);
        while let Some((w, c)) = rem
            .terms
            .iter()
            .max_by(|a, b| key(a.0).cmp(&key(b.0)))
            .map(|(w, c)| (w.clone(), c.clone()))
        {
            let (q, r) = c.div_rem(&lead_c);
            if !r.is_zero() {
                return Err(Error::InexactDivision);
            }
            let mono = w.sub(&lead_w);
            if key(&mono) < floor {
                return Err(Error::InexactDivision);
            }
            for (dw, dc) in &divisor.terms {
                rem.add_term(dw.add(&mono), -(dc * &q));
            }
            quot.add_term(mono, q);
        }
        Ok(quot)
    }

    /// Largest absolute coefficient.
    pub fn max_abs_coefficient(&self) -> BigInt {
        self.terms.values().map(|c| c.abs()).max().unwrap_or_default()
    }
}

impl fmt::Debug for CharElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CharElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            if mag.is_one() {
                write!(f, "e^{w}")?;
            } else {
                write!(f, "{mag}·e^{w}")?;
            }
        }
        Ok(())
    }
}

// Operator forms panic on rank mismatch; use the `checked_*` methods when
// ranks come from untrusted input.

impl Add for &CharElement {
    type Output = CharElement;
    fn add(self, rhs: &CharElement) -> CharElement {
        self.checked_add(rhs).expect("rank mismatch in character addition")
    }
}

impl Sub for &CharElement {
    type Output = CharElement;
    fn sub(self, rhs: &CharElement) -> CharElement {
        self.checked_sub(rhs).expect("rank mismatch in character subtraction")
    }
}

impl Mul for &CharElement {
    type Output = CharElement;
    fn mul(self, rhs: &CharElement) -> CharElement {
        self.checked_mul(rhs).expect("rank mismatch in character product")
    }
}

impl Neg for &CharElement {
    type Output = CharElement;
    fn neg(self) -> CharElement {
        self.scale_i64(-1)
    }
}

impl AddAssign<&CharElement> for CharElement {
    fn add_assign(&mut self, rhs: &CharElement) {
        assert_eq!(self.rank, rhs.rank, "rank mismatch in character addition");
        for (w, c) in &rhs.terms {
            self.add_term(w.clone(), c.clone());
        }
    }
}

/// `D = ∏_{α∈R} (1 − e^α)`.
pub fn weyl_denominator_full(rs: &RootSystem) -> CharElement {
    product_one_minus(rs.rank(), rs.full_roots())
}

/// `∏_{α∈R⁺} (1 − e^α)`.
pub fn half_denominator(rs: &RootSystem) -> CharElement {
    product_one_minus(rs.rank(), rs.positive_roots())
}

/// `∏_{α∈S} (1 − e^α)` for an arbitrary list of roots.
pub fn product_one_minus(rank: usize, roots: &[Weight]) -> CharElement {
    roots.iter().fold(CharElement::one(rank), |acc, a| {
        let mut f = CharElement::one(rank);
        f.add_term(a.clone(), -BigInt::one());
        &acc * &f
    })
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    w: Vec<i64>,
    #[serde(serialize_with = "ser_bigint", deserialize_with = "de_bigint")]
    c: BigInt,
}

#[derive(Serialize, Deserialize)]
struct CharJson {
    rank: usize,
    terms: Vec<TermJson>,
}

fn ser_bigint<S: Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

fn de_bigint<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BigInt, D::Error> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Num {
        S(String),
        I(i64),
    }
    match Num::deserialize(d)? {
        Num::S(s) => s.trim().parse().map_err(serde::de::Error::custom),
        Num::I(i) => Ok(BigInt::from(i)),
    }
}

impl Serialize for CharElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CharJson {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .map(|(w, c)| TermJson {
                    w: w.coords().to_vec(),
                    c: c.clone(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CharElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = CharJson::deserialize(d)?;
        let terms = raw.terms.into_iter().map(|t| (Weight::new(t.w), t.c));
        CharElement::from_terms(raw.rank, terms).map_err(serde::de::Error::custom)
    }
}
