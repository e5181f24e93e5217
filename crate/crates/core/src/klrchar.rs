//! Module characters as sequence-indexed dimension vectors, the strongly
//! homogeneous family attached to extremal minuscule weights, the
//! bar-character, and the identification with pairing elements.
//!
//! Everything here is ungraded character data; no module category is built.

use std::collections::BTreeMap;

use crate::dbar::{dbar_minus_seq, shuffle, CNElement, Seq};
use crate::error::Result;
use crate::rat::int;
use crate::ratfun::RatFun;
use crate::rootsys::{minuscule_orbit_word, reduced_words, CartanDatum, WeightVec, WeylElement};

/// A character: nonnegative dimensions indexed by sequences of fixed weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KLRCharacter {
    pub weight: WeightVec,
    pub dims: BTreeMap<Seq, u64>,
}

impl KLRCharacter {
    pub fn empty(rank: usize) -> Self {
        KLRCharacter {
            weight: WeightVec::zero(rank),
            dims: BTreeMap::new(),
        }
    }

    pub fn new(datum: &CartanDatum, dims: BTreeMap<Seq, u64>) -> Result<Self> {
        let dims: BTreeMap<Seq, u64> = dims.into_iter().filter(|(_, d)| *d > 0).collect();
        let mut weight: Option<WeightVec> = None;
        for seq in dims.keys() {
            let w = seq.weight(datum);
            match &weight {
                None => weight = Some(w),
                Some(prev) if *prev == w => {}
                Some(prev) => {
                    return Err(crate::error::Error::HeightLevelMismatch(format!(
                        "sequence {seq} has weight {w}, expected {prev}"
                    )))
                }
            }
        }
        Ok(KLRCharacter {
            weight: weight.unwrap_or_else(|| WeightVec::zero(datum.rank())),
            dims,
        })
    }

    pub fn total_dimension(&self) -> u64 {
        self.dims.values().sum()
    }
}

/// Character of the unique simple module at an extremal weight of a
/// minuscule fundamental representation: dimension one at each reduced word
/// of the minimal-length orbit representative.
pub fn strongly_homogeneous_char(
    datum: &CartanDatum,
    i: usize,
    mu: &WeightVec,
) -> Result<KLRCharacter> {
    let word = minuscule_orbit_word(datum, i, mu)?;
    let w = WeylElement::from_word(datum, &word);
    let dims: BTreeMap<Seq, u64> = reduced_words(datum, &w)
        .into_iter()
        .map(|word| (Seq(word), 1))
        .collect();
    KLRCharacter::new(datum, dims)
}

/// Bar-character: the dimension-weighted sum of minus-side product formulas
/// over the reversed support sequences.
pub fn barchar(datum: &CartanDatum, c: &KLRCharacter) -> RatFun {
    let terms: Vec<RatFun> = c
        .dims
        .iter()
        .map(|(seq, &d)| dbar_minus_seq(datum, &seq.reversed()).scale(&int(d as i64)))
        .collect();
    RatFun::sum(datum.rank(), terms)
}

/// The pairing element of a character: the coefficient at a sequence is the
/// dimension at the reversed sequence.
pub fn gamma_to_cn(datum: &CartanDatum, c: &KLRCharacter) -> CNElement {
    let coeffs = c
        .dims
        .iter()
        .map(|(seq, &d)| (seq.reversed(), int(d as i64)))
        .collect();
    CNElement::new(datum, coeffs).expect("reversal preserves the weight")
}

/// Character of the convolution product: dimensions add over all
/// interleavings of pairs of support sequences.
pub fn char_shuffle(datum: &CartanDatum, a: &KLRCharacter, b: &KLRCharacter) -> KLRCharacter {
    let mut dims: BTreeMap<Seq, u64> = BTreeMap::new();
    for (sa, &da) in &a.dims {
        for (sb, &db) in &b.dims {
            for (s, mult) in shuffle(sa, sb) {
                *dims.entry(s).or_insert(0) += da * db * mult;
            }
        }
    }
    KLRCharacter::new(datum, dims).expect("shuffles share one weight")
}
