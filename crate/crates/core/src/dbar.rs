//! Sequences of Dynkin nodes, the rational functions attached to them by the
//! partial-sum product formulas, the shuffle product, and the sign involution.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::rat::Rat;
use crate::ratfun::RatFun;
use crate::rootsys::{CartanDatum, LinForm, WeightVec};

/// A finite sequence of node indices (0-based).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Seq(pub Vec<usize>);

impl Seq {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Reading the sequence right to left.
    pub fn reversed(&self) -> Seq {
        let mut v = self.0.clone();
        v.reverse();
        Seq(v)
    }

    /// The weight sum of the simple roots along the sequence.
    pub fn weight(&self, datum: &CartanDatum) -> WeightVec {
        let mut w = WeightVec::zero(datum.rank());
        for &i in &self.0 {
            w = w.add(&WeightVec::simple_root(datum.rank(), i));
        }
        w
    }
}

impl std::fmt::Display for Seq {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|i| (i + 1).to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Partial sum of the first `k` simple roots along the sequence; `k = 0`
/// gives the zero form.
pub fn beta_partial(datum: &CartanDatum, seq: &Seq, k: usize) -> Result<LinForm> {
    if k > seq.len() {
        return Err(Error::IndexOutOfRange(format!(
            "partial-sum index {k} exceeds sequence length {}",
            seq.len()
        )));
    }
    let mut w = WeightVec::zero(datum.rank());
    for &i in &seq.0[..k] {
        w.coords[i] += Rat::from_integer(1.into());
    }
    Ok(w)
}

/// Product over k = 1..d of 1 / (partial sum through k).
pub fn dbar_plus_seq(datum: &CartanDatum, seq: &Seq) -> RatFun {
    let factors: Vec<LinForm> = (1..=seq.len())
        .map(|k| beta_partial(datum, seq, k).expect("k in range"))
        .collect();
    RatFun::inverse_product(datum.rank(), &factors).expect("partial sums are nonzero")
}

/// Product over k = 0..d-1 of 1 / (partial sum through k minus the full sum).
pub fn dbar_minus_seq(datum: &CartanDatum, seq: &Seq) -> RatFun {
    let d = seq.len();
    let full = beta_partial(datum, seq, d).expect("k in range");
    let factors: Vec<LinForm> = (0..d)
        .map(|k| beta_partial(datum, seq, k).expect("k in range").sub(&full))
        .collect();
    RatFun::inverse_product(datum.rank(), &factors).expect("differences are nonzero")
}

/// The sign involution f(h) -> f(-h).
pub fn varsigma(f: &RatFun) -> RatFun {
    f.negate_vars()
}

/// All interleavings of two sequences, with multiplicity.
pub fn shuffle(a: &Seq, b: &Seq) -> BTreeMap<Seq, u64> {
    fn go(a: &[usize], b: &[usize], prefix: &mut Vec<usize>, out: &mut BTreeMap<Seq, u64>) {
        if a.is_empty() && b.is_empty() {
            *out.entry(Seq(prefix.clone())).or_insert(0) += 1;
            return;
        }
        if let Some((&h, t)) = a.split_first() {
            prefix.push(h);
            go(t, b, prefix, out);
            prefix.pop();
        }
        if let Some((&h, t)) = b.split_first() {
            prefix.push(h);
            go(a, t, prefix, out);
            prefix.pop();
        }
    }
    let mut out = BTreeMap::new();
    go(&a.0, &b.0, &mut Vec::new(), &mut out);
    out
}

/// An element of the dual pairing space, given purely by its pairing
/// coefficients against sequences of a fixed weight. Membership in the image
/// of the coordinate ring is not (and cannot effectively be) enforced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CNElement {
    pub weight: WeightVec,
    pub coeffs: BTreeMap<Seq, Rat>,
}

impl CNElement {
    pub fn zero(datum: &CartanDatum) -> Self {
        CNElement {
            weight: WeightVec::zero(datum.rank()),
            coeffs: BTreeMap::new(),
        }
    }

    pub fn new(datum: &CartanDatum, coeffs: BTreeMap<Seq, Rat>) -> Result<Self> {
        let mut weight: Option<WeightVec> = None;
        for seq in coeffs.keys() {
            let w = seq.weight(datum);
            match &weight {
                None => weight = Some(w),
                Some(prev) if *prev == w => {}
                Some(prev) => {
                    return Err(Error::HeightLevelMismatch(format!(
                        "sequence {seq} has weight {w}, expected {prev}"
                    )))
                }
            }
        }
        Ok(CNElement {
            weight: weight.unwrap_or_else(|| WeightVec::zero(datum.rank())),
            coeffs,
        })
    }
}

/// Pairing-weighted sum of the minus-side product formulas over the support.
pub fn dbar_minus(datum: &CartanDatum, f: &CNElement) -> RatFun {
    let terms: Vec<RatFun> = f
        .coeffs
        .iter()
        .filter(|(_, c)| !num_traits::Zero::is_zero(*c))
        .map(|(seq, c)| dbar_minus_seq(datum, seq).scale(c))
        .collect();
    RatFun::sum(datum.rank(), terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::int;
    use crate::ratfun::MultiPoly;
    use crate::rootsys::WeightVec;

    fn a2() -> CartanDatum {
        CartanDatum::from_type("A2").unwrap()
    }

    fn wv(coords: &[i64]) -> WeightVec {
        WeightVec::from_integers(coords)
    }

    fn seq(ixs: &[usize]) -> Seq {
        Seq(ixs.iter().map(|&i| i - 1).collect())
    }

    #[test]
    fn partial_sums() {
        let d = a2();
        assert_eq!(beta_partial(&d, &seq(&[1, 2]), 1).unwrap(), wv(&[1, 0]));
        assert_eq!(beta_partial(&d, &seq(&[1, 2]), 2).unwrap(), wv(&[1, 1]));
        assert_eq!(beta_partial(&d, &seq(&[2, 1, 2]), 3).unwrap(), wv(&[1, 2]));
        assert!(beta_partial(&d, &seq(&[1]), 2).is_err());
    }

    #[test]
    fn product_formulas() {
        let d = a2();
        // direct expansion: 1/(a1*(a1+a2))
        assert_eq!(
            dbar_plus_seq(&d, &seq(&[1, 2])),
            RatFun::inverse_product(2, &[wv(&[1, 0]), wv(&[1, 1])]).unwrap()
        );
        // minus side of (2,1): factors -(a1+a2) and -a1, signs cancel
        assert_eq!(
            dbar_minus_seq(&d, &seq(&[2, 1])),
            RatFun::inverse_product(2, &[wv(&[1, 1]), wv(&[1, 0])]).unwrap()
        );
        assert_eq!(
            dbar_plus_seq(&d, &seq(&[1])),
            RatFun::inverse_product(2, &[wv(&[1, 0])]).unwrap()
        );
        // empty sequence: the constant 1
        assert_eq!(dbar_plus_seq(&d, &Seq(vec![])), RatFun::one(2));
    }

    #[test]
    fn varsigma_intertwines_plus_and_minus() {
        let d = a2();
        assert_eq!(
            varsigma(&dbar_plus_seq(&d, &seq(&[1, 2, 1]))),
            dbar_minus_seq(&d, &seq(&[1, 2, 1]).reversed())
        );
        // sigma is an involution
        let f = dbar_plus_seq(&d, &seq(&[1, 2]));
        assert_eq!(varsigma(&varsigma(&f)), f);
        assert_eq!(varsigma(&dbar_plus_seq(&d, &seq(&[1]))), dbar_plus_seq(&d, &seq(&[1])).neg());
    }

    #[test]
    fn shuffle_multisets() {
        let s1 = seq(&[1]);
        let s2 = seq(&[2]);
        let sh = shuffle(&s1, &s2);
        assert_eq!(sh.len(), 2);
        assert_eq!(sh[&seq(&[1, 2])], 1);
        assert_eq!(sh[&seq(&[2, 1])], 1);

        let sh = shuffle(&s1, &s1);
        assert_eq!(sh.len(), 1);
        assert_eq!(sh[&seq(&[1, 1])], 2);

        let sh = shuffle(&seq(&[1, 2]), &s1);
        assert_eq!(sh[&seq(&[1, 2, 1])], 1);
        assert_eq!(sh[&seq(&[1, 1, 2])], 2);
        let total: u64 = sh.values().sum();
        assert_eq!(total, 3);
    }

    #[test]
    fn shuffle_is_commutative_and_associative() {
        let xs = [seq(&[1]), seq(&[2, 1]), seq(&[1, 2])];
        for a in &xs {
            for b in &xs {
                assert_eq!(shuffle(a, b), shuffle(b, a));
                for c in &xs {
                    // (a sh b) sh c = a sh (b sh c) with multiplicities
                    let mut lhs: BTreeMap<Seq, u64> = BTreeMap::new();
                    for (s, m) in shuffle(a, b) {
                        for (t, n) in shuffle(&s, c) {
                            *lhs.entry(t).or_insert(0) += m * n;
                        }
                    }
                    let mut rhs: BTreeMap<Seq, u64> = BTreeMap::new();
                    for (s, m) in shuffle(b, c) {
                        for (t, n) in shuffle(a, &s) {
                            *rhs.entry(t).or_insert(0) += m * n;
                        }
                    }
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn dbar_minus_on_pairing_elements() {
        let d = a2();
        // single coefficient 1 at (1,2): 1/((a1+a2)*a2)
        let mut coeffs = BTreeMap::new();
        coeffs.insert(seq(&[1, 2]), int(1));
        let f = CNElement::new(&d, coeffs).unwrap();
        assert_eq!(
            dbar_minus(&d, &f),
            RatFun::inverse_product(2, &[wv(&[1, 1]), wv(&[0, 1])]).unwrap()
        );
        assert!(dbar_minus(&d, &CNElement::zero(&d)).is_zero());
        // mixed-weight support is rejected
        let mut bad = BTreeMap::new();
        bad.insert(seq(&[1]), int(1));
        bad.insert(seq(&[2]), int(1));
        assert!(CNElement::new(&d, bad).is_err());
    }

    #[test]
    fn shuffle_morphism_for_dbar_minus() {
        let d = a2();
        let pairs = [
            (seq(&[1]), seq(&[2])),
            (seq(&[1]), seq(&[1])),
            (seq(&[1, 2]), seq(&[1])),
            (seq(&[2, 1]), seq(&[2, 1])),
        ];
        for (a, b) in pairs {
            let product = dbar_minus_seq(&d, &a).mul(&dbar_minus_seq(&d, &b));
            let terms: Vec<RatFun> = shuffle(&a, &b)
                .into_iter()
                .map(|(s, m)| dbar_minus_seq(&d, &s).scale(&int(m as i64)))
                .collect();
            assert_eq!(RatFun::sum(2, terms), product);
        }
    }

    #[test]
    fn sl3_element_from_worked_example() {
        // the weight-(a1+a2) element with <e1 e2, f> = 1 and <e2 e1, f> = 0
        let d = a2();
        let mut coeffs = BTreeMap::new();
        coeffs.insert(seq(&[1, 2]), int(1));
        coeffs.insert(seq(&[2, 1]), int(0));
        let f = CNElement::new(&d, coeffs).unwrap();
        let got = dbar_minus(&d, &f);
        let mut num = MultiPoly::zero(2);
        num.insert_term(vec![0, 0], int(1));
        let expected = RatFun::new(num, &[wv(&[1, 1]), wv(&[0, 1])]).unwrap();
        assert_eq!(got, expected);
    }
}
