//! Graded characters with geometric-series denominators, equivariant
//! Hilbert polynomials (multidegrees), asymptotic-character extraction,
//! K-polynomials of monomial quotients, and the strictly-increasing
//! geometric-sum identity.

use std::collections::BTreeMap;

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::exec::{self, Mode};
use crate::rat::{factorial, Rat};
use crate::ratfun::{MultiPoly, RatFun};
use crate::rootsys::{LinForm, WeightVec};

/// How far past the variable count the Taylor scan is allowed to run before
/// concluding the numerator vanishes identically.
const TAYLOR_SLACK: u32 = 8;

/// A character of the form (sum of n_lambda e^lambda) over the product of
/// (1 - e^(-beta)) across the denominator weights. Every denominator weight
/// must have strictly positive height.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedCharacter {
    rank: usize,
    numerator: BTreeMap<WeightVec, i64>,
    denominator: Vec<LinForm>,
}

impl GradedCharacter {
    pub fn new(
        rank: usize,
        numerator: BTreeMap<WeightVec, i64>,
        mut denominator: Vec<LinForm>,
    ) -> Result<Self> {
        for beta in &denominator {
            if !beta.height().is_positive() {
                return Err(Error::NonPositiveHeight(beta.to_string()));
            }
        }
        denominator.sort();
        let numerator = numerator.into_iter().filter(|(_, n)| *n != 0).collect();
        Ok(GradedCharacter {
            rank,
            numerator,
            denominator,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn numerator(&self) -> &BTreeMap<WeightVec, i64> {
        &self.numerator
    }

    pub fn denominator(&self) -> &[LinForm] {
        &self.denominator
    }

    pub fn variable_count(&self) -> usize {
        self.denominator.len()
    }

    /// All expansion terms of the full geometric-series expansion whose
    /// height is at least `floor`, with exact multiplicities. Complete on
    /// that range because every denominator weight lowers height.
    pub fn expand_to_height(&self, floor: &Rat) -> BTreeMap<WeightVec, i64> {
        fn descend(
            dens: &[LinForm],
            current: WeightVec,
            coeff: i64,
            floor: &Rat,
            out: &mut BTreeMap<WeightVec, i64>,
        ) {
            match dens.split_first() {
                None => {
                    *out.entry(current).or_insert(0) += coeff;
                }
                Some((gamma, rest)) => {
                    let mut w = current;
                    loop {
                        descend(rest, w.clone(), coeff, floor, out);
                        w = w.sub(gamma);
                        if w.height() < *floor {
                            break;
                        }
                    }
                }
            }
        }
        let mut out = BTreeMap::new();
        for (lambda, &n) in &self.numerator {
            if lambda.height() >= *floor {
                descend(&self.denominator, lambda.clone(), n, floor, &mut out);
            }
        }
        out.retain(|_, v| *v != 0);
        out
    }
}

/// First nonvanishing homogeneous Taylor component of the numerator, plus
/// the support dimension it encodes: degree(p) + d = variable count.
pub fn equiv_hilbert_poly(gc: &GradedCharacter) -> Result<(MultiPoly, i64)> {
    if gc.numerator.is_empty() {
        return Err(Error::ZeroModule);
    }
    let n = gc.variable_count() as u32;
    let rank = gc.rank;
    let coeffs: Vec<i64> = gc.numerator.values().copied().collect();
    let linear: Vec<MultiPoly> = gc.numerator.keys().map(MultiPoly::linear).collect();
    let mut powers: Vec<MultiPoly> = vec![MultiPoly::one(rank); coeffs.len()];
    let cap = n + TAYLOR_SLACK;
    for degree in 0..=cap {
        if degree > 0 {
            for (power, lin) in powers.iter_mut().zip(&linear) {
                *power = power.mul(lin);
            }
        }
        let mut p = MultiPoly::zero(rank);
        for (power, &c) in powers.iter().zip(&coeffs) {
            p = p.add(&power.scale(&Rat::from_integer(c.into())));
        }
        let p = p.scale(&Rat::new(1.into(), factorial(degree)));
        if !p.is_zero() {
            return Ok((p, n as i64 - degree as i64));
        }
    }
    Err(Error::TaylorCapExceeded(cap))
}

/// The limit of the rescaled character: the equivariant Hilbert polynomial
/// over the product of the denominator weights, as a rational function.
pub fn asymptotic_character(gc: &GradedCharacter) -> Result<RatFun> {
    let (p, _) = equiv_hilbert_poly(gc)?;
    RatFun::new(p, gc.denominator())
}

/// A polynomial ring with torus weights minus a monomial ideal, presented by
/// generator exponent vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialQuotient {
    rank: usize,
    weights: Vec<LinForm>,
    generators: Vec<Vec<u32>>,
}

impl MonomialQuotient {
    pub fn new(rank: usize, weights: Vec<LinForm>, generators: Vec<Vec<u32>>) -> Result<Self> {
        for beta in &weights {
            if !beta.height().is_positive() {
                return Err(Error::NonPositiveHeight(beta.to_string()));
            }
        }
        for g in &generators {
            if g.len() != weights.len() {
                return Err(Error::IndexOutOfRange(format!(
                    "generator exponent vector has length {}, expected {}",
                    g.len(),
                    weights.len()
                )));
            }
        }
        Ok(MonomialQuotient {
            rank,
            weights,
            generators,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn variable_count(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[LinForm] {
        &self.weights
    }

    pub fn generators(&self) -> &[Vec<u32>] {
        &self.generators
    }

    fn exponent_weight(&self, expo: &[u32]) -> WeightVec {
        let mut w = WeightVec::zero(self.rank);
        for (j, &e) in expo.iter().enumerate() {
            if e > 0 {
                w = w.add(&self.weights[j].scale(&Rat::from_integer(e.into())));
            }
        }
        w
    }
}

/// K-polynomial by inclusion-exclusion over generator subsets:
/// sum over S of (-1)^|S| e^(-deg lcm S), over the full denominator.
pub fn k_polynomial(mq: &MonomialQuotient) -> Result<GradedCharacter> {
    k_polynomial_mode(mq, Mode::auto())
}

pub fn k_polynomial_mode(mq: &MonomialQuotient, mode: Mode) -> Result<GradedCharacter> {
    let g = mq.generators.len();
    assert!(g < 63, "generator count out of range");
    let chunks: Vec<(u64, u64)> = {
        let total: u64 = 1 << g;
        let step = total.div_ceil(16);
        (0..total)
            .step_by(step as usize)
            .map(|lo| (lo, (lo + step).min(total)))
            .collect()
    };
    let numerator = exec::map_reduce(
        mode,
        &chunks,
        BTreeMap::new,
        |&(lo, hi)| {
            let mut acc: BTreeMap<WeightVec, i64> = BTreeMap::new();
            for mask in lo..hi {
                let mut lcm = vec![0u32; mq.variable_count()];
                for (gi, gen) in mq.generators.iter().enumerate() {
                    if mask >> gi & 1 == 1 {
                        for (l, &e) in lcm.iter_mut().zip(gen) {
                            *l = (*l).max(e);
                        }
                    }
                }
                let weight = mq.exponent_weight(&lcm).neg();
                let sign = if mask.count_ones() % 2 == 0 { 1 } else { -1 };
                *acc.entry(weight).or_insert(0) += sign;
            }
            acc
        },
        |mut a, b| {
            for (w, n) in b {
                *a.entry(w).or_insert(0) += n;
            }
            a
        },
    );
    GradedCharacter::new(mq.rank, numerator, mq.weights.clone())
}

/// Independent multidegree for squarefree quotients: sum over the faces of
/// maximal dimension (complements of minimum vertex covers of the generator
/// supports) of the product of the excluded variables' weights.
pub fn multidegree_oracle_squarefree(mq: &MonomialQuotient) -> Result<MultiPoly> {
    for g in &mq.generators {
        if g.iter().any(|&e| e > 1) {
            return Err(Error::NotSquarefree);
        }
        if g.iter().all(|&e| e == 0) {
            return Err(Error::ZeroModule);
        }
    }
    let n = mq.variable_count();
    assert!(n < 63, "variable count out of range");
    let supports: Vec<u64> = mq
        .generators
        .iter()
        .map(|g| {
            g.iter()
                .enumerate()
                .fold(0u64, |m, (j, &e)| if e > 0 { m | 1 << j } else { m })
        })
        .collect();
    let mut best_dim: Option<u32> = None;
    let mut facets: Vec<u64> = Vec::new();
    for face in 0..(1u64 << n) {
        // a face may not fully contain any generator support
        if supports.iter().any(|&s| s & !face == 0) {
            continue;
        }
        let size = face.count_ones();
        match best_dim {
            Some(d) if size < d => {}
            Some(d) if size == d => facets.push(face),
            _ => {
                best_dim = Some(size);
                facets = vec![face];
            }
        }
    }
    let mut p = MultiPoly::zero(mq.rank);
    for face in facets {
        let mut term = MultiPoly::one(mq.rank);
        for j in 0..n {
            if face >> j & 1 == 0 {
                term = term.mul(&MultiPoly::linear(&mq.weights[j]));
            }
        }
        p = p.add(&term);
    }
    Ok(p)
}

/// Closed form of the sum of e^(q1 b1 + ... + qd bd) over strictly
/// increasing negative integer tuples: a single numerator weight
/// -(d b1 + (d-1) b2 + ... + bd) over the partial sums b1 + ... + bk.
pub fn geometric_sum_character(rank: usize, betas: &[LinForm]) -> Result<GradedCharacter> {
    let d = betas.len();
    let mut numerator_weight = WeightVec::zero(rank);
    let mut partials = Vec::with_capacity(d);
    let mut running = WeightVec::zero(rank);
    for (k, beta) in betas.iter().enumerate() {
        running = running.add(beta);
        if !running.height().is_positive() {
            return Err(Error::NonPositiveHeight(running.to_string()));
        }
        partials.push(running.clone());
        numerator_weight = numerator_weight.add(&beta.scale(&Rat::from_integer(((d - k) as i64).into())));
    }
    let mut numerator = BTreeMap::new();
    numerator.insert(numerator_weight.neg(), 1);
    GradedCharacter::new(rank, numerator, partials)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::int;
    use crate::rootsys::WeightVec;

    fn wv(coords: &[i64]) -> WeightVec {
        WeightVec::from_integers(coords)
    }

    fn gc(rank: usize, num: &[(&[i64], i64)], den: &[&[i64]]) -> GradedCharacter {
        let numerator = num.iter().map(|(w, n)| (wv(w), *n)).collect();
        let denominator = den.iter().map(|w| wv(w)).collect();
        GradedCharacter::new(rank, numerator, denominator).unwrap()
    }

    #[test]
    fn hilbert_poly_examples() {
        // sl2 projective: (1 + e^-a) / (1 - e^-a) -> p = 2, d = 1
        let c = gc(1, &[(&[0], 1), (&[-1], 1)], &[&[1]]);
        let (p, d) = equiv_hilbert_poly(&c).unwrap();
        assert_eq!(p, MultiPoly::constant(1, int(2)));
        assert_eq!(d, 1);

        // Verma-style character: numerator 1 over two factors -> p = 1, d = 2
        let c = gc(2, &[(&[0, 0], 1)], &[&[1, 0], &[1, 1]]);
        let (p, d) = equiv_hilbert_poly(&c).unwrap();
        assert_eq!(p, MultiPoly::one(2));
        assert_eq!(d, 2);

        // 1 - e^-(b1+b2) over two variables -> p = b1 + b2, d = 1
        let c = gc(2, &[(&[0, 0], 1), (&[-1, -1], -1)], &[&[1, 0], &[0, 1]]);
        let (p, d) = equiv_hilbert_poly(&c).unwrap();
        assert_eq!(p, MultiPoly::linear(&wv(&[1, 1])));
        assert_eq!(d, 1);

        // empty numerator is rejected
        let c = GradedCharacter::new(1, BTreeMap::new(), vec![wv(&[1])]).unwrap();
        assert!(matches!(equiv_hilbert_poly(&c), Err(Error::ZeroModule)));
    }

    #[test]
    fn asymptotic_characters() {
        // sl2 chain: 1 + 2 e^-a / (1 - e^-a) = (1 + e^-a)/(1 - e^-a) -> 2/a
        let c = gc(1, &[(&[0], 1), (&[-1], 1)], &[&[1]]);
        let achi = asymptotic_character(&c).unwrap();
        let expected = RatFun::new(MultiPoly::constant(1, int(2)), &[wv(&[1])]).unwrap();
        assert_eq!(achi, expected);
        assert_eq!(achi.to_string(), "2/a1");

        // worked rank-2 character -> 1/(a1*(a1+a2))
        let c = gc(2, &[(&[0, 0], 1)], &[&[1, 0], &[1, 1]]);
        assert_eq!(
            asymptotic_character(&c).unwrap(),
            RatFun::inverse_product(2, &[wv(&[1, 0]), wv(&[1, 1])]).unwrap()
        );

        // free rank-1 module
        let c = gc(2, &[(&[0, 0], 1)], &[&[0, 1]]);
        assert_eq!(
            asymptotic_character(&c).unwrap(),
            RatFun::inverse_product(2, &[wv(&[0, 1])]).unwrap()
        );
    }

    #[test]
    fn k_polynomials() {
        let b = |j: usize, n: usize| -> LinForm {
            let mut w = WeightVec::zero(n);
            w.coords[j] = int(1);
            w
        };
        // I = (x1 x2), N = 2
        let mq = MonomialQuotient::new(2, vec![b(0, 2), b(1, 2)], vec![vec![1, 1]]).unwrap();
        let k = k_polynomial(&mq).unwrap();
        let mut expected = BTreeMap::new();
        expected.insert(wv(&[0, 0]), 1);
        expected.insert(wv(&[-1, -1]), -1);
        assert_eq!(k.numerator(), &expected);

        // I = (x1 x2, x1 x3), N = 3
        let mq = MonomialQuotient::new(
            3,
            vec![b(0, 3), b(1, 3), b(2, 3)],
            vec![vec![1, 1, 0], vec![1, 0, 1]],
        )
        .unwrap();
        let k = k_polynomial(&mq).unwrap();
        let mut expected = BTreeMap::new();
        expected.insert(wv(&[0, 0, 0]), 1);
        expected.insert(wv(&[-1, -1, 0]), -1);
        expected.insert(wv(&[-1, 0, -1]), -1);
        expected.insert(wv(&[-1, -1, -1]), 1);
        assert_eq!(k.numerator(), &expected);

        // no generators: free module
        let mq = MonomialQuotient::new(2, vec![b(0, 2), b(1, 2)], vec![]).unwrap();
        let k = k_polynomial(&mq).unwrap();
        assert_eq!(k.numerator().len(), 1);
        assert_eq!(k.numerator()[&wv(&[0, 0])], 1);
    }

    #[test]
    fn squarefree_oracle() {
        let b = |j: usize, n: usize| -> LinForm {
            let mut w = WeightVec::zero(n);
            w.coords[j] = int(1);
            w
        };
        let mq = MonomialQuotient::new(2, vec![b(0, 2), b(1, 2)], vec![vec![1, 1]]).unwrap();
        assert_eq!(
            multidegree_oracle_squarefree(&mq).unwrap(),
            MultiPoly::linear(&wv(&[1, 1]))
        );

        let mq = MonomialQuotient::new(
            3,
            vec![b(0, 3), b(1, 3), b(2, 3)],
            vec![vec![1, 1, 0], vec![1, 0, 1]],
        )
        .unwrap();
        assert_eq!(
            multidegree_oracle_squarefree(&mq).unwrap(),
            MultiPoly::linear(&wv(&[1, 0, 0]))
        );

        let mq = MonomialQuotient::new(2, vec![b(0, 2), b(1, 2)], vec![]).unwrap();
        assert_eq!(multidegree_oracle_squarefree(&mq).unwrap(), MultiPoly::one(2));

        let mq = MonomialQuotient::new(2, vec![b(0, 2), b(1, 2)], vec![vec![2, 0]]).unwrap();
        assert!(matches!(
            multidegree_oracle_squarefree(&mq),
            Err(Error::NotSquarefree)
        ));
    }

    #[test]
    fn oracle_agrees_with_k_polynomial_route() {
        let b = |j: usize, n: usize| -> LinForm {
            let mut w = WeightVec::zero(n);
            w.coords[j] = int(1);
            w
        };
        let cases: Vec<(usize, Vec<Vec<u32>>)> = vec![
            (2, vec![vec![1, 1]]),
            (3, vec![vec![1, 1, 0], vec![1, 0, 1]]),
            (4, vec![vec![1, 1, 0, 0], vec![0, 1, 1, 0], vec![0, 0, 1, 1]]),
            (3, vec![vec![1, 0, 0]]),
        ];
        for (n, gens) in cases {
            let weights: Vec<LinForm> = (0..n).map(|j| b(j, n)).collect();
            let mq = MonomialQuotient::new(n, weights, gens).unwrap();
            let (p, d) = equiv_hilbert_poly(&k_polynomial(&mq).unwrap()).unwrap();
            let oracle = multidegree_oracle_squarefree(&mq).unwrap();
            assert_eq!(p, oracle);
            assert_eq!(d + p.total_degree().unwrap_or(0) as i64, n as i64);
        }
    }

    #[test]
    fn geometric_sums() {
        // d = 1: e^-b / (1 - e^-b)
        let g = geometric_sum_character(2, &[wv(&[1, 0])]).unwrap();
        assert_eq!(g.numerator()[&wv(&[-1, 0])], 1);
        assert_eq!(g.denominator(), &[wv(&[1, 0])]);

        // d = 2 with the two simple roots
        let g = geometric_sum_character(2, &[wv(&[1, 0]), wv(&[0, 1])]).unwrap();
        assert_eq!(g.numerator()[&wv(&[-2, -1])], 1);
        assert_eq!(g.denominator(), &[wv(&[1, 0]), wv(&[1, 1])]);

        // d = 0: the constant character
        let g = geometric_sum_character(2, &[]).unwrap();
        assert_eq!(g.numerator()[&WeightVec::zero(2)], 1);
        assert!(g.denominator().is_empty());

        // non-positive partial sum is rejected
        assert!(geometric_sum_character(2, &[wv(&[1, -1]), wv(&[-1, 0])]).is_err());
    }

    #[test]
    fn geometric_sum_asymptotics_give_the_product_formula() {
        // over all sequences of length <= 3 in rank 2, the asymptotic
        // character of the closed form is the plus-side product formula
        use crate::dbar::{dbar_plus_seq, Seq};
        use crate::rootsys::CartanDatum;
        let d = CartanDatum::from_type("A2").unwrap();
        let mut seqs: Vec<Vec<usize>> = vec![vec![]];
        let mut layer: Vec<Vec<usize>> = vec![vec![]];
        for _ in 0..3 {
            let mut next = Vec::new();
            for s in &layer {
                for i in 0..2 {
                    let mut t = s.clone();
                    t.push(i);
                    next.push(t);
                }
            }
            seqs.extend(next.iter().cloned());
            layer = next;
        }
        for s in seqs {
            let betas: Vec<WeightVec> = s.iter().map(|&i| WeightVec::simple_root(2, i)).collect();
            let gc = geometric_sum_character(2, &betas).unwrap();
            assert_eq!(
                asymptotic_character(&gc).unwrap(),
                dbar_plus_seq(&d, &Seq(s))
            );
        }
    }

    #[test]
    fn expansion_matches_brute_force_window() {
        // d = 2 geometric sum over the simple roots of rank 2
        let betas = [wv(&[1, 0]), wv(&[0, 1])];
        let g = geometric_sum_character(2, &betas).unwrap();
        let bound = 5i64;
        let mut brute: BTreeMap<WeightVec, i64> = BTreeMap::new();
        for q1 in -bound..0 {
            for q2 in (q1 + 1)..0 {
                let w = betas[0].scale(&int(q1)).add(&betas[1].scale(&int(q2)));
                *brute.entry(w).or_insert(0) += 1;
            }
        }
        let floor = int(-2 * bound);
        let expanded = g.expand_to_height(&floor);
        let in_window = |w: &WeightVec| w.coords.iter().all(|c| *c >= int(-bound + 2));
        let filter = |m: &BTreeMap<WeightVec, i64>| -> BTreeMap<WeightVec, i64> {
            m.iter()
                .filter(|(w, _)| in_window(w))
                .map(|(w, n)| (w.clone(), *n))
                .collect()
        };
        assert_eq!(filter(&brute), filter(&expanded));
    }
}
