//! End-to-end identity harness: colored hook formulas, the minuscule case of
//! the basis-comparison identity, the rank-2 worked pipeline, and the
//! windowed character-partition check.
//!
//! Every cross-module identity here is stated with an explicit placement of
//! the sign involution and validated by exact arithmetic; nothing is trusted
//! from sign conventions.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;

use crate::asympchar::{asymptotic_character, geometric_sum_character, GradedCharacter};
use crate::crystal::{lambda_of_s, ParamSet};
use crate::dbar::{dbar_minus, dbar_plus_seq, varsigma, Seq};
use crate::error::{Error, Result};
use crate::exec::{self, Mode};
use crate::klrchar::{barchar, gamma_to_cn, strongly_homogeneous_char, KLRCharacter};
use num_traits::One;

use crate::rat::{factorial, int, rat, Rat};
use crate::ratfun::RatFun;
use crate::rootsys::{
    inversion_set, is_minuscule, minuscule_orbit_rep, reduced_words_mode, weyl_orbit, CartanDatum,
    WeightVec,
};

/// Outcome of one verification case, serializable as a JSON report.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub case: String,
    pub lhs: String,
    pub rhs: String,
    pub equal: bool,
    pub runtime_ms: u64,
}

impl Report {
    fn finish(case: String, lhs: String, rhs: String, equal: bool, start: Instant) -> Self {
        Report {
            case,
            lhs,
            rhs,
            equal,
            runtime_ms: start.elapsed().as_millis() as u64,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

/// Inverse product of the inversion set of the inverse element: the hook
/// side of the colored hook formula.
fn hook_product(datum: &CartanDatum, i: usize, mu: &WeightVec) -> Result<RatFun> {
    let w = minuscule_orbit_rep(datum, i, mu)?;
    let inv = inversion_set(datum, &w.inverse());
    RatFun::inverse_product(datum.rank(), &inv)
}

/// Sum over reduced words of the plus-side product formula. Both modes sum
/// in the same balanced pairwise order, so cancellation behaves identically
/// and the canonical result is the same.
fn reduced_word_sum(datum: &CartanDatum, i: usize, mu: &WeightVec, mode: Mode) -> Result<RatFun> {
    let w = minuscule_orbit_rep(datum, i, mu)?;
    let words = reduced_words_mode(datum, &w, mode);
    let terms = exec::map_collect(mode, &words, |word| dbar_plus_seq(datum, &Seq(word.clone())));
    Ok(balanced_sum(datum.rank(), terms, mode))
}

/// Balanced pairwise sum; the parallel mode splits the same tree across the
/// rayon pool.
fn balanced_sum(nvars: usize, terms: Vec<RatFun>, mode: Mode) -> RatFun {
    #[cfg(feature = "parallel")]
    {
        fn split(nvars: usize, mut terms: Vec<RatFun>) -> RatFun {
            if terms.len() <= 8 {
                return RatFun::sum(nvars, terms);
            }
            let right = terms.split_off(terms.len() / 2);
            let (a, b) = rayon::join(|| split(nvars, terms), || split(nvars, right));
            a.add(&b)
        }
        if mode == Mode::Parallel {
            return split(nvars, terms);
        }
    }
    let _ = mode;
    RatFun::sum(nvars, terms)
}

/// Colored hook formula at a minuscule extremal weight: the product of the
/// inverse inversion-set roots equals the sum over reduced words of the
/// partial-sum products. Exact rational-function equality.
pub fn verify_nakada(datum: &CartanDatum, i: usize, mu: &WeightVec) -> Result<(bool, Report)> {
    verify_nakada_mode(datum, i, mu, Mode::auto())
}

pub fn verify_nakada_mode(
    datum: &CartanDatum,
    i: usize,
    mu: &WeightVec,
    mode: Mode,
) -> Result<(bool, Report)> {
    let start = Instant::now();
    let lhs = hook_product(datum, i, mu)?;
    let rhs = reduced_word_sum(datum, i, mu, mode)?;
    let equal = lhs == rhs;
    let report = Report::finish(
        format!("hook[{} node {}]", datum.label(), i + 1),
        lhs.to_string(),
        rhs.to_string(),
        equal,
        start,
    );
    Ok((equal, report))
}

/// Evaluation of the hook side at the height functional: the product of the
/// inverse hook heights must equal (number of reduced words) / d!.
pub fn verify_peterson_proctor(
    datum: &CartanDatum,
    i: usize,
    mu: &WeightVec,
) -> Result<(bool, Report)> {
    let start = Instant::now();
    let w = minuscule_orbit_rep(datum, i, mu)?;
    let d = w.length(datum) as u32;
    let lhs = hook_product(datum, i, mu)?;
    let rho_vee = vec![Rat::one(); datum.rank()];
    let lhs_value = lhs.eval_at(&rho_vee)?;
    let count = reduced_words_mode(datum, &w, Mode::auto()).len();
    let rhs_value = Rat::new(count.into(), factorial(d));
    let equal = lhs_value == rhs_value;
    let report = Report::finish(
        format!("peterson-proctor[{} node {}]", datum.label(), i + 1),
        crate::rat::format_rat(&lhs_value),
        crate::rat::format_rat(&rhs_value),
        equal,
        start,
    );
    Ok((equal, report))
}

/// Minuscule case of the basis-comparison identity: the bar-character of the
/// strongly homogeneous character equals the sign involution of the
/// smooth-fixed-point equivariant multiplicity (the inverse inversion-set
/// product), with multiplicity one.
pub fn verify_main_minuscule(
    datum: &CartanDatum,
    i: usize,
    mu: &WeightVec,
) -> Result<(bool, Report)> {
    let start = Instant::now();
    let shc = strongly_homogeneous_char(datum, i, mu)?;
    let lhs = barchar(datum, &shc);
    let rhs = varsigma(&hook_product(datum, i, mu)?);
    let equal = lhs == rhs;
    let report = Report::finish(
        format!("main-minuscule[{} node {}]", datum.label(), i + 1),
        lhs.to_string(),
        rhs.to_string(),
        equal,
        start,
    );
    Ok((equal, report))
}

/// The rank-2 worked pipeline, self-contained:
/// build the parabolic-Verma-style graded character, extract the asymptotic
/// character, compare with the bar-character of the dimension-one character
/// at (1,2), check the pairing-element route agrees, and check that the
/// sibling character at (2,1) is distinguished.
pub fn verify_sl3_pipeline() -> (bool, Vec<Report>) {
    let datum = CartanDatum::from_type("A2").expect("A2 is valid");
    let mut reports = Vec::new();
    let mut all_ok = true;

    // chi(M) = 1 / ((1 - e^-a1)(1 - e^-(a1+a2)))
    let start = Instant::now();
    let gc = GradedCharacter::new(
        2,
        BTreeMap::from([(WeightVec::zero(2), 1i64)]),
        vec![
            WeightVec::from_integers(&[1, 0]),
            WeightVec::from_integers(&[1, 1]),
        ],
    )
    .expect("denominators have positive height");
    let achi = asymptotic_character(&gc).expect("numerator is nonzero");
    let expected = RatFun::inverse_product(
        2,
        &[
            WeightVec::from_integers(&[1, 0]),
            WeightVec::from_integers(&[1, 1]),
        ],
    )
    .expect("nonzero forms");
    let ok = achi == expected;
    all_ok &= ok;
    reports.push(Report::finish(
        "sl3-achi".into(),
        achi.to_string(),
        expected.to_string(),
        ok,
        start,
    ));

    // the simple with dim e((1,2)) = 1
    let start = Instant::now();
    let l2 = KLRCharacter::new(&datum, BTreeMap::from([(Seq(vec![0, 1]), 1u64)]))
        .expect("single sequence");
    let chbar_l2 = barchar(&datum, &l2);
    let ok = varsigma(&achi) == chbar_l2;
    all_ok &= ok;
    reports.push(Report::finish(
        "sl3-varsigma-achi-vs-barchar".into(),
        varsigma(&achi).to_string(),
        chbar_l2.to_string(),
        ok,
        start,
    ));

    // the pairing-element route gives the same function
    let start = Instant::now();
    let via_gamma = dbar_minus(&datum, &gamma_to_cn(&datum, &l2));
    let ok = via_gamma == chbar_l2;
    all_ok &= ok;
    reports.push(Report::finish(
        "sl3-gamma-route".into(),
        via_gamma.to_string(),
        chbar_l2.to_string(),
        ok,
        start,
    ));

    // the sibling simple must fail the equality
    let start = Instant::now();
    let l1 = KLRCharacter::new(&datum, BTreeMap::from([(Seq(vec![1, 0]), 1u64)]))
        .expect("single sequence");
    let chbar_l1 = barchar(&datum, &l1);
    let distinguished = varsigma(&achi) != chbar_l1;
    all_ok &= distinguished;
    reports.push(Report::finish(
        "sl3-sibling-must-differ".into(),
        varsigma(&achi).to_string(),
        chbar_l1.to_string(),
        chbar_l1 == varsigma(&achi),
        start,
    ));

    (all_ok, reports)
}

/// Windowed check of the character-partition identity: enumerate the regular
/// integral parameter sets attached to a sequence that lie strictly below
/// the truncation parameters, match their weights against the closed-form
/// geometric sum term by term inside the window, and confirm the asymptotic
/// character of the closed form is the plus-side product formula.
pub fn verify_character_partition(
    datum: &CartanDatum,
    r: &ParamSet,
    seq: &Seq,
    bound: i64,
) -> Result<(bool, Report)> {
    let start = Instant::now();
    r.check_integral(datum)?;
    let min_r = r.min_element().ok_or(Error::WindowTooSmall)?;
    let rank = datum.rank();
    let d = seq.len();
    let nu = seq.weight(datum);
    let lambda = r.level(datum);
    let mu = lambda.sub(&nu);

    let parities: Vec<i64> = seq.0.iter().map(|&i| datum.parity(i) as i64).collect();
    // per-strand bounds on q from s = 2q - parity: s >= -bound and s < min R
    let floors: Vec<i64> = parities.iter().map(|p| div_ceil(-bound + p, 2)).collect();
    let caps: Vec<i64> = parities.iter().map(|p| div_floor(min_r - 1 + p, 2)).collect();

    // enumerate strictly increasing tuples within the window
    let mut brute: BTreeMap<WeightVec, i64> = BTreeMap::new();
    let mut tuple = vec![0i64; d];
    enumerate_tuples(&floors, &caps, &mut tuple, 0, &mut |q: &[i64]| {
        let mut sets = vec![Vec::new(); rank];
        for (j, &i) in seq.0.iter().enumerate() {
            sets[i].push(2 * q[j] - parities[j]);
        }
        let s = ParamSet::new(rank, sets);
        let weight = lambda_of_s(datum, &s, r, &lambda, &mu)?;
        *brute.entry(weight).or_insert(0) += 1;
        Ok(())
    })?;
    if brute.is_empty() {
        return Err(Error::WindowTooSmall);
    }

    // closed form, shifted so its top weight is the top enumerated weight:
    // zeta = h + (cap_d + 1) nu with h the sequence-independent offset
    let betas: Vec<WeightVec> = seq
        .0
        .iter()
        .map(|&i| WeightVec::simple_root(rank, i))
        .collect();
    let gsc = geometric_sum_character(rank, &betas)?;
    let mut h = nu.scale(&rat(1, 2));
    for i in 0..rank {
        if datum.parity(i) == 1 {
            let half_m = nu.coords[i].clone() * rat(1, 2);
            h = h.sub(&WeightVec::simple_root(rank, i).scale(&half_m));
        }
        h = h.sub(&WeightVec::fundamental(datum, i).scale(&rat(r.e1(i), 2)));
    }
    let cap_d = *caps.last().ok_or(Error::WindowTooSmall)?;
    let zeta = h.add(&nu.scale(&int(cap_d + 1)));
    let shifted_numerator: BTreeMap<WeightVec, i64> = gsc
        .numerator()
        .iter()
        .map(|(w, &n)| (w.add(&zeta), n))
        .collect();
    let shifted = GradedCharacter::new(rank, shifted_numerator, gsc.denominator().to_vec())?;

    // completeness threshold for the comparison window
    let f_max = *floors.iter().max().expect("nonempty sequence floors");
    let threshold = int(f_max - (cap_d + 1));
    let floor_height = zeta.height() + int(rank as i64) * threshold.clone();
    let expanded = shifted.expand_to_height(&floor_height);
    let in_window = |w: &WeightVec| {
        w.sub(&zeta)
            .coords
            .iter()
            .all(|c| *c >= threshold)
    };
    let filter = |m: &BTreeMap<WeightVec, i64>| -> BTreeMap<WeightVec, i64> {
        m.iter()
            .filter(|(w, _)| in_window(w))
            .map(|(w, &n)| (w.clone(), n))
            .collect()
    };
    let brute_window = filter(&brute);
    let closed_window = filter(&expanded);
    let terms_match = brute_window == closed_window && !brute_window.is_empty();

    let achi = asymptotic_character(&shifted)?;
    let dbar = dbar_plus_seq(datum, seq);
    let achi_match = achi == dbar;

    let equal = terms_match && achi_match;
    let report = Report::finish(
        format!(
            "character-partition[{} seq {} terms {} matched {}]",
            datum.label(),
            seq,
            brute_window.len(),
            terms_match
        ),
        dbar.to_string(),
        achi.to_string(),
        equal,
        start,
    );
    Ok((equal, report))
}

fn div_floor(a: i64, b: i64) -> i64 {
    a.div_euclid(b)
}

fn div_ceil(a: i64, b: i64) -> i64 {
    -((-a).div_euclid(b))
}

fn enumerate_tuples(
    floors: &[i64],
    caps: &[i64],
    tuple: &mut Vec<i64>,
    index: usize,
    visit: &mut impl FnMut(&[i64]) -> Result<()>,
) -> Result<()> {
    if index == floors.len() {
        return visit(tuple);
    }
    let lo = if index == 0 {
        floors[index]
    } else {
        floors[index].max(tuple[index - 1] + 1)
    };
    for q in lo..=caps[index] {
        tuple[index] = q;
        enumerate_tuples(floors, caps, tuple, index + 1, visit)?;
    }
    Ok(())
}

/// One minuscule extremal case: Dynkin type label, node, extremal weight.
pub struct MinusculeCase {
    pub datum: CartanDatum,
    pub node: usize,
    pub mu: WeightVec,
}

/// Every (minuscule node, extremal weight) pair over the given types,
/// filtered by rank.
pub fn minuscule_cases(types: &[&str], rank_cap: usize) -> Result<Vec<MinusculeCase>> {
    let mut cases = Vec::new();
    for name in types {
        let datum = CartanDatum::from_type(name)?;
        if datum.rank() > rank_cap {
            continue;
        }
        for node in 0..datum.rank() {
            if !is_minuscule(&datum, node) {
                continue;
            }
            let fund = WeightVec::fundamental(&datum, node);
            for mu in weyl_orbit(&datum, &fund) {
                cases.push(MinusculeCase {
                    datum: datum.clone(),
                    node,
                    mu,
                });
            }
        }
    }
    Ok(cases)
}

pub const DEFAULT_VERIFY_TYPES: [&str; 6] = ["A1", "A2", "A3", "A4", "D4", "D5"];

/// Run the whole verification suite: the three minuscule verifiers over
/// every case within the rank cap, the rank-2 pipeline, and two
/// character-partition instances. Returns the overall verdict and one
/// report per case.
pub fn verify_all(rank_cap: usize, mode: Mode) -> Result<(bool, Vec<Report>)> {
    let cases = minuscule_cases(&DEFAULT_VERIFY_TYPES, rank_cap)?;
    let case_reports: Vec<Result<Vec<(bool, Report)>>> =
        exec::map_collect(mode, &cases, |case| {
            Ok(vec![
                verify_nakada_mode(&case.datum, case.node, &case.mu, Mode::Sequential)?,
                verify_peterson_proctor(&case.datum, case.node, &case.mu)?,
                verify_main_minuscule(&case.datum, case.node, &case.mu)?,
            ])
        });
    let mut all_ok = true;
    let mut reports = Vec::new();
    for batch in case_reports {
        for (ok, report) in batch? {
            all_ok &= ok;
            reports.push(report);
        }
    }

    let (ok, pipeline_reports) = verify_sl3_pipeline();
    all_ok &= ok;
    reports.extend(pipeline_reports);

    let datum = CartanDatum::from_type("A2")?;
    let a = datum.parity(0) as i64;
    let r = ParamSet::new(2, vec![vec![a], vec![a + 3]]);
    for seq in [Seq(vec![0, 1]), Seq(vec![1, 0]), Seq(vec![0])] {
        let (ok, report) = verify_character_partition(&datum, &r, &seq, 8)?;
        all_ok &= ok;
        reports.push(report);
    }
    Ok((all_ok, reports))
}
