//! Exact multivariate polynomials and the restricted rational functions used
//! throughout: fractions whose denominators are products of linear forms in
//! the simple-root coordinates. Denominators never need multivariate gcd;
//! cancellation is exact division of the numerator by a linear form.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rat::{factorial, format_rat, Rat};
use crate::rootsys::{LinForm, WeightVec};

/// Exponent vector with graded-lexicographic ordering, so that `BTreeMap`
/// iteration is the canonical term order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Expo(pub Vec<u32>);

impl Expo {
    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl Ord for Expo {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.total(), &self.0).cmp(&(other.total(), &other.0))
    }
}

impl PartialOrd for Expo {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial over exact rationals. No zero coefficient
/// is ever stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Expo, Rat>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Expo(vec![0; nvars]), c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rat::one())
    }

    /// The linear polynomial with the given coefficients.
    pub fn linear(form: &WeightVec) -> Self {
        let nvars = form.rank();
        let mut p = Self::zero(nvars);
        for (i, c) in form.coords.iter().enumerate() {
            if !c.is_zero() {
                let mut e = vec![0; nvars];
                e[i] = 1;
                p.terms.insert(Expo(e), c.clone());
            }
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Expo, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn insert_term(&mut self, expo: Vec<u32>, coeff: Rat) {
        debug_assert_eq!(expo.len(), self.nvars);
        if coeff.is_zero() {
            return;
        }
        let key = Expo(expo);
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Expo::total).max()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert_term(e.0.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert_term(e.0.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect(),
        }
    }

    pub fn scale(&self, s: &Rat) -> Self {
        if s.is_zero() {
            return Self::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * s)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let expo: Vec<u32> = ea.0.iter().zip(&eb.0).map(|(x, y)| x + y).collect();
                out.insert_term(expo, ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// The homogeneous component of the given total degree.
    pub fn homogeneous_component(&self, degree: u32) -> Self {
        MultiPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.total() == degree)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Drop all terms of total degree above `cap`.
    pub fn truncate(&self, cap: u32) -> Self {
        MultiPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.total() <= cap)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn eval(&self, point: &[Rat]) -> Rat {
        let mut acc = Rat::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (i, &k) in e.0.iter().enumerate() {
                for _ in 0..k {
                    term *= &point[i];
                }
            }
            acc += term;
        }
        acc
    }

    /// Substitute every variable by its negative: each term picks up the
    /// sign (-1)^(total degree).
    pub fn negate_vars(&self) -> Self {
        MultiPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let c = if e.total() % 2 == 1 { -c.clone() } else { c.clone() };
                    (e.clone(), c)
                })
                .collect(),
        }
    }

    /// Exact division by a linear form; `None` when the form does not divide.
    pub fn divide_by_linear(&self, form: &[Rat]) -> Option<Self> {
        let pivot = form.iter().rposition(|c| !c.is_zero())?;
        let lead = form[pivot].clone();
        // g = form - lead * x_pivot
        let mut g = WeightVec {
            coords: form.to_vec(),
        };
        g.coords[pivot] = Rat::zero();
        let g = MultiPoly::linear(&g);

        // view self as a univariate polynomial in x_pivot
        let mut layers: BTreeMap<u32, MultiPoly> = BTreeMap::new();
        for (e, c) in &self.terms {
            let deg = e.0[pivot];
            let mut stripped = e.0.clone();
            stripped[pivot] = 0;
            layers
                .entry(deg)
                .or_insert_with(|| MultiPoly::zero(self.nvars))
                .insert_term(stripped, c.clone());
        }
        let top = layers.keys().next_back().copied().unwrap_or(0);
        if top == 0 {
            return if self.is_zero() { Some(Self::zero(self.nvars)) } else { None };
        }
        let mut quotient = Self::zero(self.nvars);
        let inv = lead.recip();
        for deg in (1..=top).rev() {
            let layer = layers.remove(&deg).unwrap_or_else(|| MultiPoly::zero(self.nvars));
            if layer.is_zero() {
                continue;
            }
            let q = layer.scale(&inv);
            // quotient gains q * x_pivot^(deg-1)
            for (e, c) in &q.terms {
                let mut expo = e.0.clone();
                expo[pivot] += deg - 1;
                quotient.insert_term(expo, c.clone());
            }
            // the cross term q * g lands in the layer below
            let cross = q.mul(&g);
            if !cross.is_zero() {
                let entry = layers
                    .entry(deg - 1)
                    .or_insert_with(|| MultiPoly::zero(self.nvars));
                *entry = entry.sub(&cross);
            }
        }
        let remainder = layers.remove(&0).unwrap_or_else(|| MultiPoly::zero(self.nvars));
        if remainder.is_zero() {
            Some(quotient)
        } else {
            None
        }
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let negative = c.is_negative();
            if first {
                if negative {
                    write!(f, "-")?;
                }
                first = false;
            } else if negative {
                write!(f, "-")?;
            } else {
                write!(f, "+")?;
            }
            let abs = c.abs();
            let is_const = e.total() == 0;
            if !abs.is_one() || is_const {
                write!(f, "{}", format_rat(&abs))?;
                if !is_const {
                    write!(f, "*")?;
                }
            }
            let mut first_var = true;
            for (i, &k) in e.0.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                if !first_var {
                    write!(f, "*")?;
                }
                first_var = false;
                write!(f, "a{}", i + 1)?;
                if k > 1 {
                    write!(f, "^{k}")?;
                }
            }
        }
        Ok(())
    }
}

/// Canonical key for a denominator factor: primitive integer coordinates
/// with positive leading (first nonzero) entry.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DenFactor(pub Vec<BigInt>);

impl DenFactor {
    /// Normalize an arbitrary nonzero form into (factor, scale) with
    /// form = scale * factor.
    fn normalize(form: &WeightVec) -> Option<(DenFactor, Rat)> {
        if form.is_zero() {
            return None;
        }
        let mut lcm = BigInt::one();
        for c in &form.coords {
            lcm = lcm.lcm(c.denom());
        }
        let ints: Vec<BigInt> = form
            .coords
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        let mut gcd = BigInt::zero();
        for v in &ints {
            gcd = gcd.gcd(v);
        }
        let lead_negative = ints
            .iter()
            .find(|v| !v.is_zero())
            .map(|v| v.is_negative())
            .unwrap_or(false);
        let unit = if lead_negative { -gcd } else { gcd };
        let key: Vec<BigInt> = ints.iter().map(|v| v / &unit).collect();
        // form = (unit / lcm) * key
        Some((DenFactor(key), Rat::new(unit, lcm)))
    }

    pub fn to_form(&self) -> LinForm {
        WeightVec {
            coords: self.0.iter().map(|v| Rat::from_integer(v.clone())).collect(),
        }
    }

    fn rat_coords(&self) -> Vec<Rat> {
        self.0.iter().map(|v| Rat::from_integer(v.clone())).collect()
    }

    fn is_single_variable(&self) -> bool {
        self.0.iter().filter(|v| !v.is_zero()).count() == 1
            && self.0.iter().find(|v| !v.is_zero()).map(|v| v.is_one()).unwrap_or(false)
    }
}

impl fmt::Display for DenFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_form())
    }
}

/// A rational function whose denominator is a multiset of linear forms.
///
/// Values are kept fully cancelled: no stored denominator factor divides the
/// numerator. Together with the primitive normalization of the factors this
/// makes the representation canonical, so `Display` output is deterministic.
/// Equality is nonetheless decided by exact cross-multiplication.
#[derive(Debug, Clone)]
pub struct RatFun {
    num: MultiPoly,
    den: BTreeMap<DenFactor, u32>,
}

impl RatFun {
    pub fn zero(nvars: usize) -> Self {
        RatFun {
            num: MultiPoly::zero(nvars),
            den: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::from_poly(MultiPoly::one(nvars))
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        Self::from_poly(MultiPoly::constant(nvars, c))
    }

    pub fn from_poly(num: MultiPoly) -> Self {
        RatFun {
            num,
            den: BTreeMap::new(),
        }
    }

    /// Build `num / prod(factors)`. Zero factors are rejected.
    pub fn new(num: MultiPoly, factors: &[LinForm]) -> Result<Self> {
        let mut scale = Rat::one();
        let mut den: BTreeMap<DenFactor, u32> = BTreeMap::new();
        for form in factors {
            let (key, s) = DenFactor::normalize(form).ok_or_else(|| {
                Error::IndexOutOfRange("zero linear form in denominator".into())
            })?;
            scale *= s;
            *den.entry(key).or_insert(0) += 1;
        }
        let mut rf = RatFun {
            num: num.scale(&scale.recip()),
            den,
        };
        rf.cancel();
        Ok(rf)
    }

    /// 1 / prod(factors).
    pub fn inverse_product(nvars: usize, factors: &[LinForm]) -> Result<Self> {
        Self::new(MultiPoly::one(nvars), factors)
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn numerator(&self) -> &MultiPoly {
        &self.num
    }

    pub fn denominator(&self) -> &BTreeMap<DenFactor, u32> {
        &self.den
    }

    fn cancel(&mut self) {
        if self.num.is_zero() {
            self.den.clear();
            return;
        }
        let keys: Vec<DenFactor> = self.den.keys().cloned().collect();
        for key in keys {
            let coords = key.rat_coords();
            while self.den.get(&key).copied().unwrap_or(0) > 0 {
                match self.num.divide_by_linear(&coords) {
                    Some(q) => {
                        self.num = q;
                        let m = self.den.get_mut(&key).unwrap();
                        *m -= 1;
                        if *m == 0 {
                            self.den.remove(&key);
                            break;
                        }
                    }
                    None => break,
                }
            }
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut den = self.den.clone();
        for (k, m) in &other.den {
            *den.entry(k.clone()).or_insert(0) += m;
        }
        let mut out = RatFun {
            num: self.num.mul(&other.num),
            den,
        };
        out.cancel();
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        // common denominator: multiset maximum of the two factor multisets
        let mut union = self.den.clone();
        for (k, m) in &other.den {
            let e = union.entry(k.clone()).or_insert(0);
            *e = (*e).max(*m);
        }
        let complement = |den: &BTreeMap<DenFactor, u32>| -> MultiPoly {
            let mut p = MultiPoly::one(self.nvars());
            for (k, m) in &union {
                let have = den.get(k).copied().unwrap_or(0);
                for _ in have..*m {
                    p = p.mul(&MultiPoly::linear(&k.to_form()));
                }
            }
            p
        };
        let num = self
            .num
            .mul(&complement(&self.den))
            .add(&other.num.mul(&complement(&other.den)));
        let mut out = RatFun { num, den: union };
        out.cancel();
        out
    }

    pub fn neg(&self) -> Self {
        RatFun {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &Rat) -> Self {
        if s.is_zero() {
            return Self::zero(self.nvars());
        }
        RatFun {
            num: self.num.scale(s),
            den: self.den.clone(),
        }
    }

    /// Exact sum by balanced pairwise reduction.
    pub fn sum(nvars: usize, mut terms: Vec<RatFun>) -> Self {
        if terms.is_empty() {
            return Self::zero(nvars);
        }
        while terms.len() > 1 {
            let mut next = Vec::with_capacity(terms.len() / 2 + 1);
            let mut it = terms.into_iter();
            while let Some(a) = it.next() {
                match it.next() {
                    Some(b) => next.push(a.add(&b)),
                    None => next.push(a),
                }
            }
            terms = next;
        }
        terms.pop().unwrap()
    }

    /// Substitute h -> -h.
    pub fn negate_vars(&self) -> Self {
        let mults: u32 = self.den.values().sum();
        let mut num = self.num.negate_vars();
        if mults % 2 == 1 {
            num = num.neg();
        }
        RatFun {
            num,
            den: self.den.clone(),
        }
    }

    /// Exact evaluation; reports every denominator factor vanishing at the
    /// point.
    pub fn eval_at(&self, point: &[Rat]) -> Result<Rat> {
        let mut den_val = Rat::one();
        let mut poles = Vec::new();
        for (k, m) in &self.den {
            let form = k.to_form();
            let v = MultiPoly::linear(&form).eval(point);
            if v.is_zero() {
                poles.push(format!("{form}"));
            } else {
                for _ in 0..*m {
                    den_val *= &v;
                }
            }
        }
        if !poles.is_empty() {
            return Err(Error::EvaluationAtPole(poles.join(", ")));
        }
        Ok(self.num.eval(point) / den_val)
    }
}

impl PartialEq for RatFun {
    fn eq(&self, other: &Self) -> bool {
        // cross-multiplication: self.num * prod(other.den) = other.num * prod(self.den)
        let expand = |num: &MultiPoly, den: &BTreeMap<DenFactor, u32>| -> MultiPoly {
            let mut p = num.clone();
            for (k, m) in den {
                let lin = MultiPoly::linear(&k.to_form());
                for _ in 0..*m {
                    p = p.mul(&lin);
                }
            }
            p
        };
        expand(&self.num, &other.den) == expand(&other.num, &self.den)
    }
}

impl Eq for RatFun {}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() {
            return write!(f, "{}", self.num);
        }
        if self.num.num_terms() > 1 {
            write!(f, "({})", self.num)?;
        } else {
            write!(f, "{}", self.num)?;
        }
        write!(f, "/")?;
        let single = self.den.len() == 1 && self.den.values().all(|&m| m == 1);
        let factor_str = |k: &DenFactor, m: u32| -> String {
            let base = if k.is_single_variable() {
                format!("{k}")
            } else {
                format!("({k})")
            };
            if m > 1 {
                format!("{base}^{m}")
            } else {
                base
            }
        };
        if single {
            let (k, _) = self.den.iter().next().unwrap();
            if k.is_single_variable() {
                return write!(f, "{k}");
            }
            return write!(f, "({k})");
        }
        let product: Vec<String> = self.den.iter().map(|(k, &m)| factor_str(k, m)).collect();
        write!(f, "({})", product.join("*"))
    }
}

/// Jet of an analytic function at the origin: a polynomial of total degree
/// at most `order`, with arithmetic truncated consistently.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncSeries {
    order: u32,
    poly: MultiPoly,
}

impl TruncSeries {
    pub fn new(order: u32, poly: MultiPoly) -> Self {
        TruncSeries {
            order,
            poly: poly.truncate(order),
        }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn poly(&self) -> &MultiPoly {
        &self.poly
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        Self::new(order, self.poly.add(&other.poly))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        Self::new(order, self.poly.mul(&other.poly))
    }
}

/// The jet of exp(<lambda, .>) to total degree `order`.
pub fn exp_jet(lambda: &WeightVec, order: u32) -> TruncSeries {
    let lin = MultiPoly::linear(lambda);
    let nvars = lambda.rank();
    let mut acc = MultiPoly::one(nvars);
    let mut power = MultiPoly::one(nvars);
    for m in 1..=order {
        power = power.mul(&lin);
        if power.is_zero() {
            break;
        }
        acc = acc.add(&power.scale(&Rat::new(BigInt::one(), factorial(m))));
    }
    TruncSeries::new(order, acc)
}
