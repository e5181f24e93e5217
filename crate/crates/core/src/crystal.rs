//! Sets of parameters, the monomial crystal and the product monomial
//! crystal, highest-weight bookkeeping and the coweight map on monomials.
//!
//! Variables y[i,k] carry a node and an integer spectral parameter of the
//! node's parity. The correction monomial z[i,k] is
//! y[i,k] y[i,k+2] / prod over neighbors j of y[j,k+1]; the neighbor form is
//! the one that reproduces the fundamental sl3 crystal chain.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rat::{int, rat, Rat};
use crate::rootsys::{CartanDatum, WeightVec};

pub const DEFAULT_VERTEX_CAP: usize = 100_000;

/// A per-node finite multiset of integer scalars, stored sorted.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ParamSet {
    sets: Vec<Vec<i64>>,
}

impl ParamSet {
    pub fn new(rank: usize, mut sets: Vec<Vec<i64>>) -> Self {
        sets.resize(rank, Vec::new());
        for s in &mut sets {
            s.sort_unstable();
        }
        ParamSet { sets }
    }

    pub fn empty(rank: usize) -> Self {
        Self::new(rank, vec![])
    }

    pub fn rank(&self) -> usize {
        self.sets.len()
    }

    pub fn set(&self, i: usize) -> &[i64] {
        &self.sets[i]
    }

    pub fn sets(&self) -> &[Vec<i64>] {
        &self.sets
    }

    pub fn is_empty(&self) -> bool {
        self.sets.iter().all(|s| s.is_empty())
    }

    pub fn min_element(&self) -> Option<i64> {
        self.sets.iter().flatten().min().copied()
    }

    pub fn max_element(&self) -> Option<i64> {
        self.sets.iter().flatten().max().copied()
    }

    /// Every entry of the node-i multiset must have parity matching node i.
    pub fn check_integral(&self, datum: &CartanDatum) -> Result<()> {
        for (i, s) in self.sets.iter().enumerate() {
            for &c in s {
                if c.rem_euclid(2) != datum.parity(i) as i64 {
                    return Err(Error::NonIntegralParams(format!(
                        "entry {c} at node {} has the wrong parity",
                        i + 1
                    )));
                }
            }
        }
        Ok(())
    }

    /// Cardinality vector.
    pub fn cardinalities(&self) -> Vec<usize> {
        self.sets.iter().map(Vec::len).collect()
    }

    /// Sum of entries per node (the first elementary symmetric function).
    pub fn e1(&self, i: usize) -> i64 {
        self.sets[i].iter().sum()
    }

    /// Level: sum of |R_i| fundamental weights, in root coordinates.
    pub fn level(&self, datum: &CartanDatum) -> WeightVec {
        let fund: Vec<Rat> = self.sets.iter().map(|s| int(s.len() as i64)).collect();
        WeightVec::from_fundamental(datum, &fund)
    }

    /// Height interpretation: sum of |R_i| simple roots.
    pub fn height_weight(&self, datum: &CartanDatum) -> WeightVec {
        let _ = datum;
        WeightVec {
            coords: self.sets.iter().map(|s| int(s.len() as i64)).collect(),
        }
    }

    /// Multiplicity function of node i at q: multiplicity of 2q (even node)
    /// or 2q+1 (odd node).
    pub fn rho(&self, datum: &CartanDatum, i: usize, q: i64) -> usize {
        let target = 2 * q + datum.parity(i) as i64;
        self.sets[i].iter().filter(|&&c| c == target).count()
    }

    fn q_of(&self, datum: &CartanDatum, i: usize, c: i64) -> i64 {
        (c - datum.parity(i) as i64) / 2
    }
}

/// Product over nodes and q of the factorials of the multiplicities; the
/// parameter set is singular when this exceeds one.
pub fn sigma(datum: &CartanDatum, r: &ParamSet) -> Result<u128> {
    r.check_integral(datum)?;
    let mut acc: u128 = 1;
    for i in 0..r.rank() {
        let mut run = 1u128;
        let mut count = 0u128;
        let mut prev: Option<i64> = None;
        for &c in r.set(i) {
            if prev == Some(c) {
                count += 1;
                run = run.checked_mul(count + 1).expect("factorial fits in u128");
            } else {
                prev = Some(c);
                count = 0;
            }
        }
        acc = acc.checked_mul(run).expect("sigma fits in u128");
    }
    Ok(acc)
}

/// The concatenated list of fundamental-weight indices, grouped by q in
/// increasing order, each block ordered by the node total order.
pub fn uvarpi(datum: &CartanDatum, r: &ParamSet) -> Result<Vec<usize>> {
    r.check_integral(datum)?;
    let mut qs: BTreeSet<i64> = BTreeSet::new();
    for i in 0..r.rank() {
        for &c in r.set(i) {
            qs.insert(r.q_of(datum, i, c));
        }
    }
    let mut out = Vec::new();
    for q in qs {
        for &i in datum.node_order() {
            for _ in 0..r.rho(datum, i, q) {
                out.push(i);
            }
        }
    }
    Ok(out)
}

/// A Laurent monomial in the variables y[i,k], sparse over its support.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    exps: BTreeMap<(usize, i64), i64>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial {
            exps: BTreeMap::new(),
        }
    }

    pub fn var(datum: &CartanDatum, i: usize, k: i64) -> Result<Self> {
        if k.rem_euclid(2) != datum.parity(i) as i64 {
            return Err(Error::NonIntegralParams(format!(
                "spectral parameter {k} has the wrong parity for node {}",
                i + 1
            )));
        }
        let mut m = Self::one();
        m.mul_var(i, k, 1);
        Ok(m)
    }

    pub fn exponents(&self) -> impl Iterator<Item = (&(usize, i64), &i64)> {
        self.exps.iter()
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    fn mul_var(&mut self, i: usize, k: i64, power: i64) {
        if power == 0 {
            return;
        }
        let e = self.exps.entry((i, k)).or_insert(0);
        *e += power;
        if *e == 0 {
            self.exps.remove(&(i, k));
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&(i, k), &a) in &other.exps {
            out.mul_var(i, k, a);
        }
        out
    }

    /// Multiply by z[i,k]^power.
    fn mul_z(&self, datum: &CartanDatum, i: usize, k: i64, power: i64) -> Self {
        let mut out = self.clone();
        out.mul_var(i, k, power);
        out.mul_var(i, k + 2, power);
        for j in datum.neighbors(i) {
            out.mul_var(j, k + 1, -power);
        }
        out
    }

    /// Weight in fundamental coordinates: per-node exponent sums.
    pub fn weight_fundamental(&self, rank: usize) -> Vec<i64> {
        let mut w = vec![0i64; rank];
        for (&(i, _), &a) in &self.exps {
            w[i] += a;
        }
        w
    }

    pub fn weight(&self, datum: &CartanDatum) -> WeightVec {
        let fund: Vec<Rat> = self
            .weight_fundamental(datum.rank())
            .into_iter()
            .map(int)
            .collect();
        WeightVec::from_fundamental(datum, &fund)
    }

    /// Support of node i, ascending in the spectral parameter.
    fn node_support(&self, i: usize) -> Vec<(i64, i64)> {
        self.exps
            .range((i, i64::MIN)..=(i, i64::MAX))
            .map(|(&(_, k), &a)| (k, a))
            .collect()
    }

    /// Largest value over k of minus the prefix sum of node-i exponents,
    /// floored at zero.
    pub fn eps(&self, i: usize) -> i64 {
        let mut prefix = 0i64;
        let mut best = 0i64;
        for (_, a) in self.node_support(i) {
            prefix += a;
            best = best.max(-prefix);
        }
        best
    }

    /// Largest value over k of the suffix sum of node-i exponents, floored
    /// at zero.
    pub fn phi(&self, i: usize) -> i64 {
        let mut suffix = 0i64;
        let mut best = 0i64;
        for (_, a) in self.node_support(i).into_iter().rev() {
            suffix += a;
            best = best.max(suffix);
        }
        best
    }

    /// Lowering operator: null when phi_i vanishes, otherwise multiply by
    /// the inverse of z[i, k-2] at the largest k achieving phi_i.
    pub fn f_tilde(&self, datum: &CartanDatum, i: usize) -> Option<Monomial> {
        let phi = self.phi(i);
        if phi == 0 {
            return None;
        }
        let support = self.node_support(i);
        let mut suffix = 0i64;
        let mut k_star = None;
        for &(k, a) in support.iter().rev() {
            suffix += a;
            if suffix == phi {
                k_star = Some(k);
                break;
            }
        }
        let k = k_star.expect("phi > 0 is achieved on the support");
        Some(self.mul_z(datum, i, k - 2, -1))
    }

    /// Raising operator: null when eps_i vanishes, otherwise multiply by
    /// z[i, k] at the smallest k achieving eps_i.
    pub fn e_tilde(&self, datum: &CartanDatum, i: usize) -> Option<Monomial> {
        let eps = self.eps(i);
        if eps == 0 {
            return None;
        }
        let mut prefix = 0i64;
        let mut k_star = None;
        for (k, a) in self.node_support(i) {
            prefix += a;
            if -prefix == eps {
                k_star = Some(k);
                break;
            }
        }
        let k = k_star.expect("eps > 0 is achieved on the support");
        Some(self.mul_z(datum, i, k, 1))
    }

    /// The coweight map: y[i,k] goes to (k/2) times the i-th fundamental
    /// weight, extended additively over exponents. Returned in simple-root
    /// coordinates.
    pub fn varpi_vee(&self, datum: &CartanDatum) -> WeightVec {
        WeightVec::from_fundamental(datum, &self.varpi_vee_fundamental(datum.rank()))
    }

    /// Fundamental coordinates of the coweight map.
    pub fn varpi_vee_fundamental(&self, rank: usize) -> Vec<Rat> {
        let mut fund = vec![Rat::zero(); rank];
        for (&(i, k), &a) in &self.exps {
            fund[i] += rat(a * k, 2);
        }
        fund
    }
}

impl std::fmt::Display for Monomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.exps.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for (&(i, k), &a) in &self.exps {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "y[{},{}]", i + 1, k)?;
            if a != 1 {
                write!(f, "^{a}")?;
            }
        }
        Ok(())
    }
}

/// A crystal graph on monomials: vertices plus node-colored lowering edges.
#[derive(Debug, Clone)]
pub struct CrystalGraph {
    vertices: Vec<Monomial>,
    index: BTreeMap<Monomial, usize>,
    /// (source vertex, node, target vertex) for each lowering edge.
    edges: Vec<(usize, usize, usize)>,
}

impl CrystalGraph {
    pub fn vertices(&self) -> &[Monomial] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn edges(&self) -> &[(usize, usize, usize)] {
        &self.edges
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.index.contains_key(m)
    }

    /// Vertices of the given weight (fundamental coordinates).
    pub fn weight_space(&self, datum: &CartanDatum, mu_fund: &[i64]) -> Vec<Monomial> {
        self.vertices
            .iter()
            .filter(|m| m.weight_fundamental(datum.rank()) == mu_fund)
            .cloned()
            .collect()
    }

    /// DOT rendering with vertices labeled by monomials and edges by nodes.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph crystal {\n");
        for (ix, m) in self.vertices.iter().enumerate() {
            out.push_str(&format!("  v{ix} [label=\"{m}\"];\n"));
        }
        for &(src, node, dst) in &self.edges {
            out.push_str(&format!(
                "  v{src} -> v{dst} [label=\"{}\", color=\"{}\"];\n",
                node + 1,
                DOT_COLORS[node % DOT_COLORS.len()]
            ));
        }
        out.push_str("}\n");
        out
    }

    fn from_vertex_set(datum: &CartanDatum, set: BTreeSet<Monomial>) -> Self {
        let vertices: Vec<Monomial> = set.into_iter().collect();
        let index: BTreeMap<Monomial, usize> = vertices
            .iter()
            .enumerate()
            .map(|(ix, m)| (m.clone(), ix))
            .collect();
        let mut edges = Vec::new();
        for (src, m) in vertices.iter().enumerate() {
            for i in 0..datum.rank() {
                if let Some(target) = m.f_tilde(datum, i) {
                    if let Some(&dst) = index.get(&target) {
                        edges.push((src, i, dst));
                    }
                }
            }
        }
        CrystalGraph {
            vertices,
            index,
            edges,
        }
    }
}

const DOT_COLORS: [&str; 8] = [
    "red", "blue", "forestgreen", "orange", "purple", "brown", "teal", "magenta",
];

/// Closure of a seed set under both crystal operators, capped.
fn close_under_operators(
    datum: &CartanDatum,
    seeds: BTreeSet<Monomial>,
    cap: usize,
) -> Result<BTreeSet<Monomial>> {
    let mut seen = seeds.clone();
    let mut queue: VecDeque<Monomial> = seeds.into_iter().collect();
    while let Some(m) = queue.pop_front() {
        for i in 0..datum.rank() {
            for next in [m.f_tilde(datum, i), m.e_tilde(datum, i)].into_iter().flatten() {
                if seen.insert(next.clone()) {
                    if seen.len() > cap {
                        return Err(Error::EnumerationCap(cap));
                    }
                    queue.push_back(next);
                }
            }
        }
    }
    Ok(seen)
}

/// The subcrystal generated by the single variable y[i,c].
pub fn fundamental_crystal(
    datum: &CartanDatum,
    i: usize,
    c: i64,
    cap: usize,
) -> Result<CrystalGraph> {
    let seed = Monomial::var(datum, i, c)?;
    let set = close_under_operators(datum, BTreeSet::from([seed]), cap)?;
    Ok(CrystalGraph::from_vertex_set(datum, set))
}

/// The product monomial crystal: all products of one monomial from each
/// factor crystal. The product set is closed under the crystal operators;
/// the closure is recomputed here (under the vertex cap) rather than
/// assumed.
pub fn product_monomial_crystal(
    datum: &CartanDatum,
    r: &ParamSet,
    cap: usize,
) -> Result<CrystalGraph> {
    r.check_integral(datum)?;
    let mut factors: Vec<Vec<Monomial>> = Vec::new();
    for i in 0..datum.rank() {
        for &c in r.set(i) {
            factors.push(
                fundamental_crystal(datum, i, c, cap)?
                    .vertices()
                    .to_vec(),
            );
        }
    }
    let mut expected: usize = 1;
    for f in &factors {
        expected = expected
            .checked_mul(f.len())
            .filter(|&n| n <= cap)
            .ok_or(Error::EnumerationCap(cap))?;
    }
    let mut products: BTreeSet<Monomial> = BTreeSet::from([Monomial::one()]);
    for factor in &factors {
        let mut next = BTreeSet::new();
        for base in &products {
            for m in factor {
                next.insert(base.mul(m));
            }
        }
        products = next;
    }
    let closed = close_under_operators(datum, products, cap)?;
    Ok(CrystalGraph::from_vertex_set(datum, closed))
}

/// Highest weight of the one-dimensional module attached to a parameter set,
/// computed by two routes that must agree: the per-node formula
/// (2 e1(S_i) - sum over neighbors of e1(S_j) + 2 m_i - sum of m_j - e1(R_i)) / 2
/// assembled over fundamental weights, and the global rewriting
/// (sum e1(S_i) alpha_i + (lambda - mu) - sum e1(R_i) w_i) / 2.
pub fn lambda_of_s(
    datum: &CartanDatum,
    s: &ParamSet,
    r: &ParamSet,
    lambda: &WeightVec,
    mu: &WeightVec,
) -> Result<WeightVec> {
    s.check_integral(datum)?;
    r.check_integral(datum)?;
    let nu = lambda.sub(mu);
    if s.height_weight(datum) != nu {
        return Err(Error::HeightLevelMismatch(format!(
            "parameter set has height {}, expected lambda - mu = {}",
            s.height_weight(datum),
            nu
        )));
    }
    if r.level(datum) != *lambda {
        return Err(Error::HeightLevelMismatch(format!(
            "parameter set has level {}, expected lambda = {}",
            r.level(datum),
            lambda
        )));
    }
    let m: Vec<i64> = s.cardinalities().iter().map(|&n| n as i64).collect();

    // per-node route
    let mut fund = vec![Rat::zero(); datum.rank()];
    for i in 0..datum.rank() {
        let mut acc = int(2 * s.e1(i) + 2 * m[i] - r.e1(i));
        for j in datum.neighbors(i) {
            acc -= int(s.e1(j) + m[j]);
        }
        fund[i] = acc / int(2);
    }
    let per_node = WeightVec::from_fundamental(datum, &fund);

    // global route
    let half = rat(1, 2);
    let mut global = nu.scale(&half);
    for i in 0..datum.rank() {
        global = global.add(&WeightVec::simple_root(datum.rank(), i).scale(&rat(s.e1(i), 2)));
        global = global.sub(&WeightVec::fundamental(datum, i).scale(&rat(r.e1(i), 2)));
    }
    debug_assert_eq!(per_node, global);
    if per_node != global {
        return Err(Error::HeightLevelMismatch(
            "weight formulas disagree".into(),
        ));
    }
    Ok(per_node)
}

/// Is the coweight map injective on the product monomial crystal?
pub fn is_varpi_parted(datum: &CartanDatum, r: &ParamSet, cap: usize) -> Result<bool> {
    let graph = product_monomial_crystal(datum, r, cap)?;
    let mut images: BTreeSet<Vec<Rat>> = BTreeSet::new();
    for m in graph.vertices() {
        images.insert(m.varpi_vee_fundamental(datum.rank()));
    }
    Ok(images.len() == graph.len())
}
