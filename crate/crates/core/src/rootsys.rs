//! Simply-laced Cartan data, weights, roots and Weyl-group machinery.
//!
//! Weights are stored in simple-root coordinates as exact rationals;
//! fundamental-weight coordinates are a derived view obtained through the
//! Cartan matrix. Weyl-group elements are canonicalized by their matrix in
//! the simple-root basis, never by a word.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exec::{self, Mode};
use crate::rat::{int, sign, solve_linear, Rat};

/// A simply-laced Dynkin diagram of finite type together with a bipartition
/// of its vertices into even and odd ones.
///
/// The total order on nodes places even vertices before odd ones, each group
/// ordered by index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartanDatum {
    rank: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<bool>>,
    parity: Vec<u8>,
    order: Vec<usize>,
    label: String,
}

impl CartanDatum {
    /// Build a datum from an edge list (0-based node indices), choosing the
    /// bipartition by breadth-first 2-coloring with node 0 even.
    pub fn new(rank: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let adj = build_adjacency(rank, edges)?;
        let parity = two_coloring(rank, &adj)?;
        Self::with_parity_checked(rank, edges, adj, parity)
    }

    /// Build a datum with an explicit parity assignment.
    pub fn with_parity(rank: usize, edges: &[(usize, usize)], parity: Vec<u8>) -> Result<Self> {
        if parity.len() != rank {
            return Err(Error::InvalidCartan(format!(
                "parity list has length {}, expected {}",
                parity.len(),
                rank
            )));
        }
        if parity.iter().any(|&p| p > 1) {
            return Err(Error::InvalidCartan("parity entries must be 0 or 1".into()));
        }
        let adj = build_adjacency(rank, edges)?;
        Self::with_parity_checked(rank, edges, adj, parity)
    }

    fn with_parity_checked(
        rank: usize,
        edges: &[(usize, usize)],
        adj: Vec<Vec<bool>>,
        parity: Vec<u8>,
    ) -> Result<Self> {
        for &(a, b) in edges {
            if parity[a] == parity[b] {
                return Err(Error::InvalidCartan(format!(
                    "edge ({},{}) joins two nodes of equal parity",
                    a + 1,
                    b + 1
                )));
            }
        }
        let label = classify_finite_type(rank, &adj)?;
        let mut order: Vec<usize> = (0..rank).collect();
        order.sort_by_key(|&i| (parity[i], i));
        Ok(CartanDatum {
            rank,
            edges: edges.to_vec(),
            adj,
            parity,
            order,
            label,
        })
    }

    /// Parse a type string such as "A2", "D4" or "E6".
    pub fn from_type(name: &str) -> Result<Self> {
        let name = name.trim();
        let (family, rest) = name.split_at(1);
        let n: usize = rest
            .parse()
            .map_err(|_| Error::InvalidCartan(format!("cannot parse type '{name}'")))?;
        let edges: Vec<(usize, usize)> = match (family, n) {
            ("A" | "a", n) if n >= 1 => (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect(),
            ("D" | "d", n) if n >= 4 => {
                let mut e: Vec<(usize, usize)> = (0..n - 3).map(|i| (i, i + 1)).collect();
                e.push((n - 3, n - 2));
                e.push((n - 3, n - 1));
                e
            }
            ("E" | "e", n @ 6..=8) => {
                // Bourbaki labels: chain 1-3-4-5-...-n with node 2 attached to 4.
                let mut e = vec![(0, 2), (1, 3)];
                for i in 2..n - 1 {
                    e.push((i, i + 1));
                }
                e
            }
            _ => {
                return Err(Error::InvalidCartan(format!(
                    "unsupported type '{name}' (simply-laced finite types only)"
                )))
            }
        };
        let mut datum = Self::new(n, &edges)?;
        datum.label = format!("{}{}", family.to_uppercase(), n);
        Ok(datum)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.adj[i][j]
    }

    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.rank).filter(move |&j| self.adj[i][j])
    }

    /// Parity of node `i` (0 = even, 1 = odd).
    pub fn parity(&self, i: usize) -> u8 {
        self.parity[i]
    }

    /// Cartan matrix entry a_ij = 2 delta_ij - [i ~ j].
    pub fn cartan(&self, i: usize, j: usize) -> i64 {
        if i == j {
            2
        } else if self.adj[i][j] {
            -1
        } else {
            0
        }
    }

    /// Nodes in the total order: even vertices first, each group by index.
    pub fn node_order(&self) -> &[usize] {
        &self.order
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }
}

fn build_adjacency(rank: usize, edges: &[(usize, usize)]) -> Result<Vec<Vec<bool>>> {
    if rank == 0 {
        return Err(Error::InvalidCartan("rank must be positive".into()));
    }
    let mut adj = vec![vec![false; rank]; rank];
    for &(a, b) in edges {
        if a >= rank || b >= rank {
            return Err(Error::InvalidCartan(format!(
                "edge ({},{}) out of range for rank {}",
                a + 1,
                b + 1,
                rank
            )));
        }
        if a == b {
            return Err(Error::InvalidCartan(format!("loop at node {}", a + 1)));
        }
        if adj[a][b] {
            return Err(Error::InvalidCartan(format!(
                "duplicate edge ({},{})",
                a + 1,
                b + 1
            )));
        }
        adj[a][b] = true;
        adj[b][a] = true;
    }
    Ok(adj)
}

fn two_coloring(rank: usize, adj: &[Vec<bool>]) -> Result<Vec<u8>> {
    let mut parity = vec![u8::MAX; rank];
    for start in 0..rank {
        if parity[start] != u8::MAX {
            continue;
        }
        parity[start] = 0;
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for w in 0..rank {
                if adj[v][w] {
                    if parity[w] == u8::MAX {
                        parity[w] = 1 - parity[v];
                        queue.push_back(w);
                    } else if parity[w] == parity[v] {
                        return Err(Error::InvalidCartan("graph is not bipartite".into()));
                    }
                }
            }
        }
    }
    Ok(parity)
}

/// Classify a connected simple graph as a finite-type simply-laced Dynkin
/// diagram and return its label, or reject it with a precise reason.
fn classify_finite_type(rank: usize, adj: &[Vec<bool>]) -> Result<String> {
    let degree = |i: usize| (0..rank).filter(|&j| adj[i][j]).count();
    // connectivity
    let mut seen = vec![false; rank];
    let mut queue = VecDeque::from([0usize]);
    seen[0] = true;
    let mut count = 1;
    while let Some(v) = queue.pop_front() {
        for w in 0..rank {
            if adj[v][w] && !seen[w] {
                seen[w] = true;
                count += 1;
                queue.push_back(w);
            }
        }
    }
    if count != rank {
        return Err(Error::InvalidCartan("graph is not connected".into()));
    }
    let edge_count: usize = (0..rank).map(degree).sum::<usize>() / 2;
    if edge_count != rank - 1 {
        return Err(Error::InvalidCartan("graph contains a cycle".into()));
    }
    if let Some(i) = (0..rank).find(|&i| degree(i) >= 4) {
        return Err(Error::InvalidCartan(format!(
            "node {} has degree >= 4",
            i + 1
        )));
    }
    let trivalent: Vec<usize> = (0..rank).filter(|&i| degree(i) == 3).collect();
    match trivalent.len() {
        0 => Ok(format!("A{rank}")),
        1 => {
            let center = trivalent[0];
            // branch lengths from the trivalent node
            let mut lengths: Vec<usize> = (0..rank)
                .filter(|&j| adj[center][j])
                .map(|mut prev_next| {
                    let mut prev = center;
                    let mut len = 1;
                    loop {
                        let next = (0..rank)
                            .find(|&k| adj[prev_next][k] && k != prev);
                        match next {
                            Some(k) => {
                                prev = prev_next;
                                prev_next = k;
                                len += 1;
                            }
                            None => break len,
                        }
                    }
                })
                .collect();
            lengths.sort_unstable();
            match lengths.as_slice() {
                [1, 1, _] => Ok(format!("D{rank}")),
                [1, 2, 2] => Ok("E6".into()),
                [1, 2, 3] => Ok("E7".into()),
                [1, 2, 4] => Ok("E8".into()),
                other => Err(Error::InvalidCartan(format!(
                    "branch lengths {other:?} are not of finite type"
                ))),
            }
        }
        _ => Err(Error::InvalidCartan(
            "more than one trivalent node".into(),
        )),
    }
}

/// An element of h*, stored in simple-root coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightVec {
    pub coords: Vec<Rat>,
}

/// A linear form on h is the same data as an element of h*.
pub type LinForm = WeightVec;

impl WeightVec {
    pub fn zero(rank: usize) -> Self {
        WeightVec {
            coords: vec![Rat::zero(); rank],
        }
    }

    pub fn simple_root(rank: usize, i: usize) -> Self {
        let mut w = Self::zero(rank);
        w.coords[i] = Rat::one();
        w
    }

    pub fn from_integers(coords: &[i64]) -> Self {
        WeightVec {
            coords: coords.iter().map(|&c| int(c)).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Rat::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        WeightVec {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        WeightVec {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        WeightVec {
            coords: self.coords.iter().map(|a| -a).collect(),
        }
    }

    pub fn scale(&self, s: &Rat) -> Self {
        WeightVec {
            coords: self.coords.iter().map(|a| a * s).collect(),
        }
    }

    /// Pairing with the simple coroot: <beta, alpha_i^vee>.
    pub fn pairing(&self, datum: &CartanDatum, i: usize) -> Rat {
        let mut acc = Rat::zero();
        for (j, c) in self.coords.iter().enumerate() {
            let a = datum.cartan(i, j);
            if a != 0 {
                acc += c * int(a);
            }
        }
        acc
    }

    /// Fundamental-weight coordinates (the vector of coroot pairings).
    pub fn to_fundamental(&self, datum: &CartanDatum) -> Vec<Rat> {
        (0..datum.rank()).map(|i| self.pairing(datum, i)).collect()
    }

    /// Inverse of [`Self::to_fundamental`]; exact because the Cartan matrix
    /// of a finite-type datum is invertible.
    pub fn from_fundamental(datum: &CartanDatum, fund: &[Rat]) -> Self {
        let r = datum.rank();
        let m: Vec<Vec<Rat>> = (0..r)
            .map(|i| (0..r).map(|j| int(datum.cartan(i, j))).collect())
            .collect();
        let coords = solve_linear(&m, fund).expect("Cartan matrix is invertible");
        WeightVec { coords }
    }

    pub fn fundamental(datum: &CartanDatum, i: usize) -> Self {
        let mut fund = vec![Rat::zero(); datum.rank()];
        fund[i] = Rat::one();
        Self::from_fundamental(datum, &fund)
    }

    /// Height: the sum of simple-root coordinates, i.e. the pairing with
    /// rho^vee.
    pub fn height(&self) -> Rat {
        let mut acc = Rat::zero();
        for c in &self.coords {
            acc += c;
        }
        acc
    }

    pub fn is_dominant(&self, datum: &CartanDatum) -> bool {
        (0..datum.rank()).all(|i| !self.pairing(datum, i).is_negative())
    }

    /// For a root vector (coordinates all of one sign): is it positive?
    pub fn is_positive_root(&self) -> bool {
        self.coords
            .iter()
            .find(|c| !c.is_zero())
            .map(|c| c.is_positive())
            .unwrap_or(false)
    }
}

impl fmt::Display for WeightVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if first {
                if sign(c) < 0 {
                    write!(f, "-")?;
                }
                first = false;
            } else if sign(c) < 0 {
                write!(f, "-")?;
            } else {
                write!(f, "+")?;
            }
            let abs = c.abs();
            if abs.is_one() {
                write!(f, "a{}", i + 1)?;
            } else {
                write!(f, "{}*a{}", crate::rat::format_rat(&abs), i + 1)?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// A finite word in the simple reflections (0-based node indices).
pub type WeylWord = Vec<usize>;

/// A Weyl-group element, canonicalized by its integer matrix acting on the
/// simple-root basis (columns are the images of the simple roots).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylElement {
    rank: usize,
    /// Row-major r x r matrix.
    mat: Vec<i64>,
}

impl WeylElement {
    pub fn identity(rank: usize) -> Self {
        let mut mat = vec![0; rank * rank];
        for i in 0..rank {
            mat[i * rank + i] = 1;
        }
        WeylElement { rank, mat }
    }

    pub fn simple_reflection(datum: &CartanDatum, i: usize) -> Self {
        let r = datum.rank();
        let mut w = Self::identity(r);
        // s_i(alpha_j) = alpha_j - a_ij alpha_i
        for j in 0..r {
            w.mat[i * r + j] -= datum.cartan(i, j);
        }
        w
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Composition: (self * other)(v) = self(other(v)).
    pub fn compose(&self, other: &Self) -> Self {
        let r = self.rank;
        let mut mat = vec![0i64; r * r];
        for i in 0..r {
            for k in 0..r {
                let a = self.mat[i * r + k];
                if a != 0 {
                    for j in 0..r {
                        mat[i * r + j] += a * other.mat[k * r + j];
                    }
                }
            }
        }
        WeylElement { rank: r, mat }
    }

    pub fn from_word(datum: &CartanDatum, word: &[usize]) -> Self {
        word.iter().fold(Self::identity(datum.rank()), |acc, &i| {
            acc.compose(&Self::simple_reflection(datum, i))
        })
    }

    pub fn inverse(&self) -> Self {
        // Entries of Weyl matrices are integers and so is the inverse; solve
        // column by column over the rationals and read the integers back.
        let r = self.rank;
        let m: Vec<Vec<Rat>> = (0..r)
            .map(|i| (0..r).map(|j| int(self.mat[i * r + j])).collect())
            .collect();
        let mut mat = vec![0i64; r * r];
        for col in 0..r {
            let mut rhs = vec![Rat::zero(); r];
            rhs[col] = Rat::one();
            let x = solve_linear(&m, &rhs).expect("Weyl matrix is invertible");
            for (row, v) in x.iter().enumerate() {
                debug_assert!(v.is_integer());
                mat[row * r + col] = i64::try_from(v.to_integer()).expect("small entry");
            }
        }
        WeylElement { rank: r, mat }
    }

    pub fn apply(&self, v: &WeightVec) -> WeightVec {
        let r = self.rank;
        let coords = (0..r)
            .map(|i| {
                let mut acc = Rat::zero();
                for j in 0..r {
                    let a = self.mat[i * r + j];
                    if a != 0 {
                        acc += &v.coords[j] * int(a);
                    }
                }
                acc
            })
            .collect();
        WeightVec { coords }
    }

    /// Image of the simple root alpha_i (column i).
    pub fn apply_simple(&self, i: usize) -> Vec<i64> {
        (0..self.rank).map(|row| self.mat[row * self.rank + i]).collect()
    }

    /// Does this element send alpha_i to a negative root?
    pub fn sends_simple_negative(&self, i: usize) -> bool {
        let col = self.apply_simple(i);
        col.iter().find(|&&c| c != 0).map(|&c| c < 0).unwrap_or(false)
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.rank)
    }

    /// Coxeter length, computed as the number of inversions.
    pub fn length(&self, datum: &CartanDatum) -> usize {
        inversion_set(datum, self).len()
    }
}

/// All positive roots, obtained as the closure of the simple roots under
/// simple reflections. Sorted by (height, coordinates).
pub fn positive_roots(datum: &CartanDatum) -> Vec<WeightVec> {
    let r = datum.rank();
    let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut queue: VecDeque<Vec<i64>> = VecDeque::new();
    for i in 0..r {
        let mut v = vec![0i64; r];
        v[i] = 1;
        seen.insert(v.clone());
        queue.push_back(v);
    }
    while let Some(v) = queue.pop_front() {
        for i in 0..r {
            // s_i(v) = v - <v, alpha_i^vee> alpha_i with integer coordinates
            let pairing: i64 = (0..r).map(|j| datum.cartan(i, j) * v[j]).sum();
            let mut w = v.clone();
            w[i] -= pairing;
            if w.iter().all(|&c| c >= 0) && seen.insert(w.clone()) {
                queue.push_back(w);
            }
        }
    }
    let mut roots: Vec<WeightVec> = seen
        .into_iter()
        .map(|v| WeightVec::from_integers(&v))
        .collect();
    roots.sort_by_key(|w| (w.height(), w.coords.clone()));
    roots
}

/// The inversion set {alpha > 0 : w(alpha) < 0}; its cardinality is the
/// Coxeter length of w.
pub fn inversion_set(datum: &CartanDatum, w: &WeylElement) -> Vec<WeightVec> {
    positive_roots(datum)
        .into_iter()
        .filter(|alpha| !w.apply(alpha).is_positive_root())
        .collect()
}

/// All reduced words for `w`, canonically sorted.
pub fn reduced_words(datum: &CartanDatum, w: &WeylElement) -> Vec<WeylWord> {
    reduced_words_mode(datum, w, Mode::auto())
}

pub fn reduced_words_mode(datum: &CartanDatum, w: &WeylElement, mode: Mode) -> Vec<WeylWord> {
    fn descend(datum: &CartanDatum, w: &WeylElement, out: &mut Vec<WeylWord>, suffix: &mut WeylWord) {
        if w.is_identity() {
            let mut word = suffix.clone();
            word.reverse();
            out.push(word);
            return;
        }
        for i in 0..datum.rank() {
            // l(w s_i) < l(w) iff w(alpha_i) < 0, so i can end a reduced word
            if w.sends_simple_negative(i) {
                let shorter = w.compose(&WeylElement::simple_reflection(datum, i));
                suffix.push(i);
                descend(datum, &shorter, out, suffix);
                suffix.pop();
            }
        }
    }

    let descents: Vec<usize> = (0..datum.rank())
        .filter(|&i| w.sends_simple_negative(i))
        .collect();
    if descents.is_empty() {
        return vec![vec![]];
    }
    let branches = exec::map_collect(mode, &descents, |&i| {
        let shorter = w.compose(&WeylElement::simple_reflection(datum, i));
        let mut out = Vec::new();
        let mut suffix = vec![i];
        descend(datum, &shorter, &mut out, &mut suffix);
        out
    });
    let mut words: Vec<WeylWord> = branches.into_iter().flatten().collect();
    words.sort();
    words
}

/// Is the fundamental weight of node `i` minuscule? Equivalent to every
/// positive root having alpha_i-coefficient at most one.
pub fn is_minuscule(datum: &CartanDatum, i: usize) -> bool {
    positive_roots(datum)
        .iter()
        .all(|alpha| alpha.coords[i] <= Rat::one())
}

/// The Weyl orbit of a weight, sorted canonically.
pub fn weyl_orbit(datum: &CartanDatum, lambda: &WeightVec) -> Vec<WeightVec> {
    let mut seen: BTreeSet<Vec<Rat>> = BTreeSet::new();
    seen.insert(lambda.coords.clone());
    let mut queue = VecDeque::from([lambda.clone()]);
    while let Some(v) = queue.pop_front() {
        for i in 0..datum.rank() {
            let p = v.pairing(datum, i);
            if !p.is_zero() {
                let mut w = v.clone();
                w.coords[i] -= p;
                if seen.insert(w.coords.clone()) {
                    queue.push_back(w);
                }
            }
        }
    }
    seen.into_iter().map(|coords| WeightVec { coords }).collect()
}

/// Lowest weight of the orbit: the unique antidominant element.
pub fn lowest_in_orbit(datum: &CartanDatum, lambda: &WeightVec) -> WeightVec {
    let mut cur = lambda.clone();
    loop {
        match (0..datum.rank()).find(|&i| cur.pairing(datum, i).is_positive()) {
            Some(i) => {
                let p = cur.pairing(datum, i);
                cur.coords[i] -= p;
            }
            None => return cur,
        }
    }
}

/// The unique minimal-length Weyl element sending the fundamental weight of
/// the minuscule node `i` to `mu`.
///
/// Works greedily: repeatedly reflect `mu` upward along any descent until the
/// dominant chamber is reached; the recorded reflections, read in reverse
/// application order, form a reduced word for the answer.
pub fn minuscule_orbit_rep(datum: &CartanDatum, i: usize, mu: &WeightVec) -> Result<WeylElement> {
    if !is_minuscule(datum, i) {
        return Err(Error::NotMinuscule(i + 1));
    }
    let word = minuscule_orbit_word(datum, i, mu)?;
    Ok(WeylElement::from_word(datum, &word))
}

/// Reduced word (in composition order) for [`minuscule_orbit_rep`].
pub fn minuscule_orbit_word(datum: &CartanDatum, i: usize, mu: &WeightVec) -> Result<WeylWord> {
    let target = WeightVec::fundamental(datum, i);
    let mut cur = mu.clone();
    let mut word = Vec::new();
    while let Some(j) = (0..datum.rank()).find(|&j| cur.pairing(datum, j).is_negative()) {
        let p = cur.pairing(datum, j);
        cur.coords[j] -= p;
        word.push(j);
    }
    if cur != target {
        return Err(Error::NotExtremal);
    }
    Ok(word)
}

/// Dimension of the irreducible highest-weight representation, by the Weyl
/// dimension formula.
pub fn weyl_dim(datum: &CartanDatum, lambda: &WeightVec) -> Rat {
    let rho = {
        let fund = vec![Rat::one(); datum.rank()];
        WeightVec::from_fundamental(datum, &fund)
    };
    let lam_rho = lambda.add(&rho);
    let mut num = Rat::one();
    let mut den = Rat::one();
    for alpha in positive_roots(datum) {
        // simply-laced: <beta, alpha^vee> equals the sum over the root's
        // coordinates of the coroot pairings
        let pair = |beta: &WeightVec| -> Rat {
            let mut acc = Rat::zero();
            for (j, c) in alpha.coords.iter().enumerate() {
                if !c.is_zero() {
                    acc += c * beta.pairing(datum, j);
                }
            }
            acc
        };
        num *= pair(&lam_rho);
        den *= pair(&rho);
    }
    num / den
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> CartanDatum {
        CartanDatum::from_type("A2").unwrap()
    }

    #[test]
    fn classifies_types() {
        assert_eq!(CartanDatum::from_type("A1").unwrap().label(), "A1");
        assert_eq!(CartanDatum::from_type("D4").unwrap().label(), "D4");
        assert_eq!(CartanDatum::from_type("E6").unwrap().label(), "E6");
        assert_eq!(CartanDatum::from_type("E8").unwrap().label(), "E8");
        // affine D4 (degree-4 star) and a cycle are rejected
        assert!(CartanDatum::new(5, &[(0, 1), (1, 2), (1, 3), (1, 4)]).is_err());
        assert!(CartanDatum::new(3, &[(0, 1), (1, 2), (2, 0)]).is_err());
        // affine E6: branch lengths (2,2,2)
        assert!(CartanDatum::new(
            7,
            &[(0, 1), (1, 2), (2, 3), (3, 4), (2, 5), (5, 6)]
        )
        .is_err());
        // two trivalent nodes
        assert!(CartanDatum::new(
            6,
            &[(0, 2), (1, 2), (2, 3), (3, 4), (3, 5)]
        )
        .is_err());
    }

    #[test]
    fn parity_respects_bipartition() {
        let d = CartanDatum::with_parity(3, &[(0, 1), (1, 2)], vec![1, 0, 1]).unwrap();
        assert_eq!(d.node_order(), &[1, 0, 2]);
        assert!(CartanDatum::with_parity(2, &[(0, 1)], vec![0, 0]).is_err());
    }

    #[test]
    fn positive_roots_small_types() {
        // A2 -> {a1, a2, a1+a2}
        let roots = positive_roots(&a2());
        let coords: Vec<Vec<i64>> = roots
            .iter()
            .map(|r| r.coords.iter().map(|c| i64::try_from(c.to_integer()).unwrap()).collect())
            .collect();
        assert_eq!(coords, vec![vec![0, 1], vec![1, 0], vec![1, 1]]);
        // A1 -> {a1}
        assert_eq!(positive_roots(&CartanDatum::from_type("A1").unwrap()).len(), 1);
        // D4 -> 12 positive roots, cross-checked by reflection closure
        assert_eq!(positive_roots(&CartanDatum::from_type("D4").unwrap()).len(), 12);
    }

    #[test]
    fn simple_reflections_are_involutions_and_braid() {
        let d = a2();
        let s1 = WeylElement::simple_reflection(&d, 0);
        let s2 = WeylElement::simple_reflection(&d, 1);
        assert!(s1.compose(&s1).is_identity());
        assert_eq!(
            s1.compose(&s2).compose(&s1),
            s2.compose(&s1).compose(&s2)
        );
    }

    #[test]
    fn reduced_words_oracle_small() {
        let d = a2();
        // oracle: enumerate all words of length l(w) and keep those that
        // multiply to w
        let oracle = |w: &WeylElement| -> Vec<WeylWord> {
            let len = w.length(&d);
            let mut found = Vec::new();
            let mut stack = vec![vec![]];
            for _ in 0..len {
                let mut next = Vec::new();
                for word in stack {
                    for i in 0..d.rank() {
                        let mut w2 = word.clone();
                        w2.push(i);
                        next.push(w2);
                    }
                }
                stack = next;
            }
            for word in stack {
                if &WeylElement::from_word(&d, &word) == w {
                    found.push(word);
                }
            }
            found.sort();
            found
        };

        let w = WeylElement::from_word(&d, &[1, 0]); // s2 s1
        assert_eq!(reduced_words(&d, &w), vec![vec![1, 0]]);
        assert_eq!(reduced_words(&d, &w), oracle(&w));

        let w0 = WeylElement::from_word(&d, &[0, 1, 0]);
        let words = reduced_words(&d, &w0);
        assert_eq!(words, vec![vec![0, 1, 0], vec![1, 0, 1]]);
        assert_eq!(words, oracle(&w0));

        let id = WeylElement::identity(2);
        assert_eq!(reduced_words(&d, &id), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn inversion_sets() {
        let d = a2();
        let w = WeylElement::from_word(&d, &[1, 0]);
        let inv = inversion_set(&d, &w);
        let coords: Vec<Vec<i64>> = inv
            .iter()
            .map(|r| r.coords.iter().map(|c| i64::try_from(c.to_integer()).unwrap()).collect())
            .collect();
        assert_eq!(coords, vec![vec![1, 0], vec![1, 1]]);
        assert!(inversion_set(&d, &WeylElement::identity(2)).is_empty());
        let w0 = WeylElement::from_word(&d, &[0, 1, 0]);
        assert_eq!(inversion_set(&d, &w0).len(), 3);
    }

    #[test]
    fn length_equals_inversion_count_in_rank_up_to_4() {
        for t in ["A3", "D4"] {
            let d = CartanDatum::from_type(t).unwrap();
            // walk the group breadth-first up to length 6 and cross-check
            let mut frontier = vec![(WeylElement::identity(d.rank()), 0usize)];
            let mut seen: BTreeSet<WeylElement> = frontier.iter().map(|(w, _)| w.clone()).collect();
            for len in 1..=6usize {
                let mut next = Vec::new();
                for (w, _) in &frontier {
                    for i in 0..d.rank() {
                        let w2 = w.compose(&WeylElement::simple_reflection(&d, i));
                        if w2.length(&d) == len && seen.insert(w2.clone()) {
                            next.push((w2, len));
                        }
                    }
                }
                for (w, len) in &next {
                    assert_eq!(inversion_set(&d, w).len(), *len);
                }
                frontier = next;
            }
        }
    }

    #[test]
    fn reduced_words_are_braid_connected() {
        // any two reduced words are linked by commutation and braid moves
        fn moves(datum: &CartanDatum, word: &[usize]) -> Vec<WeylWord> {
            let mut out = Vec::new();
            for p in 0..word.len() {
                if p + 1 < word.len() {
                    let (i, j) = (word[p], word[p + 1]);
                    if i != j && !datum.adjacent(i, j) {
                        let mut w = word.to_vec();
                        w.swap(p, p + 1);
                        out.push(w);
                    }
                }
                if p + 2 < word.len() {
                    let (i, j, k) = (word[p], word[p + 1], word[p + 2]);
                    if i == k && i != j && datum.adjacent(i, j) {
                        let mut w = word.to_vec();
                        w[p] = j;
                        w[p + 1] = i;
                        w[p + 2] = j;
                        out.push(w);
                    }
                }
            }
            out
        }
        for t in ["A2", "A3"] {
            let d = CartanDatum::from_type(t).unwrap();
            let mut w0 = WeylElement::identity(d.rank());
            while let Some(i) = (0..d.rank()).find(|&i| !w0.sends_simple_negative(i)) {
                w0 = w0.compose(&WeylElement::simple_reflection(&d, i));
            }
            let words = reduced_words(&d, &w0);
            let set: BTreeSet<WeylWord> = words.iter().cloned().collect();
            // every word multiplies back to w0
            for word in &words {
                assert_eq!(WeylElement::from_word(&d, word), w0);
            }
            let mut reached: BTreeSet<WeylWord> = BTreeSet::new();
            let mut queue = VecDeque::from([words[0].clone()]);
            reached.insert(words[0].clone());
            while let Some(word) = queue.pop_front() {
                for next in moves(&d, &word) {
                    assert!(set.contains(&next), "move left the reduced-word set");
                    if reached.insert(next.clone()) {
                        queue.push_back(next);
                    }
                }
            }
            assert_eq!(reached.len(), words.len(), "type {t}");
        }
    }

    #[test]
    fn fundamental_round_trip() {
        let d = CartanDatum::from_type("A3").unwrap();
        // pseudorandom rational vectors
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..20 {
            let coords: Vec<Rat> = (0..3)
                .map(|_| crate::rat::rat((next() % 19) as i64 - 9, (next() % 7 + 1) as i64))
                .collect();
            let w = WeightVec { coords };
            let fund = w.to_fundamental(&d);
            assert_eq!(WeightVec::from_fundamental(&d, &fund), w);
        }
    }

    #[test]
    fn minuscule_orbit_reps() {
        let d = a2();
        let w1 = WeightVec::fundamental(&d, 0);
        assert!(minuscule_orbit_rep(&d, 0, &w1).unwrap().is_identity());

        // mu = w1 - a1 - a2 -> s2 s1
        let mu = w1.sub(&WeightVec::from_integers(&[1, 1]));
        let w = minuscule_orbit_rep(&d, 0, &mu).unwrap();
        assert_eq!(w, WeylElement::from_word(&d, &[1, 0]));
        // exhaustive check of minimality over words of length <= 2
        for word in [vec![], vec![0], vec![1], vec![0, 1], vec![1, 0], vec![0, 0]] {
            let cand = WeylElement::from_word(&d, &word);
            if cand.apply(&w1) == mu {
                assert!(word.len() >= 2);
            }
        }

        // A3, node 2 (0-based 1), lowest weight: a length-4 element
        let d3 = CartanDatum::from_type("A3").unwrap();
        let lam = WeightVec::fundamental(&d3, 1);
        let low = lowest_in_orbit(&d3, &lam);
        let w = minuscule_orbit_rep(&d3, 1, &low).unwrap();
        assert_eq!(w.length(&d3), 4);

        // weight outside the orbit is rejected
        let bad = WeightVec::from_integers(&[5, 5, 5]);
        assert!(matches!(
            minuscule_orbit_rep(&d3, 1, &bad),
            Err(Error::NotExtremal)
        ));
    }

    #[test]
    fn weyl_dim_formula() {
        let d = a2();
        assert_eq!(weyl_dim(&d, &WeightVec::fundamental(&d, 0)), int(3));
        let adjoint = WeightVec::from_integers(&[1, 1]);
        assert_eq!(weyl_dim(&d, &adjoint), int(8));
        let d4 = CartanDatum::from_type("D4").unwrap();
        assert_eq!(weyl_dim(&d4, &WeightVec::fundamental(&d4, 1)), int(28));
    }

    #[test]
    fn orbit_sizes() {
        let d = CartanDatum::from_type("A3").unwrap();
        assert_eq!(weyl_orbit(&d, &WeightVec::fundamental(&d, 0)).len(), 4);
        assert_eq!(weyl_orbit(&d, &WeightVec::fundamental(&d, 1)).len(), 6);
        let d4 = CartanDatum::from_type("D4").unwrap();
        assert_eq!(weyl_orbit(&d4, &WeightVec::fundamental(&d4, 0)).len(), 8);
    }
}
