//! Finite-type Cartan data, almost positive roots, and the `τ_c` dynamics
//! that define c-compatibility and c-clusters.
//!
//! Reflections act on coefficient vectors in the simple-root basis by
//! `s_i(α_j) = α_j − C_ij α_i`, so row `i` of the Cartan matrix holds the
//! coroot pairings `⟨α_i^∨, α_j⟩`.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use fixedbitset::FixedBitSet;
use num_integer::Integer;
use serde::{Serialize, Serializer};

use crate::error::{input, internal, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DynkinType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl FromStr for DynkinType {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.trim().to_ascii_uppercase().as_str() {
            "A" => Self::A,
            "B" => Self::B,
            "C" => Self::C,
            "D" => Self::D,
            "E" => Self::E,
            "F" => Self::F,
            "G" => Self::G,
            other => return input(format!("unknown Dynkin type {other:?}")),
        })
    }
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Self::A => "A",
            Self::B => "B",
            Self::C => "C",
            Self::D => "D",
            Self::E => "E",
            Self::F => "F",
            Self::G => "G",
        };
        f.write_str(s)
    }
}

/// Cartan matrix of a connected finite-type Dynkin diagram together with its
/// minimal symmetrizer `D` (so that `D·C` is symmetric).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CartanSpec {
    pub dynkin_type: DynkinType,
    pub rank: usize,
    pub cartan: Vec<Vec<i64>>,
    pub symmetrizer: Vec<i64>,
}

impl Serialize for DynkinType {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Standard Cartan matrix for a finite-type `(type, rank)` pair.
///
/// Labelling follows Bourbaki for `A`–`F`; for `G2` the second simple root is
/// the short one, giving `C = [[2,-1],[-3,2]]`.
pub fn cartan_matrix(dynkin_type: DynkinType, rank: usize) -> Result<CartanSpec> {
    use DynkinType::*;
    let valid = match dynkin_type {
        A => rank >= 1,
        B => rank >= 2,
        C => rank >= 3,
        D => rank >= 4,
        E => (6..=8).contains(&rank),
        F => rank == 4,
        G => rank == 2,
    };
    if !valid {
        return input(format!("{dynkin_type}{rank} is not a finite-type Dynkin diagram"));
    }
    let n = rank;
    let mut c = vec![vec![0i64; n]; n];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut link = |i: usize, j: usize, cij: i64, cji: i64| {
        c[i][j] = cij;
        c[j][i] = cji;
    };
    match dynkin_type {
        A => (0..n - 1).for_each(|i| link(i, i + 1, -1, -1)),
        B => {
            (0..n - 2).for_each(|i| link(i, i + 1, -1, -1));
            link(n - 2, n - 1, -1, -2);
        }
        C => {
            (0..n - 2).for_each(|i| link(i, i + 1, -1, -1));
            link(n - 2, n - 1, -2, -1);
        }
        D => {
            (0..n - 2).for_each(|i| link(i, i + 1, -1, -1));
            link(n - 3, n - 1, -1, -1);
        }
        E => {
            link(0, 2, -1, -1);
            link(1, 3, -1, -1);
            (2..n - 1).for_each(|i| link(i, i + 1, -1, -1));
        }
        F => {
            link(0, 1, -1, -1);
            link(1, 2, -1, -2);
            link(2, 3, -1, -1);
        }
        G => link(0, 1, -1, -3),
    }
    let symmetrizer = minimal_symmetrizer(&c)?;
    let spec = CartanSpec { dynkin_type, rank, cartan: c, symmetrizer };
    spec.validate()?;
    Ok(spec)
}

/// Componentwise-minimal positive `d` with `d_i C_ij = d_j C_ji`, assuming a
/// connected diagram.
fn minimal_symmetrizer(c: &[Vec<i64>]) -> Result<Vec<i64>> {
    let n = c.len();
    // d_i as reduced fractions num/den
    let mut d: Vec<Option<(i64, i64)>> = vec![None; n];
    d[0] = Some((1, 1));
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        let (num, den) = d[i].unwrap();
        for j in 0..n {
            if i == j || c[i][j] == 0 || d[j].is_some() {
                continue;
            }
            // d_j = d_i C_ij / C_ji
            let (p, q) = (num * c[i][j], den * c[j][i]);
            let g = p.gcd(&q);
            let (p, q) = if q / g < 0 { (-p / g, -q / g) } else { (p / g, q / g) };
            d[j] = Some((p, q));
            queue.push_back(j);
        }
    }
    let fracs: Vec<(i64, i64)> = d
        .into_iter()
        .map(|x| x.ok_or_else(|| crate::Error::Input("Dynkin diagram is disconnected".into())))
        .collect::<Result<_>>()?;
    let lcm = fracs.iter().fold(1i64, |acc, &(_, q)| acc.lcm(&q));
    let ints: Vec<i64> = fracs.iter().map(|&(p, q)| p * (lcm / q)).collect();
    let g = ints.iter().fold(0i64, |acc, &x| acc.gcd(&x));
    Ok(ints.into_iter().map(|x| x / g).collect())
}

impl CartanSpec {
    pub fn validate(&self) -> Result<()> {
        let n = self.rank;
        if self.cartan.len() != n || self.cartan.iter().any(|r| r.len() != n) {
            return input("Cartan matrix shape does not match rank");
        }
        if self.symmetrizer.len() != n || self.symmetrizer.iter().any(|&d| d <= 0) {
            return input("symmetrizer must have rank-many positive entries");
        }
        for i in 0..n {
            if self.cartan[i][i] != 2 {
                return input(format!("C[{i}][{i}] != 2"));
            }
            for j in 0..n {
                let (a, b) = (self.cartan[i][j], self.cartan[j][i]);
                if i != j && (a > 0 || (a == 0) != (b == 0)) {
                    return input(format!("bad off-diagonal Cartan entries at ({i},{j})"));
                }
                if self.symmetrizer[i] * a != self.symmetrizer[j] * b {
                    return input(format!("D·C is not symmetric at ({i},{j})"));
                }
            }
        }
        Ok(())
    }

    /// `s_i(v) = v − ⟨α_i^∨, v⟩ α_i`.
    pub fn reflect(&self, i: usize, v: &[i64]) -> Vec<i64> {
        let pairing: i64 = (0..self.rank).map(|j| self.cartan[i][j] * v[j]).sum();
        let mut out = v.to_vec();
        out[i] -= pairing;
        out
    }

    pub fn name(&self) -> String {
        format!("{}{}", self.dynkin_type, self.rank)
    }
}

/// An element of `Φ_{≥−1}` written in the simple-root basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root(pub Vec<i64>);

impl Root {
    pub fn simple(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        Self(v)
    }

    pub fn negative_simple(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = -1;
        Self(v)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&x| x >= 0) && self.0.iter().any(|&x| x > 0)
    }

    pub fn is_negative(&self) -> bool {
        self.0.iter().all(|&x| x <= 0) && self.0.iter().any(|&x| x < 0)
    }

    /// `Some(i)` if this is `−α_i`.
    pub fn negative_simple_index(&self) -> Option<usize> {
        let mut found = None;
        for (i, &x) in self.0.iter().enumerate() {
            match x {
                0 => {}
                -1 if found.is_none() => found = Some(i),
                _ => return None,
            }
        }
        found
    }

    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "]")
    }
}

impl Serialize for Root {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

/// A Coxeter element `c = s_{c_1} ⋯ s_{c_n}`, stored as the 0-based order of
/// its letters.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoxeterElement {
    order: Vec<usize>,
    position: Vec<usize>,
}

impl CoxeterElement {
    pub fn new(order: Vec<usize>) -> Result<Self> {
        let n = order.len();
        let mut position = vec![usize::MAX; n];
        for (p, &i) in order.iter().enumerate() {
            if i >= n || position[i] != usize::MAX {
                return input(format!("{order:?} is not a permutation of 0..{n}"));
            }
            position[i] = p;
        }
        Ok(Self { order, position })
    }

    pub fn from_one_based(order: &[usize]) -> Result<Self> {
        if order.contains(&0) {
            return input("Coxeter letters are numbered from 1");
        }
        Self::new(order.iter().map(|&i| i - 1).collect()).map_err(|_| {
            let word: Vec<String> = order.iter().map(ToString::to_string).collect();
            crate::Error::Input(format!("{} is not a permutation of 1..{}", word.join(","), order.len()))
        })
    }

    /// `s_1 s_2 ⋯ s_n`.
    pub fn standard(n: usize) -> Self {
        Self::new((0..n).collect()).unwrap()
    }

    pub fn rank(&self) -> usize {
        self.order.len()
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// Position of letter `i` in the word.
    pub fn position(&self, i: usize) -> usize {
        self.position[i]
    }

    /// `c^{-1}`, the reversed word.
    pub fn inverse(&self) -> Self {
        Self::new(self.order.iter().rev().copied().collect()).unwrap()
    }

    /// Every ordering of `0..n`, in lexicographic order.
    pub fn all(n: usize) -> Vec<Self> {
        fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
            if prefix.len() == used.len() {
                out.push(prefix.clone());
                return;
            }
            for i in 0..used.len() {
                if !used[i] {
                    used[i] = true;
                    prefix.push(i);
                    rec(prefix, used, out);
                    prefix.pop();
                    used[i] = false;
                }
            }
        }
        let mut out = Vec::new();
        rec(&mut Vec::new(), &mut vec![false; n], &mut out);
        out.into_iter().map(|o| Self::new(o).unwrap()).collect()
    }
}

impl fmt::Display for CoxeterElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (p, i) in self.order.iter().enumerate() {
            if p > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", i + 1)?;
        }
        Ok(())
    }
}

const ROOT_CAP: usize = 10_000;

/// `Φ^+` by saturating the simple roots under simple reflections, keeping
/// only nonnegative vectors. Sorted lexicographically.
pub fn positive_roots(spec: &CartanSpec) -> Result<Vec<Root>> {
    let n = spec.rank;
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut queue: VecDeque<Vec<i64>> = VecDeque::new();
    for i in 0..n {
        let r = Root::simple(n, i).0;
        seen.insert(r.clone());
        queue.push_back(r);
    }
    while let Some(v) = queue.pop_front() {
        for i in 0..n {
            let w = spec.reflect(i, &v);
            if w.iter().all(|&x| x >= 0) && seen.insert(w.clone()) {
                if seen.len() > ROOT_CAP {
                    return internal("positive-root saturation exceeded its cap");
                }
                queue.push_back(w);
            }
        }
    }
    let mut roots: Vec<Root> = seen.into_iter().map(Root).collect();
    roots.sort();
    Ok(roots)
}

/// `Φ^+` and `Φ_{≥−1}` with index lookup.
#[derive(Clone, Debug)]
pub struct RootSystem {
    spec: CartanSpec,
    positive: Vec<Root>,
    almost_positive: Vec<Root>,
    index: HashMap<Root, usize>,
}

impl RootSystem {
    pub fn new(spec: CartanSpec) -> Result<Self> {
        spec.validate()?;
        let positive = positive_roots(&spec)?;
        let mut almost_positive: Vec<Root> = (0..spec.rank).map(|i| Root::negative_simple(spec.rank, i)).collect();
        almost_positive.extend(positive.iter().cloned());
        almost_positive.sort();
        let index = almost_positive.iter().enumerate().map(|(i, r)| (r.clone(), i)).collect();
        Ok(Self { spec, positive, almost_positive, index })
    }

    pub fn spec(&self) -> &CartanSpec {
        &self.spec
    }

    pub fn rank(&self) -> usize {
        self.spec.rank
    }

    pub fn positive(&self) -> &[Root] {
        &self.positive
    }

    pub fn almost_positive(&self) -> &[Root] {
        &self.almost_positive
    }

    pub fn contains(&self, root: &Root) -> bool {
        self.index.contains_key(root)
    }

    pub fn index_of(&self, root: &Root) -> Option<usize> {
        self.index.get(root).copied()
    }

    fn check(&self, root: &Root) -> Result<()> {
        if root.0.len() != self.rank() || !self.contains(root) {
            return input(format!("{root} is not an almost positive root of {}", self.spec.name()));
        }
        Ok(())
    }
}

/// `σ_i`: fixes `−α_j` for `j ≠ i`, otherwise acts as `s_i`.
pub fn sigma(rs: &RootSystem, i: usize, root: &Root) -> Result<Root> {
    rs.check(root)?;
    if i >= rs.rank() {
        return input(format!("reflection index {i} out of range"));
    }
    Ok(sigma_unchecked(rs.spec(), i, root))
}

fn sigma_unchecked(spec: &CartanSpec, i: usize, root: &Root) -> Root {
    match root.negative_simple_index() {
        Some(j) if j != i => root.clone(),
        _ => Root(spec.reflect(i, &root.0)),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Inverse,
}

/// `τ_c = σ_{c_1} ∘ ⋯ ∘ σ_{c_n}` or its inverse.
pub fn tau(rs: &RootSystem, c: &CoxeterElement, root: &Root, direction: Direction) -> Result<Root> {
    rs.check(root)?;
    check_coxeter(rs, c)?;
    Ok(tau_unchecked(rs.spec(), c, root, direction))
}

fn tau_unchecked(spec: &CartanSpec, c: &CoxeterElement, root: &Root, direction: Direction) -> Root {
    let mut r = root.clone();
    match direction {
        Direction::Forward => {
            for &i in c.order().iter().rev() {
                r = sigma_unchecked(spec, i, &r);
            }
        }
        Direction::Inverse => {
            for &i in c.order() {
                r = sigma_unchecked(spec, i, &r);
            }
        }
    }
    r
}

fn check_coxeter(rs: &RootSystem, c: &CoxeterElement) -> Result<()> {
    if c.rank() != rs.rank() {
        return input(format!("Coxeter element {c} has the wrong rank for {}", rs.spec.name()));
    }
    Ok(())
}

fn orbit_cap(rs: &RootSystem) -> usize {
    4 * rs.almost_positive().len()
}

/// `R_c(α)`: the least `m ≥ 0` with `τ_c^{−m}(α) ∈ −Δ`.
pub fn r_degree(rs: &RootSystem, c: &CoxeterElement, root: &Root) -> Result<usize> {
    rs.check(root)?;
    check_coxeter(rs, c)?;
    let mut r = root.clone();
    for m in 0..=orbit_cap(rs) {
        if r.negative_simple_index().is_some() {
            return Ok(m);
        }
        r = tau_unchecked(rs.spec(), c, &r, Direction::Inverse);
    }
    internal(format!("τ_c^-1 orbit of {root} never reaches a negative simple root"))
}

/// `(α ∥_c β)`, by moving both arguments along `τ_c^{−1}` until `α` is a
/// negative simple root `−α_i`, then reading `max(0, b_i)`.
pub fn compatibility_degree(rs: &RootSystem, c: &CoxeterElement, alpha: &Root, beta: &Root) -> Result<u64> {
    rs.check(beta)?;
    let steps = r_degree(rs, c, alpha)?;
    let (mut a, mut b) = (alpha.clone(), beta.clone());
    for _ in 0..steps {
        a = tau_unchecked(rs.spec(), c, &a, Direction::Inverse);
        b = tau_unchecked(rs.spec(), c, &b, Direction::Inverse);
    }
    let i = a.negative_simple_index().expect("r_degree guarantees a negative simple root");
    Ok(b.0[i].max(0) as u64)
}

/// A c-cluster: a sorted set of almost positive roots.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct CCluster(pub Vec<Root>);

impl CCluster {
    pub fn new(mut roots: Vec<Root>) -> Self {
        roots.sort();
        Self(roots)
    }

    pub fn roots(&self) -> &[Root] {
        &self.0
    }

    pub fn contains(&self, r: &Root) -> bool {
        self.0.binary_search(r).is_ok()
    }
}

impl fmt::Display for CCluster {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, r) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, "}}")
    }
}

/// Tabulated `τ_c`, `R_c` and c-compatibility over `Φ_{≥−1}` for one
/// Coxeter element. Roots are referred to by their index in
/// [`RootSystem::almost_positive`].
#[derive(Clone, Debug)]
pub struct CoxeterDynamics {
    rs: RootSystem,
    c: CoxeterElement,
    tau_fwd: Vec<usize>,
    tau_inv: Vec<usize>,
    r: Vec<usize>,
    degree: Vec<u64>,
}

impl CoxeterDynamics {
    pub fn new(rs: RootSystem, c: CoxeterElement) -> Result<Self> {
        check_coxeter(&rs, &c)?;
        let roots = rs.almost_positive();
        let lookup =
            |r: &Root| rs.index_of(r).ok_or_else(|| crate::Error::Internal(format!("σ maps outside Φ≥-1: {r}")));
        let tau_fwd = roots
            .iter()
            .map(|r| lookup(&tau_unchecked(rs.spec(), &c, r, Direction::Forward)))
            .collect::<Result<Vec<_>>>()?;
        let tau_inv = roots
            .iter()
            .map(|r| lookup(&tau_unchecked(rs.spec(), &c, r, Direction::Inverse)))
            .collect::<Result<Vec<_>>>()?;
        for (i, &j) in tau_inv.iter().enumerate() {
            if tau_fwd[j] != i {
                return internal("τ_c and τ_c^-1 are not mutually inverse");
            }
        }
        let r = roots.iter().map(|a| r_degree(&rs, &c, a)).collect::<Result<Vec<_>>>()?;
        let n_roots = roots.len();
        let mut degree = vec![0u64; n_roots * n_roots];
        for a in 0..n_roots {
            let mut x = a;
            for _ in 0..r[a] {
                x = tau_inv[x];
            }
            let i = roots[x].negative_simple_index().expect("R_c reaches −Δ");
            for b in 0..n_roots {
                let mut y = b;
                for _ in 0..r[a] {
                    y = tau_inv[y];
                }
                degree[a * n_roots + b] = roots[y].0[i].max(0) as u64;
            }
        }
        Ok(Self { rs, c, tau_fwd, tau_inv, r, degree })
    }

    pub fn from_type(dynkin_type: DynkinType, rank: usize, c: CoxeterElement) -> Result<Self> {
        Self::new(RootSystem::new(cartan_matrix(dynkin_type, rank)?)?, c)
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn spec(&self) -> &CartanSpec {
        self.rs.spec()
    }

    pub fn coxeter(&self) -> &CoxeterElement {
        &self.c
    }

    pub fn rank(&self) -> usize {
        self.rs.rank()
    }

    pub fn roots(&self) -> &[Root] {
        self.rs.almost_positive()
    }

    pub fn root(&self, idx: usize) -> &Root {
        &self.rs.almost_positive()[idx]
    }

    pub fn index_of(&self, r: &Root) -> Option<usize> {
        self.rs.index_of(r)
    }

    pub fn tau_forward(&self, idx: usize) -> usize {
        self.tau_fwd[idx]
    }

    pub fn tau_inverse(&self, idx: usize) -> usize {
        self.tau_inv[idx]
    }

    pub fn r_degree(&self, idx: usize) -> usize {
        self.r[idx]
    }

    pub fn degree(&self, a: usize, b: usize) -> u64 {
        self.degree[a * self.roots().len() + b]
    }

    pub fn compatible(&self, a: usize, b: usize) -> bool {
        self.degree(a, b) == 0 && self.degree(b, a) == 0
    }

    /// All maximal c-compatible subsets, each checked to have exactly `n`
    /// elements, in lexicographic order.
    pub fn c_clusters(&self) -> Result<Vec<CCluster>> {
        let n_roots = self.roots().len();
        let mut adj = vec![FixedBitSet::with_capacity(n_roots); n_roots];
        for (a, row) in adj.iter_mut().enumerate() {
            for b in 0..n_roots {
                if a != b && self.compatible(a, b) {
                    row.insert(b);
                }
            }
        }
        let mut cliques: Vec<Vec<usize>> = Vec::new();
        let mut p = FixedBitSet::with_capacity(n_roots);
        p.insert_range(..);
        bron_kerbosch(&adj, &mut Vec::new(), p, FixedBitSet::with_capacity(n_roots), &mut cliques);
        let n = self.rank();
        let mut out = BTreeSet::new();
        for clique in cliques {
            if clique.len() != n {
                return internal(format!("maximal c-compatible set of size {} (expected {n})", clique.len()));
            }
            out.insert(CCluster::new(clique.into_iter().map(|i| self.root(i).clone()).collect()));
        }
        Ok(out.into_iter().collect())
    }
}

fn bron_kerbosch(
    adj: &[FixedBitSet],
    r: &mut Vec<usize>,
    mut p: FixedBitSet,
    mut x: FixedBitSet,
    out: &mut Vec<Vec<usize>>,
) {
    if p.is_clear() && x.is_clear() {
        out.push(r.clone());
        return;
    }
    // pivot: vertex of P ∪ X with the most neighbours in P
    let pivot = p.ones().chain(x.ones()).max_by_key(|&u| adj[u].intersection(&p).count()).expect("P ∪ X is nonempty");
    let candidates: Vec<usize> = p.difference(&adj[pivot]).collect();
    for v in candidates {
        let mut p2 = p.clone();
        p2.intersect_with(&adj[v]);
        let mut x2 = x.clone();
        x2.intersect_with(&adj[v]);
        r.push(v);
        bron_kerbosch(adj, r, p2, x2, out);
        r.pop();
        p.set(v, false);
        x.insert(v);
    }
}

/// All c-clusters of `Φ_{≥−1}` for the given Coxeter element.
pub fn enumerate_c_clusters(rs: &RootSystem, c: &CoxeterElement) -> Result<Vec<CCluster>> {
    CoxeterDynamics::new(rs.clone(), c.clone())?.c_clusters()
}
