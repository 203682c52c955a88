//! c-sortable elements, their inversion sets, the Cambrian Hasse quiver and
//! the map `cl_c` to c-clusters.

use std::collections::{HashMap, HashSet};
use std::fmt;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::error::{internal, Result};
use crate::quivers::{ClusterQuiver, Edge};
use crate::rootsys::{CCluster, CartanSpec, CoxeterDynamics, CoxeterElement, Root, RootSystem};

/// A Weyl group element as a matrix on simple-root coordinates, stored with
/// its inverse. Equality is matrix equality.
#[derive(Clone, Debug)]
pub struct WeylElement {
    n: usize,
    matrix: Vec<i64>,
    inverse: Vec<i64>,
    length: usize,
}

impl PartialEq for WeylElement {
    fn eq(&self, other: &Self) -> bool {
        self.matrix == other.matrix
    }
}

impl Eq for WeylElement {}

impl std::hash::Hash for WeylElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.matrix.hash(state);
    }
}

fn mat_mul(n: usize, a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0; n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i * n + k];
            if aik != 0 {
                for j in 0..n {
                    out[i * n + j] += aik * b[k * n + j];
                }
            }
        }
    }
    out
}

fn reflection_matrix(spec: &CartanSpec, i: usize) -> Vec<i64> {
    let n = spec.rank;
    let mut m = vec![0; n * n];
    for j in 0..n {
        m[j * n + j] = 1;
        m[i * n + j] -= spec.cartan[i][j];
    }
    m
}

impl WeylElement {
    pub fn identity(n: usize) -> Self {
        let mut m = vec![0; n * n];
        for i in 0..n {
            m[i * n + i] = 1;
        }
        Self { n, matrix: m.clone(), inverse: m, length: 0 }
    }

    /// `w s_i`. The caller asserts the product is length-additive.
    fn times_reflection(&self, spec: &CartanSpec, i: usize) -> Self {
        let s = reflection_matrix(spec, i);
        Self {
            n: self.n,
            matrix: mat_mul(self.n, &self.matrix, &s),
            inverse: mat_mul(self.n, &s, &self.inverse),
            length: self.length + 1,
        }
    }

    /// The product `s_{a_1} ⋯ s_{a_k}`; `length` is the word length, which
    /// is `ℓ(w)` only for reduced words.
    pub fn from_word(spec: &CartanSpec, word: &[usize]) -> Self {
        word.iter().fold(Self::identity(spec.rank), |w, &i| w.times_reflection(spec, i))
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn length(&self) -> usize {
        self.length
    }

    /// Row-major matrix.
    pub fn matrix(&self) -> &[i64] {
        &self.matrix
    }

    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        (0..self.n).map(|i| (0..self.n).map(|j| self.matrix[i * self.n + j] * v[j]).sum()).collect()
    }

    pub fn apply_inverse(&self, v: &[i64]) -> Vec<i64> {
        (0..self.n).map(|i| (0..self.n).map(|j| self.inverse[i * self.n + j] * v[j]).sum()).collect()
    }

    /// `w(α_i)` is a positive root, i.e. `ℓ(w s_i) > ℓ(w)`.
    pub fn extends_reduced(&self, i: usize) -> bool {
        (0..self.n).all(|r| self.matrix[r * self.n + i] >= 0)
    }
}

/// A c-sortable element with its c-sorting word and inversion set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SortableElement {
    pub element: WeylElement,
    /// Blocks `K_1 ⊇ K_2 ⊇ ⋯`, each listed in c-order (0-based letters).
    pub sorting_word: Vec<Vec<usize>>,
    /// Sorted.
    pub inversions: Vec<Root>,
}

impl SortableElement {
    pub fn word(&self) -> Vec<usize> {
        self.sorting_word.iter().flatten().copied().collect()
    }

    pub fn len(&self) -> usize {
        self.sorting_word.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl fmt::Display for SortableElement {
    /// `s2s1|s2`, with `1` for the identity.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sorting_word.is_empty() {
            return write!(f, "1");
        }
        for (b, block) in self.sorting_word.iter().enumerate() {
            if b > 0 {
                write!(f, "|")?;
            }
            for i in block {
                write!(f, "s{}", i + 1)?;
            }
        }
        Ok(())
    }
}

impl Serialize for SortableElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// `{α ∈ Φ^+ : w^{-1}(α) < 0}`, sorted.
pub fn inversion_set(rs: &RootSystem, w: &WeylElement) -> Vec<Root> {
    rs.positive().iter().filter(|a| w.apply_inverse(&a.0).iter().all(|&x| x <= 0)).cloned().collect()
}

/// All c-sortable elements, ordered by length and then by sorting word.
///
/// Depth-first over weakly decreasing block chains; a letter is appended
/// only while the word stays reduced.
pub fn enumerate_sortables(rs: &RootSystem, c: &CoxeterElement) -> Result<Vec<SortableElement>> {
    let spec = rs.spec();
    let n = spec.rank;
    let mut found: Vec<(WeylElement, Vec<Vec<usize>>)> = Vec::new();
    let mut stack = vec![(WeylElement::identity(n), Vec::<Vec<usize>>::new(), (1u32 << n) - 1)];
    while let Some((w, blocks, allowed)) = stack.pop() {
        // every nonempty subset of the previous block, letters in c-order
        let mut sub = allowed;
        while sub != 0 {
            let letters: Vec<usize> = c.order().iter().copied().filter(|&i| sub & (1 << i) != 0).collect();
            let mut x = w.clone();
            if letters.iter().all(|&i| {
                let ok = x.extends_reduced(i);
                if ok {
                    x = x.times_reflection(spec, i);
                }
                ok
            }) {
                let mut b = blocks.clone();
                b.push(letters);
                stack.push((x, b, sub));
            }
            sub = (sub - 1) & allowed;
        }
        found.push((w, blocks));
    }
    let mut seen = HashSet::new();
    for (w, _) in &found {
        if !seen.insert(w.clone()) {
            return internal("two sorting words describe the same element");
        }
    }
    let mut out: Vec<SortableElement> = found
        .into_iter()
        .map(|(element, sorting_word)| {
            let inversions = inversion_set(rs, &element);
            SortableElement { element, sorting_word, inversions }
        })
        .collect();
    for s in &out {
        if s.inversions.len() != s.len() {
            return internal(format!("sorting word {s} is not reduced"));
        }
    }
    out.sort_by_key(|s| (s.len(), s.word()));
    Ok(out)
}

/// `cl_c(w)`: for each letter with rightmost occurrence `a_j`, the root
/// `a_1 ⋯ a_{j−1}(α_{a_j})`; `−α_i` for letters that never occur.
pub fn cl(dy: &CoxeterDynamics, s: &SortableElement) -> Result<CCluster> {
    let spec = dy.spec();
    let n = spec.rank;
    let word = s.word();
    let mut roots: Vec<Option<Root>> = vec![None; n];
    let mut prefix = WeylElement::identity(n);
    for &a in &word {
        roots[a] = Some(Root(prefix.apply(&Root::simple(n, a).0)));
        prefix = prefix.times_reflection(spec, a);
    }
    let roots: Vec<Root> =
        roots.into_iter().enumerate().map(|(i, r)| r.unwrap_or_else(|| Root::negative_simple(n, i))).collect();
    let ids = roots
        .iter()
        .map(|r| dy.index_of(r).ok_or_else(|| crate::Error::Internal(format!("cl_c produced {r}"))))
        .collect::<Result<Vec<_>>>()?;
    for (p, &a) in ids.iter().enumerate() {
        for &b in &ids[p + 1..] {
            if a == b || !dy.compatible(a, b) {
                return internal(format!("cl_c({s}) is not a c-cluster"));
            }
        }
    }
    Ok(CCluster::new(roots))
}

pub type CambrianQuiver = ClusterQuiver<SortableElement, Vec<Root>>;

/// Hasse quiver of the sortables ordered by inclusion of inversion sets,
/// with arrows from greater to lesser. Edge `out` holds `I(src) ∖ I(dst)`.
pub fn build_cambrian_hasse(rs: &RootSystem, sortables: Vec<SortableElement>) -> CambrianQuiver {
    let index: HashMap<&Root, usize> = rs.positive().iter().enumerate().map(|(i, r)| (r, i)).collect();
    let m = rs.positive().len();
    let sets: Vec<FixedBitSet> = sortables
        .iter()
        .map(|s| {
            let mut b = FixedBitSet::with_capacity(m);
            s.inversions.iter().for_each(|r| b.insert(index[r]));
            b
        })
        .collect();
    let v = sortables.len();
    let below: Vec<FixedBitSet> = (0..v)
        .map(|y| {
            let mut b = FixedBitSet::with_capacity(v);
            for x in 0..v {
                if x != y && sets[x].is_subset(&sets[y]) {
                    b.insert(x);
                }
            }
            b
        })
        .collect();
    let mut edges = Vec::new();
    for y in 0..v {
        let mut covers = below[y].clone();
        for z in below[y].ones() {
            covers.difference_with(&below[z]);
        }
        for x in covers.ones() {
            let out = sortables[y].inversions.iter().filter(|r| !sets[x].contains(index[r])).cloned().collect();
            edges.push(Edge { src: y, dst: x, out, inn: Vec::new() });
        }
    }
    ClusterQuiver { vertices: sortables, edges }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{cartan_matrix, DynkinType};

    fn a2() -> (RootSystem, CoxeterElement) {
        let rs = RootSystem::new(cartan_matrix(DynkinType::A, 2).unwrap()).unwrap();
        (rs, CoxeterElement::from_one_based(&[2, 1]).unwrap())
    }

    fn r(v: &[i64]) -> Root {
        Root(v.to_vec())
    }

    #[test]
    fn a2_sortables() {
        let (rs, c) = a2();
        let words: Vec<Vec<usize>> = enumerate_sortables(&rs, &c).unwrap().iter().map(|s| s.word()).collect();
        assert_eq!(words, vec![vec![], vec![0], vec![1], vec![1, 0], vec![1, 0, 1]]);
        let s1s2 = WeylElement::from_word(rs.spec(), &[0, 1]);
        assert!(enumerate_sortables(&rs, &c).unwrap().iter().all(|s| s.element != s1s2));
    }

    #[test]
    fn a1_sortables() {
        let rs = RootSystem::new(cartan_matrix(DynkinType::A, 1).unwrap()).unwrap();
        let got = enumerate_sortables(&rs, &CoxeterElement::standard(1)).unwrap();
        assert_eq!(got.iter().map(|s| s.to_string()).collect::<Vec<_>>(), vec!["1", "s1"]);
    }

    #[test]
    fn inversion_examples() {
        let (rs, _) = a2();
        let spec = rs.spec();
        assert!(inversion_set(&rs, &WeylElement::identity(2)).is_empty());
        assert_eq!(inversion_set(&rs, &WeylElement::from_word(spec, &[1, 0])), vec![r(&[0, 1]), r(&[1, 1])]);
        assert_eq!(inversion_set(&rs, &WeylElement::from_word(spec, &[1, 0, 1])), rs.positive().to_vec());
    }

    #[test]
    fn cl_examples() {
        let (rs, c) = a2();
        let dy = CoxeterDynamics::new(rs.clone(), c.clone()).unwrap();
        let sortables = enumerate_sortables(&rs, &c).unwrap();
        let get = |w: &[usize]| sortables.iter().find(|s| s.word() == w).unwrap();
        assert_eq!(cl(&dy, get(&[])).unwrap(), CCluster::new(vec![r(&[-1, 0]), r(&[0, -1])]));
        assert_eq!(cl(&dy, get(&[1, 0])).unwrap(), CCluster::new(vec![r(&[0, 1]), r(&[1, 1])]));
        assert_eq!(cl(&dy, get(&[1, 0, 1])).unwrap(), CCluster::new(vec![r(&[1, 0]), r(&[1, 1])]));
    }

    #[test]
    fn a2_hasse() {
        let (rs, c) = a2();
        let q = build_cambrian_hasse(&rs, enumerate_sortables(&rs, &c).unwrap());
        assert_eq!(q.vertex_count(), 5);
        assert_eq!(q.edge_count(), 5);
        assert_eq!(q.vertices[q.sources()[0]].to_string(), "s2s1|s2");
        assert_eq!(q.vertices[q.sinks()[0]].to_string(), "1");
    }

    #[test]
    fn a1_hasse() {
        let rs = RootSystem::new(cartan_matrix(DynkinType::A, 1).unwrap()).unwrap();
        let q = build_cambrian_hasse(&rs, enumerate_sortables(&rs, &CoxeterElement::standard(1)).unwrap());
        assert_eq!(q.arrows().collect::<Vec<_>>(), vec![(1, 0)]);
        assert_eq!(q.edges[0].out, vec![r(&[1])]);
    }
}
