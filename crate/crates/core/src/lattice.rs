//! Finite posets read from Hasse quivers, lattice checks, quiver
//! (anti-)isomorphism certificates and maximal chains.
//!
//! Arrows point from greater to lesser elements.

use fixedbitset::FixedBitSet;
use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::error::{input, Result};
use crate::quivers::ClusterQuiver;

/// Reflexive-transitive closure of a Hasse quiver.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinitePoset {
    /// `below[y]` holds every `x ≤ y`.
    below: Vec<Cone>,
    /// `above[x]` holds every `y ≥ x`.
    above: Vec<Cone>,
    /// Lower covers.
    covers: Vec<Vec<usize>>,
    /// Topological order, greatest first.
    order: Vec<usize>,
}

impl FinitePoset {
    pub fn len(&self) -> usize {
        self.below.len()
    }

    pub fn is_empty(&self) -> bool {
        self.below.is_empty()
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.below[y].set.contains(x)
    }

    pub fn lower_covers(&self, y: usize) -> &[usize] {
        &self.covers[y]
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.above[x].size == 1).collect()
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.below[x].size == 1).collect()
    }

    /// Least upper bound, if it exists.
    pub fn join(&self, x: usize, y: usize) -> Option<usize> {
        extremal_bound(&self.above, x, y, &mut FixedBitSet::with_capacity(self.len()))
    }

    /// Greatest lower bound, if it exists.
    pub fn meet(&self, x: usize, y: usize) -> Option<usize> {
        extremal_bound(&self.below, x, y, &mut FixedBitSet::with_capacity(self.len()))
    }
}

/// In an up-closed (resp. down-closed) bound set `U`, the least (resp.
/// greatest) element is the one whose own up-set (resp. down-set) is all of
/// `U`; it has the largest such set among members of `U`.
fn extremal_bound(cones: &[Cone], x: usize, y: usize, scratch: &mut FixedBitSet) -> Option<usize> {
    scratch.clone_from(&cones[x].set);
    scratch.intersect_with(&cones[y].set);
    let size = scratch.count_ones(..);
    let best = scratch.ones().max_by_key(|&u| cones[u].size)?;
    (cones[best].size == size).then_some(best)
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Cone {
    set: FixedBitSet,
    size: usize,
}

impl Cone {
    fn new(set: FixedBitSet) -> Self {
        Cone { size: set.count_ones(..), set }
    }
}

/// Builds the poset whose Hasse quiver is `q`. Fails if `q` has a cycle or an
/// arrow that is implied by a longer path.
pub fn poset_from_hasse<V, L>(q: &ClusterQuiver<V, L>) -> Result<FinitePoset> {
    let n = q.vertex_count();
    let graph = q.graph();
    if graph.edge_count() != q.edge_count() {
        return input("Hasse quiver has parallel arrows");
    }
    let order = match petgraph::algo::toposort(&graph, None) {
        Ok(order) => order,
        Err(cycle) => return input(format!("Hasse quiver has a cycle through vertex {}", cycle.node_id())),
    };
    let mut covers = vec![Vec::new(); n];
    for (s, t) in q.arrows() {
        covers[s].push(t);
    }
    covers.iter_mut().for_each(|c| c.sort_unstable());
    let mut below = vec![FixedBitSet::with_capacity(n); n];
    for &v in order.iter().rev() {
        let mut b = FixedBitSet::with_capacity(n);
        b.insert(v);
        for &w in &covers[v] {
            b.union_with(&below[w]);
        }
        below[v] = b;
    }
    for (v, cv) in covers.iter().enumerate() {
        for &w in cv {
            if cv.iter().any(|&u| u != w && below[u].contains(w)) {
                return input(format!("arrow {v}→{w} is not a cover relation"));
            }
        }
    }
    let mut above = vec![FixedBitSet::with_capacity(n); n];
    for (y, b) in below.iter().enumerate() {
        for x in b.ones() {
            above[x].insert(y);
        }
    }
    Ok(FinitePoset {
        below: below.into_iter().map(Cone::new).collect(),
        above: above.into_iter().map(Cone::new).collect(),
        covers,
        order,
    })
}

/// Outcome of the pairwise join/meet check.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct LatticeReport {
    pub elements: usize,
    pub pairs_checked: usize,
    pub is_lattice: bool,
    /// First pair without a join or meet.
    pub violation: Option<String>,
}

pub fn verify_lattice(p: &FinitePoset) -> LatticeReport {
    let mut r = LatticeReport { elements: p.len(), ..LatticeReport::default() };
    let mut scratch = FixedBitSet::with_capacity(p.len());
    for x in 0..p.len() {
        for y in x..p.len() {
            r.pairs_checked += 1;
            if r.violation.is_none() {
                if extremal_bound(&p.above, x, y, &mut scratch).is_none() {
                    r.violation = Some(format!("{x} and {y} have no join"));
                } else if extremal_bound(&p.below, x, y, &mut scratch).is_none() {
                    r.violation = Some(format!("{x} and {y} have no meet"));
                }
            }
        }
    }
    r.is_lattice = !p.is_empty() && r.violation.is_none();
    if p.is_empty() {
        r.violation = Some("empty poset".into());
    }
    r
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MapMode {
    /// Arrows go to arrows.
    Iso,
    /// Arrows go to reversed arrows.
    Anti,
}

/// Outcome of checking a vertex map between two quivers.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct MapReport {
    pub vertices: usize,
    pub arrows: usize,
    pub bijective: bool,
    pub arrows_preserved: usize,
    pub violations: Vec<String>,
    pub passed: bool,
}

/// Checks that `map` (vertex `v` of `q1` to `map[v]` of `q2`) is a bijection
/// carrying the arrows of `q1` onto the arrows of `q2`, reversed in
/// [`MapMode::Anti`].
pub fn verify_quiver_map<V1, L1, V2, L2>(
    q1: &ClusterQuiver<V1, L1>,
    q2: &ClusterQuiver<V2, L2>,
    map: &[usize],
    mode: MapMode,
) -> MapReport {
    let mut r = MapReport { vertices: q1.vertex_count(), arrows: q1.edge_count(), ..MapReport::default() };
    let mut hit = vec![false; q2.vertex_count()];
    let mut injective = map.len() == q1.vertex_count();
    for &m in map {
        if m >= hit.len() || std::mem::replace(&mut hit[m], true) {
            injective = false;
        }
    }
    r.bijective = injective && hit.iter().all(|&h| h);
    if !r.bijective {
        r.violations.push("vertex map is not a bijection".into());
        return r;
    }
    let target = q2.arrow_set();
    for (s, t) in q1.arrows() {
        let image = match mode {
            MapMode::Iso => (map[s], map[t]),
            MapMode::Anti => (map[t], map[s]),
        };
        if target.contains(&image) {
            r.arrows_preserved += 1;
        } else {
            r.violations.push(format!("arrow {s}→{t} has no image"));
        }
    }
    if q1.arrow_set().len() != target.len() {
        r.violations.push(format!("arrow counts differ: {} vs {}", q1.edge_count(), q2.edge_count()));
    }
    r.passed = r.violations.is_empty();
    r
}

fn as_string<S: Serializer>(x: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(x)
}

/// Number of maximal chains and one longest chain, top first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainReport {
    #[serde(serialize_with = "as_string")]
    pub count: BigUint,
    pub longest: Vec<usize>,
}

impl ChainReport {
    /// Edges in the longest chain.
    pub fn longest_length(&self) -> usize {
        self.longest.len().saturating_sub(1)
    }
}

/// Maximal chains are the top-to-bottom paths of the Hasse quiver.
pub fn maximal_chains(p: &FinitePoset) -> Result<ChainReport> {
    let (tops, bottoms) = (p.maximal_elements(), p.minimal_elements());
    if tops.len() != 1 || bottoms.len() != 1 {
        return input("poset needs a unique top and a unique bottom");
    }
    let n = p.len();
    let mut count = vec![BigUint::zero(); n];
    let mut height = vec![0usize; n];
    let mut next = vec![usize::MAX; n];
    for &v in p.order.iter().rev() {
        if p.covers[v].is_empty() {
            count[v] = BigUint::one();
            continue;
        }
        let mut total = BigUint::zero();
        for &w in &p.covers[v] {
            total += &count[w];
            if next[v] == usize::MAX || height[w] + 1 > height[v] {
                height[v] = height[w] + 1;
                next[v] = w;
            }
        }
        count[v] = total;
    }
    let mut longest = vec![tops[0]];
    while let Some(&v) = longest.last() {
        if next[v] == usize::MAX {
            break;
        }
        longest.push(next[v]);
    }
    Ok(ChainReport { count: count[tops[0]].clone(), longest })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quivers::Edge;

    fn quiver(n: usize, arrows: &[(usize, usize)]) -> ClusterQuiver<(), ()> {
        ClusterQuiver {
            vertices: vec![(); n],
            edges: arrows.iter().map(|&(src, dst)| Edge { src, dst, out: (), inn: () }).collect(),
        }
    }

    // 0 → 1 → 2 → 4 and 0 → 3 → 4
    fn pentagon() -> ClusterQuiver<(), ()> {
        quiver(5, &[(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)])
    }

    #[test]
    fn pentagon_is_a_lattice() {
        let p = poset_from_hasse(&pentagon()).unwrap();
        assert!(!p.leq(1, 3) && !p.leq(3, 1));
        assert_eq!(p.join(1, 3), Some(0));
        assert_eq!(p.meet(2, 3), Some(4));
        assert!(verify_lattice(&p).is_lattice);
        let chains = maximal_chains(&p).unwrap();
        assert_eq!(chains.count, BigUint::from(2u32));
        assert_eq!(chains.longest, vec![0, 1, 2, 4]);
        assert_eq!(chains.longest_length(), 3);
    }

    #[test]
    fn single_vertex_and_chains() {
        let p = poset_from_hasse(&quiver(1, &[])).unwrap();
        assert_eq!(p.len(), 1);
        assert!(verify_lattice(&p).is_lattice);
        let chain = poset_from_hasse(&quiver(4, &[(0, 1), (1, 2), (2, 3)])).unwrap();
        assert!(verify_lattice(&chain).is_lattice);
        assert_eq!(maximal_chains(&chain).unwrap().count, BigUint::one());
        let a1 = poset_from_hasse(&quiver(2, &[(0, 1)])).unwrap();
        assert_eq!(maximal_chains(&a1).unwrap().longest_length(), 1);
    }

    #[test]
    fn bowtie_is_not_a_lattice() {
        // top, two middles each above both of two lower middles, bottom
        let q = quiver(6, &[(0, 1), (0, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 5), (4, 5)]);
        let p = poset_from_hasse(&q).unwrap();
        let r = verify_lattice(&p);
        assert!(!r.is_lattice);
        assert!(r.violation.is_some());
    }

    #[test]
    fn rejects_cycles_and_shortcuts() {
        assert!(poset_from_hasse(&quiver(2, &[(0, 1), (1, 0)])).is_err());
        assert!(poset_from_hasse(&quiver(3, &[(0, 1), (1, 2), (0, 2)])).is_err());
    }

    #[test]
    fn quiver_maps() {
        let q = pentagon();
        assert!(verify_quiver_map(&q, &q, &[0, 1, 2, 3, 4], MapMode::Iso).passed);
        let rev = quiver(5, &[(1, 0), (2, 1), (4, 2), (3, 0), (4, 3)]);
        assert!(verify_quiver_map(&q, &rev, &[0, 1, 2, 3, 4], MapMode::Anti).passed);
        assert!(!verify_quiver_map(&q, &rev, &[0, 1, 2, 3, 4], MapMode::Iso).passed);
        assert!(!verify_quiver_map(&q, &q, &[0, 0, 2, 3, 4], MapMode::Iso).bijective);
    }

    #[test]
    fn chains_need_top_and_bottom() {
        let p = poset_from_hasse(&quiver(3, &[(0, 2), (1, 2)])).unwrap();
        assert!(maximal_chains(&p).is_err());
    }
}
