//! Test-side oracles, written without the library's enumeration code.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use cluster_lattice::matrix::IntMatrix;
use cluster_lattice::rootsys::{cartan_matrix, CoxeterElement, DynkinType};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Vector = Vec<i64>;

/// A Weyl-group element as a row-major matrix, with its c-sorting word.
pub type SortedElement = (Vec<Vec<i64>>, Vec<Vec<usize>>);

/// The entries of the acceptance matrix: type, rank, Coxeter words (1-based).
pub fn test_matrix() -> Vec<(DynkinType, usize, Vec<usize>)> {
    use DynkinType::*;
    let mut out = vec![(A, 1, vec![1]), (A, 2, vec![2, 1]), (A, 2, vec![1, 2])];
    for c in CoxeterElement::all(3) {
        out.push((A, 3, c.order().iter().map(|i| i + 1).collect()));
    }
    out.extend([
        (B, 2, vec![1, 2]),
        (B, 2, vec![2, 1]),
        (B, 3, vec![1, 2, 3]),
        (C, 3, vec![1, 2, 3]),
        (D, 4, vec![1, 2, 3, 4]),
        (F, 4, vec![1, 2, 3, 4]),
        (G, 2, vec![1, 2]),
        (G, 2, vec![2, 1]),
        (A, 4, vec![1, 2, 3, 4]),
        (A, 5, vec![1, 2, 3, 4, 5]),
    ]);
    out
}

/// Number of clusters of each finite type (the Fomin–Zelevinsky
/// generalized Catalan numbers), from closed forms.
pub fn catalan(t: DynkinType, n: usize) -> u64 {
    fn binom(n: u64, k: u64) -> u64 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }
    let m = n as u64;
    match t {
        DynkinType::A => binom(2 * m + 2, m + 1) / (m + 2),
        DynkinType::B | DynkinType::C => binom(2 * m, m),
        DynkinType::D => (3 * m - 2) * binom(2 * m - 2, m - 1) / m,
        DynkinType::E => [833, 4160, 25080][n - 6],
        DynkinType::F => 105,
        DynkinType::G => 8,
    }
}

/// `|Φ^+|` from closed forms.
pub fn positive_root_count(t: DynkinType, n: usize) -> usize {
    match t {
        DynkinType::A => n * (n + 1) / 2,
        DynkinType::B | DynkinType::C => n * n,
        DynkinType::D => n * (n - 1),
        DynkinType::E => [36, 63, 120][n - 6],
        DynkinType::F => 24,
        DynkinType::G => 6,
    }
}

pub fn cartan(t: DynkinType, n: usize) -> Vec<Vec<i64>> {
    cartan_matrix(t, n).unwrap().cartan
}

/// `s_i(v) = v − (Σ_j C_ij v_j) e_i`.
pub fn reflect(c: &[Vec<i64>], i: usize, v: &[i64]) -> Vector {
    let mut out = v.to_vec();
    out[i] -= c[i].iter().zip(v).map(|(a, b)| a * b).sum::<i64>();
    out
}

/// The full root system as the Weyl orbit of the simple roots, without any
/// sign filtering during the search.
pub fn orbit_roots(c: &[Vec<i64>]) -> BTreeSet<Vector> {
    let n = c.len();
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    for i in 0..n {
        let mut e = vec![0; n];
        e[i] = 1;
        if seen.insert(e.clone()) {
            queue.push_back(e);
        }
    }
    while let Some(v) = queue.pop_front() {
        for i in 0..n {
            let w = reflect(c, i, &v);
            if seen.insert(w.clone()) {
                queue.push_back(w);
            }
        }
    }
    seen
}

pub fn orbit_positive_roots(c: &[Vec<i64>]) -> BTreeSet<Vector> {
    orbit_roots(c).into_iter().filter(|v| v.iter().all(|&x| x >= 0)).collect()
}

fn negative_simple(v: &[i64]) -> Option<usize> {
    let nz: Vec<usize> = (0..v.len()).filter(|&i| v[i] != 0).collect();
    (nz.len() == 1 && v[nz[0]] == -1).then_some(nz[0])
}

fn sigma(c: &[Vec<i64>], i: usize, v: &[i64]) -> Vector {
    match negative_simple(v) {
        Some(j) if j != i => v.to_vec(),
        _ => reflect(c, i, v),
    }
}

/// `τ_c^{-1} = σ_{c_n} ∘ ⋯ ∘ σ_{c_1}`.
pub fn tau_inv(c: &[Vec<i64>], word: &[usize], v: &[i64]) -> Vector {
    word.iter().fold(v.to_vec(), |acc, &i| sigma(c, i, &acc))
}

/// Almost positive roots with the orbit oracle.
pub fn almost_positive(c: &[Vec<i64>]) -> Vec<Vector> {
    let n = c.len();
    let mut out: Vec<Vector> = orbit_positive_roots(c).into_iter().collect();
    for i in 0..n {
        let mut e = vec![0; n];
        e[i] = -1;
        out.push(e);
    }
    out.sort();
    out
}

/// `(α ∥ β)` read at every `m` in the joint `τ_c^{-1}` period of `(α, β)`
/// with `τ^{-m}α` a negative simple root. `None` unless all readings agree.
pub fn compat_degree_all_reductions(c: &[Vec<i64>], word: &[usize], a: &[i64], b: &[i64]) -> Option<i64> {
    let (mut x, mut y) = (a.to_vec(), b.to_vec());
    let mut values = BTreeSet::new();
    for _ in 0..100_000 {
        if let Some(i) = negative_simple(&x) {
            values.insert(y[i].max(0));
        }
        x = tau_inv(c, word, &x);
        y = tau_inv(c, word, &y);
        if x == a && y == b {
            return (values.len() == 1).then(|| *values.iter().next().unwrap());
        }
    }
    None
}

/// Maximal pairwise-compatible subsets by plain recursive extension.
pub fn brute_force_clusters(roots: &[Vector], compatible: impl Fn(usize, usize) -> bool) -> BTreeSet<BTreeSet<Vector>> {
    let m = roots.len();
    let mut out = BTreeSet::new();
    fn rec(
        start: usize,
        current: &mut Vec<usize>,
        m: usize,
        compatible: &dyn Fn(usize, usize) -> bool,
        roots: &[Vector],
        out: &mut BTreeSet<BTreeSet<Vector>>,
    ) {
        let maximal = (0..m).all(|x| current.contains(&x) || !current.iter().all(|&y| compatible(x, y)));
        if maximal {
            out.insert(current.iter().map(|&i| roots[i].clone()).collect());
        }
        for x in start..m {
            if current.iter().all(|&y| compatible(x, y)) {
                current.push(x);
                rec(x + 1, current, m, compatible, roots, out);
                current.pop();
            }
        }
    }
    rec(0, &mut Vec::new(), m, &compatible, roots, &mut out);
    out
}

fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
}

fn reflection(c: &[Vec<i64>], i: usize) -> Vec<Vec<i64>> {
    let n = c.len();
    (0..n).map(|r| (0..n).map(|col| i64::from(r == col) - if r == i { c[i][col] } else { 0 }).collect()).collect()
}

fn apply(m: &[Vec<i64>], v: &[i64]) -> Vector {
    m.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

/// Every Weyl group element (as a matrix) with its length, by closure.
pub fn weyl_group(c: &[Vec<i64>]) -> HashMap<Vec<Vec<i64>>, usize> {
    let n = c.len();
    let id: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    let mut seen = HashMap::from([(id.clone(), 0usize)]);
    let mut queue = VecDeque::from([id]);
    while let Some(w) = queue.pop_front() {
        let l = seen[&w];
        for i in 0..n {
            let ws = mat_mul(&w, &reflection(c, i));
            if !seen.contains_key(&ws) {
                seen.insert(ws.clone(), l + 1);
                queue.push_back(ws);
            }
        }
    }
    seen
}

/// The c-sorting word of `w` by scanning `c^∞` and taking each letter that
/// is a left descent of what remains. One block per pass through `c`.
pub fn greedy_sorting_word(
    c: &[Vec<i64>],
    word: &[usize],
    lengths: &HashMap<Vec<Vec<i64>>, usize>,
    w: &[Vec<i64>],
) -> Vec<Vec<usize>> {
    let mut u = w.to_vec();
    let mut blocks = Vec::new();
    while lengths[&u] > 0 {
        let mut block = Vec::new();
        for &s in word {
            let su = mat_mul(&reflection(c, s), &u);
            if lengths[&su] < lengths[&u] {
                u = su;
                block.push(s);
            }
        }
        blocks.push(block);
    }
    blocks
}

/// Number of positive roots sent to negative roots by `w`.
pub fn inversions(c: &[Vec<i64>], w: &[Vec<i64>]) -> usize {
    orbit_positive_roots(c).iter().filter(|a| apply(w, a).iter().all(|&x| x <= 0)).count()
}

/// c-sortable elements as `(matrix, blocks)` via the full Weyl group.
pub fn sortables_oracle(c: &[Vec<i64>], word: &[usize]) -> HashSet<SortedElement> {
    let lengths = weyl_group(c);
    lengths
        .keys()
        .cloned()
        .filter_map(|w| {
            let blocks = greedy_sorting_word(c, word, &lengths, &w);
            let decreasing = blocks.windows(2).all(|p| p[1].iter().all(|x| p[0].contains(x)));
            decreasing.then_some((w, blocks))
        })
        .collect()
}

fn to_rational(m: &IntMatrix) -> Vec<Vec<BigRational>> {
    (0..m.rows()).map(|i| m.row(i).into_iter().map(BigRational::from_integer).collect()).collect()
}

/// Exact inverse by Gauss–Jordan elimination over the rationals.
pub fn rational_inverse(m: &IntMatrix) -> Option<Vec<Vec<BigRational>>> {
    let n = m.rows();
    let mut a = to_rational(m);
    let mut inv: Vec<Vec<BigRational>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect())
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].clone();
        for j in 0..n {
            a[col][j] = &a[col][j] / &p;
            inv[col][j] = &inv[col][j] / &p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in 0..n {
                    let t = &f * &a[col][j];
                    a[r][j] = &a[r][j] - t;
                    let t = &f * &inv[col][j];
                    inv[r][j] = &inv[r][j] - t;
                }
            }
        }
    }
    Some(inv)
}

/// `(G^T)^{-1} == S C S^{-1}` in exact rational arithmetic.
pub fn duality_holds(g: &IntMatrix, c: &IntMatrix, s: &[i64]) -> bool {
    let Some(lhs) = rational_inverse(&g.transpose()) else { return false };
    let n = c.rows();
    (0..n).all(|i| {
        (0..n).all(|j| {
            let rhs = BigRational::new(BigInt::from(s[i]) * &c[(i, j)], BigInt::from(s[j]));
            lhs[i][j] == rhs
        })
    })
}
