//! Skew-symmetrizable exchange matrices, matrix mutation, the Coxeter
//! companion matrix `B^c`, and C-/G-matrix tracking along mutation paths.
//!
//! Mutation directions are 0-based throughout the library.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{input, internal, Result};
use crate::matrix::{column_sign, pos_part, IntMatrix};
use crate::rootsys::{CartanSpec, CoxeterElement};

/// A square matrix `B` with a positive diagonal `S` such that `SB` is
/// skew-symmetric.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExchangeMatrix {
    entries: IntMatrix,
    skew_symmetrizer: Vec<i64>,
}

impl ExchangeMatrix {
    pub fn new(entries: IntMatrix, skew_symmetrizer: Vec<i64>) -> Result<Self> {
        let n = entries.rows();
        if !entries.is_square() || skew_symmetrizer.len() != n {
            return input("exchange matrix must be square with one symmetrizer entry per row");
        }
        if skew_symmetrizer.iter().any(|&s| s <= 0) {
            return input("skew-symmetrizer entries must be positive");
        }
        for i in 0..n {
            for j in 0..n {
                let lhs = BigInt::from(skew_symmetrizer[i]) * &entries[(i, j)];
                let rhs = -BigInt::from(skew_symmetrizer[j]) * &entries[(j, i)];
                if lhs != rhs {
                    return input(format!("S·B is not skew-symmetric at ({i},{j})"));
                }
            }
        }
        Ok(Self { entries, skew_symmetrizer })
    }

    pub fn entries(&self) -> &IntMatrix {
        &self.entries
    }

    pub fn skew_symmetrizer(&self) -> &[i64] {
        &self.skew_symmetrizer
    }

    pub fn rank(&self) -> usize {
        self.entries.rows()
    }

    pub fn neg(&self) -> Self {
        Self { entries: self.entries.neg(), skew_symmetrizer: self.skew_symmetrizer.clone() }
    }

    /// `μ_k(B)`; the symmetrizer is unchanged by mutation.
    pub fn mutate(&self, k: usize) -> Result<Self> {
        Ok(Self { entries: mutate_matrix(&self.entries, k)?, skew_symmetrizer: self.skew_symmetrizer.clone() })
    }
}

/// `B^c`: `b_ij = C_ij` when `s_j` precedes `s_i` in `c`, `−C_ij` when `s_i`
/// precedes `s_j`, and zero on the diagonal.
pub fn build_bc(spec: &CartanSpec, c: &CoxeterElement) -> Result<ExchangeMatrix> {
    spec.validate()?;
    let n = spec.rank;
    if c.rank() != n {
        return input(format!("Coxeter element {c} has the wrong rank for {}", spec.name()));
    }
    let entries = IntMatrix::from_fn(n, n, |i, j| {
        let cij = BigInt::from(spec.cartan[i][j]);
        match c.position(j).cmp(&c.position(i)) {
            std::cmp::Ordering::Less => cij,
            std::cmp::Ordering::Greater => -cij,
            std::cmp::Ordering::Equal => BigInt::zero(),
        }
    });
    ExchangeMatrix::new(entries, spec.symmetrizer.clone())
}

/// Mutation of an `m × n` matrix in column direction `k`:
/// `a'_ij = −a_ij` if `i = k` or `j = k`, else
/// `a_ij + [a_ik]_+ a_kj + a_ik [−a_kj]_+`.
pub fn mutate_matrix(a: &IntMatrix, k: usize) -> Result<IntMatrix> {
    if k >= a.cols() || k >= a.rows() {
        return input(format!("mutation direction {k} out of range"));
    }
    Ok(IntMatrix::from_fn(a.rows(), a.cols(), |i, j| {
        if i == k || j == k {
            -&a[(i, j)]
        } else {
            let aik = &a[(i, k)];
            let akj = &a[(k, j)];
            &a[(i, j)] + pos_part(aik) * akj + aik * pos_part(&-akj)
        }
    }))
}

/// Exchange matrix together with its C- and G-matrices relative to a fixed
/// initial vertex, and the path that reached it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MatrixFrame {
    pub b: ExchangeMatrix,
    pub c_matrix: IntMatrix,
    pub g_matrix: IntMatrix,
    pub path: Vec<usize>,
    initial_b: ExchangeMatrix,
}

impl MatrixFrame {
    /// The frame at the initial vertex: `C = G = I`.
    pub fn initial(b: ExchangeMatrix) -> Self {
        let n = b.rank();
        Self {
            c_matrix: IntMatrix::identity(n),
            g_matrix: IntMatrix::identity(n),
            path: Vec::new(),
            initial_b: b.clone(),
            b,
        }
    }

    pub fn initial_b(&self) -> &ExchangeMatrix {
        &self.initial_b
    }

    pub fn rank(&self) -> usize {
        self.b.rank()
    }

    /// The `k`-th c-vector.
    pub fn c_vector(&self, k: usize) -> Vec<BigInt> {
        self.c_matrix.column(k)
    }

    /// The `k`-th g-vector.
    pub fn g_vector(&self, k: usize) -> Vec<BigInt> {
        self.g_matrix.column(k)
    }

    /// Whether mutation in direction `k` is green, i.e. the `k`-th c-vector is
    /// nonnegative. `None` if that column is not sign-coherent.
    pub fn is_green(&self, k: usize) -> Option<bool> {
        column_sign(&self.c_vector(k))
    }

    pub fn is_sign_coherent(&self) -> bool {
        self.c_matrix.is_column_sign_coherent()
    }

    /// `(G^T)^{-1} = S C S^{-1}`, checked in the equivalent integral form
    /// `G^T S C = S`.
    pub fn satisfies_duality(&self) -> bool {
        let s = self.symmetrizer_matrix();
        self.g_matrix.transpose().mul(&s).mul(&self.c_matrix) == s
    }

    pub fn symmetrizer_matrix(&self) -> IntMatrix {
        let d: Vec<BigInt> = self.b.skew_symmetrizer().iter().map(|&x| BigInt::from(x)).collect();
        IntMatrix::diagonal(&d)
    }

    fn check_invariants(&self) -> Result<()> {
        if !self.is_sign_coherent() {
            return internal(format!("C-matrix {} is not sign-coherent", self.c_matrix));
        }
        if !self.satisfies_duality() {
            return internal(format!("G = {} and C = {} violate (G^T)^-1 = S C S^-1", self.g_matrix, self.c_matrix));
        }
        Ok(())
    }
}

/// One mutation step of `B`, `C` and `G`.
///
/// `C` follows the bottom block of the extended matrix `[B; C]`; `G` follows
/// `g'_k = −g_k + Σ_i [b_ik]_+ g_i − Σ_i [c_ik]_+ b⁰_i`, where `b⁰_i` is
/// column `i` of the initial exchange matrix.
pub fn frame_mutate(f: &MatrixFrame, k: usize) -> Result<MatrixFrame> {
    let n = f.rank();
    if k >= n {
        return input(format!("mutation direction {k} out of range"));
    }
    if !f.is_sign_coherent() {
        return internal(format!("C-matrix {} is not sign-coherent", f.c_matrix));
    }
    let extended = mutate_matrix(&f.b.entries().vstack(&f.c_matrix), k)?;
    let b = ExchangeMatrix { entries: extended.row_block(0, n), skew_symmetrizer: f.b.skew_symmetrizer().to_vec() };
    let c_matrix = extended.row_block(n, n);

    let b0 = f.initial_b.entries();
    let mut g_matrix = f.g_matrix.clone();
    for r in 0..n {
        let mut v = -&f.g_matrix[(r, k)];
        for i in 0..n {
            let bik = &f.b.entries()[(i, k)];
            if bik.is_positive() {
                v += bik * &f.g_matrix[(r, i)];
            }
            let cik = &f.c_matrix[(i, k)];
            if cik.is_positive() {
                v -= cik * &b0[(r, i)];
            }
        }
        g_matrix[(r, k)] = v;
    }

    let mut path = f.path.clone();
    path.push(k);
    let out = MatrixFrame { b, c_matrix, g_matrix, path, initial_b: f.initial_b.clone() };
    out.check_invariants()?;
    Ok(out)
}

/// Applies `frame_mutate` along `path`, starting from `f`.
pub fn frame_mutate_path(f: &MatrixFrame, path: &[usize]) -> Result<MatrixFrame> {
    path.iter().try_fold(f.clone(), |acc, &k| frame_mutate(&acc, k))
}

/// The frame reached from the initial frame of `B^c` by the sink mutations
/// `μ_{c_1} ∘ ⋯ ∘ μ_{c_n}` followed by `f.path`.
pub fn tau_inverse_frame(spec: &CartanSpec, c: &CoxeterElement, f: &MatrixFrame) -> Result<MatrixFrame> {
    let bc = build_bc(spec, c)?;
    if f.initial_b != bc {
        return input("frame was not grown from the initial frame of B^c");
    }
    let prefix: Vec<usize> = c.order().iter().rev().copied().collect();
    let start = frame_mutate_path(&MatrixFrame::initial(bc), &prefix)?;
    frame_mutate_path(&start, &f.path)
}
