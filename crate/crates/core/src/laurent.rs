//! Sparse Laurent polynomials with big-integer coefficients, tropical
//! coefficients, and labeled-seed mutation.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{input, internal, Result};
use crate::matrix::IntMatrix;
use crate::mutation::{frame_mutate, ExchangeMatrix, MatrixFrame};
use crate::rootsys::{Root, RootSystem};

pub type Exponent = Vec<i32>;

/// A Laurent polynomial in cluster variables `x_1..x_nx` followed by
/// coefficient variables `y_1..y_ny`. Terms are kept in lexicographic order
/// of exponent vectors with no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPolynomial {
    nx: usize,
    ny: usize,
    terms: BTreeMap<Exponent, BigInt>,
}

impl LaurentPolynomial {
    pub fn zero(nx: usize, ny: usize) -> Self {
        Self { nx, ny, terms: BTreeMap::new() }
    }

    pub fn one(nx: usize, ny: usize) -> Self {
        Self::monomial(nx, ny, vec![0; nx + ny], BigInt::one())
    }

    pub fn monomial(nx: usize, ny: usize, exponent: Exponent, coeff: BigInt) -> Self {
        assert_eq!(exponent.len(), nx + ny, "exponent length mismatch");
        let mut p = Self::zero(nx, ny);
        if !coeff.is_zero() {
            p.terms.insert(exponent, coeff);
        }
        p
    }

    /// The variable with global index `i` (`x`'s first, then `y`'s).
    pub fn variable(nx: usize, ny: usize, i: usize) -> Self {
        let mut e = vec![0; nx + ny];
        e[i] = 1;
        Self::monomial(nx, ny, e, BigInt::one())
    }

    pub fn from_terms(nx: usize, ny: usize, terms: impl IntoIterator<Item = (Exponent, BigInt)>) -> Self {
        let mut p = Self::zero(nx, ny);
        for (e, c) in terms {
            assert_eq!(e.len(), nx + ny, "exponent length mismatch");
            p.add_term(e, c);
        }
        p
    }

    pub fn nx(&self) -> usize {
        self.nx
    }

    pub fn ny(&self) -> usize {
        self.ny
    }

    pub fn nvars(&self) -> usize {
        self.nx + self.ny
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &BigInt)> {
        self.terms.iter()
    }

    fn add_term(&mut self, e: Exponent, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_shape(&self, other: &Self) {
        assert_eq!((self.nx, self.ny), (other.nx, other.ny), "polynomial rings differ");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_shape(other);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self { nx: self.nx, ny: self.ny, terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_shape(other);
        let mut out = Self::zero(self.nx, self.ny);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Exponent = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one(self.nx, self.ny);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Multiplies by the monomial with the given exponent.
    pub fn shift(&self, exponent: &[i32]) -> Self {
        Self {
            nx: self.nx,
            ny: self.ny,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(exponent).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    /// Per-variable minimum exponent. `None` for the zero polynomial.
    pub fn min_exponents(&self) -> Option<Exponent> {
        self.fold_exponents(i32::min)
    }

    /// Per-variable maximum exponent. `None` for the zero polynomial.
    pub fn max_exponents(&self) -> Option<Exponent> {
        self.fold_exponents(i32::max)
    }

    fn fold_exponents(&self, f: fn(i32, i32) -> i32) -> Option<Exponent> {
        let mut it = self.terms.keys();
        let first = it.next()?.clone();
        Some(it.fold(first, |acc, e| acc.iter().zip(e).map(|(&a, &b)| f(a, b)).collect()))
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self` in
    /// the Laurent polynomial ring.
    ///
    /// Long division by lexicographic leading terms. An exact quotient has
    /// exponents inside the box `[min(self) − min(d), max(self) − max(d)]`,
    /// so leaving the box proves inexactness.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        self.check_shape(d);
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(self.clone());
        }
        let (lo_n, hi_n) = (self.min_exponents()?, self.max_exponents()?);
        let (lo_d, hi_d) = (d.min_exponents()?, d.max_exponents()?);
        let lo: Exponent = lo_n.iter().zip(&lo_d).map(|(a, b)| a - b).collect();
        let hi: Exponent = hi_n.iter().zip(&hi_d).map(|(a, b)| a - b).collect();
        if lo.iter().zip(&hi).any(|(a, b)| a > b) {
            return None;
        }
        let (lead_e, lead_c) = d.terms.iter().next_back()?;
        let mut rem = self.clone();
        let mut quot = Self::zero(self.nx, self.ny);
        while let Some((e, c)) = rem.terms.iter().next_back() {
            let (q, r) = c.div_rem(lead_c);
            if !r.is_zero() {
                return None;
            }
            let qe: Exponent = e.iter().zip(lead_e).map(|(a, b)| a - b).collect();
            if qe.iter().zip(lo.iter().zip(&hi)).any(|(x, (l, h))| x < l || x > h) {
                return None;
            }
            let t = Self::monomial(self.nx, self.ny, qe, q);
            rem = rem.sub(&t.mul(d));
            quot = quot.add(&t);
        }
        Some(quot)
    }

    /// Sets every `y_j` to 1.
    pub fn specialize_coefficients(&self) -> Self {
        Self::from_terms(self.nx, 0, self.terms.iter().map(|(e, c)| (e[..self.nx].to_vec(), c.clone())))
    }

    pub fn variable_name(&self, i: usize) -> String {
        if i < self.nx {
            format!("x{}", i + 1)
        } else {
            format!("y{}", i - self.nx + 1)
        }
    }

    /// The degree of every term under `deg x_i = e_i`, `deg y_j = −b⁰_j`
    /// (column `j` of `b0`), provided all terms agree.
    pub fn principal_degree(&self, b0: &IntMatrix) -> Option<Vec<BigInt>> {
        assert_eq!(self.ny, b0.cols());
        let n = self.nx;
        let mut degree: Option<Vec<BigInt>> = None;
        for e in self.terms.keys() {
            let mut d: Vec<BigInt> = e[..n].iter().map(|&a| BigInt::from(a)).collect();
            for (j, &yj) in e[n..].iter().enumerate() {
                for (i, di) in d.iter_mut().enumerate() {
                    *di -= BigInt::from(yj) * &b0[(i, j)];
                }
            }
            match &degree {
                None => degree = Some(d),
                Some(prev) if *prev == d => {}
                Some(_) => return None,
            }
        }
        degree
    }
}

impl fmt::Display for LaurentPolynomial {
    /// Terms in decreasing lexicographic order, e.g. `x1^-1*x2^-1 + 2*x1^-1 - 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in self.terms.iter().rev().enumerate() {
            let (sign, mag) = (c.is_negative(), c.abs());
            match (idx, sign) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &a)| a != 0)
                .map(|(i, &a)| if a == 1 { self.variable_name(i) } else { format!("{}^{a}", self.variable_name(i)) })
                .collect();
            if vars.is_empty() {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                write!(f, "{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

/// An element `∏ y_j^{a_j}` of the tropical semifield `Trop(y_1..y_n)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TropicalElement {
    pub exponents: Vec<i64>,
}

impl TropicalElement {
    pub fn one(n: usize) -> Self {
        Self { exponents: vec![0; n] }
    }

    pub fn generator(n: usize, j: usize) -> Self {
        let mut exponents = vec![0; n];
        exponents[j] = 1;
        Self { exponents }
    }

    /// `⊕`: componentwise minimum.
    pub fn oplus(&self, other: &Self) -> Self {
        Self { exponents: self.exponents.iter().zip(&other.exponents).map(|(&a, &b)| a.min(b)).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self { exponents: self.exponents.iter().zip(&other.exponents).map(|(a, b)| a + b).collect() }
    }

    pub fn pow(&self, k: i64) -> Self {
        Self { exponents: self.exponents.iter().map(|a| a * k).collect() }
    }

    pub fn inv(&self) -> Self {
        self.pow(-1)
    }

    pub fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CoefficientMode {
    /// `ℙ = {1}`; polynomials live in `x_1..x_n` only.
    Trivial,
    /// `ℙ = Trop(y_1..y_n)` with `y_{j;t₀} = y_j`; polynomials carry `y`'s.
    Principal,
}

/// Cluster variables, tropical coefficients and matrix data at one vertex of
/// the exchange tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledSeed {
    pub mode: CoefficientMode,
    pub vars: Vec<LaurentPolynomial>,
    pub coeffs: Vec<TropicalElement>,
    pub frame: MatrixFrame,
}

impl LabeledSeed {
    pub fn initial(b: ExchangeMatrix, mode: CoefficientMode) -> Self {
        let n = b.rank();
        let ny = match mode {
            CoefficientMode::Trivial => 0,
            CoefficientMode::Principal => n,
        };
        let coeffs = match mode {
            CoefficientMode::Trivial => vec![TropicalElement::one(n); n],
            CoefficientMode::Principal => (0..n).map(|j| TropicalElement::generator(n, j)).collect(),
        };
        Self {
            mode,
            vars: (0..n).map(|i| LaurentPolynomial::variable(n, ny, i)).collect(),
            coeffs,
            frame: MatrixFrame::initial(b),
        }
    }

    pub fn rank(&self) -> usize {
        self.vars.len()
    }
}

fn to_i32(x: &BigInt) -> Result<i32> {
    x.to_i32().ok_or_else(|| crate::Error::Internal(format!("exponent {x} out of range")))
}

fn to_i64(x: &BigInt) -> Result<i64> {
    x.to_i64().ok_or_else(|| crate::Error::Internal(format!("exponent {x} out of range")))
}

/// Mutation `μ_k` of a labeled seed, `k` 0-based.
///
/// `x'_k = (y_k ∏ x_i^{[b_ik]_+} + ∏ x_i^{[−b_ik]_+}) / ((y_k ⊕ 1) x_k)` and
/// `y'_j = y_j y_k^{[b_kj]_+} (y_k ⊕ 1)^{−b_kj}`, `y'_k = y_k^{−1}`.
pub fn mutate_seed(s: &LabeledSeed, k: usize) -> Result<LabeledSeed> {
    let n = s.rank();
    if k >= n {
        return input(format!("mutation direction {k} out of range"));
    }
    let b = s.frame.b.entries();
    let (nx, ny) = (s.vars[0].nx(), s.vars[0].ny());

    let yk = &s.coeffs[k];
    let yk_oplus_one = yk.oplus(&TropicalElement::one(n));
    let mut plus = LaurentPolynomial::one(nx, ny);
    let mut minus = LaurentPolynomial::one(nx, ny);
    if s.mode == CoefficientMode::Principal {
        let mut e_plus = vec![0i32; nx + ny];
        let mut e_minus = vec![0i32; nx + ny];
        let num_plus = yk.div(&yk_oplus_one);
        let num_minus = yk_oplus_one.inv();
        for j in 0..n {
            e_plus[nx + j] = num_plus.exponents[j] as i32;
            e_minus[nx + j] = num_minus.exponents[j] as i32;
        }
        plus = plus.shift(&e_plus);
        minus = minus.shift(&e_minus);
    }
    for i in 0..n {
        let bik = &b[(i, k)];
        if bik.is_positive() {
            plus = plus.mul(&s.vars[i].pow(to_i32(bik)? as u32));
        } else if bik.is_negative() {
            minus = minus.mul(&s.vars[i].pow(to_i32(&-bik)? as u32));
        }
    }
    let numerator = plus.add(&minus);
    let new_var = numerator.exact_div(&s.vars[k]).ok_or_else(|| {
        crate::Error::Internal(format!(
            "Laurent phenomenon violated: ({numerator}) / ({}) is not a Laurent polynomial",
            s.vars[k]
        ))
    })?;

    let mut coeffs = s.coeffs.clone();
    for j in 0..n {
        if j == k {
            coeffs[j] = yk.inv();
        } else {
            let bkj = to_i64(&b[(k, j)])?;
            coeffs[j] = s.coeffs[j].mul(&yk.pow(bkj.max(0))).mul(&yk_oplus_one.pow(-bkj));
        }
    }

    let mut vars = s.vars.clone();
    vars[k] = new_var;
    Ok(LabeledSeed { mode: s.mode, vars, coeffs, frame: frame_mutate(&s.frame, k)? })
}

/// `d_i = −(least exponent of x_i)`; coefficient variables are ignored.
pub fn denominator_vector(x: &LaurentPolynomial) -> Result<Vec<i64>> {
    let lo = match x.min_exponents() {
        Some(lo) => lo,
        None => return input("the zero polynomial has no denominator vector"),
    };
    Ok(lo[..x.nx()].iter().map(|&a| -(a as i64)).collect())
}

/// `θ_c(x) = Σ d_i α_i`, checked to lie in `Φ_{≥−1}`.
pub fn theta(rs: &RootSystem, x: &LaurentPolynomial) -> Result<Root> {
    if x.nx() != rs.rank() {
        return input("polynomial ring does not match the root system rank");
    }
    let root = Root(denominator_vector(x)?);
    if !rs.contains(&root) {
        return internal(format!("denominator vector {root} of {x} is not an almost positive root"));
    }
    Ok(root)
}
