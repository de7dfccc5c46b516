//! Spin-1 single-site operators, their projector decompositions, basis
//! indexing and tensor embedding into n-site registers.
//!
//! Every site uses the S^z eigenbasis ordered |+1>, |0>, |-1>. Registers
//! are built with site 1 leftmost in every Kronecker product, so site 1 is
//! the most significant base-3 digit of a basis index.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use nalgebra::{DMatrix, DVector, Matrix3};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// A single-site 3x3 operator.
pub type SpinMatrix = Matrix3<C64>;

/// Absolute tolerance on max |M - M^dagger| for a matrix to count as Hermitian.
pub const HERMITIAN_TOL: f64 = 1e-12;

const ONE: C64 = C64::new(1.0, 0.0);
const ZERO: C64 = C64::new(0.0, 0.0);

/// Spin projection of one qutrit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Trit {
    Up,
    Zero,
    Down,
}

impl Trit {
    pub const ALL: [Trit; 3] = [Trit::Up, Trit::Zero, Trit::Down];

    pub fn value(self) -> i8 {
        match self {
            Trit::Up => 1,
            Trit::Zero => 0,
            Trit::Down => -1,
        }
    }

    /// Position of this state in the per-site basis (|+1>, |0>, |-1>).
    pub fn digit(self) -> usize {
        match self {
            Trit::Up => 0,
            Trit::Zero => 1,
            Trit::Down => 2,
        }
    }

    pub fn from_digit(d: usize) -> Option<Trit> {
        Trit::ALL.get(d).copied()
    }
}

impl TryFrom<i64> for Trit {
    type Error = Error;

    fn try_from(v: i64) -> Result<Self> {
        match v {
            1 => Ok(Trit::Up),
            0 => Ok(Trit::Zero),
            -1 => Ok(Trit::Down),
            other => Err(Error::InvalidTrit(other)),
        }
    }
}

impl fmt::Display for Trit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

/// A computational basis label |m_1, ..., m_n>.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pattern(Vec<Trit>);

impl Pattern {
    pub fn new(trits: Vec<Trit>) -> Result<Self> {
        if trits.is_empty() {
            return Err(Error::EmptyPattern);
        }
        Ok(Pattern(trits))
    }

    /// Builds a pattern from signed spin projections, e.g. `&[0, 1]`.
    pub fn from_values(values: &[i64]) -> Result<Self> {
        let trits = values.iter().map(|&v| Trit::try_from(v)).collect::<Result<Vec<_>>>()?;
        Pattern::new(trits)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn trits(&self) -> &[Trit] {
        &self.0
    }

    pub fn values(&self) -> Vec<i8> {
        self.0.iter().map(|t| t.value()).collect()
    }

    /// Index of this pattern in the 3^n computational basis.
    pub fn index(&self) -> usize {
        basis_index(self)
    }

    /// Every pattern of length `n`, in basis-index order.
    pub fn all(n: usize) -> impl Iterator<Item = Pattern> {
        (0..register_dim(n)).map(move |i| pattern_from_index(i, n))
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

impl FromStr for Pattern {
    type Err = Error;

    /// Parses the `;`-joined signed form produced by `Display`, e.g. `-1;0;1`.
    fn from_str(s: &str) -> Result<Self> {
        let values = s
            .split(';')
            .map(|tok| tok.trim().parse::<i64>().map_err(|_| Error::BadPattern(s.to_string())))
            .collect::<Result<Vec<_>>>()?;
        Pattern::from_values(&values)
    }
}

/// 3^n.
pub fn register_dim(n: usize) -> usize {
    3usize.pow(n as u32)
}

/// Number of sites `n` for a dimension 3^n, if it is one.
pub fn sites_for_dim(dim: usize) -> Option<usize> {
    let mut n = 0;
    let mut d = 1;
    while d < dim {
        d *= 3;
        n += 1;
    }
    (d == dim && dim > 0).then_some(n)
}

/// Maps d(+1)=0, d(0)=1, d(-1)=2 and reads the digits base 3, site 1 first.
pub fn basis_index(p: &Pattern) -> usize {
    p.trits().iter().fold(0, |acc, t| acc * 3 + t.digit())
}

/// Inverse of [`basis_index`] for registers of `n` sites.
pub fn pattern_from_index(mut index: usize, n: usize) -> Pattern {
    let mut trits = vec![Trit::Up; n];
    for slot in trits.iter_mut().rev() {
        *slot = Trit::from_digit(index % 3).unwrap();
        index /= 3;
    }
    Pattern(trits)
}

/// The spin-1 matrices (S^x, S^y, S^z) in the |+1>, |0>, |-1> basis.
pub fn spin_operators() -> (SpinMatrix, SpinMatrix, SpinMatrix) {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let a = C64::new(r, 0.0);
    let ia = C64::new(0.0, r);
    let sx = Matrix3::new(ZERO, a, ZERO, a, ZERO, a, ZERO, a, ZERO);
    let sy = Matrix3::new(ZERO, -ia, ZERO, ia, ZERO, -ia, ZERO, ia, ZERO);
    let sz = Matrix3::from_diagonal(&nalgebra::Vector3::new(ONE, ZERO, -ONE));
    (sx, sy, sz)
}

/// S^+ and S^- defined as (S^x +- i S^y)/sqrt(2).
///
/// Note the extra 1/sqrt(2): with this normalisation S^+ has unit entries,
/// so S^+ S^+ = |1><-1| and [S^+, S^-] = S^z.
pub fn ladder_operators() -> (SpinMatrix, SpinMatrix) {
    let (sx, sy, _) = spin_operators();
    let i = C64::new(0.0, 1.0);
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let plus = (sx + sy * i) * C64::new(r, 0.0);
    let minus = (sx - sy * i) * C64::new(r, 0.0);
    (plus, minus)
}

/// |m><m| written through S^z alone.
pub fn diag_projector(m: Trit) -> SpinMatrix {
    let (_, _, sz) = spin_operators();
    let id = SpinMatrix::identity();
    let half = C64::new(0.5, 0.0);
    match m {
        Trit::Up => sz * (id + sz) * half,
        Trit::Zero => id - sz * sz,
        Trit::Down => -(sz * (id - sz) * half),
    }
}

/// |bra><ket| for bra != ket, written as products of S^z and S^+-.
pub fn offdiag_projector(bra: Trit, ket: Trit) -> Result<SpinMatrix> {
    let (_, _, sz) = spin_operators();
    let (sp, sm) = ladder_operators();
    Ok(match (bra, ket) {
        (Trit::Zero, Trit::Up) => sm * sz,
        (Trit::Up, Trit::Zero) => sz * sp,
        (Trit::Down, Trit::Zero) => -(sz * sm),
        (Trit::Zero, Trit::Down) => -(sp * sz),
        (Trit::Down, Trit::Up) => sm * sm,
        (Trit::Up, Trit::Down) => sp * sp,
        (same, _) => return Err(Error::DiagonalRequested(same.value())),
    })
}

/// |bra><ket| from the basis vectors directly.
pub fn outer(bra: Trit, ket: Trit) -> SpinMatrix {
    let mut m = SpinMatrix::zeros();
    m[(bra.digit(), ket.digit())] = ONE;
    m
}

/// |bra><ket| via the spin-operator forms, covering the diagonal case too.
pub fn spin_projector(bra: Trit, ket: Trit) -> SpinMatrix {
    if bra == ket {
        diag_projector(bra)
    } else {
        offdiag_projector(bra, ket).expect("distinct trits")
    }
}

/// Dense complex square operator on a register of n qutrits.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorMatrix(DMatrix<C64>);

impl OperatorMatrix {
    /// Wraps a matrix whose dimension must be a power of three.
    pub fn new(m: DMatrix<C64>) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return Err(Error::DimensionMismatch {
                left: m.nrows(),
                right: m.ncols(),
            });
        }
        if sites_for_dim(m.nrows()).is_none() {
            return Err(Error::InvalidParameter {
                name: "dim",
                value: m.nrows() as f64,
                reason: "not a power of three",
            });
        }
        Ok(OperatorMatrix(m))
    }

    pub fn zeros(n: usize) -> Self {
        let d = register_dim(n);
        OperatorMatrix(DMatrix::zeros(d, d))
    }

    pub fn identity(n: usize) -> Self {
        let d = register_dim(n);
        OperatorMatrix(DMatrix::identity(d, d))
    }

    /// Real diagonal operator.
    pub fn from_real_diagonal(diag: &[f64]) -> Result<Self> {
        let v = DVector::from_iterator(diag.len(), diag.iter().map(|&x| C64::new(x, 0.0)));
        OperatorMatrix::new(DMatrix::from_diagonal(&v))
    }

    /// Kronecker product of one single-site operator per site, site 1 leftmost.
    pub fn kron_sites(ops: &[SpinMatrix]) -> Self {
        let mut acc = DMatrix::from_element(1, 1, ONE);
        for op in ops {
            acc = acc.kronecker(op);
        }
        OperatorMatrix(acc)
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn sites(&self) -> usize {
        sites_for_dim(self.dim()).unwrap()
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.0
    }

    pub fn into_matrix(self) -> DMatrix<C64> {
        self.0
    }

    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.0[(row, col)]
    }

    pub fn trace(&self) -> C64 {
        self.0.trace()
    }

    pub fn adjoint(&self) -> Self {
        OperatorMatrix(self.0.adjoint())
    }

    /// max |M - M^dagger| over all entries.
    pub fn hermiticity_error(&self) -> f64 {
        let d = self.dim();
        let mut worst = 0.0f64;
        for i in 0..d {
            for j in i..d {
                worst = worst.max((self.0[(i, j)] - self.0[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermiticity_error() < HERMITIAN_TOL
    }

    pub fn ensure_hermitian(&self) -> Result<()> {
        let err = self.hermiticity_error();
        if err < HERMITIAN_TOL {
            Ok(())
        } else {
            Err(Error::NotHermitian(err))
        }
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &OperatorMatrix) -> f64 {
        (&self.0 - &other.0).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn scale(&self, s: f64) -> Self {
        OperatorMatrix(&self.0 * C64::new(s, 0.0))
    }

    /// `self += s * other`, in place.
    pub fn add_scaled(&mut self, s: f64, other: &OperatorMatrix) {
        self.0.zip_apply(&other.0, |a, b| *a += b * s);
    }

    pub fn matmul(&self, other: &OperatorMatrix) -> Self {
        OperatorMatrix(&self.0 * &other.0)
    }

    pub fn apply(&self, v: &StateVector) -> StateVector {
        StateVector(&self.0 * &v.0)
    }

    /// Ascending eigenvalues and matching orthonormal eigenvectors (columns)
    /// of a Hermitian matrix.
    pub fn eigh(&self) -> Result<(Vec<f64>, DMatrix<C64>)> {
        self.ensure_hermitian()?;
        let eig = self.0.clone().symmetric_eigen();
        let mut order: Vec<usize> = (0..self.dim()).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
        let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
        let vectors = DMatrix::from_fn(self.dim(), self.dim(), |r, c| eig.eigenvectors[(r, order[c])]);
        Ok((values, vectors))
    }

    /// Ascending eigenvalues of a Hermitian matrix.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        self.ensure_hermitian()?;
        let mut v: Vec<f64> = self.0.clone().symmetric_eigenvalues().iter().copied().collect();
        v.sort_by(f64::total_cmp);
        Ok(v)
    }
}

impl Add for &OperatorMatrix {
    type Output = OperatorMatrix;
    fn add(self, rhs: &OperatorMatrix) -> OperatorMatrix {
        OperatorMatrix(&self.0 + &rhs.0)
    }
}

impl Sub for &OperatorMatrix {
    type Output = OperatorMatrix;
    fn sub(self, rhs: &OperatorMatrix) -> OperatorMatrix {
        OperatorMatrix(&self.0 - &rhs.0)
    }
}

impl Mul<f64> for &OperatorMatrix {
    type Output = OperatorMatrix;
    fn mul(self, rhs: f64) -> OperatorMatrix {
        self.scale(rhs)
    }
}

impl Neg for &OperatorMatrix {
    type Output = OperatorMatrix;
    fn neg(self) -> OperatorMatrix {
        OperatorMatrix(-&self.0)
    }
}

/// |p><p| as the Kronecker product of per-site diagonal projectors.
pub fn pattern_projector(p: &Pattern) -> OperatorMatrix {
    let ops: Vec<SpinMatrix> = p.trits().iter().map(|&m| diag_projector(m)).collect();
    OperatorMatrix::kron_sites(&ops)
}

/// |a><b| between two patterns, built site by site from the spin-operator
/// projector forms.
pub fn pattern_transition(a: &Pattern, b: &Pattern) -> Result<OperatorMatrix> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            expected: a.len(),
            found: b.len(),
        });
    }
    let ops: Vec<SpinMatrix> = a
        .trits()
        .iter()
        .zip(b.trits())
        .map(|(&x, &y)| spin_projector(x, y))
        .collect();
    Ok(OperatorMatrix::kron_sites(&ops))
}

/// I x ... x op x ... x I with `op` on `site` (1-based).
pub fn embed_site(op: &SpinMatrix, site: usize, n: usize) -> Result<OperatorMatrix> {
    if site == 0 || site > n {
        return Err(Error::SiteOutOfRange { site, n });
    }
    let ops: Vec<SpinMatrix> = (1..=n)
        .map(|i| if i == site { *op } else { SpinMatrix::identity() })
        .collect();
    Ok(OperatorMatrix::kron_sites(&ops))
}

/// Normalized complex state on a register of n qutrits.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector(DVector<C64>);

impl StateVector {
    pub fn new(v: DVector<C64>) -> Result<Self> {
        if sites_for_dim(v.len()).is_none() {
            return Err(Error::InvalidParameter {
                name: "dim",
                value: v.len() as f64,
                reason: "not a power of three",
            });
        }
        Ok(StateVector(v))
    }

    /// The basis state for `p`.
    pub fn basis(p: &Pattern) -> Self {
        let mut v = DVector::zeros(register_dim(p.len()));
        v[p.index()] = ONE;
        StateVector(v)
    }

    /// Kronecker product of per-site amplitude triples, site 1 leftmost.
    pub fn product(sites: &[[C64; 3]]) -> Self {
        let mut acc = DVector::from_element(1, ONE);
        for s in sites {
            acc = acc.kronecker(&DVector::from_column_slice(s));
        }
        StateVector(acc)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn sites(&self) -> usize {
        sites_for_dim(self.dim()).unwrap()
    }

    pub fn amplitudes(&self) -> &DVector<C64> {
        &self.0
    }

    pub fn amplitude(&self, index: usize) -> C64 {
        self.0[index]
    }

    pub fn norm(&self) -> f64 {
        self.0.norm()
    }

    /// <self|other>.
    pub fn inner(&self, other: &StateVector) -> C64 {
        self.0.dotc(&other.0)
    }

    /// |amplitude|^2 on every basis state, in index order.
    pub fn probabilities(&self) -> Vec<f64> {
        self.0.iter().map(|z| z.norm_sqr()).collect()
    }
}

impl From<StateVector> for DVector<C64> {
    fn from(s: StateVector) -> Self {
        s.0
    }
}

pub(crate) fn state_from_raw(v: DVector<C64>) -> StateVector {
    StateVector(v)
}
