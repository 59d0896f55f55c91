//! Dense complex linear algebra over qubit registers.
//!
//! State vectors and operators are dense, double precision, and capped at
//! desk scale (12 live qubits, dimension 4096). Qubit 0 is the most
//! significant bit of a basis index and `a.tensor(&b)` places `a`'s qubits
//! before `b`'s; see [`crate::bits`].

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::bits::{check_positions, clear_bits, gather_bits, scatter_bits};
use crate::error::{Error, Result};
use crate::tol;

pub type C64 = Complex64;

/// Largest register accepted by [`random_unitary`].
pub const RANDOM_UNITARY_CAP: usize = 6;

/// Design scale of the dense simulator: 12 live qubits, dimension 4096.
pub const DEFAULT_QUBIT_CAP: usize = 12;

fn check_power_of_two(dim: usize, what: &str) -> Result<usize> {
    if dim == 0 || !dim.is_power_of_two() {
        return Err(Error::Dimension(format!(
            "{what} dimension {dim} is not a power of two"
        )));
    }
    Ok(dim.trailing_zeros() as usize)
}

/// A pure state over `k` qubits: `2^k` complex amplitudes.
#[derive(Debug, Clone, PartialEq)]
pub struct CVec {
    data: DVector<C64>,
}

impl CVec {
    pub fn from_amplitudes(amps: Vec<C64>) -> Result<Self> {
        check_power_of_two(amps.len(), "state")?;
        Ok(CVec {
            data: DVector::from_vec(amps),
        })
    }

    pub(crate) fn from_dvector(data: DVector<C64>) -> Self {
        debug_assert!(data.len().is_power_of_two());
        CVec { data }
    }

    /// `|index⟩` on `qubits` qubits.
    pub fn basis(qubits: usize, index: usize) -> Self {
        let mut data = DVector::zeros(1 << qubits);
        data[index] = C64::new(1.0, 0.0);
        CVec { data }
    }

    /// `|0…0⟩` on `qubits` qubits.
    pub fn zero_state(qubits: usize) -> Self {
        Self::basis(qubits, 0)
    }

    pub fn dim(&self) -> usize {
        self.data.len()
    }

    pub fn qubits(&self) -> usize {
        self.data.len().trailing_zeros() as usize
    }

    pub fn amp(&self, i: usize) -> C64 {
        self.data[i]
    }

    pub fn amps(&self) -> impl Iterator<Item = C64> + '_ {
        self.data.iter().copied()
    }

    pub fn norm(&self) -> f64 {
        self.data.norm()
    }

    pub fn is_normalized(&self, tol: f64) -> bool {
        (self.norm() - 1.0).abs() <= tol
    }

    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm();
        if n == 0.0 {
            return Err(Error::NotNormalized { norm: 0.0 });
        }
        Ok(CVec {
            data: &self.data / C64::new(n, 0.0),
        })
    }

    /// ⟨self|other⟩ (conjugate-linear in `self`).
    pub fn inner(&self, other: &CVec) -> C64 {
        self.data.dotc(&other.data)
    }

    pub fn scale(&self, factor: C64) -> Self {
        CVec {
            data: &self.data * factor,
        }
    }

    pub fn add(&self, other: &CVec) -> Self {
        CVec {
            data: &self.data + &other.data,
        }
    }

    pub fn sub(&self, other: &CVec) -> Self {
        CVec {
            data: &self.data - &other.data,
        }
    }

    /// Kronecker product; `self`'s qubits come first (most significant).
    pub fn tensor(&self, other: &CVec) -> CVec {
        let mut data = DVector::zeros(self.dim() * other.dim());
        for i in 0..self.dim() {
            for j in 0..other.dim() {
                data[i * other.dim() + j] = self.data[i] * other.data[j];
            }
        }
        CVec { data }
    }

    /// `|self⟩⟨other|`.
    pub fn outer(&self, other: &CVec) -> CMat {
        let mut m = DMatrix::zeros(self.dim(), other.dim());
        for i in 0..self.dim() {
            for j in 0..other.dim() {
                m[(i, j)] = self.data[i] * other.data[j].conj();
            }
        }
        CMat { data: m }
    }

    pub fn max_abs_diff(&self, other: &CVec) -> f64 {
        assert_eq!(self.dim(), other.dim(), "comparing states of unequal dim");
        self.data
            .iter()
            .zip(other.data.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub(crate) fn as_dvector(&self) -> &DVector<C64> {
        &self.data
    }
}

/// A dense complex operator between qubit registers.
#[derive(Debug, Clone, PartialEq)]
pub struct CMat {
    data: DMatrix<C64>,
}

impl CMat {
    pub fn from_row_major(rows: usize, cols: usize, entries: Vec<C64>) -> Result<Self> {
        check_power_of_two(rows, "row")?;
        check_power_of_two(cols, "column")?;
        if entries.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "expected {} entries for a {rows}x{cols} matrix, got {}",
                rows * cols,
                entries.len()
            )));
        }
        Ok(CMat {
            data: DMatrix::from_row_iterator(rows, cols, entries),
        })
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> C64) -> Self {
        debug_assert!(rows.is_power_of_two() && cols.is_power_of_two());
        CMat {
            data: DMatrix::from_fn(rows, cols, f),
        }
    }

    pub fn identity(qubits: usize) -> Self {
        CMat {
            data: DMatrix::identity(1 << qubits, 1 << qubits),
        }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        debug_assert!(rows.is_power_of_two() && cols.is_power_of_two());
        CMat {
            data: DMatrix::zeros(rows, cols),
        }
    }

    pub fn rows(&self) -> usize {
        self.data.nrows()
    }

    pub fn cols(&self) -> usize {
        self.data.ncols()
    }

    pub fn row_qubits(&self) -> usize {
        self.data.nrows().trailing_zeros() as usize
    }

    pub fn col_qubits(&self) -> usize {
        self.data.ncols().trailing_zeros() as usize
    }

    pub fn is_square(&self) -> bool {
        self.rows() == self.cols()
    }

    pub fn entry(&self, i: usize, j: usize) -> C64 {
        self.data[(i, j)]
    }

    pub fn set_entry(&mut self, i: usize, j: usize, v: C64) {
        self.data[(i, j)] = v;
    }

    pub fn dagger(&self) -> CMat {
        CMat {
            data: self.data.adjoint(),
        }
    }

    pub fn transpose(&self) -> CMat {
        CMat {
            data: self.data.transpose(),
        }
    }

    pub fn scale(&self, factor: C64) -> CMat {
        CMat {
            data: &self.data * factor,
        }
    }

    pub fn add(&self, other: &CMat) -> CMat {
        CMat {
            data: &self.data + &other.data,
        }
    }

    pub fn sub(&self, other: &CMat) -> CMat {
        CMat {
            data: &self.data - &other.data,
        }
    }

    pub fn mul_mat(&self, other: &CMat) -> CMat {
        CMat {
            data: &self.data * &other.data,
        }
    }

    pub fn mul_vec(&self, v: &CVec) -> CVec {
        CVec {
            data: &self.data * v.as_dvector(),
        }
    }

    pub fn trace(&self) -> C64 {
        self.data.trace()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.norm()
    }

    /// Kronecker product; `self`'s qubits come first (most significant).
    pub fn tensor(&self, other: &CMat) -> CMat {
        CMat {
            data: self.data.kronecker(&other.data),
        }
    }

    pub fn column(&self, j: usize) -> CVec {
        CVec {
            data: self.data.column(j).into_owned(),
        }
    }

    pub fn max_abs_diff(&self, other: &CMat) -> f64 {
        assert_eq!(self.rows(), other.rows());
        assert_eq!(self.cols(), other.cols());
        self.data
            .iter()
            .zip(other.data.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Max per-entry deviation of U†U from I; `None` for non-square input.
    pub fn unitarity_deviation(&self) -> Option<f64> {
        if !self.is_square() {
            return None;
        }
        let gram = self.data.adjoint() * &self.data;
        let id = DMatrix::<C64>::identity(self.rows(), self.cols());
        Some(
            gram.iter()
                .zip(id.iter())
                .map(|(a, b)| (a - b).norm())
                .fold(0.0, f64::max),
        )
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitarity_deviation().is_some_and(|d| d <= tol)
    }

    pub fn check_unitary(&self, tol: f64) -> Result<()> {
        match self.unitarity_deviation() {
            Some(d) if d <= tol => Ok(()),
            Some(d) => Err(Error::NotUnitary { deviation: d }),
            None => Err(Error::Dimension(format!(
                "unitary check on a {}x{} matrix",
                self.rows(),
                self.cols()
            ))),
        }
    }

    pub fn hermiticity_deviation(&self) -> f64 {
        self.data
            .iter()
            .zip(self.data.adjoint().iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub(crate) fn as_dmatrix(&self) -> &DMatrix<C64> {
        &self.data
    }
}

impl std::ops::Mul<&CMat> for &CMat {
    type Output = CMat;
    fn mul(self, rhs: &CMat) -> CMat {
        self.mul_mat(rhs)
    }
}

impl std::ops::Mul<&CVec> for &CMat {
    type Output = CVec;
    fn mul(self, rhs: &CVec) -> CVec {
        self.mul_vec(rhs)
    }
}

/// Schmidt normal form of a bipartite pure state:
/// `Σ coeffs[i] · left[i] ⊗ right[i]` with orthonormal local bases and
/// non-increasing non-negative coefficients.
#[derive(Debug, Clone)]
pub struct SchmidtForm {
    pub coeffs: Vec<f64>,
    pub left: Vec<CVec>,
    pub right: Vec<CVec>,
}

impl SchmidtForm {
    pub fn rank(&self) -> usize {
        self.coeffs.len()
    }

    pub fn reconstruct(&self) -> CVec {
        let dim = self.left[0].dim() * self.right[0].dim();
        let mut acc = CVec::from_dvector(DVector::zeros(dim));
        for i in 0..self.rank() {
            let term = self.left[i].tensor(&self.right[i]);
            acc = acc.add(&term.scale(C64::new(self.coeffs[i], 0.0)));
        }
        acc
    }
}

/// Apply `u` on the `targets` of state `s`, identity elsewhere.
///
/// `targets[0]` is mapped to the most significant input bit of `u`.
pub fn apply_on(u: &CMat, targets: &[usize], s: &CVec) -> Result<CVec> {
    let k = s.qubits();
    check_positions(targets, k)?;
    if !u.is_square() || u.row_qubits() != targets.len() {
        return Err(Error::Dimension(format!(
            "gate of {}x{} applied on {} qubits",
            u.rows(),
            u.cols(),
            targets.len()
        )));
    }
    let dim = s.dim();
    let sub_dim = u.rows();
    let mut out = DVector::zeros(dim);
    for i in 0..dim {
        let row = gather_bits(i, targets, k);
        let base = clear_bits(i, targets, k);
        let mut acc = C64::new(0.0, 0.0);
        for col in 0..sub_dim {
            let entry = u.entry(row, col);
            if entry != C64::new(0.0, 0.0) {
                acc += entry * s.amp(base | scatter_bits(col, targets, k));
            }
        }
        out[i] = acc;
    }
    Ok(CVec { data: out })
}

/// The full `total`-qubit matrix acting as `u` on `targets`, identity
/// elsewhere.
pub fn embed(u: &CMat, targets: &[usize], total: usize) -> Result<CMat> {
    check_positions(targets, total)?;
    if !u.is_square() || u.row_qubits() != targets.len() {
        return Err(Error::Dimension(format!(
            "embedding a {}x{} gate on {} qubits",
            u.rows(),
            u.cols(),
            targets.len()
        )));
    }
    let dim = 1usize << total;
    let mut m = DMatrix::zeros(dim, dim);
    for i in 0..dim {
        let row = gather_bits(i, targets, total);
        let base = clear_bits(i, targets, total);
        for col in 0..u.cols() {
            let entry = u.entry(row, col);
            if entry != C64::new(0.0, 0.0) {
                m[(i, base | scatter_bits(col, targets, total))] = entry;
            }
        }
    }
    Ok(CMat { data: m })
}

/// Reduced density matrix of a pure state on the `keep` qubits, in the
/// order given.
pub fn partial_trace_state(s: &CVec, keep: &[usize]) -> Result<CMat> {
    let k = s.qubits();
    check_positions(keep, k)?;
    let rest: Vec<usize> = (0..k).filter(|q| !keep.contains(q)).collect();
    let dk = 1usize << keep.len();
    let dr = 1usize << rest.len();
    let mut rho = DMatrix::zeros(dk, dk);
    for r in 0..dr {
        let offset = scatter_bits(r, &rest, k);
        for a in 0..dk {
            let va = s.amp(offset | scatter_bits(a, keep, k));
            if va == C64::new(0.0, 0.0) {
                continue;
            }
            for b in 0..dk {
                let vb = s.amp(offset | scatter_bits(b, keep, k));
                rho[(a, b)] += va * vb.conj();
            }
        }
    }
    Ok(CMat { data: rho })
}

/// Reduced density matrix of a density matrix on the `keep` qubits.
pub fn partial_trace_density(rho: &CMat, keep: &[usize]) -> Result<CMat> {
    if !rho.is_square() {
        return Err(Error::Dimension(format!(
            "partial trace of a {}x{} matrix",
            rho.rows(),
            rho.cols()
        )));
    }
    let k = rho.row_qubits();
    check_positions(keep, k)?;
    let rest: Vec<usize> = (0..k).filter(|q| !keep.contains(q)).collect();
    let dk = 1usize << keep.len();
    let dr = 1usize << rest.len();
    let mut out = DMatrix::zeros(dk, dk);
    for r in 0..dr {
        let offset = scatter_bits(r, &rest, k);
        for a in 0..dk {
            let ia = offset | scatter_bits(a, keep, k);
            for b in 0..dk {
                let ib = offset | scatter_bits(b, keep, k);
                out[(a, b)] += rho.entry(ia, ib);
            }
        }
    }
    Ok(CMat { data: out })
}

/// Schmidt decomposition across the cut after the first `cut_after` qubits.
///
/// Computed from the Hermitian eigendecomposition of the smaller Gram
/// matrix of the reshaped amplitude grid; the other side's basis is
/// recovered by applying the grid and renormalizing. This keeps the
/// coefficients consistent with reduced-density-matrix spectra to
/// machine precision.
pub fn schmidt(s: &CVec, cut_after: usize) -> Result<SchmidtForm> {
    let k = s.qubits();
    if cut_after > k {
        return Err(Error::QubitIndex {
            index: cut_after,
            total: k,
        });
    }
    if !s.is_normalized(tol::NORMALIZATION) {
        return Err(Error::NotNormalized { norm: s.norm() });
    }
    let dl = 1usize << cut_after;
    let dr = 1usize << (k - cut_after);
    let m = DMatrix::from_fn(dl, dr, |l, r| s.amp(l * dr + r));

    let left_is_small = dl <= dr;
    let gram = if left_is_small {
        &m * m.adjoint()
    } else {
        m.adjoint() * &m
    };
    let eig = SymmetricEigen::new(gram);

    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| {
        eig.eigenvalues[b]
            .partial_cmp(&eig.eigenvalues[a])
            .expect("finite eigenvalues")
    });

    let mut coeffs = Vec::new();
    let mut left = Vec::new();
    let mut right = Vec::new();
    for &i in &order {
        let lambda = eig.eigenvalues[i];
        if lambda <= tol::SCHMIDT_DROP {
            continue;
        }
        let sigma = lambda.sqrt();
        let small_side = eig.eigenvectors.column(i).into_owned();
        let other = if left_is_small {
            m.adjoint() * &small_side
        } else {
            &m * &small_side
        };
        let other = &other / C64::new(other.norm(), 0.0);
        coeffs.push(sigma);
        if left_is_small {
            left.push(CVec { data: small_side });
            right.push(CVec {
                data: other.conjugate(),
            });
        } else {
            left.push(CVec { data: other });
            right.push(CVec {
                data: small_side.conjugate(),
            });
        }
    }
    Ok(SchmidtForm {
        coeffs,
        left,
        right,
    })
}

fn hermitian_eigen(m: &CMat) -> (Vec<f64>, DMatrix<C64>) {
    // Symmetrize first so eigenvectors are exactly those of a Hermitian
    // matrix even when the input carries ~1e-15 asymmetry.
    let h = (m.as_dmatrix() + m.as_dmatrix().adjoint()) * C64::new(0.5, 0.0);
    let eig = SymmetricEigen::new(h);
    (eig.eigenvalues.iter().copied().collect(), eig.eigenvectors)
}

/// Eigenvalues of a Hermitian matrix, sorted descending.
pub fn hermitian_eigenvalues(m: &CMat) -> Vec<f64> {
    let (mut vals, _) = hermitian_eigen(m);
    vals.sort_by(|a, b| b.partial_cmp(a).expect("finite eigenvalues"));
    vals
}

/// Pseudo-inverse square root of a PSD matrix on its support.
///
/// Eigenvalues at or below `rel_cutoff` times the largest eigenvalue are
/// treated as zero, so `M·rho·M` is the projector onto the support of
/// `rho`.
pub fn pgm_sqrt_inv(rho: &CMat, rel_cutoff: f64) -> Result<CMat> {
    if !rho.is_square() {
        return Err(Error::Dimension(format!(
            "pseudo-inverse square root of a {}x{} matrix",
            rho.rows(),
            rho.cols()
        )));
    }
    let (vals, vecs) = hermitian_eigen(rho);
    let max = vals.iter().copied().fold(0.0, f64::max);
    let min = vals.iter().copied().fold(f64::INFINITY, f64::min);
    if min < tol::PSD_MIN_EIGENVALUE * max.max(1.0) {
        return Err(Error::NotPsd {
            min_eigenvalue: min,
        });
    }
    let dim = rho.rows();
    let cutoff = rel_cutoff * max;
    let mut out = DMatrix::zeros(dim, dim);
    for (i, &lambda) in vals.iter().enumerate() {
        if lambda <= cutoff {
            continue;
        }
        let col = vecs.column(i);
        let scale = C64::new(1.0 / lambda.sqrt(), 0.0);
        for a in 0..dim {
            for b in 0..dim {
                out[(a, b)] += scale * col[a] * col[b].conj();
            }
        }
    }
    Ok(CMat { data: out })
}

/// Projector onto the non-negative and strictly-negative eigenspaces of a
/// Hermitian matrix, in that order.
pub fn positive_negative_projectors(m: &CMat) -> (CMat, CMat) {
    let (vals, vecs) = hermitian_eigen(m);
    let dim = m.rows();
    let mut pos = DMatrix::zeros(dim, dim);
    for (i, &lambda) in vals.iter().enumerate() {
        if lambda > 0.0 {
            let col = vecs.column(i);
            for a in 0..dim {
                for b in 0..dim {
                    pos[(a, b)] += col[a] * col[b].conj();
                }
            }
        }
    }
    let neg = DMatrix::identity(dim, dim) - &pos;
    (CMat { data: pos }, CMat { data: neg })
}

/// Trace norm Σ|λ| of a Hermitian matrix.
pub fn trace_norm_hermitian(m: &CMat) -> f64 {
    hermitian_eigenvalues(m).iter().map(|l| l.abs()).sum()
}

/// Seeded pseudo-random unitary on `k` qubits.
///
/// QR of a complex Gaussian matrix with the R diagonal phases folded back
/// in, which is approximately Haar and fully deterministic per seed.
pub fn random_unitary(k: usize, seed: u64) -> Result<CMat> {
    if k > RANDOM_UNITARY_CAP {
        return Err(Error::RandomUnitaryCap {
            requested: k,
            cap: RANDOM_UNITARY_CAP,
        });
    }
    let dim = 1usize << k;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let normal = StandardNormal;
    let g = DMatrix::from_fn(dim, dim, |_, _| {
        C64::new(
            normal.sample(&mut rng),
            Distribution::<f64>::sample(&normal, &mut rng),
        ) / 2f64.sqrt()
    });
    let qr = g.qr();
    let r = qr.r();
    let mut q = qr.q();
    for j in 0..dim {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 {
            d / d.norm()
        } else {
            C64::new(1.0, 0.0)
        };
        for i in 0..dim {
            q[(i, j)] *= phase;
        }
    }
    Ok(CMat { data: q })
}

/// Seeded pseudo-random normalized state on `k` qubits.
pub fn random_state(k: usize, seed: u64) -> CVec {
    let dim = 1usize << k;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let normal = StandardNormal;
    let v = DVector::from_fn(dim, |_, _| {
        C64::new(
            normal.sample(&mut rng),
            Distribution::<f64>::sample(&normal, &mut rng),
        )
    });
    let n = v.norm();
    CVec {
        data: v / C64::new(n, 0.0),
    }
}

/// A unitary whose action on `|0…0⟩` is the given normalized state.
///
/// Remaining columns are completed deterministically by Gram–Schmidt over
/// the computational basis.
pub fn unitary_with_first_column(v: &CVec) -> Result<CMat> {
    if !v.is_normalized(tol::NORMALIZATION) {
        return Err(Error::NotNormalized { norm: v.norm() });
    }
    let dim = v.dim();
    let mut cols: Vec<DVector<C64>> = vec![v.as_dvector().clone()];
    for e in 0..dim {
        if cols.len() == dim {
            break;
        }
        let mut w = DVector::<C64>::zeros(dim);
        w[e] = C64::new(1.0, 0.0);
        for c in &cols {
            let overlap = c.dotc(&w);
            w -= c * overlap;
        }
        let n = w.norm();
        if n > 1e-7 {
            cols.push(w / C64::new(n, 0.0));
        }
    }
    debug_assert_eq!(cols.len(), dim);
    let mut m = DMatrix::zeros(dim, dim);
    for (j, c) in cols.iter().enumerate() {
        m.set_column(j, c);
    }
    Ok(CMat { data: m })
}

/// Relabel qubits of a state: position `i` of the result holds the qubit
/// that was at position `order[i]` of the input.
pub fn reorder_qubits(s: &CVec, order: &[usize]) -> Result<CVec> {
    let k = s.qubits();
    if order.len() != k {
        return Err(Error::Dimension(format!(
            "reorder of {k} qubits given {} positions",
            order.len()
        )));
    }
    check_positions(order, k)?;
    let mut out = DVector::zeros(s.dim());
    for b in 0..s.dim() {
        let mut target = 0usize;
        for (i, &src) in order.iter().enumerate() {
            target |= ((b >> (k - 1 - src)) & 1) << (k - 1 - i);
        }
        out[target] = s.amp(b);
    }
    Ok(CVec { data: out })
}

/// Permutation matrix sending a register laid out per `old_order` to the
/// layout `new_order` (both are lists of the same labels).
pub fn permutation_matrix(old_order: &[usize], new_order: &[usize]) -> Result<CMat> {
    let k = old_order.len();
    if new_order.len() != k {
        return Err(Error::Dimension(
            "permutation orders of unequal length".into(),
        ));
    }
    let mut pos_in_old = vec![usize::MAX; old_order.iter().max().map_or(0, |m| m + 1)];
    for (p, &label) in old_order.iter().enumerate() {
        pos_in_old[label] = p;
    }
    let order: Vec<usize> = new_order
        .iter()
        .map(|&label| {
            let p = *pos_in_old.get(label).unwrap_or(&usize::MAX);
            if p == usize::MAX {
                return Err(Error::Dimension(format!(
                    "label {label} missing from source order"
                )));
            }
            Ok(p)
        })
        .collect::<Result<_>>()?;
    let dim = 1usize << k;
    let mut m = DMatrix::zeros(dim, dim);
    for b in 0..dim {
        let mut target = 0usize;
        for (i, &src) in order.iter().enumerate() {
            target |= ((b >> (k - 1 - src)) & 1) << (k - 1 - i);
        }
        m[(target, b)] = C64::new(1.0, 0.0);
    }
    Ok(CMat { data: m })
}
