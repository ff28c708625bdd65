//! Finite-dimensional quantum state algebra on labeled tensor-product spaces.
//!
//! States live on small spaces built from named subsystems, each with a named
//! finite level alphabet (a photon polarization, a detector pointer, an
//! emitted photon). Pure states are sparse amplitude maps keyed by basis
//! labels; density matrices are dense and carry the same labeling. All values
//! are immutable after construction and every operation is a pure function.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Normalization tolerance for states and density matrices.
pub const NORM_TOL: f64 = 1e-12;

/// Amplitudes below this magnitude are dropped, so interference cancellation
/// yields structural zeros instead of residue.
pub const PRUNE_TOL: f64 = 1e-14;

/// Density-matrix eigenvalues may undershoot zero by at most this much.
pub const EIGENVALUE_TOL: f64 = 1e-10;

/// A named subsystem with a finite level alphabet, e.g. a polarization with
/// levels `H`/`V` or a detector pointer with levels `D1`/`D2`/`ready`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subsystem {
    name: String,
    levels: Vec<String>,
}

impl Subsystem {
    pub fn new(name: &str, levels: &[&str]) -> Subsystem {
        Subsystem {
            name: name.to_string(),
            levels: levels.iter().map(|s| s.to_string()).collect(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn levels(&self) -> impl Iterator<Item = &str> {
        self.levels.iter().map(|s| s.as_str())
    }

    pub fn dim(&self) -> usize {
        self.levels.len()
    }

    fn level_index(&self, level: &str) -> Option<usize> {
        self.levels.iter().position(|l| l == level)
    }
}

/// An ordered list of subsystems defining a tensor-product space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Space {
    subsystems: Vec<Subsystem>,
}

impl Space {
    pub fn new(subsystems: Vec<Subsystem>) -> Result<Space> {
        if subsystems.is_empty() {
            return Err(Error::Parameter("space needs at least one subsystem".into()));
        }
        for (i, s) in subsystems.iter().enumerate() {
            if s.levels.is_empty() {
                return Err(Error::Parameter(format!(
                    "subsystem '{}' has an empty level alphabet",
                    s.name
                )));
            }
            if subsystems[..i].iter().any(|t| t.name == s.name) {
                return Err(Error::OverlappingSubsystems(s.name.clone()));
            }
        }
        Ok(Space { subsystems })
    }

    pub fn single(subsystem: Subsystem) -> Space {
        Space {
            subsystems: vec![subsystem],
        }
    }

    pub fn subsystems(&self) -> &[Subsystem] {
        &self.subsystems
    }

    pub fn subsystem(&self, name: &str) -> Result<&Subsystem> {
        self.subsystems
            .iter()
            .find(|s| s.name == name)
            .ok_or_else(|| Error::UnknownSubsystem(name.to_string()))
    }

    /// Total dimension: the product of subsystem dimensions.
    pub fn dim(&self) -> usize {
        self.subsystems.iter().map(|s| s.dim()).product()
    }

    /// Build a basis label from one level name per subsystem, in order.
    pub fn label(&self, levels: &[&str]) -> Result<BasisLabel> {
        if levels.len() != self.subsystems.len() {
            return Err(Error::SpaceMismatch(format!(
                "label has {} factors, space has {} subsystems",
                levels.len(),
                self.subsystems.len()
            )));
        }
        let mut indices = Vec::with_capacity(levels.len());
        for (sub, level) in self.subsystems.iter().zip(levels) {
            let idx = sub
                .level_index(level)
                .ok_or_else(|| Error::UnknownSubsystem(format!("{}:{}", sub.name, level)))?;
            indices.push(idx as u16);
        }
        Ok(BasisLabel(indices))
    }

    /// Level names of a label, in subsystem order.
    pub fn level_names(&self, label: &BasisLabel) -> Vec<&str> {
        label
            .0
            .iter()
            .zip(&self.subsystems)
            .map(|(&i, sub)| sub.levels[i as usize].as_str())
            .collect()
    }

    pub fn format_label(&self, label: &BasisLabel) -> String {
        format!("|{}>", self.level_names(label).join(","))
    }

    /// Flat index of a label under mixed-radix enumeration, first subsystem
    /// most significant.
    fn index_of(&self, label: &BasisLabel) -> usize {
        let mut idx = 0;
        for (&i, sub) in label.0.iter().zip(&self.subsystems) {
            idx = idx * sub.dim() + i as usize;
        }
        idx
    }

    fn label_at(&self, mut index: usize) -> BasisLabel {
        let mut rev = Vec::with_capacity(self.subsystems.len());
        for sub in self.subsystems.iter().rev() {
            rev.push((index % sub.dim()) as u16);
            index /= sub.dim();
        }
        rev.reverse();
        BasisLabel(rev)
    }

    /// All basis labels in enumeration order.
    pub fn labels(&self) -> Vec<BasisLabel> {
        (0..self.dim()).map(|i| self.label_at(i)).collect()
    }
}

/// One basis ket of a [`Space`], stored as a level index per subsystem.
///
/// Labels only make sense together with the space they were built from; every
/// state carries its space and all its labels refer to it.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasisLabel(Vec<u16>);

impl BasisLabel {
    fn factor(&self, subsystem_index: usize) -> u16 {
        self.0[subsystem_index]
    }
}

/// A normalized pure state: a sparse complex-amplitude map over basis labels.
///
/// Invariants: the squared-magnitude sum is 1 within [`NORM_TOL`] and no
/// stored amplitude has magnitude below [`PRUNE_TOL`].
#[derive(Debug, Clone)]
pub struct PureState {
    space: Space,
    amps: BTreeMap<BasisLabel, Complex64>,
}

impl PureState {
    /// A single basis ket with amplitude 1.
    pub fn basis(space: Space, levels: &[&str]) -> Result<PureState> {
        let label = space.label(levels)?;
        let mut amps = BTreeMap::new();
        amps.insert(label, Complex64::new(1.0, 0.0));
        Ok(PureState { space, amps })
    }

    /// Build a state from explicit amplitudes. The amplitudes must already be
    /// normalized: their squared magnitudes must sum to 1 within [`NORM_TOL`].
    pub fn new(space: Space, amplitudes: &[(&[&str], Complex64)]) -> Result<PureState> {
        let mut amps = BTreeMap::new();
        for (levels, amp) in amplitudes {
            let label = space.label(levels)?;
            *amps.entry(label).or_insert(Complex64::ZERO) += amp;
        }
        let state = PureState::from_map(space, amps)?;
        Ok(state)
    }

    /// Internal constructor: prunes tiny amplitudes and checks the norm.
    pub(crate) fn from_map(
        space: Space,
        amps: BTreeMap<BasisLabel, Complex64>,
    ) -> Result<PureState> {
        let amps: BTreeMap<_, _> = amps
            .into_iter()
            .filter(|(_, a)| a.norm() >= PRUNE_TOL)
            .collect();
        let norm_sq: f64 = amps.values().map(|a| a.norm_sqr()).sum();
        if (norm_sq - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized(format!(
                "squared norm is {norm_sq:.17}"
            )));
        }
        Ok(PureState { space, amps })
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    /// Amplitude of the basis ket named by one level per subsystem; zero if
    /// the term is absent.
    pub fn amplitude(&self, levels: &[&str]) -> Result<Complex64> {
        let label = self.space.label(levels)?;
        Ok(self.amps.get(&label).copied().unwrap_or(Complex64::ZERO))
    }

    pub fn norm(&self) -> f64 {
        self.amps
            .values()
            .map(|a| a.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Number of stored (nonzero) terms.
    pub fn term_count(&self) -> usize {
        self.amps.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BasisLabel, Complex64)> {
        self.amps.iter().map(|(l, &a)| (l, a))
    }
}

/// Tensor product of two pure states on disjoint subsystem sets. The result's
/// subsystem order is `a`'s subsystems followed by `b`'s.
pub fn tensor(a: &PureState, b: &PureState) -> Result<PureState> {
    for sa in &a.space.subsystems {
        if b.space.subsystems.iter().any(|sb| sb.name == sa.name) {
            return Err(Error::OverlappingSubsystems(sa.name.clone()));
        }
    }
    let mut subsystems = a.space.subsystems.clone();
    subsystems.extend(b.space.subsystems.clone());
    let space = Space::new(subsystems)?;
    let mut amps = BTreeMap::new();
    for (la, &ca) in &a.amps {
        for (lb, &cb) in &b.amps {
            let mut indices = la.0.clone();
            indices.extend_from_slice(&lb.0);
            amps.insert(BasisLabel(indices), ca * cb);
        }
    }
    PureState::from_map(space, amps)
}

/// Inner product `<a|b>`: conjugate-linear in `a`, linear in `b`.
pub fn inner_product(a: &PureState, b: &PureState) -> Result<Complex64> {
    if a.space != b.space {
        return Err(Error::SpaceMismatch(
            "inner product requires identical spaces".into(),
        ));
    }
    let mut sum = Complex64::ZERO;
    for (label, &ca) in &a.amps {
        if let Some(&cb) = b.amps.get(label) {
            sum += ca.conj() * cb;
        }
    }
    Ok(sum)
}

/// A Hermitian, unit-trace, positive semidefinite operator on a labeled space.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    space: Space,
    mat: DMatrix<Complex64>,
}

impl DensityMatrix {
    /// Build from a dense matrix in the space's label enumeration order,
    /// running the full validity checks.
    pub fn from_matrix(space: Space, mat: DMatrix<Complex64>) -> Result<DensityMatrix> {
        let dim = space.dim();
        if mat.nrows() != dim || mat.ncols() != dim {
            return Err(Error::SpaceMismatch(format!(
                "matrix is {}x{}, space dimension is {dim}",
                mat.nrows(),
                mat.ncols()
            )));
        }
        let rho = DensityMatrix { space, mat };
        rho.validate()?;
        Ok(rho)
    }

    fn unchecked(space: Space, mat: DMatrix<Complex64>) -> DensityMatrix {
        DensityMatrix { space, mat }
    }

    /// The maximally mixed state `I/d`.
    pub fn maximally_mixed(space: Space) -> DensityMatrix {
        let d = space.dim();
        let mat = DMatrix::from_diagonal_element(d, d, Complex64::new(1.0 / d as f64, 0.0));
        DensityMatrix { space, mat }
    }

    /// Convex combination of density matrices on the same space. Weights must
    /// be nonnegative and sum to 1 within [`NORM_TOL`].
    pub fn mix(parts: &[(f64, &DensityMatrix)]) -> Result<DensityMatrix> {
        let (_, first) = parts
            .first()
            .ok_or_else(|| Error::Parameter("mixture needs at least one component".into()))?;
        let total: f64 = parts.iter().map(|(w, _)| w).sum();
        if (total - 1.0).abs() > NORM_TOL || parts.iter().any(|(w, _)| *w < 0.0) {
            return Err(Error::Parameter(format!(
                "mixture weights must be nonnegative and sum to 1, got total {total}"
            )));
        }
        let dim = first.space.dim();
        let mut mat = DMatrix::zeros(dim, dim);
        for (w, rho) in parts {
            if rho.space != first.space {
                return Err(Error::SpaceMismatch(
                    "mixture components live on different spaces".into(),
                ));
            }
            mat += rho.mat.clone() * Complex64::new(*w, 0.0);
        }
        Ok(DensityMatrix::unchecked(first.space.clone(), mat))
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.mat
    }

    /// Entry `<row|rho|col>` addressed by level names.
    pub fn entry(&self, row: &[&str], col: &[&str]) -> Result<Complex64> {
        let r = self.space.index_of(&self.space.label(row)?);
        let c = self.space.index_of(&self.space.label(col)?);
        Ok(self.mat[(r, c)])
    }

    pub fn trace(&self) -> f64 {
        self.mat.diagonal().iter().map(|z| z.re).sum()
    }

    /// `Tr(rho^2)`, in `[1/d, 1]` for valid states.
    pub fn purity(&self) -> f64 {
        // Tr(rho^2) = sum_ij rho_ij rho_ji = sum_ij |rho_ij|^2 for Hermitian rho.
        self.mat.iter().map(|z| z.norm_sqr()).sum()
    }

    /// `Tr(self * other)`; real for Hermitian operators.
    pub fn product_trace(&self, other: &DensityMatrix) -> Result<f64> {
        if self.space != other.space {
            return Err(Error::SpaceMismatch(
                "product trace requires identical spaces".into(),
            ));
        }
        let mut sum = Complex64::ZERO;
        for i in 0..self.mat.nrows() {
            for k in 0..self.mat.ncols() {
                sum += self.mat[(i, k)] * other.mat[(k, i)];
            }
        }
        Ok(sum.re)
    }

    /// Largest absolute entrywise difference against another matrix on the
    /// same space.
    pub fn max_entry_diff(&self, other: &DensityMatrix) -> Result<f64> {
        if self.space != other.space {
            return Err(Error::SpaceMismatch(
                "entrywise comparison requires identical spaces".into(),
            ));
        }
        Ok(self
            .mat
            .iter()
            .zip(other.mat.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// Check Hermiticity and unit trace within [`NORM_TOL`] and that all
    /// eigenvalues are at least `-`[`EIGENVALUE_TOL`].
    pub fn validate(&self) -> Result<()> {
        for i in 0..self.mat.nrows() {
            for j in 0..self.mat.ncols() {
                let defect = (self.mat[(i, j)] - self.mat[(j, i)].conj()).norm();
                if defect > NORM_TOL {
                    return Err(Error::InvalidDensity(format!(
                        "Hermiticity defect {defect:.3e} at ({i},{j})"
                    )));
                }
            }
        }
        let tr = self.trace();
        if (tr - 1.0).abs() > NORM_TOL {
            return Err(Error::InvalidDensity(format!("trace is {tr:.17}")));
        }
        // Positivity. Two-level matrices get the closed form; anything
        // larger goes through the Hermitian eigensolver.
        let min = if self.mat.nrows() == 2 {
            let t = self.mat[(0, 0)].re + self.mat[(1, 1)].re;
            let det = self.mat[(0, 0)].re * self.mat[(1, 1)].re - self.mat[(0, 1)].norm_sqr();
            (t - (t * t - 4.0 * det).max(0.0).sqrt()) / 2.0
        } else {
            self.mat
                .clone()
                .symmetric_eigenvalues()
                .iter()
                .copied()
                .fold(f64::INFINITY, f64::min)
        };
        if min < -EIGENVALUE_TOL {
            return Err(Error::InvalidDensity(format!(
                "negative eigenvalue {min:.3e}"
            )));
        }
        Ok(())
    }

    /// Spectral decomposition into pure components, dropping eigenvalues
    /// below [`PRUNE_TOL`]. Each returned state is a normalized eigenvector.
    pub fn eigen_decomposition(&self) -> Result<Vec<(f64, PureState)>> {
        let eig = self.mat.clone().symmetric_eigen();
        let labels = self.space.labels();
        let mut parts = Vec::new();
        for (k, &weight) in eig.eigenvalues.iter().enumerate() {
            if weight < PRUNE_TOL {
                continue;
            }
            let col = eig.eigenvectors.column(k);
            let mut amps = BTreeMap::new();
            for (i, label) in labels.iter().enumerate() {
                amps.insert(label.clone(), col[i]);
            }
            parts.push((weight, PureState::from_map(self.space.clone(), amps)?));
        }
        Ok(parts)
    }
}

/// Rank-1 projector `|psi><psi|` of a normalized pure state.
pub fn to_density(psi: &PureState) -> DensityMatrix {
    let space = psi.space.clone();
    let dim = space.dim();
    let mut mat = DMatrix::zeros(dim, dim);
    for (li, &ci) in &psi.amps {
        let i = space.index_of(li);
        for (lj, &cj) in &psi.amps {
            let j = space.index_of(lj);
            mat[(i, j)] = ci * cj.conj();
        }
    }
    DensityMatrix::unchecked(space, mat)
}

/// Partial trace of a pure state's projector, computed directly from the
/// sparse amplitude map: `partial_trace(to_density(psi), keep)` without the
/// dense intermediate.
pub fn reduced_density(psi: &PureState, keep: &[&str]) -> Result<DensityMatrix> {
    if keep.is_empty() {
        return Err(Error::Parameter("partial trace must keep at least one subsystem".into()));
    }
    for name in keep {
        psi.space.subsystem(name)?;
    }
    let kept_indices: Vec<usize> = psi
        .space
        .subsystems
        .iter()
        .enumerate()
        .filter(|(_, s)| keep.contains(&s.name.as_str()))
        .map(|(i, _)| i)
        .collect();
    let traced_indices: Vec<usize> = (0..psi.space.subsystems.len())
        .filter(|i| !kept_indices.contains(i))
        .collect();
    let kept_space = Space::new(
        kept_indices
            .iter()
            .map(|&i| psi.space.subsystems[i].clone())
            .collect(),
    )?;
    let sub_label = |full: &BasisLabel, positions: &[usize]| -> BasisLabel {
        BasisLabel(positions.iter().map(|&i| full.factor(i)).collect())
    };
    let dim = kept_space.dim();
    let mut mat = DMatrix::zeros(dim, dim);
    for (li, &ci) in &psi.amps {
        let ri = kept_space.index_of(&sub_label(li, &kept_indices));
        for (lj, &cj) in &psi.amps {
            if sub_label(li, &traced_indices) != sub_label(lj, &traced_indices) {
                continue;
            }
            let rj = kept_space.index_of(&sub_label(lj, &kept_indices));
            mat[(ri, rj)] += ci * cj.conj();
        }
    }
    Ok(DensityMatrix::unchecked(kept_space, mat))
}

/// Trace out every subsystem not named in `keep`. The result keeps the
/// original subsystem order; `keep` is treated as a set.
pub fn partial_trace(rho: &DensityMatrix, keep: &[&str]) -> Result<DensityMatrix> {
    if keep.is_empty() {
        return Err(Error::Parameter("partial trace must keep at least one subsystem".into()));
    }
    for name in keep {
        rho.space.subsystem(name)?;
    }
    let kept_indices: Vec<usize> = rho
        .space
        .subsystems
        .iter()
        .enumerate()
        .filter(|(_, s)| keep.contains(&s.name.as_str()))
        .map(|(i, _)| i)
        .collect();
    let traced_indices: Vec<usize> = (0..rho.space.subsystems.len())
        .filter(|i| !kept_indices.contains(i))
        .collect();

    let kept_space = Space::new(
        kept_indices
            .iter()
            .map(|&i| rho.space.subsystems[i].clone())
            .collect(),
    )?;
    if traced_indices.is_empty() {
        return Ok(rho.clone());
    }

    let traced_space = Space::new(
        traced_indices
            .iter()
            .map(|&i| rho.space.subsystems[i].clone())
            .collect(),
    )?;

    let full = |kept: &BasisLabel, traced: &BasisLabel| -> BasisLabel {
        let mut indices = vec![0u16; rho.space.subsystems.len()];
        for (pos, &i) in kept_indices.iter().enumerate() {
            indices[i] = kept.factor(pos);
        }
        for (pos, &i) in traced_indices.iter().enumerate() {
            indices[i] = traced.factor(pos);
        }
        BasisLabel(indices)
    };

    let kept_labels = kept_space.labels();
    let traced_labels = traced_space.labels();
    let dim = kept_space.dim();
    let mut mat = DMatrix::zeros(dim, dim);
    for (r, row) in kept_labels.iter().enumerate() {
        for (c, col) in kept_labels.iter().enumerate() {
            let mut sum = Complex64::ZERO;
            for t in &traced_labels {
                let fr = rho.space.index_of(&full(row, t));
                let fc = rho.space.index_of(&full(col, t));
                sum += rho.mat[(fr, fc)];
            }
            mat[(r, c)] = sum;
        }
    }
    Ok(DensityMatrix::unchecked(kept_space, mat))
}

/// Scale by `1 - gamma` every entry whose row and column labels differ on the
/// named subsystem; entries diagonal in that subsystem are unchanged.
pub fn dephase(rho: &DensityMatrix, gamma: f64, subsystem: &str) -> Result<DensityMatrix> {
    if !(0.0..=1.0).contains(&gamma) {
        return Err(Error::Parameter(format!("gamma must be in [0, 1], got {gamma}")));
    }
    let sub_pos = rho
        .space
        .subsystems
        .iter()
        .position(|s| s.name == subsystem)
        .ok_or_else(|| Error::UnknownSubsystem(subsystem.to_string()))?;
    let labels = rho.space.labels();
    let mut mat = rho.mat.clone();
    let damp = Complex64::new(1.0 - gamma, 0.0);
    for (r, row) in labels.iter().enumerate() {
        for (c, col) in labels.iter().enumerate() {
            if row.factor(sub_pos) != col.factor(sub_pos) {
                mat[(r, c)] *= damp;
            }
        }
    }
    Ok(DensityMatrix::unchecked(rho.space.clone(), mat))
}

/// `Tr(rho^2)`. Free function mirror of [`DensityMatrix::purity`].
pub fn purity(rho: &DensityMatrix) -> f64 {
    rho.purity()
}

/// Polarization level names and the fixed circular-basis convention
/// `|R> = (|H> + i|V>)/sqrt(2)`, `|L> = (|H> - i|V>)/sqrt(2)`.
pub mod polarization {
    use super::*;

    pub const H: &str = "H";
    pub const V: &str = "V";
    pub const R: &str = "R";
    pub const L: &str = "L";

    /// A polarization subsystem over the linear alphabet `{H, V}`.
    pub fn linear(name: &str) -> Subsystem {
        Subsystem::new(name, &[H, V])
    }

    /// A polarization subsystem over the circular alphabet `{R, L}`.
    pub fn circular(name: &str) -> Subsystem {
        Subsystem::new(name, &[R, L])
    }

    /// Require a valid density matrix over a single `{H, V}` subsystem.
    pub fn require_polarization_density(rho: &DensityMatrix, which: &str) -> Result<()> {
        let subs = rho.space().subsystems();
        let levels: Vec<&str> = subs[0].levels().collect();
        if subs.len() != 1 || levels != [H, V] {
            return Err(Error::SpaceMismatch(format!(
                "{which} must be a single-photon polarization matrix over {{H, V}}"
            )));
        }
        rho.validate()
            .map_err(|e| Error::InvalidDensity(format!("{which}: {e}")))
    }

    fn single_pol_amplitudes(
        psi: &PureState,
        expect: [&str; 2],
    ) -> Result<(String, Complex64, Complex64)> {
        let subs = psi.space().subsystems();
        if subs.len() != 1 || subs[0].dim() != 2 {
            return Err(Error::SpaceMismatch(
                "expected a single two-level polarization subsystem".into(),
            ));
        }
        let levels: Vec<&str> = subs[0].levels().collect();
        if levels != expect {
            return Err(Error::UnknownSubsystem(format!(
                "expected levels {expect:?}, found {levels:?}"
            )));
        }
        let a = psi.amplitude(&[expect[0]])?;
        let b = psi.amplitude(&[expect[1]])?;
        Ok((subs[0].name().to_string(), a, b))
    }

    /// Re-express a circular-basis state `a|R> + b|L>` in the linear basis.
    pub fn to_linear(psi: &PureState) -> Result<PureState> {
        let (name, a, b) = single_pol_amplitudes(psi, [R, L])?;
        let inv_sqrt2 = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        let i = Complex64::I;
        let h = (a + b) * inv_sqrt2;
        let v = i * (a - b) * inv_sqrt2;
        PureState::new(Space::single(linear(&name)), &[(&[H], h), (&[V], v)])
    }

    /// Re-express a linear-basis state `c|H> + d|V>` in the circular basis.
    pub fn to_circular(psi: &PureState) -> Result<PureState> {
        let (name, c, d) = single_pol_amplitudes(psi, [H, V])?;
        let inv_sqrt2 = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        let i = Complex64::I;
        let r = (c - i * d) * inv_sqrt2;
        let l = (c + i * d) * inv_sqrt2;
        PureState::new(Space::single(circular(&name)), &[(&[R], r), (&[L], l)])
    }
}
