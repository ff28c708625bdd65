//! Multimode bosonic Fock states and linear-optical elements.
//!
//! This module carries the exact creation-operator algebra for up to two
//! photons: occupation-number states over labeled modes, path-mixing
//! unitaries (the balanced beam splitter), and the full two-photon
//! interferometer output distribution. The expansion here is the brute-force
//! reference that the closed-form coincidence probability is checked against.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hom::OutcomeDistribution;
use crate::quantum::{polarization, DensityMatrix, PureState, NORM_TOL, PRUNE_TOL};

/// Polarization label of a mode. Linear (`H`/`V`) labels are used on the
/// interferometer arms; circular (`R`/`L`) labels appear on the two beams
/// behind a polarizing split.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Pol {
    H,
    V,
    R,
    L,
}

impl Pol {
    pub fn as_str(self) -> &'static str {
        match self {
            Pol::H => "H",
            Pol::V => "V",
            Pol::R => "R",
            Pol::L => "L",
        }
    }
}

/// One optical mode: a spatial path, a polarization, and an optional
/// distinguishability tag (temporal bin, default 0).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mode {
    pub path: String,
    pub pol: Pol,
    pub tag: u8,
}

impl Mode {
    pub fn new(path: &str, pol: Pol, tag: u8) -> Mode {
        Mode {
            path: path.to_string(),
            pol,
            tag,
        }
    }
}

/// A multimode Fock state: complex amplitudes over occupation vectors of an
/// ordered mode register, truncated at a total photon number.
#[derive(Debug, Clone)]
pub struct FockState {
    register: Vec<Mode>,
    terms: BTreeMap<Vec<u8>, Complex64>,
    cutoff: u32,
}

/// Default photon-number cutoff; no scenario here involves more than two
/// photons.
pub const DEFAULT_CUTOFF: u32 = 2;

impl FockState {
    /// Build a state from sparse `(mode, count)` occupation lists. Amplitudes
    /// must already be normalized.
    pub fn from_terms(
        register: Vec<Mode>,
        terms: &[(&[(Mode, u8)], Complex64)],
        cutoff: u32,
    ) -> Result<FockState> {
        for (i, m) in register.iter().enumerate() {
            if register[..i].contains(m) {
                return Err(Error::Parameter(format!(
                    "duplicate mode in register: {m:?}"
                )));
            }
        }
        let mut dense = BTreeMap::new();
        for (occupied, amp) in terms {
            let mut occ = vec![0u8; register.len()];
            for (mode, count) in occupied.iter() {
                let idx = register
                    .iter()
                    .position(|m| m == mode)
                    .ok_or_else(|| Error::UnknownSubsystem(format!("mode {mode:?}")))?;
                occ[idx] += count;
            }
            let total: u32 = occ.iter().map(|&n| n as u32).sum();
            if total > cutoff {
                return Err(Error::Truncation(format!(
                    "term holds {total} photons, cutoff is {cutoff}"
                )));
            }
            *dense.entry(occ).or_insert(Complex64::ZERO) += amp;
        }
        FockState::from_map(register, dense, cutoff)
    }

    fn from_map(
        register: Vec<Mode>,
        terms: BTreeMap<Vec<u8>, Complex64>,
        cutoff: u32,
    ) -> Result<FockState> {
        let terms: BTreeMap<_, _> = terms
            .into_iter()
            .filter(|(_, a)| a.norm() >= PRUNE_TOL)
            .collect();
        let norm_sq: f64 = terms.values().map(|a| a.norm_sqr()).sum();
        if (norm_sq - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized(format!(
                "squared norm is {norm_sq:.17}"
            )));
        }
        Ok(FockState {
            register,
            terms,
            cutoff,
        })
    }

    pub fn register(&self) -> &[Mode] {
        &self.register
    }

    pub fn cutoff(&self) -> u32 {
        self.cutoff
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u8], Complex64)> {
        self.terms.iter().map(|(occ, &a)| (occ.as_slice(), a))
    }

    pub fn norm(&self) -> f64 {
        self.terms
            .values()
            .map(|a| a.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Amplitude of the basis term with the given occupied modes (all other
    /// modes unoccupied); zero if the term is absent.
    pub fn amplitude(&self, occupied: &[(Mode, u8)]) -> Result<Complex64> {
        let mut occ = vec![0u8; self.register.len()];
        for (mode, count) in occupied {
            let idx = self
                .register
                .iter()
                .position(|m| m == mode)
                .ok_or_else(|| Error::UnknownSubsystem(format!("mode {mode:?}")))?;
            occ[idx] += count;
        }
        Ok(self.terms.get(&occ).copied().unwrap_or(Complex64::ZERO))
    }

    /// Total photons in each spatial path, summed with squared-amplitude
    /// weights... (see `path_number_distribution`).
    fn path_totals(&self, occ: &[u8], path: &str) -> u32 {
        occ.iter()
            .zip(&self.register)
            .filter(|(_, m)| m.path == path)
            .map(|(&n, _)| n as u32)
            .sum()
    }
}

/// A unitary mixing two spatial paths, acting identically on every
/// polarization and tag sublevel. `matrix[r][c]` is the amplitude taking
/// input path `c` to output path `r`.
#[derive(Debug, Clone)]
pub struct ModeUnitary {
    in_paths: [String; 2],
    out_paths: [String; 2],
    matrix: [[Complex64; 2]; 2],
}

impl ModeUnitary {
    /// Build a two-path mixer, checking unitarity within [`NORM_TOL`].
    pub fn path_mixer(
        in_paths: [&str; 2],
        out_paths: [&str; 2],
        matrix: [[Complex64; 2]; 2],
    ) -> Result<ModeUnitary> {
        if in_paths[0] == in_paths[1] || out_paths[0] == out_paths[1] {
            return Err(Error::Parameter("mixer paths must be distinct".into()));
        }
        let u = ModeUnitary {
            in_paths: [in_paths[0].to_string(), in_paths[1].to_string()],
            out_paths: [out_paths[0].to_string(), out_paths[1].to_string()],
            matrix,
        };
        let defect = u.unitarity_defect();
        if defect > NORM_TOL {
            return Err(Error::NotUnitary(format!("U'U deviates from I by {defect:.3e}")));
        }
        Ok(u)
    }

    pub fn in_paths(&self) -> [&str; 2] {
        [&self.in_paths[0], &self.in_paths[1]]
    }

    pub fn out_paths(&self) -> [&str; 2] {
        [&self.out_paths[0], &self.out_paths[1]]
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.matrix[row][col]
    }

    /// Largest absolute entry of `U'U - I`.
    pub fn unitarity_defect(&self) -> f64 {
        let m = &self.matrix;
        let mut worst = 0.0f64;
        for r in 0..2 {
            for c in 0..2 {
                // (U'U)[r][c] = sum_k conj(U[k][r]) U[k][c]
                let mut sum = Complex64::ZERO;
                for row in m.iter() {
                    sum += row[r].conj() * row[c];
                }
                let expect = if r == c { Complex64::ONE } else { Complex64::ZERO };
                worst = worst.max((sum - expect).norm());
            }
        }
        worst
    }
}

/// The balanced symmetric beam splitter: transmission amplitude `1/sqrt(2)`,
/// reflection amplitude `i/sqrt(2)` on both ports. Input arms `a`, `b` map to
/// output arms `A`, `B`.
pub fn beam_splitter() -> ModeUnitary {
    let t = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let r = Complex64::new(0.0, std::f64::consts::FRAC_1_SQRT_2);
    ModeUnitary::path_mixer(["a", "b"], ["A", "B"], [[t, r], [r, t]])
        .expect("the balanced splitter is unitary")
}

fn factorial(n: u8) -> f64 {
    (1..=n as u64).product::<u64>() as f64
}

/// Substitute each creation operator by its image under the path mixer and
/// re-expand. Modes on unacted paths pass through unchanged; both acted paths
/// must be present in the register.
pub fn apply_mode_unitary(state: &FockState, u: &ModeUnitary) -> Result<FockState> {
    let paths: Vec<&str> = state.register.iter().map(|m| m.path.as_str()).collect();
    for p in u.in_paths() {
        if !paths.contains(&p) {
            return Err(Error::UnknownSubsystem(format!(
                "acted path '{p}' not present in register"
            )));
        }
    }

    // Image modes per register mode, then the output register.
    let mut untouched: Vec<Mode> = Vec::new();
    let mut generated: Vec<Mode> = Vec::new();
    let images: Vec<Vec<(Mode, Complex64)>> = state
        .register
        .iter()
        .map(|m| {
            if let Some(col) = u.in_paths().iter().position(|p| *p == m.path) {
                let image: Vec<(Mode, Complex64)> = (0..2)
                    .map(|row| {
                        (
                            Mode::new(u.out_paths()[row], m.pol, m.tag),
                            u.entry(row, col),
                        )
                    })
                    .collect();
                generated.extend(image.iter().map(|(m, _)| m.clone()));
                image
            } else {
                untouched.push(m.clone());
                vec![(m.clone(), Complex64::ONE)]
            }
        })
        .collect();

    if untouched.iter().any(|m| generated.contains(m)) {
        return Err(Error::Parameter(
            "output paths collide with unacted register modes".into(),
        ));
    }
    let mut out_register: Vec<Mode> = untouched;
    out_register.extend(generated);
    out_register.sort();
    out_register.dedup();

    let out_index = |mode: &Mode| -> usize {
        out_register.iter().position(|m| m == mode).expect("image mode in register")
    };

    let mut out_terms: BTreeMap<Vec<u8>, Complex64> = BTreeMap::new();
    for (occ, &amp) in &state.terms {
        // Normalization factor of the input monomial.
        let in_norm: f64 = occ.iter().map(|&n| factorial(n)).product::<f64>().sqrt();
        let mut poly: BTreeMap<Vec<u8>, Complex64> = BTreeMap::new();
        poly.insert(vec![0u8; out_register.len()], amp / in_norm);
        for (k, &n_k) in occ.iter().enumerate() {
            for _ in 0..n_k {
                let mut next: BTreeMap<Vec<u8>, Complex64> = BTreeMap::new();
                for (mono, &coeff) in &poly {
                    for (mode, weight) in &images[k] {
                        let mut grown = mono.clone();
                        grown[out_index(mode)] += 1;
                        *next.entry(grown).or_insert(Complex64::ZERO) += coeff * weight;
                    }
                }
                poly = next;
            }
        }
        for (mono, coeff) in poly {
            let total: u32 = mono.iter().map(|&n| n as u32).sum();
            if total > state.cutoff {
                return Err(Error::Truncation(format!(
                    "expansion reached {total} photons, cutoff is {}",
                    state.cutoff
                )));
            }
            let out_norm: f64 = mono.iter().map(|&n| factorial(n)).product::<f64>().sqrt();
            *out_terms.entry(mono).or_insert(Complex64::ZERO) += coeff * out_norm;
        }
    }
    FockState::from_map(out_register, out_terms, state.cutoff)
}

/// Exact two-photon interferometer output probabilities via the full Fock
/// expansion.
///
/// Each polarization matrix is split into its eigencomponents; temporal
/// overlap `eta` puts the second photon in a superposition of two orthogonal
/// tags with weights `sqrt(eta)` and `sqrt(1 - eta)`. Every component pair is
/// pushed through the balanced splitter and the output occupations are
/// classified as a coincidence or as both photons in one arm.
pub fn hom_output_distribution(
    pol1: &DensityMatrix,
    pol2: &DensityMatrix,
    eta: f64,
) -> Result<OutcomeDistribution> {
    if !(0.0..=1.0).contains(&eta) {
        return Err(Error::Parameter(format!("eta must be in [0, 1], got {eta}")));
    }
    polarization::require_polarization_density(pol1, "pol1")?;
    polarization::require_polarization_density(pol2, "pol2")?;

    let register: Vec<Mode> = ["a", "b"]
        .iter()
        .flat_map(|path| {
            [Pol::H, Pol::V]
                .iter()
                .flat_map(move |&pol| (0..2u8).map(move |tag| Mode::new(path, pol, tag)))
        })
        .collect();
    let splitter = beam_splitter();

    let pol_amplitudes = |v: &PureState| -> Result<[Complex64; 2]> {
        Ok([
            v.amplitude(&[polarization::H])?,
            v.amplitude(&[polarization::V])?,
        ])
    };

    let mut p_coincidence = 0.0;
    let mut p_both_a = 0.0;
    let mut p_both_b = 0.0;
    for (w1, v1) in pol1.eigen_decomposition()? {
        let amps1 = pol_amplitudes(&v1)?;
        for (w2, v2) in pol2.eigen_decomposition()? {
            let amps2 = pol_amplitudes(&v2)?;
            let mut terms: Vec<(Vec<(Mode, u8)>, Complex64)> = Vec::new();
            for (p1, &a1) in [Pol::H, Pol::V].iter().zip(&amps1) {
                for (p2, &a2) in [Pol::H, Pol::V].iter().zip(&amps2) {
                    for (tag, weight) in [(0u8, eta.sqrt()), (1u8, (1.0 - eta).sqrt())] {
                        let amp = a1 * a2 * weight;
                        if amp.norm() < PRUNE_TOL {
                            continue;
                        }
                        terms.push((
                            vec![
                                (Mode::new("a", *p1, 0), 1),
                                (Mode::new("b", *p2, tag), 1),
                            ],
                            amp,
                        ));
                    }
                }
            }
            let borrowed: Vec<(&[(Mode, u8)], Complex64)> = terms
                .iter()
                .map(|(occ, amp)| (occ.as_slice(), *amp))
                .collect();
            let input = FockState::from_terms(register.clone(), &borrowed, DEFAULT_CUTOFF)?;
            let output = apply_mode_unitary(&input, &splitter)?;

            let weight = w1 * w2;
            for (occ, amp) in output.terms() {
                let n_a = output.path_totals(occ, "A");
                let n_b = output.path_totals(occ, "B");
                let p = weight * amp.norm_sqr();
                match (n_a, n_b) {
                    (1, 1) => p_coincidence += p,
                    (2, 0) => p_both_a += p,
                    (0, 2) => p_both_b += p,
                    other => {
                        return Err(Error::Truncation(format!(
                            "unexpected output occupation {other:?}"
                        )))
                    }
                }
            }
        }
    }
    OutcomeDistribution::new(p_coincidence, p_both_a, p_both_b)
}

/// Route the circular components of a single-photon polarization state onto
/// two spatial paths: the `R` component to `path1`, the `L` component to
/// `path2`. Accepts states over either the circular or the linear alphabet.
pub fn polyprism_route(photon: &PureState) -> Result<FockState> {
    let subs = photon.space().subsystems();
    if subs.len() != 1 || subs[0].dim() != 2 {
        return Err(Error::SpaceMismatch(
            "expected a single-photon polarization state".into(),
        ));
    }
    let levels: Vec<&str> = subs[0].levels().collect();
    let circular = if levels == [polarization::R, polarization::L] {
        photon.clone()
    } else if levels == [polarization::H, polarization::V] {
        polarization::to_circular(photon)?
    } else {
        return Err(Error::UnknownSubsystem(format!(
            "unsupported polarization alphabet {levels:?}"
        )));
    };
    let r_amp = circular.amplitude(&[polarization::R])?;
    let l_amp = circular.amplitude(&[polarization::L])?;
    let register = vec![Mode::new("path1", Pol::R, 0), Mode::new("path2", Pol::L, 0)];
    let right = [(register[0].clone(), 1u8)];
    let left = [(register[1].clone(), 1u8)];
    let mut terms: Vec<(&[(Mode, u8)], Complex64)> = Vec::new();
    if r_amp.norm() >= PRUNE_TOL {
        terms.push((&right, r_amp));
    }
    if l_amp.norm() >= PRUNE_TOL {
        terms.push((&left, l_amp));
    }
    FockState::from_terms(register, &terms, DEFAULT_CUTOFF)
}
