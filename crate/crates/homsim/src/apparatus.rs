//! The single-apparatus measurement chain: a circularly polarized photon is
//! split by polarization, detected, and a fresh photon is emitted with a
//! polarization tied to the firing detector.
//!
//! What happens to the detection record is selectable. The chain either
//! coherently erases it (no record of any kind survives, the emitted photon
//! stays pure), keeps it as a persistent which-path record, collapses it
//! projectively with a sampled click, or partially decoheres it with a
//! dephasing strength.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::quantum::{
    dephase, polarization, reduced_density, to_density, DensityMatrix, PureState, Space,
    Subsystem,
};

/// Subsystem name of the incoming photon (circular alphabet `{R, L}`).
pub const PHOTON: &str = "photon";
/// Subsystem name of the detector pointer (levels `D1`, `D2`, `ready`).
pub const DETECTOR: &str = "detector";
/// Subsystem name of the emitted photon (linear alphabet `{H, V}`).
pub const EMITTED: &str = "emitted";

pub const D1: &str = "D1";
pub const D2: &str = "D2";
/// Pre-click detector level; the target of coherent record erasure.
pub const READY: &str = "ready";

/// Post-measurement channel applied by the apparatus.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CollapseModel {
    /// The detector coherently returns to `ready`; no record survives and the
    /// emitted photon stays in a pure superposition.
    UnitaryErased,
    /// Unitary evolution with the which-path record kept; the emitted photon
    /// decoheres into an even mixture.
    UnitaryRecorded,
    /// A projective collapse: one detector clicks with Born probability and
    /// the emitted photon takes the matching definite polarization.
    ProjectiveCollapse,
    /// Partial record formation, scaling emitted-photon coherences by
    /// `1 - gamma`.
    Dephasing(f64),
}

impl CollapseModel {
    pub fn validate(&self) -> Result<()> {
        if let CollapseModel::Dephasing(gamma) = self {
            if !(0.0..=1.0).contains(gamma) {
                return Err(Error::Parameter(format!(
                    "dephasing strength must be in [0, 1], got {gamma}"
                )));
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &'static str {
        match self {
            CollapseModel::UnitaryErased => "unitary-erased",
            CollapseModel::UnitaryRecorded => "unitary-recorded",
            CollapseModel::ProjectiveCollapse => "projective-collapse",
            CollapseModel::Dephasing(_) => "dephasing",
        }
    }

    pub fn gamma(&self) -> Option<f64> {
        match self {
            CollapseModel::Dephasing(g) => Some(*g),
            _ => None,
        }
    }
}

/// Which detector clicked, for the projective model.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Detector {
    D1,
    D2,
}

impl Detector {
    fn level(self) -> &'static str {
        match self {
            Detector::D1 => D1,
            Detector::D2 => D2,
        }
    }
}

/// Click record of one apparatus run. `detector` is `Some` exactly for the
/// projective-collapse model; every other channel leaves no record.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClickRecord {
    pub detector: Option<Detector>,
    pub trial_index: u64,
}

/// The apparatus output: the emitted photon's polarization state plus the
/// click record.
#[derive(Debug, Clone)]
pub struct EmittedPhoton {
    pub state: DensityMatrix,
    pub click: ClickRecord,
}

fn photon_space() -> Space {
    Space::single(polarization::circular(PHOTON))
}

fn detector_subsystem() -> Subsystem {
    Subsystem::new(DETECTOR, &[D1, D2, READY])
}

/// The incoming beam `(|R> + |L>)/sqrt(2)`.
pub fn prepare_input() -> PureState {
    let amp = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    PureState::new(
        photon_space(),
        &[(&[polarization::R], amp), (&[polarization::L], amp)],
    )
    .expect("the prepared beam is normalized")
}

/// Amplitudes of a single-photon polarization state in the circular basis,
/// converting from the linear alphabet if necessary.
fn circular_amplitudes(input: &PureState) -> Result<(Complex64, Complex64)> {
    let subs = input.space().subsystems();
    if subs.len() != 1 || subs[0].dim() != 2 {
        return Err(Error::SpaceMismatch(
            "expected a single-photon polarization state".into(),
        ));
    }
    let levels: Vec<&str> = subs[0].levels().collect();
    let circular = if levels == [polarization::R, polarization::L] {
        input.clone()
    } else if levels == [polarization::H, polarization::V] {
        polarization::to_circular(input)?
    } else {
        return Err(Error::UnknownSubsystem(format!(
            "unsupported polarization alphabet {levels:?}"
        )));
    };
    Ok((
        circular.amplitude(&[polarization::R])?,
        circular.amplitude(&[polarization::L])?,
    ))
}

/// Couple the photon to the detectors: `alpha|R> + beta|L>` becomes
/// `alpha|R,D1> + beta|L,D2>`.
pub fn couple_detector(input: &PureState) -> Result<PureState> {
    let (r, l) = circular_amplitudes(input)?;
    let space = Space::new(vec![polarization::circular(PHOTON), detector_subsystem()])?;
    PureState::new(
        space,
        &[
            (&[polarization::R, D1], r),
            (&[polarization::L, D2], l),
        ],
    )
}

/// The full chain through the emitters: `alpha|R> + beta|L>` becomes the
/// tripartite state `alpha|R,D1,H> + beta|L,D2,V>`.
pub fn entangle_chain(input: &PureState) -> Result<PureState> {
    let (r, l) = circular_amplitudes(input)?;
    let space = Space::new(vec![
        polarization::circular(PHOTON),
        detector_subsystem(),
        polarization::linear(EMITTED),
    ])?;
    PureState::new(
        space,
        &[
            (&[polarization::R, D1, polarization::H], r),
            (&[polarization::L, D2, polarization::V], l),
        ],
    )
}

fn require_chain_space(tripartite: &PureState) -> Result<()> {
    let names: Vec<&str> = tripartite
        .space()
        .subsystems()
        .iter()
        .map(|s| s.name())
        .collect();
    if names != [PHOTON, DETECTOR, EMITTED] {
        return Err(Error::SpaceMismatch(format!(
            "expected subsystems [{PHOTON}, {DETECTOR}, {EMITTED}], found {names:?}"
        )));
    }
    Ok(())
}

/// Coherently absorb the photon and reset the detector: every branch
/// `|pol, D_k, emit>` maps to the same ancilla state, leaving the emitted
/// photon pure. Fails if the branches are not distinguished by the emitted
/// level (the erasure would not preserve the norm).
fn erase_records(tripartite: &PureState) -> Result<PureState> {
    let space = tripartite.space().clone();
    let emitted_space = Space::single(space.subsystem(EMITTED)?.clone());
    let mut amplitudes: Vec<(Vec<&str>, Complex64)> = Vec::new();
    for (label, amp) in tripartite.terms() {
        let names = space.level_names(label);
        amplitudes.push((vec![names[2]], amp));
    }
    let collected: Vec<(&[&str], Complex64)> = amplitudes
        .iter()
        .map(|(levels, amp)| (levels.as_slice(), *amp))
        .collect();
    PureState::new(emitted_space, &collected).map_err(|_| {
        Error::NotNormalized(
            "record erasure requires emitted levels to distinguish the branches".into(),
        )
    })
}

/// Born probabilities of the detector levels `D1` and `D2`.
fn click_probabilities(tripartite: &PureState) -> Result<(f64, f64)> {
    let space = tripartite.space().clone();
    let mut p1 = 0.0;
    let mut p2 = 0.0;
    for (label, amp) in tripartite.terms() {
        match space.level_names(label)[1] {
            D1 => p1 += amp.norm_sqr(),
            D2 => p2 += amp.norm_sqr(),
            _ => {}
        }
    }
    if p1 + p2 < 1.0 - crate::quantum::NORM_TOL {
        return Err(Error::Parameter(
            "tripartite state has weight outside the click branches".into(),
        ));
    }
    Ok((p1, p2))
}

/// Project onto one detector branch and return the emitted photon's state.
fn collapse_onto(tripartite: &PureState, which: Detector) -> Result<DensityMatrix> {
    let space = tripartite.space().clone();
    let mut kept: Vec<(Vec<&str>, Complex64)> = Vec::new();
    let mut weight = 0.0;
    for (label, amp) in tripartite.terms() {
        let names = space.level_names(label);
        if names[1] == which.level() {
            weight += amp.norm_sqr();
            kept.push((names.clone(), amp));
        }
    }
    if weight <= 0.0 {
        return Err(Error::Parameter(format!(
            "no amplitude on detector branch {}",
            which.level()
        )));
    }
    let scale = Complex64::new(1.0 / weight.sqrt(), 0.0);
    let collected: Vec<(&[&str], Complex64)> = kept
        .iter()
        .map(|(levels, amp)| (levels.as_slice(), amp * scale))
        .collect();
    let projected = PureState::new(space.clone(), &collected)?;
    reduced_density(&projected, &[EMITTED])
}

/// Run the post-measurement channel on a tripartite chain state and emit the
/// photon. Only the projective model consumes randomness from `rng`.
pub fn emit_photon(
    tripartite: &PureState,
    model: &CollapseModel,
    rng: &mut ChaCha8Rng,
    trial_index: u64,
) -> Result<EmittedPhoton> {
    model.validate()?;
    require_chain_space(tripartite)?;
    let no_click = ClickRecord {
        detector: None,
        trial_index,
    };
    match model {
        CollapseModel::UnitaryErased => Ok(EmittedPhoton {
            state: to_density(&erase_records(tripartite)?),
            click: no_click,
        }),
        CollapseModel::UnitaryRecorded => Ok(EmittedPhoton {
            state: reduced_density(tripartite, &[EMITTED])?,
            click: no_click,
        }),
        CollapseModel::Dephasing(gamma) => {
            let pure = to_density(&erase_records(tripartite)?);
            Ok(EmittedPhoton {
                state: dephase(&pure, *gamma, EMITTED)?,
                click: no_click,
            })
        }
        CollapseModel::ProjectiveCollapse => {
            let (p1, _) = click_probabilities(tripartite)?;
            let u: f64 = rng.random();
            let which = if u < p1 { Detector::D1 } else { Detector::D2 };
            Ok(EmittedPhoton {
                state: collapse_onto(tripartite, which)?,
                click: ClickRecord {
                    detector: Some(which),
                    trial_index,
                },
            })
        }
    }
}

/// Exact ensemble output of the channel on the canonical chain, with no
/// sampling: the projective model is averaged over both clicks with exact
/// Born weights.
pub fn analytic_emitted_state(model: &CollapseModel) -> Result<DensityMatrix> {
    model.validate()?;
    let tripartite = entangle_chain(&prepare_input())?;
    match model {
        CollapseModel::UnitaryErased => Ok(to_density(&erase_records(&tripartite)?)),
        CollapseModel::UnitaryRecorded => reduced_density(&tripartite, &[EMITTED]),
        CollapseModel::Dephasing(gamma) => {
            let pure = to_density(&erase_records(&tripartite)?);
            dephase(&pure, *gamma, EMITTED)
        }
        CollapseModel::ProjectiveCollapse => {
            let (p1, p2) = click_probabilities(&tripartite)?;
            let d1 = collapse_onto(&tripartite, Detector::D1)?;
            let d2 = collapse_onto(&tripartite, Detector::D2)?;
            DensityMatrix::mix(&[(p1, &d1), (p2, &d2)])
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::{partial_trace, NORM_TOL};
    use crate::rng;
    use nalgebra::DMatrix;

    const SQRT_HALF: f64 = std::f64::consts::FRAC_1_SQRT_2;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn plus_density() -> DensityMatrix {
        to_density(
            &PureState::new(
                Space::single(polarization::linear(EMITTED)),
                &[
                    (&[polarization::H], c(SQRT_HALF, 0.0)),
                    (&[polarization::V], c(SQRT_HALF, 0.0)),
                ],
            )
            .unwrap(),
        )
    }

    #[test]
    fn prepared_input_is_the_balanced_circular_superposition() {
        let input = prepare_input();
        assert!((input.amplitude(&[polarization::R]).unwrap().re - SQRT_HALF).abs() < 1e-15);
        assert!((input.amplitude(&[polarization::L]).unwrap().re - SQRT_HALF).abs() < 1e-15);
        assert!((input.norm() - 1.0).abs() < NORM_TOL);
    }

    #[test]
    fn prepared_input_is_horizontal_in_the_linear_basis() {
        let linear = polarization::to_linear(&prepare_input()).unwrap();
        assert!((linear.amplitude(&[polarization::H]).unwrap() - c(1.0, 0.0)).norm() < 1e-15);
        assert_eq!(linear.term_count(), 1);
    }

    #[test]
    fn detector_coupling_produces_the_two_branch_state() {
        let coupled = couple_detector(&prepare_input()).unwrap();
        assert_eq!(coupled.term_count(), 2);
        assert!(
            (coupled.amplitude(&[polarization::R, D1]).unwrap().re - SQRT_HALF).abs() < 1e-15
        );
        assert!(
            (coupled.amplitude(&[polarization::L, D2]).unwrap().re - SQRT_HALF).abs() < 1e-15
        );
    }

    #[test]
    fn chain_entangles_photon_detector_and_emitter() {
        let tri = entangle_chain(&prepare_input()).unwrap();
        assert_eq!(tri.term_count(), 2);
        let b1 = tri
            .amplitude(&[polarization::R, D1, polarization::H])
            .unwrap();
        let b2 = tri
            .amplitude(&[polarization::L, D2, polarization::V])
            .unwrap();
        assert!((b1.re - SQRT_HALF).abs() < 1e-15);
        assert!((b2.re - SQRT_HALF).abs() < 1e-15);
        assert!((tri.norm() - 1.0).abs() < NORM_TOL);
    }

    #[test]
    fn single_branch_input_stays_a_product_state() {
        let right = PureState::basis(photon_space(), &[polarization::R]).unwrap();
        let tri = entangle_chain(&right).unwrap();
        assert_eq!(tri.term_count(), 1);
        let amp = tri
            .amplitude(&[polarization::R, D1, polarization::H])
            .unwrap();
        assert!((amp - c(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn erased_channel_emits_the_pure_plus_state() {
        let tri = entangle_chain(&prepare_input()).unwrap();
        let mut rng = rng::derive(0, 0);
        let out = emit_photon(&tri, &CollapseModel::UnitaryErased, &mut rng, 0).unwrap();
        assert_eq!(out.click.detector, None);
        assert!((out.state.purity() - 1.0).abs() < NORM_TOL);
        assert!(out.state.max_entry_diff(&plus_density()).unwrap() < NORM_TOL);
        out.state.validate().unwrap();
    }

    #[test]
    fn erased_channel_agrees_with_explicit_matrix_oracle() {
        // Independent route on the 8-dimensional space with a two-level
        // detector: apply the erasure map |p,d,e> -> |R,D1,e> as an explicit
        // 8x8 0/1 matrix to the chain vector, form the projector, and trace
        // out photon and detector by brute force.
        let space = Space::new(vec![
            polarization::circular(PHOTON),
            Subsystem::new(DETECTOR, &[D1, D2]),
            polarization::linear(EMITTED),
        ])
        .unwrap();
        let psi = PureState::new(
            space.clone(),
            &[
                (&[polarization::R, D1, polarization::H], c(SQRT_HALF, 0.0)),
                (&[polarization::L, D2, polarization::V], c(SQRT_HALF, 0.0)),
            ],
        )
        .unwrap();

        // Dense amplitude vector in enumeration order (photon, detector,
        // emitted), dims (2, 2, 2).
        let mut vec8 = [Complex64::ZERO; 8];
        for (label, amp) in psi.terms() {
            let names = space.level_names(label);
            let p = if names[0] == polarization::R { 0 } else { 1 };
            let d = if names[1] == D1 { 0 } else { 1 };
            let e = if names[2] == polarization::H { 0 } else { 1 };
            vec8[p * 4 + d * 2 + e] = amp;
        }
        let mut erasure = DMatrix::<Complex64>::zeros(8, 8);
        for p in 0..2 {
            for d in 0..2 {
                for e in 0..2 {
                    // target index: photon R (0), detector D1 (0), emitted e
                    erasure[(e, p * 4 + d * 2 + e)] = Complex64::ONE;
                }
            }
        }
        let erased: Vec<Complex64> = (0..8)
            .map(|r| (0..8).map(|ci| erasure[(r, ci)] * vec8[ci]).sum())
            .collect();
        let mut projector = DMatrix::<Complex64>::zeros(2, 2);
        for e1 in 0..2 {
            for e2 in 0..2 {
                // Only photon=R, detector=D1 rows are populated after erasure.
                projector[(e1, e2)] = erased[e1] * erased[e2].conj();
            }
        }

        let tri = entangle_chain(&prepare_input()).unwrap();
        let mut rng = rng::derive(0, 0);
        let out = emit_photon(&tri, &CollapseModel::UnitaryErased, &mut rng, 0).unwrap();
        for e1 in 0..2 {
            for e2 in 0..2 {
                assert!((out.state.matrix()[(e1, e2)] - projector[(e1, e2)]).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn recorded_channel_emits_the_even_mixture() {
        let tri = entangle_chain(&prepare_input()).unwrap();
        let mut rng = rng::derive(0, 0);
        let out = emit_photon(&tri, &CollapseModel::UnitaryRecorded, &mut rng, 3).unwrap();
        assert_eq!(out.click.detector, None);
        assert_eq!(out.click.trial_index, 3);
        let mixed = DensityMatrix::maximally_mixed(out.state.space().clone());
        assert!(out.state.max_entry_diff(&mixed).unwrap() < NORM_TOL);
        // Same reduction through the dense route.
        let dense = partial_trace(&to_density(&tri), &[EMITTED]).unwrap();
        assert!(out.state.max_entry_diff(&dense).unwrap() < 1e-15);
    }

    #[test]
    fn projective_collapse_clicks_follow_born_statistics() {
        let tri = entangle_chain(&prepare_input()).unwrap();
        let trials = 10_000u64;
        let mut d1 = 0u64;
        for t in 0..trials {
            let mut rng = rng::derive(11, t);
            let out = emit_photon(&tri, &CollapseModel::ProjectiveCollapse, &mut rng, t).unwrap();
            match out.click.detector {
                Some(Detector::D1) => {
                    d1 += 1;
                    let h = to_density(
                        &PureState::basis(
                            Space::single(polarization::linear(EMITTED)),
                            &[polarization::H],
                        )
                        .unwrap(),
                    );
                    assert!(out.state.max_entry_diff(&h).unwrap() < 1e-15);
                }
                Some(Detector::D2) => {
                    let v = to_density(
                        &PureState::basis(
                            Space::single(polarization::linear(EMITTED)),
                            &[polarization::V],
                        )
                        .unwrap(),
                    );
                    assert!(out.state.max_entry_diff(&v).unwrap() < 1e-15);
                }
                None => panic!("projective collapse must record a click"),
            }
        }
        let fraction = d1 as f64 / trials as f64;
        let bound = 3.0 * (0.25 / trials as f64).sqrt();
        assert!((fraction - 0.5).abs() <= bound, "D1 fraction {fraction}");
    }

    #[test]
    fn collapse_ensemble_average_matches_recorded_channel() {
        // Analytic: exact equality of the two ensemble states.
        let recorded = analytic_emitted_state(&CollapseModel::UnitaryRecorded).unwrap();
        let collapsed = analytic_emitted_state(&CollapseModel::ProjectiveCollapse).unwrap();
        assert!(recorded.max_entry_diff(&collapsed).unwrap() < NORM_TOL);

        // Sampled: the empirical average converges at the 3-sigma rate.
        let tri = entangle_chain(&prepare_input()).unwrap();
        let trials = 10_000u64;
        let mut avg = DMatrix::<Complex64>::zeros(2, 2);
        for t in 0..trials {
            let mut rng = rng::derive(5, t);
            let out = emit_photon(&tri, &CollapseModel::ProjectiveCollapse, &mut rng, t).unwrap();
            avg += out.state.matrix();
        }
        avg /= Complex64::new(trials as f64, 0.0);
        let sigma = 0.5 / (trials as f64).sqrt();
        for i in 0..2 {
            for j in 0..2 {
                assert!((avg[(i, j)] - recorded.matrix()[(i, j)]).norm() <= 3.0 * sigma);
            }
        }
    }

    #[test]
    fn dephasing_endpoints_reproduce_the_unitary_channels() {
        let tri = entangle_chain(&prepare_input()).unwrap();
        let mut rng = rng::derive(0, 0);
        let erased = emit_photon(&tri, &CollapseModel::UnitaryErased, &mut rng, 0).unwrap();
        let gamma0 = emit_photon(&tri, &CollapseModel::Dephasing(0.0), &mut rng, 0).unwrap();
        assert_eq!(erased.state.max_entry_diff(&gamma0.state).unwrap(), 0.0);

        let recorded = emit_photon(&tri, &CollapseModel::UnitaryRecorded, &mut rng, 0).unwrap();
        let gamma1 = emit_photon(&tri, &CollapseModel::Dephasing(1.0), &mut rng, 0).unwrap();
        assert_eq!(recorded.state.max_entry_diff(&gamma1.state).unwrap(), 0.0);
    }

    #[test]
    fn full_dephasing_yields_the_even_mixture() {
        let tri = entangle_chain(&prepare_input()).unwrap();
        let mut rng = rng::derive(0, 0);
        let out = emit_photon(&tri, &CollapseModel::Dephasing(1.0), &mut rng, 0).unwrap();
        let mixed = DensityMatrix::maximally_mixed(out.state.space().clone());
        assert!(out.state.max_entry_diff(&mixed).unwrap() < NORM_TOL);
    }

    #[test]
    fn invalid_dephasing_strength_is_rejected() {
        let tri = entangle_chain(&prepare_input()).unwrap();
        let mut rng = rng::derive(0, 0);
        assert!(matches!(
            emit_photon(&tri, &CollapseModel::Dephasing(1.5), &mut rng, 0),
            Err(Error::Parameter(_))
        ));
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn chain_is_linear_in_the_input_amplitudes(
                ar in -1.0f64..1.0, ai in -1.0f64..1.0,
                br in -1.0f64..1.0, bi in -1.0f64..1.0,
            ) {
                let alpha = Complex64::new(ar, ai);
                let beta = Complex64::new(br, bi);
                let n = (alpha.norm_sqr() + beta.norm_sqr()).sqrt();
                prop_assume!(n > 1e-3);
                let (alpha, beta) = (alpha / n, beta / n);
                let input = PureState::new(
                    photon_space(),
                    &[(&[polarization::R], alpha), (&[polarization::L], beta)],
                ).unwrap();
                let tri = entangle_chain(&input).unwrap();
                let b1 = tri.amplitude(&[polarization::R, D1, polarization::H]).unwrap();
                let b2 = tri.amplitude(&[polarization::L, D2, polarization::V]).unwrap();
                prop_assert!((b1 - alpha).norm() <= 1e-12);
                prop_assert!((b2 - beta).norm() <= 1e-12);
            }

            #[test]
            fn every_channel_emits_a_valid_density_matrix(gamma in 0.0f64..=1.0, seed in 0u64..1000) {
                let tri = entangle_chain(&prepare_input()).unwrap();
                for model in [
                    CollapseModel::UnitaryErased,
                    CollapseModel::UnitaryRecorded,
                    CollapseModel::ProjectiveCollapse,
                    CollapseModel::Dephasing(gamma),
                ] {
                    let mut rng = rng::derive(seed, 0);
                    let out = emit_photon(&tri, &model, &mut rng, 0).unwrap();
                    prop_assert!(out.state.validate().is_ok());
                    prop_assert_eq!(
                        out.click.detector.is_some(),
                        matches!(model, CollapseModel::ProjectiveCollapse)
                    );
                }
            }
        }
    }
}
