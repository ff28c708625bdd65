//! Full-pipeline scenarios: a paired source feeding two identical measurement
//! chains, whose emitted photons meet in the interferometer readout.
//!
//! A scenario fixes the collapse model, the temporal overlap, the trial count
//! and the master seed. Each trial derives its own random streams, so results
//! are bitwise reproducible and independent of evaluation order. The oracle
//! check compares the closed-form coincidence probability against the
//! brute-force Fock expansion on randomized inputs.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::apparatus::{analytic_emitted_state, emit_photon, entangle_chain, prepare_input, CollapseModel};
use crate::error::{Error, Result};
use crate::fock;
use crate::hom::{
    coincidence_probability, outcome_distribution, rate_interval, DetectionTally, OutcomeKind,
};
use crate::quantum::{polarization, DensityMatrix, Space};
use crate::rng;

/// Configuration of one scenario run.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub model: CollapseModel,
    /// Temporal overlap of the two emitted photons.
    pub eta: f64,
    pub trials: u64,
    pub seed: u64,
    pub label: String,
}

impl ScenarioConfig {
    pub fn new(model: CollapseModel, eta: f64, trials: u64, seed: u64, label: &str) -> ScenarioConfig {
        ScenarioConfig {
            model,
            eta,
            trials,
            seed,
            label: label.to_string(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.model.validate()?;
        if !(0.0..=1.0).contains(&self.eta) {
            return Err(Error::Config(format!("eta must be in [0, 1], got {}", self.eta)));
        }
        if self.trials == 0 {
            return Err(Error::Config("trials must be at least 1".into()));
        }
        Ok(())
    }
}

/// Outcome of one scenario: the analytic coincidence rate from the exact
/// ensemble emitted state, the sampled tally, its Wilson z=3 interval, and
/// the ensemble state's purity.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioResult {
    pub config: ScenarioConfig,
    pub analytic_rate: f64,
    pub tally: DetectionTally,
    pub interval: (f64, f64),
    pub emitted_purity: f64,
}

/// Run one scenario. Per trial, both apparatuses run the chain under the
/// configured model with independent derived streams (`3t` and `3t + 1`), and
/// one detection is drawn from the per-trial outcome distribution (`3t + 2`).
pub fn run_scenario(config: &ScenarioConfig) -> Result<ScenarioResult> {
    config.validate()?;
    let analytic_state = analytic_emitted_state(&config.model)?;
    let analytic_rate = coincidence_probability(&analytic_state, &analytic_state, config.eta)?;
    let emitted_purity = analytic_state.purity();

    let tripartite = entangle_chain(&prepare_input())?;
    let mut counts = [0u64; 3];
    for trial in 0..config.trials {
        let mut rng1 = rng::derive(config.seed, 3 * trial);
        let mut rng2 = rng::derive(config.seed, 3 * trial + 1);
        let photon1 = emit_photon(&tripartite, &config.model, &mut rng1, trial)?;
        let photon2 = emit_photon(&tripartite, &config.model, &mut rng2, trial)?;
        let dist = outcome_distribution(&photon1.state, &photon2.state, config.eta)?;
        let mut detector_rng = rng::derive(config.seed, 3 * trial + 2);
        let u: f64 = detector_rng.random();
        match dist.draw(u) {
            OutcomeKind::Coincidence => counts[0] += 1,
            OutcomeKind::BothA => counts[1] += 1,
            OutcomeKind::BothB => counts[2] += 1,
        }
    }
    let tally = DetectionTally::new(config.trials, counts[0], counts[1], counts[2], config.seed)?;
    let interval = rate_interval(&tally, 3.0, OutcomeKind::Coincidence)?;
    Ok(ScenarioResult {
        config: config.clone(),
        analytic_rate,
        tally,
        interval,
        emitted_purity,
    })
}

/// Which scenario parameter a sweep varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepParameter {
    /// Dephasing strength; the swept model is `Dephasing(value)`.
    Gamma,
    /// Temporal overlap; the base model is kept.
    Eta,
}

impl SweepParameter {
    pub fn as_str(&self) -> &'static str {
        match self {
            SweepParameter::Gamma => "gamma",
            SweepParameter::Eta => "eta",
        }
    }
}

/// Seed for sweep point `index`, derived from the base seed and the index
/// (not the value), so non-uniform grids stay reproducible.
pub fn sweep_seed(base_seed: u64, index: usize) -> u64 {
    base_seed.wrapping_add((index as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

/// Run one scenario per value, in grid order.
pub fn run_sweep(
    base: &ScenarioConfig,
    param: SweepParameter,
    values: &[f64],
) -> Result<Vec<ScenarioResult>> {
    let mut results = Vec::with_capacity(values.len());
    for (index, &value) in values.iter().enumerate() {
        if !(0.0..=1.0).contains(&value) {
            return Err(Error::Parameter(format!(
                "{} value {value} outside [0, 1]",
                param.as_str()
            )));
        }
        let mut config = base.clone();
        config.seed = sweep_seed(base.seed, index);
        config.label = format!("{} {}={}", base.label, param.as_str(), value);
        match param {
            SweepParameter::Gamma => config.model = CollapseModel::Dephasing(value),
            SweepParameter::Eta => config.eta = value,
        }
        results.push(run_scenario(&config)?);
    }
    Ok(results)
}

/// Absolute difference between the closed-form coincidence probability and
/// the Fock-expansion value for one input triple.
pub fn closed_form_discrepancy(
    rho1: &DensityMatrix,
    rho2: &DensityMatrix,
    eta: f64,
) -> Result<f64> {
    let closed = coincidence_probability(rho1, rho2, eta)?;
    let brute = fock::hom_output_distribution(rho1, rho2, eta)?;
    Ok((closed - brute.p_coincidence()).abs())
}

/// A random polarization density matrix drawn uniformly from the Bloch ball,
/// pushed to the pure boundary a quarter of the time.
fn random_polarization_density(rng: &mut ChaCha8Rng, name: &str) -> DensityMatrix {
    let (x, y, z) = loop {
        let x: f64 = rng.random_range(-1.0..1.0);
        let y: f64 = rng.random_range(-1.0..1.0);
        let z: f64 = rng.random_range(-1.0..1.0);
        let r2 = x * x + y * y + z * z;
        if r2 > 1.0 {
            continue;
        }
        if r2 > 1e-6 && rng.random::<f64>() < 0.25 {
            let r = r2.sqrt();
            break (x / r, y / r, z / r);
        }
        break (x, y, z);
    };
    let mat = nalgebra::DMatrix::from_row_slice(
        2,
        2,
        &[
            num_complex::Complex64::new((1.0 + z) / 2.0, 0.0),
            num_complex::Complex64::new(x / 2.0, -y / 2.0),
            num_complex::Complex64::new(x / 2.0, y / 2.0),
            num_complex::Complex64::new((1.0 - z) / 2.0, 0.0),
        ],
    );
    DensityMatrix::from_matrix(Space::single(polarization::linear(name)), mat)
        .expect("Bloch-ball points are valid states")
}

/// Compare the closed form against the Fock expansion on `samples` random
/// `(rho1, rho2, eta)` triples; returns the largest absolute discrepancy.
pub fn oracle_check(samples: u64, seed: u64) -> Result<f64> {
    if samples == 0 {
        return Err(Error::Parameter("samples must be at least 1".into()));
    }
    let mut worst = 0.0f64;
    for sample in 0..samples {
        let mut rng = rng::derive(seed, sample);
        let rho1 = random_polarization_density(&mut rng, "pol1");
        let rho2 = random_polarization_density(&mut rng, "pol2");
        let eta: f64 = rng.random();
        worst = worst.max(closed_form_discrepancy(&rho1, &rho2, eta)?);
    }
    Ok(worst)
}
