//! Exhaustive and sampled checking of protocol correctness and security.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::deck::{CardSymbol, RandomSource, TraceEvent};
use crate::encodings::Scheme;
use crate::protocols::{run_protocol, Protocol, ProtocolRun};

use super::AnalysisError;

/// Default ceiling on branches an exhaustive check may explore.
pub const DEFAULT_BRANCH_CAP: u64 = 10_000_000;

/// Significance level for the sampled uniformity test.
pub const SAMPLE_SIGNIFICANCE: f64 = 1e-3;

const SAMPLED_MASTER_SEED: u64 = 0x5eed;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "mode")]
pub enum VerifyMode {
    /// Every input times every offset script.
    Exhaustive,
    /// Fresh seeds and random inputs, plus reveal-position histograms.
    Sampled { trials: u64 },
}

/// A branch on which a protocol produced the wrong value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub inputs: Vec<u64>,
    pub script: Vec<usize>,
    pub seed: Option<u64>,
    pub expected: u64,
    pub actual: u64,
    pub trace_digest: String,
}

/// Evidence that visible traces depend on the secret inputs.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case", tag = "evidence")]
pub enum Distinguisher {
    /// Two inputs whose trace multisets differ.
    TracePair { inputs_a: Vec<u64>, inputs_b: Vec<u64>, digest_a: String, digest_b: String },
    /// A reveal whose empirical position distribution is not uniform.
    SkewedReveal { reveal_index: usize, chi_square: f64, critical: f64 },
    /// An input for which two different offsets produced the same trace.
    RepeatedTrace { inputs: Vec<u64> },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckResult<T> {
    Pass,
    Fail(T),
}

impl<T> CheckResult<T> {
    pub fn passed(&self) -> bool {
        matches!(self, CheckResult::Pass)
    }
}

/// Outcome of a verification pass over one protocol and scheme.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub protocol: Protocol,
    pub scheme: Scheme,
    pub mode: VerifyMode,
    pub optimized: bool,
    pub correctness: Option<CheckResult<Counterexample>>,
    pub security: Option<CheckResult<Distinguisher>>,
    /// Exhaustive: inputs times offset scripts. Sampled: trials.
    pub branches: u64,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.correctness.as_ref().is_none_or(CheckResult::passed)
            && self.security.as_ref().is_none_or(CheckResult::passed)
    }

    fn new(protocol: Protocol, scheme: &Scheme, mode: VerifyMode, optimized: bool) -> Self {
        VerificationReport {
            protocol,
            scheme: scheme.clone(),
            mode,
            optimized,
            correctness: None,
            security: None,
            branches: 0,
        }
    }
}

/// Iterate every offset script for a run with the given shuffle supports,
/// in odometer order.
pub struct OffsetScripts {
    radices: Vec<usize>,
    next: Option<Vec<usize>>,
}

impl OffsetScripts {
    pub fn new(radices: Vec<usize>) -> Self {
        let next = Some(vec![0; radices.len()]);
        OffsetScripts { radices, next }
    }

    pub fn total(&self) -> u64 {
        self.radices.iter().map(|&r| r as u64).product()
    }
}

impl Iterator for OffsetScripts {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        let mut pos = succ.len();
        while pos > 0 {
            pos -= 1;
            succ[pos] += 1;
            if succ[pos] < self.radices[pos] {
                self.next = Some(succ);
                break;
            }
            succ[pos] = 0;
        }
        Some(current)
    }
}

/// Shuffle support sizes of one run, in order, found by probing a seeded
/// run. The shape depends only on (protocol, scheme), never the secrets.
pub fn script_shape(
    protocol: Protocol,
    scheme: &Scheme,
    optimized: bool,
) -> Result<Vec<usize>, AnalysisError> {
    let inputs = vec![0u64; protocol.input_arity()];
    let run = run_protocol(protocol, scheme, &inputs, RandomSource::seeded(0), optimized)?;
    Ok(run
        .trace
        .events()
        .iter()
        .filter_map(|event| match event {
            TraceEvent::Shuffled(spec) => Some(spec.support_size()),
            _ => None,
        })
        .collect())
}

fn input_space(protocol: Protocol, scheme: &Scheme) -> Vec<Vec<u64>> {
    let n = scheme.modulus();
    match protocol.input_arity() {
        1 => (0..n).map(|a| vec![a]).collect(),
        _ => (0..n).flat_map(|a| (0..n).map(move |b| vec![a, b])).collect(),
    }
}

fn expected_value(protocol: Protocol, n: u64, inputs: &[u64]) -> u64 {
    match protocol {
        Protocol::Copy => inputs[0],
        Protocol::Add => (inputs[0] + inputs[1]) % n,
        Protocol::Mult => (inputs[0] * inputs[1]) % n,
        Protocol::FiveCardTrick => inputs[0] & inputs[1],
    }
}

/// Ok(()) when the run computed `expected`; Err(actual) otherwise. A copy
/// must get both outputs right.
fn run_result(run: &ProtocolRun, expected: u64) -> Result<Result<(), u64>, AnalysisError> {
    if run.protocol == Protocol::FiveCardTrick {
        let actual = u64::from(run.revealed_result.expect("five-card trick announces a bit"));
        return Ok(if actual == expected { Ok(()) } else { Err(actual) });
    }
    for value in run.output_values().map_err(AnalysisError::Encoding)? {
        if value != expected {
            return Ok(Err(value));
        }
    }
    Ok(Ok(()))
}

struct BranchSpace {
    inputs: Vec<Vec<u64>>,
    shape: Vec<usize>,
    branches: u64,
}

fn exhaustive_branches(
    protocol: Protocol,
    scheme: &Scheme,
    optimized: bool,
    cap: u64,
) -> Result<BranchSpace, AnalysisError> {
    let shape = script_shape(protocol, scheme, optimized)?;
    let inputs = input_space(protocol, scheme);
    let branches = inputs.len() as u64 * OffsetScripts::new(shape.clone()).total();
    if branches > cap {
        return Err(AnalysisError::BranchCapExceeded { branches, cap });
    }
    Ok(BranchSpace { inputs, shape, branches })
}

/// Check the protocol output against plain modular arithmetic on every
/// branch (exhaustive) or over seeded trials (sampled).
pub fn verify_correctness(
    protocol: Protocol,
    scheme: &Scheme,
    mode: VerifyMode,
    optimized: bool,
    branch_cap: u64,
) -> Result<VerificationReport, AnalysisError> {
    let n = scheme.modulus();
    let mut report = VerificationReport::new(protocol, scheme, mode, optimized);
    match mode {
        VerifyMode::Exhaustive => {
            let space = exhaustive_branches(protocol, scheme, optimized, branch_cap)?;
            report.branches = space.branches;
            'search: for input in &space.inputs {
                let expected = expected_value(protocol, n, input);
                for script in OffsetScripts::new(space.shape.clone()) {
                    let rng = RandomSource::scripted(script.clone());
                    let run = run_protocol(protocol, scheme, input, rng, optimized)?;
                    if let Err(actual) = run_result(&run, expected)? {
                        report.correctness = Some(CheckResult::Fail(Counterexample {
                            inputs: input.clone(),
                            script,
                            seed: None,
                            expected,
                            actual,
                            trace_digest: run.trace.digest(),
                        }));
                        break 'search;
                    }
                }
            }
        }
        VerifyMode::Sampled { trials } => {
            report.branches = trials;
            let mut master = ChaCha8Rng::seed_from_u64(SAMPLED_MASTER_SEED);
            for _ in 0..trials {
                let input: Vec<u64> =
                    (0..protocol.input_arity()).map(|_| master.gen_range(0..n)).collect();
                let seed: u64 = master.gen();
                let run =
                    run_protocol(protocol, scheme, &input, RandomSource::seeded(seed), optimized)?;
                let expected = expected_value(protocol, n, &input);
                if let Err(actual) = run_result(&run, expected)? {
                    report.correctness = Some(CheckResult::Fail(Counterexample {
                        inputs: input,
                        script: Vec::new(),
                        seed: Some(seed),
                        expected,
                        actual,
                        trace_digest: run.trace.digest(),
                    }));
                    break;
                }
            }
        }
    }
    report.correctness.get_or_insert(CheckResult::Pass);
    Ok(report)
}

/// Check that the visible traces leak nothing about the secret inputs.
///
/// Exhaustive mode collects the full trace multiset per input and demands
/// they be identical across inputs; the five-card trick, whose whole
/// point is to reveal the conjunction, is instead checked within each
/// output class, plus a check that each input sees five distinct
/// (hence equiprobable) revealed rotations.
///
/// Sampled mode accumulates, per reveal, the histogram of the revealed
/// club position over seeded trials and tests it against uniform.
pub fn verify_security(
    protocol: Protocol,
    scheme: &Scheme,
    mode: VerifyMode,
    optimized: bool,
    branch_cap: u64,
) -> Result<VerificationReport, AnalysisError> {
    let mut report = VerificationReport::new(protocol, scheme, mode, optimized);
    match mode {
        VerifyMode::Exhaustive => {
            let space = exhaustive_branches(protocol, scheme, optimized, branch_cap)?;
            report.branches = space.branches;
            let mut multisets: Vec<(Vec<u64>, Vec<String>)> =
                Vec::with_capacity(space.inputs.len());
            for input in &space.inputs {
                let mut traces = Vec::new();
                for script in OffsetScripts::new(space.shape.clone()) {
                    let rng = RandomSource::scripted(script);
                    let run = run_protocol(protocol, scheme, input, rng, optimized)?;
                    traces.push(run.trace.canonical());
                }
                traces.sort_unstable();
                multisets.push((input.clone(), traces));
            }
            report.security = Some(if protocol == Protocol::FiveCardTrick {
                compare_five_card_classes(&multisets)
            } else {
                compare_across_inputs(&multisets)
            });
        }
        VerifyMode::Sampled { trials } => {
            if protocol == Protocol::FiveCardTrick {
                return Err(AnalysisError::SampledSecurityUnsupported(protocol));
            }
            report.branches = trials;
            report.security = Some(sampled_reveal_uniformity(protocol, scheme, trials, optimized)?);
        }
    }
    Ok(report)
}

fn multiset_digest(traces: &[String]) -> String {
    use std::hash::{DefaultHasher, Hash, Hasher};
    let mut hasher = DefaultHasher::new();
    traces.hash(&mut hasher);
    format!("{:016x}", hasher.finish())
}

fn compare_across_inputs(multisets: &[(Vec<u64>, Vec<String>)]) -> CheckResult<Distinguisher> {
    let (first_input, first) = &multisets[0];
    for (input, traces) in &multisets[1..] {
        if traces != first {
            return CheckResult::Fail(Distinguisher::TracePair {
                inputs_a: first_input.clone(),
                inputs_b: input.clone(),
                digest_a: multiset_digest(first),
                digest_b: multiset_digest(traces),
            });
        }
    }
    CheckResult::Pass
}

fn compare_five_card_classes(
    multisets: &[(Vec<u64>, Vec<String>)],
) -> CheckResult<Distinguisher> {
    // Every cut offset must land on a different rotation.
    for (input, traces) in multisets {
        let mut deduped = traces.clone();
        deduped.dedup();
        if deduped.len() != traces.len() {
            return CheckResult::Fail(Distinguisher::RepeatedTrace { inputs: input.clone() });
        }
    }
    let split = |wanted: u64| -> Vec<(Vec<u64>, Vec<String>)> {
        multisets
            .iter()
            .filter(|(input, _)| (input[0] & input[1]) == wanted)
            .cloned()
            .collect()
    };
    let zero_class = split(0);
    compare_across_inputs(&zero_class)
}

fn sampled_reveal_uniformity(
    protocol: Protocol,
    scheme: &Scheme,
    trials: u64,
    optimized: bool,
) -> Result<CheckResult<Distinguisher>, AnalysisError> {
    let n = scheme.modulus();
    let mut histograms: Vec<Vec<u64>> = Vec::new();
    let mut master = ChaCha8Rng::seed_from_u64(SAMPLED_MASTER_SEED);
    for _ in 0..trials {
        let input: Vec<u64> =
            (0..protocol.input_arity()).map(|_| master.gen_range(0..n)).collect();
        let seed: u64 = master.gen();
        let run = run_protocol(protocol, scheme, &input, RandomSource::seeded(seed), optimized)?;
        let mut reveal_index = 0;
        for event in run.trace.events() {
            if let TraceEvent::Revealed { symbols, .. } = event {
                if histograms.len() == reveal_index {
                    histograms.push(vec![0; symbols.len()]);
                }
                let club = symbols
                    .iter()
                    .position(|s| *s == CardSymbol::Club)
                    .expect("one-club reveal");
                histograms[reveal_index][club] += 1;
                reveal_index += 1;
            }
        }
    }
    for (reveal_index, histogram) in histograms.iter().enumerate() {
        let expected = trials as f64 / histogram.len() as f64;
        let chi_square: f64 =
            histogram.iter().map(|&obs| (obs as f64 - expected).powi(2) / expected).sum();
        let critical = chi_square_critical(histogram.len() - 1, SAMPLE_SIGNIFICANCE);
        if chi_square > critical {
            return Ok(CheckResult::Fail(Distinguisher::SkewedReveal {
                reveal_index,
                chi_square,
                critical,
            }));
        }
    }
    Ok(CheckResult::Pass)
}

/// Upper chi-square quantile: the statistic threshold at the given
/// significance for `degrees_of_freedom`.
pub fn chi_square_critical(degrees_of_freedom: usize, significance: f64) -> f64 {
    ChiSquared::new(degrees_of_freedom as f64)
        .expect("positive degrees of freedom")
        .inverse_cdf(1.0 - significance)
}
