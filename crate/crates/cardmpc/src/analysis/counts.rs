//! Closed-form card counts and the reuse schedule for crt multiplication.

use serde::Serialize;

use crate::encodings::{ceil_lg, CrtDecomposition, Scheme};
use crate::protocols::Protocol;

use super::AnalysisError;

/// A single card-count claim: this protocol under this scheme needs this
/// many cards. Running the protocol must peak at exactly this number.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountModel {
    pub scheme: Scheme,
    pub protocol: Protocol,
    pub optimized: bool,
    pub cards: u64,
}

impl CountModel {
    pub fn for_configuration(
        scheme: &Scheme,
        protocol: Protocol,
        optimized: bool,
    ) -> Result<Self, AnalysisError> {
        Ok(CountModel {
            scheme: scheme.clone(),
            protocol,
            optimized,
            cards: count_cards(scheme, protocol, optimized)?,
        })
    }
}

/// Cards required to run `protocol` under `scheme`.
///
/// Direct: 3n / 2n / n^2+n. Binary over d = ceil(lg n) digits: 4d+2 for
/// copy and 6d+4 for addition and multiplication (the latter two via the
/// external boolean-function protocol, counted but not executable here).
/// Crt over factor moduli summing to S with maximum m: 2S+m / 2S /
/// 2S+m^2-m, and with the reuse optimization the multiplication drops to
/// whatever the simulated schedule peaks at.
pub fn count_cards(
    scheme: &Scheme,
    protocol: Protocol,
    optimized: bool,
) -> Result<u64, AnalysisError> {
    if protocol == Protocol::FiveCardTrick {
        if *scheme == (Scheme::Direct { modulus: 2 }) {
            return Ok(5);
        }
        return Err(AnalysisError::UnsupportedPair {
            protocol,
            scheme: scheme.name().to_string(),
        });
    }
    let n = scheme.modulus();
    Ok(match (scheme, protocol) {
        (Scheme::Direct { .. }, Protocol::Copy) => 3 * n,
        (Scheme::Direct { .. }, Protocol::Add) => 2 * n,
        (Scheme::Direct { .. }, Protocol::Mult) => n * n + n,
        (Scheme::Binary { .. }, Protocol::Copy) => 4 * u64::from(ceil_lg(n)) + 2,
        (Scheme::Binary { .. }, Protocol::Add | Protocol::Mult) => {
            6 * u64::from(ceil_lg(n)) + 4
        }
        (Scheme::Crt(d), Protocol::Copy) => 2 * d.modulus_sum() + d.largest_modulus(),
        (Scheme::Crt(d), Protocol::Add) => 2 * d.modulus_sum(),
        (Scheme::Crt(d), Protocol::Mult) => {
            if optimized {
                simulate_optimized_mult_schedule(d).0
            } else {
                let m = d.largest_modulus();
                2 * d.modulus_sum() + m * m - m
            }
        }
        (_, Protocol::FiveCardTrick) => unreachable!("handled above"),
    })
}

/// One factor's turn in the part-by-part multiplication schedule.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScheduleStep {
    pub modulus: u64,
    /// Cards this part had to take beyond what earlier parts freed.
    pub drawn_fresh: u64,
    /// Cards released when this part finished.
    pub freed: u64,
    /// Cards on the table while this part's multiplication ran.
    pub running_total: u64,
}

/// Walk the crt multiplication part by part, smallest modulus first, and
/// report the peak table occupancy.
///
/// Each part's multiplication holds `q^2 + q` cards while everything else
/// idles: not-yet-used input parts (two rows of q each) and the outputs of
/// finished parts (one row each). With `reuse_remains`, a finished part
/// frees all `q^2` non-output cards for later parts; without it only the
/// `q^2 - q` extras come back and the `q` remains of the consumed inputs
/// stay on the table to the end.
pub fn simulate_mult_schedule(
    decomposition: &CrtDecomposition,
    reuse_remains: bool,
) -> (u64, Vec<ScheduleStep>) {
    let mut pool = 0u64;
    let mut in_play = 2 * decomposition.modulus_sum();
    let mut peak = in_play;
    let mut steps = Vec::new();
    for q in decomposition.moduli() {
        let need = q * q - q;
        let from_pool = need.min(pool);
        pool -= from_pool;
        in_play += need;
        peak = peak.max(in_play);
        let freed = if reuse_remains { q * q } else { q * q - q };
        steps.push(ScheduleStep {
            modulus: q,
            drawn_fresh: need - from_pool,
            freed,
            running_total: in_play,
        });
        in_play -= freed;
        pool += freed;
    }
    (peak, steps)
}

/// The schedule with full reuse of freed cards, the mode the published
/// multiplication counts assume.
pub fn simulate_optimized_mult_schedule(
    decomposition: &CrtDecomposition,
) -> (u64, Vec<ScheduleStep>) {
    simulate_mult_schedule(decomposition, true)
}
