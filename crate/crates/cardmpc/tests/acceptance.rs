//! Acceptance suite: one test per release criterion, each printing a
//! pass line (run with `--nocapture` to see them). Expected values are
//! frozen here, independent of the code that produces them.

use std::time::Instant;

use cardmpc::analysis::{
    count_cards, emit_tables, simulate_mult_schedule, simulate_optimized_mult_schedule,
    verify_correctness, verify_security, VerifyMode, DEFAULT_BRANCH_CAP, TABLE_PROTOCOLS,
};
use cardmpc::deck::RandomSource;
use cardmpc::encodings::{CrtDecomposition, Scheme};
use cardmpc::protocols::{run_protocol, Protocol};

fn direct(n: u64) -> Scheme {
    Scheme::direct(n).unwrap()
}

fn crt(n: u64) -> Scheme {
    Scheme::crt(n).unwrap()
}

fn binary(n: u64) -> Scheme {
    Scheme::binary(n).unwrap()
}

/// Published card counts: 9 values per modulus in scheme-major order
/// (direct, binary, crt) x (copy, add, mult), plus which cells are the
/// row minimum for their protocol.
const GOLDEN: [(u64, [u64; 9], [bool; 9]); 7] = [
    (6, [18, 12, 42, 14, 22, 22, 13, 10, 14],
        [false, false, false, false, false, false, true, true, true]),
    (10, [30, 20, 110, 18, 28, 28, 19, 14, 32],
        [false, false, false, true, false, true, false, true, false]),
    (12, [36, 24, 156, 18, 28, 28, 18, 14, 23],
        [false, false, false, true, false, false, true, true, true]),
    (14, [42, 28, 210, 18, 28, 28, 25, 18, 58],
        [false, false, false, true, false, true, false, true, false]),
    (15, [45, 30, 240, 18, 28, 28, 21, 16, 33],
        [false, false, false, true, false, true, false, true, false]),
    (18, [54, 36, 342, 22, 34, 34, 31, 22, 92],
        [false, false, false, true, false, true, false, true, false]),
    (20, [60, 40, 420, 22, 34, 34, 23, 18, 34],
        [false, false, false, true, false, true, false, true, true]),
];

#[test]
fn criterion_1_z6_table_reproduced() {
    let started = Instant::now();
    let expected: [(&Scheme, [u64; 3]); 3] = [
        (&direct(6), [18, 12, 42]),
        (&binary(6), [14, 22, 22]),
        (&crt(6), [13, 10, 14]),
    ];
    for (scheme, counts) in expected {
        for (protocol, count) in TABLE_PROTOCOLS.into_iter().zip(counts) {
            assert_eq!(
                count_cards(scheme, protocol, true).unwrap(),
                count,
                "{} {protocol}",
                scheme.name()
            );
        }
    }
    assert!(started.elapsed().as_secs() < 1);
    println!("criterion 1 (Z/6Z counts 18/12/42, 14/22/22, 13/10/14): PASS");
}

#[test]
fn criterion_2_full_table_reproduced_with_minima() {
    let started = Instant::now();
    let tables = emit_tables();
    assert_eq!(tables.rows.len(), 7);
    let mut cells_checked = 0;
    for (n, values, minima) in GOLDEN {
        let row = tables.rows.iter().find(|r| r.n == n).unwrap();
        let mut index = 0;
        for scheme in ["direct", "binary", "crt"] {
            for protocol in TABLE_PROTOCOLS {
                let cell = row.cell(scheme, protocol);
                assert_eq!(cell.cards, values[index], "n={n} {scheme} {protocol}");
                assert_eq!(cell.row_minimum, minima[index], "n={n} {scheme} {protocol} flag");
                index += 1;
                cells_checked += 1;
            }
        }
    }
    assert_eq!(cells_checked, 63);
    assert!(started.elapsed().as_secs() < 1);
    println!("criterion 2 (all 63 table cells and row minima): PASS");
}

#[test]
fn criterion_3_optimized_schedule_matches_hand_accounting() {
    // Independent accounting: while the part with modulus q runs, the
    // table holds the earlier parts' outputs, both operands of the later
    // parts, and the q^2 + q cards of the active multiplication.
    fn schedule_oracle(moduli: &[u64]) -> u64 {
        (0..moduli.len())
            .map(|i| {
                let earlier: u64 = moduli[..i].iter().sum();
                let later: u64 = moduli[i + 1..].iter().sum();
                let q = moduli[i];
                earlier + 2 * later + q * q + q
            })
            .max()
            .unwrap()
    }

    for (n, _, _) in GOLDEN {
        let decomposition = CrtDecomposition::decompose(n).unwrap();
        let moduli: Vec<u64> = decomposition.moduli().collect();
        let (peak, steps) = simulate_optimized_mult_schedule(&decomposition);
        assert_eq!(peak, schedule_oracle(&moduli), "n={n}");
        assert_eq!(steps.len(), moduli.len());
        assert_eq!(peak, steps.iter().map(|s| s.running_total).max().unwrap());
    }

    let six = CrtDecomposition::decompose(6).unwrap();
    assert_eq!(simulate_optimized_mult_schedule(&six).0, 14);
    assert_eq!(simulate_mult_schedule(&six, false).0, 16);
    println!("criterion 3 (schedule simulation vs hand accounting; 14 vs 16 for Z/6Z): PASS");
}

#[test]
fn criterion_4_exhaustive_correctness() {
    let started = Instant::now();
    for n in 2..=8u64 {
        let scheme = direct(n);
        let copy = verify_correctness(
            Protocol::Copy, &scheme, VerifyMode::Exhaustive, false, DEFAULT_BRANCH_CAP,
        )
        .unwrap();
        assert!(copy.passed(), "copy n={n}");
        assert_eq!(copy.branches, n * n);
        let add = verify_correctness(
            Protocol::Add, &scheme, VerifyMode::Exhaustive, false, DEFAULT_BRANCH_CAP,
        )
        .unwrap();
        assert!(add.passed(), "add n={n}");
        assert_eq!(add.branches, n * n * n);
    }
    for n in [2u64, 3] {
        let mult = verify_correctness(
            Protocol::Mult, &direct(n), VerifyMode::Exhaustive, false, DEFAULT_BRANCH_CAP,
        )
        .unwrap();
        assert!(mult.passed(), "mult n={n}");
    }
    let crt6 = crt(6);
    for (protocol, branches) in [(Protocol::Copy, 36), (Protocol::Add, 216), (Protocol::Mult, 648)]
    {
        let report = verify_correctness(
            protocol, &crt6, VerifyMode::Exhaustive, true, DEFAULT_BRANCH_CAP,
        )
        .unwrap();
        assert!(report.passed(), "crt {protocol}");
        assert_eq!(report.branches, branches, "crt {protocol}");
    }
    assert!(started.elapsed().as_secs() < 60);
    println!("criterion 4 (exhaustive correctness incl. 648 crt mult branches): PASS");
}

#[test]
fn criterion_5_exhaustive_security() {
    let started = Instant::now();
    for n in 2..=8u64 {
        let scheme = direct(n);
        for protocol in [Protocol::Copy, Protocol::Add] {
            let report = verify_security(
                protocol, &scheme, VerifyMode::Exhaustive, false, DEFAULT_BRANCH_CAP,
            )
            .unwrap();
            assert!(report.passed(), "{protocol} n={n}");
        }
    }
    for n in [2u64, 3] {
        let report = verify_security(
            Protocol::Mult, &direct(n), VerifyMode::Exhaustive, false, DEFAULT_BRANCH_CAP,
        )
        .unwrap();
        assert!(report.passed(), "mult n={n}");
    }
    let crt6 = crt(6);
    for protocol in [Protocol::Copy, Protocol::Add, Protocol::Mult] {
        let report =
            verify_security(protocol, &crt6, VerifyMode::Exhaustive, true, DEFAULT_BRANCH_CAP)
                .unwrap();
        assert!(report.passed(), "crt {protocol}");
    }

    // Five-card trick: five equiprobable rotations per input, and the
    // rotation class depends on nothing but the conjunction.
    let bit = direct(2);
    let report = verify_security(
        Protocol::FiveCardTrick, &bit, VerifyMode::Exhaustive, false, DEFAULT_BRANCH_CAP,
    )
    .unwrap();
    assert!(report.passed());
    assert_eq!(report.branches, 20);
    let reveal_multiset = |a: u64, b: u64| -> Vec<String> {
        let mut traces: Vec<String> = (0..5)
            .map(|cut| {
                run_protocol(
                    Protocol::FiveCardTrick, &bit, &[a, b], RandomSource::scripted(vec![cut]),
                    false,
                )
                .unwrap()
                .trace
                .canonical()
            })
            .collect();
        traces.sort_unstable();
        traces
    };
    let base = reveal_multiset(0, 0);
    assert_eq!(base.len(), 5);
    assert!(base.windows(2).all(|w| w[0] != w[1]), "rotations must be distinct");
    assert_eq!(base, reveal_multiset(0, 1));
    assert_eq!(base, reveal_multiset(1, 0));
    assert_ne!(base, reveal_multiset(1, 1));
    assert!(started.elapsed().as_secs() < 60);
    println!("criterion 5 (trace multisets equal across secrets; 5-rotation classes): PASS");
}

#[test]
fn criterion_6_sampled_mult_six() {
    let scheme = direct(6);
    let trials = 10_000;
    let correctness = verify_correctness(
        Protocol::Mult, &scheme, VerifyMode::Sampled { trials }, false, DEFAULT_BRANCH_CAP,
    )
    .unwrap();
    assert!(correctness.passed());
    assert_eq!(correctness.branches, trials);
    let security = verify_security(
        Protocol::Mult, &scheme, VerifyMode::Sampled { trials }, false, DEFAULT_BRANCH_CAP,
    )
    .unwrap();
    assert!(security.passed());
    println!("criterion 6 (10^4 sampled mult trials; uniform reveals at alpha 1e-3): PASS");
}

#[test]
fn criterion_7_mult_of_bits_is_boolean_and() {
    let scheme = direct(2);
    for a in 0..2u64 {
        for b in 0..2u64 {
            for cut in 0..2usize {
                let run = run_protocol(
                    Protocol::Mult, &scheme, &[a, b], RandomSource::scripted(vec![cut]), false,
                )
                .unwrap();
                assert_eq!(run.output_values().unwrap(), vec![a & b], "a={a} b={b} cut={cut}");
                assert_eq!(run.peak_cards(), 6);
            }
        }
    }
    println!("criterion 7 (two-value mult equals boolean AND on every branch): PASS");
}

#[test]
fn criterion_8_measured_peaks_equal_counted_cards() {
    let mut configurations: Vec<(Protocol, Scheme, bool)> = Vec::new();
    for n in 2..=8u64 {
        for protocol in [Protocol::Copy, Protocol::Add, Protocol::Mult] {
            configurations.push((protocol, direct(n), false));
        }
        configurations.push((Protocol::Copy, binary(n), false));
        if let Ok(scheme) = Scheme::crt(n) {
            for protocol in [Protocol::Copy, Protocol::Add] {
                configurations.push((protocol, scheme.clone(), false));
            }
            configurations.push((Protocol::Mult, scheme.clone(), true));
            configurations.push((Protocol::Mult, scheme, false));
        }
    }
    let crt12 = crt(12);
    configurations.push((Protocol::Copy, crt12.clone(), false));
    configurations.push((Protocol::Add, crt12.clone(), false));
    configurations.push((Protocol::Mult, crt12.clone(), true));
    configurations.push((Protocol::Mult, crt12, false));
    configurations.push((Protocol::FiveCardTrick, direct(2), false));

    for (protocol, scheme, optimized) in configurations {
        let expected = count_cards(&scheme, protocol, optimized).unwrap() as usize;
        let n = scheme.modulus();
        for seed in 0..5u64 {
            let inputs: Vec<u64> = match protocol.input_arity() {
                1 => vec![seed % n],
                _ => vec![seed % n, (seed * 3 + 1) % n],
            };
            let run =
                run_protocol(protocol, &scheme, &inputs, RandomSource::seeded(seed), optimized)
                    .unwrap();
            assert_eq!(
                run.peak_cards(),
                expected,
                "{protocol} {} n={n} optimized={optimized} seed={seed}",
                scheme.name()
            );
        }
    }
    println!("criterion 8 (measured peak equals counted cards on every configuration): PASS");
}
