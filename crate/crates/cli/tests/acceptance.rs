//! One line per acceptance criterion. Criterion 6 is known to be false for
//! four and five points; those cases are printed as failures and checked to be
//! the only ones.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use opforge::selftest::{self, Outcome};

/// Wall-clock limits per criterion, in seconds.
const LIMITS: [(u8, u64); 7] = [(1, 60), (2, 60), (3, 300), (4, 600), (5, 300), (6, 30), (7, 300)];

/// Layer cases whose total fiber is not concentrated in one degree.
const KNOWN_FALSE_LAYERS: [(i64, usize); 6] = [(1, 4), (1, 5), (2, 4), (2, 5), (3, 4), (3, 5)];

fn cli_is_deterministic() -> Result<usize, String> {
    let cases: &[&[&str]] = &[
        &["koszul", "check", "--operad", "pois", "--n", "3", "--max-arity", "4", "--json"],
        &["koszul", "check-module", "--module", "sphere", "--n", "1", "--d", "1", "--max-arity", "4", "--csv"],
        &["bar", "homology", "--operad", "lie", "--arity", "5"],
        &["layers", "--n", "3", "--k", "5", "--json"],
        &["operad", "show", "pois", "--n", "3", "--arity", "5", "--basis", "--json"],
        &["module", "show", "--kind", "sphere", "--n", "2", "--arity", "3", "--basis"],
    ];
    for args in cases {
        let outputs: Vec<_> = ["1", "4"]
            .iter()
            .map(|threads| {
                Command::new(env!("CARGO_BIN_EXE_opforge")).args(*args).env("OPFORGE_THREADS", threads).output()
            })
            .collect::<Result<_, _>>()
            .map_err(|e| e.to_string())?;
        if outputs[0].stdout != outputs[1].stdout || outputs[0].status != outputs[1].status {
            return Err(format!("{args:?} differs between runs"));
        }
    }
    Ok(cases.len())
}

fn expected_failures_only(o: &Outcome) -> bool {
    let known: Vec<String> = KNOWN_FALSE_LAYERS.iter().map(|(n, k)| format!("layer n={n} k={k}:")).collect();
    o.failures.len() == known.len() && o.failures.iter().zip(&known).all(|(f, k)| f.starts_with(k.as_str()))
}

fn main() -> ExitCode {
    let mut unexpected = Vec::new();
    for (id, limit) in LIMITS {
        let start = Instant::now();
        let mut outcome = selftest::run(id).expect("criterion exists");
        assert_eq!(outcome.criterion.limit, Duration::from_secs(limit), "limit of criterion {id}");
        if id == 7 {
            match cli_is_deterministic() {
                Ok(n) => outcome.checks += n,
                Err(e) => {
                    outcome.failures.push(e);
                    outcome.pass = false;
                }
            }
            outcome.elapsed = start.elapsed();
            outcome.pass &= outcome.elapsed <= outcome.criterion.limit;
        }
        println!("{}", outcome.line());
        let tolerated = id == 6 && outcome.elapsed <= outcome.criterion.limit && expected_failures_only(&outcome);
        if !outcome.pass && !tolerated {
            unexpected.push(id);
        }
    }
    if unexpected.is_empty() {
        println!("acceptance: all criteria as expected (criterion 6 fails only on its known-false cases)");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: unexpected failures in criteria {unexpected:?}");
        ExitCode::FAILURE
    }
}
