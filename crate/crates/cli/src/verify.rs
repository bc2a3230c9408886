//! Exhaustive cross-checks over every connection set of every small group.

use std::collections::BTreeSet;
use std::panic::{self, AssertUnwindSafe};

use cayley_spectra::cyclotomic::CycInt;
use cayley_spectra::group::{groups_up_to_order, AbelianGroup};
use cayley_spectra::spectrum::{ConnectionSet, ConnectionSetSpace};
use cayley_spectra::splitting::{
    combinatorial_stabilizer, galois_fixing_stabilizer, is_integral_characterized, undirected_stabilizer,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// Connection sets per group that also get a numeric eigenvalue check.
pub const NUMERIC_SAMPLES_PER_GROUP: usize = 16;

/// Off-diagonal norm at which the Jacobi solve stops. Numeric results are
/// then compared with the exact ones at the user's `--tol`.
pub const JACOBI_CONVERGENCE: f64 = 1e-12;

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub max_order: u64,
    pub seed: u64,
    pub jobs: Option<usize>,
    pub tol: f64,
    /// Drop complex conjugation from the first stabilizer computed, so the
    /// sweep has a known failure to report.
    pub inject_fault: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    Stabilizer,
    Integrality,
    DegreeDuality,
    Numeric,
    Panic,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupTally {
    pub group: AbelianGroup,
    pub sets: u64,
    pub undirected: u64,
    pub integral: u64,
    pub numeric: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub set: ConnectionSet,
    pub check: Check,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationSummary {
    pub max_order: u64,
    pub seed: u64,
    pub groups: Vec<GroupTally>,
    pub failures: Vec<Counterexample>,
}

impl VerificationSummary {
    pub fn total_sets(&self) -> u64 {
        self.groups.iter().map(|t| t.sets).sum()
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Default)]
struct Outcome {
    undirected: bool,
    integral: bool,
    numeric: bool,
    failures: Vec<(Check, String)>,
}

fn check_set(cs: &ConnectionSet, numeric: bool, inject_fault: bool, tol: f64) -> Outcome {
    let mut out = Outcome { undirected: cs.is_undirected(), numeric, ..Outcome::default() };
    let spec = cs.full_spectrum();

    let h = combinatorial_stabilizer(cs);
    let k = galois_fixing_stabilizer(&spec);
    let mut h_elems = h.elements().to_vec();
    if inject_fault {
        let conj = cs.spectral_modulus() - 1;
        h_elems.retain(|&u| u != conj);
    }
    if h_elems != k.elements() {
        out.failures.push((Check::Stabilizer, format!("H = {h_elems:?} but K = {:?}", k.elements())));
    }

    let exact = spec.eigenvalues().all(CycInt::is_rational);
    let characterized = is_integral_characterized(cs);
    let degree = h.index();
    out.integral = exact;
    if exact != characterized || exact != (degree == 1) {
        out.failures.push((
            Check::Integrality,
            format!("exact {exact}, atom criterion {characterized}, degree {degree}"),
        ));
    }

    if out.undirected {
        match undirected_stabilizer(cs) {
            Ok(h_prime) if h_prime.index() == degree => {}
            Ok(h_prime) => out.failures.push((
                Check::DegreeDuality,
                format!("phi(4n)/|H| = {degree} but phi(n)/|H'| = {}", h_prime.index()),
            )),
            Err(e) => out.failures.push((Check::DegreeDuality, e.to_string())),
        }
    }

    if numeric {
        match cs.numeric_spectrum(tol.min(JACOBI_CONVERGENCE)) {
            Ok(values) => {
                let exact = spec.sorted_approximations();
                let worst = values.iter().zip(&exact).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
                if worst > tol {
                    out.failures.push((Check::Numeric, format!("max deviation {worst:e} exceeds {tol:e}")));
                }
            }
            Err(e) => out.failures.push((Check::Numeric, e.to_string())),
        }
    }
    out
}

fn guarded_check(cs: &ConnectionSet, numeric: bool, inject_fault: bool, tol: f64) -> Outcome {
    panic::catch_unwind(AssertUnwindSafe(|| check_set(cs, numeric, inject_fault, tol))).unwrap_or_else(|payload| {
        let msg = payload
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| payload.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "unknown panic".into());
        Outcome { failures: vec![(Check::Panic, msg)], ..Outcome::default() }
    })
}

/// Sweeps every connection set on every nontrivial group of order at most
/// `max_order`. Results are merged in enumeration order, so the summary does
/// not depend on the number of worker threads.
pub fn run_verify(opts: &VerifyOptions) -> Result<VerificationSummary, CliError> {
    if !(opts.tol > 0.0 && opts.tol.is_finite()) {
        return Err(CliError::Usage(format!("tolerance must be positive, got {}", opts.tol)));
    }
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(jobs) = opts.jobs {
        builder = builder.num_threads(jobs);
    }
    let pool = builder.build().map_err(|e| CliError::Usage(format!("cannot start worker pool: {e}")))?;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);

    let mut summary = VerificationSummary { max_order: opts.max_order, seed: opts.seed, groups: Vec::new(), failures: Vec::new() };
    for (gi, group) in groups_up_to_order(opts.max_order).into_iter().enumerate() {
        let space = ConnectionSetSpace::new(&group);
        let len = space.len();
        let picks = NUMERIC_SAMPLES_PER_GROUP.min(len as usize);
        let sampled: BTreeSet<u64> =
            rand::seq::index::sample(&mut rng, len as usize, picks).into_iter().map(|i| i as u64).collect();

        let outcomes: Vec<(ConnectionSet, Outcome)> = pool.install(|| {
            (0..len)
                .into_par_iter()
                .map(|i| {
                    let cs = space.get(i);
                    let fault = opts.inject_fault && gi == 0 && i == 0;
                    let outcome = guarded_check(&cs, sampled.contains(&i), fault, opts.tol);
                    (cs, outcome)
                })
                .collect()
        });

        let mut tally = GroupTally { group, sets: len, undirected: 0, integral: 0, numeric: 0 };
        for (cs, outcome) in outcomes {
            tally.undirected += outcome.undirected as u64;
            tally.integral += outcome.integral as u64;
            tally.numeric += outcome.numeric as u64;
            for (check, detail) in outcome.failures {
                summary.failures.push(Counterexample { set: cs.clone(), check, detail });
            }
        }
        summary.groups.push(tally);
    }
    Ok(summary)
}
