//! The oracle-versus-formula suites behind `mdsrel verify`.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::combinatorics::identity_suite;
use crate::enumerator::{
    f_closed, f_recurrence, irwe_inclusion_exclusion, pwe_partition, weight_distribution, CodeParams, IrweTable,
    WdMethod,
};
use crate::oracle::{census_ball, census_f_cauchy, census_irwe, monte_carlo, reference_code, split_weight, EventCensus};
use crate::rates::{derive_channel, Mode, RateModel, RateTables};
use crate::sphere::{ball_volume, decoder_change_stats, sphere_count, sphere_count_cases, SplitWeight};

/// Outcome of one suite: a short summary on success, the first mismatch
/// on failure.
pub type SuiteOutcome = Result<String, String>;

pub struct Suite {
    pub name: &'static str,
    pub run: fn() -> SuiteOutcome,
}

#[derive(Debug, Clone)]
pub struct SuiteResult {
    pub name: &'static str,
    pub outcome: SuiteOutcome,
    pub elapsed: Duration,
}

pub const SUITES: [Suite; 7] = [
    Suite { name: "identities", run: identities },
    Suite { name: "f-grids", run: f_grids },
    Suite { name: "irwe", run: irwe_agreement },
    Suite { name: "weight-distribution", run: weight_distributions },
    Suite { name: "sphere", run: spheres },
    Suite { name: "event-census", run: event_census },
    Suite { name: "monte-carlo", run: monte_carlo_check },
];

pub const MC_SEED: u64 = 20_240_601;
pub const MC_TRIALS: u64 = 1_000_000;
pub const MC_WORKERS: usize = 4;
pub const MC_SIGMAS: f64 = 4.0;

/// Runs the suites in order, stopping after the first failure unless
/// `keep_going`.
pub fn run_suites(keep_going: bool) -> Vec<SuiteResult> {
    let mut out = Vec::new();
    for suite in &SUITES {
        let start = Instant::now();
        let outcome = (suite.run)();
        let failed = outcome.is_err();
        out.push(SuiteResult {
            name: suite.name,
            outcome,
            elapsed: start.elapsed(),
        });
        if failed && !keep_going {
            break;
        }
    }
    out
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn code(name: &str) -> Result<crate::oracle::SystematicCode, String> {
    reference_code(name).map_err(|e| format!("{name}: {e}"))
}

fn identities() -> SuiteOutcome {
    let bad = identity_suite(20);
    match bad.first() {
        None => Ok("all identities hold for magnitudes <= 20".into()),
        Some(v) => Err(format!(
            "{} violated at {:?}: {} != {} ({} violations)",
            v.identity,
            v.params,
            v.lhs,
            v.rhs,
            bad.len()
        )),
    }
}

fn f_grids() -> SuiteOutcome {
    let mut cells = 0;
    for q in [2, 3, 4, 5, 7, 8] {
        for i in 1..=20 {
            for j in 1..=12 {
                let (a, b) = (f_closed(q, i, j), f_recurrence(q, i, j));
                ensure(a == b, || format!("f({q},{i},{j}): closed {a} != recurrence {b}"))?;
                cells += 1;
            }
        }
    }
    let mut systems = 0;
    for q in [5u64, 7] {
        for i in 1..=6usize {
            for j in 1..=3usize {
                if i + j > q as usize {
                    continue;
                }
                let direct = census_f_cauchy(q, i, j).map_err(|e| e.to_string())?;
                let formula = f_closed(q, i as u64, j as u64);
                ensure(BigInt::from(direct) == formula, || {
                    format!("Cauchy system over F_{q}, i={i} j={j}: census {direct} != {formula}")
                })?;
                systems += 1;
            }
        }
    }
    Ok(format!("{cells} grid cells, {systems} Cauchy systems"))
}

fn irwe_agreement() -> SuiteOutcome {
    for name in ["T1", "T2", "T3", "T4"] {
        let code = code(name)?;
        let closed = IrweTable::compute(code.params);
        let routes = [
            ("inclusion-exclusion", IrweTable::from_fn(code.params, irwe_inclusion_exclusion)),
            ("partition", IrweTable::from_fn(code.params, pwe_partition)),
            ("census", census_irwe(&code).map_err(|e| e.to_string())?),
        ];
        for (route, table) in routes {
            ensure(table == closed, || format!("{name}: {route} table differs from closed form"))?;
        }
    }
    for k in [87, 107, 117] {
        let params = CodeParams::binary(127, k, 7).map_err(|e| e.to_string())?;
        IrweTable::compute(params)
            .check_invariants()
            .map_err(|e| format!("{params}: {e}"))?;
    }
    Ok("T1-T4 four-way, [127,k]_128 normalized".into())
}

fn weight_distributions() -> SuiteOutcome {
    let mut codes = vec![CodeParams::binary(127, 117, 7).map_err(|e| e.to_string())?];
    for q in [8, 16, 32] {
        for n in 2..=31 {
            for k in 1..n {
                codes.push(CodeParams::symbolic(n, k, q).map_err(|e| e.to_string())?);
            }
        }
    }
    for p in &codes {
        let marginal = weight_distribution(p, WdMethod::Marginal);
        for method in [WdMethod::MdsFormula, WdMethod::AlternatingSum] {
            ensure(weight_distribution(p, method) == marginal, || {
                format!("{p}: {method:?} differs from the IRWE marginal")
            })?;
        }
    }
    for name in ["T1", "T2", "T3", "T4"] {
        let code = code(name)?;
        let census = census_irwe(&code).map_err(|e| e.to_string())?.weight_distribution();
        ensure(census == weight_distribution(&code.params, WdMethod::Marginal), || {
            format!("{name}: census weight distribution differs")
        })?;
    }
    Ok(format!("{} codes three-way, T1-T4 census", codes.len()))
}

fn spheres() -> SuiteOutcome {
    for name in ["T1", "T2", "T3", "T4"] {
        let p = code(name)?.params;
        let volume = ball_volume(&p);
        for c1 in 0..=p.k {
            for c2 in 0..=p.r() {
                let c = SplitWeight::new(c1, c2);
                let mut total = BigInt::from(0);
                for r1 in 0..=p.k {
                    for r2 in 0..=p.r() {
                        let r = SplitWeight::new(r1, r2);
                        let (u, v) = (sphere_count(&p, c, r), sphere_count_cases(&p, c, r));
                        ensure(u == v, || format!("{name} c={c:?} r={r:?}: unified {u} != cases {v}"))?;
                        total += u;
                    }
                }
                ensure(total == volume, || format!("{name} c={c:?}: sphere sum {total} != ball volume {volume}"))?;
            }
        }
    }
    let mut checked = 0;
    for name in ["T2", "T3", "T4"] {
        let code = code(name)?;
        let p = code.params;
        for c in code.codewords().map_err(|e| e.to_string())? {
            let cw = split_weight(&code, c);
            let grid = census_ball(&code, c);
            for r1 in 0..=p.k {
                for r2 in 0..=p.r() {
                    let s = decoder_change_stats(&p, cw, SplitWeight::new(r1, r2));
                    let (n, ch) = grid[r1][r2];
                    ensure(s.count == BigInt::from(n) && s.change_total == BigInt::from(ch), || {
                        format!(
                            "{name} codeword {c:?}, r=({r1},{r2}): formula ({}, {}) != census ({n}, {ch})",
                            s.count, s.change_total
                        )
                    })?;
                }
            }
            checked += 1;
        }
    }
    Ok(format!("T1-T4 full grids, {checked} codeword balls"))
}

fn event_census() -> SuiteOutcome {
    let probes = [(1, 20), (1, 3), (3, 4)].map(|(a, b)| BigRational::new(a.into(), b.into()));
    for name in ["T1", "T2", "T3"] {
        let code = code(name)?;
        let census = EventCensus::build(&code).map_err(|e| e.to_string())?;
        let model = RateModel::build(&RateTables::new(code.params), Mode::Corrected).map_err(|e| e.to_string())?;
        for p in &probes {
            let point = derive_channel(p.clone(), &code.params).map_err(|e| e.to_string())?;
            let analytic = model.budget(&point);
            let counted = census.rates(&point).map_err(|e| e.to_string())?;
            ensure(analytic == counted, || format!("{name} at p={p}: analytic {analytic:?} != census {counted:?}"))?;
            ensure(num_traits::Zero::is_zero(&analytic.residual), || {
                format!("{name} at p={p}: residual {}", analytic.residual)
            })?;
        }
    }
    Ok("T1-T3 exact at word, symbol and bit level".into())
}

fn monte_carlo_check() -> SuiteOutcome {
    let code = code("T4")?;
    let p = 0.02;
    let report = monte_carlo(&code, p, MC_TRIALS, MC_SEED, MC_WORKERS).map_err(|e| e.to_string())?;
    let model = RateModel::build(&RateTables::new(code.params), Mode::Corrected).map_err(|e| e.to_string())?;
    let analytic = model.budget(&derive_channel(p, &code.params).map_err(|e| e.to_string())?);
    let mut worst: f64 = 0.0;
    for (q, &want) in analytic.word_rates() {
        let se = report.standard_error_at(want);
        let got = report.rate(q);
        let z = if se > 0.0 { (got - want).abs() / se } else if got == want { 0.0 } else { f64::INFINITY };
        ensure(z <= MC_SIGMAS, || format!("{q}: empirical {got} vs analytic {want}, {z:.2} standard errors"))?;
        worst = worst.max(z);
    }
    Ok(format!("{MC_TRIALS} trials, largest deviation {worst:.2} standard errors"))
}
