use std::fmt::{self, Write as _};
use std::io::Write;
use std::path::{Path, PathBuf};

use prime_cycles::asymptotics::{
    self, lemma1_residual, lemma2_residual, log_inv_one_minus, required_prime_limit, Constants,
    LEMMA_Z_MAX, LEMMA_Z_MIN, PUBLISHED_C, PUBLISHED_E_C,
};
use prime_cycles::counting::{
    self, big_ratio_f64, brute_force_count, cache, count_by_cycle_types, factorial, inequality_scan,
    tauberian_coefficients, AdmissibleSet, CountTable, InequalityVariant, PartialSums, BRUTE_FORCE_MAX_N,
    CYCLE_TYPE_MAX_N, DEFAULT_MAX_N,
};
use prime_cycles::primes::{PrimeTable, DEFAULT_LIMIT, MAX_LIMIT};
use prime_cycles::sampling::{
    coincidence_estimate_with_workers, estimate_prime_fraction_with_workers, exact_sampler_chi_square,
};
use prime_cycles::{io::write_atomic, Error};
use serde::Serialize;
use serde_json::json;

use crate::args::{Check, Cli, Command, Format, TextFormat};
use crate::{EXIT_FAILED, EXIT_USAGE};

#[derive(Debug)]
pub enum CliError {
    Core(Error),
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(Error::Io(_) | Error::Cache(_)) => EXIT_FAILED,
            _ => EXIT_USAGE,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => e.fmt(f),
            CliError::Usage(s) => f.write_str(s),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

type Result<T> = std::result::Result<T, CliError>;

struct Ctx<'a> {
    cache_dir: Option<PathBuf>,
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

impl Ctx<'_> {
    /// Writes a report to `path` atomically, or to stdout.
    fn emit(&mut self, path: Option<&Path>, text: &str) -> Result<()> {
        match path {
            Some(p) => {
                write_atomic(p, text.as_bytes())?;
                let _ = writeln!(self.err, "wrote {}", p.display());
            }
            None => self.out.write_all(text.as_bytes()).map_err(Error::from)?,
        }
        Ok(())
    }

    fn warn(&mut self, msg: impl fmt::Display) {
        let _ = writeln!(self.err, "warning: {msg}");
    }

    /// Counts for `set` up to `n`, read from and written back to the cache when one is configured.
    fn table(&mut self, set: &AdmissibleSet, n: usize, explicit: Option<&Path>) -> Result<CountTable> {
        let path = explicit
            .map(Path::to_path_buf)
            .or_else(|| self.cache_dir.as_ref().map(|d| d.join(cache_file_name(set))));
        let Some(path) = path else {
            return Ok(CountTable::build(set, n)?);
        };
        let loaded = match cache::load_cache(&path, set) {
            Ok(t) => t,
            Err(e) => {
                self.warn(format_args!("ignoring cache {}: {e}", path.display()));
                None
            }
        };
        match loaded {
            Some(t) if t.max_n() >= n => Ok(t),
            Some(mut t) => {
                t.extend_to(n, DEFAULT_MAX_N)?;
                cache::save_cache(&t, &path)?;
                Ok(t)
            }
            None => {
                let t = CountTable::build(set, n)?;
                cache::save_cache(&t, &path)?;
                Ok(t)
            }
        }
    }
}

fn cache_file_name(set: &AdmissibleSet) -> String {
    format!("counts-{}.jsonl", set.id().replace(',', "_"))
}

pub fn dispatch(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let mut ctx = Ctx {
        cache_dir: cli.cache_dir,
        out,
        err,
    };
    match cli.command {
        Command::Sieve { limit, out } => sieve(&mut ctx, limit, out.as_deref()),
        Command::Count { set, n, cache } => {
            let t = ctx.table(&set, n, cache.as_deref())?;
            let line = format!("{}\n", t.get(n)?);
            ctx.emit(None, &line)?;
            Ok(0)
        }
        Command::RatioTable { set, n_max, digits, output } => {
            let primes = ctx.table(&set, n_max, None)?;
            let primes1 = ctx.table(&set.with_one(), n_max + 1, None)?;
            let e_c = constants(DEFAULT_LIMIT)?.e_c;
            let rows = asymptotics::limit_ratios(&primes, &primes1, n_max, digits, e_c)?;
            let text = match output.format {
                Format::Csv => asymptotics::ratios_csv(&rows),
                Format::Json => asymptotics::ratios_json(&rows) + "\n",
            };
            ctx.emit(output.out.as_deref(), &text)?;
            Ok(0)
        }
        Command::Constants { prime_limit, format } => {
            let k = constants(prime_limit)?;
            let text = match format {
                TextFormat::Json => json_line(&json!({
                    "constants": k,
                    "published": { "c": PUBLISHED_C, "e_c": PUBLISHED_E_C },
                })),
                TextFormat::Text => format!(
                    "gamma = 0.57721566490153286061  ({})\n\
                     c = {:.12}  ({})\n\
                     e^c = {:.12}  ({})\n\
                     e^(c+1) = {:.12}  ({})\n\
                     published: c = {PUBLISHED_C}, e^c = {PUBLISHED_E_C}; |c - published| = {:.3e}\n",
                    k.provenance.gamma,
                    k.c,
                    k.provenance.c,
                    k.e_c,
                    k.provenance.e_c,
                    k.e_c1,
                    k.provenance.e_c1,
                    (k.c - PUBLISHED_C).abs(),
                ),
            };
            ctx.emit(None, &text)?;
            Ok(0)
        }
        Command::Probe { lemma, grid, tol, output } => probe(&mut ctx, lemma, &grid, tol, output.format, output.out.as_deref()),
        Command::Yakymiv { set, n, output } => yakymiv(&mut ctx, &set, &n, output.format, output.out.as_deref()),
        Command::PartialSums { set, n_max, digits, output } => {
            partial_sums(&mut ctx, &set, n_max, digits, output.format, output.out.as_deref())
        }
        Command::Sample {
            n,
            trials,
            seed,
            exact,
            coincidence,
            set,
            workers,
            output,
        } => {
            let workers = workers.map(|w| w as usize);
            let text = if exact {
                sample_exact(&mut ctx, &set, &n, trials, seed, output.format)?
            } else if coincidence {
                sample_coincidence(&mut ctx, &n, trials, seed, workers, output.format)?
            } else {
                sample_uniform(&mut ctx, &n, trials, seed, workers, output.format)?
            };
            ctx.emit(output.out.as_deref(), &text)?;
            Ok(0)
        }
        Command::Verify {
            check,
            n_max,
            trials,
            seed,
            out,
        } => verify(&mut ctx, check, n_max as usize, trials, seed, out.as_deref()),
    }
}

fn constants(limit: u64) -> Result<Constants> {
    Ok(Constants::from_table(&PrimeTable::build(limit)?)?)
}

fn json_line<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable report") + "\n"
}

fn sieve(ctx: &mut Ctx<'_>, limit: u64, out: Option<&Path>) -> Result<i32> {
    let table = PrimeTable::build(limit)?;
    if let Some(path) = out {
        table.save(path)?;
    }
    let largest = table.primes().last().map_or("none".to_string(), u64::to_string);
    let line = format!("limit={} count={} largest={largest}\n", table.limit(), table.count());
    ctx.emit(None, &line)?;
    Ok(0)
}

#[derive(Serialize)]
struct ProbeRow {
    lemma: u8,
    k: u32,
    z: f64,
    residual: f64,
    /// Quantity compared against the bound.
    scaled: f64,
    bound: f64,
    ok: bool,
}

fn probe(ctx: &mut Ctx<'_>, lemma: u8, grid: &[u32], tol: f64, format: Format, out: Option<&Path>) -> Result<i32> {
    let zs: Vec<(u32, f64)> = grid.iter().map(|&k| (k, 1.0 - 10f64.powi(-(k as i32)))).collect();
    for &(k, z) in &zs {
        if !(LEMMA_Z_MIN - 1e-12..=LEMMA_Z_MAX + 1e-12).contains(&z) {
            return Err(CliError::Usage(format!(
                "grid point k = {k} gives z = {z}, outside the supported range [{LEMMA_Z_MIN}, {LEMMA_Z_MAX}]"
            )));
        }
    }
    let mut limit = DEFAULT_LIMIT;
    for &(_, z) in &zs {
        limit = limit.max(required_prime_limit(z, tol)?);
    }
    let table = PrimeTable::build_with_budget(limit, MAX_LIMIT)?;
    let mut rows = Vec::with_capacity(zs.len());
    for (k, z) in zs {
        let (residual, scaled, bound) = if lemma == 1 {
            let r = lemma1_residual(z, &table, tol)?;
            (r, r.abs() * log_inv_one_minus(z), 3.0)
        } else {
            let r = lemma2_residual(z, &table, tol)?;
            (r, r.abs(), 2.0)
        };
        rows.push(ProbeRow {
            lemma,
            k,
            z,
            residual,
            scaled,
            bound,
            ok: scaled <= bound,
        });
    }
    let text = match format {
        Format::Json => json_line(&rows),
        Format::Csv => {
            let mut s = String::from("lemma,k,z,residual,scaled,bound,status\n");
            for r in &rows {
                let status = if r.ok { "ok" } else { "VIOLATED" };
                writeln!(s, "{},{},{},{:.10e},{:.10},{},{status}", r.lemma, r.k, r.z, r.residual, r.scaled, r.bound).unwrap();
            }
            s
        }
    };
    ctx.emit(out, &text)?;
    Ok(if rows.iter().all(|r| r.ok) { 0 } else { EXIT_FAILED })
}

#[derive(Serialize)]
struct YakymivRow {
    n: u64,
    estimate: f64,
    exact: f64,
    relative_error: f64,
}

fn yakymiv(ctx: &mut Ctx<'_>, set: &AdmissibleSet, ns: &[u64], format: Format, out: Option<&Path>) -> Result<i32> {
    let max_n = *ns.iter().max().expect("at least one n") as usize;
    // Reject zero-density sets before building a table.
    asymptotics::yakymiv_ratio(set, 1)?;
    let table = ctx.table(set, max_n, None)?;
    let mut rows = Vec::with_capacity(ns.len());
    for &n in ns {
        let k = n as usize;
        rows.push(YakymivRow {
            n,
            estimate: asymptotics::yakymiv_ratio(set, k)?,
            exact: big_ratio_f64(table.get(k)?, &factorial(k)),
            relative_error: asymptotics::yakymiv_relative_error(&table, k)?,
        });
    }
    let text = match format {
        Format::Json => json_line(&rows),
        Format::Csv => {
            let mut s = String::from("n,estimate,exact,relative_error\n");
            for r in &rows {
                writeln!(s, "{},{:.12},{:.12},{:.6e}", r.n, r.estimate, r.exact, r.relative_error).unwrap();
            }
            s
        }
    };
    ctx.emit(out, &text)?;
    Ok(0)
}

#[derive(Serialize)]
struct PartialSumRow {
    n: usize,
    partial_sum: String,
    ec_log_n: Option<f64>,
    deviation: Option<f64>,
}

fn partial_sums(
    ctx: &mut Ctx<'_>,
    set: &AdmissibleSet,
    n_max: usize,
    digits: u32,
    format: Format,
    out: Option<&Path>,
) -> Result<i32> {
    let table = ctx.table(set, n_max, None)?;
    let e_c = if n_max >= 1 { constants(DEFAULT_LIMIT)?.e_c } else { PUBLISHED_E_C };
    let mut sums = PartialSums::new(&table);
    let mut rows = Vec::with_capacity(n_max + 1);
    let mut worst: Option<(f64, usize)> = None;
    loop {
        let n = sums.n();
        let reference = (n >= 1).then(|| e_c * (n as f64).ln());
        let deviation = reference.map(|r| sums.to_f64() - r);
        if let Some(d) = deviation.filter(|_| n >= 10) {
            if worst.is_none_or(|(w, _)| d.abs() > w) {
                worst = Some((d.abs(), n));
            }
        }
        rows.push(PartialSumRow {
            n,
            partial_sum: sums.to_fixed(digits).to_string(),
            ec_log_n: reference,
            deviation,
        });
        if n == n_max || !sums.advance() {
            break;
        }
    }
    let text = match format {
        Format::Json => json_line(&rows),
        Format::Csv => {
            let mut s = String::from("n,partial_sum,ec_log_n,deviation\n");
            let opt = |x: Option<f64>| x.map_or(String::new(), |v| format!("{v:.10}"));
            for r in &rows {
                writeln!(s, "{},{},{},{}", r.n, r.partial_sum, opt(r.ec_log_n), opt(r.deviation)).unwrap();
            }
            s
        }
    };
    ctx.emit(out, &text)?;
    if let Some((w, n)) = worst {
        let _ = writeln!(ctx.err, "max |S_n - e^c log n| over 10 <= n <= {n_max}: {w:.6} at n = {n}");
    }
    Ok(0)
}

#[derive(Serialize)]
struct UniformRow {
    n: usize,
    trials: u64,
    seed: u64,
    successes: u64,
    estimate: f64,
    std_error: f64,
    /// `P_n/n!`
    exact: f64,
    z_score: f64,
    /// `e^c/n` with the published `e^c`
    reference_ec_over_n: Option<f64>,
}

fn sample_uniform(
    ctx: &mut Ctx<'_>,
    ns: &[usize],
    trials: u64,
    seed: u64,
    workers: Option<usize>,
    format: Format,
) -> Result<String> {
    let max_n = *ns.iter().max().expect("at least one n");
    let table = ctx.table(&AdmissibleSet::Primes, max_n, None)?;
    let mut rows = Vec::with_capacity(ns.len());
    for &n in ns {
        let s = estimate_prime_fraction_with_workers(n, trials, seed, workers)?;
        let exact = big_ratio_f64(table.get(n)?, &factorial(n));
        rows.push(UniformRow {
            n,
            trials,
            seed,
            successes: s.successes,
            estimate: s.estimate,
            std_error: s.std_error,
            exact,
            z_score: s.z_score(exact),
            reference_ec_over_n: (n >= 1).then(|| PUBLISHED_E_C / n as f64),
        });
    }
    Ok(match format {
        Format::Json => json_line(&json!({ "mode": "uniform", "rows": rows })),
        Format::Csv => {
            let mut s = String::from("n,trials,seed,successes,estimate,std_error,exact,z_score,reference_ec_over_n\n");
            for r in &rows {
                let reference = r.reference_ec_over_n.map_or(String::new(), |v| format!("{v:.10}"));
                writeln!(
                    s,
                    "{},{},{},{},{:.10},{:.10},{:.10},{:.4},{reference}",
                    r.n, r.trials, r.seed, r.successes, r.estimate, r.std_error, r.exact, r.z_score
                )
                .unwrap();
            }
            s
        }
    })
}

fn sample_coincidence(
    ctx: &mut Ctx<'_>,
    ns: &[usize],
    trials: u64,
    seed: u64,
    workers: Option<usize>,
    format: Format,
) -> Result<String> {
    let max_n = *ns.iter().max().expect("at least one n");
    let table = ctx.table(&AdmissibleSet::Primes, max_n, None)?;
    let mut rows = Vec::with_capacity(ns.len());
    for &n in ns {
        let s = coincidence_estimate_with_workers(n, trials, seed, workers)?;
        rows.push((n, s, big_ratio_f64(table.get(n)?, &factorial(n))));
    }
    Ok(match format {
        Format::Json => {
            let items: Vec<_> = rows
                .iter()
                .map(|(n, s, exact)| json!({ "n": n, "summary": s, "exact_all_prime": exact }))
                .collect();
            json_line(&json!({ "mode": "coincidence", "rows": items }))
        }
        Format::Csv => {
            let mut s = String::from(
                "n,trials,seed,order_equals_product,all_prime,agreements,difference,difference_std_error,exact_all_prime\n",
            );
            for (n, c, exact) in &rows {
                writeln!(
                    s,
                    "{n},{trials},{seed},{:.10},{:.10},{},{:.10},{:.10},{exact:.10}",
                    c.order_equals_product.estimate,
                    c.all_prime.estimate,
                    c.agreements,
                    c.difference,
                    c.difference_std_error
                )
                .unwrap();
            }
            s
        }
    })
}

fn sample_exact(
    ctx: &mut Ctx<'_>,
    set: &AdmissibleSet,
    ns: &[usize],
    samples: u64,
    seed: u64,
    format: Format,
) -> Result<String> {
    let max_n = *ns.iter().max().expect("at least one n");
    if max_n > CYCLE_TYPE_MAX_N {
        return Err(CliError::Usage(format!(
            "--exact compares cycle-type frequencies and supports n <= {CYCLE_TYPE_MAX_N}"
        )));
    }
    let table = ctx.table(set, max_n, None)?;
    let mut reports = Vec::with_capacity(ns.len());
    for &n in ns {
        reports.push(exact_sampler_chi_square(&table, n, samples, seed)?);
    }
    Ok(match format {
        Format::Json => json_line(&json!({ "mode": "exact", "set": set.id(), "rows": reports })),
        Format::Csv => {
            let mut s = String::from("n,samples,seed,cells,statistic,dof,p_value,all_admissible\n");
            for r in &reports {
                writeln!(
                    s,
                    "{},{},{},{},{:.6},{},{:.6},{}",
                    r.n,
                    r.samples,
                    r.seed,
                    r.cells.len(),
                    r.statistic,
                    r.dof,
                    r.p_value,
                    r.all_admissible
                )
                .unwrap();
            }
            s
        }
    })
}

struct CheckResult {
    name: &'static str,
    passed: bool,
    detail: String,
}

fn verify(ctx: &mut Ctx<'_>, check: Check, n_max: usize, trials: u64, seed: u64, out: Option<&Path>) -> Result<i32> {
    let checks: &[Check] = match check {
        Check::All => &[Check::Oracles, Check::Inequality, Check::Tauberian, Check::Sampler],
        Check::Oracles => &[Check::Oracles],
        Check::Inequality => &[Check::Inequality],
        Check::Tauberian => &[Check::Tauberian],
        Check::Sampler => &[Check::Sampler],
    };
    let mut results = Vec::new();
    for &c in checks {
        results.push(match c {
            Check::Oracles => verify_oracles(ctx, n_max)?,
            Check::Inequality => verify_inequality(ctx, n_max)?,
            Check::Tauberian => verify_tauberian(ctx, n_max)?,
            Check::Sampler => verify_sampler(ctx, trials, seed)?,
            Check::All => unreachable!(),
        });
    }
    let mut text = format!("{:<12} {:<6} detail\n", "check", "status");
    for r in &results {
        let status = if r.passed { "PASS" } else { "FAIL" };
        writeln!(text, "{:<12} {status:<6} {}", r.name, r.detail).unwrap();
    }
    ctx.emit(out, &text)?;
    Ok(if results.iter().all(|r| r.passed) { 0 } else { EXIT_FAILED })
}

fn verify_oracles(ctx: &mut Ctx<'_>, n_max: usize) -> Result<CheckResult> {
    let dp_max = n_max.min(CYCLE_TYPE_MAX_N);
    let brute_max = n_max.min(BRUTE_FORCE_MAX_N - 1);
    let mut mismatches = Vec::new();
    for set in [AdmissibleSet::Primes, AdmissibleSet::PrimesWithOne, AdmissibleSet::Odd, AdmissibleSet::All] {
        let table = ctx.table(&set, dp_max, None)?;
        for n in 0..=dp_max {
            let p = &table.counts()[n];
            let dp_ok = &count_by_cycle_types(&set, n)? == p;
            let brute_ok = n > brute_max || &brute_force_count(&set, n)? == p;
            if !(dp_ok && brute_ok) {
                mismatches.push(format!("{set} n={n}"));
            }
        }
    }
    let detail = if mismatches.is_empty() {
        format!("recurrence = cycle-type sum for n <= {dp_max}, = brute force for n <= {brute_max}, 4 sets")
    } else {
        format!("mismatches: {}", mismatches.join("; "))
    };
    Ok(CheckResult {
        name: "oracles",
        passed: mismatches.is_empty(),
        detail,
    })
}

fn verify_inequality(ctx: &mut Ctx<'_>, n_max: usize) -> Result<CheckResult> {
    let primes1 = ctx.table(&AdmissibleSet::PrimesWithOne, n_max + 1, None)?;
    let primes = ctx.table(&AdmissibleSet::Primes, n_max, None)?;
    let v1 = inequality_scan(&primes1, &primes, n_max, InequalityVariant::Primes1)?;
    let v2 = inequality_scan(&primes1, &primes, n_max, InequalityVariant::PrimesRest)?;
    let mut detail = match v1.first() {
        Some(&n) => format!(
            "P_(n+1,1) >= n*P_(n,1) fails at {} n (first n={n}: {} < {}*{})",
            v1.len(),
            primes1.counts()[n + 1],
            n,
            primes1.counts()[n]
        ),
        None => format!("P_(n+1,1) >= n*P_(n,1) holds for all n <= {n_max}"),
    };
    match v2.first() {
        Some(&n) => write!(detail, "; P_(n+1,1) >= n*P_n fails at {} n (first n={n})", v2.len()).unwrap(),
        None => write!(detail, "; P_(n+1,1) >= n*P_n holds for all n <= {n_max}").unwrap(),
    }
    Ok(CheckResult {
        name: "inequality",
        passed: v1.first() == Some(&5) && v2.is_empty(),
        detail,
    })
}

fn verify_tauberian(ctx: &mut Ctx<'_>, n_max: usize) -> Result<CheckResult> {
    let primes1 = ctx.table(&AdmissibleSet::PrimesWithOne, n_max + 1, None)?;
    let r = tauberian_coefficients(&primes1, n_max)?;
    let min = counting::rational_f64(&r.min_margin);
    let h5_ok = n_max < 5 || r.h(5).to_string() == "-1/4";
    let negative = r.coefficients.iter().filter(|h| counting::rational_f64(h) < 0.0).count();
    Ok(CheckResult {
        name: "tauberian",
        passed: h5_ok,
        detail: format!(
            "h_n computed for n <= {n_max}; {negative} negative; min n*h_n = {min:.10} at n = {}{}",
            r.argmin,
            if n_max >= 5 { format!("; h_5 = {}", r.h(5)) } else { String::new() }
        ),
    })
}

fn verify_sampler(ctx: &mut Ctx<'_>, samples: u64, seed: u64) -> Result<CheckResult> {
    const N: usize = 6;
    let table = ctx.table(&AdmissibleSet::Primes, N, None)?;
    let r = exact_sampler_chi_square(&table, N, samples, seed)?;
    Ok(CheckResult {
        name: "sampler",
        passed: r.p_value > 1e-3 && r.all_admissible,
        detail: format!(
            "exact sampler n={N}, {samples} samples: chi2 = {:.4}, dof = {}, p = {:.4}, all admissible = {}",
            r.statistic, r.dof, r.p_value, r.all_admissible
        ),
    })
}
