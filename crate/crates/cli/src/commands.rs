use std::fs;
use std::path::Path;

use serde_json::json;
use undirectify::exact::{phi_pushforward, tv_distance, witness_events, GraphDistribution};
use undirectify::graph::{DigraphJson, GraphJson};
use undirectify::models::{exact_model_distribution_seeded, sample, ModelSpec, Sample};
use undirectify::montecarlo::{mean_se, run_replicates, run_suite, ExperimentConfig, IndependentRun, SelectionRun, SuiteReport, VerdictReport};
use undirectify::rng::DEFAULT_SEED;
use undirectify::Error;

use crate::output::{emit, emit_series};
use crate::{Cli, Command, Format, Global, Pair, EXIT_CHECK_FAILED, EXIT_OK};

type CmdResult = Result<u8, String>;

fn read(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))
}

fn input_error(path: &Path, e: Error) -> String {
    match e {
        Error::Json(j) => format!("malformed JSON in {}: {j}", path.display()),
        e => format!("{}: {e}", path.display()),
    }
}

fn load_spec(path: &Path) -> Result<ModelSpec, String> {
    let spec = ModelSpec::from_json(&read(path)?).map_err(|e| input_error(path, e))?;
    spec.validate().map_err(|e| input_error(path, e))?;
    Ok(spec)
}

fn load_distribution(path: &Path) -> Result<GraphDistribution, String> {
    GraphDistribution::from_json(&read(path)?).map_err(|e| input_error(path, e))
}

fn write(path: Option<&Path>, bytes: &[u8]) -> Result<(), String> {
    emit(path, bytes).map_err(|e| match path {
        Some(p) => format!("cannot write {}: {e}", p.display()),
        None => format!("cannot write to stdout: {e}"),
    })
}

/// `--seed`, else the seed stored in the input, else the default.
fn seed(g: &Global, stored: Option<u64>) -> u64 {
    g.seed.or(stored).unwrap_or(DEFAULT_SEED)
}

fn info(g: &Global, msg: impl FnOnce() -> String) {
    if g.verbose > 0 {
        eprintln!("{}", msg());
    }
}

fn json_only(g: &Global, what: &str) -> Result<(), String> {
    if g.format == Format::Csv {
        return Err(format!("{what} only writes JSON; --format csv applies to couple and verify"));
    }
    Ok(())
}

pub fn dispatch(cli: &Cli) -> CmdResult {
    let g = &cli.global;
    match &cli.command {
        Command::Generate { spec, count, out } => generate(g, spec, *count, out.as_deref()),
        Command::Phi { spec, out } => phi(g, spec, out.as_deref()),
        Command::Tv { a, b } => tv(g, a, b),
        Command::Couple {
            pair,
            spec,
            replicates,
            keep,
            out,
        } => couple(g, *pair, spec, *replicates, *keep, out.as_deref()),
        Command::Verify { suite, config, out } => verify(g, *suite, config.as_deref(), out.as_deref()),
    }
}

fn generate(g: &Global, path: &Path, count: usize, out: Option<&Path>) -> CmdResult {
    json_only(g, "generate")?;
    let spec = load_spec(path)?;
    if g.validate_only {
        return Ok(EXIT_OK);
    }
    let s = seed(g, spec.seed);
    info(g, || format!("sampling {count} from {} with seed {s:#x}", spec.instance.name()));
    let lines = run_replicates(s, count, |_, k| -> Result<String, Error> {
        Ok(match sample(&spec, k)? {
            Sample::Graph(x) => serde_json::to_string(&GraphJson::from_graph(&x))?,
            Sample::Digraph(x) => serde_json::to_string(&DigraphJson::from_digraph(&x))?,
        })
    });
    let mut buf = String::new();
    for l in lines {
        buf.push_str(&l.map_err(|e| input_error(path, e))?);
        buf.push('\n');
    }
    write(out, buf.as_bytes())?;
    Ok(EXIT_OK)
}

fn phi(g: &Global, path: &Path, out: Option<&Path>) -> CmdResult {
    json_only(g, "phi")?;
    let spec = load_spec(path)?;
    if g.validate_only {
        return Ok(EXIT_OK);
    }
    let s = seed(g, spec.seed);
    let law = exact_model_distribution_seeded(&spec, s).map_err(|e| input_error(path, e))?;
    let law = if spec.class.is_directed() {
        phi_pushforward(&law).map_err(|e| e.to_string())?
    } else {
        info(g, || "undirected spec: writing its exact law unchanged".into());
        law
    };
    let mut text = law.to_json();
    text.push('\n');
    write(out, text.as_bytes())?;
    Ok(EXIT_OK)
}

fn tv(g: &Global, a: &Path, b: &Path) -> CmdResult {
    json_only(g, "tv")?;
    let (da, db) = (load_distribution(a)?, load_distribution(b)?);
    da.same_space(&db).map_err(|e| e.to_string())?;
    if g.validate_only {
        return Ok(EXIT_OK);
    }
    let d = tv_distance(&da, &db).map_err(|e| e.to_string())?;
    if g.verbose > 0 {
        let w = witness_events(&da, &db).map_err(|e| e.to_string())?;
        eprintln!("witness event: {} structures, gap {}", w.plus.len(), w.gap);
    }
    println!("{d}");
    Ok(EXIT_OK)
}

fn couple(g: &Global, pair: Pair, path: &Path, replicates: usize, keep: usize, out: Option<&Path>) -> CmdResult {
    let spec = load_spec(path)?;
    if replicates == 0 {
        return Err("--replicates must be at least 1".into());
    }
    let s = seed(g, spec.seed);
    let name = match pair {
        Pair::IagIegExact => "iag-ieg-exact",
        Pair::IagIegApprox => "iag-ieg-approx",
        Pair::AsrgEsrg => "asrg-esrg",
    };
    let fail = |e: Error| input_error(path, e);
    let (samples, verdicts, excluded, mu_up) = match pair {
        Pair::IagIegExact | Pair::IagIegApprox => {
            if g.validate_only {
                IndependentRun::approx(&spec, 1, s).map(|_| ()).or_else(|e| match (pair, e) {
                    (Pair::IagIegExact, Error::SummedProbabilityTooLarge { .. }) => Ok(()),
                    (_, e) => Err(e),
                }).map_err(fail)?;
                return Ok(EXIT_OK);
            }
            let (run, verdicts) = if pair == Pair::IagIegExact {
                let run = IndependentRun::exact(&spec, replicates, s).map_err(fail)?;
                let v = run.exact_verdicts();
                (run, v)
            } else {
                let run = IndependentRun::approx(&spec, replicates, s).map_err(fail)?;
                let v = run.approx_verdicts();
                (run, v)
            };
            (run.samples, verdicts, 0, None)
        }
        Pair::AsrgEsrg => {
            if g.validate_only {
                SelectionRun::new(&spec, None, 1, s).map_err(fail)?;
                return Ok(EXIT_OK);
            }
            let run = SelectionRun::new(&spec, None, replicates, s).map_err(fail)?;
            let mut v = vec![run.increment_invariants()];
            if (run.m as f64) < 1.0 / run.mu_up {
                v.extend(run.increment_cells(500).map_err(fail)?);
                v.push(run.psi_tail(1.0).map_err(fail)?);
                match run.drift() {
                    Ok(d) => v.extend(d),
                    Err(e) => info(g, || format!("drift check skipped: {e}")),
                }
            } else {
                info(g, || format!("m={} ≥ 1/μ↑; bound checks skipped", run.m));
            }
            (run.samples, v, run.excluded, Some(run.mu_up))
        }
    };
    let xi = mean_se(samples.iter().map(|c| c.xi() as f64));
    let rules = samples.iter().fold([0usize; 3], |mut acc, c| {
        acc[0] += c.rule_counts.i;
        acc[1] += c.rule_counts.ii;
        acc[2] += c.rule_counts.iii;
        acc
    });
    let report = SuiteReport::new(format!("couple/{name}"), verdicts);
    let bytes = match g.format {
        Format::Csv => emit_series(std::slice::from_ref(&report)).map_err(|e| e.to_string())?,
        Format::Json => {
            let doc = json!({
                "pair": name,
                "spec": spec,
                "n": spec.n,
                "replicates": replicates,
                "seed": s,
                "xi": samples.iter().take(keep).map(|c| c.xi()).collect::<Vec<_>>(),
                "aggregates": {
                    "mean_xi": xi.mean,
                    "se_xi": xi.se,
                    "max_xi": samples.iter().map(|c| c.xi()).max().unwrap_or(0),
                    "total_xi1": samples.iter().map(|c| c.xi1).sum::<usize>(),
                    "total_xi2": samples.iter().map(|c| c.xi2).sum::<usize>(),
                    "excluded": excluded,
                    "mu_up": mu_up,
                    "rule_counts": { "I": rules[0], "II": rules[1], "III": rules[2] },
                },
                "verdicts": report.checks,
                "pass": report.pass,
            });
            let mut t = serde_json::to_string_pretty(&doc).map_err(|e| e.to_string())?;
            t.push('\n');
            t.into_bytes()
        }
    };
    write(out, &bytes)?;
    if !g.quiet {
        eprint!("{}", report.summary());
    }
    Ok(if report.pass { EXIT_OK } else { EXIT_CHECK_FAILED })
}

fn verify(g: &Global, suite: undirectify::montecarlo::Suite, config: Option<&Path>, out: Option<&Path>) -> CmdResult {
    let mut cfg = match config {
        Some(p) => ExperimentConfig::from_json(&read(p)?).map_err(|e| input_error(p, e))?,
        None => ExperimentConfig::default(),
    };
    if let Some(s) = g.seed {
        cfg.base_seed = Some(s);
    }
    let at = config.map_or_else(|| "default config".to_string(), |p| p.display().to_string());
    cfg.validate(suite).map_err(|e| format!("{at}: {e}"))?;
    if g.validate_only {
        return Ok(EXIT_OK);
    }
    info(g, || format!("running {suite} with seed {:#x}", cfg.seed()));
    let report = run_suite(suite, &cfg).map_err(|e| format!("{at}: {e}"))?;
    let bytes = match g.format {
        Format::Csv => emit_series(std::slice::from_ref(&report)).map_err(|e| e.to_string())?,
        Format::Json => {
            let mut t = serde_json::to_string_pretty(&json!({
                "suite": report.suite,
                "base_seed": cfg.seed(),
                "config": cfg,
                "pass": report.pass,
                "checks": report.checks,
            }))
            .map_err(|e| e.to_string())?;
            t.push('\n');
            t.into_bytes()
        }
    };
    write(out, &bytes)?;
    if !g.quiet {
        if g.verbose > 0 {
            eprint!("{}", report.summary());
        } else {
            let failed: Vec<&VerdictReport> = report.checks.iter().filter(|c| c.failed()).collect();
            eprintln!(
                "suite {}: {} ({} checks, {} failed)",
                report.suite,
                if report.pass { "PASS" } else { "FAIL" },
                report.checks.len(),
                failed.len()
            );
            for f in failed {
                eprintln!("  {}", f.summary());
            }
        }
    }
    Ok(if report.pass { EXIT_OK } else { EXIT_CHECK_FAILED })
}
