use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use rcobs::dynamics::{estimate_period, generate_task_signals};
use rcobs::signal::{cutoff_frequency, power_spectrum, Spectrum, DEFAULT_CUTOFF_FRACTION};
use rcobs::sweeps::{fmt_sig9, grid_sweep, observer_signals, realization_network, realization_task};
use rcobs::{GridResult, SystemId, TimeSeries};

use crate::config::{is_bool_key, parse_bool_literal, Config, KEYS};
use crate::error::{CliError, CliResult};
use crate::plot;
use crate::recipes::{GridJob, Plan, Recipe, SpectrumJob};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Generate,
    Spectrum,
    Sweep,
    DumpNetwork,
    Help,
}

impl Command {
    fn parse(s: &str) -> CliResult<Self> {
        Ok(match s {
            "generate" => Command::Generate,
            "spectrum" => Command::Spectrum,
            "sweep" => Command::Sweep,
            "dump-network" => Command::DumpNetwork,
            "help" => Command::Help,
            other => {
                return Err(CliError::Validation(format!(
                    "unknown command '{other}' (expected generate, spectrum, sweep or dump-network)"
                )))
            }
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Invocation {
    pub command: Command,
    pub config: Config,
}

/// Parses `command [--config PATH] [--key value]...`. Flags override the
/// config file wherever they appear.
pub fn parse_args(args: &[String]) -> CliResult<Invocation> {
    let mut command = None;
    let mut config_path = None;
    let mut flags: Vec<(String, String)> = Vec::new();
    let mut i = 0;
    while i < args.len() {
        let arg = &args[i];
        i += 1;
        if arg == "-h" || arg == "--help" {
            command = Some(Command::Help);
            continue;
        }
        let Some(flag) = arg.strip_prefix("--") else {
            if command.is_some() {
                return Err(CliError::Validation(format!("unexpected argument '{arg}'")));
            }
            command = Some(Command::parse(arg)?);
            continue;
        };
        let (key, inline) = match flag.split_once('=') {
            Some((k, v)) => (k.replace('-', "_"), Some(v.to_string())),
            None => (flag.replace('-', "_"), None),
        };
        let value = match inline {
            Some(v) => v,
            None if is_bool_key(&key) => match args.get(i).filter(|v| parse_bool_literal(v).is_some()) {
                Some(v) => {
                    i += 1;
                    v.clone()
                }
                None => "true".to_string(),
            },
            None => {
                let v = args
                    .get(i)
                    .ok_or_else(|| CliError::Validation(format!("--{flag} needs a value")))?;
                i += 1;
                v.clone()
            }
        };
        if key == "config" {
            config_path = Some(value);
        } else {
            flags.push((key, value));
        }
    }
    let mut config = match &config_path {
        Some(p) => {
            let text =
                fs::read_to_string(p).map_err(|e| CliError::Validation(format!("cannot read config '{p}': {e}")))?;
            Config::parse(&text, p)?
        }
        None => Config::default(),
    };
    for (k, v) in flags {
        config.set_flag(&k, &v)?;
    }
    let command = command.ok_or_else(|| CliError::Validation("missing command; try --help".into()))?;
    Ok(Invocation { command, config })
}

pub fn usage() -> String {
    let mut s = String::from(
        "usage: rcobs <command> [--config PATH] [--key value]...\n\n\
         commands:\n  \
         generate       write noise-free and noisy input/target series\n  \
         spectrum       write the input spectrum, print cutoff and period\n  \
         sweep          run a recipe (--recipe NAME) or explicit --axis1/--axis2 grid\n  \
         dump-network   write a realization's coupling edges and input weights\n\n\
         recipes:\n",
    );
    for r in Recipe::ALL {
        s.push_str(&format!("  {:<7}{}\n", r.name(), r.description()));
    }
    s.push_str("\nkeys (config file `key = value` or flag `--key value`):\n");
    for (k, d) in KEYS {
        s.push_str(&format!("  {k:<20}{d}\n"));
    }
    s.push_str("\nexit codes: 0 success, 1 invalid arguments or config, 2 runtime failure\n");
    s
}

/// Runs one invocation, writing the human-readable report to `report`.
pub fn run(args: &[String], report: &mut dyn Write) -> CliResult<()> {
    let inv = parse_args(args)?;
    if inv.command == Command::Help {
        report.write_all(usage().as_bytes())?;
        return Ok(());
    }
    let cfg = &inv.config;
    let jobs = cfg.int("jobs").map(|j| j as usize);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.unwrap_or(0))
        .build()
        .map_err(|e| CliError::Runtime(format!("worker pool: {e}")))?;
    let mut buf = Vec::new();
    let result = pool.install(|| {
        let out: &mut dyn Write = &mut buf;
        match inv.command {
            Command::Generate => generate(cfg, out),
            Command::Spectrum => spectrum(cfg, out),
            Command::Sweep => sweep(cfg, out),
            Command::DumpNetwork => dump_network(cfg, out),
            Command::Help => Ok(()),
        }
    });
    report.write_all(&buf)?;
    result
}

fn out_dir(cfg: &Config) -> CliResult<PathBuf> {
    let dir = PathBuf::from(cfg.text("out").unwrap_or("."));
    fs::create_dir_all(&dir).map_err(|e| CliError::Runtime(format!("cannot create '{}': {e}", dir.display())))?;
    Ok(dir)
}

fn create(path: &Path) -> CliResult<BufWriter<fs::File>> {
    fs::File::create(path)
        .map(BufWriter::new)
        .map_err(|e| CliError::Runtime(format!("cannot write '{}': {e}", path.display())))
}

fn realization(cfg: &Config) -> u64 {
    cfg.int("realization").unwrap_or(0)
}

fn generate(cfg: &Config, report: &mut dyn Write) -> CliResult<()> {
    let system = cfg.require_system()?;
    let spec = cfg.run_spec(system)?;
    let sig = observer_signals(&spec, realization(cfg))?;
    let path = out_dir(cfg)?.join(format!("signals_{}.csv", system.name()));
    let mut w = create(&path)?;
    writeln!(w, "t,s,s_noisy,g,g_noisy")?;
    let noisy_in = sig.train_in.values().iter().chain(sig.test_in.values());
    let noisy_out = sig.train_out.values().iter().chain(sig.test_out.values());
    let ts = spec.task.ts;
    for (k, (((s, sn), g), gn)) in sig
        .input
        .series
        .values()
        .iter()
        .zip(noisy_in)
        .zip(sig.output.series.values())
        .zip(noisy_out)
        .enumerate()
    {
        writeln!(
            w,
            "{},{},{},{},{}",
            fmt_sig9(k as f64 * ts),
            fmt_sig9(*s),
            fmt_sig9(*sn),
            fmt_sig9(*g),
            fmt_sig9(*gn)
        )?;
    }
    w.flush()?;
    writeln!(
        report,
        "wrote {} ({} samples, period T = {:.6})",
        path.display(),
        sig.input.series.len(),
        sig.period_t
    )?;
    Ok(())
}

/// Reads one sample per line, taking the last comma-separated field. A
/// non-numeric first line is treated as a header.
fn read_signal(path: &str, ts: f64) -> CliResult<TimeSeries> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Validation(format!("cannot read '{path}': {e}")))?;
    let mut values = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let field = line.rsplit(',').next().unwrap_or("").trim();
        match field.parse::<f64>() {
            Ok(v) => values.push(v),
            Err(_) if i == 0 => continue,
            Err(_) => {
                return Err(CliError::Validation(format!(
                    "{path}:{}: '{field}' is not a number",
                    i + 1
                )));
            }
        }
    }
    if values.len() < 2 {
        return Err(CliError::Validation(format!("{path}: need at least two samples")));
    }
    Ok(TimeSeries::new(values, ts)?)
}

struct SpectrumReport {
    spectrum: Spectrum,
    cutoff_freq: f64,
    period: f64,
}

fn analyse(series: &TimeSeries) -> CliResult<SpectrumReport> {
    let spectrum = power_spectrum(series);
    let cutoff_freq = cutoff_frequency(&spectrum, DEFAULT_CUTOFF_FRACTION)?;
    let period = estimate_period(series)?;
    Ok(SpectrumReport {
        spectrum,
        cutoff_freq,
        period,
    })
}

fn write_spectrum(dir: &Path, stem: &str, r: &SpectrumReport, report: &mut dyn Write) -> CliResult<()> {
    let path = dir.join(format!("{stem}.csv"));
    let mut w = create(&path)?;
    writeln!(w, "freq,power")?;
    for (f, p) in r.spectrum.freqs.iter().zip(&r.spectrum.power) {
        writeln!(w, "{},{}", fmt_sig9(*f), fmt_sig9(*p))?;
    }
    w.flush()?;
    fs::write(
        dir.join(format!("{stem}.gp")),
        plot::spectrum_script(stem, r.cutoff_freq),
    )?;
    writeln!(report, "wrote {}", path.display())?;
    writeln!(report, "cutoff frequency: {:.6} cycles per time unit", r.cutoff_freq)?;
    writeln!(
        report,
        "a_hat: {:.6} (filter coefficient, 2*pi times the cutoff frequency)",
        2.0 * std::f64::consts::PI * r.cutoff_freq
    )?;
    writeln!(report, "period T: {:.6}", r.period)?;
    Ok(())
}

fn task_spectrum(job: &SpectrumJob, dir: &Path, report: &mut dyn Write) -> CliResult<()> {
    let (input, _) = generate_task_signals(&job.task)?;
    let r = analyse(&input.series)?;
    write_spectrum(dir, &job.name, &r, report)
}

fn spectrum(cfg: &Config, report: &mut dyn Write) -> CliResult<()> {
    let dir = out_dir(cfg)?;
    if let Some(path) = cfg.text("input") {
        let series = read_signal(path, cfg.num("ts").unwrap_or(rcobs::dynamics::DEFAULT_TS))?;
        let stem = Path::new(path).file_stem().and_then(|s| s.to_str()).unwrap_or("input");
        let r = analyse(&series)?;
        return write_spectrum(&dir, &format!("spectrum_{stem}"), &r, report);
    }
    let system = cfg.require_system()?;
    let spec = cfg.run_spec(system)?;
    let job = SpectrumJob {
        name: format!("spectrum_{}", system.name()),
        task: realization_task(&spec.task, realization(cfg)),
    };
    task_spectrum(&job, &dir, report)
}

fn write_grid(dir: &Path, job: &GridJob, grid: &GridResult, report: &mut dyn Write) -> CliResult<()> {
    let path = dir.join(format!("{}.csv", job.name));
    let mut w = create(&path)?;
    grid.write_csv(&mut w)?;
    w.flush()?;
    fs::write(dir.join(format!("{}.gp", job.name)), plot::grid_script(&job.name, grid))?;
    if !grid.failures.is_empty() {
        let mut e = create(&dir.join(format!("{}.errors.txt", job.name)))?;
        let n2 = grid.axis2.len();
        for f in &grid.failures {
            writeln!(
                e,
                "{}={} {}={}: {}",
                grid.axis1_name,
                grid.axis1[f.cell / n2],
                grid.axis2_name,
                grid.axis2[f.cell % n2],
                f.error
            )?;
        }
        e.flush()?;
    }
    let best = match grid.argmin_ts() {
        Some((i, j)) => format!(
            "min delta_ts {:.4} at {}={}, {}={}",
            grid.delta_ts(i, j),
            grid.axis1_name,
            grid.axis1[i],
            grid.axis2_name,
            grid.axis2[j]
        ),
        None => "no valid cell".to_string(),
    };
    writeln!(
        report,
        "wrote {} ({} cells, {} failed realizations; {best})",
        path.display(),
        grid.mean_delta_ts.len(),
        grid.failures.len()
    )?;
    Ok(())
}

fn explicit_plan(cfg: &Config) -> CliResult<Plan> {
    let (Some(axis1), Some(axis2)) = (cfg.axis("axis1"), cfg.axis("axis2")) else {
        return Err(CliError::Validation(
            "sweep needs --recipe NAME or both --axis1 and --axis2".into(),
        ));
    };
    let system = cfg.require_system()?;
    let spec = cfg.run_spec(system)?;
    Ok(Plan {
        grids: vec![GridJob {
            name: format!("sweep_{}_{}_{}", system.name(), axis1.param, axis2.param),
            spec,
            axis1,
            axis2,
        }],
        spectra: Vec::new(),
    })
}

fn sweep(cfg: &Config, report: &mut dyn Write) -> CliResult<()> {
    let plan = match cfg.text("recipe") {
        Some(name) => name.parse::<Recipe>()?.plan(cfg)?,
        None => explicit_plan(cfg)?,
    };
    // expand and validate everything before the first run
    for job in &plan.grids {
        for axis in [&job.axis1, &job.axis2] {
            for &x in &axis.values {
                let mut s = job.spec.clone();
                axis.param.apply(&mut s, x)?;
                s.validate()
                    .map_err(|e| CliError::Validation(format!("{}: {}={x}: {e}", job.name, axis.param)))?;
            }
        }
    }
    let dir = out_dir(cfg)?;
    for job in &plan.spectra {
        task_spectrum(job, &dir, report)?;
    }
    for job in &plan.grids {
        let grid = grid_sweep(&job.spec, &job.axis1, &job.axis2)?;
        write_grid(&dir, job, &grid, report)?;
    }
    Ok(())
}

fn dump_network(cfg: &Config, report: &mut dyn Write) -> CliResult<()> {
    let spec = cfg.run_spec(cfg.system().unwrap_or(SystemId::Lorenz))?;
    let r = realization(cfg);
    let (a, w) = realization_network(&spec, r)?;
    let dir = out_dir(cfg)?;
    let edges = dir.join(format!("network_r{r}.csv"));
    let mut out = create(&edges)?;
    writeln!(out, "source,target,weight")?;
    for (i, j, v) in a.edges() {
        writeln!(out, "{i},{j},{}", fmt_sig9(v))?;
    }
    out.flush()?;
    let weights = dir.join(format!("input_weights_r{r}.csv"));
    let mut out = create(&weights)?;
    writeln!(out, "node,weight")?;
    for (i, v) in w.as_slice().iter().enumerate() {
        writeln!(out, "{i},{}", fmt_sig9(*v))?;
    }
    out.flush()?;
    writeln!(
        report,
        "wrote {} ({} nodes, {} edges) and {}",
        edges.display(),
        a.n(),
        a.edges().count(),
        weights.display()
    )?;
    Ok(())
}
