//! Named sweep presets.

use std::fmt;
use std::str::FromStr;

use rcobs::sweeps::Param;
use rcobs::{Axis, RunSpec, SystemId, Task};

use crate::config::Config;
use crate::error::{CliError, CliResult};

const EPS_GRID: [f64; 9] = [0.0, 2.0, 5.0, 7.5, 10.0, 12.5, 15.0, 17.5, 20.0];
const EPS_COARSE: [f64; 5] = [0.0, 5.0, 10.0, 15.0, 20.0];
const ALPHAS: [f64; 7] = [0.001, 0.003, 0.01, 0.03, 0.1, 0.3, 1.0];
const P_VALUES: [f64; 7] = [0.05, 0.2, 0.35, 0.5, 0.65, 0.8, 0.95];
const CUTOFFS_2D: [f64; 10] = [1.0, 4.0, 8.0, 10.0, 12.0, 14.0, 16.0, 20.0, 25.0, 30.0];
const SMOKE_REALIZATIONS: usize = 2;

fn betas() -> Vec<f64> {
    (-10..=-2).map(|e| 10f64.powi(e)).collect()
}

fn cutoffs_1d() -> Vec<f64> {
    (1..=30).map(f64::from).collect()
}

/// Which input filters a filter-placement grid enables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Placement {
    None,
    Train,
    Test,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Recipe {
    Fig2a,
    Fig2b,
    Fig3a,
    Fig3b,
    Fig3c,
    Fig3d,
    Fig4,
    Fig5,
    Fig6,
    Fig7a,
    Fig7b,
    Fig7c,
    Fig7d,
    Si1,
    Si2,
    Si3,
}

impl Recipe {
    pub const ALL: [Recipe; 16] = [
        Recipe::Fig2a,
        Recipe::Fig2b,
        Recipe::Fig3a,
        Recipe::Fig3b,
        Recipe::Fig3c,
        Recipe::Fig3d,
        Recipe::Fig4,
        Recipe::Fig5,
        Recipe::Fig6,
        Recipe::Fig7a,
        Recipe::Fig7b,
        Recipe::Fig7c,
        Recipe::Fig7d,
        Recipe::Si1,
        Recipe::Si2,
        Recipe::Si3,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Recipe::Fig2a => "fig2a",
            Recipe::Fig2b => "fig2b",
            Recipe::Fig3a => "fig3a",
            Recipe::Fig3b => "fig3b",
            Recipe::Fig3c => "fig3c",
            Recipe::Fig3d => "fig3d",
            Recipe::Fig4 => "fig4",
            Recipe::Fig5 => "fig5",
            Recipe::Fig6 => "fig6",
            Recipe::Fig7a => "fig7a",
            Recipe::Fig7b => "fig7b",
            Recipe::Fig7c => "fig7c",
            Recipe::Fig7d => "fig7d",
            Recipe::Si1 => "si1",
            Recipe::Si2 => "si2",
            Recipe::Si3 => "si3",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            Recipe::Fig2a => "noise-free Lorenz testing error over alpha x beta",
            Recipe::Fig2b => "Lorenz testing error over eps1 x beta at alpha = 0.1",
            Recipe::Fig3a => "Lorenz eps1 x eps2 grid, eps3 = eps4 = 0",
            Recipe::Fig3b => "Lorenz eps1 x eps3 grid, eps2 = eps4 = 0",
            Recipe::Fig3c => "Lorenz eps2 x eps4 grid, eps1 = eps3 = 0",
            Recipe::Fig3d => "Lorenz eps3 x eps4 grid, eps1 = eps2 = 0",
            Recipe::Fig4 => "input spectra with estimated cutoff and period",
            Recipe::Fig5 => "testing error versus input filter cutoff, eps1 = 5, eps2 = 20",
            Recipe::Fig6 => "filtered vs unfiltered input over eps2, eps1 = 5",
            Recipe::Fig7a => "Lorenz eps1 x eps2 grid, no filter",
            Recipe::Fig7b => "Lorenz eps1 x eps2 grid, training input filtered",
            Recipe::Fig7c => "Lorenz eps1 x eps2 grid, testing input filtered",
            Recipe::Fig7d => "Lorenz eps1 x eps2 grid, both inputs filtered",
            Recipe::Si1 => "Lorenz training cutoff x testing cutoff, eps1 = 5, eps2 = 20",
            Recipe::Si2 => "connection probability x directedness, noise-free and eps1 = eps2 = 5",
            Recipe::Si3 => "testing error versus alpha, noise-free and eps1 = eps2 = 5",
        }
    }

    /// Systems run when the config does not name one.
    fn default_systems(self) -> &'static [SystemId] {
        match self {
            Recipe::Fig4 | Recipe::Fig5 | Recipe::Fig6 | Recipe::Si3 => &SystemId::ALL,
            _ => &[SystemId::Lorenz],
        }
    }
}

impl fmt::Display for Recipe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Recipe {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        Recipe::ALL.into_iter().find(|r| r.name() == s).ok_or_else(|| {
            let names: Vec<&str> = Recipe::ALL.iter().map(|r| r.name()).collect();
            CliError::Validation(format!("unknown recipe '{s}' (known: {})", names.join(", ")))
        })
    }
}

/// One grid to run and write.
#[derive(Debug, Clone, PartialEq)]
pub struct GridJob {
    pub name: String,
    pub spec: RunSpec,
    pub axis1: Axis,
    pub axis2: Axis,
}

/// One input spectrum to compute and write.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumJob {
    pub name: String,
    pub task: Task,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Plan {
    pub grids: Vec<GridJob>,
    pub spectra: Vec<SpectrumJob>,
}

/// First, middle and last value.
fn shrink(values: &[f64]) -> Vec<f64> {
    if values.len() <= 3 {
        return values.to_vec();
    }
    vec![values[0], values[values.len() / 2], values[values.len() - 1]]
}

fn placement_filter(spec: &mut RunSpec, placement: Placement, a: f64) {
    spec.filter.a_tr = a;
    spec.filter.a_ts = a;
    spec.filter.enabled_tr_in = matches!(placement, Placement::Train | Placement::Both);
    spec.filter.enabled_ts_in = matches!(placement, Placement::Test | Placement::Both);
}

fn inputs_noise(spec: &mut RunSpec, eps1: f64, eps2: f64) {
    spec.noise.eps1 = eps1;
    spec.noise.eps2 = eps2;
}

impl Recipe {
    /// Expands the recipe against `cfg`. Recipe presets are applied first,
    /// so explicit config values override them; the swept axes always win.
    pub fn plan(self, cfg: &Config) -> CliResult<Plan> {
        let systems: Vec<SystemId> = match cfg.system() {
            Some(s) => vec![s],
            None => self.default_systems().to_vec(),
        };
        let multi = self.default_systems().len() > 1;
        let smoke = cfg.flag("smoke").unwrap_or(false);
        let mut plan = Plan::default();
        for system in systems {
            let suffix = if multi {
                format!("_{}", system.name())
            } else {
                String::new()
            };
            if self == Recipe::Fig4 {
                let spec = cfg.run_spec(system)?;
                plan.spectra.push(SpectrumJob {
                    name: format!("fig4{suffix}"),
                    task: spec.task,
                });
                continue;
            }
            for (variant, mut spec, a1, a2) in self.grids(system) {
                cfg.apply(&mut spec)?;
                let (mut a1, mut a2) = (a1, a2);
                if smoke {
                    a1.values = shrink(&a1.values);
                    a2.values = shrink(&a2.values);
                    if !cfg.contains("realizations") {
                        spec.realizations = SMOKE_REALIZATIONS;
                    }
                }
                plan.grids.push(GridJob {
                    name: format!("{}{suffix}{variant}", self.name()),
                    spec,
                    axis1: a1,
                    axis2: a2,
                });
            }
        }
        Ok(plan)
    }

    /// Preset spec and axes for each grid of the recipe on `system`.
    fn grids(self, system: SystemId) -> Vec<(&'static str, RunSpec, Axis, Axis)> {
        let base = RunSpec::for_system(system);
        let a_hat = system.nominal_cutoff();
        let eps = |p: Param| Axis::new(p, EPS_GRID);
        match self {
            Recipe::Fig2a => vec![(
                "",
                base,
                Axis::new(Param::Alpha, &ALPHAS[1..]),
                Axis::new(Param::Beta, betas()),
            )],
            Recipe::Fig2b => vec![(
                "",
                base,
                Axis::new(Param::Eps1, [0.0, 5.0, 10.0, 15.0, 20.0]),
                Axis::new(Param::Beta, betas()),
            )],
            Recipe::Fig3a => vec![("", base, eps(Param::Eps1), eps(Param::Eps2))],
            Recipe::Fig3b => vec![("", base, eps(Param::Eps1), eps(Param::Eps3))],
            Recipe::Fig3c => vec![("", base, eps(Param::Eps2), eps(Param::Eps4))],
            Recipe::Fig3d => vec![("", base, eps(Param::Eps3), eps(Param::Eps4))],
            Recipe::Fig4 => Vec::new(),
            Recipe::Fig5 => {
                let mut s = base;
                inputs_noise(&mut s, 5.0, 20.0);
                placement_filter(&mut s, Placement::Both, a_hat);
                vec![("", s, Axis::new(Param::A, cutoffs_1d()), Axis::new(Param::Eps2, [20.0]))]
            }
            Recipe::Fig6 => {
                let mut s = base;
                inputs_noise(&mut s, 5.0, 0.0);
                placement_filter(&mut s, Placement::None, a_hat);
                vec![(
                    "",
                    s,
                    Axis::new(Param::Eps2, EPS_COARSE),
                    Axis::new(Param::FilterInputs, [0.0, 1.0]),
                )]
            }
            Recipe::Fig7a | Recipe::Fig7b | Recipe::Fig7c | Recipe::Fig7d => {
                let placement = match self {
                    Recipe::Fig7a => Placement::None,
                    Recipe::Fig7b => Placement::Train,
                    Recipe::Fig7c => Placement::Test,
                    _ => Placement::Both,
                };
                let mut s = base;
                placement_filter(&mut s, placement, a_hat);
                vec![("", s, eps(Param::Eps1), eps(Param::Eps2))]
            }
            Recipe::Si1 => {
                let mut s = base;
                inputs_noise(&mut s, 5.0, 20.0);
                placement_filter(&mut s, Placement::Both, a_hat);
                vec![(
                    "",
                    s,
                    Axis::new(Param::ATr, CUTOFFS_2D),
                    Axis::new(Param::ATs, CUTOFFS_2D),
                )]
            }
            Recipe::Si2 => [("_noise_free", 0.0), ("_noisy", 5.0)]
                .into_iter()
                .map(|(variant, e)| {
                    let mut s = base.clone();
                    inputs_noise(&mut s, e, e);
                    (
                        variant,
                        s,
                        Axis::new(Param::P, P_VALUES),
                        Axis::new(Param::Directed, [0.0, 1.0]),
                    )
                })
                .collect(),
            Recipe::Si3 => vec![(
                "",
                base,
                Axis::new(Param::Alpha, ALPHAS),
                Axis::new(Param::EpsInputs, [0.0, 5.0]),
            )],
        }
    }
}
