//! One function per subcommand: resolve flags against the config file,
//! run the computation, emit a table.

use spintherm::battery::{solve_equilibrium, sweep_efficiency, BatterySpec, EquilibriumResult};
use spintherm::responses::{waste_response, ResponseModel};
use spintherm::statmech::{average_spin, entropy, EnsembleSpec, Statistics, ThermalPoint};
use spintherm::thermo::{
    boson_entropy_analytic, boson_heat, polarization_to_tau, Polarization, SpinTemperature,
};
use spintherm::{Error, Spin};

use crate::config::{build_grid, parse_f64_list, parse_u32_list, require, FileConfig, Spacing};
use crate::output::{Cell, Format, Table};
use crate::{BatteryArgs, CliError, EntropyArgs, GridArgs, OutputArgs, PolarizationArgs, ResponseArgs};

const BATTERY_COLUMNS: [&str; 14] = [
    "d_s",
    "tau_batt",
    "tau_env",
    "tau_f",
    "Q_env",
    "Q_batt",
    "spin_therm",
    "W_battery",
    "eta_energy",
    "eta_carnot",
    "eta_endoreversible",
    "eta_generalized",
    "residual",
    "error",
];

/// Scenario shared by `battery` and `convergence-check`.
struct BatteryPlan {
    tau_env: f64,
    tau_batts: Vec<f64>,
    ds_values: Vec<u32>,
    tau_spin: Option<f64>,
    d_env: u32,
    d_e: u32,
    weights: (f64, f64, f64),
}

impl BatteryPlan {
    fn resolve(args: &BatteryArgs, file: &FileConfig) -> Result<Self, CliError> {
        let tau_env = require(args.tau_env, file.f64("tau_env")?, "--tau-env")?;
        let tau_batts =
            parse_f64_list(&require(args.tau_batt.clone(), file.string("tau_batt")?, "--tau-batt")?)?;
        let ds_text = args
            .ds
            .clone()
            .or(file.string("ds")?)
            .unwrap_or_else(|| "0".to_string());
        let ds_values = parse_u32_list(&ds_text)?;
        if tau_batts.is_empty() || ds_values.is_empty() {
            return Err(CliError::config("empty --tau-batt or --ds list"));
        }
        Ok(BatteryPlan {
            tau_env,
            tau_batts,
            ds_values,
            tau_spin: args.tau_spin.or(file.f64("tau_spin")?),
            d_env: args.d_env.or(file.u32("d_env")?).unwrap_or(400),
            d_e: args.d_e.or(file.u32("d_e")?).unwrap_or(400),
            weights: (
                args.weight_env.or(file.f64("weight_env")?).unwrap_or(1.0),
                args.weight_e.or(file.f64("weight_e")?).unwrap_or(1.0),
                args.weight_s.or(file.f64("weight_s")?).unwrap_or(1.0),
            ),
        })
    }

    fn spec(&self, tau_batt: f64, d_s: u32, d_env: u32, d_e: u32) -> Result<BatterySpec, Error> {
        let tau_spin = self.tau_spin.unwrap_or(tau_batt);
        BatterySpec::with_initial_temperatures(self.tau_env, tau_batt, tau_spin, d_s)?
            .state_counts(d_env, d_e)?
            .weights(self.weights.0, self.weights.1, self.weights.2)
    }

    /// One outcome per (d_s, τ_batt) cell, row-major with d_s outermost.
    fn solve_cells(&self) -> Vec<(u32, f64, Result<EquilibriumResult, Error>)> {
        if self.tau_spin.is_none() {
            // Standard protocol: both battery baths start together; use the
            // parallel sweep.
            let base = BatterySpec::new(self.tau_env, self.tau_env, 0)
                .and_then(|s| s.state_counts(self.d_env, self.d_e))
                .and_then(|s| s.weights(self.weights.0, self.weights.1, self.weights.2));
            if let Ok(base) = base {
                return sweep_efficiency(&base, &self.ds_values, &self.tau_batts)
                    .into_iter()
                    .map(|cell| (cell.d_s, cell.tau_batt, cell.outcome))
                    .collect();
            }
        }
        self.ds_values
            .iter()
            .flat_map(|&d_s| self.tau_batts.iter().map(move |&tb| (d_s, tb)))
            .map(|(d_s, tb)| {
                let outcome = self
                    .spec(tb, d_s, self.d_env, self.d_e)
                    .and_then(|s| solve_equilibrium(&s));
                (d_s, tb, outcome)
            })
            .collect()
    }
}

/// Exit policy for sweep-style commands: rows carry per-cell errors, so a
/// partially failed sweep still succeeds; only a sweep with no usable cell
/// fails, as infeasibility (3) when any cell hit a solver failure and as a
/// configuration error (2) otherwise.
fn sweep_status<T>(cells: &[(u32, f64, Result<T, Error>)]) -> Result<(), CliError> {
    if cells.iter().any(|(_, _, r)| r.is_ok()) {
        return Ok(());
    }
    let first = cells
        .iter()
        .find_map(|(_, _, r)| r.as_ref().err())
        .expect("no cells is rejected at parse time");
    let message = format!("no cell solved; first error: {first}");
    if cells
        .iter()
        .any(|(_, _, r)| matches!(r, Err(Error::Infeasible(_))))
    {
        Err(CliError::infeasible(message))
    } else {
        Err(CliError::config(message))
    }
}

fn battery_row(d_s: u32, tau_batt: f64, tau_env: f64, outcome: &Result<EquilibriumResult, Error>) -> Vec<Cell> {
    let mut row = vec![Cell::Int(d_s as u64), Cell::Num(tau_batt), Cell::Num(tau_env)];
    match outcome {
        Ok(r) => {
            row.extend(
                [
                    r.tau_f,
                    r.q_env,
                    r.q_batt,
                    r.spin_therm,
                    r.w_battery,
                    r.eta_energy,
                    r.eta_carnot,
                    r.eta_endoreversible,
                    r.eta_generalized,
                    r.residual,
                ]
                .map(Cell::Num),
            );
            row.push(Cell::Empty);
        }
        Err(e) => {
            row.extend(std::iter::repeat_n(Cell::Empty, 10));
            row.push(Cell::Text(e.to_string()));
        }
    }
    row
}

pub fn battery(args: &BatteryArgs) -> Result<(), CliError> {
    let file = FileConfig::load(args.output.config.as_deref())?;
    let plan = BatteryPlan::resolve(args, &file)?;
    let (format, out) = args.output.resolve(&file)?;

    let cells = plan.solve_cells();
    let mut table = Table::new(BATTERY_COLUMNS.to_vec());
    for (d_s, tb, outcome) in &cells {
        table.push(battery_row(*d_s, *tb, plan.tau_env, outcome));
    }
    table.emit(format, out.as_deref())?;
    sweep_status(&cells)
}

pub fn convergence_check(args: &BatteryArgs) -> Result<(), CliError> {
    let file = FileConfig::load(args.output.config.as_deref())?;
    let plan = BatteryPlan::resolve(args, &file)?;
    let (format, out) = args.output.resolve(&file)?;

    let mut table = Table::new(vec![
        "d_s",
        "tau_batt",
        "d_e",
        "eta_energy",
        "d_e_doubled",
        "eta_doubled",
        "shift",
        "error",
    ]);
    let mut cells = Vec::new();
    for &d_s in &plan.ds_values {
        for &tb in &plan.tau_batts {
            let outcome = plan
                .spec(tb, d_s, plan.d_env, plan.d_e)
                .and_then(|s| solve_equilibrium(&s))
                .and_then(|coarse| {
                    let fine = plan
                        .spec(tb, d_s, 2 * plan.d_env, 2 * plan.d_e)
                        .and_then(|s| solve_equilibrium(&s))?;
                    Ok((coarse.eta_energy, fine.eta_energy))
                });
            let mut row = vec![
                Cell::Int(d_s as u64),
                Cell::Num(tb),
                Cell::Int(plan.d_e as u64),
            ];
            match &outcome {
                Ok((eta, eta2)) => {
                    row.push(Cell::Num(*eta));
                    row.push(Cell::Int(2 * plan.d_e as u64));
                    row.push(Cell::Num(*eta2));
                    row.push(Cell::Num(eta2 - eta));
                    row.push(Cell::Empty);
                }
                Err(e) => {
                    row.extend([Cell::Empty, Cell::Int(2 * plan.d_e as u64), Cell::Empty, Cell::Empty]);
                    row.push(Cell::Text(e.to_string()));
                }
            }
            table.push(row);
            cells.push((d_s, tb, outcome));
        }
    }
    table.emit(format, out.as_deref())?;
    sweep_status(&cells)
}

pub fn response(args: &ResponseArgs) -> Result<(), CliError> {
    let file = FileConfig::load(args.output.config.as_deref())?;
    let (format, out) = args.output.resolve(&file)?;
    let model_name = require(args.model.clone(), file.string("model")?, "--model")?;
    let d = args.d.or(file.u32("d")?);
    let cutoff = args.cutoff.or(file.f64("cutoff")?);
    let model = match model_name.as_str() {
        "distinguishable" => ResponseModel::Distinguishable {
            d: require(d, None, "--d (distinguishable model)")?,
        },
        "boson" => ResponseModel::Boson {
            d: require(d, None, "--d (boson model)")?,
        },
        "einstein" => ResponseModel::Einstein,
        "debye" => ResponseModel::Debye {
            cutoff: require(cutoff, None, "--cutoff (debye model)")?,
        },
        other => {
            return Err(CliError::config(format!(
                "unknown model {other:?}; expected distinguishable, boson, einstein, or debye"
            )))
        }
    };
    let grid = args.grid.resolve(&file)?;

    let mut table = Table::new(vec!["tau", "C_s", "C_s_over_tau"]);
    for &tau in &grid {
        let c = waste_response(&model, tau)?;
        table.push(vec![Cell::Num(tau), Cell::Num(c), Cell::Num(c / tau)]);
    }
    table.emit(format, out.as_deref())
}

pub fn entropy_table(args: &EntropyArgs) -> Result<(), CliError> {
    let file = FileConfig::load(args.output.config.as_deref())?;
    let (format, out) = args.output.resolve(&file)?;
    let statistics = match require(args.statistics.clone(), file.string("statistics")?, "--statistics")?
        .as_str()
    {
        "distinguishable" => Statistics::Distinguishable,
        "boson" => Statistics::Boson,
        "fermion" => Statistics::Fermion,
        other => {
            return Err(CliError::config(format!(
                "unknown statistics {other:?}; expected distinguishable, boson, or fermion"
            )))
        }
    };
    let n = require(args.n, file.u32("n")?, "--n")?;
    let d = require(args.d, file.u32("d")?, "--d")?;
    let spec = EnsembleSpec::from_states(statistics, n, d)?;
    let grid = args.grid.resolve(&file)?;

    let with_analytic = statistics == Statistics::Boson;
    let mut table = Table::new(if with_analytic {
        vec!["tau", "entropy", "heat", "entropy_infinite", "heat_infinite"]
    } else {
        vec!["tau", "entropy", "heat"]
    });
    let offset = spec.spin().value() * spec.n() as f64;
    for &tau in &grid {
        let point = ThermalPoint::at_tau(spec, tau)?;
        let s = entropy(&point)?;
        // Heat absorbed since the frozen state: the stored spin above the
        // ground level, ⟨j⟩ = ⟨J̄z⟩ + S·N.
        let q = average_spin(&point)? + offset;
        let mut row = vec![Cell::Num(tau), Cell::Num(s), Cell::Num(q)];
        if with_analytic {
            // Unbounded-occupancy mode sums: the finite-N columns approach
            // these from below while τ ≪ the saturation scale.
            row.push(Cell::Num(boson_entropy_analytic(d, tau)?));
            row.push(Cell::Num(boson_heat(d, tau)?));
        }
        table.push(row);
    }
    table.emit(format, out.as_deref())
}

pub fn polarization(args: &PolarizationArgs) -> Result<(), CliError> {
    let file = FileConfig::load(args.output.config.as_deref())?;
    let (format, out) = args.output.resolve(&file)?;
    let spins = parse_f64_list(&require(args.spin.clone(), file.string("spin")?, "--spin")?)?
        .into_iter()
        .map(|s| Spin::new(s).map_err(CliError::from))
        .collect::<Result<Vec<Spin>, CliError>>()?;
    let start = require(args.alpha_start, file.f64("alpha_start")?, "--alpha-start")?;
    let stop = require(args.alpha_stop, file.f64("alpha_stop")?, "--alpha-stop")?;
    let count = require(args.alpha_count, file.u32("alpha_count")?, "--alpha-count")?;
    let spacing = match args.spacing {
        Some(s) => s,
        None => file
            .string("spacing")?
            .map(|s| s.parse())
            .transpose()?
            .unwrap_or(Spacing::Linear),
    };
    if !(stop < 1.0) {
        return Err(CliError::config(format!(
            "polarization grid must stay inside (0, 1), got stop = {stop}"
        )));
    }
    let grid = build_grid(start, stop, count, spacing)?;

    let mut table = Table::new(vec!["S", "alpha", "tau", "note"]);
    for &spin in &spins {
        for &alpha in &grid {
            let tau = polarization_to_tau(Polarization::new(alpha)?, spin)?;
            let (tau_cell, note) = match tau {
                SpinTemperature::Finite(t) => (Cell::Num(t), Cell::Empty),
                SpinTemperature::Infinite => (Cell::Empty, Cell::Text("inf".into())),
            };
            table.push(vec![Cell::Num(spin.value()), Cell::Num(alpha), tau_cell, note]);
        }
    }
    table.emit(format, out.as_deref())
}

impl OutputArgs {
    fn resolve(&self, file: &FileConfig) -> Result<(Format, Option<std::path::PathBuf>), CliError> {
        let format = match self.format {
            Some(f) => f,
            None => file
                .string("format")?
                .map(|s| s.parse())
                .transpose()?
                .unwrap_or(Format::Csv),
        };
        let out = match &self.out {
            Some(path) => Some(path.clone()),
            None => file.string("out")?.map(std::path::PathBuf::from),
        };
        Ok((format, out))
    }
}

impl GridArgs {
    fn resolve(&self, file: &FileConfig) -> Result<Vec<f64>, CliError> {
        let start = require(self.tau_start, file.f64("tau_start")?, "--tau-start")?;
        let stop = require(self.tau_stop, file.f64("tau_stop")?, "--tau-stop")?;
        let count = require(self.tau_count, file.u32("tau_count")?, "--tau-count")?;
        let spacing = match self.spacing {
            Some(s) => s,
            None => file
                .string("spacing")?
                .map(|s| s.parse())
                .transpose()?
                .unwrap_or(Spacing::Linear),
        };
        build_grid(start, stop, count, spacing)
    }
}
