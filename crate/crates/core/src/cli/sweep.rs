use clap::ValueEnum;
use rayon::prelude::*;

use super::table::{Cell, Table};
use crate::axial::SpinJ;
use crate::correlations::correlations;
use crate::error::{invalid_argument, Result};
use crate::models::{build, ModelParams};
use crate::su2::{self, SU2State};
use crate::thermal::{gibbs_state, ground_state, partition_function, Temperature, DEFAULT_TIE_TOL};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Output {
    F0,
    F1,
    U0,
    U1,
    F,
    U,
    Negativity,
    Eof,
    Discord,
    Z,
    #[value(name = "f_param")]
    FParam,
}

impl Output {
    pub fn name(self) -> &'static str {
        match self {
            Output::F0 => "f0",
            Output::F1 => "f1",
            Output::U0 => "u0",
            Output::U1 => "u1",
            Output::F => "f",
            Output::U => "u",
            Output::Negativity => "negativity",
            Output::Eof => "eof",
            Output::Discord => "discord",
            Output::Z => "z",
            Output::FParam => "f_param",
        }
    }

    /// Defined only on SU(2)-invariant (XXX) states.
    fn needs_su2(self) -> bool {
        matches!(
            self,
            Output::Negativity | Output::Eof | Output::Discord | Output::FParam
        )
    }

    fn needs_correlations(self) -> bool {
        matches!(
            self,
            Output::F0 | Output::F1 | Output::U0 | Output::U1 | Output::F | Output::U
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TGrid {
    Ground,
    Points {
        start: f64,
        stop: f64,
        count: usize,
        log: bool,
    },
}

impl TGrid {
    pub fn points(&self) -> Vec<f64> {
        match *self {
            TGrid::Ground => Vec::new(),
            TGrid::Points {
                start, count: 1, ..
            } => vec![start],
            TGrid::Points {
                start,
                stop,
                count,
                log,
            } => (0..count)
                .map(|i| {
                    let s = i as f64 / (count - 1) as f64;
                    if log {
                        (start.ln() + s * (stop / start).ln()).exp()
                    } else {
                        start + s * (stop - start)
                    }
                })
                .collect(),
        }
    }

    fn validate(&self) -> Result<()> {
        if let TGrid::Points {
            start, stop, count, ..
        } = *self
        {
            if count == 0 {
                return Err(invalid_argument("--t-count must be at least 1"));
            }
            if !(start > 0.0 && start.is_finite() && stop.is_finite()) {
                return Err(invalid_argument("temperatures must be positive and finite"));
            }
            if stop < start {
                return Err(invalid_argument("--t-stop must not be below --t-start"));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub model: ModelParams,
    pub two_j: Vec<u32>,
    pub grid: TGrid,
    pub outputs: Vec<Output>,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        self.grid.validate()?;
        for &tj in &self.two_j {
            SpinJ::from_twice(tj)?;
        }
        let xxx = matches!(self.model, ModelParams::Xxx { .. });
        if let Some(o) = self.outputs.iter().find(|o| o.needs_su2() && !xxx) {
            return Err(invalid_argument(format!(
                "output {} is only defined for the xxx model",
                o.name()
            )));
        }
        if self.grid == TGrid::Ground && self.outputs.contains(&Output::Z) {
            return Err(invalid_argument(
                "output z is not defined for the ground state",
            ));
        }
        build(&self.model, SpinJ::HALF)?;
        Ok(())
    }

    pub fn header(&self) -> Vec<String> {
        let mut h = vec!["model".to_string(), "two_j".into(), "t".into()];
        h.extend(self.model.columns().into_iter().map(|(n, _)| n.to_string()));
        h.extend(self.outputs.iter().map(|o| o.name().to_string()));
        h
    }

    fn su2_state(&self, spin: SpinJ, t: Option<Temperature>) -> Option<SU2State> {
        let ModelParams::Xxx { j0, normalized } = self.model else {
            return None;
        };
        Some(match t {
            Some(t) => su2::su2_f_from_exponent(spin, su2::xxx_exponent(spin, j0, t, normalized)),
            None => {
                let f = if j0 > 0.0 {
                    1.0
                } else if j0 < 0.0 {
                    0.0
                } else {
                    spin.j() / (2.0 * spin.j() + 1.0)
                };
                SU2State::new(spin, f).expect("F in range")
            }
        })
    }

    fn row(&self, two_j: u32, t: Option<f64>) -> Result<Vec<Cell>> {
        let spin = SpinJ::from_twice(two_j)?;
        let h = self.model.hamiltonian(spin);
        let temp = t.map(Temperature::new).transpose()?;
        let corr = if self.outputs.iter().any(|o| o.needs_correlations()) {
            let rho = match temp {
                Some(t) => gibbs_state(&h, t)?,
                None => ground_state(&h, DEFAULT_TIE_TOL).state,
            };
            Some(correlations(&rho)?)
        } else {
            None
        };
        let su2_state = self.su2_state(spin, temp);
        let mut row: Vec<Cell> = vec![
            self.model.tag().into(),
            two_j.into(),
            t.map_or(Cell::Int(0), Cell::Real),
        ];
        row.extend(self.model.columns().into_iter().map(|(_, v)| Cell::Real(v)));
        for o in &self.outputs {
            let c = corr.as_ref();
            let s = su2_state.as_ref();
            let v = match o {
                Output::F0 => c.map(|c| c.f0),
                Output::F1 => c.map(|c| c.f1),
                Output::U0 => c.map(|c| c.u0),
                Output::U1 => c.map(|c| c.u1),
                Output::F => c.map(|c| c.f),
                Output::U => c.map(|c| c.u),
                Output::Negativity => s.map(su2::negativity),
                Output::Eof => s.map(su2::eof),
                Output::Discord => s.map(su2::discord),
                Output::FParam => s.map(SU2State::f_param),
                Output::Z => match temp {
                    Some(t) => Some(partition_function(&h, t)?.z()),
                    None => None,
                },
            };
            row.push(Cell::Real(v.expect("outputs checked by validate")));
        }
        Ok(row)
    }
}

/// Evaluates every `(two_j, t)` point, in parallel, and returns the rows in
/// `(two_j, t)` order.
pub fn sweep_table(spec: &SweepSpec) -> Result<Table> {
    spec.validate()?;
    let ts: Vec<Option<f64>> = match spec.grid {
        TGrid::Ground => vec![None],
        grid => grid.points().into_iter().map(Some).collect(),
    };
    let points: Vec<(u32, Option<f64>)> = spec
        .two_j
        .iter()
        .flat_map(|&tj| ts.iter().map(move |&t| (tj, t)))
        .collect();
    let rows = points
        .par_iter()
        .map(|&(tj, t)| spec.row(tj, t))
        .collect::<Result<Vec<_>>>()?;
    let mut table = Table::new(spec.header());
    for r in rows {
        table.push(r);
    }
    Ok(table)
}
