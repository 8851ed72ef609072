use std::str::FromStr;

use rayon::prelude::*;

use super::table::{Cell, Table};
use crate::axial::SpinJ;
use crate::correlations::correlations;
use crate::error::{invalid_argument, Error, Result};
use crate::models::{xxx_hamiltonian, xxz_field_hamiltonian};
use crate::su2::{self, SU2State};
use crate::thermal::{ground_state, Temperature, DEFAULT_TIE_TOL};

/// Spins shown in the temperature and `F` plots: j = 1, 3/2, 2, 105/2.
pub const CURVE_TWO_J: [u32; 4] = [2, 3, 4, 105];
/// Spins listed in the ground-state table.
pub const TABLE_TWO_J: [u32; 5] = [1, 2, 3, 4, 105];
/// Largest `2j` on the spin axis of the ground-state plots.
pub const GROUND_MAX_TWO_J: u32 = 100;
/// Largest `2j` of the threshold-temperature plot.
pub const THRESHOLD_MAX_TWO_J: u32 = 200;
/// Field sets `(B₁, B₂)` of the XXX model in a field (`J_z = J = 1`).
pub const XXX_FIELD_SETS: [(f64, f64); 3] = [(0.05, 0.0), (0.0, 0.2), (-0.5, 0.3)];
/// `(J_z, J)` pairs of the XXZ model with `B₁ = 0.2`.
pub const XXZ_FIELD_SETS: [(f64, f64); 2] = [(1.0, 1.1), (-1.0, 1.1)];
pub const XXZ_FIELD_B1: f64 = 0.2;

const T_POINTS: usize = 400;
const T_MIN: f64 = 0.005;
const T_MAX: f64 = 2.0;
const F_POINTS: usize = 201;

/// Figure number with an optional panel letter, e.g. `8a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FigureId {
    pub number: u8,
    pub panel: Option<char>,
}

impl FromStr for FigureId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (digits, panel) = match s.char_indices().last() {
            Some((i, c)) if c.is_ascii_alphabetic() => (&s[..i], Some(c.to_ascii_lowercase())),
            _ => (s, None),
        };
        let number: u8 = digits
            .parse()
            .map_err(|_| invalid_argument(format!("unknown figure id {s:?}")))?;
        let panels: &[char] = match number {
            1 | 2 | 8 => &['a', 'b'],
            3..=10 => &[],
            _ => return Err(invalid_argument(format!("unknown figure id {s:?}"))),
        };
        if let Some(p) = panel {
            if !panels.contains(&p) {
                return Err(invalid_argument(format!(
                    "figure {number} has no panel {p}"
                )));
            }
        }
        Ok(Self { number, panel })
    }
}

fn spin(tj: u32) -> SpinJ {
    SpinJ::from_twice(tj).expect("positive 2j")
}

/// XXX ground-state LQFI/LQU for both coupling signs, from the closed form and
/// from the zero-temperature state, with EoF and negativity.
pub fn table1() -> Result<Table> {
    let mut t = Table::new(["two_j", "coupling", "fu", "fu_state", "eof", "negativity"]);
    for tj in TABLE_TWO_J {
        for (label, j0) in [("af", 1.0), ("ferro", -1.0)] {
            let s = spin(tj);
            let closed = su2::ground_state_xxx(s, j0 < 0.0);
            let g = ground_state(&xxx_hamiltonian(s, j0, true), DEFAULT_TIE_TOL);
            let c = correlations(&g.state)?;
            t.push(vec![
                tj.into(),
                label.into(),
                closed.fu.into(),
                c.f.into(),
                closed.eof.into(),
                closed.negativity.into(),
            ]);
        }
    }
    Ok(t)
}

fn reduced_temperatures() -> Vec<f64> {
    (0..T_POINTS)
        .map(|i| T_MIN + (T_MAX - T_MIN) * i as f64 / (T_POINTS - 1) as f64)
        .collect()
}

/// LQFI and LQU of the normalised XXX model versus `T/|J₀|`.
fn xxx_thermal(j0: f64, panel: Option<char>) -> Table {
    let cols: Vec<&str> = match panel {
        Some('a') => vec!["f"],
        Some('b') => vec!["u"],
        _ => vec!["f", "u"],
    };
    let mut t = Table::new(
        ["two_j", "t_over_j0"]
            .into_iter()
            .chain(cols.iter().copied()),
    );
    for tj in CURVE_TWO_J {
        for x in reduced_temperatures() {
            let temp = Temperature::new(x * j0.abs()).expect("positive grid");
            let (f, u) = su2::xxx_correlations_closed(spin(tj), j0, temp);
            let mut row = vec![tj.into(), x.into()];
            for c in &cols {
                row.push(if *c == "f" { f } else { u }.into());
            }
            t.push(row);
        }
    }
    t
}

fn lqfi_versus_f() -> Table {
    let mut t = Table::new(["two_j", "f_param", "f"]);
    for tj in CURVE_TWO_J {
        for i in 0..F_POINTS {
            let f = i as f64 / (F_POINTS - 1) as f64;
            let s = SU2State::new(spin(tj), f).expect("F in [0, 1]");
            t.push(vec![tj.into(), f.into(), su2::lqfi_su2(&s).into()]);
        }
    }
    t
}

fn threshold() -> Table {
    let mut t = Table::new(["two_j", "spin_j", "t_th"]);
    for tj in 1..=THRESHOLD_MAX_TWO_J {
        let s = spin(tj);
        let th = su2::threshold_temperature(s, 1.0, true).expect("J0 > 0");
        t.push(vec![tj.into(), s.j().into(), th.into()]);
    }
    t
}

fn xxx_ground(discord: bool) -> Table {
    let first = if discord {
        ["discord_af", "discord_ferro"]
    } else {
        ["fu_af", "fu_ferro"]
    };
    let mut t = Table::new(
        ["two_j", "spin_j"]
            .into_iter()
            .chain(first)
            .chain(["eof", "negativity"]),
    );
    for tj in 1..=GROUND_MAX_TWO_J {
        let s = spin(tj);
        let af = su2::ground_state_xxx(s, false);
        let fe = su2::ground_state_xxx(s, true);
        let (a, b) = if discord {
            (af.discord, fe.discord)
        } else {
            (af.fu, fe.fu)
        };
        t.push(vec![
            tj.into(),
            s.j().into(),
            a.into(),
            b.into(),
            af.eof.into(),
            af.negativity.into(),
        ]);
    }
    t
}

/// Ground-state branches versus spin for one parameter set.
fn ground_curve(label: Vec<Cell>, jz: f64, jxy: f64, b1: f64, b2: f64) -> Result<Vec<Vec<Cell>>> {
    (1..=GROUND_MAX_TWO_J)
        .into_par_iter()
        .map(|tj| {
            let h = xxz_field_hamiltonian(spin(tj), jz, jxy, b1, b2);
            let c = correlations(&ground_state(&h, DEFAULT_TIE_TOL).state)?;
            let mut row = label.clone();
            row.extend([
                tj.into(),
                c.f.into(),
                c.u.into(),
                c.f0.into(),
                c.f1.into(),
                c.u0.into(),
                c.u1.into(),
            ]);
            Ok(row)
        })
        .collect()
}

const BRANCH_COLUMNS: [&str; 7] = ["two_j", "f", "u", "f0", "f1", "u0", "u1"];

fn xxz_ground(panel: Option<char>, sets: &[(char, f64, f64)]) -> Result<Table> {
    let mut t = Table::new(["panel", "jz", "jxy"].into_iter().chain(BRANCH_COLUMNS));
    for &(p, jz, jxy) in sets {
        if panel.is_some_and(|q| q != p) {
            continue;
        }
        let label = vec![Cell::Text(p.to_string()), jz.into(), jxy.into()];
        for row in ground_curve(label, jz, jxy, 0.0, 0.0)? {
            t.push(row);
        }
    }
    Ok(t)
}

fn field_ground(jz: f64, jxy: f64, b1: f64, b2: f64, t: &mut Table) -> Result<()> {
    let label = vec![jz.into(), jxy.into(), b1.into(), b2.into()];
    for row in ground_curve(label, jz, jxy, b1, b2)? {
        t.push(row);
    }
    Ok(())
}

fn field_table() -> Table {
    Table::new(["jz", "jxy", "b1", "b2"].into_iter().chain(BRANCH_COLUMNS))
}

/// Data behind a figure. Panels `a`/`b` of figures 1 and 2 select LQFI/LQU;
/// those of figure 8 select the coupling set.
pub fn figure_table(id: FigureId) -> Result<Table> {
    Ok(match id.number {
        1 => xxx_thermal(1.0, id.panel),
        2 => xxx_thermal(-1.0, id.panel),
        3 => lqfi_versus_f(),
        4 => threshold(),
        5 => xxx_ground(false),
        6 => xxx_ground(true),
        7 => xxz_ground(None, &[('-', 1.0, 0.9)])?,
        8 => xxz_ground(id.panel, &[('a', 1.0, 1.1), ('b', -1.0, 1.1)])?,
        9 => {
            let mut t = field_table();
            for (b1, b2) in XXX_FIELD_SETS {
                field_ground(1.0, 1.0, b1, b2, &mut t)?;
            }
            t
        }
        10 => {
            let mut t = field_table();
            for (jz, jxy) in XXZ_FIELD_SETS {
                field_ground(jz, jxy, XXZ_FIELD_B1, 0.0, &mut t)?;
            }
            t
        }
        n => return Err(invalid_argument(format!("unknown figure {n}"))),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn figure_ids() {
        assert_eq!(
            "8a".parse::<FigureId>().unwrap(),
            FigureId {
                number: 8,
                panel: Some('a')
            }
        );
        assert_eq!("4".parse::<FigureId>().unwrap().panel, None);
        assert!("11".parse::<FigureId>().is_err());
        assert!("4a".parse::<FigureId>().is_err());
        assert!("x".parse::<FigureId>().is_err());
        assert!("".parse::<FigureId>().is_err());
    }

    #[test]
    fn table_has_ten_rows() {
        let t = table1().unwrap();
        assert_eq!(t.rows().len(), 10);
        let closed = t.column("fu").unwrap();
        let state = t.column("fu_state").unwrap();
        for (a, b) in closed.iter().zip(&state) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn threshold_curve_decreases() {
        let t = figure_table("4".parse().unwrap()).unwrap();
        let th = t.column("t_th").unwrap();
        assert!(th.windows(2).all(|w| w[1] < w[0]));
    }

    #[test]
    fn lqfi_curves_vanish_at_critical_f() {
        let t = figure_table("3".parse().unwrap()).unwrap();
        let f = t.column("f").unwrap();
        let fp = t.column("f_param").unwrap();
        let tj = t.column("two_j").unwrap();
        for k in CURVE_TWO_J {
            let j = f64::from(k) / 2.0;
            let fc = j / (2.0 * j + 1.0);
            let (i, _) = f
                .iter()
                .enumerate()
                .filter(|(i, _)| tj[*i] == f64::from(k))
                .min_by(|a, b| a.1.total_cmp(b.1))
                .unwrap();
            assert!((fp[i] - fc).abs() <= 0.5 / (F_POINTS - 1) as f64);
        }
    }
}
