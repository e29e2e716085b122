use std::time::Duration;

use clap::{Args, ValueEnum};
use ilp_ls::engine::{MoveOperator, Params, UnitMove};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum UnitMoveArg {
    Unit,
    Bound,
    Random,
}

impl From<UnitMoveArg> for UnitMove {
    fn from(u: UnitMoveArg) -> Self {
        match u {
            UnitMoveArg::Unit => UnitMove::Unit,
            UnitMoveArg::Bound => UnitMove::Bound,
            UnitMoveArg::Random => UnitMove::Random,
        }
    }
}

fn positive_seconds(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|_| format!("`{s}` is not a number"))?;
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err("the time limit must be a positive number of seconds".into())
    }
}

/// Engine settings shared by `solve` and `bench`.
#[derive(Args, Clone, Debug)]
pub struct EngineArgs {
    /// Wall-clock budget in seconds.
    #[arg(long, default_value = "10", value_parser = positive_seconds)]
    pub time_limit: f64,
    /// Iteration budget. Replaces the time limit and makes the run
    /// deterministic; trace timestamps become step counts.
    #[arg(long)]
    pub step_limit: Option<u64>,
    #[arg(long)]
    pub beta: Option<f64>,
    /// Smoothing probability of the weighting scheme.
    #[arg(long)]
    pub sp: Option<f64>,
    /// Violated rows sampled per Search/Restore step.
    #[arg(long)]
    pub cv: Option<usize>,
    /// Candidate operations kept from violated rows.
    #[arg(long)]
    pub ov: Option<usize>,
    /// Satisfied rows sampled per Restore step.
    #[arg(long)]
    pub cs: Option<usize>,
    /// Candidate operations kept from satisfied rows.
    #[arg(long)]
    pub os: Option<usize>,
    /// Row samples for the random fallback.
    #[arg(long = "or")]
    pub or_: Option<usize>,
    /// Steps without improvement before a restart.
    #[arg(long)]
    pub restart_steps: Option<u64>,
    /// Perturbation used in Improve mode when no lift move helps.
    #[arg(long, value_enum, default_value = "unit")]
    pub unit_move: UnitMoveArg,
    /// Replace the tight move by a fixed increment of this size.
    #[arg(long, hide = true)]
    pub fixed_increment: Option<i64>,
}

impl EngineArgs {
    pub fn params(&self, seed: u64) -> Params {
        let mut p = match self.step_limit {
            Some(s) => Params::with_step_limit(s),
            None => Params {
                time_limit: Some(Duration::from_secs_f64(self.time_limit)),
                ..Params::default()
            },
        };
        p.seed = seed;
        if let Some(v) = self.beta {
            p.beta = v;
        }
        if let Some(v) = self.sp {
            p.sp = v;
        }
        if let Some(v) = self.cv {
            p.cv = v;
        }
        if let Some(v) = self.ov {
            p.ov = v;
        }
        if let Some(v) = self.cs {
            p.cs = v;
        }
        if let Some(v) = self.os {
            p.os = v;
        }
        if let Some(v) = self.or_ {
            p.or = v;
        }
        if let Some(v) = self.restart_steps {
            p.restart_steps = v;
        }
        p.unit_move = self.unit_move.into();
        if let Some(inc) = self.fixed_increment {
            p.operator = MoveOperator::FixedIncrement(inc);
        }
        p
    }
}

/// Applies a `key=value` override to `p`. Used by bench presets.
pub fn apply_override(p: &mut Params, key: &str, value: &str) -> Result<(), String> {
    fn num<T: std::str::FromStr>(key: &str, v: &str) -> Result<T, String> {
        v.parse()
            .map_err(|_| format!("bad value `{v}` for `{key}`"))
    }
    match key {
        "beta" => p.beta = num(key, value)?,
        "sp" => p.sp = num(key, value)?,
        "cv" => p.cv = num(key, value)?,
        "ov" => p.ov = num(key, value)?,
        "cs" => p.cs = num(key, value)?,
        "os" => p.os = num(key, value)?,
        "or" => p.or = num(key, value)?,
        "restart_steps" | "restart-steps" => p.restart_steps = num(key, value)?,
        "tabu_base" | "tabu-base" => p.tabu_base = num(key, value)?,
        "tabu_rand" | "tabu-rand" => p.tabu_rand = num(key, value)?,
        "unit_move" | "unit-move" => {
            p.unit_move = UnitMoveArg::from_str(value, true)
                .map_err(|_| format!("bad unit move `{value}`"))?
                .into()
        }
        "fixed_increment" | "fixed-increment" => {
            p.operator = MoveOperator::FixedIncrement(num(key, value)?)
        }
        _ => return Err(format!("unknown parameter `{key}`")),
    }
    Ok(())
}
