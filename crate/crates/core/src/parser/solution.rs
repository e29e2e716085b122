use std::collections::HashMap;
use std::fmt::Write;

use super::MpsError;
use crate::model::{Assignment, Instance};

/// Writes a solution: one `=obj=` line in the instance's original sense,
/// then `name value` for every variable.
pub fn write_solution(inst: &Instance, a: &Assignment, obj: f64) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "=obj= {}", inst.reported_objective(obj));
    for (j, name) in inst.var_names().iter().enumerate() {
        let _ = writeln!(out, "{name} {}", a[j]);
    }
    out
}

/// Contents of a solution file.
#[derive(Clone, Debug, PartialEq)]
pub struct SolutionFile {
    pub objective: Option<f64>,
    pub values: Vec<(String, i64)>,
}

impl SolutionFile {
    /// Maps named values onto `inst`'s variables. Variables missing from the
    /// file take the value 0.
    pub fn to_assignment(&self, inst: &Instance) -> Result<Assignment, MpsError> {
        let index: HashMap<&str, usize> = inst
            .var_names()
            .iter()
            .enumerate()
            .map(|(j, n)| (n.as_str(), j))
            .collect();
        let mut a = Assignment::zeros(inst.num_vars());
        for (name, v) in &self.values {
            let j = *index.get(name.as_str()).ok_or_else(|| MpsError::Parse {
                line: 0,
                msg: format!("unknown variable `{name}`"),
            })?;
            a.0[j] = *v;
        }
        Ok(a)
    }
}

/// Reads a MIPLIB-style `.sol` file. Values must be integral.
pub fn read_solution(text: &str) -> Result<SolutionFile, MpsError> {
    let mut objective = None;
    let mut values = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let toks: Vec<&str> = raw.split_whitespace().collect();
        if toks.is_empty() {
            continue;
        }
        let err = |msg: String| MpsError::Parse { line, msg };
        if toks[0] == "=obj=" {
            if objective.is_some() {
                return Err(err("more than one `=obj=` line".into()));
            }
            let tok = toks
                .get(1)
                .ok_or_else(|| err("`=obj=` without a value".into()))?;
            let v: f64 = tok
                .parse()
                .map_err(|_| err(format!("bad objective `{tok}`")))?;
            objective = Some(v);
            continue;
        }
        if toks.len() < 2 {
            return Err(err("expected `name value`".into()));
        }
        let v: f64 = toks[1]
            .parse()
            .map_err(|_| err(format!("bad value `{}`", toks[1])))?;
        if !v.is_finite() || v.fract() != 0.0 || v.abs() > 9.0e15 {
            return Err(err(format!("value `{}` is not an integer", toks[1])));
        }
        values.push((toks[0].to_string(), v as i64));
    }
    Ok(SolutionFile { objective, values })
}
