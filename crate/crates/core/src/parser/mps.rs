//! Free-format MPS reader.
//!
//! Parsing happens in two passes: [`parse_document`] turns text into an
//! [`MpsDocument`] that mirrors the file's sections, and [`normalize`]
//! rewrites that into an [`Instance`] with only `<=` rows and a minimized
//! objective.

use std::collections::HashMap;

use serde::Serialize;

use super::MpsError;
use crate::model::{snap_ceil, snap_floor, Instance, InstanceBuilder, FEAS_TOL};

/// Bound magnitudes at or above this value are read as infinite.
pub const MPS_INFINITY: f64 = 1e20;
/// Largest finite bound magnitude representable exactly in `f64`.
const MAX_EXACT: f64 = 9_007_199_254_740_992.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RowSense {
    N,
    L,
    G,
    E,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MpsRow {
    pub name: String,
    pub sense: RowSense,
    pub line: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MpsColumn {
    pub name: String,
    pub integer: bool,
    pub line: usize,
}

/// Target of a COLUMNS/RHS entry.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum RowRef {
    Objective,
    Row(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BoundKind {
    Up,
    Lo,
    Fx,
    Fr,
    Mi,
    Pl,
    Bv,
    Li,
    Ui,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MpsBound {
    pub kind: BoundKind,
    pub column: usize,
    pub value: Option<f64>,
    pub line: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct MpsDocument {
    pub name: Option<String>,
    pub maximize: bool,
    pub objective_row: String,
    /// Constraint rows (the objective row is not included).
    pub rows: Vec<MpsRow>,
    pub columns: Vec<MpsColumn>,
    /// `(column, row, value)` in file order; duplicates are kept here and
    /// summed during normalization.
    pub entries: Vec<(usize, RowRef, f64)>,
    pub rhs: Vec<(RowRef, f64)>,
    pub ranges: Vec<(usize, f64)>,
    pub bounds: Vec<MpsBound>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Section {
    None,
    Name,
    ObjSense,
    Rows,
    Columns,
    Rhs,
    Ranges,
    Bounds,
    End,
}

fn syntax(line: usize, msg: impl Into<String>) -> MpsError {
    MpsError::Parse {
        line,
        msg: msg.into(),
    }
}

fn number(tok: &str, line: usize) -> Result<f64, MpsError> {
    let v: f64 = tok
        .parse()
        .map_err(|_| syntax(line, format!("expected a number, found `{tok}`")))?;
    if v.is_nan() {
        return Err(syntax(line, "NaN is not a valid number"));
    }
    Ok(v)
}

struct Reader {
    doc: MpsDocument,
    row_index: HashMap<String, RowRef>,
    col_index: HashMap<String, usize>,
    in_integer_block: bool,
    seen_objective: bool,
}

impl Reader {
    fn row_ref(&self, name: &str, line: usize) -> Result<RowRef, MpsError> {
        self.row_index
            .get(name)
            .copied()
            .ok_or_else(|| syntax(line, format!("unknown row `{name}`")))
    }

    fn column(&mut self, name: &str, line: usize) -> usize {
        if let Some(&k) = self.col_index.get(name) {
            if self.in_integer_block {
                self.doc.columns[k].integer = true;
            }
            return k;
        }
        let k = self.doc.columns.len();
        self.doc.columns.push(MpsColumn {
            name: name.to_string(),
            integer: self.in_integer_block,
            line,
        });
        self.col_index.insert(name.to_string(), k);
        k
    }

    fn row_line(&mut self, toks: &[&str], line: usize) -> Result<(), MpsError> {
        if toks.len() != 2 {
            return Err(syntax(line, "ROWS entries are `<sense> <name>`"));
        }
        let sense = match toks[0].to_ascii_uppercase().as_str() {
            "N" => RowSense::N,
            "L" => RowSense::L,
            "G" => RowSense::G,
            "E" => RowSense::E,
            other => return Err(syntax(line, format!("unknown row sense `{other}`"))),
        };
        let name = toks[1];
        if self.row_index.contains_key(name) {
            return Err(syntax(line, format!("duplicate row `{name}`")));
        }
        if sense == RowSense::N {
            if self.seen_objective {
                return Err(syntax(line, "more than one objective (N) row"));
            }
            self.seen_objective = true;
            self.doc.objective_row = name.to_string();
            self.row_index.insert(name.to_string(), RowRef::Objective);
        } else {
            self.row_index
                .insert(name.to_string(), RowRef::Row(self.doc.rows.len()));
            self.doc.rows.push(MpsRow {
                name: name.to_string(),
                sense,
                line,
            });
        }
        Ok(())
    }

    fn column_line(&mut self, toks: &[&str], line: usize) -> Result<(), MpsError> {
        if toks.len() >= 3 && toks[1].trim_matches('\'').eq_ignore_ascii_case("MARKER") {
            let marker = toks[2].trim_matches('\'').to_ascii_uppercase();
            match marker.as_str() {
                "INTORG" => self.in_integer_block = true,
                "INTEND" => self.in_integer_block = false,
                other => return Err(syntax(line, format!("unknown marker `{other}`"))),
            }
            return Ok(());
        }
        if toks.len() != 3 && toks.len() != 5 {
            return Err(syntax(
                line,
                "COLUMNS entries are `<col> <row> <value> [<row> <value>]`",
            ));
        }
        let col = self.column(toks[0], line);
        for pair in toks[1..].chunks(2) {
            let row = self.row_ref(pair[0], line)?;
            let v = number(pair[1], line)?;
            if !v.is_finite() {
                return Err(syntax(line, "coefficients must be finite"));
            }
            self.doc.entries.push((col, row, v));
        }
        Ok(())
    }

    /// RHS and RANGES lines with an optional leading set name.
    fn pairs<'t>(toks: &'t [&'t str], line: usize, what: &str) -> Result<&'t [&'t str], MpsError> {
        match toks.len() {
            2 | 4 => Ok(toks),
            3 | 5 => Ok(&toks[1..]),
            _ => Err(syntax(line, format!("malformed {what} entry"))),
        }
    }

    fn rhs_line(&mut self, toks: &[&str], line: usize) -> Result<(), MpsError> {
        for pair in Self::pairs(toks, line, "RHS")?.chunks(2) {
            let row = self.row_ref(pair[0], line)?;
            let v = number(pair[1], line)?;
            if !v.is_finite() {
                return Err(syntax(line, "right-hand sides must be finite"));
            }
            self.doc.rhs.push((row, v));
        }
        Ok(())
    }

    fn range_line(&mut self, toks: &[&str], line: usize) -> Result<(), MpsError> {
        for pair in Self::pairs(toks, line, "RANGES")?.chunks(2) {
            let row = match self.row_ref(pair[0], line)? {
                RowRef::Row(k) => k,
                RowRef::Objective => {
                    return Err(MpsError::Unsupported {
                        line: Some(line),
                        what: "RANGES on the objective row".into(),
                    })
                }
            };
            let v = number(pair[1], line)?;
            if !v.is_finite() {
                return Err(syntax(line, "ranges must be finite"));
            }
            self.doc.ranges.push((row, v));
        }
        Ok(())
    }

    fn bound_line(&mut self, toks: &[&str], line: usize) -> Result<(), MpsError> {
        let kind = match toks.first().map(|t| t.to_ascii_uppercase()).as_deref() {
            Some("UP") => BoundKind::Up,
            Some("LO") => BoundKind::Lo,
            Some("FX") => BoundKind::Fx,
            Some("FR") => BoundKind::Fr,
            Some("MI") => BoundKind::Mi,
            Some("PL") => BoundKind::Pl,
            Some("BV") => BoundKind::Bv,
            Some("LI") => BoundKind::Li,
            Some("UI") => BoundKind::Ui,
            Some("SC") => {
                return Err(MpsError::Unsupported {
                    line: Some(line),
                    what: "semi-continuous bound (SC)".into(),
                })
            }
            Some(other) => return Err(syntax(line, format!("unknown bound type `{other}`"))),
            None => return Err(syntax(line, "empty BOUNDS entry")),
        };
        let needs_value = matches!(
            kind,
            BoundKind::Up | BoundKind::Lo | BoundKind::Fx | BoundKind::Li | BoundKind::Ui
        );
        // with or without the bound-set name
        let (col_tok, val_tok) = match (needs_value, toks.len()) {
            (true, 4) => (toks[2], Some(toks[3])),
            (true, 3) => (toks[1], Some(toks[2])),
            (false, 3) => (toks[2], None),
            (false, 2) => (toks[1], None),
            (false, 4) if kind == BoundKind::Bv => (toks[2], None),
            _ => return Err(syntax(line, "malformed BOUNDS entry")),
        };
        let column = *self
            .col_index
            .get(col_tok)
            .ok_or_else(|| syntax(line, format!("unknown column `{col_tok}`")))?;
        let value = val_tok.map(|t| number(t, line)).transpose()?;
        self.doc.bounds.push(MpsBound {
            kind,
            column,
            value,
            line,
        });
        Ok(())
    }
}

const UNSUPPORTED_SECTIONS: &[&str] = &[
    "SOS",
    "INDICATORS",
    "QUADOBJ",
    "QMATRIX",
    "QSECTION",
    "QCMATRIX",
    "CSECTION",
    "PWLOBJ",
    "PWLNAM",
    "GENCONS",
];

/// Parses free-format MPS text into its section structure.
pub fn parse_document(text: &str) -> Result<MpsDocument, MpsError> {
    let mut r = Reader {
        doc: MpsDocument::default(),
        row_index: HashMap::new(),
        col_index: HashMap::new(),
        in_integer_block: false,
        seen_objective: false,
    };
    let mut section = Section::None;

    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        if raw.starts_with('*') || raw.trim().is_empty() {
            continue;
        }
        let toks: Vec<&str> = raw.split_whitespace().collect();
        let is_header = !raw.starts_with(char::is_whitespace);

        if is_header {
            let head = toks[0].to_ascii_uppercase();
            section = match head.as_str() {
                "NAME" => {
                    r.doc.name = toks.get(1).map(|s| s.to_string());
                    Section::Name
                }
                "OBJSENSE" => {
                    if let Some(s) = toks.get(1) {
                        r.doc.maximize = parse_sense(s, line)?;
                    }
                    Section::ObjSense
                }
                "ROWS" => Section::Rows,
                "COLUMNS" => Section::Columns,
                "RHS" => Section::Rhs,
                "RANGES" => Section::Ranges,
                "BOUNDS" => Section::Bounds,
                "ENDATA" => Section::End,
                other if UNSUPPORTED_SECTIONS.contains(&other) => {
                    return Err(MpsError::Unsupported {
                        line: Some(line),
                        what: format!("{other} section"),
                    })
                }
                // Some writers put the OBJSENSE value at column 1.
                "MAX" | "MAXIMIZE" | "MIN" | "MINIMIZE" if section == Section::ObjSense => {
                    r.doc.maximize = parse_sense(&head, line)?;
                    Section::ObjSense
                }
                other => return Err(syntax(line, format!("unknown section `{other}`"))),
            };
            if section == Section::End {
                break;
            }
            continue;
        }

        match section {
            Section::None | Section::Name => {
                return Err(syntax(line, "data line outside of any section"))
            }
            Section::End => unreachable!(),
            Section::ObjSense => r.doc.maximize = parse_sense(toks[0], line)?,
            Section::Rows => r.row_line(&toks, line)?,
            Section::Columns => r.column_line(&toks, line)?,
            Section::Rhs => r.rhs_line(&toks, line)?,
            Section::Ranges => r.range_line(&toks, line)?,
            Section::Bounds => r.bound_line(&toks, line)?,
        }
    }

    if !r.seen_objective {
        return Err(syntax(0, "no objective (N) row"));
    }
    Ok(r.doc)
}

fn parse_sense(tok: &str, line: usize) -> Result<bool, MpsError> {
    match tok.to_ascii_uppercase().as_str() {
        "MAX" | "MAXIMIZE" => Ok(true),
        "MIN" | "MINIMIZE" => Ok(false),
        other => Err(syntax(line, format!("unknown objective sense `{other}`"))),
    }
}

#[derive(Clone, Copy, Debug)]
struct ColBounds {
    lower: f64,
    upper: f64,
    integer: bool,
    lower_set: bool,
}

/// Resolved real-valued bounds of every column, in file order of BOUNDS.
pub fn column_bounds(doc: &MpsDocument) -> Vec<(f64, f64, bool)> {
    let mut b: Vec<ColBounds> = doc
        .columns
        .iter()
        .map(|c| ColBounds {
            lower: 0.0,
            upper: f64::INFINITY,
            integer: c.integer,
            lower_set: false,
        })
        .collect();
    for bd in &doc.bounds {
        let cb = &mut b[bd.column];
        let v = bd.value.unwrap_or(0.0);
        match bd.kind {
            BoundKind::Up | BoundKind::Ui => {
                cb.upper = v;
                // a negative upper bound with no explicit lower frees the lower side
                if v < 0.0 && !cb.lower_set && cb.lower == 0.0 {
                    cb.lower = f64::NEG_INFINITY;
                }
                cb.integer |= bd.kind == BoundKind::Ui;
            }
            BoundKind::Lo | BoundKind::Li => {
                cb.lower = v;
                cb.lower_set = true;
                cb.integer |= bd.kind == BoundKind::Li;
            }
            BoundKind::Fx => {
                cb.lower = v;
                cb.upper = v;
                cb.lower_set = true;
                cb.integer = true;
            }
            BoundKind::Fr => {
                cb.lower = f64::NEG_INFINITY;
                cb.upper = f64::INFINITY;
                cb.lower_set = true;
            }
            BoundKind::Mi => {
                cb.lower = f64::NEG_INFINITY;
                cb.lower_set = true;
            }
            BoundKind::Pl => cb.upper = f64::INFINITY,
            BoundKind::Bv => {
                cb.lower = 0.0;
                cb.upper = 1.0;
                cb.lower_set = true;
                cb.integer = true;
            }
        }
    }
    b.iter().map(|c| (c.lower, c.upper, c.integer)).collect()
}

fn integer_bound(v: f64, lower: bool, col: &str) -> Result<Option<i64>, MpsError> {
    if v.abs() >= MPS_INFINITY {
        return Ok(None);
    }
    let r = if lower { snap_ceil(v) } else { snap_floor(v) };
    if r.abs() > MAX_EXACT {
        return Err(MpsError::Parse {
            line: 0,
            msg: format!("bound {v} of column `{col}` is too large"),
        });
    }
    Ok(Some(r as i64))
}

/// `[lo, hi]` interval of each constraint row's activity.
pub fn row_intervals(doc: &MpsDocument) -> Vec<(f64, f64)> {
    let mut rhs = vec![0.0; doc.rows.len()];
    for &(r, v) in &doc.rhs {
        if let RowRef::Row(k) = r {
            rhs[k] = v;
        }
    }
    let mut range: Vec<Option<f64>> = vec![None; doc.rows.len()];
    for &(k, v) in &doc.ranges {
        range[k] = Some(v);
    }
    doc.rows
        .iter()
        .enumerate()
        .map(|(k, row)| {
            let b = rhs[k];
            match (row.sense, range[k]) {
                (RowSense::L, None) => (f64::NEG_INFINITY, b),
                (RowSense::L, Some(r)) => (b - r.abs(), b),
                (RowSense::G, None) => (b, f64::INFINITY),
                (RowSense::G, Some(r)) => (b, b + r.abs()),
                (RowSense::E, None) => (b, b),
                (RowSense::E, Some(r)) if r >= 0.0 => (b, b + r),
                (RowSense::E, Some(r)) => (b + r, b),
                (RowSense::N, _) => (f64::NEG_INFINITY, f64::INFINITY),
            }
        })
        .collect()
}

/// Rewrites a parsed document into `min c·x, Ax <= b` form.
pub fn normalize(doc: &MpsDocument) -> Result<Instance, MpsError> {
    let bounds = column_bounds(doc);
    let mut b = InstanceBuilder::new();

    let mut obj = vec![0.0; doc.columns.len()];
    let mut row_terms: Vec<HashMap<usize, f64>> = vec![HashMap::new(); doc.rows.len()];
    for &(col, row, v) in &doc.entries {
        match row {
            RowRef::Objective => obj[col] += v,
            RowRef::Row(k) => *row_terms[k].entry(col).or_insert(0.0) += v,
        }
    }
    let sign = if doc.maximize { -1.0 } else { 1.0 };

    for (j, col) in doc.columns.iter().enumerate() {
        let (lo, hi, integer) = bounds[j];
        if !integer {
            return Err(MpsError::Unsupported {
                line: Some(col.line),
                what: format!("continuous column `{}`", col.name),
            });
        }
        let lower = integer_bound(lo, true, &col.name)?;
        let upper = integer_bound(hi, false, &col.name)?;
        if let (Some(l), Some(u)) = (lower, upper) {
            if l > u {
                return Err(MpsError::Parse {
                    line: col.line,
                    msg: format!(
                        "column `{}` has no integer value within its bounds",
                        col.name
                    ),
                });
            }
        }
        b.add_var(col.name.clone(), lower, upper, sign * obj[j] + 0.0);
    }

    let offset: f64 = doc
        .rhs
        .iter()
        .filter(|(r, _)| *r == RowRef::Objective)
        .map(|&(_, v)| -v)
        .sum();
    // stored in the minimized sense so that reported = sign * (internal + offset)
    b.objective_offset(sign * offset);
    b.maximize(doc.maximize);

    for (k, (row, (lo, hi))) in doc.rows.iter().zip(row_intervals(doc)).enumerate() {
        let mut terms: Vec<(usize, f64)> = row_terms[k]
            .iter()
            .filter(|(_, &a)| a != 0.0)
            .map(|(&j, &a)| (j, a))
            .collect();
        terms.sort_by_key(|&(j, _)| j);
        if terms.is_empty() {
            if lo > FEAS_TOL || hi < -FEAS_TOL {
                return Err(MpsError::Parse {
                    line: row.line,
                    msg: format!(
                        "row `{}` has no coefficients and cannot be satisfied",
                        row.name
                    ),
                });
            }
            continue;
        }
        let two_sided = lo.is_finite() && hi.is_finite();
        let (ub_name, lb_name) = if two_sided {
            (format!("{}:ub", row.name), format!("{}:lb", row.name))
        } else {
            (row.name.clone(), row.name.clone())
        };
        if hi.is_finite() {
            b.add_row(ub_name, terms.iter().copied(), hi);
        }
        if lo.is_finite() {
            b.add_row(lb_name, terms.iter().map(|&(j, a)| (j, -a)), -lo);
        }
    }

    b.build().map_err(MpsError::Model)
}

/// Parses MPS text straight into a normalized [`Instance`].
pub fn parse_mps(text: &str) -> Result<Instance, MpsError> {
    normalize(&parse_document(text)?)
}
