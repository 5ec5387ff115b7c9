//! Runs a parsed script and collects one JSON object per command.

use std::collections::HashMap;
use std::path::Path;

use ialg_core::audit::{audit, RangeSpec};
use ialg_core::identities::{lookup, s_check_identity};
use ialg_core::special::{find_quasi_special, find_special};
use ialg_core::subs::{
    enumerate_ideals, enumerate_substructures, loop_centers, loop_subloop_family, normalizers, principal_isotope,
    smarandache_witness,
};
use ialg_core::{
    matrix_structure, new_loop, product, sym_structure, units_group, zn_group, zn_groupoid, zn_semigroup, Error,
    MatrixMode, SemigroupOp, Structure,
};
use serde_json::{Map, Value};

use crate::error::CliError;
use crate::export::{export_table, flat_table, render_table, table_json};
use crate::json;
use crate::script::{Command, LoopQuery, Script, StatementKind, StructureExpr, TableFormat};

pub const DEFAULT_MAX_ORDER: u128 = 1_000_000;

#[derive(Clone, Debug)]
pub struct Options {
    /// Largest structure order a definition may have.
    pub max_order: u128,
}

impl Default for Options {
    fn default() -> Self {
        Self { max_order: DEFAULT_MAX_ORDER }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub line: usize,
    pub message: String,
}

#[derive(Clone, Debug, Default)]
pub struct RunResult {
    pub outputs: Vec<Value>,
    pub diagnostics: Vec<Diagnostic>,
}

impl RunResult {
    /// 0 when nothing failed, 1 otherwise.
    pub fn status(&self) -> i32 {
        i32::from(!self.diagnostics.is_empty())
    }

    /// Newline-delimited JSON, or one pretty-printed array.
    pub fn render(&self, pretty: bool) -> String {
        if pretty {
            let doc = Value::Array(self.outputs.clone());
            format!("{}\n", serde_json::to_string_pretty(&doc).expect("values serialize"))
        } else {
            self.outputs.iter().map(|v| format!("{v}\n")).collect()
        }
    }
}

enum Binding {
    Built(Box<Structure>),
    Failed(usize),
}

struct Runner<'a> {
    opts: &'a Options,
    names: HashMap<String, Binding>,
}

impl Runner<'_> {
    fn get(&self, name: &str) -> Result<&Structure, CliError> {
        match self.names.get(name) {
            Some(Binding::Built(s)) => Ok(s),
            Some(Binding::Failed(line)) => {
                Err(CliError::Invalid(format!("'{name}' was not built (definition on line {line} failed)")))
            }
            None => Err(CliError::Invalid(format!("undefined name '{name}'"))),
        }
    }

    fn build(&self, expr: &StructureExpr) -> Result<Structure, CliError> {
        let s = match expr {
            StructureExpr::Semigroup { n, mul, flavor } => {
                let op = if *mul { SemigroupOp::Mul } else { SemigroupOp::Add };
                zn_semigroup(*n, op, flavor.core())?
            }
            StructureExpr::Groupoid { n, t, u, flavor } => zn_groupoid(*n, *t, *u, flavor.core())?,
            StructureExpr::Loop { n, m, flavor } => new_loop(*n, *m, flavor.core())?,
            StructureExpr::ZnGroup { n, flavor } => zn_group(*n, flavor.core())?,
            StructureExpr::Units { n, flavor } => units_group(*n, flavor.core())?,
            StructureExpr::Sym { k, group, flavor } => sym_structure(*k, *group, flavor.core())?,
            StructureExpr::Matrix { rows, cols, base, mul } => {
                let mode = if *mul { MatrixMode::Mul } else { MatrixMode::Entrywise };
                matrix_structure(*rows, *cols, self.get(base)?, mode)?
            }
            StructureExpr::Union(parts) => {
                let parts = parts.iter().map(|p| self.get(p).cloned()).collect::<Result<Vec<_>, _>>()?;
                product(&parts)?
            }
        };
        let order = s.order()?;
        if order > self.opts.max_order {
            return Err(Error::OrderTooLarge { order, cap: self.opts.max_order }.into());
        }
        Ok(s)
    }

    fn run(&self, cmd: &Command) -> Result<Map<String, Value>, CliError> {
        let target = cmd.target().map(|n| self.get(n)).transpose()?;
        let s = || target.expect("command has a target");
        Ok(match cmd {
            Command::Table { format, .. } => {
                let (labels, t) = flat_table(s(), self.opts.max_order)?;
                let mut m = Map::new();
                m.insert("format".into(), format.name().into());
                match format {
                    TableFormat::Json => {
                        if let Value::Object(o) = table_json(&labels, &t) {
                            m.extend(o);
                        }
                    }
                    TableFormat::Csv => {
                        m.insert("csv".into(), render_table(&labels, &t, *format)?.into());
                    }
                }
                m
            }
            Command::Classify { .. } => json::classify(s())?,
            Command::Check { identity, .. } => {
                let id = lookup(identity)?;
                json::verdict(s(), &id, &s_check_identity(s(), &id)?)?
            }
            Command::Find { kind, quasi, .. } => {
                let report = match quasi {
                    Some(mask) => find_quasi_special(s(), *kind, Some(mask))?,
                    None => find_special(s(), *kind)?,
                };
                json::special(s(), &report)
            }
            Command::Subs { class, max, .. } => json::subs(s(), &enumerate_substructures(s(), *class, *max)?)?,
            Command::Ideals { side, .. } => {
                let mut m = Map::new();
                m.insert("side".into(), side.name().into());
                m.extend(json::subs(s(), &enumerate_ideals(s(), *side)?)?);
                m
            }
            Command::Smarandache { .. } => json::witness(s(), &smarandache_witness(s())?)?,
            Command::LoopInfo { query, .. } => self.loop_info(s(), query)?,
            Command::Audit { claim, range } => {
                let spec = RangeSpec::parse(range.as_deref().unwrap_or(""))?;
                json::audit(&audit(claim, &spec)?)?
            }
            Command::Export { path, .. } => {
                let format = export_table(s(), Path::new(path), self.opts.max_order)?;
                let mut m = Map::new();
                m.insert("path".into(), path.clone().into());
                m.insert("format".into(), format.name().into());
                m
            }
        })
    }

    fn loop_info(&self, s: &Structure, query: &LoopQuery) -> Result<Map<String, Value>, CliError> {
        if s.is_product() {
            return Err(CliError::Invalid("loopinfo needs a single loop, not a union".into()));
        }
        let m = s.magma(0)?;
        let interval = s.components()[0].flavor.is_interval();
        let index = |tok: &str| {
            m.elements()
                .iter()
                .position(|x| x.label(true) == tok || x.label(false) == tok)
                .ok_or_else(|| CliError::Invalid(format!("'{tok}' is not an element of {}", s.name())))
        };
        let mut out = Map::new();
        match query {
            LoopQuery::Centers => {
                out.insert("query".into(), "centers".into());
                out.extend(json::centers(m, interval, &loop_centers(m)?));
            }
            LoopQuery::Subloops => {
                out.insert("query".into(), "subloops".into());
                out.extend(json::subloops(m, interval, &loop_subloop_family(s)?));
            }
            LoopQuery::Normalizers(h) => {
                let mut idx = h.iter().map(|t| index(t)).collect::<Result<Vec<_>, _>>()?;
                idx.sort_unstable();
                idx.dedup();
                out.insert("query".into(), "normalizers".into());
                out.extend(json::normalizers(m, interval, &idx, &normalizers(m, &idx)?));
            }
            LoopQuery::Isotope(a, b) => {
                let (a, b) = (m.element(index(a)?).clone(), m.element(index(b)?).clone());
                let iso = principal_isotope(m, &a, &b)?;
                let labels: Vec<String> = iso.elements().iter().map(|x| x.label(interval)).collect();
                out.insert("query".into(), "isotope".into());
                out.insert("a".into(), a.label(interval).into());
                out.insert("b".into(), b.label(interval).into());
                if let Value::Object(o) = table_json(&labels, iso.table()?) {
                    out.extend(o);
                }
            }
        }
        Ok(out)
    }
}

/// Runs every statement in order. A failing statement is reported and the
/// run continues; later commands on a failed name fail too.
pub fn execute(script: &Script, opts: &Options) -> RunResult {
    let mut runner = Runner { opts, names: HashMap::new() };
    let mut result = RunResult::default();
    for st in &script.statements {
        let mut head = Map::new();
        head.insert("line".into(), st.line.into());
        let outcome = match &st.kind {
            StatementKind::Let(name, expr) => match runner.build(expr) {
                Ok(s) => {
                    runner.names.insert(name.clone(), Binding::Built(Box::new(s)));
                    continue;
                }
                Err(e) => {
                    runner.names.insert(name.clone(), Binding::Failed(st.line));
                    head.insert("define".into(), name.clone().into());
                    Err(e)
                }
            },
            StatementKind::Command(cmd) => {
                head.insert("command".into(), cmd.verb().into());
                if let Some(t) = cmd.target() {
                    head.insert("name".into(), t.into());
                }
                runner.run(cmd)
            }
        };
        match outcome {
            Ok(body) => head.extend(body),
            Err(e) => {
                let message = e.to_string();
                head.insert("error".into(), message.clone().into());
                result.diagnostics.push(Diagnostic { line: st.line, message });
            }
        }
        result.outputs.push(Value::Object(head));
    }
    result
}
