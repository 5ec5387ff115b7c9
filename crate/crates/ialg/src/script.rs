//! The line-oriented script language.
//!
//! One statement per line, `#` starts a comment. A statement either binds a
//! name to a structure or runs a command against previously bound names.

use std::collections::HashSet;
use std::fmt;

use ialg_core::special::Kind;
use ialg_core::subs::Side;
use ialg_core::ClassLabel;

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flavor {
    Interval,
    Plain,
}

impl Flavor {
    pub fn core(self) -> ialg_core::Flavor {
        match self {
            Flavor::Interval => ialg_core::Flavor::Interval,
            Flavor::Plain => ialg_core::Flavor::Plain,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StructureExpr {
    Semigroup { n: u64, mul: bool, flavor: Flavor },
    Groupoid { n: u64, t: i64, u: i64, flavor: Flavor },
    Loop { n: u64, m: u64, flavor: Flavor },
    ZnGroup { n: u64, flavor: Flavor },
    Units { n: u64, flavor: Flavor },
    Sym { k: usize, group: bool, flavor: Flavor },
    Matrix { rows: usize, cols: usize, base: String, mul: bool },
    Union(Vec<String>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableFormat {
    Csv,
    Json,
}

impl TableFormat {
    pub fn name(self) -> &'static str {
        match self {
            TableFormat::Csv => "csv",
            TableFormat::Json => "json",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LoopQuery {
    Centers,
    Subloops,
    Normalizers(Vec<String>),
    Isotope(String, String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Table { name: String, format: TableFormat },
    Classify { name: String },
    Check { name: String, identity: String },
    Find { name: String, kind: Kind, quasi: Option<Vec<bool>> },
    Subs { name: String, class: Option<ClassLabel>, max: Option<u128> },
    Ideals { name: String, side: Side },
    Smarandache { name: String },
    LoopInfo { name: String, query: LoopQuery },
    Audit { claim: String, range: Option<String> },
    Export { name: String, path: String },
}

impl Command {
    pub fn verb(&self) -> &'static str {
        match self {
            Command::Table { .. } => "table",
            Command::Classify { .. } => "classify",
            Command::Check { .. } => "check",
            Command::Find { .. } => "find",
            Command::Subs { .. } => "subs",
            Command::Ideals { .. } => "ideals",
            Command::Smarandache { .. } => "smarandache",
            Command::LoopInfo { .. } => "loopinfo",
            Command::Audit { .. } => "audit",
            Command::Export { .. } => "export",
        }
    }

    /// The structure the command reads, if any.
    pub fn target(&self) -> Option<&str> {
        match self {
            Command::Table { name, .. }
            | Command::Classify { name }
            | Command::Check { name, .. }
            | Command::Find { name, .. }
            | Command::Subs { name, .. }
            | Command::Ideals { name, .. }
            | Command::Smarandache { name }
            | Command::LoopInfo { name, .. }
            | Command::Export { name, .. } => Some(name),
            Command::Audit { .. } => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StatementKind {
    Let(String, StructureExpr),
    Command(Command),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Statement {
    /// 1-based source line.
    pub line: usize,
    pub kind: StatementKind,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Script {
    pub statements: Vec<Statement>,
}

/// A whitespace-separated word with its 1-based column.
#[derive(Clone, Copy, Debug)]
struct Token<'a> {
    text: &'a str,
    col: usize,
}

fn tokenize(line: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices() {
        match (c.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push(Token { text: &line[s..i], col: line[..s].chars().count() + 1 });
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push(Token { text: &line[s..], col: line[..s].chars().count() + 1 });
    }
    out
}

fn strip_comment(line: &str) -> &str {
    line.split_once('#').map_or(line, |(code, _)| code)
}

fn valid_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

struct Cursor<'a> {
    line: usize,
    tokens: Vec<Token<'a>>,
    pos: usize,
    /// Column just past the last token, for "expected more" errors.
    end: usize,
}

impl<'a> Cursor<'a> {
    fn err(&self, col: usize, msg: impl Into<String>) -> CliError {
        CliError::Parse { line: self.line, col, msg: msg.into() }
    }

    fn peek(&self) -> Option<Token<'a>> {
        self.tokens.get(self.pos).copied()
    }

    fn next(&mut self, what: &str) -> Result<Token<'a>, CliError> {
        let t = self.peek().ok_or_else(|| self.err(self.end, format!("expected {what}")))?;
        self.pos += 1;
        Ok(t)
    }

    fn keyword(&mut self, options: &[&str]) -> Result<Token<'a>, CliError> {
        let what = options.join("|");
        let t = self.next(&what)?;
        if options.contains(&t.text) {
            Ok(t)
        } else {
            Err(self.err(t.col, format!("expected {what}, found '{}'", t.text)))
        }
    }

    fn number<T: std::str::FromStr>(&mut self, what: &str) -> Result<T, CliError> {
        let t = self.next(what)?;
        t.text
            .parse()
            .map_err(|_| self.err(t.col, format!("expected {what}, found '{}'", t.text)))
    }

    fn name(&mut self) -> Result<Token<'a>, CliError> {
        let t = self.next("a name")?;
        if valid_name(t.text) {
            Ok(t)
        } else {
            Err(self.err(t.col, format!("'{}' is not a valid name", t.text)))
        }
    }

    fn flavor(&mut self) -> Result<Flavor, CliError> {
        match self.peek().map(|t| t.text) {
            Some("interval") => {
                self.pos += 1;
                Ok(Flavor::Interval)
            }
            Some("plain") => {
                self.pos += 1;
                Ok(Flavor::Plain)
            }
            _ => Ok(Flavor::Interval),
        }
    }

    fn finish(&self) -> Result<(), CliError> {
        match self.peek() {
            Some(t) => Err(self.err(t.col, format!("unexpected '{}'", t.text))),
            None => Ok(()),
        }
    }
}

/// Parses a script; names must be bound before use.
pub fn parse_script(text: &str) -> Result<Script, CliError> {
    parse_lines(text.lines())
}

/// Parses `-e` input, where `;` separates statements. Each statement
/// counts as one line.
pub fn parse_inline(text: &str) -> Result<Script, CliError> {
    parse_lines(text.split(';'))
}

fn parse_lines<'a>(lines: impl Iterator<Item = &'a str>) -> Result<Script, CliError> {
    let mut defined: HashSet<String> = HashSet::new();
    let mut statements = Vec::new();
    for (i, raw) in lines.enumerate() {
        let code = strip_comment(raw);
        let tokens = tokenize(code);
        if tokens.is_empty() {
            continue;
        }
        let end = code.trim_end().chars().count() + 1;
        let mut cur = Cursor { line: i + 1, tokens, pos: 0, end };
        let kind = parse_statement(&mut cur, &defined)?;
        cur.finish()?;
        if let StatementKind::Let(name, _) = &kind {
            defined.insert(name.clone());
        }
        statements.push(Statement { line: i + 1, kind });
    }
    Ok(Script { statements })
}

fn parse_statement(cur: &mut Cursor<'_>, defined: &HashSet<String>) -> Result<StatementKind, CliError> {
    let is_let = cur.tokens.get(1).is_some_and(|t| t.text == "=");
    if is_let {
        let name = cur.name()?;
        cur.pos += 1;
        let expr = parse_expr(cur, defined)?;
        return Ok(StatementKind::Let(name.text.to_string(), expr));
    }
    Ok(StatementKind::Command(parse_command(cur, defined)?))
}

fn bound(cur: &mut Cursor<'_>, defined: &HashSet<String>) -> Result<String, CliError> {
    let t = cur.name()?;
    if defined.contains(t.text) {
        Ok(t.text.to_string())
    } else {
        Err(CliError::UndefinedName { line: cur.line, col: t.col, name: t.text.to_string() })
    }
}

fn parse_expr(cur: &mut Cursor<'_>, defined: &HashSet<String>) -> Result<StructureExpr, CliError> {
    let head = cur.keyword(&["semigroup", "groupoid", "loop", "group", "sym", "matrix", "union"])?;
    Ok(match head.text {
        "semigroup" => {
            cur.keyword(&["zmod"])?;
            let n = cur.number("a modulus")?;
            let mul = cur.keyword(&["add", "mul"])?.text == "mul";
            StructureExpr::Semigroup { n, mul, flavor: cur.flavor()? }
        }
        "groupoid" => {
            cur.keyword(&["zmod"])?;
            let n = cur.number("a modulus")?;
            let t = cur.number("an integer t")?;
            let u = cur.number("an integer u")?;
            StructureExpr::Groupoid { n, t, u, flavor: cur.flavor()? }
        }
        "loop" => {
            let n = cur.number("an order n")?;
            let m = cur.number("a parameter m")?;
            StructureExpr::Loop { n, m, flavor: cur.flavor()? }
        }
        "group" => {
            let units = cur.keyword(&["zmod", "units"])?.text == "units";
            let n = cur.number("a modulus")?;
            let flavor = cur.flavor()?;
            if units {
                StructureExpr::Units { n, flavor }
            } else {
                StructureExpr::ZnGroup { n, flavor }
            }
        }
        "sym" => {
            let k = cur.number("a degree")?;
            let group = cur.keyword(&["group", "monoid"])?.text == "group";
            StructureExpr::Sym { k, group, flavor: cur.flavor()? }
        }
        "matrix" => {
            let rows = cur.number("a row count")?;
            let cols = cur.number("a column count")?;
            cur.keyword(&["of"])?;
            let base = bound(cur, defined)?;
            let mul = cur.keyword(&["entrywise", "mul"])?.text == "mul";
            StructureExpr::Matrix { rows, cols, base, mul }
        }
        _ => {
            let mut parts = vec![bound(cur, defined)?];
            while cur.peek().is_some() {
                parts.push(bound(cur, defined)?);
            }
            StructureExpr::Union(parts)
        }
    })
}

/// Splits `e,1,[0,8]` at commas outside brackets.
fn split_elements(text: &str) -> Vec<String> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0usize, 0);
    for (i, c) in text.char_indices() {
        match c {
            '[' | '(' => depth += 1,
            ']' | ')' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => {
                out.push(&text[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&text[start..]);
    out.into_iter().filter(|s| !s.is_empty()).map(str::to_string).collect()
}

fn parse_mask(cur: &Cursor<'_>, t: Token<'_>) -> Result<Vec<bool>, CliError> {
    let bits: Vec<bool> = t
        .text
        .chars()
        .filter(|&c| c != ',')
        .map(|c| match c {
            '1' => Ok(true),
            '0' => Ok(false),
            _ => Err(cur.err(t.col, format!("mask '{}' must be made of 0 and 1", t.text))),
        })
        .collect::<Result<_, _>>()?;
    if bits.is_empty() {
        return Err(cur.err(t.col, "empty mask"));
    }
    Ok(bits)
}

fn parse_command(cur: &mut Cursor<'_>, defined: &HashSet<String>) -> Result<Command, CliError> {
    let verbs = [
        "table", "classify", "check", "find", "subs", "ideals", "smarandache", "loopinfo", "audit", "export",
    ];
    let verb = cur.keyword(&verbs)?;
    let cmd = match verb.text {
        "table" => {
            let name = bound(cur, defined)?;
            let mut format = TableFormat::Json;
            if cur.peek().is_some() {
                cur.keyword(&["--format"])?;
                format = match cur.keyword(&["csv", "json"])?.text {
                    "csv" => TableFormat::Csv,
                    _ => TableFormat::Json,
                };
            }
            Command::Table { name, format }
        }
        "classify" => Command::Classify { name: bound(cur, defined)? },
        "check" => {
            let name = bound(cur, defined)?;
            let identity = cur.next("an identity name")?.text.to_string();
            Command::Check { name, identity }
        }
        "find" => {
            let name = bound(cur, defined)?;
            let t = cur.next("an element kind")?;
            let kind = Kind::parse(t.text).ok_or_else(|| {
                cur.err(t.col, format!("unknown kind '{}' (zero-divisors|units|idempotents|nilpotents|cauchy)", t.text))
            })?;
            let mut quasi = None;
            if cur.peek().is_some() {
                cur.keyword(&["--quasi"])?;
                let m = cur.next("a mask")?;
                quasi = Some(parse_mask(cur, m)?);
            }
            Command::Find { name, kind, quasi }
        }
        "subs" => {
            let name = bound(cur, defined)?;
            let (mut class, mut max) = (None, None);
            while let Some(flag) = cur.peek() {
                match cur.keyword(&["--class", "--max"])?.text {
                    "--class" if class.is_none() => {
                        let t = cur.next("a class")?;
                        class = Some(
                            ClassLabel::parse(t.text)
                                .ok_or_else(|| cur.err(t.col, format!("unknown class '{}'", t.text)))?,
                        );
                    }
                    "--max" if max.is_none() => max = Some(cur.number("a maximum order")?),
                    _ => return Err(cur.err(flag.col, format!("repeated flag '{}'", flag.text))),
                }
            }
            Command::Subs { name, class, max }
        }
        "ideals" => {
            let name = bound(cur, defined)?;
            let mut side = Side::Two;
            if cur.peek().is_some() {
                cur.keyword(&["--side"])?;
                side = match cur.keyword(&["left", "right", "two"])?.text {
                    "left" => Side::Left,
                    "right" => Side::Right,
                    _ => Side::Two,
                };
            }
            Command::Ideals { name, side }
        }
        "smarandache" => Command::Smarandache { name: bound(cur, defined)? },
        "loopinfo" => {
            let name = bound(cur, defined)?;
            let query = match cur.keyword(&["centers", "subloops", "normalizers", "isotope"])?.text {
                "centers" => LoopQuery::Centers,
                "subloops" => LoopQuery::Subloops,
                "normalizers" => {
                    let h = cur.next("a subset like e,1,8,15")?;
                    LoopQuery::Normalizers(split_elements(h.text))
                }
                _ => {
                    let a = cur.next("an element")?.text.to_string();
                    let b = cur.next("an element")?.text.to_string();
                    LoopQuery::Isotope(a, b)
                }
            };
            Command::LoopInfo { name, query }
        }
        "audit" => {
            let claim = cur.next("a claim id")?.text.to_string();
            let mut range = None;
            if cur.peek().is_some() {
                cur.keyword(&["--range"])?;
                range = Some(cur.next("a range like n=5..30")?.text.to_string());
            }
            Command::Audit { claim, range }
        }
        _ => {
            let name = bound(cur, defined)?;
            let path = cur.next("a path")?.text.to_string();
            Command::Export { name, path }
        }
    };
    Ok(cmd)
}

fn flavor_suffix(f: Flavor) -> &'static str {
    match f {
        Flavor::Interval => "",
        Flavor::Plain => " plain",
    }
}

impl fmt::Display for StructureExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StructureExpr::Semigroup { n, mul, flavor } => {
                let op = if *mul { "mul" } else { "add" };
                write!(f, "semigroup zmod {n} {op}{}", flavor_suffix(*flavor))
            }
            StructureExpr::Groupoid { n, t, u, flavor } => {
                write!(f, "groupoid zmod {n} {t} {u}{}", flavor_suffix(*flavor))
            }
            StructureExpr::Loop { n, m, flavor } => write!(f, "loop {n} {m}{}", flavor_suffix(*flavor)),
            StructureExpr::ZnGroup { n, flavor } => write!(f, "group zmod {n}{}", flavor_suffix(*flavor)),
            StructureExpr::Units { n, flavor } => write!(f, "group units {n}{}", flavor_suffix(*flavor)),
            StructureExpr::Sym { k, group, flavor } => {
                let kind = if *group { "group" } else { "monoid" };
                write!(f, "sym {k} {kind}{}", flavor_suffix(*flavor))
            }
            StructureExpr::Matrix { rows, cols, base, mul } => {
                let mode = if *mul { "mul" } else { "entrywise" };
                write!(f, "matrix {rows} {cols} of {base} {mode}")
            }
            StructureExpr::Union(parts) => write!(f, "union {}", parts.join(" ")),
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.verb())?;
        match self {
            Command::Table { name, format } => write!(f, " {name} --format {}", format.name()),
            Command::Classify { name } | Command::Smarandache { name } => write!(f, " {name}"),
            Command::Check { name, identity } => write!(f, " {name} {identity}"),
            Command::Find { name, kind, quasi } => {
                write!(f, " {name} {}", kind.name())?;
                if let Some(mask) = quasi {
                    let bits: String = mask.iter().map(|&b| if b { '1' } else { '0' }).collect();
                    write!(f, " --quasi {bits}")?;
                }
                Ok(())
            }
            Command::Subs { name, class, max } => {
                write!(f, " {name}")?;
                if let Some(c) = class {
                    write!(f, " --class {}", c.name())?;
                }
                if let Some(k) = max {
                    write!(f, " --max {k}")?;
                }
                Ok(())
            }
            Command::Ideals { name, side } => write!(f, " {name} --side {}", side.name()),
            Command::LoopInfo { name, query } => match query {
                LoopQuery::Centers => write!(f, " {name} centers"),
                LoopQuery::Subloops => write!(f, " {name} subloops"),
                LoopQuery::Normalizers(h) => write!(f, " {name} normalizers {}", h.join(",")),
                LoopQuery::Isotope(a, b) => write!(f, " {name} isotope {a} {b}"),
            },
            Command::Audit { claim, range } => {
                write!(f, " {claim}")?;
                if let Some(r) = range {
                    write!(f, " --range {r}")?;
                }
                Ok(())
            }
            Command::Export { name, path } => write!(f, " {name} {path}"),
        }
    }
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            StatementKind::Let(name, expr) => write!(f, "{name} = {expr}"),
            StatementKind::Command(c) => write!(f, "{c}"),
        }
    }
}

/// Source text that parses back to the same script, line numbers included.
pub fn render(script: &Script) -> String {
    let mut out = String::new();
    let mut line = 1;
    for s in &script.statements {
        while line < s.line {
            out.push('\n');
            line += 1;
        }
        out.push_str(&s.to_string());
        out.push('\n');
        line += 1;
    }
    out
}
