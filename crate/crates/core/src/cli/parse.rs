//! The `.gk` problem-file format.
//!
//! Line oriented; `#` starts a comment. Blocks run until a line reading `end`:
//!
//! ```text
//! manifold M            space V               homological Q on V eps=0 k=0 [arity=N]
//!   x even 0              e1 even 0             xi_e2 = -xi_e1*xi_e2
//! end                   end                   end
//!
//! explicit L on V eps=0 k=0 [arity=N]
//!   [e1, e2] = e2
//! end
//! ```
//!
//! One-line declarations:
//!
//! ```text
//! hamiltonian H on T*M[s] = EXPR          (or PiT*M[s])
//! function g on M [: even 2] = EXPR
//! thick Phi : M1 => M2 shift S kind even|odd = EXPR
//! task KIND ARG... [key=value]...
//! ```

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::geometry::{Chart, CotangentChart, FiberKind, VectorField};
use crate::graded::{parse_series_at, Bigrading, GradedVariable, Parity, Series, Weight};
use crate::homotopy::{GradedSpace, GradedVector, ShiftSignature};
use crate::microformal::ThickMorphism;

/// A named declaration.
#[derive(Clone, Debug)]
pub enum Object {
    Manifold(Chart),
    Space(GradedSpace),
    Homological { space: String, field: VectorField, sig: ShiftSignature, arity: Option<usize> },
    Explicit { space: String, entries: Vec<(Vec<usize>, GradedVector)>, sig: ShiftSignature, arity: Option<usize> },
    Hamiltonian { manifold: String, bundle: CotangentChart, h: Series },
    Function { manifold: String, f: Series },
    Thick { source: String, target: String, phi: ThickMorphism },
}

impl Object {
    pub fn kind_name(&self) -> &'static str {
        match self {
            Object::Manifold(_) => "manifold",
            Object::Space(_) => "space",
            Object::Homological { .. } => "homological",
            Object::Explicit { .. } => "explicit",
            Object::Hamiltonian { .. } => "hamiltonian",
            Object::Function { .. } => "function",
            Object::Thick { .. } => "thick",
        }
    }
}

/// A task line.
#[derive(Clone, Debug)]
pub struct Task {
    pub kind: String,
    pub args: Vec<String>,
    pub options: BTreeMap<String, String>,
    pub line: usize,
    /// The parsed expression of a `bigrade` task given inline.
    pub expr: Option<Series>,
}

impl Task {
    pub fn label(&self) -> String {
        let mut s = self.kind.clone();
        for a in &self.args {
            s.push(' ');
            s.push_str(a);
        }
        s
    }

    pub fn option<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>> {
        match self.options.get(key) {
            None => Ok(None),
            Some(v) => v.parse().map(Some).map_err(|_| Error::Syntax {
                line: self.line,
                col: 1,
                msg: format!("bad value `{}` for `{}`", v, key),
            }),
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct ProblemFile {
    pub objects: BTreeMap<String, Object>,
    /// Declaration order.
    pub order: Vec<String>,
    pub tasks: Vec<Task>,
}

impl ProblemFile {
    pub fn get(&self, name: &str) -> Option<&Object> {
        self.objects.get(name)
    }
}

/// Task name, accepted object kinds per required position, per optional position, and option keys.
type TaskSpec =
    (&'static str, &'static [&'static [&'static str]], &'static [&'static [&'static str]], &'static [&'static str]);

const TASKS: &[TaskSpec] = &[
    ("check-master", &[&["homological", "hamiltonian"]], &[], &[]),
    ("check-jacobi", &[&["homological", "explicit", "hamiltonian"]], &[], &["arity"]),
    ("check-weights", &[&["homological", "explicit", "hamiltonian"]], &[], &["arity"]),
    ("check-symmetry", &[&["homological", "explicit", "hamiltonian"]], &[], &["arity"]),
    ("check-leibniz", &[&["hamiltonian"]], &[], &["samples", "arity"]),
    ("derive-brackets", &[&["homological", "explicit", "hamiltonian"]], &[], &["arity"]),
    ("parity-reverse", &[&["homological", "explicit"]], &[], &["arity"]),
    ("validate", &[&["thick"]], &[], &[]),
    ("pullback", &[&["thick"], &["function"]], &[], &["order"]),
    ("check-hj", &[&["thick"], &["hamiltonian"], &["hamiltonian"]], &[], &["k", "order"]),
    ("check-intertwining", &[&["thick"], &["hamiltonian"], &["hamiltonian"], &["function"]], &[], &["k", "order"]),
    (
        "oracle-verify",
        &[&["homological", "explicit", "hamiltonian", "thick"]],
        &[&["function", "hamiltonian"], &["hamiltonian"], &["function"]],
        &["arity", "order"],
    ),
];

fn syntax(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Syntax { line, col, msg: msg.into() }
}

fn at_line(line: usize, e: Error) -> Error {
    match e {
        Error::GradingMismatch(m) => Error::GradingMismatch(format!("line {}: {}", line, m)),
        Error::InhomogeneousSeries(m) => Error::GradingMismatch(format!("line {}: {}", line, m)),
        Error::ChartMismatch(m) => Error::ChartMismatch(format!("line {}: {}", line, m)),
        Error::NotHomological(m) => Error::NotHomological(format!("line {}: {}", line, m)),
        Error::ParityViolation(m) => Error::ParityViolation(format!("line {}: {}", line, m)),
        other => other,
    }
}

/// Whitespace-separated words with their 1-based columns.
fn words(text: &str, base_col: usize) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, (b, c)) in text.char_indices().enumerate() {
        if c.is_whitespace() {
            if let Some((col, s)) = start.take() {
                out.push((col, &text[s..b]));
            }
        } else if start.is_none() {
            start = Some((base_col + i, b));
        }
    }
    if let Some((col, s)) = start {
        out.push((col, &text[s..]));
    }
    out
}

/// Split `head = expr` at the first `=` that is not part of `=>`.
fn split_eq(text: &str) -> Option<(&str, &str, usize)> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    for (k, &(b, c)) in chars.iter().enumerate() {
        if c == '=' && chars.get(k + 1).map(|x| x.1) != Some('>') {
            let rest = &text[b + 1..];
            let lead = rest.chars().take_while(|c| c.is_whitespace()).count();
            return Some((&text[..b], rest.trim_start(), k + 2 + lead));
        }
    }
    None
}

fn parse_parity(line: usize, col: usize, s: &str) -> Result<Parity> {
    match s {
        "even" | "0" => Ok(Parity::EVEN),
        "odd" | "1" => Ok(Parity::ODD),
        _ => Err(syntax(line, col, format!("expected a parity (even, odd, 0, 1), found `{}`", s))),
    }
}

fn parse_int(line: usize, col: usize, s: &str) -> Result<i64> {
    s.parse().map_err(|_| syntax(line, col, format!("expected an integer, found `{}`", s)))
}

fn is_ident(s: &str) -> bool {
    let mut c = s.chars();
    matches!(c.next(), Some(ch) if ch.is_ascii_alphabetic() || ch == '_')
        && s.chars().all(|ch| ch.is_ascii_alphanumeric() || ch == '_' || ch == '\'')
}

struct Parser<'a> {
    lines: Vec<(usize, &'a str)>,
    pos: usize,
    file: ProblemFile,
    next_index: u32,
    /// Every base coordinate declared so far, for `bigrade` expressions.
    coords: HashMap<String, GradedVariable>,
}

/// Parse a problem file, stopping at the first error.
pub fn parse_problem(text: &str) -> Result<ProblemFile> {
    let lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("")))
        .filter(|(_, l)| !l.trim().is_empty())
        .collect();
    let mut p = Parser { lines, pos: 0, file: ProblemFile::default(), next_index: 0, coords: HashMap::new() };
    while p.pos < p.lines.len() {
        p.statement()?;
    }
    Ok(p.file)
}

impl<'a> Parser<'a> {
    fn declare(&mut self, line: usize, col: usize, name: &str, obj: Object) -> Result<()> {
        if !is_ident(name) {
            return Err(syntax(line, col, format!("`{}` is not a valid name", name)));
        }
        if self.file.objects.contains_key(name) {
            return Err(syntax(line, col, format!("`{}` is already declared", name)));
        }
        self.file.order.push(name.to_string());
        self.file.objects.insert(name.to_string(), obj);
        Ok(())
    }

    fn lookup(&self, line: usize, col: usize, name: &str, kinds: &[&str]) -> Result<&Object> {
        match self.file.objects.get(name) {
            None => Err(Error::UnknownName { line, col, name: name.to_string() }),
            Some(o) if kinds.contains(&o.kind_name()) => Ok(o),
            Some(o) => {
                Err(syntax(line, col, format!("`{}` is a {}; expected {}", name, o.kind_name(), kinds.join(" or "))))
            }
        }
    }

    fn manifold(&self, line: usize, col: usize, name: &str) -> Result<Chart> {
        match self.lookup(line, col, name, &["manifold"])? {
            Object::Manifold(c) => Ok(c.clone()),
            _ => unreachable!(),
        }
    }

    fn space(&self, line: usize, col: usize, name: &str) -> Result<GradedSpace> {
        match self.lookup(line, col, name, &["space"])? {
            Object::Space(s) => Ok(s.clone()),
            _ => unreachable!(),
        }
    }

    /// Body lines of a block, consuming the closing `end`.
    fn block_body(&mut self, start: usize) -> Result<Vec<(usize, &'a str)>> {
        let mut body = Vec::new();
        loop {
            let Some(&(line, text)) = self.lines.get(self.pos) else {
                return Err(syntax(start, 1, "block is missing `end`"));
            };
            self.pos += 1;
            if text.trim() == "end" {
                return Ok(body);
            }
            body.push((line, text));
        }
    }

    fn statement(&mut self) -> Result<()> {
        let (line, text) = self.lines[self.pos];
        self.pos += 1;
        let w = words(text, 1);
        let (col, head) = w[0];
        match head {
            "manifold" | "space" => self.graded_list(line, text, head == "manifold"),
            "homological" => self.homological(line, text),
            "explicit" => self.explicit(line, text),
            "hamiltonian" => self.hamiltonian(line, text),
            "function" => self.function(line, text),
            "thick" => self.thick(line, text),
            "task" => self.task(line, text),
            _ => Err(syntax(line, col, format!("unknown statement `{}`", head))),
        }
    }

    fn graded_list(&mut self, line: usize, text: &str, is_manifold: bool) -> Result<()> {
        let w = words(text, 1);
        if w.len() != 2 {
            return Err(syntax(line, 1, format!("expected `{} NAME`", w[0].1)));
        }
        let (ncol, name) = w[1];
        let body = self.block_body(line)?;
        let mut entries: Vec<(String, Parity, i64)> = Vec::new();
        for (bl, bt) in body {
            let bw = words(bt, 1);
            if bw.len() != 3 {
                return Err(syntax(bl, bw[0].0, "expected `NAME PARITY WEIGHT`"));
            }
            if !is_ident(bw[0].1) {
                return Err(syntax(bl, bw[0].0, format!("`{}` is not a valid name", bw[0].1)));
            }
            if entries.iter().any(|e| e.0 == bw[0].1) || (is_manifold && self.coords.contains_key(bw[0].1)) {
                return Err(syntax(bl, bw[0].0, format!("`{}` is already declared", bw[0].1)));
            }
            let p = parse_parity(bl, bw[1].0, bw[1].1)?;
            let wt = parse_int(bl, bw[2].0, bw[2].1)?;
            entries.push((bw[0].1.to_string(), p, wt));
        }
        let refs: Vec<(&str, Parity, i64)> = entries.iter().map(|(n, p, w)| (n.as_str(), *p, *w)).collect();
        let obj = if is_manifold {
            let chart = Chart::new(self.next_index, &refs).map_err(|e| at_line(line, e))?;
            self.next_index += refs.len() as u32;
            for v in chart.vars() {
                self.coords.insert(v.name().to_string(), v.clone());
            }
            Object::Manifold(chart)
        } else {
            Object::Space(GradedSpace::new(&refs))
        };
        self.declare(line, ncol, name, obj)
    }

    /// `KIND NAME on V key=value...`
    fn structure_header(
        &self,
        line: usize,
        text: &str,
    ) -> Result<(String, usize, String, GradedSpace, ShiftSignature, Option<usize>)> {
        let w = words(text, 1);
        if w.len() < 4 || w[2].1 != "on" {
            return Err(syntax(line, 1, format!("expected `{} NAME on SPACE eps=E k=K`", w[0].1)));
        }
        let space = self.space(line, w[3].0, w[3].1)?;
        let (mut eps, mut k, mut arity) = (None, None, None);
        for &(c, kv) in &w[4..] {
            let Some((key, val)) = kv.split_once('=') else {
                return Err(syntax(line, c, format!("expected key=value, found `{}`", kv)));
            };
            let vc = c + key.len() + 1;
            match key {
                "eps" => eps = Some(parse_parity(line, vc, val)?),
                "k" => k = Some(parse_int(line, vc, val)?),
                "arity" => arity = Some(parse_int(line, vc, val)?.max(0) as usize),
                _ => return Err(syntax(line, c, format!("unknown option `{}`", key))),
            }
        }
        let eps = eps.ok_or_else(|| syntax(line, 1, "missing `eps=`"))?;
        let k = k.ok_or_else(|| syntax(line, 1, "missing `k=`"))?;
        let sig = ShiftSignature { epsilon: eps, k: Weight(k) };
        Ok((w[1].1.to_string(), w[1].0, w[3].1.to_string(), space, sig, arity))
    }

    fn homological(&mut self, line: usize, text: &str) -> Result<()> {
        let (name, ncol, space_name, space, sig, arity) = self.structure_header(line, text)?;
        let chart = space.coordinate_chart(sig, self.next_index);
        self.next_index += chart.dim() as u32;
        let body = self.block_body(line)?;
        let mut comps = vec![Series::zero(); chart.dim()];
        let lookup = |n: &str| chart.get(n).cloned();
        for (bl, bt) in body {
            let (head, expr, ecol) = split_eq(bt).ok_or_else(|| syntax(bl, 1, "expected `COORDINATE = EXPR`"))?;
            let hw = words(head, 1);
            if hw.len() != 1 {
                return Err(syntax(bl, 1, "expected `COORDINATE = EXPR`"));
            }
            let v = chart.get(hw[0].1).ok_or_else(|| Error::UnknownName {
                line: bl,
                col: hw[0].0,
                name: hw[0].1.to_string(),
            })?;
            let pos = chart.position(v).expect("coordinate of its chart");
            let s = parse_series_at(expr, bl, ecol, &lookup)?;
            comps[pos] = &comps[pos] + &s;
        }
        let field = if comps.iter().all(Series::is_zero) {
            VectorField::zero(chart.vars(), Bigrading::new(Parity::ODD, Weight(1)))
        } else {
            VectorField::new(chart.vars(), comps).map_err(|e| at_line(line, e))?
        };
        self.declare(line, ncol, &name, Object::Homological { space: space_name, field, sig, arity })
    }

    fn explicit(&mut self, line: usize, text: &str) -> Result<()> {
        let (name, ncol, space_name, space, sig, arity) = self.structure_header(line, text)?;
        let dummies: Vec<GradedVariable> =
            space.basis().iter().enumerate().map(|(i, b)| GradedVariable::even(b.name.clone(), 0, i as u32)).collect();
        let lookup = |n: &str| dummies.iter().find(|v| v.name() == n).cloned();
        let body = self.block_body(line)?;
        let mut entries = Vec::new();
        for (bl, bt) in body {
            let (head, expr, ecol) = split_eq(bt).ok_or_else(|| syntax(bl, 1, "expected `[ARGS] = VECTOR`"))?;
            let h = head.trim();
            let hcol = head.len() - head.trim_start().len() + 1;
            let inner = h
                .strip_prefix('[')
                .and_then(|r| r.strip_suffix(']'))
                .ok_or_else(|| syntax(bl, hcol, "expected a bracket `[a, b, ...]`"))?;
            let mut tuple = Vec::new();
            let mut off = hcol + 1;
            for part in inner.split(',') {
                let t = part.trim();
                let c = off + part.len() - part.trim_start().len();
                off += part.len() + 1;
                if t.is_empty() && inner.trim().is_empty() {
                    continue;
                }
                tuple.push(space.index_of(t).ok_or_else(|| Error::UnknownName {
                    line: bl,
                    col: c,
                    name: t.to_string(),
                })?);
            }
            let v = linear(&parse_series_at(expr, bl, ecol, &lookup)?, bl, ecol)?;
            space.grading_of(&v).map_err(|e| at_line(bl, e))?;
            entries.push((tuple, v));
        }
        self.declare(line, ncol, &name, Object::Explicit { space: space_name, entries, sig, arity })
    }

    fn bundle(&self, line: usize, col: usize, spec: &str) -> Result<(String, CotangentChart)> {
        let (kind, rest) = if let Some(r) = spec.strip_prefix("PiT*") {
            (FiberKind::Odd, r)
        } else if let Some(r) = spec.strip_prefix("T*") {
            (FiberKind::Even, r)
        } else {
            return Err(syntax(line, col, format!("expected `T*M[s]` or `PiT*M[s]`, found `{}`", spec)));
        };
        let open = rest.find('[').ok_or_else(|| syntax(line, col, "missing shift `[s]`"))?;
        let inner = rest[open + 1..].strip_suffix(']').ok_or_else(|| syntax(line, col, "missing `]`"))?;
        let mname = &rest[..open];
        let mcol = col + spec.len() - rest.len();
        let m = self.manifold(line, mcol, mname)?;
        let s = parse_int(line, mcol + open + 1, inner)?;
        Ok((mname.to_string(), CotangentChart::new(&m, Weight(s), kind)))
    }

    fn hamiltonian(&mut self, line: usize, text: &str) -> Result<()> {
        let (head, expr, ecol) =
            split_eq(text).ok_or_else(|| syntax(line, 1, "expected `hamiltonian NAME on BUNDLE = EXPR`"))?;
        let w = words(head, 1);
        if w.len() != 4 || w[2].1 != "on" {
            return Err(syntax(line, 1, "expected `hamiltonian NAME on BUNDLE = EXPR`"));
        }
        let (manifold, bundle) = self.bundle(line, w[3].0, w[3].1)?;
        let h = parse_series_at(expr, line, ecol, &|n: &str| bundle.get(n).cloned())?;
        if !h.is_zero() {
            h.bigrade().map_err(|e| at_line(line, e))?;
        }
        self.declare(line, w[1].0, w[1].1, Object::Hamiltonian { manifold, bundle, h })
    }

    fn function(&mut self, line: usize, text: &str) -> Result<()> {
        let usage = "expected `function NAME on MANIFOLD [: PARITY WEIGHT] = EXPR`";
        let (head, expr, ecol) = split_eq(text).ok_or_else(|| syntax(line, 1, usage))?;
        let w = words(head, 1);
        if !(w.len() == 4 || w.len() == 7) || w[2].1 != "on" {
            return Err(syntax(line, 1, usage));
        }
        let m = self.manifold(line, w[3].0, w[3].1)?;
        let declared = if w.len() == 7 {
            if w[4].1 != ":" {
                return Err(syntax(line, w[4].0, usage));
            }
            Some(Bigrading::new(parse_parity(line, w[5].0, w[5].1)?, Weight(parse_int(line, w[6].0, w[6].1)?)))
        } else {
            None
        };
        let f = parse_series_at(expr, line, ecol, &|n: &str| m.get(n).cloned())?;
        if let Some(g) = declared {
            if !f.is_zero() {
                f.expect_bigrade(g, &format!("function `{}`", w[1].1)).map_err(|e| at_line(line, e))?;
            }
        }
        self.declare(line, w[1].0, w[1].1, Object::Function { manifold: w[3].1.to_string(), f })
    }

    fn thick(&mut self, line: usize, text: &str) -> Result<()> {
        let usage = "expected `thick NAME : SOURCE => TARGET shift S kind even|odd = EXPR`";
        let (head, expr, ecol) = split_eq(text).ok_or_else(|| syntax(line, 1, usage))?;
        let w = words(head, 1);
        if w.len() != 10 || w[2].1 != ":" || w[4].1 != "=>" || w[6].1 != "shift" || w[8].1 != "kind" {
            return Err(syntax(line, 1, usage));
        }
        let m1 = self.manifold(line, w[3].0, w[3].1)?;
        let m2 = self.manifold(line, w[5].0, w[5].1)?;
        let s = Weight(parse_int(line, w[7].0, w[7].1)?);
        let kind = match w[9].1 {
            "even" => FiberKind::Even,
            "odd" => FiberKind::Odd,
            other => return Err(syntax(line, w[9].0, format!("expected `even` or `odd`, found `{}`", other))),
        };
        let target = CotangentChart::new(&m2, s, kind);
        let lookup = |n: &str| m1.get(n).cloned().or_else(|| target.fiber().iter().find(|v| v.name() == n).cloned());
        let sg = parse_series_at(expr, line, ecol, &lookup)?;
        let phi = ThickMorphism::new(&m1, &m2, s, kind, sg).map_err(|e| at_line(line, e))?;
        self.declare(
            line,
            w[1].0,
            w[1].1,
            Object::Thick { source: w[3].1.to_string(), target: w[5].1.to_string(), phi },
        )
    }

    fn task(&mut self, line: usize, text: &str) -> Result<()> {
        let w = words(text, 1);
        if w.len() < 2 {
            return Err(syntax(line, 1, "expected `task KIND ARGS...`"));
        }
        let (kcol, kind) = w[1];
        if kind == "bigrade" {
            return self.bigrade_task(line, text, &w);
        }
        let Some(&(_, required, optional, keys)) = TASKS.iter().find(|t| t.0 == kind) else {
            return Err(syntax(line, kcol, format!("unknown task `{}`", kind)));
        };
        let mut args = Vec::new();
        let mut options = BTreeMap::new();
        for &(c, a) in &w[2..] {
            if let Some((key, val)) = a.split_once('=') {
                if !keys.contains(&key) {
                    return Err(syntax(line, c, format!("task `{}` has no option `{}`", kind, key)));
                }
                options.insert(key.to_string(), val.to_string());
            } else {
                let Some(kinds) = required.iter().chain(optional.iter()).nth(args.len()) else {
                    return Err(syntax(line, c, format!("too many arguments for `{}`", kind)));
                };
                self.lookup(line, c, a, kinds)?;
                args.push(a.to_string());
            }
        }
        if args.len() < required.len() {
            return Err(syntax(line, kcol, format!("`{}` needs {} argument(s)", kind, required.len())));
        }
        let task = Task { kind: kind.to_string(), args, options, line, expr: None };
        for key in ["arity", "samples", "order"] {
            task.option::<u32>(key)?;
        }
        task.option::<i64>("k")?;
        self.file.tasks.push(task);
        Ok(())
    }

    fn bigrade_task(&mut self, line: usize, text: &str, w: &[(usize, &str)]) -> Result<()> {
        if w.len() < 3 {
            return Err(syntax(line, w[1].0, "`bigrade` needs an expression or a name"));
        }
        let start = w[2].0;
        let rest: String = text.chars().skip(start - 1).collect();
        let rest = rest.trim_end();
        let expr = match self.file.objects.get(rest) {
            Some(Object::Function { f, .. }) => f.clone(),
            Some(Object::Hamiltonian { h, .. }) => h.clone(),
            _ => parse_series_at(rest, line, start, &|n: &str| self.coords.get(n).cloned())?,
        };
        self.file.tasks.push(Task {
            kind: "bigrade".into(),
            args: vec![rest.to_string()],
            options: BTreeMap::new(),
            line,
            expr: Some(expr),
        });
        Ok(())
    }
}

fn linear(s: &Series, line: usize, col: usize) -> Result<GradedVector> {
    let mut v = GradedVector::zero();
    for (m, c) in s.terms() {
        match m.factors() {
            [(var, 1)] => v.add_at(var.index() as usize, c),
            _ => return Err(syntax(line, col, format!("`{}` is not a linear combination of basis vectors", s))),
        }
    }
    Ok(v)
}

/// Parse a vector expression over the basis names of `space`.
pub fn parse_vector(text: &str, space: &GradedSpace) -> Result<GradedVector> {
    let dummies: Vec<GradedVariable> =
        space.basis().iter().enumerate().map(|(i, b)| GradedVariable::even(b.name.clone(), 0, i as u32)).collect();
    let s = crate::graded::parse_series(text, &|n: &str| dummies.iter().find(|v| v.name() == n).cloned())?;
    linear(&s, 1, 1)
}
