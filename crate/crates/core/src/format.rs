//! Line-oriented text formats for algebras, crossed systems, matrices,
//! co-flag data and matrix data, and the classification report.
//!
//! Every format starts with a header line and ends with `end`. Tokens are
//! separated by whitespace, `#` starts a comment, blank lines are ignored,
//! and basis indices are 1-based. Tables are written sparsely:
//! `<i> <j> : <k> <c> <k> <c> ...` gives the nonzero coefficients of the
//! product of basis vectors `i` and `j`.

use std::fmt::Write as _;

use crate::algebra::{BilinearTable, PoissonAlgebra};
use crate::coflag::{AbelianCoflag, CoflagDatum, NonabelianCoflag};
use crate::crossed::{DatumTables, PreCrossedDatum};
use crate::equivalence::ClassificationResult;
use crate::error::{Error, Result};
use crate::metabelian::CMatrixDatum;
use crate::scalar::{vector, Field, Matrix, Scalar};

pub const ALGEBRA_HEADER: &str = "poisson-algebra v1";
pub const SYSTEM_HEADER: &str = "crossed-system v1";
pub const MATRIX_HEADER: &str = "matrix v1";
pub const COFLAG_HEADER: &str = "coflag v1";
pub const CMATRIX_HEADER: &str = "cmatrix v1";

struct Line<'a> {
    number: usize,
    tokens: Vec<&'a str>,
}

impl Line<'_> {
    fn err(&self, reason: impl Into<String>) -> Error {
        Error::Parse {
            line: self.number,
            reason: reason.into(),
        }
    }

    fn usize_at(&self, pos: usize) -> Result<usize> {
        let t = self.tokens.get(pos).ok_or_else(|| self.err("missing number"))?;
        t.parse().map_err(|_| self.err(format!("expected a nonnegative integer, got {t:?}")))
    }

    /// A 1-based index token converted to 0-based.
    fn index_at(&self, pos: usize, bound: usize) -> Result<usize> {
        let t = self.tokens.get(pos).ok_or_else(|| self.err("missing index"))?;
        let i: usize = t.parse().map_err(|_| self.err(format!("expected an index, got {t:?}")))?;
        if i == 0 || i > bound {
            return Err(Error::IndexOutOfRange {
                line: self.number,
                index: i,
                bound,
            });
        }
        Ok(i - 1)
    }

    fn scalar(&self, field: Field, text: &str) -> Result<Scalar> {
        field
            .parse_scalar(text)
            .ok_or_else(|| self.err(format!("bad scalar {text:?} for field {field}")))
    }

    fn scalars_from(&self, field: Field, pos: usize) -> Result<Vec<Scalar>> {
        self.tokens[pos.min(self.tokens.len())..]
            .iter()
            .map(|t| self.scalar(field, t))
            .collect()
    }
}

/// Splits text into tokenized non-empty lines, dropping comments.
fn lines(text: &str) -> Vec<Line<'_>> {
    text.lines()
        .enumerate()
        .filter_map(|(n, raw)| {
            let body = raw.split('#').next().unwrap_or("");
            let tokens: Vec<&str> = body.split_whitespace().collect();
            (!tokens.is_empty()).then_some(Line { number: n + 1, tokens })
        })
        .collect()
}

/// Header, body and terminator of one block.
struct Block<'a> {
    body: Vec<Line<'a>>,
    end_line: usize,
}

fn block<'a>(text: &'a str, header: &str) -> Result<Block<'a>> {
    let mut ls = lines(text).into_iter();
    let first = ls.next().ok_or(Error::Parse {
        line: 1,
        reason: format!("empty input, expected {header:?}"),
    })?;
    if first.tokens.join(" ") != header {
        return Err(first.err(format!("expected header {header:?}")));
    }
    let mut body = Vec::new();
    for l in ls.by_ref() {
        if l.tokens == ["end"] {
            if let Some(extra) = ls.next() {
                return Err(extra.err("content after end"));
            }
            return Ok(Block {
                body,
                end_line: l.number,
            });
        }
        body.push(l);
    }
    let last = body.last().map_or(first.number, |l| l.number);
    Err(Error::Parse {
        line: last,
        reason: "missing end".to_string(),
    })
}

fn parse_field(line: &Line<'_>) -> Result<Field> {
    let text = line.tokens[1..].join(" ");
    let field = Field::parse(&text).ok_or_else(|| Error::FieldSyntax {
        line: line.number,
        text: text.clone(),
    })?;
    if let Field::Prime(p) = field {
        Field::prime(u64::from(p)).map_err(|_| Error::FieldSyntax { line: line.number, text })?;
    }
    Ok(field)
}

/// Reads the `field` and dimension lines that open a block body.
struct Preamble<'a, 'b> {
    field: Option<Field>,
    dims: Vec<(&'static str, Option<usize>)>,
    rest: Vec<&'b Line<'a>>,
}

fn preamble<'a, 'b>(b: &'b Block<'a>, dim_keys: &[&'static str]) -> Result<Preamble<'a, 'b>> {
    let mut pre = Preamble {
        field: None,
        dims: dim_keys.iter().map(|&k| (k, None)).collect(),
        rest: Vec::new(),
    };
    for l in &b.body {
        let key = l.tokens[0];
        if key == "field" {
            if pre.field.is_some() {
                return Err(l.err("duplicate field line"));
            }
            pre.field = Some(parse_field(l)?);
        } else if let Some(slot) = pre.dims.iter_mut().find(|(k, _)| *k == key) {
            if slot.1.is_some() || l.tokens.len() != 2 {
                return Err(l.err(format!("malformed {key} line")));
            }
            slot.1 = Some(l.usize_at(1)?);
        } else {
            pre.rest.push(l);
        }
    }
    Ok(pre)
}

impl Preamble<'_, '_> {
    fn field(&self, b: &Block<'_>) -> Result<Field> {
        self.field.ok_or(Error::Parse {
            line: b.end_line,
            reason: "missing field line".to_string(),
        })
    }

    fn dim(&self, key: &str, b: &Block<'_>) -> Result<usize> {
        self.dims
            .iter()
            .find(|(k, _)| *k == key)
            .and_then(|(_, v)| *v)
            .ok_or(Error::Parse {
                line: b.end_line,
                reason: format!("missing {key} line"),
            })
    }
}

/// Parses `<i> <j> : (<k> <c>)+` starting at token `pos` into `table`.
fn table_line(line: &Line<'_>, pos: usize, table: &mut BilinearTable, seen: &mut Vec<(usize, usize)>) -> Result<()> {
    let (d1, d2, dout) = table.shape();
    let field = table.field();
    let i = line.index_at(pos, d1)?;
    let j = line.index_at(pos + 1, d2)?;
    if line.tokens.get(pos + 2) != Some(&":") {
        return Err(line.err("expected ':' after the two indices"));
    }
    let pairs = &line.tokens[pos + 3..];
    if !pairs.len().is_multiple_of(2) {
        return Err(line.err("coefficients must come in (index, scalar) pairs"));
    }
    if seen.contains(&(i, j)) {
        return Err(line.err(format!("duplicate entry for ({}, {})", i + 1, j + 1)));
    }
    seen.push((i, j));
    let mut ks = Vec::new();
    for (n, pair) in pairs.chunks(2).enumerate() {
        let k = line.index_at(pos + 3 + 2 * n, dout)?;
        if ks.contains(&k) {
            return Err(line.err(format!("coefficient {} given twice", k + 1)));
        }
        ks.push(k);
        table.set(i, j, k, line.scalar(field, pair[1])?);
    }
    Ok(())
}

fn emit_table(out: &mut String, prefix: &str, t: &BilinearTable) {
    let (d1, d2, dout) = t.shape();
    for i in 0..d1 {
        for j in 0..d2 {
            let e = t.entry(i, j);
            if vector::is_zero(e) {
                continue;
            }
            let _ = write!(out, "{prefix} {} {} :", i + 1, j + 1);
            for (k, c) in e.iter().enumerate().take(dout) {
                if !c.is_zero() {
                    let _ = write!(out, " {} {c}", k + 1);
                }
            }
            out.push('\n');
        }
    }
}

pub fn parse_algebra(text: &str) -> Result<PoissonAlgebra> {
    let b = block(text, ALGEBRA_HEADER)?;
    let pre = preamble(&b, &["dim"])?;
    let (field, n) = (pre.field(&b)?, pre.dim("dim", &b)?);
    let mut mul = BilinearTable::zeros(field, n, n, n);
    let mut bracket = BilinearTable::zeros(field, n, n, n);
    let (mut seen_m, mut seen_b) = (Vec::new(), Vec::new());
    let mut names: Vec<Option<String>> = vec![None; n];
    for l in &pre.rest {
        match l.tokens[0] {
            "mul" => table_line(l, 1, &mut mul, &mut seen_m)?,
            "bracket" => table_line(l, 1, &mut bracket, &mut seen_b)?,
            "name" => {
                let i = l.index_at(1, n)?;
                if l.tokens.len() != 3 {
                    return Err(l.err("expected: name <i> <label>"));
                }
                if names[i].replace(l.tokens[2].to_string()).is_some() {
                    return Err(l.err(format!("duplicate name for {}", i + 1)));
                }
            }
            other => return Err(l.err(format!("unknown keyword {other:?}"))),
        }
    }
    let a = PoissonAlgebra::new(field, mul, bracket)?;
    if names.iter().all(Option::is_none) {
        return Ok(a);
    }
    let names: Option<Vec<String>> = names.into_iter().collect();
    let names = names.ok_or(Error::Parse {
        line: b.end_line,
        reason: "names must be given for every basis vector or none".to_string(),
    })?;
    a.with_names(names)
}

pub fn emit_algebra(p: &PoissonAlgebra) -> String {
    let mut out = format!("{ALGEBRA_HEADER}\nfield {}\ndim {}\n", p.field(), p.dim());
    if let Some(names) = p.names() {
        for (i, n) in names.iter().enumerate() {
            let _ = writeln!(out, "name {} {n}", i + 1);
        }
    }
    emit_table(&mut out, "mul", p.mul());
    emit_table(&mut out, "bracket", p.bracket());
    out.push_str("end\n");
    out
}

pub fn parse_system(text: &str) -> Result<PreCrossedDatum> {
    let b = block(text, SYSTEM_HEADER)?;
    let pre = preamble(&b, &["dimP", "dimV"])?;
    let field = pre.field(&b)?;
    let (m, n) = (pre.dim("dimP", &b)?, pre.dim("dimV", &b)?);
    let mut pm = BilinearTable::zeros(field, m, m, m);
    let mut pb = BilinearTable::zeros(field, m, m, m);
    let mut t = DatumTables::zeros(field, m, n);
    let mut seen: Vec<Vec<(usize, usize)>> = vec![Vec::new(); 9];
    for l in &pre.rest {
        let two = l.tokens.get(1).copied().unwrap_or("");
        let (slot, table, pos): (usize, &mut BilinearTable, usize) = match (l.tokens[0], two) {
            ("P", "mul") => (0, &mut pm, 2),
            ("P", "bracket") => (1, &mut pb, 2),
            ("V", "mul") => (2, &mut t.v_mul, 2),
            ("V", "bracket") => (3, &mut t.v_bracket, 2),
            ("actL", _) => (4, &mut t.act_l, 1),
            ("actR", _) => (5, &mut t.act_r, 1),
            ("actLie", _) => (6, &mut t.act_lie, 1),
            ("theta", _) => (7, &mut t.theta, 1),
            ("eff", _) => (8, &mut t.eff, 1),
            (other, _) => return Err(l.err(format!("unknown keyword {other:?}"))),
        };
        table_line(l, pos, table, &mut seen[slot])?;
    }
    PreCrossedDatum::new(PoissonAlgebra::new(field, pm, pb)?, n, t)
}

pub fn emit_system(d: &PreCrossedDatum) -> String {
    let mut out = format!(
        "{SYSTEM_HEADER}\nfield {}\ndimP {}\ndimV {}\n",
        d.field(),
        d.dim_p(),
        d.dim_v()
    );
    let t = d.tables();
    emit_table(&mut out, "P mul", d.p().mul());
    emit_table(&mut out, "P bracket", d.p().bracket());
    emit_table(&mut out, "V mul", &t.v_mul);
    emit_table(&mut out, "V bracket", &t.v_bracket);
    emit_table(&mut out, "actL", &t.act_l);
    emit_table(&mut out, "actR", &t.act_r);
    emit_table(&mut out, "actLie", &t.act_lie);
    emit_table(&mut out, "theta", &t.theta);
    emit_table(&mut out, "eff", &t.eff);
    out.push_str("end\n");
    out
}

/// Parses a matrix block. The block may carry its own `field` line;
/// otherwise `field` is used.
pub fn parse_matrix(text: &str, field: Field) -> Result<Matrix> {
    let b = block(text, MATRIX_HEADER)?;
    let pre = preamble(&b, &["rows", "cols"])?;
    let field = pre.field.unwrap_or(field);
    let (r, c) = (pre.dim("rows", &b)?, pre.dim("cols", &b)?);
    // rows of a matrix without columns are empty lines, which are skipped
    if c == 0 && pre.rest.is_empty() {
        return Ok(Matrix::zeros(field, r, 0));
    }
    if pre.rest.len() != r {
        let line = pre.rest.get(r).map_or(b.end_line, |l| l.number);
        return Err(Error::Parse {
            line,
            reason: format!("expected {r} rows, found {}", pre.rest.len()),
        });
    }
    let mut rows = Vec::with_capacity(r);
    for l in &pre.rest {
        let row = l.scalars_from(field, 0)?;
        if row.len() != c {
            return Err(l.err(format!("expected {c} entries, found {}", row.len())));
        }
        rows.push(row);
    }
    if r == 0 {
        return Ok(Matrix::zeros(field, 0, c));
    }
    Matrix::from_rows(field, rows)
}

pub fn emit_matrix(m: &Matrix) -> String {
    let mut out = format!("{MATRIX_HEADER}\nfield {}\nrows {}\ncols {}\n", m.field(), m.rows(), m.cols());
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(ToString::to_string).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out.push_str("end\n");
    out
}

fn grid_line(l: &Line<'_>, grid: &mut Matrix, seen: &mut Vec<(usize, usize)>) -> Result<()> {
    let n = grid.rows();
    if l.tokens.len() != 4 {
        return Err(l.err(format!("expected: {} <i> <j> <scalar>", l.tokens[0])));
    }
    let (i, j) = (l.index_at(1, n)?, l.index_at(2, n)?);
    if seen.contains(&(i, j)) {
        return Err(l.err(format!("duplicate entry for ({}, {})", i + 1, j + 1)));
    }
    seen.push((i, j));
    grid.set(i, j, l.scalar(grid.field(), l.tokens[3])?);
    Ok(())
}

fn covector_line(l: &Line<'_>, field: Field, n: usize) -> Result<Vec<Scalar>> {
    let v = l.scalars_from(field, 1)?;
    if v.len() != n {
        return Err(l.err(format!("expected {n} scalars, found {}", v.len())));
    }
    Ok(v)
}

/// Parses a co-flag block. `u 0` or a missing `u` line gives an abelian
/// datum; a nonzero `u` gives a non-abelian one, which admits only
/// `lambda`, `theta` and `u` lines.
pub fn parse_coflag(text: &str) -> Result<(Field, CoflagDatum)> {
    let b = block(text, COFLAG_HEADER)?;
    let pre = preamble(&b, &["dimP"])?;
    let (field, n) = (pre.field(&b)?, pre.dim("dimP", &b)?);
    let mut a = AbelianCoflag::zero(field, n);
    let mut u = field.zero();
    let mut seen_keys: Vec<&str> = Vec::new();
    let (mut seen_t, mut seen_f) = (Vec::new(), Vec::new());
    let mut abelian_only = None;
    for l in &pre.rest {
        let key = l.tokens[0];
        if matches!(key, "lambda" | "Lambda" | "gamma" | "u") {
            if seen_keys.contains(&key) {
                return Err(l.err(format!("duplicate {key} line")));
            }
            seen_keys.push(key);
        }
        match key {
            "lambda" => a.lambda = covector_line(l, field, n)?,
            "Lambda" => a.big_lambda = covector_line(l, field, n)?,
            "gamma" => a.gamma = covector_line(l, field, n)?,
            "theta" => grid_line(l, &mut a.theta, &mut seen_t)?,
            "f" => grid_line(l, &mut a.f, &mut seen_f)?,
            "u" => {
                if l.tokens.len() != 2 {
                    return Err(l.err("expected: u <scalar>"));
                }
                u = l.scalar(field, l.tokens[1])?;
            }
            other => return Err(l.err(format!("unknown keyword {other:?}"))),
        }
        if matches!(key, "Lambda" | "gamma" | "f") && abelian_only.is_none() {
            abelian_only = Some(l.number);
        }
    }
    if u.is_zero() {
        return Ok((field, CoflagDatum::Abelian(a)));
    }
    if let Some(line) = abelian_only {
        return Err(Error::Parse {
            line,
            reason: "Lambda, gamma and f lines require u = 0".to_string(),
        });
    }
    Ok((
        field,
        CoflagDatum::Nonabelian(NonabelianCoflag {
            lambda: a.lambda,
            theta: a.theta,
            u,
        }),
    ))
}

fn emit_covector(out: &mut String, key: &str, v: &[Scalar]) {
    out.push_str(key);
    for s in v {
        let _ = write!(out, " {s}");
    }
    out.push('\n');
}

fn emit_grid(out: &mut String, key: &str, m: &Matrix) {
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            if !m.get(i, j).is_zero() {
                let _ = writeln!(out, "{key} {} {} {}", i + 1, j + 1, m.get(i, j));
            }
        }
    }
}

pub fn emit_coflag(field: Field, c: &CoflagDatum) -> String {
    let mut out = String::new();
    let n = match c {
        CoflagDatum::Abelian(a) => a.lambda.len(),
        CoflagDatum::Nonabelian(b) => b.lambda.len(),
    };
    let _ = write!(out, "{COFLAG_HEADER}\nfield {field}\ndimP {n}\n");
    match c {
        CoflagDatum::Abelian(a) => {
            emit_covector(&mut out, "lambda", &a.lambda);
            emit_covector(&mut out, "Lambda", &a.big_lambda);
            emit_covector(&mut out, "gamma", &a.gamma);
            emit_grid(&mut out, "theta", &a.theta);
            emit_grid(&mut out, "f", &a.f);
            out.push_str("u 0\n");
        }
        CoflagDatum::Nonabelian(b) => {
            emit_covector(&mut out, "lambda", &b.lambda);
            emit_grid(&mut out, "theta", &b.theta);
            let _ = writeln!(out, "u {}", b.u);
        }
    }
    out.push_str("end\n");
    out
}

/// Parses a matrix-datum block: `dim n`, then `A`, `B`, `C` lines with the
/// `n^2` entries row by row and a `theta0` line with `n` entries.
pub fn parse_cmatrix(text: &str) -> Result<CMatrixDatum> {
    let b = block(text, CMATRIX_HEADER)?;
    let pre = preamble(&b, &["dim"])?;
    let (field, n) = (pre.field(&b)?, pre.dim("dim", &b)?);
    let mut c = CMatrixDatum::zero(field, n);
    let mut seen: Vec<&str> = Vec::new();
    for l in &pre.rest {
        let key = l.tokens[0];
        if seen.contains(&key) {
            return Err(l.err(format!("duplicate {key} line")));
        }
        seen.push(key);
        match key {
            "A" | "B" | "C" => {
                let v = covector_line(l, field, n * n)?;
                let mut m = Matrix::zeros(field, n, n);
                for (idx, s) in v.into_iter().enumerate() {
                    m.set(idx / n, idx % n, s);
                }
                match key {
                    "A" => c.a = m,
                    "B" => c.b = m,
                    _ => c.c = m,
                }
            }
            "theta0" => c.theta0 = covector_line(l, field, n)?,
            other => return Err(l.err(format!("unknown keyword {other:?}"))),
        }
    }
    Ok(c)
}

pub fn emit_cmatrix(c: &CMatrixDatum) -> String {
    let mut out = format!("{CMATRIX_HEADER}\nfield {}\ndim {}\n", c.field(), c.n());
    emit_covector(&mut out, "A", c.a.entries());
    emit_covector(&mut out, "B", c.b.entries());
    emit_covector(&mut out, "C", c.c.entries());
    emit_covector(&mut out, "theta0", &c.theta0);
    out.push_str("end\n");
    out
}

/// The classification report: a header with the totals, then every class
/// with its tag, size, co-flag block when present, and representative
/// crossed system.
pub fn emit_classification(r: &ClassificationResult) -> String {
    let mut out = format!(
        "classification {}\nfield {}\ntotal {}\ncandidates {}\n",
        r.kind,
        r.field,
        r.total(),
        r.candidates
    );
    for (i, c) in r.classes.iter().enumerate() {
        let _ = write!(out, "\nclass {} size {} tag {}\n", i + 1, c.size, c.tag);
        if let Some(cf) = &c.coflag {
            out.push_str(&emit_coflag(r.field, cf));
        }
        out.push_str(&emit_system(&c.datum));
    }
    out
}

/// Splits a classification report into the crossed-system blocks of its
/// representatives.
pub fn report_systems(report: &str) -> Result<Vec<PreCrossedDatum>> {
    let mut out = Vec::new();
    let mut current: Option<String> = None;
    for raw in report.lines() {
        let trimmed = raw.trim();
        if trimmed == SYSTEM_HEADER {
            current = Some(String::new());
        }
        if let Some(buf) = current.as_mut() {
            buf.push_str(raw);
            buf.push('\n');
            if trimmed == "end" {
                out.push(parse_system(buf)?);
                current = None;
            }
        }
    }
    Ok(out)
}
