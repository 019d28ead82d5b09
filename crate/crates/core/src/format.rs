//! Line-oriented text container for modular data and group data.
//!
//! ```text
//! format modular-data/1
//! order 8
//! size 2
//! label 0 "(1,0)"
//! S 0 0 = order 8; terms [(1, 2, 1), (1, 2, 7)]
//! T 0 = 23/24
//! meta c = 1
//! meta h = 0, 1/4
//! meta note = "free text"
//! end
//! ```
//!
//! Blank lines and lines starting with `#` are ignored. Every S entry and T
//! exponent must appear exactly once; labels and metadata are optional.

use std::fmt::Write as _;

use crate::catalog::{from_table, ClassData, GroupData, Metadata};
use crate::cyclo::{format_literal, parse_literal, Cyclo, CycloError, Rational};
use crate::matrix::Matrix;
use crate::moddata::{DataError, ModularData};

pub const MODULAR_HEADER: &str = "format modular-data/1";
pub const GROUP_HEADER: &str = "format group-data/1";

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FormatError {
    #[error("line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error(transparent)]
    Data(#[from] DataError),
    #[error(transparent)]
    Group(#[from] crate::catalog::GroupError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    pub data: ModularData,
    pub meta: Option<Metadata>,
}

fn syntax(line: usize, col: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Syntax {
        line,
        col,
        msg: msg.into(),
    }
}

/// One line with a position, consumed word by word.
struct Line<'a> {
    no: usize,
    text: &'a str,
    pos: usize,
}

impl<'a> Line<'a> {
    fn err(&self, msg: impl Into<String>) -> FormatError {
        syntax(self.no, self.pos + 1, msg)
    }

    fn skip_ws(&mut self) {
        let rest = &self.text[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn word(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let rest = &self.text[self.pos..];
        if rest.is_empty() {
            return None;
        }
        let end = rest
            .find(|c: char| c.is_whitespace() || c == ',')
            .unwrap_or(rest.len());
        let end = end.max(1);
        self.pos += end;
        Some(&rest[..end])
    }

    fn expect(&mut self, tok: &str) -> Result<(), FormatError> {
        self.skip_ws();
        if self.text[self.pos..].starts_with(tok) {
            self.pos += tok.len();
            Ok(())
        } else {
            Err(self.err(format!("expected `{tok}`")))
        }
    }

    fn index(&mut self, what: &str, bound: usize) -> Result<usize, FormatError> {
        self.skip_ws();
        let at = self.pos;
        let w = self.word().ok_or_else(|| self.err(format!("expected {what}")))?;
        match w.parse::<usize>() {
            Ok(i) if i < bound => Ok(i),
            Ok(i) => Err(syntax(self.no, at + 1, format!("{what} {i} out of range 0..{bound}"))),
            Err(_) => Err(syntax(self.no, at + 1, format!("expected {what}, found `{w}`"))),
        }
    }

    fn number<T: std::str::FromStr>(&mut self, what: &str) -> Result<T, FormatError> {
        self.skip_ws();
        let at = self.pos;
        let w = self.word().ok_or_else(|| self.err(format!("expected {what}")))?;
        w.parse::<T>()
            .map_err(|_| syntax(self.no, at + 1, format!("expected {what}, found `{w}`")))
    }

    fn rational(&mut self) -> Result<Rational, FormatError> {
        self.skip_ws();
        let at = self.pos;
        let w = self.word().ok_or_else(|| self.err("expected a rational p/q"))?;
        parse_rational(w).ok_or_else(|| syntax(self.no, at + 1, format!("bad rational `{w}`")))
    }

    fn quoted(&mut self) -> Result<String, FormatError> {
        self.skip_ws();
        let rest = &self.text[self.pos..];
        if !rest.starts_with('"') {
            return Err(self.err("expected a quoted string"));
        }
        let mut out = String::new();
        let mut chars = rest.char_indices().skip(1);
        while let Some((i, c)) = chars.next() {
            match c {
                '"' => {
                    self.pos += i + 1;
                    return Ok(out);
                }
                '\\' => match chars.next() {
                    Some((_, e @ ('"' | '\\'))) => out.push(e),
                    Some((_, 'n')) => out.push('\n'),
                    _ => {
                        self.pos += i;
                        return Err(self.err("bad escape"));
                    }
                },
                c => out.push(c),
            }
        }
        self.pos = self.text.len();
        Err(self.err("unterminated string"))
    }

    fn rest(&mut self) -> &'a str {
        self.skip_ws();
        let r = &self.text[self.pos..];
        self.pos = self.text.len();
        r
    }

    fn literal(&mut self) -> Result<Cyclo, FormatError> {
        self.skip_ws();
        let start = self.pos;
        let text = self.rest();
        parse_literal(text).map_err(|e| match e {
            CycloError::Parse { col, msg } => syntax(self.no, start + col, msg),
            other => syntax(self.no, start + 1, other.to_string()),
        })
    }

    fn end(&mut self) -> Result<(), FormatError> {
        self.skip_ws();
        if self.pos < self.text.len() {
            Err(self.err("unexpected trailing text"))
        } else {
            Ok(())
        }
    }
}

fn parse_rational(w: &str) -> Option<Rational> {
    let (p, q) = match w.split_once('/') {
        Some((p, q)) => (p.parse().ok()?, q.parse().ok()?),
        None => (w.parse().ok()?, 1.into()),
    };
    let q: num_bigint::BigInt = q;
    if num_traits::Zero::is_zero(&q) {
        return None;
    }
    Some(Rational::new(p, q))
}

fn quote(s: &str) -> String {
    let mut out = String::from("\"");
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

fn content_lines(text: &str) -> impl Iterator<Item = Line<'_>> {
    text.lines()
        .enumerate()
        .map(|(i, l)| Line {
            no: i + 1,
            text: l,
            pos: 0,
        })
        .filter(|l| {
            let t = l.text.trim();
            !t.is_empty() && !t.starts_with('#')
        })
}

fn rational_list(rs: &[Rational]) -> String {
    rs.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(", ")
}

pub fn serialize(md: &ModularData, meta: Option<&Metadata>) -> String {
    let n = md.size();
    let mut out = String::new();
    writeln!(out, "{MODULAR_HEADER}").unwrap();
    writeln!(out, "order {}", md.order()).unwrap();
    writeln!(out, "size {n}").unwrap();
    for (i, l) in md.labels().iter().enumerate() {
        if *l != i.to_string() {
            writeln!(out, "label {i} {}", quote(l)).unwrap();
        }
    }
    for a in 0..n {
        for b in 0..n {
            writeln!(out, "S {a} {b} = {}", format_literal(md.s().get(a, b))).unwrap();
        }
    }
    for (a, r) in md.t_exponents().iter().enumerate() {
        writeln!(out, "T {a} = {r}").unwrap();
    }
    if let Some(m) = meta {
        writeln!(out, "meta c = {}", m.c).unwrap();
        writeln!(out, "meta h = {}", rational_list(&m.h)).unwrap();
        if let Some(note) = &m.note {
            writeln!(out, "meta note = {}", quote(note)).unwrap();
        }
    }
    writeln!(out, "end").unwrap();
    out
}

pub fn parse(text: &str) -> Result<Document, FormatError> {
    let mut lines = content_lines(text);
    let last_line = text.lines().count().max(1);
    let mut first = lines
        .next()
        .ok_or_else(|| syntax(1, 1, format!("empty document, expected `{MODULAR_HEADER}`")))?;
    first.expect(MODULAR_HEADER)?;
    first.end()?;

    let mut order: Option<u32> = None;
    let mut size: Option<usize> = None;
    let mut labels: Vec<Option<String>> = Vec::new();
    let mut s: Vec<Option<Cyclo>> = Vec::new();
    let mut t: Vec<Option<Rational>> = Vec::new();
    let mut c: Option<Rational> = None;
    let mut h: Option<Vec<Rational>> = None;
    let mut note: Option<String> = None;
    let mut ended = false;

    for mut l in lines {
        if ended {
            return Err(l.err("content after `end`"));
        }
        let at = l.pos;
        let kw = l.word().unwrap_or("");
        let need_size = |l: &Line, size: Option<usize>| {
            size.ok_or_else(|| syntax(l.no, at + 1, "`size` must come before entries"))
        };
        match kw {
            "order" => {
                let m: u32 = l.number("field order")?;
                if m == 0 {
                    return Err(syntax(l.no, at + 1, "order must be positive"));
                }
                order = Some(m);
                l.end()?;
            }
            "size" => {
                let n: usize = l.number("size")?;
                if n == 0 {
                    return Err(syntax(l.no, at + 1, "size must be positive"));
                }
                size = Some(n);
                labels = vec![None; n];
                s = vec![None; n * n];
                t = vec![None; n];
                l.end()?;
            }
            "label" => {
                let n = need_size(&l, size)?;
                let i = l.index("label index", n)?;
                labels[i] = Some(l.quoted()?);
                l.end()?;
            }
            "S" => {
                let n = need_size(&l, size)?;
                let a = l.index("row", n)?;
                let b = l.index("column", n)?;
                l.expect("=")?;
                let z = l.literal()?;
                if s[a * n + b].replace(z).is_some() {
                    return Err(syntax(l.no, at + 1, format!("duplicate entry S {a} {b}")));
                }
            }
            "T" => {
                let n = need_size(&l, size)?;
                let a = l.index("index", n)?;
                l.expect("=")?;
                let r = l.rational()?;
                l.end()?;
                if t[a].replace(r).is_some() {
                    return Err(syntax(l.no, at + 1, format!("duplicate entry T {a}")));
                }
            }
            "meta" => {
                let key = l.word().ok_or_else(|| l.err("expected a metadata key"))?;
                l.expect("=")?;
                match key {
                    "c" => {
                        c = Some(l.rational()?);
                        l.end()?;
                    }
                    "h" => {
                        let mut v = Vec::new();
                        l.skip_ws();
                        while l.pos < l.text.len() {
                            v.push(l.rational()?);
                            l.skip_ws();
                            if l.pos < l.text.len() {
                                l.expect(",")?;
                            }
                        }
                        h = Some(v);
                    }
                    "note" => {
                        note = Some(l.quoted()?);
                        l.end()?;
                    }
                    other => return Err(syntax(l.no, at + 1, format!("unknown metadata key `{other}`"))),
                }
            }
            "end" => {
                l.end()?;
                ended = true;
            }
            other => return Err(syntax(l.no, at + 1, format!("unknown keyword `{other}`"))),
        }
    }
    if !ended {
        return Err(syntax(last_line, 1, "missing `end` (truncated document?)"));
    }
    let order = order.ok_or_else(|| syntax(last_line, 1, "missing `order`"))?;
    let n = size.ok_or_else(|| syntax(last_line, 1, "missing `size`"))?;
    if let Some(k) = s.iter().position(Option::is_none) {
        return Err(syntax(last_line, 1, format!("missing entry S {} {}", k / n, k % n)));
    }
    if let Some(a) = t.iter().position(Option::is_none) {
        return Err(syntax(last_line, 1, format!("missing entry T {a}")));
    }
    let s = Matrix::from_rows(
        s.chunks(n)
            .map(|row| row.iter().map(|z| z.clone().unwrap()).collect())
            .collect(),
    );
    let t = t.into_iter().map(Option::unwrap).collect();
    let labels = labels
        .into_iter()
        .enumerate()
        .map(|(i, l)| l.unwrap_or_else(|| i.to_string()))
        .collect();
    let data = ModularData::with_order(s, t, order)?.with_labels(labels);
    let meta = match (c, h) {
        (None, None) if note.is_none() => None,
        (c, h) => {
            let h = h.unwrap_or_default();
            if !h.is_empty() && h.len() != n {
                return Err(syntax(last_line, 1, format!("meta h has {} values for {n} primaries", h.len())));
            }
            Some(Metadata {
                c: c.unwrap_or_default(),
                h,
                note,
            })
        }
    };
    Ok(Document { data, meta })
}

/// ```text
/// format group-data/1
/// order 2
/// identity 0
/// name 1 "g"
/// mul 0 = 0 1
/// mul 1 = 1 0
/// class 0 = 0 | 0 1
/// char 0 0 = order 1; terms [(1, 1, 0)] | order 1; terms [(1, 1, 0)]
/// end
/// ```
/// `class i = rep | centralizer elements` and `char i j = values`, listed in
/// centralizer order. When no class lines are given they are computed.
pub fn serialize_group(g: &GroupData) -> String {
    let n = g.order();
    let mut out = String::new();
    writeln!(out, "{GROUP_HEADER}").unwrap();
    writeln!(out, "order {n}").unwrap();
    writeln!(out, "identity {}", g.identity).unwrap();
    for (i, name) in g.names.iter().enumerate() {
        if *name != i.to_string() {
            writeln!(out, "name {i} {}", quote(name)).unwrap();
        }
    }
    for (a, row) in g.mul.iter().enumerate() {
        let r: Vec<String> = row.iter().map(usize::to_string).collect();
        writeln!(out, "mul {a} = {}", r.join(" ")).unwrap();
    }
    for (i, c) in g.classes.iter().enumerate() {
        let cent: Vec<String> = c.centralizer.iter().map(usize::to_string).collect();
        writeln!(out, "class {i} = {} | {}", c.rep, cent.join(" ")).unwrap();
        for (j, chi) in c.characters.iter().enumerate() {
            let vals: Vec<String> = chi.iter().map(format_literal).collect();
            writeln!(out, "char {i} {j} = {}", vals.join(" | ")).unwrap();
        }
    }
    writeln!(out, "end").unwrap();
    out
}

pub fn parse_group(text: &str) -> Result<GroupData, FormatError> {
    let mut lines = content_lines(text);
    let last_line = text.lines().count().max(1);
    let mut first = lines
        .next()
        .ok_or_else(|| syntax(1, 1, format!("empty document, expected `{GROUP_HEADER}`")))?;
    first.expect(GROUP_HEADER)?;
    first.end()?;
    let mut n: Option<usize> = None;
    let mut identity = 0usize;
    let mut names: Vec<String> = Vec::new();
    let mut mul: Vec<Option<Vec<usize>>> = Vec::new();
    let mut classes: Vec<(usize, Vec<usize>, Vec<(usize, Vec<Cyclo>)>)> = Vec::new();
    let mut ended = false;
    for mut l in lines {
        if ended {
            return Err(l.err("content after `end`"));
        }
        let at = l.pos;
        let kw = l.word().unwrap_or("");
        let size = n;
        let need = |l: &Line| size.ok_or_else(|| syntax(l.no, at + 1, "`order` must come first"));
        match kw {
            "order" => {
                let k: usize = l.number("group order")?;
                if k == 0 {
                    return Err(syntax(l.no, at + 1, "order must be positive"));
                }
                n = Some(k);
                names = (0..k).map(|i| i.to_string()).collect();
                mul = vec![None; k];
                l.end()?;
            }
            "identity" => {
                identity = l.index("element", need(&l)?)?;
                l.end()?;
            }
            "name" => {
                let i = l.index("element", need(&l)?)?;
                names[i] = l.quoted()?;
                l.end()?;
            }
            "mul" => {
                let k = need(&l)?;
                let a = l.index("element", k)?;
                l.expect("=")?;
                let row = (0..k).map(|_| l.index("element", k)).collect::<Result<Vec<_>, _>>()?;
                l.end()?;
                mul[a] = Some(row);
            }
            "class" => {
                let k = need(&l)?;
                let i = l.index("class index", k)?;
                if i != classes.len() {
                    return Err(syntax(l.no, at + 1, format!("expected class {}", classes.len())));
                }
                l.expect("=")?;
                let rep = l.index("element", k)?;
                l.expect("|")?;
                let mut cent = Vec::new();
                l.skip_ws();
                while l.pos < l.text.len() {
                    cent.push(l.index("element", k)?);
                    l.skip_ws();
                }
                classes.push((rep, cent, Vec::new()));
            }
            "char" => {
                let k = need(&l)?;
                let i = l.index("class index", classes.len())?;
                let j = l.index("character index", k)?;
                if j != classes[i].2.len() {
                    return Err(syntax(l.no, at + 1, format!("expected character {}", classes[i].2.len())));
                }
                l.expect("=")?;
                l.skip_ws();
                let mut offset = l.pos;
                let mut vals = Vec::new();
                for part in l.rest().split('|') {
                    let lead = part.len() - part.trim_start().len();
                    let lit = parse_literal(part.trim()).map_err(|e| match e {
                        CycloError::Parse { col, msg } => syntax(l.no, offset + lead + col, msg),
                        other => syntax(l.no, offset + lead + 1, other.to_string()),
                    })?;
                    vals.push(lit);
                    offset += part.len() + 1;
                }
                classes[i].2.push((j, vals));
            }
            "end" => {
                l.end()?;
                ended = true;
            }
            other => return Err(syntax(l.no, at + 1, format!("unknown keyword `{other}`"))),
        }
    }
    if !ended {
        return Err(syntax(last_line, 1, "missing `end` (truncated document?)"));
    }
    n.ok_or_else(|| syntax(last_line, 1, "missing `order`"))?;
    if let Some(a) = mul.iter().position(Option::is_none) {
        return Err(syntax(last_line, 1, format!("missing row mul {a}")));
    }
    let mul: Vec<Vec<usize>> = mul.into_iter().map(Option::unwrap).collect();
    let g = if classes.is_empty() {
        from_table(mul, identity, names)?
    } else {
        GroupData {
            mul,
            identity,
            names,
            classes: classes
                .into_iter()
                .map(|(rep, centralizer, chars)| ClassData {
                    rep,
                    centralizer,
                    characters: chars.into_iter().map(|(_, v)| v).collect(),
                })
                .collect(),
        }
    };
    g.validate()?;
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_round_trip() {
        let md = ModularData::trivial();
        let text = serialize(&md, None);
        let doc = parse(&text).unwrap();
        assert_eq!(doc.data, md);
        assert_eq!(serialize(&doc.data, None), text);
    }

    #[test]
    fn truncated_reports_location() {
        let text = serialize(&ModularData::trivial(), None);
        let cut = &text[..text.len() - 4];
        match parse(cut) {
            Err(FormatError::Syntax { line, .. }) => assert!(line >= 4),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn bad_literal_column() {
        let text = "format modular-data/1\norder 1\nsize 1\nS 0 0 = order 1; terms [(1, 1 0)]\nT 0 = 0\nend\n";
        match parse(text) {
            Err(FormatError::Syntax { line: 4, col, .. }) => assert!(col > 9),
            other => panic!("{other:?}"),
        }
    }
}
