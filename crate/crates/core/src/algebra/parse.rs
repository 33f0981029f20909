//! Line-oriented algebra source format.
//!
//! ```text
//! algebra A2
//! field Q
//! vertices 1 2
//! arrows
//!   a: 1 -> 2
//! relations
//!   2 * a*b - c*d
//! module M          # optional named modules
//!   dim 1 1
//!   map a 1
//! ```

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};

use super::{Algebra, Arrow, Quiver, Relation};

/// A named module given in the source, kept as text until built over the algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleSpec {
    pub name: String,
    pub dims: Vec<(String, usize)>,
    /// arrow id and rows of scalar tokens
    pub maps: Vec<(String, Vec<Vec<String>>)>,
}

#[derive(Debug)]
pub struct AlgebraSource {
    pub algebra: Algebra,
    pub modules: Vec<ModuleSpec>,
}

pub fn parse_algebra(text: &str) -> Result<Algebra> {
    Ok(parse_source(text)?.algebra)
}

#[derive(PartialEq, Eq)]
enum Section {
    Header,
    Arrows,
    Relations,
    Module,
}

fn syntax(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Syntax { line, col, msg: msg.into() }
}

fn valid_id(s: &str) -> bool {
    !s.is_empty() && !s.chars().any(|c| c.is_whitespace() || "*+-:#,;/".contains(c))
}

pub fn parse_source(text: &str) -> Result<AlgebraSource> {
    parse_source_over(text, None)
}

/// As [`parse_source`]; a given field overrides the `field` line.
pub fn parse_source_over(text: &str, over: Option<Field>) -> Result<AlgebraSource> {
    let mut name = String::from("A");
    let mut field = Field::Rationals;
    let mut vertices: Vec<String> = Vec::new();
    let mut arrows: Vec<Arrow> = Vec::new();
    let mut rel_lines: Vec<(usize, String)> = Vec::new();
    let mut modules: Vec<ModuleSpec> = Vec::new();
    let mut section = Section::Header;

    for (ln, raw) in text.lines().enumerate() {
        let ln = ln + 1;
        let line = raw.split('#').next().unwrap();
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let col = line.len() - line.trim_start().len() + 1;
        let (kw, rest) = match trimmed.split_once(char::is_whitespace) {
            Some((k, r)) => (k, r.trim()),
            None => (trimmed, ""),
        };
        match kw {
            "algebra" => {
                if rest.is_empty() {
                    return Err(syntax(ln, col, "missing algebra name"));
                }
                name = rest.to_string();
                section = Section::Header;
            }
            "field" => {
                field = Field::parse(rest).map_err(|_| syntax(ln, col + 6, format!("bad field `{rest}`")))?;
                section = Section::Header;
            }
            "vertices" => {
                for v in rest.split_whitespace() {
                    if !valid_id(v) {
                        return Err(syntax(ln, col, format!("bad vertex id `{v}`")));
                    }
                    if vertices.iter().any(|x| x == v) {
                        return Err(syntax(ln, col, format!("duplicate vertex `{v}`")));
                    }
                    vertices.push(v.to_string());
                }
                section = Section::Header;
            }
            "arrows" if rest.is_empty() => section = Section::Arrows,
            "relations" if rest.is_empty() => section = Section::Relations,
            "module" => {
                if !valid_id(rest) {
                    return Err(syntax(ln, col, "bad module name"));
                }
                modules.push(ModuleSpec { name: rest.to_string(), dims: vec![], maps: vec![] });
                section = Section::Module;
            }
            _ => match section {
                Section::Arrows => {
                    let (id, ends) = trimmed
                        .split_once(':')
                        .ok_or_else(|| syntax(ln, col, "expected `<id>: <src> -> <tgt>`"))?;
                    let id = id.trim();
                    let (s, t) = ends
                        .split_once("->")
                        .ok_or_else(|| syntax(ln, col + id.len() + 1, "expected `->`"))?;
                    let (s, t) = (s.trim(), t.trim());
                    if !valid_id(id) {
                        return Err(syntax(ln, col, format!("bad arrow id `{id}`")));
                    }
                    if arrows.iter().any(|a| a.id == id) {
                        return Err(syntax(ln, col, format!("duplicate arrow `{id}`")));
                    }
                    let find = |v: &str| {
                        vertices
                            .iter()
                            .position(|x| x == v)
                            .ok_or_else(|| syntax(ln, col + line.trim_start().find(v).unwrap_or(0), format!("unknown vertex `{v}`")))
                    };
                    let (src, tgt) = (find(s)?, find(t)?);
                    arrows.push(Arrow { id: id.to_string(), src, tgt, valuation: (1, 1) });
                }
                Section::Relations => rel_lines.push((ln, line.to_string())),
                Section::Module => {
                    let m = modules.last_mut().unwrap();
                    match kw {
                        "dim" => {
                            let parts: Vec<&str> = rest.split_whitespace().collect();
                            let n = parts.get(1).and_then(|x| x.parse().ok());
                            match (parts.len(), n) {
                                (2, Some(n)) => m.dims.push((parts[0].to_string(), n)),
                                _ => return Err(syntax(ln, col, "expected `dim <vertex> <n>`")),
                            }
                        }
                        "map" => {
                            let (a, rows) = rest.split_once(char::is_whitespace).unwrap_or((rest, ""));
                            let rows: Vec<Vec<String>> = rows
                                .split(';')
                                .map(|r| r.split_whitespace().map(String::from).collect::<Vec<_>>())
                                .filter(|r| !r.is_empty())
                                .collect();
                            m.maps.push((a.to_string(), rows));
                        }
                        _ => return Err(syntax(ln, col, format!("unexpected `{kw}` in module section"))),
                    }
                }
                Section::Header => return Err(syntax(ln, col, format!("unexpected `{kw}`"))),
            },
        }
    }
    if vertices.is_empty() {
        return Err(syntax(1, 1, "no vertices declared"));
    }
    if let Some(f) = over {
        field = f;
    }
    let quiver = Quiver { vertices, arrows };
    let mut relations = Vec::new();
    for (ln, line) in rel_lines {
        relations.push(parse_relation(&quiver, field, &line, ln)?);
    }
    let algebra = Algebra::new(&name, field, quiver, relations)?;
    for m in &modules {
        for (v, _) in &m.dims {
            algebra.vertex_index(v)?;
        }
        for (a, _) in &m.maps {
            algebra.quiver().arrow_index(a)?;
        }
    }
    Ok(AlgebraSource { algebra, modules })
}

/// Parses `c1 * a*b + c2 * c*d - ...`.
fn parse_relation(q: &Quiver, field: Field, line: &str, ln: usize) -> Result<Relation> {
    let body = line.split('#').next().unwrap();
    // split into signed terms, remembering columns
    let mut terms: Vec<(bool, usize, String)> = Vec::new();
    let mut cur = String::new();
    let mut start = 0;
    let mut neg = false;
    for (i, ch) in body.char_indices() {
        if ch == '+' || ch == '-' {
            if cur.trim().is_empty() {
                if ch == '-' {
                    neg = !neg;
                }
                continue;
            }
            if cur.trim_end().ends_with('*') {
                return Err(syntax(ln, i + 1, "sign after `*`"));
            }
            terms.push((neg, start, std::mem::take(&mut cur)));
            neg = ch == '-';
            continue;
        }
        if !ch.is_whitespace() && cur.trim().is_empty() {
            start = i;
        }
        cur.push(ch);
    }
    if cur.trim().is_empty() {
        let msg = if terms.is_empty() { "empty relation" } else { "dangling operator" };
        return Err(syntax(ln, body.len() + 1, msg));
    }
    terms.push((neg, start, cur));
    let mut out = Vec::new();
    for (neg, col, t) in terms {
        let mut coef = field.one();
        let mut word = Vec::new();
        for (k, f) in t.split('*').enumerate() {
            let f = f.trim();
            if f.is_empty() {
                return Err(syntax(ln, col + 1, "empty factor"));
            }
            match q.arrow_index(f) {
                Ok(a) => word.push(a),
                Err(_) if k == 0 && f.chars().next().is_some_and(|c| c.is_ascii_digit()) => {
                    coef = field.scalar(f).map_err(|_| syntax(ln, col + 1, format!("bad coefficient `{f}`")))?;
                }
                Err(_) => return Err(syntax(ln, col + 1, format!("unknown arrow `{f}`"))),
            }
        }
        if neg {
            coef = -&coef;
        }
        out.push((coef, word));
    }
    Ok(Relation { terms: out })
}

/// Parses scalar rows of a module map.
pub(crate) fn parse_rows(field: Field, rows: &[Vec<String>]) -> Result<Vec<Vec<Scalar>>> {
    rows.iter().map(|r| r.iter().map(|s| field.scalar(s)).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const SRC: &str = "algebra S\nfield Q\nvertices 1 2 3 4\narrows\n a: 1 -> 2\n b: 2 -> 4\n c: 1 -> 3\n d: 3 -> 4\nrelations\n 2 * a*b - 1/2 * c*d # comment\n";

    #[test]
    fn parses_signed_sums() {
        let a = parse_algebra(SRC).unwrap();
        let r = &a.relations()[0];
        assert_eq!(r.terms.len(), 2);
        assert_eq!(r.terms[0].0.to_string(), "2");
        assert_eq!(r.terms[1].0.to_string(), "-1/2");
        assert_eq!(r.terms[1].1, vec![2, 3]);
    }

    #[test]
    fn leading_minus_and_roundtrip() {
        let src = "algebra S\nvertices 1 2 3 4\narrows\n a: 1 -> 2\n b: 2 -> 4\n c: 1 -> 3\n d: 3 -> 4\nrelations\n -a*b + c*d\n";
        let a = parse_algebra(src).unwrap();
        assert_eq!(a.relations()[0].terms[0].0.to_string(), "-1");
        let b = parse_algebra(&a.to_source()).unwrap();
        assert_eq!(a.fingerprint(), b.fingerprint());
    }

    #[test]
    fn errors_carry_positions() {
        let err = parse_source("algebra X\nvertices 1 2\narrows\n a: 1 -> 3\n").unwrap_err();
        match err {
            Error::Syntax { line, .. } => assert_eq!(line, 4),
            e => panic!("{e}"),
        }
        let err = parse_source("algebra X\nvertices 1 2\narrows\n a: 1 -> 2\nrelations\n a*zz\n").unwrap_err();
        assert!(matches!(err, Error::Syntax { line: 6, .. }));
        assert!(matches!(parse_source("algebra X\nvertices 1\nbogus\n"), Err(Error::Syntax { line: 3, .. })));
    }

    #[test]
    fn module_sections() {
        let src = "algebra L\nvertices 0\narrows\n eps: 0 -> 0\nrelations\n eps*eps\nmodule P\n dim 0 2\n map eps 0 1; 0 0\n";
        let s = parse_source(src).unwrap();
        assert_eq!(s.modules.len(), 1);
        assert_eq!(s.modules[0].maps[0].1, vec![vec!["0", "1"], vec!["0", "0"]]);
    }
}
