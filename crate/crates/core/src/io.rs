//! Text formats: `LSC 1` instances, `SOL` solutions, `n m` graphs and gadget
//! role sidecars.

use std::fmt::Write as _;

use num_bigint::BigInt;
use thiserror::Error;

use crate::arrangement::{Instance, RawSegment, ValidationError};
use crate::cover::Cover;
use crate::gadget::{Graph, GraphError, Role};
use crate::geom::Point;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InputError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: {error}")]
    Invalid { line: usize, error: ValidationError },
    #[error("{0}")]
    Graph(#[from] GraphError),
    #[error("empty input")]
    Empty,
}

fn syntax(line: usize, message: impl Into<String>) -> InputError {
    InputError::Syntax {
        line,
        message: message.into(),
    }
}

/// Non-blank lines with comments stripped, numbered from 1.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

fn parse_fields<T: std::str::FromStr>(line: usize, text: &str, want: usize) -> Result<Vec<T>, InputError> {
    let fields: Vec<&str> = text.split_whitespace().collect();
    if fields.len() != want {
        return Err(syntax(line, format!("expected {want} fields, found {}", fields.len())));
    }
    fields
        .iter()
        .map(|f| f.parse().map_err(|_| syntax(line, format!("`{f}` is not an integer"))))
        .collect()
}

pub fn parse_instance(text: &str) -> Result<Instance, InputError> {
    let mut lines = content_lines(text);
    let (first, header) = lines.next().ok_or(InputError::Empty)?;
    if header.split_whitespace().collect::<Vec<_>>() != ["LSC", "1"] {
        return Err(syntax(first, format!("expected header `LSC 1`, found `{header}`")));
    }
    let mut raw = Vec::new();
    let mut line_of = Vec::new();
    for (n, l) in lines {
        let c: Vec<BigInt> = parse_fields(n, l, 4)?;
        let [x1, y1, x2, y2] = <[BigInt; 4]>::try_from(c).expect("four fields");
        raw.push(RawSegment::new(Point::from_bigints(x1, y1), Point::from_bigints(x2, y2)));
        line_of.push(n);
    }
    Instance::validate(&raw).map_err(|error| {
        let seg = match &error {
            ValidationError::DegenerateSegment(i) => *i,
            ValidationError::DuplicateSegment(_, j) | ValidationError::OverlapViolation(_, j) => *j,
            ValidationError::GeneralPositionViolation { segments, .. } => *segments.last().unwrap(),
        };
        InputError::Invalid {
            line: line_of[seg],
            error,
        }
    })
}

fn integral(p: &Point) -> (BigInt, BigInt) {
    assert!(p.is_integral(), "instance coordinates are integers");
    (p.x.to_integer(), p.y.to_integer())
}

pub fn emit_instance(inst: &Instance) -> String {
    let mut out = String::from("LSC 1\n");
    for s in inst.segments() {
        let (x1, y1) = integral(&s.a);
        let (x2, y2) = integral(&s.b);
        writeln!(out, "{x1} {y1} {x2} {y2}").unwrap();
    }
    out
}

pub fn parse_solution(text: &str) -> Result<Cover, InputError> {
    let mut lines = content_lines(text);
    let (first, header) = lines.next().ok_or(InputError::Empty)?;
    let size = match header.split_whitespace().collect::<Vec<_>>()[..] {
        ["SOL", n] => n
            .parse::<usize>()
            .map_err(|_| syntax(first, format!("bad solution size `{n}`")))?,
        _ => return Err(syntax(first, format!("expected header `SOL <size>`, found `{header}`"))),
    };
    let mut ids: Vec<usize> = Vec::new();
    let mut last_line = first;
    for (n, l) in lines {
        let [id] = <[usize; 1]>::try_from(parse_fields::<usize>(n, l, 1)?).unwrap();
        if ids.last().is_some_and(|&p| p >= id) {
            return Err(syntax(n, "segment ids must be strictly ascending"));
        }
        ids.push(id);
        last_line = n;
    }
    if ids.len() != size {
        return Err(syntax(last_line, format!("header declares {size} ids, found {}", ids.len())));
    }
    Ok(Cover::new(ids))
}

pub fn emit_solution(cover: &Cover) -> String {
    let mut out = format!("SOL {}\n", cover.len());
    for id in &cover.chosen {
        writeln!(out, "{id}").unwrap();
    }
    out
}

pub fn parse_graph(text: &str) -> Result<Graph, InputError> {
    let mut lines = content_lines(text);
    let (first, header) = lines.next().ok_or(InputError::Empty)?;
    let [n, m] = <[usize; 2]>::try_from(parse_fields::<usize>(first, header, 2)?).unwrap();
    let mut edges = Vec::new();
    let mut last_line = first;
    for (line, l) in lines {
        let [a, b] = <[usize; 2]>::try_from(parse_fields::<usize>(line, l, 2)?).unwrap();
        edges.push((a, b));
        last_line = line;
    }
    if edges.len() != m {
        return Err(syntax(last_line, format!("header declares {m} edges, found {}", edges.len())));
    }
    Ok(Graph::new(n, &edges)?)
}

pub fn emit_graph(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.edges().len());
    for (a, b) in g.edges() {
        writeln!(out, "{a} {b}").unwrap();
    }
    out
}

pub fn emit_roles(roles: &[Role]) -> String {
    let mut out = String::new();
    for (id, r) in roles.iter().enumerate() {
        writeln!(out, "{id} {r}").unwrap();
    }
    out
}

pub fn parse_roles(text: &str) -> Result<Vec<Role>, InputError> {
    let mut roles = Vec::new();
    for (n, l) in content_lines(text) {
        let (id, rest) = l.split_once(char::is_whitespace).ok_or_else(|| syntax(n, "expected `<id> <role>`"))?;
        if id.parse::<usize>().ok() != Some(roles.len()) {
            return Err(syntax(n, format!("expected segment id {}, found `{id}`", roles.len())));
        }
        roles.push(rest.trim().parse::<Role>().map_err(|e| syntax(n, e))?);
    }
    Ok(roles)
}
