//! JSON encoding of elements, matrices, interval matrices, graphs and problem files.
//!
//! Elements are numbers, or the strings `"-inf"` and `"inf"`; Boolean elements
//! are `0`/`1` (or `false`/`true`). Intervals are two-element arrays
//! `[lo, hi]`, matrices are arrays of rows. A problem file is one object:
//!
//! ```json
//! {"semiring": "min-plus", "kind": "matrix", "matrix": [[0, 1], ["inf", 0]]}
//! {"semiring": "max-plus", "kind": "bellman", "mode": "weak",
//!  "a": [[[-2, -1]]], "b": [[[0, 1]]]}
//! {"semiring": "max-min", "nodes": ["s", "t"], "arcs": [{"from": "s", "to": "t", "w": 3}]}
//! ```
//!
//! `kind` may be omitted and is then inferred from the keys present.

use serde_json::{json, Map, Number, Value};

use crate::error::{Error, Result};
use crate::graph::WeightedDigraph;
use crate::interval::{degenerate, Interval, IntervalExt, IntervalMatrix, Mode};
use crate::matrix::Matrix;
use crate::semiring::{Element, Profile, Semiring};

fn malformed(msg: impl Into<String>) -> Error {
    Error::Malformed(msg.into())
}

pub fn element_to_json(x: &Element) -> Value {
    match x {
        Element::NegInf => json!("-inf"),
        Element::PosInf => json!("inf"),
        Element::Bool(b) => json!(u8::from(*b)),
        Element::Finite(v) => Number::from_f64(*v).map_or(Value::Null, Value::Number),
    }
}

pub fn element_from_json(p: Profile, v: &Value) -> Result<Element> {
    let x = match (p, v) {
        (Profile::Boolean, Value::Bool(b)) => Element::Bool(*b),
        (_, Value::Number(n)) => {
            if p == Profile::Boolean {
                return p.parse(&n.to_string());
            }
            Element::from(n.as_f64().ok_or_else(|| malformed(format!("bad number {n}")))?)
        }
        (_, Value::String(s)) => return p.parse(s),
        _ => {
            return Err(Error::InvalidElement {
                semiring: p.key().into(),
                reason: format!("{v} is not an element"),
            })
        }
    };
    p.validate(&x)?;
    Ok(x)
}

pub fn interval_to_json(iv: &Interval<Element>) -> Value {
    json!([element_to_json(iv.lo()), element_to_json(iv.hi())])
}

/// Accepts `[lo, hi]`, or a bare element as the point interval.
pub fn interval_from_json(ext: &IntervalExt<Profile>, v: &Value) -> Result<Interval<Element>> {
    let p = *ext.base();
    match v {
        Value::Array(b) if b.len() == 2 => ext.interval(element_from_json(p, &b[0])?, element_from_json(p, &b[1])?),
        Value::Array(_) => Err(malformed(format!("interval {v} must have two bounds"))),
        _ => Ok(ext.point(element_from_json(p, v)?)),
    }
}

fn rows_of(v: &Value) -> Result<Vec<&Vec<Value>>> {
    let rows = v.as_array().ok_or_else(|| malformed("matrix must be an array of rows"))?;
    let rows: Vec<&Vec<Value>> = rows
        .iter()
        .map(|r| r.as_array().ok_or_else(|| malformed("matrix row must be an array")))
        .collect::<Result<_>>()?;
    if let Some(first) = rows.first() {
        if rows.iter().any(|r| r.len() != first.len()) {
            return Err(malformed("matrix rows have different lengths"));
        }
    }
    Ok(rows)
}

fn decode_matrix<S: Semiring>(sr: S, v: &Value, mut entry: impl FnMut(&Value) -> Result<S::Elem>) -> Result<Matrix<S>> {
    // A flat array of non-array entries is read as a column vector.
    if let Some(items) = v.as_array() {
        if !items.is_empty() && items.iter().all(|x| !x.is_array()) {
            let col = items.iter().map(&mut entry).collect::<Result<Vec<_>>>()?;
            return Ok(Matrix::column(sr, col));
        }
    }
    let rows = rows_of(v)?
        .into_iter()
        .map(|r| r.iter().map(&mut entry).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    if rows.is_empty() {
        return Matrix::new(sr, 0, 0, Vec::new());
    }
    Matrix::from_rows(sr, rows)
}

pub fn matrix_to_json(m: &Matrix<Profile>) -> Value {
    Value::Array(
        m.to_rows()
            .iter()
            .map(|r| Value::Array(r.iter().map(element_to_json).collect()))
            .collect(),
    )
}

/// Array of rows; a flat array is a column vector.
pub fn matrix_from_json(p: Profile, v: &Value) -> Result<Matrix<Profile>> {
    decode_matrix(p, v, |x| element_from_json(p, x))
}

pub fn interval_matrix_to_json(m: &IntervalMatrix<Profile>) -> Value {
    Value::Array(
        m.to_rows()
            .iter()
            .map(|r| Value::Array(r.iter().map(interval_to_json).collect()))
            .collect(),
    )
}

pub fn interval_matrix_from_json(ext: &IntervalExt<Profile>, v: &Value) -> Result<IntervalMatrix<Profile>> {
    decode_matrix(ext.clone(), v, |x| interval_from_json(ext, x))
}

/// True if the matrix payload holds at least one `[lo, hi]` pair.
pub fn has_intervals(v: &Value) -> bool {
    v.as_array().is_some_and(|rows| {
        rows.iter()
            .any(|r| r.as_array().is_some_and(|r| r.iter().any(Value::is_array)))
    })
}

fn label_of(v: &Value) -> Result<String> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) => Ok(n.to_string()),
        _ => Err(malformed(format!("node label {v} must be a string or number"))),
    }
}

pub fn graph_to_json(g: &WeightedDigraph<Profile>) -> Value {
    let labels = g.labels();
    let arcs: Vec<Value> = g
        .arcs()
        .map(|(i, j, w)| json!({"from": labels[i], "to": labels[j], "w": element_to_json(w)}))
        .collect();
    json!({"semiring": g.semiring().key(), "nodes": labels, "arcs": arcs})
}

/// Reads `{"nodes", "arcs", "semiring"}`; `fallback` is used when the object
/// has no semiring key.
pub fn graph_from_json(v: &Value, fallback: Option<Profile>) -> Result<WeightedDigraph<Profile>> {
    let obj = v.as_object().ok_or_else(|| malformed("graph must be an object"))?;
    let p = match obj.get("semiring") {
        Some(s) => profile_from_json(s)?,
        None => fallback.ok_or_else(|| malformed("graph has no semiring"))?,
    };
    let nodes = obj
        .get("nodes")
        .and_then(Value::as_array)
        .ok_or_else(|| malformed("graph needs a \"nodes\" array"))?;
    let labels = nodes.iter().map(label_of).collect::<Result<Vec<_>>>()?;
    let mut g = WeightedDigraph::new(p, labels)?;
    let empty = Vec::new();
    let arcs = match obj.get("arcs") {
        Some(a) => a.as_array().ok_or_else(|| malformed("\"arcs\" must be an array"))?,
        None => &empty,
    };
    for arc in arcs {
        let end = |key: &str| -> Result<usize> {
            let label = label_of(arc.get(key).ok_or_else(|| malformed(format!("arc without \"{key}\"")))?)?;
            g.index_of(&label)
                .ok_or_else(|| malformed(format!("arc refers to unknown node {label:?}")))
        };
        let (from, to) = (end("from")?, end("to")?);
        let w = element_from_json(p, arc.get("w").ok_or_else(|| malformed("arc without \"w\""))?)?;
        g.add_arc(from, to, w)?;
    }
    Ok(g)
}

fn profile_from_json(v: &Value) -> Result<Profile> {
    v.as_str()
        .ok_or_else(|| malformed("\"semiring\" must be a string"))?
        .parse()
}

#[derive(Clone, Debug)]
pub enum Problem {
    Matrix(Matrix<Profile>),
    IntervalMatrix(IntervalMatrix<Profile>),
    Graph {
        graph: WeightedDigraph<Profile>,
        terminal: Option<Matrix<Profile>>,
    },
    /// Point problems are stored as degenerate intervals with `interval = false`.
    Bellman {
        a: IntervalMatrix<Profile>,
        b: IntervalMatrix<Profile>,
        interval: bool,
    },
}

impl Problem {
    pub fn kind(&self) -> &'static str {
        match self {
            Problem::Matrix(_) => "matrix",
            Problem::IntervalMatrix(_) => "interval-matrix",
            Problem::Graph { .. } => "graph",
            Problem::Bellman { .. } => "bellman",
        }
    }
}

#[derive(Clone, Debug)]
pub struct ProblemFile {
    pub semiring: Profile,
    pub problem: Problem,
}

fn infer_kind(obj: &Map<String, Value>) -> Result<&'static str> {
    if obj.contains_key("a") && obj.contains_key("b") {
        Ok("bellman")
    } else if obj.contains_key("nodes") {
        Ok("graph")
    } else if let Some(m) = obj.get("matrix") {
        Ok(if has_intervals(m) { "interval-matrix" } else { "matrix" })
    } else {
        Err(malformed("cannot infer problem kind; expected \"matrix\", \"nodes\" or \"a\"/\"b\""))
    }
}

fn mode_of(obj: &Map<String, Value>) -> Result<Mode> {
    match obj.get("mode") {
        None => Ok(Mode::Weak),
        Some(Value::String(s)) => s.parse(),
        Some(v) => Err(malformed(format!("mode {v} must be a string"))),
    }
}

pub fn parse_problem(text: &str) -> Result<ProblemFile> {
    let v: Value = serde_json::from_str(text).map_err(|e| malformed(format!("invalid JSON: {e}")))?;
    problem_from_json(&v)
}

pub fn problem_from_json(v: &Value) -> Result<ProblemFile> {
    let obj = v.as_object().ok_or_else(|| malformed("problem file must be a JSON object"))?;
    let semiring = profile_from_json(obj.get("semiring").ok_or_else(|| malformed("missing \"semiring\""))?)?;
    let kind = match obj.get("kind") {
        Some(Value::String(k)) => k.as_str(),
        Some(k) => return Err(malformed(format!("kind {k} must be a string"))),
        None => infer_kind(obj)?,
    };
    let field = |key: &str| obj.get(key).ok_or_else(|| malformed(format!("{kind} problem needs \"{key}\"")));
    let problem = match kind {
        "matrix" => Problem::Matrix(matrix_from_json(semiring, field("matrix")?)?),
        "interval-matrix" => {
            let ext = IntervalExt::new(semiring, mode_of(obj)?)?;
            Problem::IntervalMatrix(interval_matrix_from_json(&ext, field("matrix")?)?)
        }
        "graph" => {
            let graph = graph_from_json(v, Some(semiring))?;
            let terminal = obj
                .get("terminal")
                .map(|t| matrix_from_json(semiring, t))
                .transpose()?;
            Problem::Graph { graph, terminal }
        }
        "bellman" | "bellman-problem" => {
            let ext = IntervalExt::new(semiring, mode_of(obj)?)?;
            let (a, b) = (field("a")?, field("b")?);
            let interval = obj.contains_key("mode") || has_intervals(a) || has_intervals(b);
            Problem::Bellman {
                a: interval_matrix_from_json(&ext, a)?,
                b: interval_matrix_from_json(&ext, b)?,
                interval,
            }
        }
        other => return Err(malformed(format!("unknown problem kind {other:?}"))),
    };
    Ok(ProblemFile { semiring, problem })
}

/// Bellman problem file for a point system.
pub fn bellman_to_json(a: &Matrix<Profile>, b: &Matrix<Profile>) -> Value {
    json!({
        "semiring": a.semiring().key(),
        "kind": "bellman",
        "a": matrix_to_json(a),
        "b": matrix_to_json(b),
    })
}

/// Bellman problem file for an interval system.
pub fn interval_bellman_to_json(a: &IntervalMatrix<Profile>, b: &IntervalMatrix<Profile>) -> Value {
    json!({
        "semiring": a.semiring().base().key(),
        "kind": "bellman",
        "mode": a.semiring().mode().key(),
        "a": interval_matrix_to_json(a),
        "b": interval_matrix_to_json(b),
    })
}

/// Point matrix as a degenerate interval matrix of the given mode.
pub fn lift(m: &Matrix<Profile>, mode: Mode) -> Result<IntervalMatrix<Profile>> {
    Ok(degenerate(IntervalExt::new(*m.semiring(), mode)?, m))
}
