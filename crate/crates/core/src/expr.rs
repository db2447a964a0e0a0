//! Text syntax for semigroup elements and lassos.
//!
//! ```text
//! (e1.e0|s|@x)          element (α | g | β); paths are dot-separated, @v is empty
//! 0                     zero
//! s'                    star
//! s * u                 product, left associative
//! s @ e1.(e0)^inf       action on a lasso; `e0^inf` abbreviates `(e0)^inf`
//! s @ @x.[x~e1...]      a ray up the tail at x
//! ```

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{Edge, Path};
use crate::lasso::Lasso;
use crate::semigroup::{apply, multiply, SElement};
use crate::triple::Triple;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Element(SElement),
    Lasso(Lasso),
    /// The lasso lies outside the element's domain.
    Undefined,
}

impl Value {
    pub fn render(&self, t: &Triple) -> String {
        match self {
            Value::Element(s) => s.name(t),
            Value::Lasso(w) => w.name(t.graph()),
            Value::Undefined => "undefined".into(),
        }
    }
}

/// A syntax or typing error at a 1-based column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExprError {
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ExprError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "column {}: {}", self.column, self.message)
    }
}

impl ExprError {
    pub fn at_line(self, line: usize) -> Error {
        Error::Parse { line, column: self.column, message: self.message }
    }
}

struct Parser<'a> {
    t: &'a Triple,
    src: &'a str,
    pos: usize,
    state_budget: usize,
}

type PResult<T> = std::result::Result<T, ExprError>;

impl<'a> Parser<'a> {
    fn err<T>(&self, at: usize, message: impl Into<String>) -> PResult<T> {
        Err(ExprError { column: at + 1, message: message.into() })
    }

    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(char::is_whitespace) {
            self.pos += self.src[self.pos..].chars().next().map_or(1, char::len_utf8);
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn expr(&mut self) -> PResult<Value> {
        let start = self.pos;
        let s = self.product()?;
        if self.peek() == Some('@') {
            self.pos += 1;
            self.skip_ws();
            let at = self.pos;
            let w = parse_lasso(self.t, self.src[at..].trim_end()).map_err(|e| ExprError {
                column: at + 1 + e.column - 1,
                message: e.message,
            })?;
            self.pos = self.src.len();
            return match apply(self.t, &s, &w, self.state_budget) {
                Ok(Some(image)) => Ok(Value::Lasso(image)),
                Ok(None) => Ok(Value::Undefined),
                Err(e) => self.err(start, e.to_string()),
            };
        }
        if let Some(c) = self.peek() {
            return self.err(self.pos, format!("unexpected `{c}`"));
        }
        Ok(Value::Element(s))
    }

    fn product(&mut self) -> PResult<SElement> {
        let mut acc = self.postfix()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            let rhs = self.postfix()?;
            acc = multiply(self.t, &acc, &rhs);
        }
        Ok(acc)
    }

    fn postfix(&mut self) -> PResult<SElement> {
        let mut s = self.atom()?;
        while self.peek() == Some('\'') {
            self.pos += 1;
            s = s.star(self.t);
        }
        Ok(s)
    }

    fn atom(&mut self) -> PResult<SElement> {
        match self.peek() {
            Some('0') => {
                self.pos += 1;
                Ok(SElement::Zero)
            }
            Some('(') => {
                let open = self.pos;
                let close = match self.src[open..].find(')') {
                    Some(k) => open + k,
                    None => return self.err(open, "unclosed `(`"),
                };
                let body = &self.src[open + 1..close];
                let fields: Vec<&str> = body.split('|').collect();
                if fields.len() != 3 {
                    return self.err(open, "an element is written (α | g | β)");
                }
                let col = |k: usize| open + 1 + fields[..k].iter().map(|f| f.len() + 1).sum::<usize>();
                let alpha = self.path(fields[0], col(0))?;
                let g = match self.t.group().parse(fields[1]) {
                    Some(g) => g,
                    None => return self.err(col(1), format!("unknown group element `{}`", fields[1].trim())),
                };
                let beta = self.path(fields[2], col(2))?;
                self.pos = close + 1;
                SElement::new(self.t, alpha, g, beta).or_else(|e| self.err(open, e.to_string()))
            }
            Some(c) => self.err(self.pos, format!("expected an element, found `{c}`")),
            None => self.err(self.pos, "expected an element"),
        }
    }

    fn path(&self, text: &str, at: usize) -> PResult<Path> {
        parse_path(self.t, text).map_err(|e| ExprError { column: at + e.column, message: e.message })
    }
}

/// Dot-separated edge names, or `@v` for the empty path at `v`.
pub fn parse_path(t: &Triple, text: &str) -> std::result::Result<Path, ExprError> {
    let g = t.graph();
    let lead = text.len() - text.trim_start().len();
    let text = text.trim();
    let fail = |message: String| ExprError { column: lead + 1, message };
    if let Some(v) = text.strip_prefix('@') {
        return g.parse_vertex(v).map(Path::empty).map_err(|e| fail(e.to_string()));
    }
    let edges = parse_edges(t, text).map_err(|e| ExprError { column: lead + e.column, message: e.message })?;
    let Some(&first) = edges.first() else {
        return Err(fail("empty path; write @v".into()));
    };
    g.path(g.range(first), edges).map_err(|e| fail(e.to_string()))
}

fn parse_edges(t: &Triple, text: &str) -> std::result::Result<Vec<Edge>, ExprError> {
    let mut out = Vec::new();
    let mut col = 1;
    for name in text.split('.') {
        if !name.is_empty() {
            out.push(t.graph().parse_edge(name).map_err(|e| ExprError { column: col, message: e.to_string() })?);
        }
        col += name.len() + 1;
    }
    Ok(out)
}

/// `head.(cycle)^inf`, `head.e^inf`, `(cycle)^inf`, or `head.[v~ek...]`
/// for a ray; heads are paths as in [`parse_path`].
pub fn parse_lasso(t: &Triple, text: &str) -> std::result::Result<Lasso, ExprError> {
    let g = t.graph();
    let text = text.trim();
    let fail = |column: usize, message: String| ExprError { column, message };
    if let Some(body) = text.strip_suffix("...]") {
        let Some(k) = body.rfind('[') else {
            return Err(fail(1, "a ray is written [v~ek...]".into()));
        };
        let head_text = body[..k].strip_suffix('.').unwrap_or(&body[..k]);
        let (root, index) = match g.parse_edge(&body[k + 1..]) {
            Ok(Edge::Tail { root, index }) => (root, index),
            Ok(_) => return Err(fail(k + 2, "a ray starts at a tail edge".into())),
            Err(e) => return Err(fail(k + 2, e.to_string())),
        };
        let start = g.range(Edge::Tail { root, index });
        let head = if head_text.is_empty() { Path::empty(start) } else { parse_path(t, head_text)? };
        return Lasso::ray(g, head, root, index).map_err(|e| fail(1, e.to_string()));
    }
    let Some(body) = text.strip_suffix("^inf") else {
        return Err(fail(1, "a lasso ends in ^inf or ...]".into()));
    };
    let (head_text, cycle_text, cycle_col) = if let Some(inner) = body.strip_suffix(')') {
        let Some(k) = inner.rfind('(') else {
            return Err(fail(body.len(), "unbalanced `)`".into()));
        };
        (inner[..k].strip_suffix('.').unwrap_or(&inner[..k]), &inner[k + 1..], k + 2)
    } else {
        match body.rfind('.') {
            Some(k) => (&body[..k], &body[k + 1..], k + 2),
            None => ("", body, 1),
        }
    };
    let cycle = parse_edges(t, cycle_text).map_err(|e| fail(cycle_col + e.column - 1, e.message))?;
    let Some(&first) = cycle.first() else {
        return Err(fail(cycle_col, "empty cycle".into()));
    };
    let head = if head_text.is_empty() { Path::empty(g.range(first)) } else { parse_path(t, head_text)? };
    Lasso::new(g, head, cycle).map_err(|e| fail(cycle_col, e.to_string()))
}

/// Evaluates a single expression.
pub fn eval(t: &Triple, src: &str, state_budget: usize) -> std::result::Result<Value, ExprError> {
    Parser { t, src, pos: 0, state_budget }.expr()
}

/// One result per nonblank line; `#` starts a comment.
pub fn eval_lines(t: &Triple, text: &str, state_budget: usize) -> Result<Vec<(String, Value)>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        let v = eval(t, line, state_budget).map_err(|e| e.at_line(i + 1))?;
        out.push((line.trim().to_string(), v));
    }
    Ok(out)
}
