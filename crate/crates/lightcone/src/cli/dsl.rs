//! Frame spec files for `classify`.
//!
//! One frame line `kind key=value ...` and an optional `grid s0=.. s1=.. n=..`
//! line; `#` starts a comment. Values contain no spaces.
//!
//! ```text
//! diagonal a=1 b=2
//! case11   G=s+0.2*s^2 f=sin(s) c=1.5
//! case12   A=0.5*s B1=s B2=-0.4*s
//! case21   A=s B1=0 c2=1
//! constant alpha=0 beta=i gamma=1
//! ```
//!
//! Expressions in `s` are polynomials and exp, sin, cos, sinh, cosh of
//! arguments linear in `s`.

use crate::calculus::jet::{Jet3, Scale};
use crate::classifier::{s_grid, RuledFrame, ScalarFn};
use crate::cone::Mat2;
use crate::error::{Error, Result};
use num_complex::Complex64 as C64;
use std::collections::BTreeMap;
use std::sync::Arc;

#[derive(Debug, Clone)]
pub struct FrameSpec {
    pub frame: RuledFrame,
    pub grid: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Func {
    Exp,
    Sin,
    Cos,
    Sinh,
    Cosh,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(f64),
    S,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, f64),
    Pow(Box<Expr>, u32),
    Call(Func, Box<Expr>),
}

impl Expr {
    pub fn eval(&self, s: Jet3<f64>) -> Jet3<f64> {
        match self {
            Expr::Num(x) => Jet3::constant(*x),
            Expr::S => s,
            Expr::Neg(a) => -a.eval(s),
            Expr::Add(a, b) => a.eval(s) + b.eval(s),
            Expr::Sub(a, b) => a.eval(s) - b.eval(s),
            Expr::Mul(a, b) => a.eval(s) * b.eval(s),
            Expr::Div(a, k) => a.eval(s).scale(1.0 / k),
            Expr::Pow(a, n) => a.eval(s).powi(*n as i32),
            Expr::Call(f, a) => {
                let x = a.eval(s);
                match f {
                    Func::Exp => x.exp(),
                    Func::Sin => x.sin(),
                    Func::Cos => x.cos(),
                    Func::Sinh => x.sinh(),
                    Func::Cosh => x.cosh(),
                }
            }
        }
    }

    /// Polynomial degree, `None` once a function call is involved.
    fn degree(&self) -> Option<u32> {
        match self {
            Expr::Num(_) => Some(0),
            Expr::S => Some(1),
            Expr::Neg(a) | Expr::Div(a, _) => a.degree(),
            Expr::Add(a, b) | Expr::Sub(a, b) => Some(a.degree()?.max(b.degree()?)),
            Expr::Mul(a, b) => Some(a.degree()? + b.degree()?),
            Expr::Pow(a, n) => Some(a.degree()? * n),
            Expr::Call(..) => None,
        }
    }

    pub fn into_fn(self) -> ScalarFn {
        Arc::new(move |s| self.eval(s))
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    line: usize,
    col0: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: impl Into<String>) -> Error {
        Error::ParseError {
            line: self.line,
            column: self.col0 + self.pos + 1,
            message: msg.into(),
        }
    }
    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }
    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat(b'+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat(b'-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat(b'*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.peek() == Some(b'/') {
                let at = self.pos;
                self.pos += 1;
                match self.unary()? {
                    Expr::Num(k) if k != 0.0 => lhs = Expr::Div(Box::new(lhs), k),
                    _ => {
                        self.pos = at;
                        return Err(self.err("only division by a nonzero number is allowed"));
                    }
                }
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat(b'-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        let base = self.atom()?;
        if self.eat(b'^') {
            let start = self.pos;
            while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                self.pos += 1;
            }
            let txt = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
            let n: u32 = txt.parse().map_err(|_| {
                self.pos = start;
                self.err("expected a non-negative integer exponent")
            })?;
            return Ok(Expr::Pow(Box::new(base), n));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        let start = self.pos;
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.err("expected `)`"));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => {
                while self.peek().is_some_and(|c| c.is_ascii_digit() || c == b'.') {
                    self.pos += 1;
                }
                if self.peek().is_some_and(|c| c == b'e' || c == b'E') {
                    let save = self.pos;
                    self.pos += 1;
                    if matches!(self.peek(), Some(b'+') | Some(b'-')) {
                        self.pos += 1;
                    }
                    if self.peek().is_some_and(|c| c.is_ascii_digit()) {
                        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                            self.pos += 1;
                        }
                    } else {
                        self.pos = save;
                    }
                }
                let txt = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                txt.parse().map(Expr::Num).map_err(|_| {
                    self.pos = start;
                    self.err(format!("bad number `{txt}`"))
                })
            }
            Some(c) if c.is_ascii_alphabetic() => {
                while self.peek().is_some_and(|c| c.is_ascii_alphanumeric()) {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let func = match name {
                    "s" => return Ok(Expr::S),
                    "pi" => return Ok(Expr::Num(std::f64::consts::PI)),
                    "exp" => Func::Exp,
                    "sin" => Func::Sin,
                    "cos" => Func::Cos,
                    "sinh" => Func::Sinh,
                    "cosh" => Func::Cosh,
                    _ => {
                        self.pos = start;
                        return Err(self.err(format!("unknown name `{name}`")));
                    }
                };
                if !self.eat(b'(') {
                    return Err(self.err("expected `(`"));
                }
                let arg_at = self.pos;
                let arg = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.err("expected `)`"));
                }
                if arg.degree().is_none_or(|d| d > 1) {
                    self.pos = arg_at;
                    return Err(self.err(format!("argument of {name} must be linear in s")));
                }
                Ok(Expr::Call(func, Box::new(arg)))
            }
            Some(c) => Err(self.err(format!("unexpected `{}`", c as char))),
            None => Err(self.err("unexpected end of expression")),
        }
    }
}

/// Parses an expression in s; `col0` is the 0-based column of its first byte.
pub fn parse_expr(src: &str, line: usize, col0: usize) -> Result<Expr> {
    let mut p = Parser {
        src: src.as_bytes(),
        pos: 0,
        line,
        col0,
    };
    let e = p.expr()?;
    if p.pos != src.len() {
        return Err(p.err("trailing input"));
    }
    Ok(e)
}

/// `a`, `bi`, `a+bi`, `a-bi`, `i`, `-i`.
pub fn parse_complex(src: &str) -> Option<C64> {
    let t = src.trim();
    let Some(body) = t.strip_suffix('i') else {
        return t.parse().ok().map(|x| C64::new(x, 0.0));
    };
    let split = body
        .char_indices()
        .filter(|&(k, ch)| k > 0 && (ch == '+' || ch == '-') && !body[..k].ends_with(['e', 'E']))
        .map(|(k, _)| k)
        .next_back();
    let (re, im) = match split {
        Some(k) => (body[..k].parse().ok()?, &body[k..]),
        None => (0.0, body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        x => x.parse().ok()?,
    };
    Some(C64::new(re, im))
}

struct Line<'a> {
    no: usize,
    words: Vec<(usize, &'a str)>,
}

fn split_words(text: &str) -> Vec<(usize, &str)> {
    let mut out = vec![];
    let mut start = None;
    for (k, ch) in text.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s, &text[s..k]));
            }
        } else if start.is_none() {
            start = Some(k);
        }
    }
    if let Some(s) = start {
        out.push((s, &text[s..]));
    }
    out
}

struct Keys<'a> {
    line: usize,
    kind_col: usize,
    map: BTreeMap<&'a str, (usize, &'a str)>,
}

impl<'a> Keys<'a> {
    fn new(line: &Line<'a>, allowed: &[&str]) -> Result<Self> {
        let mut map = BTreeMap::new();
        for &(col, w) in &line.words[1..] {
            let Some((k, v)) = w.split_once('=') else {
                return Err(Error::ParseError {
                    line: line.no,
                    column: col + 1,
                    message: format!("expected key=value, got `{w}`"),
                });
            };
            if !allowed.contains(&k) {
                return Err(Error::ParseError {
                    line: line.no,
                    column: col + 1,
                    message: format!("unknown key `{k}` (expected one of {})", allowed.join(", ")),
                });
            }
            if map.insert(k, (col + k.len() + 1, v)).is_some() {
                return Err(Error::ParseError {
                    line: line.no,
                    column: col + 1,
                    message: format!("duplicate key `{k}`"),
                });
            }
        }
        Ok(Keys {
            line: line.no,
            kind_col: line.words[0].0,
            map,
        })
    }
    fn get(&self, k: &str) -> Result<(usize, &'a str)> {
        self.map.get(k).copied().ok_or_else(|| Error::ParseError {
            line: self.line,
            column: self.kind_col + 1,
            message: format!("missing key `{k}`"),
        })
    }
    fn num(&self, k: &str) -> Result<f64> {
        let (col, v) = self.get(k)?;
        v.parse::<f64>()
            .ok()
            .filter(|x| x.is_finite())
            .ok_or_else(|| Error::ParseError {
                line: self.line,
                column: col + 1,
                message: format!("`{k}` needs a real number, got `{v}`"),
            })
    }
    fn cx(&self, k: &str) -> Result<C64> {
        let (col, v) = self.get(k)?;
        parse_complex(v).ok_or_else(|| Error::ParseError {
            line: self.line,
            column: col + 1,
            message: format!("`{k}` needs a complex number like 1-2i, got `{v}`"),
        })
    }
    fn expr(&self, k: &str) -> Result<ScalarFn> {
        let (col, v) = self.get(k)?;
        Ok(parse_expr(v, self.line, col)?.into_fn())
    }
}

pub fn parse_frame_spec(text: &str) -> Result<FrameSpec> {
    let mut frame = None;
    let mut grid = s_grid(-1.0, 1.0, 9);
    for (k, raw) in text.lines().enumerate() {
        let body = raw.split('#').next().unwrap_or("");
        let words = split_words(body);
        if words.is_empty() {
            continue;
        }
        let line = Line { no: k + 1, words };
        let (col, kind) = line.words[0];
        let perr = |m: String| Error::ParseError {
            line: line.no,
            column: col + 1,
            message: m,
        };
        if kind == "grid" {
            let keys = Keys::new(&line, &["s0", "s1", "n"])?;
            let n = keys.num("n")?;
            if n < 2.0 || n.fract() != 0.0 {
                return Err(perr(format!("grid needs an integer n >= 2, got {n}")));
            }
            grid = s_grid(keys.num("s0")?, keys.num("s1")?, n as usize);
            continue;
        }
        if frame.is_some() {
            return Err(perr("only one frame line is allowed".into()));
        }
        frame = Some(match kind {
            "diagonal" => {
                let keys = Keys::new(&line, &["a", "b"])?;
                RuledFrame::screw(keys.num("a")?, keys.num("b")?)
            }
            "case11" => {
                let keys = Keys::new(&line, &["G", "f", "c"])?;
                let c = keys.num("c")?;
                if c == 0.0 {
                    return Err(perr("case11 needs c != 0".into()));
                }
                RuledFrame::case11(keys.expr("G")?, keys.expr("f")?, c)
            }
            "case12" => {
                let keys = Keys::new(&line, &["A", "B1", "B2"])?;
                RuledFrame::case12(keys.expr("A")?, keys.expr("B1")?, keys.expr("B2")?)
            }
            "case21" => {
                let keys = Keys::new(&line, &["A", "B1", "c2"])?;
                RuledFrame::case21(keys.expr("A")?, keys.expr("B1")?, keys.num("c2")?)
            }
            "constant" => {
                let keys = Keys::new(&line, &["alpha", "beta", "gamma"])?;
                let a = keys.cx("alpha")?;
                RuledFrame::exponential(Mat2::new(a, keys.cx("beta")?, keys.cx("gamma")?, -a))
            }
            other => return Err(perr(format!("unknown frame kind `{other}`"))),
        });
    }
    let frame = frame.ok_or(Error::ParseError {
        line: 1,
        column: 1,
        message: "no frame line".into(),
    })?;
    Ok(FrameSpec { frame, grid })
}
