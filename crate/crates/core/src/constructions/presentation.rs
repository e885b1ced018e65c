//! Finite presentations.
//!
//! ```text
//! gens: x, y, z, t;
//! rels: x^4 = y^4 = z^2 = 1, [x,y] = z, x^t = y, y^t = (xy)^-1;
//! ```
//!
//! A generator name is one letter followed by digits or underscores, so
//! `xy` is the product `x y`. `[a,b]` is `a^-1 b^-1 a b`, `a^b` with an
//! identifier exponent is `b^-1 a b`, and `w1 = w2 = ... = wk` contributes
//! the relators `wi wk^-1`. The full grammar is in `docs/presentation.ebnf`.

use std::fmt;

use crate::error::{Error, Result};

/// Letters are `g + 1` for generator `g` and `-(g + 1)` for its inverse.
pub type Word = Vec<i32>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relators: Vec<Word>,
}

pub fn inverse_word(w: &[i32]) -> Word {
    w.iter().rev().map(|&x| -x).collect()
}

pub fn free_reduce(w: &[i32]) -> Word {
    let mut out: Word = Vec::with_capacity(w.len());
    for &x in w {
        if out.last() == Some(&-x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    out
}

fn power(w: &[i32], n: i64) -> Word {
    let base = if n < 0 { inverse_word(w) } else { w.to_vec() };
    let mut out = Vec::with_capacity(base.len() * n.unsigned_abs() as usize);
    for _ in 0..n.unsigned_abs() {
        out.extend_from_slice(&base);
    }
    out
}

impl Presentation {
    pub fn parse(text: &str) -> Result<Self> {
        Parser::new(text).presentation()
    }

    /// A word over this presentation's generators, e.g. `x^2 y`.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let mut p = Parser::new(text);
        p.generators = self.generators.clone();
        let w = p.word()?;
        p.skip_ws();
        if let Some(c) = p.peek() {
            return Err(p.error(format!("unexpected {c:?} after word")));
        }
        Ok(free_reduce(&w))
    }

    pub fn format_word(&self, w: &[i32]) -> String {
        if w.is_empty() {
            return "1".into();
        }
        let mut parts: Vec<String> = Vec::new();
        let mut i = 0;
        while i < w.len() {
            let x = w[i];
            let mut run = 1;
            while i + run < w.len() && w[i + run] == x {
                run += 1;
            }
            let name = &self.generators[(x.unsigned_abs() - 1) as usize];
            let exp = if x < 0 { -(run as i64) } else { run as i64 };
            parts.push(if exp == 1 { name.clone() } else { format!("{name}^{exp}") });
            i += run;
        }
        parts.join(" ")
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self.relators.iter().map(|r| self.format_word(r)).collect();
        write!(f, "gens: {}; rels: {};", self.generators.join(", "), rels.join(", "))
    }
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    col: usize,
    generators: Vec<String>,
}

impl Parser {
    fn new(text: &str) -> Self {
        Parser {
            chars: text.chars().collect(),
            pos: 0,
            line: 1,
            col: 1,
            generators: Vec::new(),
        }
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::parse(self.line, self.col, message)
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c == '#' {
                while self.peek().is_some_and(|c| c != '\n') {
                    self.bump();
                }
            } else if c.is_whitespace() {
                self.bump();
            } else {
                break;
            }
        }
    }

    fn expect(&mut self, want: char) -> Result<()> {
        self.skip_ws();
        match self.peek() {
            Some(c) if c == want => {
                self.bump();
                Ok(())
            }
            Some(c) => Err(self.error(format!("expected {want:?}, found {c:?}"))),
            None => Err(self.error(format!("expected {want:?}, found end of input"))),
        }
    }

    fn eat(&mut self, want: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(want) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<()> {
        self.skip_ws();
        let end = self.pos + kw.len();
        if end <= self.chars.len() && self.chars[self.pos..end].iter().copied().eq(kw.chars()) {
            for _ in 0..kw.len() {
                self.bump();
            }
            self.expect(':')
        } else {
            Err(self.error(format!("expected `{kw}:`")))
        }
    }

    fn ident(&mut self) -> Result<String> {
        self.skip_ws();
        match self.peek() {
            Some(c) if c.is_ascii_alphabetic() => {
                let mut s = String::new();
                s.push(c);
                self.bump();
                while let Some(c) = self.peek() {
                    if c.is_ascii_digit() || c == '_' {
                        s.push(c);
                        self.bump();
                    } else {
                        break;
                    }
                }
                Ok(s)
            }
            Some(c) => Err(self.error(format!("expected a generator name, found {c:?}"))),
            None => Err(self.error("expected a generator name, found end of input")),
        }
    }

    fn generator(&mut self) -> Result<i32> {
        self.skip_ws();
        let (line, col) = (self.line, self.col);
        let name = self.ident()?;
        self.generators
            .iter()
            .position(|g| *g == name)
            .map(|i| i as i32 + 1)
            .ok_or_else(|| Error::parse(line, col, format!("undeclared generator {name:?}")))
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let mut s = String::new();
        while let Some(c) = self.peek().filter(|c| c.is_ascii_digit()) {
            s.push(c);
            self.bump();
        }
        s.parse().map_err(|_| self.error("expected an integer"))
    }

    fn presentation(mut self) -> Result<Presentation> {
        self.keyword("gens")?;
        loop {
            self.skip_ws();
            let (line, col) = (self.line, self.col);
            let name = self.ident()?;
            if self.generators.contains(&name) {
                return Err(Error::parse(line, col, format!("generator {name:?} declared twice")));
            }
            self.generators.push(name);
            if !self.eat(',') {
                break;
            }
        }
        self.eat(';');
        self.keyword("rels")?;
        let mut relators = Vec::new();
        self.skip_ws();
        if self.peek().is_some_and(|c| c != ';') {
            loop {
                relators.extend(self.relation()?);
                if !self.eat(',') {
                    break;
                }
            }
        }
        self.eat(';');
        self.skip_ws();
        if let Some(c) = self.peek() {
            return Err(self.error(format!("unexpected {c:?}")));
        }
        Ok(Presentation {
            generators: self.generators,
            relators,
        })
    }

    fn relation(&mut self) -> Result<Vec<Word>> {
        let mut sides = vec![self.word()?];
        while self.eat('=') {
            sides.push(self.word()?);
        }
        let last = inverse_word(sides.last().unwrap());
        if sides.len() == 1 {
            let w = free_reduce(&sides[0]);
            return Ok(if w.is_empty() { vec![] } else { vec![w] });
        }
        Ok(sides[..sides.len() - 1]
            .iter()
            .map(|s| {
                let mut w = s.clone();
                w.extend_from_slice(&last);
                free_reduce(&w)
            })
            .filter(|w| !w.is_empty())
            .collect())
    }

    fn word(&mut self) -> Result<Word> {
        self.skip_ws();
        if self.peek() == Some('1') {
            self.bump();
            return Ok(Vec::new());
        }
        let mut w = self.term()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some('*') => {
                    self.bump();
                    w.extend(self.term()?);
                }
                Some(c) if c.is_ascii_alphabetic() || c == '(' || c == '[' => {
                    w.extend(self.term()?);
                }
                _ => return Ok(w),
            }
        }
    }

    fn term(&mut self) -> Result<Word> {
        let mut w = self.atom()?;
        while self.eat('^') {
            self.skip_ws();
            match self.peek() {
                Some(c) if c.is_ascii_alphabetic() => {
                    let b = self.generator()?;
                    let mut conj = vec![-b];
                    conj.extend(w);
                    conj.push(b);
                    w = conj;
                }
                Some('-') => {
                    self.bump();
                    let n = self.integer()?;
                    w = power(&w, -n);
                }
                Some(c) if c.is_ascii_digit() => {
                    let n = self.integer()?;
                    w = power(&w, n);
                }
                _ => return Err(self.error("expected an exponent after '^'")),
            }
        }
        Ok(w)
    }

    fn atom(&mut self) -> Result<Word> {
        self.skip_ws();
        match self.peek() {
            Some('(') => {
                self.bump();
                let w = self.word()?;
                self.expect(')')?;
                Ok(w)
            }
            Some('[') => {
                self.bump();
                let a = self.word()?;
                self.expect(',')?;
                let b = self.word()?;
                self.expect(']')?;
                let mut w = inverse_word(&a);
                w.extend(inverse_word(&b));
                w.extend(a);
                w.extend(b);
                Ok(w)
            }
            _ => Ok(vec![self.generator()?]),
        }
    }
}
