//! Expression grammar for `expand` and `eval`:
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := factor (['*'] factor)*          juxtaposition also multiplies
//! factor := atom ['^' int]
//! atom   := rational | 'h' | 't' | word | 'z[' int (',' int)* ']'
//!         | name '(' args ')' | '(' expr ')'
//! ```
//!
//! Words are identifiers built from `x` and `y` only. Products are
//! concatenation; maps act with the symbolic parameter `t`. Positions in
//! errors are 1-based character columns.

use tqmzv::coef::parse_rational;
use tqmzv::cyclic::rho_map;
use tqmzv::maps::{d1_derivation, gamma_inverse, gamma_map, phi_map, phi_t_map, s_inverse, s_map_t, t_circledast};
use tqmzv::products::{circledast, harmonic_star, harmonic_star_plus, t_harmonic};
use tqmzv::{CoefPoly, Error, Index, NcPoly, Result, Word};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Sym(char),
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                i += 1;
            }
            // `3/2` is a single rational literal; division is not an operator.
            if i + 1 < chars.len() && chars[i] == '/' && chars[i + 1].is_ascii_digit() {
                i += 1;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
            }
            out.push((start, Tok::Num(chars[start..i].iter().collect())));
        } else if c.is_ascii_alphabetic() {
            while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                i += 1;
            }
            out.push((start, Tok::Ident(chars[start..i].iter().collect())));
        } else if c == 'ħ' {
            i += 1;
            out.push((start, Tok::Ident("h".into())));
        } else if "+-*^(),[]·−".contains(c) {
            i += 1;
            let sym = match c {
                '·' => '*',
                '−' => '-',
                c => c,
            };
            out.push((start, Tok::Sym(sym)));
        } else {
            return Err(err(start, format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

fn err(pos: usize, msg: impl Into<String>) -> Error {
    Error::Parse { pos: pos + 1, msg: msg.into() }
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

const UNARY: [&str; 8] = ["S", "Sinv", "gamma", "gammainv", "phi", "phit", "d1", "Lx"];
const BINARY: [&str; 5] = ["star", "starplus", "tstar", "cast", "tcast"];

impl Parser {
    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |t| t.0)
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.1)
    }

    fn peek_sym(&self, c: char) -> bool {
        self.peek() == Some(&Tok::Sym(c))
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.peek_sym(c) {
            self.at += 1;
            Ok(())
        } else {
            Err(err(self.pos(), format!("expected `{c}`")))
        }
    }

    fn integer(&mut self) -> Result<u32> {
        let pos = self.pos();
        match self.peek() {
            Some(Tok::Num(s)) => {
                let n = s.parse().map_err(|_| err(pos, format!("expected a nonnegative integer, got `{s}`")))?;
                self.at += 1;
                Ok(n)
            }
            _ => Err(err(pos, "expected a nonnegative integer")),
        }
    }

    fn expr(&mut self) -> Result<NcPoly> {
        let neg = self.peek_sym('-');
        if neg {
            self.at += 1;
        }
        let mut acc = self.term()?;
        if neg {
            acc = -acc;
        }
        loop {
            if self.peek_sym('+') {
                self.at += 1;
                acc = &acc + &self.term()?;
            } else if self.peek_sym('-') {
                self.at += 1;
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn starts_atom(&self) -> bool {
        matches!(self.peek(), Some(Tok::Num(_) | Tok::Ident(_)) | Some(Tok::Sym('(')))
    }

    fn term(&mut self) -> Result<NcPoly> {
        let mut acc = self.factor()?;
        loop {
            if self.peek_sym('*') {
                self.at += 1;
            } else if !self.starts_atom() {
                return Ok(acc);
            }
            acc = acc.concat(&self.factor()?);
        }
    }

    fn factor(&mut self) -> Result<NcPoly> {
        let base = self.atom()?;
        if self.peek_sym('^') {
            self.at += 1;
            let e = self.integer()?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<NcPoly> {
        let pos = self.pos();
        let tok = self.peek().cloned().ok_or_else(|| err(pos, "unexpected end of input"))?;
        self.at += 1;
        match tok {
            Tok::Num(s) => {
                let r = parse_rational(&s).map_err(|_| err(pos, format!("invalid number `{s}`")))?;
                Ok(NcPoly::scalar(CoefPoly::constant(r)))
            }
            Tok::Sym('(') => {
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Sym(c) => Err(err(pos, format!("unexpected `{c}`"))),
            Tok::Ident(name) => self.ident(pos, &name),
        }
    }

    fn ident(&mut self, pos: usize, name: &str) -> Result<NcPoly> {
        match name {
            "h" => return Ok(NcPoly::scalar(CoefPoly::h())),
            "t" => return Ok(NcPoly::scalar(CoefPoly::t())),
            "z" if self.peek_sym('[') => return self.index_literal(),
            _ => {}
        }
        if name.chars().all(|c| c == 'x' || c == 'y') {
            let w: Word = name.parse()?;
            return Ok(NcPoly::word(w));
        }
        if UNARY.contains(&name) {
            let args = self.args(pos, name, 1)?;
            let a = &args[0];
            return match name {
                "S" => s_map_t(a),
                "Sinv" => s_inverse(a),
                "gamma" => Ok(gamma_map(a)),
                "gammainv" => Ok(gamma_inverse(a)),
                "phi" => Ok(phi_map(a)),
                "phit" => phi_t_map(a),
                "d1" => Ok(d1_derivation(a)),
                _ => Ok(NcPoly::x().concat(a)),
            };
        }
        if BINARY.contains(&name) {
            let args = self.args(pos, name, 2)?;
            let (a, b) = (&args[0], &args[1]);
            return match name {
                "star" => harmonic_star(a, b),
                "starplus" => harmonic_star_plus(a, b),
                "tstar" => t_harmonic(a, b),
                "cast" => circledast(a, b),
                _ => t_circledast(a, b),
            };
        }
        if name == "rho" {
            self.expect('(')?;
            let n = self.integer()? as usize;
            self.expect(',')?;
            let a = self.expr()?;
            self.expect(')')?;
            return rho_map(n, &a);
        }
        Err(err(pos, format!("unknown name `{name}`")))
    }

    fn args(&mut self, pos: usize, name: &str, count: usize) -> Result<Vec<NcPoly>> {
        self.expect('(')?;
        let mut out = vec![self.expr()?];
        while self.peek_sym(',') {
            self.at += 1;
            out.push(self.expr()?);
        }
        self.expect(')')?;
        if out.len() != count {
            return Err(err(pos, format!("`{name}` takes {count} argument(s), got {}", out.len())));
        }
        Ok(out)
    }

    fn index_literal(&mut self) -> Result<NcPoly> {
        self.expect('[')?;
        let pos = self.pos();
        let mut parts = vec![self.integer()?];
        while self.peek_sym(',') {
            self.at += 1;
            parts.push(self.integer()?);
        }
        self.expect(']')?;
        let idx = Index::new(parts).map_err(|e| err(pos, e.to_string()))?;
        Ok(NcPoly::zs(idx.parts()))
    }
}

/// Parses and evaluates an expression to a normalized polynomial.
pub fn parse_expr(src: &str) -> Result<NcPoly> {
    let toks = lex(src)?;
    let mut p = Parser { toks, at: 0, end: src.chars().count() };
    if p.toks.is_empty() {
        return Err(err(0, "empty expression"));
    }
    let out = p.expr()?;
    if p.at < p.toks.len() {
        return Err(err(p.pos(), "unexpected trailing input"));
    }
    Ok(out)
}
