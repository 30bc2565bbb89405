//! Statement grammar for session scripts: declarations for rings, ideals,
//! points, and rows; command invocations with named outputs; assertions.
//! Parsing and printing round-trip: `parse(print(s)) == s` for every valid
//! statement, and printing canonicalizes whitespace so transcripts are
//! byte-stable.

use std::fmt;

/// Coefficient field of a declared ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldSpec {
    Rationals,
    Prime(u64),
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "QQ"),
            FieldSpec::Prime(p) => write!(f, "F{p}"),
        }
    }
}

/// A reference to an Euler symbol inside a formal sum: either a name bound
/// earlier or an inline literal `(IDEAL, [reps...])`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SymbolRef {
    Named(String),
    Literal { ideal: String, reps: Vec<String> },
}

impl fmt::Display for SymbolRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SymbolRef::Named(name) => write!(f, "{name}"),
            SymbolRef::Literal { ideal, reps } => {
                write!(f, "({ideal}, [{}])", reps.join(", "))
            }
        }
    }
}

/// A signed formal sum of symbol references with integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SumExpr {
    pub terms: Vec<(i64, SymbolRef)>,
}

impl fmt::Display for SumExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (coeff, sym)) in self.terms.iter().enumerate() {
            let magnitude = coeff.unsigned_abs();
            if i == 0 {
                if *coeff < 0 {
                    write!(f, "-")?;
                }
            } else if *coeff < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if magnitude != 1 {
                write!(f, "{magnitude}*")?;
            }
            write!(f, "{sym}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Command {
    Validate { target: String },
    IdealOf { target: String },
    Segre { name: String, ideal: String, reps: Vec<String> },
    Move { name: String, point: String, avoid: Vec<String> },
    Compose { name: String, left: String, right: String },
    Inverse { name: String, source: String },
    Equal { left: String, right: String },
    EulerReduce { name: String, sum: SumExpr },
    Phi { name: String, row: String },
    WeakClass { sum: SumExpr },
    FoldMap { n: usize, field: FieldSpec },
    Jouanolou { n: usize, field: FieldSpec },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Assertion {
    Equal { left: String, right: String },
    Valid { target: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Statement {
    RingDecl { name: String, field: FieldSpec, vars: Vec<String>, relations: Vec<String> },
    IdealDecl { name: String, gens: Vec<String>, ring: String },
    PointDecl { name: String, q: usize, ring: String, a: Vec<String>, b: Vec<String>, s: String },
    RowDecl { name: String, entries: Vec<String>, ring: String },
    Command(Command),
    Assert(Assertion),
}

impl Statement {
    /// The statement text without the trailing semicolon, as echoed in
    /// transcripts.
    pub fn head(&self) -> String {
        let full = self.to_string();
        full.trim_end_matches(';').to_string()
    }
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Statement::RingDecl { name, field, vars, relations } => {
                write!(f, "ring {name} = {field}[{}]", vars.join(", "))?;
                if !relations.is_empty() {
                    write!(f, " / ({})", relations.join(", "))?;
                }
                write!(f, ";")
            }
            Statement::IdealDecl { name, gens, ring } => {
                write!(f, "ideal {name} = ({}) in {ring};", gens.join(", "))
            }
            Statement::PointDecl { name, q, ring, a, b, s } => {
                write!(
                    f,
                    "point {name} : Q{q}({ring}) = ([{}], [{}], {s});",
                    a.join(", "),
                    b.join(", ")
                )
            }
            Statement::RowDecl { name, entries, ring } => {
                write!(f, "row {name} = ({}) in {ring};", entries.join(", "))
            }
            Statement::Command(cmd) => match cmd {
                Command::Validate { target } => write!(f, "validate {target};"),
                Command::IdealOf { target } => write!(f, "ideal-of {target};"),
                Command::Segre { name, ideal, reps } => {
                    write!(f, "segre {name} = ({ideal}, [{}]);", reps.join(", "))
                }
                Command::Move { name, point, avoid } => {
                    write!(f, "move {name} = {point} avoid ({});", avoid.join(", "))
                }
                Command::Compose { name, left, right } => {
                    write!(f, "compose {name} = {left} * {right};")
                }
                Command::Inverse { name, source } => {
                    write!(f, "inverse {name} = {source};")
                }
                Command::Equal { left, right } => write!(f, "equal? {left} {right};"),
                Command::EulerReduce { name, sum } => {
                    write!(f, "euler-reduce {name} = {sum};")
                }
                Command::Phi { name, row } => write!(f, "phi {name} = {row};"),
                Command::WeakClass { sum } => write!(f, "weak-class {sum};"),
                Command::FoldMap { n, field } => {
                    write!(f, "fold-map {n}")?;
                    if *field != FieldSpec::Rationals {
                        write!(f, " over {field}")?;
                    }
                    write!(f, ";")
                }
                Command::Jouanolou { n, field } => {
                    write!(f, "jouanolou {n}")?;
                    if *field != FieldSpec::Rationals {
                        write!(f, " over {field}")?;
                    }
                    write!(f, ";")
                }
            },
            Statement::Assert(a) => match a {
                Assertion::Equal { left, right } => write!(f, "assert equal {left} {right};"),
                Assertion::Valid { target } => write!(f, "assert valid {target};"),
            },
        }
    }
}

/// Position-accurate parse failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub expected: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "parse error at line {}, column {}: expected {}",
            self.line, self.column, self.expected
        )
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(String),
    Sym(char),
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "{s}"),
            Tok::Int(s) => write!(f, "{s}"),
            Tok::Sym(c) => write!(f, "{c}"),
        }
    }
}

const SYMBOLS: &str = "()[]=,;:*+-^/?";

fn lex(text: &str) -> Result<Vec<(Tok, usize, usize)>, ParseError> {
    let mut out = Vec::new();
    let mut line = 1;
    let mut col = 1;
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        if c == '\n' {
            chars.next();
            line += 1;
            col = 1;
        } else if c.is_whitespace() {
            chars.next();
            col += 1;
        } else if c == '#' {
            while let Some(&c) = chars.peek() {
                if c == '\n' {
                    break;
                }
                chars.next();
                col += 1;
            }
        } else if c.is_ascii_alphabetic() || c == '_' {
            let (start_line, start_col) = (line, col);
            let mut word = String::new();
            while let Some(&c) = chars.peek() {
                if c.is_ascii_alphanumeric() || c == '_' {
                    word.push(c);
                    chars.next();
                    col += 1;
                } else {
                    break;
                }
            }
            out.push((Tok::Ident(word), start_line, start_col));
        } else if c.is_ascii_digit() {
            let (start_line, start_col) = (line, col);
            let mut num = String::new();
            while let Some(&c) = chars.peek() {
                if c.is_ascii_digit() {
                    num.push(c);
                    chars.next();
                    col += 1;
                } else {
                    break;
                }
            }
            out.push((Tok::Int(num), start_line, start_col));
        } else if SYMBOLS.contains(c) {
            out.push((Tok::Sym(c), line, col));
            chars.next();
            col += 1;
        } else {
            return Err(ParseError {
                line,
                column: col,
                expected: format!("a token (found {c:?})"),
            });
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _, _)| t)
    }

    fn peek_at(&self, offset: usize) -> Option<&Tok> {
        self.toks.get(self.pos + offset).map(|(t, _, _)| t)
    }

    fn here(&self) -> (usize, usize) {
        self.toks
            .get(self.pos)
            .or_else(|| self.toks.last())
            .map(|(_, l, c)| (*l, *c))
            .unwrap_or((1, 1))
    }

    fn fail<T>(&self, expected: impl Into<String>) -> Result<T, ParseError> {
        let (line, column) = self.here();
        Err(ParseError { line, column, expected: expected.into() })
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _, _)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect_sym(&mut self, c: char) -> Result<(), ParseError> {
        match self.peek() {
            Some(Tok::Sym(s)) if *s == c => {
                self.pos += 1;
                Ok(())
            }
            _ => self.fail(format!("'{c}'")),
        }
    }

    fn expect_ident(&mut self, what: &str) -> Result<String, ParseError> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => self.fail(what.to_string()),
        }
    }

    fn expect_keyword(&mut self, kw: &str) -> Result<(), ParseError> {
        match self.peek() {
            Some(Tok::Ident(s)) if s == kw => {
                self.pos += 1;
                Ok(())
            }
            _ => self.fail(format!("keyword '{kw}'")),
        }
    }

    fn expect_int(&mut self) -> Result<u64, ParseError> {
        match self.peek() {
            Some(Tok::Int(s)) => {
                let v = s.parse::<u64>().map_err(|_| ParseError {
                    line: self.here().0,
                    column: self.here().1,
                    expected: "an integer".into(),
                })?;
                self.pos += 1;
                Ok(v)
            }
            _ => self.fail("an integer"),
        }
    }

    /// True when the upcoming tokens are IDENT '-' IDENT matching the two
    /// halves of a hyphenated keyword.
    fn at_hyphenated(&self, first: &str, second: &str) -> bool {
        matches!(self.peek(), Some(Tok::Ident(a)) if a == first)
            && matches!(self.peek_at(1), Some(Tok::Sym('-')))
            && matches!(self.peek_at(2), Some(Tok::Ident(b)) if b == second)
    }

    /// Captures one polynomial expression: tokens up to a top-level ','
    /// or a closing bracket, re-printed with canonical spacing.
    fn poly_text(&mut self) -> Result<String, ParseError> {
        let mut depth = 0usize;
        let mut taken: Vec<Tok> = Vec::new();
        loop {
            match self.peek() {
                None => break,
                Some(Tok::Sym(c)) => match c {
                    '(' => {
                        depth += 1;
                        taken.push(self.next().unwrap());
                    }
                    ')' | ']' if depth == 0 => break,
                    ')' => {
                        depth -= 1;
                        taken.push(self.next().unwrap());
                    }
                    ',' | ';' if depth == 0 => break,
                    '=' | ':' | '[' | '?' if depth == 0 => break,
                    _ => taken.push(self.next().unwrap()),
                },
                Some(_) => taken.push(self.next().unwrap()),
            }
        }
        if taken.is_empty() {
            return self.fail("a polynomial");
        }
        Ok(render_poly(&taken))
    }

    fn poly_list(&mut self, open: char, close: char) -> Result<Vec<String>, ParseError> {
        self.expect_sym(open)?;
        let mut out = Vec::new();
        if matches!(self.peek(), Some(Tok::Sym(c)) if *c == close) {
            self.pos += 1;
            return Ok(out);
        }
        loop {
            out.push(self.poly_text()?);
            match self.peek() {
                Some(Tok::Sym(',')) => {
                    self.pos += 1;
                }
                Some(Tok::Sym(c)) if *c == close => {
                    self.pos += 1;
                    return Ok(out);
                }
                _ => return self.fail(format!("',' or '{close}'")),
            }
        }
    }

    fn ident_list(&mut self, open: char, close: char) -> Result<Vec<String>, ParseError> {
        self.expect_sym(open)?;
        let mut out = Vec::new();
        if matches!(self.peek(), Some(Tok::Sym(c)) if *c == close) {
            self.pos += 1;
            return Ok(out);
        }
        loop {
            out.push(self.expect_ident("a name")?);
            match self.peek() {
                Some(Tok::Sym(',')) => {
                    self.pos += 1;
                }
                Some(Tok::Sym(c)) if *c == close => {
                    self.pos += 1;
                    return Ok(out);
                }
                _ => return self.fail(format!("',' or '{close}'")),
            }
        }
    }

    fn field_spec(&mut self) -> Result<FieldSpec, ParseError> {
        let word = self.expect_ident("a field (QQ or Fp)")?;
        if word == "QQ" {
            return Ok(FieldSpec::Rationals);
        }
        if let Some(rest) = word.strip_prefix('F') {
            if let Ok(p) = rest.parse::<u64>() {
                return Ok(FieldSpec::Prime(p));
            }
        }
        self.fail("a field (QQ or Fp)")
    }

    fn optional_field(&mut self) -> Result<FieldSpec, ParseError> {
        if matches!(self.peek(), Some(Tok::Ident(s)) if s == "over") {
            self.pos += 1;
            self.field_spec()
        } else {
            Ok(FieldSpec::Rationals)
        }
    }

    fn symbol_ref(&mut self) -> Result<SymbolRef, ParseError> {
        match self.peek() {
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let ideal = self.expect_ident("an ideal name")?;
                self.expect_sym(',')?;
                let reps = self.poly_list('[', ']')?;
                self.expect_sym(')')?;
                Ok(SymbolRef::Literal { ideal, reps })
            }
            Some(Tok::Ident(_)) => Ok(SymbolRef::Named(self.expect_ident("a symbol name")?)),
            _ => self.fail("a symbol name or '(IDEAL, [reps])'"),
        }
    }

    fn sum_expr(&mut self) -> Result<SumExpr, ParseError> {
        let mut terms = Vec::new();
        let mut sign: i64 = 1;
        if matches!(self.peek(), Some(Tok::Sym('-'))) {
            self.pos += 1;
            sign = -1;
        }
        loop {
            let mut coeff = sign;
            if let Some(Tok::Int(_)) = self.peek() {
                let magnitude = self.expect_int()? as i64;
                self.expect_sym('*')?;
                coeff = sign * magnitude;
            }
            terms.push((coeff, self.symbol_ref()?));
            match self.peek() {
                Some(Tok::Sym('+')) => {
                    self.pos += 1;
                    sign = 1;
                }
                Some(Tok::Sym('-')) => {
                    self.pos += 1;
                    sign = -1;
                }
                _ => break,
            }
        }
        Ok(SumExpr { terms })
    }

    fn statement(&mut self) -> Result<Statement, ParseError> {
        let head = match self.peek() {
            Some(Tok::Ident(s)) => s.clone(),
            _ => return self.fail("a statement"),
        };
        let st = match head.as_str() {
            "ring" => {
                self.pos += 1;
                let name = self.expect_ident("a ring name")?;
                self.expect_sym('=')?;
                let field = self.field_spec()?;
                let vars = self.ident_list('[', ']')?;
                let relations = if matches!(self.peek(), Some(Tok::Sym('/'))) {
                    self.pos += 1;
                    self.poly_list('(', ')')?
                } else {
                    Vec::new()
                };
                Statement::RingDecl { name, field, vars, relations }
            }
            "ideal" if !self.at_hyphenated("ideal", "of") => {
                self.pos += 1;
                let name = self.expect_ident("an ideal name")?;
                self.expect_sym('=')?;
                let gens = self.poly_list('(', ')')?;
                self.expect_keyword("in")?;
                let ring = self.expect_ident("a ring name")?;
                Statement::IdealDecl { name, gens, ring }
            }
            "point" => {
                self.pos += 1;
                let name = self.expect_ident("a point name")?;
                self.expect_sym(':')?;
                let q_word = self.expect_ident("Q2n")?;
                let q = q_word
                    .strip_prefix('Q')
                    .and_then(|digits| digits.parse::<usize>().ok())
                    .filter(|q| *q >= 2 && q % 2 == 0);
                let Some(q) = q else {
                    return self.fail("Q2n with a positive even index");
                };
                self.expect_sym('(')?;
                let ring = self.expect_ident("a ring name")?;
                self.expect_sym(')')?;
                self.expect_sym('=')?;
                self.expect_sym('(')?;
                let a = self.poly_list('[', ']')?;
                self.expect_sym(',')?;
                let b = self.poly_list('[', ']')?;
                self.expect_sym(',')?;
                let s = self.poly_text()?;
                self.expect_sym(')')?;
                Statement::PointDecl { name, q, ring, a, b, s }
            }
            "row" => {
                self.pos += 1;
                let name = self.expect_ident("a row name")?;
                self.expect_sym('=')?;
                let entries = self.poly_list('(', ')')?;
                self.expect_keyword("in")?;
                let ring = self.expect_ident("a ring name")?;
                Statement::RowDecl { name, entries, ring }
            }
            "validate" => {
                self.pos += 1;
                let target = self.expect_ident("a name")?;
                Statement::Command(Command::Validate { target })
            }
            "ideal" => {
                // ideal-of
                self.pos += 3;
                let target = self.expect_ident("a name")?;
                Statement::Command(Command::IdealOf { target })
            }
            "segre" => {
                self.pos += 1;
                let name = self.expect_ident("an output name")?;
                self.expect_sym('=')?;
                self.expect_sym('(')?;
                let ideal = self.expect_ident("an ideal name")?;
                self.expect_sym(',')?;
                let reps = self.poly_list('[', ']')?;
                self.expect_sym(')')?;
                Statement::Command(Command::Segre { name, ideal, reps })
            }
            "move" => {
                self.pos += 1;
                let name = self.expect_ident("an output name")?;
                self.expect_sym('=')?;
                let point = self.expect_ident("a point name")?;
                self.expect_keyword("avoid")?;
                let avoid = self.ident_list('(', ')')?;
                Statement::Command(Command::Move { name, point, avoid })
            }
            "compose" => {
                self.pos += 1;
                let name = self.expect_ident("an output name")?;
                self.expect_sym('=')?;
                let left = self.expect_ident("a point name")?;
                self.expect_sym('*')?;
                let right = self.expect_ident("a point name")?;
                Statement::Command(Command::Compose { name, left, right })
            }
            "inverse" => {
                self.pos += 1;
                let name = self.expect_ident("an output name")?;
                self.expect_sym('=')?;
                let source = self.expect_ident("a point name")?;
                Statement::Command(Command::Inverse { name, source })
            }
            "equal" => {
                self.pos += 1;
                self.expect_sym('?')?;
                let left = self.expect_ident("a point name")?;
                let right = self.expect_ident("a point name")?;
                Statement::Command(Command::Equal { left, right })
            }
            "euler" if self.at_hyphenated("euler", "reduce") => {
                self.pos += 3;
                let name = self.expect_ident("an output name")?;
                self.expect_sym('=')?;
                let sum = self.sum_expr()?;
                Statement::Command(Command::EulerReduce { name, sum })
            }
            "phi" => {
                self.pos += 1;
                let name = self.expect_ident("an output name")?;
                self.expect_sym('=')?;
                let row = self.expect_ident("a row name")?;
                Statement::Command(Command::Phi { name, row })
            }
            "weak" if self.at_hyphenated("weak", "class") => {
                self.pos += 3;
                let sum = self.sum_expr()?;
                Statement::Command(Command::WeakClass { sum })
            }
            "fold" if self.at_hyphenated("fold", "map") => {
                self.pos += 3;
                let n = self.expect_int()? as usize;
                let field = self.optional_field()?;
                Statement::Command(Command::FoldMap { n, field })
            }
            "jouanolou" => {
                self.pos += 1;
                let n = self.expect_int()? as usize;
                let field = self.optional_field()?;
                Statement::Command(Command::Jouanolou { n, field })
            }
            "assert" => {
                self.pos += 1;
                let kind = self.expect_ident("'equal' or 'valid'")?;
                match kind.as_str() {
                    "equal" => {
                        let left = self.expect_ident("a name")?;
                        let right = self.expect_ident("a name")?;
                        Statement::Assert(Assertion::Equal { left, right })
                    }
                    "valid" => {
                        let target = self.expect_ident("a name")?;
                        Statement::Assert(Assertion::Valid { target })
                    }
                    _ => return self.fail("'equal' or 'valid'"),
                }
            }
            _ => return self.fail("a statement keyword"),
        };
        self.expect_sym(';')?;
        Ok(st)
    }
}

/// Re-prints a captured polynomial token run with canonical spacing:
/// binary `+`/`-` get surrounding spaces, `*`, `^`, `/` bind tightly, and
/// unary minus attaches to its operand.
fn render_poly(tokens: &[Tok]) -> String {
    let mut out = String::new();
    for (i, t) in tokens.iter().enumerate() {
        match t {
            Tok::Sym(c @ ('+' | '-')) => {
                let unary = i == 0
                    || matches!(
                        tokens[i - 1],
                        Tok::Sym('(' | '+' | '-' | '*' | '^' | '/' | ',')
                    );
                if unary {
                    out.push(*c);
                } else {
                    out.push(' ');
                    out.push(*c);
                    out.push(' ');
                }
            }
            Tok::Sym(c) => out.push(*c),
            Tok::Ident(s) => out.push_str(s),
            Tok::Int(s) => out.push_str(s),
        }
    }
    out
}

/// Parses a single statement (must consume all input).
pub fn parse_statement(text: &str) -> Result<Statement, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0 };
    let st = p.statement()?;
    if p.peek().is_some() {
        return p.fail("end of statement");
    }
    Ok(st)
}

/// Parses a whole session: statements separated by semicolons, comments
/// and blank lines ignored.
pub fn parse_session(text: &str) -> Result<Vec<Statement>, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0 };
    let mut out = Vec::new();
    while p.peek().is_some() {
        out.push(p.statement()?);
    }
    Ok(out)
}
