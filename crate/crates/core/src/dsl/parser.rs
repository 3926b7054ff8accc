use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::algebra::{AlgebraError, AlgebraSpec, BracketRule, FamilyId, INDEX_FIRST, INDEX_SECOND, RESERVED_NAMES};
use crate::arith::{IndexPolynomial, Rational};

use super::diagnostic::{Diagnostic, DiagnosticCode, Position};

const MAX_DEPTH: usize = 128;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Punct(char),
    Eof,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    pos: Position,
}

fn describe(tok: &Tok) -> String {
    match tok {
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Int(n) => format!("`{n}`"),
        Tok::Punct(c) => format!("`{c}`"),
        Tok::Eof => "end of input".to_string(),
    }
}

fn lex(src: &str) -> Result<Vec<Token>, Diagnostic> {
    let mut tokens = Vec::new();
    let mut chars = src.chars().peekable();
    let (mut line, mut column) = (1, 1);
    let mut last = Position::start();
    while let Some(&c) = chars.peek() {
        let pos = Position { line, column };
        last = pos;
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let ch = chars.next();
            if ch == Some('\n') {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
            ch
        };
        if c == '#' {
            while let Some(&c) = chars.peek() {
                if c == '\n' {
                    break;
                }
                bump(&mut chars);
            }
        } else if c.is_whitespace() {
            bump(&mut chars);
        } else if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(&c) = chars.peek() {
                if c.is_ascii_alphanumeric() || c == '_' {
                    s.push(c);
                    bump(&mut chars);
                } else {
                    break;
                }
            }
            tokens.push(Token { tok: Tok::Ident(s), pos });
        } else if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&c) = chars.peek() {
                if c.is_ascii_digit() {
                    s.push(c);
                    bump(&mut chars);
                } else {
                    break;
                }
            }
            let value = s.parse().expect("ascii digits");
            tokens.push(Token { tok: Tok::Int(value), pos });
        } else if "(){}[],;=+-*/".contains(c) {
            bump(&mut chars);
            tokens.push(Token { tok: Tok::Punct(c), pos });
        } else {
            return Err(Diagnostic::error(
                pos,
                DiagnosticCode::Syntax,
                format!("unexpected character {c:?}"),
            ));
        }
    }
    let eof_pos = if src.is_empty() { Position::start() } else { last };
    tokens.push(Token { tok: Tok::Eof, pos: eof_pos });
    Ok(tokens)
}

/// Result of a successful parse: the validated spec plus any warnings.
#[derive(Clone, Debug, PartialEq)]
pub struct ParsedAlgebra {
    pub spec: AlgebraSpec,
    pub warnings: Vec<Diagnostic>,
}

/// Parses `.lie` source. On failure returns at least one error diagnostic.
pub fn parse(src: &str) -> Result<ParsedAlgebra, Vec<Diagnostic>> {
    let tokens = lex(src).map_err(|d| vec![d])?;
    let mut p = Parser {
        tokens,
        at: 0,
        depth: 0,
        errors: Vec::new(),
    };
    let parsed = p.algebra().map_err(|d| vec![d])?;
    if p.errors.is_empty() {
        Ok(parsed)
    } else {
        Err(p.errors)
    }
}

/// Like [`parse`], for raw bytes that may not be valid UTF-8.
pub fn parse_bytes(bytes: &[u8]) -> Result<ParsedAlgebra, Vec<Diagnostic>> {
    match std::str::from_utf8(bytes) {
        Ok(src) => parse(src),
        Err(e) => {
            let valid = std::str::from_utf8(&bytes[..e.valid_up_to()]).expect("valid prefix");
            let line = valid.matches('\n').count() + 1;
            let column = valid.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
            Err(vec![Diagnostic::error(
                Position { line, column },
                DiagnosticCode::InvalidUtf8,
                "source is not valid UTF-8",
            )])
        }
    }
}

/// Parses a standalone polynomial expression over the given variables.
pub fn parse_polynomial(src: &str, variables: &[&str]) -> Result<IndexPolynomial, Diagnostic> {
    let tokens = lex(src)?;
    let mut p = Parser {
        tokens,
        at: 0,
        depth: 0,
        errors: Vec::new(),
    };
    let scope: BTreeMap<String, String> = variables.iter().map(|v| (v.to_string(), v.to_string())).collect();
    let poly = p.expr(&scope)?;
    p.expect_eof()?;
    Ok(poly)
}

struct Parser {
    tokens: Vec<Token>,
    at: usize,
    depth: usize,
    errors: Vec<Diagnostic>,
}

type PResult<T> = Result<T, Diagnostic>;

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.at]
    }

    fn next(&mut self) -> Token {
        let t = self.tokens[self.at].clone();
        if self.at + 1 < self.tokens.len() {
            self.at += 1;
        }
        t
    }

    fn unexpected(&self, expected: &str) -> Diagnostic {
        let t = self.peek();
        Diagnostic::error(
            t.pos,
            DiagnosticCode::Syntax,
            format!("expected {expected}, found {}", describe(&t.tok)),
        )
    }

    fn eat_punct(&mut self, c: char) -> bool {
        if self.peek().tok == Tok::Punct(c) {
            self.next();
            true
        } else {
            false
        }
    }

    fn expect_punct(&mut self, c: char) -> PResult<Position> {
        let pos = self.peek().pos;
        if self.eat_punct(c) {
            Ok(pos)
        } else {
            Err(self.unexpected(&format!("`{c}`")))
        }
    }

    fn ident(&mut self, what: &str) -> PResult<(String, Position)> {
        match self.peek().tok.clone() {
            Tok::Ident(s) => {
                let pos = self.next().pos;
                Ok((s, pos))
            }
            _ => Err(self.unexpected(what)),
        }
    }

    fn keyword(&mut self, kw: &str) -> PResult<Position> {
        match &self.peek().tok {
            Tok::Ident(s) if s == kw => Ok(self.next().pos),
            _ => Err(self.unexpected(&format!("`{kw}`"))),
        }
    }

    fn expect_eof(&mut self) -> PResult<()> {
        if self.peek().tok == Tok::Eof {
            Ok(())
        } else {
            Err(self.unexpected("end of input"))
        }
    }

    fn algebra(&mut self) -> PResult<ParsedAlgebra> {
        self.keyword("algebra")?;
        let (name, name_pos) = self.ident("algebra name")?;
        self.expect_punct('(')?;
        let mut params = Vec::new();
        if !self.eat_punct(')') {
            loop {
                let (p, pos) = self.ident("parameter name")?;
                if RESERVED_NAMES.contains(&p.as_str()) {
                    self.errors.push(Diagnostic::error(
                        pos,
                        DiagnosticCode::ReservedName,
                        format!("`{p}` is reserved for index symbols"),
                    ));
                } else if params.contains(&p) {
                    self.errors.push(Diagnostic::error(
                        pos,
                        DiagnosticCode::Duplicate,
                        format!("parameter `{p}` declared twice"),
                    ));
                } else {
                    params.push(p);
                }
                if self.eat_punct(')') {
                    break;
                }
                self.expect_punct(',')?;
            }
        }
        let mut spec = AlgebraSpec::new(name, params.clone())
            .map_err(|e| Diagnostic::error(name_pos, DiagnosticCode::Syntax, e.to_string()))?;
        let param_scope: BTreeMap<String, String> = params.iter().map(|p| (p.clone(), p.clone())).collect();

        self.expect_punct('{')?;
        let close = loop {
            let t = self.peek().clone();
            match &t.tok {
                Tok::Punct('}') => break self.next().pos,
                Tok::Ident(kw) if kw == "family" => self.family(&mut spec, &param_scope)?,
                Tok::Ident(kw) if kw == "bracket" => self.bracket(&mut spec, &params)?,
                _ => return Err(self.unexpected("`family`, `bracket` or `}`")),
            }
        };
        self.expect_eof()?;

        let mut warnings = Vec::new();
        let ids: Vec<FamilyId> = spec.family_ids().collect();
        for (i, &f) in ids.iter().enumerate() {
            for &g in &ids[i..] {
                if spec.rule(f, g).is_none() {
                    warnings.push(Diagnostic::warning(
                        close,
                        DiagnosticCode::ImplicitZero,
                        format!(
                            "no rule for [{}, {}]; bracket defaults to zero",
                            spec.family(f).name,
                            spec.family(g).name
                        ),
                    ));
                }
            }
        }
        Ok(ParsedAlgebra { spec, warnings })
    }

    fn family(&mut self, spec: &mut AlgebraSpec, scope: &BTreeMap<String, String>) -> PResult<()> {
        self.keyword("family")?;
        let (name, pos) = self.ident("family name")?;
        self.keyword("weight")?;
        let offset = self.expr(scope)?;
        self.expect_punct(';')?;
        if let Err(e) = spec.add_family(&name, offset) {
            self.errors.push(algebra_diagnostic(pos, e));
        }
        Ok(())
    }

    fn family_ref(&mut self, spec: &AlgebraSpec) -> PResult<(Option<FamilyId>, Position)> {
        let (name, pos) = self.ident("family name")?;
        let id = spec.family_id(&name);
        if id.is_none() {
            self.errors.push(Diagnostic::error(
                pos,
                DiagnosticCode::UndeclaredFamily,
                format!("undeclared family `{name}`"),
            ));
        }
        Ok((id, pos))
    }

    fn bracket(&mut self, spec: &mut AlgebraSpec, params: &[String]) -> PResult<()> {
        let kw_pos = self.keyword("bracket")?;
        self.expect_punct('[')?;
        let (left, _) = self.family_ref(spec)?;
        let (first, first_pos) = self.ident("index symbol")?;
        self.expect_punct(',')?;
        let (right, _) = self.family_ref(spec)?;
        let (second, second_pos) = self.ident("index symbol")?;
        self.expect_punct(']')?;
        self.expect_punct('=')?;

        for (sym, pos) in [(&first, first_pos), (&second, second_pos)] {
            if params.contains(sym) {
                self.errors.push(Diagnostic::error(
                    pos,
                    DiagnosticCode::ReservedName,
                    format!("index symbol `{sym}` shadows a parameter"),
                ));
            }
        }
        if first == second {
            self.errors.push(Diagnostic::error(
                second_pos,
                DiagnosticCode::Duplicate,
                format!("index symbol `{second}` used twice"),
            ));
        }
        let mut scope: BTreeMap<String, String> = params.iter().map(|p| (p.clone(), p.clone())).collect();
        scope.insert(first.clone(), INDEX_FIRST.to_string());
        scope.insert(second.clone(), INDEX_SECOND.to_string());

        let coeff_pos = self.peek().pos;
        let coefficient = self.expr(&scope)?;
        let output = match self.peek().tok.clone() {
            Tok::Punct(';') => {
                if !coefficient.is_zero() {
                    return Err(Diagnostic::error(
                        coeff_pos,
                        DiagnosticCode::Syntax,
                        "nonzero coefficient needs an output family, e.g. `(m - n) L(n+m)`",
                    ));
                }
                None
            }
            Tok::Ident(_) => {
                let (out, _) = self.family_ref(spec)?;
                self.expect_punct('(')?;
                let index_pos = self.peek().pos;
                let index = self.expr(&scope)?;
                self.expect_punct(')')?;
                let additive = IndexPolynomial::var(INDEX_FIRST) + IndexPolynomial::var(INDEX_SECOND);
                if index != additive {
                    self.errors.push(Diagnostic::error(
                        index_pos,
                        DiagnosticCode::NonAdditiveIndex,
                        format!("non-additive output index: expected {first}+{second}"),
                    ));
                }
                Some(out)
            }
            _ => return Err(self.unexpected("output family or `;`")),
        };
        self.expect_punct(';')?;

        let (Some(left), Some(right)) = (left, right) else {
            return Ok(());
        };
        let rule = match output {
            None => BracketRule::Zero,
            Some(None) => return Ok(()),
            Some(Some(_)) if coefficient.is_zero() => BracketRule::Zero,
            Some(Some(out)) => BracketRule::Term {
                coefficient,
                output: out,
            },
        };
        if let Err(e) = spec.add_rule(left, right, rule) {
            self.errors.push(algebra_diagnostic(kw_pos, e));
        }
        Ok(())
    }

    fn expr(&mut self, scope: &BTreeMap<String, String>) -> PResult<IndexPolynomial> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            let pos = self.peek().pos;
            self.depth -= 1;
            return Err(Diagnostic::error(pos, DiagnosticCode::Syntax, "expression nested too deeply"));
        }
        let result = self.sum(scope);
        self.depth -= 1;
        result
    }

    fn sum(&mut self, scope: &BTreeMap<String, String>) -> PResult<IndexPolynomial> {
        let mut acc = self.product(scope)?;
        loop {
            if self.eat_punct('+') {
                acc = acc + self.product(scope)?;
            } else if self.eat_punct('-') {
                acc = acc - self.product(scope)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn product(&mut self, scope: &BTreeMap<String, String>) -> PResult<IndexPolynomial> {
        let mut acc = self.unary(scope)?;
        loop {
            if self.eat_punct('*') {
                acc = &acc * &self.unary(scope)?;
            } else if self.peek().tok == Tok::Punct('/') {
                let pos = self.next().pos;
                let divisor = self.unary(scope)?;
                match divisor.as_constant() {
                    Some(c) if !c.is_zero() => {
                        acc = acc.scale(&c.recip().expect("nonzero"));
                    }
                    Some(_) => {
                        return Err(Diagnostic::error(pos, DiagnosticCode::NonPolynomial, "division by zero"));
                    }
                    None => {
                        return Err(Diagnostic::error(
                            pos,
                            DiagnosticCode::NonPolynomial,
                            "non-polynomial coefficient: division by a non-constant expression",
                        ));
                    }
                }
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self, scope: &BTreeMap<String, String>) -> PResult<IndexPolynomial> {
        if self.eat_punct('-') {
            return Ok(-self.nested_unary(scope)?);
        }
        if self.eat_punct('+') {
            return self.nested_unary(scope);
        }
        self.primary(scope)
    }

    fn nested_unary(&mut self, scope: &BTreeMap<String, String>) -> PResult<IndexPolynomial> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            let pos = self.peek().pos;
            self.depth -= 1;
            return Err(Diagnostic::error(pos, DiagnosticCode::Syntax, "expression nested too deeply"));
        }
        let r = self.unary(scope);
        self.depth -= 1;
        r
    }

    fn primary(&mut self, scope: &BTreeMap<String, String>) -> PResult<IndexPolynomial> {
        let t = self.peek().clone();
        match t.tok {
            Tok::Int(n) => {
                self.next();
                Ok(IndexPolynomial::constant(Rational::from_integer(n)))
            }
            Tok::Ident(name) => {
                self.next();
                match scope.get(&name) {
                    Some(var) => Ok(IndexPolynomial::var(var)),
                    None => Err(Diagnostic::error(
                        t.pos,
                        DiagnosticCode::UnknownIdentifier,
                        format!("unknown identifier `{name}`"),
                    )),
                }
            }
            Tok::Punct('(') => {
                self.next();
                let inner = self.expr(scope)?;
                self.expect_punct(')')?;
                Ok(inner)
            }
            _ => Err(self.unexpected("expression")),
        }
    }
}

fn algebra_diagnostic(pos: Position, e: AlgebraError) -> Diagnostic {
    let code = match &e {
        AlgebraError::DuplicateFamily(_) | AlgebraError::DuplicateRule { .. } | AlgebraError::DuplicateParameter(_) => {
            DiagnosticCode::Duplicate
        }
        AlgebraError::ReversedRule { .. } => DiagnosticCode::RuleOrder,
        AlgebraError::NotAntisymmetric(_) => DiagnosticCode::NotAntisymmetric,
        AlgebraError::NotGraded { .. } => DiagnosticCode::NotGraded,
        AlgebraError::UnknownFamily(_) => DiagnosticCode::UndeclaredFamily,
        AlgebraError::UnknownVariable(_) => DiagnosticCode::UnknownIdentifier,
        AlgebraError::ReservedName(_) => DiagnosticCode::ReservedName,
        _ => DiagnosticCode::Syntax,
    };
    Diagnostic::error(pos, code, e.to_string())
}
