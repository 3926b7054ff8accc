use std::fmt;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Error,
    Warning,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DiagnosticCode {
    Syntax,
    InvalidUtf8,
    UndeclaredFamily,
    UnknownIdentifier,
    NonAdditiveIndex,
    NonPolynomial,
    Duplicate,
    RuleOrder,
    ReservedName,
    NotAntisymmetric,
    NotGraded,
    ImplicitZero,
}

impl DiagnosticCode {
    pub fn as_str(self) -> &'static str {
        match self {
            DiagnosticCode::Syntax => "syntax",
            DiagnosticCode::InvalidUtf8 => "invalid-utf8",
            DiagnosticCode::UndeclaredFamily => "undeclared-family",
            DiagnosticCode::UnknownIdentifier => "unknown-identifier",
            DiagnosticCode::NonAdditiveIndex => "non-additive-index",
            DiagnosticCode::NonPolynomial => "non-polynomial",
            DiagnosticCode::Duplicate => "duplicate",
            DiagnosticCode::RuleOrder => "rule-order",
            DiagnosticCode::ReservedName => "reserved-name",
            DiagnosticCode::NotAntisymmetric => "not-antisymmetric",
            DiagnosticCode::NotGraded => "not-graded",
            DiagnosticCode::ImplicitZero => "implicit-zero",
        }
    }
}

/// A message tied to a 1-based line and column of the source.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    pub line: usize,
    pub column: usize,
    pub severity: Severity,
    pub code: DiagnosticCode,
    pub message: String,
}

impl Diagnostic {
    pub fn error(pos: Position, code: DiagnosticCode, message: impl Into<String>) -> Self {
        Diagnostic {
            line: pos.line,
            column: pos.column,
            severity: Severity::Error,
            code,
            message: message.into(),
        }
    }

    pub fn warning(pos: Position, code: DiagnosticCode, message: impl Into<String>) -> Self {
        Diagnostic {
            severity: Severity::Warning,
            ..Diagnostic::error(pos, code, message)
        }
    }

    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sev = match self.severity {
            Severity::Error => "error",
            Severity::Warning => "warning",
        };
        write!(
            f,
            "{}:{}: {sev}[{}]: {}",
            self.line,
            self.column,
            self.code.as_str(),
            self.message
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Position {
    pub line: usize,
    pub column: usize,
}

impl Position {
    pub fn start() -> Self {
        Position { line: 1, column: 1 }
    }
}
