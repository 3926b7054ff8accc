use std::fmt::Write as _;

use crate::algebra::{AlgebraSpec, BracketRule, INDEX_FIRST, INDEX_SECOND};

/// Canonical `.lie` text for `spec`; parsing it yields an equal spec.
pub fn render(spec: &AlgebraSpec) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "algebra {}({}) {{", spec.name(), spec.parameters().join(", "));
    for family in spec.families() {
        let _ = writeln!(out, "  family {} weight {};", family.name, family.weight_offset);
    }
    for (&(f, g), rule) in spec.rules() {
        let (left, right) = (&spec.family(f).name, &spec.family(g).name);
        let _ = write!(out, "  bracket [{left} {INDEX_FIRST}, {right} {INDEX_SECOND}] = ");
        match rule {
            BracketRule::Zero => out.push_str("0;\n"),
            BracketRule::Term { coefficient, output } => {
                let _ = writeln!(
                    out,
                    "({coefficient}) {}({INDEX_FIRST}+{INDEX_SECOND});",
                    spec.family(*output).name
                );
            }
        }
    }
    out.push_str("}\n");
    out
}
