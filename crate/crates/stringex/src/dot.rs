//! DOT export for both quiver views. Output is deterministic: vertices in
//! label order, edges sorted by endpoints.

use std::fmt::Write;

use crate::exchange::{ColouredQuiver, UsualQuiver};

/// Coloured quiver as DOT: horizontal arrows solid, inclined arrows dashed
/// and labeled with the entry magnitude from the Cartan matrix.
pub fn coloured_to_dot(quiver: &ColouredQuiver, cartan: &crate::CartanMatrix) -> String {
    let mut out = String::from("digraph coloured {\n  rankdir=LR;\n");
    for v in &quiver.vertices {
        writeln!(out, "  \"{v}\";").unwrap();
    }
    let mut horizontal = quiver.horizontal.clone();
    horizontal.sort();
    for (x, z) in horizontal {
        writeln!(out, "  \"{x}\" -> \"{z}\";").unwrap();
    }
    let mut inclined = quiver.inclined.clone();
    inclined.sort();
    for (x, z) in inclined {
        let mult = cartan.a(x.level, z.level).abs();
        writeln!(out, "  \"{x}\" -> \"{z}\" [style=dashed, label={mult}];").unwrap();
    }
    out.push_str("}\n");
    out
}

/// Usual quiver as DOT: one solid edge per arrow class, labeled with its
/// multiplicity.
pub fn usual_to_dot(quiver: &UsualQuiver) -> String {
    let mut out = String::from("digraph usual {\n  rankdir=LR;\n");
    for v in &quiver.vertices {
        writeln!(out, "  \"{v}\";").unwrap();
    }
    for (&(from, to), &mult) in &quiver.arrows {
        writeln!(out, "  \"{from}\" -> \"{to}\" [label={mult}];").unwrap();
    }
    out.push_str("}\n");
    out
}
