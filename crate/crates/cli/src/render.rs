//! Deterministic text and DOT rendering plus class-argument parsing.

use quivertors::error::{Error, Result};
use quivertors::torsops::ClassSet;
use quivertors::universe::Universe;
use quivertors::widetors::HasseQuiver;

/// `{label, label, ...}` in catalog index order.
pub fn class_str(u: &Universe, set: &ClassSet) -> String {
    let labels: Vec<&str> = set.iter().map(|&i| u.label(i)).collect();
    format!("{{{}}}", labels.join(", "))
}

pub fn class_labels(u: &Universe, set: &ClassSet) -> Vec<String> {
    set.iter().map(|&i| u.label(i).to_string()).collect()
}

/// Parse a class argument: `none`, `all`, or labels joined by commas.
/// Labels themselves contain commas inside brackets, so the split tracks
/// bracket depth instead of splitting blindly.
pub fn parse_class(u: &Universe, arg: &str) -> Result<ClassSet> {
    match arg {
        "none" | "{}" => return Ok(ClassSet::new()),
        "all" => return Ok((0..u.len()).collect()),
        _ => {}
    }
    let mut set = ClassSet::new();
    for part in split_top_level(arg) {
        let label = part.trim();
        if label.is_empty() {
            return Err(Error::invalid("empty label in class argument"));
        }
        let idx = u
            .index_of(label)
            .ok_or_else(|| Error::invalid(format!("unknown member label {label:?}")))?;
        set.insert(idx);
    }
    Ok(set)
}

fn split_top_level(s: &str) -> Vec<String> {
    let mut parts = Vec::new();
    let mut depth = 0usize;
    let mut current = String::new();
    for ch in s.chars() {
        match ch {
            '[' | '(' => {
                depth += 1;
                current.push(ch);
            }
            ']' | ')' => {
                depth = depth.saturating_sub(1);
                current.push(ch);
            }
            ',' if depth == 0 => {
                parts.push(std::mem::take(&mut current));
            }
            _ => current.push(ch),
        }
    }
    parts.push(current);
    parts
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// DOT digraph of the cover relation; edges point from the smaller class
/// to the larger one and carry the brick label of the cover.
pub fn hasse_dot(u: &Universe, hq: &HasseQuiver) -> String {
    let mut out = String::from("digraph torsion_classes {\n  rankdir=BT;\n");
    for (i, node) in hq.nodes().iter().enumerate() {
        out.push_str(&format!(
            "  n{i} [label=\"{}\"];\n",
            dot_escape(&class_str(u, node))
        ));
    }
    for e in hq.edges() {
        out.push_str(&format!(
            "  n{} -> n{} [label=\"{}\"];\n",
            e.lower,
            e.upper,
            dot_escape(u.label(e.label))
        ));
    }
    out.push_str("}\n");
    out
}

/// Pretty JSON with a trailing newline, the only JSON shape we emit.
pub fn json_line(value: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("value serializes");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn split_respects_brackets() {
        assert_eq!(
            split_top_level("root[0,1],reg(1,2),inj(0)"),
            vec!["root[0,1]", "reg(1,2)", "inj(0)"]
        );
        assert_eq!(split_top_level("s(1,2)"), vec!["s(1,2)"]);
    }
}
