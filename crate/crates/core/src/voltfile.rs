//! Plain-text voltage digraph files.
//!
//! ```text
//! # comment
//! group cyclic <k> | group product <k1> ... <kn> | group table <m>
//!                    (table groups: m further lines of m indices each)
//! vertices <name> <name> ...
//! arc <u> <v> <voltage>    voltage: integer | comma tuple | element index
//! edge <u> <v> <voltage>   sugar for arc u v g plus arc v u g^-1
//! ```
//!
//! The group must be declared before any arc, vertices before they are used,
//! and duplicate arc lines accumulate multiplicity. Cyclic and product
//! voltages accept any integers and reduce them modulo the factor sizes.

use std::fmt;

use crate::group::{FiniteGroup, GroupKind};
use crate::voltage::VoltageDigraph;

/// A parse failure with its 1-based line number.
#[derive(Debug, Clone, PartialEq)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for ParseError {}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        message: message.into(),
    })
}

/// Parse a voltage digraph from the text format.
pub fn parse(text: &str) -> Result<VoltageDigraph, ParseError> {
    let mut group: Option<FiniteGroup> = None;
    let mut labels: Vec<String> = Vec::new();
    let mut arcs: Vec<(usize, usize, usize)> = Vec::new();
    let mut table_rows: Vec<Vec<usize>> = Vec::new();
    let mut table_size: Option<usize> = None;
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        last_line = lineno;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();

        // Collect pending Cayley table rows before any other directive.
        if let Some(m) = table_size {
            if table_rows.len() < m {
                if tokens.len() != m {
                    return err(
                        lineno,
                        format!("cayley table row has {} entries, expected {m}", tokens.len()),
                    );
                }
                let mut row = Vec::with_capacity(m);
                for t in &tokens {
                    match t.parse::<usize>() {
                        Ok(v) => row.push(v),
                        Err(_) => return err(lineno, format!("invalid table entry '{t}'")),
                    }
                }
                table_rows.push(row);
                if table_rows.len() == m {
                    match FiniteGroup::from_cayley_table(&table_rows) {
                        Ok(g) => group = Some(g),
                        Err(e) => return err(lineno, e.to_string()),
                    }
                }
                continue;
            }
        }

        match tokens[0] {
            "group" => {
                if group.is_some() || table_size.is_some() {
                    return err(lineno, "group declared more than once");
                }
                if !arcs.is_empty() {
                    return err(lineno, "group must be declared before any arc");
                }
                match tokens.get(1) {
                    Some(&"cyclic") => {
                        if tokens.len() != 3 {
                            return err(lineno, "usage: group cyclic <k>");
                        }
                        let k: usize = tokens[2]
                            .parse()
                            .map_err(|_| ParseError {
                                line: lineno,
                                message: format!("invalid order '{}'", tokens[2]),
                            })?;
                        match FiniteGroup::cyclic(k) {
                            Ok(g) => group = Some(g),
                            Err(e) => return err(lineno, e.to_string()),
                        }
                    }
                    Some(&"product") => {
                        if tokens.len() < 3 {
                            return err(lineno, "usage: group product <k1> ... <kn>");
                        }
                        let mut factors = Vec::new();
                        for t in &tokens[2..] {
                            match t.parse::<usize>() {
                                Ok(k) => factors.push(k),
                                Err(_) => return err(lineno, format!("invalid factor '{t}'")),
                            }
                        }
                        match FiniteGroup::product(&factors) {
                            Ok(g) => group = Some(g),
                            Err(e) => return err(lineno, e.to_string()),
                        }
                    }
                    Some(&"table") => {
                        if tokens.len() != 3 {
                            return err(lineno, "usage: group table <m>, then m rows");
                        }
                        let m: usize = tokens[2]
                            .parse()
                            .map_err(|_| ParseError {
                                line: lineno,
                                message: format!("invalid order '{}'", tokens[2]),
                            })?;
                        if m == 0 {
                            return err(lineno, "group order must be at least 1");
                        }
                        table_size = Some(m);
                    }
                    _ => return err(lineno, "expected 'cyclic', 'product', or 'table'"),
                }
            }
            "vertices" => {
                if tokens.len() < 2 {
                    return err(lineno, "usage: vertices <name> ...");
                }
                for t in &tokens[1..] {
                    if labels.iter().any(|l| l == t) {
                        return err(lineno, format!("duplicate vertex '{t}'"));
                    }
                    labels.push(t.to_string());
                }
            }
            "arc" | "edge" => {
                let g = match &group {
                    Some(g) => g,
                    None => {
                        return err(
                            lineno,
                            if table_size.is_some() {
                                "cayley table is incomplete"
                            } else {
                                "group must be declared before any arc"
                            },
                        )
                    }
                };
                if tokens.len() != 4 {
                    return err(lineno, format!("usage: {} <u> <v> <voltage>", tokens[0]));
                }
                let find = |name: &str| labels.iter().position(|l| l == name);
                let u = match find(tokens[1]) {
                    Some(u) => u,
                    None => return err(lineno, format!("unknown vertex '{}'", tokens[1])),
                };
                let v = match find(tokens[2]) {
                    Some(v) => v,
                    None => return err(lineno, format!("unknown vertex '{}'", tokens[2])),
                };
                let voltage = match g.parse_element(tokens[3]) {
                    Ok(a) => a,
                    Err(e) => return err(lineno, e.to_string()),
                };
                arcs.push((u, v, voltage));
                if tokens[0] == "edge" {
                    arcs.push((v, u, g.inverse(voltage)));
                }
            }
            other => return err(lineno, format!("unknown directive '{other}'")),
        }
    }

    if let Some(m) = table_size {
        if table_rows.len() < m {
            return err(last_line.max(1), "cayley table is incomplete");
        }
    }
    let group = match group {
        Some(g) => g,
        None => return err(last_line.max(1), "missing group declaration"),
    };
    if labels.is_empty() {
        return err(last_line.max(1), "no vertices declared");
    }
    VoltageDigraph::new(labels, group, arcs).map_err(|e| ParseError {
        line: last_line.max(1),
        message: e.to_string(),
    })
}

/// Serialize to the text format; `parse` of the output reconstructs an equal
/// voltage digraph.
///
/// Vertex labels are emitted as whitespace-separated tokens, so labels
/// containing whitespace or starting with `#` would not survive the round
/// trip. Parsed files and the built-in catalog always satisfy this.
pub fn serialize(vd: &VoltageDigraph) -> String {
    let mut out = String::new();
    let group = vd.group();
    match group.kind() {
        GroupKind::Cyclic(k) => out.push_str(&format!("group cyclic {k}\n")),
        GroupKind::Product(ks) => {
            out.push_str("group product");
            for k in ks {
                out.push_str(&format!(" {k}"));
            }
            out.push('\n');
        }
        GroupKind::Table => {
            let m = group.order();
            out.push_str(&format!("group table {m}\n"));
            for i in 0..m {
                let row: Vec<String> = (0..m).map(|j| group.mul(i, j).to_string()).collect();
                out.push_str(&row.join(" "));
                out.push('\n');
            }
        }
    }
    out.push_str("vertices ");
    out.push_str(&vd.labels().join(" "));
    out.push('\n');
    for arc in vd.arcs() {
        out.push_str(&format!(
            "arc {} {} {}\n",
            vd.labels()[arc.tail],
            vd.labels()[arc.head],
            group.element_name(arc.voltage)
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn parse_alegre_from_text() {
        let text = "\
# base of the Alegre digraph
group cyclic 5
vertices a b c d e
arc a b 0
arc a c 0
arc d a 0
arc d e 0
arc c d 1
arc e a 1
arc e e 1
arc b b 4
arc b c 4
arc c d 4
";
        let vd = parse(text).unwrap();
        assert!(vd.same_structure(&catalog::alegre()));
        assert_eq!(vd.labels()[0], "a");
    }

    #[test]
    fn arc_before_group_is_an_error() {
        let text = "vertices a b\narc a b 0\ngroup cyclic 3\n";
        let e = parse(text).unwrap_err();
        assert_eq!(e.line, 2);
        assert!(e.message.contains("group"));
    }

    #[test]
    fn product_voltages_parse_as_tuples() {
        let text = "group product 5 5\nvertices a b\narc a b 4,2\n";
        let vd = parse(text).unwrap();
        let g = vd.group();
        assert_eq!(g.exponents(vd.arcs()[0].voltage).unwrap(), vec![4, 2]);
    }

    #[test]
    fn unknown_vertex_and_bad_voltage_report_lines() {
        let text = "group cyclic 3\nvertices a\narc a b 0\n";
        let e = parse(text).unwrap_err();
        assert_eq!(e.line, 3);
        assert!(e.message.contains("unknown vertex 'b'"));

        let text = "group product 2 2\nvertices a\narc a a 1\n";
        let e = parse(text).unwrap_err();
        assert_eq!(e.line, 3);
        assert!(e.message.contains("invalid element"));
    }

    #[test]
    fn duplicate_arc_lines_accumulate() {
        let text = "group cyclic 2\nvertices a b\narc a b 1\narc a b 1\n";
        let vd = parse(text).unwrap();
        assert_eq!(vd.arcs().len(), 2);
        let base = vd.base();
        assert_eq!(base.adjacency()[[0, 1]], 2);
    }

    #[test]
    fn edge_sugar_adds_inverse_arc() {
        let text = "group cyclic 5\nvertices a b\nedge a b 2\n";
        let vd = parse(text).unwrap();
        assert_eq!(vd.arcs().len(), 2);
        assert_eq!(vd.arcs()[0].voltage, 2);
        assert_eq!(vd.arcs()[1].voltage, 3);
        assert_eq!(vd.arcs()[1].tail, 1);
    }

    #[test]
    fn negative_cyclic_voltages_reduce() {
        let text = "group cyclic 5\nvertices a\narc a a -1\n";
        let vd = parse(text).unwrap();
        assert_eq!(vd.arcs()[0].voltage, 4);
    }

    #[test]
    fn table_group_round_trip() {
        let text = "\
group table 3
0 1 2
1 2 0
2 0 1
vertices x y
arc x y 1
edge x y 2
";
        let vd = parse(text).unwrap();
        assert_eq!(vd.group().order(), 3);
        assert_eq!(vd.arcs().len(), 3);
        let again = parse(&serialize(&vd)).unwrap();
        assert_eq!(again, vd);
    }

    #[test]
    fn incomplete_table_is_an_error() {
        let text = "group table 3\n0 1 2\n1 2 0\n";
        let e = parse(text).unwrap_err();
        assert!(e.message.contains("incomplete"));
    }

    #[test]
    fn catalog_instances_round_trip() {
        for vd in [
            catalog::alegre(),
            catalog::hoffman_singleton(),
            catalog::generalized_petersen(7, 2).unwrap(),
            catalog::cayley(FiniteGroup::cyclic(6).unwrap(), &[1, 5]).unwrap(),
        ] {
            let again = parse(&serialize(&vd)).unwrap();
            assert_eq!(again, vd, "round trip changed the structure");
        }
    }

    #[test]
    fn missing_group_or_vertices() {
        assert!(parse("vertices a b\n").unwrap_err().message.contains("group"));
        assert!(parse("group cyclic 2\n").unwrap_err().message.contains("vertices"));
    }
}
