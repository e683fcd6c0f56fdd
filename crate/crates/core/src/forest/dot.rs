//! Graphviz export. Vertices are drawn as circles, edges as arrows from the
//! lower end to the upper end; open leaf and root ends are points.

use std::fmt::Write;

use super::Forest;

pub fn forest_to_dot(f: &Forest) -> String {
    let n = f.length();
    let mut out = String::from("digraph forest {\n  rankdir=BT;\n");
    for level in 1..=n {
        for v in 0..f.size(level) {
            writeln!(out, "  v{level}_{v} [label=\"\", shape=circle];").unwrap();
        }
    }
    for e in 0..f.size(0) {
        writeln!(out, "  leaf{e} [label=\"\", shape=point];").unwrap();
    }
    for r in 0..f.size(n) {
        writeln!(out, "  root{r} [label=\"\", shape=point];").unwrap();
    }
    for level in 0..=n {
        for e in 0..f.size(level) {
            let lower = if level == 0 { format!("leaf{e}") } else { format!("v{level}_{e}") };
            let upper =
                if level == n { format!("root{e}") } else { format!("v{}_{}", level + 1, f.chain()[level].apply(e)) };
            writeln!(out, "  {lower} -> {upper} [label=\"{level}.{e}\"];").unwrap();
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count(s: &str, pat: &str) -> usize {
        s.lines().filter(|l| l.contains(pat)).count()
    }

    #[test]
    fn corolla_has_one_vertex_and_four_edges() {
        let d = forest_to_dot(&Forest::corolla(3));
        assert_eq!(count(&d, "shape=circle"), 1);
        assert_eq!(count(&d, "->"), 4);
        assert_eq!(d, forest_to_dot(&Forest::corolla(3)));
    }

    #[test]
    fn eta_is_a_bare_edge() {
        let d = forest_to_dot(&Forest::eta());
        assert_eq!(count(&d, "shape=circle"), 0);
        assert_eq!(count(&d, "->"), 1);
    }
}
