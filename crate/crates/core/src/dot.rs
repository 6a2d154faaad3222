//! Graphviz export. One arrow per edge, labelled by its weight; source and
//! target carriers are drawn as separate clusters.

use std::fmt::Write;

use crate::relmat::WeightedMatrix;
use crate::triskell::Triskell;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

fn cluster(out: &mut String, name: &str, prefix: &str, points: impl Iterator<Item = String>) {
    let _ = writeln!(out, "  subgraph cluster_{name} {{");
    let _ = writeln!(out, "    label={};", quote(name));
    for p in points {
        let _ = writeln!(
            out,
            "    {} [label={}];",
            quote(&format!("{prefix}{p}")),
            quote(&p)
        );
    }
    out.push_str("  }\n");
}

fn graph(
    sources: Vec<String>,
    targets: Vec<String>,
    arrows: impl Iterator<Item = (String, String, String)>,
) -> String {
    let mut out = String::from("digraph triskell {\n  rankdir=LR;\n");
    cluster(&mut out, "source", "s:", sources.into_iter());
    cluster(&mut out, "target", "t:", targets.into_iter());
    for (s, t, w) in arrows {
        let _ = writeln!(
            out,
            "  {} -> {} [label={}];",
            quote(&format!("s:{s}")),
            quote(&format!("t:{t}")),
            quote(&w)
        );
    }
    out.push_str("}\n");
    out
}

pub fn triskell_to_dot(t: &Triskell) -> String {
    graph(
        t.source().iter().map(|p| p.to_string()).collect(),
        t.target().iter().map(|p| p.to_string()).collect(),
        t.edges().iter().map(|e| {
            (
                t.source().get(e.src).to_string(),
                t.target().get(e.tgt).to_string(),
                e.weight.to_string(),
            )
        }),
    )
}

/// One arrow per non-zero entry.
pub fn matrix_to_dot(m: &WeightedMatrix) -> String {
    let mut arrows = Vec::new();
    for i in 0..m.rows().len() {
        for j in 0..m.cols().len() {
            let x = m.get(i, j);
            if !x.is_zero() {
                arrows.push((
                    m.rows().get(i).to_string(),
                    m.cols().get(j).to_string(),
                    x.to_string(),
                ));
            }
        }
    }
    graph(
        m.rows().iter().map(|p| p.to_string()).collect(),
        m.cols().iter().map(|p| p.to_string()).collect(),
        arrows.into_iter(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::carrier::Carrier;
    use crate::weights::{Monoid, Weight};

    #[test]
    fn one_arrow_per_edge() {
        let c = Carrier::atoms(&["a", "b"]).unwrap();
        let a = "a".parse().unwrap();
        let b = "b".parse().unwrap();
        let t = Triskell::new(
            c.clone(),
            c,
            Monoid::Rational,
            vec![
                (a, b, Weight::ratio(1, 2)),
                (
                    "a".parse().unwrap(),
                    "b".parse().unwrap(),
                    Weight::ratio(1, 2),
                ),
            ],
        )
        .unwrap();
        let dot = triskell_to_dot(&t);
        assert_eq!(dot.matches("->").count(), 2);
        assert!(dot.contains("\"s:a\" -> \"t:b\" [label=\"1/2\"]"));
        assert!(dot.contains("cluster_source") && dot.contains("cluster_target"));
    }
}
