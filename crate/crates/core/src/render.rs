//! Deterministic text renderings: Hasse diagrams as DOT or plain edge
//! lists, and pattern grids as `#`/`.` matrices.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use crate::error::Error;
use crate::groupoid::PatternGrid;
use crate::poset::{NodeLabel, WindowPoset};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Dot,
    Ascii,
    Json,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "dot" => Ok(Format::Dot),
            "ascii" => Ok(Format::Ascii),
            "json" => Ok(Format::Json),
            _ => Err(Error::usage(format!("unknown format `{s}` (dot, ascii or json)"))),
        }
    }
}

/// Which part of a fibered label to print.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum LabelStyle {
    Fiber,
    Group,
    #[default]
    Both,
}

impl FromStr for LabelStyle {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "fiber" => Ok(LabelStyle::Fiber),
            "group" => Ok(LabelStyle::Group),
            "both" => Ok(LabelStyle::Both),
            _ => Err(Error::usage(format!("unknown label style `{s}` (fiber, group or both)"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RenderConfig {
    pub format: Format,
    pub labels: LabelStyle,
    /// Group nodes over the same base point into one DOT rank.
    pub rank_hints: bool,
}

impl Default for RenderConfig {
    fn default() -> Self {
        RenderConfig {
            format: Format::Dot,
            labels: LabelStyle::Both,
            rank_hints: true,
        }
    }
}

fn node_label(poset: &WindowPoset, x: usize, style: LabelStyle) -> String {
    match poset.label(x) {
        Some(NodeLabel::Fiber(g, s)) => match style {
            LabelStyle::Fiber => s.clone(),
            LabelStyle::Group => g.to_string(),
            LabelStyle::Both => format!("{g}|{s}"),
        },
        _ => poset.name(x).to_string(),
    }
}

fn rank_key(poset: &WindowPoset, x: usize) -> String {
    match poset.label(x) {
        Some(NodeLabel::Fiber(g, _)) => g.to_string(),
        Some(NodeLabel::Group(g)) => g.to_string(),
        None => poset.name(x).to_string(),
    }
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// The Hasse diagram of `poset`: one edge `p -> q` per cover `p ⋖ q`.
/// DOT output keeps node order, ranks follow the base point when labels
/// carry one; ASCII output is one `p < q` line per cover.
pub fn render_hasse(poset: &WindowPoset, cfg: &RenderConfig) -> String {
    let covers = poset.covers();
    let mut out = String::new();
    match cfg.format {
        Format::Ascii => {
            for (p, q) in covers {
                let _ = writeln!(
                    out,
                    "{} < {}",
                    node_label(poset, p, cfg.labels),
                    node_label(poset, q, cfg.labels)
                );
            }
        }
        Format::Dot | Format::Json => {
            out.push_str("digraph hasse {\n  rankdir=LR;\n  node [shape=plaintext];\n");
            for x in 0..poset.len() {
                let _ = writeln!(out, "  n{x} [label=\"{}\"];", dot_escape(&node_label(poset, x, cfg.labels)));
            }
            if cfg.rank_hints {
                let mut ranks: BTreeMap<(usize, String), Vec<usize>> = BTreeMap::new();
                let mut first_seen: BTreeMap<String, usize> = BTreeMap::new();
                for x in 0..poset.len() {
                    let key = rank_key(poset, x);
                    let first = *first_seen.entry(key.clone()).or_insert(x);
                    ranks.entry((first, key)).or_default().push(x);
                }
                for nodes in ranks.values().filter(|v| v.len() > 1) {
                    out.push_str("  { rank=same;");
                    for x in nodes {
                        let _ = write!(out, " n{x};");
                    }
                    out.push_str(" }\n");
                }
            }
            for (p, q) in covers {
                let _ = writeln!(out, "  n{p} -> n{q};");
            }
            out.push_str("}\n");
        }
    }
    out
}

/// `size` lines of `size` characters, row `b = size-1` first, column `a`
/// left to right; `#` marks a dot.
pub fn render_grid(grid: &PatternGrid) -> String {
    let n = grid.size();
    let rows: Vec<String> = (0..n)
        .rev()
        .map(|b| (0..n).map(|a| if grid.cells[a][b] { '#' } else { '.' }).collect())
        .collect();
    rows.join("\n")
}

/// Reads back a grid rendered by [`render_grid`] as `cells[a][b]`.
pub fn parse_grid(text: &str) -> Result<Vec<Vec<bool>>, Error> {
    let rows: Vec<&str> = text.trim_end_matches('\n').lines().collect();
    let n = rows.len();
    let mut cells = vec![vec![false; n]; n];
    for (r, row) in rows.iter().enumerate() {
        let chars: Vec<char> = row.chars().collect();
        if chars.len() != n {
            return Err(Error::parse(format!("grid row {r} has {} characters, expected {n}", chars.len())));
        }
        let b = n - 1 - r;
        for (a, c) in chars.into_iter().enumerate() {
            cells[a][b] = match c {
                '#' => true,
                '.' => false,
                _ => return Err(Error::parse(format!("unexpected grid character `{c}`"))),
            };
        }
    }
    Ok(cells)
}

/// Labelled cover edges of a DOT Hasse diagram written by [`render_hasse`].
pub fn parse_dot_covers(text: &str) -> Result<Vec<(String, String)>, Error> {
    let mut labels: BTreeMap<String, String> = BTreeMap::new();
    let mut edges = Vec::new();
    for line in text.lines().map(str::trim) {
        if let Some((id, rest)) = line.split_once(" [label=\"") {
            let label = rest
                .strip_suffix("\"];")
                .ok_or_else(|| Error::parse(format!("bad node line `{line}`")))?;
            labels.insert(id.to_string(), label.replace("\\\"", "\"").replace("\\\\", "\\"));
        } else if let Some((a, b)) = line.split_once(" -> ") {
            edges.push((a.to_string(), b.trim_end_matches(';').to_string()));
        }
    }
    edges
        .into_iter()
        .map(|(a, b)| {
            let la = labels.get(&a).ok_or_else(|| Error::parse(format!("unknown node {a}")))?;
            let lb = labels.get(&b).ok_or_else(|| Error::parse(format!("unknown node {b}")))?;
            Ok((la.clone(), lb.clone()))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupElem;

    fn brute_covers(p: &WindowPoset) -> Vec<(usize, usize)> {
        let n = p.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if p.lt(a, b) && !(0..n).any(|x| p.lt(a, x) && p.lt(x, b)) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    #[test]
    fn single_node_has_no_edges() {
        let p = WindowPoset::chain(1);
        let dot = render_hasse(&p, &RenderConfig::default());
        assert!(!dot.contains("->"));
        assert!(parse_dot_covers(&dot).unwrap().is_empty());
    }

    #[test]
    fn chain_is_a_path() {
        let p = WindowPoset::chain(9);
        let dot = render_hasse(&p, &RenderConfig::default());
        assert_eq!(dot.matches("->").count(), 8);
        let ascii = render_hasse(
            &p,
            &RenderConfig {
                format: Format::Ascii,
                ..Default::default()
            },
        );
        assert_eq!(ascii.lines().count(), 8);
    }

    #[test]
    fn covers_match_brute_force() {
        // divisibility on 1..=12
        let names: Vec<String> = (1..=12).map(|i: usize| i.to_string()).collect();
        let p = WindowPoset::from_fn(names, |a, b| (b + 1) % (a + 1) == 0).unwrap();
        let mut got = p.covers();
        got.sort();
        assert_eq!(got, brute_covers(&p));
        let edges = parse_dot_covers(&render_hasse(&p, &RenderConfig::default())).unwrap();
        assert!(edges.contains(&("2".into(), "4".into())));
        assert!(!edges.contains(&("2".into(), "8".into())));
    }

    #[test]
    fn labels_and_ranks() {
        let desc = crate::group::GroupDescriptor::int(1).unwrap();
        let labels: Vec<NodeLabel> = [(1, "0"), (1, "1"), (2, "0")]
            .iter()
            .map(|&(z, s)| NodeLabel::Fiber(GroupElem::vector(desc, vec![z], 0).unwrap(), s.to_string()))
            .collect();
        let p = WindowPoset::antichain(&["a", "b", "c"]).with_labels(labels);
        let dot = render_hasse(&p, &RenderConfig::default());
        assert!(dot.contains("n1 [label=\"(1)|1\"];"));
        assert!(dot.contains("{ rank=same; n0; n1; }"));
        let fiber_only = RenderConfig {
            labels: LabelStyle::Fiber,
            rank_hints: false,
            ..Default::default()
        };
        let dot = render_hasse(&p, &fiber_only);
        assert!(dot.contains("n2 [label=\"0\"];") && !dot.contains("rank=same"));
    }

    #[test]
    fn diagonal_grid() {
        let grid = PatternGrid {
            anchor: (GroupElem::int(0), GroupElem::int(0)),
            offsets: (0..3).map(GroupElem::int).collect(),
            cells: (0..3).map(|a| (0..3).map(|b| a == b).collect()).collect(),
        };
        let text = render_grid(&grid);
        assert_eq!(text, "..#\n.#.\n#..");
        assert_eq!(parse_grid(&text).unwrap(), grid.cells);
    }
}
