//! Plain-text graph format.
//!
//! ```text
//! n m
//! u v        (m lines, 0 <= u < v < n)
//! v mask     (optional: n lines, colour c is bit c-1 of mask)
//! poles s t  (optional)
//! ```
//! Blank lines and lines starting with `#` are ignored.

use std::fmt::Write;

use super::{ColourMask, ColouredGraph, LabelledGraph, TwoPoleNetwork};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphFile {
    pub graph: LabelledGraph,
    pub colours: Option<Vec<ColourMask>>,
    pub poles: Option<(usize, usize)>,
}

fn err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn nums(line: usize, s: &str) -> Result<Vec<usize>> {
    s.split_whitespace()
        .map(|w| w.parse::<usize>().map_err(|_| err(line, format!("not a number: {w}"))))
        .collect()
}

pub fn parse(text: &str) -> Result<GraphFile> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (ln, head) = lines.next().ok_or_else(|| err(1, "empty input"))?;
    let head = nums(ln, head)?;
    let [n, m] = head[..] else {
        return Err(err(ln, "header must be `n m`"));
    };
    let mut graph = LabelledGraph::empty(n).map_err(|e| err(ln, e.to_string()))?;
    for _ in 0..m {
        let (ln, l) = lines.next().ok_or_else(|| err(0, "missing edge lines"))?;
        let e = nums(ln, l)?;
        let [u, v] = e[..] else {
            return Err(err(ln, "edge line must be `u v`"));
        };
        if u >= v || v >= n {
            return Err(err(ln, format!("edge ({u},{v}) must satisfy 0 <= u < v < n")));
        }
        if graph.has_edge(u, v) {
            return Err(err(ln, format!("duplicate edge ({u},{v})")));
        }
        graph.add_edge(u, v);
    }
    let rest: Vec<(usize, &str)> = lines.collect();
    let (colour_lines, pole_lines): (Vec<_>, Vec<_>) = rest.into_iter().partition(|(_, l)| !l.starts_with("poles"));
    let colours = if colour_lines.is_empty() {
        None
    } else {
        if colour_lines.len() != n {
            return Err(err(colour_lines[0].0, format!("expected {n} colour lines, got {}", colour_lines.len())));
        }
        let mut cs = vec![None; n];
        for (ln, l) in colour_lines {
            let e = nums(ln, l)?;
            let [v, mask] = e[..] else {
                return Err(err(ln, "colour line must be `vertex mask`"));
            };
            if v >= n || mask > u16::MAX as usize {
                return Err(err(ln, "vertex or mask out of range"));
            }
            if cs[v].replace(ColourMask(mask as u16)).is_some() {
                return Err(err(ln, format!("vertex {v} coloured twice")));
            }
        }
        Some(cs.into_iter().map(|c| c.expect("all vertices present")).collect())
    };
    let poles = match pole_lines.as_slice() {
        [] => None,
        [(ln, l)] => {
            let e = nums(*ln, l.trim_start_matches("poles"))?;
            let [s, t] = e[..] else {
                return Err(err(*ln, "poles line must be `poles s t`"));
            };
            if s == t || s >= n || t >= n {
                return Err(err(*ln, "poles must be two distinct vertices"));
            }
            Some((s, t))
        }
        [_, (ln, _), ..] => return Err(err(*ln, "more than one poles line")),
    };
    Ok(GraphFile { graph, colours, poles })
}

impl GraphFile {
    /// Coloured view; `t` defaults to the largest colour used.
    pub fn coloured(&self, t: Option<usize>) -> Result<ColouredGraph> {
        let colours = self.colours.clone().unwrap_or_else(|| vec![ColourMask::EMPTY; self.graph.n()]);
        let used = colours.iter().fold(0u16, |a, m| a | m.0);
        let t = t.unwrap_or(16 - used.leading_zeros() as usize);
        ColouredGraph::new(self.graph.clone(), t, colours)
    }

    pub fn network(&self) -> Result<TwoPoleNetwork> {
        let (s, t) = self.poles.ok_or_else(|| Error::Precondition("graph file has no poles line".into()))?;
        TwoPoleNetwork::from_graph(&self.graph, s, t)
    }
}

pub fn write_graph(g: &LabelledGraph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

pub fn write_coloured(g: &ColouredGraph) -> String {
    let mut out = write_graph(&g.graph);
    for (v, m) in g.colours.iter().enumerate() {
        writeln!(out, "{v} {}", m.0).unwrap();
    }
    out
}

pub fn write_network(d: &TwoPoleNetwork) -> String {
    let mut out = write_graph(&d.full_graph());
    writeln!(out, "poles {} {}", d.source(), d.sink()).unwrap();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_plain() {
        let g = LabelledGraph::wheel(4);
        let f = parse(&write_graph(&g)).unwrap();
        assert_eq!(f.graph, g);
        assert!(f.colours.is_none() && f.poles.is_none());
    }

    #[test]
    fn round_trip_coloured() {
        let g = ColouredGraph::new(LabelledGraph::path(2), 3, vec![ColourMask(0b101), ColourMask(0b010)]).unwrap();
        let f = parse(&write_coloured(&g)).unwrap();
        assert_eq!(f.coloured(Some(3)).unwrap(), g);
        assert_eq!(f.coloured(None).unwrap().t, 3);
    }

    #[test]
    fn round_trip_network() {
        let d = TwoPoleNetwork::new(LabelledGraph::empty(1).unwrap(), 1, 1, true).unwrap();
        let f = parse(&write_network(&d)).unwrap();
        assert_eq!(f.network().unwrap(), d);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse("").is_err());
        assert!(parse("3 1\n2 1\n").is_err());
        assert!(parse("3 1\n0 5\n").is_err());
        assert!(parse("3 2\n0 1\n").is_err());
        assert!(parse("2 1\n0 1\n0 1\n").is_err());
        assert!(parse("2 1\n0 1\npoles 0 0\n").is_err());
        assert!(parse("# comment\n2 1\n\n0 1\n").is_ok());
    }
}
