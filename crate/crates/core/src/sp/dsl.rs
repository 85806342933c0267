//! Composition expressions: `e`, `W`, `S(x, y, ...)`, `P(x, y, ...)`, with
//! postfix repetition `x^||n` (parallel copies) and `x^⋈n` (series copies).

use std::fmt;

use super::{DecompTree, TreeBuilder};
use crate::error::{Error, Result};
use crate::graph::TwoTerminalGraph;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpExpr {
    Edge,
    Wheatstone,
    Series(Vec<SpExpr>),
    Parallel(Vec<SpExpr>),
}

impl SpExpr {
    pub fn series(parts: Vec<SpExpr>) -> SpExpr {
        Self::nary(parts, SpExpr::Series)
    }

    pub fn parallel(parts: Vec<SpExpr>) -> SpExpr {
        Self::nary(parts, SpExpr::Parallel)
    }

    fn nary(mut parts: Vec<SpExpr>, wrap: fn(Vec<SpExpr>) -> SpExpr) -> SpExpr {
        assert!(!parts.is_empty(), "composition of nothing");
        if parts.len() == 1 {
            parts.pop().unwrap()
        } else {
            wrap(parts)
        }
    }

    pub fn edge_count(&self) -> usize {
        match self {
            SpExpr::Edge => 1,
            SpExpr::Wheatstone => 5,
            SpExpr::Series(xs) | SpExpr::Parallel(xs) => xs.iter().map(|x| x.edge_count()).sum(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.inner_vertices() + 2
    }

    fn inner_vertices(&self) -> usize {
        match self {
            SpExpr::Edge => 0,
            SpExpr::Wheatstone => 2,
            SpExpr::Series(xs) => xs.iter().map(|x| x.inner_vertices()).sum::<usize>() + xs.len() - 1,
            SpExpr::Parallel(xs) => xs.iter().map(|x| x.inner_vertices()).sum(),
        }
    }

    /// Build the denoted graph (terminals `s = 0`, `t = 1`) and its tree.
    pub fn build(&self) -> (TwoTerminalGraph, DecompTree) {
        let mut b = TreeBuilder::new(2);
        let root = self.build_into(&mut b, 0, 1);
        let (g, tree) = b.finish(root);
        (TwoTerminalGraph::new(g, 0, 1).expect("distinct terminals"), tree)
    }

    pub(crate) fn build_into(&self, b: &mut TreeBuilder, s: usize, t: usize) -> usize {
        match self {
            SpExpr::Edge => b.edge(s, t),
            SpExpr::Wheatstone => b.wheatstone(s, t),
            SpExpr::Parallel(xs) => {
                let mut acc = xs[0].build_into(b, s, t);
                for x in &xs[1..] {
                    let n = x.build_into(b, s, t);
                    acc = b.parallel(acc, n);
                }
                acc
            }
            SpExpr::Series(xs) => {
                let k = xs.len();
                let mut from = s;
                let mut acc = None;
                for (i, x) in xs.iter().enumerate() {
                    let to = if i + 1 == k { t } else { b.add_vertex() };
                    let n = x.build_into(b, from, to);
                    acc = Some(match acc {
                        None => n,
                        Some(a) => b.series(a, n),
                    });
                    from = to;
                }
                acc.unwrap()
            }
        }
    }
}

impl fmt::Display for SpExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |f: &mut fmt::Formatter<'_>, tag: &str, xs: &[SpExpr]| {
            write!(f, "{tag}(")?;
            for (i, x) in xs.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")
        };
        match self {
            SpExpr::Edge => write!(f, "e"),
            SpExpr::Wheatstone => write!(f, "W"),
            SpExpr::Series(xs) => list(f, "S", xs),
            SpExpr::Parallel(xs) => list(f, "P", xs),
        }
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { pos: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<()> {
        if self.eat(token) {
            Ok(())
        } else {
            self.err(format!("expected '{token}'"))
        }
    }

    fn number(&mut self) -> Result<usize> {
        self.skip_ws();
        let digits: String = self.src[self.pos..].chars().take_while(|c| c.is_ascii_digit()).collect();
        if digits.is_empty() {
            return self.err("expected a repetition count");
        }
        let n: usize = digits.parse().or_else(|_| self.err("repetition count too large"))?;
        if n == 0 {
            return self.err("repetition count must be at least 1");
        }
        self.pos += digits.len();
        Ok(n)
    }

    fn expr(&mut self) -> Result<SpExpr> {
        let mut x = self.atom()?;
        while self.eat("^") {
            let parallel = if self.eat("||") {
                true
            } else if self.eat("⋈") || self.eat("><") {
                false
            } else {
                return self.err("expected '||' or '⋈' after '^'");
            };
            let n = self.number()?;
            let copies = vec![x; n];
            x = if parallel { SpExpr::parallel(copies) } else { SpExpr::series(copies) };
        }
        Ok(x)
    }

    fn atom(&mut self) -> Result<SpExpr> {
        match self.peek() {
            None => self.err("unexpected end of input"),
            Some('e') => {
                self.pos += 1;
                Ok(SpExpr::Edge)
            }
            Some('W') => {
                self.pos += 1;
                Ok(SpExpr::Wheatstone)
            }
            Some(c @ ('S' | 'P')) => {
                self.pos += 1;
                self.expect("(")?;
                let mut parts = vec![self.expr()?];
                while self.eat(",") {
                    parts.push(self.expr()?);
                }
                if parts.len() < 2 {
                    return self.err(format!("{c}(...) needs at least two arguments"));
                }
                self.expect(")")?;
                Ok(if c == 'S' { SpExpr::Series(parts) } else { SpExpr::Parallel(parts) })
            }
            Some(c) => self.err(format!("unexpected character '{c}'")),
        }
    }
}

/// Parse expression text into its syntax tree.
pub fn parse_expr(text: &str) -> Result<SpExpr> {
    let mut p = Parser { src: text, pos: 0 };
    if p.peek().is_none() {
        return Err(Error::Syntax { pos: 0, msg: "empty expression".into() });
    }
    let x = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(x)
}

/// Parse expression text and build its graph and decomposition tree.
pub fn parse_sp(text: &str) -> Result<(TwoTerminalGraph, DecompTree)> {
    Ok(parse_expr(text)?.build())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sp::NodeKind;

    #[test]
    fn triple_bundle() {
        let (g, tree) = parse_sp("P(e,e,e)").unwrap();
        assert_eq!(g.graph.vertex_count(), 2);
        assert_eq!(g.graph.edge_count(), 3);
        tree.validate().unwrap();
    }

    #[test]
    fn diamond_and_bridge_pair() {
        let (d, _) = parse_sp("P(S(e,e),S(e,e))").unwrap();
        assert_eq!((d.graph.vertex_count(), d.graph.edge_count()), (4, 4));
        let (g, tree) = parse_sp(" P( S(e, W) , S(e,W) ) ").unwrap();
        assert_eq!((g.graph.vertex_count(), g.graph.edge_count()), (8, 12));
        tree.validate().unwrap();
        assert!(!tree.is_maximal());
    }

    #[test]
    fn repetition_sugar() {
        assert_eq!(parse_expr("e^||3").unwrap(), parse_expr("P(e,e,e)").unwrap());
        assert_eq!(parse_expr("e^⋈2").unwrap(), parse_expr("S(e,e)").unwrap());
        assert_eq!(parse_expr("S(e,e)^||2").unwrap(), parse_expr("P(S(e,e),S(e,e))").unwrap());
        assert_eq!(parse_expr("e^||1").unwrap(), SpExpr::Edge);
    }

    #[test]
    fn left_fold() {
        let (_, tree) = parse_sp("S(e,e,e)").unwrap();
        let root = tree.root_node();
        let NodeKind::Series(l, _) = root.kind else { panic!() };
        assert!(matches!(tree.node(l).kind, NodeKind::Series(..)));
    }

    #[test]
    fn syntax_errors_carry_position() {
        for (text, pos) in [("", 0), ("P(e)", 3), ("S(e,x)", 4), ("P(e,e", 5), ("e e", 2), ("e^3", 2), ("e^||0", 4)] {
            match parse_expr(text) {
                Err(Error::Syntax { pos: p, .. }) => assert_eq!(p, pos, "{text}"),
                other => panic!("{text}: {other:?}"),
            }
        }
    }

    #[test]
    fn display_roundtrip() {
        let x = parse_expr("P(S(e,W),e^||2)").unwrap();
        assert_eq!(x.to_string(), "P(S(e,W),P(e,e))");
        assert_eq!(parse_expr(&x.to_string()).unwrap(), x);
    }

    #[test]
    fn counts_match_built_graph() {
        let x = parse_expr("P(S(e,W,e),S(P(e,e),W))").unwrap();
        let (g, _) = x.build();
        assert_eq!(g.graph.vertex_count(), x.vertex_count());
        assert_eq!(g.graph.edge_count(), x.edge_count());
    }
}
