use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{Multigraph, TwoTerminalGraph, WeightAssignment};
use crate::error::{Error, Result};
use crate::tutte::{ExtendedComplex, System};

/// On-disk graph record: `{"vertices": n, "edges": [[a,b],...], "s": i, "t": j}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GraphRecord {
    pub vertices: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<usize>,
}

impl GraphRecord {
    pub fn graph(&self) -> Result<Multigraph> {
        Multigraph::new(self.vertices, self.edges.iter().map(|e| (e[0], e[1])).collect())
    }

    /// The two-terminal graph, if both terminals are present.
    pub fn two_terminal(&self) -> Result<Option<TwoTerminalGraph>> {
        match (self.s, self.t) {
            (Some(s), Some(t)) => Ok(Some(TwoTerminalGraph::new(self.graph()?, s, t)?)),
            (None, None) => Ok(None),
            _ => Err(Error::Input("graph record has only one of \"s\" and \"t\"".into())),
        }
    }

    pub fn from_graph(g: &Multigraph, terminals: Option<(usize, usize)>) -> Self {
        GraphRecord {
            vertices: g.vertex_count(),
            edges: g.edges().iter().map(|&(a, b)| [a, b]).collect(),
            s: terminals.map(|p| p.0),
            t: terminals.map(|p| p.1),
        }
    }
}

pub fn read_graph_json(text: &str) -> Result<GraphRecord> {
    serde_json::from_str(text).map_err(|e| Error::Input(format!("graph JSON: {e}")))
}

fn parse_value(v: &Value) -> Result<ExtendedComplex> {
    match v {
        Value::String(s) if s == "inf" => Ok(ExtendedComplex::Infinity),
        Value::String(s) if s == "undef" => Ok(ExtendedComplex::Undefined),
        Value::Number(n) => Ok(ExtendedComplex::real(n.as_f64().unwrap_or(f64::NAN))),
        Value::Object(m) => {
            let part = |k: &str| m.get(k).map_or(Some(0.0), |x| x.as_f64());
            match (part("re"), part("im")) {
                (Some(re), Some(im)) => Ok(ExtendedComplex::Finite(Complex64::new(re, im))),
                _ => Err(Error::Input(format!("bad weight value {v}"))),
            }
        }
        _ => Err(Error::Input(format!("bad weight value {v}"))),
    }
}

/// Weight file: a JSON object mapping edge indices to `{"re","im"}`, a number,
/// `"inf"` or `"undef"`, plus `"system": "V" | "T" | "Y"`.
pub fn read_weights_json(text: &str, edge_count: usize) -> Result<WeightAssignment> {
    let root: Value = serde_json::from_str(text).map_err(|e| Error::Input(format!("weights JSON: {e}")))?;
    let obj = root.as_object().ok_or_else(|| Error::Input("weights JSON must be an object".into()))?;
    let system = match obj.get("system").and_then(|s| s.as_str()) {
        Some("V") | None => System::V,
        Some("T") => System::T,
        Some("Y") => System::Y,
        Some(other) => return Err(Error::Input(format!("unknown weight system {other:?}"))),
    };
    let mut values = vec![None; edge_count];
    for (k, v) in obj {
        if k == "system" {
            continue;
        }
        let e: usize = k.parse().map_err(|_| Error::Input(format!("weight key {k:?} is not an edge index")))?;
        let slot = values.get_mut(e).ok_or_else(|| Error::Input(format!("edge index {e} out of range")))?;
        *slot = Some(parse_value(v)?);
    }
    let values = values
        .into_iter()
        .enumerate()
        .map(|(e, x)| x.ok_or_else(|| Error::Input(format!("no weight for edge {e}"))))
        .collect::<Result<Vec<_>>>()?;
    Ok(WeightAssignment { system, values })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_roundtrip() {
        let rec = read_graph_json(r#"{"vertices": 3, "edges": [[0,1],[1,2]], "s": 0, "t": 2}"#).unwrap();
        let tt = rec.two_terminal().unwrap().unwrap();
        assert_eq!(tt.graph.edge_count(), 2);
        let back = GraphRecord::from_graph(&tt.graph, Some((0, 2)));
        assert_eq!(back, rec);
        assert!(read_graph_json(r#"{"vertices": 1, "edges": [[0,1]]}"#).unwrap().graph().is_err());
    }

    #[test]
    fn weights() {
        let w = read_weights_json(r#"{"system":"T","0":{"re":0.5,"im":-1},"1":"inf","2":-1}"#, 3).unwrap();
        assert_eq!(w.system, System::T);
        assert_eq!(w.values[0], ExtendedComplex::new(0.5, -1.0));
        assert_eq!(w.values[1], ExtendedComplex::Infinity);
        assert_eq!(w.values[2], ExtendedComplex::real(-1.0));
        assert!(read_weights_json(r#"{"0": 1}"#, 2).is_err());
        assert!(read_weights_json(r#"{"0": 1, "5": 2}"#, 1).is_err());
    }
}
