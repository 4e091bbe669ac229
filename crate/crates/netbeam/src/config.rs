//! JSON run configuration.

use std::fs;
use std::path::Path;

use anyhow::{anyhow, bail, Context};
use netbeam_core::{preset, EdgeSpec, InitialData, Mat, Mesh, MetricGraph, Preset, VertexConditions};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub order_j: usize,
    pub edges: Vec<EdgeConfig>,
    pub conditions: ConditionsConfig,
    pub mesh: MeshConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub initial: Option<InitialConfig>,
    #[serde(default)]
    pub analysis: AnalysisConfig,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeConfig {
    pub id: String,
    pub tail: String,
    pub head: String,
    pub length: f64,
    #[serde(default = "unit")]
    pub p: f64,
}

fn unit() -> f64 {
    1.0
}

/// A preset name, or explicit spanning vectors and matrices. Explicit
/// `S`, `D`, `Pi` are read in the orthonormalised bases of `Yd`, `Ys`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ConditionsConfig {
    Preset(PresetConfig),
    Explicit(ExplicitConfig),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresetConfig {
    pub preset: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertex: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExplicitConfig {
    #[serde(rename = "Yd", default)]
    pub yd: Vec<Vec<f64>>,
    #[serde(rename = "Ys", default)]
    pub ys: Vec<Vec<f64>>,
    #[serde(rename = "S", default, skip_serializing_if = "Option::is_none")]
    pub s: Option<Vec<Vec<f64>>>,
    #[serde(rename = "D", default, skip_serializing_if = "Option::is_none")]
    pub d: Option<Vec<Vec<f64>>>,
    #[serde(rename = "Pi", default, skip_serializing_if = "Option::is_none")]
    pub pi: Option<Vec<Vec<f64>>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MeshConfig {
    pub elements_per_edge: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InitialConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f: Option<DataSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g: Option<DataSpec>,
}

/// `"sine k"`, `"bump center width [edge]"`, `"eigenmode k"`,
/// `"constant c"`, `"zero"`, or per-edge polynomial coefficients.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DataSpec {
    Named(String),
    Polynomials(PolynomialSpec),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolynomialSpec {
    pub polynomials: Vec<Vec<f64>>,
}

/// Defaults for command-specific parameters; command-line flags win.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnalysisConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub num_eigs: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t0: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t1: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kappa: Option<f64>,
    /// Evaluation grid intervals per edge.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid_intervals: Option<usize>,
    /// Vertex carrying the dynamic condition for `square-compare`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dynamic_vertex: Option<String>,
}

impl RunConfig {
    pub fn from_json(text: &str) -> anyhow::Result<Self> {
        serde_json::from_str(text).map_err(|e| anyhow!("config: {e}"))
    }

    pub fn load(path: &Path) -> anyhow::Result<Self> {
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        Self::from_json(&text)
    }

    pub fn graph(&self) -> anyhow::Result<MetricGraph> {
        let specs: Vec<EdgeSpec> = self
            .edges
            .iter()
            .map(|e| EdgeSpec::new(e.id.clone(), e.tail.clone(), e.head.clone(), e.length).with_p(e.p))
            .collect();
        Ok(MetricGraph::new(&specs)?)
    }

    pub fn mesh(&self, graph: &MetricGraph) -> anyhow::Result<Mesh> {
        Ok(Mesh::uniform(graph, self.mesh.elements_per_edge)?)
    }

    pub fn conditions(&self, graph: &MetricGraph) -> anyhow::Result<VertexConditions> {
        let j = self.order_j;
        match &self.conditions {
            ConditionsConfig::Preset(p) => {
                let parsed = Preset::parse(&p.preset, p.vertex.as_deref())?;
                Ok(preset(&parsed, graph, j)?)
            }
            ConditionsConfig::Explicit(x) => {
                let dim = graph.boundary_dim(j);
                let mat = |m: &Option<Vec<Vec<f64>>>| -> anyhow::Result<Option<Mat>> {
                    m.as_ref().map(|rows| Mat::from_rows(rows).map_err(anyhow::Error::from)).transpose()
                };
                Ok(VertexConditions::from_spanning_sets(j, dim, &x.yd, &x.ys, mat(&x.s)?, mat(&x.d)?, mat(&x.pi)?)?)
            }
        }
    }

    /// Name recorded in output headers.
    pub fn condition_label(&self) -> String {
        match &self.conditions {
            ConditionsConfig::Preset(p) => match &p.vertex {
                Some(v) => format!("{}({v})", p.preset),
                None => p.preset.clone(),
            },
            ConditionsConfig::Explicit(_) => "explicit".into(),
        }
    }

    /// Vertex named by the conditions block or the analysis section.
    pub fn dynamic_vertex(&self) -> Option<String> {
        self.analysis.dynamic_vertex.clone().or(match &self.conditions {
            ConditionsConfig::Preset(p) => p.vertex.clone(),
            ConditionsConfig::Explicit(_) => None,
        })
    }
}

impl DataSpec {
    pub fn to_initial(&self, graph: &MetricGraph) -> anyhow::Result<InitialData> {
        match self {
            DataSpec::Polynomials(p) => Ok(InitialData::Polynomials(p.polynomials.clone())),
            DataSpec::Named(s) => parse_named(s, graph),
        }
    }
}

fn parse_named(text: &str, graph: &MetricGraph) -> anyhow::Result<InitialData> {
    let words: Vec<&str> = text.split_whitespace().collect();
    let num = |i: usize| -> anyhow::Result<f64> {
        let w = words.get(i).ok_or_else(|| anyhow!("initial data `{text}`: missing argument {i}"))?;
        w.parse::<f64>().with_context(|| format!("initial data `{text}`"))
    };
    let int = |i: usize| -> anyhow::Result<usize> {
        let w = words.get(i).ok_or_else(|| anyhow!("initial data `{text}`: missing argument {i}"))?;
        w.parse::<usize>().with_context(|| format!("initial data `{text}`"))
    };
    let arity = |n: usize| -> anyhow::Result<()> {
        if words.len() != n {
            bail!("initial data `{text}`: expected {} arguments", n - 1);
        }
        Ok(())
    };
    match words.first().copied() {
        Some("zero") => {
            arity(1)?;
            Ok(InitialData::Zero)
        }
        Some("constant") => {
            arity(2)?;
            Ok(InitialData::Constant(num(1)?))
        }
        Some("sine") => {
            arity(2)?;
            Ok(InitialData::Sine(u32::try_from(int(1)?)?))
        }
        Some("eigenmode") => {
            arity(2)?;
            Ok(InitialData::Eigenmode(int(1)?))
        }
        Some("bump") => {
            let edge = match words.len() {
                3 => None,
                4 => Some(graph.edge_index(words[3])?),
                _ => bail!("initial data `{text}`: expected `bump center width [edge]`"),
            };
            Ok(InitialData::Bump { edge, center: num(1)?, width: num(2)? })
        }
        _ => bail!("unknown initial data `{text}`"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const HINGED: &str = r#"{
        "order_j": 2,
        "edges": [{"id": "e", "tail": "a", "head": "b", "length": 3.141592653589793}],
        "conditions": {"preset": "hinged"},
        "mesh": {"elements_per_edge": 8},
        "initial": {"f": "bump 1.5 0.4 e", "g": {"polynomials": [[0.0, 1.0]]}}
    }"#;

    #[test]
    fn round_trip() {
        let c = RunConfig::from_json(HINGED).unwrap();
        let text = serde_json::to_string(&c).unwrap();
        assert_eq!(RunConfig::from_json(&text).unwrap(), c);
        assert_eq!(c.edges[0].p, 1.0);
    }

    #[test]
    fn unknown_fields_rejected() {
        let bad = HINGED.replace("\"order_j\"", "\"colour\": 1, \"order_j\"");
        assert!(RunConfig::from_json(&bad).is_err());
        let bad = HINGED.replace("\"preset\": \"hinged\"", "\"preset\": \"hinged\", \"Yd\": []");
        assert!(RunConfig::from_json(&bad).is_err());
    }

    #[test]
    fn explicit_conditions() {
        let text = r#"{
            "order_j": 1,
            "edges": [{"id": "e", "tail": "a", "head": "b", "length": 1.0}],
            "conditions": {"Ys": [[1, 0], [0, 1]], "S": [[0, 1], [0, 0]]},
            "mesh": {"elements_per_edge": 2}
        }"#;
        let c = RunConfig::from_json(text).unwrap();
        let g = c.graph().unwrap();
        let vc = c.conditions(&g).unwrap();
        assert_eq!(vc.stationary_dim(), 2);
        assert!(!vc.validate().symmetric());
        assert_eq!(c.condition_label(), "explicit");
    }

    #[test]
    fn named_data() {
        let c = RunConfig::from_json(HINGED).unwrap();
        let g = c.graph().unwrap();
        let d = c.initial.unwrap().f.unwrap().to_initial(&g).unwrap();
        assert_eq!(d, InitialData::Bump { edge: Some(0), center: 1.5, width: 0.4 });
        assert!(parse_named("sine", &g).is_err());
        assert!(parse_named("wobble 3", &g).is_err());
        assert_eq!(parse_named("constant -2.5", &g).unwrap(), InitialData::Constant(-2.5));
    }
}
