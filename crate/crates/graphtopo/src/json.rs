//! JSON documents for filtration networks, diagrams, complexes, embedders and
//! gradient routing maps.

use serde::{Deserialize, Serialize};

use graphtopo_core::embedding::nn::{Dense, Mlp};
use graphtopo_core::embedding::{DeepSets, EmbedderSpec, LocalEmbedder, LocalKind};
use graphtopo_core::grad::RoutingMap;
use graphtopo_core::persistence::CycleSlot;
use graphtopo_core::simplicial::SimplicialComplex;
use graphtopo_core::{Activation, DiagramPair, FiltrationMlp, PersistencePair, VertexFiltration};

use crate::error::{IoError, Result};

fn activation_name(a: Activation) -> &'static str {
    match a {
        Activation::Identity => "identity",
        Activation::Relu => "relu",
        Activation::Sigmoid => "sigmoid",
    }
}

fn parse_activation(s: &str) -> Result<Activation> {
    match s {
        "identity" => Ok(Activation::Identity),
        "relu" => Ok(Activation::Relu),
        "sigmoid" => Ok(Activation::Sigmoid),
        _ => Err(IoError::Invalid(format!("unknown activation {s:?} (identity, relu, sigmoid)"))),
    }
}

fn default_activation() -> String {
    "sigmoid".into()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MlpConfig {
    pub d: usize,
    pub hidden: usize,
    pub k: usize,
    #[serde(default = "default_activation")]
    pub activation: String,
    #[serde(rename = "W1")]
    pub w1: Vec<Vec<f64>>,
    pub b1: Vec<f64>,
    #[serde(rename = "W2")]
    pub w2: Vec<Vec<f64>>,
    pub b2: Vec<f64>,
}

impl MlpConfig {
    pub fn from_mlp(m: &FiltrationMlp) -> Self {
        MlpConfig {
            d: m.input_dim(),
            hidden: m.hidden_dim(),
            k: m.output_dim(),
            activation: activation_name(m.activation).into(),
            w1: m.w1.clone(),
            b1: m.b1.clone(),
            w2: m.w2.clone(),
            b2: m.b2.clone(),
        }
    }

    pub fn to_mlp(&self) -> Result<FiltrationMlp> {
        let mlp = FiltrationMlp::new(
            self.w1.clone(),
            self.b1.clone(),
            self.w2.clone(),
            self.b2.clone(),
            parse_activation(&self.activation)?,
        )?;
        if (mlp.input_dim(), mlp.hidden_dim(), mlp.output_dim()) != (self.d, self.hidden, self.k) {
            return Err(IoError::Invalid(format!(
                "declared shape d={} hidden={} k={} disagrees with the weights ({}, {}, {})",
                self.d,
                self.hidden,
                self.k,
                mlp.input_dim(),
                mlp.hidden_dim(),
                mlp.output_dim()
            )));
        }
        Ok(mlp)
    }
}

/// A finite number or the string `"inf"`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum JsonValue {
    Finite(f64),
    Text(InfTag),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum InfTag {
    #[serde(rename = "inf")]
    Inf,
}

impl JsonValue {
    pub fn new(x: f64) -> Self {
        if x == f64::INFINITY {
            JsonValue::Text(InfTag::Inf)
        } else {
            JsonValue::Finite(x)
        }
    }

    pub fn get(self) -> f64 {
        match self {
            JsonValue::Finite(x) => x,
            JsonValue::Text(InfTag::Inf) => f64::INFINITY,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairJson {
    pub birth: JsonValue,
    pub death: JsonValue,
    pub creator: Option<usize>,
    pub destroyer: Option<usize>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub dummy: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiagramJson {
    pub dim0: Vec<PairJson>,
    pub dim1: Vec<PairJson>,
    pub max_filtration: f64,
}

fn pair_json(p: &PersistencePair) -> PairJson {
    PairJson {
        birth: JsonValue::new(p.birth),
        death: JsonValue::new(p.death),
        creator: Some(p.creator),
        destroyer: p.destroyer,
        dummy: false,
    }
}

impl DiagramJson {
    /// With `include_dummies = false`, `dim1` lists real cycle pairs only and
    /// loses its edge indexing.
    pub fn from_diagram(d: &DiagramPair, include_dummies: bool) -> Self {
        let dim1 = d
            .d1_by_edge
            .iter()
            .filter_map(|slot| match slot {
                CycleSlot::Cycle(p) => Some(pair_json(p)),
                CycleSlot::Dummy if include_dummies => {
                    let (b, de) = slot.tuple();
                    Some(PairJson {
                        birth: JsonValue::new(b),
                        death: JsonValue::new(de),
                        creator: None,
                        destroyer: None,
                        dummy: true,
                    })
                }
                CycleSlot::Dummy => None,
            })
            .collect();
        DiagramJson { dim0: d.d0.iter().map(pair_json).collect(), dim1, max_filtration: d.max_filtration }
    }

    /// Rebuilds an edge-indexed diagram; needs the dummy slots.
    pub fn to_diagram(&self) -> Result<DiagramPair> {
        let pair = |p: &PairJson| -> Result<PersistencePair> {
            Ok(PersistencePair {
                birth: p.birth.get(),
                death: p.death.get(),
                creator: p.creator.ok_or_else(|| IoError::Invalid("pair without creator".into()))?,
                destroyer: p.destroyer,
            })
        };
        Ok(DiagramPair {
            d0: self.dim0.iter().map(pair).collect::<Result<_>>()?,
            d1_by_edge: self
                .dim1
                .iter()
                .map(|p| if p.dummy { Ok(CycleSlot::Dummy) } else { pair(p).map(CycleSlot::Cycle) })
                .collect::<Result<_>>()?,
            max_filtration: self.max_filtration,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimplexJson {
    pub simplex: Vec<usize>,
    pub value: f64,
}

pub fn complex_to_json(k: &SimplicialComplex) -> Vec<SimplexJson> {
    k.simplices().iter().map(|s| SimplexJson { simplex: s.vertices.clone(), value: s.value }).collect()
}

pub fn complex_from_json(items: &[SimplexJson]) -> Result<SimplicialComplex> {
    Ok(SimplicialComplex::new(items.iter().map(|s| (s.simplex.clone(), s.value)))?)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DenseJson {
    pub weight: Vec<Vec<f64>>,
    pub bias: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NetJson {
    pub first: DenseJson,
    pub second: DenseJson,
    #[serde(default = "default_activation")]
    pub activation: String,
}

/// Embedder parameters; `kind` selects the variant.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EmbedderJson {
    Triangle { k: usize, samples: Vec<f64>, mix: DenseJson },
    Gaussian { k: usize, centers: Vec<[f64; 2]>, sigma: f64, mix: DenseJson },
    Line { k: usize, lines: Vec<([f64; 2], f64)>, mix: DenseJson },
    RationalHat { k: usize, centers: Vec<[f64; 2]>, radii: Vec<f64>, mix: DenseJson },
    Deepsets { phi: NetJson, rho: NetJson, out: DenseJson },
}

fn dense_json(d: &Dense) -> DenseJson {
    DenseJson { weight: d.weight.clone(), bias: d.bias.clone() }
}

fn dense(d: &DenseJson) -> Result<Dense> {
    Ok(Dense::new(d.weight.clone(), d.bias.clone())?)
}

fn net_json(m: &Mlp) -> NetJson {
    NetJson { first: dense_json(&m.first), second: dense_json(&m.second), activation: activation_name(m.activation).into() }
}

fn net(m: &NetJson) -> Result<Mlp> {
    Ok(Mlp::new(dense(&m.first)?, dense(&m.second)?, parse_activation(&m.activation)?)?)
}

impl EmbedderJson {
    pub fn from_spec(spec: &EmbedderSpec) -> Self {
        match spec {
            EmbedderSpec::Local(e) => {
                let (k, mix) = (e.k, dense_json(&e.mix));
                match &e.kind {
                    LocalKind::Triangle { samples } => EmbedderJson::Triangle { k, samples: samples.clone(), mix },
                    LocalKind::Gaussian { centers, sigma } => {
                        EmbedderJson::Gaussian { k, centers: centers.clone(), sigma: *sigma, mix }
                    }
                    LocalKind::Line { lines } => EmbedderJson::Line { k, lines: lines.clone(), mix },
                    LocalKind::RationalHat { centers, radii } => {
                        EmbedderJson::RationalHat { k, centers: centers.clone(), radii: radii.clone(), mix }
                    }
                }
            }
            EmbedderSpec::DeepSets(d) => {
                EmbedderJson::Deepsets { phi: net_json(&d.phi), rho: net_json(&d.rho), out: dense_json(&d.out) }
            }
        }
    }

    pub fn to_spec(&self) -> Result<EmbedderSpec> {
        let local = |kind: LocalKind, k: usize, mix: &DenseJson| -> Result<EmbedderSpec> {
            let mix = dense(mix)?;
            if mix.input_dim() != k * kind.atoms() {
                return Err(IoError::Invalid(format!(
                    "mix takes {} inputs but k × atoms = {}",
                    mix.input_dim(),
                    k * kind.atoms()
                )));
            }
            Ok(EmbedderSpec::Local(LocalEmbedder { kind, k, mix }))
        };
        match self {
            EmbedderJson::Triangle { k, samples, mix } => local(LocalKind::Triangle { samples: samples.clone() }, *k, mix),
            EmbedderJson::Gaussian { k, centers, sigma, mix } => {
                if sigma.is_nan() || *sigma <= 0.0 {
                    return Err(IoError::Invalid("gaussian sigma must be positive".into()));
                }
                local(LocalKind::Gaussian { centers: centers.clone(), sigma: *sigma }, *k, mix)
            }
            EmbedderJson::Line { k, lines, mix } => local(LocalKind::Line { lines: lines.clone() }, *k, mix),
            EmbedderJson::RationalHat { k, centers, radii, mix } => {
                if centers.len() != radii.len() {
                    return Err(IoError::Invalid("rational hat needs one radius per centre".into()));
                }
                local(LocalKind::RationalHat { centers: centers.clone(), radii: radii.clone() }, *k, mix)
            }
            EmbedderJson::Deepsets { phi, rho, out } => {
                let (phi, rho, out) = (net(phi)?, net(rho)?, dense(out)?);
                if phi.input_dim() % 2 != 0
                    || rho.input_dim() != phi.output_dim()
                    || out.input_dim() != phi.output_dim() + rho.output_dim()
                {
                    return Err(IoError::Invalid("deepsets layer shapes do not chain".into()));
                }
                Ok(EmbedderSpec::DeepSets(DeepSets { phi, rho, out }))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoutingJson {
    pub n_vertices: usize,
    /// Per vertex row: source vertex of `[birth, death]`, `null` if constant.
    pub dim0: Vec<[Option<usize>; 2]>,
    /// Per edge row.
    pub dim1: Vec<[Option<usize>; 2]>,
}

impl From<&RoutingMap> for RoutingJson {
    fn from(r: &RoutingMap) -> Self {
        RoutingJson { n_vertices: r.n_vertices, dim0: r.d0.clone(), dim1: r.d1.clone() }
    }
}

impl From<RoutingJson> for RoutingMap {
    fn from(r: RoutingJson) -> Self {
        RoutingMap { n_vertices: r.n_vertices, d0: r.dim0, d1: r.dim1 }
    }
}

/// Filtration values as a JSON array indexed by vertex.
pub fn filtration_to_json(f: &VertexFiltration) -> String {
    serde_json::to_string(f.values()).expect("floats serialize")
}

pub fn filtration_from_json(text: &str) -> Result<VertexFiltration> {
    let values: Vec<f64> = serde_json::from_str(text)?;
    Ok(VertexFiltration::new(values)?)
}
