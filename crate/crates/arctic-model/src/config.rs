use num_rational::BigRational;
use num_traits::{One, Pow};
use serde::{Deserialize, Serialize};

use crate::{DomainSpec, Lattice, ModelError, ModelParams, VertexType, WeightClass};

/// Thickness of every edge of a domain, stored at the from-end of each edge
/// in the lattice's edge order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Configuration {
    pub domain: DomainSpec,
    pub thick: Vec<bool>,
}

#[derive(Serialize, Deserialize)]
struct ConfigurationJson {
    domain: DomainSpec,
    edge_order: String,
    edges: Vec<u8>,
}

const EDGE_ORDER: &str = "row-major by doubled midpoint (2y, 2x); horizontal edges of each row before the vertical edges above it";

/// Counts of each vertex type, indexed W1..W6.
pub type TypeCounts = [usize; 6];

impl Configuration {
    pub fn new(domain: DomainSpec, thick: Vec<bool>) -> Self {
        Configuration { domain, thick }
    }

    pub fn validate(&self, lattice: &Lattice) -> Result<(), ModelError> {
        lattice.validate(&self.thick)
    }

    pub fn type_counts(&self, lattice: &Lattice) -> Result<TypeCounts, ModelError> {
        let mut n = [0usize; 6];
        for v in 0..lattice.vertices().len() {
            n[lattice.classify(&self.thick, v)? as usize] += 1;
        }
        Ok(n)
    }

    pub fn to_json(&self) -> Result<String, ModelError> {
        let j = ConfigurationJson {
            domain: self.domain.clone(),
            edge_order: EDGE_ORDER.into(),
            edges: self.thick.iter().map(|&b| b as u8).collect(),
        };
        serde_json::to_string(&j).map_err(|e| ModelError::Json(e.to_string()))
    }

    pub fn from_json(s: &str) -> Result<Self, ModelError> {
        let j: ConfigurationJson = serde_json::from_str(s).map_err(|e| ModelError::Json(e.to_string()))?;
        Ok(Configuration { domain: j.domain, thick: j.edges.into_iter().map(|b| b != 0).collect() })
    }
}

/// Vertex type at `pos` in a configuration valid there.
pub fn classify_vertex(config: &Configuration, lattice: &Lattice, pos: (i32, i32)) -> Result<VertexType, ModelError> {
    let v = lattice.vertex_at(pos).ok_or(ModelError::UnknownVertex(pos))?;
    lattice.classify(&config.thick, v)
}

/// a^(n1+n2) b^(n3+n4) c^(n5+n6)
pub fn weight_of_counts(counts: &TypeCounts, params: &ModelParams) -> BigRational {
    let mut per_class = [0u32; 3];
    for (i, &n) in counts.iter().enumerate() {
        let class = VertexType::ALL[i].class() as usize;
        per_class[class] += n as u32;
    }
    let mut w = BigRational::one();
    for (k, class) in [WeightClass::A, WeightClass::B, WeightClass::C].into_iter().enumerate() {
        w *= Pow::pow(params.weight(class), per_class[k]);
    }
    w
}

pub fn config_weight(config: &Configuration, lattice: &Lattice, params: &ModelParams) -> Result<BigRational, ModelError> {
    config.validate(lattice)?;
    Ok(weight_of_counts(&config.type_counts(lattice)?, params))
}
