use std::io::Write;

use arctic_model::{Dir, DomainKind, DomainSpec, Lattice, ModelParams, VertexType};

use crate::cftp::Cftp;
use crate::glued::{default_sweeps, triangoloid_samples, GluedMethod};
use crate::SamplerError;

/// Aggregates over independent samples on one domain.
#[derive(Clone, Debug, PartialEq)]
pub struct SampleStats {
    pub domain: DomainSpec,
    pub samples: usize,
    /// Samples with the unique thick vertical edge above the bottom row at
    /// position r = 1..len, counted from the west.
    pub histogram: Vec<u64>,
    /// Samples whose bottom row has no unique thick vertical edge; zero on
    /// domain-wall type domains, where the histogram sums to `samples`.
    pub unrefined: u64,
    /// Vertex positions, in lattice order.
    pub positions: Vec<(i32, i32)>,
    pub w5: Vec<u64>,
    pub w6: Vec<u64>,
    /// For domains with a path entering from the south: per row above the
    /// bottom one, the summed column at which that path leaves the row, and
    /// the number of samples in which it reached the row.
    pub entry: Vec<(u64, u64)>,
    pub method: SamplingMethod,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SamplingMethod {
    Cftp,
    Exact,
    FlipChain { sweeps: usize },
}

impl SamplingMethod {
    pub fn is_exact(self) -> bool {
        !matches!(self, SamplingMethod::FlipChain { .. })
    }
}

fn bottom_edges(lat: &Lattice) -> Vec<usize> {
    let ymin = lat.vertices().iter().map(|v| v.pos.1).min().unwrap_or(0);
    let mut row: Vec<(i32, usize)> = lat
        .vertices()
        .iter()
        .enumerate()
        .filter(|(_, v)| v.pos.1 == ymin)
        .map(|(i, v)| (v.pos.0, lat.slot_edge(i, Dir::N)))
        .collect();
    row.sort();
    row.into_iter().map(|(_, e)| e).collect()
}

fn south_entry(lat: &Lattice) -> Option<usize> {
    lat.edges().iter().enumerate().position(|(_, e)| {
        e.from.is_none() && e.boundary == Some(true) && e.to.is_some_and(|(_, d)| d == Dir::S)
    })
}

/// Vertices visited by the path entering through input edge `e`. At a vertex
/// carrying two paths, the one from the south leaves east and the one from
/// the west leaves north, so paths touch but never cross.
pub fn trace_path(lat: &Lattice, thick: &[bool], e: usize) -> Vec<(i32, i32)> {
    let mut out = Vec::new();
    let mut cur = lat.edges()[e].to;
    while let Some((v, arrived)) = cur {
        out.push(lat.vertices()[v].pos);
        let n = lat.view(thick, v, Dir::N);
        let east = lat.view(thick, v, Dir::E);
        let go = match arrived {
            Dir::S => {
                if east {
                    Dir::E
                } else {
                    Dir::N
                }
            }
            _ => {
                if n {
                    Dir::N
                } else {
                    Dir::E
                }
            }
        };
        cur = lat.edges()[lat.slot_edge(v, go)].to;
    }
    out
}

impl SampleStats {
    pub fn empty(domain: &DomainSpec, lat: &Lattice, method: SamplingMethod) -> Self {
        let ys: Vec<i32> = lat.vertices().iter().map(|v| v.pos.1).collect();
        let rows = match (ys.iter().min(), ys.iter().max()) {
            (Some(a), Some(b)) => (b - a + 1) as usize,
            _ => 0,
        };
        SampleStats {
            domain: domain.clone(),
            samples: 0,
            histogram: vec![0; bottom_edges(lat).len()],
            unrefined: 0,
            positions: lat.vertices().iter().map(|v| v.pos).collect(),
            w5: vec![0; lat.vertices().len()],
            w6: vec![0; lat.vertices().len()],
            entry: if south_entry(lat).is_some() { vec![(0, 0); rows] } else { Vec::new() },
            method,
        }
    }

    pub fn add(&mut self, lat: &Lattice, thick: &[bool]) -> Result<(), SamplerError> {
        self.samples += 1;
        let bottom = bottom_edges(lat);
        let hits: Vec<usize> = (0..bottom.len()).filter(|&k| thick[bottom[k]]).collect();
        match hits.as_slice() {
            [k] => self.histogram[*k] += 1,
            _ => self.unrefined += 1,
        }
        for v in 0..lat.vertices().len() {
            match lat.classify(thick, v)? {
                VertexType::W5 => self.w5[v] += 1,
                VertexType::W6 => self.w6[v] += 1,
                _ => {}
            }
        }
        if let Some(e) = south_entry(lat) {
            let ymin = self.positions.iter().map(|p| p.1).min().unwrap_or(0);
            let path = trace_path(lat, thick, e);
            for w in path.windows(2) {
                if w[1].1 > w[0].1 {
                    let row = (w[0].1 - ymin) as usize;
                    self.entry[row].0 += w[0].0 as u64;
                    self.entry[row].1 += 1;
                }
            }
        }
        Ok(())
    }

    /// Length unit of the rescaled frame: the number of columns, or a + b + c
    /// on a triangoloid.
    pub fn scale(&self) -> f64 {
        match self.domain.kind {
            DomainKind::Triangoloid { a, b, c } => (a + b + c) as f64,
            _ => {
                let xs = self.positions.iter().map(|p| p.0);
                let (lo, hi) = (xs.clone().min().unwrap_or(0), xs.max().unwrap_or(0));
                (hi - lo + 1) as f64
            }
        }
    }

    /// Fraction of samples with a c-type vertex at each position.
    pub fn density(&self) -> Vec<f64> {
        let n = self.samples.max(1) as f64;
        self.w5.iter().zip(&self.w6).map(|(a, b)| (a + b) as f64 / n).collect()
    }

    /// Mean rescaled path of the south entry, one point per row it leaves.
    pub fn entry_profile(&self) -> Vec<(f64, f64)> {
        let n = self.scale();
        let xmin = self.positions.iter().map(|p| p.0).min().unwrap_or(1);
        self.entry
            .iter()
            .enumerate()
            .filter(|(_, &(_, c))| c > 0)
            .map(|(row, &(s, c))| ((s as f64 / c as f64 - xmin as f64 + 0.5) / n, (row + 1) as f64 / n))
            .collect()
    }

    pub fn write_histogram_csv(&self, mut w: impl Write) -> std::io::Result<()> {
        writeln!(w, "r,count")?;
        for (k, c) in self.histogram.iter().enumerate() {
            writeln!(w, "{},{}", k + 1, c)?;
        }
        Ok(())
    }

    pub fn write_density_csv(&self, mut w: impl Write) -> std::io::Result<()> {
        writeln!(w, "x,y,w5,w6,density")?;
        let d = self.density();
        for (k, p) in self.positions.iter().enumerate() {
            writeln!(w, "{},{},{},{},{:.6}", p.0, p.1, self.w5[k], self.w6[k], d[k])?;
        }
        Ok(())
    }
}

/// Samples by CFTP on planar domains, or by the triangoloid sampler.
pub fn sample_configs(domain: &DomainSpec, params: &ModelParams, n: usize, seed: u64) -> Result<(Lattice, Vec<Vec<bool>>, SamplingMethod), SamplerError> {
    if !params.is_ice_point() {
        return Err(SamplerError::NonIcePoint);
    }
    if let DomainKind::Triangoloid { .. } = domain.kind {
        let (configs, m) = triangoloid_samples(domain, n, seed, default_sweeps(domain))?;
        let method = match m {
            GluedMethod::Exact => SamplingMethod::Exact,
            GluedMethod::FlipChain { sweeps } => SamplingMethod::FlipChain { sweeps },
        };
        return Ok((domain.lattice()?, configs, method));
    }
    let c = Cftp::new(domain, params)?;
    let configs = if n == 0 { Vec::new() } else { c.samples(n, seed)? };
    Ok((c.lattice, configs, SamplingMethod::Cftp))
}

pub fn collect_stats(domain: &DomainSpec, params: &ModelParams, n: usize, seed: u64) -> Result<SampleStats, SamplerError> {
    let (lat, configs, method) = sample_configs(domain, params, n, seed)?;
    let mut stats = SampleStats::empty(domain, &lat, method);
    for c in &configs {
        stats.add(&lat, c)?;
    }
    Ok(stats)
}
