use std::f64::consts::FRAC_PI_4;

use crate::error::{QcaError, Result};
use crate::unitary::UnitaryMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TopologyKind {
    Chain,
    Ring,
}

/// Qubit connectivity. Qubits are numbered `0..n`; qubit 0 is the most
/// significant bit of a basis-state index.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Topology {
    kind: TopologyKind,
    n: usize,
}

impl Topology {
    pub fn new(kind: TopologyKind, n: usize) -> Result<Self> {
        if n < 2 {
            return Err(QcaError::invalid(format!(
                "topology needs at least 2 qubits, got {n}"
            )));
        }
        if kind == TopologyKind::Ring && n < 3 {
            // A 2-qubit "ring" would couple the same pair twice.
            return Err(QcaError::invalid("a ring needs at least 3 qubits"));
        }
        Ok(Topology { kind, n })
    }

    pub fn chain(n: usize) -> Result<Self> {
        Self::new(TopologyKind::Chain, n)
    }

    pub fn ring(n: usize) -> Result<Self> {
        Self::new(TopologyKind::Ring, n)
    }

    pub fn kind(&self) -> TopologyKind {
        self.kind
    }

    pub fn qubits(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        1 << self.n
    }

    pub fn edge_count(&self) -> usize {
        match self.kind {
            TopologyKind::Chain => self.n - 1,
            TopologyKind::Ring => self.n,
        }
    }

    /// Edge `e` couples qubits `(e, e + 1)`; the closing ring edge is `(n − 1, 0)`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.edge_count()).map(move |e| (e, (e + 1) % self.n))
    }

    /// Index of the middle edge of an even-length chain.
    pub fn center_edge(&self) -> Option<usize> {
        (self.kind == TopologyKind::Chain && self.n.is_multiple_of(2)).then(|| self.n / 2 - 1)
    }
}

/// Per-edge coupling angles `c_e` of `exp(i Σ_e c_e σz⊗σz)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CouplingSchedule {
    angles: Vec<f64>,
}

impl CouplingSchedule {
    pub fn new(angles: Vec<f64>) -> Result<Self> {
        if let Some(bad) = angles.iter().find(|a| !a.is_finite()) {
            return Err(QcaError::invalid(format!(
                "coupling angle {bad} is not finite"
            )));
        }
        Ok(CouplingSchedule { angles })
    }

    /// Every edge at `π/4`.
    pub fn uniform(topology: &Topology) -> Self {
        Self::constant(topology, FRAC_PI_4)
    }

    pub fn constant(topology: &Topology, angle: f64) -> Self {
        CouplingSchedule {
            angles: vec![angle; topology.edge_count()],
        }
    }

    /// Uniform `π/4` with the listed `(edge, angle)` overrides.
    pub fn with_overrides(topology: &Topology, overrides: &[(usize, f64)]) -> Result<Self> {
        let mut s = Self::uniform(topology);
        for &(edge, angle) in overrides {
            if edge >= s.angles.len() {
                return Err(QcaError::invalid(format!(
                    "edge {edge} out of range for {} edges",
                    s.angles.len()
                )));
            }
            s.angles[edge] = angle;
        }
        CouplingSchedule::new(s.angles)
    }

    pub fn angles(&self) -> &[f64] {
        &self.angles
    }

    pub fn len(&self) -> usize {
        self.angles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.angles.is_empty()
    }

    pub fn is_uniform(&self) -> bool {
        self.angles.windows(2).all(|w| w[0] == w[1])
    }

    /// Whether the schedule reads the same from both ends.
    pub fn is_palindromic(&self) -> bool {
        self.angles.iter().eq(self.angles.iter().rev())
    }

    pub(crate) fn check(&self, topology: &Topology) -> Result<()> {
        if self.angles.len() != topology.edge_count() {
            return Err(QcaError::invalid(format!(
                "coupling schedule has {} entries but the topology has {} edges",
                self.angles.len(),
                topology.edge_count()
            )));
        }
        Ok(())
    }
}

/// Phases `Σ_e c_e z_j(b) z_j'(b)` of the diagonal coupling, one per basis state `b`.
pub fn nnc_phases(topology: &Topology, couplings: &CouplingSchedule) -> Result<Vec<f64>> {
    couplings.check(topology)?;
    let n = topology.qubits();
    let edges: Vec<(usize, usize)> = topology.edges().collect();
    Ok((0..topology.dim())
        .map(|b| {
            edges
                .iter()
                .zip(couplings.angles())
                .map(|(&(j, k), &c)| {
                    let zj = bit(b, j, n);
                    let zk = bit(b, k, n);
                    // z = +1 for bit 0, −1 for bit 1; the product is +1 iff the bits agree.
                    if zj == zk {
                        c
                    } else {
                        -c
                    }
                })
                .sum()
        })
        .collect())
}

#[inline]
fn bit(b: usize, qubit: usize, n: usize) -> usize {
    (b >> (n - 1 - qubit)) & 1
}

/// The diagonal coupling unitary `exp(i Σ_e c_e σz^j ⊗ σz^j')`.
pub fn nnc_unitary(topology: &Topology, couplings: &CouplingSchedule) -> Result<UnitaryMatrix> {
    Ok(UnitaryMatrix::from_phases(&nnc_phases(
        topology, couplings,
    )?))
}
