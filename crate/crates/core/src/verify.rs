//! All objects for one `(Φ, c)` built together, and the verification suites
//! run over them.

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::Serialize;

use crate::cambrian::{build_cambrian_hasse, cl, enumerate_sortables, CambrianQuiver};
use crate::error::{Error, Result};
use crate::lattice::{
    maximal_chains, poset_from_hasse, verify_lattice, verify_quiver_map, ChainReport, LatticeReport, MapMode, MapReport,
};
use crate::laurent::{mutate_seed, CoefficientMode, LabeledSeed};
use crate::quivers::{
    build_c_cluster_quiver, build_tau_tilting_quiver, check_arrow_flip, check_tau_c_matrix, CClusterQuiver,
    ClusterQuiver, ExchangeQuiver, FlipReport, Sign, TauReport, TauTiltingQuiver,
};
use crate::rootsys::{CartanSpec, CoxeterDynamics, CoxeterElement, RootSystem};

/// Every quiver attached to one finite root system and Coxeter element.
#[derive(Clone, Debug)]
pub struct Instance {
    pub dynamics: CoxeterDynamics,
    pub plus: ExchangeQuiver,
    pub minus: ExchangeQuiver,
    pub c_clusters: CClusterQuiver,
    pub tau_tilting: TauTiltingQuiver,
    pub cambrian: CambrianQuiver,
}

fn check_cap(count: usize, cap: usize) -> Result<()> {
    if count > cap {
        return Err(Error::CapExceeded { cap });
    }
    Ok(())
}

impl Instance {
    pub fn build(spec: CartanSpec, c: CoxeterElement, cap: usize) -> Result<Self> {
        let dynamics = CoxeterDynamics::new(RootSystem::new(spec)?, c)?;
        let plus = ExchangeQuiver::build(&dynamics, Sign::Plus, cap)?;
        let minus = ExchangeQuiver::build(&dynamics, Sign::Minus, cap)?;
        let c_clusters = build_c_cluster_quiver(&dynamics)?;
        check_cap(c_clusters.vertex_count(), cap)?;
        let tau_tilting = build_tau_tilting_quiver(&plus)?;
        let sortables = enumerate_sortables(dynamics.root_system(), dynamics.coxeter())?;
        check_cap(sortables.len(), cap)?;
        let cambrian = build_cambrian_hasse(dynamics.root_system(), sortables);
        Ok(Self { dynamics, plus, minus, c_clusters, tau_tilting, cambrian })
    }

    pub fn rank(&self) -> usize {
        self.dynamics.rank()
    }

    fn c_cluster_index(&self, cl: &crate::rootsys::CCluster) -> Option<usize> {
        self.c_clusters.vertices.binary_search(cl).ok()
    }

    /// `θ̃_c` as a vertex map exchange → c-cluster.
    pub fn theta_map(&self) -> Result<Vec<usize>> {
        (0..self.plus.vertex_count())
            .map(|v| {
                let cl = self.plus.theta_cluster(v);
                self.c_cluster_index(&cl).ok_or_else(|| Error::Internal(format!("θ image {cl} is not a c-cluster")))
            })
            .collect()
    }

    /// `φ̃_c` as a vertex map τ-tilt → c-cluster.
    pub fn phi_map(&self) -> Result<Vec<usize>> {
        self.tau_tilting
            .quiver
            .vertices
            .iter()
            .map(|s| {
                let cl = s.to_c_cluster();
                self.c_cluster_index(&cl).ok_or_else(|| Error::Internal(format!("φ image {cl} is not a c-cluster")))
            })
            .collect()
    }

    /// `ψ̃_c` as a vertex map τ-tilt → exchange.
    pub fn psi_map(&self) -> Vec<usize> {
        let mut inv = vec![usize::MAX; self.tau_tilting.quiver.vertex_count()];
        for (v, &s) in self.tau_tilting.from_exchange.iter().enumerate() {
            inv[s] = v;
        }
        inv
    }

    /// `cl_c` as a vertex map Cambrian → c-cluster.
    pub fn cl_map(&self) -> Result<Vec<usize>> {
        self.cambrian
            .vertices
            .iter()
            .map(|s| {
                let cl = cl(&self.dynamics, s)?;
                self.c_cluster_index(&cl).ok_or_else(|| Error::Internal(format!("cl_c image {cl} is not a c-cluster")))
            })
            .collect()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Counts {
    pub exchange: usize,
    pub c_clusters: usize,
    pub sortables: usize,
    pub tau_tilting: usize,
    pub positive_roots: usize,
}

/// The commutative diagram of quiver maps.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsoReport {
    pub counts: Counts,
    pub theta: MapReport,
    pub phi: MapReport,
    pub psi: MapReport,
    pub cl: MapReport,
    pub cambrian_to_tau: MapReport,
    pub diagram_commutes: bool,
    pub structure_violations: Vec<String>,
    pub passed: bool,
}

fn structure_violations<V, L>(name: &str, q: &ClusterQuiver<V, L>, n: usize, out: &mut Vec<String>) {
    if !q.is_simple() {
        out.push(format!("{name} quiver is not simple"));
    }
    if !q.is_acyclic() {
        out.push(format!("{name} quiver has a cycle"));
    }
    if !q.is_connected() {
        out.push(format!("{name} quiver is disconnected"));
    }
    if let Some(v) = q.degrees().iter().position(|&d| d != n) {
        out.push(format!("{name} vertex {v} does not have {n} incident arrows"));
    }
    if q.sources().len() != 1 || q.sinks().len() != 1 {
        out.push(format!("{name} quiver lacks a unique source and sink"));
    }
}

pub fn iso_report(inst: &Instance) -> Result<IsoReport> {
    let n = inst.rank();
    let theta = inst.theta_map()?;
    let phi = inst.phi_map()?;
    let psi = inst.psi_map();
    let clm = inst.cl_map()?;
    let counts = Counts {
        exchange: inst.plus.vertex_count(),
        c_clusters: inst.c_clusters.vertex_count(),
        sortables: inst.cambrian.vertex_count(),
        tau_tilting: inst.tau_tilting.quiver.vertex_count(),
        positive_roots: inst.dynamics.root_system().positive().len(),
    };
    let ex = &inst.plus.quiver;
    let tau = &inst.tau_tilting.quiver;
    let theta_r = verify_quiver_map(ex, &inst.c_clusters, &theta, MapMode::Anti);
    let phi_r = verify_quiver_map(tau, &inst.c_clusters, &phi, MapMode::Iso);
    let psi_r = verify_quiver_map(tau, ex, &psi, MapMode::Anti);
    let cl_r = verify_quiver_map(&inst.cambrian, &inst.c_clusters, &clm, MapMode::Iso);

    let mut phi_inv = vec![usize::MAX; phi.len()];
    for (s, &k) in phi.iter().enumerate() {
        if k < phi_inv.len() {
            phi_inv[k] = s;
        }
    }
    let composite: Vec<usize> = clm.iter().map(|&k| phi_inv.get(k).copied().unwrap_or(usize::MAX)).collect();
    let comp_r = verify_quiver_map(&inst.cambrian, tau, &composite, MapMode::Iso);
    let diagram_commutes = psi.iter().enumerate().all(|(s, &v)| v < theta.len() && theta[v] == phi[s]);

    let mut structure = Vec::new();
    if counts.exchange != counts.c_clusters
        || counts.c_clusters != counts.sortables
        || counts.tau_tilting != counts.exchange
    {
        structure.push(format!("vertex counts disagree: {counts:?}"));
    }
    structure_violations("exchange", ex, n, &mut structure);
    structure_violations("c-cluster", &inst.c_clusters, n, &mut structure);
    structure_violations("cambrian", &inst.cambrian, n, &mut structure);
    if ex.sources() != vec![0] {
        structure.push("initial cluster is not the unique source of the exchange quiver".into());
    }
    if inst.plus.quiver.vertices[0].seed.frame.c_matrix != crate::matrix::IntMatrix::identity(n) {
        structure.push("initial C-matrix is not the identity".into());
    }
    let variables = inst.plus.variables().len();
    if variables != counts.positive_roots + n {
        structure
            .push(format!("{variables} cluster variables for {} almost positive roots", counts.positive_roots + n));
    }

    let passed =
        [&theta_r, &phi_r, &psi_r, &cl_r, &comp_r].iter().all(|r| r.passed) && diagram_commutes && structure.is_empty();
    Ok(IsoReport {
        counts,
        theta: theta_r,
        phi: phi_r,
        psi: psi_r,
        cl: cl_r,
        cambrian_to_tau: comp_r,
        diagram_commutes,
        structure_violations: structure,
        passed,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuiverLatticeReport {
    pub transitive_reduction: bool,
    pub error: Option<String>,
    pub lattice: Option<LatticeReport>,
    pub chains: Option<ChainReport>,
}

impl QuiverLatticeReport {
    fn of<V, L>(q: &ClusterQuiver<V, L>) -> Self {
        match poset_from_hasse(q) {
            Err(e) => Self { transitive_reduction: false, error: Some(e.to_string()), lattice: None, chains: None },
            Ok(p) => {
                let lattice = verify_lattice(&p);
                let chains = maximal_chains(&p).ok();
                Self { transitive_reduction: true, error: None, lattice: Some(lattice), chains }
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.transitive_reduction && self.lattice.as_ref().is_some_and(|l| l.is_lattice)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatticeSuiteReport {
    pub exchange: QuiverLatticeReport,
    pub cambrian: QuiverLatticeReport,
    pub c_cluster: QuiverLatticeReport,
    pub tau_tilting: QuiverLatticeReport,
    pub passed: bool,
}

pub fn lattice_report(inst: &Instance) -> LatticeSuiteReport {
    let exchange = QuiverLatticeReport::of(&inst.plus.quiver);
    let cambrian = QuiverLatticeReport::of(&inst.cambrian);
    let c_cluster = QuiverLatticeReport::of(&inst.c_clusters);
    let tau_tilting = QuiverLatticeReport::of(&inst.tau_tilting.quiver);
    let passed = [&exchange, &cambrian, &c_cluster, &tau_tilting].iter().all(|r| r.passed());
    LatticeSuiteReport { exchange, cambrian, c_cluster, tau_tilting, passed }
}

/// Sign coherence, duality and principal-coefficient agreement at every
/// cluster of `Γ⃗(±B^c)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SignsReport {
    pub seeds_checked: usize,
    pub sign_coherent: usize,
    pub duality: usize,
    pub unimodular: usize,
    pub tropical_matches_c: usize,
    pub g_vector_readback: usize,
    pub specializes_to_trivial: usize,
    pub violations: Vec<String>,
    pub passed: bool,
}

fn signs_for(q: &ExchangeQuiver, r: &mut SignsReport) -> Result<()> {
    let label = match q.sign {
        Sign::Plus => "B^c",
        Sign::Minus => "-B^c",
    };
    let nv = q.vertex_count();
    let mut principal: Vec<LabeledSeed> = Vec::with_capacity(nv);
    for v in 0..nv {
        let vx = &q.quiver.vertices[v];
        let frame = &vx.seed.frame;
        let seed = match vx.parent {
            None => LabeledSeed::initial(frame.initial_b().clone(), CoefficientMode::Principal),
            Some((p, k)) => mutate_seed(&principal[p], k)?,
        };
        r.seeds_checked += 1;
        let mut fail = |what: &str| r.violations.push(format!("{what} fails at cluster {v} of Γ({label})"));

        if frame.is_sign_coherent() {
            r.sign_coherent += 1;
        } else {
            fail("sign coherence");
        }
        if frame.satisfies_duality() {
            r.duality += 1;
        } else {
            fail("(G^T)^-1 = S C S^-1");
        }
        let det = frame.c_matrix.determinant();
        if det.abs().is_one() {
            r.unimodular += 1;
        } else {
            fail("det C = ±1");
        }
        let tropical_ok = seed.frame.c_matrix == frame.c_matrix
            && (0..q.rank()).all(|k| {
                let col: Vec<BigInt> = seed.coeffs[k].exponents.iter().map(|&e| BigInt::from(e)).collect();
                col == frame.c_vector(k)
            });
        if tropical_ok {
            r.tropical_matches_c += 1;
        } else {
            fail("tropical y-exponents = C-columns");
        }
        let b0 = frame.initial_b().entries();
        if (0..q.rank()).all(|k| seed.vars[k].principal_degree(b0) == Some(frame.g_vector(k))) {
            r.g_vector_readback += 1;
        } else {
            fail("g-vector readback");
        }
        if (0..q.rank()).all(|k| seed.vars[k].specialize_coefficients() == vx.seed.vars[k]) {
            r.specializes_to_trivial += 1;
        } else {
            fail("principal specialization");
        }
        principal.push(seed);
    }
    Ok(())
}

pub fn signs_report(inst: &Instance) -> Result<SignsReport> {
    let mut r = SignsReport::default();
    signs_for(&inst.plus, &mut r)?;
    signs_for(&inst.minus, &mut r)?;
    r.passed = r.violations.is_empty();
    Ok(r)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlipSuiteReport {
    pub flip: FlipReport,
    pub tau: TauReport,
    pub passed: bool,
}

pub fn flip_report(inst: &Instance) -> Result<FlipSuiteReport> {
    let flip = check_arrow_flip(&inst.plus, &inst.minus);
    let tau = check_tau_c_matrix(&inst.dynamics, &inst.plus, &inst.minus)?;
    let passed = flip.passed && tau.passed;
    Ok(FlipSuiteReport { flip, tau, passed })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AllReport {
    pub dynkin_type: String,
    pub rank: usize,
    pub coxeter: String,
    pub vertices: usize,
    pub iso: IsoReport,
    pub lattice: LatticeSuiteReport,
    pub signs: SignsReport,
    pub flip: FlipSuiteReport,
    pub passed: bool,
}

pub fn all_report(inst: &Instance) -> Result<AllReport> {
    let iso = iso_report(inst)?;
    let lattice = lattice_report(inst);
    let signs = signs_report(inst)?;
    let flip = flip_report(inst)?;
    let passed = iso.passed && lattice.passed && signs.passed && flip.passed;
    Ok(AllReport {
        dynkin_type: inst.dynamics.spec().dynkin_type.to_string(),
        rank: inst.rank(),
        coxeter: inst.dynamics.coxeter().to_string(),
        vertices: inst.plus.vertex_count(),
        iso,
        lattice,
        signs,
        flip,
        passed,
    })
}
