//! Exhaustive sweeps. Each sweep counts the instances a claim was tested on
//! and keeps a few replayable witnesses for every failure.

use serde::Serialize;
use thiserror::Error;

use crate::blowup::{compatible, cycle_pushing_partition, distinguished_half_edges, sigma_down};
use crate::complexes::{
    deletion, descending_link_betti, down_link, good_forest_poset, poset_iso_to_quotient, strong_deletion,
    sufficiently_strong_deletion, ComplexError, ForestPoset, SimplicialComplex,
};
use crate::enumerate::{decorations, for_each_graph, generalized_skeletons, Budget, Constraints, EnumerationError, Parameters};
use crate::features::detect_features;
use crate::forest::{admissible_edges, admissible_forests, decisive_edges, optimal_edges, EdgeSet, ForestContext, ForestError};
use crate::graph::{DecoratedGraph, DecorationMode, ValencyMode};
use crate::homology::{euler_audit, join_betti, reduced_betti, BettiTable, InducedMap, MapVerdict};
use crate::morse::{base_data, four_case_descending, is_descending_blowdown, levels};
use crate::orbit::{build_quotient_complex, faces_commute, induced_map, stabilization_map, OrbitError, Stabilization};
use crate::serial::GraphDocument;

const MAX_WITNESSES: usize = 5;

#[derive(Debug, Error)]
pub enum CheckError {
    #[error(transparent)]
    Enumeration(#[from] EnumerationError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Forest(#[from] ForestError),
    #[error(transparent)]
    Orbit(#[from] OrbitError),
}

/// A graph plus what went wrong on it.
#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub graph: Option<GraphDocument>,
    pub detail: String,
}

impl Witness {
    pub fn new(g: &DecoratedGraph, mode: ValencyMode, detail: String) -> Self {
        Witness { graph: Some(GraphDocument::from_graph(g, mode, DecorationMode::UnlabeledUnoriented)), detail }
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Claim {
    pub name: String,
    /// false for empirical observations, which are reported but never fail a run
    pub gating: bool,
    pub instances: u64,
    pub failures: u64,
    pub witnesses: Vec<Witness>,
}

impl Claim {
    fn new(name: &str, gating: bool) -> Self {
        Claim { name: name.to_string(), gating, instances: 0, failures: 0, witnesses: Vec::new() }
    }

    fn record(&mut self, ok: bool, witness: impl FnOnce() -> Witness) {
        self.instances += 1;
        if !ok {
            self.failures += 1;
            if self.witnesses.len() < MAX_WITNESSES {
                self.witnesses.push(witness());
            }
        }
    }

    pub fn passed(&self) -> bool {
        !self.gating || self.failures == 0
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Sweep {
    pub graphs: u64,
    pub claims: Vec<Claim>,
}

impl Sweep {
    pub fn passed(&self) -> bool {
        self.claims.iter().all(Claim::passed)
    }

    pub fn claim(&self, name: &str) -> Option<&Claim> {
        self.claims.iter().find(|c| c.name == name)
    }

    /// Append another sweep's claims.
    pub fn merge(mut self, other: Sweep) -> Sweep {
        self.graphs += other.graphs;
        self.claims.extend(other.claims);
        self
    }
}

/// Spine-mode graphs of rank `1..=max_rank` with at most `max_vertices`
/// vertices, any weighted degree.
pub fn spine_graphs(
    max_rank: usize,
    max_vertices: usize,
    basepoint_undistinguished: bool,
    budget: &Budget,
) -> Result<Vec<DecoratedGraph>, EnumerationError> {
    let mut out = Vec::new();
    for rank in 1..=max_rank {
        for m in 0..=rank {
            let n = rank - m;
            // large enough to admit every weighted degree
            let params = Parameters::new(n, m, 2 * rank + 2);
            let constraints = Constraints { basepoint_undistinguished, ..Constraints::spine(DecorationMode::UnlabeledUnoriented) };
            for_each_graph(&params, &constraints, budget, &mut |g| {
                if g.num_vertices() <= max_vertices {
                    out.push(g);
                }
            })?;
        }
    }
    Ok(out)
}

/// Every decorated graph, of any rank and cycle count, on at most
/// `max_edges` edges with no valency restriction.
pub fn generalized_graphs(max_edges: usize, budget: &Budget) -> Result<Vec<DecoratedGraph>, EnumerationError> {
    let mut out = Vec::new();
    for s in generalized_skeletons(max_edges, budget)? {
        for m in 0.. {
            let d = decorations(&s, m, DecorationMode::UnlabeledUnoriented);
            if d.is_empty() {
                break;
            }
            out.extend(d);
        }
    }
    Ok(out)
}

fn materialized_join(g: &DecoratedGraph, budget: usize) -> Result<Option<SimplicialComplex>, ComplexError> {
    let mut factors = vec![down_link(g)?];
    factors.extend((0..g.num_vertices()).map(|v| sigma_down(g, v).complex));
    let mut size: usize = 1;
    for f in &factors {
        size = size.saturating_mul(f.total() + 1);
    }
    if size > budget {
        return Ok(None);
    }
    let mut acc = SimplicialComplex::empty();
    for f in &factors {
        acc = acc.join(f);
    }
    Ok(Some(acc))
}

pub const LINK_SPHERICAL: &str = "descending link is acyclic or spherical in dimension d_w - 1";
pub const JOIN_MATCHES: &str = "join formula matches the materialized join";

/// Sphericity of descending links; with `join_budget`, also compares the join
/// formula with the homology of the materialized join whenever that join has
/// at most `join_budget` simplices.
pub fn check_links(graphs: &[DecoratedGraph], join_budget: Option<usize>) -> Result<Sweep, CheckError> {
    let mut spherical = Claim::new(LINK_SPHERICAL, true);
    let mut joins = Claim::new(JOIN_MATCHES, true);
    for g in graphs {
        let dl = descending_link_betti(g)?;
        let d = g.weighted_degree() as i32 - 1;
        spherical.record(dl.total.is_concentrated(d), || {
            Witness::new(g, ValencyMode::Spine, format!("Betti {:?}, expected dimension {d}", dl.total))
        });
        if let Some(budget) = join_budget {
            if let Some(j) = materialized_join(g, budget)? {
                let direct = reduced_betti(&j);
                joins.record(direct == dl.total, || {
                    Witness::new(g, ValencyMode::Spine, format!("formula {:?}, materialized {direct:?}", dl.total))
                });
            }
        }
    }
    let mut claims = vec![spherical];
    if join_budget.is_some() {
        claims.push(joins);
    }
    Ok(Sweep { graphs: graphs.len() as u64, claims })
}

pub const POSET_SPHERICAL: &str = "good forest poset is spherical in dimension V - c - 2";
pub const DECISIVE_ACYCLIC: &str = "an admissible decisive edge at a non-base vertex makes the poset acyclic";
pub const STRONG_DELETION_ACYCLIC: &str = "strong deletion of an admissible distinguished edge is acyclic";
pub const DELETIONS_AGREE: &str = "deletion and strong deletion of an optimal edge have equal Betti numbers";
pub const DELETIONS_NESTED: &str = "strong deletion, half deletion and deletion are nested";
pub const HALF_DELETION_FULL: &str = "half deletion equals deletion for an undistinguished optimal edge";
pub const LINK_IS_QUOTIENT: &str = "link of a good optimal edge is isomorphic to the quotient poset";

/// The down-link claims over arbitrary-valency graphs.
pub fn check_downlink(graphs: &[DecoratedGraph]) -> Result<Sweep, CheckError> {
    let mut spherical = Claim::new(POSET_SPHERICAL, true);
    let mut decisive = Claim::new(DECISIVE_ACYCLIC, true);
    let mut strong = Claim::new(STRONG_DELETION_ACYCLIC, true);
    let mut agree = Claim::new(DELETIONS_AGREE, true);
    let mut nested = Claim::new(DELETIONS_NESTED, true);
    let mut half = Claim::new(HALF_DELETION_FULL, true);
    let mut link = Claim::new(LINK_IS_QUOTIENT, true);
    let w = |g: &DecoratedGraph, s: String| Witness::new(g, ValencyMode::Generalized, s);
    for g in graphs {
        let gp = good_forest_poset(g)?;
        let betti = gp.betti();
        let c = g.cycles_not_at_basepoint() as i32;
        let d = g.num_vertices() as i32 - c - 2;
        spherical.record(betti.is_concentrated(d), || w(g, format!("Betti {betti:?}, expected dimension {d}")));

        let lv = levels(g);
        let base = base_data(g, &lv);
        let adm = admissible_edges(g);
        if let Some(de) = decisive_edges(g).into_iter().find(|de| !base.is_base[de.top] && adm.contains(&de.edge)) {
            decisive.record(betti.is_acyclic(), || w(g, format!("decisive edge {} at {}, Betti {betti:?}", de.edge, de.top)));
        }

        for &e in adm.iter().filter(|&&e| g.is_distinguished_edge(e)) {
            let b = strong_deletion(g, &gp, e)?.betti();
            strong.record(b.is_acyclic(), || w(g, format!("edge {e}, Betti {b:?}")));
        }

        let ctx = ForestContext::new(g);
        for e in optimal_edges(g) {
            let p1 = deletion(g, &gp, e)?;
            let p0 = strong_deletion(g, &gp, e)?;
            let ph = sufficiently_strong_deletion(g, &gp, e)?;
            let (b1, b0) = (p1.betti(), p0.betti());
            agree.record(b1 == b0, || w(g, format!("edge {e}: deletion {b1:?}, strong deletion {b0:?}")));
            let inside = |a: &ForestPoset, b: &ForestPoset| {
                a.elements.iter().all(|&f| b.contains(f))
            };
            nested.record(inside(&p0, &ph) && inside(&ph, &p1), || w(g, format!("edge {e}")));
            if !g.is_distinguished_edge(e) {
                half.record(ph == p1, || w(g, format!("edge {e}: {} of {} forests", ph.len(), p1.len())));
            }
            if ctx.is_good(EdgeSet::single(e))? {
                let ok = poset_iso_to_quotient(g, e)?;
                link.record(ok, || w(g, format!("edge {e}")));
            }
        }
    }
    Ok(Sweep { graphs: graphs.len() as u64, claims: vec![spherical, decisive, strong, agree, nested, half, link] })
}

pub const LOCAL_SPHERICAL: &str = "descending partitions at a non-base vertex without decisive edge are spherical in dimension val - 4";
pub const FAT_BASE_ACYCLIC: &str = "descending partitions at a non-minimal base vertex are acyclic";
pub const CONE_POINT: &str = "the cycle-pushing partition is descending and compatible with every descending partition";
pub const CYCLE_KEPT: &str = "descending partitions at a non-minimal base vertex keep the cycle half-edges together";
pub const UP_LINK_SPHERICAL: &str = "up-link is spherical in dimension d_0 - V when base vertices are minimal and no non-base vertex has an admissible decisive edge";

pub fn check_uplink(graphs: &[DecoratedGraph]) -> Result<Sweep, CheckError> {
    let mut local = Claim::new(LOCAL_SPHERICAL, true);
    let mut fat = Claim::new(FAT_BASE_ACYCLIC, true);
    let mut cone = Claim::new(CONE_POINT, true);
    let mut kept = Claim::new(CYCLE_KEPT, true);
    let mut global = Claim::new(UP_LINK_SPHERICAL, true);
    let w = |g: &DecoratedGraph, s: String| Witness::new(g, ValencyMode::Spine, s);
    for g in graphs {
        let p = g.basepoint();
        let lv = levels(g);
        let base = base_data(g, &lv);
        let decisive = decisive_edges(g);
        let adm = admissible_edges(g);
        let minimal = |v: usize| g.valency(v) == if v == p { 2 } else { 3 };
        for v in 0..g.num_vertices() {
            if base.is_base[v] {
                if minimal(v) {
                    continue;
                }
                let sd = sigma_down(g, v);
                let b = reduced_betti(&sd.complex);
                fat.record(b.is_acyclic(), || w(g, format!("vertex {v}, Betti {b:?}")));
                let c = distinguished_half_edges(g, v);
                let cone_ok = match cycle_pushing_partition(g, v) {
                    Some(a0) => {
                        sd.partitions.contains(&a0)
                            && sd.partitions.iter().all(|a| a == &a0 || compatible(a, &a0).unwrap_or(false))
                    }
                    None => false,
                };
                cone.record(cone_ok, || w(g, format!("vertex {v}")));
                let together = sd.partitions.iter().all(|a| !a.separates(c[0], c[1]));
                kept.record(together, || w(g, format!("vertex {v}")));
            } else if v != p && !decisive.iter().any(|d| d.top == v) {
                let b = reduced_betti(&sigma_down(g, v).complex);
                let d = g.valency(v) as i32 - 4;
                local.record(b.is_concentrated(d), || w(g, format!("vertex {v}, Betti {b:?}, expected dimension {d}")));
            }
        }
        let thin = base.base_vertices.iter().all(|&v| minimal(v));
        let no_decisive = !decisive.iter().any(|d| !base.is_base[d.top] && adm.contains(&d.edge));
        if thin && no_decisive {
            let up = descending_link_betti(g)?.up;
            let d = (g.degree() - g.num_vertices() as i64) as i32;
            global.record(up.is_concentrated(d), || w(g, format!("Betti {up:?}, expected dimension {d}")));
        }
    }
    Ok(Sweep { graphs: graphs.len() as u64, claims: vec![local, fat, cone, kept, global] })
}

pub const DESCENDING_IS_GOOD: &str = "a collapse lowers the height exactly when the forest is good";
pub const FOUR_CASES: &str = "the base-count reading agrees with the height comparison";

pub fn check_morse(graphs: &[DecoratedGraph]) -> Result<Sweep, CheckError> {
    let mut good = Claim::new(DESCENDING_IS_GOOD, true);
    let mut cases = Claim::new(FOUR_CASES, true);
    let w = |g: &DecoratedGraph, s: String| Witness::new(g, ValencyMode::Spine, s);
    for g in graphs {
        let ctx = ForestContext::new(g);
        for f in admissible_forests(g)? {
            if f.is_empty() {
                continue;
            }
            let desc = is_descending_blowdown(g, f)?;
            let cls = ctx.classify(f)?;
            good.record(desc == cls.is_good(), || w(g, format!("forest {:?}: descending {desc}, {cls:?}", f.to_vec())));
            let four = four_case_descending(g, f)?;
            cases.record(four == desc, || w(g, format!("forest {:?}: descending {desc}, base-count reading {four}", f.to_vec())));
        }
    }
    Ok(Sweep { graphs: graphs.len() as u64, claims: vec![good, cases] })
}

pub const LOOP_DETECTED: &str = "n > 2 d_w + m forces a loop at the basepoint";
pub const THETA_DETECTED: &str = "2n > 3 d_w + m forces a loop or a theta summand";
pub const LOLLIPOP_DETECTED: &str = "m > 2 d_w forces a lollipop at the basepoint";
pub const DOUBLE_DETECTED: &str = "2m > 3 d_w forces a lollipop or a double lollipop";
pub const ITERATED_OBSERVED: &str = "m > d_w gives a summand that is an iterated wedge of lollipops";

/// Feature detection over spine graphs with `n + m <= max_rank`,
/// `d_w <= max_dw` and the basepoint off every cycle.
pub fn check_detect(max_rank: usize, max_dw: usize, budget: &Budget) -> Result<Sweep, CheckError> {
    let mut claims = [
        Claim::new(LOOP_DETECTED, true),
        Claim::new(THETA_DETECTED, true),
        Claim::new(LOLLIPOP_DETECTED, true),
        Claim::new(DOUBLE_DETECTED, true),
        Claim::new(ITERATED_OBSERVED, false),
    ];
    let mut graphs = 0;
    for rank in 1..=max_rank {
        for m in 0..=rank {
            let n = rank - m;
            let params = Parameters::new(n, m, max_dw);
            let mut failure = None;
            for_each_graph(&params, &Constraints::spine(DecorationMode::UnlabeledUnoriented), budget, &mut |g| {
                if failure.is_some() {
                    return;
                }
                graphs += 1;
                let r = match detect_features(&g) {
                    Ok(r) => r,
                    Err(e) => {
                        failure = Some(e);
                        return;
                    }
                };
                let dw = g.weighted_degree() as usize;
                let tests = [
                    (n > 2 * dw + m, r.loops_at_basepoint > 0),
                    (2 * n > 3 * dw + m, r.loops_at_basepoint + r.theta_summands > 0),
                    (m > 2 * dw, r.lollipops_at_basepoint > 0),
                    (2 * m > 3 * dw, r.lollipops_at_basepoint + r.double_lollipops_at_basepoint.len() > 0),
                    (m > dw, r.iterated_lollipop_summand),
                ];
                for (claim, (hyp, concl)) in claims.iter_mut().zip(tests) {
                    if hyp {
                        claim.record(concl, || Witness::new(&g, ValencyMode::Spine, format!("features {r:?}")));
                    }
                }
            })?;
            if failure.is_some() {
                unreachable!("spine enumeration keeps the basepoint off every cycle");
            }
        }
    }
    Ok(Sweep { graphs, claims: claims.to_vec() })
}

/// A stabilization pair and what is expected of it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct StabilityCase {
    pub kind: Stabilization,
    pub source: Parameters,
    pub mode: DecorationMode,
}

impl StabilityCase {
    pub fn new(kind: Stabilization, n: usize, m: usize, k: usize, mode: DecorationMode) -> Self {
        StabilityCase { kind, source: Parameters::new(n, m, k), mode }
    }

    pub fn target(&self) -> Parameters {
        let s = self.source;
        match self.kind {
            Stabilization::Nu => Parameters::new(s.n + 1, s.m, s.k),
            Stabilization::Mu => Parameters::new(s.n, s.m + 1, s.k),
        }
    }

    /// Inside the range where the map is a bijection on cells.
    pub fn in_bijection_range(&self) -> bool {
        let Parameters { n, m, k } = self.source;
        match self.kind {
            Stabilization::Nu => 2 * k + m < n + 1,
            Stabilization::Mu => 2 * k < m + 1,
        }
    }

    /// Inside the range where the map is a homotopy equivalence.
    pub fn in_equivalence_range(&self) -> bool {
        let Parameters { n, m, k } = self.source;
        match self.kind {
            Stabilization::Nu => 3 * k + m < 2 * (n + 1),
            Stabilization::Mu => 3 * k < 2 * (m + 1),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct StabilityOutcome {
    pub case: StabilityCase,
    pub source_cells: Vec<usize>,
    pub target_cells: Vec<usize>,
    pub source_betti: BettiTable,
    pub target_betti: BettiTable,
    pub injective: bool,
    pub bijective: bool,
    pub faces_commute: bool,
    pub induced: Vec<InducedMap>,
}

impl StabilityOutcome {
    /// Injective and face-compatible always; a cell bijection inside the
    /// bijection range; isomorphisms below dimension `k` inside the
    /// equivalence range.
    pub fn passed(&self) -> bool {
        let iso_below_k = self
            .induced
            .iter()
            .filter(|i| i.dimension < self.case.source.k as i32)
            .all(|i| i.verdict == MapVerdict::Iso);
        self.injective
            && self.faces_commute
            && (!self.case.in_bijection_range() || self.bijective)
            && (!self.case.in_equivalence_range() || iso_below_k)
    }
}

pub fn run_stability(case: StabilityCase, max_cells: usize) -> Result<StabilityOutcome, CheckError> {
    let source = build_quotient_complex(case.source, case.mode, max_cells)?;
    let target = build_quotient_complex(case.target(), case.mode, max_cells)?;
    let map = stabilization_map(case.kind, &source, &target)?;
    Ok(StabilityOutcome {
        case,
        source_cells: source.cell_counts(),
        target_cells: target.cell_counts(),
        source_betti: source.betti(),
        target_betti: target.betti(),
        injective: map.is_injective(),
        bijective: map.is_bijective(&target),
        faces_commute: faces_commute(&map, &source, &target)?,
        induced: induced_map(&map, &source, &target)?,
    })
}

pub const KNOWN_SPACES: &str = "known complexes have their textbook reduced Betti numbers";
pub const JOIN_FORMULA: &str = "join formula matches materialized joins of known complexes";
pub const EULER_CONSISTENT: &str = "Euler characteristic of every computed complex matches its Betti numbers";

/// Textbook complexes, joins of them, and the running Euler audit.
pub fn selftest() -> Sweep {
    let point = SimplicialComplex::from_maximal(vec![vec![0]]);
    let s0 = SimplicialComplex::from_maximal(vec![vec![0], vec![1]]);
    let circle = SimplicialComplex::from_maximal(vec![vec![0, 1], vec![1, 2], vec![0, 2]]);
    let sphere = SimplicialComplex::from_maximal(vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]]);
    let empty = SimplicialComplex::empty();
    let known = [
        ("empty", &empty, BettiTable::sphere(-1)),
        ("point", &point, BettiTable::new(-1, vec![])),
        ("two points", &s0, BettiTable::sphere(0)),
        ("circle", &circle, BettiTable::sphere(1)),
        ("tetrahedron boundary", &sphere, BettiTable::sphere(2)),
    ];
    let mut spaces = Claim::new(KNOWN_SPACES, true);
    let plain = |s: &str| Witness { graph: None, detail: s.to_string() };
    for (name, c, expected) in &known {
        let b = reduced_betti(c);
        spaces.record(&b == expected, || plain(&format!("{name}: {b:?}")));
    }
    let mut joins = Claim::new(JOIN_FORMULA, true);
    for (na, a, _) in &known {
        for (nb, b, _) in &known {
            let formula = join_betti(&[reduced_betti(a), reduced_betti(b)]);
            let direct = reduced_betti(&a.join(b));
            joins.record(formula == direct, || plain(&format!("{na} * {nb}: formula {formula:?}, direct {direct:?}")));
        }
    }
    Sweep { graphs: 0, claims: vec![spaces, joins, euler_claim()] }
}

/// The Euler audit so far, as a claim.
pub fn euler_claim() -> Claim {
    let (checked, failed) = euler_audit();
    Claim {
        name: EULER_CONSISTENT.to_string(),
        gating: true,
        instances: checked,
        failures: failed,
        witnesses: Vec::new(),
    }
}
