//! Breadth-first analytics over the move graphs on normally generating
//! tuples: components, diameters, recalcitrance and the GACC1 comparison.
//!
//! Vertices are the normally generating `n`-tuples, numbered in lexicographic
//! order. Every move set preserves normal generation, so the graph is closed.
//! Edges are stored symmetrically with self-loops dropped. For M-moves and
//! inversions this is the graph itself. A single Nielsen product move is not
//! its own inverse, but in a finite group its inverse is a power of it, so
//! components agree with the directed graph; diameters for `Nielsen` and `Ac`
//! are those of the underlying undirected graph.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::abelian::{AbelianInvariants, AbelianStructure, Delta, NielsenClass};
use crate::error::{Error, Result};
use crate::group::{abelianization, is_soluble, quotient, rank, w_subgroup, weight, GroupTable};
use crate::limits::Limits;
use crate::moves::{
    for_each_ac_neighbor, for_each_inversion, for_each_m_neighbor, for_each_nielsen_neighbor,
    is_generating, normally_generates, enumerate_codes, ElementTuple, TupleSpace,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MoveSet {
    Nielsen,
    Ac,
    MPlusInversion,
    MOnly,
}

impl MoveSet {
    pub fn for_each_neighbor(self, g: &GroupTable, t: &[usize], f: &mut dyn FnMut(&[usize])) {
        match self {
            MoveSet::Nielsen => for_each_nielsen_neighbor(g, t, f),
            MoveSet::Ac => for_each_ac_neighbor(g, t, f),
            MoveSet::MOnly => for_each_m_neighbor(g, t, f),
            MoveSet::MPlusInversion => {
                for_each_m_neighbor(g, t, &mut *f);
                for_each_inversion(g, t, f);
            }
        }
    }
}

impl fmt::Display for MoveSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MoveSet::Nielsen => "nielsen",
            MoveSet::Ac => "ac",
            MoveSet::MPlusInversion => "m",
            MoveSet::MOnly => "m-only",
        })
    }
}

impl FromStr for MoveSet {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "nielsen" => Ok(MoveSet::Nielsen),
            "ac" => Ok(MoveSet::Ac),
            "m" | "m+inv" | "m_plus_inversion" => Ok(MoveSet::MPlusInversion),
            "m-only" | "m_only" => Ok(MoveSet::MOnly),
            other => Err(format!("unknown move set `{other}` (expected ac, m, m-only or nielsen)")),
        }
    }
}

/// Finite value or the marker for an unreachable target.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Distance {
    Finite(u64),
    Infinite,
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(d) => write!(f, "{d}"),
            Distance::Infinite => f.write_str("infinite"),
        }
    }
}

impl Serialize for Distance {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Distance::Finite(d) => s.serialize_u64(*d),
            Distance::Infinite => s.serialize_str("infinite"),
        }
    }
}

/// Move graph in compressed sparse row form.
#[derive(Debug, Clone)]
pub struct MoveGraph {
    pub space: TupleSpace,
    pub moves: MoveSet,
    /// Tuple code of every vertex, increasing.
    codes: Vec<u64>,
    offsets: Vec<usize>,
    targets: Vec<u32>,
}

impl MoveGraph {
    pub fn build(g: &GroupTable, n: usize, moves: MoveSet, limits: &Limits) -> Result<Self> {
        let space = TupleSpace::new(g.order(), n, limits)?;
        let codes = enumerate_codes(&space, |t| normally_generates(g, t));
        let vertex = |code: u64| codes.binary_search(&code).expect("moves preserve normal generation") as u32;
        let out: Vec<Vec<u32>> = (0..codes.len())
            .into_par_iter()
            .map(|v| {
                let t = space.decode(codes[v]);
                let mut nb = Vec::new();
                moves.for_each_neighbor(g, &t, &mut |s: &[usize]| {
                    let u = vertex(space.encode(s));
                    if u as usize != v {
                        nb.push(u);
                    }
                });
                nb
            })
            .collect();
        let mut edges: Vec<(u32, u32)> = out
            .par_iter()
            .enumerate()
            .flat_map_iter(|(v, nb)| nb.iter().flat_map(move |&u| [(v as u32, u), (u, v as u32)]))
            .collect();
        edges.par_sort_unstable();
        edges.dedup();
        let mut offsets = vec![0usize; codes.len() + 1];
        for &(a, _) in &edges {
            offsets[a as usize + 1] += 1;
        }
        for i in 0..codes.len() {
            offsets[i + 1] += offsets[i];
        }
        let targets = edges.into_iter().map(|(_, b)| b).collect();
        Ok(MoveGraph { space, moves, codes, offsets, targets })
    }

    pub fn vertex_count(&self) -> usize {
        self.codes.len()
    }

    pub fn vertex_of(&self, t: &[usize]) -> Option<usize> {
        self.codes.binary_search(&self.space.encode(t)).ok()
    }

    pub fn tuple(&self, v: usize) -> ElementTuple {
        self.space.decode(self.codes[v])
    }

    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    /// Connected components, each listed in increasing vertex order; the
    /// components themselves are ordered by their least vertex.
    pub fn components(&self) -> Partition {
        let mut component_of = vec![u32::MAX; self.vertex_count()];
        let mut members: Vec<Vec<u32>> = Vec::new();
        let mut queue = VecDeque::new();
        for start in 0..self.vertex_count() {
            if component_of[start] != u32::MAX {
                continue;
            }
            let id = members.len() as u32;
            let mut list = vec![start as u32];
            component_of[start] = id;
            queue.push_back(start as u32);
            while let Some(v) = queue.pop_front() {
                for &u in self.neighbors(v as usize) {
                    if component_of[u as usize] == u32::MAX {
                        component_of[u as usize] = id;
                        list.push(u);
                        queue.push_back(u);
                    }
                }
            }
            list.sort_unstable();
            members.push(list);
        }
        Partition { component_of, members }
    }

    /// Distances from `src` within its component, indexed by position in
    /// `members`; `local` maps vertices to those positions.
    fn bfs_local(&self, members: &[u32], local: &[u32], src: usize, dist: &mut [u32], queue: &mut VecDeque<u32>) -> (u32, usize) {
        dist.fill(u32::MAX);
        dist[src] = 0;
        queue.clear();
        queue.push_back(src as u32);
        let (mut ecc, mut far) = (0, src);
        while let Some(x) = queue.pop_front() {
            let d = dist[x as usize];
            if d > ecc || (d == ecc && (x as usize) < far) {
                ecc = d;
                far = x as usize;
            }
            for &u in self.neighbors(members[x as usize] as usize) {
                let lu = local[u as usize] as usize;
                if dist[lu] == u32::MAX {
                    dist[lu] = d + 1;
                    queue.push_back(lu as u32);
                }
            }
        }
        (ecc, far)
    }

    /// Exact diameter of each component up to `exact_limit` vertices, by a
    /// breadth-first search from every vertex. Larger components get the
    /// two-sweep lower bound (eccentricity of a farthest vertex from the
    /// least vertex) with `approximate` set.
    pub fn diameters(&self, partition: &Partition, exact_limit: usize) -> Vec<(u64, bool)> {
        let mut local = vec![0u32; self.vertex_count()];
        for list in &partition.members {
            for (i, &v) in list.iter().enumerate() {
                local[v as usize] = i as u32;
            }
        }
        partition
            .members
            .iter()
            .map(|list| {
                let size = list.len();
                if size <= 1 {
                    return (0, false);
                }
                if size <= exact_limit {
                    let diam = (0..size)
                        .into_par_iter()
                        .map_init(
                            || (vec![0u32; size], VecDeque::new()),
                            |(dist, queue), s| self.bfs_local(list, &local, s, dist, queue).0,
                        )
                        .max()
                        .unwrap_or(0);
                    (diam as u64, false)
                } else {
                    let mut dist = vec![0u32; size];
                    let mut queue = VecDeque::new();
                    let (_, far) = self.bfs_local(list, &local, 0, &mut dist, &mut queue);
                    let (ecc, _) = self.bfs_local(list, &local, far, &mut dist, &mut queue);
                    (ecc as u64, true)
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    pub component_of: Vec<u32>,
    pub members: Vec<Vec<u32>>,
}

impl Partition {
    pub fn count(&self) -> usize {
        self.members.len()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ComponentSummary {
    pub size: usize,
    pub representative: ElementTuple,
    pub diameter: u64,
    pub approximate: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct GraphReport {
    pub group: String,
    pub n: usize,
    pub moves: MoveSet,
    pub vertex_count: usize,
    pub components: Vec<ComponentSummary>,
    pub d_n: u64,
    pub d_n_approximate: bool,
    pub elapsed_ms: u64,
}

pub fn describe(g: &GroupTable) -> String {
    format!("order {}", g.order())
}

fn elapsed_ms(start: Instant) -> u64 {
    start.elapsed().as_millis() as u64
}

pub fn components(g: &GroupTable, n: usize, moves: MoveSet, limits: &Limits) -> Result<GraphReport> {
    let start = Instant::now();
    let graph = MoveGraph::build(g, n, moves, limits)?;
    let partition = graph.components();
    let diameters = graph.diameters(&partition, limits.exact_diameter_limit);
    let components: Vec<ComponentSummary> = partition
        .members
        .iter()
        .zip(&diameters)
        .map(|(list, &(diameter, approximate))| ComponentSummary {
            size: list.len(),
            representative: graph.tuple(list[0] as usize),
            diameter,
            approximate,
        })
        .collect();
    let d_n = components.iter().map(|c| c.diameter).max().unwrap_or(0);
    let d_n_approximate = components.iter().any(|c| c.approximate);
    Ok(GraphReport {
        group: describe(g),
        n,
        moves,
        vertex_count: graph.vertex_count(),
        components,
        d_n,
        d_n_approximate,
        elapsed_ms: elapsed_ms(start),
    })
}

/// Least number of M-moves taking `t` to a generating tuple.
pub fn recalcitrance(g: &GroupTable, t: &[usize], limits: &Limits) -> Result<Distance> {
    for &x in t {
        g.check_element(x)?;
    }
    let space = TupleSpace::new(g.order(), t.len(), limits)?;
    if !normally_generates(g, t) {
        return Err(Error::NotNormallyGenerating);
    }
    let mut seen: HashSet<u64> = HashSet::from([space.encode(t)]);
    let mut frontier = vec![t.to_vec()];
    let mut depth = 0;
    while !frontier.is_empty() {
        if frontier.iter().any(|s| is_generating(g, s)) {
            return Ok(Distance::Finite(depth));
        }
        let mut next = Vec::new();
        for s in &frontier {
            for_each_m_neighbor(g, s, |u| {
                if seen.insert(space.encode(u)) {
                    next.push(u.to_vec());
                }
            });
        }
        frontier = next;
        depth += 1;
    }
    Ok(Distance::Infinite)
}

#[derive(Debug, Clone, Serialize)]
pub struct RecalcitranceReport {
    pub group: String,
    pub n: usize,
    pub rank: Option<usize>,
    /// Set when `n` differs from the rank, where the notion is extended.
    pub rank_extension: bool,
    pub recalcitrance: Distance,
    /// Lexicographically least tuple attaining the maximum.
    pub witness: Option<ElementTuple>,
    pub vertex_count: usize,
    pub generating_count: usize,
    pub elapsed_ms: u64,
}

/// Distance of every vertex of the M-graph to the generating tuples. M-moves
/// are invertible, so one breadth-first search from all generating tuples
/// gives every vertex's recalcitrance.
pub fn recalcitrance_table(g: &GroupTable, graph: &MoveGraph) -> Vec<Distance> {
    let count = graph.vertex_count();
    let mut dist = vec![u64::MAX; count];
    let mut queue = VecDeque::new();
    let sources: Vec<usize> = (0..count)
        .into_par_iter()
        .filter(|&v| is_generating(g, &graph.tuple(v)))
        .collect();
    for v in sources {
        dist[v] = 0;
        queue.push_back(v);
    }
    while let Some(v) = queue.pop_front() {
        for &u in graph.neighbors(v) {
            if dist[u as usize] == u64::MAX {
                dist[u as usize] = dist[v] + 1;
                queue.push_back(u as usize);
            }
        }
    }
    dist.into_iter()
        .map(|d| if d == u64::MAX { Distance::Infinite } else { Distance::Finite(d) })
        .collect()
}

pub fn recalcitrance_group(g: &GroupTable, n: usize, limits: &Limits) -> Result<RecalcitranceReport> {
    let start = Instant::now();
    let graph = MoveGraph::build(g, n, MoveSet::MOnly, limits)?;
    let table = recalcitrance_table(g, &graph);
    let mut best = Distance::Finite(0);
    let mut witness = None;
    for (v, &d) in table.iter().enumerate() {
        if witness.is_none() || d > best {
            best = d;
            witness = Some(v);
        }
    }
    let rank = rank(g, limits).ok();
    Ok(RecalcitranceReport {
        group: describe(g),
        n,
        rank,
        rank_extension: rank != Some(n),
        recalcitrance: best,
        witness: witness.map(|v| graph.tuple(v)),
        vertex_count: graph.vertex_count(),
        generating_count: table.iter().filter(|&&d| d == Distance::Finite(0)).count(),
        elapsed_ms: elapsed_ms(start),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct Gacc1Pair {
    pub ac_representative: ElementTuple,
    pub ac_size: usize,
    pub abelian_image: ElementTuple,
    pub delta: Delta,
}

#[derive(Debug, Clone, Serialize)]
pub struct Gacc1Report {
    pub group: String,
    pub n: usize,
    pub soluble: bool,
    pub warning: Option<String>,
    pub abelian_invariants: AbelianInvariants,
    pub ac_component_count: usize,
    pub nielsen_class_count: usize,
    /// Every member of an AC component maps to the same Nielsen class.
    pub well_defined: bool,
    pub injective: bool,
    pub surjective: bool,
    pub pass: bool,
    pub pairing: Vec<Gacc1Pair>,
    pub elapsed_ms: u64,
}

/// Compares AC components of normally generating `n`-tuples of `g` with
/// Nielsen classes of generating `n`-tuples of the abelianization. Both sides
/// are computed by breadth-first search; the abelian side is labelled with
/// `nielsen_class`, and its labels must themselves agree with its partition.
pub fn gacc1_check(g: &GroupTable, n: usize, limits: &Limits) -> Result<Gacc1Report> {
    let start = Instant::now();
    if n < 2 {
        return Err(Error::RangeError(format!("gacc1 needs n >= 2, got {n}")));
    }
    let w = weight(g, limits)?;
    if n < w {
        return Err(Error::WeightTooLarge { n, weight: w });
    }
    let soluble = is_soluble(g);
    let ab = abelianization(g);
    let a = &ab.table;
    TupleSpace::new(a.order(), n, limits)?;
    let structure = AbelianStructure::new(a)?;

    let graph = MoveGraph::build(g, n, MoveSet::Ac, limits)?;
    let partition = graph.components();
    let labels: Vec<Delta> = (0..graph.vertex_count())
        .into_par_iter()
        .map(|v| structure.class_of(a, &ab.project_tuple(&graph.tuple(v))).map(|c| c.delta))
        .collect::<Result<_>>()?;

    let abelian_graph = MoveGraph::build(a, n, MoveSet::Nielsen, limits)?;
    let abelian_partition = abelian_graph.components();
    let abelian_labels: Vec<Delta> = (0..abelian_graph.vertex_count())
        .into_par_iter()
        .map(|v| structure.class_of(a, &abelian_graph.tuple(v)).map(|c| c.delta))
        .collect::<Result<_>>()?;
    let abelian_consistent = labels_match_partition(&abelian_partition, &abelian_labels);
    let abelian_classes: BTreeSet<Delta> = abelian_labels.iter().copied().collect();

    let well_defined = partition
        .members
        .iter()
        .all(|list| list.iter().all(|&v| labels[v as usize] == labels[list[0] as usize]));
    let component_labels: Vec<Delta> = partition.members.iter().map(|l| labels[l[0] as usize]).collect();
    let distinct: BTreeSet<Delta> = component_labels.iter().copied().collect();
    let injective = well_defined && distinct.len() == component_labels.len();
    let surjective = distinct == abelian_classes;
    let pairing = partition
        .members
        .iter()
        .zip(&component_labels)
        .map(|(list, &delta)| {
            let rep = graph.tuple(list[0] as usize);
            Gacc1Pair {
                abelian_image: ab.project_tuple(&rep),
                ac_representative: rep,
                ac_size: list.len(),
                delta,
            }
        })
        .collect();
    Ok(Gacc1Report {
        group: describe(g),
        n,
        soluble,
        warning: (!soluble).then(|| "group is not soluble; the bijection is not predicted".to_string()),
        abelian_invariants: structure.invariants().clone(),
        ac_component_count: partition.count(),
        nielsen_class_count: abelian_partition.count(),
        well_defined,
        injective,
        surjective,
        pass: abelian_consistent && well_defined && injective && surjective,
        pairing,
        elapsed_ms: elapsed_ms(start),
    })
}

/// True when two vertices share a label exactly when they share a component.
pub fn labels_match_partition<L: Ord + Copy>(partition: &Partition, labels: &[L]) -> bool {
    let mut owner: BTreeMap<L, usize> = BTreeMap::new();
    for (c, list) in partition.members.iter().enumerate() {
        for &v in list {
            match owner.entry(labels[v as usize]) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(c);
                }
                std::collections::btree_map::Entry::Occupied(e) => {
                    if *e.get() != c {
                        return false;
                    }
                }
            }
        }
    }
    partition
        .members
        .iter()
        .all(|list| list.iter().all(|&v| labels[v as usize] == labels[list[0] as usize]))
}

#[derive(Debug, Clone, Serialize)]
pub struct ImageClass {
    /// `{a, a^-1}` in the abelianization, sorted.
    pub image: Vec<usize>,
    /// AC classes of weight elements above the image, each sorted.
    pub classes: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct WeightOneReport {
    pub group: String,
    pub weight_element_count: usize,
    pub images: Vec<ImageClass>,
    pub satisfies_gacc1_1: bool,
}

pub fn weight_one_classes(g: &GroupTable, limits: &Limits) -> Result<WeightOneReport> {
    let w = weight(g, limits)?;
    if w != 1 {
        return Err(Error::WeightNotOne { weight: w });
    }
    let ab = abelianization(g);
    let graph = MoveGraph::build(g, 1, MoveSet::Ac, limits)?;
    let partition = graph.components();
    let mut images: BTreeMap<Vec<usize>, Vec<Vec<usize>>> = BTreeMap::new();
    for list in &partition.members {
        let class: Vec<usize> = list.iter().map(|&v| graph.tuple(v as usize)[0]).collect();
        let a = ab.project(class[0]);
        let key: Vec<usize> = BTreeSet::from([a, ab.table.inv(a)]).into_iter().collect();
        images.entry(key).or_default().push(class);
    }
    let images: Vec<ImageClass> = images
        .into_iter()
        .map(|(image, classes)| ImageClass { image, classes })
        .collect();
    Ok(WeightOneReport {
        group: describe(g),
        weight_element_count: graph.vertex_count(),
        satisfies_gacc1_1: images.iter().all(|i| i.classes.len() == 1),
        images,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct DiameterInequalityReport {
    pub group: String,
    pub n: usize,
    pub weight: usize,
    pub connected: bool,
    pub diameter_g: u64,
    pub diameter_abelianization: u64,
    pub diameter_w_quotient: u64,
    pub approximate: bool,
    /// `diam M_n(G_ab) <= diam M_n(G)`
    pub lower_holds: bool,
    /// `diam M_n(G) <= diam M_n(G/W(G)) + n + w(G)`
    pub upper_holds: bool,
    pub pass: bool,
}

fn graph_diameter(g: &GroupTable, n: usize, limits: &Limits) -> Result<(u64, bool, usize)> {
    let graph = MoveGraph::build(g, n, MoveSet::MPlusInversion, limits)?;
    let partition = graph.components();
    let d = graph.diameters(&partition, limits.exact_diameter_limit);
    let diameter = d.iter().map(|x| x.0).max().unwrap_or(0);
    Ok((diameter, d.iter().any(|x| x.1), partition.count()))
}

pub fn diameter_inequality_report(g: &GroupTable, n: usize, limits: &Limits) -> Result<DiameterInequalityReport> {
    let w = weight(g, limits)?;
    if n <= w {
        return Err(Error::RangeError(format!("need n > w(G) = {w}, got n = {n}")));
    }
    let ab = abelianization(g);
    let wq = quotient(g, &w_subgroup(g)?)?;
    TupleSpace::new(g.order(), n, limits)?;
    let (diameter_g, approx_g, count) = graph_diameter(g, n, limits)?;
    let (diameter_abelianization, approx_a, _) = graph_diameter(&ab.table, n, limits)?;
    let (diameter_w_quotient, approx_w, _) = graph_diameter(&wq.table, n, limits)?;
    let connected = count == 1;
    let lower_holds = diameter_abelianization <= diameter_g;
    let upper_holds = diameter_g <= diameter_w_quotient + (n + w) as u64;
    let approximate = approx_g || approx_a || approx_w;
    Ok(DiameterInequalityReport {
        group: describe(g),
        n,
        weight: w,
        connected,
        diameter_g,
        diameter_abelianization,
        diameter_w_quotient,
        approximate,
        lower_holds,
        upper_holds,
        pass: connected && lower_holds && upper_holds && !approximate,
    })
}

/// Whether AC moves and M-moves with inversions give the same partition of
/// the normally generating `n`-tuples.
pub fn move_equivalence_check(g: &GroupTable, n: usize, limits: &Limits) -> Result<bool> {
    let ac = MoveGraph::build(g, n, MoveSet::Ac, limits)?.components();
    let m = MoveGraph::build(g, n, MoveSet::MPlusInversion, limits)?.components();
    // both partitions number components by least vertex
    Ok(ac == m)
}

/// Whether every generating `n`-tuple of the abelianization lifts to a
/// generating `n`-tuple of `g`, checked by projecting all generating tuples.
pub fn abelianization_coessential(g: &GroupTable, n: usize, limits: &Limits) -> Result<bool> {
    let ab = abelianization(g);
    let space = TupleSpace::new(g.order(), n, limits)?;
    let target = TupleSpace::new(ab.table.order(), n, limits)?;
    let images: BTreeSet<u64> = enumerate_codes(&space, |t| is_generating(g, t))
        .into_par_iter()
        .map(|c| target.encode(&ab.project_tuple(&space.decode(c))))
        .collect::<Vec<_>>()
        .into_iter()
        .collect();
    let needed = enumerate_codes(&target, |t| is_generating(&ab.table, t));
    Ok(needed.iter().all(|c| images.contains(c)))
}

/// Nielsen class of each vertex of an abelian group's Nielsen graph.
pub fn nielsen_labels(a: &GroupTable, graph: &MoveGraph) -> Result<Vec<NielsenClass>> {
    let structure = AbelianStructure::new(a)?;
    (0..graph.vertex_count())
        .into_par_iter()
        .map(|v| structure.class_of(a, &graph.tuple(v)))
        .collect()
}
