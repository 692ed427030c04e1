//! Vertices of the self-dual lattice tree, neighbor enumeration, exploration and
//! distances.

use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::FieldElement;
use crate::error::Error;
use crate::f3::{isotropic_lines, radical_line, self_dual_planes_through_radical, F3Vector};
use crate::lattice::Lattice;
use crate::matrix::Matrix3;
use crate::metric::{cartan_decompose, is_in_a};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VertexKind {
    Pure,
    Alternating,
}

impl fmt::Display for VertexKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VertexKind::Pure => "pure",
            VertexKind::Alternating => "alternating",
        })
    }
}

/// A vertex of the tree, stored by a canonical lattice.
///
/// Pure vertices use their self-dual lattice. Alternating vertices use χΛ for the
/// larger lattice Λ of the pair (Λ♯ ⊊ Λ), so the key has v_pi(det) = 2.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Vertex {
    kind: VertexKind,
    lattice: Lattice,
}

impl Vertex {
    pub fn origin() -> Vertex {
        Vertex {
            kind: VertexKind::Pure,
            lattice: Lattice::standard(),
        }
    }

    pub fn pure(l: Lattice) -> Result<Vertex, Error> {
        if !l.is_self_dual() {
            return Err(Error::NotSelfDual);
        }
        Ok(Vertex {
            kind: VertexKind::Pure,
            lattice: l,
        })
    }

    /// The pure vertex g·𝒪³ for g ∈ 𝒜.
    pub fn from_matrix(g: &Matrix3) -> Result<Vertex, Error> {
        Vertex::pure(Lattice::from_basis(g)?)
    }

    /// The alternating vertex of Λ, where Λ♯ ⊊ Λ with Λ/Λ♯ of order 9 and χΛ ⊆ Λ♯.
    pub fn alternating(larger: &Lattice) -> Result<Vertex, Error> {
        let d = larger.det_valuation();
        let key = larger.scale_chi(-d.div_euclid(3));
        let big = key.scale_chi(-1);
        let dual = big.dual();
        let ok = big.det_valuation() == -1
            && big.contains(&dual)
            && dual != big
            && dual.contains(&big.scale_chi(1));
        if !ok {
            return Err(Error::NotAlternating);
        }
        Ok(Vertex {
            kind: VertexKind::Alternating,
            lattice: key,
        })
    }

    pub fn kind(&self) -> VertexKind {
        self.kind
    }

    /// The canonical key lattice.
    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    /// For an alternating vertex, the larger lattice Λ with v_pi(det Λ) = −1.
    pub fn larger_lattice(&self) -> Option<Lattice> {
        (self.kind == VertexKind::Alternating).then(|| self.lattice.scale_chi(-1))
    }

    pub fn key(&self) -> String {
        self.lattice.key()
    }

    pub fn neighbors(&self) -> Result<Vec<Vertex>, Error> {
        match self.kind {
            VertexKind::Pure => pure_neighbors(self),
            VertexKind::Alternating => alternating_neighbors(self),
        }
    }
}

fn lift(b: &Matrix3, c: &F3Vector) -> [FieldElement; 3] {
    let coeffs = c.0.map(|x| FieldElement::from_int(x as i64));
    b.apply(&coeffs)
}

fn columns(b: &Matrix3) -> Vec<[FieldElement; 3]> {
    vec![b.column(0), b.column(1), b.column(2)]
}

/// Alternating neighbors Λ + 𝒪·χ⁻¹ṽ of a self-dual Λ, one per isotropic line of
/// the reduced form on Λ/χΛ.
pub fn pure_neighbors(v: &Vertex) -> Result<Vec<Vertex>, Error> {
    if v.kind != VertexKind::Pure || !v.lattice.is_self_dual() {
        return Err(Error::NotSelfDual);
    }
    let l = &v.lattice;
    let b = l.basis_field();
    // ⟨Bx, By⟩ = xᵀ (BᵀB̄) ȳ; reduce mod χ where conjugation acts trivially
    let form = Lattice::residue_matrix(&b.transpose().mul(&b.map(|x| x.conj())))?;
    let chi_inv = FieldElement::chi_pow(-1);
    let mut out = Vec::with_capacity(4);
    for line in isotropic_lines(&form.transpose())? {
        let w = lift(&b, &line.rep()).map(|x| &x * &chi_inv);
        let mut gens = columns(&b);
        gens.push(w);
        let big = Lattice::from_generators(&gens)?;
        let dual = big.dual();
        let chain_ok = big.contains(l)
            && l.contains(&dual)
            && dual.contains(&big.scale_chi(1))
            && big != *l
            && dual != big;
        if !chain_ok {
            return Err(Error::Inconsistent(format!(
                "bad alternating lift of line {}",
                line.rep()
            )));
        }
        out.push(Vertex::alternating(&big)?);
    }
    Ok(out)
}

/// Pure neighbors of an alternating vertex: the lattices χΛ + lifts of each plane
/// through the radical of χ⟨·,·⟩ mod χ on Λ/χΛ.
pub fn alternating_neighbors(v: &Vertex) -> Result<Vec<Vertex>, Error> {
    let big = v.larger_lattice().ok_or(Error::NotAlternating)?;
    let b = big.basis_field();
    let chi = FieldElement::chi();
    let scaled = b.transpose().mul(&b.map(|x| x.conj())).map(|x| x * &chi);
    let form = Lattice::residue_matrix(&scaled)
        .map_err(|_| Error::NotAlternating)?
        .transpose();
    let radical = radical_line(&form)?;
    let dual = big.dual();
    if !dual.contains_vector(&lift(&b, &radical.rep())) {
        return Err(Error::Inconsistent(
            "radical is not the image of the dual".into(),
        ));
    }
    let mut out = Vec::with_capacity(4);
    for plane in self_dual_planes_through_radical(&form)? {
        let mut gens: Vec<[FieldElement; 3]> = columns(&b)
            .into_iter()
            .map(|c| c.map(|x| &x * &chi))
            .collect();
        for p in plane.basis() {
            gens.push(lift(&b, &p));
        }
        let l = Lattice::from_generators(&gens)?;
        if !(big.contains(&l) && l.contains(&dual)) {
            return Err(Error::Inconsistent("pure lift outside the chain".into()));
        }
        out.push(Vertex::pure(l)?);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphVertex {
    pub vertex: Vertex,
    pub key: String,
    pub depth: usize,
}

/// A ball in the tree around `origin`, vertices sorted by (depth, key).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BuildingGraph {
    pub origin: Vertex,
    pub vertices: Vec<GraphVertex>,
    /// Undirected edges as index pairs (i < j), sorted.
    pub edges: Vec<(usize, usize)>,
}

impl BuildingGraph {
    pub fn sphere_sizes(&self) -> Vec<usize> {
        let max = self.vertices.iter().map(|v| v.depth).max().unwrap_or(0);
        let mut s = vec![0; max + 1];
        for v in &self.vertices {
            s[v.depth] += 1;
        }
        s
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.vertices.len()];
        for &(a, b) in &self.edges {
            d[a] += 1;
            d[b] += 1;
        }
        d
    }

    pub fn count_kind(&self, kind: VertexKind) -> usize {
        self.vertices
            .iter()
            .filter(|v| v.vertex.kind() == kind)
            .count()
    }

    /// Every edge joins a pure and an alternating vertex.
    pub fn is_bipartite(&self) -> bool {
        self.edges
            .iter()
            .all(|&(a, b)| self.vertices[a].vertex.kind() != self.vertices[b].vertex.kind())
    }

    /// Connected with |E| = |V| − 1.
    pub fn is_tree(&self) -> bool {
        if self.edges.len() + 1 != self.vertices.len() {
            return false;
        }
        let mut parent: Vec<usize> = (0..self.vertices.len()).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        for &(a, b) in &self.edges {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra == rb {
                return false;
            }
            parent[ra] = rb;
        }
        true
    }
}

/// All vertices within `depth` edges of `origin`, with every edge between them.
pub fn bfs_explore(origin: &Vertex, depth: usize) -> Result<BuildingGraph, Error> {
    let mut found: Vec<(Vertex, String, usize)> = vec![(origin.clone(), origin.key(), 0)];
    let mut index: HashMap<Vertex, usize> = HashMap::from([(origin.clone(), 0)]);
    let mut edges: HashSet<(usize, usize)> = HashSet::new();
    let mut layer = vec![0usize];
    for d in 0..depth {
        layer.sort_by(|&a, &b| found[a].1.cmp(&found[b].1));
        let mut next = Vec::new();
        for &u in &layer {
            for n in found[u].0.neighbors()? {
                let w = match index.get(&n) {
                    Some(&w) => w,
                    None => {
                        let w = found.len();
                        let key = n.key();
                        index.insert(n.clone(), w);
                        found.push((n, key, d + 1));
                        next.push(w);
                        w
                    }
                };
                edges.insert((u.min(w), u.max(w)));
            }
        }
        layer = next;
    }
    let mut order: Vec<usize> = (0..found.len()).collect();
    order.sort_by(|&a, &b| (found[a].2, &found[a].1).cmp(&(found[b].2, &found[b].1)));
    let mut rank = vec![0; found.len()];
    for (r, &i) in order.iter().enumerate() {
        rank[i] = r;
    }
    let mut edges: Vec<(usize, usize)> = edges
        .into_iter()
        .map(|(a, b)| (rank[a].min(rank[b]), rank[a].max(rank[b])))
        .collect();
    edges.sort_unstable();
    let mut slots: Vec<Option<(Vertex, String, usize)>> = found.into_iter().map(Some).collect();
    let vertices = order
        .iter()
        .map(|&i| {
            let (vertex, key, depth) = slots[i].take().expect("each vertex once");
            GraphVertex { vertex, key, depth }
        })
        .collect();
    Ok(BuildingGraph {
        origin: origin.clone(),
        vertices,
        edges,
    })
}

/// Edge distance by bidirectional breadth-first search, giving up once the two
/// search radii sum past `bound`.
pub fn graph_distance(u: &Vertex, v: &Vertex, bound: usize) -> Result<usize, Error> {
    if u == v {
        return Ok(0);
    }
    let mut cache: HashMap<Vertex, Vec<Vertex>> = HashMap::new();
    let mut dist = [
        HashMap::from([(u.clone(), 0usize)]),
        HashMap::from([(v.clone(), 0usize)]),
    ];
    let mut frontier = [vec![u.clone()], vec![v.clone()]];
    let mut radius = [0usize, 0];
    loop {
        if radius[0] + radius[1] >= bound {
            return Err(Error::BoundExceeded(bound));
        }
        let side = if frontier[0].len() <= frontier[1].len() {
            0
        } else {
            1
        };
        let other = 1 - side;
        let mut next = Vec::new();
        let mut best: Option<usize> = None;
        for x in std::mem::take(&mut frontier[side]) {
            let ns = match cache.get(&x) {
                Some(ns) => ns.clone(),
                None => {
                    let ns = x.neighbors()?;
                    cache.insert(x.clone(), ns.clone());
                    ns
                }
            };
            for n in ns {
                if dist[side].contains_key(&n) {
                    continue;
                }
                if let Some(&d) = dist[other].get(&n) {
                    let total = radius[side] + 1 + d;
                    best = Some(best.map_or(total, |b| b.min(total)));
                }
                dist[side].insert(n.clone(), radius[side] + 1);
                next.push(n);
            }
        }
        radius[side] += 1;
        if let Some(b) = best {
            return Ok(b);
        }
        if next.is_empty() {
            return Err(Error::BoundExceeded(bound));
        }
        frontier[side] = next;
    }
}

/// Λ_g ⊆ χ⁻¹Λ_h and Λ_h ⊆ χ⁻¹Λ_g for distinct self-dual Λ_g, Λ_h.
pub fn adjacent_pures(g: &Matrix3, h: &Matrix3) -> Result<bool, Error> {
    if !is_in_a(g)? || !is_in_a(h)? {
        return Err(Error::NotInA);
    }
    if Lattice::from_basis(g)? == Lattice::from_basis(h)? {
        return Err(Error::SameLattice);
    }
    let gh = g.inverse()?.mul(h).scale_chi(1);
    let hg = h.inverse()?.mul(g).scale_chi(1);
    Ok(gh.is_integral() && hg.is_integral())
}

/// The self-dual lattices strictly between Λ_g and Λ_h along the geodesic.
///
/// With g⁻¹h = k₁·diag(χⁿ, 1, χ⁻ⁿ)·k₂, returns gk₁·diag(χⁱ, 1, χ⁻ⁱ)𝒪³ for
/// i = 1..n−1.
pub fn interpolate_self_dual(g: &Matrix3, h: &Matrix3) -> Result<Vec<Lattice>, Error> {
    if !is_in_a(g)? || !is_in_a(h)? {
        return Err(Error::NotInA);
    }
    let c = cartan_decompose(&g.inverse()?.mul(h))?;
    let [n, mid, low] = c.lambda;
    if mid != 0 || low != -n {
        return Err(Error::Inconsistent(format!(
            "Cartan exponents {:?} are not (n, 0, -n)",
            c.lambda
        )));
    }
    let gk = g.mul(&c.k);
    let mut out = Vec::new();
    for i in 1..n {
        let l = Lattice::from_basis(&gk.mul(&Matrix3::chi_diag([i, 0, -i])))?;
        if !l.is_self_dual() {
            return Err(Error::NotSelfDual);
        }
        out.push(l);
    }
    Ok(out)
}

#[derive(Serialize, Deserialize)]
struct VertexDoc {
    key: String,
    kind: VertexKind,
    depth: usize,
}

#[derive(Serialize, Deserialize)]
struct GraphDoc {
    origin: String,
    vertices: Vec<VertexDoc>,
    edges: Vec<[String; 2]>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExportFormat {
    Dot,
    Json,
}

pub fn export_graph(g: &BuildingGraph, format: ExportFormat) -> String {
    match format {
        ExportFormat::Dot => export_dot(g),
        ExportFormat::Json => export_json(g),
    }
}

fn export_dot(g: &BuildingGraph) -> String {
    let mut s = String::from("graph building {\n");
    for (i, v) in g.vertices.iter().enumerate() {
        let color = match v.vertex.kind() {
            VertexKind::Pure => "red",
            VertexKind::Alternating => "blue",
        };
        s.push_str(&format!(
            "  n{i} [color={color}, kind=\"{}\", depth={}, key=\"{}\"];\n",
            v.vertex.kind(),
            v.depth,
            v.key
        ));
    }
    for (a, b) in &g.edges {
        s.push_str(&format!("  n{a} -- n{b};\n"));
    }
    s.push_str("}\n");
    s
}

fn export_json(g: &BuildingGraph) -> String {
    let doc = GraphDoc {
        origin: g.origin.key(),
        vertices: g
            .vertices
            .iter()
            .map(|v| VertexDoc {
                key: v.key.clone(),
                kind: v.vertex.kind(),
                depth: v.depth,
            })
            .collect(),
        edges: g
            .edges
            .iter()
            .map(|&(a, b)| [g.vertices[a].key.clone(), g.vertices[b].key.clone()])
            .collect(),
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("graph serializes");
    s.push('\n');
    s
}

/// Rebuild a graph from its JSON export, re-validating every lattice key.
pub fn parse_graph_json(text: &str) -> Result<BuildingGraph, Error> {
    let doc: GraphDoc = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let mut index = HashMap::new();
    let mut vertices = Vec::with_capacity(doc.vertices.len());
    for (i, v) in doc.vertices.into_iter().enumerate() {
        let lattice: Lattice = v.key.parse()?;
        let vertex = match v.kind {
            VertexKind::Pure => Vertex::pure(lattice)?,
            VertexKind::Alternating => {
                let vx = Vertex::alternating(&lattice)?;
                if vx.lattice != lattice {
                    return Err(Error::Parse(format!(
                        "alternating key not normalized: {}",
                        v.key
                    )));
                }
                vx
            }
        };
        index.insert(v.key.clone(), i);
        vertices.push(GraphVertex {
            vertex,
            key: v.key,
            depth: v.depth,
        });
    }
    let origin_idx = *index
        .get(&doc.origin)
        .ok_or_else(|| Error::Parse("origin not among vertices".into()))?;
    let origin = vertices[origin_idx].vertex.clone();
    let mut edges = Vec::with_capacity(doc.edges.len());
    for [a, b] in &doc.edges {
        let ia = *index
            .get(a)
            .ok_or_else(|| Error::Parse(format!("unknown edge end {a}")))?;
        let ib = *index
            .get(b)
            .ok_or_else(|| Error::Parse(format!("unknown edge end {b}")))?;
        edges.push((ia.min(ib), ia.max(ib)));
    }
    Ok(BuildingGraph {
        origin,
        vertices,
        edges,
    })
}
