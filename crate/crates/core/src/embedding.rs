//! Rotation systems, hypermaps, genus, and a small text format.
//!
//! A cellular embedding of a connected graph in an orientable surface is
//! the same thing as a *rotation system*: a cyclic order of the half-edges
//! around each vertex. With half-edges labeled `1..=n`, the embedding is
//! the permutation triple `(alpha, beta, gamma)`:
//!
//! * `alpha` — the edge involution pairing opposite half-edges (for
//!   hypermaps, any permutation whose cycles are the hyperedges);
//! * `beta`  — the vertex permutation, one cycle per rotation;
//! * `gamma = alpha . beta` — the face permutation; each cycle traces one
//!   face boundary.
//!
//! The genus comes out of the cycle counts:
//! `2g = n + 2 - C(alpha) - C(beta) - C(gamma)`.
//!
//! The plane-permutation view of the same embedding is the pair
//! `(gamma, beta)` — see [`Hypermap::to_plane_permutation`].

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigUint;

use crate::caps::{embedding_count, Caps};
use crate::error::{Error, Result};
use crate::perm::{next_permutation, Permutation};
use crate::planeperm::PlanePermutation;

/// Whether `alpha` must pair half-edges (ordinary graph) or may have
/// cycles of any length (hypergraph).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MapKind {
    /// `alpha` is a fixed-point-free involution; cycles are edges.
    Map,
    /// `alpha` is any permutation; cycles are hyperedges.
    Hypermap,
}

/// A named vertex with its rotation (counterclockwise cyclic order of
/// incident half-edges, stored starting at the smallest label).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Vertex {
    name: String,
    rotation: Vec<usize>,
}

impl Vertex {
    /// Vertex name.
    pub fn name(&self) -> &str {
        &self.name
    }

    /// The rotation, rotated to start at its smallest half-edge.
    pub fn rotation(&self) -> &[usize] {
        &self.rotation
    }

    /// Vertex degree.
    pub fn degree(&self) -> usize {
        self.rotation.len()
    }
}

/// Rotates a cyclic sequence to start at its smallest entry.
fn canonical_rotation(rotation: &[usize]) -> Vec<usize> {
    let min_pos = rotation
        .iter()
        .enumerate()
        .min_by_key(|&(_, x)| x)
        .map(|(i, _)| i)
        .unwrap_or(0);
    let mut out = Vec::with_capacity(rotation.len());
    out.extend_from_slice(&rotation[min_pos..]);
    out.extend_from_slice(&rotation[..min_pos]);
    out
}

/// An embedded (hyper)graph: a rotation system together with its
/// permutation triple.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Hypermap {
    vertices: Vec<Vertex>,
    alpha: Permutation,
    beta: Permutation,
    gamma: Permutation,
    kind: MapKind,
}

impl Hypermap {
    /// Builds an embedding from named rotations and the (hyper)edge
    /// permutation. The rotations must partition `1..=alpha.size()`, the
    /// names must be distinct and printable without whitespace, `alpha`
    /// must be a fixed-point-free involution when `kind` is
    /// [`MapKind::Map`], and the whole structure must be connected.
    pub fn from_rotation_system(
        rotations: Vec<(String, Vec<usize>)>,
        alpha: Permutation,
        kind: MapKind,
    ) -> Result<Hypermap> {
        let n = alpha.size();
        if kind == MapKind::Map && !alpha.is_fixed_point_free_involution() {
            return Err(Error::NotAnInvolution(alpha.format_cycles()));
        }

        let mut names = BTreeSet::new();
        let mut seen = vec![false; n];
        let mut vertices = Vec::with_capacity(rotations.len());
        for (name, rotation) in rotations {
            if name.is_empty() || name.contains(|c: char| c.is_whitespace() || c == ':' || c == '#')
            {
                return Err(Error::UnknownVertex(format!("unusable vertex name {name:?}")));
            }
            if !names.insert(name.clone()) {
                return Err(Error::InvalidBlocks(format!("vertex {name} listed twice")));
            }
            if rotation.is_empty() {
                return Err(Error::InvalidBlocks(format!("vertex {name} has no half-edges")));
            }
            for &x in &rotation {
                if x == 0 || x > n {
                    return Err(Error::LabelOutOfRange { label: x, n });
                }
                if seen[x - 1] {
                    return Err(Error::DuplicateLabel(x));
                }
                seen[x - 1] = true;
            }
            vertices.push(Vertex {
                name,
                rotation: canonical_rotation(&rotation),
            });
        }
        if let Some(missing) = seen.iter().position(|&s| !s) {
            return Err(Error::InvalidBlocks(format!(
                "half-edge {} belongs to no vertex",
                missing + 1
            )));
        }
        vertices.sort_by(|a, b| a.name.cmp(&b.name));

        let beta_cycles: Vec<Vec<usize>> = vertices.iter().map(|v| v.rotation.clone()).collect();
        let beta = Permutation::from_cycles(&beta_cycles, n)?;
        let gamma = alpha.compose(&beta)?;

        let map = Hypermap {
            vertices,
            alpha,
            beta,
            gamma,
            kind,
        };
        map.check_connected()?;
        Ok(map)
    }

    /// Builds an ordinary map from rotations and an explicit edge list.
    pub fn from_edges(
        rotations: Vec<(String, Vec<usize>)>,
        edges: &[(usize, usize)],
    ) -> Result<Hypermap> {
        let n = edges.len() * 2;
        let mut images = vec![0usize; n];
        for &(a, b) in edges {
            if a == 0 || b == 0 || a > n || b > n {
                return Err(Error::LabelOutOfRange { label: a.max(b), n });
            }
            if a == b {
                return Err(Error::InvalidBlocks(format!(
                    "edge ({a}, {b}) pairs a half-edge with itself"
                )));
            }
            for x in [a, b] {
                if images[x - 1] != 0 {
                    return Err(Error::DuplicateLabel(x));
                }
            }
            images[a - 1] = b;
            images[b - 1] = a;
        }
        let alpha = Permutation::from_images(images)?;
        Hypermap::from_rotation_system(rotations, alpha, MapKind::Map)
    }

    fn check_connected(&self) -> Result<()> {
        let n = self.alpha.size();
        let mut dsu: Vec<usize> = (0..n).collect();
        fn find(dsu: &mut [usize], x: usize) -> usize {
            let mut root = x;
            while dsu[root] != root {
                root = dsu[root];
            }
            let mut x = x;
            while dsu[x] != root {
                let next = dsu[x];
                dsu[x] = root;
                x = next;
            }
            root
        }
        for x in 0..n {
            for y in [self.alpha.apply(x + 1) - 1, self.beta.apply(x + 1) - 1] {
                let (a, b) = (find(&mut dsu, x), find(&mut dsu, y));
                if a != b {
                    dsu[a] = b;
                }
            }
        }
        let root = find(&mut dsu, 0);
        for x in 1..n {
            if find(&mut dsu, x) != root {
                return Err(Error::Disconnected);
            }
        }
        Ok(())
    }

    /// Number of half-edges.
    pub fn n(&self) -> usize {
        self.alpha.size()
    }

    /// Edge involution (or hyperedge permutation).
    pub fn alpha(&self) -> &Permutation {
        &self.alpha
    }

    /// Vertex permutation: one cycle per rotation.
    pub fn beta(&self) -> &Permutation {
        &self.beta
    }

    /// Face permutation `gamma = alpha . beta`.
    pub fn gamma(&self) -> &Permutation {
        &self.gamma
    }

    /// Map or hypermap.
    pub fn kind(&self) -> MapKind {
        self.kind
    }

    /// Vertices, sorted by name.
    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    /// Looks a vertex up by name.
    pub fn vertex(&self, name: &str) -> Result<&Vertex> {
        self.vertices
            .iter()
            .find(|v| v.name == name)
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    /// Number of vertices.
    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    /// Number of (hyper)edges: cycles of `alpha`.
    pub fn num_edges(&self) -> usize {
        self.alpha.num_cycles()
    }

    /// Number of faces: cycles of `gamma`.
    pub fn num_faces(&self) -> usize {
        self.gamma.num_cycles()
    }

    /// True when the embedding has a single face.
    pub fn is_one_face(&self) -> bool {
        self.num_faces() == 1
    }

    /// Genus of the embedding surface:
    /// `(n + 2 - C(alpha) - C(beta) - C(gamma)) / 2`.
    pub fn genus(&self) -> usize {
        let n = self.n();
        let cycles = self.alpha.num_cycles() + self.beta.num_cycles() + self.gamma.num_cycles();
        let twice = n + 2 - cycles;
        debug_assert_eq!(twice % 2, 0, "odd Euler defect on a connected structure");
        twice / 2
    }

    /// `v - e + f`; equals `2 - 2g` for ordinary maps.
    pub fn euler_characteristic(&self) -> i64 {
        self.num_vertices() as i64 - self.num_edges() as i64 + self.num_faces() as i64
    }

    /// Cycle rank `e - v + 1` of the underlying connected graph.
    pub fn betti(&self) -> usize {
        self.num_edges() + 1 - self.num_vertices()
    }

    /// Face boundaries: the cycles of `gamma`.
    pub fn faces(&self) -> Vec<Vec<usize>> {
        self.gamma.cycles()
    }

    /// The faces incident to a vertex, with their count.
    pub fn faces_at(&self, name: &str) -> Result<(usize, Vec<Vec<usize>>)> {
        let vertex = self.vertex(name)?;
        let members: BTreeSet<usize> = vertex.rotation.iter().copied().collect();
        let incident: Vec<Vec<usize>> = self
            .faces()
            .into_iter()
            .filter(|f| f.iter().any(|x| members.contains(x)))
            .collect();
        Ok((incident.len(), incident))
    }

    /// The embedding as a plane permutation `(gamma, beta)`.
    pub fn to_plane_permutation(&self) -> PlanePermutation {
        PlanePermutation::new(self.gamma.clone(), self.beta.clone())
            .expect("components share the ground set")
    }

    /// The same map with one vertex's rotation replaced. The new rotation
    /// must use exactly the old half-edges.
    pub fn set_rotation(&self, name: &str, rotation: &[usize]) -> Result<Hypermap> {
        let vertex = self.vertex(name)?;
        let mut old: Vec<usize> = vertex.rotation.clone();
        let mut new: Vec<usize> = rotation.to_vec();
        old.sort_unstable();
        new.sort_unstable();
        if old != new {
            return Err(Error::WrongRotation {
                vertex: name.to_string(),
                detail: format!("rotation must use half-edges {old:?}"),
            });
        }
        let rotations: Vec<(String, Vec<usize>)> = self
            .vertices
            .iter()
            .map(|v| {
                let r = if v.name == name {
                    rotation.to_vec()
                } else {
                    v.rotation.clone()
                };
                (v.name.clone(), r)
            })
            .collect();
        Hypermap::from_rotation_system(rotations, self.alpha.clone(), self.kind)
    }

    /// Forgets the rotations, keeping only the incidence structure.
    pub fn underlying_graph(&self) -> UnderlyingGraph {
        let vertices = self
            .vertices
            .iter()
            .map(|v| {
                let mut labels = v.rotation.clone();
                labels.sort_unstable();
                (v.name.clone(), labels)
            })
            .collect();
        UnderlyingGraph {
            vertices,
            alpha: self.alpha.clone(),
            kind: self.kind,
        }
    }

    /// Serializes to the text format of [`parse_emb`].
    pub fn write_emb(&self) -> String {
        let mut out = String::from("vertices:\n");
        for v in &self.vertices {
            let labels: Vec<String> = v.rotation.iter().map(|x| x.to_string()).collect();
            out.push_str(&format!("{}: {}\n", v.name, labels.join(" ")));
        }
        match self.kind {
            MapKind::Map => {
                out.push_str("edges:\n");
                let mut edges: Vec<(usize, usize)> = self
                    .alpha
                    .cycles()
                    .into_iter()
                    .map(|c| (c[0], c[1]))
                    .collect();
                edges.sort_unstable();
                for (a, b) in edges {
                    out.push_str(&format!("{a} {b}\n"));
                }
            }
            MapKind::Hypermap => {
                out.push_str(&format!("alpha: {}\n", self.alpha.format_cycles()));
            }
        }
        out
    }
}

impl fmt::Display for Hypermap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} vertices, {} edges, {} faces, genus {}",
            self.num_vertices(),
            self.num_edges(),
            self.num_faces(),
            self.genus()
        )
    }
}

/// A connected (hyper)graph with named vertices but no rotations: the
/// thing whose embeddings are enumerated.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UnderlyingGraph {
    vertices: Vec<(String, Vec<usize>)>,
    alpha: Permutation,
    kind: MapKind,
}

impl UnderlyingGraph {
    /// Vertices (name, sorted incident half-edges), sorted by name.
    pub fn vertices(&self) -> &[(String, Vec<usize>)] {
        &self.vertices
    }

    /// Vertex degrees, in vertex order.
    pub fn degrees(&self) -> Vec<usize> {
        self.vertices.iter().map(|(_, l)| l.len()).collect()
    }

    /// Number of embeddings: the product of `(d - 1)!` over all vertices.
    pub fn num_embeddings(&self) -> BigUint {
        embedding_count(&self.degrees())
    }

    /// The embedding with every rotation in ascending label order.
    pub fn reference_embedding(&self) -> Result<Hypermap> {
        Hypermap::from_rotation_system(self.vertices.clone(), self.alpha.clone(), self.kind)
    }

    /// Iterates over all embeddings of the graph (every combination of
    /// vertex rotations), refusing when their number exceeds the cap.
    pub fn all_embeddings(&self, caps: &Caps) -> Result<EmbeddingIter<'_>> {
        caps.check_embeddings(&self.num_embeddings())?;
        let rotations: Vec<RotationIter> = self
            .vertices
            .iter()
            .map(|(_, labels)| RotationIter::new(labels))
            .collect();
        Ok(EmbeddingIter {
            graph: self,
            current: rotations,
            done: false,
        })
    }
}

/// Iterator over the `(d - 1)!` rotations of a vertex: the smallest
/// half-edge stays first, the rest run through all orders
/// lexicographically.
#[derive(Clone, Debug)]
pub struct RotationIter {
    head: usize,
    tail: Vec<usize>,
    fresh: bool,
}

impl RotationIter {
    /// Rotations of the given half-edges (need not be sorted).
    pub fn new(labels: &[usize]) -> RotationIter {
        let mut sorted = labels.to_vec();
        sorted.sort_unstable();
        RotationIter {
            head: sorted[0],
            tail: sorted[1..].to_vec(),
            fresh: true,
        }
    }

    /// The rotation currently pointed at.
    pub fn current(&self) -> Vec<usize> {
        let mut r = Vec::with_capacity(self.tail.len() + 1);
        r.push(self.head);
        r.extend_from_slice(&self.tail);
        r
    }

    /// Steps to the next rotation; false when all have been seen (the
    /// iterator then sits at the first rotation again).
    pub fn advance(&mut self) -> bool {
        next_permutation(&mut self.tail)
    }
}

impl Iterator for RotationIter {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.fresh {
            self.fresh = false;
            return Some(self.current());
        }
        if self.advance() {
            Some(self.current())
        } else {
            None
        }
    }
}

/// Iterator over all embeddings of an [`UnderlyingGraph`], produced in
/// mixed-radix order over the per-vertex rotation iterators.
pub struct EmbeddingIter<'g> {
    graph: &'g UnderlyingGraph,
    current: Vec<RotationIter>,
    done: bool,
}

impl Iterator for EmbeddingIter<'_> {
    type Item = Result<Hypermap>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        let rotations: Vec<(String, Vec<usize>)> = self
            .graph
            .vertices
            .iter()
            .zip(self.current.iter())
            .map(|((name, _), it)| (name.clone(), it.current()))
            .collect();
        let item =
            Hypermap::from_rotation_system(rotations, self.graph.alpha.clone(), self.graph.kind);
        // Mixed-radix increment, last vertex fastest.
        let mut i = self.current.len();
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.current[i].advance() {
                break;
            }
            // advance() exhausted this digit and reset it to the start.
        }
        Some(item)
    }
}

/// Parses the embedding text format:
///
/// ```text
/// # comment
/// vertices:
/// A: 1
/// B: 2 6 4 8
/// C: 3 7 5
/// edges:
/// 1 2
/// 3 6
/// 4 7
/// 5 8
/// ```
///
/// The `edges:` section (unordered half-edge pairs, one per line) yields
/// an ordinary map; an `alpha: (1 2)(3 6)(4 7)(5 8)` line instead yields
/// a hypermap with the given hyperedge permutation. Half-edge labels must
/// be exactly `1..=n`. Rotations are read counterclockwise.
pub fn parse_emb(text: &str) -> Result<Hypermap> {
    #[derive(PartialEq)]
    enum Section {
        Preamble,
        Vertices,
        Edges,
    }
    let mut section = Section::Preamble;
    let mut rotations: Vec<(String, Vec<usize>)> = Vec::new();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut alpha_line: Option<(usize, String)> = None;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: String| Error::Parse {
            line: line_no,
            msg,
        };
        if line == "vertices:" {
            if section != Section::Preamble {
                return Err(err("vertices: section out of order".into()));
            }
            section = Section::Vertices;
            continue;
        }
        if line == "edges:" {
            if section != Section::Vertices || alpha_line.is_some() {
                return Err(err("edges: section out of order".into()));
            }
            section = Section::Edges;
            continue;
        }
        if let Some(rest) = line.strip_prefix("alpha:") {
            if section != Section::Vertices || alpha_line.is_some() {
                return Err(err("alpha: line out of order".into()));
            }
            alpha_line = Some((line_no, rest.trim().to_string()));
            continue;
        }
        match section {
            Section::Preamble => {
                return Err(err(format!("expected vertices:, found {line:?}")));
            }
            Section::Vertices => {
                let (name, labels) = line
                    .split_once(':')
                    .ok_or_else(|| err(format!("expected NAME: labels, found {line:?}")))?;
                let name = name.trim().to_string();
                let labels = labels
                    .split_whitespace()
                    .map(|tok| {
                        tok.parse::<usize>()
                            .map_err(|_| err(format!("bad half-edge label {tok:?}")))
                    })
                    .collect::<Result<Vec<usize>>>()?;
                if labels.is_empty() {
                    return Err(err(format!("vertex {name} has no half-edges")));
                }
                rotations.push((name, labels));
            }
            Section::Edges => {
                let pair = line
                    .split_whitespace()
                    .map(|tok| {
                        tok.parse::<usize>()
                            .map_err(|_| err(format!("bad half-edge label {tok:?}")))
                    })
                    .collect::<Result<Vec<usize>>>()?;
                if pair.len() != 2 {
                    return Err(err(format!(
                        "an edge is two half-edge labels, found {}",
                        pair.len()
                    )));
                }
                edges.push((pair[0], pair[1]));
            }
        }
    }

    if rotations.is_empty() {
        return Err(Error::Parse {
            line: text.lines().count().max(1),
            msg: "no vertices".into(),
        });
    }
    let n: usize = rotations.iter().map(|(_, l)| l.len()).sum();

    if let Some((line_no, cycles)) = alpha_line {
        let alpha = Permutation::parse_cycles(&cycles, Some(n)).map_err(|e| Error::Parse {
            line: line_no,
            msg: e.to_string(),
        })?;
        Hypermap::from_rotation_system(rotations, alpha, MapKind::Hypermap)
    } else {
        if edges.is_empty() {
            return Err(Error::Parse {
                line: text.lines().count().max(1),
                msg: "no edges: section and no alpha: line".into(),
            });
        }
        if edges.len() * 2 != n {
            return Err(Error::Parse {
                line: text.lines().count().max(1),
                msg: format!(
                    "{} half-edges at the vertices but {} in the edge list",
                    n,
                    edges.len() * 2
                ),
            });
        }
        Hypermap::from_edges(rotations, &edges)
    }
}

/// Face supports as sets, one `BTreeSet` per face.
pub fn face_supports(map: &Hypermap) -> Vec<BTreeSet<usize>> {
    map.faces()
        .into_iter()
        .map(|f| f.into_iter().collect())
        .collect()
}

/// The set of vertex names whose rotations meet a given face support.
pub fn vertices_on_face(map: &Hypermap, face: &BTreeSet<usize>) -> BTreeSet<String> {
    map.vertices()
        .iter()
        .filter(|v| v.rotation().iter().any(|x| face.contains(x)))
        .map(|v| v.name().to_string())
        .collect()
}

/// Checks `v - e + f = 2 - 2g` (ordinary maps only).
pub fn euler_identity_holds(map: &Hypermap) -> bool {
    map.kind() != MapKind::Map || map.euler_characteristic() == 2 - 2 * map.genus() as i64
}

/// Builds a [`BTreeMap`] of vertex name to incident face count.
pub fn face_counts_by_vertex(map: &Hypermap) -> Result<BTreeMap<String, usize>> {
    let mut out = BTreeMap::new();
    for v in map.vertices() {
        let (q, _) = map.faces_at(v.name())?;
        out.insert(v.name().to_string(), q);
    }
    Ok(out)
}
