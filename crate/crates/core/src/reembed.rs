//! Reembedding one vertex: local genus distributions, genus ranges, and
//! necessary conditions for extremal embeddings.
//!
//! Fix an embedding and a vertex `nu` of degree `d`. The other rotations
//! stay put while `nu` runs through its `(d - 1)!` rotations; each choice
//! yields an embedding whose genus differs from the base genus by some
//! `dg`. The histogram of `dg` is the *local genus distribution*. It can
//! be computed two independent ways:
//!
//! * **oracle** — enumerate the rotations and count faces each time;
//! * **formula** — localize at `nu`; if the local diagonal has cycle type
//!   `lambda` and `nu` meets `q` faces, the number of rotations changing
//!   the genus by `dg` is `p_{q - 2 dg}^lambda(d)` (more faces, lower
//!   genus), read from [`crate::counting::pk_recurrence`].
//!
//! [`Method::Both`] runs the two and insists they agree. On top of the
//! distribution sit the reachable genus range of a vertex (and of a
//! face-disjoint vertex set), necessary conditions for minimum/maximum
//! genus, and exact one-face probabilities.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::caps::Caps;
use crate::counting::{factorial, pk_recurrence, zagier_bounds};
use crate::embedding::{face_supports, Hypermap, RotationIter, UnderlyingGraph};
use crate::error::{Error, Result};
use crate::par::map_merge;
use crate::perm::CycleType;

/// How to compute a local genus distribution.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Method {
    /// Table lookup through the localization.
    Formula,
    /// Brute-force rotation enumeration.
    Oracle,
    /// Both, with a fatal error on disagreement.
    Both,
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Method> {
        match s {
            "formula" => Ok(Method::Formula),
            "oracle" => Ok(Method::Oracle),
            "both" => Ok(Method::Both),
            other => Err(Error::InvalidArgument(format!(
                "unknown method {other:?} (expected formula, oracle, or both)"
            ))),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Formula => "formula",
            Method::Oracle => "oracle",
            Method::Both => "both",
        })
    }
}

/// Histogram of genus changes over all rotations of one vertex.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GenusDistribution {
    vertex: String,
    degree: usize,
    q: usize,
    lambda: CycleType,
    base_genus: usize,
    method: Method,
    counts: BTreeMap<i64, BigUint>,
}

impl GenusDistribution {
    /// Name of the reembedded vertex.
    pub fn vertex(&self) -> &str {
        &self.vertex
    }

    /// Its degree.
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Number of faces the vertex meets in the base embedding.
    pub fn q(&self) -> usize {
        self.q
    }

    /// Cycle type of the local diagonal.
    pub fn lambda(&self) -> &CycleType {
        &self.lambda
    }

    /// Genus of the base embedding.
    pub fn base_genus(&self) -> usize {
        self.base_genus
    }

    /// How the histogram was computed.
    pub fn method(&self) -> Method {
        self.method
    }

    /// The histogram: genus change -> number of rotations.
    pub fn counts(&self) -> &BTreeMap<i64, BigUint> {
        &self.counts
    }

    /// Count for one genus change (zero when absent).
    pub fn get(&self, dg: i64) -> BigUint {
        self.counts.get(&dg).cloned().unwrap_or_else(BigUint::zero)
    }

    /// Number of rotations keeping the genus unchanged (the base rotation
    /// included), `R_nu` of the one-face theory.
    pub fn same_genus(&self) -> BigUint {
        self.get(0)
    }

    /// Checks the unconditional invariants: counts sum to `(d - 1)!`,
    /// the base rotation keeps its genus, and no reachable genus is
    /// negative.
    pub fn validate(&self) -> Result<()> {
        let total: BigUint = self.counts.values().sum();
        if total != factorial(self.degree - 1) {
            return Err(Error::MethodDisagreement(format!(
                "histogram for {} sums to {total}, want ({} - 1)!",
                self.vertex, self.degree
            )));
        }
        if self.get(0).is_zero() {
            return Err(Error::MethodDisagreement(format!(
                "histogram for {} misses the base rotation at dg = 0",
                self.vertex
            )));
        }
        for &dg in self.counts.keys() {
            if self.base_genus as i64 + dg < 0 {
                return Err(Error::MethodDisagreement(format!(
                    "histogram for {} reaches negative genus at dg = {dg}",
                    self.vertex
                )));
            }
        }
        Ok(())
    }

    /// Tab-separated rows `dg<TAB>count<TAB>genus`, `dg` ascending.
    pub fn render_tsv(&self) -> String {
        let mut out = String::new();
        for (dg, count) in &self.counts {
            let genus = self.base_genus as i64 + dg;
            out.push_str(&format!("{dg}\t{count}\t{genus}\n"));
        }
        out
    }
}

/// Computes the local genus distribution of one vertex.
///
/// The oracle path enumerates rotations (subject to
/// [`Caps::check_degree`]); the formula path reads the count table of the
/// local diagonal's cycle type. `parallel` spreads the oracle's rotation
/// walk over the rayon pool.
pub fn local_distribution(
    map: &Hypermap,
    vertex: &str,
    method: Method,
    caps: &Caps,
    parallel: bool,
) -> Result<GenusDistribution> {
    let v = map.vertex(vertex)?;
    let labels: Vec<usize> = {
        let mut l = v.rotation().to_vec();
        l.sort_unstable();
        l
    };
    let degree = labels.len();
    let base_genus = map.genus();

    // The localization is computed on every path: it carries q and lambda.
    let loc = map.to_plane_permutation().localize(&labels)?;
    let q = loc.q();
    let lambda = loc.lambda();

    let counts = match method {
        Method::Formula => formula_counts(&lambda, q)?,
        Method::Oracle => oracle_counts(map, &labels, caps, parallel)?,
        Method::Both => {
            let formula = formula_counts(&lambda, q)?;
            let oracle = oracle_counts(map, &labels, caps, parallel)?;
            if formula != oracle {
                return Err(Error::MethodDisagreement(format!(
                    "vertex {vertex}: formula {formula:?} vs oracle {oracle:?}"
                )));
            }
            formula
        }
    };

    let dist = GenusDistribution {
        vertex: vertex.to_string(),
        degree,
        q,
        lambda,
        base_genus,
        method,
        counts,
    };
    dist.validate()?;
    Ok(dist)
}

/// Formula path: entry `k` of the count table is the number of rotations
/// leaving the vertex on `k` faces, i.e. changing the genus by
/// `(q - k) / 2`.
fn formula_counts(lambda: &CycleType, q: usize) -> Result<BTreeMap<i64, BigUint>> {
    let table = pk_recurrence(lambda)?;
    let mut counts = BTreeMap::new();
    for (&k, count) in table.counts() {
        let diff = q as i64 - k as i64;
        debug_assert_eq!(diff.rem_euclid(2), 0, "face-count parity violated");
        counts.insert(diff / 2, count.clone());
    }
    Ok(counts)
}

/// Oracle path: walk all `(d - 1)!` rotations of the vertex and count the
/// faces of each embedding directly (only the vertex's own beta entries
/// change, so the face permutation is recomputed in place).
fn oracle_counts(
    map: &Hypermap,
    labels: &[usize],
    caps: &Caps,
    parallel: bool,
) -> Result<BTreeMap<i64, BigUint>> {
    let d = labels.len();
    caps.check_degree(d)?;
    let n = map.n();
    let base_faces = map.num_faces();

    // 0-based image tables shared by all branches.
    let alpha: Vec<usize> = (1..=n).map(|x| map.alpha().apply(x) - 1).collect();
    let beta_base: Vec<usize> = (1..=n).map(|x| map.beta().apply(x) - 1).collect();

    // Branch on the rotation entry after the fixed smallest half-edge.
    let head = labels[0];
    let tail: Vec<usize> = labels[1..].to_vec();
    let branches: Vec<Option<usize>> = if tail.is_empty() {
        vec![None]
    } else {
        tail.iter().map(|&x| Some(x)).collect()
    };

    let work = |second: Option<usize>| -> Vec<u64> {
        let mut tally = vec![0u64; n + 2];
        let mut beta = beta_base.clone();
        let mut seen = vec![0u32; n];
        let mut epoch = 0u32;
        let mut rest: Vec<usize> = match second {
            None => Vec::new(),
            Some(a) => tail.iter().copied().filter(|&x| x != a).collect(),
        };
        loop {
            // Write the rotation (head, second, rest...) into beta.
            let mut prev = head;
            if let Some(a) = second {
                beta[prev - 1] = a - 1;
                prev = a;
                for &x in &rest {
                    beta[prev - 1] = x - 1;
                    prev = x;
                }
            }
            beta[prev - 1] = head - 1;
            // Count the cycles of gamma = alpha . beta.
            epoch += 1;
            let mut faces = 0usize;
            for x0 in 0..n {
                if seen[x0] != epoch {
                    faces += 1;
                    let mut x = x0;
                    while seen[x] != epoch {
                        seen[x] = epoch;
                        x = alpha[beta[x]];
                    }
                }
            }
            tally[faces] += 1;
            if rest.is_empty() || !crate::perm::next_permutation(&mut rest) {
                break;
            }
        }
        tally
    };
    let merge = |mut acc: Vec<u64>, item: Vec<u64>| {
        for (a, b) in acc.iter_mut().zip(item) {
            *a += b;
        }
        acc
    };
    let tally = map_merge(branches, parallel, work, merge, vec![0u64; n + 2]);

    let mut counts = BTreeMap::new();
    for (faces, count) in tally.into_iter().enumerate() {
        if count == 0 {
            continue;
        }
        let diff = base_faces as i64 - faces as i64;
        if diff.rem_euclid(2) != 0 {
            return Err(Error::MethodDisagreement(format!(
                "face count {faces} has wrong parity against base {base_faces}"
            )));
        }
        counts.insert(diff / 2, BigUint::from(count));
    }
    Ok(counts)
}

/// The genus changes reachable by reembedding one vertex.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LocalRange {
    /// Vertex name.
    pub vertex: String,
    /// Vertex degree.
    pub degree: usize,
    /// Faces met by the vertex.
    pub q: usize,
    /// Parts of the local diagonal's cycle type.
    pub ell: usize,
    /// Most negative reachable genus change.
    pub lo: i64,
    /// Most positive reachable genus change.
    pub hi: i64,
}

/// Reachable genus range of one vertex: every
/// `-floor((d + 1 - ell - q) / 2) <= dg <= floor((q - 1) / 2)` occurs.
pub fn local_range(map: &Hypermap, vertex: &str) -> Result<LocalRange> {
    let v = map.vertex(vertex)?;
    let mut labels = v.rotation().to_vec();
    labels.sort_unstable();
    let loc = map.to_plane_permutation().localize(&labels)?;
    let degree = labels.len();
    let q = loc.q();
    let ell = loc.lambda().num_parts();
    Ok(LocalRange {
        vertex: vertex.to_string(),
        degree,
        q,
        ell,
        lo: -(((degree + 1 - ell - q) / 2) as i64),
        hi: ((q - 1) / 2) as i64,
    })
}

/// Summed genus range over a set of pairwise face-disjoint vertices
/// (every bound realizable by reembedding the vertices independently).
/// The empty set yields `(0, 0)`.
pub fn face_disjoint_range(map: &Hypermap, vertices: &[String]) -> Result<(i64, i64)> {
    for (i, a) in vertices.iter().enumerate() {
        if vertices[..i].contains(a) {
            return Err(Error::InvalidArgument(format!("vertex {a} listed twice")));
        }
    }
    // No face support may meet two of the chosen vertices.
    let supports = face_supports(map);
    for (i, a) in vertices.iter().enumerate() {
        for b in &vertices[i + 1..] {
            let va: Vec<usize> = map.vertex(a)?.rotation().to_vec();
            let vb: Vec<usize> = map.vertex(b)?.rotation().to_vec();
            for f in &supports {
                if va.iter().any(|x| f.contains(x)) && vb.iter().any(|x| f.contains(x)) {
                    return Err(Error::NotFaceDisjoint(a.clone(), b.clone()));
                }
            }
        }
    }
    let mut lo = 0i64;
    let mut hi = 0i64;
    for v in vertices {
        let r = local_range(map, v)?;
        lo += r.lo;
        hi += r.hi;
    }
    Ok((lo, hi))
}

/// Which extremal-genus condition a report is about.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CheckKind {
    /// Necessary for minimum genus: `ell + q = d + 1` at every vertex.
    MinGenus,
    /// Necessary for maximum genus: `q <= 2` at every vertex.
    MaxGenus,
}

/// Per-vertex row of a necessary-condition report.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ConditionRow {
    /// Vertex name.
    pub vertex: String,
    /// Vertex degree.
    pub degree: usize,
    /// Faces met by the vertex.
    pub q: usize,
    /// Parts of the local diagonal's cycle type.
    pub ell: usize,
    /// Whether the condition holds at this vertex.
    pub holds: bool,
}

/// Outcome of a necessary-condition check over all vertices.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NecessaryCondition {
    /// Which condition was checked.
    pub kind: CheckKind,
    /// One row per vertex, in name order.
    pub rows: Vec<ConditionRow>,
    /// True when every row holds.
    pub holds: bool,
}

fn condition_check(map: &Hypermap, kind: CheckKind) -> Result<NecessaryCondition> {
    let mut rows = Vec::with_capacity(map.num_vertices());
    for v in map.vertices() {
        let r = local_range(map, v.name())?;
        let holds = match kind {
            CheckKind::MinGenus => r.ell + r.q == r.degree + 1,
            CheckKind::MaxGenus => r.q <= 2,
        };
        rows.push(ConditionRow {
            vertex: v.name().to_string(),
            degree: r.degree,
            q: r.q,
            ell: r.ell,
            holds,
        });
    }
    let holds = rows.iter().all(|r| r.holds);
    Ok(NecessaryCondition { kind, rows, holds })
}

/// Necessary condition for minimum genus: at every vertex, no
/// reembedding lowers the genus, i.e. `ell + q = d + 1`. A failing row
/// certifies that a lower-genus embedding exists.
pub fn min_genus_check(map: &Hypermap) -> Result<NecessaryCondition> {
    condition_check(map, CheckKind::MinGenus)
}

/// Necessary condition for maximum genus: every vertex meets at most two
/// faces. A failing row certifies that a higher-genus embedding exists.
pub fn max_genus_check(map: &Hypermap) -> Result<NecessaryCondition> {
    condition_check(map, CheckKind::MaxGenus)
}

/// Exact one-face reembedding data for one vertex of a one-face
/// embedding.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OneFaceReport {
    /// Vertex name.
    pub vertex: String,
    /// Vertex degree.
    pub degree: usize,
    /// Cycle type of the local diagonal.
    pub lambda: CycleType,
    /// Number of rotations keeping one face (the base one included).
    pub same_genus: BigUint,
    /// `same_genus / (d - 1)!`.
    pub probability: BigRational,
    /// Universal lower bound `2 / (d + 2)`.
    pub universal_lower: BigRational,
    /// Sharper exact lower bound `2 / (d - a_1 + 2)`.
    pub bound_lower: BigRational,
    /// Exact upper bound `2 / (d - a_1 + 19/29)` (may exceed 1).
    pub bound_upper: BigRational,
}

/// The probability that a uniformly random rotation of `vertex` keeps
/// the embedding one-face, exactly, with its two-sided bounds. Requires
/// a one-face base embedding.
pub fn one_face_probability(map: &Hypermap, vertex: &str) -> Result<OneFaceReport> {
    if !map.is_one_face() {
        return Err(Error::NotOneFace(map.num_faces()));
    }
    let v = map.vertex(vertex)?;
    let mut labels = v.rotation().to_vec();
    labels.sort_unstable();
    let degree = labels.len();
    let loc = map.to_plane_permutation().localize(&labels)?;
    debug_assert_eq!(loc.q(), 1);
    let lambda = loc.lambda();

    let same_genus = pk_recurrence(&lambda)?.get(1);
    let total = BigRational::from_integer(BigInt::from(factorial(degree - 1)));
    let probability =
        BigRational::from_integer(BigInt::from(same_genus.clone())) / total.clone();
    let universal_lower = BigRational::new(BigInt::from(2), BigInt::from(degree + 2));
    let (zag_lo, zag_hi) = zagier_bounds(&lambda)?;
    let bound_lower = zag_lo / total.clone();
    let bound_upper = zag_hi / total;

    if probability < universal_lower || probability < bound_lower || probability > bound_upper {
        return Err(Error::MethodDisagreement(format!(
            "one-face probability {probability} of vertex {vertex} escapes its bounds"
        )));
    }
    Ok(OneFaceReport {
        vertex: vertex.to_string(),
        degree,
        lambda,
        same_genus,
        probability,
        universal_lower,
        bound_lower,
        bound_upper,
    })
}

/// Lower bound on the probability that a uniformly random embedding of
/// the graph is one-face, given that some one-face embedding exists:
/// `prod_v 2 / (deg(v) + 2)`.
pub fn one_face_lower_bound(graph: &UnderlyingGraph) -> BigRational {
    let mut p = BigRational::one();
    for d in graph.degrees() {
        p *= BigRational::new(BigInt::from(2), BigInt::from(d + 2));
    }
    p
}

/// Counts the one-face embeddings of a graph by enumerating all rotation
/// combinations (subject to [`Caps::check_embeddings`]).
pub fn count_one_face_embeddings(
    graph: &UnderlyingGraph,
    caps: &Caps,
    parallel: bool,
) -> Result<BigUint> {
    caps.check_embeddings(&graph.num_embeddings())?;
    let reference = graph.reference_embedding()?;
    let n = reference.n();
    let alpha: Vec<usize> = (1..=n).map(|x| reference.alpha().apply(x) - 1).collect();
    let vertex_labels: Vec<Vec<usize>> = graph
        .vertices()
        .iter()
        .map(|(_, labels)| labels.clone())
        .collect();

    // Branch over the first vertex's rotations; walk the rest per branch.
    let first: Vec<Vec<usize>> = RotationIter::new(&vertex_labels[0]).collect();
    let work = |rot0: Vec<usize>| -> u64 {
        let mut beta = vec![0usize; n];
        let write = |beta: &mut Vec<usize>, rot: &[usize]| {
            for i in 0..rot.len() {
                beta[rot[i] - 1] = rot[(i + 1) % rot.len()] - 1;
            }
        };
        write(&mut beta, &rot0);
        let mut iters: Vec<RotationIter> = vertex_labels[1..]
            .iter()
            .map(|l| RotationIter::new(l))
            .collect();
        for it in &iters {
            write(&mut beta, &it.current());
        }
        let mut seen = vec![0u32; n];
        let mut epoch = 0u32;
        let mut found = 0u64;
        loop {
            // One face iff the first cycle of gamma = alpha . beta
            // already covers everything.
            epoch += 1;
            let mut x = 0usize;
            let mut len = 0usize;
            while seen[x] != epoch {
                seen[x] = epoch;
                len += 1;
                x = alpha[beta[x]];
            }
            if len == n {
                found += 1;
            }
            // Mixed-radix advance, last vertex fastest.
            let mut i = iters.len();
            loop {
                if i == 0 {
                    return found;
                }
                i -= 1;
                let moved = iters[i].advance();
                write(&mut beta, &iters[i].current());
                if moved {
                    break;
                }
            }
        }
    };
    let total = map_merge(first, parallel, work, |a, b| a + b, 0u64);
    Ok(BigUint::from(total))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedding::parse_emb;

    fn tadpole_torus() -> Hypermap {
        parse_emb(
            "vertices:\nA: 1\nB: 2 6 4 8\nC: 3 7 5\nedges:\n1 2\n3 6\n4 7\n5 8\n",
        )
        .unwrap()
    }

    fn loops_interleaved() -> Hypermap {
        parse_emb("vertices:\nV: 1 3 2 4\nedges:\n1 2\n3 4\n").unwrap()
    }

    fn cube() -> Hypermap {
        parse_emb(
            "vertices:\n\
             A: 1 8 17\nB: 2 19 3\nC: 4 21 5\nD: 6 23 7\n\
             E: 9 18 16\nF: 20 10 11\nG: 12 13 22\nH: 14 15 24\n\
             edges:\n1 2\n3 4\n5 6\n7 8\n9 10\n11 12\n13 14\n15 16\n\
             17 18\n19 20\n21 22\n23 24\n",
        )
        .unwrap()
    }

    fn dist_map(pairs: &[(i64, u64)]) -> BTreeMap<i64, BigUint> {
        pairs
            .iter()
            .map(|&(dg, c)| (dg, BigUint::from(c)))
            .collect()
    }

    #[test]
    fn torus_tadpole_distribution_at_b() {
        let map = tadpole_torus();
        let caps = Caps::default();
        for method in [Method::Formula, Method::Oracle, Method::Both] {
            let d = local_distribution(&map, "B", method, &caps, true).unwrap();
            assert_eq!(*d.counts(), dist_map(&[(0, 3), (-1, 3)]), "{method}");
            assert_eq!(d.q(), 1);
            assert_eq!(d.degree(), 4);
            assert_eq!(d.base_genus(), 1);
            assert_eq!(
                *d.lambda(),
                CycleType::from_parts(vec![3, 1]).unwrap()
            );
        }
    }

    #[test]
    fn interleaved_loops_distribution() {
        let map = loops_interleaved();
        let d =
            local_distribution(&map, "V", Method::Both, &Caps::default(), true).unwrap();
        assert_eq!(*d.counts(), dist_map(&[(0, 2), (-1, 4)]));
        assert_eq!(
            *d.lambda(),
            CycleType::from_parts(vec![2, 2]).unwrap()
        );
    }

    #[test]
    fn planar_tadpole_distribution_raises_genus() {
        let map = tadpole_torus().set_rotation("C", &[3, 5, 7]).unwrap();
        assert_eq!(map.genus(), 0);
        let d = local_distribution(&map, "B", Method::Both, &Caps::default(), true).unwrap();
        assert_eq!(*d.counts(), dist_map(&[(0, 3), (1, 3)]));
        assert_eq!(d.q(), 3);
        // Degree-1 and degree-3 vertices work too.
        let a = local_distribution(&map, "A", Method::Both, &Caps::default(), true).unwrap();
        assert_eq!(*a.counts(), dist_map(&[(0, 1)]));
        let c = local_distribution(&map, "C", Method::Both, &Caps::default(), true).unwrap();
        assert_eq!(
            *c.counts(),
            dist_map(&[(0, 1), (1, 1)])
        );
    }

    #[test]
    fn oracle_respects_degree_cap() {
        let map = tadpole_torus();
        let caps = Caps {
            vertex_degree: 3,
            ..Caps::default()
        };
        assert!(matches!(
            local_distribution(&map, "B", Method::Oracle, &caps, true),
            Err(Error::CapExceeded { .. })
        ));
        // Formula path is unaffected by the degree cap.
        assert!(local_distribution(&map, "B", Method::Formula, &caps, true).is_ok());
    }

    #[test]
    fn parallel_and_sequential_oracle_agree() {
        let map = tadpole_torus();
        let caps = Caps::default();
        let par = local_distribution(&map, "B", Method::Oracle, &caps, true).unwrap();
        let seq = local_distribution(&map, "B", Method::Oracle, &caps, false).unwrap();
        assert_eq!(par.counts(), seq.counts());
    }

    #[test]
    fn ranges_match_distribution_support() {
        let map = tadpole_torus().set_rotation("C", &[3, 5, 7]).unwrap();
        let r = local_range(&map, "B").unwrap();
        assert_eq!((r.lo, r.hi), (0, 1));
        let d = local_distribution(&map, "B", Method::Both, &Caps::default(), true).unwrap();
        let keys: Vec<i64> = d.counts().keys().copied().collect();
        assert_eq!(keys, vec![0, 1]);

        let torus = tadpole_torus();
        let r = local_range(&torus, "B").unwrap();
        assert_eq!((r.lo, r.hi), (-1, 0));
    }

    #[test]
    fn cube_is_planar_with_face_disjoint_antipodes() {
        let map = cube();
        assert_eq!(map.num_faces(), 6);
        assert_eq!(map.genus(), 0);
        // Antipodal vertices share no face; adjacent ones do.
        let (lo, hi) = face_disjoint_range(&map, &["A".into(), "G".into()]).unwrap();
        assert_eq!((lo, hi), (0, 2));
        assert!(matches!(
            face_disjoint_range(&map, &["A".into(), "B".into()]),
            Err(Error::NotFaceDisjoint(_, _))
        ));
        assert!(matches!(
            face_disjoint_range(&map, &["A".into(), "A".into()]),
            Err(Error::InvalidArgument(_))
        ));
        assert_eq!(face_disjoint_range(&map, &[]).unwrap(), (0, 0));
        // The cube is an honest minimum-genus embedding.
        assert!(min_genus_check(&map).unwrap().holds);
        // ... and clearly not maximum genus: every vertex meets 3 faces.
        assert!(!max_genus_check(&map).unwrap().holds);
    }

    #[test]
    fn extremal_condition_reports() {
        let torus = tadpole_torus();
        let min = min_genus_check(&torus).unwrap();
        assert!(!min.holds);
        let b_row = min.rows.iter().find(|r| r.vertex == "B").unwrap();
        assert!(!b_row.holds);
        assert_eq!((b_row.ell, b_row.q, b_row.degree), (2, 1, 4));
        let max = max_genus_check(&torus).unwrap();
        assert!(max.holds);

        let planar = torus.set_rotation("C", &[3, 5, 7]).unwrap();
        let min = min_genus_check(&planar).unwrap();
        assert!(min.holds, "rows: {:?}", min.rows);
        let max = max_genus_check(&planar).unwrap();
        assert!(!max.holds);
    }

    #[test]
    fn one_face_probability_reports_exact_values() {
        let map = loops_interleaved();
        let r = one_face_probability(&map, "V").unwrap();
        assert_eq!(r.same_genus, BigUint::from(2u32));
        assert_eq!(
            r.probability,
            BigRational::new(BigInt::from(1), BigInt::from(3))
        );
        // Degree 4, no fixed points: universal bound 1/3 attained exactly.
        assert_eq!(r.probability, r.universal_lower);
        assert!(r.bound_lower <= r.probability && r.probability <= r.bound_upper);

        let planar = tadpole_torus().set_rotation("C", &[3, 5, 7]).unwrap();
        assert!(matches!(
            one_face_probability(&planar, "B"),
            Err(Error::NotOneFace(3))
        ));
    }

    #[test]
    fn one_face_counting_and_bound() {
        let caps = Caps::default();
        let g = tadpole_torus().underlying_graph();
        let count = count_one_face_embeddings(&g, &caps, true).unwrap();
        assert_eq!(count, BigUint::from(6u32));
        assert_eq!(
            count_one_face_embeddings(&g, &caps, false).unwrap(),
            count
        );
        // Probability 6/12 honors the product bound 4/45.
        let bound = one_face_lower_bound(&g);
        assert_eq!(
            bound,
            BigRational::new(BigInt::from(4), BigInt::from(45))
        );
        let prob = BigRational::new(BigInt::from(6), BigInt::from(12));
        assert!(prob >= bound);

        let loops = loops_interleaved().underlying_graph();
        assert_eq!(
            count_one_face_embeddings(&loops, &caps, true).unwrap(),
            BigUint::from(2u32)
        );
        // One vertex of degree >= 4: at least 2^1 one-face embeddings.
    }

    #[test]
    fn distribution_tsv_lists_genera() {
        let map = tadpole_torus();
        let d = local_distribution(&map, "B", Method::Formula, &Caps::default(), true).unwrap();
        assert_eq!(d.render_tsv(), "-1\t3\t0\n0\t3\t1\n");
    }

    #[test]
    fn method_parsing() {
        assert_eq!("formula".parse::<Method>().unwrap(), Method::Formula);
        assert_eq!("oracle".parse::<Method>().unwrap(), Method::Oracle);
        assert_eq!("both".parse::<Method>().unwrap(), Method::Both);
        assert!("fast".parse::<Method>().is_err());
    }
}
