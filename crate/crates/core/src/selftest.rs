//! Exhaustive cross-validation of every formula against brute force.
//!
//! Each stage pits an analytic result from the other modules against an
//! independent enumeration over a complete space of small instances:
//!
//! * [`pk_triple_agreement`] — count tables by oracle, by recurrence, and
//!   (for one cycle) by alternating sum, for every cycle type up to a
//!   given `n`;
//! * [`reembed_sweep`] — the local genus distribution formula against
//!   rotation enumeration for **every** vertex of **every** embedding of
//!   **every** connected graph with up to `max_edges` edges;
//! * [`closed_form_check`] — the reversal-rotation closed form against
//!   oracle, recurrence, and alternating sum;
//! * [`probability_sweep`] — one-face probabilities, their two-sided
//!   bounds, the guaranteed second one-face rotation at degree >= 4, and
//!   the `2^m` lower bound on one-face embedding counts per graph.
//!
//! The sweeps are the trust anchor of the crate: any change that breaks
//! a formula fails here before it can mislead a caller.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::ToPrimitive;

use crate::caps::Caps;
use crate::counting::{
    factorial, p1_stanley, pk_oracle, pk_recurrence, r_nu_closed_form,
};
use crate::embedding::{Hypermap, MapKind, RotationIter};
use crate::error::{Error, Result};
use crate::perm::{CycleType, Permutation};
use crate::planeperm::PlanePermutation;
use crate::reembed::{local_distribution, local_range, Method};

/// Outcome counters of a validation stage.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StageStats {
    /// Stage name for reporting.
    pub stage: String,
    /// Number of independent instances checked.
    pub instances: u64,
}

impl std::fmt::Display for StageStats {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {} instances agree", self.stage, self.instances)
    }
}

/// Checks, for every cycle type of every `n <= max_n`, that the oracle
/// table, the recurrence table, and (at one cycle) the alternating-sum
/// formula coincide, and that each table passes its invariants.
pub fn pk_triple_agreement(max_n: usize, parallel: bool) -> Result<StageStats> {
    let caps = Caps {
        pk_n: max_n,
        ..Caps::default()
    };
    let mut instances = 0u64;
    for n in 1..=max_n {
        for lambda in CycleType::partitions_of(n) {
            let oracle = pk_oracle(&lambda, &caps, parallel)?;
            oracle.validate()?;
            let recurrence = pk_recurrence(&lambda)?;
            if oracle.counts() != recurrence.counts() {
                return Err(Error::MethodDisagreement(format!(
                    "tables for {lambda}: oracle {:?} vs recurrence {:?}",
                    oracle.counts(),
                    recurrence.counts()
                )));
            }
            let direct = p1_stanley(&lambda)?;
            if direct != oracle.get(1) {
                return Err(Error::MethodDisagreement(format!(
                    "one-cycle count for {lambda}: alternating sum {direct} vs oracle {}",
                    oracle.get(1)
                )));
            }
            instances += 1;
        }
    }
    Ok(StageStats {
        stage: format!("count tables, all types up to n = {max_n}"),
        instances,
    })
}

/// The canonical pairing `(1 2)(3 4)...` on `2e` symbols.
fn canonical_pairing(e: usize) -> Permutation {
    let images: Vec<usize> = (1..=2 * e)
        .map(|x| if x % 2 == 1 { x + 1 } else { x - 1 })
        .collect();
    Permutation::from_images(images).expect("valid involution")
}

/// True when the orbits of `alpha` and `beta` together connect `1..=n`.
fn connected(alpha: &Permutation, beta: &Permutation, dsu: &mut Vec<usize>) -> bool {
    let n = alpha.size();
    dsu.clear();
    dsu.extend(0..n);
    fn find(dsu: &mut [usize], mut x: usize) -> usize {
        while dsu[x] != x {
            dsu[x] = dsu[dsu[x]];
            x = dsu[x];
        }
        x
    }
    let mut components = n;
    for x in 0..n {
        for y in [alpha.apply(x + 1) - 1, beta.apply(x + 1) - 1] {
            let (a, b) = (find(dsu, x), find(dsu, y));
            if a != b {
                dsu[a] = b;
                components -= 1;
            }
        }
    }
    components == 1
}

/// Calls `visit(n, alpha, beta)` for every connected map with `e` edges,
/// `1 <= e <= max_edges`: `alpha` is the canonical pairing on `n = 2e`
/// symbols and `beta` runs over all permutations of `[n]` whose orbits,
/// together with `alpha`, connect everything. Every embedding of every
/// connected graph with up to `max_edges` edges appears exactly once
/// (per half-edge labeling).
pub fn for_each_connected_map(
    max_edges: usize,
    mut visit: impl FnMut(usize, &Permutation, &Permutation) -> Result<()>,
) -> Result<()> {
    for e in 1..=max_edges {
        let n = 2 * e;
        let alpha = canonical_pairing(e);
        let mut dsu: Vec<usize> = Vec::with_capacity(n);
        for beta in Permutation::all(n) {
            if !connected(&alpha, &beta, &mut dsu) {
                continue;
            }
            visit(n, &alpha, &beta)?;
        }
    }
    Ok(())
}

/// Verifies the genus-distribution formula against rotation enumeration
/// for every `(embedding, vertex)` pair over all connected graphs with up
/// to `max_edges` edges.
///
/// Embeddings that differ only in the rotation of the vertex under test
/// share one enumeration: the family is processed once (when the vertex
/// carries its ascending rotation), every member's histogram then being a
/// shift of the family histogram by its own genus. For every member the
/// formula's table — looked up by that member's own localization — must
/// reproduce the shifted histogram, the face-support union of the
/// vertex's faces and the local diagonal type must be invariant across
/// the family, and the incident face count must keep its parity. A
/// deterministic sample of members is additionally driven through the
/// public [`local_distribution`] API in [`Method::Both`] mode, and their
/// reachable range is compared against [`local_range`].
pub fn reembed_sweep(max_edges: usize, parallel: bool) -> Result<StageStats> {
    let caps = Caps::default();
    let mut families = 0u64;
    let mut members = 0u64;
    let mut api_samples = 0u64;
    let mut validated: BTreeSet<CycleType> = BTreeSet::new();

    for_each_connected_map(max_edges, |n, alpha, beta| {
        let v_count = beta.num_cycles();
        let e_count = n / 2;
        let alpha_img: Vec<usize> = (1..=n).map(|x| alpha.apply(x) - 1).collect();
        for block in beta.cycles() {
            // Process each family once: at the ascending rotation.
            if !block.windows(2).all(|w| w[0] < w[1]) {
                continue;
            }
            check_family(
                n,
                alpha,
                beta,
                &alpha_img,
                &block,
                v_count,
                e_count,
                &caps,
                parallel,
                &mut families,
                &mut members,
                &mut api_samples,
                &mut validated,
            )?;
        }
        Ok(())
    })?;

    Ok(StageStats {
        stage: format!(
            "genus distributions, all vertices of all maps up to {max_edges} edges \
             ({families} families, {api_samples} full API samples)"
        ),
        instances: members,
    })
}

/// One family of the sweep: all rotations of `block` against a fixed
/// rest-of-map.
#[allow(clippy::too_many_arguments)]
fn check_family(
    n: usize,
    alpha: &Permutation,
    beta: &Permutation,
    alpha_img: &[usize],
    block: &[usize],
    v_count: usize,
    e_count: usize,
    caps: &Caps,
    parallel: bool,
    families: &mut u64,
    members: &mut u64,
    api_samples: &mut u64,
    validated: &mut BTreeSet<CycleType>,
) -> Result<()> {
    let d = block.len();
    let base_beta: Vec<usize> = beta.images().to_vec();
    let block_mask: u64 = block.iter().map(|&x| 1u64 << (x - 1)).sum();

    // Genus histogram of the family and (genus, q, lambda) per member.
    let mut hist: Vec<u64> = vec![0; n / 2 + 2];
    let mut recs: Vec<(usize, usize)> = Vec::with_capacity(members_of(d));
    let mut lambda0: Option<CycleType> = None;
    let mut union0: u64 = 0;
    let mut q_parity0 = 0usize;

    let mut seen = vec![0u32; n];
    let mut epoch = 0u32;

    for rotation in RotationIter::new(block) {
        // beta with the block's rotation replaced.
        let mut beta_img = base_beta.clone();
        for i in 0..d {
            beta_img[rotation[i] - 1] = rotation[(i + 1) % d];
        }
        let gamma_img: Vec<usize> = (0..n).map(|x| alpha_img[beta_img[x] - 1] + 1).collect();

        // Faces, incident-face count, and incident-support union.
        epoch += 1;
        let mut faces = 0usize;
        let mut q = 0usize;
        let mut union = 0u64;
        for x0 in 0..n {
            if seen[x0] != epoch {
                faces += 1;
                let mut mask = 0u64;
                let mut x = x0;
                while seen[x] != epoch {
                    seen[x] = epoch;
                    mask |= 1u64 << x;
                    x = gamma_img[x] - 1;
                }
                if mask & block_mask != 0 {
                    q += 1;
                    union |= mask;
                }
            }
        }
        let twice_genus = n + 2 - e_count - v_count - faces;
        debug_assert_eq!(twice_genus % 2, 0);
        let genus = twice_genus / 2;

        // The member's own localization: q and lambda from the real API.
        let member = PlanePermutation::new(
            Permutation::from_images(gamma_img)?,
            Permutation::from_images(beta_img)?,
        )?;
        let loc = member.localize(block)?;
        if loc.q() != q {
            return Err(Error::MethodDisagreement(format!(
                "incident-face count at {block:?}: walk {q} vs localization {}",
                loc.q()
            )));
        }
        let lambda = loc.lambda();

        // Invariants across the family (the diagonal never moves, the
        // union of incident supports never moves, q keeps its parity).
        match &lambda0 {
            None => {
                lambda0 = Some(lambda);
                union0 = union;
                q_parity0 = q % 2;
            }
            Some(l0) => {
                if lambda != *l0 {
                    return Err(Error::MethodDisagreement(format!(
                        "local diagonal type moved under reembedding: {l0} vs {lambda}"
                    )));
                }
                if union != union0 || q % 2 != q_parity0 {
                    return Err(Error::MethodDisagreement(format!(
                        "incident faces of {block:?} broke their invariants"
                    )));
                }
            }
        }

        hist[genus] += 1;
        recs.push((genus, q));
    }

    // Formula against the shifted histogram, for every member.
    let lambda = lambda0.expect("family is non-empty");
    let table = pk_recurrence(&lambda)?;
    if validated.insert(lambda.clone()) {
        table.validate()?;
    }
    let entries: Vec<(usize, u64)> = table
        .counts()
        .iter()
        .map(|(&k, v)| {
            v.to_u64()
                .map(|c| (k, c))
                .ok_or_else(|| Error::CapExceeded {
                    what: format!("count table entry for {lambda}"),
                    needed: v.to_string(),
                    cap: "u64".into(),
                })
        })
        .collect::<Result<_>>()?;
    let k_min = entries.first().expect("non-empty table").0 as i64;
    let k_max = entries.last().expect("non-empty table").0 as i64;
    let ell = lambda.num_parts() as i64;
    for &(genus, q) in &recs {
        for &(k, count) in &entries {
            // k faces at the vertex changes the genus by (q - k) / 2.
            let shifted = genus as i64 + (q as i64 - k as i64) / 2;
            let got = if shifted < 0 || shifted as usize >= hist.len() {
                0
            } else {
                hist[shifted as usize]
            };
            if got != count {
                return Err(Error::MethodDisagreement(format!(
                    "family at {block:?}: member with genus {genus}, q = {q}: \
                     formula says {count} rotations reach {k} incident faces, \
                     enumeration says {got}"
                )));
            }
        }
        // The reachable genus changes fill the closed interval
        // [-(d + 1 - ell - q) / 2, (q - 1) / 2] exactly.
        let q = q as i64;
        let (lo, hi) = ((q - k_max) / 2, (q - k_min) / 2);
        let (want_lo, want_hi) = (-((d as i64 + 1 - ell - q) / 2), (q - 1) / 2);
        if (lo, hi) != (want_lo, want_hi) {
            return Err(Error::MethodDisagreement(format!(
                "support [{lo}, {hi}] of the distribution at {block:?} is not \
                 the predicted interval [{want_lo}, {want_hi}]"
            )));
        }
    }
    *families += 1;
    *members += recs.len() as u64;

    // Deterministic sample through the public API.
    if *families % 97 == 1 {
        let rotations: Vec<(String, Vec<usize>)> = beta
            .cycles()
            .into_iter()
            .enumerate()
            .map(|(i, c)| (format!("V{}", i + 1), c))
            .collect();
        let name = rotations
            .iter()
            .find(|(_, c)| c[0] == block[0])
            .expect("block is a beta cycle")
            .0
            .clone();
        let map = Hypermap::from_rotation_system(rotations, alpha.clone(), MapKind::Map)?;
        let dist = local_distribution(&map, &name, Method::Both, caps, parallel)?;
        let range = local_range(&map, &name)?;
        let lo = *dist.counts().keys().next().expect("non-empty");
        let hi = *dist.counts().keys().last().expect("non-empty");
        if (range.lo, range.hi) != (lo, hi) {
            return Err(Error::MethodDisagreement(format!(
                "reachable range ({}, {}) vs distribution support ({lo}, {hi})",
                range.lo, range.hi
            )));
        }
        *api_samples += 1;
    }
    Ok(())
}

fn members_of(d: usize) -> usize {
    (1..d).product::<usize>().max(1)
}

/// Verifies the reversal-rotation closed form for each degree in the
/// range: the pair `(ascending cut, reversal rotation)` has local
/// diagonal `x -> x + 2` — one `d`-cycle for odd `d`, two `d/2`-cycles
/// for even `d` — and its one-face rotation count matches oracle,
/// recurrence, and alternating sum.
pub fn closed_form_check(
    degrees: std::ops::RangeInclusive<usize>,
    parallel: bool,
) -> Result<StageStats> {
    let mut instances = 0u64;
    for d in degrees.clone() {
        // s = (1 2 ... d), pi = (1, d, d-1, ..., 2).
        let s = Permutation::from_cycles(&[(1..=d).collect::<Vec<usize>>()], d)?;
        let mut reversal = vec![1];
        reversal.extend((2..=d).rev());
        let pi = Permutation::from_cycles(&[reversal], d)?;
        let p = PlanePermutation::new(s, pi)?;
        let lambda = p.diagonal().cycle_type();
        let want = if d % 2 == 1 {
            CycleType::from_parts(vec![d])?
        } else {
            CycleType::from_parts(vec![d / 2, d / 2])?
        };
        if lambda != want {
            return Err(Error::MethodDisagreement(format!(
                "reversal diagonal at degree {d}: {lambda}, want {want}"
            )));
        }

        let closed = r_nu_closed_form(d)?;
        let caps = Caps {
            pk_n: d,
            ..Caps::default()
        };
        let oracle = pk_oracle(&lambda, &caps, parallel)?.get(1);
        let recurrence = pk_recurrence(&lambda)?.get(1);
        let direct = p1_stanley(&lambda)?;
        if closed != oracle || closed != recurrence || closed != direct {
            return Err(Error::MethodDisagreement(format!(
                "one-face counts at degree {d}: closed {closed}, oracle {oracle}, \
                 recurrence {recurrence}, alternating sum {direct}"
            )));
        }
        instances += 1;
    }
    Ok(StageStats {
        stage: format!(
            "reversal closed form, degrees {}..={}",
            degrees.start(),
            degrees.end()
        ),
        instances,
    })
}

/// Sweeps every one-face embedding of every connected graph with up to
/// `max_edges` edges:
///
/// * per vertex — the one-face rotation count sits inside its two-sided
///   bounds, the probability is at least `2 / (d + 2)`, and a vertex of
///   degree >= 4 always has a second one-face rotation;
/// * per graph — if one-face embeddings exist at all, there are at least
///   `2^m` of them (`m` vertices of degree >= 4) and their fraction is at
///   least `prod_v 2 / (deg(v) + 2)`.
pub fn probability_sweep(max_edges: usize) -> Result<StageStats> {
    let mut one_face_pairs = 0u64;
    // Per underlying graph (= vertex partition): (one-face count, total).
    let mut by_graph: BTreeMap<Vec<Vec<usize>>, (u64, u64)> = BTreeMap::new();

    for_each_connected_map(max_edges, |_n, alpha, beta| {
        let gamma = alpha.compose(beta)?;
        let one_face = gamma.num_cycles() == 1;
        let key = beta.partition().blocks().to_vec();
        let entry = by_graph.entry(key).or_insert((0, 0));
        entry.1 += 1;
        if !one_face {
            return Ok(());
        }
        entry.0 += 1;

        let pp = PlanePermutation::new(gamma.clone(), beta.clone())?;
        for block in beta.cycles() {
            let d = block.len();
            let loc = pp.localize(&block)?;
            let lambda = loc.lambda();
            let r = pk_recurrence(&lambda)?
                .get(1)
                .to_u64()
                .expect("small count");
            let total = factorial(d - 1).to_u64().expect("small factorial");
            let a1 = lambda.multiplicity(1);

            // Universal bound: r / (d-1)! >= 2 / (d + 2).
            if (r as u128) * (d as u128 + 2) < 2 * total as u128 {
                return Err(Error::MethodDisagreement(format!(
                    "one-face probability below 2/(d+2) at {block:?} ({lambda})"
                )));
            }
            // Two-sided bounds.
            if (r as u128) * ((d - a1 + 2) as u128) < 2 * total as u128
                || (r as u128) * ((29 * (d - a1) + 19) as u128) > 58 * total as u128
            {
                return Err(Error::MethodDisagreement(format!(
                    "one-face count {r} escapes its bounds at {block:?} ({lambda})"
                )));
            }
            // Degree >= 4 guarantees a second one-face rotation.
            if d >= 4 && r < 2 {
                return Err(Error::MethodDisagreement(format!(
                    "only {r} one-face rotation(s) at degree {d} vertex {block:?}"
                )));
            }
            one_face_pairs += 1;
        }
        Ok(())
    })?;

    let mut graphs = 0u64;
    for (blocks, (count, total)) in &by_graph {
        if *count == 0 {
            continue;
        }
        graphs += 1;
        let m = blocks.iter().filter(|b| b.len() >= 4).count() as u32;
        if *count < 2u64.pow(m) {
            return Err(Error::MethodDisagreement(format!(
                "{count} one-face embeddings of {blocks:?}, expected at least 2^{m}"
            )));
        }
        // count / total >= prod 2 / (deg + 2).
        let mut lhs: u128 = *count as u128;
        let mut rhs: u128 = *total as u128;
        for b in blocks {
            lhs *= b.len() as u128 + 2;
            rhs *= 2;
        }
        if lhs < rhs {
            return Err(Error::MethodDisagreement(format!(
                "one-face fraction of {blocks:?} below its product bound"
            )));
        }
    }

    Ok(StageStats {
        stage: format!(
            "one-face bounds, all maps up to {max_edges} edges \
             ({graphs} graphs with one-face embeddings)"
        ),
        instances: one_face_pairs,
    })
}

/// Runs every stage and reports one line per stage through `out`.
/// `full` raises the sweep sizes from the quick defaults (n <= 7, 4
/// edges, degrees 4..=8) to the exhaustive ones (n <= 8, 5 edges,
/// degrees 4..=9).
pub fn run_all(full: bool, parallel: bool, mut out: impl FnMut(String)) -> Result<()> {
    let (max_n, max_edges, top_degree) = if full { (8, 5, 9) } else { (7, 4, 8) };
    let stages: Vec<StageStats> = vec![
        pk_triple_agreement(max_n, parallel)?,
        reembed_sweep(max_edges, parallel)?,
        closed_form_check(4..=top_degree, parallel)?,
        probability_sweep(max_edges)?,
    ];
    for stage in stages {
        out(format!("{stage}"));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quick_triple_agreement() {
        let stats = pk_triple_agreement(6, true).unwrap();
        // Partition counts: 1 + 2 + 3 + 5 + 7 + 11.
        assert_eq!(stats.instances, 29);
    }

    #[test]
    fn connected_map_iteration_counts() {
        // e = 1: both permutations of [2] give connected maps.
        let mut count = 0u64;
        for_each_connected_map(1, |n, alpha, beta| {
            assert_eq!(n, 2);
            assert!(connected(alpha, beta, &mut Vec::new()));
            count += 1;
            Ok(())
        })
        .unwrap();
        assert_eq!(count, 2);

        // e = 2: S_4 has 24 permutations; the disconnected ones split
        // {1,2} from {3,4}: 2 x 2 = 4 of them. 1 + 2 edges: 2 + 20.
        let mut count = 0u64;
        for_each_connected_map(2, |_, _, _| {
            count += 1;
            Ok(())
        })
        .unwrap();
        assert_eq!(count, 22);
    }

    #[test]
    fn sweep_two_edges() {
        let stats = reembed_sweep(2, true).unwrap();
        // Families x members: every (embedding, vertex) pair appears once.
        // Sum over connected beta of its cycle count: id (2 blocks) + ...
        assert!(stats.instances > 0);
    }

    #[test]
    fn closed_form_small_degrees() {
        let stats = closed_form_check(3..=6, true).unwrap();
        assert_eq!(stats.instances, 4);
    }

    #[test]
    fn probability_two_edges() {
        let stats = probability_sweep(2).unwrap();
        // One-face maps with 2 edges: the interleaved bouquet (2 of 6
        // rotations at the degree-4 vertex) and the two-vertex dumbbells.
        assert!(stats.instances > 0);
    }
}
