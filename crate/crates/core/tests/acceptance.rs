//! Acceptance gate: one test per advertised guarantee, each printing a
//! PASS line (visible with `--nocapture`) and enforcing its time budget.
//!
//! The budgets are generous on purpose — they catch algorithmic
//! regressions (a factorial loop sneaking into a formula path), not
//! machine noise.

use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use fatgraph_core::caps::Caps;
use fatgraph_core::counting::{pk_recurrence, r_nu_closed_form};
use fatgraph_core::embedding::{parse_emb, Hypermap, MapKind};
use fatgraph_core::perm::{CycleType, Permutation};
use fatgraph_core::planeperm::{PlanePermutation, TwoLine};
use fatgraph_core::reembed::{
    count_one_face_embeddings, local_distribution, max_genus_check, min_genus_check,
    one_face_probability, Method,
};
use fatgraph_core::selftest;

/// Twelve-column reference pair: one face, with a seven-half-edge
/// vertex at {2,3,6,8,9,11,12}.
fn twelve_column_pair() -> PlanePermutation {
    let tops = vec![1, 3, 2, 5, 7, 4, 6, 9, 8, 10, 11, 12];
    let bottoms = vec![5, 8, 3, 4, 7, 10, 12, 2, 6, 1, 9, 11];
    let (p, _) = TwoLine::from_rows(vec![(tops, bottoms)])
        .unwrap()
        .to_plane_permutation()
        .unwrap();
    p
}

/// One-face, genus-one map on four edges: a pendant vertex A hanging off
/// B, and a triple edge between B and C.
const ONE_FACE_FOUR_EDGES: &str = "\
# one-face map on four edges
vertices:
A: 1
B: 2 6 4 8
C: 3 7 5
edges:
1 2
3 6
4 7
5 8
";

/// Bouquet of `loops` loops on a single vertex.
fn bouquet(loops: usize) -> Hypermap {
    let n = 2 * loops;
    let alpha: Vec<usize> = (1..=n)
        .map(|x| if x % 2 == 1 { x + 1 } else { x - 1 })
        .collect();
    Hypermap::from_rotation_system(
        vec![("V".into(), (1..=n).collect())],
        Permutation::from_images(alpha).unwrap(),
        MapKind::Map,
    )
    .unwrap()
}

/// Two interleaved loops on one vertex: the smallest one-face map of
/// genus one.
fn interleaved_loops() -> Hypermap {
    Hypermap::from_edges(vec![("V".into(), vec![1, 3, 2, 4])], &[(1, 2), (3, 4)]).unwrap()
}

#[test]
fn criterion_1_reference_pair_is_byte_exact() {
    let run = || {
        let p = twelve_column_pair();
        let nu = [2usize, 3, 6, 8, 9, 11, 12];
        let loc = p.localize(&nu).unwrap();

        // Localization: exact two-line array and local diagonal.
        assert_eq!(
            loc.two_line().render(),
            "[3] 2  6 9 8 11   12\n  8 3 12 2 6  9 [11]"
        );
        assert_eq!(loc.d_nu_external(), "(2 8)(3 6 11)(9 12)");

        // Rearranged local array (columns 1..6 sent to 3,4,5,1,2,6) and
        // its inflation: exact twelve-column result.
        let h = Permutation::from_images(vec![3, 4, 5, 1, 2, 6]).unwrap();
        let acted = loc.two_line().act(&h).unwrap();
        let row = &acted.cycles()[0];
        assert_eq!(row.tops(), &[3, 9, 8, 11, 2, 6, 12]);
        assert_eq!(row.bottoms(), &[12, 2, 6, 8, 3, 9, 11]);

        let inflated = p.inflate(&acted).unwrap();
        let tl = inflated.two_line();
        let row = &tl.cycles()[0];
        assert_eq!(row.tops(), &[1, 3, 9, 8, 10, 11, 2, 5, 7, 4, 6, 12]);
        assert_eq!(row.bottoms(), &[5, 12, 2, 6, 1, 8, 3, 4, 7, 10, 9, 11]);
    };
    run(); // warm up
    let t = Instant::now();
    run();
    let elapsed = t.elapsed();
    assert!(elapsed < Duration::from_millis(1), "took {elapsed:?}");
    println!("criterion 1: PASS — reference pair localizes and inflates byte-exactly ({elapsed:?})");
}

#[test]
fn criterion_2_parsed_map_is_one_face_genus_one() {
    let run = || {
        let map = parse_emb(ONE_FACE_FOUR_EDGES).unwrap();
        assert_eq!(map.num_faces(), 1);
        assert_eq!(map.genus(), 1);
        let diagonal = map.to_plane_permutation().diagonal();
        assert!(diagonal.is_fixed_point_free_involution());
    };
    run();
    let t = Instant::now();
    run();
    let elapsed = t.elapsed();
    assert!(elapsed < Duration::from_millis(1), "took {elapsed:?}");
    println!("criterion 2: PASS — parsed four-edge map has f = 1, g = 1, involution diagonal ({elapsed:?})");
}

#[test]
fn criterion_3_three_counting_methods_agree_through_n8() {
    let t = Instant::now();
    let stats = selftest::pk_triple_agreement(8, true).unwrap();
    let elapsed = t.elapsed();
    // Partitions of 1..=8: 1 + 2 + 3 + 5 + 7 + 11 + 15 + 22.
    assert_eq!(stats.instances, 66);
    assert!(elapsed < Duration::from_secs(60), "took {elapsed:?}");
    println!("criterion 3: PASS — oracle, recurrence, alternating sum agree on all 66 types ({elapsed:?})");
}

#[test]
fn criterion_4_genus_distribution_formula_matches_enumeration() {
    let t = Instant::now();
    let stats = selftest::reembed_sweep(5, true).unwrap();
    let elapsed = t.elapsed();
    // Every (embedding, vertex) pair over all connected maps with <= 5
    // edges, each checked against rotation enumeration and the predicted
    // support interval.
    assert_eq!(stats.instances, 8_670_593);
    assert!(elapsed < Duration::from_secs(300), "took {elapsed:?}");
    println!("criterion 4: PASS — formula = enumeration on 8,670,593 vertex reembeddings ({elapsed:?})");
}

#[test]
fn criterion_5_reversed_rotation_closed_forms() {
    let golden: [(usize, u64); 6] = [
        (4, 2),
        (5, 8),
        (6, 36),
        (7, 180),
        (8, 1104),
        (9, 8064),
    ];
    for (d, want) in golden {
        assert_eq!(
            r_nu_closed_form(d).unwrap(),
            BigUint::from(want),
            "degree {d}"
        );
    }
    // Cross-validate each closed form against oracle, recurrence, and
    // alternating sum; the degree-9 oracle walks 8! = 40320 rotations.
    let stats = selftest::closed_form_check(4..=8, true).unwrap();
    assert_eq!(stats.instances, 5);
    let t = Instant::now();
    let stats = selftest::closed_form_check(9..=9, true).unwrap();
    let elapsed = t.elapsed();
    assert_eq!(stats.instances, 1);
    assert!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    println!("criterion 5: PASS — closed forms 2, 8, 36, 180, 1104, 8064 confirmed by oracle ({elapsed:?} for degree 9)");
}

#[test]
fn criterion_6_one_face_probability_bounds() {
    let t = Instant::now();
    let stats = selftest::probability_sweep(4).unwrap();

    // The interleaved two-loop vertex attains the universal bound with
    // equality: probability exactly 1/3 = 2/(4 + 2).
    let report = one_face_probability(&interleaved_loops(), "V").unwrap();
    let third = BigRational::new(1.into(), 3.into());
    assert_eq!(report.probability, third);
    assert_eq!(report.universal_lower, third);
    let elapsed = t.elapsed();
    assert!(elapsed < Duration::from_secs(10), "took {elapsed:?}");
    println!(
        "criterion 6: PASS — bounds hold on {} one-face vertices; 1/3 attained exactly ({elapsed:?})",
        stats.instances
    );
}

#[test]
fn criterion_7_second_factorizations_and_embedding_counts() {
    let t = Instant::now();
    // Every even-permutation cycle type on 4..=6 symbols admits at least
    // two single-cycle completions.
    let mut types = 0;
    for n in 4..=6 {
        for lambda in CycleType::partitions_of(n) {
            if (n - lambda.num_parts()) % 2 != 0 {
                continue;
            }
            let p1 = pk_recurrence(&lambda).unwrap().get(1);
            assert!(p1 >= BigUint::from(2u32), "{lambda}: {p1}");
            types += 1;
        }
    }

    let caps = Caps::default();
    // The two-loop bouquet graph has exactly 2 = 2^1 one-face embeddings.
    let loops = interleaved_loops().underlying_graph();
    let count = count_one_face_embeddings(&loops, &caps, true).unwrap();
    assert_eq!(count, BigUint::from(2u32));

    // The four-edge example graph: 12 embeddings, at least 2 one-face.
    let graph = parse_emb(ONE_FACE_FOUR_EDGES).unwrap().underlying_graph();
    assert_eq!(graph.num_embeddings(), BigUint::from(12u32));
    let count = count_one_face_embeddings(&graph, &caps, true).unwrap();
    assert_eq!(count, BigUint::from(6u32));
    assert!(count >= BigUint::from(2u32));
    let elapsed = t.elapsed();
    assert!(elapsed < Duration::from_secs(10), "took {elapsed:?}");
    println!("criterion 7: PASS — {types} even types have p1 >= 2; one-face counts 2 of 6 and 6 of 12 ({elapsed:?})");
}

#[test]
fn criterion_8_genus_extremality_verdicts() {
    let run = || {
        // Genus-one embedding: the degree-4 vertex B has ell + q = 2 + 1,
        // not deg + 1 = 5, so the minimum-genus condition fails there.
        let torus = parse_emb(ONE_FACE_FOUR_EDGES).unwrap();
        let min = min_genus_check(&torus).unwrap();
        assert!(!min.holds);
        let b = min.rows.iter().find(|r| r.vertex == "B").unwrap();
        assert!(!b.holds);
        assert_eq!((b.degree, b.ell, b.q), (4, 2, 1));

        // Planar embedding of the same graph: passes at every vertex.
        let planar = torus.set_rotation("C", &[3, 5, 7]).unwrap();
        assert_eq!(planar.genus(), 0);
        let min = min_genus_check(&planar).unwrap();
        assert!(min.holds && min.rows.iter().all(|r| r.holds));

        // Planar two-loop bouquet: its vertex meets q = 3 faces, so the
        // maximum-genus condition fails.
        let nested = Hypermap::from_edges(
            vec![("V".into(), vec![1, 2, 3, 4])],
            &[(1, 2), (3, 4)],
        )
        .unwrap();
        let max = max_genus_check(&nested).unwrap();
        assert!(!max.holds);
        assert_eq!(max.rows[0].q, 3);
    };
    run();
    let t = Instant::now();
    run();
    let elapsed = t.elapsed();
    assert!(elapsed < Duration::from_millis(1), "took {elapsed:?}");
    println!("criterion 8: PASS — extremality verdicts exact on all three embeddings ({elapsed:?})");
}

#[test]
fn criterion_9_performance_budgets() {
    // Brute-force reembedding of a degree-10 vertex: 9! = 362880
    // rotations.
    let map = bouquet(5);
    let caps = Caps::default();
    let t = Instant::now();
    let dist = local_distribution(&map, "V", Method::Oracle, &caps, true).unwrap();
    let oracle_elapsed = t.elapsed();
    let total: u64 = dist.counts().values().map(|v| v.to_u64().unwrap()).sum();
    assert_eq!(total, 362_880);
    assert!(oracle_elapsed < Duration::from_secs(5), "took {oracle_elapsed:?}");

    // Quick self-test end to end.
    let t = Instant::now();
    let mut lines = Vec::new();
    selftest::run_all(false, true, |l| lines.push(l)).unwrap();
    let quick_elapsed = t.elapsed();
    assert_eq!(lines.len(), 4);
    assert!(quick_elapsed < Duration::from_secs(60), "took {quick_elapsed:?}");
    println!(
        "criterion 9: PASS — degree-10 oracle in {oracle_elapsed:?}, quick self-test in {quick_elapsed:?}"
    );
}
