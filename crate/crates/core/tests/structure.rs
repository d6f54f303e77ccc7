mod common;

use vcsp_core::analysis::{classify, conditionally_smooth, ArcKind, ArcSet, ClassLabel};
use vcsp_core::format::{
    instance_from_json, instance_to_json, landscape_from_json, landscape_to_json, AnyLandscape,
};
use vcsp_core::generators::{
    haken_luby, random_instance, sample_instance, Filter, Matousek, MatousekSpec, RandomSpec,
    ScopePolicy,
};
use vcsp_core::oracle::{stitched_rse, FitnessTable, Stitch};
use vcsp_core::{Assignment, FitnessValue, Landscape, VcspInstance};

fn small_tie_free(count: u64, base: u64) -> Vec<VcspInstance> {
    (0..count)
        .filter_map(|k| {
            let spec = RandomSpec::new(4 + k as usize % 5, 0.4, 6, Filter::Any)
                .with_max_degree(6)
                .with_tie_free();
            random_instance(&spec, base + k, 10_000)
                .ok()
                .map(|(c, _)| c)
        })
        .collect()
}

#[test]
fn arcs_agree_with_the_oracle() {
    for c in small_tie_free(80, 500) {
        let table = FitnessTable::build(&c, 16).unwrap();
        let arcs = ArcSet::compute(&c, 1 << 16).unwrap();
        for e in &arcs.edges {
            assert_eq!(
                e.kind,
                table.sign_dependence(e.i, e.j).arc_kind(),
                "edge ({}, {})",
                e.i,
                e.j
            );
        }
        for i in 0..c.n() {
            for j in i + 1..c.n() {
                if !c.has_edge(i, j) {
                    assert_eq!(table.sign_dependence(i, j).arc_kind(), ArcKind::None);
                }
            }
        }
    }
}

#[test]
fn directed_triangle_free_instances_are_oriented() {
    let mut checked = 0;
    for k in 0..300u64 {
        let spec = RandomSpec::new(5 + k as usize % 5, 0.35, 6, Filter::Directed).with_tie_free();
        let spec = if k % 3 == 0 { spec.with_tree() } else { spec };
        let Ok((c, _)) = random_instance(&spec, 9000 + k, 10_000) else {
            continue;
        };
        if !c.is_triangle_free() {
            continue;
        }
        assert_eq!(classify(&c).unwrap().label, ClassLabel::Oriented);
        checked += 1;
    }
    assert!(checked >= 100, "only {checked} instances");
}

#[test]
fn a_tie_free_tree_can_still_be_bidirected() {
    let spec = RandomSpec::new(8, 0.0, 6, Filter::Any)
        .with_tree()
        .with_tie_free();
    let found = (0..200u64).any(|s| {
        let c = sample_instance(&spec, s);
        c.is_tie_free() && classify(&c).unwrap().label == ClassLabel::NotDirected
    });
    assert!(found);
}

#[test]
fn one_way_witnesses_stitch_into_an_rse() {
    let mut stitched = 0;
    for c in small_tie_free(120, 700) {
        let table = FitnessTable::build(&c, 16).unwrap();
        for (i, j) in c.edges().collect::<Vec<_>>() {
            match stitched_rse(&c, &table, i, j) {
                Stitch::PremiseFails => {}
                Stitch::Rse(w) => {
                    assert!(w.replay(&c));
                    stitched += 1;
                }
                Stitch::Failed(w) => panic!("stitch failed on ({i}, {j}) at {w}"),
            }
        }
    }
    assert!(stitched > 0);
}

#[test]
fn certified_landscapes_are_recursively_combed() {
    for c in common::corpus(10) {
        let table = FitnessTable::build(&c.f, 16).unwrap();
        assert!(table.semismooth_verdict().semismooth, "{}", c.name);
        assert!(table.is_recursively_combed(), "{}", c.name);
    }
}

#[test]
fn oriented_instances_are_conditionally_smooth() {
    for k in 0..60u64 {
        let spec = RandomSpec::new(5 + k as usize % 5, 0.3, 6, Filter::Oriented)
            .with_max_degree(6)
            .with_tree()
            .with_tie_free();
        let (c, _) = random_instance(&spec, 300 + k, 100_000).unwrap();
        let cert = conditionally_smooth(&c).expect("oriented instances are conditionally smooth");
        let table = FitnessTable::build(&c, 16).unwrap();
        assert_eq!(table.verify_smooth_cert(&cert), None);
        assert_eq!(table.local_peaks(), vec![cert.peak]);
    }
    // ties leave plateaus, and several peaks, even without bad arcs
    let spec = RandomSpec::new(7, 0.3, 6, Filter::Oriented)
        .with_max_degree(6)
        .with_tree();
    let found = (0..40u64).any(|s| {
        let (c, _) = random_instance(&spec, 300 + s, 100_000).unwrap();
        !c.is_tie_free()
            && conditionally_smooth(&c).is_none()
            && FitnessTable::build(&c, 16).unwrap().local_peaks().len() > 1
    });
    assert!(found);
}

#[test]
fn haken_luby_weights_shrink_along_arcs() {
    for g in 1..=3 {
        let c = haken_luby(g).unwrap();
        let cls = classify(&c).unwrap();
        assert_eq!(cls.label, ClassLabel::Oriented);
        let arcs = cls.arcs.arcs();
        for &(i, j) in &arcs {
            for &(j2, k) in &arcs {
                if j2 == j && k != i {
                    assert!(
                        c.binary(i, j).abs() > c.binary(j, k).abs(),
                        "g={g}: {i}→{j}→{k}"
                    );
                }
            }
        }
    }
}

#[test]
fn matousek_fitness_range_and_peak() {
    for (n, policy) in [
        (5, ScopePolicy::Singleton),
        (6, ScopePolicy::FullPrefix),
        (
            7,
            ScopePolicy::Random {
                seed: 1,
                density: 0.5,
            },
        ),
    ] {
        let m = Matousek::new(MatousekSpec::from_policy(n, policy).unwrap()).unwrap();
        let table = FitnessTable::build(&m, 16).unwrap();
        let values: Vec<i64> = (0..table.len())
            .map(|x| table.value(x).to_i64().unwrap())
            .collect();
        // parity vectors are a bijection, so every value in [−(2ⁿ − 1), 0] appears once
        let mut sorted = values.clone();
        sorted.sort();
        assert_eq!(sorted, (-(1i64 << n) + 1..=0).collect::<Vec<_>>());
        assert_eq!(table.local_peaks(), vec![Assignment::zeros(n)]);
        assert_eq!(m.fitness(&Assignment::zeros(n)), FitnessValue::zero());
    }
}

#[test]
fn generated_instances_round_trip_through_json() {
    for c in small_tie_free(20, 40)
        .into_iter()
        .chain([haken_luby(2).unwrap()])
    {
        let meta = serde_json::json!({"family": "test"});
        let (back, m) = instance_from_json(&instance_to_json(&c, Some(meta.clone()))).unwrap();
        assert_eq!(back, c);
        assert_eq!(m, Some(meta));
    }
    let m = Matousek::new(
        MatousekSpec::from_policy(
            6,
            ScopePolicy::Random {
                seed: 2,
                density: 0.5,
            },
        )
        .unwrap(),
    )
    .unwrap();
    let any = AnyLandscape::Matousek(m);
    let (back, _) = landscape_from_json(&landscape_to_json(&any, None)).unwrap();
    for code in 0..64 {
        let x = Assignment::from_code(6, code);
        assert_eq!(back.fitness(&x), any.fitness(&x));
    }
}
