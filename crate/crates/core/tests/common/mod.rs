#![allow(dead_code)]

use vcsp_core::analysis::{conditionally_smooth, SmoothCert};
use vcsp_core::format::AnyLandscape;
use vcsp_core::generators::{
    haken_luby, random_instance, Filter, Matousek, MatousekSpec, RandomSpec, ScopePolicy,
};
use vcsp_core::oracle::FitnessTable;

pub struct Certified {
    pub name: String,
    pub f: AnyLandscape,
    pub cert: SmoothCert,
}

/// Small conditionally-smooth landscapes of several shapes, each with a
/// certificate checked against the brute-force oracle.
pub fn corpus(random: usize) -> Vec<Certified> {
    let mut out = Vec::new();
    for k in 0..random as u64 {
        let n = 6 + (k as usize % 5);
        let spec = RandomSpec::new(n, 0.3, 8, Filter::Oriented)
            .with_max_degree(6)
            .with_tie_free();
        let spec = if k % 2 == 0 { spec.with_tree() } else { spec };
        let (c, _) = random_instance(&spec, 1000 + k, 100_000).unwrap();
        let cert = conditionally_smooth(&c).unwrap();
        out.push(Certified {
            name: format!("random-{k}"),
            f: AnyLandscape::Vcsp(c),
            cert,
        });
    }
    let c = haken_luby(1).unwrap();
    let cert = conditionally_smooth(&c).unwrap();
    out.push(Certified {
        name: "haken-luby-1".into(),
        f: AnyLandscape::Vcsp(c),
        cert,
    });
    for (k, policy) in [
        ScopePolicy::FullPrefix,
        ScopePolicy::Random {
            seed: 3,
            density: 0.4,
        },
    ]
    .into_iter()
    .enumerate()
    {
        let m = Matousek::new(MatousekSpec::from_policy(7 + k, policy).unwrap()).unwrap();
        let cert = FitnessTable::build(&m, 16)
            .unwrap()
            .conditionally_smooth()
            .unwrap();
        out.push(Certified {
            name: format!("matousek-{k}"),
            f: AnyLandscape::Matousek(m),
            cert,
        });
    }
    for c in &out {
        let table = FitnessTable::build(&c.f, 16).unwrap();
        assert!(
            table.verify_smooth_cert(&c.cert).is_none(),
            "{} certificate rejected",
            c.name
        );
    }
    out
}
