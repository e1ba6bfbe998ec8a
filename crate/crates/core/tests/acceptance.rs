use std::io::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use silting::complex::ProjComplex;
use silting::decompose::{decompose, is_iso, iso_classes};
use silting::harness::{claims, fixture_modules, run_claims, Claim, RunOptions, Suite};
use silting::homology::{ext, min_resolution};
use silting::io::fixture;
use silting::linalg::Field;
use silting::module::Module;
use silting::verdict::Outcome;

fn run(selected: Vec<Claim>, field: Field) -> Result<usize, String> {
    let opts = RunOptions {
        field,
        ..RunOptions::default()
    };
    let records = run_claims(&selected, &opts);
    let bad: Vec<String> = records
        .iter()
        .filter(|r| r.outcome != Outcome::Holds)
        .map(|r| format!("{} {:?}", r.check_id, r.outcome))
        .collect();
    if bad.is_empty() {
        Ok(records.len())
    } else {
        Err(bad.join(", "))
    }
}

fn with_prefix(suite: Suite, prefix: &str, skip: &[&str]) -> Vec<Claim> {
    claims(suite)
        .into_iter()
        .filter(|c| c.id.starts_with(prefix) && !skip.contains(&c.id.as_str()))
        .collect()
}

fn suites(list: &[Suite], field: Field) -> Result<usize, String> {
    let mut n = 0;
    for s in list {
        n += run(claims(*s), field)?;
    }
    Ok(n)
}

fn criterion_1() -> Result<String, String> {
    let f2 = run(with_prefix(Suite::ExamplesAll, "eximp/", &[]), Field::Prime(2))?;
    // enumeration is only exhaustive over a finite field
    let q = run(
        with_prefix(Suite::ExamplesAll, "eximp/", &["eximp/six-indecomposables"]),
        Field::Rationals,
    )?;
    Ok(format!("{f2} claims over F_2, {q} over Q"))
}

fn criterion_7() -> Result<String, String> {
    let enumerated = run(with_prefix(Suite::ExamplesAll, "eximp/six-indecomposables", &[]), Field::Prime(2))?;
    let mut pool = Vec::new();
    for pack in ["eximp", "ejp1", "radsq3"] {
        let fx = fixture(pack, None).map_err(|e| e.to_string())?;
        let mut parts = Vec::new();
        for (_, m) in fixture_modules(&fx).map_err(|e| e.to_string())? {
            parts.extend(decompose(&m).map_err(|e| e.to_string())?);
        }
        pool.push(
            iso_classes(&parts)
                .map_err(|e| e.to_string())?
                .into_iter()
                .map(|(m, _)| m)
                .collect::<Vec<_>>(),
        );
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for round in 0..50 {
        let p = &pool[rng.gen_range(0..pool.len())];
        let parts: Vec<Module> = (0..rng.gen_range(1..4)).map(|_| p[rng.gen_range(0..p.len())].clone()).collect();
        let sum = Module::direct_sum(&parts).module;
        let found = decompose(&sum).map_err(|e| e.to_string())?;
        let want = iso_classes(&parts).map_err(|e| e.to_string())?;
        let got = iso_classes(&found).map_err(|e| e.to_string())?;
        let matched = want
            .iter()
            .all(|(m, k)| got.iter().any(|(g, j)| j == k && is_iso(g, m).unwrap_or(false)));
        if found.len() != parts.len() || want.len() != got.len() || !matched {
            return Err(format!("round trip {round} lost a summand"));
        }
        let res = min_resolution(&sum, 3);
        let c = ProjComplex::from_resolution(&res, 3);
        if res.check().is_err() || !res.is_minimal() || c.check().is_err() || !c.is_minimal() {
            return Err(format!("resolution of sum {round} is not a minimal complex"));
        }
        let alg = sum.algebra();
        for v in 0..alg.num_vertices() {
            let pv = Module::projective(alg, v);
            if pv.hom_dim(&sum) != sum.dims()[v] || ext(&pv, &sum, 1) != 0 {
                return Err(format!("hom from P({v}) disagrees with the dimension vector"));
            }
        }
    }
    Ok(format!("{enumerated} enumeration claim, 50 seeded round trips"))
}

#[test]
fn acceptance() {
    let f2 = Field::Prime(2);
    let results: Vec<(&str, Result<String, String>)> = vec![
        ("1 eximp over F_2 and Q", criterion_1()),
        (
            "2 ejp1 simple S(1)",
            run(with_prefix(Suite::ExamplesAll, "ejp1/", &[]), f2).map(|n| format!("{n} claims")),
        ),
        (
            "3 injectives of ejp1 are 4-tilting",
            run(with_prefix(Suite::ExamplesAll, "injectives/", &[]), f2).map(|n| format!("{n} claims")),
        ),
        (
            "4 radical square zero",
            run(with_prefix(Suite::ExamplesAll, "radsq3/", &[]), f2).map(|n| format!("{n} claims")),
        ),
        (
            "5 module route vs complex route",
            suites(&[Suite::Nair34], f2).map(|n| format!("{n} claims")),
        ),
        (
            "6 structural suites",
            suites(&[Suite::C1, Suite::Nair22, Suite::P4, Suite::Teo], f2).map(|n| format!("{n} claims")),
        ),
        ("7 oracles and invariants", criterion_7()),
    ];
    let mut err = std::io::stderr().lock();
    let mut all = true;
    for (name, r) in &results {
        let line = match r {
            Ok(d) => format!("PASS criterion {name}: {d}"),
            Err(e) => {
                all = false;
                format!("FAIL criterion {name}: {e}")
            }
        };
        writeln!(err, "{line}").unwrap();
    }
    assert!(all);
}
