//! One line per acceptance criterion; exits non-zero if any fails.

use std::process::ExitCode;
use std::time::Instant;

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rx3_core::construct::{ACCEPT8, REMAINING_TEN, ROOKS4, TEN_CODES};
use rx3_core::search::*;
use rx3_core::*;

type Outcome = Result<String, String>;
type Criterion = (&'static str, Box<dyn Fn() -> Outcome>);

fn codes_over(k: Color) -> Vec<ColorCode> {
    (1..=k).flat_map(|a| (1..=k).map(move |b| ColorCode::new(a, b))).collect()
}

fn passes(k: Color, codes: &[ColorCode]) -> bool {
    verify_3rainbow(&BipartiteColoring::new(k, codes.to_vec()).unwrap()).passed()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn constructions() -> Outcome {
    for t in 1..=60 {
        let c = construct_coloring(t).map_err(|e| e.to_string())?;
        let k = rx3_value(t).unwrap();
        let report = verify_3rainbow(&c);
        ensure(report.passed(), || format!("t={t} fails at {}", report.failing_triple.unwrap()))?;
        ensure(colors_used(&c).len() == k as usize, || {
            format!("t={t} uses {} colors, expected {k}", colors_used(&c).len())
        })?;
    }
    Ok("t=1..60 all verify with exactly rx3(t) colors".into())
}

/// Every multiset of nine codes over four colors, checked without any pruning.
fn literal_nine_over_four() -> (u64, u64) {
    let mut total = 0;
    let mut accepted = 0;
    for m in codes_over(4).into_iter().combinations_with_replacement(9) {
        total += 1;
        if passes(4, &m) {
            accepted += 1;
        }
    }
    (total, accepted)
}

fn oracle_agreement(nine: (u64, u64)) -> Outcome {
    let opts = SearchOptions::default();
    let mut values = Vec::new();
    for t in 1..=9 {
        let out = brute_force_rx3(t, 5, &opts).map_err(|e| e.to_string())?;
        let expect = Rx3Search::Found(rx3_value(t).unwrap());
        ensure(out.result == expect, || format!("t={t}: search {:?}, formula {expect:?}", out.result))?;
        values.push(rx3_value(t).unwrap());
    }
    ensure(nine.0 == 1_307_504 && nine.1 == 0, || format!("literal 9-multisets over 4 colors: {nine:?}"))?;
    Ok(format!("rx3(1..=9) = {values:?}; all {} nine-code multisets over 4 colors fail", nine.0))
}

fn beta_values() -> Outcome {
    let opts = SearchOptions::default();
    let ambient: Vec<usize> = (1..=3)
        .map(|b| beta(b, 4, &opts).map(|o| o.result))
        .try_collect()
        .map_err(|e: Error| e.to_string())?;
    let alone: Vec<usize> = (1..=3)
        .map(|b| beta(b, b as Color, &opts).map(|o| o.result))
        .try_collect()
        .map_err(|e: Error| e.to_string())?;
    ensure(ambient == [1, 2, 4], || format!("beta over 4 colors: {ambient:?}"))?;
    Ok(format!("beta(1..=3) inside 4 colors = {ambient:?} (with no outside colors: {alone:?})"))
}

fn four_color_bound(nine: (u64, u64)) -> Outcome {
    let out = max_acceptable(4, false, 13, &SearchOptions::default()).map_err(|e| e.to_string())?;
    ensure(out.result.size == 8 && !out.result.reached_cap, || {
        format!("max over 4 colors: {:?}", out.result)
    })?;
    ensure(nine.1 == 0, || "an acceptable 9-multiset exists".into())?;
    ensure(passes(4, &ACCEPT8), || "ACCEPT8 fails".into())?;
    Ok("largest acceptable multiset over 4 colors has 8 codes (searched up to 13); ACCEPT8 verifies".into())
}

fn five_color_distinct_bound() -> Outcome {
    let codes = codes_over(5);
    let mut sets = 0u32;
    for s in codes.iter().copied().combinations(21) {
        sets += 1;
        ensure(!passes(5, &s), || format!("acceptable 21-set {s:?}"))?;
    }
    ensure(sets == 12_650, || format!("enumerated {sets} sets"))?;
    let twenty: Vec<ColorCode> = TEN_CODES.iter().chain(&REMAINING_TEN).copied().collect();
    ensure(passes(5, &twenty), || "the 20-code set fails".into())?;
    let out = max_acceptable(5, true, 21, &SearchOptions::default()).map_err(|e| e.to_string())?;
    ensure(out.result.size == 20, || format!("search max {}", out.result.size))?;
    Ok(format!("all {sets} distinct 21-code sets over 5 colors fail; the 20-code set verifies"))
}

fn rooks() -> Outcome {
    let r3 = max_isolated_rooks(3).map_err(|e| e.to_string())?.result;
    let r2 = max_isolated_rooks(2).map_err(|e| e.to_string())?.result;
    ensure((r2, r3) == (2, 4), || format!("n=2 -> {r2}, n=3 -> {r3}"))?;
    Ok("max isolated rooks: 2x2 -> 2, 3x3 -> 4".into())
}

fn agree_on(c: &BipartiteColoring) -> Result<(), String> {
    let graph = GenericColoredGraph::from_bipartite(c);
    for s in VertexTriple::all(c.t()) {
        let idx: Vec<usize> = s.members().iter().map(|v| v.index()).collect();
        let exact = has_rainbow_tree(c, &s).map_err(|e| e.to_string())?.is_some();
        let brute = generic_has_rainbow_tree(&graph, &idx).map_err(|e| e.to_string())?.is_some();
        ensure(exact == brute, || format!("{s} in {:?}: catalog {exact}, brute force {brute}", c.codes()))?;
    }
    Ok(())
}

fn verifier_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1000);
    for _ in 0..1000 {
        let t = rng.random_range(3..=6);
        let k = rng.random_range(2..=5);
        let codes =
            (0..t).map(|_| ColorCode::new(rng.random_range(1..=k), rng.random_range(1..=k))).collect();
        agree_on(&BipartiteColoring::new(k, codes).unwrap())?;
    }
    let mut exhaustive = 0;
    for k in 1..=3 {
        for codes in itertools::repeat_n(codes_over(k), 3).multi_cartesian_product() {
            agree_on(&BipartiteColoring::new(k, codes).unwrap())?;
            exhaustive += 1;
        }
    }
    Ok(format!("1000 random colorings and all {exhaustive} colorings with t=3, k<=3 agree on every triple"))
}

fn fast_path_soundness() -> Outcome {
    let mut fired = 0u64;
    for k in [4, 5] {
        for codes in itertools::repeat_n(codes_over(k), 3).multi_cartesian_product() {
            let c = BipartiteColoring::new(k, codes).unwrap();
            for s in VertexTriple::all(3) {
                if let Some(verdict) = lemma22_fast_check(&c, &s).unwrap() {
                    fired += 1;
                    let exact = has_rainbow_tree(&c, &s).unwrap().is_some();
                    ensure(exact == verdict, || {
                        format!("{s} in {:?}: fast {verdict}, exact {exact}", c.codes())
                    })?;
                }
            }
        }
    }
    Ok(format!("{fired} fast verdicts over all code triples with k=4,5; zero disagreements"))
}

fn explicit_artifacts() -> Outcome {
    ensure(passes(5, &TEN_CODES), || "ten codes fail".into())?;
    ensure(passes(5, &TEN_CODES[..9]), || "nine-code prefix fails".into())?;
    ensure(passes(3, &ROOKS4), || "four rooks fail".into())?;
    Ok("ten-code set (t=10), its 9-prefix, and the four-rook set (t=4, k=3) verify".into())
}

fn main() -> ExitCode {
    let start = Instant::now();
    let nine = literal_nine_over_four();
    let shared = start.elapsed();

    let criteria: Vec<Criterion> = vec![
        ("constructions for t=1..60", Box::new(constructions)),
        ("search agrees with the formula for t=1..9", Box::new(move || oracle_agreement(nine))),
        ("beta for |B|=1,2,3", Box::new(beta_values)),
        ("no acceptable 9-multiset over 4 colors", Box::new(move || four_color_bound(nine))),
        ("no acceptable distinct 21-set over 5 colors", Box::new(five_color_distinct_bound)),
        ("isolated rooks", Box::new(rooks)),
        ("catalog verifier matches brute force", Box::new(verifier_equivalence)),
        ("fast check is sound", Box::new(fast_path_soundness)),
        ("fixed code lists verify", Box::new(explicit_artifacts)),
    ];

    println!("literal enumeration of 9-multisets over 4 colors: {:.2?}", shared);
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = run();
        let elapsed = t.elapsed();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail} [{elapsed:.2?}]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why} [{elapsed:.2?}]", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
