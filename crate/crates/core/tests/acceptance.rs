//! Acceptance suite: one line per criterion, nonzero exit if any fails.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use dynamod_core::algebra::{discriminant, fmt_rational, rat};
use dynamod_core::curves::{check_point, curve_system, pi_degree, rational_fiber, PointStatus};
use dynamod_core::dynamics::{is_pcf, pcf_parameters, period_bound, preper_set, realize_bound};
use dynamod_core::dynatomic::{cycle_count, divisors, formal_count, mobius};
use dynamod_core::graph::{aut_brute, aut_order, classify, full_level_graph, Classification};
use dynamod_core::{default_cache, MultiPoly, PortraitGraph, Rational, Var};
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};

const TABLE_LIMIT: Duration = Duration::from_secs(60);
const IDENTITY_LIMIT: Duration = Duration::from_secs(120);
const AUT_LIMIT: Duration = Duration::from_secs(60);
const RANDOM_NON_PCF: usize = 100;
const SEED: u64 = 2024;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn fixture(name: &str) -> PortraitGraph {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name);
    std::fs::read_to_string(path).unwrap().parse().unwrap()
}

fn within(start: Instant, limit: Duration) -> Result<String, String> {
    let took = start.elapsed();
    ensure(took < limit, format!("took {took:.1?}, limit {limit:?}"))?;
    Ok(format!("{took:.1?}"))
}

fn table() -> Outcome {
    let start = Instant::now();
    let d = [2u64, 2, 6, 12, 30, 54, 126, 240, 504, 990];
    let r = [2u64, 1, 2, 3, 6, 9, 18, 30, 56, 99];
    for n in 1..=10u32 {
        let k = n as usize - 1;
        ensure(formal_count(n) == d[k] && cycle_count(n) == r[k], format!("D/R mismatch at N = {n}"))?;
        let mob: i64 = divisors(n as u64).iter().map(|&e| mobius(n as u64 / e).unwrap() as i64 * (1i64 << e)).sum();
        ensure(mob as u64 == d[k], format!("Mobius sum mismatch at N = {n}"))?;
        let phi = default_cache().dynatomic(n).map_err(|e| e.to_string())?;
        ensure(phi.degree(Var::x(1)) as u64 == d[k], format!("deg Phi_{n} = {}", phi.degree(Var::x(1))))?;
    }
    within(start, TABLE_LIMIT)
}

fn identities() -> Outcome {
    let start = Instant::now();
    let cache = default_cache();
    for n in 1..=8 {
        ensure(cache.verify_cycle_factorization(n).map_err(|e| e.to_string())?, format!("cycle identity N = {n}"))?;
    }
    for m in 1..=3 {
        for n in 1..=3 {
            let ok = cache.verify_preper_factorization(m, n).map_err(|e| e.to_string())?;
            ensure(ok, format!("preperiodic identity ({m},{n})"))?;
        }
    }
    within(start, IDENTITY_LIMIT)
}

fn substitution_route() -> Outcome {
    let cache = default_cache();
    for m in 0..=3 {
        for n in 1..=3 {
            let a = cache.gen_dynatomic(m, n).map_err(|e| e.to_string())?;
            let b = cache.gen_dynatomic_quotient(m, n).map_err(|e| e.to_string())?;
            ensure(a == b, format!("({m},{n}) differs"))?;
        }
    }
    Ok("16 pairs equal".into())
}

fn fixed_point_discriminant() -> Outcome {
    let phi1 = default_cache().dynatomic(1).map_err(|e| e.to_string())?;
    let disc = discriminant(&phi1, Var::x(1)).map_err(|e| e.to_string())?;
    ensure(disc == "1 - 4*t".parse::<MultiPoly>().unwrap(), format!("disc = {disc}"))?;
    let roots = disc.to_unipoly(Var::T, &Default::default()).unwrap().rational_roots().map_err(|e| e.to_string())?;
    ensure(roots == vec![rat(1, 4)], format!("roots {roots:?}"))?;
    Ok(format!("disc = {disc}, root 1/4"))
}

fn minus_29_16() -> Outcome {
    let c = rat(-29, 16);
    let set = preper_set(&c).map_err(|e| e.to_string())?;
    let got: Vec<Rational> = set.points.iter().map(|p| p.point.clone()).collect();
    let shown = got.iter().map(fmt_rational).collect::<Vec<_>>().join(", ");
    let want: Vec<Rational> = [-7, -5, -1, 1, 5, 7].iter().map(|&n| rat(n, 4)).collect();
    let cycles = set.graph.cycles();
    let fiber = rational_fiber(default_cache(), &fixture("three_cycle.g"), &c).map_err(|e| e.to_string())?;
    let mut problems = Vec::new();
    if got != want {
        problems.push(format!("expected 6 points {{+-1/4, +-5/4, +-7/4}}, found {} points {{{shown}}}", got.len()));
    }
    if classify(&set.graph) != Classification::StronglyAdmissible {
        problems.push(format!("graph is {}", classify(&set.graph)));
    }
    if cycles.len() != 1 || cycles[0].len() != 3 {
        problems.push(format!("{} cycles", cycles.len()));
    }
    if got.len() > 9 {
        problems.push("more than 9 points".into());
    }
    if fiber.len() != 3 {
        problems.push(format!("fiber has {} tuples", fiber.len()));
    }
    if problems.is_empty() {
        Ok(format!("points {{{shown}}}, one 3-cycle, fiber of 3 tuples"))
    } else {
        Err(problems.join("; "))
    }
}

fn diagonal_tuples() -> Outcome {
    let c = rat(-29, 16);
    let sys = curve_system(default_cache(), &fixture("fig2_two_3cycles.g")).map_err(|e| e.to_string())?;
    let cycle = [rat(-7, 4), rat(5, 4), rat(-1, 4)];
    let mut only_yg = 0;
    let mut on_u1 = 0;
    for a in &cycle {
        for b in &cycle {
            let point = vec![a.clone(), b.clone(), c.clone()];
            match check_point(&sys.system, &point).map_err(|e| e.to_string())?.status {
                PointStatus::OnYGOnly => only_yg += 1,
                PointStatus::OnU1 => on_u1 += 1,
                PointStatus::NotOnYG => {}
            }
        }
    }
    ensure(only_yg == 9 && on_u1 == 0, format!("{only_yg} OnYGOnly, {on_u1} OnU1"))?;
    Ok("9 OnYGOnly, 0 OnU1".into())
}

fn cycle_graph(n: u32) -> PortraitGraph {
    PortraitGraph::from_edges((0..n).flat_map(|k| {
        let next = format!("c{}", (k + 1) % n);
        [(format!("c{k}"), next.clone()), (format!("t{k}"), next)]
    }))
    .unwrap()
}

fn degree_tower() -> Outcome {
    let pi = |g: &PortraitGraph| pi_degree(g).map_err(|e| e.to_string());
    for n in 1..=6 {
        let got = pi(&cycle_graph(n))?;
        ensure(got == BigUint::from(formal_count(n)), format!("N = {n}: {got}"))?;
    }
    let level = pi(&full_level_graph(1, 3).unwrap())?;
    ensure(level == 18u32.into(), format!("full_level(1,3): {level}"))?;
    let two = pi(&fixture("two_fixed.g"))?;
    let one = pi(&"a -> a\nma -> a".parse().unwrap())?;
    ensure(two == 2u32.into() && one == 2u32.into(), format!("two fixed points: {two}, one: {one}"))?;
    Ok("D(N) for N <= 6, 18, 2".into())
}

fn automorphisms() -> Outcome {
    let start = Instant::now();
    let mut graphs: Vec<(String, PortraitGraph)> = Vec::new();
    for n in 1..=3 {
        graphs.push((format!("full_level(0,{n})"), full_level_graph(0, n).unwrap()));
    }
    for m in 1..=3 {
        graphs.push((format!("full_level({m},1)"), full_level_graph(m, 1).unwrap()));
    }
    for (name, g) in &graphs {
        let brute = aut_brute(g).map_err(|e| e.to_string())?;
        let formula = aut_order(g).map_err(|e| e.to_string())?;
        ensure(brute == formula, format!("{name}: brute {brute}, formula {formula}"))?;
    }
    let a = aut_order(&full_level_graph(0, 3).unwrap()).map_err(|e| e.to_string())?;
    ensure(a == 18u32.into(), format!("aut_order(full_level(0,3)) = {a}"))?;
    within(start, AUT_LIMIT)
}

fn pcf_dichotomy() -> Outcome {
    let found = pcf_parameters(default_cache(), 2, 2).map_err(|e| e.to_string())?;
    for c in [rat(0, 1), rat(-1, 1), rat(-2, 1)] {
        ensure(found.iter().any(|p| p.c == c), format!("{} missing", fmt_rational(&c)))?;
    }
    for p in &found {
        let class = classify(&preper_set(&p.c).map_err(|e| e.to_string())?.graph);
        ensure(class == Classification::NearlyAdmissible, format!("c = {}: {class}", fmt_rational(&p.c)))?;
    }
    let mut rng = rand::rngs::StdRng::seed_from_u64(SEED);
    let mut checked = 0;
    while checked < RANDOM_NON_PCF {
        let d = rng.gen_range(1..=12i64);
        let c = rat(rng.gen_range(-3 * d * d..=d * d), d * d);
        if is_pcf(&c).pcf {
            continue;
        }
        let class = classify(&preper_set(&c).map_err(|e| e.to_string())?.graph);
        ensure(class.is_admissible(), format!("c = {}: {class}", fmt_rational(&c)))?;
        checked += 1;
    }
    Ok(format!("{} PCF parameters, {RANDOM_NON_PCF} non-PCF samples admissible", found.len()))
}

fn fixture_classes() -> Outcome {
    let g1 = classify(&fixture("fig4_G1.g"));
    let g2 = classify(&fixture("fig5_G2.g"));
    ensure(g1 == Classification::NearlyAdmissible, format!("G_1: {g1}"))?;
    ensure(g2 == Classification::Admissible, format!("G_2: {g2}"))?;
    Ok("G_1 NearlyAdmissible, G_2 Admissible".into())
}

fn bounds() -> Outcome {
    let pb = period_bound(2, 3).map_err(|e| e.to_string())?.value;
    ensure(pb == 24u32.into(), format!("period_bound(2,3) = {pb}"))?;
    for d in [1u32, 2, 6] {
        let want = (BigUint::from(2u32).pow(2 * d) - 1u32) * (BigUint::from(3u32).pow(2 * d) - 1u32);
        let got = realize_bound(d as u64).map_err(|e| e.to_string())?;
        ensure(got == want, format!("realize_bound({d}) = {got}"))?;
    }
    Ok("24; 24, 1200, 2176246800".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("table of D(N), R(N)", table),
        ("identity suite", identities),
        ("substitution vs quotient", substitution_route),
        ("fixed-point discriminant", fixed_point_discriminant),
        ("c = -29/16 end to end", minus_29_16),
        ("diagonal tuples on two 3-cycles", diagonal_tuples),
        ("degree tower", degree_tower),
        ("automorphism oracle", automorphisms),
        ("PCF dichotomy", pcf_dichotomy),
        ("fixture classifications", fixture_classes),
        ("bounds", bounds),
    ];
    let mut failed = Vec::new();
    for (k, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", k + 1),
            Err(detail) => {
                println!("criterion {:>2} FAIL  {name}: {detail}", k + 1);
                failed.push(k + 1);
            }
        }
    }
    if failed.is_empty() {
        println!("all criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("failed criteria: {failed:?}");
        ExitCode::FAILURE
    }
}
