//! Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
//! criterion fails. Runs sequentially so the timing bounds are meaningful.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ietwords::fz::{fz_check, search_orders, OrderPair};
use ietwords::iet::{
    check_regular, cylinders, mechanical_word, natural_coding_word, CodingConfig, IetSpec,
    RegularityWitness,
};
use ietwords::rauzy::{
    build_k_graph, is_subgraph_of_follower, strongly_connected, validate_evolution,
    EvolutionReport, Witness,
};
use ietwords::reconstruct::{reconstruct_iet, verify_roundtrip};
use ietwords::words::generators::{fibonacci, thue_morse, tribonacci};
use ietwords::words::{is_balanced, special_factors, FactorSet, Side};
use ietwords::{parse_scalar, ExactScalar, Word};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn q(s: &str) -> ExactScalar {
    parse_scalar(s).expect("literal")
}

fn golden() -> ExactScalar {
    q("(-1+1*sqrt(5))/2")
}

fn sturmian_word() -> Word {
    let a = golden();
    mechanical_word(&a, &ExactScalar::zero(), &a, 10_000).expect("mechanical word")
}

fn three_iet() -> IetSpec {
    let l = q("(-1+1*sqrt(2))/1");
    IetSpec::new(
        vec![l.clone(), l, q("(3-2*sqrt(2))/1")],
        &[3, 2, 1],
        vec![false; 3],
    )
    .expect("3-IET")
}

fn three_iet_word(n: usize) -> Word {
    natural_coding_word(&three_iet(), &['a', 'b', 'c'], &ExactScalar::zero(), n).expect("coding")
}

/// A 4-IET with its last interval flipped whose coding needs
/// orientation-reversing marks.
fn flipped_iet() -> (IetSpec, ExactScalar) {
    let lengths = [
        "(1139+136*sqrt(7))/4041",
        "(1318+278*sqrt(7))/4041",
        "(926-191*sqrt(7))/4041",
        "(658-223*sqrt(7))/4041",
    ];
    let t = IetSpec::new(
        lengths.iter().map(|s| q(s)).collect(),
        &[4, 2, 1, 3],
        vec![false, false, false, true],
    )
    .expect("flipped IET");
    (t, q("84/101"))
}

fn letters(k: usize) -> Vec<char> {
    ('a'..).take(k).collect()
}

/// No proper initial block of intervals is mapped onto itself.
fn irreducible(perm: &[usize]) -> bool {
    (1..perm.len()).all(|j| perm[..j].iter().any(|&p| p > j))
}

/// Random oriented IET with lengths in Q(sqrt d), passing check_regular.
fn random_regular_iet(rng: &mut ChaCha8Rng, k: usize) -> IetSpec {
    loop {
        let d = *[2i64, 3, 5, 7].choose(rng).expect("nonempty");
        let raw: Vec<ExactScalar> = (0..k)
            .map(|_| loop {
                let x = ExactScalar::make_quadratic(
                    rng.gen_range(1..30),
                    1,
                    rng.gen_range(-12..12),
                    1,
                    d,
                )
                .expect("scalar");
                if x.signum().is_gt() {
                    break x;
                }
            })
            .collect();
        let total = raw.iter().fold(ExactScalar::zero(), |a, x| a + x);
        let lengths = raw
            .iter()
            .map(|x| x.try_div(&total).expect("nonzero"))
            .collect();
        let mut perm: Vec<usize> = (1..=k).collect();
        while !irreducible(&perm) {
            perm.shuffle(rng);
        }
        let t = IetSpec::new(lengths, &perm, vec![false; k]).expect("valid IET");
        if check_regular(&t, 2000).expect("depth").is_clean() {
            return t;
        }
    }
}

fn random_corpus() -> Vec<IetSpec> {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    (0..10)
        .map(|i| random_regular_iet(&mut rng, 2 + i % 3))
        .collect()
}

fn validate(word: &Word, oriented: bool) -> (FactorSet, EvolutionReport) {
    let fs = FactorSet::new(word, 22).expect("factor index");
    let r = validate_evolution(&fs, 1, 20, oriented).expect("window");
    (fs, r)
}

fn timed(limit: Duration, start: Instant) -> Result<Duration, String> {
    let t = start.elapsed();
    if t < limit {
        Ok(t)
    } else {
        Err(format!("took {t:.2?}, limit {limit:?}"))
    }
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let fs = FactorSet::new(&sturmian_word(), 201).map_err(|e| e.to_string())?;
    for n in 1..=200 {
        let c = fs.complexity(n).map_err(|e| e.to_string())?;
        if c != n + 1 {
            return Err(format!("T({n}) = {c}"));
        }
    }
    let balance = is_balanced(&fs, 100, 'a').map_err(|e| e.to_string())?;
    if !balance.is_balanced() {
        return Err(format!("balance violation: {balance:?}"));
    }
    let t = timed(Duration::from_secs(5), start)?;
    Ok(format!("T(n)=n+1 for n<=200, balanced to 100, {t:.2?}"))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let report = check_regular(&three_iet(), 2000).map_err(|e| e.to_string())?;
    if !report.is_clean() {
        return Err(format!("collision {:?}", report.witness));
    }
    let fs = FactorSet::new(&three_iet_word(20_000), 60).map_err(|e| e.to_string())?;
    for n in 1..=60 {
        let c = fs.complexity(n).map_err(|e| e.to_string())?;
        if c != 2 * n + 1 {
            return Err(format!("T({n}) = {c}"));
        }
    }
    let t = timed(Duration::from_secs(30), start)?;
    Ok(format!("regular to 2000, T(n)=2n+1 for n<=60, {t:.2?}"))
}

fn accepted_within(r: &EvolutionReport, k: usize) -> bool {
    r.is_accepted() && r.k_start.is_some_and(|s| s <= k)
}

/// Largest `n < k` with a special factor of valence at least 3, checked
/// directly on the factor index: no l/r labeling exists at that order.
fn valence_certificate(fs: &FactorSet, k: usize) -> Option<String> {
    (1..k).rev().find_map(|n| {
        [Side::Left, Side::Right].into_iter().find_map(|side| {
            special_factors(fs, n, side)
                .expect("indexed")
                .into_iter()
                .find(|s| s.valence >= 3)
                .map(|s| format!("{} has valence {} at length {n}", s.factor, s.valence))
        })
    })
}

fn criterion_3() -> Outcome {
    let mut failures = Vec::new();
    for (name, word) in [
        ("sturmian", sturmian_word()),
        ("3-IET", three_iet_word(20_000)),
    ] {
        let (_, r) = validate(&word, true);
        if !accepted_within(&r, 3) {
            failures.push(format!("{name}: {}", r.machine_line()));
        }
    }
    let (t, x0) = flipped_iet();
    let word = natural_coding_word(&t, &letters(4), &x0, 20_000).map_err(|e| e.to_string())?;
    let (_, oriented) = validate(&word, true);
    let (_, free) = validate(&word, false);
    if oriented.is_accepted() || !accepted_within(&free, 3) {
        failures.push(format!(
            "flipped: oriented {} / non-oriented {}",
            oriented.machine_line(),
            free.machine_line()
        ));
    }
    let mut ks = Vec::new();
    for (i, t) in random_corpus().iter().enumerate() {
        let word = natural_coding_word(t, &letters(t.k()), &ExactScalar::zero(), 20_000)
            .map_err(|e| e.to_string())?;
        let (fs, r) = validate(&word, true);
        ks.push(r.k_start.map_or("none".to_string(), |k| k.to_string()));
        if !accepted_within(&r, 3) {
            let forced = r.k_start.and_then(|k| valence_certificate(&fs, k));
            failures.push(format!(
                "random #{i} (k={}, perm {:?}): {}{}",
                t.k(),
                t.permutation(),
                r.machine_line(),
                forced.map_or(String::new(), |c| format!(" [{c}]"))
            ));
        }
    }
    let summary = format!(
        "flipped 4-IET oriented={} non-oriented K={}; random K=[{}]",
        oriented.verdict,
        free.k_start.map_or("none".to_string(), |k| k.to_string()),
        ks.join(",")
    );
    if failures.is_empty() {
        Ok(format!("criteria 1-2 words accepted with K<=3; {summary}"))
    } else {
        Err(format!("{}; {summary}", failures.join("; ")))
    }
}

fn criterion_4() -> Outcome {
    let fs = FactorSet::new(&tribonacci(10_000), 22).map_err(|e| e.to_string())?;
    let r = validate_evolution(&fs, 1, 20, true).map_err(|e| e.to_string())?;
    let trib = match &r.witness {
        Some(w @ Witness::Valence { valence: 3, .. }) if !r.is_accepted() && w.verify(&fs) => {
            w.to_string()
        }
        _ => return Err(format!("tribonacci: {}", r.machine_line())),
    };
    let fs = FactorSet::new(&thue_morse(1 << 14), 22).map_err(|e| e.to_string())?;
    let r = validate_evolution(&fs, 1, 20, true).map_err(|e| e.to_string())?;
    let tm = match &r.witness {
        Some(w @ Witness::StrongBispecial { .. }) if !r.is_accepted() && w.verify(&fs) => {
            w.to_string()
        }
        _ => return Err(format!("thue-morse: {}", r.machine_line())),
    };
    Ok(format!("{trib}; {tm}; both re-verified"))
}

fn criterion_5() -> Outcome {
    for (name, word) in [
        ("sturmian", sturmian_word()),
        ("3-IET", three_iet_word(20_000)),
    ] {
        let fs = FactorSet::new(&word, 32).map_err(|e| e.to_string())?;
        let mut prev = None;
        for k in 1..=31 {
            let g = build_k_graph(&fs, k).map_err(|e| e.to_string())?;
            let (tk, tk1) = (fs.complexity(k).unwrap(), fs.complexity(k + 1).unwrap());
            if k <= 30
                && (g.vertices().len() != tk || g.arcs().len() != tk1 || !strongly_connected(&g))
            {
                return Err(format!(
                    "{name}: G_{k} has {} vertices, {} arcs",
                    g.vertices().len(),
                    g.arcs().len()
                ));
            }
            if let Some(p) = &prev {
                if !is_subgraph_of_follower(p, &g).map_err(|e| e.to_string())? {
                    return Err(format!(
                        "{name}: G_{k} is not inside the follower of G_{}",
                        k - 1
                    ));
                }
            }
            prev = Some(g);
        }
    }
    Ok("k=1..30: |V|=T(k), |E|=T(k+1), follower inclusion, strongly connected".into())
}

fn criterion_6() -> Outcome {
    let fs = FactorSet::new(&fibonacci(10_000), 22).map_err(|e| e.to_string())?;
    let swap = OrderPair::parse("ab", "ba").map_err(|e| e.to_string())?;
    let r = fz_check(&fs, &swap, 20).map_err(|e| e.to_string())?;
    if !r.passed() {
        return Err(format!("fibonacci: {:?}", r.first_failure()));
    }
    let tm = FactorSet::new(&thue_morse(1 << 14), 22).map_err(|e| e.to_string())?;
    if !search_orders(&tm, 20)
        .map_err(|e| e.to_string())?
        .is_empty()
    {
        return Err("thue-morse admits an order pair".into());
    }
    let mut corpus: Vec<(String, Word)> = vec![
        ("sturmian".into(), sturmian_word()),
        ("3-IET".into(), three_iet_word(20_000)),
    ];
    for (i, t) in random_corpus().iter().enumerate() {
        let word = natural_coding_word(t, &letters(t.k()), &ExactScalar::zero(), 20_000)
            .map_err(|e| e.to_string())?;
        corpus.push((format!("random #{i}"), word));
    }
    let (t, x0) = flipped_iet();
    corpus.push((
        "flipped".into(),
        natural_coding_word(&t, &letters(4), &x0, 20_000).map_err(|e| e.to_string())?,
    ));
    let mut agree = 0;
    for (name, word) in &corpus {
        let (fs, r) = validate(word, true);
        let found = search_orders(&fs, 20).map_err(|e| e.to_string())?;
        if found.is_empty() == r.is_accepted() {
            return Err(format!(
                "{name}: {} order pairs, validator {}",
                found.len(),
                r.machine_line()
            ));
        }
        agree += 1;
    }
    Ok(format!(
        "fibonacci passes with (ab,ba), thue-morse has no pair, {agree}/{} corpus words agree",
        corpus.len()
    ))
}

fn criterion_7() -> Outcome {
    let fib = fibonacci(10_000);
    let (_, r) = validate(&fib, true);
    let c = reconstruct_iet(&fib, &r, 6).map_err(|e| e.to_string())?;
    if c.spec.k() != 2 {
        return Err(format!("fibonacci gave a {}-IET", c.spec.k()));
    }
    let l2 = c.spec.lengths()[1].to_f64();
    if (l2 - 0.6180).abs() >= 0.01 {
        return Err(format!("lambda_2 = {l2}"));
    }
    let rt = verify_roundtrip(&fib, &c.spec, &c.letters, 500).map_err(|e| e.to_string())?;
    if rt.match_length < 400 {
        return Err(format!("roundtrip {} of 500", rt.match_length));
    }
    let word = three_iet_word(20_000);
    let (_, r) = validate(&word, true);
    let c3 = reconstruct_iet(&word, &r, 6).map_err(|e| e.to_string())?;
    let truth: BTreeMap<char, f64> = letters(3)
        .into_iter()
        .zip(three_iet().lengths().iter().map(|l| l.to_f64()))
        .collect();
    let mut worst: f64 = 0.0;
    for (c, l) in c3.letters.iter().zip(c3.spec.lengths()) {
        worst = worst.max((l.to_f64() - truth[c]).abs());
    }
    let residual = ExactScalar::from_rational(c3.residual.clone()).to_f64();
    if worst >= 0.02 || residual >= 0.05 {
        return Err(format!(
            "3-IET length error {worst:.4}, residual {residual:.4}"
        ));
    }
    Ok(format!(
        "lambda_2={l2:.4}, roundtrip {}/500; 3-IET max length error {worst:.4}, residual {residual:.5}",
        rt.match_length
    ))
}

/// Random rational or quadratic point in `[0, 1)`.
fn random_point(rng: &mut ChaCha8Rng, d: i64) -> ExactScalar {
    loop {
        let x = if rng.gen_bool(0.5) {
            ExactScalar::ratio(rng.gen_range(0..997), 997).expect("ratio")
        } else {
            ExactScalar::make_quadratic(rng.gen_range(-50..50), 97, rng.gen_range(-30..30), 97, d)
                .expect("scalar")
        };
        if x.signum().is_ge() && x < ExactScalar::one() {
            return x;
        }
    }
}

fn criterion_8() -> Outcome {
    // no float types outside the display helper of the scalar type
    let src = concat!(env!("CARGO_MANIFEST_DIR"), "/src");
    let mut stack = vec![std::path::PathBuf::from(src)];
    while let Some(p) = stack.pop() {
        if p.is_dir() {
            stack.extend(
                std::fs::read_dir(&p)
                    .map_err(|e| e.to_string())?
                    .map(|e| e.expect("entry").path()),
            );
            continue;
        }
        let text = std::fs::read_to_string(&p).map_err(|e| e.to_string())?;
        let body = text.split("#[cfg(test)]").next().unwrap_or("");
        let floats = body
            .lines()
            .filter(|l| l.contains("f64") || l.contains("f32"))
            .count();
        let allowed = if p.ends_with("numerics/scalar.rs") {
            4
        } else {
            0
        };
        if floats > allowed {
            return Err(format!("{} float mentions in {}", floats, p.display()));
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let (flipped, _) = flipped_iet();
    let specs = [three_iet(), flipped];
    let mut checked = 0;
    for t in &specs {
        let d = t.radicand() as i64;
        let cfg = CodingConfig::natural(t, &letters(t.k())).map_err(|e| e.to_string())?;
        let cyl = cylinders(t, &cfg, 6).map_err(|e| e.to_string())?;
        let total = cyl
            .iter()
            .fold(ExactScalar::zero(), |a, (_, s)| a + s.measure());
        if total != ExactScalar::one() {
            return Err(format!("cylinder measures sum to {total}"));
        }
        for _ in 0..500 {
            let x = random_point(&mut rng, d);
            let y = t.apply(&x).map_err(|e| e.to_string())?;
            if t.apply_inverse(&y).map_err(|e| e.to_string())? != x
                || t.apply(&t.apply_inverse(&x).unwrap()).unwrap() != x
            {
                return Err(format!("bijectivity fails at {x}"));
            }
            let code = natural_coding_word(t, &letters(t.k()), &x, 6)
                .map_err(|e| e.to_string())?
                .to_string();
            let hits: Vec<&String> = cyl
                .iter()
                .filter(|(_, s)| s.contains(&x))
                .map(|(w, _)| w)
                .collect();
            if hits != [&code] {
                return Err(format!("{x} lies in cylinders {hits:?}, codes {code}"));
            }
            checked += 1;
        }
    }
    // a collision is an exact equality of orbit points
    let rot = IetSpec::new(vec![q("2/5"), q("3/5")], &[2, 1], vec![false, false])
        .map_err(|e| e.to_string())?;
    match check_regular(&rot, 50).map_err(|e| e.to_string())?.witness {
        Some(RegularityWitness::Forward { i, n, j }) => {
            let orbit = rot
                .orbit(&rot.endpoints()[i - 1], n + 1)
                .map_err(|e| e.to_string())?;
            if orbit[n] != rot.endpoints()[j - 1] {
                return Err("collision witness does not replay".into());
            }
        }
        other => return Err(format!("rational rotation: {other:?}")),
    }
    Ok(format!("no floats in decision code; {checked} random exact points: bijective, one cylinder each, exact collision replay"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("sturmian complexity", criterion_1),
        ("IET complexity law", criterion_2),
        ("validator necessity", criterion_3),
        ("rejection witnesses", criterion_4),
        ("graph invariants", criterion_5),
        ("order-pair cross-check", criterion_6),
        ("reconstruction", criterion_7),
        ("exactness", criterion_8),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {}: PASS {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {why}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
