//! Acceptance suite. Prints one line per criterion and exits non-zero if any
//! criterion fails. Set `ACCEPTANCE_STRETCH=1` to also run the embedding
//! check at radius 6.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use geonf::automata::{bounded_language_audit, corpus, pump_refute, verify_witness, AuditOutcome, PumpOptions};
use geonf::cli;
use geonf::embed::{check_totally_geodesic, EmbeddingMap};
use geonf::geodesy::{
    enumerate_ball, epsilon_audit, family_a_element, family_b_element, formula_grid,
    verify_star_characterization, BallOptions, GridBounds,
};
use geonf::presentation::VAPresentation;
use geonf::{presets, GroupElement, LetterId, VAGroup};

struct Line {
    id: &'static str,
    pass: bool,
    detail: String,
    counted: bool,
}

fn line(id: &'static str, pass: bool, detail: String) -> Line {
    Line {
        id,
        pass,
        detail,
        counted: true,
    }
}

fn secs(d: Duration) -> String {
    format!("{:.2}s", d.as_secs_f64())
}

fn criterion_1() -> Line {
    let start = Instant::now();
    let h = presets::compile_h();
    let g = presets::compile_g();
    let elapsed = start.elapsed();
    match (h, g) {
        (Ok(h), Ok(g)) => {
            let failures = h.invariant_failures().len() + g.invariant_failures().len();
            let pass = h.rank() == 5 && g.rank() == 10 && failures == 0 && elapsed < Duration::from_secs(1);
            line(
                "1",
                pass,
                format!(
                    "compile: rank(H)={} rank(G)={}, {failures} action-law/relation-kernel failures, {}",
                    h.rank(),
                    g.rank(),
                    secs(elapsed)
                ),
            )
        }
        (h, g) => line("1", false, format!("compile error: {:?} {:?}", h.err(), g.err())),
    }
}

fn criterion_2() -> Line {
    let start = Instant::now();
    let h = presets::h();
    let bounds = GridBounds {
        a_max: 4,
        b_max: 4,
        c_max: 4,
        d_max: 4,
        e_max: 5,
        f_max: 2,
    };
    let radius = bounds.required_radius();
    let t = match enumerate_ball(h, radius, BallOptions::default()) {
        Ok(t) => t,
        Err(e) => return line("2", false, format!("ball: {e}")),
    };
    // independent restatement of the two closed forms
    let mut mismatches = 0;
    for a in 0..=4 {
        for b in 0..=4 {
            for c in 1..=4 {
                let g = family_a_element(h, a, b, c).unwrap();
                if t.length(&g) != Ok(a + b + c + 2) {
                    mismatches += 1;
                }
            }
        }
    }
    for d in 0..=4 {
        for e in 1..=5 {
            for f in 0..=2 {
                let want = if e <= d { d + e + f + 2 } else { d + e + f + 4 };
                let g = family_b_element(h, d, e, f).unwrap();
                if t.length(&g) != Ok(want) {
                    mismatches += 1;
                }
            }
        }
    }
    let report = formula_grid(&t, bounds);
    let elapsed = start.elapsed();
    let ok = report.as_ref().is_ok_and(|r| r.passed());
    line(
        "2",
        ok && mismatches == 0 && elapsed < Duration::from_secs(300),
        format!(
            "formula grid: 100 family-A + 75 family-B cases, {mismatches} mismatches, ball radius {radius} ({} elements), {}",
            t.len(),
            secs(elapsed)
        ),
    )
}

fn criterion_3() -> Line {
    let t = enumerate_ball(presets::h(), 10, BallOptions::default()).unwrap();
    match epsilon_audit(&t) {
        Ok(r) => line(
            "3",
            r.passed(),
            format!(
                "epsilon audit radius 10: {} elements, {} violations",
                r.checked,
                r.violations.len()
            ),
        ),
        Err(e) => line("3", false, e.to_string()),
    }
}

fn criterion_4() -> Line {
    let start = Instant::now();
    let t = enumerate_ball(presets::h(), 14, BallOptions::default()).unwrap();
    match verify_star_characterization(&t, 4, 4, 2, 1_000_000) {
        Ok(r) => {
            let theorem = r.violations.iter().filter(|v| v.starts_with("theorem-violation")).count();
            line(
                "4",
                r.passed() && theorem == 0,
                format!(
                    "star characterization d,e<=4 f<=2 radius 14: {} cases, {} violations, {theorem} theorem violations, {}",
                    r.checked,
                    r.violations.len(),
                    secs(start.elapsed())
                ),
            )
        }
        Err(e) => line("4", false, e.to_string()),
    }
}

fn criterion_5() -> Line {
    let start = Instant::now();
    let h = presets::h();
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus/h");
    let dfas = match corpus::load_corpus(&dir, h) {
        Ok(d) => d,
        Err(e) => return line("5", false, e.to_string()),
    };
    let names: BTreeSet<&str> = dfas.iter().map(|(n, _)| n.as_str()).collect();
    let random = dfas
        .iter()
        .filter(|(n, d)| n.starts_with("random") && d.num_states() <= 4)
        .count();
    let required = ["accept_all", "xy_only", "star_pattern"];
    let has_required = required.iter().all(|n| names.contains(n));
    // pumping needs radius 2n+6 for the largest DFA
    let radius = dfas.iter().map(|(_, d)| 2 * d.num_states() as u32 + 6).max().unwrap_or(14).max(14);
    let t = enumerate_ball(h, radius, BallOptions::default()).unwrap();
    let mut variants: BTreeMap<&'static str, usize> = BTreeMap::new();
    let mut problems = Vec::new();
    let mut audit_passes = 0;
    for (name, dfa) in &dfas {
        if let Ok(AuditOutcome::Pass { .. }) = bounded_language_audit(dfa, &t, 4, 5_000_000) {
            audit_passes += 1;
        }
        match pump_refute(dfa, &t, PumpOptions::default()) {
            Ok(w) => {
                *variants.entry(w.variant()).or_default() += 1;
                match verify_witness(&w, dfa, &t, 20_000_000) {
                    Ok(v) if v.passed() => {}
                    other => problems.push(format!("{name}: verify {other:?}")),
                }
            }
            Err(e) => problems.push(format!("{name}: {e}")),
        }
    }
    let elapsed = start.elapsed();
    let pass = has_required && random >= 20 && problems.is_empty() && elapsed < Duration::from_secs(600);
    let counts: Vec<String> = variants.iter().map(|(k, v)| format!("{k}={v}")).collect();
    line(
        "5",
        pass,
        format!(
            "refutation corpus: {} DFAs ({random} random), ball radius {radius}, witnesses {}, {} verified, 0 certified, {audit_passes} pass the radius-4 audit, {}{}",
            dfas.len(),
            counts.join(" "),
            dfas.len() - problems.len(),
            secs(elapsed),
            problems.first().map(|p| format!("; first problem: {p}")).unwrap_or_default()
        ),
    )
}

fn criterion_6(radius: u32, id: &'static str) -> Vec<Line> {
    let start = Instant::now();
    let (h, g) = (presets::h(), presets::g());
    let map = EmbeddingMap::tau_to_s2(h, g).unwrap();
    let th = enumerate_ball(h, radius, BallOptions::default()).unwrap();
    let tg = enumerate_ball(g, radius, BallOptions::default()).unwrap();
    let c = match check_totally_geodesic(&map, &th, &tg, radius, 10_000_000) {
        Ok(c) => c,
        Err(e) => return vec![line(id, false, e.to_string())],
    };
    let elapsed = start.elapsed();
    let first = c
        .first_exception
        .as_ref()
        .map(|(x, w)| format!("{w} for {x}"))
        .unwrap_or_else(|| "none".into());
    vec![
        line(
            id,
            c.report.passed() && elapsed < Duration::from_secs(900),
            format!(
                "embedding radius {radius}: {} H elements isometric, {} G-geodesics pull back to H-geodesics (commuting t past s where needed), {}",
                c.report.checked,
                c.geodesics,
                secs(elapsed)
            ),
        ),
        Line {
            id: if radius == 5 { "6-literal" } else { "6-literal-stretch" },
            pass: c.literal_exceptions == 0,
            detail: format!(
                "literal τ=s² substitution: {} of {} G-geodesics are not substitutions (first: {first}); the claim is false as stated, see README",
                c.literal_exceptions, c.geodesics
            ),
            counted: false,
        },
    ]
}

/// Every word of weight at most `radius`, depth-first.
fn naive_words(group: &VAGroup, radius: u32) -> Vec<(Vec<LetterId>, u32)> {
    let mut out = Vec::new();
    let mut stack = vec![(Vec::new(), 0u32)];
    while let Some((w, wt)) = stack.pop() {
        for l in 0..group.letters().len() {
            let nw = wt + group.letter(l).weight;
            if nw <= radius {
                let mut v = w.clone();
                v.push(l);
                stack.push((v, nw));
            }
        }
        out.push((w, wt));
    }
    out
}

fn criterion_7() -> Line {
    let h = presets::h();
    let t = enumerate_ball(h, 6, BallOptions::default()).unwrap();
    let mut best: BTreeMap<GroupElement, (u32, BTreeSet<Vec<LetterId>>)> = BTreeMap::new();
    for (w, wt) in naive_words(h, 6) {
        let (g, _) = h.evaluate(&w);
        let entry = best.entry(g).or_insert((wt, BTreeSet::new()));
        if wt < entry.0 {
            *entry = (wt, BTreeSet::new());
        }
        if wt == entry.0 {
            entry.1.insert(w);
        }
    }
    let mut mismatches = 0;
    let mut compared = 0;
    for (g, len) in t.iter() {
        compared += 1;
        match best.get(&g) {
            Some((naive, words)) if *naive == len => {
                let geos: BTreeSet<Vec<LetterId>> = t.all_geodesics(&g, 1_000_000).unwrap().into_iter().collect();
                if &geos != words {
                    mismatches += 1;
                }
            }
            _ => mismatches += 1,
        }
    }
    let naive_in_ball = best.len();
    let growth = t.growth_coefficients();

    let free = VAPresentation::parse(
        "QUOTIENT 1\nnames 1\n1\n\nLATTICE_GENERATORS\na b\n\nALPHABET\na A a 1 1\nA a -a 1 1\nb B b 1 1\nB b -b 1 1\n",
    )
    .and_then(|p| VAGroup::compile(&p));
    let free_growth = free
        .as_ref()
        .ok()
        .and_then(|f| enumerate_ball(f, 2, BallOptions::default()).ok())
        .map(|t| t.growth_coefficients());
    let pass = mismatches == 0
        && naive_in_ball == t.len()
        && growth[..2] == [1, 5]
        && free_growth.as_deref() == Some(&[1, 4, 8][..]);
    line(
        "7",
        pass,
        format!(
            "oracles: {compared} elements with ℓ<=6 vs naive enumeration, {mismatches} mismatches; H growth starts {:?}; Z² growth {:?}",
            &growth[..2],
            free_growth
        ),
    )
}

fn criterion_8() -> Line {
    let args = ["geonf", "verify", "--format", "summary", "--seed", "11"];
    let a = cli::run(args);
    let b = cli::run(args);
    line(
        "8",
        a == b && a.code == 0 && !a.output.is_empty(),
        format!(
            "determinism: two verify runs, {} summary lines, byte-identical={}, exit {}",
            a.output.lines().count(),
            a.output == b.output,
            a.code
        ),
    )
}

fn main() -> ExitCode {
    let mut lines = vec![criterion_1(), criterion_2(), criterion_3(), criterion_4(), criterion_5()];
    lines.extend(criterion_6(5, "6"));
    if std::env::var("ACCEPTANCE_STRETCH").is_ok_and(|v| v == "1") {
        lines.extend(criterion_6(6, "6-stretch"));
    }
    lines.push(criterion_7());
    lines.push(criterion_8());
    let mut failed = 0;
    for l in &lines {
        let status = if l.pass { "PASS" } else { "FAIL" };
        let note = if l.counted { "" } else { " [informational]" };
        println!("ACCEPTANCE {} {status}{note} {}", l.id, l.detail);
        if l.counted && !l.pass {
            failed += 1;
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
