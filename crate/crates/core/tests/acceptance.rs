//! Acceptance suite. Prints one PASS/FAIL line per criterion and fails if any criterion fails.

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use anc::algebra::{
    evaluate_factored, sum_evaluate, FactoredTerm, GenericSampler, LinearForm, Rational, Symbol,
};
use anc::cli::{self, grassmann_bundle_point, Command, OutputFormat, RunConfig};
use anc::closed_forms::{grassmann_bundle_coefficient, projective_space_coefficient};
use anc::git::{
    enumerate_lifts, linalg::identity, CheckStatus, DegreeLift, SignConvention, WeylAction,
};
use anc::ifunction::{
    assemble_coefficient, homogeneity_degree, mirror_hypothesis_report, summand,
    CoefficientRequest, MirrorStatus,
};
use anc::localization::{
    brion_pushforward, integrate, pole_free_check, restrict, sum_to_polynomial, LocalizedClass,
};
use anc::targets::{build, fixed_locus_descriptor, BuiltTarget, TargetSpec};

type Outcome = Result<String, String>;

fn target(name: &str, twisted: bool) -> BuiltTarget {
    let family = name.parse().unwrap();
    let spec = if twisted {
        TargetSpec::twisted(family)
    } else {
        TargetSpec::new(family)
    };
    build(&spec, SignConvention::Standard).unwrap()
}

fn lambdas(group: u32, count: usize) -> Vec<Symbol> {
    (0..count)
        .map(|a| Symbol::lambda(group, a as u32))
        .collect()
}

fn within(limit: Duration, start: Instant, detail: String) -> Outcome {
    let took = start.elapsed();
    if took > limit {
        Err(format!("{detail}; took {took:.1?}, limit {limit:?}"))
    } else {
        Ok(format!("{detail}; {took:.1?}"))
    }
}

fn abelian_reduction() -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    for n in 2..=5usize {
        let t = target(&format!("p{}", n - 1), false);
        let ls = lambdas(0, n);
        for seed in 0..3u64 {
            let mut sampler = GenericSampler::new(seed);
            for d in 0..=4i64 {
                for equivariant in [true, false] {
                    let req = CoefficientRequest::new(vec![d], false, equivariant);
                    let coeff = assemble_coefficient(&t.presentation, &t.cone, &req).unwrap();
                    for (chart, fp) in t.charts.iter().zip(&t.fixed_points) {
                        let terms = restrict(&coeff, chart).unwrap();
                        let s = sampler.draw(&ls);
                        let lv: Vec<Rational> =
                            ls.iter().map(|l| s.get(l).unwrap().clone()).collect();
                        let h = -lv[fp[0]].clone();
                        let expected =
                            projective_space_coefficient(n, d, &h, equivariant.then_some(&lv[..]))
                                .unwrap();
                        let found = sum_evaluate(&terms, &s).unwrap();
                        if found != expected {
                            return Err(format!(
                                "P^{} d={d} chart {}: {found} != {expected}",
                                n - 1,
                                chart.label
                            ));
                        }
                        checked += 1;
                    }
                }
            }
        }
    }
    within(
        Duration::from_secs(5),
        start,
        format!("{checked} chart values match"),
    )
}

fn grassmann_bundle_oracle() -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    for (name, dims, max_total) in [
        ("gb:1,4,1,2", (1, 4, 1, 2), 3),
        ("gb:2,7,1,3", (2, 7, 1, 3), 2),
    ] {
        let (k, n, l, m) = dims;
        if n <= l * m {
            return Err(format!("{name}: n > lm fails"));
        }
        let t = target(name, true);
        if t.fano_index.unwrap_or(0) < 2 {
            return Err(format!("{name}: index {:?}", t.fano_index));
        }
        let l1 = lambdas(0, n);
        let l2 = lambdas(1, m);
        let mut sampler = GenericSampler::new(17);
        for d in 0..=max_total {
            for e in 0..=(max_total - d) {
                let req = CoefficientRequest::new(vec![d, e], true, true);
                let coeff = assemble_coefficient(&t.presentation, &t.cone, &req).unwrap();
                for (chart, fp) in t.charts.iter().zip(&t.fixed_points) {
                    let terms = restrict(&coeff, chart).unwrap();
                    for _ in 0..5 {
                        let s = sampler.draw(l1.iter().chain(&l2));
                        let get =
                            |v: &[Symbol]| v.iter().map(|x| s.get(x).unwrap().clone()).collect();
                        let point = grassmann_bundle_point(dims, fp, get(&l1), get(&l2));
                        let expected =
                            grassmann_bundle_coefficient((k, n, l, m), d, e, true, &point).unwrap();
                        let found = sum_evaluate(&terms, &s).unwrap();
                        if found != expected {
                            return Err(format!("{name} ({d},{e}) chart {}", chart.label));
                        }
                        checked += 1;
                    }
                }
            }
        }
    }
    within(
        Duration::from_secs(60),
        start,
        format!("{checked} chart values match"),
    )
}

fn pole_cancellation() -> Outcome {
    let start = Instant::now();
    let t = target("gr:2,4", false);
    let mut sampler = GenericSampler::new(3);
    let (mut sums, mut controls) = (0, 0);
    for d in 1..=3 {
        let req = CoefficientRequest::new(vec![d], false, true);
        let coeff = assemble_coefficient(&t.presentation, &t.cone, &req).unwrap();
        for chart in &t.charts {
            let terms = restrict(&coeff, chart).unwrap();
            let report = pole_free_check(&terms, &mut sampler, 2).unwrap();
            if !report.is_pole_free() || report.forms_checked == 0 {
                return Err(format!("d={d} chart {}: {report:?}", chart.label));
            }
            sums += 1;
            for (lift, term) in &coeff.summands {
                let fixed = t
                    .presentation
                    .weyl()
                    .generators()
                    .iter()
                    .all(|w| WeylAction::act_on_lift(w, &lift.0) == lift.0);
                let single = chart.restrict_term(term).unwrap();
                let r = pole_free_check(&[single], &mut sampler, 1).unwrap();
                if fixed == r.is_pole_free() {
                    continue;
                }
                return Err(format!(
                    "summand {lift} at chart {} alone: {r:?}",
                    chart.label
                ));
            }
            controls += 1;
        }
    }
    within(
        Duration::from_secs(20),
        start,
        format!("{sums} sums pole-free, every unfixed summand singular on {controls} charts"),
    )
}

fn homogeneity() -> Outcome {
    let two = Rational::from_int(2);
    let mut checked = 0;
    let cases = [
        ("p1", false, 4),
        ("p2", false, 3),
        ("p3", false, 3),
        ("pp:1,2", false, 2),
        ("gr:2,4", false, 3),
        ("gr:2,5", false, 2),
        ("gb:1,4,1,2", false, 2),
        ("gb:1,4,1,2", true, 2),
        ("gb:2,5,1,2", true, 2),
        ("gb:2,7,1,3", true, 1),
    ];
    let mut sampler = GenericSampler::new(5);
    for (name, twisted, bound) in cases {
        let t = target(name, twisted);
        let p = &t.presentation;
        let bounds = vec![bound; p.class_basis().len()];
        for class in anc::ifunction::box_classes(&bounds) {
            let lifts = enumerate_lifts(p, &t.cone, &class).unwrap();
            let degrees: BTreeSet<i64> = lifts
                .iter()
                .map(|l| homogeneity_degree(p, l, twisted))
                .collect();
            if degrees.len() > 1 {
                return Err(format!("{name} {class:?}: degrees {degrees:?}"));
            }
            for lift in lifts {
                let req = CoefficientRequest::new(class.clone(), twisted, true);
                let term = summand(p, &lift, &req).unwrap();
                let d = homogeneity_degree(p, &lift, twisted);
                if term.degree() != d {
                    return Err(format!("{name} {lift}: degree {} vs {d}", term.degree()));
                }
                let symbols = term.symbols();
                let (_, (v, scaled)) = sampler
                    .with_retries(&symbols, |s| {
                        Ok((
                            evaluate_factored(&term, s)?,
                            evaluate_factored(&term, &s.scaled(&two))?.scale_variable(&two)?,
                        ))
                    })
                    .unwrap();
                if v.scale(&two.pow(d).unwrap()) != scaled {
                    return Err(format!("{name} {lift}: scaling fails"));
                }
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} summands scale by 2^D"))
}

fn weyl_equivariance() -> Outcome {
    let mut checked = 0;
    for (name, twisted) in [
        ("gr:2,4", false),
        ("gb:1,4,1,2", true),
        ("gb:2,5,1,2", true),
    ] {
        let t = target(name, twisted);
        let p = &t.presentation;
        let bounds = vec![3; p.class_basis().len()];
        for class in anc::ifunction::box_classes(&bounds) {
            if class.iter().sum::<i64>() > 3 {
                continue;
            }
            let req = CoefficientRequest::new(class.clone(), twisted, true);
            for lift in enumerate_lifts(p, &t.cone, &class).unwrap() {
                let base = summand(p, &lift, &req).unwrap();
                for w in p.weyl().generators() {
                    let image = DegreeLift(WeylAction::act_on_lift(w, &lift.0));
                    let moved = summand(p, &image, &req).unwrap();
                    if moved != base.act(w, p.chern_symbols()) {
                        return Err(format!("{name} lift {lift}"));
                    }
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{checked} generator images agree structurally"))
}

fn localization_sanity() -> Outcome {
    let mut out = Vec::new();
    for (name, chi) in [("p1", 2), ("p2", 3), ("gr:2,4", 6), ("gb:1,4,1,2", 8)] {
        let t = target(name, false);
        let mut sampler = GenericSampler::new(9);
        let one = integrate(&LocalizedClass::one(&t.charts), &t.charts, &mut sampler).unwrap();
        let euler = integrate(
            &LocalizedClass::tangent_euler(&t.charts),
            &t.charts,
            &mut sampler,
        )
        .unwrap();
        if one.as_constant() != Some(Rational::zero()) {
            return Err(format!("{name}: integral of 1 is {one}"));
        }
        if euler.as_constant() != Some(Rational::from_int(chi)) {
            return Err(format!("{name}: Euler integral {euler}, expected {chi}"));
        }
        out.push(format!("{name}:{chi}"));
    }
    Ok(format!(
        "integral of 1 is 0; Euler characteristics {}",
        out.join(" ")
    ))
}

fn brion_table() -> Outcome {
    let basis = [Symbol::chern(0, 0), Symbol::chern(0, 1)];
    let x = |i: usize| LinearForm::symbol(basis[i]);
    let reps = [identity(2), vec![vec![0, 1], vec![1, 0]]];
    let root = x(0).sub(&x(1));
    let table = [
        (0, "0"),
        (1, "1"),
        (2, "x1 + x2"),
        (3, "x1^2 + x1*x2 + x2^2"),
    ];
    for (p, expected) in table {
        let f = if p == 0 {
            FactoredTerm::one()
        } else {
            FactoredTerm::power(x(0), p).unwrap()
        };
        let terms = brion_pushforward(&f, std::slice::from_ref(&root), &reps, &basis).unwrap();
        let found = sum_to_polynomial(&terms, 10_000)
            .unwrap()
            .ok_or("not a polynomial")?
            .to_string();
        if found != expected {
            return Err(format!("x1^{p} gives {found}, expected {expected}"));
        }
    }
    Ok("1, x1, x1^2, x1^3 push forward to 0, 1, x1 + x2, x1^2 + x1*x2 + x2^2".into())
}

#[derive(serde::Deserialize)]
struct GoldenRow {
    target: String,
    lift: Vec<i64>,
    sorted_lift: Vec<i64>,
    permutation: Vec<usize>,
    pattern: Vec<String>,
    dim_v_beta: usize,
    dim_parabolic: usize,
    dim_fixed_locus: i64,
}

fn fixed_locus_golden() -> Outcome {
    let text = include_str!("data/fixed_locus_golden.json");
    let rows: Vec<GoldenRow> = serde_json::from_str(text).map_err(|e| e.to_string())?;
    let mut built: BTreeMap<String, BuiltTarget> = BTreeMap::new();
    for row in &rows {
        let t = built
            .entry(row.target.clone())
            .or_insert_with(|| target(&row.target, false));
        let d = fixed_locus_descriptor(t, &DegreeLift(row.lift.clone())).unwrap();
        let pattern: Vec<String> = d
            .pattern
            .as_ref()
            .ok_or("no pattern")?
            .iter()
            .map(|r| r.iter().map(|&s| if s { '*' } else { '0' }).collect())
            .collect();
        let here = format!("{} {:?}", row.target, row.lift);
        if d.sorted_lift.0 != row.sorted_lift || d.permutation != row.permutation {
            return Err(format!("{here}: sorting differs"));
        }
        if pattern != row.pattern {
            return Err(format!(
                "{here}: pattern {pattern:?}, expected {:?}",
                row.pattern
            ));
        }
        if (d.dim_v_beta, d.dim_parabolic, d.dim_fixed_locus)
            != (row.dim_v_beta, row.dim_parabolic, row.dim_fixed_locus)
        {
            return Err(format!("{here}: dimensions differ"));
        }
        let direct: BTreeSet<Vec<i64>> = t
            .presentation
            .roots()
            .iter()
            .filter(|a| d.sorted_lift.pair(a) >= 0)
            .cloned()
            .collect();
        if direct != d.parabolic_roots.iter().cloned().collect() {
            return Err(format!("{here}: parabolic roots differ"));
        }
    }
    Ok(format!("{} golden lifts match", rows.len()))
}

fn determinism() -> Outcome {
    for (name, twist, bound, format) in [
        ("gb:1,4,1,2", true, vec![1, 1], OutputFormat::Json),
        ("gr:2,4", false, vec![2], OutputFormat::Text),
        ("p3", false, vec![3], OutputFormat::Latex),
    ] {
        let mut cfg = RunConfig::target(Command::Compute, name);
        cfg.twist = twist.then(|| "anticanonical".to_string());
        cfg.degree_bound = bound;
        cfg.seed = Some(42);
        cfg.format = format;
        let runs: Vec<cli::Outcome> = (0..3).map(|_| cli::run(&cfg)).collect();
        if runs[0].code != 0 || runs.iter().any(|r| r != &runs[0]) {
            return Err(format!("{name}: outputs differ or failed"));
        }
    }
    let mut cfg = RunConfig::target(Command::Verify, "gb:1,4,1,2");
    cfg.twist = Some("anticanonical".into());
    cfg.seed = Some(42);
    cfg.convention_flip = true;
    cfg.format = OutputFormat::Text;
    let out = cli::run(&cfg);
    let ctx = cli::Context::load(
        cfg.input.as_ref().unwrap(),
        SignConvention::Flipped,
        Some("anticanonical"),
    )
    .unwrap();
    let report = cli::verify_context(&ctx, &[1, 1], true, 42).unwrap();
    let oracle = report
        .property("grassmann bundle closed form")
        .ok_or("no oracle property")?;
    if out.code != 1 || oracle.status != CheckStatus::Fail || oracle.counterexamples.is_empty() {
        return Err(format!(
            "flipped convention was not caught (exit {})",
            out.code
        ));
    }
    if !out.stdout.contains("seed: 42") || !out.stdout.contains("convention: flipped") {
        return Err("verify output lacks seed or convention".into());
    }
    Ok(format!(
        "3 identical runs per input; flipped convention fails on {} charts",
        oracle.counterexamples.len()
    ))
}

fn mirror_report() -> Outcome {
    let mut out = Vec::new();
    for (name, expected) in [
        ("gb:1,4,1,2", MirrorStatus::Satisfied),
        ("gb:2,7,1,3", MirrorStatus::Satisfied),
        ("p1", MirrorStatus::Satisfied),
        ("gb:1,3,1,2", MirrorStatus::NotSatisfied),
    ] {
        let t = target(name, false);
        let r = mirror_hypothesis_report(&t.presentation, &t.cone, Some(&t.anticanonical));
        if r.status != expected {
            return Err(format!("{name}: {:?} ({})", r.status, r.reasons.join("; ")));
        }
        if expected == MirrorStatus::NotSatisfied
            && !r
                .reasons
                .iter()
                .any(|s| s.contains("index condition fails"))
        {
            return Err(format!("{name}: reasons {:?}", r.reasons));
        }
        out.push(format!("{name}:{:?}", r.status));
    }
    Ok(out.join(" "))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("1 abelian reduction", abelian_reduction),
        ("2 Grassmann bundle closed form", grassmann_bundle_oracle),
        ("3 Weyl-sum pole cancellation", pole_cancellation),
        ("4 homogeneity", homogeneity),
        ("5 Weyl equivariance", weyl_equivariance),
        ("6 localization sanity", localization_sanity),
        ("7 Brion symmetrization", brion_table),
        ("8 fixed-locus descriptors", fixed_locus_golden),
        ("9 determinism", determinism),
        ("mirror hypotheses", mirror_report),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        let result = catch_unwind(AssertUnwindSafe(f))
            .unwrap_or_else(|e| Err(format!("panicked: {:?}", e.downcast_ref::<String>())));
        match result {
            Ok(detail) => println!("PASS criterion {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {name}: {detail}");
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
