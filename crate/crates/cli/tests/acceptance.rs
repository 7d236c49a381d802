//! Acceptance criteria 1 to 10: one line per criterion with its runtime.
//! Exits nonzero if any criterion fails.

use std::process::{Command, ExitCode};
use std::sync::Arc;
use std::time::{Duration, Instant};

use orbichar_core::complex::{builtin_equivariant, equivariant_product, standard_suite, EquivariantComplex, RegularEquivariantComplex};
use orbichar_core::hodge::{builtin_hodge_dataset, HodgePolynomial};
use orbichar_core::rational::{fmt_q, q_int};
use orbichar_core::report::{verify_exp, verify_hodge, verify_jcount, verify_macdonald, verify_main};
use orbichar_core::sectors::{chi_gamma_es, iteration_check};
use orbichar_core::series::{lhs_wreath_series, subgroup_count, Route, WreathKind};
use orbichar_core::wreath::classify_conjugacy_by_type;
use orbichar_core::{FiniteGroup, Limits, Presentation, Q};

struct Outcome {
    passed: bool,
    detail: String,
}

fn ok(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome { passed, detail: detail.into() }
}

fn ratio(num: i64, den: usize) -> Q {
    Q::new(num.into(), (den as i64).into())
}

fn alternating(f: &[usize]) -> i64 {
    f.iter().enumerate().map(|(d, &c)| if d % 2 == 0 { c as i64 } else { -(c as i64) }).sum()
}

/// `χ` of the part of `X` fixed pointwise by all of `set`.
fn fixed_euler(x: &EquivariantComplex, set: &[usize]) -> i64 {
    let c = x.complex();
    let counts: Vec<usize> = (0..c.dim().map_or(0, |d| d + 1))
        .map(|d| c.simplices(d).iter().filter(|s| s.iter().all(|&v| set.iter().all(|&g| x.vertex_action(g)[v] == v))).count())
        .collect();
    alternating(&counts)
}

/// `(1/|G|) Σ χ(X^{⟨g₁..g_k⟩})` over pairwise commuting `k`-tuples.
fn commuting_average(x: &RegularEquivariantComplex, k: usize) -> Q {
    let group = x.group().parent().clone();
    let elements = x.group().elements().to_vec();
    let mut tuples: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..k {
        tuples = tuples
            .into_iter()
            .flat_map(|t| {
                elements
                    .iter()
                    .filter(|&&g| t.iter().all(|&h| group.commute(g, h)))
                    .map(|&g| {
                        let mut t = t.clone();
                        t.push(g);
                        t
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
    }
    let total: i64 = tuples.iter().map(|t| fixed_euler(x.equivariant(), t)).sum();
    ratio(total, elements.len())
}

/// Coefficients of `Π_{r≥1} (1 − q^r)^{−c}` by counting `c`-colored partitions.
fn colored_partitions(c: usize, order: usize) -> Vec<i64> {
    let mut p = vec![0i64; order + 1];
    p[0] = 1;
    for _ in 0..c {
        for k in 1..=order {
            for i in k..=order {
                p[i] += p[i - k];
            }
        }
    }
    p
}

fn criterion_1(limits: &Limits) -> Outcome {
    let suite = standard_suite();
    let mut bad = Vec::new();
    for case in &suite {
        let reg = case.complex.regularize(&limits.complex).unwrap();
        let expect = ratio(alternating(&case.complex.complex().f_vector()), case.complex.order());
        if reg.euler_satake() != expect {
            bad.push(case.name.clone());
        }
    }
    let oct = builtin_equivariant("octahedron/antipodal", None).unwrap().regularize(&limits.complex).unwrap();
    let named = oct.euler_satake() == q_int(1);
    ok(bad.is_empty() && named && suite.len() >= 6, format!("{} complexes, octahedron/antipodal = {}, failures {bad:?}", suite.len(), fmt_q(&oct.euler_satake())))
}

fn criterion_2(limits: &Limits) -> Outcome {
    let suite = standard_suite();
    let regs: Vec<RegularEquivariantComplex> = suite.iter().map(|c| c.complex.regularize(&limits.complex).unwrap()).collect();
    let mut pairs = 0;
    let mut bad = Vec::new();
    for i in 0..suite.len() {
        for j in i..suite.len() {
            let p = equivariant_product(&suite[i].complex, &suite[j].complex, &limits.group, &limits.complex)
                .unwrap()
                .regularize(&limits.complex)
                .unwrap();
            let oracle = ratio(
                alternating(&suite[i].complex.complex().f_vector()) * alternating(&suite[j].complex.complex().f_vector()),
                suite[i].complex.order() * suite[j].complex.order(),
            );
            if p.euler_satake() != regs[i].euler_satake() * regs[j].euler_satake() || p.euler_satake() != oracle {
                bad.push(format!("{} x {}", suite[i].name, suite[j].name));
            }
            pairs += 1;
        }
    }
    // every split into the orbit of one maximal simplex and the rest
    let mut splits = 0;
    for (case, reg) in suite.iter().zip(&regs) {
        let maximal = reg.complex().maximal_simplices();
        let mut seen: Vec<Vec<usize>> = Vec::new();
        for s in &maximal {
            if seen.contains(s) {
                continue;
            }
            let orbit: Vec<Vec<usize>> = reg.group().elements().iter().map(|&g| reg.equivariant().act(g, s)).collect();
            seen.extend(orbit.iter().cloned());
            let rest: Vec<Vec<usize>> = maximal.iter().filter(|m| !orbit.contains(m)).cloned().collect();
            if rest.is_empty() {
                continue;
            }
            let a = reg.complex().subcomplex(&orbit).unwrap();
            let b = reg.complex().subcomplex(&rest).unwrap();
            let ab = a.intersection(&b).unwrap();
            let es = |c: &orbichar_core::complex::SimplicialComplex| reg.with_complex(c.clone()).unwrap().euler_satake();
            if reg.euler_satake() != es(&a) + es(&b) - es(&ab) {
                bad.push(format!("split of {}", case.name));
            }
            splits += 1;
        }
    }
    ok(bad.is_empty() && splits > 0, format!("{pairs} products, {splits} invariant splits, failures {bad:?}"))
}

fn criterion_3(limits: &Limits) -> Outcome {
    let mut bad = Vec::new();
    let mut elements = 0usize;
    for (name, n_max) in [("Z2", 4), ("Z3", 3), ("S3", 3)] {
        let base = Arc::new(FiniteGroup::builtin(name).unwrap());
        let classes_of_base = base.conjugacy_classes().len();
        let expected = colored_partitions(classes_of_base, n_max);
        for n in 1..=n_max {
            let c = classify_conjugacy_by_type(base.clone(), n, &limits.group).unwrap();
            elements += c.wreath.group.order();
            if !c.bijective || !c.formula_matches || c.brute_class_count as i64 != expected[n] {
                bad.push(format!("{name} n={n}"));
            }
        }
    }
    ok(bad.is_empty(), format!("{elements} elements checked, failures {bad:?}"))
}

fn criterion_4(limits: &Limits) -> Outcome {
    let mut bad = Vec::new();
    let suite = standard_suite();
    for case in &suite {
        let reg = case.complex.regularize(&limits.complex).unwrap();
        let es = chi_gamma_es(&reg, &Presentation::free_abelian(1), &limits.group).unwrap();
        let orbit = Q::from_integer(reg.orbit_complex().euler_top().into());
        if es != orbit || es != commuting_average(&reg, 1) {
            bad.push(case.name.clone());
        }
    }
    ok(bad.is_empty(), format!("{} complexes, failures {bad:?}", suite.len()))
}

fn criterion_5(limits: &Limits) -> Outcome {
    let mut bad = Vec::new();
    let mut cases = 0;
    for spec in ["point/trivial(S3)", "point/trivial(Z2)", "S0/swap"] {
        let reg = builtin_equivariant(spec, None).unwrap().regularize(&limits.complex).unwrap();
        for a in 1..=2 {
            for b in 1..=2 {
                let c = iteration_check(&reg, &Presentation::free_abelian(a), &Presentation::free_abelian(b), &limits.group).unwrap();
                if !c.passed() || c.iterated_chi_es != commuting_average(&reg, a + b) {
                    bad.push(format!("{spec} Z^{a} x Z^{b}"));
                }
                cases += 1;
            }
        }
    }
    ok(bad.is_empty(), format!("{cases} cases, failures {bad:?}"))
}

fn criterion_6(limits: &Limits) -> Outcome {
    let mut bad = Vec::new();
    let mut checks = 0;
    for (spec, order) in [("point/trivial(Z2)", 6), ("point/trivial(S3)", 6), ("S0/swap", 3)] {
        let x = builtin_equivariant(spec, None).unwrap();
        let exp = verify_exp(spec, &x, order, Route::Auto, limits).unwrap();
        checks += 1;
        if !exp.passed() {
            bad.push(format!("{spec} exp"));
        }
        for m in 0..=2 {
            let r = verify_main(spec, &x, m, order, Route::Auto, limits).unwrap();
            checks += r.checks.len();
            if !r.passed() {
                bad.push(format!("{spec} m={m}"));
            }
        }
    }
    // the counting route against direct sector enumeration where both run
    for (spec, n) in [("point/trivial(Z2)", 4), ("point/trivial(S3)", 3)] {
        let x = builtin_equivariant(spec, None).unwrap();
        for kind in [WreathKind::Es(1), WreathKind::Top(1), WreathKind::Es(2)] {
            let brute = lhs_wreath_series(&x, kind, n, Route::Brute, limits).unwrap().coeffs;
            let count = lhs_wreath_series(&x, kind, n, Route::PointCount, limits).unwrap().coeffs;
            checks += 1;
            if brute != count {
                bad.push(format!("{spec} {kind:?} routes"));
            }
        }
    }
    let x = builtin_equivariant("point/trivial(Z2)", None).unwrap();
    let m1 = verify_main("pt", &x, 1, 6, Route::Auto, limits).unwrap();
    let expected: Vec<String> = colored_partitions(2, 6).iter().map(|c| c.to_string()).collect();
    let series = &m1.checks[0].report.lhs;
    if *series != expected {
        bad.push("pt/Z2 m=1 series".into());
    }
    ok(bad.is_empty(), format!("{checks} identities, pt/Z2 m=1: {}, failures {bad:?}", series.join(",")))
}

fn criterion_7() -> Outcome {
    let r = verify_jcount(12, 3);
    let sigma = |r: usize| (1..=r).filter(|d| r % d == 0).sum::<usize>() as u128;
    let named = subgroup_count(2, 2) == 3 && subgroup_count(4, 2) == 7;
    let sigmas = (1..=12).all(|r| subgroup_count(r, 2) == sigma(r));
    ok(r.passed && named && sigmas, format!("{} pairs (r, m), J_2,2 = {}, J_4,2 = {}", r.rows.len(), subgroup_count(2, 2), subgroup_count(4, 2)))
}

fn criterion_8(limits: &Limits) -> Outcome {
    let mut bad = Vec::new();
    let specs = ["point/trivial(Z2)", "point/trivial(S3)", "S0", "S0/trivial(Z2)"];
    for spec in specs {
        let x = builtin_equivariant(spec, None).unwrap();
        let r = verify_macdonald(spec, &x, 4, Route::Auto, limits).unwrap();
        if !r.passed {
            bad.push(spec);
        }
    }
    ok(bad.is_empty(), format!("{} complexes to N = 4, failures {bad:?}", specs.len()))
}

fn criterion_9() -> Outcome {
    let mut bad = Vec::new();
    for name in ["point", "two-sector"] {
        let ds = builtin_hodge_dataset(name).unwrap();
        if !verify_hodge(&ds, 5).unwrap().passed {
            bad.push(name.to_string());
        }
    }
    let shifts: Vec<String> = builtin_hodge_dataset("two-sector")
        .unwrap()
        .sectors
        .iter()
        .map(|s| fmt_q(&s.shift().unwrap()))
        .collect();
    let point = verify_hodge(&builtin_hodge_dataset("point").unwrap(), 5).unwrap();
    let partitions: Vec<_> = colored_partitions(1, 5)
        .iter()
        .map(|&p| HodgePolynomial::monomial(0, 0, q_int(p)).to_json())
        .collect();
    if point.lhs != partitions {
        bad.push("partition numbers".into());
    }
    ok(bad.is_empty() && shifts == ["0", "1"], format!("shifts {shifts:?}, failures {bad:?}"))
}

fn criterion_10() -> Outcome {
    let commands: &[&[&str]] = &[
        &["euler", "--complex", "circle(3)/dihedral", "--gamma", "Z^2"],
        &["wreath", "centralizers", "--group", "S3", "--n", "2"],
        &["wreath", "euler", "--group", "Z2", "--n", "3"],
        &["verify", "exp", "--complex", "S0/swap", "--order", "3"],
        &["verify", "main(2)", "--complex", "point/trivial(S3)", "--order", "6"],
        &["verify", "macdonald", "--complex", "S0/trivial(Z2)", "--order", "4"],
        &["verify", "jcount", "--r-max", "8"],
        &["verify", "hodge", "--data", "two-sector", "--order", "5"],
        &["verify", "thm31", "--complex", "S0/swap"],
        &["verify", "products", "--complex", "S0/swap", "--complex", "octahedron/antipodal", "--complex", "circle(4)/rotation"],
    ];
    let run = |args: &[&str], workers: &str| {
        let out = Command::new(env!("CARGO_BIN_EXE_orbichar"))
            .args(args)
            .args(["--workers", workers])
            .output()
            .expect("run orbichar");
        (out.status.code(), out.stdout)
    };
    let mut bad = Vec::new();
    for args in commands {
        let a = run(args, "1");
        let b = run(args, "4");
        if a != b || a.0 != Some(0) || a.1.is_empty() {
            bad.push(args.join(" "));
        }
    }
    ok(bad.is_empty(), format!("{} reports compared at 1 and 4 workers, failures {bad:?}", commands.len()))
}

fn main() -> ExitCode {
    let limits = Limits::default();
    let criteria: Vec<(&str, Duration, Box<dyn Fn() -> Outcome>)> = vec![
        ("Euler-Satake of a global quotient is chi/|G|", Duration::from_secs(5), Box::new(move || criterion_1(&limits))),
        ("multiplicativity and additivity", Duration::from_secs(30), Box::new(move || criterion_2(&limits))),
        ("wreath types and centralizer orders", Duration::from_secs(60), Box::new(move || criterion_3(&limits))),
        ("chi_Z^ES equals chi of the orbit space", Duration::from_secs(10), Box::new(move || criterion_4(&limits))),
        ("iterated sectors", Duration::from_secs(60), Box::new(move || criterion_5(&limits))),
        ("wreath generating functions", Duration::from_secs(300), Box::new(move || criterion_6(&limits))),
        ("subgroup counts J_r,m", Duration::from_secs(10), Box::new(criterion_7)),
        ("Macdonald dimension formulas", Duration::from_secs(120), Box::new(move || criterion_8(&limits))),
        ("shifted Hodge product formula", Duration::from_secs(60), Box::new(criterion_9)),
        ("deterministic reports", Duration::from_secs(300), Box::new(criterion_10)),
    ];
    let mut failed = 0;
    for (i, (name, budget, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let passed = outcome.passed && elapsed <= *budget;
        if !passed {
            failed += 1;
        }
        println!(
            "criterion {:>2} [PRIMARY] {}: {} ({:.2}s of {}s) {}",
            i + 1,
            name,
            if passed { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            budget.as_secs(),
            outcome.detail
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
