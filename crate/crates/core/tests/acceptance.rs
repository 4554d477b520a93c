//! Acceptance suite: one PASS/FAIL line per criterion. Every comparison is
//! exact (integer equality, zero mismatches); the only non-exact bounds are
//! the runtime budgets of criterion 1, given per length below.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use circlift::circulant::{extract_circulant, is_alpha_circulant, t_alpha, CodeSpec, DenseMatrix};
use circlift::distance::{gray_image, is_doubly_even, lee_weight, min_lee_distance};
use circlift::equivalence::{canonical_form, double_generators, is_valid_s, s_map_pair, type_shift_matrix, Generator, MonomialPair};
use circlift::lift::{build_lift_system, nested_lift, solve_lift_system};
use circlift::record::{verify_record, Family};
use circlift::search::{run_search, SearchConfig, SearchOutcome};
use circlift::{CircVec, RingElem};
use common::*;
use rand::RngExt;

/// Expected best `d_Lee` and runtime budget per length.
const TABLE: [(usize, u32, Duration); 3] = [
    (8, 6, Duration::from_secs(1)),
    (16, 8, Duration::from_secs(60)),
    (24, 12, Duration::from_secs(1800)),
];
const FAMILIES: [Family; 2] = [Family::DoubleNega, Family::BorderedCirc];

struct Report {
    failed: usize,
}

impl Report {
    fn line(&mut self, id: u32, name: &str, pass: bool, detail: String) {
        self.failed += usize::from(!pass);
        println!("[{}] criterion {id} {name}: {detail}", if pass { "PASS" } else { "FAIL" });
    }
}

fn search(n: usize, family: Family, no_pruning: bool) -> (SearchOutcome, Duration) {
    let mut cfg = SearchConfig::new(z(4), n, family);
    cfg.no_pruning = no_pruning;
    let start = Instant::now();
    let out = run_search(&cfg).expect("search runs");
    (out, start.elapsed())
}

fn criterion_1(runs: &[(usize, Family, SearchOutcome, Duration)]) -> (bool, String) {
    let mut ok = true;
    let mut parts = Vec::new();
    for (n, family, out, t) in runs {
        let (_, expected, budget) = TABLE.iter().find(|(m, _, _)| m == n).unwrap();
        let good = out.best_d == *expected && t <= budget;
        ok &= good;
        parts.push(format!("{family} n={n} d={} (want {expected}) {:.2}s/{}s", out.best_d, t.as_secs_f64(), budget.as_secs()));
    }
    (ok, parts.join("; "))
}

fn criterion_2() -> (bool, String) {
    let mut mismatches = 0;
    let mut bases = 0;
    let mut check = |order: u32, alpha: u32, max_k: usize| {
        let target = za(order, alpha);
        let p = target.p();
        for k in 1..=max_k {
            for v in all_vectors(p, k) {
                let base = double(z(p), alpha % p, &v);
                let brute = brute_double_lifts(target, alpha, &v);
                let got: BTreeSet<Vec<u32>> = match nested_lift(&base, target) {
                    Ok(it) => it.map(|s| spec_digits(&s)).collect(),
                    Err(_) => BTreeSet::new(),
                };
                bases += usize::from(naive_self_dual(&base));
                mismatches += usize::from(got != brute);
            }
        }
    };
    check(4, 3, 4);
    check(4, 1, 4);
    check(9, 8, 3);
    check(9, 1, 3);
    for alpha in [1, 3, 5, 7] {
        check(8, alpha, 3);
    }
    let sys = build_lift_system(&double(z(2), 1, &[1, 1, 1, 0]), za(4, 3)).unwrap();
    let sols = solve_lift_system(&sys);
    let example = sols.count() == 8 && sols.iter().all(|u| (u[0] + u[2]) % 2 == 1);
    (
        mismatches == 0 && example && bases > 0,
        format!("{bases} self-dual bases over F2/F3, {mismatches} mismatches; (1,1,1,0): {} lifts, u0+u2=1: {example}", sols.count()),
    )
}

fn criterion_3() -> (bool, String) {
    let mut rng = rng(1003);
    let rings = [(2u32, 1u32), (4, 1), (4, 3), (8, 7), (9, 8), (9, 1), (27, 26)];
    let mut failures = [0usize; 5];
    for _ in 0..1000 {
        let (order, alpha) = rings[rng.random_range(0..rings.len())];
        let r = za(order, alpha);
        let k = rng.random_range(1..9usize);
        let q = order as u64;
        let (f, g) = (random_values(&mut rng, order, k), random_values(&mut rng, order, k));
        let (a, b) = (cv(r, alpha, &f), cv(r, alpha, &g));
        let l = r.elem(rng.random_range(0..order)).unwrap();
        let nc = |v: &[u32]| naive_cir(q, alpha as u64, v);
        let add = a.add(&b).unwrap().cir();
        let add_naive: Mat = nc(&f).iter().zip(&nc(&g)).map(|(x, y)| x.iter().zip(y).map(|(u, v)| (u + v) % q).collect()).collect();
        failures[0] += usize::from(add != a.cir().add(&b.cir()).unwrap() || to_mat(&add) != add_naive);
        let scaled = a.scale(l).cir();
        let scaled_naive: Mat = nc(&f).iter().map(|x| x.iter().map(|u| u * l.value() as u64 % q).collect()).collect();
        failures[1] += usize::from(to_mat(&scaled) != scaled_naive);
        let prod = a.circ_mul(&b).unwrap().cir();
        failures[2] += usize::from(to_mat(&prod) != naive_mul(q, &nc(&f), &nc(&g)));
        let t = t_alpha(r, k, r.elem(alpha).unwrap());
        failures[3] += usize::from(t.pow(k).unwrap() != DenseMatrix::scalar(r, k, r.elem(alpha).unwrap()));
        // characterization on a circulant and on a perturbed matrix
        let mut m = nc(&f);
        if rng.random_range(0..2) == 1 {
            let (i, j) = (rng.random_range(0..k), rng.random_range(0..k));
            m[i][j] = (m[i][j] + 1) % q;
        }
        let first: Vec<u32> = m[0].iter().map(|&x| x as u32).collect();
        let truth = m == nc(&first);
        let tm = to_mat(&t);
        let commutes = naive_mul(q, &m, &tm) == naive_mul(q, &tm, &m);
        let dense = DenseMatrix::from_rows(r, &m.iter().map(|x| x.iter().map(|&u| u as u32).collect()).collect::<Vec<_>>()).unwrap();
        failures[4] += usize::from(commutes != truth || is_alpha_circulant(&dense, r.elem(alpha).unwrap()) != truth);
    }
    (
        failures.iter().all(|&f| f == 0),
        format!("1000 trials; failures cir(f+g)={} cir(λf)={} cir(fg)={} T^k=αI={} AT=TA⇔circulant={}", failures[0], failures[1], failures[2], failures[3], failures[4]),
    )
}

fn criterion_4() -> (bool, String) {
    let r = z(4);
    let mut rng = rng(1004);
    let (mut pairs, mut failures) = (0, 0);
    for alpha in [1u32, 3] {
        let a = r.elem(alpha).unwrap();
        for k in 1..=8 {
            for s in (0..k).filter(|&s| is_valid_s(r, k, a, s)) {
                pairs += 1;
                let pair = s_map_pair(r, k, a, s).unwrap();
                for _ in 0..100 {
                    let f = random_values(&mut rng, 4, k);
                    let expected = substitute(4, alpha as u64, &f, s);
                    let closed = Generator::SMap(s).apply(&cv(r, alpha, &f)).values();
                    let conj = conjugate(4, &pair, &naive_cir(4, alpha as u64, &f));
                    failures += usize::from(closed != expected || conj != naive_cir(4, alpha as u64, &expected));
                }
            }
        }
    }
    let r9 = z(9);
    let two = r9.elem(2).unwrap();
    let m = type_shift_matrix(r9, 3, two, 1).unwrap();
    let pair = MonomialPair::new(m.clone(), m).unwrap();
    let instance = conjugate(9, &pair, &to_mat(&t_alpha(r9, 3, two))) == naive_cir(9, 7, &[0, 2, 0]);
    let units = r9.units();
    let mut shift_failures = 0;
    for _ in 0..100 {
        let alpha = units[rng.random_range(0..units.len())];
        let k = rng.random_range(1..6usize);
        let (i, j) = (rng.random_range(0..6u64), rng.random_range(0..4u64));
        let f = random_values(&mut rng, 9, k);
        let m = type_shift_matrix(r9, k, alpha, j).unwrap();
        let pair = MonomialPair::new(m.clone(), m).unwrap();
        let conj = conjugate(9, &pair, &naive_cir(9, r9.pow(alpha, i).value() as u64, &f));
        let out_type = r9.pow(alpha, (i as i64 - (k as u64 * j) as i64).rem_euclid(6) as u64);
        let first: Vec<u32> = conj[0].iter().map(|&x| x as u32).collect();
        shift_failures += usize::from(conj != naive_cir(9, out_type.value() as u64, &first));
    }
    (
        failures == 0 && instance && shift_failures == 0,
        format!("{pairs} valid (k,s,α) with 100 f each: {failures} failures; Z9 M⁻¹T₂M = cir₇(0,2,0): {instance}; 100 random type shifts: {shift_failures} failures"),
    )
}

fn criterion_5() -> (bool, String) {
    let target = za(4, 3);
    let field = z(2);
    let lifts: Vec<CodeSpec> = [4usize, 8]
        .iter()
        .flat_map(|&k| all_vectors(2, k))
        .map(|v| double(field, 1, &v))
        .filter(|b| b.is_self_dual() && is_doubly_even(b).unwrap())
        .flat_map(|b| nested_lift(&b, target).unwrap().collect::<Vec<_>>())
        .collect();
    let mut rng = rng(1005);
    let mut failures = 0;
    for _ in 0..200 {
        let lift = &lifts[rng.random_range(0..lifts.len())];
        let gens = double_generators(target, lift.k(), lift.alpha());
        let g = gens[rng.random_range(0..gens.len())];
        let pair = g.pair(target, lift.k(), lift.alpha()).unwrap();
        let image = pair.apply_dense(&lift.core().cir()).unwrap();
        let by_definition = to_mat(&image) == conjugate(4, &pair, &to_mat(&lift.core().cir()));
        let base = lift.project_to(field).unwrap();
        let base_image = pair.project_to(field).apply_dense(&base.core().cir()).unwrap();
        let ok = match (extract_circulant(&image, lift.alpha()), extract_circulant(&base_image, RingElem::ONE)) {
            (Some(v), Some(b)) => by_definition && CodeSpec::double(v.clone()).is_self_dual() && v.project_to(field).unwrap() == b,
            _ => false,
        };
        failures += usize::from(!ok);
    }
    (failures == 0, format!("200 (generator, base, lift) triples from {} lifts: {failures} failures", lifts.len()))
}

fn criterion_6() -> (bool, String) {
    let r = z(2);
    let (v, w) = ("1111101011011010", "1110010011100000");
    let mut ok = true;
    let mut forms = Vec::new();
    for text in [v, w] {
        let a = CircVec::parse(r, RingElem::ONE, text).unwrap();
        let spec = CodeSpec::double(a.clone());
        ok &= spec.n() == 32 && naive_self_dual(&spec) && codewords(&spec).all(|c| c.iter().sum::<u64>() % 4 == 0);
        forms.push(canonical_form(&a).values());
    }
    ok &= forms[0] != forms[1];
    (ok, format!("both self-dual doubly-even [32,16]: {ok}; canonical forms {:?} / {:?}", forms[0], forms[1]))
}

fn criterion_7(runs: &[(usize, Family, SearchOutcome, Duration)]) -> (bool, String) {
    let mut specs = Vec::new();
    for (order, alphas) in [(2u32, &[1u32][..]), (4, &[1, 3][..])] {
        for &alpha in alphas {
            let r = za(order, alpha);
            for k in 1..=4 {
                specs.extend(all_vectors(order, k).map(|v| double(r, alpha, &v)));
                for v in all_vectors(order, k - 1).filter(|_| k >= 2) {
                    specs.extend(all_vectors(order, 3).map(|b| bordered(r, alpha, &v, [b[0], b[1], b[2]])));
                }
            }
        }
    }
    let engine_mismatch = specs.iter().filter(|s| min_lee_distance(s, None) != naive_min_lee(s)).count();
    let mut rng = rng(1007);
    let r4 = z(4);
    let mut gray_failures = 0;
    for _ in 0..1000 {
        let len = rng.random_range(0..48usize);
        let v = as_elems(r4, &random_values(&mut rng, 4, len));
        let img = gray_image(r4, &v).unwrap();
        gray_failures += usize::from(img.iter().filter(|&&b| b == 1).count() as u32 != lee_weight(r4, &v));
    }
    let violations: u64 = runs.iter().map(|(_, _, o, _)| o.stats.bound_violations).sum();
    let evaluated: u64 = runs.iter().map(|(_, _, o, _)| o.stats.lifts_exact + o.stats.lifts_aborted).sum();
    let record_violations = runs.iter().flat_map(|(_, _, o, _)| &o.records).filter(|r| r.d_lee > 2 * r.d_ham_base).count();
    (
        engine_mismatch == 0 && gray_failures == 0 && violations == 0 && record_violations == 0,
        format!(
            "{} specs k≤4 over Z2/Z4: {engine_mismatch} mismatches; Gray isometry 1000 vectors: {gray_failures} failures; d_Lee≤2d_Ham over {evaluated} evaluated lifts: {} violations",
            specs.len(),
            violations + record_violations as u64
        ),
    )
}

fn criterion_8(runs: &[(usize, Family, SearchOutcome, Duration)]) -> (bool, String) {
    let mut ok = true;
    let mut parts = Vec::new();
    for family in FAMILIES {
        for n in [8, 16] {
            let pruned = &runs.iter().find(|(m, f, _, _)| *m == n && *f == family).unwrap().2;
            let (full, _) = search(n, family, true);
            ok &= full.best_d == pruned.best_d && full.stats.bound_violations == 0;
            parts.push(format!("{family} n={n} pruned={} full={}", pruned.best_d, full.best_d));
        }
    }
    let records: Vec<_> = runs.iter().flat_map(|(_, _, o, _)| &o.records).collect();
    let bad = records.iter().filter(|r| !verify_record(r).unwrap_or(false)).count();
    ok &= bad == 0;
    (ok, format!("{}; {} emitted records, {bad} failed verify", parts.join(", "), records.len()))
}

fn main() -> ExitCode {
    let mut report = Report { failed: 0 };
    let mut runs = Vec::new();
    for family in FAMILIES {
        for (n, _, _) in TABLE {
            let (out, t) = search(n, family, false);
            runs.push((n, family, out, t));
        }
    }
    let criteria: [(u32, &str, Box<dyn Fn() -> (bool, String)>); 8] = [
        (1, "table reproduction", Box::new(|| criterion_1(&runs))),
        (2, "lift oracle", Box::new(criterion_2)),
        (3, "circulant algebra", Box::new(criterion_3)),
        (4, "monomial lemmas", Box::new(criterion_4)),
        (5, "lift orbit lemma", Box::new(criterion_5)),
        (6, "inequivalent [32,16] pair", Box::new(criterion_6)),
        (7, "distance engine", Box::new(|| criterion_7(&runs))),
        (8, "pipeline soundness", Box::new(|| criterion_8(&runs))),
    ];
    for (id, name, run) in &criteria {
        let (pass, detail) = run();
        report.line(*id, name, pass, detail);
    }
    println!("acceptance: {} of 8 criteria passed", 8 - report.failed);
    if report.failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
