//! End-to-end acceptance run: one PASS/FAIL line per criterion, nonzero exit
//! if any criterion fails.

use std::collections::HashSet;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use sa2::arith::eigen::eigenvectors_arith;
use sa2::arith::matrix::imat;
use sa2::arith::norm::norm_sq_enclosure;
use sa2::arith::projective::fs_distance_sq;
use sa2::arith::rational::pow_rational;
use sa2::pingpong::FreePairCertificate;
use sa2::spectral::{
    herz_compare, margulis_set, operator_norm_est, schreier_operator, ActionMode, GapEstimate,
    NormConfig,
};
use sa2::verify::{sample_points, table_invariant_sample};
use sa2::{IntMat2, QuadNumber};

const SANOV: &str = "# {1, (L,0)^±1, (R,(0,1))^±1}
1 0 0 1 | 0 0
1 2 0 1 | 0 0
1 -2 0 1 | 0 0
1 0 2 1 | 0 1
1 0 -2 1 | 0 -1
";

const TRANSLATIONS: &str = "1 0 0 1 | 1 0
1 0 0 1 | -1 0
";

const ZERO_TRANSLATION: &str = "1 0 0 1 | 0 0
1 2 0 1 | 0 0
1 -2 0 1 | 0 0
1 0 2 1 | 0 0
1 0 -2 1 | 0 0
";

const TRANSLATION_ONLY: &str = "1 0 0 1 | 0 0
1 0 0 1 | 1 0
1 0 0 1 | -1 0
1 0 0 1 | 0 1
1 0 0 1 | 0 -1
";

struct Line {
    label: String,
    pass: bool,
    detail: String,
}

fn line(label: impl Into<String>, pass: bool, detail: impl Into<String>) -> Line {
    Line {
        label: label.into(),
        pass,
        detail: detail.into(),
    }
}

struct Work {
    dir: tempfile::TempDir,
}

impl Work {
    fn file(&self, name: &str, contents: &str) -> PathBuf {
        let p = self.dir.path().join(name);
        std::fs::write(&p, contents).unwrap();
        p
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }
}

fn sa2(args: &[&str]) -> (Output, Duration) {
    let t = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_sa2"))
        .args(args)
        .output()
        .expect("spawn sa2");
    (out, t.elapsed())
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).trim().to_string()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap_or(-1)
}

fn json(p: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap()
}

fn certificate(p: &Path) -> FreePairCertificate {
    let v = json(p);
    FreePairCertificate::from_json(&v["result"]["certificate"].to_string()).unwrap()
}

fn ell_line(label: &str, input: &Path, out: &Path) -> Line {
    let (o, t) = sa2(&["certify", "--input", s(input), "--eta-mode", "paper", "--output", s(out)]);
    if !o.status.success() {
        return line(
            label,
            false,
            format!("exit {}: {}", code(&o), stderr(&o)),
        );
    }
    let c = certificate(out);
    let ok = c.ell <= c.ell_apriori && c.all_pass() && t < Duration::from_secs(300);
    line(
        label,
        ok,
        format!(
            "ell = {} <= 20(N1+N2+N3) = {} with N = ({}, {}, {}), {:.1}s",
            c.ell,
            c.ell_apriori,
            c.budgets.n1,
            c.budgets.n2,
            c.budgets.n3,
            t.as_secs_f64()
        ),
    )
}

fn criterion_2(cert: &Path) -> Line {
    let (o, t) = sa2(&["free-check", "--input", s(cert), "--lfree", "8", "--lcomm", "6"]);
    let ok_exit = o.status.success();
    let v: Value = serde_json::from_slice(&o.stdout).unwrap_or(Value::Null);
    let r = &v["result"];
    let words = r["freeness"]["words_checked"].as_u64().unwrap_or(0);
    let free = r["freeness"]["counterexample"].is_null();
    let violations = r["local_commutativity"]["violations_total"].as_u64().unwrap_or(u64::MAX);
    let ok = ok_exit && free && violations == 0 && words == 2 * (3u64.pow(8) - 1) && t < Duration::from_secs(600);
    line(
        "2",
        ok,
        format!("{words} words to length 8, {violations} commutativity counterexamples to length 6, {:.1}s", t.as_secs_f64()),
    )
}

fn random_hyperbolic(rng: &mut ChaCha8Rng) -> IntMat2 {
    let gens = [imat(1, 1, 0, 1), imat(1, -1, 0, 1), imat(1, 0, 1, 1), imat(1, 0, -1, 1)];
    loop {
        let len = rng.gen_range(2..=10);
        let mut m = imat(1, 0, 0, 1);
        for _ in 0..len {
            m = m.mul(&gens[rng.gen_range(0..4)]);
        }
        if rng.gen_bool(0.5) {
            m = m.mul(&imat(-1, 0, 0, -1));
        }
        let t: i64 = m.trace().try_into().unwrap();
        if (3..=50).contains(&t.abs()) {
            return m;
        }
    }
}

fn criterion_3() -> Line {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut seen = HashSet::new();
    let mut failures = 0;
    let mut tightest = f64::INFINITY;
    while seen.len() < 100 {
        let a = random_hyperbolic(&mut rng);
        if !seen.insert(a.to_string()) {
            continue;
        }
        let e = eigenvectors_arith(&a).unwrap();
        let d2 = fs_distance_sq(&e.u, &e.v).unwrap();
        // ‖a‖⁻³⁰ <= (lower bound of ‖a‖²)⁻¹⁵
        let lo = norm_sq_enclosure(&a.map(|x| QuadNumber::from_bigint(x.clone())), 64).lo;
        let bound = QuadNumber::rational(pow_rational(&lo, 15).recip());
        if d2 < bound {
            failures += 1;
        }
        tightest = tightest.min(d2.to_f64().log2() - bound.to_f64().log2());
    }
    line(
        "3",
        failures == 0,
        format!("100 matrices, {failures} failures, smallest log2 margin {tightest:.1}"),
    )
}

fn criterion_4(cert: &Path) -> Line {
    let c = certificate(cert);
    let points = sample_points(0, 200);
    let t = Instant::now();
    let r = table_invariant_sample(&c, &points, 4);
    let t = t.elapsed();
    line(
        "4",
        points.len() >= 1000 && r.containment_violations == 0 && r.dilation_violations == 0,
        format!(
            "{} points, {} word checks, {} containment and {} dilation violations, {:.1}s",
            r.points,
            r.words_checked,
            r.containment_violations,
            r.dilation_violations,
            t.as_secs_f64()
        ),
    )
}

fn criterion_5(cert: &Path, out: &Path) -> Line {
    let (o, _) = sa2(&["paradox", "--input", s(cert), "--orbit-radius", "6", "--output", s(out)]);
    if !o.status.success() {
        return line("5", false, stderr(&o));
    }
    let v = json(out);
    let r = &v["result"];
    let a = &r["assignment"];
    let exact = a["covers"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["missed"] == 0 && c["covered_twice_or_more"] == 0 && c["covered_once"] == c["interior_points"]);
    let leakage = a["leakage"].as_str().unwrap_or("1").to_string();
    let (num, den) = leakage.split_once('/').unwrap_or((&leakage, "1"));
    let below_one = num.parse::<u64>().unwrap() < den.parse::<u64>().unwrap();
    let orbits = r["orbits"].as_array().unwrap();
    let free_orbits = orbits.iter().filter(|o| o["status"]["status"] == "free").count();
    line(
        "5",
        a["disjoint"] == true && exact && below_one && free_orbits == 1 && orbits.len() == 1,
        format!("{free_orbits} free orbit at radius 6, covers exact, leakage {leakage}"),
    )
}

fn criterion_6(s_plus: &[sa2::AffineElement], estimates: &mut Vec<GapEstimate>) -> Line {
    let cfg = NormConfig::default();
    let mut worst = 0.0f64;
    let mut ok = true;
    for n in 2..=7 {
        let op = schreier_operator(s_plus, n, ActionMode::Plane).unwrap();
        let est = operator_norm_est(&op, &cfg).unwrap();
        let d = (est.dense_norm.unwrap() - est.norm_estimate).abs();
        worst = worst.max(d);
        ok &= d <= 1e-9;
        estimates.push(est);
    }
    let mut slacks = Vec::new();
    for p in [2, 3, 5] {
        let r = herz_compare(s_plus, p, &cfg).unwrap();
        ok &= r.slack >= -1e-9;
        slacks.push(format!("p={p}: {:.3e}", r.slack));
        estimates.push(r.plane);
        estimates.push(r.cayley);
    }
    line(
        "6",
        ok,
        format!("max |lanczos - dense| = {worst:.2e}; herz slack {}", slacks.join(", ")),
    )
}

fn criterion_7(estimates: &mut Vec<GapEstimate>, w: &Work, set: &Path) -> Line {
    let m = margulis_set();
    for n in 2..=10 {
        let op = schreier_operator(&m, n, ActionMode::Plane).unwrap();
        estimates.push(operator_norm_est(&op, &NormConfig::default()).unwrap());
    }
    let out = w.path("gap7.csv");
    let (o, _) = sa2(&["gap", "--input", s(set), "--moduli", "2..9", "--output", s(&out)]);
    let mut cli_rows = 0;
    let mut cli_ok = o.status.success();
    for row in std::fs::read_to_string(&out).unwrap_or_default().lines().skip_while(|l| l.starts_with('#')).skip(1) {
        let f: Vec<&str> = row.split(',').collect();
        let k: f64 = f[6].parse().unwrap_or(-1.0);
        let weight: f64 = f[3].parse().unwrap_or(0.0);
        cli_ok &= (0.0..=1.0).contains(&k) && k >= k * k / (16.0 * weight);
        cli_rows += 1;
    }
    let bad = estimates.iter().filter(|e| !e.sandwich_holds()).count();
    line(
        "7",
        bad == 0 && cli_ok && cli_rows == 8,
        format!("{} estimates and {cli_rows} gap rows, {bad} violations", estimates.len()),
    )
}

fn criterion_8(w: &Work, cert: &Path) -> Line {
    let mut notes = Vec::new();
    let mut ok = true;

    let zero = w.file("zero.txt", ZERO_TRANSLATION);
    let (o, _) = sa2(&["certify", "--input", s(&zero)]);
    let good = o.status.code() == Some(3) && stderr(&o).contains("global fixed point (0, 0)");
    ok &= good;
    notes.push(format!("zero translation exit {}", code(&o)));

    let tr = w.file("translations.txt", TRANSLATION_ONLY);
    let (o, _) = sa2(&["certify", "--input", s(&tr)]);
    let good = o.status.code() == Some(3) && stderr(&o).contains("spectral radius");
    ok &= good;
    notes.push(format!("translation-only exit {}", code(&o)));

    let same = w.file("same.txt", "1 2 0 1 | 0 1\n1 2 0 1 | 0 1\n");
    let (o, _) = sa2(&["free-check", "--input", s(&same), "--lfree", "4", "--lcomm", "2"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap_or(Value::Null);
    let len = v["result"]["freeness"]["counterexample"]["letters"].as_array().map_or(0, Vec::len);
    ok &= len == 2 && o.status.code() == Some(6);
    notes.push(format!("a = b counterexample length {len}"));

    let mut doc = json(cert);
    let checks = doc["result"]["certificate"]["checks"].as_array_mut().unwrap();
    let victim = checks[3]["name"].as_str().unwrap().to_string();
    let m = checks[3]["margin_log2"].as_f64().unwrap();
    checks[3]["margin_log2"] = serde_json::json!(-m);
    let tampered = w.file("tampered.json", &serde_json::to_string_pretty(&doc).unwrap());
    let (o, _) = sa2(&["recheck", "--input", s(&tampered)]);
    let named = stderr(&o).contains(&format!("'{victim}'"));
    ok &= o.status.code() == Some(6) && named;
    notes.push(format!("tampered '{victim}' exit {}", code(&o)));

    line("8", ok, notes.join("; "))
}

fn criterion_9(w: &Work, set: &Path, cert: &Path) -> Line {
    let runs: [(&str, Vec<&str>); 6] = [
        ("certify", vec!["--input", s(set)]),
        ("recheck", vec!["--input", s(cert)]),
        ("free-check", vec!["--input", s(cert), "--lfree", "5", "--lcomm", "4"]),
        ("paradox", vec!["--input", s(cert), "--orbit-radius", "4", "--seed", "3"]),
        ("gap", vec!["--input", s(set), "--moduli", "2..7", "--mode", "plane", "--seed", "5"]),
        ("quotient-check", vec!["--input", s(set), "--moduli", "2,3,5,7"]),
    ];
    let mut differing = Vec::new();
    for (cmd, args) in &runs {
        let outs: Vec<Vec<u8>> = (0..2)
            .map(|k| {
                let p = w.path(&format!("{cmd}-{k}.out"));
                let mut a = vec![*cmd];
                a.extend(args.iter().copied());
                a.extend(["--output", s(&p)]);
                let (o, _) = sa2(&a);
                assert!(o.status.success(), "{cmd}: {}", stderr(&o));
                std::fs::read(&p).unwrap()
            })
            .collect();
        if outs[0] != outs[1] || outs[0].is_empty() {
            differing.push(*cmd);
        }
    }
    line(
        "9",
        differing.is_empty(),
        if differing.is_empty() {
            "6 subcommands byte-identical across two runs".to_string()
        } else {
            format!("outputs differ: {}", differing.join(", "))
        },
    )
}

fn main() {
    let w = Work {
        dir: tempfile::tempdir().unwrap(),
    };
    let literal = w.file("sanov.txt", SANOV);
    let plus_text = format!("{SANOV}{TRANSLATIONS}");
    let plus = w.file("sanov_plus.txt", &plus_text);
    let s_plus = sa2::arith::parse::parse_set(&plus_text).unwrap();

    let mut lines = vec![ell_line("1", &literal, &w.path("literal.json"))];
    let cert = w.path("cert.json");
    let mut plus_line = ell_line("1 [lift with translations (±1, 0) added]", &plus, &cert);
    plus_line.detail = format!("supplementary, {}", plus_line.detail);
    let have_cert = plus_line.pass;
    lines.push(plus_line);

    if have_cert {
        let (l2, l3, l4, l5, l6_7) = std::thread::scope(|scope| {
            let h2 = scope.spawn(|| criterion_2(&cert));
            let h3 = scope.spawn(criterion_3);
            let h4 = scope.spawn(|| criterion_4(&cert));
            let h5 = scope.spawn(|| criterion_5(&cert, &w.path("paradox.json")));
            let h67 = scope.spawn(|| {
                let mut est = Vec::new();
                let l6 = criterion_6(&s_plus, &mut est);
                let l7 = criterion_7(&mut est, &w, &plus);
                (l6, l7)
            });
            (
                h2.join().unwrap(),
                h3.join().unwrap(),
                h4.join().unwrap(),
                h5.join().unwrap(),
                h67.join().unwrap(),
            )
        });
        lines.extend([l2, l3, l4, l5, l6_7.0, l6_7.1]);
        lines.push(criterion_8(&w, &cert));
        lines.push(criterion_9(&w, &plus, &cert));
    } else {
        for n in 2..=9 {
            lines.push(line(n.to_string(), false, "no certificate"));
        }
    }

    for l in &lines {
        println!(
            "criterion {}: {} ({})",
            l.label,
            if l.pass { "PASS" } else { "FAIL" },
            l.detail
        );
    }
    let failed: Vec<&str> = lines.iter().filter(|l| !l.pass).map(|l| l.label.as_str()).collect();
    if failed.is_empty() {
        println!("acceptance: all criteria pass");
    } else {
        println!("acceptance: failing criteria {}", failed.join(", "));
        std::process::exit(1);
    }
}
