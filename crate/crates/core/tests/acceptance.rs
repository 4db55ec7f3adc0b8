//! Acceptance checks at full default scale. Each check prints one line with
//! its number, result and wall time, and holds a lock so that timings are not
//! shared with another check.

use std::io::Write;
use std::sync::Mutex;
use std::time::Instant;

use polymer_lab::experiments::*;

static SERIAL: Mutex<()> = Mutex::new(());

fn check(number: u32, title: &str, budget_secs: f64, body: impl FnOnce() -> (bool, String)) {
    let _guard = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    let start = Instant::now();
    let (ok, detail) = body();
    let secs = start.elapsed().as_secs_f64();
    let in_time = secs < budget_secs;
    let line = format!(
        "criterion {number}: {} {title} ({secs:.1} s of {budget_secs:.0} s){}{detail}\n",
        if ok && in_time { "PASS" } else { "FAIL" },
        if detail.is_empty() { "" } else { ": " },
    );
    // Written past the test harness capture so the line always shows.
    std::io::stdout().write_all(line.as_bytes()).unwrap();
    assert!(ok, "{line}");
    assert!(in_time, "{line}");
}

fn failing(report: &ExperimentReport) -> String {
    let bad: Vec<String> =
        report.verdicts.iter().filter(|v| !v.passed).map(|v| format!("{} [{}]", v.name, v.detail)).collect();
    if bad.is_empty() {
        format!("{} verdicts", report.verdicts.len())
    } else {
        bad.join("; ")
    }
}

fn stat(report: &ExperimentReport, n: i64, key: &str) -> f64 {
    report.size_stat(n, key).unwrap_or_else(|| panic!("missing {key} at {n}"))
}

fn fit_slope(report: &ExperimentReport, name: &str) -> Option<f64> {
    report.fits.iter().find(|f| f.name == name).map(|f| f.fit.slope)
}

#[test]
fn c1_identities() {
    check(1, "deterministic identities", 30.0, || {
        let mut cfg = identities_default_config();
        cfg.sizes = vec![10];
        cfg.replicas = 50;
        cfg.params.insert("triples".into(), 10_000.0);
        cfg.params.insert("windows".into(), 100.0);
        let r = run_identity_suite(&cfg).unwrap();
        let ok = r.passed()
            && stat(&r, 10, "involution_max_rel_error") < 1e-12
            && stat(&r, 10, "dd_max_residual") < 1e-9
            && stat(&r, 10, "nesting_max_rel_error") < 1e-10
            && stat(&r, 10, "exit_identity_max_rel_error") < 1e-10
            && stat(&r, 10, "crossing_mass_error") < 1e-12
            && stat(&r, 10, "crossing_enumeration_error") < 1e-12;
        (ok, failing(&r))
    });
}

#[test]
fn c2_inequalities() {
    check(2, "deterministic inequalities", 60.0, || {
        let mut cfg = inequalities_default_config();
        cfg.sizes = vec![8];
        cfg.replicas = 1000;
        cfg.params.insert("sandwich_n".into(), 64.0);
        cfg.params.insert("sandwich_replicas".into(), 200.0);
        let r = run_inequality_suite(&cfg).unwrap();
        let ok = r.passed() && stat(&r, 8, "environments") >= 1000.0 && stat(&r, 64, "unclean") == 0.0;
        let detail = format!("{}, sandwich events held {}", failing(&r), stat(&r, 64, "events_held"));
        (ok, detail)
    });
}

#[test]
fn c3_couplings() {
    check(3, "monotone tree coupling", 60.0, || {
        let mut cfg = couplings_default_config();
        cfg.sizes = vec![10];
        cfg.replicas = 500;
        cfg.params.insert("pairs".into(), 20.0);
        let r = run_coupling_suite(&cfg).unwrap();
        let ok = r.passed()
            && stat(&r, 10, "ordered_pairs") == 10_000.0
            && stat(&r, 10, "order_violations") == 0.0
            && stat(&r, 10, "termination_failures") == 0.0
            && stat(&r, 10, "step_field_violations") == 0.0;
        (ok, failing(&r))
    });
}

#[test]
fn c4_distributional_battery() {
    check(4, "stationary distributional battery", 300.0, || {
        let mut cfg = burke_default_config();
        cfg.replicas = 100_000;
        cfg.params.insert("level".into(), 0.01);
        cfg.params.insert("perturb".into(), 0.0);
        cfg.params.insert("power_perturb".into(), 0.1);
        let r = run_burke_suite(&cfg).unwrap();
        let m = r.tests.len() as f64;
        let level_ok = r.tests.iter().all(|t| (t.level - 0.01 / m).abs() < 1e-15);
        let power = r.verdict("power check rejects perturbed boundary").map_or(false, |v| v.passed);
        (r.passed() && level_ok && power, format!("{} tests, {}", r.tests.len(), failing(&r)))
    });
}

#[test]
fn c5_moments() {
    check(5, "moments and stationary telescoping", 120.0, || {
        let mut cfg = moments_default_config();
        cfg.sizes = vec![10];
        cfg.params.insert("alpha".into(), 0.5);
        cfg.params.insert("sigma".into(), 1.0);
        let r = run_moment_suite(&cfg).unwrap();
        let want = 20.0 * (0.577_215_664_901_532_9 + 2.0 * std::f64::consts::LN_2);
        let ok = r.passed()
            && (stat(&r, 10, "expected") - want).abs() < 1e-10
            && (stat(&r, 10, "mean_log_z") - want).abs() < 4.0 * stat(&r, 10, "mean_log_z_se");
        (ok, format!("mean log Z {:.3} vs {want:.3}; {}", stat(&r, 10, "mean_log_z"), failing(&r)))
    });
}

#[test]
fn c6_gibbs() {
    check(6, "Gibbs kernel consistency", 120.0, || {
        let mut cfg = gibbs_default_config();
        cfg.sizes = vec![2, 3];
        cfg.replicas = 100_000;
        cfg.params.insert("level".into(), 0.001);
        let r = run_gibbs_consistency(&cfg).unwrap();
        let ok = r.passed() && r.tests.len() == 4 && r.tests.iter().all(|t| t.p_value >= 0.001);
        (ok, failing(&r))
    });
}

#[test]
fn c7_kpz_shapes() {
    check(7, "KPZ wandering and tail shapes", 1200.0, || {
        let mut kcfg = kpz_default_config();
        kcfg.sizes = vec![64, 128, 256, 512, 1024];
        kcfg.replicas = 2000;
        kcfg.params.insert("miss_size".into(), 512.0);
        kcfg.params.insert("exponent_lo".into(), 0.55);
        kcfg.params.insert("exponent_hi".into(), 0.78);
        kcfg.params.insert("decay_max".into(), -2.0);
        let k = run_kpz_wandering(&kcfg).unwrap();
        let mut ecfg = exit_default_config();
        ecfg.sizes = vec![512];
        ecfg.params.insert("alpha".into(), 0.5);
        ecfg.params.insert("decay_max".into(), -2.0);
        let e = run_exit_tail(&ecfg).unwrap();
        let wander = fit_slope(&k, "median_deviation_vs_N");
        let miss = fit_slope(&k, "miss_vs_b_N512");
        let exit = fit_slope(&e, "exit_tail_vs_b_N512");
        let ok = k.passed()
            && e.passed()
            && wander.map_or(false, |s| (0.55..=0.78).contains(&s))
            && miss.map_or(false, |s| s <= -2.0)
            && exit.map_or(false, |s| s <= -2.0);
        let detail = format!(
            "wandering {wander:.3?}, miss decay {miss:.3?}, exit decay {exit:.3?}; {}; {}",
            failing(&k),
            failing(&e)
        );
        (ok, detail)
    });
}

#[test]
fn c8_crossing_decay() {
    check(8, "crossing probability decay", 1200.0, || {
        let mut cfg = crossing_default_config();
        cfg.sizes = vec![32, 64, 128, 256];
        cfg.replicas = 500;
        let r = run_crossing_decay(&cfg).unwrap();
        let means: Vec<f64> = cfg.sizes.iter().map(|&n| stat(&r, n, "mean_sup_p0")).collect();
        (r.passed(), format!("means {means:.4?}; {}", failing(&r)))
    });
}

#[test]
fn c9_reproducibility() {
    check(9, "reports independent of thread count", 600.0, || {
        let mut small: Vec<ExperimentConfig> = Vec::new();
        let mut k = kpz_default_config();
        k.sizes = vec![32, 64, 128];
        k.replicas = 40;
        k.params.insert("miss_size".into(), 128.0);
        small.push(k);
        let mut e = exit_default_config();
        e.sizes = vec![64];
        e.replicas = 40;
        small.push(e);
        let mut c = crossing_default_config();
        c.sizes = vec![8, 16];
        c.replicas = 40;
        small.push(c);
        let mut b = burke_default_config();
        b.replicas = 2000;
        small.push(b);
        let mut g = gibbs_default_config();
        g.replicas = 2000;
        small.push(g);
        let mut w = walk_default_config();
        w.sizes = vec![100, 1000];
        w.replicas = 500;
        small.push(w);
        for s in [identities_default_config(), inequalities_default_config(), couplings_default_config()] {
            let mut s = s;
            s.replicas = 20;
            s.params.insert("sandwich_replicas".into(), 2.0);
            small.push(s);
        }
        let mut differing = Vec::new();
        for cfg in &small {
            let mut outputs = Vec::new();
            for threads in [1, 4, 1] {
                let mut c = cfg.clone();
                c.threads = Some(threads);
                let r = run_experiment(&c).unwrap();
                let mut csv = Vec::new();
                r.write_csv(&mut csv).unwrap();
                outputs.push((r.to_json().unwrap(), csv));
            }
            if outputs.windows(2).any(|w| w[0] != w[1]) {
                differing.push(cfg.name.clone());
            }
        }
        (differing.is_empty(), format!("{} experiments, differing: {differing:?}", small.len()))
    });
}
