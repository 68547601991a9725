//! One pass/fail line per acceptance criterion, run sequentially so the
//! printed runtimes are meaningful.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use polar_order_core::infoset::MEMBERSHIP_SLACK;
use polar_order_core::ordering::{
    blackwell_check, cut_criterion, cx_check, degradation_check, dominating_bec_bhattacharyya,
    dominating_bec_variational, icx_check, stop_loss_slack, symmetric_convex_check,
    z_bsc_thresholds, Witness,
};
use polar_order_core::polar::{
    self, channel_minus, channel_plus, f_plus_compose, synthesize, DEFAULT_OUTPUT_CAP,
};
use polar_order_core::{
    Budget, Channel, DeltaDistribution, Functional, InfoSet, Method, Sign, SignSequence,
    SynthesisTree,
};
use rand::Rng;

type Outcome = (bool, String);
type Criterion = (&'static str, fn() -> Outcome, Duration);

const PS: [f64; 5] = [0.1, 0.25, 0.5, 0.75, 0.9];

fn ac1() -> Outcome {
    let mut mismatches = Vec::new();
    for p in PS {
        let z = Channel::z(p).unwrap();
        let deg = p / (1.0 + p);
        let sym = p / 2.0;
        let mut grid: Vec<f64> = (0..=50).map(|i| i as f64 / 100.0).collect();
        for thr in [deg, sym] {
            grid.extend([thr - 1e-5, thr - 2e-6, thr, thr + 1e-5]);
        }
        for &e in grid.iter().filter(|&&e| (0.0..=0.5).contains(&e)) {
            let bsc = Channel::bsc(e).unwrap();
            let feasible = degradation_check(&z, &bsc).unwrap().holds;
            if feasible != (e >= deg - 1e-6) {
                mismatches.push(format!("degradation p={p} eps={e}"));
            }
            let holds = symmetric_convex_check(&bsc, &z).holds;
            if holds != (e >= sym - 1e-6) {
                mismatches.push(format!("symmetric p={p} eps={e}"));
            }
        }
        let t = z_bsc_thresholds(p, 1e-7).unwrap();
        if (t.degradation - deg).abs() > 1e-6 || (t.symmetric_convex - sym).abs() > 1e-6 {
            mismatches.push(format!(
                "bisection p={p}: {} vs {deg}, {} vs {sym}",
                t.degradation, t.symmetric_convex
            ));
        }
        if p == 0.5
            && ((t.degradation - 1.0 / 3.0).abs() > 1e-6
                || (t.symmetric_convex - 0.25).abs() > 1e-6)
        {
            mismatches.push("p=0.5 thresholds".into());
        }
    }
    (
        mismatches.is_empty(),
        if mismatches.is_empty() {
            "thresholds p/(1+p) and p/2 reproduced, 1/3 and 0.25 at p=0.5".into()
        } else {
            format!("{} mismatches, first: {}", mismatches.len(), mismatches[0])
        },
    )
}

fn ac2() -> Outcome {
    let mut rng = common::rng(2);
    let mut worst = f64::INFINITY;
    let mut failures = 0;
    for _ in 0..200 {
        let w = common::channel_upto(&mut rng, 5);
        let s = w.symmetrize();
        let k = rng.gen_range(2..=5);
        let p = common::kernel(&mut rng, s.labels(), k);
        let v = s.degrade(&p).unwrap();
        let (x, y) = (v.delta_distribution(), w.delta_distribution());
        assert!(icx_check(&x.abs(), &y.abs()).holds);
        for sign in [Sign::Minus, Sign::Plus] {
            let tx = polar::transform(&x, sign).abs();
            let ty = polar::transform(&y, sign).abs();
            let (slack, _) = stop_loss_slack(&tx, &ty);
            worst = worst.min(slack);
            if slack < -1e-9 {
                failures += 1;
            }
        }
    }
    (
        failures == 0,
        format!("200 pairs, worst stop-loss slack {worst:.3e}"),
    )
}

struct Ac3Pair {
    name: String,
    smaller: Channel,
    larger: Channel,
}

fn ac3_pairs() -> Vec<Ac3Pair> {
    let mut pairs = Vec::new();
    for p in [0.25, 0.5] {
        pairs.push(Ac3Pair {
            name: format!("BSC({})/Z({p})", p / 2.0),
            smaller: Channel::bsc(p / 2.0).unwrap(),
            larger: Channel::z(p).unwrap(),
        });
    }
    pairs.push(Ac3Pair {
        name: "BEC(0.5)/BEC(0.3)".into(),
        smaller: Channel::bec(0.5).unwrap(),
        larger: Channel::bec(0.3).unwrap(),
    });
    let mut rng = common::rng(3);
    for i in 0..20 {
        let (v, w) = common::degraded_pair(&mut rng, 5);
        pairs.push(Ac3Pair {
            name: format!("random #{i}"),
            smaller: v,
            larger: w,
        });
    }
    pairs
}

fn recheck_member(w: &Channel, s: &SignSequence, phi: &Functional, eps: f64) -> bool {
    let budget = Budget::Atoms(1024);
    let root = w.delta_distribution().quantize(1024).unwrap();
    let d = synthesize(&root, s, budget).unwrap();
    d.expectation(phi) >= 1.0 - eps - MEMBERSHIP_SLACK
}

fn ac3() -> Outcome {
    const DEPTH: usize = 8;
    let budget = Budget::default();
    let mut checks = 0;
    let mut raw = 0;
    let mut confirmed = Vec::new();
    for pair in ac3_pairs() {
        let ts = SynthesisTree::build(&pair.smaller.delta_distribution(), DEPTH, budget).unwrap();
        let tl = SynthesisTree::build(&pair.larger.delta_distribution(), DEPTH, budget).unwrap();
        for n in 1..=DEPTH {
            for phi in Functional::builtins() {
                for eps in [0.5, 0.2, 0.1, 0.01] {
                    let a = InfoSet::from_tree(&ts, n, &phi, eps).unwrap();
                    let b = InfoSet::from_tree(&tl, n, &phi, eps).unwrap();
                    let c = polar_order_core::containment(&a, &b).unwrap();
                    checks += 1;
                    for v in c.violations {
                        raw += 1;
                        if recheck_member(&pair.smaller, &v.sequence, &phi, eps)
                            && !recheck_member(&pair.larger, &v.sequence, &phi, eps)
                        {
                            confirmed.push(format!("{} {} {phi} eps={eps}", pair.name, v.sequence));
                        }
                    }
                }
            }
        }
    }
    (
        confirmed.is_empty(),
        format!(
            "23 pairs, {checks} containments, {raw} quantized violations, {} confirmed at budget 1024{}",
            confirmed.len(),
            confirmed.first().map(|c| format!(" (first: {c})")).unwrap_or_default()
        ),
    )
}

fn same_law(a: &DeltaDistribution, b: &DeltaDistribution, tol: f64) -> bool {
    a.len() == b.len()
        && a.atoms()
            .iter()
            .zip(b.atoms())
            .all(|(x, y)| (x.value - y.value).abs() <= tol && (x.weight - y.weight).abs() <= tol)
}

fn weight_at(d: &DeltaDistribution, v: f64) -> f64 {
    d.atoms()
        .iter()
        .filter(|a| (a.value - v).abs() < 1e-12)
        .map(|a| a.weight)
        .sum()
}

fn ac4() -> Outcome {
    let mut channels = vec![
        Channel::bsc(0.11).unwrap(),
        Channel::bec(0.3).unwrap(),
        Channel::z(0.4).unwrap(),
    ];
    let mut rng = common::rng(4);
    channels.extend((0..20).map(|_| common::channel(&mut rng, 4)));
    let mut bad = Vec::new();
    for (i, w) in channels.iter().enumerate() {
        let d = w.delta_distribution();
        let minus = channel_minus(w, DEFAULT_OUTPUT_CAP)
            .unwrap()
            .delta_distribution();
        let plus = channel_plus(w, DEFAULT_OUTPUT_CAP)
            .unwrap()
            .delta_distribution();
        if !same_law(&minus, &polar::minus_transform(&d), 1e-12) {
            bad.push(format!("minus #{i}"));
        }
        if !same_law(&plus, &polar::plus_transform(&d), 1e-12) {
            bad.push(format!("plus #{i}"));
        }
    }
    for eps in [0.0, 0.1, 0.3, 0.5, 0.77, 1.0] {
        let d = Channel::bec(eps).unwrap().delta_distribution();
        let minus = polar::minus_transform(&d);
        let plus = polar::plus_transform(&d);
        if (weight_at(&minus, 0.0) - (2.0 * eps - eps * eps)).abs() > 1e-12
            || (weight_at(&plus, 0.0) - eps * eps).abs() > 1e-12
        {
            bad.push(format!("BEC closed form eps={eps}"));
        }
    }
    (
        bad.is_empty(),
        if bad.is_empty() {
            "23 channels agree atomwise, BEC recursions exact".into()
        } else {
            format!("{} disagreements, first: {}", bad.len(), bad[0])
        },
    )
}

fn ac5() -> Outcome {
    let phis = [
        Functional::power(2.0).unwrap(),
        Functional::BhattacharyyaComplement,
        Functional::Capacity,
        Functional::Variational,
    ];
    let d1: Vec<f64> = (0..201).map(|i| -1.0 + i as f64 / 100.0).collect();
    let d2: Vec<f64> = (0..21).map(|i| -1.0 + i as f64 / 10.0).collect();
    let mut worst = f64::INFINITY;
    for phi in &phis {
        let f = |a: f64, b: f64| f_plus_compose(phi, a, b);
        for &b in &d2 {
            for w in d1.windows(3) {
                worst = worst.min(f(w[0], b) - 2.0 * f(w[1], b) + f(w[2], b));
            }
        }
        for &a in &d1 {
            for w in d2.windows(3) {
                worst = worst.min(f(a, w[0]) - 2.0 * f(a, w[1]) + f(a, w[2]));
            }
        }
    }
    let mut rng = common::rng(5);
    let mut asym = 0.0f64;
    for _ in 0..1000 {
        let a = rng.gen_range(-1.0..=1.0);
        let b = rng.gen_range(-1.0..=1.0);
        for phi in &phis {
            asym = asym.max((f_plus_compose(phi, a, b) - f_plus_compose(phi, -a, b)).abs());
        }
    }
    (
        worst >= -1e-8 && asym <= 1e-12,
        format!("min second difference {worst:.3e}, max asymmetry {asym:.3e}"),
    )
}

fn kernel_residual(x: &DeltaDistribution, y: &DeltaDistribution, w: &Witness) -> f64 {
    let Witness::MeanPreservingKernel(k) = w else {
        return f64::INFINITY;
    };
    let mut r = 0.0f64;
    for (i, row) in k.rows().iter().enumerate() {
        r = r.max((row.iter().sum::<f64>() - 1.0).abs());
        let m: f64 = row.iter().zip(y.atoms()).map(|(t, a)| t * a.value).sum();
        r = r.max((m - x.atoms()[i].value).abs());
        r = r.max(row.iter().fold(0.0f64, |acc, &t| acc.max(-t)));
    }
    for (j, a) in y.atoms().iter().enumerate() {
        let q: f64 = x
            .atoms()
            .iter()
            .zip(k.rows())
            .map(|(b, row)| b.weight * row[j])
            .sum();
        r = r.max((q - a.weight).abs());
    }
    r
}

fn ac6() -> Outcome {
    let mut rng = common::rng(6);
    let mut false_pos = 0;
    let mut conclusive = 0;
    for i in 0..500 {
        let k = rng.gen_range(1..=6);
        let (x, y) = match i % 4 {
            0 => (
                common::dist(&mut rng, k, 0.0, 1.0),
                common::dist(&mut rng, k, 0.0, 1.0),
            ),
            1 => {
                let x = common::dist(&mut rng, k, -1.0, 1.0);
                let y = common::spread(&mut rng, &x);
                (x, y)
            }
            2 => {
                let x = common::dist(&mut rng, k, 0.0, 0.8);
                let y = common::dist(&mut rng, k, 0.2, 1.0);
                (x, y)
            }
            _ => {
                let (v, w) = common::degraded_pair(&mut rng, 5);
                (v.delta_distribution().abs(), w.delta_distribution().abs())
            }
        };
        let cut = cut_criterion(&x, &y);
        if cut.method == Method::Cut {
            conclusive += 1;
            if cut.holds && common::icx_slack_oracle(&x, &y) < -1e-12 {
                false_pos += 1;
            }
        }
    }

    let mut disagree = 0;
    let mut worst_residual = 0.0f64;
    let mut kernels = 0;
    for i in 0..200 {
        let k = rng.gen_range(1..=6);
        let base = common::dist(&mut rng, k, -1.0, 1.0);
        let (x, y) = match i % 4 {
            0 | 1 => {
                let y = common::spread(&mut rng, &base);
                (base, y)
            }
            2 => {
                let y = common::spread(&mut rng, &base);
                (y, base)
            }
            _ => (base, common::dist(&mut rng, k, -1.0, 1.0)),
        };
        let b = blackwell_check(&x, &y).unwrap();
        if b.holds != cx_check(&x, &y).holds {
            disagree += 1;
        }
        if b.holds {
            kernels += 1;
            worst_residual = worst_residual.max(kernel_residual(&x, &y, &b.witness));
        }
    }

    let mut deg_failures = 0;
    let mut worst_mean = 0.0f64;
    for _ in 0..200 {
        let (v, w) = common::degraded_pair(&mut rng, 5);
        let verdict = degradation_check(&w, &v).unwrap();
        let ok_kernel = match &verdict.witness {
            Witness::DegradingKernel(p) => {
                let back = w.degrade(p);
                back.is_ok_and(|b| {
                    b.row0()
                        .iter()
                        .chain(b.row1())
                        .zip(v.row0().iter().chain(v.row1()))
                        .all(|(a, c)| (a - c).abs() <= 1e-9)
                })
            }
            _ => false,
        };
        let (x, y) = (v.delta_distribution(), w.delta_distribution());
        worst_mean = worst_mean.max((x.mean() - y.mean()).abs());
        if !verdict.holds || !ok_kernel || !cx_check(&x, &y).holds {
            deg_failures += 1;
        }
    }
    (
        false_pos == 0 && disagree == 0 && worst_residual <= 1e-9 && deg_failures == 0 && worst_mean <= 1e-9,
        format!(
            "cut: {false_pos} false positives in {conclusive} conclusive of 500; blackwell: {disagree} disagreements, {kernels} kernels, residual {worst_residual:.2e}; degradation: {deg_failures} failures, mean gap {worst_mean:.2e}"
        ),
    )
}

fn ac7() -> Outcome {
    let mut rng = common::rng(7);
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let w = common::channel_upto(&mut rng, 6);
        let (a, b) = (w.delta_distribution(), w.symmetrize().delta_distribution());
        for phi in Functional::builtins() {
            worst = worst.max((a.expectation(&phi) - b.expectation(&phi)).abs());
        }
    }
    let mut thr_gap = 0.0f64;
    for p in PS {
        let t = z_bsc_thresholds(p, 1e-7).unwrap();
        thr_gap = thr_gap.max((t.symmetrization - p / 2.0).abs());
    }
    (
        worst <= 1e-12 && thr_gap <= 1e-6,
        format!("max E[phi] change {worst:.2e}, symmetrization threshold gap {thr_gap:.2e}"),
    )
}

fn ac8() -> Outcome {
    let mut rng = common::rng(8);
    let mut failures = 0;
    for _ in 0..50 {
        let w = common::channel_upto(&mut rng, 6);
        let d = w.delta_distribution();
        let ev = dominating_bec_variational(&w);
        let bv = Channel::bec(ev).unwrap().delta_distribution();
        if !icx_check(&d.abs(), &bv.abs()).holds {
            failures += 1;
        }
        let eb = dominating_bec_bhattacharyya(&w);
        let bb = Channel::bec(eb).unwrap().delta_distribution();
        if !icx_check(&d.bhattacharyya(), &bb.bhattacharyya()).holds {
            failures += 1;
        }
    }
    let mut self_gap = 0.0f64;
    for eps in [0.0, 0.1, 0.25, 0.5, 0.9, 1.0] {
        let b = Channel::bec(eps).unwrap();
        self_gap = self_gap
            .max((dominating_bec_variational(&b) - eps).abs())
            .max((dominating_bec_bhattacharyya(&b) - eps).abs());
    }
    (
        failures == 0 && self_gap <= 1e-15,
        format!("{failures} icx failures over 50 channels, BEC self gap {self_gap:.1e}"),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("AC1 Z/BSC thresholds", ac1, Duration::from_secs(1)),
        (
            "AC2 icx preserved by minus/plus",
            ac2,
            Duration::from_secs(10),
        ),
        (
            "AC3 information set containment",
            ac3,
            Duration::from_secs(60),
        ),
        ("AC4 channel vs delta recursions", ac4, Duration::MAX),
        ("AC5 f+ convexity and symmetry", ac5, Duration::MAX),
        ("AC6 cut, Blackwell, degradation", ac6, Duration::MAX),
        ("AC7 symmetrization invariance", ac7, Duration::MAX),
        ("AC8 BEC dominations", ac8, Duration::MAX),
    ];
    let mut all = true;
    for (name, run, limit) in criteria {
        let start = Instant::now();
        let (ok, detail) = run();
        let elapsed = start.elapsed();
        let in_time = elapsed < limit;
        let pass = ok && in_time;
        all &= pass;
        let limit_note = if limit == Duration::MAX {
            String::new()
        } else {
            format!(
                ", limit {:.0?}{}",
                limit,
                if in_time { "" } else { " EXCEEDED" }
            )
        };
        println!(
            "[{}] {name}: {detail} ({:.2?}{limit_note})",
            if pass { "PASS" } else { "FAIL" },
            elapsed
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
