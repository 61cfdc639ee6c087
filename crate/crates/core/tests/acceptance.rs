//! Acceptance run: one PASS/FAIL line per criterion, exit status nonzero if
//! any criterion fails. Reference values come from oracles written here
//! (brute-force subgraph enumeration with Jacobi eigenvalues, direct tensor
//! evaluation), not from the library's own enumeration or root finder.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use powerspec::check::{check_property, random_instance, round_trip, trial_rng, CheckConfig, Outcome, Property};
use powerspec::power::{certify_spectrum, is_power_eigenvalue, power_spectrum, CertificationReport, PowerOptions};
use powerspec::spectral::{enumerate_roots, graph_spectrum, hopm_radius, RootClass};
use powerspec::tensor::check_copy_relations;
use powerspec::{Complex64, Error, Tolerances, UniformHypergraph, VertexTag};

const NU: f64 = 1.618_033_988_749_895;

struct Line {
    id: usize,
    ok: bool,
    detail: String,
    elapsed: Duration,
}

fn timed(id: usize, f: impl FnOnce() -> Result<String, String>) -> Line {
    let start = Instant::now();
    let r = f();
    let elapsed = start.elapsed();
    match r {
        Ok(detail) => Line { id, ok: true, detail, elapsed },
        Err(detail) => Line { id, ok: false, detail, elapsed },
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration, what: &str) -> Result<(), String> {
    ensure(elapsed < limit, || format!("{what} took {elapsed:?}, limit {limit:?}"))
}

// ---------- oracles ----------

/// Cyclic Jacobi eigenvalues of a real symmetric matrix.
fn jacobi_eigenvalues(mut a: Vec<Vec<f64>>) -> Vec<f64> {
    let n = a.len();
    for _ in 0..100 {
        let off: f64 = (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).map(|(i, j)| a[i][j] * a[i][j]).sum();
        if off < 1e-24 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k][p], a[k][q]);
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    (0..n).map(|i| a[i][i]).collect()
}

/// Sorted distinct values of `β^{2s}` over nonzero eigenvalues `β` of the
/// subgraphs of a graph: induced ones without isolated vertices, or all
/// edge-generated ones.
fn oracle_bases(n: usize, edges: &[(usize, usize)], s: usize, induced: bool) -> Vec<f64> {
    let mut subgraphs: Vec<Vec<(usize, usize)>> = Vec::new();
    if induced {
        for mask in 1u32..(1 << n) {
            let es: Vec<(usize, usize)> = edges.iter().copied().filter(|&(a, b)| mask >> a & 1 == 1 && mask >> b & 1 == 1).collect();
            let covered = es.iter().fold(0u32, |m, &(a, b)| m | 1 << a | 1 << b);
            if !es.is_empty() && covered == mask {
                subgraphs.push(es);
            }
        }
    } else {
        for mask in 1u32..(1 << edges.len()) {
            subgraphs.push(edges.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect());
        }
    }
    let mut out: Vec<f64> = Vec::new();
    for es in subgraphs {
        let mut a = vec![vec![0.0; n]; n];
        for &(u, v) in &es {
            a[u][v] = 1.0;
            a[v][u] = 1.0;
        }
        for b in jacobi_eigenvalues(a) {
            if b.abs() > 1e-9 {
                let c = b.powi(2 * s as i32);
                if !out.iter().any(|x| (x - c).abs() < 1e-7 * c.max(1.0)) {
                    out.push(c);
                }
            }
        }
    }
    out.sort_by(f64::total_cmp);
    out
}

/// `(Ax)_i = Σ_{e∋i} Π_{j∈e−i} x_j`, straight from the definition.
fn direct_residual(h: &UniformHypergraph, lambda: Complex64, x: &[Complex64]) -> f64 {
    let scale = x.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let x: Vec<Complex64> = x.iter().map(|z| z / scale).collect();
    let mut worst = 0.0f64;
    for i in 0..h.n() {
        let mut ax = Complex64::new(0.0, 0.0);
        for e in h.edges() {
            if e.contains(i) {
                let mut t = Complex64::new(1.0, 0.0);
                for j in e.iter().filter(|&j| j != i) {
                    t *= x[j];
                }
                ax += t;
            }
        }
        worst = worst.max((ax - lambda * x[i].powi(h.r() as i32 - 1)).norm());
    }
    worst
}

fn graph_edges(g: &UniformHypergraph) -> Vec<(usize, usize)> {
    g.edges().iter().map(|e| (e.vertices()[0], e.vertices()[1])).collect()
}

fn library_bases(h: &UniformHypergraph, s: usize, k: usize) -> Result<Vec<RootClass>, String> {
    let res = power_spectrum(h, s, k, &PowerOptions::default()).map_err(|e| e.to_string())?;
    Ok(res.classes.iter().map(|c| c.class).collect())
}

fn same_real_classes(got: &[RootClass], want: &[f64], k: usize) -> Result<(), String> {
    let mut g: Vec<Complex64> = got.iter().map(|c| c.base).collect();
    g.sort_by(|a, b| a.re.total_cmp(&b.re));
    ensure(got.iter().all(|c| c.order == k), || format!("orders {:?}, expected {k}", got.iter().map(|c| c.order).collect::<Vec<_>>()))?;
    ensure(
        g.len() == want.len() && g.iter().zip(want).all(|(a, b)| (a - b).norm() < 1e-7),
        || format!("classes {g:?}, expected {want:?}"),
    )
}

// ---------- criteria ----------

fn criterion_1() -> Result<String, String> {
    let start = Instant::now();
    let tol = Tolerances::default();
    let sp = graph_spectrum(&UniformHypergraph::cycle(4)).map_err(|e| e.to_string())?.nonzero(&tol);
    let elapsed = start.elapsed();
    let mut v: Vec<f64> = sp.iter().map(|z| z.re).collect();
    v.sort_by(f64::total_cmp);
    ensure(sp.iter().all(|z| z.im.abs() < 1e-8), || format!("complex values {sp:?}"))?;
    ensure(v.len() == 2 && (v[0] + 2.0).abs() < 1e-8 && (v[1] - 2.0).abs() < 1e-8, || format!("got {v:?}"))?;
    within(elapsed, Duration::from_millis(10), "graph_spectrum")?;
    Ok(format!("nonzero spectrum {v:?} in {elapsed:?}"))
}

fn criterion_2() -> Result<String, String> {
    let start = Instant::now();
    let c4 = UniformHypergraph::cycle(4);
    let got = library_bases(&c4, 1, 3)?;
    let want = oracle_bases(4, &graph_edges(&c4), 1, true);
    ensure(want.len() == 3 && want.iter().zip([1.0, 2.0, 4.0]).all(|(a, b)| (a - b).abs() < 1e-7), || format!("oracle gave {want:?}"))?;
    same_real_classes(&got, &want, 3)?;
    let opts = PowerOptions::default();
    let yes = is_power_eigenvalue(&c4, 1, 3, Complex64::new(2f64.cbrt(), 0.0), &opts).map_err(|e| e.to_string())?;
    ensure(yes.holds, || "∛2 not reported".into())?;
    let no_class = RootClass::new(Complex64::new(NU * NU, 0.0), 3).map_err(|e| e.to_string())?;
    for z in enumerate_roots(&no_class) {
        let m = is_power_eigenvalue(&c4, 1, 3, z, &opts).map_err(|e| e.to_string())?;
        ensure(!m.holds, || format!("cube root {z} of ν² reported"))?;
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(1), "criterion 2")?;
    Ok(format!("classes c ∈ {{1, 2, 4}} of order 3, ∛2 in, ν^(2/3) roots out, {elapsed:?}"))
}

fn criterion_3() -> Result<String, String> {
    let c4 = UniformHypergraph::cycle(4);
    let target = NU * NU;
    for k in 4..=6 {
        let got = library_bases(&c4, 1, k)?;
        ensure(
            got.iter().any(|c| c.order == k && (c.base - target).norm() < 1e-7),
            || format!("k={k}: no class ν², got {got:?}"),
        )?;
        let want = oracle_bases(4, &graph_edges(&c4), 1, false);
        same_real_classes(&got, &want, k)?;
    }
    Ok("class ν² present for k = 4, 5, 6; full class sets match the oracle".into())
}

fn criterion_4() -> Result<String, String> {
    let start = Instant::now();
    for n in 3..=6 {
        let star = UniformHypergraph::star(n);
        for k in 3..=5 {
            let got = library_bases(&star, 1, k)?;
            let want: Vec<f64> = (1..n).map(|p| p as f64).collect();
            same_real_classes(&got, &want, k).map_err(|e| format!("S{n} k={k}: {e}"))?;
            let oracle = oracle_bases(n, &graph_edges(&star), 1, k == 3);
            same_real_classes(&got, &oracle, k).map_err(|e| format!("S{n} k={k} vs oracle: {e}"))?;
        }
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(5), "criterion 4")?;
    Ok(format!("S3..S6, k = 3..5 all equal {{1, …, n−1}}, {elapsed:?}"))
}

fn criterion_5_cases() -> Vec<(&'static str, UniformHypergraph, usize, usize)> {
    let mut cases = Vec::new();
    for k in 3..=5 {
        cases.push(("C4", UniformHypergraph::cycle(4), 1, k));
    }
    for s in 1..=2 {
        for k in [2 * s, 2 * s + 1, 2 * s + 2] {
            cases.push(("S4", UniformHypergraph::star(4), s, k));
        }
    }
    for k in 3..=4 {
        cases.push(("P4", UniformHypergraph::path(4), 1, k));
    }
    cases
}

fn criterion_5(reports: &mut Vec<(String, CertificationReport)>) -> Result<String, String> {
    let start = Instant::now();
    let mut classes = 0;
    let mut pairs = 0;
    let mut worst = 0.0f64;
    for (name, h, s, k) in criterion_5_cases() {
        let label = format!("{name} s={s} k={k}");
        let rep = certify_spectrum(&h, s, k, &PowerOptions::default()).map_err(|e| format!("{label}: {e}"))?;
        if let Some(c) = rep.classes.iter().find(|c| !c.certified) {
            return Err(format!("{label}: class {:?} failed: {}", c.class, c.failure.as_deref().unwrap_or("")));
        }
        for c in &rep.classes {
            ensure(c.members.len() == c.class.order, || format!("{label}: {} of {} members", c.members.len(), c.class.order))?;
            for m in &c.members {
                let r = direct_residual(&rep.power, m.pair.lambda, &m.pair.vector);
                ensure(r < 1e-8, || format!("{label}: λ = {} residual {r:.3e}", m.lambda))?;
                ensure(c.class.contains(m.pair.lambda, 1e-7), || format!("{label}: λ = {} outside its class", m.lambda))?;
                worst = worst.max(r);
                pairs += 1;
            }
        }
        classes += rep.classes.len();
        reports.push((label, rep));
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(30), "criterion 5")?;
    Ok(format!("{classes}/{classes} classes, {pairs} eigenpairs, max residual {worst:.2e}, {elapsed:?}"))
}

fn criterion_6() -> Result<String, String> {
    let cfg = CheckConfig { seed: 6, uniformities: vec![2], max_n: 6, ..Default::default() };
    let tol = Tolerances::default();
    let mut passed = 0;
    for t in 0..100 {
        let h = random_instance(&cfg, t);
        match round_trip(&h, &mut trial_rng(cfg.seed, t, 99), &tol) {
            Outcome::Pass => passed += 1,
            Outcome::Skip(why) => return Err(format!("instance {t} skipped: {why}")),
            Outcome::Fail(why) => return Err(format!("instance {t}: {why}")),
        }
    }
    Ok(format!("{passed}/100 round trips with |β'^rs − β^rs| < 1e-8"))
}

fn criterion_7() -> Result<String, String> {
    let cfg = CheckConfig { seed: 7, ..Default::default() };
    let mut by_r = [0usize; 4];
    for t in 0..500 {
        let h = random_instance(&cfg, t);
        by_r[h.r()] += 1;
        for p in [Property::EdgeVertexRemoval, Property::EdgeRemovalPower, Property::VertexRemovalPower] {
            match check_property(p, &h, &mut trial_rng(cfg.seed, t, 50 + p as u64), &cfg) {
                Outcome::Pass => {}
                other => return Err(format!("instance {t} {p}: {other:?}")),
            }
        }
    }
    ensure(by_r[2] > 0 && by_r[3] > 0, || format!("uniformity mix {by_r:?}"))?;
    Ok(format!("500 instances ({} with r=2, {} with r=3), 1500 identities, 0 failures", by_r[2], by_r[3]))
}

fn criterion_8() -> Result<String, String> {
    let start = Instant::now();
    let s4 = UniformHypergraph::star(4).generalized_power(1, 4).map_err(|e| e.to_string())?;
    let a = hopm_radius(&s4).map_err(|e| e.to_string())?;
    let t1 = start.elapsed();
    let start = Instant::now();
    let b = hopm_radius(&UniformHypergraph::cycle(4)).map_err(|e| e.to_string())?;
    let t2 = start.elapsed();
    ensure((a - 3f64.powf(0.25)).abs() < 1e-6, || format!("(S4)^4 radius {a}"))?;
    ensure((b - 2.0).abs() < 1e-6, || format!("C4 radius {b}"))?;
    within(t1, Duration::from_secs(1), "(S4)^4")?;
    within(t2, Duration::from_secs(1), "C4")?;
    Ok(format!("(S4)^4: {a:.9} ({t1:?}), C4: {b:.9} ({t2:?})"))
}

fn criterion_9(reports: &[(String, CertificationReport)]) -> Result<String, String> {
    let tol = Tolerances::default();
    let mut checked = 0;
    let mut mutated = 0;
    for (label, rep) in reports {
        let tags = rep.power.provenance().ok_or("power hypergraph lost its tags")?;
        for c in &rep.classes {
            for m in &c.members {
                check_copy_relations(&rep.power, &m.pair, &tol).map_err(|e| format!("{label}: λ = {}: {e}", m.lambda))?;
                checked += 1;
                // scale one nonzero copy or padding entry by 1.1
                let Some(w) = (0..rep.power.n())
                    .find(|&w| !matches!(tags[w], VertexTag::Main(_)) && m.pair.vector[w].norm() > 1e-6)
                else {
                    continue;
                };
                let mut bad = m.pair.clone();
                bad.vector[w] *= 1.1;
                match check_copy_relations(&rep.power, &bad, &tol) {
                    Err(Error::RelationViolated { .. }) => mutated += 1,
                    other => return Err(format!("{label}: perturbed vector accepted: {other:?}")),
                }
            }
        }
    }
    ensure(mutated > 0, || "no perturbation was possible".into())?;
    Ok(format!("{checked} certified eigenpairs pass, {mutated}/{mutated} perturbed vectors rejected"))
}

fn main() -> ExitCode {
    let mut reports = Vec::new();
    let mut lines = vec![
        timed(1, criterion_1),
        timed(2, criterion_2),
        timed(3, criterion_3),
        timed(4, criterion_4),
        timed(5, || criterion_5(&mut reports)),
        timed(6, criterion_6),
        timed(7, criterion_7),
        timed(8, criterion_8),
    ];
    lines.push(timed(9, || criterion_9(&reports)));
    let mut failed = 0;
    for l in &lines {
        println!(
            "criterion {}: {}  {}  [{:.3}s]",
            l.id,
            if l.ok { "PASS" } else { "FAIL" },
            l.detail,
            l.elapsed.as_secs_f64()
        );
        failed += usize::from(!l.ok);
    }
    println!("acceptance: {}/{} criteria pass", lines.len() - failed, lines.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
