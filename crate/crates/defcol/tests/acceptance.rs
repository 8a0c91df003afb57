//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero unless every criterion passes, apart from the known deviations
//! listed below, which must still fail.

use std::time::{Duration, Instant};

use defcol::sweep::{self, Family, SweepSpec};
use defcol_core::bounds::{
    bound_report, ceil_bound, hoffman_bilu, inertia_chromatic_bound, inertia_counts, wocjan_elphick,
    BoundKind, WeightedCompatibleMatrix,
};
use defcol_core::colouring::{check, check_proper, colour_set};
use defcol_core::families::{
    bowtie, complete, complete_bipartite, cycle, empty, line_k5, line_k5_two_factor_colours, line_paley9,
    matching_join, matching_join_weights,
};
use defcol_core::generate::connected_graphs_up_to;
use defcol_core::graph::{lexicographic_product, strong_product};
use defcol_core::hoffman::diagnose_hoffman;
use defcol_core::solver::{chromatic, fractional_chromatic, Limits};
use defcol_core::spectra::{eigensolve, spectrum, MatrixKind};
use defcol_core::transfer::{build_incidence, descend, replay};
use defcol_core::{Colouring, Graph, Mode};
use rand::rngs::StdRng;
use rand::{RngExt, SeedableRng};

type Check = fn() -> Result<String, String>;

struct Criterion {
    id: u32,
    title: &'static str,
    limit: Duration,
    check: Check,
}

/// Criteria whose stated expectation disagrees with what the code computes,
/// with the reason. These are reported as FAIL and must keep failing.
const KNOWN_DEVIATIONS: &[(u32, &str)] = &[(
    11,
    "C4⊠K_{2,2} has λ1 = 8 and λn = -4, so the 2-improper Hoffman bound is (8+4)/(2+4) = 2, not 1.2, \
     and an optimal 2-colouring meets it",
)];

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Debug>(e: E) -> String {
    format!("{e:?}")
}

fn solve(g: &Graph, mode: Mode) -> Result<(usize, Colouring), String> {
    let r = chromatic(g, mode, &Limits::with_cap(64)).map_err(err)?;
    let r = r.solved().ok_or("solver stopped early")?.clone();
    ensure(check(g, &r.witness, mode).map_err(err)?.is_valid(), || format!("invalid witness under {mode:?}"))?;
    Ok((r.value, r.witness))
}

fn close_all(got: &[f64], want: &[f64], tol: f64) -> Result<(), String> {
    ensure(got.len() == want.len() && got.iter().zip(want).all(|(a, b)| (a - b).abs() <= tol), || {
        format!("eigenvalues {got:?} differ from {want:?} by more than {tol}")
    })
}

fn random_corpus() -> Vec<Graph> {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut out = Vec::new();
    while out.len() < 200 {
        let n = rng.random_range(2..=8usize);
        let p: f64 = rng.random_range(0.2..0.9);
        let g = Graph::from_fn(n, |_, _| rng.random_bool(p));
        if g.is_connected() {
            out.push(g);
        }
    }
    out
}

fn bowtie_spectrum() -> Result<String, String> {
    let s = spectrum(&bowtie(), MatrixKind::Adjacency).map_err(err)?;
    close_all(&s.values, &[2.561553, 1.0, -1.0, -1.0, -1.561553], 1e-5)?;
    Ok(format!("{:?}", s.values))
}

fn weighted_inertia() -> Result<String, String> {
    let g = matching_join();
    let w = WeightedCompatibleMatrix::new(&g, matching_join_weights()).map_err(err)?;
    let values = eigensolve(w.matrix()).map_err(err)?.0.values;
    close_all(&values, &[4.01815, 2.57562, 1.16723, -0.27300, -1.00001, -1.50854, -2.36510, -2.61434], 1e-5)?;
    let (_, below) = inertia_counts(&w, 1).map_err(err)?;
    ensure(below == 4, || format!("{below} eigenvalues below -1"))?;
    let bound = inertia_chromatic_bound(&w, 1).map_err(err)?;
    ensure(bound == 2, || format!("inertia bound {bound}"))?;
    let (chi, _) = solve(&g, Mode::Improper(1))?;
    ensure(chi == 2, || format!("χ¹ = {chi}"))?;
    Ok("n⁻ = 4, bound 2, χ¹ = 2".into())
}

fn line_paley() -> Result<String, String> {
    let g = line_paley9();
    let s = spectrum(&g, MatrixKind::Adjacency).map_err(err)?;
    let mut want = vec![6.0];
    want.extend([3.0; 4]);
    want.extend([0.0; 4]);
    want.extend([-2.0; 9]);
    close_all(&s.values, &want, 1e-8)?;
    ensure(s.values.iter().all(|x| (x + 1.0).abs() > 1e-6), || "-1 is an eigenvalue".into())?;
    let h = hoffman_bilu(&g, 2).map_err(err)?;
    ensure((h - 2.0).abs() <= 1e-9, || format!("Hoffman bound {h}"))?;
    let (chi, c) = solve(&g, Mode::Clustered(3))?;
    ensure(chi == 2, || format!("χ^3̲ = {chi}"))?;
    Ok(format!("χ^3̲ = 2 witnessed by {:?}", c.as_slice()))
}

fn hoffman_product_identity() -> Result<String, String> {
    let mut worst = 0f64;
    for g in random_corpus() {
        let s = spectrum(&g, MatrixKind::Adjacency).map_err(err)?;
        let expected = 1.0 - s.largest() / s.smallest();
        for d in 1..=3 {
            let host = strong_product(&g, &complete(d + 1));
            let got = hoffman_bilu(&host, d).map_err(err)?;
            worst = worst.max((got - expected).abs());
        }
    }
    ensure(worst <= 1e-7, || format!("largest deviation {worst:e}"))?;
    Ok(format!("600 instances, largest deviation {worst:.1e}"))
}

fn wocjan_elphick_consistency() -> Result<String, String> {
    let (mut adjacency_gap, mut products) = (0f64, 0f64);
    for g in random_corpus() {
        let adj = spectrum(&g, MatrixKind::Adjacency).map_err(err)?;
        let l1 = adj.largest();
        let mu1 = spectrum(&g, MatrixKind::Laplacian).map_err(err)?.largest();
        let th1 = spectrum(&g, MatrixKind::SignlessLaplacian).map_err(err)?.largest();
        for d in 1..=3 {
            let host = strong_product(&g, &complete(d + 1));
            for h in [&g, &host] {
                let we = wocjan_elphick(h, d, 1).map_err(err)?;
                let a = we.adjacency_tail.ok_or("vacuous adjacency bound")?;
                adjacency_gap = adjacency_gap.max((a - hoffman_bilu(h, d).map_err(err)?).abs());
            }
            let we = wocjan_elphick(&host, d, 1).map_err(err)?;
            let lap = we.laplacian.ok_or("vacuous Laplacian bound")?;
            let sig = we.signless.ok_or("vacuous signless bound")?;
            products = products
                .max((lap - (1.0 + l1 / (mu1 - l1))).abs())
                .max((sig - (1.0 + l1 / (l1 + mu1 - th1))).abs());
        }
    }
    ensure(adjacency_gap <= 1e-9, || format!("m = 1 adjacency bound differs from Hoffman by {adjacency_gap:e}"))?;
    ensure(products <= 1e-7, || format!("product identities off by {products:e}"))?;
    Ok(format!("max deviations {adjacency_gap:.1e} and {products:.1e}"))
}

fn bound_soundness() -> Result<String, String> {
    let limits = Limits::default();
    let mut checked = 0;
    for g in connected_graphs_up_to(6) {
        for d in 0..=2 {
            let (chi, _) = solve(&g, Mode::Improper(d))?;
            let report = bound_report(&g, d, g.n(), &[], &limits).map_err(err)?;
            for e in &report.entries {
                let Some(c) = e.ceiling else { continue };
                let bad = match e.kind {
                    BoundKind::ChromaticLower => c > chi,
                    BoundKind::ChromaticUpper => c < chi,
                    BoundKind::SparseSetUpper => false,
                };
                ensure(!bad, || format!("{} (m {:?}) gives {c} against χ^{d} = {chi} on {:?}", e.name, e.m, g))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} bound values checked, zero violations"))
}

fn descent_correctness() -> Result<String, String> {
    let mut instances = 0;
    for g in connected_graphs_up_to(6) {
        let (chi, _) = solve(&g, Mode::Proper)?;
        for t in [2, 3] {
            let host = strong_product(&g, &complete(t));
            let (value, witness) = solve(&host, Mode::Clustered(t))?;
            ensure(value == chi, || format!("χ^{t}̲(G⊠K_t) = {value}, χ = {chi} on {g:?}"))?;
            let (out, trace) = descend(&g, &witness, t, 1).map_err(err)?;
            ensure(check_proper(&g, &out).map_err(err)?.is_valid(), || format!("descent not proper on {g:?}"))?;
            ensure(out.num_colours() == chi, || format!("descent used {} colours on {g:?}", out.num_colours()))?;
            let (flat, replayed) = replay(&g, &witness, t, &trace).map_err(err)?;
            ensure(replayed == out, || "replayed trace disagrees".into())?;
            ensure(build_incidence(&g, &flat, t).map_err(err)?.is_acyclic(), || "cycles survive elimination".into())?;
            for v in 0..g.n() {
                let before = colour_set(&witness, t, v).map_err(err)?;
                let after = colour_set(&flat, t, v).map_err(err)?;
                ensure(after.is_subset(&before), || format!("colour set of {v} grew"))?;
                ensure(before.contains(&out.colour(v)), || format!("vertex {v} got a foreign colour"))?;
            }
            ensure(check(&host, &flat, Mode::Clustered(t)).map_err(err)?.is_valid(), || "elimination broke clustering".into())?;
            instances += 1;
        }
    }
    Ok(format!("{instances} instances"))
}

fn conjecture_sweep() -> Result<String, String> {
    let mut spec = SweepSpec::new(Family::AllConnected { max_n: 5 }, vec![1, 2]);
    spec.timeout = Duration::from_secs(60);
    spec.jobs = std::thread::available_parallelism().map_or(1, |n| n.get());
    let result = sweep::run(&spec).map_err(err)?;
    let s = result.summary;
    ensure(s.counterexamples == 0 && s.timeouts == 0, || format!("{s:?}"))?;
    for (rec, g) in result.records.iter().zip(connected_graphs_up_to(5).iter().flat_map(|g| [g, g])) {
        ensure(sweep::recheck(g, rec).map_err(err)?, || format!("record for {} fails its recheck", rec.graph.graph6))?;
        ensure(!rec.proven.is_empty(), || format!("{} falls under no proven case", rec.graph.graph6))?;
    }
    Ok(format!("{} instances, all verified", s.instances))
}

fn fractional_equalities() -> Result<String, String> {
    let c5 = cycle(5);
    let a = fractional_chromatic(&c5, Mode::Proper).map_err(err)?.value;
    let b = fractional_chromatic(&strong_product(&c5, &complete(2)), Mode::Improper(1)).map_err(err)?.value;
    let c4 = cycle(4);
    let c = fractional_chromatic(&strong_product(&c4, &complete(2)), Mode::Clustered(2)).map_err(err)?.value;
    let d = fractional_chromatic(&c4, Mode::Proper).map_err(err)?.value;
    for (name, got, want) in [("χ_f(C5)", a, 2.5), ("χ_f^1(C5⊠K2)", b, 2.5), ("χ_f^2̲(C4⊠K2)", c, 2.0), ("χ_f(C4)", d, 2.0)] {
        ensure((got - want).abs() <= 1e-6, || format!("{name} = {got}"))?;
    }
    Ok(format!("{a}, {b}, {c} = {d}"))
}

fn lexicographic_example() -> Result<String, String> {
    let (strong, _) = solve(&strong_product(&complete(6), &complete(3)), Mode::Improper(2))?;
    ensure(strong == 6, || format!("χ²(K6⊠K3) = {strong}"))?;
    let lex = lexicographic_product(&complete(6), &empty(3));
    let (value, witness) = solve(&lex, Mode::Improper(2))?;
    ensure(value <= 5 && witness.num_colours() <= 5, || format!("χ²(K6[K̄3]) = {value}"))?;
    Ok(format!("χ²(K6⊠K3) = 6, χ²(K6[K̄3]) = {value} with a verified witness"))
}

fn hoffman_diagnostics() -> Result<String, String> {
    let lk5 = line_k5();
    let c = Colouring::new(line_k5_two_factor_colours()).map_err(err)?;
    let diag = diagnose_hoffman(&lk5, 2, &c).map_err(err)?;
    ensure(diag.equality, || format!("L(K5) bound {} vs {} colours", diag.bound, diag.colours))?;
    for (part, v) in [
        ("multiplicity", diag.multiplicity_ok),
        ("d-regular classes", diag.classes_regular),
        ("weight-regular partition", diag.weight_regular),
        ("regular structure", diag.regular_structure),
    ] {
        ensure(v == Some(true), || format!("L(K5): {part} check gave {v:?}"))?;
    }
    let g = strong_product(&cycle(4), &complete_bipartite(2, 2));
    let (chi, witness) = solve(&g, Mode::Improper(2))?;
    let diag = diagnose_hoffman(&g, 2, &witness).map_err(err)?;
    ensure(chi == 2, || format!("χ²(C4⊠K_{{2,2}}) = {chi}"))?;
    ensure((diag.bound - 1.2).abs() <= 1e-6 && !diag.equality, || {
        format!(
            "C4⊠K_{{2,2}} at d = 2: bound {:.6} (ceiling {}), equality {}, exact {chi}; expected bound 1.2 and no equality",
            diag.bound,
            ceil_bound(diag.bound),
            diag.equality
        )
    })?;
    Ok("L(K5) passes every part; C4⊠K_{2,2} has no equality".into())
}

fn criteria() -> Vec<Criterion> {
    let s = Duration::from_secs;
    vec![
        Criterion { id: 1, title: "bowtie spectrum", limit: s(1), check: bowtie_spectrum },
        Criterion { id: 2, title: "weighted inertia on 2K2∇2K2", limit: s(5), check: weighted_inertia },
        Criterion { id: 3, title: "line graph of Paley(9)", limit: s(30), check: line_paley },
        Criterion { id: 4, title: "Hoffman bound of G⊠K_{d+1}", limit: s(60), check: hoffman_product_identity },
        Criterion { id: 5, title: "eigenvalue-sum bounds at m = 1", limit: s(60), check: wocjan_elphick_consistency },
        Criterion { id: 6, title: "bound soundness, n ≤ 6", limit: s(600), check: bound_soundness },
        Criterion { id: 7, title: "clustered descent, n ≤ 6", limit: s(900), check: descent_correctness },
        Criterion { id: 8, title: "conjecture sweep, n ≤ 5", limit: s(1200), check: conjecture_sweep },
        Criterion { id: 9, title: "fractional equalities", limit: s(60), check: fractional_equalities },
        Criterion { id: 10, title: "K6[K̄3] against K6⊠K3", limit: s(300), check: lexicographic_example },
        Criterion { id: 11, title: "Hoffman equality diagnostics", limit: s(30), check: hoffman_diagnostics },
    ]
}

fn main() {
    let mut unexpected = Vec::new();
    for c in criteria() {
        let start = Instant::now();
        let result = (c.check)();
        let elapsed = start.elapsed();
        let outcome = match result {
            Ok(detail) if elapsed <= c.limit => Ok(detail),
            Ok(_) => Err(format!("took {:.2?}, limit {:.0?}", elapsed, c.limit)),
            Err(e) => Err(e),
        };
        let known = KNOWN_DEVIATIONS.iter().find(|(id, _)| *id == c.id);
        match (&outcome, known) {
            (Ok(detail), None) => println!("PASS {:>2} {} ({elapsed:.2?}): {detail}", c.id, c.title),
            (Err(e), None) => {
                println!("FAIL {:>2} {} ({elapsed:.2?}): {e}", c.id, c.title);
                unexpected.push(c.id);
            }
            (Err(e), Some((_, why))) => {
                println!("FAIL {:>2} {} ({elapsed:.2?}): {e} [known deviation: {why}]", c.id, c.title)
            }
            (Ok(detail), Some(_)) => {
                println!("PASS {:>2} {} ({elapsed:.2?}): {detail} [listed as a known deviation; remove it]", c.id, c.title);
                unexpected.push(c.id);
            }
        }
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected results for criteria {unexpected:?}");
        std::process::exit(1);
    }
}
