//! Sweeps testing `χ(G) = χ^d(G ⊠ K_{d+1})` over families of graphs.

use std::path::PathBuf;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use defcol_core::bounds::{bound_report, hoffman_bilu, BoundEntry};
use defcol_core::colouring::check;
use defcol_core::families::complete;
use defcol_core::generate::{connected_graphs_up_to, MAX_GENERATED};
use defcol_core::graph::strong_product;
use defcol_core::solver::{chromatic, clique_number, Limits, Outcome};
use defcol_core::{Colouring, Graph, Mode};
use serde::{Deserialize, Serialize};

use crate::error::CliError;
use crate::input;
use crate::report::GraphInfo;

/// Largest product order the sweep will hand to the solvers.
pub const PRODUCT_CAP: usize = 64;

#[derive(Debug, Clone)]
pub enum Family {
    List(Vec<Graph>),
    Graph6File(PathBuf),
    /// every connected graph on 1..=max_n vertices, up to isomorphism
    AllConnected { max_n: usize },
}

#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub family: Family,
    pub ds: Vec<usize>,
    /// extra cluster sizes t checked as `χ^t̲(G ⊠ K_t) = χ(G)`
    pub ts: Vec<usize>,
    pub timeout: Duration,
    pub jobs: usize,
    pub out: Option<PathBuf>,
}

impl SweepSpec {
    pub fn new(family: Family, ds: Vec<usize>) -> Self {
        SweepSpec { family, ds, ts: Vec::new(), timeout: Duration::from_secs(60), jobs: 1, out: None }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if let Family::AllConnected { max_n } = self.family {
            if max_n > MAX_GENERATED {
                return Err(CliError::usage(format!("exhaustive sweeps stop at n = {MAX_GENERATED}, got {max_n}")));
            }
        }
        if self.timeout.is_zero() {
            return Err(CliError::usage("timeout must be positive"));
        }
        if self.ds.is_empty() {
            return Err(CliError::usage("no values of d to sweep"));
        }
        if self.ts.contains(&0) {
            return Err(CliError::usage("cluster sizes must be at least 1"));
        }
        if self.jobs == 0 {
            return Err(CliError::usage("jobs must be at least 1"));
        }
        Ok(())
    }

    pub fn graphs(&self) -> Result<Vec<Graph>, CliError> {
        let graphs = match &self.family {
            Family::List(gs) => gs.clone(),
            Family::Graph6File(path) => input::graph6_file(path)?,
            Family::AllConnected { max_n } => connected_graphs_up_to(*max_n),
        };
        let widest = self.ds.iter().map(|d| d + 1).chain(self.ts.iter().copied()).max().unwrap_or(1);
        if let Some(g) = graphs.iter().find(|g| g.n() * widest > PRODUCT_CAP) {
            return Err(CliError::usage(format!(
                "a graph on {} vertices gives a product beyond {PRODUCT_CAP} vertices",
                g.n()
            )));
        }
        Ok(graphs)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Verified,
    Counterexample,
    Timeout,
}

/// Known reasons the equality must hold for an instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProvenCase {
    /// χ(G) ≤ 4
    ChromaticAtMostFour,
    /// ω(G) = χ(G)
    CliqueEqualsChromatic,
    /// the Hoffman bound of the product already forces χ(G) colours
    HoffmanTight,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClusteredCheck {
    pub t: usize,
    pub value: Option<usize>,
    pub witness: Option<Colouring>,
}

/// A product colouring using fewer than χ(G) colours.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub factor: usize,
    pub mode: Mode,
    pub colours: usize,
    pub colouring: Colouring,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConjectureRecord {
    pub graph: GraphInfo,
    pub d: usize,
    pub chromatic: Option<usize>,
    /// χ^d(G ⊠ K_{d+1})
    pub improper_product: Option<usize>,
    /// χ^{d+1}̲(G ⊠ K_{d+1})
    pub clustered_product: Option<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub clustered_extra: Vec<ClusteredCheck>,
    /// lower bounds on χ^d(G ⊠ K_{d+1})
    pub lower_bounds: Vec<BoundEntry>,
    pub status: Status,
    pub proven: Vec<ProvenCase>,
    pub proper_witness: Option<Colouring>,
    pub improper_witness: Option<Colouring>,
    pub clustered_witness: Option<Colouring>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub counterexample: Option<Counterexample>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub instances: usize,
    pub verified: usize,
    pub counterexamples: usize,
    pub timeouts: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub summary: Summary,
    pub records: Vec<ConjectureRecord>,
}

fn solve(g: &Graph, mode: Mode, limits: &Limits<'_>) -> Result<Option<(usize, Colouring)>, CliError> {
    Ok(match chromatic(g, mode, limits)? {
        Outcome::Solved(r) => Some((r.value, r.witness)),
        Outcome::Timeout(_) => None,
    })
}

/// One instance of the sweep.
pub fn check_instance(g: &Graph, d: usize, ts: &[usize], timeout: Duration) -> Result<ConjectureRecord, CliError> {
    let deadline = Instant::now() + timeout;
    let stop = move || Instant::now() >= deadline;
    let limits = Limits { cap: PRODUCT_CAP, node_limit: None, stop: Some(&stop) };
    let factor = d + 1;
    let host = strong_product(g, &complete(factor));

    let proper = solve(g, Mode::Proper, &limits)?;
    let improper = solve(&host, Mode::Improper(d), &limits)?;
    let clustered = solve(&host, Mode::Clustered(factor), &limits)?;
    let mut clustered_extra = Vec::new();
    for &t in ts {
        let r = solve(&strong_product(g, &complete(t)), Mode::Clustered(t), &limits)?;
        clustered_extra.push(ClusteredCheck { t, value: r.as_ref().map(|x| x.0), witness: r.map(|x| x.1) });
    }
    let lower_bounds = bound_report(&host, d, 3, &[], &limits)?.lower_bounds().cloned().collect();
    let omega = match g.n() {
        0 => Some(0),
        _ => clique_number(g, &limits)?.value(),
    };

    let chi = proper.as_ref().map(|x| x.0);
    let mut proven = Vec::new();
    if let Some(chi) = chi {
        if chi <= 4 {
            proven.push(ProvenCase::ChromaticAtMostFour);
        }
        if omega == Some(chi) {
            proven.push(ProvenCase::CliqueEqualsChromatic);
        }
        if g.edge_count() > 0 && defcol_core::bounds::ceil_bound(hoffman_bilu(&host, d)?) == chi {
            proven.push(ProvenCase::HoffmanTight);
        }
    }

    let timed_out = chi.is_none()
        || improper.is_none()
        || clustered.is_none()
        || clustered_extra.iter().any(|c| c.value.is_none());
    let counterexample = chi.and_then(|chi| {
        let below = |r: &Option<(usize, Colouring)>| r.as_ref().filter(|x| x.0 < chi).cloned();
        if let Some((colours, colouring)) = below(&improper) {
            return Some(Counterexample { factor, mode: Mode::Improper(d), colours, colouring });
        }
        if let Some((colours, colouring)) = below(&clustered) {
            return Some(Counterexample { factor, mode: Mode::Clustered(factor), colours, colouring });
        }
        clustered_extra.iter().find(|c| c.value.is_some_and(|v| v < chi)).map(|c| Counterexample {
            factor: c.t,
            mode: Mode::Clustered(c.t),
            colours: c.value.expect("checked above"),
            colouring: c.witness.clone().expect("solved checks carry witnesses"),
        })
    });
    let status = if counterexample.is_some() {
        Status::Counterexample
    } else if timed_out {
        Status::Timeout
    } else {
        Status::Verified
    };
    Ok(ConjectureRecord {
        graph: GraphInfo::of(g),
        d,
        chromatic: chi,
        improper_product: improper.as_ref().map(|x| x.0),
        clustered_product: clustered.as_ref().map(|x| x.0),
        clustered_extra,
        lower_bounds,
        status,
        proven,
        proper_witness: proper.map(|x| x.1),
        improper_witness: improper.map(|x| x.1),
        clustered_witness: clustered.map(|x| x.1),
        counterexample,
    })
}

/// Re-checks every witness in `rec` against `g`.
pub fn recheck(g: &Graph, rec: &ConjectureRecord) -> Result<bool, CliError> {
    let factor = rec.d + 1;
    let host = strong_product(g, &complete(factor));
    let fits = |c: &Option<Colouring>, value: Option<usize>, g: &Graph, mode: Mode| -> Result<bool, CliError> {
        Ok(match (c, value) {
            (Some(c), Some(v)) => check(g, c, mode)?.is_valid() && c.num_colours() == v,
            (None, None) => true,
            _ => false,
        })
    };
    let mut ok = fits(&rec.proper_witness, rec.chromatic, g, Mode::Proper)?
        && fits(&rec.improper_witness, rec.improper_product, &host, Mode::Improper(rec.d))?
        && fits(&rec.clustered_witness, rec.clustered_product, &host, Mode::Clustered(factor))?;
    for c in &rec.clustered_extra {
        ok &= fits(&c.witness, c.value, &strong_product(g, &complete(c.t)), Mode::Clustered(c.t))?;
    }
    if let Some(cx) = &rec.counterexample {
        let host = strong_product(g, &complete(cx.factor));
        ok &= check(&host, &cx.colouring, cx.mode)?.is_valid()
            && cx.colouring.num_colours() == cx.colours
            && rec.chromatic.is_some_and(|chi| cx.colours < chi);
    }
    Ok(ok && (rec.status == Status::Counterexample) == rec.counterexample.is_some())
}

/// Runs every (graph, d) instance on up to `spec.jobs` threads. Records come
/// back in input order: graphs outermost, then d.
pub fn run(spec: &SweepSpec) -> Result<SweepResult, CliError> {
    spec.validate()?;
    let graphs = spec.graphs()?;
    let tasks: Vec<(usize, usize)> =
        (0..graphs.len()).flat_map(|i| spec.ds.iter().map(move |&d| (i, d))).collect();
    let slots: Vec<Mutex<Option<Result<ConjectureRecord, CliError>>>> = tasks.iter().map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    std::thread::scope(|s| {
        for _ in 0..spec.jobs.min(tasks.len()).max(1) {
            s.spawn(|| loop {
                let k = next.fetch_add(1, Ordering::Relaxed);
                let Some(&(i, d)) = tasks.get(k) else { break };
                let rec = check_instance(&graphs[i], d, &spec.ts, spec.timeout);
                *slots[k].lock().expect("no panics while holding the slot") = Some(rec);
            });
        }
    });
    let records = slots
        .into_iter()
        .map(|m| m.into_inner().expect("slot lock").expect("every task ran"))
        .collect::<Result<Vec<_>, _>>()?;
    let mut summary = Summary { instances: records.len(), ..Summary::default() };
    for r in &records {
        match r.status {
            Status::Verified => summary.verified += 1,
            Status::Counterexample => summary.counterexamples += 1,
            Status::Timeout => summary.timeouts += 1,
        }
    }
    Ok(SweepResult { summary, records })
}

#[cfg(test)]
mod tests {
    use super::*;
    use defcol_core::families::{cycle, petersen};

    #[test]
    fn c5_at_d2() {
        let rec = check_instance(&cycle(5), 2, &[], Duration::from_secs(60)).unwrap();
        assert_eq!(rec.chromatic, Some(3));
        assert_eq!(rec.improper_product, Some(3));
        assert_eq!(rec.clustered_product, Some(3));
        assert_eq!(rec.status, Status::Verified);
        assert_eq!(rec.proven, vec![ProvenCase::ChromaticAtMostFour, ProvenCase::HoffmanTight]);
        assert!(recheck(&cycle(5), &rec).unwrap());
    }

    #[test]
    fn extra_cluster_sizes() {
        let rec = check_instance(&petersen(), 1, &[3], Duration::from_secs(60)).unwrap();
        assert_eq!(rec.clustered_extra[0].value, Some(3));
        assert!(recheck(&petersen(), &rec).unwrap());
    }

    #[test]
    fn validation() {
        let mut spec = SweepSpec::new(Family::AllConnected { max_n: 9 }, vec![1]);
        assert!(spec.validate().is_err());
        spec.family = Family::AllConnected { max_n: 3 };
        assert!(spec.validate().is_ok());
        spec.timeout = Duration::ZERO;
        assert!(spec.validate().is_err());
        let wide = SweepSpec::new(Family::List(vec![cycle(30)]), vec![2]);
        assert!(wide.graphs().is_err());
    }

    #[test]
    fn output_order_ignores_threads() {
        let mut spec = SweepSpec::new(Family::AllConnected { max_n: 4 }, vec![1, 2]);
        let serial = run(&spec).unwrap();
        spec.jobs = 4;
        let parallel = run(&spec).unwrap();
        assert_eq!(serial, parallel);
        assert_eq!(serial.summary.instances, 2 * (1 + 1 + 2 + 6));
        assert_eq!(serial.records[0].d, 1);
        assert_eq!(serial.records[1].d, 2);
    }

    #[test]
    fn tiny_timeout_still_self_certifies() {
        let rec = check_instance(&petersen(), 2, &[], Duration::from_nanos(1)).unwrap();
        assert_ne!(rec.status, Status::Counterexample);
        assert!(recheck(&petersen(), &rec).unwrap());
    }
}
