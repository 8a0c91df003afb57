use super::*;
use crate::colouring::{check, lift_colouring, Mode};
use crate::families::*;
use crate::generate::connected_graphs;
use crate::solver::{chromatic, Limits};
use alloc::vec;

fn col(v: &[u32]) -> Colouring {
    Colouring::new(v.to_vec()).unwrap()
}

/// C4 with t = 2: colour 1 on (0,0),(1,0),(2,·) and colour 2 on (0,1),(1,1),(3,·).
fn interleaved_c4() -> Colouring {
    col(&[1, 2, 1, 2, 1, 1, 2, 2])
}

fn optimal_clustered(g: &Graph, t: usize, param: usize) -> Colouring {
    let host = strong_product(g, &complete(t));
    chromatic(&host, Mode::Clustered(param), &Limits::default()).unwrap().unwrap_solved().witness
}

#[test]
fn incidence_examples() {
    let k2 = complete(2);
    let inc = build_incidence(&k2, &lift_colouring(&col(&[1, 2]), 2), 2).unwrap();
    assert_eq!(inc.components.len(), 2);
    assert!(inc.components.iter().all(|c| c.covers.len() == 1));
    assert!(inc.is_acyclic());

    let inc = build_incidence(&cycle(3), &col(&[1, 1, 1]), 1).unwrap();
    assert_eq!(inc.components.len(), 1);
    assert_eq!(inc.components[0].covers.len(), 3);
    assert!(inc.is_acyclic());

    let inc = build_incidence(&cycle(4), &interleaved_c4(), 2).unwrap();
    assert_eq!(inc.cycle_rank(), 1);
    let (verts, comps) = inc.shortest_cycle().unwrap();
    assert_eq!(verts, vec![0, 1]);
    assert_eq!(comps.len(), 2);

    assert!(matches!(build_incidence(&cycle(4), &col(&[1, 2, 1]), 2), Err(Error::PartialColouring { .. })));
}

#[test]
fn one_colour_per_incidence() {
    // each base vertex meets at most one component of each colour
    let g = petersen();
    let c = optimal_clustered(&g, 2, 2);
    let inc = build_incidence(&g, &c, 2).unwrap();
    for v in 0..g.n() {
        let colours: Vec<u32> = inc.components.iter().filter(|k| k.covers.contains(v)).map(|k| k.colour).collect();
        let distinct: BTreeSet<u32> = colours.iter().copied().collect();
        assert_eq!(colours.len(), distinct.len());
    }
}

#[test]
fn elimination_examples() {
    let lifted = lift_colouring(&col(&[1, 2, 1, 2, 3]), 2);
    let (out, trace) = eliminate_cycles(&cycle(5), &lifted, 2, 2).unwrap();
    assert_eq!(out, lifted);
    assert!(trace.eliminations.is_empty());

    let c = interleaved_c4();
    let (out, trace) = eliminate_cycles(&cycle(4), &c, 2, 4).unwrap();
    assert_eq!(trace.eliminations.len(), 1);
    let step = &trace.eliminations[0];
    assert_eq!((step.cycle.clone(), step.shift, step.pivot), (vec![0, 1], 1, 0));
    // the cycle runs 0 → (colour 2) → 1 → (colour 1) → 0, so 0 trades its 2 for a 1
    assert_eq!(step.colours, vec![2, 1]);
    assert_eq!(out, col(&[1, 1, 2, 2, 1, 1, 2, 2]));
    assert!(build_incidence(&cycle(4), &out, 2).unwrap().is_acyclic());
    let host = strong_product(&cycle(4), &complete(2));
    assert!(check_clustered(&host, &out, 4).unwrap().is_valid());

    // invalid input is rejected
    assert!(eliminate_cycles(&cycle(4), &c, 2, 3).is_err());
}

#[test]
fn elimination_on_solver_instance() {
    let g = cycle(5);
    let c = optimal_clustered(&g, 3, 3);
    let (out, _) = eliminate_cycles(&g, &c, 3, 3).unwrap();
    assert!(build_incidence(&g, &out, 3).unwrap().is_acyclic());
    for v in 0..5 {
        assert!(colour_set(&out, 3, v).is_subset(&colour_set(&c, 3, v)));
    }
}

#[test]
fn small_component_examples() {
    let lifted = lift_colouring(&col(&[1, 2, 1, 2]), 3);
    let comp = find_small_component(&cycle(4), &lifted, 3, 1).unwrap();
    assert_eq!(comp.covers.len(), 1);

    let comp = find_small_component(&cycle(3), &col(&[1, 1, 1]), 1, 3).unwrap();
    assert_eq!(comp.covers.len(), 3);
    assert!(matches!(find_small_component(&cycle(3), &col(&[1, 1, 1]), 1, 2), Err(Error::Certification(_))));

    let g = petersen();
    let c = optimal_clustered(&g, 2, 2);
    let (nice, _) = eliminate_cycles(&g, &c, 2, 2).unwrap();
    let comp = find_small_component(&g, &nice, 2, 1).unwrap();
    assert_eq!(comp.covers.len(), 1);

    assert!(matches!(find_small_component(&cycle(4), &interleaved_c4(), 2, 2), Err(Error::Certification(_))));
}

#[test]
fn descend_examples() {
    let g = bowtie();
    let proper = col(&[1, 2, 3, 2, 3]);
    let (out, trace) = descend(&g, &lift_colouring(&proper, 2), 2, 1).unwrap();
    assert_eq!(out.palette(), proper.palette());
    assert!(check(&g, &out, Mode::Proper).unwrap().is_valid());
    assert_eq!(replay(&g, &lift_colouring(&proper, 2), 2, &trace).unwrap().1, out);

    let c5 = cycle(5);
    let c = optimal_clustered(&c5, 2, 2);
    assert_eq!(c.num_colours(), 3);
    let (out, _) = descend(&c5, &c, 2, 1).unwrap();
    assert!(check(&c5, &out, Mode::Proper).unwrap().is_valid());
    assert_eq!(out.num_colours(), 3);

    let p = petersen();
    let c = optimal_clustered(&p, 3, 3);
    let (out, trace) = descend(&p, &c, 3, 1).unwrap();
    assert!(check(&p, &out, Mode::Proper).unwrap().is_valid());
    assert!(out.num_colours() <= c.num_colours() && c.num_colours() == 3);
    assert_eq!(replay(&p, &c, 3, &trace).unwrap().1, out);

    let (out, trace) = descend(&cycle(4), &interleaved_c4(), 2, 2).unwrap();
    assert_eq!(trace.eliminations.len(), 1);
    assert!(check(&cycle(4), &out, Mode::Clustered(2)).unwrap().is_valid());

    assert!(descend(&c5, &Colouring::monochromatic(10), 2, 1).is_err());
    assert!(descend(&c5, &c5_lift(), 2, 0).is_err());
}

fn c5_lift() -> Colouring {
    lift_colouring(&col(&[1, 2, 1, 2, 3]), 2)
}

/// Every connected graph on at most 5 vertices, t ∈ {2, 3}, ℓ ∈ {1, 2}.
#[test]
fn descent_is_sound_on_small_graphs() {
    for n in 1..=5 {
        for g in connected_graphs(n) {
            for t in 2..=3 {
                for ell in 1..=2 {
                    let c = optimal_clustered(&g, t, ell * t);
                    let (out, trace) = descend(&g, &c, t, ell).unwrap();
                    assert!(check(&g, &out, Mode::Clustered(ell)).unwrap().is_valid());
                    assert!(out.num_colours() <= c.num_colours());
                    let direct = chromatic(&g, Mode::Clustered(ell), &Limits::default()).unwrap().value().unwrap();
                    assert_eq!(c.num_colours(), direct, "{:?} t={t} ell={ell}", g.edges());
                    assert_eq!(replay(&g, &c, t, &trace).unwrap().1, out);
                }
            }
        }
    }
}

mod random {
    use super::*;
    use proptest::prelude::*;

    fn arb_instance() -> impl Strategy<Value = (Graph, usize, Vec<u32>)> {
        (2usize..=5, 2usize..=3).prop_flat_map(|(n, t)| {
            (
                proptest::collection::vec(any::<bool>(), n * (n - 1) / 2),
                proptest::collection::vec(1u32..=4, n * t),
            )
                .prop_map(move |(bits, colours)| {
                    let mut k = 0;
                    let g = Graph::from_fn(n, |_, _| {
                        k += 1;
                        bits[k - 1]
                    });
                    (g, t, colours)
                })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        /// Any colouring is ℓt-clustered for ℓ = ⌈largest component / t⌉.
        #[test]
        fn descent_on_arbitrary_colourings((g, t, colours) in arb_instance()) {
            let c = Colouring::new(colours).unwrap();
            let host = strong_product(&g, &complete(t));
            let largest = mono_components(&host, &c).unwrap().iter().map(|(_, s)| s.len()).max().unwrap();
            let ell = largest.div_ceil(t);
            let (nice, trace) = eliminate_cycles(&g, &c, t, ell * t).unwrap();
            prop_assert!(build_incidence(&g, &nice, t).unwrap().is_acyclic());
            prop_assert_eq!(replay_eliminations(&g, &c, t, &trace.eliminations).unwrap(), nice);
            let (out, trace) = descend(&g, &c, t, ell).unwrap();
            prop_assert!(check(&g, &out, Mode::Clustered(ell)).unwrap().is_valid());
            prop_assert!(out.palette().is_subset(&c.palette()));
            prop_assert_eq!(replay(&g, &c, t, &trace).unwrap().1, out);
        }
    }
}
