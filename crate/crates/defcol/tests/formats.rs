use defcol::{edgelist, graph6};
use defcol_core::Graph;
use proptest::prelude::*;

const PETERSEN_EDGES: [(usize, usize); 15] = [
    (0, 1), (0, 4), (0, 5), (1, 2), (1, 6), (2, 3), (2, 7), (3, 4),
    (3, 8), (4, 9), (5, 7), (5, 8), (6, 8), (6, 9), (7, 9),
];

#[test]
fn petersen_outer_inner_labelling() {
    let g = Graph::from_edges(10, &PETERSEN_EDGES).unwrap();
    assert_eq!(graph6::emit(&g), "IheA@GUAo");
    assert_eq!(graph6::parse("IheA@GUAo").unwrap(), g);
}

#[test]
fn four_byte_order_field() {
    let g = Graph::from_edges(70, &[(0, 69), (3, 4), (10, 50), (68, 69)]).unwrap();
    let text = graph6::emit(&g);
    assert_eq!(text, FOUR_BYTE);
    assert_eq!(graph6::parse(&text).unwrap(), g);
}

const FOUR_BYTE: &str = "~?@E?C???????????????????????????????????????????????????????????????????????????????????????????????????????????????????????????????????????????????????????????????????????????????????????????????????????????@?????????????????????????????????????????????????????????????????????????????????????????????????????????????????????????????????????????????????????????????????????????????????????????_??????????G";

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2).prop_map(move |bits| {
            let mut it = bits.into_iter();
            Graph::from_fn(n, |_, _| it.next().unwrap())
        })
    })
}

proptest! {
    #[test]
    fn graph6_round_trip(g in arb_graph(20)) {
        prop_assert_eq!(graph6::parse(&graph6::emit(&g)).unwrap(), g);
    }

    #[test]
    fn edgelist_round_trip(g in arb_graph(20)) {
        prop_assert_eq!(edgelist::parse(&edgelist::emit(&g)).unwrap(), g);
    }

    #[test]
    fn formats_agree(g in arb_graph(12)) {
        let via_g6 = graph6::parse(&graph6::emit(&g)).unwrap();
        let via_list = edgelist::parse(&edgelist::emit(&g)).unwrap();
        prop_assert_eq!(via_g6, via_list);
    }

    #[test]
    fn garbage_never_panics(s in "[ -~]{0,24}") {
        let _ = graph6::parse(&s);
        let _ = edgelist::parse(&s);
    }
}
