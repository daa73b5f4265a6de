use graphtopo::edgelist::{parse_edge_list, serialize_edge_list};
use graphtopo::graph6::{parse_graph6, serialize_graph6};
use graphtopo_core::graph::betti_graph;
use graphtopo_core::Graph;
use proptest::prelude::*;

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let len = pairs.len();
        proptest::collection::vec(any::<bool>(), len).prop_map(move |keep| {
            Graph::new(n, pairs.iter().zip(&keep).filter(|(_, &k)| k).map(|(&e, _)| e).collect::<Vec<_>>()).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn edge_list_round_trip(g in graph(20)) {
        prop_assert_eq!(parse_edge_list(&serialize_edge_list(&g)).unwrap(), g);
    }

    #[test]
    fn graph6_round_trip(g in graph(62)) {
        let text = serialize_graph6(&g);
        prop_assert!(text.bytes().all(|b| (63..=126).contains(&b)));
        prop_assert_eq!(parse_graph6(text.as_bytes()).unwrap(), g);
    }

    #[test]
    fn messy_edge_lists_normalise(g in graph(15), seed in any::<u64>()) {
        // Reversed endpoints, duplicates, comments and blank lines.
        let mut text = format!("# generated\nn {}\n", g.n_vertices());
        for (i, &(u, v)) in g.edges().iter().enumerate() {
            if (seed >> (i % 64)) & 1 == 1 {
                text += &format!("{v} {u}\n\n{u} {v}\n");
            } else {
                text += &format!("  {u}\t{v}  \n# dup\n{v} {u}\n");
            }
        }
        let parsed = parse_edge_list(&text).unwrap();
        prop_assert_eq!(betti_graph(&parsed), betti_graph(&g));
        prop_assert_eq!(parsed, g);
    }

    #[test]
    fn truncated_graph6_is_rejected(g in graph(30)) {
        let text = serialize_graph6(&g);
        if text.len() > 1 {
            prop_assert!(parse_graph6(&text.as_bytes()[..text.len() - 1]).is_err());
        }
    }
}
