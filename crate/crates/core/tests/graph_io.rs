use proptest::prelude::*;

use qsdesign::srg::fixtures::{complete_multipartite, petersen, symplectic};
use qsdesign::srg::{parse_graph6, parse_matrix, to_graph6, to_matrix_text, AdjacencyMatrix};

fn graph() -> impl Strategy<Value = AdjacencyMatrix> {
    (0usize..80).prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2).prop_map(move |bits| {
            let mut it = bits.into_iter();
            AdjacencyMatrix::from_fn(n, |_, _| it.next().unwrap_or(false))
        })
    })
}

#[test]
fn known_graph6_strings() {
    let mut edges: Vec<(usize, usize)> = (0..5)
        .flat_map(|i| [(i, (i + 1) % 5), (i, i + 5)])
        .collect();
    edges.extend((0..5).map(|i| (5 + i, 5 + (i + 2) % 5)));
    let drawn = AdjacencyMatrix::from_edges(10, &edges).unwrap();
    assert_eq!(to_graph6(&drawn).trim_end(), "IheA@GUAo");
    assert_eq!(to_graph6(&complete_multipartite(1, 3)).trim_end(), "B?");
    assert_eq!(parse_graph6("C~").unwrap(), complete_multipartite(4, 1));
    assert_eq!(petersen().order(), 10);
    let sp = symplectic(3);
    assert_eq!(parse_graph6(&to_graph6(&sp)).unwrap(), sp);
}

proptest! {
    #[test]
    fn graph6_round_trip(a in graph()) {
        prop_assert_eq!(parse_graph6(&to_graph6(&a)).unwrap(), a);
    }

    #[test]
    fn matrix_round_trip(a in graph()) {
        prop_assert_eq!(parse_matrix(&to_matrix_text(&a)).unwrap(), a);
    }

    #[test]
    fn parsers_never_panic(s in "\\PC{0,64}") {
        let _ = parse_graph6(&s);
        let _ = parse_matrix(&s);
    }

    #[test]
    fn matrix_parser_survives_noise(s in "[01 \\n#x]{0,200}") {
        let _ = parse_matrix(&s);
    }
}
