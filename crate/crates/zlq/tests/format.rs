use proptest::prelude::*;
use zlq::format::{parse_family, parse_graph, serialize_family, serialize_graph, ParseErrorKind};
use zlq_core::recognition::BipartiteGraph;
use zlq_core::{CandidateMode, Family, Grid, TwoEdge};

fn family_strategy() -> impl Strategy<Value = Family> {
    (2u32..=6).prop_flat_map(|q| {
        let grid = Grid::new(q).unwrap();
        let all: Vec<TwoEdge> = grid.candidates(CandidateMode::Full).collect();
        proptest::sample::subsequence(all.clone(), 0..=all.len().min(12))
            .prop_shuffle()
            .prop_map(move |edges| Family::new(grid, edges).unwrap())
    })
}

proptest! {
    #[test]
    fn family_round_trip(f in family_strategy()) {
        let text = serialize_family(&f);
        let back = parse_family(&text).unwrap();
        prop_assert_eq!(&back, &f);
        prop_assert_eq!(serialize_family(&back), text);
    }

    #[test]
    fn comments_and_blank_lines_are_ignored(f in family_strategy(), noise in 0usize..4) {
        let mut text = String::new();
        for line in serialize_family(&f).lines() {
            text.push_str(line);
            text.push('\n');
            for _ in 0..noise {
                text.push_str("\n# note\n");
            }
        }
        prop_assert_eq!(parse_family(&text).unwrap(), f);
    }

    #[test]
    fn graph_round_trip(left in 1usize..8, right in 1usize..8, bits in any::<u64>()) {
        let edges: Vec<(usize, usize)> = (0..left * right)
            .filter(|&k| k < 64 && bits >> k & 1 == 1)
            .map(|k| (k / right, k % right))
            .collect();
        let g = BipartiteGraph::new(left, right, edges).unwrap();
        let text = serialize_graph(&g);
        let back = parse_graph(&text).unwrap();
        prop_assert_eq!(back.edges(), g.edges());
        prop_assert_eq!(serialize_graph(&back), text);
    }

    #[test]
    fn garbage_never_panics(text in "[ -~\n]{0,200}") {
        let _ = parse_family(&text);
        let _ = parse_graph(&text);
    }
}

#[test]
fn errors_carry_lines() {
    let cases = [
        ("edge 0 1 2 ; 2 3 0\n", 1),
        ("q 3\nq 3\n", 2),
        ("q 3\n\nedge 0 1 2 ; 2 3 9\n", 3),
        ("q 3\nedge 0 1 2 ; 2 3 0\nedge 2 3 0 ; 0 1 2\n", 3),
        ("q 3\nedge 1 1 2 ; 2 3 0\n", 2),
        ("q 3\nedge 0 1 2 2 3 0\n", 2),
    ];
    for (text, line) in cases {
        let e = parse_family(text).unwrap_err();
        assert_eq!(e.line, line, "{text:?}: {e}");
    }
    let e = parse_family("q 3\nedge 0 1 2 ; 2 3 0\nedge 2 3 0 ; 0 1 2\n").unwrap_err();
    assert!(matches!(e.kind, ParseErrorKind::Duplicate(_, 2)), "{e}");
    assert!(matches!(parse_family("# nothing\n").unwrap_err().kind, ParseErrorKind::MissingQ));
}

#[test]
fn solution_values() {
    let v = zlq::format::parse_solution("# c\nx_0 1\nx_1 0.0000001\nx_2 0.9999999\n").unwrap();
    assert_eq!(v, [("x_0".to_string(), true), ("x_1".to_string(), false), ("x_2".to_string(), true)]);
    assert_eq!(zlq::format::parse_solution("x_0 0.5\n").unwrap_err().line, 1);
}
