use cclique::coloring::{color_a2, fast_coloring_a2eps, proper_coloring_cc};
use cclique::decomposition::{forests_decomposition_cc, HPartitionParams};
use cclique::graph::{generate, Graph, GraphFamily, GraphFamilySpec};
use cclique::mis::mis_cc;
use cclique::oracles::{degeneracy, verify_coloring, verify_forest_decomposition, verify_mis};
use cclique::sim::CliqueNetwork;
use proptest::prelude::*;

fn graph_strategy() -> impl Strategy<Value = Graph> {
    (2usize..120, 1u32..12, any::<u64>(), 0u8..3).prop_map(|(n, d, seed, fam)| {
        let family = match fam {
            0 => GraphFamily::RandomDegenerate { n, d },
            1 => GraphFamily::ForestUnion { n: n.max(d as usize + 1), k: d },
            _ => GraphFamily::Grid { rows: n / 10 + 1, cols: n % 10 + 1 },
        };
        generate(&GraphFamilySpec::new(family, seed)).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn every_pipeline_verifies(g in graph_strategy(), eps_pick in 0usize..3) {
        let eps = [0.5, 1.0, 2.0][eps_pick];
        let a = g.arboricity_witness().unwrap_or_else(|| degeneracy(&g)).max(1);
        let n = g.n();

        let params = HPartitionParams::standard(a, eps).unwrap();
        let fd = forests_decomposition_cc(&mut CliqueNetwork::with_defaults(n), &g, &params).unwrap();
        prop_assert!(verify_forest_decomposition(&g, &fd.labeling, a, eps).ok);

        let c = color_a2(&mut CliqueNetwork::with_defaults(n), &g, a, eps).unwrap();
        prop_assert!(verify_coloring(&g, &c.coloring).ok);

        let c = fast_coloring_a2eps(&mut CliqueNetwork::with_defaults(n), &g, a, eps).unwrap();
        prop_assert!(verify_coloring(&g, &c.coloring).ok);

        let c = proper_coloring_cc(&mut CliqueNetwork::with_defaults(n), &g, a, 6, 6, 2.0).unwrap();
        prop_assert!(verify_coloring(&g, &c.coloring).ok);

        let m = mis_cc(&mut CliqueNetwork::with_defaults(n), &g, a, 2.0, false).unwrap();
        prop_assert!(verify_mis(&g, &m.member).ok);
    }
}

#[test]
fn runs_are_bit_identical() {
    let g = generate(&GraphFamilySpec::new(GraphFamily::ForestUnion { n: 700, k: 9 }, 11)).unwrap();
    let run = || {
        let mut net = CliqueNetwork::with_defaults(700);
        let c = proper_coloring_cc(&mut net, &g, 9, 8, 8, 2.0).unwrap();
        (c.coloring, net.stats())
    };
    assert_eq!(run(), run());
}
