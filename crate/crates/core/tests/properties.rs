mod common;

use proptest::prelude::*;

use rainbow_saturation::canon::{are_isomorphic, canonical_form};
use rainbow_saturation::cnf::{
    decode_assignment, encode, encode_compact, formula_to_dimacs, model_for, parse_dimacs, parse_model,
    write_dimacs, Encoding,
};
use rainbow_saturation::coloring::{verifies, EdgeColoring};
use rainbow_saturation::dimacs_path::{decide_feasibility, model_text, Engine};
use rainbow_saturation::graph6::{parse_graph6, to_graph6};
use rainbow_saturation::maxfree::{max_cycle_free_subgraph, palette_ceiling_by_peeling};
use rainbow_saturation::search::{find_exact_coloring, Budget, Status};
use rainbow_saturation::Graph;

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        let mask = if pairs == 0 { 0 } else { (1u64 << pairs) - 1 };
        (Just(n), 0..=mask).prop_map(|(n, m)| Graph::from_pair_mask(n, m))
    })
}

fn sparse_graph(max_n: usize, max_edges: usize) -> impl Strategy<Value = Graph> {
    (3..=max_n).prop_flat_map(move |n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let limit = max_edges.min(pairs.len());
        proptest::sample::subsequence(pairs, 0..=limit).prop_map(move |es| Graph::new(n, es).unwrap())
    })
}

proptest! {
    #[test]
    fn graph6_roundtrip(g in graph(11)) {
        let text = to_graph6(&g).unwrap();
        let back = parse_graph6(&text).unwrap();
        prop_assert_eq!(back.edges(), g.edges());
        prop_assert_eq!(back.n(), g.n());
    }

    #[test]
    fn graph6_roundtrip_large(n in 12usize..=62, seed in any::<u64>()) {
        let edges: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|&(u, v)| (seed.rotate_left((u * 7 + v) as u32 % 64)) & 3 == 0)
            .collect();
        let g = Graph::new(n, edges).unwrap();
        let back = parse_graph6(&to_graph6(&g).unwrap()).unwrap();
        prop_assert_eq!(back.edges(), g.edges());
    }

    #[test]
    fn dimacs_roundtrip(
        num_vars in 1usize..30,
        raw in proptest::collection::vec(proptest::collection::vec((1i32..30, any::<bool>()), 0..6), 0..40),
    ) {
        let clauses: Vec<Vec<i32>> = raw
            .into_iter()
            .map(|c| c.into_iter()
                .map(|(v, s)| { let v = 1 + (v - 1) % num_vars as i32; if s { v } else { -v } })
                .collect())
            .collect();
        let parsed = parse_dimacs(&write_dimacs(num_vars, &clauses)).unwrap();
        prop_assert_eq!(parsed.num_vars, num_vars);
        prop_assert_eq!(parsed.clauses, clauses);
    }

    #[test]
    fn model_roundtrip(model in proptest::collection::vec(any::<bool>(), 0..80)) {
        let lits: Vec<i32> = model.iter().enumerate()
            .map(|(i, &b)| if b { i as i32 + 1 } else { -(i as i32 + 1) })
            .collect();
        prop_assert_eq!(parse_model(&model_text(&lits)).unwrap(), lits);
    }

    #[test]
    fn canonical_form_invariant(g in graph(7), perm in Just((0..7).collect::<Vec<usize>>()).prop_shuffle()) {
        let p: Vec<usize> = perm.into_iter().filter(|&x| x < g.n()).collect();
        let h = g.relabel(&p);
        prop_assert_eq!(canonical_form(&g).pair_mask(), canonical_form(&h).pair_mask());
        prop_assert!(are_isomorphic(&g, &h));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn witnesses_are_sound(g in sparse_graph(8, 12), k in 3usize..=6) {
        for engine in [Engine::Backtrack, Engine::Cnf, Engine::CompactCnf] {
            let v = decide_feasibility(&g, k, engine, Budget::UNLIMITED).unwrap();
            match v.status {
                Status::Feasible => prop_assert!(verifies(&g, v.witness.as_ref().unwrap(), k)),
                Status::Infeasible => prop_assert!(v.witness.is_none()),
                Status::Unknown => prop_assert!(false, "unlimited budget returned unknown"),
            }
        }
    }

    #[test]
    fn engines_agree(g in sparse_graph(7, 9), k in 3usize..=6) {
        let verdicts: Vec<Status> = [Engine::Backtrack, Engine::Cnf, Engine::CompactCnf]
            .into_iter()
            .map(|e| decide_feasibility(&g, k, e, Budget::UNLIMITED).unwrap().status)
            .collect();
        prop_assert_eq!(verdicts[0], verdicts[1]);
        prop_assert_eq!(verdicts[0], verdicts[2]);
        prop_assert_eq!(verdicts[0] == Status::Feasible, common::oracle_feasible(&g, k));
    }

    #[test]
    fn exact_witness_uses_every_color(g in sparse_graph(7, 9), k in 4usize..=5, c in 1usize..=6) {
        let v = find_exact_coloring(&g, k, c, Budget::UNLIMITED).unwrap();
        if let Some(w) = v.witness {
            prop_assert_eq!(w.distinct_colors(), c);
            prop_assert!(verifies(&g, &w, k));
        }
    }

    #[test]
    fn encoded_model_decodes_to_itself(g in sparse_graph(6, 8), k in 3usize..=5) {
        // a coloring with one color per edge is proper; keep it when rainbow-free
        let colors: Vec<u16> = (0..g.edge_count() as u16).collect();
        let coloring = EdgeColoring::new(colors);
        prop_assume!(g.edge_count() > 0 && verifies(&g, &coloring, k));
        let f = encode(&g, k, g.edge_count(), Encoding::Feasibility).unwrap();
        let model = parse_model(&model_for(&f, &coloring)).unwrap();
        prop_assert_eq!(decode_assignment(&f, &model).unwrap(), coloring);
    }

    #[test]
    fn compact_formula_is_wellformed(g in sparse_graph(6, 8), k in 3usize..=5, c in 1usize..=5) {
        let f = encode_compact(&g, k, c, Encoding::Feasibility).unwrap();
        let parsed = parse_dimacs(&formula_to_dimacs(&f)).unwrap();
        prop_assert_eq!(parsed.num_vars, f.num_vars);
        prop_assert_eq!(parsed.clauses.len(), f.clauses.len());
        prop_assert!(f.num_vars >= g.edge_count() * c);
    }

    #[test]
    fn color_count_never_exceeds_peeling_ceiling(g in sparse_graph(7, 10), k in 4usize..=5) {
        let ceiling = palette_ceiling_by_peeling(&g, k);
        prop_assert_eq!(ceiling, max_cycle_free_subgraph(&g, k).unwrap().best_count);
        let above = find_exact_coloring(&g, k, ceiling + 1, Budget::UNLIMITED).unwrap();
        prop_assert_eq!(above.status, Status::Infeasible);
    }
}
