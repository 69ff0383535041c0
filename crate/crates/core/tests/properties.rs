use pivotal::{
    apply, apply_support, general_pm_parity, is_support_applicable, pm_parity, synthesize_reduced,
    Graph, Op, OpSeq, Vertex, VertexSet,
};
use proptest::prelude::*;

fn graph_from_bits(n: usize, edges: &[bool], loops: &[bool]) -> Graph {
    let mut g = Graph::new(0..n);
    let vs = g.vertices().to_vec();
    let mut k = 0;
    for i in 0..n {
        for j in i + 1..n {
            g.set_edge(&vs[i], &vs[j], edges[k]).unwrap();
            k += 1;
        }
        g.set_loop(&vs[i], loops[i]).unwrap();
    }
    g
}

fn arb_graph(max_n: usize, loops: bool) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(move |n| {
        (
            proptest::collection::vec(any::<bool>(), n * (n - 1) / 2),
            proptest::collection::vec(any::<bool>().prop_map(move |b| b && loops), n),
        )
            .prop_map(move |(e, l)| graph_from_bits(n, &e, &l))
    })
}

fn all_graphs(n: usize, loops: bool) -> impl Iterator<Item = Graph> {
    let pairs = n * n.saturating_sub(1) / 2;
    let bits = pairs + if loops { n } else { 0 };
    (0..1u64 << bits).map(move |code| {
        let e: Vec<bool> = (0..pairs).map(|k| code >> k & 1 == 1).collect();
        let l: Vec<bool> = (0..n)
            .map(|k| loops && code >> (pairs + k) & 1 == 1)
            .collect();
        graph_from_bits(n, &e, &l)
    })
}

fn subsets(vs: &[Vertex]) -> impl Iterator<Item = VertexSet> + '_ {
    (0..1u64 << vs.len()).map(move |m| {
        vs.iter()
            .enumerate()
            .filter(|(i, _)| m >> i & 1 == 1)
            .map(|(_, x)| x.clone())
            .collect()
    })
}

fn legal_ops(g: &Graph) -> Vec<Op> {
    let loops = g.loops();
    let mut ops: Vec<Op> = loops.iter().map(|u| Op::local(u.clone())).collect();
    for (x, y) in g.edges() {
        if !loops.contains(&x) && !loops.contains(&y) {
            ops.push(Op::pivot(x, y).unwrap());
        }
    }
    ops
}

/// Follows `picks` as choices among the currently legal operations.
fn walk(g: &Graph, picks: &[usize]) -> (OpSeq, Graph) {
    let mut seq = OpSeq::default();
    let mut h = g.clone();
    for &p in picks {
        let ops = legal_ops(&h);
        if ops.is_empty() {
            break;
        }
        let op = ops[p % ops.len()].clone();
        h = apply(&h, &[op.clone()].into_iter().collect()).unwrap();
        seq.push(op).unwrap();
    }
    (seq, h)
}

fn twins(g: &Graph, a: &Vertex, b: &Vertex) -> bool {
    g.vertices()
        .iter()
        .all(|x| g.sim(a, x).unwrap() == g.sim(b, x).unwrap())
}

#[test]
fn det_equals_general_pm_on_loop_graphs() {
    for n in 0..=5 {
        for g in all_graphs(n, true) {
            assert_eq!(
                g.adjacency().det(),
                general_pm_parity(&g),
                "{:?} {}",
                g.edges(),
                g.loops()
            );
        }
    }
}

#[test]
fn edges_after_support_follow_matching_parity() {
    for n in 0..=5 {
        for g in all_graphs(n, false) {
            let vs = g.vertices().to_vec();
            for s in subsets(&vs) {
                let Ok(h) = apply_support(&g, &s) else {
                    assert!(!pm_parity(&g.induced_subgraph(&s).unwrap()).unwrap());
                    continue;
                };
                for (i, x) in vs.iter().enumerate() {
                    for y in &vs[i + 1..] {
                        let xy: VertexSet = [x.clone(), y.clone()].into_iter().collect();
                        let sub = g.induced_subgraph(&(&s ^ &xy)).unwrap();
                        assert_eq!(h.has_edge(x, y).unwrap(), pm_parity(&sub).unwrap());
                    }
                }
            }
        }
    }
}

#[test]
fn matching_parity_of_subsets_after_pivot() {
    for n in 0..=5 {
        for g in all_graphs(n, false) {
            let vs = g.vertices().to_vec();
            for (u, w) in g.edges() {
                let p = g.pivot(&u, &w).unwrap();
                let uw: VertexSet = [u.clone(), w.clone()].into_iter().collect();
                for y in subsets(&vs) {
                    let lhs = pm_parity(&p.induced_subgraph(&y).unwrap()).unwrap();
                    let rhs = pm_parity(&g.induced_subgraph(&(&y ^ &uw)).unwrap()).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }
}

proptest! {
    #[test]
    fn applicable_sequences_have_nonsingular_support(
        g in arb_graph(10, true),
        picks in proptest::collection::vec(any::<usize>(), 0..12),
    ) {
        let (seq, h) = walk(&g, &picks);
        prop_assert!(is_support_applicable(&g, &seq.support()).unwrap());
        prop_assert_eq!(apply_support(&g, &seq.support()).unwrap(), h);
    }

    #[test]
    fn pivot_supports_are_even(
        g in arb_graph(10, false),
        picks in proptest::collection::vec(any::<usize>(), 0..12),
    ) {
        let (seq, _) = walk(&g, &picks);
        prop_assert_eq!(seq.support().len() % 2, 0);
    }

    #[test]
    fn twins_survive_pivots(
        g in arb_graph(8, false),
        pick in any::<usize>(),
        picks in proptest::collection::vec(any::<usize>(), 0..10),
    ) {
        let mut g = g;
        let t = g.vertices()[pick % g.order()].clone();
        let twin = Vertex::from("twin");
        g.add_vertex(twin.clone());
        g.set_edge(&t, &twin, true).unwrap();
        for x in g.neighbours(&t).unwrap().iter() {
            if *x != twin {
                g.set_edge(x, &twin, true).unwrap();
            }
        }
        prop_assert!(twins(&g, &t, &twin));
        let (seq, h) = walk(&g, &picks);
        prop_assert!(twins(&h, &t, &twin), "after {}", seq);
    }

    #[test]
    fn synthesized_sequences_touch_each_support_vertex_once(
        g in arb_graph(10, true),
        mask in any::<u16>(),
    ) {
        let s: VertexSet = g
            .vertices()
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, x)| x.clone())
            .collect();
        if let Ok(seq) = synthesize_reduced(&g, &s, None) {
            let touched: usize = seq.iter().map(|op| op.vertices().count()).sum();
            prop_assert_eq!(touched, s.len());
            prop_assert!(seq.is_reduced());
        } else {
            prop_assert!(!is_support_applicable(&g, &s).unwrap());
        }
    }
}
