mod common;

use lsc_core::gadget::{audit, build_gadget, random_max_deg3, Graph, GraphError, Role};
use lsc_core::solvers::{solve_exact, solve_greedy};

use common::brute_vertex_cover;

#[test]
fn random_subcubic_graphs_satisfy_identity() {
    for seed in 0..12 {
        let g = random_max_deg3(3 + seed as usize % 4, seed);
        let layout = build_gadget(&g).unwrap();
        let arr = layout.arrangement();
        assert!(audit(&arr, &layout.roles).is_ok());
        let ci = layout.cover_instance(&arr);
        let opt = solve_exact(&ci, None).unwrap();
        let edges: Vec<_> = g.edges().iter().copied().collect();
        let tau = brute_vertex_cover(g.n(), &edges);
        assert_eq!(opt.len(), g.n() + tau, "{g:?}");

        let greedy = solve_greedy(&ci);
        let m = layout.map_back(&greedy).unwrap();
        assert!(g.is_vertex_cover(&m));
        assert!(m.len() + opt.len() <= greedy.len() + tau);
    }
}

#[test]
fn every_role_is_present() {
    let g = Graph::new(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
    let layout = build_gadget(&g).unwrap();
    for i in 0..4 {
        assert!(layout.segment_of(Role::H(i)).is_some());
        assert!(layout.segment_of(Role::V(i)).is_some());
        assert!(layout.segment_of(Role::Connector(i)).is_some());
    }
    assert_eq!(layout.roles.len(), layout.instance.len());
}

#[test]
fn rejects_bad_graphs() {
    assert!(matches!(
        Graph::new(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]),
        Err(GraphError::DegreeViolation { vertex: 0, degree: 4 })
    ));
    assert!(matches!(Graph::new(2, &[(1, 1)]), Err(GraphError::SelfLoop(_))));
    assert!(Graph::new(2, &[(0, 1), (1, 0)]).is_err());
    assert!(Graph::new(2, &[(0, 2)]).is_err());
}
