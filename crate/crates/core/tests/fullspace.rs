use barbell_walk::experiments::{oracle_crosscheck, FullSpaceWalk};
use barbell_walk::graph_model::{
    build_fullspace_hamiltonian, build_search_hamiltonian, project_to_subspace, FullSpaceLayout,
};
use barbell_walk::propagator::{uniform_grid, Walk};
use barbell_walk::{Cplx, Params, WalkKind, SUBSPACE_DIM};

fn to_cplx(v: &[f64]) -> Vec<Cplx<f64>> {
    v.iter().map(|&x| Cplx::new(x, 0.0)).collect()
}

#[test]
fn compressed_hamiltonian_matches_subspace() {
    for n in [6usize, 10, 64] {
        for kind in [WalkKind::Laplacian, WalkKind::Adjacency] {
            for w in [0.0, 1.0, n as f64 / 2.0, 3.7] {
                let params = Params::new(n, w, 0.9 / n as f64, kind).unwrap();
                let full = build_fullspace_hamiltonian(&params, 0).unwrap();
                let layout = FullSpaceLayout::new(n, 0).unwrap();
                let sub = build_search_hamiltonian(&params);
                let vecs: Vec<_> = (0..SUBSPACE_DIM)
                    .map(|t| to_cplx(&layout.basis_vector::<f64>(t)))
                    .collect();
                for s in 0..SUBSPACE_DIM {
                    // H maps the subspace into itself
                    let hv = full.apply(&vecs[s]).unwrap();
                    let (_, residual) = layout.project(&hv).unwrap();
                    assert!(
                        residual < 1e-12,
                        "N={n} {kind:?} w={w} type {s}: leak {residual:e}"
                    );
                    for t in 0..SUBSPACE_DIM {
                        let m = full.matrix_element(&vecs[s], &vecs[t]).unwrap();
                        assert!(
                            (m - sub.get(s, t)).norm() < 1e-12,
                            "N={n} {kind:?} w={w} ({s},{t})"
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn fullspace_evolution_stays_in_subspace() {
    let params = Params::critical(64, 32.0, WalkKind::Adjacency).unwrap();
    let full = FullSpaceWalk::new(&params, 0, 1024).unwrap();
    let walk = Walk::new(params).unwrap();
    let traj = walk.from_state(&walk.initial_state());
    for t in uniform_grid(40.0, 11) {
        let state = full.state(t);
        let (projected, residual) = project_to_subspace(&state, &params).unwrap();
        assert!(residual < 1e-10);
        let exact = traj.state(t);
        for (a, b) in projected.amplitudes().iter().zip(exact.amplitudes()) {
            assert!((a - b).norm() < 1e-9);
        }
    }
}

#[test]
fn other_marked_vertex_gives_same_probabilities() {
    let params = Params::critical(32, 5.0, WalkKind::Laplacian).unwrap();
    let a = FullSpaceWalk::new(&params, 0, 1024).unwrap();
    let b = FullSpaceWalk::new(&params, 7, 1024).unwrap();
    for t in uniform_grid(30.0, 7) {
        let (pa, pb) = (a.aggregate_probabilities(t), b.aggregate_probabilities(t));
        for k in 0..SUBSPACE_DIM {
            assert!((pa[k] - pb[k]).abs() < 1e-10);
        }
    }
}

#[test]
fn crosscheck_examples() {
    assert!(oracle_crosscheck::<f64>(64, 32.0, WalkKind::Adjacency, 50, 1024).unwrap() < 1e-8);
    assert!(oracle_crosscheck::<f64>(256, 1.0, WalkKind::Laplacian, 50, 1024).unwrap() < 1e-8);
}

#[test]
fn zero_weight_kinds_agree() {
    // At w = 0 both cliques are regular, so the walks differ by a global phase.
    let lap = FullSpaceWalk::new(
        &Params::critical(64, 0.0, WalkKind::Laplacian).unwrap(),
        0,
        1024,
    )
    .unwrap();
    let adj = FullSpaceWalk::new(
        &Params::critical(64, 0.0, WalkKind::Adjacency).unwrap(),
        0,
        1024,
    )
    .unwrap();
    for t in uniform_grid(40.0, 21) {
        let (p, q) = (
            lap.aggregate_probabilities(t),
            adj.aggregate_probabilities(t),
        );
        for k in 0..SUBSPACE_DIM {
            assert!((p[k] - q[k]).abs() < 1e-10);
        }
    }
}
