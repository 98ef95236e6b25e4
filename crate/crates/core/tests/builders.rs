mod common;

use emberlin::oriented::*;
use emberlin::{euler, generators, Error};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn max_genus_face_count_matches_parity_bound_on_random_digraphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for it in 0..1500 {
        let n = rng.gen_range(1..=8);
        let extra = rng.gen_range(0..=n + 4);
        let d = common::random_eulerian_digraph(&mut rng, n, extra);
        let t = common::random_euler_circuit(&mut rng, &d);
        let out = embed_max_genus(&d, &t).unwrap_or_else(|e| panic!("case {it}: {e}"));
        let ell = d.zero_mod4_vertices().len();
        assert!(out.num_faces() <= ell + 2, "case {it}");
        assert_eq!(out.num_faces() % 2, ell % 2, "case {it}");
    }
}

#[test]
fn two_zero_mod4_vertices_give_two_faces_with_interlacing_circuit() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut hit = 0;
    for it in 0..4000 {
        let n = rng.gen_range(2..=7);
        let extra = rng.gen_range(0..=n + 3);
        let d = common::random_eulerian_digraph(&mut rng, n, extra);
        let s = d.zero_mod4_vertices();
        if s.len() != 2 {
            continue;
        }
        let t = match euler::interlacing_euler_circuit(&d, s[0], s[1]) {
            Ok(t) => t,
            Err(Error::Precondition(_)) => continue,
            Err(e) => panic!("case {it}: {e}"),
        };
        let out = embed_bieulerian_two0mod4(&d, &t).unwrap_or_else(|e| panic!("case {it}: {e}"));
        assert_eq!(out.num_faces(), 2, "case {it}");
        hit += 1;
    }
    assert!(hit >= 50, "only {hit} instances with ℓ = 2");
}

#[test]
fn pattern_builder_on_dip4_host() {
    let d = generators::dip4();
    let t = generators::dip4_circuit();
    let seed = dip4_bieulerian();
    let out = embed_bieulerian_pattern(&d, &t, &d, seed.embedding()).unwrap();
    assert_eq!(out.num_faces(), 2);
    assert!(out.embedding().is_bi_eulerian());
}

#[test]
fn pattern_builder_rejects_wrong_host_size() {
    let d = generators::ddc(3).unwrap();
    let t = euler::euler_circuit_directed(&d, 0).unwrap();
    let h = generators::dip4();
    let seed = dip4_bieulerian();
    assert!(matches!(embed_bieulerian_pattern(&d, &t, &h, seed.embedding()), Err(Error::Precondition(_))));
}

#[test]
fn pattern_builder_on_reversed_target() {
    let d = generators::dip4().reversed();
    let t0 = generators::dip4_circuit().reversed();
    let t = emberlin::ClosedWalk::new_directed(&d, t0.steps().iter().map(|&x| emberlin::mate(x)).collect()).unwrap();
    let seed = dip4_bieulerian();
    let out = embed_bieulerian_pattern(&d, &t, &generators::dip4(), seed.embedding()).unwrap();
    assert_eq!(out.num_faces(), 2);
    assert!(out.embedding().is_bi_eulerian());
}

#[test]
fn join_chain_is_its_own_pattern_host() {
    let d = generators::join_chain(2).unwrap();
    assert_eq!(d.zero_mod4_vertices().len(), d.n());
    let h_emb = emberlin::oracle::find_directed_bi_eulerian(&d).unwrap().expect("oracle finds a bi-eulerian embedding");
    let faces: Vec<_> = h_emb.faces().iter().map(|f| f.as_directed(&d).unwrap()).collect();
    for t in faces {
        let out = embed_bieulerian_pattern(&d, &t, &d, &h_emb).unwrap();
        assert_eq!(out.num_faces(), 2);
        assert!(out.embedding().faces().iter().any(|f| f.as_directed(&d).is_some_and(|f| f.canonical_directed() == t.canonical_directed())));
    }
}
