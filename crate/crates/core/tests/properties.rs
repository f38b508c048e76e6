mod common;

use cheegerkit::cayley::build_cayley;
use cheegerkit::config::RunConfig;
use cheegerkit::connection::CyclicConnection;
use cheegerkit::graph::{Graph, VertexMeasure};
use cheegerkit::group::FiniteGroup;
use cheegerkit::iso::{
    cheeger_h, mrt_beta_out, signed_cheeger, signed_vertex_constants, trevisan_beta, vertex_iso_h_out, IsoCaps,
};
use cheegerkit::lambda_inf::lambda_inf_bracket;
use cheegerkit::signed::Signature;
use cheegerkit::spectra::signed_laplacian_spectrum;
use cheegerkit::value::Rational;
use cheegerkit::verify::{compute_constant, run_suite, Instance, Status};
use proptest::prelude::*;
use std::collections::BTreeMap;

fn exact(q: cheegerkit::value::Quantity) -> Rational {
    q.as_exact().expect("exact value")
}

fn circulant(n: usize, picks: &[bool]) -> Graph {
    let z = FiniteGroup::cyclic(n);
    let mut s: Vec<usize> = Vec::new();
    for (i, &p) in picks.iter().enumerate().take(n / 2) {
        if p {
            s.push(i + 1);
            s.push(n - i - 1);
        }
    }
    if s.is_empty() {
        s = vec![1, n - 1];
    }
    build_cayley(&z, &z.subset(s)).unwrap()
}

fn no_isolated(g: &Graph) -> bool {
    (0..g.n()).all(|v| g.degree(v) > 0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn unsigned_constants_match_oracle(seed in any::<u64>(), n in 2usize..=7) {
        let g = common::random_graph(seed, n, true);
        let caps = IsoCaps::default();
        prop_assert_eq!(exact(vertex_iso_h_out(&g, &caps).unwrap().value), common::h_out(&g));
        prop_assert_eq!(exact(mrt_beta_out(&g, &caps).unwrap().value), common::beta_out(&g));
        if no_isolated(&g) {
            prop_assert_eq!(exact(cheeger_h(&g, &caps).unwrap().value), common::h(&g));
        }
    }

    #[test]
    fn beta_matches_oracle_on_circulants(n in 3usize..=8, picks in prop::collection::vec(any::<bool>(), 4)) {
        let g = circulant(n, &picks);
        prop_assert_eq!(exact(trevisan_beta(&g, &IsoCaps::default()).unwrap().value), common::beta(&g));
    }

    #[test]
    fn signed_constants_match_oracle(seed in any::<u64>(), n in 1usize..=6) {
        let g = common::random_graph(seed, n, true);
        let sigma = Signature::random(&g, seed ^ 0x5eed);
        let caps = IsoCaps::default();
        let (out, sym) = signed_vertex_constants(&g, &sigma, &VertexMeasure::counting(n), &caps).unwrap();
        prop_assert_eq!(exact(out.value), common::h_out_sigma(&g, &sigma));
        prop_assert_eq!(exact(sym.value), common::h_sym_sigma(&g, &sigma));
        prop_assert_eq!(common::h_out_sigma_at(&g, &sigma, common::mask_of(&out.witness.set)), exact(out.value));
        if g.edge_count() > 0 {
            prop_assert_eq!(exact(signed_cheeger(&g, &sigma, &caps).unwrap().value), common::h_sigma(&g, &sigma));
        }
    }

    #[test]
    fn switching_leaves_signed_quantities_unchanged(seed in any::<u64>(), n in 2usize..=7, tau in prop::collection::vec(any::<bool>(), 7)) {
        let g = common::random_graph(seed, n, false);
        prop_assume!(no_isolated(&g));
        let sigma = Signature::random(&g, seed);
        let t: Vec<i8> = tau[..n].iter().map(|&b| if b { -1 } else { 1 }).collect();
        let switched = sigma.switch(&g, &t);
        let caps = IsoCaps::default();
        let pi = VertexMeasure::counting(n);
        prop_assert_eq!(signed_cheeger(&g, &sigma, &caps).unwrap().value, signed_cheeger(&g, &switched, &caps).unwrap().value);
        let a = signed_vertex_constants(&g, &sigma, &pi, &caps).unwrap();
        let b = signed_vertex_constants(&g, &switched, &pi, &caps).unwrap();
        prop_assert_eq!(a.0.value, b.0.value);
        prop_assert_eq!(a.1.value, b.1.value);
        let sa = signed_laplacian_spectrum(&g, &sigma).unwrap().eigenvalues;
        let sb = signed_laplacian_spectrum(&g, &switched).unwrap().eigenvalues;
        for (x, y) in sa.iter().zip(&sb) {
            prop_assert!((x - y).abs() < 1e-9);
        }
    }

    #[test]
    fn set_lemmas(seed in any::<u64>(), n in 1usize..=12, a in any::<u64>(), b in any::<u64>(), c in any::<u64>(), d in any::<u64>()) {
        let g = common::random_graph(seed, n, true);
        let full = (1u64 << n) - 1;
        let (a, b, c, d) = (a & full, b & full, c & full, d & full);
        let card = |m: u64| m.count_ones() as i64;
        prop_assert!(card(a) + card(b) + card(c) - n as i64 <= card(a & b) + card(b & c) + card(c & a));
        let lhs = card(common::outer_boundary(&g, (a & c) | (b & d)));
        let rhs = common::i_count(&g, a) + common::i_count(&g, b) + common::i_count(&g, c) + common::i_count(&g, d)
            + card(common::outer_boundary(&g, a | b)) + card(common::outer_boundary(&g, c | d));
        prop_assert!(lhs <= rhs);
    }

    #[test]
    fn bracket_is_ordered_and_deterministic(n in 3usize..=8, picks in prop::collection::vec(any::<bool>(), 4), seed in any::<u64>()) {
        let g = circulant(n, &picks);
        let sigma = Signature::random(&g, seed);
        let pi = VertexMeasure::counting(n);
        let cfg = RunConfig { seed, ..RunConfig::default() };
        let opts = cfg.bracket_options();
        let first = lambda_inf_bracket(&g, &sigma, &pi, &opts).unwrap();
        prop_assert!(first.lower <= first.upper + 1e-12);
        prop_assert_eq!(first, lambda_inf_bracket(&g, &sigma, &pi, &opts).unwrap());
    }

    #[test]
    fn cyclic_eta_matches_oracle(seed in any::<u64>(), n in 2usize..=5, k in 3usize..=4, exps in prop::collection::vec(0usize..4, 15)) {
        let g = common::random_graph(seed, n, false);
        let map: BTreeMap<(usize, usize), usize> = g.edges().into_iter().zip(exps.iter().map(|e| e % k)).collect();
        let cy = CyclicConnection::from_map(&g, k, &map).unwrap();
        let inst = Instance::new("cyclic", g.clone()).with_connection(cy.to_connection());
        let cfg = RunConfig::default();
        let out = compute_constant(&inst, &cfg, "eta_star_out").unwrap().value.approx();
        let sym = compute_constant(&inst, &cfg, "eta_star_sym").unwrap().value.approx();
        let (want_out, want_sym) = common::cyclic_eta(&g, &cy);
        prop_assert!((out - want_out).abs() < 1e-9, "out {} vs {}", out, want_out);
        prop_assert!((sym - want_sym).abs() < 1e-9, "sym {} vs {}", sym, want_sym);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn suite_never_fails_on_circulants(n in 3usize..=9, picks in prop::collection::vec(any::<bool>(), 4), seed in any::<u64>()) {
        let g = circulant(n, &picks);
        let inst = Instance::new("circulant", g.clone()).with_signature(Signature::random(&g, seed), "random");
        let report = run_suite(&inst, &RunConfig::default()).unwrap();
        for v in &report.verdicts {
            prop_assert_ne!(v.status, Status::Fail, "{:?}", v);
        }
        let again = run_suite(&inst, &RunConfig::default()).unwrap();
        prop_assert_eq!(report.to_json(), again.to_json());
    }
}
