use proptest::prelude::*;

use perturbed_trees::absorption::{
    complete_embedding, count_absorbing, greedy_star_pack, min_absorbing_naive, min_absorbing_over_triples,
    AbsorbingCounter, CompletionOptions,
};
use perturbed_trees::concentration::GoodStarParams;
use perturbed_trees::embed::{embed_almost, sample_uniform_injection, verify_embedding};
use perturbed_trees::models::{perturb, sample_binomial_digraph, sample_mirrored_digraph};
use perturbed_trees::tree::random_tree;
use perturbed_trees::{seed, Digraph, Embedding, OrientedTree, PipelineConfig, RetryPolicy, Sign};

fn tree(n: usize, d: usize, s: u64) -> OrientedTree {
    random_tree(n, d, &mut seed::rng(s)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_trees_are_degree_capped_trees(n in 2usize..80, d in 2usize..6, s in any::<u64>()) {
        let t = tree(n, d, s);
        prop_assert_eq!(t.edge_count(), n - 1);
        prop_assert!(t.max_total_degree() <= d);
        // Rebuilding re-checks connectivity and acyclicity.
        prop_assert!(OrientedTree::new(n, t.edges().collect()).is_ok());
    }

    #[test]
    fn orderings_are_prefix_connected(n in 2usize..60, s in any::<u64>(), r in any::<prop::sample::Index>()) {
        let t = tree(n, 3, s);
        let ord = t.valid_ordering(r.index(n)).unwrap();
        prop_assert!(t.check_ordering(&ord).unwrap());
        let mut seen = vec![false; n];
        let (a, b) = t.edge(ord.0[0]);
        seen[a] = true;
        seen[b] = true;
        for &e in &ord.0[1..] {
            let (a, b) = t.edge(e);
            prop_assert!(seen[a] ^ seen[b]);
            seen[a] = true;
            seen[b] = true;
        }
    }

    #[test]
    fn prefix_subtrees_keep_edges(n in 3usize..60, s in any::<u64>(), k in any::<prop::sample::Index>()) {
        let t = tree(n, 3, s);
        let ord = t.valid_ordering(t.center()).unwrap();
        let k = 1 + k.index(n - 1);
        let pre = t.prefix_subtree(&ord, k).unwrap();
        prop_assert_eq!(pre.tree.n(), k + 1);
        prop_assert!(pre.tree.check_ordering(&pre.ordering).unwrap());
        for (i, (a, b)) in pre.tree.edges().enumerate() {
            let orig = (pre.to_original[a] as usize, pre.to_original[b] as usize);
            prop_assert_eq!(t.edge(pre.original_edges[i]), orig);
        }
    }

    #[test]
    fn star_packs_are_disjoint_full_stars(n in 2usize..120, d in 2usize..5, s in any::<u64>()) {
        let t = tree(n, d, s);
        let pack = greedy_star_pack(&t);
        prop_assert!(pack.validate(&t).is_ok());
        let mut owner = vec![None; n];
        for (i, star) in pack.stars().iter().enumerate() {
            prop_assert!(star.size() <= d + 1);
            for v in star.vertices() {
                prop_assert!(owner[v].is_none());
                owner[v] = Some(i);
                prop_assert_eq!(pack.member_of(v), Some(i));
            }
        }
        prop_assert!(pack.len() * (d * d + 1) >= n);
    }

    #[test]
    fn mirrored_samples_are_reversal_invariant(n in 1usize..40, p in 0.0f64..1.0, s in any::<u64>()) {
        let g = sample_mirrored_digraph(n, p, s).unwrap();
        prop_assert_eq!(g.reversed(), g);
    }

    #[test]
    fn samplers_are_pure(n in 1usize..40, p in 0.0f64..1.0, s in any::<u64>()) {
        prop_assert_eq!(sample_binomial_digraph(n, p, s).unwrap(), sample_binomial_digraph(n, p, s).unwrap());
        prop_assert_eq!(sample_mirrored_digraph(n, p, s).unwrap(), sample_mirrored_digraph(n, p, s).unwrap());
    }

    #[test]
    fn perturbation_contains_both_parts(n in 2usize..40, c in 0.0f64..2.0, s in any::<u64>()) {
        let base = sample_binomial_digraph(n, 0.3, s).unwrap();
        let pg = perturb(&base, c, s ^ 1).unwrap();
        prop_assert!(base.is_subgraph_of(&pg.graph));
        prop_assert!(pg.random.is_subgraph_of(&pg.graph));
        prop_assert!(pg.graph.validate().is_ok());
    }

    #[test]
    fn injections_are_consistent(t in 0usize..30, extra in 0usize..30, s in any::<u64>()) {
        let phi = sample_uniform_injection(t, t + extra, s).unwrap();
        prop_assert!(phi.is_total());
        for (v, h) in phi.pairs() {
            prop_assert_eq!(phi.preimage(h), Some(v));
        }
        prop_assert_eq!(phi.unused_hosts().len(), extra);
    }

    #[test]
    fn counter_matches_direct_count(n in 8usize..30, p in 0.3f64..1.0, s in any::<u64>()) {
        let t = tree(n, 3, s);
        let g = sample_binomial_digraph(n, p, s).unwrap();
        let pack = greedy_star_pack(&t);
        let phi = sample_uniform_injection(n, n, s).unwrap();
        let mut used = fixedbitset::FixedBitSet::with_capacity(pack.len());
        for k in (0..pack.len()).step_by(3) {
            used.insert(k);
        }
        let counter = AbsorbingCounter::new(&pack, &used, &phi, &g).unwrap();
        for u in 0..n {
            for w in 0..n {
                for sign in Sign::BOTH {
                    let direct = count_absorbing(&pack, &used, &phi, &g, u, sign, w).unwrap();
                    prop_assert_eq!(counter.count(u, sign, w), direct);
                }
            }
        }
    }

    #[test]
    fn minimum_matches_naive(n in 8usize..24, p in 0.3f64..1.0, s in any::<u64>(), k in 1usize..4) {
        let t = tree(n, 3, s);
        let g = sample_binomial_digraph(n + k, p, s).unwrap();
        let pack = greedy_star_pack(&t);
        let phi = sample_uniform_injection(n, n + k, s).unwrap();
        prop_assert!(min_absorbing_over_triples(&pack, &phi, &sample_binomial_digraph(n, p, s).unwrap(), &[]).is_err());
        let free = phi.unused_hosts();
        prop_assert_eq!(
            min_absorbing_over_triples(&pack, &phi, &g, &free).unwrap(),
            min_absorbing_naive(&pack, &phi, &g, &free).unwrap()
        );
    }

    #[test]
    fn completion_success_implies_verified(n in 12usize..40, i in 1usize..4, s in any::<u64>()) {
        let t = tree(n, 3, s);
        let ord = t.valid_ordering(t.center()).unwrap();
        let g = sample_binomial_digraph(n, 0.9, s).unwrap();
        let pre = t.prefix_subtree(&ord, n - 1 - i).unwrap();
        let out = embed_almost(&pre.tree, &pre.ordering, &g, s, RetryPolicy::default()).unwrap();
        if let Some(phi) = out.embedding {
            let phi0 = phi.relabel_tree(&pre.to_original, n).unwrap();
            let pack = greedy_star_pack(&pre.tree).relabel(&pre.to_original, n).unwrap();
            let done = complete_embedding(&t, &ord, &phi0, &g, &pack, CompletionOptions { debug: true }).unwrap();
            prop_assert_eq!(done.succeeded(), done.embedding.is_some());
            if let Some(full) = done.embedding {
                prop_assert!(verify_embedding(&t, &g, &full).unwrap().is_valid());
                for v in 0..n {
                    if let Some(h) = phi0.get(v) {
                        // Vertices outside retired stars keep their images.
                        let retired = pack.member_of(v).is_some_and(|k| done.steps.iter().any(|st| st.retired.contains(&k)));
                        if !retired {
                            prop_assert_eq!(full.get(v), Some(h));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn good_star_params_follow_their_formulas(n in 10usize..5000, a in 0.01f64..1.0, gamma in 0.001f64..0.5, d in 1usize..8) {
        let p = GoodStarParams::new(n, a, gamma, d).unwrap();
        prop_assert_eq!(p.alpha_prime, a / 3.0);
        let cap = (gamma * n as f64).min(a * n as f64 / (6.0 * (d as f64 + 1.0))).ceil() as usize;
        prop_assert_eq!(p.n_cap, cap);
    }

    #[test]
    fn text_formats_round_trip(n in 2usize..40, p in 0.0f64..1.0, s in any::<u64>()) {
        let g = sample_binomial_digraph(n, p, s).unwrap();
        prop_assert_eq!(Digraph::parse_edge_list(g.to_edge_list().as_bytes()).unwrap(), g);
        let t = tree(n, 3, s);
        prop_assert_eq!(OrientedTree::parse_text(t.to_text().as_bytes()).unwrap(), t);
        let phi = sample_uniform_injection(n, n + 3, s).unwrap();
        prop_assert_eq!(Embedding::parse_text(phi.to_text().as_bytes(), n, n + 3).unwrap(), phi);
    }
}

#[test]
fn pipeline_config_json_round_trip() {
    let cfg = PipelineConfig {
        seed: 77,
        debug: true,
        ..PipelineConfig::new(150, 0.25, 4, 12.0, 0.1)
    };
    let back = PipelineConfig::from_json(&cfg.to_json()).unwrap();
    assert_eq!(back, cfg);
    assert!(PipelineConfig::from_json(r#"{"n": 100, "bogus": 1}"#).is_err());
    assert!(PipelineConfig::new(100, 0.3, 3, 5.0, 0.4).validate().is_err());
}
