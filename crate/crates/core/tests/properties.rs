use std::path::{Path, PathBuf};
use std::sync::OnceLock;

use gqprim::arith::{enumerate_orders, knapsack, knapsack_exists, KnapsackMode, OrderCandidate};
use gqprim::gq::QuadrangleData;
use gqprim::graph::CollinearityGraph;
use gqprim::io::{emit_report, gq_to_json, load_bundle, load_gq, parse_gq, parse_report, Bundle, ReportFormat};
use gqprim::permgroup::{coset_action, random_word, CosetActionData, PermGroup, SuborbitId};
use gqprim::pipeline::{run_bundle, Options};
use gqprim::BigUint;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn bundle(name: &str) -> Bundle {
    load_bundle(&data(&format!("{name}.json"))).unwrap()
}

fn brute_orders(n: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    let mut s = 2;
    while (s + 1) * (2 * s + 1) <= n {
        if n % (s + 1) == 0 && (n / (s + 1) - 1) % s == 0 {
            let t = (n / (s + 1) - 1) / s;
            if t >= 2 && OrderCandidate::from_u64(s, t).satisfies_constraints() {
                out.push((s, t));
            }
        }
        s += 1;
    }
    out
}

fn as_pairs(cands: &[OrderCandidate]) -> Vec<(u64, u64)> {
    cands
        .iter()
        .map(|c| (c.s.to_string().parse().unwrap(), c.t.to_string().parse().unwrap()))
        .collect()
}

proptest! {
    #[test]
    fn orders_match_brute_force(n in 2u64..=1_000_000) {
        prop_assert_eq!(as_pairs(&enumerate_orders(&BigUint::from(n))), brute_orders(n));
    }

    #[test]
    fn orders_of_quadrangle_point_counts(i in any::<prop::sample::Index>()) {
        let feasible: Vec<OrderCandidate> = (2u64..60)
            .flat_map(|s| (2u64..60).map(move |t| OrderCandidate::from_u64(s, t)))
            .filter(OrderCandidate::satisfies_constraints)
            .collect();
        let c = &feasible[i.index(feasible.len())];
        let orders = enumerate_orders(&c.num_points);
        prop_assert!(orders.contains(c));
    }

    #[test]
    fn unbounded_solutions_contain_bounded(values in prop::collection::vec(1u64..10, 0..8), target in 0u64..40) {
        let bounded = knapsack(&values, target, KnapsackMode::Bounded);
        let unbounded = knapsack(&values, target, KnapsackMode::Unbounded);
        for s in &bounded {
            prop_assert_eq!(s.total(), target as u128);
            prop_assert!(unbounded.contains(s));
        }
        for mode in [KnapsackMode::Bounded, KnapsackMode::Unbounded] {
            let wide: Vec<u128> = values.iter().map(|&v| v as u128).collect();
            prop_assert_eq!(knapsack_exists(&wide, target as u128, mode), !knapsack(&values, target, mode).is_empty());
        }
    }
}

struct Fixture {
    quadrangles: Vec<QuadrangleData>,
    actions: Vec<(String, PermGroup, PermGroup, CosetActionData)>,
}

fn fixture() -> &'static Fixture {
    static F: OnceLock<Fixture> = OnceLock::new();
    F.get_or_init(|| {
        let quadrangles = ["w32.json", "h39.json"]
            .iter()
            .map(|f| load_gq(&data(f)).unwrap().gq)
            .collect();
        let mut actions = Vec::new();
        for name in ["a6", "m11", "psp43", "psu43"] {
            let b = bundle(name);
            let g = b.group.clone().unwrap();
            for m in &b.maximals {
                let h = m.group.clone().unwrap();
                let action = coset_action(&g, &h, 1 << 16).unwrap();
                actions.push((format!("{name}/{}", m.name), g.clone(), h, action));
            }
        }
        Fixture { quadrangles, actions }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn collinearity_graphs_have_quadrangle_lambda_mu(which in 0usize..2, u in any::<prop::sample::Index>(), w in any::<prop::sample::Index>()) {
        let gq = &fixture().quadrangles[which];
        let g: CollinearityGraph = gq.collinearity_graph();
        let (u, w) = (u.index(gq.point_count), w.index(gq.point_count));
        prop_assume!(u != w);
        prop_assert_eq!(g.degree(u) as u64, gq.s * (gq.t + 1));
        let common = g.common_neighbours(u, w) as u64;
        if g.is_adjacent(u, w) {
            prop_assert_eq!(common, gq.s - 1);
        } else {
            prop_assert_eq!(common, gq.t + 1);
        }
    }

    #[test]
    fn pairing_is_an_involution(i in any::<prop::sample::Index>()) {
        let actions = &fixture().actions;
        let (name, _, _, action) = &actions[i.index(actions.len())];
        for id in (0..action.suborbit_count()).map(SuborbitId) {
            let p = action.orbital_pairing(id);
            prop_assert_eq!(action.orbital_pairing(p), id, "{}", name);
            prop_assert_eq!(action.suborbit(p).len(), action.suborbit(id).len());
        }
    }

    #[test]
    fn subdegrees_ignore_generating_sets(i in any::<prop::sample::Index>(), seed in any::<u64>()) {
        let actions = &fixture().actions;
        let (name, g, h, action) = &actions[i.index(actions.len())];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut gens = g.generators().to_vec();
        gens.push(random_word(&mut rng, g.generators(), g.degree(), 12));
        gens.shuffle(&mut rng);
        let mut hgens = h.generators().to_vec();
        hgens.push(random_word(&mut rng, h.generators(), h.degree(), 12));
        hgens.shuffle(&mut rng);
        let g2 = PermGroup::new(g.degree(), gens).unwrap();
        let h2 = PermGroup::new(h.degree(), hgens).unwrap();
        let again = coset_action(&g2, &h2, 1 << 16).unwrap();
        prop_assert_eq!(again.sorted_subdegrees(), action.sorted_subdegrees(), "{}", name);
    }
}

#[test]
fn quadrangle_files_round_trip() {
    for gq in &fixture().quadrangles {
        let text = gq_to_json("X", gq);
        let back = parse_gq(&text).unwrap();
        assert_eq!(&back.gq, gq);
        assert_eq!(gq_to_json("X", &back.gq), text);
        let dual = gq.dual();
        assert_eq!(parse_gq(&gq_to_json("D", &dual)).unwrap().gq, dual);
    }
}

#[test]
fn reports_round_trip() {
    for name in ["a6", "m11", "j1"] {
        let records = run_bundle(&bundle(name), &Options::default());
        let text = emit_report(&records, ReportFormat::Json);
        let back = parse_report(&text).unwrap();
        assert_eq!(back, records);
        assert_eq!(emit_report(&back, ReportFormat::Json), text);
    }
}
