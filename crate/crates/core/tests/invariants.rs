use proptest::prelude::*;

use polymer_lab::couplings::{coupled_tree_paths, pair_order, path_order};
use polymer_lab::environment::{make_bulk_field, RngStream, UniformField};
use polymer_lab::experiments::{ExperimentConfig, ExperimentReport, Verdict};
use polymer_lab::polymer::{
    edge_crossing_probs, exit_distribution_exact, log_partition_backward, log_partition_forward, nested_partition,
    sample_path, Convention,
};
use polymer_lab::stationary::{apply_involution, theta_log};
use polymer_lab::{Rect, Vertex};

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * (1.0 + a.abs().max(b.abs()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn involution_twice_is_identity(li in -20.0f64..20.0, lj in -20.0f64..20.0, ly in -20.0f64..20.0) {
        let (a, b, c) = theta_log(li, lj, ly);
        let (x, y, z) = theta_log(a, b, c);
        prop_assert!(close(x, li, 1e-13) && close(y, lj, 1e-13) && close(z, ly, 1e-13));
        let (i, j, _) = apply_involution(li.exp(), lj.exp(), ly.exp()).unwrap();
        prop_assert!(i > 0.0 && j > 0.0);
    }

    #[test]
    fn forward_and_backward_totals_agree(seed in any::<u64>(), w in 1i64..12, h in 1i64..12) {
        let rect = Rect::from_coords(0, 0, w, h).unwrap();
        let f = make_bulk_field(rect, 1.0, seed).unwrap();
        let fwd = log_partition_forward(&f, rect.lo, Convention::WithBaseWeight).unwrap();
        let back = log_partition_backward(&f, rect.hi, Convention::WithBaseWeight).unwrap();
        prop_assert!(close(fwd.logz(rect.hi), back.logz(rect.lo), 1e-13));
    }

    #[test]
    fn exit_law_is_a_probability(seed in any::<u64>(), vx in 0i64..6, vy in 0i64..6, px in 6i64..10, py in 6i64..10) {
        let rect = Rect::from_coords(0, 0, px, py).unwrap();
        let f = make_bulk_field(rect, 1.0, seed).unwrap();
        let d = exit_distribution_exact(&f, rect.lo, Vertex::new(vx, vy), rect.hi, Convention::UnitBase).unwrap();
        prop_assert!((d.total() - 1.0).abs() < 1e-12);
        prop_assert!(d.iter().all(|(_, p)| (0.0..=1.0 + 1e-12).contains(&p)));
    }

    #[test]
    fn crossing_law_is_a_probability(seed in any::<u64>(), ux in -6i64..-1, uy in -6i64..0, vx in 1i64..6, vy in 0i64..6) {
        let f = make_bulk_field(Rect::from_coords(-6, -6, 6, 6).unwrap(), 1.0, seed).unwrap();
        let d = edge_crossing_probs(&f, Vertex::new(ux, uy), Vertex::new(vx, vy)).unwrap();
        prop_assert!((d.total() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn nested_partition_divides(seed in any::<u64>(), vx in 0i64..5, vy in 0i64..5) {
        let rect = Rect::from_coords(0, 0, 8, 8).unwrap();
        let f = make_bulk_field(rect, 1.0, seed).unwrap();
        let g = log_partition_forward(&f, rect.lo, Convention::WithBaseWeight).unwrap();
        let v = Vertex::new(vx, vy);
        let n = nested_partition(&f, &g, v, rect.hi).unwrap();
        for z in Rect::new(v, rect.hi).unwrap().vertices() {
            prop_assert!(close(n.logz(z), g.logz(z) - g.logz(v), 1e-12));
        }
    }

    #[test]
    fn sampled_paths_are_admissible(seed in any::<u64>(), w in 1i64..15, h in 1i64..15) {
        let rect = Rect::from_coords(0, 0, w, h).unwrap();
        let f = make_bulk_field(rect, 0.7, seed).unwrap();
        let g = log_partition_forward(&f, rect.lo, Convention::UnitBase).unwrap();
        let p = sample_path(&g, rect.hi, &mut RngStream::new(seed, 1)).unwrap();
        prop_assert_eq!(p.o(), rect.lo);
        prop_assert_eq!(p.p(), rect.hi);
        prop_assert_eq!(p.len() as i64, w + h + 1);
    }

    #[test]
    fn tree_paths_keep_order(seed in any::<u64>(), a in 0i64..4, b in 1i64..4, dx in 0i64..3, dy in 0i64..3, ex in 0i64..3, ey in 0i64..3) {
        let rect = Rect::from_coords(0, 0, 11, 11).unwrap();
        let f = make_bulk_field(rect, 1.0, seed).unwrap();
        let u = UniformField::generate(rect, seed ^ 1);
        let x1 = Vertex::new(a, b + 2);
        let x2 = x1 + Vertex::new(dx, -dy.min(x1.y));
        let y1 = Vertex::new(7, 9);
        let y2 = y1 + Vertex::new(ex, -ey);
        prop_assume!(pair_order(x1, y1, x2, y2));
        let paths = coupled_tree_paths(&f, &u, &[(x1, y1), (x2, y2)]).unwrap();
        prop_assert!(path_order(&paths[0], &paths[1]));
    }

    #[test]
    fn config_text_overlay(sizes in proptest::collection::btree_set(1i64..5000, 1..6), replicas in 1usize..10_000, seed in any::<u64>(), x in -1e6f64..1e6) {
        let sizes: Vec<i64> = sizes.into_iter().collect();
        let text = format!(
            "sizes = {}\nreplicas = {replicas}  # count\nseed = {seed}\nfoo = {x:e}\n",
            sizes.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(", ")
        );
        let mut cfg = ExperimentConfig::new("walk-max", vec![1], 1, 0);
        cfg.apply_text(&text).unwrap();
        cfg.validate().unwrap();
        prop_assert_eq!(&cfg.sizes, &sizes);
        prop_assert_eq!((cfg.replicas, cfg.seed), (replicas, seed));
        prop_assert_eq!(cfg.param("foo", 0.0), x);
    }

    #[test]
    fn report_json_round_trips(seed in any::<u64>(), vals in proptest::collection::vec(-1e12f64..1e12, 1..8), ok in any::<bool>()) {
        let cfg = ExperimentConfig::new("gibbs", vec![2, 3], 10, seed);
        let mut r = ExperimentReport::new("gibbs", &cfg);
        r.warnings.push(format!("{vals:?}"));
        r.verdicts.push(Verdict::new("v", ok, ""));
        for (i, &v) in vals.iter().enumerate() {
            r.calibration.insert(format!("k{i}"), v);
        }
        let s = r.to_json().unwrap();
        let back = ExperimentReport::from_json(&s).unwrap();
        prop_assert_eq!(back.to_json().unwrap(), s);
        prop_assert_eq!(back.passed(), ok);
    }
}
