use archbench::bench::{csv_string, run_with_workers, summarize, RouterKind, RunConfig};
use archbench::graphgen::GraphFamily;

fn config(router: RouterKind, topology: &str) -> RunConfig {
    let mut cfg = RunConfig::new(
        GraphFamily::Er { density: 0.5 },
        vec![6, 9],
        topology.parse().unwrap(),
        router,
    );
    cfg.instances = 5;
    cfg.base_seed = 11;
    cfg
}

#[test]
fn csv_bytes_do_not_depend_on_workers() {
    for (router, topo) in [
        (RouterKind::Shuffle, "grid"),
        (RouterKind::Sabre, "sycamore:3x4"),
        (RouterKind::Baseline, "line"),
    ] {
        let cfg = config(router, topo);
        let one = csv_string(&run_with_workers(&cfg, Some(1)).unwrap().rows).unwrap();
        let four = csv_string(&run_with_workers(&cfg, Some(4)).unwrap().rows).unwrap();
        let again = csv_string(&run_with_workers(&cfg, Some(1)).unwrap().rows).unwrap();
        assert_eq!(one, four);
        assert_eq!(one, again);
    }
}

#[test]
fn summary_recomputes_from_rows() {
    let rec = run_with_workers(&config(RouterKind::Sabre, "line"), Some(2)).unwrap();
    assert_eq!(summarize(&rec.rows), rec.summary);
    assert_eq!(rec.rows.len(), 10);
    assert!(rec.rows.iter().all(|r| r.seed == 11 + r.instance as u64));
    let mean6: f64 = rec
        .rows
        .iter()
        .filter(|r| r.size == 6)
        .map(|r| r.two_q_count as f64)
        .sum::<f64>()
        / 5.0;
    assert!((rec.summary[0].two_q_count.mean - mean6).abs() < 1e-12);
}

#[test]
fn timing_is_opt_in() {
    let mut cfg = config(RouterKind::Sabre, "line");
    assert!(run_with_workers(&cfg, Some(1))
        .unwrap()
        .rows
        .iter()
        .all(|r| r.router_ms == 0.0));
    cfg.record_timing = true;
    assert!(run_with_workers(&cfg, Some(1))
        .unwrap()
        .rows
        .iter()
        .all(|r| r.router_ms >= 0.0));
}
