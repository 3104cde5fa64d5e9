use allee_core::assoc::{noise_sweep, LearningRule, NetworkShape, NoiseSweepSpec};

const SIGMAS: [f64; 11] = [0.0, 0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.35, 0.4, 0.45, 0.5];

#[test]
fn clean_cues_give_the_best_mean_accuracy() {
    let shape = NetworkShape::new(5, 25, 25).unwrap();
    let rules = vec![LearningRule::hebbian(0.01), LearningRule::oja(5.0, 0.01)];
    let spec = NoiseSweepSpec::new(shape, rules, 10, SIGMAS.to_vec(), (0..20).collect());
    let table = noise_sweep(&spec).unwrap();
    for (r, row) in table.mean.iter().enumerate() {
        let best = row.iter().copied().fold(f64::MIN, f64::max);
        assert_eq!(row[0], best, "{}: {row:?}", table.rules[r].kind);
        assert!(row[0] > 0.8, "{}: {row:?}", table.rules[r].kind);
    }
}

#[test]
fn noise_degrades_hebbian_recall() {
    let shape = NetworkShape::new(5, 25, 25).unwrap();
    let spec = NoiseSweepSpec::new(shape, vec![LearningRule::hebbian(0.01)], 10, vec![0.0, 0.5], (0..20).collect());
    let t = noise_sweep(&spec).unwrap();
    assert!(t.mean[0][0] > t.mean[0][1]);
}
