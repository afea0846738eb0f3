//! Desk-scale grid checks that are not part of the acceptance gate.

use worstchar::bench::{run_experiment, ExperimentSpec, FreqSource, GRID_LENGTHS};
use worstchar::corpus::{CorpusSpec, Distribution};
use worstchar::Algorithm;

#[test]
fn rand8_grid() {
    let spec = ExperimentSpec {
        corpus: CorpusSpec { distribution: Distribution::Uniform, sigma: 8, n: 2_000_000, seed: 1 },
        pattern_lengths: GRID_LENGTHS.to_vec(),
        pattern_count: 100,
        algorithms: Algorithm::HEURISTICS.to_vec(),
        repeats: 1,
        freq_source: FreqSource::ExactModel,
        measure_time: false,
    };
    let res = run_experiment(&spec).unwrap();

    let sm = res.mean_advancement(Algorithm::Sm, 256).unwrap();
    assert!((sm - 11.68).abs() <= 0.6, "SM m=256: {sm}");

    for m in GRID_LENGTHS {
        let get = |a| res.mean_advancement(a, m).unwrap();
        let (hor, qs, sm, wc) = (get(Algorithm::Hor), get(Algorithm::Qs), get(Algorithm::Sm), get(Algorithm::Wc));
        assert!(sm >= hor - 0.05 && sm >= qs - 0.05, "m={m}: SM {sm} HOR {hor} QS {qs}");
        assert!(wc >= 1.0 && hor >= 1.0 && qs >= 1.0, "m={m}");
        let checksums: Vec<_> = res.cells.iter().filter(|c| c.m == m).map(|c| c.occurrences_checksum).collect();
        assert!(checksums.windows(2).all(|w| w[0] == w[1]), "m={m}");
    }
}
