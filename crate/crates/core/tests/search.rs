mod oracle;

use proptest::prelude::*;
use zlq_core::rng::derive_stream;
use zlq_core::search::{greedy_fill, local_improve, run_search, CandidatePool, DeleteWidth, SearchConfig};
use zlq_core::stop::Never;
use zlq_core::{verify, Board, CandidateMode, Degeneracy, Grid};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn improvement_never_shrinks(q in 3u32..=5, seed in any::<u64>(), width in prop::bool::ANY) {
        let grid = Grid::new(q).unwrap();
        let pool = CandidatePool::new(grid, CandidateMode::Full);
        let mut board = Board::new(grid);
        // the first half of the pool only, so there is room to improve
        let order: Vec<usize> = (0..pool.len() / 2).collect();
        greedy_fill(&mut board, &pool, &order);
        let before = board.len();
        let mut config = SearchConfig::new(q, seed, 1);
        config.delete_width = if width { DeleteWidth::Two } else { DeleteWidth::One };
        let sizes = local_improve(&mut board, &pool, &config, &mut derive_stream(seed, 0), &|_| false, &Never);
        prop_assert!(board.len() >= before);
        prop_assert!(sizes.windows(2).all(|w| w[0] <= w[1]));
        prop_assert!(oracle::admissible(q, board.family().edges()));
    }

    #[test]
    fn results_are_verified_and_reproducible(q in 3u32..=5, seed in any::<u64>(), nondeg in prop::bool::ANY) {
        let mut config = SearchConfig::new(q, seed, 2);
        config.improvement_passes = 2;
        if nondeg {
            config.mode = CandidateMode::NondegenerateOnly;
        }
        let a = run_search(config.clone(), &Never).unwrap();
        prop_assert!(a.verified);
        prop_assert!(oracle::admissible(q, a.best.edges()));
        if nondeg {
            prop_assert!(a.best.edges().iter().all(|e| e.degeneracy() == Degeneracy::Nondegenerate));
        }
        prop_assert_eq!(run_search(config, &Never).unwrap(), a);
    }
}

#[test]
fn frozen_edges_survive() {
    let grid = Grid::new(5).unwrap();
    let pool = CandidatePool::new(grid, CandidateMode::Full);
    let mut board = Board::new(grid);
    let order: Vec<usize> = (0..pool.len()).step_by(7).collect();
    greedy_fill(&mut board, &pool, &order);
    let frozen: Vec<_> = board.edges().take(3).collect();
    let ids: Vec<usize> = frozen.iter().map(|(id, _)| *id).collect();
    let config = SearchConfig::new(5, 11, 1);
    local_improve(&mut board, &pool, &config, &mut derive_stream(11, 0), &|id| ids.contains(&id), &Never);
    let family = board.family();
    assert!(frozen.iter().all(|(_, e)| family.contains(e)));
    assert!(verify(&family).is_pass());
}

#[test]
fn q4_search_reaches_the_optimum() {
    let r = run_search(SearchConfig::new(4, 2024, 16), &Never).unwrap();
    assert_eq!(r.best.len(), 6);
    assert_eq!(r.bound(), 26);
}
