mod common;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn compiled_formulas_match_direct_evaluation() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for (name, text) in common::formula_corpus() {
        let stats = common::mso_oracle(&text, 5, &mut rng);
        assert!(stats.checked > 0, "{name}");
        assert!(
            stats.discrepancies.is_empty(),
            "{name}: {:?}",
            stats.discrepancies
        );
    }
}

#[test]
fn corpus_has_twelve_formulas() {
    assert_eq!(common::formula_corpus().len(), 12);
}
