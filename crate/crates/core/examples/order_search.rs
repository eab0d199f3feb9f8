//! Sweep variable orders looking for a squarefree initial ideal.

use jmlat::families::build_lk;
use jmlat::groebner::Budget;
use jmlat::joinmeet::{search_squarefree_order, SearchStrategy};

fn main() -> jmlat::Result<()> {
    let budget = Budget::default();
    for lengths in [vec![2, 1], vec![1, 1, 1], vec![2, 1, 1]] {
        let l = build_lk(&lengths)?;
        let strategy = if l.len() <= 6 {
            SearchStrategy::AllRevlex
        } else {
            SearchStrategy::Sampled {
                count: 200,
                seed: 7,
                lex: false,
            }
        };
        let r = search_squarefree_order(&l, &strategy, budget)?;
        println!(
            "{lengths:?}: {}/{} squarefree, {:?}",
            r.squarefree_count, r.tested, r.verdict
        );
    }
    Ok(())
}
