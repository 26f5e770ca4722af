//! Deterministic sampling budgets for checks on windows too large to
//! enumerate.

use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const DEFAULT_SEED: u64 = 0x5eed;

/// Exhaustive below `budget` items, seeded random subsets above it.
/// `branch` bounds the fan-out used when extending a sample (pairs, triples).
#[derive(Clone, Debug)]
pub struct Sampler {
    budget: usize,
    branch: usize,
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64, budget: usize, branch: usize) -> Self {
        Sampler {
            budget: budget.max(1),
            branch: branch.max(1),
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// A sampler that never subsamples.
    pub fn exhaustive() -> Self {
        Sampler::new(DEFAULT_SEED, usize::MAX, usize::MAX)
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    pub fn branch(&self) -> usize {
        self.branch
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// All of `items` when it fits in `limit`, else `limit` of them chosen
    /// at random, kept in their original order.
    pub fn pick<T: Clone>(&mut self, items: &[T], limit: usize) -> Vec<T> {
        if items.len() <= limit {
            return items.to_vec();
        }
        let mut chosen = index::sample(&mut self.rng, items.len(), limit).into_vec();
        chosen.sort_unstable();
        chosen.into_iter().map(|i| items[i].clone()).collect()
    }

    pub fn pick_budget<T: Clone>(&mut self, items: &[T]) -> Vec<T> {
        let limit = self.budget;
        self.pick(items, limit)
    }

    pub fn pick_branch<T: Clone>(&mut self, items: &[T]) -> Vec<T> {
        let limit = self.branch;
        self.pick(items, limit)
    }
}

impl Default for Sampler {
    fn default() -> Self {
        Sampler::new(DEFAULT_SEED, 400, 12)
    }
}
