//! Per-generation steps for every algorithm variant: the plain (μ+λ)
//! step, fitness sharing, clearing, deterministic crowding, incest
//! prevention, duplicate-genotype removal, an island model with ring
//! migration, and the clearing + unique-survivor hybrid.
//!
//! Every step consumes randomness from a single [`RandomSource`] in a
//! fixed order (offspring decisions in creation order, mutation bits in
//! position order, selection tournaments in slot order), so a whole run
//! replays identically from its seed.

use std::collections::HashSet;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::genome::{hamming, random_genome, Genome, Individual, Population, RandomSource};
use crate::landscape::Landscape;
use crate::variation::{
    bit_flip_mutation, generate_offspring, tournament_select, two_point_crossover, VariationConfig,
};

/// Parameters for the diversity mechanisms.
#[derive(Clone, Debug)]
pub struct MechanismConfig {
    /// Niche radius for fitness sharing, in Hamming units.
    pub sharing_radius: usize,
    /// Power-law exponent of the sharing function.
    pub sharing_alpha: f64,
    /// Niche radius for clearing, in Hamming units.
    pub clearing_radius: usize,
    /// Winners allowed per clearing niche.
    pub niche_cap: usize,
    /// Starting Hamming threshold for incest prevention.
    pub incest_threshold_initial: usize,
    /// How much the incest threshold drops each time no suitable mate exists.
    pub incest_threshold_decrement: usize,
    /// Number of islands for the island model.
    pub island_count: usize,
    /// Generations between ring migrations.
    pub migration_interval: usize,
    /// Members copied from each island to its ring neighbor per migration.
    pub emigrants_per_island: usize,
}

impl Default for MechanismConfig {
    fn default() -> Self {
        MechanismConfig {
            sharing_radius: 25,
            sharing_alpha: 1.0,
            clearing_radius: 25,
            niche_cap: 1,
            incest_threshold_initial: 50,
            incest_threshold_decrement: 1,
            island_count: 5,
            migration_interval: 20,
            emigrants_per_island: 3,
        }
    }
}

/// The algorithm variants, by their stable CLI-facing names.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MechanismKind {
    Basic,
    Sharing,
    Clearing,
    Crowding,
    Incest,
    Unique,
    Islands,
    Hybrid,
}

impl MechanismKind {
    pub const ALL: [MechanismKind; 8] = [
        MechanismKind::Basic,
        MechanismKind::Sharing,
        MechanismKind::Clearing,
        MechanismKind::Crowding,
        MechanismKind::Incest,
        MechanismKind::Unique,
        MechanismKind::Islands,
        MechanismKind::Hybrid,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            MechanismKind::Basic => "basic",
            MechanismKind::Sharing => "sharing",
            MechanismKind::Clearing => "clearing",
            MechanismKind::Crowding => "crowding",
            MechanismKind::Incest => "incest",
            MechanismKind::Unique => "unique",
            MechanismKind::Islands => "islands",
            MechanismKind::Hybrid => "hybrid",
        }
    }
}

impl FromStr for MechanismKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        MechanismKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| {
                Error::not_found(format!(
                    "unknown algorithm `{s}`; known algorithms: {}",
                    MechanismKind::ALL.map(|k| k.name()).join(", ")
                ))
            })
    }
}

impl std::fmt::Display for MechanismKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

fn evaluated_union(
    pop: &Population,
    offspring: Vec<Genome>,
    landscape: &Landscape,
) -> Result<Vec<Individual>> {
    let mut union: Vec<Individual> = pop.members().to_vec();
    union.reserve(offspring.len());
    for genome in offspring {
        let raw = landscape.evaluate(&genome)?;
        union.push(Individual::evaluated(genome, raw));
    }
    Ok(union)
}

/// One plain (μ+λ) generation: λ offspring, evaluation, then tournament
/// selection of μ survivors from parents and offspring together.
/// Effective fitness stays equal to raw fitness throughout.
pub fn basic_step(
    pop: &Population,
    landscape: &Landscape,
    lambda: usize,
    var: &VariationConfig,
    rng: &mut RandomSource,
) -> Result<Population> {
    let offspring = generate_offspring(pop.members(), lambda, var, rng)?;
    let union = evaluated_union(pop, offspring, landscape)?;
    let survivors = tournament_select(&union, pop.len(), var.tournament_size, rng)?;
    Ok(Population::new(survivors))
}

fn sharing_function(distance: usize, radius: usize, alpha: f64) -> f64 {
    if distance <= radius {
        1.0 - (distance as f64 / radius as f64).powf(alpha)
    } else {
        0.0
    }
}

/// Fitness sharing: divide each raw fitness by the crowding denominator
/// `Σ_j sh(d(i, j))`. The sum includes the individual itself (`sh(0) = 1`),
/// so the denominator is always at least 1.
pub fn sharing_adjust(union: &mut [Individual], radius: usize, alpha: f64) -> Result<()> {
    if radius == 0 {
        return Err(Error::invalid_argument("sharing radius must be at least 1"));
    }
    let n = union.len();
    let mut denom = vec![0.0f64; n];
    for i in 0..n {
        denom[i] += 1.0; // self term
        for j in i + 1..n {
            let sh = sharing_function(hamming(&union[i].genome, &union[j].genome), radius, alpha);
            denom[i] += sh;
            denom[j] += sh;
        }
    }
    for (ind, d) in union.iter_mut().zip(denom) {
        ind.effective_fitness = ind.raw_fitness / d;
    }
    Ok(())
}

/// Clearing: walk the collection in descending raw-fitness order; each
/// still-positive individual claims a niche of `radius` Hamming units and
/// lets at most `cap` positive individuals inside keep their fitness,
/// zeroing the rest. Individuals whose fitness is already non-positive
/// never claim or join a niche.
pub fn clearing_adjust(union: &mut [Individual], radius: usize, cap: usize) {
    for ind in union.iter_mut() {
        ind.effective_fitness = ind.raw_fitness;
    }
    let mut order: Vec<usize> = (0..union.len()).collect();
    order.sort_by(|&a, &b| union[b].raw_fitness.total_cmp(&union[a].raw_fitness));
    for (rank, &i) in order.iter().enumerate() {
        if union[i].effective_fitness <= 0.0 {
            continue;
        }
        let mut winners = 1usize;
        for &j in &order[rank + 1..] {
            if union[j].effective_fitness > 0.0
                && hamming(&union[i].genome, &union[j].genome) < radius
            {
                if winners < cap {
                    winners += 1;
                } else {
                    union[j].effective_fitness = 0.0;
                }
            }
        }
    }
}

/// The plain step with fitness sharing applied to parents and offspring
/// together before selection.
pub fn sharing_step(
    pop: &Population,
    landscape: &Landscape,
    lambda: usize,
    var: &VariationConfig,
    radius: usize,
    alpha: f64,
    rng: &mut RandomSource,
) -> Result<Population> {
    let offspring = generate_offspring(pop.members(), lambda, var, rng)?;
    let mut union = evaluated_union(pop, offspring, landscape)?;
    sharing_adjust(&mut union, radius, alpha)?;
    let survivors = tournament_select(&union, pop.len(), var.tournament_size, rng)?;
    Ok(Population::new(survivors))
}

/// The plain step with clearing applied to parents and offspring together
/// before selection. Cleared individuals stay in the selection pool with
/// zero fitness.
pub fn clearing_step(
    pop: &Population,
    landscape: &Landscape,
    lambda: usize,
    var: &VariationConfig,
    radius: usize,
    cap: usize,
    rng: &mut RandomSource,
) -> Result<Population> {
    let offspring = generate_offspring(pop.members(), lambda, var, rng)?;
    let mut union = evaluated_union(pop, offspring, landscape)?;
    clearing_adjust(&mut union, radius, cap);
    let survivors = tournament_select(&union, pop.len(), var.tournament_size, rng)?;
    Ok(Population::new(survivors))
}

/// The pairing and replacement rule of deterministic crowding: children
/// compete against the parent they sit closest to, and a parent is
/// replaced only by a strictly fitter child.
pub fn crowding_replacement(
    parent1: &Individual,
    parent2: &Individual,
    child1: Individual,
    child2: Individual,
) -> (Individual, Individual) {
    let direct = hamming(&parent1.genome, &child1.genome) + hamming(&parent2.genome, &child2.genome);
    let crossed = hamming(&parent1.genome, &child2.genome) + hamming(&parent2.genome, &child1.genome);
    let (m1, m2) = if direct <= crossed {
        (child1, child2)
    } else {
        (child2, child1)
    };
    let s1 = if m1.raw_fitness > parent1.raw_fitness {
        m1
    } else {
        parent1.clone()
    };
    let s2 = if m2.raw_fitness > parent2.raw_fitness {
        m2
    } else {
        parent2.clone()
    };
    (s1, s2)
}

/// One deterministic-crowding generation: parents are drawn in disjoint
/// random pairs, each pair produces two crossover children (each then
/// mutated with probability `p_mutation`), and children replace their
/// paired parent only when strictly fitter. Produces exactly μ children
/// per generation, so the offspring-count parameter of the other variants
/// does not apply here.
pub fn crowding_step(
    pop: &Population,
    landscape: &Landscape,
    var: &VariationConfig,
    rng: &mut RandomSource,
) -> Result<Population> {
    if pop.len() < 2 || pop.len() % 2 != 0 {
        return Err(Error::invalid_argument(format!(
            "crowding needs an even population of at least 2, got {}",
            pop.len()
        )));
    }
    let mut order: Vec<usize> = (0..pop.len()).collect();
    rng.shuffle(&mut order);
    let mut members = pop.members().to_vec();
    for pair in order.chunks(2) {
        let (i, j) = (pair[0], pair[1]);
        let (c1, c2) = two_point_crossover(&members[i].genome, &members[j].genome, rng)?;
        let c1 = maybe_mutate(c1, var, rng)?;
        let c2 = maybe_mutate(c2, var, rng)?;
        let c1 = Individual::evaluated(c1.clone(), landscape.evaluate(&c1)?);
        let c2 = Individual::evaluated(c2.clone(), landscape.evaluate(&c2)?);
        let (s1, s2) = crowding_replacement(&members[i], &members[j], c1, c2);
        members[i] = s1;
        members[j] = s2;
    }
    Ok(Population::new(members))
}

fn maybe_mutate(genome: Genome, var: &VariationConfig, rng: &mut RandomSource) -> Result<Genome> {
    if rng.next_bool(var.p_mutation) {
        bit_flip_mutation(&genome, var.per_bit_flip_prob, rng)
    } else {
        Ok(genome)
    }
}

/// Pick a crossover pair under incest prevention. The first parent is
/// uniform; the partner is uniform among members at Hamming distance at
/// least `threshold` from it. When no member qualifies, the partner is
/// uniform over all others and the threshold drops by `decrement`
/// (never below zero).
///
/// Returns `(parent index, partner index, updated threshold)`.
pub fn incest_pair_select(
    pool: &[Individual],
    threshold: usize,
    decrement: usize,
    rng: &mut RandomSource,
) -> Result<(usize, usize, usize)> {
    if pool.len() < 2 {
        return Err(Error::invalid_state(
            "incest prevention needs a population of at least 2",
        ));
    }
    let parent = rng.next_index(pool.len());
    let suitable: Vec<usize> = (0..pool.len())
        .filter(|&j| j != parent && hamming(&pool[parent].genome, &pool[j].genome) >= threshold)
        .collect();
    if suitable.is_empty() {
        let mut partner = rng.next_index(pool.len() - 1);
        if partner >= parent {
            partner += 1;
        }
        Ok((parent, partner, threshold.saturating_sub(decrement)))
    } else {
        let partner = suitable[rng.next_index(suitable.len())];
        Ok((parent, partner, threshold))
    }
}

/// Offspring generation with incest prevention on the crossover branch;
/// the mutation and copy branches are untouched.
pub fn generate_offspring_incest(
    pool: &[Individual],
    lambda: usize,
    var: &VariationConfig,
    threshold: &mut usize,
    decrement: usize,
    rng: &mut RandomSource,
) -> Result<Vec<Genome>> {
    var.validate()?;
    if pool.is_empty() {
        return Err(Error::invalid_state("offspring from an empty population"));
    }
    if pool.len() < 2 && var.p_crossover > 0.0 {
        return Err(Error::invalid_state(
            "crossover needs a population of at least 2",
        ));
    }
    let mut offspring = Vec::with_capacity(lambda);
    for _ in 0..lambda {
        let r = rng.next_f64();
        let genome = if r < var.p_crossover {
            let (a, b, updated) = incest_pair_select(pool, *threshold, decrement, rng)?;
            *threshold = updated;
            let (child, _) = two_point_crossover(&pool[a].genome, &pool[b].genome, rng)?;
            child
        } else if r < var.p_crossover + var.p_mutation {
            let a = rng.next_index(pool.len());
            bit_flip_mutation(&pool[a].genome, var.per_bit_flip_prob, rng)?
        } else {
            pool[rng.next_index(pool.len())].genome.clone()
        };
        offspring.push(genome);
    }
    Ok(offspring)
}

/// The plain step with incest-prevented crossover pairing. The threshold
/// state carries across generations.
pub fn incest_step(
    pop: &Population,
    landscape: &Landscape,
    lambda: usize,
    var: &VariationConfig,
    threshold: &mut usize,
    decrement: usize,
    rng: &mut RandomSource,
) -> Result<Population> {
    let offspring =
        generate_offspring_incest(pop.members(), lambda, var, threshold, decrement, rng)?;
    let union = evaluated_union(pop, offspring, landscape)?;
    let survivors = tournament_select(&union, pop.len(), var.tournament_size, rng)?;
    Ok(Population::new(survivors))
}

/// Select μ survivors while forbidding duplicate genotypes: the pool is
/// deduplicated by genome (first occurrence kept) and tournaments run over
/// the remaining candidates, each winner leaving the candidate set. If
/// fewer than μ distinct genotypes exist, all of them survive and the
/// remaining slots are filled by plain tournaments over the full pool,
/// where duplicates are permitted.
pub fn unique_select(
    pool: &[Individual],
    mu: usize,
    tournament_size: usize,
    rng: &mut RandomSource,
) -> Result<Population> {
    if pool.is_empty() {
        return Err(Error::invalid_state("selection from an empty pool"));
    }
    if tournament_size == 0 {
        return Err(Error::invalid_argument("tournament size must be at least 1"));
    }
    let mut seen: HashSet<&Genome> = HashSet::with_capacity(pool.len());
    let mut candidates: Vec<usize> = Vec::with_capacity(pool.len());
    for (i, ind) in pool.iter().enumerate() {
        if seen.insert(&ind.genome) {
            candidates.push(i);
        }
    }
    if candidates.len() >= mu {
        let mut out = Vec::with_capacity(mu);
        for _ in 0..mu {
            let mut best = rng.next_index(candidates.len());
            for _ in 1..tournament_size {
                let challenger = rng.next_index(candidates.len());
                if pool[candidates[challenger]].effective_fitness
                    > pool[candidates[best]].effective_fitness
                {
                    best = challenger;
                }
            }
            out.push(pool[candidates[best]].clone());
            candidates.remove(best);
        }
        Ok(Population::new(out))
    } else {
        let mut out: Vec<Individual> = candidates.iter().map(|&i| pool[i].clone()).collect();
        let fill = tournament_select(pool, mu - out.len(), tournament_size, rng)?;
        out.extend(fill);
        Ok(Population::new(out))
    }
}

/// The plain step with duplicate-genotype removal at selection time.
pub fn unique_step(
    pop: &Population,
    landscape: &Landscape,
    lambda: usize,
    var: &VariationConfig,
    rng: &mut RandomSource,
) -> Result<Population> {
    let offspring = generate_offspring(pop.members(), lambda, var, rng)?;
    let union = evaluated_union(pop, offspring, landscape)?;
    unique_select(&union, pop.len(), var.tournament_size, rng)
}

/// Copy each island's best members (by effective fitness) onto the next
/// island around the ring, replacing that island's worst members. Island
/// sizes are preserved; a single island is left untouched.
pub fn ring_migrate(islands: &mut [Population], emigrants_per_island: usize) -> Result<()> {
    if islands.is_empty() {
        return Err(Error::invalid_argument("ring migration needs at least one island"));
    }
    for island in islands.iter() {
        if emigrants_per_island >= island.len() {
            return Err(Error::invalid_argument(format!(
                "emigrants per island ({emigrants_per_island}) must be smaller than the island size ({})",
                island.len()
            )));
        }
    }
    if islands.len() == 1 {
        return Ok(());
    }
    let emigrant_sets: Vec<Vec<Individual>> = islands
        .iter()
        .map(|island| {
            let mut order: Vec<usize> = (0..island.len()).collect();
            order.sort_by(|&a, &b| {
                island.members()[b]
                    .effective_fitness
                    .total_cmp(&island.members()[a].effective_fitness)
            });
            order[..emigrants_per_island]
                .iter()
                .map(|&i| island.members()[i].clone())
                .collect()
        })
        .collect();
    let count = islands.len();
    for (src, emigrants) in emigrant_sets.into_iter().enumerate() {
        let dst = (src + 1) % count;
        let island = &mut islands[dst];
        let mut order: Vec<usize> = (0..island.len()).collect();
        order.sort_by(|&a, &b| {
            island.members()[a]
                .effective_fitness
                .total_cmp(&island.members()[b].effective_fitness)
        });
        for (slot, incoming) in order[..emigrants_per_island].iter().zip(emigrants) {
            island.members_mut()[*slot] = incoming;
        }
    }
    Ok(())
}

/// One island-model generation: every island runs a plain step with its
/// share of the offspring budget, then a ring migration fires on
/// generations that are multiples of the migration interval.
pub fn island_step(
    islands: &mut [Population],
    landscape: &Landscape,
    lambda_total: usize,
    generation: usize,
    var: &VariationConfig,
    mech: &MechanismConfig,
    rng: &mut RandomSource,
) -> Result<()> {
    if islands.is_empty() {
        return Err(Error::invalid_argument("island step needs at least one island"));
    }
    if lambda_total % islands.len() != 0 {
        return Err(Error::invalid_argument(format!(
            "island count {} must divide the offspring count {lambda_total}",
            islands.len()
        )));
    }
    let lambda = lambda_total / islands.len();
    for island in islands.iter_mut() {
        *island = basic_step(island, landscape, lambda, var, rng)?;
    }
    if mech.migration_interval > 0 && generation % mech.migration_interval == 0 {
        ring_migrate(islands, mech.emigrants_per_island)?;
    }
    Ok(())
}

/// The combined mechanism: clearing rewrites the union's fitness, then
/// survivors are chosen with duplicate-genotype removal using the cleared
/// fitness.
pub fn hybrid_step(
    pop: &Population,
    landscape: &Landscape,
    lambda: usize,
    var: &VariationConfig,
    mech: &MechanismConfig,
    rng: &mut RandomSource,
) -> Result<Population> {
    let offspring = generate_offspring(pop.members(), lambda, var, rng)?;
    let mut union = evaluated_union(pop, offspring, landscape)?;
    clearing_adjust(&mut union, mech.clearing_radius, mech.niche_cap);
    unique_select(&union, pop.len(), var.tournament_size, rng)
}

/// The evolving state of one run: a single pool, or the island partition.
#[derive(Clone, Debug)]
pub enum AlgorithmState {
    Pooled(Population),
    Islands(Vec<Population>),
}

impl AlgorithmState {
    pub fn total_len(&self) -> usize {
        match self {
            AlgorithmState::Pooled(pop) => pop.len(),
            AlgorithmState::Islands(islands) => islands.iter().map(Population::len).sum(),
        }
    }

    /// All members in island-then-slot order; pooled states borrow, island
    /// states flatten into the scratch buffer.
    pub fn members<'a>(&'a self, scratch: &'a mut Vec<Individual>) -> &'a [Individual] {
        match self {
            AlgorithmState::Pooled(pop) => pop.members(),
            AlgorithmState::Islands(islands) => {
                scratch.clear();
                for island in islands {
                    scratch.extend(island.iter().cloned());
                }
                scratch
            }
        }
    }

    /// Re-score every member against `landscape`, resetting effective
    /// fitness to the new raw fitness.
    pub fn reevaluate(&mut self, landscape: &Landscape) -> Result<()> {
        let reevaluate_pop = |pop: &mut Population| -> Result<()> {
            for ind in pop.members_mut() {
                let raw = landscape.evaluate(&ind.genome)?;
                ind.raw_fitness = raw;
                ind.effective_fitness = raw;
            }
            Ok(())
        };
        match self {
            AlgorithmState::Pooled(pop) => reevaluate_pop(pop),
            AlgorithmState::Islands(islands) => {
                islands.iter_mut().try_for_each(reevaluate_pop)
            }
        }
    }
}

/// A run's algorithm: the variant plus any state it carries across
/// generations (the incest threshold; island membership lives in
/// [`AlgorithmState`]).
#[derive(Clone, Debug)]
pub struct Mechanism {
    kind: MechanismKind,
    config: MechanismConfig,
    incest_threshold: usize,
}

impl Mechanism {
    pub fn new(kind: MechanismKind, config: MechanismConfig) -> Self {
        let incest_threshold = config.incest_threshold_initial;
        Mechanism {
            kind,
            config,
            incest_threshold,
        }
    }

    pub fn kind(&self) -> MechanismKind {
        self.kind
    }

    pub fn config(&self) -> &MechanismConfig {
        &self.config
    }

    pub fn incest_threshold(&self) -> usize {
        self.incest_threshold
    }

    /// Build and evaluate the initial random population (or islands).
    pub fn init_state(
        &self,
        mu: usize,
        genome_length: usize,
        landscape: &Landscape,
        rng: &mut RandomSource,
    ) -> Result<AlgorithmState> {
        let random_pop = |size: usize, rng: &mut RandomSource| -> Result<Population> {
            let mut members = Vec::with_capacity(size);
            for _ in 0..size {
                let genome = random_genome(genome_length, rng)?;
                let raw = landscape.evaluate(&genome)?;
                members.push(Individual::evaluated(genome, raw));
            }
            Ok(Population::new(members))
        };
        if self.kind == MechanismKind::Islands {
            let count = self.config.island_count;
            if count == 0 || mu % count != 0 {
                return Err(Error::invalid_argument(format!(
                    "island count {count} must divide the population size {mu}"
                )));
            }
            let islands = (0..count)
                .map(|_| random_pop(mu / count, rng))
                .collect::<Result<Vec<_>>>()?;
            Ok(AlgorithmState::Islands(islands))
        } else {
            Ok(AlgorithmState::Pooled(random_pop(mu, rng)?))
        }
    }

    /// Advance the state by one generation.
    pub fn step(
        &mut self,
        state: &mut AlgorithmState,
        landscape: &Landscape,
        lambda: usize,
        var: &VariationConfig,
        generation: usize,
        rng: &mut RandomSource,
    ) -> Result<()> {
        match (self.kind, state) {
            (MechanismKind::Islands, AlgorithmState::Islands(islands)) => island_step(
                islands,
                landscape,
                lambda,
                generation,
                var,
                &self.config,
                rng,
            ),
            (MechanismKind::Islands, AlgorithmState::Pooled(_)) => Err(Error::invalid_state(
                "island mechanism stepped with a pooled state",
            )),
            (_, AlgorithmState::Islands(_)) => Err(Error::invalid_state(
                "pooled mechanism stepped with an island state",
            )),
            (kind, AlgorithmState::Pooled(pop)) => {
                *pop = match kind {
                    MechanismKind::Basic => basic_step(pop, landscape, lambda, var, rng)?,
                    MechanismKind::Sharing => sharing_step(
                        pop,
                        landscape,
                        lambda,
                        var,
                        self.config.sharing_radius,
                        self.config.sharing_alpha,
                        rng,
                    )?,
                    MechanismKind::Clearing => clearing_step(
                        pop,
                        landscape,
                        lambda,
                        var,
                        self.config.clearing_radius,
                        self.config.niche_cap,
                        rng,
                    )?,
                    MechanismKind::Crowding => crowding_step(pop, landscape, var, rng)?,
                    MechanismKind::Incest => incest_step(
                        pop,
                        landscape,
                        lambda,
                        var,
                        &mut self.incest_threshold,
                        self.config.incest_threshold_decrement,
                        rng,
                    )?,
                    MechanismKind::Unique => unique_step(pop, landscape, lambda, var, rng)?,
                    MechanismKind::Hybrid => {
                        hybrid_step(pop, landscape, lambda, var, &self.config, rng)?
                    }
                    MechanismKind::Islands => unreachable!(),
                };
                Ok(())
            }
        }
    }
}
