use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::roster::{population_variance, validate_roster, StudentRecord};
use super::{Result, StudyError};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BalanceOptions {
    /// Weight of the variance term relative to the mean term.
    pub variance_weight: f64,
    /// Local-search restarts when exhaustive search is too large.
    pub restarts: u32,
    /// Largest number of distinct partitions searched exhaustively.
    pub exact_limit: u128,
}

impl Default for BalanceOptions {
    fn default() -> Self {
        Self {
            variance_weight: 1.0,
            restarts: 32,
            exact_limit: 1_000_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BalanceMethod {
    Exact,
    Heuristic,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Group {
    /// `G1`, `G2`, ...
    pub label: String,
    pub members: Vec<StudentRecord>,
    pub mean: f64,
    /// Population variance of member GPAs.
    pub variance: f64,
}

impl Group {
    pub fn gpas(&self) -> Vec<f64> {
        self.members.iter().map(|s| s.gpa).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupAssignment {
    pub groups: Vec<Group>,
    pub overall_mean: f64,
    pub overall_variance: f64,
    /// Balance objective of this partition (lower is better).
    pub objective: f64,
    pub method: BalanceMethod,
}

impl GroupAssignment {
    pub fn group(&self, label: &str) -> Option<&Group> {
        self.groups.iter().find(|g| g.label == label)
    }
}

/// Balance objective of a partition given as per-group GPA lists:
/// `Σ_g (mean_g − mean)² + w·(var_g − var)²`, against the pooled mean and
/// population variance.
pub fn objective(groups: &[Vec<f64>], variance_weight: f64) -> f64 {
    let all: Vec<f64> = groups.iter().flatten().copied().collect();
    let stats = Stats::of(&all);
    groups
        .iter()
        .map(|g| stats.deviation(g, variance_weight))
        .sum()
}

/// Number of ways to split `n` students into `k` unlabeled groups of equal
/// size, saturating at `u128::MAX`.
pub fn partition_count(n: usize, k: usize) -> u128 {
    if k == 0 || !n.is_multiple_of(k) {
        return 0;
    }
    let m = n / k;
    if m == 0 {
        return 1;
    }
    // Fix the lowest remaining student in each group, choose the other m-1.
    let mut total: u128 = 1;
    for g in 0..k {
        let remaining = n - g * m;
        match total.checked_mul(binomial(remaining - 1, m - 1)) {
            Some(t) => total = t,
            None => return u128::MAX,
        }
    }
    total
}

fn binomial(n: usize, r: usize) -> u128 {
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 0..r {
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

struct Stats {
    mean: f64,
    variance: f64,
}

impl Stats {
    fn of(values: &[f64]) -> Self {
        let n = values.len().max(1) as f64;
        Self {
            mean: values.iter().sum::<f64>() / n,
            variance: population_variance(values),
        }
    }

    fn deviation(&self, group: &[f64], w: f64) -> f64 {
        let g = Stats::of(group);
        let dm = g.mean - self.mean;
        let dv = g.variance - self.variance;
        dm * dm + w * dv * dv
    }
}

type Partition = Vec<Vec<usize>>;

struct Problem<'a> {
    gpas: Vec<f64>,
    stats: Stats,
    weight: f64,
    k: usize,
    m: usize,
    roster: &'a [StudentRecord],
}

impl Problem<'_> {
    fn group_cost(&self, members: &[usize]) -> f64 {
        let vals: Vec<f64> = members.iter().map(|&i| self.gpas[i]).collect();
        self.stats.deviation(&vals, self.weight)
    }

    fn cost(&self, p: &Partition) -> f64 {
        p.iter().map(|g| self.group_cost(g)).sum()
    }
}

fn canonical(mut p: Partition) -> Partition {
    for g in &mut p {
        g.sort_unstable();
    }
    p.sort();
    p
}

/// Keeps the lowest-cost partition; equal costs go to the lexicographically
/// smaller canonical form.
#[derive(Default)]
struct Best {
    cost: f64,
    partition: Option<Partition>,
}

impl Best {
    fn offer(&mut self, cost: f64, p: &Partition) {
        let better = match &self.partition {
            None => true,
            Some(cur) => cost < self.cost || (cost == self.cost && canonical(p.clone()) < *cur),
        };
        if better {
            self.cost = cost;
            self.partition = Some(canonical(p.clone()));
        }
    }
}

/// Split `roster` into `k` equal groups with matching GPA mean and variance.
pub fn balance_groups(roster: &[StudentRecord], k: usize) -> Result<GroupAssignment> {
    balance_groups_with(roster, k, &BalanceOptions::default())
}

/// [`balance_groups`] with explicit options.
///
/// Searches every partition when there are at most `exact_limit` of them.
/// Otherwise runs steepest-descent pairwise swaps from a GPA-sorted
/// round-robin seed, once unperturbed and then from `restarts − 1` seeds
/// scrambled with an RNG keyed by the restart index.
pub fn balance_groups_with(
    roster: &[StudentRecord],
    k: usize,
    options: &BalanceOptions,
) -> Result<GroupAssignment> {
    if k < 2 {
        return Err(StudyError::Parameter(format!(
            "need at least 2 groups, got {k}"
        )));
    }
    let n = roster.len();
    if n == 0 || !n.is_multiple_of(k) {
        return Err(StudyError::Size { n, k });
    }
    if !(options.variance_weight.is_finite() && options.variance_weight >= 0.0) {
        return Err(StudyError::Parameter(format!(
            "variance weight must be >= 0, got {}",
            options.variance_weight
        )));
    }
    validate_roster(roster)?;

    let gpas: Vec<f64> = roster.iter().map(|s| s.gpa).collect();
    let problem = Problem {
        stats: Stats::of(&gpas),
        gpas,
        weight: options.variance_weight,
        k,
        m: n / k,
        roster,
    };

    let (best, method) = if partition_count(n, k) <= options.exact_limit {
        (exhaustive(&problem), BalanceMethod::Exact)
    } else {
        (
            local_search(&problem, options.restarts.max(1)),
            BalanceMethod::Heuristic,
        )
    };
    Ok(assemble(&problem, best, method))
}

fn exhaustive(problem: &Problem<'_>) -> Best {
    let mut best = Best::default();
    let all: Vec<usize> = (0..problem.gpas.len()).collect();
    let mut current = Vec::with_capacity(problem.k);
    enumerate(&all, problem.m, &mut current, &mut |p| {
        best.offer(problem.cost(p), p);
    });
    best
}

fn enumerate<F: FnMut(&Partition)>(
    remaining: &[usize],
    m: usize,
    current: &mut Partition,
    visit: &mut F,
) {
    if remaining.is_empty() {
        visit(current);
        return;
    }
    let anchor = remaining[0];
    let rest = &remaining[1..];
    let pick = m - 1;
    let mut idx: Vec<usize> = (0..pick).collect();
    loop {
        let mut group = Vec::with_capacity(m);
        group.push(anchor);
        group.extend(idx.iter().map(|&i| rest[i]));
        let others: Vec<usize> = rest
            .iter()
            .enumerate()
            .filter(|(i, _)| !idx.contains(i))
            .map(|(_, &s)| s)
            .collect();
        current.push(group);
        enumerate(&others, m, current, visit);
        current.pop();

        // Next combination of `pick` positions out of rest.len().
        let len = rest.len();
        let mut i = pick;
        while i > 0 && idx[i - 1] == len - pick + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return;
        }
        idx[i - 1] += 1;
        for j in i..pick {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn round_robin_seed(problem: &Problem<'_>) -> Partition {
    let mut order: Vec<usize> = (0..problem.gpas.len()).collect();
    order.sort_by(|&a, &b| problem.gpas[b].total_cmp(&problem.gpas[a]).then(a.cmp(&b)));
    let mut parts = vec![Vec::with_capacity(problem.m); problem.k];
    for (pos, &student) in order.iter().enumerate() {
        parts[pos % problem.k].push(student);
    }
    parts
}

fn local_search(problem: &Problem<'_>, restarts: u32) -> Best {
    let mut best = Best::default();
    let seed = round_robin_seed(problem);
    for restart in 0..restarts {
        let mut parts = seed.clone();
        if restart > 0 {
            let mut rng = ChaCha8Rng::seed_from_u64(u64::from(restart));
            for _ in 0..problem.gpas.len() {
                let a = rng.random_range(0..problem.k);
                let b = (a + rng.random_range(1..problem.k)) % problem.k;
                let i = rng.random_range(0..problem.m);
                let j = rng.random_range(0..problem.m);
                let tmp = parts[a][i];
                parts[a][i] = parts[b][j];
                parts[b][j] = tmp;
            }
        }
        descend(problem, &mut parts);
        best.offer(problem.cost(&parts), &parts);
    }
    best
}

/// Apply the best improving swap until none improves.
fn descend(problem: &Problem<'_>, parts: &mut Partition) {
    let mut costs: Vec<f64> = parts.iter().map(|g| problem.group_cost(g)).collect();
    loop {
        let mut best_gain = 0.0;
        let mut best_swap = None;
        for a in 0..problem.k {
            for b in a + 1..problem.k {
                let base = costs[a] + costs[b];
                for i in 0..problem.m {
                    for j in 0..problem.m {
                        let mut ga = parts[a].clone();
                        let mut gb = parts[b].clone();
                        std::mem::swap(&mut ga[i], &mut gb[j]);
                        let ca = problem.group_cost(&ga);
                        let cb = problem.group_cost(&gb);
                        let gain = base - (ca + cb);
                        if gain > best_gain {
                            best_gain = gain;
                            best_swap = Some((a, b, i, j, ca, cb));
                        }
                    }
                }
            }
        }
        // Ignore gains at rounding level so the search terminates.
        let Some((a, b, i, j, ca, cb)) = best_swap.filter(|_| best_gain > 1e-15) else {
            return;
        };
        let tmp = parts[a][i];
        parts[a][i] = parts[b][j];
        parts[b][j] = tmp;
        costs[a] = ca;
        costs[b] = cb;
    }
}

fn assemble(problem: &Problem<'_>, best: Best, method: BalanceMethod) -> GroupAssignment {
    let partition = best.partition.expect("at least one partition evaluated");
    let groups = partition
        .iter()
        .enumerate()
        .map(|(g, members)| {
            let vals: Vec<f64> = members.iter().map(|&i| problem.gpas[i]).collect();
            let stats = Stats::of(&vals);
            Group {
                label: format!("G{}", g + 1),
                members: members.iter().map(|&i| problem.roster[i].clone()).collect(),
                mean: stats.mean,
                variance: stats.variance,
            }
        })
        .collect();
    GroupAssignment {
        groups,
        overall_mean: problem.stats.mean,
        overall_variance: problem.stats.variance,
        objective: best.cost,
        method,
    }
}
