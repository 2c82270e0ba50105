use rand::seq::index::sample as sample_indices;
use rand::Rng;

use super::runner::{mean_se, run_replicates, Proportion};
use super::verdict::VerdictReport;
use crate::error::{Error, Result};
use crate::exact::{phi_pushforward, DistributionKind, GraphDistribution};
use crate::graph::{forgetful_map, pair_count, EventSpec, Graph};
use crate::models::{sample, ModelSpec, Sample};
use crate::numeric::NeumaierSum;
use crate::rng::stream;

/// Largest number of addition sets searched exhaustively per graph.
pub const EXHAUSTIVE_LIMIT: u128 = 100_000;

/// `Σ_{j ≤ r} C(k, j)`, saturating.
pub fn subsets_within(k: usize, r: usize) -> u128 {
    let mut total: u128 = 0;
    let mut c: u128 = 1;
    for j in 0..=r.min(k) {
        total = total.saturating_add(c);
        c = c.saturating_mul((k - j) as u128) / (j as u128 + 1);
    }
    total
}

fn absent_pairs(g: &Graph) -> Vec<usize> {
    (0..pair_count(g.n())).filter(|&k| !g.has_pair(k)).collect()
}

/// Whether some set of at most `r` pairs from `pool[from..]` added to `g`
/// gives a graph with `q == target`.
fn search(g: &mut Graph, q: &EventSpec, pool: &[usize], from: usize, r: usize, target: bool) -> bool {
    if q.holds(g) == target {
        return true;
    }
    if r == 0 {
        return false;
    }
    for i in from..pool.len() {
        g.insert_pair(pool[i]);
        let hit = search(g, q, pool, i + 1, r - 1, target);
        g.remove_pair(pool[i]);
        if hit {
            return true;
        }
    }
    false
}

/// Whether adding at most `r` edges can make `q` evaluate to `target`.
/// Exhaustive when the number of candidate sets is at most
/// [`EXHAUSTIVE_LIMIT`], otherwise greedy: take a one-edge win if there is
/// one, else add a random absent edge. Returns the answer and whether the
/// search was exhaustive.
fn reachable<R: Rng + ?Sized>(g: &Graph, q: &EventSpec, r: usize, target: bool, rng: &mut R) -> (bool, bool) {
    if q.holds(g) == target {
        return (true, true);
    }
    let pool = absent_pairs(g);
    if subsets_within(pool.len(), r) <= EXHAUSTIVE_LIMIT {
        return (search(&mut g.clone(), q, &pool, 0, r, target), true);
    }
    let mut cur = g.clone();
    for _ in 0..r {
        let pool = absent_pairs(&cur);
        if pool.is_empty() {
            break;
        }
        for &k in &pool {
            let mut next = cur.clone();
            next.insert_pair(k);
            if q.holds(&next) == target {
                return (true, false);
            }
        }
        cur.insert_pair(pool[rng.random_range(0..pool.len())]);
    }
    (false, false)
}

fn with_random_additions<R: Rng + ?Sized>(g: &Graph, r: usize, rng: &mut R) -> Graph {
    let pool = absent_pairs(g);
    let mut out = g.clone();
    for i in sample_indices(rng, pool.len(), r.min(pool.len())) {
        out.insert_pair(pool[i]);
    }
    out
}

struct Probe {
    base: bool,
    random: bool,
    toward: bool,
    away: bool,
    exhaustive: bool,
}

fn delta_row(name: &str, values: impl Iterator<Item = f64>) -> VerdictReport {
    let d = mean_se(values);
    let half = 1.959_963_984_540_054 * d.se;
    VerdictReport::info(name, d.mean, d.se).with_ci((d.mean - half, d.mean + half))
}

fn probe_rows(base: VerdictReport, deltas: [VerdictReport; 3], note: String) -> Vec<VerdictReport> {
    let worst = deltas
        .iter()
        .max_by(|a, b| a.estimate.abs().total_cmp(&b.estimate.abs()))
        .expect("three strategies");
    let mut max = VerdictReport::info("max |Δ|", worst.estimate.abs(), worst.standard_error)
        .with_note(format!("attained by {}; {note}", worst.statistic));
    if let Some((lo, hi)) = worst.ci {
        max.ci = Some(if worst.estimate >= 0.0 { (lo, hi) } else { (-hi, -lo) });
    }
    let mut rows = vec![max, base];
    rows.extend(deltas);
    rows
}

fn check_r(n: usize, r: usize) -> Result<()> {
    if r > pair_count(n) {
        return Err(Error::Precondition(format!("r={r} exceeds the {} pairs on n={n}", pair_count(n))));
    }
    Ok(())
}

/// Probes how much `P(G ∈ Q)` moves when at most `r` edges are added to each
/// sample, by a random rule and by adversaries pushing toward and away from
/// `Q`. Informational: no row carries a pass/fail outcome. Directed samples
/// are mapped through the forgetful map.
pub fn insensitivity_probe(spec: &ModelSpec, q: &EventSpec, r: usize, replicates: usize, seed: u64) -> Result<Vec<VerdictReport>> {
    if replicates == 0 {
        return Err(Error::InvalidSpec("replicates must be at least 1".into()));
    }
    spec.validate()?;
    check_r(spec.n, r)?;
    let probes = run_replicates(seed, replicates, |_, s| -> Result<Probe> {
        let g = match sample(spec, s)? {
            Sample::Graph(g) => g,
            Sample::Digraph(d) => forgetful_map(&d),
        };
        let mut rng = stream(s, 2);
        let (toward, e1) = reachable(&g, q, r, true, &mut rng);
        let (away, e2) = reachable(&g, q, r, false, &mut rng);
        Ok(Probe {
            base: q.holds(&g),
            random: q.holds(&with_random_additions(&g, r, &mut rng)),
            toward,
            away,
            exhaustive: e1 && e2,
        })
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    let f = |b: bool| f64::from(u8::from(b));
    let p = Proportion::from_flags(probes.iter().map(|x| x.base));
    let base = VerdictReport::info("P(G ∈ Q)", p.p, p.se).with_ci(p.wald_ci());
    let deltas = [
        delta_row("Δ random addition", probes.iter().map(|x| f(x.random) - f(x.base))),
        delta_row("Δ adversary toward Q", probes.iter().map(|x| f(x.toward) - f(x.base))),
        delta_row("Δ adversary away from Q", probes.iter().map(|x| f(!x.away) - f(x.base))),
    ];
    let greedy = probes.iter().filter(|x| !x.exhaustive).count();
    let note = format!("q={}, r={r}, {greedy} replicates searched greedily", q.name());
    Ok(probe_rows(base, deltas, note)
        .into_iter()
        .map(|v| v.at_n(spec.n).with_run(replicates, seed))
        .collect())
}

/// The same statistics as [`insensitivity_probe`], computed exactly from a
/// distribution by searching every addition set of size at most `r`.
pub fn exact_insensitivity(dist: &GraphDistribution, q: &EventSpec, r: usize) -> Result<Vec<VerdictReport>> {
    let dist = match dist.kind() {
        DistributionKind::Graph => dist.clone(),
        DistributionKind::Digraph => phi_pushforward(dist)?,
    };
    let n = dist.n();
    check_r(n, r)?;
    let pairs = pair_count(n);
    if subsets_within(pairs, r) > EXHAUSTIVE_LIMIT {
        return Err(Error::Precondition(format!(
            "{} addition sets of at most {r} edges on n={n} exceed the exhaustive limit {EXHAUSTIVE_LIMIT}",
            subsets_within(pairs, r)
        )));
    }
    let (mut base, mut random, mut toward, mut away) =
        (NeumaierSum::new(), NeumaierSum::new(), NeumaierSum::new(), NeumaierSum::new());
    for (code, &p) in dist.pmf().iter().enumerate() {
        if p == 0.0 {
            continue;
        }
        let g = dist.graph(code as u64)?;
        let pool = absent_pairs(&g);
        let b = q.holds(&g);
        let t = search(&mut g.clone(), q, &pool, 0, r, true);
        let a = search(&mut g.clone(), q, &pool, 0, r, false);
        // uniform over all addition sets of size min(r, |pool|)
        let j = r.min(pool.len());
        let (mut hit, mut total) = (0u64, 0u64);
        for_each_subset(&pool, j, &mut |set| {
            let mut h = g.clone();
            for &k in set {
                h.insert_pair(k);
            }
            total += 1;
            hit += u64::from(q.holds(&h));
        });
        let f = |x: bool| f64::from(u8::from(x));
        base.add(p * f(b));
        random.add(p * (hit as f64 / total as f64 - f(b)));
        toward.add(p * (f(t) - f(b)));
        away.add(p * (f(!a) - f(b)));
    }
    let exact = |name: &str, x: f64| VerdictReport::info(name, x, 0.0).with_ci((x, x));
    let deltas = [
        exact("Δ random addition", random.value()),
        exact("Δ adversary toward Q", toward.value()),
        exact("Δ adversary away from Q", away.value()),
    ];
    let note = format!("q={}, r={r}, exact", q.name());
    Ok(probe_rows(exact("P(G ∈ Q)", base.value()), deltas, note)
        .into_iter()
        .map(|v| v.at_n(n))
        .collect())
}

fn for_each_subset(pool: &[usize], j: usize, f: &mut dyn FnMut(&[usize])) {
    fn go(pool: &[usize], from: usize, j: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if cur.len() == j {
            f(cur);
            return;
        }
        for i in from..pool.len() {
            cur.push(pool[i]);
            go(pool, i + 1, j, cur, f);
            cur.pop();
        }
    }
    go(pool, 0, j, &mut Vec::with_capacity(j), f);
}
