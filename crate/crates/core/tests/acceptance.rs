//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails. Pass criterion numbers as arguments to run a subset.

use std::collections::HashMap;
use std::process::ExitCode;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hamlocate::embedder::{check_two_paths, embed_two_paths, TwoPathRequest};
use hamlocate::harness::{gen_ec1, gen_ec2, gen_random_dirac, gen_sharpness_bipartite, gen_sharpness_split};
use hamlocate::io::from_graph6;
use hamlocate::oracle::census::{census_with, oracle_route, CensusConfig, CensusRecord, CensusSummary, Enumeration, PairOutcome};
use hamlocate::oracle::{find_cycle_with_distance, Outcome, SearchBudget};
use hamlocate::regularity::{
    build_partition, check_contract, check_nonextremal_reduced, hamiltonian_cycle_reduced, is_epsilon_regular,
    reduced_graph, slice_pair, Params, RegularityMode,
};
use hamlocate::solvers::{dispatch, dispatch_route, DispatchConfig, Method};
use hamlocate::{verify_certificate, CycleCertificate, Graph, GraphBuilder, VertexSet};

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict { pass, detail: detail.into() }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Re-checks every found record against the graph its id encodes.
fn reverify(records: &[CensusRecord]) -> usize {
    let mut graphs: HashMap<&str, Graph> = HashMap::new();
    let mut bad = 0;
    for r in records.iter().filter(|r| r.outcome == PairOutcome::Found) {
        let g = graphs.entry(&r.graph_id).or_insert_with(|| from_graph6(&r.graph_id).expect("census ids are graph6"));
        let ok = r
            .order
            .clone()
            .and_then(|o| CycleCertificate::from_order(o, r.x, r.y).ok())
            .is_some_and(|c| verify_certificate(g, &c, r.n / 2).is_accept());
        bad += !ok as usize;
    }
    bad
}

fn c1_even_census() -> Verdict {
    let mut pass = true;
    let mut parts = vec![];
    for (n, mode) in [(6, Enumeration::AllLabeled), (8, Enumeration::AllLabeled), (10, Enumeration::Canonical)] {
        let t = Instant::now();
        let mut cfg = CensusConfig::new(n);
        cfg.enumeration = mode;
        let recs = census_with(&cfg, oracle_route(cfg.budget)).expect("census runs");
        let s = CensusSummary::of(&recs);
        let bad = reverify(&recs);
        let ok = s.absent == 0 && s.exhausted == 0 && bad == 0 && s.found == s.pairs && s.pairs > 0;
        pass &= ok;
        parts.push(format!(
            "n={n}: {} graphs, {} pairs, {} failures, {} unverified ({:.1}s)",
            s.graphs,
            s.pairs,
            s.absent + s.exhausted,
            bad,
            t.elapsed().as_secs_f64()
        ));
    }
    verdict(pass, parts.join("; "))
}

fn c2_odd_census() -> Verdict {
    let mut pass = true;
    let mut parts = vec![];
    for (n, mode) in [(7, Enumeration::AllLabeled), (9, Enumeration::Canonical)] {
        let mut cfg = CensusConfig::new(n);
        cfg.enumeration = mode;
        let direct = census_with(&cfg, oracle_route(cfg.budget)).expect("census runs");
        let reduced = DispatchConfig { small_cutoff: 0, seed: 11, ..DispatchConfig::default() };
        let via = census_with(&cfg, dispatch_route(reduced.clone())).expect("census runs");
        let (sd, sv) = (CensusSummary::of(&direct), CensusSummary::of(&via));
        let agree = direct.len() == via.len()
            && direct.iter().zip(&via).all(|(a, b)| (&a.graph_id, a.x, a.y, a.outcome) == (&b.graph_id, b.x, b.y, b.outcome));
        // the reduction route really reduces: spot-check the reports
        let reduces = direct.iter().step_by(97).all(|r| {
            let g = from_graph6(&r.graph_id).unwrap();
            dispatch(&g, r.x, r.y, &reduced).is_ok_and(|rep| rep.odd_removed.is_some() && rep.verified)
        });
        let bad = reverify(&direct) + reverify(&via);
        let ok = sd.found == sd.pairs && sv.found == sv.pairs && sd.pairs > 0 && agree && reduces && bad == 0;
        pass &= ok;
        parts.push(format!(
            "n={n}: {} graphs, {} pairs, oracle failures {}, reduction failures {}, agree={agree}, reduced={reduces}",
            sd.graphs,
            sd.pairs,
            sd.pairs - sd.found,
            sv.pairs - sv.found
        ));
    }
    verdict(pass, parts.join("; "))
}

fn oracle_found(g: &Graph, x: usize, y: usize, d: usize) -> Option<bool> {
    match find_cycle_with_distance(g, x, y, d, SearchBudget::unlimited()).unwrap().outcome {
        Outcome::Found(c) => Some(verify_certificate(g, &c, d).is_accept()),
        Outcome::Absent => Some(false),
        Outcome::Exhausted => None,
    }
}

fn c3_sharpness() -> Verdict {
    let mut pass = true;
    let mut parts = vec![];
    // a Hamiltonian cycle of K_{m,m} alternates sides, so the distance of a
    // pair is odd across the parts and even inside one part
    for n in [8, 10, 12] {
        let g = gen_sharpness_bipartite(n).unwrap();
        let d = n / 2;
        let cross_fails = d % 2 == 0;
        let mut wrong = 0;
        for x in 0..n {
            for y in x + 1..n {
                let cross = g.has_edge(x, y);
                let expect = cross != cross_fails;
                wrong += (oracle_found(&g, x, y, d) != Some(expect)) as usize;
            }
        }
        pass &= wrong == 0;
        let class = if cross_fails { "cross-part" } else { "same-part" };
        parts.push(format!("K_{{{d},{d}}}: {class} pairs absent, {wrong} mismatches"));
    }
    let g = gen_sharpness_split(11).unwrap();
    let block = |v: usize| if v < 4 { 0 } else if v < 8 { 1 } else { 2 };
    let mut wrong = 0;
    for x in 0..11 {
        for y in x + 1..11 {
            let inside = block(x) == block(y) && block(x) < 2;
            wrong += (oracle_found(&g, x, y, 5) != Some(!inside)) as usize;
        }
    }
    pass &= wrong == 0;
    parts.push(format!("(K4 ∪ K4) + K3: {wrong} mismatches"));
    verdict(pass, parts.join("; "))
}

fn random_pair(big_n: usize, seed: u64) -> Graph {
    let mut r = rng(seed);
    let mut b = GraphBuilder::new(2 * big_n);
    for u in 0..big_n {
        for v in big_n..2 * big_n {
            if r.gen_bool(0.7) {
                b.add_edge(u, v);
            }
        }
    }
    let need = (0.6 * big_n as f64).ceil() as usize;
    for v in 0..2 * big_n {
        let other: Vec<usize> = if v < big_n { (big_n..2 * big_n).collect() } else { (0..big_n).collect() };
        let mut missing: Vec<usize> = other.into_iter().filter(|&u| !b.has_edge(u, v)).collect();
        missing.shuffle(&mut r);
        while b.degree(v) < need {
            b.add_edge(v, missing.pop().unwrap());
        }
    }
    b.build()
}

fn c4_embedder() -> Verdict {
    let (mut requests, mut ok, mut checked_bad) = (0, 0, 0);
    let mut worst_500 = 0.0f64;
    for i in 0..100u64 {
        let big_n = [50, 200, 500][i as usize % 3];
        let g = random_pair(big_n, 1000 + i);
        let mut r = rng(i);
        let x: Vec<usize> = (0..big_n).collect();
        let y: Vec<usize> = (big_n..2 * big_n).collect();
        let xe: Vec<usize> = x.choose_multiple(&mut r, 2).copied().collect();
        let ye: Vec<usize> = y.choose_multiple(&mut r, 2).copied().collect();
        for _ in 0..5 {
            let l1 = 2 * r.gen_range(2..=big_n - 2);
            let req = TwoPathRequest {
                x: x.clone(),
                y: y.clone(),
                x1: xe[0],
                x2: xe[1],
                y1: ye[0],
                y2: ye[1],
                l1,
                l2: 2 * big_n - l1,
            };
            let t = Instant::now();
            let res = embed_two_paths(&g, &req, r.gen());
            if big_n == 500 {
                worst_500 = worst_500.max(t.elapsed().as_secs_f64());
            }
            requests += 1;
            if let Ok((p1, p2)) = res {
                ok += 1;
                checked_bad += check_two_paths(&g, &req, &p1, &p2).is_err() as usize;
            }
        }
    }
    let rate = ok as f64 / requests as f64;
    verdict(
        rate >= 0.9 && checked_bad == 0 && worst_500 <= 1.0,
        format!("{ok}/{requests} embedded ({:.1}%), {checked_bad} failed the path checker, slowest N=500 request {worst_500:.2}s", 100.0 * rate),
    )
}

fn random_distinct_pair(n: usize, r: &mut ChaCha8Rng) -> (usize, usize) {
    let x = r.gen_range(0..n);
    let y = (x + r.gen_range(1..n)) % n;
    (x, y)
}

fn c5_nonextremal() -> Verdict {
    let (mut constructive, mut unverified, mut slow) = (0, 0, 0);
    let mut worst = 0.0f64;
    let sizes = [1000, 1002, 2000, 2002];
    for i in 0..20u64 {
        let n = sizes[i as usize % 4];
        let g = gen_random_dirac(n, 0, 500 + i).unwrap();
        let (x, y) = random_distinct_pair(n, &mut rng(i));
        let rep = dispatch(&g, x, y, &DispatchConfig { seed: i, ..DispatchConfig::default() }).unwrap();
        let secs = rep.total_ms / 1e3;
        worst = worst.max(secs);
        slow += (secs > 60.0) as usize;
        unverified += (rep.success && !rep.verified) as usize;
        constructive += (rep.verified && rep.method == Some(Method::NonExtremal)) as usize;
    }
    verdict(
        constructive >= 16 && unverified == 0 && slow == 0,
        format!("{constructive}/20 solved by the non-extremal pipeline (n in {sizes:?}), {unverified} unverified, slowest {worst:.1}s"),
    )
}

fn c6_extremal() -> Verdict {
    let mut pass = true;
    let mut parts = vec![];
    for (name, ec1) in [("EC1", true), ("EC2", false)] {
        let (mut solved, mut unverified, mut slow) = (0, 0, 0);
        let mut methods: HashMap<&str, usize> = HashMap::new();
        let mut cases = [0usize; 2];
        for i in 0..50u64 {
            let n = if i < 25 { 200 } else { 400 };
            let g = if ec1 { gen_ec1(n, 0.02, 700 + i) } else { gen_ec2(n, 0.02, 700 + i) }.unwrap();
            let m = n / 2;
            let mut r = rng(i);
            let same = i % 2 == 0;
            let x = r.gen_range(0..n);
            let y = loop {
                let y = r.gen_range(0..n);
                if y != x && ((x < m) == (y < m)) == same {
                    break y;
                }
            };
            cases[same as usize] += 1;
            let rep = dispatch(&g, x, y, &DispatchConfig { seed: i, ..DispatchConfig::default() }).unwrap();
            slow += (rep.total_ms > 30_000.0) as usize;
            unverified += (rep.success && !rep.verified) as usize;
            solved += rep.verified as usize;
            *methods.entry(rep.method.map_or("none", |m| m.name())).or_default() += 1;
        }
        let ok = solved * 100 >= 95 * 50 && unverified == 0 && slow == 0;
        pass &= ok;
        let mut ms: Vec<_> = methods.into_iter().collect();
        ms.sort();
        parts.push(format!(
            "{name}: {solved}/50 solved ({} same-side, {} cross pairs), {unverified} unverified, methods {ms:?}",
            cases[1], cases[0]
        ));
    }
    verdict(pass, parts.join("; "))
}

fn gnp(n: usize, p: f64, seed: u64) -> Graph {
    let mut r = rng(seed);
    let mut b = GraphBuilder::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if r.gen_bool(p) {
                b.add_edge(u, v);
            }
        }
    }
    b.build()
}

/// Pairs of the first eight 250-vertex blocks of `g` that carry a witness
/// against 0.1-regularity, each witness re-measured from scratch.
fn witnessed_at_tenth(g: &Graph) -> usize {
    let n = g.n();
    let blocks: Vec<VertexSet> = (0..8).map(|i| VertexSet::from_iter(n, i * 250..(i + 1) * 250)).collect();
    let mut count = 0;
    for i in 0..8 {
        for j in i + 1..8 {
            let v = is_epsilon_regular(g, &blocks[i], &blocks[j], 0.1, RegularityMode::sampled((i * 8 + j) as u64)).unwrap();
            if let Some((a, b)) = v.witness {
                let e: usize = a.iter().map(|&u| b.iter().filter(|&&w| g.has_edge(u, w)).count()).sum();
                let whole = g.density(&blocks[i], &blocks[j]).unwrap().value();
                let dev = (e as f64 / (a.len() * b.len()) as f64 - whole).abs();
                count += (a.len() > 25 && b.len() > 25 && dev >= 0.1) as usize;
            }
        }
    }
    count
}

fn c7_regularity() -> Verdict {
    let params = Params { eps: 0.15, d: 0.02, m0: 8, ..Params::default() };
    let mut good = 0;
    let mut failures = vec![];
    for seed in 0..20u64 {
        let g = gnp(2000, 0.5, 9000 + seed);
        let stage = match build_partition(&g, &params, seed) {
            Err(e) => Err(format!("partition: {e}")),
            Ok(part) => {
                let r = reduced_graph(&part, &params);
                if !check_contract(&g, &part, seed + 1).holds() {
                    Err("contract".into())
                } else if !r.meets_degree_bound(params.d) {
                    Err(format!("δ(R) = {} below {:.2}", r.min_degree(), r.degree_bound(params.d)))
                } else if !check_nonextremal_reduced(&r, &params, seed).passed() {
                    Err("non-extremality".into())
                } else if hamiltonian_cycle_reduced(&r, seed).is_err() {
                    Err("reduced cycle".into())
                } else {
                    Ok(())
                }
            }
        };
        match stage {
            Ok(()) => good += 1,
            Err(e) => failures.push(format!("seed {seed}: {e}")),
        }
    }
    let tenth = witnessed_at_tenth(&gnp(2000, 0.5, 9000));
    verdict(
        good == 20,
        format!(
            "{good}/20 seeds certified (eps 0.15, d 0.02, m0 8){}; at eps 0.1, {tenth}/28 cluster pairs of seed 0 carry a verified irregularity witness",
            failures.iter().map(|f| format!(", {f}")).collect::<String>()
        ),
    )
}

fn bipartite(m: usize, mut edge: impl FnMut(usize, usize) -> bool) -> (Graph, VertexSet, VertexSet) {
    let mut b = GraphBuilder::new(2 * m);
    for i in 0..m {
        for j in 0..m {
            if edge(i, j) {
                b.add_edge(i, m + j);
            }
        }
    }
    (b.build(), VertexSet::from_iter(2 * m, 0..m), VertexSet::from_iter(2 * m, m..2 * m))
}

/// A random pair together with the smallest eps on a 0.05 grid for which it
/// is exhaustively ε-regular.
fn regular_pair(r: &mut ChaCha8Rng) -> (Graph, VertexSet, VertexSet, f64) {
    loop {
        let m = r.gen_range(6..=12);
        let p = r.gen_range(0.3..0.9);
        let (g, x, y) = bipartite(m, |_, _| r.gen_bool(p));
        if g.edge_count() == 0 {
            continue;
        }
        for k in 4..=12 {
            let eps = 0.05 * k as f64;
            if is_epsilon_regular(&g, &x, &y, eps, RegularityMode::Exhaustive).unwrap().regular {
                return (g, x, y, eps);
            }
        }
    }
}

fn subsets(items: &[usize]) -> impl Iterator<Item = Vec<usize>> + '_ {
    (1u32..1 << items.len()).map(move |mask| (0..items.len()).filter(|i| mask >> i & 1 == 1).map(|i| items[i]).collect())
}

fn c8_lemmas() -> Verdict {
    let mut r = rng(88);
    let dens = |g: &Graph, a: &VertexSet, b: &VertexSet| g.density(a, b).unwrap().value();

    // few neighbours into a large Y for at most eps|A| vertices
    let mut v21 = 0;
    for _ in 0..200 {
        let (g, a, b, eps) = regular_pair(&mut r);
        let d = dens(&g, &a, &b);
        let bs = b.to_vec();
        for ys in subsets(&bs).filter(|s| s.len() as f64 > eps * bs.len() as f64) {
            let yset = VertexSet::from_iter(g.n(), ys.iter().copied());
            let low = a.iter().filter(|&v| g.deg_in(v, &yset) as f64 <= (d - eps) * ys.len() as f64).count();
            if low as f64 > eps * a.len() as f64 {
                v21 += 1;
            }
        }
    }

    // slices of a regular pair keep the density and are eps'-regular
    let mut v22 = 0;
    for _ in 0..200 {
        let (g, a, b, eps) = regular_pair(&mut r);
        let alpha = r.gen_range(eps.max(2.0 / a.len() as f64) + 0.01..=1.0f64);
        let pick = |s: &VertexSet, r: &mut ChaCha8Rng| {
            let min = ((alpha * s.len() as f64).ceil() as usize).max(2);
            let k = r.gen_range(min..=s.len());
            VertexSet::from_iter(g.n(), s.to_vec().choose_multiple(r, k).copied())
        };
        let (a2, b2) = (pick(&a, &mut r), pick(&b, &mut r));
        let rep = slice_pair(&g, &a, &b, &a2, &b2, alpha, eps).unwrap();
        let sliced = is_epsilon_regular(&g, &a2, &b2, rep.eps_prime, RegularityMode::Exhaustive).unwrap();
        if !rep.within_eps || !sliced.regular {
            v22 += 1;
        }
    }

    // near-complete pairs are sqrt(rho)-regular
    let mut v23 = 0;
    for _ in 0..200 {
        let m = r.gen_range(6..=16);
        let rho = r.gen_range(0.05..0.5f64);
        let floor = ((1.0 - rho) * m as f64).ceil() as usize;
        let (full, _, _) = bipartite(m, |_, _| true);
        let mut b = full.to_builder();
        let mut cross: Vec<(usize, usize)> = (0..m).flat_map(|i| (m..2 * m).map(move |j| (i, j))).collect();
        cross.shuffle(&mut r);
        for (u, v) in cross {
            if b.degree(u) > floor && b.degree(v) > floor && r.gen_bool(0.7) {
                b.remove_edge(u, v);
            }
        }
        let g = b.build();
        let x = VertexSet::from_iter(2 * m, 0..m);
        let y = VertexSet::from_iter(2 * m, m..2 * m);
        let degrees_ok = (0..2 * m).all(|v| g.degree(v) >= floor);
        let regular = is_epsilon_regular(&g, &x, &y, rho.sqrt(), RegularityMode::Exhaustive).unwrap().regular;
        if !degrees_ok || !regular {
            v23 += 1;
        }
    }
    verdict(
        v21 + v22 + v23 == 0,
        format!("violations: neighbour count {v21}, slicing {v22}, min degree to regularity {v23} (200 cases each)"),
    )
}

/// Independent of the library checker: a permutation, consecutive edges, and
/// the shorter-arc distance equal to both the claim and the target.
fn naive_valid(g: &Graph, c: &CycleCertificate, target: usize) -> bool {
    let n = g.n();
    let mut sorted = c.order.clone();
    sorted.sort_unstable();
    if sorted != (0..n).collect::<Vec<_>>() {
        return false;
    }
    if !(0..n).all(|i| g.has_edge(c.order[i], c.order[(i + 1) % n])) {
        return false;
    }
    let px = c.order.iter().position(|&v| v == c.x);
    let py = c.order.iter().position(|&v| v == c.y);
    match (px, py) {
        (Some(a), Some(b)) if a != b => {
            let gap = a.abs_diff(b);
            let d = gap.min(n - gap);
            d == target && c.claimed_distance == target
        }
        _ => false,
    }
}

fn tamper(c: &CycleCertificate, op: usize, r: &mut ChaCha8Rng) -> CycleCertificate {
    let mut t = c.clone();
    let n = t.order.len();
    match op {
        // swap two vertices
        0 => {
            let (i, j) = (r.gen_range(0..n), r.gen_range(0..n));
            t.order.swap(i, j);
        }
        // move y elsewhere on the cycle
        1 => {
            let p = t.order.iter().position(|&v| v == t.y).unwrap();
            let y = t.order.remove(p);
            t.order.insert(r.gen_range(0..n), y);
        }
        // claim a different distance
        2 => t.claimed_distance = (t.claimed_distance + r.gen_range(1..n)) % (n / 2 + 1),
        // reverse a segment, breaking the edges at its ends
        3 => {
            let i = r.gen_range(0..n - 1);
            let j = r.gen_range(i + 1..n);
            t.order[i..=j].reverse();
        }
        // duplicate, drop, or invent a vertex
        _ => match r.gen_range(0..3) {
            0 => {
                let (i, j) = (r.gen_range(0..n), r.gen_range(0..n));
                t.order[i] = t.order[j];
            }
            1 => {
                t.order.remove(r.gen_range(0..n));
            }
            _ => {
                let i = r.gen_range(0..n);
                t.order[i] = n + r.gen_range(0..3);
            }
        },
    }
    t
}

fn c9_tamper() -> Verdict {
    let mut bases: Vec<(Graph, CycleCertificate)> = vec![];
    for (i, n) in [10, 11, 12, 13, 14, 16].into_iter().enumerate() {
        let g = gen_random_dirac(n, 0, 40 + i as u64).unwrap();
        let (x, y) = random_distinct_pair(n, &mut rng(i as u64));
        if let Outcome::Found(c) = find_cycle_with_distance(&g, x, y, n / 2, SearchBudget::unlimited()).unwrap().outcome {
            bases.push((g, c));
        }
    }
    for (i, g) in [gen_ec1(200, 0.02, 1).unwrap(), gen_ec2(200, 0.02, 1).unwrap(), gen_random_dirac(1000, 0, 1).unwrap()]
        .into_iter()
        .enumerate()
    {
        let rep = dispatch(&g, 3 * i, 150 + i, &DispatchConfig::default()).unwrap();
        if let Some(order) = rep.certificate {
            bases.push((g, CycleCertificate::from_order(order, rep.x, rep.y).unwrap()));
        }
    }
    let bases_valid = bases.iter().all(|(g, c)| naive_valid(g, c, g.n() / 2) && verify_certificate(g, c, g.n() / 2).is_accept());

    let mut r = rng(9);
    let (mut total, mut rejected) = (0, 0);
    let mut per_op = [0usize; 5];
    while total < 10_000 {
        let (g, c) = &bases[total % bases.len()];
        let op = total % 5;
        let t = tamper(c, op, &mut r);
        let target = g.n() / 2;
        // a no-op tamper (e.g. swapping a vertex with itself) is not a tamper
        if naive_valid(g, &t, target) {
            continue;
        }
        total += 1;
        per_op[op] += 1;
        rejected += !verify_certificate(g, &t, target).is_accept() as usize;
    }
    verdict(
        bases_valid && bases.len() == 9 && rejected == total,
        format!(
            "{rejected}/{total} tampered certificates rejected ({} base certificates; per op {per_op:?})",
            bases.len()
        ),
    )
}

type Criterion = (usize, &'static str, fn() -> Verdict);

fn main() -> ExitCode {
    let only: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let criteria: [Criterion; 9] = [
        (1, "even census", c1_even_census),
        (2, "odd census and reduction", c2_odd_census),
        (3, "sharpness", c3_sharpness),
        (4, "embedder contract", c4_embedder),
        (5, "non-extremal end to end", c5_nonextremal),
        (6, "extremal end to end", c6_extremal),
        (7, "regularity contract", c7_regularity),
        (8, "lemma properties", c8_lemmas),
        (9, "soundness fuzz", c9_tamper),
    ];
    let mut failed = 0;
    for (k, name, run) in criteria {
        if !only.is_empty() && !only.contains(&k) {
            continue;
        }
        let t = Instant::now();
        let v = run();
        failed += !v.pass as usize;
        let mark = if v.pass { "PASS" } else { "FAIL" };
        println!("criterion {k} ({name}): {mark} [{:.1}s] {}", t.elapsed().as_secs_f64(), v.detail);
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
