//! Acceptance suite. Prints one line per criterion and exits non-zero if any
//! criterion fails or overruns its time bound.
//!
//! Run with `cargo test -p pdom --test acceptance`.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use itertools::Itertools;
use pdom::fcn::{build_fcn, canonical_partition, canonical_pds, expected_edge_count, FcnDimension};
use pdom::oracle::{brute_force, Problem};
use pdom::powerdom::{
    self, gamma_p_bounds_with_hint, is_pds, monitored_set, twin_lower_bound, Maximization,
};
use pdom::resolving::{self, is_resolving, is_rpds, metric_dimension_exact};
use pdom::twins::twin_partition;
use pdom::{Graph, Method, VertexSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Minimum number of random cases per property.
const PROPERTY_CASES: usize = 500;
const PROPERTY_SEED: u64 = 0x005e_ed0f_f0c5;

type Outcome = Result<String, String>;

struct Criterion {
    id: &'static str,
    name: &'static str,
    bound: Duration,
    run: fn() -> Outcome,
}

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn fcn(d: u32) -> (FcnDimension, Graph) {
    let dim = FcnDimension::new(d).unwrap();
    (dim, build_fcn(dim))
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn gamma_p_fcn1() -> Outcome {
    let (dim, g) = fcn(1);
    let oracle = brute_force(&g, Problem::GammaP, 24).map_err(err)?;
    ensure!(oracle.optimum == 4, "oracle gamma_P = {}", oracle.optimum);
    let mut checked = 0;
    for size in 0..=3 {
        for combo in (0..g.n()).combinations(size) {
            let s = g.vertex_set(combo).map_err(err)?;
            ensure!(
                !is_pds(&g, &s).map_err(err)?,
                "{:?} is a PDS",
                g.set_labels(&s)
            );
            checked += 1;
        }
    }
    let a = canonical_pds(dim);
    ensure!(
        a.len() == 4 && is_pds(&g, &a).map_err(err)?,
        "canonical set fails"
    );
    Ok(format!(
        "gamma_P = 4; {checked} subsets of size <= 3 rejected; canonical set verifies"
    ))
}

fn gamma_p_fcn2() -> Outcome {
    let (dim, g) = fcn(2);
    let tb = twin_lower_bound(&g);
    ensure!(tb.k == 16, "twin packing k = {}", tb.k);
    ensure!(tb.method == Maximization::Exact, "packing not exact");
    let zones: Vec<VertexSet> = tb
        .classes
        .iter()
        .map(|t| g.closed_neighborhood_of_set(t))
        .collect();
    for (i, zi) in zones.iter().enumerate() {
        ensure!(tb.classes[i].len() >= 2, "class {i} is not a twin class");
        for zj in &zones[i + 1..] {
            ensure!(zi.is_disjoint(zj), "zones overlap");
        }
    }
    let a = canonical_pds(dim);
    ensure!(
        a.len() == 16 && is_pds(&g, &a).map_err(err)?,
        "canonical set fails"
    );
    let b = gamma_p_bounds_with_hint(&g, 24, Some(&a)).map_err(err)?;
    ensure!(
        (b.lower, b.upper) == (16, 16),
        "bounds ({}, {})",
        b.lower,
        b.upper
    );
    ensure!(
        b.upper_methods.contains(&Method::CanonicalCertificate),
        "missing certificate tag"
    );
    Ok("16 disjoint twin zones; canonical PDS of size 16; bounds (16, 16)".into())
}

fn twin_census() -> Outcome {
    let mut counts = Vec::new();
    for d in 1..=3 {
        let (_, g) = fcn(d);
        let tp = twin_partition(&g);
        let want = 4usize.pow(d);
        ensure!(
            tp.open_classes.len() == want,
            "d={d}: {} open classes",
            tp.open_classes.len()
        );
        ensure!(
            tp.open_classes.iter().all(|c| c.len() == 2),
            "d={d}: class of size != 2"
        );
        ensure!(
            tp.closed_classes.is_empty(),
            "d={d}: closed classes present"
        );
        counts.push(tp.open_classes.len());
    }
    Ok(format!("open classes {counts:?}"))
}

fn dim_fcn1() -> Outcome {
    let (dim, g) = fcn(1);
    let mut triples = 0;
    for combo in (0..g.n()).combinations(3) {
        let s = g.vertex_set(combo).map_err(err)?;
        ensure!(
            !is_resolving(&g, &s).map_err(err)?.is_resolving(),
            "{:?} resolves",
            g.set_labels(&s)
        );
        triples += 1;
    }
    ensure!(triples == 560, "{triples} triples");
    let oracle = brute_force(&g, Problem::Dim, 24).map_err(err)?;
    ensure!(oracle.optimum == 4, "oracle dim = {}", oracle.optimum);
    let exact = metric_dimension_exact(&g, 24).map_err(err)?;
    ensure!(exact.dim == 4, "exact dim = {}", exact.dim);
    let a = canonical_pds(dim);
    ensure!(
        is_resolving(&g, &a).map_err(err)?.is_resolving(),
        "canonical set does not resolve"
    );
    Ok(format!(
        "560 triples rejected; basis {:?}",
        g.set_labels(&exact.basis)
    ))
}

fn eta_p_fcn1() -> Outcome {
    let (dim, g) = fcn(1);
    let a = canonical_pds(dim);
    ensure!(
        is_rpds(&g, &a).map_err(err)?,
        "canonical set is not an RPDS"
    );
    let gp = brute_force(&g, Problem::GammaP, 24).map_err(err)?.optimum;
    let dm = brute_force(&g, Problem::Dim, 24).map_err(err)?.optimum;
    ensure!(gp.max(dm) == 4, "sandwich lower bound {}", gp.max(dm));
    let oracle = brute_force(&g, Problem::EtaP, 16).map_err(err)?;
    ensure!(oracle.optimum == 4, "oracle eta_P = {}", oracle.optimum);
    let mut found = 0;
    for combo in (0..g.n()).combinations(4) {
        if is_rpds(&g, &g.vertex_set(combo).map_err(err)?).map_err(err)? {
            found += 1;
        }
    }
    ensure!(found > 0, "no RPDS of size 4");
    Ok(format!(
        "eta_P = 4; {found} of 1820 size-4 sets are RPDS; canonical set {:?}",
        g.set_labels(&a)
    ))
}

fn structure() -> Outcome {
    for d in 1..=2 {
        let (dim, g) = fcn(d);
        let p = canonical_partition(dim).map_err(err)?;
        let mut a_c = p.a.clone();
        a_c.union_with(&p.c);
        ensure!(
            g.closed_neighborhood_of_set(&p.a) == a_c,
            "d={d}: N[A] != A u C"
        );
        ensure!(g.open_neighborhood_of_set(&p.b) == p.c, "d={d}: N(B) != C");
        let mut ab = p.a.clone();
        ab.union_with(&p.b);
        ensure!(
            ab.iter()
                .all(|u| g.neighbors(u).iter().all(|&w| !ab.contains(w))),
            "d={d}: A u B not independent"
        );
        ensure!(
            p.b.iter().all(|v| g.degree(v) == 2),
            "d={d}: B vertex of degree != 2"
        );
        let dist = g.all_pairs_distances();
        for (u, v) in p.b.to_vec().into_iter().tuple_combinations() {
            ensure!(dist.get(u, v).unwrap_or(u32::MAX) >= 3, "d={d}: d(B) < 3");
        }
    }
    Ok("N[A] = A u C, N(B) = C, A u B independent, deg(B) = 2, d(B) >= 3 for d = 1, 2".into())
}

fn census() -> Outcome {
    let mut ms = Vec::new();
    for d in 0..=5 {
        let (_, g) = fcn(d);
        ensure!(g.n() == 4usize.pow(d + 1), "d={d}: n = {}", g.n());
        ensure!(g.m() == expected_edge_count(d), "d={d}: m = {}", g.m());
        ms.push(g.m());
    }
    ensure!(ms == [4, 20, 84, 340, 1364, 5460], "m = {ms:?}");
    Ok(format!("m = {ms:?}"))
}

fn rng(offset: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(PROPERTY_SEED + offset)
}

fn closure_properties() -> Outcome {
    let mut r = rng(1);
    for case in 0..PROPERTY_CASES {
        let n = r.gen_range(1..=30);
        let g = {
            let p = r.gen_range(0.05..0.35);
            random_graph(&mut r, n, p)
        };
        let s = {
            let p = r.gen_range(0.0..0.3);
            random_subset(&mut r, n, p)
        };
        let mut t = s.clone();
        t.union_with(&random_subset(&mut r, n, 0.2));
        let fs = monitored_set(&g, &s).map_err(err)?;
        let ft = monitored_set(&g, &t).map_err(err)?;
        ensure!(fs.is_subset(&ft), "case {case}: not monotone");
        ensure!(
            powerdom::propagate(&g, &fs).map_err(err)? == fs,
            "case {case}: not idempotent"
        );
        for _ in 0..10 {
            ensure!(
                closure_in_random_order(&mut r, &g, &s) == fs,
                "case {case}: order dependent"
            );
        }
    }
    Ok(format!(
        "{PROPERTY_CASES} cases: monotone, idempotent, 10 orders each agree"
    ))
}

/// Grows a random subset with random vertices until it power dominates.
fn random_pds<R: Rng>(r: &mut R, g: &Graph) -> VertexSet {
    let mut s = random_subset(r, g.n(), 0.15);
    while !is_pds(g, &s).unwrap() {
        s.insert(r.gen_range(0..g.n()));
    }
    s
}

fn pds_meets_twin_classes() -> Outcome {
    let mut r = rng(2);
    let mut checked = 0;
    for case in 0..PROPERTY_CASES {
        let n = r.gen_range(2..=24);
        let g = {
            let p = r.gen_range(0.1..0.5);
            twin_rich(&mut r, n, p)
        };
        let s = random_pds(&mut r, &g);
        for t in twin_partition(&g).open_classes {
            let hits_neighborhood = !g.open_neighborhood_of_set(&t).is_disjoint(&s);
            let inside = t.intersection_count(&s);
            ensure!(
                hits_neighborhood || inside + 1 >= t.len(),
                "case {case}: S = {:?}, T = {:?}",
                g.set_labels(&s),
                g.set_labels(&t)
            );
            checked += 1;
        }
    }
    Ok(format!(
        "{PROPERTY_CASES} graphs, {checked} (PDS, class) pairs"
    ))
}

fn twin_bound_vs_oracle() -> Outcome {
    let mut r = rng(3);
    let mut tight = 0;
    for case in 0..PROPERTY_CASES {
        let n = r.gen_range(1..=12);
        let g = {
            let p = r.gen_range(0.1..0.5);
            twin_rich(&mut r, n, p)
        };
        let k = twin_lower_bound(&g).k;
        let opt = brute_force(&g, Problem::GammaP, 12).map_err(err)?.optimum;
        ensure!(k <= opt, "case {case}: twin bound {k} > gamma_P {opt}");
        tight += usize::from(k == opt);
    }
    Ok(format!(
        "{PROPERTY_CASES} graphs with n <= 12; bound tight on {tight}"
    ))
}

fn sandwich() -> Outcome {
    let mut r = rng(4);
    for case in 0..PROPERTY_CASES {
        let n = r.gen_range(1..=16);
        let g = if r.gen_bool(0.5) {
            {
                let p = r.gen_range(0.1..0.5);
                twin_rich(&mut r, n, p)
            }
        } else {
            {
                let p = r.gen_range(0.0..0.4);
                random_connected(&mut r, n, p)
            }
        };
        let gp = powerdom::gamma_p_bounds(&g, 16).map_err(err)?;
        let dm = resolving::dim_bounds(&g, 16, None).map_err(err)?;
        let eta = resolving::eta_p_bounds(&g, 16).map_err(err)?;
        ensure!(
            gp.lower == gp.upper && dm.lower == dm.upper && eta.lower == eta.upper,
            "case {case}: not exact"
        );
        let (gp, dm, eta) = (gp.upper, dm.upper, eta.upper);
        ensure!(
            gp.max(dm) <= eta && eta <= gp + dm,
            "case {case}: max({gp}, {dm}) <= {eta} <= {gp} + {dm} fails"
        );
    }
    Ok(format!("{PROPERTY_CASES} connected graphs with n <= 16"))
}

fn twin_distance_identity() -> Outcome {
    let mut r = rng(5);
    let mut pairs = 0;
    let fcns = [fcn(1).1, fcn(2).1];
    let randoms = (0..PROPERTY_CASES).map(|_| {
        let n = r.gen_range(2..=30);
        {
            let p = r.gen_range(0.05..0.5);
            twin_rich(&mut r, n, p)
        }
    });
    for g in fcns.into_iter().chain(randoms.collect::<Vec<_>>()) {
        let dist = g.all_pairs_distances();
        let tp = twin_partition(&g);
        for class in tp.open_classes.iter().chain(&tp.closed_classes) {
            for (u, v) in class.to_vec().into_iter().tuple_combinations() {
                for w in (0..g.n()).filter(|&w| w != u && w != v) {
                    ensure!(
                        dist.get(w, u) == dist.get(w, v),
                        "d({0}, {1}) != d({0}, {2})",
                        g.label(w),
                        g.label(u),
                        g.label(v)
                    );
                }
                pairs += 1;
            }
        }
    }
    Ok(format!(
        "FCN(1), FCN(2) and {PROPERTY_CASES} random graphs; {pairs} twin pairs"
    ))
}

fn large_certificates() -> Outcome {
    let mut sizes = Vec::new();
    for d in 3..=5 {
        let (dim, g) = fcn(d);
        let a = canonical_pds(dim);
        let want = 4usize.pow(d);
        ensure!(a.len() == want, "d={d}: |A| = {}", a.len());
        ensure!(
            is_pds(&g, &a).map_err(err)?,
            "d={d}: canonical set is not a PDS"
        );
        let k = twin_lower_bound(&g).k;
        ensure!(k == want, "d={d}: twin bound {k}");
        if d <= 4 {
            ensure!(
                is_rpds(&g, &a).map_err(err)?,
                "d={d}: canonical set is not an RPDS"
            );
        }
        sizes.push(want);
    }
    Ok(format!(
        "gamma_P = {sizes:?} for d = 3..5 (certificate and twin bound)"
    ))
}

const CRITERIA: &[Criterion] = &[
    Criterion {
        id: "1",
        name: "gamma_P(FCN(1)) = 4",
        bound: Duration::from_secs(5),
        run: gamma_p_fcn1,
    },
    Criterion {
        id: "2",
        name: "gamma_P(FCN(2)) = 16",
        bound: Duration::from_secs(1),
        run: gamma_p_fcn2,
    },
    Criterion {
        id: "3",
        name: "twin census d = 1..3",
        bound: Duration::from_secs(5),
        run: twin_census,
    },
    Criterion {
        id: "4",
        name: "dim(FCN(1)) = 4",
        bound: Duration::from_secs(10),
        run: dim_fcn1,
    },
    Criterion {
        id: "5",
        name: "eta_P(FCN(1)) = 4",
        bound: Duration::from_secs(60),
        run: eta_p_fcn1,
    },
    Criterion {
        id: "6",
        name: "canonical partition structure",
        bound: Duration::from_secs(5),
        run: structure,
    },
    Criterion {
        id: "7",
        name: "vertex and edge census d <= 5",
        bound: Duration::from_secs(10),
        run: census,
    },
    Criterion {
        id: "8a",
        name: "closure properties",
        bound: Duration::from_secs(120),
        run: closure_properties,
    },
    Criterion {
        id: "8b",
        name: "PDS meets every open twin class",
        bound: Duration::from_secs(120),
        run: pds_meets_twin_classes,
    },
    Criterion {
        id: "8c",
        name: "twin bound <= exact gamma_P",
        bound: Duration::from_secs(120),
        run: twin_bound_vs_oracle,
    },
    Criterion {
        id: "8d",
        name: "max(dim, gamma_P) <= eta_P <= dim + gamma_P",
        bound: Duration::from_secs(300),
        run: sandwich,
    },
    Criterion {
        id: "8e",
        name: "twin distance identity",
        bound: Duration::from_secs(120),
        run: twin_distance_identity,
    },
    Criterion {
        id: "S",
        name: "certificates for d >= 3",
        bound: Duration::from_secs(60),
        run: large_certificates,
    },
];

fn main() -> ExitCode {
    let mut failed = 0;
    for c in CRITERIA {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > c.bound => Err(format!("{detail}; exceeded {:?}", c.bound)),
            other => other,
        };
        match outcome {
            Ok(detail) => println!(
                "[PASS] {:>2} {} ({:.2?} / {:?}): {detail}",
                c.id, c.name, elapsed, c.bound
            ),
            Err(why) => {
                failed += 1;
                println!(
                    "[FAIL] {:>2} {} ({:.2?} / {:?}): {why}",
                    c.id, c.name, elapsed, c.bound
                );
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        CRITERIA.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
