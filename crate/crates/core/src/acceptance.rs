//! The acceptance suite: eleven end-to-end checks run at their stated
//! parameters and time limits, each reported as one pass/fail line.

use std::fmt;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{
    classify_line_set, classify_standard, hyperplane_colouring, is_cover, middle_colouring,
    Incidences, LineSetKind, StandardVerdict,
};
use crate::homs::{
    echelon_shadow_map, extension_map, field_reduction_map, no_hom_certificate, point_set_map,
    subfield_map, verify_homomorphism, RationalString, VertexMap,
};
use crate::kneser::{
    build_kneser, build_q_kneser, largest_element_colouring, verify_colouring, Colouring, Graph,
    DEFAULT_MAX_VERTICES,
};
use crate::qcombin::{bracket, count_meeting, gauss_binomial};
use crate::solve::{
    cover_instance, enumerate_blocking_sets, enumerate_min_covers, max_independent_set,
    maximal_independent_sets, maximum_independent_sets, min_set_cover, minimum_blocking_sets,
    SolverConfig,
};
use crate::subspaces::{meet, point_ranks, trivial_intersection, Grassmannian, Subspace};

pub const CRITERIA: usize = 11;

#[derive(Clone, Debug, Serialize)]
pub struct CriterionReport {
    pub id: usize,
    pub title: &'static str,
    pub passed: bool,
    pub degraded: bool,
    pub guard_tripped: bool,
    pub detail: String,
    pub time_limit_secs: f64,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = match (self.passed, self.degraded) {
            (true, false) => "PASS",
            (true, true) => "PASS (degraded)",
            (false, _) => "FAIL",
        };
        write!(
            f,
            "{status} {:>2} {}: {} [{:.3} s, limit {} s]",
            self.id,
            self.title,
            self.detail,
            self.elapsed.as_secs_f64(),
            self.time_limit_secs
        )
    }
}

struct Outcome {
    passed: bool,
    degraded: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Result<Outcome> {
    Ok(Outcome {
        passed,
        degraded: false,
        detail: detail.into(),
    })
}

const TITLES: [&str; CRITERIA] = [
    "chi(qK_{4:2}) at q=2",
    "minimum covers of PG(3,2) are standard",
    "chi(qK_{4:2}) at q=3",
    "chi(qK_{5:2}) at q=2 and blocking sets",
    "independence numbers",
    "maximal independent sets at q=2",
    "vertex counts and valencies",
    "colouring constructions",
    "homomorphisms",
    "no homomorphism qK_{5:2} -> qK_{3:1}",
    "minimum blocking sets",
];

const LIMITS: [f64; CRITERIA] = [
    1.0, 60.0, 600.0, 600.0, 180.0, 60.0, 60.0, 60.0, 120.0, 1.0, 2.0,
];

/// Runs criterion `id` (1-based).
pub fn run_criterion(id: usize, cfg: &SolverConfig) -> CriterionReport {
    assert!(
        (1..=CRITERIA).contains(&id),
        "criteria are numbered 1..={CRITERIA}"
    );
    let start = Instant::now();
    let result = match id {
        1 => chi_pg3_2(cfg),
        2 => standard_covers(cfg),
        3 => chi_pg3_3(cfg),
        4 => chi_pg4_2(cfg),
        5 => independence_numbers(cfg),
        6 => maximal_sets(cfg),
        7 => parameter_formulas(),
        8 => colourings(),
        9 => homomorphisms(cfg),
        10 => no_hom(),
        _ => blocking(cfg),
    };
    let elapsed = start.elapsed();
    let limit = LIMITS[id - 1];
    let (passed, degraded, guard_tripped, mut detail) = match result {
        Ok(o) => (o.passed, o.degraded, false, o.detail),
        Err(e @ Error::ResourceGuard(_)) => (false, false, true, e.to_string()),
        Err(e) => (false, false, false, e.to_string()),
    };
    let in_time = elapsed.as_secs_f64() <= limit;
    if !in_time {
        detail.push_str("; time limit exceeded");
    }
    CriterionReport {
        id,
        title: TITLES[id - 1],
        passed: passed && in_time,
        degraded,
        guard_tripped,
        detail,
        time_limit_secs: limit,
        elapsed,
    }
}

pub fn run_all(cfg: &SolverConfig) -> Vec<CriterionReport> {
    (1..=CRITERIA).map(|id| run_criterion(id, cfg)).collect()
}

fn chi_pg3_2(cfg: &SolverConfig) -> Result<Outcome> {
    let inc = Incidences::new(4, 2)?;
    let inst = cover_instance(&inc);
    let cert = min_set_cover(&inst, cfg)?;
    let cover = inst
        .to_cover(&cert.witness.sets)
        .expect("geometric instance");
    let valid = is_cover(&inc, &cover)?.is_cover();
    outcome(
        cert.optimum == 6 && cert.exhaustive && valid,
        format!(
            "optimum {} (expected 6), exhaustive {}, {} nodes",
            cert.optimum, cert.exhaustive, cert.nodes
        ),
    )
}

fn standard_covers(cfg: &SolverConfig) -> Result<Outcome> {
    let inc = Incidences::new(4, 2)?;
    let inst = cover_instance(&inc);
    let sixes = enumerate_min_covers(&inst, 6, cfg)?;
    let fives = enumerate_min_covers(&inst, 5, cfg)?;
    let mut standard = 0;
    let mut shapes_ok = true;
    for chosen in &sixes {
        let cover = inst.to_cover(chosen).expect("geometric instance");
        if matches!(
            classify_standard(&inc, &cover)?,
            StandardVerdict::Standard(_)
        ) {
            standard += 1;
        }
        let (r, s) = (cover.r(), cover.s());
        shapes_ok &= matches!((r, s), (4, 2) | (2, 4)) && r % 2 == 0 && s % 2 == 0;
    }
    outcome(
        !sixes.is_empty() && standard == sixes.len() && shapes_ok && fives.is_empty(),
        format!(
            "{} covers of size 6, {standard} standard, (r,s) shapes ok {shapes_ok}; {} of size 5",
            sixes.len(),
            fives.len()
        ),
    )
}

fn proper_with(g: &Graph, c: &Colouring, colours: usize) -> Result<bool> {
    Ok(verify_colouring(g, c)?.is_proper() && c.palette_size() == colours)
}

fn chi_pg3_3(cfg: &SolverConfig) -> Result<Outcome> {
    let inc = Incidences::new(4, 3)?;
    let cert = min_set_cover(&cover_instance(&inc), cfg)?;
    let g = build_q_kneser(4, 2, 3)?;
    let upper = proper_with(&g, &middle_colouring(2, 3)?, 12)?;
    if !cert.exhaustive {
        return Ok(Outcome {
            passed: false,
            degraded: true,
            detail: format!(
                "node guard tripped after {} nodes; best cover {}, middle colouring gives upper bound 12 ({upper}); lower bound unproven",
                cert.nodes, cert.optimum
            ),
        });
    }
    outcome(
        cert.optimum == 12 && upper,
        format!(
            "optimum {} (expected 12), exhaustive, {} nodes; proper 12-colouring {upper}",
            cert.optimum, cert.nodes
        ),
    )
}

fn subspace_point_sets(v: usize, k: usize, q: u32) -> Result<Vec<Vec<usize>>> {
    let field = crate::gf::Field::from_order(q as u64)?;
    let mut sets: Vec<Vec<usize>> = Grassmannian::new(v, k, q)?
        .iter()
        .map(|s| {
            point_ranks(&field, &s)
                .into_iter()
                .map(|x| x as usize)
                .collect()
        })
        .collect();
    sets.sort();
    Ok(sets)
}

fn chi_pg4_2(cfg: &SolverConfig) -> Result<Outcome> {
    let inc = Incidences::new(5, 2)?;
    let inst = cover_instance(&inc);
    let cert = min_set_cover(&inst, cfg)?;
    let hyperplanes = subspace_point_sets(5, 4, 2)?;
    let b15 = enumerate_blocking_sets(&inc, 15, cfg.max_nodes)?;
    let b14 = enumerate_blocking_sets(&inc, 14, cfg.max_nodes)?;
    let cover = inst
        .to_cover(&cert.witness.sets)
        .expect("geometric instance");
    let witness_is_hyperplane = cover.planes.is_empty() && hyperplanes.contains(&cover.points);
    outcome(
        cert.optimum == 15 && cert.exhaustive && b15 == hyperplanes && b14.is_empty() && witness_is_hyperplane,
        format!(
            "optimum {} (expected 15), exhaustive {}, {} nodes; {} blocking 15-sets (= the {} hyperplanes: {}), {} blocking 14-sets; witness is a hyperplane {witness_is_hyperplane}",
            cert.optimum,
            cert.exhaustive,
            cert.nodes,
            b15.len(),
            hyperplanes.len(),
            b15 == hyperplanes,
            b14.len()
        ),
    )
}

fn independence_numbers(cfg: &SolverConfig) -> Result<Outcome> {
    let mut ok = true;
    let mut parts = Vec::new();
    for (v, q) in [(4usize, 2u32), (5, 2), (4, 3)] {
        let g = build_q_kneser(v, 2, q)?;
        let cert = max_independent_set(&g, cfg)?;
        let expected = gauss_binomial(v as u32 - 1, 1, q as u64);
        ok &= cert.exhaustive && BigUint::from(cert.optimum) == expected;
        parts.push(format!(
            "alpha(qK_{{{v}:2}}, q={q}) = {} (expected {expected})",
            cert.optimum
        ));
    }
    outcome(ok, parts.join(", "))
}

fn maximal_sets(cfg: &SolverConfig) -> Result<Outcome> {
    let classify = |v: usize, sets: &[Vec<usize>]| -> Result<(usize, usize, usize)> {
        let inc = Incidences::new(v, 2)?;
        let mut counts = (0, 0, 0);
        for s in sets {
            match classify_line_set(&inc, s) {
                LineSetKind::PointStar(_) => counts.0 += 1,
                LineSetKind::PlaneSet(_) => counts.1 += 1,
                LineSetKind::Other => counts.2 += 1,
            }
        }
        Ok(counts)
    };
    let four = maximal_independent_sets(&build_q_kneser(4, 2, 2)?, cfg.max_nodes)?;
    let five = maximum_independent_sets(&build_q_kneser(5, 2, 2)?, cfg)?;
    let (s4, p4, o4) = classify(4, &four)?;
    let (s5, p5, o5) = classify(5, &five)?;
    outcome(
        o4 == 0 && o5 == 0 && !four.is_empty() && !five.is_empty(),
        format!(
            "v=4: {} maximal sets ({s4} point-stars, {p4} plane-sets, {o4} other); v=5: {} maximum sets ({s5} point-stars, {p5} plane-sets, {o5} other)",
            four.len(),
            five.len()
        ),
    )
}

fn formula_grid() -> Vec<(usize, usize, u32)> {
    let mut grid: Vec<(usize, usize, u32)> = [2u32, 3, 4]
        .iter()
        .flat_map(|&q| [(3, 1), (4, 2), (5, 2)].map(|(v, k)| (v, k, q)))
        .collect();
    grid.push((6, 3, 2));
    grid
}

fn parameter_formulas() -> Result<Outcome> {
    let mut bad = Vec::new();
    for &(v, k, q) in &formula_grid() {
        let g = build_q_kneser(v, k, q)?;
        let n = gauss_binomial(v as u32, k as u32, q as u64);
        let degree = BigUint::from(q).pow((k * k) as u32)
            * gauss_binomial((v - k) as u32, k as u32, q as u64);
        let got_degree = g.regular_degree().map(BigUint::from);
        if BigUint::from(g.n()) != n || got_degree != Some(degree) {
            bad.push(format!("({v},{k},{q})"));
        }
    }
    // count_meeting against enumeration: lines of F_2^5 meeting U = <e1,e2> in exactly W_j = <e1..ej>
    let field = crate::gf::Field::from_order(2)?;
    let u = Subspace::coordinate(5, 2, &[0, 1]);
    let lines: Vec<Subspace> = Grassmannian::new(5, 2, 2)?.iter().collect();
    let mut column = Vec::new();
    for j in 0..=2usize {
        let w = Subspace::coordinate(5, 2, &(0..j).collect::<Vec<_>>());
        let mut counted = 0u64;
        for l in &lines {
            if meet(&field, l, &u)? == w {
                counted += 1;
            }
        }
        let formula = count_meeting(5, 2, 2, j as u32, 2)?;
        if BigUint::from(counted) != formula {
            bad.push(format!("count_meeting(5,2,2,{j})"));
        }
        column.push(counted);
    }
    outcome(
        bad.is_empty(),
        format!(
            "{} parameter sets checked, meeting column {:?}{}",
            formula_grid().len(),
            column,
            if bad.is_empty() {
                String::new()
            } else {
                format!("; mismatches {}", bad.join(" "))
            }
        ),
    )
}

fn colourings() -> Result<Outcome> {
    let mut bad = Vec::new();
    let mut checked = 0;
    for &(v, k, q) in formula_grid().iter().filter(|&&(v, k, _)| v >= 2 * k) {
        let g = build_q_kneser(v, k, q)?;
        let colours = bracket((v - k + 1) as u32, q as u64);
        let c = hyperplane_colouring(v, k, q)?;
        if !verify_colouring(&g, &c)?.is_proper() || BigUint::from(c.palette_size()) != colours {
            bad.push(format!("hyperplane({v},{k},{q})"));
        }
        checked += 1;
    }
    for (k, q) in [(2usize, 2u32), (2, 3), (3, 2)] {
        let g = build_q_kneser(2 * k, k, q)?;
        let colours = (q as usize).pow(k as u32) + (q as usize).pow(k as u32 - 1);
        if !proper_with(&g, &middle_colouring(k, q)?, colours)? {
            bad.push(format!("middle({k},{q})"));
        }
        checked += 1;
    }
    for (v, k) in [(5usize, 2usize), (6, 2), (7, 3)] {
        let g = build_kneser(v, k)?;
        if !proper_with(&g, &largest_element_colouring(v, k)?, v - 2 * k + 2)? {
            bad.push(format!("largest_element({v},{k})"));
        }
        checked += 1;
    }
    outcome(
        bad.is_empty(),
        format!(
            "{checked} colourings proper with the expected palette{}",
            if bad.is_empty() {
                String::new()
            } else {
                format!("; failures {}", bad.join(" "))
            }
        ),
    )
}

fn hom_check(
    source: (usize, usize, u32),
    f: &VertexMap,
    induced: bool,
    threads: usize,
) -> Result<bool> {
    let g = build_q_kneser(source.0, source.1, source.2)?;
    let report = verify_homomorphism(&g, f, &f.image_adjacency(), induced, threads)?;
    Ok(report.is_hom() && (!induced || report.is_induced()))
}

fn homomorphisms(cfg: &SolverConfig) -> Result<Outcome> {
    let t = cfg.threads;
    let mut results: Vec<(&str, bool)> = vec![
        (
            "extension (4,2,2) induced",
            hom_check((4, 2, 2), &extension_map(4, 2, 2)?, true, t)?,
        ),
        (
            "subfield (4,2,2,2)",
            hom_check((4, 2, 2), &subfield_map(4, 2, 2, 2)?, false, t)?,
        ),
        (
            "echelon shadow (4,2,2)",
            hom_check((4, 2, 2), &echelon_shadow_map(4, 2, 2)?, false, t)?,
        ),
        (
            "echelon shadow (5,2,2)",
            hom_check((5, 2, 2), &echelon_shadow_map(5, 2, 2)?, false, t)?,
        ),
        (
            "point set (3,1,2)",
            hom_check(
                (3, 1, 2),
                &point_set_map(3, 1, 2, DEFAULT_MAX_VERTICES)?,
                true,
                t,
            )?,
        ),
        (
            "point set (4,2,2) induced",
            hom_check(
                (4, 2, 2),
                &point_set_map(4, 2, 2, DEFAULT_MAX_VERTICES)?,
                true,
                t,
            )?,
        ),
    ];
    let sub = subfield_map(2, 1, 2, 2)?;
    results.push((
        "subfield (2,1,2,2) hits 3 of 5 points",
        sub.image_count() == 3 && sub.target_order() == 5,
    ));
    results.push((
        "subfield r=1 is the identity",
        subfield_map(4, 2, 2, 1)?.images == (0..35).collect::<Vec<_>>(),
    ));
    let red = field_reduction_map(2, 1, 2, 2)?;
    results.push((
        "field reduction (2,1,2,2) induced",
        hom_check((2, 1, 4), &red, true, t)?,
    ));
    let field = crate::gf::Field::from_order(2)?;
    let spread: Vec<&Subspace> = red
        .labels
        .iter()
        .filter_map(|l| l.subspace.as_ref())
        .collect();
    let mut skew = spread.len() == 5 && spread.iter().all(|s| s.dim() == 2 && s.ambient_dim() == 4);
    for (i, a) in spread.iter().enumerate() {
        for b in &spread[i + 1..] {
            skew &= trivial_intersection(&field, a, b)?;
        }
    }
    results.push((
        "field reduction (2,1,2,2) gives 5 pairwise-skew lines of F_2^4",
        skew,
    ));
    let failed: Vec<&str> = results.iter().filter(|r| !r.1).map(|r| r.0).collect();
    outcome(
        failed.is_empty(),
        if failed.is_empty() {
            format!("{} checks passed", results.len())
        } else {
            format!("failed: {}", failed.join(", "))
        },
    )
}

fn no_hom() -> Result<Outcome> {
    let mut ok = true;
    for q in 2..=16 {
        ok &= no_hom_certificate(q)?.no_hom;
    }
    let c = no_hom_certificate(2)?;
    let values = c.fractional_lower_bound
        == RationalString {
            num: "31".into(),
            den: "3".into(),
        }
        && c.q_cubed_plus_q == "10"
        && c.target_chromatic == "7";
    outcome(
        ok && values,
        format!(
            "[5]/[2] > q^3+q >= q^2+q+1 for q = 2..16: {ok}; q=2 gives 31/3 > 10 > 7: {values}"
        ),
    )
}

fn blocking(cfg: &SolverConfig) -> Result<Outcome> {
    let mut ok = true;
    let mut parts = Vec::new();
    for (v, expected, k) in [(3usize, 3usize, 2usize), (4, 7, 3)] {
        let inc = Incidences::new(v, 2)?;
        let (size, sets) = minimum_blocking_sets(&inc, cfg.max_nodes)?;
        let subspaces = subspace_point_sets(v, k, 2)?;
        ok &= size == expected && sets == subspaces;
        parts.push(format!(
            "PG({},2): minimum {size} (expected {expected}), {} minimum sets, all {}-spaces {}",
            v - 1,
            sets.len(),
            k,
            sets == subspaces
        ));
    }
    outcome(ok, parts.join("; "))
}
